use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Map, Value};

use hochlab::cochain::{center_action, cohomology};
use hochlab::criteria::{
    check_ring_epi_criterion, extension_module_axioms, find_braiding, gerstenhaber_axioms, kernel_via_ed, module_axioms,
    morita_transport, poisson_check, vanishing_chain, BraidingTarget, CriterionReport,
};
use hochlab::extension::ext_bracket;
use hochlab::io::{ExtensionInput, Loader};
use hochlab::resolution::{chi, BarResolution};
use hochlab::{
    algebra::derivation_space, sampling, Algebra, Bimodule, Budget, Cochain, Cohomology, Error, NExtension,
    PivotOrder, Result, Scalar,
};

use crate::args::{Cli, ModuleSpec, Target, Verb};
use crate::report::{digests, Body, Rendered, Report};

const AGREE: &str = "AGREE (difference is a coboundary)";
const DISAGREE: &str = "DISAGREE (difference is not a coboundary)";

pub fn run(cli: &Cli) -> Result<Rendered> {
    let verb = &cli.verb;
    let common = verb.common();
    let budget = match common.budget {
        Some(cap) => Budget::new(cap),
        None => Budget::from_env()?,
    };
    let mut ctx = Context { loader: Loader::new(), budget, parameters: Map::new() };
    ctx.param("algebra", common.algebra.display().to_string());
    ctx.param("budget", budget.cap());
    let algebra = ctx.loader.algebra(&common.algebra)?;
    let body = if let Verb::Validate { module, extension, .. } = verb {
        validate(&mut ctx, &algebra, module.as_ref(), extension.as_deref())?
    } else {
        require_valid_algebra(&algebra)?;
        dispatch(&mut ctx, &algebra, verb)?
    };
    let report = Report {
        verb: verb.name(),
        field: algebra.field(),
        inputs: digests(ctx.loader.files()),
        parameters: ctx.parameters,
        body,
    };
    Ok(report.render(common.output))
}

struct Context {
    loader: Loader,
    budget: Budget,
    parameters: Map<String, Value>,
}

impl Context {
    fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.to_string(), json!(value));
    }

    fn module(&mut self, spec: &ModuleSpec, a: &Arc<Algebra>) -> Result<Arc<Bimodule>> {
        let m = self.unchecked_module(spec, a)?;
        let violations = m.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidBimodule(joined(&violations)));
        }
        Ok(m)
    }

    fn unchecked_module(&mut self, spec: &ModuleSpec, a: &Arc<Algebra>) -> Result<Arc<Bimodule>> {
        Ok(match spec {
            ModuleSpec::Regular => Arc::new(Bimodule::regular(a)),
            ModuleSpec::OuterTensor => Arc::new(Bimodule::outer_tensor(a)),
            ModuleSpec::Twisted(p) => self.loader.twisted(p, a)?,
            ModuleSpec::File(p) => self.loader.bimodule(p, Some(a))?,
        })
    }
}

fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn require_valid_algebra(a: &Algebra) -> Result<()> {
    let violations = a.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidAlgebra(joined(&violations)))
    }
}

fn texts(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_text).collect()
}

fn element(a: &Algebra, v: &[Scalar]) -> Value {
    json!({ "coordinates": texts(v), "element": a.format_element(v) })
}

/// Module elements print in the algebra basis when `M = A`.
fn module_element(m: &Bimodule, v: &[Scalar]) -> String {
    if m.is_regular() {
        m.algebra().format_element(v)
    } else {
        format!("({})", texts(v).join(", "))
    }
}

fn cochain_json(c: &Cochain) -> Value {
    json!({ "degree": c.degree(), "matrix": c.values().to_text_rows() })
}

fn report_lines(r: &CriterionReport) -> Vec<String> {
    r.outcomes
        .iter()
        .map(|o| format!("{}.{}: {}", r.criterion, o.label, if o.holds { "holds" } else { "fails" }))
        .collect()
}

fn dispatch(ctx: &mut Context, a: &Arc<Algebra>, verb: &Verb) -> Result<Body> {
    match verb {
        Verb::Validate { .. } => unreachable!("handled before dispatch"),
        Verb::Cohomology { input, max_degree } => {
            ctx.param("module", input.module.label());
            ctx.param("max_degree", max_degree);
            let m = ctx.module(&input.module, a)?;
            cohomology_dims(ctx, &m, *max_degree)
        }
        Verb::Center { .. } => Ok(center(a)),
        Verb::Relcenter { input } => {
            ctx.param("module", input.module.label());
            let m = ctx.module(&input.module, a)?;
            Ok(relcenter(&m))
        }
        Verb::Bracket { input, degree } => {
            ctx.param("module", input.module.label());
            ctx.param("degree", degree);
            let m = ctx.module(&input.module, a)?;
            bracket(ctx, &m, *degree)
        }
        Verb::ExtBracket { input, extension } => {
            ctx.param("module", input.module.label());
            ctx.param("extension", extension.display().to_string());
            let m = ctx.module(&input.module, a)?;
            extension_bracket(ctx, &m, extension)
        }
        Verb::VerifyMainTheorem { input, degree, seed, samples } => {
            ctx.param("module", input.module.label());
            ctx.param("degree", degree);
            ctx.param("seed", seed);
            ctx.param("samples", samples);
            let m = ctx.module(&input.module, a)?;
            verify_main_theorem(ctx, &m, *degree, *seed, *samples)
        }
        Verb::ChainCriteria { module, max_degree, .. } => {
            ctx.param("max_degree", max_degree);
            let mut modules = vec![
                ("regular".to_string(), Arc::new(Bimodule::regular(a))),
                ("outer-tensor".to_string(), Arc::new(Bimodule::outer_tensor(a))),
            ];
            if let Some(spec) = module {
                ctx.param("module", spec.label());
                modules.push((spec.label(), ctx.module(spec, a)?));
            }
            chain_criteria(ctx, a, &modules, *max_degree)
        }
        Verb::Braiding { target, patterns, .. } => {
            let target = match target {
                Target::Algebra => BraidingTarget::Algebra,
                Target::Center => BraidingTarget::Center,
            };
            ctx.param("target", format!("{target:?}").to_lowercase());
            ctx.param("patterns", patterns);
            braiding(a, target, *patterns)
        }
        Verb::EdCheck { input, cochain } => {
            ctx.param("module", input.module.label());
            let m = ctx.module(&input.module, a)?;
            let derivations = match cochain {
                Some(p) => {
                    ctx.param("cochain", p.display().to_string());
                    vec![ctx.loader.cochain(p, &m)?]
                }
                None => {
                    let space = derivation_space(&m);
                    let mut all = vec![Cochain::zero(m.clone(), 1)];
                    for v in space.derivations.basis_vectors() {
                        all.push(Cochain::from_vector(m.clone(), 1, &v)?);
                    }
                    all
                }
            };
            ed_check(&derivations)
        }
        Verb::Morita { input, size, max_degree } => {
            ctx.param("module", input.module.label());
            ctx.param("size", size);
            ctx.param("max_degree", max_degree);
            let m = ctx.module(&input.module, a)?;
            let report = morita_transport(&m, *size, *max_degree, &ctx.budget)?;
            let status = u8::from(!report.all_hold());
            Ok(Body { lines: report_lines(&report), result: json!(report), status })
        }
        Verb::Poisson { cochain, .. } => {
            let regular = Arc::new(Bimodule::regular(a));
            let candidates = match cochain {
                Some(p) => {
                    ctx.param("cochain", p.display().to_string());
                    vec![ctx.loader.cochain(p, &regular)?]
                }
                None => {
                    let mut reps = cohomology(&regular, 2, &ctx.budget)?.representatives();
                    if reps.len() > 1 {
                        let sum = reps.iter().skip(1).try_fold(reps[0].clone(), |acc, c| acc.checked_add(c))?;
                        reps.push(sum);
                    }
                    reps
                }
            };
            poisson(ctx, &candidates)
        }
        Verb::Axioms { input, max_degree } => {
            ctx.param("module", input.module.label());
            ctx.param("max_degree", max_degree);
            let m = ctx.module(&input.module, a)?;
            axioms(ctx, a, &m, *max_degree)
        }
    }
}

fn validate(ctx: &mut Context, a: &Arc<Algebra>, module: Option<&ModuleSpec>, extension: Option<&Path>) -> Result<Body> {
    let mut result = Map::new();
    let mut lines = Vec::new();
    let mut clean = true;
    let mut section = |name: &str, violations: Vec<String>, lines: &mut Vec<String>| {
        clean &= violations.is_empty();
        if violations.is_empty() {
            lines.push(format!("{name}: valid"));
        }
        for v in &violations {
            lines.push(format!("{name}: {v}"));
        }
        result.insert(name.to_string(), json!({ "violations": violations }));
    };
    let algebra_violations: Vec<String> = a.validate().iter().map(ToString::to_string).collect();
    let algebra_ok = algebra_violations.is_empty();
    section("algebra", algebra_violations, &mut lines);
    if let Some(spec) = module {
        ctx.param("module", spec.label());
        let m = ctx.unchecked_module(spec, a)?;
        section("module", m.validate().iter().map(ToString::to_string).collect(), &mut lines);
    }
    if let Some(path) = extension {
        ctx.param("extension", path.display().to_string());
        let s = ctx.loader.extension(path, a)?;
        section("extension", extension_violations(&s, algebra_ok), &mut lines);
    }
    Ok(Body { result: Value::Object(result), lines, status: if clean { 0 } else { 2 } })
}

fn extension_violations(s: &NExtension, algebra_ok: bool) -> Vec<String> {
    let mut out = Vec::new();
    for k in 0..=s.length() {
        for v in s.term(k).validate() {
            out.push(format!("E_{k}: {v}"));
        }
    }
    // exactness is meaningless over a broken algebra or broken terms
    if algebra_ok && out.is_empty() {
        out.extend(s.validate().iter().map(ToString::to_string));
    }
    out
}

fn cohomology_dims(ctx: &Context, m: &Arc<Bimodule>, max_degree: usize) -> Result<Body> {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut dims = Vec::new();
    for n in 0..=max_degree {
        let h = cohomology(m, n, &ctx.budget)?;
        dims.push(h.dim());
        lines.push(format!("HH^{n} = {}", h.dim()));
        rows.push(json!({
            "degree": n,
            "dim": h.dim(),
            "cocycles": h.cocycles().dim(),
            "coboundaries": h.coboundaries().dim(),
        }));
    }
    lines.push(format!("dims: {}", dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")));
    Ok(Body::ok(json!({ "dims": dims, "degrees": rows }), lines))
}

fn center(a: &Algebra) -> Body {
    let z = a.center();
    let basis: Vec<Value> = z.basis_vectors().iter().map(|v| element(a, v)).collect();
    let mut lines = vec![format!("dim Z(A) = {}", z.dim()), format!("commutative: {}", a.is_commutative())];
    lines.extend(z.basis_vectors().iter().map(|v| format!("  {}", a.format_element(v))));
    Body::ok(json!({ "dim": z.dim(), "commutative": a.is_commutative(), "basis": basis }), lines)
}

fn relcenter(m: &Bimodule) -> Body {
    let a = m.algebra();
    let rel = m.relative_center();
    let basis: Vec<Value> = rel.basis_vectors().iter().map(|v| element(a, v)).collect();
    let mut lines = vec![
        format!("dim Z(A) = {}", a.center().dim()),
        format!("dim Z_M(A) = {}", rel.dim()),
        format!("dim M^A = {}", m.invariants().dim()),
    ];
    lines.extend(rel.basis_vectors().iter().map(|v| format!("  {}", a.format_element(v))));
    Body::ok(
        json!({
            "center_dim": a.center().dim(),
            "dim": rel.dim(),
            "invariants_dim": m.invariants().dim(),
            "basis": basis,
        }),
        lines,
    )
}

fn bracket(ctx: &Context, m: &Arc<Bimodule>, degree: usize) -> Result<Body> {
    let a = m.algebra();
    let zs = m.relative_center().basis_vectors();
    if degree == 0 {
        let note = "[α, z] lands in degree -1 and is the empty cochain";
        return Ok(Body::ok(json!({ "note": note, "entries": [] }), vec![note.to_string()]));
    }
    let h = cohomology(m, degree, &ctx.budget)?;
    let below = cohomology(m, degree - 1, &ctx.budget)?;
    let mut entries = Vec::new();
    let mut lines = vec![format!("dim HH^{degree} = {}, dim Z_M(A) = {}", h.dim(), zs.len())];
    for (i, alpha) in h.representatives().iter().enumerate() {
        for z in &zs {
            let class = below.class_of(&center_action(alpha, z)?)?;
            let zero = class.iter().all(Scalar::is_zero);
            lines.push(format!("[α{i}, {}] = ({}){}", a.format_element(z), texts(&class).join(", "), if zero { "  zero" } else { "" }));
            entries.push(json!({
                "class_index": i,
                "representative": cochain_json(alpha),
                "z": element(a, z),
                "bracket_class": texts(&class),
                "zero": zero,
            }));
        }
    }
    Ok(Body::ok(json!({ "hh_dim": h.dim(), "entries": entries }), lines))
}

fn extension_bracket(ctx: &mut Context, m: &Arc<Bimodule>, path: &Path) -> Result<Body> {
    let s = match ctx.loader.extension_input(path, m)? {
        ExtensionInput::Extension(s) => {
            let violations = extension_violations(&s, true);
            if !violations.is_empty() {
                return Err(Error::InvalidExtension(violations.join("; ")));
            }
            s
        }
        ExtensionInput::Cocycle(phi) => {
            if !phi.is_cocycle() {
                return Err(Error::Precondition(format!("{} is not a cocycle", path.display())));
            }
            let n = phi.arity().unwrap_or(0);
            if n == 0 {
                return Err(Error::Precondition("extensions need a cocycle of degree at least 1".into()));
            }
            chi(&BarResolution::new(m.algebra(), n, &ctx.budget)?, &phi)?
        }
    };
    let coefficients = s.coefficients().clone();
    let a = coefficients.algebra();
    let n = s.length();
    let below = cohomology(&coefficients, n - 1, &ctx.budget)?;
    let mut entries = Vec::new();
    let mut lines = vec![format!("extension of length {n}")];
    for z in coefficients.relative_center().basis_vectors() {
        let value = ext_bracket(&s, &z, &PivotOrder::Natural)?.value;
        let class = below.class_of(&value)?;
        lines.push(format!("<S, {}> has class ({}) in HH^{}", a.format_element(&z), texts(&class).join(", "), n - 1));
        entries.push(json!({ "z": element(a, &z), "value": cochain_json(&value), "class": texts(&class) }));
    }
    Ok(Body::ok(json!({ "length": n, "entries": entries }), lines))
}

fn verify_main_theorem(ctx: &Context, m: &Arc<Bimodule>, degree: usize, seed: u64, samples: usize) -> Result<Body> {
    if degree == 0 {
        return Err(Error::Precondition("the comparison needs degree at least 1".into()));
    }
    let a = m.algebra();
    let h = cohomology(m, degree, &ctx.budget)?;
    let below = cohomology(m, degree - 1, &ctx.budget)?;
    let bar = BarResolution::new(a, degree, &ctx.budget)?;
    let zs = m.relative_center().basis_vectors();
    let mut rng = sampling::rng(seed);
    let mut pairs = Vec::new();
    let mut lines = Vec::new();
    let mut all_agree = true;
    for sample in 0..samples {
        let phi = sampling::cocycle(&h, &mut rng);
        let s = chi(&bar, &phi)?;
        for z in &zs {
            let from_extension = ext_bracket(&s, z, &PivotOrder::Natural)?.value;
            let from_cochain = center_action(&phi, z)?;
            let agree = below.is_coboundary(&from_extension.checked_sub(&from_cochain)?)?;
            all_agree &= agree;
            let verdict = if agree { AGREE } else { DISAGREE };
            lines.push(format!("sample {sample}, z = {}: {verdict}", a.format_element(z)));
            pairs.push(json!({
                "sample": sample,
                "cocycle": cochain_json(&phi),
                "z": element(a, z),
                "agree": agree,
                "verdict": verdict,
                "class": texts(&below.class_of(&from_cochain)?),
            }));
        }
    }
    Ok(Body { result: json!({ "all_agree": all_agree, "pairs": pairs }), lines, status: u8::from(!all_agree) })
}

fn vanishing_pattern(ctx: &Context, m: &Arc<Bimodule>, max_degree: usize) -> Result<Vec<(usize, usize, bool)>> {
    let zs = m.relative_center().basis_vectors();
    let spaces: Vec<Cohomology> = (0..=max_degree).map(|n| cohomology(m, n, &ctx.budget)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for n in 1..=max_degree {
        let mut vanishes = true;
        for alpha in spaces[n].representatives() {
            for z in &zs {
                vanishes &= spaces[n - 1].is_coboundary(&center_action(&alpha, z)?)?;
            }
        }
        out.push((n, spaces[n].dim(), vanishes));
    }
    Ok(out)
}

fn chain_criteria(ctx: &Context, a: &Arc<Algebra>, modules: &[(String, Arc<Bimodule>)], max_degree: usize) -> Result<Body> {
    let epi = check_ring_epi_criterion(a)?;
    let list: Vec<Arc<Bimodule>> = modules.iter().map(|(_, m)| m.clone()).collect();
    let chain = vanishing_chain(a, &list, max_degree, &ctx.budget)?;
    let mut lines = report_lines(&epi);
    lines.extend(report_lines(&chain));
    let mut pattern = Vec::new();
    lines.push("observed vanishing of [-, z] on HH^n:".into());
    for (label, m) in modules {
        for (n, dim, vanishes) in vanishing_pattern(ctx, m, max_degree)? {
            lines.push(format!("  {label} n={n} dim={dim}: {}", if vanishes { "vanishes" } else { "nonzero" }));
            pattern.push(json!({ "module": label, "degree": n, "hh_dim": dim, "vanishes": vanishes }));
        }
    }
    Ok(Body::ok(json!({ "ring_epi": epi, "chain": chain, "vanishing_pattern": pattern }), lines))
}

fn braiding(a: &Algebra, target: BraidingTarget, patterns: usize) -> Result<Body> {
    let epi = check_ring_epi_criterion(a)?;
    let search = find_braiding(a, target, patterns)?;
    let report = search.report();
    let mut lines = report_lines(&epi);
    lines.extend(report_lines(&report));
    match search.solution_dim {
        Some(d) => lines.push(format!("solution space dimension {d}, {} patterns tried", search.patterns_tried)),
        None => lines.push("the linear equations have no solution".into()),
    }
    Ok(Body::ok(
        json!({
            "ring_epi": epi,
            "braiding": report,
            "solution_dim": search.solution_dim,
            "patterns_tried": search.patterns_tried,
            "exhaustive": search.exhaustive,
        }),
        lines,
    ))
}

fn ed_check(derivations: &[Cochain]) -> Result<Body> {
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    let mut all = true;
    for (i, d) in derivations.iter().enumerate() {
        let report = kernel_via_ed(d)?;
        all &= report.all_hold();
        let values: Vec<String> = (0..d.algebra().dim()).map(|t| module_element(d.module(), &d.evaluate(&[t]))).collect();
        lines.push(format!("D{i}: basis images [{}]", values.join(", ")));
        lines.extend(report_lines(&report).into_iter().map(|l| format!("  {l}")));
        entries.push(json!({ "derivation": cochain_json(d), "report": report }));
    }
    Ok(Body { result: json!({ "derivations": entries }), lines, status: u8::from(!all) })
}

fn poisson(ctx: &Context, candidates: &[Cochain]) -> Result<Body> {
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    let mut consistent = true;
    for (i, pi) in candidates.iter().enumerate() {
        let report = poisson_check(pi, &ctx.budget)?;
        if report.holds("self_bracket_is_coboundary") == Some(true) {
            consistent &= report.all_hold();
        }
        lines.push(format!("Π{i}:"));
        lines.extend(report_lines(&report).into_iter().map(|l| format!("  {l}")));
        entries.push(json!({ "cocycle": cochain_json(pi), "report": report }));
    }
    Ok(Body { result: json!({ "candidates": entries }), lines, status: u8::from(!consistent) })
}

fn axioms(ctx: &Context, a: &Arc<Algebra>, m: &Arc<Bimodule>, max_degree: usize) -> Result<Body> {
    let g = gerstenhaber_axioms(a, max_degree, &ctx.budget)?;
    let module = module_axioms(m, max_degree, &ctx.budget)?;
    let evidence = extension_module_axioms(m, max_degree, &ctx.budget)?;
    let mut lines = report_lines(&g);
    lines.extend(report_lines(&module));
    lines.push("extension-side bracket (open question, recorded as evidence only):".into());
    lines.extend(report_lines(&evidence).into_iter().map(|l| format!("  {l}")));
    let status = u8::from(!(g.all_hold() && module.all_hold()));
    Ok(Body {
        result: json!({ "gerstenhaber": g, "module": module, "extension_module_evidence": evidence }),
        lines,
        status,
    })
}
