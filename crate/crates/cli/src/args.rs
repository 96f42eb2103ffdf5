use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hochlab", version, about = "Hochschild cohomology, brackets and extensions of finite-dimensional algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

/// Coefficients: `regular`, `outer-tensor`, `twisted:PATH` or a bimodule file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Regular,
    OuterTensor,
    Twisted(PathBuf),
    File(PathBuf),
}

impl FromStr for ModuleSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "regular" => ModuleSpec::Regular,
            "outer-tensor" => ModuleSpec::OuterTensor,
            "" => return Err("empty module specification".into()),
            _ => match s.strip_prefix("twisted:") {
                Some("") => return Err("twisted: needs a path to an endomorphism file".into()),
                Some(path) => ModuleSpec::Twisted(PathBuf::from(path)),
                None => ModuleSpec::File(PathBuf::from(s)),
            },
        })
    }
}

impl ModuleSpec {
    pub fn label(&self) -> String {
        match self {
            ModuleSpec::Regular => "regular".into(),
            ModuleSpec::OuterTensor => "outer-tensor".into(),
            ModuleSpec::Twisted(p) => format!("twisted:{}", p.display()),
            ModuleSpec::File(p) => p.display().to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Algebra,
    Center,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Algebra file.
    #[arg(long, value_name = "PATH")]
    pub algebra: PathBuf,
    /// Scalar cap per object; overrides HOCHLAB_BUDGET.
    #[arg(long, value_name = "N")]
    pub budget: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputFormat,
}

#[derive(Debug, Args)]
pub struct WithModule {
    #[command(flatten)]
    pub common: Common,
    /// regular, outer-tensor, twisted:PATH or a bimodule file.
    #[arg(long, value_name = "SPEC", default_value = "regular")]
    pub module: ModuleSpec,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Check algebra, bimodule and extension axioms.
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "SPEC")]
        module: Option<ModuleSpec>,
        #[arg(long, value_name = "PATH")]
        extension: Option<PathBuf>,
    },
    /// Dimensions of HH^n(A, M).
    Cohomology {
        #[command(flatten)]
        input: WithModule,
        #[arg(long, value_name = "N", default_value_t = 4)]
        max_degree: usize,
    },
    /// The center Z(A).
    Center {
        #[command(flatten)]
        common: Common,
    },
    /// The relative center Z_M(A).
    Relcenter {
        #[command(flatten)]
        input: WithModule,
    },
    /// Classes of [α, z] for a basis of HH^n(A, M) and of Z_M(A).
    Bracket {
        #[command(flatten)]
        input: WithModule,
        #[arg(long, value_name = "N")]
        degree: usize,
    },
    /// The bracket computed on an extension (or on chi of a cocycle file).
    ExtBracket {
        #[command(flatten)]
        input: WithModule,
        #[arg(long, value_name = "PATH")]
        extension: PathBuf,
    },
    /// Compare the extension-side and cochain-side brackets on sampled cocycles.
    VerifyMainTheorem {
        #[command(flatten)]
        input: WithModule,
        #[arg(long, value_name = "N")]
        degree: usize,
        #[arg(long, value_name = "U64", default_value_t = 0)]
        seed: u64,
        /// Sampled cocycles.
        #[arg(long, value_name = "K", default_value_t = 5)]
        samples: usize,
    },
    /// Center criteria and the observed bracket-vanishing pattern.
    ChainCriteria {
        #[command(flatten)]
        common: Common,
        /// An extra coefficient module besides regular and outer-tensor.
        #[arg(long, value_name = "SPEC")]
        module: Option<ModuleSpec>,
        #[arg(long, value_name = "N", default_value_t = 3)]
        max_degree: usize,
    },
    /// Ring-epi criterion and a bounded search for a braiding element.
    Braiding {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "center")]
        target: Target,
        /// Coefficient patterns to try.
        #[arg(long, value_name = "N", default_value_t = hochlab::criteria::DEFAULT_PATTERN_BUDGET)]
        patterns: usize,
    },
    /// Ker(D) ∩ Z_M(A) against the relative center of E_D.
    EdCheck {
        #[command(flatten)]
        input: WithModule,
        /// A derivation as a degree-1 cochain file; defaults to a basis of Der(A, M) and zero.
        #[arg(long, value_name = "PATH")]
        cochain: Option<PathBuf>,
    },
    /// Transport to M_k(A).
    Morita {
        #[command(flatten)]
        input: WithModule,
        #[arg(long, value_name = "K", default_value_t = 2)]
        size: usize,
        #[arg(long, value_name = "N", default_value_t = 2)]
        max_degree: usize,
    },
    /// Poisson bracket on Z(A) induced by a degree-2 cocycle.
    Poisson {
        #[command(flatten)]
        common: Common,
        /// Degree-2 cocycle with coefficients in A; defaults to a basis of HH^2 and its sum.
        #[arg(long, value_name = "PATH")]
        cochain: Option<PathBuf>,
    },
    /// Gerstenhaber and right-module axioms on cohomology.
    Axioms {
        #[command(flatten)]
        input: WithModule,
        #[arg(long, value_name = "N", default_value_t = 3)]
        max_degree: usize,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Validate { .. } => "validate",
            Verb::Cohomology { .. } => "cohomology",
            Verb::Center { .. } => "center",
            Verb::Relcenter { .. } => "relcenter",
            Verb::Bracket { .. } => "bracket",
            Verb::ExtBracket { .. } => "ext-bracket",
            Verb::VerifyMainTheorem { .. } => "verify-main-theorem",
            Verb::ChainCriteria { .. } => "chain-criteria",
            Verb::Braiding { .. } => "braiding",
            Verb::EdCheck { .. } => "ed-check",
            Verb::Morita { .. } => "morita",
            Verb::Poisson { .. } => "poisson",
            Verb::Axioms { .. } => "axioms",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Verb::Validate { common, .. }
            | Verb::Center { common }
            | Verb::ChainCriteria { common, .. }
            | Verb::Braiding { common, .. }
            | Verb::Poisson { common, .. } => common,
            Verb::Cohomology { input, .. }
            | Verb::Relcenter { input }
            | Verb::Bracket { input, .. }
            | Verb::ExtBracket { input, .. }
            | Verb::VerifyMainTheorem { input, .. }
            | Verb::EdCheck { input, .. }
            | Verb::Morita { input, .. }
            | Verb::Axioms { input, .. } => &input.common,
        }
    }
}
