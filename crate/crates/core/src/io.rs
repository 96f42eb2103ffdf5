//! JSON input and output formats.
//!
//! * Algebra: `{"field": {"kind": "rational"} | {"kind": "prime", "p": 3},
//!   "dim": d, "basis": [names], "unit": [scalars], "table": [[i, j, k, c], ...]}`
//!   with 0-based indices; omitted products are zero.
//! * Bimodule: `{"algebra": path | inline algebra, "dim": m, "left": [d matrices],
//!   "right": [d matrices]}`. `"algebra"` may be omitted when the caller
//!   supplies one.
//! * Twist: `{"endomorphism": d×d matrix}` whose columns are images of basis vectors.
//! * Cochain: `{"degree": n, "matrix": dim M × d^n}`. Column `t` is the basis
//!   tensor `e_{i_1} ⊗ ⋯ ⊗ e_{i_n}` with `t = ((i_1 d + i_2) d + ⋯) d + i_n`.
//! * Extension: `{"length": n, "coefficients": module, "modules": [E_{n-1}, ..., E_0],
//!   "maps": [d_n, ..., d_0]}`. A module is `"regular"`, `"outer-tensor"`, a
//!   path or an inline bimodule.
//!
//! Matrices are row-major lists of scalars. Scalars are strings `"a"` or `"a/b"`;
//! plain JSON integers are accepted on input. Relative paths resolve against
//! the directory of the referencing file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{Algebra, Bimodule};
use crate::cochain::{tensor_count, Cochain};
use crate::error::{Error, Result};
use crate::extension::NExtension;
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// A scalar literal; only the syntax is checked while parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal(pub String);

fn valid_literal(text: &str) -> bool {
    let integer = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    match text.split_once('/') {
        Some((n, d)) => integer(n) && !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && d.bytes().any(|b| b != b'0'),
        None => integer(text),
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct LiteralVisitor;
        impl Visitor<'_> for LiteralVisitor {
            type Value = Literal;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a scalar such as \"3\", \"-1/2\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Literal, E> {
                if valid_literal(v) {
                    Ok(Literal(v.to_string()))
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Literal, E> {
                Ok(Literal(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Literal, E> {
                Ok(Literal(v.to_string()))
            }
        }
        deserializer.deserialize_any(LiteralVisitor)
    }
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl From<&Scalar> for Literal {
    fn from(s: &Scalar) -> Literal {
        Literal(s.to_text())
    }
}

pub type MatrixRows = Vec<Vec<Literal>>;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: Field,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<Literal>,
    pub table: Vec<(usize, usize, usize, Literal)>,
}

/// Where an algebra comes from: a path or an inline description.
#[derive(Clone, Debug)]
pub enum AlgebraRef {
    Path(String),
    Inline(Box<AlgebraFile>),
}

impl<'de> Deserialize<'de> for AlgebraRef {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RefVisitor;
        impl<'de> Visitor<'de> for RefVisitor {
            type Value = AlgebraRef;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a path or an inline algebra object")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<AlgebraRef, E> {
                Ok(AlgebraRef::Path(v.to_string()))
            }
            fn visit_map<A: MapAccess<'de>>(self, map: A) -> std::result::Result<AlgebraRef, A::Error> {
                let file = AlgebraFile::deserialize(de::value::MapAccessDeserializer::new(map))?;
                Ok(AlgebraRef::Inline(Box::new(file)))
            }
        }
        deserializer.deserialize_any(RefVisitor)
    }
}

impl Serialize for AlgebraRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AlgebraRef::Path(p) => serializer.serialize_str(p),
            AlgebraRef::Inline(a) => a.serialize(serializer),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraRef>,
    pub dim: usize,
    pub left: Vec<MatrixRows>,
    pub right: Vec<MatrixRows>,
}

/// A coefficient module inside an extension file.
#[derive(Clone, Debug)]
pub enum ModuleRef {
    Regular,
    OuterTensor,
    Path(String),
    Inline(Box<BimoduleFile>),
}

impl<'de> Deserialize<'de> for ModuleRef {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RefVisitor;
        impl<'de> Visitor<'de> for RefVisitor {
            type Value = ModuleRef;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("\"regular\", \"outer-tensor\", a path or an inline bimodule object")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ModuleRef, E> {
                Ok(match v {
                    "regular" => ModuleRef::Regular,
                    "outer-tensor" => ModuleRef::OuterTensor,
                    _ => ModuleRef::Path(v.to_string()),
                })
            }
            fn visit_map<A: MapAccess<'de>>(self, map: A) -> std::result::Result<ModuleRef, A::Error> {
                let file = BimoduleFile::deserialize(de::value::MapAccessDeserializer::new(map))?;
                Ok(ModuleRef::Inline(Box::new(file)))
            }
        }
        deserializer.deserialize_any(RefVisitor)
    }
}

impl Serialize for ModuleRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ModuleRef::Regular => serializer.serialize_str("regular"),
            ModuleRef::OuterTensor => serializer.serialize_str("outer-tensor"),
            ModuleRef::Path(p) => serializer.serialize_str(p),
            ModuleRef::Inline(m) => m.serialize(serializer),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TwistFile {
    pub endomorphism: MatrixRows,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub degree: usize,
    pub matrix: MatrixRows,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub length: usize,
    pub coefficients: ModuleRef,
    pub modules: Vec<ModuleRef>,
    pub maps: Vec<MatrixRows>,
}

/// Parses one JSON document, reporting the line, column and field path of
/// the first error.
pub fn parse_document<T: for<'de> Deserialize<'de>>(file: &str, text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        parse_error(file, &inner, field)
    })?;
    de.end().map_err(|e| parse_error(file, &e, ".".into()))?;
    Ok(value)
}

fn parse_error(file: &str, e: &serde_json::Error, field: String) -> Error {
    let text = e.to_string();
    let message = match text.rfind(" at line ") {
        Some(cut) => text[..cut].to_string(),
        None => text,
    };
    Error::Parse { file: file.to_string(), line: e.line(), column: e.column(), field, message }
}

fn input_error(file: &str, field: impl Into<String>, message: impl fmt::Display) -> Error {
    Error::Input { file: file.to_string(), field: field.into(), message: message.to_string() }
}

#[derive(Clone, Debug)]
pub enum ExtensionInput {
    Extension(NExtension),
    Cocycle(Cochain),
}

/// A file read during loading, kept so callers can fingerprint inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedFile {
    pub path: String,
    pub contents: String,
}

/// Reads files and remembers every one of them in reading order.
#[derive(Debug, Default)]
pub struct Loader {
    files: Vec<LoadedFile>,
}

impl Loader {
    pub fn new() -> Loader {
        Loader::default()
    }

    pub fn files(&self) -> &[LoadedFile] {
        &self.files
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let contents = std::fs::read_to_string(path)
            .map_err(|e| input_error(&path.display().to_string(), ".", format!("cannot read file: {e}")))?;
        let shown = path.display().to_string();
        if !self.files.iter().any(|f| f.path == shown) {
            self.files.push(LoadedFile { path: shown, contents: contents.clone() });
        }
        Ok(contents)
    }

    fn document<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Result<T> {
        let text = self.read(path)?;
        parse_document(&path.display().to_string(), &text)
    }

    pub fn algebra(&mut self, path: &Path) -> Result<Arc<Algebra>> {
        let file: AlgebraFile = self.document(path)?;
        Ok(Arc::new(algebra_from_file(&path.display().to_string(), &file)?))
    }

    /// Loads a bimodule file; `context` supplies or must match its algebra.
    /// The action axioms are not checked here.
    pub fn bimodule(&mut self, path: &Path, context: Option<&Arc<Algebra>>) -> Result<Arc<Bimodule>> {
        let file: BimoduleFile = self.document(path)?;
        self.bimodule_from(path, &file, context)
    }

    fn bimodule_from(&mut self, origin: &Path, file: &BimoduleFile, context: Option<&Arc<Algebra>>) -> Result<Arc<Bimodule>> {
        let name = origin.display().to_string();
        let own = match &file.algebra {
            None => None,
            Some(AlgebraRef::Path(p)) => Some(self.algebra(&resolve(origin, p))?),
            Some(AlgebraRef::Inline(a)) => Some(Arc::new(algebra_from_file(&name, a)?)),
        };
        let algebra = match (own, context) {
            (Some(a), Some(c)) if *a != **c => {
                return Err(input_error(&name, "algebra", "differs from the algebra given on the command line"))
            }
            (_, Some(c)) => c.clone(),
            (Some(a), None) => a,
            (None, None) => return Err(input_error(&name, "algebra", "missing and no algebra was supplied")),
        };
        Ok(Arc::new(bimodule_from_file(&name, &algebra, file)?))
    }

    /// `A` twisted on the right by the endomorphism in a twist file.
    pub fn twisted(&mut self, path: &Path, algebra: &Arc<Algebra>) -> Result<Arc<Bimodule>> {
        let name = path.display().to_string();
        let file: TwistFile = self.document(path)?;
        let d = algebra.dim();
        let sigma = matrix_from_rows(&name, "endomorphism", algebra.field(), &file.endomorphism, d, d)?;
        Bimodule::twisted(algebra, &sigma).map(Arc::new).map_err(|e| input_error(&name, "endomorphism", e))
    }

    pub fn cochain(&mut self, path: &Path, module: &Arc<Bimodule>) -> Result<Cochain> {
        let file: CochainFile = self.document(path)?;
        cochain_from_file(&path.display().to_string(), module, &file)
    }

    /// Loads an extension file over `algebra`. Shapes are checked; exactness
    /// and linearity are left to [`NExtension::validate`].
    pub fn extension(&mut self, path: &Path, algebra: &Arc<Algebra>) -> Result<NExtension> {
        let name = path.display().to_string();
        let file: ExtensionFile = self.document(path)?;
        if file.modules.len() != file.length || file.maps.len() != file.length + 1 {
            return Err(input_error(
                &name,
                "length",
                format!(
                    "length {} needs {} modules and {} maps, found {} and {}",
                    file.length,
                    file.length,
                    file.length + 1,
                    file.modules.len(),
                    file.maps.len()
                ),
            ));
        }
        let coefficients = self.module_ref(path, &file.coefficients, algebra)?;
        // the file lists E_{n-1} .. E_0 and d_n .. d_0
        let mut terms = Vec::with_capacity(file.length);
        for m in file.modules.iter().rev() {
            terms.push(self.module_ref(path, m, algebra)?);
        }
        let dim_of = |k: isize| -> usize {
            if k < 0 {
                algebra.dim()
            } else if k as usize == file.length {
                coefficients.dim()
            } else {
                terms[k as usize].dim()
            }
        };
        let mut maps = Vec::with_capacity(file.length + 1);
        for (pos, rows) in file.maps.iter().enumerate().rev() {
            let k = (file.length - pos) as isize;
            let field = format!("maps[{pos}]");
            maps.push(matrix_from_rows(&name, &field, algebra.field(), rows, dim_of(k - 1), dim_of(k))?);
        }
        NExtension::new(coefficients, terms, maps).map_err(|e| input_error(&name, ".", e))
    }

    /// An extension file, or a cocycle file over `module` realized by the caller.
    pub fn extension_input(&mut self, path: &Path, module: &Arc<Bimodule>) -> Result<ExtensionInput> {
        let name = path.display().to_string();
        let text = self.read(path)?;
        let value: serde_json::Value = parse_document(&name, &text)?;
        if value.get("degree").is_some() {
            Ok(ExtensionInput::Cocycle(self.cochain(path, module)?))
        } else {
            Ok(ExtensionInput::Extension(self.extension(path, module.algebra())?))
        }
    }

    fn module_ref(&mut self, origin: &Path, m: &ModuleRef, algebra: &Arc<Algebra>) -> Result<Arc<Bimodule>> {
        match m {
            ModuleRef::Regular => Ok(Arc::new(Bimodule::regular(algebra))),
            ModuleRef::OuterTensor => Ok(Arc::new(Bimodule::outer_tensor(algebra))),
            ModuleRef::Path(p) => self.bimodule(&resolve(origin, p), Some(algebra)),
            ModuleRef::Inline(file) => self.bimodule_from(origin, file, Some(algebra)),
        }
    }
}

fn resolve(origin: &Path, relative: &str) -> PathBuf {
    let p = Path::new(relative);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        origin.parent().unwrap_or(Path::new("")).join(p)
    }
}

fn scalar(file: &str, field_path: &str, f: Field, lit: &Literal) -> Result<Scalar> {
    f.parse(&lit.0).map_err(|e| input_error(file, field_path, e))
}

fn matrix_from_rows(file: &str, field_path: &str, f: Field, rows: &MatrixRows, nrows: usize, ncols: usize) -> Result<Matrix> {
    if rows.len() != nrows {
        return Err(input_error(file, field_path, format!("expected {nrows} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(nrows);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(input_error(file, format!("{field_path}[{r}]"), format!("expected {ncols} entries, found {}", row.len())));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(c, lit)| scalar(file, &format!("{field_path}[{r}][{c}]"), f, lit))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    Matrix::from_rows_with_cols(f, out, ncols)
}

/// Converts a parsed algebra file; shape errors name the offending field.
pub fn algebra_from_file(file: &str, a: &AlgebraFile) -> Result<Algebra> {
    let f = a.field;
    let d = a.dim;
    if a.basis.len() != d {
        return Err(input_error(file, "basis", format!("expected {d} names, found {}", a.basis.len())));
    }
    if a.unit.len() != d {
        return Err(input_error(file, "unit", format!("expected {d} coordinates, found {}", a.unit.len())));
    }
    let unit = a.unit.iter().enumerate().map(|(i, l)| scalar(file, &format!("unit[{i}]"), f, l)).collect::<Result<Vec<_>>>()?;
    let mut table = Vec::with_capacity(a.table.len());
    for (pos, (i, j, k, c)) in a.table.iter().enumerate() {
        if *i >= d || *j >= d || *k >= d {
            return Err(input_error(file, format!("table[{pos}]"), format!("index out of range for dimension {d}")));
        }
        table.push((*i, *j, *k, scalar(file, &format!("table[{pos}][3]"), f, c)?));
    }
    Algebra::new(f, a.basis.clone(), unit, table)
}

pub fn bimodule_from_file(file: &str, algebra: &Arc<Algebra>, m: &BimoduleFile) -> Result<Bimodule> {
    let (d, dim, f) = (algebra.dim(), m.dim, algebra.field());
    let side = |name: &str, mats: &[MatrixRows]| -> Result<Vec<Matrix>> {
        if mats.len() != d {
            return Err(input_error(file, name, format!("expected {d} matrices, one per basis element, found {}", mats.len())));
        }
        mats.iter().enumerate().map(|(i, rows)| matrix_from_rows(file, &format!("{name}[{i}]"), f, rows, dim, dim)).collect()
    };
    Bimodule::new(algebra.clone(), dim, side("left", &m.left)?, side("right", &m.right)?)
}

pub fn cochain_from_file(file: &str, module: &Arc<Bimodule>, c: &CochainFile) -> Result<Cochain> {
    let cols = tensor_count(module.algebra().dim(), c.degree);
    let values = matrix_from_rows(file, "matrix", module.field(), &c.matrix, module.dim(), cols)?;
    Cochain::new(module.clone(), c.degree, values)
}

fn rows_of(m: &Matrix) -> MatrixRows {
    m.to_rows().iter().map(|r| r.iter().map(Literal::from).collect()).collect()
}

pub fn algebra_to_file(a: &Algebra) -> AlgebraFile {
    AlgebraFile {
        field: a.field(),
        dim: a.dim(),
        basis: a.basis_names().to_vec(),
        unit: a.unit().iter().map(Literal::from).collect(),
        table: a.table().into_iter().map(|(i, j, k, c)| (i, j, k, Literal::from(&c))).collect(),
    }
}

/// Serializes a bimodule; `algebra` is embedded as given.
pub fn bimodule_to_file(m: &Bimodule, algebra: Option<AlgebraRef>) -> BimoduleFile {
    BimoduleFile {
        algebra,
        dim: m.dim(),
        left: m.left_matrices().iter().map(rows_of).collect(),
        right: m.right_matrices().iter().map(rows_of).collect(),
    }
}

pub fn cochain_to_file(c: &Cochain) -> Result<CochainFile> {
    let degree = c.arity().ok_or_else(|| Error::Precondition("the degree -1 cochain has no file form".into()))?;
    Ok(CochainFile { degree, matrix: rows_of(c.values()) })
}

/// Serializes an extension with every module inline.
pub fn extension_to_file(s: &NExtension) -> ExtensionFile {
    let n = s.length();
    let inline = |m: &Bimodule| ModuleRef::Inline(Box::new(bimodule_to_file(m, None)));
    ExtensionFile {
        length: n,
        coefficients: inline(s.coefficients()),
        modules: (0..n).rev().map(|k| inline(s.term(k))).collect(),
        maps: (0..=n).rev().map(|k| rows_of(s.map(k))).collect(),
    }
}

pub fn twist_to_file(sigma: &Matrix) -> TwistFile {
    TwistFile { endomorphism: rows_of(sigma) }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
