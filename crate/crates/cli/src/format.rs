//! JSON input documents. Rationals are strings `"p"` or `"p/q"` so they
//! survive serialization exactly.

use std::collections::BTreeMap;

use cychom_core::algcore::{
    split_square, Algebra, AlgebraError, AlgebraMap, Bimodule, GradedAlgebra, Ideal, SplitSquare,
};
use cychom_core::cyccat::{validate_cyclic, CyclicModule, SimplicialModule};
use cychom_core::exactla::{Scalar, SparseMatrix, SparseVec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense matrix as a list of rows.
pub type MatrixDoc = Vec<Vec<String>>;
/// Sparse vector keyed by basis label.
pub type VectorDoc = BTreeMap<String, String>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub left: String,
    pub right: String,
    pub value: VectorDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub basis: Vec<String>,
    pub unit: VectorDoc,
    /// Products of basis elements; omitted pairs multiply to zero.
    #[serde(default)]
    pub products: Vec<ProductDoc>,
    /// Named two-sided ideals, each given by generators.
    #[serde(default)]
    pub ideals: BTreeMap<String, Vec<VectorDoc>>,
    /// Degree of each basis element, for graded algebras.
    #[serde(default)]
    pub grading: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BimoduleDoc {
    /// The algebra acting on itself.
    Regular,
    /// `ℚ^dim` with both actions through an augmentation `A → ℚ`.
    Augmentation {
        dim: usize,
        augmentation: Vec<String>,
    },
    /// Action matrices of each basis element, keyed by label.
    Explicit {
        dim: usize,
        left: BTreeMap<String, MatrixDoc>,
        right: BTreeMap<String, MatrixDoc>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareZeroDoc {
    pub base: AlgebraDoc,
    pub bimodules: Vec<BimoduleDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareDoc {
    pub a1: AlgebraDoc,
    pub a2: AlgebraDoc,
    pub a12: AlgebraDoc,
    /// `f¹: A¹ → A¹²`, rows indexed by the basis of `A¹²`.
    pub f1: MatrixDoc,
    pub f2: MatrixDoc,
    /// Sections `A¹² → A¹` and `A¹² → A²`.
    pub s1: MatrixDoc,
    pub s2: MatrixDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialDoc {
    pub dims: Vec<usize>,
    /// `faces[q][i] = d_i: M_q → M_{q−1}`; `faces[0]` is empty.
    pub faces: Vec<Vec<MatrixDoc>>,
    /// `degeneracies[q][i] = s_i: M_q → M_{q+1}` for `q < D`.
    pub degeneracies: Vec<Vec<MatrixDoc>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclicDoc {
    pub dims: Vec<usize>,
    pub faces: Vec<Vec<MatrixDoc>>,
    pub degeneracies: Vec<Vec<MatrixDoc>>,
    /// `t_q: M_q → M_q`.
    pub cyclic: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDoc {
    /// `dim C_k` for `k = 0, 1, …`.
    pub dims: Vec<usize>,
    /// `differentials[k − 1] = d_k: C_k → C_{k−1}`.
    pub differentials: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Document {
    Algebra(AlgebraDoc),
    SquareZero(SquareZeroDoc),
    SplitSquare(SquareDoc),
    SimplicialModule(SimplicialDoc),
    CyclicModule(CyclicDoc),
    ChainComplex(ChainDoc),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: invalid rational {input:?} ({reason})")]
    Rational {
        path: String,
        input: String,
        reason: &'static str,
    },
    #[error("{path}: unknown basis label {label:?}")]
    UnknownLabel { path: String, label: String },
    #[error("{path}: expected {expected}, found {found}")]
    Shape {
        path: String,
        expected: String,
        found: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: &str, e: impl std::fmt::Display) -> SpecError {
    SpecError::Invalid {
        path: path.to_string(),
        message: e.to_string(),
    }
}

fn shape(path: &str, expected: impl std::fmt::Display, found: impl std::fmt::Display) -> SpecError {
    SpecError::Shape {
        path: path.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

pub fn scalar(path: &str, s: &str) -> Result<Scalar, SpecError> {
    s.parse::<Scalar>().map_err(|e| SpecError::Rational {
        path: path.to_string(),
        input: s.to_string(),
        reason: e.reason,
    })
}

pub fn matrix(
    path: &str,
    m: &MatrixDoc,
    rows: usize,
    cols: usize,
) -> Result<SparseMatrix, SpecError> {
    if m.len() != rows {
        return Err(shape(path, format!("{rows} rows"), m.len()));
    }
    let mut data = Vec::with_capacity(rows);
    for (r, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(shape(
                &format!("{path}[{r}]"),
                format!("{cols} entries"),
                row.len(),
            ));
        }
        data.push(
            row.iter()
                .enumerate()
                .map(|(c, x)| scalar(&format!("{path}[{r}][{c}]"), x))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if rows == 0 {
        return Ok(SparseMatrix::zeros(0, cols));
    }
    Ok(SparseMatrix::from_dense_rows(&data))
}

fn label_index(path: &str, labels: &[String], l: &str) -> Result<usize, SpecError> {
    labels
        .iter()
        .position(|x| x == l)
        .ok_or_else(|| SpecError::UnknownLabel {
            path: path.to_string(),
            label: l.to_string(),
        })
}

fn vector(path: &str, labels: &[String], v: &VectorDoc) -> Result<SparseVec, SpecError> {
    let mut entries = Vec::with_capacity(v.len());
    for (l, x) in v {
        let p = format!("{path}.{l}");
        entries.push((label_index(&p, labels, l)?, scalar(&p, x)?));
    }
    Ok(SparseVec::from_entries(entries))
}

/// An algebra with its named ideals and optional grading.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub name: String,
    pub algebra: Algebra,
    pub ideals: Vec<(String, Ideal)>,
    pub graded: Option<GradedAlgebra>,
}

impl AlgebraSpec {
    pub fn ideal(&self, name: Option<&str>) -> Result<(String, Ideal), SpecError> {
        match name {
            Some(n) => self
                .ideals
                .iter()
                .find(|(m, _)| m == n)
                .cloned()
                .ok_or_else(|| invalid("ideals", format!("no ideal named {n:?}"))),
            None => Ok(self
                .ideals
                .first()
                .cloned()
                .unwrap_or_else(|| ("0".to_string(), Ideal::zero(&self.algebra)))),
        }
    }
}

pub fn algebra(path: &str, doc: &AlgebraDoc) -> Result<AlgebraSpec, SpecError> {
    let labels = &doc.basis;
    let n = labels.len();
    if n == 0 {
        return Err(invalid(
            &format!("{path}.basis"),
            "an algebra needs a nonempty basis",
        ));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(invalid(
                &format!("{path}.basis[{i}]"),
                format!("duplicate label {l:?}"),
            ));
        }
    }
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for (k, p) in doc.products.iter().enumerate() {
        let pp = format!("{path}.products[{k}]");
        let i = label_index(&format!("{pp}.left"), labels, &p.left)?;
        let j = label_index(&format!("{pp}.right"), labels, &p.right)?;
        table[i][j] = vector(&format!("{pp}.value"), labels, &p.value)?;
    }
    let unit = vector(&format!("{path}.unit"), labels, &doc.unit)?;
    let a = Algebra::new(labels.clone(), table, unit)
        .map_err(|e| invalid(path, describe_algebra_error(&e, labels)))?;
    let mut ideals = Vec::new();
    for (name, gens) in &doc.ideals {
        let p = format!("{path}.ideals.{name}");
        let vs = gens
            .iter()
            .enumerate()
            .map(|(k, g)| vector(&format!("{p}[{k}]"), labels, g))
            .collect::<Result<Vec<_>, _>>()?;
        ideals.push((name.clone(), Ideal::generated_by(&a, vs)));
    }
    let graded = match &doc.grading {
        None => None,
        Some(g) => {
            let p = format!("{path}.grading");
            if g.len() != n {
                return Err(shape(&p, format!("{n} degrees"), g.len()));
            }
            Some(
                GradedAlgebra::new(a.clone(), g.clone())
                    .map_err(|e| invalid(&p, describe_algebra_error(&e, labels)))?,
            )
        }
    };
    Ok(AlgebraSpec {
        name: doc.name.clone().unwrap_or_else(|| "algebra".to_string()),
        algebra: a,
        ideals,
        graded,
    })
}

fn describe_algebra_error(e: &AlgebraError, labels: &[String]) -> String {
    let l = |i: &usize| labels.get(*i).cloned().unwrap_or_else(|| i.to_string());
    match e {
        AlgebraError::NotAssociative(i, j, k) => {
            format!("not associative on ({}, {}, {})", l(i), l(j), l(k))
        }
        AlgebraError::UnitFailure(i) => format!("unit does not act as identity on {}", l(i)),
        AlgebraError::NotGraded(i, j) => format!(
            "product {}·{} is not homogeneous of the summed degree",
            l(i),
            l(j)
        ),
        other => other.to_string(),
    }
}

fn bimodule(path: &str, a: &Algebra, doc: &BimoduleDoc) -> Result<Bimodule, SpecError> {
    match doc {
        BimoduleDoc::Regular => Ok(Bimodule::regular(a)),
        BimoduleDoc::Augmentation { dim, augmentation } => {
            if augmentation.len() != a.dim() {
                return Err(shape(
                    &format!("{path}.augmentation"),
                    format!("{} values", a.dim()),
                    augmentation.len(),
                ));
            }
            let aug = augmentation
                .iter()
                .enumerate()
                .map(|(i, x)| scalar(&format!("{path}.augmentation[{i}]"), x))
                .collect::<Result<Vec<_>, _>>()?;
            Bimodule::via_augmentation(a, &aug, *dim).map_err(|e| invalid(path, e))
        }
        BimoduleDoc::Explicit { dim, left, right } => {
            let side = |name: &str,
                        m: &BTreeMap<String, MatrixDoc>|
             -> Result<Vec<SparseMatrix>, SpecError> {
                a.labels()
                    .iter()
                    .map(|l| {
                        let p = format!("{path}.{name}.{l}");
                        let doc = m
                            .get(l)
                            .ok_or_else(|| invalid(&p, "missing action matrix"))?;
                        matrix(&p, doc, *dim, *dim)
                    })
                    .collect()
            };
            Bimodule::new(a, *dim, side("left", left)?, side("right", right)?)
                .map_err(|e| invalid(path, e))
        }
    }
}

fn simplicial(
    path: &str,
    dims: &[usize],
    faces: &[Vec<MatrixDoc>],
    degens: &[Vec<MatrixDoc>],
) -> Result<SimplicialModule, SpecError> {
    if dims.is_empty() {
        return Err(invalid(
            &format!("{path}.dims"),
            "at least degree 0 is required",
        ));
    }
    let d = dims.len() - 1;
    if faces.len() != d + 1 {
        return Err(shape(
            &format!("{path}.faces"),
            format!("{} degrees", d + 1),
            faces.len(),
        ));
    }
    if degens.len() != d {
        return Err(shape(
            &format!("{path}.degeneracies"),
            format!("{d} degrees"),
            degens.len(),
        ));
    }
    let mut fs = Vec::with_capacity(d + 1);
    for (q, fq) in faces.iter().enumerate() {
        let expect = if q == 0 { 0 } else { q + 1 };
        if fq.len() != expect {
            return Err(shape(
                &format!("{path}.faces[{q}]"),
                format!("{expect} maps"),
                fq.len(),
            ));
        }
        fs.push(
            fq.iter()
                .enumerate()
                .map(|(i, m)| matrix(&format!("{path}.faces[{q}][{i}]"), m, dims[q - 1], dims[q]))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let mut ss = Vec::with_capacity(d);
    for (q, sq) in degens.iter().enumerate() {
        if sq.len() != q + 1 {
            return Err(shape(
                &format!("{path}.degeneracies[{q}]"),
                format!("{} maps", q + 1),
                sq.len(),
            ));
        }
        ss.push(
            sq.iter()
                .enumerate()
                .map(|(i, m)| {
                    matrix(
                        &format!("{path}.degeneracies[{q}][{i}]"),
                        m,
                        dims[q + 1],
                        dims[q],
                    )
                })
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let m = SimplicialModule {
        dims: dims.to_vec(),
        faces: fs,
        degens: ss,
    };
    if let Some(v) = m.first_violation() {
        return Err(invalid(path, v));
    }
    Ok(m)
}

/// A chain complex `C_0 ← C_1 ← …`, turned into a simplicial module on demand.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    /// `diffs[k] = d_k: C_k → C_{k−1}`, with `diffs[0]` having no rows.
    pub diffs: Vec<SparseMatrix>,
}

#[derive(Clone, Debug)]
pub enum Spec {
    Algebra(AlgebraSpec),
    SquareZero {
        base: AlgebraSpec,
        bimodules: Vec<Bimodule>,
    },
    Square(Box<SplitSquare>),
    Simplicial(SimplicialModule),
    Cyclic(CyclicModule),
    Chain(ChainSpec),
}

impl Spec {
    pub fn kind(&self) -> &'static str {
        match self {
            Spec::Algebra(_) => "algebra",
            Spec::SquareZero { .. } => "square_zero",
            Spec::Square(_) => "split_square",
            Spec::Simplicial(_) => "simplicial_module",
            Spec::Cyclic(_) => "cyclic_module",
            Spec::Chain(_) => "chain_complex",
        }
    }
}

/// Parses and validates a document.
pub fn parse_spec(text: &str) -> Result<Spec, SpecError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| SpecError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    build(&doc)
}

pub fn build(doc: &Document) -> Result<Spec, SpecError> {
    match doc {
        Document::Algebra(a) => Ok(Spec::Algebra(algebra("$", a)?)),
        Document::SquareZero(s) => {
            let base = algebra("$.base", &s.base)?;
            if s.bimodules.is_empty() {
                return Err(invalid("$.bimodules", "at least one bimodule is required"));
            }
            let bimodules = s
                .bimodules
                .iter()
                .enumerate()
                .map(|(k, b)| bimodule(&format!("$.bimodules[{k}]"), &base.algebra, b))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Spec::SquareZero { base, bimodules })
        }
        Document::SplitSquare(s) => {
            let a1 = algebra("$.a1", &s.a1)?.algebra;
            let a2 = algebra("$.a2", &s.a2)?.algebra;
            let a12 = algebra("$.a12", &s.a12)?.algebra;
            let map = |p: &str, m: &MatrixDoc, src: &Algebra| -> Result<AlgebraMap, SpecError> {
                let mat = matrix(p, m, a12.dim(), src.dim())?;
                AlgebraMap::new(src, &a12, mat).map_err(|e| invalid(p, e))
            };
            let f1 = map("$.f1", &s.f1, &a1)?;
            let f2 = map("$.f2", &s.f2, &a2)?;
            let s1 = matrix("$.s1", &s.s1, a1.dim(), a12.dim())?;
            let s2 = matrix("$.s2", &s.s2, a2.dim(), a12.dim())?;
            let sq =
                split_square(&a1, &a2, &a12, &f1, &f2, &s1, &s2).map_err(|e| invalid("$", e))?;
            Ok(Spec::Square(Box::new(sq)))
        }
        Document::SimplicialModule(s) => Ok(Spec::Simplicial(simplicial(
            "$",
            &s.dims,
            &s.faces,
            &s.degeneracies,
        )?)),
        Document::CyclicModule(c) => {
            let simp = simplicial("$", &c.dims, &c.faces, &c.degeneracies)?;
            if c.cyclic.len() != c.dims.len() {
                return Err(shape(
                    "$.cyclic",
                    format!("{} maps", c.dims.len()),
                    c.cyclic.len(),
                ));
            }
            let t = c
                .cyclic
                .iter()
                .enumerate()
                .map(|(q, m)| matrix(&format!("$.cyclic[{q}]"), m, c.dims[q], c.dims[q]))
                .collect::<Result<Vec<_>, _>>()?;
            let m = CyclicModule {
                simplicial: simp,
                t,
            };
            if let Some(v) = validate_cyclic(&m).violation {
                return Err(invalid("$", v));
            }
            Ok(Spec::Cyclic(m))
        }
        Document::ChainComplex(c) => {
            if c.dims.is_empty() {
                return Err(invalid("$.dims", "at least C_0 is required"));
            }
            if c.differentials.len() + 1 != c.dims.len() {
                return Err(shape(
                    "$.differentials",
                    format!("{} maps", c.dims.len() - 1),
                    c.differentials.len(),
                ));
            }
            let mut diffs = vec![SparseMatrix::zeros(0, c.dims[0])];
            for (k, m) in c.differentials.iter().enumerate() {
                diffs.push(matrix(
                    &format!("$.differentials[{k}]"),
                    m,
                    c.dims[k],
                    c.dims[k + 1],
                )?);
            }
            for k in 1..diffs.len() - 1 {
                if !diffs[k].mul(&diffs[k + 1]).is_zero() {
                    return Err(invalid(
                        &format!("$.differentials[{k}]"),
                        format!("d_{} ∘ d_{} is not zero", k, k + 1),
                    ));
                }
            }
            Ok(Spec::Chain(ChainSpec { diffs }))
        }
    }
}

/// Writes a matrix as rows of rational strings.
pub fn matrix_doc(m: &SparseMatrix) -> MatrixDoc {
    m.to_dense_rows()
        .iter()
        .map(|r| r.iter().map(Scalar::to_string).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = r#"{
        "kind": "algebra",
        "basis": ["1", "e"],
        "unit": {"1": "1"},
        "products": [
            {"left": "1", "right": "1", "value": {"1": "1"}},
            {"left": "1", "right": "e", "value": {"e": "1"}},
            {"left": "e", "right": "1", "value": {"e": "1"}}
        ],
        "ideals": {"nil": [{"e": "1"}]}
    }"#;

    #[test]
    fn dual_numbers() {
        let Spec::Algebra(a) = parse_spec(DUAL).unwrap() else {
            panic!()
        };
        assert_eq!(a.algebra.dim(), 2);
        assert_eq!(a.ideal(None).unwrap().1.dim(), 1);
    }

    #[test]
    fn zero_denominator_is_located() {
        let bad = DUAL.replace(r#"{"e": "1"}}"#, r#"{"e": "1/0"}}"#);
        let err = parse_spec(&bad).unwrap_err();
        assert_eq!(
            err,
            SpecError::Rational {
                path: "$.products[1].value.e".into(),
                input: "1/0".into(),
                reason: "zero denominator"
            }
        );
    }

    #[test]
    fn unknown_label() {
        let bad = DUAL.replace(r#""unit": {"1": "1"}"#, r#""unit": {"u": "1"}"#);
        assert!(matches!(
            parse_spec(&bad),
            Err(SpecError::UnknownLabel { .. })
        ));
    }

    #[test]
    fn non_associative_table_rejected() {
        let bad = r#"{"kind": "algebra", "basis": ["1", "a", "b"], "unit": {"1": "1"},
            "products": [
                {"left": "1", "right": "1", "value": {"1": "1"}},
                {"left": "1", "right": "a", "value": {"a": "1"}},
                {"left": "a", "right": "1", "value": {"a": "1"}},
                {"left": "1", "right": "b", "value": {"b": "1"}},
                {"left": "b", "right": "1", "value": {"b": "1"}},
                {"left": "a", "right": "a", "value": {"b": "1"}},
                {"left": "b", "right": "a", "value": {"1": "1"}}
            ]}"#;
        let err = parse_spec(bad).unwrap_err();
        assert!(err.to_string().contains("not associative"), "{err}");
    }

    #[test]
    fn malformed_json_has_position() {
        assert!(matches!(
            parse_spec("{\"kind\": \"algebra\",,}"),
            Err(SpecError::Json { line: 1, .. })
        ));
    }

    #[test]
    fn chain_complex_checks_square_zero() {
        let bad =
            r#"{"kind": "chain_complex", "dims": [1, 1, 1], "differentials": [[["1"]], [["1"]]]}"#;
        assert!(matches!(parse_spec(bad), Err(SpecError::Invalid { .. })));
        let good =
            r#"{"kind": "chain_complex", "dims": [1, 1, 1], "differentials": [[["1"]], [["0"]]]}"#;
        assert!(matches!(parse_spec(good), Ok(Spec::Chain(_))));
    }
}
