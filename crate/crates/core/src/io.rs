//! JSON input formats for algebras, morphisms, bimodules and relations.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgMap, Algebra};
use crate::bimodule::Bimodule;
use crate::error::{invalid, Error, Result};
use crate::field::{Field, FieldSpec};
use crate::fodc::{FirstOrderCalculus, UniversalCalculus};
use crate::hopf::Bimonoid;
use crate::linalg::Mat;

/// A scalar as written in a file: a canonical string such as `"-3/4"`, or a
/// bare integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn parse<F: Field>(&self, f: &F) -> Result<F::Elem> {
        match self {
            Scalar::Int(v) => Ok(f.from_i64(*v)),
            Scalar::Text(s) => f.parse(s),
        }
    }
}

fn parse_vec<F: Field>(f: &F, v: &[Scalar]) -> Result<Vec<F::Elem>> {
    v.iter().map(|s| s.parse(f)).collect()
}

/// Row-major matrix with every row of length `cols`.
pub fn parse_rows<F: Field>(f: &F, rows: &[Vec<Scalar>], cols: usize, what: &str) -> Result<Mat<F>> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            if row.len() != cols {
                return invalid(format!("{what}: row {r} has {} entries, expected {cols}", row.len()));
            }
            parse_vec(f, row)
        })
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(f, cols, parsed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    /// `mult[i][j]` holds the coordinates of `e_i · e_j`.
    pub mult: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
    /// `comult[i][j][k]` is the coefficient of `e_j ⊗ e_k` in `Δ(e_i)`.
    #[serde(default)]
    pub comult: Option<Vec<Vec<Vec<Scalar>>>>,
    #[serde(default)]
    pub counit: Option<Vec<Scalar>>,
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read(path)?)
    }

    fn labels(&self) -> Result<Vec<String>> {
        match &self.basis {
            Some(b) if b.len() != self.dim => invalid(format!("basis has {} labels, expected {}", b.len(), self.dim)),
            Some(b) => Ok(b.clone()),
            None => Ok((0..self.dim).map(|i| format!("e{i}")).collect()),
        }
    }

    fn require_field<F: Field>(&self, f: &F) -> Result<()> {
        if f.spec() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), f.spec().to_string()));
        }
        Ok(())
    }

    /// Parses the structure without checking the axioms.
    pub fn algebra_unchecked<F: Field>(&self, f: &F) -> Result<Algebra<F>> {
        self.require_field(f)?;
        let labels = self.labels()?;
        if self.mult.len() != self.dim {
            return invalid(format!("mult has {} rows, expected {}", self.mult.len(), self.dim));
        }
        let consts = self
            .mult
            .iter()
            .map(|row| row.iter().map(|v| parse_vec(f, v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mult = Algebra::mult_from_constants(f, &consts)?;
        Algebra::new_unchecked(f, labels, mult, parse_vec(f, &self.unit)?)
    }

    pub fn algebra<F: Field>(&self, f: &F) -> Result<Algebra<F>> {
        let a = self.algebra_unchecked(f)?;
        let report = a.check();
        if !report.is_ok() {
            return invalid(format!("not a unital associative algebra: {report}"));
        }
        Ok(a)
    }

    pub fn has_coalgebra(&self) -> bool {
        self.comult.is_some() && self.counit.is_some()
    }

    /// Parses `Δ` and `ε` on top of the algebra, without checking axioms.
    pub fn bimonoid_unchecked<F: Field>(&self, f: &F) -> Result<Bimonoid<F>> {
        let alg = self.algebra_unchecked(f)?;
        let (Some(comult), Some(counit)) = (&self.comult, &self.counit) else {
            return Err(Error::Precondition("algebra file has no \"comult\" and \"counit\"".into()));
        };
        let n = self.dim;
        if comult.len() != n {
            return invalid(format!("comult has {} entries, expected {n}", comult.len()));
        }
        let mut delta = Mat::zeros(f, n * n, n);
        for (i, m) in comult.iter().enumerate() {
            let m = parse_rows(f, m, n, &format!("comult[{i}]"))?;
            if m.rows() != n {
                return invalid(format!("comult[{i}] has {} rows, expected {n}", m.rows()));
            }
            for j in 0..n {
                for k in 0..n {
                    delta.set(j * n + k, i, m.get(j, k).clone());
                }
            }
        }
        if counit.len() != n {
            return invalid(format!("counit has {} entries, expected {n}", counit.len()));
        }
        let eps = Mat::from_rows(f, n, vec![parse_vec(f, counit)?])?;
        Bimonoid::new_unchecked(alg, delta, eps)
    }
}

/// Either a path to an algebra file, relative to the referring file, or an
/// inline algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(Box<AlgebraFile>),
}

impl AlgebraRef {
    pub fn resolve(&self, base: &Path) -> Result<AlgebraFile> {
        match self {
            AlgebraRef::Inline(a) => Ok((**a).clone()),
            AlgebraRef::Path(p) => AlgebraFile::load(&base.join(p)),
        }
    }
}

/// `matrix[k][i]` is the coefficient of target basis vector `k` in `f(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub matrix: Vec<Vec<Scalar>>,
}

/// A loaded morphism with both algebra files resolved.
#[derive(Clone, Debug)]
pub struct ResolvedMorphism {
    pub source: AlgebraFile,
    pub target: AlgebraFile,
    pub matrix: Vec<Vec<Scalar>>,
}

impl MorphismFile {
    pub fn load(path: &Path) -> Result<ResolvedMorphism> {
        let m: Self = serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
        let base = parent(path);
        Ok(ResolvedMorphism {
            source: m.source.resolve(&base)?,
            target: m.target.resolve(&base)?,
            matrix: m.matrix,
        })
    }
}

impl ResolvedMorphism {
    pub fn field(&self) -> FieldSpec {
        self.source.field
    }

    pub fn map<F: Field>(&self, f: &F) -> Result<AlgMap<F>> {
        let s = self.source.algebra(f)?;
        let t = self.target.algebra(f)?;
        let m = parse_rows(f, &self.matrix, s.dim(), "matrix")?;
        if m.rows() != t.dim() {
            return invalid(format!("matrix has {} rows, expected {}", m.rows(), t.dim()));
        }
        AlgMap::new(s, t, m)
    }
}

/// `left` is the `m × (n·m)` matrix of `A ⊗ M → M`, `right` the
/// `m × (m·k)` matrix of `M ⊗ B → M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleFile {
    pub left_alg: AlgebraRef,
    pub right_alg: AlgebraRef,
    pub dim: usize,
    pub left: Vec<Vec<Scalar>>,
    pub right: Vec<Vec<Scalar>>,
}

impl BimoduleFile {
    pub fn bimodule<F: Field>(&self, f: &F, base: &Path) -> Result<Bimodule<F>> {
        let a = self.left_alg.resolve(base)?.algebra(f)?;
        let b = self.right_alg.resolve(base)?.algebra(f)?;
        let m = self.dim;
        let left = parse_rows(f, &self.left, a.dim() * m, "left")?;
        let right = parse_rows(f, &self.right, m * b.dim(), "right")?;
        Bimodule::new(a, b, m, left, right)
    }
}

/// Generators of a sub-bimodule, one coordinate vector each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsFile {
    pub generators: Vec<Vec<Scalar>>,
}

impl RelationsFile {
    pub fn load(path: &Path) -> Result<Self> {
        serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The generators as columns of a `dim`-row matrix.
    pub fn matrix<F: Field>(&self, f: &F, dim: usize) -> Result<Mat<F>> {
        let cols = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if g.len() != dim {
                    return invalid(format!("generator {i} has {} coordinates, expected {dim}", g.len()));
                }
                parse_vec(f, g)
            })
            .collect::<Result<Vec<_>>>()?;
        Mat::from_columns(f, dim, &cols)
    }
}

/// A first order calculus given either as a quotient of the universal
/// calculus by the sub-bimodule generated by `relations`, or explicitly by
/// `omega` and `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalculusFile {
    pub algebra: AlgebraRef,
    #[serde(default)]
    pub relations: Option<Vec<Vec<Scalar>>>,
    #[serde(default)]
    pub omega: Option<BimoduleFile>,
    #[serde(default)]
    pub d: Option<Vec<Vec<Scalar>>>,
}

/// A loaded calculus file with paths resolved against its directory.
#[derive(Clone, Debug)]
pub struct ResolvedCalculus {
    pub algebra: AlgebraFile,
    file: CalculusFile,
    base: PathBuf,
}

impl CalculusFile {
    pub fn load(path: &Path) -> Result<ResolvedCalculus> {
        let file: Self = serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
        let base = parent(path);
        Ok(ResolvedCalculus { algebra: file.algebra.resolve(&base)?, file, base })
    }
}

impl ResolvedCalculus {
    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    pub fn calculus<F: Field>(&self, f: &F) -> Result<FirstOrderCalculus<F>> {
        let a = self.algebra.algebra(f)?;
        match (&self.file.omega, &self.file.d, &self.file.relations) {
            (Some(om), Some(d), None) => {
                let omega = om.bimodule(f, &self.base)?;
                let d = parse_rows(f, d, a.dim(), "d")?;
                FirstOrderCalculus::new(a, omega, d)
            }
            (None, None, rel) => {
                let u = UniversalCalculus::new(&a)?;
                let Some(rel) = rel else { return Ok(u.calc) };
                let gens = RelationsFile { generators: rel.clone() }.matrix(f, u.dim())?;
                let n = u.calc.omega().generated(&gens)?.inclusion;
                Ok(u.calc.quotient(&n)?.calc)
            }
            _ => invalid("calculus file needs either \"relations\" or both \"omega\" and \"d\""),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parent(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    const DUAL: &str = r#"{ "field": "Q", "dim": 2, "basis": ["1","x"],
        "mult": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]], "unit": ["1","0"] }"#;

    #[test]
    fn parses_dual_numbers() {
        let file = AlgebraFile::from_json(DUAL).unwrap();
        assert_eq!(file.field, FieldSpec::Rationals);
        let a = file.algebra(&Rationals).unwrap();
        assert_eq!(a, Algebra::truncated_poly(&Rationals, 2).unwrap());
        assert!(matches!(file.algebra(&PrimeField::new(2).unwrap()), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn integers_and_fractions() {
        let text = r#"{ "field": {"Fp": 3}, "dim": 1, "mult": [[[1]]], "unit": ["4/1"] }"#;
        let file = AlgebraFile::from_json(text).unwrap();
        assert_eq!(file.field, FieldSpec::PrimeField(3));
        let a = file.algebra(&PrimeField::new(3).unwrap()).unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn rejects_bad_shapes() {
        let text = r#"{ "field": "Q", "dim": 2, "mult": [[["1","0"]]], "unit": ["1","0"] }"#;
        let file = AlgebraFile::from_json(text).unwrap();
        assert!(matches!(file.algebra(&Rationals), Err(Error::InvalidInput(_))));
        assert!(matches!(AlgebraFile::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn relations_become_columns() {
        let r = RelationsFile { generators: vec![vec![Scalar::Int(0), Scalar::Text("1/2".into())]] };
        let m = r.matrix(&Rationals, 2).unwrap();
        assert_eq!(m.shape(), (2, 1));
        assert_eq!(Rationals.format(m.get(1, 0)), "1/2");
        assert!(r.matrix(&Rationals, 3).is_err());
    }
}
