//! Finite-dimensional unital associative algebras given by structure constants.

use crate::bimodule::Bimodule;
use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::linalg::Mat;
use crate::report::{decode_index, Report};

/// A unital associative algebra with basis `e_0, …, e_{n-1}`.
///
/// The multiplication is stored as the `n × n²` matrix of `m: A ⊗ A → A`;
/// column `i·n + j` holds the coordinates of `e_i · e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra<F: Field> {
    field: F,
    labels: Vec<String>,
    mult: Mat<F>,
    unit: Vec<F::Elem>,
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra and verifies associativity and the unit laws.
    pub fn new(field: &F, labels: Vec<String>, mult: Mat<F>, unit: Vec<F::Elem>) -> Result<Self> {
        let a = Self::new_unchecked(field, labels, mult, unit)?;
        let report = a.check();
        if !report.is_ok() {
            return Err(Error::InvalidInput(format!("not a unital associative algebra: {report}")));
        }
        Ok(a)
    }

    /// Checks shapes only; use [`Algebra::check`] for a diagnostic report.
    pub fn new_unchecked(field: &F, labels: Vec<String>, mult: Mat<F>, unit: Vec<F::Elem>) -> Result<Self> {
        let n = labels.len();
        if mult.shape() != (n, n * n) {
            return invalid(format!(
                "multiplication has shape {:?}, expected ({n}, {})",
                mult.shape(),
                n * n
            ));
        }
        if unit.len() != n {
            return invalid(format!("unit has {} coordinates, expected {n}", unit.len()));
        }
        if mult.field() != field {
            return Err(Error::FieldMismatch(field.spec().to_string(), mult.field().spec().to_string()));
        }
        Ok(Self { field: field.clone(), labels, mult, unit })
    }

    /// `c[i][j]` holds the coordinates of `e_i · e_j`.
    pub fn from_structure_constants(
        field: &F,
        labels: Vec<String>,
        c: &[Vec<Vec<F::Elem>>],
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        Self::new(field, labels, Self::mult_from_constants(field, c)?, unit)
    }

    pub(crate) fn mult_from_constants(field: &F, c: &[Vec<Vec<F::Elem>>]) -> Result<Mat<F>> {
        let n = c.len();
        let mut mult = Mat::zeros(field, n, n * n);
        for (i, row) in c.iter().enumerate() {
            if row.len() != n {
                return invalid(format!("mult[{i}] has {} entries, expected {n}", row.len()));
            }
            for (j, prod) in row.iter().enumerate() {
                if prod.len() != n {
                    return invalid(format!("mult[{i}][{j}] has {} coordinates, expected {n}", prod.len()));
                }
                for (k, e) in prod.iter().enumerate() {
                    mult.set(k, i * n + j, e.clone());
                }
            }
        }
        Ok(mult)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: &F) -> Self {
        Self {
            field: field.clone(),
            labels: vec!["1".into()],
            mult: Mat::identity(field, 1),
            unit: vec![field.one()],
        }
    }

    /// `k[x]/(x^n)` with basis `1, x, …, x^{n-1}`.
    pub fn truncated_poly(field: &F, n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("truncated polynomial algebra needs n ≥ 1");
        }
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let mut mult = Mat::zeros(field, n, n * n);
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    mult.set(i + j, i * n + j, field.one());
                }
            }
        }
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Self::new(field, labels, mult, unit)
    }

    /// The group algebra of a finite group given by its Cayley table
    /// (`table[g][h]` = index of `g·h`).
    pub fn group_algebra(field: &F, table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        check_group_table(table)?;
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .expect("checked above");
        let mut mult = Mat::zeros(field, n, n * n);
        for g in 0..n {
            for h in 0..n {
                mult.set(table[g][h], g * n + h, field.one());
            }
        }
        let mut unit = vec![field.zero(); n];
        unit[identity] = field.one();
        let labels = (0..n).map(|g| if g == identity { "1".into() } else { format!("g{g}") }).collect();
        Self::new(field, labels, mult, unit)
    }

    /// The cyclic group algebra `k[ℤ/n]`, basis `1, g, …, g^{n-1}`.
    pub fn cyclic_group(field: &F, n: usize) -> Result<Self> {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mut a = Self::group_algebra(field, &table)?;
        a.labels = (0..n)
            .map(|i| match i {
                0 => "1".into(),
                1 => "g".into(),
                _ => format!("g^{i}"),
            })
            .collect();
        Ok(a)
    }

    /// `k[S₃]` with permutations of `{0,1,2}` in lexicographic order.
    pub fn symmetric_group_s3(field: &F) -> Result<Self> {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        // (σ·τ)(x) = σ(τ(x))
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        let mut a = Self::group_algebra(field, &table)?;
        a.labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        Ok(a)
    }

    /// The full matrix algebra `M_k` with matrix units `E_ab` at index `a·k + b`.
    pub fn matrix_algebra(field: &F, k: usize) -> Result<Self> {
        if k == 0 {
            return invalid("matrix algebra needs k ≥ 1");
        }
        let n = k * k;
        let mut mult = Mat::zeros(field, n, n * n);
        for a in 0..k {
            for b in 0..k {
                for d in 0..k {
                    // E_ab E_bd = E_ad
                    mult.set(a * k + d, (a * k + b) * n + b * k + d, field.one());
                }
            }
        }
        let mut unit = vec![field.zero(); n];
        for a in 0..k {
            unit[a * k + a] = field.one();
        }
        let labels = (0..k)
            .flat_map(|a| (0..k).map(move |b| format!("E{}{}", a + 1, b + 1)))
            .collect();
        Self::new(field, labels, mult, unit)
    }

    /// The square-zero extension `A ⊕ M` with `(a, x)(a', x') = (aa', a·x' + x·a')`.
    pub fn square_zero(bimodule: &Bimodule<F>) -> Result<Self> {
        let a = bimodule.left_alg();
        if a != bimodule.right_alg() {
            return invalid("square-zero extension needs an A-A bimodule");
        }
        let f = a.field();
        let n = a.dim();
        let m = bimodule.dim();
        let total = n + m;
        let mut mult = Mat::zeros(f, total, total * total);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mult.set(k, i * total + j, a.mult.get(k, i * n + j).clone());
                }
            }
            for u in 0..m {
                for v in 0..m {
                    mult.set(n + v, i * total + n + u, bimodule.left().get(v, i * m + u).clone());
                    mult.set(n + v, (n + u) * total + i, bimodule.right().get(v, u * n + i).clone());
                }
            }
        }
        let mut unit = a.unit.clone();
        unit.extend(std::iter::repeat_n(f.zero(), m));
        let mut labels = a.labels.clone();
        labels.extend((0..m).map(|u| format!("w{u}")));
        Self::new_unchecked(f, labels, mult, unit)
    }

    /// `A ⊗ B` with multiplication `(m_A ⊗ m_B)∘(1 ⊗ swap ⊗ 1)`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let f = &self.field;
        let (n, k) = (self.dim(), other.dim());
        let middle = Mat::identity(f, n).kron(&Mat::swap(f, k, n)).kron(&Mat::identity(f, k));
        let mult = self.mult.kron(&other.mult).mul(&middle);
        let unit = Mat::column_vector(f, self.unit.clone())
            .kron(&Mat::column_vector(f, other.unit.clone()))
            .column(0);
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        Self::new_unchecked(f, labels, mult, unit)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The `n × n²` matrix of `m`.
    pub fn mult(&self) -> &Mat<F> {
        &self.mult
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    /// The `n × 1` matrix of `i: k → A`.
    pub fn unit_map(&self) -> Mat<F> {
        Mat::column_vector(&self.field, self.unit.clone())
    }

    pub fn identity_map(&self) -> Mat<F> {
        Mat::identity(&self.field, self.dim())
    }

    pub fn product(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let ab = Mat::column_vector(f, a.to_vec()).kron(&Mat::column_vector(f, b.to_vec()));
        self.mult.apply(&ab.column(0))
    }

    /// Structure constant tensor `c[i][j][k]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<F::Elem>>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.mult.column(i * n + j)).collect())
            .collect()
    }

    /// Associativity and both unit laws, with witnesses.
    pub fn check(&self) -> Report {
        let n = self.dim();
        let id = self.identity_map();
        let mut report = Report::new();
        let lhs = self.mult.mul(&self.mult.kron(&id));
        let rhs = self.mult.mul(&id.kron(&self.mult));
        report.compare("associativity", &lhs, &rhs, |c| decode_index(c, &[n, n, n]));
        let unit = self.unit_map();
        let left_unit = self.mult.mul(&unit.kron(&id));
        report.compare("left unit", &left_unit, &id, |c| vec![c]);
        let right_unit = self.mult.mul(&id.kron(&unit));
        report.compare("right unit", &right_unit, &id, |c| vec![c]);
        report
    }

    /// A pair `(i, j)` with `e_i e_j ≠ e_j e_i`, if any.
    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.mult.column(i * n + j) != self.mult.column(j * n + i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        self.mult.mul(&Mat::swap(&self.field, n, n)) == self.mult
    }

    /// The opposite algebra, `c^op[i][j] = c[j][i]`.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        Self {
            field: self.field.clone(),
            labels: self.labels.clone(),
            mult: self.mult.mul(&Mat::swap(&self.field, n, n)),
            unit: self.unit.clone(),
        }
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn left_mult(&self, i: usize) -> Mat<F> {
        let n = self.dim();
        self.mult.mul(&Mat::unit_vector(&self.field, n, i).kron(&self.identity_map()))
    }

    /// Matrix of right multiplication by `e_j`.
    pub fn right_mult(&self, j: usize) -> Mat<F> {
        let n = self.dim();
        self.mult.mul(&self.identity_map().kron(&Mat::unit_vector(&self.field, n, j)))
    }
}

fn check_group_table(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    if n == 0 {
        return invalid("empty Cayley table");
    }
    for (g, row) in table.iter().enumerate() {
        if row.len() != n || row.iter().any(|&h| h >= n) {
            return invalid(format!("Cayley table row {g} is malformed"));
        }
        let mut seen = vec![false; n];
        for &h in row {
            if std::mem::replace(&mut seen[h], true) {
                return invalid(format!("Cayley table row {g} repeats an element"));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return invalid(format!("Cayley table is not associative at ({a}, {b}, {c})"));
                }
            }
        }
    }
    if !(0..n).any(|e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) {
        return invalid("Cayley table has no identity element");
    }
    Ok(())
}

/// A linear map between algebras, as a `target.dim × source.dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMap<F: Field> {
    source: Algebra<F>,
    target: Algebra<F>,
    matrix: Mat<F>,
}

impl<F: Field> AlgMap<F> {
    /// Builds the map and verifies multiplicativity and unit preservation.
    pub fn new(source: Algebra<F>, target: Algebra<F>, matrix: Mat<F>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, matrix)?;
        let report = f.check();
        if !report.is_ok() {
            return Err(Error::InvalidInput(format!("not an algebra map: {report}")));
        }
        Ok(f)
    }

    pub fn new_unchecked(source: Algebra<F>, target: Algebra<F>, matrix: Mat<F>) -> Result<Self> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return invalid(format!(
                "map matrix has shape {:?}, expected ({}, {})",
                matrix.shape(),
                target.dim(),
                source.dim()
            ));
        }
        if source.field() != target.field() || matrix.field() != source.field() {
            return Err(Error::FieldMismatch(
                source.field().spec().to_string(),
                target.field().spec().to_string(),
            ));
        }
        Ok(Self { source, target, matrix })
    }

    pub fn identity(a: &Algebra<F>) -> Self {
        Self { source: a.clone(), target: a.clone(), matrix: a.identity_map() }
    }

    /// The unit map from the ground field.
    pub fn from_ground(a: &Algebra<F>) -> Self {
        Self { source: Algebra::ground(a.field()), target: a.clone(), matrix: a.unit_map() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return invalid("composing algebra maps with mismatched (co)domains");
        }
        Ok(Self {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn source(&self) -> &Algebra<F> {
        &self.source
    }

    pub fn target(&self) -> &Algebra<F> {
        &self.target
    }

    pub fn matrix(&self) -> &Mat<F> {
        &self.matrix
    }

    pub fn check(&self) -> Report {
        let n = self.source.dim();
        let mut report = Report::new();
        let lhs = self.target.mult().mul(&self.matrix.kron(&self.matrix));
        let rhs = self.matrix.mul(self.source.mult());
        report.compare("multiplicativity", &lhs, &rhs, |c| decode_index(c, &[n, n]));
        let unit = self.matrix.mul(&self.source.unit_map());
        report.compare("unit preservation", &unit, &self.target.unit_map(), |_| vec![]);
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn dual_numbers_are_valid_and_commutative() {
        let a = Algebra::truncated_poly(&q(), 2).unwrap();
        assert!(a.check().is_ok());
        assert!(a.is_commutative());
    }

    #[test]
    fn wrong_unit_is_reported() {
        let f = q();
        // e1·e1 = e0, unit declared as e1
        let mult = Mat::from_i64(&f, 2, 4, &[1, 0, 0, 1, 0, 1, 1, 0]);
        let a = Algebra::new_unchecked(&f, vec!["a".into(), "b".into()], mult, vec![f.zero(), f.one()])
            .unwrap();
        let r = a.check();
        assert!(r.has("left unit") && r.has("right unit"));
        assert!(!r.has("associativity"));
    }

    #[test]
    fn group_algebras() {
        let z2 = Algebra::cyclic_group(&q(), 2).unwrap();
        assert!(z2.check().is_ok());
        assert!(Algebra::cyclic_group(&q(), 3).unwrap().is_commutative());
        let s3 = Algebra::symmetric_group_s3(&q()).unwrap();
        assert!(!s3.is_commutative());
        assert!(Algebra::group_algebra(&q(), &[vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn matrix_algebras() {
        let m2 = Algebra::matrix_algebra(&q(), 2).unwrap();
        assert!(!m2.is_commutative());
        let (i, j) = m2.commutativity_witness().unwrap();
        let (ei, ej) = (Mat::unit_vector(&q(), 4, i).column(0), Mat::unit_vector(&q(), 4, j).column(0));
        assert_ne!(m2.product(&ei, &ej), m2.product(&ej, &ei));
        // E12·E21 = E11 but E21·E12 = E22
        let (e12, e21) = (Mat::unit_vector(&q(), 4, 1).column(0), Mat::unit_vector(&q(), 4, 2).column(0));
        assert_eq!(m2.product(&e12, &e21), Mat::unit_vector(&q(), 4, 0).column(0));
        assert_eq!(m2.product(&e21, &e12), Mat::unit_vector(&q(), 4, 3).column(0));
        let m2p = Algebra::matrix_algebra(&PrimeField::new(5).unwrap(), 2).unwrap();
        assert_eq!(m2p.dim(), 4);
        assert!(!m2p.is_commutative());
        let op = m2.opposite();
        assert_ne!(op, m2);
        assert!(op.check().is_ok());
        assert_eq!(op.opposite(), m2);
    }

    #[test]
    fn trivial_truncation_is_ground_field() {
        let a = Algebra::truncated_poly(&q(), 1).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.mult(), Algebra::ground(&q()).mult());
    }

    #[test]
    fn y_to_x_squared_is_an_algebra_map() {
        let f = q();
        let src = Algebra::truncated_poly(&f, 2).unwrap();
        let tgt = Algebra::truncated_poly(&f, 4).unwrap();
        let m = Mat::from_i64(&f, 4, 2, &[1, 0, 0, 0, 0, 1, 0, 0]);
        assert!(AlgMap::new(src.clone(), tgt.clone(), m).is_ok());
        // y ↦ x is not: x² ≠ 0
        let bad = Mat::from_i64(&f, 4, 2, &[1, 0, 0, 1, 0, 0, 0, 0]);
        let r = AlgMap::new_unchecked(src.clone(), tgt, bad).unwrap().check();
        assert!(r.has("multiplicativity"));
        assert!(AlgMap::identity(&src).check().is_ok());
    }

    #[test]
    fn commutative_iff_self_opposite() {
        for a in [
            Algebra::truncated_poly(&q(), 3).unwrap(),
            Algebra::matrix_algebra(&q(), 2).unwrap(),
            Algebra::symmetric_group_s3(&q()).unwrap(),
            Algebra::cyclic_group(&q(), 3).unwrap(),
        ] {
            assert_eq!(a.is_commutative(), a.opposite() == a);
        }
    }
}
