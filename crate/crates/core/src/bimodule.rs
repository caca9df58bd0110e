//! Bimodules over pairs of algebras, their maps, and the tensor product over an algebra.
//!
//! Left modules are `(A, k)` bimodules and right modules are `(k, A)`
//! bimodules, where `k` is the ground field seen as a one-dimensional
//! algebra, so a single type serves all three notions.

use crate::algebra::{AlgMap, Algebra};
use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::linalg::{operator_matrix, unflatten, Cokernel, Mat};
use crate::report::{decode_index, Report};

/// An `A`-`B` bimodule with basis `x_0, …, x_{m-1}`.
///
/// `left` is the `m × (dim A · m)` matrix of `A ⊗ M → M` and `right` the
/// `m × (m · dim B)` matrix of `M ⊗ B → M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule<F: Field> {
    left_alg: Algebra<F>,
    right_alg: Algebra<F>,
    dim: usize,
    left: Mat<F>,
    right: Mat<F>,
}

/// A sub-bimodule together with its canonical inclusion.
#[derive(Clone, Debug)]
pub struct SubBimodule<F: Field> {
    pub bimodule: Bimodule<F>,
    /// Basis columns in reduced column echelon form.
    pub inclusion: Mat<F>,
}

/// A quotient bimodule together with its canonical projection and section.
#[derive(Clone, Debug)]
pub struct QuotientBimodule<F: Field> {
    pub bimodule: Bimodule<F>,
    pub cokernel: Cokernel<F>,
}

impl<F: Field> QuotientBimodule<F> {
    pub fn projection(&self) -> &Mat<F> {
        &self.cokernel.projection
    }
}

impl<F: Field> Bimodule<F> {
    pub fn new(left_alg: Algebra<F>, right_alg: Algebra<F>, dim: usize, left: Mat<F>, right: Mat<F>) -> Result<Self> {
        let m = Self::new_unchecked(left_alg, right_alg, dim, left, right)?;
        let report = m.check();
        if !report.is_ok() {
            return Err(Error::InvalidInput(format!("not a bimodule: {report}")));
        }
        Ok(m)
    }

    pub fn new_unchecked(
        left_alg: Algebra<F>,
        right_alg: Algebra<F>,
        dim: usize,
        left: Mat<F>,
        right: Mat<F>,
    ) -> Result<Self> {
        if left.shape() != (dim, left_alg.dim() * dim) {
            return invalid(format!("left action has shape {:?}", left.shape()));
        }
        if right.shape() != (dim, dim * right_alg.dim()) {
            return invalid(format!("right action has shape {:?}", right.shape()));
        }
        if left_alg.field() != right_alg.field() {
            return Err(Error::FieldMismatch(
                left_alg.field().spec().to_string(),
                right_alg.field().spec().to_string(),
            ));
        }
        Ok(Self { left_alg, right_alg, dim, left, right })
    }

    /// `A` acting on itself from both sides.
    pub fn regular(a: &Algebra<F>) -> Self {
        Self {
            left_alg: a.clone(),
            right_alg: a.clone(),
            dim: a.dim(),
            left: a.mult().clone(),
            right: a.mult().clone(),
        }
    }

    pub fn zero(a: &Algebra<F>, b: &Algebra<F>) -> Self {
        let f = a.field();
        Self {
            left_alg: a.clone(),
            right_alg: b.clone(),
            dim: 0,
            left: Mat::zeros(f, 0, 0),
            right: Mat::zeros(f, 0, 0),
        }
    }

    /// The free bimodule `A ⊗ k^d ⊗ B` with outer actions.
    pub fn free(a: &Algebra<F>, d: usize, b: &Algebra<F>) -> Self {
        let f = a.field();
        let (n, k) = (a.dim(), b.dim());
        Self {
            left_alg: a.clone(),
            right_alg: b.clone(),
            dim: n * d * k,
            left: a.mult().kron(&Mat::identity(f, d * k)),
            right: Mat::identity(f, n * d).kron(b.mult()),
        }
    }

    /// A left `A`-module, encoded as an `(A, k)` bimodule.
    pub fn left_module(a: &Algebra<F>, dim: usize, left: Mat<F>) -> Result<Self> {
        let f = a.field();
        Self::new(a.clone(), Algebra::ground(f), dim, left, Mat::identity(f, dim))
    }

    /// `A ⊗ A` with actions `m ⊗ 1` and `1 ⊗ m`.
    pub fn outer_tensor_square(a: &Algebra<F>) -> Self {
        Self::free(a, 1, a)
    }

    pub fn field(&self) -> &F {
        self.left_alg.field()
    }

    pub fn left_alg(&self) -> &Algebra<F> {
        &self.left_alg
    }

    pub fn right_alg(&self) -> &Algebra<F> {
        &self.right_alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self) -> &Mat<F> {
        &self.left
    }

    pub fn right(&self) -> &Mat<F> {
        &self.right
    }

    pub fn identity_map(&self) -> Mat<F> {
        Mat::identity(self.field(), self.dim)
    }

    /// Matrix of `x ↦ e_i · x`.
    pub fn left_action(&self, i: usize) -> Mat<F> {
        let f = self.field();
        self.left.mul(&Mat::unit_vector(f, self.left_alg.dim(), i).kron(&self.identity_map()))
    }

    /// Matrix of `x ↦ x · e_j`.
    pub fn right_action(&self, j: usize) -> Mat<F> {
        let f = self.field();
        self.right.mul(&self.identity_map().kron(&Mat::unit_vector(f, self.right_alg.dim(), j)))
    }

    /// Left action precomposed with a map into `M`: `a ⊗ v ↦ a · g(v)`.
    pub fn act_left_on(&self, g: &Mat<F>) -> Mat<F> {
        self.left.mul(&self.left_alg.identity_map().kron(g))
    }

    /// Right action precomposed with a map into `M`: `v ⊗ b ↦ g(v) · b`.
    pub fn act_right_on(&self, g: &Mat<F>) -> Mat<F> {
        self.right.mul(&g.kron(&self.right_alg.identity_map()))
    }

    pub fn check(&self) -> Report {
        let (n, m, k) = (self.left_alg.dim(), self.dim, self.right_alg.dim());
        let id_m = self.identity_map();
        let id_a = self.left_alg.identity_map();
        let id_b = self.right_alg.identity_map();
        let mut report = Report::new();

        let lhs = self.left.mul(&self.left_alg.mult().kron(&id_m));
        let rhs = self.left.mul(&id_a.kron(&self.left));
        report.compare("left associativity", &lhs, &rhs, |c| decode_index(c, &[n, n, m]));
        let unit = self.left.mul(&self.left_alg.unit_map().kron(&id_m));
        report.compare("left unit", &unit, &id_m, |c| vec![c]);

        let lhs = self.right.mul(&self.right.kron(&id_b));
        let rhs = self.right.mul(&id_m.kron(self.right_alg.mult()));
        report.compare("right associativity", &lhs, &rhs, |c| decode_index(c, &[m, k, k]));
        let unit = self.right.mul(&id_m.kron(&self.right_alg.unit_map()));
        report.compare("right unit", &unit, &id_m, |c| vec![c]);

        let lhs = self.right.mul(&self.left.kron(&id_b));
        let rhs = self.left.mul(&id_a.kron(&self.right));
        report.compare("middle associativity", &lhs, &rhs, |c| decode_index(c, &[n, m, k]));
        report
    }

    /// Whether the column span of `basis` is closed under both actions;
    /// otherwise the first offending `(side, algebra basis index, generator)`.
    fn closure_violation(&self, basis: &Mat<F>) -> Option<(&'static str, usize, usize)> {
        let k = self.right_alg.dim();
        let rank = basis.rank();
        let check = |images: Mat<F>, side: &'static str, swap: bool, factor: usize| {
            for c in 0..images.cols() {
                let col = images.select_cols(&[c]);
                if Mat::hstack(self.field(), self.dim, &[basis, &col]).rank() > rank {
                    let (x, y) = (c / factor, c % factor);
                    return Some(if swap { (side, y, x) } else { (side, x, y) });
                }
            }
            None
        };
        let left_imgs = self.act_left_on(basis);
        if !basis.spans(&left_imgs) {
            return check(left_imgs, "left", false, basis.cols());
        }
        let right_imgs = self.act_right_on(basis);
        if !basis.spans(&right_imgs) {
            return check(right_imgs, "right", true, k);
        }
        None
    }

    /// The sub-bimodule spanned by the columns of `basis`, which must be
    /// closed under both actions.
    pub fn sub_bimodule(&self, basis: &Mat<F>) -> Result<SubBimodule<F>> {
        if basis.rows() != self.dim {
            return invalid(format!("generators live in dimension {}, bimodule has {}", basis.rows(), self.dim));
        }
        let basis = basis.column_echelon();
        if let Some((side, i, g)) = self.closure_violation(&basis) {
            return invalid(format!(
                "subspace not closed under the {side} action: basis element {i} moves generator {g} outside"
            ));
        }
        Ok(self.sub_bimodule_unchecked(basis))
    }

    fn sub_bimodule_unchecked(&self, basis: Mat<F>) -> SubBimodule<F> {
        let inv = basis.left_inverse().expect("echelon basis has full column rank");
        let left = inv.mul(&self.act_left_on(&basis));
        let right = inv.mul(&self.act_right_on(&basis));
        let bimodule = Self {
            left_alg: self.left_alg.clone(),
            right_alg: self.right_alg.clone(),
            dim: basis.cols(),
            left,
            right,
        };
        SubBimodule { bimodule, inclusion: basis }
    }

    /// `M / N` for the sub-bimodule `N` spanned by the columns of `basis`.
    pub fn quotient(&self, basis: &Mat<F>) -> Result<QuotientBimodule<F>> {
        if basis.rows() != self.dim {
            return invalid(format!("relations live in dimension {}, bimodule has {}", basis.rows(), self.dim));
        }
        let basis = basis.column_echelon();
        if let Some((side, i, g)) = self.closure_violation(&basis) {
            return invalid(format!(
                "relations not closed under the {side} action: basis element {i} moves generator {g} outside"
            ));
        }
        Ok(self.quotient_unchecked(&basis))
    }

    pub(crate) fn quotient_unchecked(&self, basis: &Mat<F>) -> QuotientBimodule<F> {
        let cokernel = Mat::complement_of_span(basis);
        let q = &cokernel.projection;
        let s = &cokernel.section;
        let left = q.mul(&self.act_left_on(s));
        let right = q.mul(&self.act_right_on(s));
        let bimodule = Self {
            left_alg: self.left_alg.clone(),
            right_alg: self.right_alg.clone(),
            dim: q.rows(),
            left,
            right,
        };
        QuotientBimodule { bimodule, cokernel }
    }

    /// The smallest sub-bimodule containing the columns of `gens`.
    ///
    /// Saturates by applying every left basis action, then every right one,
    /// until the dimension stops growing (at most `dim M` rounds).
    pub fn generated(&self, gens: &Mat<F>) -> Result<SubBimodule<F>> {
        if gens.rows() != self.dim {
            return invalid(format!("generators live in dimension {}, bimodule has {}", gens.rows(), self.dim));
        }
        let f = self.field();
        let mut basis = gens.column_echelon();
        loop {
            let before = basis.cols();
            let left = self.act_left_on(&basis);
            basis = Mat::hstack(f, self.dim, &[&basis, &left]).column_echelon();
            let right = self.act_right_on(&basis);
            basis = Mat::hstack(f, self.dim, &[&basis, &right]).column_echelon();
            if basis.cols() == before {
                break;
            }
        }
        Ok(self.sub_bimodule_unchecked(basis))
    }

    /// Restriction of scalars along `f: A → B` and `g: A' → B'`.
    pub fn restrict(&self, f: &AlgMap<F>, g: &AlgMap<F>) -> Result<Self> {
        if f.target() != &self.left_alg || g.target() != &self.right_alg {
            return invalid("restriction maps must land in the acting algebras");
        }
        let id = self.identity_map();
        Ok(Self {
            left_alg: f.source().clone(),
            right_alg: g.source().clone(),
            dim: self.dim,
            left: self.left.mul(&f.matrix().kron(&id)),
            right: self.right.mul(&id.kron(g.matrix())),
        })
    }

    /// `M ⊗_B N`, the coequalizer of `ν_M ⊗ 1` and `1 ⊗ μ_N` on `M ⊗ B ⊗ N`.
    pub fn tensor_over(&self, other: &Self) -> Result<QuotientBimodule<F>> {
        if self.right_alg != other.left_alg {
            return invalid("tensor product over mismatched algebras");
        }
        let id_m = self.identity_map();
        let id_n = other.identity_map();
        let relations = self.right.kron(&id_n).sub(&id_m.kron(&other.left));
        let cokernel = relations.cokernel();
        let q = &cokernel.projection;
        let s = &cokernel.section;
        let left = q.mul(&self.left.kron(&id_n)).mul(&self.left_alg.identity_map().kron(s));
        let right = q.mul(&id_m.kron(&other.right)).mul(&s.kron(&other.right_alg.identity_map()));
        let bimodule = Self {
            left_alg: self.left_alg.clone(),
            right_alg: other.right_alg.clone(),
            dim: q.rows(),
            left,
            right,
        };
        Ok(QuotientBimodule { bimodule, cokernel })
    }

    /// Extension of scalars `(B ⊗_A M) ⊗_{A'} B'` along `f: A → B`, `g: A' → B'`.
    pub fn extend(&self, f: &AlgMap<F>, g: &AlgMap<F>) -> Result<Extension<F>> {
        if f.source() != &self.left_alg || g.source() != &self.right_alg {
            return invalid("extension maps must start at the acting algebras");
        }
        let (b, b2) = (f.target(), g.target());
        // B as a B-A bimodule and B' as an A'-B' bimodule through f and g.
        let b_left = Self {
            left_alg: b.clone(),
            right_alg: f.source().clone(),
            dim: b.dim(),
            left: b.mult().clone(),
            right: b.mult().mul(&b.identity_map().kron(f.matrix())),
        };
        let b_right = Self {
            left_alg: g.source().clone(),
            right_alg: b2.clone(),
            dim: b2.dim(),
            left: b2.mult().mul(&g.matrix().kron(&b2.identity_map())),
            right: b2.mult().clone(),
        };
        let first = b_left.tensor_over(self)?;
        let second = first.bimodule.tensor_over(&b_right)?;
        let quotient = second
            .projection()
            .mul(&first.projection().kron(&b2.identity_map()));
        Ok(Extension { bimodule: second.bimodule, quotient })
    }

    /// Basis of `Hom(M, N)` in the category of bimodules; each element is a
    /// `dim N × dim M` matrix.
    pub fn hom_space(&self, other: &Self) -> Result<Vec<Mat<F>>> {
        if self.left_alg != other.left_alg || self.right_alg != other.right_alg {
            return invalid("hom space between bimodules over different algebras");
        }
        let op = bimodule_map_constraints(self, other);
        let field = self.field();
        let k = op.kernel_basis();
        Ok((0..k.cols())
            .map(|c| unflatten(field, other.dim, self.dim, &k.column(c)))
            .collect())
    }
}

/// The linear system `X ↦ (X l_M − l_N (1 ⊗ X), X r_M − r_N (X ⊗ 1))`,
/// whose kernel is `Hom(M, N)`.
pub(crate) fn bimodule_map_constraints<F: Field>(source: &Bimodule<F>, target: &Bimodule<F>) -> Mat<F> {
    let id_a = source.left_alg.identity_map();
    let id_b = source.right_alg.identity_map();
    operator_matrix(source.field(), target.dim, source.dim, |x| {
        vec![
            x.mul(&source.left).sub(&target.left.mul(&id_a.kron(x))),
            x.mul(&source.right).sub(&target.right.mul(&x.kron(&id_b))),
        ]
    })
}

/// The result of extending scalars, with the surjection from `B ⊗ M ⊗ B'`.
#[derive(Clone, Debug)]
pub struct Extension<F: Field> {
    pub bimodule: Bimodule<F>,
    pub quotient: Mat<F>,
}

/// A bimodule morphism `M → N` over the same pair of algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodMap<F: Field> {
    source: Bimodule<F>,
    target: Bimodule<F>,
    matrix: Mat<F>,
}

impl<F: Field> BimodMap<F> {
    pub fn new(source: Bimodule<F>, target: Bimodule<F>, matrix: Mat<F>) -> Result<Self> {
        let map = Self::new_unchecked(source, target, matrix)?;
        let report = map.check();
        if !report.is_ok() {
            return Err(Error::InvalidInput(format!("not a bimodule map: {report}")));
        }
        Ok(map)
    }

    pub fn new_unchecked(source: Bimodule<F>, target: Bimodule<F>, matrix: Mat<F>) -> Result<Self> {
        if source.left_alg != target.left_alg || source.right_alg != target.right_alg {
            return invalid("bimodule map between different algebra pairs");
        }
        if matrix.shape() != (target.dim, source.dim) {
            return invalid(format!("map has shape {:?}, expected ({}, {})", matrix.shape(), target.dim, source.dim));
        }
        Ok(Self { source, target, matrix })
    }

    pub fn identity(m: &Bimodule<F>) -> Self {
        Self { source: m.clone(), target: m.clone(), matrix: m.identity_map() }
    }

    pub fn source(&self) -> &Bimodule<F> {
        &self.source
    }

    pub fn target(&self) -> &Bimodule<F> {
        &self.target
    }

    pub fn matrix(&self) -> &Mat<F> {
        &self.matrix
    }

    pub fn check(&self) -> Report {
        let (n, m, k) = (self.source.left_alg.dim(), self.source.dim, self.source.right_alg.dim());
        let mut report = Report::new();
        let lhs = self.matrix.mul(&self.source.left);
        let rhs = self.target.act_left_on(&self.matrix);
        report.compare("left linearity", &lhs, &rhs, |c| decode_index(c, &[n, m]));
        let lhs = self.matrix.mul(&self.source.right);
        let rhs = self.target.act_right_on(&self.matrix);
        report.compare("right linearity", &lhs, &rhs, |c| decode_index(c, &[m, k]));
        report
    }

    pub fn kernel(&self) -> SubBimodule<F> {
        self.source.sub_bimodule_unchecked(self.matrix.kernel_basis())
    }

    pub fn cokernel(&self) -> QuotientBimodule<F> {
        self.target.quotient_unchecked(&self.matrix.image_basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn dual() -> Algebra<Rationals> {
        Algebra::truncated_poly(&Rationals, 2).unwrap()
    }

    fn omega_dual() -> SubBimodule<Rationals> {
        let a = dual();
        let m = BimodMap::new(Bimodule::outer_tensor_square(&a), Bimodule::regular(&a), a.mult().clone()).unwrap();
        m.kernel()
    }

    #[test]
    fn free_bimodules() {
        let a = dual();
        let fr = Bimodule::free(&a, 1, &a);
        assert_eq!(fr.dim(), 4);
        assert!(fr.check().is_ok());
        let k = Algebra::ground(&Rationals);
        let plain = Bimodule::free(&k, 3, &k);
        assert_eq!(plain.dim(), 3);
        assert!(plain.check().is_ok());
        let z2 = Algebra::cyclic_group(&Rationals, 2).unwrap();
        let g = Bimodule::free(&z2, 1, &z2);
        assert_eq!(g.dim(), 4);
        assert_eq!(g.left(), &z2.mult().kron(&z2.identity_map()));
    }

    #[test]
    fn kernel_of_multiplication_is_two_dimensional() {
        let om = omega_dual();
        assert_eq!(om.bimodule.dim(), 2);
        assert!(om.bimodule.check().is_ok());
        let id = BimodMap::identity(&Bimodule::regular(&dual()));
        assert_eq!(id.kernel().bimodule.dim(), 0);
    }

    #[test]
    fn cokernel_of_zero_map() {
        let a = dual();
        let m = Bimodule::regular(&a);
        let z = BimodMap::new(Bimodule::zero(&a, &a), m.clone(), Mat::zeros(&Rationals, 2, 0)).unwrap();
        assert_eq!(z.cokernel().bimodule, m);
    }

    #[test]
    fn saturation_of_x_tensor_x() {
        let om = omega_dual().bimodule;
        // basis ω1 = 1⊗x − x⊗1, ω2 = x⊗x
        let g = om.generated(&Mat::from_i64(&Rationals, 2, 1, &[0, 1])).unwrap();
        assert_eq!(g.bimodule.dim(), 1);
        let g = om.generated(&Mat::from_i64(&Rationals, 2, 1, &[1, 0])).unwrap();
        assert_eq!(g.bimodule.dim(), 2);
        assert_eq!(om.generated(&Mat::zeros(&Rationals, 2, 0)).unwrap().bimodule.dim(), 0);
        assert_eq!(om.generated(&Mat::identity(&Rationals, 2)).unwrap().bimodule, om);
        assert!(om.generated(&Mat::zeros(&Rationals, 3, 1)).is_err());
    }

    #[test]
    fn quotient_rejects_non_closed_relations() {
        let om = omega_dual().bimodule;
        let err = om.quotient(&Mat::from_i64(&Rationals, 2, 1, &[1, 0])).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
        assert!(om.quotient(&Mat::from_i64(&Rationals, 2, 1, &[0, 1])).is_ok());
    }

    #[test]
    fn tensor_with_algebra_cancels() {
        let a = dual();
        let om = omega_dual().bimodule;
        let t = Bimodule::regular(&a).tensor_over(&om).unwrap();
        assert_eq!(t.bimodule.dim(), 2);
        // q ∘ (unit ⊗ 1) is invertible
        let emb = t.projection().mul(&a.unit_map().kron(&om.identity_map()));
        assert!(emb.is_invertible());
        let t = om.tensor_over(&Bimodule::outer_tensor_square(&a)).unwrap();
        assert_eq!(t.bimodule.dim(), 4);
        let t = om.tensor_over(&om).unwrap();
        assert_eq!(t.bimodule.dim(), 2);
        assert!(t.bimodule.check().is_ok());
    }

    #[test]
    fn restriction_along_units_forgets_actions() {
        let a = dual();
        let u = AlgMap::from_ground(&a);
        let r = Bimodule::regular(&a).restrict(&u, &u).unwrap();
        assert_eq!(r.dim(), 2);
        assert!(r.check().is_ok());
        assert_eq!(r.left(), &Mat::identity(&Rationals, 2));
        let id = AlgMap::identity(&a);
        assert_eq!(Bimodule::regular(&a).restrict(&id, &id).unwrap(), Bimodule::regular(&a));
    }

    #[test]
    fn extension_from_ground_field() {
        let a = dual();
        let k = Algebra::ground(&Rationals);
        let u = AlgMap::from_ground(&a);
        let e = Bimodule::regular(&k).extend(&u, &u).unwrap();
        assert_eq!(e.bimodule.dim(), 4);
        assert!(e.bimodule.check().is_ok());
        let id = AlgMap::identity(&a);
        let m = omega_dual().bimodule;
        let e = m.extend(&id, &id).unwrap();
        assert_eq!(e.bimodule.dim(), m.dim());
    }

    #[test]
    fn hom_space_of_regular_bimodule() {
        // bimodule endomorphisms of A are multiplication by central elements
        let a = dual();
        let r = Bimodule::regular(&a);
        assert_eq!(r.hom_space(&r).unwrap().len(), 2);
        let m2 = Algebra::matrix_algebra(&Rationals, 2).unwrap();
        let r = Bimodule::regular(&m2);
        assert_eq!(r.hom_space(&r).unwrap().len(), 1);
    }
}
