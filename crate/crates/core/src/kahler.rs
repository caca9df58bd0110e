//! Kähler differentials of a commutative algebra as a quotient of the universal calculus.

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::fodc::{FirstOrderCalculus, UniversalCalculus};
use crate::linalg::Mat;

/// The Kähler calculus with the data it was cut out by.
#[derive(Clone, Debug)]
pub struct KahlerCalculus<F: Field> {
    pub calc: FirstOrderCalculus<F>,
    /// Canonical basis of the sub-bimodule of `Ω¹_u` generated by `d(a)·b − b·d(a)`.
    pub relations: Mat<F>,
    /// The coequalizer projection `Ω¹_u ↠ Ω_K`.
    pub projection: Mat<F>,
}

pub(crate) fn require_commutative<F: Field>(a: &Algebra<F>) -> Result<()> {
    match a.commutativity_witness() {
        None => Ok(()),
        Some((i, j)) => Err(Error::Precondition(format!(
            "algebra is not commutative: e{i}·e{j} ≠ e{j}·e{i} ({}·{} ≠ {}·{})",
            a.labels()[i],
            a.labels()[j],
            a.labels()[j],
            a.labels()[i]
        ))),
    }
}

/// `Ω¹_u` modulo the sub-bimodule generated by the image of
/// `d·1 − (1·d)∘swap` on `A ⊗ A`.
pub fn kahler_calculus<F: Field>(a: &Algebra<F>) -> Result<KahlerCalculus<F>> {
    require_commutative(a)?;
    let u = UniversalCalculus::new(a)?;
    kahler_from_universal(&u)
}

pub fn kahler_from_universal<F: Field>(u: &UniversalCalculus<F>) -> Result<KahlerCalculus<F>> {
    let a = u.alg();
    require_commutative(a)?;
    let n = a.dim();
    let swap = Mat::swap(a.field(), n, n);
    let rel = u.calc.right_d().sub(&u.calc.left_d().mul(&swap));
    // The image alone is not closed under the actions.
    let relations = u.calc.omega().generated(&rel)?.inclusion;
    let q = u.calc.quotient(&relations)?;
    if !centrality_check(q.calc.omega())? {
        return Err(Error::Verification("Kähler quotient is not central".into()));
    }
    Ok(KahlerCalculus { calc: q.calc, relations, projection: q.projection })
}

/// Whether `a·x = x·a` for all `a ∈ A`, `x ∈ M`, for a bimodule over a
/// commutative algebra.
pub fn centrality_check<F: Field>(m: &Bimodule<F>) -> Result<bool> {
    if m.left_alg() != m.right_alg() {
        return invalid("centrality needs the same algebra on both sides");
    }
    require_commutative(m.left_alg())?;
    let swap = Mat::swap(m.field(), m.left_alg().dim(), m.dim());
    Ok(m.right().mul(&swap) == *m.left())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::fodc::{induced_map, Classification};

    /// dim A·dx / (n x^{n−1} dx) for A = k[x]/(xⁿ), from the rank of
    /// multiplication by n x^{n−1} on the free cyclic module.
    fn classical_dim<F: Field>(f: &F, n: usize) -> usize {
        let c = f.from_i64(n as i64);
        let mut mul = Mat::zeros(f, n, n);
        // x^{n−1}·x^k = 0 unless k = 0
        mul.set(n - 1, 0, c);
        n - mul.rank()
    }

    #[test]
    fn dual_numbers() {
        let a = Algebra::truncated_poly(&Rationals, 2).unwrap();
        let k = kahler_calculus(&a).unwrap();
        assert_eq!(k.calc.dim(), 1);
        // the relation is −2(x⊗x), i.e. the span of ω2
        assert_eq!(k.relations, Mat::from_i64(&Rationals, 2, 1, &[0, 1]));
        assert!(k.calc.omega().left_action(1).is_zero());
        assert_eq!(k.calc.check().classification, Classification::Fodc);
        let u = UniversalCalculus::new(&a).unwrap();
        assert_eq!(induced_map(&u, &k.calc).unwrap().map.matrix(), &k.projection);
    }

    #[test]
    fn matches_classical_presentation() {
        for n in 2..=4 {
            let a = Algebra::truncated_poly(&Rationals, n).unwrap();
            assert_eq!(kahler_calculus(&a).unwrap().calc.dim(), classical_dim(&Rationals, n));
            assert_eq!(classical_dim(&Rationals, n), n - 1);
        }
        for (p, n) in [(2, 2), (3, 3), (2, 4), (3, 2)] {
            let f = PrimeField::new(p).unwrap();
            let a = Algebra::truncated_poly(&f, n).unwrap();
            assert_eq!(kahler_calculus(&a).unwrap().calc.dim(), classical_dim(&f, n));
        }
    }

    #[test]
    fn noncommutative_input_is_rejected() {
        let m2 = Algebra::matrix_algebra(&Rationals, 2).unwrap();
        assert!(matches!(kahler_calculus(&m2), Err(Error::Precondition(_))));
    }

    #[test]
    fn centrality() {
        let a = Algebra::truncated_poly(&Rationals, 2).unwrap();
        assert!(centrality_check(&Bimodule::regular(&a)).unwrap());
        let u = UniversalCalculus::new(&a).unwrap();
        assert!(!centrality_check(u.calc.omega()).unwrap());
        let a3 = Algebra::truncated_poly(&Rationals, 3).unwrap();
        assert!(centrality_check(kahler_calculus(&a3).unwrap().calc.omega()).unwrap());
    }

    #[test]
    fn kahler_differential_is_a_central_derivation() {
        let a = Algebra::truncated_poly(&Rationals, 3).unwrap();
        let k = kahler_calculus(&a).unwrap().calc;
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                let ei = Mat::unit_vector(&Rationals, n, i);
                let ej = Mat::unit_vector(&Rationals, n, j);
                let prod = k.d().mul(&a.mult().mul(&ei.kron(&ej)));
                let left = k.omega().act_left_on(&k.d().mul(&ej)).mul(&ei.kron(&Mat::identity(&Rationals, 1)));
                let right = k.omega().act_right_on(&k.d().mul(&ei)).mul(&Mat::identity(&Rationals, 1).kron(&ej));
                assert_eq!(prod, left.add(&right));
                let swapped = k.omega().act_right_on(&k.d().mul(&ej)).mul(&Mat::identity(&Rationals, 1).kron(&ei));
                assert_eq!(left, swapped);
            }
        }
    }
}
