//! First-order differential calculi and the universal calculus.

use std::collections::HashSet;

use crate::algebra::Algebra;
use crate::bimodule::{BimodMap, Bimodule};
use crate::error::{ensure, invalid, Error, Result};
use crate::field::Field;
use crate::linalg::{flatten, operator_matrix, span_sum, unflatten, Mat};
use crate::report::{decode_index, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    NotGeneralized,
    GeneralizedOnly,
    Fodc,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::NotGeneralized => "not_generalized",
            Self::GeneralizedOnly => "generalized_only",
            Self::Fodc => "fodc",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FodcReport {
    pub classification: Classification,
    pub leibniz: bool,
    pub unit_killed: bool,
    /// `1·d: A ⊗ A → Ω` is onto.
    pub left_surjective: bool,
    /// `d·1: A ⊗ A → Ω` is onto.
    pub right_surjective: bool,
    /// `1·d·1: A ⊗ A ⊗ A → Ω` is onto.
    pub two_sided_surjective: bool,
    pub violations: Report,
}

/// `1·d = l (1 ⊗ d)` as a map `A ⊗ A → Ω`.
pub fn left_d<F: Field>(omega: &Bimodule<F>, d: &Mat<F>) -> Mat<F> {
    omega.act_left_on(d)
}

/// `d·1 = r (d ⊗ 1)` as a map `A ⊗ A → Ω`.
pub fn right_d<F: Field>(omega: &Bimodule<F>, d: &Mat<F>) -> Mat<F> {
    omega.act_right_on(d)
}

/// Classifies `(Ω, d)` and lists Leibniz failures at basis pairs `(i, j)`.
pub fn check_fodc<F: Field>(alg: &Algebra<F>, omega: &Bimodule<F>, d: &Mat<F>) -> Result<FodcReport> {
    if omega.left_alg() != alg || omega.right_alg() != alg {
        return invalid("calculus bimodule must be over the algebra on both sides");
    }
    if d.shape() != (omega.dim(), alg.dim()) {
        return invalid(format!(
            "differential has shape {:?}, expected ({}, {})",
            d.shape(),
            omega.dim(),
            alg.dim()
        ));
    }
    let n = alg.dim();
    let m = omega.dim();
    let mut violations = Report::new();

    let ld = left_d(omega, d);
    let rd = right_d(omega, d);
    let lhs = d.mul(alg.mult());
    let rhs = rd.add(&ld);
    violations.compare("leibniz", &lhs, &rhs, |c| decode_index(c, &[n, n]));
    let leibniz = violations.is_ok();

    let unit_killed = d.mul(&alg.unit_map()).is_zero();
    if !unit_killed {
        violations.push("d(1) = 0", vec![]);
    }

    let left_surjective = ld.rank() == m;
    let right_surjective = rd.rank() == m;
    let two = omega.act_left_on(&rd);
    let two_sided_surjective = two.rank() == m;
    if !left_surjective {
        violations.push("left surjectivity", vec![ld.rank(), m]);
    }
    if !right_surjective {
        violations.push("right surjectivity", vec![rd.rank(), m]);
    }
    if !two_sided_surjective {
        violations.push("two-sided surjectivity", vec![two.rank(), m]);
    }
    if leibniz && !(left_surjective == right_surjective && right_surjective == two_sided_surjective) {
        violations.push("surjectivity variants disagree under leibniz", vec![]);
    }

    let classification = if !leibniz {
        Classification::NotGeneralized
    } else if left_surjective {
        Classification::Fodc
    } else {
        Classification::GeneralizedOnly
    };
    Ok(FodcReport {
        classification,
        leibniz,
        unit_killed,
        left_surjective,
        right_surjective,
        two_sided_surjective,
        violations,
    })
}

/// An `A`-bimodule `Ω` with a differential `d: A → Ω` satisfying Leibniz and
/// surjectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderCalculus<F: Field> {
    alg: Algebra<F>,
    omega: Bimodule<F>,
    d: Mat<F>,
}

impl<F: Field> FirstOrderCalculus<F> {
    pub fn new(alg: Algebra<F>, omega: Bimodule<F>, d: Mat<F>) -> Result<Self> {
        let report = check_fodc(&alg, &omega, &d)?;
        if report.classification != Classification::Fodc {
            return Err(Error::InvalidInput(format!(
                "not a first order calculus ({}): {}",
                report.classification.as_str(),
                report.violations
            )));
        }
        Ok(Self { alg, omega, d })
    }

    pub(crate) fn new_unchecked(alg: Algebra<F>, omega: Bimodule<F>, d: Mat<F>) -> Self {
        Self { alg, omega, d }
    }

    /// The terminal calculus `(A, 0)`.
    pub fn zero(alg: &Algebra<F>) -> Self {
        Self {
            alg: alg.clone(),
            omega: Bimodule::zero(alg, alg),
            d: Mat::zeros(alg.field(), 0, alg.dim()),
        }
    }

    pub fn alg(&self) -> &Algebra<F> {
        &self.alg
    }

    pub fn omega(&self) -> &Bimodule<F> {
        &self.omega
    }

    pub fn d(&self) -> &Mat<F> {
        &self.d
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    pub fn left_d(&self) -> Mat<F> {
        left_d(&self.omega, &self.d)
    }

    pub fn right_d(&self) -> Mat<F> {
        right_d(&self.omega, &self.d)
    }

    pub fn check(&self) -> FodcReport {
        check_fodc(&self.alg, &self.omega, &self.d).expect("shapes fixed at construction")
    }

    /// `Ω / N` with `d = q ∘ d`, for the sub-bimodule spanned by `relations`.
    pub fn quotient(&self, relations: &Mat<F>) -> Result<QuotientCalculus<F>> {
        let q = self.omega.quotient(relations)?;
        let d = q.projection().mul(&self.d);
        let projection = q.cokernel.projection.clone();
        Ok(QuotientCalculus {
            calc: Self::new_unchecked(self.alg.clone(), q.bimodule, d),
            projection,
        })
    }
}

/// A quotient calculus with its projection from the parent.
#[derive(Clone, Debug)]
pub struct QuotientCalculus<F: Field> {
    pub calc: FirstOrderCalculus<F>,
    pub projection: Mat<F>,
}

pub fn quotient_calculus<F: Field>(u: &FirstOrderCalculus<F>, relations: &Mat<F>) -> Result<QuotientCalculus<F>> {
    u.quotient(relations)
}

/// `Ω¹_u = ker(m: A ⊗ A → A)` with `d(a) = 1 ⊗ a − a ⊗ 1`, together with the
/// inclusion `ι` into `A ⊗ A` and its retraction `p = 1·d`.
#[derive(Clone, Debug)]
pub struct UniversalCalculus<F: Field> {
    pub calc: FirstOrderCalculus<F>,
    pub iota: Mat<F>,
    pub retraction: Mat<F>,
}

impl<F: Field> UniversalCalculus<F> {
    pub fn new(alg: &Algebra<F>) -> Result<Self> {
        let mult = BimodMap::new_unchecked(Bimodule::outer_tensor_square(alg), Bimodule::regular(alg), alg.mult().clone())?;
        let kernel = mult.kernel();
        let iota = kernel.inclusion;
        let omega = kernel.bimodule;
        let id = alg.identity_map();
        let unit = alg.unit_map();
        let d_ambient = unit.kron(&id).sub(&id.kron(&unit));
        let d = iota
            .solve(&d_ambient)?
            .ok_or_else(|| Error::Verification("1⊗a − a⊗1 leaves the kernel of m".into()))?;
        let calc = FirstOrderCalculus::new_unchecked(alg.clone(), omega, d);
        let retraction = calc.left_d();
        let u = Self { calc, iota, retraction };
        ensure(u.retraction.mul(&u.iota).is_identity(), || "p∘ι ≠ id".into())?;
        Ok(u)
    }

    pub fn alg(&self) -> &Algebra<F> {
        self.calc.alg()
    }

    pub fn dim(&self) -> usize {
        self.calc.dim()
    }

    /// `(d·1) ∘ ι`, which equals `−id`.
    pub fn split_identity(&self) -> Mat<F> {
        self.calc.right_d().mul(&self.iota)
    }

    pub fn zero_calculus(&self) -> FirstOrderCalculus<F> {
        FirstOrderCalculus::zero(self.alg())
    }
}

pub fn universal_calculus<F: Field>(alg: &Algebra<F>) -> Result<UniversalCalculus<F>> {
    UniversalCalculus::new(alg)
}

/// The morphism out of the universal calculus and the dimension of the
/// homogeneous solution space that certifies its uniqueness.
#[derive(Clone, Debug)]
pub struct InducedMap<F: Field> {
    pub map: BimodMap<F>,
    pub solution_space_dim: usize,
}

/// `f = (1·d_t) ∘ ι`, the unique bimodule map with `f ∘ d_u = d_t`.
pub fn induced_map<F: Field>(u: &UniversalCalculus<F>, target: &FirstOrderCalculus<F>) -> Result<InducedMap<F>> {
    if target.alg() != u.alg() {
        return invalid("induced map needs calculi over the same algebra");
    }
    let report = target.check();
    if report.classification != Classification::Fodc {
        return invalid(format!("target is not a first order calculus: {}", report.violations));
    }
    let matrix = target.left_d().mul(&u.iota);
    let map = BimodMap::new_unchecked(u.calc.omega().clone(), target.omega().clone(), matrix)?;
    let check = map.check();
    ensure(check.is_ok(), || format!("induced map is not a bimodule map: {check}"))?;
    ensure(map.matrix().mul(u.calc.d()) == *target.d(), || "f∘d_u ≠ d".into())?;
    ensure(map.matrix().rank() == target.dim(), || "induced map is not onto".into())?;
    let solution_space_dim = morphism_constraints(&u.calc, target).kernel_basis().cols();
    Ok(InducedMap { map, solution_space_dim })
}

/// The homogeneous system on `X: Ω_s → Ω_t` expressing left and right
/// linearity and `X d_s = 0`.
pub(crate) fn morphism_constraints<F: Field>(s: &FirstOrderCalculus<F>, t: &FirstOrderCalculus<F>) -> Mat<F> {
    let id = s.alg.identity_map();
    let (so, to) = (&s.omega, &t.omega);
    operator_matrix(s.field(), to.dim(), so.dim(), |x| {
        vec![
            x.mul(so.left()).sub(&to.left().mul(&id.kron(x))),
            x.mul(so.right()).sub(&to.right().mul(&x.kron(&id))),
            x.mul(&s.d),
        ]
    })
}

/// A morphism of calculi `s → t` over the identity of `A`, if one exists.
pub fn calculus_morphism<F: Field>(s: &FirstOrderCalculus<F>, t: &FirstOrderCalculus<F>) -> Result<Option<Mat<F>>> {
    if s.alg != t.alg {
        return invalid("calculus morphism needs calculi over the same algebra");
    }
    let f = s.field();
    let system = morphism_constraints(s, t);
    let rhs = flatten(&[
        Mat::zeros(f, t.dim(), s.alg.dim() * s.dim()),
        Mat::zeros(f, t.dim(), s.dim() * s.alg.dim()),
        t.d.clone(),
    ]);
    let rhs = Mat::column_vector(f, rhs);
    Ok(system.solve(&rhs)?.map(|x| unflatten(f, t.dim(), s.dim(), &x.column(0))))
}

/// One row of the sub-bimodule / quotient-calculus correspondence.
#[derive(Clone, Debug)]
pub struct CorrespondenceEntry<F: Field> {
    pub sub: Mat<F>,
    pub quotient: FirstOrderCalculus<F>,
    pub kernel: Mat<F>,
    pub round_trip: bool,
}

/// For each sub-bimodule `N ⊆ Ω¹_u`, the quotient calculus and the kernel
/// of the projection, which must give back `N`.
pub fn sub_calculus_correspondence<F: Field>(
    u: &UniversalCalculus<F>,
    family: &[Mat<F>],
) -> Result<Vec<CorrespondenceEntry<F>>> {
    family
        .iter()
        .map(|n| {
            let sub = n.column_echelon();
            let q = u.calc.quotient(&sub)?;
            let induced = induced_map(u, &q.calc)?;
            let kernel = induced.map.matrix().kernel_basis();
            Ok(CorrespondenceEntry { round_trip: kernel == sub, sub, quotient: q.calc, kernel })
        })
        .collect()
}

/// The comparison `g: Ω¹_u ⊗_A M → ker(μ_M)`, `ω ⊗ m ↦ (1 ⊗ μ)(ι(ω) ⊗ m)`.
#[derive(Clone, Debug)]
pub struct KernelCounit<F: Field> {
    /// Canonical basis of `ker(μ_M) ⊆ A ⊗ M`.
    pub kernel: Mat<F>,
    /// `g` in the basis of `Ω¹_u ⊗_A M` and the kernel basis.
    pub comparison: Mat<F>,
}

impl<F: Field> KernelCounit<F> {
    pub fn is_isomorphism(&self) -> bool {
        self.comparison.is_invertible()
    }
}

/// For a left `A`-module `M`, given as an `(A, k)`-bimodule.
pub fn kernel_counit_comparison<F: Field>(u: &UniversalCalculus<F>, m: &Bimodule<F>) -> Result<KernelCounit<F>> {
    let a = u.alg();
    if m.left_alg() != a || m.right_alg().dim() != 1 {
        return invalid("expected a left module over the algebra of the calculus");
    }
    let mu = m.left();
    let kernel = mu.kernel_basis();
    let t = u.calc.omega().tensor_over(m)?;
    let ambient = a.identity_map().kron(mu).mul(&u.iota.kron(&m.identity_map()));
    let relations = t.cokernel.projection.kernel_basis();
    ensure(ambient.mul(&relations).is_zero(), || "comparison is not balanced over A".into())?;
    let g = ambient.mul(&t.cokernel.section);
    let comparison = kernel
        .solve(&g)?
        .ok_or_else(|| Error::Verification("comparison leaves ker μ".into()))?;
    Ok(KernelCounit { kernel, comparison })
}

/// Upper bound on the number of candidate generators tried by
/// [`enumerate_sub_bimodules`].
pub const ENUMERATION_LIMIT: usize = 1 << 18;

/// Sub-bimodules of `m`, as canonical bases.
///
/// Every sub-bimodule is a sum of cyclic ones, so this generates the cyclic
/// sub-bimodule of each candidate vector and closes the result under sums.
/// Over GF(p) the candidates are all vectors with leading coordinate 1, so
/// the listing is complete. Over ℚ the candidates have integer coordinates
/// in `[-bound, bound]`, which finds every sub-bimodule spanned by such
/// vectors.
pub fn enumerate_sub_bimodules<F: Field>(m: &Bimodule<F>, bound: i64) -> Result<Vec<Mat<F>>> {
    let f = m.field();
    let dim = m.dim();
    let p = f.characteristic();
    let coeffs: Vec<F::Elem> = if p > 0 {
        (0..p).map(|c| f.from_i64(c as i64)).collect()
    } else {
        (-bound..=bound).map(|c| f.from_i64(c)).collect()
    };
    let leading: Vec<F::Elem> = if p > 0 {
        vec![f.one()]
    } else {
        (1..=bound.max(1)).map(|c| f.from_i64(c)).collect()
    };
    let total = (0..dim).try_fold(0usize, |acc, k| {
        let tail = coeffs.len().checked_pow((dim - 1 - k) as u32)?;
        acc.checked_add(leading.len().checked_mul(tail)?)
    });
    match total {
        Some(t) if t <= ENUMERATION_LIMIT => {}
        _ => {
            return Err(Error::Precondition(format!(
                "enumeration over {} candidate vectors exceeds the limit {ENUMERATION_LIMIT}",
                total.map_or("too many".to_string(), |t| t.to_string())
            )))
        }
    }

    let mut seen: HashSet<Vec<Vec<F::Elem>>> = HashSet::new();
    let mut found: Vec<Mat<F>> = Vec::new();
    let mut record = |basis: Mat<F>, found: &mut Vec<Mat<F>>| {
        if seen.insert(basis.columns()) {
            found.push(basis);
            true
        } else {
            false
        }
    };
    record(Mat::zeros(f, dim, 0), &mut found);

    for lead in 0..dim {
        let free = dim - 1 - lead;
        let mut digits = vec![0usize; free];
        for l in &leading {
            loop {
                let mut v = vec![f.zero(); dim];
                v[lead] = l.clone();
                for (t, &dg) in digits.iter().enumerate() {
                    v[lead + 1 + t] = coeffs[dg].clone();
                }
                let g = m.generated(&Mat::column_vector(f, v))?;
                record(g.inclusion, &mut found);
                if !advance(&mut digits, coeffs.len()) {
                    break;
                }
            }
        }
    }

    let mut start = 1;
    loop {
        let end = found.len();
        let mut added = false;
        for i in 0..end {
            for j in start.max(i + 1)..end {
                let s = span_sum(f, dim, &[&found[i], &found[j]]);
                added |= record(s, &mut found);
            }
        }
        if !added {
            break;
        }
        start = end;
    }
    found.sort_by_key(|b| b.cols());
    Ok(found)
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn dual() -> Algebra<Rationals> {
        Algebra::truncated_poly(&Rationals, 2).unwrap()
    }

    #[test]
    fn universal_calculus_of_dual_numbers() {
        let u = universal_calculus(&dual()).unwrap();
        assert_eq!(u.dim(), 2);
        assert_eq!(u.iota, Mat::from_i64(&Rationals, 4, 2, &[0, 0, 1, 0, -1, 0, 0, 1]));
        // d(x) = ω1, d(1) = 0
        assert_eq!(u.calc.d(), &Mat::from_i64(&Rationals, 2, 2, &[0, 1, 0, 0]));
        assert_eq!(u.split_identity(), Mat::identity(&Rationals, 2).neg());
        assert_eq!(u.calc.check().classification, Classification::Fodc);
    }

    #[test]
    fn universal_calculus_of_ground_field_is_zero() {
        let u = universal_calculus(&Algebra::ground(&Rationals)).unwrap();
        assert_eq!(u.dim(), 0);
    }

    #[test]
    fn zero_calculus_is_a_calculus() {
        let z = FirstOrderCalculus::zero(&dual());
        let r = z.check();
        assert_eq!(r.classification, Classification::Fodc);
        assert!(r.violations.is_ok());
    }

    #[test]
    fn ambient_tensor_square_is_only_generalized() {
        let a = dual();
        let om = Bimodule::outer_tensor_square(&a);
        let id = a.identity_map();
        let unit = a.unit_map();
        let d = unit.kron(&id).sub(&id.kron(&unit));
        let r = check_fodc(&a, &om, &d).unwrap();
        assert_eq!(r.classification, Classification::GeneralizedOnly);
        assert_eq!(left_d(&om, &d).rank(), 2);
        assert!(!r.right_surjective && !r.two_sided_surjective);
    }

    #[test]
    fn leibniz_failure_has_witness() {
        let a = dual();
        let om = Bimodule::regular(&a);
        // d = identity violates d(1) = 0 and Leibniz
        let r = check_fodc(&a, &om, &a.identity_map()).unwrap();
        assert_eq!(r.classification, Classification::NotGeneralized);
        assert!(r.violations.violations.iter().any(|v| v.axiom == "leibniz" && v.witness == vec![0, 0]));
        assert!(FirstOrderCalculus::new(a.clone(), om, a.identity_map()).is_err());
    }

    #[test]
    fn quotient_by_x_tensor_x() {
        let u = universal_calculus(&dual()).unwrap();
        let q = u.calc.quotient(&Mat::from_i64(&Rationals, 2, 1, &[0, 1])).unwrap().calc;
        assert_eq!(q.dim(), 1);
        assert_eq!(q.d(), &Mat::from_i64(&Rationals, 1, 2, &[0, 1]));
        assert!(q.omega().left_action(1).is_zero());
        assert_eq!(q.check().classification, Classification::Fodc);
        let whole = u.calc.quotient(&Mat::identity(&Rationals, 2)).unwrap().calc;
        assert_eq!(whole.dim(), 0);
        assert!(u.calc.quotient(&Mat::from_i64(&Rationals, 2, 1, &[1, 0])).is_err());
    }

    #[test]
    fn induced_maps_are_unique() {
        let u = universal_calculus(&dual()).unwrap();
        let f = induced_map(&u, &u.calc).unwrap();
        assert!(f.map.matrix().is_identity());
        assert_eq!(f.solution_space_dim, 0);
        let f = induced_map(&u, &u.zero_calculus()).unwrap();
        assert_eq!(f.map.matrix().shape(), (0, 2));
        let q = u.calc.quotient(&Mat::from_i64(&Rationals, 2, 1, &[0, 1])).unwrap();
        let f = induced_map(&u, &q.calc).unwrap();
        assert_eq!(f.map.matrix(), &q.projection);
    }

    #[test]
    fn morphism_existence_between_quotients() {
        let u = universal_calculus(&dual()).unwrap();
        let q = u.calc.quotient(&Mat::from_i64(&Rationals, 2, 1, &[0, 1])).unwrap().calc;
        assert!(calculus_morphism(&u.calc, &q).unwrap().is_some());
        assert!(calculus_morphism(&q, &u.calc).unwrap().is_none());
        assert!(calculus_morphism(&q, &u.zero_calculus()).unwrap().is_some());
    }

    #[test]
    fn sub_bimodules_of_dual_numbers() {
        let u = universal_calculus(&dual()).unwrap();
        let subs = enumerate_sub_bimodules(u.calc.omega(), 2).unwrap();
        assert_eq!(subs.len(), 3);
        let entries = sub_calculus_correspondence(&u, &subs).unwrap();
        assert!(entries.iter().all(|e| e.round_trip));

        let gf2 = PrimeField::new(2).unwrap();
        let u2 = universal_calculus(&Algebra::truncated_poly(&gf2, 2).unwrap()).unwrap();
        let subs = enumerate_sub_bimodules(u2.calc.omega(), 0).unwrap();
        assert_eq!(subs.len(), 3);
        assert!(sub_calculus_correspondence(&u2, &subs).unwrap().iter().all(|e| e.round_trip));
    }

    #[test]
    fn kernel_of_counit() {
        let a = dual();
        let u = universal_calculus(&a).unwrap();
        let regular = Bimodule::left_module(&a, 2, a.mult().clone()).unwrap();
        // k with x acting by zero
        let simple = Bimodule::left_module(&a, 1, Mat::from_i64(&Rationals, 1, 2, &[1, 0])).unwrap();
        for m in [regular, simple] {
            let k = kernel_counit_comparison(&u, &m).unwrap();
            assert_eq!(k.kernel.cols(), m.dim());
            assert!(k.is_isomorphism());
        }
    }
}
