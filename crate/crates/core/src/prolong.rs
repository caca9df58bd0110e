//! Differential calculi in all degrees: universal and maximal prolongations.

use std::collections::BTreeMap;

use crate::algebra::{AlgMap, Algebra};
use crate::bimodule::Bimodule;
use crate::error::{ensure, invalid, Error, Result};
use crate::field::Field;
use crate::fodc::{calculus_morphism, induced_map, Classification, FirstOrderCalculus, UniversalCalculus};
use crate::linalg::{span_sum, Mat};
use crate::report::{decode_index, Report};

/// A dg-algebra generated in degree 0, truncated at `max_degree`.
///
/// `wedge[(i, j)]` is `Ωⁱ ⊗ Ωʲ → Ω^{i+j}` for `i + j ≤ N`, `diff[n]` is
/// `dⁿ: Ωⁿ → Ω^{n+1}` for `n < N`, and `generation[n]` is the surjection
/// `a₀ ⊗ … ⊗ aₙ ↦ a₀ da₁ ⋯ daₙ` from `A^{⊗ n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCalculus<F: Field> {
    alg: Algebra<F>,
    dims: Vec<usize>,
    wedge: BTreeMap<(usize, usize), Mat<F>>,
    diff: Vec<Mat<F>>,
    generation: Vec<Mat<F>>,
}

impl<F: Field> GradedCalculus<F> {
    pub fn new(
        alg: Algebra<F>,
        dims: Vec<usize>,
        wedge: BTreeMap<(usize, usize), Mat<F>>,
        diff: Vec<Mat<F>>,
    ) -> Result<Self> {
        let g = Self::new_unchecked(alg, dims, wedge, diff)?;
        let report = g.check();
        if !report.is_ok() {
            return Err(Error::InvalidInput(format!("not a differential calculus: {report}")));
        }
        Ok(g)
    }

    pub fn new_unchecked(
        alg: Algebra<F>,
        dims: Vec<usize>,
        wedge: BTreeMap<(usize, usize), Mat<F>>,
        diff: Vec<Mat<F>>,
    ) -> Result<Self> {
        let top = match dims.len() {
            0 => return invalid("graded calculus needs degree 0"),
            l => l - 1,
        };
        if dims[0] != alg.dim() {
            return invalid("degree 0 must be the algebra");
        }
        if diff.len() != top {
            return invalid(format!("expected {top} differentials, got {}", diff.len()));
        }
        for (n, d) in diff.iter().enumerate() {
            if d.shape() != (dims[n + 1], dims[n]) {
                return invalid(format!("d^{n} has shape {:?}", d.shape()));
            }
        }
        for i in 0..=top {
            for j in 0..=top - i {
                match wedge.get(&(i, j)) {
                    Some(w) if w.shape() == (dims[i + j], dims[i] * dims[j]) => {}
                    Some(w) => return invalid(format!("wedge ({i},{j}) has shape {:?}", w.shape())),
                    None => return invalid(format!("wedge ({i},{j}) missing")),
                }
            }
        }
        let f = alg.field();
        let mut generation = vec![Mat::identity(f, alg.dim())];
        for n in 1..=top {
            let prev = &generation[n - 1];
            let g = wedge[&(n - 1, 1)].mul(&prev.kron(&diff[0]));
            generation.push(g);
        }
        Ok(Self { alg, dims, wedge, diff, generation })
    }

    pub fn alg(&self) -> &Algebra<F> {
        &self.alg
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn wedge(&self, i: usize, j: usize) -> &Mat<F> {
        &self.wedge[&(i, j)]
    }

    pub fn diff(&self, n: usize) -> &Mat<F> {
        &self.diff[n]
    }

    pub fn diffs(&self) -> &[Mat<F>] {
        &self.diff
    }

    pub fn generation(&self, n: usize) -> &Mat<F> {
        &self.generation[n]
    }

    /// Degrees 0 and 1 as a first order calculus.
    pub fn truncate(&self) -> Result<FirstOrderCalculus<F>> {
        if self.max_degree() == 0 {
            return Ok(FirstOrderCalculus::zero(&self.alg));
        }
        let omega = Bimodule::new_unchecked(
            self.alg.clone(),
            self.alg.clone(),
            self.dims[1],
            self.wedge(0, 1).clone(),
            self.wedge(1, 0).clone(),
        )?;
        FirstOrderCalculus::new(self.alg.clone(), omega, self.diff[0].clone())
    }

    /// Associativity, unit, graded Leibniz, `d² = 0` and generation in every
    /// defined degree.
    pub fn check(&self) -> Report {
        let f = self.field();
        let top = self.max_degree();
        let id = |n: usize| Mat::identity(f, self.dims[n]);
        let mut report = Report::new();

        report.compare("degree 0 product", self.wedge(0, 0), self.alg.mult(), |c| vec![c]);
        let unit = self.alg.unit_map();
        for n in 0..=top {
            let label = format!("left unit in degree {n}");
            report.compare(&label, &self.wedge(0, n).mul(&unit.kron(&id(n))), &id(n), |c| vec![c]);
            let label = format!("right unit in degree {n}");
            report.compare(&label, &self.wedge(n, 0).mul(&id(n).kron(&unit)), &id(n), |c| vec![c]);
        }
        for i in 0..=top {
            for j in 0..=top - i {
                for k in 0..=top - i - j {
                    let lhs = self.wedge(i + j, k).mul(&self.wedge(i, j).kron(&id(k)));
                    let rhs = self.wedge(i, j + k).mul(&id(i).kron(self.wedge(j, k)));
                    let dims = [self.dims[i], self.dims[j], self.dims[k]];
                    report.compare(&format!("associativity ({i},{j},{k})"), &lhs, &rhs, |c| {
                        decode_index(c, &dims)
                    });
                }
            }
        }
        for i in 0..top {
            for j in 0..top - i {
                let lhs = self.diff[i + j].mul(self.wedge(i, j));
                let first = self.wedge(i + 1, j).mul(&self.diff[i].kron(&id(j)));
                let second = self.wedge(i, j + 1).mul(&id(i).kron(&self.diff[j]));
                let rhs = if i % 2 == 0 { first.add(&second) } else { first.sub(&second) };
                let dims = [self.dims[i], self.dims[j]];
                report.compare(&format!("graded leibniz ({i},{j})"), &lhs, &rhs, |c| decode_index(c, &dims));
            }
        }
        for n in 0..top.saturating_sub(1) {
            let dd = self.diff[n + 1].mul(&self.diff[n]);
            report.compare(&format!("d∘d in degree {n}"), &dd, &Mat::zeros(f, dd.rows(), dd.cols()), |c| vec![c]);
        }
        for n in 0..=top {
            let rank = self.generation[n].rank();
            if rank != self.dims[n] {
                report.push(format!("generation in degree {n}"), vec![rank, self.dims[n]]);
            }
        }
        report
    }
}

/// `A^{⊗ n+1}` with `d_Aⁿ = Σᵢ (−1)ⁱ (1^{⊗i} ⊗ unit ⊗ 1^{⊗ n+1−i})`.
#[derive(Clone, Debug)]
pub struct AmitsurComplex<F: Field> {
    pub alg: Algebra<F>,
    pub diffs: Vec<Mat<F>>,
}

impl<F: Field> AmitsurComplex<F> {
    pub fn new(alg: &Algebra<F>, max_degree: usize) -> Self {
        let f = alg.field();
        let n0 = alg.dim();
        let unit = alg.unit_map();
        let diffs = (0..max_degree)
            .map(|n| {
                let mut d = Mat::zeros(f, n0.pow(n as u32 + 2), n0.pow(n as u32 + 1));
                for i in 0..=n + 1 {
                    let term = Mat::identity(f, n0.pow(i as u32))
                        .kron(&unit)
                        .kron(&Mat::identity(f, n0.pow((n + 1 - i) as u32)));
                    d = if i % 2 == 0 { d.add(&term) } else { d.sub(&term) };
                }
                d
            })
            .collect();
        Self { alg: alg.clone(), diffs }
    }

    /// `∧_A^{i,j} = 1 ⊗ m ⊗ 1: A^{⊗ i+1} ⊗ A^{⊗ j+1} → A^{⊗ i+j+1}`.
    pub fn wedge(&self, i: usize, j: usize) -> Mat<F> {
        let f = self.alg.field();
        let n0 = self.alg.dim();
        Mat::identity(f, n0.pow(i as u32)).kron(self.alg.mult()).kron(&Mat::identity(f, n0.pow(j as u32)))
    }

    /// Degrees `n` with `d^{n+1} dⁿ ≠ 0`.
    pub fn square_violations(&self) -> Vec<usize> {
        (0..self.diffs.len().saturating_sub(1))
            .filter(|&n| !self.diffs[n + 1].mul(&self.diffs[n]).is_zero())
            .collect()
    }
}

pub fn amitsur_complex<F: Field>(alg: &Algebra<F>, max_degree: usize) -> AmitsurComplex<F> {
    AmitsurComplex::new(alg, max_degree)
}

/// `Ωⁿ_u = (Ω¹_u)^{⊗_A n}` with its split embedding into the Amitsur complex.
#[derive(Clone, Debug)]
pub struct UniversalProlongation<F: Field> {
    pub calc: GradedCalculus<F>,
    pub universal: UniversalCalculus<F>,
    pub amitsur: AmitsurComplex<F>,
    /// `ιⁿ: Ωⁿ_u → A^{⊗ n+1}`.
    pub iotas: Vec<Mat<F>>,
    /// `pⁿ: A^{⊗ n+1} → Ωⁿ_u` with `pⁿ ιⁿ = id`.
    pub retractions: Vec<Mat<F>>,
}

pub fn universal_prolongation<F: Field>(alg: &Algebra<F>, max_degree: usize) -> Result<UniversalProlongation<F>> {
    let u = UniversalCalculus::new(alg)?;
    let amitsur = AmitsurComplex::new(alg, max_degree + 1);
    let omega1 = u.calc.omega().clone();
    let mut modules = vec![Bimodule::regular(alg)];
    let mut iotas = vec![alg.identity_map()];
    let mut retractions = vec![alg.identity_map()];
    if max_degree >= 1 {
        modules.push(omega1.clone());
        iotas.push(u.iota.clone());
        retractions.push(u.retraction.clone());
    }
    for n in 2..=max_degree {
        let t = modules[n - 1].tensor_over(&omega1)?;
        let q = &t.cokernel.projection;
        let s = &t.cokernel.section;
        let iota = amitsur.wedge(n - 1, 1).mul(&iotas[n - 1].kron(&u.iota)).mul(s);
        let p = q.mul(&retractions[n - 1].kron(u.calc.d()));
        ensure(p.mul(&iota).is_identity(), || format!("p∘ι ≠ id in degree {n}"))?;
        modules.push(t.bimodule);
        iotas.push(iota);
        retractions.push(p);
    }

    let dims: Vec<usize> = modules.iter().map(|m| m.dim()).collect();
    let mut wedge = BTreeMap::new();
    for i in 0..=max_degree {
        for j in 0..=max_degree - i {
            let w = retractions[i + j].mul(&amitsur.wedge(i, j)).mul(&iotas[i].kron(&iotas[j]));
            wedge.insert((i, j), w);
        }
    }
    // dⁿ(x) = p^{n+1}(1 ⊗ ιⁿ(x))
    let unit = alg.unit_map();
    let diff = (0..max_degree)
        .map(|n| retractions[n + 1].mul(&unit.kron(&iotas[n])))
        .collect();
    let calc = GradedCalculus::new_unchecked(alg.clone(), dims, wedge, diff)?;
    for n in 0..=max_degree {
        ensure(calc.generation(n) == &retractions[n], || format!("generation map differs from pⁿ in degree {n}"))?;
    }
    Ok(UniversalProlongation { calc, universal: u, amitsur, iotas, retractions })
}

impl<F: Field> UniversalProlongation<F> {
    pub fn max_degree(&self) -> usize {
        self.calc.max_degree()
    }

    /// Degrees where `ι^{n+1} dⁿ ≠ d_Aⁿ ιⁿ`.
    pub fn differential_violations(&self) -> Vec<usize> {
        (0..self.max_degree())
            .filter(|&n| self.iotas[n + 1].mul(self.calc.diff(n)) != self.amitsur.diffs[n].mul(&self.iotas[n]))
            .collect()
    }

    /// Pairs where `ι^{i+j} ∧^{i,j} ≠ ∧_A^{i,j} (ιⁱ ⊗ ιʲ)`.
    pub fn wedge_violations(&self) -> Vec<(usize, usize)> {
        let top = self.max_degree();
        let mut out = Vec::new();
        for i in 0..=top {
            for j in 0..=top - i {
                let lhs = self.iotas[i + j].mul(self.calc.wedge(i, j));
                let rhs = self.amitsur.wedge(i, j).mul(&self.iotas[i].kron(&self.iotas[j]));
                if lhs != rhs {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Degrees where `pⁿ ιⁿ ≠ id`.
    pub fn retraction_violations(&self) -> Vec<usize> {
        (0..=self.max_degree())
            .filter(|&n| !self.retractions[n].mul(&self.iotas[n]).is_identity())
            .collect()
    }
}

/// The maximal prolongation of a first order calculus, with the degreewise
/// quotient maps from the universal prolongation.
#[derive(Clone, Debug)]
pub struct MaximalProlongation<F: Field> {
    pub calc: GradedCalculus<F>,
    /// `fⁿ: Ωⁿ_u ↠ Ωⁿ_d`.
    pub projections: Vec<Mat<F>>,
    /// `Sₙ = ker fⁿ`, canonical bases.
    pub relations: Vec<Mat<F>>,
}

pub fn maximal_prolongation<F: Field>(c: &FirstOrderCalculus<F>, max_degree: usize) -> Result<MaximalProlongation<F>> {
    let up = universal_prolongation(c.alg(), max_degree)?;
    maximal_prolongation_from(&up, c)
}

/// `Sₙ = ∧(Σ Sᵢ ⊗ Ωʲ + Ωⁱ ⊗ Sⱼ) + d(S_{n−1})` over `i + j = n`, `i, j ≥ 1`,
/// and `Ωⁿ_d = Ωⁿ_u / Sₙ`; degree 1 is `c` itself.
pub fn maximal_prolongation_from<F: Field>(
    up: &UniversalProlongation<F>,
    c: &FirstOrderCalculus<F>,
) -> Result<MaximalProlongation<F>> {
    let report = c.check();
    if report.classification != Classification::Fodc {
        return invalid(format!("not a first order calculus: {}", report.violations));
    }
    let alg = c.alg();
    if alg != up.calc.alg() {
        return invalid("calculus and prolongation over different algebras");
    }
    let f = alg.field();
    let top = up.max_degree();
    let u = &up.calc;
    let id_u = |n: usize| Mat::identity(f, u.dim(n));

    let mut projections = vec![alg.identity_map()];
    let mut sections = vec![alg.identity_map()];
    let mut relations = vec![Mat::zeros(f, alg.dim(), 0)];
    if top >= 1 {
        let f1 = induced_map(&up.universal, c)?.map.matrix().clone();
        sections.push(f1.right_inverse()?);
        relations.push(f1.kernel_basis());
        projections.push(f1);
    }
    for n in 2..=top {
        let mut parts = Vec::new();
        for i in 1..n {
            let j = n - i;
            let w = u.wedge(i, j);
            parts.push(w.mul(&relations[i].kron(&id_u(j))));
            parts.push(w.mul(&id_u(i).kron(&relations[j])));
        }
        parts.push(u.diff(n - 1).mul(&relations[n - 1]));
        let refs: Vec<&Mat<F>> = parts.iter().collect();
        let s = span_sum(f, u.dim(n), &refs);
        let cok = Mat::complement_of_span(&s);
        projections.push(cok.projection);
        sections.push(cok.section);
        relations.push(s);
    }

    for i in 0..=top {
        for j in 0..=top - i {
            let w = u.wedge(i, j);
            let killed = projections[i + j].mul(w);
            let ok = killed.mul(&relations[i].kron(&id_u(j))).is_zero()
                && killed.mul(&id_u(i).kron(&relations[j])).is_zero();
            ensure(ok, || format!("wedge ({i},{j}) does not descend to the quotient"))?;
        }
    }
    for n in 0..top {
        let ok = projections[n + 1].mul(u.diff(n)).mul(&relations[n]).is_zero();
        ensure(ok, || format!("d^{n} does not descend to the quotient"))?;
    }

    let dims: Vec<usize> = projections.iter().map(|p| p.rows()).collect();
    let mut wedge = BTreeMap::new();
    for i in 0..=top {
        for j in 0..=top - i {
            let w = projections[i + j].mul(u.wedge(i, j)).mul(&sections[i].kron(&sections[j]));
            wedge.insert((i, j), w);
        }
    }
    let diff = (0..top).map(|n| projections[n + 1].mul(u.diff(n)).mul(&sections[n])).collect();
    let calc = GradedCalculus::new_unchecked(alg.clone(), dims, wedge, diff)?;
    Ok(MaximalProlongation { calc, projections, relations })
}

/// `A`, `Ω_d`, then zero in every higher degree.
pub fn trivial_extension<F: Field>(c: &FirstOrderCalculus<F>, max_degree: usize) -> Result<GradedCalculus<F>> {
    let alg = c.alg();
    let f = alg.field();
    let mut dims = vec![alg.dim()];
    if max_degree >= 1 {
        dims.push(c.dim());
    }
    dims.extend(std::iter::repeat_n(0, max_degree.saturating_sub(1)));
    let mut wedge = BTreeMap::new();
    for i in 0..=max_degree {
        for j in 0..=max_degree - i {
            let w = match (i, j) {
                (0, 0) => alg.mult().clone(),
                (0, 1) => c.omega().left().clone(),
                (1, 0) => c.omega().right().clone(),
                _ => Mat::zeros(f, dims[i + j], dims[i] * dims[j]),
            };
            wedge.insert((i, j), w);
        }
    }
    let diff = (0..max_degree)
        .map(|n| if n == 0 { c.d().clone() } else { Mat::zeros(f, dims[n + 1], dims[n]) })
        .collect();
    GradedCalculus::new_unchecked(alg.clone(), dims, wedge, diff)
}

/// The unique dg morphism `src → tgt` extending `f0`, if it exists:
/// `fⁿ = P_tgtⁿ ∘ f0^{⊗ n+1} ∘ (P_srcⁿ)⁺`, defined when `ker P_srcⁿ` is
/// killed by `P_tgtⁿ ∘ f0^{⊗ n+1}`.
pub fn unique_dg_morphism<F: Field>(
    src: &GradedCalculus<F>,
    tgt: &GradedCalculus<F>,
    f0: &AlgMap<F>,
) -> Result<Option<Vec<Mat<F>>>> {
    if f0.source() != src.alg() || f0.target() != tgt.alg() {
        return invalid("degree 0 map does not match the calculi");
    }
    let fr = f0.check();
    if !fr.is_ok() {
        return invalid(format!("not an algebra map: {fr}"));
    }
    let top = src.max_degree().min(tgt.max_degree());
    let mut power = f0.matrix().clone();
    let mut maps = Vec::with_capacity(top + 1);
    for n in 0..=top {
        if n > 0 {
            power = power.kron(f0.matrix());
        }
        let ps = src.generation(n);
        let pushed = tgt.generation(n).mul(&power);
        if !pushed.mul(&ps.kernel_basis()).is_zero() {
            return Ok(None);
        }
        maps.push(pushed.mul(&ps.right_inverse()?));
    }
    for n in 0..top {
        ensure(
            maps[n + 1].mul(src.diff(n)) == tgt.diff(n).mul(&maps[n]),
            || format!("induced map does not commute with d^{n}"),
        )?;
    }
    for i in 0..=top {
        for j in 0..=top - i {
            ensure(
                maps[i + j].mul(src.wedge(i, j)) == tgt.wedge(i, j).mul(&maps[i].kron(&maps[j])),
                || format!("induced map does not preserve the wedge ({i},{j})"),
            )?;
        }
    }
    Ok(Some(maps))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationPair {
    pub calculus_index: usize,
    pub graded_index: usize,
    /// A dg map `Ω_{d,max} → Θ` exists.
    pub from_maximal: bool,
    /// A calculus map `(A, Ω_d) → π(Θ)` exists.
    pub to_truncation: bool,
    /// A dg map `Θ → Ω_{d,0}` exists.
    pub to_trivial: bool,
    /// A calculus map `π(Θ) → (A, Ω_d)` exists.
    pub from_truncation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    pub pairs: Vec<TruncationPair>,
}

impl TruncationReport {
    pub fn mismatches(&self) -> Vec<&TruncationPair> {
        self.pairs
            .iter()
            .filter(|p| p.from_maximal != p.to_truncation || p.to_trivial != p.from_truncation)
            .collect()
    }

    pub fn agrees(&self) -> bool {
        self.mismatches().is_empty()
    }
}

/// Compares both adjunctions around the truncation `π` pairwise on a probe.
pub fn truncation_adjoints_check<F: Field>(
    alg: &Algebra<F>,
    calculi: &[FirstOrderCalculus<F>],
    graded: &[GradedCalculus<F>],
    max_degree: usize,
) -> Result<TruncationReport> {
    let up = universal_prolongation(alg, max_degree)?;
    let id = AlgMap::identity(alg);
    let maximal: Vec<_> = calculi
        .iter()
        .map(|c| maximal_prolongation_from(&up, c).map(|m| m.calc))
        .collect::<Result<_>>()?;
    let trivial: Vec<_> = calculi.iter().map(|c| trivial_extension(c, max_degree)).collect::<Result<_>>()?;
    let truncated: Vec<_> = graded.iter().map(|g| g.truncate()).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for (i, c) in calculi.iter().enumerate() {
        for (j, g) in graded.iter().enumerate() {
            pairs.push(TruncationPair {
                calculus_index: i,
                graded_index: j,
                from_maximal: unique_dg_morphism(&maximal[i], g, &id)?.is_some(),
                to_truncation: calculus_morphism(c, &truncated[j])?.is_some(),
                to_trivial: unique_dg_morphism(g, &trivial[i], &id)?.is_some(),
                from_truncation: calculus_morphism(&truncated[j], c)?.is_some(),
            });
        }
    }
    Ok(TruncationReport { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::kahler::kahler_calculus;

    fn poly(n: usize) -> Algebra<Rationals> {
        Algebra::truncated_poly(&Rationals, n).unwrap()
    }

    #[test]
    fn amitsur_squares_to_zero() {
        for a in [Algebra::ground(&Rationals), poly(2), Algebra::cyclic_group(&Rationals, 2).unwrap()] {
            assert!(AmitsurComplex::new(&a, 3).square_violations().is_empty());
        }
        let k = AmitsurComplex::new(&Algebra::ground(&Rationals), 2);
        assert!(k.diffs[0].is_zero());
        assert!(k.diffs[1].is_identity());
    }

    #[test]
    fn universal_prolongation_of_dual_numbers() {
        let up = universal_prolongation(&poly(2), 4).unwrap();
        assert_eq!(up.calc.dims(), &[2, 2, 2, 2, 2]);
        assert!(up.calc.check().is_ok(), "{}", up.calc.check());
        assert!(up.differential_violations().is_empty());
        assert!(up.wedge_violations().is_empty());
        assert!(up.retraction_violations().is_empty());
    }

    #[test]
    fn universal_prolongation_of_cubic_truncation() {
        let up = universal_prolongation(&poly(3), 4).unwrap();
        assert_eq!(up.calc.dims(), &[3, 6, 12, 24, 48]);
        assert!(up.calc.check().is_ok(), "{}", up.calc.check());
        assert!(up.differential_violations().is_empty());
        assert!(up.wedge_violations().is_empty());
    }

    #[test]
    fn universal_prolongation_of_ground_field() {
        let up = universal_prolongation(&Algebra::ground(&Rationals), 3).unwrap();
        assert_eq!(up.calc.dims(), &[1, 0, 0, 0]);
        assert!(up.calc.check().is_ok());
    }

    #[test]
    fn maximal_prolongation_endpoints() {
        let a = poly(2);
        let up = universal_prolongation(&a, 3).unwrap();
        let m = maximal_prolongation_from(&up, &up.universal.calc).unwrap();
        assert_eq!(m.calc, up.calc);
        let z = maximal_prolongation_from(&up, &FirstOrderCalculus::zero(&a)).unwrap();
        assert_eq!(z.calc.dims(), &[2, 0, 0, 0]);
        assert!(z.calc.check().is_ok());
    }

    #[test]
    fn kahler_prolongation_is_valid() {
        let a = poly(3);
        let k = kahler_calculus(&a).unwrap().calc;
        let m = maximal_prolongation(&k, 3).unwrap();
        assert_eq!(m.calc.dims(), &[3, 2, 0, 0]);
        assert!(m.calc.check().is_ok(), "{}", m.calc.check());
        assert_eq!(m.calc.truncate().unwrap(), k);
    }

    #[test]
    fn dg_morphisms() {
        let a = poly(2);
        let up = universal_prolongation(&a, 3).unwrap();
        let id = AlgMap::identity(&a);
        let maps = unique_dg_morphism(&up.calc, &up.calc, &id).unwrap().unwrap();
        assert!(maps.iter().all(|m| m.is_identity()));
        let k = kahler_calculus(&a).unwrap();
        let mk = maximal_prolongation_from(&up, &k.calc).unwrap();
        let maps = unique_dg_morphism(&up.calc, &mk.calc, &id).unwrap().unwrap();
        assert_eq!(maps[1], k.projection);
        assert!(maps.iter().all(|m| m.rank() == m.rows()));
        let z = maximal_prolongation_from(&up, &FirstOrderCalculus::zero(&a)).unwrap();
        assert!(unique_dg_morphism(&z.calc, &up.calc, &id).unwrap().is_none());
    }

    #[test]
    fn trivial_extension_is_a_calculus() {
        let a = poly(3);
        let k = kahler_calculus(&a).unwrap().calc;
        let t = trivial_extension(&k, 3).unwrap();
        assert!(t.check().is_ok(), "{}", t.check());
        assert_eq!(t.dims(), &[3, 2, 0, 0]);
    }

    #[test]
    fn truncation_adjunctions_on_endpoints() {
        let a = poly(2);
        let up = universal_prolongation(&a, 2).unwrap();
        let calculi = vec![up.universal.calc.clone(), FirstOrderCalculus::zero(&a)];
        let graded = vec![up.calc.clone(), trivial_extension(&calculi[1], 2).unwrap()];
        let r = truncation_adjoints_check(&a, &calculi, &graded, 2).unwrap();
        assert!(r.agrees(), "{:?}", r.mismatches());
    }
}
