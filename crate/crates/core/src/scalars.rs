//! Moving calculi along algebra maps, and the square-zero description of derivations.

use crate::algebra::{AlgMap, Algebra};
use crate::bimodule::{BimodMap, Bimodule};
use crate::error::{ensure, invalid, Result};
use crate::field::Field;
use crate::fodc::{calculus_morphism, induced_map, morphism_constraints, FirstOrderCalculus, UniversalCalculus};
use crate::linalg::Mat;
use crate::report::Report;

/// `f_u = (f ⊗ f)|: Ω¹_u(A) → Ω¹_u(B)`, a map of `A`-bimodules into the
/// restriction of `Ω¹_u(B)`.
pub fn f_u<F: Field>(f: &AlgMap<F>, ua: &UniversalCalculus<F>, ub: &UniversalCalculus<F>) -> Result<Mat<F>> {
    if f.source() != ua.alg() || f.target() != ub.alg() {
        return invalid("universal calculi do not match the map");
    }
    let ff = f.matrix().kron(f.matrix());
    let m = ub.retraction.mul(&ff).mul(&ua.iota);
    ensure(ub.iota.mul(&m) == ff.mul(&ua.iota), || "f⊗f does not preserve the kernel of m".into())?;
    Ok(m)
}

/// Checks `f_u` against both action tensors of the restricted target.
pub fn f_u_is_bimodule_map<F: Field>(
    f: &AlgMap<F>,
    ua: &UniversalCalculus<F>,
    ub: &UniversalCalculus<F>,
) -> Result<Report> {
    let m = f_u(f, ua, ub)?;
    let restricted = ub.calc.omega().restrict(f, f)?;
    Ok(BimodMap::new_unchecked(ua.calc.omega().clone(), restricted, m)?.check())
}

/// `F_!c` or `F*t` with the relations it is cut out by.
#[derive(Clone, Debug)]
pub struct TransportedCalculus<F: Field> {
    pub calc: FirstOrderCalculus<F>,
    /// Canonical basis of the kernel of `Ω¹_u ↠ calc`.
    pub relations: Mat<F>,
}

fn kernel_in_universal<F: Field>(u: &UniversalCalculus<F>, c: &FirstOrderCalculus<F>) -> Result<Mat<F>> {
    Ok(induced_map(u, c)?.map.matrix().kernel_basis())
}

/// Pushforward along `f: A → B`: the pushout of `Ext(Ω¹_u(A)) ↠ Ext(Ω_c)`
/// against `f̂_u: Ext(Ω¹_u(A)) → Ω¹_u(B)`.
pub fn calc_pushforward<F: Field>(f: &AlgMap<F>, c: &FirstOrderCalculus<F>) -> Result<TransportedCalculus<F>> {
    let fr = f.check();
    if !fr.is_ok() {
        return invalid(format!("not an algebra map: {fr}"));
    }
    if c.alg() != f.source() {
        return invalid("calculus is not over the source of the map");
    }
    let (a, b) = (f.source(), f.target());
    let ua = UniversalCalculus::new(a)?;
    let ub = UniversalCalculus::new(b)?;
    let fu = f_u(f, &ua, &ub)?;
    let n_a = kernel_in_universal(&ua, c)?;

    let ext = ua.calc.omega().extend(f, f)?;
    let omega_b = ub.calc.omega();
    let id_b = b.identity_map();
    // b ⊗ ω ⊗ b' ↦ b·f_u(ω)·b'
    let act = omega_b.left().mul(&id_b.kron(omega_b.right()));
    let ambient = act.mul(&id_b.kron(&fu).kron(&id_b));
    ensure(ambient.mul(&ext.quotient.kernel_basis()).is_zero(), || "f̂_u is not defined on the extension".into())?;
    let f_hat = ambient.mul(&ext.quotient.right_inverse()?);

    let ext_n = ext.quotient.mul(&id_b.kron(&n_a).kron(&id_b));
    let relations = f_hat.mul(&ext_n).image_basis();
    let q = ub.calc.quotient(&relations)?;
    Ok(TransportedCalculus { calc: q.calc, relations })
}

/// Pullback along `f: A → B`: `Ω¹_u(A)` modulo the preimage under `f_u` of
/// the relations of `t`.
pub fn calc_pullback<F: Field>(f: &AlgMap<F>, t: &FirstOrderCalculus<F>) -> Result<TransportedCalculus<F>> {
    let fr = f.check();
    if !fr.is_ok() {
        return invalid(format!("not an algebra map: {fr}"));
    }
    if t.alg() != f.target() {
        return invalid("calculus is not over the target of the map");
    }
    let ua = UniversalCalculus::new(f.source())?;
    let ub = UniversalCalculus::new(f.target())?;
    let fu = f_u(f, &ua, &ub)?;
    let to_t = induced_map(&ub, t)?.map.matrix().clone();
    let relations = to_t.mul(&fu).kernel_basis();
    let q = ua.calc.quotient(&relations)?;
    let back = induced_map(&ua, &q.calc)?.map.matrix().kernel_basis();
    ensure(back == relations, || "pullback relations differ from the kernel of the quotient".into())?;
    Ok(TransportedCalculus { calc: q.calc, relations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionPair {
    pub source_index: usize,
    pub target_index: usize,
    /// A morphism `F_!c → t` exists.
    pub pushed: bool,
    /// A morphism `c → F*t` exists.
    pub pulled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub pairs: Vec<AdjunctionPair>,
}

impl AdjunctionReport {
    pub fn mismatches(&self) -> Vec<&AdjunctionPair> {
        self.pairs.iter().filter(|p| p.pushed != p.pulled).collect()
    }

    pub fn agrees(&self) -> bool {
        self.mismatches().is_empty()
    }
}

/// Compares `Hom(F_!c, t)` and `Hom(c, F*t)` for nonemptiness on every pair.
pub fn verify_poset_adjunction<F: Field>(
    f: &AlgMap<F>,
    cs: &[FirstOrderCalculus<F>],
    ts: &[FirstOrderCalculus<F>],
) -> Result<AdjunctionReport> {
    let pushed: Vec<_> = cs.iter().map(|c| calc_pushforward(f, c)).collect::<Result<_>>()?;
    let pulled: Vec<_> = ts.iter().map(|t| calc_pullback(f, t)).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        for (j, t) in ts.iter().enumerate() {
            pairs.push(AdjunctionPair {
                source_index: i,
                target_index: j,
                pushed: calculus_morphism(&pushed[i].calc, t)?.is_some(),
                pulled: calculus_morphism(c, &pulled[j].calc)?.is_some(),
            });
        }
    }
    Ok(AdjunctionReport { pairs })
}

/// An algebra map `h = (h₁, h₂): A → B ⊕ N` into a square-zero extension.
#[derive(Clone, Debug)]
pub struct SquareZeroProbe<F: Field> {
    pub h1: AlgMap<F>,
    pub n: Bimodule<F>,
    pub h2: Mat<F>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SquareZeroReport {
    /// `(1, d_u): A → A ⊕ Ω¹_u` is an algebra map.
    pub unit_is_algebra_map: bool,
    pub unit_violations: Report,
    /// Per probe: both round trips are identities.
    pub probes: Vec<bool>,
}

impl SquareZeroReport {
    pub fn is_ok(&self) -> bool {
        self.unit_is_algebra_map && self.probes.iter().all(|&b| b)
    }
}

/// Checks the unit `(1, d_u)` of the square-zero adjunction and the bijection
/// `h ↔ g` on each probe, where `g = (h₁·h₂)∘ι` and `h₂ = g∘d_u`.
pub fn square_zero_unit_check<F: Field>(a: &Algebra<F>, probes: &[SquareZeroProbe<F>]) -> Result<SquareZeroReport> {
    let u = UniversalCalculus::new(a)?;
    let sq = Algebra::square_zero(u.calc.omega())?;
    let unit_matrix = Mat::vstack(a.field(), a.dim(), &[&a.identity_map(), u.calc.d()]);
    let unit_violations = AlgMap::new_unchecked(a.clone(), sq, unit_matrix)?.check();
    let mut report = SquareZeroReport {
        unit_is_algebra_map: unit_violations.is_ok(),
        unit_violations,
        probes: Vec::new(),
    };
    for p in probes {
        report.probes.push(probe_round_trip(&u, p)?);
    }
    Ok(report)
}

fn probe_round_trip<F: Field>(u: &UniversalCalculus<F>, p: &SquareZeroProbe<F>) -> Result<bool> {
    let a = u.alg();
    if p.h1.source() != a || p.n.left_alg() != p.h1.target() || p.n.right_alg() != p.h1.target() {
        return invalid("probe does not map the algebra into a square-zero extension");
    }
    let sq = Algebra::square_zero(&p.n)?;
    let h = Mat::vstack(a.field(), a.dim(), &[p.h1.matrix(), &p.h2]);
    if !AlgMap::new_unchecked(a.clone(), sq, h)?.check().is_ok() {
        return invalid("probe is not an algebra map");
    }
    let lift = |h2: &Mat<F>| p.n.left().mul(&p.h1.matrix().kron(h2)).mul(&u.iota);
    let g = lift(&p.h2);
    let restricted = p.n.restrict(&p.h1, &p.h1)?;
    let g_is_map = BimodMap::new_unchecked(u.calc.omega().clone(), restricted, g.clone())?.check().is_ok();
    let h2_back = g.mul(u.calc.d());
    let g_back = lift(&h2_back);
    Ok(g_is_map && h2_back == p.h2 && g_back == g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointReport {
    /// Per member: exactly one morphism from the universal calculus.
    pub from_universal: Vec<bool>,
    /// Per member: exactly one morphism to the zero calculus.
    pub to_zero: Vec<bool>,
}

impl EndpointReport {
    pub fn is_ok(&self) -> bool {
        self.from_universal.iter().chain(&self.to_zero).all(|&b| b)
    }
}

/// Initiality of `Ω¹_u` and terminality of `0` within a family of calculi on `A`.
pub fn calc1_category_adjoints_check<F: Field>(
    a: &Algebra<F>,
    family: &[FirstOrderCalculus<F>],
) -> Result<EndpointReport> {
    let u = UniversalCalculus::new(a)?;
    let zero = FirstOrderCalculus::zero(a);
    let unique = |s: &FirstOrderCalculus<F>, t: &FirstOrderCalculus<F>| -> Result<bool> {
        Ok(calculus_morphism(s, t)?.is_some() && morphism_constraints(s, t).kernel_basis().cols() == 0)
    };
    let mut report = EndpointReport { from_universal: Vec::new(), to_zero: Vec::new() };
    for c in family {
        report.from_universal.push(unique(&u.calc, c)?);
        report.to_zero.push(unique(c, &zero)?);
    }
    Ok(report)
}
