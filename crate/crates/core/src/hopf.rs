//! Bimonoids, Hopf modules, and the Hopf module structure of the universal calculus.
//!
//! Tensor products `A ⊗ M` and `M ⊗ A` carry the diagonal actions
//! `a·(h ⊗ x) = a₁h ⊗ a₂x` and `(h ⊗ x)·a = ha₁ ⊗ xa₂`; coactions of a Hopf
//! module are bimodule maps for these.

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::error::{ensure, invalid, Error, Result};
use crate::field::Field;
use crate::fodc::{induced_map, FirstOrderCalculus, UniversalCalculus};
use crate::linalg::Mat;
use crate::report::{decode_index, Report};

/// An algebra with comultiplication `δ: A → A ⊗ A` and counit `ε: A → k`
/// that are algebra maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimonoid<F: Field> {
    alg: Algebra<F>,
    comult: Mat<F>,
    counit: Mat<F>,
}

impl<F: Field> Bimonoid<F> {
    pub fn new(alg: Algebra<F>, comult: Mat<F>, counit: Mat<F>) -> Result<Self> {
        let h = Self::new_unchecked(alg, comult, counit)?;
        let report = h.check();
        if !report.is_ok() {
            return Err(Error::InvalidInput(format!("not a bimonoid: {report}")));
        }
        Ok(h)
    }

    pub fn new_unchecked(alg: Algebra<F>, comult: Mat<F>, counit: Mat<F>) -> Result<Self> {
        let n = alg.dim();
        if comult.shape() != (n * n, n) {
            return invalid(format!("comultiplication has shape {:?}", comult.shape()));
        }
        if counit.shape() != (1, n) {
            return invalid(format!("counit has shape {:?}", counit.shape()));
        }
        Ok(Self { alg, comult, counit })
    }

    /// `δ(e_i) = e_i ⊗ e_i`, `ε(e_i) = 1`, the structure of a group algebra.
    pub fn group_like(alg: &Algebra<F>) -> Result<Self> {
        let f = alg.field();
        let n = alg.dim();
        let mut comult = Mat::zeros(f, n * n, n);
        for i in 0..n {
            comult.set(i * n + i, i, f.one());
        }
        Self::new(alg.clone(), comult, Mat::from_fn(f, 1, n, |_, _| f.one()))
    }

    pub fn alg(&self) -> &Algebra<F> {
        &self.alg
    }

    pub fn comult(&self) -> &Mat<F> {
        &self.comult
    }

    pub fn counit(&self) -> &Mat<F> {
        &self.counit
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    pub fn check(&self) -> Report {
        let f = self.field();
        let n = self.alg.dim();
        let id = self.alg.identity_map();
        let (d, e) = (&self.comult, &self.counit);
        let mut report = Report::new();
        report.extend(self.alg.check());
        report.compare("coassociativity", &d.kron(&id).mul(d), &id.kron(d).mul(d), |c| vec![c]);
        report.compare("left counit", &e.kron(&id).mul(d), &id, |c| vec![c]);
        report.compare("right counit", &id.kron(e).mul(d), &id, |c| vec![c]);
        let m2 = tensor_square_mult(&self.alg);
        report.compare(
            "comultiplication is multiplicative",
            &d.mul(self.alg.mult()),
            &m2.mul(&d.kron(d)),
            |c| decode_index(c, &[n, n]),
        );
        let unit = self.alg.unit_map();
        report.compare("comultiplication preserves unit", &d.mul(&unit), &unit.kron(&unit), |c| vec![c]);
        report.compare(
            "counit is multiplicative",
            &e.mul(self.alg.mult()),
            &e.kron(e),
            |c| decode_index(c, &[n, n]),
        );
        report.compare("counit preserves unit", &e.mul(&unit), &Mat::identity(f, 1), |c| vec![c]);
        report
    }

    /// `A` as a Hopf module over itself with `λ = ρ = δ`.
    pub fn regular_hopf_module(&self) -> HopfModule<F> {
        HopfModule {
            bimodule: Bimodule::regular(&self.alg),
            lambda: self.comult.clone(),
            rho: self.comult.clone(),
        }
    }

    /// `a ⊗ b ↦ a₁b₁ ⊗ a₂ ⊗ b₂`.
    pub fn tensor_square_left_coaction(&self) -> Mat<F> {
        let f = self.field();
        let n = self.alg.dim();
        let id = self.alg.identity_map();
        self.alg
            .mult()
            .kron(&Mat::identity(f, n * n))
            .mul(&id.kron(&Mat::swap(f, n, n)).kron(&id))
            .mul(&self.comult.kron(&self.comult))
    }

    /// `a ⊗ b ↦ a₁ ⊗ b₁ ⊗ a₂b₂`.
    pub fn tensor_square_right_coaction(&self) -> Mat<F> {
        let f = self.field();
        let n = self.alg.dim();
        let id = self.alg.identity_map();
        Mat::identity(f, n * n)
            .kron(self.alg.mult())
            .mul(&id.kron(&Mat::swap(f, n, n)).kron(&id))
            .mul(&self.comult.kron(&self.comult))
    }

    /// `A ⊗ A` with the outer actions and the two coactions above.
    pub fn tensor_square_hopf_module(&self) -> HopfModule<F> {
        HopfModule {
            bimodule: Bimodule::outer_tensor_square(&self.alg),
            lambda: self.tensor_square_left_coaction(),
            rho: self.tensor_square_right_coaction(),
        }
    }
}

/// Multiplication of the algebra `A ⊗ A`.
fn tensor_square_mult<F: Field>(a: &Algebra<F>) -> Mat<F> {
    let f = a.field();
    let n = a.dim();
    let id = a.identity_map();
    a.mult().kron(a.mult()).mul(&id.kron(&Mat::swap(f, n, n)).kron(&id))
}

/// An `A`-bimodule with a left coaction `λ: M → A ⊗ M` and a right coaction
/// `ρ: M → M ⊗ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfModule<F: Field> {
    pub bimodule: Bimodule<F>,
    pub lambda: Mat<F>,
    pub rho: Mat<F>,
}

impl<F: Field> HopfModule<F> {
    pub fn dim(&self) -> usize {
        self.bimodule.dim()
    }
}

/// Diagonal left action `A ⊗ (A ⊗ M) → A ⊗ M`.
fn diagonal_left_on_am<F: Field>(h: &Bimonoid<F>, m: &Bimodule<F>) -> Mat<F> {
    let f = h.field();
    let (n, k) = (h.alg.dim(), m.dim());
    h.alg
        .mult()
        .kron(m.left())
        .mul(&Mat::identity(f, n).kron(&Mat::swap(f, n, n)).kron(&Mat::identity(f, k)))
        .mul(&h.comult.kron(&Mat::identity(f, n * k)))
}

/// Diagonal right action `(A ⊗ M) ⊗ A → A ⊗ M`.
fn diagonal_right_on_am<F: Field>(h: &Bimonoid<F>, m: &Bimodule<F>) -> Mat<F> {
    let f = h.field();
    let (n, k) = (h.alg.dim(), m.dim());
    h.alg
        .mult()
        .kron(m.right())
        .mul(&Mat::identity(f, n).kron(&Mat::swap(f, k, n)).kron(&Mat::identity(f, n)))
        .mul(&Mat::identity(f, n * k).kron(&h.comult))
}

/// Diagonal left action `A ⊗ (M ⊗ A) → M ⊗ A`.
fn diagonal_left_on_ma<F: Field>(h: &Bimonoid<F>, m: &Bimodule<F>) -> Mat<F> {
    let f = h.field();
    let (n, k) = (h.alg.dim(), m.dim());
    m.left()
        .kron(h.alg.mult())
        .mul(&Mat::identity(f, n).kron(&Mat::swap(f, n, k)).kron(&Mat::identity(f, n)))
        .mul(&h.comult.kron(&Mat::identity(f, k * n)))
}

/// Diagonal right action `(M ⊗ A) ⊗ A → M ⊗ A`.
fn diagonal_right_on_ma<F: Field>(h: &Bimonoid<F>, m: &Bimodule<F>) -> Mat<F> {
    let f = h.field();
    let (n, k) = (h.alg.dim(), m.dim());
    m.right()
        .kron(h.alg.mult())
        .mul(&Mat::identity(f, k).kron(&Mat::swap(f, n, n)).kron(&Mat::identity(f, n)))
        .mul(&Mat::identity(f, k * n).kron(&h.comult))
}

/// Bimodule, bicomodule and compatibility axioms, with witnesses.
pub fn check_hopf_module<F: Field>(h: &Bimonoid<F>, m: &HopfModule<F>) -> Result<Report> {
    let b = &m.bimodule;
    if b.left_alg() != &h.alg || b.right_alg() != &h.alg {
        return invalid("Hopf module is not over the bimonoid's algebra");
    }
    let (n, k) = (h.alg.dim(), b.dim());
    if m.lambda.shape() != (n * k, k) || m.rho.shape() != (k * n, k) {
        return invalid("coaction shapes do not match");
    }
    let id_a = h.alg.identity_map();
    let id_m = b.identity_map();
    let (l, r, d, e) = (&m.lambda, &m.rho, &h.comult, &h.counit);
    let mut report = b.check();
    report.compare("left coassociativity", &d.kron(&id_m).mul(l), &id_a.kron(l).mul(l), |c| vec![c]);
    report.compare("left counit", &e.kron(&id_m).mul(l), &id_m, |c| vec![c]);
    report.compare("right coassociativity", &r.kron(&id_a).mul(r), &id_m.kron(d).mul(r), |c| vec![c]);
    report.compare("right counit", &id_m.kron(e).mul(r), &id_m, |c| vec![c]);
    report.compare("coaction compatibility", &l.kron(&id_a).mul(r), &id_a.kron(r).mul(l), |c| vec![c]);

    let pair = |c| decode_index(c, &[n, k]);
    let pair_r = |c| decode_index(c, &[k, n]);
    report.compare(
        "left coaction is left linear",
        &l.mul(b.left()),
        &diagonal_left_on_am(h, b).mul(&id_a.kron(l)),
        pair,
    );
    report.compare(
        "left coaction is right linear",
        &l.mul(b.right()),
        &diagonal_right_on_am(h, b).mul(&l.kron(&id_a)),
        pair_r,
    );
    report.compare(
        "right coaction is left linear",
        &r.mul(b.left()),
        &diagonal_left_on_ma(h, b).mul(&id_a.kron(r)),
        pair,
    );
    report.compare(
        "right coaction is right linear",
        &r.mul(b.right()),
        &diagonal_right_on_ma(h, b).mul(&r.kron(&id_a)),
        pair_r,
    );
    Ok(report)
}

/// `Ω¹_u` as a Hopf module over a bimonoid.
#[derive(Clone, Debug)]
pub struct UniversalCoactions<F: Field> {
    pub bimonoid: Bimonoid<F>,
    pub universal: UniversalCalculus<F>,
    pub module: HopfModule<F>,
}

/// `ρ_u = ((1·d) ⊗ 1) ∘ ρ_{A⊗A} ∘ ι` and `λ_u = (1 ⊗ (1·d)) ∘ λ_{A⊗A} ∘ ι`.
pub fn universal_coactions<F: Field>(h: &Bimonoid<F>) -> Result<UniversalCoactions<F>> {
    let report = h.check();
    if !report.is_ok() {
        return Err(Error::Precondition(format!("not a bimonoid: {report}")));
    }
    let u = UniversalCalculus::new(&h.alg)?;
    let id = h.alg.identity_map();
    let p = &u.retraction;
    let rho = p.kron(&id).mul(&h.tensor_square_right_coaction()).mul(&u.iota);
    let lambda = id.kron(p).mul(&h.tensor_square_left_coaction()).mul(&u.iota);
    let module = HopfModule { bimodule: u.calc.omega().clone(), lambda, rho };
    let out = UniversalCoactions { bimonoid: h.clone(), universal: u, module };
    let (left, right) = out.iota_intertwines();
    ensure(left && right, || "ι does not intertwine the coactions".into())?;
    Ok(out)
}

impl<F: Field> UniversalCoactions<F> {
    /// `(1 ⊗ ι) λ_u = λ_{A⊗A} ι` and `(ι ⊗ 1) ρ_u = ρ_{A⊗A} ι`.
    pub fn iota_intertwines(&self) -> (bool, bool) {
        let h = &self.bimonoid;
        let id = h.alg.identity_map();
        let iota = &self.universal.iota;
        let left = id.kron(iota).mul(&self.module.lambda) == h.tensor_square_left_coaction().mul(iota);
        let right = iota.kron(&id).mul(&self.module.rho) == h.tensor_square_right_coaction().mul(iota);
        (left, right)
    }

    /// `λ_u d = (1 ⊗ d) δ` and `ρ_u d = (d ⊗ 1) δ`.
    pub fn d_is_comodule_map(&self) -> (bool, bool) {
        let h = &self.bimonoid;
        let id = h.alg.identity_map();
        let d = self.universal.calc.d();
        let left = self.module.lambda.mul(d) == id.kron(d).mul(&h.comult);
        let right = self.module.rho.mul(d) == d.kron(&id).mul(&h.comult);
        (left, right)
    }

    /// `(m ⊗ i ⊗ 1) ∘ ρ_{A⊗A} ∘ ι`, which vanishes.
    pub fn right_defect(&self) -> Mat<F> {
        let h = &self.bimonoid;
        h.alg
            .mult()
            .kron(&h.alg.unit_map())
            .kron(&h.alg.identity_map())
            .mul(&h.tensor_square_right_coaction())
            .mul(&self.universal.iota)
    }

    /// The left coaction built with `d·1` in place of `1·d`, which is `−λ_u`.
    pub fn left_coaction_via_right_d(&self) -> Mat<F> {
        let h = &self.bimonoid;
        let id = h.alg.identity_map();
        let rd = self.universal.calc.right_d();
        id.kron(&rd).mul(&h.tensor_square_left_coaction()).mul(&self.universal.iota)
    }
}

#[derive(Clone, Debug)]
pub struct BicovarianceReport<F: Field> {
    pub bicovariant: bool,
    /// Canonical basis of `N = ker(Ω¹_u ↠ Ω)`.
    pub relations: Mat<F>,
    /// First basis vector of `N` with `λ_u(n) ∉ A ⊗ N`.
    pub left_witness: Option<usize>,
    /// First basis vector of `N` with `ρ_u(n) ∉ N ⊗ A`.
    pub right_witness: Option<usize>,
    /// Induced coactions on the calculus, when bicovariant.
    pub module: Option<HopfModule<F>>,
    /// Hopf module axioms and the comodule property of `d` on the quotient.
    pub quotient_report: Option<Report>,
}

fn first_escape<F: Field>(span: &Mat<F>, images: &Mat<F>) -> Option<usize> {
    let rank = span.rank();
    (0..images.cols()).find(|&c| {
        Mat::hstack(span.field(), span.rows(), &[span, &images.select_cols(&[c])]).rank() > rank
    })
}

/// Whether `N = ker(Ω¹_u ↠ Ω_c)` is a subcomodule for both universal coactions.
pub fn bicovariance_check<F: Field>(h: &Bimonoid<F>, c: &FirstOrderCalculus<F>) -> Result<BicovarianceReport<F>> {
    if c.alg() != &h.alg {
        return invalid("calculus is not over the bimonoid's algebra");
    }
    let uc = universal_coactions(h)?;
    bicovariance_with(&uc, c)
}

pub fn bicovariance_with<F: Field>(uc: &UniversalCoactions<F>, c: &FirstOrderCalculus<F>) -> Result<BicovarianceReport<F>> {
    let h = &uc.bimonoid;
    let q = induced_map(&uc.universal, c)?.map.matrix().clone();
    let relations = q.kernel_basis();
    let id = h.alg.identity_map();
    let m = &uc.module;
    let left_witness = first_escape(&id.kron(&relations), &m.lambda.mul(&relations));
    let right_witness = first_escape(&relations.kron(&id), &m.rho.mul(&relations));
    let bicovariant = left_witness.is_none() && right_witness.is_none();
    let mut report = BicovarianceReport {
        bicovariant,
        relations,
        left_witness,
        right_witness,
        module: None,
        quotient_report: None,
    };
    if bicovariant {
        let s = q.right_inverse()?;
        let lambda = id.kron(&q).mul(&m.lambda).mul(&s);
        let rho = q.kron(&id).mul(&m.rho).mul(&s);
        let module = HopfModule { bimodule: c.omega().clone(), lambda, rho };
        let mut qr = check_hopf_module(h, &module)?;
        let d = c.d();
        qr.compare("d is a left comodule map", &module.lambda.mul(d), &id.kron(d).mul(&h.comult), |c| vec![c]);
        qr.compare("d is a right comodule map", &module.rho.mul(d), &d.kron(&id).mul(&h.comult), |c| vec![c]);
        qr.compare("projection is left colinear", &module.lambda.mul(&q), &id.kron(&q).mul(&m.lambda), |c| vec![c]);
        qr.compare("projection is right colinear", &module.rho.mul(&q), &q.kron(&id).mul(&m.rho), |c| vec![c]);
        report.module = Some(module);
        report.quotient_report = Some(qr);
    }
    Ok(report)
}
