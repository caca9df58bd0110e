//! Cochain complexes, cohomology and de Rham theory of prolongations.

use crate::algebra::{AlgMap, Algebra};
use crate::error::{ensure, invalid, Error, Result};
use crate::field::Field;
use crate::kahler::{kahler_from_universal, require_commutative};
use crate::linalg::Mat;
use crate::prolong::{maximal_prolongation_from, universal_prolongation, unique_dg_morphism, GradedCalculus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex<F: Field> {
    dims: Vec<usize>,
    diffs: Vec<Mat<F>>,
}

impl<F: Field> CochainComplex<F> {
    /// `diffs[n]: C^n → C^{n+1}`; `dims` has one more entry than `diffs`.
    pub fn new(dims: Vec<usize>, diffs: Vec<Mat<F>>) -> Result<Self> {
        if dims.len() != diffs.len() + 1 {
            return invalid(format!("{} components need {} differentials", dims.len(), dims.len() - 1));
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[n + 1], dims[n]) {
                return invalid(format!("d^{n} has shape {:?}, expected ({}, {})", d.shape(), dims[n + 1], dims[n]));
            }
        }
        for n in 0..diffs.len().saturating_sub(1) {
            if !diffs[n + 1].mul(&diffs[n]).is_zero() {
                return invalid(format!("d∘d ≠ 0 in degree {n}"));
            }
        }
        Ok(Self { dims, diffs })
    }

    pub fn of_calculus(g: &GradedCalculus<F>) -> Self {
        Self { dims: g.dims().to_vec(), diffs: g.diffs().to_vec() }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn diffs(&self) -> &[Mat<F>] {
        &self.diffs
    }

    /// Number of degrees with a defined cohomology, `0..top`.
    pub fn top(&self) -> usize {
        self.diffs.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology<F: Field> {
    pub n: usize,
    pub dim_omega: usize,
    pub dim_h: usize,
    pub boundary_rank: usize,
    /// Cycles whose classes form a basis of `Hⁿ`, one per column.
    pub representatives: Mat<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport<F: Field> {
    pub degrees: Vec<DegreeCohomology<F>>,
}

impl<F: Field> CohomologyReport<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim_h).collect()
    }

    /// Coordinates of the class of a cycle `z` in degree `n`, in the basis
    /// of representatives.
    pub fn class_of(&self, complex: &CochainComplex<F>, n: usize, z: &Mat<F>) -> Result<Mat<F>> {
        let deg = &self.degrees[n];
        let f = z.field();
        let boundaries = boundaries(complex, n, f);
        let joint = Mat::hstack(f, deg.dim_omega, &[&deg.representatives, &boundaries]);
        let sol = joint
            .solve(z)?
            .ok_or_else(|| Error::InvalidInput(format!("not a cycle in degree {n}")))?;
        Ok(sol.select_rows(&(0..deg.dim_h).collect::<Vec<_>>()))
    }
}

fn boundaries<F: Field>(c: &CochainComplex<F>, n: usize, f: &F) -> Mat<F> {
    if n == 0 {
        Mat::zeros(f, c.dims[0], 0)
    } else {
        c.diffs[n - 1].image_basis()
    }
}

/// `Hⁿ = ker dⁿ / im d^{n−1}` wherever `dⁿ` is defined, with `d^{−1} = 0`.
///
/// Representatives are picked greedily from the canonical kernel basis,
/// so they depend only on the complex.
pub fn cohomology<F: Field>(c: &CochainComplex<F>, f: &F) -> CohomologyReport<F> {
    let degrees = (0..c.top())
        .map(|n| {
            let cycles = c.diffs[n].kernel_basis();
            let bounds = boundaries(c, n, f);
            let mut span = bounds.clone();
            let mut picked = Vec::new();
            for j in 0..cycles.cols() {
                let col = Mat::column_vector(f, cycles.column(j));
                let trial = Mat::hstack(f, c.dims[n], &[&span, &col]);
                if trial.rank() > span.cols() {
                    span = trial;
                    picked.push(j);
                }
            }
            let representatives = cycles.select_cols(&picked);
            DegreeCohomology {
                n,
                dim_omega: c.dims[n],
                dim_h: representatives.cols(),
                boundary_rank: bounds.cols(),
                representatives,
            }
        })
        .collect();
    CohomologyReport { degrees }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Universal,
    Kahler,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Universal => "universal",
            Self::Kahler => "kahler",
        }
    }
}

/// The de Rham complex of a calculus up to degree `N`, with its cohomology
/// in degrees `0..N`.
#[derive(Clone, Debug)]
pub struct DeRham<F: Field> {
    pub calc: GradedCalculus<F>,
    pub complex: CochainComplex<F>,
    pub cohomology: CohomologyReport<F>,
}

pub fn de_rham<F: Field>(a: &Algebra<F>, flavor: Flavor, n: usize) -> Result<DeRham<F>> {
    if flavor == Flavor::Kahler {
        require_commutative(a)?;
    }
    let up = universal_prolongation(a, n)?;
    let calc = match flavor {
        Flavor::Universal => up.calc,
        Flavor::Kahler => {
            let k = kahler_from_universal(&up.universal)?;
            maximal_prolongation_from(&up, &k.calc)?.calc
        }
    };
    Ok(de_rham_of(calc))
}

pub fn de_rham_of<F: Field>(calc: GradedCalculus<F>) -> DeRham<F> {
    let complex = CochainComplex::of_calculus(&calc);
    // H^N would need d^N, which lies outside the window.
    let cohomology = cohomology(&complex, calc.field());
    DeRham { calc, complex, cohomology }
}

/// The comparison from universal to Kähler de Rham cohomology.
#[derive(Clone, Debug)]
pub struct Comparison<F: Field> {
    pub universal: DeRham<F>,
    pub kahler: DeRham<F>,
    /// The dg surjection `Ωⁿ_u ↠ Ωⁿ_K` in every degree.
    pub chain_map: Vec<Mat<F>>,
    /// `Hⁿ(universal) → Hⁿ(Kähler)` in the chosen representatives.
    pub maps: Vec<Mat<F>>,
}

pub fn de_rham_comparison<F: Field>(a: &Algebra<F>, n: usize) -> Result<Comparison<F>> {
    require_commutative(a)?;
    let up = universal_prolongation(a, n)?;
    let k = kahler_from_universal(&up.universal)?;
    let mk = maximal_prolongation_from(&up, &k.calc)?;
    let chain_map = unique_dg_morphism(&up.calc, &mk.calc, &AlgMap::identity(a))?
        .ok_or_else(|| Error::Verification("no dg map from the universal prolongation".into()))?;
    let universal = de_rham_of(up.calc);
    let kahler = de_rham_of(mk.calc);
    let maps = induced_on_cohomology(&universal, &kahler, &chain_map)?;
    Ok(Comparison { universal, kahler, chain_map, maps })
}

/// The maps on cohomology induced by a degreewise chain map.
pub fn induced_on_cohomology<F: Field>(src: &DeRham<F>, tgt: &DeRham<F>, chain: &[Mat<F>]) -> Result<Vec<Mat<F>>> {
    let sc = CochainComplex::of_calculus(&src.calc);
    let tc = CochainComplex::of_calculus(&tgt.calc);
    let top = sc.top().min(tc.top()).min(chain.len().saturating_sub(1));
    for n in 0..top {
        ensure(chain[n + 1].mul(&sc.diffs[n]) == tc.diffs[n].mul(&chain[n]), || {
            format!("not a cochain map in degree {n}")
        })?;
    }
    let count = src.cohomology.degrees.len().min(tgt.cohomology.degrees.len());
    (0..count)
        .map(|n| {
            let image = chain[n].mul(&src.cohomology.degrees[n].representatives);
            tgt.cohomology.class_of(&tc, n, &image)
        })
        .collect()
}
