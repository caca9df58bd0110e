#![allow(dead_code)]

use std::path::PathBuf;

use diffcalc_core::io::AlgebraFile;
use diffcalc_core::linalg::span_sum;
use diffcalc_core::prolong::GradedCalculus;
use diffcalc_core::{Algebra, Field, Mat, Rationals};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> AlgebraFile {
    AlgebraFile::load(&fixture_path(name)).unwrap()
}

pub fn q_fixture(name: &str) -> Algebra<Rationals> {
    fixture(name).algebra(&Rationals).unwrap()
}

pub const Q_FIXTURES: [&str; 8] = ["q.json", "qx2.json", "qx3.json", "qx4.json", "qz2.json", "qz3.json", "qs3.json", "m2q.json"];

/// Tensors in `A^{⊗ n+1}` killed by every contraction `1 ⊗ m ⊗ 1` of two
/// neighbouring factors.
pub fn joint_contraction_kernel<F: Field>(a: &Algebra<F>, n: usize) -> Mat<F> {
    let f = a.field();
    let d = a.dim();
    let total = d.pow(n as u32 + 1);
    if n == 0 {
        return Mat::identity(f, total);
    }
    let faces: Vec<Mat<F>> = (0..n)
        .map(|i| {
            Mat::identity(f, d.pow(i as u32))
                .kron(a.mult())
                .kron(&Mat::identity(f, d.pow((n - 1 - i) as u32)))
        })
        .collect();
    let refs: Vec<&Mat<F>> = faces.iter().collect();
    Mat::vstack(f, total, &refs).kernel_basis()
}

/// Degree `n` part of the two-sided ideal of `g` generated by `gens[1]` in
/// degree 1 and `gens[2]` in degree 2.
pub fn ideal_part<F: Field>(g: &GradedCalculus<F>, gens: &[(usize, Mat<F>)], n: usize) -> Mat<F> {
    let f = g.field();
    let mut parts = Vec::new();
    for (k, gen) in gens {
        if *k > n {
            continue;
        }
        for i in 0..=n - k {
            let j = n - k - i;
            let left = g.wedge(i, *k).mul(&Mat::identity(f, g.dim(i)).kron(gen));
            let both = g.wedge(i + k, j).mul(&left.kron(&Mat::identity(f, g.dim(j))));
            parts.push(both);
        }
    }
    let refs: Vec<&Mat<F>> = parts.iter().collect();
    span_sum(f, g.dim(n), &refs)
}

/// `dim ker dⁿ − rank d^{n−1}` straight from ranks.
pub fn betti<F: Field>(diffs: &[Mat<F>], dims: &[usize], n: usize) -> usize {
    let kernel = dims[n] - diffs[n].rank();
    let image = if n == 0 { 0 } else { diffs[n - 1].rank() };
    kernel - image
}
