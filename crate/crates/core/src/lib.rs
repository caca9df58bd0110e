//! Exact computation of differential calculi over finite-dimensional
//! algebras over ℚ and GF(p).

pub mod algebra;
pub mod bimodule;
pub mod derham;
pub mod error;
pub mod field;
pub mod fodc;
pub mod hopf;
pub mod io;
pub mod kahler;
pub mod linalg;
pub mod prolong;
pub mod report;
pub mod scalars;

pub use algebra::{AlgMap, Algebra};
pub use bimodule::{BimodMap, Bimodule};
pub use derham::{cohomology, de_rham, de_rham_comparison, CochainComplex, CohomologyReport, Flavor};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use fodc::{FirstOrderCalculus, UniversalCalculus};
pub use hopf::Bimonoid;
pub use kahler::kahler_calculus;
pub use linalg::Mat;
pub use prolong::{maximal_prolongation, universal_prolongation, GradedCalculus};
pub use report::Report;

pub type QMat = Mat<Rationals>;
pub type QAlgebra = Algebra<Rationals>;
pub type QBimodule = Bimodule<Rationals>;
pub type QCalculus = FirstOrderCalculus<Rationals>;
pub type FpMat = Mat<PrimeField>;
pub type FpAlgebra = Algebra<PrimeField>;
pub type FpBimodule = Bimodule<PrimeField>;
pub type FpCalculus = FirstOrderCalculus<PrimeField>;
