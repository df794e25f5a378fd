//! Eventual images of endomorphisms in categories with a factorization
//! system of finite type.
//!
//! For an endomorphism `f: X → X` the eventual image `E` sits inside `X` as
//! `⋂ im fⁿ` and is also a quotient of `X`; `f` restricts to an automorphism
//! of `E`, and `X ↠ E ↣ X` is the eventual idempotent `f^∞`. The crate
//! computes all of this exactly in four categories:
//!
//! * [`finset::FinSet`]: finite sets, surjections and injections;
//! * [`fdvect::FdVect`]: finite-dimensional vector spaces over an exact field;
//! * [`finmet::FinMet`]: finite metric spaces with distance-decreasing maps;
//! * [`finposet::FinPoset`]: finite posets with monotone maps.
//!
//! The generic algorithms live in [`algorithms`], property checks in
//! [`checks`] and brute-force oracles in [`oracles`].

pub mod algorithms;
pub mod category;
pub mod checks;
pub mod error;
pub mod fdvect;
pub mod gen;
pub mod finmet;
pub mod finposet;
pub mod finset;
pub mod linalg;
pub mod oracles;
pub mod perm;
pub mod power;
pub mod scalar;
pub mod verdict;

pub use category::{Concrete, Endo, EventualImageData, FactorizationSystem, Quotient, Subobject};
pub use error::{Error, Result};
pub use fdvect::FdVect;
pub use finmet::{FinMet, Metric, ShortMap};
pub use finposet::{FinPoset, MonotoneMap, Poset};
pub use finset::{FinFunction, FinSet};
pub use linalg::{Matrix, Poly, SubspaceBasis};
pub use verdict::{Outcome, Verdict};

/// Exact rationals, the scalar used throughout.
pub type Rat = num_rational::BigRational;
pub type RatMatrix = Matrix<Rat>;
pub type RatPoly = Poly<Rat>;
pub type RatFdVect = FdVect<Rat>;
pub type FinMetric = Metric<Rat>;
pub type RatShortMap = ShortMap<Rat>;
pub type RatFinMet = FinMet<Rat>;
