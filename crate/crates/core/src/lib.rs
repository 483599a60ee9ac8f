#![allow(clippy::needless_range_loop)]

pub mod densities;
pub mod error;
pub mod asymptotic;
pub mod config;
pub mod contour;
pub mod gmfamily;
pub mod levilattice;
pub mod report;
pub mod num;
pub mod quad;
pub mod rootdatum;
pub mod suites;
pub mod spectral;
pub mod surd;

pub use error::{Error, Result};
pub use num::{RatMat, RatVec, Q};
pub use rootdatum::{act, build_root_system, RootDatum, WeylElement};
pub use surd::QuadConst;
