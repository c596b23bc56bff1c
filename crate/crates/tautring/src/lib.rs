//! Exact computations in the tautological ring of moduli spaces of stable curves.
//!
//! The crate provides a small, self-contained strata algebra over exact
//! rationals: stable graphs with labeled legs, decorated boundary strata with
//! psi and kappa classes, excess-intersection products, pushforwards along
//! gluing maps, and integrals of psi/kappa monomials computed from the KdV
//! (Witten–Kontsevich) recursion.
//!
//! On top of that it implements
//!
//! * the double ramification cycle `DR_g(A, k)` via the r-spin graph-sum
//!   formula, evaluated exactly by polynomial interpolation in `r`,
//! * the splitting formula expressing the pullback of `DR_{g+1}` along the
//!   loop gluing map `gl: M-bar_{g,n} -> M-bar_{g+1,n-2}` as a weighted sum of
//!   banana strata decorated by smaller DR cycles,
//! * a tautological relation on `M-bar_{g,n}` mixing `psi`-decorated DR cycles
//!   with banana corrections, and
//! * the genus-0 tropical side: piecewise-linear stabilizations of leg slope
//!   data on trees, the `delta` difference function, and the map `phi` from
//!   tropical divisors to tautological classes.
//!
//! Everything is exact; there is no floating point anywhere. Verification
//! entry points pair candidate identities against a spanning set of
//! complementary-degree tautological classes and compare rational numbers.

pub mod banana;
pub mod dr;
pub mod error;
pub mod graph;
pub mod integrals;
pub mod rational;
pub mod report;
pub mod splitting;
pub mod strata;
pub mod tropical;

pub use error::{Error, Result};
pub use graph::StableGraph;
pub use rational::Q;
pub use strata::TautClass;
