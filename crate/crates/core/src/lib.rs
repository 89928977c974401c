//! Exact reconstruction of the genus-zero Frobenius potential of the
//! orbifold projective line `P^1_A`, `A = (a1, a2, a3)`, from WDVV
//! equations and a handful of initial conditions.
//!
//! The potential is written as
//! `F = (1/2) t1^2 t_mu + (t1 / 2) sum eta_{ab} t_a t_b + sum c(alpha, m) t^alpha e^{m t_mu}`
//! and every `c(alpha, m)` is an exact rational.
//!
//! ```
//! use frobrec_core::{reconstruct, CoeffKey, Coordinate, MultiIndex, OrbifoldData};
//!
//! let a = OrbifoldData::new(2, 2, 2).unwrap();
//! let r = reconstruct(&a, 4, None).unwrap();
//! let key = CoeffKey::new(MultiIndex::from_coords([Coordinate::twisted(1, 1); 4]), 0);
//! assert_eq!(r.potential.value(&key).unwrap().to_string(), "-1/96");
//! ```

pub mod error;
pub mod orbifold;
pub mod reconstruct;
pub mod series;
pub mod verify;
pub mod wdvv;

pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use orbifold::{symmetry_factor, Coordinate, OrbifoldData};
pub use reconstruct::{base_key, reconstruct, seed, LogEntry, Reconstruction, SeedReport, SolveState, Source};
pub use series::{admissible_keys, CoeffKey, Lookup, MultiIndex, Potential};
pub use verify::{
    check_presentation, limit_algebra, sweep_residuals, to_gw_invariant, PresentationCheck,
    StructureConstants, VerificationReport,
};
pub use wdvv::{antisymmetry_check, wdvv_form, wdvv_residual, LinearForm, WdvvInstance};
