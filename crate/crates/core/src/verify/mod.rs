//! Independent checks of a reconstructed potential.

mod algebra;
mod oracle;

pub use algebra::{check_presentation, limit_algebra, PresentationCheck, StructureConstants};
pub use oracle::{oracle_solve, OracleReport};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::series::{is_admissible, CoeffKey, Potential};
use crate::wdvv::{canonical_quadruples, targets, wdvv_form, WdvvInstance};

/// Outcome of [`sweep_residuals`].
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    /// Equations whose coefficient was evaluated exactly.
    pub residuals_checked: usize,
    /// Equations touching coefficients beyond the bounds.
    pub skipped: usize,
    /// Equations with a nonzero residual, in canonical order.
    pub failures: Vec<(WdvvInstance, BigRational)>,
    /// Every nonzero coefficient satisfies the weight condition.
    pub homogeneity_ok: bool,
    /// Values are invariant under permutations of equal legs.
    pub symmetry_ok: bool,
    /// The `t = 0, q = 0` algebra satisfies the expected presentation.
    pub algebra_ok: bool,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.homogeneity_ok && self.symmetry_ok && self.algebra_ok
    }
}

/// Every WDVV instance whose target monomial has `n <= max_m`, in
/// canonical order.
pub fn all_instances(p: &Potential, max_m: u32) -> Vec<WdvvInstance> {
    let orb = p.orbifold();
    let max_n = max_m.min(p.effective_max_m());
    let mut out = Vec::new();
    for quad in canonical_quadruples(orb) {
        for (beta, n) in targets(orb, &quad, max_n) {
            out.push(WdvvInstance::new(quad, beta, n));
        }
    }
    out
}

/// Evaluates every WDVV equation up to `max_m` on a complete potential.
/// Equations reaching coefficients outside the bounds are counted as
/// skipped.
pub fn sweep_residuals(p: &Potential, max_m: u32) -> Result<VerificationReport> {
    if !p.is_complete() {
        return Err(Error::Incomplete(p.unknown_count()));
    }
    let instances = all_instances(p, max_m);
    let results: Vec<Option<BigRational>> = instances
        .par_iter()
        .map(|inst| {
            let form = wdvv_form(p, inst);
            if form.nonlinear || !form.terms.is_empty() {
                None
            } else {
                Some(form.constant)
            }
        })
        .collect();
    let mut report = VerificationReport::default();
    for (inst, r) in instances.into_iter().zip(results) {
        match r {
            None => report.skipped += 1,
            Some(v) => {
                report.residuals_checked += 1;
                if v != BigRational::from_integer(0.into()) {
                    report.failures.push((inst, v));
                }
            }
        }
    }
    report.homogeneity_ok = check_homogeneity(p);
    report.symmetry_ok = check_symmetry(p);
    report.algebra_ok = match limit_algebra(p) {
        Ok(table) => check_presentation(&table).ok,
        Err(_) => false,
    };
    Ok(report)
}

/// Every stored nonzero coefficient has an admissible key.
pub fn check_homogeneity(p: &Potential) -> bool {
    let orb = p.orbifold();
    p.coefficients().iter().all(|(k, _)| is_admissible(orb, k))
}

/// `c(alpha, m) = c(sigma alpha, m)` for every permutation `sigma` of legs
/// with equal orders.
pub fn check_symmetry(p: &Potential) -> bool {
    let perms = p.orbifold().leg_symmetries();
    p.coefficients().iter().all(|(k, v)| {
        perms.iter().all(|perm| {
            let image = k.permute_legs(perm);
            !p.in_bounds(&image) || p.value(&image).as_ref() == Some(*v)
        })
    })
}

/// Converts a potential coefficient into the corresponding orbifold
/// Gromov-Witten invariant: `c(alpha, m) * prod alpha_i!`.
pub fn to_gw_invariant(key: &CoeffKey, c: &BigRational) -> BigRational {
    c * BigRational::from_integer(key.alpha.factorial_product())
}

/// Inverse of [`to_gw_invariant`].
pub fn from_gw_invariant(key: &CoeffKey, invariant: &BigRational) -> BigRational {
    let f: BigInt = key.alpha.factorial_product();
    invariant / BigRational::from_integer(f)
}
