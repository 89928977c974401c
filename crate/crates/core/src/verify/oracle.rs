//! Reference solver: exact linear algebra over all WDVV equations.
//!
//! Coefficients are grouped (degree `m <= 1` by length, then one group per
//! `m >= 2`). For each group every equation that is linear in the group's
//! unknowns and touches nothing else is collected, together with the leg
//! symmetry relations, and the system is solved by Gaussian elimination.
//! It shares only the seeding and the form extraction with the main solver.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::orbifold::OrbifoldData;
use crate::reconstruct::seed;
use crate::series::{CoeffKey, Potential};
use crate::wdvv::{wdvv_form, WdvvInstance};

use super::all_instances;

#[derive(Clone, Debug)]
pub struct OracleGroup {
    pub label: String,
    pub unknowns: usize,
    pub equations: usize,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub potential: Potential,
    pub groups: Vec<OracleGroup>,
}

fn group_of(key: &CoeffKey) -> (u32, u32) {
    if key.m <= 1 {
        (1, key.length())
    } else {
        (key.m, 0)
    }
}

fn label(g: (u32, u32)) -> String {
    if g.0 == 1 {
        format!("m<=1, |alpha|={}", g.1)
    } else {
        format!("m={}", g.0)
    }
}

/// Row-reduced system `sum row[i] x_i + row[n] = 0`.
struct Elimination {
    n: usize,
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Elimination {
    fn new(n: usize) -> Self {
        Elimination { n, rows: Vec::new() }
    }

    /// Adds a row. Returns false if it contradicts the rows so far.
    fn push(&mut self, mut row: Vec<BigRational>) -> bool {
        for (p, r) in &self.rows {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(p) = (0..self.n).find(|&i| !row[i].is_zero()) else {
            return row[self.n].is_zero();
        };
        let inv = BigRational::one() / &row[p];
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, row));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn solution(&self) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); self.n];
        for (p, r) in &self.rows {
            x[*p] = -r[self.n].clone();
        }
        x
    }
}

/// Computes the same coefficients as [`crate::reconstruct`] by solving, group by
/// group, the full linear system of WDVV equations.
pub fn oracle_solve(orbifold: &OrbifoldData, max_m: u32, max_len: Option<u32>) -> Result<OracleReport> {
    let (mut p, _) = seed(orbifold, max_m, max_len)?;
    let perms = orbifold.leg_symmetries();
    let mut live: Vec<WdvvInstance> = all_instances(&p, max_m);
    let groups: BTreeSet<(u32, u32)> = p.unknown_keys().map(group_of).collect();
    let mut report = Vec::new();
    for g in groups {
        let unknowns: Vec<CoeffKey> = p.unknown_keys().filter(|k| group_of(k) == g).cloned().collect();
        let index: BTreeMap<&CoeffKey, usize> = unknowns.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let n = unknowns.len();
        let mut elim = Elimination::new(n);
        let fail = |reason: String| Error::Oracle { level: label(g), reason };
        for k in &unknowns {
            for perm in &perms {
                let image = k.permute_legs(perm);
                if let Some(&j) = index.get(&image) {
                    let i = index[k];
                    if i != j {
                        let mut row = vec![BigRational::zero(); n + 1];
                        row[i] = BigRational::one();
                        row[j] = -BigRational::one();
                        elim.push(row);
                    }
                }
            }
        }
        let mut equations = 0;
        let mut remaining = Vec::with_capacity(live.len());
        for inst in live {
            let form = wdvv_form(&p, &inst);
            if form.nonlinear || form.terms.keys().any(|k| !index.contains_key(k)) {
                remaining.push(inst);
                continue;
            }
            if form.terms.is_empty() {
                if !form.constant.is_zero() {
                    return Err(fail(format!("{inst} has residual {}", form.constant)));
                }
                continue;
            }
            let mut row = vec![BigRational::zero(); n + 1];
            for (k, c) in &form.terms {
                row[index[k]] = c.clone();
            }
            row[n] = form.constant;
            equations += 1;
            if !elim.push(row) {
                return Err(fail(format!("{inst} contradicts earlier equations")));
            }
        }
        live = remaining;
        if elim.rank() < n {
            return Err(fail(format!("rank {} below {n} unknowns", elim.rank())));
        }
        for (k, v) in unknowns.iter().zip(elim.solution()) {
            p.set_known(k.clone(), v)?;
        }
        report.push(OracleGroup {
            label: label(g),
            unknowns: n,
            equations,
        });
    }
    for inst in &live {
        let form = wdvv_form(&p, inst);
        if form.terms.is_empty() && !form.nonlinear && !form.constant.is_zero() {
            return Err(Error::Oracle {
                level: "final".into(),
                reason: format!("{inst} has residual {}", form.constant),
            });
        }
    }
    Ok(OracleReport {
        potential: p,
        groups: report,
    })
}
