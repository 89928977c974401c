//! Seeding from the initial conditions and the level-by-level WDVV solver.
//!
//! Unknown coefficients are resolved in increasing [`CoeffKey::level`]: first
//! degrees `m = 0, 1` together by length, then each `m >= 2` by length. Inside
//! a level the solver iterates to a fixpoint, each time looking for a single
//! WDVV coefficient equation in which the key is the only unknown.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::orbifold::{symmetry_factor, Coordinate, OrbifoldData};
use crate::series::{CoeffKey, Lookup, MultiIndex, Potential};
use crate::wdvv::{wdvv_form, LinearForm, WdvvInstance};

/// Counts of coefficients fixed by seeding. The categories are disjoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeedReport {
    /// Nonzero length-3 degree-0 coefficients.
    pub cubic: usize,
    /// Length-3 degree-0 coefficients set to zero (support on several legs).
    pub cubic_zero: usize,
    /// The base `e^{t_mu}` term with coefficient 1.
    pub base: usize,
    /// Longer degree-0 keys meeting two legs, zero by separation.
    pub structural_zero: usize,
}

/// How a logged value was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Wdvv(WdvvInstance),
    /// Copied from a key in the same leg-permutation orbit.
    Symmetry(CoeffKey),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogEntry {
    pub key: CoeffKey,
    pub value: BigRational,
    pub source: Source,
}

/// The monomial of the base `e^{t_mu}` term whose coefficient is 1:
/// `t11 t21 t31`, `t21 t31`, `t31` or `1`, depending on how many `a_i` equal 1.
pub fn base_key(orbifold: &OrbifoldData) -> CoeffKey {
    let alpha = MultiIndex::from_coords(
        (1..=3u8)
            .filter(|&leg| orbifold.order(leg) >= 2)
            .map(|leg| Coordinate::twisted(leg, 1)),
    );
    CoeffKey::new(alpha, 1)
}

/// Length-3 degree-0 keys `e_{i,j1} + e_{i,j2} + e_{i,j3}` with
/// `j1 + j2 + j3 = a_i` and their values `1 / (a_i s_{j1,j2,j3})`.
pub fn cubic_seeds(orbifold: &OrbifoldData) -> Vec<(CoeffKey, BigRational)> {
    let mut out = Vec::new();
    for leg in 1..=3u8 {
        let ai = orbifold.order(leg);
        for j1 in 1..ai {
            for j2 in j1..ai {
                if j1 + j2 >= ai {
                    break;
                }
                let j3 = ai - j1 - j2;
                if j3 < j2 {
                    continue;
                }
                let alpha = MultiIndex::from_coords([j1, j2, j3].map(|j| Coordinate::twisted(leg, j)));
                let s = symmetry_factor(j1 as i64, j2 as i64, j3 as i64);
                let value = BigRational::new(BigInt::from(1), BigInt::from(ai as u64 * s as u64));
                out.push((CoeffKey::new(alpha, 0), value));
            }
        }
    }
    out.sort();
    out
}

/// Installs the initial conditions: cubic terms, the base `e^{t_mu}` term
/// and separation of the degree-zero part into legs. Everything else that is
/// admissible and in bounds stays Unknown.
pub fn seed(orbifold: &OrbifoldData, max_m: u32, max_len: Option<u32>) -> Result<(Potential, SeedReport)> {
    if let Some(l) = max_len {
        if l < 3 {
            return Err(Error::InvalidBounds("max_len must be at least 3".into()));
        }
    }
    let mut p = Potential::new(orbifold.clone(), max_m, max_len)?;
    let mut report = SeedReport::default();
    let cubics = cubic_seeds(orbifold);
    for (key, value) in &cubics {
        p.set_known(key.clone(), value.clone())?;
        report.cubic += 1;
    }
    let cubic_keys: HashSet<&CoeffKey> = cubics.iter().map(|(k, _)| k).collect();
    let rest: Vec<CoeffKey> = p
        .unknown_keys()
        .filter(|k| k.m == 0 && k.length() == 3 && !cubic_keys.contains(k))
        .cloned()
        .collect();
    for key in rest {
        p.set_known(key, BigRational::zero())?;
        report.cubic_zero += 1;
    }
    p.set_known(base_key(orbifold), BigRational::from_integer(1.into()))?;
    report.base = 1;
    report.structural_zero = p.impose_separation();
    Ok((p, report))
}

/// Solver state: the potential being filled in, the current level, the
/// pending keys of that level and the resolution log.
#[derive(Clone, Debug)]
pub struct SolveState {
    pub potential: Potential,
    pub cursor: Option<(u32, u32)>,
    pub worklist: Vec<CoeffKey>,
    pub log: Vec<LogEntry>,
    symmetries: Vec<[usize; 3]>,
}

/// Output of [`reconstruct`].
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub potential: Potential,
    pub log: Vec<LogEntry>,
    pub seed_report: SeedReport,
}

impl SolveState {
    pub fn new(potential: Potential) -> Self {
        let symmetries = potential.orbifold().leg_symmetries();
        SolveState {
            potential,
            cursor: None,
            worklist: Vec::new(),
            log: Vec::new(),
            symmetries,
        }
    }

    /// Canonical representative of the leg-permutation orbit of `key`.
    pub fn orbit_rep(&self, key: &CoeffKey) -> CoeffKey {
        self.symmetries
            .iter()
            .map(|p| key.permute_legs(p))
            .min()
            .expect("identity is always present")
    }

    fn orbit(&self, key: &CoeffKey) -> BTreeSet<CoeffKey> {
        self.symmetries.iter().map(|p| key.permute_legs(p)).collect()
    }

    fn record(&mut self, key: CoeffKey, value: BigRational, source: Source) -> Result<()> {
        self.potential.set_known(key.clone(), value.clone())?;
        self.log.push(LogEntry { key, value, source });
        Ok(())
    }

    /// Copies the value of `key` to the Unknown members of its orbit and
    /// checks the Known ones. Returns how many keys were newly determined.
    fn propagate_orbit(&mut self, key: &CoeffKey) -> Result<usize> {
        let value = match self.potential.value(key) {
            Some(v) => v,
            None => return Ok(0),
        };
        let mut count = 0;
        for other in self.orbit(key) {
            if &other == key {
                continue;
            }
            match self.potential.lookup(&other)? {
                Lookup::Unknown => {
                    self.record(other, value.clone(), Source::Symmetry(key.clone()))?;
                    count += 1;
                }
                Lookup::Known(v) if v != value => {
                    return Err(Error::SymmetryConflict(key.clone(), other));
                }
                _ => {}
            }
        }
        Ok(count)
    }

    /// Applies invariance under permutations of legs with equal `a_i` to
    /// every known coefficient. Returns the number of keys so determined.
    pub fn apply_symmetry(&mut self) -> Result<usize> {
        if self.symmetries.len() == 1 {
            return Ok(0);
        }
        let mut count = 0;
        for key in self.potential.all_keys() {
            if !self.potential.is_unknown(&key) {
                count += self.propagate_orbit(&key)?;
            }
        }
        Ok(count)
    }

    /// Reduces a form modulo leg symmetry and returns the value of `key` if
    /// it is the only remaining unknown.
    fn solve_for(&self, key: &CoeffKey, form: &LinearForm) -> Option<BigRational> {
        if form.nonlinear || form.terms.is_empty() {
            return None;
        }
        if self.symmetries.len() == 1 {
            return match form.solve_single() {
                Some((k, v)) if k == key => Some(v),
                _ => None,
            };
        }
        let rep = self.orbit_rep(key);
        let reduced = form.quotient(|k| self.orbit_rep(k));
        match reduced.solve_single() {
            Some((k, v)) if *k == rep => Some(v),
            _ => None,
        }
    }

    /// The few instances that usually isolate this key, tried before any scan.
    pub fn primary_candidates(&self, key: &CoeffKey) -> Vec<WdvvInstance> {
        let orb = self.potential.orbifold();
        let mu = Coordinate::Divisor;
        let t = Coordinate::twisted;
        let gamma = &key.alpha;
        let m = key.m;
        let mut out = Vec::new();
        if m >= 1 {
            // t^{gamma - e_{i,j}} e^{m t_mu} in WDVV((i,1),(i,j-1),mu,mu), j >= 2
            for &(c, _) in gamma.entries() {
                if let Coordinate::Twisted { leg, j } = c {
                    if j >= 2 {
                        let mut beta = gamma.clone();
                        beta.remove_one(c);
                        out.push(WdvvInstance::new([t(leg, 1), t(leg, j - 1), mu, mu], beta, m));
                    }
                }
            }
            // t^gamma e^{m t_mu} in WDVV((i,1),(i,a_i-1),mu,mu)
            for leg in 1..=3u8 {
                let ai = orb.order(leg);
                if ai >= 2 {
                    out.push(WdvvInstance::new([t(leg, 1), t(leg, ai - 1), mu, mu], gamma.clone(), m));
                }
            }
        } else {
            // t^{gamma - e_{i,j} - e_{i,j'} - e_{i,l+1}} in WDVV((i,1),(i,l),(i,j),(i,j'))
            for &(c, _) in gamma.entries() {
                let Coordinate::Twisted { leg, j: l1 } = c else { continue };
                if l1 < 2 {
                    continue;
                }
                let l = l1 - 1;
                let mut rest = gamma.clone();
                rest.remove_one(c);
                let same_leg: Vec<Coordinate> = rest
                    .entries()
                    .iter()
                    .filter(|(d, _)| matches!(d, Coordinate::Twisted { leg: g, .. } if *g == leg))
                    .map(|(d, _)| *d)
                    .collect();
                for (ix, &cj) in same_leg.iter().enumerate() {
                    for &cj2 in &same_leg[ix..] {
                        let mut beta = rest.clone();
                        if !beta.remove_one(cj) || !beta.remove_one(cj2) {
                            continue;
                        }
                        out.push(WdvvInstance::new([t(leg, 1), t(leg, l), cj, cj2], beta, 0));
                    }
                }
            }
        }
        out
    }

    /// Every instance in which `key` meets the known nonzero coefficient
    /// `pivot` (or a constant of the trivial part, when `pivot` is `None`)
    /// across the pairing `eta^{s t}`.
    pub fn pivot_candidates(&self, key: &CoeffKey, pivot: Option<&CoeffKey>) -> Vec<WdvvInstance> {
        let orb = self.potential.orbifold();
        let max_n = self.potential.effective_max_m();
        let gamma = &key.alpha;
        let mut options: Vec<Coordinate> = gamma.entries().iter().map(|(c, _)| *c).collect();
        if key.m > 0 {
            options.push(Coordinate::Divisor);
        }
        let mut out = Vec::new();
        for (ix, &x) in options.iter().enumerate() {
            for &y in &options[ix..] {
                for &s in &options {
                    let Some(beta1) = gamma.checked_minus(&MultiIndex::from_coords(
                        [x, y, s].into_iter().filter(|c| c.is_twisted()),
                    )) else {
                        continue;
                    };
                    let tau = orb.dual(s);
                    match pivot {
                        None => {
                            if tau == Coordinate::Unit {
                                for z in orb.coordinates() {
                                    let w = orb.dual(z);
                                    if z <= w {
                                        out.push(WdvvInstance::new([x, y, z, w], beta1.clone(), key.m));
                                    }
                                }
                            } else {
                                out.push(WdvvInstance::new(
                                    [x, y, Coordinate::Unit, orb.dual(tau)],
                                    beta1.clone(),
                                    key.m,
                                ));
                            }
                        }
                        Some(pk) => {
                            let n = key.m + pk.m;
                            if n > max_n || tau == Coordinate::Unit {
                                continue;
                            }
                            let mut delta = pk.alpha.clone();
                            if tau.is_twisted() {
                                if !delta.remove_one(tau) {
                                    continue;
                                }
                            } else if pk.m == 0 {
                                continue;
                            }
                            let mut popts: Vec<Coordinate> = delta.entries().iter().map(|(c, _)| *c).collect();
                            if pk.m > 0 {
                                popts.push(Coordinate::Divisor);
                            }
                            for (iz, &z) in popts.iter().enumerate() {
                                for &w in &popts[iz..] {
                                    let Some(beta2) = delta.checked_minus(&MultiIndex::from_coords(
                                        [z, w].into_iter().filter(|c| c.is_twisted()),
                                    )) else {
                                        continue;
                                    };
                                    out.push(WdvvInstance::new([x, y, z, w], beta1.plus(&beta2), n));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Tries the prescribed instances first, then pivot scans over the
    /// trivial part and every known nonzero coefficient (smallest level
    /// first). Returns the value and the resolving instance.
    fn find_resolution(
        &self,
        key: &CoeffKey,
        deep: bool,
        pivots: &[CoeffKey],
    ) -> Result<Option<(BigRational, WdvvInstance)>> {
        let primary = self.primary_candidates(key);
        let mut seen: HashSet<WdvvInstance> = HashSet::new();
        let mut found: Option<(BigRational, WdvvInstance)> = None;
        for inst in &primary {
            if !seen.insert(inst.clone()) {
                continue;
            }
            let form = wdvv_form(&self.potential, inst);
            if let Some(v) = self.solve_for(key, &form) {
                match &found {
                    None => found = Some((v, inst.clone())),
                    Some((first, _)) if *first != v => {
                        return Err(Error::Inconsistent {
                            key: key.clone(),
                            first: Box::new(first.clone()),
                            second: Box::new(v),
                        })
                    }
                    _ => {}
                }
            }
        }
        if found.is_some() || !deep {
            return Ok(found);
        }
        let trivial = std::iter::once(None);
        let keyed = pivots.iter().map(Some);
        for pivot in trivial.chain(keyed) {
            for inst in self.pivot_candidates(key, pivot) {
                if !seen.insert(inst.clone()) {
                    continue;
                }
                let form = wdvv_form(&self.potential, &inst);
                if let Some(v) = self.solve_for(key, &form) {
                    return Ok(Some((v, inst)));
                }
            }
        }
        Ok(None)
    }

    /// Resolves one Unknown key from a WDVV equation in which it is the only
    /// unknown (up to leg symmetry), marks it Known and returns its value.
    pub fn resolve_key(&mut self, key: &CoeffKey) -> Result<BigRational> {
        let pivots = self.pivots();
        match self.find_resolution(key, true, &pivots)? {
            Some((value, inst)) => {
                self.commit(key, value.clone(), inst)?;
                Ok(value)
            }
            None => Err(Error::Stalled(key.clone())),
        }
    }

    fn commit(&mut self, key: &CoeffKey, value: BigRational, inst: WdvvInstance) -> Result<()> {
        self.record(key.clone(), value, Source::Wdvv(inst))?;
        self.propagate_orbit(key)?;
        Ok(())
    }

    fn pivots(&self) -> Vec<CoeffKey> {
        let mut keys: Vec<CoeffKey> = self
            .potential
            .coefficients()
            .into_iter()
            .map(|(k, _)| k.clone())
            .collect();
        keys.sort_by(|a, b| (a.level(), a).cmp(&(b.level(), b)));
        keys
    }

    /// Resolves every Unknown key of one level.
    pub fn solve_level(&mut self, level: (u32, u32)) -> Result<()> {
        self.cursor = Some(level);
        self.worklist = self
            .potential
            .unknown_keys()
            .filter(|k| k.level() == level)
            .cloned()
            .collect();
        loop {
            // cheap passes with the prescribed instances until nothing moves
            loop {
                let mut progress = false;
                for key in std::mem::take(&mut self.worklist) {
                    if !self.potential.is_unknown(&key) {
                        continue;
                    }
                    match self.find_resolution(&key, false, &[])? {
                        Some((v, inst)) => {
                            self.commit(&key, v, inst)?;
                            progress = true;
                        }
                        None => self.worklist.push(key),
                    }
                }
                if !progress || self.worklist.is_empty() {
                    break;
                }
            }
            if self.worklist.is_empty() {
                return Ok(());
            }
            // deep scan, one key at a time, then back to cheap passes
            let pivots = self.pivots();
            let mut resolved = false;
            for key in self.worklist.clone() {
                if !self.potential.is_unknown(&key) {
                    continue;
                }
                if let Some((v, inst)) = self.find_resolution(&key, true, &pivots)? {
                    self.commit(&key, v, inst)?;
                    resolved = true;
                    break;
                }
            }
            self.worklist.retain(|k| self.potential.is_unknown(k));
            if !resolved {
                return match self.worklist.first() {
                    Some(k) => Err(Error::Stalled(k.clone())),
                    None => Ok(()),
                };
            }
        }
    }

    /// Levels still containing Unknown keys, in solving order.
    pub fn pending_levels(&self) -> Vec<(u32, u32)> {
        let set: BTreeSet<(u32, u32)> = self.potential.unknown_keys().map(|k| k.level()).collect();
        set.into_iter().collect()
    }

    pub fn solve_all(&mut self) -> Result<()> {
        self.apply_symmetry()?;
        for level in self.pending_levels() {
            self.solve_level(level)?;
        }
        self.cursor = None;
        Ok(())
    }
}

/// Seeds and reconstructs every admissible coefficient with `m <= max_m`
/// (and `|alpha| <= max_len` when given).
pub fn reconstruct(orbifold: &OrbifoldData, max_m: u32, max_len: Option<u32>) -> Result<Reconstruction> {
    let (potential, seed_report) = seed(orbifold, max_m, max_len)?;
    let mut state = SolveState::new(potential);
    state.solve_all()?;
    Ok(Reconstruction {
        potential: state.potential,
        log: state.log,
        seed_report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(leg: u8, j: u32) -> Coordinate {
        Coordinate::twisted(leg, j)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn orb(a1: i64, a2: i64, a3: i64) -> OrbifoldData {
        OrbifoldData::new(a1, a2, a3).unwrap()
    }

    #[test]
    fn base_keys() {
        assert_eq!(base_key(&orb(2, 2, 2)).alpha, MultiIndex::from_coords([t(1, 1), t(2, 1), t(3, 1)]));
        assert_eq!(base_key(&orb(1, 2, 3)).alpha, MultiIndex::from_coords([t(2, 1), t(3, 1)]));
        assert_eq!(base_key(&orb(1, 1, 4)).alpha, MultiIndex::unit(t(3, 1)));
        assert_eq!(base_key(&orb(1, 1, 1)).alpha, MultiIndex::zero());
    }

    #[test]
    fn cubic_seed_values() {
        let a = orb(3, 3, 3);
        let (p, report) = seed(&a, 1, None).unwrap();
        for leg in 1..=3 {
            let key = CoeffKey::new(MultiIndex::from_coords([t(leg, 1); 3]), 0);
            assert_eq!(p.value(&key), Some(q(1, 18)));
        }
        assert_eq!(report.base, 1);
        // per leg: (1,1,1)
        assert_eq!(report.cubic, 3);

        let (p, _) = seed(&orb(2, 3, 4), 1, None).unwrap();
        let key = CoeffKey::new(MultiIndex::from_coords([t(3, 1), t(3, 1), t(3, 2)]), 0);
        assert_eq!(p.value(&key), Some(q(1, 8)));
    }

    #[test]
    fn seeding_222_has_no_cubics() {
        let (p, report) = seed(&orb(2, 2, 2), 4, None).unwrap();
        assert_eq!(report.cubic, 0);
        assert_eq!(p.value(&base_key(&orb(2, 2, 2))), Some(q(1, 1)));
        // m = 0 keys on two legs are structural zeros
        let key = CoeffKey::new(MultiIndex::from_coords([t(1, 1), t(1, 1), t(2, 1), t(3, 1)]), 0);
        assert_eq!(p.value(&key), Some(q(0, 1)));
    }

    #[test]
    fn max_len_below_three_is_rejected() {
        assert!(matches!(seed(&orb(2, 3, 5), 1, Some(2)), Err(Error::InvalidBounds(_))));
    }

    #[test]
    fn trivial_case_111() {
        let r = reconstruct(&orb(1, 1, 1), 4, None).unwrap();
        let coeffs = r.potential.coefficients();
        assert_eq!(coeffs.len(), 1);
        assert_eq!(coeffs[0].0, &CoeffKey::new(MultiIndex::zero(), 1));
        assert_eq!(coeffs[0].1, &q(1, 1));
        assert!(r.log.is_empty());
    }

    #[test]
    fn symmetry_without_equal_legs_is_a_no_op() {
        let (p, _) = seed(&orb(2, 3, 7), 1, None).unwrap();
        let mut state = SolveState::new(p);
        assert_eq!(state.apply_symmetry().unwrap(), 0);
    }

    #[test]
    fn symmetry_conflict_is_reported() {
        let (mut p, _) = seed(&orb(2, 2, 5), 1, None).unwrap();
        let k1 = CoeffKey::new(MultiIndex::from_coords([t(1, 1), t(1, 1), t(3, 1)]), 1);
        let k2 = k1.permute_legs(&[1, 0, 2]);
        p.set_known(k1, q(1, 1)).unwrap();
        p.set_known(k2, q(2, 1)).unwrap();
        let mut state = SolveState::new(p);
        assert!(matches!(state.apply_symmetry(), Err(Error::SymmetryConflict(..))));
    }
}
