//! Sparse exact representation of the Frobenius potential
//! `F = (trivial cubic part) + sum c(alpha, m) t^alpha e^{m t_mu}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::orbifold::{Coordinate, OrbifoldData};
use crate::wdvv::LinearForm;

/// Exponent vector over the twisted coordinates, stored sparsely: entries are
/// sorted by coordinate and every stored exponent is positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    entries: Vec<(Coordinate, u32)>,
}

impl MultiIndex {
    pub fn zero() -> Self {
        MultiIndex::default()
    }

    /// `e_c`, the multi-index with a single 1 at `c`.
    pub fn unit(c: Coordinate) -> Self {
        MultiIndex::from_pairs([(c, 1)])
    }

    /// Builds a multi-index from `(coordinate, exponent)` pairs; repeated
    /// coordinates accumulate and zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (Coordinate, u32)>>(pairs: I) -> Self {
        let mut out = MultiIndex::zero();
        for (c, e) in pairs {
            out.add_exp(c, e);
        }
        out
    }

    /// Sum of the given unit vectors, e.g. `e_{1,1} + e_{1,1} + e_{2,1}`.
    pub fn from_coords<I: IntoIterator<Item = Coordinate>>(coords: I) -> Self {
        MultiIndex::from_pairs(coords.into_iter().map(|c| (c, 1)))
    }

    pub fn entries(&self) -> &[(Coordinate, u32)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, c: Coordinate) -> u32 {
        match self.entries.binary_search_by(|(k, _)| k.cmp(&c)) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0,
        }
    }

    /// The length `|alpha|`, i.e. the sum of all exponents.
    pub fn length(&self) -> u32 {
        self.entries.iter().map(|(_, e)| e).sum()
    }

    pub fn add_exp(&mut self, c: Coordinate, e: u32) {
        if e == 0 {
            return;
        }
        match self.entries.binary_search_by(|(k, _)| k.cmp(&c)) {
            Ok(pos) => self.entries[pos].1 += e,
            Err(pos) => self.entries.insert(pos, (c, e)),
        }
    }

    /// Removes one unit of `c`; returns false (leaving `self` untouched) if
    /// the exponent of `c` is zero.
    pub fn remove_one(&mut self, c: Coordinate) -> bool {
        match self.entries.binary_search_by(|(k, _)| k.cmp(&c)) {
            Ok(pos) => {
                if self.entries[pos].1 == 1 {
                    self.entries.remove(pos);
                } else {
                    self.entries[pos].1 -= 1;
                }
                true
            }
            Err(_) => false,
        }
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = self.clone();
        for &(c, e) in &other.entries {
            out.add_exp(c, e);
        }
        out
    }

    /// `self - other` if the result is non-negative.
    pub fn checked_minus(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let mut out = Vec::with_capacity(self.entries.len());
        let mut it = other.entries.iter().peekable();
        for &(c, e) in &self.entries {
            let mut sub = 0;
            if let Some(&&(oc, oe)) = it.peek() {
                if oc < c {
                    return None;
                }
                if oc == c {
                    sub = oe;
                    it.next();
                }
            }
            if sub > e {
                return None;
            }
            if e > sub {
                out.push((c, e - sub));
            }
        }
        if it.next().is_some() {
            return None;
        }
        Some(MultiIndex { entries: out })
    }

    pub fn contains(&self, other: &MultiIndex) -> bool {
        self.checked_minus(other).is_some()
    }

    /// Integer Euler weight `sum alpha_{i,j} (a_i - j) L / a_i`.
    pub fn weight(&self, orbifold: &OrbifoldData) -> i64 {
        self.entries
            .iter()
            .map(|&(c, e)| orbifold.derivative_weight(c) * e as i64)
            .sum()
    }

    /// Euler degree `sum alpha_{i,j} (a_i - j) / a_i`.
    pub fn degree(&self, orbifold: &OrbifoldData) -> BigRational {
        BigRational::new(self.weight(orbifold).into(), orbifold.grading_unit().into())
    }

    /// Legs (1-based) touched by the support.
    pub fn legs(&self) -> BTreeSet<u8> {
        self.entries
            .iter()
            .filter_map(|(c, _)| match c {
                Coordinate::Twisted { leg, .. } => Some(*leg),
                _ => None,
            })
            .collect()
    }

    /// Image under a permutation of legs (see [`OrbifoldData::leg_symmetries`]).
    pub fn permute_legs(&self, perm: &[usize; 3]) -> MultiIndex {
        MultiIndex::from_pairs(self.entries.iter().map(|&(c, e)| match c {
            Coordinate::Twisted { leg, j } => {
                (Coordinate::twisted(perm[leg as usize - 1] as u8 + 1, j), e)
            }
            other => (other, e),
        }))
    }

    /// `prod alpha_c!`, the factor relating `c(alpha, m)` to an invariant.
    pub fn factorial_product(&self) -> BigInt {
        self.entries
            .iter()
            .flat_map(|&(_, e)| 1..=e)
            .fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, e)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let Coordinate::Twisted { leg, j } = c else {
                unreachable!("multi-indices only hold twisted coordinates")
            };
            if *e == 1 {
                write!(f, "e{leg}{j}")?;
            } else {
                write!(f, "{e}e{leg}{j}")?;
            }
        }
        Ok(())
    }
}

/// Index `(alpha, m)` of the coefficient `c(alpha, m)` of `t^alpha e^{m t_mu}`.
///
/// Ordered by `m` first, then by the canonical order of `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffKey {
    pub m: u32,
    pub alpha: MultiIndex,
}

impl CoeffKey {
    pub fn new(alpha: MultiIndex, m: u32) -> Self {
        CoeffKey { m, alpha }
    }

    pub fn length(&self) -> u32 {
        self.alpha.length()
    }

    /// Level in the reconstruction order. Degrees `m = 0` and `m = 1` are
    /// reconstructed together, length by length; each `m >= 2` forms its own
    /// stage ordered by length.
    pub fn level(&self) -> (u32, u32) {
        (self.m.max(1), self.length())
    }

    pub fn permute_legs(&self, perm: &[usize; 3]) -> CoeffKey {
        CoeffKey::new(self.alpha.permute_legs(perm), self.m)
    }
}

impl fmt::Display for CoeffKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c({}, {})", self.alpha, self.m)
    }
}

/// Result of querying one coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lookup {
    Known(BigRational),
    Unknown,
    /// Outside the bounds the potential was built for.
    OutOfBounds,
}

/// One third-derivative coefficient, before it is combined into a form.
#[derive(Clone, Debug)]
pub(crate) enum Term {
    Zero,
    Known(BigRational),
    Unknown(CoeffKey, BigRational),
}

/// Frobenius potential with per-key Known/Unknown status.
///
/// Every admissible key within bounds is either in `unknown` or known; known
/// nonzero values live in `values`, known zeros are implicit. Inadmissible
/// keys (homogeneity violations) and, once [`impose_separation`] has been
/// called, degree-zero keys meeting two legs are structural zeros.
///
/// [`impose_separation`]: Potential::impose_separation
#[derive(Clone, Debug)]
pub struct Potential {
    orbifold: OrbifoldData,
    max_m: u32,
    effective_max_m: u32,
    max_len: Option<u32>,
    separated: bool,
    values: HashMap<CoeffKey, BigRational>,
    unknown: BTreeSet<CoeffKey>,
}

impl Potential {
    /// A potential with every admissible key in bounds marked Unknown.
    ///
    /// `max_m` is lowered to the natural bound `floor(2 / chi)` when `chi > 0`.
    pub fn new(orbifold: OrbifoldData, max_m: u32, max_len: Option<u32>) -> Result<Self> {
        if max_m == 0 {
            return Err(Error::InvalidBounds("max_m must be at least 1".into()));
        }
        let effective_max_m = orbifold.natural_max_m().map_or(max_m, |n| n.min(max_m));
        let mut unknown = BTreeSet::new();
        for m in 0..=effective_max_m {
            for alpha in admissible_keys(&orbifold, m) {
                if max_len.is_none_or(|l| alpha.length() <= l) {
                    unknown.insert(CoeffKey::new(alpha, m));
                }
            }
        }
        Ok(Potential {
            orbifold,
            max_m,
            effective_max_m,
            max_len,
            separated: false,
            values: HashMap::new(),
            unknown,
        })
    }

    pub fn orbifold(&self) -> &OrbifoldData {
        &self.orbifold
    }

    /// The requested degree bound.
    pub fn max_m(&self) -> u32 {
        self.max_m
    }

    /// The degree bound actually covered, `min(max_m, natural bound)`.
    pub fn effective_max_m(&self) -> u32 {
        self.effective_max_m
    }

    pub fn max_len(&self) -> Option<u32> {
        self.max_len
    }

    pub fn is_separated(&self) -> bool {
        self.separated
    }

    pub fn is_admissible(&self, key: &CoeffKey) -> bool {
        is_admissible(&self.orbifold, key)
    }

    pub fn in_bounds(&self, key: &CoeffKey) -> bool {
        key.m <= self.effective_max_m && self.max_len.is_none_or(|l| key.length() <= l)
    }

    /// Keys that are zero for structural reasons and never stored.
    pub fn is_structural_zero(&self, key: &CoeffKey) -> bool {
        !self.is_admissible(key) || (self.separated && key.m == 0 && key.alpha.legs().len() > 1)
    }

    /// Marks every degree-zero key whose support meets two legs as a known
    /// zero, i.e. imposes `F|_{t1 = e^{t_mu} = 0} = G1 + G2 + G3`.
    pub fn impose_separation(&mut self) -> usize {
        self.separated = true;
        let before = self.unknown.len();
        self.unknown
            .retain(|k| !(k.m == 0 && k.alpha.legs().len() > 1));
        before - self.unknown.len()
    }

    pub fn lookup(&self, key: &CoeffKey) -> Result<Lookup> {
        if !self.is_admissible(key) {
            return Err(Error::InadmissibleKey(key.clone()));
        }
        Ok(self.status(key))
    }

    fn status(&self, key: &CoeffKey) -> Lookup {
        if self.is_structural_zero(key) {
            return Lookup::Known(BigRational::zero());
        }
        if !self.in_bounds(key) {
            return Lookup::OutOfBounds;
        }
        if self.unknown.contains(key) {
            return Lookup::Unknown;
        }
        Lookup::Known(self.values.get(key).cloned().unwrap_or_else(BigRational::zero))
    }

    /// Known value, or `None` for unknown and out-of-bounds keys.
    pub fn value(&self, key: &CoeffKey) -> Option<BigRational> {
        match self.status(key) {
            Lookup::Known(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_unknown(&self, key: &CoeffKey) -> bool {
        self.unknown.contains(key)
    }

    /// Records a known value. Rejects inadmissible keys and nonzero values on
    /// structural zeros.
    pub fn set_known(&mut self, key: CoeffKey, value: BigRational) -> Result<()> {
        if !self.is_admissible(&key) {
            return Err(Error::InadmissibleKey(key));
        }
        if self.is_structural_zero(&key) {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::Inconsistent {
                key,
                first: Box::new(BigRational::zero()),
                second: Box::new(value),
            });
        }
        self.unknown.remove(&key);
        if value.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
        Ok(())
    }

    /// Sets a key back to Unknown (used by tests and the oracle).
    pub fn forget(&mut self, key: &CoeffKey) {
        if self.is_admissible(key) && self.in_bounds(key) && !self.is_structural_zero(key) {
            self.values.remove(key);
            self.unknown.insert(key.clone());
        }
    }

    pub fn unknown_keys(&self) -> impl Iterator<Item = &CoeffKey> {
        self.unknown.iter()
    }

    pub fn unknown_count(&self) -> usize {
        self.unknown.len()
    }

    pub fn is_complete(&self) -> bool {
        self.unknown.is_empty()
    }

    /// Known nonzero coefficients in canonical order `(m, alpha)`.
    pub fn coefficients(&self) -> Vec<(&CoeffKey, &BigRational)> {
        let mut out: Vec<_> = self.values.iter().collect();
        out.sort_by(|a, b| a.0.cmp(b.0));
        out
    }

    pub fn nonzero_count(&self) -> usize {
        self.values.len()
    }

    /// Every admissible in-bounds key, in canonical order, whether known or not.
    pub fn all_keys(&self) -> Vec<CoeffKey> {
        let mut out = Vec::new();
        for m in 0..=self.effective_max_m {
            for alpha in admissible_keys(&self.orbifold, m) {
                let key = CoeffKey::new(alpha, m);
                if self.in_bounds(&key) {
                    out.push(key);
                }
            }
        }
        out
    }

    /// Coefficient of `t^beta e^{n t_mu}` in `d_x d_y d_z F`.
    pub(crate) fn third_derivative(&self, dirs: [Coordinate; 3], beta: &MultiIndex, n: u32) -> Term {
        if dirs.contains(&Coordinate::Unit) {
            if !beta.is_zero() || n != 0 {
                return Term::Zero;
            }
            let mut d = dirs;
            d.sort();
            let v = self.orbifold.metric(d[1], d[2]);
            return if v.is_zero() { Term::Zero } else { Term::Known(v) };
        }
        let divisors = dirs.iter().filter(|&&c| c == Coordinate::Divisor).count() as u32;
        if divisors > 0 && n == 0 {
            return Term::Zero;
        }
        let mut alpha = beta.clone();
        let mut mult: i64 = (n as i64).pow(divisors);
        for &c in dirs.iter().filter(|c| c.is_twisted()) {
            alpha.add_exp(c, 1);
        }
        // falling factorials alpha_c (alpha_c - 1) ... for each derivative
        let mut scratch = alpha.clone();
        for &c in dirs.iter().filter(|c| c.is_twisted()) {
            mult *= scratch.get(c) as i64;
            scratch.remove_one(c);
        }
        let key = CoeffKey::new(alpha, n);
        let mult = BigRational::from_integer(mult.into());
        match self.status(&key) {
            Lookup::Known(v) if v.is_zero() => Term::Zero,
            Lookup::Known(v) => Term::Known(v * mult),
            Lookup::Unknown | Lookup::OutOfBounds => Term::Unknown(key, mult),
        }
    }

    /// Coefficient of `t^beta e^{n t_mu}` in `d_x d_y d_z F` as an affine form
    /// in the Unknown keys.
    pub fn third_derivative_coefficient(
        &self,
        x: Coordinate,
        y: Coordinate,
        z: Coordinate,
        beta: &MultiIndex,
        n: u32,
    ) -> Result<LinearForm> {
        for c in [x, y, z] {
            self.orbifold.check(c)?;
        }
        let mut form = LinearForm::zero();
        match self.third_derivative([x, y, z], beta, n) {
            Term::Zero => {}
            Term::Known(v) => form.constant = v,
            Term::Unknown(k, m) => form.add_term(k, m),
        }
        Ok(form)
    }
}

/// Homogeneity test `sum alpha deg + m chi = 2`, exact in integer weights.
pub fn is_admissible(orbifold: &OrbifoldData, key: &CoeffKey) -> bool {
    key.alpha.entries().iter().all(|&(c, _)| c.is_twisted() && orbifold.is_valid(c))
        && key.alpha.weight(orbifold) + key.m as i64 * orbifold.chi_weight()
            == 2 * orbifold.grading_unit()
}

/// Multi-indices `alpha` with `sum alpha deg = 2 - m chi`, in canonical order.
pub fn admissible_keys(orbifold: &OrbifoldData, m: u32) -> Vec<MultiIndex> {
    let target = 2 * orbifold.grading_unit() - m as i64 * orbifold.chi_weight();
    monomials_with_weight(orbifold, target)
}

/// All multi-indices of the given integer weight, in canonical order.
pub fn monomials_with_weight(orbifold: &OrbifoldData, weight: i64) -> Vec<MultiIndex> {
    fn go(
        coords: &[Coordinate],
        weights: &[i64],
        pos: usize,
        remaining: i64,
        current: &mut Vec<(Coordinate, u32)>,
        out: &mut Vec<MultiIndex>,
    ) {
        if remaining == 0 {
            out.push(MultiIndex {
                entries: current.clone(),
            });
            return;
        }
        if pos == coords.len() {
            return;
        }
        let w = weights[pos];
        let mut e = 0u32;
        while e as i64 * w <= remaining {
            if e > 0 {
                current.push((coords[pos], e));
            }
            go(coords, weights, pos + 1, remaining - e as i64 * w, current, out);
            if e > 0 {
                current.pop();
            }
            e += 1;
        }
    }
    let mut out = Vec::new();
    if weight < 0 {
        return out;
    }
    go(
        orbifold.twisted_coordinates(),
        orbifold.twisted_weights(),
        0,
        weight,
        &mut Vec::new(),
        &mut out,
    );
    out.sort();
    out
}

/// Sub-multi-indices `beta' <= beta` of the given integer weight.
pub fn sub_indices_with_weight(
    orbifold: &OrbifoldData,
    beta: &MultiIndex,
    weight: i64,
) -> Vec<MultiIndex> {
    fn go(
        entries: &[(Coordinate, u32, i64)],
        suffix_max: &[i64],
        pos: usize,
        remaining: i64,
        current: &mut Vec<(Coordinate, u32)>,
        out: &mut Vec<MultiIndex>,
    ) {
        if remaining == 0 {
            out.push(MultiIndex {
                entries: current.clone(),
            });
            return;
        }
        if pos == entries.len() || suffix_max[pos] < remaining {
            return;
        }
        let (c, max_e, w) = entries[pos];
        for e in 0..=max_e {
            let r = remaining - e as i64 * w;
            if r < 0 {
                break;
            }
            if e > 0 {
                current.push((c, e));
            }
            go(entries, suffix_max, pos + 1, r, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    if weight < 0 {
        return out;
    }
    let entries: Vec<(Coordinate, u32, i64)> = beta
        .entries()
        .iter()
        .map(|&(c, e)| (c, e, orbifold.derivative_weight(c)))
        .collect();
    let mut suffix_max = vec![0i64; entries.len() + 1];
    for i in (0..entries.len()).rev() {
        suffix_max[i] = suffix_max[i + 1] + entries[i].1 as i64 * entries[i].2;
    }
    go(&entries, &suffix_max, 0, weight, &mut Vec::new(), &mut out);
    out
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

    #[test]
    fn multi_index_arithmetic() {
        let a = MultiIndex::from_coords([t(1, 1), t(2, 1), t(1, 1)]);
        assert_eq!(a.get(t(1, 1)), 2);
        assert_eq!(a.length(), 3);
        let b = MultiIndex::unit(t(1, 1));
        let d = a.checked_minus(&b).unwrap();
        assert_eq!(d, MultiIndex::from_coords([t(1, 1), t(2, 1)]));
        assert!(b.checked_minus(&a).is_none());
        assert!(a.checked_minus(&MultiIndex::unit(t(3, 1))).is_none());
        assert_eq!(d.plus(&b), a);
        assert_eq!(a.to_string(), "2e11+e21");
        assert_eq!(MultiIndex::zero().to_string(), "0");
    }

    #[test]
    fn admissible_small_cases() {
        let a = OrbifoldData::new(1, 1, 1).unwrap();
        assert_eq!(admissible_keys(&a, 1), vec![MultiIndex::zero()]);
        assert!(admissible_keys(&a, 0).is_empty());
        assert!(admissible_keys(&a, 2).is_empty());

        let a = OrbifoldData::new(2, 2, 2).unwrap();
        assert!(admissible_keys(&a, 5).is_empty());
        assert_eq!(admissible_keys(&a, 4), vec![MultiIndex::zero()]);
    }

    #[test]
    fn fresh_potential_lookups() {
        let a = OrbifoldData::new(2, 2, 3).unwrap();
        let p = Potential::new(a, 2, None).unwrap();
        let key = CoeffKey::new(
            MultiIndex::from_coords([t(3, 1), t(3, 1)]),
            2,
        );
        assert_eq!(p.lookup(&key).unwrap(), Lookup::Unknown);
        let bad = CoeffKey::new(MultiIndex::unit(t(1, 1)), 0);
        assert!(matches!(p.lookup(&bad), Err(Error::InadmissibleKey(_))));
    }

    #[test]
    fn unit_derivatives_come_from_the_trivial_part() {
        let a = OrbifoldData::new(2, 3, 4).unwrap();
        let p = Potential::new(a, 1, None).unwrap();
        let zero = MultiIndex::zero();
        let f = p
            .third_derivative_coefficient(Coordinate::Unit, Coordinate::Unit, Coordinate::Divisor, &zero, 0)
            .unwrap();
        assert_eq!(f.constant, q(1, 1));
        let f = p
            .third_derivative_coefficient(Coordinate::Unit, t(3, 1), t(3, 3), &zero, 0)
            .unwrap();
        assert_eq!(f.constant, q(1, 4));
        let f = p
            .third_derivative_coefficient(Coordinate::Unit, t(3, 1), t(3, 2), &zero, 0)
            .unwrap();
        assert!(f.is_zero());
        let f = p
            .third_derivative_coefficient(Coordinate::Unit, Coordinate::Unit, Coordinate::Divisor, &zero, 1)
            .unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn unknown_base_term_extraction() {
        let a = OrbifoldData::new(2, 2, 2).unwrap();
        let p = Potential::new(a, 4, None).unwrap();
        let f = p
            .third_derivative_coefficient(t(1, 1), t(2, 1), t(3, 1), &MultiIndex::zero(), 1)
            .unwrap();
        let key = CoeffKey::new(MultiIndex::from_coords([t(1, 1), t(2, 1), t(3, 1)]), 1);
        assert_eq!(f.constant, q(0, 1));
        assert_eq!(f.terms.len(), 1);
        assert_eq!(f.terms[&key], q(1, 1));
        assert!(!f.nonlinear);
    }

    #[test]
    fn divisor_derivative_multiplies_by_m() {
        let a = OrbifoldData::new(2, 2, 2).unwrap();
        let mut p = Potential::new(a, 4, None).unwrap();
        p.set_known(CoeffKey::new(MultiIndex::zero(), 4), q(1, 7)).unwrap();
        let f = p
            .third_derivative_coefficient(
                Coordinate::Divisor,
                Coordinate::Divisor,
                Coordinate::Divisor,
                &MultiIndex::zero(),
                4,
            )
            .unwrap();
        assert_eq!(f.constant, q(64, 7));
    }

    #[test]
    fn sub_indices() {
        let a = OrbifoldData::new(2, 2, 2).unwrap();
        let beta = MultiIndex::from_coords([t(1, 1), t(2, 1), t(3, 1)]);
        // each twisted coordinate has weight 1 here (L = 2)
        assert_eq!(sub_indices_with_weight(&a, &beta, 0).len(), 1);
        assert_eq!(sub_indices_with_weight(&a, &beta, 1).len(), 3);
        assert_eq!(sub_indices_with_weight(&a, &beta, 2).len(), 3);
        assert_eq!(sub_indices_with_weight(&a, &beta, 3).len(), 1);
        assert!(sub_indices_with_weight(&a, &beta, 4).is_empty());
    }

    #[test]
    fn separation_makes_cross_leg_degree_zero_keys_structural() {
        let a = OrbifoldData::new(2, 2, 2).unwrap();
        let mut p = Potential::new(a, 1, None).unwrap();
        let cross = CoeffKey::new(MultiIndex::from_coords([t(1, 1), t(1, 1), t(2, 1), t(2, 1)]), 0);
        assert_eq!(p.lookup(&cross).unwrap(), Lookup::Unknown);
        p.impose_separation();
        assert_eq!(p.lookup(&cross).unwrap(), Lookup::Known(q(0, 1)));
        assert!(p.set_known(cross, q(1, 1)).is_err());
    }
}
