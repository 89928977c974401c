//! Coefficient extraction from the WDVV equations
//!
//! `WDVV(a,b,c,d)`: `sum F_{a b s} eta^{s t} F_{t c d} - sum F_{a c s} eta^{s t} F_{t b d} = 0`.
//!
//! Every equation is read off at a single monomial `t^beta e^{n t_mu}`
//! (never involving `t1`), which gives one affine-linear relation between
//! coefficients of the potential.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{AddAssign, Neg};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::orbifold::{Coordinate, OrbifoldData};
use crate::series::{sub_indices_with_weight, monomials_with_weight, CoeffKey, MultiIndex, Potential, Term};

/// `constant + sum multiplier * c(key)` over Unknown keys.
///
/// When two unknown coefficients multiply each other the form is flagged
/// `nonlinear`; only the flag is meaningful then.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearForm {
    pub constant: BigRational,
    pub terms: BTreeMap<CoeffKey, BigRational>,
    pub nonlinear: bool,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn constant(value: BigRational) -> Self {
        LinearForm {
            constant: value,
            ..LinearForm::default()
        }
    }

    pub fn add_term(&mut self, key: CoeffKey, multiplier: BigRational) {
        if multiplier.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(multiplier);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += multiplier;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Zero constant, no terms, not nonlinear.
    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty() && !self.nonlinear
    }

    /// No unknown keys involved.
    pub fn is_closed(&self) -> bool {
        self.terms.is_empty() && !self.nonlinear
    }

    /// If the form is `constant + k * c(key)` with `k != 0`, the value that
    /// makes it vanish.
    pub fn solve_single(&self) -> Option<(&CoeffKey, BigRational)> {
        if self.nonlinear || self.terms.len() != 1 {
            return None;
        }
        let (key, mult) = self.terms.iter().next()?;
        Some((key, -self.constant.clone() / mult))
    }

    /// Merges terms whose keys share an image under `rep`.
    pub fn quotient<F: Fn(&CoeffKey) -> CoeffKey>(&self, rep: F) -> LinearForm {
        let mut out = LinearForm {
            constant: self.constant.clone(),
            terms: BTreeMap::new(),
            nonlinear: self.nonlinear,
        };
        for (k, v) in &self.terms {
            out.add_term(rep(k), v.clone());
        }
        out
    }
}

impl AddAssign<&LinearForm> for LinearForm {
    fn add_assign(&mut self, rhs: &LinearForm) {
        self.constant += &rhs.constant;
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
        self.nonlinear |= rhs.nonlinear;
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm {
            constant: -self.constant,
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
            nonlinear: self.nonlinear,
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nonlinear {
            return write!(f, "<nonlinear>");
        }
        write!(f, "{}", self.constant)?;
        for (k, v) in &self.terms {
            write!(f, " + ({v})*{k}")?;
        }
        Ok(())
    }
}

/// One scalar WDVV equation: the quadruple and the monomial `t^beta e^{n t_mu}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WdvvInstance {
    pub quad: [Coordinate; 4],
    pub beta: MultiIndex,
    pub n: u32,
}

impl WdvvInstance {
    pub fn new(quad: [Coordinate; 4], beta: MultiIndex, n: u32) -> Self {
        WdvvInstance { quad, beta, n }
    }
}

impl fmt::Display for WdvvInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.quad;
        write!(f, "WDVV({a},{b},{c},{d}) at t^[{}] e^{{{} t_mu}}", self.beta, self.n)
    }
}

/// Integer weight that a target monomial must have for `WDVV(quad)` to
/// possibly be nonzero there: `3 - sum deg(quad)` in units of `1/L`, with
/// `d/dt_mu` of degree zero.
pub fn forced_weight(orbifold: &OrbifoldData, quad: &[Coordinate; 4]) -> i64 {
    3 * orbifold.grading_unit() - quad.iter().map(|&c| orbifold.derivative_weight(c)).sum::<i64>()
}

/// Weight of the monomial `t^beta e^{n t_mu}`.
pub fn target_weight(orbifold: &OrbifoldData, beta: &MultiIndex, n: u32) -> i64 {
    beta.weight(orbifold) + n as i64 * orbifold.chi_weight()
}

fn accumulate(form: &mut LinearForm, scale: &BigRational, left: Term, right: Term) {
    match (left, right) {
        (Term::Zero, _) | (_, Term::Zero) => {}
        (Term::Known(x), Term::Known(y)) => form.constant += scale * x * y,
        (Term::Known(x), Term::Unknown(k, m)) | (Term::Unknown(k, m), Term::Known(x)) => {
            form.add_term(k, scale * x * m)
        }
        (Term::Unknown(..), Term::Unknown(..)) => form.nonlinear = true,
    }
}

/// `sum_{s,t} [F_{x y s} eta^{s t} F_{t z w}]` at `t^beta e^{n t_mu}`.
fn pairing_product(
    p: &Potential,
    [x, y, z, w]: [Coordinate; 4],
    beta: &MultiIndex,
    n: u32,
    form: &mut LinearForm,
) {
    let orb = p.orbifold();
    let zero = MultiIndex::zero();
    let base_weight = 2 * orb.grading_unit();
    for (s, t, eta) in orb.inverse_pairs() {
        let (s, t) = (*s, *t);
        let left = [x, y, s];
        let right = [t, z, w];
        if left.contains(&Coordinate::Unit) {
            let l = p.third_derivative(left, &zero, 0);
            if matches!(l, Term::Zero) {
                continue;
            }
            accumulate(form, eta, l, p.third_derivative(right, beta, n));
            continue;
        }
        if right.contains(&Coordinate::Unit) {
            let r = p.third_derivative(right, &zero, 0);
            if matches!(r, Term::Zero) {
                continue;
            }
            accumulate(form, eta, p.third_derivative(left, beta, n), r);
            continue;
        }
        let left_dirs: i64 = left.iter().map(|&c| orb.derivative_weight(c)).sum();
        let left_has_div = left.contains(&Coordinate::Divisor);
        let right_has_div = right.contains(&Coordinate::Divisor);
        for n1 in 0..=n {
            if (left_has_div && n1 == 0) || (right_has_div && n1 == n) {
                continue;
            }
            let w1 = base_weight - n1 as i64 * orb.chi_weight() - left_dirs;
            for b1 in sub_indices_with_weight(orb, beta, w1) {
                let l = p.third_derivative(left, &b1, n1);
                if matches!(l, Term::Zero) {
                    continue;
                }
                let b2 = beta.checked_minus(&b1).expect("sub-index");
                let r = p.third_derivative(right, &b2, n - n1);
                accumulate(form, eta, l, r);
            }
        }
    }
}

/// The coefficient of the target monomial in `WDVV(a,b,c,d)`, as an affine
/// form in the Unknown coefficients of `p`.
pub fn wdvv_form(p: &Potential, inst: &WdvvInstance) -> LinearForm {
    let orb = p.orbifold();
    if target_weight(orb, &inst.beta, inst.n) != forced_weight(orb, &inst.quad) {
        return LinearForm::zero();
    }
    let [a, b, c, d] = inst.quad;
    let mut form = LinearForm::zero();
    pairing_product(p, [a, b, c, d], &inst.beta, inst.n, &mut form);
    let mut other = LinearForm::zero();
    pairing_product(p, [a, c, b, d], &inst.beta, inst.n, &mut other);
    form += &(-other);
    form
}

/// Exact value of the extracted coefficient; zero iff the equation holds at
/// this monomial. Fails if an unknown coefficient is reached.
pub fn wdvv_residual(p: &Potential, inst: &WdvvInstance) -> Result<BigRational> {
    let form = wdvv_form(p, inst);
    if form.nonlinear {
        return Err(Error::Nonlinear);
    }
    if let Some(key) = form.terms.keys().next() {
        return Err(Error::UnknownCoefficient(key.clone()));
    }
    Ok(form.constant)
}

/// Whether `WDVV(a,b,c,d) + WDVV(a,c,b,d)` is the zero form.
pub fn antisymmetry_check(p: &Potential, quad: [Coordinate; 4], beta: &MultiIndex, n: u32) -> bool {
    let [a, b, c, d] = quad;
    let mut sum = wdvv_form(p, &WdvvInstance::new([a, b, c, d], beta.clone(), n));
    sum += &wdvv_form(p, &WdvvInstance::new([a, c, b, d], beta.clone(), n));
    sum.is_zero()
}

/// Quadruples giving every independent WDVV equation once.
///
/// For a sorted multiset `{a <= b <= c <= d}` the three pairings
/// `ab|cd`, `ac|bd`, `ad|bc` must agree; the quadruples `(a,b,c,d)` and
/// `(a,b,d,c)` compare the first with the other two. Comparisons of a pairing
/// with itself are dropped.
pub fn canonical_quadruples(orbifold: &OrbifoldData) -> Vec<[Coordinate; 4]> {
    let cs = orbifold.coordinates();
    let k = cs.len();
    let pairing = |x: Coordinate, y: Coordinate, z: Coordinate, w: Coordinate| {
        let mut p1 = [x, y];
        let mut p2 = [z, w];
        p1.sort();
        p2.sort();
        let mut pr = [p1, p2];
        pr.sort();
        pr
    };
    let mut out = Vec::new();
    for i in 0..k {
        for j in i..k {
            for l in j..k {
                for m in l..k {
                    let (a, b, c, d) = (cs[i], cs[j], cs[l], cs[m]);
                    let p1 = pairing(a, b, c, d);
                    let p2 = pairing(a, c, b, d);
                    let p3 = pairing(a, d, b, c);
                    if p1 != p2 {
                        out.push([a, b, c, d]);
                    }
                    if p3 != p1 && p3 != p2 {
                        out.push([a, b, d, c]);
                    }
                }
            }
        }
    }
    out
}

/// Target monomials `(beta, n)` with `n <= max_n` at which `WDVV(quad)` can
/// be nonzero, in canonical order.
pub fn targets(orbifold: &OrbifoldData, quad: &[Coordinate; 4], max_n: u32) -> Vec<(MultiIndex, u32)> {
    let forced = forced_weight(orbifold, quad);
    let mut out = Vec::new();
    for n in 0..=max_n {
        let w = forced - n as i64 * orbifold.chi_weight();
        for beta in monomials_with_weight(orbifold, w) {
            out.push((beta, n));
        }
    }
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
    fn linear_form_cancellation() {
        let mut f = LinearForm::zero();
        let k = CoeffKey::new(MultiIndex::zero(), 1);
        f.add_term(k.clone(), q(1, 2));
        f.add_term(k.clone(), q(-1, 2));
        assert!(f.terms.is_empty());
        f.add_term(k.clone(), q(3, 1));
        f.constant = q(6, 1);
        assert_eq!(f.solve_single(), Some((&k, q(-2, 1))));
    }

    #[test]
    fn unit_quadruple_is_identically_zero() {
        let a = OrbifoldData::new(2, 3, 5).unwrap();
        let p = Potential::new(a, 1, None).unwrap();
        let u = Coordinate::Unit;
        assert!(antisymmetry_check(&p, [u, u, u, u], &MultiIndex::zero(), 0));
        let f = wdvv_form(&p, &WdvvInstance::new([u, u, u, u], MultiIndex::zero(), 0));
        assert!(f.is_zero());
    }

    #[test]
    fn degree_mismatch_gives_zero_form() {
        let a = OrbifoldData::new(2, 2, 2).unwrap();
        let p = Potential::new(a, 4, None).unwrap();
        let inst = WdvvInstance::new(
            [t(1, 1), t(1, 1), Coordinate::Divisor, Coordinate::Divisor],
            MultiIndex::from_coords([t(1, 1), t(2, 1)]),
            1,
        );
        assert!(wdvv_form(&p, &inst).is_zero());
    }

    #[test]
    fn canonical_quadruples_cover_each_pairing_difference() {
        let a = OrbifoldData::new(1, 1, 1).unwrap();
        let quads = canonical_quadruples(&a);
        // multisets over {1, mu}: {1111},{111m},{11mm},{1mmm},{mmmm};
        // only {11mm} has two distinct pairings (11|mm vs 1m|1m)
        assert_eq!(quads.len(), 1);
        assert_eq!(
            quads[0],
            [Coordinate::Unit, Coordinate::Unit, Coordinate::Divisor, Coordinate::Divisor]
        );
    }
}
