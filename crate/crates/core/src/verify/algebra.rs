//! The Frobenius algebra at `t = 0`, `e^{t_mu} = 0`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::orbifold::{Coordinate, OrbifoldData};
use crate::series::{MultiIndex, Potential};

/// An element of the algebra in the basis `d/dt_c`. Zero entries are never stored.
pub type Element = BTreeMap<Coordinate, BigRational>;

/// Multiplication table `d_x o d_y` of the limit algebra.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    orbifold: OrbifoldData,
    table: BTreeMap<(Coordinate, Coordinate), Element>,
}

impl StructureConstants {
    pub fn orbifold(&self) -> &OrbifoldData {
        &self.orbifold
    }

    pub fn product(&self, x: Coordinate, y: Coordinate) -> Element {
        self.table.get(&(x, y)).cloned().unwrap_or_default()
    }

    /// Overwrites the single entry `d_x o d_y` (not `d_y o d_x`).
    pub fn set_product(&mut self, x: Coordinate, y: Coordinate, value: Element) {
        self.table.insert((x, y), value);
    }

    pub fn basis(c: Coordinate) -> Element {
        let mut e = Element::new();
        e.insert(c, BigRational::one());
        e
    }

    /// Bilinear extension of [`StructureConstants::product`].
    pub fn multiply(&self, u: &Element, v: &Element) -> Element {
        let mut out = Element::new();
        for (x, a) in u {
            for (y, b) in v {
                for (z, c) in self.product(*x, *y) {
                    add(&mut out, z, a * b * c);
                }
            }
        }
        out
    }

    pub fn power(&self, x: Coordinate, k: u32) -> Element {
        let mut acc = Self::basis(Coordinate::Unit);
        let b = Self::basis(x);
        for _ in 0..k {
            acc = self.multiply(&acc, &b);
        }
        acc
    }
}

fn add(e: &mut Element, c: Coordinate, v: BigRational) {
    let slot = e.entry(c).or_insert_with(BigRational::zero);
    *slot += v;
    if slot.is_zero() {
        e.remove(&c);
    }
}

/// `d_x o d_y = sum F_{x y s}(0, 0) eta^{s t} d_t`.
pub fn limit_algebra(p: &Potential) -> Result<StructureConstants> {
    let orb = p.orbifold();
    let coords = orb.coordinates();
    let zero = MultiIndex::zero();
    let mut table = BTreeMap::new();
    for &x in &coords {
        for &y in &coords {
            let mut e = Element::new();
            for (s, t, eta) in orb.inverse_pairs() {
                let form = p.third_derivative_coefficient(x, y, *s, &zero, 0)?;
                if let Some(k) = form.terms.keys().next() {
                    return Err(Error::UnknownCoefficient(k.clone()));
                }
                if !form.constant.is_zero() {
                    add(&mut e, *t, form.constant * eta);
                }
            }
            table.insert((x, y), e);
        }
    }
    Ok(StructureConstants {
        orbifold: orb.clone(),
        table,
    })
}

/// Result of [`check_presentation`]: `ok` and one line per violated relation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PresentationCheck {
    pub ok: bool,
    pub diagnoses: Vec<String>,
}

/// Checks that the limit algebra is `Q[x1, x2, x3] / (x_i x_k, a_i x_i^{a_i} - a_k x_k^{a_k})`
/// with `x_i = d_{(i,1)}`, `x_i^j = d_{(i,j)}` and `x_i^{a_i} = d_mu / a_i`, for
/// legs with `a_i >= 2`. Also checks unit, commutativity and associativity.
pub fn check_presentation(sc: &StructureConstants) -> PresentationCheck {
    let orb = sc.orbifold();
    let coords = orb.coordinates();
    let unit = Coordinate::Unit;
    let mu = Coordinate::Divisor;
    let mut diagnoses = Vec::new();
    let basis = StructureConstants::basis;

    for &x in &coords {
        if sc.product(unit, x) != basis(x) {
            diagnoses.push(format!("1 o {x} ≠ {x}"));
        }
    }
    for &x in &coords {
        for &y in &coords {
            if x < y && sc.product(x, y) != sc.product(y, x) {
                diagnoses.push(format!("{x} o {y} ≠ {y} o {x}"));
            }
            for &z in &coords {
                let left = sc.multiply(&sc.product(x, y), &basis(z));
                let right = sc.multiply(&basis(x), &sc.product(y, z));
                if left != right {
                    diagnoses.push(format!("({x} o {y}) o {z} ≠ {x} o ({y} o {z})"));
                }
            }
        }
    }
    let legs: Vec<u8> = (1..=3u8).filter(|&l| orb.order(l) >= 2).collect();
    for (ix, &i) in legs.iter().enumerate() {
        for &k in &legs[ix + 1..] {
            let (xi, xk) = (Coordinate::twisted(i, 1), Coordinate::twisted(k, 1));
            if !sc.product(xi, xk).is_empty() || !sc.product(xk, xi).is_empty() {
                diagnoses.push(format!("x{i}x{k} ≠ 0"));
            }
        }
    }
    for &i in &legs {
        let ai = orb.order(i);
        let x = Coordinate::twisted(i, 1);
        for j in 1..ai {
            if sc.power(x, j) != basis(Coordinate::twisted(i, j)) {
                diagnoses.push(format!("x{i}^{j} ≠ d(t_{i}{j})"));
            }
        }
        let mut expected = Element::new();
        expected.insert(mu, BigRational::new(1.into(), (ai as i64).into()));
        if sc.power(x, ai) != expected {
            diagnoses.push(format!("x{i}^{ai} ≠ d(t_mu)/{ai}"));
        }
        if !sc.product(mu, x).is_empty() {
            diagnoses.push(format!("d(t_mu) o x{i} ≠ 0"));
        }
    }
    if !sc.product(mu, mu).is_empty() {
        diagnoses.push("d(t_mu) o d(t_mu) ≠ 0".to_string());
    }
    PresentationCheck {
        ok: diagnoses.is_empty(),
        diagnoses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reconstruct::seed;

    #[test]
    fn seeded_potential_has_expected_algebra() {
        for (a1, a2, a3) in [(1, 1, 1), (1, 2, 3), (2, 2, 2), (2, 3, 7), (3, 3, 3)] {
            let orb = OrbifoldData::new(a1, a2, a3).unwrap();
            let (p, _) = seed(&orb, 1, None).unwrap();
            let sc = limit_algebra(&p).unwrap();
            let check = check_presentation(&sc);
            assert!(check.ok, "{orb}: {:?}", check.diagnoses);
        }
    }

    #[test]
    fn cross_leg_cubic_is_diagnosed() {
        let orb = OrbifoldData::new(3, 3, 3).unwrap();
        let mut p = Potential::new(orb.clone(), 1, None).unwrap();
        for (k, v) in crate::reconstruct::cubic_seeds(&orb) {
            p.set_known(k, v).unwrap();
        }
        let rest: Vec<_> = p.unknown_keys().filter(|k| k.m == 0 && k.length() == 3).cloned().collect();
        for k in rest {
            p.set_known(k, BigRational::zero()).unwrap();
        }
        let t = Coordinate::twisted;
        let key = crate::series::CoeffKey::new(MultiIndex::from_coords([t(1, 1), t(2, 1), t(3, 1)]), 0);
        p.set_known(key, BigRational::one()).unwrap();
        let check = check_presentation(&limit_algebra(&p).unwrap());
        assert!(!check.ok);
        assert!(check.diagnoses.iter().any(|d| d == "x1x2 ≠ 0"));
    }

    #[test]
    fn forced_product_is_diagnosed() {
        let orb = OrbifoldData::new(2, 2, 2).unwrap();
        let (p, _) = seed(&orb, 1, None).unwrap();
        let mut sc = limit_algebra(&p).unwrap();
        let (x1, x2) = (Coordinate::twisted(1, 1), Coordinate::twisted(2, 1));
        sc.set_product(x1, x2, StructureConstants::basis(Coordinate::Divisor));
        sc.set_product(x2, x1, StructureConstants::basis(Coordinate::Divisor));
        let check = check_presentation(&sc);
        assert!(!check.ok);
        assert!(check.diagnoses.contains(&"x1x2 ≠ 0".to_string()));
    }
}
