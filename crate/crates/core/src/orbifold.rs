//! The triple `A = (a1, a2, a3)`, its flat coordinates, Euler grading and
//! flat metric.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A flat coordinate of the Frobenius manifold.
///
/// The derived ordering is the canonical coordinate order:
/// `Unit < Twisted(1,1) < ... < Twisted(3, a3 - 1) < Divisor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coordinate {
    /// `t1`, dual to the unit.
    Unit,
    /// `t_{leg,j}` with `1 <= j <= a_leg - 1`.
    Twisted { leg: u8, j: u32 },
    /// `t_mu`, the divisor direction.
    Divisor,
}

impl Coordinate {
    pub fn twisted(leg: u8, j: u32) -> Self {
        Coordinate::Twisted { leg, j }
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self, Coordinate::Twisted { .. })
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Unit => write!(f, "1"),
            Coordinate::Twisted { leg, j } => write!(f, "({leg},{j})"),
            Coordinate::Divisor => write!(f, "mu"),
        }
    }
}

/// The orbifold projective line data for a sorted triple of positive integers.
///
/// Besides `mu` and `chi` this caches an integer form of the Euler grading:
/// with `L = lcm(a1, a2, a3)`, the twisted coordinate `t_{i,j}` has weight
/// `(a_i - j) L / a_i` and `e^{t_mu}` has weight `chi L`. Homogeneity of the
/// potential is then an identity between integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldData {
    a: [u32; 3],
    mu: usize,
    chi: BigRational,
    lcm: i64,
    chi_weight: i64,
    twisted: Vec<Coordinate>,
    weights: Vec<i64>,
    offsets: [usize; 3],
    inverse_pairs: Vec<(Coordinate, Coordinate, BigRational)>,
}

impl OrbifoldData {
    /// Builds the data for `A = (a1, a2, a3)`.
    ///
    /// The triple must already be sorted; sorting is left to the caller so
    /// that leg labels in coordinates stay unambiguous.
    pub fn new(a1: i64, a2: i64, a3: i64) -> Result<Self> {
        if a1 < 1 || a2 < 1 || a3 < 1 || a1 > a2 || a2 > a3 || a3 > u32::MAX as i64 {
            return Err(Error::InvalidTriple(a1, a2, a3));
        }
        let a = [a1 as u32, a2 as u32, a3 as u32];
        let mu = (a1 + a2 + a3 - 1) as usize;
        let chi = a
            .iter()
            .map(|&ai| BigRational::new(BigInt::one(), BigInt::from(ai)))
            .fold(-BigRational::one(), |acc, x| acc + x);
        let lcm = a.iter().fold(1i64, |acc, &ai| acc.lcm(&(ai as i64)));
        let chi_weight = a.iter().map(|&ai| lcm / ai as i64).sum::<i64>() - lcm;

        let mut twisted = Vec::with_capacity(mu - 2);
        let mut weights = Vec::with_capacity(mu - 2);
        let mut offsets = [0usize; 3];
        for (i, &ai) in a.iter().enumerate() {
            offsets[i] = twisted.len();
            for j in 1..ai {
                twisted.push(Coordinate::twisted(i as u8 + 1, j));
                weights.push((ai - j) as i64 * lcm / ai as i64);
            }
        }
        let mut data = OrbifoldData {
            a,
            mu,
            chi,
            lcm,
            chi_weight,
            twisted,
            weights,
            offsets,
            inverse_pairs: Vec::new(),
        };
        data.inverse_pairs = data
            .coordinates()
            .into_iter()
            .map(|s| {
                let t = data.dual(s);
                let v = data.metric_inverse(s, t);
                (s, t, v)
            })
            .collect();
        Ok(data)
    }

    pub fn a(&self) -> [u32; 3] {
        self.a
    }

    /// Order `a_leg` of the orbifold point on `leg` (1-based).
    pub fn order(&self, leg: u8) -> u32 {
        self.a[leg as usize - 1]
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn chi(&self) -> &BigRational {
        &self.chi
    }

    /// `lcm(a1, a2, a3)`, the denominator of the integer grading.
    pub fn grading_unit(&self) -> i64 {
        self.lcm
    }

    /// `chi * lcm(a1, a2, a3)`.
    pub fn chi_weight(&self) -> i64 {
        self.chi_weight
    }

    /// Number of twisted coordinates, `mu - 2`.
    pub fn num_twisted(&self) -> usize {
        self.twisted.len()
    }

    /// Twisted coordinates in canonical order.
    pub fn twisted_coordinates(&self) -> &[Coordinate] {
        &self.twisted
    }

    /// Integer weights of the twisted coordinates, aligned with
    /// [`twisted_coordinates`](Self::twisted_coordinates).
    pub fn twisted_weights(&self) -> &[i64] {
        &self.weights
    }

    /// All `mu` coordinates in canonical order.
    pub fn coordinates(&self) -> Vec<Coordinate> {
        let mut out = Vec::with_capacity(self.mu);
        out.push(Coordinate::Unit);
        out.extend_from_slice(&self.twisted);
        out.push(Coordinate::Divisor);
        out
    }

    pub fn is_valid(&self, c: Coordinate) -> bool {
        match c {
            Coordinate::Twisted { leg, j } => {
                (1..=3).contains(&leg) && j >= 1 && j < self.order(leg)
            }
            _ => true,
        }
    }

    pub fn check(&self, c: Coordinate) -> Result<Coordinate> {
        if self.is_valid(c) {
            Ok(c)
        } else {
            Err(Error::InvalidCoordinate(c.to_string()))
        }
    }

    /// Position of a twisted coordinate inside a multi-index.
    pub fn twisted_index(&self, c: Coordinate) -> Option<usize> {
        match c {
            Coordinate::Twisted { leg, j } if self.is_valid(c) => {
                Some(self.offsets[leg as usize - 1] + j as usize - 1)
            }
            _ => None,
        }
    }

    /// Leg (1-based) of the twisted coordinate at `index`.
    pub fn leg_of_index(&self, index: usize) -> u8 {
        match self.twisted[index] {
            Coordinate::Twisted { leg, .. } => leg,
            _ => unreachable!("twisted table only holds twisted coordinates"),
        }
    }

    /// Euler degree of a coordinate. For the divisor this is the degree of
    /// `e^{t_mu}`, namely `chi`; `t_mu` itself has degree zero.
    pub fn coordinate_degree(&self, c: Coordinate) -> BigRational {
        match c {
            Coordinate::Unit => BigRational::one(),
            Coordinate::Twisted { leg, j } => {
                let ai = self.order(leg);
                BigRational::new(BigInt::from(ai - j), BigInt::from(ai))
            }
            Coordinate::Divisor => self.chi.clone(),
        }
    }

    /// Integer weight of a derivative direction: `L` for the unit,
    /// `(a_i - j) L / a_i` for `t_{i,j}` and `0` for `t_mu`.
    pub fn derivative_weight(&self, c: Coordinate) -> i64 {
        match c {
            Coordinate::Unit => self.lcm,
            Coordinate::Twisted { .. } => self.weights[self.twisted_index(c).expect("valid")],
            Coordinate::Divisor => 0,
        }
    }

    /// The coordinate paired with `c` by the flat metric.
    pub fn dual(&self, c: Coordinate) -> Coordinate {
        match c {
            Coordinate::Unit => Coordinate::Divisor,
            Coordinate::Divisor => Coordinate::Unit,
            Coordinate::Twisted { leg, j } => Coordinate::twisted(leg, self.order(leg) - j),
        }
    }

    /// Flat metric `eta(c1, c2)`.
    pub fn metric(&self, c1: Coordinate, c2: Coordinate) -> BigRational {
        if self.dual(c1) != c2 {
            return BigRational::zero();
        }
        match c1 {
            Coordinate::Twisted { leg, .. } => {
                BigRational::new(BigInt::one(), BigInt::from(self.order(leg)))
            }
            _ => BigRational::one(),
        }
    }

    /// Entry `eta^{c1 c2}` of the inverse metric.
    pub fn metric_inverse(&self, c1: Coordinate, c2: Coordinate) -> BigRational {
        if self.dual(c1) != c2 {
            return BigRational::zero();
        }
        match c1 {
            Coordinate::Twisted { leg, .. } => BigRational::from_integer(self.order(leg).into()),
            _ => BigRational::one(),
        }
    }

    /// Nonzero entries `(sigma, tau, eta^{sigma tau})` of the inverse metric,
    /// in canonical order of `sigma`. There are exactly `mu` of them.
    pub fn inverse_pairs(&self) -> &[(Coordinate, Coordinate, BigRational)] {
        &self.inverse_pairs
    }

    /// Leg permutations `p` (with `p[i]` the image of leg `i`, 0-based)
    /// that preserve the orders `a_i`. The identity comes first.
    pub fn leg_symmetries(&self) -> Vec<[usize; 3]> {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        PERMS
            .iter()
            .copied()
            .filter(|p| (0..3).all(|i| self.a[p[i]] == self.a[i]))
            // Legs with a_i = 1 carry no coordinates; permuting them is trivial.
            .filter(|p| (0..3).all(|i| self.a[i] >= 2 || p[i] == i))
            .collect()
    }

    /// Image of the twisted coordinate at `index` under a leg permutation.
    pub fn permute_index(&self, perm: &[usize; 3], index: usize) -> usize {
        match self.twisted[index] {
            Coordinate::Twisted { leg, j } => {
                let target = perm[leg as usize - 1];
                self.offsets[target] + j as usize - 1
            }
            _ => unreachable!(),
        }
    }

    /// Largest `m` for which `e^{m t_mu}` can occur, when `chi > 0`.
    pub fn natural_max_m(&self) -> Option<u32> {
        if self.chi_weight > 0 {
            Some((2 * self.lcm / self.chi_weight) as u32)
        } else {
            None
        }
    }
}

impl fmt::Display for OrbifoldData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a[0], self.a[1], self.a[2])
    }
}

/// Multinomial symmetry factor: 1 if all distinct, 6 if all equal, 2 otherwise.
pub fn symmetry_factor(a: i64, b: i64, c: i64) -> u32 {
    if a == b && b == c {
        6
    } else if a == b || b == c || a == c {
        2
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rank_and_euler_number() {
        let a = OrbifoldData::new(1, 1, 1).unwrap();
        assert_eq!((a.mu(), a.chi().clone()), (2, q(2, 1)));
        let a = OrbifoldData::new(2, 2, 2).unwrap();
        assert_eq!((a.mu(), a.chi().clone()), (5, q(1, 2)));
        let a = OrbifoldData::new(2, 3, 7).unwrap();
        assert_eq!((a.mu(), a.chi().clone()), (11, q(-1, 42)));
        assert_eq!(a.chi_weight(), -1);
    }

    #[test]
    fn rejects_bad_triples() {
        assert!(matches!(OrbifoldData::new(0, 1, 1), Err(Error::InvalidTriple(..))));
        assert!(matches!(OrbifoldData::new(-2, 3, 3), Err(Error::InvalidTriple(..))));
        assert!(matches!(OrbifoldData::new(3, 2, 4), Err(Error::InvalidTriple(..))));
    }

    #[test]
    fn degrees() {
        let a = OrbifoldData::new(2, 2, 2).unwrap();
        assert_eq!(a.coordinate_degree(Coordinate::twisted(1, 1)), q(1, 2));
        let a = OrbifoldData::new(3, 4, 5).unwrap();
        assert_eq!(a.coordinate_degree(Coordinate::twisted(3, 4)), q(1, 5));
        let a = OrbifoldData::new(1, 1, 1).unwrap();
        assert_eq!(a.coordinate_degree(Coordinate::Divisor), q(2, 1));
        assert_eq!(a.coordinate_degree(Coordinate::Unit), q(1, 1));
    }

    #[test]
    fn coordinates_are_ordered_and_counted() {
        for (a1, a2, a3) in [(1, 1, 1), (1, 2, 3), (2, 3, 7), (3, 3, 3)] {
            let a = OrbifoldData::new(a1, a2, a3).unwrap();
            let cs = a.coordinates();
            assert_eq!(cs.len(), a.mu());
            assert!(cs.windows(2).all(|w| w[0] < w[1]));
            assert!(cs.iter().all(|&c| a.is_valid(c)));
        }
        let a = OrbifoldData::new(1, 2, 2).unwrap();
        assert!(!a.is_valid(Coordinate::twisted(1, 1)));
        assert!(!a.is_valid(Coordinate::twisted(2, 2)));
    }

    #[test]
    fn metric_entries() {
        let a = OrbifoldData::new(2, 3, 4).unwrap();
        let t = Coordinate::twisted;
        assert_eq!(a.metric(t(2, 1), t(2, 2)), q(1, 3));
        assert_eq!(a.metric(t(2, 1), t(3, 1)), q(0, 1));
        assert_eq!(a.metric(Coordinate::Unit, Coordinate::Divisor), q(1, 1));
        assert_eq!(a.metric_inverse(t(3, 1), t(3, 3)), q(4, 1));
        // sum_sigma eta(1, sigma) eta^{sigma, 1} = 1
        let s: BigRational = a
            .coordinates()
            .into_iter()
            .map(|s| a.metric(Coordinate::Unit, s) * a.metric_inverse(s, Coordinate::Unit))
            .sum();
        assert_eq!(s, q(1, 1));
    }

    #[test]
    fn symmetry_factors() {
        assert_eq!(symmetry_factor(1, 2, 3), 1);
        assert_eq!(symmetry_factor(2, 2, 2), 6);
        assert_eq!(symmetry_factor(1, 1, 3), 2);
        assert_eq!(symmetry_factor(3, 1, 3), 2);
    }

    #[test]
    fn leg_symmetry_groups() {
        let count = |a1, a2, a3| OrbifoldData::new(a1, a2, a3).unwrap().leg_symmetries().len();
        assert_eq!(count(2, 3, 7), 1);
        assert_eq!(count(2, 2, 5), 2);
        assert_eq!(count(3, 3, 3), 6);
        assert_eq!(count(1, 2, 2), 2);
        assert_eq!(count(1, 1, 4), 1);
    }

    #[test]
    fn natural_bound() {
        assert_eq!(OrbifoldData::new(2, 2, 2).unwrap().natural_max_m(), Some(4));
        assert_eq!(OrbifoldData::new(1, 1, 1).unwrap().natural_max_m(), Some(1));
        assert_eq!(OrbifoldData::new(1, 2, 3).unwrap().natural_max_m(), Some(2));
        assert_eq!(OrbifoldData::new(3, 3, 3).unwrap().natural_max_m(), None);
    }
}
