//! Benchmark inputs shared by the criterion benches.

use frobrec_core::OrbifoldData;

/// Orbifolds used in the benches, with the degree bound for each.
pub fn cases() -> Vec<(OrbifoldData, u32)> {
    [((2, 3, 7), 2), ((3, 3, 3), 3), ((2, 2, 2), 4)]
        .into_iter()
        .map(|((a1, a2, a3), m)| (OrbifoldData::new(a1, a2, a3).expect("valid triple"), m))
        .collect()
}
