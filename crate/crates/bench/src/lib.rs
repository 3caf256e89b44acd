//! Benchmark fixtures.

use num_bigint::BigInt;
use twistk::abgroup::IntMatrix;
use twistk::cohomology::su_ring;
use twistk::spectral::AhssOptions;
use twistk::{CohClass, CohomologyRing};

/// `SU(n)` with `δ = N c_{2n-1}` and the certificate the catalog supplies.
pub fn su_top_twist(n: usize, twist: i64) -> (CohomologyRing, CohClass, AhssOptions) {
    let ring = su_ring(n).expect("supported rank");
    let d = 2 * n - 1;
    let i = ring
        .labels(d)
        .iter()
        .position(|l| *l == format!("c{d}"))
        .expect("primitive generator");
    let c = CohClass::generator(&ring, d, i);
    let delta = c.scaled(&BigInt::from(twist));
    let options = AhssOptions {
        sphere_pullback: Some(c),
    };
    (ring, delta, options)
}

/// A dense `size x size` matrix with entries in `[-48, 48]`, deterministic.
pub fn dense_matrix(size: usize) -> IntMatrix {
    let entries = (0..size * size)
        .map(|k| {
            let (i, j) = ((k / size) as i64, (k % size) as i64);
            BigInt::from((i * 7 + j * 13 + i * j).pow(2) % 97 - 48)
        })
        .collect();
    IntMatrix::from_entries(size, size, entries).expect("square")
}
