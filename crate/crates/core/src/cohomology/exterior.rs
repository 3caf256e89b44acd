use num_bigint::BigInt;
use num_traits::Zero;

use super::ring::{CohomologyRing, DegreeGroup};
use crate::abgroup::FGAbelianGroup;
use crate::error::{Error, Result};

/// Exterior algebra on odd-degree generators `c_d`.
///
/// Basis elements are subsets of the generators, ordered by degree. Within a
/// degree, monomials are listed in increasing bitmask order. Every product of
/// non-unit monomials landing in a nonzero group is stored, so both orders of
/// each pair are available for commutativity checks.
pub fn exterior_algebra(generator_degrees: &[usize]) -> Result<CohomologyRing> {
    let mut gens = generator_degrees.to_vec();
    gens.sort_unstable();
    if let Some(d) = gens.iter().find(|d| *d % 2 == 0) {
        return Err(Error::InvalidInput(format!("generator degree {d} is not odd")));
    }
    if let Some(w) = gens.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput(format!("generator degree {} repeats", w[0])));
    }
    if gens.len() > 16 {
        return Err(Error::Unsupported(format!("{} exterior generators", gens.len())));
    }

    let k = gens.len();
    let degree_of = |mask: usize| -> usize { (0..k).filter(|b| mask >> b & 1 == 1).map(|b| gens[b]).sum() };
    let top: usize = gens.iter().sum();

    let mut basis: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for mask in 0..1usize << k {
        basis[degree_of(mask)].push(mask);
    }
    let position = |mask: usize| basis[degree_of(mask)].iter().position(|&m| m == mask).unwrap();

    let degrees: Vec<DegreeGroup> = basis
        .iter()
        .map(|masks| {
            let labels = masks.iter().map(|&m| monomial_label(&gens, m)).collect();
            DegreeGroup::new(FGAbelianGroup::free(masks.len()), labels)
        })
        .collect::<Result<_>>()?;
    let mut ring = CohomologyRing::new(degrees)?;

    for (p, left) in basis.iter().enumerate().skip(1) {
        for (q, right) in basis.iter().enumerate().skip(1) {
            if p + q > top || basis[p + q].is_empty() {
                continue;
            }
            for (i, &s) in left.iter().enumerate() {
                for (j, &t) in right.iter().enumerate() {
                    let mut result = vec![BigInt::zero(); basis[p + q].len()];
                    if s & t == 0 {
                        result[position(s | t)] = BigInt::from(shuffle_sign(s, t));
                    }
                    ring.insert_product((p, i), (q, j), result)?;
                }
            }
        }
    }
    Ok(ring)
}

/// Sign of sorting the concatenation `s · t` of odd generators.
fn shuffle_sign(s: usize, t: usize) -> i64 {
    let mut inversions = 0u32;
    let mut rest = s;
    while rest != 0 {
        let b = rest.trailing_zeros();
        inversions += (t & ((1usize << b) - 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn monomial_label(gens: &[usize], mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    gens.iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, d)| format!("c{d}"))
        .collect()
}

/// `H^*(SU(n)) = Λ(c_3, c_5, ..., c_{2n-1})`.
pub fn su_ring(n: usize) -> Result<CohomologyRing> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("SU({n}) needs n >= 2")));
    }
    let degrees: Vec<usize> = (2..=n).map(|i| 2 * i - 1).collect();
    exterior_algebra(&degrees)
}
