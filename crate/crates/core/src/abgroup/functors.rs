//! Tensor, Tor, Hom and Ext over the integers, and the four-term exact
//! sequence solver.

use num_bigint::BigInt;

use super::group::{gcd, FGAbelianGroup};
use super::hom::{cokernel, kernel, GroupHom};
use crate::error::Result;

/// `G ⊗ H`. Bilinear over the cyclic decompositions with
/// `Z_m ⊗ Z_n = Z_gcd(m,n)`.
pub fn tensor(g: &FGAbelianGroup, h: &FGAbelianGroup) -> FGAbelianGroup {
    let mut orders: Vec<BigInt> = Vec::new();
    for _ in 0..g.rank() {
        orders.extend(h.torsion().iter().cloned());
    }
    for _ in 0..h.rank() {
        orders.extend(g.torsion().iter().cloned());
    }
    for m in g.torsion() {
        for n in h.torsion() {
            orders.push(gcd(m, n));
        }
    }
    FGAbelianGroup::from_factors(g.rank() * h.rank(), &orders)
}

/// `Tor_1^Z(G, H)`: only torsion-torsion pairs contribute.
pub fn tor(g: &FGAbelianGroup, h: &FGAbelianGroup) -> FGAbelianGroup {
    let orders: Vec<BigInt> = g
        .torsion()
        .iter()
        .flat_map(|m| h.torsion().iter().map(move |n| gcd(m, n)))
        .collect();
    FGAbelianGroup::from_factors(0, &orders)
}

/// `Hom_Z(G, Z)`: the dual of the free part.
pub fn hom_z(g: &FGAbelianGroup) -> FGAbelianGroup {
    FGAbelianGroup::free(g.rank())
}

/// `Ext^1_Z(G, Z)`: the torsion subgroup of `G` (finite groups are self-dual).
pub fn ext_z(g: &FGAbelianGroup) -> FGAbelianGroup {
    g.torsion_subgroup()
}

/// `Ext^1_Z(Q, A)` = `⊕ A / q A` over the torsion factors `q` of `Q`.
pub fn ext(q: &FGAbelianGroup, a: &FGAbelianGroup) -> FGAbelianGroup {
    let mut orders: Vec<BigInt> = Vec::new();
    for qi in q.torsion() {
        // Z/q ⊗ A with A = Z^r ⊕ Z_{a_j}
        for _ in 0..a.rank() {
            orders.push(qi.clone());
        }
        for aj in a.torsion() {
            orders.push(gcd(qi, aj));
        }
    }
    FGAbelianGroup::from_factors(0, &orders)
}

/// Solves `0 -> L -> dom(f) --f--> cod(f) -> R -> 0` for `(L, R)`.
pub fn solve_four_term(f: &GroupHom) -> Result<(FGAbelianGroup, FGAbelianGroup)> {
    let (left, _) = kernel(f)?;
    let (right, _) = cokernel(f)?;
    let alternating = left.rank() as i64 - f.domain().rank() as i64 + f.codomain().rank() as i64 - right.rank() as i64;
    assert_eq!(alternating, 0, "four-term sequence is not rank-exact");
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::IntMatrix;

    fn z(n: i64) -> FGAbelianGroup {
        FGAbelianGroup::cyclic(n)
    }

    fn free(r: usize) -> FGAbelianGroup {
        FGAbelianGroup::free(r)
    }

    /// Brute-force `|Z_m ⊗ Z_n|`: the tensor of cyclic groups is the quotient
    /// of `Z` by the relations `m` and `n`, so count residues of `Z` that
    /// survive both, i.e. the size of the subgroup lattice `mZ + nZ` in `Z`.
    fn cyclic_tensor_order_bruteforce(m: i64, n: i64) -> i64 {
        let mut smallest = m.max(n);
        for a in -n..=n {
            for b in -m..=m {
                let v = a * m + b * n;
                if v > 0 && v < smallest {
                    smallest = v;
                }
            }
        }
        smallest
    }

    #[test]
    fn tensor_cases() {
        assert_eq!(tensor(&free(2), &z(7)), z(7).power(2));
        let g = FGAbelianGroup::from_factors(1, &[BigInt::from(12)]);
        assert_eq!(tensor(&free(1), &g), g);
        assert_eq!(cyclic_tensor_order_bruteforce(4, 6), 2);
        assert_eq!(tensor(&z(4), &z(6)), z(2));
    }

    #[test]
    fn tensor_matches_bruteforce_on_cyclics() {
        for m in 2..12 {
            for n in 2..12 {
                let expected = cyclic_tensor_order_bruteforce(m, n);
                assert_eq!(tensor(&z(m), &z(n)), z(expected), "Z_{m} ⊗ Z_{n}");
            }
        }
    }

    #[test]
    fn tor_cases() {
        assert!(tor(&free(2), &z(9)).is_trivial());
        assert_eq!(tor(&z(6), &z(4)), z(2));
        assert!(tor(&FGAbelianGroup::trivial(), &z(5)).is_trivial());
    }

    #[test]
    fn ext_and_hom() {
        let g = FGAbelianGroup::from_factors(0, &[BigInt::from(3), BigInt::from(9)]);
        assert_eq!(ext_z(&g), g);
        assert!(ext_z(&free(4)).is_trivial());
        assert_eq!(ext_z(&FGAbelianGroup::from_factors(1, &[BigInt::from(5)])), z(5));
        assert!(hom_z(&z(11)).is_trivial());
        assert_eq!(hom_z(&free(2)), free(2));
        assert_eq!(hom_z(&FGAbelianGroup::from_factors(2, &[BigInt::from(3)])), free(2));
    }

    #[test]
    fn ext_between_cyclics() {
        assert_eq!(ext(&z(4), &z(6)), z(2));
        assert!(ext(&free(1), &z(6)).is_trivial());
        assert_eq!(ext(&z(5), &free(1)), z(5));
        assert!(ext(&z(3), &z(4)).is_trivial());
    }

    #[test]
    fn four_term() {
        let f = GroupHom::between_free(IntMatrix::from_i64(&[&[1, -1], &[0, 9]]));
        let (l, r) = solve_four_term(&f).unwrap();
        assert!(l.is_trivial());
        assert_eq!(r, z(9));

        let f = GroupHom::between_free(IntMatrix::from_i64(&[&[4]]));
        let (l, r) = solve_four_term(&f).unwrap();
        assert!(l.is_trivial());
        assert_eq!(r, z(4));

        let f = GroupHom::between_free(IntMatrix::from_i64(&[&[0]]));
        assert_eq!(solve_four_term(&f).unwrap(), (free(1), free(1)));
    }
}
