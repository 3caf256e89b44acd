//! Exact arithmetic of finitely generated abelian groups.

mod functors;
mod group;
mod hom;
pub mod int;
mod matrix;
mod snf;

pub use functors::{ext, ext_z, hom_z, solve_four_term, tensor, tor};
pub use group::FGAbelianGroup;
pub use hom::{cokernel, homology, image, kernel, GroupHom};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Lattice, Snf};

#[cfg(test)]
mod properties {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    use proptest::prelude::*;

    use super::group::gcd;
    use super::*;

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (0usize..=6, 0usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c)
                .prop_map(move |v| IntMatrix::from_entries(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
        })
    }

    fn small_group() -> impl Strategy<Value = FGAbelianGroup> {
        (0usize..3, proptest::collection::vec(0i64..13, 0..4)).prop_map(|(r, orders)| {
            let orders: Vec<BigInt> = orders.into_iter().map(BigInt::from).collect();
            FGAbelianGroup::from_factors(r, &orders)
        })
    }

    fn torsion_group() -> impl Strategy<Value = FGAbelianGroup> {
        proptest::collection::vec(2i64..30, 0..4).prop_map(|orders| {
            let orders: Vec<BigInt> = orders.into_iter().map(BigInt::from).collect();
            FGAbelianGroup::from_factors(0, &orders)
        })
    }

    /// A random well-defined map `G -> H`: torsion generators of order `d`
    /// are sent to `d'`-torsion-compatible multiples.
    fn hom_between() -> impl Strategy<Value = GroupHom> {
        (small_group(), small_group()).prop_flat_map(|(g, h)| {
            let n = g.generator_count() * h.generator_count();
            proptest::collection::vec(-6i64..=6, n).prop_map(move |raw| {
                let mut m = IntMatrix::zeros(h.generator_count(), g.generator_count());
                for c in 0..g.generator_count() {
                    for r in 0..h.generator_count() {
                        let mut v = BigInt::from(raw[c * h.generator_count() + r]);
                        if let Some(d) = g.order_of_generator(c) {
                            // x -> (target order / gcd) * v is killed by d
                            v = match h.order_of_generator(r) {
                                None => BigInt::zero(),
                                Some(e) => v * (e / gcd(d, e)),
                            };
                        }
                        m.set(r, c, v);
                    }
                }
                GroupHom::new(g.clone(), h.clone(), m).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn snf_is_sound(a in small_matrix()) {
            let s = smith_normal_form(&a);
            prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
            prop_assert!(s.u.determinant().unwrap().abs().is_one());
            prop_assert!(s.v.determinant().unwrap().abs().is_one());
            prop_assert!(s.d.is_diagonal());
            let diag = s.d.diagonal_entries();
            for w in diag.windows(2) {
                prop_assert!(!w[0].is_negative());
                if w[0].is_zero() {
                    prop_assert!(w[1].is_zero());
                } else {
                    prop_assert!((&w[1] % &w[0]).is_zero());
                }
            }
        }

        #[test]
        fn normal_form_is_idempotent(g in small_group()) {
            prop_assert_eq!(g.renormalized(), g.clone());
            let again: FGAbelianGroup = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
            prop_assert_eq!(again, g);
        }

        #[test]
        fn kernel_cokernel_exactness(f in hom_between()) {
            let (k, inc) = kernel(&f).unwrap();
            prop_assert!(inc.then(&f).unwrap().is_zero());
            let (_, proj) = cokernel(&f).unwrap();
            prop_assert!(f.then(&proj).unwrap().is_zero());

            // image rank from the SNF of the bare matrix
            let im_rank = smith_normal_form(&f.matrix().select_rows(&(0..f.codomain().rank()).collect::<Vec<_>>())).rank;
            prop_assert_eq!(k.rank() + im_rank, f.domain().rank());
            prop_assert_eq!(image(&f).unwrap().rank(), im_rank);
        }

        #[test]
        fn tensor_and_tor_are_symmetric(g in small_group(), h in small_group()) {
            prop_assert_eq!(tensor(&g, &h), tensor(&h, &g));
            prop_assert_eq!(tor(&g, &h), tor(&h, &g));
        }

        #[test]
        fn ext_is_an_involution_on_torsion(g in torsion_group()) {
            prop_assert_eq!(ext_z(&ext_z(&g)), g);
        }
    }
}
