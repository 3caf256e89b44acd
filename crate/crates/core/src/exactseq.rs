//! Exact-sequence computations that bypass the spectral sequence. Each one
//! stores the known groups and connecting map of its sequence and solves it
//! with the group algebra.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abgroup::{
    cokernel, ext_z, kernel, smith_normal_form, solve_four_term, tensor, tor, FGAbelianGroup, GroupHom, IntMatrix,
};
use crate::error::{Error, Result};
use crate::result::{Method, TwistedKResult};
use crate::spectral::{assemble_diagonal, GradedPiece, KGroupReport};

fn exact_pair(k0: FGAbelianGroup, k1: FGAbelianGroup, method: Method) -> TwistedKResult {
    TwistedKResult {
        k0: KGroupReport::exact_group(0, k0),
        k1: KGroupReport::exact_group(1, k1),
        method,
        splitting_assumed: false,
    }
}

fn require_twist(n_twist: &BigInt, what: &str) -> Result<()> {
    if n_twist.is_zero() {
        return Err(Error::Unsupported(format!(
            "{what} sequence is only set up for nonzero twists"
        )));
    }
    Ok(())
}

/// Map `π_*: K^*(U) ⊕ K^*(V) -> K^*(U ∩ V)`, `(m, n) ↦ (m - n, N n)`, for the
/// two-disc cover of `S^{2n+1}`.
pub fn sphere_pushforward(n_twist: &BigInt) -> GroupHom {
    let mut m = IntMatrix::from_i64(&[&[1, -1], &[0, 0]]);
    m.set(1, 1, n_twist.clone());
    GroupHom::between_free(m)
}

/// `0 -> K^0 -> Z ⊕ Z --π_*--> Z ⊕ Z -> K^1 -> 0`.
pub fn mayer_vietoris_sphere(n: usize, n_twist: &BigInt) -> Result<TwistedKResult> {
    if n == 0 {
        return Err(Error::InvalidInput("sphere S^{2n+1} needs n >= 1".into()));
    }
    let (k0, k1) = solve_four_term(&sphere_pushforward(n_twist))?;
    Ok(exact_pair(k0, k1, Method::MayerVietoris))
}

/// Connecting map `∂: Z ⊕ Z_{2^n} -> Z`, `(b, a) ↦ N b`, generators in
/// normal-form order.
pub fn rp_connecting_map(n: usize, n_twist: &BigInt) -> Result<GroupHom> {
    let domain = FGAbelianGroup::from_factors(1, &[BigInt::from(2).pow(n as u32)]);
    let mut m = IntMatrix::zeros(1, domain.generator_count());
    m.set(0, 0, n_twist.clone());
    GroupHom::new(domain, FGAbelianGroup::free(1), m)
}

/// `0 -> K^0 -> Z_{2^n} ⊕ Z --∂--> Z -> K^1 -> 0` for `RP^{2n+1}`.
pub fn sequence_rp(n: usize, n_twist: &BigInt) -> Result<TwistedKResult> {
    if n == 0 {
        return Err(Error::InvalidInput("RP^{2n+1} needs n >= 1".into()));
    }
    require_twist(n_twist, "RP")?;
    let (k0, k1) = solve_four_term(&rp_connecting_map(n, n_twist)?)?;
    Ok(exact_pair(k0, k1, Method::ExactTemplate))
}

/// `0 -> Z_{p^n} -> K^0 -> Z --×N--> Z -> K^1 -> 0` for `L(n, p)`.
pub fn sequence_lens(n: usize, p: usize, n_twist: &BigInt) -> Result<TwistedKResult> {
    if n == 0 || p < 2 {
        return Err(Error::InvalidInput(format!(
            "lens space L({n},{p}) needs n >= 1, p >= 2"
        )));
    }
    require_twist(n_twist, "lens")?;
    let fixed = FGAbelianGroup::cyclic(BigInt::from(p).pow(n as u32));
    let times_n = GroupHom::between_free(IntMatrix::diagonal(std::slice::from_ref(n_twist)));
    let (upper, _) = kernel(&times_n)?;
    let (k1, _) = cokernel(&times_n)?;
    let pieces = [fixed, upper]
        .into_iter()
        .filter(|g| !g.is_trivial())
        .map(|group| GradedPiece { degree: None, group })
        .collect();
    Ok(TwistedKResult {
        k0: assemble_diagonal(0, pieces),
        k1: KGroupReport::exact_group(1, k1),
        method: Method::ExactTemplate,
        splitting_assumed: false,
    })
}

/// K-theory Künneth for `A x B` with `A` untwisted. The Tor term (which
/// shifts parity) is reported as an unresolved extension on top of the tensor
/// part.
pub fn kunneth_k(
    factor_untwisted: (&FGAbelianGroup, &FGAbelianGroup),
    twisted: &TwistedKResult,
) -> Result<TwistedKResult> {
    if !twisted.exact() {
        return Err(Error::HypothesisViolated(
            "Künneth needs the twisted factor's groups exactly".into(),
        ));
    }
    let (a0, a1) = factor_untwisted;
    let (b0, b1) = (&twisted.k0.assembled, &twisted.k1.assembled);
    let build = |parity: u8, tensor_part: FGAbelianGroup, tor_part: FGAbelianGroup| {
        let ambiguous = !tor_part.is_trivial();
        let pieces = [tensor_part, tor_part]
            .into_iter()
            .filter(|g| !g.is_trivial())
            .map(|group| GradedPiece { degree: None, group })
            .collect();
        let report = assemble_diagonal(parity, pieces);
        if ambiguous {
            report.mark_inexact()
        } else {
            report
        }
    };
    let k0 = build(
        0,
        tensor(a0, b0).direct_sum(&tensor(a1, b1)),
        tor(a0, b1).direct_sum(&tor(a1, b0)),
    );
    let k1 = build(
        1,
        tensor(a0, b1).direct_sum(&tensor(a1, b0)),
        tor(a0, b0).direct_sum(&tor(a1, b1)),
    );
    Ok(TwistedKResult {
        k0,
        k1,
        method: Method::Kunneth,
        splitting_assumed: twisted.splitting_assumed,
    })
}

/// `K_0 = Ext(K^1, Z)`, `K_1 = Ext(K^0, Z)` for finite, exactly known groups.
pub fn k_homology_shift(kt: &TwistedKResult) -> Result<TwistedKResult> {
    for k in [&kt.k0, &kt.k1] {
        if k.rank() > 0 || !k.exact {
            return Err(Error::HypothesisViolated(format!(
                "K-homology shift needs finite, exactly known groups; K{} is {}{}",
                k.parity,
                k.assembled,
                if k.exact { "" } else { " (up to extension)" }
            )));
        }
    }
    Ok(TwistedKResult {
        k0: KGroupReport::exact_group(0, ext_z(&kt.k1.assembled)),
        k1: KGroupReport::exact_group(1, ext_z(&kt.k0.assembled)),
        method: kt.method,
        splitting_assumed: kt.splitting_assumed,
    })
}

/// Rank and order identities of `0 -> K^0 -> B --f--> C -> K^1 -> 0`.
///
/// The alternating rank sum vanishes. When `C` is free and `K^1` finite,
/// `|K^1|` is the index of the image lattice, the product of the invariant
/// factors of the matrix of `f`.
pub fn four_term_identity_holds(f: &GroupHom, result: &TwistedKResult) -> bool {
    let (b, c) = (f.domain(), f.codomain());
    let (k0, k1) = (&result.k0.assembled, &result.k1.assembled);
    let rank_ok = k0.rank() + c.rank() == b.rank() + k1.rank();
    let index_ok = !c.is_free()
        || k1.rank() > 0
        || k1.torsion_order() == smith_normal_form(f.matrix()).invariants().iter().product::<BigInt>();
    rank_ok && index_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> FGAbelianGroup {
        FGAbelianGroup::cyclic(n)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn groups(r: &TwistedKResult) -> (FGAbelianGroup, FGAbelianGroup) {
        (r.k0.assembled.clone(), r.k1.assembled.clone())
    }

    #[test]
    fn spheres() {
        assert_eq!(groups(&mayer_vietoris_sphere(1, &big(5)).unwrap()), (z(1), z(5)));
        assert_eq!(groups(&mayer_vietoris_sphere(3, &big(0)).unwrap()), (z(0), z(0)));
        assert_eq!(groups(&mayer_vietoris_sphere(2, &big(1)).unwrap()), (z(1), z(1)));
        assert!(mayer_vietoris_sphere(0, &big(2)).is_err());
    }

    #[test]
    fn real_projective() {
        assert_eq!(groups(&sequence_rp(1, &big(3)).unwrap()), (z(2), z(3)));
        assert_eq!(groups(&sequence_rp(4, &big(2)).unwrap()), (z(16), z(2)));
        assert_eq!(groups(&sequence_rp(1, &big(1)).unwrap()), (z(2), z(1)));
        assert!(matches!(sequence_rp(2, &big(0)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn lens() {
        assert_eq!(groups(&sequence_lens(1, 3, &big(4)).unwrap()), (z(3), z(4)));
        assert_eq!(groups(&sequence_lens(2, 2, &big(5)).unwrap()), (z(4), z(5)));
        assert_eq!(groups(&sequence_lens(1, 2, &big(1)).unwrap()), (z(2), z(1)));
        assert!(sequence_lens(1, 1, &big(2)).is_err());
        assert!(sequence_lens(1, 3, &big(0)).is_err());
    }

    #[test]
    fn lens_at_two_is_rp() {
        for n in 1..=6 {
            for t in 1..=20 {
                assert_eq!(sequence_lens(n, 2, &big(t)).unwrap(), sequence_rp(n, &big(t)).unwrap());
            }
        }
    }

    #[test]
    fn templates_satisfy_exactness_identities() {
        for t in [-7i64, -1, 1, 2, 12] {
            let f = sphere_pushforward(&big(t));
            assert!(four_term_identity_holds(
                &f,
                &mayer_vietoris_sphere(1, &big(t)).unwrap()
            ));
            for n in 1..=4 {
                let f = rp_connecting_map(n, &big(t)).unwrap();
                assert!(four_term_identity_holds(&f, &sequence_rp(n, &big(t)).unwrap()));
            }
        }
        let f = sphere_pushforward(&big(0));
        assert!(four_term_identity_holds(
            &f,
            &mayer_vietoris_sphere(1, &big(0)).unwrap()
        ));
        // a wrong answer is caught
        let mut bogus = sequence_rp(2, &big(6)).unwrap();
        bogus.k1 = KGroupReport::exact_group(1, z(3));
        assert!(!four_term_identity_holds(
            &rp_connecting_map(2, &big(6)).unwrap(),
            &bogus
        ));
    }

    #[test]
    fn kunneth() {
        let even_sphere = (z(0).power(2), FGAbelianGroup::trivial());
        let sphere = mayer_vietoris_sphere(1, &big(6)).unwrap();
        let r = kunneth_k((&even_sphere.0, &even_sphere.1), &sphere).unwrap();
        assert_eq!(groups(&r), (FGAbelianGroup::trivial(), z(6).power(2)));
        assert!(r.exact());

        let point = (z(0), FGAbelianGroup::trivial());
        let r = kunneth_k((&point.0, &point.1), &sphere).unwrap();
        assert_eq!(groups(&r), groups(&sphere));

        let untwisted = mayer_vietoris_sphere(1, &big(0)).unwrap();
        let r = kunneth_k((&even_sphere.0, &even_sphere.1), &untwisted).unwrap();
        assert_eq!(groups(&r), (z(0).power(2), z(0).power(2)));
    }

    #[test]
    fn kunneth_tor_term_is_ambiguous() {
        let torsion_factor = (z(0), z(4));
        let sphere = mayer_vietoris_sphere(1, &big(6)).unwrap();
        let r = kunneth_k((&torsion_factor.0, &torsion_factor.1), &sphere).unwrap();
        // Tor(K^1_A, K^1_B) = Tor(Z_4, Z_6) = Z_2 sits in K^1 over Z ⊗ Z_6
        assert!(r.k0.exact);
        assert!(!r.k1.exact);
        assert_eq!(r.k1.assembled, z(6).direct_sum(&z(2)));
        assert_eq!(r.k1.torsion_order, big(12));
    }

    #[test]
    fn homology_shift() {
        let s = mayer_vietoris_sphere(1, &big(7)).unwrap();
        let h = k_homology_shift(&s).unwrap();
        assert_eq!(groups(&h), (z(7), z(1)));
        assert_eq!(k_homology_shift(&h).unwrap(), s);
        let both = exact_pair(z(5), z(5), Method::Ahss);
        assert_eq!(k_homology_shift(&both).unwrap(), both);
        let trivial = exact_pair(z(1), z(1), Method::Ahss);
        assert_eq!(k_homology_shift(&trivial).unwrap(), trivial);
        let free = mayer_vietoris_sphere(1, &big(0)).unwrap();
        assert!(matches!(k_homology_shift(&free), Err(Error::HypothesisViolated(_))));
    }
}
