use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::page::{ahss_e2, apply_twisted_differential, untwisted_obstructions, SpectralPage};
use super::report::{assemble_diagonal, GradedPiece, KGroupReport};
use crate::abgroup::{kernel, Lattice};
use crate::cohomology::{CohClass, CohomologyRing};
use crate::error::{Error, PagePosition, Result};

#[derive(Debug, Clone, Default)]
pub struct AhssOptions {
    /// A class `c` with `δ = N c` that is pulled back from `S^{deg δ}` along
    /// some map `X -> S^{deg δ}`. Lets the engine rule out differentials past
    /// `d_{deg δ}` when every surviving class is a multiple of `c`.
    pub sphere_pullback: Option<CohClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AhssRun {
    pub k0: KGroupReport,
    pub k1: KGroupReport,
    pub pages: Vec<SpectralPage>,
}

/// Runs the collapsed twisted AHSS.
///
/// Differentials below `deg δ` are untwisted torsion operators and must vanish
/// by the built-in criteria. `d_{deg δ}` is `-∪δ`. Differentials of greater
/// length must have a trivial source or target on `E_{deg δ + 1}`, or be killed
/// by a sphere-pullback certificate; otherwise the run refuses.
pub fn run_ahss(ring: &CohomologyRing, delta: &CohClass, options: &AhssOptions) -> Result<AhssRun> {
    let delta = CohClass::new(ring, delta.degree, delta.coeffs.clone())?;
    let top = ring.top_degree();
    let e2 = ahss_e2(ring);
    let mut pages = vec![e2.clone()];

    let first_twisted = if delta.is_zero(ring) { top + 1 } else { delta.degree };
    let mut obstructions = Vec::new();
    for r in (3..first_twisted.min(top + 1)).step_by(2) {
        obstructions.extend(untwisted_obstructions(&e2, r));
    }
    if !obstructions.is_empty() {
        return Err(Error::TorsionDifferentialUnknown(obstructions));
    }

    if first_twisted <= top {
        let d = delta.degree;
        let next = apply_twisted_differential(&e2, ring, &delta)?;
        check_d_squared(&next)?;

        let mut pending: Vec<PagePosition> = Vec::new();
        for r in (d + 2..=top).step_by(2) {
            for p in 0..=top - r {
                if !next.entry(p).is_trivial() && !next.entry(p + r).is_trivial() {
                    pending.push(PagePosition { degree: p, length: r });
                }
            }
        }
        if !pending.is_empty() {
            let certified = match &options.sphere_pullback {
                Some(c) => certificate_holds(ring, &delta, c)?,
                None => false,
            };
            if !certified {
                return Err(Error::HigherDifferentialUnknown(pending));
            }
        }
        pages.push(next);
    }

    let last = pages.last().expect("at least the E_2 page");
    let diagonal = |parity: usize| -> Vec<GradedPiece> {
        (0..=top)
            .rev()
            .filter(|p| p % 2 == parity)
            .map(|p| (p, last.entry(p)))
            .filter(|(_, g)| !g.is_trivial())
            .map(|(p, group)| GradedPiece { degree: Some(p), group })
            .collect()
    };
    let k0 = assemble_diagonal(0, diagonal(0));
    let k1 = assemble_diagonal(1, diagonal(1));
    Ok(AhssRun { k0, k1, pages })
}

/// Consecutive recorded differentials compose to zero.
fn check_d_squared(page: &SpectralPage) -> Result<()> {
    for f in &page.applied {
        let target = f.source + f.length;
        if let Some(g) = page.applied.iter().find(|g| g.source == target) {
            if !f.map.then(&g.map)?.is_zero() {
                return Err(Error::InvalidInput(format!("d∘d ≠ 0 at degree {}", f.source)));
            }
        }
    }
    Ok(())
}

/// Checks the sphere-pullback certificate.
///
/// With torsion-free cohomology the untwisted AHSS collapses, so every `x` is
/// a permanent cycle there; `[c]` is a permanent cycle of the twisted sequence
/// by naturality. Leibniz then kills all later differentials on classes
/// `x · [c]`, and `ker(∪δ)_p ⊆ im(∪c)_p` for all `p` says every class of
/// `E_{d+1}` has this form.
fn certificate_holds(ring: &CohomologyRing, delta: &CohClass, c: &CohClass) -> Result<bool> {
    let c = CohClass::new(ring, c.degree, c.coeffs.clone())?;
    if c.degree != delta.degree || !ring.is_torsion_free() || multiplier(delta, &c).is_none() {
        return Ok(false);
    }
    let d = delta.degree;
    for p in 0..=ring.top_degree() {
        let (_, inclusion) = kernel(&ring.cup_with_class(delta, p)?)?;
        if inclusion.domain().is_trivial() {
            continue;
        }
        let Some(s) = p.checked_sub(d) else {
            return Ok(false);
        };
        let image = Lattice::span(ring.cup_with_class(&c, s)?.matrix());
        let kernel_basis = inclusion.matrix();
        if !(0..kernel_basis.cols()).all(|k| image.contains(&kernel_basis.column(k))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `N` with `δ = N c`, if any.
fn multiplier(delta: &CohClass, c: &CohClass) -> Option<BigInt> {
    let (k, ck) = c.coeffs.iter().enumerate().find(|(_, x)| !x.is_zero())?;
    let (n, rem) = delta.coeffs[k].div_rem(ck);
    if !rem.is_zero() {
        return None;
    }
    let matches = delta.coeffs.iter().zip(&c.coeffs).all(|(a, b)| *a == &n * b);
    matches.then_some(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::FGAbelianGroup;
    use crate::cohomology::{kunneth_ring, sphere_ring, su_ring};

    fn z(n: i64) -> FGAbelianGroup {
        FGAbelianGroup::cyclic(n)
    }

    fn top_twist(r: &CohomologyRing, n: i64) -> CohClass {
        let d = r.top_degree();
        CohClass::generator(r, d, 0).scaled(&BigInt::from(n))
    }

    #[test]
    fn sphere() {
        let r = sphere_ring(5).unwrap();
        let run = run_ahss(&r, &top_twist(&r, 6), &AhssOptions::default()).unwrap();
        assert!(run.k0.assembled.is_trivial());
        assert_eq!(run.k1.assembled, z(6));
        assert!(run.k1.exact);
    }

    #[test]
    fn untwisted_sphere() {
        let r = sphere_ring(7).unwrap();
        let run = run_ahss(&r, &CohClass::zero(&r, 7), &AhssOptions::default()).unwrap();
        assert_eq!(run.k0.assembled, z(0));
        assert_eq!(run.k1.assembled, z(0));
        assert_eq!(run.pages.len(), 1);
    }

    #[test]
    fn product_top_twist() {
        let r = kunneth_ring(&sphere_ring(2).unwrap(), &sphere_ring(3).unwrap()).unwrap();
        let run = run_ahss(&r, &top_twist(&r, 5), &AhssOptions::default()).unwrap();
        assert_eq!(run.k0.assembled, z(0));
        assert!(run.k0.exact);
        assert_eq!(run.k1.assembled, FGAbelianGroup::from_factors(1, &[BigInt::from(5)]));
        assert!(run.k1.exact);
    }

    #[test]
    fn su3_and_su4() {
        let r = su_ring(3).unwrap();
        let run = run_ahss(
            &r,
            &CohClass::generator(&r, 5, 0).scaled(&BigInt::from(7)),
            &AhssOptions::default(),
        )
        .unwrap();
        assert_eq!((run.k0.assembled.clone(), run.k0.exact), (z(7), true));
        assert_eq!((run.k1.assembled.clone(), run.k1.exact), (z(7), true));

        let r = su_ring(4).unwrap();
        let run = run_ahss(
            &r,
            &CohClass::generator(&r, 7, 0).scaled(&BigInt::from(3)),
            &AhssOptions::default(),
        )
        .unwrap();
        for k in [&run.k0, &run.k1] {
            let pieces: Vec<FGAbelianGroup> = k.graded_pieces.iter().map(|p| p.group.clone()).collect();
            assert_eq!(pieces, vec![z(3), z(3)]);
            assert!(!k.exact);
            assert_eq!(k.torsion_order, BigInt::from(9));
        }
    }

    #[test]
    fn su5_needs_certificate() {
        let r = su_ring(5).unwrap();
        let delta = CohClass::generator(&r, 9, 0).scaled(&BigInt::from(2));
        let err = run_ahss(&r, &delta, &AhssOptions::default()).unwrap_err();
        assert!(matches!(err, Error::HigherDifferentialUnknown(_)));
        let opts = AhssOptions {
            sphere_pullback: Some(CohClass::generator(&r, 9, 0)),
        };
        let run = run_ahss(&r, &delta, &opts).unwrap();
        assert_eq!(run.k0.graded_pieces.len(), 4);
        assert_eq!(run.k1.graded_pieces.len(), 4);
    }

    #[test]
    fn certificate_must_generate_the_surviving_classes() {
        // δ = 1 · (2 c9): survivors c9·x are not multiples of 2 c9
        let r = su_ring(5).unwrap();
        let c = CohClass::generator(&r, 9, 0).scaled(&BigInt::from(2));
        let opts = AhssOptions {
            sphere_pullback: Some(c.clone()),
        };
        assert!(matches!(
            run_ahss(&r, &c, &opts),
            Err(Error::HigherDifferentialUnknown(_))
        ));
        let wrong_degree = AhssOptions {
            sphere_pullback: Some(CohClass::generator(&r, 7, 0)),
        };
        assert!(run_ahss(&r, &c, &wrong_degree).is_err());
    }

    #[test]
    fn su3_degree_three_is_refused() {
        let r = su_ring(3).unwrap();
        let delta = CohClass::generator(&r, 3, 0).scaled(&BigInt::from(2));
        match run_ahss(&r, &delta, &AhssOptions::default()) {
            Err(Error::HigherDifferentialUnknown(v)) => assert_eq!(v, vec![PagePosition { degree: 3, length: 5 }]),
            other => panic!("expected a refusal, got {other:?}"),
        }
    }

    #[test]
    fn multiplier_detection() {
        let r = su_ring(4).unwrap();
        let c = CohClass::generator(&r, 7, 0);
        assert_eq!(multiplier(&c.scaled(&BigInt::from(-4)), &c), Some(BigInt::from(-4)));
        let other = CohClass::generator(&r, 8, 0);
        assert_eq!(multiplier(&other, &CohClass::zero(&r, 8)), None);
    }
}
