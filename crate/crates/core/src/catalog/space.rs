use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abgroup::{int, FGAbelianGroup};
use crate::cohomology::{gysin_su2, kunneth_ring, sphere_ring, su_ring, CohClass, CohomologyRing, FourManifoldData};
use crate::error::{Error, Result};

/// Largest `n` accepted for `SU(n)`; the exterior algebra has `2^{n-1}`
/// basis monomials and a full product table.
pub const MAX_SU_RANK: usize = 9;

/// The spaces the engine knows how to build.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceSpec {
    /// `S^{2n+1}`.
    Sphere {
        n: usize,
    },
    /// `S^{2m} x S^{2n+1}`.
    ProductSpheres {
        m: usize,
        n: usize,
    },
    /// `RP^{2n+1}`.
    RealProjective {
        n: usize,
    },
    /// `L(n, p) = S^{2n+1} / Z_p`.
    Lens {
        n: usize,
        p: usize,
    },
    SpecialUnitary {
        n: usize,
    },
    /// Total space of an `SU(2)`-bundle over a 4-manifold.
    #[serde(rename = "su2_bundle")]
    SU2Bundle {
        base: FourManifoldData,
        #[serde(with = "int")]
        euler: BigInt,
    },
    Custom {
        ring: CohomologyRing,
    },
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Sphere { n } => write!(f, "S^{}", 2 * n + 1),
            SpaceSpec::ProductSpheres { m, n } => write!(f, "S^{} x S^{}", 2 * m, 2 * n + 1),
            SpaceSpec::RealProjective { n } => write!(f, "RP^{}", 2 * n + 1),
            SpaceSpec::Lens { n, p } => write!(f, "L({n},{p})"),
            SpaceSpec::SpecialUnitary { n } => write!(f, "SU({n})"),
            SpaceSpec::SU2Bundle { base, euler } => {
                write!(f, "SU(2)-bundle over M (b1={}, b2={}), e={euler}", base.b1, base.b2)
            }
            SpaceSpec::Custom { .. } => f.write_str("custom ring"),
        }
    }
}

/// A built space: its cohomology ring, plus what the router needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    pub spec: SpaceSpec,
    pub ring: CohomologyRing,
    /// Set when the groups come from a split Gysin sequence.
    pub splitting_assumed: bool,
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidInput(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// `Z` in degrees `0` and `2n+1`, `Z_p` in even degrees between.
fn quotient_ring(n: usize, p: usize) -> Result<CohomologyRing> {
    let top = 2 * n + 1;
    let groups = (0..=top)
        .map(|k| {
            if k == 0 || k == top {
                FGAbelianGroup::free(1)
            } else if k % 2 == 0 {
                FGAbelianGroup::cyclic(p as i64)
            } else {
                FGAbelianGroup::trivial()
            }
        })
        .collect();
    CohomologyRing::from_groups(groups)
}

pub fn build(spec: &SpaceSpec) -> Result<Space> {
    let mut splitting_assumed = false;
    let ring = match spec {
        SpaceSpec::Sphere { n } => {
            positive("n", *n)?;
            sphere_ring(2 * n + 1)?
        }
        SpaceSpec::ProductSpheres { m, n } => {
            positive("m", *m)?;
            positive("n", *n)?;
            kunneth_ring(&sphere_ring(2 * m)?, &sphere_ring(2 * n + 1)?)?
        }
        SpaceSpec::RealProjective { n } => {
            positive("n", *n)?;
            quotient_ring(*n, 2)?
        }
        SpaceSpec::Lens { n, p } => {
            positive("n", *n)?;
            if *p < 2 {
                return Err(Error::InvalidInput(format!(
                    "lens space order p = {p} must be at least 2"
                )));
            }
            quotient_ring(*n, *p)?
        }
        SpaceSpec::SpecialUnitary { n } => {
            if *n < 2 {
                return Err(Error::InvalidInput(format!("SU({n}) needs n >= 2")));
            }
            if *n > MAX_SU_RANK {
                return Err(Error::Unsupported(format!(
                    "SU({n}) is beyond the supported SU({MAX_SU_RANK})"
                )));
            }
            su_ring(*n)?
        }
        SpaceSpec::SU2Bundle { base, euler } => {
            splitting_assumed = true;
            gysin_su2(base, euler.clone())?.ring
        }
        SpaceSpec::Custom { ring } => ring.clone(),
    };
    Ok(Space {
        spec: spec.clone(),
        ring,
        splitting_assumed,
    })
}

impl Space {
    /// `H^1(X; Z_2)` (when nonzero) followed by every nonzero odd integral
    /// group `H^{2k+1}(X; Z)`, `k >= 1`.
    pub fn list_twists(&self) -> Vec<(usize, FGAbelianGroup)> {
        let mut out = Vec::new();
        let h1 = self.ring.h1_mod2();
        if !h1.is_trivial() {
            out.push((1, h1));
        }
        for p in (3..=self.ring.top_degree()).step_by(2) {
            let g = self.ring.group(p);
            if !g.is_trivial() {
                out.push((p, g));
            }
        }
        out
    }

    /// The degree used when a twist is given only by its multiplier.
    pub fn default_twist_degree(&self) -> Option<usize> {
        match &self.spec {
            SpaceSpec::Sphere { n } | SpaceSpec::RealProjective { n } | SpaceSpec::Lens { n, .. } => Some(2 * n + 1),
            SpaceSpec::ProductSpheres { n, .. } => Some(2 * n + 1),
            SpaceSpec::SpecialUnitary { n } => Some(2 * n - 1),
            SpaceSpec::SU2Bundle { .. } => Some(5),
            SpaceSpec::Custom { ring } => {
                let top = ring.top_degree();
                (top % 2 == 1 && top >= 3).then_some(top)
            }
        }
    }

    /// Index of the primitive generator `c_d` of `H^*(SU(n))` in degree `d`.
    pub(crate) fn primitive_index(&self, d: usize) -> Option<usize> {
        match self.spec {
            SpaceSpec::SpecialUnitary { n } if d % 2 == 1 && (3..2 * n).contains(&d) => {
                let label = format!("c{d}");
                self.ring.labels(d).iter().position(|l| *l == label)
            }
            _ => None,
        }
    }

    /// A class `c` pulled back from `S^d` along a known map, for twists in
    /// degree `d`.
    ///
    /// Top classes of closed oriented manifolds come from the degree-one
    /// collapse map. The odd factor of `S^{2m} x S^{2n+1}` comes from the
    /// projection and `c_{2n-1}` of `SU(n)` from `SU(n) -> SU(n)/SU(n-1)`.
    pub fn sphere_pullback(&self, d: usize) -> Option<CohClass> {
        let top = self.ring.top_degree();
        let manifold = !matches!(self.spec, SpaceSpec::Custom { .. });
        if manifold && d == top && self.ring.group(top) == FGAbelianGroup::free(1) {
            return Some(CohClass::generator(&self.ring, top, 0));
        }
        match self.spec {
            SpaceSpec::ProductSpheres { n, .. } if d == 2 * n + 1 => Some(CohClass::generator(&self.ring, d, 0)),
            SpaceSpec::SpecialUnitary { n } if d == 2 * n - 1 => {
                let i = self.primitive_index(d)?;
                Some(CohClass::generator(&self.ring, d, i))
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> FGAbelianGroup {
        FGAbelianGroup::cyclic(n)
    }

    #[test]
    fn sphere() {
        let s = build(&SpaceSpec::Sphere { n: 2 }).unwrap();
        assert_eq!(s.ring.top_degree(), 5);
        assert_eq!(s.list_twists(), vec![(5, z(0))]);
        let s7 = build(&SpaceSpec::Sphere { n: 3 }).unwrap();
        assert_eq!(s7.list_twists(), vec![(7, z(0))]);
    }

    #[test]
    fn su3_is_exterior() {
        let s = build(&SpaceSpec::SpecialUnitary { n: 3 }).unwrap();
        assert_eq!(s.ring.labels(8), ["c3c5"]);
        assert_eq!(s.list_twists(), vec![(3, z(0)), (5, z(0))]);
    }

    #[test]
    fn real_projective() {
        let s = build(&SpaceSpec::RealProjective { n: 2 }).unwrap();
        let groups: Vec<FGAbelianGroup> = (0..=5).map(|p| s.ring.group(p)).collect();
        assert_eq!(groups, vec![z(0), z(1), z(2), z(1), z(2), z(0)]);
        assert_eq!(s.list_twists(), vec![(1, z(2)), (5, z(0))]);
    }

    #[test]
    fn lens_mod_two_classes() {
        let odd = build(&SpaceSpec::Lens { n: 2, p: 3 }).unwrap();
        assert_eq!(odd.list_twists(), vec![(5, z(0))]);
        let even = build(&SpaceSpec::Lens { n: 1, p: 4 }).unwrap();
        assert_eq!(even.list_twists(), vec![(1, z(2)), (3, z(0))]);
    }

    #[test]
    fn even_sphere_has_no_integral_twists() {
        let ring = sphere_ring(4).unwrap();
        let s = build(&SpaceSpec::Custom { ring }).unwrap();
        assert!(s.list_twists().is_empty());
        assert_eq!(s.default_twist_degree(), None);
    }

    #[test]
    fn invalid_parameters() {
        assert!(build(&SpaceSpec::Sphere { n: 0 }).is_err());
        assert!(build(&SpaceSpec::Lens { n: 1, p: 1 }).is_err());
        assert!(build(&SpaceSpec::SpecialUnitary { n: 1 }).is_err());
        assert!(build(&SpaceSpec::ProductSpheres { m: 0, n: 1 }).is_err());
    }

    #[test]
    fn spec_json() {
        let spec = SpaceSpec::Lens { n: 2, p: 5 };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"kind":"lens","n":2,"p":5}"#);
        assert_eq!(serde_json::from_str::<SpaceSpec>(&text).unwrap(), spec);
        let bundle = SpaceSpec::SU2Bundle {
            base: FourManifoldData::s2_times_s2(),
            euler: BigInt::from(3),
        };
        let text = serde_json::to_string(&bundle).unwrap();
        assert_eq!(serde_json::from_str::<SpaceSpec>(&text).unwrap(), bundle);
    }

    #[test]
    fn pullback_classes() {
        let su4 = build(&SpaceSpec::SpecialUnitary { n: 4 }).unwrap();
        assert!(su4.sphere_pullback(7).is_some());
        assert!(su4.sphere_pullback(5).is_none());
        assert!(su4.sphere_pullback(15).is_some());
        let prod = build(&SpaceSpec::ProductSpheres { m: 1, n: 2 }).unwrap();
        assert!(prod.sphere_pullback(5).is_some());
        assert!(prod.sphere_pullback(7).is_some());
        let custom = build(&SpaceSpec::Custom {
            ring: sphere_ring(5).unwrap(),
        })
        .unwrap();
        assert!(custom.sphere_pullback(5).is_none());
    }
}
