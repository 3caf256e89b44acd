use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::space::{build, Space, SpaceSpec};
use super::twist::Twist;
use crate::abgroup::{int, FGAbelianGroup};
use crate::cohomology::CohClass;
use crate::error::{Error, Result};
use crate::exactseq::{kunneth_k, mayer_vietoris_sphere, sequence_lens, sequence_rp};
use crate::result::{Method, TwistedKResult};
use crate::spectral::{run_ahss, AhssOptions, SpectralPage};

/// Which computation to run. `Auto` picks per space and cross-checks where a
/// second route exists.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum MethodChoice {
    #[default]
    Auto,
    Ahss,
    MayerVietoris,
    Template,
    Kunneth,
}

impl FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => MethodChoice::Auto,
            "ahss" => MethodChoice::Ahss,
            "mv" | "mayer_vietoris" => MethodChoice::MayerVietoris,
            "template" | "exact_template" => MethodChoice::Template,
            "kunneth" => MethodChoice::Kunneth,
            other => return Err(Error::InvalidInput(format!("unknown method {other:?}"))),
        })
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodChoice::Auto => "auto",
            MethodChoice::Ahss => "ahss",
            MethodChoice::MayerVietoris => "mv",
            MethodChoice::Template => "template",
            MethodChoice::Kunneth => "kunneth",
        })
    }
}

/// The twist as recorded in output: degree and normal-form coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRecord {
    pub degree: usize,
    #[serde(with = "int::vec")]
    pub class: Vec<BigInt>,
}

impl From<&CohClass> for TwistRecord {
    fn from(c: &CohClass) -> Self {
        TwistRecord {
            degree: c.degree,
            class: c.coeffs.clone(),
        }
    }
}

/// A finished computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Computation {
    pub space: SpaceSpec,
    pub twist: TwistRecord,
    #[serde(flatten)]
    pub result: TwistedKResult,
    /// Route that independently reproduced the result, if one was run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_checked_by: Option<Method>,
    /// AHSS pages, when the AHSS produced the result.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pages: Vec<SpectralPage>,
}

/// Computes twisted K-theory of a catalog space.
pub fn k_theory(spec: &SpaceSpec, twist: &Twist, method: MethodChoice) -> Result<Computation> {
    let space = build(spec)?;
    let delta = twist.resolve(&space)?;
    let (result, pages, cross) = route(&space, &delta, method)?;
    Ok(Computation {
        space: spec.clone(),
        twist: TwistRecord::from(&delta),
        result,
        cross_checked_by: cross,
        pages,
    })
}

type Routed = (TwistedKResult, Vec<SpectralPage>, Option<Method>);

fn route(space: &Space, delta: &CohClass, method: MethodChoice) -> Result<Routed> {
    let d = delta.degree;
    match method {
        MethodChoice::Ahss => {
            let (r, pages) = ahss(space, delta)?;
            Ok((r, pages, None))
        }
        MethodChoice::MayerVietoris => match space.spec {
            SpaceSpec::Sphere { n } => Ok((mayer_vietoris_sphere(n, &multiple(delta))?, Vec::new(), None)),
            _ => not_applicable("Mayer-Vietoris", space),
        },
        MethodChoice::Template => match space.spec {
            SpaceSpec::RealProjective { n } => Ok((sequence_rp(n, &multiple(delta))?, Vec::new(), None)),
            SpaceSpec::Lens { n, p } => Ok((sequence_lens(n, p, &multiple(delta))?, Vec::new(), None)),
            _ => not_applicable("the exact-sequence template", space),
        },
        MethodChoice::Kunneth => match space.spec {
            SpaceSpec::ProductSpheres { n, .. } if d == 2 * n + 1 => Ok((kunneth_product(n, delta)?, Vec::new(), None)),
            _ => not_applicable("Künneth (odd-sphere factor twist)", space),
        },
        MethodChoice::Auto => auto(space, delta),
    }
}

fn auto(space: &Space, delta: &CohClass) -> Result<Routed> {
    let d = delta.degree;
    match space.spec {
        SpaceSpec::Sphere { n } => {
            let mv = mayer_vietoris_sphere(n, &multiple(delta))?;
            let (check, _) = ahss(space, delta)?;
            cross_check(&mv, &check)?;
            Ok((mv, Vec::new(), Some(Method::Ahss)))
        }
        SpaceSpec::ProductSpheres { n, .. } if d == 2 * n + 1 => {
            let k = kunneth_product(n, delta)?;
            let (check, _) = ahss(space, delta)?;
            cross_check(&k, &check)?;
            Ok((k, Vec::new(), Some(Method::Ahss)))
        }
        SpaceSpec::RealProjective { n } if !multiple(delta).is_zero() => {
            Ok((sequence_rp(n, &multiple(delta))?, Vec::new(), None))
        }
        SpaceSpec::Lens { n, p } if !multiple(delta).is_zero() => {
            Ok((sequence_lens(n, p, &multiple(delta))?, Vec::new(), None))
        }
        SpaceSpec::SU2Bundle { .. } if d == 3 => Err(Error::Unsupported(
            "degree-3 twists of SU(2)-bundles need cup products with H^3 of the total space, which the Gysin model does not carry".into(),
        )),
        _ => {
            let (r, pages) = ahss(space, delta)?;
            Ok((r, pages, None))
        }
    }
}

fn ahss(space: &Space, delta: &CohClass) -> Result<(TwistedKResult, Vec<SpectralPage>)> {
    let options = AhssOptions {
        sphere_pullback: space.sphere_pullback(delta.degree),
    };
    let run = run_ahss(&space.ring, delta, &options)?;
    let result = TwistedKResult {
        k0: run.k0,
        k1: run.k1,
        method: Method::Ahss,
        splitting_assumed: space.splitting_assumed,
    };
    Ok((result, run.pages))
}

/// `K^*(S^{2m}) = (Z^2, 0)` against the Mayer-Vietoris result for the twisted
/// odd sphere.
fn kunneth_product(n: usize, delta: &CohClass) -> Result<TwistedKResult> {
    let sphere = mayer_vietoris_sphere(n, &multiple(delta))?;
    kunneth_k((&FGAbelianGroup::free(2), &FGAbelianGroup::trivial()), &sphere)
}

/// The coefficient of a twist in a rank-one group.
fn multiple(delta: &CohClass) -> BigInt {
    delta.coeffs[0].clone()
}

fn not_applicable<T>(what: &str, space: &Space) -> Result<T> {
    Err(Error::MethodNotApplicable(format!(
        "{what} is not available for {}",
        space.spec
    )))
}

/// Two routes agree on the assembled groups, ranks and torsion orders.
pub fn cross_check(a: &TwistedKResult, b: &TwistedKResult) -> Result<()> {
    for (x, y) in [(&a.k0, &b.k0), (&a.k1, &b.k1)] {
        if x.assembled != y.assembled || x.rank() != y.rank() || x.torsion_order != y.torsion_order {
            return Err(Error::CrossCheckFailed(format!(
                "K{}: {} gives {} (order {}), {} gives {} (order {})",
                x.parity,
                a.method.as_str(),
                x.assembled,
                x.torsion_order,
                b.method.as_str(),
                y.assembled,
                y.torsion_order
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::FourManifoldData;

    fn z(n: i64) -> FGAbelianGroup {
        FGAbelianGroup::cyclic(n)
    }

    fn groups(c: &Computation) -> (FGAbelianGroup, FGAbelianGroup) {
        (c.result.k0.assembled.clone(), c.result.k1.assembled.clone())
    }

    #[test]
    fn sphere_is_cross_checked() {
        let c = k_theory(&SpaceSpec::Sphere { n: 1 }, &Twist::multiple(3, 4), MethodChoice::Auto).unwrap();
        assert_eq!(groups(&c), (z(1), z(4)));
        assert_eq!(c.result.method, Method::MayerVietoris);
        assert_eq!(c.cross_checked_by, Some(Method::Ahss));
    }

    #[test]
    fn product_routes() {
        let spec = SpaceSpec::ProductSpheres { m: 1, n: 1 };
        let low = k_theory(&spec, &Twist::multiple(3, 6), MethodChoice::Auto).unwrap();
        assert_eq!(low.result.method, Method::Kunneth);
        assert_eq!(groups(&low), (z(1), z(6).power(2)));
        let top = k_theory(&spec, &Twist::multiple(5, 6), MethodChoice::Auto).unwrap();
        assert_eq!(top.result.method, Method::Ahss);
        assert_eq!(
            groups(&top),
            (z(0), FGAbelianGroup::from_factors(1, &[BigInt::from(6)]))
        );
    }

    #[test]
    fn projective_and_lens_templates() {
        let rp = k_theory(
            &SpaceSpec::RealProjective { n: 2 },
            &Twist::multiple(5, 3),
            MethodChoice::Auto,
        )
        .unwrap();
        assert_eq!(rp.result.method, Method::ExactTemplate);
        assert_eq!(groups(&rp), (z(4), z(3)));
        let lens = k_theory(
            &SpaceSpec::Lens { n: 2, p: 3 },
            &Twist::multiple(5, 2),
            MethodChoice::Auto,
        )
        .unwrap();
        assert_eq!(groups(&lens), (z(9), z(2)));
    }

    #[test]
    fn forced_methods_must_apply() {
        let e = k_theory(
            &SpaceSpec::SpecialUnitary { n: 3 },
            &Twist::multiple(5, 2),
            MethodChoice::MayerVietoris,
        );
        assert!(matches!(e, Err(Error::MethodNotApplicable(_))));
        let e = k_theory(
            &SpaceSpec::ProductSpheres { m: 1, n: 1 },
            &Twist::multiple(5, 2),
            MethodChoice::Kunneth,
        );
        assert!(matches!(e, Err(Error::MethodNotApplicable(_))));
    }

    #[test]
    fn forced_ahss_on_projective_space() {
        let c = k_theory(
            &SpaceSpec::RealProjective { n: 2 },
            &Twist::multiple(5, 3),
            MethodChoice::Ahss,
        )
        .unwrap();
        assert_eq!(c.result.k0.assembled, z(2).power(2));
        assert!(!c.result.k0.exact);
        assert_eq!(c.result.k0.torsion_order, BigInt::from(4));
        assert_eq!(c.result.k1.assembled, z(3));
    }

    #[test]
    fn su_routing() {
        let c = k_theory(
            &SpaceSpec::SpecialUnitary { n: 3 },
            &Twist::multiple(5, 5),
            MethodChoice::Auto,
        )
        .unwrap();
        assert_eq!(groups(&c), (z(5), z(5)));
        let c = k_theory(
            &SpaceSpec::SpecialUnitary { n: 5 },
            &Twist::multiple(9, 2),
            MethodChoice::Auto,
        )
        .unwrap();
        assert_eq!(c.result.k0.graded_pieces.len(), 4);
    }

    #[test]
    fn su_low_primitive_degrees_refuse() {
        for n in 3..=6usize {
            for d in (3..2 * n - 1).step_by(2) {
                let e = k_theory(
                    &SpaceSpec::SpecialUnitary { n },
                    &Twist::multiple(d, 2),
                    MethodChoice::Auto,
                );
                assert!(
                    matches!(e, Err(Error::HigherDifferentialUnknown(_))),
                    "SU({n}) degree {d}: {e:?}"
                );
            }
        }
    }

    #[test]
    fn su2_bundle_degrees() {
        let spec = SpaceSpec::SU2Bundle {
            base: FourManifoldData::s2_times_s2(),
            euler: BigInt::from(0),
        };
        let d3 = Twist::multiple(3, 1);
        assert!(matches!(
            k_theory(&spec, &d3, MethodChoice::Auto),
            Err(Error::Unsupported(_))
        ));
        let d5 = Twist::coefficients(5, vec![BigInt::from(2), BigInt::from(4)]);
        let c = k_theory(&spec, &d5, MethodChoice::Auto).unwrap();
        assert!(c.result.splitting_assumed);
        assert_eq!(c.result.k1.rank(), 2);
        let d7 = Twist::multiple(7, 3);
        let c = k_theory(&spec, &d7, MethodChoice::Auto).unwrap();
        assert_eq!(c.result.k1.torsion_order, BigInt::from(3));
    }

    #[test]
    fn computation_json_round_trip() {
        let c = k_theory(
            &SpaceSpec::SpecialUnitary { n: 4 },
            &Twist::multiple(7, 3),
            MethodChoice::Auto,
        )
        .unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: Computation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn method_names() {
        for m in ["auto", "ahss", "mv", "template", "kunneth"] {
            assert_eq!(m.parse::<MethodChoice>().unwrap().to_string(), m);
        }
        assert!("spectral".parse::<MethodChoice>().is_err());
    }
}
