use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::space::{Space, SpaceSpec};
use crate::abgroup::int;
use crate::cohomology::CohClass;
use crate::error::{Error, Result};

/// How the twist class is given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistClass {
    /// `N` times the generator. For `SU(n)` the generator is the primitive
    /// class `c_d`; elsewhere the twist group must be `Z`.
    Multiple(#[serde(with = "int")] BigInt),
    /// Coordinates over the normal-form basis of `H^degree`.
    Coefficients(#[serde(with = "int::vec")] Vec<BigInt>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twist {
    pub degree: usize,
    pub class: TwistClass,
}

impl Twist {
    pub fn multiple(degree: usize, n: impl Into<BigInt>) -> Self {
        Twist {
            degree,
            class: TwistClass::Multiple(n.into()),
        }
    }

    pub fn coefficients(degree: usize, coeffs: Vec<BigInt>) -> Self {
        Twist {
            degree,
            class: TwistClass::Coefficients(coeffs),
        }
    }

    /// The twist as a class over the space's ring. Only `(degree, group)`
    /// pairs from [`Space::list_twists`] are accepted, and degree-1 classes
    /// are listed but not computed with.
    pub fn resolve(&self, space: &Space) -> Result<CohClass> {
        let d = self.degree;
        let listed = space.list_twists();
        let Some((_, group)) = listed.iter().find(|(p, _)| *p == d) else {
            let degrees: Vec<String> = listed.iter().map(|(p, _)| p.to_string()).collect();
            return Err(Error::InadmissibleTwist(format!(
                "{} has no twists in degree {d} (twist degrees: {})",
                space.spec,
                if degrees.is_empty() {
                    "none".into()
                } else {
                    degrees.join(", ")
                }
            )));
        };
        if d == 1 {
            return Err(Error::InadmissibleTwist(
                "H^1(X; Z_2) twists are listed but not computed".into(),
            ));
        }
        match &self.class {
            TwistClass::Coefficients(c) => CohClass::new(&space.ring, d, c.clone()),
            TwistClass::Multiple(n) => {
                if let SpaceSpec::SpecialUnitary { .. } = space.spec {
                    if let Some(i) = space.primitive_index(d) {
                        return Ok(CohClass::generator(&space.ring, d, i).scaled(n));
                    }
                }
                if group.generator_count() != 1 || !group.is_free() {
                    return Err(Error::InvalidInput(format!(
                        "H^{d} = {group} is not Z; give the twist by its coefficients"
                    )));
                }
                Ok(CohClass::generator(&space.ring, d, 0).scaled(n))
            }
        }
    }
}
