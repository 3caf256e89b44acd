use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ring::{CohomologyRing, DegreeGroup};
use crate::abgroup::{int, FGAbelianGroup, IntMatrix};
use crate::error::{Error, Result};

/// Torsion-free cohomology of a closed oriented 4-manifold `M`.
///
/// `H^3 ≅ Z^{b1}` and `H^4 ≅ Z` by Poincaré duality, so only the ranks and
/// the products landing in degrees 3 and 4 are recorded. `cup_12[k]` is the
/// `b1 x b1` matrix of `a ↦ a ∪ e_k` from `H^1` to `H^3` for the `k`-th
/// generator `e_k` of `H^2`; `cup_22` is the intersection form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourManifoldData {
    pub b1: usize,
    pub b2: usize,
    pub cup_12: Vec<IntMatrix>,
    pub cup_22: IntMatrix,
}

impl FourManifoldData {
    pub fn new(b1: usize, b2: usize, cup_12: Vec<IntMatrix>, cup_22: IntMatrix) -> Result<Self> {
        let m = FourManifoldData { b1, b2, cup_12, cup_22 };
        m.validate()?;
        Ok(m)
    }

    /// `S^2 x S^2` with the hyperbolic intersection form.
    pub fn s2_times_s2() -> Self {
        FourManifoldData {
            b1: 0,
            b2: 2,
            cup_12: vec![IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0)],
            cup_22: IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cup_22.rows() != self.b2 || self.cup_22.cols() != self.b2 {
            return Err(Error::Shape(format!(
                "intersection form is {}x{}, b2 = {}",
                self.cup_22.rows(),
                self.cup_22.cols(),
                self.b2
            )));
        }
        if self.cup_22.transpose() != self.cup_22 {
            return Err(Error::InvalidInput("intersection form is not symmetric".into()));
        }
        if self.cup_12.len() != self.b2 {
            return Err(Error::Shape(format!(
                "{} H^1 x H^2 matrices for b2 = {}",
                self.cup_12.len(),
                self.b2
            )));
        }
        if let Some(m) = self.cup_12.iter().find(|m| m.rows() != self.b1 || m.cols() != self.b1) {
            return Err(Error::Shape(format!(
                "H^1 x H^2 matrix is {}x{}, b1 = {}",
                m.rows(),
                m.cols(),
                self.b1
            )));
        }
        Ok(())
    }
}

/// Cohomology of the total space `P` of an `SU(2)`-bundle over `M` with Euler
/// class `euler · [M]`, assuming the Gysin sequence splits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SU2BundleCohomology {
    pub ring: CohomologyRing,
    pub splitting_assumed: bool,
    #[serde(with = "int")]
    pub euler: BigInt,
}

/// `H^k(P) = π^*(H^k(M) / e·H^{k-4}(M)) ⊕ λ(ker(e: H^{k-3}(M) -> H^{k+1}(M)))`.
///
/// Cup products are recorded only for `π^*x ∪ λ(b)` with `|x| ∈ {1, 2}` and
/// `|b| = 2`, via `π^*x ∪ λ(b) = λ(x ∪ b)`. These are the products consumed
/// by differentials of degree-5 twists.
pub fn gysin_su2(m: &FourManifoldData, euler: impl Into<BigInt>) -> Result<SU2BundleCohomology> {
    m.validate()?;
    let j: BigInt = euler.into();
    let j_abs = j.abs();
    let (b1, b2) = (m.b1, m.b2);
    let a = |i: usize| format!("a{i}");
    let b = |i: usize| format!("b{i}");
    let h3 = |i: usize| format!("a{i}*");

    let mut degrees = vec![DegreeGroup::trivial(); 8];
    degrees[0] = DegreeGroup::new(FGAbelianGroup::free(1), vec!["1".into()])?;
    degrees[1] = DegreeGroup::new(FGAbelianGroup::free(b1), (0..b1).map(a).collect())?;
    degrees[2] = DegreeGroup::new(FGAbelianGroup::free(b2), (0..b2).map(b).collect())?;

    // degree 3: π^*H^3(M) ⊕ λ(ker(×j on H^0))
    let mut labels3: Vec<String> = (0..b1).map(h3).collect();
    if j.is_zero() {
        labels3.push("λ(1)".into());
    }
    degrees[3] = DegreeGroup::new(FGAbelianGroup::free(labels3.len()), labels3)?;

    // degree 4: π^*(H^4(M)/j) ⊕ λ(H^1(M)), free generators first
    let lambda_h1: Vec<String> = (0..b1).map(|i| format!("λ({})", a(i))).collect();
    degrees[4] = if j.is_zero() {
        let labels = std::iter::once("[M]".to_string()).chain(lambda_h1).collect();
        DegreeGroup::new(FGAbelianGroup::free(b1 + 1), labels)?
    } else if j_abs == BigInt::from(1) {
        DegreeGroup::new(FGAbelianGroup::free(b1), lambda_h1)?
    } else {
        let labels = lambda_h1
            .into_iter()
            .chain(std::iter::once("[M]".to_string()))
            .collect();
        DegreeGroup::new(FGAbelianGroup::from_invariants(b1, vec![j_abs.clone()])?, labels)?
    };

    degrees[5] = DegreeGroup::new(
        FGAbelianGroup::free(b2),
        (0..b2).map(|i| format!("λ({})", b(i))).collect(),
    )?;
    degrees[6] = DegreeGroup::new(
        FGAbelianGroup::free(b1),
        (0..b1).map(|i| format!("λ({})", h3(i))).collect(),
    )?;
    degrees[7] = DegreeGroup::new(FGAbelianGroup::free(1), vec!["λ([M])".into()])?;

    let mut ring = CohomologyRing::new(degrees)?;
    for k in 0..b2 {
        for i in 0..b1 {
            ring.insert_product((1, i), (5, k), m.cup_12[k].column(i))?;
        }
        for i in 0..b2 {
            ring.insert_product((2, i), (5, k), vec![m.cup_22.get(i, k).clone()])?;
        }
    }
    Ok(SU2BundleCohomology {
        ring,
        splitting_assumed: true,
        euler: j,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::CohClass;

    fn groups(r: &CohomologyRing) -> Vec<FGAbelianGroup> {
        (0..=7).map(|p| r.group(p)).collect()
    }

    #[test]
    fn untwisted_bundle_over_s2s2() {
        let p = gysin_su2(&FourManifoldData::s2_times_s2(), 0).unwrap();
        let z = FGAbelianGroup::free;
        let expected = vec![z(1), z(0), z(2), z(1), z(1), z(2), z(0), z(1)];
        assert_eq!(groups(&p.ring), expected);
        assert!(p.splitting_assumed);
    }

    #[test]
    fn euler_class_moves_degree_three_into_torsion() {
        for j in [2i64, 3, -5] {
            let p = gysin_su2(&FourManifoldData::s2_times_s2(), j).unwrap();
            assert!(p.ring.group(3).is_trivial());
            assert_eq!(p.ring.group(4), FGAbelianGroup::cyclic(j));
            assert_eq!(p.ring.group(7), FGAbelianGroup::free(1));
        }
        let p = gysin_su2(&FourManifoldData::s2_times_s2(), 1).unwrap();
        assert!(p.ring.group(4).is_trivial());
    }

    #[test]
    fn twist_differentials_are_cup_with_eta() {
        let p = gysin_su2(&FourManifoldData::s2_times_s2(), 0).unwrap();
        let r = &p.ring;
        let delta = CohClass::new(r, 5, vec![BigInt::from(3), BigInt::from(4)]).unwrap();
        // 1 ↦ -η
        assert_eq!(
            r.cup_with_class(&delta, 0).unwrap().matrix(),
            &IntMatrix::from_i64(&[&[-3], &[-4]])
        );
        // a ↦ -(a · Q · η) with Q hyperbolic
        assert_eq!(
            r.cup_with_class(&delta, 2).unwrap().matrix(),
            &IntMatrix::from_i64(&[&[-4, -3]])
        );
    }

    #[test]
    fn products_with_h1_use_cup_12() {
        // T^2 x S^2-like data: b1 = 2, one H^2 class pairing a0 ↦ a1*, a1 ↦ -a0*
        let m = FourManifoldData::new(
            2,
            1,
            vec![IntMatrix::from_i64(&[&[0, -1], &[1, 0]])],
            IntMatrix::from_i64(&[&[0]]),
        )
        .unwrap();
        let p = gysin_su2(&m, 0).unwrap();
        let r = &p.ring;
        let delta = CohClass::generator(r, 5, 0);
        let f = r.cup_with_class(&delta, 1).unwrap();
        assert_eq!(f.matrix(), &IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]));
    }

    #[test]
    fn rejects_asymmetric_form() {
        let bad = FourManifoldData::new(
            0,
            2,
            vec![IntMatrix::zeros(0, 0); 2],
            IntMatrix::from_i64(&[&[0, 1], &[2, 0]]),
        );
        assert!(bad.is_err());
    }
}
