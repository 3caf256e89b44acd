use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::int;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^rank ⊕ Z_{d_1} ⊕ ... ⊕ Z_{d_k}` in
/// invariant-factor form: every `d_i >= 2` and `d_i | d_{i+1}`.
///
/// Generators are ordered free first, then torsion in factor order. Every
/// homomorphism matrix in the crate uses this ordering.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    rank: usize,
    #[serde(with = "int::vec")]
    torsion: Vec<BigInt>,
}

impl TryFrom<GroupRepr> for FGAbelianGroup {
    type Error = Error;

    fn try_from(r: GroupRepr) -> Result<Self> {
        FGAbelianGroup::from_invariants(r.rank, r.torsion)
    }
}

impl From<FGAbelianGroup> for GroupRepr {
    fn from(g: FGAbelianGroup) -> Self {
        GroupRepr {
            rank: g.rank,
            torsion: g.torsion,
        }
    }
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        FGAbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z / n`. `n = 0` gives `Z`, `n = ±1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_factors(0, &[n.into()])
    }

    /// Checked constructor for data that claims to already be in normal form.
    pub fn from_invariants(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidInput(format!("invariant factor {d} must be at least 2")));
            }
            if let Some(next) = torsion.get(i + 1) {
                if !next.is_multiple_of(d) {
                    return Err(Error::InvalidInput(format!(
                        "invariant factors {d} and {next} break the divisibility chain"
                    )));
                }
            }
        }
        Ok(FGAbelianGroup { rank, torsion })
    }

    /// Normalizes `Z^rank ⊕ Z_{n_1} ⊕ ...` for arbitrary orders `n_i`
    /// (zero orders become free summands, units vanish).
    pub fn from_factors(rank: usize, orders: &[BigInt]) -> Self {
        let snf = smith_normal_form(&IntMatrix::diagonal(orders));
        let invariants = snf.invariants();
        let free_from_zeros = orders.len() - invariants.len();
        let torsion = invariants.into_iter().filter(|d| !d.is_one()).collect();
        FGAbelianGroup {
            rank: rank + free_from_zeros,
            torsion,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of generator `i`, `None` for free generators.
    pub fn order_of_generator(&self, i: usize) -> Option<&BigInt> {
        i.checked_sub(self.rank).and_then(|k| self.torsion.get(k))
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Exponent of the torsion subgroup (1 when torsion-free).
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn torsion_subgroup(&self) -> FGAbelianGroup {
        FGAbelianGroup {
            rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    pub fn direct_sum(&self, other: &FGAbelianGroup) -> FGAbelianGroup {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_factors(self.rank + other.rank, &orders)
    }

    pub fn sum_of<'a>(groups: impl IntoIterator<Item = &'a FGAbelianGroup>) -> FGAbelianGroup {
        groups
            .into_iter()
            .fold(FGAbelianGroup::trivial(), |acc, g| acc.direct_sum(g))
    }

    /// `k` copies of `self`.
    pub fn power(&self, k: usize) -> FGAbelianGroup {
        Self::sum_of(std::iter::repeat_n(self, k))
    }

    /// Re-runs normalization; the identity on valid values.
    pub fn renormalized(&self) -> FGAbelianGroup {
        Self::from_factors(self.rank, &self.torsion)
    }

    /// Relation matrix of the presentation: one column `d_i e_{rank+i}` per
    /// torsion generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.generator_count();
        let mut m = IntMatrix::zeros(n, self.torsion.len());
        for (i, d) in self.torsion.iter().enumerate() {
            m.set(self.rank + i, i, d.clone());
        }
        m
    }

    /// Reduces a coordinate vector: torsion coordinates into `[0, d)`.
    pub fn reduce(&self, coords: &mut [BigInt]) {
        for (k, d) in self.torsion.iter().enumerate() {
            let c = &mut coords[self.rank + k];
            *c = c.mod_floor(d);
        }
    }

    pub fn is_zero_element(&self, coords: &[BigInt]) -> bool {
        coords
            .iter()
            .enumerate()
            .all(|(i, c)| match self.order_of_generator(i) {
                None => c.is_zero(),
                Some(d) => c.is_multiple_of(d),
            })
    }

    /// Compact text form with `Z` for the integers, e.g. `Z^2 ⊕ Z_4`.
    pub fn pretty(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("Z_{d}"));
            } else {
                parts.push(format!("(Z_{d})^{run}"));
            }
            i += run;
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FGAbelianGroup({self})")
    }
}

/// Absolute value helper shared by the group functors.
pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b).abs()
}
