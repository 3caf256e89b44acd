use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::abgroup::{ext, int, FGAbelianGroup};
use crate::error::{Error, Result};

/// One filtration quotient. `degree` is the AHSS filtration degree, `None`
/// for pieces coming from an exact sequence rather than a spectral sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: Option<usize>,
    pub group: FGAbelianGroup,
}

/// A K-group known up to extensions.
///
/// `assembled` is the direct sum of the pieces; it is the group itself when
/// `exact`. Rank is always exact. `torsion_order` is exact unless
/// `torsion_order_exact` is false, in which case it is a multiple of the true
/// order (a torsion quotient extending a group with free rank may be absorbed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KGroupReport {
    pub parity: u8,
    pub graded_pieces: Vec<GradedPiece>,
    pub assembled: FGAbelianGroup,
    pub exact: bool,
    pub torsion_order: BigInt,
    pub torsion_order_exact: bool,
    pub exponent_lower: BigInt,
    pub exponent_upper: BigInt,
}

impl KGroupReport {
    /// A group known on the nose.
    pub fn exact_group(parity: u8, group: FGAbelianGroup) -> KGroupReport {
        let pieces = if group.is_trivial() {
            Vec::new()
        } else {
            vec![GradedPiece { degree: None, group }]
        };
        assemble_diagonal(parity, pieces)
    }

    pub fn rank(&self) -> usize {
        self.assembled.rank()
    }

    /// Marks the extension as unresolved regardless of the split test.
    pub(crate) fn mark_inexact(mut self) -> Self {
        self.exact = false;
        self
    }
}

/// Folds `0 -> current -> next -> piece -> 0` from the deepest piece outward.
///
/// `pieces` are ordered by decreasing filtration degree. A step is resolved
/// when `Ext^1(piece, current) = 0`; otherwise the direct sum is kept as the
/// candidate and `exact` is cleared.
pub fn assemble_diagonal(parity: u8, pieces: Vec<GradedPiece>) -> KGroupReport {
    let mut current = FGAbelianGroup::trivial();
    let mut exact = true;
    let mut torsion_order_exact = true;
    // pieces[..reliable] bound the torsion exponent from below
    let mut reliable = pieces.len();
    for (idx, piece) in pieces.iter().enumerate() {
        let g = &piece.group;
        if !ext(g, &current).is_trivial() {
            exact = false;
        }
        if current.rank() > 0 && !g.is_free() {
            torsion_order_exact = false;
        }
        if g.rank() > 0 && current.rank() == 0 && reliable == pieces.len() {
            reliable = idx + 1;
        }
        current = current.direct_sum(g);
    }
    if torsion_order_exact {
        reliable = pieces.len();
    }

    let torsion_order = pieces.iter().map(|p| p.group.torsion_order()).product();
    let exponent_upper = pieces.iter().map(|p| p.group.exponent()).product();
    let exponent_lower = pieces[..reliable]
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(&p.group.exponent()));
    KGroupReport {
        parity,
        graded_pieces: pieces,
        assembled: current,
        exact,
        torsion_order,
        torsion_order_exact,
        exponent_lower,
        exponent_upper,
    }
}

#[derive(Serialize, Deserialize)]
struct PieceRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(flatten)]
    group: FGAbelianGroup,
}

#[derive(Serialize, Deserialize)]
struct ReportRepr {
    parity: u8,
    rank: usize,
    #[serde(with = "int::vec")]
    torsion: Vec<BigInt>,
    exact: bool,
    pieces: Vec<PieceRepr>,
    #[serde(with = "int::string")]
    torsion_order: BigInt,
    torsion_order_exact: bool,
    exponent_bounds: [int::Int; 2],
}

impl Serialize for KGroupReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportRepr {
            parity: self.parity,
            rank: self.assembled.rank(),
            torsion: self.assembled.torsion().to_vec(),
            exact: self.exact,
            pieces: self
                .graded_pieces
                .iter()
                .map(|p| PieceRepr {
                    degree: p.degree,
                    group: p.group.clone(),
                })
                .collect(),
            torsion_order: self.torsion_order.clone(),
            torsion_order_exact: self.torsion_order_exact,
            exponent_bounds: [
                int::Int(self.exponent_lower.clone()),
                int::Int(self.exponent_upper.clone()),
            ],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KGroupReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ReportRepr::deserialize(d)?;
        let assembled = FGAbelianGroup::from_invariants(r.rank, r.torsion).map_err(serde::de::Error::custom)?;
        let report = KGroupReport {
            parity: r.parity,
            graded_pieces: r
                .pieces
                .into_iter()
                .map(|p| GradedPiece {
                    degree: p.degree,
                    group: p.group,
                })
                .collect(),
            assembled,
            exact: r.exact,
            torsion_order: r.torsion_order,
            torsion_order_exact: r.torsion_order_exact,
            exponent_lower: r.exponent_bounds[0].0.clone(),
            exponent_upper: r.exponent_bounds[1].0.clone(),
        };
        report.check().map_err(serde::de::Error::custom)?;
        Ok(report)
    }
}

impl KGroupReport {
    /// The bookkeeping identities every report satisfies.
    pub fn check(&self) -> Result<()> {
        let rank: usize = self.graded_pieces.iter().map(|p| p.group.rank()).sum();
        let order: BigInt = self.graded_pieces.iter().map(|p| p.group.torsion_order()).product();
        let upper: BigInt = self.graded_pieces.iter().map(|p| p.group.exponent()).product();
        let fail = |what: &str| Err(Error::InvalidInput(format!("K{} report: {what}", self.parity)));
        if rank != self.assembled.rank() {
            return fail("rank differs from the sum over pieces");
        }
        if order != self.torsion_order {
            return fail("torsion order differs from the product over pieces");
        }
        if upper != self.exponent_upper || !self.exponent_upper.is_multiple_of(&self.exponent_lower) {
            return fail("exponent bounds are inconsistent");
        }
        if self.exact && self.exponent_lower != self.assembled.exponent() {
            return fail("exact report whose exponent is not the lower bound");
        }
        if self.parity > 1 {
            return fail("parity must be 0 or 1");
        }
        Ok(())
    }
}
