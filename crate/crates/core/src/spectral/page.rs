use serde::{Deserialize, Serialize};

use crate::abgroup::{homology, FGAbelianGroup, GroupHom};
use crate::cohomology::{CohClass, CohomologyRing};
use crate::error::{Error, PagePosition, Result};

/// A differential `E_r^p -> E_r^{p+r}` that was applied to reach a page.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppliedDifferential {
    pub source: usize,
    pub length: usize,
    pub map: GroupHom,
}

/// One row of the 2-periodic AHSS: `entries[p] = E_r^{p,0}`. Odd rows vanish
/// and even rows repeat this one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPage {
    #[serde(rename = "page")]
    pub page_index: usize,
    pub entries: Vec<FGAbelianGroup>,
    #[serde(rename = "differentials")]
    pub applied: Vec<AppliedDifferential>,
}

impl SpectralPage {
    /// `E^p`, trivial outside the stored range.
    pub fn entry(&self, p: usize) -> FGAbelianGroup {
        self.entries.get(p).cloned().unwrap_or_else(FGAbelianGroup::trivial)
    }

    /// `Σ_even rank - Σ_odd rank`.
    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(p, g)| {
                if p % 2 == 0 {
                    g.rank() as i64
                } else {
                    -(g.rank() as i64)
                }
            })
            .sum()
    }
}

/// `E_2^{p,0} = H^p(X; Z)`.
pub fn ahss_e2(ring: &CohomologyRing) -> SpectralPage {
    SpectralPage {
        page_index: 2,
        entries: (0..=ring.top_degree()).map(|p| ring.group(p)).collect(),
        applied: Vec::new(),
    }
}

/// Whether the untwisted part `d'_r: E^p -> E^{p+r}` is known to vanish.
///
/// `d'_r` is a torsion-valued operator, so it dies on torsion-free targets.
/// `d'_3` is the integral `Sq^3`, which kills classes of degree at most 2.
pub(crate) fn untwisted_vanishes(page: &SpectralPage, p: usize, r: usize) -> bool {
    let source = page.entry(p);
    let target = page.entry(p + r);
    source.is_trivial() || target.is_trivial() || target.is_free() || (r == 3 && p <= 2)
}

/// Positions where `d'_r` on `page` cannot be ruled out.
pub(crate) fn untwisted_obstructions(page: &SpectralPage, r: usize) -> Vec<PagePosition> {
    (0..page.entries.len())
        .filter(|&p| !untwisted_vanishes(page, p, r))
        .map(|p| PagePosition { degree: p, length: r })
        .collect()
}

/// Applies `d_d = d'_d - ∪δ` to the `E_d = E_2` page, with `d'_d` taken to be
/// zero where the built-in criteria allow and refused elsewhere.
pub fn apply_twisted_differential(
    page: &SpectralPage,
    ring: &CohomologyRing,
    delta: &CohClass,
) -> Result<SpectralPage> {
    let d = delta.degree;
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::InadmissibleTwist(format!(
            "the twisted differential needs an odd degree >= 3, got {d}"
        )));
    }
    let delta = CohClass::new(ring, d, delta.coeffs.clone())?;
    if page.page_index > d || page.entries != ahss_e2(ring).entries {
        return Err(Error::Unsupported(format!(
            "twisted d_{d} is computed from cup products and needs the E_2 entries, got page {}",
            page.page_index
        )));
    }
    let obstructions = untwisted_obstructions(page, d);
    if !obstructions.is_empty() {
        return Err(Error::TorsionDifferentialUnknown(obstructions));
    }

    let top = ring.top_degree();
    let maps: Vec<GroupHom> = (0..=top)
        .map(|p| ring.cup_with_class(&delta, p))
        .collect::<Result<_>>()?;
    let mut entries = Vec::with_capacity(top + 1);
    for (p, outgoing) in maps.iter().enumerate() {
        let incoming = match p.checked_sub(d) {
            Some(s) => maps[s].clone(),
            None => GroupHom::zero(FGAbelianGroup::trivial(), ring.group(p)),
        };
        entries.push(homology(&incoming, outgoing)?);
    }
    let applied = maps
        .into_iter()
        .enumerate()
        .filter(|(_, f)| !f.domain().is_trivial() && !f.codomain().is_trivial())
        .map(|(source, map)| AppliedDifferential { source, length: d, map })
        .collect();
    let next = SpectralPage {
        page_index: d + 1,
        entries,
        applied,
    };
    assert_eq!(
        next.euler_characteristic(),
        page.euler_characteristic(),
        "odd-length differential changed the Euler characteristic"
    );
    Ok(next)
}
