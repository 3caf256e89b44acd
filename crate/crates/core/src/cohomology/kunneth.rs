use num_bigint::BigInt;
use num_traits::Zero;

use super::ring::{koszul, CohomologyRing, DegreeGroup};
use crate::abgroup::FGAbelianGroup;
use crate::error::{Error, Result};

/// Position of `(p, a, b)` inside degree `p + q` of the tensor product: pairs
/// are ordered by the first factor's degree, then `a`, then `b`.
struct Layout<'a> {
    r1: &'a CohomologyRing,
    r2: &'a CohomologyRing,
}

impl Layout<'_> {
    fn splits(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        let lo = n.saturating_sub(self.r2.top_degree());
        let hi = n.min(self.r1.top_degree());
        lo..=hi
    }

    fn rank(&self, n: usize) -> usize {
        self.splits(n).map(|p| self.r1.betti(p) * self.r2.betti(n - p)).sum()
    }

    fn index(&self, p: usize, a: usize, q: usize, b: usize) -> usize {
        let before: usize = self
            .splits(p + q)
            .take_while(|&s| s < p)
            .map(|s| self.r1.betti(s) * self.r2.betti(p + q - s))
            .sum();
        before + a * self.r2.betti(q) + b
    }

    fn basis(&self, n: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for p in self.splits(n) {
            for a in 0..self.r1.betti(p) {
                for b in 0..self.r2.betti(n - p) {
                    out.push((p, a, n - p, b));
                }
            }
        }
        out
    }
}

fn pair_label(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", _) => b.to_string(),
        (_, "1") => a.to_string(),
        _ => format!("{a}⊗{b}"),
    }
}

/// Graded tensor product of torsion-free rings with the Koszul sign
/// `(a1 ⊗ b1)(a2 ⊗ b2) = (-1)^{|b1||a2|} a1a2 ⊗ b1b2`. Products missing from
/// either factor stay missing.
pub fn kunneth_ring(r1: &CohomologyRing, r2: &CohomologyRing) -> Result<CohomologyRing> {
    if !r1.is_torsion_free() || !r2.is_torsion_free() {
        return Err(Error::Unsupported(
            "Künneth ring needs torsion-free factors (no Tor correction is modeled)".into(),
        ));
    }
    let layout = Layout { r1, r2 };
    let top = r1.top_degree() + r2.top_degree();

    let degrees: Vec<DegreeGroup> = (0..=top)
        .map(|n| {
            let labels = layout
                .basis(n)
                .into_iter()
                .map(|(p, a, q, b)| pair_label(&r1.labels(p)[a], &r2.labels(q)[b]))
                .collect();
            DegreeGroup::new(FGAbelianGroup::free(layout.rank(n)), labels)
        })
        .collect::<Result<_>>()?;
    let mut ring = CohomologyRing::new(degrees)?;

    for n1 in 1..=top {
        for n2 in 1..=top - n1 {
            let target = layout.rank(n1 + n2);
            if target == 0 {
                continue;
            }
            for (i, &(p1, a1, q1, b1)) in layout.basis(n1).iter().enumerate() {
                for (j, &(p2, a2, q2, b2)) in layout.basis(n2).iter().enumerate() {
                    let Some(u) = product_or_missing(r1, (p1, a1), (p2, a2))? else {
                        continue;
                    };
                    let Some(v) = product_or_missing(r2, (q1, b1), (q2, b2))? else {
                        continue;
                    };
                    let sign = koszul(q1, p2);
                    let mut result = vec![BigInt::zero(); target];
                    for (k, uk) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        for (l, vl) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                            result[layout.index(p1 + p2, k, q1 + q2, l)] += &sign * uk * vl;
                        }
                    }
                    ring.insert_product((n1, i), (n2, j), result)?;
                }
            }
        }
    }
    Ok(ring)
}

/// Product in a factor; zero past its top degree, `None` when unrecorded.
fn product_or_missing(r: &CohomologyRing, a: (usize, usize), b: (usize, usize)) -> Result<Option<Vec<BigInt>>> {
    if a.0 + b.0 > r.top_degree() {
        return Ok(Some(Vec::new()));
    }
    match r.basis_product(a, b) {
        Ok(v) => Ok(Some(v)),
        Err(Error::MissingProduct { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}
