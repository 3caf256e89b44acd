use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abgroup::{int, tensor, tor, FGAbelianGroup, GroupHom, IntMatrix};
use crate::error::{Error, Result};

/// `H^p` together with a name for each normal-form generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeGroup {
    pub group: FGAbelianGroup,
    pub labels: Vec<String>,
}

impl DegreeGroup {
    pub fn new(group: FGAbelianGroup, labels: Vec<String>) -> Result<Self> {
        if labels.len() != group.generator_count() {
            return Err(Error::InvalidInput(format!(
                "{} labels for the {} generators of {group}",
                labels.len(),
                group.generator_count()
            )));
        }
        Ok(DegreeGroup { group, labels })
    }

    /// Labels `x{p}_{i}`.
    pub fn auto(p: usize, group: FGAbelianGroup) -> Self {
        let labels = (0..group.generator_count()).map(|i| format!("x{p}_{i}")).collect();
        DegreeGroup { group, labels }
    }

    pub fn trivial() -> Self {
        DegreeGroup {
            group: FGAbelianGroup::trivial(),
            labels: Vec::new(),
        }
    }
}

/// Key `(p, i, q, j)`: generator `i` of degree `p` times generator `j` of
/// degree `q`.
pub type ProductKey = (usize, usize, usize, usize);

/// Graded integral cohomology ring with cup-product structure constants.
///
/// Degree 0 is `Z` generated by the unit; products with the unit are implicit
/// and never stored. A product is looked up under its own key first and then
/// under the reversed key with the sign `(-1)^{pq}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RingFile", into = "RingFile")]
pub struct CohomologyRing {
    degrees: Vec<DegreeGroup>,
    cup: BTreeMap<ProductKey, Vec<BigInt>>,
    h1_mod2: Option<FGAbelianGroup>,
}

/// An element of `H^degree` in normal-form coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohClass {
    pub degree: usize,
    #[serde(with = "int::vec")]
    pub coeffs: Vec<BigInt>,
}

impl CohClass {
    pub fn zero(ring: &CohomologyRing, degree: usize) -> Self {
        CohClass {
            degree,
            coeffs: vec![BigInt::zero(); ring.group(degree).generator_count()],
        }
    }

    pub fn generator(ring: &CohomologyRing, degree: usize, i: usize) -> Self {
        let mut c = Self::zero(ring, degree);
        c.coeffs[i] = BigInt::from(1);
        c
    }

    /// Validated and reduced against the ring.
    pub fn new(ring: &CohomologyRing, degree: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        let g = ring.group(degree);
        if coeffs.len() != g.generator_count() {
            return Err(Error::InvalidInput(format!(
                "class in degree {degree} has {} coefficients, H^{degree} = {g} has {} generators",
                coeffs.len(),
                g.generator_count()
            )));
        }
        let mut coeffs = coeffs;
        g.reduce(&mut coeffs);
        Ok(CohClass { degree, coeffs })
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        CohClass {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn is_zero(&self, ring: &CohomologyRing) -> bool {
        ring.group(self.degree).is_zero_element(&self.coeffs)
    }
}

impl CohomologyRing {
    /// A ring with the given groups and no products yet. `degrees[0]` must be
    /// `Z`; the top degree is `degrees.len() - 1`.
    pub fn new(degrees: Vec<DegreeGroup>) -> Result<Self> {
        match degrees.first() {
            Some(d0) if d0.group == FGAbelianGroup::free(1) => {}
            _ => return Err(Error::InvalidInput("degree 0 must be Z, generated by the unit".into())),
        }
        Ok(CohomologyRing {
            degrees,
            cup: BTreeMap::new(),
            h1_mod2: None,
        })
    }

    /// Groups only, with generated labels.
    pub fn from_groups(groups: Vec<FGAbelianGroup>) -> Result<Self> {
        let mut degrees: Vec<DegreeGroup> = groups
            .into_iter()
            .enumerate()
            .map(|(p, g)| DegreeGroup::auto(p, g))
            .collect();
        if let Some(d0) = degrees.first_mut() {
            d0.labels = vec!["1".into()];
        }
        Self::new(degrees)
    }

    /// Records `e_{p,i} ∪ e_{q,j}`. The value is reduced; it must respect the
    /// orders of both factors and agree with the reversed entry if present.
    pub fn with_product(mut self, a: (usize, usize), b: (usize, usize), result: Vec<BigInt>) -> Result<Self> {
        self.insert_product(a, b, result)?;
        Ok(self)
    }

    pub(crate) fn insert_product(
        &mut self,
        (p, i): (usize, usize),
        (q, j): (usize, usize),
        result: Vec<BigInt>,
    ) -> Result<()> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidInput(
                "products with degree-0 classes are fixed by the unit and cannot be stored".into(),
            ));
        }
        let top = self.top_degree();
        if p + q > top {
            return Err(Error::DegreeOutOfRange { degree: p + q, top });
        }
        if i >= self.group(p).generator_count() || j >= self.group(q).generator_count() {
            return Err(Error::InvalidInput(format!(
                "product ({p},{i}) x ({q},{j}) names a missing generator"
            )));
        }
        let target = self.group(p + q);
        if result.len() != target.generator_count() {
            return Err(Error::InvalidInput(format!(
                "product ({p},{i}) x ({q},{j}) has {} coefficients, H^{} has {} generators",
                result.len(),
                p + q,
                target.generator_count()
            )));
        }
        let mut result = result;
        target.reduce(&mut result);
        for order in [self.group(p).order_of_generator(i), self.group(q).order_of_generator(j)]
            .into_iter()
            .flatten()
        {
            let scaled: Vec<BigInt> = result.iter().map(|c| c * order).collect();
            if !target.is_zero_element(&scaled) {
                return Err(Error::NotWellDefined(format!(
                    "product ({p},{i}) x ({q},{j}) is not killed by the order {order} of a factor"
                )));
            }
        }
        if let Some(rev) = self.cup.get(&(q, j, p, i)) {
            let sign = koszul(p, q);
            let mut expected: Vec<BigInt> = rev.iter().map(|c| c * &sign).collect();
            target.reduce(&mut expected);
            if expected != result {
                return Err(Error::InvalidInput(format!(
                    "products ({p},{i}) x ({q},{j}) and its reverse violate graded commutativity"
                )));
            }
        }
        self.cup.insert((p, i, q, j), result);
        Ok(())
    }

    /// Overrides the `H^1(X; Z_2)` used for twist listing.
    pub fn with_h1_mod2(mut self, g: FGAbelianGroup) -> Self {
        self.h1_mod2 = Some(g);
        self
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    /// `H^p`, trivial outside `[0, top]`.
    pub fn group(&self, p: usize) -> FGAbelianGroup {
        self.degrees
            .get(p)
            .map(|d| d.group.clone())
            .unwrap_or_else(FGAbelianGroup::trivial)
    }

    pub fn degree(&self, p: usize) -> Option<&DegreeGroup> {
        self.degrees.get(p)
    }

    pub fn labels(&self, p: usize) -> &[String] {
        self.degrees.get(p).map_or(&[], |d| &d.labels)
    }

    pub fn products(&self) -> &BTreeMap<ProductKey, Vec<BigInt>> {
        &self.cup
    }

    pub fn stored_h1_mod2(&self) -> Option<&FGAbelianGroup> {
        self.h1_mod2.as_ref()
    }

    /// `H^1(X; Z_2)`: the stored override, else `H^1 ⊗ Z_2 ⊕ Tor(H^2, Z_2)`.
    pub fn h1_mod2(&self) -> FGAbelianGroup {
        if let Some(g) = &self.h1_mod2 {
            return g.clone();
        }
        let z2 = FGAbelianGroup::cyclic(2);
        tensor(&self.group(1), &z2).direct_sum(&tor(&self.group(2), &z2))
    }

    pub fn betti(&self, p: usize) -> usize {
        self.group(p).rank()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.group.is_free())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(p, d)| {
                if p % 2 == 0 {
                    d.group.rank() as i64
                } else {
                    -(d.group.rank() as i64)
                }
            })
            .sum()
    }

    /// `e_{p,i} ∪ e_{q,j}` in coordinates of `H^{p+q}`.
    pub fn basis_product(&self, (p, i): (usize, usize), (q, j): (usize, usize)) -> Result<Vec<BigInt>> {
        let top = self.top_degree();
        if p + q > top {
            return Err(Error::DegreeOutOfRange { degree: p + q, top });
        }
        let target = self.group(p + q);
        let unit_times = |k: usize| {
            let mut v = vec![BigInt::zero(); target.generator_count()];
            v[k] = BigInt::from(1);
            v
        };
        if p == 0 {
            return Ok(unit_times(j));
        }
        if q == 0 {
            return Ok(unit_times(i));
        }
        if target.is_trivial() {
            return Ok(Vec::new());
        }
        if let Some(v) = self.cup.get(&(p, i, q, j)) {
            return Ok(v.clone());
        }
        if let Some(v) = self.cup.get(&(q, j, p, i)) {
            let sign = koszul(p, q);
            let mut out: Vec<BigInt> = v.iter().map(|c| c * &sign).collect();
            target.reduce(&mut out);
            return Ok(out);
        }
        Err(Error::MissingProduct { p, i, q, j })
    }

    /// Bilinear extension of the structure constants.
    pub fn cup(&self, a: &CohClass, b: &CohClass) -> Result<CohClass> {
        let a = CohClass::new(self, a.degree, a.coeffs.clone())?;
        let b = CohClass::new(self, b.degree, b.coeffs.clone())?;
        let degree = a.degree + b.degree;
        let top = self.top_degree();
        if degree > top {
            return Err(Error::DegreeOutOfRange { degree, top });
        }
        let mut out = vec![BigInt::zero(); self.group(degree).generator_count()];
        for (i, ai) in a.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let prod = self.basis_product((a.degree, i), (b.degree, j))?;
                let k = ai * bj;
                for (o, v) in out.iter_mut().zip(&prod) {
                    *o += &k * v;
                }
            }
        }
        CohClass::new(self, degree, out)
    }

    /// `H^p -> H^{p+d}`, `x ↦ -(x ∪ delta)`. The codomain is trivial past the
    /// top degree.
    pub fn cup_with_class(&self, delta: &CohClass, p: usize) -> Result<GroupHom> {
        let domain = self.group(p);
        let q = p + delta.degree;
        let codomain = self.group(q);
        if domain.is_trivial() || codomain.is_trivial() {
            return Ok(GroupHom::zero(domain, codomain));
        }
        let mut m = IntMatrix::zeros(codomain.generator_count(), domain.generator_count());
        for i in 0..domain.generator_count() {
            let image = self.cup(&CohClass::generator(self, p, i), delta)?;
            for (r, v) in image.coeffs.into_iter().enumerate() {
                m.set(r, i, -v);
            }
        }
        GroupHom::new(domain, codomain, m)
    }

    /// Pairs of stored products that are both present and violate graded
    /// commutativity. Empty for every ring built through the public API.
    pub fn commutativity_violations(&self) -> Vec<ProductKey> {
        let mut bad = Vec::new();
        for (&(p, i, q, j), v) in &self.cup {
            if let Some(rev) = self.cup.get(&(q, j, p, i)) {
                let sign = koszul(p, q);
                let mut expected: Vec<BigInt> = rev.iter().map(|c| c * &sign).collect();
                self.group(p + q).reduce(&mut expected);
                if &expected != v {
                    bad.push((p, i, q, j));
                }
            }
        }
        bad
    }
}

/// `(-1)^{pq}`.
pub(crate) fn koszul(p: usize, q: usize) -> BigInt {
    if (p * q).is_odd() {
        BigInt::from(-1)
    } else {
        BigInt::from(1)
    }
}

/// `Z` in degrees `0` and `d`.
pub fn sphere_ring(d: usize) -> Result<CohomologyRing> {
    if d == 0 {
        return Err(Error::InvalidInput("sphere dimension must be positive".into()));
    }
    let mut degrees = vec![DegreeGroup::trivial(); d + 1];
    degrees[0] = DegreeGroup::new(FGAbelianGroup::free(1), vec!["1".into()])?;
    degrees[d] = DegreeGroup::new(FGAbelianGroup::free(1), vec![format!("s{d}")])?;
    CohomologyRing::new(degrees)
}

#[derive(Serialize, Deserialize)]
struct DegreeFile {
    rank: usize,
    #[serde(with = "int::vec", default)]
    torsion: Vec<BigInt>,
    #[serde(default)]
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CupFile {
    a: [usize; 2],
    b: [usize; 2],
    #[serde(with = "int::vec")]
    result: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RingFile {
    top_degree: usize,
    degrees: BTreeMap<usize, DegreeFile>,
    #[serde(default)]
    cup: Vec<CupFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h1_mod2: Option<FGAbelianGroup>,
}

impl TryFrom<RingFile> for CohomologyRing {
    type Error = Error;

    fn try_from(f: RingFile) -> Result<Self> {
        if let Some(&p) = f.degrees.keys().find(|&&p| p > f.top_degree) {
            return Err(Error::DegreeOutOfRange {
                degree: p,
                top: f.top_degree,
            });
        }
        let mut degrees = vec![DegreeGroup::trivial(); f.top_degree + 1];
        for (p, d) in f.degrees {
            let group = FGAbelianGroup::from_invariants(d.rank, d.torsion)?;
            degrees[p] = if d.labels.is_empty() {
                let mut auto = DegreeGroup::auto(p, group);
                if p == 0 {
                    auto.labels = vec!["1".into()];
                }
                auto
            } else {
                DegreeGroup::new(group, d.labels)?
            };
        }
        let mut ring = CohomologyRing::new(degrees)?;
        for c in f.cup {
            ring.insert_product((c.a[0], c.a[1]), (c.b[0], c.b[1]), c.result)?;
        }
        ring.h1_mod2 = f.h1_mod2;
        Ok(ring)
    }
}

impl From<CohomologyRing> for RingFile {
    fn from(r: CohomologyRing) -> Self {
        let top_degree = r.top_degree();
        let degrees = r
            .degrees
            .into_iter()
            .enumerate()
            .filter(|(_, d)| !d.group.is_trivial())
            .map(|(p, d)| {
                let file = DegreeFile {
                    rank: d.group.rank(),
                    torsion: d.group.torsion().to_vec(),
                    labels: d.labels,
                };
                (p, file)
            })
            .collect();
        let cup = r
            .cup
            .into_iter()
            .map(|((p, i, q, j), result)| CupFile {
                a: [p, i],
                b: [q, j],
                result,
            })
            .collect();
        RingFile {
            top_degree,
            degrees,
            cup,
            h1_mod2: r.h1_mod2,
        }
    }
}
