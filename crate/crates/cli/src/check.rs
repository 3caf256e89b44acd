//! Cross-method and property suites.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use twistk::abgroup::{smith_normal_form, IntMatrix};
use twistk::catalog::{build, cross_check, k_theory, Computation, FourManifoldData, MethodChoice, SpaceSpec, Twist};
use twistk::exactseq::{
    four_term_identity_holds, k_homology_shift, mayer_vietoris_sphere, rp_connecting_map, sequence_lens, sequence_rp,
    sphere_pushforward,
};
use twistk::{Error, FGAbelianGroup, TwistedKResult};

pub const SUITES: [&str; 8] = [
    "mv-vs-ahss",
    "kunneth-vs-ahss",
    "ahss-invariants",
    "untwisted-sums",
    "shift-involution",
    "four-term",
    "twist-admissibility",
    "snf-fuzz",
];

#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub n_max: usize,
    pub m_max: usize,
    pub twist_max: i64,
    pub fuzz: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            n_max: 3,
            m_max: 3,
            twist_max: 12,
            fuzz: 200,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(name: &str, cfg: &CheckConfig) -> Option<SuiteReport> {
    let name = *SUITES.iter().find(|s| **s == name)?;
    let (cases, failures) = match name {
        "mv-vs-ahss" => mv_vs_ahss(cfg),
        "kunneth-vs-ahss" => kunneth_vs_ahss(cfg),
        "ahss-invariants" => ahss_invariants(cfg),
        "untwisted-sums" => untwisted_sums(),
        "shift-involution" => shift_involution(cfg),
        "four-term" => four_term(cfg),
        "twist-admissibility" => twist_admissibility(),
        "snf-fuzz" => snf_fuzz(cfg.fuzz, cfg.seed),
        _ => unreachable!("suite list is closed"),
    };
    Some(SuiteReport { name, cases, failures })
}

type Tally = (usize, Vec<String>);

/// Runs `f` over `cases` in parallel, collecting failures in case order.
fn tally<T: Sync>(cases: &[T], f: impl Fn(&T) -> Result<(), String> + Sync) -> Tally {
    let failures = cases.par_iter().filter_map(|c| f(c).err()).collect();
    (cases.len(), failures)
}

fn forced(spec: &SpaceSpec, twist: &Twist, method: MethodChoice) -> Result<Computation, String> {
    k_theory(spec, twist, method).map_err(|e| format!("{spec}, degree {}: {e}", twist.degree))
}

fn mv_vs_ahss(cfg: &CheckConfig) -> Tally {
    let cases: Vec<(usize, i64)> = (1..=cfg.n_max)
        .flat_map(|n| (0..=cfg.twist_max).map(move |t| (n, t)))
        .collect();
    tally(&cases, |&(n, t)| {
        let spec = SpaceSpec::Sphere { n };
        let twist = Twist::multiple(2 * n + 1, t);
        let mv = forced(&spec, &twist, MethodChoice::MayerVietoris)?;
        let ahss = forced(&spec, &twist, MethodChoice::Ahss)?;
        cross_check(&mv.result, &ahss.result).map_err(|e| format!("{spec} N={t}: {e}"))
    })
}

fn kunneth_vs_ahss(cfg: &CheckConfig) -> Tally {
    let mut cases = Vec::new();
    for m in 1..=cfg.m_max {
        for n in 1..=cfg.n_max {
            for t in 0..=cfg.twist_max {
                cases.push((m, n, t));
            }
        }
    }
    tally(&cases, |&(m, n, t)| {
        let spec = SpaceSpec::ProductSpheres { m, n };
        let twist = Twist::multiple(2 * n + 1, t);
        let k = forced(&spec, &twist, MethodChoice::Kunneth)?;
        let ahss = forced(&spec, &twist, MethodChoice::Ahss)?;
        cross_check(&k.result, &ahss.result).map_err(|e| format!("{spec} N={t}: {e}"))
    })
}

/// Every AHSS run in the grid.
pub fn ahss_grid(cfg: &CheckConfig) -> Vec<(SpaceSpec, Twist)> {
    let mut out = Vec::new();
    for n in 1..=cfg.n_max {
        for t in 0..=cfg.twist_max {
            out.push((SpaceSpec::Sphere { n }, Twist::multiple(2 * n + 1, t)));
            for m in 1..=cfg.m_max {
                out.push((SpaceSpec::ProductSpheres { m, n }, Twist::multiple(2 * n + 1, t)));
                out.push((
                    SpaceSpec::ProductSpheres { m, n },
                    Twist::multiple(2 * m + 2 * n + 1, t),
                ));
            }
            out.push((SpaceSpec::RealProjective { n }, Twist::multiple(2 * n + 1, t)));
            out.push((SpaceSpec::Lens { n, p: 3 }, Twist::multiple(2 * n + 1, t)));
        }
    }
    for n in 2..=6usize {
        for t in 0..=10 {
            out.push((SpaceSpec::SpecialUnitary { n }, Twist::multiple(2 * n - 1, t)));
        }
    }
    for j in 0..=3 {
        for (l, t) in [(1, 1), (2, 4), (3, 5), (6, 4)] {
            out.push((
                SpaceSpec::SU2Bundle {
                    base: FourManifoldData::s2_times_s2(),
                    euler: BigInt::from(j),
                },
                Twist::coefficients(5, vec![BigInt::from(l), BigInt::from(t)]),
            ));
        }
    }
    out
}

/// Euler characteristic is constant across pages, consecutive recorded
/// differentials compose to zero, and both reports are internally consistent.
pub fn ahss_run_is_sound(c: &Computation) -> Result<(), String> {
    let chi = c.pages.first().map(|p| p.euler_characteristic());
    for page in &c.pages {
        if Some(page.euler_characteristic()) != chi {
            return Err(format!("{}: χ changed on E_{}", c.space, page.page_index));
        }
        for f in &page.applied {
            let target = f.source + f.length;
            if let Some(g) = page.applied.iter().find(|g| g.source == target) {
                let composite = f.map.then(&g.map).map_err(|e| e.to_string())?;
                if !composite.is_zero() {
                    return Err(format!("{}: d∘d ≠ 0 from E^{}", c.space, f.source));
                }
            }
        }
    }
    let rank = |parity: usize| -> i64 {
        c.pages
            .last()
            .map(|p| {
                p.entries
                    .iter()
                    .enumerate()
                    .filter(|(d, _)| d % 2 == parity)
                    .map(|(_, g)| g.rank() as i64)
                    .sum()
            })
            .unwrap_or(0)
    };
    if let Some(chi) = chi {
        let got = c.result.k0.rank() as i64 - c.result.k1.rank() as i64;
        if got != chi || rank(0) - rank(1) != chi {
            return Err(format!("{}: rank K^0 - rank K^1 = {got}, χ = {chi}", c.space));
        }
    }
    c.result.k0.check().map_err(|e| e.to_string())?;
    c.result.k1.check().map_err(|e| e.to_string())
}

fn ahss_invariants(cfg: &CheckConfig) -> Tally {
    tally(&ahss_grid(cfg), |(spec, twist)| {
        let c = forced(spec, twist, MethodChoice::Ahss)?;
        if c.pages.is_empty() {
            return Err(format!("{spec}: AHSS run recorded no pages"));
        }
        ahss_run_is_sound(&c)
    })
}

/// Torsion-free catalog spaces with `δ = 0` give the even and odd sums of
/// their cohomology.
fn untwisted_sums() -> Tally {
    let mut cases: Vec<(SpaceSpec, usize)> = Vec::new();
    for n in 1..=3 {
        cases.push((SpaceSpec::Sphere { n }, 2 * n + 1));
        for m in 1..=3 {
            cases.push((SpaceSpec::ProductSpheres { m, n }, 2 * n + 1));
        }
    }
    for n in 2..=6usize {
        cases.push((SpaceSpec::SpecialUnitary { n }, 2 * n - 1));
    }
    for j in [0, 1, -1] {
        let spec = SpaceSpec::SU2Bundle {
            base: FourManifoldData::s2_times_s2(),
            euler: BigInt::from(j),
        };
        cases.push((spec, 7));
    }
    tally(&cases, |(spec, d)| {
        let ring = build(spec).map_err(|e| e.to_string())?.ring;
        if !ring.is_torsion_free() {
            return Ok(());
        }
        let sum = |parity: usize| -> usize {
            (0..=ring.top_degree())
                .filter(|p| p % 2 == parity)
                .map(|p| ring.betti(p))
                .sum()
        };
        let c = forced(spec, &Twist::multiple(*d, 0), MethodChoice::Ahss)?;
        let (k0, k1) = (&c.result.k0, &c.result.k1);
        if k0.assembled != FGAbelianGroup::free(sum(0))
            || k1.assembled != FGAbelianGroup::free(sum(1))
            || !c.result.exact()
        {
            return Err(format!("{spec}: untwisted gives ({}, {})", k0.assembled, k1.assembled));
        }
        Ok(())
    })
}

fn shift_involution(cfg: &CheckConfig) -> Tally {
    let mut cases: Vec<(String, TwistedKResult)> = Vec::new();
    for n in 1..=cfg.n_max {
        for t in 1..=cfg.twist_max {
            let t = BigInt::from(t);
            let ok = |r: Result<TwistedKResult, Error>| r.expect("templates accept nonzero twists");
            cases.push((format!("S^{} N={t}", 2 * n + 1), ok(mayer_vietoris_sphere(n, &t))));
            cases.push((format!("RP^{} N={t}", 2 * n + 1), ok(sequence_rp(n, &t))));
            cases.push((format!("L({n},3) N={t}"), ok(sequence_lens(n, 3, &t))));
        }
    }
    tally(&cases, |(label, r)| {
        let once = k_homology_shift(r).map_err(|e| format!("{label}: {e}"))?;
        let twice = k_homology_shift(&once).map_err(|e| format!("{label}: {e}"))?;
        if twice.k0.assembled != r.k0.assembled || twice.k1.assembled != r.k1.assembled {
            return Err(format!("{label}: shift is not an involution"));
        }
        if once.k0.assembled != r.k1.assembled.torsion_subgroup()
            || once.k1.assembled != r.k0.assembled.torsion_subgroup()
        {
            return Err(format!("{label}: shift does not swap the finite groups"));
        }
        Ok(())
    })
}

fn four_term(cfg: &CheckConfig) -> Tally {
    let mut cases = Vec::new();
    for n in 1..=cfg.n_max {
        for t in 0..=cfg.twist_max {
            cases.push((n, BigInt::from(t)));
        }
    }
    tally(&cases, |(n, t)| {
        let mv = mayer_vietoris_sphere(*n, t).map_err(|e| e.to_string())?;
        if !four_term_identity_holds(&sphere_pushforward(t), &mv) {
            return Err(format!("S^{} N={t}: four-term identity fails", 2 * n + 1));
        }
        if t.is_zero() {
            return Ok(());
        }
        let rp = sequence_rp(*n, t).map_err(|e| e.to_string())?;
        let f = rp_connecting_map(*n, t).map_err(|e| e.to_string())?;
        if !four_term_identity_holds(&f, &rp) {
            return Err(format!("RP^{} N={t}: four-term identity fails", 2 * n + 1));
        }
        Ok(())
    })
}

/// `k_theory` accepts exactly the listed integral degrees.
fn twist_admissibility() -> Tally {
    let specs = vec![
        SpaceSpec::Sphere { n: 2 },
        SpaceSpec::ProductSpheres { m: 1, n: 2 },
        SpaceSpec::RealProjective { n: 2 },
        SpaceSpec::Lens { n: 1, p: 4 },
        SpaceSpec::SpecialUnitary { n: 4 },
        SpaceSpec::SU2Bundle {
            base: FourManifoldData::s2_times_s2(),
            euler: BigInt::from(2),
        },
    ];
    tally(&specs, |spec| {
        let space = build(spec).map_err(|e| e.to_string())?;
        let listed = space.list_twists();
        for d in 0..=space.ring.top_degree() + 2 {
            let integral = d >= 3 && listed.iter().any(|(p, _)| *p == d);
            let class = vec![BigInt::from(1); space.ring.group(d).generator_count()];
            let outcome = k_theory(spec, &Twist::coefficients(d, class), MethodChoice::Ahss);
            match outcome {
                Err(Error::InadmissibleTwist(_)) if !integral => {}
                Err(Error::InadmissibleTwist(e)) => return Err(format!("{spec}: listed degree {d} rejected: {e}")),
                _ if !integral => return Err(format!("{spec}: unlisted degree {d} accepted")),
                _ => {}
            }
        }
        Ok(())
    })
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    let bound: i64 = if rng.gen_bool(0.2) { 1_000_000 } else { 20 };
    let density = rng.gen_range(0.3..=1.0);
    let entries = (0..rows * cols)
        .map(|_| {
            if rng.gen_bool(density) {
                BigInt::from(rng.gen_range(-bound..=bound))
            } else {
                BigInt::zero()
            }
        })
        .collect();
    IntMatrix::from_entries(rows, cols, entries).expect("sizes agree")
}

/// `D = U A V`, `U` and `V` invertible over `Z`, `D` diagonal with a
/// nonnegative divisibility chain.
pub fn snf_is_sound(a: &IntMatrix) -> Result<(), String> {
    let s = smith_normal_form(a);
    let mul = |x: &IntMatrix, y: &IntMatrix| x.checked_mul(y).map_err(|e| e.to_string());
    if mul(&mul(&s.u, a)?, &s.v)? != s.d {
        return Err(format!("U·A·V ≠ D for\n{a}"));
    }
    if mul(&s.u, &s.u_inv)? != IntMatrix::identity(a.rows()) || mul(&s.v, &s.v_inv)? != IntMatrix::identity(a.cols()) {
        return Err(format!("U or V is not unimodular for\n{a}"));
    }
    if !s.d.is_diagonal() {
        return Err(format!("D is not diagonal for\n{a}"));
    }
    let diag = s.d.diagonal_entries();
    if diag.iter().any(|x| x.is_negative()) {
        return Err(format!("negative invariant factor for\n{a}"));
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        };
        if !ok {
            return Err(format!(
                "invariant factors {} and {} break the divisibility chain for\n{a}",
                w[0], w[1]
            ));
        }
    }
    Ok(())
}

pub fn snf_fuzz(count: usize, seed: u64) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<IntMatrix> = (0..count).map(|_| random_matrix(&mut rng)).collect();
    tally(&cases, snf_is_sound)
}
