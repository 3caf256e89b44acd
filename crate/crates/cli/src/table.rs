//! The regression table: closed-form K-groups for each space family, compared
//! against the engine over a parameter grid.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use twistk::catalog::{k_theory, Computation, FourManifoldData, MethodChoice, SpaceSpec, Twist};
use twistk::{Error, FGAbelianGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Sphere,
    /// `S^{2m} x S^{2n+1}` twisted in degree `2n+1`.
    Product,
    /// `S^{2m} x S^{2n+1}` twisted in the top degree.
    ProductTop,
    Rp,
    Lens,
    Su2Bundle,
}

impl Family {
    /// The regression families; `Su2Bundle` is opt-in.
    pub const DEFAULT: [Family; 5] = [
        Family::Sphere,
        Family::Product,
        Family::ProductTop,
        Family::Rp,
        Family::Lens,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Sphere => "sphere",
            Family::Product => "product",
            Family::ProductTop => "product-top",
            Family::Rp => "rp",
            Family::Lens => "lens",
            Family::Su2Bundle => "su2bundle",
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            Family::Sphere,
            Family::Product,
            Family::ProductTop,
            Family::Rp,
            Family::Lens,
            Family::Su2Bundle,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| format!("unknown row family {s:?}"))
    }
}

/// Parameter ranges, all inclusive from 1.
#[derive(Debug, Clone)]
pub struct Grid {
    pub n_max: usize,
    pub m_max: usize,
    pub primes: Vec<usize>,
    pub twist_max: i64,
    /// `L, N ∈ [1, bundle_twist_max]` and `j ∈ [0, euler_max]` for bundle rows.
    pub bundle_twist_max: i64,
    pub euler_max: i64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            n_max: 3,
            m_max: 3,
            primes: vec![2, 3, 5],
            twist_max: 12,
            bundle_twist_max: 8,
            euler_max: 5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Row {
    pub family: Family,
    pub label: String,
    pub spec: SpaceSpec,
    pub twist: Twist,
    pub k0: FGAbelianGroup,
    pub k1: FGAbelianGroup,
    /// Whether the closed form is a group (true) or only a candidate built
    /// from graded pieces.
    pub exact: bool,
}

fn z(n: impl Into<BigInt>) -> FGAbelianGroup {
    FGAbelianGroup::cyclic(n)
}

fn sum(groups: &[FGAbelianGroup]) -> FGAbelianGroup {
    FGAbelianGroup::sum_of(groups)
}

fn pow(base: usize, e: usize) -> BigInt {
    BigInt::from(base).pow(e as u32)
}

/// Expected rows of `family` over `grid`, in a fixed order.
pub fn rows(family: Family, grid: &Grid) -> Vec<Row> {
    let mut out = Vec::new();
    let twists = 1..=grid.twist_max;
    match family {
        Family::Sphere => {
            for n in 1..=grid.n_max {
                for t in twists.clone() {
                    out.push(Row {
                        family,
                        label: format!("S^{} N={t}", 2 * n + 1),
                        spec: SpaceSpec::Sphere { n },
                        twist: Twist::multiple(2 * n + 1, t),
                        k0: FGAbelianGroup::trivial(),
                        k1: z(t),
                        exact: true,
                    });
                }
            }
        }
        Family::Product | Family::ProductTop => {
            for m in 1..=grid.m_max {
                for n in 1..=grid.n_max {
                    for t in twists.clone() {
                        let spec = SpaceSpec::ProductSpheres { m, n };
                        let row = if family == Family::Product {
                            Row {
                                family,
                                label: format!("S^{} x S^{} deg {} N={t}", 2 * m, 2 * n + 1, 2 * n + 1),
                                spec,
                                twist: Twist::multiple(2 * n + 1, t),
                                k0: FGAbelianGroup::trivial(),
                                k1: sum(&[z(t), z(t)]),
                                exact: true,
                            }
                        } else {
                            let d = 2 * m + 2 * n + 1;
                            Row {
                                family,
                                label: format!("S^{} x S^{} deg {d} N={t}", 2 * m, 2 * n + 1),
                                spec,
                                twist: Twist::multiple(d, t),
                                k0: z(0),
                                k1: sum(&[z(0), z(t)]),
                                exact: true,
                            }
                        };
                        out.push(row);
                    }
                }
            }
        }
        Family::Rp => {
            for n in 1..=grid.n_max {
                for t in twists.clone() {
                    out.push(Row {
                        family,
                        label: format!("RP^{} N={t}", 2 * n + 1),
                        spec: SpaceSpec::RealProjective { n },
                        twist: Twist::multiple(2 * n + 1, t),
                        k0: z(pow(2, n)),
                        k1: z(t),
                        exact: true,
                    });
                }
            }
        }
        Family::Lens => {
            for n in 1..=grid.n_max {
                for &p in &grid.primes {
                    for t in twists.clone() {
                        out.push(Row {
                            family,
                            label: format!("L({n},{p}) N={t}"),
                            spec: SpaceSpec::Lens { n, p },
                            twist: Twist::multiple(2 * n + 1, t),
                            k0: z(pow(p, n)),
                            k1: z(t),
                            exact: true,
                        });
                    }
                }
            }
        }
        Family::Su2Bundle => {
            let range = 1..=grid.bundle_twist_max;
            for j in 0..=grid.euler_max {
                for l in range.clone() {
                    for t in range.clone() {
                        let k = l.gcd(&t);
                        let (k0, k1) = if j == 0 {
                            (z(0).power(2), sum(&[z(0), z(l), z(t), z(k)]))
                        } else {
                            (sum(&[z(0), z(j)]), sum(&[z(l), z(t), z(k)]))
                        };
                        out.push(Row {
                            family,
                            label: format!("S^2xS^2 bundle j={j} (L,N)=({l},{t})"),
                            spec: SpaceSpec::SU2Bundle {
                                base: FourManifoldData::s2_times_s2(),
                                euler: BigInt::from(j),
                            },
                            twist: Twist::coefficients(5, vec![BigInt::from(l), BigInt::from(t)]),
                            k0,
                            k1,
                            exact: false,
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub row: Row,
    pub got: Result<Computation, String>,
}

impl Outcome {
    pub fn k0_matches(&self) -> bool {
        self.got
            .as_ref()
            .is_ok_and(|c| c.result.k0.assembled == self.row.k0 && (!self.row.exact || c.result.k0.exact))
    }

    pub fn k1_matches(&self) -> bool {
        self.got
            .as_ref()
            .is_ok_and(|c| c.result.k1.assembled == self.row.k1 && (!self.row.exact || c.result.k1.exact))
    }

    pub fn passed(&self) -> bool {
        self.k0_matches() && self.k1_matches()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok  " } else { "DIFF" };
        write!(
            f,
            "{status} {:<36} expected ({}, {})",
            self.row.label, self.row.k0, self.row.k1
        )?;
        match &self.got {
            Ok(c) if !self.passed() => {
                let mark = |exact: bool| if exact { "" } else { "?" };
                write!(
                    f,
                    "\n     got ({}{}, {}{}) via {}",
                    c.result.k0.assembled,
                    mark(c.result.k0.exact),
                    c.result.k1.assembled,
                    mark(c.result.k1.exact),
                    c.result.method.as_str()
                )
            }
            Ok(_) => Ok(()),
            Err(e) => write!(f, "\n     error: {e}"),
        }
    }
}

/// Evaluates rows in parallel; outcomes keep the input order.
pub fn evaluate(rows: Vec<Row>, method: MethodChoice) -> Vec<Outcome> {
    rows.into_par_iter()
        .map(|row| {
            let got = k_theory(&row.spec, &row.twist, method).map_err(|e: Error| e.to_string());
            Outcome { row, got }
        })
        .collect()
}
