use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_bigint::BigInt;
use twistk::catalog::{build, k_theory, Computation, FourManifoldData, MethodChoice, SpaceSpec, Twist};
use twistk::{CohomologyRing, Error, KGroupReport, Result, SpectralPage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceKind {
    Sphere,
    Product,
    Rp,
    Lens,
    Su,
    Su2bundle,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum MethodArg {
    #[default]
    Auto,
    Ahss,
    Mv,
    Template,
    Kunneth,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Ahss => MethodChoice::Ahss,
            MethodArg::Mv => MethodChoice::MayerVietoris,
            MethodArg::Template => MethodChoice::Template,
            MethodArg::Kunneth => MethodChoice::Kunneth,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub space: SpaceKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    /// Twist multiplier: `δ = N` times the generator.
    #[arg(long = "N", allow_hyphen_values = true)]
    pub big_n: Option<BigInt>,
    /// Twist degree; defaults to the space's standard twist degree.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Euler number of an SU(2)-bundle.
    #[arg(long, allow_hyphen_values = true)]
    pub euler: Option<BigInt>,
    /// First coefficient of a degree-5 SU(2)-bundle twist `δ = (L, N)`.
    #[arg(long = "L", allow_hyphen_values = true)]
    pub big_l: Option<BigInt>,
    /// Full coefficient vector of the twist, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub class: Option<Vec<BigInt>>,
    /// FourManifoldData JSON for the SU(2)-bundle base (default S^2 x S^2).
    #[arg(long)]
    pub base: Option<PathBuf>,
    /// Cohomology ring JSON for a custom space.
    #[arg(long)]
    pub ring: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Print every spectral page and differential matrix.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, value_enum, default_value_t)]
    pub method: MethodArg,
}

fn need<T: Copy>(v: Option<T>, flag: &str, space: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidInput(format!("--space {space} needs {flag}")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

impl ComputeArgs {
    pub fn space_spec(&self) -> Result<SpaceSpec> {
        Ok(match self.space {
            SpaceKind::Sphere => SpaceSpec::Sphere {
                n: need(self.n, "--n", "sphere")?,
            },
            SpaceKind::Product => SpaceSpec::ProductSpheres {
                m: need(self.m, "--m", "product")?,
                n: need(self.n, "--n", "product")?,
            },
            SpaceKind::Rp => SpaceSpec::RealProjective {
                n: need(self.n, "--n", "rp")?,
            },
            SpaceKind::Lens => SpaceSpec::Lens {
                n: need(self.n, "--n", "lens")?,
                p: need(self.p, "--p", "lens")?,
            },
            SpaceKind::Su => SpaceSpec::SpecialUnitary {
                n: need(self.n, "--n", "su")?,
            },
            SpaceKind::Su2bundle => SpaceSpec::SU2Bundle {
                base: match &self.base {
                    Some(path) => read_json::<FourManifoldData>(path)?,
                    None => FourManifoldData::s2_times_s2(),
                },
                euler: self.euler.clone().unwrap_or_default(),
            },
            SpaceKind::Custom => {
                let path = self
                    .ring
                    .as_ref()
                    .ok_or_else(|| Error::InvalidInput("--space custom needs --ring <file>".into()))?;
                SpaceSpec::Custom {
                    ring: read_json::<CohomologyRing>(path)?,
                }
            }
        })
    }

    pub fn twist(&self, spec: &SpaceSpec) -> Result<Twist> {
        let degree = match self.degree {
            Some(d) => d,
            None => build(spec)?
                .default_twist_degree()
                .ok_or_else(|| Error::InvalidInput(format!("{spec} has no default twist degree; pass --degree")))?,
        };
        if let Some(c) = &self.class {
            return Ok(Twist::coefficients(degree, c.clone()));
        }
        if let Some(l) = &self.big_l {
            let n = self.big_n.clone().unwrap_or_default();
            return Ok(Twist::coefficients(degree, vec![l.clone(), n]));
        }
        let n = self
            .big_n
            .clone()
            .ok_or_else(|| Error::InvalidInput("give the twist with --N, --L/--N or --class".into()))?;
        Ok(Twist::multiple(degree, n))
    }

    pub fn run(&self) -> Result<Computation> {
        let spec = self.space_spec()?;
        let twist = self.twist(&spec)?;
        let mut c = k_theory(&spec, &twist, self.method.into())?;
        if !self.trace {
            c.pages.clear();
        }
        Ok(c)
    }
}

fn describe(k: &KGroupReport) -> String {
    let mut s = format!("K^{} = {}", k.parity, k.assembled);
    if !k.exact {
        s.push_str("  (up to extension)");
    }
    let pieces: Vec<String> = k
        .graded_pieces
        .iter()
        .map(|p| match p.degree {
            Some(d) => format!("{}@{d}", p.group),
            None => p.group.to_string(),
        })
        .collect();
    if pieces.len() > 1 {
        let _ = write!(s, "\n      pieces: {}", pieces.join(", "));
    }
    if !k.assembled.is_free() || !k.graded_pieces.iter().all(|p| p.group.is_free()) {
        let _ = write!(
            s,
            "\n      torsion order {}{}, exponent in [{}, {}]",
            k.torsion_order,
            if k.torsion_order_exact { "" } else { " (upper bound)" },
            k.exponent_lower,
            k.exponent_upper
        );
    }
    s
}

fn trace(pages: &[SpectralPage]) -> String {
    let mut s = String::new();
    for page in pages {
        let entries: Vec<String> = page
            .entries
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_trivial())
            .map(|(p, g)| format!("{p}: {g}"))
            .collect();
        let _ = writeln!(s, "E_{}  {}", page.page_index, entries.join(", "));
        for d in &page.applied {
            let _ = writeln!(s, "  d_{} : E^{} -> E^{}", d.length, d.source, d.source + d.length);
            for line in d.map.matrix().to_string().lines() {
                let _ = writeln!(s, "    {line}");
            }
        }
    }
    s
}

pub fn render(c: &Computation, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string(c)?),
        Format::Text => {
            let r = &c.result;
            let mut s = String::new();
            let _ = writeln!(s, "space   {}", c.space);
            let class: Vec<String> = c.twist.class.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "twist   degree {}, class [{}]", c.twist.degree, class.join(", "));
            let _ = write!(s, "method  {}", r.method.as_str());
            if let Some(m) = c.cross_checked_by {
                let _ = write!(s, " (cross-checked by {})", m.as_str());
            }
            s.push('\n');
            if r.splitting_assumed {
                s.push_str("note    groups of the space assume a split Gysin sequence\n");
            }
            let _ = writeln!(s, "{}", describe(&r.k0));
            let _ = writeln!(s, "{}", describe(&r.k1));
            s.push_str(&trace(&c.pages));
            Ok(s.trim_end().to_string())
        }
    }
}
