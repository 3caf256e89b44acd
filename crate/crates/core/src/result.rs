use serde::{Deserialize, Serialize};

use crate::spectral::KGroupReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Ahss,
    MayerVietoris,
    ExactTemplate,
    Kunneth,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ahss => "ahss",
            Method::MayerVietoris => "mayer_vietoris",
            Method::ExactTemplate => "exact_template",
            Method::Kunneth => "kunneth",
        }
    }
}

/// `K^0` and `K^1` of a twisted space (or `K_0`, `K_1` after
/// [`k_homology_shift`](crate::exactseq::k_homology_shift)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedKResult {
    #[serde(rename = "K0")]
    pub k0: KGroupReport,
    #[serde(rename = "K1")]
    pub k1: KGroupReport,
    pub method: Method,
    pub splitting_assumed: bool,
}

impl TwistedKResult {
    pub fn exact(&self) -> bool {
        self.k0.exact && self.k1.exact
    }
}
