//! Report documents emitted on stdout. Field order is fixed by the struct
//! definitions and no unordered containers are used, so identical inputs
//! produce byte-identical output.

use serde::{Deserialize, Serialize};

use crate::ratio::RatPair;

#[derive(Debug, Serialize, Deserialize)]
pub struct FlagReport {
    pub kind: String,
    pub root_system: String,
    /// dim G/B = number of positive roots.
    pub dimension: usize,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    /// Strict sign vector of the chamber, `+`/`-` per positive root.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chamber: Option<String>,
    /// Positive roots whose pairing with the class vanishes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vanishing_factors: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<RatPair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chambers: Option<Vec<ChamberEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleBlock>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ChamberEntry {
    pub signs: String,
    pub index: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OracleBlock {
    /// Largest multiple evaluated.
    pub m_max: u64,
    /// Degree compared.
    pub index: usize,
    /// First multiple of the tail half used by the estimate.
    pub tail_start: u64,
    pub estimate: RatPair,
    pub target: RatPair,
    pub relative_gap: RatPair,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub kind: String,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<Vec<String>>,
    /// "pseudo-effective", "anti-pseudo-effective" or "indefinite".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<RatPair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volume: Option<RatPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zariski: Option<ZariskiBlock>,
    /// Sorted support names of the Zariski chamber (big classes only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chamber: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chambers: Option<Vec<SupportEntry>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ZariskiBlock {
    /// Which class was decomposed: "class" or "negated-class".
    pub decomposition_of: String,
    pub p: Vec<String>,
    pub n: Vec<String>,
    pub support: Vec<String>,
    pub coefficients: Vec<RatPair>,
    pub certificates: CertificateBlock,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CertificateBlock {
    pub p_dot_n_zero: bool,
    pub p_nef: bool,
    pub support_negative_definite: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SupportEntry {
    pub support: Vec<String>,
    pub witness: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AbelianReport {
    pub kind: String,
    pub g: usize,
    pub rank: usize,
    pub class: Vec<String>,
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub pfaffian: RatPair,
    pub h: Vec<RatPair>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub kind: String,
    pub model: String,
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub pass: bool,
    pub results: Vec<SuiteResult>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checked: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failures: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    /// Walls: largest |one-sided limit - wall value| observed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_discrepancy: Option<RatPair>,
    /// Lipschitz: empirical constant of the primary sample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lipschitz_constant: Option<RatPair>,
    /// Lipschitz: empirical constant of the disjoint control sample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub control_constant: Option<RatPair>,
    /// Telescoping: calibrated per-direction constants.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction_constants: Option<Vec<RatPair>>,
    /// Telescoping: `(max C_i) r n n!`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion_constant: Option<RatPair>,
    /// Euler: classes per case branch (pseff, anti-pseff, indefinite).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branches: Option<[usize; 3]>,
}

impl SuiteResult {
    pub fn named(suite: &str, pass: bool) -> Self {
        SuiteResult {
            suite: suite.to_string(),
            pass,
            checked: None,
            failures: None,
            first_failure: None,
            max_discrepancy: None,
            lipschitz_constant: None,
            control_constant: None,
            direction_constants: None,
            conclusion_constant: None,
            branches: None,
        }
    }
}
