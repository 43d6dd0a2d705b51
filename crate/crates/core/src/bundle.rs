//! Self-describing exports of computed series: a JSON schema that round-trips
//! exactly, and a text layout with one block per degree.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::{parse_rational, rational_to_string, RationalFunction};
use crate::dend::{omega_q_dend_explicit, omega_q_dend_recursive};
use crate::omega::{
    extract_carlitz, extract_qlog, omega_classical, omega_infinity, omega_q, omega_q_via_forks, specialize,
    InfinityMode, OmegaError, Point,
};
use crate::series::{PreLieBasis, Series};
use crate::tree::RootedTree;

/// Version of the JSON layout below.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("unknown series kind {0:?}")]
    UnknownKind(String),
    #[error("mode {mode:?} is not available for {kind}")]
    UnknownMode { kind: SeriesKind, mode: String },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error(transparent)]
    Omega(#[from] OmegaError),
    #[error("malformed bundle: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesKind {
    #[serde(rename = "omega")]
    Omega,
    #[serde(rename = "omega-q")]
    OmegaQ,
    #[serde(rename = "omega-0")]
    OmegaZero,
    #[serde(rename = "omega-inf")]
    OmegaInfinity,
    #[serde(rename = "qlog")]
    QLog,
    #[serde(rename = "carlitz")]
    Carlitz,
    #[serde(rename = "dend-omega-q")]
    DendOmegaQ,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 7] = [
        SeriesKind::Omega,
        SeriesKind::OmegaQ,
        SeriesKind::OmegaZero,
        SeriesKind::OmegaInfinity,
        SeriesKind::QLog,
        SeriesKind::Carlitz,
        SeriesKind::DendOmegaQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Omega => "omega",
            SeriesKind::OmegaQ => "omega-q",
            SeriesKind::OmegaZero => "omega-0",
            SeriesKind::OmegaInfinity => "omega-inf",
            SeriesKind::QLog => "qlog",
            SeriesKind::Carlitz => "carlitz",
            SeriesKind::DendOmegaQ => "dend-omega-q",
        }
    }

    /// Accepted computation modes; the first one is the default.
    pub fn modes(self) -> &'static [&'static str] {
        match self {
            SeriesKind::Omega => &["recursion"],
            SeriesKind::OmegaQ => &["recursion", "forks"],
            SeriesKind::OmegaZero => &["specialize"],
            SeriesKind::OmegaInfinity => &["limit", "closed-form"],
            SeriesKind::QLog | SeriesKind::Carlitz => &["extract"],
            SeriesKind::DendOmegaQ => &["recursive", "explicit"],
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesKind {
    type Err = BundleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| BundleError::UnknownKind(s.to_string()))
    }
}

/// A coefficient in Q (written `"p/q"`) or in Q(q) (`{"num": …, "den": …}`).
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Rational(BigRational),
    Function(RationalFunction),
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(r) => RationalFunction::from_rational(r.clone()).fmt(f),
            Coefficient::Function(g) => g.fmt(f),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoefficientJson {
    Rational(String),
    Function(RationalFunction),
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Coefficient::Rational(r) => CoefficientJson::Rational(rational_to_string(r)),
            Coefficient::Function(f) => CoefficientJson::Function(f.clone()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(match CoefficientJson::deserialize(deserializer)? {
            CoefficientJson::Rational(s) => Coefficient::Rational(parse_rational(&s).map_err(D::Error::custom)?),
            CoefficientJson::Function(f) => Coefficient::Function(f),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub degree: usize,
    /// Tree encoding, or `x^n` / `beta_n` for the scalar sequences.
    pub basis: String,
    pub coeff: Coefficient,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub schema: u32,
    pub mode: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesBundle {
    pub kind: SeriesKind,
    pub order: usize,
    pub terms: Vec<Term>,
    pub meta: Meta,
}

fn series_terms<B: PreLieBasis>(s: &Series<B, BigRational>) -> Vec<Term> {
    s.sorted_terms()
        .into_iter()
        .map(|(b, c)| Term { degree: b.degree(), basis: b.to_string(), coeff: Coefficient::Rational(c.clone()) })
        .collect()
}

fn q_series_terms<B: PreLieBasis>(s: &Series<B, RationalFunction>) -> Vec<Term> {
    s.sorted_terms()
        .into_iter()
        .map(|(b, c)| Term { degree: b.degree(), basis: b.to_string(), coeff: Coefficient::Function(c.clone()) })
        .collect()
}

fn sequence_terms(values: Vec<RationalFunction>, first: usize, label: &str) -> Vec<Term> {
    values
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| Term { degree: first + i, basis: format!("{label}{}", first + i), coeff: Coefficient::Function(c) })
        .collect()
}

impl SeriesBundle {
    /// Computes `kind` to `order`; `mode` defaults to the first listed mode.
    pub fn compute(kind: SeriesKind, order: usize, mode: Option<&str>) -> Result<Self, BundleError> {
        if order == 0 {
            return Err(BundleError::ZeroOrder);
        }
        let mode = mode.unwrap_or(kind.modes()[0]);
        if !kind.modes().contains(&mode) {
            return Err(BundleError::UnknownMode { kind, mode: mode.to_string() });
        }
        let start = Instant::now();
        let terms = match (kind, mode) {
            (SeriesKind::Omega, _) => series_terms(&omega_classical::<RootedTree>(order)),
            (SeriesKind::OmegaQ, "forks") => q_series_terms(&omega_q_via_forks(order)),
            (SeriesKind::OmegaQ, _) => q_series_terms(&omega_q::<RootedTree>(order)),
            (SeriesKind::OmegaZero, _) => series_terms(&specialize(&omega_q::<RootedTree>(order), Point::Zero)?),
            (SeriesKind::OmegaInfinity, "closed-form") => series_terms(&omega_infinity(order, InfinityMode::ClosedForm)?),
            (SeriesKind::OmegaInfinity, _) => series_terms(&omega_infinity(order, InfinityMode::Limit)?),
            (SeriesKind::QLog, _) => sequence_terms(extract_qlog(&omega_q(order)), 1, "x^"),
            (SeriesKind::Carlitz, _) => sequence_terms(extract_carlitz(&omega_q(order)), 0, "beta_"),
            (SeriesKind::DendOmegaQ, "explicit") => q_series_terms(omega_q_dend_explicit(order).body()),
            (SeriesKind::DendOmegaQ, _) => q_series_terms(omega_q_dend_recursive(order).body()),
        };
        Ok(Self {
            kind,
            order,
            terms,
            meta: Meta {
                version: env!("CARGO_PKG_VERSION").to_string(),
                schema: SCHEMA_VERSION,
                mode: mode.to_string(),
                elapsed_ms: start.elapsed().as_millis() as u64,
            },
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundles always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, BundleError> {
        Ok(serde_json::from_str(s)?)
    }

    /// One block per degree; coefficients with cyclotomic-factored
    /// denominators when they factor completely.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} to order {} ({})", self.kind, self.order, self.meta.mode);
        let mut current = None;
        for t in &self.terms {
            if current != Some(t.degree) {
                current = Some(t.degree);
                let _ = writeln!(out, "\ndegree {}", t.degree);
            }
            let _ = writeln!(out, "  {:<12} {}", t.basis, t.coeff);
        }
        out
    }
}
