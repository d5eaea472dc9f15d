//! Serializable reports for the CLI and the verification suites.

use serde::Serialize;

use crate::lyndon::LyndonWord;
use crate::rational::fmt_rat;
use crate::series::LieSeries;

/// JSON form of a Lie series: terms sorted by (degree, word).
#[derive(Debug, Clone, Serialize)]
pub struct SeriesJson {
    pub alphabet: Vec<String>,
    pub max_degree: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermJson {
    pub word: String,
    pub coeff: String,
}

pub fn series_to_json(series: &LieSeries) -> SeriesJson {
    let mut terms: Vec<(&LyndonWord, String)> = series
        .terms()
        .map(|(w, c)| (w, fmt_rat(c)))
        .collect();
    terms.sort_by_key(|(w, _)| (w.degree(), (*w).clone()));
    SeriesJson {
        alphabet: series.alphabet().names().to_vec(),
        max_degree: series.max_degree(),
        terms: terms
            .into_iter()
            .map(|(w, coeff)| TermJson {
                word: series.alphabet().word_string(w),
                coeff,
            })
            .collect(),
    }
}

/// Outcome of one exhaustive verification sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub construction: String,
    pub group: String,
    pub arity: usize,
    pub points_checked: u64,
    pub violations: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Merge of several sweeps run by one lab command.
#[derive(Debug, Clone, Serialize)]
pub struct LabReport {
    pub proposition: String,
    pub seed: u64,
    pub sweeps: Vec<SweepReport>,
}

impl LabReport {
    pub fn passed(&self) -> bool {
        self.sweeps.iter().all(|s| s.passed())
    }

    pub fn points_checked(&self) -> u64 {
        self.sweeps.iter().map(|s| s.points_checked).sum()
    }

    pub fn first_violation(&self) -> Option<&str> {
        self.sweeps
            .iter()
            .flat_map(|s| s.violations.iter())
            .next()
            .map(String::as_str)
    }
}
