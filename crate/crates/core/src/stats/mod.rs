//! Descriptive statistics, Pearson correlation, Shapiro-Wilk and
//! Mann-Whitney U, plus the per-feature fake-vs-true comparison built on them.

mod mann_whitney;
mod shapiro;

pub use mann_whitney::{
    mann_whitney_normal_p, mann_whitney_u, midranks, u_null_counts, MannWhitney, PMethod,
    EXACT_MAX_N,
};
pub use shapiro::{shapiro_wilk, ShapiroWilk, MAX_N as SHAPIRO_MAX_N, MIN_N as SHAPIRO_MIN_N};

use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Describe {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
}

/// Summary of a sample. `std_dev` is the sample (n - 1) deviation, 0 for n < 2.
pub fn describe(values: &[f64]) -> Result<Describe> {
    if values.is_empty() {
        return Err(Error::Precondition(
            "cannot describe an empty sample".into(),
        ));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Precondition(
            "sample contains non-finite values".into(),
        ));
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let std_dev = if n < 2 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    };
    Ok(Describe {
        n,
        mean,
        median,
        std_dev,
        min: sorted[0],
        max: sorted[n - 1],
    })
}

pub fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(Error::Precondition(
            "pearson_r needs at least two pairs".into(),
        ));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    Pearson,
    ShapiroWilk,
    MannWhitneyU,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatTestResult {
    pub test: TestKind,
    /// r, W or U. `None` only when the statistic is undefined (constant sample).
    pub statistic: Option<f64>,
    pub p_value: Option<f64>,
    pub n: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl StatTestResult {
    pub fn pearson(x: &[f64], y: &[f64]) -> Result<Self> {
        let r = pearson_r(x, y)?;
        Ok(Self {
            test: TestKind::Pearson,
            statistic: Some(r),
            p_value: None,
            n: vec![x.len()],
            notes: Vec::new(),
        })
    }

    /// Shapiro-Wilk as a report entry: a constant sample becomes a
    /// degenerate result instead of an error, a size outside the valid range
    /// is still an error.
    pub fn shapiro(sample: &[f64]) -> Result<Self> {
        let base = Self {
            test: TestKind::ShapiroWilk,
            statistic: None,
            p_value: None,
            n: vec![sample.len()],
            notes: Vec::new(),
        };
        match shapiro_wilk(sample) {
            Ok(sw) => Ok(Self {
                statistic: Some(sw.w),
                p_value: Some(sw.p_value),
                ..base
            }),
            Err(Error::ConstantSample) => Ok(Self {
                notes: vec!["degenerate: constant sample".into()],
                ..base
            }),
            Err(e) => Err(e),
        }
    }

    pub fn mann_whitney(a: &[f64], b: &[f64]) -> Result<Self> {
        let mw = mann_whitney_u(a, b)?;
        let mut notes = Vec::new();
        match mw.method {
            PMethod::Exact => notes.push("exact".to_string()),
            PMethod::Normal => notes.push("normal approximation".to_string()),
        }
        if mw.all_ties {
            notes.push("all ties".into());
        } else if mw.has_ties {
            notes.push("ties".into());
        }
        Ok(Self {
            test: TestKind::MannWhitneyU,
            statistic: Some(mw.u),
            p_value: Some(mw.p_value),
            n: vec![mw.n_a, mw.n_b],
            notes,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupComparison {
    pub feature: String,
    pub fake: Describe,
    #[serde(rename = "true")]
    pub real: Describe,
    /// `None` when the group size is outside the Shapiro-Wilk range.
    pub shapiro_fake: Option<StatTestResult>,
    #[serde(rename = "shapiro_true")]
    pub shapiro_real: Option<StatTestResult>,
    pub mann_whitney: StatTestResult,
}

/// Compare one feature between fake and true articles.
pub fn compare_groups(feature: &str, values: &[f64], labels: &[Label]) -> Result<GroupComparison> {
    if values.len() != labels.len() {
        return Err(Error::LengthMismatch(values.len(), labels.len()));
    }
    let mut fake = Vec::new();
    let mut real = Vec::new();
    for (&v, &l) in values.iter().zip(labels) {
        match l {
            Label::Fake => fake.push(v),
            Label::True => real.push(v),
        }
    }
    if fake.is_empty() || real.is_empty() {
        return Err(Error::Precondition(format!(
            "{feature}: both label groups must be nonempty (fake {}, true {})",
            fake.len(),
            real.len()
        )));
    }
    let shapiro = |s: &[f64]| -> Result<Option<StatTestResult>> {
        if (SHAPIRO_MIN_N..=SHAPIRO_MAX_N).contains(&s.len()) {
            StatTestResult::shapiro(s).map(Some)
        } else {
            Ok(None)
        }
    };
    Ok(GroupComparison {
        feature: feature.to_string(),
        fake: describe(&fake)?,
        real: describe(&real)?,
        shapiro_fake: shapiro(&fake)?,
        shapiro_real: shapiro(&real)?,
        mann_whitney: StatTestResult::mann_whitney(&fake, &real)?,
    })
}
