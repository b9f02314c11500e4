use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct F1Scores {
    pub f1_micro: f64,
    pub f1_macro: f64,
    pub f1_weighted: f64,
    /// Classes whose precision or recall was 0/0 and scored as 0.
    #[serde(default)]
    pub undefined_classes: usize,
}

/// Micro, macro and support-weighted F1 over the classes seen in either
/// vector.
pub fn f1_scores<T: Ord + Copy>(y_true: &[T], y_pred: &[T]) -> Result<F1Scores> {
    if y_true.len() != y_pred.len() {
        return Err(Error::LengthMismatch(y_true.len(), y_pred.len()));
    }
    if y_true.is_empty() {
        return Err(Error::Precondition("F1 of an empty prediction set".into()));
    }
    let classes: BTreeSet<T> = y_true.iter().chain(y_pred).copied().collect();
    let n = y_true.len() as f64;
    let (mut macro_sum, mut weighted_sum, mut undefined) = (0.0, 0.0, 0);
    let mut tp_total = 0usize;
    for &c in &classes {
        let tp = y_true
            .iter()
            .zip(y_pred)
            .filter(|&(t, p)| *t == c && *p == c)
            .count();
        let predicted = y_pred.iter().filter(|&&p| p == c).count();
        let support = y_true.iter().filter(|&&t| t == c).count();
        tp_total += tp;
        let f1 = if predicted == 0 || support == 0 {
            undefined += 1;
            0.0
        } else {
            let precision = tp as f64 / predicted as f64;
            let recall = tp as f64 / support as f64;
            if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            }
        };
        macro_sum += f1;
        weighted_sum += f1 * support as f64;
    }
    Ok(F1Scores {
        // in single-label classification global precision = recall = accuracy
        f1_micro: tp_total as f64 / n,
        f1_macro: macro_sum / classes.len() as f64,
        f1_weighted: weighted_sum / n,
        undefined_classes: undefined,
    })
}
