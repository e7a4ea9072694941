//! ROC, EER and HTER for liveness scores.
//!
//! Scores are oriented so that higher means more live. A sample is accepted
//! as live iff `score >= threshold`. With that rule:
//!
//! * FAR (false acceptance) = spoof samples accepted / spoof samples
//! * FRR (false rejection)  = live samples rejected / live samples
//! * HTER = (FAR + FRR) / 2 at a threshold fixed in advance
//!
//! The equal-error point is taken on the discrete threshold sweep over the
//! distinct score values: the threshold where `|FAR - FRR|` is smallest
//! (ties: lowest half total error, then lowest threshold), and the EER is the
//! half total error there. When the sweep hits an exact crossing this is the
//! common value of FAR and FRR; otherwise it is the closest realisable
//! operating point, which keeps `hter(records, eer.threshold) == eer.eer`.

mod report;
mod scores;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::protocol::Class;

pub use report::{evaluate, fix_threshold, select_scores, EvaluationReport, ThresholdVariant};
pub use scores::{aggregate_mean, parse_scores, read_scores, write_roc_csv, Polarity};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub id: String,
    pub label: Class,
    /// Higher means more live.
    pub score: f64,
}

impl ScoreRecord {
    pub fn new(id: impl Into<String>, label: Class, score: f64) -> Result<Self> {
        let id = id.into();
        if !score.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "score for {id:?} is not finite: {score}"
            )));
        }
        Ok(ScoreRecord { id, label, score })
    }
}

fn infinite_as_string<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(if *v > 0.0 { "inf" } else { "-inf" })
    }
}

fn deserialize_threshold<'de, D>(d: D) -> std::result::Result<f64, D::Error>
where
    D: serde::Deserializer<'de>,
{
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }
    match Repr::deserialize(d)? {
        Repr::Num(v) => Ok(v),
        Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    #[serde(
        serialize_with = "infinite_as_string",
        deserialize_with = "deserialize_threshold"
    )]
    pub threshold: f64,
    pub fpr: f64,
    pub tpr: f64,
}

/// ROC sampled at `-inf`, every distinct score, and `+inf`, in ascending
/// threshold order (so both rates are non-increasing along `points`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    pub points: Vec<RocPoint>,
    pub auc: f64,
}

/// FAR and FRR at one threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorRates {
    pub far: f64,
    pub frr: f64,
}

impl ErrorRates {
    pub fn hter(&self) -> f64 {
        (self.far + self.frr) / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EerPoint {
    pub eer: f64,
    pub threshold: f64,
    pub far: f64,
    pub frr: f64,
}

/// Scores split by class, each sorted ascending.
struct SortedScores {
    live: Vec<f64>,
    spoof: Vec<f64>,
}

impl SortedScores {
    fn new(records: &[ScoreRecord]) -> Result<Self> {
        let mut live = Vec::new();
        let mut spoof = Vec::new();
        for r in records {
            if !r.score.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "score for {:?} is not finite",
                    r.id
                )));
            }
            match r.label {
                Class::Live => live.push(r.score),
                Class::Spoof => spoof.push(r.score),
            }
        }
        if live.is_empty() || spoof.is_empty() {
            return Err(Error::DegenerateClass(format!(
                "need at least one live and one spoof score, got {} live and {} spoof",
                live.len(),
                spoof.len()
            )));
        }
        live.sort_by(f64::total_cmp);
        spoof.sort_by(f64::total_cmp);
        Ok(SortedScores { live, spoof })
    }

    /// Distinct score values across both classes, ascending.
    fn thresholds(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.live.iter().chain(&self.spoof).copied().collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        all
    }

    /// Rates at each of `thresholds` (ascending) via a merge walk.
    fn sweep(&self, thresholds: &[f64]) -> Vec<ErrorRates> {
        let (nl, ns) = (self.live.len(), self.spoof.len());
        let (mut li, mut si) = (0, 0);
        thresholds
            .iter()
            .map(|&t| {
                while li < nl && self.live[li] < t {
                    li += 1;
                }
                while si < ns && self.spoof[si] < t {
                    si += 1;
                }
                ErrorRates {
                    far: (ns - si) as f64 / ns as f64,
                    frr: li as f64 / nl as f64,
                }
            })
            .collect()
    }
}

/// FAR and FRR at `threshold` under the `score >= threshold` rule.
pub fn error_rates(records: &[ScoreRecord], threshold: f64) -> Result<ErrorRates> {
    let sorted = SortedScores::new(records)?;
    Ok(sorted.sweep(&[threshold])[0])
}

pub fn roc(records: &[ScoreRecord]) -> Result<RocCurve> {
    let sorted = SortedScores::new(records)?;
    let mut thresholds = vec![f64::NEG_INFINITY];
    thresholds.extend(sorted.thresholds());
    thresholds.push(f64::INFINITY);
    let points: Vec<RocPoint> = sorted
        .sweep(&thresholds)
        .into_iter()
        .zip(&thresholds)
        .map(|(r, &threshold)| RocPoint {
            threshold,
            fpr: r.far,
            tpr: 1.0 - r.frr,
        })
        .collect();
    let auc = points
        .windows(2)
        .map(|w| (w[0].fpr - w[1].fpr) * (w[0].tpr + w[1].tpr) / 2.0)
        .sum();
    Ok(RocCurve { points, auc })
}

pub fn eer(records: &[ScoreRecord]) -> Result<EerPoint> {
    let sorted = SortedScores::new(records)?;
    let thresholds = sorted.thresholds();
    let rates = sorted.sweep(&thresholds);
    let key = |r: &ErrorRates| ((r.frr - r.far).abs(), r.hter());
    let (best, rate) = rates
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            let (ka, kb) = (key(a), key(b));
            ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
        })
        .expect("at least two scores");
    Ok(EerPoint {
        eer: rate.hter(),
        threshold: thresholds[best],
        far: rate.far,
        frr: rate.frr,
    })
}

/// Half total error at a threshold chosen elsewhere.
pub fn hter(records: &[ScoreRecord], threshold: f64) -> Result<f64> {
    if !threshold.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "threshold must be finite, got {threshold}"
        )));
    }
    Ok(error_rates(records, threshold)?.hter())
}

/// Area under the ROC curve as the Mann-Whitney statistic, counting ties as
/// one half. O(n log n); used as a cross-check for the trapezoid in [`roc`].
pub fn auc_rank(records: &[ScoreRecord]) -> Result<f64> {
    let sorted = SortedScores::new(records)?;
    let mut wins = 0.0;
    let mut lo = 0;
    let mut hi = 0;
    for &l in &sorted.live {
        while lo < sorted.spoof.len() && sorted.spoof[lo].total_cmp(&l) == Ordering::Less {
            lo += 1;
        }
        hi = hi.max(lo);
        while hi < sorted.spoof.len() && sorted.spoof[hi] <= l {
            hi += 1;
        }
        wins += lo as f64 + (hi - lo) as f64 / 2.0;
    }
    Ok(wins / (sorted.live.len() * sorted.spoof.len()) as f64)
}
