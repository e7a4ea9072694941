use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{eer, hter, roc, EerPoint, RocCurve, ScoreRecord};
use crate::protocol::{EvaluationPlan, ProtocolManifest, Split};

/// Threshold fixed on one source split and the error it produces on the
/// target test split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdVariant {
    pub threshold_split: Split,
    pub eer_source: f64,
    pub threshold: f64,
    pub hter_target: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    /// `intra_database` or `cross_database`.
    pub protocol: String,
    pub source_dataset: String,
    pub target_dataset: String,
    pub threshold_split: Split,
    pub eer_source: f64,
    pub threshold: f64,
    pub hter_target: f64,
    /// EER of the target test split on its own.
    pub eer_target: f64,
    /// Every threshold source available for this plan, primary first.
    pub variants: Vec<ThresholdVariant>,
    pub roc_source: RocCurve,
    pub roc_target: RocCurve,
}

impl EvaluationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per threshold variant.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "protocol",
            "source_dataset",
            "target_dataset",
            "threshold_split",
            "eer_source",
            "threshold",
            "hter_target",
            "eer_target",
        ])?;
        for v in &self.variants {
            w.write_record([
                self.protocol.clone(),
                self.source_dataset.clone(),
                self.target_dataset.clone(),
                v.threshold_split.to_string(),
                v.eer_source.to_string(),
                v.threshold.to_string(),
                v.hter_target.to_string(),
                self.eer_target.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Scores for the entries of `split`, in manifest order.
///
/// Every entry must have exactly one score with a matching label; scores for
/// ids outside the split are ignored.
pub fn select_scores(
    manifest: &ProtocolManifest,
    split: Split,
    scores: &[ScoreRecord],
) -> Result<Vec<ScoreRecord>> {
    let mut by_id: HashMap<&str, &ScoreRecord> = HashMap::with_capacity(scores.len());
    for s in scores {
        if by_id.insert(&s.id, s).is_some() {
            return Err(Error::DuplicateId(s.id.clone()));
        }
    }
    let mut missing = Vec::new();
    let mut out = Vec::new();
    for entry in manifest.entries_in(split) {
        match by_id.get(entry.id.as_str()) {
            None => missing.push(entry.id.clone()),
            Some(s) => {
                if s.label != entry.label.class() {
                    return Err(Error::LabelMismatch {
                        id: entry.id.clone(),
                        manifest: entry.label.class().to_string(),
                        scores: s.label.to_string(),
                    });
                }
                out.push((*s).clone());
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::Coverage { missing });
    }
    Ok(out)
}

/// Equal-error threshold on the plan's source split. Only the source
/// dataset's scores are consulted.
pub fn fix_threshold(plan: &EvaluationPlan, source_scores: &[ScoreRecord]) -> Result<EerPoint> {
    eer(&select_scores(
        plan.source(),
        plan.threshold_split(),
        source_scores,
    )?)
}

/// Runs a plan: threshold on the source, HTER on the target test split.
///
/// For intra-database plans `target_scores` is ignored and `source_scores`
/// must cover both the threshold split and the test split.
pub fn evaluate(
    plan: &EvaluationPlan,
    source_scores: &[ScoreRecord],
    target_scores: &[ScoreRecord],
) -> Result<EvaluationReport> {
    let target_pool = if plan.is_cross_database() {
        target_scores
    } else {
        source_scores
    };
    let target = select_scores(plan.target(), Split::Test, target_pool)?;

    let primary = plan.threshold_split();
    let mut splits = vec![primary];
    if !plan.is_cross_database() {
        for alt in [Split::Test, Split::Dev] {
            if alt != primary && plan.source().entries_in(alt).next().is_some() {
                splits.push(alt);
            }
        }
    }

    let mut variants = Vec::with_capacity(splits.len());
    for split in splits {
        let point = eer(&select_scores(plan.source(), split, source_scores)?)?;
        variants.push(ThresholdVariant {
            threshold_split: split,
            eer_source: point.eer,
            threshold: point.threshold,
            hter_target: hter(&target, point.threshold)?,
        });
    }
    let main = variants[0].clone();

    let source = select_scores(plan.source(), primary, source_scores)?;
    Ok(EvaluationReport {
        protocol: if plan.is_cross_database() {
            "cross_database"
        } else {
            "intra_database"
        }
        .to_string(),
        source_dataset: plan.source().dataset().to_string(),
        target_dataset: plan.target().dataset().to_string(),
        threshold_split: primary,
        eer_source: main.eer_source,
        threshold: main.threshold,
        hter_target: main.hter_target,
        eer_target: eer(&target)?.eer,
        variants,
        roc_source: roc(&source)?,
        roc_target: roc(&target)?,
    })
}
