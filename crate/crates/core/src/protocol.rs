//! Dataset manifests and evaluation protocols.
//!
//! A manifest lists the samples of one dataset with their label and split.
//! Two protocols are modelled:
//!
//! * intra-database: threshold and error both come from one dataset, with the
//!   threshold fixed on a chosen split (`test` or `dev`);
//! * cross-database: the threshold is fixed at the equal-error point of the
//!   source dataset's test split and applied unchanged to the target's test
//!   split.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame_io::FrameSource;

/// Binary ground truth used by the metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Live,
    Spoof,
}

impl Class {
    pub fn as_str(&self) -> &'static str {
        match self {
            Class::Live => "live",
            Class::Spoof => "spoof",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "live" => Some(Class::Live),
            "spoof" => Some(Class::Spoof),
            _ => None,
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SampleLabel {
    Live,
    /// Presentation attack, tagged with its kind (`print`, `replay`, ...).
    Spoof {
        attack: String,
    },
}

impl SampleLabel {
    pub fn spoof(attack: impl Into<String>) -> Result<Self> {
        let attack = attack.into();
        if attack.trim().is_empty() {
            return Err(Error::InvalidManifest(
                "spoof attack kind must be non-empty".into(),
            ));
        }
        Ok(SampleLabel::Spoof { attack })
    }

    pub fn class(&self) -> Class {
        match self {
            SampleLabel::Live => Class::Live,
            SampleLabel::Spoof { .. } => Class::Spoof,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Dev,
    Test,
}

impl Split {
    pub const ALLOWED: [&'static str; 3] = ["train", "dev", "test"];

    pub fn as_str(&self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Dev => "dev",
            Split::Test => "test",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "dev" => Ok(Split::Dev),
            "test" => Ok(Split::Test),
            other => Err(Error::UnknownSplit {
                value: other.to_string(),
                allowed: Self::ALLOWED.to_vec(),
            }),
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub id: String,
    /// Absent for score-only manifests.
    pub source: Option<FrameSource>,
    pub label: SampleLabel,
    pub split: Split,
}

// On-disk form. Labels and splits stay strings here so that validation can
// report them with dedicated errors.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    dataset: String,
    entries: Vec<RawEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<FrameSource>,
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    attack: Option<String>,
    split: String,
}

/// Immutable description of one dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolManifest {
    dataset: String,
    entries: Vec<ManifestEntry>,
}

impl ProtocolManifest {
    pub fn new(dataset: impl Into<String>, entries: Vec<ManifestEntry>) -> Result<Self> {
        let dataset = dataset.into();
        if dataset.trim().is_empty() {
            return Err(Error::InvalidManifest(
                "dataset name must be non-empty".into(),
            ));
        }
        let mut seen = HashSet::with_capacity(entries.len());
        for entry in &entries {
            if entry.id.is_empty() {
                return Err(Error::InvalidManifest(
                    "sample ids must be non-empty".into(),
                ));
            }
            if !seen.insert(entry.id.as_str()) {
                return Err(Error::DuplicateId(entry.id.clone()));
            }
            if let SampleLabel::Spoof { attack } = &entry.label {
                if attack.trim().is_empty() {
                    return Err(Error::InvalidManifest(format!(
                        "sample {:?}: spoof attack kind must be non-empty",
                        entry.id
                    )));
                }
            }
        }
        Ok(ProtocolManifest { dataset, entries })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawManifest = serde_json::from_str(text).map_err(|e| Error::ManifestParse {
            line: e.line(),
            column: e.column(),
            detail: e.to_string(),
        })?;
        let entries = raw
            .entries
            .into_iter()
            .map(|e| {
                let label = match (e.label.as_str(), e.attack) {
                    ("live", None) => SampleLabel::Live,
                    ("live", Some(_)) => {
                        return Err(Error::InvalidManifest(format!(
                            "sample {:?}: live entries cannot carry an attack kind",
                            e.id
                        )))
                    }
                    ("spoof", Some(attack)) => SampleLabel::spoof(attack)?,
                    ("spoof", None) => {
                        return Err(Error::InvalidManifest(format!(
                            "sample {:?}: spoof entries need an \"attack\" field",
                            e.id
                        )))
                    }
                    (other, _) => {
                        return Err(Error::InvalidManifest(format!(
                            "sample {:?}: unknown label {other:?}; allowed values: live, spoof",
                            e.id
                        )))
                    }
                };
                Ok(ManifestEntry {
                    split: Split::parse(&e.split)?,
                    id: e.id,
                    source: e.source,
                    label,
                })
            })
            .collect::<Result<_>>()?;
        Self::new(raw.dataset, entries)
    }

    pub fn to_json_string(&self) -> String {
        let raw = RawManifest {
            dataset: self.dataset.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| {
                    let (label, attack) = match &e.label {
                        SampleLabel::Live => ("live".to_string(), None),
                        SampleLabel::Spoof { attack } => {
                            ("spoof".to_string(), Some(attack.clone()))
                        }
                    };
                    RawEntry {
                        id: e.id.clone(),
                        source: e.source.clone(),
                        label,
                        attack,
                        split: e.split.as_str().to_string(),
                    }
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("manifest serializes")
    }

    pub fn dataset(&self) -> &str {
        &self.dataset
    }

    pub fn entries(&self) -> &[ManifestEntry] {
        &self.entries
    }

    pub fn entries_in(&self, split: Split) -> impl Iterator<Item = &ManifestEntry> {
        self.entries.iter().filter(move |e| e.split == split)
    }

    pub fn get(&self, id: &str) -> Option<&ManifestEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    fn require_split(&self, split: Split) -> Result<()> {
        if self.entries_in(split).next().is_none() {
            return Err(Error::InvalidPlan(format!(
                "dataset {:?} has no {split} entries",
                self.dataset
            )));
        }
        Ok(())
    }
}

/// Reads and validates a manifest file.
pub fn load_manifest(path: &Path) -> Result<ProtocolManifest> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ProtocolManifest::from_json_str(&text)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanKind {
    IntraDatabase {
        manifest: ProtocolManifest,
    },
    CrossDatabase {
        source: ProtocolManifest,
        target: ProtocolManifest,
    },
}

/// How the decision threshold is fixed before errors are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum ThresholdRule {
    /// Equal-error threshold computed on the given split of the source dataset.
    EerThresholdOnSource { split: Split },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationPlan {
    pub kind: PlanKind,
    pub threshold_rule: ThresholdRule,
}

impl EvaluationPlan {
    /// Dataset the threshold is fixed on.
    pub fn source(&self) -> &ProtocolManifest {
        match &self.kind {
            PlanKind::IntraDatabase { manifest } => manifest,
            PlanKind::CrossDatabase { source, .. } => source,
        }
    }

    /// Dataset the error is reported on.
    pub fn target(&self) -> &ProtocolManifest {
        match &self.kind {
            PlanKind::IntraDatabase { manifest } => manifest,
            PlanKind::CrossDatabase { target, .. } => target,
        }
    }

    pub fn threshold_split(&self) -> Split {
        match self.threshold_rule {
            ThresholdRule::EerThresholdOnSource { split } => split,
        }
    }

    pub fn is_cross_database(&self) -> bool {
        matches!(self.kind, PlanKind::CrossDatabase { .. })
    }
}

/// Same-dataset evaluation; `threshold_split` selects where the EER threshold
/// comes from (`Test` or `Dev`).
pub fn plan_intra_database(
    manifest: ProtocolManifest,
    threshold_split: Split,
) -> Result<EvaluationPlan> {
    if threshold_split == Split::Train {
        return Err(Error::InvalidPlan(
            "thresholds are fixed on the dev or test split, not train".into(),
        ));
    }
    manifest.require_split(Split::Test)?;
    manifest.require_split(threshold_split)?;
    Ok(EvaluationPlan {
        kind: PlanKind::IntraDatabase { manifest },
        threshold_rule: ThresholdRule::EerThresholdOnSource {
            split: threshold_split,
        },
    })
}

/// Threshold from the source test split, error on the target test split.
pub fn plan_cross_database(
    source: ProtocolManifest,
    target: ProtocolManifest,
) -> Result<EvaluationPlan> {
    if source.dataset() == target.dataset() {
        return Err(Error::InvalidPlan(format!(
            "cross-database evaluation needs two different datasets, got {:?} twice",
            source.dataset()
        )));
    }
    source.require_split(Split::Test)?;
    target.require_split(Split::Test)?;
    Ok(EvaluationPlan {
        kind: PlanKind::CrossDatabase { source, target },
        threshold_rule: ThresholdRule::EerThresholdOnSource { split: Split::Test },
    })
}
