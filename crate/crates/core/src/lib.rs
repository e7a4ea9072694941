//! Temporal sub-sequence encoding for video presentation-attack detection,
//! plus the score evaluation machinery (ROC, EER, HTER) and dataset protocols
//! used to report results.
//!
//! The encoder collapses each run of `Z` consecutive frames into one image by a
//! normalized weighted sum, so any still-image classifier can consume motion
//! cues. See [`encoder`] for the math, [`frame_io`] for ingest/export,
//! [`protocol`] and [`metrics`] for scoring.

pub mod encoder;
pub mod error;
pub mod frame_io;
pub mod metrics;
pub mod protocol;

pub use encoder::{
    accumulate, encode_video, normalize, partition, EncodedImage, Encoder, EncoderConfig, Frame,
    FrameShape, Segment, SubSequence, TailPolicy, WeightKind, WeightScheme, WeightVector,
};
pub use error::{Error, ErrorKind, Result};
pub use frame_io::{
    quantize, read_frames, write_encoded, EncodedWriter, FrameSource, FrameStream, OutputFormat,
    OutputSpec,
};
pub use metrics::{eer, evaluate, hter, roc, EerPoint, EvaluationReport, RocCurve, ScoreRecord};
pub use protocol::{
    load_manifest, plan_cross_database, plan_intra_database, Class, EvaluationPlan, ManifestEntry,
    ProtocolManifest, SampleLabel, Split,
};
