//! Score files: CSV with header `id,label,score`, label `live` or `spoof`.
//!
//! An optional first line `# polarity: live-high` or `# polarity: spoof-high`
//! declares the score orientation (default `live-high`). Scores are flipped on
//! load so that in memory higher always means more live. Other `#` lines are
//! comments.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::metrics::{RocCurve, ScoreRecord};
use crate::protocol::Class;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Polarity {
    #[default]
    LiveHigh,
    SpoofHigh,
}

impl Polarity {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "live-high" => Some(Polarity::LiveHigh),
            "spoof-high" => Some(Polarity::SpoofHigh),
            _ => None,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Polarity::LiveHigh => Polarity::SpoofHigh,
            Polarity::SpoofHigh => Polarity::LiveHigh,
        }
    }
}

fn declared_polarity(text: &str) -> Result<Option<Polarity>> {
    let Some(first) = text.lines().next() else {
        return Ok(None);
    };
    let Some(rest) = first.trim().strip_prefix('#') else {
        return Ok(None);
    };
    let Some(value) = rest.trim().strip_prefix("polarity:") else {
        return Ok(None);
    };
    Polarity::parse(value)
        .map(Some)
        .ok_or_else(|| Error::ScoreParse {
            line: 1,
            detail: format!(
                "unknown polarity {:?}; expected live-high or spoof-high",
                value.trim()
            ),
        })
}

/// Parses score-file text. `flip` inverts whatever polarity the file declares.
pub fn parse_scores(text: &str, flip: bool) -> Result<Vec<ScoreRecord>> {
    let mut polarity = declared_polarity(text)?.unwrap_or_default();
    if flip {
        polarity = polarity.flipped();
    }

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::ScoreParse {
            line: e.position().map_or(1, |p| p.line()),
            detail: e.to_string(),
        })?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["id", "label", "score"] {
        return Err(Error::ScoreParse {
            line: headers.position().map_or(1, |p| p.line()),
            detail: format!(
                "expected header id,label,score, found {}",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }

    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::ScoreParse {
            line: e.position().map_or(0, |p| p.line()),
            detail: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let err = |detail: String| Error::ScoreParse { line, detail };
        let id = &row[0];
        if id.is_empty() {
            return Err(err("empty id".into()));
        }
        let label = Class::parse(&row[1])
            .ok_or_else(|| err(format!("label must be live or spoof, found {:?}", &row[1])))?;
        let score: f64 = row[2]
            .parse()
            .map_err(|_| err(format!("score {:?} is not a number", &row[2])))?;
        if !score.is_finite() {
            return Err(err(format!("score {score} is not finite")));
        }
        let score = match polarity {
            Polarity::LiveHigh => score,
            Polarity::SpoofHigh => -score,
        };
        out.push(ScoreRecord {
            id: id.to_string(),
            label,
            score,
        });
    }
    Ok(out)
}

pub fn read_scores(path: &Path, flip: bool) -> Result<Vec<ScoreRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scores(&text, flip)
}

/// Collapses repeated ids (per-image scores) into one mean score per id,
/// keeping first-appearance order.
pub fn aggregate_mean(records: &[ScoreRecord]) -> Result<Vec<ScoreRecord>> {
    let mut order: Vec<&str> = Vec::new();
    let mut acc: HashMap<&str, (Class, f64, usize)> = HashMap::new();
    for r in records {
        match acc.get_mut(r.id.as_str()) {
            Some((label, sum, n)) => {
                if *label != r.label {
                    return Err(Error::LabelMismatch {
                        id: r.id.clone(),
                        manifest: label.to_string(),
                        scores: r.label.to_string(),
                    });
                }
                *sum += r.score;
                *n += 1;
            }
            None => {
                order.push(&r.id);
                acc.insert(&r.id, (r.label, r.score, 1));
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|id| {
            let (label, sum, n) = acc[id];
            ScoreRecord {
                id: id.to_string(),
                label,
                score: sum / n as f64,
            }
        })
        .collect())
}

/// Writes `threshold,fpr,tpr` rows.
pub fn write_roc_csv<W: Write>(out: W, curve: &RocCurve) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["threshold", "fpr", "tpr"])?;
    for p in &curve.points {
        writer.write_record([
            p.threshold.to_string(),
            p.fpr.to_string(),
            p.tpr.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}
