//! CORDIS-style participant tables and per-project funding dominance.
//!
//! Activity codes map onto helix actors as `HES`/`REC` → Academia,
//! `PRC` → Industry, `PUB` → Government, `OTH` → Civil Society. Unknown codes
//! are rejected rather than guessed.

use std::io::Read;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ewl::{HelixActor, PerActor};

/// Tolerance for the unit-sum check on dominance weights.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// One participant row. `row` is the 1-based data row it came from (0 when
/// constructed in memory).
#[derive(Debug, Clone, PartialEq)]
pub struct ParticipantRecord {
    pub project_id: String,
    pub organisation_id: Option<String>,
    pub activity_type: String,
    pub ec_contribution: f64,
    pub row: usize,
}

impl ParticipantRecord {
    pub fn new(project_id: &str, activity_type: &str, ec_contribution: f64) -> Self {
        Self {
            project_id: project_id.to_string(),
            organisation_id: None,
            activity_type: activity_type.trim().to_ascii_uppercase(),
            ec_contribution,
            row: 0,
        }
    }
}

/// Column names to read. CORDIS export vintages differ, hence configurable.
#[derive(Debug, Clone)]
pub struct IngestOptions {
    pub project_column: String,
    pub activity_column: String,
    pub contribution_column: String,
    /// Read when present; never required.
    pub organisation_column: String,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self {
            project_column: "projectID".into(),
            activity_column: "activityType".into(),
            contribution_column: "ecContribution".into(),
            organisation_column: "organisationID".into(),
        }
    }
}

/// Funding share per helix actor. Components are in `[0, 1]` and sum to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DominanceWeights(PerActor<f64>);

impl DominanceWeights {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        if let Some(x) = p.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::invalid(format!("dominance weight {x} outside [0, 1]")));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::invalid(format!("dominance weights sum to {total}")));
        }
        Ok(Self(PerActor(p)))
    }

    pub fn get(&self, actor: HelixActor) -> f64 {
        self.0[actor]
    }

    /// Weights in qubit order (Academia first).
    pub fn as_array(&self) -> [f64; 4] {
        self.0 .0
    }
}

pub fn map_activity_type(code: &str) -> Result<HelixActor> {
    map_activity_at(code, 0)
}

fn map_activity_at(code: &str, row: usize) -> Result<HelixActor> {
    match code.trim().to_ascii_uppercase().as_str() {
        "HES" | "REC" => Ok(HelixActor::Academia),
        "PRC" => Ok(HelixActor::Industry),
        "PUB" => Ok(HelixActor::Government),
        "OTH" => Ok(HelixActor::CivilSociety),
        _ => Err(Error::UnknownActivityType {
            code: code.to_string(),
            row,
        }),
    }
}

/// Parses a monetary amount written with either `.` or `,` as decimal
/// separator and optional grouping.
///
/// When both separators appear, the rightmost one is the decimal mark. A
/// separator that appears more than once is a thousands separator. A single
/// lone separator is taken as the decimal mark. Spaces, apostrophes and
/// underscores are ignored as grouping characters.
pub fn parse_amount(raw: &str) -> Option<f64> {
    let cleaned: String = raw
        .trim()
        .chars()
        .filter(|c| !matches!(c, ' ' | '\u{a0}' | '\'' | '_'))
        .collect();
    if cleaned.is_empty() {
        return Some(0.0);
    }
    let dots = cleaned.matches('.').count();
    let commas = cleaned.matches(',').count();
    let normalized = match (dots, commas) {
        (0, 0) => cleaned,
        (_, 0) if dots > 1 => cleaned.replace('.', ""),
        (_, 0) => cleaned,
        (0, _) if commas > 1 => cleaned.replace(',', ""),
        (0, _) => cleaned.replace(',', "."),
        _ => {
            let last_dot = cleaned.rfind('.').unwrap();
            let last_comma = cleaned.rfind(',').unwrap();
            if last_comma > last_dot {
                if dots > 0 && commas > 1 {
                    return None;
                }
                cleaned.replace('.', "").replace(',', ".")
            } else {
                if dots > 1 {
                    return None;
                }
                cleaned.replace(',', "")
            }
        }
    };
    normalized.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn detect_delimiter(header: &str) -> u8 {
    let semis = header.matches(';').count();
    let commas = header.matches(',').count();
    if semis > commas {
        b';'
    } else {
        b','
    }
}

fn column_index(headers: &csv::StringRecord, name: &str) -> Option<usize> {
    headers.iter().position(|h| h.trim() == name)
}

/// Reads a participant table from `path`.
pub fn load_participants(path: &Path, options: &IngestOptions) -> Result<Vec<ParticipantRecord>> {
    let mut text = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
    parse_participants(&text, options)
}

/// Parses a participant table held in memory. Same contract as [`load_participants`].
pub fn parse_participants(text: &str, options: &IngestOptions) -> Result<Vec<ParticipantRecord>> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let header_line = text.lines().find(|l| !l.trim().is_empty()).ok_or_else(|| {
        Error::Schema("input is empty; a header row is required".into())
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(detect_delimiter(header_line))
        .flexible(true)
        .from_reader(text.as_bytes());

    let headers = reader
        .headers()
        .map_err(|e| Error::Schema(format!("unreadable header: {e}")))?
        .clone();
    let require = |name: &str| {
        column_index(&headers, name)
            .ok_or_else(|| Error::Schema(format!("missing required column {name:?}")))
    };
    let project_col = require(&options.project_column)?;
    let activity_col = require(&options.activity_column)?;
    let contribution_col = require(&options.contribution_column)?;
    let organisation_col = column_index(&headers, &options.organisation_column);

    let mut records = Vec::new();
    for (idx, result) in reader.records().enumerate() {
        let row = idx + 1;
        let rec = result.map_err(|e| Error::Parse {
            row,
            message: e.to_string(),
        })?;
        if rec.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let field = |col: usize| rec.get(col).unwrap_or("").trim();

        let activity_raw = field(activity_col);
        map_activity_at(activity_raw, row)?;
        let raw_amount = field(contribution_col);
        let ec_contribution = parse_amount(raw_amount).ok_or_else(|| Error::Parse {
            row,
            message: format!("cannot parse {:?} value {raw_amount:?}", options.contribution_column),
        })?;
        if ec_contribution < 0.0 {
            return Err(Error::DataIntegrity(format!(
                "negative contribution {ec_contribution} at row {row}"
            )));
        }
        records.push(ParticipantRecord {
            project_id: field(project_col).to_string(),
            organisation_id: organisation_col
                .map(field)
                .filter(|s| !s.is_empty())
                .map(str::to_string),
            activity_type: activity_raw.to_ascii_uppercase(),
            ec_contribution,
            row,
        });
    }
    Ok(records)
}

/// Share of the project's total `ecContribution` held by each helix actor.
pub fn compute_dominance(records: &[ParticipantRecord], project_id: &str) -> Result<DominanceWeights> {
    let project_id = project_id.trim();
    let mut sums = [0.0f64; 4];
    let mut matched = 0usize;
    for rec in records.iter().filter(|r| r.project_id.trim() == project_id) {
        matched += 1;
        if !rec.ec_contribution.is_finite() || rec.ec_contribution < 0.0 {
            return Err(Error::DataIntegrity(format!(
                "contribution {} at row {} is not a non-negative amount",
                rec.ec_contribution, rec.row
            )));
        }
        let actor = map_activity_at(&rec.activity_type, rec.row)?;
        sums[actor.qubit()] += rec.ec_contribution;
    }
    if matched == 0 {
        return Err(Error::UnknownProject(project_id.to_string()));
    }
    let total: f64 = sums.iter().sum();
    if total <= 0.0 {
        return Err(Error::DegenerateFunding(project_id.to_string()));
    }
    Ok(DominanceWeights(PerActor(sums.map(|s| s / total))))
}
