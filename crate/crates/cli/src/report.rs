use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

pub const SCHEMA: &str = "report/1";

/// Largest `|Σ|²` for which a best response table is printed.
pub const BR_TABLE_LIMIT: u128 = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub game: String,
    pub boundary: String,
    pub slots: Vec<Slot>,
    pub profiles: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<Json>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context_display: Option<String>,
    pub equilibria: Vec<Profile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_response: Option<Vec<Vec<bool>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Slot {
    pub id: String,
    pub obs: String,
    pub moves: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub index: u128,
    pub display: String,
    pub tables: Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pair {
    pub sigma: u128,
    pub dev: u128,
    pub sigma_display: String,
    pub dev_display: String,
    pub member: bool,
}

impl Report {
    pub fn new(game: &str, boundary: String) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            game: game.to_string(),
            boundary,
            slots: Vec::new(),
            profiles: 0,
            context: None,
            context_display: None,
            equilibria: Vec::new(),
            best_response: None,
            pair: None,
            timing_ms: None,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "game {} : {}", self.game, self.boundary);
        let _ = writeln!(out, "slots: {}", self.slots.len());
        for s in &self.slots {
            let _ = writeln!(out, "  {} : {} -> {}", s.id, s.obs, s.moves);
        }
        let _ = writeln!(out, "profiles: {}", self.profiles);
        if let Some(ctx) = &self.context_display {
            let _ = writeln!(out, "context: {ctx}");
        }
        let _ = writeln!(out, "equilibria: {}", self.equilibria.len());
        for p in &self.equilibria {
            let _ = writeln!(out, "  #{} {}", p.index, p.display);
        }
        if let Some(rows) = &self.best_response {
            let _ = writeln!(out, "best response (row: sigma, column: deviation):");
            let width = rows.len().saturating_sub(1).to_string().len();
            for (i, row) in rows.iter().enumerate() {
                let cells: String = row.iter().map(|&b| if b { '1' } else { '.' }).collect();
                let _ = writeln!(out, "  {i:>width$} {cells}");
            }
        }
        if let Some(p) = &self.pair {
            let _ = writeln!(
                out,
                "pair #{} {} / #{} {}: {}",
                p.sigma,
                p.sigma_display,
                p.dev,
                p.dev_display,
                if p.member {
                    "best response"
                } else {
                    "not a best response"
                }
            );
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms:.3} ms");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}
