//! Event log of an algorithm run.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Optimal,
    BudgetExceeded,
    Error,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Optimal => "OPTIMAL",
            Status::BudgetExceeded => "BUDGET_EXCEEDED",
            Status::Error => "ERROR",
        })
    }
}

/// Objective values are integers in the maximization form of the instance's
/// integer objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum EventKind {
    Start {
        x: Vec<i64>,
        #[serde(with = "crate::numeric::wide_int")]
        value: i128,
    },
    PhaseStart {
        mu: String,
        objective: Option<Vec<i64>>,
    },
    PhaseSkipped {
        mu: String,
    },
    OracleCall {
        query: String,
        answer: String,
    },
    Improvement {
        x: Vec<i64>,
        #[serde(with = "crate::numeric::wide_int")]
        value: i128,
        #[serde(with = "crate::numeric::wide_int")]
        improvement: i128,
    },
    Exhaust {
        alpha: i64,
    },
    Candidate {
        x: Vec<i64>,
        #[serde(with = "crate::numeric::wide_int")]
        value: i128,
    },
    Cut {
        at: Vec<i64>,
        subgradient: Vec<String>,
    },
    RatioConverged {
        anchor: Vec<i64>,
        mu: String,
        iterations: u32,
    },
    PhaseEnd {
        mu: String,
        x: Vec<i64>,
        #[serde(with = "crate::numeric::wide_int")]
        value: i128,
    },
    Note {
        message: String,
    },
    Terminate {
        status: Status,
        x: Vec<i64>,
        #[serde(with = "crate::numeric::wide_int")]
        value: i128,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub seq: u64,
    pub elapsed_secs: f64,
    pub oracle_calls: u64,
    #[serde(flatten)]
    pub kind: EventKind,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub n_improvements: u64,
    pub n_subproblems: u64,
    pub n_phases: u64,
    pub n_exhaust: u64,
    pub n_skipped_phases: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub algorithm: String,
    pub events: Vec<TraceEvent>,
    pub counters: Counters,
    pub status: Option<Status>,
    pub final_x: Vec<i64>,
    #[serde(with = "crate::numeric::wide_int")]
    pub final_value: i128,
    pub message: Option<String>,
}

impl Trace {
    pub fn new(algorithm: impl Into<String>) -> Self {
        Trace {
            algorithm: algorithm.into(),
            events: Vec::new(),
            counters: Counters::default(),
            status: None,
            final_x: Vec::new(),
            final_value: 0,
            message: None,
        }
    }

    pub fn push(&mut self, elapsed_secs: f64, oracle_calls: u64, kind: EventKind) {
        let seq = self.events.len() as u64;
        self.events.push(TraceEvent {
            seq,
            elapsed_secs,
            oracle_calls,
            kind,
        });
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Some(Status::Optimal)
    }

    /// Objective values of the start point and of every improvement, in order.
    pub fn visited_values(&self) -> Vec<i128> {
        self.events
            .iter()
            .filter_map(|e| match &e.kind {
                EventKind::Start { value, .. } | EventKind::Improvement { value, .. } => {
                    Some(*value)
                }
                _ => None,
            })
            .collect()
    }

    pub fn visited_points(&self) -> Vec<Vec<i64>> {
        self.events
            .iter()
            .filter_map(|e| match &e.kind {
                EventKind::Start { x, .. } | EventKind::Improvement { x, .. } => Some(x.clone()),
                _ => None,
            })
            .collect()
    }

    /// Improvement counts per scaling phase, split at `PhaseStart` events.
    pub fn improvements_per_phase(&self) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        for e in &self.events {
            match e.kind {
                EventKind::PhaseStart { .. } => out.push(0),
                EventKind::Improvement { .. } => {
                    if out.is_empty() {
                        out.push(0);
                    }
                    *out.last_mut().unwrap() += 1;
                }
                _ => {}
            }
        }
        out
    }

    /// `(x, value)` at the end of every completed phase.
    pub fn phase_ends(&self) -> Vec<(String, Vec<i64>, i128)> {
        self.events
            .iter()
            .filter_map(|e| match &e.kind {
                EventKind::PhaseEnd { mu, x, value } => Some((mu.clone(), x.clone(), *value)),
                _ => None,
            })
            .collect()
    }

    /// Solution events as `(event, value)`, for the primal integral.
    pub fn solution_events(&self) -> impl Iterator<Item = (&TraceEvent, i128)> {
        self.events.iter().filter_map(|e| match &e.kind {
            EventKind::Start { value, .. } | EventKind::Improvement { value, .. } => {
                Some((e, *value))
            }
            _ => None,
        })
    }

    /// Strictly increasing values and no repeated point.
    pub fn is_strictly_monotone(&self) -> bool {
        let vals = self.visited_values();
        let strictly = vals.windows(2).all(|w| w[0] < w[1]);
        let pts = self.visited_points();
        let distinct: std::collections::HashSet<_> = pts.iter().collect();
        strictly && distinct.len() == pts.len()
    }

    /// One JSON object per event; timestamps are zeroed when
    /// `with_timestamps` is false so traces compare byte-for-byte.
    pub fn write_jsonl<W: Write>(&self, mut w: W, with_timestamps: bool) -> Result<()> {
        for e in &self.events {
            let mut e = e.clone();
            if !with_timestamps {
                e.elapsed_secs = 0.0;
            }
            serde_json::to_writer(&mut w, &e)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self, with_timestamps: bool) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf, with_timestamps)
            .expect("in-memory write");
        String::from_utf8(buf).expect("json is utf-8")
    }

    pub fn read_jsonl(text: &str) -> Result<Vec<TraceEvent>> {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| Ok(serde_json::from_str(l)?))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_round_trip() {
        let mut t = Trace::new("demo");
        t.push(
            0.5,
            0,
            EventKind::Start {
                x: vec![0, 1],
                value: 3,
            },
        );
        t.push(
            0.7,
            1,
            EventKind::Improvement {
                x: vec![1, 1],
                value: 5,
                improvement: 2,
            },
        );
        t.push(
            0.9,
            2,
            EventKind::Terminate {
                status: Status::Optimal,
                x: vec![1, 1],
                value: 5,
            },
        );
        let text = t.to_jsonl(true);
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().next().unwrap().contains("\"event\":\"start\""));
        let back = Trace::read_jsonl(&text).unwrap();
        assert_eq!(back, t.events);
        assert!(!t.to_jsonl(false).contains("0.7"));
    }

    #[test]
    fn per_phase_counts() {
        let mut t = Trace::new("demo");
        t.push(
            0.0,
            0,
            EventKind::PhaseStart {
                mu: "4".into(),
                objective: None,
            },
        );
        t.push(
            0.0,
            1,
            EventKind::Improvement {
                x: vec![1],
                value: 1,
                improvement: 1,
            },
        );
        t.push(
            0.0,
            2,
            EventKind::Improvement {
                x: vec![2],
                value: 2,
                improvement: 1,
            },
        );
        t.push(
            0.0,
            3,
            EventKind::PhaseStart {
                mu: "2".into(),
                objective: None,
            },
        );
        t.push(
            0.0,
            4,
            EventKind::PhaseStart {
                mu: "1".into(),
                objective: None,
            },
        );
        t.push(
            0.0,
            5,
            EventKind::Improvement {
                x: vec![3],
                value: 3,
                improvement: 1,
            },
        );
        assert_eq!(t.improvements_per_phase(), vec![2, 0, 1]);
    }
}
