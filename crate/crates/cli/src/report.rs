use std::fmt::Write as _;

use plausible_core::kernel::{Bound, SetKind, Verdict};
use serde::Serialize;

/// Everything printed for one `check` or `query`. The text form, the
/// `key=value` line and the JSON document are all rendered from this.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub verdict: String,
    pub bound_kind: String,
    pub bound_num: Option<String>,
    pub bound_den: Option<String>,
    pub vacuous: bool,
    pub mode: String,
    pub sat_calls: usize,
    pub oracle_used: bool,
    pub trace_path: Option<String>,
    pub set_kind: Option<String>,
    pub set_indices: Vec<usize>,
    pub reason: Option<String>,
    pub oracle_verdict: Option<String>,
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(v: &Verdict, mode: String) -> Self {
        let (kind, num, den) = match &v.bound {
            Some(Bound::Delta(r)) => (
                "delta",
                Some(r.numer().to_string()),
                Some(r.denom().to_string()),
            ),
            Some(Bound::Floor(r)) => (
                "floor",
                Some(r.numer().to_string()),
                Some(r.denom().to_string()),
            ),
            Some(Bound::AnyFloor) => ("any", None, None),
            Some(Bound::Order(m)) => ("order", Some(m.to_string()), Some("1".into())),
            None => ("none", None, None),
        };
        let set = v.trace.sets.first();
        Report {
            verdict: v.answer.to_string(),
            bound_kind: kind.into(),
            bound_num: num,
            bound_den: den,
            vacuous: v.vacuous,
            mode,
            sat_calls: v.trace.sat_calls.len(),
            oracle_used: v.oracle_used,
            trace_path: None,
            set_kind: set.map(|s| match s.kind {
                SetKind::Max => "max".into(),
                SetKind::Min => "min".into(),
            }),
            set_indices: set.map(|s| s.indices.clone()).unwrap_or_default(),
            reason: v.reason.clone(),
            oracle_verdict: None,
            witness: v.witness.as_ref().map(|w| w.to_string()),
            notes: v.trace.notes.clone(),
        }
    }

    fn bound_text(&self) -> Option<String> {
        let frac = || match (&self.bound_num, &self.bound_den) {
            (Some(n), Some(d)) if d == "1" => n.clone(),
            (Some(n), Some(d)) => format!("{n}/{d}"),
            _ => String::new(),
        };
        match self.bound_kind.as_str() {
            "delta" => Some(format!("delta = {}", frac())),
            "floor" => Some(format!("f = {}", frac())),
            "any" => Some("f = any value below 1".into()),
            "order" => Some(format!("order = {}", frac())),
            _ => None,
        }
    }

    pub fn key_values(&self) -> String {
        let opt = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
        let mut line = format!(
            "verdict={} bound_num={} bound_den={} vacuous={} mode={} sat_calls={} oracle_used={} trace_path={}",
            self.verdict,
            opt(&self.bound_num),
            opt(&self.bound_den),
            self.vacuous,
            self.mode,
            self.sat_calls,
            self.oracle_used,
            opt(&self.trace_path),
        );
        if let Some(k) = &self.set_kind {
            let idx: Vec<String> = self.set_indices.iter().map(usize::to_string).collect();
            let _ = write!(line, " set_kind={k} set_indices={}", idx.join(","));
        }
        line
    }

    pub fn text(&self) -> String {
        let mut out = format!("verdict: {}\n", self.verdict);
        if let Some(b) = self.bound_text() {
            let _ = writeln!(out, "bound: {b}");
            if self.vacuous {
                out.push_str("vacuous: the bound is at least 1/2\n");
            }
        }
        if let Some(k) = &self.set_kind {
            let idx: Vec<String> = self.set_indices.iter().map(usize::to_string).collect();
            let name = if k == "max" { "I_max" } else { "I_min" };
            let _ = writeln!(out, "{name} = {{{}}}", idx.join(", "));
        }
        if let Some(r) = &self.reason {
            let _ = writeln!(out, "reason: {r}");
        }
        if let Some(o) = &self.oracle_verdict {
            let _ = writeln!(out, "oracle verdict: {o}");
        }
        if let Some(w) = &self.witness {
            let label = match self.verdict.as_str() {
                "consistent" => "witness",
                _ => "countermodel",
            };
            let _ = writeln!(out, "{label}: {w}");
        }
        out.push_str(&self.key_values());
        out.push('\n');
        out
    }
}
