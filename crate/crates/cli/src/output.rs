//! Human tables and `--json` documents. JSON documents use fixed key order
//! and end with a newline.

use std::fmt::Write;

use serde::Serialize;

use procmatch_core::{MatchReport, PetriNet, SoundnessReport, Verdict, WorkflowDiagnostics};

use crate::commands::ScoringOptions;

pub const JSON_SCHEMA_VERSION: &str = "1";

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report is serializable");
    s.push('\n');
    s
}

fn label<'a>(net: &'a PetriNet, id: &str) -> &'a str {
    net.label(id).unwrap_or("")
}

#[derive(Serialize)]
struct PairJson<'a> {
    business: &'a str,
    business_label: &'a str,
    reference: &'a str,
    reference_label: &'a str,
    score: f64,
}

#[derive(Serialize)]
struct TaskJson<'a> {
    id: &'a str,
    label: &'a str,
}

#[derive(Serialize)]
struct UnmatchedJson<'a> {
    business: Vec<TaskJson<'a>>,
    reference: Vec<TaskJson<'a>>,
}

#[derive(Serialize)]
struct MatchJson<'a> {
    schema_version: &'static str,
    business: &'a str,
    reference: &'a str,
    embedding_similarity: f64,
    structure_similarity: f64,
    combined: f64,
    weight: f64,
    threshold: f64,
    pairs: Vec<PairJson<'a>>,
    unmatched: UnmatchedJson<'a>,
}

pub fn match_json(
    report: &MatchReport,
    business: &PetriNet,
    reference: &PetriNet,
    threshold: f64,
) -> String {
    let a = &report.alignment;
    let tasks =
        |net: &'_ PetriNet, ids: &'_ [procmatch_core::TransitionId]| -> Vec<(String, String)> {
            ids.iter()
                .map(|t| (t.to_string(), label(net, t.as_str()).to_string()))
                .collect()
        };
    let ub = tasks(business, &a.unmatched_business);
    let ur = tasks(reference, &a.unmatched_reference);
    let doc = MatchJson {
        schema_version: JSON_SCHEMA_VERSION,
        business: &report.business_name,
        reference: &report.reference_name,
        embedding_similarity: report.embedding_similarity,
        structure_similarity: report.structure_similarity,
        combined: report.combined,
        weight: report.weight,
        threshold,
        pairs: a
            .pairs
            .iter()
            .map(|p| PairJson {
                business: p.business.as_str(),
                business_label: label(business, p.business.as_str()),
                reference: p.reference.as_str(),
                reference_label: label(reference, p.reference.as_str()),
                score: p.score,
            })
            .collect(),
        unmatched: UnmatchedJson {
            business: ub.iter().map(|(id, l)| TaskJson { id, label: l }).collect(),
            reference: ur.iter().map(|(id, l)| TaskJson { id, label: l }).collect(),
        },
    };
    to_json(&doc)
}

pub fn match_table(report: &MatchReport, business: &PetriNet, reference: &PetriNet) -> String {
    let a = &report.alignment;
    let mut out = String::new();
    let _ = writeln!(out, "business:  {}", report.business_name);
    let _ = writeln!(out, "reference: {}", report.reference_name);
    let _ = writeln!(
        out,
        "embedding similarity  {:.4}",
        report.embedding_similarity
    );
    let _ = writeln!(
        out,
        "structure similarity  {:.4}",
        report.structure_similarity
    );
    let _ = writeln!(
        out,
        "combined (w={:.2})     {:.4}",
        report.weight, report.combined
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:<28} {:<28} {:>6}",
        "business task", "reference task", "score"
    );
    for p in &a.pairs {
        let _ = writeln!(
            out,
            "{:<28} {:<28} {:>6.4}",
            format!("{} {}", p.business, label(business, p.business.as_str())),
            format!("{} {}", p.reference, label(reference, p.reference.as_str())),
            p.score
        );
    }
    for t in &a.unmatched_business {
        let _ = writeln!(
            out,
            "{:<28} {:<28} {:>6}",
            format!("{} {}", t, label(business, t.as_str())),
            "-",
            "-"
        );
    }
    for t in &a.unmatched_reference {
        let _ = writeln!(
            out,
            "{:<28} {:<28} {:>6}",
            "-",
            format!("{} {}", t, label(reference, t.as_str())),
            "-"
        );
    }
    out
}

#[derive(Serialize)]
struct RankEntry<'a> {
    rank: usize,
    reference: &'a str,
    embedding_similarity: f64,
    structure_similarity: f64,
    combined: f64,
}

#[derive(Serialize)]
struct RankJson<'a> {
    schema_version: &'static str,
    business: &'a str,
    weight: f64,
    threshold: f64,
    rankings: Vec<RankEntry<'a>>,
}

pub fn rank_json(business: &PetriNet, reports: &[MatchReport], scoring: &ScoringOptions) -> String {
    to_json(&RankJson {
        schema_version: JSON_SCHEMA_VERSION,
        business: business.name(),
        weight: scoring.weight,
        threshold: scoring.threshold,
        rankings: reports
            .iter()
            .enumerate()
            .map(|(i, r)| RankEntry {
                rank: i + 1,
                reference: &r.reference_name,
                embedding_similarity: r.embedding_similarity,
                structure_similarity: r.structure_similarity,
                combined: r.combined,
            })
            .collect(),
    })
}

pub fn rank_table(reports: &[MatchReport]) -> String {
    let width = reports
        .iter()
        .map(|r| r.reference_name.chars().count())
        .max()
        .unwrap_or(0)
        .max("reference".len());
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4}  {:<width$}  {:>9}  {:>9}  {:>8}",
        "rank", "reference", "embedding", "structure", "combined"
    );
    for (i, r) in reports.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>4}  {:<width$}  {:>9.4}  {:>9.4}  {:>8.4}",
            i + 1,
            r.reference_name,
            r.embedding_similarity,
            r.structure_similarity,
            r.combined
        );
    }
    out
}

#[derive(Serialize)]
struct CheckJson<'a> {
    schema_version: &'static str,
    net: &'a str,
    bound: usize,
    workflow: &'a WorkflowDiagnostics,
    soundness: Option<&'a SoundnessReport>,
}

pub fn check_json(
    net: &PetriNet,
    diagnostics: &WorkflowDiagnostics,
    report: Option<&SoundnessReport>,
    bound: usize,
) -> String {
    to_json(&CheckJson {
        schema_version: JSON_SCHEMA_VERSION,
        net: net.name(),
        bound,
        workflow: diagnostics,
        soundness: report,
    })
}

pub fn check_text(
    net: &PetriNet,
    diagnostics: &WorkflowDiagnostics,
    report: Option<&SoundnessReport>,
    bound: usize,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "net {}: {} places, {} transitions, {} arcs",
        net.name(),
        net.place_count(),
        net.transition_count(),
        net.arc_count()
    );
    if !diagnostics.is_workflow_net {
        let _ = writeln!(out, "not a workflow net:");
        for v in &diagnostics.violations {
            let _ = writeln!(out, "  - {v}");
        }
        return out;
    }
    let (source, sink) = (
        diagnostics.source.as_ref().unwrap(),
        diagnostics.sink.as_ref().unwrap(),
    );
    let _ = writeln!(out, "workflow net: source {source}, sink {sink}");
    let Some(r) = report else { return out };
    let verdict = match r.verdict {
        Verdict::Sound => "sound",
        Verdict::Unsound => "unsound",
        Verdict::Inconclusive => "inconclusive",
    };
    let _ = writeln!(
        out,
        "soundness: {verdict} ({} markings explored, bound {bound})",
        r.explored_markings
    );
    if r.verdict == Verdict::Inconclusive {
        let _ = writeln!(
            out,
            "  marking bound reached before the state space was exhausted"
        );
        return out;
    }
    let _ = writeln!(
        out,
        "  option to complete: {}",
        yes_no(r.option_to_complete)
    );
    for m in &r.stuck_markings {
        let _ = writeln!(out, "    cannot complete from {m}");
    }
    let _ = writeln!(out, "  proper completion:  {}", yes_no(r.proper_completion));
    for m in &r.improper_markings {
        let _ = writeln!(out, "    improper marking {m}");
    }
    if r.dead_transitions.is_empty() {
        let _ = writeln!(out, "  dead transitions:   none");
    } else {
        for t in &r.dead_transitions {
            let _ = writeln!(out, "  dead transition: {t} ({})", label(net, t.as_str()));
        }
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
