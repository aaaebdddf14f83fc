use std::fmt;
use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use procmatch_core::model_io::{net_to_string, stem_name};
use procmatch_core::{
    check_soundness, export_dot, load_embeddings, load_net, load_reference_library, match_nets,
    rank_references, translate_named, validate_workflow, AlignmentSide, EmbeddingError,
    EmbeddingTable, Highlight, Marking, MatchConfig, ModelIoError, PetriNet, Verdict,
};

use crate::output;

/// Failures that end a command early.
#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or unreadable input file: exit 2.
    Usage(String),
    /// Anything the pipeline rejects: exit 1.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

pub struct ScoringOptions {
    pub embeddings: PathBuf,
    pub threshold: f64,
    pub weight: f64,
}

impl ScoringOptions {
    fn config(&self) -> MatchConfig {
        MatchConfig {
            threshold: self.threshold,
            weight: self.weight,
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))
}

fn read_net(path: &Path) -> Result<PetriNet, CliError> {
    match load_net(path) {
        Ok((net, _)) => Ok(net),
        Err(ModelIoError::Io { source, .. }) => Err(CliError::Usage(format!(
            "cannot read {}: {source}",
            path.display()
        ))),
        Err(e) => Err(CliError::Domain(format!("{}: {e}", path.display()))),
    }
}

fn read_embeddings(path: &Path) -> Result<EmbeddingTable, CliError> {
    load_embeddings(path).map_err(|e| match e {
        EmbeddingError::Io(io) if io.kind() != ErrorKind::InvalidData => {
            CliError::Usage(format!("cannot read {}: {io}", path.display()))
        }
        e => CliError::Domain(format!("{}: {e}", path.display())),
    })
}

pub fn translate(input: &Path, out: Option<&Path>, dot: Option<&Path>) -> Result<u8, CliError> {
    let text = read_input(input)?;
    let result =
        translate_named(&text, &stem_name(input)).map_err(|e| CliError::Domain(e.to_string()))?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    let net = &result.net;
    let marking = validate_workflow(net)
        .source
        .map(|s| Marking::new().with(s, 1));
    let document = net_to_string(net, marking.as_ref());
    match out {
        Some(path) => {
            write_output(path, &document)?;
            eprintln!(
                "wrote {} ({} places, {} transitions)",
                path.display(),
                net.place_count(),
                net.transition_count()
            );
        }
        None => print!("{document}"),
    }
    if let Some(path) = dot {
        write_output(path, &export_dot(net, None))?;
    }
    Ok(0)
}

pub fn match_one(
    business: &Path,
    reference: &Path,
    scoring: &ScoringOptions,
    json: bool,
    dot: Option<&Path>,
) -> Result<u8, CliError> {
    let business_net = read_net(business)?;
    let reference_net = read_net(reference)?;
    let table = read_embeddings(&scoring.embeddings)?;
    let report = match_nets(&business_net, &reference_net, &table, scoring.config());
    if json {
        print!(
            "{}",
            output::match_json(&report, &business_net, &reference_net, scoring.threshold)
        );
    } else {
        print!(
            "{}",
            output::match_table(&report, &business_net, &reference_net)
        );
    }
    if let Some(path) = dot {
        let highlight = Highlight {
            alignment: &report.alignment,
            side: AlignmentSide::Business,
        };
        write_output(path, &export_dot(&business_net, Some(highlight)))?;
    }
    Ok(0)
}

pub fn rank(
    business: &Path,
    refs: &Path,
    scoring: &ScoringOptions,
    top: Option<usize>,
    json: bool,
) -> Result<u8, CliError> {
    let business_net = read_net(business)?;
    if !refs.is_dir() {
        return Err(CliError::Usage(format!(
            "{} is not a directory",
            refs.display()
        )));
    }
    let library = load_reference_library(refs).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some((path, e)) = library.errors.first() {
        for (p, e) in &library.errors {
            eprintln!("error: {}: {e}", p.display());
        }
        return Err(CliError::Domain(format!(
            "{} reference file(s) could not be loaded (first: {}: {e})",
            library.errors.len(),
            path.display()
        )));
    }
    if library.nets.is_empty() {
        return Err(CliError::Domain(format!(
            "reference library {} is empty (no *.net.json files)",
            refs.display()
        )));
    }
    let table = read_embeddings(&scoring.embeddings)?;
    let mut reports = rank_references(&business_net, &library.nets, &table, scoring.config());
    if let Some(k) = top {
        reports.truncate(k);
    }
    if json {
        print!("{}", output::rank_json(&business_net, &reports, scoring));
    } else {
        print!("{}", output::rank_table(&reports));
    }
    Ok(0)
}

pub fn check(path: &Path, bound: usize, json: bool) -> Result<u8, CliError> {
    let net = read_net(path)?;
    let diagnostics = validate_workflow(&net);
    let report = if diagnostics.is_workflow_net {
        Some(check_soundness(&net, bound).map_err(|e| CliError::Domain(e.to_string()))?)
    } else {
        None
    };
    if json {
        print!(
            "{}",
            output::check_json(&net, &diagnostics, report.as_ref(), bound)
        );
    } else {
        print!(
            "{}",
            output::check_text(&net, &diagnostics, report.as_ref(), bound)
        );
    }
    Ok(match report.map(|r| r.verdict) {
        Some(Verdict::Sound) => 0,
        Some(Verdict::Inconclusive) => 3,
        Some(Verdict::Unsound) | None => 1,
    })
}
