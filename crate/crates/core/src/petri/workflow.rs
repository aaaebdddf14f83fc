use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{PetriNet, PlaceId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorkflowDiagnostics {
    pub is_workflow_net: bool,
    pub source: Option<PlaceId>,
    pub sink: Option<PlaceId>,
    pub violations: Vec<String>,
}

/// Checks the workflow-net conditions: a unique source place, a unique sink
/// place, and every node on a directed path from source to sink.
pub fn validate_workflow(net: &PetriNet) -> WorkflowDiagnostics {
    let mut violations = Vec::new();
    let mut has_in: HashSet<&str> = HashSet::new();
    let mut has_out: HashSet<&str> = HashSet::new();
    for arc in net.arcs() {
        let (from, to) = arc.endpoints();
        has_out.insert(from);
        has_in.insert(to);
    }

    let sources: Vec<&PlaceId> = net
        .places()
        .filter(|p| !has_in.contains(p.as_str()))
        .collect();
    let sinks: Vec<&PlaceId> = net
        .places()
        .filter(|p| !has_out.contains(p.as_str()))
        .collect();

    let source = unique(&sources, "source", &mut violations);
    let sink = unique(&sinks, "sink", &mut violations);

    if let (Some(src), Some(snk)) = (source, sink) {
        if src == snk {
            violations.push(format!("source and sink coincide at place {src}"));
        } else {
            let forward = reachable(net, src.as_str(), Direction::Forward);
            let backward = reachable(net, snk.as_str(), Direction::Backward);
            let nodes = net
                .places()
                .map(|p| p.as_str())
                .chain(net.transitions().map(|(t, _)| t.as_str()));
            for node in nodes {
                if !forward.contains(node) {
                    violations.push(format!("{node} is not reachable from source {src}"));
                } else if !backward.contains(node) {
                    violations.push(format!("{node} cannot reach sink {snk}"));
                }
            }
        }
    }

    WorkflowDiagnostics {
        is_workflow_net: violations.is_empty(),
        source: source.cloned(),
        sink: sink.cloned(),
        violations,
    }
}

fn unique<'a>(
    candidates: &[&'a PlaceId],
    role: &str,
    violations: &mut Vec<String>,
) -> Option<&'a PlaceId> {
    match candidates {
        [] => {
            violations.push(format!("no {role} place"));
            None
        }
        [one] => Some(one),
        many => {
            let names: Vec<&str> = many.iter().map(|p| p.as_str()).collect();
            violations.push(format!("multiple {role} candidates: {}", names.join(", ")));
            None
        }
    }
}

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Backward,
}

fn reachable<'a>(net: &'a PetriNet, start: &'a str, dir: Direction) -> HashSet<&'a str> {
    let mut adj: HashMap<&str, Vec<&str>> = HashMap::new();
    for arc in net.arcs() {
        let (from, to) = arc.endpoints();
        let (a, b) = match dir {
            Direction::Forward => (from, to),
            Direction::Backward => (to, from),
        };
        adj.entry(a).or_default().push(b);
    }
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(n) = queue.pop_front() {
        for &next in adj.get(n).into_iter().flatten() {
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn linear_net_is_workflow() {
        let d = validate_workflow(&linear());
        assert!(d.is_workflow_net, "{:?}", d.violations);
        assert_eq!(d.source, Some(PlaceId::from("i")));
        assert_eq!(d.sink, Some(PlaceId::from("o")));
    }

    #[test]
    fn two_isolated_places() {
        let mut net = PetriNet::new("n");
        net.add_place("a").unwrap();
        net.add_place("b").unwrap();
        let d = validate_workflow(&net);
        assert!(!d.is_workflow_net);
        assert!(d
            .violations
            .iter()
            .any(|v| v.starts_with("multiple source candidates")));
        assert!(d
            .violations
            .iter()
            .any(|v| v.starts_with("multiple sink candidates")));
    }

    #[test]
    fn empty_net_has_no_source() {
        let d = validate_workflow(&PetriNet::new("e"));
        assert_eq!(d.violations, vec!["no source place", "no sink place"]);
    }

    #[test]
    fn single_place_is_rejected() {
        let mut net = PetriNet::new("n");
        net.add_place("only").unwrap();
        let d = validate_workflow(&net);
        assert!(!d.is_workflow_net);
    }

    #[test]
    fn dangling_transition_is_reported() {
        let mut net = linear();
        net.add_transition("x", "Orphan").unwrap();
        net.add_arc("x", "o").unwrap();
        let d = validate_workflow(&net);
        assert!(!d.is_workflow_net);
        assert_eq!(d.violations, vec!["x is not reachable from source i"]);
    }

    #[test]
    fn xor_is_workflow() {
        assert!(validate_workflow(&xor()).is_workflow_net);
    }
}
