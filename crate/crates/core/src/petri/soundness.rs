//! Bounded state-space exploration for classical workflow-net soundness.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{validate_workflow, Marking, PetriError, PetriNet, PlaceId, TransitionId};

/// Default cap on explored markings.
pub const DEFAULT_BOUND: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Sound,
    Unsound,
    /// The marking bound was hit before the state space was exhausted.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub verdict: Verdict,
    pub explored_markings: usize,
    /// Every explored marking can still reach `{sink:1}`.
    pub option_to_complete: bool,
    /// No explored marking marks the sink together with any other token.
    pub proper_completion: bool,
    /// Transitions that never fired during exploration, in net order.
    pub dead_transitions: Vec<TransitionId>,
    /// Markings from which `{sink:1}` is unreachable (at most a few).
    pub stuck_markings: Vec<Marking>,
    /// Markings that put a token on the sink alongside other tokens.
    pub improper_markings: Vec<Marking>,
}

const MAX_WITNESSES: usize = 5;

struct Compiled<'a> {
    places: Vec<&'a PlaceId>,
    /// (transition, input place indices, output place indices)
    transitions: Vec<(&'a TransitionId, Vec<usize>, Vec<usize>)>,
}

impl<'a> Compiled<'a> {
    fn new(net: &'a PetriNet) -> Self {
        let places: Vec<&PlaceId> = net.places().collect();
        let index: HashMap<&str, usize> = places
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        let transitions = net
            .transitions()
            .map(|(t, _)| {
                let ins = net
                    .preset(t.as_str())
                    .iter()
                    .map(|p| index[p.as_str()])
                    .collect();
                let outs = net
                    .postset(t.as_str())
                    .iter()
                    .map(|p| index[p.as_str()])
                    .collect();
                (t, ins, outs)
            })
            .collect();
        Self {
            places,
            transitions,
        }
    }

    fn to_marking(&self, state: &[u32]) -> Marking {
        let mut m = Marking::new();
        for (p, &n) in self.places.iter().zip(state) {
            m.set((*p).clone(), n);
        }
        m
    }
}

/// Explores markings reachable from `{source:1}`, visiting at most `bound`
/// distinct markings.
pub fn check_soundness(net: &PetriNet, bound: usize) -> Result<SoundnessReport, PetriError> {
    if bound == 0 {
        return Err(PetriError::InvalidBound);
    }
    let diag = validate_workflow(net);
    let (Some(source), Some(sink)) = (diag.source.as_ref(), diag.sink.as_ref()) else {
        return Err(PetriError::NotWorkflowNet(diag.violations));
    };
    if !diag.is_workflow_net {
        return Err(PetriError::NotWorkflowNet(diag.violations));
    }

    let compiled = Compiled::new(net);
    let src = compiled.places.iter().position(|p| *p == source).unwrap();
    let snk = compiled.places.iter().position(|p| *p == sink).unwrap();

    let mut initial = vec![0u32; compiled.places.len()];
    initial[src] = 1;
    let mut final_state = vec![0u32; compiled.places.len()];
    final_state[snk] = 1;

    let mut states: Vec<Vec<u32>> = vec![initial.clone()];
    let mut ids: HashMap<Vec<u32>, usize> = HashMap::from([(initial, 0)]);
    let mut successors: Vec<Vec<usize>> = vec![Vec::new()];
    let mut fired = vec![false; compiled.transitions.len()];
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;

    'explore: while let Some(current) = queue.pop_front() {
        for (k, (_, ins, outs)) in compiled.transitions.iter().enumerate() {
            let state = &states[current];
            if ins.iter().any(|&p| state[p] == 0) {
                continue;
            }
            let mut next = state.clone();
            for &p in ins {
                next[p] -= 1;
            }
            for &p in outs {
                next[p] += 1;
            }
            fired[k] = true;
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= bound {
                        truncated = true;
                        break 'explore;
                    }
                    let id = states.len();
                    ids.insert(next.clone(), id);
                    states.push(next);
                    successors.push(Vec::new());
                    queue.push_back(id);
                    id
                }
            };
            successors[current].push(id);
        }
    }

    // Backward reachability of the final marking over the explored graph.
    let mut can_finish = vec![false; states.len()];
    if let Some(&fin) = ids.get(&final_state) {
        let mut predecessors: Vec<Vec<usize>> = vec![Vec::new(); states.len()];
        for (from, succ) in successors.iter().enumerate() {
            for &to in succ {
                predecessors[to].push(from);
            }
        }
        can_finish[fin] = true;
        let mut queue = VecDeque::from([fin]);
        while let Some(s) = queue.pop_front() {
            for &p in &predecessors[s] {
                if !can_finish[p] {
                    can_finish[p] = true;
                    queue.push_back(p);
                }
            }
        }
    }

    let stuck: Vec<usize> = (0..states.len()).filter(|&s| !can_finish[s]).collect();
    let improper: Vec<usize> = (0..states.len())
        .filter(|&s| {
            let st = &states[s];
            st[snk] > 0 && st.iter().map(|&n| u64::from(n)).sum::<u64>() > 1
        })
        .collect();
    let dead_transitions: Vec<TransitionId> = compiled
        .transitions
        .iter()
        .zip(&fired)
        .filter(|(_, &f)| !f)
        .map(|((t, _, _), _)| (*t).clone())
        .collect();

    let option_to_complete = stuck.is_empty();
    let proper_completion = improper.is_empty();
    let verdict = if truncated {
        Verdict::Inconclusive
    } else if option_to_complete && proper_completion && dead_transitions.is_empty() {
        Verdict::Sound
    } else {
        Verdict::Unsound
    };

    let witnesses = |idx: &[usize]| -> Vec<Marking> {
        idx.iter()
            .take(MAX_WITNESSES)
            .map(|&s| compiled.to_marking(&states[s]))
            .collect()
    };

    Ok(SoundnessReport {
        verdict,
        explored_markings: states.len(),
        option_to_complete,
        proper_completion,
        dead_transitions,
        stuck_markings: witnesses(&stuck),
        improper_markings: witnesses(&improper),
    })
}
