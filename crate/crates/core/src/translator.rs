//! Assembles extracted actions and conditions into a workflow net.
//!
//! Sequential sentences become chains `place -> transition -> place`. A run
//! of consecutive conditional sentences becomes one exclusive choice: the
//! current place turns into a decision place, each conditional contributes a
//! branch, and all branches converge on a fresh merge place that continues
//! the main chain.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::nlp::{self, ActionPhrase, ConditionClause, NlpError};
use crate::petri::{PetriNet, PlaceId, TransitionId, SILENT_PREFIX};

pub const ELSE_LABEL: &str = "τ:else";
pub const SKIP_LABEL: &str = "τ:skip";
pub const ELSE_GUARD: &str = "otherwise";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslationWarning {
    /// A conditional group with a single branch got a silent else branch.
    SingleBranchCondition {
        sentence_index: usize,
        guard: String,
    },
    /// A conditional without any verb got a silent branch transition.
    EmptyBranch {
        sentence_index: usize,
        guard: String,
    },
}

impl fmt::Display for TranslationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranslationWarning::SingleBranchCondition {
                sentence_index,
                guard,
            } => write!(
                f,
                "sentence {sentence_index}: lone conditional \"{guard}\" has no alternative; \
                 added a silent else branch"
            ),
            TranslationWarning::EmptyBranch {
                sentence_index,
                guard,
            } => write!(
                f,
                "sentence {sentence_index}: conditional \"{guard}\" has no actions; \
                 added a silent branch transition"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationResult {
    pub net: PetriNet,
    /// Source action of every non-silent transition.
    pub action_map: BTreeMap<TransitionId, ActionPhrase>,
    /// Guard text of every transition that leaves a decision place.
    pub branch_guards: BTreeMap<TransitionId, String>,
    pub decision_places: Vec<PlaceId>,
    pub warnings: Vec<TranslationWarning>,
}

/// Translates a process description into a workflow net named `process`.
pub fn translate(text: &str) -> Result<TranslationResult, NlpError> {
    translate_named(text, "process")
}

pub fn translate_named(text: &str, name: &str) -> Result<TranslationResult, NlpError> {
    let analysis = nlp::analyze(text)?;
    let conditions: HashMap<usize, &ConditionClause> = analysis
        .conditions
        .iter()
        .map(|c| (c.sentence_index, c))
        .collect();

    let mut b = Builder::new(name);
    let mut group: Vec<&ConditionClause> = Vec::new();

    for sentence in &analysis.sentences {
        let actions: Vec<&ActionPhrase> = analysis
            .actions
            .iter()
            .filter(|a| a.sentence_index == sentence.index)
            .collect();
        match conditions.get(&sentence.index) {
            None => {
                b.close_group(&mut group);
                b.chain(&actions);
            }
            Some(clause) => {
                let leading: Vec<&ActionPhrase> = actions
                    .iter()
                    .copied()
                    .filter(|a| a.token_index < clause.keyword_index)
                    .collect();
                if !leading.is_empty() {
                    b.close_group(&mut group);
                    b.chain(&leading);
                }
                group.push(clause);
            }
        }
    }
    b.close_group(&mut group);
    Ok(b.finish())
}

struct Builder {
    net: PetriNet,
    places: usize,
    transitions: usize,
    current: PlaceId,
    action_map: BTreeMap<TransitionId, ActionPhrase>,
    branch_guards: BTreeMap<TransitionId, String>,
    decision_places: Vec<PlaceId>,
    warnings: Vec<TranslationWarning>,
}

impl Builder {
    fn new(name: &str) -> Self {
        let mut net = PetriNet::new(name);
        let current = net.add_place("p0").expect("fresh net");
        Self {
            net,
            places: 1,
            transitions: 0,
            current,
            action_map: BTreeMap::new(),
            branch_guards: BTreeMap::new(),
            decision_places: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn place(&mut self) -> PlaceId {
        let id = format!("p{}", self.places);
        self.places += 1;
        self.net.add_place(id).expect("generated ids are unique")
    }

    fn transition(&mut self, label: &str) -> TransitionId {
        let id = format!("t{}", self.transitions);
        self.transitions += 1;
        self.net
            .add_transition(id, label)
            .expect("generated ids are unique")
    }

    fn arc(&mut self, from: &str, to: &str) {
        self.net
            .add_arc(from, to)
            .expect("generated arcs are bipartite");
    }

    fn action(&mut self, action: &ActionPhrase) -> TransitionId {
        let t = self.transition(&action.label);
        self.action_map.insert(t.clone(), action.clone());
        t
    }

    /// Appends `place -> t -> place` for each action on the main chain.
    fn chain(&mut self, actions: &[&ActionPhrase]) {
        for action in actions {
            let t = self.action(action);
            let from = self.current.clone();
            self.arc(from.as_str(), t.as_str());
            let next = self.place();
            self.arc(t.as_str(), next.as_str());
            self.current = next;
        }
    }

    /// Builds one branch out of `decision`; returns its entry and exit
    /// transitions. The exit still has to be connected to the merge place.
    fn branch(
        &mut self,
        decision: &PlaceId,
        actions: &[&ActionPhrase],
        silent: &str,
    ) -> (TransitionId, TransitionId) {
        let mut ts: Vec<TransitionId> = Vec::new();
        if actions.is_empty() {
            ts.push(self.transition(silent));
        } else {
            for a in actions {
                ts.push(self.action(a));
            }
        }
        self.arc(decision.as_str(), ts[0].as_str());
        for pair in ts.windows(2) {
            let p = self.place();
            self.arc(pair[0].as_str(), p.as_str());
            self.arc(p.as_str(), pair[1].as_str());
        }
        (ts[0].clone(), ts[ts.len() - 1].clone())
    }

    fn close_group(&mut self, group: &mut Vec<&ConditionClause>) {
        if group.is_empty() {
            return;
        }
        let decision = self.current.clone();
        let mut exits = Vec::new();
        for clause in group.iter() {
            let actions: Vec<&ActionPhrase> = clause.branch_actions().collect();
            if actions.is_empty() {
                self.warnings.push(TranslationWarning::EmptyBranch {
                    sentence_index: clause.sentence_index,
                    guard: clause.guard.clone(),
                });
            }
            let (entry, exit) = self.branch(&decision, &actions, SKIP_LABEL);
            self.branch_guards.insert(entry, clause.guard.clone());
            exits.push(exit);
        }
        if let [only] = group.as_slice() {
            self.warnings
                .push(TranslationWarning::SingleBranchCondition {
                    sentence_index: only.sentence_index,
                    guard: only.guard.clone(),
                });
            let (entry, exit) = self.branch(&decision, &[], ELSE_LABEL);
            self.branch_guards.insert(entry, ELSE_GUARD.to_string());
            exits.push(exit);
        }
        let merge = self.place();
        for exit in exits {
            self.arc(exit.as_str(), merge.as_str());
        }
        self.decision_places.push(decision);
        self.current = merge;
        group.clear();
    }

    fn finish(self) -> TranslationResult {
        debug_assert!(self
            .net
            .transitions()
            .all(|(t, l)| self.action_map.contains_key(t) || l.starts_with(SILENT_PREFIX)));
        TranslationResult {
            net: self.net,
            action_map: self.action_map,
            branch_guards: self.branch_guards,
            decision_places: self.decision_places,
            warnings: self.warnings,
        }
    }
}
