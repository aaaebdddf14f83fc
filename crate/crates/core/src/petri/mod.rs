//! Place/transition nets with unit arc weights, firing semantics, workflow
//! validation and bounded soundness checking.

mod soundness;
mod workflow;

use std::collections::BTreeMap;
use std::fmt;

use indexmap::{IndexMap, IndexSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use soundness::{check_soundness, SoundnessReport, Verdict, DEFAULT_BOUND};
pub use workflow::{validate_workflow, WorkflowDiagnostics};

/// Label prefix reserved for silent routing transitions.
pub const SILENT_PREFIX: &str = "τ:";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PetriError {
    #[error("duplicate node id `{0}`")]
    DuplicateId(String),
    #[error("node ids must be nonempty")]
    EmptyId,
    #[error("transition `{0}` has an empty label")]
    EmptyLabel(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("arc {from} -> {to} connects two {kind}s")]
    BipartiteViolation {
        from: String,
        to: String,
        kind: &'static str,
    },
    #[error("transition `{0}` is not enabled")]
    NotEnabled(TransitionId),
    #[error("marking refers to unknown place `{0}`")]
    InvalidMarking(PlaceId),
    #[error("not a workflow net: {}", .0.join("; "))]
    NotWorkflowNet(Vec<String>),
    #[error("exploration bound must be at least 1")]
    InvalidBound,
}

macro_rules! string_id {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_string())
            }
        }

        impl std::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

string_id!(PlaceId);
string_id!(TransitionId);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Arc {
    Input {
        place: PlaceId,
        transition: TransitionId,
    },
    Output {
        transition: TransitionId,
        place: PlaceId,
    },
}

impl Arc {
    /// Source and target node ids.
    pub fn endpoints(&self) -> (&str, &str) {
        match self {
            Arc::Input { place, transition } => (place.as_str(), transition.as_str()),
            Arc::Output { transition, place } => (transition.as_str(), place.as_str()),
        }
    }
}

/// A place/transition net. Places and transitions share one id namespace.
///
/// Equality is structural: insertion order does not matter.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PetriNet {
    name: String,
    places: IndexSet<PlaceId>,
    transitions: IndexMap<TransitionId, String>,
    arcs: IndexSet<Arc>,
}

impl PetriNet {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    fn check_fresh(&self, id: &str) -> Result<(), PetriError> {
        if id.is_empty() {
            return Err(PetriError::EmptyId);
        }
        if self.has_place(id) || self.has_transition(id) {
            return Err(PetriError::DuplicateId(id.to_string()));
        }
        Ok(())
    }

    pub fn add_place(&mut self, id: impl Into<String>) -> Result<PlaceId, PetriError> {
        let id = id.into();
        self.check_fresh(&id)?;
        let id = PlaceId(id);
        self.places.insert(id.clone());
        Ok(id)
    }

    pub fn add_transition(
        &mut self,
        id: impl Into<String>,
        label: impl Into<String>,
    ) -> Result<TransitionId, PetriError> {
        let id = id.into();
        let label = label.into();
        self.check_fresh(&id)?;
        if label.trim().is_empty() {
            return Err(PetriError::EmptyLabel(id));
        }
        let id = TransitionId(id);
        self.transitions.insert(id.clone(), label);
        Ok(id)
    }

    /// Adds an arc between two existing nodes of different kinds. Adding an
    /// existing arc again is a no-op.
    pub fn add_arc(&mut self, from: &str, to: &str) -> Result<(), PetriError> {
        let arc = match (self.node_kind(from), self.node_kind(to)) {
            (None, _) => return Err(PetriError::UnknownNode(from.to_string())),
            (_, None) => return Err(PetriError::UnknownNode(to.to_string())),
            (Some(NodeKind::Place), Some(NodeKind::Transition)) => Arc::Input {
                place: PlaceId::from(from),
                transition: TransitionId::from(to),
            },
            (Some(NodeKind::Transition), Some(NodeKind::Place)) => Arc::Output {
                transition: TransitionId::from(from),
                place: PlaceId::from(to),
            },
            (Some(kind), Some(_)) => {
                return Err(PetriError::BipartiteViolation {
                    from: from.to_string(),
                    to: to.to_string(),
                    kind: kind.as_str(),
                })
            }
        };
        self.arcs.insert(arc);
        Ok(())
    }

    pub fn node_kind(&self, id: &str) -> Option<NodeKind> {
        if self.has_place(id) {
            Some(NodeKind::Place)
        } else if self.has_transition(id) {
            Some(NodeKind::Transition)
        } else {
            None
        }
    }

    pub fn has_place(&self, id: &str) -> bool {
        self.places.contains(id)
    }

    pub fn has_transition(&self, id: &str) -> bool {
        self.transitions.contains_key(id)
    }

    /// Places in insertion order.
    pub fn places(&self) -> impl Iterator<Item = &PlaceId> {
        self.places.iter()
    }

    /// Transitions and their labels in insertion order.
    pub fn transitions(&self) -> impl Iterator<Item = (&TransitionId, &str)> {
        self.transitions.iter().map(|(id, l)| (id, l.as_str()))
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.iter()
    }

    pub fn place_count(&self) -> usize {
        self.places.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn label(&self, t: &str) -> Option<&str> {
        self.transitions.get(t).map(String::as_str)
    }

    pub fn is_silent(&self, t: &str) -> bool {
        self.label(t).is_some_and(is_silent_label)
    }

    /// Transitions whose labels carry business meaning, in insertion order.
    pub fn visible_transitions(&self) -> impl Iterator<Item = (&TransitionId, &str)> {
        self.transitions().filter(|(_, l)| !is_silent_label(l))
    }

    /// Input places of a transition.
    pub fn preset(&self, t: &str) -> Vec<&PlaceId> {
        self.arcs
            .iter()
            .filter_map(|a| match a {
                Arc::Input { place, transition } if transition.as_str() == t => Some(place),
                _ => None,
            })
            .collect()
    }

    /// Output places of a transition.
    pub fn postset(&self, t: &str) -> Vec<&PlaceId> {
        self.arcs
            .iter()
            .filter_map(|a| match a {
                Arc::Output { transition, place } if transition.as_str() == t => Some(place),
                _ => None,
            })
            .collect()
    }

    /// Transitions producing into a place.
    pub fn producers(&self, p: &str) -> Vec<&TransitionId> {
        self.arcs
            .iter()
            .filter_map(|a| match a {
                Arc::Output { transition, place } if place.as_str() == p => Some(transition),
                _ => None,
            })
            .collect()
    }

    /// Transitions consuming from a place.
    pub fn consumers(&self, p: &str) -> Vec<&TransitionId> {
        self.arcs
            .iter()
            .filter_map(|a| match a {
                Arc::Input { place, transition } if place.as_str() == p => Some(transition),
                _ => None,
            })
            .collect()
    }
}

pub fn is_silent_label(label: &str) -> bool {
    label.starts_with(SILENT_PREFIX)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Place,
    Transition,
}

impl NodeKind {
    fn as_str(self) -> &'static str {
        match self {
            NodeKind::Place => "place",
            NodeKind::Transition => "transition",
        }
    }
}

/// Token counts per place. Places without tokens are not stored, so two
/// markings are equal iff every place holds the same count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Marking(BTreeMap<PlaceId, u32>);

impl Marking {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, place: impl Into<PlaceId>, tokens: u32) -> Self {
        self.set(place.into(), tokens);
        self
    }

    pub fn get(&self, place: &str) -> u32 {
        self.0.get(place).copied().unwrap_or(0)
    }

    pub fn set(&mut self, place: PlaceId, tokens: u32) {
        if tokens == 0 {
            self.0.remove(&place);
        } else {
            self.0.insert(place, tokens);
        }
    }

    pub fn total(&self) -> u64 {
        self.0.values().map(|&n| u64::from(n)).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PlaceId, u32)> {
        self.0.iter().map(|(p, &n)| (p, n))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, net: &PetriNet) -> Result<(), PetriError> {
        match self.0.keys().find(|p| !net.has_place(p.as_str())) {
            Some(p) => Err(PetriError::InvalidMarking(p.clone())),
            None => Ok(()),
        }
    }
}

impl From<String> for PlaceId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, n)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}:{n}")?;
        }
        f.write_str("}")
    }
}

/// Transitions enabled in `m`, in net order.
pub fn enabled(net: &PetriNet, m: &Marking) -> Vec<TransitionId> {
    net.transitions()
        .filter(|(t, _)| {
            net.preset(t.as_str())
                .iter()
                .all(|p| m.get(p.as_str()) >= 1)
        })
        .map(|(t, _)| t.clone())
        .collect()
}

/// Fires `t`, returning the successor marking. `m` is left untouched.
pub fn fire(net: &PetriNet, m: &Marking, t: &str) -> Result<Marking, PetriError> {
    if !net.has_transition(t) {
        return Err(PetriError::UnknownNode(t.to_string()));
    }
    let preset = net.preset(t);
    if preset.iter().any(|p| m.get(p.as_str()) == 0) {
        return Err(PetriError::NotEnabled(TransitionId::from(t)));
    }
    let mut next = m.clone();
    for p in preset {
        next.set(p.clone(), next.get(p.as_str()) - 1);
    }
    for p in net.postset(t) {
        next.set(p.clone(), next.get(p.as_str()) + 1);
    }
    Ok(next)
}
