//! Task alignment and similarity scoring between a business net and
//! reference nets.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::embeddings::{cosine, embed_label, EmbeddingTable, LabelVector};
use crate::petri::{Arc, PetriNet, TransitionId};

pub const DEFAULT_THRESHOLD: f64 = 0.7;
pub const DEFAULT_WEIGHT: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchConfig {
    /// Minimum cosine for a pair to be aligned, in [0, 1].
    pub threshold: f64,
    /// Weight of embedding similarity in the combined score, in [0, 1].
    pub weight: f64,
}

impl Default for MatchConfig {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_THRESHOLD,
            weight: DEFAULT_WEIGHT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlignedPair {
    pub business: TransitionId,
    pub reference: TransitionId,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskAlignment {
    pub pairs: Vec<AlignedPair>,
    pub unmatched_business: Vec<TransitionId>,
    pub unmatched_reference: Vec<TransitionId>,
    pub threshold: f64,
}

impl TaskAlignment {
    pub fn reference_for(&self, business: &str) -> Option<&AlignedPair> {
        self.pairs.iter().find(|p| p.business.as_str() == business)
    }

    pub fn business_for(&self, reference: &str) -> Option<&AlignedPair> {
        self.pairs
            .iter()
            .find(|p| p.reference.as_str() == reference)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchReport {
    pub business_name: String,
    pub reference_name: String,
    pub embedding_similarity: f64,
    pub structure_similarity: f64,
    pub combined: f64,
    pub weight: f64,
    pub alignment: TaskAlignment,
}

fn label_vectors<'a>(
    net: &'a PetriNet,
    table: &EmbeddingTable,
) -> Vec<(&'a TransitionId, LabelVector)> {
    net.visible_transitions()
        .map(|(t, label)| (t, embed_label(label, table)))
        .collect()
}

/// Greedy one-to-one alignment of visible transitions by label cosine.
///
/// Candidate pairs are taken in descending score order, ties broken by
/// (business id, reference id); pairs below `threshold` are never taken.
pub fn align_tasks(
    business: &PetriNet,
    reference: &PetriNet,
    table: &EmbeddingTable,
    threshold: f64,
) -> TaskAlignment {
    let bv = label_vectors(business, table);
    let rv = label_vectors(reference, table);

    let mut candidates: Vec<(f64, &TransitionId, &TransitionId)> = Vec::new();
    for (b, v) in &bv {
        for (r, w) in &rv {
            // Both vectors come from the same table, so dimensions agree.
            let score = cosine(v, w).unwrap_or(0.0);
            if score >= threshold {
                candidates.push((score, b, r));
            }
        }
    }
    candidates.sort_by(|x, y| {
        y.0.total_cmp(&x.0)
            .then_with(|| x.1.cmp(y.1))
            .then_with(|| x.2.cmp(y.2))
    });

    let mut used_b: HashSet<&TransitionId> = HashSet::new();
    let mut used_r: HashSet<&TransitionId> = HashSet::new();
    let mut pairs = Vec::new();
    for (score, b, r) in candidates {
        if used_b.contains(b) || used_r.contains(r) {
            continue;
        }
        used_b.insert(b);
        used_r.insert(r);
        pairs.push(AlignedPair {
            business: b.clone(),
            reference: r.clone(),
            score,
        });
    }

    TaskAlignment {
        unmatched_business: bv
            .iter()
            .filter(|(t, _)| !used_b.contains(t))
            .map(|(t, _)| (*t).clone())
            .collect(),
        unmatched_reference: rv
            .iter()
            .filter(|(t, _)| !used_r.contains(t))
            .map(|(t, _)| (*t).clone())
            .collect(),
        pairs,
        threshold,
    }
}

fn task_denominator(business: &PetriNet, reference: &PetriNet) -> usize {
    business
        .visible_transitions()
        .count()
        .max(reference.visible_transitions().count())
}

/// Sum of pair scores over the larger visible-task count; 1 when both nets
/// have no visible tasks.
pub fn embedding_similarity(
    alignment: &TaskAlignment,
    business: &PetriNet,
    reference: &PetriNet,
) -> f64 {
    let denom = task_denominator(business, reference);
    if denom == 0 {
        return 1.0;
    }
    let total: f64 = alignment.pairs.iter().map(|p| p.score).sum();
    (total / denom as f64).clamp(0.0, 1.0)
}

/// Ordered transition pairs `(t1, t2)` with some place `p` such that
/// `t1 -> p -> t2`.
pub fn causal_pairs(net: &PetriNet) -> HashSet<(&TransitionId, &TransitionId)> {
    let mut producers: HashMap<&str, Vec<&TransitionId>> = HashMap::new();
    let mut consumers: HashMap<&str, Vec<&TransitionId>> = HashMap::new();
    for arc in net.arcs() {
        match arc {
            Arc::Output { transition, place } => producers
                .entry(place.as_str())
                .or_default()
                .push(transition),
            Arc::Input { place, transition } => consumers
                .entry(place.as_str())
                .or_default()
                .push(transition),
        }
    }
    let mut out = HashSet::new();
    for (place, ins) in &producers {
        if let Some(outs) = consumers.get(place) {
            for &a in ins {
                for &b in outs {
                    out.insert((a, b));
                }
            }
        }
    }
    out
}

/// Components of [`structure_similarity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureScore {
    pub node_ratio: f64,
    pub edge_ratio: f64,
}

impl StructureScore {
    pub fn value(&self) -> f64 {
        0.5 * self.node_ratio + 0.5 * self.edge_ratio
    }
}

pub fn structure_score(
    business: &PetriNet,
    reference: &PetriNet,
    alignment: &TaskAlignment,
) -> StructureScore {
    let denom = task_denominator(business, reference);
    let node_ratio = if denom == 0 {
        1.0
    } else {
        alignment.pairs.len() as f64 / denom as f64
    };

    let mapping: HashMap<&str, &TransitionId> = alignment
        .pairs
        .iter()
        .map(|p| (p.business.as_str(), &p.reference))
        .collect();
    let reference_pairs = causal_pairs(reference);
    let mut considered = 0usize;
    let mut preserved = 0usize;
    for (a, b) in causal_pairs(business) {
        if let (Some(ra), Some(rb)) = (mapping.get(a.as_str()), mapping.get(b.as_str())) {
            considered += 1;
            if reference_pairs.contains(&(*ra, *rb)) {
                preserved += 1;
            }
        }
    }
    let edge_ratio = if considered == 0 {
        1.0
    } else {
        preserved as f64 / considered as f64
    };
    StructureScore {
        node_ratio,
        edge_ratio,
    }
}

/// Mean of the matched-task ratio and the fraction of business causal
/// edges (between matched tasks) that the reference preserves.
pub fn structure_similarity(
    business: &PetriNet,
    reference: &PetriNet,
    alignment: &TaskAlignment,
) -> f64 {
    structure_score(business, reference, alignment).value()
}

pub fn match_nets(
    business: &PetriNet,
    reference: &PetriNet,
    table: &EmbeddingTable,
    config: MatchConfig,
) -> MatchReport {
    let alignment = align_tasks(business, reference, table, config.threshold);
    let emb = embedding_similarity(&alignment, business, reference);
    let structure = structure_similarity(business, reference, &alignment);
    let w = config.weight;
    MatchReport {
        business_name: business.name().to_string(),
        reference_name: reference.name().to_string(),
        embedding_similarity: emb,
        structure_similarity: structure,
        combined: (w * emb + (1.0 - w) * structure).clamp(0.0, 1.0),
        weight: w,
        alignment,
    }
}

/// Ranking order: combined desc, embedding similarity desc, reference name asc.
pub fn compare_reports(a: &MatchReport, b: &MatchReport) -> Ordering {
    b.combined
        .total_cmp(&a.combined)
        .then_with(|| b.embedding_similarity.total_cmp(&a.embedding_similarity))
        .then_with(|| a.reference_name.cmp(&b.reference_name))
}

/// Matches every reference (in parallel) and sorts the reports.
pub fn rank_references(
    business: &PetriNet,
    references: &[PetriNet],
    table: &EmbeddingTable,
    config: MatchConfig,
) -> Vec<MatchReport> {
    let mut reports: Vec<MatchReport> = references
        .par_iter()
        .map(|r| match_nets(business, r, table, config))
        .collect();
    reports.sort_by(compare_reports);
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hand-built 3-d table. check·verify cosine: (0.9·0.8 + 0.1·0.5) /
    /// (sqrt(0.82)·sqrt(0.89)) = 0.77 / 0.854283... = 0.901336...
    const TABLE: &str =
        "place 1 0 0\ncheck 0.9 0.1 0\nverify 0.8 0.5 0\nship 0 0 1\npack 0 0.6 0.8\n";

    fn table() -> EmbeddingTable {
        EmbeddingTable::parse(TABLE).unwrap()
    }

    fn chain(name: &str, labels: &[&str]) -> PetriNet {
        let mut net = PetriNet::new(name);
        net.add_place("p0").unwrap();
        for (k, l) in labels.iter().enumerate() {
            let t = format!("t{k}");
            let p = format!("p{}", k + 1);
            net.add_transition(&t, *l).unwrap();
            net.add_place(&p).unwrap();
            net.add_arc(&format!("p{k}"), &t).unwrap();
            net.add_arc(&t, &p).unwrap();
        }
        net
    }

    #[test]
    fn self_alignment_is_identity() {
        let n = chain("n", &["Place", "Check", "Ship"]);
        let a = align_tasks(&n, &n, &table(), 0.7);
        assert_eq!(a.pairs.len(), 3);
        for p in &a.pairs {
            assert_eq!(p.business, p.reference);
            assert_eq!(p.score, 1.0);
        }
        let r = match_nets(&n, &n, &table(), MatchConfig::default());
        assert_eq!(
            (r.embedding_similarity, r.structure_similarity, r.combined),
            (1.0, 1.0, 1.0)
        );
    }

    #[test]
    fn check_verify_pairing_follows_threshold() {
        let expected = 0.77 / (0.82f64.sqrt() * 0.89f64.sqrt());
        let b = chain("b", &["Place", "Check"]);
        let r = chain("r", &["Place", "Verify"]);
        let a = align_tasks(&b, &r, &table(), 0.7);
        assert_eq!(a.pairs.len(), 2);
        assert_eq!(a.pairs[0].score, 1.0);
        assert!((a.pairs[1].score - expected).abs() < 1e-12);
        let a = align_tasks(&b, &r, &table(), 0.95);
        assert_eq!(a.pairs.len(), 1);
        assert_eq!(a.unmatched_business, vec![TransitionId::from("t1")]);
    }

    #[test]
    fn greedy_prefers_best_score() {
        // Check is closest to Place (0.994), but Place<->Place (1.0) is taken
        // first, which leaves Check<->Verify.
        let b = chain("b", &["Check", "Place"]);
        let r = chain("r", &["Place", "Verify"]);
        let a = align_tasks(&b, &r, &table(), 0.0);
        let got: Vec<(&str, &str)> = a
            .pairs
            .iter()
            .map(|p| (p.business.as_str(), p.reference.as_str()))
            .collect();
        assert_eq!(got, [("t1", "t0"), ("t0", "t1")]);
    }

    #[test]
    fn empty_reference() {
        let b = chain("b", &["Place", "Check"]);
        let r = PetriNet::new("empty");
        let a = align_tasks(&b, &r, &table(), 0.7);
        assert!(a.pairs.is_empty());
        assert_eq!(a.unmatched_business.len(), 2);
        assert_eq!(embedding_similarity(&a, &b, &r), 0.0);
        assert_eq!(embedding_similarity(&a, &r, &r), 1.0);
    }

    #[test]
    fn extra_reference_task() {
        let b = chain("b", &["Place", "Check", "Pack", "Ship"]);
        let r = chain("r", &["Place", "Check", "Pack", "Ship", "Zzqx"]);
        let a = align_tasks(&b, &r, &table(), 0.7);
        assert_eq!(embedding_similarity(&a, &b, &r), 0.8);
        let s = structure_score(&b, &r, &a);
        assert_eq!(s.node_ratio, 0.8);
        assert_eq!(s.edge_ratio, 1.0);
        assert_eq!(s.value(), 0.9);
    }

    #[test]
    fn disjoint_labels() {
        let b = chain("b", &["Place"]);
        let r = chain("r", &["Ship"]);
        let a = align_tasks(&b, &r, &table(), 0.7);
        assert!(a.pairs.is_empty());
        assert_eq!(embedding_similarity(&a, &b, &r), 0.0);
        assert_eq!(structure_similarity(&b, &r, &a), 0.5);
    }

    #[test]
    fn reordered_tasks_lose_edges() {
        let b = chain("b", &["Place", "Check", "Ship"]);
        let r = chain("r", &["Check", "Place", "Ship"]);
        let a = align_tasks(&b, &r, &table(), 0.99);
        let s = structure_score(&b, &r, &a);
        assert_eq!(s.node_ratio, 1.0);
        // business edges: Place->Check, Check->Ship; reference keeps neither.
        assert_eq!(s.edge_ratio, 0.0);
    }

    #[test]
    fn weight_one_is_embedding_only() {
        let b = chain("b", &["Place", "Check"]);
        let r = chain("r", &["Place", "Verify", "Ship"]);
        let rep = match_nets(
            &b,
            &r,
            &table(),
            MatchConfig {
                threshold: 0.7,
                weight: 1.0,
            },
        );
        assert_eq!(rep.combined, rep.embedding_similarity);
    }

    #[test]
    fn silent_transitions_are_ignored() {
        let mut b = chain("b", &["Place"]);
        b.add_transition("tau", "τ:else").unwrap();
        b.add_arc("p0", "tau").unwrap();
        b.add_arc("tau", "p1").unwrap();
        let r = chain("r", &["Place"]);
        let a = align_tasks(&b, &r, &table(), 0.0);
        assert_eq!(a.pairs.len(), 1);
        assert!(a.unmatched_business.is_empty());
        assert_eq!(embedding_similarity(&a, &b, &r), 1.0);
    }

    #[test]
    fn ranking_order_and_ties() {
        let b = chain("b", &["Place", "Check", "Ship"]);
        let same = chain("same", &["Place", "Check", "Ship"]);
        let extra = chain("extra", &["Place", "Check", "Ship", "Zzqx"]);
        let disjoint = chain("disjoint", &["Zzqx", "Qqq"]);
        let refs = vec![disjoint, extra, same.clone()];
        let ranked = rank_references(&b, &refs, &table(), MatchConfig::default());
        let names: Vec<&str> = ranked.iter().map(|r| r.reference_name.as_str()).collect();
        assert_eq!(names, ["same", "extra", "disjoint"]);

        let mut twin = same.clone();
        twin.set_name("a-twin");
        let ranked = rank_references(&b, &[same, twin], &table(), MatchConfig::default());
        assert_eq!(ranked[0].reference_name, "a-twin");
        assert_eq!(ranked.len(), 2);
    }
}
