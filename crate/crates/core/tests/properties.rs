use std::collections::HashSet;

use procmatch_core::matcher::{compare_reports, structure_score};
use procmatch_core::nlp::lexicon::{self, Lexicon};
use procmatch_core::nlp::{
    analyze, capitalize, conditional_keyword, extract_actions, extract_conditions, sentence_texts,
    split_sentences, PosTag,
};
use procmatch_core::petri::{enabled, fire};
use procmatch_core::{
    align_tasks, check_soundness, match_nets, rank_references, translate, validate_workflow,
    EmbeddingTable, Marking, MatchConfig, NlpError, PetriNet, Verdict,
};
use proptest::prelude::*;

const VOCAB: &[&str] = &[
    "place", "check", "verify", "confirm", "approve", "pack", "create", "receive", "ship",
    "deliver", "invoice", "pay", "notify", "archive",
];

fn toy() -> EmbeddingTable {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/toy_embeddings.txt");
    procmatch_core::load_embeddings(path).unwrap()
}

// ---- sentence generation -------------------------------------------------

fn word() -> impl Strategy<Value = String> {
    let forms: Vec<String> = Lexicon::builtin()
        .verb_forms()
        .into_iter()
        .map(String::from)
        .collect();
    let closed: Vec<&str> = lexicon::AUXILIARIES
        .iter()
        .chain(lexicon::DETERMINERS)
        .chain(lexicon::ADPOSITIONS)
        .copied()
        .collect();
    prop_oneof![
        3 => prop::sample::select(forms),
        3 => prop::sample::select(closed).prop_map(String::from),
        2 => prop::sample::select(vec!["order", "goods", "stock", "invoice", "customer", "system"]).prop_map(String::from),
        1 => prop::sample::select(vec!["gift", "notify", "shift", "iffy", "if", "If", "if,"]).prop_map(String::from),
        1 => Just(",".to_string()),
    ]
}

fn sentence() -> impl Strategy<Value = String> {
    prop::collection::vec(word(), 1..14).prop_map(|words| {
        let mut s = String::new();
        for w in words {
            if w == "," {
                s.push(',');
            } else {
                if !s.is_empty() {
                    s.push(' ');
                }
                s.push_str(&w);
            }
        }
        let mut s = capitalize(s.trim_start_matches(','));
        if s.is_empty() {
            s.push_str("Ship");
        }
        s.push('.');
        s
    })
}

fn text() -> impl Strategy<Value = String> {
    prop::collection::vec(sentence(), 1..5).prop_map(|v| v.join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn split_round_trip(t in text(), gaps in prop::collection::vec("[ \n\t]{1,3}", 0..8)) {
        // Re-join with arbitrary whitespace; splitting restores the normalized text.
        let mut messy = t.clone();
        for g in gaps {
            messy = messy.replacen(". ", &format!(".{g}"), 1);
        }
        let normalized = messy.split_whitespace().collect::<Vec<_>>().join(" ");
        prop_assert_eq!(sentence_texts(&messy).join(" "), normalized);
    }

    #[test]
    fn actions_trace_to_verb_tokens(t in text()) {
        let sentences = split_sentences(&t);
        if let Ok(actions) = extract_actions(&t) {
            let mut seen = HashSet::new();
            for a in &actions {
                let tok = &sentences[a.sentence_index].tokens[a.token_index];
                prop_assert_eq!(tok.pos, PosTag::Verb);
                prop_assert_eq!(&a.label, &capitalize(&tok.lemma));
                prop_assert!(seen.insert((a.sentence_index, a.token_index)));
            }
        }
    }

    #[test]
    fn no_auxiliary_labels(t in text()) {
        if let Ok(actions) = extract_actions(&t) {
            for a in actions {
                prop_assert!(!lexicon::AUXILIARY_LEMMAS.contains(&a.label.to_lowercase().as_str()), "{}", a.label);
            }
        }
    }

    #[test]
    fn conditions_need_standalone_if(t in text()) {
        for s in split_sentences(&t) {
            let has_if = s.tokens.iter().any(|tok| tok.text.eq_ignore_ascii_case("if"));
            prop_assert_eq!(conditional_keyword(&s).is_some(), has_if);
            match extract_conditions(std::slice::from_ref(&s)) {
                Ok(c) => prop_assert_eq!(c.len(), usize::from(has_if)),
                Err(NlpError::MalformedCondition { .. }) => prop_assert!(has_if),
                Err(e) => prop_assert!(false, "unexpected {e:?}"),
            }
        }
    }

    #[test]
    fn analysis_is_deterministic(t in text()) {
        prop_assert_eq!(format!("{:?}", analyze(&t)), format!("{:?}", analyze(&t)));
    }

    #[test]
    fn translation_invariants(t in text()) {
        let Ok(result) = translate(&t) else { return Ok(()) };
        let net = &result.net;
        let diag = validate_workflow(net);
        prop_assert!(diag.is_workflow_net, "{:?}", diag.violations);

        let mut labels: Vec<&str> = net.visible_transitions().map(|(_, l)| l).collect();
        let actions = extract_actions(&t).unwrap();
        let mut expected: Vec<&str> = actions.iter().map(|a| a.label.as_str()).collect();
        labels.sort_unstable();
        expected.sort_unstable();
        prop_assert_eq!(labels, expected);

        // Branch count: one decision place per maximal group of consecutive
        // conditionals (a sentence with actions before "if" starts a group).
        let analysis = analyze(&t).unwrap();
        let mut groups: Vec<usize> = Vec::new();
        let mut prev: Option<usize> = None;
        for c in &analysis.conditions {
            let pre_if = analysis.actions.iter().any(|a| a.sentence_index == c.sentence_index && a.token_index < c.keyword_index);
            if prev == Some(c.sentence_index.wrapping_sub(1)) && !pre_if {
                *groups.last_mut().unwrap() += 1;
            } else {
                groups.push(1);
            }
            prev = Some(c.sentence_index);
        }
        prop_assert_eq!(result.decision_places.len(), groups.len());
        for (place, size) in result.decision_places.iter().zip(&groups) {
            prop_assert_eq!(net.consumers(place.as_str()).len(), if *size == 1 { 2 } else { *size });
        }

        if net.transition_count() <= 20 {
            prop_assert_eq!(check_soundness(net, 10_000).unwrap().verdict, Verdict::Sound);
        }
        prop_assert_eq!(&translate(&t).unwrap(), &result);
    }
}

// ---- net generation ------------------------------------------------------

#[derive(Debug, Clone)]
enum Tree {
    Task(&'static str),
    Seq(Vec<Tree>),
    Xor(Vec<Tree>),
}

fn tree() -> impl Strategy<Value = Tree> {
    let leaf = prop::sample::select(VOCAB).prop_map(Tree::Task);
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Tree::Seq),
            prop::collection::vec(inner, 2..4).prop_map(Tree::Xor),
        ]
    })
}

fn build(net: &mut PetriNet, tree: &Tree, from: &str, to: &str) {
    match tree {
        Tree::Task(l) => {
            let t = format!("t{}", net.transition_count());
            net.add_transition(t.as_str(), capitalize(l)).unwrap();
            net.add_arc(from, &t).unwrap();
            net.add_arc(&t, to).unwrap();
        }
        Tree::Seq(parts) => {
            let mut cur = from.to_string();
            for (k, part) in parts.iter().enumerate() {
                let next = if k + 1 == parts.len() {
                    to.to_string()
                } else {
                    let p = format!("p{}", net.place_count());
                    net.add_place(p.as_str()).unwrap();
                    p
                };
                build(net, part, &cur, &next);
                cur = next;
            }
        }
        Tree::Xor(parts) => {
            for part in parts {
                build(net, part, from, to);
            }
        }
    }
}

fn net_from(tree: &Tree, name: &str) -> PetriNet {
    let mut net = PetriNet::new(name);
    net.add_place("p0").unwrap();
    net.add_place("p1").unwrap();
    build(&mut net, tree, "p0", "p1");
    net
}

fn workflow_net() -> impl Strategy<Value = PetriNet> {
    tree().prop_map(|t| net_from(&t, "n"))
}

/// Appends `Zzqx` after the sink so the copy stays a workflow net.
fn with_extra_task(net: &PetriNet) -> PetriNet {
    let mut r = net.clone();
    let sink = validate_workflow(net).sink.unwrap();
    r.add_place("extra_sink").unwrap();
    r.add_transition("extra", "Zzqx").unwrap();
    r.add_arc(sink.as_str(), "extra").unwrap();
    r.add_arc("extra", "extra_sink").unwrap();
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn self_match_is_one(net in workflow_net()) {
        let r = match_nets(&net, &net, &toy(), MatchConfig::default());
        prop_assert_eq!((r.embedding_similarity, r.structure_similarity, r.combined), (1.0, 1.0, 1.0));
    }

    #[test]
    fn scores_in_range_and_pairs_injective(a in workflow_net(), b in workflow_net(), w in 0.0..=1.0f64, th in 0.0..=1.0f64) {
        let r = match_nets(&a, &b, &toy(), MatchConfig { threshold: th, weight: w });
        for s in [r.embedding_similarity, r.structure_similarity, r.combined] {
            prop_assert!((0.0..=1.0).contains(&s), "{s}");
        }
        let bs: HashSet<_> = r.alignment.pairs.iter().map(|p| &p.business).collect();
        let rs: HashSet<_> = r.alignment.pairs.iter().map(|p| &p.reference).collect();
        prop_assert_eq!(bs.len(), r.alignment.pairs.len());
        prop_assert_eq!(rs.len(), r.alignment.pairs.len());
        prop_assert_eq!(
            r.alignment.pairs.len() + r.alignment.unmatched_business.len(),
            a.visible_transitions().count()
        );
    }

    #[test]
    fn raising_threshold_never_adds_pairs(a in workflow_net(), b in workflow_net(), t1 in 0.0..=1.0f64, t2 in 0.0..=1.0f64) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let table = toy();
        prop_assert!(align_tasks(&a, &b, &table, hi).pairs.len() <= align_tasks(&a, &b, &table, lo).pairs.len());
    }

    #[test]
    fn extra_task_lowers_scores(net in workflow_net()) {
        let table = toy();
        let extended = with_extra_task(&net);
        let me = match_nets(&net, &net, &table, MatchConfig::default());
        let ext = match_nets(&net, &extended, &table, MatchConfig::default());
        prop_assert!(ext.embedding_similarity < me.embedding_similarity);
        let node = |r: &PetriNet, m: &procmatch_core::MatchReport| structure_score(&net, r, &m.alignment).node_ratio;
        prop_assert!(node(&extended, &ext) < node(&net, &me));
    }

    #[test]
    fn parallel_ranking_equals_serial(business in workflow_net(), refs in prop::collection::vec(tree(), 1..6)) {
        let table = toy();
        let refs: Vec<PetriNet> = refs.iter().enumerate().map(|(i, t)| net_from(t, &format!("r{}", i % 3))).collect();
        let mut serial: Vec<_> = refs.iter().map(|r| match_nets(&business, r, &table, MatchConfig::default())).collect();
        serial.sort_by(compare_reports);
        prop_assert_eq!(rank_references(&business, &refs, &table, MatchConfig::default()), serial);
    }

    #[test]
    fn firing_is_pure_and_xor_exclusive(net in workflow_net(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..10)) {
        let mut m = Marking::new().with("p0", 1);
        for pick in picks {
            let en = enabled(&net, &m);
            if en.is_empty() {
                break;
            }
            let t = pick.get(&en);
            let next = fire(&net, &m, t.as_str()).unwrap();
            prop_assert_eq!(&next, &fire(&net, &m, t.as_str()).unwrap());
            // Every marking of these nets holds one token; the siblings of
            // the fired transition on its input place are now disabled.
            prop_assert_eq!(next.total(), 1);
            let input = net.preset(t.as_str())[0].clone();
            let after = enabled(&net, &next);
            for sibling in net.consumers(input.as_str()) {
                if input.as_str() != net.postset(t.as_str())[0].as_str() {
                    prop_assert!(!after.contains(sibling));
                }
            }
            m = next;
        }
    }
}
