//! Seeded fixture generators shared by the benchmarks and the acceptance
//! suite: workflow nets built from random process trees, random
//! workflow-valid nets with arbitrary behaviour, and process text built from
//! the shipped lexicons.

use procmatch_core::nlp::lexicon::{self, Lexicon};
use procmatch_core::{validate_workflow, PetriNet};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every word in `data/toy_embeddings.txt`, usable as a task label.
pub const TOY_VOCAB: &[&str] = &[
    "place",
    "order",
    "customer",
    "sell",
    "buy",
    "purchase",
    "quote",
    "check",
    "verify",
    "inspect",
    "validate",
    "review",
    "audit",
    "confirm",
    "approve",
    "accept",
    "authorize",
    "reject",
    "pack",
    "package",
    "pick",
    "store",
    "assemble",
    "create",
    "generate",
    "produce",
    "issue",
    "record",
    "receive",
    "collect",
    "obtain",
    "goods",
    "stock",
    "inventory",
    "ship",
    "deliver",
    "dispatch",
    "send",
    "transport",
    "return",
    "pay",
    "payment",
    "invoice",
    "bill",
    "refund",
    "notify",
    "update",
    "cancel",
    "archive",
    "schedule",
    "submit",
    "request",
    "system",
];

pub const NOUNS: &[&str] = &[
    "customer",
    "clerk",
    "manager",
    "system",
    "goods",
    "invoice",
    "stock",
    "warehouse",
    "payment",
    "supplier",
    "request",
    "shipment",
    "item",
    "account",
    "report",
];

const ADJECTIVES: &[&str] = &[
    "available",
    "valid",
    "complete",
    "late",
    "approved",
    "missing",
    "correct",
];

/// Words that contain "if" without being the conditional keyword.
pub const IF_LOOKALIKES: &[&str] = &[
    "gift", "notify", "shift", "iffy", "modify", "verify", "gifts",
];

fn capitalized(label: &str) -> String {
    let mut c = label.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

enum Tree {
    Task,
    Seq(Box<Tree>, Box<Tree>),
    Xor(Box<Tree>, Box<Tree>),
    And(Box<Tree>, Box<Tree>),
    Loop(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn transitions(&self) -> usize {
        match self {
            Tree::Task => 1,
            Tree::Seq(a, b) | Tree::Xor(a, b) => a.transitions() + b.transitions(),
            Tree::And(a, b) | Tree::Loop(a, b) => a.transitions() + b.transitions() + 2,
        }
    }

    fn leaves(&self) -> usize {
        match self {
            Tree::Task => 1,
            Tree::Seq(a, b) | Tree::Xor(a, b) | Tree::And(a, b) | Tree::Loop(a, b) => {
                a.leaves() + b.leaves()
            }
        }
    }

    /// Replaces leaf number `n` (left to right) with `op(Task, Task)`.
    fn expand(self, n: usize, op: u8) -> Tree {
        match self {
            Tree::Task => {
                let (a, b) = (Box::new(Tree::Task), Box::new(Tree::Task));
                match op {
                    0 => Tree::Seq(a, b),
                    1 => Tree::Xor(a, b),
                    2 => Tree::And(a, b),
                    _ => Tree::Loop(a, b),
                }
            }
            Tree::Seq(a, b) => split(*a, *b, n, op, Tree::Seq),
            Tree::Xor(a, b) => split(*a, *b, n, op, Tree::Xor),
            Tree::And(a, b) => split(*a, *b, n, op, Tree::And),
            Tree::Loop(a, b) => split(*a, *b, n, op, Tree::Loop),
        }
    }
}

fn split(a: Tree, b: Tree, n: usize, op: u8, make: fn(Box<Tree>, Box<Tree>) -> Tree) -> Tree {
    let left = a.leaves();
    if n < left {
        make(Box::new(a.expand(n, op)), Box::new(b))
    } else {
        make(Box::new(a), Box::new(b.expand(n - left, op)))
    }
}

struct NetBuilder<'a, R: Rng> {
    net: PetriNet,
    rng: &'a mut R,
    labels: &'a [&'a str],
    places: usize,
    transitions: usize,
}

impl<R: Rng> NetBuilder<'_, R> {
    fn place(&mut self) -> String {
        let id = format!("p{}", self.places);
        self.places += 1;
        self.net.add_place(id.clone()).unwrap();
        id
    }

    fn transition(&mut self, label: Option<&str>) -> String {
        let id = format!("t{}", self.transitions);
        self.transitions += 1;
        let label = match label {
            Some(l) => l.to_string(),
            None => capitalized(self.labels.choose(self.rng).unwrap()),
        };
        self.net.add_transition(id.clone(), label).unwrap();
        id
    }

    fn arc(&mut self, from: &str, to: &str) {
        self.net.add_arc(from, to).unwrap();
    }

    fn build(&mut self, tree: &Tree, from: &str, to: &str) {
        match tree {
            Tree::Task => {
                let t = self.transition(None);
                self.arc(from, &t);
                self.arc(&t, to);
            }
            Tree::Seq(a, b) => {
                let mid = self.place();
                self.build(a, from, &mid);
                self.build(b, &mid, to);
            }
            Tree::Xor(a, b) => {
                self.build(a, from, to);
                self.build(b, from, to);
            }
            Tree::And(a, b) => {
                let split = self.transition(Some("τ:split"));
                let join = self.transition(Some("τ:join"));
                self.arc(from, &split);
                self.arc(&join, to);
                for branch in [a, b] {
                    let (p, q) = (self.place(), self.place());
                    self.arc(&split, &p);
                    self.arc(&q, &join);
                    self.build(branch, &p, &q);
                }
            }
            Tree::Loop(body, redo) => {
                let enter = self.transition(Some("τ:enter"));
                let exit = self.transition(Some("τ:exit"));
                let (p, q) = (self.place(), self.place());
                self.arc(from, &enter);
                self.arc(&enter, &p);
                self.build(body, &p, &q);
                self.build(redo, &q, &p);
                self.arc(&q, &exit);
                self.arc(&exit, to);
            }
        }
    }
}

/// A sound workflow net from a random block-structured process tree with at
/// most `max_transitions` transitions (silent split/join/loop transitions
/// included). Visible labels are drawn from `labels` and capitalized.
pub fn workflow_net<R: Rng>(
    rng: &mut R,
    max_transitions: usize,
    labels: &[&str],
    name: &str,
) -> PetriNet {
    assert!(max_transitions >= 1);
    let mut tree = Tree::Task;
    let steps = rng.gen_range(0..=max_transitions);
    for _ in 0..steps {
        let op: u8 = rng.gen_range(0..4);
        let cost = if op >= 2 { 3 } else { 1 };
        if tree.transitions() + cost > max_transitions {
            continue;
        }
        let n = rng.gen_range(0..tree.leaves());
        tree = tree.expand(n, op);
    }
    let mut b = NetBuilder {
        net: PetriNet::new(name),
        rng,
        labels,
        places: 0,
        transitions: 0,
    };
    let (i, o) = (b.place(), b.place());
    b.build(&tree, &i, &o);
    b.net
}

/// A random net with 2..=`max_places` places that passes workflow
/// validation. Behaviour is arbitrary: it may deadlock, leave tokens behind,
/// contain dead transitions or be unbounded.
pub fn random_workflow_valid_net<R: Rng>(
    rng: &mut R,
    max_places: usize,
    max_transitions: usize,
) -> PetriNet {
    assert!(max_places >= 2 && max_transitions >= 1);
    loop {
        let np = rng.gen_range(2..=max_places);
        let nt = rng.gen_range(1..=max_transitions);
        let mut net = PetriNet::new("random");
        for p in 0..np {
            net.add_place(format!("p{p}")).unwrap();
        }
        for t in 0..nt {
            net.add_transition(format!("t{t}"), capitalized(TOY_VOCAB[t % TOY_VOCAB.len()]))
                .unwrap();
            let ins = rng.gen_range(1..=2);
            let outs = rng.gen_range(1..=2);
            for _ in 0..ins {
                // Never consume from the sink p1.
                let p = loop {
                    let p = rng.gen_range(0..np);
                    if p != 1 {
                        break p;
                    }
                };
                net.add_arc(&format!("p{p}"), &format!("t{t}")).unwrap();
            }
            for _ in 0..outs {
                // Never produce into the source p0.
                let p = rng.gen_range(1..np);
                net.add_arc(&format!("t{t}"), &format!("p{p}")).unwrap();
            }
        }
        if validate_workflow(&net).is_workflow_net {
            return net;
        }
    }
}

fn pick<'a, R: Rng>(rng: &mut R, words: &[&'a str]) -> &'a str {
    words.choose(rng).unwrap()
}

/// A verb form from the shipped lexicon whose inflection matches `suffix`
/// (empty suffix: the base form).
fn verb_form<'a, R: Rng>(rng: &mut R, forms: &[&'a str], lex: &Lexicon, suffix: &str) -> &'a str {
    loop {
        let f = pick(rng, forms);
        let base = lex.verb_lemma(f).unwrap_or(f);
        let ok = match suffix {
            "" => f == base,
            s => f != base && f.ends_with(s),
        };
        if ok {
            return f;
        }
    }
}

/// One well-formed sentence of process prose (capitalized, with a final
/// period). Roughly a third are conditionals.
pub fn process_sentence<R: Rng>(rng: &mut R) -> String {
    let lex = Lexicon::builtin();
    let forms = lex.verb_forms();
    let mut s = String::new();
    if rng.gen_bool(0.35) {
        let neg = if rng.gen_bool(0.5) { "not " } else { "" };
        s.push_str(&format!(
            "if the {} is {neg}{}, ",
            pick(rng, NOUNS),
            pick(rng, ADJECTIVES)
        ));
    }
    match rng.gen_range(0..3) {
        0 => s.push_str(&format!(
            "the {} {} the {}",
            pick(rng, NOUNS),
            verb_form(rng, &forms, lex, "s"),
            pick(rng, NOUNS)
        )),
        1 => {
            s.push_str(&format!(
                "the {} is {}",
                pick(rng, NOUNS),
                verb_form(rng, &forms, lex, "ed")
            ));
            if rng.gen_bool(0.5) {
                s.push_str(&format!(" and {}", verb_form(rng, &forms, lex, "ed")));
            }
        }
        _ => s.push_str(&format!(
            "{} the {}",
            verb_form(rng, &forms, lex, ""),
            pick(rng, NOUNS)
        )),
    }
    if rng.gen_bool(0.3) {
        s.push_str(&format!(" for the {}", pick(rng, IF_LOOKALIKES)));
    }
    s.push('.');
    capitalized(&s)
}

/// A multi-sentence process description.
pub fn process_text<R: Rng>(rng: &mut R, sentences: usize) -> String {
    (0..sentences)
        .map(|_| process_sentence(rng))
        .collect::<Vec<_>>()
        .join(" ")
}

/// An unconstrained word salad over every closed class, the verb lexicon,
/// nouns, "if" lookalikes and punctuation. Used for robustness properties
/// that must hold for any input, grammatical or not.
pub fn noisy_sentence<R: Rng>(rng: &mut R, max_words: usize) -> String {
    let lex = Lexicon::builtin();
    let forms = lex.verb_forms();
    let n = rng.gen_range(1..=max_words);
    let mut words: Vec<String> = Vec::with_capacity(n);
    for _ in 0..n {
        let w = match rng.gen_range(0..8) {
            0 => pick(rng, lexicon::AUXILIARIES).to_string(),
            1 => pick(rng, lexicon::DETERMINERS).to_string(),
            2 => pick(rng, lexicon::ADPOSITIONS).to_string(),
            3 | 4 => pick(rng, &forms).to_string(),
            5 => pick(rng, NOUNS).to_string(),
            6 => pick(rng, IF_LOOKALIKES).to_string(),
            _ => pick(rng, &["if", "If", ",", "and", "then", "not"]).to_string(),
        };
        if w == "," {
            if let Some(last) = words.last_mut() {
                last.push(',');
            }
            continue;
        }
        words.push(w);
    }
    if words.is_empty() {
        words.push(pick(rng, NOUNS).to_string());
    }
    let mut s = words.join(" ");
    s.push('.');
    capitalized(&s)
}
