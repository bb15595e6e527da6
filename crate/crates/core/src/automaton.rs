//! Deterministic finite-state acceptors over the generator alphabet.
//!
//! The transition function is partial: a missing transition rejects. This
//! matches the arrangement automata, where a generator whose wall separates
//! the current region from `A0` has no transition at all.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::alcove::{AffineWeylGroup, Word};
use crate::arrangement::{enumerate_regions, same_side_as_a0, ArrangementSpec};
use crate::error::{Error, Result};

/// Opaque per-state label. Arrangement automata use the strip vector.
pub type StateLabel = Vec<i64>;

/// Serialized form; field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutomatonJson {
    alphabet_size: usize,
    states: Vec<StateLabel>,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<Vec<Option<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet_size: usize,
    labels: Vec<StateLabel>,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<Vec<Option<usize>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

impl Automaton {
    pub fn new(
        alphabet_size: usize,
        labels: Vec<StateLabel>,
        initial: usize,
        accepting: Vec<bool>,
        delta: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let n = labels.len();
        let bad = |msg: String| Err(Error::MalformedAutomaton(msg));
        if n == 0 {
            return bad("no states".into());
        }
        if initial >= n {
            return bad(format!("initial state {initial} out of range"));
        }
        if accepting.len() != n || delta.len() != n {
            return bad("per-state tables have inconsistent lengths".into());
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet_size {
                return bad(format!("state {q} has {} transitions", row.len()));
            }
            if let Some(t) = row.iter().flatten().find(|&&t| t >= n) {
                return bad(format!("state {q} has target {t} out of range"));
            }
        }
        Ok(Automaton {
            alphabet_size,
            labels,
            initial,
            accepting,
            delta,
        })
    }

    /// Automaton whose states are the regions of the arrangement, all accepting.
    /// It accepts exactly the reduced words of the affine Weyl group.
    pub fn from_arrangement(group: &AffineWeylGroup, spec: &ArrangementSpec) -> Self {
        let regions = enumerate_regions(group, spec);
        let index: HashMap<&[i32], usize> = regions
            .iter()
            .enumerate()
            .map(|(i, r)| (r.strips.as_slice(), i))
            .collect();
        let rs = group.root_system();
        let delta = regions
            .iter()
            .map(|r| {
                (0..group.num_generators())
                    .map(|s| {
                        if !same_side_as_a0(rs, &r.strips, s) {
                            return None;
                        }
                        let image = spec.region_of(&group.right_multiply(&r.witness, s));
                        Some(index[image.as_slice()])
                    })
                    .collect()
            })
            .collect();
        let labels = regions
            .iter()
            .map(|r| r.strips.iter().map(|&x| i64::from(x)).collect())
            .collect();
        Automaton {
            alphabet_size: group.num_generators(),
            labels,
            initial: 0,
            accepting: vec![true; regions.len()],
            delta,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn label(&self, q: usize) -> &[i64] {
        &self.labels[q]
    }

    pub fn labels(&self) -> &[StateLabel] {
        &self.labels
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.num_states())
            .filter(|&q| self.accepting[q])
            .collect()
    }

    pub fn step(&self, q: usize, letter: usize) -> Option<usize> {
        self.delta[q][letter]
    }

    /// Index of the state with the given label.
    pub fn state_with_label(&self, label: &[i64]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&a| a >= self.alphabet_size) {
            Some(&letter) => Err(Error::LetterOutOfRange {
                letter,
                alphabet_size: self.alphabet_size,
            }),
            None => Ok(()),
        }
    }

    /// Final state of the run on `word`, if the run does not fall off.
    pub fn run(&self, word: &[usize]) -> Result<Option<usize>> {
        self.check_word(word)?;
        let mut q = self.initial;
        for &a in word {
            match self.delta[q][a] {
                Some(next) => q = next,
                None => return Ok(None),
            }
        }
        Ok(Some(q))
    }

    pub fn accepts(&self, word: &[usize]) -> Result<bool> {
        Ok(self.run(word)?.is_some_and(|q| self.accepting[q]))
    }

    /// Number of runs of each length `0..=max_len` from the initial state,
    /// indexed by final state.
    pub fn run_counts(&self, max_len: usize) -> Vec<Vec<u128>> {
        let mut cur = vec![0u128; self.num_states()];
        cur[self.initial] = 1;
        let mut out = Vec::with_capacity(max_len + 1);
        for _ in 0..=max_len {
            let mut next = vec![0u128; self.num_states()];
            for (q, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for t in self.delta[q].iter().flatten() {
                    next[*t] += c;
                }
            }
            out.push(std::mem::replace(&mut cur, next));
        }
        out
    }

    /// Entry `l` is the number of accepted words of length `l`.
    pub fn count_words(&self, max_len: usize) -> Vec<u128> {
        self.run_counts(max_len)
            .iter()
            .map(|per_state| {
                per_state
                    .iter()
                    .zip(&self.accepting)
                    .filter(|(_, &acc)| acc)
                    .map(|(c, _)| c)
                    .sum()
            })
            .collect()
    }

    /// All accepted words of length at most `max_len`, shortest first and
    /// lexicographic within a length.
    pub fn enumerate_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer: Vec<(Word, usize)> = vec![(Vec::new(), self.initial)];
        for len in 0..=max_len {
            out.extend(
                layer
                    .iter()
                    .filter(|(_, q)| self.accepting[*q])
                    .map(|(w, _)| w.clone()),
            );
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &layer {
                for a in 0..self.alphabet_size {
                    if let Some(t) = self.delta[*q][a] {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push((w2, t));
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// Same states and transitions, accepting exactly the states in `keep`.
    pub fn restrict_accepting(&self, keep: &[usize]) -> Automaton {
        let mut accepting = vec![false; self.num_states()];
        for &q in keep {
            accepting[q] = true;
        }
        Automaton {
            accepting,
            ..self.clone()
        }
    }

    /// Automaton for the reversed language, by subset construction on the
    /// reversed transition graph. Subset states are ordered by their sorted
    /// member lists; each label is the member list.
    pub fn reverse(&self) -> Automaton {
        let n = self.num_states();
        let mut preds: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); self.alphabet_size]; n];
        for q in 0..n {
            for a in 0..self.alphabet_size {
                if let Some(t) = self.delta[q][a] {
                    preds[t][a].push(q);
                }
            }
        }
        let start: Vec<usize> = self.accepting_states();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut subsets: Vec<Vec<usize>> = vec![start.clone()];
        index.insert(start, 0);
        let mut edges: Vec<Vec<Option<Vec<usize>>>> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let mut row = Vec::with_capacity(self.alphabet_size);
            for a in 0..self.alphabet_size {
                let mut next: Vec<usize> = subsets[i]
                    .iter()
                    .flat_map(|&q| preds[q][a].iter().copied())
                    .collect();
                next.sort_unstable();
                next.dedup();
                if next.is_empty() {
                    row.push(None);
                    continue;
                }
                if !index.contains_key(&next) {
                    index.insert(next.clone(), subsets.len());
                    subsets.push(next.clone());
                }
                row.push(Some(next));
            }
            edges.push(row);
            i += 1;
        }
        // renumber in sorted member-list order
        let order: HashMap<&Vec<usize>, usize> =
            index.keys().enumerate().map(|(k, s)| (s, k)).collect();
        let m = subsets.len();
        let mut labels = vec![Vec::new(); m];
        let mut accepting = vec![false; m];
        let mut delta = vec![vec![None; self.alphabet_size]; m];
        for (old, subset) in subsets.iter().enumerate() {
            let k = order[subset];
            labels[k] = subset.iter().map(|&q| q as i64).collect();
            accepting[k] = subset.contains(&self.initial);
            for a in 0..self.alphabet_size {
                delta[k][a] = edges[old][a].as_ref().map(|t| order[t]);
            }
        }
        Automaton {
            alphabet_size: self.alphabet_size,
            labels,
            initial: order[&subsets[0]],
            accepting,
            delta,
        }
    }

    /// Product automaton accepting the union of the languages.
    pub fn union(auts: &[Automaton]) -> Result<Automaton> {
        let first = auts
            .first()
            .ok_or_else(|| Error::MalformedAutomaton("union of no automata".into()))?;
        let k = first.alphabet_size;
        if auts.iter().any(|a| a.alphabet_size != k) {
            return Err(Error::MalformedAutomaton("alphabets differ".into()));
        }
        let start: Vec<Option<usize>> = auts.iter().map(|a| Some(a.initial)).collect();
        let mut index: HashMap<Vec<Option<usize>>, usize> = HashMap::new();
        let mut tuples = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < tuples.len() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let next: Vec<Option<usize>> = tuples[i]
                    .iter()
                    .zip(auts)
                    .map(|(q, aut)| q.and_then(|q| aut.delta[q][a]))
                    .collect();
                if next.iter().all(Option::is_none) {
                    row.push(None);
                    continue;
                }
                let t = *index.entry(next.clone()).or_insert_with(|| {
                    tuples.push(next);
                    tuples.len() - 1
                });
                row.push(Some(t));
            }
            delta.push(row);
            i += 1;
        }
        let accepting = tuples
            .iter()
            .map(|t| {
                t.iter()
                    .zip(auts)
                    .any(|(q, aut)| q.is_some_and(|q| aut.accepting[q]))
            })
            .collect();
        let labels = tuples
            .iter()
            .map(|t| t.iter().map(|q| q.map_or(-1, |q| q as i64)).collect())
            .collect();
        Ok(Automaton {
            alphabet_size: k,
            labels,
            initial: 0,
            accepting,
            delta,
        })
    }

    /// The minimal deterministic automaton for the same language, with dead
    /// and unreachable states removed and states numbered in breadth-first
    /// order from the initial state. Labels are the merged original states.
    ///
    /// Two automata accept the same language iff their minimizations have
    /// equal initial state, acceptance and transitions.
    pub fn minimize(&self) -> Automaton {
        let n = self.num_states();
        let k = self.alphabet_size;

        let mut reachable = vec![false; n];
        reachable[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &t in self.delta[q].iter().flatten() {
                if !reachable[t] {
                    reachable[t] = true;
                    stack.push(t);
                }
            }
        }
        let mut live = self.accepting.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..n {
                if !live[q] && self.delta[q].iter().flatten().any(|&t| live[t]) {
                    live[q] = true;
                    changed = true;
                }
            }
        }
        if !live[self.initial] {
            return Automaton {
                alphabet_size: k,
                labels: vec![Vec::new()],
                initial: 0,
                accepting: vec![false],
                delta: vec![vec![None; k]],
            };
        }
        let keep: Vec<usize> = (0..n).filter(|&q| reachable[q] && live[q]).collect();
        let trimmed = |q: usize, a: usize| self.delta[q][a].filter(|&t| reachable[t] && live[t]);

        // Moore refinement
        let mut class: Vec<usize> = vec![usize::MAX; n];
        for &q in &keep {
            class[q] = usize::from(self.accepting[q]);
        }
        let mut num_classes = 0;
        loop {
            let mut sigs: HashMap<(usize, Vec<Option<usize>>), usize> = HashMap::new();
            let mut next = vec![usize::MAX; n];
            for &q in &keep {
                let sig = (
                    class[q],
                    (0..k).map(|a| trimmed(q, a).map(|t| class[t])).collect(),
                );
                let fresh = sigs.len();
                next[q] = *sigs.entry(sig).or_insert(fresh);
            }
            let count = sigs.len();
            class = next;
            if count == num_classes {
                break;
            }
            num_classes = count;
        }

        // canonical numbering by BFS from the initial class
        let rep: HashMap<usize, usize> = keep.iter().rev().map(|&q| (class[q], q)).collect();
        let mut order: HashMap<usize, usize> = HashMap::new();
        order.insert(class[self.initial], 0);
        let mut queue = VecDeque::from([class[self.initial]]);
        let mut seq = vec![class[self.initial]];
        while let Some(c) = queue.pop_front() {
            let q = rep[&c];
            for a in 0..k {
                if let Some(t) = trimmed(q, a) {
                    let ct = class[t];
                    if let std::collections::hash_map::Entry::Vacant(e) = order.entry(ct) {
                        e.insert(seq.len());
                        seq.push(ct);
                        queue.push_back(ct);
                    }
                }
            }
        }
        let m = seq.len();
        let mut labels = vec![Vec::new(); m];
        for &q in &keep {
            labels[order[&class[q]]].push(q as i64);
        }
        let accepting = seq.iter().map(|c| self.accepting[rep[c]]).collect();
        let delta = seq
            .iter()
            .map(|c| {
                let q = rep[c];
                (0..k)
                    .map(|a| trimmed(q, a).map(|t| order[&class[t]]))
                    .collect()
            })
            .collect();
        Automaton {
            alphabet_size: k,
            labels,
            initial: 0,
            accepting,
            delta,
        }
    }

    /// Exact language equality through minimization.
    pub fn same_language(&self, other: &Automaton) -> bool {
        if self.alphabet_size != other.alphabet_size {
            return false;
        }
        let (a, b) = (self.minimize(), other.minimize());
        a.initial == b.initial && a.accepting == b.accepting && a.delta == b.delta
    }

    pub fn export(&self, format: ExportFormat) -> Result<String> {
        match format {
            ExportFormat::Dot => Ok(self.to_dot()),
            ExportFormat::Json => self.to_json(),
        }
    }

    /// Graphviz digraph; accepting states are drawn as double circles.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph automaton {\n");
        out.push_str("    rankdir=LR;\n");
        out.push_str("    node [shape=circle];\n");
        out.push_str("    start [shape=point, label=\"\"];\n");
        let _ = writeln!(out, "    start -> q{};", self.initial);
        for q in 0..self.num_states() {
            let label = self.labels[q]
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let shape = if self.accepting[q] {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "    q{q} [label=\"{label}\", shape={shape}];");
        }
        for q in 0..self.num_states() {
            for a in 0..self.alphabet_size {
                if let Some(t) = self.delta[q][a] {
                    let _ = writeln!(out, "    q{q} -> q{t} [label=\"{a}\"];");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let json = AutomatonJson {
            alphabet_size: self.alphabet_size,
            states: self.labels.clone(),
            initial: self.initial,
            accepting: self.accepting.clone(),
            delta: self.delta.clone(),
        };
        Ok(serde_json::to_string_pretty(&json)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: AutomatonJson = serde_json::from_str(text)?;
        Automaton::new(j.alphabet_size, j.states, j.initial, j.accepting, j.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, RootSystem};

    fn arrangement_automaton(f: Family, n: usize, nn: u32) -> (AffineWeylGroup, Automaton) {
        let g = AffineWeylGroup::new(RootSystem::new(f, n).unwrap());
        let spec = ArrangementSpec::uniform(g.root_system(), nn);
        let aut = Automaton::from_arrangement(&g, &spec);
        (g, aut)
    }

    fn single_state() -> Automaton {
        Automaton::new(2, vec![vec![7]], 0, vec![true], vec![vec![Some(0), None]]).unwrap()
    }

    #[test]
    fn a1_automaton() {
        let (_, aut) = arrangement_automaton(Family::A, 1, 0);
        assert_eq!(aut.num_states(), 3);
        assert_eq!(aut.alphabet_size(), 2);
        assert!(aut.accepts(&[]).unwrap());
        assert!(aut.accepts(&[0, 1, 0, 1]).unwrap());
        assert!(!aut.accepts(&[0, 0]).unwrap());
        assert!(!aut.accepts(&[1, 0, 0]).unwrap());
        assert_eq!(aut.count_words(5), vec![1, 2, 2, 2, 2, 2]);
        assert_eq!(
            aut.enumerate_words(2),
            vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn out_of_range_letters() {
        let (_, aut) = arrangement_automaton(Family::A, 2, 0);
        assert_eq!(aut.num_states(), 16);
        assert!(matches!(
            aut.accepts(&[0, 3]),
            Err(Error::LetterOutOfRange { letter: 3, .. })
        ));
    }

    #[test]
    fn restrict_accepting_extremes() {
        let (_, aut) = arrangement_automaton(Family::A, 2, 0);
        let all: Vec<usize> = (0..aut.num_states()).collect();
        assert!(aut.restrict_accepting(&all).same_language(&aut));
        let none = aut.restrict_accepting(&[]);
        assert!(none.enumerate_words(6).is_empty());
        assert_eq!(none.minimize().num_states(), 1);
    }

    #[test]
    fn per_state_counts_partition_the_total() {
        let (_, aut) = arrangement_automaton(Family::C, 2, 0);
        let total = aut.count_words(8);
        let mut summed = vec![0u128; 9];
        for q in 0..aut.num_states() {
            let c = aut.restrict_accepting(&[q]).count_words(8);
            for (s, x) in summed.iter_mut().zip(c) {
                *s += x;
            }
        }
        assert_eq!(summed, total);
    }

    #[test]
    fn reversal_of_dihedral_language() {
        let (_, aut) = arrangement_automaton(Family::A, 1, 0);
        assert!(aut.reverse().same_language(&aut));
        assert_eq!(aut.reverse().enumerate_words(6), aut.enumerate_words(6));
    }

    #[test]
    fn double_reversal() {
        let (_, aut) = arrangement_automaton(Family::A, 2, 0);
        let q = aut.num_states() / 2;
        let sub = aut.restrict_accepting(&[q]);
        let twice = sub.reverse().reverse();
        assert_eq!(twice.enumerate_words(8), sub.enumerate_words(8));
        assert!(twice.same_language(&sub));
    }

    #[test]
    fn union_with_self_and_minimize_idempotent() {
        let (_, aut) = arrangement_automaton(Family::A, 2, 1);
        let u = Automaton::union(&[aut.clone(), aut.clone()]).unwrap();
        assert!(u.same_language(&aut));
        let m = aut.minimize();
        assert!(m.num_states() <= 49);
        let mm = m.minimize();
        assert_eq!(mm.num_states(), m.num_states());
        assert!((0..m.num_states()).all(|q| (0..3).all(|a| mm.step(q, a) == m.step(q, a))));
        assert_eq!(m.enumerate_words(7), aut.enumerate_words(7));
        assert!(Automaton::union(&[]).is_err());
    }

    #[test]
    fn single_state_dot_golden() {
        let expected = "digraph automaton {\n    rankdir=LR;\n    node [shape=circle];\n    start [shape=point, label=\"\"];\n    start -> q0;\n    q0 [label=\"7\", shape=doublecircle];\n    q0 -> q0 [label=\"0\"];\n}\n";
        assert_eq!(single_state().to_dot(), expected);
    }

    #[test]
    fn json_round_trip() {
        let (_, aut) = arrangement_automaton(Family::G, 2, 0);
        let text = aut.export(ExportFormat::Json).unwrap();
        let back = Automaton::from_json(&text).unwrap();
        assert_eq!(back, aut);
        assert_eq!(back.to_json().unwrap(), text);
        let one = single_state().to_json().unwrap();
        assert!(one.find("\"states\"").unwrap() < one.find("\"initial\"").unwrap());
        assert!(one.find("\"accepting\"").unwrap() < one.find("\"delta\"").unwrap());
    }

    #[test]
    fn malformed_json_is_rejected() {
        let text = r#"{"alphabet_size":2,"states":[[0]],"initial":1,"accepting":[true],"delta":[[null,null]]}"#;
        assert!(Automaton::from_json(text).is_err());
        let text = r#"{"alphabet_size":2,"states":[[0]],"initial":0,"accepting":[true],"delta":[[3,null]]}"#;
        assert!(Automaton::from_json(text).is_err());
        assert!("svg".parse::<ExportFormat>().is_err());
    }
}
