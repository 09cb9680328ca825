//! Deterministic finite automata over small alphabets, with language algebra
//! and transfer-matrix enumeration.
//!
//! Transition maps are partial: a missing transition rejects, as if it led to
//! an implicit dead state. Alphabets are kept sorted.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratfun::RationalFunction;

#[derive(Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<char>,
    names: Vec<String>,
    initial: usize,
    accepting: Vec<bool>,
    /// `trans[state][letter index]`
    trans: Vec<Vec<Option<usize>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    Intersection,
    Union,
    Difference,
}

fn alphabet_of(letters: &[char]) -> Vec<char> {
    let mut a = letters.to_vec();
    a.sort();
    a.dedup();
    a
}

impl Dfa {
    /// Automaton with a single state and no transitions.
    pub fn new(alphabet: &[char], accepting_initial: bool) -> Self {
        let alphabet = alphabet_of(alphabet);
        Dfa {
            trans: vec![vec![None; alphabet.len()]],
            alphabet,
            names: vec!["q0".into()],
            initial: 0,
            accepting: vec![accepting_initial],
        }
    }

    /// Accepts nothing.
    pub fn empty_language(alphabet: &[char]) -> Self {
        Dfa::new(alphabet, false)
    }

    /// Accepts every word over `letters`, a subset of `alphabet`.
    pub fn all_words(letters: &[char], alphabet: &[char]) -> Self {
        let mut d = Dfa::new(alphabet, true);
        for &c in letters {
            let i = d.letter_index(c).expect("letter in alphabet");
            d.trans[0][i] = Some(0);
        }
        d
    }

    /// Accepts `S_1* S_2* … S_k*` for the given letter sets.
    pub fn star_sequence(blocks: &[&[char]], alphabet: &[char]) -> Self {
        let alphabet = alphabet_of(alphabet);
        let k = blocks.len();
        let mut d = Dfa {
            trans: vec![vec![None; alphabet.len()]; k.max(1)],
            names: (0..k.max(1)).map(|i| format!("q{i}")).collect(),
            accepting: vec![true; k.max(1)],
            initial: 0,
            alphabet,
        };
        for s in 0..k {
            for (li, &c) in d.alphabet.clone().iter().enumerate() {
                // from block s, move to the first block t >= s containing c
                if let Some(t) = (s..k).find(|&t| blocks[t].contains(&c)) {
                    d.trans[s][li] = Some(t);
                }
            }
        }
        d
    }

    /// Words containing `w` as a not necessarily contiguous subsequence.
    pub fn subword_containment(w: &str, alphabet: &[char]) -> Result<Self> {
        let alphabet = alphabet_of(alphabet);
        let w: Vec<char> = w.chars().collect();
        if w.is_empty() {
            return Err(Error::InvalidDfa("empty subword".into()));
        }
        for &c in &w {
            if !alphabet.contains(&c) {
                return Err(Error::UnknownLetter(c));
            }
        }
        let k = w.len();
        let mut trans = vec![vec![None; alphabet.len()]; k + 1];
        for (s, row) in trans.iter_mut().enumerate() {
            for (li, &c) in alphabet.iter().enumerate() {
                row[li] = Some(if s < k && w[s] == c { s + 1 } else { s });
            }
        }
        let mut accepting = vec![false; k + 1];
        accepting[k] = true;
        Ok(Dfa {
            alphabet,
            names: (0..=k).map(|i| format!("q{i}")).collect(),
            initial: 0,
            accepting,
            trans,
        })
    }

    /// Words containing `w` as a contiguous factor (string-matching automaton).
    pub fn factor_containment(w: &str, alphabet: &[char]) -> Result<Self> {
        Dfa::matcher(w, alphabet, true)
    }

    /// Words ending with `w`.
    pub fn with_suffix(w: &str, alphabet: &[char]) -> Result<Self> {
        Dfa::matcher(w, alphabet, false)
    }

    /// Words beginning with `w`.
    pub fn with_prefix(w: &str, alphabet: &[char]) -> Result<Self> {
        let alphabet = alphabet_of(alphabet);
        let w = checked_pattern(w, &alphabet)?;
        let k = w.len();
        let mut trans = vec![vec![None; alphabet.len()]; k + 1];
        for (s, &c) in w.iter().enumerate() {
            trans[s][alphabet.binary_search(&c).unwrap()] = Some(s + 1);
        }
        trans[k] = vec![Some(k); alphabet.len()];
        let mut accepting = vec![false; k + 1];
        accepting[k] = true;
        Ok(Dfa {
            alphabet,
            names: (0..=k).map(|i| format!("q{i}")).collect(),
            initial: 0,
            accepting,
            trans,
        })
    }

    /// String-matching automaton for `w`; state `s` records the longest
    /// suffix of the input that is a prefix of `w`. With `absorb` a full
    /// match is kept for good.
    fn matcher(w: &str, alphabet: &[char], absorb: bool) -> Result<Self> {
        let alphabet = alphabet_of(alphabet);
        let w = checked_pattern(w, &alphabet)?;
        let k = w.len();
        let mut trans = vec![vec![None; alphabet.len()]; k + 1];
        for (s, row) in trans.iter_mut().enumerate() {
            for (li, &c) in alphabet.iter().enumerate() {
                row[li] = Some(if s == k && absorb {
                    k
                } else {
                    let mut probe: Vec<char> = w[..s].to_vec();
                    probe.push(c);
                    (0..=probe.len())
                        .rev()
                        .find(|&l| l <= k && probe[probe.len() - l..] == w[..l])
                        .unwrap()
                });
            }
        }
        let mut accepting = vec![false; k + 1];
        accepting[k] = true;
        Ok(Dfa {
            alphabet,
            names: (0..=k).map(|i| format!("q{i}")).collect(),
            initial: 0,
            accepting,
            trans,
        })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    fn letter_index(&self, c: char) -> Option<usize> {
        self.alphabet.binary_search(&c).ok()
    }

    pub fn step(&self, s: usize, c: char) -> Option<usize> {
        self.trans[s][self.letter_index(c)?]
    }

    /// The same automaton with exactly the named states accepting.
    pub fn with_accepting(&self, names: &[&str]) -> Result<Self> {
        let mut d = self.clone();
        d.accepting = vec![false; d.num_states()];
        for n in names {
            let i = d
                .state_index(n)
                .ok_or_else(|| Error::InvalidDfa(format!("no state named {n:?}")))?;
            d.accepting[i] = true;
        }
        Ok(d)
    }

    pub fn accepts(&self, w: &str) -> bool {
        let mut s = self.initial;
        for c in w.chars() {
            match self.step(s, c) {
                Some(t) => s = t,
                None => return false,
            }
        }
        self.accepting[s]
    }

    /// Numbers of accepted words of each length `0..=n_max`.
    pub fn count_words(&self, n_max: usize) -> Vec<BigInt> {
        let mut cur = vec![BigInt::zero(); self.num_states()];
        cur[self.initial] = BigInt::from(1);
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            out.push(
                cur.iter()
                    .zip(&self.accepting)
                    .filter(|(_, &a)| a)
                    .map(|(c, _)| c)
                    .sum(),
            );
            if n == n_max {
                break;
            }
            let mut next = vec![BigInt::zero(); self.num_states()];
            for (s, c) in cur.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for t in self.trans[s].iter().flatten() {
                    next[*t] += c;
                }
            }
            cur = next;
        }
        out
    }

    /// Accepted words of length exactly `n`, in lexicographic order.
    pub fn words(&self, n: usize) -> Vec<String> {
        let live = self.live_states();
        let mut out = Vec::new();
        let mut buf = String::new();
        fn rec(
            d: &Dfa,
            live: &[bool],
            s: usize,
            n: usize,
            buf: &mut String,
            out: &mut Vec<String>,
        ) {
            if buf.len() == n {
                if d.accepting[s] {
                    out.push(buf.clone());
                }
                return;
            }
            for (li, &c) in d.alphabet.iter().enumerate() {
                if let Some(t) = d.trans[s][li] {
                    if live[t] {
                        buf.push(c);
                        rec(d, live, t, n, buf, out);
                        buf.pop();
                    }
                }
            }
        }
        if live[self.initial] {
            rec(self, &live, self.initial, n, &mut buf, &mut out);
        }
        out
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(s) = stack.pop() {
            for &t in self.trans[s].iter().flatten() {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which an accepting state can be reached.
    fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for &t in self.trans[s].iter().flatten() {
                rev[t].push(s);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&s| live[s]).collect();
        while let Some(t) = stack.pop() {
            for &s in &rev[t] {
                if !live[s] {
                    live[s] = true;
                    stack.push(s);
                }
            }
        }
        live
    }

    pub fn is_empty(&self) -> bool {
        let r = self.reachable();
        !(0..self.num_states()).any(|s| r[s] && self.accepting[s])
    }

    /// Keeps the states in `keep` (which must include the initial state).
    fn restrict(&self, keep: &[bool]) -> Dfa {
        let idx: Vec<Option<usize>> = {
            let mut k = 0;
            keep.iter()
                .map(|&b| {
                    if b {
                        k += 1;
                        Some(k - 1)
                    } else {
                        None
                    }
                })
                .collect()
        };
        let mut d = Dfa {
            alphabet: self.alphabet.clone(),
            names: Vec::new(),
            initial: idx[self.initial].unwrap(),
            accepting: Vec::new(),
            trans: Vec::new(),
        };
        for s in (0..self.num_states()).filter(|&s| keep[s]) {
            d.names.push(self.names[s].clone());
            d.accepting.push(self.accepting[s]);
            d.trans.push(
                self.trans[s]
                    .iter()
                    .map(|t| t.and_then(|t| idx[t]))
                    .collect(),
            );
        }
        d
    }

    /// Breadth-first order from the initial state, letters in alphabet order.
    fn bfs_order(&self) -> Vec<usize> {
        let mut order = vec![self.initial];
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut q = VecDeque::from([self.initial]);
        while let Some(s) = q.pop_front() {
            for &t in self.trans[s].iter().flatten() {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                    q.push_back(t);
                }
            }
        }
        order
    }

    fn reorder(&self, order: &[usize]) -> Dfa {
        let mut pos = vec![usize::MAX; self.num_states()];
        for (i, &s) in order.iter().enumerate() {
            pos[s] = i;
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            names: order.iter().map(|&s| self.names[s].clone()).collect(),
            initial: pos[self.initial],
            accepting: order.iter().map(|&s| self.accepting[s]).collect(),
            trans: order
                .iter()
                .map(|&s| self.trans[s].iter().map(|t| t.map(|t| pos[t])).collect())
                .collect(),
        }
    }

    /// Removes unreachable and dead states and renumbers them `q0, q1, …` in
    /// breadth-first order. An empty language becomes a single rejecting state.
    pub fn normalize(&self) -> Dfa {
        let r = self.reachable();
        let live = self.live_states();
        let keep: Vec<bool> = (0..self.num_states())
            .map(|s| s == self.initial || (r[s] && live[s]))
            .collect();
        let mut d = self.restrict(&keep);
        if !live[self.initial] {
            for row in &mut d.trans {
                row.iter_mut().for_each(|t| *t = None);
            }
        }
        let order = d.bfs_order();
        let mut d = d.reorder(&order);
        d.names = (0..d.num_states()).map(|i| format!("q{i}")).collect();
        d
    }

    /// Adds an explicit dead state if any transition is missing.
    pub fn complete(&self) -> Dfa {
        if self.trans.iter().all(|row| row.iter().all(Option::is_some)) {
            return self.clone();
        }
        let mut d = self.clone();
        let dead = d.num_states();
        let mut name = "dead".to_string();
        while d.names.contains(&name) {
            name.push('_');
        }
        d.names.push(name);
        d.accepting.push(false);
        d.trans.push(vec![Some(dead); d.alphabet.len()]);
        for row in &mut d.trans {
            for t in row.iter_mut() {
                t.get_or_insert(dead);
            }
        }
        d
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.complete();
        d.accepting.iter_mut().for_each(|a| *a = !*a);
        d
    }

    pub fn product(&self, other: &Dfa, mode: ProductMode) -> Result<Dfa> {
        product(self, other, mode)
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        product(self, other, ProductMode::Intersection)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        product(self, other, ProductMode::Union)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        product(self, other, ProductMode::Difference)
    }

    /// Minimal automaton for the same language (Moore refinement), normalized.
    pub fn minimize(&self) -> Dfa {
        let d = self.normalize().complete();
        let n = d.num_states();
        let mut class: Vec<usize> = d.accepting.iter().map(|&a| a as usize).collect();
        loop {
            let mut sigs: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for s in 0..n {
                let sig = (
                    class[s],
                    d.trans[s]
                        .iter()
                        .map(|t| class[t.unwrap()])
                        .collect::<Vec<_>>(),
                );
                let k = sigs.len();
                next[s] = *sigs.entry(sig).or_insert(k);
            }
            let stable = sigs.len() == class.iter().collect::<BTreeSet<_>>().len();
            class = next;
            if stable {
                break;
            }
        }
        let k = class.iter().max().map_or(0, |m| m + 1);
        let mut reps = vec![usize::MAX; k];
        for s in 0..n {
            if reps[class[s]] == usize::MAX {
                reps[class[s]] = s;
            }
        }
        let q = Dfa {
            alphabet: d.alphabet.clone(),
            names: (0..k).map(|i| format!("q{i}")).collect(),
            initial: class[d.initial],
            accepting: reps.iter().map(|&s| d.accepting[s]).collect(),
            trans: reps
                .iter()
                .map(|&s| d.trans[s].iter().map(|t| Some(class[t.unwrap()])).collect())
                .collect(),
        };
        q.normalize()
    }

    /// Words containing at least one of `words` as a subword.
    pub fn contains_any_subword<S: AsRef<str>>(words: &[S], alphabet: &[char]) -> Result<Dfa> {
        let mut acc = Dfa::empty_language(alphabet);
        for w in words {
            acc = acc
                .union(&Dfa::subword_containment(w.as_ref(), alphabet)?)?
                .minimize();
        }
        Ok(acc)
    }

    /// Generating function of accepted words by length.
    pub fn gf(&self) -> RationalFunction {
        gf(self)
    }

    /// Text form: header lines then one transition per line, states in
    /// breadth-first order from the initial state, unreachable states last.
    pub fn to_text(&self) -> String {
        let mut order = self.bfs_order();
        let mut rest: Vec<usize> = (0..self.num_states())
            .filter(|s| !order.contains(s))
            .collect();
        rest.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        order.extend(rest);
        let mut s = String::new();
        let letters: Vec<String> = self.alphabet.iter().map(|c| c.to_string()).collect();
        s.push_str(&format!("alphabet: {}\n", letters.join(" ")));
        s.push_str(&format!("initial: {}\n", self.names[self.initial]));
        let acc: Vec<&str> = order
            .iter()
            .filter(|&&q| self.accepting[q])
            .map(|&q| self.names[q].as_str())
            .collect();
        if acc.is_empty() {
            s.push_str("accepting:\n");
        } else {
            s.push_str(&format!("accepting: {}\n", acc.join(" ")));
        }
        for &q in &order {
            for (li, &c) in self.alphabet.iter().enumerate() {
                if let Some(t) = self.trans[q][li] {
                    s.push_str(&format!("{} {} {}\n", self.names[q], c, self.names[t]));
                }
            }
        }
        s
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Dfa({} states over {:?})",
            self.num_states(),
            self.alphabet
        )
    }
}

impl FromStr for Dfa {
    type Err = Error;

    /// Reads the text form. `#` starts a comment. A transition label of several
    /// letters is expanded into a chain through fresh states; chains leaving
    /// the same state share their common prefixes.
    fn from_str(s: &str) -> Result<Self> {
        let mut alphabet: Option<Vec<char>> = None;
        let mut initial: Option<String> = None;
        let mut accepting: Vec<String> = Vec::new();
        let mut edges: Vec<(String, String, String, usize)> = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::InvalidDfa(format!("line {}: {msg}", lineno + 1));
            if let Some(rest) = line.strip_prefix("alphabet:") {
                let mut letters = Vec::new();
                for tok in rest.split_whitespace() {
                    let mut cs = tok.chars();
                    match (cs.next(), cs.next()) {
                        (Some(c), None) => letters.push(c),
                        _ => return Err(bad("letters must be single characters")),
                    }
                }
                alphabet = Some(alphabet_of(&letters));
            } else if let Some(rest) = line.strip_prefix("initial:") {
                initial = Some(rest.trim().to_string());
            } else if let Some(rest) = line.strip_prefix("accepting:") {
                accepting.extend(rest.split_whitespace().map(String::from));
            } else {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(bad("expected 'from label to'"));
                }
                edges.push((toks[0].into(), toks[1].into(), toks[2].into(), lineno + 1));
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::InvalidDfa("missing alphabet line".into()))?;
        let initial = initial.ok_or_else(|| Error::InvalidDfa("missing initial line".into()))?;

        let mut b = Builder::new(&alphabet);
        let init = b.state(&initial);
        for name in &accepting {
            let q = b.state(name);
            b.accepting.insert(q);
        }
        for (from, label, to, lineno) in edges {
            b.add_path(&from, &label, &to)
                .map_err(|e| Error::InvalidDfa(format!("line {lineno}: {e}")))?;
        }
        Ok(b.build(init))
    }
}

struct Builder {
    alphabet: Vec<char>,
    names: Vec<String>,
    index: HashMap<String, usize>,
    accepting: BTreeSet<usize>,
    trans: BTreeMap<(usize, usize), usize>,
    fresh: HashMap<(usize, String), usize>,
}

impl Builder {
    fn new(alphabet: &[char]) -> Self {
        Builder {
            alphabet: alphabet.to_vec(),
            names: Vec::new(),
            index: HashMap::new(),
            accepting: BTreeSet::new(),
            trans: BTreeMap::new(),
            fresh: HashMap::new(),
        }
    }

    fn state(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    fn set(&mut self, from: usize, c: char, to: usize) -> std::result::Result<(), String> {
        let li = self
            .alphabet
            .binary_search(&c)
            .map_err(|_| format!("letter {c:?} is not in the alphabet"))?;
        match self.trans.insert((from, li), to) {
            Some(old) if old != to => Err(format!(
                "state {} has two transitions on {c:?}",
                self.names[from]
            )),
            _ => Ok(()),
        }
    }

    fn add_path(&mut self, from: &str, label: &str, to: &str) -> std::result::Result<(), String> {
        let letters: Vec<char> = label.chars().collect();
        let start = self.state(from);
        let end = self.state(to);
        let mut cur = start;
        for (i, &c) in letters.iter().enumerate() {
            if i + 1 == letters.len() {
                self.set(cur, c, end)?;
            } else {
                let prefix: String = letters[..=i].iter().collect();
                let key = (start, prefix.clone());
                let next = match self.fresh.get(&key) {
                    Some(&q) => q,
                    None => {
                        let mut name = format!("{from}.{prefix}");
                        while self.index.contains_key(&name) {
                            name.push('\'');
                        }
                        let q = self.state(&name);
                        self.fresh.insert(key, q);
                        q
                    }
                };
                self.set(cur, c, next)?;
                cur = next;
            }
        }
        Ok(())
    }

    fn build(self, initial: usize) -> Dfa {
        let n = self.names.len();
        let mut trans = vec![vec![None; self.alphabet.len()]; n];
        for ((s, li), t) in self.trans {
            trans[s][li] = Some(t);
        }
        Dfa {
            alphabet: self.alphabet,
            accepting: (0..n).map(|s| self.accepting.contains(&s)).collect(),
            names: self.names,
            initial,
            trans,
        }
    }
}

fn checked_pattern(w: &str, alphabet: &[char]) -> Result<Vec<char>> {
    let w: Vec<char> = w.chars().collect();
    if w.is_empty() {
        return Err(Error::InvalidDfa("empty pattern".into()));
    }
    if let Some(&c) = w.iter().find(|c| !alphabet.contains(c)) {
        return Err(Error::UnknownLetter(c));
    }
    Ok(w)
}

pub fn product(a: &Dfa, b: &Dfa, mode: ProductMode) -> Result<Dfa> {
    if a.alphabet != b.alphabet {
        let show = |d: &Dfa| d.alphabet.iter().collect::<String>();
        return Err(Error::AlphabetMismatch {
            left: show(a),
            right: show(b),
        });
    }
    let (a, b) = (a.complete(), b.complete());
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(a.initial, b.initial)];
    index.insert((a.initial, b.initial), 0);
    let mut trans: Vec<Vec<Option<usize>>> = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        let mut row = Vec::with_capacity(a.alphabet.len());
        for li in 0..a.alphabet.len() {
            let key = (a.trans[p][li].unwrap(), b.trans[q][li].unwrap());
            let k = *index.entry(key).or_insert_with(|| {
                pairs.push(key);
                pairs.len() - 1
            });
            row.push(Some(k));
        }
        trans.push(row);
        i += 1;
    }
    let accepting = pairs
        .iter()
        .map(|&(p, q)| {
            let (x, y) = (a.accepting[p], b.accepting[q]);
            match mode {
                ProductMode::Intersection => x && y,
                ProductMode::Union => x || y,
                ProductMode::Difference => x && !y,
            }
        })
        .collect();
    let d = Dfa {
        alphabet: a.alphabet.clone(),
        names: (0..pairs.len()).map(|i| format!("q{i}")).collect(),
        initial: 0,
        accepting,
        trans,
    };
    Ok(d.normalize())
}

/// Solves `v = e + x·T·v` for the initial state by eliminating the other
/// states one at a time; exact over rational functions.
pub fn gf(d: &Dfa) -> RationalFunction {
    let d = d.normalize();
    let n = d.num_states();
    if d.is_empty() {
        return RationalFunction::zero();
    }
    let x = RationalFunction::x();
    // a[i]: sparse row of coefficients on v_j; b[i]: constant part
    let mut a: Vec<BTreeMap<usize, RationalFunction>> = vec![BTreeMap::new(); n];
    let mut b: Vec<RationalFunction> = Vec::with_capacity(n);
    for (s, row) in a.iter_mut().enumerate() {
        for &t in d.trans[s].iter().flatten() {
            let e = row.entry(t).or_insert_with(RationalFunction::zero);
            *e = &*e + &x;
        }
        b.push(if d.accepting[s] {
            RationalFunction::one()
        } else {
            RationalFunction::zero()
        });
    }
    let one = RationalFunction::one();
    // eliminate in reverse breadth-first order, keeping the initial state last
    for k in (0..n).rev() {
        if k == d.initial {
            continue;
        }
        let self_loop = a[k].remove(&k).unwrap_or_else(RationalFunction::zero);
        let denom = &one - &self_loop;
        let scale = &one / &denom;
        let bk = &b[k] * &scale;
        let row_k: Vec<(usize, RationalFunction)> =
            a[k].iter().map(|(&j, c)| (j, c * &scale)).collect();
        for i in 0..n {
            if i == k {
                continue;
            }
            let Some(aik) = a[i].remove(&k) else { continue };
            b[i] = &b[i] + &(&aik * &bk);
            for (j, c) in &row_k {
                let e = a[i].entry(*j).or_insert_with(RationalFunction::zero);
                *e = &*e + &(&aik * c);
                if e.is_zero() {
                    a[i].remove(j);
                }
            }
        }
        a[k].clear();
    }
    let s = d.initial;
    let self_loop = a[s].remove(&s).unwrap_or_else(RationalFunction::zero);
    &b[s] / &(&one - &self_loop)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIB: &str = "\
alphabet: a b c
initial: s
accepting: a ab
s c c
b a a
a c c
ab c c
c b b
b c c
a b ab
ab a a
";

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn check_gf(d: &Dfa) {
        let n = 2 * d.num_states() + 4;
        assert_eq!(d.gf().series(n).unwrap(), d.count_words(n));
    }

    #[test]
    fn fibonacci_automaton() {
        let d: Dfa = FIB.parse().unwrap();
        assert!(d.accepts("cba"));
        assert!(!d.accepts(""));
        assert!(!d.accepts("cbz"));
        assert_eq!(d.count_words(7), ints(&[0, 0, 0, 1, 1, 2, 3, 5]));
        assert_eq!(d.gf(), "x^3/(1-x-x^2)".parse().unwrap());
        check_gf(&d);
    }

    #[test]
    fn single_state_loops() {
        let d = Dfa::all_words(&['a'], &['a']);
        assert_eq!(d.gf(), "1/(1-x)".parse().unwrap());
        let d = Dfa::all_words(&['a', 'b', 'c'], &['a', 'b', 'c']);
        assert_eq!(d.count_words(4), ints(&[1, 3, 9, 27, 81]));
        assert_eq!(Dfa::empty_language(&['a']).gf(), RationalFunction::zero());
    }

    #[test]
    fn text_round_trip() {
        let d: Dfa = FIB.parse().unwrap();
        let t = d.to_text();
        assert_eq!(t.parse::<Dfa>().unwrap().to_text(), t);
        assert!(t.starts_with("alphabet: a b c\ninitial: s\naccepting: a ab\ns c c\n"));
    }

    #[test]
    fn multi_letter_labels() {
        let d: Dfa =
            "alphabet: a b c\ninitial: n0\naccepting: n1\nn0 aba n1\nn0 ba n1\nn0 abc n1\n"
                .parse()
                .unwrap();
        assert!(d.accepts("aba") && d.accepts("ba") && d.accepts("abc"));
        assert!(!d.accepts("ab") && !d.accepts("a"));
        assert_eq!(d.count_words(4), ints(&[0, 0, 1, 2, 0]));
        let clash = "alphabet: a b\ninitial: p\naccepting: q\np ab q\np a q\n".parse::<Dfa>();
        assert!(clash.is_err());
        let unknown = "alphabet: a\ninitial: p\np b p\n".parse::<Dfa>();
        assert!(unknown.is_err());
    }

    #[test]
    fn subword_automaton() {
        let ab = ['a', 'b'];
        let d = Dfa::subword_containment("ab", &ab).unwrap();
        assert_eq!(d.num_states(), 3);
        assert!(d.accepts("ab") && d.accepts("aab") && d.accepts("abb") && d.accepts("bab"));
        assert!(!d.accepts("ba"));
        let a = Dfa::subword_containment("a", &ab).unwrap();
        let counts = a.count_words(10);
        for (n, c) in counts.iter().enumerate() {
            assert_eq!(*c, BigInt::from((1u64 << n) - 1));
        }
    }

    #[test]
    fn factor_automaton() {
        let abc = ['a', 'b', 'c'];
        let d = Dfa::factor_containment("aab", &abc).unwrap();
        assert!(d.accepts("caaab") && d.accepts("aabc"));
        assert!(!d.accepts("abab") && !d.accepts("aacb"));
        check_gf(&d);
    }

    #[test]
    fn prefix_and_suffix_automata() {
        let ab = ['a', 'b'];
        let p = Dfa::with_prefix("aba", &ab).unwrap();
        let s = Dfa::with_suffix("aba", &ab).unwrap();
        for n in 0..=8 {
            for w in Dfa::all_words(&ab, &ab).words(n) {
                assert_eq!(p.accepts(&w), w.starts_with("aba"), "{w}");
                assert_eq!(s.accepts(&w), w.ends_with("aba"), "{w}");
            }
        }
        assert!(Dfa::with_suffix("", &ab).is_err());
        assert!(matches!(
            Dfa::with_prefix("ac", &ab),
            Err(Error::UnknownLetter('c'))
        ));
    }

    #[test]
    fn star_sequence_language() {
        let d = Dfa::star_sequence(&[&['a', 'b'], &['c']], &['a', 'b', 'c']);
        assert!(d.accepts("abbacc") && d.accepts("") && d.accepts("cc"));
        assert!(!d.accepts("cab"));
    }

    #[test]
    fn complement_partitions() {
        let abc = ['a', 'b', 'c'];
        let d = Dfa::subword_containment("cab", &abc).unwrap();
        let c = d.complement();
        let (x, y) = (d.count_words(12), c.count_words(12));
        for n in 0..=12 {
            assert_eq!(&x[n] + &y[n], BigInt::from(3u64.pow(n as u32)));
        }
        assert_eq!(c.complement().minimize(), d.minimize());
        assert!(d.intersect(&c).unwrap().is_empty());
        let all = Dfa::empty_language(&abc).complement();
        assert_eq!(all.count_words(3)[3], BigInt::from(27));
    }

    #[test]
    fn de_morgan_counts() {
        let abc = ['a', 'b', 'c'];
        let p = Dfa::subword_containment("ab", &abc).unwrap();
        let q = Dfa::factor_containment("ca", &abc).unwrap();
        let i = p.intersect(&q).unwrap();
        let u = p.union(&q).unwrap();
        let (ci, cu, cp, cq) = (
            i.count_words(12),
            u.count_words(12),
            p.count_words(12),
            q.count_words(12),
        );
        for n in 0..=12 {
            assert_eq!(&ci[n] + &cu[n], &cp[n] + &cq[n]);
        }
        let diff = p.difference(&q).unwrap();
        let cd = diff.count_words(12);
        for n in 0..=12 {
            assert_eq!(&cd[n] + &ci[n], cp[n]);
        }
        for d in [&i, &u, &diff] {
            check_gf(d);
        }
        assert!(p.intersect(&Dfa::empty_language(&['a'])).is_err());
    }

    #[test]
    fn normalize_and_minimize() {
        let d: Dfa = FIB.parse().unwrap();
        let n = d.normalize();
        assert_eq!(n.normalize(), n);
        assert_eq!(n.count_words(12), d.count_words(12));
        let m = d.minimize();
        assert_eq!(m.count_words(12), d.count_words(12));
        assert!(m.num_states() <= n.num_states());
        assert_eq!(m.minimize(), m);
    }

    #[test]
    fn subword_monotone() {
        let abc = ['a', 'b', 'c'];
        let small = Dfa::subword_containment("ac", &abc).unwrap();
        let big = Dfa::subword_containment("abc", &abc).unwrap();
        assert!(big.difference(&small).unwrap().is_empty());
        let any = Dfa::contains_any_subword(&["ab", "ca"], &abc).unwrap();
        for w in ["ab", "cba", "aab"] {
            assert!(any.accepts(w), "{w}");
        }
        assert!(!any.accepts("ba") && !any.accepts("bbc"));
    }

    #[test]
    fn with_accepting_restricts() {
        let d: Dfa = FIB.parse().unwrap();
        let only_a = d.with_accepting(&["a"]).unwrap();
        let only_ab = d.with_accepting(&["ab"]).unwrap();
        let (x, y, z) = (
            only_a.count_words(15),
            only_ab.count_words(15),
            d.count_words(15),
        );
        for n in 0..=15 {
            assert_eq!(&x[n] + &y[n], z[n]);
        }
        assert!(d.with_accepting(&["nope"]).is_err());
    }

    #[test]
    fn words_listing() {
        let d: Dfa = FIB.parse().unwrap();
        assert_eq!(d.words(5), ["cbaba", "cbcba"]);
    }
}
