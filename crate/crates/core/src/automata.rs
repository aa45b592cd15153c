//! Deterministic acceptors of normal-form languages.
//!
//! States are "start", "last letter read was x" for each letter x, and a
//! dead sink. Every non-dead state accepts.

use std::fmt::Write as _;

use thiserror::Error;

use crate::germ::{Germ, SimpleId};
use crate::zappa_szep::{Side, ZsStructure};

/// Words longer than this many accepted words are not enumerated.
pub const ENUMERATION_LIMIT: u128 = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("{count} accepted words of length {n} exceed the enumeration limit")]
    TooMany { n: usize, count: u128 },
    #[error("automaton was not built over this structure's germ")]
    ForeignAutomaton,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Letters are the simples other than `1` and `Δ`.
    Proper,
    /// Letters are the simples other than `1`; `Δ` is an ordinary letter.
    Full,
}

#[derive(Clone, Debug)]
pub struct NfAutomaton {
    variant: Variant,
    alphabet: Vec<SimpleId>,
    labels: Vec<String>,
    letter_index: Vec<Option<usize>>,
    /// `next[state * |alphabet| + letter]`.
    next: Vec<usize>,
}

/// Equality up to the ids of the underlying germ: same variant, letter
/// labels and transitions.
impl PartialEq for NfAutomaton {
    fn eq(&self, other: &Self) -> bool {
        self.variant == other.variant && self.labels == other.labels && self.next == other.next
    }
}

impl NfAutomaton {
    /// Builds an automaton over `alphabet` (simples of a germ with `n`
    /// simples) with liveness decided by `live(x, y)`.
    fn from_rule(
        variant: Variant,
        alphabet: Vec<SimpleId>,
        labels: Vec<String>,
        germ_len: usize,
        live: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let m = alphabet.len();
        let dead = m + 1;
        let mut letter_index = vec![None; germ_len];
        for (i, &s) in alphabet.iter().enumerate() {
            letter_index[s.index()] = Some(i);
        }
        let mut next = vec![dead; (m + 2) * m];
        for y in 0..m {
            next[y] = y + 1;
        }
        for x in 0..m {
            for y in 0..m {
                if live(x, y) {
                    next[(x + 1) * m + y] = y + 1;
                }
            }
        }
        NfAutomaton {
            variant,
            alphabet,
            labels,
            letter_index,
            next,
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn alphabet(&self) -> &[SimpleId] {
        &self.alphabet
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn state_count(&self) -> usize {
        self.alphabet.len() + 2
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn dead(&self) -> usize {
        self.alphabet.len() + 1
    }

    /// State reached after reading `letter` (an alphabet position).
    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.next[state * self.alphabet.len() + letter]
    }

    /// State recording that `s` was the last letter read.
    pub fn state_of(&self, s: SimpleId) -> Option<usize> {
        self.letter_index.get(s.index()).copied().flatten().map(|i| i + 1)
    }

    pub fn letter_of(&self, s: SimpleId) -> Option<usize> {
        self.letter_index.get(s.index()).copied().flatten()
    }

    pub fn accepts(&self, word: &[SimpleId]) -> bool {
        let mut state = self.start();
        for &s in word {
            let Some(y) = self.letter_of(s) else {
                return false;
            };
            state = self.step(state, y);
            if state == self.dead() {
                return false;
            }
        }
        true
    }

    /// Number of accepted words of length `n`.
    pub fn count_accepted(&self, n: usize) -> u128 {
        let m = self.alphabet.len();
        let mut counts = vec![0u128; m + 2];
        counts[0] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; m + 2];
            for (state, &c) in counts.iter().enumerate() {
                if c == 0 || state == self.dead() {
                    continue;
                }
                for y in 0..m {
                    next[self.step(state, y)] += c;
                }
            }
            counts = next;
        }
        counts[..=m].iter().sum()
    }

    /// All accepted words of length `n`, in lexicographic alphabet order.
    pub fn enumerate_accepted(&self, n: usize) -> Result<Vec<Vec<SimpleId>>, AutomatonError> {
        let count = self.count_accepted(n);
        if count > ENUMERATION_LIMIT {
            return Err(AutomatonError::TooMany { n, count });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut word = Vec::with_capacity(n);
        self.extend(self.start(), n, &mut word, &mut out);
        Ok(out)
    }

    fn extend(&self, state: usize, left: usize, word: &mut Vec<SimpleId>, out: &mut Vec<Vec<SimpleId>>) {
        if left == 0 {
            out.push(word.clone());
            return;
        }
        for y in 0..self.alphabet.len() {
            let next = self.step(state, y);
            if next != self.dead() {
                word.push(self.alphabet[y]);
                self.extend(next, left - 1, word, out);
                word.pop();
            }
        }
    }

    fn state_label(&self, state: usize) -> &str {
        if state == 0 {
            "start"
        } else if state == self.dead() {
            "dead"
        } else {
            &self.labels[state - 1]
        }
    }

    /// Graphviz rendering. Edges into the dead state are omitted.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph nf {\n  rankdir=LR;\n  node [shape=doublecircle];\n");
        for state in 0..self.state_count() {
            let shape = if state == self.dead() { " shape=circle" } else { "" };
            writeln!(out, "  q{state} [label=\"{}\"{shape}];", dot_escape(self.state_label(state))).unwrap();
        }
        for state in 0..self.dead() {
            for (y, label) in self.labels.iter().enumerate() {
                let next = self.step(state, y);
                if next != self.dead() {
                    writeln!(out, "  q{state} -> q{next} [label=\"{}\"];", dot_escape(label)).unwrap();
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Full transition table as tab-separated values.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("state\tletter\tnext\n");
        for state in 0..self.state_count() {
            for (y, label) in self.labels.iter().enumerate() {
                let next = self.step(state, y);
                writeln!(out, "{}\t{label}\t{}", self.state_label(state), self.state_label(next)).unwrap();
            }
        }
        out
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Automaton of normal words over `germ`.
pub fn build_nf_automaton(germ: &Germ, variant: Variant) -> NfAutomaton {
    let alphabet: Vec<SimpleId> = germ
        .simples()
        .filter(|&s| !s.is_unit() && (variant == Variant::Full || s != germ.delta()))
        .collect();
    let labels = alphabet.iter().map(|&s| germ.name(s).to_string()).collect();
    let letters = alphabet.clone();
    NfAutomaton::from_rule(variant, alphabet, labels, germ.len(), |x, y| {
        germ.is_normal_pair(letters[x], letters[y])
    })
}

/// Direct full-variant automaton of one factor, over the factor's own germ.
pub fn factor_automaton(zs: &ZsStructure, side: Side) -> NfAutomaton {
    build_nf_automaton(&zs.factor(side).germ, Variant::Full)
}

/// `∁x ∧ y = 1` read off a factor automaton built over the factor germ.
fn factor_live(a: &NfAutomaton, x: SimpleId, y: SimpleId) -> bool {
    if y.is_unit() {
        return true;
    }
    if x.is_unit() {
        return false;
    }
    let (Some(state), Some(letter)) = (a.state_of(x), a.letter_of(y)) else {
        return false;
    };
    a.step(state, letter) != a.dead()
}

/// The full automaton of `K`, assembled from full factor automata and the
/// action tables. No meet or complement of `K` is consulted.
pub fn translate_pair_to_product(
    zs: &ZsStructure,
    a_g: &NfAutomaton,
    a_h: &NfAutomaton,
) -> NfAutomaton {
    let k = zs.germ();
    let fg = zs.factor(Side::G);
    let fh = zs.factor(Side::H);
    let mut letters: Vec<(SimpleId, SimpleId, SimpleId)> = Vec::new();
    for &g in zs.g_simples() {
        for &h in zs.h_simples() {
            if g.is_unit() && h.is_unit() {
                continue;
            }
            // g ∨ h = g·(g⁻¹ ▶ h)
            let joined = k
                .product(g, zs.lr_inv(g, h))
                .expect("joins of factor simples are simple");
            letters.push((joined, g, h));
        }
    }
    letters.sort();
    let alphabet: Vec<SimpleId> = letters.iter().map(|l| l.0).collect();
    let labels = alphabet.iter().map(|&s| k.name(s).to_string()).collect();
    NfAutomaton::from_rule(Variant::Full, alphabet, labels, k.len(), |x, y| {
        let (_, g1, h1) = letters[x];
        let (_, g2, h2) = letters[y];
        // ∁_G(h₁⁻¹ ▷ g₁) ∧ g₂ = 1 and ∁_H(g₁⁻¹ ▶ h₁) ∧ h₂ = 1
        let g_prev = fg.local(zs.rr_inv(h1, g1)).unwrap();
        let h_prev = fh.local(zs.lr_inv(g1, h1)).unwrap();
        factor_live(a_g, g_prev, fg.local(g2).unwrap()) && factor_live(a_h, h_prev, fh.local(h2).unwrap())
    })
}

/// Factor automata recovered from an automaton of `K` by keeping only the
/// letters of each factor. The results are full-variant automata over the
/// factor germs.
pub fn project_product_to_pair(
    zs: &ZsStructure,
    a_k: &NfAutomaton,
) -> Result<(NfAutomaton, NfAutomaton), AutomatonError> {
    let k = zs.germ();
    if a_k.letter_index.len() != k.len()
        || a_k.alphabet.iter().zip(&a_k.labels).any(|(&s, l)| k.name(s) != l)
    {
        return Err(AutomatonError::ForeignAutomaton);
    }
    let project = |side: Side| {
        let f = zs.factor(side);
        let kept: Vec<usize> = (0..a_k.alphabet.len())
            .filter(|&i| zs.member(side, a_k.alphabet[i]))
            .collect();
        let alphabet = kept.iter().map(|&i| f.local(a_k.alphabet[i]).unwrap()).collect();
        let labels = kept.iter().map(|&i| a_k.labels[i].clone()).collect();
        NfAutomaton::from_rule(Variant::Full, alphabet, labels, f.germ.len(), |x, y| {
            a_k.step(kept[x] + 1, kept[y]) != a_k.dead()
        })
    };
    Ok((project(Side::G), project(Side::H)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::wreath_example_germ;

    #[test]
    fn dot_labels_are_escaped() {
        assert_eq!(dot_escape(r#"a"b\c"#), r#"a\"b\\c"#);
    }

    #[test]
    fn wreath_proper_automaton() {
        let g = wreath_example_germ();
        let a = build_nf_automaton(&g, Variant::Proper);
        assert_eq!(a.alphabet().len(), 6);
        assert_eq!(a.state_count(), 8);
        let w = |s: &str| g.parse_word(s).unwrap();
        assert!(a.accepts(&w("c.c")));
        assert!(!a.accepts(&w("a.bc")));
        assert!(!a.accepts(&w("abc")));
        assert_eq!(a.count_accepted(0), 1);
        assert_eq!(a.count_accepted(1), 6);
        let brute = g
            .proper_simples()
            .flat_map(|x| g.proper_simples().map(move |y| (x, y)))
            .filter(|&(x, y)| g.is_normal_pair(x, y))
            .count();
        assert_eq!(a.count_accepted(2), brute as u128);
        assert_eq!(a.enumerate_accepted(2).unwrap().len(), brute);
    }

    #[test]
    fn trivial_germ_accepts_only_empty_word() {
        let g = crate::germ::parse_germ("germ v1\nsimples: 1\ndelta: 1\n").unwrap();
        let a = build_nf_automaton(&g, Variant::Proper);
        assert!(a.alphabet().is_empty());
        assert_eq!(a.count_accepted(0), 1);
        assert_eq!(a.count_accepted(3), 0);
    }

    #[test]
    fn translation_and_projection() {
        let g = wreath_example_germ();
        let zs = ZsStructure::build_named(&g, &["a", "b"]).unwrap();
        let a_g = factor_automaton(&zs, Side::G);
        let a_h = factor_automaton(&zs, Side::H);
        let t = translate_pair_to_product(&zs, &a_g, &a_h);
        assert_eq!(t.alphabet().len(), 7);
        assert_eq!(t, build_nf_automaton(&g, Variant::Full));
        let (pg, ph) = project_product_to_pair(&zs, &t).unwrap();
        assert_eq!(pg, a_g);
        assert_eq!(ph, a_h);
    }
}
