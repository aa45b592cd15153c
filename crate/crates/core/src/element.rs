//! Elements of the monoid presented by a germ, kept in left normal form.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::germ::{Germ, SimpleId};

/// A word in left normal form: `Δ^deltas · x₁ | x₂ | ⋯ | x_ℓ`.
///
/// Factors are proper simples and every adjacent pair satisfies
/// `∂xᵢ ∧ xᵢ₊₁ = 1`. Construct through [`Germ::normal_form`] and friends.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    pub deltas: usize,
    pub factors: Vec<SimpleId>,
}

/// Monoid elements are identified with their normal forms.
pub type Element = NormalWord;

impl NormalWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.deltas == 0 && self.factors.is_empty()
    }

    pub fn inf(&self) -> usize {
        self.deltas
    }

    pub fn sup(&self) -> usize {
        self.deltas + self.factors.len()
    }

    /// Canonical length.
    pub fn cl(&self) -> usize {
        self.factors.len()
    }

    /// The word spelled out letter by letter, `Δ` included.
    pub fn letters(&self, delta: SimpleId) -> Vec<SimpleId> {
        let mut out = vec![delta; self.deltas];
        out.extend_from_slice(&self.factors);
        out
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown simple `{0}`")]
    UnknownSimple(String),
    #[error("malformed delta power `{0}`")]
    BadPower(String),
}

impl Germ {
    /// Parses a word such as `a.bc`, `D^2 | a | b` or `1`.
    ///
    /// Factors are separated by `.` or `|`; `D^k` stands for `k` copies of `Δ`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<SimpleId>, WordError> {
        let mut out = Vec::new();
        for tok in text.split(['.', '|']).map(str::trim) {
            if tok.is_empty() {
                continue;
            }
            if let Some(s) = self.lookup(tok) {
                out.push(s);
                continue;
            }
            if let Some(k) = tok.strip_prefix("D^") {
                let k: usize = k.parse().map_err(|_| WordError::BadPower(tok.to_string()))?;
                out.extend(std::iter::repeat_n(self.delta(), k));
                continue;
            }
            return Err(WordError::UnknownSimple(tok.to_string()));
        }
        Ok(out)
    }

    /// Parses a word and returns its normal form.
    pub fn parse_element(&self, text: &str) -> Result<Element, WordError> {
        Ok(self.normal_form(&self.parse_word(text)?))
    }

    /// Formats a word of simples with `.` separators.
    pub fn format_word(&self, word: &[SimpleId]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Formats a normal form as `D^k | x₁ | x₂`, or `1` for the identity.
    pub fn format_normal(&self, w: &NormalWord) -> String {
        let mut parts = Vec::with_capacity(w.factors.len() + 1);
        if w.deltas > 0 {
            parts.push(format!("D^{}", w.deltas));
        }
        parts.extend(w.factors.iter().map(|&s| self.name(s).to_string()));
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" | ")
        }
    }

    /// Whether `x | y` is a left-weighted pair.
    #[inline]
    pub fn is_normal_pair(&self, x: SimpleId, y: SimpleId) -> bool {
        self.meet(self.complement(x), y).is_unit()
    }

    /// Checks every structural condition of a normal word.
    pub fn is_normal(&self, w: &NormalWord) -> bool {
        w.factors
            .iter()
            .all(|&s| !s.is_unit() && s != self.delta())
            && w.factors.windows(2).all(|p| self.is_normal_pair(p[0], p[1]))
    }

    /// Left normal form of the product of `word`.
    pub fn normal_form(&self, word: &[SimpleId]) -> NormalWord {
        let mut w = NormalWord::identity();
        for &s in word {
            self.push_simple(&mut w, s);
        }
        w
    }

    /// Right-multiplies a normal word by a simple, restoring normality.
    pub fn push_simple(&self, w: &mut NormalWord, s: SimpleId) {
        if s.is_unit() {
            return;
        }
        w.factors.push(s);
        let mut i = w.factors.len() - 1;
        while i > 0 {
            let (x, y) = (w.factors[i - 1], w.factors[i]);
            let u = self.meet(self.complement(x), y);
            if u.is_unit() {
                break;
            }
            w.factors[i - 1] = self.product(x, u).expect("x·u divides Δ");
            w.factors[i] = self.left_quotient(u, y).expect("u is a prefix of y");
            i -= 1;
        }
        let lead = w.factors.iter().take_while(|&&f| f == self.delta()).count();
        if lead > 0 {
            w.deltas += lead;
            w.factors.drain(..lead);
        }
        while w.factors.last().is_some_and(|f| f.is_unit()) {
            w.factors.pop();
        }
    }

    /// `τᵏ(s)` where `τ = ∂²` is conjugation by `Δ`: `sΔ = Δτ(s)`.
    pub fn delta_conjugate(&self, s: SimpleId, k: usize) -> SimpleId {
        let step = |x: SimpleId| self.complement(self.complement(x));
        let mut period = 1;
        let mut cur = step(s);
        while cur != s {
            cur = step(cur);
            period += 1;
        }
        (0..k % period).fold(s, |x, _| step(x))
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut out = NormalWord {
            deltas: x.deltas + y.deltas,
            factors: x
                .factors
                .iter()
                .map(|&s| self.delta_conjugate(s, y.deltas))
                .collect(),
        };
        // Conjugation preserves normality, so only y's factors need pushing.
        for &s in &y.factors {
            self.push_simple(&mut out, s);
        }
        out
    }

    pub fn simple_element(&self, s: SimpleId) -> Element {
        self.normal_form(&[s])
    }

    /// Atom length, additive when the germ is homogeneous.
    pub fn atom_length(&self, x: &Element) -> usize {
        x.deltas * self.rank(self.delta()) + x.factors.iter().map(|&s| self.rank(s)).sum::<usize>()
    }

    /// `s\(y₁⋯yₙ)` as a word of `n` simples, by `c\(ab) = (c\a)·((a\c)\b)`.
    pub fn lcomp_simple_word(&self, s: SimpleId, ys: &[SimpleId]) -> Vec<SimpleId> {
        let mut cur = s;
        let mut out = Vec::with_capacity(ys.len());
        for &y in ys {
            out.push(self.lcomp(cur, y));
            cur = self.lcomp(y, cur);
        }
        out
    }

    /// `x\y`, by `(ab)\c = b\(a\c)` over the letters of `x`.
    pub fn left_complement(&self, x: &Element, y: &Element) -> Element {
        let mut word = y.letters(self.delta());
        for s in x.letters(self.delta()) {
            word = self.lcomp_simple_word(s, &word);
        }
        self.normal_form(&word)
    }

    pub fn lcm(&self, x: &Element, y: &Element) -> Element {
        self.multiply(x, &self.left_complement(x, y))
    }

    /// `x ≼ y`.
    pub fn divides(&self, x: &Element, y: &Element) -> bool {
        &self.multiply(x, &self.left_complement(x, y)) == y
    }

    /// `Δ ∧ x`.
    pub fn head(&self, x: &Element) -> SimpleId {
        if x.deltas > 0 {
            self.delta()
        } else {
            x.factors.first().copied().unwrap_or(SimpleId::UNIT)
        }
    }

    /// Greatest common prefix.
    pub fn gcd(&self, x: &Element, y: &Element) -> Element {
        let (mut x, mut y) = (x.clone(), y.clone());
        let mut acc = NormalWord::identity();
        loop {
            let alpha = self.meet(self.head(&x), self.head(&y));
            if alpha.is_unit() {
                return acc;
            }
            let a = self.simple_element(alpha);
            x = self.left_complement(&a, &x);
            y = self.left_complement(&a, &y);
            self.push_simple(&mut acc, alpha);
        }
    }

    /// Moves an element into the opposite germ by reading it backwards.
    fn reversed(&self, x: &Element, target: &Germ) -> Element {
        let mut letters = x.letters(self.delta());
        letters.reverse();
        target.normal_form(&letters)
    }

    /// Greatest common suffix.
    pub fn rgcd(&self, x: &Element, y: &Element) -> Element {
        let op = self.opposite_cached();
        let r = op.gcd(&self.reversed(x, op), &self.reversed(y, op));
        op.reversed(&r, self)
    }

    /// Least common left multiple.
    pub fn rlcm(&self, x: &Element, y: &Element) -> Element {
        let op = self.opposite_cached();
        let r = op.lcm(&self.reversed(x, op), &self.reversed(y, op));
        op.reversed(&r, self)
    }

    /// `y/x`, with `(y/x)·x` the least common left multiple.
    pub fn right_complement(&self, x: &Element, y: &Element) -> Element {
        let op = self.opposite_cached();
        let r = op.left_complement(&self.reversed(x, op), &self.reversed(y, op));
        op.reversed(&r, self)
    }

    /// `y ≽ x`: `x` is a suffix of `y`.
    pub fn rdivides(&self, x: &Element, y: &Element) -> bool {
        let op = self.opposite_cached();
        op.divides(&self.reversed(x, op), &self.reversed(y, op))
    }

    /// A witness that `x` is not balanced: an element of atom length at
    /// most `max_len` that is a prefix of `x` but not a suffix, or the
    /// reverse. `None` if the two divisor sets agree up to that length.
    pub fn balance_witness(&self, x: &Element, max_len: usize) -> Option<Element> {
        self.elements_by_length(max_len)
            .into_iter()
            .flatten()
            .find(|y| self.divides(y, x) != self.rdivides(y, x))
    }

    /// All elements of atom length exactly `n` for `n ≤ max_len`, indexed by
    /// length and sorted. Assumes a homogeneous germ.
    pub fn elements_by_length(&self, max_len: usize) -> Vec<Vec<Element>> {
        let mut layers = vec![vec![NormalWord::identity()]];
        for _ in 0..max_len {
            let mut next = HashSet::new();
            for x in layers.last().unwrap() {
                for &a in self.atoms() {
                    let mut y = x.clone();
                    self.push_simple(&mut y, a);
                    next.insert(y);
                }
            }
            let mut next: Vec<_> = next.into_iter().collect();
            next.sort();
            layers.push(next);
        }
        layers
    }
}

/// Display helper binding a normal word to its germ.
pub struct ShowNormal<'a>(pub &'a Germ, pub &'a NormalWord);

impl fmt::Display for ShowNormal<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format_normal(self.1))
    }
}
