//! Translating normal forms between `K = G ⋊⋉ H` and the pair `(G, H)`.
//!
//! Words over the factors are stored with ambient simple ids; their
//! `deltas` count powers of `Δ_G` (resp. `Δ_H`), not of `Δ`.

use thiserror::Error;

use crate::element::NormalWord;
use crate::germ::SimpleId;
use crate::zappa_szep::{Side, ZsError, ZsStructure};

#[derive(Debug, Error)]
pub enum NfError {
    /// An intermediate word of one of the translation loops was not in
    /// normal form. The loops never renormalize, so this signals a broken
    /// structure rather than a recoverable condition.
    #[error("renormalization needed: {0}")]
    RenormalizationNeeded(String),
    #[error("`{word}` is not a normal word over {side}")]
    NotNormal { word: String, side: String },
    #[error(transparent)]
    Zs(#[from] ZsError),
}

/// Normal forms of the `G`- and `H`-components of an element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NfPair {
    pub g: NormalWord,
    pub h: NormalWord,
}

/// How the two simples of a pair `x₁ | x₂` are presented.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// `g₁h₁ | g₂h₂`
    GhGh,
    /// `g₁h₁ | h₂g₂`
    GhHg,
    /// `h₁g₁ | g₂h₂`
    HgGh,
    /// `h₁g₁ | h₂g₂`
    HgHg,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::GhGh, Pattern::GhHg, Pattern::HgGh, Pattern::HgHg];
}

impl ZsStructure<'_> {
    fn meet_is_unit(&self, a: SimpleId, b: SimpleId) -> bool {
        self.germ().meet(a, b).is_unit()
    }

    /// `∁_G(h₁⁻¹ ▷ g₁) ∧ g₂ = 1` and `∁_H(g₁⁻¹ ▶ h₁) ∧ h₂ = 1`, which
    /// holds exactly when `∁_K(g₁ ∨ h₁) ∧ (g₂ ∨ h₂) = 1`.
    pub fn join_pair_condition(&self, g1: SimpleId, h1: SimpleId, g2: SimpleId, h2: SimpleId) -> bool {
        self.meet_is_unit(self.factor_complement(Side::G, self.rr_inv(h1, g1)), g2)
            && self.meet_is_unit(self.factor_complement(Side::H, self.lr_inv(g1, h1)), h2)
    }

    /// Factor-level form of `∁_K x₁ ∧ x₂ = 1` where `x₁, x₂` are built from
    /// `(g₁, h₁)` and `(g₂, h₂)` as `pattern` prescribes.
    pub fn pair_condition(&self, pattern: Pattern, g1: SimpleId, h1: SimpleId, g2: SimpleId, h2: SimpleId) -> bool {
        let cg = |g| self.factor_complement(Side::G, g);
        let ch = |h| self.factor_complement(Side::H, h);
        match pattern {
            Pattern::GhGh => {
                self.meet_is_unit(cg(self.ll(g1, h1)), g2) && self.meet_is_unit(ch(h1), self.lr(g2, h2))
            }
            Pattern::GhHg => {
                self.meet_is_unit(cg(self.ll(g1, h1)), self.rr(h2, g2)) && self.meet_is_unit(ch(h1), h2)
            }
            Pattern::HgGh => {
                self.meet_is_unit(cg(g1), g2) && self.meet_is_unit(ch(self.rl(h1, g1)), self.lr(g2, h2))
            }
            Pattern::HgHg => {
                self.meet_is_unit(cg(g1), self.rr(h2, g2)) && self.meet_is_unit(ch(self.rl(h1, g1)), h2)
            }
        }
    }

    /// Whether `x₁ | x₂` is a normal pair in `K`, decided from factor data.
    pub fn is_normal_pair(&self, pattern: Pattern, g1: SimpleId, h1: SimpleId, g2: SimpleId, h2: SimpleId) -> bool {
        !(g2.is_unit() && h2.is_unit()) && self.pair_condition(pattern, g1, h1, g2, h2)
    }

    /// The simples `(x₁, x₂)` of `K` that `pattern` describes.
    pub fn pattern_simples(&self, pattern: Pattern, g1: SimpleId, h1: SimpleId, g2: SimpleId, h2: SimpleId) -> (SimpleId, SimpleId) {
        let k = self.germ();
        let p = |a, b| k.product(a, b).expect("products of factor simples are simple");
        match pattern {
            Pattern::GhGh => (p(g1, h1), p(g2, h2)),
            Pattern::GhHg => (p(g1, h1), p(h2, g2)),
            Pattern::HgGh => (p(h1, g1), p(g2, h2)),
            Pattern::HgHg => (p(h1, g1), p(h2, g2)),
        }
    }

    /// Letters of a factor word, `Δ_G` or `Δ_H` powers spelled out.
    pub fn factor_letters(&self, side: Side, w: &NormalWord) -> Vec<SimpleId> {
        w.letters(self.delta_of(side))
    }

    /// Whether `w` is a normal word of the given factor.
    pub fn is_factor_normal(&self, side: Side, w: &NormalWord) -> bool {
        let d = self.delta_of(side);
        w.factors.iter().all(|&s| self.member(side, s) && !s.is_unit() && s != d)
            && w.factors
                .windows(2)
                .all(|p| self.meet_is_unit(self.factor_complement(side, p[0]), p[1]))
    }

    /// Reads an element of a factor as a factor word, counting leading
    /// `Δ_G` (resp. `Δ_H`) letters as powers. Fails if `x` is outside the factor.
    pub fn to_factor_word(&self, side: Side, x: &crate::element::Element) -> Result<NormalWord, NfError> {
        let letters = x.letters(self.germ().delta());
        self.seal(Some(side), &letters)
    }

    /// The element of `K` spelled by a factor word.
    pub fn factor_to_element(&self, side: Side, w: &NormalWord) -> crate::element::Element {
        self.germ().normal_form(&self.factor_letters(side, w))
    }

    /// Turns a letter word over a factor (or over `K`) into a normal word,
    /// failing if it is not already in normal form.
    fn seal(&self, side: Option<Side>, letters: &[SimpleId]) -> Result<NormalWord, NfError> {
        let k = self.germ();
        let (delta, label) = match side {
            Some(s) => (self.delta_of(s), s.to_string()),
            None => (k.delta(), "K".to_string()),
        };
        let deltas = letters.iter().take_while(|&&s| s == delta).count();
        let w = NormalWord {
            deltas,
            factors: letters[deltas..].to_vec(),
        };
        let ok = match side {
            Some(s) => self.is_factor_normal(s, &w),
            None => k.is_normal(&w),
        };
        if ok {
            Ok(w)
        } else {
            Err(NfError::NotNormal {
                word: k.format_word(letters),
                side: label,
            })
        }
    }

    /// Checks that a letter word lies in the language of normal words with
    /// `Δ` allowed as a letter: no unit letters, every adjacent pair normal.
    fn check_full_normal(&self, letters: &[SimpleId], stage: &str) -> Result<(), NfError> {
        let k = self.germ();
        let ok = letters.iter().all(|s| !s.is_unit())
            && letters.windows(2).all(|p| k.is_normal_pair(p[0], p[1]));
        if ok {
            Ok(())
        } else {
            Err(NfError::RenormalizationNeeded(format!("{stage} produced {}", k.format_word(letters))))
        }
    }

    /// Normal forms of the GH-components of the element with normal form `w`.
    pub fn split_nf(&self, w: &NormalWord) -> Result<NfPair, NfError> {
        let k = self.germ();
        if !k.is_normal(w) {
            return Err(NfError::NotNormal {
                word: k.format_normal(w),
                side: "K".into(),
            });
        }
        let mut word_h = w.letters(k.delta());
        let mut word_g = Vec::new();
        loop {
            let parts: Vec<(SimpleId, SimpleId)> = word_h.iter().map(|&x| self.gh_simple(x)).collect();
            let Some(&(g_first, _)) = parts.first() else { break };
            if g_first.is_unit() {
                break;
            }
            word_g.push(g_first);
            let l = parts.len();
            let mut next = Vec::with_capacity(l);
            for i in 0..l - 1 {
                next.push(k.product(parts[i].1, parts[i + 1].0).expect("h·g of simples is simple"));
            }
            if !parts[l - 1].1.is_unit() {
                next.push(parts[l - 1].1);
            }
            self.check_full_normal(&next, "decomposition step")?;
            word_h = next;
        }
        let g = self.seal(Some(Side::G), &word_g).map_err(renorm)?;
        let h = self.seal(Some(Side::H), &word_h).map_err(renorm)?;
        Ok(NfPair { g, h })
    }

    /// Normal form of `g₁⋯g_m h₁⋯h_n` from the normal forms of the factors.
    pub fn merge_nf(&self, p: &NfPair) -> Result<NormalWord, NfError> {
        let k = self.germ();
        for (side, w) in [(Side::G, &p.g), (Side::H, &p.h)] {
            if !self.is_factor_normal(side, w) {
                return Err(NfError::NotNormal {
                    word: k.format_normal(w),
                    side: side.to_string(),
                });
            }
        }
        let mut word_g = self.factor_letters(Side::G, &p.g);
        let mut word_k = self.factor_letters(Side::H, &p.h);
        while let Some(g) = word_g.pop() {
            let parts: Vec<(SimpleId, SimpleId)> = word_k.iter().map(|&x| self.hg_simple(x)).collect();
            let mut next = Vec::with_capacity(parts.len() + 1);
            let mut carry = g;
            for &(h, g2) in &parts {
                next.push(k.product(carry, h).expect("g·h of simples is simple"));
                carry = g2;
            }
            if !carry.is_unit() {
                next.push(carry);
            }
            self.check_full_normal(&next, "merge step")?;
            word_k = next;
        }
        self.seal(None, &word_k).map_err(renorm)
    }

    pub fn phi(&self, p: &NfPair) -> Result<NormalWord, NfError> {
        self.merge_nf(p)
    }

    pub fn phi_inv(&self, w: &NormalWord) -> Result<NfPair, NfError> {
        self.split_nf(w)
    }

    /// Normal form of `g ∨ h`, computed as `φ(g, g⁻¹ ▶ h)`.
    pub fn psi(&self, p: &NfPair) -> Result<NormalWord, NfError> {
        let gw = self.factor_letters(Side::G, &p.g);
        let hw = self.factor_letters(Side::H, &p.h);
        let acted = self.lr_inv_word(&gw, &hw);
        let h = self.seal(Some(Side::H), &acted).map_err(renorm)?;
        self.merge_nf(&NfPair { g: p.g.clone(), h })
    }

    /// Parses a word over one factor into its normal form there. `D^k`
    /// stands for `k` copies of the factor's Garside element.
    pub fn parse_factor_word(&self, side: Side, text: &str) -> Result<NormalWord, NfError> {
        let k = self.germ();
        let bad = |e: String| NfError::NotNormal {
            word: format!("{text} ({e})"),
            side: side.to_string(),
        };
        let mut letters = Vec::new();
        for tok in text.split(['.', '|']).map(str::trim).filter(|t| !t.is_empty()) {
            match tok.strip_prefix("D^") {
                Some(p) if k.lookup(tok).is_none() => {
                    let n: usize = p.parse().map_err(|_| bad(format!("malformed delta power `{tok}`")))?;
                    letters.extend(std::iter::repeat_n(self.delta_of(side), n));
                }
                _ => letters.push(k.lookup(tok).ok_or_else(|| bad(format!("unknown simple `{tok}`")))?),
            }
        }
        self.seal(Some(side), &letters)
    }

    /// Formats a factor word with `D^k` standing for powers of the factor's Garside element.
    pub fn format_factor(&self, w: &NormalWord) -> String {
        self.germ().format_normal(w)
    }
}

fn renorm(e: NfError) -> NfError {
    match e {
        NfError::NotNormal { word, side } => {
            NfError::RenormalizationNeeded(format!("result {word} is not normal over {side}"))
        }
        other => other,
    }
}
