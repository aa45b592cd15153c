//! Zappa–Szép decompositions `K = G ⋊⋉ H` of a germ's monoid.
//!
//! Every `k` factors uniquely as `k = g₁h₁ = h₂g₂`. Rewriting a product
//! `hg` into `G·H` form and `gh` into `H·G` form defines four actions:
//!
//! ```text
//! hg = (h ▷ g)(h ◁ g)        gh = (g ▶ h)(g ◀ h)
//! ```
//!
//! On simples they are tabulated at build time; on words they are folded
//! from the tables one letter at a time.

use std::fmt;

use thiserror::Error;

use crate::element::Element;
use crate::germ::{Germ, GermError, SimpleId};
use crate::quasicenter::QuasiCenterError;

#[derive(Debug, Error)]
pub enum ZsError {
    #[error("`{0}` is not an atom")]
    NotAnAtom(String),
    #[error("left atoms must be a non-empty proper subset of the atoms")]
    TrivialSide,
    #[error("left atoms are not a union of atom classes: `{inside}` and `{outside}` share a class")]
    NotAUnionOfClasses { inside: String, outside: String },
    #[error("decomposition failure: {0}")]
    DecompositionFailure(String),
    #[error("`{name}` is not in {side}")]
    NotInSide { name: String, side: Side },
    #[error(transparent)]
    QuasiCenter(#[from] QuasiCenterError),
    #[error(transparent)]
    Germ(#[from] GermError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    G,
    H,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::G => Side::H,
            Side::H => Side::G,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::G => "G",
            Side::H => "H",
        })
    }
}

/// The eight actions between the factors.
///
/// `Rr`: `h ▷ g`, `Rl`: `h ◁ g`, `Lr`: `g ▶ h`, `Ll`: `g ◀ h`; the `Inv`
/// variants act by the inverse bijections (`h⁻¹ ▷ g`, `h ◁ g⁻¹`,
/// `g⁻¹ ▶ h`, `g ◀ h⁻¹`).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    Rr,
    Rl,
    Lr,
    Ll,
    RrInv,
    RlInv,
    LrInv,
    LlInv,
}

impl Action {
    pub const ALL: [Action; 8] = [
        Action::Rr,
        Action::Rl,
        Action::Lr,
        Action::Ll,
        Action::RrInv,
        Action::RlInv,
        Action::LrInv,
        Action::LlInv,
    ];

    /// The factor the result lies in.
    pub fn output_side(self) -> Side {
        match self {
            Action::Rr | Action::Ll | Action::RrInv | Action::LlInv => Side::G,
            Action::Rl | Action::Lr | Action::RlInv | Action::LrInv => Side::H,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::Rr => "rr",
            Action::Rl => "rl",
            Action::Lr => "lr",
            Action::Ll => "ll",
            Action::RrInv => "rr-inv",
            Action::RlInv => "rl-inv",
            Action::LrInv => "lr-inv",
            Action::LlInv => "ll-inv",
        }
    }

    pub fn from_name(name: &str) -> Option<Action> {
        Action::ALL.into_iter().find(|a| a.name() == name)
    }
}

/// A parabolic factor viewed as a germ of its own.
#[derive(Clone, Debug)]
pub struct Factor {
    pub germ: Germ,
    /// Local id to ambient id.
    pub to_ambient: Vec<SimpleId>,
    from_ambient: Vec<Option<SimpleId>>,
}

impl Factor {
    pub fn local(&self, s: SimpleId) -> Option<SimpleId> {
        self.from_ambient[s.index()]
    }

    pub fn ambient(&self, s: SimpleId) -> SimpleId {
        self.to_ambient[s.index()]
    }
}

/// A validated Zappa–Szép structure with action tables on simples.
#[derive(Clone, Debug)]
pub struct ZsStructure<'g> {
    germ: &'g Germ,
    left_atoms: Vec<SimpleId>,
    right_atoms: Vec<SimpleId>,
    g_simples: Vec<SimpleId>,
    h_simples: Vec<SimpleId>,
    /// Position of a simple within `g_simples` or `h_simples`.
    pos: Vec<usize>,
    delta_g: SimpleId,
    delta_h: SimpleId,
    // Indexed [h_pos * |D_G| + g_pos] for rr/rl, [g_pos * |D_H| + h_pos] for lr/ll.
    rr: Vec<SimpleId>,
    rl: Vec<SimpleId>,
    lr: Vec<SimpleId>,
    ll: Vec<SimpleId>,
    rr_inv: Vec<SimpleId>,
    rl_inv: Vec<SimpleId>,
    lr_inv: Vec<SimpleId>,
    ll_inv: Vec<SimpleId>,
    factor_g: Factor,
    factor_h: Factor,
}

fn fail(msg: String) -> ZsError {
    ZsError::DecompositionFailure(msg)
}

impl<'g> ZsStructure<'g> {
    /// Builds and fully verifies the structure whose `G` is generated by
    /// `left_atoms`, which must be a union of atom classes.
    pub fn build(germ: &'g Germ, left_atoms: &[SimpleId]) -> Result<Self, ZsError> {
        let name = |s: SimpleId| germ.name(s).to_string();
        for &a in left_atoms {
            if !germ.is_atom(a) {
                return Err(ZsError::NotAnAtom(name(a)));
            }
        }
        let mut left: Vec<SimpleId> = left_atoms.to_vec();
        left.sort();
        left.dedup();
        let right: Vec<SimpleId> = germ
            .atoms()
            .iter()
            .copied()
            .filter(|a| !left.contains(a))
            .collect();
        if left.is_empty() || right.is_empty() {
            return Err(ZsError::TrivialSide);
        }
        let classes = germ.atom_classes()?;
        for class in &classes.classes {
            let inside = class.iter().find(|a| left.contains(a));
            let outside = class.iter().find(|a| !left.contains(a));
            if let (Some(&i), Some(&o)) = (inside, outside) {
                return Err(ZsError::NotAUnionOfClasses {
                    inside: name(i),
                    outside: name(o),
                });
            }
        }

        let generated = |atoms: &[SimpleId]| {
            let mut seen = vec![false; germ.len()];
            seen[0] = true;
            let mut stack = vec![SimpleId::UNIT];
            while let Some(x) = stack.pop() {
                for &a in atoms {
                    if let Some(y) = germ.product(x, a) {
                        if !seen[y.index()] {
                            seen[y.index()] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            germ.simples().filter(|s| seen[s.index()]).collect::<Vec<_>>()
        };
        let g_simples = generated(&left);
        let h_simples = generated(&right);
        let join_all = |xs: &[SimpleId]| xs.iter().fold(SimpleId::UNIT, |acc, &x| germ.join(acc, x));
        let delta_g = join_all(&g_simples);
        let delta_h = join_all(&h_simples);
        let class_join = |atoms: &[SimpleId]| {
            atoms
                .iter()
                .fold(SimpleId::UNIT, |acc, &a| germ.join(acc, germ.delta_of_simple(a)))
        };
        if class_join(&left) != delta_g || class_join(&right) != delta_h {
            return Err(fail(
                "join of the factor simples differs from the join of the atom deltas".into(),
            ));
        }
        for (side, delta, members) in [(Side::G, delta_g, &g_simples), (Side::H, delta_h, &h_simples)] {
            let divisors: Vec<SimpleId> = germ.simples().filter(|&s| germ.left_divides(s, delta)).collect();
            if &divisors != members {
                return Err(fail(format!(
                    "divisors of delta_{side} = {} are not the simples of {side}",
                    name(delta)
                )));
            }
            let rdivisors: Vec<SimpleId> = germ.simples().filter(|&s| germ.right_divides(s, delta)).collect();
            if &rdivisors != members {
                return Err(fail(format!("delta_{side} = {} is not balanced", name(delta))));
            }
        }
        if germ.product(delta_g, delta_h) != Some(germ.delta())
            || germ.product(delta_h, delta_g) != Some(germ.delta())
        {
            return Err(fail(format!(
                "{}·{} and {}·{} must both equal delta",
                name(delta_g),
                name(delta_h),
                name(delta_h),
                name(delta_g)
            )));
        }

        let mut pos = vec![usize::MAX; germ.len()];
        for (i, &s) in g_simples.iter().enumerate() {
            pos[s.index()] = i;
        }
        for (i, &s) in h_simples.iter().enumerate() {
            pos[s.index()] = i;
        }
        // The unit lies in both; its position is 0 in each list.
        pos[0] = 0;

        // Unique GH- and HG-decompositions of every simple.
        let n = germ.len();
        let mut gh: Vec<Option<(SimpleId, SimpleId)>> = vec![None; n];
        let mut hg: Vec<Option<(SimpleId, SimpleId)>> = vec![None; n];
        for &g in &g_simples {
            for &h in &h_simples {
                for (table, prod, pair) in [
                    (&mut gh, germ.product(g, h), (g, h)),
                    (&mut hg, germ.product(h, g), (h, g)),
                ] {
                    let Some(x) = prod else {
                        return Err(fail(format!(
                            "{}·{} is not simple",
                            name(pair.0),
                            name(pair.1)
                        )));
                    };
                    if let Some(prev) = table[x.index()] {
                        return Err(fail(format!(
                            "{} = {}·{} = {}·{}",
                            name(x),
                            name(prev.0),
                            name(prev.1),
                            name(pair.0),
                            name(pair.1)
                        )));
                    }
                    table[x.index()] = Some(pair);
                }
            }
        }
        if let Some(x) = germ.simples().find(|s| gh[s.index()].is_none() || hg[s.index()].is_none()) {
            return Err(fail(format!("{} has no decomposition", name(x))));
        }

        let (ng, nh) = (g_simples.len(), h_simples.len());
        let mut rr = vec![SimpleId::UNIT; ng * nh];
        let mut rl = rr.clone();
        let mut lr = rr.clone();
        let mut ll = rr.clone();
        for (hi, &h) in h_simples.iter().enumerate() {
            for (gi, &g) in g_simples.iter().enumerate() {
                let (g2, h2) = gh[germ.product(h, g).unwrap().index()].unwrap();
                rr[hi * ng + gi] = g2;
                rl[hi * ng + gi] = h2;
                let (h3, g3) = hg[germ.product(g, h).unwrap().index()].unwrap();
                lr[gi * nh + hi] = h3;
                ll[gi * nh + hi] = g3;
            }
        }

        // Inverses of the four families of bijections.
        let mut rr_inv = vec![None; ng * nh];
        let mut rl_inv = vec![None; ng * nh];
        let mut lr_inv = vec![None; ng * nh];
        let mut ll_inv = vec![None; ng * nh];
        for hi in 0..nh {
            for gi in 0..ng {
                let h = h_simples[hi];
                let g = g_simples[gi];
                // h ▷ g = g'  ⇒  h⁻¹ ▷ g' = g
                let slot = &mut rr_inv[hi * ng + pos[rr[hi * ng + gi].index()]];
                if slot.replace(g).is_some() {
                    return Err(fail(format!("{} ▷ · is not injective", name(h))));
                }
                // h ◁ g = h'  ⇒  h' ◁ g⁻¹ = h
                let slot = &mut rl_inv[pos[rl[hi * ng + gi].index()] * ng + gi];
                if slot.replace(h).is_some() {
                    return Err(fail(format!("· ◁ {} is not injective", name(g))));
                }
                // g ▶ h = h'  ⇒  g⁻¹ ▶ h' = h
                let slot = &mut lr_inv[gi * nh + pos[lr[gi * nh + hi].index()]];
                if slot.replace(h).is_some() {
                    return Err(fail(format!("{} ▶ · is not injective", name(g))));
                }
                // g ◀ h = g'  ⇒  g' ◀ h⁻¹ = g
                let slot = &mut ll_inv[pos[ll[gi * nh + hi].index()] * nh + hi];
                if slot.replace(g).is_some() {
                    return Err(fail(format!("· ◀ {} is not injective", name(h))));
                }
            }
        }
        // Injective maps of finite sets into themselves are bijections.
        let unwrap_all = |v: Vec<Option<SimpleId>>| v.into_iter().map(Option::unwrap).collect::<Vec<_>>();

        let factor = |delta: SimpleId| -> Result<Factor, ZsError> {
            let (fg, to_ambient) = germ.restrict(delta)?;
            let mut from_ambient = vec![None; n];
            for (i, &s) in to_ambient.iter().enumerate() {
                from_ambient[s.index()] = Some(SimpleId::new(i));
            }
            Ok(Factor {
                germ: fg,
                to_ambient,
                from_ambient,
            })
        };

        Ok(ZsStructure {
            germ,
            left_atoms: left,
            right_atoms: right,
            factor_g: factor(delta_g)?,
            factor_h: factor(delta_h)?,
            g_simples,
            h_simples,
            pos,
            delta_g,
            delta_h,
            rr,
            rl,
            lr,
            ll,
            rr_inv: unwrap_all(rr_inv),
            rl_inv: unwrap_all(rl_inv),
            lr_inv: unwrap_all(lr_inv),
            ll_inv: unwrap_all(ll_inv),
        })
    }

    /// Builds from atom names.
    pub fn build_named(germ: &'g Germ, left_atoms: &[&str]) -> Result<Self, ZsError> {
        let ids = left_atoms
            .iter()
            .map(|n| germ.lookup(n).ok_or_else(|| ZsError::NotAnAtom(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::build(germ, &ids)
    }

    pub fn germ(&self) -> &'g Germ {
        self.germ
    }

    pub fn left_atoms(&self) -> &[SimpleId] {
        &self.left_atoms
    }

    pub fn right_atoms(&self) -> &[SimpleId] {
        &self.right_atoms
    }

    pub fn delta_g(&self) -> SimpleId {
        self.delta_g
    }

    pub fn delta_h(&self) -> SimpleId {
        self.delta_h
    }

    pub fn delta_of(&self, side: Side) -> SimpleId {
        match side {
            Side::G => self.delta_g,
            Side::H => self.delta_h,
        }
    }

    pub fn g_simples(&self) -> &[SimpleId] {
        &self.g_simples
    }

    pub fn h_simples(&self) -> &[SimpleId] {
        &self.h_simples
    }

    pub fn simples_of(&self, side: Side) -> &[SimpleId] {
        match side {
            Side::G => &self.g_simples,
            Side::H => &self.h_simples,
        }
    }

    pub fn factor(&self, side: Side) -> &Factor {
        match side {
            Side::G => &self.factor_g,
            Side::H => &self.factor_h,
        }
    }

    pub fn member_g(&self, s: SimpleId) -> bool {
        self.germ.left_divides(s, self.delta_g)
    }

    pub fn member_h(&self, s: SimpleId) -> bool {
        self.germ.left_divides(s, self.delta_h)
    }

    pub fn member(&self, side: Side, s: SimpleId) -> bool {
        match side {
            Side::G => self.member_g(s),
            Side::H => self.member_h(s),
        }
    }

    /// Whether an element lies in the submonoid of the given side.
    pub fn element_in(&self, side: Side, x: &Element) -> bool {
        x.deltas == 0 && x.factors.iter().all(|&s| self.member(side, s))
    }

    /// `∁_G g` or `∁_H h`: the complement to the factor's Garside element.
    pub fn factor_complement(&self, side: Side, s: SimpleId) -> SimpleId {
        self.germ
            .left_quotient(s, self.delta_of(side))
            .expect("argument lies in the factor")
    }

    fn gp(&self, g: SimpleId) -> usize {
        debug_assert!(self.member_g(g), "{} is not in G", self.germ.name(g));
        self.pos[g.index()]
    }

    fn hp(&self, h: SimpleId) -> usize {
        debug_assert!(self.member_h(h), "{} is not in H", self.germ.name(h));
        self.pos[h.index()]
    }

    /// `h ▷ g`. Arguments must lie in `H` and `G`.
    pub fn rr(&self, h: SimpleId, g: SimpleId) -> SimpleId {
        self.rr[self.hp(h) * self.g_simples.len() + self.gp(g)]
    }

    /// `h ◁ g`.
    pub fn rl(&self, h: SimpleId, g: SimpleId) -> SimpleId {
        self.rl[self.hp(h) * self.g_simples.len() + self.gp(g)]
    }

    /// `g ▶ h`.
    pub fn lr(&self, g: SimpleId, h: SimpleId) -> SimpleId {
        self.lr[self.gp(g) * self.h_simples.len() + self.hp(h)]
    }

    /// `g ◀ h`.
    pub fn ll(&self, g: SimpleId, h: SimpleId) -> SimpleId {
        self.ll[self.gp(g) * self.h_simples.len() + self.hp(h)]
    }

    /// `h⁻¹ ▷ g`.
    pub fn rr_inv(&self, h: SimpleId, g: SimpleId) -> SimpleId {
        self.rr_inv[self.hp(h) * self.g_simples.len() + self.gp(g)]
    }

    /// `h ◁ g⁻¹`.
    pub fn rl_inv(&self, h: SimpleId, g: SimpleId) -> SimpleId {
        self.rl_inv[self.hp(h) * self.g_simples.len() + self.gp(g)]
    }

    /// `g⁻¹ ▶ h`.
    pub fn lr_inv(&self, g: SimpleId, h: SimpleId) -> SimpleId {
        self.lr_inv[self.gp(g) * self.h_simples.len() + self.hp(h)]
    }

    /// `g ◀ h⁻¹`.
    pub fn ll_inv(&self, g: SimpleId, h: SimpleId) -> SimpleId {
        self.ll_inv[self.gp(g) * self.h_simples.len() + self.hp(h)]
    }

    fn require(&self, side: Side, word: &[SimpleId]) -> Result<(), ZsError> {
        match word.iter().find(|&&s| !self.member(side, s)) {
            Some(&s) => Err(ZsError::NotInSide {
                name: self.germ.name(s).to_string(),
                side,
            }),
            None => Ok(()),
        }
    }

    /// Applies an action to simples, checking domains.
    pub fn act(&self, op: Action, h: SimpleId, g: SimpleId) -> Result<SimpleId, ZsError> {
        self.require(Side::H, &[h])?;
        self.require(Side::G, &[g])?;
        Ok(match op {
            Action::Rr => self.rr(h, g),
            Action::Rl => self.rl(h, g),
            Action::Lr => self.lr(g, h),
            Action::Ll => self.ll(g, h),
            Action::RrInv => self.rr_inv(h, g),
            Action::RlInv => self.rl_inv(h, g),
            Action::LrInv => self.lr_inv(g, h),
            Action::LlInv => self.ll_inv(g, h),
        })
    }

    /// Applies an action to words of simples, checking domains. The result
    /// is a word of the same length as the acted-on argument.
    pub fn act_word(&self, op: Action, hw: &[SimpleId], gw: &[SimpleId]) -> Result<Vec<SimpleId>, ZsError> {
        self.require(Side::H, hw)?;
        self.require(Side::G, gw)?;
        Ok(match op {
            Action::Rr => self.rr_word(hw, gw),
            Action::Rl => self.rl_word(hw, gw),
            Action::Lr => self.lr_word(gw, hw),
            Action::Ll => self.ll_word(gw, hw),
            Action::RrInv => self.rr_inv_word(hw, gw),
            Action::RlInv => self.rl_inv_word(hw, gw),
            Action::LrInv => self.lr_inv_word(gw, hw),
            Action::LlInv => self.ll_inv_word(gw, hw),
        })
    }

    /// `h ▷ (g₁.g₂.⋯) = (h ▷ g₁).((h ◁ g₁) ▷ (g₂.⋯))`, returning also `h ◁ gw`.
    fn push_h(&self, h: SimpleId, gw: &[SimpleId]) -> (Vec<SimpleId>, SimpleId) {
        let mut cur = h;
        let mut out = Vec::with_capacity(gw.len());
        for &g in gw {
            out.push(self.rr(cur, g));
            cur = self.rl(cur, g);
        }
        (out, cur)
    }

    /// `g ▶ (h₁.h₂.⋯) = (g ▶ h₁).((g ◀ h₁) ▶ (h₂.⋯))`, returning also `g ◀ hw`.
    fn push_g(&self, g: SimpleId, hw: &[SimpleId]) -> (Vec<SimpleId>, SimpleId) {
        let mut cur = g;
        let mut out = Vec::with_capacity(hw.len());
        for &h in hw {
            out.push(self.lr(cur, h));
            cur = self.ll(cur, h);
        }
        (out, cur)
    }

    /// `hw ▷ gw`, folding `(h₁h₂) ▷ g = h₁ ▷ (h₂ ▷ g)`.
    pub fn rr_word(&self, hw: &[SimpleId], gw: &[SimpleId]) -> Vec<SimpleId> {
        hw.iter().rev().fold(gw.to_vec(), |acc, &h| self.push_h(h, &acc).0)
    }

    /// `hw ◁ gw`, folding `h ◁ (g₁g₂) = (h ◁ g₁) ◁ g₂`.
    pub fn rl_word(&self, hw: &[SimpleId], gw: &[SimpleId]) -> Vec<SimpleId> {
        gw.iter().fold(hw.to_vec(), |acc, &g| {
            // (h₁.⋯.h_ℓ) ◁ g, peeling letters from the right.
            let mut cur = g;
            let mut out = vec![SimpleId::UNIT; acc.len()];
            for (i, &h) in acc.iter().enumerate().rev() {
                out[i] = self.rl(h, cur);
                cur = self.rr(h, cur);
            }
            out
        })
    }

    /// `gw ▶ hw`, folding `(g₁g₂) ▶ h = g₁ ▶ (g₂ ▶ h)`.
    pub fn lr_word(&self, gw: &[SimpleId], hw: &[SimpleId]) -> Vec<SimpleId> {
        gw.iter().rev().fold(hw.to_vec(), |acc, &g| self.push_g(g, &acc).0)
    }

    /// `gw ◀ hw`, folding `g ◀ (h₁h₂) = (g ◀ h₁) ◀ h₂`.
    pub fn ll_word(&self, gw: &[SimpleId], hw: &[SimpleId]) -> Vec<SimpleId> {
        hw.iter().fold(gw.to_vec(), |acc, &h| {
            let mut cur = h;
            let mut out = vec![SimpleId::UNIT; acc.len()];
            for (i, &g) in acc.iter().enumerate().rev() {
                out[i] = self.ll(g, cur);
                cur = self.lr(g, cur);
            }
            out
        })
    }

    /// `hw⁻¹ ▷ gw`, folding `(h₁h₂)⁻¹ ▷ g = h₂⁻¹ ▷ (h₁⁻¹ ▷ g)`.
    pub fn rr_inv_word(&self, hw: &[SimpleId], gw: &[SimpleId]) -> Vec<SimpleId> {
        hw.iter().fold(gw.to_vec(), |acc, &h| {
            // h⁻¹ ▷ (g₁.⋯) = (h⁻¹ ▷ g₁).((g₁⁻¹ ▶ h)⁻¹ ▷ (g₂.⋯))
            let mut cur = h;
            let mut out = Vec::with_capacity(acc.len());
            for &g in &acc {
                out.push(self.rr_inv(cur, g));
                cur = self.lr_inv(g, cur);
            }
            out
        })
    }

    /// `hw ◁ gw⁻¹`, folding `h ◁ (g₁g₂)⁻¹ = (h ◁ g₂⁻¹) ◁ g₁⁻¹`.
    pub fn rl_inv_word(&self, hw: &[SimpleId], gw: &[SimpleId]) -> Vec<SimpleId> {
        gw.iter().rev().fold(hw.to_vec(), |acc, &g| {
            // (⋯.h_ℓ) ◁ g⁻¹ = ((⋯) ◁ (g ◀ h_ℓ⁻¹)⁻¹).(h_ℓ ◁ g⁻¹)
            let mut cur = g;
            let mut out = vec![SimpleId::UNIT; acc.len()];
            for (i, &h) in acc.iter().enumerate().rev() {
                out[i] = self.rl_inv(h, cur);
                cur = self.ll_inv(cur, h);
            }
            out
        })
    }

    /// `gw⁻¹ ▶ hw`, folding `(g₁g₂)⁻¹ ▶ h = g₂⁻¹ ▶ (g₁⁻¹ ▶ h)`.
    pub fn lr_inv_word(&self, gw: &[SimpleId], hw: &[SimpleId]) -> Vec<SimpleId> {
        gw.iter().fold(hw.to_vec(), |acc, &g| {
            let mut cur = g;
            let mut out = Vec::with_capacity(acc.len());
            for &h in &acc {
                out.push(self.lr_inv(cur, h));
                cur = self.rr_inv(h, cur);
            }
            out
        })
    }

    /// `gw ◀ hw⁻¹`, folding `g ◀ (h₁h₂)⁻¹ = (g ◀ h₂⁻¹) ◀ h₁⁻¹`.
    pub fn ll_inv_word(&self, gw: &[SimpleId], hw: &[SimpleId]) -> Vec<SimpleId> {
        hw.iter().rev().fold(gw.to_vec(), |acc, &h| {
            let mut cur = h;
            let mut out = vec![SimpleId::UNIT; acc.len()];
            for (i, &g) in acc.iter().enumerate().rev() {
                out[i] = self.ll_inv(g, cur);
                cur = self.rl_inv(cur, g);
            }
            out
        })
    }

    /// Rewrites `hw·gw` as `(hw ▷ gw)·(hw ◁ gw)`.
    pub fn hg_to_gh(&self, hw: &[SimpleId], gw: &[SimpleId]) -> (Vec<SimpleId>, Vec<SimpleId>) {
        let mut gcur = gw.to_vec();
        let mut hout = vec![SimpleId::UNIT; hw.len()];
        for (i, &h) in hw.iter().enumerate().rev() {
            let (g2, h2) = self.push_h(h, &gcur);
            gcur = g2;
            hout[i] = h2;
        }
        (gcur, hout)
    }

    /// Rewrites `gw·hw` as `(gw ▶ hw)·(gw ◀ hw)`.
    pub fn gh_to_hg(&self, gw: &[SimpleId], hw: &[SimpleId]) -> (Vec<SimpleId>, Vec<SimpleId>) {
        let mut hcur = hw.to_vec();
        let mut gout = vec![SimpleId::UNIT; gw.len()];
        for (i, &g) in gw.iter().enumerate().rev() {
            let (h2, g2) = self.push_g(g, &hcur);
            hcur = h2;
            gout[i] = g2;
        }
        (hcur, gout)
    }

    /// GH-decomposition of a simple.
    pub fn gh_simple(&self, x: SimpleId) -> (SimpleId, SimpleId) {
        let g = self.germ.meet(x, self.delta_g);
        (g, self.germ.left_quotient(g, x).expect("g is a prefix of x"))
    }

    /// HG-decomposition of a simple.
    pub fn hg_simple(&self, x: SimpleId) -> (SimpleId, SimpleId) {
        let g = self.germ.rmeet(x, self.delta_g);
        (self.germ.right_quotient(g, x).expect("g is a suffix of x"), g)
    }

    fn delta_power(&self, side: Side, k: usize) -> Element {
        self.germ.normal_form(&vec![self.delta_of(side); k])
    }

    /// `x = g·h` with `g = x ∧ Δ_G^N`, `N = sup(x)`.
    pub fn gh_decompose(&self, x: &Element) -> Result<(Element, Element), ZsError> {
        let g = self.germ.gcd(x, &self.delta_power(Side::G, x.sup()));
        let h = self.germ.left_complement(&g, x);
        self.check_pair(x, &g, &h, &self.germ.multiply(&g, &h), "GH")?;
        Ok((g, h))
    }

    /// `x = h·g` with `g` the greatest common suffix of `x` and `Δ_G^N`.
    pub fn hg_decompose(&self, x: &Element) -> Result<(Element, Element), ZsError> {
        let g = self.germ.rgcd(x, &self.delta_power(Side::G, x.sup()));
        let h = self.germ.right_complement(&g, x);
        self.check_pair(x, &g, &h, &self.germ.multiply(&h, &g), "HG")?;
        Ok((h, g))
    }

    fn check_pair(&self, x: &Element, g: &Element, h: &Element, product: &Element, kind: &str) -> Result<(), ZsError> {
        if !self.element_in(Side::G, g) || !self.element_in(Side::H, h) || product != x {
            return Err(fail(format!(
                "{kind}-decomposition of {} produced g = {}, h = {}",
                self.germ.format_normal(x),
                self.germ.format_normal(g),
                self.germ.format_normal(h)
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{braid_germ, free_abelian_germ, wreath_example_germ};

    fn id(g: &Germ, n: &str) -> SimpleId {
        g.lookup(n).unwrap()
    }

    fn word(g: &Germ, w: &str) -> Vec<SimpleId> {
        g.parse_word(w).unwrap()
    }

    #[test]
    fn wreath_structure() {
        let g = wreath_example_germ();
        let zs = ZsStructure::build_named(&g, &["a", "b"]).unwrap();
        assert_eq!(g.name(zs.delta_g()), "ab");
        assert_eq!(g.name(zs.delta_h()), "c");
        assert!(zs.member_g(id(&g, "ab")));
        assert!(!zs.member_g(id(&g, "ac")));
        assert!(zs.member_g(g.unit()));
        assert!(zs.member_h(id(&g, "c")));
        let mirror = ZsStructure::build_named(&g, &["c"]).unwrap();
        assert_eq!(g.name(mirror.delta_g()), "c");
        assert_eq!(g.name(mirror.delta_h()), "ab");
    }

    #[test]
    fn wreath_actions() {
        let g = wreath_example_germ();
        let zs = ZsStructure::build_named(&g, &["a", "b"]).unwrap();
        let (a, b, c) = (id(&g, "a"), id(&g, "b"), id(&g, "c"));
        assert_eq!(zs.rr(c, a), b);
        assert_eq!(zs.rl(c, a), c);
        assert_eq!(zs.lr(a, c), c);
        assert_eq!(zs.ll(a, c), b);
        assert_eq!(zs.rr(g.unit(), a), a);
        assert_eq!(zs.rl(c, g.unit()), c);
        assert_eq!(zs.rr_inv(c, b), a);
        assert_eq!(zs.rr_inv(c, g.unit()), g.unit());
        assert_eq!(zs.ll_inv(b, c), a);
        assert_eq!(zs.rr_word(&[c], &word(&g, "a.a")), word(&g, "b.b"));
        assert_eq!(zs.lr_word(&word(&g, "a.a"), &[c]), [c]);
        assert!(zs.rr_word(&[c], &[]).is_empty());
        assert!(matches!(zs.act(Action::Rr, a, a), Err(ZsError::NotInSide { .. })));
    }

    #[test]
    fn word_inverses_undo_forward_actions() {
        let g = wreath_example_germ();
        let zs = ZsStructure::build_named(&g, &["a", "b"]).unwrap();
        let gw = word(&g, "a.ab.b");
        let hw = word(&g, "c.c");
        assert_eq!(zs.rr_word(&hw, &zs.rr_inv_word(&hw, &gw)), gw);
        assert_eq!(zs.rl_word(&zs.rl_inv_word(&hw, &gw), &gw), hw);
        assert_eq!(zs.lr_word(&gw, &zs.lr_inv_word(&gw, &hw)), hw);
        assert_eq!(zs.ll_word(&zs.ll_inv_word(&gw, &hw), &hw), gw);
    }

    #[test]
    fn decompositions() {
        let g = wreath_example_germ();
        let zs = ZsStructure::build_named(&g, &["a", "b"]).unwrap();
        let x = g.parse_element("c.a").unwrap();
        let (gg, hh) = zs.gh_decompose(&x).unwrap();
        assert_eq!((g.format_normal(&gg), g.format_normal(&hh)), ("b".into(), "c".into()));
        let x = g.parse_element("a.a.c").unwrap();
        let (gg, hh) = zs.gh_decompose(&x).unwrap();
        assert_eq!((g.format_normal(&gg), g.format_normal(&hh)), ("a | a".into(), "c".into()));
        let (hh, gg) = zs.hg_decompose(&x).unwrap();
        assert_eq!((g.format_normal(&hh), g.format_normal(&gg)), ("c".into(), "b | b".into()));
        let x = g.parse_element("a.b.a").unwrap();
        let (gg, hh) = zs.gh_decompose(&x).unwrap();
        assert_eq!(gg, x);
        assert!(hh.is_identity());
        assert_eq!(zs.gh_simple(id(&g, "bc")), (id(&g, "b"), id(&g, "c")));
    }

    #[test]
    fn rejects_bad_partitions() {
        let b3 = braid_germ(3).unwrap();
        assert!(matches!(
            ZsStructure::build_named(&b3, &["s1"]),
            Err(ZsError::NotAUnionOfClasses { .. })
        ));
        let n2 = free_abelian_germ(2).unwrap();
        assert!(matches!(ZsStructure::build_named(&n2, &["e1", "e2"]), Err(ZsError::TrivialSide)));
        assert!(matches!(ZsStructure::build_named(&n2, &["e1e2"]), Err(ZsError::NotAnAtom(_))));
    }

    #[test]
    fn abelian_factor() {
        let g = free_abelian_germ(3).unwrap();
        let zs = ZsStructure::build_named(&g, &["e1"]).unwrap();
        assert_eq!(g.name(zs.delta_g()), "e1");
        assert_eq!(zs.factor(Side::H).germ.len(), 4);
    }
}
