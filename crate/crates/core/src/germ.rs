//! Germs: the finite lattice of simple elements of a Garside structure
//! together with its partial product.
//!
//! A [`Germ`] is the only way a monoid enters this crate. Everything else
//! (divisibility, atoms, complements to `Δ`, meets and joins in both orders)
//! is derived once at load time and stored densely, so every query below is a
//! table lookup.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// Largest number of simples a germ may have (ids are stored as `u16`).
pub const MAX_SIMPLES: usize = u16::MAX as usize;

const NONE: u16 = u16::MAX;

/// Identifier of a simple element within one germ.
///
/// Index 0 is always the unit.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleId(u16);

impl SimpleId {
    pub const UNIT: SimpleId = SimpleId(0);

    pub fn new(index: usize) -> Self {
        assert!(index < MAX_SIMPLES, "simple index {index} out of range");
        SimpleId(index as u16)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_unit(self) -> bool {
        self.0 == 0
    }
}

/// Errors raised while reading or constructing a germ.
#[derive(Debug, Error)]
pub enum GermError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: unknown simple `{name}`")]
    UnknownSimple { line: usize, name: String },
    #[error("line {line}: duplicate product entry for `{left}` * `{right}`")]
    DuplicateProduct {
        line: usize,
        left: String,
        right: String,
    },
    #[error("germ has {0} simples, more than the supported maximum")]
    TooLarge(usize),
    #[error("germ fails validation:\n{0}")]
    Invalid(ValidationReport),
}

/// The local axioms checked on a germ.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Identity,
    PartialAssociativity,
    Cancellativity,
    /// `∂`: every simple has exactly one right complement to `Δ`.
    ComplementBijection,
    /// `∂̃`: every simple has exactly one left complement to `Δ`, inverse to `∂`.
    RightComplementBijection,
    BalancedDelta,
    Lattice,
    AtomGeneration,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Identity => "identity",
            Axiom::PartialAssociativity => "partial-associativity",
            Axiom::Cancellativity => "cancellativity",
            Axiom::ComplementBijection => "complement-bijection",
            Axiom::RightComplementBijection => "right-complement-bijection",
            Axiom::BalancedDelta => "balanced-delta",
            Axiom::Lattice => "lattice",
            Axiom::AtomGeneration => "atom-generation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub outcome: Outcome,
}

/// Result of checking every local axiom; failures carry witnesses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    /// True when no check failed. Skipped checks count as passing.
    pub fn is_valid(&self) -> bool {
        !self
            .checks
            .iter()
            .any(|c| matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn failed(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn outcome(&self, axiom: Axiom) -> Option<&Outcome> {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .map(|c| &c.outcome)
    }

    fn push(&mut self, axiom: Axiom, outcome: Outcome) {
        self.checks.push(AxiomCheck { axiom, outcome });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            match &check.outcome {
                Outcome::Pass => writeln!(f, "{}: pass", check.axiom.name())?,
                Outcome::Fail(w) => writeln!(f, "{}: FAIL ({w})", check.axiom.name())?,
                Outcome::Skipped(why) => writeln!(f, "{}: skipped ({why})", check.axiom.name())?,
            }
        }
        Ok(())
    }
}

/// Germ data before any derived table exists. Index 0 is the unit.
///
/// Products involving the unit are implied and need not be listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGerm {
    pub names: Vec<String>,
    pub delta: usize,
    pub products: Vec<(usize, usize, usize)>,
}

impl RawGerm {
    /// Checks every local axiom without building a [`Germ`].
    pub fn validate(&self) -> ValidationReport {
        analyze(self, true).0
    }
}

/// A validated finite germ with all derived tables.
#[derive(Clone, Debug)]
pub struct Germ {
    names: Vec<String>,
    index: HashMap<String, SimpleId>,
    n: usize,
    delta: SimpleId,
    product: Vec<u16>,
    under: Vec<u16>,
    over: Vec<u16>,
    lower: Vec<FixedBitSet>,
    upper: Vec<FixedBitSet>,
    rlower: Vec<FixedBitSet>,
    rupper: Vec<FixedBitSet>,
    meet: Vec<u16>,
    join: Vec<u16>,
    rmeet: Vec<u16>,
    rjoin: Vec<u16>,
    complement: Vec<u16>,
    rcomplement: Vec<u16>,
    atoms: Vec<SimpleId>,
    rank: Vec<u32>,
    homogeneous: bool,
    opposite: OnceLock<Box<Germ>>,
}

impl PartialEq for Germ {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.delta == other.delta && self.product == other.product
    }
}

impl Eq for Germ {}

impl Germ {
    /// Builds a germ, running every validation check.
    pub fn from_raw(raw: RawGerm) -> Result<Germ, GermError> {
        Self::build(raw, true)
    }

    /// Builds a germ without the cubic associativity and cancellativity
    /// sweeps, for the built-in families whose products come from an
    /// explicit model. Lattice and complement checks still run because the
    /// derived tables depend on them.
    pub fn from_raw_trusted(raw: RawGerm) -> Result<Germ, GermError> {
        Self::build(raw, false)
    }

    fn build(raw: RawGerm, full: bool) -> Result<Germ, GermError> {
        if raw.names.len() >= MAX_SIMPLES {
            return Err(GermError::TooLarge(raw.names.len()));
        }
        let (report, tables) = analyze(&raw, full);
        let Some(t) = tables else {
            return Err(GermError::Invalid(report));
        };
        let index = raw
            .names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), SimpleId::new(i)))
            .collect();
        Ok(Germ {
            names: raw.names,
            index,
            n: t.n,
            delta: SimpleId::new(raw.delta),
            product: t.product,
            under: t.under,
            over: t.over,
            lower: t.lower,
            upper: t.upper,
            rlower: t.rlower,
            rupper: t.rupper,
            meet: t.meet,
            join: t.join,
            rmeet: t.rmeet,
            rjoin: t.rjoin,
            complement: t.complement,
            rcomplement: t.rcomplement,
            atoms: t.atoms,
            rank: t.rank,
            homogeneous: t.homogeneous,
            opposite: OnceLock::new(),
        })
    }

    /// Re-runs every local axiom check on this germ's product table.
    pub fn validate(&self) -> ValidationReport {
        self.to_raw().validate()
    }

    pub fn to_raw(&self) -> RawGerm {
        let mut products = Vec::new();
        for s in 1..self.n {
            for t in 1..self.n {
                let p = self.product[s * self.n + t];
                if p != NONE {
                    products.push((s, t, p as usize));
                }
            }
        }
        RawGerm {
            names: self.names.clone(),
            delta: self.delta.index(),
            products,
        }
    }

    #[inline]
    fn at(&self, table: &[u16], s: SimpleId, t: SimpleId) -> SimpleId {
        SimpleId(table[s.index() * self.n + t.index()])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn simples(&self) -> impl Iterator<Item = SimpleId> + '_ {
        (0..self.n).map(SimpleId::new)
    }

    /// Simples other than the unit and `Δ`.
    pub fn proper_simples(&self) -> impl Iterator<Item = SimpleId> + '_ {
        self.simples()
            .filter(move |&s| !s.is_unit() && s != self.delta)
    }

    pub fn unit(&self) -> SimpleId {
        SimpleId::UNIT
    }

    pub fn delta(&self) -> SimpleId {
        self.delta
    }

    pub fn name(&self, s: SimpleId) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<SimpleId> {
        self.index.get(name).copied()
    }

    pub fn atoms(&self) -> &[SimpleId] {
        &self.atoms
    }

    pub fn is_atom(&self, s: SimpleId) -> bool {
        self.rank[s.index()] == 1
    }

    /// Atom length of a simple: the largest number of atoms in a
    /// factorization.
    pub fn rank(&self, s: SimpleId) -> usize {
        self.rank[s.index()] as usize
    }

    /// Whether every defined product adds atom lengths. Holds for every
    /// built-in family; element atom lengths are additive exactly then.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// `s·t` when it is again simple.
    pub fn product(&self, s: SimpleId, t: SimpleId) -> Option<SimpleId> {
        let p = self.product[s.index() * self.n + t.index()];
        (p != NONE).then_some(SimpleId(p))
    }

    /// The `u` with `s·u = t`, if `s ≼ t`.
    pub fn left_quotient(&self, s: SimpleId, t: SimpleId) -> Option<SimpleId> {
        let u = self.under[s.index() * self.n + t.index()];
        (u != NONE).then_some(SimpleId(u))
    }

    /// The `s` with `s·u = t`, if `t ≽ u`.
    pub fn right_quotient(&self, u: SimpleId, t: SimpleId) -> Option<SimpleId> {
        let s = self.over[u.index() * self.n + t.index()];
        (s != NONE).then_some(SimpleId(s))
    }

    /// `s ≼ t`: `s` is a prefix of `t`.
    pub fn left_divides(&self, s: SimpleId, t: SimpleId) -> bool {
        self.lower[t.index()].contains(s.index())
    }

    /// `t ≽ s`: `s` is a suffix of `t`.
    pub fn right_divides(&self, s: SimpleId, t: SimpleId) -> bool {
        self.rlower[t.index()].contains(s.index())
    }

    /// Prefixes of `t` as a bitset over simple indices.
    pub fn prefixes(&self, t: SimpleId) -> &FixedBitSet {
        &self.lower[t.index()]
    }

    /// Simples having `s` as a prefix.
    pub fn prefix_upper(&self, s: SimpleId) -> &FixedBitSet {
        &self.upper[s.index()]
    }

    /// Suffixes of `t`.
    pub fn suffixes(&self, t: SimpleId) -> &FixedBitSet {
        &self.rlower[t.index()]
    }

    pub fn meet(&self, s: SimpleId, t: SimpleId) -> SimpleId {
        self.at(&self.meet, s, t)
    }

    pub fn join(&self, s: SimpleId, t: SimpleId) -> SimpleId {
        self.at(&self.join, s, t)
    }

    /// Greatest common suffix.
    pub fn rmeet(&self, s: SimpleId, t: SimpleId) -> SimpleId {
        self.at(&self.rmeet, s, t)
    }

    /// Least common multiple in the suffix order.
    pub fn rjoin(&self, s: SimpleId, t: SimpleId) -> SimpleId {
        self.at(&self.rjoin, s, t)
    }

    /// `s\t`, the simple with `s·(s\t) = s ∨ t`.
    pub fn lcomp(&self, s: SimpleId, t: SimpleId) -> SimpleId {
        let j = self.join(s, t);
        self.at(&self.under, s, j)
    }

    /// `t/s`, the simple with `(t/s)·s = s ∨̃ t`.
    pub fn rcomp(&self, s: SimpleId, t: SimpleId) -> SimpleId {
        let j = self.rjoin(s, t);
        self.at(&self.over, s, j)
    }

    /// `∂s`, with `s·∂s = Δ`.
    pub fn complement(&self, s: SimpleId) -> SimpleId {
        SimpleId(self.complement[s.index()])
    }

    /// `∂̃s`, with `∂̃s·s = Δ`.
    pub fn rcomplement(&self, s: SimpleId) -> SimpleId {
        SimpleId(self.rcomplement[s.index()])
    }

    /// The germ of the opposite monoid: same simples, reversed products.
    pub fn opposite(&self) -> Germ {
        Germ {
            names: self.names.clone(),
            index: self.index.clone(),
            n: self.n,
            delta: self.delta,
            product: transpose(&self.product, self.n),
            under: self.over.clone(),
            over: self.under.clone(),
            lower: self.rlower.clone(),
            upper: self.rupper.clone(),
            rlower: self.lower.clone(),
            rupper: self.upper.clone(),
            meet: self.rmeet.clone(),
            join: self.rjoin.clone(),
            rmeet: self.meet.clone(),
            rjoin: self.join.clone(),
            complement: self.rcomplement.clone(),
            rcomplement: self.complement.clone(),
            atoms: self.atoms.clone(),
            rank: self.rank.clone(),
            homogeneous: self.homogeneous,
            opposite: OnceLock::new(),
        }
    }

    /// Cached opposite germ, built on first use.
    pub fn opposite_cached(&self) -> &Germ {
        self.opposite.get_or_init(|| Box::new(self.opposite()))
    }

    /// Restriction to the divisors of a balanced simple `delta`, reindexed.
    /// Returns the sub-germ and the map from its ids to ids of `self`.
    pub fn restrict(&self, delta: SimpleId) -> Result<(Germ, Vec<SimpleId>), GermError> {
        let members: Vec<SimpleId> = self
            .simples()
            .filter(|&s| self.left_divides(s, delta))
            .collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, s) in members.iter().enumerate() {
            local[s.index()] = i;
        }
        let mut products = Vec::new();
        for (i, &s) in members.iter().enumerate().skip(1) {
            for (j, &t) in members.iter().enumerate().skip(1) {
                if let Some(p) = self.product(s, t) {
                    if local[p.index()] != usize::MAX {
                        products.push((i, j, local[p.index()]));
                    }
                }
            }
        }
        let raw = RawGerm {
            names: members.iter().map(|&s| self.name(s).to_string()).collect(),
            delta: local[delta.index()],
            products,
        };
        Ok((Germ::from_raw(raw)?, members))
    }

    /// Serializes in the germ v1 text format.
    pub fn to_germ_file(&self) -> String {
        let mut out = String::from("germ v1\nsimples:");
        for name in &self.names {
            out.push(' ');
            out.push_str(name);
        }
        out.push_str("\ndelta: ");
        out.push_str(self.name(self.delta));
        out.push('\n');
        for (s, t, u) in self.to_raw().products {
            out.push_str(&format!(
                "prod {} {} {}\n",
                self.names[s], self.names[t], self.names[u]
            ));
        }
        out
    }
}

fn transpose(table: &[u16], n: usize) -> Vec<u16> {
    let mut out = vec![NONE; n * n];
    for s in 0..n {
        for t in 0..n {
            out[t * n + s] = table[s * n + t];
        }
    }
    out
}

/// Checks whether `name` may name a simple.
pub fn valid_simple_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || c == '.' || c == '|' || c == '#' || c == ',')
}

/// Parses a germ in the v1 text format.
///
/// ```text
/// germ v1
/// simples: 1 a b ab
/// delta: ab
/// prod a b ab
/// prod b a ab
/// ```
pub fn parse_germ(text: &str) -> Result<Germ, GermError> {
    Germ::from_raw(parse_raw_germ(text)?)
}

/// Parses the v1 text format without validating the result.
pub fn parse_raw_germ(text: &str) -> Result<RawGerm, GermError> {
    let syntax = |line: usize, column: usize, message: &str| GermError::Syntax {
        line,
        column,
        message: message.to_string(),
    };

    let mut header_seen = false;
    let mut names: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut delta: Option<usize> = None;
    let mut products: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen_pairs: HashMap<(usize, usize), usize> = HashMap::new();

    for (lineno, raw_line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let column = content.len() - content.trim_start().len() + 1;
        let line = content.trim();
        if line.is_empty() {
            continue;
        }
        if !header_seen {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens != ["germ", "v1"] {
                return Err(syntax(line_no, column, "expected header `germ v1`"));
            }
            header_seen = true;
            continue;
        }
        if let Some(rest) = line.strip_prefix("simples:") {
            if names.is_some() {
                return Err(syntax(line_no, column, "`simples:` given twice"));
            }
            let mut list: Vec<String> = Vec::new();
            for tok in rest.split_whitespace() {
                if !valid_simple_name(tok) {
                    let col = raw_line.find(tok).map_or(column, |c| c + 1);
                    return Err(syntax(line_no, col, &format!("invalid simple name `{tok}`")));
                }
                if list.iter().any(|n| n == tok) {
                    let col = raw_line.rfind(tok).map_or(column, |c| c + 1);
                    return Err(syntax(line_no, col, &format!("duplicate simple `{tok}`")));
                }
                list.push(tok.to_string());
            }
            let Some(unit_pos) = list.iter().position(|n| n == "1") else {
                return Err(syntax(line_no, column, "simples must include the unit `1`"));
            };
            let unit = list.remove(unit_pos);
            list.insert(0, unit);
            if list.len() >= MAX_SIMPLES {
                return Err(GermError::TooLarge(list.len()));
            }
            index = list.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
            names = Some(list);
            continue;
        }
        let lookup = |name: &str| {
            index.get(name).copied().ok_or_else(|| GermError::UnknownSimple {
                line: line_no,
                name: name.to_string(),
            })
        };
        if let Some(rest) = line.strip_prefix("delta:") {
            if names.is_none() {
                return Err(syntax(line_no, column, "`delta:` before `simples:`"));
            }
            if delta.is_some() {
                return Err(syntax(line_no, column, "`delta:` given twice"));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 1 {
                return Err(syntax(line_no, column, "`delta:` takes exactly one simple"));
            }
            delta = Some(lookup(toks[0])?);
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.first() == Some(&"prod") {
            if names.is_none() {
                return Err(syntax(line_no, column, "`prod` before `simples:`"));
            }
            if toks.len() != 4 {
                return Err(syntax(line_no, column, "`prod` takes three simples: s t u"));
            }
            let (s, t, u) = (lookup(toks[1])?, lookup(toks[2])?, lookup(toks[3])?);
            if seen_pairs.insert((s, t), u).is_some() {
                return Err(GermError::DuplicateProduct {
                    line: line_no,
                    left: toks[1].to_string(),
                    right: toks[2].to_string(),
                });
            }
            products.push((s, t, u));
            continue;
        }
        return Err(syntax(line_no, column, &format!("unrecognized line `{line}`")));
    }

    if !header_seen {
        return Err(syntax(1, 1, "empty germ file"));
    }
    let names = names.ok_or_else(|| syntax(1, 1, "missing `simples:` line"))?;
    let delta = delta.ok_or_else(|| syntax(1, 1, "missing `delta:` line"))?;
    Ok(RawGerm {
        names,
        delta,
        products,
    })
}

struct Tables {
    n: usize,
    product: Vec<u16>,
    under: Vec<u16>,
    over: Vec<u16>,
    lower: Vec<FixedBitSet>,
    upper: Vec<FixedBitSet>,
    rlower: Vec<FixedBitSet>,
    rupper: Vec<FixedBitSet>,
    meet: Vec<u16>,
    join: Vec<u16>,
    rmeet: Vec<u16>,
    rjoin: Vec<u16>,
    complement: Vec<u16>,
    rcomplement: Vec<u16>,
    atoms: Vec<SimpleId>,
    rank: Vec<u32>,
    homogeneous: bool,
}

/// Runs every axiom check; returns tables only when all checks pass.
fn analyze(raw: &RawGerm, full: bool) -> (ValidationReport, Option<Tables>) {
    let n = raw.names.len();
    let mut report = ValidationReport::default();
    let name = |i: usize| raw.names[i].as_str();

    if n == 0 || raw.delta >= n || raw.names[0] != "1" {
        report.push(
            Axiom::Identity,
            Outcome::Fail("germ must list the unit `1` first and a delta among its simples".into()),
        );
        return (report, None);
    }
    let delta = raw.delta;

    // Product table, with unit products implied.
    let mut product = vec![NONE; n * n];
    for s in 0..n {
        product[s] = s as u16;
        product[s * n] = s as u16;
    }
    let mut identity_failure = None;
    let mut conflict = None;
    for &(s, t, u) in &raw.products {
        if s >= n || t >= n || u >= n {
            identity_failure.get_or_insert(format!("product entry ({s},{t},{u}) out of range"));
            continue;
        }
        let slot = &mut product[s * n + t];
        if (s == 0 || t == 0) && *slot != u as u16 {
            identity_failure.get_or_insert(format!(
                "{} * {} = {} contradicts the unit",
                name(s),
                name(t),
                name(u)
            ));
            continue;
        }
        if *slot != NONE && *slot != u as u16 {
            conflict.get_or_insert(format!("{} * {} defined twice", name(s), name(t)));
        }
        *slot = u as u16;
    }
    report.push(
        Axiom::Identity,
        match identity_failure.or(conflict) {
            Some(w) => Outcome::Fail(w),
            None => Outcome::Pass,
        },
    );
    let prod = |s: usize, t: usize| product[s * n + t];

    // Partial associativity, in the strong form valid for divisor-closed sets:
    // if s·t and (s·t)·u are simple then so are t·u and s·(t·u), and they agree.
    if full {
        let mut witness = None;
        'outer: for s in 0..n {
            for t in 0..n {
                let st = prod(s, t);
                if st == NONE {
                    continue;
                }
                for u in 0..n {
                    let st_u = prod(st as usize, u);
                    let tu = prod(t, u);
                    let s_tu = if tu == NONE { NONE } else { prod(s, tu as usize) };
                    if st_u != s_tu {
                        witness = Some(format!(
                            "({}*{})*{} and {}*({}*{}) differ",
                            name(s),
                            name(t),
                            name(u),
                            name(s),
                            name(t),
                            name(u)
                        ));
                        break 'outer;
                    }
                }
            }
        }
        // The converse direction: t·u and s·(t·u) simple forces s·t simple.
        if witness.is_none() {
            'conv: for t in 0..n {
                for u in 0..n {
                    let tu = prod(t, u);
                    if tu == NONE {
                        continue;
                    }
                    for s in 0..n {
                        if prod(s, tu as usize) != NONE && prod(s, t) == NONE {
                            witness = Some(format!(
                                "{}*({}*{}) is defined but {}*{} is not",
                                name(s),
                                name(t),
                                name(u),
                                name(s),
                                name(t)
                            ));
                            break 'conv;
                        }
                    }
                }
            }
        }
        report.push(
            Axiom::PartialAssociativity,
            witness.map_or(Outcome::Pass, Outcome::Fail),
        );
    } else {
        report.push(Axiom::PartialAssociativity, Outcome::Skipped("trusted construction"));
    }

    // Cancellativity. The quotient tables are filled as a side effect.
    let mut under = vec![NONE; n * n];
    let mut over = vec![NONE; n * n];
    let mut cancel_witness = None;
    for s in 0..n {
        for t in 0..n {
            let p = prod(s, t);
            if p == NONE {
                continue;
            }
            let p = p as usize;
            let slot = &mut under[s * n + p];
            if *slot != NONE && cancel_witness.is_none() {
                cancel_witness = Some(format!(
                    "{}*{} = {}*{} = {}",
                    name(s),
                    name(*slot as usize),
                    name(s),
                    name(t),
                    name(p)
                ));
            }
            *slot = t as u16;
            let slot = &mut over[t * n + p];
            if *slot != NONE && cancel_witness.is_none() {
                cancel_witness = Some(format!(
                    "{}*{} = {}*{} = {}",
                    name(*slot as usize),
                    name(t),
                    name(s),
                    name(t),
                    name(p)
                ));
            }
            *slot = s as u16;
        }
    }
    if full {
        report.push(
            Axiom::Cancellativity,
            cancel_witness.map_or(Outcome::Pass, Outcome::Fail),
        );
    } else {
        report.push(Axiom::Cancellativity, Outcome::Skipped("trusted construction"));
    }

    // Complements to Δ.
    let mut complement = vec![NONE; n];
    let mut rcomplement = vec![NONE; n];
    let mut missing = None;
    let mut dup_left = None;
    let mut dup_right = None;
    for s in 0..n {
        let right: Vec<usize> = (0..n).filter(|&t| prod(s, t) == delta as u16).collect();
        let left: Vec<usize> = (0..n).filter(|&t| prod(t, s) == delta as u16).collect();
        match right.len() {
            0 => {
                missing.get_or_insert(format!("{} is not a prefix of delta", name(s)));
            }
            1 => complement[s] = right[0] as u16,
            _ => {
                dup_left.get_or_insert(format!(
                    "{} has several right complements to delta: {}, {}",
                    name(s),
                    name(right[0]),
                    name(right[1])
                ));
            }
        }
        match left.len() {
            0 => {
                missing.get_or_insert(format!("{} is not a suffix of delta", name(s)));
            }
            1 => rcomplement[s] = left[0] as u16,
            _ => {
                dup_right.get_or_insert(format!(
                    "{} has several left complements to delta: {}, {}",
                    name(s),
                    name(left[0]),
                    name(left[1])
                ));
            }
        }
    }
    report.push(Axiom::BalancedDelta, missing.map_or(Outcome::Pass, Outcome::Fail));
    let complete = complement.iter().all(|&c| c != NONE) && rcomplement.iter().all(|&c| c != NONE);
    let mut inverse_failure = None;
    if complete {
        for s in 0..n {
            if rcomplement[complement[s] as usize] as usize != s {
                inverse_failure.get_or_insert(format!(
                    "rcomplement(complement({})) != {}",
                    name(s),
                    name(s)
                ));
            }
        }
    }
    report.push(
        Axiom::ComplementBijection,
        match dup_left {
            Some(w) => Outcome::Fail(w),
            None if complement.contains(&NONE) => {
                Outcome::Fail("complement undefined for some simple".into())
            }
            None => Outcome::Pass,
        },
    );
    report.push(
        Axiom::RightComplementBijection,
        match dup_right.or(inverse_failure) {
            Some(w) => Outcome::Fail(w),
            None if rcomplement.contains(&NONE) => {
                Outcome::Fail("right complement undefined for some simple".into())
            }
            None => Outcome::Pass,
        },
    );

    // Divisibility relations.
    let mut lower = vec![FixedBitSet::with_capacity(n); n];
    let mut upper = vec![FixedBitSet::with_capacity(n); n];
    let mut rlower = vec![FixedBitSet::with_capacity(n); n];
    let mut rupper = vec![FixedBitSet::with_capacity(n); n];
    for s in 0..n {
        for t in 0..n {
            let p = prod(s, t);
            if p != NONE {
                let p = p as usize;
                lower[p].insert(s);
                upper[s].insert(p);
                rlower[p].insert(t);
                rupper[t].insert(p);
            }
        }
    }

    // Atomicity: conical, acyclic divisibility, every non-unit has an atom prefix.
    let mut atom_failure = None;
    for s in 1..n {
        for t in 0..n {
            if prod(s, t) == 0 || prod(t, s) == 0 {
                atom_failure.get_or_insert(format!("{} is invertible", name(s)));
            }
        }
    }
    if atom_failure.is_none() {
        'anti: for s in 0..n {
            for t in lower[s].ones() {
                if t != s && lower[t].contains(s) {
                    atom_failure = Some(format!(
                        "{} and {} divide each other",
                        name(s),
                        name(t)
                    ));
                    break 'anti;
                }
            }
        }
    }
    let mut rank = vec![0u32; n];
    let mut atoms = Vec::new();
    if atom_failure.is_none() {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&s| lower[s].count_ones(..));
        for &s in &order {
            rank[s] = lower[s]
                .ones()
                .filter(|&t| t != s)
                .map(|t| rank[t] + 1)
                .max()
                .unwrap_or(0);
        }
        for s in 1..n {
            if rank[s] == 1 {
                atoms.push(SimpleId::new(s));
            }
        }
        for s in 1..n {
            if !lower[s].ones().any(|t| rank[t] == 1) {
                atom_failure.get_or_insert(format!("{} has no atom prefix", name(s)));
            }
        }
    }
    let acyclic = atom_failure.is_none();
    report.push(
        Axiom::AtomGeneration,
        atom_failure.map_or(Outcome::Pass, Outcome::Fail),
    );

    if !acyclic {
        report.push(Axiom::Lattice, Outcome::Skipped("divisibility is not a partial order"));
        return (report, None);
    }

    let (meet, join, rmeet, rjoin, lattice_failure) = {
        let name_pair = |what: &str, s: usize, t: usize| {
            format!("{} and {} have no {what}", name(s), name(t))
        };
        let mut failure = None;
        let mut meet = vec![NONE; n * n];
        let mut join = vec![NONE; n * n];
        let mut rmeet = vec![NONE; n * n];
        let mut rjoin = vec![NONE; n * n];
        for (sets, table, greatest, what) in [
            (&lower, &mut meet, true, "greatest common prefix"),
            (&upper, &mut join, false, "least common multiple"),
            (&rlower, &mut rmeet, true, "greatest common suffix"),
            (&rupper, &mut rjoin, false, "least common left multiple"),
        ] {
            for s in 0..n {
                for t in s..n {
                    match bound(sets, &rank, s, t, greatest) {
                        Some(m) => {
                            table[s * n + t] = m as u16;
                            table[t * n + s] = m as u16;
                        }
                        None => {
                            failure.get_or_insert(name_pair(what, s, t));
                        }
                    }
                }
            }
        }
        (meet, join, rmeet, rjoin, failure)
    };
    report.push(
        Axiom::Lattice,
        lattice_failure.map_or(Outcome::Pass, Outcome::Fail),
    );

    if !report.is_valid() {
        return (report, None);
    }

    let homogeneous = (0..n).all(|s| {
        (0..n).all(|t| {
            let p = prod(s, t);
            p == NONE || rank[p as usize] == rank[s] + rank[t]
        })
    });

    (
        report,
        Some(Tables {
            n,
            product,
            under,
            over,
            lower,
            upper,
            rlower,
            rupper,
            meet,
            join,
            rmeet,
            rjoin,
            complement,
            rcomplement,
            atoms,
            rank,
            homogeneous,
        }),
    )
}

/// Greatest element of `sets[s] ∩ sets[t]` (when `greatest`) or least one,
/// where `sets[x]` is the down-set (resp. up-set) of `x`. Returns `None`
/// when the bound does not exist.
fn bound(sets: &[FixedBitSet], rank: &[u32], s: usize, t: usize, greatest: bool) -> Option<usize> {
    let mut common = sets[s].clone();
    common.intersect_with(&sets[t]);
    let candidate = if greatest {
        common.ones().max_by_key(|&x| rank[x])?
    } else {
        common.ones().min_by_key(|&x| rank[x])?
    };
    // The bound is the unique element whose own down-set (up-set) is the whole
    // common set.
    (sets[candidate] == common).then_some(candidate)
}
