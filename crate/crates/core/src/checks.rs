//! Property suites that exercise a germ or a Zappa–Szép structure
//! exhaustively on simples and by seeded sampling on words.
//!
//! Each suite returns a [`SuiteReport`] listing every property with the
//! number of cases examined and the first counterexample found.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::automata::{
    build_nf_automaton, factor_automaton, project_product_to_pair, translate_pair_to_product, NfAutomaton, Variant,
};
use crate::element::Element;
use crate::germ::{Germ, SimpleId};
use crate::normal_forms::{NfPair, Pattern};
use crate::zappa_szep::{Side, ZsStructure};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("suite `{0}` needs a decomposition (pass the left atoms)")]
    NeedsStructure(String),
}

/// Outcome of one property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: String,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn cases(&self) -> u64 {
        self.properties.iter().map(|p| p.cases).sum()
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| !p.passed())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            match &p.counterexample {
                None => writeln!(f, "ok    {}/{} ({} cases)", self.suite, p.name, p.cases)?,
                Some(c) => writeln!(f, "FAIL  {}/{} ({} cases): {c}", self.suite, p.name, p.cases)?,
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "{}: {} properties, {} failed, {} cases",
            self.suite,
            self.properties.len(),
            failed,
            self.cases()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Bound on atom length for exhaustive element enumeration.
    pub max_len: usize,
    /// Number of sampled cases for word-level properties.
    pub samples: usize,
    /// Bound on the number of letters in sampled words.
    pub word_len: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_len: 4,
            samples: 1000,
            word_len: 4,
            seed: 0x5eed_2024,
        }
    }
}

pub const SUITES: [&str; 9] = [
    "germ-axioms",
    "element-lattice",
    "quasicenter",
    "action-identities",
    "decompositions",
    "nf-criteria",
    "algorithms",
    "bijections",
    "automata",
];

/// Suites that need a decomposition `K = G ⋊⋉ H`.
pub fn needs_structure(suite: &str) -> bool {
    !matches!(suite, "germ-axioms" | "element-lattice" | "quasicenter")
}

pub fn run_suite(
    suite: &str,
    germ: &Germ,
    zs: Option<&ZsStructure>,
    opts: &CheckOptions,
) -> Result<SuiteReport, CheckError> {
    if !SUITES.contains(&suite) {
        return Err(CheckError::UnknownSuite(suite.to_string()));
    }
    let zs = match (needs_structure(suite), zs) {
        (true, None) => return Err(CheckError::NeedsStructure(suite.to_string())),
        (_, zs) => zs,
    };
    let mut r = Recorder::new(suite);
    match suite {
        "germ-axioms" => germ_axioms(&mut r, germ),
        "element-lattice" => element_lattice(&mut r, germ, opts),
        "quasicenter" => quasicenter(&mut r, germ),
        "action-identities" => action_identities(&mut r, zs.unwrap(), opts),
        "decompositions" => decompositions(&mut r, zs.unwrap(), opts),
        "nf-criteria" => nf_criteria(&mut r, zs.unwrap()),
        "algorithms" => algorithms(&mut r, zs.unwrap(), opts),
        "bijections" => bijections(&mut r, zs.unwrap(), opts),
        "automata" => automata(&mut r, germ, zs.unwrap(), opts),
        _ => unreachable!(),
    }
    Ok(r.finish())
}

/// Every suite that applies: all of them with a structure, the germ-only
/// ones without.
pub fn run_all(germ: &Germ, zs: Option<&ZsStructure>, opts: &CheckOptions) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .filter(|s| zs.is_some() || !needs_structure(s))
        .map(|s| run_suite(s, germ, zs, opts).expect("suite list is consistent"))
        .collect()
}

struct Recorder {
    suite: String,
    properties: Vec<PropertyResult>,
}

struct Prop {
    cases: u64,
    counterexample: Option<String>,
}

impl Prop {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }
}

impl Recorder {
    fn new(suite: &str) -> Self {
        Recorder {
            suite: suite.to_string(),
            properties: Vec::new(),
        }
    }

    fn prop(&mut self, name: &str, body: impl FnOnce(&mut Prop)) {
        let mut p = Prop {
            cases: 0,
            counterexample: None,
        };
        body(&mut p);
        self.properties.push(PropertyResult {
            name: name.to_string(),
            cases: p.cases,
            counterexample: p.counterexample,
        });
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            properties: self.properties,
        }
    }
}

fn names(germ: &Germ, xs: &[SimpleId]) -> String {
    xs.iter().map(|&s| germ.name(s)).collect::<Vec<_>>().join(",")
}

fn random_word(rng: &mut ChaCha8Rng, pool: &[SimpleId], max_len: usize) -> Vec<SimpleId> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
}

fn germ_axioms(r: &mut Recorder, germ: &Germ) {
    let report = germ.validate();
    for check in &report.checks {
        r.prop(check.axiom.name(), |p| {
            p.check(!matches!(check.outcome, crate::germ::Outcome::Fail(_)), || format!("{:?}", check.outcome))
        });
    }
    let d = germ.delta();
    r.prop("complements", |p| {
        for s in germ.simples() {
            let c = germ.complement(s);
            p.check(germ.product(s, c) == Some(d), || names(germ, &[s]));
            let rc = germ.rcomplement(s);
            p.check(germ.product(rc, s) == Some(d), || names(germ, &[s]));
        }
    });
    r.prop("complement-of-product", |p| {
        // (ab)\c = b\(a\c) and c\(ab) = (c\a)·((a\c)\b) whenever ab is simple
        for a in germ.simples() {
            for b in germ.simples() {
                let Some(ab) = germ.product(a, b) else { continue };
                for c in germ.simples() {
                    p.check(germ.lcomp(ab, c) == germ.lcomp(b, germ.lcomp(a, c)), || names(germ, &[a, b, c]));
                    let rhs = germ.product(germ.lcomp(c, a), germ.lcomp(germ.lcomp(a, c), b));
                    p.check(rhs == Some(germ.lcomp(c, ab)), || names(germ, &[a, b, c]));
                }
            }
        }
    });
}

fn element_lattice(r: &mut Recorder, germ: &Germ, opts: &CheckOptions) {
    let layers = germ.elements_by_length(opts.max_len.min(3));
    let all: Vec<&Element> = layers.iter().flatten().collect();
    let show = |x: &Element| germ.format_normal(x);
    r.prop("normal-form-idempotent", |p| {
        for x in &all {
            let again = germ.normal_form(&x.letters(germ.delta()));
            p.check(&again == *x && germ.is_normal(x), || show(x));
        }
    });
    r.prop("atom-length", |p| {
        for (n, layer) in layers.iter().enumerate() {
            for x in layer {
                p.check(germ.atom_length(x) == n, || show(x));
            }
        }
    });
    r.prop("lcm-gcd-bounds", |p| {
        for x in &all {
            for y in &all {
                let m = germ.lcm(x, y);
                let d = germ.gcd(x, y);
                let ok = germ.divides(x, &m)
                    && germ.divides(y, &m)
                    && germ.divides(&d, x)
                    && germ.divides(&d, y)
                    && germ.multiply(x, &germ.left_complement(x, y)) == m;
                p.check(ok, || format!("{} , {}", show(x), show(y)));
            }
        }
    });
    r.prop("lattice-laws", |p| {
        for x in &all {
            for y in &all {
                let ok = germ.lcm(x, y) == germ.lcm(y, x)
                    && germ.gcd(x, y) == germ.gcd(y, x)
                    && germ.gcd(x, &germ.lcm(x, y)) == **x
                    && germ.lcm(x, &germ.gcd(x, y)) == **x
                    && germ.rgcd(x, &germ.rlcm(x, y)) == **x
                    && germ.rdivides(y, &germ.rlcm(x, y));
                p.check(ok, || format!("{} , {}", show(x), show(y)));
            }
        }
    });
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let simples: Vec<SimpleId> = germ.simples().collect();
    r.prop("multiplication-associative", |p| {
        for _ in 0..opts.samples {
            let [x, y, z] = [0; 3].map(|_| germ.normal_form(&random_word(&mut rng, &simples, opts.word_len)));
            let left = germ.multiply(&germ.multiply(&x, &y), &z);
            let right = germ.multiply(&x, &germ.multiply(&y, &z));
            p.check(left == right, || format!("{} , {} , {}", show(&x), show(&y), show(&z)));
        }
    });
    r.prop("lattice-associative", |p| {
        for _ in 0..opts.samples {
            let [x, y, z] = [0; 3].map(|_| germ.normal_form(&random_word(&mut rng, &simples, opts.word_len)));
            let ok = germ.lcm(&germ.lcm(&x, &y), &z) == germ.lcm(&x, &germ.lcm(&y, &z))
                && germ.gcd(&germ.gcd(&x, &y), &z) == germ.gcd(&x, &germ.gcd(&y, &z));
            p.check(ok, || format!("{} , {} , {}", show(&x), show(&y), show(&z)));
        }
    });
    r.prop("divides-matches-product", |p| {
        for _ in 0..opts.samples {
            let x = germ.normal_form(&random_word(&mut rng, &simples, opts.word_len));
            let y = germ.normal_form(&random_word(&mut rng, &simples, opts.word_len));
            let xy = germ.multiply(&x, &y);
            p.check(germ.divides(&x, &xy) && germ.rdivides(&y, &xy), || {
                format!("{} , {}", show(&x), show(&y))
            });
        }
    });
}

fn quasicenter(r: &mut Recorder, germ: &Germ) {
    let d = germ.delta();
    r.prop("delta-bounds", |p| {
        for s in germ.simples() {
            let ds = germ.delta_of_simple(s);
            p.check(germ.left_divides(s, ds) && germ.left_divides(ds, d), || names(germ, &[s]));
        }
    });
    r.prop("delta-of-join", |p| {
        for s in germ.simples() {
            for t in germ.simples() {
                let lhs = germ.delta_of_simple(germ.join(s, t));
                let rhs = germ.join(germ.delta_of_simple(s), germ.delta_of_simple(t));
                p.check(lhs == rhs, || names(germ, &[s, t]));
            }
        }
    });
    r.prop("delta-idempotent", |p| {
        for s in germ.simples() {
            let ds = germ.delta_of_simple(s);
            p.check(germ.delta_of_simple(ds) == ds, || names(germ, &[s]));
        }
    });
    r.prop("closure-order-and-generators", |p| {
        // closure under b\· taken over all simples, visiting in reverse order
        let all: Vec<SimpleId> = germ.simples().collect();
        for s in germ.simples() {
            let mut seen = vec![false; germ.len()];
            seen[s.index()] = true;
            let mut stack = vec![s];
            let mut acc = s;
            while let Some(x) = stack.pop() {
                acc = germ.join(acc, x);
                for &b in all.iter().rev() {
                    let y = germ.lcomp(b, x);
                    if !seen[y.index()] {
                        seen[y.index()] = true;
                        stack.push(y);
                    }
                }
            }
            p.check(acc == germ.delta_of_simple(s), || names(germ, &[s]));
        }
    });
    r.prop("basis-two-sided", |p| match germ.quasi_center_basis() {
        Err(e) => p.check(false, || e.to_string()),
        Ok(basis) => {
            for &c in &basis {
                for x in germ.simples() {
                    p.check(germ.left_divides(x, c) == germ.right_divides(x, c), || names(germ, &[c, x]));
                }
            }
            let top = basis.iter().fold(germ.unit(), |acc, &c| germ.join(acc, c));
            p.check(top == d || germ.atoms().is_empty(), || "basis does not generate Δ".into());
        }
    });
}

fn action_identities(r: &mut Recorder, zs: &ZsStructure, opts: &CheckOptions) {
    let k = zs.germ();
    let gs = zs.g_simples();
    let hs = zs.h_simples();
    let one = SimpleId::UNIT;
    let nm = |xs: &[SimpleId]| names(k, xs);
    let prod = |a: SimpleId, b: SimpleId| k.product(a, b);
    let g_pairs: Vec<(SimpleId, SimpleId, SimpleId)> = gs
        .iter()
        .flat_map(|&a| gs.iter().filter_map(move |&b| k.product(a, b).map(|ab| (a, b, ab))))
        .collect();
    let h_pairs: Vec<(SimpleId, SimpleId, SimpleId)> = hs
        .iter()
        .flat_map(|&a| hs.iter().filter_map(move |&b| k.product(a, b).map(|ab| (a, b, ab))))
        .collect();

    r.prop("composite-actions", |p| {
        for &(h1, h2, h12) in &h_pairs {
            for &g in gs {
                p.check(zs.rr(h12, g) == zs.rr(h1, zs.rr(h2, g)), || nm(&[h1, h2, g]));
                p.check(zs.ll(g, h12) == zs.ll(zs.ll(g, h1), h2), || nm(&[g, h1, h2]));
            }
        }
        for &(g1, g2, g12) in &g_pairs {
            for &h in hs {
                p.check(zs.lr(g12, h) == zs.lr(g1, zs.lr(g2, h)), || nm(&[g1, g2, h]));
                p.check(zs.rl(h, g12) == zs.rl(zs.rl(h, g1), g2), || nm(&[h, g1, g2]));
            }
        }
    });
    r.prop("actions-on-products", |p| {
        for &(g1, g2, g12) in &g_pairs {
            for &h in hs {
                let lhs = zs.rr(h, g12);
                p.check(prod(zs.rr(h, g1), zs.rr(zs.rl(h, g1), g2)) == Some(lhs), || nm(&[h, g1, g2]));
                let lhs = zs.ll(g12, h);
                p.check(prod(zs.ll(g1, zs.lr(g2, h)), zs.ll(g2, h)) == Some(lhs), || nm(&[g1, g2, h]));
            }
        }
        for &(h1, h2, h12) in &h_pairs {
            for &g in gs {
                let lhs = zs.lr(g, h12);
                p.check(prod(zs.lr(g, h1), zs.lr(zs.ll(g, h1), h2)) == Some(lhs), || nm(&[g, h1, h2]));
                let lhs = zs.rl(h12, g);
                p.check(prod(zs.rl(h1, zs.rr(h2, g)), zs.rl(h2, g)) == Some(lhs), || nm(&[h1, h2, g]));
            }
        }
    });
    r.prop("unit-actions", |p| {
        for &g in gs {
            p.check(zs.rr(one, g) == g && zs.ll(g, one) == g, || nm(&[g]));
            for &h in hs {
                p.check(g.is_unit() == zs.rr(h, g).is_unit(), || nm(&[h, g]));
                p.check(h.is_unit() == zs.rl(h, g).is_unit(), || nm(&[h, g]));
                p.check(h.is_unit() == zs.lr(g, h).is_unit(), || nm(&[g, h]));
                p.check(g.is_unit() == zs.ll(g, h).is_unit(), || nm(&[g, h]));
            }
        }
        for &h in hs {
            p.check(zs.lr(one, h) == h && zs.rl(h, one) == h, || nm(&[h]));
        }
    });
    r.prop("exchange-laws", |p| {
        for &g in gs {
            for &h in hs {
                p.check(prod(h, g) == prod(zs.rr(h, g), zs.rl(h, g)), || nm(&[h, g]));
                p.check(prod(g, h) == prod(zs.lr(g, h), zs.ll(g, h)), || nm(&[g, h]));
            }
        }
    });
    r.prop("round-trips", |p| {
        for &g in gs {
            for &h in hs {
                let (a, b) = (zs.lr(g, h), zs.ll(g, h));
                p.check(zs.rr(a, b) == g && zs.rl(a, b) == h, || nm(&[g, h]));
                let (a, b) = (zs.rr(h, g), zs.rl(h, g));
                p.check(zs.lr(a, b) == h && zs.ll(a, b) == g, || nm(&[h, g]));
            }
        }
    });
    r.prop("inverse-tables", |p| {
        for &g in gs {
            for &h in hs {
                p.check(zs.rr(h, zs.rr_inv(h, g)) == g && zs.rr_inv(h, zs.rr(h, g)) == g, || nm(&[h, g]));
                p.check(zs.rl(zs.rl_inv(h, g), g) == h && zs.rl_inv(zs.rl(h, g), g) == h, || nm(&[h, g]));
                p.check(zs.lr(g, zs.lr_inv(g, h)) == h && zs.lr_inv(g, zs.lr(g, h)) == h, || nm(&[g, h]));
                p.check(zs.ll(zs.ll_inv(g, h), h) == g && zs.ll_inv(zs.ll(g, h), h) == g, || nm(&[g, h]));
            }
        }
    });
    r.prop("inverse-interplay", |p| {
        for &g in gs {
            for &h in hs {
                p.check(zs.rl(h, zs.rr_inv(h, g)) == zs.lr_inv(g, h), || nm(&[h, g]));
                p.check(zs.rr(zs.rl_inv(h, g), g) == zs.ll_inv(g, h), || nm(&[h, g]));
                p.check(zs.ll(g, zs.lr_inv(g, h)) == zs.rr_inv(h, g), || nm(&[g, h]));
                p.check(zs.lr(zs.ll_inv(g, h), h) == zs.rl_inv(h, g), || nm(&[g, h]));
            }
        }
    });
    r.prop("inverse-composites", |p| {
        for &(h1, h2, h12) in &h_pairs {
            for &g in gs {
                p.check(zs.rr_inv(h12, g) == zs.rr_inv(h2, zs.rr_inv(h1, g)), || nm(&[h1, h2, g]));
                p.check(zs.ll_inv(g, h12) == zs.ll_inv(zs.ll_inv(g, h2), h1), || nm(&[g, h1, h2]));
                let rhs = prod(zs.lr_inv(g, h1), zs.lr_inv(zs.rr_inv(h1, g), h2));
                p.check(rhs == Some(zs.lr_inv(g, h12)), || nm(&[g, h1, h2]));
                let rhs = prod(zs.rl_inv(h1, zs.ll_inv(g, h2)), zs.rl_inv(h2, g));
                p.check(rhs == Some(zs.rl_inv(h12, g)), || nm(&[h1, h2, g]));
            }
        }
        for &(g1, g2, g12) in &g_pairs {
            for &h in hs {
                p.check(zs.lr_inv(g12, h) == zs.lr_inv(g2, zs.lr_inv(g1, h)), || nm(&[g1, g2, h]));
                p.check(zs.rl_inv(h, g12) == zs.rl_inv(zs.rl_inv(h, g2), g1), || nm(&[h, g1, g2]));
                let rhs = prod(zs.rr_inv(h, g1), zs.rr_inv(zs.lr_inv(g1, h), g2));
                p.check(rhs == Some(zs.rr_inv(h, g12)), || nm(&[h, g1, g2]));
                let rhs = prod(zs.ll_inv(g1, zs.rl_inv(h, g2)), zs.ll_inv(g2, h));
                p.check(rhs == Some(zs.ll_inv(g12, h)), || nm(&[g1, g2, h]));
            }
        }
    });
    r.prop("order-isomorphisms", |p| {
        for &a in gs {
            for &b in gs {
                let pre = k.left_divides(a, b);
                let suf = k.right_divides(a, b);
                for &h in hs {
                    p.check(pre == k.left_divides(zs.rr(h, a), zs.rr(h, b)), || nm(&[h, a, b]));
                    p.check(suf == k.right_divides(zs.ll(a, h), zs.ll(b, h)), || nm(&[a, b, h]));
                }
            }
        }
        for &a in hs {
            for &b in hs {
                let pre = k.left_divides(a, b);
                let suf = k.right_divides(a, b);
                for &g in gs {
                    p.check(pre == k.left_divides(zs.lr(g, a), zs.lr(g, b)), || nm(&[g, a, b]));
                    p.check(suf == k.right_divides(zs.rl(a, g), zs.rl(b, g)), || nm(&[a, b, g]));
                }
            }
        }
    });
    r.prop("actions-on-complements", |p| {
        for &g1 in gs {
            for &g2 in gs {
                let under = k.lcomp(g1, g2);
                for &h in hs {
                    let rhs = k.lcomp(zs.ll_inv(g1, h), zs.rr(zs.rl_inv(h, g1), g2));
                    p.check(zs.rr(h, under) == rhs, || nm(&[h, g1, g2]));
                    let rhs = k.lcomp(zs.ll(g1, h), zs.rr_inv(zs.lr(g1, h), g2));
                    p.check(zs.rr_inv(h, under) == rhs, || nm(&[h, g1, g2]));
                }
            }
        }
    });
    r.prop("factor-deltas-invariant", |p| {
        let (dg, dh) = (zs.delta_g(), zs.delta_h());
        for &h in hs {
            p.check(zs.rr(h, dg) == dg && zs.ll(dg, h) == dg, || nm(&[h]));
        }
        for &g in gs {
            p.check(zs.lr(g, dh) == dh && zs.rl(dh, g) == dh, || nm(&[g]));
        }
        p.check(prod(dg, dh) == Some(k.delta()) && prod(dh, dg) == Some(k.delta()), || "Δ_GΔ_H".into());
    });
    r.prop("factor-complements", |p| {
        let cg = |g| zs.factor_complement(Side::G, g);
        let ch = |h| zs.factor_complement(Side::H, h);
        for &g in gs {
            for &h in hs {
                p.check(cg(zs.rr(h, g)) == zs.rr(zs.rl(h, g), cg(g)), || nm(&[h, g]));
                p.check(cg(zs.ll(g, h)) == zs.rr_inv(h, cg(g)), || nm(&[g, h]));
                p.check(ch(zs.lr(g, h)) == zs.lr(zs.ll(g, h), ch(h)), || nm(&[g, h]));
                p.check(ch(zs.rl(h, g)) == zs.lr_inv(g, ch(h)), || nm(&[h, g]));
                let lhs = k.complement(k.join(g, h));
                let rhs = k.join(cg(zs.rr_inv(h, g)), ch(zs.lr_inv(g, h)));
                p.check(lhs == rhs, || nm(&[g, h]));
            }
        }
    });
    r.prop("atoms-to-atoms", |p| {
        for &a in zs.left_atoms() {
            for &h in hs {
                p.check(k.is_atom(zs.rr(h, a)) && k.is_atom(zs.ll(a, h)), || nm(&[h, a]));
            }
        }
        for &b in zs.right_atoms() {
            for &g in gs {
                p.check(k.is_atom(zs.lr(g, b)) && k.is_atom(zs.rl(b, g)), || nm(&[g, b]));
            }
        }
    });
    r.prop("joins", |p| {
        let mut seen = HashMap::new();
        let mut seen_right = HashMap::new();
        for &g in gs {
            for &h in hs {
                let j = k.join(g, h);
                let (g2, h2) = (zs.rr_inv(h, g), zs.lr_inv(g, h));
                let ok = prod(g, h2) == Some(j) && prod(h, g2) == Some(j) && k.rjoin(g2, h2) == j;
                p.check(ok, || nm(&[g, h]));
                p.check(seen.insert(j, (g, h)).is_none(), || format!("join not injective at {}", nm(&[g, h])));
                let rj = k.rjoin(g, h);
                p.check(seen_right.insert(rj, (g, h)).is_none(), || {
                    format!("right join not injective at {}", nm(&[g, h]))
                });
            }
        }
        p.check(seen.len() == k.len(), || "joins do not cover the simples".into());
    });
    r.prop("join-order-and-complements", |p| {
        for &g1 in gs {
            for &h1 in hs {
                let x1 = k.join(g1, h1);
                for &g2 in gs {
                    for &h2 in hs {
                        let x2 = k.join(g2, h2);
                        let both = k.left_divides(g1, g2) && k.left_divides(h1, h2);
                        p.check(both == k.left_divides(x1, x2), || nm(&[g1, h1, g2, h2]));
                        let g_part = zs.rr_inv(zs.lr_inv(g1, h1), k.lcomp(g1, g2));
                        let h_part = zs.lr_inv(zs.rr_inv(h1, g1), k.lcomp(h1, h2));
                        p.check(k.lcomp(x1, x2) == k.join(g_part, h_part), || nm(&[g1, h1, g2, h2]));
                    }
                }
            }
        }
    });

    // Word level: the actions are well defined on elements and satisfy the
    // same laws there.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let el = |w: &[SimpleId]| k.normal_form(w);
    let len = opts.word_len;
    let mut samples = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        samples.push((random_word(&mut rng, gs, len), random_word(&mut rng, hs, len)));
    }
    let show = |gw: &[SimpleId], hw: &[SimpleId]| format!("g={} h={}", k.format_word(gw), k.format_word(hw));
    r.prop("word-exchange-laws", |p| {
        for (gw, hw) in &samples {
            let hg = el(&[hw.as_slice(), gw].concat());
            let (g2, h2) = zs.hg_to_gh(hw, gw);
            p.check(el(&[g2, h2].concat()) == hg, || show(gw, hw));
            let gh = el(&[gw.as_slice(), hw].concat());
            let (h3, g3) = zs.gh_to_hg(gw, hw);
            p.check(el(&[h3, g3].concat()) == gh, || show(gw, hw));
        }
    });
    r.prop("word-actions-well-defined", |p| {
        for (gw, hw) in &samples {
            let gn = el(gw).letters(k.delta());
            let hn = el(hw).letters(k.delta());
            let same = |a: Vec<SimpleId>, b: Vec<SimpleId>| el(&a) == el(&b);
            p.check(same(zs.rr_word(hw, gw), zs.rr_word(&hn, &gn)), || show(gw, hw));
            p.check(same(zs.rl_word(hw, gw), zs.rl_word(&hn, &gn)), || show(gw, hw));
            p.check(same(zs.lr_word(gw, hw), zs.lr_word(&gn, &hn)), || show(gw, hw));
            p.check(same(zs.ll_word(gw, hw), zs.ll_word(&gn, &hn)), || show(gw, hw));
            p.check(same(zs.rr_inv_word(hw, gw), zs.rr_inv_word(&hn, &gn)), || show(gw, hw));
            p.check(same(zs.lr_inv_word(gw, hw), zs.lr_inv_word(&gn, &hn)), || show(gw, hw));
            p.check(same(zs.rl_inv_word(hw, gw), zs.rl_inv_word(&hn, &gn)), || show(gw, hw));
            p.check(same(zs.ll_inv_word(gw, hw), zs.ll_inv_word(&gn, &hn)), || show(gw, hw));
        }
    });
    r.prop("word-inverses", |p| {
        for (gw, hw) in &samples {
            let (g, h) = (el(gw), el(hw));
            p.check(el(&zs.rr_word(hw, &zs.rr_inv_word(hw, gw))) == g, || show(gw, hw));
            p.check(el(&zs.lr_word(gw, &zs.lr_inv_word(gw, hw))) == h, || show(gw, hw));
            p.check(el(&zs.rl_word(&zs.rl_inv_word(hw, gw), gw)) == h, || show(gw, hw));
            p.check(el(&zs.ll_word(&zs.ll_inv_word(gw, hw), hw)) == g, || show(gw, hw));
        }
    });
    r.prop("word-inverse-interplay", |p| {
        for (gw, hw) in &samples {
            let lhs = el(&zs.rl_word(hw, &zs.rr_inv_word(hw, gw)));
            p.check(lhs == el(&zs.lr_inv_word(gw, hw)), || show(gw, hw));
            let lhs = el(&zs.ll_word(gw, &zs.lr_inv_word(gw, hw)));
            p.check(lhs == el(&zs.rr_inv_word(hw, gw)), || show(gw, hw));
        }
    });
    r.prop("word-joins", |p| {
        for (gw, hw) in &samples {
            let (g, h) = (el(gw), el(hw));
            let j = k.lcm(&g, &h);
            p.check(el(&[gw.as_slice(), &zs.lr_inv_word(gw, hw)].concat()) == j, || show(gw, hw));
            p.check(el(&[hw.as_slice(), &zs.rr_inv_word(hw, gw)].concat()) == j, || show(gw, hw));
        }
    });
    r.prop("word-actions-preserve-length", |p| {
        for (gw, hw) in &samples {
            let g = el(gw);
            let acted = el(&zs.rr_word(hw, gw));
            p.check(k.atom_length(&g) == k.atom_length(&acted), || show(gw, hw));
            p.check((g.sup() <= 1) == (acted.sup() <= 1), || show(gw, hw));
            p.check(zs.element_in(Side::G, &acted), || show(gw, hw));
        }
    });
}

/// Elements of a factor grouped by atom length, as elements of `K`.
fn factor_layers(zs: &ZsStructure, layers: &[Vec<Element>], side: Side) -> Vec<Vec<Element>> {
    layers
        .iter()
        .map(|l| l.iter().filter(|x| zs.element_in(side, x)).cloned().collect())
        .collect()
}

fn decompositions(r: &mut Recorder, zs: &ZsStructure, opts: &CheckOptions) {
    let k = zs.germ();
    let layers = k.elements_by_length(opts.max_len);
    let g_layers = factor_layers(zs, &layers, Side::G);
    let h_layers = factor_layers(zs, &layers, Side::H);
    let show = |x: &Element| k.format_normal(x);

    r.prop("gh-unique", |p| {
        let mut gh: HashMap<Element, u32> = HashMap::new();
        let mut hg: HashMap<Element, u32> = HashMap::new();
        for (i, gl) in g_layers.iter().enumerate() {
            for hl in &h_layers[..=opts.max_len - i] {
                for g in gl {
                    for h in hl {
                        *gh.entry(k.multiply(g, h)).or_default() += 1;
                        *hg.entry(k.multiply(h, g)).or_default() += 1;
                    }
                }
            }
        }
        for x in layers.iter().flatten() {
            p.check(gh.get(x) == Some(&1), || format!("GH count {:?} at {}", gh.get(x), show(x)));
            p.check(hg.get(x) == Some(&1), || format!("HG count {:?} at {}", hg.get(x), show(x)));
        }
    });
    r.prop("decompose-matches-search", |p| {
        for x in layers.iter().flatten() {
            match (zs.gh_decompose(x), zs.hg_decompose(x)) {
                (Ok((g, h)), Ok((h2, g2))) => {
                    let ok = zs.element_in(Side::G, &g)
                        && zs.element_in(Side::H, &h)
                        && k.multiply(&g, &h) == *x
                        && zs.element_in(Side::G, &g2)
                        && zs.element_in(Side::H, &h2)
                        && k.multiply(&h2, &g2) == *x;
                    p.check(ok, || show(x));
                }
                _ => p.check(false, || show(x)),
            }
        }
    });
    r.prop("factors-closed-under-divisors", |p| {
        let n = opts.max_len.min(4);
        for i in 0..=n {
            for j in 0..=n - i {
                for x in &layers[i] {
                    for y in &layers[j] {
                        let xy = k.multiply(x, y);
                        for side in [Side::G, Side::H] {
                            if zs.element_in(side, &xy) {
                                p.check(zs.element_in(side, x) && zs.element_in(side, y), || {
                                    format!("{} · {}", show(x), show(y))
                                });
                            }
                        }
                    }
                }
            }
        }
    });
}

/// `∁x₁ ∧ x₂ = 1` from the definition.
fn meet_condition(k: &Germ, x1: SimpleId, x2: SimpleId) -> bool {
    k.meet(k.complement(x1), x2).is_unit()
}

/// `x₁ | x₂` read off the left normal form of `x₁x₂`.
fn pipe_oracle(k: &Germ, x1: SimpleId, x2: SimpleId) -> bool {
    if x1.is_unit() || x2.is_unit() {
        return false;
    }
    let w = k.normal_form(&[x1, x2]);
    w.letters(k.delta()) == [x1, x2]
}

fn nf_criteria(r: &mut Recorder, zs: &ZsStructure) {
    let k = zs.germ();
    let gs = zs.g_simples();
    let hs = zs.h_simples();
    let nm = |xs: &[SimpleId]| names(k, xs);
    let fpipe = |side: Side, x: SimpleId, y: SimpleId| {
        !x.is_unit() && !y.is_unit() && k.meet(zs.factor_complement(side, x), y).is_unit()
    };
    let mut tuples = Vec::new();
    for &g1 in gs {
        for &h1 in hs {
            for &g2 in gs {
                for &h2 in hs {
                    tuples.push((g1, h1, g2, h2));
                }
            }
        }
    }
    r.prop("join-criterion", |p| {
        for &(g1, h1, g2, h2) in &tuples {
            let (x1, x2) = (k.join(g1, h1), k.join(g2, h2));
            let oracle = meet_condition(k, x1, x2);
            p.check(zs.join_pair_condition(g1, h1, g2, h2) == oracle, || nm(&[g1, h1, g2, h2]));
            if !g2.is_unit() && !h2.is_unit() {
                let factor = fpipe(Side::G, zs.rr_inv(h1, g1), g2) && fpipe(Side::H, zs.lr_inv(g1, h1), h2);
                p.check(factor == pipe_oracle(k, x1, x2), || nm(&[g1, h1, g2, h2]));
            }
        }
    });
    for pattern in Pattern::ALL {
        r.prop(&format!("criterion-{pattern:?}"), |p| {
            for &(g1, h1, g2, h2) in &tuples {
                let (x1, x2) = zs.pattern_simples(pattern, g1, h1, g2, h2);
                p.check(zs.pair_condition(pattern, g1, h1, g2, h2) == meet_condition(k, x1, x2), || {
                    nm(&[g1, h1, g2, h2])
                });
                p.check(zs.is_normal_pair(pattern, g1, h1, g2, h2) == (meet_condition(k, x1, x2) && !x2.is_unit()), || {
                    nm(&[g1, h1, g2, h2])
                });
                if g2.is_unit() || h2.is_unit() {
                    continue;
                }
                let factor = match pattern {
                    Pattern::GhGh => fpipe(Side::G, zs.ll(g1, h1), g2) && fpipe(Side::H, h1, zs.lr(g2, h2)),
                    Pattern::GhHg => fpipe(Side::G, zs.ll(g1, h1), zs.rr(h2, g2)) && fpipe(Side::H, h1, h2),
                    Pattern::HgGh => fpipe(Side::G, g1, g2) && fpipe(Side::H, zs.rl(h1, g1), zs.lr(g2, h2)),
                    Pattern::HgHg => fpipe(Side::G, g1, zs.rr(h2, g2)) && fpipe(Side::H, zs.rl(h1, g1), h2),
                };
                p.check(factor == pipe_oracle(k, x1, x2), || nm(&[g1, h1, g2, h2]));
            }
        });
    }
}

fn algorithms(r: &mut Recorder, zs: &ZsStructure, opts: &CheckOptions) {
    let k = zs.germ();
    let layers = k.elements_by_length(opts.max_len);
    let show = |x: &Element| k.format_normal(x);

    r.prop("split-matches-decomposition", |p| {
        for x in layers.iter().flatten() {
            let ok = match (zs.split_nf(x), zs.gh_decompose(x)) {
                (Ok(pair), Ok((g, h))) => {
                    zs.factor_to_element(Side::G, &pair.g) == g
                        && zs.factor_to_element(Side::H, &pair.h) == h
                        && zs.is_factor_normal(Side::G, &pair.g)
                        && zs.is_factor_normal(Side::H, &pair.h)
                }
                _ => false,
            };
            p.check(ok, || show(x));
        }
    });
    r.prop("merge-inverts-split", |p| {
        for x in layers.iter().flatten() {
            let back = zs.split_nf(x).and_then(|pair| zs.merge_nf(&pair));
            p.check(matches!(back, Ok(ref y) if y == x), || format!("{} -> {back:?}", show(x)));
        }
    });
    r.prop("merge-matches-product", |p| {
        let g_layers = factor_layers(zs, &layers, Side::G);
        let h_layers = factor_layers(zs, &layers, Side::H);
        for (i, gl) in g_layers.iter().enumerate() {
            for hl in &h_layers[..=opts.max_len - i] {
                for g in gl {
                    for h in hl {
                        let pair = NfPair {
                            g: zs.to_factor_word(Side::G, g).unwrap(),
                            h: zs.to_factor_word(Side::H, h).unwrap(),
                        };
                        let merged = zs.merge_nf(&pair);
                        let ok = matches!(merged, Ok(ref y) if *y == k.multiply(g, h))
                            && matches!(zs.split_nf(&k.multiply(g, h)), Ok(ref q) if *q == pair);
                        p.check(ok, || format!("{} , {}", show(g), show(h)));
                    }
                }
            }
        }
    });
    r.prop("actions-preserve-normal-words", |p| {
        for x in layers.iter().flatten().filter(|x| zs.element_in(Side::G, x)) {
            let gw = x.letters(k.delta());
            let normal = |w: &[SimpleId]| {
                w.iter().all(|s| !s.is_unit())
                    && w.windows(2).all(|q| k.meet(zs.factor_complement(Side::G, q[0]), q[1]).is_unit())
            };
            if !normal(&gw) {
                continue;
            }
            for &h in zs.h_simples() {
                let acted = zs.rr_word(&[h], &gw);
                p.check(normal(&acted), || format!("{} ▷ {}", k.name(h), k.format_word(&gw)));
            }
        }
    });
    r.prop("push-lemma", |p| {
        // h | g₁h₁ | g₂h₂ with ∁_H h ∧ (g₁ ▶ h₁) = 1 gives hg₁ | h₁g₂ | h₂
        let gs = zs.g_simples();
        let hs = zs.h_simples();
        for &h in hs {
            for &g1 in gs {
                for &h1 in hs {
                    let Some(x1) = k.product(g1, h1) else { continue };
                    if x1.is_unit() || !k.meet(zs.factor_complement(Side::H, h), zs.lr(g1, h1)).is_unit() {
                        continue;
                    }
                    for &g2 in gs {
                        for &h2 in hs {
                            let x2 = k.product(g2, h2).unwrap();
                            if !x2.is_unit() && !k.is_normal_pair(x1, x2) {
                                continue;
                            }
                            let mut out = vec![k.product(h, g1).unwrap()];
                            if !x2.is_unit() {
                                out.push(k.product(h1, g2).unwrap());
                                if !h2.is_unit() {
                                    out.push(h2);
                                }
                            } else if !h1.is_unit() {
                                out.push(h1);
                            }
                            let ok = out.iter().all(|s| !s.is_unit())
                                && out.windows(2).all(|q| meet_condition(k, q[0], q[1]));
                            p.check(ok, || names(k, &[h, g1, h1, g2, h2]));
                        }
                    }
                }
            }
        }
    });
}

fn bijections(r: &mut Recorder, zs: &ZsStructure, opts: &CheckOptions) {
    let k = zs.germ();
    let layers = k.elements_by_length(opts.max_len);
    let g_layers = factor_layers(zs, &layers, Side::G);
    let h_layers = factor_layers(zs, &layers, Side::H);
    for (label, which) in [("phi", 0), ("psi", 1)] {
        r.prop(&format!("{label}-bijective-by-length"), |p| {
            for n in 0..=opts.max_len {
                let mut images = HashSet::new();
                let mut pairs = 0usize;
                for i in 0..=n {
                    for g in &g_layers[i] {
                        for h in &h_layers[n - i] {
                            pairs += 1;
                            let pair = NfPair {
                                g: zs.to_factor_word(Side::G, g).unwrap(),
                                h: zs.to_factor_word(Side::H, h).unwrap(),
                            };
                            let (img, oracle) = if which == 0 {
                                (zs.phi(&pair), k.multiply(g, h))
                            } else {
                                (zs.psi(&pair), k.lcm(g, h))
                            };
                            let ok = matches!(img, Ok(ref y) if *y == oracle && k.atom_length(y) == n);
                            p.check(ok, || format!("{} , {}", k.format_normal(g), k.format_normal(h)));
                            if let Ok(y) = img {
                                p.check(images.insert(y), || {
                                    format!("collision at {} , {}", k.format_normal(g), k.format_normal(h))
                                });
                            }
                        }
                    }
                }
                p.check(pairs == layers[n].len(), || {
                    format!("length {n}: {pairs} pairs, {} elements", layers[n].len())
                });
            }
        });
    }
    r.prop("phi-inverse", |p| {
        for x in layers.iter().flatten() {
            let back = zs.phi_inv(x).and_then(|q| zs.phi(&q));
            p.check(matches!(back, Ok(ref y) if y == x), || k.format_normal(x));
        }
    });
}

/// Words of length `n` with every adjacent pair satisfying `rule`, counted
/// by brute-force extension.
fn count_by_rule(alphabet: &[SimpleId], n: usize, rule: &dyn Fn(SimpleId, SimpleId) -> bool) -> u128 {
    fn go(alphabet: &[SimpleId], last: Option<SimpleId>, left: usize, rule: &dyn Fn(SimpleId, SimpleId) -> bool) -> u128 {
        if left == 0 {
            return 1;
        }
        alphabet
            .iter()
            .filter(|&&y| last.is_none_or(|x| rule(x, y)))
            .map(|&y| go(alphabet, Some(y), left - 1, rule))
            .sum()
    }
    go(alphabet, None, n, rule)
}

/// Equal counts at every length up to `n`, and equal word lists wherever
/// both are small enough to enumerate.
fn same_language(a: &NfAutomaton, b: &NfAutomaton, n: usize) -> bool {
    (0..=n).all(|i| {
        a.count_accepted(i) == b.count_accepted(i)
            && match (a.enumerate_accepted(i), b.enumerate_accepted(i)) {
                (Ok(x), Ok(y)) => x == y,
                (Err(_), Err(_)) => true,
                _ => false,
            }
    })
}

fn automata(r: &mut Recorder, germ: &Germ, zs: &ZsStructure, opts: &CheckOptions) {
    let n = opts.max_len.max(1);
    for variant in [Variant::Proper, Variant::Full] {
        r.prop(&format!("{variant:?}-counts").to_lowercase(), |p| {
            let a = build_nf_automaton(germ, variant);
            let alphabet: Vec<SimpleId> = germ
                .simples()
                .filter(|&s| !s.is_unit() && (variant == Variant::Full || s != germ.delta()))
                .collect();
            let rule = |x: SimpleId, y: SimpleId| meet_condition(germ, x, y);
            for i in 0..=n {
                let expected = count_by_rule(&alphabet, i, &rule);
                p.check(a.count_accepted(i) == expected, || format!("length {i}: expected {expected}"));
            }
        });
    }
    r.prop("translation", |p| {
        let a_g = factor_automaton(zs, Side::G);
        let a_h = factor_automaton(zs, Side::H);
        let t = translate_pair_to_product(zs, &a_g, &a_h);
        let direct = build_nf_automaton(germ, Variant::Full);
        p.check(t == direct, || "translated automaton differs from the direct one".into());
        p.check(same_language(&t, &direct, n), || "languages differ".into());
    });
    r.prop("projection", |p| {
        let direct = build_nf_automaton(germ, Variant::Full);
        match project_product_to_pair(zs, &direct) {
            Ok((pg, ph)) => {
                let a_g = factor_automaton(zs, Side::G);
                let a_h = factor_automaton(zs, Side::H);
                p.check(pg == a_g && same_language(&pg, &a_g, n), || "G projection differs".into());
                p.check(ph == a_h && same_language(&ph, &a_h, n), || "H projection differs".into());
            }
            Err(e) => p.check(false, || e.to_string()),
        }
    });
    r.prop("accepts-normal-forms", |p| {
        let a = build_nf_automaton(germ, Variant::Full);
        for x in germ.elements_by_length(n).iter().flatten() {
            let w = x.letters(germ.delta());
            p.check(a.accepts(&w), || germ.format_normal(x));
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{free_abelian_germ, wreath_example_germ};

    #[test]
    fn wreath_suites_pass() {
        let g = wreath_example_germ();
        let zs = ZsStructure::build_named(&g, &["a", "b"]).unwrap();
        let opts = CheckOptions {
            max_len: 3,
            samples: 200,
            ..CheckOptions::default()
        };
        for report in run_all(&g, Some(&zs), &opts) {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn abelian_suites_pass() {
        let g = free_abelian_germ(3).unwrap();
        let zs = ZsStructure::build_named(&g, &["e1"]).unwrap();
        let opts = CheckOptions {
            max_len: 3,
            samples: 200,
            ..CheckOptions::default()
        };
        for report in run_all(&g, Some(&zs), &opts) {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn unknown_and_missing() {
        let g = wreath_example_germ();
        let opts = CheckOptions::default();
        assert_eq!(
            run_suite("nope", &g, None, &opts),
            Err(CheckError::UnknownSuite("nope".into()))
        );
        assert_eq!(
            run_suite("algorithms", &g, None, &opts),
            Err(CheckError::NeedsStructure("algorithms".into()))
        );
        assert_eq!(run_all(&g, None, &opts).len(), 3);
    }
}
