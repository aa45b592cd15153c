//! Built-in germ families and the `--germ` specification syntax.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::germ::{parse_germ, Germ, GermError, RawGerm};

pub const MAX_BRAID_STRANDS: usize = 7;
pub const MAX_ABELIAN_RANK: usize = 10;

#[derive(Debug, Error)]
pub enum BuiltinError {
    #[error("{family} parameter {value} outside {min}..={max}")]
    OutOfRange {
        family: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("bad germ spec `{0}`")]
    Spec(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Germ(#[from] GermError),
}

fn check_range(family: &'static str, value: usize, min: usize, max: usize) -> Result<(), BuiltinError> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(BuiltinError::OutOfRange {
            family,
            value,
            min,
            max,
        })
    }
}

type Perm = Vec<u8>;

fn inversions(p: &[u8]) -> usize {
    let mut count = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                count += 1;
            }
        }
    }
    count
}

/// `s·t`: apply `s`, then `t`.
fn compose(s: &[u8], t: &[u8]) -> Perm {
    s.iter().map(|&i| t[i as usize]).collect()
}

fn generator(n: usize, k: usize) -> Perm {
    let mut p: Perm = (0..n as u8).collect();
    p.swap(k - 1, k);
    p
}

/// Lexicographically least reduced word, e.g. `s1s2s1`.
fn braid_name(p: &[u8]) -> String {
    let n = p.len();
    let mut cur = p.to_vec();
    let mut name = String::new();
    let mut len = inversions(&cur);
    while len > 0 {
        let k = (1..n)
            .find(|&k| inversions(&compose(&generator(n, k), &cur)) < len)
            .expect("non-identity permutation has a descent");
        name.push_str(&format!("s{k}"));
        cur = compose(&generator(n, k), &cur);
        len -= 1;
    }
    if name.is_empty() {
        "1".to_string()
    } else {
        name
    }
}

fn all_permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p: Perm = (0..n as u8).collect();
    loop {
        out.push(p.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

/// Positive braid monoid on `n` strands: simples are permutation braids.
pub fn braid_germ(n: usize) -> Result<Germ, BuiltinError> {
    check_range("braid", n, 2, MAX_BRAID_STRANDS)?;
    let mut perms: Vec<(usize, String, Perm)> = all_permutations(n)
        .into_iter()
        .map(|p| (inversions(&p), braid_name(&p), p))
        .collect();
    perms.sort();
    let index: std::collections::HashMap<&Perm, usize> =
        perms.iter().enumerate().map(|(i, (_, _, p))| (p, i)).collect();
    let mut products = Vec::new();
    for (i, (li, _, s)) in perms.iter().enumerate().skip(1) {
        for (j, (lj, _, t)) in perms.iter().enumerate().skip(1) {
            let st = compose(s, t);
            if inversions(&st) == li + lj {
                products.push((i, j, index[&st]));
            }
        }
    }
    let raw = RawGerm {
        names: perms.iter().map(|(_, name, _)| name.clone()).collect(),
        delta: perms.len() - 1,
        products,
    };
    Ok(Germ::from_raw_trusted(raw)?)
}

/// Free abelian monoid `ℕᵏ`: simples are subsets of the basis.
pub fn free_abelian_germ(k: usize) -> Result<Germ, BuiltinError> {
    check_range("abelian", k, 1, MAX_ABELIAN_RANK)?;
    let mut masks: Vec<u32> = (0..1u32 << k).collect();
    masks.sort_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
    let mut pos = vec![0usize; masks.len()];
    for (i, &m) in masks.iter().enumerate() {
        pos[m as usize] = i;
    }
    let name = |m: u32| {
        if m == 0 {
            return "1".to_string();
        }
        (0..k)
            .filter(|i| m >> i & 1 == 1)
            .map(|i| format!("e{}", i + 1))
            .collect()
    };
    let mut products = Vec::new();
    for &s in &masks[1..] {
        for &t in &masks[1..] {
            if s & t == 0 {
                products.push((pos[s as usize], pos[t as usize], pos[(s | t) as usize]));
            }
        }
    }
    let raw = RawGerm {
        names: masks.iter().map(|&m| name(m)).collect(),
        delta: pos[(1usize << k) - 1],
        products,
    };
    Ok(Germ::from_raw_trusted(raw)?)
}

/// `⟨a,b,c | ab = ba, ac = cb, bc = ca⟩⁺ ≅ ℕ² ⋊ ℕ`, where the generator of
/// the second factor swaps the two coordinates of the first.
///
/// Simples are triples `((x,y),e)` with entries in `{0,1}`.
pub fn wreath_example_germ() -> Germ {
    const SIMPLES: [(&str, [u8; 3]); 8] = [
        ("1", [0, 0, 0]),
        ("a", [1, 0, 0]),
        ("b", [0, 1, 0]),
        ("c", [0, 0, 1]),
        ("ab", [1, 1, 0]),
        ("ac", [1, 0, 1]),
        ("bc", [0, 1, 1]),
        ("abc", [1, 1, 1]),
    ];
    let find = |v: [u8; 3]| SIMPLES.iter().position(|&(_, w)| w == v);
    let mut products = Vec::new();
    for (i, &(_, [x, y, e])) in SIMPLES.iter().enumerate().skip(1) {
        for (j, &(_, [p, q, f])) in SIMPLES.iter().enumerate().skip(1) {
            let (p, q) = if e == 1 { (q, p) } else { (p, q) };
            if let Some(k) = find([x + p, y + q, e + f]) {
                products.push((i, j, k));
            }
        }
    }
    let raw = RawGerm {
        names: SIMPLES.iter().map(|&(n, _)| n.to_string()).collect(),
        delta: 7,
        products,
    };
    Germ::from_raw(raw).expect("wreath example germ is valid")
}

fn component_name(name: &str) -> String {
    if name.contains('*') {
        format!("({name})")
    } else {
        name.to_string()
    }
}

/// Direct product: pairs of simples with componentwise product.
pub fn direct_product_germ(left: &Germ, right: &Germ) -> Result<Germ, BuiltinError> {
    let (n1, n2) = (left.len(), right.len());
    let id = |i: usize, j: usize| i * n2 + j;
    let mut names = Vec::with_capacity(n1 * n2);
    for s in left.simples() {
        for t in right.simples() {
            names.push(if s.is_unit() && t.is_unit() {
                "1".to_string()
            } else {
                format!("{}*{}", component_name(left.name(s)), component_name(right.name(t)))
            });
        }
    }
    let mut products = Vec::new();
    for s1 in left.simples() {
        for t1 in right.simples() {
            if s1.is_unit() && t1.is_unit() {
                continue;
            }
            for s2 in left.simples() {
                let Some(s) = left.product(s1, s2) else { continue };
                for t2 in right.simples() {
                    if s2.is_unit() && t2.is_unit() {
                        continue;
                    }
                    if let Some(t) = right.product(t1, t2) {
                        products.push((
                            id(s1.index(), t1.index()),
                            id(s2.index(), t2.index()),
                            id(s.index(), t.index()),
                        ));
                    }
                }
            }
        }
    }
    let raw = RawGerm {
        names,
        delta: id(left.delta().index(), right.delta().index()),
        products,
    };
    Ok(Germ::from_raw_trusted(raw)?)
}

/// A germ source as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GermSpec {
    Braid(usize),
    FreeAbelian(usize),
    Wreath,
    File(PathBuf),
    Product(Box<GermSpec>, Box<GermSpec>),
}

impl GermSpec {
    pub fn build(&self) -> Result<Germ, BuiltinError> {
        match self {
            GermSpec::Braid(n) => braid_germ(*n),
            GermSpec::FreeAbelian(k) => free_abelian_germ(*k),
            GermSpec::Wreath => Ok(wreath_example_germ()),
            GermSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| BuiltinError::Io {
                    path: path.clone(),
                    source,
                })?;
                Ok(parse_germ(&text)?)
            }
            GermSpec::Product(a, b) => direct_product_germ(&a.build()?, &b.build()?),
        }
    }
}

/// Splits at the first comma outside parentheses.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        let inner = &t[1..t.len() - 1];
        // Only strip when the parentheses enclose the whole string.
        let mut depth = 0i32;
        let balanced = inner.chars().all(|c| {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            depth >= 0
        });
        if balanced && depth == 0 {
            return strip_parens(inner);
        }
    }
    t
}

impl FromStr for GermSpec {
    type Err = BuiltinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = strip_parens(s);
        let bad = || BuiltinError::Spec(s.to_string());
        let (family, arg) = s.split_once(':').unwrap_or((s, ""));
        let number = || arg.trim().parse::<usize>().map_err(|_| bad());
        match family.trim() {
            "braid" => Ok(GermSpec::Braid(number()?)),
            "abelian" => Ok(GermSpec::FreeAbelian(number()?)),
            "wreath" if arg.is_empty() => Ok(GermSpec::Wreath),
            "file" if !arg.is_empty() => Ok(GermSpec::File(PathBuf::from(arg))),
            "prod" => {
                let (a, b) = split_top_level(arg).ok_or_else(bad)?;
                Ok(GermSpec::Product(Box::new(a.parse()?), Box::new(b.parse()?)))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermSpec::Braid(n) => write!(f, "braid:{n}"),
            GermSpec::FreeAbelian(k) => write!(f, "abelian:{k}"),
            GermSpec::Wreath => f.write_str("wreath"),
            GermSpec::File(p) => write!(f, "file:{}", p.display()),
            GermSpec::Product(a, b) => write!(f, "prod:({a}),({b})"),
        }
    }
}
