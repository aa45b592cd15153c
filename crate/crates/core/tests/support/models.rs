//! Explicit models of the built-in monoids, written without any germ
//! machinery. An element is identified by a key; two atom words spell the
//! same element exactly when their keys agree.

use std::collections::{BTreeSet, HashSet, VecDeque};

use garside::{Germ, NormalWord};

#[derive(Clone, Copy, Debug)]
pub enum Model {
    /// Positive braids on `n` strands, atoms `s1..s(n-1)`.
    Braid(usize),
    /// `ℕ^k`, atoms `e1..ek`.
    Abelian(usize),
    /// `ℕ² ⋊ ℕ` where the generator of `ℕ` swaps the coordinates; atoms `a, b, c`.
    Wreath,
}

impl Model {
    pub fn atoms(&self) -> Vec<String> {
        match *self {
            Model::Braid(n) => (1..n).map(|i| format!("s{i}")).collect(),
            Model::Abelian(k) => (1..=k).map(|i| format!("e{i}")).collect(),
            Model::Wreath => ["a", "b", "c"].map(String::from).to_vec(),
        }
    }

    /// Splits the name of a simple into atom indices.
    pub fn spell(&self, name: &str) -> Vec<usize> {
        if name == "1" {
            return Vec::new();
        }
        match self {
            Model::Braid(_) | Model::Abelian(_) => name[1..]
                .split(['s', 'e'])
                .map(|d| d.parse::<usize>().unwrap() - 1)
                .collect(),
            Model::Wreath => name.bytes().map(|b| (b - b'a') as usize).collect(),
        }
    }

    pub fn key(&self, word: &[usize]) -> Vec<u32> {
        match *self {
            Model::Braid(_) => braid_class_min(word).into_iter().map(|i| i as u32).collect(),
            Model::Abelian(k) => {
                let mut v = vec![0u32; k];
                for &i in word {
                    v[i] += 1;
                }
                v
            }
            Model::Wreath => {
                let (mut x, mut y, mut e) = (0u32, 0u32, 0u32);
                for &i in word {
                    match (i, e % 2) {
                        (0, 0) | (1, 1) => x += 1,
                        (0, 1) | (1, 0) => y += 1,
                        _ => e += 1,
                    }
                }
                vec![x, y, e]
            }
        }
    }

    /// Atom word of an element given by its normal form.
    pub fn expand(&self, germ: &Germ, w: &NormalWord) -> Vec<usize> {
        w.letters(germ.delta())
            .iter()
            .flat_map(|&s| self.spell(germ.name(s)))
            .collect()
    }

    /// Maps an atom word of the model to atom ids of `germ`.
    pub fn to_germ(&self, germ: &Germ, word: &[usize]) -> Vec<garside::SimpleId> {
        let atoms = self.atoms();
        word.iter().map(|&i| germ.lookup(&atoms[i]).unwrap()).collect()
    }

    pub fn words(&self, max_len: usize) -> Vec<Vec<usize>> {
        let m = self.atoms().len();
        let mut all = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for a in 0..m {
                    let mut v: Vec<usize> = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }
}

/// Least word in the class of `word` under the braid relations.
fn braid_class_min(word: &[usize]) -> Vec<usize> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::from([word.to_vec()]);
    seen.insert(word.to_vec());
    while let Some(w) = queue.pop_front() {
        let mut push = |v: Vec<usize>| {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        };
        for i in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[i], w[i + 1]);
            if x.abs_diff(y) >= 2 {
                let mut v = w.clone();
                v.swap(i, i + 1);
                push(v);
            }
        }
        for i in 0..w.len().saturating_sub(2) {
            let (x, y, z) = (w[i], w[i + 1], w[i + 2]);
            if x == z && x.abs_diff(y) == 1 {
                let mut v = w.clone();
                v[i] = y;
                v[i + 1] = x;
                v[i + 2] = y;
                push(v);
            }
        }
    }
    seen.into_iter().min().unwrap()
}

/// The elements of atom length at most `max_len`, each with one representative word.
pub fn elements(model: &Model, max_len: usize) -> Vec<(Vec<u32>, Vec<usize>)> {
    let mut keys = BTreeSet::new();
    let mut out = Vec::new();
    for w in model.words(max_len) {
        let k = model.key(&w);
        if keys.insert(k.clone()) {
            out.push((k, w));
        }
    }
    out
}
