//! Compares the arithmetic of a germ against an explicit model.

use std::collections::{HashMap, HashSet};

use garside::{Element, Germ};

use super::models::{elements, Model};

pub const MAX_LEN: usize = 4;

pub struct Fixture {
    model: Model,
    germ: Germ,
    elems: Vec<(Vec<u32>, Vec<usize>)>,
    /// `above[i]` holds every `j` with `elems[i] ≼ elems[j]`.
    above: Vec<HashSet<usize>>,
    /// `below_right[i]` holds every `j` with `elems[i] ≽ elems[j]`... stored
    /// as the set of `j` that have `elems[i]` as a suffix.
    right_above: Vec<HashSet<usize>>,
}

impl Fixture {
    pub fn new(model: Model, germ: Germ) -> Self {
        let elems = elements(&model, MAX_LEN);
        let index: HashMap<Vec<u32>, usize> = elems.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect();
        let atoms = model.atoms().len();
        let closure = |extend: &dyn Fn(&[usize], usize) -> Vec<usize>| {
            let mut out = Vec::new();
            for (_, w) in &elems {
                let mut reach = HashSet::new();
                let mut stack = vec![w.clone()];
                while let Some(v) = stack.pop() {
                    let Some(&i) = index.get(&model.key(&v)) else { continue };
                    if reach.insert(i) && v.len() < MAX_LEN {
                        for a in 0..atoms {
                            stack.push(extend(&v, a));
                        }
                    }
                }
                out.push(reach);
            }
            out
        };
        let above = closure(&|v, a| [v, &[a]].concat());
        let right_above = closure(&|v, a| [&[a], v].concat());
        Fixture {
            model,
            germ,
            elems,
            above,
            right_above,
        }
    }

    fn element(&self, i: usize) -> Element {
        self.germ.normal_form(&self.model.to_germ(&self.germ, &self.elems[i].1))
    }

    fn key_of(&self, x: &Element) -> Vec<u32> {
        self.model.key(&self.model.expand(&self.germ, x))
    }

    fn index_of(&self, x: &Element) -> Option<usize> {
        let k = self.key_of(x);
        self.elems.iter().position(|(key, _)| *key == k)
    }

    pub fn check_all(&self) {
        self.normal_forms();
        self.products();
        self.divisibility();
        self.gcd_lcm();
    }

    fn normal_forms(&self) {
        let g = &self.germ;
        let mut by_key: HashMap<Vec<u32>, Element> = HashMap::new();
        let mut seen = HashSet::new();
        for w in self.model.words(MAX_LEN) {
            let x = g.normal_form(&self.model.to_germ(g, &w));
            let key = self.model.key(&w);
            assert_eq!(self.key_of(&x), key, "normal form of {w:?} spells another element");
            assert!(g.is_normal(&x));
            assert_eq!(g.atom_length(&x), w.len());
            let prev = by_key.entry(key).or_insert_with(|| x.clone());
            assert_eq!(*prev, x, "equal elements with different normal forms");
            seen.insert(x);
        }
        assert_eq!(seen.len(), by_key.len());
        let layers = g.elements_by_length(MAX_LEN);
        let total: usize = layers.iter().map(Vec::len).sum();
        assert_eq!(total, self.elems.len());
    }

    fn products(&self) {
        let g = &self.germ;
        for (_, u) in &self.elems {
            for (_, v) in &self.elems {
                if u.len() + v.len() > MAX_LEN {
                    continue;
                }
                let x = g.normal_form(&self.model.to_germ(g, u));
                let y = g.normal_form(&self.model.to_germ(g, v));
                let xy = g.multiply(&x, &y);
                assert_eq!(self.key_of(&xy), self.model.key(&[u.as_slice(), v].concat()));
            }
        }
    }

    fn divisibility(&self) {
        let g = &self.germ;
        let xs: Vec<Element> = (0..self.elems.len()).map(|i| self.element(i)).collect();
        for i in 0..xs.len() {
            for j in 0..xs.len() {
                assert_eq!(g.divides(&xs[i], &xs[j]), self.above[i].contains(&j), "{i} ≼ {j}");
                assert_eq!(g.rdivides(&xs[i], &xs[j]), self.right_above[i].contains(&j), "{i} ≽ {j}");
            }
        }
    }

    fn gcd_lcm(&self) {
        let g = &self.germ;
        let n = self.elems.len();
        let xs: Vec<Element> = (0..n).map(|i| self.element(i)).collect();
        let len = |i: usize| self.elems[i].1.len();
        for i in 0..n {
            for j in 0..n {
                // greatest common prefix: the longest common lower bound
                let common: Vec<usize> = (0..n).filter(|&d| self.above[d].contains(&i) && self.above[d].contains(&j)).collect();
                let best = *common.iter().max_by_key(|&&d| len(d)).unwrap();
                assert!(common.iter().all(|&d| self.above[d].contains(&best)));
                assert_eq!(self.index_of(&g.gcd(&xs[i], &xs[j])), Some(best));

                let common: Vec<usize> = (0..n).filter(|&d| self.right_above[d].contains(&i) && self.right_above[d].contains(&j)).collect();
                let best = *common.iter().max_by_key(|&&d| len(d)).unwrap();
                assert_eq!(self.index_of(&g.rgcd(&xs[i], &xs[j])), Some(best));

                // least common multiple, when it is short enough to be seen
                let uppers: Vec<usize> = self.above[i].intersection(&self.above[j]).copied().collect();
                let m = g.lcm(&xs[i], &xs[j]);
                match self.index_of(&m) {
                    Some(mi) if g.atom_length(&m) <= MAX_LEN => {
                        assert!(uppers.contains(&mi));
                        assert!(uppers.iter().all(|&u| self.above[mi].contains(&u)));
                    }
                    _ => assert!(uppers.is_empty(), "a short common multiple was missed"),
                }
                let uppers: Vec<usize> = self.right_above[i].intersection(&self.right_above[j]).copied().collect();
                let m = g.rlcm(&xs[i], &xs[j]);
                match self.index_of(&m) {
                    Some(mi) if g.atom_length(&m) <= MAX_LEN => {
                        assert!(uppers.contains(&mi));
                        assert!(uppers.iter().all(|&u| self.right_above[mi].contains(&u)));
                    }
                    _ => assert!(uppers.is_empty()),
                }
            }
        }
    }
}

