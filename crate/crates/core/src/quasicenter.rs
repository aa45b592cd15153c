//! Quasi-central elements `Δ_x`, atom classes and Δ-purity.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::germ::{Germ, SimpleId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuasiCenterError {
    #[error("atoms {0} and {1} lie in different classes but their deltas share a prefix")]
    ClassesOverlap(String, String),
    #[error("basis elements {0} and {1} do not commute")]
    NotCommuting(String, String),
    #[error("{0} is not quasi-central: no atom b with {1}·{0} = {0}·b")]
    NotQuasiCentral(String, String),
}

/// Partition of the atoms by their value of `Δ_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomClassPartition {
    pub classes: Vec<Vec<SimpleId>>,
    pub class_delta: Vec<SimpleId>,
}

impl AtomClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing `atom`.
    pub fn class_of(&self, atom: SimpleId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&atom))
    }
}

impl Germ {
    /// `Δ_s`: the join of the closure of `{s}` under `x ↦ b\x` for atoms `b`.
    pub fn delta_of_simple(&self, s: SimpleId) -> SimpleId {
        let mut seen = vec![false; self.len()];
        seen[s.index()] = true;
        let mut stack = vec![s];
        let mut acc = s;
        while let Some(x) = stack.pop() {
            acc = self.join(acc, x);
            for &b in self.atoms() {
                let y = self.lcomp(b, x);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    stack.push(y);
                }
            }
        }
        acc
    }

    /// Whether every atom has the same `Δ_a`.
    pub fn is_delta_pure(&self) -> bool {
        let mut deltas = self.atoms().iter().map(|&a| self.delta_of_simple(a));
        match deltas.next() {
            Some(first) => deltas.all(|d| d == first),
            None => true,
        }
    }

    /// Groups atoms by `Δ_a`, checking that distinct classes have coprime deltas.
    pub fn atom_classes(&self) -> Result<AtomClassPartition, QuasiCenterError> {
        let mut by_delta: BTreeMap<SimpleId, Vec<SimpleId>> = BTreeMap::new();
        for &a in self.atoms() {
            by_delta.entry(self.delta_of_simple(a)).or_default().push(a);
        }
        let mut blocks: Vec<(SimpleId, Vec<SimpleId>)> = by_delta.into_iter().collect();
        blocks.sort_by_key(|(_, atoms)| atoms[0]);
        for (i, (d1, c1)) in blocks.iter().enumerate() {
            for (d2, c2) in &blocks[i + 1..] {
                if !self.meet(*d1, *d2).is_unit() {
                    return Err(QuasiCenterError::ClassesOverlap(
                        self.name(c1[0]).to_string(),
                        self.name(c2[0]).to_string(),
                    ));
                }
            }
        }
        Ok(AtomClassPartition {
            class_delta: blocks.iter().map(|(d, _)| *d).collect(),
            classes: blocks.into_iter().map(|(_, c)| c).collect(),
        })
    }

    /// The distinct class deltas, verified to commute pairwise and to be
    /// quasi-central.
    pub fn quasi_center_basis(&self) -> Result<Vec<SimpleId>, QuasiCenterError> {
        let basis = self.atom_classes()?.class_delta;
        let el = |s: SimpleId| self.simple_element(s);
        for (i, &c) in basis.iter().enumerate() {
            for &d in &basis[i + 1..] {
                if self.multiply(&el(c), &el(d)) != self.multiply(&el(d), &el(c)) {
                    return Err(QuasiCenterError::NotCommuting(
                        self.name(c).to_string(),
                        self.name(d).to_string(),
                    ));
                }
            }
            for &a in self.atoms() {
                let left = self.multiply(&el(a), &el(c));
                let ok = self
                    .atoms()
                    .iter()
                    .any(|&b| self.multiply(&el(c), &el(b)) == left);
                if !ok {
                    return Err(QuasiCenterError::NotQuasiCentral(
                        self.name(c).to_string(),
                        self.name(a).to_string(),
                    ));
                }
            }
        }
        Ok(basis)
    }
}
