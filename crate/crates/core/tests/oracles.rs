//! Element arithmetic compared against explicit models of each monoid, for
//! every element of atom length at most four.

mod support;

use garside::{braid_germ, free_abelian_germ, wreath_example_germ};
use support::fixture::{Fixture, MAX_LEN};
use support::models::{elements, Model};

#[test]
fn braid3_matches_relation_classes() {
    Fixture::new(Model::Braid(3), braid_germ(3).unwrap()).check_all();
}

#[test]
fn braid4_matches_relation_classes() {
    Fixture::new(Model::Braid(4), braid_germ(4).unwrap()).check_all();
}

#[test]
fn abelian_matches_vectors() {
    for k in 1..=4 {
        Fixture::new(Model::Abelian(k), free_abelian_germ(k).unwrap()).check_all();
    }
}

#[test]
fn wreath_matches_triples() {
    Fixture::new(Model::Wreath, wreath_example_germ()).check_all();
}

#[test]
fn abelian_normal_form_is_layered() {
    // v ↦ Δ^min(v) followed by the level sets {i : v_i - min ≥ j}
    let g = free_abelian_germ(3).unwrap();
    let model = Model::Abelian(3);
    for (v, w) in elements(&model, MAX_LEN) {
        let x = g.normal_form(&model.to_germ(&g, &w));
        let m = *v.iter().min().unwrap();
        let top = *v.iter().max().unwrap();
        assert_eq!(x.deltas as u32, m);
        let expected: Vec<String> = (m + 1..=top)
            .map(|j| {
                (0..3)
                    .filter(|&i| v[i] >= j)
                    .map(|i| format!("e{}", i + 1))
                    .collect::<String>()
            })
            .collect();
        let got: Vec<&str> = x.factors.iter().map(|&s| g.name(s)).collect();
        assert_eq!(got, expected);
    }
}

#[test]
fn braid_letters_are_permutation_braids() {
    // every normal-form letter spells a reduced word: its permutation has
    // as many inversions as the word has letters
    let g = braid_germ(4).unwrap();
    let model = Model::Braid(4);
    for s in g.simples() {
        let word = model.spell(g.name(s));
        let mut perm: Vec<usize> = (0..4).collect();
        for &i in &word {
            perm.swap(i, i + 1);
        }
        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        assert_eq!(inversions, word.len(), "{}", g.name(s));
        assert_eq!(g.rank(s), word.len());
    }
}
