//! Byte-exact automaton exports. Set `UPDATE_GOLDEN=1` to rewrite the files.

use std::path::PathBuf;

use garside::automata::{build_nf_automaton, Variant};
use garside::{braid_germ, free_abelian_germ, wreath_example_germ, Germ};

fn compare(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} differs from its golden file");
}

fn both(stem: &str, germ: &Germ, variant: Variant) {
    let a = build_nf_automaton(germ, variant);
    compare(&format!("{stem}.dot"), &a.to_dot());
    compare(&format!("{stem}.tsv"), &a.to_tsv());
}

#[test]
fn wreath_proper() {
    both("wreath_proper", &wreath_example_germ(), Variant::Proper);
}

#[test]
fn braid3_proper() {
    both("braid3_proper", &braid_germ(3).unwrap(), Variant::Proper);
}

#[test]
fn abelian2_full() {
    both("abelian2_full", &free_abelian_germ(2).unwrap(), Variant::Full);
}
