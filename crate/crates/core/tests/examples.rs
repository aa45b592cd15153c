//! The worked example `⟨a,b,c | ab = ba, ac = cb, bc = ca⟩⁺` and the
//! small product germs, checked value by value.

use garside::{braid_germ, direct_product_germ, free_abelian_germ, wreath_example_germ, Germ, Side, ZsStructure};

fn el(g: &Germ, w: &str) -> garside::Element {
    g.parse_element(w).unwrap()
}

#[test]
fn wreath_relations() {
    let g = wreath_example_germ();
    let p = |x: &str, y: &str| g.name(g.product(g.lookup(x).unwrap(), g.lookup(y).unwrap()).unwrap()).to_string();
    assert_eq!(p("a", "b"), "ab");
    assert_eq!(p("b", "a"), "ab");
    assert_eq!(p("a", "c"), "ac");
    assert_eq!(p("c", "b"), "ac");
    assert_eq!(p("b", "c"), "bc");
    assert_eq!(p("c", "a"), "bc");
    assert_eq!(g.name(g.delta()), "abc");
}

#[test]
fn wreath_decomposition_values() {
    let g = wreath_example_germ();
    let zs = ZsStructure::build_named(&g, &["a", "b"]).unwrap();
    assert_eq!(g.name(zs.delta_g()), "ab");
    assert_eq!(g.name(zs.delta_h()), "c");
    assert_eq!(g.product(zs.delta_g(), zs.delta_h()), Some(g.delta()));
    assert_eq!(g.product(zs.delta_h(), zs.delta_g()), Some(g.delta()));
    let a = g.lookup("a").unwrap();
    assert_eq!(g.name(g.delta_of_simple(a)), "ab");
    let fg = zs.factor(Side::G);
    let local = fg.local(a).unwrap();
    assert_eq!(g.name(fg.ambient(fg.germ.delta_of_simple(local))), "a");
}

#[test]
fn a2bc_is_not_balanced() {
    let g = wreath_example_germ();
    let x = el(&g, "a.a.b.c");
    assert_eq!(x, el(&g, "c.a.b.b"));
    let witness = g.balance_witness(&x, 4).expect("a²bc has a one-sided divisor");
    assert!(g.divides(&witness, &x) != g.rdivides(&witness, &x));
    let a2 = el(&g, "a.a");
    assert!(g.divides(&a2, &x) && !g.rdivides(&a2, &x));

    // inside G the element a²b is balanced
    let zs = ZsStructure::build_named(&g, &["a", "b"]).unwrap();
    let fg = zs.factor(Side::G);
    let local = |n: &str| fg.local(g.lookup(n).unwrap()).unwrap();
    let a2b = fg.germ.normal_form(&[local("a"), local("a"), local("b")]);
    assert_eq!(fg.germ.balance_witness(&a2b, 4), None);
}

#[test]
fn abelian_with_one_left_atom() {
    let g = free_abelian_germ(3).unwrap();
    let zs = ZsStructure::build_named(&g, &["e1"]).unwrap();
    assert_eq!(g.name(zs.delta_g()), "e1");
    assert_eq!(g.name(zs.delta_h()), "e2e3");
    assert_eq!(g.atom_classes().unwrap().len(), 3);
}

#[test]
fn braid_sizes() {
    assert_eq!(braid_germ(2).unwrap().len(), 2);
    let b3 = braid_germ(3).unwrap();
    assert_eq!((b3.len(), b3.atoms().len()), (6, 2));
    let b4 = braid_germ(4).unwrap();
    assert_eq!(b4.len(), 24);
    assert!(b4.validate().is_valid());
}

#[test]
fn product_germs() {
    let b3 = braid_germ(3).unwrap();
    let bb = direct_product_germ(&b3, &b3).unwrap();
    assert_eq!(bb.len(), 36);
    let classes = bb.atom_classes().unwrap();
    let mut names: Vec<Vec<&str>> = classes.classes.iter().map(|c| c.iter().map(|&a| bb.name(a)).collect()).collect();
    names.sort();
    assert_eq!(names, [vec!["1*s1", "1*s2"], vec!["s1*1", "s2*1"]]);

    let n1 = free_abelian_germ(1).unwrap();
    let n2 = direct_product_germ(&n1, &n1).unwrap();
    let ab2 = free_abelian_germ(2).unwrap();
    assert_eq!(n2.len(), ab2.len());
    let rename = |s: &str| match s {
        "1" | "1*1" => "1",
        "e1*1" => "e1",
        "1*e1" => "e2",
        _ => "e1e2",
    };
    for x in n2.simples() {
        for y in n2.simples() {
            let lhs = n2.product(x, y).map(|z| rename(n2.name(z)).to_string());
            let (xa, ya) = (ab2.lookup(rename(n2.name(x))).unwrap(), ab2.lookup(rename(n2.name(y))).unwrap());
            let rhs = ab2.product(xa, ya).map(|z| ab2.name(z).to_string());
            assert_eq!(lhs, rhs);
        }
    }

    let bn = direct_product_germ(&b3, &n1).unwrap();
    let zs = ZsStructure::build_named(&bn, &["s1*1", "s2*1"]).unwrap();
    for &g in zs.g_simples() {
        for &h in zs.h_simples() {
            assert_eq!(zs.rr(h, g), g);
            assert_eq!(zs.rl(h, g), h);
            assert_eq!(zs.lr(g, h), h);
            assert_eq!(zs.ll(g, h), g);
        }
    }
}
