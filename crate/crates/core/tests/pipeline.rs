mod common;

use common::parse_relations;
use zv_core::degeneration::{build_family, VertexKind};
use zv_core::engine::{
    coset_enumerate, simplify_to_target, target_generators, verify_by_coxeter_path, CosetTable,
    EnumerationConfig, Strategy,
};
use zv_core::exec::Exec;
use zv_core::presentation::{
    assemble_g1, tietze_simplify_with, AssemblyMode, Presentation, TietzeOptions, Word,
};

const BOUND: usize = 3_000_000;

fn assembled(n: u32, mode: AssemblyMode) -> Presentation {
    assemble_g1(&build_family(n).unwrap(), mode).unwrap()
}

fn enumerate(p: &Presentation, strategy: Strategy) -> CosetTable {
    let t = coset_enumerate(p, &[], &EnumerationConfig::new(BOUND, strategy)).unwrap();
    assert!(t.is_complete(), "{strategy:?} overflowed");
    t
}

/// The consequences of `b = b'` at a four-line point on lines `a < b < c < d`.
fn fourline_consequences(lines: &[u32]) -> Vec<Word> {
    let [a, b, c, d] = [lines[0], lines[1], lines[2], lines[3]];
    let text = format!(
        "{c} = {c}'\n<{b}, {d}>\n<{c}, {a}>\n[{b}, {c}]\n[{a}, {d}]\n\
         {a}' = {b} {d} {c} {d} {b}\n{d}' = {d} {c} {a} {b} {a} {c} {d}\n"
    );
    parse_relations(&text)
}

#[test]
fn raw_and_simplified_n3_have_order_8_factorial() {
    for mode in [AssemblyMode::Raw, AssemblyMode::Simplified] {
        let t = enumerate(&assembled(3, mode), Strategy::HltLookahead);
        assert_eq!(t.coset_count(), 40320, "{mode:?}");
    }
}

#[test]
fn fourline_consequences_hold_in_raw_n3_table() {
    let d = build_family(3).unwrap();
    let raw = assembled(3, AssemblyMode::Raw);
    let t = enumerate(&raw, Strategy::HltLookahead);
    let four: Vec<_> = d
        .vertices
        .iter()
        .filter(|v| v.kind == VertexKind::FourLine)
        .collect();
    assert_eq!(four.iter().map(|v| v.id).collect::<Vec<_>>(), [5, 6, 7]);
    for v in four {
        for w in fourline_consequences(&v.lines) {
            assert!(t.is_consequence(&w).unwrap(), "{w} at V{}", v.id);
        }
    }
}

#[test]
fn raw_relators_hold_in_simplified_table_and_back() {
    let raw = assembled(3, AssemblyMode::Raw);
    let simplified = assembled(3, AssemblyMode::Simplified);
    let ts = enumerate(&simplified, Strategy::HltLookahead);
    let tr = enumerate(&raw, Strategy::HltLookahead);
    assert!(ts.self_check(&raw).unwrap());
    assert!(tr.self_check(&simplified).unwrap());
}

#[test]
fn tietze_preserves_order_n3() {
    let p = assembled(3, AssemblyMode::Simplified);
    for max_definition_len in [1, 8] {
        let q = tietze_simplify_with(&p, None, TietzeOptions { max_definition_len })
            .unwrap()
            .presentation;
        assert!(q.alphabet.len() < p.alphabet.len());
        let t = enumerate(&q, Strategy::HltLookahead);
        assert_eq!(
            t.coset_count(),
            40320,
            "max_definition_len {max_definition_len}"
        );
    }
}

#[test]
fn certified_target_presentation_n3() {
    let d = build_family(3).unwrap();
    let p = assembled(3, AssemblyMode::Simplified);
    let (verdict, cert) = verify_by_coxeter_path(3, BOUND).unwrap();
    assert_eq!(cert.unwrap().index, Some(1));
    let r = simplify_to_target(&p, &d, &verdict).unwrap();
    let gens: std::collections::BTreeSet<_> = r.presentation.alphabet.iter().copied().collect();
    assert_eq!(gens, target_generators(3));
    let t = enumerate(&r.presentation, Strategy::HltLookahead);
    assert_eq!(t.coset_count(), 40320);
}

#[test]
fn strategies_agree_and_pass_self_check_n3() {
    let simplified = assembled(3, AssemblyMode::Simplified);
    let reduced = tietze_simplify_with(
        &simplified,
        None,
        TietzeOptions {
            max_definition_len: 1,
        },
    )
    .unwrap()
    .presentation;
    for p in [simplified, reduced, assembled(3, AssemblyMode::Raw)] {
        let mut f = enumerate(&p, Strategy::Felsch);
        let mut h = enumerate(&p, Strategy::HltLookahead);
        assert_eq!(f.coset_count(), h.coset_count());
        for t in [&f, &h] {
            assert!(t.self_check_with(&p, Exec::Sequential).unwrap());
            assert!(t.self_check_with(&p, Exec::Parallel).unwrap());
        }
        f.standardize();
        h.standardize();
        for &g in p.alphabet.iter() {
            assert_eq!(f.permutation(g).unwrap(), h.permutation(g).unwrap(), "{g}");
        }
    }
}

#[test]
fn table_json_roundtrip_n3() {
    let p = assembled(3, AssemblyMode::Simplified);
    let t = enumerate(&p, Strategy::HltLookahead);
    let back = CosetTable::from_json(&t.to_json()).unwrap();
    assert_eq!(back.coset_count(), 40320);
    assert!(back.self_check(&p).unwrap());
}
