mod common;

use common::{canonical_strings, identify_primes, parse_relations, read_fixture};
use zv_core::degeneration::build_family;
use zv_core::engine::{
    coset_enumerate, image_check, verify_by_coxeter_path, EnumerationConfig, SimplyConnected,
    Strategy,
};
use zv_core::presentation::{assemble_g1, AssemblyMode, Presentation};

fn simplified(n: u32) -> Presentation {
    assemble_g1(&build_family(n).unwrap(), AssemblyMode::Simplified).unwrap()
}

#[test]
fn n3_text_matches_golden_file() {
    assert_eq!(simplified(3).to_text(), read_fixture("n3_presentation.txt"));
}

#[test]
fn n3_relators_match_transcribed_list() {
    let p = simplified(3);
    let ours = canonical_strings(&p.relators);
    assert_eq!(ours.len(), p.relators.len(), "assembled list has repeats");
    let listed = canonical_strings(&parse_relations(&read_fixture("n3_relations.txt")));
    let missing: Vec<_> = listed.difference(&ours).collect();
    let extra: Vec<_> = ours.difference(&listed).collect();
    assert!(
        missing.is_empty() && extra.is_empty(),
        "missing {missing:?}, extra {extra:?}"
    );
}

#[test]
fn n3_golden_file_parses_back() {
    let p = Presentation::from_text(&read_fixture("n3_presentation.txt")).unwrap();
    assert_eq!(p, simplified(3));
}

#[test]
fn n3_derived_relations_hold_in_table() {
    let p = simplified(3);
    let t = coset_enumerate(
        &p,
        &[],
        &EnumerationConfig::new(1 << 20, Strategy::HltLookahead),
    )
    .unwrap();
    assert_eq!(t.coset_count(), 40320);
    for w in parse_relations(&read_fixture("n3_derived.txt")) {
        assert!(t.is_consequence(&w).unwrap(), "{w} is not a consequence");
    }
}

#[test]
fn n4_contains_fourline_rewriting_block() {
    let identified = identify_primes(&simplified(4));
    let ours = canonical_strings(&identified.relators);
    let block = parse_relations("11 = 6 3 4 3 6\n12 = 8 5 6 5 8\n13 = 10 7 8 7 10\n");
    for w in &block {
        let s = w.canonical_relator(true).to_string();
        assert!(ours.contains(&s), "{w} missing from the n = 4 list");
    }
}

#[test]
fn n4_listed_relations_hold() {
    // G_1 -> S_10 is injective once the order is certified, so a relation
    // holds in G_1 exactly when its image is trivial.
    let (verdict, _) = verify_by_coxeter_path(4, 1 << 20).unwrap();
    assert_eq!(verdict.simply_connected, SimplyConnected::Verified);
    let d = build_family(4).unwrap();
    let listed = parse_relations(&read_fixture("n4_relations.txt"));
    let p = Presentation::new(simplified(4).alphabet, listed, true);
    assert!(image_check(&p, &d.transposition_map()));
}
