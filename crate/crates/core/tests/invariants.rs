use num_bigint::BigInt;
use zv_core::degeneration::build_family;
use zv_core::invariants::{chern, closed_form_census, factorial, singularity_census};

#[test]
fn census_matches_closed_forms_n3_to_n10() {
    for n in 3..=10u64 {
        let d = build_family(n as u32).unwrap();
        let c = singularity_census(&d).unwrap();
        assert_eq!(c, closed_form_census(n as u32), "n = {n}");
        assert_eq!(c.q, 18 * n - 6);
        assert_eq!(c.p, 18 * n * n - 22 * n + 8);
        assert_eq!(c.m, 6 * n + 2);
        assert_eq!(
            4 * d.disjoint_line_pairs().len() as u64,
            14 * n * n - 14 * n
        );
    }
}

#[test]
fn chern_numbers_match_closed_forms_n3_to_n8() {
    for n in 3..=8i64 {
        let c = singularity_census(&build_family(n as u32).unwrap()).unwrap();
        let r = chern(&c).unwrap();
        let nf = factorial(2 * n as u64 + 2);
        let big = |v: i64| BigInt::from(v);
        assert_eq!(
            r.c1_sq,
            &nf * big(9 * n * n - 12 * n + 4),
            "C1^2 at n = {n}"
        );
        // (9/2 n^2 - 9/2 n + 4) = (9 n^2 - 9 n + 8) / 2
        assert_eq!(
            r.c2 * big(2),
            &nf * big(9 * n * n - 9 * n + 8),
            "C2 at n = {n}"
        );
        assert_eq!(r.tau * big(3), &nf * big(-3 * n - 4), "tau at n = {n}");
        assert!(r.general_type);
    }
}

#[test]
fn tau_is_negative_through_n10() {
    for n in 3..=10 {
        let r = chern(&closed_form_census(n)).unwrap();
        assert!(r.tau < BigInt::from(0), "n = {n}");
    }
}
