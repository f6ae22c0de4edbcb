//! One PASS/FAIL line per acceptance criterion. All comparisons are exact;
//! the only tolerances are the wall-clock limits on criteria 1 and 2.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{canonical_strings, identify_primes, parse_relations, read_fixture};
use num_bigint::BigInt;
use zv_core::cli::{run, EXIT_OK};
use zv_core::degeneration::{build_family, graph_connected, VertexKind};
use zv_core::engine::{
    coset_enumerate, coxeter_path, image_check, simplify_to_target, target_generators,
    verify_by_coxeter_path, verify_simply_connected, CosetTable, EnumerationConfig,
    SimplyConnected, Strategy,
};
use zv_core::invariants::{chern, closed_form_census, factorial, singularity_census};
use zv_core::presentation::{
    assemble_g1, tietze_simplify_with, AssemblyMode, Generator, Presentation, TietzeOptions, Word,
};

const N3_LIMIT: Duration = Duration::from_secs(5);
const N4_LIMIT: Duration = Duration::from_secs(120);
/// Coset bound for the plain enumeration at n = 5..8.
const SMALL_BOUND: usize = 200_000;
/// Coset bound for the cross-validation runs.
const CROSS_BOUND: usize = 3_000_000;
/// Coset bound for cross-validation runs that may overflow under Felsch.
const OPTIONAL_BOUND: usize = 500_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn zv(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("zv").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&err),
    )
}

fn assembled(n: u32, mode: AssemblyMode) -> Presentation {
    assemble_g1(&build_family(n).unwrap(), mode).unwrap()
}

fn enumerate(p: &Presentation, strategy: Strategy) -> Result<CosetTable, String> {
    let t = coset_enumerate(p, &[], &EnumerationConfig::new(CROSS_BOUND, strategy))
        .map_err(|e| e.to_string())?;
    ensure!(
        t.is_complete(),
        "{strategy:?} overflowed at {CROSS_BOUND} cosets"
    );
    Ok(t)
}

fn verify_cli(n: &str, order: u64, limit: Duration) -> Outcome {
    let started = Instant::now();
    let (code, out) = zv(&["verify", "--n", n]);
    let elapsed = started.elapsed();
    let expected = format!("n={n} order={order} image_full_symmetric=true verdict=verified ");
    ensure!(code == EXIT_OK, "exit {code}: {out}");
    ensure!(out.starts_with(&expected), "got {out:?}");
    ensure!(elapsed <= limit, "took {elapsed:?}, limit {limit:?}");
    Ok(format!(
        "order {order}, verified, {:.1} s (limit {} s)",
        elapsed.as_secs_f64(),
        limit.as_secs()
    ))
}

fn criterion_1() -> Outcome {
    verify_cli("3", 40320, N3_LIMIT)
}

fn criterion_2() -> Outcome {
    verify_cli("4", 3_628_800, N4_LIMIT)
}

fn criterion_3() -> Outcome {
    let mut orders = Vec::new();
    for mode in [AssemblyMode::Raw, AssemblyMode::Simplified] {
        let t = enumerate(&assembled(3, mode), Strategy::HltLookahead)?;
        orders.push(t.coset_count());
    }
    ensure!(orders == [40320, 40320], "orders raw/simplified {orders:?}");
    let (code, out) = zv(&["verify", "--n", "3", "--mode", "raw"]);
    ensure!(
        code == EXIT_OK && out.contains("order=40320"),
        "cli raw: exit {code}, {out}"
    );
    Ok("raw and simplified both enumerate to 40320".into())
}

fn criterion_4() -> Outcome {
    let d = build_family(3).unwrap();
    let mut checked = 0;
    for mode in [AssemblyMode::Raw, AssemblyMode::Simplified] {
        let t = enumerate(&assembled(3, mode), Strategy::HltLookahead)?;
        let four: Vec<_> = d
            .vertices
            .iter()
            .filter(|v| v.kind == VertexKind::FourLine)
            .collect();
        ensure!(
            four.iter().map(|v| v.id).eq([5, 6, 7]),
            "four-line vertices {four:?}"
        );
        for v in four {
            let [a, b, c, dd] = [v.lines[0], v.lines[1], v.lines[2], v.lines[3]];
            let text = format!(
                "{c} = {c}'\n<{b}, {dd}>\n<{c}, {a}>\n[{b}, {c}]\n[{a}, {dd}]\n\
                 {a}' = {b} {dd} {c} {dd} {b}\n{dd}' = {dd} {c} {a} {b} {a} {c} {dd}\n"
            );
            for w in parse_relations(&text) {
                ensure!(
                    t.is_consequence(&w).map_err(|e| e.to_string())?,
                    "{w} fails at V{} ({mode:?})",
                    v.id
                );
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} words at V5, V6, V7 in the raw and simplified tables"
    ))
}

fn criterion_5() -> Outcome {
    for n in 3..=10u64 {
        let d = build_family(n as u32).unwrap();
        let c = singularity_census(&d).map_err(|e| e.to_string())?;
        ensure!(c == closed_form_census(n as u32), "n={n}: {c:?}");
        ensure!(
            (c.q, c.p, c.m) == (18 * n - 6, 18 * n * n - 22 * n + 8, 6 * n + 2),
            "n={n}: {c:?}"
        );
        let pairs = 4 * d.disjoint_line_pairs().len() as u64;
        ensure!(
            pairs == 14 * n * n - 14 * n,
            "n={n}: 4 x disjoint pairs = {pairs}"
        );
    }
    Ok("n = 3..10 exact".into())
}

fn criterion_6() -> Outcome {
    for n in 3..=8i64 {
        let c = singularity_census(&build_family(n as u32).unwrap()).map_err(|e| e.to_string())?;
        let r = chern(&c).map_err(|e| e.to_string())?;
        let nf = factorial(2 * n as u64 + 2);
        let big = |v: i64| BigInt::from(v);
        ensure!(
            r.c1_sq == &nf * big(9 * n * n - 12 * n + 4),
            "n={n}: C1^2 = {}",
            r.c1_sq
        );
        ensure!(
            &r.c2 * big(2) == &nf * big(9 * n * n - 9 * n + 8),
            "n={n}: C2 = {}",
            r.c2
        );
        ensure!(
            &r.tau * big(3) == &nf * big(-3 * n - 4),
            "n={n}: tau = {}",
            r.tau
        );
        ensure!(r.tau < big(0) && r.c1_sq > big(0), "n={n}: signs");
    }
    Ok("n = 3..8 exact, tau < 0 < C1^2".into())
}

fn criterion_7() -> Outcome {
    let p = assembled(3, AssemblyMode::Simplified);
    ensure!(
        p.to_text() == read_fixture("n3_presentation.txt"),
        "n = 3 text differs from golden file"
    );
    let ours = canonical_strings(&p.relators);
    ensure!(ours.len() == p.relators.len(), "assembled list has repeats");
    let listed = canonical_strings(&parse_relations(&read_fixture("n3_relations.txt")));
    ensure!(
        ours == listed,
        "missing {:?}, extra {:?}",
        listed.difference(&ours).collect::<Vec<_>>(),
        ours.difference(&listed).collect::<Vec<_>>()
    );
    let n4 = canonical_strings(&identify_primes(&assembled(4, AssemblyMode::Simplified)).relators);
    for w in parse_relations("11 = 6 3 4 3 6\n12 = 8 5 6 5 8\n13 = 10 7 8 7 10\n") {
        ensure!(
            n4.contains(&w.canonical_relator(true).to_string()),
            "n = 4 lacks {w}"
        );
    }
    Ok(format!(
        "{} n = 3 relators equal the transcribed list; n = 4 has 13=10 7 8 7 10",
        ours.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    for n in 5..=8 {
        let d = build_family(n).unwrap();
        let p = assembled(n, AssemblyMode::Simplified);
        let tmap = d.transposition_map();
        ensure!(image_check(&p, &tmap), "n={n}: image check");
        ensure!(
            graph_connected(d.degree(), tmap.values().copied()),
            "n={n}: graph"
        );
        let plain = verify_simply_connected(
            n,
            &EnumerationConfig::new(SMALL_BOUND, Strategy::HltLookahead),
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            plain.simply_connected != SimplyConnected::Falsified,
            "n={n}: falsified"
        );
        let (cert, _) = verify_by_coxeter_path(n, 1 << 20).map_err(|e| e.to_string())?;
        ensure!(
            cert.simply_connected == SimplyConnected::Verified,
            "n={n}: certificate {cert:?}"
        );
        let r = simplify_to_target(&p, &d, &cert).map_err(|e| e.to_string())?;
        let gens: BTreeSet<Generator> = r.presentation.alphabet.iter().copied().collect();
        ensure!(
            gens == target_generators(n) && gens.len() as u32 == 2 * n + 1,
            "n={n}: {gens:?}"
        );
        notes.push(format!(
            "n={n} enumerate@{SMALL_BOUND}={:?} path=verified",
            plain.simply_connected
        ));
    }
    Ok(notes.join(", ").to_lowercase())
}

fn criterion_9() -> Outcome {
    let simplified = assembled(3, AssemblyMode::Simplified);
    let reduced = tietze_simplify_with(
        &simplified,
        None,
        TietzeOptions {
            max_definition_len: 1,
        },
    )
    .map_err(|e| e.to_string())?
    .presentation;
    // (name, presentation, subgroup, whether both strategies must complete)
    let mut cases: Vec<(String, Presentation, Vec<Word>, bool)> = vec![
        ("n=3 simplified".into(), simplified, vec![], true),
        ("n=3 reduced".into(), reduced, vec![], true),
        (
            "n=3 raw".into(),
            assembled(3, AssemblyMode::Raw),
            vec![],
            true,
        ),
    ];
    for n in 3..=5 {
        let d = build_family(n).unwrap();
        let p = assembled(n, AssemblyMode::Simplified);
        let path = coxeter_path(&p, &d.transposition_map(), d.degree())
            .ok_or(format!("n={n}: no path"))?;
        let sub = path.generators.iter().map(|g| Word::gen(*g)).collect();
        cases.push((format!("n={n} path subgroup"), p, sub, n <= 4));
    }
    let (mut agreed, mut tables) = (0, 0);
    let mut incomplete = Vec::new();
    for (name, p, sub, required) in &cases {
        let bound = if *required {
            CROSS_BOUND
        } else {
            OPTIONAL_BOUND
        };
        let mut orders = Vec::new();
        for strategy in [Strategy::Felsch, Strategy::HltLookahead] {
            let t = coset_enumerate(p, sub, &EnumerationConfig::new(bound, strategy))
                .map_err(|e| e.to_string())?;
            if !t.is_complete() {
                ensure!(
                    !required,
                    "{name}: {strategy:?} overflowed at {bound} cosets"
                );
                incomplete.push(format!("{name} {strategy:?} overflow at {bound}"));
                continue;
            }
            ensure!(
                t.self_check(p).map_err(|e| e.to_string())?,
                "{name}: {strategy:?} self-check"
            );
            tables += 1;
            orders.push(t.coset_count());
        }
        if let [f, h] = orders[..] {
            ensure!(f == h, "{name}: felsch {f} hlt {h}");
            agreed += 1;
        }
    }
    let mut detail = format!("{agreed} cases agree, {tables} completed tables pass the self-check");
    if !incomplete.is_empty() {
        detail += &format!("; not compared: {}", incomplete.join(", ").to_lowercase());
    }
    Ok(detail)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("verify --n 3: order 40320, verified", criterion_1),
        ("verify --n 4: order 3628800, verified", criterion_2),
        ("raw n = 3 pipeline enumerates to 40320", criterion_3),
        (
            "four-line consequences hold in the n = 3 tables",
            criterion_4,
        ),
        ("census closed forms for n = 3..10", criterion_5),
        ("Chern numbers and tau for n = 3..8", criterion_6),
        ("golden relator lists for n = 3 and n = 4", criterion_7),
        ("property suite for n = 5..8", criterion_8),
        ("felsch and hlt cross-validation", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
