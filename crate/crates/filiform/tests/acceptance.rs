//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`). All arithmetic is
//! exact, so every comparison is to zero with no tolerance.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use filiform::catalog::{derive_constants, top_jacobi_residual, Catalog, Ideal};
use filiform::cli::verify::{run, CheckKind, Options, Status};
use filiform::degen::h2::{self, sequence_count, sequences, SymbolicData};
use filiform::deriv::{
    derivation_series, diag_derivation_residuals, diag_derivation_space, restrict_to_ideal,
};
use filiform::exact::{int, parse_expr, rat, RatFunc, Rational};

fn catalog() -> Catalog {
    Catalog::embedded().unwrap()
}

fn options(checks: &[CheckKind]) -> Options {
    Options {
        checks: checks.to_vec(),
        ..Options::default()
    }
}

fn criterion(n: u32, ok: bool, what: &str) {
    let status = if ok { "pass" } else { "FAIL" };
    println!("criterion {n:2}: {status} - {what}");
    assert!(ok, "criterion {n} failed: {what}");
}

#[test]
fn criterion_01_jacobi_identity_for_every_row() {
    let cat = catalog();
    let results = run(&cat, &options(&[CheckKind::Jacobi])).unwrap();
    let listed = results.iter().filter(|r| {
        cat.cn_list.contains(r.algebra.as_ref().unwrap())
    });
    criterion(
        1,
        listed.count() == 28 && results.iter().all(|r| r.status == Status::Pass),
        "symbolic Jacobi residuals vanish for all 28 table rows (and the graded representatives)",
    );
}

#[test]
fn criterion_02_quadratic_constraint_for_every_row() {
    let cat = catalog();
    let all_zero = cat
        .algebras
        .iter()
        .all(|row| top_jacobi_residual(&row.c9).is_zero());
    // Hand check on the sixth row: the four terms are -48, -48, -32,
    // and 128, summing to zero.
    let row = cat.algebra("mu9_6").unwrap();
    let c = |r: usize, s: usize| row.c9_entry(r, s).as_rational().unwrap();
    let (c945, c936, c927) = (c(4, 5), c(3, 6), c(2, 7));
    let terms = [
        -int(3) * &c936 * &c936,
        int(2) * &c927 * &c945,
        &c936 * &c945,
        int(2) * &c945 * &c945,
    ];
    let hand = terms[0] == int(-48)
        && terms[1] == int(-48)
        && terms[2] == int(-32)
        && terms[3] == int(128)
        && terms.iter().sum::<Rational>() == int(0);
    criterion(
        2,
        all_zero && hand,
        "quadratic top-constant constraint vanishes for every row; hand check -48-48-32+128=0",
    );
}

#[test]
fn criterion_03_diagonal_derivation_table() {
    let cat = catalog();
    let ok = cat.diag_derivations.len() == 10
        && cat.diag_derivations.iter().all(|entry| {
            let row = cat.algebra(&entry.algebra).unwrap();
            diag_derivation_residuals(&row.bracket(), &entry.weights)
                .unwrap()
                .is_empty()
        });
    criterion(3, ok, "all 10 diagonal derivations hold symbolically");
}

#[test]
fn criterion_04_both_spans_are_ideals() {
    let cat = catalog();
    let results = run(&cat, &options(&[CheckKind::Ideal])).unwrap();
    criterion(
        4,
        results.len() == cat.algebras.len() && results.iter().all(|r| r.status == Status::Pass),
        "h1 and h2 are ideals of every catalog family, symbolically",
    );
}

#[test]
fn criterion_05_derivation_templates() {
    let cat = catalog();
    let results = run(&cat, &options(&[CheckKind::Derivation])).unwrap();
    let mut ok = true;
    for r in &results {
        if r.case_id == "7.1" {
            // The one known transcription finding: exactly four
            // residuals, cleared by the documented reading.
            ok &= r.status == Status::Finding
                && r.residuals.len() == 4
                && r.notes.iter().any(|n| n.contains("every residual vanishes"));
        } else {
            ok &= r.status == Status::Pass && r.residuals.is_empty();
        }
    }
    // Reproducible: a second run yields the identical result list.
    let again = run(&cat, &options(&[CheckKind::Derivation])).unwrap();
    ok &= serde_json::to_string(&results).unwrap() == serde_json::to_string(&again).unwrap();
    criterion(
        5,
        ok,
        "derivation residuals vanish for every case except the documented 7.1 finding",
    );
}

#[test]
fn criterion_06_deformations_are_brackets_and_solvable_not_nilpotent() {
    let cat = catalog();
    let results = run(&cat, &options(&[CheckKind::Cocycle, CheckKind::Solvable])).unwrap();
    let mut ok = true;
    for r in &results {
        match (r.check_kind, r.case_id.as_str()) {
            // The 7.1 derivation finding propagates to its cocycle
            // condition; the documented reading clears it.
            (CheckKind::Cocycle, "7.1") => {
                ok &= r.status == Status::Finding
                    && r.notes.iter().any(|n| n.contains("every residual vanishes"));
            }
            _ => ok &= r.status == Status::Pass,
        }
    }
    criterion(
        6,
        ok,
        "mu_t is a Lie bracket degree-by-degree in t and solvable-not-nilpotent at 3 seeded points",
    );
}

#[test]
fn criterion_07_closed_form_equals_recurrence() {
    let cat = catalog();
    let opts = Options {
        checks: vec![CheckKind::Proposition],
        samples: 20,
        ..Options::default()
    };
    let results = run(&cat, &opts).unwrap();
    let case_results = results.iter().filter(|r| r.case_id != "-").count();
    let random = results.iter().find(|r| r.case_id == "-").unwrap();
    criterion(
        7,
        case_results == 7
            && random.status == Status::Pass
            && results.iter().all(|r| r.status == Status::Pass),
        "closed form equals the recurrence on all 7 h2 cases and 20 seeded random derivations",
    );
}

#[test]
fn criterion_08_sequence_counts_and_y_identity() {
    let mut ok = true;
    for s in 2..=8usize {
        for r in (s + 1)..=9 {
            for k in 2..=(r - s + 1) {
                let count = sequences(r, s, k).len();
                ok &= count == sequence_count(r, s, k);
                // Binomial cross-check computed independently.
                let (n, m) = (r - s - 1, k - 2);
                let binom = (0..m).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                ok &= count == binom;
            }
        }
    }
    // Y(x,y) Y(x,z) = Y(x,y) Y(y,z) + Y(x,z) Y(z,y) on 50 random
    // distinct triples, fully symbolically.
    let data = SymbolicData;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let indices: Vec<usize> = (2..=9).collect();
    for _ in 0..50 {
        let mut pick = indices.clone();
        pick.shuffle(&mut rng);
        let (x, y, z) = (pick[0], pick[1], pick[2]);
        let lhs = h2::y(&data, x, y).mul(&h2::y(&data, x, z));
        let rhs = h2::y(&data, x, y)
            .mul(&h2::y(&data, y, z))
            .add(&h2::y(&data, x, z).mul(&h2::y(&data, z, y)));
        ok &= lhs == rhs;
    }
    criterion(8, ok, "sequence counts match binomials; Y-identity holds on 50 random triples");
}

#[test]
fn criterion_09_degeneration_identity() {
    let cat = catalog();
    let results = run(&cat, &options(&[CheckKind::Degeneration])).unwrap();
    let mut ok = true;

    // No failures anywhere: in particular no structural violations and
    // every documented resolution clears its residuals.
    ok &= results.iter().all(|r| r.status != Status::Fail);

    // The finding set is exactly the documented one.
    let findings: BTreeSet<(String, String)> = results
        .iter()
        .filter(|r| r.status == Status::Finding)
        .map(|r| (r.case_id.clone(), r.algebra.clone().unwrap()))
        .collect();
    let expected: BTreeSet<(String, String)> = [
        ("6.3", "mu9_2"),
        ("6.3", "mu9_5"),
        ("6.4", "mu9_17"),
        ("6.5", "mu9_18"),
        ("6.5", "mu9_19"),
        ("6.5", "mu9_23"),
        ("6.5", "mu9_24"),
        ("6.6a", "mu9_6"),
        ("7.1", "mu9_1"),
    ]
    .iter()
    .map(|(c, a)| (c.to_string(), a.to_string()))
    .collect();
    ok &= findings == expected;

    // Frozen witnesses: the single 6.6a residual and the leading 6.4
    // residual, exact to the rendered expression.
    let at = |case: &str, algebra: &str| {
        results
            .iter()
            .find(|r| r.case_id == case && r.algebra.as_deref() == Some(algebra))
            .unwrap()
    };
    let first_case = at("6.6a", "mu9_6");
    ok &= first_case.residuals.len() == 1
        && first_case.residuals[0].indices == vec![2, 3, 9]
        && first_case.residuals[0].value == "2*p0^5 - 2*p0^9"
        && first_case.notes.iter().any(|n| n.contains("every residual vanishes"));
    let overridden = at("6.4", "mu9_17");
    ok &= overridden.residuals[0].indices == vec![2, 3, 5]
        && overridden.residuals[0].value == "-p0^6 + p0^9";

    // Exclusions are reported, not silently dropped.
    let skipped = results.iter().filter(|r| r.status == Status::Skipped).count();
    ok &= skipped == cat.skipped.len();

    criterion(
        9,
        ok,
        "degeneration residuals: all passes and the exact documented finding list, no structural violations",
    );
}

#[test]
fn criterion_10_characteristic_nilpotency() {
    let cat = catalog();
    let opts = Options {
        checks: vec![CheckKind::Cn],
        samples: 3,
        seed: 7,
        ..Options::default()
    };
    let results = run(&cat, &opts).unwrap();
    let mut ok = results.len() == cat.algebras.len()
        && results.iter().all(|r| r.status == Status::Pass);

    // The excluded subfamilies are excluded for a certified reason:
    // every derivation of h1 is nilpotent, and h2 has no diagonal
    // derivation at all in the construction basis (so certainly none
    // with distinct integer weights).
    let restricted = |c9: &BTreeMap<(usize, usize), RatFunc>,
                      point: &BTreeMap<String, RatFunc>,
                      ideal: Ideal| {
        let b = derive_constants(c9).substitute(point).unwrap();
        restrict_to_ideal(&b, ideal)
    };
    for b_value in [int(2), int(5), rat(-7, 2)] {
        let mut point = BTreeMap::new();
        point.insert("b".to_string(), RatFunc::from_rational(b_value.clone()));
        point.insert("a".to_string(), RatFunc::from_int(3));
        let c9 = &cat.algebra("mu9_17").unwrap().c9;
        let h1 = restricted(c9, &point, Ideal::H1);
        ok &= *derivation_series(&h1).unwrap().last().unwrap() == 0;
        ok &= diag_derivation_space(&restricted(c9, &point, Ideal::H2)).is_empty();
        let c9 = &cat.algebra("mu9_1").unwrap().c9;
        for a_value in ["-1", "0", "1", "1/2"] {
            let mut point = BTreeMap::new();
            point.insert("a".to_string(), parse_expr(a_value).unwrap());
            point.insert("b".to_string(), RatFunc::from_rational(b_value.clone()));
            let h1 = restricted(c9, &point, Ideal::H1);
            ok &= *derivation_series(&h1).unwrap().last().unwrap() == 0;
            ok &= diag_derivation_space(&restricted(c9, &point, Ideal::H2)).is_empty();
        }
    }
    criterion(
        10,
        ok,
        "characteristic nilpotency matches the catalog split; excluded subfamilies certified",
    );
}

#[test]
fn criterion_11_reports_are_deterministic() {
    let cat = catalog();
    let opts = Options {
        cases: vec!["6.1".to_string(), "7.3".to_string()],
        seed: 5,
        jobs: 4,
        ..Options::default()
    };
    let render = || {
        let results = run(&cat, &opts).unwrap();
        filiform::cli::Report::new(opts.seed, opts.samples, results).to_json()
    };
    let first = render();
    let second = render();
    criterion(
        11,
        first == second && !first.contains("elapsed"),
        "same seed and catalog give byte-identical JSON reports",
    );
}
