//! Acceptance suite: one test per shipped criterion, each printing a
//! `criterion N: PASS/FAIL` line (run with `-- --nocapture` to see them).
//!
//! Criterion 2 compares the reconstructed six-puncture family against the
//! published loop lists verbatim. Two of those published sets omit an entry
//! that is forced by their own members (a large loop's piece in its turn
//! region is itself a loop, so `L_{0,1}` forces `L_{0,0}` and `L_{3,4}`
//! forces `L_{3,3}`); no curves can reproduce them exactly, and the check is
//! expected to stay red by that one-entry margin on each of the two lists.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dynnikov::coords::{coords_of, curve_from_coords, DynnikovCoords};
use dynnikov::corpus::{relaxed_curves, twisted_corpus};
use dynnikov::curve::{make_relaxed, MultiCurve};
use dynnikov::loops::{list_of, loops_closed_form_of, loops_oracle, LoopKind, LoopSymbol};
use dynnikov::partition::{build_partition, decisive_set, group_structure, ping_pong_audit, PartitionOutcome};
use dynnikov::twist::{apply_word, check_prop1, TwistWord};
use dynnikov::{
    are_opposite, classify_family, geometric_intersection, CurveFamily, FamilyClass,
    FamilyDocument, PuncturedDisk,
};

fn verdict(criterion: &str, pass: bool, detail: &str) -> bool {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn sym(s: &str) -> LoopSymbol {
    let kind = if s.starts_with('L') { LoopKind::L } else { LoopKind::R };
    let b = s.as_bytes();
    LoopSymbol::new(kind, (b[1] - b'0') as usize, (b[2] - b'0') as usize)
}

fn syms(list: &[&str]) -> BTreeSet<LoopSymbol> {
    list.iter().map(|s| sym(s)).collect()
}

fn figure4_family() -> CurveFamily {
    let disk = PuncturedDisk::new(6).unwrap();
    let vs: [&[i64]; 4] = [
        &[0, -1, 0, 0, 0, 1, 0, 1],
        &[0, -1, -1, -2, -2, 1, -2, 0],
        &[0, 0, -1, -1, 0, -1, -1, 0],
        &[0, 0, 0, 0, 0, -1, 0, 1],
    ];
    let curves = vs
        .iter()
        .map(|f| curve_from_coords(disk, &DynnikovCoords::from_flat(6, f).unwrap()).unwrap())
        .collect();
    CurveFamily::new(disk, (1..=4).map(|k| format!("c{k}")).collect(), curves).unwrap()
}

/// Criterion 1: the worked five-puncture family, end to end and fast.
#[test]
fn criterion_1_worked_example() {
    let started = Instant::now();
    let doc = r#"{
        "n": 5,
        "curves": [
            {"name": "c1", "coords": [0, 0, 0, 0, 1, 0]},
            {"name": "c2", "coords": [0, 0, 0, -1, 0, 1]},
            {"name": "c3", "coords": [0, 0, 0, 0, 0, -1]}
        ]
    }"#;
    let fam = FamilyDocument::from_json(doc).unwrap().resolve().unwrap();
    let PartitionOutcome::Complete(p) = build_partition(&fam).unwrap() else {
        panic!("expected a complete partition");
    };
    let parts_ok = p.parts() == [vec![0, 2], vec![1]];
    let group = group_structure(&p, false).unwrap().to_string();
    let elapsed = started.elapsed();
    let pass = parts_ok && group == "Z^2 * Z" && elapsed.as_secs_f64() < 1.0;
    assert!(
        verdict(
            "1",
            pass,
            &format!(
                "partition {} group {group} in {:.3}s",
                p.display_with(fam.labels()),
                elapsed.as_secs_f64()
            ),
        ),
        "expected P1={{c1,c3}} P2={{c2}} and Z^2 * Z within 1s"
    );
}

/// Criterion 2: the reconstructed six-puncture figure family against the
/// published loop lists, decisive set of the first curve, and the group.
#[test]
fn criterion_2_figure_family() {
    let fam = figure4_family();
    let published = [
        syms(&["L01", "R22", "R34", "R44"]),
        syms(&["L11", "R22", "L34", "R45", "R55"]),
        syms(&["L22", "L33", "L34", "R45", "R55"]),
        syms(&["L22", "L23", "R34", "R44"]),
    ];
    let mut lists_exact = true;
    let mut detail = String::new();
    for k in 0..4 {
        let computed = fam.list(k).symbol_set();
        if computed != published[k] {
            lists_exact = false;
            let extra: Vec<String> = computed
                .difference(&published[k])
                .map(|s| s.to_string())
                .collect();
            let missing: Vec<String> = published[k]
                .difference(&computed)
                .map(|s| s.to_string())
                .collect();
            detail.push_str(&format!(
                "List(c{}) differs (extra {:?}, missing {:?}); ",
                k + 1,
                extra,
                missing
            ));
        }
    }

    let class = classify_family(&fam).unwrap();
    let PartitionOutcome::Complete(p) = build_partition(&fam).unwrap() else {
        panic!("expected a complete partition");
    };
    let dec1 = decisive_set(&fam, &p, 0).unwrap();
    let dec_ok = dec1.symbols == syms(&["R22", "R34"]);
    let group = group_structure(&p, class == FamilyClass::MaximalOppositeFamily)
        .unwrap()
        .to_string();
    let rest_ok =
        class == FamilyClass::MaximalOppositeFamily && dec_ok && group == "F_4";
    assert!(rest_ok, "family class {class:?}, Dec(c1) {}, group {group}", dec1.display());

    let pass = lists_exact && rest_ok;
    assert!(
        verdict(
            "2",
            pass,
            &format!(
                "Dec(c1) = {} and {group} reproduced exactly; {}",
                dec1.display(),
                if lists_exact {
                    "all four published lists exact".to_string()
                } else {
                    format!(
                        "published lists not reproducible exactly: {detail}\
                         each extra entry is forced by a published member of the same \
                         list (see the repository notes on the turn-region rule)"
                    )
                }
            ),
        ),
        "published List sets are not the complete loop lists of any curves; \
         the two one-entry discrepancies are errata in the source data"
    );
}

/// Criterion 3: decisive sets of the worked five-puncture family.
#[test]
fn criterion_3_example3_decisive_sets() {
    let disk = PuncturedDisk::new(5).unwrap();
    let fam = CurveFamily::new(
        disk,
        vec!["c1".into(), "c2".into(), "c3".into()],
        vec![
            make_relaxed(disk, 1, 3).unwrap(),
            make_relaxed(disk, 2, 4).unwrap(),
            make_relaxed(disk, 4, 5).unwrap(),
        ],
    )
    .unwrap();
    let PartitionOutcome::Complete(p) = build_partition(&fam).unwrap() else {
        panic!("expected a complete partition");
    };
    let d1 = decisive_set(&fam, &p, 0).unwrap().symbols;
    let d2 = decisive_set(&fam, &p, 1).unwrap().symbols;
    let d3 = decisive_set(&fam, &p, 2).unwrap().symbols;
    let pass = d1 == syms(&["R12"])
        && d3 == syms(&["L33"])
        && d2.is_superset(&syms(&["L12", "R33"]))
        && d2 == syms(&["L12", "R33"]);
    assert!(
        verdict(
            "3",
            pass,
            &format!(
                "Dec(c1) = {{R_{{1,2}}}}, Dec(c3) = {{L_{{3,3}}}}, Dec(c2) contains \
                 {{L_{{1,2}}, R_{{3,3}}}} (the published extra L_{{1,1}} would need \
                 R_{{1,1}} in List(c1), which vanishes)"
            ),
        ),
        "Dec sets: c1 {d1:?}, c2 {d2:?}, c3 {d3:?}"
    );
}

/// Criterion 4: twist powers never erase opposite large loops.
#[test]
fn criterion_4_twist_invariance_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut pairs_checked = 0usize;
    let mut violations = Vec::new();
    'outer: for n in 4..=7 {
        let disk = PuncturedDisk::new(n).unwrap();
        let gens = relaxed_curves(disk);
        let mut curves: Vec<MultiCurve> = gens.clone();
        for base in &gens {
            let len = rng.gen_range(1..=2);
            let w = TwistWord::sample(&mut rng, gens.len(), len);
            if let Ok(img) = apply_word(&w, base, &gens) {
                curves.push(img);
            }
        }
        let mut candidates: Vec<(usize, usize, (usize, usize))> = Vec::new();
        for a in 0..curves.len() {
            for b in a + 1..curves.len() {
                if let Some(region) = are_opposite(&curves[a], &curves[b]).unwrap() {
                    candidates.push((a, b, region));
                }
            }
        }
        // Deterministic shuffle for variety across sizes.
        for k in (1..candidates.len()).rev() {
            candidates.swap(k, rng.gen_range(0..=k));
        }
        for (a, b, region) in candidates {
            // The witness region carries a right loop on one side; orient
            // the pair accordingly.
            let (ri, _) = loops_oracle(&curves[a], region.0, region.1).unwrap();
            let (c1, c2) = if ri > 0 { (&curves[a], &curves[b]) } else { (&curves[b], &curves[a]) };
            let report = check_prop1(c1, c2, region, -5..=5).unwrap();
            if !report.passed() {
                violations.extend(report.violations);
            }
            pairs_checked += 1;
            if pairs_checked >= 200 && n == 7 {
                break 'outer;
            }
            if pairs_checked >= 50 && n < 7 {
                break;
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = pairs_checked >= 200 && violations.is_empty() && elapsed < 60.0;
    assert!(
        verdict(
            "4",
            pass,
            &format!(
                "{pairs_checked} opposite pairs, powers -5..=5, {} violations, {elapsed:.1}s",
                violations.len()
            ),
        ),
        "violations: {violations:?}"
    );
}

/// Criterion 5: the traced loop counts equal the closed form everywhere.
#[test]
fn criterion_5_oracle_equivalence() {
    let mut curves_checked = 0usize;
    let mut mismatches = 0usize;
    for n in 4..=7 {
        let disk = PuncturedDisk::new(n).unwrap();
        for c in twisted_corpus(disk, 21, 3, 5).unwrap() {
            if c.component_count() != 1 {
                continue;
            }
            curves_checked += 1;
            for i in 0..n {
                for j in i..n {
                    if loops_oracle(&c, i, j).unwrap() != loops_closed_form_of(&c, i, j).unwrap() {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    let pass = curves_checked >= 1000 && mismatches == 0;
    assert!(
        verdict(
            "5",
            pass,
            &format!("{curves_checked} corpus curves, every strip, {mismatches} mismatches"),
        ),
        "oracle vs closed form"
    );
}

/// Criterion 6: the coordinate map and its inverse are mutually inverse.
#[test]
fn criterion_6_round_trips() {
    let mut vectors = 0usize;
    let mut curves = 0usize;
    let mut failures = 0usize;
    for n in 4..=7 {
        let disk = PuncturedDisk::new(n).unwrap();
        for c in twisted_corpus(disk, 8, 4, 6).unwrap() {
            let v = coords_of(&c).unwrap();
            match curve_from_coords(disk, &v) {
                Ok(back) if back == c => {}
                _ => failures += 1,
            }
            curves += 1;
            // And the vector direction.
            match curve_from_coords(disk, &v).map(|cc| coords_of(&cc).unwrap()) {
                Ok(v2) if v2 == v => {}
                _ => failures += 1,
            }
            vectors += 1;
        }
    }
    let pass = failures == 0 && curves >= 200;
    assert!(
        verdict(
            "6",
            pass,
            &format!("{curves} curves and {vectors} vectors round-tripped, {failures} failures"),
        ),
        "round trips"
    );
}

/// Criterion 7: the relaxed-pair intersection law, exhaustively.
#[test]
fn criterion_7_intersection_laws() {
    let mut pairs = 0usize;
    let mut violations = 0usize;
    for n in 4..=7 {
        let disk = PuncturedDisk::new(n).unwrap();
        let mut spans = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if (i, j) != (1, n) {
                    spans.push((i, j));
                }
            }
        }
        for (x, &(i, j)) in spans.iter().enumerate() {
            for &(k, l) in spans.iter().skip(x + 1) {
                let a = make_relaxed(disk, i, j).unwrap();
                let b = make_relaxed(disk, k, l).unwrap();
                let interleaved =
                    (i < k && k <= j && j < l) || (k < i && i <= l && l < j);
                let expect = if interleaved { 2 } else { 0 };
                let got = geometric_intersection(&a, &b).unwrap();
                pairs += 1;
                if got != expect {
                    violations += 1;
                    println!("  c_({i},{j}) vs c_({k},{l}) in D_{n}: i = {got}, expected {expect}");
                }
            }
        }
    }
    // Opposite curves always meet at least twice over a twisted corpus.
    let disk = PuncturedDisk::new(5).unwrap();
    let corpus: Vec<MultiCurve> = twisted_corpus(disk, 3, 3, 37)
        .unwrap()
        .into_iter()
        .filter(|c| c.component_count() == 1)
        .collect();
    for (x, a) in corpus.iter().enumerate() {
        for b in corpus.iter().skip(x + 1) {
            if are_opposite(a, b).unwrap().is_some() {
                pairs += 1;
                if geometric_intersection(a, b).unwrap() < 2 {
                    violations += 1;
                }
            }
        }
    }
    let pass = violations == 0;
    assert!(
        verdict(
            "7",
            pass,
            &format!("{pairs} pairs checked exhaustively and over the corpus, {violations} violations"),
        ),
        "intersection laws"
    );
}

/// Criterion 8: the sampled ping-pong hypothesis on both reference families.
#[test]
fn criterion_8_ping_pong_audit() {
    let disk = PuncturedDisk::new(5).unwrap();
    let fam5 = CurveFamily::new(
        disk,
        vec!["c1".into(), "c2".into(), "c3".into()],
        vec![
            make_relaxed(disk, 1, 3).unwrap(),
            make_relaxed(disk, 2, 4).unwrap(),
            make_relaxed(disk, 4, 5).unwrap(),
        ],
    )
    .unwrap();
    let PartitionOutcome::Complete(p5) = build_partition(&fam5).unwrap() else { panic!() };
    let r5 = ping_pong_audit(&fam5, &p5, 300, 3, 5113).unwrap();

    let fam6 = figure4_family();
    let PartitionOutcome::Complete(p6) = build_partition(&fam6).unwrap() else { panic!() };
    let r6 = ping_pong_audit(&fam6, &p6, 220, 3, 6113).unwrap();

    let checks = r5.checks + r6.checks;
    let violations = r5.violations.len() + r6.violations.len();
    let pass = checks >= 500 && violations == 0 && r5.multi_membership == 0 && r6.multi_membership == 0;
    assert!(
        verdict(
            "8",
            pass,
            &format!("{checks} sampled triples across both families, {violations} violations"),
        ),
        "audit reports: {:?} / {:?}",
        r5.violations,
        r6.violations
    );
}
