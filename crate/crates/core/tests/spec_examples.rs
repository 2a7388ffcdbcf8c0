//! Worked examples for each operation: constructors and their error paths,
//! loop lists, oppositeness, twist behavior, and the partition pipeline on
//! the two reference families.

use dynnikov::coords::{coords_of, curve_from_coords, DynnikovCoords};
use dynnikov::corpus::{relaxed_curves, twisted_corpus};
use dynnikov::curve::make_relaxed;
use dynnikov::loops::{list_of, loops_oracle, LoopKind, LoopSymbol};
use dynnikov::partition::{
    build_partition, decisive_set, group_structure, opposite_list, x_membership,
    PartitionOutcome,
};
use dynnikov::twist::{check_prop1, dehn_twist};
use dynnikov::{
    are_opposite, classify_family, geometric_intersection, CurveFamily, Error, FamilyClass,
    PuncturedDisk,
};

fn d(n: usize) -> PuncturedDisk {
    PuncturedDisk::new(n).unwrap()
}

fn sym(s: &str) -> LoopSymbol {
    let kind = if s.starts_with('L') { LoopKind::L } else { LoopKind::R };
    let b = s.as_bytes();
    LoopSymbol::new(kind, (b[1] - b'0') as usize, (b[2] - b'0') as usize)
}

/// The three-curve family of the worked five-puncture example.
fn example3_family() -> CurveFamily {
    CurveFamily::new(
        d(5),
        vec!["c1".into(), "c2".into(), "c3".into()],
        vec![
            make_relaxed(d(5), 1, 3).unwrap(),
            make_relaxed(d(5), 2, 4).unwrap(),
            make_relaxed(d(5), 4, 5).unwrap(),
        ],
    )
    .unwrap()
}

/// The reconstructed four-curve maximal family on six punctures.
fn figure4_family() -> CurveFamily {
    let vs: [&[i64]; 4] = [
        &[0, -1, 0, 0, 0, 1, 0, 1],
        &[0, -1, -1, -2, -2, 1, -2, 0],
        &[0, 0, -1, -1, 0, -1, -1, 0],
        &[0, 0, 0, 0, 0, -1, 0, 1],
    ];
    let curves = vs
        .iter()
        .map(|f| curve_from_coords(d(6), &DynnikovCoords::from_flat(6, f).unwrap()).unwrap())
        .collect();
    CurveFamily::new(
        d(6),
        (1..=4).map(|k| format!("c{k}")).collect(),
        curves,
    )
    .unwrap()
}

#[test]
fn make_relaxed_rejects_bad_inputs() {
    assert!(matches!(make_relaxed(d(5), 1, 5), Err(Error::NonEssential(_))));
    assert!(matches!(make_relaxed(d(5), 0, 3), Err(Error::IndexOutOfRange(_))));
    assert!(matches!(make_relaxed(d(5), 3, 3), Err(Error::IndexOutOfRange(_))));
    assert!(matches!(make_relaxed(d(5), 2, 6), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn relaxed_crossing_profile() {
    // beta_k = 2 exactly on the enclosed range; one crossing on each ray at
    // an enclosed interior puncture.
    for n in 4..=7 {
        let disk = d(n);
        for i in 1..=n {
            for j in i + 1..=n {
                if (i, j) == (1, n) {
                    continue;
                }
                let c = make_relaxed(disk, i, j).unwrap();
                let v = c.crossings();
                for w in 1..n {
                    let expect = if i <= w && w <= j - 1 { 2 } else { 0 };
                    assert_eq!(v.beta(w), expect, "c_({i},{j}) in D_{n}, wall {w}");
                }
                for p in 2..n {
                    let expect = i64::from(i <= p && p <= j);
                    assert_eq!(v.alpha(2 * p as isize - 3), expect);
                    assert_eq!(v.alpha(2 * p as isize - 2), expect);
                }
            }
        }
    }
}

#[test]
fn arc_crossings_of_c13() {
    let c = make_relaxed(d(5), 1, 3).unwrap();
    let v = c.crossings();
    assert_eq!(v.beta_vec(), vec![0, 2, 2, 0, 0, 0]);
    let alpha: Vec<i64> = (-1..=8).map(|i| v.alpha(i)).collect();
    assert_eq!(alpha, vec![1, 1, 1, 1, 1, 1, 0, 0, 0, 0]);
}

#[test]
fn components_counts() {
    let c = make_relaxed(d(5), 1, 3).unwrap();
    assert_eq!(c.components().len(), 1);
    let u = dynnikov::intersect::disjoint_union(
        &make_relaxed(d(5), 1, 2).unwrap(),
        &make_relaxed(d(5), 4, 5).unwrap(),
    )
    .unwrap();
    assert_eq!(u.components().len(), 2);
    assert!(!u.is_essential()); // two components
    assert!(c.is_essential());
}

#[test]
fn d3_relaxed_coordinates() {
    let c = make_relaxed(d(3), 1, 2).unwrap();
    assert_eq!(coords_of(&c).unwrap().to_flat(), vec![0, 1]);
}

#[test]
fn unrealizable_vectors_are_rejected() {
    // Odd parity structure cannot come from a multicurve.
    let v = dynnikov::IntersectionVector::new(
        5,
        vec![1, 1, 1, 0, 0, 0, 0, 0, 0, 0],
        vec![0, 2, 2, 0, 0, 0],
    );
    assert!(matches!(v, Err(Error::NotAMulticurve(_))));
}

#[test]
fn loop_lists_of_worked_curves() {
    let c13 = make_relaxed(d(5), 1, 3).unwrap();
    let expect: Vec<LoopSymbol> = ["L00", "L01", "R12", "R22"].iter().map(|s| sym(s)).collect();
    assert_eq!(list_of(&c13).unwrap().symbol_set(), expect.into_iter().collect());

    let c24 = make_relaxed(d(5), 2, 4).unwrap();
    let expect: Vec<LoopSymbol> = ["L11", "L12", "R23", "R33"].iter().map(|s| sym(s)).collect();
    assert_eq!(list_of(&c24).unwrap().symbol_set(), expect.into_iter().collect());

    let c45 = make_relaxed(d(5), 4, 5).unwrap();
    assert!(list_of(&c45).unwrap().contains(&sym("L33")));
}

#[test]
fn oracle_worked_values() {
    let c13 = make_relaxed(d(5), 1, 3).unwrap();
    assert_eq!(loops_oracle(&c13, 1, 2).unwrap(), (1, 0));
    let c45 = make_relaxed(d(5), 4, 5).unwrap();
    assert_eq!(loops_oracle(&c45, 3, 3).unwrap(), (0, 1));
    let c12 = make_relaxed(d(5), 1, 2).unwrap();
    assert_eq!(loops_oracle(&c12, 3, 4).unwrap(), (0, 0));
}

#[test]
fn intersection_worked_values() {
    let c13 = make_relaxed(d(5), 1, 3).unwrap();
    let c24 = make_relaxed(d(5), 2, 4).unwrap();
    let c45 = make_relaxed(d(5), 4, 5).unwrap();
    assert_eq!(geometric_intersection(&c13, &c45).unwrap(), 0);
    assert_eq!(geometric_intersection(&c13, &c24).unwrap(), 2);
    assert_eq!(are_opposite(&c13, &c24).unwrap(), Some((1, 2)));
    assert_eq!(are_opposite(&c13, &c45).unwrap(), None);
}

#[test]
fn classify_worked_families() {
    let fam = example3_family();
    assert_eq!(classify_family(&fam).unwrap(), FamilyClass::OppositeFamily);
    let fig4 = figure4_family();
    assert_eq!(classify_family(&fig4).unwrap(), FamilyClass::MaximalOppositeFamily);
}

#[test]
fn classify_finds_non_opposite_witness() {
    // Search twisted relaxed curves for an intersecting pair with no
    // opposite loops, then classify a family containing it.
    let disk = d(5);
    let corpus = twisted_corpus(disk, 4, 3, 29).unwrap();
    let singles: Vec<_> = corpus
        .into_iter()
        .filter(|c| c.component_count() == 1)
        .collect();
    let mut found = None;
    'outer: for (x, a) in singles.iter().enumerate() {
        for b in singles.iter().skip(x + 1) {
            if geometric_intersection(a, b).unwrap() >= 2
                && are_opposite(a, b).unwrap().is_none()
            {
                found = Some((a.clone(), b.clone()));
                break 'outer;
            }
        }
    }
    let (a, b) = found.expect("an intersecting non-opposite pair exists in the corpus");
    let fam = CurveFamily::new(disk, vec!["a".into(), "b".into()], vec![a, b]).unwrap();
    assert!(matches!(
        classify_family(&fam).unwrap(),
        FamilyClass::NotOppositeFamily { .. }
    ));
}

#[test]
fn twisting_creates_the_opposite_loop() {
    // Twisting c_{2,4} about c_{1,3} imprints the right loop over strip (1,2).
    let c13 = make_relaxed(d(5), 1, 3).unwrap();
    let c24 = make_relaxed(d(5), 2, 4).unwrap();
    let img = dehn_twist(&c24, &c13, 1).unwrap();
    let (r, _) = loops_oracle(&img, 1, 2).unwrap();
    assert!(r > 0);
}

#[test]
fn prop1_worked_case() {
    let c13 = make_relaxed(d(5), 1, 3).unwrap();
    let c24 = make_relaxed(d(5), 2, 4).unwrap();
    let report = check_prop1(&c13, &c24, (1, 2), -3..=3).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
    assert_eq!(report.powers_checked, vec![-3, -2, -1, 1, 2, 3]);
    // Disjoint pairs violate the precondition.
    let c45 = make_relaxed(d(5), 4, 5).unwrap();
    assert_eq!(
        check_prop1(&c13, &c45, (1, 2), 1..=1).unwrap_err(),
        Error::NotOpposite(1, 2)
    );
}

#[test]
fn twist_growth_is_monotone_in_power() {
    // The wall counts on the twisting curve's support grow with |p|.
    let c13 = make_relaxed(d(5), 1, 3).unwrap();
    let c24 = make_relaxed(d(5), 2, 4).unwrap();
    let mut last = 0;
    for p in 1..=4 {
        let img = dehn_twist(&c24, &c13, p).unwrap();
        let total: i64 = img.crossings().beta_vec().iter().sum();
        assert!(total > last);
        last = total;
    }
}

#[test]
fn example3_partition_and_decisive_sets() {
    let fam = example3_family();
    let PartitionOutcome::Complete(p) = build_partition(&fam).unwrap() else {
        panic!("expected a complete partition");
    };
    assert_eq!(p.parts(), &[vec![0, 2], vec![1]]);
    assert_eq!(p.display_with(fam.labels()), "P1={c1,c3} P2={c2}");
    let g = group_structure(&p, false).unwrap();
    assert_eq!(g.to_string(), "Z^2 * Z");
    assert_eq!(decisive_set(&fam, &p, 0).unwrap().display(), "{R_{1,2}}");
    assert_eq!(decisive_set(&fam, &p, 2).unwrap().display(), "{L_{3,3}}");
    assert_eq!(decisive_set(&fam, &p, 1).unwrap().display(), "{L_{1,2}, R_{3,3}}");
}

#[test]
fn figure4_opposite_lists_match_published() {
    let fam = figure4_family();
    let l21 = opposite_list(&fam, 0, 1);
    assert_eq!(l21, [sym("R34")].into());
    let l31 = opposite_list(&fam, 0, 2);
    assert_eq!(l31, [sym("R22"), sym("R34")].into());
    let l41 = opposite_list(&fam, 0, 3);
    assert_eq!(l41, [sym("R22")].into());
    // Disjoint pair: no opposite loops at all.
    let c12 = make_relaxed(d(5), 1, 2).unwrap();
    let c45 = make_relaxed(d(5), 4, 5).unwrap();
    let fam2 = CurveFamily::new(d(5), vec!["a".into(), "b".into()], vec![c12, c45]).unwrap();
    assert!(opposite_list(&fam2, 0, 1).is_empty());
}

#[test]
fn figure4_partition_is_free_of_rank_4() {
    let fam = figure4_family();
    let PartitionOutcome::Complete(p) = build_partition(&fam).unwrap() else {
        panic!("expected a complete partition");
    };
    assert_eq!(p.parts().len(), 4);
    assert!(p.parts().iter().all(|part| part.len() == 1));
    let g = group_structure(&p, true).unwrap();
    assert_eq!(g.free_rank(), Some(4));
    assert_eq!(g.to_string(), "F_4");
}

#[test]
fn x_membership_worked_cases() {
    let fam = figure4_family();
    let PartitionOutcome::Complete(p) = build_partition(&fam).unwrap() else { panic!() };
    // Each generator sits in its own part's set and in no other.
    for i in 0..4 {
        for part in 0..4 {
            assert_eq!(
                x_membership(fam.curve(i), part, &fam, &p).unwrap(),
                part == i,
                "curve {i} vs part {part}"
            );
        }
    }
    // A twisted image moves into the acting part's set.
    let img = dehn_twist(fam.curve(0), fam.curve(1), 1).unwrap();
    assert!(x_membership(&img, 1, &fam, &p).unwrap());
}

#[test]
fn incomplete_partition_has_a_witness() {
    // c_{1,2} is disjoint from both interleaved curves, which intersect.
    let disk = d(6);
    let fam = CurveFamily::new(
        disk,
        vec!["c1".into(), "c2".into(), "c3".into()],
        vec![
            make_relaxed(disk, 1, 2).unwrap(),
            make_relaxed(disk, 3, 5).unwrap(),
            make_relaxed(disk, 4, 6).unwrap(),
        ],
    )
    .unwrap();
    match build_partition(&fam).unwrap() {
        PartitionOutcome::Failure { witness, .. } => assert_eq!(witness, (1, 2)),
        other => panic!("expected failure, got {other:?}"),
    }
}

#[test]
fn relaxed_curves_cover_both_corpus_generators() {
    assert_eq!(relaxed_curves(d(5)).len(), 9);
    assert_eq!(relaxed_curves(d(6)).len(), 14);
}
