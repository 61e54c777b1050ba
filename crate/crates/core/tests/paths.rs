use std::collections::BTreeSet;

use thetadelta::coeffring::{ExactCtx, QtRat};
use thetadelta::macdonald::{Engine, EngineConfig};
use thetadelta::paths::{dyck_paths, enumerate, gen_fn, gen_fn_by_dcomp, DecoratedLabelledPath, DyckPath};
use thetadelta::symfunc::{compositions, Composition, SymFunc};

fn engine() -> Engine<ExactCtx> {
    Engine::new(ExactCtx, &EngineConfig { max_degree: 6, cache_dir: None })
}

fn decorated_eight_row_path() -> DecoratedLabelledPath {
    DecoratedLabelledPath::new(
        DyckPath::new(vec![0, 1, 0, 1, 2, 1, 2, 3]).unwrap(),
        [4, 7].into(),
        Some(vec![2, 3, 1, 4, 6, 1, 2, 6]),
    )
    .unwrap()
}

#[test]
fn reading_word_of_eight_row_path() {
    let p = DecoratedLabelledPath::new(
        DyckPath::new(vec![0, 1, 0, 1, 2, 1, 2, 3]).unwrap(),
        BTreeSet::new(),
        Some(vec![2, 3, 1, 4, 6, 1, 2, 6]),
    )
    .unwrap();
    assert_eq!(p.reading_word().unwrap(), vec![2, 1, 3, 4, 1, 6, 2, 6]);
    assert_eq!(p.reverse_reading_word().unwrap(), vec![6, 2, 6, 1, 4, 3, 1, 2]);
}

#[test]
fn dinv_of_decorated_path() {
    let p = decorated_eight_row_path();
    let inv = p.inversions().unwrap();
    assert_eq!(inv.primary, vec![(2, 4)]);
    assert_eq!(inv.secondary, vec![(2, 3), (5, 6)]);
    assert_eq!(p.dinv().unwrap(), 3);
}

#[test]
fn dcomp_of_twelve_row_path() {
    let p = DecoratedLabelledPath::new(
        DyckPath::new(vec![0, 1, 0, 0, 0, 1, 2, 1, 0, 0, 1, 1]).unwrap(),
        [2, 6].into(),
        None,
    )
    .unwrap();
    assert_eq!(p.dcomp(), Composition::new(vec![1, 1, 1, 3, 1, 3]).unwrap());
}

#[test]
fn diagonal_path_statistics() {
    for n in 1..=5 {
        let p = DecoratedLabelledPath::new(DyckPath::new(vec![0; n]).unwrap(), BTreeSet::new(), None).unwrap();
        assert_eq!(p.area(), 0);
        assert_eq!(p.dcomp(), Composition::new(vec![1; n]).unwrap());
    }
    let single = DecoratedLabelledPath::new(DyckPath::new(vec![0]).unwrap(), BTreeSet::new(), Some(vec![5])).unwrap();
    assert_eq!(single.reading_word().unwrap(), vec![5]);
    assert_eq!(single.dinv().unwrap(), 0);
}

#[test]
fn enumeration_matches_brute_force() {
    // every word in [m]^n on every path, kept when column strict
    for n in 1..=4usize {
        for m in 1..=3u32 {
            let mut count = 0;
            for path in dyck_paths(n) {
                let a = path.area_word().to_vec();
                let total = (m as usize).pow(n as u32);
                for code in 0..total {
                    let w: Vec<u32> = (0..n).map(|i| (code / (m as usize).pow(i as u32)) % m as usize + 1).map(|x| x as u32).collect();
                    if (1..n).all(|i| a[i] != a[i - 1] + 1 || w[i] > w[i - 1]) {
                        count += 1;
                    }
                }
            }
            assert_eq!(enumerate(n, 0, m, None).count(), count, "n={n} m={m}");
        }
    }
}

#[test]
fn enumeration_has_no_duplicates() {
    let all: Vec<_> = enumerate(4, 1, 3, None).collect();
    let set: std::collections::HashSet<_> = all.iter().cloned().collect();
    assert_eq!(all.len(), set.len());
}

#[test]
fn statistics_independence() {
    for p in enumerate(4, 1, 2, None) {
        let unlabelled = DecoratedLabelledPath { labels: None, ..p.clone() };
        assert_eq!(p.area(), unlabelled.area());
        assert_eq!(p.dcomp(), unlabelled.dcomp());
        let undecorated = DecoratedLabelledPath { dr: BTreeSet::new(), ..p.clone() };
        assert_eq!(p.dinv().unwrap(), undecorated.dinv().unwrap());
    }
}

#[test]
fn delta_conjecture_small_cases() {
    let eng = engine();
    for n in 1..=4usize {
        for k in 0..n {
            let lhs = gen_fn(eng.bases(), n, k, None).unwrap();
            let rhs = eng.delta_op(&eng.e(n - k - 1).unwrap(), &eng.e(n).unwrap(), true).unwrap();
            assert_eq!(lhs, rhs, "n={n} k={k}");
        }
    }
}

#[test]
fn compositional_refinement_small_cases() {
    let eng = engine();
    for n in 1..=4usize {
        for k in 0..n {
            let by = gen_fn_by_dcomp(eng.bases(), n, k).unwrap();
            for alpha in compositions(n - k) {
                let c = eng.c_alpha(&alpha).unwrap();
                let mut rhs = eng.theta_op(&eng.e(k).unwrap(), &eng.nabla(&c, false).unwrap()).unwrap();
                if (n - k) % 2 == 1 {
                    rhs = rhs.neg();
                }
                let lhs = by.get(&alpha).cloned().unwrap_or_else(SymFunc::<QtRat>::zero);
                assert_eq!(lhs, rhs, "n={n} k={k} alpha={alpha}");
            }
        }
    }
}
