use pipepuzzle::engine::base_product;
use pipepuzzle::exec::Exec;
use pipepuzzle::lattice::{
    bijection_check, cell_param, check_t_recurrence, check_y_recurrence, partition_function, verify_ybe, ybe_boundaries,
    ybe_sides, RKind, Recurrence, WeightTable,
};
use pipepuzzle::perm::{separated_descents, Permutation};
use pipepuzzle::puzzle::{BoundarySpec, Enumerator, Mode, Tile};
use pipepuzzle::ring::{parse_elem, LocElem};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

#[test]
fn ybe_row_and_col_small_alphabet_all_k() {
    for k in 0..=4 {
        for kind in [RKind::Row, RKind::Col] {
            let r = verify_ybe(kind, k, 4, Exec::default());
            assert!(r.failures.is_empty(), "{kind:?} k={k}: {:?}", r.failures.first());
            assert!(r.nonzero_cases > 0);
        }
    }
}

// The sweep skips boundaries with four or more distinct nonzero labels. Three
// lines cannot carry them, so both sides must vanish.
#[test]
fn ybe_skipped_boundaries_vanish() {
    let kept = ybe_boundaries(4);
    let mut skipped = 0;
    for code in 0..5u32.pow(6) {
        let mut bd = [0u8; 6];
        let mut c = code;
        for slot in bd.iter_mut() {
            *slot = (c % 5) as u8;
            c /= 5;
        }
        if kept.contains(&bd) {
            continue;
        }
        skipped += 1;
        for k in 0..=4 {
            for kind in [RKind::Row, RKind::Col] {
                let (l, r) = ybe_sides(kind, k, bd);
                assert!(l.is_zero() && r.is_zero(), "{kind:?} k={k} {bd:?}");
            }
        }
    }
    assert!(skipped > 0);
}

#[test]
fn ybe_policies_agree() {
    let a = verify_ybe(RKind::Col, 2, 4, Exec::Sequential);
    let b = verify_ybe(RKind::Col, 2, 4, Exec::Parallel);
    assert_eq!(a, b);
}

#[test]
fn cell_weights_match_tile_shapes() {
    // every admissible configuration corresponds to a tile that passes the
    // independent shape check, and vice versa
    for k in 0..=4usize {
        let table = WeightTable::standard(k);
        for n in 0..=4u8 {
            for e in 0..=4u8 {
                for w in 0..=4u8 {
                    for s in 0..=4u8 {
                        let classified = table.classify(n, e, w, s);
                        let by_shape = [
                            pipepuzzle::puzzle::TileKind::Empty,
                            pipepuzzle::puzzle::TileKind::Vertical,
                            pipepuzzle::puzzle::TileKind::Horizontal,
                            pipepuzzle::puzzle::TileKind::Cross,
                            pipepuzzle::puzzle::TileKind::ElbowNW,
                            pipepuzzle::puzzle::TileKind::ElbowSE,
                            pipepuzzle::puzzle::TileKind::Bump,
                        ]
                        .into_iter()
                        .find(|&kind| {
                            Tile {
                                kind,
                                north: n,
                                east: e,
                                south: s,
                                west: w,
                            }
                            .check(k, Mode::Grothendieck)
                            .is_ok()
                        });
                        assert_eq!(classified.map(|c| c.0), by_shape, "({n},{e},{w},{s}) k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn cell_weight_known_rows() {
    let t = WeightTable::standard(2);
    let x = cell_param(1, 1);
    assert_eq!(t.cell_weight((0, 0, 0, 0), &x).unwrap(), x);
    assert!(t.cell_weight((4, 0, 0, 4), &x).unwrap().is_one());
    let want = &LocElem::beta() * &LocElem::one_plus_beta(&x);
    assert_eq!(t.cell_weight((2, 3, 2, 3), &x).unwrap(), want);
}

#[test]
fn partition_function_examples() {
    let b = BoundarySpec::new(&p("42135"), &p("14532"), &p("53412"), 2).unwrap();
    let nine = parse_elem(
        "(t4 ⊖ y1)(1+b(t1 ⊖ y1))(1+b(t4 ⊖ y3))
         + (t5 ⊖ y3)(1+b(t1 ⊖ y1))(1+b(t4 ⊖ y1))
         + (t3 ⊖ y2)(1+b(t1 ⊖ y1))(1+b(t4 ⊖ y1))(1+b(t5 ⊖ y3))
         + (t1 ⊖ y1)(1+b(t4 ⊖ y1))(1+b(t1 ⊖ y2))(1+b(t5 ⊖ y3))
         + b(t4 ⊖ y1)(t3 ⊖ y2)(1+b(t1 ⊖ y1))(1+b(t4 ⊖ y3))
         + b(t1 ⊖ y1)(t4 ⊖ y1)(1+b(t1 ⊖ y2))(1+b(t4 ⊖ y3))
         + b(t1 ⊖ y1)(t1 ⊖ y2)(1+b(t4 ⊖ y1))(1+b(t1 ⊖ y3))
         + b(t1 ⊖ y1)(t3 ⊖ y3)(1+b(t4 ⊖ y1))(1+b(t1 ⊖ y2))
         + b(t3 ⊖ y2)(t3 ⊖ y3)(1+b(t1 ⊖ y1))(1+b(t4 ⊖ y1))",
    )
    .unwrap();
    assert_eq!(partition_function(&b), nine);
    for n in 2..=5 {
        for k in 1..=n {
            let u0 = Permutation::longest_separated(n, k);
            let id = Permutation::identity(n);
            let z = partition_function(&BoundarySpec::new(&u0, &id, &id, k).unwrap());
            assert_eq!(z, base_product(n, k));
            let v = Permutation::simple(n - 1, n);
            if separated_descents(&u0, &v, k) {
                assert!(partition_function(&BoundarySpec::new(&u0, &v, &id, k).unwrap()).is_zero());
            }
        }
    }
}

#[test]
fn frozen_board_has_one_puzzle() {
    for n in 1..=5 {
        for k in 0..=n {
            let u0 = Permutation::longest_separated(n, k);
            let id = Permutation::identity(n);
            let b = BoundarySpec::new(&u0, &id, &id, k).unwrap();
            let puzzles = Enumerator::new(Mode::Grothendieck).enumerate(&b);
            assert_eq!(puzzles.len(), 1, "n={n} k={k}");
            assert_eq!(puzzles[0].weight(Mode::Grothendieck), base_product(n, k));
            assert!(bijection_check(&b).ok());
        }
    }
}

#[test]
fn one_by_one_boards() {
    let id = p("1");
    for k in 0..=1 {
        let b = BoundarySpec::new(&id, &id, &id, k).unwrap();
        assert!(bijection_check(&b).ok());
    }
}

fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> (Permutation, Permutation, Permutation, usize) {
    let all = Permutation::all(n);
    loop {
        let k = rng.gen_range(1..=n);
        let u = all.choose(rng).unwrap().clone();
        let v = all.choose(rng).unwrap().clone();
        if separated_descents(&u, &v, k) {
            return (u, v, all.choose(rng).unwrap().clone(), k);
        }
    }
}

#[test]
fn partition_function_recurrences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut y, mut with, mut without) = (0, 0, 0);
    while y < 20 || with < 20 || without < 20 {
        let (u, v, w, k) = random_instance(&mut rng, 4);
        let i = rng.gen_range(1..4);
        if let Some(ok) = check_y_recurrence(&u, &v, &w, k, i) {
            assert!(ok, "y recurrence at {u} {v} {w} k={k} i={i}");
            y += 1;
        }
        if let Some((branch, ok)) = check_t_recurrence(&u, &v, &w, k, i) {
            assert!(ok, "{branch:?} at {u} {v} {w} k={k} i={i}");
            match branch {
                Recurrence::TWithDescent => with += 1,
                _ => without += 1,
            }
        }
    }
}
