//! The three routes to a structure constant (puzzles, lattice partition
//! function, recurrences) must agree, and the expansion must certify.

use pipepuzzle::engine::{self, expected_degree, is_homogeneous_of, Engine, TieBreak};
use pipepuzzle::exec::Exec;
use pipepuzzle::lattice::{bijection_check, partition_function};
use pipepuzzle::perm::{separated_descents, Permutation};
use pipepuzzle::puzzle::{structure_constant, BoundarySpec, Mode};
use pipepuzzle::ring::parse_elem;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn separated_triples(n: usize) -> Vec<(Permutation, Permutation, usize)> {
    let all = Permutation::all(n);
    let mut out = Vec::new();
    for k in 0..=n {
        for u in &all {
            for v in &all {
                if separated_descents(u, v, k) {
                    out.push((u.clone(), v.clone(), k));
                }
            }
        }
    }
    out
}

fn agree(u: &Permutation, v: &Permutation, w: &Permutation, k: usize) {
    let puzzle = structure_constant(u, v, w, k, Mode::Grothendieck).unwrap();
    let lattice = partition_function(&BoundarySpec::new(u, v, w, k).unwrap());
    let rec = engine::recurrence_c(u, v, w, k).unwrap();
    assert_eq!(puzzle, rec, "puzzle vs recurrence at {u} {v} {w} k={k}");
    assert_eq!(lattice, rec, "lattice vs recurrence at {u} {v} {w} k={k}");
    assert!(is_homogeneous_of(&rec, expected_degree(u, v, w)), "degree at {u} {v} {w}");
}

#[test]
fn example_value() {
    let (u, v, w) = (p("42135"), p("14532"), p("53412"));
    let rec = engine::recurrence_c(&u, &v, &w, 2).unwrap();
    let puzzle = structure_constant(&u, &v, &w, 2, Mode::Grothendieck).unwrap();
    assert_eq!(rec, puzzle);
    let schubert = Engine::new().c(&u, &v, &w, 2, Mode::Schubert).unwrap();
    assert_eq!(schubert, parse_elem("(t4-y1)+(t5-y3)+(t3-y2)+(t1-y1)").unwrap());
}

#[test]
fn exhaustive_s3() {
    for (u, v, k) in separated_triples(3) {
        for w in Permutation::all(3) {
            agree(&u, &v, &w, k);
        }
    }
}

#[test]
fn random_s4() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let triples = separated_triples(4);
    let all = Permutation::all(4);
    for _ in 0..60 {
        let (u, v, k) = triples.choose(&mut rng).unwrap();
        let w = all.choose(&mut rng).unwrap();
        agree(u, v, w, *k);
    }
}

#[test]
fn bijection_small() {
    for (u, v, k) in separated_triples(3) {
        for w in Permutation::all(3) {
            let b = BoundarySpec::new(&u, &v, &w, k).unwrap();
            assert!(bijection_check(&b).ok(), "{u} {v} {w} k={k}");
        }
    }
    let b = BoundarySpec::new(&p("42135"), &p("14532"), &p("53412"), 2).unwrap();
    let r = bijection_check(&b);
    assert!(r.ok());
    assert_eq!(r.puzzles, 9);
}

#[test]
fn expansions_certify_s3() {
    for (u, v, k) in separated_triples(3) {
        let e = engine::expand_all(&u, &v, k, 6, Exec::default()).unwrap();
        for (w, c) in &e.terms {
            assert!(is_homogeneous_of(c, expected_degree(&u.embed(e.n), &v.embed(e.n), w)));
        }
    }
}

#[test]
fn tie_break_independence_s3() {
    let a = Engine::with_tie_break(TieBreak::Smallest);
    let b = Engine::with_tie_break(TieBreak::Largest);
    for (u, v, k) in separated_triples(3) {
        for w in Permutation::all(3) {
            assert_eq!(
                a.c(&u, &v, &w, k, Mode::Grothendieck).unwrap(),
                b.c(&u, &v, &w, k, Mode::Grothendieck).unwrap()
            );
        }
    }
}

#[test]
fn identity_coefficients() {
    for (u, v, k) in separated_triples(4) {
        assert!(engine::identity_coefficient_check(&u, &v, k).unwrap(), "{u} {v} k={k}");
    }
}
