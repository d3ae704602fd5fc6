use pipepuzzle::demazure::{grothendieck, schubert};
use pipepuzzle::exec::Exec;
use pipepuzzle::perm::{separated_descents, Permutation};
use pipepuzzle::puzzle::{BoundarySpec, Enumerator, Mode, TileKind};
use pipepuzzle::ring::{parse_elem, Family, LocElem};
use pipepuzzle::special::{
    bumpless_pipe_dreams, has_diagonal_empty, kirillov_report, reconstruct, survivor_shape_ok, triangle_cut,
    y_equals_t,
};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn kinds(rows: &[&str]) -> Vec<Vec<TileKind>> {
    rows.iter()
        .map(|r| {
            r.chars()
                .map(|c| match c {
                    'O' => TileKind::Empty,
                    'I' => TileKind::Vertical,
                    'H' => TileKind::Horizontal,
                    'X' => TileKind::Cross,
                    'J' => TileKind::ElbowNW,
                    'F' => TileKind::ElbowSE,
                    'B' => TileKind::Bump,
                    _ => panic!("bad tile {c}"),
                })
                .collect()
        })
        .collect()
}

#[test]
fn four_survivors_of_the_running_example() {
    let r = y_equals_t(&p("42135"), &p("14532"), &p("53412"), 2).unwrap();
    assert_eq!(r.total, 9);
    assert!(r.zero_iff_diagonal_empty);
    let mut got: Vec<Vec<Vec<TileKind>>> = r
        .survivors
        .iter()
        .map(|s| s.grid.iter().map(|row| row.iter().map(|t| t.kind).collect()).collect())
        .collect();
    let mut expect = vec![
        kinds(&["FXJOI", "IIFHX", "IIIFJ", "IIIIF", "IIIII"]),
        kinds(&["FXJFJ", "IIFXH", "IIIIO", "IIIIF", "IIIII"]),
        kinds(&["FXJFJ", "IIOIF", "IIFXJ", "IIIIF", "IIIII"]),
        kinds(&["FXJOI", "IIOFX", "IIFBJ", "IIIIF", "IIIII"]),
    ];
    got.sort();
    expect.sort();
    assert_eq!(got, expect);
    for s in &r.survivors {
        assert!(survivor_shape_ok(s));
        let tri = triangle_cut(s).unwrap();
        assert_eq!(tri[0].len(), 5);
        assert_eq!(&reconstruct(&s.boundary, &tri).unwrap(), s);
    }
}

#[test]
fn survivors_structure_s3() {
    let all = Permutation::all(3);
    for k in 0..=3 {
        for u in &all {
            for v in &all {
                if !separated_descents(u, v, k) {
                    continue;
                }
                for w in &all {
                    let r = y_equals_t(u, v, w, k).unwrap();
                    assert!(r.zero_iff_diagonal_empty);
                    for s in &r.survivors {
                        assert!(survivor_shape_ok(s), "{u} {v} {w} k={k}");
                        let tri = triangle_cut(s).unwrap();
                        assert_eq!(&reconstruct(&s.boundary, &tri).unwrap(), s);
                    }
                }
            }
        }
    }
}

#[test]
fn triangle_cut_rejects_diagonal_empty() {
    let b = BoundarySpec::new(&p("42135"), &p("14532"), &p("53412"), 2).unwrap();
    let puzzles = Enumerator::new(Mode::Grothendieck).enumerate(&b);
    let bad = puzzles.iter().find(|q| has_diagonal_empty(q)).unwrap();
    assert!(triangle_cut(bad).is_err());
}

#[test]
fn longest_separated_has_no_survivor() {
    // the unique puzzle has an empty tile at (1,1), matching G_{u0}(t,t) = 0
    for n in 2..=5 {
        for k in 1..=n {
            let u0 = Permutation::longest_separated(n, k);
            let id = Permutation::identity(n);
            let r = y_equals_t(&u0, &id, &id, k).unwrap();
            assert_eq!(r.total, 1);
            assert!(r.survivors.is_empty());
            assert!(r.value.is_zero());
        }
    }
}

#[test]
fn bumpless_example() {
    let d = bumpless_pipe_dreams(&p("32514")).unwrap();
    assert_eq!(d.len(), 4);
    let total = d.iter().fold(LocElem::zero(), |acc, x| &acc + &x.weight);
    assert_eq!(total, grothendieck(&p("32514"), Family::T, Family::Y).unwrap());
    for x in &d {
        x.check().unwrap();
    }
}

#[test]
fn bumpless_s4() {
    for u in Permutation::all(4) {
        let d = bumpless_pipe_dreams(&u).unwrap();
        let total = d.iter().fold(LocElem::zero(), |acc, x| &acc + &x.weight);
        assert_eq!(total, grothendieck(&u, Family::T, Family::Y).unwrap(), "{u}");
        let reduced = d
            .iter()
            .filter(|x| x.grid.iter().flatten().all(|t| t.kind != TileKind::Bump))
            .fold(LocElem::zero(), |acc, x| &acc + &x.weight.beta_zero());
        assert_eq!(reduced, schubert(&u, Family::T, Family::Y).unwrap(), "{u}");
        for x in &d {
            x.check().unwrap();
        }
    }
}

#[test]
fn kirillov_running_example() {
    let r = kirillov_report(&p("42135"), &p("14532"), 2, Some(&[p("53412")]), Exec::Sequential).unwrap();
    assert_eq!(r.entries.len(), 1);
    assert_eq!(r.entries[0].at_y_zero, parse_elem("t4+t5+t3+t1").unwrap());
    assert_eq!(r.entries[0].in_x, parse_elem("x4+x5+x3+x1").unwrap());
    assert!(r.ok());
}

#[test]
fn kirillov_identity() {
    let id = p("123");
    let r = kirillov_report(&id, &id, 2, Some(&[id.clone()]), Exec::Sequential).unwrap();
    assert!(r.entries[0].in_x.is_one());
    assert!(r.ok());
}
