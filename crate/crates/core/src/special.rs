//! Specializations: `y = t` (triangular puzzles), bumpless pipe dreams, and
//! the positivity check at `y = 0`, `t = x`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::engine::{self, Engine, EngineError};
use crate::exec::Exec;
use crate::perm::Permutation;
use crate::puzzle::{BoundarySpec, Enumerator, Mode, PipePuzzle, PuzzleError, Tile, TileKind};
use crate::ring::{Family, LocElem, Substitution, Var, MAX_INDEX};

/// Result of setting `y = t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YEqualsT {
    /// `c_{u,v}^w(t, t)`.
    pub value: LocElem,
    /// Number of puzzles before specializing.
    pub total: usize,
    /// Puzzles without an empty tile on the diagonal.
    pub survivors: Vec<PipePuzzle>,
    /// Whether each puzzle's specialized weight vanishes exactly when it has
    /// a diagonal empty tile.
    pub zero_iff_diagonal_empty: bool,
}

pub fn has_diagonal_empty(p: &PipePuzzle) -> bool {
    (1..=p.n()).any(|i| p.tile(i, i).kind == TileKind::Empty)
}

/// Diagonal tiles are `ElbowSE` or `Vertical`, everything strictly below the
/// diagonal is `Vertical`.
pub fn survivor_shape_ok(p: &PipePuzzle) -> bool {
    let n = p.n();
    (1..=n).all(|i| {
        matches!(p.tile(i, i).kind, TileKind::ElbowSE | TileKind::Vertical)
            && (1..i).all(|j| p.tile(i, j).kind == TileKind::Vertical)
    })
}

pub fn y_equals_t(u: &Permutation, v: &Permutation, w: &Permutation, k: usize) -> Result<YEqualsT, PuzzleError> {
    let b = BoundarySpec::new(u, v, w, k)?;
    let puzzles = Enumerator::new(Mode::Grothendieck).enumerate(&b);
    let mut value = LocElem::zero();
    let mut claim = true;
    let mut survivors = Vec::new();
    for p in &puzzles {
        let wt = p.weight(Mode::Grothendieck).rename_family(Family::Y, Family::T);
        claim &= wt.is_zero() == has_diagonal_empty(p);
        value = &value + &wt;
        if !has_diagonal_empty(p) {
            survivors.push(p.clone());
        }
    }
    Ok(YEqualsT {
        value,
        total: puzzles.len(),
        survivors,
        zero_iff_diagonal_empty: claim,
    })
}

/// The upper-right triangle of a puzzle: row `i` holds the tiles `(i, j)` for
/// `j ≥ i`.
pub fn triangle_cut(p: &PipePuzzle) -> Result<Vec<Vec<Tile>>, PuzzleError> {
    if let Some(i) = (1..=p.n()).find(|&i| p.tile(i, i).kind == TileKind::Empty) {
        return Err(PuzzleError::DiagonalEmpty(i));
    }
    Ok(p.grid.iter().enumerate().map(|(i, row)| row[i..].to_vec()).collect())
}

/// Rebuild the puzzle from its triangle by filling every cell below the
/// diagonal with the vertical tile carrying the diagonal's southern label.
pub fn reconstruct(boundary: &BoundarySpec, triangle: &[Vec<Tile>]) -> Result<PipePuzzle, PuzzleError> {
    let n = boundary.n;
    if triangle.len() != n || triangle.iter().enumerate().any(|(i, r)| r.len() != n - i) {
        return Err(PuzzleError::Invalid("triangle has the wrong shape".into()));
    }
    let mut grid = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..i {
            let l = triangle[j][0].south;
            row.push(Tile {
                kind: TileKind::Vertical,
                north: l,
                east: 0,
                south: l,
                west: 0,
            });
        }
        row.extend_from_slice(&triangle[i]);
        grid.push(row);
    }
    Ok(PipePuzzle {
        boundary: boundary.clone(),
        grid,
    })
}

/// A bumpless pipe dream: pipes enter along the bottom and leave through the
/// right side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BumplessPipeDream {
    pub u: Permutation,
    /// Rows top to bottom, each left to right.
    pub grid: Vec<Vec<Tile>>,
    pub weight: LocElem,
}

fn reflect(t: &Tile) -> Tile {
    let kind = match t.kind {
        TileKind::Vertical => TileKind::Horizontal,
        TileKind::Horizontal => TileKind::Vertical,
        other => other,
    };
    Tile {
        kind,
        north: t.west,
        east: t.south,
        south: t.east,
        west: t.north,
    }
}

/// Weight of a diagram from its tiles, with `t_i ⊖ y_j` at row `i`, column `j`.
pub fn bumpless_weight(grid: &[Vec<Tile>]) -> LocElem {
    let mut out = LocElem::one();
    for (i, row) in grid.iter().enumerate() {
        for (j, t) in row.iter().enumerate() {
            let x = LocElem::ominus_vars(Var::t(i + 1), Var::y(j + 1));
            let f = match t.kind {
                TileKind::Empty => x,
                TileKind::ElbowNW => LocElem::one_plus_beta(&x),
                TileKind::Bump => LocElem::beta(),
                _ => continue,
            };
            out = &out * &f;
        }
    }
    out
}

/// Reflect every puzzle of `(u, id, id)` at `k = n` across the diagonal and
/// relabel each pipe `ℓ ↦ u(ℓ)`.
pub fn bumpless_pipe_dreams(u: &Permutation) -> Result<Vec<BumplessPipeDream>, PuzzleError> {
    let n = u.n();
    let id = Permutation::identity(n);
    let b = BoundarySpec::new(u, &id, &id, n)?;
    let puzzles = Enumerator::new(Mode::Grothendieck).enumerate(&b);
    let relabel = |l: u8| if l == 0 { 0 } else { u.at(l as usize) as u8 };
    Ok(puzzles
        .iter()
        .map(|p| {
            let grid: Vec<Vec<Tile>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut t = reflect(&p.grid[j][i]);
                            t.north = relabel(t.north);
                            t.east = relabel(t.east);
                            t.south = relabel(t.south);
                            t.west = relabel(t.west);
                            t
                        })
                        .collect()
                })
                .collect();
            let weight = bumpless_weight(&grid);
            BumplessPipeDream {
                u: u.clone(),
                grid,
                weight,
            }
        })
        .collect())
}

impl BumplessPipeDream {
    pub fn n(&self) -> usize {
        self.grid.len()
    }

    /// Crossing positions (1-based) keyed by the unordered label pair.
    pub fn crossings(&self) -> HashMap<(u8, u8), Vec<(usize, usize)>> {
        let mut out: HashMap<(u8, u8), Vec<(usize, usize)>> = HashMap::new();
        for (i, row) in self.grid.iter().enumerate() {
            for (j, t) in row.iter().enumerate() {
                if t.kind == TileKind::Cross {
                    let pair = (t.north.min(t.east), t.north.max(t.east));
                    out.entry(pair).or_default().push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Two pipes cross at most once, and every bump is followed by a crossing
    /// of the same two pipes strictly to its northeast.
    pub fn check(&self) -> Result<(), String> {
        let crossings = self.crossings();
        for (pair, cells) in &crossings {
            if cells.len() > 1 {
                return Err(format!("pipes {pair:?} cross {} times", cells.len()));
            }
        }
        for (i, row) in self.grid.iter().enumerate() {
            for (j, t) in row.iter().enumerate() {
                if t.kind != TileKind::Bump {
                    continue;
                }
                let pair = (t.north.min(t.east), t.north.max(t.east));
                let ok = crossings
                    .get(&pair)
                    .is_some_and(|c| c.iter().any(|&(a, b)| a < i + 1 && b > j + 1));
                if !ok {
                    return Err(format!("bump of pipes {pair:?} at ({},{}) never crosses to the northeast", i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    /// Text drawing with the entry labels below and exit labels on the right.
    pub fn render_ascii(&self) -> String {
        let mut s = String::new();
        for row in &self.grid {
            let mut line = String::new();
            for t in row {
                line.push_str(match t.kind {
                    TileKind::Empty => " .  ",
                    TileKind::Vertical => " |  ",
                    TileKind::Horizontal => "----",
                    TileKind::Cross => "-+--",
                    TileKind::ElbowNW => "-'  ",
                    TileKind::ElbowSE => " ,--",
                    TileKind::Bump => "-',-",
                });
            }
            if let Some(t) = row.last() {
                if t.east > 0 {
                    let _ = write!(line, "{}", t.east);
                }
            }
            s.push_str(line.trim_end());
            s.push('\n');
        }
        if let Some(last) = self.grid.last() {
            let line: String = last
                .iter()
                .map(|t| if t.south == 0 { "    ".to_string() } else { format!("{:>2}  ", t.south) })
                .collect();
            s.push_str(line.trim_end());
            s.push('\n');
        }
        s
    }
}

/// One coefficient of the positivity report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KirillovEntry {
    pub w: Permutation,
    /// Schubert structure constant at `y = 0`, in `t`.
    pub at_y_zero: LocElem,
    /// The same after `t ↦ x`.
    pub in_x: LocElem,
    pub nonnegative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KirillovReport {
    pub u: Permutation,
    pub v: Permutation,
    pub k: usize,
    pub entries: Vec<KirillovEntry>,
}

impl KirillovReport {
    pub fn violations(&self) -> impl Iterator<Item = &KirillovEntry> {
        self.entries.iter().filter(|e| !e.nonnegative)
    }

    pub fn ok(&self) -> bool {
        self.violations().next().is_none()
    }
}

fn y_to_zero_t_to_x(c: &LocElem) -> LocElem {
    let mut s = Substitution::new();
    for i in 1..=MAX_INDEX {
        s = s.zero(Var::y(i)).rename(Var::t(i), Var::x(i));
    }
    c.substitute(&s).expect("substituting zero and renaming never fails")
}

/// `c̄_{u,v}^w(x, 0)` for each `w` in `ws`, or over the certified expansion
/// support when `ws` is `None`.
pub fn kirillov_report(
    u: &Permutation,
    v: &Permutation,
    k: usize,
    ws: Option<&[Permutation]>,
    exec: Exec,
) -> Result<KirillovReport, EngineError> {
    let support: Vec<(Permutation, Permutation, Permutation)> = match ws {
        Some(ws) => ws
            .iter()
            .map(|w| {
                let m = w.n().max(u.n());
                (u.embed(m), v.embed(m), w.embed(m))
            })
            .collect(),
        None => {
            let e = engine::expand_all(u, v, k, u.n() + 3, exec)?;
            e.terms
                .iter()
                .map(|(w, _)| (u.embed(e.n), v.embed(e.n), w.clone()))
                .collect()
        }
    };
    let engine = Engine::new();
    let mut entries = Vec::new();
    for (ue, ve, w) in support {
        let c = engine.c(&ue, &ve, &w, k, Mode::Schubert)?;
        let at_y_zero = c.zero_family(Family::Y);
        let in_x = y_to_zero_t_to_x(&c);
        if at_y_zero.is_zero() {
            continue;
        }
        let nonnegative = in_x.is_nonnegative_polynomial();
        entries.push(KirillovEntry {
            w,
            at_y_zero,
            in_x,
            nonnegative,
        });
    }
    Ok(KirillovReport {
        u: u.clone(),
        v: v.clone(),
        k,
        entries,
    })
}
