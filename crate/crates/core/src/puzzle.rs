//! Labeled boards, pipe puzzles, their enumeration and weights.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Exec;
use crate::lattice::WeightTable;
use crate::perm::{separated_descents, MinDes, Permutation};
use crate::ring::{LocElem, MPoly, Var, MAX_INDEX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PuzzleError {
    #[error("permutations live in different symmetric groups ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("descents not separated at k={k}: maxdes(u)={maxdes}, mindes(v)={mindes}")]
    NotSeparated { k: usize, maxdes: usize, mindes: MinDes },
    #[error("board size {0} exceeds the supported maximum {MAX_INDEX}")]
    TooLarge(usize),
    #[error("invalid boundary: {0}")]
    BadBoundary(String),
    #[error("invalid puzzle: {0}")]
    Invalid(String),
    #[error("puzzle has an empty tile on the diagonal at ({0},{0})")]
    DiagonalEmpty(usize),
}

/// Which tile set (and weights) to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// No bump tiles, weight `∏_{empty}(t_j − y_i)`.
    Schubert,
    /// All seven tiles with the K-theoretic weights.
    Grothendieck,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "schubert" => Ok(Mode::Schubert),
            "grothendieck" => Ok(Mode::Grothendieck),
            _ => Err(format!("unknown mode '{s}' (expected schubert or grothendieck)")),
        }
    }
}

/// Tile kinds, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TileKind {
    Empty,
    Vertical,
    Horizontal,
    Cross,
    /// `┘`: joins north and west.
    ElbowNW,
    /// `┌`: joins east and south.
    ElbowSE,
    /// `┘` and `┌` together, the two pipes touching without crossing.
    Bump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub kind: TileKind,
    #[serde(rename = "n")]
    pub north: u8,
    #[serde(rename = "e")]
    pub east: u8,
    #[serde(rename = "s")]
    pub south: u8,
    #[serde(rename = "w")]
    pub west: u8,
}

impl Tile {
    /// Checks the tile's shape invariants directly from its kind (independently
    /// of the weight table).
    pub fn check(&self, k: usize, mode: Mode) -> Result<(), String> {
        let (n, e, s, w) = (self.north, self.east, self.south, self.west);
        let k = k as u8;
        let ok = match self.kind {
            TileKind::Empty => n == 0 && e == 0 && s == 0 && w == 0,
            TileKind::Vertical => n > 0 && n == s && e == 0 && w == 0,
            TileKind::Horizontal => e > 0 && e == w && n == 0 && s == 0,
            TileKind::Cross => n == s && e == w && 0 < e && e < n,
            TileKind::ElbowNW => n > 0 && n == w && e == 0 && s == 0,
            TileKind::ElbowSE => e > 0 && e == s && n == 0 && w == 0,
            TileKind::Bump => {
                mode == Mode::Grothendieck
                    && n == w
                    && e == s
                    && ((0 < e && e < n && n <= k) || (k < e && e < n) || (0 < n && n <= k && k < e))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(format!("tile {self:?} violates its shape (k={k}, mode={mode:?})"))
        }
    }
}

/// The labeled `n × n` board.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub n: usize,
    pub k: usize,
    /// Right side, top to bottom.
    pub kappa: Vec<u8>,
    /// Top side, left to right.
    pub theta: Vec<u8>,
    /// Bottom side, left to right.
    pub eta: Vec<u8>,
}

impl BoundarySpec {
    /// Board for `(u, v, w)` at position `k`.
    pub fn new(u: &Permutation, v: &Permutation, w: &Permutation, k: usize) -> Result<BoundarySpec, PuzzleError> {
        let n = u.n();
        if v.n() != n {
            return Err(PuzzleError::SizeMismatch(n, v.n()));
        }
        if w.n() != n {
            return Err(PuzzleError::SizeMismatch(n, w.n()));
        }
        if n > MAX_INDEX {
            return Err(PuzzleError::TooLarge(n));
        }
        if k > n || !separated_descents(u, v, k) {
            return Err(PuzzleError::NotSeparated {
                k,
                maxdes: u.maxdes(),
                mindes: v.mindes(),
            });
        }
        let (ui, vi, wi) = (u.inverse(), v.inverse(), w.inverse());
        let kappa = (1..=n)
            .map(|i| if ui.at(i) <= k { ui.at(i) as u8 } else { 0 })
            .collect();
        let theta = (1..=n)
            .map(|i| if vi.at(i) > k { vi.at(i) as u8 } else { 0 })
            .collect();
        let eta = (1..=n).map(|i| wi.at(i) as u8).collect();
        Ok(BoundarySpec { n, k, kappa, theta, eta })
    }

    /// Validates the labeling invariants.
    pub fn validate(&self) -> Result<(), PuzzleError> {
        let bad = |m: &str| Err(PuzzleError::BadBoundary(m.to_string()));
        let n = self.n;
        if n == 0 || n > MAX_INDEX || self.k > n {
            return bad("size or k out of range");
        }
        if self.kappa.len() != n || self.theta.len() != n || self.eta.len() != n {
            return bad("side lengths differ from n");
        }
        let mut kap: Vec<u8> = self.kappa.iter().copied().filter(|&l| l > 0).collect();
        kap.sort_unstable();
        if kap != (1..=self.k as u8).collect::<Vec<_>>() {
            return bad("right side must carry 1..k once each");
        }
        let mut th: Vec<u8> = self.theta.iter().copied().filter(|&l| l > 0).collect();
        th.sort_unstable();
        if th != (self.k as u8 + 1..=n as u8).collect::<Vec<_>>() {
            return bad("top side must carry k+1..n once each");
        }
        let mut et = self.eta.clone();
        et.sort_unstable();
        if et != (1..=n as u8).collect::<Vec<_>>() {
            return bad("bottom side must be a permutation");
        }
        Ok(())
    }

    /// Recover `(u, v, w)`, with `u` and `v` the unique separated-descent
    /// permutations consistent with the labels.
    pub fn permutations(&self) -> (Permutation, Permutation, Permutation) {
        let n = self.n;
        // u^{-1}(i) = kappa_i for labeled rows; the rest are increasing.
        let mut uinv = vec![0usize; n];
        let mut free = (self.k + 1..=n).collect::<Vec<_>>().into_iter();
        for i in 0..n {
            uinv[i] = if self.kappa[i] > 0 {
                self.kappa[i] as usize
            } else {
                free.next().expect("consistent boundary")
            };
        }
        let mut vinv = vec![0usize; n];
        let mut free = (1..=self.k).collect::<Vec<_>>().into_iter();
        for i in 0..n {
            vinv[i] = if self.theta[i] > 0 {
                self.theta[i] as usize
            } else {
                free.next().expect("consistent boundary")
            };
        }
        let winv: Vec<usize> = self.eta.iter().map(|&l| l as usize).collect();
        let p = |w: Vec<usize>| Permutation::from_word(w).expect("consistent boundary").inverse();
        (p(uinv), p(vinv), p(winv))
    }

    /// Bottom column (0-based) where label `l` must exit.
    fn targets(&self) -> Vec<usize> {
        let mut t = vec![usize::MAX; self.n + 1];
        for (c, &l) in self.eta.iter().enumerate() {
            t[l as usize] = c;
        }
        t
    }
}

/// An admissible tiling of a board.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PipePuzzle {
    pub boundary: BoundarySpec,
    /// Rows top to bottom, each left to right.
    pub grid: Vec<Vec<Tile>>,
}

/// The cells a labeled pipe passes through, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipePath {
    pub label: u8,
    /// 1-based `(row, column)` positions.
    pub cells: Vec<(usize, usize)>,
}

impl PipePuzzle {
    pub fn n(&self) -> usize {
        self.boundary.n
    }

    /// Tile at 1-based `(i, j)`.
    pub fn tile(&self, i: usize, j: usize) -> &Tile {
        &self.grid[i - 1][j - 1]
    }

    /// Canonical sort key: row-major `(kind, north, east)`.
    pub fn sort_key(&self) -> Vec<(TileKind, u8, u8)> {
        self.grid
            .iter()
            .flatten()
            .map(|t| (t.kind, t.north, t.east))
            .collect()
    }

    pub fn has_bump(&self) -> bool {
        self.grid.iter().flatten().any(|t| t.kind == TileKind::Bump)
    }

    /// Re-validates every invariant, independently of the search.
    pub fn validate(&self, mode: Mode) -> Result<(), PuzzleError> {
        let b = &self.boundary;
        b.validate()?;
        let n = b.n;
        let inv = |m: String| Err(PuzzleError::Invalid(m));
        if self.grid.len() != n || self.grid.iter().any(|r| r.len() != n) {
            return inv("grid shape".into());
        }
        for i in 0..n {
            for j in 0..n {
                let t = &self.grid[i][j];
                if let Err(m) = t.check(b.k, mode) {
                    return inv(format!("({},{}): {m}", i + 1, j + 1));
                }
                let north = if i == 0 { b.theta[j] } else { self.grid[i - 1][j].south };
                let east = if j == n - 1 { b.kappa[i] } else { self.grid[i][j + 1].west };
                if t.north != north || t.east != east {
                    return inv(format!("({},{}): edges disagree with neighbours", i + 1, j + 1));
                }
                if j == 0 && t.west != 0 {
                    return inv(format!("row {} leaves through the left side", i + 1));
                }
                if i == n - 1 && t.south != b.eta[j] {
                    return inv(format!("column {} exits with the wrong label", j + 1));
                }
            }
        }
        Ok(())
    }

    /// Follow every pipe from where it enters to where it exits.
    pub fn trace_pipes(&self) -> Result<Vec<PipePath>, PuzzleError> {
        let b = &self.boundary;
        let n = b.n;
        let mut out = Vec::with_capacity(n);
        for label in 1..=n as u8 {
            // (row, col, entering_from_north)
            let (mut i, mut j, mut from_north) = if (label as usize) <= b.k {
                let r = b.kappa.iter().position(|&l| l == label).ok_or_else(|| {
                    PuzzleError::Invalid(format!("label {label} missing on the right side"))
                })?;
                (r, n - 1, false)
            } else {
                let c = b.theta.iter().position(|&l| l == label).ok_or_else(|| {
                    PuzzleError::Invalid(format!("label {label} missing on the top side"))
                })?;
                (0, c, true)
            };
            let mut cells = Vec::new();
            loop {
                let t = &self.grid[i][j];
                cells.push((i + 1, j + 1));
                let goes_down = if from_north {
                    if t.north != label {
                        return Err(PuzzleError::Invalid(format!("pipe {label} broken at ({},{})", i + 1, j + 1)));
                    }
                    matches!(t.kind, TileKind::Vertical | TileKind::Cross)
                } else {
                    if t.east != label {
                        return Err(PuzzleError::Invalid(format!("pipe {label} broken at ({},{})", i + 1, j + 1)));
                    }
                    matches!(t.kind, TileKind::ElbowSE | TileKind::Bump)
                };
                if goes_down {
                    if i == n - 1 {
                        if b.eta[j] != label {
                            return Err(PuzzleError::Invalid(format!("pipe {label} exits in column {}", j + 1)));
                        }
                        break;
                    }
                    i += 1;
                    from_north = true;
                } else {
                    if j == 0 {
                        return Err(PuzzleError::Invalid(format!("pipe {label} leaves through the left side")));
                    }
                    j -= 1;
                    from_north = false;
                }
            }
            out.push(PipePath { label, cells });
        }
        Ok(out)
    }

    /// Weight of the puzzle. Grothendieck mode reads each cell's weight from
    /// the weight table with parameter `t_j ⊖ y_i`.
    pub fn weight(&self, mode: Mode) -> LocElem {
        let n = self.n();
        match mode {
            Mode::Schubert => {
                let mut out = MPoly::one();
                for i in 1..=n {
                    for j in 1..=n {
                        if self.tile(i, j).kind == TileKind::Empty {
                            out = &out * &(&MPoly::var(Var::t(j)) - &MPoly::var(Var::y(i)));
                        }
                    }
                }
                LocElem::from_poly(out)
            }
            Mode::Grothendieck => {
                let table = WeightTable::standard(self.boundary.k);
                let mut out = LocElem::one();
                for i in 1..=n {
                    for j in 1..=n {
                        let t = self.tile(i, j);
                        let (_, expr) = table
                            .classify(t.north, t.east, t.west, t.south)
                            .expect("admissible tile");
                        let param = LocElem::ominus_vars(Var::t(j), Var::y(i));
                        out = &out * &expr.eval(&param);
                    }
                }
                out
            }
        }
    }

    /// Grothendieck weight from the per-tile rules phrased in terms of where
    /// each pipe comes from (right side: label `≤ k`; top side: `> k`).
    pub fn narrative_weight(&self) -> LocElem {
        let n = self.n();
        let k = self.boundary.k as u8;
        let from_right = |l: u8| l <= k;
        let mut out = LocElem::one();
        for i in 1..=n {
            for j in 1..=n {
                let t = self.tile(i, j);
                let x = LocElem::ominus_vars(Var::t(j), Var::y(i));
                let f = match t.kind {
                    TileKind::Empty => x,
                    TileKind::ElbowNW if from_right(t.north) => LocElem::one_plus_beta(&x),
                    TileKind::ElbowSE if !from_right(t.east) => LocElem::one_plus_beta(&x),
                    TileKind::Bump if from_right(t.north) == from_right(t.east) => LocElem::beta(),
                    TileKind::Bump => &LocElem::beta() * &LocElem::one_plus_beta(&x),
                    _ => LocElem::one(),
                };
                out = &out * &f;
            }
        }
        out
    }

    /// Compact text drawing: top labels, one line per row with the right label,
    /// bottom labels. The top line is omitted when every top label is 0.
    pub fn render_ascii(&self) -> String {
        let b = &self.boundary;
        let lab = |l: u8| if l == 0 { "    ".to_string() } else { format!("{l:>2}  ") };
        let mut s = String::new();
        if b.theta.iter().any(|&l| l > 0) {
            let line: String = b.theta.iter().map(|&l| lab(l)).collect();
            s.push_str(line.trim_end());
            s.push('\n');
        }
        for (i, row) in self.grid.iter().enumerate() {
            for t in row {
                s.push_str(match t.kind {
                    TileKind::Empty => " .  ",
                    TileKind::Vertical => " |  ",
                    TileKind::Horizontal => "----",
                    TileKind::Cross => "-+--",
                    TileKind::ElbowNW => "-'  ",
                    TileKind::ElbowSE => " ,--",
                    TileKind::Bump => "-',-",
                });
            }
            if b.kappa[i] > 0 {
                let _ = write!(s, "{}", b.kappa[i]);
            }
            let trimmed = s.trim_end_matches(' ').len();
            s.truncate(trimmed);
            s.push('\n');
        }
        let line: String = b.eta.iter().map(|&l| lab(l)).collect();
        s.push_str(line.trim_end());
        s.push('\n');
        s
    }

    /// SVG drawing with 40-unit cells, pipes labeled at their tile edges.
    pub fn render_svg(&self) -> String {
        const C: usize = 40;
        let b = &self.boundary;
        let n = b.n;
        let (ox, oy) = (C / 2, C);
        let (w, h) = (n * C + C + C / 2, n * C + 2 * C);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(s, r#"<g stroke="black" stroke-width="1" fill="none">"#);
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (ox + j * C, oy + i * C);
                let fill = if self.grid[i][j].kind == TileKind::Empty { "#e0f7fa" } else { "none" };
                let _ = writeln!(s, r#"<rect x="{x}" y="{y}" width="{C}" height="{C}" fill="{fill}"/>"#);
            }
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r#"<g stroke="black" stroke-width="3" fill="none">"#);
        let half = C / 2;
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (ox + j * C, oy + i * C);
                let (cx, cy) = (x + half, y + half);
                let vertical = format!(r#"<line x1="{cx}" y1="{y}" x2="{cx}" y2="{}"/>"#, y + C);
                let horizontal = format!(r#"<line x1="{x}" y1="{cy}" x2="{}" y2="{cy}"/>"#, x + C);
                let nw = format!(r#"<path d="M {cx} {y} A {half} {half} 0 0 1 {x} {cy}"/>"#);
                let se = format!(r#"<path d="M {} {cy} A {half} {half} 0 0 0 {cx} {}"/>"#, x + C, y + C);
                let parts: Vec<&String> = match self.grid[i][j].kind {
                    TileKind::Empty => vec![],
                    TileKind::Vertical => vec![&vertical],
                    TileKind::Horizontal => vec![&horizontal],
                    TileKind::Cross => vec![&vertical, &horizontal],
                    TileKind::ElbowNW => vec![&nw],
                    TileKind::ElbowSE => vec![&se],
                    TileKind::Bump => vec![&nw, &se],
                };
                for p in parts {
                    let _ = writeln!(s, "{p}");
                }
            }
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r#"<g font-family="monospace" font-size="12" text-anchor="middle">"#);
        let text = |s: &mut String, x: usize, y: usize, l: u8| {
            if l > 0 {
                let _ = writeln!(s, r#"<text x="{x}" y="{y}">{l}</text>"#);
            }
        };
        for j in 0..n {
            text(&mut s, ox + j * C + half, oy - 6, b.theta[j]);
            text(&mut s, ox + j * C + half, oy + n * C + 16, b.eta[j]);
        }
        for i in 0..n {
            text(&mut s, ox + n * C + 10, oy + i * C + half + 4, b.kappa[i]);
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r#"<g font-family="monospace" font-size="8" fill="gray" text-anchor="middle">"#);
        for i in 0..n {
            for j in 0..n {
                let t = &self.grid[i][j];
                let (x, y) = (ox + j * C, oy + i * C);
                if i + 1 < n {
                    text(&mut s, x + half + 6, y + C - 2, t.south);
                }
                if j > 0 {
                    text(&mut s, x + 5, y + half - 3, t.west);
                }
            }
        }
        let _ = writeln!(s, "</g>");
        s.push_str("</svg>\n");
        s
    }
}

/// Configurable puzzle enumerator.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    pub mode: Mode,
    /// Prune branches whose pipes can no longer reach their exit column.
    pub prune: bool,
    pub exec: Exec,
}

impl Enumerator {
    pub fn new(mode: Mode) -> Enumerator {
        Enumerator {
            mode,
            prune: true,
            exec: Exec::default(),
        }
    }

    /// Reference configuration: no pruning, single thread.
    pub fn slow(mode: Mode) -> Enumerator {
        Enumerator {
            mode,
            prune: false,
            exec: Exec::Sequential,
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Enumerator {
        self.exec = exec;
        self
    }

    /// All admissible tilings of `b`, in canonical order.
    pub fn enumerate(&self, b: &BoundarySpec) -> Vec<PipePuzzle> {
        let search = Search {
            b,
            n: b.n,
            table: WeightTable::standard(b.k),
            targets: b.targets(),
            mode: self.mode,
            prune: self.prune,
        };
        let start = Partial {
            tiles: Vec::with_capacity(b.n * b.n),
            north: b.theta.clone(),
        };
        let mut grids = if b.n >= 3 && self.exec == Exec::Parallel {
            // Fan out over every completed first row.
            let mut firsts = Vec::new();
            search.row(0, start, &mut |p| firsts.push(p));
            let nested = self.exec.map_owned(firsts, |p| {
                let mut local = Vec::new();
                search.rows_from(1, p, &mut local);
                local
            });
            nested.into_iter().flatten().collect()
        } else {
            let mut out = Vec::new();
            search.rows_from(0, start, &mut out);
            out
        };
        grids.sort_by_cached_key(|tiles: &Vec<Tile>| {
            tiles.iter().map(|t| (t.kind, t.north, t.east)).collect::<Vec<_>>()
        });
        grids
            .into_iter()
            .map(|tiles| PipePuzzle {
                boundary: b.clone(),
                grid: tiles.chunks(b.n).map(|r| r.to_vec()).collect(),
            })
            .collect()
    }
}

#[derive(Clone)]
struct Partial {
    /// Row-major tiles placed so far (rows complete).
    tiles: Vec<Tile>,
    /// Labels entering the next row from above.
    north: Vec<u8>,
}

struct Search<'a> {
    b: &'a BoundarySpec,
    n: usize,
    table: WeightTable,
    targets: Vec<usize>,
    mode: Mode,
    prune: bool,
}

impl Search<'_> {
    fn rows_from(&self, r: usize, p: Partial, out: &mut Vec<Vec<Tile>>) {
        if r == self.n {
            if p.north == self.b.eta {
                out.push(p.tiles);
            }
            return;
        }
        self.row(r, p, &mut |q| self.rows_from(r + 1, q, out));
    }

    /// Fill row `r` right to left, calling `k` on each completed row.
    fn row(&self, r: usize, p: Partial, k: &mut dyn FnMut(Partial)) {
        let n = self.n;
        let mut row = vec![
            Tile {
                kind: TileKind::Empty,
                north: 0,
                east: 0,
                south: 0,
                west: 0
            };
            n
        ];
        self.cell(r, n - 1, self.b.kappa[r], &p, &mut row, k);
    }

    fn cell(&self, r: usize, c: usize, east: u8, p: &Partial, row: &mut Vec<Tile>, k: &mut dyn FnMut(Partial)) {
        let north = p.north[c];
        let options: [(u8, u8); 2] = [(east, north), (north, east)];
        let count = if east == north { 1 } else { 2 };
        for &(west, south) in &options[..count] {
            let Some((kind, _)) = self.table.classify(north, east, west, south) else {
                continue;
            };
            if self.mode == Mode::Schubert && kind == TileKind::Bump {
                continue;
            }
            if c == 0 && west != 0 {
                continue;
            }
            if self.prune && !self.feasible(r, c, west, south) {
                continue;
            }
            row[c] = Tile {
                kind,
                north,
                east,
                south,
                west,
            };
            if c == 0 {
                let mut tiles = p.tiles.clone();
                tiles.extend_from_slice(row);
                let north = row.iter().map(|t| t.south).collect();
                k(Partial { tiles, north });
            } else {
                self.cell(r, c - 1, west, p, row, k);
            }
        }
    }

    /// Pipes only move left or down, so every label must still be able to
    /// reach its exit column.
    fn feasible(&self, r: usize, c: usize, west: u8, south: u8) -> bool {
        if west != 0 && (c == 0 || self.targets[west as usize] > c - 1) {
            return false;
        }
        if south != 0 {
            let t = self.targets[south as usize];
            if t > c || (r == self.n - 1 && t != c) {
                return false;
            }
        }
        if r == self.n - 1 && south != self.b.eta[c] {
            return false;
        }
        true
    }
}

/// All puzzles for a board, canonical order, default execution.
pub fn enumerate_puzzles(b: &BoundarySpec, mode: Mode) -> Vec<PipePuzzle> {
    Enumerator::new(mode).enumerate(b)
}

/// `Σ_π wt(π)` over the puzzles of `(u, v, w)` at `k`.
pub fn structure_constant(
    u: &Permutation,
    v: &Permutation,
    w: &Permutation,
    k: usize,
    mode: Mode,
) -> Result<LocElem, PuzzleError> {
    let b = BoundarySpec::new(u, v, w, k)?;
    Ok(sum_weights(&enumerate_puzzles(&b, mode), mode))
}

pub fn sum_weights(puzzles: &[PipePuzzle], mode: Mode) -> LocElem {
    puzzles
        .iter()
        .fold(LocElem::zero(), |acc, p| &acc + &p.weight(mode))
}

/// JSON dump of a list of puzzles.
pub fn puzzles_to_json(puzzles: &[PipePuzzle]) -> String {
    serde_json::to_string_pretty(puzzles).expect("puzzles serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn example_boundary() {
        let b = BoundarySpec::new(&p("42135"), &p("14532"), &p("53412"), 2).unwrap();
        assert_eq!(b.kappa, vec![0, 2, 0, 1, 0]);
        assert_eq!(b.theta, vec![0, 5, 4, 0, 3]);
        assert_eq!(b.eta, vec![4, 5, 2, 3, 1]);
        b.validate().unwrap();
        assert_eq!(b.permutations(), (p("42135"), p("14532"), p("53412")));
        let e = BoundarySpec::new(&p("14532"), &p("42135"), &p("12345"), 2).unwrap_err();
        assert!(matches!(e, PuzzleError::NotSeparated { maxdes: 4, .. }));
    }

    #[test]
    fn trivial_boards() {
        let id = p("123");
        let b = BoundarySpec::new(&id, &id, &id, 3).unwrap();
        assert_eq!(b.kappa, vec![1, 2, 3]);
        assert_eq!(b.theta, vec![0, 0, 0]);
        let u0 = Permutation::longest_separated(5, 2);
        let b = BoundarySpec::new(&u0, &p("12345"), &p("12345"), 2).unwrap();
        assert_eq!(b.theta, vec![0, 0, 3, 4, 5]);
        let one = p("1");
        for k in 0..=1 {
            let b = BoundarySpec::new(&one, &one, &one, k).unwrap();
            let ps = enumerate_puzzles(&b, Mode::Grothendieck);
            assert_eq!(ps.len(), 1);
            assert!(ps[0].weight(Mode::Grothendieck).is_one());
        }
    }

    #[test]
    fn example_counts() {
        let b = BoundarySpec::new(&p("42135"), &p("14532"), &p("53412"), 2).unwrap();
        assert_eq!(enumerate_puzzles(&b, Mode::Schubert).len(), 4);
        assert_eq!(enumerate_puzzles(&b, Mode::Grothendieck).len(), 9);
    }

    #[test]
    fn render_small() {
        let one = p("1");
        let b = BoundarySpec::new(&one, &one, &one, 1).unwrap();
        let ps = enumerate_puzzles(&b, Mode::Grothendieck);
        assert_eq!(ps[0].render_ascii(), " ,--1\n 1\n");
        assert!(ps[0].render_svg().starts_with("<svg"));
    }
}
