//! The vertex-model view: the cell weight table, R-matrices, partition
//! functions and brute-force Yang-Baxter checks.

use std::collections::HashMap;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::perm::Permutation;
use crate::puzzle::{BoundarySpec, Enumerator, Mode, PipePuzzle, Tile, TileKind};
use crate::ring::{LocElem, MPoly, Var};

/// Weight expressions in a formal cell parameter `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum WeightExpr {
    One,
    X,
    OnePlusBetaX,
    Beta,
    BetaOnePlusBetaX,
}

impl WeightExpr {
    pub fn eval(self, x: &LocElem) -> LocElem {
        match self {
            WeightExpr::One => LocElem::one(),
            WeightExpr::X => x.clone(),
            WeightExpr::OnePlusBetaX => LocElem::one_plus_beta(x),
            WeightExpr::Beta => LocElem::beta(),
            WeightExpr::BetaOnePlusBetaX => &LocElem::beta() * &LocElem::one_plus_beta(x),
        }
    }
}

/// Which edges carry the labels `p` (entering from the north) and `q`
/// (entering from the east); every other edge is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// `N = E = W = S = 0`
    AllZero,
    /// `N = S = p`
    Vertical,
    /// `E = W = q`
    Horizontal,
    /// `N = S = p`, `E = W = q`
    Cross,
    /// `N = W = p`
    ElbowNW,
    /// `E = S = q`
    ElbowSE,
    /// `N = W = p`, `E = S = q`
    Bump,
}

/// Side conditions on `p`, `q` relative to `k` (labels are positive where
/// the shape puts them).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cond {
    Always,
    PAtMostK,
    PAboveK,
    QAtMostK,
    QAboveK,
    /// `q < p`
    QBelowP,
    /// `q < p ≤ k`
    QBelowPAtMostK,
    /// `k < q < p`
    KBelowQBelowP,
    /// `p ≤ k < q`
    PAtMostKBelowQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightRow {
    pub kind: TileKind,
    pub shape: Shape,
    pub cond: Cond,
    pub weight: WeightExpr,
}

/// Local configurations of a lattice vertex and their weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    pub k: usize,
    pub rows: Vec<WeightRow>,
}

const fn row(kind: TileKind, shape: Shape, cond: Cond, weight: WeightExpr) -> WeightRow {
    WeightRow {
        kind,
        shape,
        cond,
        weight,
    }
}

const STANDARD_ROWS: [WeightRow; 11] = [
    row(TileKind::Empty, Shape::AllZero, Cond::Always, WeightExpr::X),
    row(TileKind::Vertical, Shape::Vertical, Cond::Always, WeightExpr::One),
    row(TileKind::Horizontal, Shape::Horizontal, Cond::Always, WeightExpr::One),
    row(TileKind::Cross, Shape::Cross, Cond::QBelowP, WeightExpr::One),
    row(TileKind::ElbowNW, Shape::ElbowNW, Cond::PAtMostK, WeightExpr::OnePlusBetaX),
    row(TileKind::ElbowNW, Shape::ElbowNW, Cond::PAboveK, WeightExpr::One),
    row(TileKind::ElbowSE, Shape::ElbowSE, Cond::QAtMostK, WeightExpr::One),
    row(TileKind::ElbowSE, Shape::ElbowSE, Cond::QAboveK, WeightExpr::OnePlusBetaX),
    row(TileKind::Bump, Shape::Bump, Cond::QBelowPAtMostK, WeightExpr::Beta),
    row(TileKind::Bump, Shape::Bump, Cond::KBelowQBelowP, WeightExpr::Beta),
    row(TileKind::Bump, Shape::Bump, Cond::PAtMostKBelowQ, WeightExpr::BetaOnePlusBetaX),
];

impl Shape {
    /// Extract `(p, q)` if the labels have this shape.
    fn matches(self, n: u8, e: u8, w: u8, s: u8) -> Option<(u8, u8)> {
        let ok = match self {
            Shape::AllZero => n == 0 && e == 0 && w == 0 && s == 0,
            Shape::Vertical => e == 0 && w == 0 && n > 0 && n == s,
            Shape::Horizontal => n == 0 && s == 0 && e > 0 && e == w,
            Shape::Cross => n > 0 && n == s && e > 0 && e == w,
            Shape::ElbowNW => e == 0 && s == 0 && n > 0 && n == w,
            Shape::ElbowSE => n == 0 && w == 0 && e > 0 && e == s,
            Shape::Bump => n > 0 && n == w && e > 0 && e == s,
        };
        ok.then_some((n, e))
    }
}

impl Cond {
    fn holds(self, p: u8, q: u8, k: u8) -> bool {
        match self {
            Cond::Always => true,
            Cond::PAtMostK => p <= k,
            Cond::PAboveK => p > k,
            Cond::QAtMostK => q <= k,
            Cond::QAboveK => q > k,
            Cond::QBelowP => q < p,
            Cond::QBelowPAtMostK => q < p && p <= k,
            Cond::KBelowQBelowP => k < q && q < p,
            Cond::PAtMostKBelowQ => p <= k && k < q,
        }
    }
}

impl WeightTable {
    /// The standard table for separation position `k`.
    pub fn standard(k: usize) -> WeightTable {
        WeightTable {
            k,
            rows: STANDARD_ROWS.to_vec(),
        }
    }

    /// The matching row, if the configuration is admissible.
    pub fn classify(&self, n: u8, e: u8, w: u8, s: u8) -> Option<(TileKind, WeightExpr)> {
        let k = self.k as u8;
        self.rows.iter().find_map(|r| {
            let (p, q) = r.shape.matches(n, e, w, s)?;
            r.cond.holds(p, q, k).then_some((r.kind, r.weight))
        })
    }

    /// Number of rows matching a configuration (admissible iff exactly one).
    pub fn matching_rows(&self, n: u8, e: u8, w: u8, s: u8) -> usize {
        let k = self.k as u8;
        self.rows
            .iter()
            .filter(|r| r.shape.matches(n, e, w, s).is_some_and(|(p, q)| r.cond.holds(p, q, k)))
            .count()
    }

    /// Weight of a configuration `(N, E, W, S)` with cell parameter `param`.
    pub fn cell_weight(&self, labels: (u8, u8, u8, u8), param: &LocElem) -> Option<LocElem> {
        let (n, e, w, s) = labels;
        self.classify(n, e, w, s).map(|(_, x)| x.eval(param))
    }
}

/// `x = t_j ⊖ y_i` for 1-based row `i`, column `j`.
pub fn cell_param(i: usize, j: usize) -> LocElem {
    LocElem::ominus_vars(Var::t(j), Var::y(i))
}

/// Partition function of the lattice model on a board, by a row-by-row
/// transfer over all edge labels.
pub fn partition_function(b: &BoundarySpec) -> LocElem {
    let n = b.n;
    let table = WeightTable::standard(b.k);
    let top = n as u8;
    // state: labels entering the remaining cells of the row from above (or
    // already emitted below), plus the label flowing west.
    let mut states: FxHashMap<Vec<u8>, LocElem> = FxHashMap::default();
    states.insert(b.theta.clone(), LocElem::one());
    for i in 0..n {
        let mut cur: FxHashMap<(Vec<u8>, u8), LocElem> = states
            .into_iter()
            .map(|(v, z)| ((v, b.kappa[i]), z))
            .collect();
        for j in (0..n).rev() {
            let param = cell_param(i + 1, j + 1);
            let mut weights: HashMap<WeightExpr, LocElem> = HashMap::new();
            let mut next: FxHashMap<(Vec<u8>, u8), LocElem> = FxHashMap::default();
            for ((labels, east), z) in cur {
                let north = labels[j];
                for west in 0..=top {
                    if j == 0 && west != 0 {
                        continue;
                    }
                    for south in 0..=top {
                        let Some((_, expr)) = table.classify(north, east, west, south) else {
                            continue;
                        };
                        let f = weights.entry(expr).or_insert_with(|| expr.eval(&param));
                        let mut l = labels.clone();
                        l[j] = south;
                        let contrib = &z * f;
                        next.entry((l, west))
                            .and_modify(|acc| *acc = &*acc + &contrib)
                            .or_insert(contrib);
                    }
                }
            }
            cur = next;
        }
        states = cur.into_iter().map(|((v, _), z)| (v, z)).collect();
    }
    states.remove(&b.eta).unwrap_or_else(LocElem::zero)
}

/// Every admissible state (as a tile grid), by exhaustive search over all
/// `(W, S)` labels at every vertex, in canonical order.
pub fn admissible_states(b: &BoundarySpec) -> Vec<Vec<Vec<Tile>>> {
    let n = b.n;
    let table = WeightTable::standard(b.k);
    let mut out = Vec::new();
    let mut grid = vec![
        vec![
            Tile {
                kind: TileKind::Empty,
                north: 0,
                east: 0,
                south: 0,
                west: 0
            };
            n
        ];
        n
    ];
    fn go(
        b: &BoundarySpec,
        table: &WeightTable,
        i: usize,
        j: usize,
        grid: &mut Vec<Vec<Tile>>,
        out: &mut Vec<Vec<Vec<Tile>>>,
    ) {
        let n = b.n;
        if i == n {
            if (0..n).all(|c| grid[n - 1][c].south == b.eta[c]) {
                out.push(grid.clone());
            }
            return;
        }
        let north = if i == 0 { b.theta[j] } else { grid[i - 1][j].south };
        let east = if j == n - 1 { b.kappa[i] } else { grid[i][j + 1].west };
        for west in 0..=n as u8 {
            for south in 0..=n as u8 {
                if j == 0 && west != 0 {
                    continue;
                }
                if let Some((kind, _)) = table.classify(north, east, west, south) {
                    grid[i][j] = Tile {
                        kind,
                        north,
                        east,
                        south,
                        west,
                    };
                    let (ni, nj) = if j == 0 { (i + 1, n - 1) } else { (i, j - 1) };
                    go(b, table, ni, nj, grid, out);
                }
            }
        }
    }
    go(b, &table, 0, n - 1, &mut grid, &mut out);
    out.sort_by_cached_key(|g| g.iter().flatten().map(|t| (t.kind, t.north, t.east)).collect::<Vec<_>>());
    out
}

/// Outcome of comparing lattice states against puzzles on one board.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub states: usize,
    pub puzzles: usize,
    pub same_tilings: bool,
    pub same_weights: bool,
    pub partition_matches: bool,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.states == self.puzzles && self.same_tilings && self.same_weights && self.partition_matches
    }
}

/// Admissible states versus puzzles: count, identical tilings, identical
/// weight multisets, and `Z` equal to the puzzle sum.
pub fn bijection_check(b: &BoundarySpec) -> BijectionReport {
    let states = admissible_states(b);
    let puzzles = Enumerator::new(Mode::Grothendieck).enumerate(b);
    let same_tilings = states.len() == puzzles.len() && states.iter().zip(&puzzles).all(|(s, p)| *s == p.grid);
    let table = WeightTable::standard(b.k);
    let state_weight = |g: &Vec<Vec<Tile>>| {
        let mut z = LocElem::one();
        for (i, r) in g.iter().enumerate() {
            for (j, t) in r.iter().enumerate() {
                let w = table
                    .cell_weight((t.north, t.east, t.west, t.south), &cell_param(i + 1, j + 1))
                    .expect("admissible");
                z = &z * &w;
            }
        }
        z
    };
    let mut sw: Vec<String> = states.iter().map(|g| state_weight(g).to_json()).collect();
    let mut pw: Vec<String> = puzzles.iter().map(|p| p.weight(Mode::Grothendieck).to_json()).collect();
    sw.sort();
    pw.sort();
    let z = partition_function(b);
    let total = crate::puzzle::sum_weights(&puzzles, Mode::Grothendieck);
    BijectionReport {
        states: states.len(),
        puzzles: puzzles.len(),
        same_tilings,
        same_weights: sw == pw,
        partition_matches: z == total,
    }
}

/// Converts a state into a puzzle.
pub fn state_to_puzzle(b: &BoundarySpec, grid: Vec<Vec<Tile>>) -> PipePuzzle {
    PipePuzzle {
        boundary: b.clone(),
        grid,
    }
}

/// Orientation of an R-matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RKind {
    Row,
    Col,
}

impl std::str::FromStr for RKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "row" => Ok(RKind::Row),
            "col" => Ok(RKind::Col),
            _ => Err(format!("unknown kind '{s}' (expected row or col)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RClass {
    A,
    B1,
    B2,
    C,
}

/// A leg of an R-vertex: `0`, the smaller label `a`, or the larger `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leg {
    Zero,
    Small,
    Large,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RCond {
    /// No constraint beyond positivity.
    Positive,
    /// `0 < a ≤ k`
    SmallAtMostK,
    /// `a > k`
    SmallAboveK,
    /// `0 < a < A`
    Ordered,
    /// All legs zero.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct REntry {
    pub class: RClass,
    /// Legs in the order NW, NE, SW, SE.
    pub legs: [Leg; 4],
    pub cond: RCond,
    pub weight: WeightExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    pub kind: RKind,
    pub k: usize,
    pub entries: Vec<REntry>,
}

const fn rentry(class: RClass, legs: [Leg; 4], cond: RCond, weight: WeightExpr) -> REntry {
    REntry {
        class,
        legs,
        cond,
        weight,
    }
}

use Leg::{Large as L, Small as S, Zero as Z};

/// Row R-matrix; pipes enter at NE (upper row) and SE (lower row) and leave at
/// NW and SW.
const R_ROW: [REntry; 10] = [
    rentry(RClass::A, [Z, Z, Z, Z], RCond::None, WeightExpr::One),
    rentry(RClass::A, [S, S, S, S], RCond::Positive, WeightExpr::One),
    rentry(RClass::B1, [S, S, Z, Z], RCond::SmallAtMostK, WeightExpr::One),
    rentry(RClass::B1, [Z, Z, S, S], RCond::SmallAboveK, WeightExpr::One),
    rentry(RClass::B1, [S, S, L, L], RCond::Ordered, WeightExpr::One),
    rentry(RClass::C, [S, Z, Z, S], RCond::Positive, WeightExpr::X),
    rentry(RClass::C, [S, L, L, S], RCond::Ordered, WeightExpr::X),
    rentry(RClass::B2, [Z, Z, S, S], RCond::SmallAtMostK, WeightExpr::OnePlusBetaX),
    rentry(RClass::B2, [S, S, Z, Z], RCond::SmallAboveK, WeightExpr::OnePlusBetaX),
    rentry(RClass::B2, [L, L, S, S], RCond::Ordered, WeightExpr::OnePlusBetaX),
];

/// Column R-matrix; pipes enter at NW and NE and leave at SW and SE.
const R_COL: [REntry; 10] = [
    rentry(RClass::A, [Z, Z, Z, Z], RCond::None, WeightExpr::One),
    rentry(RClass::A, [S, S, S, S], RCond::Positive, WeightExpr::One),
    rentry(RClass::B1, [S, Z, S, Z], RCond::SmallAtMostK, WeightExpr::One),
    rentry(RClass::B1, [Z, S, Z, S], RCond::SmallAboveK, WeightExpr::One),
    rentry(RClass::B1, [S, L, S, L], RCond::Ordered, WeightExpr::One),
    rentry(RClass::C, [S, Z, Z, S], RCond::Positive, WeightExpr::X),
    rentry(RClass::C, [L, S, S, L], RCond::Ordered, WeightExpr::X),
    rentry(RClass::B2, [Z, S, Z, S], RCond::SmallAtMostK, WeightExpr::OnePlusBetaX),
    rentry(RClass::B2, [S, Z, S, Z], RCond::SmallAboveK, WeightExpr::OnePlusBetaX),
    rentry(RClass::B2, [L, S, L, S], RCond::Ordered, WeightExpr::OnePlusBetaX),
];

impl RMatrix {
    pub fn new(kind: RKind, k: usize) -> RMatrix {
        let entries = match kind {
            RKind::Row => R_ROW.to_vec(),
            RKind::Col => R_COL.to_vec(),
        };
        RMatrix { kind, k, entries }
    }

    fn entry_matches(e: &REntry, labels: [u8; 4], k: u8) -> bool {
        let mut small = None;
        let mut large = None;
        for (leg, &l) in e.legs.iter().zip(labels.iter()) {
            let slot = match leg {
                Leg::Zero => {
                    if l != 0 {
                        return false;
                    }
                    continue;
                }
                Leg::Small => &mut small,
                Leg::Large => &mut large,
            };
            match *slot {
                None => *slot = Some(l),
                Some(v) if v == l => {}
                Some(_) => return false,
            }
        }
        let a = small.unwrap_or(0);
        match e.cond {
            RCond::None => true,
            RCond::Positive => a > 0,
            RCond::SmallAtMostK => a > 0 && a <= k,
            RCond::SmallAboveK => a > k,
            RCond::Ordered => a > 0 && large.is_some_and(|big| a < big),
        }
    }

    /// Matching entry for legs `(NW, NE, SW, SE)`.
    pub fn lookup(&self, nw: u8, ne: u8, sw: u8, se: u8) -> Option<&REntry> {
        let labels = [nw, ne, sw, se];
        self.entries
            .iter()
            .find(|e| Self::entry_matches(e, labels, self.k as u8))
    }

    pub fn matching_entries(&self, nw: u8, ne: u8, sw: u8, se: u8) -> usize {
        let labels = [nw, ne, sw, se];
        self.entries
            .iter()
            .filter(|e| Self::entry_matches(e, labels, self.k as u8))
            .count()
    }
}

/// Boundary `(a1, a2, a3, b1, b2, b3)` of a Yang-Baxter configuration.
pub type YbeBoundary = [u8; 6];

/// Weight products are accumulated symbolically as counts of
/// `(vertex x, vertex y, R)` weight triples.
type Tally = FxHashMap<(WeightExpr, WeightExpr, WeightExpr), i64>;

/// Dense lookup tables over labels `0..=max` for one `k`.
struct Tables {
    max: u8,
    vertex: Vec<Option<WeightExpr>>,
    r: Vec<Option<WeightExpr>>,
}

impl Tables {
    fn new(kind: RKind, k: usize, max: u8) -> Tables {
        let m = max as usize + 1;
        let wt = WeightTable::standard(k);
        let rm = RMatrix::new(kind, k);
        let mut vertex = vec![None; m * m * m * m];
        let mut r = vec![None; m * m * m * m];
        for a in 0..=max {
            for b in 0..=max {
                for c in 0..=max {
                    for d in 0..=max {
                        let idx = Self::idx(m, a, b, c, d);
                        vertex[idx] = wt.classify(a, b, c, d).map(|x| x.1);
                        r[idx] = rm.lookup(a, b, c, d).map(|e| e.weight);
                    }
                }
            }
        }
        Tables { max, vertex, r }
    }

    fn idx(m: usize, a: u8, b: u8, c: u8, d: u8) -> usize {
        ((a as usize * m + b as usize) * m + c as usize) * m + d as usize
    }

    /// Vertex with labels `(N, E, W, S)`.
    fn v(&self, n: u8, e: u8, w: u8, s: u8) -> Option<WeightExpr> {
        self.vertex[Self::idx(self.max as usize + 1, n, e, w, s)]
    }

    /// R-vertex with legs `(NW, NE, SW, SE)`.
    fn r(&self, nw: u8, ne: u8, sw: u8, se: u8) -> Option<WeightExpr> {
        self.r[Self::idx(self.max as usize + 1, nw, ne, sw, se)]
    }

    fn sides(&self, kind: RKind, bd: YbeBoundary) -> (Tally, Tally) {
        let [a1, a2, a3, b1, b2, b3] = bd;
        let mut lhs = Tally::default();
        let mut rhs = Tally::default();
        for e1 in 0..=self.max {
            for e2 in 0..=self.max {
                for e3 in 0..=self.max {
                    match kind {
                        RKind::Row => {
                            // R on the left, x above y on the right.
                            if let (Some(r), Some(x), Some(y)) = (
                                self.r(b1, e1, b2, e2),
                                self.v(a1, a2, e1, e3),
                                self.v(e3, a3, e2, b3),
                            ) {
                                *lhs.entry((x, y, r)).or_default() += 1;
                            }
                            // y above x on the left, R on the right.
                            if let (Some(y), Some(x), Some(r)) = (
                                self.v(a1, e1, b1, e3),
                                self.v(e3, e2, b2, b3),
                                self.r(e1, a2, e2, a3),
                            ) {
                                *rhs.entry((x, y, r)).or_default() += 1;
                            }
                        }
                        RKind::Col => {
                            // R on top, x left of y below it.
                            if let (Some(r), Some(x), Some(y)) = (
                                self.r(a1, a2, e1, e2),
                                self.v(e1, e3, b1, b2),
                                self.v(e2, a3, e3, b3),
                            ) {
                                *lhs.entry((x, y, r)).or_default() += 1;
                            }
                            // y left of x on top, R below.
                            if let (Some(y), Some(x), Some(r)) = (
                                self.v(a1, e3, b1, e1),
                                self.v(a2, a3, e3, e2),
                                self.r(e1, e2, b2, b3),
                            ) {
                                *rhs.entry((x, y, r)).or_default() += 1;
                            }
                        }
                    }
                }
            }
        }
        (lhs, rhs)
    }
}

/// Symbolic evaluator for tallies with `x = x_1`, `y = y_1` and R parameter
/// `x ⊖ y`; products are memoized.
struct TallyEval {
    cache: FxHashMap<(WeightExpr, WeightExpr, WeightExpr), LocElem>,
}

impl TallyEval {
    fn new() -> TallyEval {
        TallyEval {
            cache: FxHashMap::default(),
        }
    }

    fn eval(&mut self, t: &Tally) -> LocElem {
        let mut keys: Vec<_> = t.iter().filter(|(_, &c)| c != 0).collect();
        keys.sort();
        let mut out = LocElem::zero();
        for (&(x, y, r), &c) in keys {
            let prod = self.cache.entry((x, y, r)).or_insert_with(|| {
                let px = LocElem::var(Var::x(1));
                let py = LocElem::var(Var::y(1));
                let pr = LocElem::ominus_vars(Var::x(1), Var::y(1));
                &(&x.eval(&px) * &y.eval(&py)) * &r.eval(&pr)
            });
            out = &out + &prod.scale(&c.into());
        }
        out
    }
}

/// Both sides of one Yang-Baxter configuration, as ring elements in
/// `x = x_1`, `y = y_1`.
pub fn ybe_sides(kind: RKind, k: usize, boundary: YbeBoundary) -> (LocElem, LocElem) {
    let max = boundary.iter().copied().max().unwrap_or(0).max(k as u8).max(1);
    let tables = Tables::new(kind, k, max);
    let (l, r) = tables.sides(kind, boundary);
    let mut ev = TallyEval::new();
    (ev.eval(&l), ev.eval(&r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YbeFailure {
    pub boundary: YbeBoundary,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YbeReport {
    pub kind: RKind,
    pub k: usize,
    pub cases: usize,
    /// Boundaries where at least one side has an admissible configuration.
    pub nonzero_cases: usize,
    pub failures: Vec<YbeFailure>,
}

/// Boundaries over `0..=max` with at most three distinct nonzero labels.
pub fn ybe_boundaries(max: u8) -> Vec<YbeBoundary> {
    let m = max as u32 + 1;
    let total = m.pow(6);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut bd = [0u8; 6];
        for slot in bd.iter_mut() {
            *slot = (c % m) as u8;
            c /= m;
        }
        let mut nz: Vec<u8> = bd.iter().copied().filter(|&l| l > 0).collect();
        nz.sort_unstable();
        nz.dedup();
        if nz.len() <= 3 {
            out.push(bd);
        }
    }
    out
}

/// Exhaustive Yang-Baxter check for one orientation and `k` over labels
/// `0..=max`.
pub fn verify_ybe(kind: RKind, k: usize, max: u8, exec: Exec) -> YbeReport {
    let tables = Tables::new(kind, k, max.max(k as u8));
    let boundaries = ybe_boundaries(max);
    let chunks: Vec<&[YbeBoundary]> = boundaries.chunks(512).collect();
    let results = exec.map(&chunks, |chunk| {
        let mut ev = TallyEval::new();
        let mut nonzero = 0usize;
        let mut failures = Vec::new();
        for &bd in chunk.iter() {
            let (l, r) = tables.sides(kind, bd);
            if l.is_empty() && r.is_empty() {
                continue;
            }
            nonzero += 1;
            // identical tallies give identical sums without evaluation
            if l == r {
                continue;
            }
            let (lv, rv) = (ev.eval(&l), ev.eval(&r));
            if lv != rv {
                failures.push(YbeFailure {
                    boundary: bd,
                    lhs: lv.to_string(),
                    rhs: rv.to_string(),
                });
            }
        }
        (nonzero, failures)
    });
    let mut nonzero_cases = 0;
    let mut failures = Vec::new();
    for (nz, f) in results {
        nonzero_cases += nz;
        failures.extend(f);
    }
    YbeReport {
        kind,
        k,
        cases: boundaries.len(),
        nonzero_cases,
        failures,
    }
}

/// Which recurrence of the partition function to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Recurrence {
    /// Lowering `u` by `s_i`, acting on `y_i, y_{i+1}`.
    Y,
    /// Raising `w` by `s_i` when `s_i v < v`, acting on `t_i, t_{i+1}`.
    TWithDescent,
    /// Raising `w` by `s_i` when `s_i v > v`.
    TWithoutDescent,
}

/// Checks `Z_{s_i u, v}^w = [(1+βy_{i+1}) Z|_{y_i↔y_{i+1}} − (1+βy_i) Z] / (y_i − y_{i+1})`
/// for `s_i u < u`. `None` when the hypotheses fail.
pub fn check_y_recurrence(u: &Permutation, v: &Permutation, w: &Permutation, k: usize, i: usize) -> Option<bool> {
    if i == 0 || i >= u.n() || !u.has_left_descent(i) {
        return None;
    }
    let lower = u.left_mul_simple(i);
    let z = partition_function(&BoundarySpec::new(u, v, w, k).ok()?);
    let lhs = partition_function(&BoundarySpec::new(&lower, v, w, k).ok()?);
    let (a, b) = (Var::y(i), Var::y(i + 1));
    let num = &(&LocElem::from_poly(MPoly::one_plus_beta(b)) * &z.swap_vars(a, b))
        - &(&LocElem::from_poly(MPoly::one_plus_beta(a)) * &z);
    let rhs = num.exact_div(&(&MPoly::var(a) - &MPoly::var(b))).ok()?;
    Some(lhs == rhs)
}

/// Checks the recurrence raising `w` to `s_i w > w`, in the branch selected by
/// whether `s_i v < v`. `None` when the hypotheses fail.
pub fn check_t_recurrence(
    u: &Permutation,
    v: &Permutation,
    w: &Permutation,
    k: usize,
    i: usize,
) -> Option<(Recurrence, bool)> {
    if i == 0 || i >= w.n() || w.has_left_descent(i) {
        return None;
    }
    let upper = w.left_mul_simple(i);
    let z = partition_function(&BoundarySpec::new(u, v, w, k).ok()?);
    let lhs = partition_function(&BoundarySpec::new(u, v, &upper, k).ok()?);
    let (a, b) = (Var::t(i), Var::t(i + 1));
    let zs = z.swap_vars(a, b);
    let diff = &MPoly::var(a) - &MPoly::var(b);
    let pa = LocElem::from_poly(MPoly::one_plus_beta(a));
    let pb = LocElem::from_poly(MPoly::one_plus_beta(b));
    if v.has_left_descent(i) {
        let num = &(&pa * &z) - &(&pb * &zs);
        let extra = partition_function(&BoundarySpec::new(u, &v.left_mul_simple(i), w, k).ok()?).swap_vars(a, b);
        let rhs = &num.exact_div(&diff).ok()? + &extra;
        Some((Recurrence::TWithDescent, lhs == rhs))
    } else {
        let rhs = (&pa * &(&z - &zs)).exact_div(&diff).ok()?;
        Some((Recurrence::TWithoutDescent, lhs == rhs))
    }
}
