//! Structure constants from the Demazure recurrences, and the full product
//! expansion with an exact residual check.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::{OnceLock, RwLock};

use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use crate::demazure::{self, phi, DemazureError};
use crate::exec::Exec;
use crate::perm::{separated_descents, MinDes, Permutation};
use crate::puzzle::Mode;
use crate::ring::{Family, LocElem, MPoly, RingError, Var, MAX_INDEX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("permutations live in different symmetric groups ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("descents not separated at k={k}: maxdes(u)={maxdes}, mindes(v)={mindes}")]
    NotSeparated { k: usize, maxdes: usize, mindes: MinDes },
    #[error("size {0} exceeds the supported maximum {MAX_INDEX}")]
    TooLarge(usize),
    #[error("expansion residual is nonzero at n = {n_max} ({terms} terms): {residual}")]
    Residual { n_max: usize, terms: usize, residual: String },
    #[error("cache file: {0}")]
    Cache(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Demazure(#[from] DemazureError),
}

/// Which admissible index the recurrences use when several apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Smallest,
    Largest,
}

type Key = (Vec<usize>, Vec<usize>, Vec<usize>, usize);

/// Memoized recurrence evaluator. Safe to share between threads.
#[derive(Debug, Default)]
pub struct Engine {
    tie: TieBreak,
    memo: RwLock<FxHashMap<Key, LocElem>>,
}

fn key(u: &Permutation, v: &Permutation, w: &Permutation, k: usize) -> Key {
    (u.word(), v.word(), w.word(), k)
}

fn pick(mut candidates: impl Iterator<Item = usize>, tie: TieBreak) -> Option<usize> {
    match tie {
        TieBreak::Smallest => candidates.next(),
        TieBreak::Largest => candidates.last(),
    }
}

/// `∏_{i=1}^k ∏_{j=1}^{n-i} (t_i ⊖ y_j)`
pub fn base_product(n: usize, k: usize) -> LocElem {
    let mut num = MPoly::one();
    let mut den = Vec::new();
    for i in 1..=k {
        for j in 1..=n - i {
            num = &num * &(&MPoly::var(Var::t(i)) - &MPoly::var(Var::y(j)));
        }
    }
    for j in 1..n {
        let e = (1..=k).filter(|&i| j <= n - i).count() as u32;
        if e > 0 {
            den.push((Var::y(j), e));
        }
    }
    LocElem::from_parts(num, &den)
}

/// `ℓ(u) + ℓ(v) − ℓ(w)`
pub fn expected_degree(u: &Permutation, v: &Permutation, w: &Permutation) -> i64 {
    u.length() as i64 + v.length() as i64 - w.length() as i64
}

/// Whether `c` is zero or homogeneous of degree `d` (with `deg β = −1`).
pub fn is_homogeneous_of(c: &LocElem, d: i64) -> bool {
    c.is_zero() || c.beta_graded_degree() == Some(d)
}

pub fn check_inputs(u: &Permutation, v: &Permutation, w: &Permutation, k: usize) -> Result<(), EngineError> {
    let n = u.n();
    for p in [v, w] {
        if p.n() != n {
            return Err(EngineError::SizeMismatch(n, p.n()));
        }
    }
    if n > MAX_INDEX {
        return Err(EngineError::TooLarge(n));
    }
    if k > n || !separated_descents(u, v, k) {
        return Err(EngineError::NotSeparated {
            k,
            maxdes: u.maxdes(),
            mindes: v.mindes(),
        });
    }
    Ok(())
}

impl Engine {
    pub fn new() -> Engine {
        Engine::default()
    }

    pub fn with_tie_break(tie: TieBreak) -> Engine {
        Engine {
            tie,
            memo: RwLock::default(),
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    /// `c_{u,v}^w(t, y)` in the requested mode.
    pub fn c(&self, u: &Permutation, v: &Permutation, w: &Permutation, k: usize, mode: Mode) -> Result<LocElem, EngineError> {
        check_inputs(u, v, w, k)?;
        let c = self.c_rec(u, v, w, k)?;
        Ok(match mode {
            Mode::Grothendieck => c,
            Mode::Schubert => c.beta_zero(),
        })
    }

    fn lookup(&self, key: &Key) -> Option<LocElem> {
        self.memo.read().expect("memo lock").get(key).cloned()
    }

    fn store(&self, key: Key, value: &LocElem) {
        self.memo.write().expect("memo lock").insert(key, value.clone());
    }

    fn c_rec(&self, u: &Permutation, v: &Permutation, w: &Permutation, k: usize) -> Result<LocElem, EngineError> {
        let key = key(u, v, w, k);
        if let Some(hit) = self.lookup(&key) {
            return Ok(hit);
        }
        let value = if w.is_identity() {
            self.c_identity(u, v, k)?
        } else {
            let i = pick((1..w.n()).filter(|&i| w.has_left_descent(i)), self.tie).expect("w is not the identity");
            let lower = w.left_mul_simple(i);
            let c = self.c_rec(u, v, &lower, k)?;
            let (ti, tj) = (Var::t(i), Var::t(i + 1));
            let cs = c.swap_vars(ti, tj);
            let a = LocElem::from_poly(MPoly::one_plus_beta(ti));
            let diff = &MPoly::var(ti) - &MPoly::var(tj);
            if v.has_left_descent(i) {
                let b = LocElem::from_poly(MPoly::one_plus_beta(tj));
                let main = (&(&a * &c) - &(&b * &cs)).exact_div(&diff)?;
                let extra = self.c_rec(u, &v.left_mul_simple(i), &lower, k)?.swap_vars(ti, tj);
                &main + &extra
            } else {
                (&a * &(&c - &cs)).exact_div(&diff)?
            }
        };
        self.store(key, &value);
        Ok(value)
    }

    /// `w = id`: climb `u` to the longest separated permutation by `s_i`
    /// with `i` among the first `k` values and before `i+1`, then descend
    /// with `φ_i`.
    fn c_identity(&self, u: &Permutation, v: &Permutation, k: usize) -> Result<LocElem, EngineError> {
        let n = u.n();
        if !v.is_identity() {
            return Ok(LocElem::zero());
        }
        let ascents = (1..n).filter(|&i| {
            let a = u.position(i);
            a <= k && u.position(i + 1) > a
        });
        match pick(ascents, self.tie) {
            None => {
                debug_assert_eq!(*u, Permutation::longest_separated(n, k));
                Ok(base_product(n, k))
            }
            Some(i) => {
                let up = u.left_mul_simple(i);
                let c = self.c_rec(&up, v, &Permutation::identity(n), k)?;
                Ok(phi(&c, i)?)
            }
        }
    }

    /// Persist the memo table as JSON keyed by `"u|v|w|k"`.
    pub fn save(&self, path: &Path) -> Result<(), EngineError> {
        let memo = self.memo.read().expect("memo lock");
        let table: BTreeMap<String, &LocElem> = memo
            .iter()
            .map(|((u, v, w, k), c)| (format!("{}|{}|{}|{}", join(u), join(v), join(w), k), c))
            .collect();
        let s = serde_json::to_string(&table).map_err(|e| EngineError::Cache(e.to_string()))?;
        std::fs::write(path, s).map_err(|e| EngineError::Cache(format!("{}: {e}", path.display())))
    }

    /// Merge entries from a file written by [`Engine::save`].
    pub fn load(&self, path: &Path) -> Result<usize, EngineError> {
        let s = std::fs::read_to_string(path).map_err(|e| EngineError::Cache(format!("{}: {e}", path.display())))?;
        let table: BTreeMap<String, LocElem> = serde_json::from_str(&s).map_err(|e| EngineError::Cache(e.to_string()))?;
        let mut memo = self.memo.write().expect("memo lock");
        let count = table.len();
        for (name, c) in table {
            let parts: Vec<&str> = name.split('|').collect();
            let bad = || EngineError::Cache(format!("bad key '{name}'"));
            if parts.len() != 4 {
                return Err(bad());
            }
            let perm = |s: &str| -> Result<Vec<usize>, EngineError> {
                let p: Permutation = s.parse().map_err(|_| bad())?;
                Ok(p.word())
            };
            let k: usize = parts[3].parse().map_err(|_| bad())?;
            memo.insert((perm(parts[0])?, perm(parts[1])?, perm(parts[2])?, k), c);
        }
        Ok(count)
    }
}

fn join(w: &[usize]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// The process-wide engine behind [`recurrence_c`] and [`expand_all`].
pub fn shared() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(Engine::new)
}

/// `c_{u,v}^w(t, y)` via the process-wide memoized engine.
pub fn recurrence_c(u: &Permutation, v: &Permutation, w: &Permutation, k: usize) -> Result<LocElem, EngineError> {
    shared().c(u, v, w, k, Mode::Grothendieck)
}

/// `c_{u,v}^{id}` from the recurrence.
pub fn c_at_w_id(u: &Permutation, v: &Permutation, k: usize) -> Result<LocElem, EngineError> {
    recurrence_c(u, v, &Permutation::identity(u.n()), k)
}

/// Whether `c_{u,v}^{id}` equals `𝔊_u(t, y)` for `v = id` and `0` otherwise.
pub fn identity_coefficient_check(u: &Permutation, v: &Permutation, k: usize) -> Result<bool, EngineError> {
    let c = c_at_w_id(u, v, k)?;
    let expect = if v.is_identity() {
        demazure::grothendieck(u, Family::T, Family::Y)?
    } else {
        LocElem::zero()
    };
    Ok(c == expect)
}

/// A certified expansion `𝔊_u(x,y)·𝔊_v(x,t) = Σ_w c_w 𝔊_w(x,t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expansion {
    /// Size of the symmetric group in which the residual vanished.
    pub n: usize,
    /// Nonzero coefficients, ordered by length then word.
    pub terms: Vec<(Permutation, LocElem)>,
    /// Variable families seen in denominators of the coefficients.
    pub den_families: Vec<char>,
    /// Sizes tried before `n`, with the number of residual terms at each.
    pub attempts: Vec<(usize, usize)>,
}

impl Expansion {
    pub fn get(&self, w: &Permutation) -> Option<&LocElem> {
        self.terms.iter().find(|(p, _)| p == w).map(|(_, c)| c)
    }
}

/// Expand the product over `S_{n'}` for `n' = n, n+1, …, n_max`, stopping at
/// the first size where the residual is exactly zero.
pub fn expand_all(u: &Permutation, v: &Permutation, k: usize, n_max: usize, exec: Exec) -> Result<Expansion, EngineError> {
    expand_with(shared(), u, v, k, n_max, exec)
}

pub fn expand_with(
    engine: &Engine,
    u: &Permutation,
    v: &Permutation,
    k: usize,
    n_max: usize,
    exec: Exec,
) -> Result<Expansion, EngineError> {
    let n = u.n();
    check_inputs(u, v, &Permutation::identity(n), k)?;
    let n_max = n_max.min(MAX_INDEX);
    let lhs = {
        let gu = demazure::grothendieck(u, Family::X, Family::Y)?;
        let gv = demazure::grothendieck(v, Family::X, Family::T)?;
        &gu * &gv
    };
    let mut attempts = Vec::new();
    let mut last = LocElem::zero();
    for m in n..=n_max.max(n) {
        let (ue, ve) = (u.embed(m), v.embed(m));
        let all = Permutation::all(m);
        let parts = exec.map(&all, |w| -> Result<Option<(Permutation, LocElem, LocElem)>, EngineError> {
            let c = engine.c(&ue, &ve, w, k, Mode::Grothendieck)?;
            if c.is_zero() {
                return Ok(None);
            }
            let g = demazure::grothendieck(w, Family::X, Family::T)?;
            let term = &c * &g;
            Ok(Some((w.clone(), c, term)))
        });
        let mut terms = Vec::new();
        let mut sum = LocElem::zero();
        for p in parts {
            if let Some((w, c, term)) = p? {
                sum = &sum + &term;
                terms.push((w, c));
            }
        }
        let residual = &lhs - &sum;
        if residual.is_zero() {
            terms.sort_by(|a, b| crate::perm::by_length(&a.0, &b.0));
            let mut fams = BTreeSet::new();
            for (_, c) in &terms {
                fams.extend(c.den_families().into_iter().map(|f| f.letter()));
            }
            return Ok(Expansion {
                n: m,
                terms,
                den_families: fams.into_iter().collect(),
                attempts,
            });
        }
        attempts.push((m, residual.num().len()));
        last = residual;
    }
    Err(EngineError::Residual {
        n_max,
        terms: last.num().len(),
        residual: last.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_elem;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn base_cases() {
        let u0 = Permutation::longest_separated(4, 2);
        let id = Permutation::identity(4);
        let c = recurrence_c(&u0, &id, &id, 2).unwrap();
        let mut expect = LocElem::one();
        for i in 1..=2 {
            for j in 1..=4 - i {
                expect = &expect * &LocElem::ominus_vars(Var::t(i), Var::y(j));
            }
        }
        assert_eq!(c, expect);
        assert!(recurrence_c(&u0, &p("1243"), &id, 2).unwrap().is_zero());
        assert_eq!(c_at_w_id(&p("21"), &p("12"), 1).unwrap(), LocElem::ominus_vars(Var::t(1), Var::y(1)));
        assert!(c_at_w_id(&p("123"), &p("123"), 2).unwrap().is_one());
    }

    #[test]
    fn small_expansion() {
        let e = expand_all(&p("21"), &p("12"), 1, 5, Exec::Sequential).unwrap();
        assert_eq!(e.n, 2);
        assert_eq!(e.get(&p("12")), Some(&LocElem::ominus_vars(Var::t(1), Var::y(1))));
        assert_eq!(e.get(&p("21")), Some(&parse_elem("1 + b*(t1 ⊖ y1)").unwrap()));
        let e = expand_all(&p("21"), &p("21"), 1, 5, Exec::Sequential).unwrap();
        assert!(e.get(&p("312")).is_some());
    }

    #[test]
    fn tie_breaks_agree() {
        let a = Engine::with_tie_break(TieBreak::Smallest);
        let b = Engine::with_tie_break(TieBreak::Largest);
        let (u, v) = (p("2413"), p("1324"));
        for w in Permutation::all(4) {
            assert_eq!(
                a.c(&u, &v, &w, 2, Mode::Grothendieck).unwrap(),
                b.c(&u, &v, &w, 2, Mode::Grothendieck).unwrap()
            );
        }
    }

    #[test]
    fn rejects_unseparated() {
        let e = recurrence_c(&p("132"), &p("213"), &p("123"), 1).unwrap_err();
        assert!(matches!(e, EngineError::NotSeparated { maxdes: 2, .. }));
    }
}
