//! Demazure-type operators on the `x`, `t` and `y` families, and double
//! Grothendieck / Schubert polynomials.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::perm::Permutation;
use crate::ring::{Family, LocElem, MPoly, RingError, Substitution, Var, MAX_INDEX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DemazureError {
    #[error("operator index {i} out of range")]
    BadIndex { i: usize },
    #[error("variable families must differ (got {0:?} twice)")]
    SameFamily(Family),
    #[error("permutation too large: n = {0}, at most {MAX_INDEX} supported")]
    TooLarge(usize),
    #[error("word {word:?} is not a reduced word for the required permutation")]
    NotReduced { word: Vec<usize> },
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn check_index(i: usize) -> Result<(), DemazureError> {
    if i == 0 || i >= MAX_INDEX {
        Err(DemazureError::BadIndex { i })
    } else {
        Ok(())
    }
}

/// `[(1+β b) f − (1+β a) f|_{a↔b}] / (a − b)`
fn right_isobaric(f: &LocElem, a: Var, b: Var) -> Result<LocElem, RingError> {
    if f.is_zero() {
        return Ok(LocElem::zero());
    }
    let fs = f.swap_vars(a, b);
    let lhs = &LocElem::from_poly(MPoly::one_plus_beta(b)) * f;
    let rhs = &LocElem::from_poly(MPoly::one_plus_beta(a)) * &fs;
    (&lhs - &rhs).exact_div(&(&MPoly::var(a) - &MPoly::var(b)))
}

/// `−[(1+β a) f − (1+β b) f|_{a↔b}] / (a − b)`
fn left_isobaric(f: &LocElem, a: Var, b: Var) -> Result<LocElem, RingError> {
    if f.is_zero() {
        return Ok(LocElem::zero());
    }
    let fs = f.swap_vars(a, b);
    let lhs = &LocElem::from_poly(MPoly::one_plus_beta(b)) * &fs;
    let rhs = &LocElem::from_poly(MPoly::one_plus_beta(a)) * f;
    (&lhs - &rhs).exact_div(&(&MPoly::var(a) - &MPoly::var(b)))
}

/// The Demazure operator `π_i` on the `x` variables.
pub fn pi(f: &LocElem, i: usize) -> Result<LocElem, DemazureError> {
    check_index(i)?;
    Ok(right_isobaric(f, Var::x(i), Var::x(i + 1))?)
}

/// The left Demazure operator `ϖ_i` on the `t` variables.
pub fn varpi(f: &LocElem, i: usize) -> Result<LocElem, DemazureError> {
    check_index(i)?;
    Ok(left_isobaric(f, Var::t(i), Var::t(i + 1))?)
}

/// The operator `φ_i`: same formula as `ϖ_i`, acting on `y`.
pub fn phi(f: &LocElem, i: usize) -> Result<LocElem, DemazureError> {
    check_index(i)?;
    Ok(left_isobaric(f, Var::y(i), Var::y(i + 1))?)
}

/// `∏_{i+j ≤ n} (x_i ⊖ t_j)`, the polynomial of the longest element of `S_n`.
pub fn staircase(n: usize) -> LocElem {
    assert!(n <= MAX_INDEX);
    let mut num = MPoly::one();
    let mut den = Vec::new();
    for i in 1..n {
        for j in 1..=n - i {
            num = &num * &(&MPoly::var(Var::x(i)) - &MPoly::var(Var::t(j)));
        }
    }
    for j in 1..n {
        den.push((Var::t(j), (n - j) as u32));
    }
    LocElem::from_parts(num, &den)
}

type Cache = RwLock<HashMap<Vec<usize>, Arc<LocElem>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Drop all memoized Grothendieck polynomials.
pub fn clear_cache() {
    cache().write().expect("cache lock").clear();
}

/// Number of memoized entries.
pub fn cache_len() -> usize {
    cache().read().expect("cache lock").len()
}

/// First ascent of `w` (1-based), if any.
fn first_ascent(w: &Permutation) -> Option<usize> {
    (1..w.n()).find(|&i| w.at(i) < w.at(i + 1))
}

/// `𝔊_w(x, t)` computed in `S_n` for `n = w.n()` by `𝔊_w = π_i 𝔊_{w s_i}` at
/// the first ascent `i`, memoized on the trimmed word when `use_cache`.
fn grothendieck_xt(w: &Permutation, use_cache: bool) -> Result<Arc<LocElem>, DemazureError> {
    let w = w.trimmed();
    let n = w.n();
    if n > MAX_INDEX {
        return Err(DemazureError::TooLarge(n));
    }
    if use_cache {
        if let Some(hit) = cache().read().expect("cache lock").get(&w.word()) {
            return Ok(hit.clone());
        }
    }
    let value = match first_ascent(&w) {
        None => Arc::new(staircase(n)),
        Some(i) => {
            // Stability lets the longer `w s_i` be trimmed to a smaller S_m.
            let up = w.right_mul_simple(i);
            let below = grothendieck_xt(&up, use_cache)?;
            Arc::new(pi(&below, i)?)
        }
    };
    if use_cache {
        cache()
            .write()
            .expect("cache lock")
            .insert(w.word(), value.clone());
    }
    Ok(value)
}

fn rename(f: &LocElem, primary: Family, secondary: Family) -> LocElem {
    if primary == Family::X && secondary == Family::T {
        return f.clone();
    }
    let mut s = Substitution::new();
    for i in 1..=MAX_INDEX {
        s = s
            .rename(Var::x(i), Var::new(primary, i))
            .rename(Var::t(i), Var::new(secondary, i));
    }
    f.substitute(&s).expect("renaming never fails")
}

fn check_families(primary: Family, secondary: Family) -> Result<(), DemazureError> {
    if primary == secondary {
        return Err(DemazureError::SameFamily(primary));
    }
    if primary == Family::Beta {
        return Err(DemazureError::SameFamily(primary));
    }
    if secondary == Family::Beta {
        return Err(DemazureError::SameFamily(secondary));
    }
    Ok(())
}

/// Double Grothendieck polynomial `𝔊_w(primary, secondary)`, memoized.
pub fn grothendieck(w: &Permutation, primary: Family, secondary: Family) -> Result<LocElem, DemazureError> {
    check_families(primary, secondary)?;
    let g = grothendieck_xt(w, true)?;
    Ok(rename(&g, primary, secondary))
}

/// Same as [`grothendieck`] but bypassing the memo table.
pub fn grothendieck_uncached(w: &Permutation, primary: Family, secondary: Family) -> Result<LocElem, DemazureError> {
    check_families(primary, secondary)?;
    let g = grothendieck_xt(w, false)?;
    Ok(rename(&g, primary, secondary))
}

/// `𝔊_w(x, t)` built from the staircase of `S_n` by applying `π` along
/// `word`, which must be a reduced word of `w_0 w` read left to right.
pub fn grothendieck_via_word(w: &Permutation, word: &[usize]) -> Result<LocElem, DemazureError> {
    let n = w.n();
    if n > MAX_INDEX {
        return Err(DemazureError::TooLarge(n));
    }
    let mut cur = Permutation::longest(n);
    let mut f = staircase(n);
    for &a in word {
        if a == 0 || a >= n || !cur.has_right_descent(a) {
            return Err(DemazureError::NotReduced { word: word.to_vec() });
        }
        f = pi(&f, a)?;
        cur = cur.right_mul_simple(a);
    }
    if &cur != w {
        return Err(DemazureError::NotReduced { word: word.to_vec() });
    }
    Ok(f)
}

/// Double Schubert polynomial: [`grothendieck`] at `β = 0`.
pub fn schubert(w: &Permutation, primary: Family, secondary: Family) -> Result<LocElem, DemazureError> {
    Ok(grothendieck(w, primary, secondary)?.beta_zero())
}

/// Single Schubert polynomial `𝔖_w(x)`.
pub fn single_schubert(w: &Permutation) -> Result<LocElem, DemazureError> {
    Ok(schubert(w, Family::X, Family::T)?.zero_family(Family::T))
}
