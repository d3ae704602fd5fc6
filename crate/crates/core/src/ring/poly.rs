use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::int::Int;
use super::mono::{Monomial, Var, NVARS};
use super::RingError;

/// Sparse polynomial in `β, x, t, y` with integer coefficients.
///
/// Terms are kept sorted by the canonical monomial order (ascending) with no
/// zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Monomial, Int)>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn from_i64(c: i64) -> MPoly {
        MPoly::constant(Int::from(c))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly {
            terms: vec![(Monomial::var(v), Int::ONE)],
        }
    }

    pub fn monomial(m: Monomial, c: Int) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    /// `1 + β v`
    pub fn one_plus_beta(v: Var) -> MPoly {
        MPoly::from_terms(vec![
            (Monomial::ONE, Int::ONE),
            (Monomial::var(Var::BETA).mul(&Monomial::var(v)), Int::ONE),
        ])
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms(mut terms: Vec<(Monomial, Int)>) -> MPoly {
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, Int)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => lc.add_assign_ref(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        MPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Int)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant value if this polynomial has no variables.
    pub fn as_constant(&self) -> Option<Int> {
        match self.terms.as_slice() {
            [] => Some(Int::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    /// Variables appearing in some term.
    pub fn variables(&self) -> Vec<Var> {
        let mut seen = [false; NVARS];
        for (m, _) in &self.terms {
            for (v, _) in m.support() {
                seen[v.slot()] = true;
            }
        }
        (0..NVARS).filter(|&s| seen[s]).map(Var::from_slot).collect()
    }

    pub fn scale(&self, c: &Int) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Multiply by a monomial; order-preserving since the order is graded
    /// and compatible with multiplication.
    pub fn mul_monomial(&self, mono: &Monomial, c: &Int) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    fn merge(&self, other: &MPoly, negate_other: bool) -> MPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((*m, if negate_other { -c } else { c.clone() }));
        }
        MPoly { terms: out }
    }

    pub fn mul_poly(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m, c);
        }
        let mut acc: FxHashMap<Monomial, Int> = FxHashMap::default();
        acc.reserve(self.terms.len() * other.terms.len() / 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                acc.entry(m)
                    .and_modify(|e| e.add_assign_ref(&c))
                    .or_insert(c);
            }
        }
        let mut terms: Vec<(Monomial, Int)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        MPoly { terms }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..e {
            out = out.mul_poly(self);
        }
        out
    }

    /// `self · (1 + β v)^e`
    pub fn mul_one_plus_beta_pow(&self, v: Var, e: u32) -> MPoly {
        let bv = Monomial::var(Var::BETA).mul(&Monomial::var(v));
        let mut out = self.clone();
        for _ in 0..e {
            out = &out + &out.mul_monomial(&bv, &Int::ONE);
        }
        out
    }

    /// Relabel variables: `map[s]` is the slot that slot `s` is sent to.
    pub fn remap(&self, map: &[usize; NVARS]) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())).collect())
    }

    /// Exchange two variables.
    pub fn swap_vars(&self, a: Var, b: Var) -> MPoly {
        self.remap(&swap_map(a, b))
    }

    /// Set `v = 0`.
    pub fn zero_var(&self, v: Var) -> MPoly {
        MPoly {
            terms: self.terms.iter().filter(|(m, _)| m.exp(v) == 0).cloned().collect(),
        }
    }

    /// Set `v = 1`.
    pub fn one_var(&self, v: Var) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.without(v), c.clone())).collect())
    }

    /// Split as `Σ_k coeffs[k] · v^k` with `coeffs[k]` free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Int)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.without(v), c.clone()));
        }
        buckets.into_iter().map(|t| MPoly { terms: t }).collect()
    }

    /// Inverse of [`Self::coefficients_in`].
    pub fn from_coefficients_in(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut m = *m;
                m.set_exp(v, k as u32);
                terms.push((m, c.clone()));
            }
        }
        MPoly::from_terms(terms)
    }

    /// Exact division by a polynomial `g = a + b·v` that is linear in `v`,
    /// where `a`, `b` are free of `v` and one of them is `±1`.
    ///
    /// Returns `NotDivisible` on a nonzero remainder.
    pub fn div_linear_in(&self, v: Var, a: &MPoly, b: &MPoly) -> Result<MPoly, RingError> {
        if self.is_zero() {
            return Ok(MPoly::zero());
        }
        debug_assert!(!a.contains_var(v) && !b.contains_var(v));
        let f = self.coefficients_in(v);
        let d = f.len() - 1;
        let unit = |p: &MPoly| match p.as_constant() {
            Some(c) if c.is_one() => Some(Int::ONE),
            Some(c) if (-&c).is_one() => Some(c),
            _ => None,
        };
        if let Some(bu) = unit(b) {
            // f_k = b q_{k-1} + a q_k, eliminated from the top.
            if d == 0 {
                return Err(RingError::NotDivisible);
            }
            let mut q = vec![MPoly::zero(); d];
            q[d - 1] = f[d].scale(&bu);
            for k in (1..d).rev() {
                q[k - 1] = (&f[k] - &a.mul_poly(&q[k])).scale(&bu);
            }
            let rem = &f[0] - &a.mul_poly(&q[0]);
            if !rem.is_zero() {
                return Err(RingError::NotDivisible);
            }
            Ok(MPoly::from_coefficients_in(v, &q))
        } else if let Some(au) = unit(a) {
            // f_k = a q_k + b q_{k-1}, eliminated from the bottom.
            if d == 0 {
                // g = a + b v with b != 0 only divides polynomials involving v
                // unless g is constant; here `b` may be free of v but g still
                // has v-degree one.
                return if b.is_zero() {
                    Ok(self.scale(&au))
                } else {
                    Err(RingError::NotDivisible)
                };
            }
            let mut q = vec![MPoly::zero(); d];
            q[0] = f[0].scale(&au);
            for k in 1..d {
                q[k] = (&f[k] - &b.mul_poly(&q[k - 1])).scale(&au);
            }
            let rem = &f[d] - &b.mul_poly(&q[d - 1]);
            if !rem.is_zero() {
                return Err(RingError::NotDivisible);
            }
            Ok(MPoly::from_coefficients_in(v, &q))
        } else {
            Err(RingError::NonUnitDivisor)
        }
    }

    /// Exact division by a polynomial of total degree one whose leading
    /// variable has coefficient `±1` (e.g. `x_1 - x_2`).
    pub fn exact_div_linear(&self, g: &MPoly) -> Result<MPoly, RingError> {
        let v = g
            .terms
            .iter()
            .rev()
            .find(|(m, c)| m.total_degree() == 1 && (c.is_one() || (-c).is_one()))
            .and_then(|(m, _)| m.support().next().map(|(v, _)| v))
            .ok_or(RingError::NonUnitDivisor)?;
        if g.degree_in(v) != 1 {
            return Err(RingError::NonUnitDivisor);
        }
        let parts = g.coefficients_in(v);
        self.div_linear_in(v, &parts[0], &parts[1])
    }

    /// Exact division by `1 + β v`.
    pub fn div_one_plus_beta(&self, v: Var) -> Result<MPoly, RingError> {
        self.div_linear_in(v, &MPoly::one(), &MPoly::var(Var::BETA))
    }

    /// Evaluate modulo a prime `p < 2^62` at the point `values[slot]`.
    pub fn eval_mod(&self, values: &[u64; NVARS], p: u64) -> u64 {
        let mut total: u64 = 0;
        for (m, c) in &self.terms {
            let mut acc = c.rem_u64(p);
            for (v, e) in m.support() {
                acc = mul_mod(acc, pow_mod(values[v.slot()], e as u64, p), p);
            }
            total = (total + acc) % p;
        }
        total
    }

    /// All terms share one `β`-graded degree.
    pub fn beta_graded_degree(&self) -> Option<i64> {
        let mut degs = self.terms.iter().map(|(m, _)| m.beta_graded_degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }
}

pub(crate) fn swap_map(a: Var, b: Var) -> [usize; NVARS] {
    let mut map = identity_map();
    map[a.slot()] = b.slot();
    map[b.slot()] = a.slot();
    map
}

pub(crate) fn identity_map() -> [usize; NVARS] {
    let mut map = [0usize; NVARS];
    for (s, m) in map.iter_mut().enumerate() {
        *m = s;
    }
    map
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.mul_poly(rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Display for MPoly {
    /// Expanded form, leading (largest) term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly {
        MPoly::var(Var::x(i))
    }

    #[test]
    fn difference_of_squares() {
        let f = &(&x(1) * &x(1)) - &(&x(2) * &x(2));
        let g = &x(1) - &x(2);
        assert_eq!(f.exact_div_linear(&g).unwrap(), &x(1) + &x(2));
        assert_eq!(MPoly::zero().exact_div_linear(&g).unwrap(), MPoly::zero());
        let bad = &g + &MPoly::one();
        assert_eq!(bad.exact_div_linear(&g), Err(RingError::NotDivisible));
    }

    #[test]
    fn divide_by_one_plus_beta() {
        let t1 = Var::t(1);
        let f = MPoly::one_plus_beta(t1).mul_poly(&(&x(1) - &MPoly::var(t1)));
        assert_eq!(f.div_one_plus_beta(t1).unwrap(), &x(1) - &MPoly::var(t1));
        assert!(x(1).div_one_plus_beta(t1).is_err());
        assert!(MPoly::one().div_one_plus_beta(t1).is_err());
    }

    #[test]
    fn display_is_leading_first() {
        let f = &(&x(1) * &x(1)) - &MPoly::from_i64(3);
        assert_eq!(f.to_string(), "x1^2-3");
    }
}
