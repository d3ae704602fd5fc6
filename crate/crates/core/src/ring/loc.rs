use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::int::Int;
use super::mono::{Family, Monomial, Var, NVARS};
use super::poly::{identity_map, mul_mod, pow_mod, swap_map, MPoly};
use super::RingError;

/// Prime used for fast evaluation-based checks.
pub(crate) const PRIME: u64 = (1 << 61) - 1;

/// Fixed pseudo-random evaluation point, one value per variable slot.
pub(crate) fn probe_point() -> [u64; NVARS] {
    let mut vals = [0u64; NVARS];
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    for v in vals.iter_mut() {
        // splitmix64
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        *v = z % (PRIME - 2) + 2;
    }
    vals
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Element `num / ∏ (1 + β v)^{den[v]}` of the localized ring.
///
/// Always normalized: no denominator factor divides the numerator, and zero
/// has an empty denominator. The representation is therefore unique and
/// derived equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocElem {
    num: MPoly,
    den: [u8; NVARS],
}

impl Default for LocElem {
    fn default() -> Self {
        LocElem::zero()
    }
}

impl LocElem {
    pub fn zero() -> LocElem {
        LocElem {
            num: MPoly::zero(),
            den: [0; NVARS],
        }
    }

    pub fn one() -> LocElem {
        LocElem::from_poly(MPoly::one())
    }

    pub fn from_i64(c: i64) -> LocElem {
        LocElem::from_poly(MPoly::from_i64(c))
    }

    pub fn from_poly(num: MPoly) -> LocElem {
        LocElem {
            num,
            den: [0; NVARS],
        }
    }

    pub fn var(v: Var) -> LocElem {
        LocElem::from_poly(MPoly::var(v))
    }

    pub fn beta() -> LocElem {
        LocElem::var(Var::BETA)
    }

    /// Builds `num / ∏ (1+β v)^e` and normalizes.
    pub fn from_parts(num: MPoly, den: &[(Var, u32)]) -> LocElem {
        let mut d = [0u8; NVARS];
        for &(v, e) in den {
            assert!(v != Var::BETA, "denominator factor in beta");
            d[v.slot()] = u8::try_from(d[v.slot()] as u32 + e).expect("denominator exponent overflow");
        }
        LocElem { num, den: d }.normalized()
    }

    /// `a ⊖ b = (a - b)/(1 + β b)` for two variables.
    pub fn ominus_vars(a: Var, b: Var) -> LocElem {
        if a == b {
            return LocElem::zero();
        }
        LocElem::from_parts(&MPoly::var(a) - &MPoly::var(b), &[(b, 1)])
    }

    /// `1 + β e`
    pub fn one_plus_beta(e: &LocElem) -> LocElem {
        &LocElem::one() + &(&LocElem::beta() * e)
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    /// Denominator factors `(v, e)` meaning `(1 + β v)^e`, in canonical order.
    pub fn den(&self) -> Vec<(Var, u32)> {
        self.den
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(s, &e)| (Var::from_slot(s), e as u32))
            .collect()
    }

    pub fn den_is_one(&self) -> bool {
        self.den.iter().all(|&e| e == 0)
    }

    /// Families occurring in the denominator.
    pub fn den_families(&self) -> Vec<Family> {
        let mut fams: Vec<Family> = self.den().into_iter().map(|(v, _)| v.family).collect();
        fams.dedup();
        fams
    }

    pub fn den_poly(&self) -> MPoly {
        let mut out = MPoly::one();
        for (v, e) in self.den() {
            out = out.mul_one_plus_beta_pow(v, e);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den_is_one()
    }

    /// The element as a polynomial, if its denominator is trivial.
    pub fn as_poly(&self) -> Option<&MPoly> {
        self.den_is_one().then_some(&self.num)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den[v.slot()] > 0
    }

    /// `β`-graded degree (`deg β = -1`), if homogeneous. Denominator factors
    /// have degree zero.
    pub fn beta_graded_degree(&self) -> Option<i64> {
        self.num.beta_graded_degree()
    }

    /// Whether this is a polynomial with nonnegative integer coefficients.
    pub fn is_nonnegative_polynomial(&self) -> bool {
        self.den_is_one() && self.num.all_coefficients_nonnegative()
    }

    fn normalized(mut self) -> LocElem {
        if self.num.is_zero() {
            self.den = [0; NVARS];
            return self;
        }
        if self.den_is_one() {
            return self;
        }
        let point = probe_point();
        for slot in 1..NVARS {
            while self.den[slot] > 0 {
                let v = Var::from_slot(slot);
                if !maybe_divisible(&self.num, v, &point) {
                    break;
                }
                match self.num.div_one_plus_beta(v) {
                    Ok(q) => {
                        self.num = q;
                        self.den[slot] -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        self
    }

    /// Multiplicative inverse of `± ∏ (1+β v)^{e_v}` (exponents of either sign).
    pub fn unit_inverse(&self) -> Result<LocElem, RingError> {
        if self.num.is_zero() {
            return Err(RingError::NotUnit);
        }
        let point = probe_point();
        let mut rest = self.num.clone();
        let mut exps = [0u8; NVARS];
        for v in self.num.variables() {
            if v == Var::BETA {
                continue;
            }
            while maybe_divisible(&rest, v, &point) {
                match rest.div_one_plus_beta(v) {
                    Ok(q) => {
                        rest = q;
                        exps[v.slot()] += 1;
                    }
                    Err(_) => break,
                }
            }
        }
        let sign = rest.as_constant().ok_or(RingError::NotUnit)?;
        if !(sign.is_one() || (-&sign).is_one()) {
            return Err(RingError::NotUnit);
        }
        Ok(LocElem {
            num: self.den_poly().scale(&sign),
            den: exps,
        }
        .normalized())
    }

    /// `(self - b)/(1 + β b)`, where `1 + β b` must be a unit of the ring.
    pub fn ominus(&self, b: &LocElem) -> Result<LocElem, RingError> {
        let inv = LocElem::one_plus_beta(b).unit_inverse()?;
        Ok(&(self - b) * &inv)
    }

    pub fn scale(&self, c: &Int) -> LocElem {
        LocElem {
            num: self.num.scale(c),
            den: self.den,
        }
        .normalized()
    }

    pub fn pow(&self, e: u32) -> LocElem {
        let mut out = LocElem::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact division by a linear polynomial coprime to the denominator.
    pub fn exact_div(&self, g: &MPoly) -> Result<LocElem, RingError> {
        Ok(LocElem {
            num: self.num.exact_div_linear(g)?,
            den: self.den,
        }
        .normalized())
    }

    /// Exchange two variables (both in numerator and denominator).
    pub fn swap_vars(&self, a: Var, b: Var) -> LocElem {
        let map = swap_map(a, b);
        LocElem {
            num: self.num.remap(&map),
            den: remap_den(&self.den, &map),
        }
    }

    /// Replace every variable of family `from` by the same-index variable of
    /// family `to`.
    pub fn rename_family(&self, from: Family, to: Family) -> LocElem {
        let mut s = Substitution::new();
        for i in 1..=super::MAX_INDEX {
            s = s.rename(Var::new(from, i), Var::new(to, i));
        }
        self.substitute(&s).expect("renaming never fails")
    }

    /// Set `β = 0`.
    pub fn beta_zero(&self) -> LocElem {
        LocElem::from_poly(self.num.zero_var(Var::BETA))
    }

    /// Set every variable of `family` to zero.
    pub fn zero_family(&self, family: Family) -> LocElem {
        let mut s = Substitution::new();
        for i in 1..=super::MAX_INDEX {
            s = s.zero(Var::new(family, i));
        }
        self.substitute(&s).expect("zeroing never fails")
    }

    pub fn substitute(&self, s: &Substitution) -> Result<LocElem, RingError> {
        if let Some(map) = s.as_renaming() {
            return Ok(self.substitute_renaming(&map));
        }
        let num = s.apply_poly(&self.num)?;
        let mut out = num;
        for (v, e) in self.den() {
            let factor = s.apply_poly(&MPoly::one_plus_beta(v))?;
            let inv = factor.unit_inverse()?;
            out = &out * &inv.pow(e);
        }
        Ok(out)
    }

    /// Fast path: each slot goes to a slot or to zero (`None`).
    fn substitute_renaming(&self, map: &[Option<usize>; NVARS]) -> LocElem {
        let mut slot_map = identity_map();
        for s in 0..NVARS {
            if let Some(t) = map[s] {
                slot_map[s] = t;
            }
        }
        let terms: Vec<(Monomial, Int)> = self
            .num
            .terms()
            .iter()
            .filter(|(m, _)| (0..NVARS).all(|s| map[s].is_some() || m.exp_slot(s) == 0))
            .map(|(m, c)| (m.remap(&slot_map), c.clone()))
            .collect();
        let beta_dies = map[0].is_none();
        let mut den = [0u8; NVARS];
        if !beta_dies {
            for s in 1..NVARS {
                if self.den[s] > 0 {
                    if let Some(t) = map[s] {
                        den[t] += self.den[s];
                    }
                }
            }
        }
        LocElem {
            num: MPoly::from_terms(terms),
            den,
        }
        .normalized()
    }

    /// Evaluate modulo a prime; `None` if the denominator vanishes.
    pub fn eval_mod(&self, values: &[u64; NVARS], p: u64) -> Option<u64> {
        let n = self.num.eval_mod(values, p);
        let d = self.den_poly().eval_mod(values, p);
        (d != 0).then(|| mul_mod(n, inv_mod(d, p), p))
    }
}

fn remap_den(den: &[u8; NVARS], map: &[usize; NVARS]) -> [u8; NVARS] {
    let mut out = [0u8; NVARS];
    for s in 0..NVARS {
        if den[s] > 0 {
            out[map[s]] += den[s];
        }
    }
    out
}

/// Cheap necessary condition for `(1 + β v) | f`: `f` vanishes at a probe
/// point on the hypersurface `v = -1/β`.
fn maybe_divisible(f: &MPoly, v: Var, point: &[u64; NVARS]) -> bool {
    if !f.contains_var(Var::BETA) && !f.contains_var(v) {
        return false;
    }
    let mut pt = *point;
    pt[v.slot()] = (PRIME - inv_mod(pt[0], PRIME)) % PRIME;
    f.eval_mod(&pt, PRIME) == 0
}

/// A simultaneous substitution of variables by ring elements.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    images: Vec<(Var, LocElem)>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn set(mut self, v: Var, image: LocElem) -> Substitution {
        self.images.retain(|(w, _)| *w != v);
        self.images.push((v, image));
        self
    }

    pub fn rename(self, from: Var, to: Var) -> Substitution {
        self.set(from, LocElem::var(to))
    }

    pub fn zero(self, v: Var) -> Substitution {
        self.set(v, LocElem::zero())
    }

    fn image(&self, v: Var) -> Option<&LocElem> {
        self.images.iter().find(|(w, _)| *w == v).map(|(_, e)| e)
    }

    fn as_renaming(&self) -> Option<[Option<usize>; NVARS]> {
        let mut map: [Option<usize>; NVARS] = std::array::from_fn(Some);
        for (v, e) in &self.images {
            if e.is_zero() {
                map[v.slot()] = None;
                continue;
            }
            let num = e.as_poly()?;
            let [(m, c)] = num.terms() else { return None };
            if !c.is_one() || m.total_degree() != 1 {
                return None;
            }
            let (w, _) = m.support().next()?;
            // β may only stay put or vanish.
            if (*v == Var::BETA) != (w == Var::BETA) {
                return None;
            }
            map[v.slot()] = Some(w.slot());
        }
        Some(map)
    }

    fn apply_poly(&self, f: &MPoly) -> Result<LocElem, RingError> {
        let mut out = LocElem::zero();
        let mut powers: Vec<Vec<LocElem>> = vec![Vec::new(); NVARS];
        for (m, c) in f.terms() {
            let mut term = LocElem::from_poly(MPoly::constant(c.clone()));
            for (v, e) in m.support() {
                let base = match self.image(v) {
                    Some(img) => img.clone(),
                    None => LocElem::var(v),
                };
                let cache = &mut powers[v.slot()];
                if cache.is_empty() {
                    cache.push(LocElem::one());
                }
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &base;
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

impl Add for &LocElem {
    type Output = LocElem;
    fn add(self, rhs: &LocElem) -> LocElem {
        combine(self, rhs, false)
    }
}

impl Sub for &LocElem {
    type Output = LocElem;
    fn sub(self, rhs: &LocElem) -> LocElem {
        combine(self, rhs, true)
    }
}

fn combine(a: &LocElem, b: &LocElem, subtract: bool) -> LocElem {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if subtract { -b } else { b.clone() };
    }
    if a.den == b.den {
        let num = if subtract { &a.num - &b.num } else { &a.num + &b.num };
        return LocElem { num, den: a.den }.normalized();
    }
    let mut den = [0u8; NVARS];
    let mut na = a.num.clone();
    let mut nb = b.num.clone();
    for s in 1..NVARS {
        den[s] = a.den[s].max(b.den[s]);
        if den[s] > a.den[s] {
            na = na.mul_one_plus_beta_pow(Var::from_slot(s), (den[s] - a.den[s]) as u32);
        }
        if den[s] > b.den[s] {
            nb = nb.mul_one_plus_beta_pow(Var::from_slot(s), (den[s] - b.den[s]) as u32);
        }
    }
    let num = if subtract { &na - &nb } else { &na + &nb };
    LocElem { num, den }.normalized()
}

impl Mul for &LocElem {
    type Output = LocElem;
    fn mul(self, rhs: &LocElem) -> LocElem {
        if self.is_zero() || rhs.is_zero() {
            return LocElem::zero();
        }
        let mut den = self.den;
        for (d, e) in den.iter_mut().zip(rhs.den.iter()) {
            *d = d.checked_add(*e).expect("denominator exponent overflow");
        }
        let reduce = den.iter().any(|&e| e > 0);
        let out = LocElem {
            num: &self.num * &rhs.num,
            den,
        };
        if reduce {
            out.normalized()
        } else {
            out
        }
    }
}

impl Neg for &LocElem {
    type Output = LocElem;
    fn neg(self) -> LocElem {
        LocElem {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl From<MPoly> for LocElem {
    fn from(p: MPoly) -> LocElem {
        LocElem::from_poly(p)
    }
}

impl fmt::Display for LocElem {
    /// Expanded numerator over explicit `(1+b*v)` factors, e.g.
    /// `(t1-y1)/(1+b*y1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.den();
        if den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() == 1 && !self.num.terms()[0].1.is_negative() {
            write!(f, "{}/", self.num)?;
        } else {
            write!(f, "({})/", self.num)?;
        }
        let single = den.len() == 1 && den[0].1 == 1;
        if !single {
            write!(f, "(")?;
        }
        for (idx, (v, e)) in den.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            write!(f, "(1+b*{v})")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if !single {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LocElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize) -> Var {
        Var::t(i)
    }
    fn y(i: usize) -> Var {
        Var::y(i)
    }

    #[test]
    fn ominus_clears_against_its_denominator() {
        let a = LocElem::ominus_vars(t(1), y(1));
        let prod = &a * &LocElem::from_poly(MPoly::one_plus_beta(y(1)));
        assert_eq!(prod, &LocElem::var(t(1)) - &LocElem::var(y(1)));
        assert!(prod.den_is_one());
        assert!(LocElem::ominus_vars(t(1), t(1)).is_zero());
        let x1 = LocElem::var(Var::x(1));
        assert_eq!(x1.ominus(&LocElem::zero()).unwrap(), x1);
    }

    #[test]
    fn composite_ominus() {
        let j = 2;
        let lhs = LocElem::ominus_vars(t(j), y(2))
            .ominus(&LocElem::ominus_vars(t(j), y(1)))
            .unwrap();
        assert_eq!(lhs, LocElem::ominus_vars(y(1), y(2)));
    }

    #[test]
    fn unit_ratio_equals_shifted_ominus() {
        let ratio = LocElem::from_parts(MPoly::one_plus_beta(t(1)), &[(y(1), 1)]);
        let other = LocElem::one_plus_beta(&LocElem::ominus_vars(t(1), y(1)));
        assert_eq!(ratio, other);
        assert_ne!(ratio, &ratio + &LocElem::one());
        let inv = ratio.unit_inverse().unwrap();
        assert!((&inv * &ratio).is_one());
    }

    #[test]
    fn zero_has_empty_denominator() {
        let a = LocElem::ominus_vars(t(1), y(1));
        let z = &a - &a;
        assert!(z.is_zero());
        assert!(z.den_is_one());
        assert_eq!(z, LocElem::zero());
    }

    #[test]
    fn substitutions() {
        let a = LocElem::ominus_vars(t(1), y(1));
        let s = Substitution::new().rename(y(1), t(1));
        assert!(a.substitute(&s).unwrap().is_zero());
        let b = LocElem::one_plus_beta(&a);
        assert!(b.beta_zero().is_one());
        let g = LocElem::ominus_vars(Var::x(1), t(1));
        let s = Substitution::new().rename(Var::x(1), t(1));
        assert!(g.substitute(&s).unwrap().is_zero());
        // general path: x1 -> t1 ⊖ y1 inside (1+b*x1)^{-1}
        let h = LocElem::from_parts(MPoly::one(), &[(Var::x(1), 1)]);
        let s = Substitution::new().set(Var::x(1), a.clone());
        let got = h.substitute(&s).unwrap();
        assert_eq!(got, LocElem::one_plus_beta(&a).unit_inverse().unwrap());
    }

    #[test]
    fn exact_division() {
        let x1 = MPoly::var(Var::x(1));
        let x2 = MPoly::var(Var::x(2));
        let f = LocElem::from_poly(&(&x1 * &x1) - &(&x2 * &x2));
        let g = &x1 - &x2;
        assert_eq!(f.exact_div(&g).unwrap(), LocElem::from_poly(&x1 + &x2));
        assert!(LocElem::zero().exact_div(&g).unwrap().is_zero());
        let bad = LocElem::from_poly(&g + &MPoly::one());
        assert_eq!(bad.exact_div(&g), Err(RingError::NotDivisible));
    }

    #[test]
    fn display() {
        assert_eq!(LocElem::ominus_vars(t(1), y(1)).to_string(), "(t1-y1)/(1+b*y1)");
    }
}
