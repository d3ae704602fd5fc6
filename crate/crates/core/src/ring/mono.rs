use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest index supported for each of the `x`, `t`, `y` families.
pub const MAX_INDEX: usize = 12;

/// Number of variable slots: `β` plus three indexed families.
pub const NVARS: usize = 1 + 3 * MAX_INDEX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Beta,
    X,
    T,
    Y,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::Beta => 'b',
            Family::X => 'x',
            Family::T => 't',
            Family::Y => 'y',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c {
            'b' | 'β' => Some(Family::Beta),
            'x' => Some(Family::X),
            't' => Some(Family::T),
            'y' => Some(Family::Y),
            _ => None,
        }
    }
}

/// One of `β, x_i, t_i, y_i`. The index is ignored (and 0) for `β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var {
    pub family: Family,
    pub index: u8,
}

impl Var {
    pub const BETA: Var = Var {
        family: Family::Beta,
        index: 0,
    };

    pub fn new(family: Family, index: usize) -> Var {
        if family == Family::Beta {
            return Var::BETA;
        }
        assert!(
            (1..=MAX_INDEX).contains(&index),
            "variable index {index} outside 1..={MAX_INDEX}"
        );
        Var {
            family,
            index: index as u8,
        }
    }

    pub fn x(i: usize) -> Var {
        Var::new(Family::X, i)
    }
    pub fn t(i: usize) -> Var {
        Var::new(Family::T, i)
    }
    pub fn y(i: usize) -> Var {
        Var::new(Family::Y, i)
    }

    /// Position of this variable in a [`Monomial`] exponent array; follows the
    /// canonical family order `β < x < t < y`, then index.
    pub fn slot(self) -> usize {
        let i = self.index as usize;
        match self.family {
            Family::Beta => 0,
            Family::X => i,
            Family::T => MAX_INDEX + i,
            Family::Y => 2 * MAX_INDEX + i,
        }
    }

    pub fn from_slot(slot: usize) -> Var {
        match slot {
            0 => Var::BETA,
            s if s <= MAX_INDEX => Var::x(s),
            s if s <= 2 * MAX_INDEX => Var::t(s - MAX_INDEX),
            s => Var::y(s - 2 * MAX_INDEX),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Beta => write!(f, "b"),
            fam => write!(f, "{}{}", fam.letter(), self.index),
        }
    }
}

/// Exponent vector over all variable slots.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; NVARS],
}

impl Default for Monomial {
    fn default() -> Self {
        Monomial::ONE
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; NVARS] };

    pub fn var(v: Var) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[v.slot()] = 1;
        m
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.exps[v.slot()] as u32
    }

    pub fn exp_slot(&self, slot: usize) -> u32 {
        self.exps[slot] as u32
    }

    pub fn set_exp(&mut self, v: Var, e: u32) {
        self.exps[v.slot()] = u8::try_from(e).expect("exponent overflow");
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Degree with `deg(β) = -1` and every other variable of degree 1.
    pub fn beta_graded_degree(&self) -> i64 {
        self.total_degree() as i64 - 2 * self.exps[0] as i64
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial { exps }
    }

    /// Variables with nonzero exponent, in canonical order.
    pub fn support(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(s, &e)| (Var::from_slot(s), e as u32))
    }

    /// Apply a slot permutation/merge: the exponent of slot `s` moves to `map[s]`.
    pub fn remap(&self, map: &[usize; NVARS]) -> Monomial {
        let mut exps = [0u8; NVARS];
        for (s, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                let t = map[s];
                exps[t] = exps[t].checked_add(e).expect("exponent overflow");
            }
        }
        Monomial { exps }
    }

    pub fn without(&self, v: Var) -> Monomial {
        let mut m = *self;
        m.exps[v.slot()] = 0;
        m
    }
}

impl Ord for Monomial {
    /// Graded: total degree first, then exponents compared slot by slot in
    /// the canonical variable order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.support() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
