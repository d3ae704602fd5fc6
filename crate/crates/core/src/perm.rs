//! Permutations of `{1..n}` in one-line notation.
//!
//! Left multiplication `s_i * w` swaps the *values* `i` and `i+1`; right
//! multiplication `w * s_i` swaps the *positions* `i` and `i+1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("empty permutation")]
    Empty,
    #[error("invalid token `{0}` in permutation")]
    BadToken(String),
    #[error("{0:?} is not a bijection on 1..{1}")]
    NotBijective(Vec<usize>, usize),
    #[error("permutations live in different symmetric groups (S_{0} vs S_{1})")]
    SizeMismatch(usize, usize),
    #[error("simple transposition s_{0} is out of range for S_{1}")]
    BadGenerator(usize, usize),
}

/// A permutation `w` of `{1..n}` stored as its one-line word `w(1) w(2) … w(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation {
    word: Vec<u8>,
}

/// Minimal descent, with `+∞` for the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MinDes {
    At(usize),
    Infinity,
}

impl MinDes {
    /// `k <= mindes`
    pub fn at_least(self, k: usize) -> bool {
        match self {
            MinDes::At(d) => k <= d,
            MinDes::Infinity => true,
        }
    }
}

impl fmt::Display for MinDes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinDes::At(d) => write!(f, "{d}"),
            MinDes::Infinity => write!(f, "inf"),
        }
    }
}

impl Permutation {
    pub fn from_word(word: Vec<usize>) -> Result<Self, PermError> {
        let n = word.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n || seen[x] || x > u8::MAX as usize {
                return Err(PermError::NotBijective(word.clone(), n));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            word: word.into_iter().map(|x| x as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    /// The longest element `n … 2 1`.
    pub fn longest(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            word: (1..=n as u8).rev().collect(),
        }
    }

    /// The simple transposition `s_i` in `S_n`.
    pub fn simple(i: usize, n: usize) -> Self {
        assert!(i >= 1 && i < n);
        let mut p = Self::identity(n);
        p.word.swap(i - 1, i);
        p
    }

    /// The transposition `t_{ij}` in `S_n`.
    pub fn transposition(i: usize, j: usize, n: usize) -> Self {
        assert!(i >= 1 && j >= 1 && i <= n && j <= n && i != j);
        let mut p = Self::identity(n);
        p.word.swap(i - 1, j - 1);
        p
    }

    /// `u_0 = n (n-1) … (n-k+1) 1 2 … (n-k)`: the longest permutation with
    /// `maxdes <= k`.
    pub fn longest_separated(n: usize, k: usize) -> Self {
        assert!(n >= 1 && k <= n);
        let word = (0..n)
            .map(|i| if i < k { n - i } else { i + 1 - k })
            .collect();
        Self::from_word(word).expect("u_0 is a permutation")
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// `w(i)`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &x) in self.word.iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        Permutation { word: inv }
    }

    /// Position of the value `x`, 1-based (`w^{-1}(x)`).
    pub fn position(&self, x: usize) -> usize {
        self.word.iter().position(|&y| y as usize == x).expect("value in range") + 1
    }

    /// Composition `(self ∘ other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.n() != other.n() {
            return Err(PermError::SizeMismatch(self.n(), other.n()));
        }
        Ok(Permutation {
            word: other.word.iter().map(|&j| self.word[j as usize - 1]).collect(),
        })
    }

    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Descent positions `{i : w(i) > w(i+1)}`.
    pub fn descents(&self) -> impl Iterator<Item = usize> + '_ {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] > p[1])
            .map(|(i, _)| i + 1)
    }

    /// `maxdes`, 0 for the identity.
    pub fn maxdes(&self) -> usize {
        self.descents().last().unwrap_or(0)
    }

    pub fn mindes(&self) -> MinDes {
        self.descents().next().map_or(MinDes::Infinity, MinDes::At)
    }

    /// Whether `w(i) > w(i+1)`, i.e. `w s_i < w`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.word[i - 1] > self.word[i]
    }

    /// Whether `s_i w < w`, i.e. `i+1` appears before `i` in the word.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.position(i + 1) < self.position(i)
    }

    /// `s_i w`: swap the values `i` and `i+1`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.n(), "s_{i} outside S_{}", self.n());
        let mut word = self.word.clone();
        for x in word.iter_mut() {
            if *x as usize == i {
                *x += 1;
            } else if *x as usize == i + 1 {
                *x -= 1;
            }
        }
        Permutation { word }
    }

    /// `w s_i`: swap the positions `i` and `i+1`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.n(), "s_{i} outside S_{}", self.n());
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Permutation { word }
    }

    /// 0-Hecke product `s_i * w`.
    pub fn hecke_mul_left(&self, i: usize) -> Self {
        if self.has_left_descent(i) {
            self.clone()
        } else {
            self.left_mul_simple(i)
        }
    }

    /// 0-Hecke product `w * s_i`.
    pub fn hecke_mul_right(&self, i: usize) -> Self {
        if self.has_right_descent(i) {
            self.clone()
        } else {
            self.right_mul_simple(i)
        }
    }

    /// Append fixed points up to `S_m`.
    pub fn embed(&self, m: usize) -> Self {
        assert!(m >= self.n());
        let mut word = self.word.clone();
        word.extend(self.n() as u8 + 1..=m as u8);
        Permutation { word }
    }

    /// Drop trailing fixed points (never below `S_1`).
    pub fn trimmed(&self) -> Self {
        let mut m = self.n();
        while m > 1 && self.word[m - 1] as usize == m {
            m -= 1;
        }
        Permutation {
            word: self.word[..m].to_vec(),
        }
    }

    /// Lexicographically smallest reduced word, found greedily by taking the
    /// first left descent at every step. `self = s_{i1} s_{i2} … s_{il}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut rest = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(i) = (1..rest.n()).find(|&i| rest.has_left_descent(i)) {
            word.push(i);
            rest = rest.left_mul_simple(i);
        }
        word
    }

    /// Every reduced word of `self`, in lexicographic order.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        if self.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 1..self.n() {
            if self.has_left_descent(i) {
                for mut tail in self.left_mul_simple(i).all_reduced_words() {
                    tail.insert(0, i);
                    out.push(tail);
                }
            }
        }
        out
    }

    /// Bruhat order by the tableau criterion.
    pub fn bruhat_le(&self, other: &Self) -> bool {
        assert_eq!(self.n(), other.n());
        let n = self.n();
        for i in 1..n {
            let mut a: Vec<u8> = self.word[..i].to_vec();
            let mut b: Vec<u8> = other.word[..i].to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// All of `S_n` in lexicographic order of words.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut word: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Permutation { word: word.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| word[i] < word[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| word[j] > word[i]).unwrap();
            word.swap(i, j);
            word[i + 1..].reverse();
        }
        out
    }
}

/// `maxdes(u) <= k <= mindes(v)`.
pub fn separated_descents(u: &Permutation, v: &Permutation, k: usize) -> bool {
    u.maxdes() <= k && v.mindes().at_least(k)
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts `"42135"` (for `n <= 9`) or `"4,2,1,3,5"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermError::Empty);
        }
        let word: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<usize>()
                        .map_err(|_| PermError::BadToken(tok.to_string()))
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| PermError::BadToken(c.to_string()))
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::from_word(word)
    }
}

impl TryFrom<String> for Permutation {
    type Error = PermError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}

impl fmt::Display for Permutation {
    /// Digit string when `n <= 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for x in &self.word {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Ordering by length first, then word; used for deterministic traversal.
pub fn by_length(a: &Permutation, b: &Permutation) -> Ordering {
    a.length().cmp(&b.length()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn brute_inversions(w: &[usize]) -> usize {
        let mut c = 0;
        for i in 0..w.len() {
            for j in 0..w.len() {
                if i < j && w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn parse_both_syntaxes() {
        assert_eq!(p("42135").word(), vec![4, 2, 1, 3, 5]);
        assert_eq!(p("4,2,1,3,5"), p("42135"));
        assert!(p("1").is_identity());
        assert_eq!(p("1").n(), 1);
        let long: Permutation = "1,12,2,3,4,5,6,7,8,9,10,11".parse().unwrap();
        assert_eq!(long.n(), 12);
        assert_eq!(long.to_string(), "1,12,2,3,4,5,6,7,8,9,10,11");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("".parse::<Permutation>(), Err(PermError::Empty)));
        assert!(matches!(
            "1,12,2,12".parse::<Permutation>(),
            Err(PermError::NotBijective(..))
        ));
        assert!(matches!("1224".parse::<Permutation>(), Err(PermError::NotBijective(..))));
        assert!(matches!("12a".parse::<Permutation>(), Err(PermError::BadToken(_))));
        assert!(matches!("0".parse::<Permutation>(), Err(PermError::NotBijective(..))));
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(p("42135").length(), brute_inversions(&[4, 2, 1, 3, 5]));
        assert_eq!(p("42135").length(), 4);
        assert_eq!(Permutation::longest(4).length(), 6);
    }

    #[test]
    fn descent_statistics() {
        let id = Permutation::identity(4);
        assert_eq!(id.maxdes(), 0);
        assert_eq!(id.mindes(), MinDes::Infinity);
        assert_eq!(p("42135").maxdes(), 2);
        assert_eq!(p("14532").mindes(), MinDes::At(3));
    }

    #[test]
    fn separated() {
        assert!(separated_descents(&p("42135"), &p("14532"), 2));
        assert!(!separated_descents(&p("14532"), &p("42135"), 2));
        let id = Permutation::identity(4);
        for k in 0..=4 {
            assert!(separated_descents(&id, &id, k));
        }
    }

    #[test]
    fn longest_separated_values() {
        assert_eq!(Permutation::longest_separated(5, 2), p("54123"));
        assert!(Permutation::longest_separated(5, 0).is_identity());
        assert_eq!(Permutation::longest_separated(4, 4), Permutation::longest(4));
        // it is the longest among maxdes <= k
        for n in 1..=5 {
            for k in 0..=n {
                let u0 = Permutation::longest_separated(n, k);
                assert!(u0.maxdes() <= k);
                let best = Permutation::all(n)
                    .into_iter()
                    .filter(|u| u.maxdes() <= k)
                    .map(|u| u.length())
                    .max()
                    .unwrap();
                assert_eq!(u0.length(), best);
            }
        }
    }

    #[test]
    fn hecke_examples() {
        assert_eq!(p("12").hecke_mul_left(1), p("21"));
        assert_eq!(p("21").hecke_mul_left(1), p("21"));
        assert_eq!(p("132").hecke_mul_left(2), p("132"));
    }

    #[test]
    fn length_changes_by_one() {
        for n in 2..=5 {
            for w in Permutation::all(n) {
                for i in 1..n {
                    let l = w.length();
                    let a = w.left_mul_simple(i).length();
                    let b = w.right_mul_simple(i).length();
                    assert!(a == l + 1 || a + 1 == l);
                    assert!(b == l + 1 || b + 1 == l);
                    assert_eq!(a < l, w.has_left_descent(i));
                    assert_eq!(b < l, w.has_right_descent(i));
                }
            }
        }
    }

    #[test]
    fn hecke_monoid_laws() {
        for n in 2..=4 {
            let all = Permutation::all(n);
            for w in &all {
                for i in 1..n {
                    let once = w.hecke_mul_left(i);
                    assert_eq!(once.hecke_mul_left(i), once);
                    assert_eq!(w.hecke_mul_right(i).hecke_mul_right(i), w.hecke_mul_right(i));
                    for j in 1..n {
                        // (s_i * w) * s_j == s_i * (w * s_j)
                        assert_eq!(
                            w.hecke_mul_left(i).hecke_mul_right(j),
                            w.hecke_mul_right(j).hecke_mul_left(i)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn separated_moves_are_closed() {
        for n in 2..=4 {
            for k in 0..=n {
                for u in Permutation::all(n).into_iter().filter(|u| u.maxdes() <= k) {
                    for i in 1..n {
                        let pos_i = u.position(i);
                        if pos_i <= k && pos_i < u.position(i + 1) {
                            assert!(u.left_mul_simple(i).maxdes() <= k);
                        }
                    }
                }
                for v in Permutation::all(n).into_iter().filter(|v| v.mindes().at_least(k)) {
                    for i in 1..n {
                        if v.has_left_descent(i) {
                            assert!(v.left_mul_simple(i).mindes().at_least(k));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_words() {
        for n in 1..=4 {
            for w in Permutation::all(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                let mut acc = Permutation::identity(n);
                for &i in word.iter().rev() {
                    acc = acc.left_mul_simple(i);
                }
                assert_eq!(acc, w);
                let all = w.all_reduced_words();
                assert_eq!(all[0], word);
            }
        }
        assert_eq!(Permutation::longest(3).all_reduced_words().len(), 2);
    }

    #[test]
    fn enumeration_and_embedding() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(p("21").embed(4), p("2134"));
        assert_eq!(p("2134").trimmed(), p("21"));
        assert_eq!(Permutation::identity(3).trimmed(), p("1"));
        let w = p("2134");
        assert_eq!(w.maxdes(), p("21").maxdes());
        assert_eq!(w.mindes(), p("21").mindes());
    }

    #[test]
    fn bruhat() {
        assert!(p("123").bruhat_le(&p("321")));
        assert!(p("213").bruhat_le(&p("231")));
        assert!(!p("231").bruhat_le(&p("312")));
        assert!(!p("312").bruhat_le(&p("231")));
    }
}
