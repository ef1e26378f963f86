//! Symmetric group combinatorics in one-line notation.
//!
//! A permutation `w` stores `w(1), ..., w(n)`. Composition is `(u∘v)(k) = u(v(k))`
//! and `w` acts on variables by `x_k ↦ x_{w(k)}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

/// An inversion `(a, b)` of `w`: positions `a < b` with `w(a) > w(b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inversion {
    pub a: usize,
    pub b: usize,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// The simple transposition `s_i` swapping `i` and `i+1`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        check_simple(n, i)?;
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    /// The transposition of the values `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::InvalidPermutation(format!("transposition ({a} {b}) in S_{n}")));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    pub fn longest(n: usize) -> Self {
        Permutation { images: (1..=n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(k)` for `1 ≤ k ≤ n`.
    pub fn image(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch { left: self.n(), right: other.n() });
        }
        Ok(Permutation { images: other.images.iter().map(|&k| self.images[k - 1]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    /// `w ∘ s_i`, which swaps positions `i` and `i+1`.
    pub fn mul_simple_right(&self, i: usize) -> Result<Permutation> {
        check_simple(self.n(), i)?;
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    /// `s_i ∘ w`, which swaps the values `i` and `i+1`.
    pub fn mul_simple_left(&self, i: usize) -> Result<Permutation> {
        check_simple(self.n(), i)?;
        let images = self
            .images
            .iter()
            .map(|&v| if v == i { i + 1 } else if v == i + 1 { i } else { v })
            .collect();
        Ok(Permutation { images })
    }

    pub fn length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.images[a] > self.images[b] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn inversions(&self) -> Vec<Inversion> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if self.image(a) > self.image(b) {
                    out.push(Inversion { a, b });
                }
            }
        }
        out
    }

    /// Whether `ℓ(w s_i) > ℓ(w)`.
    pub fn is_right_ascent(&self, i: usize) -> bool {
        self.image(i) < self.image(i + 1)
    }

    /// Whether `ℓ(s_i w) > ℓ(w)`.
    pub fn is_left_ascent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.image(i) < inv.image(i + 1)
    }

    /// Canonical reduced word: strip the smallest right descent until the
    /// identity is reached, then read the stripped letters backwards.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut stripped = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.n()).find(|&i| !w.is_right_ascent(i)) {
            w.images.swap(i - 1, i);
            stripped.push(i);
        }
        stripped.reverse();
        stripped
    }

    /// `s_{i_1} ∘ ... ∘ s_{i_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Permutation> {
        let mut w = Permutation::identity(n);
        for &i in word {
            w = w.mul_simple_right(i)?;
        }
        Ok(w)
    }

    /// Bruhat order via the rank-matrix criterion.
    pub fn bruhat_le(&self, other: &Permutation) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch { left: self.n(), right: other.n() });
        }
        let n = self.n();
        for i in 1..=n {
            for j in 1..=n {
                let count = |p: &Permutation| (1..=i).filter(|&a| p.image(a) >= j).count();
                if count(self) > count(other) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The permutations `v` with `v < w` and `ℓ(v) = ℓ(w) - 1`, paired with the
    /// inversion `(a, b)` such that `v = w ∘ (a b)`.
    pub fn lower_covers(&self) -> Vec<(Permutation, Inversion)> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                let (wa, wb) = (self.image(a), self.image(b));
                if wa <= wb {
                    continue;
                }
                if (a + 1..b).any(|c| wb < self.image(c) && self.image(c) < wa) {
                    continue;
                }
                let mut images = self.images.clone();
                images.swap(a - 1, b - 1);
                out.push((Permutation { images }, Inversion { a, b }));
            }
        }
        out.sort();
        out
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation { images: current.clone() });
                return;
            }
            for v in 1..=n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

fn check_simple(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        Err(Error::InvalidIndex { index: i, n })
    } else {
        Ok(())
    }
}

/// The statistic `m_{v,w} = #{c : a < c < b, w(b) < w(a) < w(c)}` where
/// `v = w ∘ (a b)` is a Bruhat cover.
pub fn m_count(v: &Permutation, w: &Permutation) -> Result<usize> {
    if v.n() != w.n() {
        return Err(Error::RankMismatch { left: v.n(), right: w.n() });
    }
    let inv = w
        .lower_covers()
        .into_iter()
        .find(|(u, _)| u == v)
        .map(|(_, inv)| inv)
        .ok_or_else(|| Error::NotACover { v: v.to_string(), w: w.to_string() })?;
    let (a, b) = (inv.a, inv.b);
    let (wa, wb) = (w.image(a), w.image(b));
    Ok((a + 1..b).filter(|&c| wb < wa && wa < w.image(c)).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn reduced_words() {
        assert_eq!(Permutation::longest(3).reduced_word(), vec![1, 2, 1]);
        assert_eq!(p(&[2, 3, 1]).reduced_word(), vec![1, 2]);
        for n in 1..=5 {
            for w in Permutation::all(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(Permutation::from_word(n, &word).unwrap(), w);
            }
        }
    }

    #[test]
    fn composition_convention() {
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        assert_eq!(s1.compose(&s2).unwrap(), p(&[2, 3, 1]));
        assert_eq!(s1.mul_simple_right(2).unwrap(), p(&[2, 3, 1]));
        assert_eq!(s2.mul_simple_left(1).unwrap(), p(&[2, 3, 1]));
    }

    #[test]
    fn covers_match_bruhat_and_length() {
        for n in 1..=4 {
            let all = Permutation::all(n);
            for w in &all {
                let brute: Vec<Permutation> = all
                    .iter()
                    .filter(|v| v.length() + 1 == w.length() && v.bruhat_le(w).unwrap())
                    .cloned()
                    .collect();
                let mut covers: Vec<Permutation> = w.lower_covers().into_iter().map(|(v, _)| v).collect();
                covers.sort();
                assert_eq!(covers, brute, "covers of {w}");
            }
        }
    }

    #[test]
    fn m_count_examples() {
        let w = p(&[2, 3, 1]);
        assert_eq!(m_count(&p(&[1, 3, 2]), &w).unwrap(), 1);
        assert_eq!(m_count(&p(&[2, 1, 3]), &w).unwrap(), 0);
        assert!(m_count(&Permutation::identity(3), &w).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::simple(3, 3).is_err());
        assert!(p(&[1, 2]).compose(&p(&[1, 2, 3])).is_err());
        assert!(serde_json::from_str::<Permutation>("[2,1,3]").is_ok());
        assert!(serde_json::from_str::<Permutation>("[2,2,3]").is_err());
    }
}
