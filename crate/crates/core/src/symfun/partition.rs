use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Partition {
    /// Accepts parts in any order; zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn single(k: usize) -> Self {
        if k == 0 {
            Partition::empty()
        } else {
            Partition(vec![k])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_part(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.max_part();
        Partition((1..=m).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn without_index(&self, i: usize) -> Partition {
        let mut v = self.0.clone();
        v.remove(i);
        Partition(v)
    }

    pub fn with_part(&self, k: usize) -> Partition {
        if k == 0 {
            return self.clone();
        }
        self.union(&Partition(vec![k]))
    }

    /// Cells `(row, column)`, 1-based, that can be added keeping a partition.
    pub fn addable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..=self.len() {
            let col = self.part(i) + 1;
            if i == 0 || self.part(i - 1) >= col {
                out.push((i + 1, col));
            }
        }
        out
    }

    /// Cells `(row, column)`, 1-based, that can be removed keeping a partition.
    pub fn removable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            if self.part(i) > self.part(i + 1) {
                out.push((i + 1, self.part(i)));
            }
        }
        out
    }

    pub fn add_cell(&self, row: usize) -> Partition {
        let mut v = self.0.clone();
        if row > v.len() {
            v.push(1);
        } else {
            v[row - 1] += 1;
        }
        Partition(v)
    }

    pub fn remove_cell(&self, row: usize) -> Partition {
        let mut v = self.0.clone();
        v[row - 1] -= 1;
        if v[row - 1] == 0 {
            v.pop();
        }
        Partition(v)
    }
}

/// All partitions of `n` with parts at most `max_part`, in decreasing lexicographic order.
pub fn partitions_bounded(n: usize, max_part: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, &mut Vec::new(), &mut out);
    out
}

pub fn partitions(n: usize) -> Vec<Partition> {
    partitions_bounded(n, n)
}

/// Partitions of `n` with at most `rows` parts.
pub fn partitions_max_len(n: usize, rows: usize) -> Vec<Partition> {
    partitions(n).into_iter().filter(|p| p.len() <= rows).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let counts: Vec<usize> = (0..=12).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        for n in 0..=10 {
            for k in 1..=4 {
                assert_eq!(partitions_bounded(n, k).len(), partitions_max_len(n, k).len());
            }
        }
    }

    #[test]
    fn cells() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(p.addable_cells(), vec![(1, 3), (2, 2), (3, 1)]);
        assert_eq!(p.removable_cells(), vec![(1, 2), (2, 1)]);
        assert_eq!(p.conjugate(), p);
        assert_eq!(Partition::new(vec![3, 1]).unwrap().conjugate().parts(), &[2, 1, 1]);
    }
}
