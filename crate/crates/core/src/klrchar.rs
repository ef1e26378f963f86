//! Downfree characters of simply-laced KLR algebras on colored permutations.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::nilhecke::Side;
use crate::polyring::ZPoly;
use crate::weyl::Permutation;
use crate::{Error, Result};

/// Simply-laced Dynkin graph on named colors. The orientation is kept as data
/// only; characters depend on the dot product alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinGraph {
    names: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
    orientation: Option<BTreeSet<(usize, usize)>>,
}

impl DynkinGraph {
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!("loop at color {a}")));
            }
            if a >= names.len() || b >= names.len() {
                return Err(Error::InvalidArgument(format!("edge ({a},{b}) leaves the vertex set")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != names.len() {
            return Err(Error::InvalidArgument("repeated color name".into()));
        }
        Ok(DynkinGraph { names, edges: set, orientation: None })
    }

    /// The path `A_k` on colors `1..=k`, oriented left to right.
    pub fn path(k: usize) -> Self {
        let names = (1..=k).map(|i| i.to_string()).collect();
        let edges: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        let mut g = DynkinGraph::new(names, &edges).expect("path graph");
        g.orientation = Some(edges.into_iter().collect());
        g
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, c: usize) -> &str {
        &self.names[c]
    }

    pub fn color(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown color {name:?}")))
    }

    pub fn orientation(&self) -> Option<&BTreeSet<(usize, usize)>> {
        self.orientation.as_ref()
    }

    pub fn dot(&self, a: usize, b: usize) -> i64 {
        if a == b {
            2
        } else if self.edges.contains(&(a.min(b), a.max(b))) {
            -1
        } else {
            0
        }
    }

    /// Adjacency lists keyed by color name, e.g. `{"r": ["b"], "b": ["r"]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let map = v.as_object().ok_or_else(|| Error::Parse("graph must be an object of adjacency lists".into()))?;
        let names: Vec<String> = map.keys().cloned().collect();
        let mut edges = Vec::new();
        for (a, nbrs) in map {
            let ia = names.iter().position(|n| n == a).expect("key present");
            let nbrs = nbrs.as_array().ok_or_else(|| Error::Parse(format!("neighbours of {a:?} must be a list")))?;
            for b in nbrs {
                let b = b.as_str().ok_or_else(|| Error::Parse("neighbour names must be strings".into()))?;
                let ib = names
                    .iter()
                    .position(|n| n == b)
                    .ok_or_else(|| Error::Parse(format!("unknown neighbour {b:?}")))?;
                edges.push((ia, ib));
            }
        }
        let g = DynkinGraph::new(names, &edges)?;
        for &(a, b) in &g.edges {
            let listed = |x: usize, y: usize| map[&g.names[x]].as_array().is_some_and(|l| l.iter().any(|v| v == g.names[y].as_str()));
            if !(listed(a, b) && listed(b, a)) {
                return Err(Error::Parse(format!("edge {}-{} listed one way only", g.names[a], g.names[b])));
            }
        }
        Ok(g)
    }

    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (c, name) in self.names.iter().enumerate() {
            let nbrs: Vec<&str> = (0..self.len()).filter(|&d| self.dot(c, d) == -1).map(|d| self.name(d)).collect();
            map.insert(name.clone(), json!(nbrs));
        }
        Value::Object(map)
    }

    pub fn parse_sequence(&self, s: &str) -> Result<Vec<usize>> {
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| self.color(t)).collect()
    }
}

/// `(S_n)_i^j = {w : i_k = j_{w(k)}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredPermSet {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub elements: Vec<Permutation>,
}

pub fn klr_perms(source: &[usize], target: &[usize]) -> Result<ColoredPermSet> {
    if source.len() != target.len() {
        return Err(Error::RankMismatch { left: source.len(), right: target.len() });
    }
    let n = source.len();
    let mut elements = Vec::new();
    let mut image = vec![0usize; n];
    let mut used = vec![false; n];
    fn rec(k: usize, src: &[usize], tgt: &[usize], image: &mut [usize], used: &mut [bool], out: &mut Vec<Permutation>) {
        if k == src.len() {
            out.push(Permutation::new(image.to_vec()).expect("bijection"));
            return;
        }
        for t in 0..tgt.len() {
            if !used[t] && tgt[t] == src[k] {
                used[t] = true;
                image[k] = t + 1;
                rec(k + 1, src, tgt, image, used, out);
                used[t] = false;
            }
        }
    }
    rec(0, source, target, &mut image, &mut used, &mut elements);
    elements.sort();
    Ok(ColoredPermSet { source: source.to_vec(), target: target.to_vec(), elements })
}

impl ColoredPermSet {
    pub fn contains(&self, w: &Permutation) -> bool {
        w.n() == self.source.len() && (1..=w.n()).all(|k| self.source[k - 1] == self.target[w.image(k) - 1])
    }

    /// The image of `w` in `Π_c S_{a_c}`: for each color, the induced bijection between
    /// its positions in the source and in the target, both listed in increasing order.
    pub fn factorize(&self, w: &Permutation) -> Result<BTreeMap<usize, Permutation>> {
        if !self.contains(w) {
            return Err(Error::InvalidArgument(format!("{w} does not match the colors")));
        }
        let mut out = BTreeMap::new();
        let colors: BTreeSet<usize> = self.source.iter().copied().collect();
        for c in colors {
            let src: Vec<usize> = (1..=w.n()).filter(|&k| self.source[k - 1] == c).collect();
            let tgt: Vec<usize> = (1..=w.n()).filter(|&k| self.target[k - 1] == c).collect();
            let images = src.iter().map(|&k| tgt.iter().position(|&t| t == w.image(k)).expect("color matches") + 1).collect();
            out.insert(c, Permutation::new(images)?);
        }
        Ok(out)
    }

    /// `Π_c a_c!`, the expected cardinality.
    pub fn expected_size(&self) -> usize {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &self.source {
            *counts.entry(c).or_insert(0) += 1;
        }
        let mut tcounts: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &self.target {
            *tcounts.entry(c).or_insert(0) += 1;
        }
        if counts != tcounts {
            return 0;
        }
        counts.values().map(|&a| (1..=a).product::<usize>()).product()
    }
}

/// The character `p(w)` for `w ∈ (S_n)_i^j`: on the left
/// `Σ_k (Σ_{ℓ>k, w⁻¹(ℓ)<w⁻¹(k)} -j_k·j_ℓ) x_k`, on the right
/// `Σ_k (Σ_{ℓ<k, w(ℓ)>w(k)} -i_ℓ·i_k) x_k`.
pub fn klr_char(w: &Permutation, source: &[usize], target: &[usize], side: Side, graph: &DynkinGraph) -> Result<ZPoly> {
    let n = w.n();
    if source.len() != n || target.len() != n {
        return Err(Error::RankMismatch { left: n, right: source.len().max(target.len()) });
    }
    if (1..=n).any(|k| source[k - 1] != target[w.image(k) - 1]) {
        return Err(Error::InvalidArgument(format!("{w} does not match the colors")));
    }
    let winv = w.inverse();
    let coeffs: Vec<i64> = (1..=n)
        .map(|k| match side {
            Side::Left => ((k + 1)..=n)
                .filter(|&l| winv.image(l) < winv.image(k))
                .map(|l| -graph.dot(target[k - 1], target[l - 1]))
                .sum(),
            Side::Right => (1..k)
                .filter(|&l| w.image(l) > w.image(k))
                .map(|l| -graph.dot(source[l - 1], source[k - 1]))
                .sum(),
        })
        .collect();
    Ok(ZPoly::linear(&coeffs))
}

/// The degree of `ψ_w`: `Σ` over inversions `k < ℓ`, `w(k) > w(ℓ)`, of `-i_k·i_ℓ`.
pub fn psi_degree(w: &Permutation, source: &[usize], graph: &DynkinGraph) -> i64 {
    w.inversions().iter().map(|inv| -graph.dot(source[inv.a - 1], source[inv.b - 1])).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilhecke::{nh_char, sigma};
    use num_bigint::BigInt;

    #[test]
    fn perm_sets() {
        let s = klr_perms(&[0, 0], &[0, 0]).unwrap();
        assert_eq!(s.elements.len(), 2);
        let s = klr_perms(&[0, 1], &[1, 0]).unwrap();
        assert_eq!(s.elements, vec![Permutation::simple(2, 1).unwrap()]);
        assert!(klr_perms(&[0], &[1]).unwrap().elements.is_empty());
        let s = klr_perms(&[0, 1, 0, 1, 0], &[1, 0, 0, 0, 1]).unwrap();
        assert_eq!(s.elements.len(), s.expected_size());
        assert_eq!(s.elements.len(), 12);
        for w in &s.elements {
            let f = s.factorize(w).unwrap();
            assert_eq!(f[&0].n(), 3);
            assert_eq!(f[&1].n(), 2);
        }
    }

    #[test]
    fn small_characters() {
        let g = DynkinGraph::path(3);
        let s1 = Permutation::simple(2, 1).unwrap();
        assert_eq!(klr_char(&s1, &[0, 0], &[0, 0], Side::Left, &g).unwrap(), ZPoly::linear(&[-2, 0]));
        assert_eq!(klr_char(&s1, &[0, 1], &[1, 0], Side::Left, &g).unwrap(), ZPoly::linear(&[1, 0]));
        assert!(klr_char(&s1, &[0, 2], &[2, 0], Side::Left, &g).unwrap().is_zero());
        assert!(klr_char(&s1, &[0, 1], &[0, 1], Side::Left, &g).is_err());
    }

    #[test]
    fn single_color_and_duality() {
        let g = DynkinGraph::path(1);
        for n in 1..=4 {
            let c = vec![0; n];
            for w in Permutation::all(n) {
                for side in [Side::Left, Side::Right] {
                    assert_eq!(klr_char(&w, &c, &c, side, &g).unwrap(), nh_char(&w, side));
                }
            }
        }
        let g = DynkinGraph::path(3);
        let src = [0, 1, 2, 1];
        let tgt = [1, 2, 1, 0];
        for w in klr_perms(&src, &tgt).unwrap().elements {
            let left = klr_char(&w, &src, &tgt, Side::Left, &g).unwrap();
            let right = klr_char(&w, &src, &tgt, Side::Right, &g).unwrap();
            assert_eq!(right, left.permute(&w.inverse()).unwrap());
            assert_eq!(sigma(&left), BigInt::from(psi_degree(&w, &src, &g)));
        }
    }

    #[test]
    fn graph_json() {
        let g = DynkinGraph::from_json(&json!({"r": ["b"], "b": ["r", "g"], "g": ["b"]})).unwrap();
        assert_eq!(g.dot(g.color("r").unwrap(), g.color("b").unwrap()), -1);
        assert_eq!(g.dot(g.color("r").unwrap(), g.color("g").unwrap()), 0);
        assert_eq!(DynkinGraph::from_json(&g.to_json()).unwrap(), g);
        assert!(DynkinGraph::from_json(&json!({"r": ["b"], "b": []})).is_err());
        assert!(DynkinGraph::from_json(&json!({"r": ["r"]})).is_err());
    }
}
