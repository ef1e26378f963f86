//! Graded modules over sl2 with free weight spaces over `Z`, stored as integer
//! matrices for `d` (raising by 2) and `z` (lowering by 2).
//!
//! Infinite modules are truncated: `valid_below` is the largest weight whose
//! space is complete. `d` from weight `m` is exact when `m + 2 ≤ valid_below`,
//! `z` from weight `m` when `m ≤ valid_below`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coeff::factorial;
use crate::error::{Error, Result};
use crate::linalg::{det_z, integer_kernel, lattice_coordinates, saturated_kernel, QMatrix, ZMatrix, ZVec};
use crate::polyring::Sl2Op;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleKind {
    Verma(i64),
    CoVerma(i64),
    Weyl(i64),
    DualWeyl(i64),
    Irreducible(i64),
    Tensor(Box<ModuleKind>, Box<ModuleKind>),
    Custom(String),
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleKind::Verma(k) => write!(f, "Δ({k})"),
            ModuleKind::CoVerma(k) => write!(f, "∇({k})"),
            ModuleKind::Weyl(k) => write!(f, "W({k})"),
            ModuleKind::DualWeyl(k) => write!(f, "W∨({k})"),
            ModuleKind::Irreducible(k) => write!(f, "L{k}"),
            ModuleKind::Tensor(a, b) => write!(f, "{a} ⊗ {b}"),
            ModuleKind::Custom(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpace {
    pub labels: Vec<String>,
    /// `rank(m + 2) × rank(m)`.
    pub d: ZMatrix,
    /// `rank(m - 2) × rank(m)`.
    pub z: ZMatrix,
}

impl WeightSpace {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightModule {
    pub kind: ModuleKind,
    spaces: BTreeMap<i64, WeightSpace>,
    valid_below: i64,
}

/// The first weight at which `[d, -z] = h` fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub weight: i64,
}

/// A divided power `op^l / l!` as rational matrices per source weight.
#[derive(Clone, Debug)]
pub struct DividedPower {
    pub maps: BTreeMap<i64, QMatrix>,
    pub integral: bool,
}

#[derive(Clone, Debug)]
pub struct Core {
    pub module: WeightModule,
    /// Columns are the core basis vectors in the ambient weight space coordinates.
    pub embedding: BTreeMap<i64, ZMatrix>,
}

#[derive(Clone, Debug)]
pub struct IsoResult {
    pub isomorphic: bool,
    /// Rank of the lattice of weight-preserving intertwiners within the window.
    pub intertwiner_rank: usize,
    pub certificate: Option<BTreeMap<i64, ZMatrix>>,
}

fn z(v: i64) -> BigInt {
    BigInt::from(v)
}

impl WeightModule {
    /// Build from explicit weight spaces; checks matrix shapes.
    pub fn new(kind: ModuleKind, spaces: BTreeMap<i64, WeightSpace>, valid_below: i64) -> Result<Self> {
        let rank = |m: i64| spaces.get(&m).map_or(0, WeightSpace::rank);
        for (&m, s) in &spaces {
            if s.d.cols() != s.rank() || s.d.rows() != rank(m + 2) {
                return Err(Error::InvalidModule(format!("d at weight {m} has shape {}×{}", s.d.rows(), s.d.cols())));
            }
            if s.z.cols() != s.rank() || s.z.rows() != rank(m - 2) {
                return Err(Error::InvalidModule(format!("z at weight {m} has shape {}×{}", s.z.rows(), s.z.cols())));
            }
        }
        Ok(WeightModule { kind, spaces, valid_below })
    }

    pub fn zero() -> Self {
        WeightModule { kind: ModuleKind::Custom("0".into()), spaces: BTreeMap::new(), valid_below: i64::MAX }
    }

    /// Rank-one modules on weights `lo, lo+2, ..., hi` given by scalar `d` and `z` coefficients:
    /// `d(b_j) = dc(j) b_{j+1}` and `z(b_{j+1}) = zc(j) b_j`.
    fn chain(
        kind: ModuleKind,
        label: &str,
        lo: i64,
        count: usize,
        valid_below: i64,
        dc: impl Fn(i64) -> i64,
        zc: impl Fn(i64) -> i64,
    ) -> Self {
        let mut spaces = BTreeMap::new();
        for j in 0..count {
            let m = lo + 2 * j as i64;
            let has_next = j + 1 < count;
            let d = if has_next {
                ZMatrix::from_rows(1, 1, vec![vec![z(dc(j as i64))]])
            } else {
                ZMatrix::zeros(0, 1)
            };
            let zm = if j > 0 {
                ZMatrix::from_rows(1, 1, vec![vec![z(zc(j as i64 - 1))]])
            } else {
                ZMatrix::zeros(0, 1)
            };
            spaces.insert(m, WeightSpace { labels: vec![format!("{label}{j}")], d, z: zm });
        }
        WeightModule { kind, spaces, valid_below }
    }

    fn window_count(k: i64, window: i64) -> usize {
        if window < k {
            0
        } else {
            ((window - k) / 2 + 1) as usize
        }
    }

    /// `Δ(k)` on weights `k, k+2, ... ≤ window`: `d(v_m) = (m+1) v_{m+1}`, `z(v_{m+1}) = (m+k) v_m`.
    pub fn verma(k: i64, window: i64) -> Self {
        WeightModule::chain(ModuleKind::Verma(k), "v", k, Self::window_count(k, window), window, |m| m + 1, |m| m + k)
    }

    /// `∇(k)`: `d(w_m) = (m+k) w_{m+1}`, `z(w_{m+1}) = (m+1) w_m`.
    pub fn coverma(k: i64, window: i64) -> Self {
        WeightModule::chain(ModuleKind::CoVerma(k), "w", k, Self::window_count(k, window), window, |m| m + k, |m| m + 1)
    }

    /// `W(k)` for `k ≤ 0`, the quotient of `Δ(k)` by the copy of `∇(-k+2)`.
    pub fn weyl(k: i64) -> Result<Self> {
        if k > 0 {
            return Err(Error::InvalidArgument(format!("W({k}) needs k ≤ 0")));
        }
        Ok(WeightModule::chain(ModuleKind::Weyl(k), "v", k, (1 - k) as usize, i64::MAX, |m| m + 1, |m| m + k))
    }

    /// `W∨(k)` for `k ≤ 0`, the submodule of `∇(k)` on weights `k..-k`.
    pub fn dual_weyl(k: i64) -> Result<Self> {
        if k > 0 {
            return Err(Error::InvalidArgument(format!("W∨({k}) needs k ≤ 0")));
        }
        Ok(WeightModule::chain(ModuleKind::DualWeyl(k), "w", k, (1 - k) as usize, i64::MAX, |m| m + k, |m| m + 1))
    }

    /// The irreducible of highest weight `k ≥ 0`, in the integral form `W∨(-k)`.
    pub fn irreducible(k: i64) -> Result<Self> {
        if k < 0 {
            return Err(Error::InvalidArgument(format!("L{k} needs k ≥ 0")));
        }
        let mut m = WeightModule::dual_weyl(-k)?;
        m.kind = ModuleKind::Irreducible(k);
        Ok(m)
    }

    pub fn from_kind(kind: &ModuleKind, window: i64) -> Result<Self> {
        match kind {
            ModuleKind::Verma(k) => Ok(WeightModule::verma(*k, window)),
            ModuleKind::CoVerma(k) => Ok(WeightModule::coverma(*k, window)),
            ModuleKind::Weyl(k) => WeightModule::weyl(*k),
            ModuleKind::DualWeyl(k) => WeightModule::dual_weyl(*k),
            ModuleKind::Irreducible(k) => WeightModule::irreducible(*k),
            ModuleKind::Tensor(a, b) => {
                let ma = WeightModule::from_kind(a, window)?;
                let mb = WeightModule::from_kind(b, window)?;
                Ok(ma.tensor(&mb).truncate(window))
            }
            ModuleKind::Custom(s) => Err(Error::InvalidArgument(format!("cannot rebuild custom module {s}"))),
        }
    }

    pub fn valid_below(&self) -> i64 {
        self.valid_below
    }

    pub fn weights(&self) -> impl Iterator<Item = i64> + '_ {
        self.spaces.keys().copied()
    }

    pub fn space(&self, m: i64) -> Option<&WeightSpace> {
        self.spaces.get(&m)
    }

    pub fn rank(&self, m: i64) -> usize {
        self.spaces.get(&m).map_or(0, WeightSpace::rank)
    }

    pub fn total_rank(&self) -> usize {
        self.spaces.values().map(WeightSpace::rank).sum()
    }

    pub fn lowest_weight(&self) -> Option<i64> {
        self.spaces.keys().next().copied()
    }

    pub fn highest_weight(&self) -> Option<i64> {
        self.spaces.keys().next_back().copied()
    }

    /// Weight multiplicities, omitting zero ranks.
    pub fn character(&self) -> BTreeMap<i64, usize> {
        self.spaces
            .iter()
            .filter(|(_, s)| s.rank() > 0)
            .map(|(&m, s)| (m, s.rank()))
            .collect()
    }

    /// The matrix of `d` or `z` from weight `m`, of the right shape even if absent.
    pub fn op_matrix(&self, op: Sl2Op, m: i64) -> ZMatrix {
        match (op, self.spaces.get(&m)) {
            (Sl2Op::D, Some(s)) => s.d.clone(),
            (Sl2Op::Z, Some(s)) => s.z.clone(),
            (Sl2Op::H, Some(s)) => {
                let mut h = ZMatrix::zeros(s.rank(), s.rank());
                for i in 0..s.rank() {
                    h.set(i, i, z(m));
                }
                h
            }
            (Sl2Op::D, None) => ZMatrix::zeros(self.rank(m + 2), 0),
            (Sl2Op::Z, None) => ZMatrix::zeros(self.rank(m - 2), 0),
            (Sl2Op::H, None) => ZMatrix::zeros(0, 0),
        }
    }

    /// `op^l` from weight `m`.
    pub fn op_power(&self, op: Sl2Op, m: i64, l: u32) -> ZMatrix {
        let step = match op {
            Sl2Op::D => 2,
            Sl2Op::Z => -2,
            Sl2Op::H => 0,
        };
        let mut acc = ZMatrix::identity(self.rank(m));
        for j in 0..l as i64 {
            acc = self.op_matrix(op, m + step * j).mul(&acc);
        }
        acc
    }

    /// Drop weights above `window`.
    pub fn truncate(&self, window: i64) -> WeightModule {
        let mut spaces: BTreeMap<i64, WeightSpace> = self
            .spaces
            .range(..=window)
            .map(|(&m, s)| (m, s.clone()))
            .collect();
        for (&m, s) in spaces.iter_mut() {
            if m + 2 > window {
                s.d = ZMatrix::zeros(0, s.rank());
            }
        }
        WeightModule { kind: self.kind.clone(), spaces, valid_below: self.valid_below.min(window) }
    }

    pub fn tensor(&self, other: &WeightModule) -> WeightModule {
        let kind = ModuleKind::Tensor(Box::new(self.kind.clone()), Box::new(other.kind.clone()));
        let (Some(la), Some(lb)) = (self.lowest_weight(), other.lowest_weight()) else {
            let mut zero = WeightModule::zero();
            zero.kind = kind;
            return zero;
        };
        let valid = self.valid_below.saturating_add(lb).min(other.valid_below.saturating_add(la));
        // Basis of each tensor weight: pairs (ma, i, mb, j).
        let mut index: BTreeMap<i64, Vec<(i64, usize, i64, usize)>> = BTreeMap::new();
        for (&ma, sa) in &self.spaces {
            for (&mb, sb) in &other.spaces {
                let m = ma + mb;
                if m > valid {
                    continue;
                }
                for i in 0..sa.rank() {
                    for j in 0..sb.rank() {
                        index.entry(m).or_default().push((ma, i, mb, j));
                    }
                }
            }
        }
        let lookup: std::collections::HashMap<(i64, usize, i64, usize), usize> = index
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(p, &k)| (k, p)))
            .collect();
        let position = |m: i64, key: (i64, usize, i64, usize)| -> Option<usize> {
            (key.0 + key.2 == m).then(|| lookup.get(&key).copied()).flatten()
        };
        let mut spaces = BTreeMap::new();
        for (&m, basis) in &index {
            let rank_up = index.get(&(m + 2)).map_or(0, Vec::len);
            let rank_down = index.get(&(m - 2)).map_or(0, Vec::len);
            let mut d = ZMatrix::zeros(rank_up, basis.len());
            let mut zz = ZMatrix::zeros(rank_down, basis.len());
            for (col, &(ma, i, mb, j)) in basis.iter().enumerate() {
                let sa = &self.spaces[&ma];
                let sb = &other.spaces[&mb];
                for (op, target, mat) in [(Sl2Op::D, m + 2, &mut d), (Sl2Op::Z, m - 2, &mut zz)] {
                    if target > valid || !index.contains_key(&target) {
                        continue;
                    }
                    let step = if op == Sl2Op::D { 2 } else { -2 };
                    let ma2 = ma + step;
                    let a_mat = if op == Sl2Op::D { &sa.d } else { &sa.z };
                    for r in 0..a_mat.rows() {
                        let c = a_mat.get(r, i);
                        if c.is_zero() {
                            continue;
                        }
                        if let Some(row) = position(target, (ma2, r, mb, j)) {
                            let v = mat.get(row, col) + c;
                            mat.set(row, col, v);
                        }
                    }
                    let mb2 = mb + step;
                    let b_mat = if op == Sl2Op::D { &sb.d } else { &sb.z };
                    for r in 0..b_mat.rows() {
                        let c = b_mat.get(r, j);
                        if c.is_zero() {
                            continue;
                        }
                        if let Some(row) = position(target, (ma, i, mb2, r)) {
                            let v = mat.get(row, col) + c;
                            mat.set(row, col, v);
                        }
                    }
                }
            }
            let labels = basis
                .iter()
                .map(|&(ma, i, mb, j)| format!("{}⊗{}", self.spaces[&ma].labels[i], other.spaces[&mb].labels[j]))
                .collect();
            spaces.insert(m, WeightSpace { labels, d, z: zz });
        }
        WeightModule { kind, spaces, valid_below: valid }
    }

    /// Verify `z d - d z = h` on every weight where both sides are exact.
    pub fn check_axioms(&self) -> std::result::Result<(), AxiomFailure> {
        for (&m, s) in &self.spaces {
            if m.saturating_add(2) > self.valid_below {
                continue;
            }
            let zd = self.op_matrix(Sl2Op::Z, m + 2).mul(&s.d);
            let dz = self.op_matrix(Sl2Op::D, m - 2).mul(&s.z);
            for r in 0..s.rank() {
                for c in 0..s.rank() {
                    let expect = if r == c { z(m) } else { BigInt::zero() };
                    if zd.get(r, c) - dz.get(r, c) != expect {
                        return Err(AxiomFailure { weight: m });
                    }
                }
            }
        }
        Ok(())
    }

    /// `op^l / l!` on every weight where it is exact.
    pub fn divided(&self, op: Sl2Op, l: u32) -> Result<DividedPower> {
        if op == Sl2Op::H {
            return Err(Error::InvalidArgument("divided powers are defined for d and z".into()));
        }
        let fact = BigRational::from_integer(factorial(l as u64));
        let mut maps = BTreeMap::new();
        let mut integral = true;
        for &m in self.spaces.keys() {
            let exact = match op {
                Sl2Op::D => m.saturating_add(2 * l as i64) <= self.valid_below,
                _ => m <= self.valid_below,
            };
            if !exact {
                continue;
            }
            let q = self.op_power(op, m, l).to_q().map(|x| x / &fact);
            integral &= q.to_z().is_some();
            maps.insert(m, q);
        }
        Ok(DividedPower { maps, integral })
    }

    /// The submodule of vectors killed by a power of `d`, for weights `≤ bound`.
    /// Needs `bound + 2 ≤ valid_below` so every `d`-chain used is exact.
    pub fn core(&self, bound: i64) -> Result<Core> {
        if bound.saturating_add(2) > self.valid_below {
            return Err(Error::WindowTooSmall { window: self.valid_below, bound });
        }
        let mut basis: BTreeMap<i64, Vec<ZVec>> = BTreeMap::new();
        for &m in self.spaces.keys() {
            if m > bound {
                continue;
            }
            let steps = ((bound - m).div_euclid(2) + 1) as u32;
            let power = self.op_power(Sl2Op::D, m, steps);
            let kernel = saturated_kernel(&power.to_q());
            if !kernel.is_empty() {
                basis.insert(m, kernel);
            }
        }
        let mut embedding = BTreeMap::new();
        let mut spaces = BTreeMap::new();
        for (&m, vecs) in &basis {
            let rank = self.rank(m);
            let emb = ZMatrix::from_rows(vecs.len(), rank, vecs.clone()).transpose();
            embedding.insert(m, emb);
        }
        for (&m, vecs) in &basis {
            let mut ops = Vec::new();
            for (op, target) in [(Sl2Op::D, m + 2), (Sl2Op::Z, m - 2)] {
                let mat = self.op_matrix(op, m);
                let target_basis = basis.get(&target).cloned().unwrap_or_default();
                let mut out = ZMatrix::zeros(target_basis.len(), vecs.len());
                for (c, v) in vecs.iter().enumerate() {
                    let image = mat.mul_vec(v);
                    let coords = lattice_coordinates(&target_basis, &image)
                        .ok_or_else(|| Error::CoreNotClosed(format!("{op:?} at weight {m}")))?;
                    for (r, x) in coords.into_iter().enumerate() {
                        out.set(r, c, x);
                    }
                }
                ops.push(out);
            }
            let zm = ops.pop().expect("two maps");
            let d = ops.pop().expect("two maps");
            let labels = (0..vecs.len()).map(|i| format!("c{m}_{i}")).collect();
            spaces.insert(m, WeightSpace { labels, d, z: zm });
        }
        let module = WeightModule { kind: ModuleKind::Custom(format!("core of {}", self.kind)), spaces, valid_below: i64::MAX };
        Ok(Core { module, embedding })
    }

    /// Search for an invertible integral intertwiner on the common window.
    pub fn iso_test(&self, other: &WeightModule) -> IsoResult {
        let valid = self.valid_below.min(other.valid_below);
        let weights: Vec<i64> = self
            .spaces
            .keys()
            .chain(other.spaces.keys())
            .copied()
            .filter(|&m| m <= valid)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let no = IsoResult { isomorphic: false, intertwiner_rank: 0, certificate: None };
        if weights.iter().any(|&m| self.rank(m) != other.rank(m)) {
            return no;
        }
        // Unknown φ_m is rank(m) × rank(m), stored row-major after an offset.
        let mut offset = BTreeMap::new();
        let mut total = 0;
        for &m in &weights {
            offset.insert(m, total);
            total += self.rank(m) * self.rank(m);
        }
        if total == 0 {
            return IsoResult { isomorphic: true, intertwiner_rank: 0, certificate: Some(BTreeMap::new()) };
        }
        let mut equations: Vec<ZVec> = Vec::new();
        for &m in &weights {
            let r = self.rank(m);
            for (op, target) in [(Sl2Op::D, m + 2), (Sl2Op::Z, m - 2)] {
                if !offset.contains_key(&target) {
                    continue;
                }
                if op == Sl2Op::D && m + 2 > valid {
                    continue;
                }
                // φ_target · A_m - B_m · φ_m = 0, with A from self and B from other.
                let a = self.op_matrix(op, m);
                let b = other.op_matrix(op, m);
                let rt = self.rank(target);
                for i in 0..rt {
                    for j in 0..r {
                        let mut eq = vec![BigInt::zero(); total];
                        for k in 0..rt {
                            let c = a.get(k, j);
                            if !c.is_zero() {
                                eq[offset[&target] + i * rt + k] += c;
                            }
                        }
                        for k in 0..r {
                            let c = b.get(i, k);
                            if !c.is_zero() {
                                eq[offset[&m] + k * r + j] -= c;
                            }
                        }
                        equations.push(eq);
                    }
                }
            }
        }
        let system = ZMatrix::from_rows(equations.len(), total, equations);
        let lattice = integer_kernel(&system);
        let rank = lattice.len();
        let bound: i64 = match rank {
            0 => 0,
            1..=3 => 2,
            4..=6 => 1,
            _ => 1,
        };
        let blocks = |v: &ZVec| -> BTreeMap<i64, ZMatrix> {
            weights
                .iter()
                .map(|&m| {
                    let r = self.rank(m);
                    let o = offset[&m];
                    let rows = (0..r).map(|i| v[o + i * r..o + (i + 1) * r].to_vec()).collect();
                    (m, ZMatrix::from_rows(r, r, rows))
                })
                .collect()
        };
        let invertible = |v: &ZVec| -> bool {
            blocks(v).values().all(|b| det_z(b).abs().is_one())
        };
        let mut coeffs = vec![-bound; rank];
        let limited = rank > 6;
        loop {
            if !limited || coeffs.iter().filter(|&&c| c != 0).count() <= 2 {
                let mut v = vec![BigInt::zero(); total];
                for (c, basis) in coeffs.iter().zip(&lattice) {
                    if *c != 0 {
                        for (x, y) in v.iter_mut().zip(basis) {
                            *x += y * c;
                        }
                    }
                }
                if coeffs.iter().any(|&c| c != 0) && invertible(&v) {
                    return IsoResult { isomorphic: true, intertwiner_rank: rank, certificate: Some(blocks(&v)) };
                }
            }
            let mut k = 0;
            while k < rank {
                coeffs[k] += 1;
                if coeffs[k] <= bound {
                    break;
                }
                coeffs[k] = -bound;
                k += 1;
            }
            if k == rank {
                break;
            }
        }
        IsoResult { isomorphic: false, intertwiner_rank: rank, certificate: None }
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &ZMatrix| -> Vec<Vec<String>> {
            m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
        };
        let weights: Vec<Value> = self
            .spaces
            .iter()
            .map(|(&m, s)| json!({"weight": m, "basis": s.labels, "d": mat(&s.d), "z": mat(&s.z)}))
            .collect();
        let valid = if self.valid_below == i64::MAX { Value::Null } else { json!(self.valid_below) };
        json!({"kind": self.kind, "valid_below": valid, "weights": weights})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let parse_err = |s: &str| Error::Parse(format!("module json: {s}"));
        let kind: ModuleKind = serde_json::from_value(v.get("kind").cloned().unwrap_or(json!({"Custom": "json"})))
            .map_err(|e| parse_err(&e.to_string()))?;
        let valid_below = v.get("valid_below").and_then(Value::as_i64).unwrap_or(i64::MAX);
        let ws = v.get("weights").and_then(Value::as_array).ok_or_else(|| parse_err("missing weights"))?;
        let read_mat = |x: &Value, cols: usize| -> Result<Vec<Vec<BigInt>>> {
            let rows = x.as_array().ok_or_else(|| parse_err("matrix"))?;
            rows.iter()
                .map(|r| {
                    let r = r.as_array().ok_or_else(|| parse_err("matrix row"))?;
                    if r.len() != cols {
                        return Err(parse_err("matrix row length"));
                    }
                    r.iter().map(<BigInt as crate::coeff::Coeff>::from_json).collect()
                })
                .collect()
        };
        let mut raw = BTreeMap::new();
        for w in ws {
            let m = w.get("weight").and_then(Value::as_i64).ok_or_else(|| parse_err("weight"))?;
            let labels: Vec<String> = serde_json::from_value(w.get("basis").cloned().unwrap_or(Value::Null))
                .map_err(|e| parse_err(&e.to_string()))?;
            let cols = labels.len();
            let d = read_mat(w.get("d").unwrap_or(&json!([])), cols)?;
            let zz = read_mat(w.get("z").unwrap_or(&json!([])), cols)?;
            raw.insert(m, (labels, d, zz));
        }
        let mut spaces = BTreeMap::new();
        for (&m, (labels, d, zz)) in &raw {
            let cols = labels.len();
            spaces.insert(
                m,
                WeightSpace {
                    labels: labels.clone(),
                    d: ZMatrix::from_rows(d.len(), cols, d.clone()),
                    z: ZMatrix::from_rows(zz.len(), cols, zz.clone()),
                },
            );
        }
        WeightModule::new(kind, spaces, valid_below)
    }
}

/// Closed forms of divided powers on Verma and coVerma basis vectors, as the
/// scalar carrying the `m`-th basis vector to the `(m ± l)`-th.
pub fn standard_divided_scalar(kind: &ModuleKind, op: Sl2Op, m: u64, l: u64) -> Option<BigInt> {
    use crate::coeff::binomial_signed;
    let (m_i, l_i) = (m as i64, l);
    match (kind, op) {
        (ModuleKind::Verma(_), Sl2Op::D) => Some(binomial_signed(m_i + l_i as i64, l_i)),
        (ModuleKind::Verma(k), Sl2Op::Z) => Some(binomial_signed(m_i + k - 1, l_i)),
        (ModuleKind::CoVerma(k), Sl2Op::D) => Some(binomial_signed(m_i + k + l_i as i64 - 1, l_i)),
        (ModuleKind::CoVerma(_), Sl2Op::Z) => Some(binomial_signed(m_i, l_i)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_modules_satisfy_relation() {
        for k in -4..=4 {
            assert!(WeightModule::verma(k, 20).check_axioms().is_ok());
            assert!(WeightModule::coverma(k, 20).check_axioms().is_ok());
        }
        for k in -4..=0 {
            assert!(WeightModule::weyl(k).unwrap().check_axioms().is_ok());
            assert!(WeightModule::dual_weyl(k).unwrap().check_axioms().is_ok());
        }
    }

    #[test]
    fn broken_module_reports_weight() {
        let mut m = WeightModule::verma(0, 10);
        m.spaces.get_mut(&4).unwrap().d.set(0, 0, BigInt::from(7));
        assert_eq!(m.check_axioms(), Err(AxiomFailure { weight: 4 }));
    }

    #[test]
    fn tensor_character() {
        let l1 = WeightModule::irreducible(1).unwrap();
        let t = l1.tensor(&l1);
        assert_eq!(t.character(), BTreeMap::from([(-2, 1), (0, 2), (2, 1)]));
        assert!(t.check_axioms().is_ok());
        let inf = WeightModule::coverma(-1, 10).tensor(&WeightModule::coverma(0, 10));
        assert_eq!(inf.valid_below(), 9);
        assert!(inf.check_axioms().is_ok());
    }

    #[test]
    fn cores_of_standard_modules() {
        assert_eq!(WeightModule::verma(-2, 10).core(2).unwrap().module.total_rank(), 0);
        let c = WeightModule::coverma(-2, 10).core(2).unwrap();
        assert_eq!(c.module.character(), BTreeMap::from([(-2, 1), (0, 1), (2, 1)]));
        assert!(c.module.check_axioms().is_ok());
        assert!(WeightModule::coverma(-2, 3).core(2).is_err());
    }

    #[test]
    fn verma_coverma_isomorphism() {
        for k in -3..=5 {
            let iso = WeightModule::verma(k, 24).iso_test(&WeightModule::coverma(k, 24));
            assert_eq!(iso.isomorphic, k == 1, "k = {k}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let m = WeightModule::coverma(-1, 6);
        assert_eq!(WeightModule::from_json(&m.to_json()).unwrap(), m);
    }
}
