//! Symmetric polynomials in `n` variables and the ring `Λ[y]` of symmetric
//! functions with a degree-zero parameter `y`, with their sl2 actions.
//!
//! Every element is converted through the elementary basis, where the action
//! is given on generators:
//! `d(e_k) = e_k e_1 - (k+1) e_{k+1}`, `z(e_k) = (y+1-k) e_{k-1}`,
//! with `y = n` in `n` variables.

pub mod bubble;
mod partition;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use partition::{partitions, partitions_bounded, partitions_max_len, Partition};

use crate::coeff::{factorial, Coeff, QY};
use crate::error::{Error, Result};
use crate::linalg::{rref, QMatrix};
use crate::polyring::{format_sum, Monomial, QPoly, Sl2Op};
use crate::weyl::Permutation;

/// Linear combination of elementary monomials `e_λ = e_{λ_1} e_{λ_2} ...`.
pub type EPoly = BTreeMap<Partition, QY>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymContext {
    /// Symmetric polynomials in `x_1, ..., x_n`.
    NVars(usize),
    /// `Λ[y]` with `e_k` available for `k ≤ precision`; `y` optionally specialized.
    LambdaY { precision: usize, y: Option<i64> },
}

impl SymContext {
    pub fn lambda(precision: usize) -> Self {
        SymContext::LambdaY { precision, y: None }
    }

    /// The value of the parameter in the `z` action.
    pub fn y_value(&self) -> QY {
        match *self {
            SymContext::NVars(n) => QY::from_i64(n as i64),
            SymContext::LambdaY { y: Some(c), .. } => QY::from_i64(c),
            SymContext::LambdaY { y: None, .. } => QY::y(),
        }
    }

    fn max_e(&self) -> usize {
        match *self {
            SymContext::NVars(n) => n,
            SymContext::LambdaY { precision, .. } => precision,
        }
    }

    /// `e_k` as an e-polynomial: zero past `n` variables, an error past the precision.
    fn e(&self, k: usize) -> Result<EPoly> {
        if k > self.max_e() {
            return match self {
                SymContext::NVars(_) => Ok(EPoly::new()),
                SymContext::LambdaY { precision, .. } => Err(Error::PrecisionExceeded { index: k, precision: *precision }),
            };
        }
        Ok(EPoly::from([(Partition::single(k), QY::one())]))
    }

    /// Partitions indexing the elementary basis in degree `g`.
    fn e_keys(&self, g: usize) -> Result<Vec<Partition>> {
        match *self {
            SymContext::NVars(n) => Ok(partitions_bounded(g, n)),
            SymContext::LambdaY { precision, .. } => {
                if g > precision {
                    return Err(Error::PrecisionExceeded { index: g, precision });
                }
                Ok(partitions(g))
            }
        }
    }

    fn basis_keys(&self, basis: SymBasis, g: usize) -> Result<Vec<Partition>> {
        match (*self, basis) {
            (SymContext::NVars(n), SymBasis::Schur | SymBasis::M) => Ok(partitions_max_len(g, n)),
            (_, SymBasis::M) => Err(Error::InvalidArgument("the monomial basis needs finitely many variables".into())),
            _ => self.e_keys(g),
        }
    }

    fn cache_key(&self) -> Option<usize> {
        match *self {
            SymContext::NVars(n) => Some(n),
            SymContext::LambdaY { .. } => None,
        }
    }
}

impl fmt::Display for SymContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymContext::NVars(n) => write!(f, "Sym[x1..x{n}]"),
            SymContext::LambdaY { precision, y: None } => write!(f, "Λ[y] (precision {precision})"),
            SymContext::LambdaY { precision, y: Some(c) } => write!(f, "Λ[y]|y={c} (precision {precision})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymBasis {
    #[serde(rename = "e")]
    E,
    #[serde(rename = "h")]
    H,
    #[serde(rename = "p")]
    P,
    #[serde(rename = "s")]
    Schur,
    /// Monomial symmetric polynomials `m_λ`, only in finitely many variables.
    #[serde(rename = "m")]
    M,
}

impl std::str::FromStr for SymBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(SymBasis::E),
            "h" => Ok(SymBasis::H),
            "p" => Ok(SymBasis::P),
            "s" | "schur" => Ok(SymBasis::Schur),
            "m" | "x" => Ok(SymBasis::M),
            other => Err(Error::Parse(format!("unknown basis {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement {
    pub ctx: SymContext,
    pub basis: SymBasis,
    terms: BTreeMap<Partition, QY>,
}

fn e_add(acc: &mut EPoly, key: Partition, c: QY) {
    if c.is_zero() {
        return;
    }
    match acc.remove(&key) {
        Some(old) => {
            let s = old + c;
            if !s.is_zero() {
                acc.insert(key, s);
            }
        }
        None => {
            acc.insert(key, c);
        }
    }
}

fn e_mul(a: &EPoly, b: &EPoly) -> EPoly {
    let mut out = EPoly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            e_add(&mut out, ka.union(kb), ca.clone() * cb.clone());
        }
    }
    out
}

fn e_scale(a: &EPoly, c: &QY) -> EPoly {
    let mut out = EPoly::new();
    for (k, v) in a {
        e_add(&mut out, k.clone(), v.clone() * c.clone());
    }
    out
}

fn e_sum(a: &EPoly, b: &EPoly) -> EPoly {
    let mut out = a.clone();
    for (k, v) in b {
        e_add(&mut out, k.clone(), v.clone());
    }
    out
}

fn q(v: i64) -> QY {
    QY::from_i64(v)
}

/// `h_k` through `h_k = Σ_{j≥1} (-1)^{j-1} e_j h_{k-j}`.
fn h_in_e(ctx: &SymContext, k: usize) -> Result<EPoly> {
    let mut hs: Vec<EPoly> = vec![EPoly::from([(Partition::empty(), QY::one())])];
    for m in 1..=k {
        let mut acc = EPoly::new();
        for j in 1..=m {
            let term = e_mul(&ctx.e(j)?, &hs[m - j]);
            let sign = if j % 2 == 1 { q(1) } else { q(-1) };
            acc = e_sum(&acc, &e_scale(&term, &sign));
        }
        hs.push(acc);
    }
    Ok(hs.pop().expect("nonempty"))
}

/// `p_k` through Newton: `p_k = Σ_{j=1}^{k-1} (-1)^{j-1} e_j p_{k-j} + (-1)^{k-1} k e_k`.
fn p_in_e(ctx: &SymContext, k: usize) -> Result<EPoly> {
    let mut ps: Vec<EPoly> = vec![EPoly::new()];
    for m in 1..=k {
        let sign = |j: usize| if j % 2 == 1 { q(1) } else { q(-1) };
        let mut acc = e_scale(&ctx.e(m)?, &(sign(m) * q(m as i64)));
        for j in 1..m {
            acc = e_sum(&acc, &e_scale(&e_mul(&ctx.e(j)?, &ps[m - j]), &sign(j)));
        }
        ps.push(acc);
    }
    Ok(ps.pop().expect("nonempty"))
}

/// Dual Jacobi-Trudi `s_λ = det(e_{λ'_i - i + j})`, expanded row by row with a
/// memo on the set of used columns.
fn schur_jacobi_trudi(ctx: &SymContext, lambda: &Partition) -> Result<EPoly> {
    let conj = lambda.conjugate();
    let size = conj.len();
    let entry = |i: usize, j: usize| -> Result<Option<EPoly>> {
        let idx = conj.part(i) as i64 - i as i64 + j as i64;
        match idx {
            i64::MIN..=-1 => Ok(None),
            0 => Ok(Some(EPoly::from([(Partition::empty(), QY::one())]))),
            k => ctx.e(k as usize).map(Some),
        }
    };
    let mut memo: HashMap<u32, EPoly> = HashMap::new();
    fn rec(
        mask: u32,
        size: usize,
        entry: &dyn Fn(usize, usize) -> Result<Option<EPoly>>,
        memo: &mut HashMap<u32, EPoly>,
    ) -> Result<EPoly> {
        let row = mask.count_ones() as usize;
        if row == size {
            return Ok(EPoly::from([(Partition::empty(), QY::one())]));
        }
        if let Some(v) = memo.get(&mask) {
            return Ok(v.clone());
        }
        let mut acc = EPoly::new();
        for j in 0..size {
            if mask & (1 << j) != 0 {
                continue;
            }
            let Some(a) = entry(row, j)? else { continue };
            if a.is_empty() {
                continue;
            }
            let rest = rec(mask | (1 << j), size, entry, memo)?;
            let higher = (mask >> (j + 1)).count_ones();
            let sign = if higher.is_multiple_of(2) { q(1) } else { q(-1) };
            acc = e_sum(&acc, &e_scale(&e_mul(&a, &rest), &sign));
        }
        memo.insert(mask, acc.clone());
        Ok(acc)
    }
    rec(0, size, &entry, &mut memo)
}

/// The elementary symmetric polynomial `e_k(x_1..x_n)`.
fn e_poly(n: usize, k: usize) -> QPoly {
    let mut p = QPoly::zero(n);
    if k > n {
        return p;
    }
    fn rec(n: usize, k: usize, start: usize, e: &mut Vec<u32>, p: &mut QPoly) {
        if k == 0 {
            p.add_term(Monomial(e.clone()), BigRational::one());
            return;
        }
        for i in start..n {
            e[i] = 1;
            rec(n, k - 1, i + 1, e, p);
            e[i] = 0;
        }
    }
    rec(n, k, 0, &mut vec![0; n], &mut p);
    p
}

fn e_monomial_poly(n: usize, lambda: &Partition) -> QPoly {
    lambda
        .parts()
        .iter()
        .fold(QPoly::one(n), |acc, &k| &acc * &e_poly(n, k))
}

/// Rewrite a symmetric polynomial in elementary symmetric polynomials by
/// repeatedly cancelling the leading monomial.
pub fn from_x_poly(n: usize, f: &QPoly) -> Result<EPoly> {
    let mut rest = f.clone();
    let mut out = EPoly::new();
    loop {
        let leading = rest.terms().next_back().map(|(m, c)| (m.clone(), c.clone()));
        let Some((lead, c)) = leading else { break };
        let a = lead.exps();
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("polynomial {f} is not symmetric")));
        }
        let mut parts = Vec::new();
        for k in 1..=n {
            let next = if k < n { a[k] } else { 0 };
            for _ in 0..(a[k - 1] - next) {
                parts.push(k);
            }
        }
        let lambda = Partition::new(parts)?;
        let sub = e_monomial_poly(n, &lambda).scale(&c);
        rest = &rest - &sub;
        e_add(&mut out, lambda, QY::constant(c));
    }
    Ok(out)
}

/// Distinct rearrangements of the exponent vector of `λ` padded to `n` entries.
fn monomial_symmetric(n: usize, lambda: &Partition) -> QPoly {
    let mut exps: Vec<u32> = (0..n).map(|i| lambda.part(i) as u32).collect();
    exps.sort_unstable();
    let mut p = QPoly::zero(n);
    loop {
        p.add_term(Monomial(exps.clone()), BigRational::one());
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| exps[i - 1] < exps[i]) else { break };
        let j = (i..n).rev().find(|&j| exps[j] > exps[i - 1]).expect("pivot exists");
        exps.swap(i - 1, j);
        exps[i..].reverse();
    }
    p
}

/// `s_λ(x_1..x_n) = ∂_{w0}(x^{λ+δ})`.
pub fn schur_poly(n: usize, lambda: &Partition) -> Result<QPoly> {
    if lambda.len() > n {
        return Ok(QPoly::zero(n));
    }
    let exps: Vec<u32> = (0..n).map(|i| (lambda.part(i) + n - 1 - i) as u32).collect();
    QPoly::monomial(&exps).demazure_perm(&Permutation::longest(n))
}

fn basis_to_e(ctx: &SymContext, basis: SymBasis, lambda: &Partition) -> Result<EPoly> {
    let one = EPoly::from([(Partition::empty(), QY::one())]);
    match basis {
        SymBasis::E => lambda.parts().iter().try_fold(one, |acc, &k| Ok(e_mul(&acc, &ctx.e(k)?))),
        SymBasis::H => lambda.parts().iter().try_fold(one, |acc, &k| Ok(e_mul(&acc, &h_in_e(ctx, k)?))),
        SymBasis::P => lambda.parts().iter().try_fold(one, |acc, &k| Ok(e_mul(&acc, &p_in_e(ctx, k)?))),
        SymBasis::Schur => match *ctx {
            SymContext::NVars(n) => from_x_poly(n, &schur_poly(n, lambda)?),
            SymContext::LambdaY { .. } => schur_jacobi_trudi(ctx, lambda),
        },
        SymBasis::M => match *ctx {
            SymContext::NVars(n) if lambda.len() > n => Ok(EPoly::new()),
            SymContext::NVars(n) => from_x_poly(n, &monomial_symmetric(n, lambda)),
            SymContext::LambdaY { .. } => {
                Err(Error::InvalidArgument("the monomial basis needs finitely many variables".into()))
            }
        },
    }
}

/// Change of basis in one degree: `inverse` maps e-coordinates to basis coordinates.
struct Transition {
    keys: Vec<Partition>,
    e_index: HashMap<Partition, usize>,
    inverse: QMatrix,
}

type CacheKey = (Option<usize>, SymBasis, usize);

fn transition_cache() -> &'static Mutex<HashMap<CacheKey, Arc<Transition>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Transition>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn transition(ctx: &SymContext, basis: SymBasis, g: usize) -> Result<Arc<Transition>> {
    let key = (ctx.cache_key(), basis, g);
    // The precision only gates which degrees are allowed, so Λ[y] transitions are shared.
    let e_keys = ctx.e_keys(g)?;
    if let Some(t) = transition_cache().lock().expect("cache lock").get(&key) {
        return Ok(t.clone());
    }
    let keys = ctx.basis_keys(basis, g)?;
    let e_index: HashMap<Partition, usize> = e_keys.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let size = e_keys.len();
    if keys.len() != size {
        return Err(Error::InvalidArgument(format!("basis size mismatch in degree {g}")));
    }
    let mut aug = QMatrix::zeros(size, 2 * size);
    for (c, k) in keys.iter().enumerate() {
        for (p, v) in basis_to_e(ctx, basis, k)? {
            let r = *e_index
                .get(&p)
                .ok_or_else(|| Error::InvalidArgument(format!("unexpected e-monomial {p}")))?;
            let v = v
                .constant_value()
                .ok_or_else(|| Error::InvalidArgument("transition depends on y".into()))?;
            aug.set(r, c, v);
        }
    }
    for i in 0..size {
        aug.set(i, size + i, BigRational::one());
    }
    let (red, pivots) = rref(&aug);
    if pivots.len() < size || pivots[size - 1] != size - 1 {
        return Err(Error::InvalidArgument(format!("basis {basis:?} is singular in degree {g}")));
    }
    let mut inverse = QMatrix::zeros(size, size);
    for r in 0..size {
        for c in 0..size {
            inverse.set(r, c, red.get(r, size + c).clone());
        }
    }
    let t = Arc::new(Transition { keys, e_index, inverse });
    transition_cache().lock().expect("cache lock").insert(key, t.clone());
    Ok(t)
}

fn e_from(ctx: &SymContext, basis: SymBasis, e: &EPoly) -> Result<BTreeMap<Partition, QY>> {
    if basis == SymBasis::E {
        return Ok(e.clone());
    }
    let mut by_degree: BTreeMap<usize, Vec<(&Partition, &QY)>> = BTreeMap::new();
    for (k, v) in e {
        by_degree.entry(k.size()).or_default().push((k, v));
    }
    let mut out = BTreeMap::new();
    for (g, items) in by_degree {
        let t = transition(ctx, basis, g)?;
        let mut coords = vec![QY::zero(); t.keys.len()];
        for (k, v) in items {
            let i = *t
                .e_index
                .get(k)
                .ok_or_else(|| Error::InvalidArgument(format!("e-monomial {k} outside the basis")))?;
            coords[i] = v.clone();
        }
        for (r, key) in t.keys.iter().enumerate() {
            let mut acc = QY::zero();
            for (c, v) in coords.iter().enumerate() {
                let m = t.inverse.get(r, c);
                if !m.is_zero() && !v.is_zero() {
                    acc = acc + v.clone() * QY::constant(m.clone());
                }
            }
            e_add(&mut out, key.clone(), acc);
        }
    }
    Ok(out)
}

fn e_sl2(ctx: &SymContext, op: Sl2Op, e: &EPoly) -> Result<EPoly> {
    let mut out = EPoly::new();
    let y = ctx.y_value();
    for (lambda, c) in e {
        if op == Sl2Op::H {
            e_add(&mut out, lambda.clone(), c.clone() * q(2 * lambda.size() as i64));
            continue;
        }
        for i in 0..lambda.len() {
            let rest = lambda.without_index(i);
            let k = lambda.parts()[i];
            match op {
                Sl2Op::D => {
                    e_add(&mut out, rest.with_part(k).with_part(1), c.clone());
                    for (p, v) in ctx.e(k + 1)? {
                        e_add(&mut out, rest.union(&p), v * c.clone() * q(-(k as i64 + 1)));
                    }
                }
                Sl2Op::Z => {
                    let coef = y.clone() + q(1 - k as i64);
                    e_add(&mut out, rest.with_part(k - 1), c.clone() * coef);
                }
                Sl2Op::H => unreachable!(),
            }
        }
    }
    Ok(out)
}

/// `C(y + shift, m)` as a polynomial in `y`.
pub fn binomial_y(shift: i64, m: u64) -> QY {
    let mut acc = QY::one();
    for j in 0..m as i64 {
        acc = acc * QY::y_plus(shift - j);
    }
    let f = QY::constant(BigRational::from_integer(factorial(m)));
    acc.map(|c| c / f.coeffs()[0].clone())
}

impl SymElement {
    pub fn zero(ctx: SymContext, basis: SymBasis) -> Self {
        SymElement { ctx, basis, terms: BTreeMap::new() }
    }

    pub fn basis_element(ctx: SymContext, basis: SymBasis, lambda: Partition) -> Self {
        SymElement::from_terms(ctx, basis, [(lambda, QY::one())])
    }

    pub fn constant(ctx: SymContext, c: QY) -> Self {
        SymElement::from_terms(ctx, SymBasis::E, [(Partition::empty(), c)])
    }

    pub fn from_terms(ctx: SymContext, basis: SymBasis, terms: impl IntoIterator<Item = (Partition, QY)>) -> Self {
        let mut t = BTreeMap::new();
        for (k, v) in terms {
            e_add(&mut t, k, v);
        }
        SymElement { ctx, basis, terms: t }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, QY> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> QY {
        self.terms.get(lambda).cloned().unwrap_or_else(QY::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn to_e(&self) -> Result<EPoly> {
        let mut out = EPoly::new();
        for (k, v) in &self.terms {
            for (p, c) in basis_to_e(&self.ctx, self.basis, k)? {
                e_add(&mut out, p, c * v.clone());
            }
        }
        Ok(out)
    }

    fn from_e(ctx: SymContext, basis: SymBasis, e: &EPoly) -> Result<Self> {
        Ok(SymElement { ctx, basis, terms: e_from(&ctx, basis, e)? })
    }

    pub fn to_basis(&self, basis: SymBasis) -> Result<Self> {
        if basis == self.basis {
            return Ok(self.clone());
        }
        SymElement::from_e(self.ctx, basis, &self.to_e()?)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let o = other.to_basis(self.basis)?;
        let mut t = self.terms.clone();
        for (k, v) in o.terms {
            e_add(&mut t, k, v);
        }
        Ok(SymElement { ctx: self.ctx, basis: self.basis, terms: t })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&q(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let prod = e_mul(&self.to_e()?, &other.to_e()?);
        SymElement::from_e(self.ctx, self.basis, &prod)
    }

    pub fn scale(&self, c: &QY) -> Self {
        SymElement { ctx: self.ctx, basis: self.basis, terms: e_scale(&self.terms, c) }
    }

    /// Apply `d`, `z` or `h`, keeping the basis.
    pub fn sl2(&self, op: Sl2Op) -> Result<Self> {
        let e = e_sl2(&self.ctx, op, &self.to_e()?)?;
        SymElement::from_e(self.ctx, self.basis, &e)
    }

    /// `op^l / l!` and whether it lands in the integral form (e-coefficients in `Z[y]`).
    pub fn divided(&self, op: Sl2Op, l: u32) -> Result<(Self, bool)> {
        let mut e = self.to_e()?;
        for _ in 0..l {
            e = e_sl2(&self.ctx, op, &e)?;
        }
        let f = QY::constant(BigRational::from_integer(factorial(l as u64)));
        let inv = f.coeffs().first().cloned().unwrap_or_else(BigRational::one).recip();
        let e = e_scale(&e, &QY::constant(inv));
        let integral = e.values().all(QY::is_integral);
        Ok((SymElement::from_e(self.ctx, self.basis, &e)?, integral))
    }

    /// Whether the e-expansion has coefficients in `Z[y]`.
    pub fn is_integral(&self) -> Result<bool> {
        Ok(self.to_e()?.values().all(QY::is_integral))
    }

    /// `Ψ_n : Λ[y] → Sym[x_1..x_n]`, sending `e_k ↦ e_k` (zero for `k > n`) and `y ↦ n`.
    pub fn psi(&self, n: usize) -> Result<Self> {
        if !matches!(self.ctx, SymContext::LambdaY { y: None, .. }) {
            return Err(Error::InvalidArgument("Ψ_n needs an unspecialized Λ[y] element".into()));
        }
        let ny = BigRational::from_integer(BigInt::from(n));
        let mut out = EPoly::new();
        for (k, v) in self.to_e()? {
            if k.max_part() <= n {
                e_add(&mut out, k, QY::constant(v.eval(&ny)));
            }
        }
        SymElement::from_e(SymContext::NVars(n), self.basis, &out)
    }

    /// Specialize `y` to an integer, staying in `Λ[y]`.
    pub fn specialize_y(&self, c: i64) -> Result<Self> {
        let SymContext::LambdaY { precision, y: None } = self.ctx else {
            return Err(Error::InvalidArgument("only unspecialized Λ[y] elements can be specialized".into()));
        };
        let cy = BigRational::from_integer(BigInt::from(c));
        let mut t = BTreeMap::new();
        for (k, v) in &self.terms {
            e_add(&mut t, k.clone(), QY::constant(v.eval(&cy)));
        }
        Ok(SymElement { ctx: SymContext::LambdaY { precision, y: Some(c) }, basis: self.basis, terms: t })
    }

    /// Expand as a polynomial in `x_1..x_n`.
    pub fn to_x_poly(&self) -> Result<QPoly> {
        let SymContext::NVars(n) = self.ctx else {
            return Err(Error::InvalidArgument("x-expansion needs finitely many variables".into()));
        };
        let mut out = QPoly::zero(n);
        for (k, v) in self.to_e()? {
            let c = v.constant_value().ok_or_else(|| Error::InvalidArgument("coefficient depends on y".into()))?;
            out = &out + &e_monomial_poly(n, &k).scale(&c);
        }
        Ok(out)
    }

    pub fn from_x_poly(n: usize, f: &QPoly) -> Result<Self> {
        if f.n_vars() != n {
            return Err(Error::RankMismatch { left: n, right: f.n_vars() });
        }
        Ok(SymElement { ctx: SymContext::NVars(n), basis: SymBasis::E, terms: from_x_poly(n, f)? })
    }

    /// Random e-polynomial with integer coefficients (and `y`-dependence in `Λ[y]`),
    /// using parts up to `max_part` and degree up to `max_degree`.
    pub fn random(
        rng: &mut impl Rng,
        ctx: SymContext,
        max_degree: usize,
        max_part: usize,
        terms: usize,
    ) -> Self {
        let with_y = matches!(ctx, SymContext::LambdaY { y: None, .. });
        let mut out = BTreeMap::new();
        for _ in 0..terms {
            let target = rng.gen_range(0..=max_degree);
            let mut parts = Vec::new();
            let mut left = target;
            while left > 0 {
                let p = rng.gen_range(1..=left.min(max_part));
                parts.push(p);
                left -= p;
            }
            let mut coeffs = vec![BigRational::from_integer(rng.gen_range(-5i64..=5).into())];
            if with_y {
                coeffs.push(BigRational::from_integer(rng.gen_range(-3i64..=3).into()));
            }
            e_add(&mut out, Partition::new(parts).expect("valid parts"), QY::new(coeffs));
        }
        SymElement { ctx, basis: SymBasis::E, terms: out }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(k, v)| json!({"partition": k.parts(), "coef": v.to_json()}))
            .collect();
        json!({"ctx": self.ctx, "basis": self.basis, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let err = |s: String| Error::Parse(format!("symmetric function json: {s}"));
        let ctx: SymContext =
            serde_json::from_value(v.get("ctx").cloned().unwrap_or(Value::Null)).map_err(|e| err(e.to_string()))?;
        let basis: SymBasis =
            serde_json::from_value(v.get("basis").cloned().unwrap_or(Value::Null)).map_err(|e| err(e.to_string()))?;
        let items = v.get("terms").and_then(Value::as_array).ok_or_else(|| err("missing terms".into()))?;
        let mut terms = Vec::new();
        for t in items {
            let p: Vec<usize> = serde_json::from_value(t.get("partition").cloned().unwrap_or(Value::Null))
                .map_err(|e| err(e.to_string()))?;
            let c = QY::from_json(t.get("coef").unwrap_or(&Value::Null))?;
            terms.push((Partition::new(p)?, c));
        }
        Ok(SymElement::from_terms(ctx, basis, terms))
    }
}

fn body(basis: SymBasis, lambda: &Partition) -> String {
    if lambda.is_empty() {
        return String::new();
    }
    match basis {
        SymBasis::Schur => format!("s{lambda}"),
        SymBasis::M => format!("m{lambda}"),
        _ => {
            let letter = match basis {
                SymBasis::E => "e",
                SymBasis::H => "h",
                _ => "p",
            };
            let mut parts: Vec<String> = Vec::new();
            let mut i = 0;
            let ps = lambda.parts();
            while i < ps.len() {
                let j = ps[i..].iter().take_while(|&&p| p == ps[i]).count();
                parts.push(if j == 1 { format!("{letter}{}", ps[i]) } else { format!("{letter}{}^{j}", ps[i]) });
                i += j;
            }
            parts.join(" ")
        }
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_sum(self.terms.iter().rev().map(|(k, v)| (body(self.basis, k), v.clone()))))
    }
}

/// Closed-form sl2 action on Schur functions: `d` adds a box weighted by its
/// content, `z` removes one weighted by content plus `y` (or `n`).
pub fn schur_sl2(op: Sl2Op, lambda: &Partition, ctx: &SymContext) -> Result<SymElement> {
    let mut terms = Vec::new();
    match op {
        Sl2Op::D => {
            for (row, col) in lambda.addable_cells() {
                let mu = lambda.add_cell(row);
                if let SymContext::NVars(n) = ctx {
                    if mu.len() > *n {
                        continue;
                    }
                }
                if let SymContext::LambdaY { precision, .. } = ctx {
                    if mu.size() > *precision {
                        return Err(Error::PrecisionExceeded { index: mu.size(), precision: *precision });
                    }
                }
                terms.push((mu, q(col as i64 - row as i64)));
            }
        }
        Sl2Op::Z => {
            for (row, col) in lambda.removable_cells() {
                let content = col as i64 - row as i64;
                terms.push((lambda.remove_cell(row), ctx.y_value() + q(content)));
            }
        }
        Sl2Op::H => terms.push((lambda.clone(), q(2 * lambda.size() as i64))),
    }
    Ok(SymElement::from_terms(*ctx, SymBasis::Schur, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn generator_formulas() {
        let ctx = SymContext::lambda(8);
        let e2 = SymElement::basis_element(ctx, SymBasis::E, part(&[2]));
        let d = e2.sl2(Sl2Op::D).unwrap();
        assert_eq!(d.to_string(), "-3 e3 + e2 e1");
        let z = e2.sl2(Sl2Op::Z).unwrap();
        assert_eq!(z.to_string(), "(y - 1) e1");
        let h2 = SymElement::basis_element(ctx, SymBasis::H, part(&[2]));
        assert_eq!(h2.sl2(Sl2Op::D).unwrap().to_string(), "3 h3 - h2 h1");
        assert_eq!(h2.sl2(Sl2Op::Z).unwrap().to_string(), "(y + 1) h1");
        let p3 = SymElement::basis_element(ctx, SymBasis::P, part(&[3]));
        assert_eq!(p3.sl2(Sl2Op::D).unwrap().to_string(), "3 p4");
        assert_eq!(p3.sl2(Sl2Op::Z).unwrap().to_string(), "3 p2");
        let p1 = SymElement::basis_element(ctx, SymBasis::P, part(&[1]));
        assert_eq!(p1.sl2(Sl2Op::Z).unwrap().to_string(), "y");
    }

    #[test]
    fn precision_is_enforced() {
        let ctx = SymContext::lambda(3);
        let e3 = SymElement::basis_element(ctx, SymBasis::E, part(&[3]));
        assert!(matches!(e3.sl2(Sl2Op::D), Err(Error::PrecisionExceeded { .. })));
    }

    #[test]
    fn schur_routes_agree() {
        for n in 1..=4 {
            for g in 0..=5 {
                for lambda in partitions(g) {
                    let lam = SymElement::basis_element(SymContext::lambda(8), SymBasis::Schur, lambda.clone());
                    let via_psi = lam.psi(n).unwrap().to_e().unwrap();
                    let direct = SymElement::basis_element(SymContext::NVars(n), SymBasis::Schur, lambda.clone());
                    assert_eq!(via_psi, direct.to_e().unwrap(), "s{lambda} in {n} variables");
                }
            }
        }
    }

    #[test]
    fn basis_roundtrips() {
        let ctx = SymContext::lambda(6);
        for basis in [SymBasis::H, SymBasis::P, SymBasis::Schur] {
            for lambda in partitions(5) {
                let x = SymElement::basis_element(ctx, basis, lambda.clone());
                let back = x.to_basis(SymBasis::E).unwrap().to_basis(basis).unwrap();
                assert_eq!(back, x);
            }
        }
        let m = SymElement::basis_element(SymContext::NVars(3), SymBasis::M, part(&[2, 1]));
        assert_eq!(m.to_basis(SymBasis::E).unwrap().to_string(), "-3 e3 + e2 e1");
    }

    #[test]
    fn non_integral_divided_power() {
        let e5 = SymElement::basis_element(SymContext::lambda(8), SymBasis::E, part(&[5]));
        let (z2, integral) = e5.divided(Sl2Op::Z, 2).unwrap();
        assert!(!integral);
        assert_eq!(z2.coeff(&part(&[3])), binomial_y(-3, 2));
        assert!(e5.psi(4).unwrap().is_zero());
    }
}
