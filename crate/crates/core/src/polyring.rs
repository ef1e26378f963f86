//! Polynomials in `x_1, ..., x_n` with `deg x_i = 2`, Demazure operators, and
//! the sl2 action `d = Σ x_i² ∂/∂x_i`, `z = Σ ∂/∂x_i`, `h = deg`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::coeff::{binomial, factorial, Coeff, Ring, ZY};
use crate::error::{Error, Result};
use crate::linalg::{solve_q, QMatrix};
use crate::weyl::Permutation;

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which generator of sl2 to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Sl2Op {
    #[serde(rename = "d")]
    D,
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "h")]
    H,
}

impl std::str::FromStr for Sl2Op {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d" => Ok(Sl2Op::D),
            "z" => Ok(Sl2Op::Z),
            "h" => Ok(Sl2Op::H),
            other => Err(Error::Parse(format!("unknown operator {other}"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<C> {
    n: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type ZPoly = Polynomial<BigInt>;
pub type QPoly = Polynomial<BigRational>;
pub type ZyPoly = Polynomial<ZY>;

impl<C: Coeff> Polynomial<C> {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: C) -> Self {
        Polynomial::term(Monomial::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, C::one())
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Polynomial::constant(n, C::from_i64(c))
    }

    /// The variable `x_i`, `1 ≤ i ≤ n`.
    pub fn var(n: usize, i: usize) -> Self {
        Polynomial::term(Monomial::var(n, i), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let n = m.0.len();
        let mut p = Polynomial::zero(n);
        p.add_term(m, c);
        p
    }

    pub fn monomial(exps: &[u32]) -> Self {
        Polynomial::term(Monomial(exps.to_vec()), C::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Polynomial::zero(n);
        for (m, c) in terms {
            assert_eq!(m.0.len(), n, "monomial length");
            p.add_term(m, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
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

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Largest total degree in the variables (half the internal grading).
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Internal grading `2·deg` if homogeneous; zero counts as homogeneous of any degree.
    pub fn grading(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::total_degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(2 * first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.grading().is_some()
    }

    /// Homogeneous component of variable degree `k`.
    pub fn component(&self, k: u32) -> Self {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.n))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial::from_terms(self.n, self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.n, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Exact division of all coefficients by an integer.
    pub fn div_int(&self, d: &BigInt) -> Result<Self> {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let q = c
                .div_int(d)
                .ok_or_else(|| Error::NonIntegral(format!("coefficient {c} not divisible by {d}")))?;
            out.add_term(m.clone(), q);
        }
        Ok(out)
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        Ok(self * other)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Polynomial::one(self.n), |acc, _| &acc * self)
    }

    /// `w · f`, substituting `x_k ↦ x_{w(k)}`.
    pub fn permute(&self, w: &Permutation) -> Result<Self> {
        if w.n() != self.n {
            return Err(Error::RankMismatch { left: self.n, right: w.n() });
        }
        Ok(Polynomial::from_terms(
            self.n,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; self.n];
                for k in 1..=self.n {
                    e[w.image(k) - 1] = m.0[k - 1];
                }
                (Monomial(e), c.clone())
            }),
        ))
    }

    /// `s_i · f`.
    pub fn swap_vars(&self, i: usize) -> Result<Self> {
        self.permute(&Permutation::simple(self.n, i)?)
    }

    /// Demazure operator `∂_i f = (f - s_i f)/(x_i - x_{i+1})`, computed monomial by
    /// monomial without division.
    pub fn demazure(&self, i: usize) -> Result<Self> {
        if i == 0 || i >= self.n {
            return Err(Error::InvalidIndex { index: i, n: self.n });
        }
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let (a, b) = (m.0[i - 1], m.0[i]);
            let (lo, hi, sign) = if a > b { (b, a, c.clone()) } else { (a, b, -c.clone()) };
            for j in 0..hi - lo {
                let mut e = m.0.clone();
                if a > b {
                    e[i - 1] = hi - 1 - j;
                    e[i] = lo + j;
                } else {
                    e[i - 1] = lo + j;
                    e[i] = hi - 1 - j;
                }
                out.add_term(Monomial(e), sign.clone());
            }
        }
        Ok(out)
    }

    /// `∂_{i_1} ∘ ... ∘ ∂_{i_k}`, the last letter applied first.
    pub fn demazure_word(&self, word: &[usize]) -> Result<Self> {
        let mut f = self.clone();
        for &i in word.iter().rev() {
            f = f.demazure(i)?;
        }
        Ok(f)
    }

    /// `∂_w` along the canonical reduced word of `w`.
    pub fn demazure_perm(&self, w: &Permutation) -> Result<Self> {
        if w.n() != self.n {
            return Err(Error::RankMismatch { left: self.n, right: w.n() });
        }
        self.demazure_word(&w.reduced_word())
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let a = m.0[i - 1];
            if a > 0 {
                let mut e = m.0.clone();
                e[i - 1] -= 1;
                out.add_term(Monomial(e), c.clone() * C::from_i64(a as i64));
            }
        }
        out
    }

    pub fn sl2(&self, op: Sl2Op) -> Self {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            match op {
                Sl2Op::H => out.add_term(m.clone(), c.clone() * C::from_i64(2 * m.total_degree() as i64)),
                Sl2Op::D | Sl2Op::Z => {
                    for i in 0..self.n {
                        let a = m.0[i];
                        if a == 0 {
                            continue;
                        }
                        let mut e = m.0.clone();
                        if op == Sl2Op::D {
                            e[i] += 1;
                        } else {
                            e[i] -= 1;
                        }
                        out.add_term(Monomial(e), c.clone() * C::from_i64(a as i64));
                    }
                }
            }
        }
        out
    }

    pub fn d(&self) -> Self {
        self.sl2(Sl2Op::D)
    }

    pub fn z(&self) -> Self {
        self.sl2(Sl2Op::Z)
    }

    pub fn h(&self) -> Self {
        self.sl2(Sl2Op::H)
    }

    /// `op^l / l!`, failing with `NonIntegral` when the result leaves the ring.
    pub fn divided(&self, op: Sl2Op, l: u32) -> Result<Self> {
        let mut f = self.clone();
        for _ in 0..l {
            f = f.sl2(op);
        }
        f.div_int(&factorial(l as u64))
    }

    /// Closed form of `d^(l)` and `z^(l)` on monomials: both are sums over
    /// compositions `c` of `l` of products of binomial coefficients.
    pub fn divided_closed(&self, op: Sl2Op, l: u32) -> Result<Self> {
        if op == Sl2Op::H {
            return Err(Error::InvalidArgument("divided powers are defined for d and z".into()));
        }
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            for comp in compositions(l, self.n) {
                let mut coef = BigInt::one();
                let mut e = m.0.clone();
                let mut ok = true;
                for i in 0..self.n {
                    let (a, k) = (m.0[i] as u64, comp[i] as u64);
                    if op == Sl2Op::D {
                        if k > 0 && a == 0 {
                            ok = false;
                            break;
                        }
                        coef *= if k == 0 { BigInt::one() } else { binomial(a + k - 1, k) };
                        e[i] += comp[i];
                    } else {
                        if k > a {
                            ok = false;
                            break;
                        }
                        coef *= binomial(a, k);
                        e[i] -= comp[i];
                    }
                }
                if ok && !coef.is_zero() {
                    out.add_term(Monomial(e), c.clone() * C::from_int(&coef));
                }
            }
        }
        Ok(out)
    }

    /// Twisted action on `R_n⟨p⟩`: `d(f·1_p) = (d(f) + p f)·1_p`.
    pub fn d_twisted(&self, p: &Self) -> Self {
        &self.d() + &(p * self)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| json!({"exp": m.0, "coef": c.to_json()}))
            .collect();
        json!({"n": self.n, "ring": C::RING.to_string(), "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("polynomial needs an \"n\" field".into()))? as usize;
        if let Some(ring) = v.get("ring").and_then(Value::as_str) {
            let declared: Ring = serde_json::from_value(json!(ring)).map_err(|e| Error::Parse(e.to_string()))?;
            if !embeds(declared, C::RING) {
                return Err(Error::RingMismatch(format!("cannot read a {declared} polynomial over {}", C::RING)));
            }
        }
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("polynomial needs a \"terms\" array".into()))?;
        let mut p = Polynomial::zero(n);
        for t in terms {
            let exp: Vec<u32> = serde_json::from_value(t.get("exp").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::Parse(format!("bad exponent: {e}")))?;
            if exp.len() != n {
                return Err(Error::RankMismatch { left: n, right: exp.len() });
            }
            let c = C::from_json(t.get("coef").unwrap_or(&Value::Null))?;
            p.add_term(Monomial(exp), c);
        }
        Ok(p)
    }

    /// Parse expressions such as `x1^2 - 3*x1*x2 + (y-1)*x3`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut parser = Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, n };
        let p = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(Error::Parse(format!("unexpected input at position {} in {s:?}", parser.pos)));
        }
        Ok(p)
    }

    pub fn random(rng: &mut impl Rng, n: usize, max_degree: u32, terms: usize, coef_bound: i64) -> Self {
        let mut p = Polynomial::zero(n);
        for _ in 0..terms {
            let deg = rng.gen_range(0..=max_degree);
            let mut e = vec![0u32; n];
            for _ in 0..deg {
                e[rng.gen_range(0..n)] += 1;
            }
            p.add_term(Monomial(e), C::from_i64(rng.gen_range(-coef_bound..=coef_bound)));
        }
        p
    }

    pub fn random_homogeneous(rng: &mut impl Rng, n: usize, degree: u32, terms: usize, coef_bound: i64) -> Self {
        let mut p = Polynomial::zero(n);
        for _ in 0..terms {
            let mut e = vec![0u32; n];
            for _ in 0..degree {
                e[rng.gen_range(0..n)] += 1;
            }
            p.add_term(Monomial(e), C::from_i64(rng.gen_range(-coef_bound..=coef_bound)));
        }
        p
    }
}

fn embeds(from: Ring, to: Ring) -> bool {
    matches!(
        (from, to),
        (Ring::Z, _) | (Ring::Q, Ring::Q) | (Ring::Q, Ring::QY) | (Ring::ZY, Ring::ZY) | (Ring::ZY, Ring::QY) | (Ring::QY, Ring::QY)
    )
}

/// All weak compositions of `total` into `parts` parts.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All exponent vectors `b` with `b_i ≤ bounds[i]`.
pub fn boxed_exponents(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=b).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr<C: Coeff>(&mut self) -> Result<Polynomial<C>> {
        let mut acc = Polynomial::zero(self.n);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') | Some('−') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t: Polynomial<C> = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term<C: Coeff>(&mut self) -> Result<Polynomial<C>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(c) if c == '(' || c == 'x' || c == 'y' || c.is_ascii_digit() => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power<C: Coeff>(&mut self) -> Result<Polynomial<C>> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.number()?;
            let k = u32::try_from(k).map_err(|_| Error::Parse("exponent too large".into()))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a number at position {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse(format!("bad number {s}")))
    }

    fn atom<C: Coeff>(&mut self) -> Result<Polynomial<C>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('x') => {
                self.pos += 1;
                if self.peek() == Some('_') {
                    self.pos += 1;
                }
                let i = self.number()?;
                let i = usize::try_from(i).map_err(|_| Error::Parse("bad variable index".into()))?;
                if i == 0 || i > self.n {
                    return Err(Error::InvalidIndex { index: i, n: self.n });
                }
                Ok(Polynomial::var(self.n, i))
            }
            Some('y') => {
                self.pos += 1;
                let y = C::y().ok_or_else(|| Error::RingMismatch(format!("y is not available over {}", C::RING)))?;
                Ok(Polynomial::constant(self.n, y))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.number()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.number()?;
                    let num = C::from_int(&v);
                    let q = num
                        .div_int(&den)
                        .ok_or_else(|| Error::RingMismatch(format!("{v}/{den} is not in {}", C::RING)))?;
                    return Ok(Polynomial::constant(self.n, q));
                }
                Ok(Polynomial::constant(self.n, C::from_int(&v)))
            }
            other => Err(Error::Parse(format!("unexpected {other:?} at position {}", self.pos))),
        }
    }
}

impl<'a, C: Coeff> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Coeff> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, C: Coeff> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = Polynomial::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<C: Coeff> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $f(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

pub fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{e}", i + 1)),
        }
    }
    parts.join(" ")
}

/// Format `Σ c_k · body_k`, with `body` empty for a unit.
pub fn format_sum<C: Coeff>(items: impl IntoIterator<Item = (String, C)>) -> String {
    let mut out = String::new();
    for (body, c) in items {
        let neg = c.is_negative_leading();
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coef = if abs.is_compound() { format!("({abs})") } else { abs.to_string() };
        if body.is_empty() {
            out.push_str(&coef);
        } else if abs.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&format!("{coef} {body}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_sum(self.terms.iter().rev().map(|(m, c)| (format_monomial(m), c.clone()))))
    }
}

impl ZPoly {
    pub fn to_q(&self) -> QPoly {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    /// Linear form `Σ a_i x_i`.
    pub fn linear(coeffs: &[i64]) -> ZPoly {
        let n = coeffs.len();
        let mut p = ZPoly::zero(n);
        for (i, &a) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i + 1), BigInt::from(a));
        }
        p
    }

    /// Coefficients of a linear form, if the polynomial is one.
    pub fn linear_coeffs(&self) -> Option<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.n];
        for (m, c) in &self.terms {
            if m.total_degree() != 1 {
                return None;
            }
            let i = m.0.iter().position(|&e| e == 1)?;
            out[i] = c.clone();
        }
        Some(out)
    }
}

impl QPoly {
    pub fn to_z(&self) -> Option<ZPoly> {
        self.terms
            .values()
            .all(|c| c.is_integer())
            .then(|| self.map_coeffs(|c| c.to_integer()))
    }
}

/// Schubert polynomials `S_w`, built from `S_{w0} = x^δ` by `S_v = ∂_i S_{v s_i}`
/// whenever `ℓ(v s_i) > ℓ(v)`.
pub fn schubert(n: usize) -> BTreeMap<Permutation, ZPoly> {
    let w0 = Permutation::longest(n);
    let delta: Vec<u32> = (0..n).map(|i| (n - 1 - i) as u32).collect();
    let mut out = BTreeMap::new();
    out.insert(w0.clone(), ZPoly::monomial(&delta));
    let mut frontier = vec![w0];
    while let Some(w) = frontier.pop() {
        let sw = out[&w].clone();
        for i in 1..n {
            if !w.is_right_ascent(i) {
                let v = w.mul_simple_right(i).expect("index in range");
                if let std::collections::btree_map::Entry::Vacant(e) = out.entry(v.clone()) {
                    e.insert(sw.demazure(i).expect("index in range"));
                    frontier.push(v);
                }
            }
        }
    }
    out
}

/// Exponent box `{b : b_i ≤ i - 1}`, a basis of `R_n` over the symmetric polynomials.
pub fn staircase_exponents(n: usize) -> Vec<Vec<u32>> {
    boxed_exponents(&(0..n as u32).collect::<Vec<_>>())
}

/// Polynomials `D_v` in the span of the staircase monomials with
/// `∂_{w0}(S_u D_v) = δ_{u,v}`, solved exactly.
pub fn dual_schubert(n: usize) -> Result<BTreeMap<Permutation, ZPoly>> {
    let schub = schubert(n);
    let w0 = Permutation::longest(n);
    let w0word = w0.reduced_word();
    let basis = staircase_exponents(n);
    let perms: Vec<Permutation> = schub.keys().cloned().collect();
    // Pairing matrix P[u][b] = ∂_{w0}(S_u x^b), a polynomial; the equations are
    // all its coefficients.
    let mut rows_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, BigInt)> = Vec::new();
    for (ui, u) in perms.iter().enumerate() {
        for (bi, b) in basis.iter().enumerate() {
            let prod = &schub[u] * &ZPoly::monomial(b);
            let val = prod.demazure_word(&w0word)?;
            for (m, c) in val.terms() {
                let next = rows_index.len();
                let r = *rows_index.entry((ui, m.clone())).or_insert(next);
                entries.push((r, bi, c.clone()));
            }
        }
    }
    for ui in 0..perms.len() {
        let next = rows_index.len();
        rows_index.entry((ui, Monomial::one(n))).or_insert(next);
    }
    let mut mat = QMatrix::zeros(rows_index.len(), basis.len());
    for (r, c, v) in entries {
        mat.set(r, c, BigRational::from_integer(v));
    }
    let mut out = BTreeMap::new();
    for (vi, v) in perms.iter().enumerate() {
        let mut rhs = vec![BigRational::zero(); rows_index.len()];
        rhs[rows_index[&(vi, Monomial::one(n))]] = BigRational::one();
        let sol = solve_q(&mat, &rhs).ok_or_else(|| Error::InvalidArgument("no dual Schubert basis".into()))?;
        let mut p = ZPoly::zero(n);
        for (bi, b) in basis.iter().enumerate() {
            if !sol[bi].is_integer() {
                return Err(Error::NonIntegral(format!("dual Schubert coefficient {}", sol[bi])));
            }
            p.add_term(Monomial(b.clone()), sol[bi].to_integer());
        }
        out.insert(v.clone(), p);
    }
    Ok(out)
}

/// Coordinates of `f` on the monomial list `basis`, failing if `f` has other monomials.
pub fn coordinates<C: Coeff>(f: &Polynomial<C>, basis: &BTreeMap<Monomial, usize>) -> Result<Vec<C>> {
    let mut v = vec![C::zero(); basis.len()];
    for (m, c) in f.terms() {
        let idx = basis
            .get(m)
            .ok_or_else(|| Error::InvalidModule(format!("monomial {} outside basis", format_monomial(m))))?;
        v[*idx] = c.clone();
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(n: usize, s: &str) -> ZPoly {
        ZPoly::parse(n, s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let p = zp(2, "x1^2 - 3*x1*x2 + 2");
        assert_eq!(p.to_string(), "x1^2 - 3 x1 x2 + 2");
        assert_eq!(ZPoly::from_json(&p.to_json()).unwrap(), p);
        assert!(ZPoly::parse(2, "x3").is_err());
        assert!(ZPoly::parse(2, "y").is_err());
        let q = ZyPoly::parse(1, "(y - 1) x1").unwrap();
        assert_eq!(q.to_string(), "(y - 1) x1");
    }

    #[test]
    fn demazure_matches_definition() {
        let f = zp(3, "x1^3 x2 + 2 x2^2 x3 - x1 x3^4 + 7");
        for i in 1..3 {
            let lhs = &zp(3, &format!("x{} - x{}", i, i + 1)) * &f.demazure(i).unwrap();
            assert_eq!(lhs, &f - &f.swap_vars(i).unwrap());
        }
        assert_eq!(zp(2, "x2").demazure(1).unwrap(), zp(2, "-1"));
    }

    #[test]
    fn sl2_relation() {
        let f = zp(3, "x1^3 x2 - 5 x2^2 x3 + x3");
        assert_eq!(&f.d().z() - &f.z().d(), f.h());
    }

    #[test]
    fn divided_closed_forms_agree() {
        let f = zp(3, "x1^3 x2 - 5 x2^2 x3 + x3 + 4 x1^2 x2^2 x3");
        for l in 0..5 {
            for op in [Sl2Op::D, Sl2Op::Z] {
                assert_eq!(f.divided(op, l).unwrap(), f.divided_closed(op, l).unwrap());
            }
        }
    }

    #[test]
    fn schubert_small() {
        let s = schubert(3);
        assert_eq!(s.len(), 6);
        assert_eq!(s[&Permutation::identity(3)], zp(3, "1"));
        assert_eq!(s[&Permutation::simple(3, 1).unwrap()], zp(3, "x1"));
        assert_eq!(s[&Permutation::simple(3, 2).unwrap()], zp(3, "x1 + x2"));
        let d = dual_schubert(2).unwrap();
        assert_eq!(d[&Permutation::identity(2)], zp(2, "-x2"));
        assert_eq!(d[&Permutation::longest(2)], zp(2, "1"));
    }

    #[test]
    fn dual_pairing_n3() {
        let s = schubert(3);
        let d = dual_schubert(3).unwrap();
        let w0 = Permutation::longest(3);
        for (u, su) in &s {
            for (v, dv) in &d {
                let val = (su * dv).demazure_perm(&w0).unwrap();
                let expect = if u == v { zp(3, "1") } else { ZPoly::zero(3) };
                assert_eq!(val, expect);
            }
        }
    }
}
