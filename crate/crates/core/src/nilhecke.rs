//! The nilHecke algebra `NH_n`, stored in the normal form `Σ f_w ∂_w` with
//! polynomials on the left, and its sl2 action.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::linalg::{lattice_coordinates, same_lattice, ZVec};
use crate::polyring::{boxed_exponents, dual_schubert, format_monomial, format_sum, schubert, Monomial, ZPoly};
use crate::sl2mod::WeightModule;
use crate::weyl::{m_count, Permutation};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NHElement {
    n: usize,
    terms: BTreeMap<Permutation, ZPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Token {
    Dot(usize),
    Crossing(usize),
}

/// A product of dots `x_i` and crossings `∂_i`, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorWord(pub Vec<Token>);

impl FromStr for GeneratorWord {
    type Err = Error;

    /// Tokens `x3` for dots and `∂2` or `d2` for crossings, separated by spaces or `*`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let (kind, rest) = if let Some(r) = tok.strip_prefix('x') {
                ('x', r)
            } else if let Some(r) = tok.strip_prefix('∂').or_else(|| tok.strip_prefix('d')) {
                ('d', r)
            } else {
                return Err(Error::Parse(format!("unknown generator {tok:?}")));
            };
            let i: usize = rest.trim_start_matches('_').parse().map_err(|_| Error::Parse(format!("bad index in {tok:?}")))?;
            out.push(if kind == 'x' { Token::Dot(i) } else { Token::Crossing(i) });
        }
        Ok(GeneratorWord(out))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("side must be left or right, got {s:?}"))),
        }
    }
}

impl NHElement {
    pub fn zero(n: usize) -> Self {
        NHElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        NHElement::poly(ZPoly::one(n))
    }

    pub fn poly(f: ZPoly) -> Self {
        let mut out = NHElement::zero(f.n_vars());
        out.add_term(Permutation::identity(f.n_vars()), f);
        out
    }

    pub fn psi(w: &Permutation) -> Self {
        NHElement::term(ZPoly::one(w.n()), w.clone()).expect("ranks agree")
    }

    pub fn dot(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidIndex { index: i, n });
        }
        Ok(NHElement::poly(ZPoly::var(n, i)))
    }

    pub fn crossing(n: usize, i: usize) -> Result<Self> {
        Ok(NHElement::psi(&Permutation::simple(n, i)?))
    }

    pub fn term(f: ZPoly, w: Permutation) -> Result<Self> {
        let n = f.n_vars();
        if w.n() != n {
            return Err(Error::RankMismatch { left: n, right: w.n() });
        }
        let mut out = NHElement::zero(n);
        out.add_term(w, f);
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, ZPoly> {
        &self.terms
    }

    pub fn coeff(&self, w: &Permutation) -> ZPoly {
        self.terms.get(w).cloned().unwrap_or_else(|| ZPoly::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Permutation, f: ZPoly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&w) {
            Some(old) => &old + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    fn check(&self, other: &NHElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &NHElement) -> Result<NHElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, f) in &other.terms {
            out.add_term(w.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NHElement) -> Result<NHElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NHElement {
        NHElement { n: self.n, terms: self.terms.iter().map(|(w, f)| (w.clone(), -f)).collect() }
    }

    pub fn scale(&self, c: i64) -> NHElement {
        let c = BigInt::from(c);
        let mut out = NHElement::zero(self.n);
        for (w, f) in &self.terms {
            out.add_term(w.clone(), f.scale(&c));
        }
        out
    }

    /// Left multiplication by a polynomial.
    pub fn left_poly(&self, g: &ZPoly) -> NHElement {
        let mut out = NHElement::zero(self.n);
        for (w, f) in &self.terms {
            out.add_term(w.clone(), g * f);
        }
        out
    }

    /// `∂_i · self`, using `∂_i f = s_i(f) ∂_i + ∂_i(f)` and the nilCoxeter relations.
    pub fn left_crossing(&self, i: usize) -> Result<NHElement> {
        let mut out = NHElement::zero(self.n);
        for (w, f) in &self.terms {
            out.add_term(w.clone(), f.demazure(i)?);
            if w.is_left_ascent(i) {
                out.add_term(w.mul_simple_left(i)?, f.swap_vars(i)?);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &NHElement) -> Result<NHElement> {
        self.check(other)?;
        let mut out = NHElement::zero(self.n);
        for (u, f) in &self.terms {
            let mut b = other.clone();
            for &i in u.reduced_word().iter().rev() {
                b = b.left_crossing(i)?;
            }
            out = out.add(&b.left_poly(f))?;
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<NHElement> {
        (0..k).try_fold(NHElement::one(self.n), |acc, _| acc.mul(self))
    }

    pub fn normalize(word: &GeneratorWord, n: usize) -> Result<NHElement> {
        let mut out = NHElement::one(n);
        for tok in word.0.iter().rev() {
            out = match *tok {
                Token::Dot(i) => {
                    NHElement::dot(n, i)?;
                    out.left_poly(&ZPoly::var(n, i))
                }
                Token::Crossing(i) => {
                    Permutation::simple(n, i)?;
                    out.left_crossing(i)?
                }
            };
        }
        Ok(out)
    }

    /// `Σ f_w ∂_w(g)`.
    pub fn act(&self, g: &ZPoly) -> Result<ZPoly> {
        if g.n_vars() != self.n {
            return Err(Error::RankMismatch { left: self.n, right: g.n_vars() });
        }
        let mut out = ZPoly::zero(self.n);
        for (w, f) in &self.terms {
            out = &out + &(f * &g.demazure_perm(w)?);
        }
        Ok(out)
    }

    /// Recover the element acting on `R_n` as `op`, from its values on Schubert
    /// polynomials: `∂_w(S_v)` vanishes unless `ℓ(w) ≤ ℓ(v)`, and equals `δ_{w,v}` at equal length.
    pub fn from_operator(n: usize, op: impl Fn(&ZPoly) -> Result<ZPoly>) -> Result<NHElement> {
        let schub = schubert(n);
        let mut perms: Vec<&Permutation> = schub.keys().collect();
        perms.sort_by_key(|w| w.length());
        let mut out = NHElement::zero(n);
        for v in perms {
            let sv = &schub[v];
            let f = &op(sv)? - &out.act(sv)?;
            out.add_term(v.clone(), f);
        }
        Ok(out)
    }

    /// Equality decided by the faithful action on Schubert polynomials.
    pub fn eq_oracle(&self, other: &NHElement) -> Result<bool> {
        self.check(other)?;
        for s in schubert(self.n).values() {
            if self.act(s)? != other.act(s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `h` acts on `f ∂_w` by its degree `2 deg f - 2ℓ(w)`.
    pub fn h(&self) -> NHElement {
        let mut out = NHElement::zero(self.n);
        for (w, f) in &self.terms {
            let shift = BigInt::from(-2 * w.length() as i64);
            out.add_term(w.clone(), &f.h() + &f.scale(&shift));
        }
        out
    }

    /// `z` sends a dot to 1 and kills crossings.
    pub fn z(&self) -> NHElement {
        let mut out = NHElement::zero(self.n);
        for (w, f) in &self.terms {
            out.add_term(w.clone(), f.z());
        }
        out
    }

    /// `d` by the Leibniz rule from `d(x_i) = x_i²` and `d(∂_i) = 1 - 2x_i∂_i`,
    /// each `∂_w` expanded along its canonical reduced word.
    pub fn d_gen(&self) -> Result<NHElement> {
        self.d_with(|w| d_word(self.n, &w.reduced_word()))
    }

    /// `d` from the closed form for `d(ψ_w)`.
    pub fn d_closed(&self) -> Result<NHElement> {
        self.d_with(d_psi_closed)
    }

    fn d_with(&self, dpsi: impl Fn(&Permutation) -> Result<NHElement>) -> Result<NHElement> {
        let mut out = NHElement::zero(self.n);
        for (w, f) in &self.terms {
            out.add_term(w.clone(), f.d());
            if !w.is_identity() {
                out = out.add(&dpsi(w)?.left_poly(f))?;
            }
        }
        Ok(out)
    }

    /// `d` as the commutator with the action of `d` on `R_n⟨-δ⟩`, `δ = Σ (n-i) x_i`.
    pub fn d_operator(&self) -> Result<NHElement> {
        let n = self.n;
        let p = ZPoly::linear(&(1..=n).map(|i| -((n - i) as i64)).collect::<Vec<_>>());
        let dm = |g: &ZPoly| g.d_twisted(&p);
        NHElement::from_operator(n, |g| Ok(&dm(&self.act(g)?) - &self.act(&dm(g))?))
    }

    /// Rewrite as `Σ ∂_w g_w` with polynomials on the right, keyed by `w`.
    pub fn right_form(&self) -> Result<BTreeMap<Permutation, ZPoly>> {
        let mut rest = self.clone();
        let mut out = BTreeMap::new();
        while let Some(w) = rest.terms.keys().max_by_key(|w| (w.length(), (*w).clone())).cloned() {
            let g = rest.terms[&w].permute(&w.inverse())?;
            let back = NHElement::psi(&w).mul(&NHElement::poly(g.clone()))?;
            rest = rest.sub(&back)?;
            out.insert(w, g);
        }
        Ok(out)
    }

    pub fn random(rng: &mut impl Rng, n: usize, max_degree: u32, terms: usize) -> NHElement {
        let perms = Permutation::all(n);
        let mut out = NHElement::zero(n);
        for _ in 0..terms {
            let w = perms[rng.gen_range(0..perms.len())].clone();
            out.add_term(w, ZPoly::random(rng, n, max_degree, 2, 5));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(w, f)| json!({"w": w.images(), "f": f.to_json()})).collect();
        json!({"n": self.n, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<NHElement> {
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Parse("element needs \"n\"".into()))? as usize;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("element needs a \"terms\" array".into()))?;
        let mut out = NHElement::zero(n);
        for t in terms {
            let w: Permutation = serde_json::from_value(t.get("w").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::Parse(e.to_string()))?;
            let f = ZPoly::from_json(t.get("f").unwrap_or(&Value::Null))?;
            if w.n() != n || f.n_vars() != n {
                return Err(Error::RankMismatch { left: n, right: w.n().max(f.n_vars()) });
            }
            out.add_term(w, f);
        }
        Ok(out)
    }
}

pub fn psi_symbol(w: &Permutation) -> String {
    w.reduced_word().iter().map(|i| format!("∂{i}")).collect()
}

impl fmt::Display for NHElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut perms: Vec<&Permutation> = self.terms.keys().collect();
        perms.sort_by_key(|w| (w.length(), (*w).clone()));
        let mut items = Vec::new();
        for w in perms {
            let sym = psi_symbol(w);
            for (m, c) in self.terms[w].terms().rev() {
                let body = [format_monomial(m), sym.clone()].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>();
                items.push((body.join(" "), c.clone()));
            }
        }
        out.write_str(&format_sum(items))
    }
}

/// `d(∂_{i_1} ⋯ ∂_{i_k})` by the Leibniz rule along the given word.
pub fn d_word(n: usize, word: &[usize]) -> Result<NHElement> {
    let mut out = NHElement::zero(n);
    for j in 0..word.len() {
        let mut tail = NHElement::one(n);
        for &i in word[j + 1..].iter().rev() {
            tail = tail.left_crossing(i)?;
        }
        let i = word[j];
        let dx = NHElement::one(n).sub(&NHElement::crossing(n, i)?.left_poly(&ZPoly::var(n, i).scale(&BigInt::from(2))))?;
        let mut term = dx.mul(&tail)?;
        for &l in word[..j].iter().rev() {
            term = term.left_crossing(l)?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// `d(ψ_w) = p(w) ψ_w + Σ_{v <₁ w} (1 + 2 m_{v,w}) ψ_v`.
pub fn d_psi_closed(w: &Permutation) -> Result<NHElement> {
    let n = w.n();
    let mut out = NHElement::term(nh_char(w, Side::Left), w.clone())?;
    for (v, _) in w.lower_covers() {
        let c = 1 + 2 * m_count(&v, w)? as i64;
        out.add_term(v, ZPoly::from_int(n, c));
    }
    Ok(out)
}

/// The downfree character `p(w)` of `ψ_w`.
pub fn nh_char(w: &Permutation, side: Side) -> ZPoly {
    let n = w.n();
    let winv = w.inverse();
    let coeffs: Vec<i64> = (1..=n)
        .map(|k| {
            let count = match side {
                Side::Left => ((k + 1)..=n).filter(|&l| winv.image(l) < winv.image(k)).count(),
                Side::Right => (1..k).filter(|&l| w.image(l) > w.image(k)).count(),
            };
            -2 * count as i64
        })
        .collect();
    ZPoly::linear(&coeffs)
}

/// Sum of the coefficients of a linear polynomial.
pub fn sigma(p: &ZPoly) -> BigInt {
    p.terms().map(|(_, c)| c.clone()).fold(BigInt::zero(), |a, c| a + c)
}

/// Basis `{x^a ∂_{w0} x^b : a_i ≤ n-i, b_i ≤ i-1}` of the core of `NH_n`, with
/// the matrix units `S_u ∂_{w0} D_v`.
#[derive(Clone, Debug)]
pub struct NHCore {
    pub n: usize,
    pub basis: Vec<(Vec<u32>, Vec<u32>, NHElement)>,
    pub perms: Vec<Permutation>,
    pub units: Vec<Vec<NHElement>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NHCoreReport {
    pub n: usize,
    pub size: usize,
    pub closed_under_d: bool,
    pub closed_under_z: bool,
    pub nilpotent: bool,
    pub matrix_units_multiply: bool,
    pub units_span_core: bool,
    pub character: BTreeMap<i64, usize>,
    pub character_matches: bool,
}

impl NHCoreReport {
    pub fn passed(&self) -> bool {
        self.closed_under_d
            && self.closed_under_z
            && self.nilpotent
            && self.matrix_units_multiply
            && self.units_span_core
            && self.character_matches
    }
}

pub fn nh_core(n: usize) -> Result<NHCore> {
    if n == 0 || n > 4 {
        return Err(Error::InvalidArgument(format!("core of NH_n is built for 1 ≤ n ≤ 4, got {n}")));
    }
    let w0 = NHElement::psi(&Permutation::longest(n));
    let a_box = boxed_exponents(&(0..n).map(|i| (n - 1 - i) as u32).collect::<Vec<_>>());
    let b_box = boxed_exponents(&(0..n as u32).collect::<Vec<_>>());
    let mut basis = Vec::new();
    for a in &a_box {
        let left = w0.left_poly(&ZPoly::monomial(a));
        for b in &b_box {
            basis.push((a.clone(), b.clone(), left.mul(&NHElement::poly(ZPoly::monomial(b)))?));
        }
    }
    let schub = schubert(n);
    let dual = dual_schubert(n)?;
    let perms: Vec<Permutation> = schub.keys().cloned().collect();
    let mut units = Vec::new();
    for u in &perms {
        let left = w0.left_poly(&schub[u]);
        let row = perms.iter().map(|v| left.mul(&NHElement::poly(dual[v].clone()))).collect::<Result<Vec<_>>>()?;
        units.push(row);
    }
    Ok(NHCore { n, basis, perms, units })
}

/// Integer coordinate vectors of `elements` over a shared `(w, monomial)` index.
pub fn vectorize(elements: &[&NHElement]) -> Vec<ZVec> {
    let mut index: BTreeMap<(Permutation, Monomial), usize> = BTreeMap::new();
    for e in elements {
        for (w, f) in &e.terms {
            for (m, _) in f.terms() {
                let next = index.len();
                index.entry((w.clone(), m.clone())).or_insert(next);
            }
        }
    }
    elements
        .iter()
        .map(|e| {
            let mut v = vec![BigInt::zero(); index.len()];
            for (w, f) in &e.terms {
                for (m, c) in f.terms() {
                    v[index[&(w.clone(), m.clone())]] = c.clone();
                }
            }
            v
        })
        .collect()
}

impl NHCore {
    pub fn elements(&self) -> Vec<&NHElement> {
        self.basis.iter().map(|(_, _, e)| e).collect()
    }

    /// Whether `x` lies in the integer span of the basis.
    pub fn contains(&self, x: &NHElement) -> bool {
        let mut all = self.elements();
        all.push(x);
        let mut vecs = vectorize(&all);
        let target = vecs.pop().expect("target appended");
        lattice_coordinates(&vecs, &target).is_some()
    }

    pub fn unit(&self, u: &Permutation, v: &Permutation) -> Option<&NHElement> {
        let i = self.perms.iter().position(|p| p == u)?;
        let j = self.perms.iter().position(|p| p == v)?;
        Some(&self.units[i][j])
    }

    pub fn character(&self) -> BTreeMap<i64, usize> {
        let ell = Permutation::longest(self.n).length() as i64;
        let mut out = BTreeMap::new();
        for (a, b, _) in &self.basis {
            let deg: i64 = a.iter().chain(b).map(|&e| 2 * e as i64).sum::<i64>() - 2 * ell;
            *out.entry(deg).or_insert(0) += 1;
        }
        out
    }

    pub fn report(&self) -> Result<NHCoreReport> {
        let n = self.n;
        let power = (n * (n - 1) + 1) as u32;
        let mut closed_d = true;
        let mut closed_z = true;
        let mut nilpotent = true;
        for e in self.elements() {
            let de = e.d_closed()?;
            closed_d &= self.contains(&de);
            closed_z &= self.contains(&e.z());
            let mut x = de;
            for _ in 1..power {
                if x.is_zero() {
                    break;
                }
                x = x.d_closed()?;
            }
            nilpotent &= x.is_zero();
        }
        let k = self.perms.len();
        let mut multiply = true;
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for d in 0..k {
                        let prod = self.units[a][b].mul(&self.units[c][d])?;
                        let expect = if b == c { self.units[a][d].clone() } else { NHElement::zero(n) };
                        multiply &= prod == expect;
                    }
                }
            }
        }
        let mut all: Vec<&NHElement> = self.elements();
        let unit_refs: Vec<&NHElement> = self.units.iter().flatten().collect();
        all.extend(unit_refs.iter().copied());
        let vecs = vectorize(&all);
        let (basis_vecs, unit_vecs) = vecs.split_at(self.basis.len());
        let units_span = same_lattice(basis_vecs, unit_vecs);
        let character = self.character();
        Ok(NHCoreReport {
            n,
            size: self.basis.len(),
            closed_under_d: closed_d,
            closed_under_z: closed_z,
            nilpotent,
            matrix_units_multiply: multiply,
            units_span_core: units_span,
            character_matches: character == end_character(n)?,
            character,
        })
    }
}

/// Character of `End(L_0 ⊗ L_1 ⊗ ⋯ ⊗ L_{n-1})`, computed as a tensor square.
pub fn end_character(n: usize) -> Result<BTreeMap<i64, usize>> {
    let mut v = WeightModule::irreducible(0)?;
    for k in 1..n as i64 {
        v = v.tensor(&WeightModule::irreducible(k)?);
    }
    Ok(v.tensor(&v).character())
}

#[derive(Clone, Debug, Serialize)]
pub struct IdempotentReport {
    pub d: bool,
    pub h: bool,
    pub z: bool,
}

impl IdempotentReport {
    pub fn is_submodule(&self) -> bool {
        self.d && self.h && self.z
    }
}

/// For an idempotent `e`, whether `e·x(e) = 0` for `x ∈ {d, h, z}`.
pub fn submodule_idempotent(e: &NHElement) -> Result<IdempotentReport> {
    if e.mul(e)? != *e {
        return Err(Error::NotIdempotent);
    }
    Ok(IdempotentReport { d: e.mul(&e.d_closed()?)?.is_zero(), h: e.mul(&e.h())?.is_zero(), z: e.mul(&e.z())?.is_zero() })
}

/// `ψ_{w0} f ψ_{w0} = ∂_{w0}(f) ψ_{w0}`.
pub fn split_merge(f: &ZPoly) -> Result<bool> {
    let w0 = Permutation::longest(f.n_vars());
    let psi = NHElement::psi(&w0);
    let lhs = psi.mul(&NHElement::poly(f.clone()))?.mul(&psi)?;
    let rhs = psi.left_poly(&f.demazure_perm(&w0)?);
    Ok(lhs == rhs)
}

/// Confirms that the stored `d(∂_i)` is the commutator with `d` on `R_n⟨-δ⟩`.
pub fn check_crossing_convention(n: usize) -> Result<bool> {
    for i in 1..n {
        let x = NHElement::crossing(n, i)?;
        if x.d_gen()? != x.d_operator()? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> ZPoly {
        ZPoly::parse(n, s).unwrap()
    }

    fn el(n: usize, s: &str) -> NHElement {
        NHElement::normalize(&s.parse().unwrap(), n).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(el(2, "d1 x1").to_string(), "1 + x2 ∂1");
        assert!(el(2, "d1 d1").is_zero());
        assert_eq!(el(2, "x1 d1").to_string(), "x1 ∂1");
        let e = el(2, "x1 d1");
        assert_eq!(e.mul(&e).unwrap(), e);
        let w0 = NHElement::psi(&Permutation::longest(2));
        assert!(w0.mul(&w0).unwrap().is_zero());
    }

    #[test]
    fn action() {
        assert_eq!(el(2, "d1").act(&p(2, "x1")).unwrap(), p(2, "1"));
        let a = el(3, "d2 x1 d1 x3 x3 d2");
        let g = p(3, "x1^3 x2 - 2 x2 x3^2 + x1");
        let direct = g.demazure(2).unwrap();
        let direct = (&p(3, "x3^2") * &direct).demazure(1).unwrap();
        let direct = (&p(3, "x1") * &direct).demazure(2).unwrap();
        assert_eq!(a.act(&g).unwrap(), direct);
        let rebuilt = NHElement::from_operator(3, |h| a.act(h)).unwrap();
        assert_eq!(rebuilt, a);
    }

    #[test]
    fn d_on_crossing() {
        let x = el(2, "d1");
        assert_eq!(x.d_gen().unwrap().to_string(), "1 - 2 x1 ∂1");
        let d2 = x.d_gen().unwrap().d_gen().unwrap();
        assert_eq!(d2, NHElement::poly(p(2, "-2 x1")).add(&el(2, "x1 x1 d1").scale(2)).unwrap());
        assert!(d2.d_gen().unwrap().is_zero());
        for n in 2..=4 {
            assert!(check_crossing_convention(n).unwrap());
        }
        let two_letter = d_word(3, &[1, 2]).unwrap();
        assert_eq!(two_letter.to_string(), "3 ∂2 + ∂1 - 4 x1 ∂1∂2");
    }

    #[test]
    fn closed_form_matches() {
        for n in 2..=3 {
            for w in Permutation::all(n) {
                let x = NHElement::psi(&w);
                assert_eq!(x.d_gen().unwrap(), x.d_closed().unwrap(), "{w}");
                assert_eq!(x.d_gen().unwrap(), x.d_operator().unwrap(), "{w}");
            }
        }
        let w = Permutation::new(vec![2, 3, 1]).unwrap();
        let dw = d_psi_closed(&w).unwrap();
        assert_eq!(dw.coeff(&Permutation::new(vec![1, 3, 2]).unwrap()), p(3, "3"));
    }

    #[test]
    fn characters() {
        let s1 = Permutation::simple(2, 1).unwrap();
        assert_eq!(nh_char(&s1, Side::Left), p(2, "-2 x1"));
        assert_eq!(nh_char(&s1, Side::Right), p(2, "-2 x2"));
        let w = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(nh_char(&w, Side::Left), p(3, "-4 x1"));
        for w in Permutation::all(4) {
            for side in [Side::Left, Side::Right] {
                assert_eq!(sigma(&nh_char(&w, side)), BigInt::from(-2 * w.length() as i64));
            }
            assert_eq!(nh_char(&w, Side::Right), nh_char(&w, Side::Left).permute(&w.inverse()).unwrap());
        }
    }

    #[test]
    fn core_small() {
        let c2 = nh_core(2).unwrap();
        assert_eq!(c2.basis.len(), 4);
        let r = c2.report().unwrap();
        assert!(r.passed(), "{r:?}");
        let id = Permutation::identity(2);
        let s = Permutation::simple(2, 1).unwrap();
        assert_eq!(c2.unit(&s, &s).unwrap().to_string(), "x1 ∂1");
        assert_eq!(c2.unit(&id, &s).unwrap().to_string(), "∂1");
        assert_eq!(c2.unit(&s, &id).unwrap(), &el(2, "x1 d1 x2").neg());
        assert_eq!(c2.unit(&id, &id).unwrap(), &el(2, "d1 x2").neg());
        let c1 = nh_core(1).unwrap();
        assert_eq!(c1.basis.len(), 1);
        assert!(c1.report().unwrap().passed());
    }

    #[test]
    fn idempotents_and_split_merge() {
        let e = el(2, "x1 d1");
        let r = submodule_idempotent(&e).unwrap();
        assert!(r.z && !r.d);
        assert!(submodule_idempotent(&NHElement::one(2)).unwrap().is_submodule());
        assert!(matches!(submodule_idempotent(&el(2, "d1")), Err(Error::NotIdempotent)));
        assert!(split_merge(&p(2, "x1")).unwrap());
        assert!(split_merge(&p(3, "x1^3 x2 + 5 x3^2 x1 - x2")).unwrap());
    }

    #[test]
    fn right_form_roundtrip() {
        let a = el(3, "x1 d1 x2 d2 x3");
        let right = a.right_form().unwrap();
        let mut back = NHElement::zero(3);
        for (w, g) in &right {
            back = back.add(&NHElement::psi(w).mul(&NHElement::poly(g.clone())).unwrap()).unwrap();
        }
        assert_eq!(back, a);
        let j = a.to_json();
        assert_eq!(NHElement::from_json(&j).unwrap(), a);
    }
}
