//! Subexpressions, Bruhat strolls and their decorations, the lexicoBruhat orders,
//! and the double-leaf characters `p_LL`, `p_ΓΓ`, `p_DL`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::nilhecke::Side;
use crate::polyring::ZPoly;
use crate::weyl::Permutation;
use crate::{Error, Result};

/// A sequence of simple reflections `s_{x_1}, ..., s_{x_d}` in `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Expression {
    n: usize,
    letters: Vec<usize>,
}

impl Expression {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::InvalidIndex { index: bad, n });
        }
        Ok(Expression { n, letters })
    }

    /// Comma-separated indices; `n` defaults to one more than the largest index.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self> {
        let letters: Vec<usize> = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad simple reflection {t:?}"))))
            .collect::<Result<_>>()?;
        let n = n.unwrap_or_else(|| letters.iter().max().map_or(2, |m| m + 1));
        Expression::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Expression) -> Result<Expression> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        Ok(Expression { n: self.n, letters: [self.letters.clone(), other.letters.clone()].concat() })
    }

    /// Every expression of length `d` in `S_n`.
    pub fn all(n: usize, d: usize) -> Vec<Expression> {
        let mut out = vec![Vec::new()];
        for _ in 0..d {
            out = out
                .into_iter()
                .flat_map(|w: Vec<usize>| {
                    (1..n).map(move |i| {
                        let mut v = w.clone();
                        v.push(i);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|letters| Expression { n, letters }).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decoration {
    U0,
    U1,
    D0,
    D1,
}

impl Decoration {
    pub fn is_up(self) -> bool {
        matches!(self, Decoration::U0 | Decoration::U1)
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stroll {
    /// `w_0, w_1, ..., w_d`, with `w_0` the start.
    pub steps: Vec<Permutation>,
    pub decorations: Vec<Decoration>,
}

impl Stroll {
    pub fn terminus(&self) -> &Permutation {
        self.steps.last().expect("stroll has a start")
    }
}

/// A 0/1 string on an expression, with the start of its stroll (the identity for
/// ordinary subexpressions).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subexpression {
    expr: Expression,
    bits: Vec<bool>,
    start: Permutation,
}

impl Subexpression {
    pub fn new(expr: Expression, bits: Vec<bool>) -> Result<Self> {
        let start = Permutation::identity(expr.n);
        Subexpression::tail(expr, bits, start)
    }

    pub fn tail(expr: Expression, bits: Vec<bool>, start: Permutation) -> Result<Self> {
        if bits.len() != expr.len() {
            return Err(Error::InvalidArgument(format!("{} bits for an expression of length {}", bits.len(), expr.len())));
        }
        if start.n() != expr.n {
            return Err(Error::RankMismatch { left: expr.n, right: start.n() });
        }
        Ok(Subexpression { expr, bits, start })
    }

    /// Bits given as a string such as `0110` or `0,1,1,0`.
    pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
        s.chars()
            .filter(|c| !matches!(c, ',' | ' '))
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bits must be 0 or 1, got {c:?}"))),
            })
            .collect()
    }

    pub fn expr(&self) -> &Expression {
        &self.expr
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn start(&self) -> &Permutation {
        &self.start
    }

    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// `w_k = w_{k-1} s_{x_k}^{e_k}`, decorated `U` when `w_{k-1} s_{x_k} > w_{k-1}`.
    pub fn stroll(&self) -> Stroll {
        let mut steps = vec![self.start.clone()];
        let mut decorations = Vec::with_capacity(self.bits.len());
        for (&i, &bit) in self.expr.letters.iter().zip(&self.bits) {
            let prev = steps.last().expect("nonempty").clone();
            let up = prev.is_right_ascent(i);
            decorations.push(match (up, bit) {
                (true, false) => Decoration::U0,
                (true, true) => Decoration::U1,
                (false, false) => Decoration::D0,
                (false, true) => Decoration::D1,
            });
            steps.push(if bit { prev.mul_simple_right(i).expect("index checked") } else { prev });
        }
        Stroll { steps, decorations }
    }

    pub fn terminus(&self) -> Permutation {
        self.stroll().terminus().clone()
    }

    pub fn to_json(&self) -> Value {
        let stroll = self.stroll();
        json!({
            "expr": self.expr.letters,
            "n": self.expr.n,
            "bits": self.bits.iter().map(|&b| b as u8).collect::<Vec<_>>(),
            "start": self.start.images(),
            "stroll": stroll.steps.iter().map(|w| w.images().to_vec()).collect::<Vec<_>>(),
            "decorations": stroll.decorations.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// `E(x, w)`: all subexpressions of `x` with terminus `w`.
pub fn hk_enum(x: &Expression, w: &Permutation) -> Result<Vec<Subexpression>> {
    if w.n() != x.n {
        return Err(Error::RankMismatch { left: x.n, right: w.n() });
    }
    Ok(all_subexpressions(x).into_iter().filter(|e| &e.terminus() == w).collect())
}

/// All `2^d` subexpressions, bits read as a binary number with the first letter most significant.
pub fn all_subexpressions(x: &Expression) -> Vec<Subexpression> {
    let d = x.len();
    (0..1u64 << d)
        .map(|mask| {
            let bits = (0..d).map(|k| mask >> (d - 1 - k) & 1 == 1).collect();
            Subexpression::new(x.clone(), bits).expect("lengths match")
        })
        .collect()
}

/// The index `k ≥ 1` of last difference between two strolls of equal length, if any.
pub fn last_difference(a: &Stroll, b: &Stroll) -> Option<usize> {
    (0..a.steps.len()).rev().find(|&k| a.steps[k] != b.steps[k])
}

/// lexicoBruhat comparison: compare `w_k` and `w'_k` in the Bruhat order at the
/// index of last difference. Subexpressions with the same terminus are always
/// comparable; `None` is possible only when the termini differ and are incomparable.
pub fn compare_subexpressions(a: &Subexpression, b: &Subexpression) -> Result<Option<Ordering>> {
    if a.expr != b.expr {
        return Err(Error::MismatchedExpressions);
    }
    Ok(compare_strolls(&a.stroll(), &b.stroll()))
}

pub fn compare_strolls(a: &Stroll, b: &Stroll) -> Option<Ordering> {
    match last_difference(a, b) {
        None => Some(Ordering::Equal),
        Some(k) => {
            let (u, v) = (&a.steps[k], &b.steps[k]);
            if u.bruhat_le(v).expect("same rank") {
                Some(Ordering::Less)
            } else if v.bruhat_le(u).expect("same rank") {
                Some(Ordering::Greater)
            } else {
                None
            }
        }
    }
}

/// `(e, f, w)` with `e ⊂ x`, `f ⊂ x'` both ending at `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoterminalTriple {
    pub e: Subexpression,
    pub f: Subexpression,
    pub w: Permutation,
}

impl CoterminalTriple {
    pub fn new(e: Subexpression, f: Subexpression) -> Result<Self> {
        let w = e.terminus();
        if f.terminus() != w {
            return Err(Error::NotCoterminal);
        }
        Ok(CoterminalTriple { e, f, w })
    }
}

/// Componentwise order on triples; `None` when incomparable.
pub fn compare_triples(a: &CoterminalTriple, b: &CoterminalTriple) -> Result<Option<Ordering>> {
    let first = compare_subexpressions(&a.e, &b.e)?;
    let second = compare_subexpressions(&a.f, &b.f)?;
    Ok(match (first, second) {
        (Some(x), Some(y)) if x == y => Some(x),
        (Some(Ordering::Equal), Some(y)) => Some(y),
        (Some(x), Some(Ordering::Equal)) => Some(x),
        _ => None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "LL")]
    LightLeaf,
    #[serde(rename = "GG")]
    Flipped,
}

impl FromStr for Role {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "LL" | "ll" => Ok(Role::LightLeaf),
            "GG" | "gg" | "ΓΓ" => Ok(Role::Flipped),
            _ => Err(Error::Parse(format!("role must be LL or GG, got {s:?}"))),
        }
    }
}

/// `p_LL(e) = Σ_{U0} w_k(x_{y_k}) - Σ_{D0} w_k(x_{y_k+1})`, and `p_ΓΓ` with the
/// two variables exchanged.
pub fn p_leaf(e: &Subexpression, role: Role) -> ZPoly {
    let n = e.expr.n;
    let stroll = e.stroll();
    let mut out = ZPoly::zero(n);
    for (k, (&y, &dec)) in e.expr.letters.iter().zip(&stroll.decorations).enumerate() {
        let wk = &stroll.steps[k + 1];
        let (up_var, down_var) = match role {
            Role::LightLeaf => (y, y + 1),
            Role::Flipped => (y + 1, y),
        };
        if !e.bits[k] {
            debug_assert_eq!(*wk, stroll.steps[k]);
        }
        match dec {
            Decoration::U0 => out = &out + &ZPoly::var(n, wk.image(up_var)),
            Decoration::D0 => out = &out - &ZPoly::var(n, wk.image(down_var)),
            _ => {}
        }
    }
    out
}

/// `p_DL(e, f) = p_LL(e) + p_ΓΓ(f)`; on the right, `w⁻¹(p_DL)`.
pub fn p_dl(e: &Subexpression, f: &Subexpression, side: Side) -> Result<ZPoly> {
    let t = CoterminalTriple::new(e.clone(), f.clone())?;
    let p = &p_leaf(e, Role::LightLeaf) + &p_leaf(f, Role::Flipped);
    match side {
        Side::Left => Ok(p),
        Side::Right => p.permute(&t.w.inverse()),
    }
}

/// The character of `e` in the given role, or of the double leaf when a partner is given.
pub fn hk_char(e: &Subexpression, role: Role, partner: Option<&Subexpression>, side: Side) -> Result<ZPoly> {
    match partner {
        Some(f) => match role {
            Role::LightLeaf => p_dl(e, f, side),
            Role::Flipped => p_dl(f, e, side),
        },
        None => {
            let p = p_leaf(e, role);
            match side {
                Side::Left => Ok(p),
                Side::Right => p.permute(&e.terminus().inverse()),
            }
        }
    }
}

/// `#U0 - #D0`.
pub fn updown_balance(e: &Subexpression) -> i64 {
    e.stroll()
        .decorations
        .iter()
        .map(|d| match d {
            Decoration::U0 => 1,
            Decoration::D0 => -1,
            _ => 0,
        })
        .sum()
}

pub fn sigma(p: &ZPoly) -> BigInt {
    crate::nilhecke::sigma(p)
}

/// Decorated stroll as a text table.
pub fn stroll_table(e: &Subexpression) -> String {
    let stroll = e.stroll();
    let mut out = format!("{:>3}  {:>4}  {:>3}  {:>4}  {}\n", "k", "s", "e", "dec", "w_k");
    out.push_str(&format!("{:>3}  {:>4}  {:>3}  {:>4}  {}\n", 0, "", "", "", stroll.steps[0]));
    for k in 0..e.bits.len() {
        out.push_str(&format!(
            "{:>3}  {:>4}  {:>3}  {:>4}  {}\n",
            k + 1,
            format!("s{}", e.expr.letters[k]),
            e.bits[k] as u8,
            stroll.decorations[k].to_string(),
            stroll.steps[k + 1]
        ));
    }
    out
}

/// Subexpressions of `v̄ z` that are all ones on `v̄`, matched with tail subexpressions
/// of `z` started at `v`: the strolls must agree on `z`, with the same decorations.
/// Returns the number of matched pairs.
pub fn tail_bijection(vbar: &Expression, z: &Expression) -> Result<usize> {
    let v = Permutation::from_word(vbar.n, &vbar.letters)?;
    if v.length() != vbar.len() {
        return Err(Error::InvalidArgument("the expression for v must be reduced".into()));
    }
    let full = vbar.concat(z)?;
    let m = vbar.len();
    let mut count = 0;
    for tail in all_subexpressions(z) {
        let tail = Subexpression::tail(z.clone(), tail.bits, v.clone())?;
        let bits: Vec<bool> = std::iter::repeat_n(true, m).chain(tail.bits.iter().copied()).collect();
        let whole = Subexpression::new(full.clone(), bits)?;
        let (ws, ts) = (whole.stroll(), tail.stroll());
        if ws.steps[m..] != ts.steps[..] || ws.decorations[m..] != ts.decorations[..] {
            return Err(Error::InvalidArgument(format!("tail stroll mismatch at bits {}", tail.bit_string())));
        }
        count += 1;
    }
    let restricted = all_subexpressions(&full).into_iter().filter(|e| e.bits[..m].iter().all(|&b| b)).count();
    if restricted != count {
        return Err(Error::InvalidArgument(format!("{restricted} restricted subexpressions against {count} tails")));
    }
    Ok(count)
}

/// Permutations of `S_n` by index, with right multiplication and Bruhat tables,
/// for exhaustive sweeps.
struct Tables {
    perms: Vec<Permutation>,
    right: Vec<Vec<usize>>,
    le: Vec<Vec<bool>>,
}

impl Tables {
    fn new(n: usize) -> Self {
        let perms = Permutation::all(n);
        let index: std::collections::HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let right = perms
            .iter()
            .map(|w| {
                let mut row = vec![0; n];
                for i in 1..n {
                    row[i] = index[&w.mul_simple_right(i).expect("index in range")];
                }
                row
            })
            .collect();
        let le = perms.iter().map(|u| perms.iter().map(|v| u.bruhat_le(v).expect("same rank")).collect()).collect();
        Tables { perms, right, le }
    }

    /// Strolls of every subexpression, indexed by the bit mask of [`all_subexpressions`].
    fn strolls(&self, x: &Expression) -> Vec<Vec<usize>> {
        let d = x.len();
        (0..1usize << d)
            .map(|mask| {
                let mut steps = Vec::with_capacity(d + 1);
                let mut cur = 0;
                steps.push(cur);
                for (k, &i) in x.letters.iter().enumerate() {
                    if mask >> (d - 1 - k) & 1 == 1 {
                        cur = self.right[cur][i];
                    }
                    steps.push(cur);
                }
                steps
            })
            .collect()
    }

    /// lexicoBruhat comparison of two strolls. At a last difference `k < d` the strolls
    /// satisfy `w_k = w'_k s_{x_{k+1}}`, which is asserted; at `k = d` the termini
    /// differ and may be incomparable.
    fn compare(&self, x: &Expression, a: &[usize], b: &[usize]) -> std::result::Result<Option<Ordering>, String> {
        let Some(k) = (0..a.len()).rev().find(|&k| a[k] != b[k]) else {
            return Ok(Some(Ordering::Equal));
        };
        if k == 0 {
            return Err("strolls differ at the start".into());
        }
        if k < x.len() {
            let i = x.letters[k];
            if self.right[b[k]][i] != a[k] {
                return Err(format!(
                    "at last difference k = {k}, w_k = {} is not w'_k s_{i} for w'_k = {}",
                    self.perms[a[k]], self.perms[b[k]]
                ));
            }
        }
        Ok(if self.le[a[k]][b[k]] {
            Some(Ordering::Less)
        } else if self.le[b[k]][a[k]] {
            Some(Ordering::Greater)
        } else {
            None
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Audit {
    pub expressions: usize,
    pub comparisons: u64,
}

fn mask_bits(mask: usize, d: usize) -> String {
    (0..d).map(|k| if mask >> (d - 1 - k) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Exhaustive audit of the lexicoBruhat order for every expression of length
/// `≤ max_len` in `S_n`: it is a linear order on each `E(x, w)`, antisymmetric on all
/// subexpressions, and transitive on all triples of subexpressions. The error is a
/// witness.
pub fn audit_lexico(n: usize, max_len: usize) -> std::result::Result<Audit, String> {
    let t = Tables::new(n);
    let mut audit = Audit { expressions: 0, comparisons: 0 };
    for d in 0..=max_len {
        for x in Expression::all(n, d) {
            let strolls = t.strolls(&x);
            let ctx = |e: String| format!("expression {:?}: {e}", x.letters);
            let cmp = |a: usize, b: usize| t.compare(&x, &strolls[a], &strolls[b]).map_err(ctx);
            let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (m, st) in strolls.iter().enumerate() {
                fibers.entry(st[d]).or_default().push(m);
            }
            for fiber in fibers.values_mut() {
                let mut failure = None;
                fiber.sort_by(|&a, &b| match cmp(a, b) {
                    Ok(Some(o)) => o,
                    Ok(None) => {
                        failure.get_or_insert(format!("bits {} and {} incomparable", mask_bits(a, d), mask_bits(b, d)));
                        Ordering::Equal
                    }
                    Err(e) => {
                        failure.get_or_insert(e);
                        Ordering::Equal
                    }
                });
                if let Some(e) = failure {
                    return Err(e);
                }
                for i in 0..fiber.len() {
                    for j in i + 1..fiber.len() {
                        let (a, b) = (fiber[i], fiber[j]);
                        if cmp(a, b)? != Some(Ordering::Less) || cmp(b, a)? != Some(Ordering::Greater) {
                            return Err(ctx(format!("bits {} and {} break the linear order", mask_bits(a, d), mask_bits(b, d))));
                        }
                        audit.comparisons += 2;
                    }
                }
            }
            let size = strolls.len();
            for a in 0..size {
                if cmp(a, a)? != Some(Ordering::Equal) {
                    return Err(ctx(format!("bits {} not equal to itself", mask_bits(a, d))));
                }
                for b in a + 1..size {
                    let (fwd, back) = (cmp(a, b)?, cmp(b, a)?);
                    if fwd == Some(Ordering::Equal) || fwd.map(Ordering::reverse) != back {
                        return Err(ctx(format!("bits {} and {} not antisymmetric", mask_bits(a, d), mask_bits(b, d))));
                    }
                    audit.comparisons += 2;
                }
            }
            // Transitivity: the strict down-set of b sits inside that of a whenever b < a.
            let words = size.div_ceil(64);
            let mut below = vec![vec![0u64; words]; size];
            for a in 0..size {
                for b in 0..size {
                    if cmp(b, a)? == Some(Ordering::Less) {
                        below[a][b / 64] |= 1 << (b % 64);
                    }
                }
            }
            for a in 0..size {
                for b in 0..size {
                    if below[a][b / 64] >> (b % 64) & 1 == 0 {
                        continue;
                    }
                    if let Some(w) = (0..words).find(|&w| below[b][w] & !below[a][w] != 0) {
                        let c = w * 64 + (below[b][w] & !below[a][w]).trailing_zeros() as usize;
                        return Err(ctx(format!(
                            "not transitive on bits {}, {}, {}",
                            mask_bits(c, d),
                            mask_bits(b, d),
                            mask_bits(a, d)
                        )));
                    }
                    audit.comparisons += size as u64;
                }
            }
            audit.expressions += 1;
        }
    }
    Ok(audit)
}

/// For triples on `(x, x')` with `x'` either `x` or its reverse, confirm that
/// `w < w'` forces `(e, f, w) ≺ (e', f', w')`, and that the componentwise order is
/// antisymmetric.
pub fn audit_triples(n: usize, max_len: usize) -> std::result::Result<Audit, String> {
    let t = Tables::new(n);
    let mut audit = Audit { expressions: 0, comparisons: 0 };
    for d in 0..=max_len {
        for x in Expression::all(n, d) {
            let rev = Expression { n, letters: x.letters.iter().rev().copied().collect() };
            for xp in [&x, &rev] {
                let (se, sf) = (t.strolls(&x), t.strolls(xp));
                let cmp_e = |a: usize, b: usize| t.compare(&x, &se[a], &se[b]);
                let cmp_f = |a: usize, b: usize| t.compare(xp, &sf[a], &sf[b]);
                // Coterminal subexpressions are always comparable.
                let some = |o: Option<Ordering>| o.ok_or_else(|| format!("expression {:?}: coterminal pair incomparable", x.letters));
                let mut triples = Vec::new();
                for e in 0..se.len() {
                    for f in 0..sf.len() {
                        if se[e][d] == sf[f][d] {
                            triples.push((e, f, se[e][d]));
                        }
                    }
                }
                for &(e, f, w) in &triples {
                    for &(e2, f2, w2) in &triples {
                        let forward = combine(cmp_e(e, e2)?, cmp_f(f, f2)?);
                        let backward = combine(cmp_e(e2, e)?, cmp_f(f2, f)?);
                        if w == w2 {
                            some(cmp_e(e, e2)?)?;
                            some(cmp_f(f, f2)?)?;
                        }
                        if forward.map(Ordering::reverse) != backward {
                            return Err(format!("expression {:?}: triple order not antisymmetric", x.letters));
                        }
                        if w != w2 && t.le[w][w2] && forward != Some(Ordering::Less) {
                            return Err(format!(
                                "expression {:?}: termini {} < {} but triples ({}, {}) and ({}, {}) compare as {forward:?}",
                                x.letters,
                                t.perms[w],
                                t.perms[w2],
                                mask_bits(e, d),
                                mask_bits(f, d),
                                mask_bits(e2, d),
                                mask_bits(f2, d)
                            ));
                        }
                        audit.comparisons += 1;
                    }
                }
            }
            audit.expressions += 1;
        }
    }
    Ok(audit)
}

fn combine(a: Option<Ordering>, b: Option<Ordering>) -> Option<Ordering> {
    match (a?, b?) {
        (x, y) if x == y => Some(x),
        (Ordering::Equal, y) => Some(y),
        (x, Ordering::Equal) => Some(x),
        _ => None,
    }
}

/// `ς(p_DL(e, f)) = (#U0 - #D0)(e) + (#U0 - #D0)(f)` on every coterminal pair of
/// subexpressions of each expression of length `≤ max_len`. Returns the number of
/// triples checked.
pub fn audit_sigma(n: usize, max_len: usize) -> std::result::Result<u64, String> {
    let mut count = 0;
    for d in 0..=max_len {
        for x in Expression::all(n, d) {
            let subs = all_subexpressions(&x);
            let mut rows = Vec::with_capacity(subs.len());
            for e in &subs {
                let ll = sigma(&p_leaf(e, Role::LightLeaf));
                let gg = sigma(&p_leaf(e, Role::Flipped));
                let bal = BigInt::from(updown_balance(e));
                if ll != bal || gg != bal {
                    return Err(format!("expression {:?}, bits {}: ς(p_LL) = {ll}, ς(p_ΓΓ) = {gg}, #U0 - #D0 = {bal}", x.letters, e.bit_string()));
                }
                rows.push((e.terminus(), ll, gg, bal));
            }
            for (i, a) in rows.iter().enumerate() {
                for (j, b) in rows.iter().enumerate() {
                    if a.0 != b.0 {
                        continue;
                    }
                    let s = if d <= 4 {
                        sigma(&p_dl(&subs[i], &subs[j], Side::Left).map_err(|e| e.to_string())?)
                    } else {
                        &a.1 + &b.2
                    };
                    if s != &a.3 + &b.3 {
                        return Err(format!("expression {:?}, bits ({}, {}): ς(p_DL) = {s}", x.letters, subs[i].bit_string(), subs[j].bit_string()));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// [`tail_bijection`] for every reduced `v̄` in `S_n` and every `z` of length `≤ max_len`.
pub fn audit_tails(n: usize, max_len: usize) -> std::result::Result<u64, String> {
    let mut count = 0;
    for v in Permutation::all(n) {
        let vbar = Expression::new(n, v.reduced_word()).map_err(|e| e.to_string())?;
        for d in 0..=max_len {
            for z in Expression::all(n, d) {
                count += tail_bijection(&vbar, &z).map_err(|e| format!("v = {v}, z = {:?}: {e}", z.letters))? as u64;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(n: usize, letters: &[usize], bits: &str) -> Subexpression {
        Subexpression::new(Expression::new(n, letters.to_vec()).unwrap(), Subexpression::parse_bits(bits).unwrap()).unwrap()
    }

    #[test]
    fn strolls() {
        let s = sub(2, &[1], "1").stroll();
        assert_eq!(s.decorations, vec![Decoration::U1]);
        assert_eq!(s.terminus(), &Permutation::simple(2, 1).unwrap());
        let s = sub(2, &[1], "0").stroll();
        assert_eq!(s.decorations, vec![Decoration::U0]);
        assert!(s.terminus().is_identity());
        let s = sub(2, &[1, 1], "11").stroll();
        assert_eq!(s.decorations, vec![Decoration::U1, Decoration::D1]);
        assert!(s.terminus().is_identity());
    }

    #[test]
    fn enumeration() {
        let x = Expression::new(2, vec![1]).unwrap();
        let s1 = Permutation::simple(2, 1).unwrap();
        assert_eq!(hk_enum(&x, &s1).unwrap().len(), 1);
        let xx = Expression::new(2, vec![1, 1]).unwrap();
        let e: Vec<String> = hk_enum(&xx, &Permutation::identity(2)).unwrap().iter().map(Subexpression::bit_string).collect();
        assert_eq!(e, vec!["00", "11"]);
        let x3 = Expression::new(3, vec![1]).unwrap();
        assert!(hk_enum(&x3, &Permutation::simple(3, 2).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn lexico() {
        let a = sub(2, &[1, 1], "11");
        let b = sub(2, &[1, 1], "10");
        assert_eq!(compare_subexpressions(&a, &b).unwrap(), Some(Ordering::Less));
        assert_eq!(compare_subexpressions(&b, &a).unwrap(), Some(Ordering::Greater));
        assert_eq!(compare_subexpressions(&a, &a).unwrap(), Some(Ordering::Equal));
        let c = sub(2, &[1], "1");
        assert!(matches!(compare_subexpressions(&a, &c), Err(Error::MismatchedExpressions)));
    }

    #[test]
    fn characters() {
        for i in 1..=2 {
            let e = sub(3, &[i], "0");
            assert_eq!(p_leaf(&e, Role::LightLeaf), ZPoly::var(3, i));
            assert_eq!(p_dl(&e, &e, Side::Left).unwrap(), &ZPoly::var(3, i) + &ZPoly::var(3, i + 1));
        }
        assert!(p_leaf(&sub(3, &[1, 2, 1], "111"), Role::LightLeaf).is_zero());
        let e = sub(3, &[1, 2], "11");
        let f = sub(3, &[1], "1");
        assert!(matches!(p_dl(&e, &f, Side::Left), Err(Error::NotCoterminal)));
    }

    #[test]
    fn tails() {
        let v = Expression::new(3, vec![1, 2]).unwrap();
        let z = Expression::new(3, vec![1, 2, 1]).unwrap();
        assert_eq!(tail_bijection(&v, &z).unwrap(), 8);
        assert!(tail_bijection(&Expression::new(3, vec![1, 1]).unwrap(), &z).is_err());
    }

    #[test]
    fn small_audits() {
        assert!(audit_lexico(3, 4).is_ok());
        let x = Expression::new(3, vec![1, 2]).unwrap();
        let a = Subexpression::new(x.clone(), vec![true, false]).unwrap();
        let b = Subexpression::new(x, vec![false, true]).unwrap();
        assert_eq!(compare_subexpressions(&a, &b).unwrap(), None);
        assert!(audit_triples(3, 3).is_ok());
        assert!(audit_sigma(3, 4).is_ok());
        assert!(audit_tails(3, 2).is_ok());
    }
}
