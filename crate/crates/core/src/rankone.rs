//! Rank-one modules `R⟨p⟩` with `d(1_p) = p·1_p` and `z(1_p) = 0`, over `R_n`,
//! its symmetric polynomials, and `Λ[y]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coeff::{Coeff, QY, ZY};
use crate::error::{Error, Result};
use crate::linalg::{same_lattice, ZMatrix, ZVec};
use crate::polyring::{boxed_exponents, compositions, coordinates, format_monomial, Monomial, Sl2Op, ZPoly};
use crate::sl2mod::{ModuleKind, WeightModule, WeightSpace};
use crate::symfun::{partitions, partitions_bounded, Partition, SymBasis, SymContext, SymElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "base")]
pub enum RankOneSpec {
    /// `p = Σ a_i x_i` over `R_n`.
    #[serde(rename = "R_n")]
    Poly { a: Vec<i64> },
    /// `p = a e_1` over the symmetric polynomials in `n` variables.
    #[serde(rename = "R_n_sym")]
    Sym { n: usize, a: i64 },
    /// `p = a e_1` over `Λ[y]`.
    #[serde(rename = "Lambda_y")]
    Lambda { a: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoreBasis {
    Zero,
    /// Exponent vectors `b` with `0 ≤ b_i ≤ -a_i`.
    Monomials(Vec<Vec<u32>>),
    /// `e_1^{i_1} ... e_n^{i_n}` with `i_1 + ... + i_n ≤ -a`.
    EMonomials(Vec<Partition>),
    /// The constants `Z[y]`.
    Constants,
}

impl CoreBasis {
    pub fn rank(&self) -> Option<usize> {
        match self {
            CoreBasis::Zero => Some(0),
            CoreBasis::Monomials(v) => Some(v.len()),
            CoreBasis::EMonomials(v) => Some(v.len()),
            CoreBasis::Constants => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialP {
    #[serde(rename = "delta")]
    Delta,
    #[serde(rename = "delta_prime")]
    DeltaPrime,
}

/// `R_n⟨-δ⟩` with `δ = (n-1)x_1 + ... + x_{n-1}`, or `R_n⟨-δ'⟩` with `δ' = x_2 + 2x_3 + ... + (n-1)x_n`.
pub fn special_p(kind: SpecialP, n: usize) -> RankOneSpec {
    let a = (1..=n)
        .map(|i| match kind {
            SpecialP::Delta => -((n - i) as i64),
            SpecialP::DeltaPrime => -((i - 1) as i64),
        })
        .collect();
    RankOneSpec::Poly { a }
}

impl RankOneSpec {
    /// `ς(p)`, the weight of the generator.
    pub fn generator_degree(&self) -> ZY {
        match self {
            RankOneSpec::Poly { a } => ZY::from_i64(a.iter().sum()),
            RankOneSpec::Sym { n, a } => ZY::from_i64(a * *n as i64),
            RankOneSpec::Lambda { a } => ZY::new(vec![BigInt::zero(), BigInt::from(*a)]),
        }
    }

    fn integer_degree(&self) -> Result<i64> {
        match self {
            RankOneSpec::Poly { a } => Ok(a.iter().sum()),
            RankOneSpec::Sym { n, a } => Ok(a * *n as i64),
            RankOneSpec::Lambda { .. } => {
                Err(Error::InvalidArgument("Λ[y] modules need y specialized to an integer".into()))
            }
        }
    }

    pub fn p_poly(&self) -> Result<ZPoly> {
        match self {
            RankOneSpec::Poly { a } => Ok(ZPoly::linear(a)),
            _ => Err(Error::InvalidArgument("p is a multiple of e_1".into())),
        }
    }

    pub fn core_closed_form(&self) -> CoreBasis {
        match self {
            RankOneSpec::Poly { a } => {
                if a.iter().any(|&x| x > 0) {
                    return CoreBasis::Zero;
                }
                let bounds: Vec<u32> = a.iter().map(|&x| (-x) as u32).collect();
                CoreBasis::Monomials(boxed_exponents(&bounds))
            }
            RankOneSpec::Sym { n, a } => {
                if *a > 0 {
                    return CoreBasis::Zero;
                }
                let mut out = Vec::new();
                for count in 0..=(-a) as usize {
                    out.extend(multisets(*n, count));
                }
                CoreBasis::EMonomials(out)
            }
            RankOneSpec::Lambda { a } => {
                if *a == 0 {
                    CoreBasis::Constants
                } else {
                    CoreBasis::Zero
                }
            }
        }
    }

    /// The weight module spanned by basis elements times `1_p` up to `window`.
    pub fn module(&self, window: i64) -> Result<WeightModule> {
        match self {
            RankOneSpec::Poly { a } => poly_module(a, window),
            RankOneSpec::Sym { n, a } => {
                sym_module(SymContext::NVars(*n), *a, *a * *n as i64, window, |t| partitions_bounded(t, *n))
            }
            RankOneSpec::Lambda { .. } => {
                Err(Error::InvalidArgument("use lambda_module with y specialized to an integer".into()))
            }
        }
    }

    /// `Λ[y]⟨a e_1⟩` with `y` specialized to `y`.
    pub fn lambda_module(a: i64, y: i64, window: i64) -> Result<WeightModule> {
        let base = a * y;
        let top = if window < base { 0 } else { ((window - base) / 2) as usize };
        let ctx = SymContext::LambdaY { precision: top + 1, y: Some(y) };
        sym_module(ctx, a, base, window, partitions)
    }

    /// The core by linear algebra, with bound `B = -ς(p)` (or `|ς(p)|` when the core is zero).
    pub fn brute_force_core(&self) -> Result<crate::sl2mod::Core> {
        let s = self.integer_degree()?;
        let bound = s.abs();
        self.module(bound + 2)?.core(bound)
    }

    /// Compare the closed-form core with the brute-force one, weight by weight.
    pub fn cores_agree(&self) -> Result<bool> {
        let brute = self.brute_force_core()?;
        let module = self.module(self.integer_degree()?.abs() + 2)?;
        let mut expected: BTreeMap<i64, Vec<ZVec>> = BTreeMap::new();
        let s = self.integer_degree()?;
        match self.core_closed_form() {
            CoreBasis::Zero => {}
            CoreBasis::Monomials(list) => {
                for b in list {
                    let m = s + 2 * b.iter().sum::<u32>() as i64;
                    let label = poly_label(&Monomial(b));
                    expected.entry(m).or_default().push(unit_for(&module, m, &label)?);
                }
            }
            CoreBasis::EMonomials(list) => {
                for p in list {
                    let m = s + 2 * p.size() as i64;
                    let label = sym_label(&p);
                    expected.entry(m).or_default().push(unit_for(&module, m, &label)?);
                }
            }
            CoreBasis::Constants => return Err(Error::InvalidArgument("Λ[y] cores are symbolic".into())),
        }
        let found: BTreeMap<i64, Vec<ZVec>> = brute
            .embedding
            .iter()
            .map(|(&m, e)| (m, e.transpose().to_rows()))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        if found.keys().ne(expected.keys()) {
            return Ok(false);
        }
        Ok(found.iter().all(|(m, v)| same_lattice(v, &expected[m])))
    }

    /// Core basis labels with their weights, `None` for the symbolic `Λ[y]` case.
    pub fn core_labels(&self) -> Option<Vec<(i64, String)>> {
        let s = self.integer_degree().ok();
        match self.core_closed_form() {
            CoreBasis::Zero => Some(Vec::new()),
            CoreBasis::Monomials(list) => {
                let s = s?;
                Some(list.iter().map(|b| (s + 2 * b.iter().sum::<u32>() as i64, poly_label(&Monomial(b.clone())))).collect())
            }
            CoreBasis::EMonomials(list) => {
                let s = s?;
                Some(list.iter().map(|p| (s + 2 * p.size() as i64, sym_label(p))).collect())
            }
            CoreBasis::Constants => None,
        }
    }

    /// Weight multiplicities of the core.
    pub fn core_character(&self) -> Option<BTreeMap<i64, usize>> {
        let mut ch = BTreeMap::new();
        for (m, _) in self.core_labels()? {
            *ch.entry(m).or_insert(0) += 1;
        }
        Some(ch)
    }

    pub fn core_json(&self) -> Value {
        let degree = self.generator_degree().to_string();
        match self.core_labels() {
            Some(labels) => {
                let basis: Vec<Value> = labels.iter().map(|(m, l)| json!({"element": l, "weight": m})).collect();
                let character: Vec<[i64; 2]> =
                    self.core_character().unwrap_or_default().into_iter().map(|(m, c)| [m, c as i64]).collect();
                json!({"spec": self, "generator_degree": degree, "rank": labels.len(), "basis": basis, "character": character})
            }
            None => json!({"spec": self, "generator_degree": degree, "rank": null, "basis": "Z[y]", "character": null}),
        }
    }
}

/// Multisets of size `count` from `{1..n}`, as partitions.
fn multisets(n: usize, count: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for comp in compositions(count as u32, n) {
        let mut parts = Vec::new();
        for (i, &c) in comp.iter().enumerate() {
            parts.extend(std::iter::repeat_n(i + 1, c as usize));
        }
        out.push(Partition::new(parts).expect("positive parts"));
    }
    out
}

fn poly_label(m: &Monomial) -> String {
    let body = format_monomial(m);
    if body.is_empty() {
        "1".into()
    } else {
        body
    }
}

fn sym_label(p: &Partition) -> String {
    let s = SymElement::basis_element(SymContext::NVars(usize::MAX), SymBasis::E, p.clone()).to_string();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn unit_for(module: &WeightModule, m: i64, label: &str) -> Result<ZVec> {
    let space = module
        .space(m)
        .ok_or_else(|| Error::InvalidModule(format!("no weight {m}")))?;
    let idx = space
        .labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::InvalidModule(format!("no basis vector {label} at weight {m}")))?;
    let mut v = vec![BigInt::zero(); space.rank()];
    v[idx] = BigInt::from(1);
    Ok(v)
}

fn poly_module(a: &[i64], window: i64) -> Result<WeightModule> {
    let n = a.len();
    let s: i64 = a.iter().sum();
    if window < s {
        return Ok(WeightModule::zero());
    }
    let top = ((window - s) / 2) as u32;
    let p = ZPoly::linear(a);
    let bases: Vec<Vec<Monomial>> = (0..=top)
        .map(|t| compositions(t, n).into_iter().map(Monomial).collect())
        .collect();
    let index: Vec<BTreeMap<Monomial, usize>> = bases
        .iter()
        .map(|b| b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
        .collect();
    let mut spaces = BTreeMap::new();
    for t in 0..=top as usize {
        let rank = bases[t].len();
        let up = if t < top as usize { bases[t + 1].len() } else { 0 };
        let down = if t > 0 { bases[t - 1].len() } else { 0 };
        let mut d = ZMatrix::zeros(up, rank);
        let mut z = ZMatrix::zeros(down, rank);
        for (c, m) in bases[t].iter().enumerate() {
            let f = ZPoly::term(m.clone(), BigInt::from(1));
            if up > 0 {
                for (r, v) in coordinates(&f.d_twisted(&p), &index[t + 1])?.into_iter().enumerate() {
                    d.set(r, c, v);
                }
            }
            if down > 0 {
                for (r, v) in coordinates(&f.sl2(Sl2Op::Z), &index[t - 1])?.into_iter().enumerate() {
                    z.set(r, c, v);
                }
            }
        }
        let labels = bases[t].iter().map(poly_label).collect();
        spaces.insert(s + 2 * t as i64, WeightSpace { labels, d, z });
    }
    WeightModule::new(ModuleKind::Custom(format!("R_{n}⟨{p}⟩")), spaces, window)
}

fn sym_module(
    ctx: SymContext,
    a: i64,
    base: i64,
    window: i64,
    keys: impl Fn(usize) -> Vec<Partition>,
) -> Result<WeightModule> {
    if window < base {
        return Ok(WeightModule::zero());
    }
    let top = ((window - base) / 2) as usize;
    let bases: Vec<Vec<Partition>> = (0..=top).map(&keys).collect();
    let index: Vec<BTreeMap<Partition, usize>> = bases
        .iter()
        .map(|b| b.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect())
        .collect();
    let e1 = SymElement::basis_element(ctx, SymBasis::E, Partition::single(1)).scale(&QY::from_i64(a));
    let coords = |x: &SymElement, idx: &BTreeMap<Partition, usize>| -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); idx.len()];
        for (p, c) in x.to_basis(SymBasis::E)?.terms() {
            let i = idx
                .get(p)
                .ok_or_else(|| Error::InvalidModule(format!("e-monomial {p} outside basis")))?;
            let c = c
                .constant_value()
                .filter(|c| c.is_integer())
                .ok_or_else(|| Error::NonIntegral(format!("coefficient {c}")))?;
            v[*i] = c.to_integer();
        }
        Ok(v)
    };
    let mut spaces = BTreeMap::new();
    for t in 0..=top {
        let rank = bases[t].len();
        let up = if t < top { bases[t + 1].len() } else { 0 };
        let down = if t > 0 { bases[t - 1].len() } else { 0 };
        let mut d = ZMatrix::zeros(up, rank);
        let mut z = ZMatrix::zeros(down, rank);
        for (c, p) in bases[t].iter().enumerate() {
            let x = SymElement::basis_element(ctx, SymBasis::E, p.clone());
            if up > 0 {
                let dx = x.sl2(Sl2Op::D)?.add(&x.mul(&e1)?)?;
                for (r, v) in coords(&dx, &index[t + 1])?.into_iter().enumerate() {
                    d.set(r, c, v);
                }
            }
            if down > 0 {
                for (r, v) in coords(&x.sl2(Sl2Op::Z)?, &index[t - 1])?.into_iter().enumerate() {
                    z.set(r, c, v);
                }
            }
        }
        let labels = bases[t].iter().map(sym_label).collect();
        spaces.insert(base + 2 * t as i64, WeightSpace { labels, d, z });
    }
    WeightModule::new(ModuleKind::Custom(format!("{ctx}⟨{a} e1⟩")), spaces, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_specs() {
        assert_eq!(special_p(SpecialP::Delta, 3), RankOneSpec::Poly { a: vec![-2, -1, 0] });
        assert_eq!(special_p(SpecialP::DeltaPrime, 3), RankOneSpec::Poly { a: vec![0, -1, -2] });
        assert_eq!(special_p(SpecialP::Delta, 1), RankOneSpec::Poly { a: vec![0] });
    }

    #[test]
    fn closed_forms() {
        assert_eq!(RankOneSpec::Poly { a: vec![1, 0] }.core_closed_form(), CoreBasis::Zero);
        assert_eq!(RankOneSpec::Poly { a: vec![-2] }.core_closed_form().rank(), Some(3));
        let sym = RankOneSpec::Sym { n: 3, a: -1 }.core_closed_form();
        assert_eq!(sym.rank(), Some(4));
        assert_eq!(RankOneSpec::Lambda { a: 0 }.core_closed_form(), CoreBasis::Constants);
    }

    #[test]
    fn module_character() {
        let m = RankOneSpec::Poly { a: vec![-2] }.module(6).unwrap();
        assert_eq!(m.character(), BTreeMap::from([(-2, 1), (0, 1), (2, 1), (4, 1), (6, 1)]));
        assert!(m.check_axioms().is_ok());
        let s = RankOneSpec::Sym { n: 3, a: -1 }.module(8).unwrap();
        assert!(s.check_axioms().is_ok());
    }

    #[test]
    fn brute_force_matches_closed_form() {
        for a in [vec![-2, -1, 0], vec![-1, -1], vec![0, 1], vec![-3]] {
            assert!(RankOneSpec::Poly { a: a.clone() }.cores_agree().unwrap(), "{a:?}");
        }
        for (n, a) in [(2, -1), (3, -1), (2, -2), (2, 1)] {
            assert!(RankOneSpec::Sym { n, a }.cores_agree().unwrap(), "n={n} a={a}");
        }
    }

    #[test]
    fn json_shape() {
        let s: RankOneSpec = serde_json::from_str(r#"{"base":"R_n","a":[-2,-1,0]}"#).unwrap();
        assert_eq!(s, special_p(SpecialP::Delta, 3));
        let t: RankOneSpec = serde_json::from_str(r#"{"base":"R_n_sym","n":3,"a":-1}"#).unwrap();
        assert_eq!(t, RankOneSpec::Sym { n: 3, a: -1 });
    }

    #[test]
    fn n3_core_character() {
        let spec = RankOneSpec::Poly { a: vec![-2, -1, 0] };
        assert_eq!(spec.core_character().unwrap(), BTreeMap::from([(-3, 1), (-1, 2), (1, 2), (3, 1)]));
        assert_eq!(spec.core_json()["rank"], 6);
        assert_eq!(RankOneSpec::Lambda { a: 0 }.core_json()["basis"], "Z[y]");
        assert_eq!(RankOneSpec::Poly { a: vec![1] }.core_character().unwrap(), BTreeMap::new());
    }
}
