//! Dotted bubbles in the region labelled `λ`, as symmetric functions with `y`
//! specialized to `λ`, and the sl2 identities they satisfy.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Partition, SymBasis, SymContext, SymElement};
use crate::coeff::{Coeff, QY};
use crate::error::{Error, Result};
use crate::polyring::Sl2Op;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bubble {
    pub orientation: Orientation,
    pub dots: i64,
    pub lambda: i64,
}

impl Bubble {
    /// The bubble of internal degree `2k`: a clockwise one carries `λ + k - 1`
    /// dots, a counterclockwise one `k - λ - 1`.
    pub fn of_degree(orientation: Orientation, degree: i64, lambda: i64) -> Result<Bubble> {
        if degree % 2 != 0 {
            return Err(Error::OddDegree(degree));
        }
        let k = degree / 2;
        let dots = match orientation {
            Orientation::Clockwise => lambda + k - 1,
            Orientation::Counterclockwise => k - lambda - 1,
        };
        Ok(Bubble { orientation, dots, lambda })
    }

    pub fn degree(&self) -> i64 {
        let k = match self.orientation {
            Orientation::Clockwise => self.dots - self.lambda + 1,
            Orientation::Counterclockwise => self.dots + self.lambda + 1,
        };
        2 * k
    }

    /// Clockwise `↦ h_k`, counterclockwise `↦ (-1)^k e_k`; zero in negative degree.
    pub fn to_sym(&self, precision: usize) -> Result<SymElement> {
        bubble_map(self.orientation, self.degree(), self.lambda, precision)
    }

    pub fn with_dots(&self, dots: i64) -> Bubble {
        Bubble { dots, ..*self }
    }
}

pub fn bubble_map(orientation: Orientation, degree: i64, lambda: i64, precision: usize) -> Result<SymElement> {
    if degree % 2 != 0 {
        return Err(Error::OddDegree(degree));
    }
    let ctx = SymContext::LambdaY { precision, y: Some(lambda) };
    let k = degree / 2;
    let basis = match orientation {
        Orientation::Clockwise => SymBasis::H,
        Orientation::Counterclockwise => SymBasis::E,
    };
    if k < 0 {
        return Ok(SymElement::zero(ctx, basis));
    }
    if k as usize > precision {
        return Err(Error::PrecisionExceeded { index: k as usize, precision });
    }
    let sign = match orientation {
        Orientation::Counterclockwise if k % 2 == 1 => -1,
        _ => 1,
    };
    Ok(SymElement::from_terms(ctx, basis, [(Partition::single(k as usize), QY::from_i64(sign))]))
}

/// Element of `Z[x_1..x_r] ⊗ Λ[y]|_{y=λ}`, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mixed {
    pub ctx: SymContext,
    pub terms: BTreeMap<Vec<u32>, SymElement>,
}

impl Mixed {
    pub fn zero(ctx: SymContext) -> Self {
        Mixed { ctx, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, s: SymElement) -> Result<()> {
        let s = s.to_basis(SymBasis::H)?;
        let sum = match self.terms.remove(&exps) {
            Some(old) => old.add(&s)?,
            None => s,
        };
        if !sum.is_zero() {
            self.terms.insert(exps, sum);
        }
        Ok(())
    }

    /// `z` acts on the polynomial factor by `Σ ∂/∂x_i` and on the symmetric factor by its own `z`.
    pub fn z(&self) -> Result<Mixed> {
        let mut out = Mixed::zero(self.ctx);
        for (exps, s) in &self.terms {
            out.add_term(exps.clone(), s.sl2(Sl2Op::Z)?)?;
            for i in 0..exps.len() {
                if exps[i] > 0 {
                    let mut e = exps.clone();
                    e[i] -= 1;
                    out.add_term(e, s.scale(&QY::from_i64(exps[i] as i64)))?;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn h(k: i64, lambda: i64, precision: usize) -> Result<SymElement> {
    bubble_map(Orientation::Clockwise, 2 * k, lambda, precision)
}

/// The curl sum `Σ_{a+b=-λ} h_a x^b`.
pub fn curl_sum(lambda: i64, precision: usize) -> Result<Mixed> {
    let mut m = Mixed::zero(SymContext::LambdaY { precision, y: Some(lambda) });
    for a in 0..=(-lambda).max(-1) {
        let b = -lambda - a;
        m.add_term(vec![b as u32], h(a, lambda, precision)?)?;
    }
    Ok(m)
}

/// The identity decomposition sum `Σ_{a+b+c=-λ-1} x_1^a h_b x_2^c`.
pub fn decomposition_sum(lambda: i64, precision: usize) -> Result<Mixed> {
    let total = -lambda - 1;
    let mut m = Mixed::zero(SymContext::LambdaY { precision, y: Some(lambda) });
    for b in 0..=total.max(-1) {
        for a in 0..=(total - b) {
            let c = total - b - a;
            m.add_term(vec![a as u32, c as u32], h(b, lambda, precision)?)?;
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct BubbleReport {
    pub lambda: i64,
    pub curl_terms: usize,
    pub curl_killed_by_z: bool,
    pub decomposition_terms: usize,
    pub decomposition_killed_by_z: bool,
    /// `z` lowers the dot count of every bubble up to the precision, with coefficient the dot count.
    pub dot_rule_holds: bool,
}

pub fn bubble_identities(lambda: i64, precision: usize) -> Result<BubbleReport> {
    let curl = curl_sum(lambda, precision)?;
    let dec = decomposition_sum(lambda, precision)?;
    let mut dot_rule = true;
    for orientation in [Orientation::Clockwise, Orientation::Counterclockwise] {
        for k in 0..=precision as i64 {
            let b = Bubble::of_degree(orientation, 2 * k, lambda)?;
            let lhs = b.to_sym(precision)?.sl2(Sl2Op::Z)?;
            let rhs = b.with_dots(b.dots - 1).to_sym(precision)?.scale(&QY::from_i64(b.dots));
            dot_rule &= lhs.sub(&rhs)?.is_zero();
        }
    }
    Ok(BubbleReport {
        lambda,
        curl_terms: curl.terms.len(),
        curl_killed_by_z: curl.z()?.is_zero(),
        decomposition_terms: dec.terms.len(),
        decomposition_killed_by_z: dec.z()?.is_zero(),
        dot_rule_holds: dot_rule,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_dots() {
        let b = Bubble::of_degree(Orientation::Clockwise, 4, -1).unwrap();
        assert_eq!(b.dots, 0);
        assert_eq!(b.degree(), 4);
        assert!(Bubble::of_degree(Orientation::Clockwise, 3, 0).is_err());
        let ccw = bubble_map(Orientation::Counterclockwise, 6, 0, 5).unwrap();
        assert_eq!(ccw.to_string(), "-e3");
        assert!(bubble_map(Orientation::Clockwise, -2, 0, 5).unwrap().is_zero());
    }

    #[test]
    fn identities_small() {
        for lambda in -4..=2 {
            let r = bubble_identities(lambda, 8).unwrap();
            assert!(r.curl_killed_by_z && r.decomposition_killed_by_z && r.dot_rule_holds, "{r:?}");
        }
    }
}
