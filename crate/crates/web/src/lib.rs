//! Exports for the static demo page. Every function returns a JSON string with an
//! `ok` field; on failure it carries `error` instead of the payload.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use sl2core::heckechar::{compare_subexpressions, hk_char, hk_enum, Expression, Role, Subexpression};
use sl2core::nilhecke::{nh_char, psi_symbol, NHElement, Side};
use sl2core::rankone::RankOneSpec;
use sl2core::weyl::Permutation;

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(mut v) => {
            v["ok"] = json!(true);
            v.to_string()
        }
        Err(e) => json!({"ok": false, "error": e}).to_string(),
    }
}

fn ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("not an integer: {t:?}")))
        .collect()
}

fn letters(s: &str) -> Result<Vec<usize>, String> {
    ints(s)?.into_iter().map(|v| usize::try_from(v).map_err(|_| format!("negative index {v}"))).collect()
}

/// Core of `R_n⟨Σ a_i x_i⟩` with the d and z image of each basis monomial.
#[wasm_bindgen]
pub fn rank_one_core(a: &str) -> String {
    respond((|| {
        let a = ints(a)?;
        if a.is_empty() || a.len() > 4 {
            return Err("give between 1 and 4 coefficients".into());
        }
        if a.iter().any(|&c| c < -4) {
            return Err("coefficients below -4 make the core too large for the page".into());
        }
        let spec = RankOneSpec::Poly { a };
        let p = spec.p_poly().map_err(|e| e.to_string())?;
        let mut out = spec.core_json();
        if let sl2core::rankone::CoreBasis::Monomials(list) = spec.core_closed_form() {
            let arrows: Vec<Value> = list
                .iter()
                .map(|b| {
                    let f = sl2core::polyring::ZPoly::monomial(b);
                    json!({"element": f.to_string(), "d": f.d_twisted(&p).to_string(), "z": f.z().to_string()})
                })
                .collect();
            out["arrows"] = json!(arrows);
        }
        Ok(out)
    })())
}

/// `d(ψ_w)` in `NH_n` for a reduced word `w`, with its left and right characters.
#[wasm_bindgen]
pub fn nh_d(word: &str, n: usize) -> String {
    respond((|| {
        if !(1..=5).contains(&n) {
            return Err("n must be between 1 and 5".into());
        }
        let w = Permutation::from_word(n, &letters(word)?).map_err(|e| e.to_string())?;
        let psi = NHElement::psi(&w);
        let d = psi.d_closed().map_err(|e| e.to_string())?;
        Ok(json!({
            "w": w.images(),
            "length": w.length(),
            "psi": psi_symbol(&w),
            "d": d.to_string(),
            "p_left": nh_char(&w, Side::Left).to_string(),
            "p_right": nh_char(&w, Side::Right).to_string(),
        }))
    })())
}

/// Stroll table of a subexpression, its light-leaf characters, and its place among
/// the coterminal subexpressions in lexicoBruhat order.
#[wasm_bindgen]
pub fn hecke_stroll(expr: &str, bits: &str) -> String {
    respond((|| {
        let x = Expression::parse(expr, None).map_err(|e| e.to_string())?;
        if x.len() > 10 {
            return Err("expressions are limited to 10 letters".into());
        }
        let e = Subexpression::new(x.clone(), Subexpression::parse_bits(bits).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let stroll = e.stroll();
        let rows: Vec<Value> = (0..x.len())
            .map(|k| {
                json!({
                    "k": k + 1,
                    "letter": x.letters()[k],
                    "bit": e.bits()[k] as u8,
                    "decoration": stroll.decorations[k].to_string(),
                    "w": stroll.steps[k + 1].to_string(),
                })
            })
            .collect();
        let mut fiber = hk_enum(&x, stroll.terminus()).map_err(|e| e.to_string())?;
        fiber.sort_by(|a, b| compare_subexpressions(a, b).ok().flatten().unwrap_or(std::cmp::Ordering::Equal));
        let ll = hk_char(&e, Role::LightLeaf, None, Side::Left).map_err(|e| e.to_string())?;
        let gg = hk_char(&e, Role::Flipped, None, Side::Left).map_err(|e| e.to_string())?;
        Ok(json!({
            "n": x.n(),
            "start": stroll.steps[0].to_string(),
            "rows": rows,
            "terminus": stroll.terminus().to_string(),
            "p_LL": ll.to_string(),
            "p_GG": gg.to_string(),
            "coterminal": fiber.iter().map(Subexpression::bit_string).collect::<Vec<_>>(),
        }))
    })())
}
