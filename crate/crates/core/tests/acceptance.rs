//! One line per acceptance criterion. Each criterion runs its verification checks at
//! full size with the default seed; runtime bounds are measured per criterion.

use std::time::{Duration, Instant};

use sl2core::verify::{run_check, Status, VerifyOptions};

struct Criterion {
    number: u32,
    title: &'static str,
    checks: &'static [&'static str],
    budget: Option<Duration>,
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, title: "sl2 axioms on R_n, NH_n, Λ[y]", checks: &["axioms.polynomial", "axioms.nilhecke", "axioms.lambda"], budget: Some(Duration::from_secs(30)) },
    Criterion { number: 2, title: "z commutes with Demazure operators, d does not", checks: &["demazure.commute", "demazure.d-witness"], budget: None },
    Criterion { number: 3, title: "d and z on e_k, h_k, p_k", checks: &["sym.generators"], budget: None },
    Criterion { number: 4, title: "Schur content formulas with vanishing rows", checks: &["sym.schur"], budget: None },
    Criterion { number: 5, title: "Ψ_n equivariance", checks: &["sym.psi-equivariance"], budget: None },
    Criterion { number: 6, title: "divided powers on Λ[y]", checks: &["divided.lambda-d", "divided.z2-e5"], budget: None },
    Criterion { number: 7, title: "closed form for d(ψ_w)", checks: &["nh.dup-formula"], budget: Some(Duration::from_secs(60)) },
    Criterion { number: 8, title: "downfree filtration of NH_n", checks: &["nh.downfree"], budget: None },
    Criterion { number: 9, title: "core of NH_n and NH_2 matrix units", checks: &["nh.core", "nh.core.nh2-matrix"], budget: None },
    Criterion { number: 10, title: "core of R_3⟨-2x1-x2⟩", checks: &["rankone.n3-example"], budget: None },
    Criterion { number: 11, title: "Verma and coVerma modules over Z", checks: &["sl2mod.verma-coverma", "sl2mod.coverma-cores"], budget: None },
    Criterion { number: 12, title: "bubble identities", checks: &["bubbles.identities"], budget: None },
    Criterion { number: 13, title: "Hecke orders and characters", checks: &["hecke.lexico", "hecke.sigma", "hecke.tails"], budget: None },
    Criterion { number: 14, title: "KLR characters", checks: &["klr.single-color", "klr.degree"], budget: None },
    Criterion { number: 15, title: "split-merge identity", checks: &["nh.split-merge"], budget: None },
    Criterion { number: 16, title: "rank-one core oracle", checks: &["rankone.oracle"], budget: None },
];

const TOTAL_BUDGET: Duration = Duration::from_secs(600);

fn main() -> std::process::ExitCode {
    let opts = VerifyOptions::default();
    let start = Instant::now();
    let mut failed = Vec::new();
    for c in CRITERIA {
        let t = Instant::now();
        let mut problems = Vec::new();
        for id in c.checks {
            let r = run_check(id, &opts).expect("known check id");
            if r.status == Status::Fail {
                problems.push(format!("{id}: {}", r.witness.unwrap_or_default()));
            }
        }
        let elapsed = t.elapsed();
        if let Some(b) = c.budget {
            if elapsed > b {
                problems.push(format!("took {elapsed:?}, budget {b:?}"));
            }
        }
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {status}  {}  [{:.2}s]", c.number, c.title, elapsed.as_secs_f64());
        for p in &problems {
            println!("              {p}");
        }
        if !problems.is_empty() {
            failed.push(c.number);
        }
    }
    let total = start.elapsed();
    println!("total runtime {:.1}s (budget {}s)", total.as_secs_f64(), TOTAL_BUDGET.as_secs());
    let mut ok = failed.is_empty();
    if !ok {
        println!("failing criteria: {failed:?}");
    }
    if total > TOTAL_BUDGET {
        println!("suite exceeded its runtime budget");
        ok = false;
    }
    println!("acceptance: {}/{} criteria pass", CRITERIA.len() - failed.len(), CRITERIA.len());
    if ok {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
