use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sl2core::heckechar::{
    compare_subexpressions, hk_char, hk_enum, stroll_table, Expression, Role, Subexpression,
};
use sl2core::klrchar::{klr_char, klr_perms, psi_degree, DynkinGraph};
use sl2core::nilhecke::{nh_char, nh_core, psi_symbol, sigma, NHElement, Side};
use sl2core::polyring::{Sl2Op, ZPoly};
use sl2core::rankone::RankOneSpec;
use sl2core::sl2mod::{ModuleKind, WeightModule};
use sl2core::symfun::{Partition, SymBasis, SymContext, SymElement};
use sl2core::verify::{check_ids, run_check, run_suite, Report, VerifyOptions};
use sl2core::weyl::Permutation;

#[derive(Parser)]
#[command(name = "sl2", version, about = "Exact sl2 actions on polynomials, symmetric functions and nilHecke algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Cores of rank-one modules, standard modules and nilHecke algebras.
    #[command(subcommand)]
    Core(CoreCmd),
    /// Downfree characters.
    #[command(subcommand)]
    Char(CharCmd),
    /// Apply d, z, h or a divided power to a symmetric function.
    Sym(SymArgs),
    /// NilHecke algebra computations.
    #[command(subcommand)]
    Nh(NhCmd),
    /// Subexpressions, strolls and the lexicoBruhat order.
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// Colored permutations for KLR algebras.
    #[command(subcommand)]
    Klr(KlrCmd),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum CoreCmd {
    /// Core of R⟨p⟩ for p = Σ a_i x_i, or p = a e_1 with --sym or --lambda.
    Rankone {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Work in the symmetric polynomials in this many variables.
        #[arg(long, conflicts_with = "lambda")]
        sym: Option<usize>,
        /// Work in Λ[y].
        #[arg(long)]
        lambda: bool,
        /// Also compute the core by linear algebra and compare.
        #[arg(long)]
        check: bool,
    },
    /// Core of a Verma, coVerma, Weyl or dual Weyl module of highest or lowest weight k.
    Module {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = 24)]
        window: i64,
    },
    /// Core of NH_n with its matrix-unit checks.
    Nh {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Verma,
    Coverma,
    Weyl,
    DualWeyl,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Subcommand)]
enum CharCmd {
    /// Character p(w) of ψ_w in NH_n.
    Nh {
        #[command(flatten)]
        w: PermArg,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Character of ψ_w between two color sequences.
    Klr {
        #[command(flatten)]
        w: PermArg,
        #[command(flatten)]
        colors: ColorArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Light-leaf, flipped or double-leaf character of a subexpression.
    Hecke {
        #[command(flatten)]
        sub: SubArgs,
        /// LL for light leaves, GG for flipped light leaves.
        #[arg(long, default_value = "LL")]
        role: String,
        /// Bits of a coterminal partner: gives the double-leaf character.
        #[arg(long)]
        partner: Option<String>,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
}

#[derive(Args)]
struct PermArg {
    /// A reduced word such as 1,2,1, or one-line notation such as (3,2,1).
    #[arg(long, default_value = "")]
    w: String,
    /// Rank; needed when w is a word.
    #[arg(long)]
    n: Option<usize>,
}

impl PermArg {
    fn get(&self) -> Result<Permutation, String> {
        parse_perm(&self.w, self.n)
    }
}

#[derive(Args)]
struct ColorArgs {
    /// Colors on the bottom, e.g. 1,2,1.
    #[arg(long)]
    source: String,
    /// Colors on the top; defaults to the source.
    #[arg(long)]
    target: Option<String>,
    /// A_k for the path graph on 1..k.
    #[arg(long, default_value = "A3", conflicts_with = "graph_file")]
    graph: String,
    /// Graph as a JSON adjacency object.
    #[arg(long)]
    graph_file: Option<std::path::PathBuf>,
}

impl ColorArgs {
    fn get(&self) -> Result<(DynkinGraph, Vec<usize>, Vec<usize>), String> {
        let g = match &self.graph_file {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
                DynkinGraph::from_json(&v).map_err(err)?
            }
            None => {
                let k = self
                    .graph
                    .strip_prefix('A')
                    .and_then(|k| k.parse().ok())
                    .filter(|&k: &usize| k > 0)
                    .ok_or_else(|| format!("graph must look like A3, got {:?}", self.graph))?;
                DynkinGraph::path(k)
            }
        };
        let src = g.parse_sequence(&self.source).map_err(err)?;
        let tgt = match &self.target {
            Some(t) => g.parse_sequence(t).map_err(err)?,
            None => src.clone(),
        };
        Ok((g, src, tgt))
    }
}

#[derive(Args)]
struct SubArgs {
    /// Letters of the expression, e.g. 1,2,1.
    #[arg(long, default_value = "")]
    expr: String,
    /// 0/1 string, one bit per letter.
    #[arg(long, default_value = "")]
    bits: String,
    #[arg(long)]
    n: Option<usize>,
}

impl SubArgs {
    fn expr(&self) -> Result<Expression, String> {
        Expression::parse(&self.expr, self.n).map_err(err)
    }

    fn get(&self) -> Result<Subexpression, String> {
        sub_with(&self.expr()?, &self.bits)
    }
}

fn sub_with(x: &Expression, bits: &str) -> Result<Subexpression, String> {
    Subexpression::new(x.clone(), Subexpression::parse_bits(bits).map_err(err)?).map_err(err)
}

#[derive(Args)]
struct SymArgs {
    /// e, h, p, s or m.
    #[arg(long, default_value = "e")]
    basis: String,
    /// Partition indexing the basis element, e.g. 2,1.
    #[arg(long, default_value = "")]
    lambda: String,
    /// d, z or h.
    #[arg(long, default_value = "d")]
    op: String,
    /// Divided power op^(l); 1 applies op once.
    #[arg(long, default_value_t = 1)]
    power: u32,
    /// Symmetric polynomials in n variables; without it, Λ[y].
    #[arg(long)]
    n: Option<usize>,
    /// Specialize y in Λ[y].
    #[arg(long, allow_hyphen_values = true)]
    y: Option<i64>,
    /// Highest e_k kept in Λ[y].
    #[arg(long, default_value_t = 12)]
    precision: usize,
    /// Express the answer in this basis instead.
    #[arg(long)]
    to: Option<String>,
}

#[derive(Subcommand)]
enum NhCmd {
    /// d(ψ_w), with all three routes compared when --check is given.
    D {
        #[command(flatten)]
        w: PermArg,
        #[arg(long)]
        check: bool,
    },
    /// Normal form of a word in the generators, e.g. "d1 x1 d2".
    Normalize {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
        /// Apply this operator to the normal form.
        #[arg(long)]
        op: Option<String>,
    },
    /// Act on a polynomial.
    Act {
        #[arg(long)]
        word: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum HeckeCmd {
    /// Stroll of a subexpression with its decorations.
    Table {
        #[command(flatten)]
        sub: SubArgs,
    },
    /// All subexpressions with a given terminus, in lexicoBruhat order.
    Enum {
        #[arg(long, default_value = "")]
        expr: String,
        #[command(flatten)]
        w: PermArg,
    },
    /// Compare two subexpressions of the same expression.
    Compare {
        #[arg(long, default_value = "")]
        expr: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand)]
enum KlrCmd {
    /// Colored permutations from source to target with characters and degrees.
    Perms {
        #[command(flatten)]
        colors: ColorArgs,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// sl2-axioms, downfree, cores, bubbles, divided-powers, hecke-orders or all.
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest rank for nilHecke and polynomial checks.
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long)]
    quick: bool,
    /// Record elapsed time in the report.
    #[arg(long)]
    timing: bool,
    /// Run only these check ids.
    #[arg(long, value_delimiter = ',')]
    check: Vec<String>,
    /// List the check ids and exit.
    #[arg(long)]
    list: bool,
}

/// Text and JSON renderings of one result.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok: true }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| format!("not an integer: {t:?}")))
        .collect()
}

fn parse_perm(s: &str, n: Option<usize>) -> Result<Permutation, String> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').or_else(|| s.strip_prefix('[')) {
        let inner = inner.trim_end_matches([')', ']']);
        let images = parse_ints(inner)?.into_iter().map(|v| usize::try_from(v).map_err(err)).collect::<Result<Vec<_>, _>>()?;
        let w = Permutation::new(images).map_err(err)?;
        if let Some(n) = n.filter(|&n| n != w.n()) {
            return Err(format!("{w} is not in S_{n}"));
        }
        return Ok(w);
    }
    let word = parse_ints(s)?.into_iter().map(|v| usize::try_from(v).map_err(err)).collect::<Result<Vec<_>, _>>()?;
    let n = n.unwrap_or_else(|| word.iter().max().map_or(1, |m| m + 1));
    Permutation::from_word(n, &word).map_err(err)
}

fn character_json(ch: &std::collections::BTreeMap<i64, usize>) -> Value {
    json!(ch.iter().map(|(m, c)| [*m, *c as i64]).collect::<Vec<_>>())
}

fn character_text(ch: &std::collections::BTreeMap<i64, usize>) -> String {
    ch.iter().map(|(m, c)| format!("{m}:{c}")).collect::<Vec<_>>().join(" ")
}

fn run_core(cmd: &CoreCmd) -> Result<Output, String> {
    match cmd {
        CoreCmd::Rankone { a, sym, lambda, check } => {
            let coeffs = parse_ints(a)?;
            let spec = if *lambda || sym.is_some() {
                let [a] = coeffs[..] else { return Err("--a takes one integer with --sym or --lambda".into()) };
                match sym {
                    Some(n) => RankOneSpec::Sym { n: *n, a },
                    None => RankOneSpec::Lambda { a },
                }
            } else {
                if coeffs.is_empty() {
                    return Err("--a needs at least one coefficient".into());
                }
                RankOneSpec::Poly { a: coeffs }
            };
            let mut json = spec.core_json();
            let mut text = String::new();
            match spec.core_labels() {
                Some(labels) => {
                    writeln!(text, "rank {}", labels.len()).ok();
                    for (m, l) in &labels {
                        writeln!(text, "{m:>4}  {l}").ok();
                    }
                    if let Some(ch) = spec.core_character() {
                        writeln!(text, "character {}", character_text(&ch)).ok();
                    }
                }
                None => writeln!(text, "core Z[y]").unwrap_or(()),
            }
            let mut ok = true;
            if *check {
                ok = spec.cores_agree().map_err(err)?;
                json["brute_force_agrees"] = json!(ok);
                writeln!(text, "brute force {}", if ok { "agrees" } else { "DISAGREES" }).ok();
            }
            Ok(Output { text, json, ok })
        }
        CoreCmd::Module { kind, k, window } => {
            let kind = match kind {
                KindArg::Verma => ModuleKind::Verma(*k),
                KindArg::Coverma => ModuleKind::CoVerma(*k),
                KindArg::Weyl => ModuleKind::Weyl(*k),
                KindArg::DualWeyl => ModuleKind::DualWeyl(*k),
            };
            let m = WeightModule::from_kind(&kind, *window).map_err(err)?;
            let core = m.core(k.abs()).map_err(err)?;
            let ch = core.module.character();
            let text = format!("core of {kind}: rank {}\ncharacter {}\n", core.module.total_rank(), character_text(&ch));
            Ok(Output::ok(
                text,
                json!({"module": kind.to_string(), "rank": core.module.total_rank(), "character": character_json(&ch), "core": core.module.to_json()}),
            ))
        }
        CoreCmd::Nh { n } => {
            let core = nh_core(*n).map_err(err)?;
            let r = core.report().map_err(err)?;
            let mut text = String::new();
            writeln!(text, "core of NH_{n}: {} basis elements", r.size).ok();
            for (label, v) in [
                ("closed under d", r.closed_under_d),
                ("closed under z", r.closed_under_z),
                ("d nilpotent", r.nilpotent),
                ("matrix units multiply", r.matrix_units_multiply),
                ("units span the core", r.units_span_core),
                ("character matches End(L_0 ⊗ ... ⊗ L_{n-1})", r.character_matches),
            ] {
                writeln!(text, "{label}: {}", if v { "yes" } else { "NO" }).ok();
            }
            writeln!(text, "character {}", character_text(&r.character)).ok();
            let units: Vec<Value> = core
                .perms
                .iter()
                .flat_map(|u| core.perms.iter().map(move |v| (u, v)))
                .filter_map(|(u, v)| core.unit(u, v).map(|e| json!({"u": u.images(), "v": v.images(), "unit": e.to_string()})))
                .collect();
            let mut json = serde_json::to_value(&r).map_err(err)?;
            json["character"] = character_json(&r.character);
            json["matrix_units"] = json!(units);
            Ok(Output { text, json, ok: r.passed() })
        }
    }
}

fn run_char(cmd: &CharCmd) -> Result<Output, String> {
    let (p, label) = match cmd {
        CharCmd::Nh { w, side } => {
            let w = w.get()?;
            (nh_char(&w, (*side).into()), format!("ψ_{w}"))
        }
        CharCmd::Klr { w, colors, side } => {
            let w = w.get()?;
            let (g, src, tgt) = colors.get()?;
            (klr_char(&w, &src, &tgt, (*side).into(), &g).map_err(err)?, format!("ψ_{w}"))
        }
        CharCmd::Hecke { sub, role, partner, side } => {
            let e = sub.get()?;
            let role: Role = role.parse().map_err(err)?;
            let f = partner.as_deref().map(|b| sub_with(&sub.expr()?, b)).transpose()?;
            (hk_char(&e, role, f.as_ref(), (*side).into()).map_err(err)?, e.bit_string())
        }
    };
    let s = sigma(&p);
    Ok(Output::ok(format!("{p}\n"), json!({"element": label, "character": p.to_string(), "sigma": s.to_string()})))
}

fn run_sym(args: &SymArgs) -> Result<Output, String> {
    let ctx = match args.n {
        Some(n) => {
            if args.y.is_some() {
                return Err("--y applies to Λ[y]; drop --n".into());
            }
            SymContext::NVars(n)
        }
        None => SymContext::LambdaY { precision: args.precision, y: args.y },
    };
    let basis: SymBasis = args.basis.parse().map_err(err)?;
    let parts = parse_ints(&args.lambda)?.into_iter().map(|v| usize::try_from(v).map_err(err)).collect::<Result<Vec<_>, _>>()?;
    let lambda = Partition::new(parts).map_err(err)?;
    let op: Sl2Op = args.op.parse().map_err(err)?;
    let x = SymElement::basis_element(ctx, basis, lambda);
    let (mut out, integral) = if args.power == 1 {
        (x.sl2(op).map_err(err)?, true)
    } else {
        x.divided(op, args.power).map_err(err)?
    };
    if let Some(b) = &args.to {
        out = out.to_basis(b.parse().map_err(err)?).map_err(err)?;
    }
    let opname = if args.power == 1 { args.op.clone() } else { format!("{}^({})", args.op, args.power) };
    let shown = if out.is_zero() { "0".to_string() } else { out.to_string() };
    let mut text = format!("{opname}({x}) = {shown}\n");
    if !integral {
        text.push_str("not integral\n");
    }
    Ok(Output::ok(text, json!({"input": x.to_string(), "op": opname, "result": out.to_json(), "display": shown, "integral": integral})))
}

fn run_nh(cmd: &NhCmd) -> Result<Output, String> {
    match cmd {
        NhCmd::D { w, check } => {
            let w = w.get()?;
            let psi = NHElement::psi(&w);
            let d = psi.d_closed().map_err(err)?;
            let mut text = format!("{d}\n");
            let mut json = json!({"w": w.images(), "psi": psi_symbol(&w), "d": d.to_string(), "terms": d.to_json()});
            let mut ok = true;
            if *check {
                let gen = psi.d_gen().map_err(err)?;
                let op = psi.d_operator().map_err(err)?;
                ok = gen == d && op == d;
                json["routes_agree"] = json!(ok);
                writeln!(text, "generator and operator routes {}", if ok { "agree" } else { "DISAGREE" }).ok();
            }
            Ok(Output { text, json, ok })
        }
        NhCmd::Normalize { word, n, op } => {
            let g = word.parse().map_err(err)?;
            let mut a = NHElement::normalize(&g, *n).map_err(err)?;
            if let Some(op) = op {
                a = match op.parse::<Sl2Op>().map_err(err)? {
                    Sl2Op::D => a.d_gen().map_err(err)?,
                    Sl2Op::Z => a.z(),
                    Sl2Op::H => a.h(),
                };
            }
            Ok(Output::ok(format!("{a}\n"), json!({"display": a.to_string(), "element": a.to_json()})))
        }
        NhCmd::Act { word, f, n } => {
            let g = word.parse().map_err(err)?;
            let a = NHElement::normalize(&g, *n).map_err(err)?;
            let f = ZPoly::parse(*n, f).map_err(err)?;
            let r = a.act(&f).map_err(err)?;
            Ok(Output::ok(format!("{r}\n"), json!({"element": a.to_string(), "input": f.to_string(), "result": r.to_string()})))
        }
    }
}

fn run_hecke(cmd: &HeckeCmd) -> Result<Output, String> {
    match cmd {
        HeckeCmd::Table { sub } => {
            let e = sub.get()?;
            let mut json = e.to_json();
            let (ll, gg) = (hk_char(&e, Role::LightLeaf, None, Side::Left).map_err(err)?, hk_char(&e, Role::Flipped, None, Side::Left).map_err(err)?);
            json["p_LL"] = json!(ll.to_string());
            json["p_GG"] = json!(gg.to_string());
            Ok(Output::ok(format!("{}p_LL = {ll}\np_GG = {gg}\n", stroll_table(&e)), json))
        }
        HeckeCmd::Enum { expr, w } => {
            let x = Expression::parse(expr, w.n).map_err(err)?;
            let w = parse_perm(&w.w, Some(x.n()))?;
            let mut subs = hk_enum(&x, &w).map_err(err)?;
            let mut failure = None;
            subs.sort_by(|a, b| match compare_subexpressions(a, b) {
                Ok(Some(o)) => o,
                _ => {
                    failure.get_or_insert(format!("{} and {} are not comparable", a.bit_string(), b.bit_string()));
                    std::cmp::Ordering::Equal
                }
            });
            if let Some(f) = failure {
                return Err(f);
            }
            let bits: Vec<String> = subs.iter().map(Subexpression::bit_string).collect();
            let text = if bits.is_empty() { "none\n".to_string() } else { bits.join(" < ") + "\n" };
            Ok(Output::ok(text, json!({"expr": x.letters(), "terminus": w.images(), "subexpressions": bits})))
        }
        HeckeCmd::Compare { expr, n, a, b } => {
            let x = Expression::parse(expr, *n).map_err(err)?;
            let (ea, eb) = (sub_with(&x, a)?, sub_with(&x, b)?);
            let o = compare_subexpressions(&ea, &eb).map_err(err)?;
            let word = match o {
                Some(std::cmp::Ordering::Less) => "<",
                Some(std::cmp::Ordering::Equal) => "=",
                Some(std::cmp::Ordering::Greater) => ">",
                None => "incomparable",
            };
            let text = match o {
                Some(_) => format!("{} {word} {}\n", ea.bit_string(), eb.bit_string()),
                None => format!("{} and {} are incomparable\n", ea.bit_string(), eb.bit_string()),
            };
            Ok(Output::ok(text, json!({"a": ea.to_json(), "b": eb.to_json(), "order": word})))
        }
    }
}

fn run_klr(cmd: &KlrCmd) -> Result<Output, String> {
    let KlrCmd::Perms { colors } = cmd;
    let (g, src, tgt) = colors.get()?;
    let set = klr_perms(&src, &tgt).map_err(err)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for w in &set.elements {
        let left = klr_char(w, &src, &tgt, Side::Left, &g).map_err(err)?;
        let right = klr_char(w, &src, &tgt, Side::Right, &g).map_err(err)?;
        let deg = psi_degree(w, &src, &g);
        writeln!(text, "{w}  deg {deg}  left {left}  right {right}").ok();
        rows.push(json!({"w": w.images(), "degree": deg, "left": left.to_string(), "right": right.to_string()}));
    }
    writeln!(text, "{} permutations", set.elements.len()).ok();
    Ok(Output::ok(text, json!({"graph": g.to_json(), "source": src, "target": tgt, "permutations": rows})))
}

fn run_verify(args: &VerifyArgs) -> Result<Output, String> {
    if args.n == 0 {
        return Err("--n must be at least 1".into());
    }
    let ids = check_ids(&args.suite).map_err(err)?;
    if args.list {
        return Ok(Output::ok(ids.join("\n") + "\n", json!({"suite": args.suite, "checks": ids})));
    }
    let opts = VerifyOptions { seed: args.seed, max_n: args.n, quick: args.quick, timing: args.timing };
    let report = if args.check.is_empty() {
        run_suite(&args.suite, &opts).map_err(err)?
    } else {
        let mut checks = Vec::new();
        for id in &args.check {
            if !ids.contains(&id.as_str()) {
                return Err(format!("check {id:?} is not in suite {}", args.suite));
            }
            checks.push(run_check(id, &opts).map_err(err)?);
        }
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Report { suite: args.suite.clone(), checks, elapsed_ms: 0 }
    };
    Ok(Output { text: report.to_text(), json: report.to_json(), ok: report.passed() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Core(c) => run_core(c),
        Command::Char(c) => run_char(c),
        Command::Sym(a) => run_sym(a),
        Command::Nh(c) => run_nh(c),
        Command::Hecke(c) => run_hecke(c),
        Command::Klr(c) => run_klr(c),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json value")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
