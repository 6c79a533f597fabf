use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use stringdual::exact::{fmt_q, Q};
use stringdual::hurwitz::{self, Method};
use stringdual::marino_vafa as mv;
use stringdual::mirror::{self, grassmannian::compare_with_projective, ToricSpec};
use stringdual::partition::Partition;
use stringdual::report::CheckReport;
use stringdual::verify::{self, Profile};
use stringdual::{chern_simons, vertex, witten, Error};

const WORKERS_ENV: &str = "STRINGDUAL_WORKERS";

#[derive(Parser)]
#[command(name = "stringdual", version, about = "Exact Hurwitz, Hodge, Gromov-Witten and mirror computations")]
struct Cli {
    /// Also write the JSON document to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hurwitz numbers H_{g,μ} and the Hodge integrals I_{g,μ}.
    Hurwitz(HurwitzArgs),
    /// Mariño-Vafa series checks and Hodge polynomial extraction.
    Mv(MvArgs),
    /// The invariants W_μ and W_{μ,ν} as rational functions of q.
    W {
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Option<Partition>,
    },
    /// Topological vertex computations.
    Vertex {
        #[command(subcommand)]
        cmd: VertexCmd,
    },
    /// ψ-class intersection numbers and Virasoro constraints.
    Witten(WittenArgs),
    /// Hypergeometric series of mirror symmetry.
    Mirror {
        #[command(subcommand)]
        cmd: MirrorCmd,
    },
    /// Runs every acceptance check.
    VerifyAll(VerifyArgs),
}

#[derive(Args)]
struct HurwitzArgs {
    #[arg(long, default_value_t = 0)]
    genus: usize,
    #[arg(long)]
    partition: Partition,
    #[arg(long, value_enum, default_value_t = HMethod::Both)]
    method: HMethod,
    /// Also report I_{g,μ} and the bare Hodge integral.
    #[arg(long)]
    hodge: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum HMethod {
    Burnside,
    Cutjoin,
    Both,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct MvArgs {
    #[command(subcommand)]
    sub: Option<MvSub>,
    #[arg(long, value_enum)]
    check: Option<MvCheck>,
    #[arg(long, default_value_t = 3)]
    degree: usize,
    #[arg(long, default_value_t = 6)]
    order: i32,
    /// 1 for R(p; τ), 2 for R•(p⁺, p⁻; τ) (pde check only).
    #[arg(long, default_value_t = 1)]
    families: usize,
}

#[derive(Subcommand)]
enum MvSub {
    /// Coefficients of the triple-Hodge polynomial in τ.
    Hodge {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        partition: Partition,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MvCheck {
    Pde,
    Initial,
    ElsvLimit,
    Convolution,
    LambdaG,
    Swap,
}

#[derive(Subcommand)]
enum VertexCmd {
    /// Gromov-Witten and Gopakumar-Vafa invariants of local P².
    LocalP2 {
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 2)]
        max_genus: usize,
        #[arg(long)]
        gv: bool,
    },
}

#[derive(Args)]
struct WittenArgs {
    /// g:k1,k2,...
    #[arg(long, conflicts_with = "virasoro")]
    correlator: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    virasoro: Option<i64>,
    #[arg(long, default_value_t = 4)]
    order: usize,
}

#[derive(Subcommand)]
enum MirrorCmd {
    Quintic {
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
    },
    Toric {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    Grassmannian {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Compare with the localization sums.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    profile: Option<Profile>,
    /// Sabotage the given criterion (repeatable).
    #[arg(long)]
    fault: Vec<usize>,
    /// JSON file with keys profile, faults.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct VerifyConfig {
    #[serde(default)]
    profile: Option<String>,
    #[serde(default)]
    faults: Vec<usize>,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Invalid(_) | Error::Precondition(_) | Error::Truncation(_) | Error::SizeMismatch(_) => 1,
            Error::Verification(_) => 2,
            _ => 3,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

struct Doc {
    query: &'static str,
    params: Value,
    result: Value,
    checks: Vec<(String, bool)>,
}

impl Doc {
    fn new(query: &'static str, params: Value) -> Self {
        Doc { query, params, result: json!({}), checks: Vec::new() }
    }
    fn check(&mut self, name: &str, pass: bool) {
        self.checks.push((name.into(), pass));
    }
    fn report(&mut self, r: &CheckReport) {
        self.check(&r.name, r.passed);
    }
}

fn s(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

fn hurwitz_cmd(a: &HurwitzArgs) -> Result<Doc, Failure> {
    let mut d = Doc::new("hurwitz", json!({"genus": a.genus, "partition": a.partition.to_string()}));
    if a.partition.is_empty() {
        return Err(usage("partition must be nonempty"));
    }
    if hurwitz::branch_points(a.genus, &a.partition) < 0 {
        return Err(usage(format!("no covers for g={}, μ={}", a.genus, a.partition)));
    }
    let run = |m| hurwitz::hurwitz_number(a.genus, &a.partition, m);
    let mut res = serde_json::Map::new();
    match a.method {
        HMethod::Burnside => {
            res.insert("H".into(), s(&run(Method::Burnside)?));
        }
        HMethod::Cutjoin => {
            res.insert("H".into(), s(&run(Method::CutJoin)?));
        }
        HMethod::Both => {
            let (b, c) = (run(Method::Burnside)?, run(Method::CutJoin)?);
            res.insert("H".into(), s(&b));
            res.insert("agree".into(), Value::Bool(b == c));
            d.check("burnside = cut-and-join", b == c);
        }
    }
    if a.hodge {
        let v = hurwitz::elsv_i(a.genus, &a.partition)?;
        res.insert("I".into(), s(&v.value));
        res.insert("bare".into(), s(&v.bare));
    }
    d.result = Value::Object(res);
    Ok(d)
}

fn mv_cmd(a: &MvArgs) -> Result<Doc, Failure> {
    if let Some(MvSub::Hodge { genus, partition }) = &a.sub {
        let mut d = Doc::new("mv hodge", json!({"genus": genus, "partition": partition.to_string()}));
        if partition.is_empty() {
            return Err(usage("partition must be nonempty"));
        }
        let c = mv::mv_hodge_extract(*genus, partition)?;
        d.result = json!({"tau_coefficients": c.iter().map(s).collect::<Vec<_>>()});
        return Ok(d);
    }
    let check = a.check.ok_or_else(|| usage("mv needs --check or the hodge subcommand"))?;
    if a.degree == 0 || a.order <= 0 {
        return Err(usage("--degree and --order must be positive"));
    }
    let mut d = Doc::new("mv", json!({"degree": a.degree, "order": a.order, "families": a.families}));
    match check {
        MvCheck::Pde => {
            if !(1..=2).contains(&a.families) {
                return Err(usage("--families is 1 or 2"));
            }
            let r = mv::mv_pde_residual(&mv::mv_r(a.degree, a.order, a.families)?)?;
            d.result = json!({"residual_zero": r.vanishes(), "verified_through": r.verified_through});
            d.check("pde", r.vanishes());
        }
        MvCheck::Swap => {
            let r = mv::swap_symmetry_check(&mv::mv_r(a.degree, a.order, 2)?);
            d.result = json!({"symmetric": r.passed});
            d.report(&r);
        }
        other => {
            let r = match other {
                MvCheck::Initial => mv::mv_initial_value_check(a.degree, a.order)?,
                MvCheck::ElsvLimit => mv::mv_to_elsv_limit(a.degree, a.order)?,
                MvCheck::Convolution => mv::convolution_check(a.degree, a.order)?,
                _ => mv::lambda_g_check(2, a.degree)?,
            };
            d.result = json!({"passed": r.passed, "compared": r.compared, "detail": r.detail});
            d.report(&r);
        }
    }
    Ok(d)
}

fn w_cmd(mu: &Partition, nu: Option<&Partition>) -> Result<Doc, Failure> {
    let mut d = Doc::new("w", json!({"mu": mu.to_string(), "nu": nu.map(|p| p.to_string())}));
    let f = match nu {
        None => chern_simons::w_one(mu),
        Some(nu) => chern_simons::w_pair(mu, nu)?,
    };
    d.result = json!({"W": f.to_string()});
    Ok(d)
}

fn vertex_cmd(c: &VertexCmd) -> Result<Doc, Failure> {
    let VertexCmd::LocalP2 { max_degree, max_genus, gv } = *c;
    if max_degree == 0 {
        return Err(usage("--max-degree must be positive"));
    }
    let mut d = Doc::new("vertex local-p2", json!({"max_degree": max_degree, "max_genus": max_genus}));
    let l = 2 * max_genus as i32 + 4;
    let gw = vertex::extract_gw(max_degree, max_genus, l)?;
    let table = |f: &dyn Fn(usize, usize) -> Value| -> Value {
        (0..=max_genus).map(|g| (1..=max_degree).map(|dd| f(g, dd)).collect::<Vec<_>>()).collect::<Vec<_>>().into()
    };
    let mut res = serde_json::Map::new();
    res.insert("N".into(), table(&|g, dd| s(&gw.get(g, dd))));
    let odd = vertex::odd_powers_vanish(max_degree, l)?;
    d.check("odd powers vanish", odd);
    if gv {
        match vertex::gv_invert(&gw) {
            Ok(n) => {
                res.insert("n".into(), table(&|g, dd| Value::String(n.get(g, dd).to_string())));
                res.insert("integral".into(), Value::Bool(true));
                d.check("integral", true);
            }
            Err(Error::Verification(_)) => {
                res.insert("integral".into(), Value::Bool(false));
                d.check("integral", false);
            }
            Err(e) => return Err(e.into()),
        }
        d.check("exp/log round trip", vertex::exp_log_roundtrip(&gw)?);
    }
    d.result = Value::Object(res);
    Ok(d)
}

fn witten_cmd(a: &WittenArgs) -> Result<Doc, Failure> {
    if let Some(c) = &a.correlator {
        let (g, ks) = c.split_once(':').ok_or_else(|| usage("--correlator takes g:k1,k2,..."))?;
        let g: usize = g.trim().parse().map_err(|_| usage(format!("bad genus {g:?}")))?;
        let ks: Vec<usize> = ks
            .split(',')
            .map(|k| k.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| usage(format!("bad indices {ks:?}")))?;
        let mut d = Doc::new("witten correlator", json!({"genus": g, "ks": ks}));
        let v = witten::dvv(g, &ks)?;
        d.result = json!({"value": s(&v)});
        return Ok(d);
    }
    let n = a.virasoro.ok_or_else(|| usage("witten needs --correlator or --virasoro"))?;
    if n < -1 || a.order == 0 {
        return Err(usage("need n ≥ −1 and a positive --order"));
    }
    let mut d = Doc::new("witten virasoro", json!({"n": n, "order": a.order}));
    let r = witten::virasoro_residual(n, a.order)?;
    d.result = json!({"checked": r.checked, "nonzero": r.nonzero, "max_abs": s(&r.max_abs), "residual_zero": r.nonzero == 0});
    d.check(&format!("L_{n} τ = 0"), r.nonzero == 0);
    Ok(d)
}

fn mirror_cmd(c: &MirrorCmd) -> Result<Doc, Failure> {
    match c {
        MirrorCmd::Quintic { max_degree } => {
            if *max_degree == 0 {
                return Err(usage("--max-degree must be positive"));
            }
            let mut d = Doc::new("mirror quintic", json!({"max_degree": max_degree}));
            let c = mirror::candelas(*max_degree)?;
            let mut res = json!({
                "cubic": s(&c.cubic), "quadratic": s(&c.quadratic), "linear": s(&c.linear),
                "K": c.k.iter().map(s).collect::<Vec<_>>(),
                "mirror_map": c.mirror_map.iter().map(s).collect::<Vec<_>>(),
            });
            d.check("cubic = 5/6", c.cubic == stringdual::exact::qf(5, 6));
            d.check("mirror map round trip", c.mirror_roundtrip);
            match mirror::multiple_cover_invert(&c.k) {
                Ok(n) => {
                    res["n"] = n.iter().map(|x| Value::String(x.to_string())).collect::<Vec<_>>().into();
                    d.check("integral", true);
                }
                Err(Error::Verification(_)) => d.check("integral", false),
                Err(e) => return Err(e.into()),
            }
            d.result = res;
            Ok(d)
        }
        MirrorCmd::Toric { spec, max_degree } => {
            let text = std::fs::read_to_string(spec).map_err(|e| usage(format!("{}: {e}", spec.display())))?;
            let t = ToricSpec::from_json(&text)?;
            let mut d = Doc::new("mirror toric", json!({"spec": spec.display().to_string(), "max_degree": max_degree}));
            let b = mirror::toric_b_series(&t, *max_degree)?;
            let coeffs: serde_json::Map<String, Value> = b
                .coeffs
                .iter()
                .map(|(deg, p)| {
                    let key = deg.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                    (key, Value::String(p.to_string()))
                })
                .collect();
            d.result = json!({"B": coeffs});
            Ok(d)
        }
        MirrorCmd::Grassmannian { k, n, max_degree, verify } => {
            if *k == 0 || n <= k {
                return Err(usage("need 1 ≤ k < n"));
            }
            let mut d = Doc::new("mirror grassmannian", json!({"k": k, "n": n, "max_degree": max_degree}));
            let rep = mirror::hori_vafa_series(*k, *n, *max_degree)?;
            let series: Vec<Value> = rep
                .series
                .iter()
                .map(|g| {
                    let m: serde_json::Map<String, Value> =
                        g.coeffs.iter().map(|(lam, p)| (lam.to_string(), Value::String(p.to_string()))).collect();
                    Value::Object(m)
                })
                .collect();
            let mut res = json!({"series": series});
            d.check("P-free", rep.p_free);
            d.check("Vandermonde exact", rep.vandermonde_exact);
            if *verify {
                res["epsilon"] = s(&rep.epsilon);
                res["alpha_sign"] = json!(rep.alpha_sign);
                d.check("equals localization sum", rep.alpha_sign.is_some());
                if *k == 1 || *n == 3 {
                    let m = compare_with_projective(&rep, &mirror::hg_projective(*n, *max_degree)?);
                    d.check("matches projective space", m.is_some());
                }
            }
            d.result = res;
            Ok(d)
        }
    }
}

fn verify_cmd(a: &VerifyArgs) -> Result<Doc, Failure> {
    let cfg: VerifyConfig = match &a.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| usage(format!("config: {e}")))?
        }
        None => VerifyConfig::default(),
    };
    let profile = match (a.profile, cfg.profile.as_deref()) {
        (Some(p), _) => p,
        (None, Some(p)) => p.parse().map_err(usage)?,
        (None, None) => Profile::Quick,
    };
    let mut faults = cfg.faults;
    faults.extend(&a.fault);
    if let Some(bad) = faults.iter().find(|&&f| f == 0 || f > verify::CRITERIA.len()) {
        return Err(usage(format!("no criterion {bad}")));
    }
    let out = verify::run_all(profile, &faults);
    let mut d = Doc::new("verify-all", json!({"profile": profile, "faults": faults}));
    for o in &out {
        d.check(&format!("{}. {}", o.id, o.name), o.passed);
    }
    d.result = json!({"criteria": out, "summary": verify::summary(&out)});
    Ok(d)
}

fn run(cli: &Cli) -> Result<Doc, Failure> {
    match &cli.cmd {
        Cmd::Hurwitz(a) => hurwitz_cmd(a),
        Cmd::Mv(a) => mv_cmd(a),
        Cmd::W { mu, nu } => w_cmd(mu, nu.as_ref()),
        Cmd::Vertex { cmd } => vertex_cmd(cmd),
        Cmd::Witten(a) => witten_cmd(a),
        Cmd::Mirror { cmd } => mirror_cmd(cmd),
        Cmd::VerifyAll(a) => verify_cmd(a),
    }
}

fn init_workers() -> Result<(), Failure> {
    let Ok(v) = std::env::var(WORKERS_ENV) else { return Ok(()) };
    let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| usage(format!("{WORKERS_ENV}={v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure { code: 3, msg: e.to_string() })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let doc = init_workers().and_then(|_| run(&cli));
    let (text, code) = match doc {
        Ok(d) => {
            let all = d.checks.iter().all(|(_, p)| *p);
            let checks: Vec<Value> = d.checks.iter().map(|(n, p)| json!({"name": n, "pass": p})).collect();
            let v = json!({"query": d.query, "params": d.params, "result": d.result, "checks": checks});
            (serde_json::to_string_pretty(&v).expect("serializable"), if all { 0 } else { 2 })
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            (serde_json::to_string_pretty(&json!({"error": f.msg, "code": f.code})).expect("serializable"), f.code)
        }
    };
    println!("{text}");
    if let Some(p) = &cli.output {
        if let Err(e) = std::fs::write(p, format!("{text}\n")) {
            eprintln!("error: {}: {e}", p.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}
