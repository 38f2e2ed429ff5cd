use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hzeta::combinat::{block_decomposition, compatible_partitions, compositions, dyck_words, DecompType, YSpec};
use hzeta::funceq::{check_funceq, expected_symmetry_dwa, expected_symmetry_unramified, SymmetryData};
use hzeta::igusa::{igusa_i, igusa_i_circ, igusa_wo, symbolic_args, symbolic_subset_args};
use hzeta::oracle::{ideal_counts, is_prime, HeisenbergModel};
use hzeta::ratfunc::{poly_json, poly_latex, poly_text, ratfunc_json, ratfunc_latex, ratfunc_text, RatFunc};
use hzeta::zeta::{d_w_a, series_at, zeta_closed_form, zeta_series};
use hzeta::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hzeta", version, about = "Local normal zeta functions of Heisenberg groups over number rings")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for the library (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Hnf,
    Layered,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Weak-ordering function in the subset variables X_I
    Wo,
    /// I_h(Y; X_1..X_h)
    Plain,
    /// I°_h(Y; X_1..X_h)
    Circ,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ys {
    Symbolic,
    PInverse,
    One,
}

#[derive(clap::Args)]
struct TypeArgs {
    /// Inertia degrees, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    f: Vec<u32>,
    /// Ramification indices, comma separated (default all ones)
    #[arg(long, value_delimiter = ',')]
    e: Option<Vec<u32>>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed form of W for an unramified decomposition type
    Compute {
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Power series coefficients of W in t
    Series {
        #[command(flatten)]
        ty: TypeArgs,
        /// Highest power of t
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Evaluate the coefficients at this prime
        #[arg(long)]
        p: Option<u64>,
    },
    /// Check the functional equation of W
    Verify {
        /// Inertia degrees, comma separated
        #[arg(long, value_delimiter = ',', conflicts_with = "n", required_unless_present = "n")]
        f: Option<Vec<u32>>,
        /// Check every composition of n
        #[arg(long)]
        n: Option<usize>,
        /// Also check every summand D_{w,A}
        #[arg(long)]
        terms: bool,
    },
    /// Count ideals of the Heisenberg Lie ring by enumeration
    Oracle {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        max_k: u32,
        #[arg(long, value_enum, default_value_t = Method::Layered)]
        method: Method,
    },
    /// List the Dyck words of length 2n
    Dyck {
        #[arg(long)]
        n: usize,
    },
    /// Igusa functions with symbolic arguments
    Igusa {
        #[arg(long)]
        h: usize,
        #[arg(long, value_enum, default_value_t = Kind::Plain)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Ys::Symbolic)]
        y: Ys,
    },
}

enum Failure {
    Usage(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn usage(flag: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{flag}: {msg}"))
}

fn decomp(ty: &TypeArgs) -> Result<DecompType, Failure> {
    if ty.f.is_empty() || ty.f.contains(&0) {
        return Err(usage("--f", "entries must be positive integers"));
    }
    match &ty.e {
        None => DecompType::unramified(ty.f.clone()).map_err(|e| usage("--f", e)),
        Some(e) => {
            if e.len() != ty.f.len() {
                return Err(usage("--e", "must have as many entries as --f"));
            }
            if e.contains(&0) {
                return Err(usage("--e", "entries must be positive integers"));
            }
            DecompType::new(e.clone(), ty.f.clone()).map_err(|err| usage("--e", err))
        }
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn ratfunc_out(r: &RatFunc, format: Format) -> String {
    match format {
        Format::Json => render(&ratfunc_json(r)),
        Format::Latex => ratfunc_latex(r),
        Format::Text => ratfunc_text(r),
    }
}

fn compute(ty: &TypeArgs, format: Format) -> Outcome {
    let d = decomp(ty)?;
    if !d.is_unramified() {
        return Err(usage(
            "--e",
            "closed forms are only available for unramified types; use `series` or `oracle`",
        ));
    }
    let z = zeta_closed_form(&d)?;
    let out = match format {
        Format::Json => render(&json!({
            "f": strings(&z.f),
            "n": z.n.to_string(),
            "provenance": format!("{:?}", z.provenance),
            "numerator_terms": z.w.numerator().len().to_string(),
            "w": ratfunc_json(&z.w),
        })),
        _ => ratfunc_out(&z.w, format),
    };
    Ok((out, true))
}

fn series(ty: &TypeArgs, order: usize, p: Option<u64>, format: Format) -> Outcome {
    let d = decomp(ty)?;
    if let Some(p) = p {
        if !is_prime(p) {
            return Err(usage("--p", format!("{p} is not prime")));
        }
    }
    let s = zeta_series(&d, order)?;
    let out = match (p, format) {
        (Some(p), Format::Json) => render(&json!({
            "e": strings(d.e()),
            "f": strings(d.f()),
            "p": p.to_string(),
            "order": order.to_string(),
            "values": strings(&series_at(&s, p as i64)),
        })),
        (Some(p), _) => series_at(&s, p as i64)
            .iter()
            .enumerate()
            .map(|(k, v)| format!("{k}: {v}\n"))
            .collect(),
        (None, Format::Json) => render(&json!({
            "e": strings(d.e()),
            "f": strings(d.f()),
            "order": order.to_string(),
            "coefficients": s.coeffs().iter().map(poly_json).collect::<Vec<_>>(),
        })),
        (None, Format::Latex) => s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| format!("a_{{{k}}} = {}\n", poly_latex(c)))
            .collect(),
        (None, Format::Text) => s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{k}: {}\n", poly_text(c)))
            .collect(),
    };
    Ok((out, true))
}

fn sym_json(s: SymmetryData) -> Value {
    json!({"a": s.a.to_string(), "b": s.b.to_string(), "c": s.c.to_string()})
}

/// `{1,3}{2}` from `[["1","3"],["2"]]`.
fn blocks_text(a: &Value) -> String {
    let blocks = a.as_array().map(Vec::as_slice).unwrap_or_default();
    blocks
        .iter()
        .map(|b| {
            let items: Vec<&str> = b.as_array().map(Vec::as_slice).unwrap_or_default().iter().filter_map(Value::as_str).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect()
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn verify(f: Option<&[u32]>, n: Option<usize>, terms: bool, format: Format) -> Outcome {
    let fs: Vec<Vec<u32>> = match (f, n) {
        (Some(f), _) => {
            if f.is_empty() || f.contains(&0) {
                return Err(usage("--f", "entries must be positive integers"));
            }
            vec![f.to_vec()]
        }
        (None, Some(0)) => return Err(usage("--n", "must be positive")),
        (None, Some(n)) => compositions(n),
        (None, None) => return Err(usage("--f", "either --f or --n is required")),
    };
    let mut reports = Vec::new();
    let mut all = true;
    for f in &fs {
        let d = DecompType::unramified(f.clone()).map_err(|e| usage("--f", e))?;
        let z = zeta_closed_form(&d)?;
        let sym = expected_symmetry_unramified(z.n);
        let ok = check_funceq(&z.w, sym);
        all &= ok;
        reports.push(json!({
            "claim": "W(1/p, 1/t) = (-1)^a p^b t^c W(p, t)",
            "f": strings(f),
            "symmetry": sym_json(sym),
            "verdict": verdict(ok),
        }));
        if terms {
            let sym = expected_symmetry_dwa(z.n, f.len());
            for w in dyck_words(z.n) {
                for a in compatible_partitions(&w, f) {
                    let ok = check_funceq(&d_w_a(f, &w, &a)?, sym);
                    all &= ok;
                    reports.push(json!({
                        "claim": "D_{w,A}(1/p, 1/t) = (-1)^a p^b t^c D_{w,A}(p, t)",
                        "f": strings(f),
                        "w": w.to_string(),
                        "A": a.blocks.iter().map(|b| strings(b)).collect::<Vec<_>>(),
                        "symmetry": sym_json(sym),
                        "verdict": verdict(ok),
                    }));
                }
            }
        }
    }
    let out = match format {
        Format::Json => render(&json!({"reports": reports, "verdict": verdict(all)})),
        _ => {
            let mut s = String::new();
            for r in &reports {
                let sym = &r["symmetry"];
                let f = r["f"].as_array().map(|v| v.iter().map(|x| x.as_str().unwrap_or("")).collect::<Vec<_>>().join(","));
                let target = match r.get("w") {
                    Some(w) => format!("D_{{{},{}}}", w.as_str().unwrap_or(""), blocks_text(&r["A"])),
                    None => "W".to_string(),
                };
                s.push_str(&format!(
                    "f={} {target} symmetry=({}, {}, {}) {}\n",
                    f.unwrap_or_default(),
                    sym["a"].as_str().unwrap_or(""),
                    sym["b"].as_str().unwrap_or(""),
                    sym["c"].as_str().unwrap_or(""),
                    r["verdict"].as_str().unwrap_or("")
                ));
            }
            s.push_str(&format!("verdict: {}\n", verdict(all)));
            s
        }
    };
    Ok((out, all))
}

fn oracle(ty: &TypeArgs, p: u64, max_k: u32, method: Method, format: Format) -> Outcome {
    let d = decomp(ty)?;
    if !is_prime(p) {
        return Err(usage("--p", format!("{p} is not prime")));
    }
    let model = HeisenbergModel::build(p, max_k + 1, &d)?;
    let counts: Vec<_> = ideal_counts(&model, max_k, method == Method::Layered)?.into_values().collect();
    // the closed form is only known at unramified primes
    let expected = if d.is_unramified() {
        Some(series_at(&zeta_series(&d, max_k as usize)?, p as i64))
    } else {
        None
    };
    let agree = expected.as_ref().is_none_or(|e| *e == counts);
    let method_name = match method {
        Method::Hnf => "hnf",
        Method::Layered => "layered",
    };
    let out = match format {
        Format::Json => {
            let mut v = json!({
                "e": strings(d.e()),
                "f": strings(d.f()),
                "p": p.to_string(),
                "max_k": max_k.to_string(),
                "method": method_name,
                "counts": strings(&counts),
                "exploratory": !d.is_unramified(),
            });
            if let Some(e) = &expected {
                v["closed_form"] = json!(strings(e));
                v["verdict"] = json!(verdict(agree));
            }
            render(&v)
        }
        _ => {
            let mut s = String::new();
            for (k, c) in counts.iter().enumerate() {
                match &expected {
                    Some(e) => s.push_str(&format!("{k}: {c} (closed form {})\n", e[k])),
                    None => s.push_str(&format!("{k}: {c}\n")),
                }
            }
            if expected.is_some() {
                s.push_str(&format!("verdict: {}\n", verdict(agree)));
            } else {
                s.push_str("ramified type: no closed form to compare against\n");
            }
            s
        }
    };
    Ok((out, agree))
}

fn dyck(n: usize, format: Format) -> Outcome {
    if n == 0 {
        return Err(usage("--n", "must be positive"));
    }
    let words = dyck_words(n);
    let out = match format {
        Format::Json => render(&json!({
            "n": n.to_string(),
            "count": words.len().to_string(),
            "words": words
                .iter()
                .map(|w| {
                    let bd = block_decomposition(w);
                    json!({"word": w.to_string(), "L": strings(bd.l_list()), "M": strings(bd.m_list())})
                })
                .collect::<Vec<_>>(),
        })),
        _ => words.iter().map(|w| format!("{w}\n")).collect(),
    };
    Ok((out, true))
}

fn igusa(h: usize, kind: Kind, y: Ys, format: Format) -> Outcome {
    if h == 0 {
        return Err(usage("--h", "must be positive"));
    }
    let ys = match y {
        Ys::Symbolic => YSpec::Symbolic,
        Ys::PInverse => YSpec::PInverse,
        Ys::One => YSpec::One,
    };
    let r = match kind {
        Kind::Wo => igusa_wo(h, &symbolic_subset_args("X", h))?,
        Kind::Plain => igusa_i(h, ys, &symbolic_args("X", h))?,
        Kind::Circ => igusa_i_circ(h, ys, &symbolic_args("X", h))?,
    };
    Ok((ratfunc_out(&r, format), true))
}

fn run(cli: &Cli) -> Outcome {
    let f = cli.format;
    match &cli.command {
        Command::Compute { ty } => compute(ty, f),
        Command::Series { ty, order, p } => series(ty, *order, *p, f),
        Command::Verify { f: fs, n, terms } => verify(fs.as_deref(), *n, *terms, f),
        Command::Oracle { ty, p, max_k, method } => oracle(ty, *p, *max_k, *method, f),
        Command::Dyck { n } => dyck(*n, f),
        Command::Igusa { h, kind, y } => igusa(*h, *kind, *y, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads: must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(&cli) {
        Ok((out, ok)) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe downstream is not an error of ours
            let _ = stdout.write_all(out.as_bytes());
            if !out.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
