mod error;
mod parse;
mod report;
mod spec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use superint::curve::fmt_function;
use superint::field::{Cyclotomic, Ext, NumberField, DEFAULT_SEED};
use superint::integrate::ratfun::fmt_ratfun;
use superint::integrate::{
    elementary_integrate, hermite_reduction, residues, trace_divisors, trace_integrals, ElementaryExpression, IntegrateOptions,
    Obstruction, TraceDivisor, Verdict,
};
use superint::jacobian::jacobian_reduce;
use superint::poly::fmt_poly;
use superint::torsion::{find_good_reductions, reduce_divisor_mod, torsion_order, ReductionContext, TorsionOptions};

use error::CliError;
use parse::Scope;
use spec::IntegrandSpec;

#[derive(Parser)]
#[command(name = "superint", version, about = "Decides whether ∫ P/(Q·S^(1/k)) dx is elementary")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args)]
struct Options {
    /// Seed for randomized factorization.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// The confirming torsion prime exceeds 1/epsilon.
    #[arg(long, global = true, default_value = "1")]
    epsilon: String,
    /// Largest torsion order searched modulo each prime.
    #[arg(long, global = true)]
    max_torsion: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Minimal polynomial of an algebraic constant usable in the integrand, e.g. "a^2-5".
    #[arg(long, global = true)]
    field: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Input {
    /// Integrand, e.g. "3/((x-1)*(x^3+8)^(1/2))".
    #[arg(required_unless_present = "spec")]
    expr: Option<String>,
    /// JSON spec file with `text`, or `P`, `Q`, `S` and `k`.
    #[arg(long, conflicts_with = "expr")]
    spec: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Runs the full decision procedure.
    Integrate(Input),
    /// Hermite reduction to simple poles.
    Hermite(Input),
    /// Irreducible factors of the residue polynomial, one per Galois orbit.
    Residues(Input),
    /// Trace integrals over B(alpha).
    TraceIntegrals {
        #[command(flatten)]
        input: Input,
        /// Minimal polynomial of alpha in a fresh variable, e.g. "z^2-2".
        #[arg(long)]
        alpha: String,
    },
    /// Reduces the untwisted trace divisors, in characteristic 0 or modulo a prime.
    ReduceDivisor {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Torsion orders of the untwisted trace divisors.
    TorsionOrder(Input),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Integrate(_) => "integrate",
            Command::Hermite(_) => "hermite",
            Command::Residues(_) => "residues",
            Command::TraceIntegrals { .. } => "trace-integrals",
            Command::ReduceDivisor { .. } => "reduce-divisor",
            Command::TorsionOrder(_) => "torsion-order",
        }
    }

    fn input(&self) -> &Input {
        match self {
            Command::Integrate(i) | Command::Hermite(i) | Command::Residues(i) | Command::TorsionOrder(i) => i,
            Command::TraceIntegrals { input, .. } | Command::ReduceDivisor { input, .. } => input,
        }
    }
}

struct Output {
    exit: u8,
    json: Map<String, Value>,
    text: Vec<String>,
}

impl Output {
    fn new() -> Self {
        Self { exit: 0, json: Map::new(), text: Vec::new() }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.json.insert(key.into(), v);
    }
}

fn torsion_options(opts: &Options) -> Result<TorsionOptions, CliError> {
    let eps = parse::rational(&opts.epsilon)?;
    let epsilon = eps.to_f64().filter(|e| *e > 0.0).ok_or_else(|| CliError::Input("epsilon must be positive".into()))?;
    Ok(TorsionOptions { epsilon, max_torsion: opts.max_torsion, ..TorsionOptions::default() })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let input = cli.command.input();
    let mut spec = match (&input.expr, &input.spec) {
        (Some(text), None) => IntegrandSpec::text(text, None)?,
        (None, Some(path)) => IntegrandSpec::load(path)?,
        _ => return Err(CliError::Input("give either an expression or --spec".into())),
    };
    if cli.opts.field.is_some() {
        spec.field = cli.opts.field.clone();
    }
    let k = spec.k()?;
    let c = Cyclotomic::with_seed(k, cli.opts.seed);
    let consts = spec::cyclotomic_consts(&c);
    let mut out = match &spec.field {
        None => execute(&c, consts, &spec, cli)?,
        Some(text) => {
            let (name, m) = spec::field_modulus(&c, text, &consts, 2)?;
            let b = Ext::new(c.clone(), &m, &name);
            let consts = vec![("xi".to_string(), b.xi_pow(1)), (name.clone(), b.generator())];
            execute(&b, consts, &spec, cli)?
        }
    };
    out.set("field", json!({ "k": k, "constant": spec.field }));
    Ok(out)
}

fn execute<B: NumberField>(b: &B, consts: Vec<(String, B::Elem)>, spec: &IntegrandSpec, cli: &Cli) -> Result<Output, CliError> {
    let start = Instant::now();
    let scope = Scope { field: b, var: "x", consts };
    let int = spec.integral(&scope)?;
    let mut out = Output::new();
    out.set("integral", report::integral(b, &int));
    out.text.push(format!(
        "integral: ({}) / (({}) * ({})^(1/{}))",
        fmt_poly(b, &int.p, "x"),
        fmt_poly(b, &int.q, "x"),
        fmt_poly(b, &int.s, "x"),
        int.k
    ));
    let topts = torsion_options(&cli.opts)?;
    match &cli.command {
        Command::Integrate(_) => {
            let rep = elementary_integrate(b, &int, &IntegrateOptions { torsion: topts })?;
            if let Some(hr) = &rep.hermite {
                out.set("hermite", json!({ "G": report::ratfun(b, &hr.g), "reduced": report::integral(b, &hr.reduced) }));
            }
            out.set("residues", Value::Array(rep.residues.iter().map(|r| report::poly(b, r)).collect()));
            let timings: Map<String, Value> = rep.timings.iter().map(|(s, d)| (s.to_string(), json!(d.as_secs_f64()))).collect();
            out.set("timings", Value::Object(timings));
            verdict(b, &int.s, &rep.verdict, &mut out);
            return Ok(out);
        }
        Command::Hermite(_) => match hermite_reduction(b, &int) {
            Some(hr) => {
                out.set("result", json!("reduced"));
                out.set("G", report::ratfun(b, &hr.g));
                out.set("reduced", report::integral(b, &hr.reduced));
                out.text.push(format!("G = {}", fmt_ratfun(b, &hr.g, "x")));
                out.text.push(format!(
                    "remainder: ({}) / (({}) * S^(1/{}))",
                    fmt_poly(b, &hr.reduced.p, "x"),
                    fmt_poly(b, &hr.reduced.q, "x"),
                    int.k
                ));
            }
            None => hermite_fail(&mut out),
        },
        Command::Residues(_) => match hermite_reduction(b, &int) {
            Some(hr) => {
                let rs = if hr.reduced.p.is_zero() { Vec::new() } else { residues(b, &hr.reduced) };
                out.set("residues", Value::Array(rs.iter().map(|r| report::poly(b, r)).collect()));
                out.text.extend(rs.iter().map(|r| format!("residue factor: {}", fmt_poly(b, r, "z"))));
            }
            None => hermite_fail(&mut out),
        },
        Command::TraceIntegrals { alpha, .. } => {
            let (name, m) = spec::field_modulus(b, alpha, &scope.consts, 1)?;
            let w = Ext::new(b.clone(), &m, &name);
            out.set("extension", report::extension(&w));
            match hermite_reduction(b, &int) {
                Some(hr) => {
                    let (_, tis) = trace_integrals(b, &hr.reduced, &w, &[w.generator()])?;
                    let items = tis.iter().map(|ti| {
                        let fibers: Vec<Value> = ti.fibers.iter().map(|(q, r)| json!([report::poly(&w, q), report::poly(&w, r)])).collect();
                        json!({
                            "j": ti.j,
                            "d": ti.d.to_string(),
                            "P": report::poly(&w, &ti.p),
                            "Q": report::poly(&w, &ti.q),
                            "fibers": fibers,
                        })
                    });
                    out.set("trace_integrals", Value::Array(items.collect()));
                    for ti in &tis {
                        out.text.push(format!(
                            "j = {}, d = {}: ({}) / (({}) * S^(1/{}))",
                            ti.j,
                            ti.d,
                            fmt_poly(&w, &ti.p, "x"),
                            fmt_poly(&w, &ti.q, "x"),
                            int.k
                        ));
                    }
                }
                None => hermite_fail(&mut out),
            }
        }
        Command::ReduceDivisor { prime, .. } => match trace_divisors(b, &int)? {
            Some(tds) => {
                let entries: Vec<Value> = tds.iter().map(|td| reduce_entry(td, *prime, &topts, &mut out)).collect();
                out.set("divisors", Value::Array(entries));
            }
            None => hermite_fail(&mut out),
        },
        Command::TorsionOrder(_) => match trace_divisors(b, &int)? {
            Some(tds) => {
                let entries: Vec<Value> = tds.iter().map(|td| torsion_entry(td, &topts, &mut out)).collect();
                out.set("divisors", Value::Array(entries));
            }
            None => hermite_fail(&mut out),
        },
    }
    out.set("timings", json!({ "total": start.elapsed().as_secs_f64() }));
    Ok(out)
}

fn hermite_fail(out: &mut Output) {
    out.set("result", json!("HermiteFail"));
    out.text.push("Hermite reduction FAILs: the integral is not elementary".into());
    out.exit = 1;
}

/// Records an entry-level outcome: 1 dominates 2 dominates 0.
fn bump(out: &mut Output, code: u8) {
    out.exit = match (out.exit, code) {
        (1, _) | (_, 1) => 1,
        (a, b) => a.max(b),
    };
}

fn entry_head<B: NumberField>(td: &TraceDivisor<B>) -> Map<String, Value> {
    let w = &td.field;
    let mut m = Map::new();
    m.insert("extension".into(), report::extension(w));
    m.insert("j".into(), json!(td.integral.j));
    m.insert("divisor".into(), report::divisor(w, &w.xi_pow(1), &td.divisor));
    m
}

fn reduce_entry<B: NumberField>(td: &TraceDivisor<B>, prime: Option<u64>, topts: &TorsionOptions, out: &mut Output) -> Value {
    let w = &td.field;
    let mut m = entry_head(td);
    let ctx = ReductionContext { curve: &td.curve, poles: td.poles.clone(), divisor: &td.divisor };
    let label = format!("j = {} over {}", td.integral.j, fmt_poly(w.base(), w.modulus(), w.name()));
    let result = match prime {
        Some(p) => find_good_reductions(&ctx, 1, p, p)
            .map_err(|_| format!("{p} is not a good prime for this divisor"))
            .and_then(|grs| {
                let gr = &grs[0];
                let d = reduce_divisor_mod(gr, w, &td.divisor).map_err(|e| e.to_string())?;
                let res = jacobian_reduce(&gr.curve, &d).map_err(|e| e.to_string())?;
                m.insert("prime".into(), json!(p));
                m.insert("embedding".into(), json!(gr.chain));
                m.insert("reduced".into(), report::divisor(&gr.field, gr.curve.xi_pow(1), &res.reduced));
                Ok((res.chain.len(), res.reduced.is_zero(), report::fmt_divisor(&gr.field, gr.curve.xi_pow(1), &res.reduced)))
            }),
        // characteristic-0 coefficients explode unless the class is torsion
        None => torsion_order(&ctx, topts).map_err(|e| e.to_string()).and_then(|cert| {
            m.insert("certificate".into(), report::certificate(&cert));
            if cert.n == 0 {
                m.insert("reduced".into(), Value::Null);
                return Ok((0, false, "not torsion; characteristic-0 reduction skipped".into()));
            }
            let res = jacobian_reduce(&td.curve, &td.divisor).map_err(|e| e.to_string())?;
            m.insert("reduced".into(), report::divisor(w, &w.xi_pow(1), &res.reduced));
            Ok((res.chain.len(), res.reduced.is_zero(), report::fmt_divisor(w, &w.xi_pow(1), &res.reduced)))
        }),
    };
    match result {
        Ok((depth, principal, shown)) => {
            m.insert("depth".into(), json!(depth));
            m.insert("principal".into(), json!(principal));
            bump(out, if principal { 0 } else { 1 });
            out.text.push(format!("{label}: reduces to {shown} ({})", if principal { "principal" } else { "not principal" }));
        }
        Err(e) => {
            bump(out, 2);
            out.text.push(format!("{label}: {e}"));
            m.insert("error".into(), json!(e));
        }
    }
    Value::Object(m)
}

fn torsion_entry<B: NumberField>(td: &TraceDivisor<B>, topts: &TorsionOptions, out: &mut Output) -> Value {
    let w = &td.field;
    let mut m = entry_head(td);
    let ctx = ReductionContext { curve: &td.curve, poles: td.poles.clone(), divisor: &td.divisor };
    let label = format!("j = {} over {}", td.integral.j, fmt_poly(w.base(), w.modulus(), w.name()));
    match torsion_order(&ctx, topts) {
        Ok(cert) => {
            bump(out, if cert.n == 0 { 1 } else { 0 });
            out.text.push(format!("{label}: N = {} (primes {:?}, orders {:?})", cert.n, cert.primes, cert.orders));
            m.insert("certificate".into(), report::certificate(&cert));
        }
        Err(e) => {
            bump(out, 2);
            out.text.push(format!("{label}: {e}"));
            m.insert("error".into(), json!(e.to_string()));
        }
    }
    Value::Object(m)
}

fn verdict<B: NumberField>(b: &B, s: &superint::poly::Poly<B::Elem>, v: &Verdict<B>, out: &mut Output) {
    match v {
        Verdict::Elementary(expr) => {
            out.set("verdict", json!("Elementary"));
            out.set("expression", expression(b, expr));
            out.text.push("verdict: Elementary".into());
            out.text.extend(fmt_expression(b, s, expr));
        }
        Verdict::NotElementary(ob) => {
            out.exit = 1;
            out.set("verdict", json!("NotElementary"));
            let (kind, detail, line) = match ob {
                Obstruction::HermiteFail => ("HermiteFail", json!({}), "Hermite reduction FAILs".to_string()),
                Obstruction::NotTorsion { field, j, divisor, certificate } => (
                    "NotTorsion",
                    json!({
                        "extension": report::extension(field),
                        "j": j,
                        "divisor": report::divisor(field, &field.xi_pow(1), divisor),
                        "certificate": report::certificate(certificate),
                    }),
                    format!(
                        "divisor of trace integral j = {j} is not torsion: primes {:?}, orders {:?}",
                        certificate.primes, certificate.orders
                    ),
                ),
                Obstruction::NonPrincipal { field, j, n, reduced } => (
                    "NonPrincipal",
                    json!({
                        "extension": report::extension(field),
                        "j": j,
                        "N": n,
                        "reduced": report::divisor(field, &field.xi_pow(1), reduced),
                    }),
                    format!("{n} times the divisor of trace integral j = {j} is not principal"),
                ),
                Obstruction::NonzeroFirstKindRemainder(r) => (
                    "NonzeroFirstKindRemainder",
                    json!({ "remainder": report::poly(b, r) }),
                    format!("nonzero first-kind remainder {}", fmt_poly(b, r, "x")),
                ),
            };
            let mut obj = detail.as_object().cloned().unwrap_or_default();
            obj.insert("kind".into(), json!(kind));
            out.set("obstruction", Value::Object(obj));
            out.text.push(format!("verdict: NotElementary ({line})"));
        }
        Verdict::NotHandled(reason) => {
            out.exit = 2;
            out.set("verdict", json!("NotHandled"));
            out.set("reason", json!(reason));
            out.text.push(format!("verdict: NotHandled ({reason})"));
        }
    }
}

fn expression<B: NumberField>(b: &B, expr: &ElementaryExpression<B>) -> Value {
    let logs: Vec<Value> = expr
        .logs
        .iter()
        .map(|g| {
            let w = &g.field;
            json!({
                "extension": report::extension(w),
                "j": g.j,
                "coefficient": report::poly(b, &g.coefficient),
                "certificate": report::certificate(&g.torsion),
                "divisor": report::divisor(w, &w.xi_pow(1), &g.divisor),
                "chain": g.chain.iter().map(|f| report::function(w, f)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "k": expr.k, "algebraic": report::ratfun(b, &expr.algebraic), "logs": logs })
}

fn fmt_expression<B: NumberField>(b: &B, s: &superint::poly::Poly<B::Elem>, expr: &ElementaryExpression<B>) -> Vec<String> {
    let mut lines = vec!["antiderivative:".to_string()];
    if !expr.algebraic.is_zero() {
        lines.push(format!("    ({}) / ({})^(1/{})", fmt_ratfun(b, &expr.algebraic, "x"), fmt_poly(b, s, "x"), expr.k));
    }
    for g in &expr.logs {
        let w = &g.field;
        let n = w.name();
        let sum = if w.degree() == 1 {
            String::new()
        } else {
            format!("sum over {n} with {} = 0 of ", fmt_poly(w.base(), w.modulus(), n))
        };
        lines.push(format!(
            "  + {sum}({}) / ({} * {}) * sum_r (-2)^r L_S(f_r)",
            fmt_poly(b, &g.coefficient, n),
            expr.k,
            g.n()
        ));
        lines.extend(g.chain.iter().enumerate().map(|(r, f)| format!("      f_{r} = {}", fmt_function(w, f))));
    }
    lines
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_out = cli.opts.format == Format::Json;
    let command = cli.command.name();
    match run(&cli) {
        Ok(out) => {
            if json_out {
                let mut obj = Map::new();
                obj.insert("schema".into(), json!(1));
                obj.insert("command".into(), json!(command));
                obj.extend(out.json);
                emit(&Value::Object(obj).to_string());
            } else {
                emit(&out.text.join("\n"));
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            if json_out {
                emit(&json!({ "schema": 1, "command": command, "error": e.code(), "detail": e.to_string() }).to_string());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
