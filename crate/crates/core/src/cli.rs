//! The `qschub` command line.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{format_json, format_text, parse_json, parse_text, Family, Monomial, Polynomial};
use crate::parabolic::{parabolic_cauchy_rhs, parabolic_q_double_schubert, parabolic_q_double_schubert_direct, parabolic_stable};
use crate::quantization::theta;
use crate::quantum_ring::{bijection_check, verify_chevalley, Flavor, StructureTable};
use crate::schubert::{cauchy_rhs, expand_in_schubert_basis, schubert_polynomial, schubert_polynomial_in, SchubertFamily};
use crate::selftest;
use crate::weyl::{ParabolicContext, Permutation};

#[derive(Parser, Debug)]
#[command(name = "qschub", version, about = "Quantum double Schubert polynomials and quantum structure constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one (parabolic) Schubert polynomial.
    Poly(PolyArgs),
    /// Expand a polynomial in a Schubert basis.
    Expand(ExpandArgs),
    /// Run a named identity suite.
    Verify(VerifyArgs),
    /// Print the structure constants of a flag or partial flag variety.
    Table(TableArgs),
    /// Run every acceptance check.
    Selftest,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// Permutation in one-line notation, e.g. "[3,1,2]".
    #[arg(long)]
    w: String,
    #[arg(long, default_value = "quantum-double")]
    family: String,
    /// Composition such as 2,1,3; gives the parabolic polynomial, specialized by --family.
    #[arg(long)]
    parabolic: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    /// Polynomial in text (or JSON with --input-format json).
    #[arg(long)]
    poly: String,
    #[arg(long, default_value = "quantum-double")]
    family: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    input_format: Format,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Chevalley,
    Cauchy,
    Quantization,
    Stability,
    Bijection,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Chevalley flavor; every full flag flavor when omitted.
    #[arg(long)]
    flavor: Option<String>,
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    /// Restrict parabolic checks to one composition.
    #[arg(long)]
    parabolic: Option<String>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, conflicts_with = "parabolic", required_unless_present = "parabolic")]
    n: Option<usize>,
    #[arg(long)]
    parabolic: Option<String>,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// In text output, list each q-monomial part of a coefficient separately.
    #[arg(long)]
    split_q: bool,
}

/// Failure of a command: exit 1 for a falsified identity, 2 for bad input.
enum Failure {
    Falsified(String),
    Usage(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

type Outcome = Result<(), Failure>;

/// Runs the command line with `argv` (including the program name) and
/// returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Poly(a) => poly(a, out),
        Command::Expand(a) => expand(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Table(a) => table(a, out),
        Command::Selftest => run_selftest(out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Falsified(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn written(r: std::io::Result<()>) -> Outcome {
    match r {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(usage(e)),
        _ => Ok(()),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    written(writeln!(out, "{text}"))
}

fn parse_family(s: &str) -> Result<SchubertFamily, Failure> {
    s.parse().map_err(Failure::Usage)
}

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    s.parse().map_err(usage)
}

fn parse_ctx(s: &str) -> Result<ParabolicContext, Failure> {
    s.parse().map_err(usage)
}

fn render(f: &Polynomial, format: Format) -> String {
    match format {
        Format::Text => format_text(f),
        Format::Json => format_json(f),
    }
}

fn poly(a: PolyArgs, out: &mut dyn Write) -> Outcome {
    let w = parse_perm(&a.w)?;
    let family = parse_family(&a.family)?;
    let f = match &a.parabolic {
        None => schubert_polynomial(&w, family),
        Some(c) => {
            let ctx = parse_ctx(c)?;
            let f = parabolic_q_double_schubert(&ctx, &w).map_err(usage)?;
            f.set_zero(|v| match v.family {
                Family::A => !family.uses_a(),
                Family::Q => !family.uses_q(),
                Family::X => false,
            })
        }
    };
    emit(out, &render(&f, a.format))
}

fn expand(a: ExpandArgs, out: &mut dyn Write) -> Outcome {
    let family = parse_family(&a.family)?;
    let f = match a.input_format {
        Format::Text => parse_text(&a.poly),
        Format::Json => parse_json(&a.poly),
    }
    .map_err(usage)?;
    let expansion = expand_in_schubert_basis(&f, family).map_err(usage)?;
    match a.format {
        Format::Text => {
            if expansion.is_empty() {
                return emit(out, "0");
            }
            for (w, c) in expansion.iter() {
                emit(out, &format!("{w}: {}", format_text(c)))?;
            }
            Ok(())
        }
        Format::Json => {
            let terms: Vec<serde_json::Value> = expansion
                .iter()
                .map(|(w, c)| serde_json::json!({ "w": w.to_string(), "coeff": format_text(c) }))
                .collect();
            emit(out, &serde_json::Value::Array(terms).to_string())
        }
    }
}

fn contexts(a: &VerifyArgs) -> Result<Vec<ParabolicContext>, Failure> {
    match &a.parabolic {
        Some(c) => Ok(vec![parse_ctx(c)?]),
        None => Ok((1..=a.max_n).flat_map(ParabolicContext::all_compositions).collect()),
    }
}

fn falsified(what: String, difference: &Polynomial) -> Failure {
    Failure::Falsified(format!("identity fails for {what}; difference: {}", format_text(difference)))
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let n = a.max_n;
    let mut count = 0usize;
    match a.suite {
        Suite::Chevalley => {
            let flavors: Vec<Flavor> = match &a.flavor {
                Some(f) => vec![f.parse().map_err(Failure::Usage)?],
                None => Flavor::FULL_FLAG.to_vec(),
            };
            for flavor in flavors {
                if flavor == Flavor::Parabolic {
                    for ctx in contexts(&a)? {
                        for w in ctx.minimal_elements() {
                            for i in ctx.nodes() {
                                let check = verify_chevalley(i, &w, flavor, Some(&ctx)).map_err(usage)?;
                                if !check.holds() {
                                    return Err(falsified(format!("{ctx}, i = {i}, w = {w}"), &check.difference));
                                }
                                count += 1;
                            }
                        }
                    }
                    continue;
                }
                for w in Permutation::all(n) {
                    for i in 1..=n.max(1) as u32 {
                        let check = verify_chevalley(i, &w, flavor, None).map_err(usage)?;
                        if !check.holds() {
                            return Err(falsified(format!("{flavor}, i = {i}, w = {w}"), &check.difference));
                        }
                        count += 1;
                    }
                }
            }
        }
        Suite::Cauchy => {
            for w in Permutation::all(n) {
                for (fam, quantum) in [(SchubertFamily::Double, false), (SchubertFamily::QuantumDouble, true)] {
                    let d = schubert_polynomial(&w, fam) - cauchy_rhs(&w, quantum);
                    if !d.is_zero() {
                        return Err(falsified(format!("{fam} w = {w}"), &d));
                    }
                    count += 1;
                }
            }
            for ctx in contexts(&a)? {
                for w in ctx.minimal_elements() {
                    let d = parabolic_stable(&ctx, &w) - parabolic_cauchy_rhs(&ctx, &w).map_err(usage)?;
                    if !d.is_zero() {
                        return Err(falsified(format!("{ctx}, w = {w}"), &d));
                    }
                    count += 1;
                }
            }
        }
        Suite::Quantization => {
            for w in Permutation::all(n) {
                for (from, to) in [
                    (SchubertFamily::Classical, SchubertFamily::Quantum),
                    (SchubertFamily::Double, SchubertFamily::QuantumDouble),
                ] {
                    let d = theta(&schubert_polynomial(&w, from)) - schubert_polynomial(&w, to);
                    if !d.is_zero() {
                        return Err(falsified(format!("theta on {from} w = {w}"), &d));
                    }
                    count += 1;
                }
            }
        }
        Suite::Stability => {
            for w in Permutation::all(n) {
                for fam in SchubertFamily::ALL {
                    let m = w.min_n().max(1);
                    let d = schubert_polynomial_in(&w, fam, m) - schubert_polynomial_in(&w, fam, m + 1);
                    if !d.is_zero() {
                        return Err(falsified(format!("{fam} w = {w}"), &d));
                    }
                    count += 1;
                }
            }
            for ctx in contexts(&a)? {
                let wider = ctx.extended(&[1]).map_err(usage)?;
                for w in ctx.minimal_elements() {
                    let d = parabolic_q_double_schubert_direct(&ctx, &w).map_err(usage)?
                        - parabolic_q_double_schubert_direct(&wider, &w).map_err(usage)?;
                    if !d.is_zero() {
                        return Err(falsified(format!("{ctx} against {wider}, w = {w}"), &d));
                    }
                    count += 1;
                }
            }
        }
        Suite::Bijection => {
            let mut cases: Vec<(Permutation, Option<ParabolicContext>)> =
                Permutation::all(n).into_iter().map(|w| (w, None)).collect();
            for ctx in contexts(&a)? {
                cases.extend(ctx.minimal_elements().into_iter().map(|w| (w, Some(ctx.clone()))));
            }
            for (w, ctx) in cases {
                let reports = bijection_check(&w, ctx.as_ref()).map_err(usage)?;
                if let Some(r) = reports.iter().find(|r| !r.ok) {
                    return Err(Failure::Falsified(format!(
                        "bijection fails for w = {w} at node {} ({} against {} pairs)",
                        r.node, r.domain_size, r.codomain_size
                    )));
                }
                count += 1;
            }
        }
    }
    emit(out, &format!("ok: {count} cases"))
}

fn split_by_q(c: &Polynomial) -> BTreeMap<Monomial, Polynomial> {
    let mut parts: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, k) in c.terms() {
        let q = m.family_part(Family::Q);
        let rest = Monomial::from_pairs(m.pairs().iter().copied().filter(|(v, _)| v.family != Family::Q));
        *parts.entry(q).or_default() += Polynomial::term(k.clone(), rest);
    }
    parts
}

fn table(a: TableArgs, out: &mut dyn Write) -> Outcome {
    let ctx = a.parabolic.as_deref().map(parse_ctx).transpose()?;
    let t = StructureTable::compute(a.n.unwrap_or(0), ctx).map_err(usage)?;
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&t.to_json()).map_err(usage)?,
        Format::Text if a.split_q => {
            let mut s = String::new();
            for ((u, v), row) in &t.entries {
                let mut terms = Vec::new();
                for (w, c) in row {
                    for (q, part) in split_by_q(c) {
                        let q = if q.is_one() { String::new() } else { format!("{q}*") };
                        terms.push(format!("{q}({})*s{}", format_text(&part), bracket(w, t.n)));
                    }
                }
                let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                s.push_str(&format!("s{} * s{} = {rhs}\n", bracket(u, t.n), bracket(v, t.n)));
            }
            s
        }
        Format::Text => t.to_text(),
    };
    match a.out {
        Some(path) => std::fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => written(write!(out, "{text}")),
    }
}

fn bracket(w: &Permutation, n: usize) -> String {
    let parts: Vec<String> = w.padded(n.max(1)).iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn run_selftest(out: &mut dyn Write) -> Outcome {
    let outcomes = selftest::run_all();
    for o in &outcomes {
        emit(out, &o.to_string())?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    if failed > 0 {
        return Err(Failure::Falsified(format!("{failed} acceptance checks failed")));
    }
    emit(out, "all acceptance checks passed")
}
