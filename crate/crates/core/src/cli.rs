//! Command-line front end. Exit status 0 means success, 1 means a computation
//! reported a failed check or verdict, 2 means the invocation was rejected.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::comm::CommElement;
use crate::error::{Error, Result};
use crate::fgl::{self, orientation_series};
use crate::free::{GradingProfile, Nsym};
use crate::gradebook::{self, PoincareSeries};
use crate::sample::{self, DEFAULT_SEED};
use crate::scalar::Ring;
use crate::series::{left_expand, left_substitute, revert, CentralSeries, LinearForm, VarSet};
use crate::steenrod::{self, MilnorOp, Verdict};

#[derive(Parser, Debug)]
#[command(name = "mxi", version, about = "Exact computations with the noncommutative formal group law over NSym")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation order or top degree.
    #[arg(long, global = true)]
    degree: Option<u32>,
    #[arg(long, global = true)]
    prime: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = ProfileArg::Complex)]
    profile: ProfileArg,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Int)]
    mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients a[i,j] of the formal group law.
    Fgl,
    /// Coefficients of the inverse series.
    Inverse,
    /// u z(x)^k - z(x)^k u and its valuation.
    Commutator {
        #[arg(long, default_value = "Z1")]
        element: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Expands z(c_1 x + c_2 y + ...) in the basis z(x)^i z(y)^j ...
    Expand {
        #[arg(long, default_value = "1,1", value_delimiter = ',', allow_hyphen_values = true)]
        form: Vec<i64>,
    },
    /// Right action of P^k (Sq^k at p = 2) and, where defined, the coaction.
    Steenrod {
        #[arg(long, value_enum, default_value_t = Family::Bp)]
        family: Family,
        #[arg(long)]
        element: String,
        /// Operation index k.
        #[arg(long, default_value_t = 1)]
        op: u32,
    },
    /// Obstruction certificate.
    Certificate {
        #[arg(value_enum)]
        kind: CertKind,
    },
    /// Poincaré series; without lists, the series of NSym in the chosen profile.
    Poincare {
        #[arg(long, value_delimiter = ',')]
        tensor: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        poly: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        exterior: Vec<usize>,
    },
    /// Multiplicities of suspended BP summands.
    Split,
    /// Parity comparison of suspended ku against the stunted projective space.
    Parity,
    /// Group-law, filtration and reversion checks.
    Verify,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    Complex,
    Real,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Int,
    Rat,
    Fp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    /// H_*(BP) = F_p[t_1, t_2, ...]
    Bp,
    /// the dual Steenrod algebra F_p[xi_1, xi_2, ...]
    Xi,
    /// NSym with the chosen profile
    Nsym,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CertKind {
    Bp,
    Hf2,
}

struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Outcome {
        Outcome { text, json, ok: true }
    }
}

fn profile(cli: &Cli) -> GradingProfile {
    match cli.profile {
        ProfileArg::Complex => GradingProfile::Complex,
        ProfileArg::Real => GradingProfile::Real,
    }
}

fn ring(cli: &Cli) -> Result<Ring> {
    match cli.mode {
        ModeArg::Int => Ok(Ring::Integer),
        ModeArg::Rat => Ok(Ring::Rational),
        ModeArg::Fp => match cli.prime {
            Some(p) => Ring::prime_field(p),
            None => Err(Error::Parameter("--mode fp needs --prime".into())),
        },
    }
}

fn algebra(cli: &Cli) -> Result<Nsym> {
    Ok(Nsym::new(ring(cli)?, profile(cli)))
}

fn degree(cli: &Cli) -> u32 {
    cli.degree.unwrap_or(6)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Fgl => {
            let t = fgl::fgl_table(&algebra(cli)?, degree(cli))?;
            Ok(Outcome::ok(t.to_string(), to_json(&t.to_record())))
        }
        Command::Inverse => {
            let t = fgl::inverse_table(&algebra(cli)?, degree(cli))?;
            Ok(Outcome::ok(t.to_string(), to_json(&t.to_record())))
        }
        Command::Commutator { element, k } => {
            let alg = algebra(cli)?;
            let u = alg.parse(element)?;
            let r = fgl::commutator_filtration(&u, *k, degree(cli))?;
            let mut text = String::new();
            writeln!(text, "u z^{k} - z^{k} u = {}", r.difference).unwrap();
            match r.valuation {
                Some(v) => writeln!(text, "valuation {v}, bound {}", r.bound).unwrap(),
                None => writeln!(text, "vanishes through order {}", degree(cli)).unwrap(),
            }
            writeln!(text, "{}", if r.holds() { "PASS" } else { "FAIL" }).unwrap();
            let json = json!({
                "element": u.to_string(),
                "k": k,
                "order": degree(cli),
                "valuation": r.valuation,
                "bound": r.bound,
                "holds": r.holds(),
                "difference": to_json(&r.difference.to_records()),
            });
            Ok(Outcome { text, json, ok: r.holds() })
        }
        Command::Expand { form } => {
            let alg = algebra(cli)?;
            let order = degree(cli);
            let vars = VarSet::standard(form.len(), alg.profile.variable_degree())?;
            let z = orientation_series(&alg, order)?;
            let target = z.specialize(&vars, &[LinearForm(form.clone())])?;
            let basis = vec![z; form.len()];
            let expansion = left_expand(&target, &basis)?;
            let mut text = String::new();
            let mut entries = Vec::new();
            for (idx, c) in &expansion {
                if c.is_zero() {
                    continue;
                }
                let e = idx.exponents(form.len());
                writeln!(text, "A{e:?} = {c}").unwrap();
                entries.push(json!({ "exponents": e, "element": to_json(&c.to_records()) }));
            }
            Ok(Outcome::ok(text, json!({ "order": order, "form": form, "entries": entries })))
        }
        Command::Steenrod { family, element, op } => steenrod_command(cli, *family, element, *op),
        Command::Certificate { kind } => {
            let cert = match kind {
                CertKind::Bp => steenrod::bp_obstruction_certificate(cli.prime.unwrap_or(3))?,
                CertKind::Hf2 => steenrod::hf2_obstruction_certificate()?,
            };
            let ok = cert.verdict == Verdict::Infeasible;
            Ok(Outcome { text: cert.to_string(), json: to_json(&cert), ok })
        }
        Command::Poincare { tensor, poly, exterior } => {
            let order = degree(cli) as usize;
            let s: PoincareSeries = if !tensor.is_empty() {
                gradebook::series_free_assoc(tensor, order)?
            } else if !poly.is_empty() || !exterior.is_empty() {
                gradebook::series_graded_algebra(poly, exterior, order)?
            } else {
                let p = profile(cli);
                let degs: Vec<usize> = (1..=order as u32).filter_map(|i| p.degree_of(i)).map(|d| d as usize).collect();
                gradebook::series_free_assoc(&degs, order)?
            };
            Ok(Outcome::ok(format!("{s}\n"), to_json(&s)))
        }
        Command::Split => {
            let p = cli.prime.unwrap_or(2);
            match gradebook::splitting_multiplicities(p, degree(cli) as usize) {
                Ok(s) => Ok(Outcome::ok(format!("{s}\n"), to_json(&s))),
                Err(Error::NegativeMultiplicity { degree, value }) => Ok(Outcome {
                    text: format!("negative multiplicity {value} in degree {degree}\n"),
                    json: json!({ "negative": { "degree": degree, "value": value } }),
                    ok: false,
                }),
                Err(e) => Err(e),
            }
        }
        Command::Parity => {
            let p = cli.prime.unwrap_or(2);
            // enough degrees to reach the first odd class in every supported case
            let order = cli.degree.map_or(2 * p as usize * p as usize + 2, |d| d as usize);
            let r = gradebook::parity_check_ku(p, order)?;
            Ok(Outcome::ok(r.to_string(), to_json(&r)))
        }
        Command::Verify => verify_command(cli),
    }
}

fn steenrod_command(cli: &Cli, family: Family, element: &str, k: u32) -> Result<Outcome> {
    let p = cli.prime.unwrap_or(match (family, cli.profile) {
        (Family::Xi, _) | (Family::Nsym, ProfileArg::Real) => 2,
        _ => 3,
    });
    let op = MilnorOp::new(p, k)?;
    let (input, result, coaction) = match family {
        Family::Bp | Family::Xi => {
            let (ring, g) = match family {
                Family::Bp => steenrod::brown_peterson(p)?,
                _ => steenrod::dual_steenrod(p)?,
            };
            let a = CommElement::parse(ring, &g, element)?;
            let coaction = match family {
                Family::Bp => steenrod::bp_coaction(&a)?,
                _ => steenrod::coproduct(&a)?,
            };
            let result = steenrod::right_action(&a, &op)?;
            (a.to_string(), result.to_string(), Some(coaction.to_string()))
        }
        Family::Nsym => {
            let alg = Nsym::new(Ring::prime_field(p)?, profile(cli));
            let a = alg.parse(element)?;
            let result = steenrod::nsym_action(&op, &a)?;
            (a.to_string(), result.to_string(), None)
        }
    };
    let mut text = String::new();
    if let Some(c) = &coaction {
        writeln!(text, "coaction: {c}").unwrap();
    }
    writeln!(text, "({input}) . {op} = {result}").unwrap();
    let json = json!({ "prime": p, "element": input, "op": op.to_string(), "result": result, "coaction": coaction });
    Ok(Outcome::ok(text, json))
}

fn verify_command(cli: &Cli) -> Result<Outcome> {
    let alg = algebra(cli)?;
    let order = degree(cli);
    let axioms = fgl::verify_axioms(&alg, order)?;
    let mut text = axioms.to_string();

    // filtration: fixed and seeded random homogeneous elements, k up to 4
    let mut rng = sample::rng(cli.seed);
    let mut elements = vec![alg.z(1), alg.z(2), &alg.z(1) * &alg.z(2)];
    let vd = alg.profile.variable_degree();
    for n in 0..5u32 {
        elements.push(sample::random_homogeneous(&alg, vd * (1 + n % 4), 3, &mut rng));
    }
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 1..=order.saturating_sub(2).min(4) {
        for u in &elements {
            let r = fgl::commutator_filtration(u, k, order)?;
            checked += 1;
            if !r.holds() {
                failures.push(json!({ "element": u.to_string(), "k": k, "valuation": r.valuation }));
            }
        }
    }
    writeln!(text, "{:<10} {}  ({checked} cases)", "FILTER", if failures.is_empty() { "pass" } else { "FAIL" }).unwrap();

    let z = orientation_series(&alg, order)?;
    let g = revert(&z)?;
    let x = CentralSeries::variable(&alg, z.vars(), order, 0);
    let right = left_substitute(&z, &g)? == x;
    let left = left_substitute(&g, &z)? == x;
    writeln!(text, "{:<10} {}", "REVERT", if right && left { "pass" } else { "FAIL" }).unwrap();

    let ok = axioms.all_passed() && failures.is_empty() && right && left;
    let json = json!({
        "order": order,
        "axioms": to_json(&axioms),
        "filtration": { "checked": checked, "failures": failures },
        "reversion": { "right_inverse": right, "left_inverse": left },
        "passed": ok,
    });
    Ok(Outcome { text, json, ok })
}

/// Usage problems versus failures of a computation that was correctly requested.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NegativeMultiplicity { .. } | Error::Overflow(_) => 1,
        _ => 2,
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let msg = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{msg}");
                2
            } else {
                let _ = write!(stdout, "{msg}");
                0
            };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let body = match cli.format {
        Format::Text => outcome.text,
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&outcome.json).expect("json value")),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    if outcome.ok {
        0
    } else {
        1
    }
}
