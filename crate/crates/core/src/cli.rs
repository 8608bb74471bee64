//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests.
//!
//! Boolean checks exit 0 when the check holds and 1 when it does not.
//! Errors exit 2.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::eqn::compile::{compile_poly_system, flatten, PolyAssignment};
use crate::eqn::doc::{
    assignment_from_doc, assignment_to_doc, from_json, poly_assignment_from_doc, to_json, LieSystemDoc,
    PolySystemDoc,
};
use crate::eqn::kernel::psi_auxiliaries_by_elimination;
use crate::eqn::parse::parse_element;
use crate::eqn::{check_system, truncated_solutions};
use crate::error::{Error, Result};
use crate::hall::{degree_counts, generate_basis, witt_dimension};
use crate::interp::{
    check_field_add, check_field_mul, check_oplus, check_phi, check_scalar_action, decode_poly, encode_field,
    encode_poly, otimes_check, psi_witness, witness_s, witness_t,
};
use crate::lie::{FreeLie, DEFAULT_DEGREE_CAP};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

#[derive(Parser, Debug)]
#[command(name = "freelie", version, about = "Exact computation in free Lie algebras")]
struct Cli {
    /// Number of generators (a, b, c, a1, a2, ...).
    #[arg(long, global = true, default_value_t = 3)]
    rank: usize,
    /// `q` for the rationals or `fp:P` for a prime P.
    #[arg(long, global = true, default_value = "q")]
    field: Field,
    /// Degree bound for listings, and the bracket degree cap otherwise.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List Hall basis monomials up to --max-degree (default 4).
    HallBasis,
    /// Per-degree basis counts against the Witt formula, up to --max-degree (default 6).
    Dims,
    /// Normal form of a term.
    Nf { term: String },
    /// Normal form of [u, v].
    Bracket { u: String, v: String },
    /// s with [[r,a^m],[b,a^2n]] = [[r,a^(m+2n)],b] + [s,a].
    WitnessS(WitnessArgs),
    /// t with [[r,a^m],[b,a^(2n+1)]] = -[[r,a^(m+2n+1)],b] + [t,a].
    WitnessT(WitnessArgs),
    /// [b, f(a^2)] + alpha a.
    Encode {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        alpha: String,
    },
    /// Reads (f, alpha) back from an element of the code set.
    Decode { element: String },
    /// x, y and the auxiliaries z, z1, z2 for (f, alpha, beta).
    PsiWitness {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
    },
    /// Whether auxiliaries z, z1, z2 exist for (x, y); checks the given ones if all are supplied.
    PsiCheck {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        z1: Option<String>,
        #[arg(long)]
        z2: Option<String>,
    },
    /// w ~ u + v for code elements.
    OplusCheck { u: String, v: String, w: String },
    /// The product congruence for (f, g, h); holds exactly when f g = h.
    OtimesCheck {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Field operations on encoded scalars; for `action`, x and z are elements.
    FieldCheck {
        #[arg(long, value_enum)]
        op: FieldOp,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Compile a polynomial system (flattened first) into a Lie system.
    Compile {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        out: Option<String>,
        /// Polynomial assignment to map through the compiled system.
        #[arg(long)]
        assignment: Option<String>,
        #[arg(long)]
        assignment_out: Option<String>,
    },
    /// Solutions of a variable-linear system with components of degree <= D.
    SolveTruncated {
        #[arg(long)]
        system: String,
        #[arg(long)]
        degree: u32,
        /// Comma-separated variables to project onto.
        #[arg(long)]
        project: Option<String>,
    },
    /// Check an assignment against a system.
    Verify {
        #[arg(long)]
        system: String,
        #[arg(long)]
        assignment: String,
    },
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[arg(long)]
    r: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FieldOp {
    Add,
    Mul,
    Action,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Status {
    Done,
    Check(bool),
}

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(status) => Outcome {
            code: match status {
                Status::Done | Status::Check(true) => 0,
                Status::Check(false) => 1,
            },
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn write(path: &str, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn verdict(out: &mut String, ok: bool) -> Status {
    out.push_str(if ok { "true\n" } else { "false\n" });
    Status::Check(ok)
}

fn execute(cli: &Cli, out: &mut String) -> Result<Status> {
    let field = cli.field;
    let algebra = || -> Result<FreeLie> {
        Ok(FreeLie::new(cli.rank, field)?.with_degree_cap(cli.max_degree.unwrap_or(DEFAULT_DEGREE_CAP)))
    };
    let elem = |lie: &FreeLie, s: &str| parse_element(lie, s);
    let scalar = |s: &str| Scalar::parse(field, s);
    let poly = |s: &str| Polynomial::parse(field, s);

    match &cli.command {
        Command::HallBasis => {
            let d = cli.max_degree.unwrap_or(4);
            for m in generate_basis(cli.rank, d)? {
                writeln!(out, "{}\t{}\t{}", m.degree(), m.multidegree().display_padded(cli.rank), m).unwrap();
            }
        }
        Command::Dims => {
            let d = cli.max_degree.unwrap_or(6);
            let counts = degree_counts(&generate_basis(cli.rank, d)?, d);
            writeln!(out, "degree\tcount\twitt").unwrap();
            for (i, c) in counts.iter().enumerate() {
                let n = i as u32 + 1;
                writeln!(out, "{n}\t{c}\t{}", witt_dimension(cli.rank as u64, n)).unwrap();
            }
        }
        Command::Nf { term } => {
            let lie = algebra()?;
            writeln!(out, "{}", elem(&lie, term)?).unwrap();
        }
        Command::Bracket { u, v } => {
            let lie = algebra()?;
            writeln!(out, "{}", lie.bracket(&elem(&lie, u)?, &elem(&lie, v)?)?).unwrap();
        }
        Command::WitnessS(w) | Command::WitnessT(w) => {
            let lie = algebra()?;
            let r = elem(&lie, &w.r)?;
            let s = if matches!(cli.command, Command::WitnessS(_)) {
                witness_s(&lie, &r, w.m, w.n)?
            } else {
                witness_t(&lie, &r, w.m, w.n)?
            };
            writeln!(out, "{s}").unwrap();
        }
        Command::Encode { poly: f, alpha } => {
            let lie = algebra()?;
            writeln!(out, "{}", encode_poly(&lie, &poly(f)?, &scalar(alpha)?)?.element).unwrap();
        }
        Command::Decode { element } => {
            let lie = algebra()?;
            let (f, alpha) = decode_poly(&lie, &elem(&lie, element)?)?;
            writeln!(out, "poly: {f}\nalpha: {alpha}").unwrap();
        }
        Command::PsiWitness { poly: f, alpha, beta } => {
            let lie = algebra()?;
            let w = psi_witness(&lie, &poly(f)?, &scalar(alpha)?, &scalar(beta)?)?;
            for (k, v) in [("x", &w.x), ("y", &w.y), ("z", &w.z), ("z1", &w.z1), ("z2", &w.z2)] {
                writeln!(out, "{k} = {v}").unwrap();
            }
        }
        Command::PsiCheck { x, y, z, z1, z2 } => {
            let lie = algebra()?;
            let (x, y) = (elem(&lie, x)?, elem(&lie, y)?);
            return match (z, z1, z2) {
                (Some(z), Some(z1), Some(z2)) => {
                    let ok = check_phi(&lie, &x, &y, &elem(&lie, z)?, &elem(&lie, z1)?, &elem(&lie, z2)?)?;
                    Ok(verdict(out, ok))
                }
                (None, None, None) => {
                    // Each auxiliary occurs once, as [w, a], so this degree suffices.
                    let degree = x.degree().max(y.degree()).max(1);
                    match psi_auxiliaries_by_elimination(&lie, &x, &y, degree)? {
                        Some((z, z1, z2)) => {
                            writeln!(out, "z = {z}\nz1 = {z1}\nz2 = {z2}").unwrap();
                            Ok(verdict(out, true))
                        }
                        None => Ok(verdict(out, false)),
                    }
                }
                _ => Err(Error::Io("give all of --z, --z1, --z2 or none".into())),
            };
        }
        Command::OplusCheck { u, v, w } => {
            let lie = algebra()?;
            let ok = check_oplus(&lie, &elem(&lie, u)?, &elem(&lie, v)?, &elem(&lie, w)?)?;
            return Ok(verdict(out, ok));
        }
        Command::OtimesCheck { f, g, h } => {
            let lie = algebra()?;
            let ok = otimes_check(&lie, &poly(f)?, &poly(g)?, &poly(h)?)?;
            return Ok(verdict(out, ok));
        }
        Command::FieldCheck { op, x, y, z } => {
            let lie = algebra()?;
            let ok = match op {
                FieldOp::Add | FieldOp::Mul => {
                    let [x, y, z] = [x, y, z].map(|s| scalar(s).and_then(|c| encode_field(&lie, &c)));
                    let (x, y, z) = (x?, y?, z?);
                    if matches!(op, FieldOp::Add) {
                        check_field_add(&lie, &x, &y, &z)?
                    } else {
                        check_field_mul(&lie, &x, &y, &z)?
                    }
                }
                FieldOp::Action => {
                    let code = encode_field(&lie, &scalar(y)?)?;
                    check_scalar_action(&lie, &elem(&lie, x)?, &code, &elem(&lie, z)?)?
                }
            };
            return Ok(verdict(out, ok));
        }
        Command::Compile {
            input,
            out: target,
            assignment,
            assignment_out,
        } => {
            let lie = algebra()?;
            let source = from_json::<PolySystemDoc>(&read(input)?)?.to_system()?;
            let flat = flatten(&source);
            let compiled = compile_poly_system(&lie, &flat)?;
            let text = to_json(&LieSystemDoc::from_system(&lie, &compiled.system)) + "\n";
            match target {
                Some(p) => write(p, &text)?,
                None => out.push_str(&text),
            }
            if let Some(path) = assignment {
                let doc: BTreeMap<String, String> = from_json(&read(path)?)?;
                let sigma: PolyAssignment = poly_assignment_from_doc(field, &doc)?;
                let mapped = compiled.map_solution(&lie, &sigma)?;
                let text = to_json(&assignment_to_doc(&mapped)) + "\n";
                match assignment_out {
                    Some(p) => write(p, &text)?,
                    None => out.push_str(&text),
                }
            }
        }
        Command::SolveTruncated { system, degree, project } => {
            let doc: LieSystemDoc = from_json(&read(system)?)?;
            let lie = system_algebra(cli, &doc)?;
            let sys = doc.to_system(&lie)?;
            let Some(sol) = truncated_solutions(&lie, &sys, *degree)? else {
                writeln!(out, "no solutions with components of degree <= {degree}").unwrap();
                return Ok(Status::Check(false));
            };
            let kernel = match project {
                Some(vars) => {
                    let vars: Vec<&str> = vars.split(',').map(str::trim).collect();
                    sol.kernel.project(&vars)?
                }
                None => sol.kernel,
            };
            let nonzero: BTreeMap<_, _> = sol.particular.iter().filter(|(_, v)| !v.is_zero()).collect();
            if !nonzero.is_empty() {
                writeln!(out, "particular:").unwrap();
                for (k, v) in nonzero {
                    writeln!(out, "  {k} = {v}").unwrap();
                }
            }
            writeln!(out, "dimension: {}", kernel.dim()).unwrap();
            for (i, sigma) in kernel.assignments().iter().enumerate() {
                let shown: Vec<String> = sigma
                    .iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| format!("{k} = {v}"))
                    .collect();
                writeln!(out, "  [{i}] {}", shown.join("; ")).unwrap();
            }
        }
        Command::Verify { system, assignment } => {
            let doc: LieSystemDoc = from_json(&read(system)?)?;
            let lie = system_algebra(cli, &doc)?;
            let sys = doc.to_system(&lie)?;
            let sigma = assignment_from_doc(&lie, &from_json(&read(assignment)?)?)?;
            let report = check_system(&lie, &sys, &sigma)?;
            writeln!(out, "{report}").unwrap();
            return Ok(Status::Check(report.pass));
        }
    }
    Ok(Status::Done)
}

/// The algebra declared by a system document, with the CLI's degree cap.
fn system_algebra(cli: &Cli, doc: &LieSystemDoc) -> Result<FreeLie> {
    Ok(doc
        .algebra()?
        .with_degree_cap(cli.max_degree.unwrap_or(DEFAULT_DEGREE_CAP)))
}
