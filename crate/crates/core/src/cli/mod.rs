//! Command-line front end: expression parsing, fixtures, dispatch and reports.

pub mod fixtures;
pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, CycloField, CycloRational, Field};
use crate::factorrep::{compare_pairs, generic_coordinates, group_factors, meromorphic_reduce, Reduction};
use crate::session::{open, Options, Session};

use report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Puiseux roots of f and g
    Roots,
    /// The tree model as ASCII art
    Tree,
    /// Per-bar invariants and predictions
    Analyze,
    /// Predictions against the expanded polar roots
    Verify,
    /// Polar-quotient groups and intersection multiplicities
    Factor,
    /// Equivalence of two pairs
    Compare,
    /// Meromorphic reduction of a Laurent pair
    Reduce,
    /// Shear to generic coordinates
    Generic,
}

#[derive(Debug, Parser)]
#[command(name = "polartree", version, about = "Tree models of plane-curve germ pairs and their polar roots")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// f as an expression, or @FILE
    #[arg(long = "f", value_name = "EXPR")]
    pub f: Option<String>,
    /// g as an expression, or @FILE
    #[arg(long = "g", value_name = "EXPR")]
    pub g: Option<String>,
    /// A shipped input pair
    #[arg(long, value_name = "NAME", conflicts_with_all = ["f", "g"])]
    pub fixture: Option<String>,
    /// f of the second pair (compare)
    #[arg(long = "f2", value_name = "EXPR")]
    pub f2: Option<String>,
    /// g of the second pair (compare)
    #[arg(long = "g2", value_name = "EXPR")]
    pub g2: Option<String>,
    /// Second shipped pair (compare)
    #[arg(long, value_name = "NAME", conflicts_with_all = ["f2", "g2"])]
    pub fixture2: Option<String>,
    /// Work over a field containing Q(zeta_N)
    #[arg(long, value_name = "N", default_value_t = 4)]
    pub field: u32,
    /// Fixed truncation target, e.g. 6 or 13/2
    #[arg(long, value_name = "Q")]
    pub trunc: Option<String>,
    /// Inputs are Laurent in y
    #[arg(long)]
    pub laurent: bool,
    /// Shear constant (generic) or shift s / auto (reduce)
    #[arg(long, value_name = "C", allow_hyphen_values = true)]
    pub shift: Option<String>,
    /// Print the report document as JSON
    #[arg(long)]
    pub json: bool,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::NegativeExponentWithoutLaurent { .. }
        | Error::ZeroPolynomial
        | Error::InputViolatesSimplicity(_)
        | Error::SNotLargeEnough(_)
        | Error::NotApplicable(_)
        | Error::DivisionByZero => EXIT_INPUT,
        Error::FieldTooSmall(_)
        | Error::TruncationTooShort(_)
        | Error::TruncationBudgetExceeded(_)
        | Error::UnresolvedBranch { .. }
        | Error::PlacementUnresolved(_)
        | Error::Indeterminate(_)
        | Error::NoGenericFound => EXIT_LIMIT,
        Error::NoCover | Error::NoPostbar | Error::InternalInconsistency(_) => EXIT_FAIL,
    }
}

struct Pair {
    f: String,
    g: String,
    laurent: bool,
}

fn read_expr(text: &str) -> Result<String> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::NotApplicable(format!("cannot read {path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

fn pair_of(f: &Option<String>, g: &Option<String>, fixture: &Option<String>, laurent: bool) -> Result<Pair> {
    if let Some(name) = fixture {
        let fx = fixtures::fixture(name).ok_or_else(|| {
            let names: Vec<&str> = fixtures::FIXTURES.iter().map(|f| f.name).collect();
            Error::NotApplicable(format!("unknown fixture '{name}' (known: {})", names.join(", ")))
        })?;
        return Ok(Pair {
            f: fx.f.into(),
            g: fx.g.into(),
            laurent: fx.laurent || laurent,
        });
    }
    match (f, g) {
        (Some(f), Some(g)) => Ok(Pair {
            f: read_expr(f)?,
            g: read_expr(g)?,
            laurent,
        }),
        _ => Err(Error::NotApplicable("give --f and --g, or --fixture".into())),
    }
}

fn parse_trunc(text: &str) -> Result<Rational64> {
    let q = Rational64::from_str(text.trim()).map_err(|_| Error::NotApplicable(format!("--trunc expects a rational, got '{text}'")))?;
    if q <= Rational64::from_integer(0) {
        return Err(Error::NotApplicable("--trunc must be positive".into()));
    }
    Ok(q)
}

fn parse_s(text: Option<&str>) -> Result<Option<i64>> {
    match text.map(str::trim) {
        None | Some("auto") => Ok(None),
        Some(t) => t
            .parse::<i64>()
            .map(Some)
            .map_err(|_| Error::NotApplicable(format!("--shift expects an integer s or 'auto', got '{t}'"))),
    }
}

fn parse_constant(text: &str, field: &Field) -> Result<CycloRational> {
    let p = parse::parse_expression(text, field, false)?;
    let constant = p.is_zero() || (p.num_terms() == 1 && !p.coeff(0, 0).is_zero());
    if !constant {
        return Err(Error::NotApplicable(format!("--shift expects a constant, got '{text}'")));
    }
    Ok(p.coeff(0, 0))
}

/// Parsed input pair, reduced to polynomials when Laurent.
struct Prepared {
    f: BiPoly,
    g: BiPoly,
    reduction: Option<Reduction>,
}

fn prepare(pair: &Pair, field: &Field, shift: Option<&str>) -> Result<Prepared> {
    let f = parse::parse_expression(&pair.f, field, pair.laurent)?;
    let g = parse::parse_expression(&pair.g, field, pair.laurent)?;
    if !pair.laurent {
        return Ok(Prepared { f, g, reduction: None });
    }
    let r = meromorphic_reduce(&f, &g, parse_s(shift)?)?;
    Ok(Prepared {
        f: r.f.clone(),
        g: r.g.clone(),
        reduction: Some(r),
    })
}

fn options(args: &Args) -> Result<Options> {
    Ok(Options {
        field: args.field,
        trunc: args.trunc.as_deref().map(parse_trunc).transpose()?,
    })
}

fn session_report(cmd: Command, s: &Session) -> Result<(Report, bool)> {
    let mut rep = Report::new(&format!("{cmd:?}").to_lowercase());
    rep.input = Some(report::input_doc(s));
    let mut pass = true;
    match cmd {
        Command::Roots => rep.roots = Some(report::roots_doc(s)),
        Command::Tree => rep.tree = Some(report::tree_doc(&s.tree, &s.analyses)),
        Command::Analyze => {
            rep.tree = Some(report::tree_doc(&s.tree, &s.analyses));
            rep.bars = Some(report::bar_docs(&s.tree, &s.analyses));
            rep.predictions = Some(report::prediction_docs(&s.tree, &s.analyses));
        }
        Command::Verify | Command::Reduce => {
            let v = s.verify()?;
            pass = v.pass;
            rep.tree = Some(report::tree_doc(&s.tree, &s.analyses));
            rep.bars = Some(report::bar_docs(&s.tree, &s.analyses));
            rep.predictions = Some(report::prediction_docs(&s.tree, &s.analyses));
            rep.oracle = Some(report::oracle_doc(s));
            rep.verification = Some(report::verification_doc(&v));
        }
        Command::Factor => {
            let fr = group_factors(&s.f, &s.g, &s.tree, &s.analyses, &s.polar)?;
            pass = fr.partition_complete(&s.polar);
            rep.oracle = Some(report::oracle_doc(s));
            rep.factors = Some(report::factors_doc(&s.tree, &fr, s));
        }
        Command::Compare | Command::Generic => unreachable!("handled separately"),
    }
    Ok((rep, pass))
}

fn execute(args: &Args) -> Result<(Report, bool)> {
    let field = CycloField::new(4u32.lcm(&args.field.max(1)));
    let opts = options(args)?;
    let pair = pair_of(&args.f, &args.g, &args.fixture, args.laurent)?;
    match args.command {
        Command::Generic => {
            let p = prepare(&pair, &field, None)?;
            let c = args.shift.as_deref().map(|t| parse_constant(t, &field)).transpose()?;
            let gen = generic_coordinates(&p.f, &p.g, c)?;
            let mut rep = Report::new("generic");
            rep.reduction = p.reduction.as_ref().map(report::reduction_doc);
            rep.generic = Some(report::generic_doc(&gen));
            Ok((rep, true))
        }
        Command::Compare => {
            let other = pair_of(&args.f2, &args.g2, &args.fixture2, args.laurent)?;
            let a = prepare(&pair, &field, args.shift.as_deref())?;
            let b = prepare(&other, &field, args.shift.as_deref())?;
            let sa = open(&a.f, &a.g, &opts)?;
            let sb = open(&b.f, &b.g, &opts)?;
            let verdict = compare_pairs((&sa.tree, &sa.analyses), (&sb.tree, &sb.analyses))?;
            let mut rep = Report::new("compare");
            rep.input = Some(report::input_doc(&sa));
            rep.comparison = Some(report::comparison_doc(&verdict));
            Ok((rep, true))
        }
        cmd => {
            if cmd == Command::Reduce && !pair.laurent {
                return Err(Error::NotApplicable("reduce needs a Laurent pair (--laurent)".into()));
            }
            let p = prepare(&pair, &field, args.shift.as_deref())?;
            let s = open(&p.f, &p.g, &opts)?;
            let (mut rep, pass) = session_report(cmd, &s)?;
            rep.reduction = p.reduction.as_ref().map(report::reduction_doc);
            let identity = p.reduction.as_ref().is_none_or(|r| r.jacobian_identity);
            Ok((rep, pass && identity))
        }
    }
}

/// Run the command line `argv` (program name first); returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&args) {
        Ok((rep, pass)) => {
            let text = if args.json { rep.to_json() + "\n" } else { report::render(&rep) };
            let _ = out.write_all(text.as_bytes());
            if pass {
                EXIT_OK
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
