//! Subcommands and the exit-code contract.
//!
//! Exit codes: 0 success (or a decision that came out true), 1 a decision that
//! came out false, 2 a domain error reported by the library, 3 bad input.
//! Errors go to stderr as a single line starting with the error name.

use std::collections::BTreeSet;
use std::io::{Read, Write};

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use reparam_core::{
    approx_homeo, approx_noninjective, class_of, compose_stop_data, countable_builder, equivalent, factor_regular,
    image_chain, is_loop_free, join_witness, left_factor, meet_witness, normal_form, parse_rat, realize_values,
    regularize, right_lift, shared_source, thin_homotopy, witness_eval, ImageChain, Path, Rat, Reparam, Side,
    TraceClass,
};

use crate::document::{self, point_value, rat_value, to_pretty, to_value, DocError, Document};
use crate::render::render;

#[derive(Parser, Debug)]
#[command(
    name = "reparam",
    version,
    about = "Exact PL reparametrizations of [0,1] and traces of PL paths"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Composite F∘G of two reparametrizations, or path F reparametrized by G
    Compose { f: String, g: String },
    /// Stop data of F; given G too, stop data of F∘G from the composition formula
    Stopmap { f: String, g: Option<String> },
    /// Canonical reparametrization with the given stop data
    Realize { stopdata: String },
    /// Canonical reparametrization with the given finite set of stop values
    RealizeValues {
        #[arg(allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Step DEPTH of the plateau-inserting builder for a list of stop values
    BuildCountable {
        #[arg(long)]
        depth: usize,
        #[arg(allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Homeomorphism within 1/N of F
    ApproxHomeo { f: String, n: u32 },
    /// Non-injective reparametrization within 1/N of F
    ApproxNoninjective { f: String, n: u32 },
    /// Solve ETA = PHI∘PSI for PSI
    FactorRight {
        #[arg(long)]
        eta: String,
        #[arg(long)]
        phi: String,
        /// Comma-separated stop values wanted in PSI
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        extra_stops: Option<Vec<String>>,
    },
    /// Solve ETA = PSI∘PHI for PSI
    FactorLeft {
        #[arg(long)]
        eta: String,
        #[arg(long)]
        phi: String,
    },
    /// Class of F modulo homeomorphisms
    Class { f: String },
    /// Whether class A lies below class B (exit 0 or 1)
    Leq { a: String, b: String },
    /// Join of two classes
    Join { a: String, b: String },
    /// Meet of two classes
    Meet { a: String, b: String },
    /// PSI1, PSI2 with F1∘PSI1 = F2∘PSI2 realizing the join
    JoinWitness { f1: String, f2: String },
    /// RHO, PHI, PSI1, PSI2 with PSI1∘PHI = F1 and PSI2∘PHI = F2∘RHO
    MeetWitness { f1: String, f2: String },
    /// Regular path Q and reparametrization PHI with P = Q∘PHI
    Regularize { p: String },
    /// Reduced vertex chain of the trace of P
    NormalForm { p: String },
    /// Whether P and Q are reparametrization equivalent (exit 0 or 1)
    Equiv { p: String, q: String },
    /// Regular R with P = R∘PHI and Q = R∘PSI
    SharedSource { p: String, q: String },
    /// ETA with P∘ETA = P2, given regular P and P∘PHI = P2∘PHI2
    FactorRegular {
        p: String,
        phi: String,
        p2: String,
        phi2: String,
    },
    /// Thin homotopy witness between equivalent paths
    ThinHomotopy { p: String, q: String },
    /// Evaluate a homotopy witness at (S, T) on side 1 or 2
    WitnessEval {
        w: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        side: u8,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// Evaluate a reparametrization or path at T
    Eval { doc: String, t: String },
    /// P followed by Q, each at double speed
    Concat { p: String, q: String },
    /// Decide a property of a path (exit 0 or 1)
    Check(CheckArgs),
    /// Image of a loop-free path as a point or a vertex chain
    ImageChain { p: String },
    /// SVG plot of a document
    Render {
        doc: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Re-emit a document in canonical form
    Canonicalize { doc: String },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("property").required(true).args(["is_regular", "is_directed", "is_loop_free"])))]
pub struct CheckArgs {
    pub p: String,
    #[arg(long)]
    pub is_regular: bool,
    #[arg(long)]
    pub is_directed: bool,
    #[arg(long)]
    pub is_loop_free: bool,
}

#[derive(Debug)]
pub enum CliError {
    /// Exit code 3.
    Input { name: &'static str, detail: String },
    /// Exit code 2.
    Domain { name: &'static str, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 3,
            CliError::Domain { .. } => 2,
        }
    }

    pub fn line(&self) -> String {
        match self {
            CliError::Input { name, detail } | CliError::Domain { name, detail } => format!("{name}: {detail}"),
        }
    }
}

impl From<reparam_core::Error> for CliError {
    fn from(e: reparam_core::Error) -> Self {
        CliError::Domain {
            name: e.name(),
            detail: e.to_string(),
        }
    }
}

fn input(name: &'static str, detail: impl Into<String>) -> CliError {
    CliError::Input {
        name,
        detail: detail.into(),
    }
}

fn from_doc_error(source: &str, e: DocError) -> CliError {
    match e {
        DocError::Syntax(msg) => input("SyntaxError", format!("{source}: {msg}")),
        DocError::Validation { rule, detail } => input("ValidationError", format!("{rule}: {source}: {detail}")),
    }
}

/// What a successful command produced.
pub enum Outcome {
    Text(String),
    Decision(bool),
}

fn load(source: &str) -> Result<Document, CliError> {
    let mut text = String::new();
    if source == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| input("IoError", format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(source).map_err(|e| input("IoError", format!("{source}: {e}")))?;
    }
    document::parse(&text).map_err(|e| from_doc_error(source, e))
}

fn wrong_kind(source: &str, want: &str, doc: &Document) -> CliError {
    input(
        "WrongKind",
        format!("{source}: expected a {want} document, got {}", doc.kind()),
    )
}

fn load_reparam(source: &str) -> Result<Reparam, CliError> {
    match load(source)? {
        Document::Reparam(f) => Ok(f),
        other => Err(wrong_kind(source, "reparam", &other)),
    }
}

fn load_path(source: &str) -> Result<Path, CliError> {
    match load(source)? {
        Document::Path(p) => Ok(p),
        other => Err(wrong_kind(source, "path", &other)),
    }
}

fn load_class(source: &str) -> Result<TraceClass, CliError> {
    match load(source)? {
        Document::Class(c) => Ok(c),
        Document::Reparam(f) => Ok(class_of(&f)),
        other => Err(wrong_kind(source, "class or reparam", &other)),
    }
}

fn rat_arg(s: &str) -> Result<Rat, CliError> {
    parse_rat(s).ok_or_else(|| input("SyntaxError", format!("not a rational: {s:?}")))
}

fn one(doc: Document) -> Outcome {
    Outcome::Text(document::serialize(&doc))
}

fn many(docs: Vec<Document>) -> Outcome {
    Outcome::Text(to_pretty(&Value::Array(docs.iter().map(to_value).collect())))
}

fn value(v: Value) -> Outcome {
    Outcome::Text(to_pretty(&v))
}

fn path_point_list(points: &[Vec<Rat>]) -> Value {
    Value::Array(points.iter().map(|p| point_value(p)).collect())
}

pub fn execute(command: Command) -> Result<Outcome, CliError> {
    use Document as D;
    Ok(match command {
        Command::Compose { f, g } => {
            let inner = load_reparam(&g)?;
            match load(&f)? {
                D::Reparam(outer) => one(D::Reparam(outer.compose(&inner))),
                D::Path(p) => one(D::Path(p.reparam(&inner))),
                other => return Err(wrong_kind(&f, "reparam or path", &other)),
            }
        }
        Command::Stopmap { f, g } => {
            let f = load_reparam(&f)?;
            match g {
                None => one(D::StopData(f.stop_data())),
                Some(g) => one(D::StopData(compose_stop_data(&f, &load_reparam(&g)?))),
            }
        }
        Command::Realize { stopdata } => match load(&stopdata)? {
            D::StopData(s) => one(D::Reparam(s.realize())),
            other => return Err(wrong_kind(&stopdata, "stopdata", &other)),
        },
        Command::RealizeValues { values } => {
            let mut set = BTreeSet::new();
            for v in &values {
                if !set.insert(rat_arg(v)?) {
                    return Err(reparam_core::Error::DuplicateValue(v.clone()).into());
                }
            }
            one(D::Reparam(realize_values(&set)?))
        }
        Command::BuildCountable { depth, values } => {
            let values = values.iter().map(|v| rat_arg(v)).collect::<Result<Vec<_>, _>>()?;
            one(D::Reparam(countable_builder(&values, depth)?))
        }
        Command::ApproxHomeo { f, n } => one(D::Reparam(approx_homeo(&load_reparam(&f)?, n)?.into_reparam())),
        Command::ApproxNoninjective { f, n } => one(D::Reparam(approx_noninjective(&load_reparam(&f)?, n)?)),
        Command::FactorRight { eta, phi, extra_stops } => {
            let (eta, phi) = (load_reparam(&eta)?, load_reparam(&phi)?);
            let extra = match extra_stops {
                Some(vs) => Some(
                    vs.iter()
                        .filter(|v| !v.is_empty())
                        .map(|v| rat_arg(v))
                        .collect::<Result<BTreeSet<_>, _>>()?,
                ),
                None => None,
            };
            one(D::Reparam(right_lift(&eta, &phi, extra.as_ref())?))
        }
        Command::FactorLeft { eta, phi } => one(D::Reparam(left_factor(&load_reparam(&eta)?, &load_reparam(&phi)?)?)),
        Command::Class { f } => one(D::Class(load_class(&f)?)),
        Command::Leq { a, b } => Outcome::Decision(load_class(&a)?.leq(&load_class(&b)?)),
        Command::Join { a, b } => one(D::Class(load_class(&a)?.join(&load_class(&b)?))),
        Command::Meet { a, b } => one(D::Class(load_class(&a)?.meet(&load_class(&b)?))),
        Command::JoinWitness { f1, f2 } => {
            let w = join_witness(&load_reparam(&f1)?, &load_reparam(&f2)?);
            many(vec![D::Reparam(w.psi1), D::Reparam(w.psi2)])
        }
        Command::MeetWitness { f1, f2 } => {
            let w = meet_witness(&load_reparam(&f1)?, &load_reparam(&f2)?);
            many(vec![
                D::Reparam(w.rho.into_reparam()),
                D::Reparam(w.phi),
                D::Reparam(w.psi1),
                D::Reparam(w.psi2),
            ])
        }
        Command::Regularize { p } => {
            let (q, phi) = regularize(&load_path(&p)?);
            many(vec![D::Path(q), D::Reparam(phi)])
        }
        Command::NormalForm { p } => {
            let p = load_path(&p)?;
            let nf = normal_form(&p);
            value(json!({ "dim": p.dim(), "vertices": path_point_list(&nf.vertices) }))
        }
        Command::Equiv { p, q } => Outcome::Decision(equivalent(&load_path(&p)?, &load_path(&q)?)?),
        Command::SharedSource { p, q } => {
            let s = shared_source(&load_path(&p)?, &load_path(&q)?)?;
            many(vec![D::Path(s.r), D::Reparam(s.phi), D::Reparam(s.psi)])
        }
        Command::FactorRegular { p, phi, p2, phi2 } => {
            let eta = factor_regular(
                &load_path(&p)?,
                &load_reparam(&phi)?,
                &load_path(&p2)?,
                &load_reparam(&phi2)?,
            )?;
            one(D::Reparam(eta))
        }
        Command::ThinHomotopy { p, q } => one(D::Witness(thin_homotopy(&load_path(&p)?, &load_path(&q)?)?)),
        Command::WitnessEval { w, side, s, t } => {
            let w = match load(&w)? {
                D::Witness(w) => w,
                other => return Err(wrong_kind(&w, "witness", &other)),
            };
            let side = if side == 1 { Side::First } else { Side::Second };
            value(point_value(&witness_eval(&w, side, &rat_arg(&s)?, &rat_arg(&t)?)?))
        }
        Command::Eval { doc, t } => {
            let t = rat_arg(&t)?;
            match load(&doc)? {
                D::Reparam(f) => value(rat_value(&f.eval(&t)?)),
                D::Path(p) => value(point_value(&p.eval(&t)?)),
                other => return Err(wrong_kind(&doc, "reparam or path", &other)),
            }
        }
        Command::Concat { p, q } => one(D::Path(load_path(&p)?.concat(&load_path(&q)?)?)),
        Command::Check(args) => {
            let p = load_path(&args.p)?;
            Outcome::Decision(if args.is_regular {
                p.is_regular()
            } else if args.is_directed {
                p.is_directed()
            } else {
                is_loop_free(&p)
            })
        }
        Command::ImageChain { p } => match image_chain(&load_path(&p)?)? {
            ImageChain::Point(x) => value(json!({ "point": point_value(&x) })),
            ImageChain::Arc(vs) => value(json!({ "arc": path_point_list(&vs) })),
        },
        Command::Render { doc, output } => {
            let svg = render(&load(&doc)?).map_err(|e| CliError::Domain {
                name: "Unrenderable",
                detail: e.0,
            })?;
            match output {
                Some(out) => {
                    std::fs::write(&out, svg).map_err(|e| input("IoError", format!("{out}: {e}")))?;
                    Outcome::Text(String::new())
                }
                None => Outcome::Text(svg),
            }
        }
        Command::Canonicalize { doc } => one(load(&doc)?),
    })
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let first = e.to_string().lines().next().unwrap_or_default().to_string();
            let _ = writeln!(err, "UsageError: {}", first.trim_start_matches("error: "));
            return 3;
        }
    };
    match execute(cli.command) {
        Ok(Outcome::Text(text)) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Ok(Outcome::Decision(b)) => {
            let _ = writeln!(out, "{b}");
            if b {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.line());
            e.exit_code()
        }
    }
}
