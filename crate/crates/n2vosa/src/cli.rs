//! Command-line driver behind the `n2vosa` binary.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
//! a usage or configuration error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::operators::{OperatorFamily, Preset};
use crate::qseries::theta_series;
use crate::scalar::Rational;
use crate::superalgebra::{homomorphism_check, jacobi_check, AlgebraMap, Basis, Presentation, Tag};
use crate::verify::{
    check_derivative, check_relations, closed_form, compare_biseries, compare_series, consequence_identities,
    graded_dimension, pq_closed_form, weber_identities, ClosedForm, DimensionReport, GradedDimension, PqClosedForm,
    CentralCharge, Variant,
};
use crate::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Worker count for the parallel checks.
pub const THREADS_ENV: &str = "N2VOSA_THREADS";

#[derive(Parser, Debug)]
#[command(name = "n2vosa", version, about = "Verify free-field N=1/N=2 superconformal structures and their characters")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobi identity of a presentation, or a spectral-flow homomorphism.
    VerifyAlgebra(AlgebraArgs),
    /// Relations, central charge and derivative property of a sector.
    VerifySector(SectorArgs),
    /// Graded dimensions, closed-form comparisons and q-series identities.
    Dim(DimArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraFamily {
    Virasoro,
    N1Ns,
    N1Ramond,
    N2Shifted,
    N2Mirror,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Homogeneous,
    Nonhomogeneous,
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    #[arg(long, value_enum, required_unless_present = "flow", conflicts_with = "flow")]
    pub family: Option<AlgebraFamily>,

    /// Shift of the N=2 shifted algebra.
    #[arg(long, default_value = "0")]
    pub t: Rational,

    #[arg(long, value_enum)]
    pub basis: Option<BasisArg>,

    /// Largest |index| of the generators checked.
    #[arg(long, default_value = "3")]
    pub bound: Rational,

    /// Check D(t) as a homomorphism from the (−t)-shifted to the 0-shifted algebra.
    #[arg(long, allow_hyphen_values = true)]
    pub flow: Option<Rational>,
}

#[derive(Args, Debug)]
pub struct SectorArgs {
    /// Sector preset.
    #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
    pub sector: Option<String>,

    /// JSON sector file: {"sector": .., "d": .., "k": .., "j": .., "cutoff": .., "bound": ..}.
    #[arg(long)]
    pub spec: Option<PathBuf>,

    #[arg(long, default_value_t = 1)]
    pub d: u32,

    #[arg(long, default_value_t = 3)]
    pub k: i64,

    #[arg(long, default_value_t = 1)]
    pub j: i64,

    /// Weight cutoff of the enumerated basis.
    #[arg(long)]
    pub cutoff: Option<Rational>,

    /// Largest |index| of the generator modes checked.
    #[arg(long, default_value = "2")]
    pub bound: Rational,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Dim,
    Sdim,
    Pq,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdentityArg {
    /// 𝔣𝔣₁𝔣₂ = √2
    WeberProduct,
    /// All four Weber identities.
    Weber,
}

#[derive(Args, Debug)]
pub struct DimArgs {
    #[arg(long, required_unless_present = "identity")]
    pub sector: Option<String>,

    #[arg(long, default_value_t = 1)]
    pub d: u32,

    #[arg(long, default_value_t = 3)]
    pub k: i64,

    #[arg(long, default_value_t = 1)]
    pub j: i64,

    /// Series are exact below q^order.
    #[arg(long, default_value = "6")]
    pub order: Rational,

    #[arg(long, value_enum, default_value_t = VariantArg::Dim)]
    pub variant: VariantArg,

    /// Largest |p-exponent| reported by the pq variant.
    #[arg(long, default_value_t = 4)]
    pub p_bound: i64,

    /// Closed form to compare with.
    #[arg(long)]
    pub compare: Option<String>,

    #[arg(long, value_enum, conflicts_with_all = ["sector", "compare", "theta"])]
    pub identity: Option<IdentityArg>,

    /// Gram matrix (JSON) of a lattice whose theta series multiplies the character.
    #[arg(long)]
    pub theta: Option<PathBuf>,
}

/// A finished command: verdict plus its text and JSON renderings.
#[derive(Debug)]
pub struct Outcome {
    pub passed: bool,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("report serializes")),
        }
    }
}

fn is_config_error(e: &Error) -> bool {
    !matches!(e, Error::Internal(_))
}

fn envelope(command: &str, passed: bool, reports: Vec<Value>) -> Value {
    json!({ "command": command, "passed": passed, "reports": reports })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn nonnegative(name: &str, x: &Rational) -> Result<(), Error> {
    if x.is_negative() {
        return Err(Error::Invalid(format!("--{name} must be nonnegative, got {x}")));
    }
    Ok(())
}

fn positive(name: &str, x: &Rational) -> Result<(), Error> {
    if !x.is_positive() {
        return Err(Error::Invalid(format!("--{name} must be positive, got {x}")));
    }
    Ok(())
}

fn preset(name: &str, d: u32, k: i64, j: i64) -> Result<Preset, Error> {
    if d == 0 {
        return Err(Error::Invalid("--d must be at least 1".into()));
    }
    if k < 1 {
        return Err(Error::Invalid(format!("--k must be at least 1, got {k}")));
    }
    Preset::parse(name, k, j)
}

pub fn presentation(family: AlgebraFamily, t: &Rational, basis: Option<BasisArg>) -> Result<Presentation, Error> {
    let basis = match (basis, family) {
        (Some(BasisArg::Homogeneous), _) => Basis::Homogeneous,
        (Some(BasisArg::Nonhomogeneous), _) | (None, AlgebraFamily::N2Mirror) => Basis::Nonhomogeneous,
        (None, _) => Basis::Homogeneous,
    };
    if !t.is_zero() && family != AlgebraFamily::N2Shifted {
        return Err(Error::Invalid("--t only applies to the n2-shifted family".into()));
    }
    let tag = match family {
        AlgebraFamily::Virasoro => Tag::Virasoro,
        AlgebraFamily::N1Ns => Tag::N1NS,
        AlgebraFamily::N1Ramond => Tag::N1Ramond,
        AlgebraFamily::N2Shifted => Tag::N2Shifted(t.clone()),
        AlgebraFamily::N2Mirror => Tag::N2Mirror,
    };
    if basis == Basis::Nonhomogeneous && !matches!(tag, Tag::N2Shifted(_) | Tag::N2Mirror) {
        return Err(Error::Invalid("only the N=2 algebras have a nonhomogeneous basis".into()));
    }
    Presentation::new(tag, basis)
}

pub fn cmd_verify_algebra(args: &AlgebraArgs) -> Result<Outcome, Error> {
    nonnegative("bound", &args.bound)?;
    if let Some(t) = &args.flow {
        let src = Presentation::n2_shifted(-t);
        let dst = Presentation::n2_shifted(Rational::zero());
        let rep = homomorphism_check(&AlgebraMap::SpectralFlow(t.clone()), &src, &dst, &args.bound);
        let mut text = format!(
            "{}: {} -> {}, |index| <= {}\npairs checked: {}\n",
            rep.map, rep.source, rep.target, rep.index_bound, rep.pairs_checked
        );
        for f in &rep.failures {
            let _ = writeln!(text, "  [{}, {}]: {}", f.pair[0], f.pair[1], f.detail);
        }
        let _ = writeln!(text, "{}", verdict(rep.passed()));
        return Ok(Outcome {
            passed: rep.passed(),
            text,
            json: envelope("verify-algebra", rep.passed(), vec![to_value(&rep)]),
        });
    }
    let family = args.family.expect("clap requires --family without --flow");
    let pres = presentation(family, &args.t, args.basis)?;
    let rep = jacobi_check(&pres, &args.bound);
    let mut text = format!(
        "{}, |index| <= {}\ngenerators: {}, triples: {}, skew pairs: {}\n",
        rep.presentation,
        rep.index_bound,
        pres.generators(&args.bound).len(),
        rep.triples_checked,
        rep.skew_pairs_checked
    );
    for f in rep.failures.iter().take(20) {
        let _ = writeln!(text, "  ({}, {}, {}): {}", f.triple[0], f.triple[1], f.triple[2], f.residual);
    }
    let _ = writeln!(text, "{}", verdict(rep.passed()));
    Ok(Outcome { passed: rep.passed(), text, json: envelope("verify-algebra", rep.passed(), vec![to_value(&rep)]) })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SectorFile {
    sector: String,
    #[serde(default = "one_u32")]
    d: u32,
    #[serde(default = "three")]
    k: i64,
    #[serde(default = "one_i64")]
    j: i64,
    cutoff: Option<String>,
    bound: Option<String>,
}

fn one_u32() -> u32 {
    1
}

fn one_i64() -> i64 {
    1
}

fn three() -> i64 {
    3
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Error> {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Weight cutoff used when none is given.
pub fn default_cutoff(p: Preset) -> Rational {
    match p {
        Preset::Bos | Preset::KappaBoson => Rational::from_int(4),
        Preset::Fer | Preset::SigmaFermion | Preset::N1Free | Preset::RamondN1 => Rational::new(7, 2),
        Preset::N2Free | Preset::N2FreeCharged | Preset::RamondN2 | Preset::MirrorKappa => Rational::new(5, 2),
        Preset::SigmaXi { .. } => Rational::from_int(3),
    }
}

/// Sectors whose vacuum identities are checked alongside the relations.
fn has_vacuum_identities(p: Preset) -> bool {
    matches!(p, Preset::Bos | Preset::Fer | Preset::N1Free | Preset::N2Free)
}

pub fn cmd_verify_sector(args: &SectorArgs) -> Result<Outcome, Error> {
    let (p, d, cutoff, bound) = match &args.spec {
        Some(path) => {
            let f: SectorFile = read_json(path)?;
            let p = preset(&f.sector, f.d, f.k, f.j)?;
            let cutoff = match f.cutoff {
                Some(c) => c.parse()?,
                None => default_cutoff(p),
            };
            let bound = match f.bound {
                Some(b) => b.parse()?,
                None => args.bound.clone(),
            };
            (p, f.d, cutoff, bound)
        }
        None => {
            let name = args.sector.as_deref().expect("clap requires --sector without --spec");
            let p = preset(name, args.d, args.k, args.j)?;
            (p, args.d, args.cutoff.clone().unwrap_or_else(|| default_cutoff(p)), args.bound.clone())
        }
    };
    positive("cutoff", &cutoff)?;
    nonnegative("bound", &bound)?;
    let family = OperatorFamily::preset(p, d)?;
    let mut text = format!("sector {p}, d = {d}: {}\ncutoff {cutoff}, |index| <= {bound}\n", family.sector());
    let mut reports = Vec::new();
    let mut passed = true;
    for pres in p.presentations() {
        let rep = check_relations(&family, &pres, &bound, &cutoff)?;
        let c = match &rep.central_charge {
            CentralCharge::Consistent(c) => format!("c = {c}"),
            CentralCharge::Inconsistent => "c inconsistent".into(),
            CentralCharge::NotMeasured => "c not measured".into(),
        };
        let _ = writeln!(
            text,
            "{:<4}  {}: {} pairs, basis {}, {c} (expected {})",
            verdict(rep.passed()),
            rep.suite,
            rep.pairs_checked,
            rep.basis_size,
            rep.central_charge_claim
        );
        for f in rep.failures.iter().take(10) {
            let _ = writeln!(text, "  {f:?}");
        }
        passed &= rep.passed();
        reports.push(to_value(&rep));
    }
    let der = check_derivative(&family, &bound, &cutoff)?;
    let _ = writeln!(text, "{:<4}  [L(-1), u(n+1)] = (-n - wt u) u(n): {} checks", verdict(der.passed()), der.checks);
    for f in der.failures.iter().take(10) {
        let _ = writeln!(text, "  {f}");
    }
    passed &= der.passed();
    let mut der_json = to_value(&der);
    der_json["suite"] = json!("derivative");
    reports.push(der_json);
    if has_vacuum_identities(p) {
        let ids = consequence_identities(&family)?;
        for c in &ids {
            let _ = writeln!(text, "{:<4}  {}", verdict(c.passed), c.name);
            passed &= c.passed;
        }
        reports.push(json!({ "suite": "vacuum identities", "checks": ids }));
    }
    let _ = writeln!(text, "{}", verdict(passed));
    Ok(Outcome { passed, text, json: envelope("verify-sector", passed, reports) })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GramFile {
    Bare(Vec<Vec<i64>>),
    Wrapped { gram: Vec<Vec<i64>> },
}

fn read_gram(path: &Path) -> Result<Vec<Vec<i64>>, Error> {
    Ok(match read_json::<GramFile>(path)? {
        GramFile::Bare(g) | GramFile::Wrapped { gram: g } => g,
    })
}

fn comparison_text(text: &mut String, name: &str, rep: &DimensionReport) {
    let below = rep.truncation.as_ref().map(|t| t.to_string()).unwrap_or_else(|| "∞".into());
    match &rep.first_difference {
        None => {
            let _ = writeln!(text, "{name}: match below q^{below}");
        }
        Some(d) => {
            let _ = writeln!(text, "{name}: differs at {d}");
        }
    }
}

pub fn cmd_dim(args: &DimArgs) -> Result<Outcome, Error> {
    positive("order", &args.order)?;
    if let Some(which) = args.identity {
        let mut ids = weber_identities(&args.order)?;
        if which == IdentityArg::WeberProduct {
            ids.truncate(1);
        }
        let mut text = String::new();
        let mut reports = Vec::new();
        for (name, rep) in &ids {
            comparison_text(&mut text, name, rep);
            reports.push(json!({ "identity": name, "comparison": rep }));
        }
        let passed = ids.iter().all(|(_, r)| r.matched);
        let _ = writeln!(text, "{}", verdict(passed));
        return Ok(Outcome { passed, text, json: envelope("dim", passed, reports) });
    }
    let name = args.sector.as_deref().expect("clap requires --sector without --identity");
    let p = preset(name, args.d, args.k, args.j)?;
    if args.p_bound < 0 {
        return Err(Error::Invalid(format!("--p-bound must be nonnegative, got {}", args.p_bound)));
    }
    let theta = match &args.theta {
        None => None,
        Some(path) => {
            let gram = read_gram(path)?;
            if p != Preset::Bos || gram.len() != args.d as usize {
                return Err(Error::Invalid(format!(
                    "--theta needs --sector bos with --d equal to the lattice rank {}",
                    gram.len()
                )));
            }
            if args.variant == VariantArg::Pq {
                return Err(Error::Invalid("--theta does not combine with --variant pq".into()));
            }
            Some(theta_series(&gram, &args.order)?)
        }
    };
    let family = OperatorFamily::preset(p, args.d)?;
    // L(0) − c/24 ≥ −c/24, so this cutoff covers every exponent below the order.
    let cutoff = &args.order + &(family.central_charge_claim() / &Rational::from_int(24));
    let variant = match args.variant {
        VariantArg::Dim => Variant::Dim,
        VariantArg::Sdim => Variant::Sdim,
        VariantArg::Pq => Variant::Pq { p_bound: args.p_bound },
    };
    let order = Some(args.order.clone());
    let mut text = format!("sector {p}, d = {}: {}\n", args.d, family.sector());
    let mut report = json!({
        "sector": p.to_string(),
        "d": args.d,
        "variant": format!("{:?}", args.variant).to_lowercase(),
        "order": args.order,
    });
    let mut passed = true;
    match graded_dimension(&family, &cutoff, variant)? {
        GradedDimension::Q(series) => {
            let mut series = series.with_trunc(order.clone());
            if let Some(th) = &theta {
                series = series.mul(th);
            }
            let _ = writeln!(text, "{series}");
            report["series"] = to_value(&series);
            if let Some(form) = &args.compare {
                let form = ClosedForm::parse(form, args.k, args.j)?;
                let mut closed = closed_form(form, args.d, &args.order)?;
                if let Some(th) = &theta {
                    closed = closed.mul(th);
                }
                let rep = compare_series(&series, &closed);
                comparison_text(&mut text, &format!("{form:?}"), &rep);
                passed = rep.matched;
                report["comparison"] = to_value(&rep);
            }
        }
        GradedDimension::Pq { series, p_shift } => {
            let series = series.with_trunc(order);
            let _ = writeln!(text, "p^{p_shift} · ({series})");
            report["series"] = to_value(&series);
            report["p_shift"] = to_value(&p_shift);
            if let Some(form) = &args.compare {
                let form = PqClosedForm::parse(form, args.k, args.j)?;
                let closed = pq_closed_form(form, args.d, &args.order, args.p_bound)?;
                let rep = compare_biseries(&series, &closed);
                comparison_text(&mut text, &format!("{form:?}"), &rep);
                passed = rep.matched;
                report["comparison"] = to_value(&rep);
            }
        }
    }
    if args.compare.is_some() {
        let _ = writeln!(text, "{}", verdict(passed));
    }
    Ok(Outcome { passed, text, json: envelope("dim", passed, vec![report]) })
}

pub fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::VerifyAlgebra(a) => cmd_verify_algebra(a),
        Command::VerifySector(a) => cmd_verify_sector(a),
        Command::Dim(a) => cmd_dim(a),
    }
}

fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Invalid(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args`, runs the command, writes the report and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
        }
    };
    let outcome = configure_threads().and_then(|_| run(&cli));
    match outcome {
        Ok(o) => {
            let body = o.render(cli.format);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, body) {
                        eprintln!("error: {}: {e}", path.display());
                        return EXIT_CONFIG;
                    }
                    eprintln!("{}", verdict(o.passed));
                }
                None => print!("{body}"),
            }
            o.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            if is_config_error(&e) {
                EXIT_CONFIG
            } else {
                EXIT_FAIL
            }
        }
    }
}
