mod error;
mod source;

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use gkdefect::algebra::{linear_characters, LinearCharacter};
use gkdefect::fixtures::quadratic::split_primes;
use gkdefect::fixtures::{quadratic_document, AdmittedField, NumberField};
use gkdefect::invariants::{
    classify_gk, compute_invariants, gross_bound, irreducible_over_q, leopoldt_bound, ArtinRep, DefectBound,
    GkDescriptor, GrossFlags, InvariantTriple, PlaceData,
};
use gkdefect::padic::{hensel_roots, log_rational, Padic, PrecisionPolicy};
use gkdefect::regulators::{character_label, defect_report, isotypic_matrices, DefectKind, IsotypicMatrices, RegulatorError};
use gkdefect::scan::{
    algebraicity_probe, exceptional_slope_candidate, slope_scan, twist_invariant, ProbeOutcome, Sampler, ScanError,
    Slope,
};
use gkdefect::theta::{
    parse_rational, six_exponentials_check, theta_value, waldschmidt_roy_rank_bound, SixExponentials, ThetaDocument,
};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use error::CliError;
use source::{digest, Envelope, FieldArgs, Source};

#[derive(Parser, Debug)]
#[command(name = "gkdefect", version, about = "Certified Leopoldt and Gross defects over Z_p-extensions")]
struct Cli {
    /// Working p-adic precision N (at least 10).
    #[arg(long, global = true, env = "GKDEFECT_PRECISION", default_value_t = 50)]
    precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    #[value(alias = "structured")]
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified rank of the Leopoldt or Gross regulator.
    Defect {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = clap::value_parser!(DefectKind))]
        kind: DefectKind,
        /// Index into the linear characters of Gal(K/k).
        #[arg(long)]
        character: Option<usize>,
    },
    /// Gross defect over sampled Z_p-extensions of an imaginary quadratic base.
    Scan {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 0)]
        character: usize,
        /// random:COUNT or grid:COUNT.
        #[arg(long, default_value = "random:100")]
        sampler: Sampler,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Candidate slope where the rank of N_φ(S) could drop.
    ExceptionalSlope {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        character: usize,
    },
    /// d, d⁺, f and the defect bounds for every linear character.
    Invariants {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Which known case of the Gross-Kuz'min conjecture applies.
    ClassifyGk {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// θ(M) and the rank bound from a matrix document.
    Theta {
        #[arg(long)]
        input: PathBuf,
        /// Also check the 3 × 2 rank prediction numerically.
        #[arg(long)]
        six_exponentials: bool,
    },
    /// Lint fixtures and check admissibility at their primes.
    Validate {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Integer relations among the powers of a p-adic number.
    Probe {
        /// rational:A/B, root:C0,C1,..[@I], log-ratio:A/B,C/D or exceptional:CHARACTER.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value = "1000000")]
        height: BigInt,
    },
    /// Print the built-in fixture for Q(√d).
    Quadratic {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Primes to list; defaults to the first two split primes.
        #[arg(long)]
        prime: Vec<u64>,
    },
}

/// One rendered report.
struct Output {
    human: String,
    json: String,
    csv: Option<String>,
}

impl Output {
    fn new<T: Serialize>(human: String, envelope: &Envelope<T>) -> Result<Self, CliError> {
        Ok(Output {
            human,
            json: serde_json::to_string_pretty(envelope)?,
            csv: None,
        })
    }
}

/// A successful report, or a failure that still carries a report.
enum Run {
    Ok(Output),
    Failed(Output, CliError),
}

fn character(field: &NumberField, index: usize) -> Result<(gkdefect::algebra::FiniteGroup, LinearCharacter), CliError> {
    let (g, _) = field.relative_group();
    let chars = linear_characters(&g);
    let count = chars.len();
    let phi = chars
        .into_iter()
        .nth(index)
        .ok_or(RegulatorError::NoSuchCharacter { index, count })?;
    Ok((g, phi))
}

fn trivial_and(field: &AdmittedField, phi: &LinearCharacter, policy: &PrecisionPolicy) -> Result<(IsotypicMatrices, IsotypicMatrices), CliError> {
    let (g, _) = field.field.relative_group();
    let one = linear_characters(&g).into_iter().find(|c| c.is_trivial()).expect("trivial character");
    let iso_phi = isotypic_matrices(field, phi, policy)?;
    let iso_one = isotypic_matrices(field, &one, policy)?;
    Ok((iso_phi, iso_one))
}

fn defect(src: &Source, prime: Option<u64>, kind: DefectKind, chr: Option<usize>, policy: &PrecisionPolicy) -> Result<Output, CliError> {
    let p = src.prime(prime)?;
    let field = src.admit(p, policy.precision)?;
    let r = defect_report(&field, kind, policy, chr)?;
    let human = format!(
        "{} p={} N={} {:?}{}: rank {} of {}, defect <= {}, {}",
        r.field_id,
        r.p,
        r.precision,
        r.kind,
        r.character.as_ref().map(|c| format!(" [{c}]")).unwrap_or_default(),
        r.rank,
        r.structural_rank,
        r.defect_upper_bound,
        if r.certified { "certified" } else { "not certified" }
    );
    Output::new(human, &Envelope::new("defect", Some(src), Some(p), policy.precision, None, r))
}

fn scan(src: &Source, prime: Option<u64>, chr: usize, sampler: Sampler, seed: u64, policy: &PrecisionPolicy) -> Result<Output, CliError> {
    let p = src.prime(prime)?;
    let field = src.admit(p, policy.precision)?;
    let (_, phi) = character(&field.field, chr)?;
    let (iso_phi, iso_one) = trivial_and(&field, &phi, policy)?;
    let r = slope_scan(src.id(), &iso_phi, &iso_one, sampler, seed, policy)?;
    let mut human = format!(
        "{} p={} N={} character {} sampler {} seed {}: {} points, {}\n",
        r.field_id,
        r.p,
        r.precision,
        r.character,
        r.sampler,
        r.seed,
        r.points.len(),
        if r.all_zero() { "all certified with defect 0" } else { "some points not certified" }
    );
    for x in &r.points {
        human.push_str(&format!(
            "  {:<14} {} rank {} defect <= {}{}\n",
            x.label.as_deref().unwrap_or("-"),
            x.slope_digits,
            x.rank,
            x.defect_upper_bound,
            if x.saturated { "" } else { " (not certified)" }
        ));
    }
    let csv = r.to_csv();
    let mut out = Output::new(human.trim_end().to_string(), &Envelope::new("scan", Some(src), Some(p), policy.precision, Some(seed), r))?;
    out.csv = Some(csv);
    Ok(out)
}

fn valuations(v: &[Option<i64>]) -> String {
    v.iter()
        .map(|x| x.map_or_else(|| "inf".to_string(), |v| v.to_string()))
        .collect::<Vec<_>>()
        .join(", ")
}

fn exceptional(src: &Source, prime: Option<u64>, chr: usize, policy: &PrecisionPolicy) -> Result<Output, CliError> {
    let p = src.prime(prime)?;
    let field = src.admit(p, policy.precision)?;
    let (_, phi) = character(&field.field, chr)?;
    let (iso_phi, iso_one) = trivial_and(&field, &phi, policy)?;
    let e = exceptional_slope_candidate(&iso_phi, &iso_one, policy)?;
    let twist = twist_invariant(&field.field, &phi);
    let r = e.report(&iso_phi.label, twist, policy.precision);
    let human = if r.viable {
        format!(
            "{} p={} character {}: exceptional slope candidate {} (solved to {} digits, cross minor valuations {})",
            src.id(),
            p,
            r.character,
            r.slope_digits,
            r.precision,
            valuations(&r.cross_minor_valuations)
        )
    } else {
        format!(
            "{} p={} character {}: no exceptional slope at precision {} (cross minor valuations {})",
            src.id(),
            p,
            r.character,
            policy.precision,
            valuations(&r.cross_minor_valuations)
        )
    };
    Output::new(human, &Envelope::new("exceptional-slope", Some(src), Some(p), policy.precision, None, r))
}

#[derive(Serialize)]
struct BoundReport {
    value: String,
    strict: bool,
    integer_bound: String,
}

impl From<DefectBound> for BoundReport {
    fn from(b: DefectBound) -> Self {
        BoundReport {
            value: b.value.to_string(),
            strict: b.strict,
            integer_bound: b.integer_bound.to_string(),
        }
    }
}

#[derive(Serialize)]
struct CharacterInvariants {
    index: usize,
    character: String,
    #[serde(flatten)]
    triple: InvariantTriple,
    irreducible_over_q: bool,
    leopoldt_bound: BoundReport,
    gross_bound: BoundReport,
}

fn invariants(src: &Source, n: u32) -> Result<Output, CliError> {
    let f = &src.field;
    let (g, _) = f.relative_group();
    let places = PlaceData::from_field(f);
    let mut rows = Vec::new();
    let mut human = format!("{}: Gal(K/k) of order {}", src.id(), g.order());
    for (index, phi) in linear_characters(&g).iter().enumerate() {
        let t = compute_invariants(&ArtinRep::linear(&g, phi), &places)?;
        let irr = irreducible_over_q(f, phi);
        let flags = GrossFlags {
            irreducible_over_q: irr,
            has_real_place: f.has_real_place(),
            totally_real: f.is_totally_real(),
        };
        let lb = leopoldt_bound(&t, irr);
        let gb = gross_bound(&t, flags);
        let label = character_label(&g, phi);
        human.push_str(&format!(
            "\n  {index} [{label}]: d={} d+={} f={}  leopoldt <= {} ({}), gross <= {} ({}{})",
            t.d,
            t.d_plus,
            t.f,
            lb.integer_bound,
            lb.value,
            gb.integer_bound,
            if gb.strict { "strictly below " } else { "" },
            gb.value
        ));
        rows.push(CharacterInvariants {
            index,
            character: label,
            triple: t,
            irreducible_over_q: irr,
            leopoldt_bound: lb.into(),
            gross_bound: gb.into(),
        });
    }
    Output::new(human, &Envelope::new("invariants", Some(src), None, n, None, rows))
}

#[derive(Serialize)]
struct Classification {
    case: String,
    descriptor: GkDescriptor,
}

fn classify(src: &Source, n: u32) -> Result<Output, CliError> {
    let descriptor = GkDescriptor::from_field(&src.field);
    let case = classify_gk(&descriptor)?;
    let human = format!("{}: case ({case})", src.id());
    let r = Classification {
        case: case.to_string(),
        descriptor,
    };
    Output::new(human, &Envelope::new("classify-gk", Some(src), None, n, None, r))
}

#[derive(Serialize)]
struct PrimeCheck {
    p: u64,
    ok: bool,
    error: Option<String>,
}

#[derive(Serialize)]
struct Validation {
    degree: usize,
    galois: bool,
    primes: Vec<PrimeCheck>,
}

fn validate(src: &Source, prime: Option<u64>, n: u32) -> Run {
    let primes: Vec<u64> = match prime {
        Some(p) => vec![p],
        None => src.field.primes.iter().map(|d| d.p).collect(),
    };
    let checks: Vec<PrimeCheck> = primes
        .iter()
        .map(|&p| match src.admit(p, n) {
            Ok(_) => PrimeCheck { p, ok: true, error: None },
            Err(e) => PrimeCheck {
                p,
                ok: false,
                error: Some(e.message().to_string()),
            },
        })
        .collect();
    let mut human = format!("{}: degree {}, {} prime(s)", src.id(), src.field.degree(), checks.len());
    for c in &checks {
        match &c.error {
            None => human.push_str(&format!("\n  p={}: ok", c.p)),
            Some(e) => human.push_str(&format!("\n  p={}: {e}", c.p)),
        }
    }
    let failure = if checks.is_empty() {
        Some(CliError::Domain("no primes to check".into()))
    } else {
        checks
            .iter()
            .find(|c| !c.ok)
            .map(|c| CliError::Domain(format!("p = {}: {}", c.p, c.error.as_deref().unwrap_or(""))))
    };
    let r = Validation {
        degree: src.field.degree(),
        galois: src.field.is_galois(),
        primes: checks,
    };
    match Output::new(human, &Envelope::new("validate", Some(src), prime, n, None, r)) {
        Ok(out) => match failure {
            None => Run::Ok(out),
            Some(e) => Run::Failed(out, e),
        },
        Err(e) => Run::Failed(
            Output {
                human: String::new(),
                json: String::new(),
                csv: None,
            },
            e,
        ),
    }
}

#[derive(Serialize)]
struct ThetaReport {
    shape: [usize; 2],
    fully_independent: bool,
    row_rank: usize,
    column_rank: usize,
    theta: String,
    theta_exact: bool,
    /// Only when θ is exact; a witness bound on θ gives no rank bound.
    rank_lower_bound: Option<usize>,
    numeric_rank: Option<usize>,
    consistent: Option<bool>,
    six_exponentials: Option<SixExponentials>,
}

fn theta(input: &PathBuf, six: bool, policy: &PrecisionPolicy) -> Run {
    match theta_report(input, six, policy) {
        Ok((out, false)) => Run::Ok(out),
        Ok((out, true)) => Run::Failed(out, CliError::Internal("numeric rank below the proven lower bound".into())),
        Err(e) => plain(Err(e)),
    }
}

fn theta_report(input: &PathBuf, six: bool, policy: &PrecisionPolicy) -> Result<(Output, bool), CliError> {
    let bytes = std::fs::read(input).map_err(|e| CliError::Domain(format!("{}: {e}", input.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Domain(format!("{}: not UTF-8", input.display())))?;
    let doc = ThetaDocument::from_toml(&text)?;
    let cert = doc.certificate()?;
    let t = theta_value(&cert, &doc.block_witnesses()?)?;
    let (m, l) = cert.shape();
    let bound = t.exact.then(|| waldschmidt_roy_rank_bound(m, &t.value));
    let values = doc.symbol_values(policy.precision)?;
    let mut p = None;
    let mut numeric_rank = None;
    let mut six_report = None;
    if let Some((prime, vals)) = &values {
        p = Some(*prime);
        let mat = cert.evaluate(vals)?;
        numeric_rank = Some(mat.certified_rank(policy).rank);
        if six {
            six_report = Some(six_exponentials_check(&mat, &cert, policy)?);
        }
    } else if six {
        return Err(CliError::Domain("--six-exponentials needs a [values] table".into()));
    }
    let consistent = match (bound, numeric_rank) {
        (Some(b), Some(r)) => Some(r >= b),
        _ => None,
    };
    let mut human = format!(
        "{}x{} matrix, theta {} {}",
        m,
        l,
        if t.exact { "=" } else { "<=" },
        t.value
    );
    if let Some(b) = bound {
        human.push_str(&format!(", rank >= {b}"));
    }
    if let Some(r) = numeric_rank {
        human.push_str(&format!(", numeric rank {r}"));
    }
    if consistent == Some(false) {
        human.push_str(" (BELOW THE BOUND)");
    }
    if let Some(s) = &six_report {
        human.push_str(&format!(
            "\nsix exponentials: predicted {}, numeric {}{}",
            s.predicted_rank,
            s.numeric_rank,
            if s.alarm { " ALARM" } else { "" }
        ));
    }
    let alarm = consistent == Some(false) || six_report.as_ref().is_some_and(|s| s.alarm);
    let r = ThetaReport {
        shape: [m, l],
        fully_independent: cert.fully_independent(),
        row_rank: cert.row_rank(),
        column_rank: cert.column_rank(),
        theta: t.value.to_string(),
        theta_exact: t.exact,
        rank_lower_bound: bound,
        numeric_rank,
        consistent,
        six_exponentials: six_report,
    };
    let id = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let out = Output::new(human, &Envelope::with_input("theta", Some((id, digest(&bytes))), p, policy.precision, None, r))?;
    Ok((out, alarm))
}

#[derive(Serialize)]
struct ProbeReport {
    lambda: String,
    degree: usize,
    height: String,
    relation: Option<Vec<String>>,
}

fn parse_ints(s: &str) -> Result<Vec<BigInt>, CliError> {
    s.split(',')
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| CliError::Domain(format!("bad integer {c:?}"))))
        .collect()
}

fn probe(spec: &str, args: &FieldArgs, degree: usize, height: &BigInt, policy: &PrecisionPolicy) -> Result<Output, CliError> {
    let n = policy.precision;
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Domain(format!("lambda {spec:?} is not kind:value")))?;
    let mut src = None;
    let outcome = if kind == "exceptional" {
        let chr: usize = rest.parse().map_err(|_| CliError::Domain(format!("bad character index {rest:?}")))?;
        let s = args.single()?;
        let p = s.prime(args.prime)?;
        let nf = &s.field;
        let (_, phi) = character(nf, chr)?;
        let lambda = |prec: u32| -> Result<Padic, ScanError> {
            let pol = PrecisionPolicy::new(prec);
            let field = gkdefect::fixtures::admit(nf, p, prec).map_err(RegulatorError::from)?;
            let (g, _) = nf.relative_group();
            let one = linear_characters(&g).into_iter().find(|c| c.is_trivial()).expect("trivial character");
            let iso_phi = isotypic_matrices(&field, &phi, &pol)?;
            let iso_one = isotypic_matrices(&field, &one, &pol)?;
            match exceptional_slope_candidate(&iso_phi, &iso_one, &pol)?.candidate {
                Slope::Finite(x) => Ok(x),
                Slope::Infinity => Err(ScanError::Precondition("the candidate slope is infinite".into())),
            }
        };
        let r = algebraicity_probe(lambda, n, degree, height)?;
        src = Some((s, p));
        r
    } else {
        let p = args.prime.ok_or_else(|| CliError::Domain("--prime is required".into()))?;
        match kind {
            "rational" => {
                let q = parse_rational(rest)?;
                algebraicity_probe(|prec| Ok(Padic::from_bigrational(&q, p, prec)?), n, degree, height)?
            }
            "root" => {
                let (coeffs, index) = match rest.split_once('@') {
                    Some((c, i)) => (c, i.parse::<usize>().map_err(|_| CliError::Domain(format!("bad root index {i:?}")))?),
                    None => (rest, 0),
                };
                let g = parse_ints(coeffs)?;
                let root = |prec: u32| -> Result<Padic, ScanError> {
                    let roots = hensel_roots(&g, p, prec)?;
                    let count = roots.len();
                    roots.into_iter().nth(index).ok_or_else(|| {
                        ScanError::Precondition(format!("root index {index} but only {count} simple roots mod {p}"))
                    })
                };
                algebraicity_probe(root, n, degree, height)?
            }
            "log-ratio" => {
                let (a, b) = rest
                    .split_once(',')
                    .ok_or_else(|| CliError::Domain("log-ratio needs A/B,C/D".into()))?;
                let (a, b) = (parse_rational(a)?, parse_rational(b)?);
                let ratio = |prec: u32| -> Result<Padic, ScanError> {
                    let x = log_rational(a.numer(), a.denom(), p, prec + 2)?;
                    let y = log_rational(b.numer(), b.denom(), p, prec + 2)?;
                    Ok(x.checked_div(&y)?)
                };
                algebraicity_probe(ratio, n, degree, height)?
            }
            _ => return Err(CliError::Domain(format!("unknown lambda kind {kind:?}"))),
        }
    };
    let p = src.as_ref().map(|(_, p)| *p).or(args.prime);
    let relation = match &outcome {
        ProbeOutcome::Relation(c) => Some(c.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        ProbeOutcome::NoRelation { .. } => None,
    };
    let human = match &relation {
        Some(c) => format!("{spec}: relation (constant first) [{}]", c.join(", ")),
        None => format!("{spec}: no relation of degree <= {degree} and height <= {height} at N = {n}"),
    };
    let r = ProbeReport {
        lambda: spec.into(),
        degree,
        height: height.to_string(),
        relation,
    };
    Output::new(human, &Envelope::new("probe", src.as_ref().map(|(s, _)| s), p, n, None, r))
}

fn quadratic(d: i64, primes: &[u64]) -> Result<Output, CliError> {
    let primes = if primes.is_empty() { split_primes(d, 2) } else { primes.to_vec() };
    let doc = quadratic_document(d, &primes)?;
    let text = doc.to_toml();
    Ok(Output {
        human: text.clone(),
        json: text.clone(),
        csv: Some(text),
    })
}

fn print(out: &Output, format: Format) {
    let mut stdout = std::io::stdout().lock();
    let text = match format {
        Format::Human => &out.human,
        Format::Json => &out.json,
        Format::Csv => out.csv.as_ref().unwrap_or(&out.json),
    };
    let _ = writeln!(stdout, "{}", text.trim_end());
}

fn batch<F>(sources: &[Source], f: F) -> Vec<(String, Run)>
where
    F: Fn(&Source) -> Run + Sync,
{
    sources.par_iter().map(|s| (s.id().to_string(), f(s))).collect()
}

fn plain(r: Result<Output, CliError>) -> Run {
    match r {
        Ok(o) => Run::Ok(o),
        Err(e) => Run::Failed(
            Output {
                human: String::new(),
                json: String::new(),
                csv: None,
            },
            e,
        ),
    }
}

fn run(cli: &Cli) -> Result<Vec<(String, Run)>, CliError> {
    if cli.precision < 10 {
        return Err(CliError::Domain(format!("precision {} is below the minimum 10", cli.precision)));
    }
    let policy = PrecisionPolicy::new(cli.precision);
    let n = cli.precision;
    if cli.format == Format::Csv && !matches!(cli.command, Command::Scan { .. } | Command::Quadratic { .. }) {
        return Err(CliError::Domain("--format csv is only available for scan".into()));
    }
    Ok(match &cli.command {
        Command::Defect { field, kind, character } => {
            batch(&field.sources()?, |s| plain(defect(s, field.prime, *kind, *character, &policy)))
        }
        Command::Scan {
            field,
            character,
            sampler,
            seed,
        } => batch(&field.sources()?, |s| plain(scan(s, field.prime, *character, *sampler, *seed, &policy))),
        Command::ExceptionalSlope { field, character } => {
            batch(&field.sources()?, |s| plain(exceptional(s, field.prime, *character, &policy)))
        }
        Command::Invariants { field } => batch(&field.sources()?, |s| plain(invariants(s, n))),
        Command::ClassifyGk { field } => batch(&field.sources()?, |s| plain(classify(s, n))),
        Command::Validate { field } => batch(&field.sources()?, |s| validate(s, field.prime, n)),
        Command::Theta { input, six_exponentials } => {
            vec![(input.display().to_string(), theta(input, *six_exponentials, &policy))]
        }
        Command::Probe {
            lambda,
            field,
            degree,
            height,
        } => vec![(lambda.clone(), plain(probe(lambda, field, *degree, height, &policy)))],
        Command::Quadratic { d, prime } => vec![(format!("Q(sqrt({d}))"), plain(quadratic(*d, prime)))],
    })
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let results = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gkdefect: {}", e.message());
            std::process::exit(e.code());
        }
    };
    let mut code = 0;
    for (id, r) in &results {
        match r {
            Run::Ok(out) => print(out, cli.format),
            Run::Failed(out, e) => {
                if !out.json.is_empty() {
                    print(out, cli.format);
                }
                eprintln!("gkdefect: {id}: {}", e.message());
                code = code.max(e.code());
            }
        }
    }
    std::process::exit(code);
}
