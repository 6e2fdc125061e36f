use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use totsadic_core::algebra::parse::split_list;
use totsadic_core::padic::DEFAULT_PRECISION;
use totsadic_core::places::find_uniformizer;
use totsadic_core::theorem::{
    is_totally_s_adic, lemma1_batch,
    lemma2::Lemma2Evidence,
    lemma2_certify,
    splitting::SplitEvidence,
    theorem_witness,
    witness::{default_height, select_samples, DEFAULT_SAMPLE_COUNT, DEFAULT_SEED},
    Lemma1Batch, Lemma2Certificate, Lemma2Verdict, Membership, MembershipReport, PlaceSplitting,
    SampleSpec, WitnessConfig, WitnessReport, WitnessVerdict,
};
use totsadic_core::{Error, F2u, FieldTag, GlobalField, Place, PlaceSet, Poly, Rational};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "totsadic",
    version,
    about = "Certificates for splitting of the quadratic family X^2 + X - gamma(y,t)^2 at finite sets of places"
)]
struct Cli {
    /// Base field.
    #[arg(long, global = true, default_value = "Q")]
    field: FieldTag,

    /// Comma-separated places: primes, `R`, or irreducible polynomials such as `(u)`.
    #[arg(long, visible_alias = "place", global = true)]
    places: Option<String>,

    /// Digits of local precision for lifts and square roots.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: usize,

    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for sample selection.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct SampleArgs {
    /// Explicit comma-separated y values.
    #[arg(long)]
    y: Option<String>,

    /// Height bound for enumerated samples.
    #[arg(long)]
    height: Option<u64>,

    /// Number of enumerated samples.
    #[arg(long, default_value_t = DEFAULT_SAMPLE_COUNT)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Valuation of gamma(y, t) at places where t is a uniformizer.
    Lemma1 {
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[command(flatten)]
        samples: SampleArgs,
    },
    /// Irreducibility of f(X, gamma(Y, t)) over K(Y).
    Lemma2 {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Accept t = 0 and t = -1.
        #[arg(long)]
        allow_boundary: bool,
    },
    /// Does the polynomial split at every place of S?
    Member {
        #[arg(long, allow_hyphen_values = true)]
        minpoly: String,
    },
    /// Run the full pipeline and emit a report.
    Witness {
        #[command(flatten)]
        samples: SampleArgs,
    },
}

struct Outcome {
    code: u8,
    json: String,
    text: String,
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn parse_element<F: GlobalField>(src: &str, what: &str) -> anyhow::Result<F> {
    src.parse()
        .with_context(|| format!("invalid {what} `{src}`"))
}

fn parse_list<F: GlobalField>(src: &str, what: &str) -> anyhow::Result<Vec<F>> {
    let items = split_list(src);
    if items.is_empty() {
        bail!(Error::InvalidInput(format!("--{what} is empty")));
    }
    items.into_iter().map(|s| parse_element(s, what)).collect()
}

fn place_set<F: GlobalField>(cli: &Cli, default: &str) -> anyhow::Result<PlaceSet> {
    let src = cli.places.as_deref().unwrap_or(default);
    PlaceSet::parse(F::TAG, src).with_context(|| format!("invalid --places `{src}`"))
}

fn default_places(tag: FieldTag) -> &'static str {
    match tag {
        FieldTag::Q => "2,3,R",
        FieldTag::F2u => "(u)",
    }
}

fn sample_spec<F: GlobalField>(cli: &Cli, args: &SampleArgs) -> anyhow::Result<SampleSpec<F>> {
    if let Some(y) = &args.y {
        return Ok(SampleSpec::Explicit {
            values: parse_list(y, "y")?,
        });
    }
    Ok(SampleSpec::Enumerated {
        height: args.height.unwrap_or_else(|| default_height(F::TAG)),
        count: args.samples,
        seed: cli.seed,
    })
}

fn run<F: GlobalField>(cli: &Cli) -> anyhow::Result<Outcome> {
    if cli.precision == 0 {
        bail!(Error::InvalidInput("--precision must be at least 1".into()));
    }
    match &cli.command {
        Command::Lemma1 { t, samples } => {
            let places = place_set::<F>(cli, default_places(F::TAG))?;
            let ultrametric: Vec<Place> = places.ultrametric().cloned().collect();
            if ultrametric.len() != places.places().len() || ultrametric.is_empty() {
                bail!(Error::InvalidInput(
                    "lemma1 needs ultrametric places only".into()
                ));
            }
            let t: F = match t {
                Some(t) => parse_element(t, "t")?,
                None => find_uniformizer(&places)?,
            };
            let ys: Vec<F> = select_samples(&sample_spec(cli, samples)?, &places)?
                .into_iter()
                .map(|(_, y)| y)
                .collect();
            let batch = lemma1_batch(&ys, &t, &ultrametric)?;
            Ok(Outcome {
                code: if batch.all_hold {
                    EXIT_OK
                } else {
                    EXIT_NEGATIVE
                },
                json: to_json(&batch)?,
                text: lemma1_text(&batch),
            })
        }
        Command::Lemma2 { t, allow_boundary } => {
            let t: F = parse_element(t, "t")?;
            let cert = lemma2_certify(&t, *allow_boundary)?;
            Ok(Outcome {
                code: if cert.verdict == Lemma2Verdict::Irreducible {
                    EXIT_OK
                } else {
                    EXIT_NEGATIVE
                },
                json: to_json(&cert)?,
                text: format!("t = {}\n{}", cert.t, lemma2_text(&cert)),
            })
        }
        Command::Member { minpoly } => {
            let places = place_set::<F>(cli, default_places(F::TAG))?;
            let m: Poly<F> = Poly::parse_in(minpoly, "X")
                .with_context(|| format!("invalid --minpoly `{minpoly}`"))?;
            let report = is_totally_s_adic(&m, &places, cli.precision)?;
            Ok(Outcome {
                code: match report.verdict {
                    Membership::True => EXIT_OK,
                    Membership::False => EXIT_NEGATIVE,
                    Membership::Undecided => EXIT_UNDECIDED,
                },
                json: to_json(&report)?,
                text: member_text(&report),
            })
        }
        Command::Witness { samples } => {
            let places = place_set::<F>(cli, default_places(F::TAG))?;
            let config: WitnessConfig<F> = WitnessConfig {
                base: F::TAG,
                places,
                precision: cli.precision,
                samples: sample_spec(cli, samples)?,
            };
            let report = theorem_witness(&config)?;
            Ok(Outcome {
                code: if report.verdict == WitnessVerdict::Established {
                    EXIT_OK
                } else {
                    EXIT_NEGATIVE
                },
                json: to_json(&report)?,
                text: witness_text(&report),
            })
        }
    }
}

fn lemma1_text<F: GlobalField>(b: &Lemma1Batch<F>) -> String {
    let mut s = format!("t = {}\n", b.t);
    for c in &b.certificates {
        let _ = writeln!(
            s,
            "y = {}: at {} case {} v(gamma) = {} {}",
            c.y,
            c.place,
            serde_json::to_value(c.case)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default(),
            c.v_of_gamma,
            if c.holds { "holds" } else { "FAILS" }
        );
    }
    let _ = writeln!(
        s,
        "{}",
        if b.all_hold {
            "all hold"
        } else {
            "some certificates fail"
        }
    );
    s
}

fn lemma2_text<F: GlobalField>(c: &Lemma2Certificate<F>) -> String {
    let detail = match &c.evidence {
        Lemma2Evidence::NotASquare {
            discriminant_numerator,
            ..
        } => format!(
            "{} is not a square in K[Y]",
            discriminant_numerator.display_in("Y")
        ),
        Lemma2Evidence::BoundarySquare {
            discriminant_numerator,
            root,
            roots,
        } => format!(
            "{} = ({})^2; roots {}",
            discriminant_numerator.display_in("Y"),
            root.display_in("Y"),
            roots
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ),
        Lemma2Evidence::OddValuation {
            place_polynomial,
            valuation,
            ..
        } => format!(
            "{} is irreducible and v(gamma) = {valuation} there",
            place_polynomial.display_in("Y")
        ),
        Lemma2Evidence::Degenerate { .. } => "f = X(X+1)".into(),
    };
    let verdict = serde_json::to_value(c.verdict)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default();
    format!("f(X, gamma(Y, t)) over K(Y): {verdict}\n{detail}\n")
}

fn splitting_line<F: GlobalField>(p: &PlaceSplitting<F>) -> String {
    let verdict = serde_json::to_value(p.verdict)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default();
    let detail = match &p.evidence {
        SplitEvidence::RealRoots {
            real_root_count, ..
        } => format!("{real_root_count} real roots"),
        SplitEvidence::LocalSquare {
            discriminant, test, ..
        } => format!(
            "discriminant {discriminant} {} a local square",
            if test.is_square { "is" } else { "is not" }
        ),
        SplitEvidence::ArtinSchreier {
            residue_roots,
            lifts,
            ..
        } => format!(
            "{} residue roots, {} lifted",
            residue_roots.len(),
            lifts.len()
        ),
        SplitEvidence::SimpleRoots { lifts, .. } => format!("{} simple roots lifted", lifts.len()),
        SplitEvidence::Linear { .. } => "linear".into(),
        SplitEvidence::DoubleRoot { root } => format!("double root {root}"),
        SplitEvidence::Unsupported { reason } => reason.clone(),
    };
    format!("{}: {verdict} ({detail})", p.place)
}

fn member_text<F: GlobalField>(r: &MembershipReport<F>) -> String {
    let mut s = format!(
        "minimal polynomial {} over {}\n",
        r.minimal_polynomial, r.places
    );
    for c in &r.checks {
        let _ = writeln!(s, "  {}", splitting_line(c));
    }
    let _ = writeln!(
        s,
        "{}",
        match r.verdict {
            Membership::True => "totally S-adic",
            Membership::False => "not totally S-adic",
            Membership::Undecided => "undecided",
        }
    );
    s
}

fn witness_text<F: GlobalField>(r: &WitnessReport<F>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "K = {}, S = {{{}}}", r.config.base, r.config.places);
    let _ = writeln!(s, "t = {}", r.t);
    let _ = write!(s, "{}", lemma2_text(&r.lemma2));
    let new_elements = r.samples.iter().filter(|x| x.exhibits_new_element).count();
    let _ = writeln!(
        s,
        "samples: {} ({} irreducible over K and split on S)",
        r.samples.len(),
        new_elements
    );
    for x in &r.samples {
        let gamma = x
            .gamma
            .value
            .as_ref()
            .map_or_else(|| "undefined".to_string(), ToString::to_string);
        let _ = writeln!(s, "y = {}: gamma = {gamma}", x.y);
        for c in &x.lemma1 {
            let _ = writeln!(s, "  v_{}(gamma) = {}", c.place, c.v_of_gamma);
        }
        if let Some(f) = &x.specialization {
            let _ = writeln!(s, "  {f}");
        }
        for p in &x.splitting {
            let _ = writeln!(s, "  {}", splitting_line(p));
        }
        if let Some(irr) = &x.irreducible_over_k {
            let v = serde_json::to_value(irr.verdict)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default();
            let _ = writeln!(s, "  over K: {v}");
        }
    }
    for f in &r.failures {
        let _ = writeln!(s, "failure: {f}");
    }
    let _ = writeln!(
        s,
        "verdict: {}",
        match r.verdict {
            WitnessVerdict::Established => "established",
            WitnessVerdict::Failed => "failed",
        }
    );
    s
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Certificate(_)) => EXIT_NEGATIVE,
        Some(Error::Unsupported(_)) => EXIT_UNDECIDED,
        _ => EXIT_INVALID,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.field {
        FieldTag::Q => run::<Rational>(&cli),
        FieldTag::F2u => run::<F2u>(&cli),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &outcome.json) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(EXIT_INVALID);
        }
    }
    match cli.format {
        Format::Json => print!("{}", outcome.json),
        Format::Text => print!("{}", outcome.text),
    }
    ExitCode::from(outcome.code)
}
