//! `freeprob`: exact non-crossing combinatorics and free probability from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation error, 3 resource limit.

mod emit;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use freeprob::incidence::{self, Sequence};
use freeprob::json::{FreenessReportJson, KSymmetricJson, PuiseuxJson, ScalarArray, StableMonomialJson};
use freeprob::ksym::{self, KSymmetricDistribution};
use freeprob::matmodel::{self, WordSpec};
use freeprob::ncpart::{self, BlockRule, NcPartition};
use freeprob::series::{self, PowerSeries};
use freeprob::transforms::{self, FreeVariable};
use freeprob::{Error, Rational, RationalSequence, Scalar};
use num_bigint::BigUint;
use serde_json::{json, Value};

use emit::{Emission, Format};

const ENV_MAX_N: &str = "FREEPROB_MAX_N";

#[derive(Parser)]
#[command(name = "freeprob", version, about = "Exact free probability of k-divisible and k-symmetric laws")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, visible_alias = "output")]
    format: Format,
    /// Adds a decimal rendering with this many digits.
    #[arg(long, global = true)]
    decimal: Option<usize>,
    /// Writes the result to a file instead of stdout.
    #[arg(long = "out", global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Non-crossing partitions.
    Nc {
        #[command(subcommand)]
        op: NcOp,
    },
    /// Convolution in the incidence algebra of NC.
    Conv {
        #[command(subcommand)]
        op: ConvOp,
    },
    /// Formal power series.
    Series {
        #[command(subcommand)]
        op: SeriesOp,
    },
    /// Moment-cumulant transforms and free convolutions.
    Transform {
        #[command(subcommand)]
        op: TransformOp,
    },
    /// k-symmetric laws and limit theorems.
    Ksym {
        #[command(subcommand)]
        op: KsymOp,
    },
    /// Random k-cycle permutation model.
    Matmodel {
        #[command(subcommand)]
        op: MatmodelOp,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    All,
    Kdivisible,
    Kequal,
}

/// Sequences are given inline as `1,2,5/3` or as `@file.json` holding an array of `"p/q"`.
type SeqSpec = String;

#[derive(Subcommand)]
enum NcOp {
    /// Counts NC(n), NC^k(n) or NC_k(n) by enumeration.
    Count {
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Uses the closed form instead of enumerating.
        #[arg(long)]
        closed_form: bool,
    },
    /// Lists the partitions.
    Enumerate {
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Kreweras complement of a partition such as `{1,4}{2,3}`.
    Kreweras {
        #[arg(long, allow_hyphen_values = true)]
        partition: String,
    },
}

#[derive(Subcommand)]
enum ConvOp {
    /// `g * zeta^{*k}`; `g` defaults to delta.
    ZetaPower {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        order: usize,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<SeqSpec>,
        /// Uses the single convolution on the dilated family.
        #[arg(long)]
        dilated: bool,
    },
    /// The Möbius family of NC.
    Moebius {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand)]
enum SeriesOp {
    /// Compositional inverse of `c_0 + c_1 z + ...` with `c_0 = 0`, `c_1 != 0`.
    Invert {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: SeqSpec,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Solves `A(z) = B(z A(z)^k)` from the coefficients of `B`.
    SolveFe {
        #[arg(long, allow_hyphen_values = true)]
        b: SeqSpec,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand)]
enum TransformOp {
    /// Moments to free cumulants.
    M2c {
        #[arg(long = "in", allow_hyphen_values = true)]
        input: SeqSpec,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Free cumulants to moments.
    C2m {
        #[arg(long = "in", allow_hyphen_values = true)]
        input: SeqSpec,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Moments of `ab` for free `a`, `b` from their moments.
    Boxtimes {
        #[arg(long, allow_hyphen_values = true)]
        a: SeqSpec,
        #[arg(long, allow_hyphen_values = true)]
        b: SeqSpec,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Moments of `mu^{boxplus t}`.
    BoxplusPower {
        #[arg(long = "in", allow_hyphen_values = true)]
        input: SeqSpec,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// S-transform as a Puiseux series.
    STransform {
        #[arg(long = "in", allow_hyphen_values = true)]
        input: SeqSpec,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Mixed moment of free variables, e.g. `--word x:1,y:2 --var x=0,1 --haar y=3`.
    WordMoment {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// `label=m_1,m_2,...`
        #[arg(long = "var")]
        vars: Vec<String>,
        /// `label=k`: a Haar unitary of order k.
        #[arg(long = "haar")]
        haar: Vec<String>,
    },
}

#[derive(Subcommand)]
enum KsymOp {
    /// The k-semicircular law.
    Semicircle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        order: usize,
    },
    /// Free Bessel law `pi^{boxtimes k}`.
    Bessel {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        order: usize,
        /// Prints free cumulants instead of moments.
        #[arg(long)]
        cumulants: bool,
        #[arg(long, value_enum, default_value_t = BesselRoute::Iterated)]
        route: BesselRoute,
    },
    /// Free compound Poisson law with k-symmetric jumps (default: order-k Haar).
    CompoundPoisson {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Moments of the k-th power of the jump law.
        #[arg(long, allow_hyphen_values = true)]
        jump: Option<SeqSpec>,
        #[arg(long)]
        order: usize,
    },
    /// Cumulants of the central-limit normalization of `mu^{boxplus N}` (default: order-k Haar).
    Clt {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        order: usize,
        #[arg(long, allow_hyphen_values = true)]
        base: Option<SeqSpec>,
    },
    /// Exact cumulant gaps in the Poisson limit theorem.
    PoissonLimit {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        order: usize,
        #[arg(long, allow_hyphen_values = true)]
        jump: Option<SeqSpec>,
    },
    /// Reproducing property of k-symmetric stable laws on S-transform monomials.
    StableCheck {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        s: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BesselRoute {
    Closed,
    Iterated,
    Enumeration,
}

#[derive(Subcommand)]
enum MatmodelOp {
    /// Compares word traces of random k-cycle permutations with free predictions.
    Run {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Repeatable, e.g. `1:1,2:1,1:-1,2:-1`.
        #[arg(long = "word", required = true)]
        words: Vec<String>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn rational(s: &str) -> CliResult<Rational> {
    Rational::parse_repr(s.trim()).ok_or_else(|| Error::Parse(format!("not a rational: `{s}`")).into())
}

fn read_json_array(path: &str) -> CliResult<Vec<Rational>> {
    let body = fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))?;
    let v: Value = serde_json::from_str(&body).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let items = v.as_array().ok_or_else(|| Error::Parse(format!("{path}: expected a JSON array")))?;
    items
        .iter()
        .map(|x| match x {
            Value::String(s) => rational(s),
            Value::Number(n) => rational(&n.to_string()),
            _ => Err(Error::Parse(format!("{path}: entries must be \"p/q\" strings")).into()),
        })
        .collect()
}

fn values(spec: &str) -> CliResult<Vec<Rational>> {
    match spec.strip_prefix('@') {
        Some(path) => read_json_array(path),
        None if spec.trim().ends_with(".json") => read_json_array(spec.trim()),
        None => spec.split(',').filter(|s| !s.trim().is_empty()).map(rational).collect(),
    }
}

fn sequence(spec: &str) -> CliResult<RationalSequence> {
    Ok(Sequence::new(values(spec)?)?)
}

fn resolve_order(s: &RationalSequence, order: Option<usize>) -> usize {
    order.unwrap_or(s.order())
}

fn jump_law(k: usize, jump: Option<&str>, order: usize) -> CliResult<KSymmetricDistribution<Rational>> {
    Ok(match jump {
        Some(spec) => KSymmetricDistribution::new(k, sequence(spec)?)?,
        None => KSymmetricDistribution::k_haar(k, order)?,
    })
}

fn rule(kind: Kind, k: usize, n: usize) -> (usize, BlockRule) {
    match kind {
        Kind::All => (n, BlockRule::Any),
        Kind::Kdivisible => (k * n, BlockRule::Divisible(k)),
        Kind::Kequal => (k * n, BlockRule::Equal(k)),
    }
}

fn count_emission(c: BigUint) -> Emission {
    let j = c.to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::from(c.to_string()));
    Emission::new(c.to_string(), json!({ "count": j }), vec![vec!["count".into()], vec![c.to_string()]])
}

fn ksym_emission(d: &KSymmetricDistribution<Rational>, decimal: Option<usize>) -> Emission {
    let seq = Emission::sequence("n", "base", 1, d.base.values(), decimal);
    Emission::new(seq.text, serde_json::to_value(KSymmetricJson::new(d)).expect("serializes"), seq.csv)
}

fn run_nc(op: NcOp) -> CliResult<Emission> {
    Ok(match op {
        NcOp::Count { kind, k, n, closed_form } => {
            let (size, rule) = rule(kind, k, n);
            if closed_form {
                count_emission(match kind {
                    Kind::All => ncpart::catalan(n),
                    Kind::Kdivisible => ncpart::fuss_catalan(k, n),
                    Kind::Kequal => ncpart::count_kequal(k, n),
                })
            } else {
                count_emission(BigUint::from(ncpart::enumerated_count(size, rule)?))
            }
        }
        NcOp::Enumerate { kind, k, n } => {
            let (size, rule) = rule(kind, k, n);
            let mut rows = Vec::new();
            ncpart::for_each_nc(size, rule, |labels| {
                let l: Vec<usize> = labels.iter().map(|&x| x as usize).collect();
                rows.push(ncpart::Partition::from_labels(&l).to_string());
            })?;
            let mut csv = vec![vec!["index".to_string(), "partition".to_string()]];
            csv.extend(rows.iter().enumerate().map(|(i, p)| vec![(i + 1).to_string(), p.clone()]));
            Emission::new(rows.join("\n"), json!(rows), csv)
        }
        NcOp::Kreweras { partition } => {
            let p: NcPartition = partition.parse()?;
            let kr = p.kreweras().to_string();
            Emission::new(
                kr.clone(),
                json!({ "partition": p.to_string(), "kreweras": kr }),
                vec![vec!["partition".into(), "kreweras".into()], vec![p.to_string(), kr]],
            )
        }
    })
}

fn run_conv(op: ConvOp, decimal: Option<usize>) -> CliResult<Emission> {
    let v = match op {
        ConvOp::ZetaPower { k, order, g, dilated } => {
            let g = match g {
                Some(spec) => sequence(&spec)?,
                None => Sequence::delta(order),
            };
            if dilated {
                incidence::zeta_power_conv_dilated(&g, k, order)?
            } else {
                incidence::zeta_power_conv(&g, k, order)?
            }
        }
        ConvOp::Moebius { order } => incidence::moebius_family(order)?,
    };
    Ok(Emission::sequence("n", "value", 1, v.values(), decimal))
}

fn run_series(op: SeriesOp, decimal: Option<usize>) -> CliResult<Emission> {
    let p = match op {
        SeriesOp::Invert { coeffs, order } => {
            let c = values(&coeffs)?;
            let f = PowerSeries::new(c)?;
            let f = match order {
                Some(o) => f.truncate(o),
                None => f,
            };
            f.comp_inverse()?
        }
        SeriesOp::SolveFe { b, k, order } => {
            let mut c = values(&b)?;
            if c.len() <= order {
                c.resize(order + 1, Rational::from_integer(0.into()));
            }
            series::solve_a_given_b(&PowerSeries::new(c)?, k, order)?
        }
    };
    let e = Emission::sequence("i", "coeff", 0, p.coeffs(), decimal);
    let json = if decimal.is_some() { e.json } else { serde_json::to_value(ScalarArray::from_series(&p)).expect("serializes") };
    Ok(Emission::new(e.text, json, e.csv))
}

fn run_transform(op: TransformOp, decimal: Option<usize>) -> CliResult<Emission> {
    let seq = |v: RationalSequence, column: &str| Ok(Emission::sequence("n", column, 1, v.values(), decimal));
    match op {
        TransformOp::M2c { input, order } => {
            let m = sequence(&input)?;
            let o = resolve_order(&m, order);
            seq(transforms::moments_to_cumulants_series(&m, o)?, "cumulant")
        }
        TransformOp::C2m { input, order } => {
            let c = sequence(&input)?;
            let o = resolve_order(&c, order);
            seq(transforms::cumulants_to_moments_series(&c, o)?, "moment")
        }
        TransformOp::Boxtimes { a, b, order } => {
            let (ma, mb) = (sequence(&a)?, sequence(&b)?);
            let o = order.unwrap_or(ma.order().min(mb.order()));
            let ka = transforms::moments_to_cumulants_series(&ma, o)?;
            seq(transforms::product_moments(&ka, &mb, o)?, "moment")
        }
        TransformOp::BoxplusPower { input, t, order } => {
            let m = sequence(&input)?;
            let o = resolve_order(&m, order);
            let kappa = transforms::free_add_power(&transforms::moments_to_cumulants_series(&m, o)?, &rational(&t)?)?;
            seq(transforms::cumulants_to_moments_series(&kappa, o)?, "moment")
        }
        TransformOp::STransform { input, order } => {
            let m = sequence(&input)?;
            let o = resolve_order(&m, order);
            let s = transforms::s_transform(&m, o)?;
            let pj = PuiseuxJson::new(&s);
            let k = s.ramification() as i64;
            let mut csv = vec![vec!["exponent".to_string(), "coeff".to_string()]];
            for (i, c) in s.coeffs().iter().enumerate() {
                let e = Rational::new((s.valuation() + i as i64).into(), k.into());
                csv.push(vec![e.to_repr(), c.to_repr()]);
            }
            Ok(Emission::new(s.to_string(), serde_json::to_value(pj).expect("serializes"), csv))
        }
        TransformOp::WordMoment { word, vars, haar } => {
            let mut fv = Vec::new();
            for v in &vars {
                let (label, spec) = v.split_once('=').ok_or_else(|| Failure::Usage(format!("--var expects label=values, got `{v}`")))?;
                fv.push(FreeVariable::new(label, sequence(spec)?));
            }
            for h in &haar {
                let (label, k) = h.split_once('=').ok_or_else(|| Failure::Usage(format!("--haar expects label=k, got `{h}`")))?;
                let k: usize = k.parse().map_err(|_| Error::Parse(format!("bad order `{k}`")))?;
                fv.push(FreeVariable::k_haar(label, k));
            }
            let w = transforms::parse_word(&word)?;
            Ok(Emission::scalar("moment", &transforms::free_word_moment(&fv, &w)?, decimal))
        }
    }
}

fn run_ksym(op: KsymOp, decimal: Option<usize>) -> CliResult<Emission> {
    match op {
        KsymOp::Semicircle { k, order } => Ok(ksym_emission(&ksym::semicircle_sk(k, order)?, decimal)),
        KsymOp::Bessel { k, order, cumulants, route } => {
            let v = if cumulants {
                let m = bessel_moments(k, order, route)?;
                transforms::moments_to_cumulants_series(&m, order)?
            } else {
                bessel_moments(k, order, route)?
            };
            Ok(Emission::sequence("n", if cumulants { "cumulant" } else { "moment" }, 1, v.values(), decimal))
        }
        KsymOp::CompoundPoisson { k, lambda, jump, order } => {
            let jump = jump_law(k, jump.as_deref(), order)?;
            Ok(ksym_emission(&ksym::compound_poisson(k, &rational(&lambda)?, &jump, order)?, decimal))
        }
        KsymOp::Clt { k, samples, order, base } => {
            let d = jump_law(k, base.as_deref(), order.div_ceil(k.max(1)))?;
            let c = ksym::clt_scaled_cumulants(&d, samples, order)?;
            Ok(Emission::sequence("i", "cumulant", 1, c.values(), decimal))
        }
        KsymOp::PoissonLimit { k, lambda, samples, order, jump } => {
            let jump = jump_law(k, jump.as_deref(), order)?;
            let g = ksym::poisson_limit_gap(k, &rational(&lambda)?, &jump, samples, order)?;
            Ok(Emission::sequence("n", "gap", 1, g.values(), decimal))
        }
        KsymOp::StableCheck { k, t, s } => {
            let (t, s) = (rational(&t)?, rational(&s)?);
            let r = ksym::stable_reproducing_report(k, &t, &s)?;
            let one = Rational::from_integer(1.into());
            let a = ksym::sigma_k(k, &(&one / (&one + &t)))?;
            let b = ksym::positive_stable(&(&one / (&one + &s)))?;
            let mult_additive = ksym::mult_additive_check(&a, &b, &t)?;
            let json = json!({
                "k": k,
                "t": t.to_repr(),
                "s": s.to_repr(),
                "holds": r.holds(),
                "phase": r.phase,
                "exponent": r.exponent,
                "magnitude": r.magnitude,
                "mult_additive": mult_additive,
                "lhs": StableMonomialJson::new(&r.lhs),
                "rhs": StableMonomialJson::new(&r.rhs),
            });
            let text = format!(
                "reproducing: {}\nphase: {}\nexponent: {}\nmagnitude: {}\nmult-additive: {}\nlhs: {}\nrhs: {}",
                r.holds(),
                r.phase,
                r.exponent,
                r.magnitude,
                mult_additive,
                r.lhs,
                r.rhs
            );
            let csv = vec![
                vec!["check".into(), "holds".into()],
                vec!["phase".into(), r.phase.to_string()],
                vec!["exponent".into(), r.exponent.to_string()],
                vec!["magnitude".into(), r.magnitude.to_string()],
                vec!["mult_additive".into(), mult_additive.to_string()],
            ];
            Ok(Emission::new(text, json, csv))
        }
    }
}

fn bessel_moments(k: usize, order: usize, route: BesselRoute) -> CliResult<RationalSequence> {
    let poisson = || ksym::bessel_moments::<Rational>(1, order);
    Ok(match route {
        BesselRoute::Closed => ksym::bessel_moments(k, order),
        BesselRoute::Iterated => ksym::boxtimes_power_moments_iterated(&poisson(), k, order)?,
        BesselRoute::Enumeration => ksym::boxtimes_power_moments(&poisson(), k, order)?,
    })
}

fn run_matmodel(op: MatmodelOp) -> CliResult<Emission> {
    let MatmodelOp::Run { r, n, k, words, trials, seed } = op;
    let words = words.iter().map(|w| WordSpec::parse(w)).collect::<freeprob::Result<Vec<_>>>()?;
    let report = matmodel::freeness_experiment(r, n, k, &words, trials, seed)?;
    let j = FreenessReportJson::new(&report);
    let mut text = Vec::new();
    let mut csv = vec![["word", "mean", "mean_exact", "prediction", "deviation", "mean_abs_deviation"].map(String::from).to_vec()];
    for w in &j.words {
        text.push(format!("{}  mean {}  prediction {}  deviation {}", w.word, w.mean, w.prediction, w.deviation));
        csv.push(vec![
            w.word.clone(),
            w.mean.clone(),
            w.mean_exact.clone(),
            w.prediction.clone(),
            w.deviation.clone(),
            w.mean_abs_deviation.clone(),
        ]);
    }
    Ok(Emission::new(text.join("\n"), serde_json::to_value(j).expect("serializes"), csv))
}

fn run(cli: Cli) -> CliResult<Emission> {
    let d = cli.decimal;
    match cli.command {
        Command::Nc { op } => run_nc(op),
        Command::Conv { op } => run_conv(op, d),
        Command::Series { op } => run_series(op, d),
        Command::Transform { op } => run_transform(op, d),
        Command::Ksym { op } => run_ksym(op, d),
        Command::Matmodel { op } => run_matmodel(op),
    }
}

/// `matmodel --flag ...` is shorthand for `matmodel run --flag ...`.
fn normalize_args(mut args: Vec<OsString>) -> Vec<OsString> {
    if let Some(i) = args.iter().position(|a| a == "matmodel") {
        if args.get(i + 1).and_then(|a| a.to_str()).is_some_and(|a| a.starts_with("--") && a != "--help") {
            args.insert(i + 1, "run".into());
        }
    }
    args
}

fn fail(code: u8, kind: &str, message: &str) -> ExitCode {
    eprintln!("{}", json!({ "error": kind, "message": message }));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(normalize_args(std::env::args_os().collect())) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(1, "usage", e.to_string().trim()),
    };
    if let Ok(v) = std::env::var(ENV_MAX_N) {
        match v.trim().parse::<usize>() {
            Ok(n) => ncpart::set_max_enumeration(n),
            Err(_) => return fail(1, "usage", &format!("{ENV_MAX_N} must be a non-negative integer, got `{v}`")),
        }
    }
    let (format, out) = (cli.format, cli.out.clone());
    match run(cli) {
        Ok(e) => {
            let body = e.render(format);
            match out {
                Some(path) => {
                    if let Err(err) = fs::write(&path, body) {
                        return fail(2, "io", &format!("{}: {err}", path.display()));
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => fail(1, "usage", &m),
        Err(Failure::Lib(e)) if e.is_resource_limit() => fail(3, "resource-limit", &e.to_string()),
        Err(Failure::Lib(e)) => fail(2, "validation", &e.to_string()),
    }
}
