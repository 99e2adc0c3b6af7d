mod family;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qaskey::degeneration::{
    limit_bc_to_a, limit_bqj_to_asc_direct, limit_bqj_to_qm, limit_qm_to_asc, limit_qr_to_bqj, limit_qr_to_bqj_sigma,
    limit_qr_to_bqj_univariate, measure_degeneration_experiment, measure_embedding_experiment, LimitQuantity, LimitReport,
    MeasureTransition,
};
use qaskey::multivariate::{config_measure_qracah, family_poly_schur, NodeScheme, CONFIG_BUDGET};
use qaskey::params::{AscAnchor, FamilyParams};
use qaskey::partition::{enumerate_box, sub_partitions};
use qaskey::symfunc::{interp_limit, phi_family, sigma_coeff, sigma_n, InterpMethod};
use qaskey::univariate::{family_weights_auto, phi, qracah_weights};
use qaskey::verify::{run_suite, SuiteConfig};
use qaskey::{Approx, Partition, Scalar};

use family::{admissibility_warning, FamilyArgs};
use output::{Format, Output};

#[derive(Parser, Debug)]
#[command(name = "qaskey", version, about = "Exact q-Askey polynomials, symmetric functions and their limits")]
struct Cli {
    /// Base q, a rational in (0, 1).
    #[arg(long, global = true, default_value = "1/2")]
    q: Scalar,
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Working precision in bits for numeric checks.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Absolute tolerance for numeric checks, e.g. 1e-20.
    #[arg(long, global = true, default_value = "1e-20")]
    tolerance: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of the monic univariate polynomial phi_n.
    Poly {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Schur-basis coefficients of the N-variate family polynomial.
    Multipoly {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value = "2,1")]
        lambda: Partition,
        /// Number of variables N.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Schur-basis coefficients of Phi_lambda, or of an interpolation function I_mu.
    Symfunc {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value = "2,1")]
        lambda: Partition,
        /// Truncation degree D.
        #[arg(long = "degree", alias = "D", default_value_t = 4)]
        degree: usize,
        /// Print I_lambda of this node scheme instead of Phi_lambda.
        #[arg(long, value_enum)]
        interp: Option<SchemeArg>,
        /// BC node parameter.
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        s: Scalar,
        /// Project the N-variable polynomial instead of inverting the Cauchy identity.
        #[arg(long)]
        projection: Option<usize>,
    },
    /// sigma(lambda, mu) for all mu inside lambda, |lambda| <= D.
    Sigma {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "degree", alias = "D", default_value_t = 4)]
        degree: usize,
        /// Finite-level coefficients sigma_N instead.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Orthogonality weights on the family's grid.
    Weights {
        #[command(flatten)]
        family: FamilyArgs,
        /// Polynomial degree the truncation bound must cover (numeric families).
        #[arg(long, default_value_t = 8)]
        moment_degree: usize,
    },
    /// The N-point configuration measure of an admissible q-Racah quadruple.
    Measure {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = CONFIG_BUDGET)]
        budget: u128,
    },
    /// Run a named verification suite (or "all").
    Verify(VerifyArgs),
    /// Convergence table of a limit transition along a parameter path.
    Limits(LimitArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchemeArg {
    A,
    Bc,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// pochhammer, schur, cauchy, univariate-orth, multivariate-orth, formal-orth, norms,
    /// sigma-n, interp, eigen, limits, embedding or all.
    suite: String,
    #[arg(long = "degree", alias = "D", default_value_t = 4)]
    degree: usize,
    /// Largest N for the Schur and configuration checks.
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Perturb the closed-form sigma_N(lambda, mu), given as "lambda:mu", to test failure reporting.
    #[arg(long)]
    corrupt_sigma: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Transition {
    BcToA,
    QrToBqj,
    QrToBqjUnivariate,
    BqjToQm,
    QmToAsc,
    BqjToAsc,
    Embedding,
    BqjToQmMeasure,
    QmToAscMeasure,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Quantity {
    Phi,
    Sigma,
    Norm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Anchor {
    Times,
    Inverse,
}

#[derive(Args, Debug)]
struct LimitArgs {
    #[arg(long, value_enum)]
    transition: Transition,
    #[arg(long, default_value = "1")]
    lambda: Partition,
    /// Second index for --quantity sigma.
    #[arg(long, default_value = "")]
    mu: Partition,
    #[arg(long, value_enum, default_value = "phi")]
    quantity: Quantity,
    /// First M of the path; defaults to 4, or 12 for the transitions toward q-Meixner and Al-Salam–Carlitz.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<i64>,
    #[arg(long, default_value_t = 5)]
    steps: usize,
    /// Truncation degree; defaults to |lambda|.
    #[arg(long = "degree", alias = "D")]
    degree: Option<usize>,
    /// Univariate degree for qr-to-bqj-univariate.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Largest odd N for the embedding experiment.
    #[arg(long, default_value_t = 7)]
    n_max: usize,
    #[arg(long, value_enum, default_value = "times")]
    anchor: Anchor,
    #[command(flatten)]
    family: FamilyArgs,
}

enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("QASKEY_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("QASKEY_THREADS must be a positive integer, got {v:?}"))?;
        if n == 0 {
            bail!("QASKEY_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Verdict> {
    qaskey::exactnum::validate_q(&cli.q)?;
    let tol = Approx::parse_decimal(&cli.tolerance, cli.precision)?;
    let q = &cli.q;
    let (out, verdict) = match &cli.command {
        Command::Poly { family, n } => (cmd_poly(q, family, *n)?, Verdict::Pass),
        Command::Multipoly { family, lambda, n } => (cmd_multipoly(q, family, lambda, *n)?, Verdict::Pass),
        Command::Symfunc { family, lambda, degree, interp, s, projection } => {
            (cmd_symfunc(q, family, lambda, *degree, *interp, s, *projection)?, Verdict::Pass)
        }
        Command::Sigma { family, degree, n } => (cmd_sigma(q, family, *degree, *n)?, Verdict::Pass),
        Command::Weights { family, moment_degree } => (cmd_weights(q, family, *moment_degree, &tol)?, Verdict::Pass),
        Command::Measure { family, n, budget } => (cmd_measure(q, family, *n, *budget)?, Verdict::Pass),
        Command::Verify(args) => cmd_verify(cli, args, tol)?,
        Command::Limits(args) => cmd_limits(q, args)?,
    };
    out.emit(cli.format, cli.output.as_deref())?;
    Ok(verdict)
}

fn generic_params(q: &Scalar, family: &FamilyArgs, out: &mut Output) -> Result<FamilyParams> {
    let p = family.build(q)?;
    for (k, v) in p.describe() {
        out.param(k, v);
    }
    out.param("family", p.kind());
    if let Some(w) = admissibility_warning(&p) {
        out.warnings.push(format!("{w}; generic results only"));
    }
    Ok(p)
}

fn coefficient_rows(out: &mut Output, coeffs: impl IntoIterator<Item = (Partition, Scalar)>) {
    for (k, c) in coeffs {
        if !c.is_zero() {
            out.row(vec![k.to_string(), c.to_string()]);
        }
    }
}

fn cmd_poly(q: &Scalar, family: &FamilyArgs, n: usize) -> Result<Output> {
    let mut out = Output::new("poly", &["degree", "coefficient"]);
    let p = generic_params(q, family, &mut out)?;
    out.param("n", n);
    for (k, c) in phi(n, &p)?.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.row(vec![k.to_string(), c.to_string()]);
        }
    }
    Ok(out)
}

fn cmd_multipoly(q: &Scalar, family: &FamilyArgs, lambda: &Partition, n: usize) -> Result<Output> {
    let mut out = Output::new("multipoly", &["schur", "coefficient"]);
    let p = generic_params(q, family, &mut out)?;
    out.param("lambda", lambda);
    out.param("N", n);
    coefficient_rows(&mut out, family_poly_schur(&p, lambda, n)?);
    Ok(out)
}

fn cmd_symfunc(
    q: &Scalar,
    family: &FamilyArgs,
    lambda: &Partition,
    degree: usize,
    interp: Option<SchemeArg>,
    s: &Scalar,
    projection: Option<usize>,
) -> Result<Output> {
    let mut out = Output::new("symfunc", &["schur", "coefficient"]);
    out.param("lambda", lambda);
    out.param("D", degree);
    let f = match interp {
        None => {
            if projection.is_some() {
                bail!("--projection applies to --interp only");
            }
            phi_family(&generic_params(q, family, &mut out)?, lambda, degree)?
        }
        Some(kind) => {
            let scheme = match kind {
                SchemeArg::A => NodeScheme::type_a(q),
                SchemeArg::Bc => {
                    out.param("s", s);
                    NodeScheme::type_bc(q, s)
                }
            };
            out.param("q", q);
            out.param("scheme", format!("{kind:?}").to_lowercase());
            let method = projection.map_or(InterpMethod::Cauchy, InterpMethod::Projection);
            if let Some(n) = projection {
                out.param("projection_N", n);
            }
            interp_limit(&scheme, lambda, degree, method)?
        }
    };
    coefficient_rows(&mut out, f.coeffs().clone());
    Ok(out)
}

fn cmd_sigma(q: &Scalar, family: &FamilyArgs, degree: usize, n: Option<usize>) -> Result<Output> {
    let mut out = Output::new("sigma", &["lambda", "mu", "sigma"]);
    let p = generic_params(q, family, &mut out)?;
    out.param("D", degree);
    let shapes = match n {
        Some(n) => {
            out.param("N", n);
            enumerate_box(Some(n), None, degree)
        }
        None => enumerate_box(None, None, degree),
    };
    for lam in &shapes {
        for mu in sub_partitions(lam) {
            let v = match n {
                Some(n) => sigma_n(&p, lam, &mu, n)?,
                None => sigma_coeff(&p, lam, &mu)?,
            };
            out.row(vec![lam.to_string(), mu.to_string(), v.to_string()]);
        }
    }
    Ok(out)
}

fn cmd_weights(q: &Scalar, family: &FamilyArgs, moment_degree: usize, tol: &Approx) -> Result<Output> {
    let mut out = Output::new("weights", &["node", "weight"]);
    let p = generic_params(q, family, &mut out)?;
    out.warnings.clear();
    match &p {
        FamilyParams::QRacah(qr) => {
            let w = qracah_weights(qr)?;
            out.param("exact", true);
            for (x, m) in w.nodes.iter().zip(&w.weights) {
                out.row(vec![x.to_string(), m.to_string()]);
            }
        }
        _ => {
            let w = family_weights_auto(&p, moment_degree, tol)?;
            out.param("exact", false);
            out.param("moment_degree", moment_degree);
            if let Some(t) = &w.tail_bound {
                out.param("tail_bound", t.to_decimal(4));
            }
            for (x, m) in w.nodes.iter().zip(&w.weights) {
                out.row(vec![x.to_string(), m.to_decimal(m.default_digits())]);
            }
        }
    }
    Ok(out)
}

fn cmd_measure(q: &Scalar, family: &FamilyArgs, n: usize, budget: u128) -> Result<Output> {
    let mut out = Output::new("measure", &["configuration", "weight"]);
    let p = generic_params(q, family, &mut out)?;
    out.warnings.clear();
    let FamilyParams::QRacah(qr) = &p else {
        bail!("configuration measures are built for the q-Racah family only");
    };
    let m = config_measure_qracah(qr, n, budget)?;
    out.param("N", n);
    out.param("configurations", m.configurations.len());
    for (i, w) in m.weights.iter().enumerate() {
        let pts: Vec<String> = m.points(i).iter().map(|x| x.to_string()).collect();
        out.row(vec![format!("({})", pts.join(", ")), w.to_string()]);
    }
    Ok(out)
}

fn parse_pair(s: &str) -> Result<(Partition, Partition)> {
    let (l, m) = s.split_once(':').ok_or_else(|| anyhow!("expected \"lambda:mu\", got {s:?}"))?;
    Ok((l.parse()?, m.parse()?))
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs, tolerance: Approx) -> Result<(Output, Verdict)> {
    let cfg = SuiteConfig {
        q: cli.q.clone(),
        max_degree: args.degree,
        max_n: args.max_n,
        precision: cli.precision,
        tolerance,
        seed: args.seed,
        corrupt_sigma: args.corrupt_sigma.as_deref().map(parse_pair).transpose()?,
    };
    let reports = run_suite(&args.suite, &cfg)?;
    let mut out = Output::new("verify", &["family", "identity", "status", "cases", "max_error", "failure"]);
    out.param("suite", &args.suite);
    out.param("q", &cli.q);
    out.param("D", args.degree);
    out.param("N_max", args.max_n);
    out.param("seed", args.seed);
    for r in &reports {
        out.row(vec![
            r.family.clone(),
            r.identity.clone(),
            r.status.to_string(),
            r.cases.to_string(),
            r.max_error.clone(),
            r.failure.clone().unwrap_or_default(),
        ]);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    out.param("passed", reports.len() - failed);
    out.param("failed", failed);
    out.status = Some(if failed == 0 { "pass" } else { "fail" }.into());
    out.reports = Some(serde_json::to_value(&reports)?);
    Ok((out, if failed == 0 { Verdict::Pass } else { Verdict::Fail }))
}

fn cmd_limits(q: &Scalar, args: &LimitArgs) -> Result<(Output, Verdict)> {
    let toward_zero = matches!(
        args.transition,
        Transition::BqjToQm | Transition::QmToAsc | Transition::BqjToAsc | Transition::BqjToQmMeasure | Transition::QmToAscMeasure
    );
    let start = args.start.unwrap_or(if toward_zero { 12 } else { 4 });
    if args.steps == 0 {
        bail!("--steps must be positive");
    }
    let path: Vec<i64> = (start..start + args.steps as i64).collect();
    let lam = &args.lambda;
    let degree = args.degree.unwrap_or(lam.size());
    let anchor = match args.anchor {
        Anchor::Times => AscAnchor::AlphaTimes,
        Anchor::Inverse => AscAnchor::AlphaInverse,
    };
    // The anchors are path parameters here, not grid anchors of the target.
    let target = |family: &str| -> Result<FamilyParams> {
        let mut f = args.family.clone();
        f.family = family.into();
        f.alpha = None;
        f.beta = None;
        f.build(q)
    };
    let alpha = args.family.alpha.clone().unwrap_or_else(|| Scalar::from_int(2));
    let beta = args.family.beta.clone().unwrap_or_else(|| Scalar::from_int(-1));
    let what = match args.quantity {
        Quantity::Phi => LimitQuantity::Phi(lam.clone()),
        Quantity::Sigma => LimitQuantity::Sigma(lam.clone(), args.mu.clone()),
        Quantity::Norm => LimitQuantity::Norm(lam.clone()),
    };
    // The measure experiments pair with every Phi up to the size of --lambda.
    let shapes = || enumerate_box(None, None, lam.size().max(1));
    let reports: Vec<LimitReport> = match args.transition {
        Transition::BcToA => vec![limit_bc_to_a(q, lam, degree, &path)?],
        Transition::QrToBqj => {
            let FamilyParams::BigQJacobi(b) = target("bqj")? else { unreachable!() };
            match args.quantity {
                Quantity::Phi => vec![limit_qr_to_bqj(lam, degree, &b, &path)?],
                Quantity::Sigma => vec![limit_qr_to_bqj_sigma(lam, &args.mu, &b, &path)?],
                Quantity::Norm => bail!("qr-to-bqj compares Phi or sigma"),
            }
        }
        Transition::QrToBqjUnivariate => {
            let FamilyParams::BigQJacobi(b) = target("bqj")? else { unreachable!() };
            vec![limit_qr_to_bqj_univariate(args.n, &b, &path)?]
        }
        Transition::BqjToQm => {
            let FamilyParams::QMeixner(m) = target("qm")? else { unreachable!() };
            vec![limit_bqj_to_qm(&what, degree, &m, &beta, &path)?]
        }
        Transition::QmToAsc => {
            let FamilyParams::AlSalamCarlitz(a) = target("asc")? else { unreachable!() };
            vec![limit_qm_to_asc(&what, degree, &a, &alpha, anchor, &path)?]
        }
        Transition::BqjToAsc => {
            let FamilyParams::AlSalamCarlitz(a) = target("asc")? else { unreachable!() };
            vec![limit_bqj_to_asc_direct(lam, &a, &alpha, &beta, &path)?]
        }
        Transition::Embedding => {
            let mut f = args.family.clone();
            f.family = "qr".into();
            f.zeta = f.zeta.or(Some(Scalar::one()));
            f.l = f.l.or(Some(1));
            f.r = f.r.or(Some(-1));
            let FamilyParams::QRacah(p) = f.build(q)? else { unreachable!() };
            let ns: Vec<usize> = (3..=args.n_max.max(3)).step_by(2).collect();
            measure_embedding_experiment(&p, &shapes(), &ns)?
        }
        Transition::BqjToQmMeasure => measure_degeneration_experiment(MeasureTransition::BqjToQm, &target("qm")?, &beta, &shapes(), &path)?,
        Transition::QmToAscMeasure => measure_degeneration_experiment(MeasureTransition::QmToAsc, &target("asc")?, &alpha, &shapes(), &path)?,
    };
    let mut out = Output::new("limits", &["quantity", "step", "error", "ratio"]);
    out.param("transition", args.transition.to_possible_value().expect("named").get_name());
    out.param("q", q);
    for r in &reports {
        for (i, (step, e)) in r.path.iter().zip(&r.errors).enumerate() {
            let ratio = if i == 0 || r.errors[i - 1].is_zero() {
                String::new()
            } else {
                format!("{:.4}", e.to_f64() / r.errors[i - 1].to_f64())
            };
            out.row(vec![r.quantity.clone(), step.clone(), e.to_decimal(6), ratio]);
        }
        let tag = |k: &str| if reports.len() == 1 { k.to_string() } else { format!("{k} {}", r.quantity) };
        if let Some(f) = r.fitted_ratio {
            out.param(&tag("fitted_ratio"), format!("{f:.4}"));
        }
        if let Some(p) = r.predicted_ratio {
            out.param(&tag("predicted_ratio"), format!("{p:.4}"));
        }
        out.param(&tag("status"), r.status);
        if let Some(n) = &r.note {
            out.warnings.push(format!("{}: {n}", r.quantity));
        }
    }
    let ok = reports.iter().all(LimitReport::passed);
    out.status = Some(if ok { "pass" } else { "fail" }.into());
    out.reports = Some(serde_json::to_value(&reports)?);
    Ok((out, if ok { Verdict::Pass } else { Verdict::Fail }))
}
