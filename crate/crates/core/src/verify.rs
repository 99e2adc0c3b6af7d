//! Verification reports and the named suites that produce them.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::degeneration::{
    limit_bc_to_a, limit_bqj_to_asc_direct, limit_bqj_to_qm, limit_qm_to_asc, limit_qr_to_bqj, limit_qr_to_bqj_sigma,
    limit_qr_to_bqj_univariate, measure_embedding_experiment, sym_error, LimitQuantity, LimitReport, RATIO_BAND,
};
use crate::error::{Error, Result};
use crate::exactnum::{
    default_q, default_tolerance, qpoch, qpoch_doubled, qpoch_partition, qpoch_signed, qq, validate_q, Approx, Scalar,
    DEFAULT_PRECISION,
};
use crate::multivariate::{
    cauchy_identity_check, expand_in_interp, family_poly_n, mp_schur, multivariate_orthogonality_check, qracah_norm_n,
    qracah_norm_ratio, NodeScheme,
};
use crate::params::{AscAnchor, AscParams, BigQJacobiParams, FamilyParams, QMeixnerParams, QRacahParams};
use crate::partition::{enumerate_box, part, Partition};
use crate::polyseries::{alternant_quotient_by_division, MultiSymPoly, Nodes, UniPoly};
use crate::symfunc::{family_scheme, gram_matrix, interp_limit, interp_limits, norm_h, sigma_n, InterpMethod, SymFuncTrunc};
use crate::univariate::{
    apply_operator, apply_operator_laurent, eigenvalue, phi, phi_qracah, qracah_grid, qracah_operator_on_grid,
    qracah_weight_crosscheck, univariate_orthogonality_check,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExactPass,
    NumericPass,
    Fail,
}

impl Status {
    pub fn passed(self) -> bool {
        self != Status::Fail
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ExactPass => "exact-pass",
            Status::NumericPass => "numeric-pass",
            Status::Fail => "fail",
        })
    }
}

/// Outcome of checking one identity over a set of cases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub identity: String,
    pub status: Status,
    /// Largest deviation seen; `"0"` for exact checks that passed.
    pub max_error: String,
    pub tolerance: String,
    pub cases: usize,
    /// The first failing case, if any.
    pub failure: Option<String>,
}

impl Report {
    pub fn new(family: &str, identity: &str) -> Self {
        Report {
            family: family.into(),
            params: BTreeMap::new(),
            identity: identity.into(),
            status: Status::ExactPass,
            max_error: "0".into(),
            tolerance: "0".into(),
            cases: 0,
            failure: None,
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.into(), v.to_string());
        self
    }

    pub fn fail(&mut self, case: String) {
        self.status = Status::Fail;
        if self.failure.is_none() {
            self.failure = Some(case);
        }
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}

/// Everything the suites read from the command line.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub q: Scalar,
    /// Truncation degree: Cauchy checks run to this degree, Gram matrices to half of it,
    /// interpolation and σ checks to one less.
    pub max_degree: usize,
    /// Largest number of variables for the Schur and configuration checks.
    pub max_n: usize,
    pub precision: u32,
    pub tolerance: Approx,
    pub seed: u64,
    /// Adds 1 to the closed-form `σ_N(λ, μ)` before comparing; the sigma suite must then fail.
    pub corrupt_sigma: Option<(Partition, Partition)>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            q: default_q(),
            max_degree: 4,
            max_n: 3,
            precision: DEFAULT_PRECISION,
            tolerance: default_tolerance(DEFAULT_PRECISION),
            seed: 0x5eed,
            corrupt_sigma: None,
        }
    }
}

/// Suite names accepted by [`run_suite`]. The first seven are exact.
pub const SUITES: [&str; 12] = [
    "pochhammer",
    "schur",
    "cauchy",
    "univariate-orth",
    "multivariate-orth",
    "formal-orth",
    "norms",
    "sigma-n",
    "interp",
    "eigen",
    "limits",
    "embedding",
];

/// Runs one named suite, or every suite for `"all"`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    validate_q(&cfg.q)?;
    match name {
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, cfg)?);
            }
            Ok(out)
        }
        "pochhammer" => pochhammer_suite(cfg),
        "schur" => schur_suite(cfg),
        "cauchy" => cauchy_suite(cfg),
        "univariate-orth" => univariate_suite(cfg),
        "multivariate-orth" => multivariate_suite(cfg),
        "formal-orth" => formal_orth_suite(cfg),
        "norms" => norms_suite(cfg),
        "sigma-n" => sigma_n_suite(cfg),
        "interp" => interp_suite(cfg),
        "eigen" => eigen_suite(cfg),
        "limits" => limits_suite(cfg),
        "embedding" => embedding_suite(cfg),
        other => Err(Error::InvalidArgument(format!("unknown suite {other:?}; expected one of {} or all", SUITES.join(", ")))),
    }
}

fn rng(cfg: &SuiteConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

/// Nonzero rational with numerator and denominator bounded by 20.
fn random_rational(r: &mut ChaCha8Rng) -> Scalar {
    let num = loop {
        let n: i64 = r.gen_range(-20..=20);
        if n != 0 {
            break n;
        }
    };
    qq(num, r.gen_range(1..=20))
}

/// Rational in `(0, 1)`.
fn random_q(r: &mut ChaCha8Rng) -> Scalar {
    let den: i64 = r.gen_range(2..=20);
    qq(r.gen_range(1..den), den)
}

/// Distinct random rational nodes.
fn random_nodes(r: &mut ChaCha8Rng, count: usize) -> Nodes {
    let mut v: Vec<Scalar> = Vec::with_capacity(count);
    while v.len() < count {
        let x = random_rational(r);
        if !v.contains(&x) {
            v.push(x);
        }
    }
    Nodes::explicit(v)
}

fn exact_compare(rep: &mut Report, got: &Scalar, want: &Scalar, case: impl FnOnce() -> String) {
    rep.cases += 1;
    if got != want {
        rep.fail(format!("{}: got {got}, want {want}", case()));
    }
}

fn pochhammer_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let mut r = rng(cfg);
    let mut split = Report::new("pochhammer", "(x;q)_{m+n} = (x;q)_m (xq^m;q)_n").param("draws", 50).param("seed", cfg.seed);
    let mut neg = Report::new("pochhammer", "(x;q)_{-n} (xq^{-n};q)_n = 1").param("draws", 50).param("seed", cfg.seed);
    for _ in 0..50 {
        let (x, q) = (random_rational(&mut r), random_q(&mut r));
        for m in 0..=8 {
            for n in 0..=8 {
                let got = qpoch(&x, &q, m + n);
                let want = qpoch(&x, &q, m) * qpoch(&(&x * &q.pow(m as i64)), &q, n);
                exact_compare(&mut split, &got, &want, || format!("x = {x}, q = {q}, m = {m}, n = {n}"));
            }
        }
        for n in 1..=8i64 {
            let tail = qpoch(&(&x * &q.pow(-n)), &q, n as usize);
            if tail.is_zero() {
                continue;
            }
            let got = qpoch_signed(&x, &q, -n)? * tail;
            exact_compare(&mut neg, &got, &Scalar::one(), || format!("x = {x}, q = {q}, n = {n}"));
        }
    }
    let q = &cfg.q;
    let mut hat = Report::new("pochhammer", "(z;q)_{hat λ} = prod_i (zq^{1-2i}, zq^{2-2i}; q)_{2λ_i}").param("q", q);
    for _ in 0..5 {
        let z = random_rational(&mut r);
        for lam in enumerate_box(None, None, 4) {
            let want = qpoch_partition(&z, q, &lam.doubled());
            exact_compare(&mut hat, &qpoch_doubled(&z, q, &lam), &want, || format!("z = {z}, λ = {lam}"));
        }
    }
    Ok(vec![split, neg, hat])
}

fn schur_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let mut r = rng(cfg);
    let size = cfg.max_degree.saturating_sub(1);
    let nodes = random_nodes(&mut r, cfg.max_n + size + 1);
    let params = |rep: Report| rep.param("N_max", cfg.max_n).param("size_max", size).param("nodes", format!("{nodes:?}"));
    let mut top = params(Report::new("schur", "top homogeneous part of s_{μ|N} = S_μ"));
    let mut division = params(Report::new("schur", "Schur-basis alternant = alternant by exact division"));
    let mut stable = params(Report::new("schur", "s_{μ|N}(x_1..x_{N-1}, c_0 | c) = s_{μ|N-1}(x | shifted c)"));
    let mut vanish = params(Report::new("schur", "s_{μ|N}(X_N(λ)) = 0 unless μ ⊆ λ, nonzero at λ = μ"));
    for n in 1..=cfg.max_n {
        for mu in enumerate_box(Some(n), None, size) {
            let s = mp_schur(&mu, n, &nodes)?;
            top.cases += 1;
            if s.top_homogeneous() != MultiSymPoly::jacobi_trudi(&mu, n) {
                top.fail(format!("μ = {mu}, N = {n}"));
            }
            let rows: Vec<UniPoly> = (0..n).map(|i| UniPoly::newton_power(&nodes, mu.part(i) + n - 1 - i)).collect::<Result<_>>()?;
            division.cases += 1;
            if alternant_quotient_by_division(&rows)? != s {
                division.fail(format!("μ = {mu}, N = {n}"));
            }
            if n > 1 {
                stable.cases += 1;
                if s.substitute_last(&nodes.get(0)?) != mp_schur(&mu, n - 1, &nodes.shifted(1))? {
                    stable.fail(format!("μ = {mu}, N = {n}"));
                }
            }
            for lam in enumerate_box(Some(n), None, size) {
                let pt: Vec<Scalar> = (0..n).map(|i| nodes.get(lam.part(i) + n - 1 - i)).collect::<Result<_>>()?;
                let v = s.eval(&pt);
                vanish.cases += 1;
                if !lam.contains(&mu) && !v.is_zero() {
                    vanish.fail(format!("s_{mu}|{n} at X({lam}) = {v}"));
                } else if lam == mu && v.is_zero() {
                    vanish.fail(format!("s_{mu}|{n} vanishes at X({mu})"));
                }
            }
        }
    }
    Ok(vec![top, division, stable, vanish])
}

fn cauchy_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let mut r = rng(cfg);
    let random = random_nodes(&mut r, 12);
    let geometric = Nodes::type_a(&cfg.q, 12);
    let cases = [(2, 1), (3, 2), (4, 2)];
    let jobs: Vec<(usize, usize, &Nodes, &str)> = cases
        .iter()
        .flat_map(|&(n, k)| [(n, k, &random, "random"), (n, k, &geometric, "geometric")])
        .collect();
    jobs.par_iter()
        .map(|&(n, k, nodes, label)| Ok(cauchy_identity_check(n, k, nodes, cfg.max_degree)?.param("nodes", label)))
        .collect()
}

/// The K = 3 q-Racah quadruple on the grid `ζ = 1`, `L = 1`, `R = -2`.
pub fn qracah_k3(q: &Scalar) -> Result<QRacahParams> {
    QRacahParams::admissible(q.clone(), Scalar::one(), 1, -2, qq(3, 5), qq(4, 5))
}

/// The K = 2 q-Racah quadruple on the grid `ζ = 1`, `L = 1`, `R = -1`.
pub fn qracah_k2(q: &Scalar) -> Result<QRacahParams> {
    QRacahParams::admissible(q.clone(), Scalar::one(), 1, -1, qq(3, 5), qq(4, 5))
}

/// Generic rational fixtures of the four families, with grid anchors where available.
pub fn family_fixtures(q: &Scalar) -> Result<Vec<FamilyParams>> {
    Ok(vec![
        FamilyParams::QRacah(QRacahParams::new(q.clone(), [qq(3, 5), qq(4, 5), qq(-2, 1), qq(1, 4)])?),
        FamilyParams::BigQJacobi(BigQJacobiParams::new(q.clone(), qq(2, 1), qq(-1, 2), qq(5, 4), qq(3, 2))?),
        FamilyParams::QMeixner(QMeixnerParams::new(q.clone(), qq(2, 1), qq(3, 2), qq(5, 4))?),
        FamilyParams::AlSalamCarlitz(AscParams::new(q.clone(), qq(3, 2), qq(5, 4))?),
    ])
}

/// Admissible fixtures with grids for the three families whose weights are numeric.
pub fn grid_fixtures(q: &Scalar) -> Result<Vec<FamilyParams>> {
    Ok(vec![
        FamilyParams::BigQJacobi(BigQJacobiParams::new(q.clone(), qq(2, 1), qq(-1, 2), qq(5, 4), qq(3, 2))?),
        FamilyParams::QMeixner(QMeixnerParams::new(q.clone(), qq(1, 1), qq(-1, 1), qq(-5, 4))?.with_beta(qq(-3, 4))),
        FamilyParams::AlSalamCarlitz(AscParams::new(q.clone(), qq(5, 4), qq(3, 2))?.with_anchors(qq(2, 1), qq(-1, 1))),
    ])
}

fn univariate_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let p = qracah_k3(&cfg.q)?;
    let mut out = vec![
        univariate_orthogonality_check(&FamilyParams::QRacah(p.clone()), 5, &cfg.tolerance)?,
        qracah_weight_crosscheck(&p, &cfg.tolerance)?,
    ];
    let numeric: Vec<Report> =
        grid_fixtures(&cfg.q)?.par_iter().map(|fp| univariate_orthogonality_check(fp, 4, &cfg.tolerance)).collect::<Result<_>>()?;
    out.extend(numeric);
    Ok(out)
}

fn multivariate_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let p = qracah_k2(&cfg.q)?;
    (1..=cfg.max_n).step_by(2).map(|n| multivariate_orthogonality_check(&p, n)).collect()
}

fn formal_orth_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let size = cfg.max_degree / 2;
    family_fixtures(&cfg.q)?
        .iter()
        .map(|fp| {
            let mut rep = fp
                .describe()
                .into_iter()
                .fold(Report::new(fp.kind().tag(), "E(Phi_λ Phi_μ) = δ h_λ"), |r, (k, v)| r.param(k, v))
                .param("size_max", size);
            for ((a, b), e) in gram_matrix(fp, size)? {
                let want = if a == b { norm_h(fp, &a)? } else { Scalar::zero() };
                exact_compare(&mut rep, &e, &want, || format!("(λ, μ) = ({a}, {b})"));
            }
            Ok(rep)
        })
        .collect()
}

fn norms_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let q = &cfg.q;
    let p = qracah_k2(q)?;
    let mut ratio = Report::new("qr", "h_{λ|N} from the univariate norms = closed form").param("K", 2);
    for n in (1..=cfg.max_n).step_by(2) {
        for lam in enumerate_box(Some(n), Some(2), 2 * n) {
            let got = qracah_norm_ratio(&p, &lam, n)?;
            exact_compare(&mut ratio, &got, &qracah_norm_n(&p, &lam, n)?, || format!("λ = {lam}, N = {n}"));
        }
    }
    let mut positive = Report::new("qm, asc", "h_λ > 0 for admissible parameters, |λ| ≤ 4");
    for fp in grid_fixtures(q)?.into_iter().skip(1) {
        match &fp {
            FamilyParams::QMeixner(x) => x.admissibility()?,
            FamilyParams::AlSalamCarlitz(x) => x.admissibility()?,
            _ => unreachable!(),
        };
        for lam in enumerate_box(None, None, 4) {
            let h = norm_h(&fp, &lam)?;
            positive.cases += 1;
            if !h.is_positive_real() {
                positive.fail(format!("{} λ = {lam}: h = {h}", fp.kind().tag()));
            }
        }
    }
    let mut empty = Report::new("all", "h_∅ = 1");
    for fp in family_fixtures(q)? {
        exact_compare(&mut empty, &norm_h(&fp, &Partition::empty())?, &Scalar::one(), || fp.kind().tag().into());
    }
    Ok(vec![ratio, positive, empty])
}

/// Fixtures for the σ_N check at `n` variables. Even `N` for q-Racah needs a square base,
/// so `q²` stands in when `q` is not one.
fn sigma_fixtures(q: &Scalar, n: usize) -> Result<Vec<FamilyParams>> {
    let mut out = Vec::new();
    for fp in family_fixtures(q)? {
        match fp {
            FamilyParams::BigQJacobi(_) => {}
            FamilyParams::QRacah(p) if n.is_multiple_of(2) && q.sqrt_exact().is_none() => {
                out.push(FamilyParams::QRacah(QRacahParams::new(q * q, p.s)?));
            }
            fp => out.push(fp),
        }
    }
    Ok(out)
}

fn sigma_n_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let size = cfg.max_degree.saturating_sub(1);
    let mut jobs = Vec::new();
    for n in [4usize, 5] {
        for fp in sigma_fixtures(&cfg.q, n)? {
            jobs.push((n, fp));
        }
    }
    jobs.par_iter().map(|(n, fp)| sigma_n_check(fp, *n, size, cfg.corrupt_sigma.as_ref())).collect()
}

/// `N`-variate family polynomials expanded in the `N`-variate interpolation basis against
/// the closed-form `σ_N`.
pub fn sigma_n_check(fp: &FamilyParams, n: usize, size: usize, corrupt: Option<&(Partition, Partition)>) -> Result<Report> {
    let (scheme, c) = family_scheme(fp);
    let mut rep = fp
        .describe()
        .into_iter()
        .fold(Report::new(fp.kind().tag(), "expansion of Phi_{λ|N} over I_{μ|N} = sigma_N(λ, μ)"), |r, (k, v)| r.param(k, v))
        .param("N", n)
        .param("size_max", size);
    for lam in enumerate_box(Some(n), None, size) {
        let f = family_poly_n(fp, &lam, n)?;
        let f = SymFuncTrunc::lift(&f, lam.size())?.scale_argument(&c.inv()).restrict(n);
        let coeffs = expand_in_interp(&f, &scheme, n)?;
        for mu in enumerate_box(Some(n), None, lam.size()) {
            let got = coeffs.get(&mu).cloned().unwrap_or_else(Scalar::zero);
            let mut want = sigma_n(fp, &lam, &mu, n)?;
            if corrupt == Some(&(lam.clone(), mu.clone())) {
                want += Scalar::one();
            }
            exact_compare(&mut rep, &got, &want, || format!("N = {n}, λ = {lam}, μ = {mu}"));
        }
    }
    Ok(rep)
}

fn interp_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let q = &cfg.q;
    let d = cfg.max_degree;
    let ns = [2 * d, 3 * d, 4 * d];
    let step = q.pow(ns[1] as i64 - ns[0] as i64).to_f64();
    let schemes = [("A", NodeScheme::type_a(q)), ("BC", NodeScheme::type_bc(q, &qq(2, 1)))];
    let mut out = Vec::new();
    for (label, scheme) in &schemes {
        let exact = interp_limits(scheme, d)?;
        let shapes = enumerate_box(None, None, d.saturating_sub(1));
        let table: Vec<Vec<Approx>> = shapes
            .par_iter()
            .map(|mu| {
                ns.iter()
                    .map(|&n| Ok(sym_error(&interp_limit(scheme, mu, d, InterpMethod::Projection(n))?, &exact[mu])))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let base = |identity: &str, predicted: String| {
            Report::new(label, identity).param("q", q).param("D", d).param("N", format!("{ns:?}")).param("predicted_ratio", predicted)
        };
        let mut band = base("projections of I_{μ|N} converge to I_μ at rate q^N", format!("{step}"));
        band.tolerance = format!("ratio within [{:.3e}, {:.3e}]", 0.8 * step, 1.2 * step);
        // Level-N BC nodes mix s q^i with s^{-1} q^{N-1-i}, so node power sums carry N q^N
        // terms; this envelope allows for them without replacing the strict band above.
        let mut envelope = base("projection error ratios stay below 1.2 (N'/N) q^{N'-N}", "(N'/N) q^(N'-N)".into());
        let mut worst = 0.0f64;
        for (mu, errs) in shapes.iter().zip(&table) {
            band.cases += 1;
            envelope.cases += 1;
            if errs.iter().all(Approx::is_zero) {
                continue;
            }
            let shown = || errs.iter().map(|e| e.to_decimal(4)).collect::<Vec<_>>().join(", ");
            for (i, w) in errs.windows(2).enumerate() {
                let ratio = if w[0].is_zero() { f64::INFINITY } else { w[1].to_f64() / w[0].to_f64() };
                worst = worst.max((ratio / step - 1.0).abs());
                if !(0.8 * step..=1.2 * step).contains(&ratio) {
                    band.fail(format!("μ = {mu}: ratio {ratio:.4e}, errors [{}]", shown()));
                }
                let growth = ns[i + 1] as f64 / ns[i] as f64;
                if ratio > 1.2 * growth * step {
                    envelope.fail(format!("μ = {mu}: ratio {ratio:.4e}, errors [{}]", shown()));
                }
            }
        }
        band.max_error = format!("{worst:.4}");
        for rep in [&mut band, &mut envelope] {
            if rep.passed() {
                rep.status = Status::NumericPass;
            }
        }
        out.push(band);
        out.push(envelope);
    }
    Ok(out)
}

fn eigen_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for fp in family_fixtures(&cfg.q)?.into_iter().skip(1) {
        let mut rep = Report::new(fp.kind().tag(), "D phi_n = λ_n phi_n; monomial action = Laurent form").param("n_max", 6);
        for n in 0..=6 {
            let f = phi(n, &fp)?;
            let d = apply_operator(&fp, &f)?;
            rep.cases += 1;
            if d != f.scale(&eigenvalue(&fp, n)) {
                rep.fail(format!("eigen-equation, n = {n}"));
            }
            rep.cases += 1;
            if d != apply_operator_laurent(&fp, &f)? {
                rep.fail(format!("operator routes disagree, n = {n}"));
            }
        }
        out.push(rep);
    }
    let p = qracah_k3(&cfg.q)?;
    let w = p.window()?.clone();
    let fp = FamilyParams::QRacah(p.clone());
    let grid = qracah_grid(&w.zeta, &p.q, (w.r - 1..=w.l + 1).rev());
    let mut rep = Report::new("qr", "D phi_n = λ_n phi_n pointwise on the grid, n ≤ K").param("K", w.k());
    for n in 0..=w.k() {
        let f = phi_qracah(n, &p)?;
        let vals: Vec<Scalar> = grid.iter().map(|x| f.eval(x)).collect();
        let ev = eigenvalue(&fp, n);
        for (j, dv) in qracah_operator_on_grid(&p, &vals)?.iter().enumerate() {
            exact_compare(&mut rep, dv, &(&ev * &vals[j + 1]), || format!("n = {n}, m = {}", w.l - j as i64));
        }
    }
    out.push(rep);
    Ok(out)
}

impl From<&LimitReport> for Report {
    fn from(l: &LimitReport) -> Report {
        let mut rep = Report::new(&l.transition, &l.quantity)
            .param("path", l.path.join(" "))
            .param("errors", l.errors.iter().map(|e| e.to_decimal(4)).collect::<Vec<_>>().join(" "));
        if let Some(f) = l.fitted_ratio {
            rep = rep.param("fitted_ratio", format!("{f:.4}"));
        }
        if let Some(p) = l.predicted_ratio {
            rep = rep.param("predicted_ratio", format!("{p:.4}"));
            rep.tolerance = format!("ratio within {:.0}%", 100.0 * RATIO_BAND);
        }
        if let Some(n) = &l.note {
            rep = rep.param("note", n);
        }
        rep.cases = l.errors.len();
        rep.max_error = l.errors.last().map(|e| e.to_decimal(4)).unwrap_or_else(|| "0".into());
        rep.status = l.status;
        if !l.passed() {
            rep.failure = Some(if l.monotone {
                format!("fitted ratio {:?} vs predicted {:?}", l.fitted_ratio, l.predicted_ratio)
            } else {
                "errors not monotonically decreasing".into()
            });
        }
        rep
    }
}

/// The limit-transition experiments, each along a five-step path.
pub fn limit_reports(q: &Scalar) -> Result<Vec<LimitReport>> {
    let early: Vec<i64> = (4..9).collect();
    // bqJ → qM and qM → ASC carry corrections of order b q^{-2|λ|-1}; start later.
    let late: Vec<i64> = (12..17).collect();
    let shapes = [part(&[1]), part(&[2]), part(&[1, 1])];
    let mut out = Vec::new();
    for mu in &shapes {
        out.push(limit_bc_to_a(q, mu, 2, &early)?);
    }
    let bqj = BigQJacobiParams::new(q.clone(), qq(2, 1), qq(-1, 2), qq(5, 4), qq(3, 2))?;
    for lam in &shapes {
        out.push(limit_qr_to_bqj(lam, 2, &bqj, &early)?);
    }
    out.push(limit_qr_to_bqj_sigma(&part(&[2]), &part(&[1]), &bqj, &early)?);
    for n in 1..=4 {
        out.push(limit_qr_to_bqj_univariate(n, &bqj, &early)?);
    }
    let qm = QMeixnerParams::new(q.clone(), qq(2, 1), qq(3, 2), qq(5, 4))?;
    let asc = AscParams::new(q.clone(), qq(3, 2), qq(5, 4))?;
    let mut quantities: Vec<LimitQuantity> = shapes.iter().map(|l| LimitQuantity::Phi(l.clone())).collect();
    quantities.push(LimitQuantity::Sigma(part(&[1]), Partition::empty()));
    quantities.extend(shapes.iter().map(|l| LimitQuantity::Norm(l.clone())));
    for what in &quantities {
        out.push(limit_bqj_to_qm(what, 2, &qm, &qq(-1, 1), &late)?);
    }
    for what in &quantities {
        out.push(limit_qm_to_asc(what, 2, &asc, &qq(2, 1), AscAnchor::AlphaTimes, &late)?);
    }
    out.push(limit_bqj_to_asc_direct(&part(&[1]), &asc, &qq(2, 1), &qq(-1, 1), &late)?);
    Ok(out)
}

fn limits_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    Ok(limit_reports(&cfg.q)?.iter().map(Report::from).collect())
}

/// `⟨f_N(M'_N), Phi_λ⟩` for `λ ∈ {∅, (1), (2)}` and odd `N ≤ 2 max_n + 1`, on the K = 2 grid.
pub fn embedding_reports(cfg: &SuiteConfig) -> Result<Vec<LimitReport>> {
    let p = qracah_k2(&cfg.q)?;
    let ns: Vec<usize> = (3..=2 * cfg.max_n + 1).step_by(2).collect();
    measure_embedding_experiment(&p, &[Partition::empty(), part(&[1]), part(&[2])], &ns)
}

fn embedding_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let reps = embedding_reports(cfg)?;
    Ok(reps
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let mut r = Report::from(l);
            // λ = ∅ pairs with a probability measure, so anything short of exact is a failure.
            if i == 0 && l.status != Status::ExactPass {
                r.fail("pairing with Phi_[] is not exactly 1".into());
            }
            r
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_defaults() {
        let cfg = SuiteConfig::default();
        for name in SUITES {
            let t = std::time::Instant::now();
            let reps = run_suite(name, &cfg).unwrap();
            eprintln!("{name}: {:?}", t.elapsed());
            assert!(!reps.is_empty());
            for r in &reps {
                // The strict q^4 band is not met by the BC scheme; see `interp_bc_rate`.
                if name == "interp" && r.family == "BC" && r.identity.contains("rate q^N") {
                    continue;
                }
                assert!(r.passed(), "{name}: {r:?}");
            }
        }
    }

    #[test]
    fn interp_bc_rate() {
        let reps = run_suite("interp", &SuiteConfig::default()).unwrap();
        let find = |fam: &str, key: &str| reps.iter().find(|r| r.family == fam && r.identity.contains(key)).unwrap();
        assert_eq!(find("A", "rate q^N").status, Status::NumericPass);
        assert_eq!(find("A", "below").status, Status::NumericPass);
        // The N q^N component pushes some BC ratios out of the strict band at N = 8, 12, 16.
        assert_eq!(find("BC", "rate q^N").status, Status::Fail);
        assert_eq!(find("BC", "below").status, Status::NumericPass);
    }

    #[test]
    fn corrupted_sigma_is_located() {
        let cfg = SuiteConfig { corrupt_sigma: Some((part(&[2, 1]), part(&[1]))), ..SuiteConfig::default() };
        let reps = run_suite("sigma-n", &cfg).unwrap();
        assert!(reps.iter().all(|r| r.status == Status::Fail));
        let msg = reps[0].failure.as_ref().unwrap();
        assert!(msg.contains("λ = [2,1], μ = [1]"), "{msg}");
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("nope", &SuiteConfig::default()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = SuiteConfig::default();
        assert_eq!(run_suite("schur", &cfg).unwrap(), run_suite("schur", &cfg).unwrap());
        let other = SuiteConfig { seed: 7, ..SuiteConfig::default() };
        assert_ne!(run_suite("pochhammer", &cfg).unwrap()[0].params, run_suite("pochhammer", &other).unwrap()[0].params);
    }
}
