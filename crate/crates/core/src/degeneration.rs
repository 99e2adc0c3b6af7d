//! Limit transitions qR → bqJ → qM → ASC and BC → A, measured along explicit parameter
//! paths, plus the configuration-measure experiments.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Approx, Scalar, DEFAULT_PRECISION};
use crate::multivariate::{config_measure_qracah, NodeScheme, CONFIG_BUDGET};
use crate::params::{AscAnchor, AscParams, BigQJacobiParams, FamilyParams, QMeixnerParams, QRacahParams};
use crate::partition::Partition;
use crate::symfunc::{interp_limit, moment_e, norm_h, phi_family, sigma_coeff, InterpMethod, SymFuncTrunc};
use crate::univariate::{phi_bqj, phi_qracah, qracah_grid_point};
use crate::verify::Status;

/// Relative band around the predicted ratio inside which a fitted ratio passes.
pub const RATIO_BAND: f64 = 0.2;

/// Error table of one quantity along a parameter path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub transition: String,
    pub quantity: String,
    /// Path labels, e.g. `"M=4"`, in path order.
    pub path: Vec<String>,
    pub errors: Vec<Approx>,
    /// Error ratio per path step over the last three steps.
    pub fitted_ratio: Option<f64>,
    pub predicted_ratio: Option<f64>,
    pub monotone: bool,
    pub status: Status,
    pub note: Option<String>,
}

impl LimitReport {
    /// Builds the report and its verdict. Without a prediction only the decay is judged.
    pub fn from_errors(
        transition: &str,
        quantity: String,
        path: Vec<String>,
        errors: Vec<Approx>,
        predicted_ratio: Option<f64>,
    ) -> Self {
        let monotone = errors.windows(2).all(|w| w[1] < w[0] || (w[0].is_zero() && w[1].is_zero()));
        let mut note = None;
        let fitted_ratio = match errors.len() {
            0 | 1 => {
                note = Some("path too short for a ratio fit".into());
                None
            }
            n => {
                let k = n.min(3);
                let (first, last) = (&errors[n - k], &errors[n - 1]);
                if first.is_zero() || last.is_zero() {
                    None
                } else {
                    Some((last.to_f64() / first.to_f64()).powf(1.0 / (k - 1) as f64))
                }
            }
        };
        let status = if errors.iter().all(Approx::is_zero) {
            Status::ExactPass
        } else if !monotone {
            Status::Fail
        } else {
            match (fitted_ratio, predicted_ratio) {
                (Some(f), Some(p)) if (f / p - 1.0).abs() > RATIO_BAND => Status::Fail,
                _ => Status::NumericPass,
            }
        };
        LimitReport {
            transition: transition.into(),
            quantity,
            path,
            errors,
            fitted_ratio,
            predicted_ratio,
            monotone,
            status,
            note,
        }
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}

/// `|z|` at the default precision; exact up to rounding for real `z`.
pub fn modulus(z: &Scalar) -> Approx {
    match z.abs_real() {
        Ok(r) => Approx::from_scalar(&r, DEFAULT_PRECISION).expect("real"),
        Err(_) => Approx::from_f64(Scalar::real(z.norm_sqr()).to_f64().sqrt(), DEFAULT_PRECISION),
    }
}

/// Largest coefficientwise modulus of `a - b` in the Schur basis.
pub fn sym_error(a: &SymFuncTrunc, b: &SymFuncTrunc) -> Approx {
    a.sub(b).coeffs().values().map(modulus).fold(Approx::zero(DEFAULT_PRECISION), |m, e| if e > m { e } else { m })
}

fn scalar_error(a: &Scalar, b: &Scalar) -> Approx {
    modulus(&(a - b))
}

fn labels(path: &[i64]) -> Vec<String> {
    path.iter().map(|m| format!("M={m}")).collect()
}

fn run_path<T: Send>(path: &[i64], f: impl Fn(i64) -> Result<T> + Sync) -> Result<Vec<T>> {
    path.par_iter().map(|&m| f(m)).collect()
}

/// `ε^{|μ|} I^{BC}_μ(X/ε; q; ε) → I^A_μ(X; q)` along `ε = q^M`, with error `O(ε²)`.
pub fn limit_bc_to_a(q: &Scalar, mu: &Partition, max_degree: usize, path: &[i64]) -> Result<LimitReport> {
    let target = interp_limit(&NodeScheme::type_a(q), mu, max_degree, InterpMethod::Cauchy)?;
    let errors = run_path(path, |m| {
        let eps = q.pow(m);
        let bc = interp_limit(&NodeScheme::type_bc(q, &eps), mu, max_degree, InterpMethod::Cauchy)?;
        Ok(sym_error(&bc.scale_argument(&eps.inv()).scale(&eps.pow(mu.size() as i64)), &target))
    })?;
    Ok(LimitReport::from_errors("bc-to-a", format!("I_{mu}"), labels(path), errors, Some(q.pow(2).to_f64())))
}

/// The q-Racah quadruple `(εc, εd, -q/(εa), -q/(εb))` with `ε = q^{M+1}/√(-ab)`, and `ε`.
///
/// Exact only when `-ab` is a rational square. When the quadruple is admissible its window
/// `ζ = √(-b/a)`, `L = M`, `R = -M` is attached.
pub fn qr_from_bqj(p: &BigQJacobiParams, m: i64) -> Result<(QRacahParams, Scalar)> {
    let q = &p.q;
    let root = (-(&p.a * &p.b))
        .sqrt_exact()
        .ok_or_else(|| Error::Unsupported(format!("-ab = {} is not a rational square", -(&p.a * &p.b))))?;
    let eps = q.pow(m + 1) / &root;
    let s = [&eps * &p.c, &eps * &p.d, -(q / &(&eps * &p.a)), -(q / &(&eps * &p.b))];
    let zeta = (-(&p.b / &p.a)).sqrt_exact();
    let windowed = zeta.and_then(|z| QRacahParams::admissible(q.clone(), z, m, -m, s[0].clone(), s[1].clone()).ok());
    let qr = match windowed {
        Some(w) if w.s == s => w,
        _ => QRacahParams::new(q.clone(), s)?,
    };
    Ok((qr, eps))
}

/// `ε^{|λ|} Φ^{qR}_λ(X/ε; εc, εd, -q/(εa), -q/(εb)) → Φ^{bqJ}_λ(X; a, b, c, d)`.
pub fn limit_qr_to_bqj(lambda: &Partition, max_degree: usize, p: &BigQJacobiParams, path: &[i64]) -> Result<LimitReport> {
    let target = phi_family(&FamilyParams::BigQJacobi(p.clone()), lambda, max_degree)?;
    let errors = run_path(path, |m| {
        let (qr, eps) = qr_from_bqj(p, m)?;
        let f = phi_family(&FamilyParams::QRacah(qr), lambda, max_degree)?;
        Ok(sym_error(&f.scale_argument(&eps.inv()).scale(&eps.pow(lambda.size() as i64)), &target))
    })?;
    Ok(LimitReport::from_errors("qr-to-bqj", format!("Phi_{lambda}"), labels(path), errors, Some(p.q.pow(2).to_f64())))
}

/// `ε^{|λ|-|μ|} σ^{qR}(λ, μ) → c^{|μ|} σ^{bqJ}(λ, μ)` along the same dictionary.
pub fn limit_qr_to_bqj_sigma(
    lambda: &Partition,
    mu: &Partition,
    p: &BigQJacobiParams,
    path: &[i64],
) -> Result<LimitReport> {
    let target = p.c.pow(mu.size() as i64) * sigma_coeff(&FamilyParams::BigQJacobi(p.clone()), lambda, mu)?;
    let errors = run_path(path, |m| {
        let (qr, eps) = qr_from_bqj(p, m)?;
        let s = sigma_coeff(&FamilyParams::QRacah(qr), lambda, mu)?;
        Ok(scalar_error(&(eps.pow(lambda.size() as i64 - mu.size() as i64) * s), &target))
    })?;
    Ok(LimitReport::from_errors(
        "qr-to-bqj",
        format!("sigma({lambda}, {mu})"),
        labels(path),
        errors,
        Some(p.q.pow(2).to_f64()),
    ))
}

/// Univariate limit `ε^n φ^{qR}_n(x/ε; …) → φ^{bqJ}_n(x)`, coefficientwise.
pub fn limit_qr_to_bqj_univariate(n: usize, p: &BigQJacobiParams, path: &[i64]) -> Result<LimitReport> {
    let target = phi_bqj(n, p)?;
    let errors = run_path(path, |m| {
        let (qr, eps) = qr_from_bqj(p, m)?;
        let f = phi_qracah(n, &qr)?.rescale_var(&eps.inv()).scale(&eps.pow(n as i64));
        Ok(modulus(&f.max_coeff_diff(&target)))
    })?;
    Ok(LimitReport::from_errors("qr-to-bqj", format!("phi_{n}"), labels(path), errors, Some(p.q.pow(2).to_f64())))
}

fn bqj_at(p: &QMeixnerParams, beta: &Scalar, m: i64) -> Result<FamilyParams> {
    Ok(FamilyParams::BigQJacobi(BigQJacobiParams::new(
        p.q.clone(),
        p.a.clone(),
        beta * &p.q.pow(m),
        p.c.clone(),
        p.d.clone(),
    )?))
}

/// What a transition compares along its path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitQuantity {
    Phi(Partition),
    Sigma(Partition, Partition),
    Norm(Partition),
}

impl LimitQuantity {
    fn label(&self) -> String {
        match self {
            LimitQuantity::Phi(l) => format!("Phi_{l}"),
            LimitQuantity::Sigma(l, m) => format!("sigma({l}, {m})"),
            LimitQuantity::Norm(l) => format!("h_{l}"),
        }
    }

    fn error(&self, got: &FamilyParams, want: &FamilyParams, max_degree: usize) -> Result<Approx> {
        Ok(match self {
            LimitQuantity::Phi(l) => sym_error(&phi_family(got, l, max_degree)?, &phi_family(want, l, max_degree)?),
            LimitQuantity::Sigma(l, m) => scalar_error(&sigma_coeff(got, l, m)?, &sigma_coeff(want, l, m)?),
            LimitQuantity::Norm(l) => scalar_error(&norm_h(got, l)?, &norm_h(want, l)?),
        })
    }
}

/// bqJ `(a, βq^M, c, d)` → qM `(a, c, d)`, error `O(q^M)`.
pub fn limit_bqj_to_qm(what: &LimitQuantity, max_degree: usize, p: &QMeixnerParams, beta: &Scalar, path: &[i64]) -> Result<LimitReport> {
    let target = FamilyParams::QMeixner(p.clone());
    let errors = run_path(path, |m| what.error(&bqj_at(p, beta, m)?, &target, max_degree))?;
    Ok(LimitReport::from_errors("bqj-to-qm", what.label(), labels(path), errors, Some(p.q.to_f64())))
}

/// `a` on the path toward zero for the chosen anchor convention.
pub fn asc_path_a(alpha: &Scalar, q: &Scalar, m: i64, anchor: AscAnchor) -> Scalar {
    match anchor {
        AscAnchor::AlphaTimes => alpha * &q.pow(m),
        AscAnchor::AlphaInverse => alpha.inv() * q.pow(m),
    }
}

/// qM `(a(M), c, d)` → ASC `(c, d)`, error `O(q^M)`.
pub fn limit_qm_to_asc(
    what: &LimitQuantity,
    max_degree: usize,
    p: &AscParams,
    alpha: &Scalar,
    anchor: AscAnchor,
    path: &[i64],
) -> Result<LimitReport> {
    let target = FamilyParams::AlSalamCarlitz(p.clone());
    let errors = run_path(path, |m| {
        let qm = QMeixnerParams::new(p.q.clone(), asc_path_a(alpha, &p.q, m, anchor), p.c.clone(), p.d.clone())?;
        what.error(&FamilyParams::QMeixner(qm), &target, max_degree)
    })?;
    Ok(LimitReport::from_errors("qm-to-asc", what.label(), labels(path), errors, Some(p.q.to_f64())))
}

/// Direct path bqJ `(αq^M, βq^{2M}, c, d)` → ASC `(c, d)`, for comparison with the
/// composition of the two one-parameter limits.
pub fn limit_bqj_to_asc_direct(lambda: &Partition, p: &AscParams, alpha: &Scalar, beta: &Scalar, path: &[i64]) -> Result<LimitReport> {
    let q = &p.q;
    let target = phi_family(&FamilyParams::AlSalamCarlitz(p.clone()), lambda, lambda.size())?;
    let errors = run_path(path, |m| {
        let b = BigQJacobiParams::new(q.clone(), alpha * &q.pow(m), beta * &q.pow(2 * m), p.c.clone(), p.d.clone())?;
        Ok(sym_error(&phi_family(&FamilyParams::BigQJacobi(b), lambda, lambda.size())?, &target))
    })?;
    Ok(LimitReport::from_errors("bqj-to-asc", format!("Phi_{lambda}"), labels(path), errors, Some(q.to_f64())))
}

/// `f_N`: the order-preserving embedding of the rescaled finite grid into the infinite one.
/// Grid index `i` carries `m = L' - i`, where `L' = L + (N-1)/2`.
pub fn embedding_point(zeta: &Scalar, q: &Scalar, m: i64, n: usize) -> Scalar {
    let h = (n as i64 - 1) / 2;
    if m >= 0 {
        -(zeta.inv() * q.pow(-m + h))
    } else {
        zeta * &q.pow(m + h)
    }
}

/// Pairings `⟨f_N(M'_N), Φ^{qR}_λ⟩` for each odd `N`, one row per `λ`.
pub fn measure_embedding_pairings(p: &QRacahParams, lambdas: &[Partition], ns: &[usize]) -> Result<Vec<Vec<Scalar>>> {
    let w = p.window()?.clone();
    let fp = FamilyParams::QRacah(p.clone());
    let phis: Vec<SymFuncTrunc> = lambdas.iter().map(|l| phi_family(&fp, l, l.size())).collect::<Result<_>>()?;
    let mut rows = vec![Vec::new(); lambdas.len()];
    for &n in ns {
        if n % 2 == 0 {
            return Err(Error::InvalidArgument(format!("N must be odd, got {n}")));
        }
        let measure = config_measure_qracah(p, n, CONFIG_BUDGET)?;
        let lp = w.l + (n as i64 - 1) / 2;
        let scale = p.q.pow((n as i64 - 1) / 2);
        let image: Vec<Scalar> = (0..measure.grid.len())
            .map(|i| {
                let m = lp - i as i64;
                debug_assert_eq!(measure.grid[i], qracah_grid_point(&w.zeta, &p.q, m) * &scale);
                embedding_point(&w.zeta, &p.q, m, n)
            })
            .collect();
        for (row, phi) in rows.iter_mut().zip(&phis) {
            let f = phi.restrict(n);
            let total: Scalar = (0..measure.configurations.len())
                .into_par_iter()
                .map(|c| {
                    let pts: Vec<Scalar> = measure.configurations[c].iter().map(|&i| image[i].clone()).collect();
                    f.eval(&pts) * &measure.weights[c]
                })
                .collect::<Vec<_>>()
                .into_iter()
                .sum();
            row.push(total);
        }
    }
    Ok(rows)
}

/// The embedding experiment as reports: `λ = ∅` must pair to 1 exactly, other `λ` must
/// decay toward 0. Only the trend is judged.
pub fn measure_embedding_experiment(p: &QRacahParams, lambdas: &[Partition], ns: &[usize]) -> Result<Vec<LimitReport>> {
    let rows = measure_embedding_pairings(p, lambdas, ns)?;
    let path: Vec<String> = ns.iter().map(|n| format!("N={n}")).collect();
    Ok(lambdas
        .iter()
        .zip(rows)
        .map(|(lam, row)| {
            let target = if lam.is_empty() { Scalar::one() } else { Scalar::zero() };
            let errors = row.iter().map(|v| scalar_error(v, &target)).collect();
            LimitReport::from_errors("qr-measure-embedding", format!("<f_N(M'_N), Phi_{lam}>"), path.clone(), errors, None)
        })
        .collect())
}

/// Which degeneration the measure experiment follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasureTransition {
    BqjToQm,
    QmToAsc,
}

/// Exploratory: pairings of the source family's orthogonality measure with the target
/// family's `Φ_λ` along the path.
///
/// The source measure pairs with every symmetric function through its moment functional
/// (`⟨M, Φ^{src}_ν⟩ = δ_{ν∅}`), so the pairing with `Φ^{tgt}_λ` is `E^{src}(Φ^{tgt}_λ)` and
/// is computed exactly. Pairings with `Sym` cannot see the choice of grid anchor.
pub fn measure_degeneration_experiment(
    transition: MeasureTransition,
    target: &FamilyParams,
    anchor: &Scalar,
    lambdas: &[Partition],
    path: &[i64],
) -> Result<Vec<LimitReport>> {
    let source = |m: i64| -> Result<FamilyParams> {
        match (transition, target) {
            (MeasureTransition::BqjToQm, FamilyParams::QMeixner(p)) => bqj_at(p, anchor, m),
            (MeasureTransition::QmToAsc, FamilyParams::AlSalamCarlitz(p)) => Ok(FamilyParams::QMeixner(QMeixnerParams::new(
                p.q.clone(),
                anchor * &p.q.pow(m),
                p.c.clone(),
                p.d.clone(),
            )?)),
            _ => Err(Error::InvalidArgument("target family does not match the transition".into())),
        }
    };
    let name = match transition {
        MeasureTransition::BqjToQm => "bqj-to-qm-measure",
        MeasureTransition::QmToAsc => "qm-to-asc-measure",
    };
    lambdas
        .iter()
        .map(|lam| {
            let phi = phi_family(target, lam, lam.size())?;
            let want = if lam.is_empty() { Scalar::one() } else { Scalar::zero() };
            let errors = run_path(path, |m| Ok(scalar_error(&moment_e(&source(m)?, &phi)?, &want)))?;
            let mut rep = LimitReport::from_errors(name, format!("<M, Phi_{lam}>"), labels(path), errors, None);
            rep.note = Some("exploratory".into());
            Ok(rep)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qq;
    use crate::partition::part;

    fn path() -> Vec<i64> {
        (4..9).collect()
    }

    fn bqj() -> BigQJacobiParams {
        BigQJacobiParams::new(qq(1, 2), qq(2, 1), qq(-1, 2), qq(5, 4), qq(3, 2)).unwrap()
    }

    #[test]
    fn bc_to_a() {
        let q = qq(1, 2);
        let r = limit_bc_to_a(&q, &Partition::empty(), 2, &path()).unwrap();
        assert_eq!(r.status, Status::ExactPass);
        let r = limit_bc_to_a(&q, &part(&[1]), 1, &path()).unwrap();
        // error is exactly ε²/(1-q)
        assert_eq!(r.errors[0], modulus(&(q.pow(8) / qq(1, 2))));
        assert!(r.passed(), "{r:?}");
        assert!(limit_bc_to_a(&q, &part(&[2, 1]), 3, &path()).unwrap().passed());
    }

    #[test]
    fn qr_to_bqj_dictionary() {
        let (qr, eps) = qr_from_bqj(&bqj(), 3).unwrap();
        assert_eq!(eps, qq(1, 16));
        let w = qr.window().unwrap();
        assert_eq!((w.zeta.clone(), w.l, w.r), (qq(1, 2), 3, -3));
        let bad = BigQJacobiParams::new(qq(1, 2), qq(3, 1), qq(-1, 2), qq(5, 4), qq(3, 2)).unwrap();
        assert!(matches!(qr_from_bqj(&bad, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn qr_to_bqj_limits() {
        let p = bqj();
        assert_eq!(limit_qr_to_bqj(&Partition::empty(), 0, &p, &path()).unwrap().status, Status::ExactPass);
        for lam in [part(&[1]), part(&[2]), part(&[1, 1])] {
            let r = limit_qr_to_bqj(&lam, 2, &p, &path()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = limit_qr_to_bqj_sigma(&part(&[2, 1]), &part(&[1]), &p, &path()).unwrap();
        assert!(r.passed(), "{r:?}");
        for n in 1..=4 {
            let r = limit_qr_to_bqj_univariate(n, &p, &path()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn bqj_to_qm_and_qm_to_asc() {
        let q = qq(1, 2);
        let qm = QMeixnerParams::new(q.clone(), qq(2, 1), qq(3, 2), qq(5, 4)).unwrap();
        let asc = AscParams::new(q.clone(), qq(3, 2), qq(5, 4)).unwrap();
        for what in [
            LimitQuantity::Phi(part(&[1])),
            LimitQuantity::Phi(part(&[1, 1])),
            LimitQuantity::Sigma(part(&[1]), Partition::empty()),
            LimitQuantity::Norm(part(&[2])),
        ] {
            // Norms carry corrections of order b q^{-2|λ|-1}, so their path starts later.
            let late: Vec<i64> = (12..17).collect();
            let r = limit_bqj_to_qm(&what, 2, &qm, &qq(-1, 1), &late).unwrap();
            assert!(r.passed(), "{r:?}");
            let r = limit_qm_to_asc(&what, 2, &asc, &qq(2, 1), AscAnchor::AlphaTimes, &late).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = limit_bqj_to_qm(&LimitQuantity::Phi(Partition::empty()), 0, &qm, &qq(-1, 1), &path()).unwrap();
        assert_eq!(r.status, Status::ExactPass);
    }

    #[test]
    fn short_paths_and_bad_ratios() {
        let r = LimitReport::from_errors("t", "x".into(), vec!["M=1".into()], vec![Approx::from_f64(0.5, 128)], Some(0.5));
        assert!(r.fitted_ratio.is_none() && r.note.is_some() && r.passed());
        let e = [1.0, 0.5, 0.25].map(|v| Approx::from_f64(v, 128)).to_vec();
        let r = LimitReport::from_errors("t", "x".into(), vec![String::new(); 3], e, Some(0.25));
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn embedding_is_order_preserving() {
        let (zeta, q) = (qq(1, 1), qq(1, 2));
        for n in [1usize, 3, 5] {
            let (l, r) = (1 + (n as i64 - 1) / 2, -1 - (n as i64 - 1) / 2);
            let pts: Vec<Scalar> = (r..=l).rev().map(|m| embedding_point(&zeta, &q, m, n)).collect();
            assert!(pts.windows(2).all(|w| w[0].partial_cmp_real(&w[1]) == Some(std::cmp::Ordering::Less)));
        }
    }

    #[test]
    fn embedding_experiment_small() {
        let p = QRacahParams::admissible(qq(1, 2), qq(1, 1), 1, -1, qq(3, 5), qq(4, 5)).unwrap();
        let reps = measure_embedding_experiment(&p, &[Partition::empty(), part(&[1])], &[1, 3, 5]).unwrap();
        assert_eq!(reps[0].status, Status::ExactPass);
        assert!(reps[1].passed(), "{:?}", reps[1]);
    }

    #[test]
    fn measure_degeneration_trends() {
        let q = qq(1, 2);
        let qm = FamilyParams::QMeixner(QMeixnerParams::new(q.clone(), qq(2, 1), qq(3, 2), qq(5, 4)).unwrap());
        let lams = [Partition::empty(), part(&[1])];
        let reps = measure_degeneration_experiment(MeasureTransition::BqjToQm, &qm, &qq(-1, 1), &lams, &path()).unwrap();
        assert_eq!(reps[0].status, Status::ExactPass);
        assert!(reps[1].monotone);
        let asc = FamilyParams::AlSalamCarlitz(AscParams::new(q, qq(3, 2), qq(5, 4)).unwrap());
        let reps = measure_degeneration_experiment(MeasureTransition::QmToAsc, &asc, &qq(2, 1), &lams, &path()).unwrap();
        assert!(reps[1].monotone);
        assert!(measure_degeneration_experiment(MeasureTransition::QmToAsc, &qm, &qq(2, 1), &lams, &path()).is_err());
    }

    #[test]
    fn direct_path_agrees_with_composition() {
        let q = qq(1, 2);
        let asc = AscParams::new(q.clone(), qq(3, 2), qq(5, 4)).unwrap();
        let r = limit_bqj_to_asc_direct(&part(&[1]), &asc, &qq(2, 1), &qq(-1, 1), &path()).unwrap();
        assert!(r.monotone, "{r:?}");
    }
}
