//! Monic univariate q-Racah, big q-Jacobi, q-Meixner and Al-Salam–Carlitz polynomials,
//! their q-difference operators, grids and orthogonality weights.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{qfact, qpoch, qpoch_infinite_many, qpoch_signed, Approx, Scalar};
use crate::params::{AscParams, BigQJacobiParams, FamilyParams, QMeixnerParams, QRacahParams};
use crate::polyseries::{Nodes, UniPoly};
use crate::verify::{Report, Status};

fn checked_inv(x: &Scalar, what: &str) -> Result<Scalar> {
    x.checked_inv().map_err(|_| Error::SingularParameters(format!("{what} vanishes")))
}

/// `(c x; q)_k` as a polynomial in `x`.
fn cx_poch(c: &Scalar, q: &Scalar, k: usize) -> UniPoly {
    let mut p = UniPoly::one();
    let mut t = c.clone();
    for _ in 0..k {
        p = &p * &UniPoly::from_coeffs(vec![Scalar::one(), -&t]);
        t = &t * q;
    }
    p
}

fn binom2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// Newton nodes `s^{-1} q^{-k} - s q^k` of the q-Racah expansion; `(s v, -s/v; q)_k` is a
/// multiple of the Newton power in `x = v - 1/v` on these nodes.
pub fn qracah_nodes(q: &Scalar, s0: &Scalar) -> Nodes {
    let (q, s, si) = (q.clone(), s0.clone(), s0.inv());
    Nodes::rule(move |k| &si * &q.pow(-(k as i64)) - &s * &q.pow(k as i64))
}

/// Coefficient of the `m`-th Newton power in `φ^{qR}_ℓ`.
pub fn qracah_newton_coeff(l: usize, m: usize, p: &QRacahParams) -> Result<Scalar> {
    if m > l {
        return Ok(Scalar::zero());
    }
    let (q, s0) = (&p.q, &p.s[0]);
    let d = l - m;
    let qm = q.pow(m as i64);
    let num: Scalar = (1..4).map(|i| qpoch(&-(s0 * &p.s[i] * &qm), q, d)).product();
    let chi_shift = p.chi() * q.pow(l as i64 + m as i64 - 1);
    let den = q.pow((m * d) as i64) * s0.pow(d as i64) * qfact(q, d) * qpoch(&chi_shift, q, d);
    Ok(qfact(q, l) / qfact(q, m) * num * checked_inv(&den, "(χ q^{ℓ+m-1}; q)_{ℓ-m}")?)
}

pub fn phi_qracah(n: usize, p: &QRacahParams) -> Result<UniPoly> {
    let a: Vec<Scalar> = (0..=n).map(|m| qracah_newton_coeff(n, m, p)).collect::<Result<_>>()?;
    UniPoly::from_newton(&a, &qracah_nodes(&p.q, &p.s[0]))
}

/// Terminating ₃φ₂ with the `(cq/a, cq/b; q)_n` prefactor folded into each term, so that
/// a vanishing `(cq/a; q)_k` never has to be divided out.
pub fn phi_bqj(n: usize, p: &BigQJacobiParams) -> Result<UniPoly> {
    let (q, a, b, c) = (&p.q, &p.a, &p.b, &p.c);
    let z = p.cd_over_ab() * q.pow(n as i64 + 1);
    let qn = q.pow(-(n as i64));
    let den = c.pow(n as i64) * qpoch(&z, q, n);
    let mut acc = UniPoly::zero();
    for k in 0..=n {
        let ck = c * &q.pow(k as i64 + 1);
        let coef = qpoch(&(&ck / a), q, n - k)
            * qpoch(&(&ck / b), q, n - k)
            * qpoch(&qn, q, k)
            * qpoch(&z, q, k)
            * q.pow(k as i64)
            / qfact(q, k);
        acc = &acc + &cx_poch(c, q, k).scale(&coef);
    }
    Ok(acc.scale(&checked_inv(&den, "c^n (cdq^{n+1}/(ab); q)_n")?))
}

pub fn phi_qm(n: usize, p: &QMeixnerParams) -> Result<UniPoly> {
    let (q, a, c, d) = (&p.q, &p.a, &p.c, &p.d);
    let z = d / a * q.pow(n as i64 + 1);
    let qn = q.pow(-(n as i64));
    let mut acc = UniPoly::zero();
    for k in 0..=n {
        let coef = qpoch(&(c * &q.pow(k as i64 + 1) / a), q, n - k) * qpoch(&qn, q, k) * z.pow(k as i64) / qfact(q, k);
        acc = &acc + &cx_poch(c, q, k).scale(&coef);
    }
    let pref = (a / (c * d * q.pow(n as i64))).pow(n as i64);
    Ok(acc.scale(&pref))
}

/// The ₂φ₀ representation, with argument `(d/c) q^n`.
pub fn phi_asc(n: usize, p: &AscParams) -> Result<UniPoly> {
    let (q, c, d) = (&p.q, &p.c, &p.d);
    let z = d / c * q.pow(n as i64);
    let qn = q.pow(-(n as i64));
    let mut acc = UniPoly::zero();
    for k in 0..=n {
        let sign = if k % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
        let coef = qpoch(&qn, q, k) / qfact(q, k) * sign * q.pow(-binom2(k)) * z.pow(k as i64);
        acc = &acc + &cx_poch(c, q, k).scale(&coef);
    }
    let sign = if n.is_multiple_of(2) { Scalar::one() } else { Scalar::from_int(-1) };
    let pref = sign * d.pow(-(n as i64)) * q.pow(-binom2(n));
    Ok(acc.scale(&pref))
}

pub fn phi(n: usize, params: &FamilyParams) -> Result<UniPoly> {
    match params {
        FamilyParams::QRacah(p) => phi_qracah(n, p),
        FamilyParams::BigQJacobi(p) => phi_bqj(n, p),
        FamilyParams::QMeixner(p) => phi_qm(n, p),
        FamilyParams::AlSalamCarlitz(p) => phi_asc(n, p),
    }
}

/// Eigenvalue of the family's operator on `φ_n`.
pub fn eigenvalue(params: &FamilyParams, n: usize) -> Scalar {
    let one = Scalar::one();
    let q = params.q();
    let qn = q.pow(n as i64);
    match params {
        FamilyParams::QRacah(p) => q.pow(-(n as i64)) * (&one - &qn) * (p.chi() * q.pow(n as i64 - 1) - &one),
        FamilyParams::BigQJacobi(p) => {
            -(q.pow(-(n as i64)) - &one) * (p.cd_over_ab() * q.pow(n as i64 + 1) - &one)
        }
        FamilyParams::QMeixner(QMeixnerParams { c, d, .. }) | FamilyParams::AlSalamCarlitz(AscParams { c, d, .. }) => {
            c * d * (qn - one)
        }
    }
}

/// Image of `x^n` under the operator: coefficients of `x^n`, `x^{n-1}`, `x^{n-2}`.
pub fn monomial_action(params: &FamilyParams, n: usize) -> Result<[Scalar; 3]> {
    let one = Scalar::one();
    let q = params.q();
    let up = q.pow(n as i64) - &one;
    let down = q.pow(-(n as i64)) - &one;
    let c0 = eigenvalue(params, n);
    match params {
        FamilyParams::QRacah(_) => {
            Err(Error::Unsupported("the q-Racah operator acts on grid functions; use qracah_operator_on_grid".into()))
        }
        FamilyParams::BigQJacobi(p) => {
            let qab = q / (&p.a * &p.b);
            let c1 = -(&qab * &(&p.c + &p.d) * &up) - &qab * &(&p.a + &p.b) * &down;
            let c2 = &qab * &up + &qab * q * &down;
            Ok([c0, c1, c2])
        }
        FamilyParams::QMeixner(p) => {
            let c1 = -(&(&p.c + &p.d) * &up) - &p.a * &down;
            let c2 = &up + &(q * &down);
            Ok([c0, c1, c2])
        }
        FamilyParams::AlSalamCarlitz(p) => {
            let c1 = -(&(&p.c + &p.d) * &up);
            let c2 = &up + &(q * &down);
            Ok([c0, c1, c2])
        }
    }
}

/// `D f` from the monomial actions.
pub fn apply_operator(params: &FamilyParams, f: &UniPoly) -> Result<UniPoly> {
    let mut out = vec![Scalar::zero(); f.coeffs().len()];
    for (n, fc) in f.coeffs().iter().enumerate() {
        if fc.is_zero() {
            continue;
        }
        let act = monomial_action(params, n)?;
        for (shift, a) in act.iter().enumerate() {
            if n >= shift {
                out[n - shift] += fc * a;
            }
        }
    }
    Ok(UniPoly::from_coeffs(out))
}

/// Laurent polynomial as `(power, coefficient)` pairs.
type Laurent = Vec<(i64, Scalar)>;

fn operator_coefficients(params: &FamilyParams) -> Result<(Laurent, Laurent)> {
    let one = Scalar::one();
    match params {
        FamilyParams::BigQJacobi(p) => {
            let (q, a, b, c, d) = (&p.q, &p.a, &p.b, &p.c, &p.d);
            let k = c * d * q / (a * b);
            let plus = vec![(0, k.clone()), (-1, -(&k * &(c.inv() + d.inv()))), (-2, &k / &(c * d))];
            let minus = vec![(0, one), (-1, -(q * &(a.inv() + b.inv()))), (-2, q * q / (a * b))];
            Ok((plus, minus))
        }
        FamilyParams::QMeixner(QMeixnerParams { q, a, c, d, .. }) => {
            let plus = vec![(0, c * d), (-1, -(c + d)), (-2, one)];
            Ok((plus, vec![(-1, -a.clone()), (-2, q.clone())]))
        }
        FamilyParams::AlSalamCarlitz(AscParams { q, c, d, .. }) => {
            let plus = vec![(0, c * d), (-1, -(c + d)), (-2, one)];
            Ok((plus, vec![(-2, q.clone())]))
        }
        FamilyParams::QRacah(_) => Err(Error::Unsupported("no Laurent form for the q-Racah operator".into())),
    }
}

/// `D f = A_+(x) (f(qx) - f(x)) + A_-(x) (f(x/q) - f(x))` expanded directly from the
/// Laurent coefficients `A_±`; an independent route to [`apply_operator`].
pub fn apply_operator_laurent(params: &FamilyParams, f: &UniPoly) -> Result<UniPoly> {
    let (plus, minus) = operator_coefficients(params)?;
    let q = params.q();
    let mut terms: std::collections::BTreeMap<i64, Scalar> = Default::default();
    for (n, fc) in f.coeffs().iter().enumerate() {
        let up = q.pow(n as i64) - Scalar::one();
        let down = q.pow(-(n as i64)) - Scalar::one();
        for (a, scale) in [(&plus, &up), (&minus, &down)] {
            for (e, c) in a {
                *terms.entry(n as i64 + e).or_insert_with(Scalar::zero) += fc * c * scale;
            }
        }
    }
    let mut out = Vec::new();
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        if e < 0 {
            return Err(Error::InvalidArgument(format!("operator produced x^{e}")));
        }
        let e = e as usize;
        if out.len() <= e {
            out.resize(e + 1, Scalar::zero());
        }
        out[e] = c;
    }
    Ok(UniPoly::from_coeffs(out))
}

/// Point `y_m = ζ q^m - ζ^{-1} q^{-m}` of the q-Racah grid.
pub fn qracah_grid_point(zeta: &Scalar, q: &Scalar, m: i64) -> Scalar {
    zeta * &q.pow(m) - zeta.inv() * q.pow(-m)
}

/// Grid points for `m` running over `ms`, in the given order.
pub fn qracah_grid(zeta: &Scalar, q: &Scalar, ms: impl IntoIterator<Item = i64>) -> Vec<Scalar> {
    ms.into_iter().map(|m| qracah_grid_point(zeta, q, m)).collect()
}

/// Forward coefficient `β_m` of the grid operator.
pub fn qracah_beta(p: &QRacahParams, zeta: &Scalar, m: i64) -> Scalar {
    let q = &p.q;
    let t = zeta * &q.pow(m);
    let num: Scalar = p.s.iter().map(|s| Scalar::one() - s * &t).product();
    let z2 = zeta * zeta;
    let den = (Scalar::one() + &z2 * &q.pow(2 * m)) * (Scalar::one() + &z2 * &q.pow(2 * m + 1));
    -(num / den)
}

/// Backward coefficient `δ_m` of the grid operator.
pub fn qracah_delta(p: &QRacahParams, zeta: &Scalar, m: i64) -> Scalar {
    let q = &p.q;
    let t = zeta.inv() * q.pow(-m);
    let num: Scalar = p.s.iter().map(|s| Scalar::one() + s * &t).product();
    let z2 = (zeta * zeta).inv();
    let den = (Scalar::one() + &z2 * &q.pow(-2 * m)) * (Scalar::one() + &z2 * &q.pow(-2 * m + 1));
    -(num / den)
}

/// `(D f)(y_m) = β_m [f(y_{m+1}) - f(y_m)] + δ_m [f(y_{m-1}) - f(y_m)]` for `m = L, …, R`.
///
/// `values[j]` is `f(y_{L+1-j})`, so the slice runs over the window plus one ghost node
/// on each side (`K + 3` values). The result is ordered `m = L, L-1, …, R`.
pub fn qracah_operator_on_grid(p: &QRacahParams, values: &[Scalar]) -> Result<Vec<Scalar>> {
    let w = p.window()?;
    let k = w.k();
    if values.len() != k + 3 {
        return Err(Error::InvalidArgument(format!("expected {} grid values, got {}", k + 3, values.len())));
    }
    Ok((0..=k)
        .map(|j| {
            let m = w.l - j as i64;
            let (next, here, prev) = (&values[j], &values[j + 1], &values[j + 2]);
            qracah_beta(p, &w.zeta, m) * (next - here) + qracah_delta(p, &w.zeta, m) * (prev - here)
        })
        .collect())
}

/// Weighted finite grid: nodes in increasing order with their weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeasure<W> {
    pub nodes: Vec<Scalar>,
    pub weights: Vec<W>,
    /// Bound on the discarded mass of `(1 + |x|)^p w(x)` outside the window, normalized.
    pub tail_bound: Option<Approx>,
    /// Degree `p` the tail bound was certified for.
    pub moment_degree: usize,
}

impl GridMeasure<Scalar> {
    pub fn total(&self) -> Scalar {
        self.weights.iter().cloned().sum()
    }

    /// `Σ f(x) w(x)`, exact.
    pub fn integrate(&self, f: &UniPoly) -> Scalar {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| f.eval(x) * w).sum()
    }
}

impl GridMeasure<Approx> {
    /// `Σ f(x) w(x)` with `f` evaluated exactly at each node.
    pub fn integrate(&self, f: &UniPoly) -> Result<Approx> {
        let p = self.weights.first().map(|w| w.precision()).unwrap_or(crate::exactnum::DEFAULT_PRECISION);
        let mut acc = Approx::zero(p);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = &acc + &(&Approx::from_scalar(&f.eval(x), p)? * w);
        }
        Ok(acc)
    }
}

/// Squared norm `h_n` of the univariate q-Racah polynomial.
pub fn norm_qracah(n: usize, p: &QRacahParams) -> Result<Scalar> {
    let q = &p.q;
    let chi = p.chi();
    let mut pairs = Scalar::one();
    for i in 0..4 {
        for j in i + 1..4 {
            pairs = pairs * qpoch(&-(&p.s[i] * &p.s[j]), q, n);
        }
    }
    let sign = if n.is_multiple_of(2) { Scalar::one() } else { Scalar::from_int(-1) };
    let den = qpoch(&(&chi * &q.pow(n as i64 - 1)), q, n) * qpoch(&chi, q, 2 * n);
    Ok(sign * qfact(q, n) * pairs * checked_inv(&den, "(χ q^{n-1}; q)_n (χ; q)_{2n}")?)
}

/// Exact weights on `y_L < … < y_R` from the balance relation `w_m β_m = w_{m+1} δ_{m+1}`.
pub fn qracah_weights(p: &QRacahParams) -> Result<GridMeasure<Scalar>> {
    let w = p.window()?;
    let mut raw = vec![Scalar::one()];
    for m in w.r..w.l {
        let b = qracah_beta(p, &w.zeta, m);
        let d = qracah_delta(p, &w.zeta, m + 1);
        if !(b.is_positive_real() && d.is_positive_real()) {
            return Err(Error::NotAdmissible(format!("β_{m} = {b}, δ_{} = {d} must be positive", m + 1)));
        }
        let next = raw.last().unwrap() * &b / d;
        raw.push(next);
    }
    let total: Scalar = raw.iter().cloned().sum();
    let ti = total.inv();
    // raw runs m = R..L; nodes go in increasing order, i.e. m = L..R.
    raw.reverse();
    Ok(GridMeasure {
        nodes: qracah_grid(&w.zeta, &p.q, (w.r..=w.l).rev()),
        weights: raw.iter().map(|x| x * &ti).collect(),
        tail_bound: None,
        moment_degree: 0,
    })
}

/// Weights from the explicit product formula, normalized by the bilateral ₆ψ₆ sum.
/// Ordered like [`qracah_weights`].
pub fn qracah_weights_closed_form(p: &QRacahParams, tol: &Approx) -> Result<GridMeasure<Approx>> {
    let w = p.window()?;
    let (q, zeta) = (&p.q, &w.zeta);
    let chi = p.chi();
    let mut num_args = Vec::new();
    for s in &p.s {
        num_args.push(-(zeta * q / s));
        num_args.push(q / (s * zeta));
    }
    num_args.push(q / &chi);
    let mut den_args = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            den_args.push(-(q / (&p.s[i] * &p.s[j])));
        }
    }
    let z2 = zeta * zeta;
    den_args.extend([q.clone(), -(&z2 * q), -(q / &z2)]);
    let inner = tol / &Approx::from_int(1 << 20, tol.precision());
    let pref = &qpoch_infinite_many(&num_args, q, &inner)? / &qpoch_infinite_many(&den_args, q, &inner)?;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for m in (w.r..=w.l).rev() {
        let mut part = (Scalar::one() + &z2 * &q.pow(2 * m)) / (Scalar::one() + &z2) * (q / &chi).pow(m);
        for s in &p.s {
            part = part * qpoch_signed(&(s * zeta), q, m)?;
            part = part * checked_inv(&qpoch_signed(&-(q * zeta / s), q, m)?, "(-qζ/s; q)_m")?;
        }
        nodes.push(qracah_grid_point(zeta, q, m));
        weights.push(&pref * &Approx::from_scalar(&part, tol.precision())?);
    }
    Ok(GridMeasure { nodes, weights, tail_bound: None, moment_degree: 0 })
}

/// Moments `E(x^n)`, `n ≤ nmax`, of the functional with `E(φ_n) = δ_{n0}`.
pub fn formal_moments(params: &FamilyParams, nmax: usize) -> Result<Vec<Scalar>> {
    let mut mu = vec![Scalar::one()];
    for n in 1..=nmax {
        let f = phi(n, params)?;
        let s: Scalar = (0..n).map(|k| f.coeff(k) * &mu[k]).sum();
        mu.push(-s);
    }
    Ok(mu)
}

/// `h_n = E(φ_n^2) = E(φ_n x^n)` from the formal moments.
pub fn formal_norm(params: &FamilyParams, n: usize, moments: &[Scalar]) -> Result<Scalar> {
    let f = phi(n, params)?;
    Ok((0..=n).map(|k| f.coeff(k) * &moments[n + k]).sum())
}

/// One geometric piece `base q^k` of a grid; `two_sided` pieces run over all `k ∈ Z`,
/// the others over `k ≥ 1`.
#[derive(Clone, Debug)]
struct GridPiece {
    base: Scalar,
    two_sided: bool,
}

/// `w(x) = |x| ∏_u (ux; q)_∞ / ∏_v (vx; q)_∞` on a union of geometric pieces.
struct WeightShape {
    num: Vec<Scalar>,
    den: Vec<Scalar>,
    pieces: Vec<GridPiece>,
}

fn weight_shape(params: &FamilyParams) -> Result<WeightShape> {
    match params {
        FamilyParams::BigQJacobi(p) => {
            p.admissibility()?;
            Ok(WeightShape {
                num: vec![p.a.clone(), p.b.clone()],
                den: vec![p.c.clone(), p.d.clone()],
                pieces: vec![
                    GridPiece { base: p.b.inv(), two_sided: false },
                    GridPiece { base: p.a.inv(), two_sided: false },
                ],
            })
        }
        FamilyParams::QMeixner(p) => {
            p.grid_admissibility()?;
            let beta = p.beta.clone().unwrap();
            Ok(WeightShape {
                num: vec![p.a.clone()],
                den: vec![p.c.clone(), p.d.clone()],
                pieces: vec![
                    GridPiece { base: beta.inv(), two_sided: true },
                    GridPiece { base: p.a.inv(), two_sided: false },
                ],
            })
        }
        FamilyParams::AlSalamCarlitz(p) => {
            p.grid_admissibility()?;
            let (alpha, beta) = (p.alpha.clone().unwrap(), p.beta.clone().unwrap());
            Ok(WeightShape {
                num: vec![],
                den: vec![p.c.clone(), p.d.clone()],
                pieces: vec![
                    GridPiece { base: beta.inv(), two_sided: true },
                    GridPiece { base: alpha.inv(), two_sided: true },
                ],
            })
        }
        FamilyParams::QRacah(_) => Err(Error::Unsupported("q-Racah weights are exact; use qracah_weights".into())),
    }
}

/// Upper and lower bounds for `|z|` that stay rational.
fn abs_bounds(z: &Scalar) -> (Scalar, Scalar) {
    let re = Scalar::real(z.re().clone()).abs_real().unwrap();
    let im = Scalar::real(z.im().clone()).abs_real().unwrap();
    let lo = if re.partial_cmp_real(&im) == Some(std::cmp::Ordering::Less) { im.clone() } else { re.clone() };
    (&re + &im, lo)
}

impl WeightShape {
    /// `w(xq) / w(x)`, exact.
    fn ratio(&self, x: &Scalar, q: &Scalar) -> Result<Scalar> {
        let num: Scalar = self.den.iter().map(|v| Scalar::one() - v * x).product();
        let den: Scalar = self.num.iter().map(|u| Scalar::one() - u * x).product();
        Ok(q * &num * checked_inv(&den, "weight ratio denominator")?)
    }

    fn weight(&self, x: &Scalar, q: &Scalar, tol: &Approx) -> Result<Approx> {
        let num: Vec<Scalar> = self.num.iter().map(|u| u * x).collect();
        let den: Vec<Scalar> = self.den.iter().map(|v| v * x).collect();
        let a = Approx::from_scalar(&x.abs_real()?, tol.precision())?;
        Ok(&(&a * &qpoch_infinite_many(&num, q, tol)?) / &qpoch_infinite_many(&den, q, tol)?)
    }

    /// Bound on the step ratio of `(1+|x|)^p w(x)` toward zero, for all points with `|x| ≤ big_x`.
    fn inward_ratio_bound(&self, big_x: &Scalar, q: &Scalar) -> Option<Scalar> {
        let mut r = q.clone();
        for v in &self.den {
            r = r * (Scalar::one() + abs_bounds(v).0 * big_x);
        }
        for u in &self.num {
            let d = Scalar::one() - abs_bounds(u).0 * big_x;
            if !d.is_positive_real() {
                return None;
            }
            r = r / d;
        }
        (r.partial_cmp_real(&Scalar::one()) == Some(std::cmp::Ordering::Less)).then_some(r)
    }

    /// Bound on the outward step ratio of `(1+|x|)^p w(x)` beyond a point of size `|x| = y0 q`.
    fn outward_ratio_bound(&self, y0: &Scalar, q: &Scalar, p: usize) -> Option<Scalar> {
        if self.den.len() <= self.num.len() {
            return None;
        }
        let yi = y0.inv();
        let mut r = q.pow(-(p as i64) - 1) * y0.pow(self.num.len() as i64 - self.den.len() as i64);
        for u in &self.num {
            r = r * (&yi + &abs_bounds(u).0);
        }
        for v in &self.den {
            let d = abs_bounds(v).1 - &yi;
            if !d.is_positive_real() {
                return None;
            }
            r = r / d;
        }
        (r.partial_cmp_real(&Scalar::one()) == Some(std::cmp::Ordering::Less)).then_some(r)
    }
}

/// Normalized weights of the big q-Jacobi, q-Meixner or Al-Salam–Carlitz measure on
/// the grid truncated to `depth` points in each open direction, with a certified
/// bound on the neglected mass of `(1 + |x|)^moment_degree w(x)`.
pub fn family_weights(
    params: &FamilyParams,
    depth: usize,
    moment_degree: usize,
    tol: &Approx,
) -> Result<GridMeasure<Approx>> {
    let shape = weight_shape(params)?;
    let q = params.q();
    let prec = tol.precision();
    let inner = tol / &Approx::from_int(1 << 20, prec);
    let big = |x: &Scalar| -> Result<Approx> {
        let one_plus = Scalar::one() + x.abs_real()?;
        Approx::from_scalar(&one_plus.pow(moment_degree as i64), prec)
    };
    let infinite = || Error::WindowTooSmall { bound: "inf".into(), tol: tol.to_string() };
    let per_piece: Vec<(Vec<Scalar>, Vec<Approx>, Approx)> = shape
        .pieces
        .par_iter()
        .map(|piece| -> Result<_> {
            let k0: i64 = if piece.two_sided { 0 } else { 1 };
            let k_lo = if piece.two_sided { -(depth as i64) } else { 1 };
            let k_hi = k0 + depth as i64;
            let x_at = |k: i64| &piece.base * &q.pow(k);
            let w0 = shape.weight(&x_at(k0), q, &inner)?;
            let mut ws = vec![w0.clone()];
            for k in k0..k_hi {
                let r = Approx::from_scalar(&shape.ratio(&x_at(k), q)?, prec)?;
                let next = ws.last().unwrap() * &r;
                ws.push(next);
            }
            let mut outer = Vec::new();
            let mut cur = w0;
            for k in (k_lo..k0).rev() {
                let r = Approx::from_scalar(&shape.ratio(&x_at(k), q)?, prec)?;
                cur = &cur / &r;
                outer.push(cur.clone());
            }
            outer.reverse();
            outer.extend(ws);
            let xs: Vec<Scalar> = (k_lo..=k_hi).map(x_at).collect();
            // Tails: geometric series from the last kept point in each open direction.
            let x_in = xs.last().unwrap();
            let rho_in = shape.inward_ratio_bound(&x_in.abs_real()?, q).ok_or_else(infinite)?;
            let rho_in_a = Approx::from_scalar(&rho_in, prec)?;
            let one = Approx::one(prec);
            let mut tail = &(&big(x_in)? * outer.last().unwrap()) * &(&rho_in_a / &(&one - &rho_in_a));
            if piece.two_sided {
                let x_out = &xs[0];
                let y0 = x_out.abs_real()? / q;
                let rho_out = shape.outward_ratio_bound(&y0, q, moment_degree).ok_or_else(infinite)?;
                let rho_out_a = Approx::from_scalar(&rho_out, prec)?;
                tail = &tail + &(&(&big(x_out)? * &outer[0]) * &(&rho_out_a / &(&one - &rho_out_a)));
            }
            Ok((xs, outer, tail))
        })
        .collect::<Result<_>>()?;
    let mut pts: Vec<(Scalar, Approx)> = Vec::new();
    let mut tail = Approx::zero(prec);
    for (xs, ws, t) in per_piece {
        pts.extend(xs.into_iter().zip(ws));
        tail = &tail + &t;
    }
    pts.sort_by(|a, b| a.0.partial_cmp_real(&b.0).unwrap());
    let total = pts.iter().fold(Approx::zero(prec), |acc, (_, w)| &acc + w);
    let tail = &tail / &total;
    if &tail > tol {
        return Err(Error::WindowTooSmall { bound: tail.to_decimal(6), tol: tol.to_decimal(6) });
    }
    Ok(GridMeasure {
        nodes: pts.iter().map(|(x, _)| x.clone()).collect(),
        weights: pts.iter().map(|(_, w)| w / &total).collect(),
        tail_bound: Some(tail),
        moment_degree,
    })
}

/// [`family_weights`] with the depth grown until the tail bound drops below `tol`.
pub fn family_weights_auto(params: &FamilyParams, moment_degree: usize, tol: &Approx) -> Result<GridMeasure<Approx>> {
    let mut depth = 16;
    loop {
        match family_weights(params, depth, moment_degree, tol) {
            Err(Error::WindowTooSmall { .. }) if depth < 4096 => depth += depth / 2,
            r => return r,
        }
    }
}

fn describe(report: Report, params: &FamilyParams) -> Report {
    params.describe().into_iter().fold(report, |r, (k, v)| r.param(k, v))
}

/// Orthogonality of `φ_0, …, φ_nmax`: exact on the finite grid for q-Racah (including
/// vanishing of `φ_n` on the grid for `n > K`), numeric on truncated grids otherwise.
pub fn univariate_orthogonality_check(params: &FamilyParams, nmax: usize, tol: &Approx) -> Result<Report> {
    let polys: Vec<UniPoly> = (0..=nmax).map(|n| phi(n, params)).collect::<Result<_>>()?;
    match params {
        FamilyParams::QRacah(p) => {
            let k = p.window()?.k();
            let w = qracah_weights(p)?;
            let mut rep = describe(Report::new("qr", "sum phi_m phi_n w = delta h_n; phi_n = 0 on grid for n > K"), params)
                .param("K", k);
            for m in 0..=nmax.min(k) {
                for n in 0..=nmax.min(k) {
                    let s = w.integrate(&(&polys[m] * &polys[n]));
                    let want = if m == n { norm_qracah(n, p)? } else { Scalar::zero() };
                    rep.cases += 1;
                    if s != want {
                        rep.fail(format!("(m, n) = ({m}, {n}): got {s}, want {want}"));
                    }
                }
            }
            for (n, f) in polys.iter().enumerate().skip(k + 1) {
                rep.cases += 1;
                if let Some(x) = w.nodes.iter().find(|x| !f.eval(x).is_zero()) {
                    rep.fail(format!("phi_{n}({x}) != 0"));
                }
            }
            Ok(rep)
        }
        _ => {
            let moments = formal_moments(params, 2 * nmax)?;
            let norms: Vec<Scalar> = (0..=nmax).map(|n| formal_norm(params, n, &moments)).collect::<Result<_>>()?;
            // |φ_m φ_n (x)| ≤ C_m C_n (1 + |x|)^{2 nmax}, with C the sum of absolute coefficients.
            let c_max = polys
                .iter()
                .map(|f| f.coeffs().iter().map(|c| abs_bounds(c).0).sum::<Scalar>())
                .fold(Scalar::one(), |a, b| if a.partial_cmp_real(&b) == Some(std::cmp::Ordering::Less) { b } else { a });
            let scale = Approx::from_scalar(&(&c_max * &c_max * Scalar::from_int(1 << 10)), tol.precision())?;
            let w = family_weights_auto(params, 2 * nmax, &(tol / &scale))?;
            let mut rep = describe(Report::new(params.kind().tag(), "sum phi_m phi_n w = delta h_n"), params);
            rep.tolerance = tol.to_decimal(4);
            let mut worst = Approx::zero(tol.precision());
            for m in 0..=nmax {
                for n in 0..=nmax {
                    let s = w.integrate(&(&polys[m] * &polys[n]))?;
                    let want = if m == n { Approx::from_scalar(&norms[n], tol.precision())? } else { Approx::zero(tol.precision()) };
                    let err = (&s - &want).abs();
                    rep.cases += 1;
                    if &err > tol {
                        rep.fail(format!("(m, n) = ({m}, {n}): error {}", err.to_decimal(6)));
                    }
                    if err > worst {
                        worst = err;
                    }
                }
            }
            rep.max_error = worst.to_decimal(6);
            if rep.status == Status::ExactPass {
                rep.status = Status::NumericPass;
            }
            Ok(rep)
        }
    }
}

/// Balance-relation weights against the explicit product formula.
pub fn qracah_weight_crosscheck(p: &QRacahParams, tol: &Approx) -> Result<Report> {
    let exact = qracah_weights(p)?;
    let closed = qracah_weights_closed_form(p, tol)?;
    let prec = tol.precision();
    let mut rep = describe(Report::new("qr", "balance weights = explicit product formula"), &FamilyParams::QRacah(p.clone()));
    rep.tolerance = tol.to_decimal(4);
    let mut worst = Approx::zero(prec);
    for (i, (a, b)) in exact.weights.iter().zip(&closed.weights).enumerate() {
        let err = (&Approx::from_scalar(a, prec)? - b).abs();
        rep.cases += 1;
        if &err > tol {
            rep.fail(format!("node {}: error {}", exact.nodes[i], err.to_decimal(6)));
        }
        if err > worst {
            worst = err;
        }
    }
    rep.max_error = worst.to_decimal(6);
    if rep.passed() {
        rep.status = Status::NumericPass;
    }
    Ok(rep)
}
