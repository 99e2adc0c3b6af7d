//! Symmetric functions of bounded degree in the Schur basis, interpolation symmetric
//! functions, and the four families `Φ_λ` with their moment functional and norms.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{inv_qfact, qfact, qpoch, qpoch_doubled, qpoch_partition, Scalar};
use crate::linalg::det;
use crate::multivariate::{expand_unitriangular, mp_schur, NodeScheme};
use crate::params::FamilyParams;
use crate::partition::{enumerate_box, Partition};
use crate::polyseries::{dual_schur, solve_triangular, Coeff, InvSeries, MultiSymPoly, SchurCoeffs};

/// An element of `Sym` of degree at most `max_degree`, in the Schur basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymFuncTrunc {
    max_degree: usize,
    coeffs: SchurCoeffs,
}

impl SymFuncTrunc {
    pub fn new(max_degree: usize, mut coeffs: SchurCoeffs) -> Result<Self> {
        coeffs.retain(|_, c| !c.is_zero());
        if let Some(p) = coeffs.keys().find(|p| p.size() > max_degree) {
            return Err(Error::DegreeExceedsTruncation { degree: p.size(), max: max_degree });
        }
        Ok(SymFuncTrunc { max_degree, coeffs })
    }

    pub fn zero(max_degree: usize) -> Self {
        SymFuncTrunc { max_degree, coeffs: SchurCoeffs::new() }
    }

    pub fn one(max_degree: usize) -> Self {
        Self::constant(max_degree, Scalar::one())
    }

    pub fn constant(max_degree: usize, c: Scalar) -> Self {
        let mut coeffs = SchurCoeffs::new();
        coeffs.insert(Partition::empty(), c);
        Self::new(max_degree, coeffs).expect("degree zero fits")
    }

    /// `S_λ`, with truncation degree `max(|λ|, max_degree)`.
    pub fn schur(lambda: &Partition, max_degree: usize) -> Self {
        let mut coeffs = SchurCoeffs::new();
        coeffs.insert(lambda.clone(), Scalar::one());
        SymFuncTrunc { max_degree: max_degree.max(lambda.size()), coeffs }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn coeffs(&self) -> &SchurCoeffs {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: &Partition) -> Scalar {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|p| p.size()).max()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn with_max_degree(&self, max_degree: usize) -> Result<Self> {
        Self::new(max_degree, self.coeffs.clone())
    }

    fn combine(&self, o: &Self, sign: &Scalar) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (p, c) in &o.coeffs {
            let e = coeffs.entry(p.clone()).or_insert_with(Scalar::zero);
            *e += &(c * sign);
        }
        coeffs.retain(|_, c| !c.is_zero());
        SymFuncTrunc { max_degree: self.max_degree.max(o.max_degree), coeffs }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, &Scalar::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, &Scalar::from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.max_degree);
        }
        SymFuncTrunc { max_degree: self.max_degree, coeffs: self.coeffs.iter().map(|(p, c)| (p.clone(), c * s)).collect() }
    }

    /// `ι_{D,N}`: the image in `N` variables.
    pub fn restrict(&self, n: usize) -> MultiSymPoly {
        MultiSymPoly::from_schur(&self.coeffs, n)
    }

    /// Inverse of [`restrict`](Self::restrict), defined when `N` is at least the degree.
    pub fn lift(p: &MultiSymPoly, max_degree: usize) -> Result<Self> {
        let d = p.degree().unwrap_or(0);
        if p.n_vars() < d {
            return Err(Error::TooFewVariables { needed: d, degree: d, have: p.n_vars() });
        }
        Self::new(max_degree, p.to_schur())
    }

    /// Product, computed in `deg F + deg G` variables where restriction is injective.
    pub fn multiply(&self, o: &Self) -> Self {
        let n = (self.degree().unwrap_or(0) + o.degree().unwrap_or(0)).max(1);
        let prod = self.restrict(n).mul(&o.restrict(n));
        Self::lift(&prod, self.max_degree + o.max_degree).expect("product degree is within the variable count")
    }

    /// `F(X) ↦ F(cX)`: the degree-`k` component is multiplied by `c^k`.
    pub fn scale_argument(&self, c: &Scalar) -> Self {
        let mut coeffs = SchurCoeffs::new();
        for (p, v) in &self.coeffs {
            let w = v * &c.pow(p.size() as i64);
            if !w.is_zero() {
                coeffs.insert(p.clone(), w);
            }
        }
        SymFuncTrunc { max_degree: self.max_degree, coeffs }
    }

    /// Largest `|Δ|` over Schur coefficients, as an exact squared modulus.
    pub fn max_diff_sqr(&self, o: &Self) -> Scalar {
        let d = self.sub(o);
        d.coeffs
            .values()
            .map(|c| Scalar::real(c.norm_sqr()))
            .max_by(|a, b| a.partial_cmp_real(b).expect("real"))
            .unwrap_or_else(Scalar::zero)
    }
}

impl Coeff for SymFuncTrunc {
    fn is_zero(&self) -> bool {
        SymFuncTrunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        SymFuncTrunc::add(self, o)
    }
    fn scale(&self, s: &Scalar) -> Self {
        SymFuncTrunc::scale(self, s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InterpMethod {
    /// Exact: invert the Cauchy identity with `K = D` dual variables.
    Cauchy,
    /// `ι_{D,N}(I_{μ|N})`, which only approaches the limit geometrically in `N`.
    Projection(usize),
}

type InterpTable = Arc<BTreeMap<Partition, SymFuncTrunc>>;

fn interp_cache() -> &'static Mutex<HashMap<String, InterpTable>> {
    static CACHE: OnceLock<Mutex<HashMap<String, InterpTable>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All `I_μ` with `|μ| ≤ D` from the Cauchy identity
/// `Σ_μ I_μ(X) σ_{μ|K}(y | d) = ∏_j H(y_j^{-1}; X) (s y_j^{-1}, t y_j^{-1}; q)_∞`.
pub fn interp_limits(scheme: &NodeScheme, max_degree: usize) -> Result<InterpTable> {
    let key = format!("{scheme:?}/{max_degree}");
    if let Some(t) = interp_cache().lock().expect("cache lock").get(&key) {
        return Ok(t.clone());
    }
    let table = Arc::new(interp_limits_uncached(scheme, max_degree)?);
    interp_cache().lock().expect("cache lock").insert(key, table.clone());
    Ok(table)
}

fn interp_limits_uncached(scheme: &NodeScheme, d: usize) -> Result<BTreeMap<Partition, SymFuncTrunc>> {
    if d == 0 {
        return Ok(BTreeMap::from([(Partition::empty(), SymFuncTrunc::one(0))]));
    }
    let k = d;
    let shapes = enumerate_box(Some(k), None, d);
    let mut kernel: InvSeries<SymFuncTrunc> = InvSeries::zero(k, d);
    for lam in &shapes {
        let mut unit = SchurCoeffs::new();
        unit.insert(lam.clone(), Scalar::one());
        let x = SymFuncTrunc::schur(lam, d);
        for (e, c) in InvSeries::from_schur(&unit, k, d).terms() {
            kernel.add_term(e.clone(), x.scale(c));
        }
    }
    let factor = InvSeries::product_of_univariate(&scheme.cauchy_factor(d), &Scalar::one(), k, d);
    let rhs = kernel.act(&factor);
    let dual = scheme.dual_nodes(k);
    let basis: BTreeMap<Partition, InvSeries<Scalar>> = shapes
        .par_iter()
        .map(|mu| Ok((mu.clone(), dual_schur(mu, k, &dual, d)?)))
        .collect::<Result<_>>()?;
    let mut out = solve_triangular(&rhs, &basis)?;
    for mu in &shapes {
        out.entry(mu.clone()).or_insert_with(|| SymFuncTrunc::zero(d));
    }
    for f in out.values_mut() {
        *f = f.with_max_degree(d)?;
    }
    Ok(out)
}

/// The interpolation symmetric function `I_μ` of a node scheme, truncated at degree `D`.
pub fn interp_limit(scheme: &NodeScheme, mu: &Partition, max_degree: usize, method: InterpMethod) -> Result<SymFuncTrunc> {
    if mu.size() > max_degree {
        return Err(Error::DegreeExceedsTruncation { degree: mu.size(), max: max_degree });
    }
    match method {
        InterpMethod::Cauchy => Ok(interp_limits(scheme, max_degree)?[mu].clone()),
        InterpMethod::Projection(n) => {
            if n < max_degree {
                return Err(Error::TooFewVariables { needed: max_degree, degree: max_degree, have: n });
            }
            SymFuncTrunc::lift(&mp_schur(mu, n, &scheme.nodes(n))?, max_degree)
        }
    }
}

/// `det[f(j, k, λ_j - j - μ_k + k)]` over `j, k < rows`, with zero entries where the
/// last argument is negative. Indices are 1-based as in the formulas.
fn shifted_det(
    lambda: &Partition,
    mu: &Partition,
    rows: usize,
    f: impl Fn(i64, i64, usize) -> Result<Scalar>,
) -> Result<Scalar> {
    let mut m = vec![vec![Scalar::zero(); rows]; rows];
    for j in 1..=rows as i64 {
        for k in 1..=rows as i64 {
            let n = lambda.part(j as usize - 1) as i64 - j - mu.part(k as usize - 1) as i64 + k;
            if n >= 0 {
                m[j as usize - 1][k as usize - 1] = f(j, k, n as usize)?;
            }
        }
    }
    Ok(det(m))
}

fn nonzero_inv(x: Scalar, what: &str) -> Result<Scalar> {
    x.checked_inv().map_err(|_| Error::SingularParameters(format!("{what} vanishes")))
}

/// The scalar multiplying `I_μ` in `Φ_λ`; zero unless `μ ⊆ λ`.
///
/// For the A-type families the determinant is 1 on the diagonal, so `σ(λ, λ) = c^{-|λ|}`
/// and `Φ_λ` is still monic because `I^A_λ(Xc)` leads with `c^{|λ|} S_λ`.
pub fn sigma_coeff(params: &FamilyParams, lambda: &Partition, mu: &Partition) -> Result<Scalar> {
    if !lambda.contains(mu) {
        return Ok(Scalar::zero());
    }
    let l = lambda.len();
    let dl = (lambda.size() - mu.size()) as i64;
    let q = params.q();
    let mu_i = |k: i64| mu.part(k as usize - 1) as i64;
    let lam_i = |j: i64| lambda.part(j as usize - 1) as i64;
    match params {
        FamilyParams::QRacah(p) => {
            let (s0, chi) = (&p.s[0], p.chi());
            let d = shifted_det(lambda, mu, l, |j, k, n| {
                let e = mu_i(k) + 1 - k;
                let num: Scalar = (1..4).map(|i| qpoch(&-(s0 * &p.s[i] * &q.pow(e)), q, n)).product();
                let den = q.pow(e * n as i64) * qfact(q, n) * qpoch(&(&chi * &q.pow(lam_i(j) + mu_i(k) + 1 - j - k)), q, n);
                Ok(num * nonzero_inv(den, "(q, χ q^{λ_j+μ_k+1-j-k}; q)")?)
            })?;
            Ok(s0.pow(-dl) * d)
        }
        FamilyParams::BigQJacobi(p) => {
            let (ca, cb, cdab) = (&p.c / &p.a, &p.c / &p.b, p.cd_over_ab());
            let d = shifted_det(lambda, mu, l, |j, k, n| {
                let e = q.pow(mu_i(k) + 2 - k);
                let num = qpoch(&(&ca * &e), q, n) * qpoch(&(&cb * &e), q, n);
                let den = q.pow((mu_i(k) + 1 - k) * n as i64)
                    * qfact(q, n)
                    * qpoch(&(&cdab * &q.pow(lam_i(j) + mu_i(k) + 3 - j - k)), q, n);
                Ok(num * nonzero_inv(den, "(q, cd/(ab) q^{λ_j+μ_k+3-j-k}; q)")?)
            })?;
            Ok(p.c.pow(-(lambda.size() as i64)) * d)
        }
        FamilyParams::QMeixner(p) => {
            let ca = &p.c / &p.a;
            let d = shifted_det(lambda, mu, l, |_, k, n| Ok(qpoch(&(&ca * &q.pow(mu_i(k) + 2 - k)), q, n) * inv_qfact(q, n as i64)))?;
            let nn = 2 * (mu.n_conj() as i64 - mu.n() as i64 - lambda.n_conj() as i64 + lambda.n() as i64);
            Ok(p.c.pow(-(lambda.size() as i64)) * (&p.a / &(q * &p.d)).pow(dl) * q.pow(nn) * d)
        }
        FamilyParams::AlSalamCarlitz(p) => {
            let d = shifted_det(lambda, mu, l, |_, _, n| Ok(inv_qfact(q, n as i64)))?;
            let nn = mu.n_conj() as i64 - mu.n() as i64 - lambda.n_conj() as i64 + lambda.n() as i64;
            Ok(p.c.pow(-(lambda.size() as i64)) * (-(&p.c / &p.d)).pow(dl) * q.pow(nn) * d)
        }
    }
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Coefficient of `I_{μ|N}` in the level-`N` family polynomial, from the `N × N`
/// determinant formulas. The q-Racah basis is that of [`NodeScheme::qracah`]; the A-type
/// families expand over `I^A_{μ|N}(cx)`. Big q-Jacobi has no such closed form here.
pub fn sigma_n(params: &FamilyParams, lambda: &Partition, mu: &Partition, n: usize) -> Result<Scalar> {
    if lambda.len() > n || mu.len() > n {
        return Err(Error::InvalidArgument(format!("shapes must have at most N = {n} rows")));
    }
    let q = params.q();
    let ni = n as i64;
    let ell = |j: i64| lambda.part(j as usize - 1) as i64 + ni - j;
    let em = |k: i64| mu.part(k as usize - 1) as i64 + ni - k;
    let fact_ratio: Scalar = (1..=ni).map(|i| qfact(q, ell(i) as usize) / qfact(q, em(i) as usize)).product();
    let dl = lambda.size() as i64 - mu.size() as i64;
    match params {
        FamilyParams::QRacah(p) => {
            let (s0, chi) = (&p.s[0], p.chi());
            shifted_det(lambda, mu, n, |j, k, d| {
                let (l, m) = (ell(j), em(k));
                let num: Scalar = (1..4).map(|i| qpoch(&-(s0 * &p.s[i] * &q.pow(m + 1 - ni)), q, d)).product();
                let den = q.pow((m + 1 - ni) * d as i64) * qfact(q, d) * qpoch(&(&chi * &q.pow(l + m + 1 - 2 * ni)), q, d);
                Ok(qfact(q, l as usize) / qfact(q, m as usize) * s0.pow(m - l) * num * nonzero_inv(den, "σ_N entry")?)
            })
        }
        FamilyParams::QMeixner(p) => {
            let ca = &p.c / &p.a;
            let ad = &p.a / &p.d;
            let d = shifted_det(lambda, mu, n, |j, k, d| {
                Ok(p.c.pow(-ell(j)) * ad.pow(d as i64) * q.pow(em(k) * em(k) - ell(j) * ell(j))
                    * qpoch(&(&ca * &q.pow(mu.part(k as usize - 1) as i64 + 2 - k)), q, d)
                    * inv_qfact(q, d as i64))
            })?;
            Ok(p.c.pow(binom2(ni)) * q.pow(2 * (ni - 1) * dl) * fact_ratio * d)
        }
        FamilyParams::AlSalamCarlitz(p) => {
            let d = shifted_det(lambda, mu, n, |j, k, d| {
                Ok(p.c.pow(-ell(j)) * q.pow(binom2(em(k)) - binom2(ell(j))) * inv_qfact(q, d as i64))
            })?;
            Ok(p.c.pow(binom2(ni)) * q.pow((ni - 1) * dl) * fact_ratio * (-(&p.c / &p.d)).pow(dl) * d)
        }
        FamilyParams::BigQJacobi(_) => Err(Error::Unsupported("closed σ_N for big q-Jacobi".into())),
    }
}

/// The interpolation basis each family expands over, and the argument scaling applied to it.
pub fn family_scheme(params: &FamilyParams) -> (NodeScheme, Scalar) {
    match params {
        FamilyParams::QRacah(p) => (NodeScheme::qracah(&p.q, &p.s[0]), Scalar::one()),
        FamilyParams::BigQJacobi(p) => (NodeScheme::type_a(&p.q), p.c.clone()),
        FamilyParams::QMeixner(p) => (NodeScheme::type_a(&p.q), p.c.clone()),
        FamilyParams::AlSalamCarlitz(p) => (NodeScheme::type_a(&p.q), p.c.clone()),
    }
}

/// `Φ_λ = Σ_{μ ⊆ λ} σ(λ, μ) I_μ(X c)`, with `c = 1` for q-Racah.
pub fn phi_family(params: &FamilyParams, lambda: &Partition, max_degree: usize) -> Result<SymFuncTrunc> {
    let (scheme, c) = family_scheme(params);
    phi_family_in(params, &scheme, &c, lambda, max_degree)
}

/// [`phi_family`] over an explicitly chosen interpolation basis.
pub fn phi_family_in(
    params: &FamilyParams,
    scheme: &NodeScheme,
    c: &Scalar,
    lambda: &Partition,
    max_degree: usize,
) -> Result<SymFuncTrunc> {
    if lambda.size() > max_degree {
        return Err(Error::DegreeExceedsTruncation { degree: lambda.size(), max: max_degree });
    }
    let interp = interp_limits(scheme, lambda.size())?;
    let mut out = SymFuncTrunc::zero(max_degree);
    for mu in enumerate_box(Some(lambda.len()), Some(lambda.first()), lambda.size()) {
        if !lambda.contains(&mu) {
            continue;
        }
        let s = sigma_coeff(params, lambda, &mu)?;
        if !s.is_zero() {
            out = out.add(&interp[&mu].scale_argument(c).scale(&s));
        }
    }
    out.with_max_degree(max_degree)
}

/// `E(F)`: the coefficient of `Φ_∅` when `F` is written in the basis `{Φ_ν}`.
pub fn moment_e(params: &FamilyParams, f: &SymFuncTrunc) -> Result<Scalar> {
    let (scheme, c) = family_scheme(params);
    moment_e_in(params, &scheme, &c, f)
}

pub fn moment_e_in(params: &FamilyParams, scheme: &NodeScheme, c: &Scalar, f: &SymFuncTrunc) -> Result<Scalar> {
    let coeffs = expand_unitriangular(f.coeffs(), |nu| Ok(phi_family_in(params, scheme, c, nu, nu.size())?.coeffs().clone()))?;
    Ok(coeffs.get(&Partition::empty()).cloned().unwrap_or_else(Scalar::zero))
}

/// Closed-form squared norm `h_λ`.
pub fn norm_h(params: &FamilyParams, lambda: &Partition) -> Result<Scalar> {
    let q = params.q();
    let size = lambda.size() as i64;
    let nd = lambda.n_conj() as i64 - lambda.n() as i64;
    let doubled_inv = |z: &Scalar| nonzero_inv(qpoch_doubled(z, q, lambda), "(z; q)_λ̂");
    Ok(match params {
        FamilyParams::QRacah(p) => {
            let chi = p.chi();
            let mut num = Scalar::one();
            for i in 0..4 {
                for j in i + 1..4 {
                    num = num * qpoch_partition(&-(&p.s[i] * &p.s[j]), q, lambda);
                }
            }
            q.pow(nd) * num * doubled_inv(&chi)? * (&chi / q).pow(size)
        }
        FamilyParams::BigQJacobi(p) => {
            let num: Scalar = [(&p.c, &p.a), (&p.c, &p.b), (&p.d, &p.a), (&p.d, &p.b)]
                .into_iter()
                .map(|(x, y)| qpoch_partition(&(x * q / y), q, lambda))
                .product();
            let z = p.cd_over_ab() * q * q;
            let base = &p.c * &p.d * q.pow(3) / (&p.a * &p.a * &p.b * &p.b);
            q.pow(2 * nd) * num * doubled_inv(&z)? * base.pow(size)
        }
        // The q-power is q^{4(n(λ) - n(λ'))}; the opposite sign fails both the Gram matrix
        // and the limits from big q-Jacobi and to Al-Salam–Carlitz.
        FamilyParams::QMeixner(p) => {
            let base = &p.a * &p.a / (&p.c * &p.c * &p.d * &p.d * q.pow(3));
            q.pow(-4 * nd)
                * base.pow(size)
                * qpoch_partition(&(&p.c * q / &p.a), q, lambda)
                * qpoch_partition(&(&p.d * q / &p.a), q, lambda)
        }
        FamilyParams::AlSalamCarlitz(p) => q.pow(-2 * nd) / (&p.c * &p.d * q).pow(size),
    })
}

/// `E(Φ_λ Φ_μ)` for all `|λ|, |μ| ≤ max_size`, keyed by the pair.
pub fn gram_matrix(params: &FamilyParams, max_size: usize) -> Result<BTreeMap<(Partition, Partition), Scalar>> {
    let shapes = enumerate_box(None, None, max_size);
    let phis: Vec<SymFuncTrunc> = shapes.iter().map(|l| phi_family(params, l, l.size())).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..shapes.len()).flat_map(|a| (a..shapes.len()).map(move |b| (a, b))).collect();
    pairs
        .par_iter()
        .map(|&(a, b)| {
            let e = moment_e(params, &phis[a].multiply(&phis[b]))?;
            Ok(((shapes[a].clone(), shapes[b].clone()), e))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qq;
    use crate::multivariate::{expand_in_interp, family_poly_n};
    use crate::params::{AscParams, BigQJacobiParams, QMeixnerParams, QRacahParams};
    use crate::partition::part;

    fn families() -> Vec<FamilyParams> {
        let q = qq(1, 2);
        vec![
            FamilyParams::QRacah(QRacahParams::new(q.clone(), [qq(3, 5), qq(4, 5), qq(-2, 1), qq(1, 4)]).unwrap()),
            FamilyParams::BigQJacobi(BigQJacobiParams::new(q.clone(), qq(2, 1), qq(-1, 2), qq(5, 4), qq(3, 2)).unwrap()),
            FamilyParams::QMeixner(QMeixnerParams::new(q.clone(), qq(2, 1), qq(3, 2), qq(5, 4)).unwrap()),
            FamilyParams::AlSalamCarlitz(AscParams::new(q, qq(3, 2), qq(5, 4)).unwrap()),
        ]
    }

    #[test]
    fn restrict_lift_round_trip() {
        let mut c = SchurCoeffs::new();
        c.insert(part(&[2, 1]), qq(2, 3));
        c.insert(part(&[1, 1, 1]), qq(-1, 1));
        c.insert(Partition::empty(), qq(5, 1));
        let f = SymFuncTrunc::new(4, c).unwrap();
        assert_eq!(SymFuncTrunc::lift(&f.restrict(5), 4).unwrap(), f);
        let s1 = SymFuncTrunc::schur(&part(&[1]), 1);
        assert_eq!(s1.restrict(3), MultiSymPoly::monomial(3, part(&[1]), Scalar::one()));
        assert!(SymFuncTrunc::lift(&f.restrict(2), 4).is_err());
    }

    #[test]
    fn pieri_product() {
        let s1 = SymFuncTrunc::schur(&part(&[1]), 1);
        let p = s1.multiply(&s1);
        assert_eq!(p.coeffs().len(), 2);
        assert_eq!(p.coeff(&part(&[2])), Scalar::one());
        assert_eq!(p.coeff(&part(&[1, 1])), Scalar::one());
        assert_eq!(p.max_degree(), 2);
        assert_eq!(s1.multiply(&SymFuncTrunc::one(0)), s1);
    }

    #[test]
    fn argument_scaling() {
        let f = SymFuncTrunc::schur(&part(&[2, 1]), 3).add(&SymFuncTrunc::one(3));
        let g = f.scale_argument(&qq(2, 1));
        assert_eq!(g.coeff(&part(&[2, 1])), qq(8, 1));
        assert_eq!(g.scale_argument(&qq(1, 2)), f);
    }

    #[test]
    fn first_interpolation_functions() {
        let q = qq(1, 2);
        let a = NodeScheme::type_a(&q);
        assert_eq!(interp_limit(&a, &Partition::empty(), 3, InterpMethod::Cauchy).unwrap(), SymFuncTrunc::one(3));
        let i1 = interp_limit(&a, &part(&[1]), 3, InterpMethod::Cauchy).unwrap();
        let want = SymFuncTrunc::schur(&part(&[1]), 3).sub(&SymFuncTrunc::constant(3, qq(2, 1)));
        assert_eq!(i1, want);
        let s = qq(3, 1);
        let bc = NodeScheme::type_bc(&q, &s);
        let i1 = interp_limit(&bc, &part(&[1]), 2, InterpMethod::Cauchy).unwrap();
        let want = SymFuncTrunc::schur(&part(&[1]), 2).sub(&SymFuncTrunc::constant(2, (qq(3, 1) + qq(1, 3)) / qq(1, 2)));
        assert_eq!(i1, want);
    }

    #[test]
    fn interpolation_functions_are_monic_and_projections_approach_them() {
        let q = qq(1, 2);
        for scheme in [NodeScheme::type_a(&q), NodeScheme::type_bc(&q, &qq(2, 1))] {
            let table = interp_limits(&scheme, 3).unwrap();
            for (mu, f) in table.iter() {
                assert_eq!(f.coeff(mu), Scalar::one());
                assert!(f.coeffs().keys().all(|p| p.size() < mu.size() || p == mu));
                let err = |n| interp_limit(&scheme, mu, 3, InterpMethod::Projection(n)).unwrap().max_diff_sqr(f);
                let (e8, e12) = (err(8), err(12));
                if !mu.is_empty() {
                    assert!(e12.partial_cmp_real(&e8) == Some(std::cmp::Ordering::Less), "μ = {mu}");
                }
            }
        }
    }

    #[test]
    fn sigma_basics() {
        for fp in families() {
            for lam in enumerate_box(None, None, 3) {
                let diag = sigma_coeff(&fp, &lam, &lam).unwrap();
                let c = family_scheme(&fp).1;
                assert_eq!(diag * c.pow(lam.size() as i64), Scalar::one(), "{:?} {lam}", fp.kind());
                for mu in enumerate_box(None, None, 3) {
                    if !lam.contains(&mu) {
                        assert!(sigma_coeff(&fp, &lam, &mu).unwrap().is_zero());
                    }
                }
            }
        }
        let fp = &families()[0];
        let FamilyParams::QRacah(p) = fp else { unreachable!() };
        let (s0, q) = (&p.s[0], &p.q);
        let want = s0.inv()
            * (Scalar::one() + s0 * &p.s[1])
            * (Scalar::one() + s0 * &p.s[2])
            * (Scalar::one() + s0 * &p.s[3])
            / ((Scalar::one() - q) * (Scalar::one() - p.chi()));
        assert_eq!(sigma_coeff(fp, &part(&[1]), &Partition::empty()).unwrap(), want);
        let asc = &families()[3];
        assert_eq!(sigma_coeff(asc, &part(&[1]), &Partition::empty()).unwrap(), -(qq(5, 4) * qq(1, 2)).inv());
    }

    #[test]
    fn phi_family_is_monic() {
        for fp in families() {
            assert_eq!(phi_family(&fp, &Partition::empty(), 2).unwrap(), SymFuncTrunc::one(2));
            for lam in enumerate_box(None, None, 3) {
                let f = phi_family(&fp, &lam, 3).unwrap();
                assert_eq!(f.coeff(&lam), Scalar::one());
                assert!(f.coeffs().keys().all(|p| p.size() < lam.size() || *p == lam));
            }
        }
    }

    #[test]
    fn finite_level_coefficients_match_closed_forms() {
        for fp in families() {
            if matches!(fp, FamilyParams::BigQJacobi(_)) {
                continue;
            }
            let (scheme, c) = family_scheme(&fp);
            let n = 3;
            for lam in enumerate_box(Some(n), None, 2) {
                let f = family_poly_n(&fp, &lam, n).unwrap();
                let f = SymFuncTrunc::lift(&f, lam.size()).unwrap().scale_argument(&c.inv()).restrict(n);
                let coeffs = expand_in_interp(&f, &scheme, n).unwrap();
                for mu in enumerate_box(Some(n), None, lam.size()) {
                    let got = coeffs.get(&mu).cloned().unwrap_or_else(Scalar::zero);
                    assert_eq!(got, sigma_n(&fp, &lam, &mu, n).unwrap(), "{:?} λ = {lam}, μ = {mu}", fp.kind());
                }
            }
        }
    }

    #[test]
    fn moment_functional_basics() {
        for fp in families() {
            assert_eq!(moment_e(&fp, &SymFuncTrunc::one(0)).unwrap(), Scalar::one());
            let f = phi_family(&fp, &part(&[1]), 1).unwrap();
            assert!(moment_e(&fp, &f).unwrap().is_zero());
            assert_eq!(norm_h(&fp, &Partition::empty()).unwrap(), Scalar::one());
        }
        let asc = &families()[3];
        assert_eq!(norm_h(asc, &part(&[1])).unwrap(), (qq(3, 2) * qq(5, 4) * qq(1, 2)).inv());
    }

    #[test]
    fn formal_orthogonality_degree_one() {
        for fp in families() {
            let g = gram_matrix(&fp, 1).unwrap();
            for ((a, b), e) in g {
                let want = if a == b { norm_h(&fp, &a).unwrap() } else { Scalar::zero() };
                assert_eq!(e, want, "{:?} ({a}, {b})", fp.kind());
            }
        }
    }

    #[test]
    fn qmeixner_norm_exponent() {
        let fp = &families()[2];
        let g = gram_matrix(fp, 2).unwrap();
        for lam in [part(&[2]), part(&[1, 1])] {
            assert_eq!(g[&(lam.clone(), lam.clone())], norm_h(fp, &lam).unwrap());
        }
        assert!(g[&(part(&[1, 1]), part(&[2]))].is_zero());
    }
}
