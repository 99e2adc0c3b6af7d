//! Multiparameter Schur polynomials, finite-N interpolation polynomials, N-variate
//! family polynomials, and the finite configuration measures of the q-Racah family.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{qfact, qpoch_doubled, qpoch_partition, Scalar};
use crate::params::{q_half_power, AscParams, BigQJacobiParams, FamilyParams, QMeixnerParams, QRacahParams};
use crate::partition::{enumerate_box, Partition};
use crate::polyseries::{
    alternant_schur, dual_schur, InvSeries, MultiSymPoly, Nodes, SchurCoeffs, UniPoly,
};
use crate::univariate::{norm_qracah, phi, phi_qracah, qracah_weights};
use crate::verify::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    A,
    BC,
}

/// Node family `c^{(N)}_i = s q^i + t q^{N-1-i}`.
///
/// Type A is `(s, t) = (0, 1)` and type BC is `(s, 1/s)`. The q-Racah expansion needs
/// `(-s_0, 1/s_0)`, which is still of type BC in shape but not of the `(s, 1/s)` form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeScheme {
    pub kind: SchemeKind,
    pub q: Scalar,
    pub s: Scalar,
    pub t: Scalar,
}

impl NodeScheme {
    pub fn type_a(q: &Scalar) -> Self {
        NodeScheme { kind: SchemeKind::A, q: q.clone(), s: Scalar::zero(), t: Scalar::one() }
    }

    pub fn type_bc(q: &Scalar, s: &Scalar) -> Self {
        NodeScheme { kind: SchemeKind::BC, q: q.clone(), s: s.clone(), t: s.inv() }
    }

    /// Nodes `s_0^{-1} q^{N-1-i} - s_0 q^i` on which the q-Racah polynomials expand.
    pub fn qracah(q: &Scalar, s0: &Scalar) -> Self {
        NodeScheme { kind: SchemeKind::BC, q: q.clone(), s: -s0, t: s0.inv() }
    }

    pub fn nodes(&self, n: usize) -> Nodes {
        Nodes::two_sided(&self.q, &self.s, &self.t, n)
    }

    /// `lim_N c^{(N)}_{N+j} = t q^{-j-1}`.
    pub fn tail_limit(&self, j: usize) -> Scalar {
        &self.t * &self.q.pow(-(j as i64) - 1)
    }

    /// `lim_N Σ_{i<N} (c^{(N)}_i)^k = (s^k + t^k)/(1 - q^k)`.
    pub fn power_sum_limit(&self, k: usize) -> Scalar {
        let k = k as i64;
        (self.s.pow(k) + self.t.pow(k)) / (Scalar::one() - self.q.pow(k))
    }

    /// Nodes of the dual functions in the `K`-variable Cauchy identity: the tail limits
    /// read backwards from `j = K-2`.
    pub fn dual_nodes(&self, k: usize) -> Nodes {
        Nodes::dual_geometric(&self.q, &self.t, k)
    }

    /// Coefficients of `exp(-Σ_k r_k u^k / k) = (s u; q)_∞ (t u; q)_∞` up to `u^max_degree`,
    /// from Euler's expansion of each factor.
    pub fn cauchy_factor(&self, max_degree: usize) -> Vec<Scalar> {
        let euler = |x: &Scalar| -> Vec<Scalar> {
            (0..=max_degree)
                .map(|n| {
                    let sign = if n % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
                    sign * self.q.pow((n * n.saturating_sub(1) / 2) as i64) * x.pow(n as i64) / qfact(&self.q, n)
                })
                .collect()
        };
        let (a, b) = (euler(&self.s), euler(&self.t));
        (0..=max_degree).map(|n| (0..=n).map(|k| &a[k] * &b[n - k]).sum()).collect()
    }
}

/// Rows `(x | c)^{μ_i + N - i}` of the multiparameter Schur alternant.
fn newton_rows(mu: &Partition, n: usize, nodes: &Nodes) -> Result<Vec<UniPoly>> {
    (0..n).map(|i| UniPoly::newton_power(nodes, mu.part(i) + n - 1 - i)).collect()
}

/// `s_{μ|N}(x | c)` in the Schur basis; empty when `ℓ(μ) > N`.
pub fn mp_schur_coeffs(mu: &Partition, n: usize, nodes: &Nodes) -> Result<SchurCoeffs> {
    if mu.len() > n {
        return Ok(SchurCoeffs::new());
    }
    alternant_schur(&newton_rows(mu, n, nodes)?, None)
}

/// Multiparameter Schur polynomial `s_{μ|N}(x | c)`.
pub fn mp_schur(mu: &Partition, n: usize, nodes: &Nodes) -> Result<MultiSymPoly> {
    Ok(MultiSymPoly::from_schur(&mp_schur_coeffs(mu, n, nodes)?, n))
}

/// `I_{μ|N}` of a node scheme.
pub fn interp_poly(scheme: &NodeScheme, mu: &Partition, n: usize) -> Result<MultiSymPoly> {
    mp_schur(mu, n, &scheme.nodes(n))
}

/// The univariate rows `p_ℓ` whose alternant quotient is the N-variate family polynomial.
///
/// q-Racah rows are `q^{(N-1)ℓ/2} φ_ℓ(x q^{(1-N)/2}; s q^{(1-N)/2})`, which makes the quotient
/// the renormalized `φ̃_{λ|N}`. The other families substitute `c, d ↦ c q^{1-N}, d q^{1-N}`.
pub fn family_row(params: &FamilyParams, l: usize, n: usize) -> Result<UniPoly> {
    match params {
        FamilyParams::QRacah(p) => {
            let r = q_half_power(&p.q, 1 - n as i64)?;
            let pr = p.rescaled(n)?;
            Ok(phi_qracah(l, &pr)?.rescale_var(&r).scale(&r.pow(-(l as i64))))
        }
        _ => phi(l, &shifted_params(params, n)?),
    }
}

/// Parameters of the univariate rows for the A-type families at level `N`.
pub fn shifted_params(params: &FamilyParams, n: usize) -> Result<FamilyParams> {
    let f = params.q().pow(1 - n as i64);
    Ok(match params {
        FamilyParams::QRacah(p) => FamilyParams::QRacah(p.rescaled(n)?),
        FamilyParams::BigQJacobi(p) => FamilyParams::BigQJacobi(BigQJacobiParams::new(
            p.q.clone(),
            p.a.clone(),
            p.b.clone(),
            &p.c * &f,
            &p.d * &f,
        )?),
        FamilyParams::QMeixner(p) => {
            let mut s = QMeixnerParams::new(p.q.clone(), p.a.clone(), &p.c * &f, &p.d * &f)?;
            s.beta = p.beta.clone();
            FamilyParams::QMeixner(s)
        }
        FamilyParams::AlSalamCarlitz(p) => {
            let mut s = AscParams::new(p.q.clone(), &p.c * &f, &p.d * &f)?;
            s.alpha = p.alpha.clone();
            s.beta = p.beta.clone();
            FamilyParams::AlSalamCarlitz(s)
        }
    })
}

/// Schur coefficients of the N-variate family polynomial indexed by `λ ∈ Y(N)`.
pub fn family_poly_schur(params: &FamilyParams, lambda: &Partition, n: usize) -> Result<SchurCoeffs> {
    if lambda.len() > n {
        return Err(Error::InvalidArgument(format!("ℓ({lambda}) exceeds N = {n}")));
    }
    let rows: Vec<UniPoly> =
        (0..n).map(|i| family_row(params, lambda.part(i) + n - 1 - i, n)).collect::<Result<_>>()?;
    alternant_schur(&rows, None)
}

/// The N-variate family polynomial (for q-Racah, the renormalized `φ̃_{λ|N}`).
pub fn family_poly_n(params: &FamilyParams, lambda: &Partition, n: usize) -> Result<MultiSymPoly> {
    Ok(MultiSymPoly::from_schur(&family_poly_schur(params, lambda, n)?, n))
}

/// Expands `f` over a basis whose element at `ν` is `S_ν` plus terms of lower degree.
///
/// Peels off the top degree each round; `basis` is called once per shape that occurs.
pub fn expand_unitriangular(
    f: &SchurCoeffs,
    mut basis: impl FnMut(&Partition) -> Result<SchurCoeffs>,
) -> Result<BTreeMap<Partition, Scalar>> {
    let mut residual = f.clone();
    residual.retain(|_, v| !v.is_zero());
    let mut out = BTreeMap::new();
    while let Some(top) = residual.keys().map(|p| p.size()).max() {
        let lead: Vec<(Partition, Scalar)> =
            residual.iter().filter(|(p, _)| p.size() == top).map(|(p, c)| (p.clone(), c.clone())).collect();
        for (nu, c) in lead {
            let b = basis(&nu)?;
            if b.get(&nu) != Some(&Scalar::one()) || b.keys().any(|p| p.size() >= top && *p != nu) {
                return Err(Error::InconsistentSystem(format!("basis element at {nu} is not unitriangular")));
            }
            for (p, v) in b {
                let e = residual.entry(p).or_insert_with(Scalar::zero);
                *e -= &(&v * &c);
            }
            residual.retain(|_, v| !v.is_zero());
            out.insert(nu, c);
        }
    }
    Ok(out)
}

/// Coefficients of `f` in the interpolation basis `{I_{μ|N}}` of a scheme.
pub fn expand_in_interp(f: &MultiSymPoly, scheme: &NodeScheme, n: usize) -> Result<BTreeMap<Partition, Scalar>> {
    let nodes = scheme.nodes(n);
    let mut cache: HashMap<Partition, SchurCoeffs> = HashMap::new();
    expand_unitriangular(&f.to_schur(), |nu| {
        if let Some(b) = cache.get(nu) {
            return Ok(b.clone());
        }
        let b = mp_schur_coeffs(nu, n, &nodes)?;
        cache.insert(nu.clone(), b.clone());
        Ok(b)
    })
}

/// Both sides of the Cauchy identity for multiparameter Schur polynomials, as series
/// in `u_j = 1/y_j` with symmetric-polynomial coefficients.
pub fn cauchy_sides(
    n: usize,
    k: usize,
    nodes: &Nodes,
    max_degree: usize,
) -> Result<(InvSeries<MultiSymPoly>, InvSeries<MultiSymPoly>)> {
    if !(n >= k && k >= 1) {
        return Err(Error::InvalidArgument(format!("need N ≥ K ≥ 1, got N = {n}, K = {k}")));
    }
    let dual = nodes.shifted(n + 1 - k);
    let mut lhs = InvSeries::zero(k, max_degree);
    for mu in enumerate_box(Some(k), None, max_degree) {
        let s = mp_schur(&mu, n, nodes)?;
        for (e, c) in dual_schur(&mu, k, &dual, max_degree)?.terms() {
            lhs.add_term(e.clone(), s.scale(c));
        }
    }
    // ∏_j 1/∏_i (1 - x_i u_j) = Σ_λ S_λ(x) S_λ(u), then times ∏_j ∏_{i<N} (1 - c_i u_j).
    let mut kernel = InvSeries::zero(k, max_degree);
    for lam in enumerate_box(Some(k.min(n)), None, max_degree) {
        let sx = MultiSymPoly::jacobi_trudi(&lam, n);
        let mut unit = SchurCoeffs::new();
        unit.insert(lam.clone(), Scalar::one());
        for (e, c) in InvSeries::from_schur(&unit, k, max_degree).terms() {
            kernel.add_term(e.clone(), sx.scale(c));
        }
    }
    let mut e = vec![Scalar::one()];
    for c in nodes.take(n)? {
        let mut next = e.clone();
        next.push(Scalar::zero());
        for i in 1..next.len() {
            next[i] = &next[i] - &(&e[i - 1] * &c);
        }
        e = next;
    }
    e.truncate(max_degree + 1);
    let factor = InvSeries::product_of_univariate(&e, &Scalar::one(), k, max_degree);
    Ok((lhs, kernel.act(&factor)))
}

/// Checks the Cauchy identity coefficientwise up to total degree `max_degree` in `1/y`.
pub fn cauchy_identity_check(n: usize, k: usize, nodes: &Nodes, max_degree: usize) -> Result<Report> {
    let (lhs, rhs) = cauchy_sides(n, k, nodes, max_degree)?;
    let mut rep = Report::new("mp-schur", "cauchy-identity")
        .param("N", n)
        .param("K", k)
        .param("D", max_degree);
    let keys: std::collections::BTreeSet<&Vec<u32>> = lhs.terms().keys().chain(rhs.terms().keys()).collect();
    rep.cases = keys.len();
    for e in keys {
        if lhs.coeff(e) != rhs.coeff(e) {
            rep.fail(format!("coefficient of u^{e:?} differs"));
            break;
        }
    }
    Ok(rep)
}

/// All `n`-subsets of `0..m` in lexicographic order.
pub fn combinations(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n > m {
        return out;
    }
    let mut c: Vec<usize> = (0..n).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..n).rev().find(|&i| c[i] != i + m - n) else { break };
        c[i] += 1;
        for j in i + 1..n {
            c[j] = c[j - 1] + 1;
        }
    }
    out
}

fn binomial(m: usize, n: usize) -> u128 {
    if n > m {
        return 0;
    }
    (0..n as u128).fold(1u128, |acc, i| acc * (m as u128 - i) / (i + 1))
}

/// Exact probability measure on `N`-point configurations of a finite grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigMeasure {
    pub n: usize,
    /// Grid nodes in increasing order.
    pub grid: Vec<Scalar>,
    /// Sorted node indices of each configuration, lexicographic.
    pub configurations: Vec<Vec<usize>>,
    pub weights: Vec<Scalar>,
}

impl ConfigMeasure {
    pub fn points(&self, idx: usize) -> Vec<Scalar> {
        self.configurations[idx].iter().map(|&i| self.grid[i].clone()).collect()
    }

    pub fn total(&self) -> Scalar {
        self.weights.iter().cloned().sum()
    }
}

/// Largest number of configurations [`config_measure_qracah`] enumerates by default.
pub const CONFIG_BUDGET: u128 = 2_000_000;

/// `M_N ∝ V(X)^2 ∏ w(x; s q^{(1-N)/2})` on the grid of the rescaled window, carried to the
/// grid `q^{(N-1)/2} y_m` on which the renormalized polynomials `φ̃_{λ|N}` live.
pub fn config_measure_qracah(p: &QRacahParams, n: usize, budget: u128) -> Result<ConfigMeasure> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let pr = p.rescaled(n)?;
    let uni = qracah_weights(&pr)?;
    let count = binomial(uni.nodes.len(), n);
    if count > budget {
        return Err(Error::InvalidArgument(format!("{count} configurations exceed the budget {budget}")));
    }
    let scale = q_half_power(&p.q, n as i64 - 1)?;
    let grid: Vec<Scalar> = uni.nodes.iter().map(|y| y * &scale).collect();
    let configurations = combinations(grid.len(), n);
    let raw: Vec<Scalar> = configurations
        .par_iter()
        .map(|c| {
            let mut w: Scalar = c.iter().map(|&i| uni.weights[i].clone()).product();
            for a in 0..c.len() {
                for b in a + 1..c.len() {
                    let d = &grid[c[a]] - &grid[c[b]];
                    w = w * &d * &d;
                }
            }
            w
        })
        .collect();
    let total: Scalar = raw.iter().cloned().sum();
    let ti = total.checked_inv()?;
    Ok(ConfigMeasure { n, grid, configurations, weights: raw.into_iter().map(|w| w * &ti).collect() })
}

/// `E_N(F) = Σ_X F(X) M_N(X)`, exact.
pub fn moment_en(measure: &ConfigMeasure, f: &MultiSymPoly) -> Result<Scalar> {
    f.check_vars(measure.n)?;
    Ok((0..measure.configurations.len())
        .into_par_iter()
        .map(|i| f.eval(&measure.points(i)) * &measure.weights[i])
        .collect::<Vec<_>>()
        .into_iter()
        .sum())
}

/// `h_{λ|N}` as the ratio `∏_j h_{λ_j+N-j} / h_{N-j}` of univariate norms at `s q^{(1-N)/2}`.
pub fn qracah_norm_ratio(p: &QRacahParams, lambda: &Partition, n: usize) -> Result<Scalar> {
    let pr = p.rescaled(n)?;
    let mut acc = Scalar::one();
    for j in 0..n {
        acc = acc * norm_qracah(lambda.part(j) + n - 1 - j, &pr)? / norm_qracah(n - 1 - j, &pr)?;
    }
    Ok(acc)
}

/// Closed form `(-1)^{|λ|} (χ q^{-N}, q^N; q)_λ ∏_{i<j} (-s_i s_j; q)_λ / (χ; q)_{λ̂}`.
pub fn qracah_norm_n(p: &QRacahParams, lambda: &Partition, n: usize) -> Result<Scalar> {
    let q = &p.q;
    let chi = p.chi();
    let mut num = qpoch_partition(&(&chi * &q.pow(-(n as i64))), q, lambda) * qpoch_partition(&q.pow(n as i64), q, lambda);
    for i in 0..4 {
        for j in i + 1..4 {
            num = num * qpoch_partition(&-(&p.s[i] * &p.s[j]), q, lambda);
        }
    }
    let den = qpoch_doubled(&chi, q, lambda);
    let sign = if lambda.size().is_multiple_of(2) { Scalar::one() } else { Scalar::from_int(-1) };
    Ok(sign * num * den.checked_inv().map_err(|_| Error::SingularParameters("(χ; q)_λ̂ vanishes".into()))?)
}

/// Values of `φ̃_{λ|N}` on every configuration of `measure`, for each `λ` in `shapes`.
pub fn qracah_values_on_configs(
    p: &QRacahParams,
    measure: &ConfigMeasure,
    shapes: &[Partition],
) -> Result<Vec<Vec<Scalar>>> {
    let fp = FamilyParams::QRacah(p.clone());
    shapes
        .par_iter()
        .map(|lam| {
            let f = family_poly_n(&fp, lam, measure.n)?;
            Ok((0..measure.configurations.len()).map(|i| f.eval(&measure.points(i))).collect())
        })
        .collect()
}

/// Exact multivariate orthogonality: `E_N(φ̃_λ φ̃_μ) = δ_{λμ} q^{(N-1)|λ|} h_{λ|N}` for
/// `λ, μ ⊆ (K^N)`, and `φ̃_λ ≡ 0` on the grid for the shapes with `λ_1 = K+1`, `|λ| ≤ K+2`.
pub fn multivariate_orthogonality_check(p: &QRacahParams, n: usize) -> Result<Report> {
    let k = p.window()?.k();
    let measure = config_measure_qracah(p, n, CONFIG_BUDGET)?;
    let inside: Vec<Partition> = enumerate_box(Some(n), Some(k), n * k);
    let outside: Vec<Partition> =
        enumerate_box(Some(n), Some(k + 1), k + 2).into_iter().filter(|l| l.first() == k + 1).collect();
    let mut rep = Report::new("qr", "multivariate-orthogonality").param("N", n).param("K", k);
    for (name, v) in FamilyParams::QRacah(p.clone()).describe() {
        rep = rep.param(name, v);
    }
    if measure.total() != Scalar::one() || measure.weights.iter().any(|w| w.is_negative_real()) {
        rep.fail("configuration weights are not a probability vector".into());
    }
    let vals = qracah_values_on_configs(p, &measure, &inside)?;
    for (a, la) in inside.iter().enumerate() {
        for (b, mu) in inside.iter().enumerate().skip(a) {
            rep.cases += 1;
            let e: Scalar =
                (0..measure.weights.len()).map(|i| &vals[a][i] * &vals[b][i] * &measure.weights[i]).sum();
            let want = if a == b {
                p.q.pow(((n - 1) * la.size()) as i64) * qracah_norm_n(p, la, n)?
            } else {
                Scalar::zero()
            };
            if e != want {
                rep.fail(format!("E_N(φ̃_{la} φ̃_{mu}) = {e}, expected {want}"));
            }
        }
    }
    for (lam, row) in outside.iter().zip(qracah_values_on_configs(p, &measure, &outside)?) {
        rep.cases += 1;
        if let Some(i) = row.iter().position(|v| !v.is_zero()) {
            rep.fail(format!("φ̃_{lam} is nonzero on configuration {:?}", measure.configurations[i]));
        }
    }
    Ok(rep)
}
