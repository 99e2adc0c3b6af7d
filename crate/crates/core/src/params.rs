//! Parameter records for the four families, with generic-position and admissibility checks.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{validate_q, Scalar};

/// Exponent window used when checking that a parameter combination avoids `q^Z`.
pub const Q_POWER_WINDOW: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    #[serde(rename = "qr")]
    QRacah,
    #[serde(rename = "bqj")]
    BigQJacobi,
    #[serde(rename = "qm")]
    QMeixner,
    #[serde(rename = "asc")]
    AlSalamCarlitz,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] =
        [FamilyKind::QRacah, FamilyKind::BigQJacobi, FamilyKind::QMeixner, FamilyKind::AlSalamCarlitz];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyKind::QRacah => "qr",
            FamilyKind::BigQJacobi => "bqj",
            FamilyKind::QMeixner => "qm",
            FamilyKind::AlSalamCarlitz => "asc",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "qr" | "qracah" | "q-racah" => Ok(FamilyKind::QRacah),
            "bqj" | "bigqjacobi" | "big-q-jacobi" => Ok(FamilyKind::BigQJacobi),
            "qm" | "qmeixner" | "q-meixner" => Ok(FamilyKind::QMeixner),
            "asc" | "al-salam-carlitz" => Ok(FamilyKind::AlSalamCarlitz),
            other => Err(Error::Parse(format!("unknown family '{other}'"))),
        }
    }
}

/// Which admissibility condition a pair of parameters satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// The two parameters are complex conjugate and not real.
    ComplexConjugate,
    /// Both lie in the open cell `(base q^{m+1}, base q^m)` of a positive geometric grid.
    PositiveWindow { m: i64 },
    /// Both lie in the mirror image of such a cell on the negative axis.
    NegativeWindow { m: i64 },
    /// Both negative with ratio strictly between `q` and `1/q`.
    NegativeRatio,
    /// Both positive with ratio strictly between `q` and `1/q`.
    PositiveRatio,
}

fn lt(a: &Scalar, b: &Scalar) -> bool {
    a.partial_cmp_real(b) == Some(Ordering::Less)
}

/// `m` with `base q^{m+1} < x < base q^m`, for real `base, x > 0`; `None` on a grid point.
pub fn geometric_cell(base: &Scalar, q: &Scalar, x: &Scalar) -> Option<i64> {
    if !(base.is_positive_real() && x.is_positive_real()) {
        return None;
    }
    let mut m = 0i64;
    let mut hi = base.clone();
    // Walk until base q^m > x, then until base q^{m+1} < x.
    while !lt(x, &hi) {
        m -= 1;
        hi = &hi / q;
    }
    while !lt(&(&hi * q), x) {
        if &hi * q == *x {
            return None;
        }
        m += 1;
        hi = &hi * q;
    }
    if &hi * q == *x {
        return None;
    }
    Some(m)
}

fn same_cell(base: &Scalar, q: &Scalar, x: &Scalar, y: &Scalar) -> Option<i64> {
    let mx = geometric_cell(base, q, x)?;
    let my = geometric_cell(base, q, y)?;
    (mx == my).then_some(mx)
}

fn is_conjugate_pair(x: &Scalar, y: &Scalar) -> bool {
    !x.is_real() && x.conj() == *y
}

/// Errors if `z = q^e` for some `|e| ≤ Q_POWER_WINDOW`.
pub fn check_not_q_power(z: &Scalar, q: &Scalar, what: &str) -> Result<()> {
    if !z.is_positive_real() {
        return Ok(());
    }
    let mut up = Scalar::one();
    let mut down = Scalar::one();
    for e in 0..=Q_POWER_WINDOW {
        if *z == up || *z == down {
            let e = if *z == up { e } else { -e };
            return Err(Error::SingularParameters(format!("{what} = q^{e}")));
        }
        up = &up * q;
        down = &down / q;
    }
    Ok(())
}

/// `q^{e/2}`, exact when `e` is even or `q` is a rational square.
pub fn q_half_power(q: &Scalar, e: i64) -> Result<Scalar> {
    if e % 2 == 0 {
        return Ok(q.pow(e / 2));
    }
    let r = q.sqrt_exact().ok_or_else(|| Error::EvenNeedsSquareQ(q.to_string()))?;
    Ok(r.pow(e))
}

/// Finite window data of an admissible q-Racah quadruple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QRacahWindow {
    pub zeta: Scalar,
    pub l: i64,
    pub r: i64,
    pub branch: Branch,
}

impl QRacahWindow {
    pub fn k(&self) -> usize {
        (self.l - self.r) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QRacahParams {
    pub q: Scalar,
    pub s: [Scalar; 4],
    pub window: Option<QRacahWindow>,
}

impl QRacahParams {
    /// Generic parameters: `s_0 ≠ 0` and `s_0 s_1 s_2 s_3 ∉ q^Z`.
    pub fn new(q: Scalar, s: [Scalar; 4]) -> Result<Self> {
        validate_q(&q)?;
        if s[0].is_zero() {
            return Err(Error::SingularParameters("s0 = 0".into()));
        }
        let p = QRacahParams { q, s, window: None };
        check_not_q_power(&p.chi(), &p.q, "s0 s1 s2 s3")?;
        Ok(p)
    }

    /// The quadruple `(s0, s1, -ζ q^R, ζ^{-1} q^{-L})`, checked for admissibility.
    pub fn admissible(q: Scalar, zeta: Scalar, l: i64, r: i64, s0: Scalar, s1: Scalar) -> Result<Self> {
        validate_q(&q)?;
        if !zeta.is_positive_real() {
            return Err(Error::NotAdmissible(format!("zeta must be positive, got {zeta}")));
        }
        if l < r {
            return Err(Error::NotAdmissible(format!("need L >= R, got L = {l}, R = {r}")));
        }
        let s2 = -(&zeta * &q.pow(r));
        let s3 = zeta.inv() * q.pow(-l);
        let branch = if is_conjugate_pair(&s0, &s1) {
            Branch::ComplexConjugate
        } else if s0.is_positive_real() && s1.is_positive_real() {
            Branch::PositiveWindow {
                m: same_cell(&zeta.inv(), &q, &s0, &s1)
                    .ok_or_else(|| Error::NotAdmissible(format!("s0 = {s0}, s1 = {s1} not in one cell of ζ^-1 q^Z")))?,
            }
        } else if s0.is_negative_real() && s1.is_negative_real() {
            Branch::NegativeWindow {
                m: same_cell(&zeta, &q, &-&s0, &-&s1)
                    .ok_or_else(|| Error::NotAdmissible(format!("s0 = {s0}, s1 = {s1} not in one cell of -ζ q^Z")))?,
            }
        } else {
            return Err(Error::NotAdmissible(format!("s0 = {s0}, s1 = {s1} fit no admissible branch")));
        };
        let mut p = QRacahParams::new(q, [s0, s1, s2, s3])?;
        p.window = Some(QRacahWindow { zeta, l, r, branch });
        Ok(p)
    }

    /// `χ = s_0 s_1 s_2 s_3`.
    pub fn chi(&self) -> Scalar {
        self.s.iter().cloned().product()
    }

    pub fn window(&self) -> Result<&QRacahWindow> {
        self.window.as_ref().ok_or_else(|| Error::NotAdmissible("no grid window attached".into()))
    }

    pub fn with_s(&self, s: [Scalar; 4]) -> Result<Self> {
        QRacahParams::new(self.q.clone(), s)
    }

    /// All `s_i` multiplied by `q^{(1-N)/2}`. The window moves to `(L + (N-1)/2, R - (N-1)/2)`
    /// for odd `N`; for even `N` it becomes `(L + N/2 - 1, R - N/2)` with `ζ q^{1/2}`.
    pub fn rescaled(&self, n: usize) -> Result<Self> {
        let f = q_half_power(&self.q, 1 - n as i64)?;
        let s = self.s.clone().map(|x| x * &f);
        let Some(w) = &self.window else {
            return Ok(QRacahParams { q: self.q.clone(), s, window: None });
        };
        let n = n as i64;
        let (zeta, l, r) = if n % 2 == 1 {
            (w.zeta.clone(), w.l + (n - 1) / 2, w.r - (n - 1) / 2)
        } else {
            (&w.zeta * &q_half_power(&self.q, 1)?, w.l + n / 2 - 1, w.r - n / 2)
        };
        let p = QRacahParams::admissible(self.q.clone(), zeta, l, r, s[0].clone(), s[1].clone())?;
        debug_assert_eq!(p.s, s);
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BigQJacobiParams {
    pub q: Scalar,
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl BigQJacobiParams {
    pub fn new(q: Scalar, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        validate_q(&q)?;
        for (name, v) in [("a", &a), ("b", &b), ("c", &c), ("d", &d)] {
            if v.is_zero() {
                return Err(Error::SingularParameters(format!("{name} = 0")));
            }
        }
        let p = BigQJacobiParams { q, a, b, c, d };
        check_not_q_power(&p.cd_over_ab(), &p.q, "cd/(ab)")?;
        Ok(p)
    }

    pub fn cd_over_ab(&self) -> Scalar {
        &self.c * &self.d / (&self.a * &self.b)
    }

    /// `a > 0 > b` and `(c, d)` conjugate or in one cell of `a q^Z` or `b q^Z`.
    pub fn admissibility(&self) -> Result<Branch> {
        let (a, b, c, d, q) = (&self.a, &self.b, &self.c, &self.d, &self.q);
        if !(a.is_positive_real() && b.is_negative_real()) {
            return Err(Error::NotAdmissible(format!("need a > 0 > b, got a = {a}, b = {b}")));
        }
        if is_conjugate_pair(c, d) {
            return Ok(Branch::ComplexConjugate);
        }
        // a q^m < c,d < a q^{m-1} is the cell of base a/q.
        if let Some(m) = same_cell(&(a / q), q, c, d) {
            return Ok(Branch::PositiveWindow { m });
        }
        if c.is_negative_real() && d.is_negative_real() {
            if let Some(m) = same_cell(&(-b / q), q, &-c, &-d) {
                return Ok(Branch::NegativeWindow { m });
            }
        }
        Err(Error::NotAdmissible(format!("(c, d) = ({c}, {d}) fit no admissible branch")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QMeixnerParams {
    pub q: Scalar,
    pub a: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    /// Anchor `β < 0` of the unbounded part `β^{-1} q^Z` of the grid.
    pub beta: Option<Scalar>,
}

fn ratio_within_q(c: &Scalar, d: &Scalar, q: &Scalar) -> bool {
    let r = c / d;
    lt(q, &r) && lt(&r, &q.inv())
}

impl QMeixnerParams {
    pub fn new(q: Scalar, a: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        validate_q(&q)?;
        for (name, v) in [("a", &a), ("c", &c), ("d", &d)] {
            if v.is_zero() {
                return Err(Error::SingularParameters(format!("{name} = 0")));
            }
        }
        Ok(QMeixnerParams { q, a, c, d, beta: None })
    }

    pub fn with_beta(mut self, beta: Scalar) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn admissibility(&self) -> Result<Branch> {
        let (a, c, d, q) = (&self.a, &self.c, &self.d, &self.q);
        if !a.is_positive_real() {
            return Err(Error::NotAdmissible(format!("need a > 0, got {a}")));
        }
        if is_conjugate_pair(c, d) {
            return Ok(Branch::ComplexConjugate);
        }
        if let Some(m) = same_cell(&(a / q), q, c, d) {
            return Ok(Branch::PositiveWindow { m });
        }
        if c.is_negative_real() && d.is_negative_real() && ratio_within_q(c, d, q) {
            return Ok(Branch::NegativeRatio);
        }
        Err(Error::NotAdmissible(format!("(c, d) = ({c}, {d}) fit no admissible branch")))
    }

    /// Admissibility plus the constraint on `β` that the grid needs.
    pub fn grid_admissibility(&self) -> Result<Branch> {
        let branch = self.admissibility()?;
        let beta = self.beta.as_ref().ok_or_else(|| Error::NotAdmissible("grid anchor beta missing".into()))?;
        if !beta.is_negative_real() {
            return Err(Error::NotAdmissible(format!("need beta < 0, got {beta}")));
        }
        if branch == Branch::NegativeRatio && same_cell(&(-beta / &self.q), &self.q, &-&self.c, &-&self.d).is_none() {
            return Err(Error::NotAdmissible("c, d must lie in one cell of beta q^Z".into()));
        }
        Ok(branch)
    }
}

/// How a path of q-Meixner parameters approaches `a = 0` from an anchor `α`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum AscAnchor {
    /// `a = α q^M`.
    #[default]
    AlphaTimes,
    /// `a = α^{-1} q^M`.
    AlphaInverse,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AscParams {
    pub q: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub alpha: Option<Scalar>,
    pub beta: Option<Scalar>,
}

impl AscParams {
    pub fn new(q: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        validate_q(&q)?;
        if c.is_zero() || d.is_zero() {
            return Err(Error::SingularParameters("c and d must be nonzero".into()));
        }
        Ok(AscParams { q, c, d, alpha: None, beta: None })
    }

    pub fn with_anchors(mut self, alpha: Scalar, beta: Scalar) -> Self {
        self.alpha = Some(alpha);
        self.beta = Some(beta);
        self
    }

    pub fn admissibility(&self) -> Result<Branch> {
        let (c, d, q) = (&self.c, &self.d, &self.q);
        if is_conjugate_pair(c, d) {
            return Ok(Branch::ComplexConjugate);
        }
        if c.is_real() && d.is_real() && ratio_within_q(c, d, q) {
            if c.is_positive_real() && d.is_positive_real() {
                return Ok(Branch::PositiveRatio);
            }
            if c.is_negative_real() && d.is_negative_real() {
                return Ok(Branch::NegativeRatio);
            }
        }
        Err(Error::NotAdmissible(format!("(c, d) = ({c}, {d}) fit no admissible branch")))
    }

    pub fn grid_admissibility(&self) -> Result<Branch> {
        let branch = self.admissibility()?;
        let (alpha, beta) = match (&self.alpha, &self.beta) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NotAdmissible("grid anchors alpha, beta missing".into())),
        };
        if !(alpha.is_positive_real() && beta.is_negative_real()) {
            return Err(Error::NotAdmissible(format!("need alpha > 0 > beta, got {alpha}, {beta}")));
        }
        let q = &self.q;
        match branch {
            Branch::PositiveRatio if same_cell(&(alpha / q), q, &self.c, &self.d).is_none() => {
                Err(Error::NotAdmissible("c, d must lie in one cell of alpha q^Z".into()))
            }
            Branch::NegativeRatio if same_cell(&(-beta / q), q, &-&self.c, &-&self.d).is_none() => {
                Err(Error::NotAdmissible("c, d must lie in one cell of beta q^Z".into()))
            }
            b => Ok(b),
        }
    }
}

/// Parameters of any of the four families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyParams {
    #[serde(rename = "qr")]
    QRacah(QRacahParams),
    #[serde(rename = "bqj")]
    BigQJacobi(BigQJacobiParams),
    #[serde(rename = "qm")]
    QMeixner(QMeixnerParams),
    #[serde(rename = "asc")]
    AlSalamCarlitz(AscParams),
}

impl FamilyParams {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilyParams::QRacah(_) => FamilyKind::QRacah,
            FamilyParams::BigQJacobi(_) => FamilyKind::BigQJacobi,
            FamilyParams::QMeixner(_) => FamilyKind::QMeixner,
            FamilyParams::AlSalamCarlitz(_) => FamilyKind::AlSalamCarlitz,
        }
    }

    pub fn q(&self) -> &Scalar {
        match self {
            FamilyParams::QRacah(p) => &p.q,
            FamilyParams::BigQJacobi(p) => &p.q,
            FamilyParams::QMeixner(p) => &p.q,
            FamilyParams::AlSalamCarlitz(p) => &p.q,
        }
    }

    /// Name/value pairs for reports.
    pub fn describe(&self) -> Vec<(&'static str, String)> {
        let mut v = vec![("q", self.q().to_string())];
        match self {
            FamilyParams::QRacah(p) => {
                for (name, s) in ["s0", "s1", "s2", "s3"].into_iter().zip(&p.s) {
                    v.push((name, s.to_string()));
                }
            }
            FamilyParams::BigQJacobi(p) => {
                v.extend([("a", p.a.to_string()), ("b", p.b.to_string()), ("c", p.c.to_string()), ("d", p.d.to_string())])
            }
            FamilyParams::QMeixner(p) => {
                v.extend([("a", p.a.to_string()), ("c", p.c.to_string()), ("d", p.d.to_string())]);
                if let Some(b) = &p.beta {
                    v.push(("beta", b.to_string()));
                }
            }
            FamilyParams::AlSalamCarlitz(p) => {
                v.extend([("c", p.c.to_string()), ("d", p.d.to_string())]);
                if let (Some(a), Some(b)) = (&p.alpha, &p.beta) {
                    v.extend([("alpha", a.to_string()), ("beta", b.to_string())]);
                }
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qq;

    #[test]
    fn cells() {
        let q = qq(1, 2);
        assert_eq!(geometric_cell(&Scalar::one(), &q, &qq(3, 4)), Some(0));
        assert_eq!(geometric_cell(&Scalar::one(), &q, &qq(3, 1)), Some(-2));
        assert_eq!(geometric_cell(&Scalar::one(), &q, &qq(1, 4)), None);
        assert_eq!(geometric_cell(&qq(2, 1), &q, &qq(3, 16)), Some(3));
    }

    #[test]
    fn qracah_admissible_fixture() {
        let p = QRacahParams::admissible(qq(1, 2), qq(1, 1), 1, -2, qq(3, 5), qq(4, 5)).unwrap();
        assert_eq!(p.s[2], qq(-4, 1));
        assert_eq!(p.s[3], qq(2, 1));
        assert_eq!(p.chi(), qq(-96, 25));
        assert_eq!(p.window().unwrap().branch, Branch::PositiveWindow { m: 0 });
        let r = p.rescaled(3).unwrap();
        assert_eq!(r.window().unwrap().l, 2);
        assert_eq!(r.s[2], -(qq(1, 2).pow(-3)));
        assert!(p.rescaled(2).is_err());
    }

    #[test]
    fn qracah_rejections() {
        let q = qq(1, 2);
        assert!(QRacahParams::admissible(q.clone(), qq(1, 1), 1, -2, qq(3, 5), qq(3, 10)).is_err());
        assert!(QRacahParams::admissible(q.clone(), qq(1, 1), -1, 0, qq(3, 5), qq(4, 5)).is_err());
        let conj = QRacahParams::admissible(
            q.clone(),
            qq(1, 1),
            1,
            -1,
            Scalar::complex(qq(1, 3).re().clone(), qq(1, 2).re().clone()),
            Scalar::complex(qq(1, 3).re().clone(), qq(-1, 2).re().clone()),
        )
        .unwrap();
        assert_eq!(conj.window().unwrap().branch, Branch::ComplexConjugate);
        assert!(matches!(
            QRacahParams::new(q.clone(), [qq(1, 1), qq(1, 1), qq(1, 2), qq(1, 1)]),
            Err(Error::SingularParameters(_))
        ));
    }

    #[test]
    fn other_families() {
        let q = qq(1, 2);
        let p = BigQJacobiParams::new(q.clone(), qq(2, 1), qq(-1, 2), qq(5, 4), qq(3, 2)).unwrap();
        assert_eq!(p.admissibility().unwrap(), Branch::PositiveWindow { m: 1 });
        let m = QMeixnerParams::new(q.clone(), qq(1, 1), qq(-1, 1), qq(-5, 4)).unwrap();
        assert_eq!(m.admissibility().unwrap(), Branch::NegativeRatio);
        assert!(m.clone().with_beta(qq(-3, 4)).grid_admissibility().is_ok());
        assert!(m.clone().with_beta(qq(-1, 1)).grid_admissibility().is_err());
        let a = AscParams::new(q.clone(), qq(1, 1), qq(3, 2)).unwrap();
        assert_eq!(a.admissibility().unwrap(), Branch::PositiveRatio);
        assert!(AscParams::new(q, qq(1, 1), qq(3, 1)).unwrap().admissibility().is_err());
        assert_eq!("asc".parse::<FamilyKind>().unwrap(), FamilyKind::AlSalamCarlitz);
    }
}
