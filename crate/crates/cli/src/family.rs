//! Family selection and parameter flags shared by the subcommands.

use anyhow::{bail, Result};
use clap::Args;
use qaskey::params::{AscParams, BigQJacobiParams, FamilyKind, FamilyParams, QMeixnerParams, QRacahParams};
use qaskey::verify::family_fixtures;
use qaskey::Scalar;

/// Parameters are rational strings such as `3/5`, `-2` or `1/2+1/3i`. Any parameter that
/// is not given falls back to the family's built-in fixture.
#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// qr, bqj, qm or asc.
    #[arg(long, default_value = "qr")]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub s0: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub s1: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub s2: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub s3: Option<Scalar>,
    /// q-Racah grid: with --l and --r, s2 and s3 are derived from (zeta, L, R).
    #[arg(long, allow_hyphen_values = true)]
    pub zeta: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<Scalar>,
    /// Grid anchor (q-Meixner uses beta, Al-Salam–Carlitz alpha and beta).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<Scalar>,
}

fn pick(v: &Option<Scalar>, default: &Scalar) -> Scalar {
    v.clone().unwrap_or_else(|| default.clone())
}

impl FamilyArgs {
    pub fn kind(&self) -> Result<FamilyKind> {
        Ok(self.family.parse()?)
    }

    pub fn build(&self, q: &Scalar) -> Result<FamilyParams> {
        let kind = self.kind()?;
        let fixture = family_fixtures(q)?.into_iter().find(|f| f.kind() == kind).expect("one fixture per family");
        Ok(match fixture {
            FamilyParams::QRacah(f) => {
                let s0 = pick(&self.s0, &f.s[0]);
                let s1 = pick(&self.s1, &f.s[1]);
                match (&self.zeta, self.l, self.r) {
                    (zeta, Some(l), Some(r)) => {
                        if self.s2.is_some() || self.s3.is_some() {
                            bail!("--s2/--s3 are determined by --zeta, --l, --r");
                        }
                        let zeta = zeta.clone().unwrap_or_else(Scalar::one);
                        FamilyParams::QRacah(QRacahParams::admissible(q.clone(), zeta, l, r, s0, s1)?)
                    }
                    (None, None, None) => {
                        let s = [s0, s1, pick(&self.s2, &f.s[2]), pick(&self.s3, &f.s[3])];
                        FamilyParams::QRacah(QRacahParams::new(q.clone(), s)?)
                    }
                    _ => bail!("a q-Racah grid needs both --l and --r"),
                }
            }
            FamilyParams::BigQJacobi(f) => FamilyParams::BigQJacobi(BigQJacobiParams::new(
                q.clone(),
                pick(&self.a, &f.a),
                pick(&self.b, &f.b),
                pick(&self.c, &f.c),
                pick(&self.d, &f.d),
            )?),
            FamilyParams::QMeixner(f) => {
                let mut p = QMeixnerParams::new(q.clone(), pick(&self.a, &f.a), pick(&self.c, &f.c), pick(&self.d, &f.d))?;
                if let Some(beta) = &self.beta {
                    p = p.with_beta(beta.clone());
                }
                FamilyParams::QMeixner(p)
            }
            FamilyParams::AlSalamCarlitz(f) => {
                let mut p = AscParams::new(q.clone(), pick(&self.c, &f.c), pick(&self.d, &f.d))?;
                match (&self.alpha, &self.beta) {
                    (Some(a), Some(b)) => p = p.with_anchors(a.clone(), b.clone()),
                    (None, None) => {}
                    _ => bail!("Al-Salam–Carlitz grids need both --alpha and --beta"),
                }
                FamilyParams::AlSalamCarlitz(p)
            }
        })
    }
}

/// Why the parameters would be rejected by measure-level commands, if they would be.
pub fn admissibility_warning(p: &FamilyParams) -> Option<String> {
    let r = match p {
        FamilyParams::QRacah(x) => x.window().map(|_| ()),
        FamilyParams::BigQJacobi(x) => x.admissibility().map(|_| ()),
        FamilyParams::QMeixner(x) => x.admissibility().map(|_| ()),
        FamilyParams::AlSalamCarlitz(x) => x.admissibility().map(|_| ()),
    };
    r.err().map(|e| e.to_string())
}
