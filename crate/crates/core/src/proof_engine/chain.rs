//! The chain of operator equations linking `P^[k-1]` and `P^[k]`.
//!
//! Throughout, `P_n` abbreviates `P_n^[k-1]`, `B_n`, `C_n` are the base
//! recurrence coefficients, and `B_n^[k]`, `C_n^[k]` those of the order-`k`
//! family. Every equation is checked by evaluating both sides exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::askey_wilson::AWFamily;
use crate::error::{Error, Result};
use crate::proof_engine::derived::{derived_family, DerivedFamily};
use crate::qoperators::{
    apply_dd, apply_dq, apply_sd, apply_sq, structural_polys, OperatorCheckResult,
};
use crate::qpoly::PolyX;
use crate::scalars::{QContext, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ChainEquation {
    Eq1a,
    Eq1b,
    Eq3,
    Eq4,
    Eq3b,
    Eq3a,
    Eq6,
    Eq7,
    EqFinal,
}

impl ChainEquation {
    pub const ALL: [ChainEquation; 9] = [
        ChainEquation::Eq1a,
        ChainEquation::Eq1b,
        ChainEquation::Eq3,
        ChainEquation::Eq4,
        ChainEquation::Eq3b,
        ChainEquation::Eq3a,
        ChainEquation::Eq6,
        ChainEquation::Eq7,
        ChainEquation::EqFinal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChainEquation::Eq1a => "eq1a",
            ChainEquation::Eq1b => "eq1b",
            ChainEquation::Eq3 => "eq3",
            ChainEquation::Eq4 => "eq4",
            ChainEquation::Eq3b => "eq3b",
            ChainEquation::Eq3a => "eq3a",
            ChainEquation::Eq6 => "eq6",
            ChainEquation::Eq7 => "eq7",
            ChainEquation::EqFinal => "eq_final",
        }
    }

    /// Smallest `n` at which every referenced object exists.
    pub fn min_n(self) -> usize {
        match self {
            ChainEquation::Eq1a | ChainEquation::Eq4 | ChainEquation::Eq3a => 1,
            ChainEquation::Eq7 => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for ChainEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-`n` coefficient data.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainCoeffs {
    pub n: usize,
    pub d: PolyX,
    pub e: Rational,
    pub f: Rational,
    /// `F_{n+1}`, needed by `f_n`.
    pub f_next: Rational,
    pub d_tilde: PolyX,
    pub e_tilde: Rational,
    pub f_poly: PolyX,
    pub g_poly: PolyX,
    pub r: Option<Rational>,
}

/// Operator images of `P_m^[k-1]`, computed once.
#[derive(Debug, Clone)]
struct Images {
    p: PolyX,
    d: PolyX,
    s: PolyX,
    sd: PolyX,
    dd: PolyX,
}

/// The two derived families at orders `k-1` and `k` over a base family.
#[derive(Debug, Clone)]
pub struct ChainSystem<'a> {
    pub base: &'a AWFamily,
    pub k: usize,
    pub lower: DerivedFamily,
    pub upper: DerivedFamily,
    images: Vec<Images>,
    u2: PolyX,
}

/// Common `(f, g)` with the per-`n` scalars `r_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FgExtraction {
    pub f: PolyX,
    pub g: PolyX,
    pub r: BTreeMap<usize, Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarCheck {
    pub name: String,
    pub value: Rational,
    pub passed: bool,
}

impl ScalarCheck {
    fn nonzero(name: impl Into<String>, value: Rational) -> Self {
        ScalarCheck {
            name: name.into(),
            passed: !value.is_zero(),
            value,
        }
    }
}

impl<'a> ChainSystem<'a> {
    /// Builds `P^[k-1]` and `P^[k]` as far as the base family allows.
    pub fn new(base: &'a AWFamily, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Usage("the chain needs k >= 1".into()));
        }
        let n = base.n_max();
        if n < k + 2 {
            return Err(Error::Usage(format!(
                "order {k} needs a base family with N >= {}",
                k + 2
            )));
        }
        let lower = derived_family(base, k - 1, n + 1 - k)?;
        let upper = derived_family(base, k, n - k)?;
        Self::from_parts(base, lower, upper)
    }

    /// Assembles a system from precomputed derived families.
    pub fn from_parts(base: &'a AWFamily, lower: DerivedFamily, upper: DerivedFamily) -> Result<Self> {
        if upper.k != lower.k + 1 {
            return Err(Error::Usage("derived families must have consecutive orders".into()));
        }
        let ctx = &base.ctx;
        let images = lower
            .polys
            .iter()
            .map(|p| {
                Ok(Images {
                    p: p.clone(),
                    d: apply_dq(ctx, p)?,
                    s: apply_sq(ctx, p)?,
                    sd: apply_sd(ctx, p)?,
                    dd: apply_dd(ctx, p)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let (_, u2) = structural_polys(ctx);
        Ok(ChainSystem {
            base,
            k: upper.k,
            lower,
            upper,
            images,
            u2,
        })
    }

    pub fn ctx(&self) -> &QContext {
        &self.base.ctx
    }

    fn img(&self, m: usize) -> Result<&Images> {
        self.images
            .get(m)
            .ok_or_else(|| Error::Index(format!("P_{m}^[{}] is not available", self.k - 1)))
    }

    fn g(&self, n: usize) -> Result<Rational> {
        self.ctx().gamma(n)
    }

    /// `1 / gamma_n`, an index error at `n = 0`.
    fn g_inv(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::Index("coefficient divides by gamma_0 = 0".into()));
        }
        Ok(self.g(n)?.recip())
    }

    fn base_b(&self, n: usize) -> Result<&Rational> {
        self.base.b(n)
    }

    fn base_c(&self, n: usize) -> Result<&Rational> {
        self.base.c(n)
    }

    fn sub(n: usize, by: usize) -> Result<usize> {
        n.checked_sub(by)
            .ok_or_else(|| Error::Index(format!("index {n} - {by} is negative")))
    }

    /// `D_n(x)`.
    pub fn d_coeff(&self, n: usize) -> Result<PolyX> {
        let k = self.k;
        let n1 = Self::sub(n, 1)?;
        let ck = self.upper.c(n1)?;
        let c = self.base_c(n + k - 1)?;
        let inv_g = self.g_inv(n1)?;
        let inv_gk = self.g_inv(n + k - 1)?;
        let lin = self.ctx().alpha_k(k + 1)? * &inv_g * ck - self.ctx().alpha() * &inv_gk * c;
        let cst = -(self.base_b(n + k - 1)? * ck * &inv_g) + self.upper.b(n1)? * c * &inv_gk;
        Ok(PolyX::new(vec![cst, lin]))
    }

    /// `E_n`.
    pub fn e_coeff(&self, n: usize) -> Result<Rational> {
        let k = self.k;
        let n1 = Self::sub(n, 1)?;
        Ok(self.g(k + 1)? * self.g_inv(n1)? * self.upper.c(n1)?
            - self.g_inv(n + k - 1)? * self.base_c(n + k - 1)?)
    }

    /// `F_n`.
    pub fn f_coeff(&self, n: usize) -> Result<Rational> {
        let k = self.k;
        let n1 = Self::sub(n, 1)?;
        let inv_g1 = self.g_inv(n + 1)?;
        Ok(self.g(n + k)? * &inv_g1 * self.g_inv(n1)? * self.upper.c(n1)?
            - self.g(n)? * &inv_g1 * self.g_inv(n + k - 1)? * self.base_c(n + k - 1)?)
    }

    /// `D~_n(x)`, from `gamma_{n+2} D~_n = gamma_k alpha_n / gamma_{n+1} x + B_{n+k} - gamma_{n+k+1} / gamma_{n+1} B_n^[k]`.
    pub fn d_tilde_coeff(&self, n: usize) -> Result<PolyX> {
        let k = self.k;
        let ctx = self.ctx();
        let inv_g1 = self.g_inv(n + 1)?;
        let lin = ctx.gamma(k)? * ctx.alpha_k(n)? * &inv_g1;
        self.d_tilde_from(n, lin)
    }

    /// `D~_n(x)` with the linear coefficient `alpha_k gamma_n / gamma_{n+1}` as
    /// it is usually printed. It agrees with [`Self::d_tilde_coeff`] only when
    /// `n = k`; kept so the discrepancy can be demonstrated.
    pub fn d_tilde_as_printed(&self, n: usize) -> Result<PolyX> {
        let ctx = self.ctx();
        let lin = ctx.alpha_k(self.k)? * ctx.gamma(n)? * self.g_inv(n + 1)?;
        self.d_tilde_from(n, lin)
    }

    fn d_tilde_from(&self, n: usize, lin: Rational) -> Result<PolyX> {
        let k = self.k;
        let inv_g1 = self.g_inv(n + 1)?;
        let cst = self.base_b(n + k)? - self.g(n + k + 1)? * &inv_g1 * self.upper.b(n)?;
        Ok(PolyX::new(vec![cst, lin]).scale(&self.g_inv(n + 2)?))
    }

    /// `E~_n = gamma_n gamma_k / (gamma_{n+1} gamma_{n+2})`.
    pub fn e_tilde_coeff(&self, n: usize) -> Result<Rational> {
        Ok(self.g(n)? * self.g(self.k)? * self.g_inv(n + 1)? * self.g_inv(n + 2)?)
    }

    /// All coefficients at `n`, with `f_n`, `g_n` assembled from them.
    pub fn chain_coeffs(&self, n: usize) -> Result<ChainCoeffs> {
        let d = self.d_coeff(n)?;
        let e = self.e_coeff(n)?;
        let f = self.f_coeff(n)?;
        let f_next = self.f_coeff(n + 1)?;
        let d_tilde = self.d_tilde_coeff(n)?;
        let e_tilde = self.e_tilde_coeff(n)?;
        let f_poly = self.u2.scale(&(&e * &e_tilde)) - &d * &d_tilde
            + PolyX::constant(&f * &f_next);
        let g_poly = d.scale(&e_tilde) - d_tilde.scale(&e);
        Ok(ChainCoeffs {
            n,
            d,
            e,
            f,
            f_next,
            d_tilde,
            e_tilde,
            f_poly,
            g_poly,
            r: None,
        })
    }

    /// Residual `LHS - RHS` of one chain equation at `n`. The final equation
    /// needs the `(f, g, r_n)` extraction.
    pub fn verify(
        &self,
        which: ChainEquation,
        n: usize,
        fg: Option<&FgExtraction>,
    ) -> Result<OperatorCheckResult> {
        if n < which.min_n() {
            return Err(Error::Index(format!(
                "{which} is defined from n = {}",
                which.min_n()
            )));
        }
        let ctx = self.ctx();
        let k = self.k;
        let x = PolyX::x();
        let u2 = &self.u2;
        let gk = self.g(k)?;

        let residual = match which {
            ChainEquation::Eq1a => {
                let (lo, mid, hi) = (self.img(n - 1)?, self.img(n)?, self.img(n + 1)?);
                let lhs = mid.s.scale(&gk) + (&x * &mid.d).scale(&ctx.alpha_k(k)?);
                let rhs = hi.d.scale(&(self.g(n + k)? * self.g_inv(n + 1)?))
                    + mid.d.scale(self.base_b(n + k - 1)?)
                    + lo.d.scale(
                        &(self.g(n)? * self.g_inv(n + k - 1)? * self.base_c(n + k - 1)?),
                    );
                lhs - rhs
            }
            ChainEquation::Eq1b => {
                let (lo, mid, hi) = (self.img(n - 1)?, self.img(n)?, self.img(n + 1)?);
                let inv_gn = self.g_inv(n)?;
                let lhs = (&x * &mid.d).scale(&inv_gn);
                let rhs = hi.d.scale(&self.g_inv(n + 1)?)
                    + mid.d.scale(&(&inv_gn * self.upper.b(n - 1)?))
                    + lo.d.scale(&(self.g_inv(n - 1)? * self.upper.c(n - 1)?));
                lhs - rhs
            }
            ChainEquation::Eq3 => {
                let (mid, hi) = (self.img(n)?, self.img(n + 1)?);
                let lhs = &self.d_coeff(n)? * &mid.sd
                    + (u2 * &mid.dd).scale(&self.e_coeff(n)?)
                    + mid.p.scale(&(&gk * self.g_inv(n - 1)? * self.upper.c(n - 1)?));
                lhs - hi.sd.scale(&self.f_coeff(n)?)
            }
            ChainEquation::Eq4 => {
                let (mid, hi) = (self.img(n)?, self.img(n + 1)?);
                let lhs = &self.d_tilde_coeff(n)? * &hi.sd
                    - (u2 * &hi.dd).scale(&self.e_tilde_coeff(n)?)
                    - hi.p.scale(&(&gk * self.g_inv(n + 2)?));
                lhs - mid.sd.scale(&self.f_coeff(n + 1)?)
            }
            ChainEquation::Eq3b => {
                let (mid, hi) = (self.img(n)?, self.img(n + 1)?);
                let lhs = &self.d_coeff(n)? * &mid.dd + mid.sd.scale(&self.e_coeff(n)?);
                lhs - hi.dd.scale(&self.f_coeff(n)?)
            }
            ChainEquation::Eq3a => {
                let (mid, hi) = (self.img(n)?, self.img(n + 1)?);
                let lhs = &self.d_tilde_coeff(n)? * &hi.dd - hi.sd.scale(&self.e_tilde_coeff(n)?);
                lhs - mid.dd.scale(&self.f_coeff(n + 1)?)
            }
            ChainEquation::Eq6 => {
                let mid = self.img(n)?;
                let cc = self.chain_coeffs(n)?;
                &cc.f_poly * &mid.dd
                    + &cc.g_poly * &mid.sd
                    + mid.p.scale(
                        &(&gk * self.g_inv(n - 1)? * &cc.e_tilde * self.upper.c(n - 1)?),
                    )
            }
            ChainEquation::Eq7 => {
                let mid = self.img(n)?;
                let prev = self.chain_coeffs(n - 1)?;
                &prev.f_poly * &mid.dd
                    + &prev.g_poly * &mid.sd
                    + mid.p.scale(&(&gk * self.g_inv(n + 1)? * &prev.e))
            }
            ChainEquation::EqFinal => {
                let fg = fg.ok_or_else(|| {
                    Error::Dependency("eq_final needs f, g and r_n from extract_rn_fg".into())
                })?;
                let mid = self.img(n)?;
                let lambda = self.final_lambda(n, fg)?;
                &fg.f * &mid.dd + &fg.g * &mid.sd + mid.p.scale(&lambda)
            }
        };
        Ok(OperatorCheckResult::from_residual(which.name(), residual))
    }

    /// `lambda_n = gamma_k E~_n C_{n-1}^[k] / (r_n gamma_{n-1})`.
    pub fn final_lambda(&self, n: usize, fg: &FgExtraction) -> Result<Rational> {
        let r = fg
            .r
            .get(&n)
            .ok_or_else(|| Error::Dependency(format!("r_{n} was not extracted")))?;
        Ok(self.g(self.k)? * self.e_tilde_coeff(n)? * self.upper.c(Self::sub(n, 1)?)?
            / (r * self.g(n - 1)?))
    }

    /// `lambda_n` read off the final equation itself: with `P_n` monic, the
    /// `x^n` coefficient of `f D^2 P_n + g S D P_n` is `-lambda_n`.
    pub fn lambda_from_final_equation(&self, n: usize, fg: &FgExtraction) -> Result<Rational> {
        let mid = self.img(n)?;
        let lhs = &fg.f * &mid.dd + &fg.g * &mid.sd;
        Ok(-lhs.coeff(n))
    }

    /// Nonvanishing claims at `n`, each reported only where it is defined.
    pub fn check_nonvanishing(&self, n: usize) -> Vec<ScalarCheck> {
        let mut out = Vec::new();
        if let Ok(v) = self.f_coeff(n) {
            out.push(ScalarCheck::nonzero("nonzero_F_n", v));
        }
        if let Ok(v) = self.f_coeff(n + 1) {
            out.push(ScalarCheck::nonzero("nonzero_F_n+1", v));
        }
        if let Some(v) = n.checked_sub(1).and_then(|m| self.e_coeff(m).ok()) {
            out.push(ScalarCheck::nonzero("nonzero_E_n-1", v));
        }
        if n >= 1 {
            if let Ok(v) = self.e_tilde_coeff(n) {
                out.push(ScalarCheck::nonzero("nonzero_Etilde_n", v));
            }
            if let Ok(v) = self.base.operator_equation().lambda(n) {
                out.push(ScalarCheck::nonzero("nonzero_lambda_n", v));
            }
        }
        if let Ok(v) = self.base_c(n) {
            out.push(ScalarCheck::nonzero("nonzero_C_n", v.clone()));
        }
        if let Ok(v) = self.upper.c(n) {
            out.push(ScalarCheck::nonzero("nonzero_Ck_n", v.clone()));
        }
        out
    }

    /// The `n` values in `lo..=hi` at which `which` can be evaluated.
    pub fn window(&self, which: ChainEquation, lo: usize, hi: usize) -> Vec<usize> {
        let lo = lo.max(which.min_n());
        (lo..=hi)
            .filter(|&n| match which {
                ChainEquation::EqFinal | ChainEquation::Eq6 => self.chain_coeffs(n).is_ok(),
                ChainEquation::Eq7 => {
                    self.chain_coeffs(n - 1).is_ok() && self.img(n).is_ok()
                }
                _ => !matches!(self.verify(which, n, None), Err(Error::Index(_))),
            })
            .collect()
    }

    /// Runs [`extract_rn_fg`] on the `(f_n, g_n)` pairs for `ns`.
    pub fn extract_rn_fg(&self, ns: &[usize]) -> Result<FgExtraction> {
        let pairs = ns
            .iter()
            .map(|&n| {
                let cc = self.chain_coeffs(n)?;
                Ok((n, cc.f_poly, cc.g_poly))
            })
            .collect::<Result<Vec<_>>>()?;
        extract_rn_fg(&pairs)
    }
}

fn fg_vector(f: &PolyX, g: &PolyX) -> [Rational; 5] {
    [f.coeff(0), f.coeff(1), f.coeff(2), g.coeff(0), g.coeff(1)]
}

/// Finds `(f, g)` and nonzero `r_n` with `f_n = r_n f`, `g_n = r_n g` for
/// every given `(n, f_n, g_n)`.
///
/// `(f, g)` is the pair at the smallest `n`, rescaled so that its first
/// nonzero coefficient (scanning `f` from the constant term up, then `g`) is 1.
pub fn extract_rn_fg(pairs: &[(usize, PolyX, PolyX)]) -> Result<FgExtraction> {
    if pairs.len() < 2 {
        return Err(Error::Usage("extraction needs at least two indices".into()));
    }
    for (n, f, g) in pairs {
        if f.degree().is_some_and(|d| d > 2) || g.degree().is_some_and(|d| d > 1) {
            return Err(Error::ProportionalityFailure {
                n: *n,
                reason: "f_n must have degree <= 2 and g_n degree <= 1".into(),
            });
        }
    }
    let mut sorted: Vec<_> = pairs.iter().collect();
    sorted.sort_by_key(|(n, _, _)| *n);
    let (n0, f0, g0) = sorted[0];
    let v0 = fg_vector(f0, g0);
    let Some(lead) = v0.iter().position(|c| !c.is_zero()) else {
        return Err(Error::ProportionalityFailure {
            n: *n0,
            reason: "f_n and g_n are both zero".into(),
        });
    };
    let norm = v0[lead].recip();
    let f = f0.scale(&norm);
    let g = g0.scale(&norm);
    let base = fg_vector(&f, &g);

    let mut r = BTreeMap::new();
    for (n, fn_, gn) in sorted {
        let v = fg_vector(fn_, gn);
        let rn = v[lead].clone();
        if rn.is_zero() {
            let reason = if v.iter().all(Zero::is_zero) {
                "f_n and g_n are both zero"
            } else {
                "not proportional to the reference pair"
            };
            return Err(Error::ProportionalityFailure {
                n: *n,
                reason: reason.into(),
            });
        }
        if v.iter().zip(&base).any(|(a, b)| *a != &rn * b) {
            return Err(Error::ProportionalityFailure {
                n: *n,
                reason: "not proportional to the reference pair".into(),
            });
        }
        r.insert(*n, rn);
    }
    debug_assert!(r.values().next().is_some_and(|r0| !r0.is_zero()));
    Ok(FgExtraction { f, g, r })
}
