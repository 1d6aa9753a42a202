//! Monic Askey-Wilson polynomials built as eigenpolynomials of
//!
//! ```text
//! f(x) D_q^2 y + g(x) S_q D_q y + h(x) y = lambda_n y
//! ```
//!
//! with the coefficient data
//!
//! ```text
//! f(x)     = -q^{-1/2} (2(1 + s4) x^2 - (s1 + s3) x - 1 + s2 - s4)
//! g(x)     = 2/(1 - q) (2(s4 - 1) x + s1 - s3)
//! h(x)     = 0
//! lambda_n = 4q (1 - q^{-n}) (1 - s4 q^{n-1}) / (1 - q)^2
//! ```
//!
//! where `s1..s4` are the elementary symmetric functions of the four
//! parameters. The operator is triangular on monomials with diagonal
//! `lambda_m`, so the monic solution of degree `n` follows by
//! back-substitution once `lambda_m != lambda_n` for all `m < n`.
//!
//! The three-term recurrence is then extracted from the constructed
//! polynomials rather than assumed.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qoperators::{apply_dd, apply_sd, OperatorCheckResult};
use crate::qpoly::PolyX;
use crate::scalars::{format_rational, int, parse_rational, QContext, Rational};

// built once per family, so the inline roots cost nothing
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamMode {
    Roots([Rational; 4]),
    Sigmas,
}

/// Parameter set, always carrying the elementary symmetric functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AWParams {
    pub mode: ParamMode,
    pub sigmas: [Rational; 4],
}

impl AWParams {
    pub fn from_roots(roots: [Rational; 4]) -> Result<Self> {
        let [a, b, c, d] = &roots;
        let s1 = a + b + c + d;
        let s2 = a * b + a * c + a * d + b * c + b * d + c * d;
        let s3 = a * b * c + a * b * d + a * c * d + b * c * d;
        let s4 = a * b * c * d;
        Self::checked(ParamMode::Roots(roots), [s1, s2, s3, s4])
    }

    pub fn from_sigmas(sigmas: [Rational; 4]) -> Result<Self> {
        Self::checked(ParamMode::Sigmas, sigmas)
    }

    fn checked(mode: ParamMode, sigmas: [Rational; 4]) -> Result<Self> {
        if sigmas[3].is_one() {
            return Err(Error::DegenerateParams(
                "sigma4 = 1 makes the leading coefficient of g vanish".into(),
            ));
        }
        Ok(AWParams { mode, sigmas })
    }

    pub fn sigma(&self, j: usize) -> &Rational {
        &self.sigmas[j - 1]
    }
}

/// The coefficient polynomials `(f, g, h)` of the operator equation.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremTCoeffs {
    pub f: PolyX,
    pub g: PolyX,
    pub h: PolyX,
}

pub fn theorem_t_coeffs(ctx: &QContext, params: &AWParams) -> TheoremTCoeffs {
    let [s1, s2, s3, s4] = &params.sigmas;
    let one = Rational::one();
    let inner = PolyX::new(vec![
        -&one + s2 - s4,
        -(s1 + s3),
        int(2) * (&one + s4),
    ]);
    let f = inner.scale(&-ctx.v().recip());
    let g = PolyX::new(vec![s1 - s3, int(2) * (s4 - &one)]).scale(&(int(2) / (&one - ctx.q())));
    TheoremTCoeffs {
        f,
        g,
        h: PolyX::zero(),
    }
}

/// `lambda_n` from the closed form.
pub fn theorem_t_lambda(ctx: &QContext, params: &AWParams, n: usize) -> Result<Rational> {
    if n > ctx.exponent_cap() {
        return Err(Error::ExponentOverflow {
            exponent: n,
            cap: ctx.exponent_cap(),
        });
    }
    let q = ctx.q();
    let one = Rational::one();
    let e = n as i32;
    let qn_inv = q.pow(-e);
    let qn1 = q.pow(e - 1);
    let s4 = params.sigma(4);
    let omq = &one - q;
    Ok(int(4) * q * (&one - qn_inv) * (&one - s4 * qn1) / (&omq * &omq))
}

/// The left-hand operator `y -> f D^2 y + g S D y + h y`.
#[derive(Debug, Clone)]
pub struct OperatorEquation {
    ctx: QContext,
    params: AWParams,
    coeffs: TheoremTCoeffs,
}

impl OperatorEquation {
    pub fn new(ctx: &QContext, params: &AWParams) -> Self {
        OperatorEquation {
            ctx: ctx.clone(),
            params: params.clone(),
            coeffs: theorem_t_coeffs(ctx, params),
        }
    }

    pub fn coeffs(&self) -> &TheoremTCoeffs {
        &self.coeffs
    }

    pub fn apply(&self, y: &PolyX) -> Result<PolyX> {
        let TheoremTCoeffs { f, g, h } = &self.coeffs;
        Ok(f * &apply_dd(&self.ctx, y)? + g * &apply_sd(&self.ctx, y)? + h * y)
    }

    pub fn lambda(&self, n: usize) -> Result<Rational> {
        theorem_t_lambda(&self.ctx, &self.params, n)
    }

    /// Images of `1, x, ..., x^n`, checked to be triangular with diagonal `lambda_m`.
    fn columns(&self, n: usize) -> Result<Vec<PolyX>> {
        let mut cols = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let col = self.apply(&PolyX::monomial(Rational::one(), m))?;
            if col.degree().is_some_and(|d| d > m) {
                return Err(Error::Internal(format!(
                    "operator raised the degree of x^{m}"
                )));
            }
            if col.coeff(m) != self.lambda(m)? {
                return Err(Error::Internal(format!(
                    "diagonal entry at x^{m} differs from lambda_{m}"
                )));
            }
            cols.push(col);
        }
        Ok(cols)
    }

    fn solve_with(&self, cols: &[PolyX], n: usize) -> Result<PolyX> {
        let lambda_n = self.lambda(n)?;
        let lambdas = (0..n).map(|m| self.lambda(m)).collect::<Result<Vec<_>>>()?;
        if let Some(m) = lambdas.iter().position(|l| *l == lambda_n) {
            return Err(Error::EigenvalueCollision { m, n });
        }
        let mut y = vec![Rational::zero(); n + 1];
        y[n] = Rational::one();
        for i in (0..n).rev() {
            let mut acc = Rational::zero();
            for (m, col) in cols.iter().enumerate().take(n + 1).skip(i + 1) {
                acc += col.coeff(i) * &y[m];
            }
            y[i] = -acc / (&lambdas[i] - &lambda_n);
        }
        let y = PolyX::new(y);
        let residual = self.apply(&y)? - y.scale(&lambda_n);
        if !residual.is_zero() {
            return Err(Error::Internal(format!(
                "operator-equation residual for degree {n} is {residual}"
            )));
        }
        Ok(y)
    }

    pub fn solve(&self, n: usize) -> Result<PolyX> {
        let cols = self.columns(n)?;
        self.solve_with(&cols, n)
    }
}

/// The unique monic polynomial of degree `n` solving the operator equation.
pub fn solve_operator_equation(ctx: &QContext, params: &AWParams, n: usize) -> Result<PolyX> {
    OperatorEquation::new(ctx, params).solve(n)
}

/// Coordinates of `p` in a basis of monic polynomials with `deg basis[j] = j`.
///
/// Returns `d_0..d_{deg p}`; empty for the zero polynomial.
pub fn expand_in_monic_basis(p: &PolyX, basis: &[PolyX]) -> Result<Vec<Rational>> {
    let Some(deg) = p.degree() else {
        return Ok(Vec::new());
    };
    if deg >= basis.len() {
        return Err(Error::Index(format!(
            "expansion of a degree-{deg} polynomial needs basis elements up to {deg}, have {}",
            basis.len().saturating_sub(1)
        )));
    }
    let mut rest = p.clone();
    let mut out = vec![Rational::zero(); deg + 1];
    for j in (0..=deg).rev() {
        let c = rest.coeff(j);
        if c.is_zero() {
            continue;
        }
        rest = rest - basis[j].scale(&c);
        out[j] = c;
    }
    if !rest.is_zero() {
        return Err(Error::Internal("leading-term elimination left a remainder".into()));
    }
    Ok(out)
}

/// `B_0..B_{M-1}` and `C_0..C_{M-1}` (with `C_0 = 0` as a placeholder) for
/// monic `p_0..p_M`, after checking that `x p_n` is a three-term combination
/// with `C_n != 0`.
pub fn extract_recurrence(polys: &[PolyX]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let top = polys.len().saturating_sub(1);
    let mut b = Vec::with_capacity(top);
    let mut c = Vec::with_capacity(top);
    for n in 0..top {
        let e = expand_in_monic_basis(&(&PolyX::x() * &polys[n]), polys)?;
        if e.len() != n + 2 || !e[n + 1].is_one() {
            return Err(Error::OrthogonalityBroken(format!(
                "x p_{n} does not have leading basis coefficient 1 on p_{}",
                n + 1
            )));
        }
        if let Some(j) = (0..n.saturating_sub(1)).find(|&j| !e[j].is_zero()) {
            return Err(Error::OrthogonalityBroken(format!(
                "x p_{n} has coefficient {} on p_{j}",
                e[j]
            )));
        }
        b.push(e[n].clone());
        if n == 0 {
            c.push(Rational::zero());
        } else {
            if e[n - 1].is_zero() {
                return Err(Error::OrthogonalityBroken(format!("C_{n} = 0")));
            }
            c.push(e[n - 1].clone());
        }
    }
    Ok((b, c))
}

/// Monic Askey-Wilson polynomials `p_0..p_N` with their recurrence data.
///
/// `c[0]` is a zero placeholder so that `c[n]` is `C_n`.
#[derive(Debug, Clone)]
pub struct AWFamily {
    pub ctx: QContext,
    pub params: AWParams,
    pub polys: Vec<PolyX>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

impl AWFamily {
    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn expand(&self, p: &PolyX) -> Result<Vec<Rational>> {
        expand_in_monic_basis(p, &self.polys)
    }

    pub fn b(&self, n: usize) -> Result<&Rational> {
        self.b
            .get(n)
            .ok_or_else(|| Error::Index(format!("B_{n} is not available (N = {})", self.n_max())))
    }

    pub fn c(&self, n: usize) -> Result<&Rational> {
        if n == 0 {
            return Err(Error::Index("C_0 is not defined".into()));
        }
        self.c
            .get(n)
            .ok_or_else(|| Error::Index(format!("C_{n} is not available (N = {})", self.n_max())))
    }

    pub fn operator_equation(&self) -> OperatorEquation {
        OperatorEquation::new(&self.ctx, &self.params)
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            v: format_rational(self.ctx.v()),
            sigmas: self.params.sigmas.iter().map(format_rational).collect(),
            n: self.n_max(),
            polys: self.polys.iter().map(PolyX::to_strings).collect(),
            b: self.b.iter().map(format_rational).collect(),
            c: self.c.iter().map(format_rational).collect(),
        }
    }

    /// Loads a family exactly as stored. The recurrence data is taken as
    /// given and not re-derived, so perturbed fixtures survive loading.
    pub fn from_json(doc: &FamilyJson) -> Result<Self> {
        let ctx = QContext::new(parse_rational(&doc.v)?)?;
        let sigmas: Vec<Rational> = doc
            .sigmas
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_>>()?;
        let sigmas: [Rational; 4] = sigmas
            .try_into()
            .map_err(|_| Error::Parse("expected four sigmas".into()))?;
        let params = AWParams::from_sigmas(sigmas)?;
        let polys = doc
            .polys
            .iter()
            .map(|p| PolyX::from_strings(p))
            .collect::<Result<Vec<_>>>()?;
        if polys.len() != doc.n + 1 {
            return Err(Error::Parse(format!(
                "N = {} but {} polynomials given",
                doc.n,
                polys.len()
            )));
        }
        for (n, p) in polys.iter().enumerate() {
            if p.degree() != Some(n) || !p.is_monic() {
                return Err(Error::Parse(format!("p_{n} is not monic of degree {n}")));
            }
        }
        let parse_all = |v: &[String]| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>();
        let b = parse_all(&doc.b)?;
        let c = parse_all(&doc.c)?;
        if b.len() != doc.n || c.len() != doc.n {
            return Err(Error::Parse(format!("B and C must each have N = {} entries", doc.n)));
        }
        Ok(AWFamily {
            ctx,
            params,
            polys,
            b,
            c,
        })
    }
}

/// Serialized family; every number is a rational string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub v: String,
    pub sigmas: Vec<String>,
    #[serde(rename = "N")]
    pub n: usize,
    pub polys: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "C")]
    pub c: Vec<String>,
}

/// Solves for `p_0..p_N` and extracts `B_n`, `C_n`.
pub fn build_family(ctx: &QContext, params: &AWParams, n_max: usize) -> Result<AWFamily> {
    if n_max < 2 {
        return Err(Error::Usage(
            "a three-term recurrence needs N >= 2".into(),
        ));
    }
    let eq = OperatorEquation::new(ctx, params);
    let cols = eq.columns(n_max)?;
    let polys = (0..=n_max)
        .map(|n| eq.solve_with(&cols, n))
        .collect::<Result<Vec<_>>>()?;
    let (b, c) = extract_recurrence(&polys)?;
    Ok(AWFamily {
        ctx: ctx.clone(),
        params: params.clone(),
        polys,
        b,
        c,
    })
}

/// Residual `f D^2 p_n + g S D p_n + h p_n - lambda_n p_n`.
pub fn verify_operator_equation(family: &AWFamily, n: usize) -> Result<OperatorCheckResult> {
    let p = family
        .polys
        .get(n)
        .ok_or_else(|| Error::Index(format!("p_{n} is not in the family")))?;
    let eq = family.operator_equation();
    let residual = eq.apply(p)? - p.scale(&eq.lambda(n)?);
    Ok(OperatorCheckResult::from_residual(
        format!("operator_equation_n{n}"),
        residual,
    ))
}
