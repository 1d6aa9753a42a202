//! The Askey-Wilson divided-difference operator `D_q`, the averaging operator
//! `S_q`, and checks of the classical identities relating them.
//!
//! Both operators act on the symmetric Laurent image `f(x(z))`, `x(z) = (z + 1/z)/2`:
//!
//! ```text
//! D_q f = (f(x(vz)) - f(x(z/v))) / (x(vz) - x(z/v))
//! S_q f = (f(x(vz)) + f(x(z/v))) / 2
//! ```
//!
//! On the Laurent basis the shifts act diagonally (`z^j -> v^{+-j} z^j`), and
//! the denominator of `D_q` is `(v - 1/v)(z - 1/z)/2`, so both operators are
//! computed exactly without evaluating anything.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::{from_laurent, to_laurent, LaurentSym, PolyX};
use crate::scalars::{int, QContext, Rational};

/// Outcome of an exact identity check: passes iff the residual is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorCheckResult {
    pub name: String,
    pub residual: PolyX,
    pub passed: bool,
}

impl OperatorCheckResult {
    pub fn from_residual(name: impl Into<String>, residual: PolyX) -> Self {
        let passed = residual.is_zero();
        OperatorCheckResult {
            name: name.into(),
            residual,
            passed,
        }
    }
}

/// Divides an antisymmetric Laurent polynomial (given by its coefficients of
/// `z^j - z^-j`, `j >= 1`, index 0 unused) by `z - 1/z`.
fn divide_by_z_minus_inv(num: &[Rational]) -> Result<LaurentSym> {
    let Some(top) = num.len().checked_sub(1).filter(|&t| t >= 1) else {
        return Ok(LaurentSym::default());
    };
    let mut quot = vec![Rational::zero(); top];
    // N_j = Q_{j-1} - Q_{j+1}
    for j in (1..=top).rev() {
        let above = quot.get(j + 1).cloned().unwrap_or_else(Rational::zero);
        quot[j - 1] = &num[j] + above;
    }
    let q = LaurentSym::new(quot);
    // multiply back: the z^j coefficient of Q (z - 1/z) is Q_{j-1} - Q_{j+1}
    for j in 1..=top + 1 {
        let got = q.coeff(j - 1) - q.coeff(j + 1);
        let want = num.get(j).cloned().unwrap_or_else(Rational::zero);
        if got != want {
            return Err(Error::Internal(format!(
                "Laurent division by z - 1/z left a remainder at z^{j}"
            )));
        }
    }
    Ok(q)
}

/// `D_q p`. Lowers the degree by exactly one for nonconstant `p`.
pub fn apply_dq(ctx: &QContext, p: &PolyX) -> Result<PolyX> {
    let Some(deg) = p.degree() else {
        return Ok(PolyX::zero());
    };
    if deg == 0 {
        return Ok(PolyX::zero());
    }
    let l = to_laurent(p);
    // L_j (v^j - v^-j) / ((v - 1/v) / 2) = 2 gamma_j L_j
    let mut num = vec![Rational::zero(); deg + 1];
    for (j, slot) in num.iter_mut().enumerate().skip(1) {
        *slot = l.coeff(j) * ctx.gamma(j)? * int(2);
    }
    let out = from_laurent(&divide_by_z_minus_inv(&num)?);

    let expected = p.leading_coeff().cloned().unwrap_or_default() * ctx.gamma(deg)?;
    if out.degree() != Some(deg - 1) || out.leading_coeff() != Some(&expected) {
        return Err(Error::Internal(format!(
            "D_q leading-coefficient law violated for degree {deg}"
        )));
    }
    Ok(out)
}

/// `S_q p`. Preserves the degree; the leading coefficient picks up `alpha_deg`.
pub fn apply_sq(ctx: &QContext, p: &PolyX) -> Result<PolyX> {
    let l = to_laurent(p);
    let mut c = Vec::with_capacity(l.coeffs().len());
    for (j, cj) in l.coeffs().iter().enumerate() {
        c.push(cj * ctx.alpha_k(j)?);
    }
    Ok(from_laurent(&LaurentSym::new(c)))
}

/// `D_q^k p`, with `D_q^0 = id`.
pub fn apply_dq_power(ctx: &QContext, p: &PolyX, k: usize) -> Result<PolyX> {
    let mut out = p.clone();
    for _ in 0..k {
        if out.is_zero() {
            break;
        }
        out = apply_dq(ctx, &out)?;
    }
    Ok(out)
}

/// `(U1, U2) = ((alpha^2 - 1) x, (alpha^2 - 1)(x^2 - 1))`.
pub fn structural_polys(ctx: &QContext) -> (PolyX, PolyX) {
    let c = ctx.alpha_sq_minus_one();
    let u1 = PolyX::monomial(c.clone(), 1);
    let u2 = PolyX::new(vec![-c.clone(), Rational::zero(), c]);
    (u1, u2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `D(fg) = (Df)(Sg) + (Sf)(Dg)`
    ProductD,
    /// `S(fg) = U2 (Df)(Dg) + (Sf)(Sg)`
    ProductS,
    /// `S^2 f = alpha U2 D^2 f + U1 S D f + f`
    SSquared,
    /// `D S f = alpha S D f + U1 D^2 f`
    DsCommute,
}

impl Identity {
    pub const ALL: [Identity; 4] = [
        Identity::ProductD,
        Identity::ProductS,
        Identity::SSquared,
        Identity::DsCommute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::ProductD => "product_D",
            Identity::ProductS => "product_S",
            Identity::SSquared => "S_squared",
            Identity::DsCommute => "DS_commute",
        }
    }
}

/// Residual `LHS - RHS` of one of the four operator identities. `g` is
/// ignored by the single-argument identities.
pub fn verify_identity(
    ctx: &QContext,
    which: Identity,
    f: &PolyX,
    g: &PolyX,
) -> Result<OperatorCheckResult> {
    let d = |p: &PolyX| apply_dq(ctx, p);
    let s = |p: &PolyX| apply_sq(ctx, p);
    let (u1, u2) = structural_polys(ctx);
    let alpha = ctx.alpha();

    let residual = match which {
        Identity::ProductD => {
            let lhs = d(&(f * g))?;
            let rhs = &d(f)? * &s(g)? + &s(f)? * &d(g)?;
            lhs - rhs
        }
        Identity::ProductS => {
            let lhs = s(&(f * g))?;
            let rhs = &(&u2 * &d(f)?) * &d(g)? + &s(f)? * &s(g)?;
            lhs - rhs
        }
        Identity::SSquared => {
            let lhs = s(&s(f)?)?;
            let rhs = (&u2 * &d(&d(f)?)?).scale(alpha) + &u1 * &s(&d(f)?)? + f.clone();
            lhs - rhs
        }
        Identity::DsCommute => {
            let lhs = d(&s(f)?)?;
            let rhs = s(&d(f)?)?.scale(alpha) + &u1 * &d(&d(f)?)?;
            lhs - rhs
        }
    };
    Ok(OperatorCheckResult::from_residual(which.name(), residual))
}

/// Residual of `D^k(x f) = gamma_k S D^{k-1} f + alpha_k x D^k f`.
pub fn verify_k_fold_rule(ctx: &QContext, f: &PolyX, k: usize) -> Result<OperatorCheckResult> {
    if k == 0 {
        return Err(Error::Usage("k-fold rule needs k >= 1".into()));
    }
    let xf = &PolyX::x() * f;
    let lhs = apply_dq_power(ctx, &xf, k)?;
    let first = apply_sq(ctx, &apply_dq_power(ctx, f, k - 1)?)?.scale(&ctx.gamma(k)?);
    let second = (&PolyX::x() * &apply_dq_power(ctx, f, k)?).scale(&ctx.alpha_k(k)?);
    Ok(OperatorCheckResult::from_residual(
        format!("k_fold_rule_k{k}"),
        lhs - first - second,
    ))
}

/// Convenience: `S_q D_q p`.
pub fn apply_sd(ctx: &QContext, p: &PolyX) -> Result<PolyX> {
    apply_sq(ctx, &apply_dq(ctx, p)?)
}

/// Convenience: `D_q^2 p`.
pub fn apply_dd(ctx: &QContext, p: &PolyX) -> Result<PolyX> {
    apply_dq_power(ctx, p, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use num_traits::One;

    fn half() -> QContext {
        QContext::new(rat(1, 2)).unwrap()
    }

    #[test]
    fn dq_examples() {
        let c = half();
        assert!(apply_dq(&c, &PolyX::one()).unwrap().is_zero());
        assert_eq!(apply_dq(&c, &PolyX::x()).unwrap(), PolyX::one());
        let x2 = PolyX::from_ints(&[0, 0, 1]);
        assert_eq!(apply_dq(&c, &x2).unwrap(), PolyX::monomial(rat(5, 2), 1));
    }

    #[test]
    fn sq_examples() {
        let c = half();
        assert_eq!(apply_sq(&c, &PolyX::one()).unwrap(), PolyX::one());
        assert_eq!(apply_sq(&c, &PolyX::x()).unwrap(), PolyX::monomial(rat(5, 4), 1));
        let x2 = PolyX::from_ints(&[0, 0, 1]);
        assert_eq!(
            apply_sq(&c, &x2).unwrap(),
            PolyX::new(vec![rat(-9, 16), int(0), rat(17, 8)])
        );
    }

    #[test]
    fn dq_power_examples() {
        let c = half();
        let x2 = PolyX::from_ints(&[0, 0, 1]);
        assert_eq!(apply_dq_power(&c, &x2, 0).unwrap(), x2);
        assert_eq!(apply_dq_power(&c, &x2, 2).unwrap(), PolyX::constant(rat(5, 2)));
        assert!(apply_dq_power(&c, &PolyX::x(), 3).unwrap().is_zero());
    }

    #[test]
    fn structural_polys_at_half() {
        let (u1, u2) = structural_polys(&half());
        assert_eq!(u1, PolyX::monomial(rat(9, 16), 1));
        assert_eq!(u2, PolyX::new(vec![rat(-9, 16), int(0), rat(9, 16)]));
        assert!(u2.eval(&int(1)).is_zero());
    }

    #[test]
    fn identity_examples() {
        let c = half();
        let one = PolyX::one();
        assert!(verify_identity(&c, Identity::ProductD, &one, &one).unwrap().passed);
        assert!(verify_identity(&c, Identity::SSquared, &PolyX::x(), &one).unwrap().passed);
        let x2 = PolyX::from_ints(&[0, 0, 1]);
        assert!(verify_identity(&c, Identity::DsCommute, &x2, &one).unwrap().passed);
    }

    #[test]
    fn k_fold_examples() {
        let c = half();
        assert!(verify_k_fold_rule(&c, &PolyX::one(), 1).unwrap().passed);
        assert!(verify_k_fold_rule(&c, &PolyX::x(), 1).unwrap().passed);
        let f = PolyX::from_ints(&[3, -1, 4, 1, -5, 9, 2]);
        assert!(verify_k_fold_rule(&c, &f, 3).unwrap().passed);
        assert!(verify_k_fold_rule(&c, &f, 0).is_err());
    }

    #[test]
    fn degree_beyond_cap_is_an_error() {
        let c = QContext::with_cap(rat(1, 2), 4).unwrap();
        let p = PolyX::monomial(Rational::one(), 5);
        assert!(matches!(apply_dq(&c, &p), Err(Error::ExponentOverflow { .. })));
    }
}
