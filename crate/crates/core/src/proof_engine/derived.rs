use crate::askey_wilson::{extract_recurrence, AWFamily};
use crate::error::{Error, Result};
use crate::qoperators::apply_dq_power;
use crate::qpoly::PolyX;
use crate::scalars::{QContext, Rational};

/// `P_n^[k] = (gamma_n! / gamma_{n+k}!) D_q^k p_{n+k}` for `n = 0..=M`,
/// with its extracted recurrence. `c[0]` is a zero placeholder.
#[derive(Debug, Clone)]
pub struct DerivedFamily {
    pub k: usize,
    pub ctx: QContext,
    pub polys: Vec<PolyX>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

impl DerivedFamily {
    pub fn m_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn poly(&self, n: usize) -> Result<&PolyX> {
        self.polys
            .get(n)
            .ok_or_else(|| Error::Index(format!("P_{n}^[{}] is not available", self.k)))
    }

    pub fn b(&self, n: usize) -> Result<&Rational> {
        self.b
            .get(n)
            .ok_or_else(|| Error::Index(format!("B_{n}^[{}] is not available", self.k)))
    }

    pub fn c(&self, n: usize) -> Result<&Rational> {
        if n == 0 {
            return Err(Error::Index(format!("C_0^[{}] is not defined", self.k)));
        }
        self.c
            .get(n)
            .ok_or_else(|| Error::Index(format!("C_{n}^[{}] is not available", self.k)))
    }
}

/// Builds `P_0^[k]..P_M^[k]` from the base family. `k = 0` returns the base
/// polynomials themselves.
pub fn derived_family(base: &AWFamily, k: usize, m: usize) -> Result<DerivedFamily> {
    if m + k > base.n_max() {
        return Err(Error::Usage(format!(
            "P_{m}^[{k}] needs p_{} but the base family stops at N = {}",
            m + k,
            base.n_max()
        )));
    }
    let ctx = &base.ctx;
    let mut polys = Vec::with_capacity(m + 1);
    for n in 0..=m {
        let scale = ctx.gamma_factorial(n)? / ctx.gamma_factorial(n + k)?;
        let p = apply_dq_power(ctx, &base.polys[n + k], k)?.scale(&scale);
        if p.degree() != Some(n) || !p.is_monic() {
            return Err(Error::Internal(format!(
                "P_{n}^[{k}] is not monic of degree {n}"
            )));
        }
        polys.push(p);
    }
    let (b, c) = extract_recurrence(&polys).map_err(|e| match e {
        Error::OrthogonalityBroken(msg) => Error::OrthogonalityBroken(format!("order {k}: {msg}")),
        other => other,
    })?;
    Ok(DerivedFamily {
        k,
        ctx: ctx.clone(),
        polys,
        b,
        c,
    })
}
