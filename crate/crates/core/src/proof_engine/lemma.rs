//! Common zeros of `D_q P` and `S_q P`, and the structure-relation bandwidth.

use num_traits::Zero;

use crate::askey_wilson::AWFamily;
use crate::error::{Error, Result};
use crate::qoperators::{apply_dq, apply_dq_power, apply_sq};
use crate::qpoly::{resultant, PolyX};
use crate::scalars::{QContext, Rational};

/// Passes iff the resultant is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct CommonZerosCheck {
    pub resultant: Rational,
    pub passed: bool,
}

/// `resultant(D_q P, S_q P) != 0`. A nonzero constant `D_q P` has no zeros,
/// and its resultant with `S_q P` is a nonzero power of it.
pub fn check_no_common_zeros(ctx: &QContext, p: &PolyX) -> Result<CommonZerosCheck> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::Domain("common-zeros check needs deg P >= 1".into()));
    }
    let res = resultant(&apply_dq(ctx, p)?, &apply_sq(ctx, p)?)?;
    Ok(CommonZerosCheck {
        passed: !res.is_zero(),
        resultant: res,
    })
}

/// Coefficients of `pi D_q^k p_n` in the base family, with the window test.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureCheck {
    pub coeffs: Vec<Rational>,
    /// Inclusive index window `n - m ..= n + m - 2k + deg pi`.
    pub window: (usize, usize),
    pub passed: bool,
}

impl StructureCheck {
    /// `n - j` for the lowest index `j` carrying a nonzero coefficient.
    pub fn observed_lower_reach(&self, n: usize) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|j| n.saturating_sub(j))
    }
}

/// Expands `pi D_q^k p_n` and checks that it is supported on the window with
/// a nonzero coefficient at `n - m`.
pub fn verify_structure_relation(
    base: &AWFamily,
    k: usize,
    pi: &PolyX,
    m: usize,
    n: usize,
) -> Result<StructureCheck> {
    let Some(dp) = pi.degree() else {
        return Err(Error::Domain("pi must be nonzero".into()));
    };
    if n < m + k {
        return Err(Error::Index(format!("need n >= m + k, got n = {n}, m = {m}, k = {k}")));
    }
    if dp + n - k > base.n_max() {
        return Err(Error::Index(format!(
            "pi D^{k} p_{n} has degree {} beyond N = {}",
            dp + n - k,
            base.n_max()
        )));
    }
    let pn = base
        .polys
        .get(n)
        .ok_or_else(|| Error::Index(format!("p_{n} is not in the family")))?;
    let coeffs = base.expand(&(pi * &apply_dq_power(&base.ctx, pn, k)?))?;
    let lo = n - m;
    let hi = (n + m + dp).saturating_sub(2 * k);
    let outside = coeffs
        .iter()
        .enumerate()
        .any(|(j, c)| (j < lo || j > hi) && !c.is_zero());
    let anchored = coeffs.get(lo).is_some_and(|c| !c.is_zero());
    Ok(StructureCheck {
        passed: !outside && anchored,
        window: (lo, hi),
        coeffs,
    })
}
