//! Matching the extracted `(f, g)` against the base operator equation.
//!
//! With unknowns `s` and `t_j = s sigma_j`, the coefficients of `s (f_T, g_T)`
//! are linear:
//!
//! ```text
//! f_0 = -v^{-1} (-s + t2 - t4)      g_0 = c (t1 - t3)
//! f_1 =  v^{-1} (t1 + t3)           g_1 = 2c (t4 - s)
//! f_2 = -2 v^{-1} (s + t4)          c   = 2 / (1 - q)
//! ```

use num_traits::{One, Zero};

use crate::askey_wilson::{theorem_t_coeffs, theorem_t_lambda, AWParams};
use crate::error::{Error, Result};
use crate::linalg::{solve, LinearSolution};
use crate::proof_engine::chain::{ChainSystem, FgExtraction};
use crate::scalars::{int, QContext, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremMatch {
    /// `sigma'` with `(f, g) = scale * (f_T, g_T)(sigma')`.
    pub sigmas: [Rational; 4],
    pub scale: Rational,
    /// Unknowns left undetermined by the linear system, by index into
    /// `(s, t1, t2, t3, t4)`. Always empty for this system; kept for reporting.
    pub free: Vec<usize>,
    /// `(n, lambda from the final equation, -scale * lambda_T(sigma', n))`.
    pub lambdas: Vec<(usize, Rational, Rational)>,
    pub passed: bool,
}

/// Solves for `(scale, sigma')` from an extracted `(f, g)`.
pub fn match_sigmas(ctx: &QContext, fg: &FgExtraction) -> Result<(Rational, [Rational; 4], Vec<usize>)> {
    let vi = ctx.v().recip();
    let c = int(2) / (Rational::one() - ctx.q());
    let z = Rational::zero;
    let a = vec![
        vec![vi.clone(), z(), -vi.clone(), z(), vi.clone()],
        vec![z(), vi.clone(), z(), vi.clone(), z()],
        vec![int(-2) * &vi, z(), z(), z(), int(-2) * &vi],
        vec![z(), c.clone(), z(), -c.clone(), z()],
        vec![int(-2) * &c, z(), z(), z(), int(2) * &c],
    ];
    let b = [
        fg.f.coeff(0),
        fg.f.coeff(1),
        fg.f.coeff(2),
        fg.g.coeff(0),
        fg.g.coeff(1),
    ];
    let (x, free) = match solve(&a, &b) {
        LinearSolution::Solved { particular, free } => (particular, free),
        LinearSolution::Inconsistent => {
            return Err(Error::NoRationalMatch("the linear system for sigma is inconsistent".into()))
        }
    };
    let s = x[0].clone();
    if s.is_zero() || free.contains(&0) {
        return Err(Error::NoRationalMatch("the scale factor is zero or undetermined".into()));
    }
    let sig = [&x[1] / &s, &x[2] / &s, &x[3] / &s, &x[4] / &s];
    Ok((s, sig, free))
}

/// Checks that `(f, g)` is `scale * (f_T, g_T)` at the recovered `sigma'` and
/// that every eigenvalue of the final equation equals `-scale * lambda_T(sigma', n)`.
pub fn verify_final_vs_theorem_t(sys: &ChainSystem<'_>, fg: &FgExtraction) -> Result<TheoremMatch> {
    let ctx = sys.ctx();
    let (scale, sigmas, free) = match_sigmas(ctx, fg)?;
    let params = AWParams::from_sigmas(sigmas.clone())
        .map_err(|e| Error::NoRationalMatch(format!("recovered sigma is not admissible: {e}")))?;
    let t = theorem_t_coeffs(ctx, &params);
    let mut passed = t.f.scale(&scale) == fg.f && t.g.scale(&scale) == fg.g;
    let mut lambdas = Vec::new();
    for &n in fg.r.keys() {
        let got = sys.lambda_from_final_equation(n, fg)?;
        let want = -(&scale * theorem_t_lambda(ctx, &params, n)?);
        passed &= got == want;
        lambdas.push((n, got, want));
    }
    Ok(TheoremMatch {
        sigmas,
        scale,
        free,
        lambdas,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::askey_wilson::{build_family, AWFamily};
    use crate::qpoly::PolyX;
    use crate::scalars::rat;
    use std::collections::BTreeMap;

    fn family(v: Rational, sigmas: [Rational; 4], n: usize) -> AWFamily {
        let ctx = QContext::new(v).unwrap();
        build_family(&ctx, &AWParams::from_sigmas(sigmas).unwrap(), n).unwrap()
    }

    #[test]
    fn recovers_known_sigmas_from_scaled_coefficients() {
        let ctx = QContext::new(rat(1, 3)).unwrap();
        let sig = [rat(1, 2), rat(-1, 7), rat(2, 5), rat(1, 9)];
        let t = theorem_t_coeffs(&ctx, &AWParams::from_sigmas(sig.clone()).unwrap());
        let s = rat(-4, 11);
        let fg = FgExtraction {
            f: t.f.scale(&s),
            g: t.g.scale(&s),
            r: BTreeMap::new(),
        };
        let (scale, got, free) = match_sigmas(&ctx, &fg).unwrap();
        assert_eq!(scale, s);
        assert_eq!(got, sig);
        assert!(free.is_empty());
    }

    #[test]
    fn zero_pair_has_no_match() {
        let ctx = QContext::new(rat(1, 2)).unwrap();
        let fg = FgExtraction {
            f: PolyX::zero(),
            g: PolyX::zero(),
            r: BTreeMap::new(),
        };
        assert!(matches!(match_sigmas(&ctx, &fg), Err(Error::NoRationalMatch(_))));
    }

    #[test]
    fn order_one_recovers_base_sigmas() {
        let zero = || int(0);
        for sig in [
            [zero(), zero(), zero(), zero()],
            [rat(11, 30), rat(-2, 15), rat(-1, 30), zero()],
        ] {
            let base = family(rat(1, 2), sig.clone(), 11);
            let sys = ChainSystem::new(&base, 1).unwrap();
            let fg = sys.extract_rn_fg(&(2..=8).collect::<Vec<_>>()).unwrap();
            let m = verify_final_vs_theorem_t(&sys, &fg).unwrap();
            assert!(m.passed);
            assert_eq!(m.sigmas, sig);
        }
    }

    #[test]
    fn order_two_recovers_shifted_sigmas() {
        // P^[1] is the family with every root scaled by v
        let base = family(rat(1, 2), [rat(11, 30), rat(-2, 15), rat(-1, 30), int(0)], 12);
        let sys = ChainSystem::new(&base, 2).unwrap();
        let fg = sys.extract_rn_fg(&(2..=8).collect::<Vec<_>>()).unwrap();
        let m = verify_final_vs_theorem_t(&sys, &fg).unwrap();
        assert!(m.passed);
        let v = rat(1, 2);
        let want: Vec<Rational> = base
            .params
            .sigmas
            .iter()
            .zip(1..)
            .map(|(s, j)| s * v.pow(j))
            .collect();
        assert_eq!(m.sigmas.to_vec(), want);
    }
}
