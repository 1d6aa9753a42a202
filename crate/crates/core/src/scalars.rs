//! Exact rationals and the q-dependent scalar constants.
//!
//! The base point is given by `v = q^{1/2}` as an exact rational in `(0, 1)`,
//! so every half-integer power of `q` that the operator calculus needs stays
//! inside the rational field. The q-numbers
//!
//! ```text
//! gamma_n   = (v^n - v^-n) / (v - v^-1)
//! alpha_k   = (v^k + v^-k) / 2
//! ```
//!
//! are tabulated once per context up to the exponent cap.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Default bound on the q-exponents a context will tabulate.
pub const DEFAULT_EXPONENT_CAP: usize = 64;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` with an optional leading minus and no whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !digits(num) {
        return Err(bad());
    }
    let mut numer = BigInt::from_str(num).map_err(|_| bad())?;
    if neg {
        numer = -numer;
    }
    let denom = match den {
        Some(d) if digits(d) => BigInt::from_str(d).map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

#[derive(Debug)]
struct Tables {
    gamma: Vec<Rational>,
    alpha: Vec<Rational>,
    gamma_factorial: Vec<Rational>,
}

/// The base point `v = q^{1/2}` with its derived constants.
#[derive(Clone)]
pub struct QContext {
    v: Rational,
    q: Rational,
    alpha: Rational,
    cap: usize,
    tables: Arc<Tables>,
}

impl fmt::Debug for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QContext")
            .field("v", &self.v.to_string())
            .field("q", &self.q.to_string())
            .field("alpha", &self.alpha.to_string())
            .field("cap", &self.cap)
            .finish()
    }
}

impl PartialEq for QContext {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.cap == other.cap
    }
}

impl QContext {
    pub fn new(v: Rational) -> Result<Self> {
        Self::with_cap(v, DEFAULT_EXPONENT_CAP)
    }

    pub fn with_cap(v: Rational, cap: usize) -> Result<Self> {
        if !v.is_positive() || v >= Rational::one() {
            return Err(Error::Domain(format!(
                "q^(1/2) must lie strictly between 0 and 1, got {v}"
            )));
        }
        let inv = v.recip();
        let q = &v * &v;
        let alpha = (&v + &inv) / int(2);

        // v^j and v^-j for j = 0..=cap
        let mut up = Vec::with_capacity(cap + 1);
        let mut down = Vec::with_capacity(cap + 1);
        up.push(Rational::one());
        down.push(Rational::one());
        for j in 1..=cap {
            up.push(&up[j - 1] * &v);
            down.push(&down[j - 1] * &inv);
        }
        let base = &v - &inv;
        let gamma: Vec<Rational> = (0..=cap).map(|j| (&up[j] - &down[j]) / &base).collect();
        let alpha_tab: Vec<Rational> = (0..=cap).map(|j| (&up[j] + &down[j]) / int(2)).collect();
        let mut gamma_factorial = Vec::with_capacity(cap + 1);
        gamma_factorial.push(Rational::one());
        for j in 1..=cap {
            let next = &gamma_factorial[j - 1] * &gamma[j];
            gamma_factorial.push(next);
        }

        Ok(QContext {
            v,
            q,
            alpha,
            cap,
            tables: Arc::new(Tables {
                gamma,
                alpha: alpha_tab,
                gamma_factorial,
            }),
        })
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// `alpha = (v + 1/v) / 2`.
    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn exponent_cap(&self) -> usize {
        self.cap
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(Error::ExponentOverflow {
                exponent: n,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// The q-number `gamma_n`.
    pub fn gamma(&self, n: usize) -> Result<Rational> {
        self.check(n)?;
        Ok(self.tables.gamma[n].clone())
    }

    /// `gamma_1 * gamma_2 * ... * gamma_n`, with the empty product at `n = 0`.
    pub fn gamma_factorial(&self, n: usize) -> Result<Rational> {
        self.check(n)?;
        Ok(self.tables.gamma_factorial[n].clone())
    }

    /// `(v^k + v^-k) / 2`; equals `alpha` at `k = 1`.
    pub fn alpha_k(&self, k: usize) -> Result<Rational> {
        self.check(k)?;
        Ok(self.tables.alpha[k].clone())
    }

    /// `alpha^2 - 1`, the constant in front of `U1` and `U2`.
    pub fn alpha_sq_minus_one(&self) -> Rational {
        &self.alpha * &self.alpha - Rational::one()
    }
}
