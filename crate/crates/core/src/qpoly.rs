//! Dense polynomials in `x`, symmetric Laurent polynomials in `z`, and the
//! exact change of basis `x = (z + 1/z) / 2` between them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::{format_rational, int, parse_rational, Rational};

/// Polynomial in `x` with rational coefficients, constant term first.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and [`PolyX::degree`] returns `None` for it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyX {
    coeffs: Vec<Rational>,
}

impl PolyX {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn zero() -> Self {
        PolyX { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// Builds a polynomial from small integer coefficients, constant term first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &Rational) -> PolyX {
        if c.is_zero() {
            return PolyX::zero();
        }
        PolyX::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x`.
    pub fn shift(&self, by: usize) -> PolyX {
        if self.is_zero() {
            return PolyX::zero();
        }
        let mut coeffs = vec![Rational::zero(); by];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyX { coeffs }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// Rescales so the leading coefficient is one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> PolyX {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => PolyX::zero(),
        }
    }

    pub fn div_rem(&self, divisor: &PolyX) -> Result<(PolyX, PolyX)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lc;
            let shift = top - dd;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * d;
            }
            quot[shift] = c;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((PolyX::new(quot), PolyX::new(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PolyX) -> PolyX {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Coefficients as canonical rational strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<PolyX> {
        items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(PolyX::new)
    }
}

impl fmt::Debug for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyX({self})")
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

fn add_coeffs(a: &[Rational], b: &[Rational], sign: bool) -> PolyX {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(if sign { x + y } else { x - y });
    }
    PolyX::new(out)
}

fn mul_coeffs(a: &[Rational], b: &[Rational]) -> PolyX {
    if a.is_empty() || b.is_empty() {
        return PolyX::zero();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    PolyX::new(out)
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a PolyX> for &'a PolyX {
            type Output = PolyX;
            fn $method(self, rhs: &'a PolyX) -> PolyX {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
        impl $tr<PolyX> for PolyX {
            type Output = PolyX;
            fn $method(self, rhs: PolyX) -> PolyX {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
        impl<'a> $tr<&'a PolyX> for PolyX {
            type Output = PolyX;
            fn $method(self, rhs: &'a PolyX) -> PolyX {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
        impl<'a> $tr<PolyX> for &'a PolyX {
            type Output = PolyX;
            fn $method(self, rhs: PolyX) -> PolyX {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
    };
}

poly_binop!(Add, add, |a, b| add_coeffs(a, b, true));
poly_binop!(Sub, sub, |a, b| add_coeffs(a, b, false));
poly_binop!(Mul, mul, mul_coeffs);

impl Neg for PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        PolyX::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        -(self.clone())
    }
}

/// Symmetric Laurent polynomial `c_0 + sum_{j>=1} c_j (z^j + z^-j)`.
///
/// Entry `j` is simply the coefficient of `z^j` (equal to that of `z^-j`),
/// trimmed of trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentSym {
    c: Vec<Rational>,
}

impl LaurentSym {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        LaurentSym { c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.c.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest `j` with a nonzero coefficient; `None` for zero.
    pub fn top(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Multiplication by `(z + 1/z) / 2`, i.e. by `x`.
    pub fn mul_x(&self) -> LaurentSym {
        let Some(top) = self.top() else {
            return LaurentSym::default();
        };
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let mut out = vec![Rational::zero(); top + 2];
        for (j, cj) in out.iter_mut().enumerate() {
            // coefficient of z^j picks up c_{j-1} and c_{j+1}, with c_{-1} = c_1
            let below = if j == 0 { self.coeff(1) } else { self.coeff(j - 1) };
            *cj = (below + self.coeff(j + 1)) * &half;
        }
        LaurentSym::new(out)
    }

    pub fn scale(&self, s: &Rational) -> LaurentSym {
        LaurentSym::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn add(&self, other: &LaurentSym) -> LaurentSym {
        let n = self.c.len().max(other.c.len());
        LaurentSym::new((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &LaurentSym) -> LaurentSym {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &LaurentSym) -> LaurentSym {
        let (Some(n), Some(m)) = (self.top(), other.top()) else {
            return LaurentSym::default();
        };
        let full = |l: &LaurentSym, t: usize| -> Vec<Rational> {
            // index i <-> exponent i - t
            (0..=2 * t)
                .map(|i| l.coeff((i as isize - t as isize).unsigned_abs()))
                .collect()
        };
        let (a, b) = (full(self, n), full(other, m));
        let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        // exponent e sits at index e + n + m
        LaurentSym::new(prod[n + m..].to_vec())
    }
}

/// Laurent image `f((z + 1/z) / 2)` of a polynomial in `x`.
pub fn to_laurent(p: &PolyX) -> LaurentSym {
    p.coeffs()
        .iter()
        .rev()
        .fold(LaurentSym::default(), |acc, c| {
            acc.mul_x().add(&LaurentSym::new(vec![c.clone()]))
        })
}

/// Inverse change of basis, by back-substitution from the top index down.
pub fn from_laurent(l: &LaurentSym) -> PolyX {
    let Some(top) = l.top() else {
        return PolyX::zero();
    };
    let mut powers = Vec::with_capacity(top + 1);
    powers.push(LaurentSym::new(vec![Rational::one()]));
    for j in 1..=top {
        let next = powers[j - 1].mul_x();
        powers.push(next);
    }
    let mut rest = l.clone();
    let mut coeffs = vec![Rational::zero(); top + 1];
    for m in (0..=top).rev() {
        let cm = rest.coeff(m);
        if cm.is_zero() {
            continue;
        }
        // top coefficient of the image of x^m is 2^-m
        let a = cm / powers[m].coeff(m);
        rest = rest.sub(&powers[m].scale(&a));
        coeffs[m] = a;
    }
    debug_assert!(rest.is_zero());
    PolyX::new(coeffs)
}

/// Resultant of two nonzero polynomials: the determinant of their Sylvester
/// matrix (rows of `p` first), so that `Res(p, r) = lc(p)^deg(r) * prod r(roots of p)`.
///
/// Denominators are cleared first and the integer determinant is taken by
/// fraction-free (Bareiss) elimination.
pub fn resultant(p: &PolyX, r: &PolyX) -> Result<Rational> {
    let (Some(m), Some(n)) = (p.degree(), r.degree()) else {
        return Err(Error::Domain("resultant of the zero polynomial".into()));
    };
    let (pi, dp) = integer_form(p);
    let (ri, dr) = integer_form(r);
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // Coefficients run from the leading term down.
    for row in 0..n {
        for (i, c) in pi.iter().rev().enumerate() {
            mat[row][row + i] = c.clone();
        }
    }
    for row in 0..m {
        for (i, c) in ri.iter().rev().enumerate() {
            mat[n + row][row + i] = c.clone();
        }
    }
    let det = bareiss_det(mat);
    let scale = num_traits::pow(dp, n) * num_traits::pow(dr, m);
    Ok(Rational::new(det, scale))
}

/// Integer coefficients `P` and denominator `d` with `p = P / d`.
fn integer_form(p: &PolyX) -> (Vec<BigInt>, BigInt) {
    let d = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(d.clone())).to_integer())
        .collect();
    (ints, d)
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
