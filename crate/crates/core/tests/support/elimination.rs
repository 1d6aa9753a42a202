//! Brute-force re-derivation of the four eliminated chain equations.
//!
//! Relations are linear combinations of the atoms `D P_m`, `S P_m`,
//! `S D P_m`, `D^2 P_m`, `P_m` (with `P = P^[k-1]`) whose coefficients are
//! polynomials in `x`. The two differentiated recurrences are written down,
//! `S_q` or `D_q` is pushed through them with the product rules, and one atom
//! is eliminated by exact linear combination. Nothing here calls the chain
//! coefficient code under test.

use std::collections::BTreeMap;

use num_traits::Zero;

use awproof::askey_wilson::AWFamily;
use awproof::proof_engine::DerivedFamily;
use awproof::qpoly::PolyX;
use awproof::scalars::{int, QContext, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    D(usize),
    S(usize),
    SD(usize),
    DD(usize),
    P(usize),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Relation(pub BTreeMap<Atom, PolyX>);

impl Relation {
    fn add(&mut self, atom: Atom, c: PolyX) {
        let e = self.0.entry(atom).or_insert_with(PolyX::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.0.remove(&atom);
        }
    }

    pub fn coeff(&self, atom: Atom) -> PolyX {
        self.0.get(&atom).cloned().unwrap_or_else(PolyX::zero)
    }

    fn scale(&self, s: &Rational) -> Relation {
        let mut out = Relation::default();
        for (a, c) in &self.0 {
            out.add(*a, c.scale(s));
        }
        out
    }

    fn minus(&self, other: &Relation) -> Relation {
        let mut out = self.clone();
        for (a, c) in &other.0 {
            out.add(*a, -c);
        }
        out
    }
}

/// Closed forms on polynomials of degree at most one: `S(a + bx) = a + b alpha x`, `D(a + bx) = b`.
struct Lin {
    alpha: Rational,
    u1: PolyX,
    u2: PolyX,
}

impl Lin {
    fn new(ctx: &QContext) -> Self {
        let a = ctx.alpha().clone();
        let c = &a * &a - int(1);
        Lin {
            u1: PolyX::new(vec![Rational::zero(), c.clone()]),
            u2: PolyX::new(vec![-c.clone(), Rational::zero(), c]),
            alpha: a,
        }
    }

    fn s(&self, c: &PolyX) -> PolyX {
        assert!(c.degree().unwrap_or(0) <= 1, "coefficient degree above one");
        PolyX::new(vec![c.coeff(0), c.coeff(1) * &self.alpha])
    }

    fn d(&self, c: &PolyX) -> PolyX {
        assert!(c.degree().unwrap_or(0) <= 1, "coefficient degree above one");
        PolyX::constant(c.coeff(1))
    }

    /// `S(c A)` for every term.
    fn apply_s(&self, r: &Relation) -> Relation {
        let mut out = Relation::default();
        for (atom, c) in &r.0 {
            let (dc, sc) = (self.d(c), self.s(c));
            match *atom {
                // S(c DP) = U2 Dc DDP + Sc SDP
                Atom::D(m) => {
                    out.add(Atom::DD(m), &self.u2 * &dc);
                    out.add(Atom::SD(m), sc);
                }
                // S(c SP) = U2 Dc (alpha SDP + U1 DDP) + Sc (alpha U2 DDP + U1 SDP + P)
                Atom::S(m) => {
                    let u2dc = &self.u2 * &dc;
                    out.add(Atom::SD(m), u2dc.scale(&self.alpha));
                    out.add(Atom::DD(m), &u2dc * &self.u1);
                    out.add(Atom::DD(m), (&self.u2 * &sc).scale(&self.alpha));
                    out.add(Atom::SD(m), &self.u1 * &sc);
                    out.add(Atom::P(m), sc);
                }
                other => panic!("S applied to {other:?} is not needed"),
            }
        }
        out
    }

    /// `D(c A)` for every term.
    fn apply_d(&self, r: &Relation) -> Relation {
        let mut out = Relation::default();
        for (atom, c) in &r.0 {
            let (dc, sc) = (self.d(c), self.s(c));
            match *atom {
                // D(c DP) = Dc SDP + Sc DDP
                Atom::D(m) => {
                    out.add(Atom::SD(m), dc);
                    out.add(Atom::DD(m), sc);
                }
                // D(c SP) = Dc (alpha U2 DDP + U1 SDP + P) + Sc (alpha SDP + U1 DDP)
                Atom::S(m) => {
                    out.add(Atom::DD(m), (&self.u2 * &dc).scale(&self.alpha));
                    out.add(Atom::SD(m), &self.u1 * &dc);
                    out.add(Atom::P(m), dc);
                    out.add(Atom::SD(m), sc.scale(&self.alpha));
                    out.add(Atom::DD(m), &self.u1 * &sc);
                }
                other => panic!("D applied to {other:?} is not needed"),
            }
        }
        out
    }
}

/// Scalars needed to write down the two differentiated recurrences.
pub struct Data<'a> {
    pub ctx: &'a QContext,
    pub base: &'a AWFamily,
    pub upper: &'a DerivedFamily,
    pub k: usize,
}

impl Data<'_> {
    fn g(&self, n: usize) -> Rational {
        self.ctx.gamma(n).unwrap()
    }

    /// `D^k` of the base recurrence at index `n + k - 1`, as `LHS - RHS`.
    fn rec_a(&self, n: usize) -> Relation {
        let k = self.k;
        let mut r = Relation::default();
        r.add(Atom::S(n), PolyX::constant(self.g(k)));
        r.add(
            Atom::D(n),
            PolyX::new(vec![-self.base.b[n + k - 1].clone(), self.ctx.alpha_k(k).unwrap()]),
        );
        r.add(Atom::D(n + 1), PolyX::constant(-(self.g(n + k) / self.g(n + 1))));
        r.add(
            Atom::D(n - 1),
            PolyX::constant(-(self.g(n) * &self.base.c[n + k - 1] / self.g(n + k - 1))),
        );
        r
    }

    /// The order-`k` recurrence at `n - 1` written through `D P^[k-1]`.
    fn rec_b(&self, n: usize) -> Relation {
        let mut r = Relation::default();
        let gn = self.g(n);
        r.add(
            Atom::D(n),
            PolyX::new(vec![-(&self.upper.b[n - 1] / &gn), gn.recip()]),
        );
        r.add(Atom::D(n + 1), PolyX::constant(-self.g(n + 1).recip()));
        r.add(
            Atom::D(n - 1),
            PolyX::constant(-(&self.upper.c[n - 1] / self.g(n - 1))),
        );
        r
    }
}

/// `w R1 - t R2` with `t` chosen so that `atom` cancels.
fn eliminate(r1: &Relation, r2: &Relation, atom: Atom, w: &Rational) -> Relation {
    let c1 = r1.coeff(atom);
    let c2 = r2.coeff(atom);
    assert!(c1.degree() == Some(0) && c2.degree() == Some(0), "{atom:?} must carry constant coefficients");
    let t = w * c1.coeff(0) / c2.coeff(0);
    let out = r1.scale(w).minus(&r2.scale(&t));
    assert!(out.coeff(atom).is_zero());
    out
}

pub enum Which {
    /// `S` applied at `n`, `S D P_{n-1}` eliminated.
    Three,
    /// `S` applied at `n + 1`, `S D P_{n+2}` eliminated.
    Four,
    /// `D` applied at `n`, `D^2 P_{n-1}` eliminated.
    ThreeB,
    /// `D` applied at `n + 1`, `D^2 P_{n+2}` eliminated.
    ThreeA,
}

/// Re-derives one of the eliminated equations at `n`.
///
/// The weight on the first relation follows the normalization of the
/// chain equation: `C_{n-1}^[k] / gamma_{n-1}` for those anchored at `n`
/// and `-1 / gamma_{n+2}` for those anchored at `n + 1`.
pub fn derive(data: &Data<'_>, which: Which, n: usize) -> Relation {
    let lin = Lin::new(data.ctx);
    match which {
        Which::Three | Which::ThreeB => {
            let (a, b) = (data.rec_a(n), data.rec_b(n));
            let (a, b, atom) = match which {
                Which::Three => (lin.apply_s(&a), lin.apply_s(&b), Atom::SD(n - 1)),
                _ => (lin.apply_d(&a), lin.apply_d(&b), Atom::DD(n - 1)),
            };
            let w = &data.upper.c[n - 1] / data.g(n - 1);
            eliminate(&a, &b, atom, &w)
        }
        Which::Four | Which::ThreeA => {
            let (a, b) = (data.rec_a(n + 1), data.rec_b(n + 1));
            let (a, b, atom) = match which {
                Which::Four => (lin.apply_s(&a), lin.apply_s(&b), Atom::SD(n + 2)),
                _ => (lin.apply_d(&a), lin.apply_d(&b), Atom::DD(n + 2)),
            };
            let w = -data.g(n + 2).recip();
            eliminate(&a, &b, atom, &w)
        }
    }
}
