mod support;

use awproof::askey_wilson::theorem_t_lambda;
use awproof::proof_engine::{ChainEquation, ChainSystem};
use awproof::qoperators::{apply_dq, apply_sq};
use awproof::qpoly::{resultant, PolyX};
use awproof::scalars::{int, rat, QContext, Rational};

use support::elimination::{derive, Atom, Data, Which};

fn x_of(z: &Rational) -> Rational {
    (z + z.recip()) / int(2)
}

/// `D_q` and `S_q` evaluated directly on the lattice points `x(vz)`, `x(z/v)`.
fn lattice(ctx: &QContext, p: &PolyX, z: &Rational) -> (Rational, Rational) {
    let up = x_of(&(z * ctx.v()));
    let down = x_of(&(z / ctx.v()));
    let (pu, pd) = (p.eval(&up), p.eval(&down));
    ((&pu - &pd) / (&up - &down), (pu + pd) / int(2))
}

#[test]
fn operators_match_lattice_evaluation() {
    let polys = [
        PolyX::from_ints(&[1]),
        PolyX::from_ints(&[0, 1]),
        PolyX::from_ints(&[3, -1, 4, 1, -5, 9, 2]),
        PolyX::new(vec![rat(-3, 7), rat(2, 9), int(0), rat(5, 4), rat(-1, 3)]),
    ];
    for v in [rat(1, 2), rat(1, 3), rat(3, 5)] {
        let ctx = QContext::new(v).unwrap();
        for p in &polys {
            let d = apply_dq(&ctx, p).unwrap();
            let s = apply_sq(&ctx, p).unwrap();
            for z in [rat(2, 1), rat(3, 7), rat(-5, 2), rat(7, 3)] {
                let (dl, sl) = lattice(&ctx, p, &z);
                let x = x_of(&z);
                assert_eq!(d.eval(&x), dl, "D_q p at z = {z}");
                assert_eq!(s.eval(&x), sl, "S_q p at z = {z}");
            }
        }
    }
}

fn check_elimination(family: usize, k: usize, n_max: usize) -> usize {
    let base = support::reference_family(family, n_max + k + 2);
    let sys = ChainSystem::new(&base, k).unwrap();
    let data = Data {
        ctx: &base.ctx,
        base: &base,
        upper: &sys.upper,
        k,
    };
    let (_, u2) = awproof::qoperators::structural_polys(&base.ctx);
    let c = |x: &Rational| PolyX::constant(x.clone());
    let mut compared = 0;

    for n in sys.window(ChainEquation::Eq3, 1, n_max) {
        let r = derive(&data, Which::Three, n);
        assert_eq!(r.coeff(Atom::SD(n)), sys.d_coeff(n).unwrap(), "D_n, k={k} n={n}");
        assert_eq!(r.coeff(Atom::DD(n)), u2.scale(&sys.e_coeff(n).unwrap()), "E_n, k={k} n={n}");
        assert_eq!(r.coeff(Atom::SD(n + 1)), -c(&sys.f_coeff(n).unwrap()), "F_n, k={k} n={n}");
        assert_eq!(r.0.len(), 4, "extra atoms in eq3, k={k} n={n}: {:?}", r.0.keys());
        compared += 1;
    }
    for n in sys.window(ChainEquation::Eq3b, 1, n_max) {
        let r = derive(&data, Which::ThreeB, n);
        assert_eq!(r.coeff(Atom::DD(n)), sys.d_coeff(n).unwrap(), "D_n, k={k} n={n}");
        assert_eq!(r.coeff(Atom::SD(n)), c(&sys.e_coeff(n).unwrap()), "E_n, k={k} n={n}");
        assert_eq!(r.coeff(Atom::DD(n + 1)), -c(&sys.f_coeff(n).unwrap()), "F_n, k={k} n={n}");
        assert_eq!(r.0.len(), 3, "extra atoms in eq3b, k={k} n={n}: {:?}", r.0.keys());
        compared += 1;
    }
    for n in sys.window(ChainEquation::Eq4, 1, n_max) {
        let r = derive(&data, Which::Four, n);
        assert_eq!(r.coeff(Atom::SD(n + 1)), sys.d_tilde_coeff(n).unwrap(), "Dt_n, k={k} n={n}");
        assert_eq!(
            r.coeff(Atom::DD(n + 1)),
            -u2.scale(&sys.e_tilde_coeff(n).unwrap()),
            "Et_n, k={k} n={n}"
        );
        assert_eq!(r.coeff(Atom::SD(n)), -c(&sys.f_coeff(n + 1).unwrap()), "F_n+1, k={k} n={n}");
        assert_eq!(r.0.len(), 4, "extra atoms in eq4, k={k} n={n}: {:?}", r.0.keys());
        compared += 1;
    }
    for n in sys.window(ChainEquation::Eq3a, 1, n_max) {
        let r = derive(&data, Which::ThreeA, n);
        assert_eq!(r.coeff(Atom::DD(n + 1)), sys.d_tilde_coeff(n).unwrap(), "Dt_n, k={k} n={n}");
        assert_eq!(r.coeff(Atom::SD(n + 1)), -c(&sys.e_tilde_coeff(n).unwrap()), "Et_n, k={k} n={n}");
        assert_eq!(r.coeff(Atom::DD(n)), -c(&sys.f_coeff(n + 1).unwrap()), "F_n+1, k={k} n={n}");
        assert_eq!(r.0.len(), 3, "extra atoms in eq3a, k={k} n={n}: {:?}", r.0.keys());
        compared += 1;
    }
    compared
}

#[test]
fn elimination_reproduces_chain_coefficients() {
    for family in 0..3 {
        for k in 1..=3 {
            assert!(check_elimination(family, k, 8) >= 20);
        }
    }
}

#[test]
fn elimination_disagrees_with_printed_d_tilde() {
    let base = support::reference_family(1, 12);
    let sys = ChainSystem::new(&base, 2).unwrap();
    let data = Data {
        ctx: &base.ctx,
        base: &base,
        upper: &sys.upper,
        k: 2,
    };
    for n in 1..=6 {
        let r = derive(&data, Which::Four, n);
        let printed = sys.d_tilde_as_printed(n).unwrap();
        assert_eq!(r.coeff(Atom::SD(n + 1)) == printed, n == 2, "n = {n}");
    }
}

#[test]
fn frozen_scalars() {
    let ctx = QContext::new(rat(1, 2)).unwrap();
    assert_eq!(ctx.gamma(4).unwrap(), rat(85, 8));
    // gamma_2 gamma_1 / (gamma_3 gamma_4)
    let e = ctx.gamma(2).unwrap() / (ctx.gamma(3).unwrap() * ctx.gamma(4).unwrap());
    assert_eq!(e, rat(16, 357));

    let base = support::hermite(10);
    for (n, want) in [(1, rat(3, 16)), (2, rat(15, 64)), (3, rat(63, 256))] {
        assert_eq!(base.c[n], want);
    }
    let sys = ChainSystem::new(&base, 1).unwrap();
    assert_eq!(sys.f_coeff(2).unwrap(), rat(1, 7));
    assert_eq!(sys.e_tilde_coeff(2).unwrap(), rat(16, 357));

    let mixed = support::reference_family(1, 6);
    assert_eq!(mixed.polys[1], PolyX::new(vec![rat(-1, 5), int(1)]));
    assert_eq!(mixed.b[0], rat(1, 5));
    assert_eq!(mixed.c[1], rat(21, 100));
}

#[test]
fn frozen_final_equation_data() {
    let base = support::hermite(11);
    let sys = ChainSystem::new(&base, 1).unwrap();
    let fg = sys.extract_rn_fg(&(2..=8).collect::<Vec<_>>()).unwrap();
    assert_eq!(fg.f, PolyX::new(vec![int(1), int(0), int(-2)]));
    assert_eq!(fg.g, PolyX::new(vec![int(0), rat(-8, 3)]));

    let mixed = support::reference_family(1, 11);
    let sys = ChainSystem::new(&mixed, 1).unwrap();
    let fg = sys.extract_rn_fg(&(2..=8).collect::<Vec<_>>()).unwrap();
    assert_eq!(fg.f, PolyX::new(vec![int(1), rat(5, 17), rat(-30, 17)]));
    assert_eq!(fg.g, PolyX::new(vec![rat(8, 17), rat(-40, 17)]));
}

#[test]
fn lambda_closed_form_against_direct_powers() {
    // 4q(1 - q^-n)(1 - s4 q^{n-1}) / (1 - q)^2 with q^n built by repeated multiplication
    for (_, v, params) in support::reference_params() {
        let ctx = QContext::new(v).unwrap();
        let q = ctx.q().clone();
        let mut qn = int(1);
        for n in 1..=12usize {
            qn *= &q;
            let qn1 = &qn / &q;
            let omq = int(1) - &q;
            let want = int(4) * &q * (int(1) - qn.recip()) * (int(1) - params.sigma(4) * &qn1) / (&omq * &omq);
            assert_eq!(theorem_t_lambda(&ctx, &params, n).unwrap(), want);
        }
    }
}

#[test]
fn resultant_example_by_hand() {
    // Res((5/2) x, (17/8) x^2 - 3/4) = (5/2)^2 * (-3/4)
    let a = PolyX::new(vec![int(0), rat(5, 2)]);
    let b = PolyX::new(vec![rat(-3, 4), int(0), rat(17, 8)]);
    assert_eq!(resultant(&a, &b).unwrap(), rat(-75, 16));
}
