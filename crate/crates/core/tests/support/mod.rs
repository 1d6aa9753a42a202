#![allow(dead_code)]

pub mod elimination;

use awproof::askey_wilson::{build_family, AWFamily, AWParams};
use awproof::scalars::{int, rat, QContext, Rational};

/// The three reference families: `(label, v, params)`.
pub fn reference_params() -> Vec<(&'static str, Rational, AWParams)> {
    let z = || int(0);
    vec![
        (
            "q-Hermite v=1/2",
            rat(1, 2),
            AWParams::from_sigmas([z(), z(), z(), z()]).unwrap(),
        ),
        (
            "sigma=(11/30,-2/15,-1/30,0) v=1/2",
            rat(1, 2),
            AWParams::from_sigmas([rat(11, 30), rat(-2, 15), rat(-1, 30), z()]).unwrap(),
        ),
        (
            "roots=(1/2,1/3,-1/4,1/5) v=1/3",
            rat(1, 3),
            AWParams::from_roots([rat(1, 2), rat(1, 3), rat(-1, 4), rat(1, 5)]).unwrap(),
        ),
    ]
}

pub fn reference_family(index: usize, n: usize) -> AWFamily {
    let (_, v, p) = reference_params().swap_remove(index);
    build_family(&QContext::new(v).unwrap(), &p, n).unwrap()
}

pub fn hermite(n: usize) -> AWFamily {
    reference_family(0, n)
}
