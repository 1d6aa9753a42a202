//! End-to-end driver and its JSON report.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::askey_wilson::AWFamily;
use crate::error::Error;
use crate::proof_engine::chain::{ChainEquation, ChainSystem};
use crate::proof_engine::lemma::{check_no_common_zeros, verify_structure_relation};
use crate::proof_engine::theorem::verify_final_vs_theorem_t;
use crate::qpoly::PolyX;
use crate::scalars::format_rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextSummary {
    pub v: String,
    pub q: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sigmas: Vec<String>,
    #[serde(rename = "N")]
    pub n: usize,
    pub n_max: usize,
    pub k: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// One verified claim. `witness` is `"0"` for a vanishing residual, otherwise
/// the residual, the scalar that was tested, or an error message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub k: usize,
    pub n: usize,
    pub passed: bool,
    pub witness: String,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, k: usize, n: usize, passed: bool, witness: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            k,
            n,
            passed,
            witness: witness.into(),
        }
    }

    fn residual(name: &str, k: usize, n: usize, residual: &PolyX) -> Self {
        Self::new(name, k, n, residual.is_zero(), residual.to_string())
    }

    fn error(name: &str, k: usize, n: usize, e: &Error) -> Self {
        Self::new(name, k, n, false, e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofReport {
    pub context: ContextSummary,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ProofReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Sorts records by `(name, k, n)`.
    pub fn canonicalize(&mut self) {
        self.checks
            .sort_by(|a, b| (&a.name, a.k, a.n).cmp(&(&b.name, b.k, b.n)));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// A short plain-text summary, one line per failure.
    pub fn to_text(&self) -> String {
        let total = self.checks.len();
        let failed: Vec<_> = self.failures().collect();
        let mut out = format!("v = {}, q = {}", self.context.v, self.context.q);
        if !self.context.sigmas.is_empty() {
            out.push_str(&format!(", sigma = ({})", self.context.sigmas.join(", ")));
        }
        out.push_str(&format!(
            ", N = {}\n{} checks, {} failed\n",
            self.context.n,
            total,
            failed.len()
        ));
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for c in failed {
            out.push_str(&format!("FAIL {} k={} n={}: {}\n", c.name, c.k, c.n, c.witness));
        }
        out
    }
}

fn summary(base: &AWFamily, ks: &[usize], n_max: usize) -> ContextSummary {
    ContextSummary {
        v: format_rational(base.ctx.v()),
        q: format_rational(base.ctx.q()),
        sigmas: base.params.sigmas.iter().map(format_rational).collect(),
        n: base.n_max(),
        n_max,
        k: ks.to_vec(),
        trials: None,
        seed: None,
    }
}

/// Runs every chain check for each order in `ks` over `1 <= n <= n_max`.
///
/// Failures and errors become failing records; nothing aborts the run.
pub fn run_chain(base: &AWFamily, ks: &[usize], n_max: usize) -> ProofReport {
    let mut checks = Vec::new();

    for n in 1..=n_max.min(base.n_max().saturating_sub(1)) {
        match verify_structure_relation(base, 0, &PolyX::x(), 1, n) {
            Ok(s) => {
                let w = s.coeffs.iter().map(format_rational).collect::<Vec<_>>().join(",");
                checks.push(CheckRecord::new("structure_recurrence", 0, n, s.passed, w));
            }
            Err(e) => checks.push(CheckRecord::error("structure_recurrence", 0, n, &e)),
        }
    }

    for &k in ks {
        chain_checks(base, k, n_max, &mut checks);
    }

    let mut report = ProofReport {
        context: summary(base, ks, n_max),
        checks,
        warnings: Vec::new(),
    };
    report.canonicalize();
    report
}

fn chain_checks(base: &AWFamily, k: usize, n_max: usize, checks: &mut Vec<CheckRecord>) {
    let sys = match ChainSystem::new(base, k) {
        Ok(s) => s,
        Err(e) => {
            checks.push(CheckRecord::error("chain_setup", k, 0, &e));
            return;
        }
    };

    for which in ChainEquation::ALL {
        if which == ChainEquation::EqFinal {
            continue;
        }
        for n in sys.window(which, 1, n_max) {
            checks.push(match sys.verify(which, n, None) {
                Ok(r) => CheckRecord::residual(which.name(), k, n, &r.residual),
                Err(e) => CheckRecord::error(which.name(), k, n, &e),
            });
        }
    }

    for n in 1..=n_max {
        for c in sys.check_nonvanishing(n) {
            checks.push(CheckRecord::new(c.name, k, n, c.passed, format_rational(&c.value)));
        }
    }

    for n in 1..=n_max.min(sys.upper.m_max()) {
        match check_no_common_zeros(sys.ctx(), &sys.upper.polys[n]) {
            Ok(c) => checks.push(CheckRecord::new(
                "common_zeros",
                k,
                n,
                c.passed,
                format_rational(&c.resultant),
            )),
            Err(e) => checks.push(CheckRecord::error("common_zeros", k, n, &e)),
        }
    }

    let ns = sys.window(ChainEquation::EqFinal, 1, n_max);
    let fg = match sys.extract_rn_fg(&ns) {
        Ok(fg) => fg,
        Err(e) => {
            let n = match &e {
                Error::ProportionalityFailure { n, .. } => *n,
                _ => 0,
            };
            checks.push(CheckRecord::error("proportionality", k, n, &e));
            return;
        }
    };
    for (&n, r) in &fg.r {
        checks.push(CheckRecord::new("proportionality", k, n, true, format_rational(r)));
    }
    checks.push(CheckRecord::new(
        "final_fg",
        k,
        0,
        true,
        format!("f = {}; g = {}", fg.f, fg.g),
    ));

    for &n in fg.r.keys() {
        checks.push(match sys.verify(ChainEquation::EqFinal, n, Some(&fg)) {
            Ok(r) => CheckRecord::residual(ChainEquation::EqFinal.name(), k, n, &r.residual),
            Err(e) => CheckRecord::error(ChainEquation::EqFinal.name(), k, n, &e),
        });
        let pair = sys
            .lambda_from_final_equation(n, &fg)
            .and_then(|got| Ok((got, sys.final_lambda(n, &fg)?)));
        checks.push(match pair {
            Ok((got, want)) => CheckRecord::new(
                "lambda_final",
                k,
                n,
                got == want && !got.is_zero(),
                format_rational(&got),
            ),
            Err(e) => CheckRecord::error("lambda_final", k, n, &e),
        });
    }

    match verify_final_vs_theorem_t(&sys, &fg) {
        Ok(m) => {
            let sig = m.sigmas.iter().map(format_rational).collect::<Vec<_>>().join(",");
            checks.push(CheckRecord::new(
                "final_vs_theoremT",
                k,
                0,
                m.passed,
                format!("sigma = ({sig}); scale = {}", format_rational(&m.scale)),
            ));
            for (n, got, want) in m.lambdas {
                checks.push(CheckRecord::new(
                    "final_lambda_vs_theoremT",
                    k,
                    n,
                    got == want,
                    format_rational(&got),
                ));
            }
        }
        Err(e) => checks.push(CheckRecord::error("final_vs_theoremT", k, 0, &e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::askey_wilson::{build_family, AWParams};
    use crate::scalars::{int, rat, QContext};

    fn hermite(n: usize) -> AWFamily {
        let ctx = QContext::new(rat(1, 2)).unwrap();
        let p = AWParams::from_sigmas([int(0), int(0), int(0), int(0)]).unwrap();
        build_family(&ctx, &p, n).unwrap()
    }

    #[test]
    fn q_hermite_chain_passes() {
        let base = hermite(12);
        let r = run_chain(&base, &[1, 2], 8);
        let bad: Vec<_> = r.failures().collect();
        assert!(bad.is_empty(), "{bad:?}");
        for name in ["eq1a", "eq3", "eq7", "eq_final", "common_zeros", "final_vs_theoremT"] {
            assert!(r.checks.iter().any(|c| c.name == name), "{name} missing");
        }
    }

    #[test]
    fn records_are_sorted() {
        let base = hermite(10);
        let r = run_chain(&base, &[2, 1], 6);
        let keys: Vec<_> = r.checks.iter().map(|c| (c.name.clone(), c.k, c.n)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn perturbed_c_is_localized() {
        let mut base = hermite(12);
        base.c[4] += rat(1, 1000);
        let r = run_chain(&base, &[1], 8);
        assert!(!r.passed());
        assert!(r.failures().any(|c| c.name == "eq3"));
    }

    #[test]
    fn too_short_base_records_setup_failure() {
        let base = hermite(3);
        let r = run_chain(&base, &[2], 2);
        assert!(r.failures().any(|c| c.name == "chain_setup"));
    }

    #[test]
    fn json_has_stable_shape() {
        let base = hermite(8);
        let r = run_chain(&base, &[1], 4);
        let j = r.to_json();
        assert!(j.starts_with("{\n  \"context\": {\n    \"v\": \"1/2\""));
        assert!(!j.contains("warnings"));
        let back: ProofReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }
}
