//! Seeded property suites behind the `check` command and the acceptance
//! tests. Each suite draws reproducible random instances, evaluates
//! theorem-backed checks, and reports failure counts plus the worst margin
//! seen. Per-sample substreams are derived by SplitMix64, so evaluation
//! order cannot change results.

use crate::inequality::{
    block_positivity_check, frobenius_bound, frobenius_bound_check, geomean_bound_check,
    lemma_mcs_check, prop31_check, ratio, universal_bound,
};
use crate::matlin::{self, ComplexMatrix};
use crate::sample::{
    contraction_matrix, gaussian_tuple, psd_matrix, psd_tuple, rng_from_seed, splitmix64,
    unitary_matrix,
};
use crate::schatten::{
    direct_sum, schatten_norm, weak_log_majorization_holds, MatrixTuple, PExponent,
};

/// Outcome of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: String,
    /// Random instances drawn.
    pub samples: usize,
    /// Individual checks evaluated (several per instance).
    pub checks: usize,
    pub failures: usize,
    /// Smallest slack seen across all bound checks (negative = violation).
    pub min_slack: f64,
    pub passed: bool,
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            samples: 0,
            checks: 0,
            failures: 0,
            min_slack: f64::INFINITY,
            passed: true,
            notes: Vec::new(),
        }
    }

    fn record(&mut self, satisfied: bool, slack: f64) {
        self.checks += 1;
        self.min_slack = self.min_slack.min(slack);
        if !satisfied {
            self.failures += 1;
            self.passed = false;
        }
    }

    fn record_flag(&mut self, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            self.passed = false;
        }
    }
}

/// Suites runnable from the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Lemma,
    Prop31,
    Frobenius,
    Majorization,
    All,
}

impl SuiteKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lemma" => Some(Self::Lemma),
            "prop31" => Some(Self::Prop31),
            "frobenius" => Some(Self::Frobenius),
            "majorization" => Some(Self::Majorization),
            "all" => Some(Self::All),
            _ => None,
        }
    }
}

/// Runs the selected suite(s).
pub fn run_suite(kind: SuiteKind, samples: usize, seed: u64) -> Vec<SuiteOutcome> {
    match kind {
        SuiteKind::Lemma => vec![lemma_suite(samples, seed)],
        SuiteKind::Prop31 => vec![prop31_suite(samples, seed)],
        SuiteKind::Frobenius => vec![frobenius_suite(samples, seed)],
        SuiteKind::Majorization => vec![majorization_suite(samples, seed)],
        SuiteKind::All => vec![
            lemma_suite(samples, seed),
            prop31_suite(samples, seed),
            frobenius_suite(samples, seed),
            majorization_suite(samples, seed),
        ],
    }
}

/// Trace bound 4|Tr(QXY)| ≤ t Tr(X²+Y²) + (1/t) Tr(XY+YX) on random PSD
/// pairs and contractions, over t ∈ {0.1, 1/(1+√m), 1, 10} with a random
/// m per instance, plus the planted equality case X = Y = Q = I, t = 1.
pub fn lemma_suite(samples: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("lemma");
    for i in 0..samples {
        let mut rng = rng_from_seed(splitmix64(seed ^ splitmix64(i as u64 + 1)));
        let n = 2 + (i % 5); // n in 2..=6
        let x = psd_matrix(&mut rng, n);
        let y = psd_matrix(&mut rng, n);
        let q = contraction_matrix(&mut rng, n);
        let m = 2 + (i % 15); // m in 2..=16 feeds the theorem's t choice
        let ts = [0.1, 1.0 / (1.0 + (m as f64).sqrt()), 1.0, 10.0];
        for t in ts {
            match lemma_mcs_check(&x, &y, &q, t) {
                Ok(chk) => out.record(chk.satisfied, chk.slack),
                Err(e) => {
                    out.record_flag(false);
                    out.notes.push(format!("instance {i}: {e}"));
                }
            }
        }
        out.samples += 1;
    }
    // planted equality: 4 Tr(I) on both sides
    let id = ComplexMatrix::identity(4);
    match lemma_mcs_check(&id, &id, &id, 1.0) {
        Ok(chk) => {
            let tight = chk.slack.abs() <= 1e-12;
            out.record_flag(chk.satisfied && tight);
            out.notes
                .push(format!("planted equality slack {:.3e}", chk.slack));
        }
        Err(e) => {
            out.record_flag(false);
            out.notes.push(format!("planted case failed: {e}"));
        }
    }
    out
}

/// Sharp Frobenius bound on random tuples for (m, n) ∈ {(2,2), (3,4), (5,6)},
/// `samples` tuples per case.
pub fn frobenius_suite(samples: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("frobenius");
    for (case, (m, n)) in [(0u64, (2usize, 2usize)), (1, (3, 4)), (2, (5, 6))] {
        let mut worst: f64 = f64::INFINITY;
        for i in 0..samples {
            let mut rng = rng_from_seed(splitmix64(seed ^ splitmix64((case << 32) | i as u64)));
            let t = gaussian_tuple(&mut rng, m, n);
            match frobenius_bound_check(&t) {
                Ok(chk) => {
                    out.record(chk.satisfied, chk.slack);
                    worst = worst.min(chk.slack);
                }
                Err(e) => {
                    out.record_flag(false);
                    out.notes.push(format!("case m={m} n={n} instance {i}: {e}"));
                }
            }
            out.samples += 1;
        }
        out.notes
            .push(format!("m={m} n={n}: min slack {worst:.3e}"));
    }
    out
}

/// Power-family subadditivity plus its proof-step intermediates on random
/// tuples: the main bound over a ∈ {0.25, 0.5, 1} × q ∈ {1, 2, 3, ∞},
/// the geometric-mean bound on the same grid, and block positivity of every
/// member.
pub fn prop31_suite(samples: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("prop31");
    let powers = [0.25, 0.5, 1.0];
    let qs = [
        PExponent::Finite(1.0),
        PExponent::Finite(2.0),
        PExponent::Finite(3.0),
        PExponent::Infinity,
    ];
    for i in 0..samples {
        let mut rng = rng_from_seed(splitmix64(seed ^ splitmix64(0xA000 + i as u64)));
        let m = [2usize, 3, 5][i % 3];
        let n = [2usize, 3, 4][(i / 3) % 3];
        let t = gaussian_tuple(&mut rng, m, n);
        for &a in &powers {
            for &q in &qs {
                match prop31_check(&t, q, a) {
                    Ok(chk) => out.record(chk.satisfied, chk.slack),
                    Err(e) => {
                        out.record_flag(false);
                        out.notes.push(format!("prop31 instance {i}: {e}"));
                    }
                }
                match geomean_bound_check(&t, q, a) {
                    Ok(chk) => out.record(chk.satisfied, chk.slack),
                    Err(e) => {
                        out.record_flag(false);
                        out.notes.push(format!("geomean instance {i}: {e}"));
                    }
                }
            }
        }
        for member in t.members() {
            match block_positivity_check(member) {
                Ok(chk) => out.record(chk.satisfied, chk.slack),
                Err(e) => {
                    out.record_flag(false);
                    out.notes.push(format!("block instance {i}: {e}"));
                }
            }
        }
        out.samples += 1;
    }
    out
}

/// The majorization step of the subadditivity proof plus the direct-sum
/// norm inequalities on PSD tuples:
/// s(S) weakly log-majorized by √(λ(P) λ(Q)), ‖⊕X‖_q ≤ ‖ΣX‖_q, and
/// Σ‖X‖_q ≤ m^(1−1/q) ‖⊕X‖_q.
pub fn majorization_suite(samples: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("majorization");
    let qs = [
        PExponent::Finite(1.0),
        PExponent::Finite(1.5),
        PExponent::Finite(2.0),
        PExponent::Finite(3.0),
        PExponent::Infinity,
    ];
    for i in 0..samples {
        let mut rng = rng_from_seed(splitmix64(seed ^ splitmix64(0xB000 + i as u64)));
        let m = [2usize, 3, 5][i % 3];
        let n = [2usize, 3, 4][(i / 3) % 3];
        let t = gaussian_tuple(&mut rng, m, n);

        // weak log-majorization of s(S) against sqrt(λ_j(P) λ_j(Q))
        let ok = (|| -> crate::Result<bool> {
            let s_vals = matlin::svd(&t.sum())?.values;
            let p_vals = matlin::hermitian_eig(&t.sum_abs_adjoint()?)?.eigenvalues;
            let q_vals = matlin::hermitian_eig(&t.sum_abs()?)?.eigenvalues;
            let bound: Vec<f64> = p_vals
                .iter()
                .zip(&q_vals)
                .map(|(&a, &b)| (a.max(0.0) * b.max(0.0)).sqrt())
                .collect();
            weak_log_majorization_holds(&s_vals, &bound)
        })();
        match ok {
            Ok(holds) => out.record_flag(holds),
            Err(e) => {
                out.record_flag(false);
                out.notes.push(format!("log-majorization instance {i}: {e}"));
            }
        }

        // direct-sum inequalities on the PSD tuple (|A_1|, ..., |A_m|)
        let res = (|| -> crate::Result<()> {
            let psd =
                MatrixTuple::new(t.members().iter().map(matlin::abs_value).collect::<crate::Result<_>>()?)?;
            let stacked = direct_sum(&psd)?;
            let summed = psd.sum();
            let mf = psd.len() as f64;
            for &q in &qs {
                let d = schatten_norm(&stacked, q)?;
                let s = schatten_norm(&summed, q)?;
                out.record(d <= s + 1e-9, s + 1e-9 - d);
                let sum_norms: f64 = psd
                    .members()
                    .iter()
                    .map(|x| schatten_norm(x, q))
                    .collect::<crate::Result<Vec<_>>>()?
                    .iter()
                    .sum();
                let coeff = match q {
                    PExponent::Infinity => mf,
                    PExponent::Finite(q) => mf.powf(1.0 - 1.0 / q),
                };
                out.record(sum_norms <= coeff * d + 1e-9, coeff * d + 1e-9 - sum_norms);
            }
            Ok(())
        })();
        if let Err(e) = res {
            out.record_flag(false);
            out.notes.push(format!("direct-sum instance {i}: {e}"));
        }
        out.samples += 1;
    }
    out
}

/// Ratio invariances: scale invariance, two-sided unitary invariance, and
/// ratio ≡ 1 on PSD tuples.
pub fn invariance_suite(samples: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("invariance");
    let ps = [PExponent::Finite(1.0), PExponent::Finite(2.0), PExponent::Finite(3.0), PExponent::Infinity];
    for i in 0..samples {
        let mut rng = rng_from_seed(splitmix64(seed ^ splitmix64(0xC000 + i as u64)));
        let m = [2usize, 3, 4][i % 3];
        let n = [2usize, 3, 4][(i / 3) % 3];
        let t = gaussian_tuple(&mut rng, m, n);
        let p = ps[i % ps.len()];

        let base = match ratio(&t, p) {
            Ok(r) => r.ratio,
            Err(e) => {
                out.record_flag(false);
                out.notes.push(format!("instance {i}: {e}"));
                continue;
            }
        };

        // scale invariance, log-uniform c in [1e-3, 1e3]
        let c = 10f64.powf(rng_unit(&mut rng) * 6.0 - 3.0);
        let scaled = ratio(&t.scale_re(c), p).map(|r| r.ratio).unwrap_or(f64::NAN);
        out.record_flag((scaled - base).abs() <= 1e-10 * base.max(1.0));

        // two-sided unitary invariance with fixed W, V across members
        let w = unitary_matrix(&mut rng, n);
        let v = unitary_matrix(&mut rng, n);
        let rotated = MatrixTuple::new(
            t.members().iter().map(|a| &(&w * a) * &v).collect(),
        )
        .expect("rotated tuple is valid");
        let rot = ratio(&rotated, p).map(|r| r.ratio).unwrap_or(f64::NAN);
        out.record_flag((rot - base).abs() <= 1e-9 * base.max(1.0));

        // PSD tuples sit exactly at ratio 1
        let psd = psd_tuple(&mut rng, m, n);
        let r1 = ratio(&psd, p).map(|r| r.ratio).unwrap_or(f64::NAN);
        out.record_flag((r1 - 1.0).abs() <= 1e-10);

        out.samples += 1;
    }
    out
}

fn rng_unit(rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    use rand::Rng;
    rng.gen_range(0.0..1.0)
}

/// Ceiling checks used by the search acceptance criteria: every ratio stays
/// under (√m)^(1−1/p), and under the sharp Frobenius constant at p = 2.
pub fn ceiling_holds(ratio_value: f64, p: PExponent, m: usize) -> bool {
    let uni = universal_bound(p, m);
    if ratio_value > uni + 1e-6 {
        return false;
    }
    if p == PExponent::Finite(2.0) && ratio_value > frobenius_bound(m) + 1e-9 {
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let lemma = lemma_suite(40, 1);
        assert!(lemma.passed, "lemma failures: {:?}", lemma.notes);
        let fro = frobenius_suite(25, 2);
        assert!(fro.passed, "frobenius failures: {:?}", fro.notes);
        let prop = prop31_suite(12, 3);
        assert!(prop.passed, "prop31 failures: {:?}", prop.notes);
        let maj = majorization_suite(12, 4);
        assert!(maj.passed, "majorization failures: {:?}", maj.notes);
        let inv = invariance_suite(12, 5);
        assert!(inv.passed, "invariance failures: {:?}", inv.notes);
    }

    #[test]
    fn suites_are_deterministic() {
        let a = lemma_suite(10, 7);
        let b = lemma_suite(10, 7);
        assert_eq!(a.min_slack.to_bits(), b.min_slack.to_bits());
        assert_eq!(a.checks, b.checks);
    }

    #[test]
    fn suite_kind_parses() {
        assert_eq!(SuiteKind::parse("lemma"), Some(SuiteKind::Lemma));
        assert_eq!(SuiteKind::parse("all"), Some(SuiteKind::All));
        assert_eq!(SuiteKind::parse("bogus"), None);
    }
}
