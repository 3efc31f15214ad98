//! Acceptance gate: every shipped guarantee, one pass/fail line each.
//!
//! Runs without the default harness so the criteria execute sequentially;
//! the two throughput criteria need the machine to themselves.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;

use jacobi_core::{binary_kronecker, gcd, jacobi, selftest, Nat, QuotientPolicy};

struct Criterion {
    id: u32,
    name: &'static str,
    detail: String,
    pass: bool,
}

fn run_suite(
    id: u32,
    name: &'static str,
    deadline_s: Option<f64>,
    suite: impl FnOnce() -> selftest::SuiteOutcome,
) -> Criterion {
    let started = Instant::now();
    let o = suite();
    let elapsed = started.elapsed().as_secs_f64();
    let within_deadline = deadline_s.map(|d| elapsed <= d).unwrap_or(true);
    Criterion {
        id,
        name,
        detail: match &o.failure {
            None => format!("{} cases, zero mismatches, {elapsed:.1}s", o.cases),
            Some(f) => format!("counterexample {f}"),
        },
        pass: o.passed() && within_deadline,
    }
}

fn gen_pairs(bits: u64, count: usize, seed: u64) -> Vec<(Nat, Nat)> {
    let mut rng = StdRng::seed_from_u64(seed ^ bits);
    (0..count)
        .map(|_| {
            let mut a: Nat = Nat::random_below(&mut rng, bits);
            if a.is_zero() {
                a = Nat::one();
            }
            let b: Nat = Nat::random_odd(&mut rng, bits);
            (a, b)
        })
        .collect()
}

fn time_over(pairs: &[(Nat, Nat)], rounds: u32, mut f: impl FnMut(&Nat, &Nat)) -> f64 {
    let start = Instant::now();
    for _ in 0..rounds {
        for (a, b) in pairs {
            f(a, b);
        }
    }
    start.elapsed().as_secs_f64() / (rounds as usize * pairs.len()) as f64
}

/// Extra time of the symbol over the plain gcd stays a small factor.
fn linear_overhead() -> Criterion {
    let bits = 100_000;
    let pairs = gen_pairs(bits, 3, 0xbeef);
    // Warm both paths once.
    let _ = gcd(&pairs[0].0, &pairs[0].1, QuotientPolicy::Lehmer).unwrap();
    let _ = jacobi(&pairs[0].0, &pairs[0].1, QuotientPolicy::Lehmer).unwrap();
    let mut t_gcd = 0.0;
    let mut t_jac = 0.0;
    for _ in 0..3 {
        t_gcd += time_over(&pairs, 1, |a, b| {
            gcd(a, b, QuotientPolicy::Lehmer).unwrap();
        });
        t_jac += time_over(&pairs, 1, |a, b| {
            jacobi(a, b, QuotientPolicy::Lehmer).unwrap();
        });
    }
    let ratio = t_jac / t_gcd;
    Criterion {
        id: 6,
        name: "linear overhead (jacobi-lehmer vs gcd-lehmer at 1e5 bits)",
        detail: format!("ratio {ratio:.3} (limit 1.30)"),
        pass: ratio <= 1.3,
    }
}

/// The window policy beats the binary baseline, and by more as the
/// operands grow.
fn baseline_speedup() -> Criterion {
    let sizes: [(u64, u32, u32); 3] = [(4096, 12, 8), (16384, 8, 4), (65536, 6, 2)];
    let mut ratios = Vec::new();
    for (bits, lehmer_rounds, binary_rounds) in sizes {
        let pairs = gen_pairs(bits, 3, 0xcafe);
        let _ = jacobi(&pairs[0].0, &pairs[0].1, QuotientPolicy::Lehmer).unwrap();
        let _ = binary_kronecker(&pairs[0].0, &pairs[0].1).unwrap();
        let t_lehmer = time_over(&pairs, lehmer_rounds, |a, b| {
            jacobi(a, b, QuotientPolicy::Lehmer).unwrap();
        });
        let t_binary = time_over(&pairs, binary_rounds, |a, b| {
            binary_kronecker(a, b).unwrap();
        });
        ratios.push((bits, t_binary / t_lehmer));
    }
    let detail = ratios
        .iter()
        .map(|(bits, r)| format!("{bits}b: {r:.2}x"))
        .collect::<Vec<_>>()
        .join(", ");
    let final_ratio = ratios[2].1;
    let monotone = ratios[0].1 <= ratios[1].1 && ratios[1].1 <= ratios[2].1;
    Criterion {
        id: 7,
        name: "baseline speedup (jacobi-lehmer vs jacobi-binary)",
        detail: format!("{detail} (need >= 1.5x at 65536b, non-decreasing)"),
        pass: final_ratio >= 1.5 && monotone,
    }
}

fn main() {
    let criteria = vec![
        run_suite(1, "exhaustive oracle equivalence", Some(30.0), || {
            selftest::oracle_equivalence(1000)
        }),
        run_suite(2, "table equivalence (512 + 208)", None, selftest::table_equivalence),
        run_suite(3, "loop-invariant suite", None, || selftest::loop_invariant(500)),
        run_suite(4, "symbol sign identities", None, selftest::sign_identities),
        run_suite(5, "lehmer coherence", Some(120.0), || {
            selftest::lehmer_coherence(&[256, 1024, 4096], 10_000, 0x5eed)
        }),
        linear_overhead(),
        baseline_speedup(),
        run_suite(8, "mod-4 sufficiency", None, selftest::mod4_sufficiency),
    ];

    let mut failed = 0;
    for c in &criteria {
        let status = if c.pass { "PASS" } else { "FAIL" };
        println!("ACCEPTANCE {} [{status}] {} — {}", c.id, c.name, c.detail);
        if !c.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
