//! Timing harness with CSV output.
//!
//! Operands are generated once per size from the seed and shared by every
//! algorithm, so rows with the same seed time identical inputs.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;

use jacobi_core::{binary_kronecker, gcd, jacobi, Nat, QuotientPolicy};

pub const ALGOS: [&str; 5] = [
    "jacobi-euclid",
    "jacobi-lehmer",
    "jacobi-binary",
    "gcd-euclid",
    "gcd-lehmer",
];

pub struct BenchRecord {
    pub algo: String,
    pub bits: u64,
    pub reps: u64,
    pub seed: u64,
    pub ns_per_op: u128,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.algo, self.bits, self.reps, self.seed, self.ns_per_op
        )
    }
}

pub const CSV_HEADER: &str = "algo,bits,reps,seed,ns_per_op";

fn operands(bits: u64, count: usize, seed: u64) -> Vec<(Nat, Nat)> {
    let mut rng = StdRng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ bits);
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

fn run_algo(algo: &str, a: &Nat, b: &Nat) {
    match algo {
        "jacobi-euclid" => {
            jacobi(a, b, QuotientPolicy::Euclid).unwrap();
        }
        "jacobi-lehmer" => {
            jacobi(a, b, QuotientPolicy::Lehmer).unwrap();
        }
        "jacobi-binary" => {
            binary_kronecker(a, b).unwrap();
        }
        "gcd-euclid" => {
            gcd(a, b, QuotientPolicy::Euclid).unwrap();
        }
        "gcd-lehmer" => {
            gcd(a, b, QuotientPolicy::Lehmer).unwrap();
        }
        _ => unreachable!("algo ids are validated before timing"),
    }
}

pub fn run(bits_list: &[u64], reps: u64, seed: u64, algos: &[String]) -> Result<Vec<BenchRecord>, String> {
    if bits_list.is_empty() {
        return Err("at least one operand size is required".into());
    }
    if reps == 0 {
        return Err("reps must be at least 1".into());
    }
    for &bits in bits_list {
        if bits < 64 {
            return Err(format!("operand size {bits} too small; need at least 64 bits"));
        }
    }
    for algo in algos {
        if !ALGOS.contains(&algo.as_str()) {
            return Err(format!(
                "unknown algorithm {algo:?}; expected one of {}",
                ALGOS.join(", ")
            ));
        }
    }

    let mut records = Vec::new();
    for &bits in bits_list {
        let pairs = operands(bits, reps.min(8) as usize, seed);
        for algo in algos {
            let (a0, b0) = &pairs[0];
            run_algo(algo, a0, b0); // warm-up
            let start = Instant::now();
            for i in 0..reps {
                let (a, b) = &pairs[i as usize % pairs.len()];
                run_algo(algo, a, b);
            }
            let ns_per_op = (start.elapsed().as_nanos() / reps as u128).max(1);
            records.push(BenchRecord {
                algo: algo.clone(),
                bits,
                reps,
                seed,
                ns_per_op,
            });
        }
    }
    Ok(records)
}
