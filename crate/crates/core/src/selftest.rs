//! Exhaustive and randomized cross-check suites.
//!
//! Each suite returns a summary with the first counterexample, formatted as
//! `(a, b, expected, got)` where that shape applies. The suites back both
//! the CLI `selftest` command and the acceptance tests.

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::jacobi::{
    binary_kronecker, gcd, invariant_probe, jacobi, jacobi_bruteforce, jacobi_with,
};
use crate::jstate::{
    compact_index, compact_table, decode_compact, encode_compact, full_index, full_table,
    states_equivalent, JacobiState, Symbol, COMPACT_TABLE_LEN, FULL_TABLE_LEN,
};
use crate::mpnat::Nat;
use crate::reduce::{apply_batch, lehmer_window, step_euclid, QuotientPolicy};
use crate::word::Word;
use crate::StateBackend;

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: u64,
    pub failure: Option<String>,
}

impl SuiteOutcome {
    fn pass(name: &'static str, cases: u64) -> Self {
        SuiteOutcome {
            name,
            cases,
            failure: None,
        }
    }

    fn fail(name: &'static str, cases: u64, failure: String) -> Self {
        SuiteOutcome {
            name,
            cases,
            failure: Some(failure),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Parameters for a full run; defaults match the documented check ranges.
#[derive(Clone, Debug)]
pub struct Config {
    /// Exhaustive bound: numerators `0..=max_n`, odd denominators
    /// `1..=max_n + 1`.
    pub max_n: u64,
    /// Bound for the loop-invariant probe runs.
    pub probe_limit: u64,
    /// Operand sizes for the randomized window checks.
    pub lehmer_bits: Vec<u64>,
    /// Random pairs per operand size.
    pub lehmer_pairs: u64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_n: 1000,
            probe_limit: 500,
            lehmer_bits: vec![256, 1024, 4096],
            lehmer_pairs: 300,
            seed: 0x6a61636f,
        }
    }
}

pub fn run_all(cfg: &Config) -> Vec<SuiteOutcome> {
    vec![
        mpnat_randomized(2000, cfg.seed),
        table_equivalence(),
        mod4_sufficiency(),
        sign_identities(),
        table_backend_consistency(200),
        oracle_equivalence(cfg.max_n),
        loop_invariant(cfg.probe_limit),
        lehmer_coherence(&cfg.lehmer_bits, cfg.lehmer_pairs, cfg.seed),
    ]
}

fn sym(v: i8) -> Symbol {
    Symbol::from_i8(v).unwrap()
}

/// Randomized arithmetic checks for the number kernel.
pub fn mpnat_randomized(reps: u64, seed: u64) -> SuiteOutcome {
    const NAME: &str = "mpnat-randomized";
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cases = 0;
    for i in 0..reps {
        let bits = 16 + (i % 40) * 31;
        let a: Nat = Nat::random_below(&mut rng, bits * 2);
        let mut b: Nat = Nat::random_with_top_bit(&mut rng, bits.max(1));
        if b.is_zero() {
            b = Nat::one();
        }

        let (q, r) = a.divmod(&b).unwrap();
        cases += 1;
        if r >= b {
            return SuiteOutcome::fail(NAME, cases, format!("({a}, {b}, r < b, r = {r})"));
        }
        let back = q.mul(&b);
        if a.checked_sub(&back).map(|d| d != r).unwrap_or(true) {
            return SuiteOutcome::fail(NAME, cases, format!("({a}, {b}, a = q*b + r, failed)"));
        }
        if a.submul(&q, &b).unwrap() != r {
            return SuiteOutcome::fail(NAME, cases, format!("({a}, {b}, submul = r, failed)"));
        }
        if a.low2() != a.divmod(&Nat::from(4u64)).unwrap().1.to_u64().unwrap() as u8 {
            return SuiteOutcome::fail(NAME, cases, format!("({a}, 4, low2, mismatch)"));
        }
        let text = a.to_string();
        if Nat::parse(&text).unwrap() != a {
            return SuiteOutcome::fail(NAME, cases, format!("({a}, -, parse(display), failed)"));
        }
    }
    SuiteOutcome::pass(NAME, cases)
}

/// Both lookup tables agree with the direct update on every valid input,
/// and have exactly their documented sizes.
pub fn table_equivalence() -> SuiteOutcome {
    const NAME: &str = "table-equivalence";
    let full = full_table();
    let compact = compact_table();
    if full.len() != FULL_TABLE_LEN || compact.len() != COMPACT_TABLE_LEN {
        return SuiteOutcome::fail(NAME, 0, "(table sizes, 512/208, wrong)".into());
    }
    let mut cases = 2;
    for s in JacobiState::enumerate_valid() {
        for d_new in 0..2u8 {
            for m4 in 0..4u8 {
                cases += 1;
                let want = s.update(d_new, m4);
                let via_full = JacobiState::unpack(full[full_index(s.pack(), d_new, m4)]);
                if via_full != want {
                    return SuiteOutcome::fail(
                        NAME,
                        cases,
                        format!("({s:?}, ev ({d_new},{m4}), {want:?}, {via_full:?})"),
                    );
                }
                let code = encode_compact(s).unwrap();
                let via_compact = decode_compact(compact[compact_index(code, d_new, m4)]);
                if !states_equivalent(via_compact, want) {
                    return SuiteOutcome::fail(
                        NAME,
                        cases,
                        format!("({s:?}, ev ({d_new},{m4}), {want:?}, {via_compact:?})"),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(NAME, cases)
}

/// State update with the full multiplier, for the residue-sufficiency check.
fn update_with_full_m(s: JacobiState, d_new: u8, m: i64) -> JacobiState {
    let mut e = s.sign_exponent() as i64;
    let mut alpha = s.alpha() as i64;
    let mut beta = s.beta() as i64;
    if s.denominator_index() != d_new && alpha & 1 == 1 && beta & 1 == 1 {
        e += (alpha - 1) * (beta - 1) / 4;
    }
    if d_new == 1 {
        if beta == 2 {
            e += m * (alpha - 1) / 2 + m * (m - 1) / 2;
        }
        alpha = (alpha - m * beta).rem_euclid(4);
    } else {
        if alpha == 2 {
            e += m * (beta - 1) / 2 + m * (m - 1) / 2;
        }
        beta = (beta - m * alpha).rem_euclid(4);
    }
    JacobiState::from_parts((e & 1) as u8, alpha as u8, beta as u8, d_new)
}

/// The update outcome depends on the multiplier only through `m mod 4`,
/// checked for every valid state and `m` in `[1, 64]`.
pub fn mod4_sufficiency() -> SuiteOutcome {
    const NAME: &str = "mod4-sufficiency";
    let mut cases = 0;
    for s in JacobiState::enumerate_valid() {
        for d_new in 0..2u8 {
            for m in 1..=64i64 {
                cases += 1;
                let full = update_with_full_m(s, d_new, m);
                let reduced = s.update(d_new, (m % 4) as u8);
                if full != reduced {
                    return SuiteOutcome::fail(
                        NAME,
                        cases,
                        format!("({s:?}, m = {m}, {reduced:?}, {full:?})"),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(NAME, cases)
}

/// Sign identities of the symbol on small ranges, against the brute-force
/// oracle: negation, reciprocity, shift invariance, and the two
/// even-numerator reduction laws.
pub fn sign_identities() -> SuiteOutcome {
    const NAME: &str = "sign-identities";
    let mut cases = 0;
    let bf = |a: u64, b: u64| jacobi_bruteforce(a, b).unwrap();
    for b in (1..=99u64).step_by(2) {
        let neg_sign = if (b - 1) / 2 % 2 == 1 { -1i8 } else { 1 };
        for a in 1..=99u64 {
            // (a | b) = (-1)^((b-1)/2) (-a | b)
            cases += 1;
            let minus_a = (b - a % b) % b;
            let got = sym(neg_sign * bf(minus_a, b).to_i8());
            if bf(a, b) != got {
                return SuiteOutcome::fail(
                    NAME,
                    cases,
                    format!("({a}, {b}, negation {:?}, {got:?})", bf(a, b)),
                );
            }
            // Reciprocity for odd a.
            if a % 2 == 1 {
                cases += 1;
                let exp = ((a - 1) / 2) * ((b - 1) / 2);
                let sign = if exp % 2 == 1 { -1i8 } else { 1 };
                let got = sym(sign * bf(b, a).to_i8());
                if bf(a, b) != got {
                    return SuiteOutcome::fail(
                        NAME,
                        cases,
                        format!("({a}, {b}, reciprocity {:?}, {got:?})", bf(a, b)),
                    );
                }
            }
            // (a | b) = (a + k*b | b)
            for k in 1..=5u64 {
                cases += 1;
                if bf(a, b) != bf(a + k * b, b) {
                    return SuiteOutcome::fail(
                        NAME,
                        cases,
                        format!("({a}, {b}, shift by {k}b {:?}, {:?})", bf(a, b), bf(a + k * b, b)),
                    );
                }
            }
            // Even-numerator reductions (a | b) -> (a | b - m*a).
            if a % 2 == 0 {
                for m in 1..=b / a {
                    cases += 1;
                    let reduced = bf(a, b - m * a);
                    let want = if a % 4 == 0 {
                        reduced
                    } else {
                        let exp = m * ((b - 1) / 2) + m * (m - 1) / 2;
                        sym(if exp % 2 == 1 { -1 } else { 1 } * reduced.to_i8())
                    };
                    if bf(a, b) != want {
                        return SuiteOutcome::fail(
                            NAME,
                            cases,
                            format!("({a}, {b}, even reduction m={m} {:?}, {want:?})", bf(a, b)),
                        );
                    }
                }
            }
        }
    }
    SuiteOutcome::pass(NAME, cases)
}

/// The three state backends give identical symbols on all small inputs.
pub fn table_backend_consistency(limit: u64) -> SuiteOutcome {
    const NAME: &str = "table-backend-consistency";
    let mut cases = 0;
    for a in 0..=limit {
        for b in (1..=limit).step_by(2) {
            cases += 1;
            let an = Nat::<crate::NativeWord>::from(a);
            let bn = Nat::from(b);
            let d = jacobi_with(&an, &bn, QuotientPolicy::Euclid, StateBackend::Direct).unwrap();
            let f = jacobi_with(&an, &bn, QuotientPolicy::Euclid, StateBackend::TableFull).unwrap();
            let c =
                jacobi_with(&an, &bn, QuotientPolicy::Euclid, StateBackend::TableCompact).unwrap();
            if d != f || d != c {
                return SuiteOutcome::fail(NAME, cases, format!("({a}, {b}, {d:?}, {f:?}/{c:?})"));
            }
        }
    }
    SuiteOutcome::pass(NAME, cases)
}

/// Every policy agrees with the brute-force oracle and the binary
/// algorithm on the exhaustive small range.
pub fn oracle_equivalence(max_n: u64) -> SuiteOutcome {
    const NAME: &str = "oracle-equivalence";
    let mut cases = 0;
    for a in 0..=max_n {
        let an = Nat::<crate::NativeWord>::from(a);
        for b in (1..=max_n + 1).step_by(2) {
            cases += 1;
            let bn = Nat::from(b);
            let want = jacobi_bruteforce(a, b).unwrap();
            let bin = binary_kronecker(&an, &bn).unwrap();
            if bin != want {
                return SuiteOutcome::fail(NAME, cases, format!("({a}, {b}, {want:?}, binary {bin:?})"));
            }
            for policy in [
                QuotientPolicy::Unit,
                QuotientPolicy::Euclid,
                QuotientPolicy::Lehmer,
            ] {
                let got = jacobi(&an, &bn, policy).unwrap();
                if got != want {
                    return SuiteOutcome::fail(
                        NAME,
                        cases,
                        format!("({a}, {b}, {want:?}, {policy:?} {got:?})"),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(NAME, cases)
}

/// The probe's captured `(a, b, S)` must satisfy the driver's loop
/// invariant at every iteration start: the original symbol equals
/// `(-1)^e` times `(a | b)` or `(b | a)`, the side selected by `d` and the
/// parities; and the residues must track the values mod 4.
pub fn loop_invariant(limit: u64) -> SuiteOutcome {
    const NAME: &str = "loop-invariant";
    let mut cases = 0;
    for a0 in 0..=limit {
        for b0 in (1..=limit).step_by(2) {
            let target = jacobi_bruteforce(a0, b0).unwrap();
            let snaps = invariant_probe(
                &Nat::<crate::NativeWord>::from(a0),
                &Nat::from(b0),
                QuotientPolicy::Euclid,
            )
            .unwrap();
            for snap in snaps {
                cases += 1;
                let a = snap.a.to_u64().unwrap();
                let b = snap.b.to_u64().unwrap();
                if snap.state.alpha() != (a % 4) as u8 || snap.state.beta() != (b % 4) as u8 {
                    return SuiteOutcome::fail(
                        NAME,
                        cases,
                        format!("({a0}, {b0}, residues track a={a} b={b}, state {:?})", snap.state),
                    );
                }
                let inner = if snap.state.denominator_index() == 0 {
                    if snap.state.alpha() % 2 == 1 {
                        jacobi_bruteforce(b, a).unwrap()
                    } else {
                        jacobi_bruteforce(a, b).unwrap()
                    }
                } else if snap.state.beta() % 2 == 1 {
                    jacobi_bruteforce(a, b).unwrap()
                } else {
                    jacobi_bruteforce(b, a).unwrap()
                };
                let sign = if snap.state.sign_exponent() == 1 { -1i8 } else { 1 };
                let got = sym(sign * inner.to_i8());
                if got != target {
                    return SuiteOutcome::fail(
                        NAME,
                        cases,
                        format!("({a0}, {b0}, {target:?}, at a={a} b={b} got {got:?})"),
                    );
                }
            }
        }
    }
    SuiteOutcome::pass(NAME, cases)
}

/// Randomized large-operand checks of the window machinery, generic in the
/// word size:
/// * applying a batch equals replaying its reductions one at a time,
/// * every replayed multiplier is at least 1 and never drives a value
///   negative, and the event stream keeps the tracked residues equal to
///   the full-precision values mod 4 (with the state always valid),
/// * gcd and Jacobi agree between the window policy and plain Euclid.
pub fn lehmer_coherence(bit_sizes: &[u64], pairs_per_size: u64, seed: u64) -> SuiteOutcome {
    const NAME: &str = "lehmer-coherence";
    match lehmer_coherence_for::<u64>(bit_sizes, pairs_per_size, seed) {
        Ok(cases) => {
            // A reduced run with 32-bit limbs exercises window boundaries
            // at a different scale.
            match lehmer_coherence_for::<u32>(bit_sizes, pairs_per_size / 4 + 1, seed ^ 1) {
                Ok(more) => SuiteOutcome::pass(NAME, cases + more),
                Err((cases32, msg)) => SuiteOutcome::fail(NAME, cases + cases32, msg),
            }
        }
        Err((cases, msg)) => SuiteOutcome::fail(NAME, cases, msg),
    }
}

fn lehmer_coherence_for<W: Word>(
    bit_sizes: &[u64],
    pairs_per_size: u64,
    seed: u64,
) -> Result<u64, (u64, String)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cases = 0;
    for &bits in bit_sizes {
        for _ in 0..pairs_per_size {
            let mut a = Nat::<W>::random_below(&mut rng, bits);
            if a.is_zero() {
                a = Nat::one();
            }
            let b = Nat::<W>::random_odd(&mut rng, bits);
            cases += 1;
            walk_windows(&a, &b).map_err(|msg| (cases, format!("({a}, {b}, {msg})")))?;

            let ge = gcd(&a, &b, QuotientPolicy::Euclid).unwrap();
            let gl = gcd(&a, &b, QuotientPolicy::Lehmer).unwrap();
            if ge != gl {
                return Err((cases, format!("({a}, {b}, gcd {ge}, {gl})")));
            }
            let je = jacobi(&a, &b, QuotientPolicy::Euclid).unwrap();
            let jl = jacobi(&a, &b, QuotientPolicy::Lehmer).unwrap();
            if je != jl {
                return Err((cases, format!("({a}, {b}, jacobi {je:?}, {jl:?})")));
            }
        }
    }
    Ok(cases)
}

/// Runs the window reduction to completion, checking batch-vs-replay
/// equality and residue tracking after every event.
fn walk_windows<W: Word>(a0: &Nat<W>, b0: &Nat<W>) -> Result<(), String> {
    let mut a = a0.clone();
    let mut b = b0.clone();
    let mut state = JacobiState::init(a.low2(), b.low2()).unwrap();
    while !a.is_zero() && !b.is_zero() {
        let a_ge_b = a >= b;
        let (h, l) = if a_ge_b { (&a, &b) } else { (&b, &a) };
        let (ah, bh, exact) = h.top_window(l);
        match lehmer_window::<W>(ah, bh, exact, a_ge_b as u8) {
            Some(batch) => {
                if !batch.matrix.is_unimodular() {
                    return Err("matrix not unimodular".into());
                }
                let (mut ra, mut rb) = (a.clone(), b.clone());
                for (ev, q) in batch.events.iter().zip(&batch.quotients) {
                    if q.is_zero() {
                        return Err("zero multiplier emitted".into());
                    }
                    let step = if ev.d_new == 1 {
                        ra.submul_word(*q, &rb).map(|v| ra = v)
                    } else {
                        rb.submul_word(*q, &ra).map(|v| rb = v)
                    };
                    if step.is_err() {
                        return Err("replay drove a value negative".into());
                    }
                    state = state.update(ev.d_new, ev.m4);
                    if !state.is_valid() {
                        return Err("state invalid after event".into());
                    }
                    if state.alpha() != ra.low2() || state.beta() != rb.low2() {
                        return Err("tracked residues diverged".into());
                    }
                }
                let (xa, xb) = apply_batch(&a, &b, &batch);
                if xa != ra || xb != rb {
                    return Err("batch apply differs from replay".into());
                }
                a = xa;
                b = xb;
            }
            None => {
                let (a2, b2, ev) = step_euclid(&a, &b).unwrap();
                state = state.update(ev.d_new, ev.m4);
                a = a2;
                b = b2;
                if state.alpha() != a.low2() || state.beta() != b.low2() {
                    return Err("tracked residues diverged (fallback)".into());
                }
            }
        }
    }
    Ok(())
}
