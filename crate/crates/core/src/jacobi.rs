//! Symbol and GCD drivers.
//!
//! The Jacobi driver runs the reduction engine and feeds every emitted
//! event to a sign tracker; when one value reaches zero the tracker turns
//! its exponent into the symbol. The tracker can be the update function
//! itself or either lookup table. Kronecker symbols reduce to the Jacobi
//! case with standard preprocessing, and an independent right-to-left
//! binary algorithm doubles as baseline and cross-check.

use crate::error::Error;
use crate::jstate::{
    compact_index, compact_table, encode_compact, finish_from_exponent, full_index, full_table,
    JacobiState, ReductionEvent, Symbol,
};
use crate::mpnat::Nat;
use crate::reduce::{lehmer_window, reduce_once, step_euclid, QuotientPolicy};
use crate::word::{NativeWord, Word};

/// Which realization of the state update drives a run.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum StateBackend {
    /// Evaluate the update function directly.
    Direct,
    /// 512-entry table over the packed 9-bit input.
    TableFull,
    /// 208-entry table over the 26-value compact state encoding.
    TableCompact,
}

trait Tracker: Sized {
    fn start(a4: u8, b4: u8) -> Result<Self, Error>;
    fn step(&mut self, ev: ReductionEvent);
    fn finish(&self, survivor_is_one: bool) -> Symbol;
}

struct DirectTracker(JacobiState);

impl Tracker for DirectTracker {
    fn start(a4: u8, b4: u8) -> Result<Self, Error> {
        JacobiState::init(a4, b4).map(DirectTracker)
    }

    fn step(&mut self, ev: ReductionEvent) {
        self.0 = self.0.update(ev.d_new, ev.m4);
    }

    fn finish(&self, survivor_is_one: bool) -> Symbol {
        self.0.finish(survivor_is_one)
    }
}

struct FullTableTracker(u8);

impl Tracker for FullTableTracker {
    fn start(a4: u8, b4: u8) -> Result<Self, Error> {
        JacobiState::init(a4, b4).map(|s| FullTableTracker(s.pack()))
    }

    fn step(&mut self, ev: ReductionEvent) {
        debug_assert!(JacobiState::unpack(self.0).is_valid());
        self.0 = full_table()[full_index(self.0, ev.d_new, ev.m4)];
    }

    fn finish(&self, survivor_is_one: bool) -> Symbol {
        finish_from_exponent(self.0 >> 5, survivor_is_one)
    }
}

struct CompactTracker(u8);

impl Tracker for CompactTracker {
    fn start(a4: u8, b4: u8) -> Result<Self, Error> {
        JacobiState::init(a4, b4).and_then(|s| encode_compact(s).map(CompactTracker))
    }

    fn step(&mut self, ev: ReductionEvent) {
        self.0 = compact_table()[compact_index(self.0, ev.d_new, ev.m4)];
    }

    fn finish(&self, survivor_is_one: bool) -> Symbol {
        finish_from_exponent(self.0 / 13, survivor_is_one)
    }
}

fn drive<W: Word, T: Tracker>(
    a0: &Nat<W>,
    b0: &Nat<W>,
    policy: QuotientPolicy,
) -> Result<Symbol, Error> {
    if !b0.is_odd() {
        return Err(Error::EvenDenominator);
    }
    let mut tracker = T::start(a0.low2(), b0.low2())?;
    if a0.is_zero() {
        // (0 | b) = [b = 1], before any reduction runs.
        return Ok(tracker.finish(b0.is_one()));
    }
    let mut a = a0.clone();
    let mut b = b0.clone();
    loop {
        let (a2, b2, events) = reduce_once(policy, &a, &b)?;
        a = a2;
        b = b2;
        for ev in events {
            tracker.step(ev);
        }
        if a.is_zero() {
            return Ok(tracker.finish(b.is_one()));
        }
        if b.is_zero() {
            return Ok(tracker.finish(a.is_one()));
        }
    }
}

/// Jacobi symbol `(a | b)` for odd positive `b`, driven by the compact
/// table backend.
pub fn jacobi<W: Word>(a: &Nat<W>, b: &Nat<W>, policy: QuotientPolicy) -> Result<Symbol, Error> {
    jacobi_with(a, b, policy, StateBackend::TableCompact)
}

/// Jacobi symbol with an explicit state backend.
pub fn jacobi_with<W: Word>(
    a: &Nat<W>,
    b: &Nat<W>,
    policy: QuotientPolicy,
    backend: StateBackend,
) -> Result<Symbol, Error> {
    match backend {
        StateBackend::Direct => drive::<W, DirectTracker>(a, b, policy),
        StateBackend::TableFull => drive::<W, FullTableTracker>(a, b, policy),
        StateBackend::TableCompact => drive::<W, CompactTracker>(a, b, policy),
    }
}

/// Greatest common divisor of positive inputs via the same engine.
pub fn gcd<W: Word>(a: &Nat<W>, b: &Nat<W>, policy: QuotientPolicy) -> Result<Nat<W>, Error> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut a = a.clone();
    let mut b = b.clone();
    while !a.is_zero() && !b.is_zero() {
        let (a2, b2, _) = reduce_once(policy, &a, &b)?;
        a = a2;
        b = b2;
    }
    Ok(if a.is_zero() { b } else { a })
}

/// Signed integer for Kronecker inputs; zero is never negative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Int<W: Word = NativeWord> {
    magnitude: Nat<W>,
    negative: bool,
}

impl<W: Word> Int<W> {
    pub fn new(magnitude: Nat<W>, negative: bool) -> Self {
        let negative = negative && !magnitude.is_zero();
        Int {
            magnitude,
            negative,
        }
    }

    pub fn magnitude(&self) -> &Nat<W> {
        &self.magnitude
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// Parses an optionally `-`-prefixed decimal or `0x`-hex literal.
    pub fn parse(text: &str) -> Result<Self, Error> {
        if let Some(rest) = text.strip_prefix('-') {
            let magnitude = Nat::parse(rest).map_err(|e| match e {
                Error::InvalidDigit { pos, ch } => Error::InvalidDigit { pos: pos + 1, ch },
                other => other,
            })?;
            Ok(Int::new(magnitude, true))
        } else {
            Ok(Int::new(Nat::parse(text)?, false))
        }
    }
}

impl<W: Word> From<i64> for Int<W> {
    fn from(v: i64) -> Self {
        Int::new(Nat::from(v.unsigned_abs()), v < 0)
    }
}

impl<W: Word> std::fmt::Display for Int<W> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "{}", self.magnitude)
    }
}

/// Kronecker symbol `(a | b)`, total on integers.
///
/// Preprocessing follows the standard definition: `(a | 0) = [|a| = 1]`;
/// a negative denominator contributes `-1` exactly when `a < 0`; each
/// factor of 2 in the denominator contributes `(a | 2)`, which is 0 for
/// even `a`, `+1` for `a = +-1 mod 8` and `-1` for `a = +-3 mod 8`; a
/// negative numerator contributes `(-1)^((b-1)/2)`. What remains is a
/// Jacobi symbol.
pub fn kronecker<W: Word>(a: &Int<W>, b: &Int<W>) -> Symbol {
    if b.magnitude.is_zero() {
        return if a.magnitude.is_one() {
            Symbol::One
        } else {
            Symbol::Zero
        };
    }
    let mut acc = Symbol::One;
    if b.negative && a.negative {
        acc = -acc;
    }
    let mut bm = b.magnitude.clone();
    let twos = bm.trailing_zeros();
    if twos > 0 {
        if !a.magnitude.is_odd() {
            return Symbol::Zero;
        }
        bm = bm.shr_bits(twos);
        if twos % 2 == 1 {
            let a8 = if a.negative {
                (8 - a.magnitude.low3()) & 7
            } else {
                a.magnitude.low3()
            };
            if a8 == 3 || a8 == 5 {
                acc = -acc;
            }
        }
    }
    if a.negative && bm.low2() == 3 {
        acc = -acc;
    }
    let j = jacobi(&a.magnitude, &bm, QuotientPolicy::Lehmer)
        .expect("denominator is odd and positive after preprocessing");
    acc * j
}

/// Right-to-left binary computation of `(a | b)` for odd positive `b`.
///
/// Casts out powers of two with the `(2 | b)` rule and swaps with
/// reciprocity; an independent path used as benchmark baseline and oracle.
pub fn binary_kronecker<W: Word>(a: &Nat<W>, b: &Nat<W>) -> Result<Symbol, Error> {
    if !b.is_odd() {
        return Err(Error::EvenDenominator);
    }
    let mut a = a.divmod(b).unwrap().1;
    let mut b = b.clone();
    let mut t = Symbol::One;
    while !a.is_zero() {
        let twos = a.trailing_zeros();
        if twos > 0 {
            a = a.shr_bits(twos);
            if twos % 2 == 1 {
                let b8 = b.low3();
                if b8 == 3 || b8 == 5 {
                    t = -t;
                }
            }
        }
        if a.low2() == 3 && b.low2() == 3 {
            t = -t;
        }
        let r = b.divmod(&a).unwrap().1;
        b = a;
        a = r;
    }
    if b.is_one() {
        Ok(t)
    } else {
        Ok(Symbol::Zero)
    }
}

fn modpow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % modulus as u128) as u64;
        }
        base = ((base as u128 * base as u128) % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol by Euler's criterion, for odd prime `p`.
fn legendre(a: u64, p: u64) -> Symbol {
    let ar = a % p;
    if ar == 0 {
        return Symbol::Zero;
    }
    let r = modpow(ar, (p - 1) / 2, p);
    debug_assert!(r == 1 || r == p - 1);
    if r == 1 {
        Symbol::One
    } else {
        Symbol::MinusOne
    }
}

/// Brute-force Jacobi oracle: factors `b` by trial division and multiplies
/// Legendre symbols. Only for odd `b` up to 10^6.
pub fn jacobi_bruteforce(a: u64, b: u64) -> Result<Symbol, Error> {
    if b == 0 || b % 2 == 0 || b > 1_000_000 {
        return Err(Error::OracleRange);
    }
    let mut result = Symbol::One;
    let mut rem = b;
    let mut f = 3u64;
    while f * f <= rem {
        if rem % f == 0 {
            let mut k = 0u32;
            while rem % f == 0 {
                rem /= f;
                k += 1;
            }
            match legendre(a, f) {
                Symbol::Zero => return Ok(Symbol::Zero),
                Symbol::MinusOne if k % 2 == 1 => result = -result,
                _ => {}
            }
        }
        f += 2;
    }
    if rem > 1 {
        match legendre(a, rem) {
            Symbol::Zero => return Ok(Symbol::Zero),
            Symbol::MinusOne => result = -result,
            _ => {}
        }
    }
    Ok(result)
}

/// State of the computation at the start of one iteration.
#[derive(Clone, Debug)]
pub struct ProbeSnapshot<W: Word = NativeWord> {
    pub a: Nat<W>,
    pub b: Nat<W>,
    pub state: JacobiState,
}

/// Runs the Jacobi driver capturing `(a, b, S)` before every iteration,
/// one snapshot per reduction event regardless of policy. Restricted to
/// inputs small enough for [`jacobi_bruteforce`] so tests can evaluate the
/// captured symbols.
pub fn invariant_probe<W: Word>(
    a0: &Nat<W>,
    b0: &Nat<W>,
    policy: QuotientPolicy,
) -> Result<Vec<ProbeSnapshot<W>>, Error> {
    if !b0.is_odd() {
        return Err(Error::EvenDenominator);
    }
    if a0.bitlen() > 20 || b0.bitlen() > 20 {
        return Err(Error::OracleRange);
    }
    let mut state = JacobiState::init(a0.low2(), b0.low2())?;
    let mut a = a0.clone();
    let mut b = b0.clone();
    let mut snaps = vec![ProbeSnapshot {
        a: a.clone(),
        b: b.clone(),
        state,
    }];
    while !a.is_zero() && !b.is_zero() {
        // Materialize one reduction at a time so each snapshot is a true
        // iteration start even inside window batches.
        let steps: Vec<(ReductionEvent, Nat<W>, Nat<W>)> = match policy {
            QuotientPolicy::Lehmer => {
                let a_ge_b = a >= b;
                let (h, l) = if a_ge_b { (&a, &b) } else { (&b, &a) };
                let (ah, bh, exact) = h.top_window(l);
                match lehmer_window::<W>(ah, bh, exact, a_ge_b as u8) {
                    Some(batch) => {
                        let mut out = Vec::with_capacity(batch.events.len());
                        let (mut ra, mut rb) = (a.clone(), b.clone());
                        for (ev, q) in batch.events.iter().zip(&batch.quotients) {
                            if ev.d_new == 1 {
                                ra = ra.submul_word(*q, &rb).unwrap();
                            } else {
                                rb = rb.submul_word(*q, &ra).unwrap();
                            }
                            out.push((*ev, ra.clone(), rb.clone()));
                        }
                        out
                    }
                    None => {
                        let (a2, b2, ev) = step_euclid(&a, &b)?;
                        vec![(ev, a2, b2)]
                    }
                }
            }
            _ => {
                let (a2, b2, events) = reduce_once(policy, &a, &b)?;
                vec![(events[0], a2, b2)]
            }
        };
        for (ev, a2, b2) in steps {
            state = state.update(ev.d_new, ev.m4);
            a = a2;
            b = b2;
            if !a.is_zero() && !b.is_zero() {
                snaps.push(ProbeSnapshot {
                    a: a.clone(),
                    b: b.clone(),
                    state,
                });
            }
        }
    }
    Ok(snaps)
}

#[cfg(test)]
mod tests {
    use super::*;

    type N = Nat<u64>;

    fn nat(v: u64) -> N {
        N::from(v)
    }

    fn j(a: u64, b: u64) -> Symbol {
        jacobi(&nat(a), &nat(b), QuotientPolicy::Euclid).unwrap()
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(j(0, 1), Symbol::One);
        assert_eq!(j(0, 5), Symbol::Zero);
        assert_eq!(j(2, 3), Symbol::MinusOne);
        assert_eq!(j(19, 45), Symbol::One);
        assert_eq!(j(6, 9), Symbol::Zero);
        assert_eq!(
            jacobi(&nat(2), &nat(4), QuotientPolicy::Euclid),
            Err(Error::EvenDenominator)
        );
        assert_eq!(
            jacobi(&nat(2), &N::zero(), QuotientPolicy::Euclid),
            Err(Error::EvenDenominator)
        );
    }

    #[test]
    fn gcd_examples() {
        let g = |a: u64, b: u64| gcd(&nat(a), &nat(b), QuotientPolicy::Euclid).unwrap();
        assert_eq!(g(45, 19), N::one());
        assert_eq!(g(6, 9), nat(3));
        assert_eq!(g(41, 41), nat(41));
        assert_eq!(
            gcd(&N::zero(), &nat(5), QuotientPolicy::Euclid),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn kronecker_examples() {
        let k = |a: i64, b: i64| kronecker::<u64>(&Int::from(a), &Int::from(b));
        assert_eq!(k(1, 0), Symbol::One);
        assert_eq!(k(2, 0), Symbol::Zero);
        assert_eq!(k(-1, 5), Symbol::One);
        assert_eq!(k(-1, 3), Symbol::MinusOne);
        assert_eq!(k(19, 45), Symbol::One);
        // Odd positive denominator: plain Jacobi.
        for a in 0..40u64 {
            for b in (1..40u64).step_by(2) {
                assert_eq!(k(a as i64, b as i64), j(a, b));
            }
        }
    }

    #[test]
    fn binary_examples() {
        let bk = |a: u64, b: u64| binary_kronecker(&nat(a), &nat(b)).unwrap();
        assert_eq!(bk(2, 7), Symbol::One);
        assert_eq!(bk(2, 5), Symbol::MinusOne);
        for a in 0..=60u64 {
            for b in (1..=61u64).step_by(2) {
                assert_eq!(bk(a, b), j(a, b), "binary vs driver at ({a}, {b})");
            }
        }
        assert_eq!(
            binary_kronecker(&nat(2), &nat(4)),
            Err(Error::EvenDenominator)
        );
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(jacobi_bruteforce(2, 3).unwrap(), Symbol::MinusOne);
        assert_eq!(jacobi_bruteforce(4, 7).unwrap(), Symbol::One);
        assert_eq!(jacobi_bruteforce(5, 9).unwrap(), Symbol::One);
        assert_eq!(jacobi_bruteforce(1, 2_000_001), Err(Error::OracleRange));
        assert_eq!(jacobi_bruteforce(1, 10), Err(Error::OracleRange));
    }

    #[test]
    fn backends_agree() {
        for a in 0..=50u64 {
            for b in (1..=51u64).step_by(2) {
                let d = jacobi_with(&nat(a), &nat(b), QuotientPolicy::Euclid, StateBackend::Direct)
                    .unwrap();
                let f =
                    jacobi_with(&nat(a), &nat(b), QuotientPolicy::Euclid, StateBackend::TableFull)
                        .unwrap();
                let c = jacobi_with(
                    &nat(a),
                    &nat(b),
                    QuotientPolicy::Euclid,
                    StateBackend::TableCompact,
                )
                .unwrap();
                assert_eq!(d, f);
                assert_eq!(d, c);
            }
        }
    }

    #[test]
    fn probe_starts_at_init() {
        let snaps = invariant_probe(&nat(360), &nat(271), QuotientPolicy::Euclid).unwrap();
        let first = &snaps[0];
        assert_eq!(first.state.denominator_index(), 1);
        assert_eq!(first.state.sign_exponent(), 0);
        for s in &snaps {
            assert_eq!(s.state.alpha(), s.a.low2());
            assert_eq!(s.state.beta(), s.b.low2());
        }
    }
}
