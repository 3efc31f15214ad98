//! Small exhaustive identities of the symbol and the loop invariant.

use jacobi_core::{
    gcd, invariant_probe, jacobi, jacobi_bruteforce, kronecker, selftest, Int, Nat,
    QuotientPolicy, Symbol,
};

type N = Nat<u64>;

fn j(a: u64, b: u64) -> Symbol {
    jacobi(&N::from(a), &N::from(b), QuotientPolicy::Euclid).unwrap()
}

#[test]
fn multiplicative_in_numerator_and_denominator() {
    for b in (1..=61u64).step_by(2) {
        for a1 in 0..=60u64 {
            for a2 in 0..=60u64 {
                assert_eq!(j(a1 * a2, b), j(a1, b) * j(a2, b));
            }
        }
    }
    for a in 0..=60u64 {
        for b1 in (1..=61u64).step_by(2) {
            for b2 in (1..=61u64).step_by(2) {
                assert_eq!(j(a, b1 * b2), j(a, b1) * j(a, b2));
            }
        }
    }
}

#[test]
fn periodic_in_numerator() {
    for b in (1..=199u64).step_by(2) {
        for a in 0..=199u64 {
            assert_eq!(j(a, b), j(a + b, b));
        }
    }
}

#[test]
fn zero_iff_common_factor() {
    for a in 1..=300u64 {
        for b in (1..=301u64).step_by(2) {
            let g = gcd(&N::from(a), &N::from(b), QuotientPolicy::Euclid).unwrap();
            assert_eq!(j(a, b) == Symbol::Zero, !g.is_one(), "at ({a}, {b})");
        }
    }
}

#[test]
fn quadratic_residues_on_primes() {
    let mut sieve = vec![true; 1000];
    sieve[0] = false;
    sieve[1] = false;
    for i in 2..1000usize {
        if sieve[i] {
            for k in (i * i..1000).step_by(i) {
                sieve[k] = false;
            }
        }
    }
    for p in (3..1000u64).filter(|&p| sieve[p as usize]) {
        let mut residues = vec![false; p as usize];
        for x in 1..p {
            residues[(x * x % p) as usize] = true;
        }
        for a in 1..p {
            let expected = if residues[a as usize] {
                Symbol::One
            } else {
                Symbol::MinusOne
            };
            assert_eq!(j(a, p), expected, "Legendre ({a} | {p})");
        }
    }
}

#[test]
fn invariant_probe_small_all_policies() {
    for policy in [
        QuotientPolicy::Unit,
        QuotientPolicy::Euclid,
        QuotientPolicy::Lehmer,
    ] {
        for a0 in 0..=60u64 {
            for b0 in (1..=61u64).step_by(2) {
                let target = jacobi_bruteforce(a0, b0).unwrap();
                let snaps = invariant_probe(&N::from(a0), &N::from(b0), policy).unwrap();
                assert_eq!(snaps[0].state.denominator_index(), 1);
                assert_eq!(snaps[0].state.sign_exponent(), 0);
                for snap in snaps {
                    let (a, b) = (snap.a.to_u64().unwrap(), snap.b.to_u64().unwrap());
                    assert_eq!(snap.state.alpha(), (a % 4) as u8);
                    assert_eq!(snap.state.beta(), (b % 4) as u8);
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
                    let got = if snap.state.sign_exponent() == 1 {
                        -inner
                    } else {
                        inner
                    };
                    assert_eq!(got, target, "policy {policy:?} at ({a0}, {b0})");
                }
            }
        }
    }
}

#[test]
fn kronecker_denominator_multiplicativity() {
    for a in -40i64..=40 {
        for b1 in 1i64..=40 {
            for b2 in 1i64..=40 {
                let lhs = kronecker::<u64>(&Int::from(a), &Int::from(b1 * b2));
                let rhs =
                    kronecker::<u64>(&Int::from(a), &Int::from(b1)) * kronecker::<u64>(&Int::from(a), &Int::from(b2));
                assert_eq!(lhs, rhs, "({a} | {b1}*{b2})");
            }
        }
    }
}

#[test]
fn kronecker_negative_denominator() {
    for a in -50i64..=50 {
        for b in 1i64..=50 {
            let minus_one = kronecker::<u64>(&Int::from(a), &Int::from(-1));
            let want = if a < 0 { Symbol::MinusOne } else { Symbol::One };
            assert_eq!(minus_one, want);
            assert_eq!(
                kronecker::<u64>(&Int::from(a), &Int::from(-b)),
                minus_one * kronecker::<u64>(&Int::from(a), &Int::from(b)),
                "({a} | -{b})"
            );
        }
    }
}

#[test]
fn sign_identities_suite_passes() {
    let outcome = selftest::sign_identities();
    assert!(outcome.passed(), "{:?}", outcome.failure);
}

#[test]
fn mod4_sufficiency_suite_passes() {
    let outcome = selftest::mod4_sufficiency();
    assert!(outcome.passed(), "{:?}", outcome.failure);
}

#[test]
fn lehmer_coherence_smoke() {
    let outcome = selftest::lehmer_coherence(&[192, 320], 40, 7);
    assert!(outcome.passed(), "{:?}", outcome.failure);
}
