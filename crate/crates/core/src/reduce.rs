//! Generic left-to-right reduction engine.
//!
//! One reduction subtracts a multiple of the smaller value from the larger:
//! `a <- a - m*b` (or symmetrically) with `1 <= m <= floor(larger/smaller)`.
//! Policies differ only in how `m` is chosen: single subtractions, full
//! quotients, or word-window batches in the style of Lehmer's algorithm.
//! Every reduction is reported as a [`ReductionEvent`] so a sign tracker
//! can follow the run without seeing the full-precision values.

use num_traits::{CheckedAdd, CheckedMul, One, Zero};

use crate::error::Error;
use crate::jstate::ReductionEvent;
use crate::mpnat::Nat;
use crate::word::{NativeWord, Word};

/// How the multiplier of each reduction step is chosen.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum QuotientPolicy {
    /// `m = 1` always. Exponentially many steps in the worst case; only
    /// usable for small inputs and cross-checks.
    Unit,
    /// `m` is the exact quotient, one full-precision division per step.
    Euclid,
    /// Quotients computed from the top windows of both numbers and applied
    /// in batches, falling back to a full-precision step when no quotient
    /// can be certified.
    Lehmer,
}

/// 2x2 reduction matrix in sign-magnitude form.
///
/// Entries are nonnegative magnitudes; the actual signs alternate in a
/// checkerboard fixed by `sign_pattern`. With `(h, l)` the oriented inputs
/// (larger first), the current values after the batch are
///
/// * `sign_pattern = 0`: `x = u00*h - u01*l`, `y = u11*l - u10*h`
/// * `sign_pattern = 1`: `x = u01*l - u00*h`, `y = u10*h - u11*l`
///
/// where `x` is the currently-larger value. Entries stay at or below
/// `2^(W::BITS - 1)`, so each product fits a double word per limb.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Mat2<W: Word = NativeWord> {
    pub u00: W,
    pub u01: W,
    pub u10: W,
    pub u11: W,
    pub sign_pattern: u8,
}

impl<W: Word> Mat2<W> {
    pub fn identity() -> Self {
        Mat2 {
            u00: W::one(),
            u01: W::zero(),
            u10: W::zero(),
            u11: W::one(),
            sign_pattern: 0,
        }
    }

    /// `|u00*u11 - u01*u10| == 1`.
    pub fn is_unimodular(&self) -> bool {
        let ps = self.u00.wide() * self.u11.wide();
        let qr = self.u01.wide() * self.u10.wide();
        ps.max(qr) - ps.min(qr) == W::Wide::one()
    }
}

/// A window's worth of reductions: the accumulated matrix, the event per
/// reduction, and the full multiplier per reduction (word-sized, since the
/// matrix bound caps every accepted quotient).
#[derive(Clone, Debug)]
pub struct ReductionBatch<W: Word = NativeWord> {
    pub matrix: Mat2<W>,
    pub events: Vec<ReductionEvent>,
    pub quotients: Vec<W>,
}

/// One unit step: subtracts the smaller value from the larger once.
/// Ties take the `a >= b` branch.
pub fn step_unit<W: Word>(a: &Nat<W>, b: &Nat<W>) -> Result<(Nat<W>, Nat<W>, ReductionEvent), Error> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    if a >= b {
        let a2 = a.checked_sub(b).unwrap();
        Ok((a2, b.clone(), ReductionEvent::new(1, 1)))
    } else {
        let b2 = b.checked_sub(a).unwrap();
        Ok((a.clone(), b2, ReductionEvent::new(0, 1)))
    }
}

/// One Euclid step: the larger value is replaced by its remainder mod the
/// smaller, and the event carries the quotient mod 4.
pub fn step_euclid<W: Word>(
    a: &Nat<W>,
    b: &Nat<W>,
) -> Result<(Nat<W>, Nat<W>, ReductionEvent), Error> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    if a >= b {
        let (q, r) = a.divmod(b).unwrap();
        Ok((r, b.clone(), ReductionEvent::new(1, q.low2())))
    } else {
        let (q, r) = b.divmod(a).unwrap();
        Ok((a.clone(), r, ReductionEvent::new(0, q.low2())))
    }
}

fn wide_m4<W: Word>(m: W::Wide) -> u8 {
    (W::from_wide_lo(m) & W::from_u8(3)).to_u8().unwrap()
}

/// Runs a word-precision Euclid loop on the top windows `ah >= bh`, both
/// truncated at the same bit offset. Each candidate quotient is accepted
/// only when it provably equals the quotient of the untruncated numbers;
/// `d_first` is the event side of the first reduction, and sides alternate
/// because accepted quotients are exact.
///
/// Returns `None` when not even the first quotient can be certified.
///
/// Certainty test: the untruncated values, rescaled to window units, are
/// `x + dx` and `y + dy` where the error terms are bounded by the current
/// matrix row magnitudes with alternating signs: at even steps
/// `dx in (-u01, +u00)` and `dy in (-u10, +u11)`, swapped at odd steps.
/// The true quotient is pinned when the floors of
/// `(x - neg_x)/(y + pos_y)` and `(x + pos_x)/(y - neg_y)` agree. With
/// `exact` windows the errors are zero and every quotient is accepted.
///
/// The loop also stops before any matrix magnitude would exceed
/// `2^(W::BITS - 1)`, which keeps batch application overflow-free.
pub fn lehmer_window<W: Word>(
    ah: W::Wide,
    bh: W::Wide,
    exact: bool,
    d_first: u8,
) -> Option<ReductionBatch<W>> {
    let zero = W::Wide::zero();
    let one = W::Wide::one();
    if bh == zero || ah < bh {
        return None;
    }
    let bound = one << (W::BITS - 1) as usize;

    let mut x = ah;
    let mut y = bh;
    // Row magnitudes: (p, q) expresses x in the oriented inputs, (r, s)
    // expresses y. Kept as double words during updates for easy checks.
    let (mut p, mut q) = (one, zero);
    let (mut r, mut s) = (zero, one);
    let mut pattern = 0u8;
    let mut d_cur = d_first;
    let mut events = Vec::new();
    let mut quotients = Vec::new();

    while y > zero {
        let m = if exact {
            x / y
        } else {
            let (pos_x, neg_x, pos_y, neg_y) = if pattern == 0 {
                (p, q, s, r)
            } else {
                (q, p, r, s)
            };
            if x <= neg_x || y <= neg_y {
                break;
            }
            let (Some(hi_num), Some(lo_den)) = (x.checked_add(&pos_x), y.checked_add(&pos_y))
            else {
                break;
            };
            let q_lo = (x - neg_x) / lo_den;
            let q_hi = hi_num / (y - neg_y);
            if q_lo != q_hi {
                break;
            }
            q_lo
        };
        if m == zero {
            break;
        }
        // Matrix growth for the reduced row; stop rather than exceed the bound.
        let grown = (|| {
            let p2 = p.checked_add(&m.checked_mul(&r)?)?;
            let q2 = q.checked_add(&m.checked_mul(&s)?)?;
            Some((p2, q2))
        })();
        let Some((p2, q2)) = grown else { break };
        if p2 > bound || q2 > bound {
            break;
        }

        events.push(ReductionEvent::new(d_cur, wide_m4::<W>(m)));
        quotients.push(W::from_wide_lo(m));

        let x2 = x - m * y;
        x = y;
        y = x2;
        (p, q, r, s) = (r, s, p2, q2);
        pattern ^= 1;
        d_cur ^= 1;
    }

    if events.is_empty() {
        return None;
    }
    let matrix = Mat2 {
        u00: W::from_wide_lo(p),
        u01: W::from_wide_lo(q),
        u10: W::from_wide_lo(r),
        u11: W::from_wide_lo(s),
        sign_pattern: pattern,
    };
    debug_assert!(matrix.is_unimodular());
    Some(ReductionBatch {
        matrix,
        events,
        quotients,
    })
}

/// Applies a whole batch to the full-precision pair in one pass, giving the
/// same values as replaying the batch's reductions one at a time.
pub fn apply_batch<W: Word>(a: &Nat<W>, b: &Nat<W>, batch: &ReductionBatch<W>) -> (Nat<W>, Nat<W>) {
    assert!(!batch.events.is_empty());
    let m = &batch.matrix;
    debug_assert_eq!(m.sign_pattern, (batch.events.len() % 2) as u8);

    // events[0] reduced the side that was larger on entry.
    let a_was_larger = batch.events[0].d_new == 1;
    let (h, l) = if a_was_larger { (a, b) } else { (b, a) };

    let (x, y) = if m.sign_pattern == 0 {
        (
            sub_products(h, m.u00, l, m.u01),
            sub_products(l, m.u11, h, m.u10),
        )
    } else {
        (
            sub_products(l, m.u01, h, m.u00),
            sub_products(h, m.u10, l, m.u11),
        )
    };

    // x holds the entry-larger side's identity after an even number of
    // reductions, the other side's after an odd number.
    let (h2, l2) = if batch.events.len() % 2 == 0 {
        (x, y)
    } else {
        (y, x)
    };
    let (a2, b2) = if a_was_larger { (h2, l2) } else { (l2, h2) };
    // max(a, b) strictly decreases except for the terminal a = b step,
    // which zeroes one side.
    debug_assert!(
        a2.is_zero() || b2.is_zero() || a2.clone().max(b2.clone()) < a.clone().max(b.clone())
    );
    (a2, b2)
}

/// `cu*u - cv*v`; the minuend must dominate for any batch that satisfies
/// its window precondition.
fn sub_products<W: Word>(u: &Nat<W>, cu: W, v: &Nat<W>, cv: W) -> Nat<W> {
    u.mul_word(cu)
        .checked_sub(&v.mul_word(cv))
        .expect("reduction matrix produced a negative value")
}

/// Performs one engine step under the given policy: a single reduction for
/// `Unit`/`Euclid`, a window batch (or a full-precision fallback step) for
/// `Lehmer`. Returns the reduced pair and the emitted events in order.
pub fn reduce_once<W: Word>(
    policy: QuotientPolicy,
    a: &Nat<W>,
    b: &Nat<W>,
) -> Result<(Nat<W>, Nat<W>, Vec<ReductionEvent>), Error> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    match policy {
        QuotientPolicy::Unit => {
            let (a2, b2, ev) = step_unit(a, b)?;
            Ok((a2, b2, vec![ev]))
        }
        QuotientPolicy::Euclid => {
            let (a2, b2, ev) = step_euclid(a, b)?;
            Ok((a2, b2, vec![ev]))
        }
        QuotientPolicy::Lehmer => {
            let a_ge_b = a >= b;
            let (h, l) = if a_ge_b { (a, b) } else { (b, a) };
            let (ah, bh, exact) = h.top_window(l);
            if let Some(batch) = lehmer_window::<W>(ah, bh, exact, a_ge_b as u8) {
                let (a2, b2) = apply_batch(a, b, &batch);
                return Ok((a2, b2, batch.events));
            }
            let (a2, b2, ev) = step_euclid(a, b)?;
            Ok((a2, b2, vec![ev]))
        }
    }
}
