//! Minimal arbitrary-precision unsigned integers.
//!
//! Only the primitives the reduction engine needs: comparison, division,
//! `a - m*b`, low-bit residues and top-window extraction. Values are limb
//! vectors, least significant first; the canonical zero is the empty
//! vector and every constructor and operation returns normalized values.

use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_traits::One;
use rand::RngCore;

use crate::error::Error;
use crate::word::{NativeWord, Word};

/// Arbitrary-precision unsigned integer over limbs of type `W`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Nat<W: Word = NativeWord> {
    limbs: Vec<W>,
}

impl<W: Word> Nat<W> {
    pub fn zero() -> Self {
        Nat { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Nat {
            limbs: vec![W::one()],
        }
    }

    pub fn from_word(w: W) -> Self {
        let mut n = Nat { limbs: vec![w] };
        n.normalize();
        n
    }

    fn from_limbs(limbs: Vec<W>) -> Self {
        let mut n = Nat { limbs };
        n.normalize();
        n
    }

    fn normalize(&mut self) {
        while self.limbs.last().is_some_and(|l| l.is_zero()) {
            self.limbs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == W::one()
    }

    pub fn is_odd(&self) -> bool {
        self.limbs.first().is_some_and(|l| (*l & W::one()) == W::one())
    }

    fn limb(&self, i: usize) -> W {
        self.limbs.get(i).copied().unwrap_or_else(W::zero)
    }

    /// Number of significant bits; 0 for the value zero.
    pub fn bitlen(&self) -> u64 {
        match self.limbs.last() {
            None => 0,
            Some(top) => {
                (self.limbs.len() as u64) * W::BITS as u64 - top.leading_zeros() as u64
            }
        }
    }

    /// Value mod 4.
    pub fn low2(&self) -> u8 {
        (self.limb(0) & W::from_u8(3)).to_u8().unwrap()
    }

    /// Value mod 8.
    pub fn low3(&self) -> u8 {
        (self.limb(0) & W::from_u8(7)).to_u8().unwrap()
    }

    /// Number of trailing zero bits; 0 for the value zero.
    pub fn trailing_zeros(&self) -> u64 {
        for (i, l) in self.limbs.iter().enumerate() {
            if !l.is_zero() {
                return (i as u64) * W::BITS as u64 + l.trailing_zeros() as u64;
            }
        }
        0
    }

    pub fn to_u64(&self) -> Option<u64> {
        if self.bitlen() > 64 {
            return None;
        }
        let mut v = 0u64;
        for (i, l) in self.limbs.iter().enumerate() {
            v |= l.to_u64().unwrap() << (i as u32 * W::BITS);
        }
        Some(v)
    }

    pub fn to_u128(&self) -> Option<u128> {
        if self.bitlen() > 128 {
            return None;
        }
        let mut v = 0u128;
        for (i, l) in self.limbs.iter().enumerate() {
            v |= (l.to_u64().unwrap() as u128) << (i as u32 * W::BITS);
        }
        Some(v)
    }

    /// `self * m + add`, in place.
    fn mul_word_add(&mut self, m: W, add: W) {
        let mut carry = add;
        for l in self.limbs.iter_mut() {
            let t = l.wide() * m.wide() + carry.wide();
            *l = W::from_wide_lo(t);
            carry = W::from_wide_hi(t);
        }
        if !carry.is_zero() {
            self.limbs.push(carry);
        }
        self.normalize();
    }

    pub fn mul_word(&self, m: W) -> Self {
        let mut out = self.clone();
        out.mul_word_add(m, W::zero());
        out
    }

    /// Schoolbook product.
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Nat::zero();
        }
        let (a, b) = (&self.limbs, &rhs.limbs);
        let mut out = vec![W::zero(); a.len() + b.len()];
        for (i, &ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut carry = W::zero();
            for (j, &bj) in b.iter().enumerate() {
                let t = ai.wide() * bj.wide() + out[i + j].wide() + carry.wide();
                out[i + j] = W::from_wide_lo(t);
                carry = W::from_wide_hi(t);
            }
            out[i + b.len()] = carry;
        }
        Nat::from_limbs(out)
    }

    /// `self - rhs`, or `None` on underflow.
    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        if *self < *rhs {
            return None;
        }
        let mut out = self.limbs.clone();
        let mut borrow = false;
        for (i, o) in out.iter_mut().enumerate() {
            let r = rhs.limb(i);
            let (d1, b1) = sub_borrow(*o, r);
            let (d2, b2) = if borrow {
                sub_borrow(d1, W::one())
            } else {
                (d1, false)
            };
            *o = d2;
            borrow = b1 || b2;
        }
        debug_assert!(!borrow);
        Some(Nat::from_limbs(out))
    }

    /// `self - m * b`; errors when `m * b > self`.
    pub fn submul(&self, m: &Self, b: &Self) -> Result<Self, Error> {
        let prod = m.mul(b);
        self.checked_sub(&prod).ok_or(Error::Underflow)
    }

    /// Single-reduction step `self - m * b` with a word multiplier.
    pub fn submul_word(&self, m: W, b: &Self) -> Result<Self, Error> {
        self.checked_sub(&b.mul_word(m)).ok_or(Error::Underflow)
    }

    /// Floor division: returns `(q, r)` with `self = q*d + r`, `0 <= r < d`.
    pub fn divmod(&self, d: &Self) -> Result<(Self, Self), Error> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.cmp(d) {
            Ordering::Less => return Ok((Nat::zero(), self.clone())),
            Ordering::Equal => return Ok((Nat::one(), Nat::zero())),
            Ordering::Greater => {}
        }
        if d.limbs.len() == 1 {
            let (q, r) = self.div_rem_word(d.limbs[0]);
            return Ok((q, Nat::from_word(r)));
        }
        Ok(self.divmod_knuth(d))
    }

    /// Divide by a single nonzero word.
    fn div_rem_word(&self, d: W) -> (Self, W) {
        debug_assert!(!d.is_zero());
        let mut q = vec![W::zero(); self.limbs.len()];
        let mut r = W::zero();
        for i in (0..self.limbs.len()).rev() {
            let cur = W::wide_from_halves(self.limbs[i], r);
            q[i] = W::from_wide_lo(cur / d.wide());
            r = W::from_wide_lo(cur % d.wide());
        }
        (Nat::from_limbs(q), r)
    }

    /// Knuth long division; requires `d` with at least two limbs and `self > d`.
    fn divmod_knuth(&self, d: &Self) -> (Self, Self) {
        let n = d.limbs.len();
        let m = self.limbs.len() - n;
        let shift = d.limbs[n - 1].leading_zeros();

        // Normalized divisor: top bit set, same limb count.
        let v = shl_limbs(&d.limbs, shift, false);
        // Dividend gains one limb so u[j + n] is always addressable.
        let mut u = shl_limbs(&self.limbs, shift, true);

        let b_top = v[n - 1];
        let b_second = v[n - 2];
        let base = W::Wide::one() << W::BITS as usize;

        let mut q_limbs = vec![W::zero(); m + 1];
        for j in (0..=m).rev() {
            let num = W::wide_from_halves(u[j + n - 1], u[j + n]);
            let mut qhat = num / b_top.wide();
            let mut rhat = num % b_top.wide();
            // Two-limb refinement; runs at most twice.
            while qhat >= base
                || qhat * b_second.wide() > (rhat << W::BITS as usize) | u[j + n - 2].wide()
            {
                qhat = qhat - W::Wide::one();
                rhat = rhat + b_top.wide();
                if rhat >= base {
                    break;
                }
            }
            let mut qw = W::from_wide_lo(qhat);
            let borrow = submul_row(&mut u[j..j + n], &v, qw);
            let top = u[j + n];
            u[j + n] = top.wrapping_sub(&borrow);
            if top < borrow {
                // qhat was one too large; add the divisor back.
                qw = qw - W::one();
                let carry = add_row(&mut u[j..j + n], &v);
                u[j + n] = u[j + n].wrapping_add(&carry);
            }
            q_limbs[j] = qw;
        }

        u.truncate(n);
        let r = shr_limbs(&u, shift);
        (Nat::from_limbs(q_limbs), Nat::from_limbs(r))
    }

    /// `self << k`.
    pub fn shl_bits(&self, k: u64) -> Self {
        if self.is_zero() {
            return Nat::zero();
        }
        let limb_shift = (k / W::BITS as u64) as usize;
        let bit_shift = (k % W::BITS as u64) as u32;
        let mut limbs = vec![W::zero(); limb_shift];
        limbs.extend(shl_limbs(&self.limbs, bit_shift, true));
        Nat::from_limbs(limbs)
    }

    /// `self >> k`.
    pub fn shr_bits(&self, k: u64) -> Self {
        let limb_shift = (k / W::BITS as u64) as usize;
        if limb_shift >= self.limbs.len() {
            return Nat::zero();
        }
        let bit_shift = (k % W::BITS as u64) as u32;
        Nat::from_limbs(shr_limbs(&self.limbs[limb_shift..], bit_shift))
    }

    /// Low two limbs as a double word; requires `bitlen() <= 2 * W::BITS`.
    fn to_wide(&self) -> W::Wide {
        debug_assert!(self.bitlen() <= 2 * W::BITS as u64);
        W::wide_from_halves(self.limb(0), self.limb(1))
    }

    /// Bits `[shift, shift + 2*W::BITS)` of the value as a double word.
    fn extract_wide(&self, shift: u64) -> W::Wide {
        let limb = (shift / W::BITS as u64) as usize;
        let bit = (shift % W::BITS as u64) as u32;
        let (w0, w1, w2) = (self.limb(limb), self.limb(limb + 1), self.limb(limb + 2));
        if bit == 0 {
            return W::wide_from_halves(w0, w1);
        }
        let up = W::BITS - bit;
        let lo = (w0 >> bit as usize) | (w1 << up as usize);
        let hi = (w1 >> bit as usize) | (w2 << up as usize);
        W::wide_from_halves(lo, hi)
    }

    /// Top double-word windows of `self` and `b`, both truncated at the same
    /// bit offset (taken from `self`'s bit length). `exact` is true when
    /// nothing was truncated, in which case the windows are the full values.
    ///
    /// Requires `self >= b > 0`.
    pub fn top_window(&self, b: &Self) -> (W::Wide, W::Wide, bool) {
        debug_assert!(!b.is_zero() && *self >= *b);
        let window = 2 * W::BITS as u64;
        let len = self.bitlen();
        if len <= window {
            (self.to_wide(), b.to_wide(), true)
        } else {
            let shift = len - window;
            (self.extract_wide(shift), b.extract_wide(shift), false)
        }
    }

    /// Uniform value in `[0, 2^bits)`.
    pub fn random_below<R: RngCore + ?Sized>(rng: &mut R, bits: u64) -> Self {
        Nat::from_limbs(random_limbs::<W, R>(rng, bits))
    }

    /// Random value with exactly `bits` bits (top bit set); `bits >= 1`.
    pub fn random_with_top_bit<R: RngCore + ?Sized>(rng: &mut R, bits: u64) -> Self {
        assert!(bits >= 1);
        let mut limbs = random_limbs::<W, R>(rng, bits);
        let top = ((bits - 1) / W::BITS as u64) as usize;
        if limbs.len() <= top {
            limbs.resize(top + 1, W::zero());
        }
        limbs[top] = limbs[top] | (W::one() << ((bits - 1) % W::BITS as u64) as usize);
        Nat::from_limbs(limbs)
    }

    /// Random odd value with exactly `bits` bits.
    pub fn random_odd<R: RngCore + ?Sized>(rng: &mut R, bits: u64) -> Self {
        let mut n = Self::random_with_top_bit(rng, bits);
        n.limbs[0] = n.limbs[0] | W::one();
        n
    }

    /// Parses decimal or `0x`-prefixed hexadecimal text.
    pub fn parse(text: &str) -> Result<Self, Error> {
        if text.is_empty() {
            return Err(Error::EmptyLiteral);
        }
        if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
            if hex.is_empty() {
                return Err(Error::EmptyLiteral);
            }
            let mut out = Nat::zero();
            for (i, ch) in hex.chars().enumerate() {
                let digit = ch
                    .to_digit(16)
                    .ok_or(Error::InvalidDigit { pos: i + 2, ch })?;
                out.mul_word_add(W::from_u8(16), W::from_u8(digit as u8));
            }
            return Ok(out);
        }
        // Decimal, consumed in word-sized chunks.
        let chunk_digits = max_pow10_digits::<W>();
        let chunk_pow = pow10::<W>(chunk_digits);
        let mut out = Nat::zero();
        let mut chunk = W::zero();
        let mut in_chunk = 0u32;
        for (i, ch) in text.chars().enumerate() {
            let digit = ch.to_digit(10).ok_or(Error::InvalidDigit { pos: i, ch })?;
            chunk = chunk * W::from_u8(10) + W::from_u8(digit as u8);
            in_chunk += 1;
            if in_chunk == chunk_digits {
                out.mul_word_add(chunk_pow, chunk);
                chunk = W::zero();
                in_chunk = 0;
            }
        }
        if in_chunk > 0 {
            out.mul_word_add(pow10::<W>(in_chunk), chunk);
        }
        Ok(out)
    }
}

/// Largest `k` with `10^k` representable in `W`.
fn max_pow10_digits<W: Word>() -> u32 {
    let mut k = 0;
    let mut v = W::one();
    let ten = W::from_u8(10);
    while let Some(next) = v.checked_mul(&ten) {
        v = next;
        k += 1;
    }
    k
}

fn pow10<W: Word>(k: u32) -> W {
    let mut v = W::one();
    for _ in 0..k {
        v = v * W::from_u8(10);
    }
    v
}

fn random_limbs<W: Word, R: RngCore + ?Sized>(rng: &mut R, bits: u64) -> Vec<W> {
    if bits == 0 {
        return Vec::new();
    }
    let n = bits.div_ceil(W::BITS as u64) as usize;
    let mut limbs: Vec<W> = (0..n).map(|_| W::truncate_u64(rng.next_u64())).collect();
    let rem = (bits % W::BITS as u64) as u32;
    if rem != 0 {
        let mask = (W::one() << rem as usize) - W::one();
        limbs[n - 1] = limbs[n - 1] & mask;
    }
    limbs
}

#[inline]
fn sub_borrow<W: Word>(a: W, b: W) -> (W, bool) {
    (a.wrapping_sub(&b), a < b)
}

/// `u -= q * v` over equally long rows; returns the final borrow word.
fn submul_row<W: Word>(u: &mut [W], v: &[W], q: W) -> W {
    debug_assert_eq!(u.len(), v.len());
    let mut borrow = W::zero();
    for (ui, &vi) in u.iter_mut().zip(v.iter()) {
        let p = q.wide() * vi.wide() + borrow.wide();
        let plo = W::from_wide_lo(p);
        borrow = W::from_wide_hi(p);
        let (d, under) = sub_borrow(*ui, plo);
        *ui = d;
        if under {
            borrow = borrow + W::one();
        }
    }
    borrow
}

/// `u += v` over equally long rows; returns the carry word.
fn add_row<W: Word>(u: &mut [W], v: &[W]) -> W {
    debug_assert_eq!(u.len(), v.len());
    let mut carry = W::zero();
    for (ui, &vi) in u.iter_mut().zip(v.iter()) {
        let t = ui.wide() + vi.wide() + carry.wide();
        *ui = W::from_wide_lo(t);
        carry = W::from_wide_hi(t);
    }
    carry
}

/// Shift limbs left by `shift < W::BITS` bits. With `extend`, a final carry
/// limb is always appended.
fn shl_limbs<W: Word>(limbs: &[W], shift: u32, extend: bool) -> Vec<W> {
    debug_assert!(shift < W::BITS);
    let mut out;
    if shift == 0 {
        out = limbs.to_vec();
        if extend {
            out.push(W::zero());
        }
        return out;
    }
    let down = W::BITS - shift;
    out = Vec::with_capacity(limbs.len() + 1);
    let mut prev = W::zero();
    for &l in limbs {
        out.push((l << shift as usize) | (prev >> down as usize));
        prev = l;
    }
    if extend {
        out.push(prev >> down as usize);
    }
    out
}

/// Shift limbs right by `shift < W::BITS` bits.
fn shr_limbs<W: Word>(limbs: &[W], shift: u32) -> Vec<W> {
    debug_assert!(shift < W::BITS);
    if shift == 0 {
        return limbs.to_vec();
    }
    let up = W::BITS - shift;
    let mut out = Vec::with_capacity(limbs.len());
    for i in 0..limbs.len() {
        let hi = limbs.get(i + 1).copied().unwrap_or_else(W::zero);
        out.push((limbs[i] >> shift as usize) | (hi << up as usize));
    }
    out
}

impl<W: Word> Ord for Nat<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.limbs.len().cmp(&other.limbs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.limbs.len()).rev() {
            match self.limbs[i].cmp(&other.limbs[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl<W: Word> PartialOrd for Nat<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Word> From<u64> for Nat<W> {
    fn from(mut v: u64) -> Self {
        let mut limbs = Vec::new();
        while v != 0 {
            limbs.push(W::truncate_u64(v));
            v = if W::BITS >= 64 { 0 } else { v >> W::BITS };
        }
        Nat::from_limbs(limbs)
    }
}

impl<W: Word> From<u32> for Nat<W> {
    fn from(v: u32) -> Self {
        Nat::from(v as u64)
    }
}

impl<W: Word> FromStr for Nat<W> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Nat::parse(s)
    }
}

impl<W: Word> fmt::Display for Nat<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let chunk_digits = max_pow10_digits::<W>();
        let chunk_pow = pow10::<W>(chunk_digits);
        let mut chunks = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur.div_rem_word(chunk_pow);
            chunks.push(r);
            cur = q;
        }
        let mut s = String::new();
        for (i, c) in chunks.iter().rev().enumerate() {
            if i == 0 {
                s.push_str(&format!("{c}"));
            } else {
                s.push_str(&format!("{c:0width$}", width = chunk_digits as usize));
            }
        }
        f.write_str(&s)
    }
}

impl<W: Word> fmt::LowerHex for Nat<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let width = (W::BITS / 4) as usize;
        for (i, l) in self.limbs.iter().rev().enumerate() {
            if i == 0 {
                write!(f, "{l:x}")?;
            } else {
                write!(f, "{l:0width$x}")?;
            }
        }
        Ok(())
    }
}

impl<W: Word> fmt::Debug for Nat<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nat(0x{self:x})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type N = Nat<u64>;

    fn n(s: &str) -> N {
        N::parse(s).unwrap()
    }

    /// 2^k + c, for small offsets used in edge cases.
    fn pow2_plus(k: u64, c: u64) -> N {
        let mut v = N::one().shl_bits(k);
        v.mul_word_add(1, c);
        v
    }

    #[test]
    fn parse_basics() {
        assert!(n("0").is_zero());
        assert_eq!(n("0xff"), N::from(255u64));
        assert_eq!(n("45"), N::from(45u64));
        assert_eq!(n("0x0"), N::zero());
        assert_eq!(n("18446744073709551617"), pow2_plus(64, 1));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(N::parse(""), Err(Error::EmptyLiteral));
        assert_eq!(N::parse("0x"), Err(Error::EmptyLiteral));
        assert_eq!(
            N::parse("12a4"),
            Err(Error::InvalidDigit { pos: 2, ch: 'a' })
        );
        assert_eq!(
            N::parse("0x12g"),
            Err(Error::InvalidDigit { pos: 4, ch: 'g' })
        );
    }

    #[test]
    fn cmp_cases() {
        assert_eq!(N::from(5u64).cmp(&N::from(5u64)), Ordering::Equal);
        assert_eq!(N::from(4u64).cmp(&N::from(5u64)), Ordering::Less);
        let p128 = N::one().shl_bits(128);
        let p128m1 = p128.checked_sub(&N::one()).unwrap();
        assert_eq!(p128.cmp(&p128m1), Ordering::Greater);
    }

    #[test]
    fn submul_cases() {
        assert_eq!(
            N::from(7u64).submul(&N::from(2u64), &N::from(3u64)).unwrap(),
            N::one()
        );
        let a = n("123456789123456789");
        assert!(a.submul(&N::one(), &a).unwrap().is_zero());
        let big = n("10000000000000000000000000000000000000000"); // 10^40
        let half = n("100000000000000000000"); // 10^20
        assert!(big.submul(&half, &half).unwrap().is_zero());
        assert_eq!(
            N::from(7u64).submul(&N::from(3u64), &N::from(3u64)),
            Err(Error::Underflow)
        );
    }

    #[test]
    fn divmod_cases() {
        let (q, r) = N::from(7u64).divmod(&N::from(3u64)).unwrap();
        assert_eq!((q, r), (N::from(2u64), N::from(1u64)));
        let (q, r) = N::from(3u64).divmod(&N::from(7u64)).unwrap();
        assert_eq!((q, r), (N::zero(), N::from(3u64)));
        assert_eq!(N::one().divmod(&N::zero()), Err(Error::DivisionByZero));

        // (2^200 - 1) / (2^64 + 1): verify q*b + r = a and r < b.
        let a = N::one().shl_bits(200).checked_sub(&N::one()).unwrap();
        let b = pow2_plus(64, 1);
        let (q, r) = a.divmod(&b).unwrap();
        assert!(r < b);
        assert_eq!(a.checked_sub(&q.mul(&b)).unwrap(), r);
    }

    #[test]
    fn low_bits_and_bitlen() {
        assert_eq!(N::zero().low2(), 0);
        assert_eq!(N::from(7u64).low2(), 3);
        assert_eq!(pow2_plus(65, 2).low2(), 2);
        assert_eq!(N::zero().bitlen(), 0);
        assert_eq!(N::one().bitlen(), 1);
        assert_eq!(N::one().shl_bits(64).bitlen(), 65);
    }

    #[test]
    fn top_window_cases() {
        let (ah, bh, exact) = N::from(7u64).top_window(&N::from(5u64));
        assert_eq!((ah, bh, exact), (7u128, 5u128, true));

        let a = N::one().shl_bits(200);
        let b = N::one().shl_bits(199);
        let (ah, bh, exact) = a.top_window(&b);
        assert_eq!(ah, 1u128 << 127);
        assert_eq!(bh, 1u128 << 126);
        assert!(!exact);

        let c = pow2_plus(300, 1);
        let (ah, bh, exact) = c.top_window(&c);
        assert_eq!(ah, bh);
        assert!(!exact);
    }

    #[test]
    fn top_window_against_shift_oracle() {
        // Window extraction must agree with plain shifts.
        let mut x = N::parse("0x1f2e3d4c5b6a79880f1e2d3c4b5a6978").unwrap();
        x = x.mul(&N::parse("0xdeadbeefcafebabe1234").unwrap());
        let y = x.shr_bits(13);
        let (ah, bh, exact) = x.top_window(&y);
        assert!(!exact || x.bitlen() <= 128);
        let shift = x.bitlen() - 128;
        let want_a = x.shr_bits(shift).to_wide();
        let want_b = y.shr_bits(shift).to_wide();
        assert_eq!(ah, want_a);
        assert_eq!(bh, want_b);
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "1", "45", "999999999999999999999999999999999997"] {
            assert_eq!(Nat::<u64>::parse(s).unwrap().to_string(), s);
            assert_eq!(Nat::<u32>::parse(s).unwrap().to_string(), s);
        }
    }

    /// Structured limb patterns around the word boundaries; includes the
    /// divisor shapes (e.g. 2^(4w) / (2^(2w) + 1)) that force the rare
    /// quotient-overestimate correction in long division.
    fn division_edge_family<W: Word>() {
        let vals: Vec<W> = vec![
            W::zero(),
            W::one(),
            W::max_value(),
            W::max_value() - W::one(),
            W::one() << (W::BITS - 1) as usize,
        ];
        let mut dividends = Vec::new();
        for &u0 in &vals {
            for &u1 in &vals {
                for &u2 in &vals {
                    for &u3 in &vals {
                        for &u4 in &vals {
                            dividends.push(Nat::from_limbs(vec![u0, u1, u2, u3, u4]));
                        }
                    }
                }
            }
        }
        let mut divisors = Vec::new();
        for &v0 in &vals {
            for &v1 in &vals {
                for &v2 in &vals[1..] {
                    divisors.push(Nat::from_limbs(vec![v0, v1, v2]));
                }
            }
        }
        for a in &dividends {
            for b in &divisors {
                let (q, r) = a.divmod(b).unwrap();
                assert!(r < *b, "r < b for {a:?} / {b:?}");
                assert_eq!(
                    &q.mul(b).add_for_tests(&r),
                    a,
                    "q*b + r = a for {a:?} / {b:?}"
                );
            }
        }
    }

    impl<W: Word> Nat<W> {
        /// Test-only addition via the row helper.
        fn add_for_tests(&self, rhs: &Self) -> Self {
            let mut limbs = self.limbs.clone();
            limbs.resize(self.limbs.len().max(rhs.limbs.len()) + 1, W::zero());
            let mut rl = rhs.limbs.clone();
            rl.resize(limbs.len(), W::zero());
            let carry = add_row(&mut limbs, &rl);
            debug_assert!(carry.is_zero());
            Nat::from_limbs(limbs)
        }
    }

    #[test]
    fn division_edge_family_u32() {
        division_edge_family::<u32>();
    }

    #[test]
    fn division_edge_family_u64() {
        division_edge_family::<u64>();
    }

    #[test]
    fn u32_limbs_agree_with_u64() {
        let a32 = Nat::<u32>::parse("340282366920938463463374607431768211455").unwrap();
        let a64 = Nat::<u64>::parse("340282366920938463463374607431768211455").unwrap();
        assert_eq!(a32.bitlen(), a64.bitlen());
        assert_eq!(a32.to_string(), a64.to_string());
        let (q32, r32) = a32.divmod(&Nat::<u32>::from(977u64)).unwrap();
        let (q64, r64) = a64.divmod(&Nat::<u64>::from(977u64)).unwrap();
        assert_eq!(q32.to_string(), q64.to_string());
        assert_eq!(r32.to_string(), r64.to_string());
    }
}
