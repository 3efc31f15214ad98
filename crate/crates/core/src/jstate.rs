//! Constant-size sign tracking for the Jacobi symbol.
//!
//! A left-to-right GCD run is a sequence of reductions `a <- a - m*b` or
//! `b <- b - m*a`. The Jacobi sign through such a run is fully determined
//! by four small residues, updated once per reduction:
//!
//! * `e`: sign exponent, the running sign is `(-1)^e`,
//! * `alpha = a mod 4`, `beta = b mod 4`,
//! * `d`: which side the most recent reduction subtracted from
//!   (1 when `b` was subtracted from `a`).
//!
//! The transition depends on nine bits (6-bit state, side bit, multiplier
//! mod 4) and produces six bits, so it can be driven either by the update
//! function itself, by a 512-entry table over the packed 9-bit index, or
//! by a 208-entry table over a compact 26-value state encoding.

use std::sync::LazyLock;

use crate::error::Error;

/// Tri-valued symbol result.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
#[repr(i8)]
pub enum Symbol {
    MinusOne = -1,
    Zero = 0,
    One = 1,
}

impl Symbol {
    pub fn to_i8(self) -> i8 {
        self as i8
    }

    pub fn from_i8(v: i8) -> Option<Self> {
        match v {
            -1 => Some(Symbol::MinusOne),
            0 => Some(Symbol::Zero),
            1 => Some(Symbol::One),
            _ => None,
        }
    }
}

impl std::ops::Neg for Symbol {
    type Output = Symbol;

    fn neg(self) -> Symbol {
        match self {
            Symbol::MinusOne => Symbol::One,
            Symbol::Zero => Symbol::Zero,
            Symbol::One => Symbol::MinusOne,
        }
    }
}

impl std::ops::Mul for Symbol {
    type Output = Symbol;

    fn mul(self, rhs: Symbol) -> Symbol {
        Symbol::from_i8(self.to_i8() * rhs.to_i8()).unwrap()
    }
}

impl std::fmt::Display for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_i8())
    }
}

/// One reduction step as seen by the sign tracker: which side was reduced
/// (`d_new = 1` when `b` was subtracted from `a`) and the multiplier mod 4.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct ReductionEvent {
    pub d_new: u8,
    pub m4: u8,
}

impl ReductionEvent {
    pub fn new(d_new: u8, m4: u8) -> Self {
        debug_assert!(d_new <= 1 && m4 <= 3);
        ReductionEvent { d_new, m4 }
    }
}

/// The sign-tracking state `(e, alpha, beta, d)`.
///
/// Valid states have at least one of `alpha`, `beta` odd; both-even states
/// never occur when `b` starts odd, because gcd(a, b) stays odd.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct JacobiState {
    e: u8,
    alpha: u8,
    beta: u8,
    d: u8,
}

impl JacobiState {
    /// Starting state for inputs with `a mod 4 = a4` and `b mod 4 = b4`:
    /// `(0, a4, b4, 1)`. The denominator must be odd.
    pub fn init(a4: u8, b4: u8) -> Result<Self, Error> {
        let (a4, b4) = (a4 & 3, b4 & 3);
        if b4 & 1 == 0 {
            return Err(Error::EvenDenominator);
        }
        Ok(JacobiState {
            e: 0,
            alpha: a4,
            beta: b4,
            d: 1,
        })
    }

    pub fn sign_exponent(&self) -> u8 {
        self.e
    }

    pub fn alpha(&self) -> u8 {
        self.alpha
    }

    pub fn beta(&self) -> u8 {
        self.beta
    }

    pub fn denominator_index(&self) -> u8 {
        self.d
    }

    pub fn is_valid(&self) -> bool {
        self.alpha & 1 == 1 || self.beta & 1 == 1
    }

    /// Applies one reduction event.
    ///
    /// When the reduced side changes and both residues are odd, reciprocity
    /// contributes `(alpha-1)(beta-1)/4` to the exponent. A reduction of the
    /// side whose counterpart residue is 2 contributes
    /// `m*(r-1)/2 + m*(m-1)/2` where `r` is the reduced side's residue.
    /// Exponent arithmetic is mod 2, residue arithmetic mod 4; intermediate
    /// values are computed in signed integers so negative residues reduce
    /// correctly.
    pub fn update(self, d_new: u8, m4: u8) -> JacobiState {
        debug_assert!(d_new <= 1 && m4 <= 3);
        debug_assert!(self.is_valid());
        let m = m4 as i32;
        let mut e = self.e as i32;
        let mut alpha = self.alpha as i32;
        let mut beta = self.beta as i32;

        if self.d != d_new && alpha & 1 == 1 && beta & 1 == 1 {
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
        JacobiState {
            e: (e & 1) as u8,
            alpha: alpha as u8,
            beta: beta as u8,
            d: d_new,
        }
    }

    /// Final symbol once one side of the reduction has reached zero:
    /// 0 unless the surviving value is 1, else `(-1)^e`.
    pub fn finish(&self, survivor_is_one: bool) -> Symbol {
        finish_from_exponent(self.e, survivor_is_one)
    }

    /// Packs to 6 bits: `(e:1)(alpha:2)(beta:2)(d:1)`, most significant first.
    pub fn pack(self) -> u8 {
        self.e << 5 | self.alpha << 3 | self.beta << 1 | self.d
    }

    /// Unpacks 6 bits; does not require validity.
    pub fn unpack(bits: u8) -> JacobiState {
        debug_assert!(bits < 64);
        JacobiState {
            e: bits >> 5 & 1,
            alpha: bits >> 3 & 3,
            beta: bits >> 1 & 3,
            d: bits & 1,
        }
    }

    /// All 48 valid states.
    pub fn enumerate_valid() -> impl Iterator<Item = JacobiState> {
        (0..64u8).map(JacobiState::unpack).filter(|s| s.is_valid())
    }

    /// Construction from raw residues, for exhaustive tests.
    pub fn from_parts(e: u8, alpha: u8, beta: u8, d: u8) -> JacobiState {
        debug_assert!(e <= 1 && alpha <= 3 && beta <= 3 && d <= 1);
        JacobiState { e, alpha, beta, d }
    }
}

pub(crate) fn finish_from_exponent(e: u8, survivor_is_one: bool) -> Symbol {
    if !survivor_is_one {
        Symbol::Zero
    } else if e & 1 == 0 {
        Symbol::One
    } else {
        Symbol::MinusOne
    }
}

pub const FULL_TABLE_LEN: usize = 512;
pub const COMPACT_TABLE_LEN: usize = 208;

/// Index into the full table: `(state:6)(d_new:1)(m4:2)`.
pub fn full_index(state_bits: u8, d_new: u8, m4: u8) -> usize {
    debug_assert!(state_bits < 64 && d_new <= 1 && m4 <= 3);
    (state_bits as usize) << 3 | (d_new as usize) << 2 | m4 as usize
}

/// The 512-entry transition table over packed states. Entries for invalid
/// states (both residues even) hold the input state bits as a sentinel;
/// they are unreachable from valid runs.
pub fn full_table() -> &'static [u8; FULL_TABLE_LEN] {
    static TABLE: LazyLock<[u8; FULL_TABLE_LEN]> = LazyLock::new(|| {
        let mut t = [0u8; FULL_TABLE_LEN];
        for (idx, entry) in t.iter_mut().enumerate() {
            let state_bits = (idx >> 3) as u8;
            let d_new = (idx >> 2 & 1) as u8;
            let m4 = (idx & 3) as u8;
            let s = JacobiState::unpack(state_bits);
            *entry = if s.is_valid() {
                s.update(d_new, m4).pack()
            } else {
                state_bits
            };
        }
        t
    });
    &TABLE
}

// The 12 valid (alpha, beta) pairs in ascending (alpha*4 + beta) order;
// (3, 3) is last because it alone needs the d bit.
const VALID_PAIRS: [(u8, u8); 12] = [
    (0, 1),
    (0, 3),
    (1, 0),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 1),
    (2, 3),
    (3, 0),
    (3, 1),
    (3, 2),
    (3, 3),
];

/// Compact state code in `[0, 26)`.
///
/// `d` only influences future updates through the reciprocity term
/// `(alpha-1)(beta-1)/4`, which is nonzero only when `alpha = beta = 3`,
/// so it is folded away for every other residue pair: 11 d-free pairs
/// plus two codes for `(3, 3)`, times two values of `e`.
pub fn encode_compact(s: JacobiState) -> Result<u8, Error> {
    if !s.is_valid() {
        return Err(Error::InvalidState);
    }
    let pair = (s.alpha, s.beta);
    let rank = VALID_PAIRS.iter().position(|&p| p == pair).unwrap() as u8;
    let code = if pair == (3, 3) { 11 + s.d } else { rank };
    Ok(s.e * 13 + code)
}

/// Inverse of [`encode_compact`]; `d` is reconstructed canonically (1)
/// where it was folded away.
pub fn decode_compact(code: u8) -> JacobiState {
    debug_assert!(code < 26);
    let e = code / 13;
    let c = code % 13;
    let (alpha, beta, d) = if c >= 11 {
        (3, 3, c - 11)
    } else {
        let (a, b) = VALID_PAIRS[c as usize];
        (a, b, 1)
    };
    JacobiState { e, alpha, beta, d }
}

/// States that encode equally are behaviorally identical: equal residues
/// and exponent, and equal `d` whenever `alpha = beta = 3`.
pub fn states_equivalent(x: JacobiState, y: JacobiState) -> bool {
    x.e == y.e
        && x.alpha == y.alpha
        && x.beta == y.beta
        && (x.d == y.d || !(x.alpha == 3 && x.beta == 3))
}

/// Index into the compact table: `code * 8 + (d_new:1)(m4:2)`.
pub fn compact_index(code: u8, d_new: u8, m4: u8) -> usize {
    debug_assert!(code < 26 && d_new <= 1 && m4 <= 3);
    (code as usize) * 8 + ((d_new as usize) << 2 | m4 as usize)
}

/// The 208-entry transition table over compact codes.
pub fn compact_table() -> &'static [u8; COMPACT_TABLE_LEN] {
    static TABLE: LazyLock<[u8; COMPACT_TABLE_LEN]> = LazyLock::new(|| {
        let mut t = [0u8; COMPACT_TABLE_LEN];
        for code in 0..26u8 {
            let s = decode_compact(code);
            for ev in 0..8u8 {
                let d_new = ev >> 2;
                let m4 = ev & 3;
                let next = s.update(d_new, m4);
                t[code as usize * 8 + ev as usize] = encode_compact(next).unwrap();
            }
        }
        t
    });
    &TABLE
}
