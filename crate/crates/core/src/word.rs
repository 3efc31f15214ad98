//! Machine-word (limb) abstraction.
//!
//! All multiprecision code is generic over the limb type so the same
//! algorithms run with 32-bit and 64-bit words. `NativeWord` picks the
//! platform word and is the default everywhere.

use core::fmt;

use num_traits::{PrimInt, Unsigned, WrappingAdd, WrappingMul, WrappingSub};

/// An unsigned machine word usable as a limb.
///
/// `Wide` must hold a full double-word value, so a `Word` product plus a
/// carry never overflows it.
pub trait Word:
    PrimInt
    + Unsigned
    + WrappingAdd
    + WrappingSub
    + WrappingMul
    + From<u8>
    + fmt::Debug
    + fmt::Display
    + fmt::LowerHex
    + Send
    + Sync
    + 'static
{
    /// Unsigned integer twice as wide as `Self`.
    type Wide: PrimInt + Unsigned + From<Self> + fmt::Debug + Send + Sync + 'static;

    const BITS: u32;

    /// Truncates a double-word value to its low word.
    fn from_wide_lo(w: Self::Wide) -> Self;

    /// Truncates a `u64` to a word.
    fn truncate_u64(v: u64) -> Self;

    /// Widening `u8` conversion, named to avoid colliding with `NumCast`.
    fn from_u8(v: u8) -> Self {
        <Self as From<u8>>::from(v)
    }

    fn wide(self) -> Self::Wide {
        Self::Wide::from(self)
    }

    fn from_wide_hi(w: Self::Wide) -> Self {
        Self::from_wide_lo(w >> Self::BITS as usize)
    }

    /// Builds a double-word value from its low and high words.
    fn wide_from_halves(lo: Self, hi: Self) -> Self::Wide {
        (hi.wide() << Self::BITS as usize) | lo.wide()
    }
}

impl Word for u32 {
    type Wide = u64;
    const BITS: u32 = 32;

    #[inline]
    fn from_wide_lo(w: u64) -> u32 {
        w as u32
    }

    #[inline]
    fn truncate_u64(v: u64) -> u32 {
        v as u32
    }
}

impl Word for u64 {
    type Wide = u128;
    const BITS: u32 = 64;

    #[inline]
    fn from_wide_lo(w: u128) -> u64 {
        w as u64
    }

    #[inline]
    fn truncate_u64(v: u64) -> u64 {
        v
    }
}

/// The platform's native limb type.
#[cfg(target_pointer_width = "64")]
pub type NativeWord = u64;
#[cfg(target_pointer_width = "32")]
pub type NativeWord = u32;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halves_roundtrip() {
        let w = u64::wide_from_halves(0xdead_beef, 0x1234_5678);
        assert_eq!(u64::from_wide_lo(w), 0xdead_beef);
        assert_eq!(u64::from_wide_hi(w), 0x1234_5678);

        let w = u32::wide_from_halves(0xbeef, 0x1234);
        assert_eq!(u32::from_wide_lo(w), 0xbeef);
        assert_eq!(u32::from_wide_hi(w), 0x1234);
    }
}
