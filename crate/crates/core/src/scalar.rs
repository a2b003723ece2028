//! Exact integer scalars.
//!
//! Every algorithm in this crate is written against [`Scalar`], so the same
//! code runs over arbitrary-precision integers ([`num_bigint::BigInt`]) and
//! over fixed-width machine integers. Fixed-width arithmetic never wraps:
//! an overflowing operation panics with [`OVERFLOW_MESSAGE`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Panic message used when a fixed-width scalar would overflow.
pub const OVERFLOW_MESSAGE: &str = "integer overflow in exact arithmetic";

/// An exact, signed integer type usable as matrix entries and group orders.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
    fn add_exact(&self, rhs: &Self) -> Self;
    fn sub_exact(&self, rhs: &Self) -> Self;
    fn mul_exact(&self, rhs: &Self) -> Self;

    fn neg_exact(&self) -> Self {
        Self::zero().sub_exact(self)
    }

    fn abs_exact(&self) -> Self {
        if self.is_negative() {
            self.neg_exact()
        } else {
            self.clone()
        }
    }

    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect(OVERFLOW_MESSAGE)
    }

    fn from_u64_exact(v: u64) -> Self {
        Self::from_u64(v).expect(OVERFLOW_MESSAGE)
    }

    /// Least non-negative residue; a zero modulus leaves the value unchanged.
    fn reduce(&self, modulus: &Self) -> Self {
        if modulus.is_zero() {
            self.clone()
        } else {
            self.mod_floor(&modulus.abs_exact())
        }
    }

    /// Non-negative gcd, with `gcd(0, 0) = 0`.
    fn gcd_exact(&self, rhs: &Self) -> Self {
        let mut a = self.abs_exact();
        let mut b = rhs.abs_exact();
        while !b.is_zero() {
            let r = a.mod_floor(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
    fn extended_gcd_exact(&self, rhs: &Self) -> (Self, Self, Self) {
        let (mut old_r, mut r) = (self.clone(), rhs.clone());
        let (mut old_s, mut s) = (Self::one(), Self::zero());
        let (mut old_t, mut t) = (Self::zero(), Self::one());
        while !r.is_zero() {
            let q = old_r.div_floor(&r);
            let next_r = old_r.sub_exact(&q.mul_exact(&r));
            old_r = std::mem::replace(&mut r, next_r);
            let next_s = old_s.sub_exact(&q.mul_exact(&s));
            old_s = std::mem::replace(&mut s, next_s);
            let next_t = old_t.sub_exact(&q.mul_exact(&t));
            old_t = std::mem::replace(&mut t, next_t);
        }
        if old_r.is_negative() {
            (old_r.neg_exact(), old_s.neg_exact(), old_t.neg_exact())
        } else {
            (old_r, old_s, old_t)
        }
    }
}

impl Scalar for BigInt {
    fn add_exact(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_exact(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_exact(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

macro_rules! checked_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn add_exact(&self, rhs: &Self) -> Self {
                CheckedAdd::checked_add(self, rhs).expect(OVERFLOW_MESSAGE)
            }
            fn sub_exact(&self, rhs: &Self) -> Self {
                CheckedSub::checked_sub(self, rhs).expect(OVERFLOW_MESSAGE)
            }
            fn mul_exact(&self, rhs: &Self) -> Self {
                CheckedMul::checked_mul(self, rhs).expect(OVERFLOW_MESSAGE)
            }
        }
    )*};
}

checked_scalar!(i32, i64, i128);
