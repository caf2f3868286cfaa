//! Exact integer evaluation of small polynomial determinants.
//!
//! Every predicate is first evaluated in `i128` with overflow checks; only
//! when an intermediate overflows is the same expression re-evaluated with
//! arbitrary-precision integers. Either way the returned sign is exact.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

/// Ring operations needed by the predicate polynomials.
pub(crate) trait Ring:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

/// `i128` whose arithmetic turns into `None` on overflow.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Checked(pub Option<i128>);

impl Add for Checked {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Checked(self.0.zip(rhs.0).and_then(|(a, b)| a.checked_add(b)))
    }
}

impl Sub for Checked {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Checked(self.0.zip(rhs.0).and_then(|(a, b)| a.checked_sub(b)))
    }
}

impl Mul for Checked {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Checked(self.0.zip(rhs.0).and_then(|(a, b)| a.checked_mul(b)))
    }
}

impl Neg for Checked {
    type Output = Self;
    fn neg(self) -> Self {
        Checked(self.0.and_then(i128::checked_neg))
    }
}

impl Ring for Checked {
    fn from_i64(v: i64) -> Self {
        Checked(Some(v as i128))
    }
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Evaluates `f` in checked `i128`, falling back to `BigInt`, and returns
/// the sign of the result.
pub(crate) fn exact_sign<F, G>(fast: F, slow: G) -> Ordering
where
    F: FnOnce() -> Checked,
    G: FnOnce() -> BigInt,
{
    match fast().0 {
        Some(v) => v.cmp(&0),
        None => {
            let v = slow();
            if v.is_positive() {
                Ordering::Greater
            } else if v.is_negative() {
                Ordering::Less
            } else {
                Ordering::Equal
            }
        }
    }
}

/// `(bx - ax) * (cy - ay) - (by - ay) * (cx - ax)`.
pub(crate) fn orient_poly<T: Ring>(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> T {
    let (ax, ay) = (T::from_i64(a.0), T::from_i64(a.1));
    let bax = T::from_i64(b.0) - ax.clone();
    let bay = T::from_i64(b.1) - ay.clone();
    let cax = T::from_i64(c.0) - ax;
    let cay = T::from_i64(c.1) - ay;
    bax * cay - bay * cax
}

/// The lifted 3x3 in-circle determinant with all points translated by `d`.
pub(crate) fn incircle_poly<T: Ring>(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> T {
    let (dx, dy) = (T::from_i64(d.0), T::from_i64(d.1));
    let adx = T::from_i64(a.0) - dx.clone();
    let ady = T::from_i64(a.1) - dy.clone();
    let bdx = T::from_i64(b.0) - dx.clone();
    let bdy = T::from_i64(b.1) - dy.clone();
    let cdx = T::from_i64(c.0) - dx;
    let cdy = T::from_i64(c.1) - dy;
    let alift = adx.clone() * adx.clone() + ady.clone() * ady.clone();
    let blift = bdx.clone() * bdx.clone() + bdy.clone() * bdy.clone();
    let clift = cdx.clone() * cdx.clone() + cdy.clone() * cdy.clone();
    adx * (bdy.clone() * clift.clone() - cdy.clone() * blift.clone())
        - ady * (bdx.clone() * clift - cdx.clone() * blift)
        + alift * (bdx * cdy - cdx * bdy)
}

/// Compares `a * b` with `c * d` exactly.
pub(crate) fn cmp_products(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Ordering {
    (a * b).cmp(&(c * d))
}
