//! Exact rational scalars and the snapping layer.
//!
//! Every length, area and ratio in this crate is a `Scalar`: an
//! arbitrary-precision reduced fraction. Irrational inputs (pi/4 scales,
//! non-integer powers) are evaluated to 128 fractional bits and then
//! snapped to a bounded-denominator rational; everything downstream is
//! exact relative to the snapped values.

use num::bigint::{BigInt, BigUint, Sign};
use num::traits::ToPrimitive;
use num::{BigRational, One, Signed, Zero};
use std::str::FromStr;

pub type Scalar = BigRational;

/// `n / d` as a Scalar. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    Scalar::from(BigInt::from(n))
}

/// Parse "p/q" or "p".
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    Scalar::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
}

/// Canonical "p/q" (or "p" for integers) rendering.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Decimal rendering to 12 significant digits, for reports. The exact
/// fraction is always emitted alongside by callers that persist data.
pub fn decimal_12(x: &Scalar) -> String {
    format!("{:.11e}", to_f64(x))
}

const FRAC_BITS: u32 = 128;

/// floor(pi * 2^128); head of the hex expansion 3.243F6A8885A308D3...
fn pi_shifted_128() -> BigUint {
    BigUint::from_str("1069028584064966747859680373161870783300").unwrap()
}

/// pi as an exact rational approximation with 128 fractional bits.
pub fn pi_approx() -> Scalar {
    Scalar::new(
        BigInt::from(pi_shifted_128()),
        BigInt::one() << FRAC_BITS as usize,
    )
}

/// floor(base^(p/q) * 2^128), computed exactly: the floor of the real
/// q-th root of base^p * 2^(128 q). Deterministic in the real value, so
/// two routes to the same real number (e.g. m^(9/2) vs (m^3)^(3/2))
/// agree bit for bit.
pub fn pow_frac_floor_128(base: u64, p: u32, q: u32) -> BigUint {
    assert!(base > 0 && q > 0);
    let v = BigUint::from(base).pow(p) << (FRAC_BITS * q) as usize;
    v.nth_root(q)
}

/// High-precision rational approximation of base^(-p/q) (128 fractional
/// bits of the reciprocal root).
pub fn inv_pow_approx(base: u64, p: u32, q: u32) -> Scalar {
    let root = pow_frac_floor_128(base, p, q);
    Scalar::new(BigInt::one() << FRAC_BITS as usize, BigInt::from(root))
}

/// (pi/4) * base^(-p/q), as a 128-bit-precision rational.
pub fn quarter_pi_inv_pow_approx(base: u64, p: u32, q: u32) -> Scalar {
    let root = pow_frac_floor_128(base, p, q);
    Scalar::new(BigInt::from(pi_shifted_128()), BigInt::from(root) << 2)
}

/// Best rational approximation of `value` with denominator <= `max_den`,
/// by continued fractions (convergent or best semiconvergent). Exact and
/// deterministic; returns `value` itself when its denominator already
/// fits the bound.
pub fn snap(value: &Scalar, max_den: u128) -> Scalar {
    assert!(max_den >= 1);
    let bound = BigUint::from(max_den);
    if value.denom().magnitude() <= &bound {
        return value.clone();
    }
    let neg = value.is_negative();
    let v = value.abs();

    // continued fraction convergents h/k
    let (mut h0, mut k0) = (BigInt::zero(), BigInt::one()); // h_{-2}/k_{-2}
    let (mut h1, mut k1) = (BigInt::one(), BigInt::zero()); // h_{-1}/k_{-1}
    let mut num = v.numer().clone();
    let mut den = v.denom().clone();
    loop {
        let a = &num / &den;
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2.magnitude() > &bound {
            // best semiconvergent: h1*t + h0 / k1*t + k0 with largest t
            // keeping the denominator within bound
            let t = (BigInt::from(bound.clone()) - &k0) / &k1;
            let cand = if t.is_zero() || k1.is_zero() {
                None
            } else {
                Some(Scalar::new(&h1 * &t + &h0, &k1 * &t + &k0))
            };
            let conv = Scalar::new(h1.clone(), k1.clone());
            let best = match cand {
                Some(semi) => {
                    if (&semi - &v).abs() < (&conv - &v).abs() {
                        semi
                    } else {
                        conv
                    }
                }
                None => conv,
            };
            return if neg { -best } else { best };
        }
        let rem = &num - &a * &den;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        if rem.is_zero() {
            // exact terminating expansion within the bound
            let exact = Scalar::new(h1, k1);
            return if neg { -exact } else { exact };
        }
        num = std::mem::replace(&mut den, rem);
    }
}

/// Snap an f64 to a rational with bounded denominator. Used only for
/// search seeds (e.g. the optimal alpha); all subsequent arithmetic on
/// the result is exact.
pub fn snap_f64(value: f64, max_den: u128) -> Scalar {
    let r = BigRational::from_float(value).expect("finite float");
    snap(&r, max_den)
}

/// Exact p-th root of a rational, when one exists.
pub fn exact_root(x: &Scalar, p: u32) -> Option<Scalar> {
    if p == 0 || x.is_negative() {
        return None;
    }
    let rn = x.numer().magnitude().nth_root(p);
    let rd = x.denom().magnitude().nth_root(p);
    if rn.pow(p) == *x.numer().magnitude() && rd.pow(p) == *x.denom().magnitude() {
        Some(Scalar::new(
            BigInt::from_biguint(Sign::Plus, rn),
            BigInt::from_biguint(Sign::Plus, rd),
        ))
    } else {
        None
    }
}

/// x^n for integer n (n may be negative; x must be nonzero then).
pub fn pow_i(x: &Scalar, n: i32) -> Scalar {
    x.pow(n)
}
