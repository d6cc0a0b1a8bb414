//! Orientation and eccentricity sequences: declarative specs, exact (or
//! snapped-then-exact) evaluation, and the truncated comparability
//! functional tau.

use crate::error::SequenceError;
use crate::scalar::{
    int, pow_i, quarter_pi_inv_pow_approx, snap, Scalar,
};
use num::{One, Signed, Zero};

/// Multiplier in front of a power-law sequence. `QuarterPi` marks the
/// irrational scale pi/4; it is evaluated to 128 fractional bits and the
/// resulting terms are snapped to bounded-denominator rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScaleFactor {
    Rational(Scalar),
    QuarterPi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    /// scale / k^exponent over the index range; exponent may be a
    /// non-integer rational.
    PowerLaw { exponent: Scalar, scale: ScaleFactor },
    /// ratio^k over the index range.
    Geometric { ratio: Scalar },
    Explicit(Vec<Scalar>),
}

pub const DEFAULT_SNAP_BOUND: u128 = 1 << 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub kind: SequenceKind,
    pub k_min: u64,
    pub k_max: u64,
    pub snap_denominator_bound: u128,
}

impl SequenceSpec {
    pub fn power_law(exponent: Scalar, scale: ScaleFactor, k_min: u64, k_max: u64) -> SequenceSpec {
        SequenceSpec {
            kind: SequenceKind::PowerLaw { exponent, scale },
            k_min,
            k_max,
            snap_denominator_bound: DEFAULT_SNAP_BOUND,
        }
    }

    pub fn geometric(ratio: Scalar, k_min: u64, k_max: u64) -> SequenceSpec {
        SequenceSpec {
            kind: SequenceKind::Geometric { ratio },
            k_min,
            k_max,
            snap_denominator_bound: DEFAULT_SNAP_BOUND,
        }
    }

    pub fn explicit(values: Vec<Scalar>) -> SequenceSpec {
        let k_max = values.len() as u64;
        SequenceSpec {
            kind: SequenceKind::Explicit(values),
            k_min: 1,
            k_max,
            snap_denominator_bound: DEFAULT_SNAP_BOUND,
        }
    }
}

/// Evaluated sequence plus snapping metadata. `snap_error_bound` is an
/// upper bound on |emitted - true| per term: the exact distance to the
/// 128-bit truncation plus the truncation error 2^-128. None when every
/// term is exact.
#[derive(Clone, Debug)]
pub struct SequenceValues {
    pub values: Vec<Scalar>,
    pub snap_error_bound: Option<Scalar>,
}

fn exponent_parts(exponent: &Scalar) -> Result<(u32, u32), SequenceError> {
    if !exponent.is_positive() {
        return Err(SequenceError::InvalidSpec(format!(
            "power-law exponent must be positive, got {exponent}"
        )));
    }
    let p: u32 = exponent
        .numer()
        .try_into()
        .map_err(|_| SequenceError::InvalidSpec("exponent numerator too large".into()))?;
    let q: u32 = exponent
        .denom()
        .try_into()
        .map_err(|_| SequenceError::InvalidSpec("exponent denominator too large".into()))?;
    Ok((p, q))
}

/// Evaluate a spec into exact rationals without monotonicity checks
/// (eccentricity role). Power laws with rational value paths stay exact;
/// irrational paths (pi/4 scale, fractional exponents) go through the
/// fixed 128-bit approximation and are snapped to the configured
/// denominator bound.
pub fn eval_sequence_raw(spec: &SequenceSpec) -> Result<SequenceValues, SequenceError> {
    if spec.k_min == 0 || spec.k_min > spec.k_max {
        return Err(SequenceError::InvalidSpec(format!(
            "index range [{}, {}] is empty or starts at 0",
            spec.k_min, spec.k_max
        )));
    }
    let mut snapped_any = false;
    let mut worst_snap = Scalar::zero();
    let values: Vec<Scalar> = match &spec.kind {
        SequenceKind::Explicit(v) => v.clone(),
        SequenceKind::Geometric { ratio } => {
            if !ratio.is_positive() || ratio >= &Scalar::one() {
                return Err(SequenceError::InvalidSpec(format!(
                    "geometric ratio must lie in (0, 1), got {ratio}"
                )));
            }
            (spec.k_min..=spec.k_max)
                .map(|k| pow_i(ratio, k as i32))
                .collect()
        }
        SequenceKind::PowerLaw { exponent, scale } => {
            let (p, q) = exponent_parts(exponent)?;
            let mut out = Vec::with_capacity((spec.k_max - spec.k_min + 1) as usize);
            for k in spec.k_min..=spec.k_max {
                let exact_path = q == 1 && matches!(scale, ScaleFactor::Rational(_));
                let v = if exact_path {
                    let ScaleFactor::Rational(s) = scale else { unreachable!() };
                    s / pow_i(&int(k as i64), p as i32)
                } else {
                    let approx = match scale {
                        ScaleFactor::QuarterPi => quarter_pi_inv_pow_approx(k, p, q),
                        ScaleFactor::Rational(s) => {
                            s * crate::scalar::inv_pow_approx(k, p, q)
                        }
                    };
                    let s = snap(&approx, spec.snap_denominator_bound);
                    snapped_any = true;
                    let err = (&s - &approx).abs();
                    if err > worst_snap {
                        worst_snap = err;
                    }
                    s
                };
                out.push(v);
            }
            out
        }
    };
    for (i, v) in values.iter().enumerate() {
        if !v.is_positive() {
            return Err(SequenceError::NotPositive { index: i });
        }
    }
    let snap_error_bound = if snapped_any {
        Some(worst_snap + Scalar::new(1.into(), num::BigInt::from(1u8) << 128))
    } else {
        None
    };
    Ok(SequenceValues {
        values,
        snap_error_bound,
    })
}

/// Evaluate an orientation sequence: as `eval_sequence_raw`, then
/// enforce strict decrease (rejecting snap collisions so the caller can
/// raise the bound).
pub fn eval_sequence(spec: &SequenceSpec) -> Result<SequenceValues, SequenceError> {
    let out = eval_sequence_raw(spec)?;
    for i in 1..out.values.len() {
        if out.values[i] >= out.values[i - 1] {
            return Err(SequenceError::NotDecreasing {
                index: i,
                bound: spec.snap_denominator_bound,
            });
        }
    }
    Ok(out)
}

/// Truncated comparability functional: max over 1-based k >= 1,
/// 1 <= l <= k, k + 2l <= K of d2/d1 + d1/d2 with d1 = t_{k+l} - t_k and
/// d2 = t_{k+2l} - t_{k+l} (differences of a decreasing sequence, taken
/// in absolute value).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauEstimate {
    pub value: Scalar,
    pub truncation: usize,
    pub argmax: (usize, usize),
}

pub fn tau_truncated(t: &[Scalar], truncation: usize) -> Result<TauEstimate, SequenceError> {
    if t.len() < truncation {
        return Err(SequenceError::TooShort {
            needed: truncation,
            got: t.len(),
        });
    }
    if truncation < 3 {
        return Err(SequenceError::NoAdmissiblePair { k: truncation });
    }
    for i in 1..truncation {
        if t[i] >= t[i - 1] {
            return Err(SequenceError::NotDecreasing {
                index: i,
                bound: 0,
            });
        }
    }
    let mut best: Option<(Scalar, (usize, usize))> = None;
    // 1-based (k, l); t[i] holds t_{i+1}
    for k in 1..=truncation {
        for l in 1..=k {
            if k + 2 * l > truncation {
                break;
            }
            let d1 = &t[k - 1] - &t[k + l - 1];
            let d2 = &t[k + l - 1] - &t[k + 2 * l - 1];
            let v = &d2 / &d1 + &d1 / &d2;
            if best.as_ref().is_none_or(|(b, _)| &v > b) {
                best = Some((v, (k, l)));
            }
        }
    }
    let (value, argmax) = best.ok_or(SequenceError::NoAdmissiblePair { k: truncation })?;
    Ok(TauEstimate {
        value,
        truncation,
        argmax,
    })
}
