use crate::error::{Error, Result};
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of(v: f64) -> Self {
        if v > 0.0 {
            Sign::Positive
        } else if v < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    fn as_f64(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
            Sign::Positive => 1.0,
        }
    }

    fn mul(self, other: Sign) -> Sign {
        Sign::of(self.as_f64() * other.as_f64())
    }
}

/// A real number stored as a sign and the natural log of its magnitude.
///
/// Zero carries `log_magnitude == f64::NEG_INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    sign: Sign,
    log_magnitude: f64,
}

/// Result of converting a [`LogValue`] back to `f64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Converted {
    /// The value, saturated to `±f64::MAX` on overflow.
    pub value: f64,
    pub overflowed: bool,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        sign: Sign::Zero,
        log_magnitude: f64::NEG_INFINITY,
    };
    pub const ONE: LogValue = LogValue {
        sign: Sign::Positive,
        log_magnitude: 0.0,
    };

    pub fn from_f64(v: f64) -> Self {
        match Sign::of(v) {
            Sign::Zero => Self::ZERO,
            sign => LogValue {
                sign,
                log_magnitude: v.abs().ln(),
            },
        }
    }

    /// Builds `sign · e^log_magnitude`.
    pub fn from_log(sign: Sign, log_magnitude: f64) -> Self {
        if sign == Sign::Zero || log_magnitude == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogValue { sign, log_magnitude }
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn log_magnitude(&self) -> f64 {
        self.log_magnitude
    }

    pub fn to_f64(&self) -> Converted {
        if self.sign == Sign::Zero {
            return Converted { value: 0.0, overflowed: false };
        }
        let m = self.log_magnitude.exp();
        if m.is_infinite() {
            Converted {
                value: self.sign.as_f64() * f64::MAX,
                overflowed: true,
            }
        } else {
            Converted {
                value: self.sign.as_f64() * m,
                overflowed: false,
            }
        }
    }

    pub fn mul(self, rhs: LogValue) -> LogValue {
        LogValue::from_log(self.sign.mul(rhs.sign), self.log_magnitude + rhs.log_magnitude)
    }

    pub fn div(self, rhs: LogValue) -> Result<LogValue> {
        if rhs.sign == Sign::Zero {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(LogValue::from_log(
            self.sign.mul(rhs.sign),
            self.log_magnitude - rhs.log_magnitude,
        ))
    }

    /// Integer power; keeps the sign of odd powers.
    pub fn powi(self, k: i32) -> LogValue {
        if k == 0 {
            return Self::ONE;
        }
        let sign = if self.sign == Sign::Negative && k % 2 == 0 {
            Sign::Positive
        } else {
            self.sign
        };
        LogValue::from_log(sign, self.log_magnitude * k as f64)
    }

    /// Real power of a non-negative value.
    pub fn powf(self, p: f64) -> Result<LogValue> {
        match self.sign {
            Sign::Negative => Err(Error::Domain("real power of a negative value".into())),
            Sign::Zero if p > 0.0 => Ok(Self::ZERO),
            Sign::Zero => Err(Error::Domain("non-positive power of zero".into())),
            Sign::Positive => Ok(LogValue::from_log(Sign::Positive, self.log_magnitude * p)),
        }
    }

    /// Sum via log-sum-exp. Opposite-sign operands whose log magnitudes agree
    /// to within 1e-15 relative are rejected as catastrophic cancellation.
    pub fn add(self, rhs: LogValue) -> Result<LogValue> {
        if self.sign == Sign::Zero {
            return Ok(rhs);
        }
        if rhs.sign == Sign::Zero {
            return Ok(self);
        }
        let (big, small) = if self.log_magnitude >= rhs.log_magnitude {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let delta = small.log_magnitude - big.log_magnitude;
        if big.sign == small.sign {
            return Ok(LogValue::from_log(big.sign, big.log_magnitude + delta.exp().ln_1p()));
        }
        let scale = big.log_magnitude.abs().max(1.0);
        if delta.abs() < 1e-15 * scale {
            return Err(Error::Cancellation);
        }
        Ok(LogValue::from_log(
            big.sign,
            big.log_magnitude + (-delta.exp()).ln_1p(),
        ))
    }

    pub fn neg(self) -> LogValue {
        let sign = match self.sign {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
        };
        LogValue { sign, ..self }
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let rank = |s: Sign| match s {
            Sign::Negative => 0,
            Sign::Zero => 1,
            Sign::Positive => 2,
        };
        match rank(self.sign).cmp(&rank(other.sign)) {
            Ordering::Equal => match self.sign {
                Sign::Zero => Some(Ordering::Equal),
                Sign::Positive => self.log_magnitude.partial_cmp(&other.log_magnitude),
                Sign::Negative => other.log_magnitude.partial_cmp(&self.log_magnitude),
            },
            ord => Some(ord),
        }
    }
}

/// `ln(n!)` by direct summation of `ln k`.
pub fn log_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn large_power() {
        let v = LogValue::from_f64(1e6).powi(17);
        assert!((v.log_magnitude() - 17.0 * 1e6f64.ln()).abs() < 1e-12);
        assert!((v.log_magnitude() - 234.8637).abs() < 1e-4);
        assert_eq!(v.to_f64().overflowed, false);
        let w = v.powi(4);
        let c = w.to_f64();
        assert!(c.overflowed);
        assert_eq!(c.value, f64::MAX);
    }

    #[test]
    fn factorial_18() {
        // oracle: 18! = 6402373705728000 is exact in f64
        let exact = 6_402_373_705_728_000f64.ln();
        assert!((log_factorial(18) - exact).abs() < 1e-13);
        assert!((log_factorial(18) - 36.3954).abs() < 1e-4);
    }

    #[test]
    fn signs() {
        let a = LogValue::from_f64(-2.0);
        let b = LogValue::from_f64(-3.0);
        let p = a.mul(b);
        assert_eq!(p.sign(), Sign::Positive);
        assert!((p.to_f64().value - 6.0).abs() < 1e-14);
        assert_eq!(a.powi(3).sign(), Sign::Negative);
        assert_eq!(a.powi(2).sign(), Sign::Positive);
        assert!(a < LogValue::ZERO && LogValue::ZERO < b.neg());
        assert!(LogValue::from_f64(-5.0) < a);
    }

    #[test]
    fn cancellation_flagged() {
        let a = LogValue::from_f64(1.0);
        assert_eq!(a.add(a.neg()), Err(Error::Cancellation));
        let s = LogValue::from_f64(3.0).add(LogValue::from_f64(-1.0)).unwrap();
        assert!((s.to_f64().value - 2.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn round_trip(m in 1.0f64..10.0, e in -25i32..25, neg in any::<bool>()) {
            let v = if neg { -m } else { m } * 10f64.powi(e);
            let back = LogValue::from_f64(v).to_f64();
            prop_assert!(!back.overflowed);
            prop_assert!(((back.value - v) / v).abs() < 1e-14);
        }

        // a single f64 log carries ~|ln v|·eps relative error at the range ends
        #[test]
        fn round_trip_full_range(v in prop::num::f64::NORMAL) {
            let back = LogValue::from_f64(v).to_f64();
            prop_assert!(!back.overflowed);
            prop_assert!(((back.value - v) / v).abs() < 2e-13);
        }

        #[test]
        fn add_matches_f64(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            prop_assume!((a + b).abs() > 1e-3 * (a.abs() + b.abs()));
            let s = LogValue::from_f64(a).add(LogValue::from_f64(b)).unwrap().to_f64().value;
            prop_assert!(((s - (a + b)) / (a + b)).abs() < 1e-11);
        }
    }
}
