//! Closed intervals with MPFR endpoints and outward rounding.

use std::cmp::Ordering;
use std::fmt;

use rug::float::{Constant, Round};
use rug::{Float, Rational};

#[derive(Clone, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.6e}, {:.6e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

macro_rules! bound {
    ($prec:expr, $val:expr, $round:expr) => {
        Float::with_val_round($prec, $val, $round).0
    };
}

impl Interval {
    pub fn rational(r: &Rational, prec: u32) -> Self {
        Interval {
            lo: bound!(prec, r, Round::Down),
            hi: bound!(prec, r, Round::Up),
        }
    }

    pub fn int(i: i64, prec: u32) -> Self {
        Interval::rational(&Rational::from(i), prec)
    }

    pub fn pi(prec: u32) -> Self {
        Interval {
            lo: bound!(prec, Constant::Pi, Round::Down),
            hi: bound!(prec, Constant::Pi, Round::Up),
        }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn midpoint(&self) -> Float {
        let p = self.prec() + 2;
        let sum = Float::with_val(p, &self.lo + &self.hi);
        sum / 2u32
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Certified sign; `None` when the interval straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo > 0 {
            Some(Ordering::Greater)
        } else if self.hi < 0 {
            Some(Ordering::Less)
        } else if self.lo == 0 && self.hi == 0 {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certified comparison; `None` when the intervals overlap and are not
    /// the same point.
    pub fn compare(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn certainly_less(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn add(&self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        Interval {
            lo: bound!(p, &self.lo + &o.lo, Round::Down),
            hi: bound!(p, &self.hi + &o.hi, Round::Up),
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        Interval {
            lo: bound!(p, &self.lo - &o.hi, Round::Down),
            hi: bound!(p, &self.hi - &o.lo, Round::Up),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: Float::with_val(self.hi.prec(), -&self.hi),
            hi: Float::with_val(self.lo.prec(), -&self.lo),
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            let hi = if Float::with_val(self.lo.prec(), -&self.lo) > self.hi {
                Float::with_val(self.lo.prec(), -&self.lo)
            } else {
                self.hi.clone()
            };
            Interval {
                lo: Float::with_val(self.prec(), 0),
                hi,
            }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        let pairs = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = bound!(p, a * b, Round::Down);
            let u = bound!(p, a * b, Round::Up);
            if lo.as_ref().is_none_or(|l| d < *l) {
                lo = Some(d);
            }
            if hi.as_ref().is_none_or(|h| u > *h) {
                hi = Some(u);
            }
        }
        Interval {
            lo: lo.expect("four products"),
            hi: hi.expect("four products"),
        }
    }

    /// `None` if the divisor may be zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let p = self.prec().max(o.prec());
        let recip = Interval {
            lo: bound!(p, 1u32 / &o.hi, Round::Down),
            hi: bound!(p, 1u32 / &o.lo, Round::Up),
        };
        Some(self.mul(&recip))
    }

    pub fn scale(&self, r: &Rational) -> Interval {
        self.mul(&Interval::rational(r, self.prec()))
    }

    /// Tangent of an interval inside `(-pi/2, pi/2)`; `None` otherwise.
    pub fn tan(&self) -> Option<Interval> {
        let half_pi = Interval::pi(self.prec()).scale(&Rational::from((1, 2)));
        if !(half_pi.neg().certainly_less(self) && self.certainly_less(&half_pi)) {
            return None;
        }
        let mut lo = self.lo.clone();
        lo.tan_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.tan_round(Round::Up);
        Some(Interval { lo, hi })
    }

    /// Interval of `min(self, other)`.
    pub fn min(&self, o: &Interval) -> Interval {
        let lo = if self.lo < o.lo { &self.lo } else { &o.lo };
        let hi = if self.hi < o.hi { &self.hi } else { &o.hi };
        Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        }
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let m = self.midpoint();
        if m == 0 {
            return "0".into();
        }
        m.to_string_radix(10, Some(digits))
    }
}
