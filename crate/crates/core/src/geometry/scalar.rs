//! Exact descriptions of line parameters, evaluated to intervals on demand.
//!
//! Seed arrangements use rationals and `tan(r·π)`; the duplication adds
//! slopes defined by a closed formula over earlier slopes. Keeping the
//! description lets every construction be re-evaluated at a higher
//! precision without redoing it.

use std::collections::HashMap;
use std::sync::Arc;

use rug::Rational;

use super::interval::Interval;
use super::GeometryError;

#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(Rational),
    /// `tan(r·π)` with `|r| < 1/2`.
    TanPi(Rational),
    Derived(Arc<Derived>),
}

#[derive(Debug)]
pub enum Derived {
    /// `sigma · scale / n^10 · (sin(2β) + 1/(n^6 · tan β))` with `β = beta·π`.
    Shrunk {
        sigma: i32,
        n: u32,
        beta: Rational,
        scale: Scalar,
    },
    /// Smallest absolute value of the given scalars.
    MinAbs(Vec<Scalar>),
}

impl Scalar {
    pub fn int(i: i64) -> Self {
        Scalar::Exact(Rational::from(i))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(Rational::from((num, den)))
    }

    pub fn tan_pi(num: i64, den: i64) -> Self {
        Scalar::TanPi(Rational::from((num, den)))
    }

    pub fn is_exact_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) | Scalar::TanPi(r) => *r == 0,
            Scalar::Derived(_) => false,
        }
    }

    /// The multiple `r` of π with `self = tan(r·π)`, when exactly known.
    pub fn as_tan_pi(&self) -> Option<Rational> {
        match self {
            Scalar::TanPi(r) => Some(r.clone()),
            Scalar::Exact(q) if *q == 0 => Some(Rational::new()),
            Scalar::Exact(q) if *q == 1 => Some(Rational::from((1, 4))),
            Scalar::Exact(q) if *q == -1 => Some(Rational::from((-1, 4))),
            _ => None,
        }
    }
}

pub(crate) fn power(base: u32, exp: u32) -> Rational {
    let mut r = Rational::from(1);
    for _ in 0..exp {
        r *= base;
    }
    r
}

/// Evaluates scalars at a fixed precision, sharing work between scalars
/// built on the same [`Derived`] node.
pub struct Evaluator {
    prec: u32,
    pi: Interval,
    cache: HashMap<usize, Interval>,
}

impl Evaluator {
    pub fn new(prec: u32) -> Self {
        Evaluator {
            prec,
            pi: Interval::pi(prec),
            cache: HashMap::new(),
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    fn insufficient(&self) -> GeometryError {
        GeometryError::PrecisionInsufficient {
            precision: self.prec,
        }
    }

    pub fn tan_pi(&self, r: &Rational) -> Result<Interval, GeometryError> {
        if *r == 0 {
            return Ok(Interval::int(0, self.prec));
        }
        self.pi.scale(r).tan().ok_or_else(|| self.insufficient())
    }

    pub fn eval(&mut self, s: &Scalar) -> Result<Interval, GeometryError> {
        match s {
            Scalar::Exact(r) => Ok(Interval::rational(r, self.prec)),
            Scalar::TanPi(r) => self.tan_pi(r),
            Scalar::Derived(d) => {
                let key = Arc::as_ptr(d) as usize;
                if let Some(v) = self.cache.get(&key) {
                    return Ok(v.clone());
                }
                let v = self.eval_derived(d)?;
                self.cache.insert(key, v.clone());
                Ok(v)
            }
        }
    }

    fn eval_derived(&mut self, d: &Derived) -> Result<Interval, GeometryError> {
        match d {
            Derived::MinAbs(items) => {
                let mut acc: Option<Interval> = None;
                for s in items {
                    let v = self.eval(s)?.abs();
                    acc = Some(match acc {
                        Some(a) => a.min(&v),
                        None => v,
                    });
                }
                acc.ok_or_else(|| GeometryError::InvalidParameter("minimum of nothing".into()))
            }
            Derived::Shrunk {
                sigma,
                n,
                beta,
                scale,
            } => {
                let p = self.prec;
                let b = self.tan_pi(beta)?;
                let one = Interval::int(1, p);
                // sin(2β) = 2 tan β / (1 + tan² β)
                let sin2 = b
                    .scale(&Rational::from(2))
                    .div(&one.add(&b.mul(&b)))
                    .ok_or_else(|| self.insufficient())?;
                let tail = one
                    .div(&b.scale(&power(*n, 6)))
                    .ok_or_else(|| self.insufficient())?;
                let factor = Rational::from(*sigma) / power(*n, 10);
                let m = self.eval(scale)?;
                Ok(m.scale(&factor).mul(&sin2.add(&tail)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tan_pi_identities() {
        let mut ev = Evaluator::new(128);
        let v = ev.eval(&Scalar::tan_pi(1, 4)).unwrap();
        assert!((v.to_f64() - 1.0).abs() < 1e-30);
        assert_eq!(
            ev.eval(&Scalar::tan_pi(0, 1)).unwrap().sign(),
            Some(std::cmp::Ordering::Equal)
        );
        assert!(ev.eval(&Scalar::tan_pi(1, 2)).is_err());
        assert_eq!(Scalar::int(1).as_tan_pi(), Some(Rational::from((1, 4))));
        assert_eq!(Scalar::ratio(1, 3).as_tan_pi(), None);
    }

    #[test]
    fn shrunk_formula_matches_floats() {
        let scale = Scalar::Derived(Arc::new(Derived::MinAbs(vec![
            Scalar::int(-3),
            Scalar::ratio(3, 2),
            Scalar::int(7),
        ])));
        let mu = Scalar::Derived(Arc::new(Derived::Shrunk {
            sigma: -1,
            n: 6,
            beta: Rational::from((-5, 12)),
            scale,
        }));
        let v = Evaluator::new(200).eval(&mu).unwrap().to_f64();
        let beta = -5.0 * std::f64::consts::PI / 12.0;
        let expect =
            -1.5 / 6f64.powi(10) * ((2.0 * beta).sin() + 1.0 / (6f64.powi(6) * beta.tan()));
        assert!(((v - expect) / expect).abs() < 1e-12, "{v} vs {expect}");
    }
}
