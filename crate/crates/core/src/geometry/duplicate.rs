//! Doubling construction: from `n + 1` lines whose axis touches `n - 1`
//! triangles, add `n` nearly horizontal lines to get `2n + 1` lines with
//! exactly `n²` more triangles.
//!
//! The new lines are `y = μ_i (x - b_i)` with `b_i = tan β_i`, the angles
//! `β_i` spaced by `π/n` and offset by half a step from `-π/2`, and
//!
//! ```text
//! μ_i = σ · m_min / n^10 · (sin 2β_i + 1 / (n^6 · b_i))
//! ```
//!
//! where `m_min` is the smallest absolute slope among the non-axis lines and
//! `σ` is the sign of the `y`-coordinate where the two near-axis lines meet.
//! Each output is certified by recounting its wiring diagram.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use rug::Rational;

use super::scalar::power;
use super::{
    with_precision_retry, Derived, GeometryError, Interval, Line, LineArrangement, Scalar, Seed,
};
use crate::faces::count_triangles;

#[derive(Debug, Clone)]
pub struct Duplication {
    pub arrangement: LineArrangement,
    pub base_triangles: usize,
    pub triangles: usize,
    pub axis_contact: usize,
    pub precision: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundReport {
    pub round: u32,
    pub lines: usize,
    pub triangles: usize,
    pub precision: u32,
}

pub fn duplicate(a: &LineArrangement) -> Result<LineArrangement, GeometryError> {
    duplicate_certified(a).map(|d| d.arrangement)
}

fn precondition(msg: impl Into<String>) -> GeometryError {
    GeometryError::PreconditionFailed(msg.into())
}

fn certified(
    cond: Option<bool>,
    what: impl FnOnce() -> String,
    precision: u32,
) -> Result<(), GeometryError> {
    match cond {
        Some(true) => Ok(()),
        Some(false) => Err(GeometryError::CertificationFailed(what())),
        None => Err(GeometryError::PrecisionInsufficient { precision }),
    }
}

fn less(a: &Interval, b: &Interval) -> Option<bool> {
    a.compare(b).map(|o| o == Ordering::Less)
}

struct Plan {
    axis: usize,
    n: u32,
    others: Vec<usize>,
    near_zero: [usize; 2],
}

fn plan(a: &LineArrangement) -> Result<Plan, GeometryError> {
    let axis = a
        .axis_index()
        .ok_or_else(|| precondition("exactly one horizontal line is required"))?;
    let n = a.len() - 1;
    if n < 2 || n % 2 == 1 {
        return Err(precondition(format!(
            "need an odd number of lines (n + 1 with n even), got {}",
            a.len()
        )));
    }
    let mut expected: BTreeSet<Rational> = BTreeSet::new();
    for k in 1..(n / 2) as i64 {
        expected.insert(Rational::from((k, n as i64)));
        expected.insert(Rational::from((-k, n as i64)));
    }
    let others: Vec<usize> = (0..a.len()).filter(|&i| i != axis).collect();
    let mut candidates = Vec::new();
    for &i in &others {
        match a.lines[i].anchor.as_tan_pi() {
            Some(r) if expected.remove(&r) => {}
            _ => candidates.push(i),
        }
    }
    if !expected.is_empty() {
        let missing: Vec<String> = expected.iter().map(|r| format!("tan({r}*pi)")).collect();
        return Err(precondition(format!(
            "missing anchors {}",
            missing.join(", ")
        )));
    }
    if candidates.len() != 2 {
        return Err(precondition(format!(
            "expected two anchors near zero, found {}",
            candidates.len()
        )));
    }
    Ok(Plan {
        axis,
        n: n as u32,
        others,
        near_zero: [candidates[0], candidates[1]],
    })
}

pub fn duplicate_certified(a: &LineArrangement) -> Result<Duplication, GeometryError> {
    let plan = plan(a)?;
    with_precision_retry(a.precision, |p| attempt(a, &plan, p))
}

fn attempt(a: &LineArrangement, plan: &Plan, p: u32) -> Result<Duplication, GeometryError> {
    let n = plan.n;
    let ev = a.evaluate_at(p)?;
    let insufficient = GeometryError::PrecisionInsufficient { precision: p };

    // -1/n < a_{n-1} < 0 < a_n < 1/n
    let inv_n = Interval::rational(&Rational::from((1, n)), p);
    let mut neg = None;
    let mut pos = None;
    for &i in &plan.near_zero {
        let anchor = &ev.anchors[i];
        match anchor.sign() {
            Some(Ordering::Less) => neg = Some(i),
            Some(Ordering::Greater) => pos = Some(i),
            Some(Ordering::Equal) => return Err(precondition("a near-zero anchor is zero")),
            None => return Err(insufficient),
        }
        match less(&anchor.abs(), &inv_n) {
            Some(true) => {}
            Some(false) => {
                return Err(precondition(format!(
                    "anchor of line {i} is not within 1/{n} of zero"
                )))
            }
            None => return Err(insufficient),
        }
    }
    let (Some(left), Some(right)) = (neg, pos) else {
        return Err(precondition(
            "need one negative and one positive near-zero anchor",
        ));
    };

    let base = a.wiring_at(p)?;
    let base_report = count_triangles(&base.diagram);
    let contact = base_report.wire_contact[base.wire_of_line[plan.axis]];
    if contact != n as usize - 1 {
        return Err(precondition(format!(
            "the axis touches {contact} triangles, needs {}",
            n - 1
        )));
    }

    let sigma = match ev.crossing_y(left, right)?.sign() {
        Some(Ordering::Greater) => 1,
        Some(Ordering::Less) => -1,
        Some(Ordering::Equal) => return Err(precondition("the near-zero lines meet on the axis")),
        None => return Err(insufficient),
    };
    let m_min = Scalar::Derived(Arc::new(Derived::MinAbs(
        plan.others
            .iter()
            .map(|&i| a.lines[i].slope.clone())
            .collect(),
    )));

    let mut lines = a.lines.clone();
    let mut betas = Vec::with_capacity(n as usize);
    for k in 1..=n as i64 {
        let beta = Rational::from((2 * k - 1, 2 * n as i64)) - Rational::from((1, 2));
        let mu = Scalar::Derived(Arc::new(Derived::Shrunk {
            sigma,
            n,
            beta: beta.clone(),
            scale: m_min.clone(),
        }));
        lines.push(Line::new(mu, Scalar::TanPi(beta.clone())));
        betas.push(beta);
    }
    let b = LineArrangement::new(lines, p);
    let evb = b.evaluate_at(p)?;
    let first_new = a.len();

    // Size and sign of the new slopes, and the band their crossings with
    // the old lines fall in.
    let mut scratch = super::Evaluator::new(p);
    let m_min_val = scratch.eval(&m_min)?;
    let lower = m_min_val.scale(&(Rational::from(1) / power(n, 11)));
    let upper = m_min_val.scale(&(Rational::from(2) / power(n, 10)));
    let band = m_min_val.scale(&(Rational::from(3) / power(n, 9)));
    for k in 0..n as usize {
        let mu = &evb.slopes[first_new + k];
        let abs = mu.abs();
        certified(
            less(&lower, &abs),
            || format!("|mu_{}| below m_min/n^11", k + 1),
            p,
        )?;
        certified(
            less(&abs, &upper),
            || format!("|mu_{}| above 2 m_min/n^10", k + 1),
            p,
        )?;
        let expected = if (betas[k] < 0) == (sigma < 0) {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        certified(
            mu.sign().map(|s| s == expected),
            || format!("sign of mu_{}", k + 1),
            p,
        )?;
        for &i in &plan.others {
            let y = evb.crossing_y(i, first_new + k)?.abs();
            certified(
                less(&y, &band),
                || format!("crossing of line {i} with M_{} off the axis band", k + 1),
                p,
            )?;
        }
    }

    let wiring = super::wiring_from(&evb, p)?;
    let report = count_triangles(&wiring.diagram);
    let want = base_report.triangle_count + (n * n) as usize;
    if report.triangle_count != want {
        return Err(GeometryError::CertificationFailed(format!(
            "counted {} triangles, expected {want}",
            report.triangle_count
        )));
    }
    let axis_contact = report.wire_contact[wiring.wire_of_line[plan.axis]];
    if axis_contact != 2 * n as usize - 1 {
        return Err(GeometryError::CertificationFailed(format!(
            "the axis touches {axis_contact} triangles, expected {}",
            2 * n - 1
        )));
    }
    Ok(Duplication {
        arrangement: b,
        base_triangles: base_report.triangle_count,
        triangles: report.triangle_count,
        axis_contact,
        precision: p,
    })
}

/// Number of lines after `t` doublings of `seed`.
pub fn lines_after(seed: Seed, t: u32) -> usize {
    (seed.lines() - 1) * (1usize << t) + 1
}

/// Builds `seed` and doubles it `t` times. Without an explicit `eps`, the
/// near-axis anchors sit at `min(default, n_t^-3)` for the final size `n_t`.
pub fn iterate_duplication(
    seed: Seed,
    t: u32,
    eps: Option<Rational>,
    precision: u32,
) -> Result<(LineArrangement, Vec<RoundReport>), GeometryError> {
    let eps = eps.unwrap_or_else(|| {
        let n_t = lines_after(seed, t) as u32;
        let schedule = Rational::from(1) / power(n_t, 3);
        let default = seed.default_eps();
        if schedule < default {
            schedule
        } else {
            default
        }
    });
    let mut a = seed.build(&eps)?;
    a.precision = precision;
    let (w, report) = a.count()?;
    a.precision = w.precision;
    let mut rounds = vec![RoundReport {
        round: 0,
        lines: a.len(),
        triangles: report.triangle_count,
        precision: w.precision,
    }];
    for round in 1..=t {
        let d = duplicate_certified(&a)?;
        rounds.push(RoundReport {
            round,
            lines: d.arrangement.len(),
            triangles: d.triangles,
            precision: d.precision,
        });
        a = d.arrangement;
    }
    Ok((a, rounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hexagonal7, Line};

    #[test]
    fn rejects_missing_axis() {
        let a = LineArrangement::new(
            vec![
                Line::new(Scalar::int(1), Scalar::int(0)),
                Line::new(Scalar::int(-1), Scalar::int(1)),
                Line::new(Scalar::int(2), Scalar::int(3)),
            ],
            128,
        );
        assert!(matches!(
            duplicate(&a),
            Err(GeometryError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn rejects_wrong_anchor_pattern() {
        let mut a = hexagonal7(&Rational::from((1, 1000))).unwrap();
        a.lines[0].anchor = Scalar::tan_pi(-1, 5);
        assert!(matches!(
            duplicate(&a),
            Err(GeometryError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn rejects_axis_with_too_few_triangles() {
        // Two lines through small anchors and the axis: n = 2 wants the
        // axis in one triangle; moving one line far away breaks nothing but
        // the anchor window.
        let a = LineArrangement::new(
            vec![
                Line::axis(),
                Line::new(Scalar::int(1), Scalar::ratio(-1, 4)),
                Line::new(Scalar::int(-1), Scalar::ratio(1, 4)),
            ],
            128,
        );
        let d = duplicate_certified(&a).unwrap();
        assert_eq!((d.base_triangles, d.triangles, d.axis_contact), (1, 5, 3));

        let far = LineArrangement::new(
            vec![
                Line::axis(),
                Line::new(Scalar::int(1), Scalar::ratio(-1, 4)),
                Line::new(Scalar::int(-1), Scalar::ratio(3, 4)),
            ],
            128,
        );
        assert!(matches!(
            duplicate(&far),
            Err(GeometryError::PreconditionFailed(_))
        ));
    }
}
