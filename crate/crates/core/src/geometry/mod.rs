//! Straight-line arrangements with certified arithmetic.
//!
//! Lines are `y = m·(x - a)` with exactly described parameters (see
//! [`Scalar`]). Every order decision made while converting an arrangement
//! to a wiring diagram is certified on intervals; when the working
//! precision cannot separate two values the operation fails with
//! [`GeometryError::PrecisionInsufficient`] and callers retry at a higher
//! precision.

mod builtin;
mod duplicate;
mod format;
pub mod interval;
pub mod scalar;

use std::cmp::Ordering;

use thiserror::Error;

use crate::diagram::{Column, WiringDiagram};
use crate::faces::{count_triangles, FaceReport};

pub use builtin::{hexagonal7, simmons15, Seed};
pub use duplicate::{
    duplicate, duplicate_certified, iterate_duplication, Duplication, RoundReport,
};
pub use format::parse_scalar;
pub use interval::Interval;
pub use scalar::{Derived, Evaluator, Scalar};

pub const DEFAULT_PRECISION: u32 = 256;
pub const MAX_PRECISION: u32 = 16384;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("precision of {precision} bits cannot certify the arrangement")]
    PrecisionInsufficient { precision: u32 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone)]
pub struct Line {
    pub slope: Scalar,
    pub anchor: Scalar,
}

impl Line {
    pub fn new(slope: Scalar, anchor: Scalar) -> Self {
        Line { slope, anchor }
    }

    /// The horizontal axis `y = 0`.
    pub fn axis() -> Self {
        Line::new(Scalar::int(0), Scalar::int(0))
    }

    pub fn is_axis(&self) -> bool {
        self.slope.is_exact_zero()
    }
}

#[derive(Debug, Clone)]
pub struct LineArrangement {
    pub lines: Vec<Line>,
    /// Working precision in bits.
    pub precision: u32,
}

/// Line parameters evaluated at one precision.
#[derive(Debug, Clone)]
pub struct Evaluated {
    pub slopes: Vec<Interval>,
    pub anchors: Vec<Interval>,
}

/// Crossing of lines `i` and `j`.
#[derive(Debug, Clone)]
pub struct Crossing {
    pub lines: (usize, usize),
    pub x: Interval,
    pub y: Interval,
}

impl Evaluated {
    fn insufficient(&self) -> GeometryError {
        GeometryError::PrecisionInsufficient {
            precision: self.slopes.first().map_or(0, |s| s.prec()),
        }
    }

    /// `x = (m_i a_i - m_j a_j) / (m_i - m_j)`.
    pub fn crossing_x(&self, i: usize, j: usize) -> Result<Interval, GeometryError> {
        let (mi, mj) = (&self.slopes[i], &self.slopes[j]);
        let num = mi.mul(&self.anchors[i]).sub(&mj.mul(&self.anchors[j]));
        num.div(&mi.sub(mj)).ok_or_else(|| self.insufficient())
    }

    /// `y = m_i m_j (a_i - a_j) / (m_i - m_j)`.
    pub fn crossing_y(&self, i: usize, j: usize) -> Result<Interval, GeometryError> {
        let (mi, mj) = (&self.slopes[i], &self.slopes[j]);
        let num = mi.mul(mj).mul(&self.anchors[i].sub(&self.anchors[j]));
        num.div(&mi.sub(mj)).ok_or_else(|| self.insufficient())
    }

    pub fn crossing(&self, i: usize, j: usize) -> Result<Crossing, GeometryError> {
        Ok(Crossing {
            lines: (i, j),
            x: self.crossing_x(i, j)?,
            y: self.crossing_y(i, j)?,
        })
    }
}

/// Wiring diagram of an arrangement, with the wire assigned to each line.
#[derive(Debug, Clone)]
pub struct Wiring {
    pub diagram: WiringDiagram,
    pub wire_of_line: Vec<usize>,
    pub precision: u32,
}

impl LineArrangement {
    pub fn new(lines: Vec<Line>, precision: u32) -> Self {
        LineArrangement { lines, precision }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Index of the unique horizontal line, if exactly one exists.
    pub fn axis_index(&self) -> Option<usize> {
        let mut it = self.lines.iter().enumerate().filter(|(_, l)| l.is_axis());
        match (it.next(), it.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    pub fn evaluate_at(&self, precision: u32) -> Result<Evaluated, GeometryError> {
        let mut ev = Evaluator::new(precision);
        let mut slopes = Vec::with_capacity(self.lines.len());
        let mut anchors = Vec::with_capacity(self.lines.len());
        for l in &self.lines {
            slopes.push(ev.eval(&l.slope)?);
            anchors.push(ev.eval(&l.anchor)?);
        }
        Ok(Evaluated { slopes, anchors })
    }

    pub fn evaluate(&self) -> Result<Evaluated, GeometryError> {
        self.evaluate_at(self.precision)
    }

    /// Converts at the arrangement's working precision.
    pub fn to_wiring(&self) -> Result<WiringDiagram, GeometryError> {
        self.wiring_at(self.precision).map(|w| w.diagram)
    }

    /// Converts at `precision`, keeping the line-to-wire map.
    pub fn wiring_at(&self, precision: u32) -> Result<Wiring, GeometryError> {
        let ev = self.evaluate_at(precision)?;
        wiring_from(&ev, precision)
    }

    /// Converts, doubling the precision on ambiguity up to [`MAX_PRECISION`].
    pub fn certified_wiring(&self) -> Result<Wiring, GeometryError> {
        with_precision_retry(self.precision, |p| self.wiring_at(p))
    }

    /// Certified wiring together with its face report.
    pub fn count(&self) -> Result<(Wiring, FaceReport), GeometryError> {
        let w = self.certified_wiring()?;
        let report = count_triangles(&w.diagram);
        Ok((w, report))
    }
}

/// Runs `attempt` at `start` bits, doubling while it reports insufficient
/// precision, up to [`MAX_PRECISION`].
pub fn with_precision_retry<T>(
    start: u32,
    mut attempt: impl FnMut(u32) -> Result<T, GeometryError>,
) -> Result<T, GeometryError> {
    let mut p = start.max(64);
    loop {
        match attempt(p) {
            Err(GeometryError::PrecisionInsufficient { .. }) if p < MAX_PRECISION => {
                p = (p * 2).min(MAX_PRECISION);
            }
            other => return other,
        }
    }
}

fn certified_sort(
    items: &mut [usize],
    key: impl Fn(usize) -> Interval,
    what: impl Fn(usize, usize) -> String,
    precision: u32,
) -> Result<(), GeometryError> {
    let keys: Vec<(usize, Interval)> = items.iter().map(|&i| (i, key(i))).collect();
    let mut sorted = keys;
    sorted.sort_by(|a, b| {
        a.1.midpoint()
            .partial_cmp(&b.1.midpoint())
            .unwrap_or(Ordering::Equal)
    });
    for w in sorted.windows(2) {
        match w[0].1.compare(&w[1].1) {
            Some(Ordering::Less) => {}
            Some(_) => return Err(GeometryError::InvalidArrangement(what(w[0].0, w[1].0))),
            None => return Err(GeometryError::PrecisionInsufficient { precision }),
        }
    }
    for (slot, (i, _)) in items.iter_mut().zip(sorted) {
        *slot = i;
    }
    Ok(())
}

fn wiring_from(ev: &Evaluated, precision: u32) -> Result<Wiring, GeometryError> {
    let n = ev.slopes.len();
    if n == 0 {
        return Err(GeometryError::InvalidArrangement("no lines".into()));
    }
    // Far to the left, a steeper line lies lower: wires top to bottom by
    // ascending slope.
    let mut by_slope: Vec<usize> = (0..n).collect();
    certified_sort(
        &mut by_slope,
        |i| ev.slopes[i].clone(),
        |i, j| format!("lines {i} and {j} are parallel"),
        precision,
    )?;
    let mut wire_of_line = vec![0; n];
    for (w, &l) in by_slope.iter().enumerate() {
        wire_of_line[l] = w;
    }

    let mut xs = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = ev.crossing_x(i, j)?;
            xs[i][j] = Some(x.clone());
            xs[j][i] = Some(x);
        }
    }
    // Order of crossings along each wire.
    let mut sequence: Vec<Vec<usize>> = vec![Vec::new(); n];
    for line in 0..n {
        let mut others: Vec<usize> = (0..n).filter(|&o| o != line).collect();
        certified_sort(
            &mut others,
            |o| xs[line][o].clone().expect("all pairs computed"),
            |a, b| format!("lines {line}, {a} and {b} are concurrent"),
            precision,
        )?;
        sequence[wire_of_line[line]] = others.into_iter().map(|o| wire_of_line[o]).collect();
    }

    // Topological sweep: a switch is ready when it is next on both wires.
    let mut order: Vec<usize> = (0..n).collect();
    let mut next = vec![0usize; n];
    let mut diagram = WiringDiagram::new(n).expect("n >= 1");
    let total = n * (n - 1) / 2;
    while diagram.crossings() < total {
        let mut rows = Vec::new();
        for r in 1..n {
            let (a, b) = (order[r - 1], order[r]);
            if sequence[a].get(next[a]) == Some(&b) && sequence[b].get(next[b]) == Some(&a) {
                rows.push(r);
            }
        }
        if rows.is_empty() {
            return Err(GeometryError::InvalidArrangement(
                "crossing orders are not realizable".into(),
            ));
        }
        for &r in &rows {
            let (a, b) = (order[r - 1], order[r]);
            next[a] += 1;
            next[b] += 1;
            order.swap(r - 1, r);
        }
        let column =
            Column::new(rows).map_err(|e| GeometryError::InvalidArrangement(e.to_string()))?;
        diagram
            .push_column(column)
            .map_err(|e| GeometryError::InvalidArrangement(e.to_string()))?;
    }
    Ok(Wiring {
        diagram,
        wire_of_line,
        precision,
    })
}
