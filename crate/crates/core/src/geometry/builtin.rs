//! The two seed arrangements used by the duplication families.

use std::str::FromStr;

use rug::Rational;

use super::{GeometryError, Line, LineArrangement, Scalar, DEFAULT_PRECISION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seed {
    /// 7 lines, 11 triangles.
    Hexagonal7,
    /// 15 lines, 65 triangles, perfect.
    Simmons15,
}

impl Seed {
    pub fn lines(self) -> usize {
        match self {
            Seed::Hexagonal7 => 7,
            Seed::Simmons15 => 15,
        }
    }

    pub fn triangles(self) -> usize {
        match self {
            Seed::Hexagonal7 => 11,
            Seed::Simmons15 => 65,
        }
    }

    pub fn default_eps(self) -> Rational {
        match self {
            Seed::Hexagonal7 => Rational::from((1, 1000)),
            Seed::Simmons15 => Rational::from((1, 10_000)),
        }
    }

    pub fn build(self, eps: &Rational) -> Result<LineArrangement, GeometryError> {
        match self {
            Seed::Hexagonal7 => hexagonal7(eps),
            Seed::Simmons15 => simmons15(eps),
        }
    }
}

impl FromStr for Seed {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hex7" | "hexagonal7" => Ok(Seed::Hexagonal7),
            "simmons15" | "simmons" => Ok(Seed::Simmons15),
            other => Err(GeometryError::InvalidParameter(format!(
                "unknown seed {other:?}"
            ))),
        }
    }
}

fn check_eps(eps: &Rational) -> Result<(), GeometryError> {
    if *eps <= 0 {
        return Err(GeometryError::InvalidParameter(
            "eps must be positive".into(),
        ));
    }
    Ok(())
}

fn certify(a: LineArrangement, expected: usize) -> Result<LineArrangement, GeometryError> {
    let (w, report) = a.count()?;
    if report.triangle_count != expected {
        return Err(GeometryError::ConstructionFailed(format!(
            "expected {expected} triangles, counted {}; eps too large?",
            report.triangle_count
        )));
    }
    Ok(LineArrangement {
        precision: w.precision,
        ..a
    })
}

fn line(slope: Scalar, anchor: Scalar) -> Line {
    Line::new(slope, anchor)
}

fn decimal(hundredths: i64) -> Scalar {
    Scalar::ratio(hundredths, 100)
}

/// Seven lines through the hexagonal anchors `tan(kπ/6)` plus two steep
/// lines at `∓eps`; the axis touches five triangles.
pub fn hexagonal7(eps: &Rational) -> Result<LineArrangement, GeometryError> {
    check_eps(eps)?;
    let e = Scalar::Exact(eps.clone());
    let minus_e = Scalar::Exact(Rational::from(-eps));
    let lines = vec![
        line(Scalar::int(3), Scalar::tan_pi(-2, 6)),
        line(Scalar::int(1), Scalar::tan_pi(-1, 6)),
        Line::axis(),
        line(Scalar::int(-1), Scalar::tan_pi(1, 6)),
        line(Scalar::int(-3), Scalar::tan_pi(2, 6)),
        line(Scalar::int(-7), minus_e),
        line(Scalar::int(7), e),
    ];
    certify(LineArrangement::new(lines, DEFAULT_PRECISION), 11)
}

/// A perfect arrangement of fifteen lines with anchors `tan(kπ/14)` and
/// two steep lines at `∓eps`.
pub fn simmons15(eps: &Rational) -> Result<LineArrangement, GeometryError> {
    check_eps(eps)?;
    let slopes_left = [166, 440, 328, 1440, 1310, -6500];
    let slopes_right = [-5200, -1240, -2200, -480, -530, -186];
    let mut lines = Vec::with_capacity(15);
    for (k, &m) in (-6..=-1).zip(slopes_left.iter()) {
        lines.push(line(decimal(m), Scalar::tan_pi(k, 14)));
    }
    lines.push(Line::axis());
    for (k, &m) in (1..=6).zip(slopes_right.iter()) {
        lines.push(line(decimal(m), Scalar::tan_pi(k, 14)));
    }
    lines.push(line(Scalar::int(50), Scalar::Exact(Rational::from(-eps))));
    lines.push(line(Scalar::int(-45), Scalar::Exact(eps.clone())));
    certify(LineArrangement::new(lines, DEFAULT_PRECISION), 65)
}
