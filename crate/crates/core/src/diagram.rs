//! Wiring diagrams: `n` wires on horizontal tracks, read left to right as a
//! sequence of columns of simultaneous switches.
//!
//! Rows are 1-based gap indices: a cross at row `i` swaps the wires at
//! 0-based positions `i - 1` and `i`. Wires are identified by their 0-based
//! position at the far left, so the initial order is the identity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid column: {0}")]
    InvalidColumn(String),
    #[error("invalid crossing: wires {0} and {1} have already crossed")]
    InvalidCrossing(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// A set of pairwise non-adjacent rows switched at the same x-position.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Column(Vec<usize>);

impl Column {
    /// Builds a column from rows in any order. Rows must be distinct, `>= 1`,
    /// and no two may differ by one.
    pub fn new(mut rows: Vec<usize>) -> Result<Self, DiagramError> {
        rows.sort_unstable();
        if rows.is_empty() {
            return Err(DiagramError::InvalidColumn("empty column".into()));
        }
        if rows[0] == 0 {
            return Err(DiagramError::InvalidColumn("rows are 1-based".into()));
        }
        for w in rows.windows(2) {
            if w[1] - w[0] < 2 {
                return Err(DiagramError::InvalidColumn(format!(
                    "rows {} and {} are adjacent or repeated",
                    w[0], w[1]
                )));
            }
        }
        Ok(Column(rows))
    }

    pub(crate) fn from_sorted_unchecked(rows: Vec<usize>) -> Self {
        debug_assert!(Column::new(rows.clone()).is_ok());
        Column(rows)
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, row: usize) -> bool {
        self.0.binary_search(&row).is_ok()
    }

    /// True if a cross at `row` could not move into this column: the column
    /// already switches `row - 1`, `row` or `row + 1`.
    pub fn blocks(&self, row: usize) -> bool {
        self.contains(row) || self.contains(row + 1) || (row > 1 && self.contains(row - 1))
    }
}

impl TryFrom<Vec<usize>> for Column {
    type Error = DiagramError;
    fn try_from(rows: Vec<usize>) -> Result<Self, Self::Error> {
        Column::new(rows)
    }
}

impl From<Column> for Vec<usize> {
    fn from(c: Column) -> Self {
        c.0
    }
}

/// Position-to-wire map at some column prefix.
///
/// Two wires have crossed exactly when their relative order is inverted,
/// since every pair crosses at most once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireState {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl WireState {
    pub fn identity(n: usize) -> Self {
        WireState {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// Wire currently at each position, top to bottom.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn wire_at(&self, position: usize) -> usize {
        self.order[position]
    }

    pub fn position_of(&self, wire: usize) -> usize {
        self.position[wire]
    }

    pub fn crossed(&self, a: usize, b: usize) -> bool {
        a != b && (a < b) != (self.position[a] < self.position[b])
    }

    /// Whether the wires at positions `row - 1` and `row` may still cross.
    pub fn can_cross(&self, row: usize) -> bool {
        self.order[row - 1] < self.order[row]
    }

    /// Applies one switch at `row` without checking it.
    pub(crate) fn swap_row(&mut self, row: usize) {
        let (a, b) = (self.order[row - 1], self.order[row]);
        self.order.swap(row - 1, row);
        self.position[a] = row;
        self.position[b] = row - 1;
    }

    fn check_column(&self, column: &Column) -> Result<(), DiagramError> {
        let n = self.order.len();
        for &row in column.rows() {
            if row >= n {
                return Err(DiagramError::InvalidColumn(format!(
                    "row {row} out of range 1..{}",
                    n.saturating_sub(1)
                )));
            }
            if !self.can_cross(row) {
                let (a, b) = (self.order[row - 1], self.order[row]);
                return Err(DiagramError::InvalidCrossing(a.min(b), a.max(b)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WiringDiagram {
    n: usize,
    columns: Vec<Column>,
    crossings: usize,
    order: Vec<usize>,
}

impl WiringDiagram {
    pub fn new(n: usize) -> Result<Self, DiagramError> {
        if n == 0 {
            return Err(DiagramError::InvalidParameter(
                "a diagram needs at least one wire".into(),
            ));
        }
        Ok(WiringDiagram {
            n,
            columns: Vec::new(),
            crossings: 0,
            order: (0..n).collect(),
        })
    }

    /// Builds a diagram by pushing each column in turn.
    pub fn from_columns(n: usize, columns: Vec<Column>) -> Result<Self, DiagramError> {
        let mut d = WiringDiagram::new(n)?;
        for c in columns {
            d.push_column(c)?;
        }
        Ok(d)
    }

    /// Convenience constructor from raw row lists.
    pub fn from_rows(n: usize, columns: &[&[usize]]) -> Result<Self, DiagramError> {
        let mut d = WiringDiagram::new(n)?;
        for rows in columns {
            d.push_column(Column::new(rows.to_vec())?)?;
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn max_crossings(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Wire order after the last column, top to bottom.
    pub fn final_order(&self) -> &[usize] {
        &self.order
    }

    pub fn state(&self) -> WireState {
        let mut position = vec![0; self.n];
        for (p, &w) in self.order.iter().enumerate() {
            position[w] = p;
        }
        WireState {
            order: self.order.clone(),
            position,
        }
    }

    pub fn push_column(&mut self, column: Column) -> Result<(), DiagramError> {
        let mut state = self.state();
        state.check_column(&column)?;
        for &row in column.rows() {
            state.swap_row(row);
        }
        self.crossings += column.len();
        self.order = state.order;
        self.columns.push(column);
        Ok(())
    }

    /// Returns a copy extended by `column`.
    pub fn with_column(&self, column: Column) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        d.push_column(column)?;
        Ok(d)
    }

    /// Prefix made of the first `k` columns.
    pub fn prefix(&self, k: usize) -> WiringDiagram {
        WiringDiagram::from_columns(self.n, self.columns[..k].to_vec())
            .expect("prefix of a valid diagram is valid")
    }

    pub fn is_complete(&self) -> bool {
        self.crossings == self.max_crossings()
    }

    /// True when no cross can move one column to the left.
    pub fn is_leftmost_canonical(&self) -> bool {
        self.columns
            .windows(2)
            .all(|w| w[1].rows().iter().all(|&row| w[0].blocks(row)))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.columns.len());
        for c in &self.columns {
            let rows: Vec<String> = c.rows().iter().map(|r| r.to_string()).collect();
            out.push_str(&rows.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (header_line, header) = loop {
            match lines.next() {
                Some((_, l)) if l.starts_with('#') || l.trim().is_empty() => continue,
                Some(h) => break h,
                None => {
                    return Err(ParseError {
                        line: 1,
                        message: "missing header".into(),
                    })
                }
            }
        };
        let err = |line: usize, message: String| ParseError { line, message };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(header_line, "header must be \"n m\"".into()));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| err(header_line, format!("bad wire count {:?}", fields[0])))?;
        let m: usize = fields[1]
            .parse()
            .map_err(|_| err(header_line, format!("bad column count {:?}", fields[1])))?;
        let mut d = WiringDiagram::new(n).map_err(|e| err(header_line, e.to_string()))?;
        for k in 0..m {
            let (line_no, line) = lines.next().ok_or_else(|| {
                err(
                    header_line + k + 1,
                    format!("expected {m} columns, got {k}"),
                )
            })?;
            let rows = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| err(line_no, format!("bad row {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let column = Column::new(rows).map_err(|e| err(line_no, e.to_string()))?;
            d.push_column(column)
                .map_err(|e| err(line_no, e.to_string()))?;
        }
        for (line_no, line) in lines {
            if !line.trim().is_empty() {
                return Err(err(line_no, "trailing content after last column".into()));
            }
        }
        Ok(d)
    }
}

impl fmt::Display for WiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for WiringDiagram {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WiringDiagram::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_diagram() {
        let d = WiringDiagram::new(3).unwrap();
        assert_eq!(d.crossings(), 0);
        assert_eq!(d.final_order(), &[0, 1, 2]);
        assert!(WiringDiagram::new(1).unwrap().is_complete());
        let d5 = WiringDiagram::new(5).unwrap();
        assert_eq!((d5.crossings(), d5.max_crossings()), (0, 10));
        assert!(matches!(
            WiringDiagram::new(0),
            Err(DiagramError::InvalidParameter(_))
        ));
    }

    #[test]
    fn three_wire_reversal() {
        let d = WiringDiagram::from_rows(3, &[&[1], &[2], &[1]]).unwrap();
        assert!(d.is_complete());
        assert_eq!(d.final_order(), &[2, 1, 0]);
        let partial = WiringDiagram::from_rows(3, &[&[1], &[2]]).unwrap();
        assert!(!partial.is_complete());
    }

    #[test]
    fn recrossing_rejected() {
        let err = WiringDiagram::from_rows(3, &[&[1], &[1]]).unwrap_err();
        assert_eq!(err, DiagramError::InvalidCrossing(0, 1));
    }

    #[test]
    fn adjacent_rows_rejected() {
        assert!(matches!(
            Column::new(vec![1, 2]),
            Err(DiagramError::InvalidColumn(_))
        ));
        assert!(matches!(
            Column::new(vec![]),
            Err(DiagramError::InvalidColumn(_))
        ));
        assert!(matches!(
            WiringDiagram::from_rows(4, &[&[3, 4]]),
            Err(DiagramError::InvalidColumn(_))
        ));
    }

    #[test]
    fn canonical_form() {
        let d = WiringDiagram::from_rows(3, &[&[1], &[2], &[1]]).unwrap();
        assert!(d.is_leftmost_canonical());
        let d = WiringDiagram::from_rows(4, &[&[1], &[3]]).unwrap();
        assert!(!d.is_leftmost_canonical());
        let d = WiringDiagram::from_rows(4, &[&[1, 3]]).unwrap();
        assert!(d.is_leftmost_canonical());
    }

    #[test]
    fn wire_state_crossed() {
        let d = WiringDiagram::from_rows(4, &[&[1, 3], &[2]]).unwrap();
        let s = d.state();
        assert!(s.crossed(0, 1) && s.crossed(1, 0) && s.crossed(2, 3) && s.crossed(0, 3));
        assert!(!s.crossed(0, 2) && !s.crossed(1, 3) && !s.crossed(2, 2));
    }

    #[test]
    fn parse_and_write() {
        let d: WiringDiagram = "3 3\n1\n2\n1\n".parse().unwrap();
        assert!(d.is_complete());
        assert_eq!(d.to_text(), "3 3\n1\n2\n1\n");
        let with_comment: WiringDiagram = "# three wires\n3 3\n1\n2\n1\n".parse().unwrap();
        assert_eq!(with_comment, d);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = WiringDiagram::parse("3 1\n1 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = WiringDiagram::parse("3 2\n1\n1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = WiringDiagram::parse("3 1\n5\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = WiringDiagram::parse("3\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = WiringDiagram::parse("3 2\n1\n").unwrap_err();
        assert_eq!(e.line, 3);
    }
}
