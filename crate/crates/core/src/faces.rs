//! Face classification by a left-to-right sweep over a wiring diagram.
//!
//! A bounded face lives in one gap between adjacent tracks. It opens at a
//! cross in its row, closes at the next cross in the same row, and picks up
//! one extra vertex for every cross in a neighbouring row in between. It is a
//! triangle exactly when it has one such intermediate vertex.
//!
//! The sweep also tracks which bounded segments can no longer border a
//! triangle. A face is *dead* once it is known not to be a triangle: it is
//! unbounded on the left, has two or more intermediate vertices, closed as a
//! non-triangle, or shares a side with a triangle. A segment with two dead
//! faces is provably unused, and stays so under any extension.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::diagram::{Column, WireState, WiringDiagram};

/// A piece of a wire between consecutive crossings. `index` counts the
/// crossings to its left, so `0` and `n - 1` are the unbounded ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SegmentId {
    pub wire: usize,
    pub index: usize,
}

/// A triangle, identified by the column of its opening cross and its row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle {
    pub column: usize,
    pub row: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReport {
    pub n: usize,
    pub complete: bool,
    pub triangle_count: usize,
    pub triangles: Vec<Triangle>,
    pub used: BTreeSet<SegmentId>,
    /// All unused bounded segments for a complete diagram; the provably
    /// unused ones otherwise.
    pub unused: BTreeSet<SegmentId>,
    /// Distinct triangles touching each wire.
    pub wire_contact: Vec<usize>,
}

impl FaceReport {
    pub fn bounded_segments(&self) -> usize {
        self.n * self.n.saturating_sub(2)
    }

    pub fn is_perfect(&self) -> bool {
        self.complete && self.unused.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialReport {
    pub closed_triangles: usize,
    pub provably_unused: usize,
}

pub fn count_triangles(d: &WiringDiagram) -> FaceReport {
    let sweep = Sweep::run(d);
    let report = sweep.report();
    if report.complete && d.n() >= 4 {
        let cap = bounds::affine_pseudoline_cap(d.n());
        assert!(
            report.triangle_count <= cap,
            "{} triangles on {} wires exceeds the upper bound {cap}",
            report.triangle_count,
            d.n()
        );
    }
    report
}

pub fn partial_report(d: &WiringDiagram) -> PartialReport {
    Sweep::run(d).partial()
}

type FaceId = u32;
type SegIdx = u32;

/// Shared face for everything already known to be unbounded on the left.
const UNBOUNDED: FaceId = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Open(u8),
    Triangle,
    Dead,
}

#[derive(Debug, Clone, Copy)]
struct Face {
    status: Status,
    opened: u32,
    // A live face has at most three sides: two from its opening vertex and
    // one from its single intermediate vertex.
    segs: [SegIdx; 3],
    len: u8,
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    wire: u32,
    index: u32,
    above: FaceId,
    below: FaceId,
    used: bool,
}

/// Incremental sweep state; cloned per node by the search.
#[derive(Debug, Clone)]
pub(crate) struct Sweep {
    n: usize,
    state: WireState,
    columns: usize,
    crossings: usize,
    wire_crossings: Vec<u32>,
    faces: Vec<Face>,
    segs: Vec<Seg>,
    gap_face: Vec<FaceId>,
    closed_triangles: usize,
    provably_unused: usize,
    triangles: Vec<Triangle>,
    finalized: bool,
}

impl Sweep {
    pub(crate) fn new(n: usize) -> Self {
        let dead = Face {
            status: Status::Dead,
            opened: 0,
            segs: [0; 3],
            len: 0,
        };
        Sweep {
            n,
            state: WireState::identity(n),
            columns: 0,
            crossings: 0,
            wire_crossings: vec![0; n],
            faces: vec![dead],
            segs: Vec::with_capacity(n * n),
            gap_face: vec![UNBOUNDED; n + 1],
            closed_triangles: 0,
            provably_unused: 0,
            triangles: Vec::new(),
            finalized: n < 2,
        }
    }

    pub(crate) fn run(d: &WiringDiagram) -> Self {
        let mut s = Sweep::new(d.n());
        for c in d.columns() {
            s.apply(c);
        }
        s
    }

    pub(crate) fn state(&self) -> &WireState {
        &self.state
    }

    pub(crate) fn closed_triangles(&self) -> usize {
        self.closed_triangles
    }

    pub(crate) fn provably_unused(&self) -> usize {
        self.provably_unused
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.crossings == self.n * (self.n - 1) / 2
    }

    pub(crate) fn partial(&self) -> PartialReport {
        PartialReport {
            closed_triangles: self.closed_triangles,
            provably_unused: self.provably_unused,
        }
    }

    /// Applies a column assumed valid for the current state.
    pub(crate) fn apply(&mut self, column: &Column) {
        for &row in column.rows() {
            self.cross(row);
        }
        self.columns += 1;
        if self.is_complete() && !self.finalized {
            // Whatever is still open is unbounded on the right.
            for g in 1..self.n {
                let f = self.gap_face[g];
                self.kill(f);
            }
            self.finalized = true;
        }
    }

    fn is_dead(&self, f: FaceId) -> bool {
        self.faces[f as usize].status == Status::Dead
    }

    fn bounded(&self, s: &Seg) -> bool {
        s.index >= 1 && (s.index as usize) + 2 <= self.n
    }

    fn kill(&mut self, f: FaceId) {
        let face = self.faces[f as usize];
        if !matches!(face.status, Status::Open(_)) {
            return;
        }
        self.faces[f as usize].status = Status::Dead;
        for &si in &face.segs[..face.len as usize] {
            let s = self.segs[si as usize];
            let other = if s.above == f { s.below } else { s.above };
            if self.bounded(&s) && self.is_dead(other) {
                self.provably_unused += 1;
            }
        }
    }

    fn add_vertex(&mut self, f: FaceId) {
        if let Status::Open(k) = self.faces[f as usize].status {
            if k >= 1 {
                self.kill(f);
            } else {
                self.faces[f as usize].status = Status::Open(k + 1);
            }
        }
    }

    fn close(&mut self, f: FaceId, row: usize) {
        let face = self.faces[f as usize];
        match face.status {
            Status::Open(1) => {
                debug_assert_eq!(face.len, 3);
                self.faces[f as usize].status = Status::Triangle;
                self.closed_triangles += 1;
                self.triangles.push(Triangle {
                    column: face.opened as usize,
                    row,
                });
                for &si in &face.segs[..3] {
                    self.segs[si as usize].used = true;
                    let s = self.segs[si as usize];
                    let other = if s.above == f { s.below } else { s.above };
                    // A segment borders at most one triangle.
                    self.kill(other);
                }
            }
            _ => self.kill(f),
        }
    }

    fn new_segment(&mut self, wire: usize, above: FaceId, below: FaceId) {
        self.wire_crossings[wire] += 1;
        let seg = Seg {
            wire: wire as u32,
            index: self.wire_crossings[wire],
            above,
            below,
            used: false,
        };
        let si = self.segs.len() as SegIdx;
        if self.bounded(&seg) && self.is_dead(above) && self.is_dead(below) {
            self.provably_unused += 1;
        }
        self.segs.push(seg);
        for f in [above, below] {
            let face = &mut self.faces[f as usize];
            if matches!(face.status, Status::Open(_)) {
                face.segs[face.len as usize] = si;
                face.len += 1;
            }
        }
    }

    fn cross(&mut self, row: usize) {
        let top = self.state.wire_at(row - 1);
        let bottom = self.state.wire_at(row);
        let up = self.gap_face[row - 1];
        let mid = self.gap_face[row];
        let down = self.gap_face[row + 1];

        self.close(mid, row);
        self.add_vertex(up);
        self.add_vertex(down);

        let fresh = self.faces.len() as FaceId;
        self.faces.push(Face {
            status: Status::Open(0),
            opened: self.columns as u32,
            segs: [0; 3],
            len: 0,
        });
        self.gap_face[row] = fresh;
        // `top` moves down into position `row`, `bottom` moves up.
        self.new_segment(bottom, up, fresh);
        self.new_segment(top, fresh, down);

        self.state.swap_row(row);
        self.crossings += 1;
    }

    pub(crate) fn report(&self) -> FaceReport {
        let complete = self.is_complete();
        let mut used = BTreeSet::new();
        let mut unused = BTreeSet::new();
        let mut wire_contact = vec![0; self.n];
        for s in &self.segs {
            if !self.bounded(s) {
                continue;
            }
            let id = SegmentId {
                wire: s.wire as usize,
                index: s.index as usize,
            };
            if s.used {
                used.insert(id);
                wire_contact[id.wire] += 1;
            } else if self.is_dead(s.above) && self.is_dead(s.below) {
                unused.insert(id);
            }
        }
        let mut triangles = self.triangles.clone();
        triangles.sort();
        FaceReport {
            n: self.n,
            complete,
            triangle_count: self.closed_triangles,
            triangles,
            used,
            unused,
            wire_contact,
        }
    }
}
