//! Closed-form upper bounds on triangle counts, the table of known values
//! for `3 <= n <= 30`, and the infinite families of maximal arrangements.
//!
//! All arithmetic is on integers. The affine even bound `n(n - 7/3)/3` is
//! evaluated as `n(3n - 7)/9`.
//!
//! Adding one line to a perfect affine arrangement of `n - 1` lines with
//! `n - 1 = 3, 5 (mod 6)` gives at least `n(n - 5/2)/3` triangles; no even
//! `n` is known to do better, so the true affine even maximum lies between
//! that and the bound below.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    Affine,
    Projective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lines,
    Pseudolines,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("n = {0} is outside the domain n >= 3")]
    OutOfDomain(u64),
    #[error("no tabulated data for n = {0} (table covers 3..=30)")]
    NoData(u64),
}

pub const TABLE_MIN: u64 = 3;
pub const TABLE_MAX: u64 = 30;

pub fn formula_upper(n: u64, setting: Setting) -> Result<u64, BoundsError> {
    if n < 3 {
        return Err(BoundsError::OutOfDomain(n));
    }
    let odd = n % 2 == 1;
    Ok(match setting {
        Setting::Affine if odd => n * (n - 2) / 3,
        Setting::Affine => n * (3 * n - 7) / 9,
        // Three lines cut the projective plane into four triangles.
        Setting::Projective if n == 3 => 4,
        Setting::Projective if odd => n * (n - 2) / 3,
        Setting::Projective if n % 6 == 2 => n * (n - 1) / 3 - 1,
        Setting::Projective => n * (n - 1) / 3,
    })
}

/// Affine pseudo-line bound for `n >= 3`, as a plain count.
pub(crate) fn affine_pseudoline_cap(n: usize) -> usize {
    formula_upper(n as u64, Setting::Affine).expect("n >= 3") as usize
}

/// Marks carried by a table entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Flags {
    /// The lower value is realized by straight lines.
    pub stretchable: bool,
    /// The lower value is strictly below the closed-form bound.
    pub below_bound: bool,
    /// The entry was known before.
    pub previously_known: bool,
    /// Only the upper bound of a range entry was known before.
    pub bound_previously_known: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub n: u64,
    pub setting: Setting,
    pub kind: Kind,
    pub formula_upper: u64,
    pub known_lower: Option<u64>,
    pub known_upper: Option<u64>,
    pub exact: bool,
    pub flags: Flags,
}

#[derive(Clone, Copy)]
struct Entry {
    lower: u64,
    upper: u64,
    flags: Flags,
}

const fn e(lower: u64, upper: u64, bold: bool, under: bool, grey: bool, grey_bound: bool) -> Entry {
    Entry {
        lower,
        upper,
        flags: Flags {
            stretchable: bold,
            below_bound: under,
            previously_known: grey,
            bound_previously_known: grey_bound,
        },
    }
}

const B: bool = true;
const U: bool = true;
const G: bool = true;
const O: bool = false;

/// Projective pseudo-line maxima, n = 3..=30.
const PROJECTIVE: [Entry; 28] = [
    e(4, 4, B, O, G, O),
    e(4, 4, B, O, G, O),
    e(5, 5, B, O, G, O),
    e(10, 10, B, O, G, O),
    e(11, 11, B, O, G, O),
    e(16, 16, B, U, G, O),
    e(21, 21, B, O, G, O),
    e(30, 30, B, O, G, O),
    e(32, 33, B, U, G, O),
    e(42, 42, O, U, G, O),
    e(47, 47, B, O, O, O),
    e(58, 59, B, U, O, G),
    e(65, 65, B, O, G, O),
    e(80, 80, B, O, G, O),
    e(85, 85, B, O, G, O),
    e(102, 102, B, O, G, O),
    e(107, 107, O, O, O, O),
    e(124, 125, O, U, O, G),
    e(133, 133, O, O, G, O),
    e(154, 154, O, O, G, O),
    e(161, 161, O, O, G, O),
    e(184, 184, O, O, G, O),
    e(191, 191, B, O, O, O),
    e(214, 215, B, U, O, G),
    e(225, 225, O, O, G, O),
    e(252, 252, O, O, G, O),
    e(261, 261, B, O, O, O),
    e(290, 290, B, O, O, O),
];

/// Affine pseudo-line maxima, n = 3..=30.
const AFFINE: [Entry; 28] = [
    e(1, 1, B, O, G, O),
    e(2, 2, B, O, G, O),
    e(5, 5, B, O, G, O),
    e(7, 7, B, O, O, O),
    e(11, 11, B, O, G, O),
    e(14, 14, B, U, O, O),
    e(21, 21, B, O, G, O),
    e(25, 25, B, O, O, O),
    e(32, 32, B, U, O, O),
    e(37, 37, B, U, O, O),
    e(47, 47, B, O, O, O),
    e(53, 53, B, U, O, O),
    e(65, 65, B, O, G, O),
    e(72, 72, B, O, O, O),
    e(85, 85, B, O, G, O),
    e(93, 94, B, U, O, O),
    e(107, 107, O, O, O, O),
    e(116, 117, O, U, O, O),
    e(133, 133, O, O, G, O),
    e(143, 144, O, U, O, O),
    e(161, 161, O, O, G, O),
    e(172, 173, O, U, O, O),
    e(191, 191, B, O, O, O),
    e(203, 205, B, U, O, O),
    e(225, 225, O, O, G, O),
    e(238, 239, O, U, O, O),
    e(261, 261, B, O, O, O),
    e(275, 276, B, U, O, O),
];

fn entry(n: u64, setting: Setting) -> Option<Entry> {
    if !(TABLE_MIN..=TABLE_MAX).contains(&n) {
        return None;
    }
    let i = (n - TABLE_MIN) as usize;
    Some(match setting {
        Setting::Affine => AFFINE[i],
        Setting::Projective => PROJECTIVE[i],
    })
}

/// The four records for `n`: affine and projective, pseudo-lines and lines.
///
/// Line values are only bracketed by the table: a stretchable lower value
/// is a lower bound for lines, and the pseudo-line maximum is an upper bound.
pub fn known_values(n: u64) -> Result<Vec<BoundRecord>, BoundsError> {
    if !(TABLE_MIN..=TABLE_MAX).contains(&n) {
        return Err(BoundsError::NoData(n));
    }
    let mut out = Vec::with_capacity(4);
    for setting in [Setting::Affine, Setting::Projective] {
        let e = entry(n, setting).expect("n in table range");
        let formula = formula_upper(n, setting)?;
        out.push(BoundRecord {
            n,
            setting,
            kind: Kind::Pseudolines,
            formula_upper: formula,
            known_lower: Some(e.lower),
            known_upper: Some(e.upper),
            exact: e.lower == e.upper,
            flags: e.flags,
        });
        let lower = e.flags.stretchable.then_some(e.lower);
        out.push(BoundRecord {
            n,
            setting,
            kind: Kind::Lines,
            formula_upper: formula,
            known_lower: lower,
            known_upper: Some(e.upper),
            exact: lower == Some(e.upper),
            flags: e.flags,
        });
    }
    Ok(out)
}

pub fn known_record(n: u64, setting: Setting, kind: Kind) -> Result<BoundRecord, BoundsError> {
    known_values(n)?
        .into_iter()
        .find(|r| r.setting == setting && r.kind == kind)
        .ok_or(BoundsError::NoData(n))
}

/// Infinite families of maximal arrangements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `14·2^t + 1` lines, perfect.
    Fourteen,
    /// `6·2^t + 1` lines, one short of perfect.
    Six,
    /// `18·2^t + 1` pseudo-lines, one short of perfect.
    Eighteen,
    /// `2·2^t + 2` projective lines, perfect.
    ProjectiveTwo,
}

/// Returns `(n, triangles)` for member `t` of a family.
pub fn sequence_value(family: Family, t: u32) -> (u64, u64) {
    let p = 1u64 << t;
    match family {
        Family::Fourteen => {
            let n = 14 * p + 1;
            (n, n * (n - 2) / 3)
        }
        Family::Six | Family::Eighteen => {
            let n = if family == Family::Six {
                6 * p + 1
            } else {
                18 * p + 1
            };
            (n, (n * (n - 2) - 2) / 3)
        }
        Family::ProjectiveTwo => {
            let n = 2 * p + 2;
            (n, n * (n - 1) / 3)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Consistent,
    Inconsistent,
    Undetermined,
}

fn perfect(e: Entry, target_num: u64) -> Option<bool> {
    if !target_num.is_multiple_of(3) {
        return Some(false);
    }
    let target = target_num / 3;
    if e.lower >= target {
        Some(true)
    } else if e.upper < target {
        Some(false)
    } else {
        None
    }
}

/// Checks the table against: `n` pseudo-lines are perfect projectively iff
/// `n - 1` are perfect affinely (put one line at infinity).
pub fn affine_projective_relation(n: u64) -> Relation {
    if n < 4 {
        return Relation::Undetermined;
    }
    let (Some(p), Some(a)) = (entry(n, Setting::Projective), entry(n - 1, Setting::Affine)) else {
        return Relation::Undetermined;
    };
    let m = n - 1;
    match (perfect(p, n * (n - 1)), perfect(a, m * (m - 2))) {
        (Some(x), Some(y)) if x == y => Relation::Consistent,
        (Some(_), Some(_)) => Relation::Inconsistent,
        _ => Relation::Undetermined,
    }
}
