//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;
use trimax::bounds::{formula_upper, known_record, Kind, Setting};
use trimax::diagram::WiringDiagram;
use trimax::faces::{count_triangles, partial_report};
use trimax::geometry::{duplicate_certified, hexagonal7, iterate_duplication, simmons15, Seed};
use trimax::search::{
    canonical_complete_diagrams, depth_first_search, verify_witness, SearchConfig,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn search_maxima() -> Check {
    let mut found = Vec::new();
    for n in 3..=7 {
        let r =
            depth_first_search(&SearchConfig::new(n).exhaustive()).map_err(|e| e.to_string())?;
        ensure(r.complete, || format!("n={n} search incomplete"))?;
        found.push(r.best_count);
    }
    ensure(found == [1, 2, 5, 7, 11], || {
        format!("n=3..7 gave {found:?}")
    })?;
    let none = depth_first_search(&SearchConfig::new(8).with_target(15).exhaustive())
        .map_err(|e| e.to_string())?;
    ensure(none.witness.is_none() && none.complete, || {
        "n=8 reached 15".into()
    })?;
    let r = depth_first_search(&SearchConfig::new(8).exhaustive()).map_err(|e| e.to_string())?;
    ensure(r.best_count == 14 && r.complete, || {
        format!("n=8 best {}", r.best_count)
    })?;
    ensure(verify_witness(r.witness.as_ref().unwrap(), 14), || {
        "n=8 witness".into()
    })?;
    Ok(format!(
        "n=3..7 -> {found:?}; n=8 best=14 complete, 15 excluded"
    ))
}

fn perfect_nine() -> Check {
    let start = Instant::now();
    let r = depth_first_search(&SearchConfig::new(9).with_target(21).with_budget(0))
        .map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let w = r.witness.ok_or("no witness")?;
    ensure(verify_witness(&w, 21), || "witness does not verify".into())?;
    let report = count_triangles(&w);
    ensure(report.used.len() == 63 && report.unused.is_empty(), || {
        format!("used {} unused {}", report.used.len(), report.unused.len())
    })?;
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("21 triangles, 63/63 segments used, {secs:.3}s"))
}

fn seeds() -> Check {
    let hex = hexagonal7(&Rational::from((1, 1000))).map_err(|e| e.to_string())?;
    let (w, r) = hex.count().map_err(|e| e.to_string())?;
    let contact = r.wire_contact[w.wire_of_line[hex.axis_index().unwrap()]];
    ensure(r.triangle_count == 11 && contact == 5, || {
        format!(
            "hexagonal: {} triangles, axis contact {contact}",
            r.triangle_count
        )
    })?;
    let sim = simmons15(&Rational::from((1, 10_000))).map_err(|e| e.to_string())?;
    let (_, r) = sim.count().map_err(|e| e.to_string())?;
    ensure(r.triangle_count == 65 && r.unused.is_empty(), || {
        format!(
            "15 lines: {} triangles, {} unused",
            r.triangle_count,
            r.unused.len()
        )
    })?;
    Ok("7 lines: 11 triangles, axis contact 5; 15 lines: 65 triangles, 0 unused".into())
}

fn doubling() -> Check {
    let mut notes = Vec::new();
    for (a, want) in [
        (hexagonal7(&Rational::from((1, 1000))), (13, 47)),
        (simmons15(&Rational::from((1, 10_000))), (29, 261)),
    ] {
        let a = a.map_err(|e| e.to_string())?;
        let d = duplicate_certified(&a).map_err(|e| e.to_string())?;
        let n = d.arrangement.len();
        ensure((n, d.triangles) == want && d.axis_contact == n - 2, || {
            format!(
                "got {n} lines, {} triangles, axis contact {}",
                d.triangles, d.axis_contact
            )
        })?;
        notes.push(format!("{n}:{}", d.triangles));
    }
    for (seed, want) in [(Seed::Hexagonal7, (25, 191)), (Seed::Simmons15, (57, 1045))] {
        let (a, rounds) = iterate_duplication(seed, 2, None, 256).map_err(|e| e.to_string())?;
        let last = rounds.last().unwrap();
        ensure((a.len(), last.triangles) == want, || {
            format!(
                "{seed:?} t=2 gave {} lines, {} triangles",
                a.len(),
                last.triangles
            )
        })?;
        notes.push(format!(
            "{}:{} @{}b",
            a.len(),
            last.triangles,
            last.precision
        ));
    }
    Ok(format!("lines:triangles {}", notes.join(", ")))
}

fn formulas() -> Check {
    let affine = [
        (18, 94),
        (20, 117),
        (22, 144),
        (24, 173),
        (26, 205),
        (28, 239),
        (30, 276),
    ];
    let projective = [(11, 33), (14, 59), (20, 125), (26, 215)];
    for (n, v) in affine {
        let f = formula_upper(n, Setting::Affine).unwrap();
        ensure(f == v, || format!("affine n={n}: {f} != {v}"))?;
    }
    for (n, v) in projective {
        let f = formula_upper(n, Setting::Projective).unwrap();
        ensure(f == v, || format!("projective n={n}: {f} != {v}"))?;
    }
    // Every pseudo-line entry not marked as below the bound equals it.
    let mut checked = 0;
    for n in 3..=30 {
        for s in [Setting::Affine, Setting::Projective] {
            let r = known_record(n, s, Kind::Pseudolines).unwrap();
            if !r.flags.below_bound || !r.exact {
                ensure(r.known_upper == Some(r.formula_upper), || {
                    format!(
                        "n={n} {s:?}: table {:?}, formula {}",
                        r.known_upper, r.formula_upper
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("11 range bounds and {checked} table entries match"))
}

fn properties() -> Check {
    for n in 4..=9 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE + n as u64);
        let cap = formula_upper(n as u64, Setting::Affine).unwrap() as usize;
        let reversed: Vec<usize> = (0..n).rev().collect();
        for _ in 0..1000 {
            let d = common::random_complete(n, &mut rng);
            let r = count_triangles(&d);
            ensure(3 * r.triangle_count == r.used.len(), || {
                format!("3t != used on {d}")
            })?;
            ensure(r.triangle_count <= cap, || format!("over the bound on {d}"))?;
            ensure(d.final_order() == reversed.as_slice(), || {
                format!("not a reversal: {d}")
            })?;
            ensure(
                WiringDiagram::parse(&d.to_text()).as_ref() == Ok(&d),
                || format!("round trip {d}"),
            )?;
            ensure(common::oracle(&d).triangles == r.triangle_count, || {
                format!("oracle on {d}")
            })?;
        }
    }
    let mut total = 0;
    for n in 1..=5 {
        for d in canonical_complete_diagrams(n) {
            ensure(
                common::oracle(&d).triangles == count_triangles(&d).triangle_count,
                || format!("oracle mismatch on {d}"),
            )?;
            total += 1;
        }
    }
    Ok(format!(
        "6000 random diagrams, {total} canonical diagrams for n<=5"
    ))
}

fn monotonicity() -> Check {
    let mut prefixes = 0;
    for (n, best, d) in common::witnesses() {
        let mut prev = partial_report(&d.prefix(0));
        for k in 1..=d.columns().len() {
            let p = partial_report(&d.prefix(k));
            ensure(
                p.closed_triangles >= prev.closed_triangles
                    && p.provably_unused >= prev.provably_unused,
                || format!("n={n} decreases at column {k}"),
            )?;
            prev = p;
            prefixes += 1;
        }
        let full = count_triangles(&d);
        ensure(
            prev.closed_triangles == full.triangle_count
                && full.triangle_count == best
                && prev.provably_unused == full.unused.len(),
            || format!("n={n} final partial report differs from the full report"),
        )?;
    }
    Ok(format!("{prefixes} prefixes of 6 stored witnesses"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("exhaustive search maxima n=3..8", search_maxima),
        ("perfect 9-wire diagram with budget 0", perfect_nine),
        ("seed arrangements count 11 and 65", seeds),
        ("doubling construction counts", doubling),
        ("closed-form bounds", formulas),
        ("property suite on random diagrams", properties),
        ("monotone partial reports", monotonicity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
