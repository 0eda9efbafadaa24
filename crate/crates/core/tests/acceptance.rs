//! Acceptance scorecard: one line per criterion, every comparison exact
//! (tolerance zero). Runs as a plain binary so the lines always print.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use toriclib::acceptance::{run_criterion, Check, CriterionReport, CRITERIA};
use toriclib::algebra::{rat_from_int, Poly};
use toriclib::chromatic::{torus_chromatic_poly, TorusGraph};
use toriclib::Limits;

/// Placements of a horizontal and a vertical domino on the n x n torus,
/// counted cell by cell with no shared code.
fn naive_domino_pairs(n: i64, second_vertical: bool) -> u64 {
    let cells = |x: i64, y: i64, vertical: bool| -> [(i64, i64); 2] {
        let (dx, dy) = if vertical { (0, 1) } else { (1, 0) };
        [(x, y), ((x + dx) % n, (y + dy) % n)]
    };
    let mut count = 0;
    for a in 0..n * n {
        for b in 0..n * n {
            let first: HashSet<_> = cells(a % n, a / n, false).into_iter().collect();
            if cells(b % n, b / n, second_vertical)
                .iter()
                .all(|c| !first.contains(c))
            {
                count += 1;
            }
        }
    }
    if second_vertical {
        count
    } else {
        count / 2
    }
}

/// Proper colourings of a graph with `q` colours by exhaustive assignment.
fn naive_colourings(vertices: usize, edges: &[(usize, usize)], q: u64) -> u64 {
    let total = q.pow(vertices as u32);
    (0..total)
        .filter(|code| {
            let colour = |v: usize| code / q.pow(v as u32) % q;
            edges.iter().all(|&(u, v)| colour(u) != colour(v))
        })
        .count() as u64
}

fn independent_checks(id: u8, limits: &Limits) -> Vec<Check> {
    match id {
        1 => {
            let hv = Poly::from_ints(&[0, -4, 1]);
            let hh = Poly::from_ints(&[0, -3, 1]).scale(&toriclib::algebra::rat(1, 2));
            [9i64, 10]
                .iter()
                .flat_map(|&n| {
                    [
                        Check::equal(
                            format!("cell-by-cell {{H,V}} n={n}"),
                            &hv.eval_int(n * n),
                            &rat_from_int(naive_domino_pairs(n, true)),
                        ),
                        Check::equal(
                            format!("cell-by-cell {{H,H}} n={n}"),
                            &hh.eval_int(n * n),
                            &rat_from_int(naive_domino_pairs(n, false)),
                        ),
                    ]
                })
                .collect()
        }
        6 => {
            let g = TorusGraph::new(2, 3).expect("torus");
            let chi = torus_chromatic_poly(2, 3, limits).expect("chromatic polynomial");
            (0..=4u64)
                .map(|q| {
                    Check::equal(
                        format!("colourings of T^2_3 with {q} colours"),
                        &rat_from_int(naive_colourings(g.vertex_count(), &g.endpoints, q)),
                        &chi.eval_int(q as i64),
                    )
                })
                .collect()
        }
        _ => Vec::new(),
    }
}

fn main() -> ExitCode {
    let limits = Limits::default();
    let started = Instant::now();
    let mut reports: Vec<CriterionReport> = Vec::new();
    for (id, _) in CRITERIA {
        let t = Instant::now();
        let mut report = run_criterion(id, &limits);
        report.checks.extend(independent_checks(id, &limits));
        println!(
            "{}  tolerance=0  {:.2}s",
            report.summary_line(),
            t.elapsed().as_secs_f64()
        );
        for c in report.checks.iter().filter(|c| !c.passed()) {
            println!("    {} {}: {}", c.status, c.name, c.details);
        }
        reports.push(report);
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!(
        "acceptance: {passed}/{} criteria passed in {:.1}s",
        reports.len(),
        started.elapsed().as_secs_f64()
    );
    if passed == reports.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
