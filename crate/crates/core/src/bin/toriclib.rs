//! Command-line front end to the placement polynomials and the sequences
//! built from them, with brute-force verification on request.
//!
//! Exit codes: 0 when every check passed, 1 on a failed check, 2 on bad
//! input, 3 when a size guard stopped the run.

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use toriclib::acceptance::{self, Check};
use toriclib::algebra::Poly;
use toriclib::catalogs::{builtin_json, EDGES2D_STORED_WEIGHT};
use toriclib::chromatic::{
    brute_bc_free_count, chromatic_coefficients, chromatic_poly_small, classify_cyclefree_subsets,
    TorusGraph,
};
use toriclib::counting::{
    brute_count_box, brute_count_torus, brute_sequence_value, count_as_rational, f_polynomial_box,
    f_polynomial_torus, p_sequence_via_multisets, torus_n0, Variable,
};
use toriclib::figures::enumerate_connected_edge_figures;
use toriclib::figures::io::FigureSet;
use toriclib::schema::{first_difference, q_sequence_via_schema, verify_binomial, Catalog};
use toriclib::{Error, Limits};

#[derive(Parser)]
#[command(
    name = "toriclib",
    version,
    about = "Exact placement polynomials on toroidal grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Placement polynomial of a figure multiset on the torus or the box.
    Poly(PolyArgs),
    /// The sequence q_0..q_K of a catalog by both routes, with the binomial check.
    Sequence(SequenceArgs),
    /// Chromatic coefficient polynomials of T^d_n with the broken-circuit oracles.
    Chromatic(ChromaticArgs),
    /// Run the acceptance scorecard.
    Selftest(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Lift the size guards.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct PolyArgs {
    /// Figure-set JSON file, or the name of a builtin catalog.
    #[arg(long)]
    input: String,
    /// Count placements in the box [0,n)^d instead of the torus.
    #[arg(long = "box")]
    boxed: bool,
    /// Side lengths at which to compare against brute force.
    #[arg(long, value_delimiter = ',')]
    verify_n: Vec<u64>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SequenceArgs {
    /// Catalog JSON file, or a builtin name (dominoes2d, dominoes2d_weighted, edges2d).
    #[arg(long, default_value = "dominoes2d")]
    input: String,
    /// Largest weight K.
    #[arg(long, default_value_t = 2)]
    max_weight: usize,
    /// Side lengths at which to compare every q_k against brute force.
    #[arg(long, value_delimiter = ',')]
    verify_n: Vec<u64>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ChromaticArgs {
    /// Torus dimension d.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Largest edge count K.
    #[arg(long, default_value_t = 3)]
    max_weight: usize,
    /// Side lengths at which to run the broken-circuit and good/bad oracles.
    #[arg(long, value_delimiter = ',')]
    verify_n: Vec<u64>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

/// Everything a command produces: human-readable lines plus the
/// machine-readable core.
#[derive(Serialize)]
struct Report {
    variable: String,
    polynomials: Vec<Vec<String>>,
    checks: Vec<Check>,
    #[serde(skip)]
    lines: Vec<String>,
    #[serde(skip)]
    list_checks: bool,
}

impl Report {
    fn new(variable: impl Into<String>) -> Report {
        Report {
            variable: variable.into(),
            polynomials: Vec::new(),
            checks: Vec::new(),
            lines: Vec::new(),
            list_checks: true,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    fn print(&self, format: Format) {
        match format {
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(self).expect("report serializes")
            ),
            Format::Table => {
                for l in &self.lines {
                    println!("{l}");
                }
                if self.list_checks && !self.checks.is_empty() {
                    println!();
                    let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
                    for c in &self.checks {
                        println!("{}  {:<width$}  {}", c.status, c.name, c.details);
                    }
                }
            }
        }
    }
}

fn limits(common: &CommonArgs) -> Limits {
    if common.allow_large {
        Limits::relaxed()
    } else {
        Limits::default()
    }
}

fn load_set(input: &str) -> Result<FigureSet, Error> {
    let text = match builtin_json(input) {
        Some(text) if !Path::new(input).exists() => text.to_string(),
        _ => fs::read_to_string(input)
            .map_err(|e| Error::Parse(format!("cannot read {input}: {e}")))?,
    };
    FigureSet::from_json(&text)
}

fn show(p: &Poly, var: &str) -> String {
    p.display_with(var)
}

fn cmd_poly(args: &PolyArgs) -> Result<Report, Error> {
    let limits = limits(&args.common);
    let set = load_set(&args.input)?;
    let ms = set.to_multiset()?;
    let p = if args.boxed {
        f_polynomial_box(&ms, &limits)?
    } else {
        f_polynomial_torus(&ms, &limits)?
    };
    // an empty multiset carries no dimension of its own
    let variable = if args.boxed {
        Variable::Side
    } else {
        Variable::TorusVolume { dim: set.dim }
    };
    let var = variable.symbol();
    let mut r = Report::new(variable.to_string());
    r.polynomials.push(p.poly.to_coeff_strings());
    r.line(format!("{}, n_0={}", show(&p.poly, var), p.n0));
    for &n in &args.verify_n {
        let brute = if args.boxed {
            brute_count_box(&ms, n, &limits)?
        } else {
            brute_count_torus(&ms, n, &limits)?
        };
        let predicted = p.poly.eval(&variable.at_side(n));
        let exact = count_as_rational(brute) == predicted;
        if n >= p.n0 {
            r.checks.push(Check::new(
                format!("n={n}"),
                exact,
                format!("predicted {predicted}, brute force {brute}"),
            ));
        } else {
            r.checks.push(Check::new(
                format!("n={n}"),
                true,
                format!("predicted {predicted}, brute force {brute} (below n_0, not compared)"),
            ));
        }
    }
    Ok(r)
}

fn load_catalog(input: &str, k_max: usize, limits: &Limits) -> Result<Catalog, Error> {
    if input == "edges2d" && k_max > EDGES2D_STORED_WEIGHT && !Path::new(input).exists() {
        let mut figures = Vec::new();
        for k in 1..=k_max {
            figures.extend(enumerate_connected_edge_figures(2, k, limits)?);
        }
        return Catalog::by_edge_count(2, figures);
    }
    Catalog::from_figure_set(&load_set(input)?)
}

fn cmd_sequence(args: &SequenceArgs) -> Result<Report, Error> {
    let limits = limits(&args.common);
    let k = args.max_weight;
    let catalog = load_catalog(&args.input, k, &limits)?;
    let direct = p_sequence_via_multisets(&catalog, k, &limits)?;
    let schema = q_sequence_via_schema(&catalog, k, &limits)?;
    let mut r = Report::new(Variable::TorusVolume { dim: catalog.dim() }.to_string());
    r.line(format!(
        "catalog: {} figures, d={}, K={k}",
        catalog.len(),
        catalog.dim()
    ));
    r.line(format!(
        "{:>3}  {:<40}  {}",
        "k", "multisets", "connected graphs"
    ));
    for i in 0..=k {
        r.line(format!(
            "{i:>3}  {:<40}  {}",
            show(direct.get(i), "N"),
            show(schema.get(i), "N")
        ));
        r.polynomials.push(direct.get(i).to_coeff_strings());
    }
    r.checks.push(match first_difference(&direct, &schema) {
        None => Check::new("routes", true, "EQUAL"),
        Some((i, a, b)) => Check::new(
            "routes",
            false,
            format!("differ at k={i}: {} vs {}", show(&a, "N"), show(&b, "N")),
        ),
    });
    let report = verify_binomial(&direct, k)?;
    r.checks.push(Check::new(
        "binomial type",
        report.passed(),
        match report.failures.first() {
            None => format!("{} identities hold", report.checks),
            Some(f) => format!(
                "{} of {} fail, first {f:?}",
                report.failures.len(),
                report.checks
            ),
        },
    ));
    if !args.verify_n.is_empty() {
        let n0 = (1..=k)
            .flat_map(|i| catalog.multisets_of_weight(i))
            .map(|ms| torus_n0(&ms))
            .max()
            .unwrap_or(1);
        for &n in &args.verify_n {
            let at = Variable::TorusVolume { dim: catalog.dim() }.at_side(n);
            for i in 1..=k {
                let brute = brute_sequence_value(&catalog, i, n, &limits)?;
                let predicted = direct.get(i).eval(&at);
                let compared = n >= n0;
                r.checks.push(Check::new(
                    format!("q_{i} n={n}"),
                    !compared || predicted == count_as_rational(brute),
                    format!(
                        "predicted {predicted}, brute force {brute}{}",
                        if compared {
                            ""
                        } else {
                            " (below n_0, not compared)"
                        }
                    ),
                ));
            }
        }
    }
    Ok(r)
}

fn cmd_chromatic(args: &ChromaticArgs) -> Result<Report, Error> {
    let limits = limits(&args.common);
    let (d, k) = (args.dim, args.max_weight);
    let table = chromatic_coefficients(d, k, &limits)?;
    let mut r = Report::new(Variable::TorusVolume { dim: d }.to_string());
    r.line(format!(
        "unsigned coefficient of x^(N-k) in the chromatic polynomial of T^{d}_n, N=n^{d}"
    ));
    for i in 0..=k {
        r.line(format!("{i:>3}  {}", show(table.get(i), "N")));
        r.polynomials.push(table.get(i).to_coeff_strings());
    }
    r.checks.push(Check::new("routes", true, "EQUAL"));
    let report = verify_binomial(&table.as_sequence(), k)?;
    r.checks.push(Check::new(
        "binomial type",
        report.passed(),
        format!(
            "{} identities, {} failures",
            report.checks,
            report.failures.len()
        ),
    ));
    if args.verify_n.is_empty() {
        return Ok(r);
    }

    // deletion-contraction on a small torus against the subset oracle
    let (dc_n, dc_label) = if d == 1 {
        (args.verify_n[0], "C")
    } else {
        (3, "T^2_")
    };
    if d <= 2 {
        let g = TorusGraph::new(d, dc_n)?;
        let chi = chromatic_poly_small(g.vertex_count(), &g.endpoints, &limits)?;
        let v = g.vertex_count();
        let mut mismatches = Vec::new();
        for i in 0..=v.min(g.edge_count()) {
            let brute = count_as_rational(brute_bc_free_count(d, dc_n, i, &limits)?);
            let c = chi.coeff(v - i);
            let unsigned = if i % 2 == 0 { c } else { -c };
            if unsigned != brute {
                mismatches.push(i);
            }
        }
        r.line(format!(
            "chromatic polynomial of {dc_label}{dc_n}: {}",
            show(&chi, "x")
        ));
        r.checks.push(Check::new(
            format!("Whitney on {dc_label}{dc_n}"),
            mismatches.is_empty(),
            format!("{} coefficients, mismatched k: {mismatches:?}", v + 1),
        ));
    }

    for &n in &args.verify_n {
        let at = Variable::TorusVolume { dim: d }.at_side(n);
        for i in 0..=k {
            let brute = brute_bc_free_count(d, n, i, &limits)?;
            let predicted = table.get(i).eval(&at);
            // a straight cycle around the torus has n edges, so subsets of
            // n-1 or more edges see cycles the polynomial does not count
            let compared = n as usize >= i + 2;
            r.checks.push(Check::new(
                format!("broken-circuit-free n={n} k={i}"),
                !compared || predicted == count_as_rational(brute),
                format!(
                    "predicted {predicted}, brute force {brute}{}",
                    if compared {
                        ""
                    } else {
                        " (n < k+2, not compared)"
                    }
                ),
            ));
        }
        r.line(format!("good/bad placements on T^{d}_{n}:"));
        r.line(format!(
            "{:>3}  {:>10} {:>10} {:>10} {:>10}",
            "k", "GG", "GB", "BG", "BB"
        ));
        for i in 1..=k.min((n as usize).saturating_sub(2)) {
            let c = classify_cyclefree_subsets(d, n, i, &limits)?;
            r.line(format!(
                "{i:>3}  {:>10} {:>10} {:>10} {:>10}",
                c.gg, c.gb, c.bg, c.bb
            ));
            r.checks.push(Check::new(
                format!("|GB| = |BG| n={n} k={i}"),
                c.gb == c.bg && c.cyclic_not_bb == 0,
                format!("GB={} BG={}", c.gb, c.bg),
            ));
        }
    }
    Ok(r)
}

fn cmd_selftest(common: &CommonArgs) -> Report {
    let limits = limits(common);
    let mut r = Report::new(Variable::TorusVolume { dim: 2 }.to_string());
    for report in acceptance::run_all(&limits) {
        r.line(report.summary_line());
        for c in report.checks.iter().filter(|c| !c.passed()) {
            r.line(format!("    {} {}: {}", c.status, c.name, c.details));
        }
        let ok = report.checks.iter().filter(|c| c.passed()).count();
        r.checks.push(Check::new(
            format!("criterion {}: {}", report.id, report.title),
            report.passed(),
            format!("{ok}/{} checks", report.checks.len()),
        ));
    }
    let passed = r.checks.iter().filter(|c| c.passed()).count();
    r.line(format!("{passed}/{} criteria passed", r.checks.len()));
    // the scorecard lines already carry the verdicts
    r.list_checks = false;
    r
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        e if e.is_guard() => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match &cli.command {
        Command::Poly(a) => (cmd_poly(a), a.common.format),
        Command::Sequence(a) => (cmd_sequence(a), a.common.format),
        Command::Chromatic(a) => (cmd_chromatic(a), a.common.format),
        Command::Selftest(a) => (Ok(cmd_selftest(a)), a.format),
    };
    match result {
        Ok(report) => {
            report.print(format);
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
