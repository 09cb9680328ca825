mod plot;
mod report;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use permgrid::automata::Dfa;
use permgrid::classes::pipelines::{check_fixtures, PipelineId};
use permgrid::classes::resources;
use permgrid::classes::verify::{
    encodings, verify_decomposition, verify_encoding, verify_partitions, verify_series,
    verify_structure, StructureTheorem,
};
use permgrid::enumerate::{count_series, series_csv, ClassSpec};
use permgrid::grid::GriddingMatrix;
use permgrid::perm::parse_list;
use permgrid::{Permutation, RationalFunction};
use serde_json::json;

use report::{Check, RunReport};

#[derive(Parser)]
#[command(
    name = "permgrid",
    version,
    about = "Enumerate permutation classes through grid classes and automata"
)]
struct Cli {
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the class avoiding a basis, lengths 1..=n
    Count {
        /// Basis permutations separated by spaces or commas, e.g. "2143 4321"
        #[arg(short, long, allow_hyphen_values = true)]
        basis: String,
        #[arg(short = 'n', long = "max", default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = CountFormat::Text)]
        format: CountFormat,
    },
    /// Generating function of a class, or of the words of an automaton file
    Gf {
        /// av2143_4321, av2143_4312 or av1324_4312
        class: Option<String>,
        #[arg(long, conflicts_with = "class")]
        dfa: Option<String>,
        #[arg(long, default_value_t = 10)]
        terms: usize,
        /// Also print every intermediate function
        #[arg(long)]
        stages: bool,
    },
    /// Run the exhaustive checks
    Verify {
        #[arg(value_enum, default_value_t = Scope::All)]
        scope: Scope,
        #[arg(short = 'n', long = "max", default_value_t = 9)]
        n_max: usize,
    },
    /// Draw a permutation, with the cuts of a gridding if one exists
    Plot {
        /// Compact ("2413") or separated ("16 13 18 ..."); separated values
        /// need only be distinct and are standardized
        perm: String,
        /// A matrix file, or the name of a bundled matrix
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value_t = PlotFormat::Ascii)]
        format: PlotFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountFormat {
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scope {
    All,
    Structure,
    Encodings,
    Pipelines,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotFormat {
    Ascii,
    Svg,
}

enum Failure {
    /// bad input: exit 2
    Usage(String),
    /// a check or computation failed: exit 1
    Check(String),
}

type Outcome = Result<(), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn failed<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Check(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count {
            basis,
            n_max,
            format,
        } => cmd_count(&basis, n_max, format, cli.json),
        Command::Gf {
            class,
            dfa,
            terms,
            stages,
        } => cmd_gf(class.as_deref(), dfa.as_deref(), terms, stages, cli.json),
        Command::Verify { scope, n_max } => cmd_verify(scope, n_max, cli.json),
        Command::Plot { perm, grid, format } => cmd_plot(&perm, grid.as_deref(), format, cli.json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn cmd_count(basis: &str, n_max: usize, format: CountFormat, json: bool) -> Outcome {
    let basis = parse_list(basis).map_err(usage)?;
    let counts = count_series(&ClassSpec::basis(basis.clone()), n_max).map_err(failed)?;
    if json {
        let names: Vec<String> = basis.iter().map(|p| p.to_string()).collect();
        println!("{}", json!({ "basis": names, "counts": counts }));
        return Ok(());
    }
    match format {
        CountFormat::Csv => print!("{}", series_csv(&counts)),
        CountFormat::Text => {
            let parts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            println!("{}", parts.join(","));
        }
    }
    Ok(())
}

fn series_terms(g: &RationalFunction, from: usize, terms: usize) -> Result<Vec<String>, Failure> {
    if terms == 0 {
        return Ok(Vec::new());
    }
    let s = g.series(from + terms - 1).map_err(failed)?;
    Ok(s[from..].iter().map(|c| c.to_string()).collect())
}

/// Class series start at length 1, automaton series at the empty word.
fn cmd_gf(
    class: Option<&str>,
    dfa: Option<&str>,
    terms: usize,
    stages: bool,
    json: bool,
) -> Outcome {
    match (class, dfa) {
        (Some(key), None) => {
            let id = PipelineId::from_key(key).ok_or_else(|| {
                let keys: Vec<&str> = PipelineId::ALL.iter().map(|id| id.key()).collect();
                usage(format!(
                    "unknown class {key:?}; expected one of {}",
                    keys.join(", ")
                ))
            })?;
            let p = id.build().map_err(failed)?;
            let f = &p.result().value;
            let series = series_terms(f, 1, terms)?;
            let checks = check_fixtures(&p).map_err(failed)?;
            let differing: Vec<&str> = checks
                .iter()
                .filter(|c| !c.passed())
                .map(|c| c.key.as_str())
                .collect();
            if json {
                let mut out = json!({
                    "class": id.key(),
                    "basis": id.basis(),
                    "gf": f.to_string(),
                    "series_from": 1,
                    "series": series,
                    "differs_from_closed_form": differing,
                });
                if stages {
                    out["stages"] = p
                        .stages
                        .iter()
                        .map(|s| json!({ "name": s.name, "key": s.key, "value": s.value.to_string() }))
                        .collect();
                }
                println!("{out}");
            } else {
                if stages {
                    for s in &p.stages {
                        println!("{} = {}", s.key, s.value);
                    }
                }
                println!("gf: {f}");
                println!("series (n = 1..): {}", series.join(", "));
                if !differing.is_empty() {
                    println!(
                        "note: differs from the closed form on file for {}",
                        differing.join(", ")
                    );
                }
            }
            Ok(())
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
            let d: Dfa = text.parse().map_err(|e| usage(format!("{path}: {e}")))?;
            let g = d.gf();
            let series = series_terms(&g, 0, terms)?;
            if json {
                println!(
                    "{}",
                    json!({ "dfa": path, "gf": g.to_string(), "series_from": 0, "series": series })
                );
            } else {
                println!("gf: {g}");
                println!("series (n = 0..): {}", series.join(", "));
            }
            Ok(())
        }
        _ => Err(usage("give a class name or --dfa FILE")),
    }
}

fn structure_checks(n_max: usize) -> Result<Vec<Check>, Failure> {
    let mut out = Vec::new();
    for thm in StructureTheorem::ALL {
        let r = verify_structure(thm, n_max).map_err(failed)?;
        let mut got = format!("{} counterexamples for n ≤ {n_max}", r.counterexamples);
        if let Some(p) = &r.first_counterexample {
            got.push_str(&format!(", first {p}"));
        }
        if !r.basis_in_union.is_empty() {
            let b: Vec<String> = r.basis_in_union.iter().map(|p| p.to_string()).collect();
            got.push_str(&format!(", basis elements inside: {}", b.join(" ")));
        }
        out.push(Check::new(
            format!("{}: {}", thm.key(), thm.statement()),
            r.passed(),
            got,
        ));
    }
    Ok(out)
}

fn encoding_checks(n_max: usize) -> Result<Vec<Check>, Failure> {
    let mut out = Vec::new();
    for enc in encodings().map_err(failed)? {
        let r = verify_encoding(&enc, n_max).map_err(failed)?;
        let got = match r.lengths.iter().find(|l| !l.passed()) {
            None => format!("bijective for n ≤ {n_max}"),
            Some(l) => format!(
                "n = {}: {} words, {} distinct, {} outside target, target {}, series {}",
                l.n, l.words, l.distinct, l.outside_target, l.target, l.series
            ),
        };
        out.push(Check::new(
            format!("encoding {}", enc.name),
            r.passed(),
            got,
        ));
    }
    Ok(out)
}

fn pipeline_checks(n_max: usize) -> Result<Vec<Check>, Failure> {
    let mut out = Vec::new();
    let mut built = Vec::new();
    for id in PipelineId::ALL {
        let p = id.build().map_err(failed)?;
        for c in check_fixtures(&p).map_err(failed)? {
            let Some(expected) = &c.expected else {
                continue;
            };
            let mut check = Check::new(
                format!("{} closed form {}", id.key(), c.key),
                c.passed(),
                c.got.to_string(),
            );
            if !c.passed() {
                check = check.expecting(expected.to_string());
            }
            out.push(check);
        }
        for s in verify_series(&p, n_max).map_err(failed)? {
            let got: Vec<String> = s.brute.iter().map(|c| c.to_string()).collect();
            let mut check = Check::new(
                format!("{} brute force {}", id.key(), s.key),
                s.passed(),
                format!("n ≤ {n_max}: {}", got.join(",")),
            );
            if !s.passed() {
                let series: Vec<String> = s.series.iter().map(|c| c.to_string()).collect();
                check = check.expecting(series.join(","));
            }
            out.push(check);
        }
        if let Some(d) = verify_decomposition(&p, n_max).map_err(failed)? {
            out.push(Check::new(
                format!("{} sum/skew decomposition", id.key()),
                d.passed(),
                format!("n ≤ {n_max}"),
            ));
        }
        built.push(p);
    }
    for c in verify_partitions(&built) {
        out.push(Check::new(
            format!("partition {} = {}", c.whole, c.parts.join(" + ")),
            c.holds,
            if c.holds { "holds" } else { "does not hold" },
        ));
    }
    Ok(out)
}

fn cmd_verify(scope: Scope, n_max: usize, json: bool) -> Outcome {
    let start = Instant::now();
    let mut checks = Vec::new();
    if matches!(scope, Scope::All | Scope::Structure) {
        checks.extend(structure_checks(n_max)?);
    }
    if matches!(scope, Scope::All | Scope::Encodings) {
        checks.extend(encoding_checks(n_max)?);
    }
    if matches!(scope, Scope::All | Scope::Pipelines) {
        checks.extend(pipeline_checks(n_max)?);
    }
    let name = Scope::value_variants()
        .iter()
        .find(|s| **s == scope)
        .and_then(|s| s.to_possible_value())
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let report = RunReport::new(
        format!("verify {name} -n {n_max}"),
        checks,
        start.elapsed().as_millis(),
    );
    if json {
        println!("{}", serde_json::to_string_pretty(&report).map_err(failed)?);
    } else {
        println!("{report}");
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} checks failed", report.failed)))
    }
}

fn parse_plot_perm(s: &str) -> Result<Permutation, Failure> {
    if !s.trim().contains(|c: char| c.is_whitespace() || c == ',') {
        return s.parse().map_err(usage);
    }
    let mut values = Vec::new();
    for (i, w) in s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .enumerate()
    {
        let v: u32 = w
            .parse()
            .map_err(|_| usage(format!("entry {} ({w:?}) is not a number", i + 1)))?;
        if values.contains(&v) {
            return Err(usage(format!("entry {} repeats the value {v}", i + 1)));
        }
        values.push(v);
    }
    if values.len() > u8::MAX as usize {
        return Err(usage("at most 255 entries"));
    }
    Ok(Permutation::standardize(&values))
}

fn load_matrix(arg: &str) -> Result<GriddingMatrix, Failure> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")))?;
        text.parse().map_err(|e| usage(format!("{arg}: {e}")))
    } else {
        resources::matrix(arg).map_err(usage)
    }
}

fn cmd_plot(perm: &str, grid: Option<&str>, format: PlotFormat, json: bool) -> Outcome {
    let p = parse_plot_perm(perm)?;
    let (gridding, note) = match grid {
        None => (None, None),
        Some(arg) => {
            let m = load_matrix(arg)?;
            match m.grid(&p) {
                Some(g) => (Some(g), None),
                None => (None, Some(format!("not griddable by {arg}"))),
            }
        }
    };
    let cuts = gridding.as_ref().map(plot::Cuts::from);
    let diagram = match format {
        PlotFormat::Ascii => plot::ascii(&p, cuts.as_ref()),
        PlotFormat::Svg => plot::svg(&p, cuts.as_ref()),
    };
    if json {
        println!(
            "{}",
            json!({
                "permutation": p.to_string(),
                "griddable": grid.map(|_| gridding.is_some()),
                "col_cuts": gridding.as_ref().map(|g| g.col_cuts.clone()),
                "row_cuts": gridding.as_ref().map(|g| g.row_cuts.clone()),
                "note": note,
                "diagram": diagram,
            })
        );
    } else {
        print!("{diagram}");
        if let Some(n) = note {
            println!("note: {n}");
        }
    }
    Ok(())
}
