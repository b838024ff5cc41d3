//! `duval`: decide cylinder existence, enumerate curves, classify
//! configurations, regenerate the fixture catalog and run the verification
//! report.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use duval_core::catalog;
use duval_core::config::surface_type;
use duval_core::curves::{dual_graph, line_classes, lines_on_surface, roots as all_roots};
use duval_core::galois::{analyze, decorations, rank_one_with, SurfaceOverK};
use duval_core::lattice::lattice_for_degree;
use duval_core::oracle::{decide, decide_degree_nine, decide_fibration, Answer, Verdict};
use duval_core::surface::{load_file, Loaded};
use duval_core::verify::{self, Status};
use duval_core::Error;

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "duval", version, about = "Cylinders in Du Val del Pezzo surfaces of Picard rank one")]
struct Cli {
    /// Machine-readable output (JSON lines for per-file commands).
    #[arg(long, global = true)]
    json: bool,
    /// Fixture directory holding catalog.json.
    #[arg(long, global = true, value_name = "DIR")]
    fixtures: Option<PathBuf>,
    /// Largest denominator for the bounded witness search.
    #[arg(long, global = true, value_name = "N", default_value_t = 8)]
    denominator_bound: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide cylinder existence for each Surface JSON file.
    Decide { files: Vec<PathBuf> },
    /// Decide vertical cylinders for the generic fiber of a fibration over a curve.
    DecideFibration { files: Vec<PathBuf> },
    /// List the roots or lines of the lattice of a degree.
    Enumerate { degree: i64, kind: Kind },
    /// Type triplet, decorations, Picard rank and dual graphs of each file.
    Classify { files: Vec<PathBuf> },
    /// Run the verification report (`all` or one scope).
    Verify {
        #[arg(default_value = "all")]
        scope: String,
    },
    /// Regenerate the fixture catalog into the fixtures directory.
    Tables,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Roots,
    Lines,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Decide { files } => per_file(cli, files, decide_one),
        Command::DecideFibration { files } => per_file(cli, files, fibration_one),
        Command::Classify { files } => per_file(cli, files, classify_one),
        Command::Enumerate { degree, kind } => enumerate(cli, *degree, *kind),
        Command::Verify { scope } => run_verify(cli, scope),
        Command::Tables => tables(cli),
    }
}

/// Default fixture directory: `./fixtures`, else the one shipped with the workspace.
fn fixture_dir(cli: &Cli) -> Option<PathBuf> {
    if let Some(d) = &cli.fixtures {
        return Some(d.clone());
    }
    let local = PathBuf::from("fixtures");
    if local.join("catalog.json").exists() {
        return Some(local);
    }
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    shipped.join("catalog.json").exists().then_some(shipped)
}

/// Output of one file: the JSON record and the human rendering.
type FileOutput = (serde_json::Value, String);

/// Processes files concurrently and prints in input order; any invalid file gives exit 2.
fn per_file(cli: &Cli, files: &[PathBuf], f: fn(&Path) -> Result<FileOutput, Error>) -> Result<u8, Error> {
    if files.is_empty() {
        return Err(Error::Input {
            path: "files".into(),
            message: "no input files".into(),
        });
    }
    let results: Vec<Result<FileOutput, Error>> = std::thread::scope(|s| {
        let handles: Vec<_> = files.iter().map(|p| s.spawn(move || f(p))).collect();
        handles.into_iter().map(|h| h.join().expect("worker thread")).collect()
    });
    let mut code = 0;
    for (path, r) in files.iter().zip(results) {
        match r {
            Ok((value, text)) => {
                if cli.json {
                    println!("{}", serde_json::to_string(&value).expect("plain data"));
                } else {
                    println!("{}: {text}", path.display());
                }
            }
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                code = EXIT_INPUT;
            }
        }
    }
    Ok(code)
}

fn answer_text(a: Answer) -> &'static str {
    match a {
        Answer::ContainsCylinder => "contains a cylinder",
        Answer::NoCylinder => "no cylinder",
    }
}

fn verdict_output(v: &Verdict) -> FileOutput {
    let mut text = format!("{} [{}]", answer_text(v.answer), v.rule);
    if let Some(c) = v.construction_case {
        text.push_str(&format!(" construction {c}"));
    }
    for t in &v.trace {
        text.push_str(&format!("\n  {}: {}", t.cite, t.quote));
    }
    (serde_json::to_value(v).expect("plain data"), text)
}

fn load_surface(path: &Path) -> Result<Option<SurfaceOverK>, Error> {
    Ok(match load_file(path)? {
        Loaded::DegreeNine => None,
        Loaded::Surface(s) => Some(s),
    })
}

fn decide_one(path: &Path) -> Result<FileOutput, Error> {
    let v = match load_surface(path)? {
        None => decide_degree_nine(),
        Some(s) => decide(&s)?,
    };
    Ok(verdict_output(&v))
}

fn fibration_one(path: &Path) -> Result<FileOutput, Error> {
    let v = match load_surface(path)? {
        None => decide_degree_nine(),
        Some(s) => decide_fibration(&s)?,
    };
    Ok(verdict_output(&v))
}

fn classify_one(path: &Path) -> Result<FileOutput, Error> {
    let Some(s) = load_surface(path)? else {
        return Ok((json!({ "degree": 9, "label": "smooth" }), "d=9 smooth, a form of the plane".into()));
    };
    let p = &s.profile;
    let t = surface_type(p);
    let a = analyze(&s)?;
    let decs = decorations(&s, &a)?;
    let report = rank_one_with(&s, &a);
    let mut points = Vec::new();
    let mut text = format!("{} ({})", t, t.primed_label());
    for pt in &p.points {
        let classes = p.point_classes(pt);
        let graph = dual_graph(&classes, &p.form)?.render();
        let dec = decs.get(&pt.id).map(|d| d.to_string());
        text.push_str(&format!(
            "\n  {} {}: {}  {}",
            pt.id,
            pt.ade,
            graph,
            dec.clone().unwrap_or_else(|| "not rational".into())
        ));
        points.push(json!({
            "id": pt.id,
            "type": pt.ade.to_string(),
            "components": classes,
            "rational": a.is_rational(&pt.id),
            "decoration": dec,
        }));
    }
    text.push_str(&format!(
        "\n  group order {}, rho_k(S~) = {}, root orbits = {}, rho_k(S) = {}",
        a.group_order,
        a.fixed_rank,
        a.root_orbits.len(),
        a.rho()
    ));
    match &report.obstruction {
        None => text.push_str("\n  rank one: yes"),
        Some(o) => text.push_str(&format!("\n  rank one: no ({o})")),
    }
    let lines = lines_on_surface(p).classes;
    let mut config = p.roots.clone();
    config.extend(lines.iter().cloned());
    text.push_str(&format!("\n  roots and lines: {}", dual_graph(&config, &p.form)?.render().replace('\n', "\n    ")));
    for w in &a.warnings {
        text.push_str(&format!("\n  warning: {w}"));
    }
    let value = json!({
        "degree": t.degree,
        "label": t.label(),
        "primed_label": t.primed_label(),
        "num_lines": t.num_lines,
        "points": points,
        "group_order": a.group_order,
        "rho_tilde": a.fixed_rank,
        "root_orbits": a.root_orbits.len(),
        "rho": a.rho(),
        "rank_one": report.ok,
        "obstruction": report.obstruction.as_ref().map(|o| o.to_string()),
        "warnings": a.warnings,
    });
    Ok((value, text))
}

fn enumerate(cli: &Cli, degree: i64, kind: Kind) -> Result<u8, Error> {
    let form = lattice_for_degree(degree).map_err(|e| Error::Input {
        path: "degree".into(),
        message: e.to_string(),
    })?;
    let (name, set) = match kind {
        Kind::Roots => ("roots", all_roots(&form)),
        Kind::Lines => ("lines", line_classes(&form)),
    };
    if cli.json {
        let v = json!({ "degree": degree, "kind": name, "count": set.len(), "classes": set.classes });
        println!("{}", serde_json::to_string(&v).expect("plain data"));
    } else {
        println!("# {} {name} on degree {degree}", set.len());
        for c in &set.classes {
            println!("{c}");
        }
    }
    Ok(0)
}

fn run_verify(cli: &Cli, scope: &str) -> Result<u8, Error> {
    let opts = verify::Options {
        fixtures: fixture_dir(cli),
        denominator_bound: cli.denominator_bound,
        ..verify::Options::default()
    };
    let report = verify::run(scope, &opts)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("plain data"));
    } else {
        for c in &report.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Misprint => "misprint",
                Status::Info => "info",
            };
            println!("{tag:>8}  {:<9} {}", c.scope, c.id);
            if c.status == Status::Fail {
                println!("          {}", c.detail);
                if let Some(x) = &c.counterexample {
                    println!("          counterexample {x}");
                }
            }
        }
        let s = &report.summary;
        println!(
            "{} pass, {} fail, {} misprint, {} info",
            s.pass, s.fail, s.misprint, s.info
        );
    }
    Ok(if report.ok() { 0 } else { EXIT_VERIFY })
}

fn tables(cli: &Cli) -> Result<u8, Error> {
    let dir = cli.fixtures.clone().unwrap_or_else(|| PathBuf::from("fixtures"));
    let quiet = cli.json;
    let index = catalog::generate(&dir, &mut |line| {
        if !quiet {
            eprintln!("{line}");
        }
    })?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&index).expect("plain data"));
        return Ok(0);
    }
    println!("{:<34} {:>2} {:<14} {:>4}  {:<28} {:<8} rule", "id", "d", "type", "rho~", "decorations", "answer");
    for e in &index.entries {
        println!(
            "{:<34} {:>2} {:<14} {:>4}  {:<28} {:<8} {}",
            e.id,
            e.degree,
            e.label,
            e.rho_tilde.map(|r| r.to_string()).unwrap_or_else(|| "-".into()),
            e.decorations.join(" "),
            if e.answer.is_yes() { "yes" } else { "no" },
            e.rule
        );
    }
    for u in &index.unrealized {
        println!("unrealized {}: {}", u.id, u.reason);
    }
    println!(
        "{} surfaces, {} divisor D profiles, {} unrealized, written to {}",
        index.entries.len(),
        index.divd.len(),
        index.unrealized.len(),
        dir.display()
    );
    Ok(0)
}
