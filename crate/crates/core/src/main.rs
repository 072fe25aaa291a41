use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use epure::fuzz::{self, Property};
use epure::kernel::{Field, Rational, Tolerance};
use epure::moulton::{find_desargues_failure, FailureWitness, SearchBox};
use epure::scene::{evaluate_scene, parse_scene, render_svg, Scene};

/// Checks projective-geometry scenes exactly and renders them to SVG.
#[derive(Parser)]
#[command(name = "epure", version)]
struct Cli {
    /// Arithmetic for scene evaluation.
    #[arg(long, value_enum, default_value_t = Backend::Exact, global = true)]
    backend: Backend,
    /// Absolute zero threshold for the approximate backend.
    #[arg(long, default_value_t = 1e-12, global = true)]
    eps_abs: f64,
    /// Relative zero threshold for the approximate backend.
    #[arg(long, default_value_t = 1e-9, global = true)]
    eps_rel: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Approx,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and evaluate a scene, printing one line per check.
    Check { file: PathBuf },
    /// Evaluate a scene and write its figure.
    Render {
        file: PathBuf,
        /// Output file; defaults to the name in the render directive.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a randomized property suite.
    Fuzz {
        /// desargues, converse, involution, example1-circles,
        /// example1-conics, example2-lift, lift or moulton-axioms
        property: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
    },
    /// Search for a counterexample.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
}

#[derive(Subcommand)]
enum WitnessKind {
    /// Perspective triangles in the Moulton plane whose side meets are not
    /// on a common line.
    Moulton {
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        /// Also render the witness to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A failure the user must fix, reported with exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Fatal> {
    let tol = Tolerance::new(cli.eps_abs, cli.eps_rel)?;
    match &cli.command {
        Command::Check { file } => {
            let scene = load(file)?;
            match cli.backend {
                Backend::Exact => check::<Rational>(&scene, &tol, file),
                Backend::Approx => check::<f64>(&scene, &tol, file),
            }
        }
        Command::Render { file, output } => {
            let scene = load(file)?;
            let target = match output {
                Some(o) => o.clone(),
                None => {
                    let r = scene.renders().next().ok_or("scene has no render directive")?;
                    file.parent().unwrap_or(Path::new(".")).join(&r.file)
                }
            };
            let svg = match cli.backend {
                Backend::Exact => figure::<Rational>(&scene, &tol, file)?,
                Backend::Approx => figure::<f64>(&scene, &tol, file)?,
            };
            fs::write(&target, svg).map_err(|e| format!("{}: {e}", target.display()))?;
            println!("wrote {}", target.display());
            Ok(true)
        }
        Command::Fuzz { property, seed, count } => {
            let property: Property = property.parse()?;
            let report = fuzz::run(property, *seed, *count);
            println!("{report}");
            for f in report.failures.iter().take(10) {
                println!("  case {}: {}", f.index, f.message);
            }
            Ok(report.passed())
        }
        Command::Witness {
            kind: WitnessKind::Moulton { budget, output },
        } => {
            let w = match find_desargues_failure(&SearchBox::default(), *budget) {
                Ok(w) => w,
                Err(e) => {
                    println!("no witness: {e}");
                    return Ok(false);
                }
            };
            print_witness(&w);
            if let Some(out) = output {
                let scene = parse_scene(&witness_scene(&w))?;
                let svg = figure::<Rational>(&scene, &tol, Path::new("<witness>"))?;
                fs::write(out, svg).map_err(|e| format!("{}: {e}", out.display()))?;
                println!("wrote {}", out.display());
            }
            Ok(w.verify())
        }
    }
}

fn load(file: &Path) -> Result<Scene, Fatal> {
    let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    parse_scene(&text).map_err(|e| Fatal(format!("{}: {e}", file.display())))
}

fn check<S: Field>(scene: &Scene, tol: &Tolerance, file: &Path) -> Result<bool, Fatal> {
    let ev = evaluate_scene::<S>(scene, tol).map_err(|e| Fatal(format!("{}: {e}", file.display())))?;
    for o in &ev.outcomes {
        println!("{o}");
    }
    let failed = ev.outcomes.iter().filter(|o| !o.passed).count();
    println!("{} checks, {failed} failed", ev.outcomes.len());
    Ok(failed == 0)
}

fn figure<S: Field>(scene: &Scene, tol: &Tolerance, file: &Path) -> Result<String, Fatal> {
    let ev = evaluate_scene::<S>(scene, tol).map_err(|e| Fatal(format!("{}: {e}", file.display())))?;
    Ok(render_svg(scene, &ev)?)
}

fn print_witness(w: &FailureWitness) {
    for (name, p) in epure::moulton::WITNESS_NAMES.iter().zip(&w.points) {
        println!("{name:<2} = {p}");
    }
    println!("center = {}", w.center);
    let meets: Vec<String> = w.side_meets.iter().map(|m| m.to_string()).collect();
    println!("side meets = {}", meets.join(" "));
    println!("collinearity defect = {}", w.collinearity_defect);
    println!("verified = {}", w.verify());
}

/// The witness as a scene, with a viewport around every point involved.
fn witness_scene(w: &FailureWitness) -> String {
    let all = w.points.iter().chain(std::iter::once(&w.center)).chain(&w.side_meets);
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in all {
        let (x, y) = (p.x.to_f64(), p.y.to_f64());
        (x0, y0, x1, y1) = (x0.min(x), y0.min(y), x1.max(x), y1.max(y));
    }
    let mut s = w.to_scene();
    s.push_str(&format!(
        "render witness.svg viewport=({}, {}, {}, {})\n",
        x0.floor() as i64 - 1,
        y0.floor() as i64 - 1,
        x1.ceil() as i64 + 1,
        y1.ceil() as i64 + 1
    ));
    s
}
