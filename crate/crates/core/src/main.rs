use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use graph_coin::certify::{certificate, circle_degree, grid_oracle, nielsen_circle};
use graph_coin::figure::step_svg;
use graph_coin::plmap::{coincidences, PLMap};
use graph_coin::removal::remove_all;
use graph_coin::steps::format_trace;
use graph_coin::text::{format_map_document, parse_document, parse_single_map};
use graph_coin::Error;

/// Coincidences of piecewise-linear maps between finite graphs.
#[derive(Parser, Debug)]
#[command(name = "graph-coin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check graph and map files.
    Validate { paths: Vec<PathBuf> },
    /// List the coincidence points of two maps.
    Coincidences { f: PathBuf, g: PathBuf },
    /// Deform two maps by homotopy until they have no coincidence.
    Remove {
        f: PathBuf,
        g: PathBuf,
        #[arg(long = "out-f")]
        out_f: Option<PathBuf>,
        #[arg(long = "out-g")]
        out_g: Option<PathBuf>,
        /// Write the step log here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write one before/after SVG per step into this directory.
        #[arg(long)]
        figures: Option<PathBuf>,
    },
    /// Check that the after-pair is homotopic to the before-pair and has no
    /// coincidence.
    Certify {
        before_f: PathBuf,
        before_g: PathBuf,
        after_f: PathBuf,
        after_g: PathBuf,
        #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u32).range(1..))]
        resolution: u32,
    },
    /// |deg f - deg g| for two circle self-maps.
    NielsenCircle { f: PathBuf, g: PathBuf },
    /// Degree of a map into a circle.
    Degree { map: PathBuf },
}

enum Failure {
    Semantic(String),
    Parse(String),
    Overlap(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Parse { .. } => Failure::Parse(err.to_string()),
            Error::DegenerateOverlap { .. } => Failure::Overlap(format!(
                "{err}; run `remove`, which puts the maps in general position first"
            )),
            other => Failure::Semantic(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Semantic(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Semantic(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<PLMap, Failure> {
    let text = read(path)?;
    parse_single_map(&text).map_err(|err| {
        let failure = Failure::from(err);
        match failure {
            Failure::Parse(m) => Failure::Parse(format!("{}: {m}", path.display())),
            Failure::Semantic(m) => Failure::Semantic(format!("{}: {m}", path.display())),
            other => other,
        }
    })
}

fn load_pair(f: &Path, g: &Path) -> Result<(PLMap, PLMap), Failure> {
    let f = load(f)?;
    let g = load(g)?;
    if !f.same_graphs(&g) {
        return Err(Error::GraphMismatch.into());
    }
    Ok((f, g))
}

fn validate(paths: &[PathBuf]) -> Outcome {
    let mut all_ok = true;
    for path in paths {
        let text = read(path)?;
        let doc = parse_document(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
        let mut file_ok = true;
        for (name, report) in doc.graph_reports() {
            println!("{}: graph {name}: {report}", path.display());
            file_ok &= report.is_ok();
        }
        if file_ok {
            match doc.build_maps() {
                Ok(maps) => {
                    for m in maps {
                        println!("{}: map {}: ok", path.display(), m.name());
                    }
                }
                Err(e) => {
                    println!("{}: {e}", path.display());
                    file_ok = false;
                }
            }
        }
        all_ok &= file_ok;
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure::Semantic("validation failed".into()))
    }
}

fn list_coincidences(f: &Path, g: &Path) -> Outcome {
    let (f, g) = load_pair(f, g)?;
    let dom = f.domain();
    let cod = f.codomain();
    for c in coincidences(&f, &g)? {
        println!("{} -> {} {}", dom.format_point(&c.location), cod.format_point(&c.value), c.transversality.as_str());
    }
    Ok(())
}

fn remove(
    f: &Path,
    g: &Path,
    out_f: Option<&Path>,
    out_g: Option<&Path>,
    trace: Option<&Path>,
    figures: Option<&Path>,
) -> Outcome {
    let (f, g) = load_pair(f, g)?;
    let report = remove_all(&f, &g)?;
    let f_text = format_map_document(&report.f);
    let g_text = format_map_document(&report.g);
    match out_f {
        Some(p) => write(p, &f_text)?,
        None => print!("{f_text}\n"),
    }
    match out_g {
        Some(p) => write(p, &g_text)?,
        None => print!("{g_text}\n"),
    }
    if let Some(p) = trace {
        write(p, &format_trace(&report.steps, &f))?;
    }
    if let Some(dir) = figures {
        fs::create_dir_all(dir).map_err(|e| Failure::Semantic(format!("{}: {e}", dir.display())))?;
        for (n, step) in report.steps.iter().enumerate() {
            if let Some(svg) = step_svg(step, f.codomain()) {
                write(&dir.join(format!("step-{:03}-{}.svg", n + 1, step.kind.as_str())), &svg)?;
            }
        }
    }
    println!("{}", report.summary());
    Ok(())
}

fn certify(before_f: &Path, before_g: &Path, after_f: &Path, after_g: &Path, resolution: u32) -> Outcome {
    let (bf, bg) = load_pair(before_f, before_g)?;
    let (af, ag) = load_pair(after_f, after_g)?;
    if !bf.same_graphs(&af) {
        return Err(Error::GraphMismatch.into());
    }
    for (label, before, after) in [("f", &bf, &af), ("g", &bg, &ag)] {
        let cert = certificate(label, before, after);
        print!("{}", cert.text);
        if !cert.verdict {
            return Err(Failure::Semantic(format!("homotopy check failed ({label})")));
        }
    }
    let exact = match coincidences(&af, &ag) {
        Ok(cs) => cs.len(),
        Err(Error::DegenerateOverlap { .. }) => usize::MAX,
        Err(e) => return Err(e.into()),
    };
    if exact > 0 {
        return Err(Failure::Semantic("coincidence found (exact solver)".into()));
    }
    if !grid_oracle(&af, &ag, resolution).is_empty() {
        return Err(Failure::Semantic(format!("coincidence found (grid oracle, resolution {resolution})")));
    }
    println!("certified: homotopic and coincidence-free");
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { paths } => validate(&paths),
        Command::Coincidences { f, g } => list_coincidences(&f, &g),
        Command::Remove { f, g, out_f, out_g, trace, figures } => {
            remove(&f, &g, out_f.as_deref(), out_g.as_deref(), trace.as_deref(), figures.as_deref())
        }
        Command::Certify { before_f, before_g, after_f, after_g, resolution } => {
            certify(&before_f, &before_g, &after_f, &after_g, resolution)
        }
        Command::NielsenCircle { f, g } => {
            let (f, g) = load_pair(&f, &g)?;
            println!("{}", nielsen_circle(&f, &g)?);
            Ok(())
        }
        Command::Degree { map } => {
            println!("{}", circle_degree(&load(&map)?)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Semantic(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(m)) => {
            eprintln!("parse error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Overlap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
