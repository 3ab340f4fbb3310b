use std::fs;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};
use incidence_core::antichain::{intersection_lattice_with_cap, SupportMask};
use incidence_core::complexity;
use incidence_core::poset::DEFAULT_ENUMERATION_CAP;
use incidence_core::{fflab, star, verify, Error, Poset, RationalMatrix};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "incidence", version, about = "Incidence algebra toolkit for finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full structural report: dimension, complexity, rank, class, descriptor
    Analyze {
        /// Poset JSON file
        #[arg(long)]
        input: String,
        /// json or text
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Mobius matrix in the linear-extension embedding
    Mobius {
        #[arg(long)]
        input: String,
        /// json or text
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Zeta matrix, or the multichain count Z(P,m) when --m is given
    Zeta {
        #[arg(long)]
        input: String,
        /// Evaluate the zeta polynomial at this chain length (m >= 2)
        #[arg(long)]
        m: Option<u64>,
        /// json or text
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Complexity class with dimension and complexity
    Classify {
        #[arg(long)]
        input: String,
        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Intersection lattice of the antichain submonoids
    AntichainLattice {
        #[arg(long)]
        input: String,
        /// dot, json, or text
        #[arg(long, default_value = "dot")]
        format: String,
        /// Abort if the poset has more antichains than this
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Orbit representative words for the star poset on n elements
    StarReps {
        #[arg(long)]
        n: usize,
        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Adherence order on star poset orbit representatives
    StarHasse {
        #[arg(long)]
        n: usize,
        /// dot, json, or text
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Torus orbit counts for the doubled star poset
    TorusLattice {
        #[arg(long)]
        n: usize,
        /// json or text
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Finite-field point census of an incidence monoid mask
    Fflab {
        #[arg(long)]
        input: String,
        /// Field size, one of 2 3 4 5 7 8 9
        #[arg(long)]
        q: u8,
        /// Comma-separated element labels; empty string for the empty
        /// antichain, omit for the full incidence monoid
        #[arg(long)]
        antichain: Option<String>,
        /// Widen free-unit diagonal cells to free (Zariski closure of the units)
        #[arg(long, action = ArgAction::Set, default_value_t = false)]
        closure: bool,
        /// json or text
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Cross-module invariant sweep over all labeled posets up to n elements
    Verify {
        #[arg(long)]
        n: usize,
        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
    },
}

/// Rendered stdout plus the process exit code (verify passes through its
/// own pass/fail as 0/1).
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

enum CliError {
    Domain(String),
    Cap(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Cap(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Cap(m) | CliError::Io(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match &e {
            Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cmd: Cmd) -> Result<Output, CliError> {
    match cmd {
        Cmd::Analyze { input, format } => analyze(&input, &format),
        Cmd::Mobius { input, format } => {
            let p = load_poset(&input)?;
            matrix_output(&RationalMatrix::mobius(&p), &format)
        }
        Cmd::Zeta { input, m, format } => zeta(&input, m, &format),
        Cmd::Classify { input, format } => classify(&input, &format),
        Cmd::AntichainLattice { input, format, cap } => antichain_lattice(&input, &format, cap),
        Cmd::StarReps { n, format } => star_reps(n, &format),
        Cmd::StarHasse { n, format } => star_hasse(n, &format),
        Cmd::TorusLattice { n, format } => torus_lattice(n, &format),
        Cmd::Fflab { input, q, antichain, closure, format } => {
            fflab_report(&input, q, antichain.as_deref(), closure, &format)
        }
        Cmd::Verify { n, format } => run_verify(n, &format),
    }
}

fn load_poset(path: &str) -> Result<Poset, CliError> {
    let data = fs::read_to_string(path)?;
    Ok(Poset::from_json_str(&data)?)
}

fn bad_format(cmd: &str, format: &str, allowed: &str) -> CliError {
    CliError::Domain(format!("{cmd} supports --format {allowed}, got {format:?}"))
}

fn analyze(input: &str, format: &str) -> Result<Output, CliError> {
    let p = load_poset(input)?;
    let report = complexity::report_json(&p);
    match format {
        "json" => Ok(Output::ok(format!("{report}\n"))),
        "text" => {
            let mut out = String::new();
            for key in ["elements", "dim", "complexity", "rank", "class", "betti1", "aut_order"] {
                out.push_str(&format!("{key}={}\n", plain(&report[key])));
            }
            for c in report["per_component"].as_array().expect("array") {
                out.push_str(&format!(
                    "component size={} nontrivial_relations={} complexity={}\n",
                    plain(&c["size"]),
                    plain(&c["nontrivial_relations"]),
                    plain(&c["complexity"]),
                ));
            }
            Ok(Output::ok(out))
        }
        other => Err(bad_format("analyze", other, "{json,text}")),
    }
}

/// Strings render without quotes in text output; everything else via JSON.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn matrix_output(m: &RationalMatrix, format: &str) -> Result<Output, CliError> {
    match format {
        "json" => Ok(Output::ok(format!("{}\n", m.to_json_string()))),
        "text" => {
            let out: String = m.to_token_rows().iter().map(|r| r.join(" ") + "\n").collect();
            Ok(Output::ok(out))
        }
        other => Err(bad_format("matrix emission", other, "{json,text}")),
    }
}

fn zeta(input: &str, m: Option<u64>, format: &str) -> Result<Output, CliError> {
    let p = load_poset(input)?;
    match m {
        None => matrix_output(&RationalMatrix::zeta(&p), format),
        Some(m) => {
            let v = p.zeta_poly_eval(m)?;
            match format {
                "json" => Ok(Output::ok(format!(
                    "{}\n",
                    json!({ "m": m, "value": v.to_string() })
                ))),
                "text" => Ok(Output::ok(format!("{v}\n"))),
                other => Err(bad_format("zeta --m", other, "{json,text}")),
            }
        }
    }
}

fn classify(input: &str, format: &str) -> Result<Output, CliError> {
    let p = load_poset(input)?;
    let report = complexity::complexity_report(&p);
    let class = complexity::classify(&p);
    match format {
        "text" => Ok(Output::ok(format!(
            "class={class} dim={} c={}\n",
            report.dim, report.complexity
        ))),
        "json" => Ok(Output::ok(format!(
            "{}\n",
            json!({
                "class": class.to_string(),
                "dim": report.dim,
                "complexity": report.complexity,
            })
        ))),
        other => Err(bad_format("classify", other, "{text,json}")),
    }
}

fn antichain_lattice(input: &str, format: &str, cap: Option<u64>) -> Result<Output, CliError> {
    let p = load_poset(input)?;
    let lat = intersection_lattice_with_cap(&p, cap.unwrap_or(DEFAULT_ENUMERATION_CAP))?;
    match format {
        "dot" => Ok(Output::ok(lat.to_dot(&p))),
        "json" => Ok(Output::ok(format!("{}\n", lat.to_json_value(&p)))),
        "text" => {
            let mut out = String::new();
            for (i, set) in lat.nodes().iter().enumerate() {
                let label = if set.is_empty() {
                    "∅".to_string()
                } else {
                    let names: Vec<&str> = set.iter().map(|&k| p.label(k)).collect();
                    format!("{{{}}}", names.join(","))
                };
                let mark = if lat.maximal_flags()[i] { " maximal" } else { "" };
                out.push_str(&format!("node {i} {label}{mark}\n"));
            }
            for &(lo, hi) in lat.covers() {
                out.push_str(&format!("cover {lo} {hi}\n"));
            }
            Ok(Output::ok(out))
        }
        other => Err(bad_format("antichain-lattice", other, "{dot,json,text}")),
    }
}

fn star_reps(n: usize, format: &str) -> Result<Output, CliError> {
    let reps = star::enumerate_reps(n)?;
    match format {
        "text" => {
            let out: String = reps.iter().map(|w| format!("{w}\n")).collect();
            Ok(Output::ok(out))
        }
        "json" => {
            let words: Vec<String> = reps.iter().map(|w| w.to_string()).collect();
            Ok(Output::ok(format!(
                "{}\n",
                json!({ "n": n, "count": words.len(), "words": words })
            )))
        }
        other => Err(bad_format("star-reps", other, "{text,json}")),
    }
}

fn star_hasse(n: usize, format: &str) -> Result<Output, CliError> {
    let h = star::adherence_hasse(n)?;
    match format {
        "dot" => Ok(Output::ok(h.to_dot())),
        "json" => Ok(Output::ok(format!("{}\n", h.to_json_value()))),
        "text" => {
            let mut out = String::new();
            for (i, w) in h.nodes().iter().enumerate() {
                out.push_str(&format!("node {w} dim={}\n", h.dims()[i]));
            }
            for &(lo, hi) in h.cover_edges() {
                out.push_str(&format!("cover {} {}\n", h.nodes()[lo], h.nodes()[hi]));
            }
            Ok(Output::ok(out))
        }
        other => Err(bad_format("star-hasse", other, "{dot,json,text}")),
    }
}

fn torus_lattice(n: usize, format: &str) -> Result<Output, CliError> {
    let s = star::torus_orbit_lattice(n)?;
    match format {
        "json" => Ok(Output::ok(format!("{}\n", s.to_json_value()))),
        "text" => {
            let iso = match s.boolean_iso_check {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "skipped",
            };
            Ok(Output::ok(format!(
                "n={} index_set_size={} orbits={} covers={} boolean_iso_check={iso}\n",
                s.n, s.index_set_size, s.orbit_count, s.cover_count
            )))
        }
        other => Err(bad_format("torus-lattice", other, "{json,text}")),
    }
}

fn parse_mask(p: &Poset, antichain: Option<&str>) -> Result<SupportMask, Error> {
    match antichain {
        None => Ok(SupportMask::full_incidence(p)),
        Some(s) => {
            let mut idx = Vec::new();
            for name in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let i = p
                    .labels()
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
                idx.push(i);
            }
            SupportMask::antichain_submonoid(p, &idx)
        }
    }
}

fn fflab_report(
    input: &str,
    q: u8,
    antichain: Option<&str>,
    closure: bool,
    format: &str,
) -> Result<Output, CliError> {
    let p = load_poset(input)?;
    let mask = parse_mask(&p, antichain)?;
    let report = fflab::report(&mask, q, closure)?;
    match format {
        "json" => Ok(Output::ok(format!("{report}\n"))),
        "text" => {
            let mut out = String::new();
            for key in ["mask_id", "q", "closure", "size", "units", "regular", "completely_regular"] {
                out.push_str(&format!("{key}={}\n", plain(&report[key])));
            }
            if let Some(rows) = report["witness"].as_array() {
                let rendered: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        r.as_array()
                            .expect("row")
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join("")
                    })
                    .collect();
                out.push_str(&format!("witness={}\n", rendered.join("/")));
            }
            Ok(Output::ok(out))
        }
        other => Err(bad_format("fflab", other, "{json,text}")),
    }
}

fn run_verify(n: usize, format: &str) -> Result<Output, CliError> {
    let report = verify::run(n)?;
    let code = if report.all_pass() { 0 } else { 1 };
    match format {
        "text" => Ok(Output { text: report.to_text(), code }),
        "json" => Ok(Output {
            text: format!("{}\n", report.to_json_value()),
            code,
        }),
        other => Err(bad_format("verify", other, "{text,json}")),
    }
}
