//! The `orient4` command-line front end.
//!
//! Exit status: 0 on success, 1 when a request is refused (C1 or open
//! instance, exceeded budget, failed verification), 2 on malformed input,
//! 3 on an internal error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classifier::{classify, Verdict};
use crate::constructions::construct_optimal;
use crate::digraph::{parse_edge_list, Orientation};
use crate::error::{Error, Result};
use crate::oracle::{bipartite_orientation_number, orientation_number, OracleOptions, OracleResult, DEFAULT_MAX_EDGES};
use crate::sperner::{first_m, kappa, shadow, Family};
use crate::tree::TreeSpec;

#[derive(Parser, Debug)]
#[command(name = "orient4", version, about = "Orientation number of vertex-multiplied diameter-4 trees")]
pub struct Cli {
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether the orientation number is 4 or 5.
    Classify { file: PathBuf },
    /// Emit a diameter-4 orientation for a C0 instance.
    Construct {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        /// Append a BFS report (diameter, strongness) as comments.
        #[arg(long)]
        verify: bool,
        /// Prefix the case, schedules and relabeling as comments.
        #[arg(long)]
        explain: bool,
    },
    /// Check an edge list against a spec.
    Verify { spec: PathBuf, edgelist: PathBuf },
    /// Exhaustive search for small instances.
    Oracle {
        /// Tree spec; omit with --bipartite.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
        /// Search only orientations with the first edge in its default direction.
        #[arg(long)]
        symmetry: bool,
        /// Search K(P,Q) instead of a tree.
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        bipartite: Option<Vec<usize>>,
    },
    /// Squashed order and shadow utilities.
    Sperner {
        #[command(subcommand)]
        op: SpernerOp,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpernerOp {
    /// κ_{n,r}(m) = |ΔF_{n,r}(m)| − m.
    Kappa {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u64,
    },
    /// Shadow of the first m k-sets in squashed order.
    Shadow {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u64,
    },
    /// All k-subsets of {1..n} in squashed order.
    Squashed {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Edgelist,
    Dot,
}

/// What a run printed and how it ended.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Refused(_) | Error::ExtensionInapplicable(_) => 1,
        Error::Usage(_) | Error::InvalidSpec(_) | Error::Parse(_) => 2,
        Error::Internal(_) => 3,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_spec(path: &Path) -> Result<TreeSpec> {
    TreeSpec::from_json(&read(path)?)
}

fn to_json(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
}

pub fn run(cli: &Cli) -> Outcome {
    let res = match &cli.command {
        Command::Classify { file } => run_classify(file, cli.json),
        Command::Construct { file, format, verify, explain } => {
            run_construct(file, *format, *verify, *explain, cli.json)
        }
        Command::Verify { spec, edgelist } => run_verify(spec, edgelist, cli.json),
        Command::Oracle { file, max_edges, symmetry, bipartite } => {
            run_oracle(file.as_deref(), *max_edges, *symmetry, bipartite.as_deref(), cli.json)
        }
        Command::Sperner { op } => run_sperner(op, cli.json),
    };
    res.unwrap_or_else(|e| {
        let stdout = if cli.json { to_json(json!({ "error": e.to_string(), "exit": exit_code(&e) })) } else { String::new() };
        Outcome { code: exit_code(&e), stdout, stderr: format!("orient4: {e}\n") }
    })
}

fn run_classify(file: &Path, as_json: bool) -> Result<Outcome> {
    let cls = classify(&read_spec(file)?)?;
    if as_json {
        return Ok(Outcome::ok(to_json(serde_json::to_value(&cls).expect("serializable"))));
    }
    let head = match cls.verdict {
        Verdict::C0 => "C0 (orientation number 4)".to_string(),
        Verdict::C1 => "C1 (orientation number 5)".to_string(),
        Verdict::UnknownGap => "UnknownGap (open case)".to_string(),
    };
    let mut out = format!("{head}, rule {}\n{}\n", cls.rule, cls.comparison);
    if let Some(k) = cls.k_witness {
        let _ = writeln!(out, "k = {k}");
    }
    if let Some(g) = &cls.gap_detail {
        let _ = writeln!(
            out,
            "necessary bound holds: {}, sufficient bound holds: {}",
            g.necessary_bound_holds, g.sufficient_bound_holds
        );
    }
    Ok(Outcome::ok(out))
}

fn comment(text: &str) -> String {
    text.lines().map(|l| format!("# {l}\n")).collect()
}

fn verify_line(d: &Orientation) -> String {
    format!("diameter {}, {}", d.diameter(), if d.is_strong() { "strong" } else { "not strong" })
}

fn run_construct(file: &Path, format: Format, verify: bool, explain: bool, as_json: bool) -> Result<Outcome> {
    let spec = read_spec(file)?;
    let c = construct_optimal(&spec)?;
    let d = &c.orientation;
    if as_json {
        let arcs: Vec<[String; 2]> = d.arcs().iter().map(|(u, v)| [u.to_string(), v.to_string()]).collect();
        let mut v = json!({
            "case": c.case.name(),
            "block": c.block.name(),
            "k": c.k,
            "searched": c.searched,
            "permutation": c.permutation,
            "reduced": c.reduced,
            "arcs": arcs,
        });
        if verify {
            v["diameter"] = json!(d.diameter().finite());
            v["strong"] = json!(d.is_strong());
        }
        if explain {
            v["schedule"] = serde_json::to_value(&c.schedule).expect("serializable");
            v["explain"] = json!(c.explain());
        }
        return Ok(Outcome::ok(to_json(v)));
    }
    let mut out = String::new();
    if explain {
        out += &comment(&c.explain());
    }
    out += &match format {
        Format::Edgelist => d.to_edge_list(),
        Format::Dot => d.to_dot(),
    };
    if verify {
        let line = verify_line(d);
        out += &match format {
            Format::Edgelist => comment(&line),
            Format::Dot => format!("// {line}\n"),
        };
    }
    Ok(Outcome::ok(out))
}

fn run_verify(spec_path: &Path, edges_path: &Path, as_json: bool) -> Result<Outcome> {
    let spec = read_spec(spec_path)?;
    let arcs = parse_edge_list(&read(edges_path)?)?;
    let (report, code, diam, strong, matches) = match Orientation::from_arcs(&spec, &arcs) {
        Ok(d) => {
            let strong = d.is_strong();
            (format!("{}, edges match", verify_line(&d)), if strong { 0 } else { 1 }, d.diameter().finite(), strong, true)
        }
        Err(Error::InvalidSpec(msg)) => (format!("edges do not match the spec: {msg}"), 1, None, false, false),
        Err(e) => return Err(e),
    };
    let stdout = if as_json {
        to_json(json!({ "diameter": diam, "strong": strong, "edges_match": matches, "report": report }))
    } else {
        report + "\n"
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn oracle_report(r: &OracleResult, as_json: bool) -> String {
    if as_json {
        return to_json(json!({
            "orientation_number": r.orientation_number,
            "witness": r.witness_arcs,
            "witness_rank": r.witness_rank,
            "orientations_examined": r.orientations_examined,
            "strong_count": r.strong_count,
            "elapsed_seconds": r.elapsed.as_secs_f64(),
        }));
    }
    let mut out = format!("orientation number: {}\n", r.orientation_number);
    let _ = writeln!(out, "orientations examined: {}", r.orientations_examined);
    let _ = writeln!(out, "strong orientations: {}", r.strong_count);
    let _ = writeln!(out, "wall time: {:.3}s", r.elapsed.as_secs_f64());
    out += "witness:\n";
    for (u, v) in &r.witness_arcs {
        let _ = writeln!(out, "{u} -> {v}");
    }
    out
}

fn run_oracle(
    file: Option<&Path>,
    max_edges: usize,
    symmetry: bool,
    bipartite: Option<&[usize]>,
    as_json: bool,
) -> Result<Outcome> {
    let opts = OracleOptions { max_edges, symmetry, ..OracleOptions::default() };
    let r = match (bipartite, file) {
        (Some(&[p, q]), None) => bipartite_orientation_number(p, q, &opts)?,
        (Some(_), Some(_)) => return Err(Error::Usage("give either a spec file or --bipartite, not both".into())),
        (None, Some(f)) => orientation_number(&read_spec(f)?, &opts)?,
        _ => return Err(Error::Usage("oracle needs a spec file or --bipartite P Q".into())),
    };
    Ok(Outcome::ok(oracle_report(&r, as_json)))
}

fn family_strings(f: &Family) -> Vec<String> {
    f.sets().iter().map(|s| s.to_string()).collect()
}

fn run_sperner(op: &SpernerOp, as_json: bool) -> Result<Outcome> {
    let out = match *op {
        SpernerOp::Kappa { n, r, m } => {
            let v = kappa(n, r, m)?;
            if as_json {
                to_json(json!({ "n": n, "r": r, "m": m, "kappa": v }))
            } else {
                format!("{v}\n")
            }
        }
        SpernerOp::Shadow { n, k, m } => {
            let sh = shadow(&first_m(n, k, m)?)?;
            if as_json {
                to_json(json!({ "n": n, "k": k, "m": m, "size": sh.len(), "sets": family_strings(&sh) }))
            } else {
                format!("{}\n{}\n", sh.len(), family_strings(&sh).join(" "))
            }
        }
        SpernerOp::Squashed { n, k } => {
            let lv = Family::level(n, k)?;
            if as_json {
                to_json(json!({ "n": n, "k": k, "sets": family_strings(&lv) }))
            } else {
                family_strings(&lv).join("\n") + "\n"
            }
        }
    };
    Ok(Outcome::ok(out))
}
