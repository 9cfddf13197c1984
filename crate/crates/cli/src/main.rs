use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use berge_core::factor::find_2k_factor_traced;
use berge_core::format::{
    parse_barrier, parse_bipartite, parse_certificate, parse_hypergraph, write_barrier,
    write_bipartite, write_certificate, write_hypergraph,
};
use berge_core::harness::{
    tightness_search, verify_theorem, TheoremConfig, TheoremMode, TightnessConfig,
};
use berge_core::parity::{check_barrier_structure_with, criterion_scan, delta};
use berge_core::{
    lift_to_berge, BipartiteGraph, Budget, DegreeSpec, Error, Hypergraph, ToughnessValue,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "berge",
    version,
    about = "Toughness, parity barriers and Berge-k-factors of hypergraphs"
)]
struct Cli {
    /// Enumeration limits: `N` or `toughness=N,y=N,criterion=N,structure=N`.
    /// Overrides BF_BUDGET.
    #[arg(long, global = true, env = "BF_BUDGET")]
    enum_limit: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact toughness of a hypergraph (.hg) or of the hypergraph of a .big file.
    Toughness { file: PathBuf },
    /// Y-toughness of a bipartite graph (.big) or of the incidence graph of a .hg file.
    YToughness { file: PathBuf },
    /// Converts .hg to its incidence graph, or .big back to a hypergraph.
    Incidence { file: PathBuf },
    /// Runs the full barrier scan and reports whether a (2,k)-factor exists.
    Criterion {
        file: PathBuf,
        #[command(flatten)]
        k: KArg,
    },
    /// Prints a barrier in .bar format.
    Barrier {
        file: PathBuf,
        #[command(flatten)]
        k: KArg,
        /// Print the biased barrier instead of the first one.
        #[arg(long)]
        biased: bool,
        /// Check the structure clauses of the biased barrier.
        #[arg(long)]
        check_structure: bool,
    },
    /// Finds a Berge-k-factor (.hg) or a (2,k)-factor (.big).
    Factor {
        file: PathBuf,
        #[command(flatten)]
        k: KArg,
        /// Write the certificate here instead of stdout.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        /// Print solver sizes to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Verifies a certificate (.bkf) or a barrier record (.bar, needs -k).
    Verify {
        file: PathBuf,
        cert: PathBuf,
        #[arg(short = 'k')]
        k: Option<usize>,
    },
    /// Checks the toughness theorem over generated hypergraphs.
    Theorem {
        #[command(flatten)]
        k: KArg,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Random mode with this many instances; exhaustive otherwise.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum edge count (default 6 exhaustive, 12 random).
        #[arg(long)]
        max_edges: Option<usize>,
        /// key=value output.
        #[arg(long)]
        porcelain: bool,
    },
    /// Searches for the toughest instance without a Berge-k-factor.
    Tightness {
        #[command(flatten)]
        k: KArg,
        /// Number of candidate instances.
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
}

#[derive(Args)]
struct KArg {
    #[arg(short = 'k')]
    k: usize,
}

impl KArg {
    fn spec(&self) -> Result<DegreeSpec, Failure> {
        Ok(DegreeSpec::new(self.k)?)
    }
}

/// Exit codes: 1 property fails, 2 usage or format error, 3 budget exceeded.
enum Failure {
    Property(String),
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = budget(cli.enum_limit.as_deref()).and_then(|b| run(cli.command, &b));
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Property(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn budget(limit: Option<&str>) -> Result<Budget, Failure> {
    match limit {
        None => Ok(Budget::default()),
        Some(s) => Ok(Budget::default().with_overrides(s)?),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn is_bipartite(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "big")
}

enum Input {
    Hyper(Hypergraph),
    Bipartite(BipartiteGraph),
}

impl Input {
    fn load(path: &Path) -> Result<Self, Failure> {
        let text = read(path)?;
        Ok(if is_bipartite(path) {
            Input::Bipartite(parse_bipartite(&text)?)
        } else {
            Input::Hyper(parse_hypergraph(&text)?)
        })
    }

    fn hypergraph(self) -> Result<Hypergraph, Failure> {
        match self {
            Input::Hyper(h) => Ok(h),
            Input::Bipartite(g) => Ok(g.to_hypergraph()?),
        }
    }

    fn bipartite(self) -> BipartiteGraph {
        match self {
            Input::Hyper(h) => BipartiteGraph::incidence(&h),
            Input::Bipartite(g) => g,
        }
    }
}

fn braces(items: &[usize]) -> String {
    let inner: Vec<String> = items.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn toughness_text(t: &ToughnessValue) -> String {
    match t {
        ToughnessValue::Infinite => "toughness inf\n".to_string(),
        ToughnessValue::Finite {
            witness,
            components,
            ..
        } => format!(
            "toughness {t}\nwitness {}\ncomponents {components}\n",
            braces(witness)
        ),
    }
}

fn run(command: Command, budget: &Budget) -> Outcome {
    match command {
        Command::Toughness { file } => {
            let h = Input::load(&file)?.hypergraph()?;
            Ok(toughness_text(&h.toughness_with(budget)?))
        }
        Command::YToughness { file } => {
            let g = Input::load(&file)?.bipartite();
            Ok(toughness_text(&g.y_toughness_with(budget)?))
        }
        Command::Incidence { file } => match Input::load(&file)? {
            Input::Hyper(h) => Ok(write_bipartite(&BipartiteGraph::incidence(&h))),
            Input::Bipartite(g) => Ok(write_hypergraph(&g.to_hypergraph()?)),
        },
        Command::Criterion { file, k } => {
            let spec = k.spec()?;
            let g = Input::load(&file)?.bipartite();
            let scan = criterion_scan(&g, &spec, budget)?;
            let mut out = String::new();
            let _ = writeln!(out, "pairs {}", scan.pairs);
            let _ = writeln!(out, "odd deltas {}", scan.odd_deltas);
            let _ = writeln!(out, "min delta {}", scan.min_delta);
            match scan.first_barrier {
                None => {
                    out.push_str("factor exists\n");
                    Ok(out)
                }
                Some(bar) => {
                    out.push_str("factor none\n");
                    out.push_str(&write_barrier(&bar));
                    Err(Failure::Property(out))
                }
            }
        }
        Command::Barrier {
            file,
            k,
            biased,
            check_structure,
        } => {
            let spec = k.spec()?;
            let g = Input::load(&file)?.bipartite();
            let scan = criterion_scan(&g, &spec, budget)?;
            let bar = if biased || check_structure {
                scan.biased_barrier
            } else {
                scan.first_barrier
            };
            let Some(bar) = bar else {
                return Err(Failure::Property(
                    "no barrier: a (2,k)-factor exists\n".into(),
                ));
            };
            let mut out = write_barrier(&bar);
            if check_structure {
                let report = check_barrier_structure_with(&g, &bar, &spec, budget)?;
                let names = [
                    "B in Y",
                    "odd components",
                    "even components",
                    "neighbourhoods",
                ];
                for (name, clause) in names.iter().zip(report.clauses()) {
                    let _ = writeln!(out, "# {name}: {clause}");
                }
                let _ = writeln!(
                    out,
                    "# Z sets checked: {}{}",
                    report.z_checked,
                    if report.z_truncated {
                        " (singletons and pairs only)"
                    } else {
                        ""
                    }
                );
                if !report.all_pass() {
                    return Err(Failure::Property(out));
                }
            }
            Ok(out)
        }
        Command::Factor {
            file,
            k,
            out,
            trace,
        } => {
            let spec = k.spec()?;
            let input = Input::load(&file)?;
            let hyper = match &input {
                Input::Hyper(h) => Some(h.clone()),
                Input::Bipartite(_) => None,
            };
            let g = input.bipartite();
            let (found, tr) = find_2k_factor_traced(&g, &spec)?;
            if trace {
                eprint!("{tr}");
            }
            let Some(f) = found else {
                let mut text = "no factor\n".to_string();
                if g.vertex_count() <= budget.criterion_vertices {
                    if let Some(bar) = criterion_scan(&g, &spec, budget)?.biased_barrier {
                        text.push_str(&write_barrier(&bar));
                    }
                }
                return Err(Failure::Property(text));
            };
            let text = match hyper {
                Some(h) => write_certificate(&lift_to_berge(&h, &f)?),
                None => {
                    let mut s = format!("{} {}\n", f.k, f.chosen.len());
                    for (x, y) in &f.chosen {
                        let _ = writeln!(s, "{x} {y}");
                    }
                    s
                }
            };
            match out {
                Some(path) => {
                    fs::write(&path, text)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Verify { file, cert, k } => {
            let is_barrier = cert.extension().is_some_and(|e| e == "bar");
            if is_barrier {
                let k = k.ok_or_else(|| Failure::Usage("verifying a barrier needs -k".into()))?;
                let spec = DegreeSpec::new(k)?;
                let g = Input::load(&file)?.bipartite();
                let record = parse_barrier(&read(&cert)?)?;
                let fresh = delta(&g, &record.a, &record.b, &spec)?;
                if fresh != record {
                    return Err(Failure::Property(format!(
                        "invalid: record does not match the graph (delta {})\n",
                        fresh.delta
                    )));
                }
                if !fresh.is_barrier() {
                    return Err(Failure::Property(format!(
                        "invalid: delta {} is not negative\n",
                        fresh.delta
                    )));
                }
                Ok(format!("valid barrier, delta {}\n", fresh.delta))
            } else {
                let h = Input::load(&file)?.hypergraph()?;
                let c = parse_certificate(&read(&cert)?)?;
                if let Some(k) = k {
                    if k != c.k {
                        return Err(Failure::Property(format!(
                            "invalid: certificate is for k = {}, not {k}\n",
                            c.k
                        )));
                    }
                }
                match h.verify_berge_factor(&c) {
                    Ok(()) => Ok(format!("valid Berge-{}-factor\n", c.k)),
                    Err(v) => Err(Failure::Property(format!("invalid: {v}\n"))),
                }
            }
        }
        Command::Theorem {
            k,
            n_min,
            n_max,
            trials,
            seed,
            max_edges,
            porcelain,
        } => {
            let mut cfg = match trials {
                Some(t) => TheoremConfig::random(n_max, k.k, t, seed),
                None => TheoremConfig::exhaustive(n_max, k.k),
            };
            cfg.n_lo = n_min;
            cfg.budget = *budget;
            if let Some(m) = max_edges {
                match &mut cfg.mode {
                    TheoremMode::Exhaustive { max_edges, .. }
                    | TheoremMode::Random { max_edges, .. } => *max_edges = m,
                }
            }
            let report = verify_theorem(&cfg)?;
            let text = if porcelain {
                report.porcelain()
            } else {
                report.to_string()
            };
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure::Property(text))
            }
        }
        Command::Tightness {
            k,
            budget: candidates,
            seed,
            n_max,
        } => {
            let cfg = TightnessConfig {
                k: k.k,
                budget: candidates,
                seed,
                n_max,
                limits: *budget,
            };
            let r = tightness_search(&cfg)?;
            let mut out = format!("examined {}\nfactorless {}\n", r.examined, r.factorless);
            match r.best {
                None => out.push_str("best none\n"),
                Some(best) => {
                    let _ = writeln!(out, "best toughness {}", best.toughness);
                    let _ = writeln!(out, "index {}", best.index);
                    out.push_str("# instance\n");
                    out.push_str(&write_hypergraph(&best.instance));
                    if let Some(bar) = &best.barrier {
                        out.push_str("# barrier\n");
                        out.push_str(&write_barrier(bar));
                    }
                }
            }
            Ok(out)
        }
    }
}
