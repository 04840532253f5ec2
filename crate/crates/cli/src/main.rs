use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use protrude::fii::{build_replacement_table_with, kernelize, io as table_io, KernelizeOptions, ReplacementTable, TableOptions};
use protrude::graph::io::{parse_graph, write_graph};
use protrude::harness::{
    gen_corpus, run_experiment, verify_kernel_soundness, Corpus, CorpusParams, ExperimentOptions, Family, KChoice, KRange,
};
use protrude::modulator::recursive_modulator;
use protrude::protrusion::{build_pd, validate_pd, write_pd};
use protrude::td::{exact_treewidth_with_budget, heuristic_decomposition, io::write_decomposition, EXACT_BUDGET};
use protrude::Problem;

#[derive(Parser)]
#[command(name = "protrude", version, about = "Protrusion replacement kernelization workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kernelize one graph with a replacement table
    Kernelize {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[command(flatten)]
        table: TableArgs,
        /// seed protrusion search from a treewidth-η modulator
        #[arg(long)]
        eta: Option<usize>,
        /// try protrusions in a random order drawn from this seed
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build (and certify) a replacement table
    TableBuild {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        size_bound: usize,
        #[command(flatten)]
        certify: CertifyArgs,
        /// seed for the random contexts used at t = 3
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tree decomposition, or with --eta a protrusion decomposition
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        eta: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check kernel soundness against the exact oracles on a generated corpus
    Verify {
        #[arg(long)]
        problem: Problem,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        eta: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kernelize a generated corpus and write a CSV report
    Experiment {
        #[arg(long)]
        problem: Problem,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        table: TableArgs,
        /// parameter for every instance; defaults to the instance optimum
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long)]
        eta: Option<usize>,
        /// leave wall_time empty so identical runs give identical reports
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TableArgs {
    /// table file written by `table-build`
    #[arg(long, conflicts_with_all = ["t", "size_bound"])]
    table: Option<PathBuf>,
    /// boundary size of a table built on the fly
    #[arg(long, default_value_t = 1)]
    t: usize,
    #[arg(long, default_value_t = 7)]
    size_bound: usize,
    #[command(flatten)]
    certify: CertifyArgs,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    no_certify: bool,
    /// largest context for certification
    #[arg(long, default_value_t = 8)]
    context_size: usize,
}

#[derive(Args)]
struct CorpusArgs {
    /// grid | grid+pendants | random-planar | union
    #[arg(long, default_value = "random-planar")]
    family: Family,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// grid side (largest side for `union`)
    #[arg(long, default_value_t = 3)]
    grid_side: usize,
    #[arg(long, default_value_t = 2)]
    pendants: usize,
    #[arg(long, default_value_t = 15)]
    tree_size: usize,
    #[arg(long, default_value_t = 8)]
    n_min: usize,
    #[arg(long, default_value_t = 22)]
    n_max: usize,
    /// edge survival probability for `random-planar`
    #[arg(long, default_value_t = 0.7)]
    keep: f64,
    #[arg(long, default_value_t = 2)]
    parts: usize,
}

impl CorpusArgs {
    fn generate(&self) -> Result<Corpus> {
        let params = CorpusParams {
            count: self.count,
            t: self.grid_side,
            pendants: self.pendants,
            tree_size: self.tree_size,
            n_min: self.n_min,
            n_max: self.n_max,
            keep: self.keep,
            parts: self.parts,
        };
        Ok(gen_corpus(self.family, &params, self.seed)?)
    }
}

fn table_options(c: &CertifyArgs, seed: u64) -> TableOptions {
    TableOptions { certify: !c.no_certify, context_size: c.context_size, seed, ..Default::default() }
}

fn load_table(p: Problem, args: &TableArgs) -> Result<ReplacementTable> {
    let table = match &args.table {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            table_io::parse_table(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => build_replacement_table_with(p, args.t, args.size_bound, &table_options(&args.certify, 0))?.0,
    };
    if table.problem != p {
        bail!("table is for {}, not {p}", table.problem);
    }
    Ok(table)
}

fn read_graph(path: &PathBuf) -> Result<protrude::Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Kernelize { problem, input, k, table, eta, seed, out } => {
            let g = read_graph(&input)?;
            let table = load_table(problem, &table)?;
            let opts = KernelizeOptions { eta, shuffle_seed: seed, ..Default::default() };
            let kern = kernelize(problem, &g, k, &table, &opts)?;
            eprintln!(
                "n {} -> {}, m {} -> {}, k {} -> {}, {} replacements",
                g.n(),
                kern.graph.n(),
                g.m(),
                kern.graph.m(),
                k,
                kern.k,
                kern.trace.len()
            );
            emit(&out, &format!("# k {}\n{}", kern.k, write_graph(&kern.graph)))?;
        }
        Command::TableBuild { problem, t, size_bound, certify, seed, out } => {
            let (table, report) = build_replacement_table_with(problem, t, size_bound, &table_options(&certify, seed))?;
            eprintln!("{} classes, max_rep_size {}", table.class_count(), table.max_rep_size);
            if let Some(r) = report {
                eprintln!("certified {} pairs over {:?} contexts ({} checks)", r.pairs, r.contexts, r.checks);
            }
            emit(&out, &table_io::write_table(&table))?;
        }
        Command::Decompose { input, eta, out } => {
            let g = read_graph(&input)?;
            match eta {
                None => {
                    let td = if g.n() <= EXACT_BUDGET {
                        exact_treewidth_with_budget(&g, EXACT_BUDGET)?.1
                    } else {
                        heuristic_decomposition(&g)
                    };
                    eprintln!("width {}", td.width());
                    emit(&out, &write_decomposition(&td, g.n()))?;
                }
                Some(eta) => {
                    let s = recursive_modulator(&g, eta, &[])?;
                    let pd = build_pd(&g, &s)?;
                    let (alpha, r) = (pd.alpha(), pd.measured_r(&g));
                    if let Err(v) = validate_pd(&g, &pd, alpha, r) {
                        bail!("decomposition failed validation: {v}");
                    }
                    eprintln!("modulator {}, core {}, parts {}, alpha {alpha}, r {r}", s.len(), pd.core.len(), pd.parts.len());
                    emit(&out, &write_pd(&pd))?;
                }
            }
        }
        Command::Verify { problem, corpus, table, eta, out } => {
            let corpus = corpus.generate()?;
            let table = load_table(problem, &table)?;
            let opts = KernelizeOptions { eta, ..Default::default() };
            let report = verify_kernel_soundness(problem, &corpus.graphs, &table, &KRange::AroundOpt(vec![-1, 0, 1]), &opts)?;
            let mut text = String::new();
            for v in &report.violations {
                text.push_str(v);
                text.push('\n');
            }
            emit(&out, &text)?;
            eprintln!("{} runs, {} violations", report.rows.len(), report.violations.len());
            return Ok(report.is_sound());
        }
        Command::Experiment { problem, corpus, table, k, eta, no_timing, out } => {
            let corpus = corpus.generate()?;
            let table = load_table(problem, &table)?;
            let opts = ExperimentOptions {
                k: k.map_or(KChoice::Opt, KChoice::Fixed),
                eta,
                timing: !no_timing,
                ..Default::default()
            };
            let report = run_experiment(problem, &corpus, &table, &opts)?;
            emit(&out, &report.to_csv())?;
            eprintln!("{}", report.summary());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
