use std::fmt::Write as _;
use std::time::Instant;

use super::corpus::Corpus;
use crate::error::{Error, Result};
use crate::fii::{kernelize, KernelizeOptions, ReplacementTable};
use crate::graph::Graph;
use crate::par;
use crate::problems::{opt_value, Problem};

/// Parameters to test per instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KRange {
    /// `OPT + d` for each offset `d`
    AroundOpt(Vec<i64>),
    Fixed(Vec<i64>),
}

impl KRange {
    fn values(&self, opt: i64) -> Vec<i64> {
        match self {
            KRange::AroundOpt(d) => d.iter().map(|d| opt + d).collect(),
            KRange::Fixed(ks) => ks.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessRow {
    pub instance: usize,
    pub n: usize,
    pub k: i64,
    pub opt: i64,
    pub kernel_n: usize,
    pub k_prime: i64,
    pub kernel_opt: i64,
    pub replacements: usize,
    pub yes: bool,
    pub kernel_yes: bool,
}

impl SoundnessRow {
    pub fn sound(&self) -> bool {
        self.yes == self.kernel_yes && self.k_prime <= self.k && self.kernel_n <= self.n
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SoundnessReport {
    pub rows: Vec<SoundnessRow>,
    /// one line per unsound row or failed run
    pub violations: Vec<String>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Kernelizes every instance once per `k` and decides both sides with the
/// exact oracles. Instances run in parallel; rows come back in corpus order.
pub fn verify_kernel_soundness(
    p: Problem,
    corpus: &[Graph],
    table: &ReplacementTable,
    ks: &KRange,
    opts: &KernelizeOptions,
) -> Result<SoundnessReport> {
    let per_instance = par::map_range(corpus.len(), |i| -> Result<Vec<SoundnessRow>> {
        let g = &corpus[i];
        let opt = opt_value(p, g)?;
        ks.values(opt)
            .into_iter()
            .map(|k| {
                let kern = kernelize(p, g, k, table, opts)?;
                let kernel_opt = opt_value(p, &kern.graph)?;
                Ok(SoundnessRow {
                    instance: i,
                    n: g.n(),
                    k,
                    opt,
                    kernel_n: kern.graph.n(),
                    k_prime: kern.k,
                    kernel_opt,
                    replacements: kern.trace.len(),
                    yes: p.is_yes(opt, k),
                    kernel_yes: p.is_yes(kernel_opt, kern.k),
                })
            })
            .collect()
    });
    let mut report = SoundnessReport::default();
    for (i, rows) in per_instance.into_iter().enumerate() {
        match rows {
            Ok(rows) => {
                for r in rows {
                    if !r.sound() {
                        report.violations.push(format!("{r:?}"));
                    }
                    report.rows.push(r);
                }
            }
            Err(e @ Error::TooLarge { .. }) => return Err(e),
            Err(e) => report.violations.push(format!("instance {i}: {e}")),
        }
    }
    Ok(report)
}

pub const CSV_HEADER: [&str; 9] =
    ["instance_id", "n", "m", "k", "kernel_n", "kernel_m", "k_prime", "replacements", "wall_time"];

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRow {
    pub instance_id: String,
    pub n: usize,
    pub m: usize,
    pub k: i64,
    pub kernel_n: usize,
    pub kernel_m: usize,
    pub k_prime: i64,
    pub replacements: usize,
    /// seconds; `None` when timing is off
    pub wall_time: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub problem: Problem,
    pub family: String,
    pub seed: u64,
    pub rows: Vec<ExperimentRow>,
}

/// How `k` is chosen per instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KChoice {
    Opt,
    Fixed(i64),
}

#[derive(Clone, Debug)]
pub struct ExperimentOptions {
    pub k: KChoice,
    pub eta: Option<usize>,
    /// Record wall-clock time per row. Off gives byte-identical reports
    /// for identical inputs.
    pub timing: bool,
    pub verify_steps: bool,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        ExperimentOptions { k: KChoice::Opt, eta: None, timing: true, verify_steps: false }
    }
}

pub fn run_experiment(
    p: Problem,
    corpus: &Corpus,
    table: &ReplacementTable,
    opts: &ExperimentOptions,
) -> Result<ExperimentReport> {
    let kopts = KernelizeOptions { eta: opts.eta, shuffle_seed: None, verify_steps: opts.verify_steps };
    let rows = par::map_range(corpus.graphs.len(), |i| -> Result<ExperimentRow> {
        let g = &corpus.graphs[i];
        let k = match opts.k {
            KChoice::Opt => opt_value(p, g)?,
            KChoice::Fixed(k) => k,
        };
        let start = Instant::now();
        let kern = kernelize(p, g, k, table, &kopts)?;
        let elapsed = start.elapsed().as_secs_f64();
        Ok(ExperimentRow {
            instance_id: corpus.instance_id(i),
            n: g.n(),
            m: g.m(),
            k,
            kernel_n: kern.graph.n(),
            kernel_m: kern.graph.m(),
            k_prime: kern.k,
            replacements: kern.trace.len(),
            wall_time: opts.timing.then_some(elapsed),
        })
    });
    Ok(ExperimentReport {
        problem: p,
        family: corpus.family.to_string(),
        seed: corpus.seed,
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.instance_id.clone(),
                r.n.to_string(),
                r.m.to_string(),
                r.k.to_string(),
                r.kernel_n.to_string(),
                r.kernel_m.to_string(),
                r.k_prime.to_string(),
                r.replacements.to_string(),
                r.wall_time.map_or_else(String::new, |s| format!("{s:.6}")),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii fields")
    }

    /// Largest `kernel_n / k` over rows with `k > 0`.
    pub fn max_ratio(&self) -> Option<f64> {
        self.rows.iter().filter(|r| r.k > 0).map(|r| r.kernel_n as f64 / r.k as f64).reduce(f64::max)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        write!(s, "{} on {} (seed {}): {} instances, ", self.problem, self.family, self.seed, self.rows.len()).unwrap();
        match self.max_ratio() {
            Some(r) => write!(s, "max kernel_n/k = {r:.3}").unwrap(),
            None => s.push_str("max kernel_n/k undefined (no row with k > 0)"),
        }
        s
    }

    /// Rows breaking `kernel_n ≤ n` or `k' ≤ k`.
    pub fn invariant_violations(&self) -> Vec<&ExperimentRow> {
        self.rows.iter().filter(|r| r.kernel_n > r.n || r.k_prime > r.k).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fii::{build_replacement_table_with, TableOptions};
    use crate::harness::corpus::{gen_corpus, CorpusParams, Family};

    fn table(p: Problem) -> ReplacementTable {
        build_replacement_table_with(p, 1, 5, &TableOptions { certify: false, ..Default::default() }).unwrap().0
    }

    #[test]
    fn empty_corpus_gives_empty_report() {
        let p = Problem::VertexCover;
        let r = verify_kernel_soundness(p, &[], &table(p), &KRange::AroundOpt(vec![0]), &Default::default()).unwrap();
        assert!(r.rows.is_empty() && r.is_sound());
    }

    #[test]
    fn negative_k_is_a_no_instance_on_both_sides() {
        let p = Problem::VertexCover;
        let c = gen_corpus(Family::GridPendants, &CorpusParams { count: 2, t: 2, pendants: 1, tree_size: 6, ..Default::default() }, 0)
            .unwrap();
        let r = verify_kernel_soundness(p, &c.graphs, &table(p), &KRange::Fixed(vec![-2, -1]), &Default::default()).unwrap();
        assert!(r.is_sound(), "{:?}", r.violations);
        assert!(r.rows.iter().all(|row| !row.yes && !row.kernel_yes && row.k_prime <= row.k));
    }

    #[test]
    fn soundness_on_small_planar_corpus() {
        let c = gen_corpus(Family::RandomPlanar, &CorpusParams { count: 12, n_min: 6, n_max: 14, keep: 0.5, ..Default::default() }, 4)
            .unwrap();
        for p in [Problem::VertexCover, Problem::DominatingSet, Problem::FeedbackVertexSet] {
            let r = verify_kernel_soundness(p, &c.graphs, &table(p), &KRange::AroundOpt(vec![-1, 0, 1]), &Default::default())
                .unwrap();
            assert_eq!(r.rows.len(), 36);
            assert!(r.is_sound(), "{p}: {:?}", r.violations);
        }
    }

    #[test]
    fn experiment_csv_is_deterministic_without_timing() {
        let p = Problem::VertexCover;
        let c = gen_corpus(Family::GridPendants, &CorpusParams { count: 3, t: 3, pendants: 2, tree_size: 8, ..Default::default() }, 9)
            .unwrap();
        let tab = table(p);
        let opts = ExperimentOptions { timing: false, ..Default::default() };
        let a = run_experiment(p, &c, &tab, &opts).unwrap();
        let b = run_experiment(p, &c, &tab, &opts).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        let csv = a.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("instance_id,n,m,k,kernel_n,kernel_m,k_prime,replacements,wall_time"));
        assert_eq!(lines.count(), 3);
        assert!(a.invariant_violations().is_empty());
        assert!(a.rows.iter().all(|r| r.kernel_n < r.n && r.replacements > 0));
        assert!(a.max_ratio().unwrap().is_finite());
        assert!(a.summary().contains("max kernel_n/k"));
    }

    #[test]
    fn protrusion_free_corpus_is_untouched() {
        let p = Problem::VertexCover;
        let c = gen_corpus(Family::Grid, &CorpusParams { t: 4, ..Default::default() }, 0).unwrap();
        let r = run_experiment(p, &c, &table(p), &ExperimentOptions::default()).unwrap();
        assert_eq!(r.rows[0].kernel_n, 16);
        assert_eq!(r.rows[0].replacements, 0);
        assert!(r.rows[0].wall_time.is_some());
    }
}
