//! Ranking metrics, timing and the tabular benchmark report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Pair};
use crate::heuristics::{HeuristicId, Scorer, ScoredPair};
use crate::rng;

/// Scored pairs sorted by descending score, negatives first among ties.
fn ranked(scored: &[ScoredPair]) -> Result<Vec<(f64, bool)>> {
    if scored.is_empty() {
        return Err(Error::InvalidArgument("no scored pairs".into()));
    }
    let mut out = scored
        .iter()
        .map(|s| {
            s.truth
                .map(|t| (s.score, t.is_positive()))
                .ok_or_else(|| Error::InvalidArgument(format!("pair ({}, {}) has no ground truth", s.u, s.v)))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

fn top_l(scored: &[ScoredPair]) -> Result<(Vec<(f64, bool)>, usize)> {
    let mut r = ranked(scored)?;
    let l = r.iter().filter(|x| x.1).count();
    if l == 0 {
        return Err(Error::InvalidArgument("test set has no positives".into()));
    }
    r.truncate(l);
    Ok((r, l))
}

/// Fraction of positives among the `L` best-ranked pairs, where `L` is the
/// number of positives.
pub fn precision_at_l(scored: &[ScoredPair]) -> Result<f64> {
    let (top, l) = top_l(scored)?;
    Ok(top.iter().filter(|x| x.1).count() as f64 / l as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdedPrecision {
    pub precision: f64,
    pub max_score: f64,
    pub min_score: f64,
}

/// Precision counting only top-`L` positives scored strictly above the
/// midpoint of the top-`L` score range.
pub fn precision_thresholded(scored: &[ScoredPair]) -> Result<ThresholdedPrecision> {
    let (top, l) = top_l(scored)?;
    let max_score = top.first().unwrap().0;
    let min_score = top.last().unwrap().0;
    let threshold = (max_score + min_score) / 2.0;
    let hits = top.iter().filter(|x| x.1 && x.0 > threshold).count();
    Ok(ThresholdedPrecision { precision: hits as f64 / l as f64, max_score, min_score })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AucSampleSpec {
    pub n: usize,
    pub seed: u64,
}

impl AucSampleSpec {
    /// Half the number of test positives, at least one.
    pub fn default_n(test_positives: usize) -> usize {
        (test_positives / 2).max(1)
    }
}

fn check_nonempty(pos: &[f64], neg: &[f64]) -> Result<()> {
    if pos.is_empty() || neg.is_empty() {
        return Err(Error::InvalidArgument("AUC needs positive and negative scores".into()));
    }
    Ok(())
}

/// `(n₁ + n₂/2) / n` over `n` random (positive, negative) pairs drawn with
/// replacement, `n₁` counting wins and `n₂` ties.
pub fn auc_sampled(pos: &[f64], neg: &[f64], spec: AucSampleSpec) -> Result<f64> {
    check_nonempty(pos, neg)?;
    if spec.n == 0 {
        return Err(Error::InvalidArgument("AUC sample count must be at least 1".into()));
    }
    let mut r = rng::stream(spec.seed, &[rng::tag("auc")]);
    let (mut wins, mut ties) = (0, 0);
    for _ in 0..spec.n {
        let a = pos[r.random_range(0..pos.len())];
        let b = neg[r.random_range(0..neg.len())];
        if a > b {
            wins += 1;
        } else if a == b {
            ties += 1;
        }
    }
    Ok(auc_from_counts(wins, ties, spec.n))
}

pub fn auc_from_counts(wins: usize, ties: usize, n: usize) -> f64 {
    (wins as f64 + 0.5 * ties as f64) / n as f64
}

/// Mann–Whitney AUC over all positive × negative pairs, ties worth one half.
pub fn auc_exact(pos: &[f64], neg: &[f64]) -> Result<f64> {
    check_nonempty(pos, neg)?;
    let mut all: Vec<(f64, bool)> = pos.iter().map(|&s| (s, true)).chain(neg.iter().map(|&s| (s, false))).collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        while j < all.len() && all[j].0 == all[i].0 {
            j += 1;
        }
        // average of 1-based ranks i+1 ..= j
        let mid = (i + 1 + j) as f64 / 2.0;
        rank_sum += mid * all[i..j].iter().filter(|x| x.1).count() as f64;
        i = j;
    }
    let (np, nn) = (pos.len() as f64, neg.len() as f64);
    Ok((rank_sum - np * (np + 1.0) / 2.0) / (np * nn))
}

/// Mean wall time per pair of scoring `pairs`, measured after one untimed
/// warm-up pass.
pub fn time_heuristic(g: &Graph, h: HeuristicId, pairs: &[Pair]) -> Result<Duration> {
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("no pairs to time".into()));
    }
    let mut scorer = Scorer::default();
    for p in pairs {
        g.check_node(p.u)?;
        g.check_node(p.v)?;
    }
    let mut sink = 0.0;
    for p in pairs {
        sink += scorer.score_unchecked(g, h, p.u, p.v);
    }
    let start = Instant::now();
    for p in pairs {
        sink += scorer.score_unchecked(g, h, p.u, p.v);
    }
    let elapsed = start.elapsed();
    std::hint::black_box(sink);
    Ok(elapsed / pairs.len() as u32)
}

/// Runs `f` once and returns its result with the elapsed wall time.
pub fn time_model<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed()))
}

pub fn duration_ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// One line of the benchmark report. `fold = None` marks the mean over folds.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub graph: String,
    pub fold: Option<usize>,
    pub approach: String,
    pub precision: f64,
    pub precision_thr: Option<f64>,
    pub auc: f64,
    pub max_score: f64,
    pub min_score: f64,
    pub time_ms: Option<f64>,
}

pub const REPORT_HEADER: [&str; 9] = [
    "graph",
    "fold",
    "approach",
    "precision",
    "precision_thr",
    "auc",
    "max_score",
    "min_score",
    "time_ms",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricsReport {
    pub rows: Vec<MetricsRow>,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

fn opt_field(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::Corrupt(format!("bad {what} value `{s}` in report")))
}

fn parse_opt(s: &str, what: &str) -> Result<Option<f64>> {
    if s.is_empty() {
        Ok(None)
    } else {
        parse_f64(s, what).map(Some)
    }
}

impl MetricsReport {
    pub fn fold_rows(&self) -> impl Iterator<Item = &MetricsRow> {
        self.rows.iter().filter(|r| r.fold.is_some())
    }

    /// Per-fold rows grouped by (graph, approach) in first-seen order.
    fn groups(&self) -> Vec<((String, String), Vec<&MetricsRow>)> {
        let mut order: Vec<(String, String)> = Vec::new();
        let mut map: BTreeMap<(String, String), Vec<&MetricsRow>> = BTreeMap::new();
        for r in self.fold_rows() {
            let key = (r.graph.clone(), r.approach.clone());
            if !map.contains_key(&key) {
                order.push(key.clone());
            }
            map.entry(key).or_default().push(r);
        }
        order
            .into_iter()
            .map(|k| {
                let v = map.remove(&k).unwrap();
                (k, v)
            })
            .collect()
    }

    /// Mean row per (graph, approach) computed from the per-fold rows.
    pub fn aggregates(&self) -> Vec<MetricsRow> {
        self.groups()
            .into_iter()
            .map(|((graph, approach), rows)| {
                let col = |f: fn(&MetricsRow) -> f64| mean(&rows.iter().map(|r| f(r)).collect::<Vec<_>>());
                let opt_col = |f: fn(&MetricsRow) -> Option<f64>| {
                    rows.iter().map(|r| f(r)).collect::<Option<Vec<f64>>>().map(|v| mean(&v))
                };
                MetricsRow {
                    graph,
                    fold: None,
                    approach,
                    precision: col(|r| r.precision),
                    precision_thr: opt_col(|r| r.precision_thr),
                    auc: col(|r| r.auc),
                    max_score: col(|r| r.max_score),
                    min_score: col(|r| r.min_score),
                    time_ms: opt_col(|r| r.time_ms),
                }
            })
            .collect()
    }

    /// Replaces existing mean rows with freshly computed ones.
    pub fn with_aggregates(mut self) -> Self {
        self.rows.retain(|r| r.fold.is_some());
        let agg = self.aggregates();
        self.rows.extend(agg);
        self
    }

    /// Writes the CSV report; `comment` lines are emitted first with a `# `
    /// prefix.
    pub fn write_csv<W: Write>(&self, mut out: W, comment: &[String]) -> Result<()> {
        for line in comment {
            writeln!(out, "# {line}").map_err(|e| Error::io("<report>", e))?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(REPORT_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.graph.clone(),
                r.fold.map_or_else(|| "mean".to_string(), |f| f.to_string()),
                r.approach.clone(),
                r.precision.to_string(),
                opt_field(r.precision_thr),
                r.auc.to_string(),
                r.max_score.to_string(),
                r.min_score.to_string(),
                opt_field(r.time_ms),
            ])?;
        }
        w.flush().map_err(|e| Error::io("<report>", e))?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
        let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
        if header != REPORT_HEADER {
            return Err(Error::Corrupt(format!("unexpected report header {header:?}")));
        }
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let fold = match &rec[1] {
                "mean" => None,
                s => Some(s.parse().map_err(|_| Error::Corrupt(format!("bad fold `{s}` in report")))?),
            };
            rows.push(MetricsRow {
                graph: rec[0].to_string(),
                fold,
                approach: rec[2].to_string(),
                precision: parse_f64(&rec[3], "precision")?,
                precision_thr: parse_opt(&rec[4], "precision_thr")?,
                auc: parse_f64(&rec[5], "auc")?,
                max_score: parse_f64(&rec[6], "max_score")?,
                min_score: parse_f64(&rec[7], "min_score")?,
                time_ms: parse_opt(&rec[8], "time_ms")?,
            });
        }
        Ok(MetricsReport { rows })
    }

    /// One table per graph: mean and (sample standard deviation) over folds.
    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let fmt = |xs: &[f64]| format!("{:.2}({:.2})", mean(xs), std_dev(xs));
        let mut graphs: Vec<&str> = Vec::new();
        for r in self.fold_rows() {
            if !graphs.contains(&r.graph.as_str()) {
                graphs.push(&r.graph);
            }
        }
        let groups = self.groups();
        for g in graphs {
            let _ = writeln!(s, "## {g}\n");
            s.push_str("| Approach | AUC | Precision | Precision (threshold) | Max score | Min score | Time (ms) |\n");
            s.push_str("|---|---|---|---|---|---|---|\n");
            for ((graph, approach), rows) in &groups {
                if graph != g {
                    continue;
                }
                let col = |f: &dyn Fn(&MetricsRow) -> f64| rows.iter().map(|r| f(r)).collect::<Vec<_>>();
                let opt = |f: &dyn Fn(&MetricsRow) -> Option<f64>| {
                    rows.iter().map(|r| f(r)).collect::<Option<Vec<_>>>()
                };
                let thr = opt(&|r| r.precision_thr).map_or_else(|| "-".to_string(), |v| fmt(&v));
                let time = opt(&|r| r.time_ms).map_or_else(|| "-".to_string(), |v| format!("{:.4}", mean(&v)));
                let _ = writeln!(
                    s,
                    "| {approach} | {} | {} | {thr} | {:.4} | {:.4} | {time} |",
                    fmt(&col(&|r| r.auc)),
                    fmt(&col(&|r| r.precision)),
                    mean(&col(&|r| r.max_score)),
                    mean(&col(&|r| r.min_score)),
                );
            }
            s.push('\n');
        }
        s
    }
}
