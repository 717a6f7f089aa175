//! Experiment configuration and the four pipeline commands behind the
//! `linkbench` binary: `stats`, `split`, `bench` and `report`.

use std::fmt;
use std::fs::{self, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::eval::{
    auc_sampled, duration_ms, precision_at_l, precision_thresholded, time_heuristic, time_model,
    AucSampleSpec, MetricsReport, MetricsRow,
};
use crate::graph::{load_attributes, load_edge_list, EdgeListFormat, Graph, GraphStats, Pair};
use crate::heuristics::{score_batch, HeuristicId, ScoredPair};
use crate::models::{SealConfig, SealModel, WlnmConfig, WlnmModel};
use crate::nn::TrainConfig;
use crate::rng;
use crate::split::{load_folds, make_splits, save_folds, Polarity, SplitBundle};

/// Something that can be benchmarked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Approach {
    Heuristic(HeuristicId),
    Wlnm,
    Seal,
}

impl Approach {
    /// The 13 heuristics followed by WLNM and SEAL-lite.
    pub fn all() -> Vec<Approach> {
        let mut v: Vec<Approach> = HeuristicId::ALL.into_iter().map(Approach::Heuristic).collect();
        v.extend([Approach::Wlnm, Approach::Seal]);
        v
    }

    pub fn name(self) -> &'static str {
        match self {
            Approach::Heuristic(h) => h.name(),
            Approach::Wlnm => "WLNM",
            Approach::Seal => "SEAL-lite",
        }
    }

    /// Parses a comma-separated selector; `ALL` expands to every approach.
    pub fn parse_list(spec: &str) -> Result<Vec<Approach>> {
        let mut out: Vec<Approach> = Vec::new();
        for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let items = if tok.eq_ignore_ascii_case("all") { Approach::all() } else { vec![tok.parse()?] };
            for a in items {
                if !out.contains(&a) {
                    out.push(a);
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Config("empty approach list".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Approach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Approach {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wlnm" => Ok(Approach::Wlnm),
            "seal" | "seal-lite" | "seal_lite" => Ok(Approach::Seal),
            _ => s
                .parse::<HeuristicId>()
                .map(Approach::Heuristic)
                .map_err(|_| Error::Config(format!("unknown approach `{s}`"))),
        }
    }
}

/// Where a named dataset lives, when it does not follow the
/// `<data_dir>/<name>.txt` convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSpec {
    pub name: String,
    pub path: PathBuf,
    #[serde(default = "default_format")]
    pub format: EdgeListFormat,
    #[serde(default)]
    pub attributes: Option<PathBuf>,
}

fn default_format() -> EdgeListFormat {
    EdgeListFormat::Pairs
}

/// `"auto"` (half the test positives) or a fixed comparison count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AucSamples {
    Count(usize),
    Named(String),
}

impl Default for AucSamples {
    fn default() -> Self {
        AucSamples::Named("auto".into())
    }
}

impl AucSamples {
    pub fn resolve(&self, test_positives: usize) -> Result<usize> {
        match self {
            AucSamples::Count(0) => Err(Error::Config("auc.n must be at least 1".into())),
            AucSamples::Count(n) => Ok(*n),
            AucSamples::Named(s) if s == "auto" => Ok(AucSampleSpec::default_n(test_positives)),
            AucSamples::Named(s) => Err(Error::Config(format!("auc.n must be an integer or \"auto\", got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AucConfig {
    pub n: AucSamples,
}

/// Graph that the neural models extract subgraphs from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GnnGraph {
    /// The original graph; each target link is masked in its own subgraph.
    Full,
    /// The fold's training graph.
    Train,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    /// Record wall-clock times; off makes reports byte-reproducible.
    pub timing: bool,
    pub gnn_graph: GnnGraph,
    pub save_models: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { timing: true, gnn_graph: GnnGraph::Full, save_models: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub folds: usize,
    pub test_fraction: f64,
    pub data_dir: PathBuf,
    pub out: PathBuf,
    pub graphs: Vec<String>,
    pub approaches: Vec<String>,
    pub datasets: Vec<DatasetSpec>,
    /// Compute average path length and diameter in `stats`.
    pub path_stats: bool,
    pub wlnm: WlnmConfig,
    pub seal: SealConfig,
    pub train: TrainConfig,
    pub auc: AucConfig,
    pub bench: BenchConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 1,
            folds: 5,
            test_fraction: 0.1,
            data_dir: PathBuf::from("data"),
            out: PathBuf::from("out"),
            graphs: vec!["USAir".into()],
            approaches: vec!["ALL".into()],
            datasets: Vec::new(),
            path_stats: true,
            wlnm: WlnmConfig::default(),
            seal: SealConfig::default(),
            train: TrainConfig::default(),
            auc: AucConfig::default(),
            bench: BenchConfig::default(),
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub graphs: Option<Vec<String>>,
    pub approaches: Option<String>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a config file; relative `data_dir`, `out` and dataset paths are
    /// resolved against the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        let rebase = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        rebase(&mut cfg.data_dir);
        rebase(&mut cfg.out);
        for d in &mut cfg.datasets {
            rebase(&mut d.path);
            if let Some(a) = &mut d.attributes {
                rebase(a);
            }
        }
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(g) = &o.graphs {
            self.graphs = g.clone();
        }
        if let Some(a) = &o.approaches {
            self.approaches = vec![a.clone()];
        }
        if let Some(out) = &o.out {
            self.out = out.clone();
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.folds == 0 {
            return Err(Error::Config("folds must be at least 1".into()));
        }
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            return Err(Error::Config("test_fraction must lie in (0, 1)".into()));
        }
        if self.graphs.is_empty() {
            return Err(Error::Config("no graphs selected".into()));
        }
        self.approach_list()?;
        self.auc.n.resolve(1)?;
        self.train.validate().map_err(|e| Error::Config(e.to_string()))
    }

    pub fn approach_list(&self) -> Result<Vec<Approach>> {
        Approach::parse_list(&self.approaches.join(","))
    }

    /// Short SHA-256 of the effective configuration.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_toml().as_bytes());
        hex::encode(&digest[..8])
    }

    fn header(&self) -> String {
        format!("linkbench {} config={} seed={}", crate::VERSION, self.hash(), self.seed)
    }

    pub fn dataset(&self, name: &str) -> DatasetSpec {
        self.datasets.iter().find(|d| d.name == name).cloned().unwrap_or_else(|| {
            let attr = self.data_dir.join(format!("{name}.attr"));
            DatasetSpec {
                name: name.to_string(),
                path: self.data_dir.join(format!("{name}.txt")),
                format: EdgeListFormat::Pairs,
                attributes: attr.exists().then_some(attr),
            }
        })
    }

    pub fn load_graph(&self, name: &str) -> Result<Graph> {
        let spec = self.dataset(name);
        if !spec.path.exists() {
            return Err(Error::MissingDataset { name: name.to_string(), path: spec.path });
        }
        let mut g = load_edge_list(&spec.path, spec.format)?;
        if let Some(a) = &spec.attributes {
            let attrs = load_attributes(&g, a)?;
            g = g.with_attributes(attrs);
        }
        Ok(g)
    }

    pub fn split_root(&self, graph: &str) -> PathBuf {
        self.out.join("splits").join(graph)
    }

    pub fn results_path(&self) -> PathBuf {
        self.out.join("results.csv")
    }
}

fn create_out(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// Appends one line to `<out>/provenance.log`.
pub fn record_provenance(cfg: &ExperimentConfig, command: &str) -> Result<()> {
    create_out(&cfg.out)?;
    let path = cfg.out.join("provenance.log");
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .map_err(|e| Error::io(&path, e))?;
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    writeln!(
        f,
        "{now} {command} version={} config={} seed={} graphs={} approaches={}",
        crate::VERSION,
        cfg.hash(),
        cfg.seed,
        cfg.graphs.join(","),
        cfg.approaches.join(",")
    )
    .map_err(|e| Error::io(&path, e))
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<fs::File>) -> Result<()>) -> Result<()> {
    if let Some(dir) = path.parent() {
        create_out(dir)?;
    }
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w)?;
    w.flush().map_err(|e| Error::io(path, e))
}

fn fmt_opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Topological statistics of every selected graph, also written to
/// `<out>/stats.csv`.
pub fn cmd_stats(cfg: &ExperimentConfig) -> Result<Vec<(String, GraphStats)>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for name in &cfg.graphs {
        let g = cfg.load_graph(name)?;
        rows.push((name.clone(), g.stats(cfg.path_stats)));
    }
    let path = cfg.out.join("stats.csv");
    write_file(&path, |w| {
        let io = |e| Error::io(&path, e);
        writeln!(w, "# {}", cfg.header()).map_err(io)?;
        writeln!(w, "graph,nodes,links,avg_degree,triangles,avg_clustering,apl,diameter").map_err(io)?;
        for (name, s) in &rows {
            writeln!(
                w,
                "{name},{},{},{},{},{},{},{}",
                s.nodes,
                s.links,
                s.avg_degree,
                s.triangles,
                s.avg_clustering,
                fmt_opt(s.apl),
                fmt_opt(s.diameter)
            )
            .map_err(io)?;
        }
        Ok(())
    })?;
    record_provenance(cfg, "stats")?;
    Ok(rows)
}

/// Persisted folds for `graph`, generated and saved when absent or stale.
pub fn folds_for(cfg: &ExperimentConfig, name: &str, g: &Graph) -> Result<Vec<SplitBundle>> {
    let root = cfg.split_root(name);
    if let Some(f) = load_folds(&root, g, cfg.folds, cfg.test_fraction, cfg.seed)? {
        log::info!("{name}: reusing {} persisted folds", f.len());
        return Ok(f);
    }
    let folds = make_splits(g, cfg.folds, cfg.test_fraction, cfg.seed)?;
    save_folds(&root, g, &folds)?;
    Ok(folds)
}

/// Generates and persists the folds of every selected graph.
pub fn cmd_split(cfg: &ExperimentConfig) -> Result<Vec<(String, Vec<SplitBundle>)>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for name in &cfg.graphs {
        let g = cfg.load_graph(name)?;
        let folds = make_splits(&g, cfg.folds, cfg.test_fraction, cfg.seed)?;
        save_folds(&cfg.split_root(name), &g, &folds)?;
        out.push((name.clone(), folds));
    }
    record_provenance(cfg, "split")?;
    Ok(out)
}

fn model_train_config(cfg: &ExperimentConfig, fold: &SplitBundle, tag: &str) -> TrainConfig {
    TrainConfig {
        seed: rng::derive_seed(cfg.train.seed ^ cfg.seed, &[rng::tag(tag), fold.fold_index as u64]),
        ..cfg.train.clone()
    }
}

fn test_pairs(fold: &SplitBundle) -> Vec<Pair> {
    fold.test_pos.iter().chain(fold.test_neg.iter()).collect()
}

fn attach_truth(fold: &SplitBundle, scores: &[f64]) -> Vec<ScoredPair> {
    let truths = fold
        .test_pos
        .iter()
        .map(|p| (p, Polarity::Positive))
        .chain(fold.test_neg.iter().map(|p| (p, Polarity::Negative)));
    truths
        .zip(scores)
        .map(|((p, t), &score)| ScoredPair { u: p.u, v: p.v, score, truth: Some(t) })
        .collect()
}

/// Metrics of one approach on one fold.
pub fn evaluate_cell(
    cfg: &ExperimentConfig,
    graph_name: &str,
    source: &Graph,
    fold: &SplitBundle,
    approach: Approach,
) -> Result<MetricsRow> {
    let spec = AucSampleSpec {
        n: cfg.auc.n.resolve(fold.test_pos.len())?,
        seed: rng::derive_seed(cfg.seed, &[rng::tag("auc"), fold.fold_index as u64]),
    };
    let (scored, precision_thr, time_ms) = match approach {
        Approach::Heuristic(h) => {
            let batch = score_batch(&fold.train_graph, h, &[&fold.test_pos, &fold.test_neg])?;
            let time_ms = if cfg.bench.timing {
                Some(duration_ms(time_heuristic(&fold.train_graph, h, &test_pairs(fold))?))
            } else {
                None
            };
            let thr = precision_thresholded(&batch.scored)?.precision;
            (batch.scored, Some(thr), time_ms)
        }
        Approach::Wlnm | Approach::Seal => {
            let g = match cfg.bench.gnn_graph {
                GnnGraph::Full => source,
                GnnGraph::Train => &fold.train_graph,
            };
            let pairs = test_pairs(fold);
            let model_path = cfg
                .out
                .join("models")
                .join(graph_name)
                .join(format!("fold_{}", fold.fold_index))
                .join(format!("{}.json", approach.name()));
            let (scores, elapsed) = time_model(|| match approach {
                Approach::Wlnm => {
                    let mut m = WlnmModel::new(cfg.wlnm.clone(), model_train_config(cfg, fold, "wlnm"))?;
                    m.fit(g, &fold.train_pos, &fold.train_neg)?;
                    let s = m.score_pairs(g, &pairs)?;
                    if cfg.bench.save_models {
                        m.save(&model_path, &fold.checksum())?;
                    }
                    Ok(s)
                }
                _ => {
                    let mut m = SealModel::new(&fold.train_graph, cfg.seal.clone(), model_train_config(cfg, fold, "seal"))?;
                    m.fit(g, &fold.train_pos, &fold.train_neg)?;
                    let s = m.score_pairs(g, &pairs)?;
                    if cfg.bench.save_models {
                        m.save(&model_path, &fold.checksum())?;
                    }
                    Ok(s)
                }
            })?;
            let time_ms = cfg.bench.timing.then(|| duration_ms(elapsed));
            (attach_truth(fold, &scores), None, time_ms)
        }
    };
    let extremes = precision_thresholded(&scored)?;
    let (pos, neg): (Vec<&ScoredPair>, Vec<&ScoredPair>) = scored.iter().partition(|s| s.is_positive());
    let pos: Vec<f64> = pos.iter().map(|s| s.score).collect();
    let neg: Vec<f64> = neg.iter().map(|s| s.score).collect();
    Ok(MetricsRow {
        graph: graph_name.to_string(),
        fold: Some(fold.fold_index),
        approach: approach.name().to_string(),
        precision: precision_at_l(&scored)?,
        precision_thr,
        auc: auc_sampled(&pos, &neg, spec)?,
        max_score: extremes.max_score,
        min_score: extremes.min_score,
        time_ms,
    })
}

/// Runs every selected approach on every fold of every selected graph and
/// writes `<out>/results.csv`.
pub fn cmd_bench(cfg: &ExperimentConfig) -> Result<MetricsReport> {
    cfg.validate()?;
    let approaches = cfg.approach_list()?;
    let mut report = MetricsReport::default();
    for name in &cfg.graphs {
        let g = cfg.load_graph(name)?;
        let folds = folds_for(cfg, name, &g)?;
        for &a in &approaches {
            for fold in &folds {
                log::info!("{name}: {a} fold {}", fold.fold_index);
                report.rows.push(evaluate_cell(cfg, name, &g, fold, a)?);
            }
        }
    }
    let report = report.with_aggregates();
    let path = cfg.results_path();
    write_file(&path, |w| report.write_csv(w, &[cfg.header()]))?;
    record_provenance(cfg, "bench")?;
    Ok(report)
}

/// Renders `<out>/results.csv` as Markdown into `<out>/summary.md`.
pub fn cmd_report(cfg: &ExperimentConfig) -> Result<String> {
    let path = cfg.results_path();
    if !path.exists() {
        return Err(Error::Config(format!(
            "{} does not exist; run `linkbench bench` first",
            path.display()
        )));
    }
    let file = fs::File::open(&path).map_err(|e| Error::io(&path, e))?;
    let report = MetricsReport::read_csv(file)?;
    let md = format!("<!-- {} -->\n\n# Link prediction benchmark\n\n{}", cfg.header(), report.to_markdown());
    let out = cfg.out.join("summary.md");
    write_file(&out, |w| w.write_all(md.as_bytes()).map_err(|e| Error::io(&out, e)))?;
    record_provenance(cfg, "report")?;
    Ok(md)
}
