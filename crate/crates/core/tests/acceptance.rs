//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Pass criterion numbers (e.g. `-- 2 7`) to run a
//! subset. Real datasets are read from `$LINKBENCH_DATA` or `<workspace>/data`
//! (`scripts/fetch_datasets.py` downloads them).

mod common;

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use linkbench_core::eval::{
    auc_exact, auc_from_counts, auc_sampled, precision_at_l, precision_thresholded, time_heuristic,
    time_model, AucSampleSpec,
};
use linkbench_core::experiment::{cmd_bench, cmd_report, cmd_split, cmd_stats, evaluate_cell, Approach, ExperimentConfig};
use linkbench_core::graph::write_edge_list;
use linkbench_core::heuristics::{score, HeuristicId};
use linkbench_core::models::{SealConfig, SealModel, WlnmModel};
use linkbench_core::nn::{check_gradients, Network, TrainConfig};
use linkbench_core::split::{make_fold, make_splits, Polarity};
use linkbench_core::subgraph::drnl_label;
use linkbench_core::{rng, Graph, MetricsRow, NodeId, Pair, ScoredPair, SplitBundle};
use rand::Rng;

type Verdict = Result<String, String>;

fn data_dir() -> PathBuf {
    std::env::var_os("LINKBENCH_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol + 1e-12
}

/// Lazily loaded graphs, folds and benchmark rows shared across criteria.
struct Lab {
    cfg: ExperimentConfig,
    scratch: tempfile::TempDir,
    graphs: HashMap<String, Result<Graph, String>>,
    folds: HashMap<String, Vec<SplitBundle>>,
    rows: HashMap<(String, Approach), Vec<MetricsRow>>,
}

impl Lab {
    fn new() -> Self {
        let scratch = tempfile::tempdir().expect("temp dir");
        let cfg = ExperimentConfig {
            data_dir: data_dir(),
            out: scratch.path().to_path_buf(),
            ..Default::default()
        };
        let mut cfg = cfg;
        cfg.bench.timing = false;
        Lab { cfg, scratch, graphs: HashMap::new(), folds: HashMap::new(), rows: HashMap::new() }
    }

    fn graph(&mut self, name: &str) -> Result<Graph, String> {
        let cfg = &self.cfg;
        self.graphs
            .entry(name.to_string())
            .or_insert_with(|| cfg.load_graph(name).map_err(|e| e.to_string()))
            .clone()
    }

    fn folds(&mut self, name: &str) -> Result<Vec<SplitBundle>, String> {
        let g = self.graph(name)?;
        if !self.folds.contains_key(name) {
            let f = make_splits(&g, self.cfg.folds, self.cfg.test_fraction, self.cfg.seed).map_err(|e| e.to_string())?;
            self.folds.insert(name.to_string(), f);
        }
        Ok(self.folds[name].clone())
    }

    /// Per-fold rows of `approach` on `name`.
    fn rows(&mut self, name: &str, approach: Approach) -> Result<Vec<MetricsRow>, String> {
        let key = (name.to_string(), approach);
        if let Some(r) = self.rows.get(&key) {
            return Ok(r.clone());
        }
        let g = self.graph(name)?;
        let folds = self.folds(name)?;
        let rows = folds
            .iter()
            .map(|f| evaluate_cell(&self.cfg, name, &g, f, approach).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        self.rows.insert(key, rows.clone());
        Ok(rows)
    }

    fn mean_of(&mut self, name: &str, approach: Approach, f: fn(&MetricsRow) -> f64) -> Result<f64, String> {
        let rows = self.rows(name, approach)?;
        Ok(rows.iter().map(f).sum::<f64>() / rows.len() as f64)
    }

    fn model_path(&self, name: &str, fold: usize, approach: Approach) -> PathBuf {
        self.cfg
            .out
            .join("models")
            .join(name)
            .join(format!("fold_{fold}"))
            .join(format!("{}.json", approach.name()))
    }
}

fn c1_statistics(lab: &mut Lab) -> Verdict {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut bad = Vec::new();
    // (name, nodes, links, avg degree, triangles, clustering)
    let table: [(&str, usize, usize, f64, Option<u64>, Option<f64>); 3] = [
        ("USAir", 332, 2126, 12.807, Some(12181), Some(0.749)),
        ("Yeast", 2375, 11693, 9.847, None, None),
        ("NS", 1461, 2742, 3.754, None, None),
    ];
    for (name, nodes, links, deg, tri, cc) in table {
        let g = match lab.graph(name) {
            Ok(g) => g,
            Err(e) => {
                bad.push(e);
                continue;
            }
        };
        let s = g.stats(false);
        notes.push(format!(
            "{name}: {} nodes, {} links, deg {:.3}, {} triangles, cc {:.3}",
            s.nodes, s.links, s.avg_degree, s.triangles, s.avg_clustering
        ));
        if s.nodes != nodes || s.links != links || !within(s.avg_degree, deg, 0.001) {
            bad.push(format!("{name} counts differ from ({nodes}, {links}, {deg})"));
        }
        if tri.is_some_and(|t| t != s.triangles) {
            bad.push(format!("{name} triangles {} != {}", s.triangles, tri.unwrap()));
        }
        if cc.is_some_and(|c| !within(s.avg_clustering, c, 0.005)) {
            bad.push(format!("{name} clustering {:.4} vs {}", s.avg_clustering, cc.unwrap()));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        bad.push(format!("took {elapsed:?} (limit 10 s)"));
    }
    if bad.is_empty() { Ok(notes.join("; ")) } else { Err(bad.join("; ")) }
}

fn c2_heuristic_oracle(_: &mut Lab) -> Verdict {
    let start = Instant::now();
    let ps = [0.1, 0.3, 0.5];
    let mut worst = 0.0f64;
    let mut checks = 0usize;
    for i in 0..200u64 {
        let n = 5 + (i as usize % 21);
        let g = common::erdos_renyi(n, ps[i as usize % 3], 7000 + i);
        let naive = common::Naive::new(&g);
        for x in 0..n {
            for y in x + 1..n {
                for h in HeuristicId::ALL {
                    let got = score(&g, h, NodeId(x as u32), NodeId(y as u32)).map_err(|e| e.to_string())?;
                    worst = worst.max((got - naive.score(h, x, y)).abs());
                    checks += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let detail = format!("{checks} comparisons, max |diff| {worst:e}, {elapsed:.2?}");
    if worst <= 1e-9 && elapsed < Duration::from_secs(30) { Ok(detail) } else { Err(detail) }
}

const SIMILARITY_GRAPHS: [&str; 6] = ["USAir", "NS", "Power", "PB", "Yeast", "Router"];

fn c3_similarity_auc(lab: &mut Lab) -> Verdict {
    let start = Instant::now();
    let targets = [
        ("USAir", HeuristicId::CN, 0.95, 0.03),
        ("NS", HeuristicId::AA, 0.94, 0.03),
        ("Power", HeuristicId::PA, 0.46, 0.05),
        ("PB", HeuristicId::LLHN, 0.76, 0.04),
        ("Yeast", HeuristicId::RA, 0.91, 0.03),
    ];
    let (mut notes, mut bad) = (Vec::new(), Vec::new());
    for (g, h, want, tol) in targets {
        match lab.mean_of(g, Approach::Heuristic(h), |r| r.auc) {
            Ok(auc) => {
                notes.push(format!("{h}/{g} {auc:.3} (target {want}±{tol})"));
                if !within(auc, want, tol) {
                    bad.push(format!("{h}/{g} auc {auc:.3} outside {want}±{tol}"));
                }
            }
            Err(e) => bad.push(e),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        bad.push(format!("took {elapsed:?} (limit 5 min)"));
    }
    if bad.is_empty() { Ok(notes.join("; ")) } else { Err(bad.join("; ")) }
}

fn c4_similarity_precision(lab: &mut Lab) -> Verdict {
    let targets = [
        ("USAir", HeuristicId::AA, 0.92, 0.05),
        ("Router", HeuristicId::CN, 0.07, 0.04),
        ("Power", HeuristicId::PA, 0.49, 0.06),
    ];
    let (mut notes, mut bad) = (Vec::new(), Vec::new());
    for (g, h, want, tol) in targets {
        match lab.mean_of(g, Approach::Heuristic(h), |r| r.precision) {
            Ok(p) => {
                notes.push(format!("{h}/{g} {p:.3} (target {want}±{tol})"));
                if !within(p, want, tol) {
                    bad.push(format!("{h}/{g} precision {p:.3} outside {want}±{tol}"));
                }
            }
            Err(e) => bad.push(e),
        }
    }
    let mut cells = 0;
    for g in SIMILARITY_GRAPHS {
        for h in HeuristicId::ALL {
            match lab.rows(g, Approach::Heuristic(h)) {
                Ok(rows) => {
                    let n = rows.len() as f64;
                    let plain = rows.iter().map(|r| r.precision).sum::<f64>() / n;
                    let thr = rows.iter().map(|r| r.precision_thr.unwrap_or(f64::NAN)).sum::<f64>() / n;
                    cells += 1;
                    if !(thr <= plain) {
                        bad.push(format!("{h}/{g} thresholded {thr:.3} > plain {plain:.3}"));
                    }
                }
                Err(e) => {
                    if !bad.contains(&e) {
                        bad.push(e);
                    }
                    break;
                }
            }
        }
    }
    notes.push(format!("thresholded <= plain over {cells} cells"));
    if bad.is_empty() { Ok(notes.join("; ")) } else { Err(bad.join("; ")) }
}

fn best_similarity_auc(lab: &mut Lab, g: &str) -> Result<(f64, HeuristicId), String> {
    let mut best = (f64::NEG_INFINITY, HeuristicId::CN);
    for h in HeuristicId::ALL {
        let auc = lab.mean_of(g, Approach::Heuristic(h), |r| r.auc)?;
        if auc > best.0 {
            best = (auc, h);
        }
    }
    Ok(best)
}

fn c5_wlnm_sparse(lab: &mut Lab) -> Verdict {
    let (mut notes, mut bad) = (Vec::new(), Vec::new());
    for (g, floor) in [("Router", 0.80), ("Power", 0.68)] {
        let start = Instant::now();
        let run = lab.mean_of(g, Approach::Wlnm, |r| r.auc).and_then(|w| Ok((w, best_similarity_auc(lab, g)?)));
        match run {
            Ok((wlnm, (best, h))) => {
                let elapsed = start.elapsed();
                notes.push(format!("{g}: WLNM {wlnm:.3}, best similarity {h} {best:.3}, {elapsed:.0?}"));
                if wlnm < floor {
                    bad.push(format!("{g} WLNM auc {wlnm:.3} < {floor}"));
                }
                if wlnm < best + 0.15 {
                    bad.push(format!("{g} WLNM {wlnm:.3} does not beat {h} {best:.3} by 0.15"));
                }
                if elapsed > Duration::from_secs(1200) {
                    bad.push(format!("{g} took {elapsed:?} (limit 20 min)"));
                }
            }
            Err(e) => bad.push(e),
        }
    }
    if bad.is_empty() { Ok(notes.join("; ")) } else { Err(bad.join("; ")) }
}

fn c6a_gradient_check(_: &mut Lab) -> Verdict {
    let g = common::small_world(60, 3, 0.1, 5);
    let fold = make_fold(&g, 0, 0.1, 17).map_err(|e| e.to_string())?;
    let m = SealModel::new(&fold.train_graph, SealConfig::default(), TrainConfig::default()).map_err(|e| e.to_string())?;
    let p = fold.train_pos.pairs[0];
    let n = fold.train_neg.pairs[0];
    let batch = vec![
        (m.encode(&g, p.u, p.v).map_err(|e| e.to_string())?, 1),
        (m.encode(&g, n.u, n.v).map_err(|e| e.to_string())?, 0),
    ];
    let r = check_gradients(m.network(), &batch, 1e-5, 1e-4, 1e-7).map_err(|e| e.to_string())?;
    let detail = format!(
        "{} parameters of the default SEAL-lite network, {} outside tolerance, max relative error {:.2e}",
        r.checked,
        r.failures.len(),
        r.max_rel_error
    );
    if r.passed() && r.checked == m.network().param_count() { Ok(detail) } else { Err(detail) }
}

fn smoothed(trace: &[f64], w: usize) -> Vec<f64> {
    trace.windows(w).map(|x| x.iter().sum::<f64>() / w as f64).collect()
}

fn c6b_seal_loss(lab: &mut Lab) -> Verdict {
    lab.rows("NS", Approach::Seal)?;
    let fold = &lab.folds("NS")?[0];
    let model = SealModel::load(&lab.model_path("NS", 0, Approach::Seal), &fold.checksum()).map_err(|e| e.to_string())?;
    let s = smoothed(model.loss_trace(), 5);
    let rises: Vec<usize> = s.windows(2).enumerate().filter(|(_, w)| w[1] > w[0]).map(|(i, _)| i + 5).collect();
    let detail = format!(
        "NS fold 0 loss {:.4} -> {:.4}, smoothed rises at epochs {rises:?}",
        model.loss_trace()[0],
        model.loss_trace().last().unwrap()
    );
    if rises.is_empty() { Ok(detail) } else { Err(detail) }
}

fn c6c_seal_auc(lab: &mut Lab) -> Verdict {
    let (mut notes, mut bad) = (Vec::new(), Vec::new());
    for g in ["NS", "Yeast"] {
        match lab.mean_of(g, Approach::Seal, |r| r.auc) {
            Ok(auc) => {
                notes.push(format!("{g} {auc:.3}"));
                if auc < 0.90 {
                    bad.push(format!("SEAL-lite auc on {g} {auc:.3} < 0.90"));
                }
            }
            Err(e) => bad.push(e),
        }
    }
    if bad.is_empty() { Ok(notes.join("; ")) } else { Err(bad.join("; ")) }
}

fn c6d_drnl_injective(_: &mut Lab) -> Verdict {
    let mut seen: HashMap<u32, (u32, u32)> = HashMap::new();
    for a in 1..=10u32 {
        for b in a..=10u32 {
            let l = drnl_label(a, b);
            if l != drnl_label(b, a) {
                return Err(format!("label of ({a}, {b}) is not symmetric"));
            }
            if l <= 1 {
                return Err(format!("({a}, {b}) collides with the endpoint/unreachable labels"));
            }
            if let Some(prev) = seen.insert(l, (a, b)) {
                return Err(format!("({a}, {b}) and {prev:?} share label {l}"));
            }
        }
    }
    Ok(format!("{} unordered distance pairs, all labels distinct", seen.len()))
}

fn sp(score: f64, pos: bool) -> ScoredPair {
    ScoredPair {
        u: NodeId(0),
        v: NodeId(1),
        score,
        truth: Some(if pos { Polarity::Positive } else { Polarity::Negative }),
    }
}

fn c7_metric_identities(_: &mut Lab) -> Verdict {
    let mut bad = Vec::new();
    let mut mix: Vec<ScoredPair> = (0..7).map(|i| sp(100.0 - i as f64, true)).collect();
    mix.extend((0..3).map(|i| sp(50.0 - i as f64, false)));
    mix.extend((0..3).map(|i| sp(10.0 - i as f64, true)));
    mix.extend((0..7).map(|i| sp(5.0 - i as f64, false)));
    let e = |r: linkbench_core::Result<f64>| r.unwrap_or(f64::NAN);
    if e(precision_at_l(&mix)) != 0.7 {
        bad.push("L = 10, L_r = 7 did not give 0.7".to_string());
    }
    let ideal: Vec<ScoredPair> = (0..4).map(|i| sp(5.0 + i as f64, true)).chain((0..4).map(|i| sp(i as f64, false))).collect();
    if e(precision_at_l(&ideal)) != 1.0 {
        bad.push("ideal ranking is not 1.0".into());
    }
    let ties: Vec<ScoredPair> = (0..6).map(|i| sp(0.5, i % 2 == 0)).collect();
    if e(precision_at_l(&ties)) != 0.0 {
        bad.push("all-equal scores are not 0.0".into());
    }
    let thr = precision_thresholded(&[sp(1.0, true), sp(0.9, true), sp(0.1, false), sp(0.05, true)]);
    if thr.map(|t| t.precision).unwrap_or(f64::NAN) != 2.0 / 3.0 {
        bad.push("thresholded example is not 2/3".into());
    }
    if auc_from_counts(8, 2, 10) != 0.9 {
        bad.push("n1 = 8, n2 = 2, n = 10 is not 0.9".into());
    }
    if e(auc_sampled(&[0.3; 5], &[0.3; 5], AucSampleSpec { n: 100, seed: 1 })) != 0.5 {
        bad.push("identical scores are not 0.5".into());
    }
    if e(auc_exact(&[2.0], &[1.0])) != 1.0 || e(auc_exact(&[1.0], &[1.0])) != 0.5 || e(auc_exact(&[3.0, 1.0], &[2.0])) != 0.5 {
        bad.push("exact AUC examples".into());
    }
    let mut r = rng::stream(2024, &[]);
    let pos: Vec<f64> = (0..200).map(|_| r.random_range(0.0..1.0) + 0.3).collect();
    let neg: Vec<f64> = (0..200).map(|_| r.random_range(0.0..1.0)).collect();
    let exact = e(auc_exact(&pos, &neg));
    let samples: Vec<f64> = (0..20).map(|s| e(auc_sampled(&pos, &neg, AucSampleSpec { n: 5000, seed: s }))).collect();
    let worst = samples.iter().map(|a| (a - exact).abs()).fold(0.0, f64::max);
    let sd = (samples.iter().map(|a| (a - exact).powi(2)).sum::<f64>() / 19.0).sqrt();
    if worst > 0.02 {
        bad.push(format!("sampled AUC strays {worst:.4} from exact"));
    }
    if sd >= 0.01 {
        bad.push(format!("sampled AUC spread {sd:.4} >= 0.01"));
    }
    let detail = format!("exact {exact:.4}, 20 seeds at n = 5000: max deviation {worst:.4}, sd {sd:.4}");
    if bad.is_empty() { Ok(detail) } else { Err(format!("{}; {detail}", bad.join("; "))) }
}

fn c8_timing(lab: &mut Lab) -> Verdict {
    let g = lab.graph("Yeast")?;
    let fold = lab.folds("Yeast")?.remove(0);
    let pairs: Vec<Pair> = fold.test_pos.iter().chain(fold.test_neg.iter()).collect();
    let mut per_link: HashMap<HeuristicId, Duration> = HashMap::new();
    for h in HeuristicId::ALL {
        per_link.insert(h, time_heuristic(&fold.train_graph, h, &pairs).map_err(|e| e.to_string())?);
    }
    let total = |d: Duration| d * pairs.len() as u32;
    let max_heuristic_total = per_link.values().map(|&d| total(d)).max().unwrap();
    let mut cfg = lab.cfg.clone();
    cfg.bench.save_models = false;
    let (_, wlnm) = time_model(|| {
        let mut m = WlnmModel::new(cfg.wlnm.clone(), cfg.train.clone())?;
        m.fit(&g, &fold.train_pos, &fold.train_neg)?;
        m.score_pairs(&g, &pairs)
    })
    .map_err(|e| e.to_string())?;
    let (_, seal) = time_model(|| {
        let mut m = SealModel::new(&fold.train_graph, cfg.seal.clone(), cfg.train.clone())?;
        m.fit(&g, &fold.train_pos, &fold.train_neg)?;
        m.score_pairs(&g, &pairs)
    })
    .map_err(|e| e.to_string())?;
    let pa = per_link[&HeuristicId::PA];
    let mut bad = Vec::new();
    for (h, &d) in &per_link {
        if pa.as_secs_f64() > d.as_secs_f64() * 1.5 {
            bad.push(format!("PA {pa:?} > 1.5 x {h} {d:?}"));
        }
    }
    if per_link[&HeuristicId::CCLP] < per_link[&HeuristicId::CN] {
        bad.push("CCLP faster than CN".into());
    }
    if wlnm <= max_heuristic_total {
        bad.push("WLNM total not above every heuristic total".into());
    }
    if seal <= wlnm {
        bad.push("SEAL-lite total not above WLNM".into());
    }
    let detail = format!(
        "per link PA {:?}, CN {:?}, CCLP {:?}; totals: slowest heuristic {:?}, WLNM {:.1?}, SEAL-lite {:.1?}",
        pa, per_link[&HeuristicId::CN], per_link[&HeuristicId::CCLP], max_heuristic_total, wlnm, seal
    );
    if bad.is_empty() { Ok(detail) } else { Err(format!("{}; {detail}", bad.join("; "))) }
}

fn c9_determinism(lab: &mut Lab) -> Verdict {
    let root = lab.scratch.path().join("determinism");
    let data = root.join("data");
    fs::create_dir_all(&data).map_err(|e| e.to_string())?;
    let g = common::small_world(80, 3, 0.15, 99);
    let file = fs::File::create(data.join("Synthetic.txt")).map_err(|e| e.to_string())?;
    write_edge_list(&g, file).map_err(|e| e.to_string())?;
    let cfg = ExperimentConfig::from_toml(
        "graphs = [\"Synthetic\"]\nfolds = 3\nseed = 5\n[train]\nepochs = 5\n[bench]\ntiming = false\n",
    )
    .map_err(|e| e.to_string())?;
    let cfg = ExperimentConfig { data_dir: data, out: root.join("out"), ..cfg };
    let run = || -> Result<(Vec<u8>, Vec<u8>, Vec<u8>), String> {
        let _ = fs::remove_dir_all(&cfg.out);
        cmd_stats(&cfg).map_err(|e| e.to_string())?;
        cmd_split(&cfg).map_err(|e| e.to_string())?;
        cmd_bench(&cfg).map_err(|e| e.to_string())?;
        cmd_report(&cfg).map_err(|e| e.to_string())?;
        let csv = fs::read(cfg.results_path()).map_err(|e| e.to_string())?;
        let md = fs::read(cfg.out.join("summary.md")).map_err(|e| e.to_string())?;
        let stats = fs::read(cfg.out.join("stats.csv")).map_err(|e| e.to_string())?;
        Ok((stats, csv, md))
    };
    let a = run()?;
    let b = run()?;
    let rows = String::from_utf8_lossy(&a.1).lines().count();
    if a == b {
        Ok(format!("stats.csv, results.csv ({rows} lines, 15 approaches x 3 folds) and summary.md identical across runs"))
    } else {
        Err("pipeline outputs differ between runs".into())
    }
}

type Criterion = (&'static str, &'static str, fn(&mut Lab) -> Verdict);

const CRITERIA: [Criterion; 12] = [
    ("1", "topological statistics", c1_statistics),
    ("2", "heuristic oracle equivalence", c2_heuristic_oracle),
    ("3", "similarity AUC", c3_similarity_auc),
    ("4", "similarity precision", c4_similarity_precision),
    ("5", "WLNM on sparse graphs", c5_wlnm_sparse),
    ("6a", "SEAL-lite gradient check", c6a_gradient_check),
    ("6b", "SEAL-lite smoothed loss on NS", c6b_seal_loss),
    ("6c", "SEAL-lite AUC on NS and Yeast", c6c_seal_auc),
    ("6d", "DRNL injectivity", c6d_drnl_injective),
    ("7", "metric identities", c7_metric_identities),
    ("8", "timing order on Yeast", c8_timing),
    ("9", "pipeline determinism", c9_determinism),
];

fn main() -> ExitCode {
    let wanted: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected = |id: &str| wanted.is_empty() || wanted.iter().any(|w| id == w || (id.starts_with(w.as_str()) && w.len() == 1));
    println!("acceptance: data directory {}", data_dir().display());
    let mut lab = Lab::new();
    let mut failed = 0;
    for (id, title, check) in CRITERIA {
        if !selected(id) {
            continue;
        }
        let start = Instant::now();
        let verdict = check(&mut lab);
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(d) => println!("PASS criterion {id} ({title}) [{secs:.1}s]: {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL criterion {id} ({title}) [{secs:.1}s]: {d}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
