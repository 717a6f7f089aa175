//! On-disk fold layout: one directory per fold holding four edge-list files
//! and a `manifest.toml`.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{PairSet, Polarity, SplitBundle};
use crate::error::{Error, Result};
use crate::graph::{write_pairs, Graph, Pair};

const FORMAT_VERSION: u32 = 1;
const TRAIN_EDGES: &str = "train_edges.txt";
const TEST_POS: &str = "test_pos.txt";
const TRAIN_NEG: &str = "train_neg.txt";
const TEST_NEG: &str = "test_neg.txt";
const MANIFEST: &str = "manifest.toml";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldManifest {
    pub format_version: u32,
    pub fold_index: usize,
    pub seed: u64,
    pub test_fraction: f64,
    pub source_checksum: String,
    pub fold_checksum: String,
}

pub fn fold_dir(root: &Path, fold: usize) -> PathBuf {
    root.join(format!("fold_{fold}"))
}

pub fn save_fold(dir: &Path, source: &Graph, bundle: &SplitBundle) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let write = |name: &str, set: &PairSet| -> Result<()> {
        let path = dir.join(name);
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        write_pairs(source, set.iter(), BufWriter::new(file)).map_err(|e| Error::io(&path, e))
    };
    write(TRAIN_EDGES, &bundle.train_pos)?;
    write(TEST_POS, &bundle.test_pos)?;
    write(TRAIN_NEG, &bundle.train_neg)?;
    write(TEST_NEG, &bundle.test_neg)?;
    let manifest = FoldManifest {
        format_version: FORMAT_VERSION,
        fold_index: bundle.fold_index,
        seed: bundle.seed,
        test_fraction: bundle.test_fraction,
        source_checksum: source.checksum(),
        fold_checksum: bundle.checksum(),
    };
    let path = dir.join(MANIFEST);
    let text = toml::to_string(&manifest).map_err(|e| Error::Config(e.to_string()))?;
    fs::write(&path, text).map_err(|e| Error::io(&path, e))
}

pub fn save_folds(root: &Path, source: &Graph, folds: &[SplitBundle]) -> Result<()> {
    for f in folds {
        save_fold(&fold_dir(root, f.fold_index), source, f)?;
    }
    Ok(())
}

pub fn read_manifest(dir: &Path) -> Result<FoldManifest> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let manifest: FoldManifest =
        toml::from_str(&text).map_err(|e| Error::Corrupt(format!("{}: {e}", path.display())))?;
    if manifest.format_version != FORMAT_VERSION {
        return Err(Error::Corrupt(format!(
            "{}: unsupported format version {}",
            path.display(),
            manifest.format_version
        )));
    }
    Ok(manifest)
}

fn read_pairs(path: &Path, source: &Graph, polarity: Polarity) -> Result<PairSet> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut pairs = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: lineno + 1,
            message,
        };
        let mut tokens = line.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(parse_err("expected 2 tokens".into()));
        };
        let a = source.node_by_label(a)?;
        let b = source.node_by_label(b)?;
        let p = Pair::try_new(a, b).ok_or_else(|| parse_err("self-pair".into()))?;
        pairs.push(p);
    }
    Ok(PairSet::new(pairs, polarity))
}

/// Loads a fold saved by [`save_fold`], verifying it was cut from `source`.
pub fn load_fold(dir: &Path, source: &Graph) -> Result<SplitBundle> {
    let manifest = read_manifest(dir)?;
    if manifest.source_checksum != source.checksum() {
        return Err(Error::Corrupt(format!(
            "{} was split from a different graph",
            dir.display()
        )));
    }
    let train_pos = read_pairs(&dir.join(TRAIN_EDGES), source, Polarity::Positive)?;
    let bundle = SplitBundle {
        fold_index: manifest.fold_index,
        seed: manifest.seed,
        test_fraction: manifest.test_fraction,
        train_graph: source.with_edge_set(&train_pos.pairs),
        train_pos,
        train_neg: read_pairs(&dir.join(TRAIN_NEG), source, Polarity::Negative)?,
        test_pos: read_pairs(&dir.join(TEST_POS), source, Polarity::Positive)?,
        test_neg: read_pairs(&dir.join(TEST_NEG), source, Polarity::Negative)?,
    };
    if bundle.checksum() != manifest.fold_checksum {
        return Err(Error::Corrupt(format!(
            "{}: fold checksum mismatch",
            dir.display()
        )));
    }
    Ok(bundle)
}

/// Loads `folds` persisted folds if all exist and match `(seed, fraction)`;
/// `Ok(None)` when any is missing or was generated with other parameters.
pub fn load_folds(
    root: &Path,
    source: &Graph,
    folds: usize,
    test_fraction: f64,
    seed: u64,
) -> Result<Option<Vec<SplitBundle>>> {
    let mut out = Vec::with_capacity(folds);
    for fold in 0..folds {
        let dir = fold_dir(root, fold);
        if !dir.join(MANIFEST).exists() {
            return Ok(None);
        }
        let m = read_manifest(&dir)?;
        if m.seed != seed || m.test_fraction != test_fraction || m.fold_index != fold {
            return Ok(None);
        }
        out.push(load_fold(&dir, source)?);
    }
    Ok(Some(out))
}
