use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::train::TrainConfig;
use crate::error::{Error, Result};

pub const MODEL_FORMAT_VERSION: u32 = 1;

/// On-disk JSON envelope for a trained network. `serde_json` writes the
/// shortest round-tripping representation of every `f64`, so a reload is
/// exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile<T> {
    pub format_version: u32,
    pub kind: String,
    /// Checksum of the fold the model was trained on.
    pub fold_checksum: String,
    pub train: TrainConfig,
    pub model: T,
}

pub fn save_model<T: Serialize>(path: &Path, file: &ModelFile<T>) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let text = serde_json::to_string(file)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Loads a model file and checks its version and `kind`.
pub fn load_model<T: DeserializeOwned>(path: &Path, kind: &str) -> Result<ModelFile<T>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: ModelFile<T> = serde_json::from_str(&text)?;
    if file.format_version != MODEL_FORMAT_VERSION {
        return Err(Error::Corrupt(format!(
            "{}: model format {} is not supported",
            path.display(),
            file.format_version
        )));
    }
    if file.kind != kind {
        return Err(Error::Corrupt(format!(
            "{}: holds a {} model, expected {kind}",
            path.display(),
            file.kind
        )));
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::{Activation, Mlp};
    use crate::rng;

    #[test]
    fn round_trip_is_exact() {
        let net = Mlp::init(&[5, 7, 2], Activation::Tanh, &mut rng::stream(3, &[])).unwrap();
        let file = ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            kind: "mlp".into(),
            fold_checksum: "abc".into(),
            train: TrainConfig::default(),
            model: net,
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        save_model(&path, &file).unwrap();
        let back: ModelFile<Mlp> = load_model(&path, "mlp").unwrap();
        assert_eq!(back, file);
        assert!(load_model::<Mlp>(&path, "seal").is_err());
    }
}
