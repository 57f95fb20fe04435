//! Global settings: defaults, then the `TORUS_THURSTON_CONFIG` file, then
//! command-line flags, in increasing precedence.

use serde::Deserialize;

pub const CONFIG_ENV: &str = "TORUS_THURSTON_CONFIG";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    tol: Option<f64>,
    grid_size: Option<usize>,
    seed: Option<u64>,
}

/// Resolved global settings.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    /// Refinement tolerance of supremum searches.
    pub tol: f64,
    /// Grid size of the compactified supremum search.
    pub grid_size: usize,
    /// Seed for randomized commands.
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            grid_size: 4096,
            seed: 42,
        }
    }
}

/// Applies the config file named by the environment (if any), then the
/// explicit flag overrides. A missing or unreadable file is a hard error:
/// silently ignoring a requested config would be worse.
pub fn resolve(
    tol: Option<f64>,
    grid_size: Option<usize>,
    seed: Option<u64>,
) -> Result<Settings, String> {
    let mut settings = Settings::default();
    if let Ok(path) = std::env::var(CONFIG_ENV) {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config file {path:?}: {e}"))?;
        let file: FileConfig =
            toml::from_str(&text).map_err(|e| format!("bad config file {path:?}: {e}"))?;
        if let Some(tol) = file.tol {
            settings.tol = tol;
        }
        if let Some(grid_size) = file.grid_size {
            settings.grid_size = grid_size;
        }
        if let Some(seed) = file.seed {
            settings.seed = seed;
        }
    }
    if let Some(tol) = tol {
        settings.tol = tol;
    }
    if let Some(grid_size) = grid_size {
        settings.grid_size = grid_size;
    }
    if let Some(seed) = seed {
        settings.seed = seed;
    }
    if !(settings.tol > 0.0 && settings.tol.is_finite()) {
        return Err(format!("tolerance must be positive, got {}", settings.tol));
    }
    if settings.grid_size < 8 {
        return Err(format!("grid size must be at least 8, got {}", settings.grid_size));
    }
    Ok(settings)
}
