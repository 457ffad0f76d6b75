//! Run configuration and the cached correlation table.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use ellcorr::engine::{read_cache, write_cache, CorrTable};
use ellcorr::numerics::{ParamPoint, PrecisionConfig};

pub const DEFAULT_CACHE: &str = ".ellcorr/table.json";
pub const DEFAULT_SEED: u64 = 20240601;
pub const DEFAULT_POINTS: [(f64, f64); 2] = [(0.6, 0.8), (1.3, 1.1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub nmax: usize,
    pub precision: PrecisionConfig,
    /// `None` disables the cache.
    pub cache_path: Option<PathBuf>,
    pub output_format: Format,
    pub sample_points: Vec<(f64, f64)>,
    pub rng_seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nmax < 1 {
            bail!("Nmax must be at least 1");
        }
        self.precision.validate()?;
        for &(h, v) in &self.sample_points {
            ParamPoint::from_f64(h, v, 64).with_context(|| format!("sample point ({h}, {v})"))?;
        }
        Ok(())
    }

    /// The table through max(Nmax, `need`), read from the cache when it is
    /// large enough and written back after a rebuild. An unreadable cache is
    /// an error, never overwritten.
    pub fn table(&self, need: usize) -> Result<CorrTable> {
        let nmax = self.nmax.max(need);
        let Some(path) = &self.cache_path else {
            return Ok(CorrTable::build(nmax)?);
        };
        let cached = read_cache(path).with_context(|| format!("cache {} is unusable; remove it to rebuild", path.display()))?;
        if let Some(t) = cached {
            if t.nmax() >= nmax {
                return Ok(t.truncated(nmax));
            }
        }
        let t = CorrTable::build(nmax)?;
        write_cache(path, &t)?;
        Ok(t)
    }
}
