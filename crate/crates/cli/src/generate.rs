//! Synthetic triangulated disks and annuli in the plane.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use simplex_embed_core::numerics::{streams, Rng, RngState};

use crate::complex_file::ComplexFile;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Family {
    /// Fan triangulation of a noisy convex polygon around a centre vertex.
    PolygonDisk,
    /// Two noisy concentric rings joined by a strip of triangles.
    Annulus,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PolygonDisk => "polygon_disk",
            Family::Annulus => "annulus",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub families: Vec<Family>,
    /// Complexes per family.
    pub count: usize,
    /// Inclusive range of boundary (ring) vertex counts.
    pub min_size: usize,
    pub max_size: usize,
    /// Relative jitter of radii and angles.
    pub noise: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            families: vec![Family::PolygonDisk, Family::Annulus],
            count: 20,
            min_size: 6,
            max_size: 10,
            noise: 0.05,
            seed: 0,
        }
    }
}

fn jitter(rng: &mut Rng, noise: f64) -> f64 {
    if noise == 0.0 {
        0.0
    } else {
        rng.gen_range(-noise..=noise)
    }
}

fn ring(rng: &mut Rng, k: usize, radius: f64, phase: f64, noise: f64) -> Vec<Vec<f64>> {
    (0..k)
        .map(|i| {
            let angle = TAU * (i as f64 + phase + jitter(rng, noise)) / k as f64;
            let r = radius * (1.0 + jitter(rng, noise));
            vec![r * angle.cos(), r * angle.sin()]
        })
        .collect()
}

/// `k` boundary vertices: `V = k + 1`, `E = 2k`, `F = k`.
pub fn polygon_disk(name: &str, k: usize, noise: f64, rng: &mut Rng) -> ComplexFile {
    let mut coordinates = BTreeMap::new();
    coordinates.insert(0, vec![jitter(rng, noise), jitter(rng, noise)]);
    for (i, p) in ring(rng, k, 1.0, 0.0, noise).into_iter().enumerate() {
        coordinates.insert(i + 1, p);
    }
    let simplices = (0..k).map(|i| vec![0, i + 1, (i + 1) % k + 1]).collect();
    ComplexFile {
        name: name.to_string(),
        ambient_dim: Some(2),
        coordinates: Some(coordinates),
        simplices,
        label: Some(Family::PolygonDisk.name().to_string()),
    }
}

/// `k` vertices per ring: `V = 2k`, `E = 4k`, `F = 2k`.
pub fn annulus(name: &str, k: usize, noise: f64, rng: &mut Rng) -> ComplexFile {
    let mut coordinates = BTreeMap::new();
    for (i, p) in ring(rng, k, 0.5, 0.0, noise).into_iter().enumerate() {
        coordinates.insert(i, p);
    }
    for (i, p) in ring(rng, k, 1.0, 0.5, noise).into_iter().enumerate() {
        coordinates.insert(k + i, p);
    }
    let mut simplices = Vec::with_capacity(2 * k);
    for i in 0..k {
        let next = (i + 1) % k;
        simplices.push(vec![i, next, k + i]);
        simplices.push(vec![next, k + i, k + next]);
    }
    ComplexFile {
        name: name.to_string(),
        ambient_dim: Some(2),
        coordinates: Some(coordinates),
        simplices,
        label: Some(Family::Annulus.name().to_string()),
    }
}

/// `count` complexes per family, family by family. Each complex draws from
/// its own stream, so the output is a pure function of the config.
pub fn generate_synthetic_dataset(cfg: &GeneratorConfig) -> Result<Vec<ComplexFile>> {
    if cfg.count < 1 {
        return Err(CliError::Config("count must be at least 1".into()));
    }
    if cfg.families.is_empty() {
        return Err(CliError::Config("at least one family is required".into()));
    }
    if cfg.min_size < 3 || cfg.max_size < cfg.min_size {
        return Err(CliError::Config(format!(
            "size range {}..={} must satisfy 3 <= min <= max",
            cfg.min_size, cfg.max_size
        )));
    }
    if !(0.0..0.5).contains(&cfg.noise) {
        return Err(CliError::Config("noise must lie in [0, 0.5)".into()));
    }
    let seed = RngState::new(cfg.seed);
    let mut out = Vec::with_capacity(cfg.count * cfg.families.len());
    for &family in &cfg.families {
        for i in 0..cfg.count {
            let index = ((family as u64) << 24) | i as u64;
            let mut rng = seed.stream(streams::id(streams::DATASET, index));
            let k = rng.gen_range(cfg.min_size..=cfg.max_size);
            let name = format!("{}_{i:03}", family.name());
            out.push(match family {
                Family::PolygonDisk => polygon_disk(&name, k, cfg.noise, &mut rng),
                Family::Annulus => annulus(&name, k, cfg.noise, &mut rng),
            });
        }
    }
    Ok(out)
}
