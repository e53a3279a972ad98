//! JSON experiment configurations: the domain grammar and one config
//! struct per suite. Complex numbers are encoded as `[re, im]` pairs.

use anyhow::{bail, Context, Result};
use minbasis::geometry::{CMatrix, ComplexAffineMap};
use minbasis::{CVector64, Domain64, C64};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub type Cpx = [f64; 2];

pub fn to_c(v: Cpx) -> C64 {
    C64::new(v[0], v[1])
}

pub fn to_vector(v: &[Cpx]) -> CVector64 {
    CVector64::new(v.iter().map(|&e| to_c(e)).collect())
}

pub fn from_vector(v: &CVector64) -> Vec<Cpx> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

/// Type-tagged domain descriptions mirroring the kernel's constructors.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DomainConfig {
    /// The unit disc in ℂ.
    Disc,
    Ball {
        center: Vec<Cpx>,
        radius: f64,
    },
    Polydisc {
        center: Vec<Cpx>,
        radii: Vec<f64>,
    },
    /// Intersection of half-spaces Re<z, normal> < offset.
    Polytope {
        normals: Vec<Vec<Cpx>>,
        offsets: Vec<f64>,
    },
    /// Σ |z_j|^{2 m_j} < 1.
    Ellipsoid {
        exponents: Vec<f64>,
    },
    /// Re z > 0.
    HalfPlane,
    /// ℂ ∖ [0, ∞).
    SlitPlane,
    /// Convex hull of coordinate discs with the given scales.
    Hull {
        center: Vec<Cpx>,
        scales: Vec<f64>,
    },
    Product {
        factors: Vec<DomainConfig>,
    },
    /// anchor + matrix (z - anchor) applied to the inner domain.
    Affine {
        anchor: Vec<Cpx>,
        matrix: Vec<Vec<Cpx>>,
        domain: Box<DomainConfig>,
    },
}

impl DomainConfig {
    pub fn build(&self) -> Result<Domain64> {
        let d = match self {
            DomainConfig::Disc => Domain64::unit_disc(),
            DomainConfig::Ball { center, radius } => {
                Domain64::ball(to_vector(center), *radius)?
            }
            DomainConfig::Polydisc { center, radii } => {
                Domain64::polydisc(to_vector(center), radii.clone())?
            }
            DomainConfig::Polytope { normals, offsets } => Domain64::polytope(
                normals.iter().map(|r| to_vector(r)).collect(),
                offsets.clone(),
            )?,
            DomainConfig::Ellipsoid { exponents } => {
                Domain64::complex_ellipsoid(exponents.clone())?
            }
            DomainConfig::HalfPlane => Domain64::right_half_plane(),
            DomainConfig::SlitPlane => Domain64::slit_plane(),
            DomainConfig::Hull { center, scales } => {
                Domain64::coordinate_disc_hull(to_vector(center), scales.clone())?
            }
            DomainConfig::Product { factors } => Domain64::product(
                factors
                    .iter()
                    .map(|f| f.build())
                    .collect::<Result<Vec<_>>>()?,
            )?,
            DomainConfig::Affine {
                anchor,
                matrix,
                domain,
            } => {
                let rows: Vec<CVector64> = matrix.iter().map(|r| to_vector(r)).collect();
                if rows.is_empty() {
                    bail!("affine matrix must be nonempty");
                }
                let map = ComplexAffineMap::new(to_vector(anchor), CMatrix::from_rows(&rows))?;
                Domain64::affine_image(map, domain.build()?)?
            }
        };
        Ok(d)
    }
}

fn default_samples() -> usize {
    10_000
}

fn default_seed() -> u64 {
    42
}

fn default_radii() -> Vec<f64> {
    vec![0.25, 0.5, 1.0, 2.0]
}

fn default_epsilons() -> Vec<f64> {
    vec![1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
}

fn default_slit_ts() -> Vec<f64> {
    vec![2.0, 10.0, 100.0]
}

fn default_pair_samples() -> usize {
    100_000
}

fn default_triples() -> usize {
    1_000_000
}

fn default_derivative_points() -> usize {
    20
}

fn default_derivative_step() -> f64 {
    1e-6
}

fn default_decay_tolerance() -> f64 {
    1e-2
}

fn default_direction_counts() -> Vec<usize> {
    vec![128, 512]
}

fn default_grid() -> usize {
    256
}

fn default_n_support() -> usize {
    64
}

fn default_dims() -> Vec<usize> {
    vec![2, 3]
}

fn default_face_range() -> [usize; 2] {
    [6, 20]
}

fn default_domain_count() -> usize {
    100
}

/// Random-domain invariant sweep for the basis construction.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MinimalBasisConfig {
    #[serde(default = "default_domain_count")]
    pub polytopes: usize,
    #[serde(default = "default_domain_count")]
    pub ellipsoids: usize,
    #[serde(default = "default_dims")]
    pub dims: Vec<usize>,
    #[serde(default = "default_face_range")]
    pub faces: [usize; 2],
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl Default for MinimalBasisConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields defaulted")
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SandwichConfig {
    pub domain: DomainConfig,
    pub base_point: Vec<Cpx>,
    #[serde(default = "default_radii")]
    pub radii: Vec<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SharpnessConfig {
    #[serde(default = "default_epsilons")]
    pub epsilons: Vec<f64>,
    #[serde(default = "default_slit_ts")]
    pub slit_ts: Vec<f64>,
    #[serde(default = "default_pair_samples")]
    pub pair_samples: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl Default for SharpnessConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields defaulted")
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MetricConfig {
    #[serde(default = "default_triples")]
    pub triples: usize,
    #[serde(default = "default_derivative_points")]
    pub derivative_points: usize,
    #[serde(default = "default_derivative_step")]
    pub derivative_step: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl Default for MetricConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields defaulted")
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TauDecayConfig {
    pub domain: DomainConfig,
    /// Boundary point the sequence approaches.
    pub boundary_point: Vec<Cpx>,
    /// Inward direction; the sequence is boundary_point + t * inward.
    pub inward: Vec<Cpx>,
    pub t_values: Vec<f64>,
    #[serde(default = "default_decay_tolerance")]
    pub decay_tolerance: f64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionConfig {
    pub domain: DomainConfig,
    pub base_point: Vec<Cpx>,
    #[serde(default = "default_direction_counts")]
    pub direction_counts: Vec<usize>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SliceConfig {
    pub domain: DomainConfig,
    pub base_point: Vec<Cpx>,
    pub radius: f64,
    /// Complex direction spanning the slice plane through the base point.
    pub direction: Vec<Cpx>,
    #[serde(default = "default_grid")]
    pub grid: usize,
    /// Half-width of the grid in the slice parameter; derived from the
    /// outer polydisc when omitted.
    #[serde(default)]
    pub extent: Option<f64>,
    #[serde(default = "default_n_support")]
    pub n_support: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

pub fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}
