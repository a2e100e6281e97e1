//! Laplacian spectrum and the four convergence-speed heuristics.
//!
//! Every heuristic is maximised: higher means faster predicted averaging.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{distances, DistanceMatrix, Graph};

/// Absolute tolerance for clamping `λ1` and for zero tests on the spectrum.
pub const EIGEN_TOLERANCE: f64 = 1e-9;

/// Laplacian eigenvalues in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `λ_i` with 1-based indexing.
    pub fn lambda(&self, i: usize) -> f64 {
        self.eigenvalues[i - 1]
    }

    pub fn algebraic_connectivity(&self) -> f64 {
        self.eigenvalues.get(1).copied().unwrap_or(0.0)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// `L = D - A`.
pub fn laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut l = DMatrix::zeros(n, n);
    for v in 0..n {
        l[(v, v)] = g.degree(v) as f64;
    }
    for e in g.edges() {
        l[(e.u(), e.v())] = -1.0;
        l[(e.v(), e.u())] = -1.0;
    }
    l
}

/// Incidence matrix `B` (`n × m`), columns in canonical edge order.
///
/// This is the oriented incidence; `B·Bᵀ` then reproduces `D - A`.
pub fn incidence_matrix(g: &Graph) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(g.n(), g.edge_count());
    for (j, e) in g.edges().enumerate() {
        b[(e.u(), j)] = 1.0;
        b[(e.v(), j)] = -1.0;
    }
    b
}

pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    if g.n() == 0 {
        return Err(Error::Domain("spectrum of the empty graph".into()));
    }
    let eig = SymmetricEigen::try_new(laplacian(g), f64::EPSILON, 10_000)
        .ok_or(Error::NumericalFailure)?;
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    if eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::NumericalFailure);
    }
    eigenvalues.sort_by(f64::total_cmp);
    if eigenvalues[0].abs() < EIGEN_TOLERANCE {
        eigenvalues[0] = 0.0;
    }
    Ok(Spectrum { eigenvalues })
}

/// `λ2`; zero (within tolerance) iff the graph is disconnected.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    if g.n() < 2 {
        return Err(Error::Domain("algebraic connectivity needs n >= 2".into()));
    }
    Ok(laplacian_spectrum(g)?.algebraic_connectivity())
}

/// `λ2 / λn`, in `[0, 1]`.
pub fn eigenratio(g: &Graph) -> Result<f64> {
    if g.n() < 2 {
        return Err(Error::Domain("eigenratio needs n >= 2".into()));
    }
    let s = laplacian_spectrum(g)?;
    let radius = s.spectral_radius();
    if radius < EIGEN_TOLERANCE {
        return Err(Error::DegenerateSpectrum);
    }
    Ok((s.algebraic_connectivity() / radius).clamp(0.0, 1.0))
}

pub fn closeness_centrality(g: &Graph) -> Result<f64> {
    closeness_from_distances(&distances(g))
}

/// Mean over vertices of `(n - 1) / Σ_v d(u, v)`.
pub fn closeness_from_distances(d: &DistanceMatrix) -> Result<f64> {
    let n = d.n();
    if n < 2 {
        return Err(Error::Domain("closeness needs n >= 2".into()));
    }
    let mut total = 0.0;
    for u in 0..n {
        let row = d.row(u);
        if row.contains(&DistanceMatrix::UNREACHABLE) {
            return Err(Error::NotConnected);
        }
        let sum: u64 = row.iter().map(|&x| u64::from(x)).sum();
        total += (n - 1) as f64 / sum as f64;
    }
    Ok(total / n as f64)
}

pub fn global_efficiency(g: &Graph) -> Result<f64> {
    efficiency_from_distances(&distances(g))
}

/// Mean inverse distance over ordered pairs; unreachable pairs contribute 0.
pub fn efficiency_from_distances(d: &DistanceMatrix) -> Result<f64> {
    let n = d.n();
    if n < 2 {
        return Err(Error::Domain("efficiency needs n >= 2".into()));
    }
    let mut total = 0.0;
    for u in 0..n {
        for (v, &x) in d.row(u).iter().enumerate() {
            if v != u && x != DistanceMatrix::UNREACHABLE {
                total += 1.0 / f64::from(x);
            }
        }
    }
    Ok(total / (n * (n - 1)) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HeuristicKind {
    Eigenratio,
    AlgebraicConnectivity,
    ClosenessCentrality,
    GlobalEfficiency,
}

impl HeuristicKind {
    pub const ALL: [HeuristicKind; 4] = [
        HeuristicKind::Eigenratio,
        HeuristicKind::AlgebraicConnectivity,
        HeuristicKind::ClosenessCentrality,
        HeuristicKind::GlobalEfficiency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HeuristicKind::Eigenratio => "eigenratio",
            HeuristicKind::AlgebraicConnectivity => "algebraic-connectivity",
            HeuristicKind::ClosenessCentrality => "closeness-centrality",
            HeuristicKind::GlobalEfficiency => "global-efficiency",
        }
    }

    fn needs_spectrum(self) -> bool {
        matches!(
            self,
            HeuristicKind::Eigenratio | HeuristicKind::AlgebraicConnectivity
        )
    }
}

impl fmt::Display for HeuristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HeuristicKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "eigenratio" => Ok(HeuristicKind::Eigenratio),
            "algebraic-connectivity" | "lambda2" => Ok(HeuristicKind::AlgebraicConnectivity),
            "closeness-centrality" | "closeness" => Ok(HeuristicKind::ClosenessCentrality),
            "global-efficiency" | "efficiency" => Ok(HeuristicKind::GlobalEfficiency),
            other => Err(Error::Config(format!("unknown heuristic `{other}`"))),
        }
    }
}

/// Scores a connected graph under `kind`. Disconnected graphs are rejected
/// for every heuristic, not just closeness.
pub fn evaluate(g: &Graph, kind: HeuristicKind) -> Result<f64> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.n() < 2 {
        return Err(Error::Domain("heuristics need n >= 2".into()));
    }
    if kind.needs_spectrum() {
        let s = laplacian_spectrum(g)?;
        return match kind {
            HeuristicKind::AlgebraicConnectivity => Ok(s.algebraic_connectivity()),
            _ => {
                let radius = s.spectral_radius();
                if radius < EIGEN_TOLERANCE {
                    return Err(Error::DegenerateSpectrum);
                }
                Ok((s.algebraic_connectivity() / radius).clamp(0.0, 1.0))
            }
        };
    }
    let d = distances(g);
    match kind {
        HeuristicKind::ClosenessCentrality => closeness_from_distances(&d),
        _ => efficiency_from_distances(&d),
    }
}
