//! Unit directions and antipodally closed sampling grids on S^{n-1}.
//!
//! Grids store each direction together with its exact coordinate negation, so
//! evaluating a tabulated function at `-s` is a table lookup with zero
//! discretization error. That exactness is what makes the antipodal identities
//! (evenness of chord lengths, oddness of difference maps) checkable at
//! machine precision instead of grid precision.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{ChordalError, Result};
use crate::vecops;

/// Tolerance on the Euclidean norm of a unit vector.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// A point of S^{n-1}: direction cosines with unit Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector {
    coords: Vec<f64>,
}

impl UnitVector {
    /// Accepts coordinates that are already unit-norm within
    /// [`UNIT_NORM_TOL`]; n >= 2 required.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(ChordalError::InvalidArgument(format!(
                "unit vector needs dimension >= 2, got {}",
                coords.len()
            )));
        }
        let norm = vecops::norm(&coords);
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(ChordalError::InvalidArgument(format!(
                "coordinates have norm {norm:.17}, not 1 within {UNIT_NORM_TOL:e}"
            )));
        }
        Ok(UnitVector { coords })
    }

    /// Rescales arbitrary nonzero coordinates to unit norm.
    pub fn normalized(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(ChordalError::InvalidArgument(format!(
                "unit vector needs dimension >= 2, got {}",
                coords.len()
            )));
        }
        let norm = vecops::norm(&coords);
        if !norm.is_finite() || norm < 1e-300 {
            return Err(ChordalError::InvalidArgument(
                "cannot normalize a (near-)zero vector".into(),
            ));
        }
        Ok(UnitVector {
            coords: coords.iter().map(|c| c / norm).collect(),
        })
    }

    /// Direction (cos θ, sin θ) on S^1.
    pub fn from_angle(theta: f64) -> Self {
        UnitVector {
            coords: vec![theta.cos(), theta.sin()],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The exact antipode: coordinate-wise negation (exact in IEEE 754).
    pub fn antipode(&self) -> Self {
        UnitVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl AsRef<[f64]> for UnitVector {
    fn as_ref(&self) -> &[f64] {
        &self.coords
    }
}

/// An antipodally closed direction grid: `points[antipode_of[i]]` is the
/// exact negation of `points[i]`, and `antipode_of` is a fixed-point-free
/// involution.
#[derive(Debug)]
pub struct SphereGrid {
    dim: usize,
    resolution: usize,
    points: Vec<UnitVector>,
    antipode_of: Vec<usize>,
    adjacency: OnceLock<Vec<(usize, usize)>>,
}

impl PartialEq for SphereGrid {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.resolution == other.resolution
            && self.points == other.points
    }
}

impl SphereGrid {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The resolution parameter `m` the grid was built with; the grid holds
    /// `2m` directions.
    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &UnitVector {
        &self.points[i]
    }

    pub fn points(&self) -> &[UnitVector] {
        &self.points
    }

    pub fn antipode_of(&self, i: usize) -> usize {
        self.antipode_of[i]
    }

    /// Canonical angle of grid index `i` for 2-dimensional grids: `i * pi/m`,
    /// recomputed from the integer index so it never drifts.
    pub fn angle(&self, i: usize) -> f64 {
        debug_assert_eq!(self.dim, 2);
        i as f64 * PI / self.resolution as f64
    }

    /// Indices `i` with `i < antipode_of(i)` — one representative per
    /// antipodal pair.
    pub fn pair_representatives(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| i < self.antipode_of[i])
    }

    /// Neighbor pairs used for adjacency scans (sign changes, difference
    /// quotients). On S^1 these are the consecutive angles in cyclic order;
    /// for n >= 3 each point is linked to its six nearest neighbors.
    pub fn adjacent_pairs(&self) -> &[(usize, usize)] {
        self.adjacency.get_or_init(|| {
            if self.dim == 2 {
                (0..self.len()).map(|i| (i, (i + 1) % self.len())).collect()
            } else {
                let k = 6.min(self.len() - 1);
                let mut pairs = Vec::with_capacity(self.len() * k / 2);
                for i in 0..self.len() {
                    let mut dists: Vec<(usize, f64)> = (0..self.len())
                        .filter(|&j| j != i)
                        .map(|j| {
                            (
                                j,
                                vecops::dist(self.points[i].coords(), self.points[j].coords()),
                            )
                        })
                        .collect();
                    dists.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
                    for &(j, _) in dists.iter().take(k) {
                        let pair = (i.min(j), i.max(j));
                        pairs.push(pair);
                    }
                }
                pairs.sort_unstable();
                pairs.dedup();
                pairs
            }
        })
    }
}

/// Builds an antipodally closed grid of `2m` directions on S^{n-1}.
///
/// For n = 2 the first `m` points sit at the angles `k*pi/m`; for n = 3 a
/// Fibonacci spiral supplies `m` quasi-uniform seeds; for n >= 4 the seeds
/// are normalized Gaussian draws from a fixed-seed generator. In every case
/// the second half of the grid is the exact coordinate negation of the first,
/// with `antipode_of[i] = (i + m) mod 2m`.
pub fn make_antipodal_grid(n: usize, m: usize) -> Result<SphereGrid> {
    if n < 2 {
        return Err(ChordalError::InvalidArgument(format!(
            "grid dimension must be >= 2, got {n}"
        )));
    }
    if m < 4 {
        return Err(ChordalError::InvalidArgument(format!(
            "grid resolution must be >= 4, got {m}"
        )));
    }

    let mut base: Vec<UnitVector> = Vec::with_capacity(m);
    match n {
        2 => {
            for k in 0..m {
                base.push(UnitVector::from_angle(k as f64 * PI / m as f64));
            }
        }
        3 => {
            // Fibonacci spiral: latitudes evenly spaced in z, longitudes
            // advanced by the golden angle.
            let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
            for k in 0..m {
                let z = 1.0 - 2.0 * (k as f64 + 0.5) / m as f64;
                let rho = (1.0 - z * z).max(0.0).sqrt();
                let phi = 2.0 * PI * (k as f64 / golden).fract();
                base.push(UnitVector::new(vec![rho * phi.cos(), rho * phi.sin(), z])?);
            }
        }
        _ => {
            let seed = 0x5EED_0000_u64 ^ ((n as u64) << 32) ^ m as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            while base.len() < m {
                let coords: Vec<f64> =
                    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
                if vecops::norm(&coords) > 1e-6 {
                    base.push(UnitVector::normalized(coords)?);
                }
            }
        }
    }

    let mut points = base.clone();
    points.extend(base.iter().map(UnitVector::antipode));
    let antipode_of = (0..2 * m).map(|i| (i + m) % (2 * m)).collect();

    Ok(SphereGrid {
        dim: n,
        resolution: m,
        points,
        antipode_of,
        adjacency: OnceLock::new(),
    })
}

/// Angular (great-circle) distance between two directions, in [0, pi].
///
/// The chordal distance `|a - b|` is equivalent up to the bounded factor
/// 2/pi <= chord/angle <= 1; everything downstream only relies on that
/// equivalence class, and the angular form is what adjacency scans report.
pub fn geodesic_distance(a: &UnitVector, b: &UnitVector) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(ChordalError::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(vecops::dot(a.coords(), b.coords()).clamp(-1.0, 1.0).acos())
}

/// Deterministic rotation-invariant direction: a normalized standard-normal
/// sample from a ChaCha stream keyed by `seed`.
pub fn random_unit_vector(n: usize, seed: u64) -> Result<UnitVector> {
    if n < 2 {
        return Err(ChordalError::InvalidArgument(format!(
            "dimension must be >= 2, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let coords: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        if vecops::norm(&coords) > 1e-6 {
            return UnitVector::normalized(coords);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_2_4_is_eighth_circle_fan() {
        let g = make_antipodal_grid(2, 4).unwrap();
        assert_eq!(g.len(), 8);
        for i in 0..8 {
            assert_eq!(g.antipode_of(i), (i + 4) % 8);
            let expected = i as f64 * PI / 4.0;
            let got = g.point(i).coords()[1].atan2(g.point(i).coords()[0]);
            let wrapped = (got - expected).rem_euclid(2.0 * PI);
            assert!(
                wrapped < 1e-12 || (2.0 * PI - wrapped) < 1e-12,
                "index {i}: angle {got} vs {expected}"
            );
        }
    }

    #[test]
    fn antipode_of_zero_is_resolution() {
        for m in [4, 7, 360, 720] {
            let g = make_antipodal_grid(2, m).unwrap();
            assert_eq!(g.antipode_of(0), m);
        }
    }

    #[test]
    fn grid_3_500_involution_is_exact() {
        let g = make_antipodal_grid(3, 500).unwrap();
        assert_eq!(g.len(), 1000);
        for i in 0..g.len() {
            let j = g.antipode_of(i);
            assert_ne!(i, j, "fixed point at {i}");
            assert_eq!(g.antipode_of(j), i, "not an involution at {i}");
            for (a, b) in g.point(i).coords().iter().zip(g.point(j).coords()) {
                assert_eq!(a.to_bits(), (-b).to_bits(), "negation not exact at {i}");
            }
        }
    }

    #[test]
    fn consecutive_angles_spaced_by_pi_over_m() {
        let m = 90;
        let g = make_antipodal_grid(2, m).unwrap();
        for i in 0..g.len() {
            let j = (i + 1) % g.len();
            let d = geodesic_distance(g.point(i), g.point(j)).unwrap();
            assert!((d - PI / m as f64).abs() < 1e-12, "gap at {i}: {d}");
        }
    }

    #[test]
    fn geodesic_distance_identities() {
        let e1 = UnitVector::new(vec![1.0, 0.0]).unwrap();
        let e2 = UnitVector::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(geodesic_distance(&e1, &e1).unwrap(), 0.0);
        assert!((geodesic_distance(&e1, &e1.antipode()).unwrap() - PI).abs() < 1e-15);
        assert!((geodesic_distance(&e1, &e2).unwrap() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn geodesic_distance_rejects_dimension_mismatch() {
        let a = UnitVector::new(vec![1.0, 0.0]).unwrap();
        let b = UnitVector::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            geodesic_distance(&a, &b),
            Err(ChordalError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn geodesic_invariant_under_joint_negation() {
        for s in 0..50u64 {
            let a = random_unit_vector(3, 1000 + s).unwrap();
            let b = random_unit_vector(3, 2000 + s).unwrap();
            let d1 = geodesic_distance(&a, &b).unwrap();
            let d2 = geodesic_distance(&a.antipode(), &b.antipode()).unwrap();
            assert!((d1 - d2).abs() < 1e-12);
        }
    }

    #[test]
    fn random_unit_vector_is_deterministic_and_normalized() {
        let a = random_unit_vector(3, 42).unwrap();
        let b = random_unit_vector(3, 42).unwrap();
        assert_eq!(a, b);
        assert!((vecops::norm(a.coords()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_unit_vector_mean_is_near_zero() {
        // Monte-Carlo check of rotation invariance: the empirical mean of
        // 10^4 draws must be small.
        let n = 10_000u64;
        let mut mean = [0.0f64; 2];
        for s in 0..n {
            let v = random_unit_vector(2, s).unwrap();
            mean[0] += v.coords()[0];
            mean[1] += v.coords()[1];
        }
        mean[0] /= n as f64;
        mean[1] /= n as f64;
        let norm = (mean[0] * mean[0] + mean[1] * mean[1]).sqrt();
        assert!(norm < 0.05, "mean norm {norm}");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_antipodal_grid(1, 8).is_err());
        assert!(make_antipodal_grid(2, 3).is_err());
        assert!(random_unit_vector(1, 0).is_err());
        assert!(UnitVector::new(vec![0.5, 0.5]).is_err());
        assert!(UnitVector::normalized(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn higher_dimensional_grid_is_antipodally_exact() {
        let g = make_antipodal_grid(4, 64).unwrap();
        assert_eq!(g.len(), 128);
        for i in 0..g.len() {
            let j = g.antipode_of(i);
            assert_eq!(g.antipode_of(j), i);
            for (a, b) in g.point(i).coords().iter().zip(g.point(j).coords()) {
                assert_eq!(a.to_bits(), (-b).to_bits());
            }
        }
    }

    #[test]
    fn adjacency_covers_every_point() {
        let g = make_antipodal_grid(3, 40).unwrap();
        let pairs = g.adjacent_pairs();
        let mut seen = vec![false; g.len()];
        for &(i, j) in pairs {
            seen[i] = true;
            seen[j] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
