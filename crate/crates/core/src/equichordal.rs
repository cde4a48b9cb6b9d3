//! Equichordal-defect measurement, multi-start search for equichordal
//! points, antipodal difference maps, and a zero finder for odd scalar maps
//! on the sphere.
//!
//! The search is the numerical side of the uniqueness question: if a body
//! admits an equichordal point, independent descents from many interior
//! starts must all collapse into one cluster. The odd-map zero finder
//! implements the consequence of the antipodal-map theorem that is actually
//! used by the chord-sum algebra: a continuous odd scalar map on S^{n-1}
//! attains zero somewhere (not that it vanishes identically — only the
//! zero-existence form is certified here).

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bodies::Body;
use crate::chordmap::{half_chord_field, SampledSphereFunction};
use crate::error::{ChordalError, Result};
use crate::optimize::{self, NelderMeadParams};
use crate::sphere::{SphereGrid, UnitVector};

/// Maximum antipodal-sum defect a map may have and still count as odd.
pub const ODDNESS_LIMIT: f64 = 1e-9;
/// Cluster radius and rejection-sampling margin, relative to the diameter.
pub const CLUSTER_RADIUS_REL: f64 = 1e-3;
/// Default inner tolerance and declare threshold, relative to the diameter.
pub const DEFAULT_TOL_REL: f64 = 1e-6;

/// Equichordal-defect summary at a candidate point.
///
/// `max_deviation` is the sup-norm distance of the chord-length function
/// from its mean — zero exactly when every sampled chord through the point
/// has the same length. The variance is carried as a secondary aggregate
/// only; the sup norm is what the definition of an equichordal point asks
/// for, and it names a certificate direction (`worst_direction`, a grid pair
/// representative).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DefectReport {
    pub point: Vec<f64>,
    pub mean_chord: f64,
    pub max_deviation: f64,
    pub variance: f64,
    pub worst_direction: usize,
    /// Number of grid directions the defect was measured on.
    pub grid_resolution: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergedPoint {
    pub point: Vec<f64>,
    pub defect: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Cluster {
    pub representative: Vec<f64>,
    pub member_count: usize,
}

/// Aggregate result of a multi-start equichordal search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub starts: usize,
    pub converged_points: Vec<ConvergedPoint>,
    pub clusters: Vec<Cluster>,
    pub best: DefectReport,
    pub equichordal_found: bool,
}

/// Options for [`find_equichordal`]. `None` tolerances resolve to
/// [`DEFAULT_TOL_REL`] times the body diameter.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub starts: usize,
    pub seed: u64,
    pub inner_tol: Option<f64>,
    pub declare_threshold: Option<f64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            starts: 20,
            seed: 0,
            inner_tol: None,
            declare_threshold: None,
        }
    }
}

/// Chord statistics over the antipodal pairs of a tabulated field.
fn chord_stats(grid: &SphereGrid, values: &[f64]) -> (f64, f64, f64, usize) {
    let mut chords: Vec<(usize, f64)> = Vec::with_capacity(grid.len() / 2);
    for i in grid.pair_representatives() {
        chords.push((i, values[i] + values[grid.antipode_of(i)]));
    }
    let count = chords.len() as f64;
    let mean = chords.iter().map(|&(_, c)| c).sum::<f64>() / count;
    let mut max_dev = 0.0f64;
    let mut worst = chords[0].0;
    let mut var = 0.0f64;
    for &(i, c) in &chords {
        let dev = (c - mean).abs();
        var += (c - mean) * (c - mean);
        if dev > max_dev {
            max_dev = dev;
            worst = i;
        }
    }
    (mean, max_dev, var / count, worst)
}

/// Measures the equichordal defect of `body` at the strictly interior point
/// `x`: chord lengths over one representative per antipodal pair, their
/// mean, and the largest deviation from it.
pub fn equichordal_defect(body: &Body, x: &[f64], grid: &Arc<SphereGrid>) -> Result<DefectReport> {
    let field = half_chord_field(body, x, grid)?;
    let (mean_chord, max_deviation, variance, worst_direction) =
        chord_stats(grid, field.values());
    Ok(DefectReport {
        point: x.to_vec(),
        mean_chord,
        max_deviation,
        variance,
        worst_direction,
        grid_resolution: grid.len(),
    })
}

/// Defect value along the exact same arithmetic path as
/// [`equichordal_defect`], without constructing the report. Used as the
/// search objective so recomputing the best report reproduces the converged
/// value bit for bit.
fn defect_value(body: &Body, x: &[f64], grid: &SphereGrid) -> Result<f64> {
    let mut values = Vec::with_capacity(grid.len());
    for u in grid.points() {
        values.push(body.exit_t_unchecked(x, u.coords())?);
    }
    Ok(chord_stats(grid, &values).1)
}

/// Multi-start Nelder–Mead search for equichordal points.
///
/// Runs `starts` independent simplex descents of the defect from
/// rejection-sampled interior points (margin at least 1e-3 diameter),
/// penalizing iterates that leave the margin region by the diameter. Each
/// run stops once the simplex diameter falls below the inner tolerance or
/// after 500 n iterations. Converged points are clustered with radius 1e-3
/// diameter; `equichordal_found` holds when the best defect is at most the
/// declare threshold.
///
/// Runs execute in parallel; aggregation follows the seeded start order, so
/// identical options yield identical outcomes regardless of thread count.
pub fn find_equichordal(
    body: &Body,
    grid: &Arc<SphereGrid>,
    options: &SearchOptions,
) -> Result<SearchOutcome> {
    if options.starts < 1 {
        return Err(ChordalError::InvalidArgument(
            "need at least one start".into(),
        ));
    }
    if grid.dim() != body.dim() {
        return Err(ChordalError::DimensionMismatch {
            expected: body.dim(),
            got: grid.dim(),
        });
    }
    let dim = body.dim();
    let diam = body.diameter();
    let inner_tol = options.inner_tol.unwrap_or(DEFAULT_TOL_REL * diam);
    let declare = options.declare_threshold.unwrap_or(DEFAULT_TOL_REL * diam);
    if inner_tol <= 0.0 || declare <= 0.0 {
        return Err(ChordalError::InvalidArgument(
            "tolerances must be positive".into(),
        ));
    }
    let margin_req = CLUSTER_RADIUS_REL * diam;

    // Seed-ordered starting points; the rejection budget is 100 per start.
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut start_points: Vec<Vec<f64>> = Vec::with_capacity(options.starts);
    let mut rejections = 0usize;
    let (lo, hi) = body.bounding_box();
    while start_points.len() < options.starts {
        if rejections >= 100 * options.starts {
            return Err(ChordalError::NoFeasibleStart {
                attempts: rejections,
            });
        }
        let p: Vec<f64> = lo
            .iter()
            .zip(hi)
            .map(|(l, h)| l + rng.random::<f64>() * (h - l))
            .collect();
        if -body.residual(&p) >= margin_req {
            start_points.push(p);
        } else {
            rejections += 1;
        }
    }

    let objective = |z: &[f64]| -> f64 {
        let margin = -body.residual(z);
        if margin < margin_req {
            // Outside the margin region: dominate every feasible defect and
            // slope back toward feasibility.
            return diam + (margin_req - margin);
        }
        defect_value(body, z, grid).unwrap_or(2.0 * diam)
    };

    let step = 0.05 * diam;
    let params = NelderMeadParams::standard(dim, inner_tol);
    let runs: Vec<(Vec<f64>, f64)> = start_points
        .par_iter()
        .map(|s| {
            let res = optimize::nelder_mead(|z| objective(z), s, step, &params);
            (res.x, res.value)
        })
        .collect();

    let converged_points: Vec<ConvergedPoint> = runs
        .iter()
        .map(|(p, d)| ConvergedPoint {
            point: p.clone(),
            defect: *d,
        })
        .collect();

    // Greedy clustering in (defect, lexicographic) order; the lowest-defect
    // member of each cluster is its representative, so the cluster radius
    // bound is enforced against that representative.
    let mut order: Vec<usize> = (0..runs.len()).collect();
    order.sort_by(|&a, &b| {
        runs[a]
            .1
            .partial_cmp(&runs[b].1)
            .unwrap()
            .then_with(|| runs[a].0.partial_cmp(&runs[b].0).unwrap())
    });
    let cluster_radius = CLUSTER_RADIUS_REL * diam;
    let mut clusters: Vec<Cluster> = Vec::new();
    for &idx in &order {
        let p = &runs[idx].0;
        match clusters
            .iter_mut()
            .find(|c| crate::vecops::dist(&c.representative, p) <= cluster_radius)
        {
            Some(c) => c.member_count += 1,
            None => clusters.push(Cluster {
                representative: p.clone(),
                member_count: 1,
            }),
        }
    }

    let best_idx = order[0];
    let best = equichordal_defect(body, &runs[best_idx].0, grid)?;
    let equichordal_found = best.max_deviation <= declare;

    Ok(SearchOutcome {
        starts: options.starts,
        converged_points,
        clusters,
        best,
        equichordal_found,
    })
}

/// Pointwise difference of two sampled functions on the same grid; the
/// result carries synthetic provenance.
pub fn antipodal_difference(
    f: &SampledSphereFunction,
    g: &SampledSphereFunction,
) -> Result<SampledSphereFunction> {
    if !(Arc::ptr_eq(f.grid(), g.grid()) || f.grid() == g.grid()) {
        return Err(ChordalError::GridMismatch);
    }
    let values: Vec<f64> = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| a - b)
        .collect();
    SampledSphereFunction::synthetic(Arc::clone(f.grid()), values)
}

/// Max over grid indices of `|g(s) + g(-s)|` — zero exactly when `g` is odd
/// on the grid. Pure table lookups thanks to the exact antipode storage.
pub fn oddness_defect(g: &SampledSphereFunction) -> f64 {
    let grid = g.grid();
    (0..grid.len())
        .map(|i| (g.value(i) + g.value(grid.antipode_of(i))).abs())
        .fold(0.0, f64::max)
}

/// Result of the constant-sum check `f(s) + f(-s) = r`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstantSumCheck {
    pub holds: bool,
    pub r: f64,
    pub max_residual: f64,
}

/// Estimates the common chord sum `r` as the mean of `f(s) + f(-s)` over
/// antipodal pairs and reports whether every pair stays within `tol` of it.
pub fn verify_constant_sum(f: &SampledSphereFunction, tol: f64) -> ConstantSumCheck {
    let grid = f.grid();
    let sums: Vec<f64> = grid
        .pair_representatives()
        .map(|i| f.value(i) + f.value(grid.antipode_of(i)))
        .collect();
    let r = sums.iter().sum::<f64>() / sums.len() as f64;
    let max_residual = sums.iter().map(|s| (s - r).abs()).fold(0.0, f64::max);
    ConstantSumCheck {
        holds: max_residual <= tol,
        r,
        max_residual,
    }
}

/// Builds a synthetic constant-sum function `f(s) = r/2 + p(s)` with `p` odd.
///
/// The odd part is evaluated through products of the stored coordinates
/// only (angle-addition recurrences on S^1, odd monomials in higher
/// dimension), so `p(-s)` is the exact negation of `p(s)` and the
/// constant-sum identity holds to rounding in `r` alone.
pub fn synthetic_constant_sum(
    grid: &Arc<SphereGrid>,
    r: f64,
    seed: u64,
) -> SampledSphereFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amp = r.abs() / 8.0 + 0.1;
    let values: Vec<f64> = if grid.dim() == 2 {
        // Odd harmonics k in {1, 3, 5} via the coordinate recurrence.
        let coeffs: Vec<(f64, f64)> = (0..3)
            .map(|_| {
                (
                    (rng.random::<f64>() * 2.0 - 1.0) * amp,
                    (rng.random::<f64>() * 2.0 - 1.0) * amp,
                )
            })
            .collect();
        grid.points()
            .iter()
            .map(|u| {
                let (x, y) = (u.coords()[0], u.coords()[1]);
                let mut ck = x;
                let mut sk = y;
                let mut p = 0.0;
                for (k, &(a, b)) in [0usize, 1, 2].iter().zip(&coeffs) {
                    // advance from harmonic 2k to 2k+1 (k = 0 starts at 1)
                    if *k > 0 {
                        for _ in 0..2 {
                            let nc = x * ck - y * sk;
                            let ns = y * ck + x * sk;
                            ck = nc;
                            sk = ns;
                        }
                    }
                    p += a * ck + b * sk;
                }
                r / 2.0 + p
            })
            .collect()
    } else {
        let w: Vec<f64> = (0..grid.dim())
            .map(|_| (rng.random::<f64>() * 2.0 - 1.0) * amp)
            .collect();
        let v: Vec<f64> = (0..grid.dim())
            .map(|_| (rng.random::<f64>() * 2.0 - 1.0) * amp)
            .collect();
        grid.points()
            .iter()
            .map(|u| {
                let lin: f64 = u.coords().iter().zip(&w).map(|(s, wi)| wi * s).sum();
                let cub: f64 = u.coords().iter().zip(&v).map(|(s, vi)| vi * (s * s * s)).sum();
                r / 2.0 + lin + cub
            })
            .collect()
    };
    SampledSphereFunction::synthetic(Arc::clone(grid), values)
        .expect("synthetic values are finite and sized to the grid")
}

/// Geodesic midpoint of two non-antipodal unit vectors: the normalized
/// average lies on the connecting great circle, equidistant from both, and
/// resolves brackets down to coordinate precision (an angle-based slerp
/// cannot: acos floors near 1e-8).
fn arc_midpoint(p: &UnitVector, q: &UnitVector) -> Option<UnitVector> {
    let coords: Vec<f64> = p
        .coords()
        .iter()
        .zip(q.coords())
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    UnitVector::normalized(coords).ok()
}

/// Finds a direction where a continuous odd scalar map vanishes (up to
/// `tol`).
///
/// The map is sampled on the grid; it must be odd there within
/// [`ODDNESS_LIMIT`]. If a sample is already within `tol` the first such
/// grid direction is returned. Otherwise some adjacent pair must change
/// sign (an odd map takes opposite signs at antipodes), and the zero is
/// pinned down by bisection along the connecting great-circle arc.
pub fn find_odd_zero<F: Fn(&UnitVector) -> f64>(
    map: F,
    grid: &SphereGrid,
    tol: f64,
) -> Result<UnitVector> {
    if tol <= 0.0 {
        return Err(ChordalError::InvalidArgument(
            "tolerance must be positive".into(),
        ));
    }
    let values: Vec<f64> = grid.points().iter().map(&map).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(ChordalError::InvalidArgument(
            "map produced a non-finite value on the grid".into(),
        ));
    }
    let defect = (0..grid.len())
        .map(|i| (values[i] + values[grid.antipode_of(i)]).abs())
        .fold(0.0, f64::max);
    if defect > ODDNESS_LIMIT {
        return Err(ChordalError::NotOdd {
            defect,
            limit: ODDNESS_LIMIT,
        });
    }

    if let Some(i) = values.iter().position(|v| v.abs() <= tol) {
        return Ok(grid.point(i).clone());
    }

    for &(i, j) in grid.adjacent_pairs() {
        if values[i] * values[j] < 0.0 {
            let (mut p, mut q) = (grid.point(i).clone(), grid.point(j).clone());
            let mut fp = values[i];
            for _ in 0..200 {
                let Some(mid) = arc_midpoint(&p, &q) else {
                    break;
                };
                let fm = map(&mid);
                if fm.abs() <= tol {
                    return Ok(mid);
                }
                if mid == p || mid == q {
                    break; // bracket at coordinate resolution
                }
                if fp * fm < 0.0 {
                    q = mid;
                } else {
                    p = mid;
                    fp = fm;
                }
            }
            return Err(ChordalError::ResolutionTooCoarse(
                "bisection bracket collapsed without reaching the tolerance; \
                 the map may be discontinuous at this scale"
                    .into(),
            ));
        }
    }

    Err(ChordalError::ResolutionTooCoarse(
        "no sign change between adjacent samples and no sample within tolerance; \
         use a finer grid"
            .into(),
    ))
}

/// Grid-only variant of [`find_odd_zero`] for functions known purely through
/// their samples: succeeds when some sample is already within `tol`
/// (refinement between samples needs a callable map).
pub fn find_odd_zero_on_grid(g: &SampledSphereFunction, tol: f64) -> Result<UnitVector> {
    if tol <= 0.0 {
        return Err(ChordalError::InvalidArgument(
            "tolerance must be positive".into(),
        ));
    }
    let defect = oddness_defect(g);
    if defect > ODDNESS_LIMIT {
        return Err(ChordalError::NotOdd {
            defect,
            limit: ODDNESS_LIMIT,
        });
    }
    let grid = g.grid();
    if let Some(i) = g.values().iter().position(|v| v.abs() <= tol) {
        return Ok(grid.point(i).clone());
    }
    Err(ChordalError::ResolutionTooCoarse(
        "no grid sample within tolerance; refine the grid or provide a callable map".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::BodySpec;
    use crate::sphere::make_antipodal_grid;

    fn unit_ball() -> Body {
        Body::new(BodySpec::Ball {
            center: vec![0.0, 0.0],
            radius: 1.0,
        })
        .unwrap()
    }

    fn limacon(eps: f64) -> Body {
        Body::new(BodySpec::RadialStar2d {
            base_point: vec![0.0, 0.0],
            c0: 1.0,
            cos_coeffs: vec![eps],
            sin_coeffs: vec![],
        })
        .unwrap()
    }

    #[test]
    fn defect_at_ball_center_is_exactly_zero() {
        let grid = Arc::new(make_antipodal_grid(2, 90).unwrap());
        let report = equichordal_defect(&unit_ball(), &[0.0, 0.0], &grid).unwrap();
        assert_eq!(report.max_deviation, 0.0);
        assert_eq!(report.mean_chord, 2.0);
        assert_eq!(report.variance, 0.0);
    }

    #[test]
    fn defect_at_limacon_base_is_grid_exact() {
        let grid = Arc::new(make_antipodal_grid(2, 720).unwrap());
        let report = equichordal_defect(&limacon(0.25), &[0.0, 0.0], &grid).unwrap();
        assert!(report.max_deviation <= 1e-9, "{}", report.max_deviation);
        assert!((report.mean_chord - 2.0).abs() <= 1e-9);
    }

    #[test]
    fn defect_off_center_matches_chord_oracle() {
        // Chords of the unit disk through (0.5, 0): the chord along the
        // direction theta has distance 0.5 |sin theta| from the center, so
        // its length is 2 sqrt(1 - 0.25 sin^2 theta).
        let grid = Arc::new(make_antipodal_grid(2, 360).unwrap());
        let report = equichordal_defect(&unit_ball(), &[0.5, 0.0], &grid).unwrap();

        let mut chords = Vec::new();
        for i in grid.pair_representatives() {
            let theta = grid.angle(i);
            chords.push(2.0 * (1.0 - 0.25 * theta.sin().powi(2)).sqrt());
        }
        let mean: f64 = chords.iter().sum::<f64>() / chords.len() as f64;
        let max_dev = chords
            .iter()
            .map(|c| (c - mean).abs())
            .fold(0.0, f64::max);
        assert!((report.mean_chord - mean).abs() < 1e-9);
        assert!((report.max_deviation - max_dev).abs() < 1e-9);
        assert!(report.max_deviation > 0.1);
    }

    #[test]
    fn search_on_ball_collapses_to_center() {
        let grid = Arc::new(make_antipodal_grid(2, 90).unwrap());
        let options = SearchOptions {
            starts: 20,
            seed: 0,
            inner_tol: Some(1e-8 * 2.0),
            declare_threshold: None,
        };
        let outcome = find_equichordal(&unit_ball(), &grid, &options).unwrap();
        assert!(outcome.equichordal_found);
        assert_eq!(outcome.clusters.len(), 1, "clusters: {:?}", outcome.clusters);
        assert_eq!(outcome.clusters[0].member_count, 20);
        let rep = &outcome.clusters[0].representative;
        let dist = (rep[0] * rep[0] + rep[1] * rep[1]).sqrt();
        assert!(dist <= 1e-6, "representative {dist} from center");
        let min_defect = outcome
            .converged_points
            .iter()
            .map(|c| c.defect)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(outcome.best.max_deviation, min_defect);
    }

    #[test]
    fn search_on_ellipse_reports_absence() {
        let body = Body::new(BodySpec::Ellipsoid {
            center: vec![0.0, 0.0],
            semi_axes: vec![1.0, 0.5],
        })
        .unwrap();
        let grid = Arc::new(make_antipodal_grid(2, 180).unwrap());
        let options = SearchOptions {
            starts: 6,
            ..SearchOptions::default()
        };
        let outcome = find_equichordal(&body, &grid, &options).unwrap();
        assert!(!outcome.equichordal_found);
        let declare = DEFAULT_TOL_REL * body.diameter();
        assert!(outcome.best.max_deviation >= 10.0 * declare);
    }

    #[test]
    fn search_is_deterministic() {
        let body = limacon(0.25);
        let grid = Arc::new(make_antipodal_grid(2, 64).unwrap());
        let options = SearchOptions {
            starts: 4,
            seed: 11,
            ..SearchOptions::default()
        };
        let a = find_equichordal(&body, &grid, &options).unwrap();
        let b = find_equichordal(&body, &grid, &options).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn antipodal_difference_and_oddness() {
        let grid = Arc::new(make_antipodal_grid(2, 64).unwrap());
        // 0.2 cos(theta), tabulated from the stored coordinates so the odd
        // symmetry is bitwise.
        let f = SampledSphereFunction::synthetic(
            Arc::clone(&grid),
            grid.points().iter().map(|u| 0.2 * u.coords()[0]).collect(),
        )
        .unwrap();
        let ones =
            SampledSphereFunction::synthetic(Arc::clone(&grid), vec![1.0; grid.len()]).unwrap();
        let shifted = SampledSphereFunction::synthetic(
            Arc::clone(&grid),
            f.values().iter().map(|v| v + 1.0).collect(),
        )
        .unwrap();

        let diff = antipodal_difference(&shifted, &ones).unwrap();
        for i in 0..grid.len() {
            assert!((diff.value(i) - f.value(i)).abs() < 1e-15);
        }
        assert_eq!(oddness_defect(&f), 0.0);

        let zero = antipodal_difference(&f, &f).unwrap();
        assert!(zero.values().iter().all(|&v| v == 0.0));
        assert_eq!(oddness_defect(&zero), 0.0);
    }

    #[test]
    fn constant_sum_checks() {
        let grid = Arc::new(make_antipodal_grid(2, 180).unwrap());
        let ball = unit_ball();
        let center = half_chord_field(&ball, &[0.0, 0.0], &grid).unwrap();
        let check = verify_constant_sum(&center, 1e-12);
        assert!(check.holds);
        assert_eq!(check.r, 2.0);
        assert_eq!(check.max_residual, 0.0);

        let lim = half_chord_field(&limacon(0.25), &[0.0, 0.0], &grid).unwrap();
        let check = verify_constant_sum(&lim, 1e-9);
        assert!(check.holds, "residual {}", check.max_residual);
        assert!((check.r - 2.0).abs() <= 1e-9);

        // Off-center ball field: f(s) + f(-s) = 2 sqrt(1 - |x_perp|^2)
        // varies with the direction, so the constant-sum identity fails.
        let off = half_chord_field(&ball, &[0.5, 0.0], &grid).unwrap();
        let check = verify_constant_sum(&off, 1e-9);
        assert!(!check.holds);
        assert!(check.max_residual > 0.1);
    }

    #[test]
    fn synthetic_constant_sum_pairs_have_odd_difference() {
        let grid = Arc::new(make_antipodal_grid(2, 128).unwrap());
        for seed in 0..20u64 {
            let f = synthetic_constant_sum(&grid, 3.0, seed);
            let g = synthetic_constant_sum(&grid, 3.0, seed + 1000);
            assert!(verify_constant_sum(&f, 1e-12).holds);
            let diff = antipodal_difference(&f, &g).unwrap();
            assert!(oddness_defect(&diff) <= 1e-12);
        }
        let grid3 = Arc::new(make_antipodal_grid(3, 64).unwrap());
        let f = synthetic_constant_sum(&grid3, 2.0, 7);
        assert!(verify_constant_sum(&f, 1e-12).holds);
    }

    #[test]
    fn odd_zero_of_sine_and_cosine() {
        let grid = make_antipodal_grid(2, 720).unwrap();
        let zero = find_odd_zero(|u| u.coords()[1], &grid, 1e-12).unwrap();
        assert!(zero.coords()[1].abs() <= 1e-12);

        let zero = find_odd_zero(|u| u.coords()[0], &grid, 1e-12).unwrap();
        assert!(zero.coords()[0].abs() <= 1e-12);

        // Odd grid resolution: pi/2 is not a sample, so the arc bisection
        // path must be taken.
        let grid = make_antipodal_grid(2, 45).unwrap();
        let zero = find_odd_zero(|u| u.coords()[0], &grid, 1e-12).unwrap();
        assert!(zero.coords()[0].abs() <= 1e-12);
    }

    #[test]
    fn odd_zero_rejects_non_odd_maps() {
        let grid = make_antipodal_grid(2, 64).unwrap();
        let err = find_odd_zero(|u| 0.5 + u.coords()[1], &grid, 1e-8).unwrap_err();
        assert!(matches!(err, ChordalError::NotOdd { .. }));
    }

    #[test]
    fn odd_zero_on_higher_sphere() {
        let grid = make_antipodal_grid(3, 400).unwrap();
        let map = |u: &UnitVector| {
            let c = u.coords();
            0.7 * c[0] - 0.2 * c[1] + 0.4 * c[2] * c[2] * c[2]
        };
        let zero = find_odd_zero(map, &grid, 1e-10).unwrap();
        assert!(map(&zero).abs() <= 1e-10);
        assert!(map(&zero.antipode()).abs() <= 1e-10);
    }

    #[test]
    fn odd_zero_on_grid_variant() {
        let grid = Arc::new(make_antipodal_grid(2, 64).unwrap());
        // sin(theta) sampled: theta = 0 is on the grid.
        let f = SampledSphereFunction::synthetic(
            Arc::clone(&grid),
            grid.points().iter().map(|u| u.coords()[1]).collect(),
        )
        .unwrap();
        let zero = find_odd_zero_on_grid(&f, 1e-12).unwrap();
        assert!(zero.coords()[1].abs() <= 1e-12);

        // Shift the sampling so no grid value is small: the grid-only
        // variant cannot refine and must ask for a finer grid.
        let g = SampledSphereFunction::synthetic(
            Arc::clone(&grid),
            grid.points()
                .iter()
                .map(|u| {
                    let theta = u.coords()[1].atan2(u.coords()[0]);
                    (theta - 0.02).sin() + (3.0 * (theta - 0.02)).sin() * 0.1
                })
                .collect(),
        )
        .unwrap();
        match find_odd_zero_on_grid(&g, 1e-9) {
            Err(ChordalError::ResolutionTooCoarse(_)) => {}
            other => panic!("expected resolution error, got {other:?}"),
        }
    }

    #[test]
    fn random_odd_trig_polynomials_have_certified_zeros() {
        let grid = make_antipodal_grid(2, 360).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10 {
            let coeffs: Vec<(f64, f64)> = (0..5)
                .map(|_| {
                    (
                        rng.random::<f64>() * 2.0 - 1.0,
                        rng.random::<f64>() * 2.0 - 1.0,
                    )
                })
                .collect();
            let map = move |u: &UnitVector| {
                let theta = u.coords()[1].atan2(u.coords()[0]);
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, &(a, b))| {
                        let k = (2 * j + 1) as f64;
                        a * (k * theta).cos() + b * (k * theta).sin()
                    })
                    .sum::<f64>()
            };
            let zero = find_odd_zero(&map, &grid, 1e-8).unwrap();
            assert!(map(&zero).abs() <= 1e-8);
        }
    }
}
