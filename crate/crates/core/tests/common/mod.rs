//! Shared generators and independent oracles for the integration suites.
//!
//! Everything here is test-side machinery: the oracles recompute expected
//! values from definitions (quadratic roots, dense scans, closed-form chord
//! functions) without touching the library's query paths.

#![allow(dead_code)]

use chordal::bodies::{Body, BodySpec};
use rand::Rng;

/// Deterministic valid body of the given variant. `dim` is honored by balls,
/// ellipsoids and polytopes; star bodies are always 2-D.
pub fn random_body<R: Rng>(variant: usize, dim: usize, rng: &mut R) -> Body {
    let spec = match variant % 4 {
        0 => BodySpec::Ball {
            center: (0..dim).map(|_| rng.random_range(-0.5..0.5)).collect(),
            radius: rng.random_range(0.5..2.0),
        },
        1 => BodySpec::Ellipsoid {
            center: (0..dim).map(|_| rng.random_range(-0.5..0.5)).collect(),
            semi_axes: (0..dim).map(|_| rng.random_range(0.5..2.0)).collect(),
        },
        2 => {
            // Axis-aligned box constraints guarantee boundedness; extra
            // random cuts keep at least a small ball around the origin.
            let mut halfspaces = Vec::new();
            for j in 0..dim {
                for sign in [1.0, -1.0] {
                    let mut row = vec![0.0; dim + 1];
                    row[j] = sign;
                    row[dim] = rng.random_range(0.8..1.6);
                    halfspaces.push(row);
                }
            }
            for _ in 0..dim + 1 {
                let dir: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm < 1e-3 {
                    continue;
                }
                let mut row: Vec<f64> = dir.iter().map(|x| x / norm).collect();
                row.push(rng.random_range(0.6..1.4));
                halfspaces.push(row);
            }
            BodySpec::Polytope { halfspaces }
        }
        _ => random_convex_star(rng),
    };
    Body::new(spec).expect("generated body is valid")
}

/// Convex star body: coefficients budgeted so that r > 0 and r - r'' > 0,
/// which makes r^2 + 2r'^2 - r r'' >= 0 everywhere.
pub fn random_convex_star<R: Rng>(rng: &mut R) -> BodySpec {
    let harmonics = 3;
    let budget = rng.random_range(0.2..0.7);
    let mut cos_coeffs: Vec<f64> = (0..harmonics).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut sin_coeffs: Vec<f64> = (0..harmonics).map(|_| rng.random_range(-1.0..1.0)).collect();
    let weight: f64 = cos_coeffs
        .iter()
        .zip(&sin_coeffs)
        .enumerate()
        .map(|(k, (c, s))| {
            let kk = (k + 1) as f64;
            (kk * kk + 1.0) * (c.abs() + s.abs())
        })
        .sum();
    let scale = if weight > 0.0 { budget / weight } else { 0.0 };
    cos_coeffs.iter_mut().for_each(|c| *c *= scale);
    sin_coeffs.iter_mut().for_each(|s| *s *= scale);
    BodySpec::RadialStar2d {
        base_point: vec![rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3)],
        c0: 1.0,
        cos_coeffs,
        sin_coeffs,
    }
}

/// Rejection-samples an interior point with comfortable margin.
pub fn random_interior<R: Rng>(body: &Body, rng: &mut R) -> Vec<f64> {
    body.sample_interior_point(rng, 1e-3 * body.diameter(), 10_000)
        .expect("interior sampling succeeds on generated bodies")
}

/// The sliver triangle (0,0), (1, 0.05), (1, -0.05) as half-spaces: the
/// perpendicular-separation configuration where the point-regularity ratio
/// exceeds 1.
pub fn sliver_triangle() -> Body {
    Body::new(BodySpec::Polytope {
        halfspaces: vec![
            vec![-0.05, 1.0, 0.0],
            vec![-0.05, -1.0, 0.0],
            vec![1.0, 0.0, 1.0],
        ],
    })
    .expect("sliver triangle is a valid polytope")
}

pub fn unit_ball(dim: usize) -> Body {
    Body::new(BodySpec::Ball {
        center: vec![0.0; dim],
        radius: 1.0,
    })
    .unwrap()
}

pub fn limacon(eps: f64) -> Body {
    Body::new(BodySpec::RadialStar2d {
        base_point: vec![0.0, 0.0],
        c0: 1.0,
        cos_coeffs: vec![eps],
        sin_coeffs: vec![],
    })
    .unwrap()
}

pub fn ellipse(a: f64, b: f64) -> Body {
    Body::new(BodySpec::Ellipsoid {
        center: vec![0.0, 0.0],
        semi_axes: vec![a, b],
    })
    .unwrap()
}

pub fn unit_square() -> Body {
    Body::new(BodySpec::Polytope {
        halfspaces: vec![
            vec![1.0, 0.0, 1.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 1.0, 1.0],
            vec![0.0, -1.0, 0.0],
        ],
    })
    .unwrap()
}

/// Random odd trigonometric polynomial with harmonics 1, 3, 5, 7, 9 and at
/// least one coefficient of magnitude >= 0.1. Returns (cos, sin) pairs per
/// harmonic.
pub fn random_odd_trig_poly<R: Rng>(rng: &mut R) -> Vec<(f64, f64)> {
    loop {
        let coeffs: Vec<(f64, f64)> = (0..5)
            .map(|_| (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let max = coeffs
            .iter()
            .flat_map(|&(a, b)| [a.abs(), b.abs()])
            .fold(0.0f64, f64::max);
        if max >= 0.1 {
            return coeffs;
        }
    }
}

pub fn eval_odd_trig(coeffs: &[(f64, f64)], theta: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(j, &(a, b))| {
            let k = (2 * j + 1) as f64;
            a * (k * theta).cos() + b * (k * theta).sin()
        })
        .sum()
}

/// Dense-scan oracle: confirms the odd polynomial has a sign change and
/// returns the bracketing angles.
pub fn dense_scan_zero_bracket(coeffs: &[(f64, f64)], samples: usize) -> Option<(f64, f64)> {
    let h = std::f64::consts::TAU / samples as f64;
    let mut prev = eval_odd_trig(coeffs, 0.0);
    for k in 1..=samples {
        let theta = k as f64 * h;
        let v = eval_odd_trig(coeffs, theta);
        if prev == 0.0 || prev * v < 0.0 {
            return Some(((k - 1) as f64 * h, theta));
        }
        prev = v;
    }
    None
}
