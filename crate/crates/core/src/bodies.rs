//! Convex-body representations with membership, ray–boundary intersection,
//! diameter, interior margin, and convexity validation.
//!
//! Four variants are supported: balls, axis-aligned ellipsoids, half-space
//! polytopes, and 2-D star bodies given by a trigonometric radial polynomial.
//! Construction validates the body once; all query operations on a [`Body`]
//! are pure and safe to call concurrently.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{ChordalError, Result};
use crate::optimize;
use crate::sphere::UnitVector;
use crate::vecops;

/// Relative half-width of the boundary band used by [`Body::contains`].
pub const BOUNDARY_BAND_REL: f64 = 1e-12;
/// Interiority threshold for ray queries, relative to the diameter. Rays from
/// points closer to the boundary than this are rejected as ill conditioned.
pub const RAY_INTERIOR_MARGIN_REL: f64 = 1e-6;
/// Bisection bracket width for oracle-only ray exits, relative to body scale.
pub const BISECT_WIDTH_REL: f64 = 1e-12;
/// Floor of the polar convexity expression r^2 + 2r'^2 - r r''. Slightly
/// negative so exactly-critical curves (limacon at eps = 0.5) stay valid.
pub const CONVEXITY_TOL: f64 = -1e-9;

const STAR_VALIDATION_SAMPLES: usize = 4096;
const STAR_MARGIN_SAMPLES: usize = 2048;
const STAR_DIAMETER_SAMPLES: usize = 512;
const POLYTOPE_BOUNDARY_SAMPLES: usize = 500;

/// Body specification as written in JSON body files.
///
/// The on-disk document is tagged by `"type"`; numbers are plain decimal.
/// `halfspaces` rows are `[normal..., offset]` meaning `<normal, p> <=
/// offset`; the radial polynomial is `r(theta) = c0 + sum_k (cos_coeffs[k-1]
/// cos k theta + sin_coeffs[k-1] sin k theta)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum BodySpec {
    #[serde(rename = "ball")]
    Ball { center: Vec<f64>, radius: f64 },
    #[serde(rename = "ellipsoid")]
    Ellipsoid {
        center: Vec<f64>,
        semi_axes: Vec<f64>,
    },
    #[serde(rename = "polytope")]
    Polytope { halfspaces: Vec<Vec<f64>> },
    #[serde(rename = "radial_star_2d")]
    RadialStar2d {
        base_point: Vec<f64>,
        c0: f64,
        #[serde(default)]
        cos_coeffs: Vec<f64>,
        #[serde(default)]
        sin_coeffs: Vec<f64>,
    },
}

/// Membership verdict with an explicit boundary band of half-width
/// [`BOUNDARY_BAND_REL`] times the body scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

/// The unique exit of a ray from a strictly interior point: parameter `t0 >
/// 0` and the boundary point `x + a * t0`.
#[derive(Debug, Clone)]
pub struct RayHit {
    pub t0: f64,
    pub boundary_point: Vec<f64>,
}

/// Outcome of convexity validation. Invalid verdicts carry a human-readable
/// reason and, for radial bodies, the angle witnessing the violation.
#[derive(Debug, Clone)]
pub enum ConvexityVerdict {
    Valid,
    Invalid {
        reason: String,
        witness_theta: Option<f64>,
    },
}

impl ConvexityVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ConvexityVerdict::Valid)
    }
}

/// Trigonometric radial polynomial `r(theta) = c0 + sum_k (c_k cos k theta +
/// s_k sin k theta)`.
#[derive(Debug, Clone)]
pub struct TrigPoly {
    c0: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigPoly {
    pub fn new(c0: f64, mut cos: Vec<f64>, mut sin: Vec<f64>) -> Self {
        let k = cos.len().max(sin.len());
        cos.resize(k, 0.0);
        sin.resize(k, 0.0);
        TrigPoly { c0, cos, sin }
    }

    pub fn harmonics(&self) -> usize {
        self.cos.len()
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut r = self.c0;
        for k in 0..self.cos.len() {
            let kt = (k + 1) as f64 * theta;
            r += self.cos[k] * kt.cos() + self.sin[k] * kt.sin();
        }
        r
    }

    /// Evaluate from the direction cosines `(ux, uy) = (cos theta, sin
    /// theta)` using the angle-addition recurrence — no trigonometric calls.
    /// This is the membership hot path inside bisection loops.
    pub fn eval_dir(&self, ux: f64, uy: f64) -> f64 {
        let mut r = self.c0;
        let (mut ck, mut sk) = (ux, uy);
        for k in 0..self.cos.len() {
            r += self.cos[k] * ck + self.sin[k] * sk;
            let next_c = ux * ck - uy * sk;
            let next_s = uy * ck + ux * sk;
            ck = next_c;
            sk = next_s;
        }
        r
    }

    /// `(r, r', r'')` at `theta`; derivatives are exact term-by-term.
    pub fn eval_with_derivs(&self, theta: f64) -> (f64, f64, f64) {
        let mut r = self.c0;
        let mut d1 = 0.0;
        let mut d2 = 0.0;
        for k in 0..self.cos.len() {
            let kk = (k + 1) as f64;
            let (s, c) = (kk * theta).sin_cos();
            r += self.cos[k] * c + self.sin[k] * s;
            d1 += kk * (-self.cos[k] * s + self.sin[k] * c);
            d2 += kk * kk * (-self.cos[k] * c - self.sin[k] * s);
        }
        (r, d1, d2)
    }

    /// Polar convexity expression `r^2 + 2 r'^2 - r r''`; nonnegative exactly
    /// when the curve bounds a convex region.
    pub fn convexity_expr(&self, theta: f64) -> f64 {
        let (r, d1, d2) = self.eval_with_derivs(theta);
        r * r + 2.0 * d1 * d1 - r * d2
    }
}

/// A half-space `<normal, p> <= offset` with its cached normal length.
#[derive(Debug, Clone)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
    norm: f64,
}

impl Halfspace {
    fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        let norm = vecops::norm(&normal);
        if !norm.is_finite() || norm < 1e-300 {
            return Err(ChordalError::InvalidBody {
                reason: "half-space normal has (near-)zero length".into(),
            });
        }
        Ok(Halfspace {
            normal,
            offset,
            norm,
        })
    }

    /// Signed distance of `p` to the hyperplane, positive outside.
    fn violation(&self, p: &[f64]) -> f64 {
        (vecops::dot(&self.normal, p) - self.offset) / self.norm
    }
}

#[derive(Debug, Clone)]
enum Shape {
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Ellipsoid {
        center: Vec<f64>,
        semi_axes: Vec<f64>,
        min_axis: f64,
    },
    Polytope {
        halfspaces: Vec<Halfspace>,
        /// Exact vertex list, available in dimension 2 only.
        vertices: Vec<Vec<f64>>,
    },
    Star {
        base: Vec<f64>,
        radial: TrigPoly,
        r_min: f64,
        r_max: f64,
    },
}

/// A validated convex body. Immutable after construction; every operation is
/// a pure function of the cached representation.
#[derive(Debug, Clone)]
pub struct Body {
    spec: BodySpec,
    shape: Shape,
    dim: usize,
    diameter: f64,
    /// True when the diameter is a sampled lower bound (half-space polytopes
    /// in dimension >= 3) rather than an exact value.
    diameter_lower_bound: bool,
    /// Characteristic length used for tolerance scaling. Equals the diameter,
    /// inflated by 1% when the diameter is only a lower bound.
    scale: f64,
    /// A strictly interior reference point: the center, the star base point,
    /// or the max-margin point found during polytope validation.
    anchor: Vec<f64>,
    bbox_lo: Vec<f64>,
    bbox_hi: Vec<f64>,
}

impl Body {
    /// Validates the specification and precomputes the derived quantities
    /// (anchor point, diameter, bounding box).
    pub fn new(spec: BodySpec) -> Result<Self> {
        if let ConvexityVerdict::Invalid {
            reason,
            witness_theta,
        } = validate_convexity(&spec)
        {
            let reason = match witness_theta {
                Some(theta) => format!("{reason} (witness theta = {theta:.6})"),
                None => reason,
            };
            return Err(ChordalError::InvalidBody { reason });
        }

        let shape = build_shape(&spec)?;
        let dim = shape_dim(&shape);
        let anchor = compute_anchor(&shape)?;
        let (diameter, diameter_lower_bound) = compute_diameter(&shape, &anchor);
        let scale = if diameter_lower_bound {
            diameter * 1.01
        } else {
            diameter
        };
        let (bbox_lo, bbox_hi) = compute_bbox(&shape, &anchor);

        Ok(Body {
            spec,
            shape,
            dim,
            diameter,
            diameter_lower_bound,
            scale,
            anchor,
            bbox_lo,
            bbox_hi,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: BodySpec = serde_json::from_str(text)?;
        Body::new(spec)
    }

    pub fn from_json_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Body::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.spec).expect("body spec serializes")
    }

    pub fn spec(&self) -> &BodySpec {
        &self.spec
    }

    /// Short label used in provenance records.
    pub fn descriptor(&self) -> String {
        let kind = match self.spec {
            BodySpec::Ball { .. } => "ball",
            BodySpec::Ellipsoid { .. } => "ellipsoid",
            BodySpec::Polytope { .. } => "polytope",
            BodySpec::RadialStar2d { .. } => "radial_star_2d",
        };
        format!("{kind}(n={})", self.dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Largest pairwise distance in the body. Exact for balls, ellipsoids,
    /// 2-D polytopes, and (after local refinement) radial star bodies; a
    /// sampled lower bound for polytopes in dimension >= 3 — see
    /// [`Body::diameter_is_lower_bound`].
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn diameter_is_lower_bound(&self) -> bool {
        self.diameter_lower_bound
    }

    /// Characteristic length for tolerance scaling (diameter, 1%-inflated
    /// when it is only a lower bound).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// A strictly interior reference point.
    pub fn anchor(&self) -> &[f64] {
        &self.anchor
    }

    /// Axis-aligned bounding box (approximate for sampled variants); used
    /// for rejection sampling of interior points.
    pub fn bounding_box(&self) -> (&[f64], &[f64]) {
        (&self.bbox_lo, &self.bbox_hi)
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(ChordalError::DimensionMismatch {
                expected: self.dim,
                got: len,
            });
        }
        Ok(())
    }

    /// Signed defining function: negative inside, zero on the boundary,
    /// positive outside, scaled to length units.
    pub fn boundary_residual(&self, p: &[f64]) -> Result<f64> {
        self.check_dim(p.len())?;
        Ok(self.residual(p))
    }

    pub(crate) fn residual(&self, p: &[f64]) -> f64 {
        match &self.shape {
            Shape::Ball { center, radius } => vecops::dist(p, center) - radius,
            Shape::Ellipsoid {
                center,
                semi_axes,
                min_axis,
            } => {
                let q: f64 = p
                    .iter()
                    .zip(center)
                    .zip(semi_axes)
                    .map(|((pi, ci), ai)| {
                        let u = (pi - ci) / ai;
                        u * u
                    })
                    .sum();
                (q.sqrt() - 1.0) * min_axis
            }
            Shape::Polytope { halfspaces, .. } => halfspaces
                .iter()
                .map(|h| h.violation(p))
                .fold(f64::NEG_INFINITY, f64::max),
            Shape::Star {
                base,
                radial,
                r_min,
                ..
            } => {
                let qx = p[0] - base[0];
                let qy = p[1] - base[1];
                let nq = (qx * qx + qy * qy).sqrt();
                if nq < 1e-300 {
                    // At the base point the direction is undefined; the
                    // radial slack is at least r_min in every direction.
                    return -r_min;
                }
                nq - radial.eval_dir(qx / nq, qy / nq)
            }
        }
    }

    /// Membership with a boundary band of half-width [`BOUNDARY_BAND_REL`]
    /// times the body scale.
    pub fn contains(&self, p: &[f64]) -> Result<Membership> {
        let r = self.boundary_residual(p)?;
        let band = BOUNDARY_BAND_REL * self.scale;
        Ok(if r < -band {
            Membership::Inside
        } else if r > band {
            Membership::Outside
        } else {
            Membership::Boundary
        })
    }

    /// Signed interiority proxy: positive inside, negative outside. For
    /// balls and polytopes this is the exact distance to the boundary; for
    /// ellipsoids it is the conservative inscribed radius `a_min (1 -
    /// sqrt(Q))`; for star bodies the radial slack `r(theta) - |p - base|`.
    pub fn signed_margin(&self, p: &[f64]) -> Result<f64> {
        self.check_dim(p.len())?;
        Ok(-self.residual(p))
    }

    /// Radius of the largest ball around `x` contained in the body. Rejects
    /// points outside or on the boundary.
    ///
    /// Closed form for balls and polytopes. For ellipsoids the value is the
    /// conservative inscribed radius `a_min (1 - sqrt(Q(x)))` (exact at the
    /// center, a valid lower bound elsewhere). For star bodies the distance
    /// to the boundary curve is minimized over 2048 samples with
    /// golden-section refinement around the best angle.
    pub fn interior_margin(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        if self.contains(x)? != Membership::Inside {
            return Err(ChordalError::PointNotInterior {
                margin: -self.residual(x),
                required: 0.0,
            });
        }
        Ok(match &self.shape {
            Shape::Star { base, radial, .. } => {
                star_boundary_distance(base, radial, x, STAR_MARGIN_SAMPLES, false)
            }
            _ => -self.residual(x),
        })
    }

    /// Largest distance from `x` to a point of the body. Closed form for
    /// balls, exact (vertex maximum) for 2-D polytopes, refined boundary
    /// scans for the other variants.
    pub fn circumradius_about(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(match &self.shape {
            Shape::Ball { center, radius } => vecops::dist(x, center) + radius,
            Shape::Ellipsoid {
                center, semi_axes, ..
            } => ellipsoid_max_distance(center, semi_axes, x),
            Shape::Polytope {
                halfspaces,
                vertices,
            } => {
                if self.dim == 2 {
                    vertices
                        .iter()
                        .map(|v| vecops::dist(v, x))
                        .fold(0.0, f64::max)
                } else {
                    polytope_boundary_samples(halfspaces, &self.anchor, self.dim)
                        .iter()
                        .map(|p| vecops::dist(p, x))
                        .fold(0.0, f64::max)
                }
            }
            Shape::Star { base, radial, .. } => {
                star_boundary_distance(base, radial, x, STAR_MARGIN_SAMPLES, true)
            }
        })
    }

    fn require_ray_interior(&self, x: &[f64]) -> Result<()> {
        let required = RAY_INTERIOR_MARGIN_REL * self.diameter;
        let margin = match self.contains(x)? {
            Membership::Inside => self.interior_margin(x)?,
            _ => -self.residual(x),
        };
        if margin < required {
            return Err(ChordalError::PointNotInterior { margin, required });
        }
        Ok(())
    }

    /// The unique `t0 > 0` with `x + t0 * a` on the boundary.
    ///
    /// Requires `x` strictly interior with margin at least
    /// [`RAY_INTERIOR_MARGIN_REL`] times the diameter. Balls and ellipsoids
    /// use the positive quadratic root; polytopes the minimum facet crossing;
    /// star bodies bracket the exit and bisect membership down to
    /// [`BISECT_WIDTH_REL`] times the body scale.
    pub fn ray_exit(&self, x: &[f64], a: &UnitVector) -> Result<RayHit> {
        self.check_dim(x.len())?;
        self.check_dim(a.dim())?;
        self.require_ray_interior(x)?;
        let t0 = self.exit_t_unchecked(x, a.coords())?;
        Ok(RayHit {
            t0,
            boundary_point: vecops::add_scaled(x, t0, a.coords()),
        })
    }

    /// Exit parameter without the interiority recheck; callers must have
    /// verified the margin (field tabulation does it once per base point).
    pub(crate) fn exit_t_unchecked(&self, x: &[f64], a: &[f64]) -> Result<f64> {
        match &self.shape {
            Shape::Ball { center, radius } => {
                let u = vecops::sub(x, center);
                let ua = vecops::dot(&u, a);
                let c = vecops::dot(&u, &u) - radius * radius;
                let disc = (ua * ua - c).max(0.0);
                Ok(-ua + disc.sqrt())
            }
            Shape::Ellipsoid {
                center, semi_axes, ..
            } => {
                // Scale to the unit ball: y = W (p - c), W = diag(1/a_i).
                let mut uu = 0.0;
                let mut uv = 0.0;
                let mut vv = 0.0;
                for i in 0..x.len() {
                    let ui = (x[i] - center[i]) / semi_axes[i];
                    let vi = a[i] / semi_axes[i];
                    uu += ui * ui;
                    uv += ui * vi;
                    vv += vi * vi;
                }
                let disc = (uv * uv - vv * (uu - 1.0)).max(0.0);
                Ok((-uv + disc.sqrt()) / vv)
            }
            Shape::Polytope { halfspaces, .. } => {
                let mut t_min = f64::INFINITY;
                for h in halfspaces {
                    let na = vecops::dot(&h.normal, a);
                    if na > 0.0 {
                        let t = (h.offset - vecops::dot(&h.normal, x)) / na;
                        t_min = t_min.min(t);
                    }
                }
                if !t_min.is_finite() {
                    return Err(ChordalError::UnboundedRay(
                        "no half-space faces the ray direction".into(),
                    ));
                }
                Ok(t_min.max(0.0))
            }
            Shape::Star { base, r_max, .. } => {
                let hi = 2.0 * (vecops::dist(x, base) + r_max);
                let width = BISECT_WIDTH_REL * self.scale;
                Ok(optimize::bisect_to_width(
                    |t| self.residual(&vecops::add_scaled(x, t, a)) < 0.0,
                    0.0,
                    hi,
                    width,
                ))
            }
        }
    }

    /// Generic membership-bisection exit, usable on every variant. This is
    /// the oracle route the closed forms are checked against: bracket the
    /// boundary crossing, then bisect to [`BISECT_WIDTH_REL`] times the
    /// scale.
    pub fn ray_exit_bisection(&self, x: &[f64], a: &UnitVector) -> Result<RayHit> {
        self.check_dim(x.len())?;
        self.check_dim(a.dim())?;
        self.require_ray_interior(x)?;

        let inside = |t: f64| self.residual(&vecops::add_scaled(x, t, a.coords())) < 0.0;
        let mut hi = 1.05 * self.scale;
        let mut expansions = 0;
        while inside(hi) {
            hi *= 2.0;
            expansions += 1;
            if expansions > 64 {
                return Err(ChordalError::UnboundedRay(
                    "no boundary crossing found while expanding the bracket".into(),
                ));
            }
        }
        let width = BISECT_WIDTH_REL * self.scale;
        let t0 = optimize::bisect_to_width(inside, 0.0, hi, width);
        Ok(RayHit {
            t0,
            boundary_point: vecops::add_scaled(x, t0, a.coords()),
        })
    }

    /// Rejection-samples a point with `signed_margin >= margin` from the
    /// bounding box. Returns `None` after `max_attempts` rejections.
    pub fn sample_interior_point<R: rand::Rng>(
        &self,
        rng: &mut R,
        margin: f64,
        max_attempts: usize,
    ) -> Option<Vec<f64>> {
        for _ in 0..max_attempts {
            let p: Vec<f64> = self
                .bbox_lo
                .iter()
                .zip(&self.bbox_hi)
                .map(|(lo, hi)| lo + rng.random::<f64>() * (hi - lo))
                .collect();
            if -self.residual(&p) >= margin {
                return Some(p);
            }
        }
        None
    }
}

/// Convexity/validity check. Balls and ellipsoids are valid whenever their
/// radii are positive; polytopes must be bounded with nonempty interior;
/// radial star bodies must have a positive radial function satisfying the
/// polar curvature condition `r^2 + 2r'^2 - r r'' >= -1e-9` (checked on 4096
/// samples plus golden-section refinement at the minimum).
pub fn validate_convexity(spec: &BodySpec) -> ConvexityVerdict {
    match validate_convexity_inner(spec) {
        Ok(()) => ConvexityVerdict::Valid,
        Err((reason, witness_theta)) => ConvexityVerdict::Invalid {
            reason,
            witness_theta,
        },
    }
}

type Invalidity = (String, Option<f64>);

fn validate_convexity_inner(spec: &BodySpec) -> std::result::Result<(), Invalidity> {
    let all_finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
    match spec {
        BodySpec::Ball { center, radius } => {
            if center.len() < 2 {
                return Err(("ball center needs dimension >= 2".into(), None));
            }
            if !all_finite(center) || !radius.is_finite() {
                return Err(("ball has non-finite fields".into(), None));
            }
            if *radius <= 0.0 {
                return Err((format!("ball radius {radius} is not positive"), None));
            }
            Ok(())
        }
        BodySpec::Ellipsoid { center, semi_axes } => {
            if center.len() < 2 || semi_axes.len() != center.len() {
                return Err((
                    "ellipsoid center/semi_axes must share a dimension >= 2".into(),
                    None,
                ));
            }
            if !all_finite(center) || !all_finite(semi_axes) {
                return Err(("ellipsoid has non-finite fields".into(), None));
            }
            if semi_axes.iter().any(|a| *a <= 0.0) {
                return Err(("ellipsoid semi-axes must all be positive".into(), None));
            }
            Ok(())
        }
        BodySpec::Polytope { halfspaces } => validate_polytope(halfspaces).map(|_| ()),
        BodySpec::RadialStar2d {
            base_point,
            c0,
            cos_coeffs,
            sin_coeffs,
        } => {
            if base_point.len() != 2 {
                return Err(("radial_star_2d base_point must be 2-dimensional".into(), None));
            }
            if !all_finite(base_point)
                || !c0.is_finite()
                || !all_finite(cos_coeffs)
                || !all_finite(sin_coeffs)
            {
                return Err(("radial_star_2d has non-finite fields".into(), None));
            }
            let radial = TrigPoly::new(*c0, cos_coeffs.clone(), sin_coeffs.clone());
            let (theta_rmin, r_min) = refine_scan(
                |t| radial.eval(t),
                STAR_VALIDATION_SAMPLES,
                std::f64::consts::TAU,
            );
            if r_min <= 0.0 {
                return Err((
                    format!("radial function is not positive: r({theta_rmin:.6}) = {r_min:.6e}"),
                    Some(theta_rmin),
                ));
            }
            let (theta_min, h_min) = refine_scan(
                |t| radial.convexity_expr(t),
                STAR_VALIDATION_SAMPLES,
                std::f64::consts::TAU,
            );
            if h_min < CONVEXITY_TOL {
                return Err((
                    format!(
                        "polar convexity condition fails: r^2 + 2r'^2 - r r'' = {h_min:.6e} at theta = {theta_min:.6}"
                    ),
                    Some(theta_min),
                ));
            }
            Ok(())
        }
    }
}

/// Dense scan of a 2*pi-periodic function followed by golden-section
/// refinement around the best sample; returns `(argmin, min)`.
fn refine_scan<F: Fn(f64) -> f64>(f: F, samples: usize, period: f64) -> (f64, f64) {
    let h = period / samples as f64;
    let mut best_k = 0;
    let mut best = f64::INFINITY;
    for k in 0..samples {
        let v = f(k as f64 * h);
        if v < best {
            best = v;
            best_k = k;
        }
    }
    let center = best_k as f64 * h;
    let (theta, value) = optimize::golden_min(&f, center - h, center + h, 1e-13);
    if value < best {
        (theta, value)
    } else {
        (center, best)
    }
}

fn build_shape(spec: &BodySpec) -> Result<Shape> {
    Ok(match spec {
        BodySpec::Ball { center, radius } => Shape::Ball {
            center: center.clone(),
            radius: *radius,
        },
        BodySpec::Ellipsoid { center, semi_axes } => Shape::Ellipsoid {
            center: center.clone(),
            semi_axes: semi_axes.clone(),
            min_axis: semi_axes.iter().cloned().fold(f64::INFINITY, f64::min),
        },
        BodySpec::Polytope { halfspaces } => {
            let parsed = parse_halfspaces(halfspaces)?;
            let dim = parsed[0].normal.len();
            let vertices = if dim == 2 {
                polytope_vertices_2d(&parsed)
            } else {
                Vec::new()
            };
            Shape::Polytope {
                halfspaces: parsed,
                vertices,
            }
        }
        BodySpec::RadialStar2d {
            base_point,
            c0,
            cos_coeffs,
            sin_coeffs,
        } => {
            let radial = TrigPoly::new(*c0, cos_coeffs.clone(), sin_coeffs.clone());
            let (_, r_min) = refine_scan(
                |t| radial.eval(t),
                STAR_VALIDATION_SAMPLES,
                std::f64::consts::TAU,
            );
            let (_, neg_r_max) = refine_scan(
                |t| -radial.eval(t),
                STAR_VALIDATION_SAMPLES,
                std::f64::consts::TAU,
            );
            Shape::Star {
                base: base_point.clone(),
                radial,
                r_min,
                r_max: -neg_r_max,
            }
        }
    })
}

fn shape_dim(shape: &Shape) -> usize {
    match shape {
        Shape::Ball { center, .. } => center.len(),
        Shape::Ellipsoid { center, .. } => center.len(),
        Shape::Polytope { halfspaces, .. } => halfspaces[0].normal.len(),
        Shape::Star { .. } => 2,
    }
}

fn parse_halfspaces(rows: &[Vec<f64>]) -> Result<Vec<Halfspace>> {
    if rows.is_empty() {
        return Err(ChordalError::InvalidBody {
            reason: "polytope needs at least one half-space".into(),
        });
    }
    let width = rows[0].len();
    if width < 3 {
        return Err(ChordalError::InvalidBody {
            reason: "half-space rows must be [normal..., offset] with dimension >= 2".into(),
        });
    }
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != width {
            return Err(ChordalError::InvalidBody {
                reason: "half-space rows have inconsistent lengths".into(),
            });
        }
        if row.iter().any(|x| !x.is_finite()) {
            return Err(ChordalError::InvalidBody {
                reason: "half-space row has non-finite entries".into(),
            });
        }
        let (normal, offset) = row.split_at(width - 1);
        out.push(Halfspace::new(normal.to_vec(), offset[0])?);
    }
    Ok(out)
}

/// Validates boundedness and nonempty interior; returns a strictly feasible
/// max-margin point on success.
fn validate_polytope(rows: &[Vec<f64>]) -> std::result::Result<Vec<f64>, Invalidity> {
    let halfspaces = parse_halfspaces(rows).map_err(|e| (e.to_string(), None))?;
    let dim = halfspaces[0].normal.len();

    // Boundedness probe: a ray exits in direction d iff some normal has
    // positive inner product with d. Checked for the 2n axis directions.
    for j in 0..dim {
        for sign in [1.0, -1.0] {
            let faces = halfspaces.iter().any(|h| sign * h.normal[j] > 0.0);
            if !faces {
                return Err((
                    format!(
                        "polytope is unbounded along {}e_{j} (no facet faces that direction)",
                        if sign > 0.0 { "+" } else { "-" }
                    ),
                    None,
                ));
            }
        }
    }

    match polytope_max_margin_point(&halfspaces, dim) {
        Some((point, margin)) if margin > 0.0 => Ok(point),
        _ => Err((
            "polytope has empty interior (no strictly feasible point found)".into(),
            None,
        )),
    }
}

/// Maximizes the feasibility margin `min_i (b_i - <n_i, x>)/|n_i|` with
/// multi-restart Nelder–Mead. An LP would be exact, but for the low
/// dimensions handled here the concave piecewise-linear landscape is easy
/// prey for a restarted simplex.
fn polytope_max_margin_point(halfspaces: &[Halfspace], dim: usize) -> Option<(Vec<f64>, f64)> {
    let margin = |x: &[f64]| -> f64 {
        halfspaces
            .iter()
            .map(|h| -h.violation(x))
            .fold(f64::INFINITY, f64::min)
    };
    let scale_guess = halfspaces
        .iter()
        .map(|h| (h.offset / h.norm).abs())
        .fold(1.0f64, f64::max);

    let mut best_x = vec![0.0; dim];
    let mut best_m = margin(&best_x);
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut starts = vec![vec![0.0; dim]];
    for _ in 0..3 {
        starts.push(
            (0..dim)
                .map(|_| (rng.random::<f64>() * 2.0 - 1.0) * scale_guess)
                .collect(),
        );
    }
    for start in starts {
        let mut x = start;
        let mut step = 0.5 * scale_guess;
        for _ in 0..4 {
            let params = optimize::NelderMeadParams::standard(dim, 1e-11 * scale_guess.max(1.0));
            let res = optimize::nelder_mead(|p| -margin(p), &x, step, &params);
            x = res.x;
            step *= 0.1;
            if -res.value > 1e9 * scale_guess {
                break; // margin still growing without bound
            }
        }
        let m = margin(&x);
        if m > best_m {
            best_m = m;
            best_x = x;
        }
    }
    if best_m.is_finite() {
        Some((best_x, best_m))
    } else {
        None
    }
}

/// Vertices of a 2-D half-space polytope by pairwise facet intersection,
/// filtered by feasibility and deduplicated.
fn polytope_vertices_2d(halfspaces: &[Halfspace]) -> Vec<Vec<f64>> {
    let scale = halfspaces
        .iter()
        .map(|h| (h.offset / h.norm).abs())
        .fold(1.0f64, f64::max);
    let tol = 1e-9 * scale;
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    for i in 0..halfspaces.len() {
        for j in (i + 1)..halfspaces.len() {
            let (a, b) = (&halfspaces[i], &halfspaces[j]);
            let det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
            if det.abs() < 1e-14 * a.norm * b.norm {
                continue;
            }
            let x = (a.offset * b.normal[1] - b.offset * a.normal[1]) / det;
            let y = (a.normal[0] * b.offset - b.normal[0] * a.offset) / det;
            let p = vec![x, y];
            let feasible = halfspaces.iter().all(|h| h.violation(&p) <= tol);
            if feasible && !vertices.iter().any(|v| vecops::dist(v, &p) <= tol) {
                vertices.push(p);
            }
        }
    }
    vertices
}

fn compute_anchor(shape: &Shape) -> Result<Vec<f64>> {
    Ok(match shape {
        Shape::Ball { center, .. } => center.clone(),
        Shape::Ellipsoid { center, .. } => center.clone(),
        Shape::Star { base, .. } => base.clone(),
        Shape::Polytope { halfspaces, .. } => {
            let dim = halfspaces[0].normal.len();
            polytope_max_margin_point(halfspaces, dim)
                .filter(|(_, m)| *m > 0.0)
                .map(|(p, _)| p)
                .ok_or_else(|| ChordalError::InvalidBody {
                    reason: "polytope has empty interior".into(),
                })?
        }
    })
}

/// Boundary samples for dimension >= 3 polytopes: closed-form ray exits from
/// the anchor over an antipodal direction grid.
fn polytope_boundary_samples(
    halfspaces: &[Halfspace],
    anchor: &[f64],
    dim: usize,
) -> Vec<Vec<f64>> {
    let grid = crate::sphere::make_antipodal_grid(dim, POLYTOPE_BOUNDARY_SAMPLES)
        .expect("internal grid parameters are valid");
    let mut samples = Vec::with_capacity(grid.len());
    for u in grid.points() {
        let a = u.coords();
        let mut t_min = f64::INFINITY;
        for h in halfspaces {
            let na = vecops::dot(&h.normal, a);
            if na > 0.0 {
                t_min = t_min.min((h.offset - vecops::dot(&h.normal, anchor)) / na);
            }
        }
        if t_min.is_finite() {
            samples.push(vecops::add_scaled(anchor, t_min.max(0.0), a));
        }
    }
    samples
}

fn compute_diameter(shape: &Shape, anchor: &[f64]) -> (f64, bool) {
    match shape {
        Shape::Ball { radius, .. } => (2.0 * radius, false),
        Shape::Ellipsoid { semi_axes, .. } => (
            2.0 * semi_axes.iter().cloned().fold(0.0, f64::max),
            false,
        ),
        Shape::Polytope {
            halfspaces,
            vertices,
        } => {
            if !vertices.is_empty() {
                let mut d = 0.0f64;
                for i in 0..vertices.len() {
                    for j in (i + 1)..vertices.len() {
                        d = d.max(vecops::dist(&vertices[i], &vertices[j]));
                    }
                }
                (d, false)
            } else {
                let dim = halfspaces[0].normal.len();
                let samples = polytope_boundary_samples(halfspaces, anchor, dim);
                let mut d = 0.0f64;
                for i in 0..samples.len() {
                    for j in (i + 1)..samples.len() {
                        d = d.max(vecops::dist(&samples[i], &samples[j]));
                    }
                }
                (d, true)
            }
        }
        Shape::Star { base, radial, .. } => (star_diameter(base, radial), false),
    }
}

/// Max pairwise distance between boundary points of a star body: coarse scan
/// over angle pairs, then zoomed grid refinement around the best pair.
fn star_diameter(base: &[f64], radial: &TrigPoly) -> f64 {
    let point = |theta: f64| -> [f64; 2] {
        let r = radial.eval(theta);
        [base[0] + r * theta.cos(), base[1] + r * theta.sin()]
    };
    let dist2 = |t1: f64, t2: f64| -> f64 {
        let p = point(t1);
        let q = point(t2);
        let dx = p[0] - q[0];
        let dy = p[1] - q[1];
        dx * dx + dy * dy
    };

    let m = STAR_DIAMETER_SAMPLES;
    let h = std::f64::consts::TAU / m as f64;
    let pts: Vec<[f64; 2]> = (0..m).map(|k| point(k as f64 * h)).collect();
    let mut best = (0usize, 0usize, 0.0f64);
    for i in 0..m {
        for j in (i + 1)..m {
            let dx = pts[i][0] - pts[j][0];
            let dy = pts[i][1] - pts[j][1];
            let d2 = dx * dx + dy * dy;
            if d2 > best.2 {
                best = (i, j, d2);
            }
        }
    }

    let (mut t1, mut t2) = (best.0 as f64 * h, best.1 as f64 * h);
    let mut d2_best = best.2;
    let mut delta = h;
    for _ in 0..5 {
        let step = delta / 8.0;
        let (mut bt1, mut bt2, mut bd2) = (t1, t2, d2_best);
        for i in -8..=8i32 {
            for j in -8..=8i32 {
                let u1 = t1 + i as f64 * step;
                let u2 = t2 + j as f64 * step;
                let d2 = dist2(u1, u2);
                if d2 > bd2 {
                    bd2 = d2;
                    bt1 = u1;
                    bt2 = u2;
                }
            }
        }
        t1 = bt1;
        t2 = bt2;
        d2_best = bd2;
        delta = step;
    }
    d2_best.sqrt()
}

/// Min or max distance from `x` to the boundary curve of a star body,
/// by dense scan plus golden-section refinement.
fn star_boundary_distance(
    base: &[f64],
    radial: &TrigPoly,
    x: &[f64],
    samples: usize,
    maximize: bool,
) -> f64 {
    let dist = |theta: f64| -> f64 {
        let r = radial.eval(theta);
        let px = base[0] + r * theta.cos() - x[0];
        let py = base[1] + r * theta.sin() - x[1];
        (px * px + py * py).sqrt()
    };
    let objective = |theta: f64| if maximize { -dist(theta) } else { dist(theta) };
    let (_, v) = refine_scan(objective, samples, std::f64::consts::TAU);
    if maximize {
        -v
    } else {
        v
    }
}

/// Largest distance from `x` to an axis-aligned ellipsoid, by boundary scan
/// (2-D: golden-refined; higher dimensions: grid maximum).
fn ellipsoid_max_distance(center: &[f64], semi_axes: &[f64], x: &[f64]) -> f64 {
    let dim = center.len();
    if dim == 2 {
        let dist = |t: f64| -> f64 {
            let px = center[0] + semi_axes[0] * t.cos() - x[0];
            let py = center[1] + semi_axes[1] * t.sin() - x[1];
            (px * px + py * py).sqrt()
        };
        let (_, v) = refine_scan(|t| -dist(t), 1024, std::f64::consts::TAU);
        -v
    } else {
        let grid = crate::sphere::make_antipodal_grid(dim, POLYTOPE_BOUNDARY_SAMPLES)
            .expect("internal grid parameters are valid");
        grid.points()
            .iter()
            .map(|u| {
                let p: Vec<f64> = center
                    .iter()
                    .zip(semi_axes)
                    .zip(u.coords())
                    .map(|((c, a), ui)| c + a * ui)
                    .collect();
                vecops::dist(&p, x)
            })
            .fold(0.0, f64::max)
    }
}

fn compute_bbox(shape: &Shape, anchor: &[f64]) -> (Vec<f64>, Vec<f64>) {
    match shape {
        Shape::Ball { center, radius } => (
            center.iter().map(|c| c - radius).collect(),
            center.iter().map(|c| c + radius).collect(),
        ),
        Shape::Ellipsoid {
            center, semi_axes, ..
        } => (
            center.iter().zip(semi_axes).map(|(c, a)| c - a).collect(),
            center.iter().zip(semi_axes).map(|(c, a)| c + a).collect(),
        ),
        Shape::Polytope {
            halfspaces,
            vertices,
        } => {
            let pts = if !vertices.is_empty() {
                vertices.clone()
            } else {
                let dim = halfspaces[0].normal.len();
                polytope_boundary_samples(halfspaces, anchor, dim)
            };
            let dim = anchor.len();
            let mut lo = vec![f64::INFINITY; dim];
            let mut hi = vec![f64::NEG_INFINITY; dim];
            for p in &pts {
                for k in 0..dim {
                    lo[k] = lo[k].min(p[k]);
                    hi[k] = hi[k].max(p[k]);
                }
            }
            (lo, hi)
        }
        Shape::Star { base, r_max, .. } => (
            base.iter().map(|c| c - r_max).collect(),
            base.iter().map(|c| c + r_max).collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::UnitVector;

    pub(crate) fn unit_ball(dim: usize) -> Body {
        Body::new(BodySpec::Ball {
            center: vec![0.0; dim],
            radius: 1.0,
        })
        .unwrap()
    }

    pub(crate) fn unit_square() -> Body {
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

    pub(crate) fn limacon(eps: f64) -> Body {
        Body::new(BodySpec::RadialStar2d {
            base_point: vec![0.0, 0.0],
            c0: 1.0,
            cos_coeffs: vec![eps],
            sin_coeffs: vec![],
        })
        .unwrap()
    }

    #[test]
    fn membership_examples() {
        let ball = unit_ball(2);
        assert_eq!(ball.contains(&[0.0, 0.0]).unwrap(), Membership::Inside);
        assert_eq!(ball.contains(&[1.0, 0.0]).unwrap(), Membership::Boundary);
        let square = unit_square();
        assert_eq!(square.contains(&[2.0, 2.0]).unwrap(), Membership::Outside);
    }

    #[test]
    fn ray_exit_examples() {
        let ball = unit_ball(2);
        let up = UnitVector::new(vec![0.0, 1.0]).unwrap();
        let hit = ball.ray_exit(&[0.0, 0.0], &up).unwrap();
        assert!((hit.t0 - 1.0).abs() < 1e-15);

        // Positive root of t^2 + 2 t <x,a> + |x|^2 - 1 = 0 at x = (0.5, 0),
        // a = (0, 1): sqrt(0.75).
        let hit = ball.ray_exit(&[0.5, 0.0], &up).unwrap();
        assert!((hit.t0 - 0.75f64.sqrt()).abs() < 1e-12, "t0 = {}", hit.t0);

        let square = unit_square();
        let right = UnitVector::new(vec![1.0, 0.0]).unwrap();
        let hit = square.ray_exit(&[0.5, 0.5], &right).unwrap();
        assert!((hit.t0 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ray_exit_rejects_near_boundary_points() {
        let ball = unit_ball(2);
        let a = UnitVector::new(vec![1.0, 0.0]).unwrap();
        let err = ball.ray_exit(&[1.0 - 1e-9, 0.0], &a).unwrap_err();
        assert!(matches!(err, ChordalError::PointNotInterior { .. }));
        let err = ball.ray_exit(&[2.0, 0.0], &a).unwrap_err();
        assert!(matches!(err, ChordalError::PointNotInterior { .. }));
    }

    #[test]
    fn diameter_examples() {
        assert!((unit_ball(2).diameter() - 2.0).abs() < 1e-15);
        assert!((unit_square().diameter() - 2.0f64.sqrt()).abs() < 1e-12);
        let ell = Body::new(BodySpec::Ellipsoid {
            center: vec![0.0, 0.0],
            semi_axes: vec![2.0, 1.0],
        })
        .unwrap();
        assert!((ell.diameter() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn limacon_diameter_exceeds_base_chord() {
        // The longest chord of the limacon does not pass through the base
        // point: chords through the base all have length 2, while the pair
        // p(theta), p(-theta) at cos(theta) = (sqrt(1.5) - 1) / 0.5 is
        // farther apart.
        let body = limacon(0.25);
        let d = body.diameter();
        assert!(d > 2.05 && d < 2.07, "diameter = {d}");
    }

    #[test]
    fn interior_margin_examples() {
        let ball = unit_ball(2);
        assert!((ball.interior_margin(&[0.5, 0.0]).unwrap() - 0.5).abs() < 1e-12);
        assert!((ball.interior_margin(&[0.0, 0.0]).unwrap() - 1.0).abs() < 1e-12);
        let square = unit_square();
        assert!((square.interior_margin(&[0.5, 0.5]).unwrap() - 0.5).abs() < 1e-12);
        assert!(square.interior_margin(&[2.0, 2.0]).is_err());
    }

    #[test]
    fn star_margin_matches_geometry() {
        // Circle of radius 1 about the origin expressed as a star body; the
        // margin of any interior point is 1 - |x|.
        let circle = Body::new(BodySpec::RadialStar2d {
            base_point: vec![0.0, 0.0],
            c0: 1.0,
            cos_coeffs: vec![],
            sin_coeffs: vec![],
        })
        .unwrap();
        let m = circle.interior_margin(&[0.3, 0.2]).unwrap();
        let expected = 1.0 - (0.3f64 * 0.3 + 0.2 * 0.2).sqrt();
        assert!((m - expected).abs() < 1e-10, "margin {m} vs {expected}");
    }

    #[test]
    fn convexity_verdicts() {
        assert!(validate_convexity(&BodySpec::Ball {
            center: vec![0.0, 0.0],
            radius: 1.0
        })
        .is_valid());

        // (1 - eps)(1 - 2 eps) >= 0 for eps <= 0.5, so 0.25 passes ...
        assert!(validate_convexity(&BodySpec::RadialStar2d {
            base_point: vec![0.0, 0.0],
            c0: 1.0,
            cos_coeffs: vec![0.25],
            sin_coeffs: vec![],
        })
        .is_valid());
        // ... 0.5 is exactly critical and must stay valid ...
        assert!(validate_convexity(&BodySpec::RadialStar2d {
            base_point: vec![0.0, 0.0],
            c0: 1.0,
            cos_coeffs: vec![0.5],
            sin_coeffs: vec![],
        })
        .is_valid());
        // ... and 0.6 fails with the witness near theta = pi.
        match validate_convexity(&BodySpec::RadialStar2d {
            base_point: vec![0.0, 0.0],
            c0: 1.0,
            cos_coeffs: vec![0.6],
            sin_coeffs: vec![],
        }) {
            ConvexityVerdict::Invalid { witness_theta, .. } => {
                let theta = witness_theta.expect("witness recorded");
                assert!(
                    (theta - std::f64::consts::PI).abs() < 0.05,
                    "witness at {theta}"
                );
            }
            ConvexityVerdict::Valid => panic!("limacon eps=0.6 accepted"),
        }
    }

    #[test]
    fn polytope_validation_rejects_unbounded_and_empty() {
        let err = Body::new(BodySpec::Polytope {
            halfspaces: vec![vec![1.0, 0.0, 1.0]],
        })
        .unwrap_err();
        assert!(matches!(err, ChordalError::InvalidBody { .. }), "{err}");

        let err = Body::new(BodySpec::Polytope {
            halfspaces: vec![
                vec![1.0, 0.0, 0.0],
                vec![-1.0, 0.0, -1.0],
                vec![0.0, 1.0, 1.0],
                vec![0.0, -1.0, 1.0],
            ],
        })
        .unwrap_err();
        assert!(matches!(err, ChordalError::InvalidBody { .. }), "{err}");
    }

    #[test]
    fn bisection_matches_closed_form_spot_check() {
        let ball = unit_ball(2);
        let a = UnitVector::from_angle(0.7);
        let x = [0.3, -0.2];
        let t_cf = ball.ray_exit(&x, &a).unwrap().t0;
        let t_bi = ball.ray_exit_bisection(&x, &a).unwrap().t0;
        assert!((t_cf - t_bi).abs() < 1e-10, "{t_cf} vs {t_bi}");
    }

    #[test]
    fn monotone_membership_along_ray() {
        let body = limacon(0.25);
        let a = UnitVector::from_angle(1.1);
        let x = [0.1, -0.2];
        let t0 = body.ray_exit(&x, &a).unwrap().t0;
        for k in 1..=8 {
            let t = t0 * k as f64 / 9.0;
            let p = vecops::add_scaled(&x, t, a.coords());
            assert_eq!(body.contains(&p).unwrap(), Membership::Inside, "t = {t}");
        }
        for k in 1..=8 {
            let t = t0 * (1.0 + 1e-6 + 0.1 * k as f64);
            let p = vecops::add_scaled(&x, t, a.coords());
            assert_eq!(body.contains(&p).unwrap(), Membership::Outside, "t = {t}");
        }
    }

    #[test]
    fn scaling_equivariance_spot_check() {
        let lam = 3.7;
        let small = Body::new(BodySpec::Ellipsoid {
            center: vec![0.2, -0.1],
            semi_axes: vec![1.0, 0.5],
        })
        .unwrap();
        let big = Body::new(BodySpec::Ellipsoid {
            center: vec![0.2 * lam, -0.1 * lam],
            semi_axes: vec![lam, 0.5 * lam],
        })
        .unwrap();
        assert!((big.diameter() - lam * small.diameter()).abs() < 1e-9 * big.diameter());
        let a = UnitVector::from_angle(0.4);
        let x = [0.3, 0.05];
        let xs: Vec<f64> = x.iter().map(|v| v * lam).collect();
        let t1 = small.ray_exit(&x, &a).unwrap().t0;
        let t2 = big.ray_exit(&xs, &a).unwrap().t0;
        assert!((t2 - lam * t1).abs() < 1e-9 * t2.abs().max(1.0));
    }

    #[test]
    fn body_json_round_trip() {
        let docs = [
            r#"{"type":"ball","center":[0.0,0.0],"radius":1.0}"#,
            r#"{"type":"ellipsoid","center":[0.0,0.0],"semi_axes":[1.0,0.5]}"#,
            r#"{"type":"polytope","halfspaces":[[1.0,0.0,1.0],[-1.0,0.0,0.0],[0.0,1.0,1.0],[0.0,-1.0,0.0]]}"#,
            r#"{"type":"radial_star_2d","base_point":[0.0,0.0],"c0":1.0,"cos_coeffs":[0.25],"sin_coeffs":[]}"#,
        ];
        for doc in docs {
            let body = Body::from_json(doc).unwrap();
            let round = Body::from_json(&body.to_json()).unwrap();
            assert_eq!(body.dim(), round.dim());
            assert!((body.diameter() - round.diameter()).abs() < 1e-12);
        }
    }

    #[test]
    fn anchor_is_strictly_interior() {
        for body in [
            unit_ball(3),
            unit_square(),
            limacon(0.4),
            Body::new(BodySpec::Polytope {
                halfspaces: vec![
                    vec![-0.05, 1.0, 0.0],
                    vec![-0.05, -1.0, 0.0],
                    vec![1.0, 0.0, 1.0],
                ],
            })
            .unwrap(),
        ] {
            let anchor = body.anchor().to_vec();
            assert_eq!(body.contains(&anchor).unwrap(), Membership::Inside);
            assert!(body.interior_margin(&anchor).unwrap() > 0.0);
        }
    }

    #[test]
    fn circumradius_ordering_invariant() {
        for body in [unit_ball(2), unit_square(), limacon(0.25)] {
            let x = body.anchor().to_vec();
            let inr = body.interior_margin(&x).unwrap();
            let circ = body.circumradius_about(&x).unwrap();
            assert!(0.0 < inr && inr <= circ + 1e-12);
            assert!(circ <= body.diameter() + 1e-9);
        }
    }

    #[test]
    fn eval_dir_matches_eval() {
        let poly = TrigPoly::new(1.0, vec![0.2, -0.1, 0.05], vec![0.1, 0.0, -0.3]);
        for k in 0..64 {
            let theta = k as f64 * std::f64::consts::TAU / 64.0;
            let direct = poly.eval(theta);
            let via_dir = poly.eval_dir(theta.cos(), theta.sin());
            assert!((direct - via_dir).abs() < 1e-12, "theta = {theta}");
        }
    }
}
