//! The half-chord field of a convex body and the sampled function space it
//! lives in.
//!
//! A [`SampledSphereFunction`] tabulates a map S^{n-1} -> R on an antipodally
//! closed grid. Because antipodes are stored by exact negation, `f(-s)` is a
//! table lookup, which keeps chord sums, evenness and oddness checks exact at
//! the grid level. The sup metric and its bounded companion turn into finite
//! max-reductions over the samples; they under-approximate the true suprema,
//! so every report records the grid resolution used.

use std::io::{BufRead, Write};
use std::sync::Arc;

use crate::bodies::{Body, RAY_INTERIOR_MARGIN_REL};
use crate::error::{ChordalError, Result};
use crate::sphere::{geodesic_distance, SphereGrid, UnitVector};
use crate::vecops;

/// Where a sampled function came from: tabulated from a body around a base
/// point, or synthesized directly from values.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Body { body: String, base_point: Vec<f64> },
    Synthetic,
}

/// A function S^{n-1} -> R tabulated on an antipodally closed grid.
#[derive(Debug, Clone)]
pub struct SampledSphereFunction {
    grid: Arc<SphereGrid>,
    values: Vec<f64>,
    provenance: Provenance,
}

impl SampledSphereFunction {
    /// Wraps raw values as a synthetic function; values must be finite and
    /// match the grid size.
    pub fn synthetic(grid: Arc<SphereGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(ChordalError::InvalidArgument(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(ChordalError::InvalidArgument(
                "sampled values must be finite".into(),
            ));
        }
        Ok(SampledSphereFunction {
            grid,
            values,
            provenance: Provenance::Synthetic,
        })
    }

    pub fn grid(&self) -> &Arc<SphereGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Value at the exact antipode of grid index `i` (table lookup).
    pub fn value_at_antipode(&self, i: usize) -> f64 {
        self.values[self.grid.antipode_of(i)]
    }

    /// Length of the full chord through the base point in the direction of
    /// grid index `i`: `f(s_i) + f(-s_i)`.
    ///
    /// Meaningful as a chord length only for body-provenance fields; for
    /// synthetic functions it is just the antipodal sum.
    pub fn chord_length(&self, i: usize) -> f64 {
        self.values[i] + self.values[self.grid.antipode_of(i)]
    }

    /// Writes the `index,theta_or_coords,value,antipode_index` CSV. Values
    /// are printed with 17 significant digits so re-reading reproduces them
    /// bit-exactly; on 2-D grids the second column is the canonical angle in
    /// radians, otherwise the `;`-joined coordinates.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "index,theta_or_coords,value,antipode_index")?;
        for i in 0..self.values.len() {
            let loc = if self.grid.dim() == 2 {
                format!("{:.16e}", self.grid.angle(i))
            } else {
                self.grid
                    .point(i)
                    .coords()
                    .iter()
                    .map(|c| format!("{c:.16e}"))
                    .collect::<Vec<_>>()
                    .join(";")
            };
            writeln!(
                w,
                "{i},{loc},{:.16e},{}",
                self.values[i],
                self.grid.antipode_of(i)
            )?;
        }
        Ok(())
    }

    /// Reads a CSV produced by [`write_csv`](Self::write_csv) back onto the
    /// given grid. Values round-trip bit-exactly; indices and antipode
    /// structure are validated against the grid.
    pub fn read_csv<R: BufRead>(grid: Arc<SphereGrid>, reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| ChordalError::MalformedCsv("empty file".into()))?
            .map_err(ChordalError::Io)?;
        if header.trim() != "index,theta_or_coords,value,antipode_index" {
            return Err(ChordalError::MalformedCsv(format!(
                "unexpected header: {header}"
            )));
        }
        let mut values = vec![f64::NAN; grid.len()];
        let mut seen = vec![false; grid.len()];
        for (lineno, line) in lines.enumerate() {
            let line = line.map_err(ChordalError::Io)?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(ChordalError::MalformedCsv(format!(
                    "line {}: expected 4 fields, got {}",
                    lineno + 2,
                    fields.len()
                )));
            }
            let idx: usize = fields[0].parse().map_err(|_| {
                ChordalError::MalformedCsv(format!("line {}: bad index", lineno + 2))
            })?;
            let value: f64 = fields[2].parse().map_err(|_| {
                ChordalError::MalformedCsv(format!("line {}: bad value", lineno + 2))
            })?;
            let anti: usize = fields[3].parse().map_err(|_| {
                ChordalError::MalformedCsv(format!("line {}: bad antipode index", lineno + 2))
            })?;
            if idx >= grid.len() || anti != grid.antipode_of(idx) {
                return Err(ChordalError::MalformedCsv(format!(
                    "line {}: indices do not match the grid",
                    lineno + 2
                )));
            }
            values[idx] = value;
            seen[idx] = true;
        }
        if !seen.iter().all(|&s| s) {
            return Err(ChordalError::MalformedCsv(
                "missing rows for some grid indices".into(),
            ));
        }
        SampledSphereFunction::synthetic(grid, values)
    }
}

fn same_grid(f: &SampledSphereFunction, g: &SampledSphereFunction) -> Result<()> {
    if Arc::ptr_eq(&f.grid, &g.grid) || f.grid == g.grid {
        Ok(())
    } else {
        Err(ChordalError::GridMismatch)
    }
}

/// Distance from `x` to the boundary along direction `a` — the paper-level
/// half-chord. Equals `ray_exit(body, x, a).t0`.
pub fn half_chord(body: &Body, x: &[f64], a: &UnitVector) -> Result<f64> {
    Ok(body.ray_exit(x, a)?.t0)
}

/// Tabulates the half-chord function of `body` about `x` on `grid`.
///
/// The interiority precondition is checked once for `x`; each grid direction
/// then reuses the validated query.
pub fn half_chord_field(
    body: &Body,
    x: &[f64],
    grid: &Arc<SphereGrid>,
) -> Result<SampledSphereFunction> {
    if grid.dim() != body.dim() {
        return Err(ChordalError::DimensionMismatch {
            expected: body.dim(),
            got: grid.dim(),
        });
    }
    let margin = body.interior_margin(x)?;
    let required = RAY_INTERIOR_MARGIN_REL * body.diameter();
    if margin < required {
        return Err(ChordalError::PointNotInterior { margin, required });
    }
    let mut values = Vec::with_capacity(grid.len());
    for u in grid.points() {
        values.push(body.exit_t_unchecked(x, u.coords())?);
    }
    Ok(SampledSphereFunction {
        grid: Arc::clone(grid),
        values,
        provenance: Provenance::Body {
            body: body.descriptor(),
            base_point: x.to_vec(),
        },
    })
}

/// Sup metric: max over grid indices of `|f_i - g_i|`. Functions must share
/// a grid.
pub fn sup_metric(f: &SampledSphereFunction, g: &SampledSphereFunction) -> Result<f64> {
    same_grid(f, g)?;
    Ok(f.values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Bounded (uniform) metric: `min(sup_metric, 1)`, exactly.
pub fn bounded_sup_metric(f: &SampledSphereFunction, g: &SampledSphereFunction) -> Result<f64> {
    Ok(sup_metric(f, g)?.min(1.0))
}

/// Measured direction-regularity of a half-chord field, reported next to the
/// two available a-priori bounds.
#[derive(Debug, Clone)]
pub struct DirectionLipschitz {
    /// Max over adjacent grid pairs of |Δf| / geodesic distance.
    pub measured: f64,
    /// diam(X) — the constant claimed for `|f(a) - f(b)| <= diam(X) d(a,b)`.
    /// A measurement companion, not an asserted invariant: slender bodies
    /// with near-boundary base points exceed it.
    pub diameter_bound: f64,
    /// D^2 / eps with D the circumradius about x and eps the interior
    /// margin — an independent geometric bound for comparison.
    pub margin_bound: f64,
}

/// Measures the largest adjacent-sample difference quotient of a half-chord
/// field. Requires body provenance (the bounds need the body and the base
/// point) and at least 64 grid points.
pub fn empirical_direction_lipschitz(
    body: &Body,
    x: &[f64],
    field: &SampledSphereFunction,
) -> Result<DirectionLipschitz> {
    match field.provenance() {
        Provenance::Body { .. } => {}
        Provenance::Synthetic => {
            return Err(ChordalError::InvalidArgument(
                "direction-regularity measurement needs a body-provenance field".into(),
            ))
        }
    }
    if field.grid.len() < 64 {
        return Err(ChordalError::InvalidArgument(format!(
            "need at least 64 grid points, got {}",
            field.grid.len()
        )));
    }
    let mut measured = 0.0f64;
    for &(i, j) in field.grid.adjacent_pairs() {
        let d = geodesic_distance(field.grid.point(i), field.grid.point(j))?;
        if d > 0.0 {
            measured = measured.max((field.values[i] - field.values[j]).abs() / d);
        }
    }
    let circ = body.circumradius_about(x)?;
    let margin = body.interior_margin(x)?;
    Ok(DirectionLipschitz {
        measured,
        diameter_bound: body.diameter(),
        margin_bound: circ * circ / margin,
    })
}

/// Measured ratio `sup_metric(phi(x), phi(y)) / d(x, y)` for two interior
/// points. The value 1 is the claimed constant; slender bodies exceed it, so
/// this is a measurement, never an assertion.
pub fn empirical_point_lipschitz(
    body: &Body,
    x: &[f64],
    y: &[f64],
    grid: &Arc<SphereGrid>,
) -> Result<f64> {
    let d = vecops::dist(x, y);
    if d == 0.0 {
        return Err(ChordalError::InvalidArgument(
            "point-regularity measurement needs two distinct points".into(),
        ));
    }
    let fx = half_chord_field(body, x, grid)?;
    let fy = half_chord_field(body, y, grid)?;
    Ok(sup_metric(&fx, &fy)? / d)
}
