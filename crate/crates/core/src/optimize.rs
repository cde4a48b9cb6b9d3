//! Derivative-free search kernels: Nelder–Mead simplex descent, membership
//! bisection, and golden-section line search. All routines are deterministic
//! for fixed inputs.

use crate::vecops;

pub(crate) struct NelderMeadParams {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    pub max_iters: usize,
    /// Stop once the simplex diameter (max pairwise vertex distance) drops
    /// below this.
    pub size_tol: f64,
}

impl NelderMeadParams {
    pub fn standard(dim: usize, size_tol: f64) -> Self {
        NelderMeadParams {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            max_iters: 500 * dim,
            size_tol,
        }
    }
}

pub(crate) struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
}

fn simplex_diameter(vertices: &[Vec<f64>]) -> f64 {
    let mut d = 0.0f64;
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            d = d.max(vecops::dist(&vertices[i], &vertices[j]));
        }
    }
    d
}

/// Minimize `f` starting from `x0` with an axis-aligned initial simplex of
/// edge `step`.
pub(crate) fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    params: &NelderMeadParams,
) -> NelderMeadResult {
    let n = x0.len();
    let mut vertices: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    vertices.push(x0.to_vec());
    for j in 0..n {
        let mut v = x0.to_vec();
        v[j] += step;
        vertices.push(v);
    }
    let mut values: Vec<f64> = vertices.iter().map(|v| f(v)).collect();

    let mut iterations = 0;
    while iterations < params.max_iters {
        // Order vertices by value; ties broken by index for determinism.
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap().then(a.cmp(&b)));
        let vertices_sorted: Vec<Vec<f64>> = order.iter().map(|&i| vertices[i].clone()).collect();
        let values_sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        vertices = vertices_sorted;
        values = values_sorted;

        if simplex_diameter(&vertices) <= params.size_tol {
            break;
        }
        iterations += 1;

        // Centroid of all vertices except the worst.
        let mut centroid = vec![0.0; n];
        for v in &vertices[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x;
            }
        }
        for c in centroid.iter_mut() {
            *c /= n as f64;
        }

        let worst = vertices[n].clone();
        let reflect = |alpha: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + alpha * (c - w))
                .collect()
        };

        let xr = reflect(params.reflection);
        let fr = f(&xr);

        if fr < values[0] {
            let xe = reflect(params.reflection * params.expansion);
            let fe = f(&xe);
            if fe < fr {
                vertices[n] = xe;
                values[n] = fe;
            } else {
                vertices[n] = xr;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            vertices[n] = xr;
            values[n] = fr;
        } else {
            // Contract, inside or outside of the reflection point.
            let (xc, fc) = if fr < values[n] {
                let xc = reflect(params.reflection * params.contraction);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = reflect(-params.contraction);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < values[n].min(fr) {
                vertices[n] = xc;
                values[n] = fc;
            } else {
                // Shrink everything toward the best vertex.
                let best = vertices[0].clone();
                for k in 1..=n {
                    let v: Vec<f64> = best
                        .iter()
                        .zip(&vertices[k])
                        .map(|(b, x)| b + params.shrink * (x - b))
                        .collect();
                    values[k] = f(&v);
                    vertices[k] = v;
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..values.len() {
        if values[i] < values[best] {
            best = i;
        }
    }
    NelderMeadResult {
        x: vertices[best].clone(),
        value: values[best],
    }
}

/// Shrink the bracket `[lo, hi]` with `inside(lo) = true`, `inside(hi) =
/// false` down to the given width; returns the midpoint of the final bracket.
pub(crate) fn bisect_to_width<F: Fn(f64) -> bool>(inside: F, lo: f64, hi: f64, width: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket at floating-point resolution
        }
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
pub(crate) fn golden_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (a + b);
    (xm, f(xm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nelder_mead_quadratic_bowl() {
        let params = NelderMeadParams::standard(2, 1e-10);
        let res = nelder_mead(
            |x| (x[0] - 1.5) * (x[0] - 1.5) + 3.0 * (x[1] + 0.5) * (x[1] + 0.5),
            &[0.0, 0.0],
            0.5,
            &params,
        );
        assert!((res.x[0] - 1.5).abs() < 1e-8, "x0 = {}", res.x[0]);
        assert!((res.x[1] + 0.5).abs() < 1e-8, "x1 = {}", res.x[1]);
    }

    #[test]
    fn nelder_mead_conic_minimum() {
        // |x| is nonsmooth at the optimum; the simplex must still collapse.
        let params = NelderMeadParams::standard(2, 1e-9);
        let res = nelder_mead(
            |x| (x[0] * x[0] + x[1] * x[1]).sqrt(),
            &[0.7, -0.3],
            0.2,
            &params,
        );
        assert!(res.value < 1e-7, "value = {}", res.value);
    }

    #[test]
    fn bisect_hits_target() {
        let t = bisect_to_width(|x| x < std::f64::consts::SQRT_2, 0.0, 2.0, 1e-13);
        assert!((t - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn golden_finds_parabola_min() {
        let (x, _) = golden_min(|t| (t - 0.3) * (t - 0.3), -1.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-9);
    }
}
