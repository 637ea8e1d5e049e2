//! Floating-point integration of the geodesic equation `x' = -∇_x x` of a
//! left-invariant connection, and a quadratic-fit test on the solutions.
//!
//! Used only to certify completeness of non-flat connections, whose
//! geodesics are expected to be polynomials of degree at most 2.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{self, QVector};

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicParams {
    pub step: f64,
    pub t_max: f64,
    /// Integration steps between recorded samples.
    pub sample_every: usize,
    pub tolerance: f64,
    pub random_points: usize,
    pub seed: u64,
}

impl Default for GeodesicParams {
    fn default() -> Self {
        Self {
            step: 1e-3,
            t_max: 10.0,
            sample_every: 100,
            tolerance: 1e-6,
            random_points: 10,
            seed: 0,
        }
    }
}

/// Nonzero Christoffel symbols `(i, j, k, Γ)` with `∇_{e_i} e_j = Σ Γ e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseGamma {
    pub dim: usize,
    pub terms: Vec<(usize, usize, usize, f64)>,
}

impl SparseGamma {
    /// `-∇_x x`
    fn field(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for &(i, j, k, g) in &self.terms {
            out[k] -= g * x[i] * x[j];
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<Vec<f64>>,
}

/// Classic fourth-order Runge-Kutta with a fixed step.
pub fn integrate(gamma: &SparseGamma, x0: &[f64], params: &GeodesicParams) -> Trajectory {
    let n = gamma.dim;
    assert_eq!(x0.len(), n);
    let steps = (params.t_max / params.step + 0.5) as usize;
    let h = params.step;
    let mut x = x0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (
        alloc::vec![0.0; n],
        alloc::vec![0.0; n],
        alloc::vec![0.0; n],
        alloc::vec![0.0; n],
        alloc::vec![0.0; n],
    );
    let mut times = alloc::vec![0.0];
    let mut points = alloc::vec![x.clone()];
    for s in 1..=steps {
        gamma.field(&x, &mut k1);
        for a in 0..n {
            tmp[a] = x[a] + 0.5 * h * k1[a];
        }
        gamma.field(&tmp, &mut k2);
        for a in 0..n {
            tmp[a] = x[a] + 0.5 * h * k2[a];
        }
        gamma.field(&tmp, &mut k3);
        for a in 0..n {
            tmp[a] = x[a] + h * k3[a];
        }
        gamma.field(&tmp, &mut k4);
        for a in 0..n {
            x[a] += h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
        }
        if s % params.sample_every == 0 || s == steps {
            times.push(s as f64 * h);
            points.push(x.clone());
        }
    }
    Trajectory { times, points }
}

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

/// Least-squares `a + b t + c t^2` through `(t, y)`.
pub fn fit_quadratic(ts: &[f64], ys: &[f64]) -> [f64; 3] {
    // rescale t to [0, 1] for conditioning
    let scale = ts.iter().fold(0.0f64, |m, &t| if fabs(t) > m { fabs(t) } else { m });
    let scale = if scale == 0.0 { 1.0 } else { scale };
    let mut a = [[0.0f64; 4]; 3];
    for (&t, &y) in ts.iter().zip(ys) {
        let s = t / scale;
        let basis = [1.0, s, s * s];
        for r in 0..3 {
            for c in 0..3 {
                a[r][c] += basis[r] * basis[c];
            }
            a[r][3] += basis[r] * y;
        }
    }
    for col in 0..3 {
        let mut piv = col;
        for r in col + 1..3 {
            if fabs(a[r][col]) > fabs(a[piv][col]) {
                piv = r;
            }
        }
        a.swap(col, piv);
        let d = a[col][col];
        if d == 0.0 {
            continue;
        }
        for r in 0..3 {
            if r != col {
                let f = a[r][col] / d;
                for c in col..4 {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    let coef = |i: usize| if a[i][i] == 0.0 { 0.0 } else { a[i][3] / a[i][i] };
    [coef(0), coef(1) / scale, coef(2) / (scale * scale)]
}

/// Largest deviation from the per-coordinate quadratic fit, divided by
/// `max(1, largest coordinate magnitude)`.
pub fn quadratic_residual(traj: &Trajectory) -> f64 {
    let n = traj.points.first().map_or(0, Vec::len);
    let mut worst = 0.0f64;
    for a in 0..n {
        let ys: Vec<f64> = traj.points.iter().map(|p| p[a]).collect();
        let [c0, c1, c2] = fit_quadratic(&traj.times, &ys);
        let size = ys.iter().fold(1.0f64, |m, &y| if fabs(y) > m { fabs(y) } else { m });
        for (&t, &y) in traj.times.iter().zip(&ys) {
            let r = fabs(y - (c0 + c1 * t + c2 * t * t)) / size;
            if r > worst {
                worst = r;
            }
        }
    }
    worst
}

/// The signed unit vectors `±e_i` followed by `random_points` seeded
/// rational points with coordinates in `[-2, 2]` (denominator 8).
pub fn initial_conditions(dim: usize, params: &GeodesicParams) -> Vec<QVector> {
    let mut out = Vec::new();
    for i in 0..dim {
        let u = rational::unit(dim, i);
        out.push(rational::neg(&u));
        out.push(u);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..params.random_points {
        out.push((0..dim).map(|_| rational::frac(rng.gen_range(-16..=16), 8)).collect());
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicSample {
    pub initial: QVector,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicReport {
    pub params: GeodesicParams,
    pub samples: Vec<GeodesicSample>,
    pub max_residual: f64,
    pub passed: bool,
}

/// Integrates from every initial condition and checks the quadratic fit.
pub fn quadratic_certificate(gamma: &SparseGamma, params: &GeodesicParams) -> GeodesicReport {
    let mut samples = Vec::new();
    let mut max_residual = 0.0f64;
    for x0 in initial_conditions(gamma.dim, params) {
        let start: Vec<f64> = x0.iter().map(rational::to_f64).collect();
        let traj = integrate(gamma, &start, params);
        let residual = quadratic_residual(&traj);
        // NaN fails the comparison and so fails the sample
        let passed = residual <= params.tolerance;
        if !(residual <= max_residual) {
            max_residual = residual;
        }
        samples.push(GeodesicSample {
            initial: x0,
            residual,
            passed,
        });
    }
    let passed = samples.iter().all(|s| s.passed);
    GeodesicReport {
        params: params.clone(),
        samples,
        max_residual,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_connection_gives_lines() {
        let g = SparseGamma {
            dim: 2,
            terms: Vec::new(),
        };
        let traj = integrate(&g, &[1.0, -2.0], &GeodesicParams::default());
        let last = traj.points.last().unwrap();
        assert!(fabs(last[0] - 1.0) < 1e-12);
        assert!(quadratic_residual(&traj) < 1e-12);
        assert_eq!(traj.times.len(), 101);
    }

    #[test]
    fn quadratic_solution_is_fitted() {
        // x0' = 0, x1' = -x0^2: x1 = x1(0) - x0^2 t
        // x2' = -x0 x1: quadratic in t
        let g = SparseGamma {
            dim: 3,
            terms: alloc::vec![(0, 0, 1, 1.0), (0, 1, 2, 1.0)],
        };
        let report = quadratic_certificate(&g, &GeodesicParams::default());
        assert!(report.passed, "{}", report.max_residual);
        assert_eq!(report.samples.len(), 6 + 10);
    }

    #[test]
    fn blow_up_is_rejected() {
        // x' = -x^2 is not polynomial
        let g = SparseGamma {
            dim: 1,
            terms: alloc::vec![(0, 0, 0, 1.0)],
        };
        assert!(!quadratic_certificate(&g, &GeodesicParams::default()).passed);
    }

    #[test]
    fn fit_recovers_coefficients() {
        let ts: Vec<f64> = (0..=20).map(|i| i as f64 * 0.5).collect();
        let ys: Vec<f64> = ts.iter().map(|t| 3.0 - 2.0 * t + 0.25 * t * t).collect();
        let [a, b, c] = fit_quadratic(&ts, &ys);
        assert!(fabs(a - 3.0) < 1e-9 && fabs(b + 2.0) < 1e-9 && fabs(c - 0.25) < 1e-9);
    }
}
