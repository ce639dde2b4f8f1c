//! Nelder-Mead simplex minimization.

/// Stopping rules for [`nelder_mead`].
#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Converged when the largest vertex distance from the best vertex is below this.
    pub xtol: f64,
    /// ... and the spread of function values is below this.
    pub ftol: f64,
    pub max_evals: usize,
    /// Initial edge length relative to each coordinate (absolute for zero coordinates).
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            xtol: 1e-10,
            ftol: 1e-15,
            max_evals: 20_000,
            initial_step: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub diameter: f64,
    pub converged: bool,
}

fn diameter(simplex: &[Vec<f64>]) -> f64 {
    let best = &simplex[0];
    simplex[1..]
        .iter()
        .map(|v| {
            v.iter()
                .zip(best)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// Minimizes `f` from `x0`, restarting once from the reported minimum so a
/// collapsed simplex cannot stall on a slope.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], opts: SimplexOptions) -> Minimum {
    let first = run(&mut f, x0, opts, opts.max_evals);
    let left = opts.max_evals.saturating_sub(first.evals);
    if left == 0 {
        return first;
    }
    let second = run(&mut f, &first.x, opts, left);
    let evals = first.evals + second.evals;
    if second.value <= first.value {
        Minimum { evals, ..second }
    } else {
        Minimum { evals, ..first }
    }
}

fn run<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    opts: SimplexOptions,
    budget: usize,
) -> Minimum {
    let dim = x0.len();
    let mut simplex = vec![x0.to_vec()];
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += if v[i] != 0.0 {
            opts.initial_step * v[i]
        } else {
            opts.initial_step
        };
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| sanitize(f(v))).collect();
    let mut evals = simplex.len();

    let mut converged = false;
    loop {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[dim] - values[0];
        if diameter(&simplex) < opts.xtol && spread <= opts.ftol.max(1e-15 * values[0].abs()) {
            converged = true;
            break;
        }
        if evals >= budget {
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|v| v[j]).sum::<f64>() / dim as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[dim])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(1.0);
        let fr = sanitize(f(&xr));
        evals += 1;
        if fr < values[0] {
            let xe = along(2.0);
            let fe = sanitize(f(&xe));
            evals += 1;
            if fe < fr {
                simplex[dim] = xe;
                values[dim] = fe;
            } else {
                simplex[dim] = xr;
                values[dim] = fr;
            }
        } else if fr < values[dim - 1] {
            simplex[dim] = xr;
            values[dim] = fr;
        } else {
            let (xc, fc) = if fr < values[dim] {
                let xc = along(0.5);
                let fc = sanitize(f(&xc));
                (xc, fc)
            } else {
                let xc = along(-0.5);
                let fc = sanitize(f(&xc));
                (xc, fc)
            };
            evals += 1;
            if fc < values[dim].min(fr) {
                simplex[dim] = xc;
                values[dim] = fc;
            } else {
                for i in 1..=dim {
                    let shrunk: Vec<f64> = simplex[i]
                        .iter()
                        .zip(&simplex[0])
                        .map(|(v, b)| b + 0.5 * (v - b))
                        .collect();
                    values[i] = sanitize(f(&shrunk));
                    simplex[i] = shrunk;
                }
                evals += dim;
            }
        }
    }
    Minimum {
        diameter: diameter(&simplex),
        x: simplex.swap_remove(0),
        value: values[0],
        evals,
        converged,
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let m = nelder_mead(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
            SimplexOptions::default(),
        );
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-7 && (m.x[1] - 1.0).abs() < 1e-7);
    }

    #[test]
    fn quadratic_bowl_3d() {
        let m = nelder_mead(
            |x| (x[0] - 0.3).powi(2) + 2.0 * (x[1] + 1.0).powi(2) + 0.5 * (x[2] - 4.0).powi(2),
            &[0.0, 0.0, 0.0],
            SimplexOptions::default(),
        );
        assert!(m.converged);
        for (a, b) in m.x.iter().zip([0.3, -1.0, 4.0]) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn budget_exhaustion_reports_unconverged() {
        let m = nelder_mead(
            |x| x[0].powi(2) + x[1].powi(2),
            &[5.0, 5.0],
            SimplexOptions {
                max_evals: 10,
                ..SimplexOptions::default()
            },
        );
        assert!(!m.converged);
    }
}
