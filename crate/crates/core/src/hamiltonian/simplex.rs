//! Nelder-Mead downhill simplex.

/// Coefficients and stopping rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Budget across the initial run and all restarts.
    pub max_evaluations: usize,
    /// Converged once every vertex is within this max-norm distance of the
    /// best one...
    pub x_tol: f64,
    /// ...and the spread of function values is below this.
    pub f_tol: f64,
    /// Fresh simplices built around the best vertex after convergence.
    pub restarts: usize,
    /// Initial edge length relative to each coordinate (absolute when the
    /// coordinate is near zero).
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            max_evaluations: 2000,
            x_tol: 1e-7,
            f_tol: 1e-10,
            restarts: 1,
            initial_step: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Max-norm diameter and function spread of the final simplex.
    pub diameter: f64,
    pub spread: f64,
}

struct Counter<F> {
    f: F,
    evaluations: usize,
}

impl<F: FnMut(&[f64]) -> f64> Counter<F> {
    fn call(&mut self, x: &[f64]) -> f64 {
        self.evaluations += 1;
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

/// Minimizes `f` starting from `x0`.
pub fn minimize<F>(f: F, x0: &[f64], opts: &SimplexOptions) -> SimplexOutcome
where
    F: FnMut(&[f64]) -> f64,
{
    let mut counter = Counter { f, evaluations: 0 };
    let mut iterations = 0;
    let mut start = x0.to_vec();
    let mut outcome = None;
    for _ in 0..=opts.restarts {
        let (x, fx, converged, diameter, spread) =
            run(&mut counter, &start, opts, &mut iterations);
        outcome = Some(SimplexOutcome {
            x: x.clone(),
            f: fx,
            iterations,
            evaluations: counter.evaluations,
            converged,
            diameter,
            spread,
        });
        if !converged {
            break;
        }
        start = x;
    }
    outcome.expect("at least one pass")
}

fn initial_simplex(x0: &[f64], step: f64) -> Vec<Vec<f64>> {
    let mut simplex = vec![x0.to_vec()];
    for i in 0..x0.len() {
        let mut v = x0.to_vec();
        v[i] += if x0[i].abs() > 1e-3 { step * x0[i] } else { step };
        simplex.push(v);
    }
    simplex
}

fn run<F: FnMut(&[f64]) -> f64>(
    counter: &mut Counter<F>,
    x0: &[f64],
    opts: &SimplexOptions,
    iterations: &mut usize,
) -> (Vec<f64>, f64, bool, f64, f64) {
    let n = x0.len();
    let mut simplex = initial_simplex(x0, opts.initial_step);
    let mut values: Vec<f64> = simplex.iter().map(|v| counter.call(v)).collect();

    loop {
        // order ascending; ties keep insertion order
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let best = &simplex[0];
        let diameter = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(best).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        let spread = values[n] - values[0];
        if diameter < opts.x_tol && spread < opts.f_tol {
            return (simplex[0].clone(), values[0], true, diameter, spread);
        }
        if counter.evaluations >= opts.max_evaluations {
            return (simplex[0].clone(), values[0], false, diameter, spread);
        }
        *iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|v| v[k]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64, from: &[f64]| -> Vec<f64> {
            centroid
                .iter()
                .zip(from)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let worst = simplex[n].clone();
        let reflected = along(opts.reflection, &worst);
        let f_r = counter.call(&reflected);

        if f_r < values[0] {
            let expanded = along(opts.reflection * opts.expansion, &worst);
            let f_e = counter.call(&expanded);
            if f_e < f_r {
                simplex[n] = expanded;
                values[n] = f_e;
            } else {
                simplex[n] = reflected;
                values[n] = f_r;
            }
            continue;
        }
        if f_r < values[n - 1] {
            simplex[n] = reflected;
            values[n] = f_r;
            continue;
        }
        let (candidate, f_c) = if f_r < values[n] {
            let outside = along(opts.reflection * opts.contraction, &worst);
            let f = counter.call(&outside);
            (outside, if f <= f_r { f } else { f64::INFINITY })
        } else {
            let inside = along(-opts.contraction, &worst);
            let f = counter.call(&inside);
            (inside, if f < values[n] { f } else { f64::INFINITY })
        };
        if f_c.is_finite() {
            simplex[n] = candidate;
            values[n] = f_c;
            continue;
        }
        // shrink toward the best vertex
        let best = simplex[0].clone();
        for i in 1..=n {
            let v: Vec<f64> = best
                .iter()
                .zip(&simplex[i])
                .map(|(b, x)| b + opts.shrink * (x - b))
                .collect();
            values[i] = counter.call(&v);
            simplex[i] = v;
        }
    }
}
