//! One-dimensional golden-section search and circle-grid refinement.

/// Inverse golden ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization on `[a, b]`.
///
/// Ties keep the left subinterval, so flat stretches resolve toward the
/// smaller argument. Returns `(argmax, value)` at the final midpoint.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    if b < a {
        std::mem::swap(&mut a, &mut b);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..256 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Golden-section minimization on `[a, b]`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, neg) = golden_max(|t| -f(t), a, b, tol);
    (x, -neg)
}

/// Minimum of a `2pi`-periodic function: scan `n_grid` equispaced samples,
/// then golden-refine around the three smallest ones. Reduction runs in
/// index order so results are reproducible.
pub fn circle_min<F: FnMut(f64) -> f64>(mut f: F, n_grid: usize, refine_tol: f64) -> (f64, f64) {
    let step = 2.0 * std::f64::consts::PI / n_grid as f64;
    let values: Vec<f64> = (0..n_grid).map(|j| f(j as f64 * step)).collect();
    let mut order: Vec<usize> = (0..n_grid).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));

    let mut best = (order[0] as f64 * step, values[order[0]]);
    for &j in order.iter().take(3) {
        let center = j as f64 * step;
        let (x, v) = golden_min(&mut f, center - step, center + step, refine_tol);
        if v < best.1 {
            best = (x, v);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_extrema() {
        let (x, v) = golden_max(|t| -(t - 0.2) * (t - 0.2), -1.0, 1.0, 1e-10);
        assert!((x - 0.2).abs() < 1e-8);
        assert!(v.abs() < 1e-15);
        // the +3 offset floods f64 resolution within ~2.6e-8 of the argmin
        let (x, v) = golden_min(|t| (t + 0.7) * (t + 0.7) + 3.0, -2.0, 2.0, 1e-10);
        assert!((x + 0.7).abs() < 1e-7);
        assert!((v - 3.0).abs() < 1e-12);
    }

    #[test]
    fn circle_min_locates_cosine_trough() {
        let (x, v) = circle_min(|t| t.cos(), 64, 1e-12);
        assert!((x - std::f64::consts::PI).abs() < 1e-8);
        assert!((v + 1.0).abs() < 1e-14);
    }

    #[test]
    fn circle_min_handles_multiple_local_minima() {
        // global minimum of cos(3t) + 0.3 sin(t) is not at the first local dip
        let (_, v) = circle_min(|t| (3.0 * t).cos() + 0.3 * t.sin(), 128, 1e-12);
        let brute = (0..100_000)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / 100_000.0;
                (3.0 * t).cos() + 0.3 * t.sin()
            })
            .fold(f64::INFINITY, f64::min);
        assert!(v <= brute + 1e-8);
    }
}
