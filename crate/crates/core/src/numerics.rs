//! Log-domain reductions and quadrature primitives shared by the spectral
//! folds and the response integrals.
//!
//! Every reduction runs in a fixed order (ascending node index) so that
//! identical inputs give bit-identical results within a process.

use num_complex::Complex64;

/// log(exp(a) + exp(b)) without overflow.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY && b == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if a >= b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// log(sum_i exp(x_i)) over a slice, summed in ascending index order.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = xs.iter().map(|&x| (x - m).exp()).sum();
    m + sum.ln()
}

/// log(exp(a) - exp(b)) for a > b; NEG_INFINITY when a == b.
pub fn log_diff_exp(a: f64, b: f64) -> f64 {
    debug_assert!(a >= b);
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a == b {
        return f64::NEG_INFINITY;
    }
    // a + ln(1 - e^{b-a})
    a + (-(b - a).exp_m1()).ln()
}

/// ln(1 - e^{-y}) for y > 0, stable at both ends.
#[inline]
pub fn ln_one_minus_exp_neg(y: f64) -> f64 {
    debug_assert!(y > 0.0);
    (-(-y).exp_m1()).ln()
}

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
///
/// Newton iteration on the Legendre polynomial; deterministic and accurate
/// to machine precision for the small n used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P'_n(x)
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre grid: `panels` equal panels over [a, b],
/// `nodes_per_panel` nodes each. Returns (nodes, weights) in ascending order.
pub fn composite_gauss_legendre(
    a: f64,
    b: f64,
    panels: usize,
    nodes_per_panel: usize,
) -> (Vec<f64>, Vec<f64>) {
    assert!(b > a && panels > 0);
    let (gx, gw) = gauss_legendre(nodes_per_panel);
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * nodes_per_panel);
    let mut weights = Vec::with_capacity(panels * nodes_per_panel);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (x, w) in gx.iter().zip(&gw) {
            nodes.push(mid + 0.5 * h * x);
            weights.push(0.5 * h * w);
        }
    }
    (nodes, weights)
}

/// Trapezoid rule over uniformly spaced complex samples.
pub fn trapezoid(values: &[Complex64], dx: f64) -> Complex64 {
    let n = values.len();
    if n < 2 {
        return Complex64::new(0.0, 0.0);
    }
    let mut sum = 0.5 * (values[0] + values[n - 1]);
    for v in &values[1..n - 1] {
        sum += v;
    }
    sum * dx
}

/// Running trapezoid antiderivative: out[j] = integral of f from x_0 to x_j.
pub fn cumulative_trapezoid(values: &[Complex64], dx: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = Complex64::new(0.0, 0.0);
    out.push(acc);
    for w in values.windows(2) {
        acc += 0.5 * dx * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sum_exp_matches_naive_in_range() {
        let xs = [0.3_f64, -1.2, 2.5, 0.0];
        let naive: f64 = xs.iter().map(|x| f64::exp(*x)).sum::<f64>().ln();
        assert!((log_sum_exp(&xs) - naive).abs() < 1e-14);
    }

    #[test]
    fn log_sum_exp_survives_large_magnitudes() {
        let xs = [-200_000.0, -200_001.0];
        let expected = -200_000.0 + (1.0 + (-1.0f64).exp()).ln();
        assert!((log_sum_exp(&xs) - expected).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY; 3]), f64::NEG_INFINITY);
    }

    #[test]
    fn log_diff_exp_basics() {
        let v = log_diff_exp(0.0, -1.0);
        assert!((v - (1.0 - (-1.0f64).exp()).ln()).abs() < 1e-15);
        assert_eq!(log_diff_exp(-5.0, f64::NEG_INFINITY), -5.0);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(8);
        // degree-15 monomial is exact for an 8-point rule
        let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((got - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn composite_rule_handles_gaussian() {
        let (x, w) = composite_gauss_legendre(-8.0, 8.0, 16, 16);
        let got: f64 = x.iter().zip(&w).map(|(x, w)| w * (-x * x).exp()).sum();
        assert!((got - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn cumulative_trapezoid_linear_is_exact() {
        let vals: Vec<Complex64> = (0..5).map(|j| Complex64::new(j as f64, 0.0)).collect();
        let cum = cumulative_trapezoid(&vals, 1.0);
        assert!((cum[4].re - 8.0).abs() < 1e-15);
        let total = trapezoid(&vals, 1.0);
        assert!((total.re - 8.0).abs() < 1e-15);
    }
}
