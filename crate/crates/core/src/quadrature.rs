//! Quadrature rules for the group integrals: Gauss-Legendre in x = cos(theta)
//! and the uniform periodic rule in the phase angle.
//!
//! Both integrands here are polynomial (trigonometric polynomial in psi), so
//! with enough nodes the rules are exact up to roundoff; the builders pick
//! node counts that guarantee exactness for the degree at hand.

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Compute the n-point Gauss-Legendre rule by Newton iteration on P_n,
/// seeded with the Chebyshev-like estimate cos(pi (i - 1/4) / (n + 1/2)).
pub fn gauss_legendre(n: usize) -> GaussLegendre {
    assert!(n >= 1, "quadrature order must be at least 1");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];

    // Roots come in +/- pairs; iterate the upper half and mirror.
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 {
                let (p2, d2) = legendre_with_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }

    GaussLegendre { nodes, weights }
}

/// P_n(x) and P_n'(x) via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let dp = (n as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// K uniformly spaced angles 2*pi*k/K on [0, 2*pi); with weight 1/K each this
/// rule integrates exp(i y psi) exactly for all |y| < K.
pub fn periodic_nodes(k: usize) -> Vec<f64> {
    assert!(k >= 1);
    (0..k)
        .map(|i| std::f64::consts::TAU * i as f64 / k as f64)
        .collect()
}
