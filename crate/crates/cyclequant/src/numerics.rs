//! Shared numerical kernels: Gauss-Legendre quadrature and bracketed
//! root-finding.

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
///
/// Nodes are found by Newton iteration on the three-term Legendre recurrence
/// starting from the Chebyshev estimate; accurate to machine precision for
/// the orders used here (up to a few hundred points).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be at least 1");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev initial guess for the i-th positive root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                let (_, d2) = legendre_with_derivative(n, x);
                dp = d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrates `f` over `[a, b]` with an `n`-point Gauss-Legendre rule.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(weights.iter()) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

/// Bisection on a bracketing interval; `f(a)` and `f(b)` must have opposite
/// signs. Stops when the interval width drops below `rel_tol` relative to
/// the endpoint magnitude.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, rel_tol: f64) -> f64 {
    let mut fa = f(a);
    debug_assert!(fa * f(b) <= 0.0, "bisect requires a sign change");
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (b - a).abs() <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
            return mid;
        }
        let fm = f(mid);
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Secant refinement safeguarded by a bracket.
///
/// Starts from the bracket `[a, b]` (with `f(a)` and `f(b)` of opposite
/// sign), takes secant steps while they stay inside the current bracket and
/// falls back to bisection otherwise. Converges when `|f|` drops below
/// `f_tol` or the bracket collapses.
pub fn secant_bracketed<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, f_tol: f64) -> f64 {
    let (mut lo, mut hi) = (a, b);
    let f_lo_start = f(lo);
    let f_hi_start = f(hi);
    if f_lo_start.abs() <= f_tol {
        return lo;
    }
    if f_hi_start.abs() <= f_tol {
        return hi;
    }
    debug_assert!(
        f_lo_start * f_hi_start <= 0.0,
        "secant_bracketed requires a sign change"
    );
    let mut f_lo = f_lo_start;
    let mut x0 = lo;
    let mut x1 = hi;
    let mut fx0 = f_lo_start;
    let mut fx1 = f_hi_start;
    for _ in 0..80 {
        let denom = fx1 - fx0;
        let mut x2 = if denom != 0.0 {
            x1 - fx1 * (x1 - x0) / denom
        } else {
            0.5 * (lo + hi)
        };
        if !(x2 > lo && x2 < hi) {
            x2 = 0.5 * (lo + hi);
        }
        let fx2 = f(x2);
        if fx2.abs() <= f_tol || (hi - lo).abs() <= f64::EPSILON * hi.abs().max(1.0) {
            return x2;
        }
        if f_lo * fx2 <= 0.0 {
            hi = x2;
        } else {
            lo = x2;
            f_lo = fx2;
        }
        x0 = x1;
        fx0 = fx1;
        x1 = x2;
        fx1 = fx2;
    }
    0.5 * (lo + hi)
}
