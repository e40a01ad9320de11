//! 1-D quadrature: Gauss-Legendre nodes and a tanh-sinh (double-exponential)
//! rule for integrands with endpoint singularities.

use num_complex::Complex;

use crate::scalar::Real;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
///
/// Newton iteration on the Legendre recurrence; accurate to machine
/// precision for the orders used in this crate (n <= a few hundred).
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1);
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi-style initial guess.
        let mut x = T::of((std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos());
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_pair(n, x);
            dp = d;
            let step = p / d;
            x = x - step;
            if step.abs() <= T::eps() * (T::one() + x.abs()) {
                break;
            }
        }
        let w = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
        let (_, d) = legendre_pair(n, T::zero());
        weights[n / 2] = T::of(2.0) / (d * d);
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_pair<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for k in 2..=n {
        let kf = T::of(k as f64);
        let p2 = ((T::of(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = T::of(n as f64) * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Gauss-Legendre integration of `f` over `[a, b]`.
pub fn integrate_gl<T: Real, F: FnMut(T) -> Complex<T>>(
    a: T,
    b: T,
    n: usize,
    mut f: F,
) -> Complex<T> {
    let (xs, ws) = gauss_legendre::<T>(n);
    let half = (b - a) * T::of(0.5);
    let mid = (a + b) * T::of(0.5);
    let mut acc = Complex::<T>::default();
    for (x, w) in xs.iter().zip(&ws) {
        acc = acc + f(mid + half * *x) * *w;
    }
    acc * half
}

/// Tanh-sinh quadrature of `f` over `(0, 1)`.
///
/// The callback receives `(s, 1-s)` with both arguments computed stably, so
/// integrands singular at either endpoint can be evaluated without
/// cancellation. `level` controls the step `h = 2^-level`; level 7 gives
/// roughly machine precision for algebraic endpoint singularities.
pub fn tanh_sinh_01<T: Real, F: FnMut(T, T) -> Complex<T>>(level: u32, f: F) -> Complex<T> {
    tanh_sinh_01_tmax(level, 3.8, f)
}

/// [`tanh_sinh_01`] with an explicit truncation point of the transformed
/// integral. For an integrand behaving like `s^{kappa - 1}` near `s = 0`,
/// the truncation error is `~exp(-kappa * pi * sinh(t_max))`, so weakly
/// integrable singularities need `t_max ~ asinh(40 / (pi * kappa))`.
pub fn tanh_sinh_01_tmax<T: Real, F: FnMut(T, T) -> Complex<T>>(
    level: u32,
    t_max: f64,
    mut f: F,
) -> Complex<T> {
    let h = T::of(2.0f64.powi(-(level as i32)));
    let t_max = T::of(t_max);
    let n = (t_max / h).to_f64().unwrap().ceil() as i64;
    let half_pi = T::of(0.5) * T::PI();
    let mut acc = Complex::<T>::default();
    for k in -n..=n {
        let t = h * T::of(k as f64);
        let u = half_pi * t.sinh();
        // s = sigma(2u), computed from the side that keeps precision.
        let e = (-T::of(2.0) * u.abs()).exp();
        let near = e / (T::one() + e); // distance to the closer endpoint
        let (s, oms) = if u < T::zero() {
            (near, T::one() - near)
        } else {
            (T::one() - near, near)
        };
        // ds/dt = 2 s (1-s) * (pi/2) cosh t
        let w = T::of(2.0) * s * oms * half_pi * t.cosh();
        if w == T::zero() || !w.is_finite() {
            continue;
        }
        let v = f(s, oms);
        if v.re.is_finite() && v.im.is_finite() {
            acc = acc + v * w;
        }
    }
    acc * h
}

/// Trapezoid rule for smooth periodic integrands over `[0, 2 pi)`.
pub fn trapezoid_periodic<T: Real, F: FnMut(T) -> Complex<T>>(n: usize, mut f: F) -> Complex<T> {
    let step = T::of(2.0) * T::PI() / T::of(n as f64);
    let mut acc = Complex::<T>::default();
    for k in 0..n {
        acc = acc + f(step * T::of(k as f64));
    }
    acc * step
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_exact_on_polynomials() {
        // 5-node GL integrates degree-9 polynomials exactly.
        let v = integrate_gl(-1.0f64, 1.0, 5, |x| Complex::new(x.powi(8), 0.0));
        assert!((v.re - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn gl_gaussian_integral() {
        let v = integrate_gl(-8.0f64, 8.0, 60, |x| Complex::new((-x * x).exp(), 0.0));
        assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn tanh_sinh_handles_endpoint_singularity() {
        // \int_0^1 s^{-1/2} ds = 2
        let v = tanh_sinh_01(6, |s: f64, _| Complex::new(s.powf(-0.5), 0.0));
        assert!((v.re - 2.0).abs() < 1e-12, "{}", v.re);
        // \int_0^1 (1-s)^{-1/2} ds = 2, singular at the other end
        let v = tanh_sinh_01(6, |_, oms: f64| Complex::new(oms.powf(-0.5), 0.0));
        assert!((v.re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn tanh_sinh_complex_power() {
        // \int_0^1 s^{-0.5 + i} ds = 1/(0.5 + i)
        let v = tanh_sinh_01(7, |s: f64, _| {
            let ln = s.ln();
            Complex::new(s.powf(-0.5) * ln.cos(), s.powf(-0.5) * ln.sin())
        });
        let want = Complex::new(1.0, 0.0) / Complex::new(0.5, 1.0);
        assert!((v - want).norm() < 1e-11, "{v}");
    }

    #[test]
    fn trapezoid_periodic_cosine() {
        let v = trapezoid_periodic(32, |t: f64| Complex::new((3.0 * t).cos().powi(2), 0.0));
        assert!((v.re - std::f64::consts::PI).abs() < 1e-12);
    }
}
