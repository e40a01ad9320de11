//! Special functions: the gamma function for complex arguments.

use num_complex::Complex;

use crate::scalar::Real;

// Lanczos approximation, g = 7, 9 coefficients (GSL / numerics folklore
// values). Relative accuracy ~1e-13 over the right half plane.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function of a complex argument.
///
/// Poles at the non-positive integers return infinite values; callers that
/// need analytic limits across a pole handle them explicitly.
pub fn gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = T::of(0.5);
    if z.re < half {
        // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        let pi = T::PI();
        let pi_c = Complex::new(pi, T::zero());
        let s = (Complex::new(pi, T::zero()) * z).sin();
        if s.norm() == T::zero() {
            return Complex::new(T::infinity(), T::zero());
        }
        return pi_c / (s * gamma(Complex::new(T::one(), T::zero()) - z));
    }
    let z = z - Complex::new(T::one(), T::zero());
    let mut x = Complex::new(T::of(LANCZOS_COEF[0]), T::zero());
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x = x + Complex::new(T::of(c), T::zero())
            / (z + Complex::new(T::of(i as f64), T::zero()));
    }
    let t = z + Complex::new(T::of(LANCZOS_G + 0.5), T::zero());
    let sqrt_two_pi = (T::of(2.0) * T::PI()).sqrt();
    Complex::new(sqrt_two_pi, T::zero())
        * t.powc(z + Complex::new(half, T::zero()))
        * (-t).exp()
        * x
}

/// Gamma of a real argument (through the complex implementation).
pub fn gamma_real<T: Real>(x: T) -> T {
    gamma(Complex::new(x, T::zero())).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_real_values() {
        assert!((gamma_real(1.0f64) - 1.0).abs() < 1e-13);
        assert!((gamma_real(5.0f64) - 24.0).abs() < 1e-11);
        assert!((gamma_real(0.5f64) - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        // Gamma(-1/2) = -2 sqrt(pi)
        assert!((gamma_real(-0.5f64) + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn complex_conjugate_symmetry() {
        let z = Complex::new(0.3f64, 1.7);
        let a = gamma(z);
        let b = gamma(z.conj());
        assert!((a - b.conj()).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn functional_equation() {
        let z = Complex::new(-1.3f64, 0.4);
        let lhs = gamma(z + Complex::new(1.0, 0.0));
        let rhs = z * gamma(z);
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
    }

    #[test]
    fn modulus_on_imaginary_axis() {
        // |Gamma(i y)|^2 = pi / (y sinh(pi y))
        let y = 0.9f64;
        let g = gamma(Complex::new(0.0, y));
        let want = (std::f64::consts::PI / (y * (std::f64::consts::PI * y).sinh())).sqrt();
        assert!((g.norm() - want).abs() < 1e-12);
    }
}
