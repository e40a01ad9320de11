//! Funk-type transforms of even/odd functions on the sphere `S^n`.
//!
//! The one-parameter family acts with kernel `|<xi,w>|^lambda / Gamma((lambda+1)/2)`
//! (odd functions get an extra `sign<xi,w>`). It is diagonal on spherical
//! harmonics, so everything reduces to per-degree eigenvalues given by a 1-D
//! integral against Gegenbauer polynomials:
//!
//! `eig(lambda, l) = \int_{-1}^{1} w_lambda(s) G_l(s) (1-s^2)^{(n-2)/2} ds`
//!
//! with `G_l` normalized so `G_l(1) = 1`. Absolute constants are absorbed
//! into measure normalizations; eigenvalue *ratios* carry the content of the
//! inversion identity and the unitarity line, and those are what the defect
//! operations measure.
//!
//! Analytic continuation: for `-3 < Re lambda <= -1/2` the integral is
//! regularized by one subtraction at `s = 0`; the `1/Gamma` prefactor kills
//! the spurious pole at `lambda = -1`, where the eigenvalue is evaluated as
//! a symmetric limit.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quad::tanh_sinh_01_tmax;
use crate::scalar::Real;
use crate::special::gamma;

/// Parity class of a function on the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn matches(self, degree: usize) -> bool {
        match self {
            Parity::Even => degree % 2 == 0,
            Parity::Odd => degree % 2 == 1,
        }
    }

    /// Smallest degree in this parity class.
    pub fn first_degree(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// Normalized Gegenbauer polynomial `G_l(x)` (ultraspherical with parameter
/// `alpha = (n-1)/2`, scaled so `G_l(1) = 1`) and its derivative.
pub fn gegenbauer_normalized<T: Real>(l: usize, n: u32, x: T) -> (T, T) {
    let alpha = (n as f64 - 1.0) / 2.0;
    // C_l^alpha(1) = prod_{j=0}^{l-1} (2 alpha + j) / (j + 1)
    let mut at_one = 1.0f64;
    for j in 0..l {
        at_one *= (2.0 * alpha + j as f64) / (j as f64 + 1.0);
    }
    let (c, d) = gegenbauer_raw(l, T::of(alpha), x);
    (c / T::of(at_one), d / T::of(at_one))
}

/// `(C_l^alpha(x), d/dx C_l^alpha(x))` by the three-term recurrence.
fn gegenbauer_raw<T: Real>(l: usize, alpha: T, x: T) -> (T, T) {
    if l == 0 {
        return (T::one(), T::zero());
    }
    let two = T::of(2.0);
    let mut c0 = T::one();
    let mut d0 = T::zero();
    let mut c1 = two * alpha * x;
    let mut d1 = two * alpha;
    if l == 1 {
        return (c1, d1);
    }
    for k in 2..=l {
        let kf = T::of(k as f64);
        let a = two * (kf + alpha - T::one()) / kf;
        let b = (kf + two * alpha - two) / kf;
        let c2 = a * x * c1 - b * c0;
        let d2 = a * (c1 + x * d1) - b * d0;
        c0 = c1;
        d0 = d1;
        c1 = c2;
        d1 = d2;
    }
    (c1, d1)
}

fn de_params(kappa: f64) -> (u32, f64) {
    // Truncation point covering an s^{kappa-1} singularity to ~1e-16.
    let t_max = (40.0 / (std::f64::consts::PI * kappa.max(1e-6))).asinh().max(3.8);
    (7, t_max)
}

/// Eigenvalue of the transform on degree-`l` harmonics of `S^n`.
///
/// Wrong-parity degrees give an exact zero. Supported range
/// `Re lambda > -3` (one subtraction implemented); the pole of
/// `Gamma((lambda+1)/2)` at `lambda = -1` is crossed by a symmetric limit.
pub fn j_lambda_eigenvalue<T: Real>(
    lambda: Complex<T>,
    l: usize,
    n: u32,
    parity: Parity,
) -> Result<Complex<T>> {
    if !parity.matches(l) {
        return Ok(Complex::default());
    }
    if n < 2 {
        return Err(Error::Domain("sphere dimension must be >= 2".into()));
    }
    let re = lambda.re.to_f64().unwrap();
    if re <= -3.0 {
        return Err(Error::LambdaRange(format!(
            "Re lambda = {re} <= -3: only one subtraction is implemented"
        )));
    }
    // Gamma((lambda+1)/2) poles inside the supported range: lambda = -1.
    if lambda.im == T::zero() && (re + 1.0).abs() < 1e-7 {
        let h = T::of(1e-4);
        let a = eigenvalue_regular(lambda + Complex::new(h, T::zero()), l, n, parity);
        let b = eigenvalue_regular(lambda - Complex::new(h, T::zero()), l, n, parity);
        return Ok((a + b) * T::of(0.5));
    }
    Ok(eigenvalue_regular(lambda, l, n, parity))
}

/// The eigenvalue away from the Gamma poles: integral over the in-parity
/// fold `[0, 1]`, divided by `Gamma((lambda+1)/2)`.
fn eigenvalue_regular<T: Real>(
    lambda: Complex<T>,
    l: usize,
    n: u32,
    parity: Parity,
) -> Complex<T> {
    let re = lambda.re.to_f64().unwrap();
    let nu = (n as f64 - 2.0) / 2.0;
    let h = |s: T, oms: T| -> T {
        // (1 - s^2)^nu computed from (1-s)(1+s) to stay accurate near s = 1.
        let (g, _) = gegenbauer_normalized(l, n, s);
        g * (oms * (T::one() + s)).powf(T::of(nu))
    };
    let s_pow = |s: T| -> Complex<T> {
        // s^lambda for s > 0
        let ln = s.ln();
        Complex::from_polar((lambda.re * ln).exp(), lambda.im * ln)
    };

    let integral = if re > -0.5 {
        // Plain branch: \int_0^1 s^lambda H(s) ds, doubled by parity.
        let (level, t_max) = de_params(re + 1.0);
        tanh_sinh_01_tmax(level, t_max, |s, oms| s_pow(s) * h(s, oms))
            * T::of(2.0)
    } else {
        // One subtraction at s = 0. For even parity subtract H(0); for odd
        // parity subtract the first-order term H'(0) s. The subtracted
        // moments have the closed forms H(0)/(lambda+1) and
        // H'(0)/(lambda+2).
        match parity {
            Parity::Even => {
                let h0 = h(T::zero(), T::one());
                let (level, t_max) = de_params(re + 3.0);
                let reg = tanh_sinh_01_tmax(level, t_max, |s, oms| {
                    s_pow(s) * (h(s, oms) - h0)
                });
                (reg + Complex::new(h0, T::zero())
                    / (lambda + Complex::new(T::one(), T::zero())))
                    * T::of(2.0)
            }
            Parity::Odd => {
                let (_, d0) = gegenbauer_normalized(l, n, T::zero());
                let (level, t_max) = de_params(re + 3.0);
                let reg = tanh_sinh_01_tmax(level, t_max, |s, oms| {
                    s_pow(s) * (h(s, oms) - d0 * s)
                });
                (reg + Complex::new(d0, T::zero())
                    / (lambda + Complex::new(T::of(2.0), T::zero())))
                    * T::of(2.0)
            }
        }
    };
    let g = gamma((lambda + Complex::new(T::one(), T::zero())) * T::of(0.5));
    integral / g
}

/// Per-degree eigenvalues for `l <= max_degree`; wrong-parity entries are
/// exactly zero.
#[derive(Debug, Clone)]
pub struct EigenvalueTable<T> {
    pub lambda: Complex<T>,
    pub n: u32,
    pub parity: Parity,
    pub values: Vec<Complex<T>>,
}

impl<T: Real> EigenvalueTable<T> {
    pub fn build(lambda: Complex<T>, n: u32, parity: Parity, max_degree: usize) -> Result<Self> {
        let values = (0..=max_degree)
            .map(|l| j_lambda_eigenvalue(lambda, l, n, parity))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { lambda, n, parity, values })
    }

    pub fn max_degree(&self) -> usize {
        self.values.len() - 1
    }
}

/// Spherical-harmonic coefficient model: full `(l, m)` tables on `S^2`,
/// zonal (per-degree) profiles for general `n`.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients<T> {
    /// `coeffs[l]` has `2 l + 1` entries, `m = -l ..= l`.
    S2Full(Vec<Vec<Complex<T>>>),
    /// One Gegenbauer coefficient per degree.
    Zonal(Vec<Complex<T>>),
}

/// Parity-tagged band-limited function on `S^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereFunction<T> {
    n: u32,
    parity: Parity,
    coeffs: Coefficients<T>,
}

impl<T: Real> SphereFunction<T> {
    /// Full `(l, m)` model on `S^2`. Wrong-parity degrees must be zero.
    pub fn new_s2(parity: Parity, coeffs: Vec<Vec<Complex<T>>>) -> Result<Self> {
        for (l, row) in coeffs.iter().enumerate() {
            if row.len() != 2 * l + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "degree {l} must have {} coefficients, got {}",
                    2 * l + 1,
                    row.len()
                )));
            }
            if !parity.matches(l) && row.iter().any(|c| c.norm() != T::zero()) {
                return Err(Error::Domain(format!(
                    "nonzero coefficients at degree {l} violate {parity:?} parity"
                )));
            }
        }
        Ok(Self { n: 2, parity, coeffs: Coefficients::S2Full(coeffs) })
    }

    /// Zonal model on `S^n`.
    pub fn new_zonal(n: u32, parity: Parity, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("sphere dimension must be >= 2".into()));
        }
        for (l, c) in coeffs.iter().enumerate() {
            if !parity.matches(l) && c.norm() != T::zero() {
                return Err(Error::Domain(format!(
                    "nonzero coefficient at degree {l} violates {parity:?} parity"
                )));
            }
        }
        Ok(Self { n, parity, coeffs: Coefficients::Zonal(coeffs) })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn coefficients(&self) -> &Coefficients<T> {
        &self.coeffs
    }

    pub fn max_degree(&self) -> usize {
        match &self.coeffs {
            Coefficients::S2Full(v) => v.len().saturating_sub(1),
            Coefficients::Zonal(v) => v.len().saturating_sub(1),
        }
    }

    /// Squared coefficient norm per degree.
    pub fn degree_energies(&self) -> Vec<T> {
        match &self.coeffs {
            Coefficients::S2Full(v) => v
                .iter()
                .map(|row| row.iter().map(|c| c.norm_sqr()).sum())
                .collect(),
            Coefficients::Zonal(v) => v.iter().map(|c| c.norm_sqr()).collect(),
        }
    }

    /// Synthesis at a point of `S^2` (full model only).
    pub fn eval_s2(&self, theta: T, phi: T) -> Result<Complex<T>> {
        let Coefficients::S2Full(rows) = &self.coeffs else {
            return Err(Error::Domain("eval_s2 needs the full S^2 model".into()));
        };
        let lmax = rows.len().saturating_sub(1);
        let x = theta.cos();
        let mut acc = Complex::<T>::default();
        for (l, row) in rows.iter().enumerate() {
            for (idx, c) in row.iter().enumerate() {
                if c.norm() == T::zero() {
                    continue;
                }
                let m = idx as isize - l as isize;
                acc = acc + *c * sph_harmonic_s2(l, m, x, phi);
            }
        }
        let _ = lmax;
        Ok(acc)
    }
}

/// Orthonormal spherical harmonic `Y_l^m` on `S^2` (Condon-Shortley phase),
/// evaluated at `cos(theta) = x`, azimuth `phi`.
pub fn sph_harmonic_s2<T: Real>(l: usize, m: isize, x: T, phi: T) -> Complex<T> {
    let am = m.unsigned_abs();
    let p = assoc_legendre_normalized(l, am, x);
    let v = p * Complex::from_polar(T::one(), T::of(am as f64) * phi);
    if m < 0 {
        // Y_{l,-m} = (-1)^m conj(Y_{l,m})
        let sign = if am % 2 == 1 { -T::one() } else { T::one() };
        v.conj() * sign
    } else {
        v
    }
}

/// Fully normalized associated Legendre `\bar P_l^m(x)` (includes the
/// `sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!)` factor).
fn assoc_legendre_normalized<T: Real>(l: usize, m: usize, x: T) -> T {
    if m > l {
        return T::zero();
    }
    let somx2 = ((T::one() - x) * (T::one() + x)).max(T::zero()).sqrt();
    // P̄_m^m
    let mut pmm = (T::one() / (T::of(4.0) * T::PI())).sqrt();
    for k in 1..=m {
        let kf = k as f64;
        pmm = -pmm * T::of(((2.0 * kf + 1.0) / (2.0 * kf)).sqrt()) * somx2;
    }
    if l == m {
        return pmm;
    }
    // P̄_{m+1}^m
    let mut p_prev = pmm;
    let mut p_curr = x * T::of((2.0 * m as f64 + 3.0).sqrt()) * pmm;
    if l == m + 1 {
        return p_curr;
    }
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let mf = m as f64;
        let a = T::of(((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt());
        let b = T::of(
            ((2.0 * lf + 1.0) / (2.0 * lf - 3.0) * ((lf - 1.0) * (lf - 1.0) - mf * mf)
                / (lf * lf - mf * mf))
                .sqrt(),
        );
        let p_next = a * x * p_curr - b * p_prev;
        p_prev = p_curr;
        p_curr = p_next;
    }
    p_curr
}

/// Applies the transform: multiplies each degree by its eigenvalue.
/// Parity and degree structure are preserved exactly.
pub fn apply_j_lambda<T: Real>(
    f: &SphereFunction<T>,
    lambda: Complex<T>,
) -> Result<SphereFunction<T>> {
    let table = EigenvalueTable::build(lambda, f.n, f.parity, f.max_degree())?;
    let coeffs = match &f.coeffs {
        Coefficients::S2Full(rows) => Coefficients::S2Full(
            rows.iter()
                .enumerate()
                .map(|(l, row)| row.iter().map(|c| c * table.values[l]).collect())
                .collect(),
        ),
        Coefficients::Zonal(v) => Coefficients::Zonal(
            v.iter()
                .enumerate()
                .map(|(l, c)| c * table.values[l])
                .collect(),
        ),
    };
    Ok(SphereFunction { n: f.n, parity: f.parity, coeffs })
}

/// Defect of the inversion identity: the composition of the transform at
/// `lambda` and at `-lambda - n - 1` must be a constant multiple of the
/// identity, so `p(l) = eig(lambda, l) eig(-lambda-n-1, l)` must be constant
/// over in-parity degrees. Returns `max_l |p(l)/p(l0) - 1|`.
pub fn inversion_identity_defect<T: Real>(
    lambda: Complex<T>,
    max_degree: usize,
    n: u32,
    parity: Parity,
) -> Result<T> {
    let dual = -lambda - Complex::new(T::of(n as f64 + 1.0), T::zero());
    let l0 = parity.first_degree();
    let p = |l: usize| -> Result<Complex<T>> {
        Ok(j_lambda_eigenvalue(lambda, l, n, parity)?
            * j_lambda_eigenvalue(dual, l, n, parity)?)
    };
    let p0 = p(l0)?;
    if p0.norm() == T::zero() {
        return Err(Error::Degenerate("reference eigenvalue product is zero".into()));
    }
    let mut defect = T::zero();
    let mut l = l0;
    while l <= max_degree {
        let r = (p(l)? / p0 - Complex::new(T::one(), T::zero())).norm();
        defect = defect.max(r);
        l += 2;
    }
    Ok(defect)
}

/// Defect of constant eigenvalue modulus on the unitarity line
/// `lambda = -(n+1)/2 + i rho`. Returns
/// `max_l | |eig(l)| / |eig(l0)| - 1 |` over in-parity degrees.
pub fn gft_line_defect<T: Real>(
    rho: T,
    max_degree: usize,
    n: u32,
    parity: Parity,
) -> Result<T> {
    let lambda = Complex::new(T::of(-(n as f64 + 1.0) / 2.0), rho);
    let l0 = parity.first_degree();
    let e0 = j_lambda_eigenvalue(lambda, l0, n, parity)?.norm();
    if e0 == T::zero() {
        return Err(Error::Degenerate("reference eigenvalue is zero".into()));
    }
    let mut defect = T::zero();
    let mut l = l0;
    while l <= max_degree {
        let e = j_lambda_eigenvalue(lambda, l, n, parity)?.norm();
        defect = defect.max((e / e0 - T::one()).abs());
        l += 2;
    }
    Ok(defect)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gegenbauer_is_legendre_for_s2() {
        // alpha = 1/2: normalized Gegenbauer == Legendre, P_2(x) = (3x^2-1)/2
        let (g, d) = gegenbauer_normalized(2, 2, 0.3f64);
        assert!((g - (3.0 * 0.09 - 1.0) / 2.0).abs() < 1e-14);
        assert!((d - 3.0 * 0.3).abs() < 1e-14);
        let (g1, _) = gegenbauer_normalized(7, 3, 1.0f64);
        assert!((g1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parity_mismatch_is_exactly_zero() {
        let v = j_lambda_eigenvalue(Complex::new(0.3f64, 0.2), 3, 2, Parity::Even).unwrap();
        assert_eq!(v, Complex::new(0.0, 0.0));
        let v = j_lambda_eigenvalue(Complex::new(-1.7f64, 0.0), 2, 3, Parity::Odd).unwrap();
        assert_eq!(v, Complex::new(0.0, 0.0));
    }

    #[test]
    fn lambda_zero_degree_zero_closed_form() {
        // n=2: 2 / Gamma(1/2) = 2/sqrt(pi)
        let v = j_lambda_eigenvalue(Complex::new(0.0f64, 0.0), 0, 2, Parity::Even).unwrap();
        let want = 2.0 / std::f64::consts::PI.sqrt();
        assert!((v.re - want).abs() < 1e-10, "{v}");
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn funk_limit_matches_legendre_at_zero() {
        // lambda = -1: eigenvalue ratio = P_l(0) / P_0(0) = P_l(0)
        let lam = Complex::new(-1.0f64, 0.0);
        let e0 = j_lambda_eigenvalue(lam, 0, 2, Parity::Even).unwrap();
        for (l, want) in [(2usize, -0.5f64), (4, 0.375), (6, -0.3125)] {
            let e = j_lambda_eigenvalue(lam, l, 2, Parity::Even).unwrap();
            let ratio = (e / e0).re;
            assert!((ratio - want).abs() < 1e-7, "l={l}: {ratio} vs {want}");
        }
    }

    #[test]
    fn regularized_branch_agrees_with_plain_where_both_defined() {
        // At Re lambda = -0.2 the plain branch is valid; force the
        // subtracted one and compare.
        let lam = Complex::new(-0.2f64, 0.4);
        for l in [0usize, 2, 4] {
            let plain = eigenvalue_regular(lam, l, 2, Parity::Even);
            // The subtraction is the identity transformation of the
            // integral, so evaluating through it must agree.
            let h0 = gegenbauer_normalized(l, 2, 0.0f64).0;
            let (level, t_max) = de_params(lam.re + 3.0);
            let reg = tanh_sinh_01_tmax(level, t_max, |s: f64, oms: f64| {
                let ln = s.ln();
                let sp = Complex::from_polar((lam.re * ln).exp(), lam.im * ln);
                let g = gegenbauer_normalized(l, 2, s).0;
                sp * (g * (oms * (1.0 + s)).powf(0.0) - h0)
            });
            let subtracted = (reg
                + Complex::new(h0, 0.0) / (lam + Complex::new(1.0, 0.0)))
                * 2.0
                / gamma((lam + Complex::new(1.0, 0.0)) * 0.5);
            assert!(
                (plain - subtracted).norm() < 1e-10 * (1.0 + plain.norm()),
                "l={l}: {plain} vs {subtracted}"
            );
        }
    }

    #[test]
    fn out_of_range_lambda_errors() {
        let r = j_lambda_eigenvalue(Complex::new(-3.2f64, 0.0), 0, 2, Parity::Even);
        assert!(matches!(r, Err(Error::LambdaRange(_))));
    }

    #[test]
    fn diagonality_single_degree_in_single_degree_out() {
        let coeffs: Vec<Vec<Complex<f64>>> = (0..=4)
            .map(|l| {
                let mut row = vec![Complex::new(0.0, 0.0); 2 * l + 1];
                if l == 4 {
                    row[3] = Complex::new(1.0, -2.0);
                }
                row
            })
            .collect();
        let f = SphereFunction::new_s2(Parity::Even, coeffs).unwrap();
        let g = apply_j_lambda(&f, Complex::new(-0.4, 0.1)).unwrap();
        let energies = g.degree_energies();
        assert!(energies[4] > 0.0);
        for l in 0..4 {
            assert_eq!(energies[l], 0.0);
        }
    }

    #[test]
    fn parity_violation_rejected() {
        let coeffs = vec![
            vec![Complex::new(0.0f64, 0.0)],
            vec![Complex::new(1.0, 0.0); 3],
        ];
        assert!(SphereFunction::new_s2(Parity::Even, coeffs).is_err());
    }

    #[test]
    fn zero_function_stays_zero() {
        let f = SphereFunction::new_zonal(3, Parity::Even, vec![Complex::new(0.0f64, 0.0); 9])
            .unwrap();
        let g = apply_j_lambda(&f, Complex::new(-1.5, 0.7)).unwrap();
        assert!(g.degree_energies().iter().all(|&e| e == 0.0));
    }

    #[test]
    fn inversion_defect_swap_symmetric() {
        let d1 = inversion_identity_defect(Complex::new(-0.5f64, 0.0), 10, 2, Parity::Even)
            .unwrap();
        // swapping lambda <-> -lambda-n-1 leaves the product unchanged
        let d2 = inversion_identity_defect(Complex::new(-2.5f64, 0.0), 10, 2, Parity::Even)
            .unwrap();
        assert!((d1 - d2).abs() < 1e-9, "{d1} vs {d2}");
        assert!(d1 < 1e-6);
    }

    #[test]
    fn gft_line_self_ratio_zero() {
        // The l = l0 term is zero by construction; the whole defect is tiny.
        let d = gft_line_defect(0.0f64, 8, 2, Parity::Even).unwrap();
        assert!(d < 1e-6, "{d}");
    }

    #[test]
    fn spherical_harmonics_orthonormal_spot_check() {
        // \int |Y_2^1|^2 dw = 1 via product quadrature.
        let nt = 64;
        let nph = 64;
        let (xs, ws) = crate::quad::gauss_legendre::<f64>(nt);
        let mut acc = 0.0;
        for (x, w) in xs.iter().zip(&ws) {
            for p in 0..nph {
                let phi = 2.0 * std::f64::consts::PI * p as f64 / nph as f64;
                let y = sph_harmonic_s2(2, 1, *x, phi);
                acc += y.norm_sqr() * w * (2.0 * std::f64::consts::PI / nph as f64);
            }
        }
        assert!((acc - 1.0).abs() < 1e-10, "{acc}");
    }
}
