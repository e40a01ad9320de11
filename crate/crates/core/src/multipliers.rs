//! Symbolic 1-D filter kernels represented by their Fourier transforms.
//!
//! A kernel `u(t)` never appears in the spatial domain here; everything is
//! done through its Fourier transform `u~(c)`, a member of the power/sign/
//! phase family:
//!
//! - real field:    `u~(c) = scale * |c|^{sigma + i rho} * sign(c)^eps`
//! - complex field: `u~(c) = scale * c^p * conj(c)^q`
//!   with `p - q` an integer (single-valuedness) and
//!   `sigma = Re(p+q)`, `rho = Im(p+q)`.
//!
//! The locality flag marks kernels whose spatial form is a finite
//! combination of derivatives of delta, i.e. polynomial symbols.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Base field of the transform a kernel belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Field-specific angular data of the symbol.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelForm<T> {
    /// `sign(c)^eps`, `eps` in {0, 1}.
    Real { sign_power: u8 },
    /// `c^p conj(c)^q` with `p - q` integer.
    Complex { p: Complex<T>, q: Complex<T> },
}

/// A 1-D kernel in multiplier (Fourier) form.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierKernel<T> {
    form: KernelForm<T>,
    sigma: T,
    rho: T,
    scale: Complex<T>,
    local: bool,
}

fn is_nonneg_int<T: Real>(x: T) -> bool {
    x >= T::zero() && (x - x.round()).abs() < T::of(1e-9)
}

impl<T: Real> MultiplierKernel<T> {
    /// The delta kernel: `u~ == 1` over the real field.
    pub fn delta() -> Self {
        Self::real_power(T::zero(), T::zero(), 0, Complex::new(T::one(), T::zero())).unwrap()
    }

    /// The delta kernel over the complex field.
    pub fn complex_delta() -> Self {
        Self::complex_power(Complex::default(), Complex::default(), Complex::new(T::one(), T::zero()))
            .unwrap()
    }

    /// The kernel realizing d/dt under this crate's transform conventions:
    /// `u~(c) = i c`. Spatially it is the derivative of delta up to sign
    /// convention.
    pub fn derivative() -> Self {
        Self::real_power(T::one(), T::zero(), 1, Complex::new(T::zero(), T::one())).unwrap()
    }

    /// Real-field kernel `scale * |c|^{sigma + i rho} sign(c)^eps`.
    pub fn real_power(sigma: T, rho: T, sign_power: u8, scale: Complex<T>) -> Result<Self> {
        if sign_power > 1 {
            return Err(Error::Domain("sign power must be 0 or 1".into()));
        }
        let parity = T::of(sign_power as f64);
        let local = rho == T::zero()
            && is_nonneg_int(sigma)
            && ((sigma - parity) / T::of(2.0) - ((sigma - parity) / T::of(2.0)).round()).abs()
                < T::of(1e-9);
        Ok(Self {
            form: KernelForm::Real { sign_power },
            sigma,
            rho,
            scale,
            local,
        })
    }

    /// Complex-field kernel `scale * c^p conj(c)^q`; `p - q` must be an
    /// integer for the symbol to be single-valued.
    pub fn complex_power(p: Complex<T>, q: Complex<T>, scale: Complex<T>) -> Result<Self> {
        let d = p - q;
        if d.im.abs() > T::of(1e-9) || (d.re - d.re.round()).abs() > T::of(1e-9) {
            return Err(Error::Domain(format!(
                "p - q must be an integer, got {:?}",
                d
            )));
        }
        let s = p + q;
        let local = p.im.abs() < T::of(1e-9)
            && q.im.abs() < T::of(1e-9)
            && is_nonneg_int(p.re)
            && is_nonneg_int(q.re);
        Ok(Self {
            form: KernelForm::Complex { p, q },
            sigma: s.re,
            rho: s.im,
            scale,
            local,
        })
    }

    /// The nonlocal unitary family: for the real field the kernel with
    /// spatial form `|t|^{-(n+1)/2 - i rho}` (symbol modulus `|c|^{(n-1)/2}`),
    /// for the complex field the zero-winding member `|c|^{n-1+i rho}` of the
    /// `c^p conj(c)^q` family with `Re(p+q) = n-1`.
    pub fn nonlocal_gft_family(field: Field, n: u32, rho: T) -> Self {
        let one = Complex::new(T::one(), T::zero());
        match field {
            Field::Real => {
                Self::real_power(T::of((n as f64 - 1.0) / 2.0), rho, 0, one).unwrap()
            }
            Field::Complex => {
                let half = Complex::new(
                    T::of((n as f64 - 1.0) / 2.0),
                    rho * T::of(0.5),
                );
                Self::complex_power(half, half, one).unwrap()
            }
        }
    }

    pub fn field(&self) -> Field {
        match self.form {
            KernelForm::Real { .. } => Field::Real,
            KernelForm::Complex { .. } => Field::Complex,
        }
    }

    pub fn form(&self) -> &KernelForm<T> {
        &self.form
    }

    /// Modulus exponent of the symbol.
    pub fn sigma(&self) -> T {
        self.sigma
    }

    /// Phase exponent (`|c|^{i rho}` factor).
    pub fn rho(&self) -> T {
        self.rho
    }

    pub fn scale(&self) -> Complex<T> {
        self.scale
    }

    /// True iff the spatial kernel is a finite combination of derivatives of
    /// delta (equivalently: the symbol is a polynomial).
    pub fn is_local(&self) -> bool {
        self.local
    }

    /// True for the exact unit symbol (the delta kernel).
    pub fn is_identity(&self) -> bool {
        self.sigma == T::zero()
            && self.rho == T::zero()
            && self.scale == Complex::new(T::one(), T::zero())
            && match self.form {
                KernelForm::Real { sign_power } => sign_power == 0,
                KernelForm::Complex { p, q } => p.norm() == T::zero() && q.norm() == T::zero(),
            }
    }

    /// Evaluates the symbol at a real frequency.
    ///
    /// At `c = 0`: polynomial (local) symbols evaluate exactly; singular
    /// ones return an error, and callers use [`Self::eval_real_floored`]
    /// with the grid's epsilon floor instead.
    pub fn eval_real(&self, c: T) -> Result<Complex<T>> {
        let sign_power = match self.form {
            KernelForm::Real { sign_power } => sign_power,
            KernelForm::Complex { .. } => {
                return Err(Error::Domain(
                    "complex-field kernel evaluated at a real frequency".into(),
                ))
            }
        };
        if c == T::zero() {
            if !self.local {
                return Err(Error::SingularAtZero);
            }
            return Ok(if self.sigma == T::zero() {
                self.scale
            } else {
                Complex::default()
            });
        }
        Ok(self.scale * real_symbol(c, self.sigma, self.rho, sign_power))
    }

    /// Regularized evaluation: `|c|` is floored at `eps` (half the
    /// fundamental frequency of the target grid, by convention) so singular
    /// symbols stay finite on the DC cell.
    pub fn eval_real_floored(&self, c: T, eps: T) -> Complex<T> {
        if self.local || c.abs() >= eps {
            return self.eval_real(c).unwrap_or_default();
        }
        let sign_power = match self.form {
            KernelForm::Real { sign_power } => sign_power,
            KernelForm::Complex { .. } => return Complex::default(),
        };
        if c == T::zero() && sign_power == 1 {
            // Odd symbols stay odd: their regularized DC value is zero.
            return Complex::default();
        }
        let cf = if c < T::zero() { -eps } else { eps };
        self.scale * real_symbol(cf, self.sigma, self.rho, sign_power)
    }

    /// Evaluates the symbol at a complex frequency.
    pub fn eval_complex(&self, c: Complex<T>) -> Result<Complex<T>> {
        let (p, q) = match self.form {
            KernelForm::Complex { p, q } => (p, q),
            KernelForm::Real { .. } => {
                return Err(Error::Domain(
                    "real-field kernel evaluated at a complex frequency".into(),
                ))
            }
        };
        let r = c.norm();
        if r == T::zero() {
            if !self.local {
                return Err(Error::SingularAtZero);
            }
            return Ok(if self.sigma == T::zero() {
                self.scale
            } else {
                Complex::default()
            });
        }
        let winding = (p - q).re.round();
        Ok(self.scale * complex_symbol(r, c.arg(), self.sigma, self.rho, winding))
    }

    /// Floored complex evaluation (modulus floored at `eps`).
    pub fn eval_complex_floored(&self, c: Complex<T>, eps: T) -> Complex<T> {
        if self.local || c.norm() >= eps {
            return self.eval_complex(c).unwrap_or_default();
        }
        let (p, q) = match self.form {
            KernelForm::Complex { p, q } => (p, q),
            KernelForm::Real { .. } => return Complex::default(),
        };
        let winding = (p - q).re.round();
        if c.norm() == T::zero() && winding != T::zero() {
            return Complex::default();
        }
        let arg = if c.norm() == T::zero() { T::zero() } else { c.arg() };
        self.scale * complex_symbol(eps, arg, self.sigma, self.rho, winding)
    }

    /// The multiplier of the matching inversion filter: over the complex
    /// field `[u~(c)]^{-1} |c|^{2(n-1)}`, over the real field
    /// `[u~(c)]^{-1} |c|^{n-1}` (the choice that reduces to the classical
    /// filtered-backprojection ramp for the delta kernel).
    pub fn inversion_multiplier(&self, n: u32) -> Result<Self> {
        if self.scale.norm() == T::zero() {
            return Err(Error::Degenerate("kernel scale is zero".into()));
        }
        let inv_scale = Complex::new(T::one(), T::zero()) / self.scale;
        match self.form {
            KernelForm::Real { sign_power } => Self::real_power(
                T::of(n as f64 - 1.0) - self.sigma,
                -self.rho,
                sign_power,
                inv_scale,
            ),
            KernelForm::Complex { p, q } => {
                let m = Complex::new(T::of(n as f64 - 1.0), T::zero());
                Self::complex_power(m - p, m - q, inv_scale)
            }
        }
    }

    /// Is this kernel a generalized-Fourier-transform kernel in dimension
    /// `n`: the symbol modulus must be `|c|^{n-1}` (complex field) or
    /// `|c|^{(n-1)/2}` (real field) and `|scale| = 1`, both within `tol`.
    pub fn is_gft_kernel(&self, n: u32, tol: T) -> bool {
        let target = match self.form {
            KernelForm::Real { .. } => T::of((n as f64 - 1.0) / 2.0),
            KernelForm::Complex { .. } => T::of(n as f64 - 1.0),
        };
        (self.sigma - target).abs() <= tol && (self.scale.norm() - T::one()).abs() <= tol
    }
}

fn real_symbol<T: Real>(c: T, sigma: T, rho: T, sign_power: u8) -> Complex<T> {
    let r = c.abs();
    let modulus = r.powf(sigma);
    let phase = if rho == T::zero() { T::zero() } else { rho * r.ln() };
    let mut v = Complex::from_polar(modulus, phase);
    if sign_power == 1 && c < T::zero() {
        v = -v;
    }
    v
}

fn complex_symbol<T: Real>(r: T, arg: T, sigma: T, rho: T, winding: T) -> Complex<T> {
    let modulus = r.powf(sigma);
    let mut phase = winding * arg;
    if rho != T::zero() {
        phase = phase + rho * r.ln();
    }
    Complex::from_polar(modulus, phase)
}

// --- JSON form -------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct KernelJson {
    field: Field,
    sigma: f64,
    rho: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sign: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pq: Option<[[f64; 2]; 2]>,
    scale: [f64; 2],
    local: bool,
}

impl<T: Real> Serialize for MultiplierKernel<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let to64 = |x: T| x.to_f64().unwrap_or(f64::NAN);
        let (sign, pq) = match &self.form {
            KernelForm::Real { sign_power } => (Some(*sign_power), None),
            KernelForm::Complex { p, q } => (
                None,
                Some([[to64(p.re), to64(p.im)], [to64(q.re), to64(q.im)]]),
            ),
        };
        KernelJson {
            field: self.field(),
            sigma: to64(self.sigma),
            rho: to64(self.rho),
            sign,
            pq,
            scale: [to64(self.scale.re), to64(self.scale.im)],
            local: self.local,
        }
        .serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for MultiplierKernel<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let j = KernelJson::deserialize(d)?;
        let scale = T::cplx(j.scale[0], j.scale[1]);
        let kernel = match j.field {
            Field::Real => {
                let sign = j.sign.ok_or_else(|| DeError::custom("real kernel needs `sign`"))?;
                MultiplierKernel::real_power(T::of(j.sigma), T::of(j.rho), sign, scale)
            }
            Field::Complex => {
                let pq = j.pq.ok_or_else(|| DeError::custom("complex kernel needs `pq`"))?;
                MultiplierKernel::complex_power(
                    T::cplx(pq[0][0], pq[0][1]),
                    T::cplx(pq[1][0], pq[1][1]),
                    scale,
                )
            }
        }
        .map_err(DeError::custom)?;
        // sigma/rho/local in the JSON are derived data; reject inconsistency.
        if (kernel.sigma.to_f64().unwrap() - j.sigma).abs() > 1e-9
            || (kernel.rho.to_f64().unwrap() - j.rho).abs() > 1e-9
        {
            return Err(DeError::custom("sigma/rho inconsistent with the kernel form"));
        }
        if kernel.local != j.local {
            return Err(DeError::custom("locality flag inconsistent with the kernel form"));
        }
        Ok(kernel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type K = MultiplierKernel<f64>;

    #[test]
    fn delta_is_one_everywhere() {
        let k = K::delta();
        assert!(k.is_local());
        assert!(k.is_identity());
        for &c in &[-3.0, -0.5, 0.0, 1.0, 7.25] {
            assert_eq!(k.eval_real(c).unwrap(), Complex::new(1.0, 0.0));
        }
    }

    #[test]
    fn polynomial_evaluation() {
        // u~(c) = c
        let k = K::real_power(1.0, 0.0, 1, Complex::new(1.0, 0.0)).unwrap();
        assert!(k.is_local());
        assert_eq!(k.eval_real(2.0).unwrap(), Complex::new(2.0, 0.0));
        assert_eq!(k.eval_real(-2.0).unwrap(), Complex::new(-2.0, 0.0));
        assert_eq!(k.eval_real(0.0).unwrap(), Complex::new(0.0, 0.0));
    }

    #[test]
    fn complex_modulus_squared() {
        // (p,q) = (1,1): u~(c) = |c|^2
        let one = Complex::new(1.0, 0.0);
        let k = K::complex_power(one, one, one).unwrap();
        let c = Complex::from_polar(3.0, std::f64::consts::FRAC_PI_4);
        let v = k.eval_complex(c).unwrap();
        assert!((v - Complex::new(9.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn winding_must_be_integer() {
        let r = K::complex_power(
            Complex::new(0.5, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
        );
        assert!(r.is_err());
    }

    #[test]
    fn inversion_multiplier_exponents() {
        // complex field, n=2, u~ == 1  ->  |c|^2
        let k = K::complex_delta();
        let inv = k.inversion_multiplier(2).unwrap();
        assert_eq!(inv.sigma(), 2.0);
        let v = inv.eval_complex(Complex::new(0.0, 2.0)).unwrap();
        assert!((v - Complex::new(4.0, 0.0)).norm() < 1e-12);

        // real field, n=2, u~ == 1  ->  |c| (the classical ramp)
        let inv = K::delta().inversion_multiplier(2).unwrap();
        assert_eq!(inv.sigma(), 1.0);
        assert_eq!(inv.eval_real(-3.0).unwrap(), Complex::new(3.0, 0.0));

        // real field, n=3, u~(c)=c  ->  sign(c) |c|
        let k = K::real_power(1.0, 0.0, 1, Complex::new(1.0, 0.0)).unwrap();
        let inv = k.inversion_multiplier(3).unwrap();
        assert_eq!(inv.sigma(), 1.0);
        assert_eq!(inv.eval_real(-2.0).unwrap(), Complex::new(-2.0, 0.0));
    }

    #[test]
    fn composition_identity() {
        // eval(inv) * eval(k) = |c|^{n-1} (real) for sampled c != 0.
        let k = K::real_power(0.75, 0.4, 1, Complex::new(0.0, -1.0)).unwrap();
        let inv = k.inversion_multiplier(3).unwrap();
        for &c in &[-4.0, -1.3, 0.2, 2.0, 31.0f64] {
            let product = k.eval_real(c).unwrap() * inv.eval_real(c).unwrap();
            let want = Complex::new(c.abs().powi(2), 0.0);
            assert!((product - want).norm() <= 1e-12 * (1.0 + want.norm()));
        }
        // complex field: |c|^{2(n-1)}
        let k = K::complex_power(
            Complex::new(1.0, 0.3),
            Complex::new(0.0, 0.3),
            Complex::new(0.5, 0.5),
        )
        .unwrap();
        let inv = k.inversion_multiplier(2).unwrap();
        for &(re, im) in &[(1.0, 0.5), (-2.0, 0.25), (0.0, -3.0)] {
            let c = Complex::new(re, im);
            let product = k.eval_complex(c).unwrap() * inv.eval_complex(c).unwrap();
            let want = Complex::new(c.norm_sqr(), 0.0);
            assert!((product - want).norm() <= 1e-12 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn gft_conditions() {
        // complex field, n=3, (p,q)=(1,1): |u~| = |c|^2 = |c|^{n-1}
        let one = Complex::new(1.0, 0.0);
        assert!(K::complex_power(one, one, one).unwrap().is_gft_kernel(3, 1e-12));
        // real field, n=3, u~(c)=c: |u~| = |c| = |c|^{(n-1)/2}
        assert!(K::real_power(1.0, 0.0, 1, one).unwrap().is_gft_kernel(3, 1e-12));
        // real field, n=2, u~(c)=c: |c| != |c|^{1/2}
        assert!(!K::real_power(1.0, 0.0, 1, one).unwrap().is_gft_kernel(2, 1e-12));
    }

    #[test]
    fn nonlocal_family_is_gft_for_all_rho() {
        for &rho in &[0.0, 1.0, -2.7] {
            let k = K::nonlocal_gft_family(Field::Real, 3, rho);
            assert_eq!(k.sigma(), 1.0);
            assert!(k.is_gft_kernel(3, 1e-12));
            assert!(!k.is_local());

            let k = K::nonlocal_gft_family(Field::Complex, 2, rho);
            assert!(k.is_gft_kernel(2, 1e-12));
        }
        // lambda=1, mu=0 member over C^2: (p,q) = (1,0), |u~| = |c|
        let k = K::complex_power(
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
        )
        .unwrap();
        assert!(k.is_gft_kernel(2, 1e-12));
    }

    #[test]
    fn gft_closure_under_inversion() {
        // |eval(inv)(c)| = |eval(k)(c)| when k is a GFT kernel.
        let k = K::nonlocal_gft_family(Field::Real, 3, 1.3);
        let inv = k.inversion_multiplier(3).unwrap();
        assert!(inv.is_gft_kernel(3, 1e-12));
        for &c in &[-5.0, -0.3, 0.7, 11.0f64] {
            let a = k.eval_real(c).unwrap().norm();
            let b = inv.eval_real(c).unwrap().norm();
            assert!((a - b).abs() < 1e-12 * (1.0 + a));
        }
    }

    #[test]
    fn local_kernels_are_polynomials_under_finite_differences() {
        // Finite differences of order m+1 vanish exactly on integer samples.
        let k = K::real_power(2.0, 0.0, 0, Complex::new(3.0, 0.0)).unwrap();
        assert!(k.is_local());
        let mut vals: Vec<f64> = (0..=8).map(|c| k.eval_real(c as f64).unwrap().re).collect();
        for _ in 0..3 {
            vals = vals.windows(2).map(|w| w[1] - w[0]).collect();
        }
        assert!(vals.iter().all(|&v| v == 0.0), "{vals:?}");

        // |c|^{1/2} is not local and differences do not vanish.
        let k = K::real_power(0.5, 0.0, 0, Complex::new(1.0, 0.0)).unwrap();
        assert!(!k.is_local());
    }

    #[test]
    fn floored_eval_only_touches_small_frequencies() {
        let k = K::real_power(-1.0, 0.5, 0, Complex::new(1.0, 0.0)).unwrap();
        let eps = 0.25;
        assert_eq!(
            k.eval_real_floored(1.0, eps),
            k.eval_real(1.0).unwrap()
        );
        let v = k.eval_real_floored(0.0, eps);
        assert!((v.norm() - 4.0).abs() < 1e-12); // |eps|^{-1}
    }

    #[test]
    fn json_round_trip() {
        let k = K::real_power(1.0, 0.0, 1, Complex::new(0.0, 1.0)).unwrap();
        let s = serde_json::to_string(&k).unwrap();
        let back: K = serde_json::from_str(&s).unwrap();
        assert_eq!(k, back);

        let k = K::complex_power(
            Complex::new(1.0, 0.25),
            Complex::new(0.0, 0.25),
            Complex::new(1.0, 0.0),
        )
        .unwrap();
        let s = serde_json::to_string(&k).unwrap();
        let back: K = serde_json::from_str(&s).unwrap();
        assert_eq!(k, back);

        // Tampered locality flag is rejected.
        let bad = r#"{"field":"real","sigma":0.5,"rho":0.0,"sign":0,"scale":[1.0,0.0],"local":true}"#;
        assert!(serde_json::from_str::<K>(bad).is_err());
    }
}
