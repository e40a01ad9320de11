//! Complexes of lines and their plane-family transforms.
//!
//! A line complex in dimension `n` is the n-parameter family of lines
//! `(x, u(t) x + alpha)`, `x` scalar, `alpha` in the last `n-1` coordinates,
//! cut out by polynomial curves `u_1(t), ..., u_{n-1}(t)` (lines meeting a
//! fixed curve at infinity). The Crofton function of the complex counts the
//! parameters `t` solving `eta = -xi . u(t)`; it weights the inversion
//! formula and decides which frequencies are recoverable at all.
//!
//! Root counting is exact (Sturm sequences over the rationals, gcd over the
//! Gaussian rationals); see [`crate::polyexact`]. The forward transform and
//! the Fourier-domain inversion hang on the same slice relation as the
//! Radon module: `phi_hat(xi, t) = sqrt(2 pi) f_hat(-xi u(t), xi) a~(-xi, t)`.

use num_complex::Complex;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::{FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::dft::{dft_forward, dft_inverse, line_forward, line_frequencies, line_inverse};
use crate::error::{Error, Result};
use crate::grid::{lagrange6_weights, GridFunction, GridGeometry, Spectrum};
use crate::multipliers::Field;
use crate::polyexact::{count_real_roots, real_roots, GaussPoly, RatPoly, RootCount};
use crate::scalar::Real;

/// Parameter window of a complex: an interval over the real field, a disc
/// radius over the complex field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamWindow<T> {
    Interval { lo: T, hi: T },
    Disc { radius: T },
}

/// A complex of lines: polynomial curves `u_i(t)` plus a parameter window.
#[derive(Debug, Clone, PartialEq)]
pub struct LineComplex<T> {
    field: Field,
    n: u32,
    /// Ascending coefficients per curve; imaginary parts are zero over the
    /// real field.
    curves: Vec<Vec<Complex<T>>>,
    window: ParamWindow<T>,
}

impl<T: Real> LineComplex<T> {
    /// Real-field complex from real coefficient arrays (ascending order).
    pub fn real(n: u32, curves: Vec<Vec<f64>>, lo: T, hi: T) -> Result<Self> {
        let curves = curves
            .into_iter()
            .map(|c| c.into_iter().map(|v| T::cplx(v, 0.0)).collect())
            .collect();
        Self::new(Field::Real, n, curves, ParamWindow::Interval { lo, hi })
    }

    /// Complex-field complex from complex coefficient arrays.
    pub fn complex(n: u32, curves: Vec<Vec<(f64, f64)>>, radius: T) -> Result<Self> {
        let curves = curves
            .into_iter()
            .map(|c| c.into_iter().map(|(re, im)| T::cplx(re, im)).collect())
            .collect();
        Self::new(Field::Complex, n, curves, ParamWindow::Disc { radius })
    }

    fn new(
        field: Field,
        n: u32,
        curves: Vec<Vec<Complex<T>>>,
        window: ParamWindow<T>,
    ) -> Result<Self> {
        if n < 2 || curves.len() != (n - 1) as usize {
            return Err(Error::ShapeMismatch(format!(
                "a complex in dimension {n} needs {} curves, got {}",
                n - 1,
                curves.len()
            )));
        }
        // Nonsingularity: the derivative vector must not vanish identically.
        let degenerate = curves.iter().all(|c| c.len() <= 1);
        if degenerate {
            return Err(Error::Domain(
                "all curves constant: the map t -> u(t) is singular".into(),
            ));
        }
        match window {
            ParamWindow::Interval { lo, hi } if lo >= hi => {
                return Err(Error::Domain("empty parameter window".into()))
            }
            ParamWindow::Disc { radius } if radius <= T::zero() => {
                return Err(Error::Domain("empty parameter disc".into()))
            }
            _ => {}
        }
        Ok(Self { field, n, curves, window })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn window(&self) -> ParamWindow<T> {
        self.window
    }

    pub fn curves(&self) -> &[Vec<Complex<T>>] {
        &self.curves
    }

    /// `u_i(t)` over the real field.
    pub fn eval_curve(&self, i: usize, t: T) -> T {
        let mut acc = T::zero();
        for c in self.curves[i].iter().rev() {
            acc = acc * t + c.re;
        }
        acc
    }

    /// `u_i'(t)` over the real field.
    pub fn eval_curve_derivative(&self, i: usize, t: T) -> T {
        let mut acc = T::zero();
        let n = self.curves[i].len();
        for k in (1..n).rev() {
            acc = acc * t + self.curves[i][k].re * T::of(k as f64);
        }
        acc
    }

    /// `u_i(t)` over the complex field.
    pub fn eval_curve_complex(&self, i: usize, t: Complex<T>) -> Complex<T> {
        let mut acc = Complex::<T>::default();
        for c in self.curves[i].iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Coefficients of `xi . u(t) + eta` over the real field, as exact
    /// rationals of the float inputs.
    fn incidence_poly_real(&self, eta: f64, xi: &[f64]) -> Result<RatPoly> {
        let deg = self.curves.iter().map(|c| c.len()).max().unwrap_or(1);
        let zero = BigRational::from_float(0.0).unwrap();
        let mut coeffs = vec![zero; deg];
        for (i, curve) in self.curves.iter().enumerate() {
            let xi_r = BigRational::from_float(xi[i])
                .ok_or_else(|| Error::Domain("non-finite xi".into()))?;
            for (k, c) in curve.iter().enumerate() {
                let c_r = BigRational::from_float(c.re.to_f64().unwrap())
                    .ok_or_else(|| Error::Domain("non-finite coefficient".into()))?;
                coeffs[k] = &coeffs[k] + &xi_r * c_r;
            }
        }
        let eta_r =
            BigRational::from_float(eta).ok_or_else(|| Error::Domain("non-finite eta".into()))?;
        coeffs[0] = &coeffs[0] + eta_r;
        Ok(RatPoly::new(coeffs))
    }

    fn incidence_poly_complex(&self, eta: (f64, f64), xi: &[(f64, f64)]) -> Result<GaussPoly> {
        let deg = self.curves.iter().map(|c| c.len()).max().unwrap_or(1);
        let mut coeffs = vec![(0.0f64, 0.0f64); deg];
        // The xi_i u_i products are accumulated in f64; the floats obtained
        // are the polynomial being counted, converted to rationals exactly.
        for (i, curve) in self.curves.iter().enumerate() {
            let (xr, xim) = xi[i];
            for (k, c) in curve.iter().enumerate() {
                let cr = c.re.to_f64().unwrap();
                let ci = c.im.to_f64().unwrap();
                coeffs[k].0 += xr * cr - xim * ci;
                coeffs[k].1 += xr * ci + xim * cr;
            }
        }
        coeffs[0].0 += eta.0;
        coeffs[0].1 += eta.1;
        GaussPoly::from_f64(&coeffs)
    }
}

/// Crofton function over the real field: the number of distinct in-window
/// parameters `t` with `eta = -xi . u(t)`. The zero polynomial reports
/// [`RootCount::Infinite`].
pub fn crofton_function<T: Real>(
    complex: &LineComplex<T>,
    eta: f64,
    xi: &[f64],
) -> Result<RootCount> {
    if xi.len() != (complex.n - 1) as usize {
        return Err(Error::ShapeMismatch("xi length != n-1".into()));
    }
    match complex.field {
        Field::Real => {
            let p = complex.incidence_poly_real(eta, xi)?;
            let ParamWindow::Interval { lo, hi } = complex.window else {
                return Err(Error::Domain("real complex needs an interval window".into()));
            };
            let lo = BigRational::from_float(lo.to_f64().unwrap()).unwrap();
            let hi = BigRational::from_float(hi.to_f64().unwrap()).unwrap();
            Ok(count_real_roots(&p, &lo, &hi))
        }
        Field::Complex => Err(Error::Domain(
            "complex-field Crofton takes complex (eta, xi); use crofton_function_complex".into(),
        )),
    }
}

/// Complex-field Crofton function at complex `(eta, xi)`: the number of
/// distinct complex roots (multiplicity-aware distinct count).
pub fn crofton_function_complex<T: Real>(
    complex: &LineComplex<T>,
    eta: (f64, f64),
    xi: &[(f64, f64)],
) -> Result<RootCount> {
    if complex.field != Field::Complex {
        return Err(Error::Domain("complex Crofton needs a complex-field complex".into()));
    }
    if xi.len() != (complex.n - 1) as usize {
        return Err(Error::ShapeMismatch("xi length != n-1".into()));
    }
    let p = complex.incidence_poly_complex(eta, xi)?;
    Ok(p.distinct_complex_roots())
}

/// The a.e.-constant value of the complex-field Crofton function, computed
/// as the common distinct-root count over 64 seeded random samples. All
/// samples must agree.
pub fn crofton_number<T: Real>(complex: &LineComplex<T>) -> Result<usize> {
    if complex.field != Field::Complex {
        return Err(Error::Domain("the Crofton number is a complex-field notion".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x43726f66);
    let l = (complex.n - 1) as usize;
    let mut value: Option<usize> = None;
    for _ in 0..64 {
        let eta = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let xi: Vec<(f64, f64)> = (0..l)
            .map(|_| (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
            .collect();
        let c = crofton_function_complex(complex, eta, &xi)?;
        let c = c.finite().ok_or_else(|| {
            Error::Construction("degenerate sample while estimating the Crofton number".into())
        })?;
        match value {
            None => value = Some(c),
            Some(v) if v != c => {
                return Err(Error::Construction(format!(
                    "Crofton samples disagree: {v} vs {c}"
                )))
            }
            _ => {}
        }
    }
    let v = value.expect("64 samples drawn");
    if v == 0 {
        return Err(Error::Construction("Crofton number is zero".into()));
    }
    Ok(v)
}

/// `omega(xi, t) = sum_i xi_i u_i'(t)` over the real field.
pub fn omega_jacobian<T: Real>(complex: &LineComplex<T>, xi: &[T], t: T) -> T {
    let mut acc = T::zero();
    for (i, &x) in xi.iter().enumerate() {
        acc = acc + x * complex.eval_curve_derivative(i, t);
    }
    acc
}

/// Complex-field Jacobian `sum_i xi_i u_i'(t)`.
pub fn omega_jacobian_complex<T: Real>(
    complex: &LineComplex<T>,
    xi: &[Complex<T>],
    t: Complex<T>,
) -> Complex<T> {
    let mut acc = Complex::<T>::default();
    for (i, &x) in xi.iter().enumerate() {
        let curve = &complex.curves[i];
        let mut d = Complex::<T>::default();
        for k in (1..curve.len()).rev() {
            d = d * t + curve[k] * T::of(k as f64);
        }
        acc = acc + x * d;
    }
    acc
}

/// Kernel family for the plane-family transforms, in multiplier form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
#[serde(bound(
    serialize = "T: serde::Serialize",
    deserialize = "T: serde::Deserialize<'de>"
))]
pub enum ComplexKernel<T> {
    /// The delta kernel (`a~ == 1`): the plain incidence transform.
    Delta,
    /// `a~(xi, t) = |sum_i u_i'(t) xi_i|^{1/2 + i rho}` (real field); the
    /// unitary kernel for complexes with unit Crofton function.
    Example { rho: T },
    /// `a~(xi, t) = Cr^{-1/2} omega(xi, t) prod_p xi_p^{lambda_p}
    /// conj(xi_p)^{-lambda_p}` (complex field). With all `lambda_p = 0`
    /// the kernel is local.
    Power { lambdas: Vec<[f64; 2]> },
}

impl<T: Real> ComplexKernel<T> {
    pub fn example(rho: T) -> Self {
        ComplexKernel::Example { rho }
    }

    pub fn is_delta(&self) -> bool {
        matches!(self, ComplexKernel::Delta)
    }

    /// Real-field symbol `a~(xi, t)`.
    pub fn eval(&self, complex: &LineComplex<T>, xi: &[T], t: T) -> Result<Complex<T>> {
        match self {
            ComplexKernel::Delta => Ok(Complex::new(T::one(), T::zero())),
            ComplexKernel::Example { rho } => {
                let w = omega_jacobian(complex, xi, t).abs();
                if w == T::zero() {
                    return Ok(Complex::default());
                }
                Ok(Complex::from_polar(w.sqrt(), *rho * w.ln()))
            }
            ComplexKernel::Power { .. } => Err(Error::Domain(
                "the power family is a complex-field kernel".into(),
            )),
        }
    }

    /// Complex-field symbol; `crofton` is the complex Crofton number.
    pub fn eval_complex(
        &self,
        complex: &LineComplex<T>,
        xi: &[Complex<T>],
        t: Complex<T>,
        crofton: usize,
    ) -> Result<Complex<T>> {
        match self {
            ComplexKernel::Delta => Ok(Complex::new(T::one(), T::zero())),
            ComplexKernel::Example { .. } => Err(Error::Domain(
                "the example kernel is stated for real-field line complexes".into(),
            )),
            ComplexKernel::Power { lambdas } => {
                if lambdas.len() != xi.len() {
                    return Err(Error::ShapeMismatch("one lambda per xi coordinate".into()));
                }
                let w = omega_jacobian_complex(complex, xi, t);
                let mut v = w * T::of(1.0 / (crofton as f64).sqrt());
                for (l, x) in lambdas.iter().zip(xi) {
                    if x.norm() == T::zero() {
                        return Ok(Complex::default());
                    }
                    // xi^lambda conj(xi)^{-lambda} = exp(2 i lambda arg xi)
                    // on the principal branch.
                    let lam = Complex::new(T::of(l[0]), T::of(l[1]));
                    let phase =
                        (Complex::new(T::zero(), T::of(2.0)) * lam * x.arg()).exp();
                    v = v * phase;
                }
                Ok(v)
            }
        }
    }
}

/// Builds the unitary example kernel for a complex whose Crofton function
/// is identically 1, checking that hypothesis on the supplied sample set.
pub fn build_example_kernel<T: Real>(
    complex: &LineComplex<T>,
    rho: T,
    samples: &[(f64, Vec<f64>)],
) -> Result<ComplexKernel<T>> {
    for (eta, xi) in samples {
        let c = crofton_function(complex, *eta, xi)?;
        if c != RootCount::Finite(1) {
            return Err(Error::Hypothesis(format!(
                "Crofton({eta}, {xi:?}) = {c:?}, expected exactly 1"
            )));
        }
    }
    Ok(ComplexKernel::Example { rho })
}

/// Uniform parameter grid for the transforms (midpoint nodes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TGrid<T> {
    pub lo: T,
    pub hi: T,
    pub count: usize,
}

impl<T: Real> TGrid<T> {
    pub fn spacing(&self) -> T {
        (self.hi - self.lo) / T::of(self.count as f64)
    }

    pub fn node(&self, j: usize) -> T {
        self.lo + self.spacing() * T::of(j as f64 + 0.5)
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..self.count).map(|j| self.node(j)).collect()
    }
}

/// Sampled transform output: `phi(alpha, t)` on the source function's
/// y-box (alpha) times a parameter grid.
#[derive(Debug, Clone)]
pub struct PlaneFamilyFunction<T> {
    n: u32,
    alpha_geom: GridGeometry<T>,
    t_grid: TGrid<T>,
    /// Per t node: alpha samples, row-major.
    values: Vec<Vec<Complex<T>>>,
    /// Per t node: false when lines at this parameter carry the function
    /// outside the alpha box and truncation bites.
    validity: Vec<bool>,
}

impl<T: Real> PlaneFamilyFunction<T> {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha_geometry(&self) -> &GridGeometry<T> {
        &self.alpha_geom
    }

    pub fn t_grid(&self) -> TGrid<T> {
        self.t_grid
    }

    pub fn values(&self) -> &[Vec<Complex<T>>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Vec<Complex<T>>] {
        &mut self.values
    }

    pub fn validity(&self) -> &[bool] {
        &self.validity
    }

    pub(crate) fn from_parts(
        n: u32,
        alpha_geom: GridGeometry<T>,
        t_grid: TGrid<T>,
        values: Vec<Vec<Complex<T>>>,
        validity: Vec<bool>,
    ) -> Self {
        Self { n, alpha_geom, t_grid, values, validity }
    }

    /// Unitary Fourier transform over alpha of every t-slice.
    pub fn alpha_spectra(&self) -> Vec<Vec<Complex<T>>> {
        let geom = &self.alpha_geom;
        self.values
            .par_iter()
            .map(|slice| {
                let mut data = slice.clone();
                let mut planner = FftPlanner::<T>::new();
                for axis in 0..geom.ndim() {
                    let m = geom.dims()[axis];
                    let plan = planner.plan_fft(m, FftDirection::Inverse);
                    apply_alpha_axis(&mut data, geom, axis, &plan, true);
                }
                data
            })
            .collect()
    }
}

/// Applies the 1-D unitary transform along one axis of an alpha slice.
fn apply_alpha_axis<T: Real>(
    data: &mut [Complex<T>],
    geom: &GridGeometry<T>,
    axis: usize,
    plan: &std::sync::Arc<dyn rustfft::Fft<T>>,
    forward: bool,
) {
    let dims = geom.dims();
    let m = dims[axis];
    let stride: usize = dims[axis + 1..].iter().product();
    let outer: usize = dims[..axis].iter().product();
    let mut lane = vec![Complex::<T>::default(); m];
    for blk in 0..outer {
        for inner in 0..stride {
            let base = blk * m * stride + inner;
            for j in 0..m {
                lane[j] = data[base + j * stride];
            }
            if forward {
                line_forward(&mut lane, geom.spacing()[axis], geom.origin()[axis], plan);
            } else {
                line_inverse(&mut lane, geom.spacing()[axis], geom.origin()[axis], plan);
            }
            for j in 0..m {
                data[base + j * stride] = lane[j];
            }
        }
    }
}

fn split_geometry<T: Real>(geom: &GridGeometry<T>) -> Result<GridGeometry<T>> {
    if geom.ndim() < 2 {
        return Err(Error::Domain("need x + y axes".into()));
    }
    GridGeometry::with_origin(&geom.dims()[1..], &geom.spacing()[1..], &geom.origin()[1..])
}

/// Forward plane-family transform over the real field (`n` = 2 or 3):
/// line integrals over the complex followed by the kernel as an
/// alpha-frequency multiplier `a~(-xi, t)`. The delta kernel skips the
/// multiplier step entirely.
pub fn forward_ja<T: Real>(
    f: &GridFunction<T>,
    complex: &LineComplex<T>,
    kernel: &ComplexKernel<T>,
    t_grid: TGrid<T>,
) -> Result<PlaneFamilyFunction<T>> {
    if complex.field != Field::Real {
        return Err(Error::Domain("forward_ja runs over the real field".into()));
    }
    let geom = f.geometry();
    let n = geom.ndim();
    if n != complex.n as usize || !(2..=3).contains(&n) {
        return Err(Error::ShapeMismatch(format!(
            "complex dimension {} vs grid dimension {n} (supported: 2, 3)",
            complex.n
        )));
    }
    let alpha_geom = split_geometry(geom)?;
    let ext_x = T::of(geom.dims()[0] as f64) * geom.spacing()[0] * T::of(0.5);
    let nodes = t_grid.nodes();

    let mut values: Vec<Vec<Complex<T>>> = nodes
        .par_iter()
        .map(|&t| incidence_slice(f, complex, t))
        .collect();
    let validity: Vec<bool> = nodes
        .iter()
        .map(|&t| {
            (0..n - 1).all(|i| {
                let ui = complex.eval_curve(i, t).abs();
                let ext_y =
                    T::of(geom.dims()[i + 1] as f64) * geom.spacing()[i + 1] * T::of(0.5);
                ui * ext_x <= ext_y * T::of(0.5)
            })
        })
        .collect();

    if !kernel.is_delta() {
        let freq_axes: Vec<Vec<T>> = (0..alpha_geom.ndim())
            .map(|ax| line_frequencies(alpha_geom.dims()[ax], alpha_geom.spacing()[ax]))
            .collect();
        values = values
            .into_par_iter()
            .zip(nodes.par_iter())
            .map(|(mut slice, &t)| {
                let mut planner = FftPlanner::<T>::new();
                for axis in 0..alpha_geom.ndim() {
                    let plan = planner.plan_fft(alpha_geom.dims()[axis], FftDirection::Inverse);
                    apply_alpha_axis(&mut slice, &alpha_geom, axis, &plan, true);
                }
                let mut xi = vec![T::zero(); alpha_geom.ndim()];
                for (flat, v) in slice.iter_mut().enumerate() {
                    let idx = alpha_geom.multi_index(flat);
                    for (ax, &j) in idx.iter().enumerate() {
                        xi[ax] = -freq_axes[ax][j];
                    }
                    *v = *v * kernel.eval(complex, &xi, t).unwrap_or_default();
                }
                for axis in 0..alpha_geom.ndim() {
                    let plan = planner.plan_fft(alpha_geom.dims()[axis], FftDirection::Forward);
                    apply_alpha_axis(&mut slice, &alpha_geom, axis, &plan, false);
                }
                slice
            })
            .collect();
    }

    Ok(PlaneFamilyFunction {
        n: n as u32,
        alpha_geom,
        t_grid,
        values,
        validity,
    })
}

/// Line integrals at fixed parameter: `phi(alpha) = \int f(x, u(t)x + alpha) dx`.
fn incidence_slice<T: Real>(
    f: &GridFunction<T>,
    complex: &LineComplex<T>,
    t: T,
) -> Vec<Complex<T>> {
    let geom = f.geometry();
    let n = geom.ndim();
    let alpha_len: usize = geom.dims()[1..].iter().product();
    let mut slice = vec![Complex::<T>::default(); alpha_len];
    let hx = geom.spacing()[0];
    let u: Vec<T> = (0..n - 1).map(|i| complex.eval_curve(i, t)).collect();

    for jx in 0..geom.dims()[0] {
        let x = geom.coord(0, jx);
        match n {
            2 => {
                for (a0, v) in slice.iter_mut().enumerate() {
                    let target = geom.coord(1, a0) + u[0] * x;
                    *v = *v + interp_y1(f, jx, target) * hx;
                }
            }
            3 => {
                let d1 = geom.dims()[1];
                let d2 = geom.dims()[2];
                for a0 in 0..d1 {
                    let t0 = geom.coord(1, a0) + u[0] * x;
                    for a1 in 0..d2 {
                        let t1 = geom.coord(2, a1) + u[1] * x;
                        let v = interp_y2(f, jx, t0, t1);
                        slice[a0 * d2 + a1] = slice[a0 * d2 + a1] + v * hx;
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    slice
}

/// 6th-order interpolation along the single y axis of a 2-d grid.
fn interp_y1<T: Real>(f: &GridFunction<T>, jx: usize, y: T) -> Complex<T> {
    let geom = f.geometry();
    let m = geom.dims()[1] as isize;
    let t = (y - geom.origin()[1]) / geom.spacing()[1];
    if !t.is_finite() {
        return Complex::default();
    }
    let j = t.floor();
    let u = t - j;
    let j = match j.to_isize() {
        Some(v) => v,
        None => return Complex::default(),
    };
    if j + 3 < 0 || j - 2 >= m {
        return Complex::default();
    }
    let w = lagrange6_weights(u);
    let base = jx * geom.dims()[1];
    let samples = f.samples();
    let mut acc = Complex::<T>::default();
    for (o, wo) in w.iter().enumerate() {
        let jj = j - 2 + o as isize;
        if jj >= 0 && jj < m {
            acc = acc + samples[base + jj as usize] * *wo;
        }
    }
    acc
}

/// Tensor 6th-order interpolation over the two y axes of a 3-d grid.
fn interp_y2<T: Real>(f: &GridFunction<T>, jx: usize, y0: T, y1: T) -> Complex<T> {
    let geom = f.geometry();
    let d1 = geom.dims()[1] as isize;
    let d2 = geom.dims()[2] as isize;
    let t0 = (y0 - geom.origin()[1]) / geom.spacing()[1];
    let t1 = (y1 - geom.origin()[2]) / geom.spacing()[2];
    if !t0.is_finite() || !t1.is_finite() {
        return Complex::default();
    }
    let (j0f, j1f) = (t0.floor(), t1.floor());
    let (u0, u1) = (t0 - j0f, t1 - j1f);
    let (Some(j0), Some(j1)) = (j0f.to_isize(), j1f.to_isize()) else {
        return Complex::default();
    };
    if j0 + 3 < 0 || j0 - 2 >= d1 || j1 + 3 < 0 || j1 - 2 >= d2 {
        return Complex::default();
    }
    let w0 = lagrange6_weights(u0);
    let w1 = lagrange6_weights(u1);
    let samples = f.samples();
    let base = jx * (d1 as usize) * (d2 as usize);
    let mut acc = Complex::<T>::default();
    for (o0, a) in w0.iter().enumerate() {
        let q0 = j0 - 2 + o0 as isize;
        if q0 < 0 || q0 >= d1 {
            continue;
        }
        let row = base + q0 as usize * d2 as usize;
        for (o1, b) in w1.iter().enumerate() {
            let q1 = j1 - 2 + o1 as isize;
            if q1 >= 0 && q1 < d2 {
                acc = acc + samples[row + q1 as usize] * (*a * *b);
            }
        }
    }
    acc
}

/// Fourier-slice defect for the plane-family transform: compares the
/// alpha-Fourier transform of `forward_ja` output with
/// `sqrt(2 pi) f_hat(-xi u(t), xi) a~(-xi, t)` over all sampled `(xi, t)`
/// with valid truncation. Relative to the largest slice value.
pub fn fourier_slice_defect<T: Real>(
    f: &GridFunction<T>,
    complex: &LineComplex<T>,
    kernel: &ComplexKernel<T>,
    t_grid: TGrid<T>,
) -> Result<T> {
    let phi = forward_ja(f, complex, kernel, t_grid)?;
    let spectra = phi.alpha_spectra();
    let spec = dft_forward(f)?;
    let spec_fn = GridFunction::new(spec.geometry().clone(), spec.samples().to_vec())?;
    let alpha_geom = phi.alpha_geometry();
    let nd = alpha_geom.ndim();
    let freq_axes: Vec<Vec<T>> = (0..nd)
        .map(|ax| line_frequencies(alpha_geom.dims()[ax], alpha_geom.spacing()[ax]))
        .collect();
    let factor = (T::of(2.0) * T::PI()).sqrt();

    let mut max_diff = T::zero();
    let mut max_val = T::zero();
    for (ti, slice) in spectra.iter().enumerate() {
        if !phi.validity()[ti] {
            continue;
        }
        let t = phi.t_grid().node(ti);
        let u: Vec<T> = (0..nd).map(|i| complex.eval_curve(i, t)).collect();
        for (flat, &got) in slice.iter().enumerate() {
            let idx = alpha_geom.multi_index(flat);
            let mut xi = vec![T::zero(); nd];
            for (ax, &j) in idx.iter().enumerate() {
                xi[ax] = freq_axes[ax][j];
            }
            // eta = -xi . u(t); the xi coordinates sit exactly on the dual
            // grid, so only the eta axis needs interpolation.
            let mut eta = T::zero();
            for (ax, &x) in xi.iter().enumerate() {
                eta = eta - x * u[ax];
            }
            let mut full_idx = vec![0usize; nd + 1];
            full_idx[1..].copy_from_slice(&idx);
            let fh = crate::grid::interp_cubic_along_axis(&spec_fn, &full_idx, 0, eta);
            let neg_xi: Vec<T> = xi.iter().map(|&x| -x).collect();
            let want = fh * factor * kernel.eval(complex, &neg_xi, t).unwrap_or_default();
            max_diff = max_diff.max((got - want).norm());
            max_val = max_val.max(got.norm());
        }
    }
    if max_val == T::zero() {
        return Ok(T::zero());
    }
    Ok(max_diff / max_val)
}

/// Inversion output with the missing-data report.
#[derive(Debug, Clone)]
pub struct JaInversion<T> {
    pub reconstruction: GridFunction<T>,
    /// Fraction of frequency cells with no in-window parameter root.
    pub missing_fraction: T,
    /// Per frequency cell (row-major on the dual grid): true where data
    /// exists. Errors are meaningfully measured on this set only.
    pub coverage: Vec<bool>,
}

/// Inverts the plane-family transform in the frequency domain: for every
/// output frequency `(eta, xi)` the in-window roots of `xi . u(t) + eta`
/// are collected (exact Sturm isolation, float refinement to 1e-12), each
/// root contributing `phi_hat(xi, t_r) / (sqrt(2 pi) a~(-xi, t_r))`,
/// averaged over the roots found. Frequencies with no roots are
/// zero-filled and reported in the coverage mask.
pub fn invert_ja<T: Real>(
    phi: &PlaneFamilyFunction<T>,
    complex: &LineComplex<T>,
    kernel: &ComplexKernel<T>,
    out_geom: &GridGeometry<T>,
) -> Result<JaInversion<T>> {
    if complex.field != Field::Real {
        return Err(Error::Domain("invert_ja runs over the real field".into()));
    }
    let ParamWindow::Interval { lo, hi } = complex.window else {
        return Err(Error::Domain("real complex needs an interval window".into()));
    };
    let nd = out_geom.ndim();
    if nd != complex.n as usize {
        return Err(Error::ShapeMismatch(
            "output grid dimension != complex dimension".into(),
        ));
    }
    let alpha_geom = phi.alpha_geometry();
    if alpha_geom.dims() != &out_geom.dims()[1..] {
        return Err(Error::ShapeMismatch(
            "alpha grid does not match the output y-box".into(),
        ));
    }
    let spectra = phi.alpha_spectra(); // phi_hat(xi, .) per t plane
    let dual = out_geom.dual()?;
    let t_spacing = phi.t_grid().spacing();
    let t_origin = phi.t_grid().node(0);
    let t_count = phi.t_grid().count;
    let sqrt_two_pi = (T::of(2.0) * T::PI()).sqrt();
    let lo_f = lo.to_f64().unwrap();
    let hi_f = hi.to_f64().unwrap();

    let cells: Vec<(Complex<T>, bool)> = (0..dual.len())
        .into_par_iter()
        .map(|flat| {
            let idx = dual.multi_index(flat);
            let eta = dual.coord(0, idx[0]);
            let xi: Vec<T> = (1..nd).map(|ax| dual.coord(ax, idx[ax])).collect();
            let mut alpha_flat = 0usize;
            for ax in 1..nd {
                alpha_flat = alpha_flat * alpha_geom.dims()[ax - 1] + idx[ax];
            }
            let xi_f: Vec<f64> = xi.iter().map(|v| v.to_f64().unwrap()).collect();
            let poly = match complex.incidence_poly_real(eta.to_f64().unwrap(), &xi_f) {
                Ok(p) => p,
                Err(_) => return (Complex::default(), false),
            };
            if poly.is_zero() {
                return (Complex::default(), false);
            }
            let roots = match real_roots(&poly, lo_f, hi_f, 1e-12) {
                Ok(r) => r,
                Err(_) => return (Complex::default(), false),
            };
            if roots.is_empty() {
                return (Complex::default(), false);
            }
            let neg_xi: Vec<T> = xi.iter().map(|&x| -x).collect();
            let mut acc = Complex::<T>::default();
            let mut used = 0usize;
            for r in &roots {
                let t_r = T::of(*r);
                let a_val = kernel.eval(complex, &neg_xi, t_r).unwrap_or_default();
                if a_val.norm() == T::zero() {
                    continue;
                }
                let ph = interp_t(&spectra, alpha_flat, t_origin, t_spacing, t_count, t_r);
                acc = acc + ph / a_val;
                used += 1;
            }
            if used == 0 {
                return (Complex::default(), false);
            }
            (acc / (sqrt_two_pi * T::of(used as f64)), true)
        })
        .collect();

    let coverage: Vec<bool> = cells.iter().map(|c| c.1).collect();
    let samples: Vec<Complex<T>> = cells.into_iter().map(|c| c.0).collect();
    let present = coverage.iter().filter(|&&b| b).count();
    let missing_fraction = T::of(1.0 - present as f64 / coverage.len() as f64);
    let spec = Spectrum::new(out_geom.clone(), samples)?;
    let reconstruction = dft_inverse(&spec)?;
    Ok(JaInversion { reconstruction, missing_fraction, coverage })
}

/// Lagrange-cubic interpolation across t planes at a fixed alpha index,
/// with the stencil shifted inward at the window edges.
fn interp_t<T: Real>(
    spectra: &[Vec<Complex<T>>],
    alpha_flat: usize,
    t_origin: T,
    t_spacing: T,
    t_count: usize,
    t: T,
) -> Complex<T> {
    let pos = (t - t_origin) / t_spacing;
    let pf = pos.to_f64().unwrap_or(0.0);
    if t_count <= 4 {
        let j = pf.round().clamp(0.0, (t_count - 1) as f64) as usize;
        return spectra[j][alpha_flat];
    }
    let mut start = (pf.floor() as isize) - 1;
    start = start.clamp(0, t_count as isize - 4);
    let u = pos - T::of(start as f64);
    let mut w = [T::zero(); 4];
    for (k, wk) in w.iter_mut().enumerate() {
        let mut num = T::one();
        let mut den = T::one();
        for m in 0..4 {
            if m == k {
                continue;
            }
            num = num * (u - T::of(m as f64));
            den = den * T::of(k as f64 - m as f64);
        }
        *wk = num / den;
    }
    let mut acc = Complex::<T>::default();
    for (k, wk) in w.iter().enumerate() {
        acc = acc + spectra[start as usize + k][alpha_flat] * *wk;
    }
    acc
}

/// Frequency-domain relative L2 error restricted to the covered frequency
/// set (the complement of the missing-data mask).
pub fn masked_spectral_error<T: Real>(
    reconstruction: &GridFunction<T>,
    truth: &GridFunction<T>,
    coverage: &[bool],
) -> Result<T> {
    let a = dft_forward(reconstruction)?;
    let b = dft_forward(truth)?;
    if a.samples().len() != coverage.len() {
        return Err(Error::ShapeMismatch("coverage mask length mismatch".into()));
    }
    let mut num = T::zero();
    let mut den = T::zero();
    for (i, (x, y)) in a.samples().iter().zip(b.samples()).enumerate() {
        if coverage[i] {
            num = num + (x - y).norm_sqr();
            den = den + y.norm_sqr();
        }
    }
    if den == T::zero() {
        return Ok(T::zero());
    }
    Ok((num / den).sqrt())
}

/// Real-field unitarity condition defect over the sample set:
/// `max | |a~(xi,t)| - Cr^{-1/2}(-xi u(t), xi) |omega(xi,t)|^{1/2} | / (1 + |omega|^{1/2})`.
/// Samples with degenerate (zero or infinite) Crofton values are skipped.
pub fn gft_condition_defect<T: Real>(
    complex: &LineComplex<T>,
    kernel: &ComplexKernel<T>,
    samples: &[(Vec<f64>, f64)],
) -> Result<T> {
    if complex.field != Field::Real {
        return Err(Error::Domain("use gft_condition_defect_complex over C".into()));
    }
    let mut defect = T::zero();
    for (xi_f, t_f) in samples {
        let xi: Vec<T> = xi_f.iter().map(|&v| T::of(v)).collect();
        let t = T::of(*t_f);
        let omega = omega_jacobian(complex, &xi, t).abs();
        let mut eta = 0.0f64;
        for (i, &x) in xi_f.iter().enumerate() {
            eta -= x * complex.eval_curve(i, t).to_f64().unwrap();
        }
        let cr = match crofton_function(complex, eta, xi_f)? {
            RootCount::Finite(c) if c > 0 => c,
            _ => continue,
        };
        let a_mod = kernel.eval(complex, &xi, t)?.norm();
        let target = omega.sqrt() / T::of((cr as f64).sqrt());
        let d = (a_mod - target).abs() / (T::one() + omega.sqrt());
        defect = defect.max(d);
    }
    Ok(defect)
}

/// Complex-field condition defect: exponent 1 on `|omega|` and the global
/// Crofton number.
pub fn gft_condition_defect_complex<T: Real>(
    complex: &LineComplex<T>,
    kernel: &ComplexKernel<T>,
    samples: &[(Vec<(f64, f64)>, (f64, f64))],
) -> Result<T> {
    if complex.field != Field::Complex {
        return Err(Error::Domain(
            "complex-field condition needs a complex-field complex".into(),
        ));
    }
    let cr = crofton_number(complex)?;
    let mut defect = T::zero();
    for (xi_f, t_f) in samples {
        let xi: Vec<Complex<T>> = xi_f.iter().map(|&(re, im)| T::cplx(re, im)).collect();
        let t = T::cplx(t_f.0, t_f.1);
        let omega = omega_jacobian_complex(complex, &xi, t).norm();
        let a_mod = kernel.eval_complex(complex, &xi, t, cr)?.norm();
        let target = omega / T::of((cr as f64).sqrt());
        let d = (a_mod - target).abs() / (T::one() + omega);
        defect = defect.max(d);
    }
    Ok(defect)
}

/// Seeded random `(xi, t)` samples for the real-field condition checker.
pub fn random_condition_samples(
    l: usize,
    count: usize,
    t_range: (f64, f64),
    seed: u64,
) -> Vec<(Vec<f64>, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let xi: Vec<f64> = (0..l).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let t = rng.gen_range(t_range.0..t_range.1);
            (xi, t)
        })
        .collect()
}

// --- JSON form ---------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct LineComplexJson {
    field: Field,
    n: u32,
    /// Real field: plain numbers; complex field: `[re, im]` pairs.
    curves: Vec<Vec<serde_json::Value>>,
    window: serde_json::Value,
}

impl<T: Real> Serialize for LineComplex<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let to64 = |x: T| x.to_f64().unwrap_or(f64::NAN);
        let curves = self
            .curves
            .iter()
            .map(|c| {
                c.iter()
                    .map(|z| match self.field {
                        Field::Real => serde_json::json!(to64(z.re)),
                        Field::Complex => serde_json::json!([to64(z.re), to64(z.im)]),
                    })
                    .collect()
            })
            .collect();
        let window = match self.window {
            ParamWindow::Interval { lo, hi } => serde_json::json!([to64(lo), to64(hi)]),
            ParamWindow::Disc { radius } => serde_json::json!({ "radius": to64(radius) }),
        };
        LineComplexJson { field: self.field, n: self.n, curves, window }.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for LineComplex<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let j = LineComplexJson::deserialize(d)?;
        let parse_entry = |v: &serde_json::Value| -> std::result::Result<(f64, f64), D::Error> {
            if let Some(x) = v.as_f64() {
                return Ok((x, 0.0));
            }
            if let Some(arr) = v.as_array() {
                if arr.len() == 2 {
                    if let (Some(re), Some(im)) = (arr[0].as_f64(), arr[1].as_f64()) {
                        return Ok((re, im));
                    }
                }
            }
            Err(DeError::custom("coefficient must be a number or [re, im]"))
        };
        let curves: Vec<Vec<(f64, f64)>> = j
            .curves
            .iter()
            .map(|c| c.iter().map(parse_entry).collect())
            .collect::<std::result::Result<_, _>>()?;
        match j.field {
            Field::Real => {
                let arr = j
                    .window
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| DeError::custom("real window must be [lo, hi]"))?;
                let lo = arr[0].as_f64().ok_or_else(|| DeError::custom("bad lo"))?;
                let hi = arr[1].as_f64().ok_or_else(|| DeError::custom("bad hi"))?;
                if curves.iter().flatten().any(|&(_, im)| im != 0.0) {
                    return Err(DeError::custom("real complex with complex coefficients"));
                }
                LineComplex::real(
                    j.n,
                    curves
                        .into_iter()
                        .map(|c| c.into_iter().map(|(re, _)| re).collect())
                        .collect(),
                    T::of(lo),
                    T::of(hi),
                )
                .map_err(DeError::custom)
            }
            Field::Complex => {
                let radius = j
                    .window
                    .get("radius")
                    .and_then(|v| v.as_f64())
                    .ok_or_else(|| DeError::custom("complex window must be {radius}"))?;
                LineComplex::complex(j.n, curves, T::of(radius)).map_err(DeError::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parabola() -> LineComplex<f64> {
        // u = (t, t^2) in R^3
        LineComplex::real(3, vec![vec![0.0, 1.0], vec![0.0, 0.0, 1.0]], -4.0, 4.0).unwrap()
    }

    #[test]
    fn linear_complex_has_unit_crofton() {
        let k = LineComplex::real(3, vec![vec![0.0, 1.0], vec![0.0, 1.0]], -8.0, 8.0).unwrap();
        for eta in [-2.0, 0.0, 1.7] {
            assert_eq!(
                crofton_function(&k, eta, &[1.0, 0.5]).unwrap(),
                RootCount::Finite(1)
            );
        }
    }

    #[test]
    fn parabola_crofton_counts() {
        let k = parabola();
        // xi=(0,1): t^2 + eta: eta=-1 -> 2 roots; eta=1 -> 0 real roots
        assert_eq!(
            crofton_function(&k, -1.0, &[0.0, 1.0]).unwrap(),
            RootCount::Finite(2)
        );
        assert_eq!(
            crofton_function(&k, 1.0, &[0.0, 1.0]).unwrap(),
            RootCount::Finite(0)
        );
    }

    #[test]
    fn complex_crofton_numbers_match_degree() {
        let k2 = LineComplex::complex(
            3,
            vec![
                vec![(0.0, 0.0), (1.0, 0.0)],
                vec![(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
            ],
            4.0,
        )
        .unwrap();
        assert_eq!(crofton_number(&k2).unwrap(), 2);
        let k1 = LineComplex::complex(
            3,
            vec![vec![(0.0, 0.0), (1.0, 0.0)], vec![(0.0, 0.0), (0.5, 0.5)]],
            4.0,
        )
        .unwrap();
        assert_eq!(crofton_number(&k1).unwrap(), 1);
        let k3 = LineComplex::complex(
            3,
            vec![
                vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
                vec![(0.0, 0.0), (1.0, 0.0)],
            ],
            4.0,
        )
        .unwrap();
        assert_eq!(crofton_number(&k3).unwrap(), 3);
    }

    #[test]
    fn omega_jacobian_values() {
        let k = parabola();
        // u' = (1, 2t): xi=(1,1), t=1 -> 3
        assert_eq!(omega_jacobian(&k, &[1.0, 1.0], 1.0), 3.0);
        // linear in xi
        assert_eq!(omega_jacobian(&k, &[2.0, 2.0], 1.0), 6.0);
        // linear complex: constant in t
        let kl = LineComplex::real(3, vec![vec![0.0, 2.0], vec![0.0, -1.0]], -4.0, 4.0).unwrap();
        assert_eq!(omega_jacobian(&kl, &[1.0, 1.0], -3.0), 1.0);
        assert_eq!(omega_jacobian(&kl, &[1.0, 1.0], 2.5), 1.0);
    }

    #[test]
    fn degenerate_xi_reports_infinite() {
        // u=(t, t), xi=(1,-1): xi.u(t) identically zero, eta=0 is solved by
        // every parameter.
        let k = LineComplex::real(3, vec![vec![0.0, 1.0], vec![0.0, 1.0]], -4.0, 4.0).unwrap();
        assert_eq!(
            crofton_function(&k, 0.0, &[1.0, -1.0]).unwrap(),
            RootCount::Infinite
        );
    }

    #[test]
    fn example_kernel_closed_forms() {
        let kl = LineComplex::real(3, vec![vec![0.0, 2.0], vec![0.0, 1.0]], -4.0, 4.0).unwrap();
        let kern = ComplexKernel::example(0.0);
        // a~ = |2 xi_1 + xi_2|^{1/2}, constant in t
        let v = kern.eval(&kl, &[1.0, 1.0], 0.3).unwrap();
        assert!((v.re - 3.0f64.sqrt()).abs() < 1e-14);
        // parabola at xi=(1,0): u_1' = 1 -> a~ = 1 for any t
        let kp = parabola();
        for t in [-2.0, 0.0, 1.0] {
            let v = kern.eval(&kp, &[1.0, 0.0], t).unwrap();
            assert!((v.re - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn build_example_kernel_checks_hypothesis() {
        let kl = LineComplex::real(3, vec![vec![0.0, 1.0], vec![0.0, 1.0]], -8.0, 8.0).unwrap();
        let good: Vec<(f64, Vec<f64>)> = vec![
            (0.5, vec![1.0, 0.3]),
            (-1.0, vec![0.7, 0.7]),
            (2.0, vec![-1.0, 0.2]),
        ];
        assert!(build_example_kernel(&kl, 0.0, &good).is_ok());

        let kp = parabola();
        // xi=(0,1), eta=-1: two roots -> hypothesis violated
        let bad: Vec<(f64, Vec<f64>)> = vec![(-1.0, vec![0.0, 1.0])];
        assert!(matches!(
            build_example_kernel(&kp, 0.0, &bad),
            Err(Error::Hypothesis(_))
        ));
        // samples along xi=(1,0) see a linear polynomial: Cr = 1
        let ok: Vec<(f64, Vec<f64>)> = vec![(0.3, vec![1.0, 0.0]), (-0.6, vec![1.0, 0.0])];
        assert!(build_example_kernel(&kp, 0.0, &ok).is_ok());
    }

    #[test]
    fn gft_condition_defects() {
        // Example kernel on a Cr == 1 complex: defect ~ 0.
        let kl =
            LineComplex::real(3, vec![vec![0.0, 1.0], vec![0.0, 1.0]], -20.0, 20.0).unwrap();
        let samples = random_condition_samples(2, 64, (-2.0, 2.0), 7);
        let d = gft_condition_defect(&kl, &ComplexKernel::example(0.7), &samples).unwrap();
        assert!(d < 1e-12, "{d}");

        // Delta kernel on the parabola: |omega|^{1/2} is not constant 1.
        let kp = parabola();
        let d = gft_condition_defect(&kp, &ComplexKernel::Delta, &samples).unwrap();
        assert!(d > 0.1, "{d}");

        // Complex power family with lambdas = 0: defect 0.
        let kc = LineComplex::complex(
            3,
            vec![
                vec![(0.0, 0.0), (1.0, 0.0)],
                vec![(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
            ],
            4.0,
        )
        .unwrap();
        let csamples: Vec<(Vec<(f64, f64)>, (f64, f64))> = (0..32)
            .map(|i| {
                let a = 0.3 + 0.1 * i as f64;
                (vec![(a, -0.2), (0.5, a * 0.3)], (0.1 * a, -0.4))
            })
            .collect();
        let d = gft_condition_defect_complex(
            &kc,
            &ComplexKernel::Power { lambdas: vec![[0.0, 0.0], [0.0, 0.0]] },
            &csamples,
        )
        .unwrap();
        assert!(d < 1e-12, "{d}");
    }

    #[test]
    fn phase_invariance_of_condition() {
        // rho shifts the phase of a~, never its modulus.
        let kl =
            LineComplex::real(3, vec![vec![0.0, 1.0], vec![0.0, 1.0]], -20.0, 20.0).unwrap();
        let samples = random_condition_samples(2, 32, (-2.0, 2.0), 11);
        let d0: f64 =
            gft_condition_defect(&kl, &ComplexKernel::example(0.0), &samples).unwrap();
        let d1 = gft_condition_defect(&kl, &ComplexKernel::example(2.5), &samples).unwrap();
        assert!((d0 - d1).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let k = parabola();
        let s = serde_json::to_string(&k).unwrap();
        let back: LineComplex<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(k, back);

        let kc = LineComplex::complex(2, vec![vec![(0.0, 0.0), (1.0, -0.5)]], 3.0).unwrap();
        let s = serde_json::to_string(&kc).unwrap();
        let back: LineComplex<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(kc, back);
    }
}
