//! Uniform box grids and the sampled functions living on them.
//!
//! Grids are centered: with an odd sample count the coordinate origin falls
//! on a sample, with an even count it falls between two samples (half-sample
//! convention). The convention is stored explicitly so serialized data stays
//! self-describing.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hard cap on the total number of samples in one grid object.
pub const MAX_SAMPLES: usize = 1 << 26;

/// How the grid relates to the coordinate origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Centering {
    /// Origin on a sample (odd count) or on a half-sample (even count);
    /// sample coordinates are `(j - (n-1)/2) * h`.
    Centered,
    /// Arbitrary recorded origin.
    Offset,
}

/// Geometry of a uniform box grid in `d` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct GridGeometry<T> {
    dims: Vec<usize>,
    spacing: Vec<T>,
    origin: Vec<T>,
    centering: Centering,
}

impl<T: Real> GridGeometry<T> {
    /// Centered grid: `dims[k]` samples at spacing `spacing[k]`, symmetric
    /// about the coordinate origin.
    pub fn centered(dims: &[usize], spacing: &[T]) -> Result<Self> {
        let origin = dims
            .iter()
            .zip(spacing)
            .map(|(&n, &h)| -h * T::of((n as f64 - 1.0) / 2.0))
            .collect();
        Self::new(dims.to_vec(), spacing.to_vec(), origin, Centering::Centered)
    }

    /// Centered grid covering the box `[-extent/2, extent/2]` per axis.
    pub fn centered_box(dims: &[usize], extent: &[T]) -> Result<Self> {
        let spacing: Vec<T> = dims
            .iter()
            .zip(extent)
            .map(|(&n, &l)| l / T::of(n as f64))
            .collect();
        Self::centered(dims, &spacing)
    }

    /// Grid with an explicit origin.
    pub fn with_origin(dims: &[usize], spacing: &[T], origin: &[T]) -> Result<Self> {
        Self::new(
            dims.to_vec(),
            spacing.to_vec(),
            origin.to_vec(),
            Centering::Offset,
        )
    }

    pub(crate) fn new(
        dims: Vec<usize>,
        spacing: Vec<T>,
        origin: Vec<T>,
        centering: Centering,
    ) -> Result<Self> {
        if dims.is_empty() || dims.len() != spacing.len() || dims.len() != origin.len() {
            return Err(Error::ShapeMismatch(format!(
                "dims/spacing/origin lengths {}/{}/{}",
                dims.len(),
                spacing.len(),
                origin.len()
            )));
        }
        if dims.iter().any(|&n| n == 0) {
            return Err(Error::Domain("zero-length axis".into()));
        }
        let total: usize = dims.iter().try_fold(1usize, |acc, &n| {
            acc.checked_mul(n).filter(|&t| t <= MAX_SAMPLES)
        }).ok_or(Error::SizeCap { requested: usize::MAX, cap: MAX_SAMPLES })?;
        if total > MAX_SAMPLES {
            return Err(Error::SizeCap { requested: total, cap: MAX_SAMPLES });
        }
        if spacing.iter().any(|h| *h <= T::zero() || !h.is_finite()) {
            return Err(Error::Domain("non-positive grid spacing".into()));
        }
        Ok(Self { dims, spacing, origin, centering })
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn spacing(&self) -> &[T] {
        &self.spacing
    }

    pub fn origin(&self) -> &[T] {
        &self.origin
    }

    pub fn centering(&self) -> Centering {
        self.centering
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Product of the per-axis spacings (the Riemann volume element).
    pub fn volume_element(&self) -> T {
        self.spacing.iter().copied().fold(T::one(), |a, b| a * b)
    }

    /// Coordinate of index `j` along `axis`.
    pub fn coord(&self, axis: usize, j: usize) -> T {
        self.origin[axis] + self.spacing[axis] * T::of(j as f64)
    }

    /// All coordinates along one axis.
    pub fn axis_coords(&self, axis: usize) -> Vec<T> {
        (0..self.dims[axis]).map(|j| self.coord(axis, j)).collect()
    }

    /// Half-open box bounds `(lo, hi)` per axis, sample centers inside.
    pub fn box_bounds(&self) -> (Vec<T>, Vec<T>) {
        let half = T::of(0.5);
        let lo = self
            .origin
            .iter()
            .zip(&self.spacing)
            .map(|(&o, &h)| o - h * half)
            .collect();
        let hi = self
            .dims
            .iter()
            .zip(&self.spacing)
            .zip(&self.origin)
            .map(|((&n, &h), &o)| o + h * (T::of(n as f64 - 1.0) + half))
            .collect();
        (lo, hi)
    }

    /// Row-major flat index from per-axis indices.
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        let mut flat = 0;
        for (k, &i) in idx.iter().enumerate() {
            flat = flat * self.dims[k] + i;
        }
        flat
    }

    /// Per-axis indices from the row-major flat index.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.ndim()];
        for k in (0..self.ndim()).rev() {
            idx[k] = flat % self.dims[k];
            flat /= self.dims[k];
        }
        idx
    }

    /// Coordinates of the sample at flat index `flat`.
    pub fn point(&self, flat: usize) -> Vec<T> {
        self.multi_index(flat)
            .iter()
            .enumerate()
            .map(|(k, &j)| self.coord(k, j))
            .collect()
    }

    /// The exact frequency-dual geometry: spacing `2*pi/(n*h)`, centered.
    pub fn dual(&self) -> Result<Self> {
        let spacing: Vec<T> = self
            .dims
            .iter()
            .zip(&self.spacing)
            .map(|(&n, &h)| T::of(2.0) * T::PI() / (T::of(n as f64) * h))
            .collect();
        Self::centered(&self.dims, &spacing)
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.dims == other.dims
    }

    fn approx_eq(&self, other: &Self) -> bool {
        if self.dims != other.dims {
            return false;
        }
        let tol = T::of(1e-9);
        let close = |a: &[T], b: &[T]| {
            a.iter()
                .zip(b)
                .all(|(&x, &y)| (x - y).abs() <= tol * (T::one() + x.abs().max(y.abs())))
        };
        close(&self.spacing, &other.spacing) && close(&self.origin, &other.origin)
    }
}

/// Sampled complex-valued function on a uniform box grid, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    geom: GridGeometry<T>,
    samples: Vec<Complex<T>>,
}

impl<T: Real> GridFunction<T> {
    pub fn new(geom: GridGeometry<T>, samples: Vec<Complex<T>>) -> Result<Self> {
        if samples.len() != geom.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} samples on a grid of {} points",
                samples.len(),
                geom.len()
            )));
        }
        Ok(Self { geom, samples })
    }

    pub fn zeros(geom: GridGeometry<T>) -> Self {
        let n = geom.len();
        Self { geom, samples: vec![Complex::default(); n] }
    }

    /// Builds by evaluating `f` at every sample point.
    pub fn from_fn(geom: GridGeometry<T>, mut f: impl FnMut(&[T]) -> Complex<T>) -> Self {
        let samples = (0..geom.len()).map(|i| f(&geom.point(i))).collect();
        Self { geom, samples }
    }

    pub fn geometry(&self) -> &GridGeometry<T> {
        &self.geom
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<Complex<T>> {
        self.samples
    }

    /// Riemann approximation of the L2 inner product `\int f conj(g) dx`.
    ///
    /// Errors if the two functions live on different grids.
    pub fn l2_inner(&self, other: &Self) -> Result<Complex<T>> {
        if !self.geom.approx_eq(&other.geom) {
            return Err(Error::ShapeMismatch("l2_inner operands on different grids".into()));
        }
        let mut acc = Complex::<T>::default();
        for (a, b) in self.samples.iter().zip(&other.samples) {
            acc = acc + a * b.conj();
        }
        Ok(acc * self.geom.volume_element())
    }

    /// `sqrt(<f,f>)`; always a nonnegative real number.
    pub fn l2_norm(&self) -> T {
        let v: T = self.samples.iter().map(|z| z.norm_sqr()).sum();
        (v * self.geom.volume_element()).sqrt()
    }

    /// Largest sample modulus.
    pub fn max_abs(&self) -> T {
        self.samples
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), T::max)
    }

    /// Largest sample modulus on the boundary layer of the box.
    pub fn boundary_max_abs(&self) -> T {
        let mut m = T::zero();
        for i in 0..self.geom.len() {
            let idx = self.geom.multi_index(i);
            if idx
                .iter()
                .zip(self.geom.dims())
                .any(|(&j, &n)| j == 0 || j + 1 == n)
            {
                m = m.max(self.samples[i].norm());
            }
        }
        m
    }

    /// Relative L2 distance `|f - g| / |g|`.
    pub fn rel_l2_error(&self, reference: &Self) -> Result<T> {
        if !self.geom.same_shape(&reference.geom) {
            return Err(Error::ShapeMismatch("rel_l2_error shapes differ".into()));
        }
        let mut num = T::zero();
        let mut den = T::zero();
        for (a, b) in self.samples.iter().zip(&reference.samples) {
            num = num + (a - b).norm_sqr();
            den = den + b.norm_sqr();
        }
        if den == T::zero() {
            return Ok(num.sqrt());
        }
        Ok((num / den).sqrt())
    }

    /// Separable cubic (Catmull-Rom) interpolation at an arbitrary point.
    /// Points outside the box evaluate to zero.
    pub fn interp_cubic(&self, x: &[T]) -> Complex<T> {
        interp_cubic_nd(&self.geom, &self.samples, x)
    }
}

/// Discrete spectrum: the exact frequency-dual grid of a source grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    geom: GridGeometry<T>,
    source: GridGeometry<T>,
    samples: Vec<Complex<T>>,
}

impl<T: Real> Spectrum<T> {
    pub fn new(source: GridGeometry<T>, samples: Vec<Complex<T>>) -> Result<Self> {
        let geom = source.dual()?;
        if samples.len() != geom.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} samples on a dual grid of {} points",
                samples.len(),
                geom.len()
            )));
        }
        Ok(Self { geom, source, samples })
    }

    /// Frequency-grid geometry.
    pub fn geometry(&self) -> &GridGeometry<T> {
        &self.geom
    }

    /// The spatial grid this spectrum is dual to.
    pub fn source_geometry(&self) -> &GridGeometry<T> {
        &self.source
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.samples
    }

    pub fn l2_inner(&self, other: &Self) -> Result<Complex<T>> {
        if !self.geom.approx_eq(&other.geom) {
            return Err(Error::ShapeMismatch("spectra on different grids".into()));
        }
        let mut acc = Complex::<T>::default();
        for (a, b) in self.samples.iter().zip(&other.samples) {
            acc = acc + a * b.conj();
        }
        Ok(acc * self.geom.volume_element())
    }

    pub fn l2_norm(&self) -> T {
        let v: T = self.samples.iter().map(|z| z.norm_sqr()).sum();
        (v * self.geom.volume_element()).sqrt()
    }

    /// Cubic interpolation in frequency space (zero outside the grid).
    pub fn interp_cubic(&self, xi: &[T]) -> Complex<T> {
        interp_cubic_nd(&self.geom, &self.samples, xi)
    }
}

/// Types carrying a weighted L2 inner product (grids, spectra, charts).
/// This is the structure Plancherel defects are measured against.
pub trait WeightedInner<T: Real> {
    fn w_inner(&self, other: &Self) -> Result<Complex<T>>;

    fn w_norm(&self) -> T
    where
        Self: Sized,
    {
        self.w_inner(self).map(|v| v.re.max(T::zero()).sqrt()).unwrap_or(T::zero())
    }
}

impl<T: Real> WeightedInner<T> for GridFunction<T> {
    fn w_inner(&self, other: &Self) -> Result<Complex<T>> {
        self.l2_inner(other)
    }
}

impl<T: Real> WeightedInner<T> for Spectrum<T> {
    fn w_inner(&self, other: &Self) -> Result<Complex<T>> {
        self.l2_inner(other)
    }
}

/// Catmull-Rom weights for fractional offset `u` in `[0,1)`.
pub(crate) fn catmull_rom_weights<T: Real>(u: T) -> [T; 4] {
    catmull_rom(u)
}

/// 6-point Lagrange weights on the stencil `-2..=3` for fraction `u` in
/// `[0,1)`. Sixth-order accurate; used by forward projectors where the
/// quadrature oracle tolerances demand more than cubic accuracy.
pub(crate) fn lagrange6_weights<T: Real>(u: T) -> [T; 6] {
    let mut w = [T::zero(); 6];
    for (k, wk) in w.iter_mut().enumerate() {
        let xk = T::of(k as f64 - 2.0);
        let mut num = T::one();
        let mut den = T::one();
        for m in 0..6 {
            if m == k {
                continue;
            }
            let xm = T::of(m as f64 - 2.0);
            num = num * (u - xm);
            den = den * (xk - xm);
        }
        *wk = num / den;
    }
    w
}

/// Sixth-order Lagrange interpolation along one axis, other coordinates on
/// grid indices (same contract as [`interp_cubic_along_axis`]).
pub fn interp_lagrange6_along_axis<T: Real>(
    f: &GridFunction<T>,
    fixed: &[usize],
    axis: usize,
    x: T,
) -> Complex<T> {
    let geom = f.geometry();
    let n = geom.dims()[axis] as isize;
    let t = (x - geom.origin()[axis]) / geom.spacing()[axis];
    if !t.is_finite() {
        return Complex::default();
    }
    let j = t.floor();
    let u = t - j;
    let j = match j.to_isize() {
        Some(v) => v,
        None => return Complex::default(),
    };
    if j + 3 < 0 || j - 2 >= n {
        return Complex::default();
    }
    let stride: usize = geom.dims()[axis + 1..].iter().product();
    let mut base = 0usize;
    for (k, &i) in fixed.iter().enumerate() {
        base = base * geom.dims()[k] + if k == axis { 0 } else { i };
    }
    let w = lagrange6_weights(u);
    let samples = f.samples();
    let mut acc = Complex::<T>::default();
    for (o, wo) in w.iter().enumerate() {
        let idx = j - 2 + o as isize;
        if idx >= 0 && idx < n {
            acc = acc + samples[base + idx as usize * stride] * *wo;
        }
    }
    acc
}

/// Catmull-Rom weights for fractional offset `u` in `[0,1)`.
fn catmull_rom<T: Real>(u: T) -> [T; 4] {
    let half = T::of(0.5);
    let u2 = u * u;
    let u3 = u2 * u;
    [
        half * (-u3 + T::of(2.0) * u2 - u),
        half * (T::of(3.0) * u3 - T::of(5.0) * u2 + T::of(2.0)),
        half * (T::of(-3.0) * u3 + T::of(4.0) * u2 + u),
        half * (u3 - u2),
    ]
}

/// Cubic interpolation of a 1-D lane `(origin + j * spacing, values[j])`,
/// zero outside the sampled range.
pub fn interp_cubic_lane<T: Real>(
    values: &[Complex<T>],
    origin: T,
    spacing: T,
    x: T,
) -> Complex<T> {
    let n = values.len() as isize;
    let t = (x - origin) / spacing;
    if !t.is_finite() {
        return Complex::default();
    }
    let j = t.floor();
    let u = t - j;
    let j = match j.to_isize() {
        Some(v) => v,
        None => return Complex::default(),
    };
    if j + 2 < 0 || j - 1 >= n {
        return Complex::default();
    }
    let w = catmull_rom(u);
    let mut acc = Complex::<T>::default();
    for (o, wo) in w.iter().enumerate() {
        let idx = j - 1 + o as isize;
        if idx >= 0 && idx < n {
            acc = acc + values[idx as usize] * *wo;
        }
    }
    acc
}

/// Cubic interpolation along one axis of an n-D grid at a point whose other
/// coordinates sit exactly on grid indices. `fixed` holds per-axis indices
/// (the entry at `axis` is ignored); interpolation happens at coordinate
/// `x` along `axis`. Much cheaper than the full n-D stencil.
pub fn interp_cubic_along_axis<T: Real>(
    f: &GridFunction<T>,
    fixed: &[usize],
    axis: usize,
    x: T,
) -> Complex<T> {
    let geom = f.geometry();
    let n = geom.dims()[axis] as isize;
    let t = (x - geom.origin()[axis]) / geom.spacing()[axis];
    if !t.is_finite() {
        return Complex::default();
    }
    let j = t.floor();
    let u = t - j;
    let j = match j.to_isize() {
        Some(v) => v,
        None => return Complex::default(),
    };
    if j + 2 < 0 || j - 1 >= n {
        return Complex::default();
    }
    // Flat index with the axis coordinate zeroed, plus the axis stride.
    let stride: usize = geom.dims()[axis + 1..].iter().product();
    let mut base = 0usize;
    for (k, &i) in fixed.iter().enumerate() {
        base = base * geom.dims()[k] + if k == axis { 0 } else { i };
    }
    let w = catmull_rom(u);
    let mut acc = Complex::<T>::default();
    let samples = f.samples();
    for (o, wo) in w.iter().enumerate() {
        let idx = j - 1 + o as isize;
        if idx >= 0 && idx < n {
            acc = acc + samples[base + idx as usize * stride] * *wo;
        }
    }
    acc
}

/// Separable cubic interpolation over an n-D grid, zero beyond the samples.
pub(crate) fn interp_cubic_nd<T: Real>(
    geom: &GridGeometry<T>,
    samples: &[Complex<T>],
    x: &[T],
) -> Complex<T> {
    debug_assert_eq!(x.len(), geom.ndim());
    let nd = geom.ndim();
    let mut base = [0isize; 8];
    let mut w = [[T::zero(); 4]; 8];
    debug_assert!(nd <= 8);
    for k in 0..nd {
        let t = (x[k] - geom.origin()[k]) / geom.spacing()[k];
        if !t.is_finite() {
            return Complex::default();
        }
        let j = t.floor();
        let u = t - j;
        let j = match j.to_isize() {
            Some(v) => v,
            None => return Complex::default(),
        };
        // Needs the 4-point stencil j-1..j+2 to have any support.
        if j + 2 < 0 || j - 1 >= geom.dims()[k] as isize {
            return Complex::default();
        }
        base[k] = j - 1;
        w[k] = catmull_rom(u);
    }

    // Accumulate over the 4^nd stencil, skipping out-of-range taps (treated
    // as zeros, consistent with decayed-at-boundary data).
    let mut acc = Complex::<T>::default();
    let taps = 1usize << (2 * nd); // 4^nd
    'outer: for t in 0..taps {
        let mut flat = 0usize;
        let mut weight = T::one();
        let mut tt = t;
        for k in 0..nd {
            let o = tt & 3;
            tt >>= 2;
            let j = base[k] + o as isize;
            if j < 0 || j >= geom.dims()[k] as isize {
                continue 'outer;
            }
            weight = weight * w[k][o];
            flat = flat * geom.dims()[k] + j as usize;
        }
        acc = acc + samples[flat] * weight;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centered_odd_has_origin_sample() {
        let g = GridGeometry::<f64>::centered(&[5], &[0.5]).unwrap();
        assert_eq!(g.coord(0, 2), 0.0);
        assert_eq!(g.centering(), Centering::Centered);
    }

    #[test]
    fn centered_even_is_half_sample() {
        let g = GridGeometry::<f64>::centered(&[4], &[1.0]).unwrap();
        assert_eq!(g.axis_coords(0), vec![-1.5, -0.5, 0.5, 1.5]);
    }

    #[test]
    fn dual_spacing_matches_fft_convention() {
        let g = GridGeometry::<f64>::centered(&[8], &[0.25]).unwrap();
        let d = g.dual().unwrap();
        let expect = 2.0 * std::f64::consts::PI / (8.0 * 0.25);
        assert!((d.spacing()[0] - expect).abs() < 1e-15);
    }

    #[test]
    fn size_cap_enforced() {
        let err = GridGeometry::<f64>::centered(&[1 << 14, 1 << 14], &[1.0, 1.0]);
        assert!(matches!(err, Err(Error::SizeCap { .. })));
    }

    #[test]
    fn inner_product_positivity_and_mismatch() {
        let g = GridGeometry::<f64>::centered(&[6, 6], &[0.5, 0.5]).unwrap();
        let f = GridFunction::from_fn(g.clone(), |x| Complex::new(x[0] + 0.3, x[1]));
        let p = f.l2_inner(&f).unwrap();
        assert!(p.im.abs() < 1e-14);
        assert!(p.re >= 0.0);

        let g2 = GridGeometry::<f64>::centered(&[6, 6], &[0.4, 0.5]).unwrap();
        let h = GridFunction::zeros(g2);
        assert!(f.l2_inner(&h).is_err());
    }

    #[test]
    fn disjoint_blocks_inner_is_zero() {
        let g = GridGeometry::<f64>::centered(&[16], &[0.25]).unwrap();
        let f = GridFunction::from_fn(g.clone(), |x| {
            if x[0] < -0.5 { Complex::new(1.0, 0.0) } else { Complex::default() }
        });
        let h = GridFunction::from_fn(g, |x| {
            if x[0] > 0.5 { Complex::new(1.0, 0.0) } else { Complex::default() }
        });
        assert_eq!(f.l2_inner(&h).unwrap(), Complex::new(0.0, 0.0));
    }

    #[test]
    fn cubic_interp_reproduces_quadratics() {
        // Catmull-Rom slopes are exact for quadratics, so the interpolant is.
        let g = GridGeometry::<f64>::centered(&[21], &[0.5]).unwrap();
        let f = GridFunction::from_fn(g, |x| {
            Complex::new(0.3 * x[0].powi(2) - x[0] + 2.0, 0.0)
        });
        for &x in &[-3.1, -0.77, 0.0, 1.234, 3.9] {
            let v = f.interp_cubic(&[x]).re;
            let want = 0.3 * x * x - x + 2.0;
            assert!((v - want).abs() < 1e-12, "x={x}: {v} vs {want}");
        }
    }

    #[test]
    fn cubic_interp_converges_on_smooth_functions() {
        let err = |n: usize| {
            let g = GridGeometry::<f64>::centered(&[n], &[8.0 / n as f64]).unwrap();
            let f = GridFunction::from_fn(g, |x| Complex::new((1.7 * x[0]).sin(), 0.0));
            (0..200)
                .map(|i| {
                    let x = -3.0 + 6.0 * i as f64 / 199.0;
                    (f.interp_cubic(&[x]).re - (1.7 * x).sin()).abs()
                })
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(64), err(128));
        assert!(e2 < e1 / 6.0, "no cubic-order convergence: {e1} -> {e2}");
    }

    #[test]
    fn cubic_interp_zero_outside() {
        let g = GridGeometry::<f64>::centered(&[8, 8], &[1.0, 1.0]).unwrap();
        let f = GridFunction::from_fn(g, |_| Complex::new(1.0, 0.0));
        assert_eq!(f.interp_cubic(&[50.0, 0.0]), Complex::new(0.0, 0.0));
    }
}
