//! Generalized Radon transforms on hyperplane charts.
//!
//! Hyperplanes are parametrized by slopes and an offset:
//! `x_n = a_1 x_1 + ... + a_{n-1} x_{n-1} + a_n`. The chart covers only
//! non-vertical hyperplanes; the slope bound is recorded and the induced
//! missing-wedge error is the caller's to manage (angle-uniform charts push
//! the wedge to a fraction of a degree).
//!
//! The generalized transform convolves the classical hyperplane integrals
//! along the offset axis with a 1-D kernel, realized as multiplication by
//! the kernel symbol at the reflected frequency `u~(-c)` (the reflection is
//! fixed by the Fourier-slice relation under this crate's sign convention,
//! and locked by tests). Inversion filters by the inversion multiplier and
//! backprojects over slopes.
//!
//! Offset grids are per-slope: the slice relation bounds the offset-axis
//! bandwidth at slope `a` by `xi_max / max(1, |a|_inf)`, so the offset
//! spacing scales with the slope and the sample count stays bounded for
//! near-vertical hyperplanes.
//!
//! Complex-field transforms (hyperplanes in C^n for n = 2) run on R^{2n}
//! grids with axes ordered `(Re x_1, Im x_1, Re x_2, Im x_2)` and the
//! pairing `e^{i Re(c conj(t))}` along the complex offset.

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::sync::Arc;

use crate::dft::{dft_forward, line_forward, line_frequencies, line_inverse};
use crate::error::{Error, Result};
use crate::grid::{
    interp_cubic_lane, interp_lagrange6_along_axis, GridFunction, GridGeometry, WeightedInner,
};
use crate::multipliers::{Field, MultiplierKernel};
use crate::phantom::{make_phantom, PhantomSpec};
use crate::scalar::Real;

/// One slope axis: quadrature nodes and weights for the `da_i` integral.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeAxis<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

/// Chart over hyperplane slopes: a tensor product of per-axis node sets.
///
/// `slope_max` documents the coverage bound `|a_i| <= A`; everything beyond
/// it is the chart's missing wedge.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeChart<T> {
    axes: Vec<SlopeAxis<T>>,
    slope_max: T,
}

impl<T: Real> SlopeChart<T> {
    /// Uniform midpoint nodes on `[-a_max, a_max]` per axis (the plain
    /// local-coordinate chart; conventional bound 4).
    pub fn uniform(slope_axes: usize, per_axis: usize, a_max: T) -> Result<Self> {
        if slope_axes == 0 || per_axis == 0 || a_max <= T::zero() {
            return Err(Error::Domain("empty slope chart".into()));
        }
        let step = T::of(2.0) * a_max / T::of(per_axis as f64);
        let axis = SlopeAxis {
            nodes: (0..per_axis)
                .map(|j| -a_max + step * T::of(j as f64 + 0.5))
                .collect(),
            weights: vec![step; per_axis],
        };
        Ok(Self { axes: vec![axis; slope_axes], slope_max: a_max })
    }

    /// Angle-uniform nodes: `a = tan(theta)` with midpoint `theta` samples
    /// over `(-theta_max, theta_max)` and weights `sec^2(theta) d theta`.
    /// This is the same `da` quadrature in rotated form; it reaches
    /// near-vertical hyperplanes with a bounded node count and shrinks the
    /// missing wedge to `pi/2 - theta_max`.
    pub fn angle_uniform(slope_axes: usize, per_axis: usize, theta_max: T) -> Result<Self> {
        if slope_axes == 0
            || per_axis == 0
            || theta_max <= T::zero()
            || theta_max >= T::FRAC_PI_2()
        {
            return Err(Error::Domain("invalid angular chart".into()));
        }
        let step = T::of(2.0) * theta_max / T::of(per_axis as f64);
        let mut nodes = Vec::with_capacity(per_axis);
        let mut weights = Vec::with_capacity(per_axis);
        for j in 0..per_axis {
            let th = -theta_max + step * T::of(j as f64 + 0.5);
            let c = th.cos();
            nodes.push(th.tan());
            weights.push(step / (c * c));
        }
        let axis = SlopeAxis { nodes, weights };
        Ok(Self { axes: vec![axis; slope_axes], slope_max: theta_max.tan() })
    }

    pub fn slope_axes(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, k: usize) -> &SlopeAxis<T> {
        &self.axes[k]
    }

    pub fn slope_max(&self) -> T {
        self.slope_max
    }

    /// Total number of slope tuples.
    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.nodes.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `k`-th slope tuple and its product quadrature weight.
    pub fn slope(&self, mut k: usize) -> (Vec<T>, T) {
        let mut idx = vec![0usize; self.axes.len()];
        for i in (0..self.axes.len()).rev() {
            let m = self.axes[i].nodes.len();
            idx[i] = k % m;
            k /= m;
        }
        let mut tuple = Vec::with_capacity(self.axes.len());
        let mut w = T::one();
        for (i, &j) in idx.iter().enumerate() {
            tuple.push(self.axes[i].nodes[j]);
            w = w * self.axes[i].weights[j];
        }
        (tuple, w)
    }

    /// Largest angular gap to a vertical hyperplane, in radians.
    pub fn wedge_half_angle(&self) -> T {
        T::FRAC_PI_2() - self.slope_max.atan()
    }
}

/// Uniform offset grid attached to one slope tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetLine<T> {
    /// Samples per offset axis (1 axis real field, 2 axes complex field).
    pub count: usize,
    pub spacing: T,
    pub origin: T,
}

impl<T: Real> OffsetLine<T> {
    pub fn coord(&self, j: usize) -> T {
        self.origin + self.spacing * T::of(j as f64)
    }

    /// Half the fundamental frequency: the epsilon floor for singular
    /// multipliers on this line.
    pub fn epsilon_floor(&self) -> T {
        T::PI() / (T::of(self.count as f64) * self.spacing)
    }
}

/// Sampled function on the hyperplane chart: per-slope offset lines.
#[derive(Debug, Clone)]
pub struct HyperplaneFunction<T> {
    field: Field,
    n: u32,
    chart: SlopeChart<T>,
    lines: Vec<OffsetLine<T>>,
    /// Per slope: offset samples (real field: `count` entries; complex
    /// field: `count * count`, row-major over (Re, Im) indices).
    values: Vec<Vec<Complex<T>>>,
}

impl<T: Real> HyperplaneFunction<T> {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn chart(&self) -> &SlopeChart<T> {
        &self.chart
    }

    pub fn lines(&self) -> &[OffsetLine<T>] {
        &self.lines
    }

    pub fn values(&self) -> &[Vec<Complex<T>>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Vec<Complex<T>>] {
        &mut self.values
    }

    pub(crate) fn from_parts(
        field: Field,
        n: u32,
        chart: SlopeChart<T>,
        lines: Vec<OffsetLine<T>>,
        values: Vec<Vec<Complex<T>>>,
    ) -> Self {
        Self { field, n, chart, lines, values }
    }

    fn offset_dim(&self) -> u32 {
        match self.field {
            Field::Real => 1,
            Field::Complex => 2,
        }
    }

    /// Applies a frequency-domain symbol along the offset axis of every
    /// line: `values <- IFFT( symbol(slope_index, c) * FFT(values) )`.
    pub fn filter_offset(&mut self, symbol: impl Fn(usize, T) -> Complex<T> + Sync) {
        debug_assert_eq!(self.field, Field::Real);
        let lines = self.lines.clone();
        self.values
            .par_iter_mut()
            .enumerate()
            .for_each(|(k, lane)| {
                let line = &lines[k];
                let mut planner = FftPlanner::<T>::new();
                let fwd = planner.plan_fft(line.count, FftDirection::Inverse);
                let inv = planner.plan_fft(line.count, FftDirection::Forward);
                line_forward(lane, line.spacing, line.origin, &fwd);
                let freqs = line_frequencies(line.count, line.spacing);
                for (v, &c) in lane.iter_mut().zip(&freqs) {
                    *v = *v * symbol(k, c);
                }
                line_inverse(lane, line.spacing, line.origin, &inv);
            });
    }

    /// Complex-field analog: the symbol sees the complex offset frequency.
    pub fn filter_offset_complex(
        &mut self,
        symbol: impl Fn(usize, Complex<T>) -> Complex<T> + Sync,
    ) {
        debug_assert_eq!(self.field, Field::Complex);
        let lines = self.lines.clone();
        self.values
            .par_iter_mut()
            .enumerate()
            .for_each(|(k, lane)| {
                let line = &lines[k];
                let m = line.count;
                let mut planner = FftPlanner::<T>::new();
                let fwd = planner.plan_fft(m, FftDirection::Inverse);
                let inv = planner.plan_fft(m, FftDirection::Forward);
                plane_fft(lane, m, line, &fwd, true);
                let freqs = line_frequencies(m, line.spacing);
                for (ri, &cre) in freqs.iter().enumerate() {
                    for (ii, &cim) in freqs.iter().enumerate() {
                        lane[ri * m + ii] =
                            lane[ri * m + ii] * symbol(k, Complex::new(cre, cim));
                    }
                }
                plane_fft(lane, m, line, &inv, false);
            });
    }
}

/// 2-D unitary transform of a square complex lane (both axes share the
/// line geometry); `forward` selects the `e^{+i}` or `e^{-i}` kernel.
fn plane_fft<T: Real>(
    lane: &mut [Complex<T>],
    m: usize,
    line: &OffsetLine<T>,
    plan: &Arc<dyn Fft<T>>,
    forward: bool,
) {
    let mut buf = vec![Complex::<T>::default(); m];
    for r in 0..m {
        buf.copy_from_slice(&lane[r * m..(r + 1) * m]);
        if forward {
            line_forward(&mut buf, line.spacing, line.origin, plan);
        } else {
            line_inverse(&mut buf, line.spacing, line.origin, plan);
        }
        lane[r * m..(r + 1) * m].copy_from_slice(&buf);
    }
    for c in 0..m {
        for r in 0..m {
            buf[r] = lane[r * m + c];
        }
        if forward {
            line_forward(&mut buf, line.spacing, line.origin, plan);
        } else {
            line_inverse(&mut buf, line.spacing, line.origin, plan);
        }
        for r in 0..m {
            lane[r * m + c] = buf[r];
        }
    }
}

impl<T: Real> WeightedInner<T> for HyperplaneFunction<T> {
    fn w_inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.values.len() != other.values.len()
            || self
                .values
                .iter()
                .zip(&other.values)
                .any(|(a, b)| a.len() != b.len())
        {
            return Err(Error::ShapeMismatch("hyperplane charts differ".into()));
        }
        let mut acc = Complex::<T>::default();
        for (k, (va, vb)) in self.values.iter().zip(&other.values).enumerate() {
            let (_, w) = self.chart.slope(k);
            let vol = match self.offset_dim() {
                1 => self.lines[k].spacing,
                _ => self.lines[k].spacing * self.lines[k].spacing,
            };
            let mut s = Complex::<T>::default();
            for (a, b) in va.iter().zip(vb) {
                s = s + a * b.conj();
            }
            acc = acc + s * (w * vol);
        }
        Ok(acc)
    }
}

fn box_half_extents<T: Real>(geom: &GridGeometry<T>) -> Vec<T> {
    geom.dims()
        .iter()
        .zip(geom.spacing())
        .map(|(&n, &h)| T::of(n as f64) * h * T::of(0.5))
        .collect()
}

/// Offset line for one real-field slope tuple: spacing matched to the
/// slice bandwidth, range covering every hyperplane meeting the box.
fn offset_line_real<T: Real>(geom: &GridGeometry<T>, a: &[T]) -> OffsetLine<T> {
    let n = geom.ndim();
    let amax = a.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    let h = geom.spacing()[n - 1] * T::one().max(amax);
    let ext = box_half_extents(geom);
    let mut r = ext[n - 1];
    for (i, &ai) in a.iter().enumerate() {
        r = r + ai.abs() * ext[i];
    }
    r = r + T::of(3.0) * h;
    let count = 2 * ((r / h).to_f64().unwrap().ceil() as usize).max(4);
    OffsetLine {
        count,
        spacing: h,
        origin: -h * T::of((count as f64 - 1.0) / 2.0),
    }
}

/// Iterates over all multi-indices of `dims` with the `skip` axis pinned
/// to zero (last axis fastest).
fn for_each_index_skipping<F: FnMut(&[usize])>(dims: &[usize], skip: usize, mut f: F) {
    let mut idx = vec![0usize; dims.len()];
    'outer: loop {
        f(&idx);
        for k in (0..dims.len()).rev() {
            if k == skip {
                continue;
            }
            idx[k] += 1;
            if idx[k] < dims[k] {
                continue 'outer;
            }
            idx[k] = 0;
        }
        return;
    }
}

/// Classical Radon transform: hyperplane integrals over the chart.
///
/// Expects `f` smooth and decayed at the box boundary; linear in `f`.
/// Integration runs over the grid axes transverse to the hyperplane, with
/// cubic interpolation along the solved coordinate (the offset axis for
/// shallow slopes, the steepest slope axis otherwise).
pub fn classical_radon<T: Real>(
    f: &GridFunction<T>,
    chart: &SlopeChart<T>,
) -> Result<HyperplaneFunction<T>> {
    let geom = f.geometry();
    let n = geom.ndim();
    if n < 2 {
        return Err(Error::Domain("radon transform needs dimension >= 2".into()));
    }
    if chart.slope_axes() != n - 1 {
        return Err(Error::ShapeMismatch(format!(
            "chart has {} slope axes for a {n}-d grid",
            chart.slope_axes()
        )));
    }
    let results: Vec<(OffsetLine<T>, Vec<Complex<T>>)> = (0..chart.len())
        .into_par_iter()
        .map(|k| {
            let (a, _) = chart.slope(k);
            let line = offset_line_real(geom, &a);
            let lane = radon_line(f, &a, &line);
            (line, lane)
        })
        .collect();
    let (lines, values) = results.into_iter().unzip();
    Ok(HyperplaneFunction::from_parts(
        Field::Real,
        n as u32,
        chart.clone(),
        lines,
        values,
    ))
}

fn radon_line<T: Real>(f: &GridFunction<T>, a: &[T], line: &OffsetLine<T>) -> Vec<Complex<T>> {
    let geom = f.geometry();
    let n = geom.ndim();
    let mut lane = vec![Complex::<T>::default(); line.count];
    let (imax, amax) = a
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v.abs()))
        .fold((0usize, T::zero()), |acc, c| if c.1 > acc.1 { c } else { acc });

    if amax <= T::one() {
        // Integrate over x' on the grid, interpolate along the last axis.
        let vol = geom.spacing()[..n - 1]
            .iter()
            .copied()
            .fold(T::one(), |p, q| p * q);
        for_each_index_skipping(geom.dims(), n - 1, |idx| {
            let mut s = T::zero();
            for (i, &ai) in a.iter().enumerate() {
                s = s + ai * geom.coord(i, idx[i]);
            }
            for (j, v) in lane.iter_mut().enumerate() {
                let t = s + line.coord(j);
                *v = *v + interp_lagrange6_along_axis(f, idx, n - 1, t) * vol;
            }
        });
    } else {
        // Near-vertical: solve for the steepest slope coordinate instead;
        // the substitution contributes 1/|a_imax|.
        let vol = geom
            .spacing()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != imax)
            .map(|(_, &h)| h)
            .fold(T::one(), |p, q| p * q);
        let scale = vol / amax;
        let ai_star = a[imax];
        for_each_index_skipping(geom.dims(), imax, |idx| {
            let mut partial = geom.coord(n - 1, idx[n - 1]);
            for (i, &ai) in a.iter().enumerate() {
                if i != imax {
                    partial = partial - ai * geom.coord(i, idx[i]);
                }
            }
            for (j, v) in lane.iter_mut().enumerate() {
                let t = (partial - line.coord(j)) / ai_star;
                *v = *v + interp_lagrange6_along_axis(f, idx, imax, t) * scale;
            }
        });
    }
    lane
}

/// Generalized Radon transform: the classical transform convolved along
/// the offset axis with the kernel, as multiplication by `u~(-c)` in the
/// offset-frequency domain. The delta kernel returns the classical
/// transform bit-for-bit.
pub fn generalized_radon<T: Real>(
    f: &GridFunction<T>,
    kernel: &MultiplierKernel<T>,
    chart: &SlopeChart<T>,
) -> Result<HyperplaneFunction<T>> {
    if kernel.field() != Field::Real {
        return Err(Error::Domain("real-field transform needs a real-field kernel".into()));
    }
    let mut phi = classical_radon(f, chart)?;
    if kernel.is_identity() {
        return Ok(phi);
    }
    let lines = phi.lines().to_vec();
    phi.filter_offset(|k, c| kernel.eval_real_floored(-c, lines[k].epsilon_floor()));
    Ok(phi)
}

/// Test-surface variant taking an arbitrary offset symbol `c -> m(c)`
/// (applied exactly as given, no reflection).
pub fn generalized_radon_with_symbol<T: Real>(
    f: &GridFunction<T>,
    chart: &SlopeChart<T>,
    symbol: impl Fn(T) -> Complex<T> + Sync,
) -> Result<HyperplaneFunction<T>> {
    let mut phi = classical_radon(f, chart)?;
    phi.filter_offset(|_, c| symbol(c));
    Ok(phi)
}

/// Result of an inversion, with the chart-coverage warning flag.
#[derive(Debug, Clone)]
pub struct InversionResult<T> {
    pub reconstruction: GridFunction<T>,
    /// Set when the chart's angular coverage leaves a wedge wider than
    /// ~0.02 rad; reconstruction error is then dominated by missing data.
    pub chart_warning: bool,
}

/// Theoretical backprojection constant under this crate's conventions:
/// `(2 pi)^{-(n-1)}` over R^n, `(2 pi)^{-2(n-1)}` over C^n.
pub fn theoretical_inversion_constant<T: Real>(field: Field, n: u32) -> T {
    let two_pi = T::of(2.0) * T::PI();
    match field {
        Field::Real => two_pi.powi(-(n as i32 - 1)),
        Field::Complex => two_pi.powi(-2 * (n as i32 - 1)),
    }
}

/// Inverts the generalized Radon transform: filters every offset line by
/// the inversion multiplier (with the epsilon floor on the DC cell) and
/// backprojects over the chart, scaled by `constant` (see
/// [`calibrate_inversion`] and [`theoretical_inversion_constant`]).
pub fn invert_generalized_radon<T: Real>(
    phi: &HyperplaneFunction<T>,
    kernel: &MultiplierKernel<T>,
    out_geom: &GridGeometry<T>,
    constant: T,
) -> Result<InversionResult<T>> {
    if phi.field() != Field::Real {
        return Err(Error::Domain("use invert_complex_radon for complex charts".into()));
    }
    let n = phi.n();
    if out_geom.ndim() as u32 != n {
        return Err(Error::ShapeMismatch("output grid dimension != chart dimension".into()));
    }
    let inv = kernel.inversion_multiplier(n)?;
    let mut filtered = phi.clone();
    let lines = filtered.lines().to_vec();
    filtered.filter_offset(|k, c| inv.eval_real_floored(-c, lines[k].epsilon_floor()));

    let chart = phi.chart();
    let nd = out_geom.ndim();
    let samples: Vec<Complex<T>> = (0..out_geom.len())
        .into_par_iter()
        .map(|flat| {
            let x = out_geom.point(flat);
            let mut acc = Complex::<T>::default();
            for k in 0..chart.len() {
                let (a, w) = chart.slope(k);
                let mut b = x[nd - 1];
                for (i, &ai) in a.iter().enumerate() {
                    b = b - ai * x[i];
                }
                let line = &filtered.lines()[k];
                acc = acc
                    + interp_cubic_lane(&filtered.values()[k], line.origin, line.spacing, b)
                        * w;
            }
            acc * constant
        })
        .collect();
    let reconstruction = GridFunction::new(out_geom.clone(), samples)?;
    let warning = chart.wedge_half_angle() > T::of(0.02);
    Ok(InversionResult { reconstruction, chart_warning: warning })
}

/// Calibrates the backprojection constant for a (grid, chart, kernel)
/// combination: a unit Gaussian round trip must come back with unit peak.
pub fn calibrate_inversion<T: Real>(
    geom: &GridGeometry<T>,
    chart: &SlopeChart<T>,
    kernel: &MultiplierKernel<T>,
) -> Result<T> {
    let min_ext = box_half_extents(geom)
        .into_iter()
        .fold(T::infinity(), T::min);
    let spec = PhantomSpec::unit_gaussian(geom.ndim(), min_ext * T::of(0.12));
    let f = make_phantom(geom, &spec)?;
    let phi = generalized_radon(&f, kernel, chart)?;
    let rec = invert_generalized_radon(&phi, kernel, geom, T::one())?;
    let peak = rec.reconstruction.max_abs();
    if peak == T::zero() {
        return Err(Error::Degenerate("calibration round trip vanished".into()));
    }
    Ok(T::one() / peak)
}

/// Relative Plancherel defect `|<f,g> - <Ff,Fg>| / (|f| |g|)` of a
/// transform closure. The closure owns its normalization; a unitary
/// transform gives a defect at the discretization level.
pub fn plancherel_defect<T, W, F>(
    forward: F,
    f: &GridFunction<T>,
    g: &GridFunction<T>,
) -> Result<T>
where
    T: Real,
    W: WeightedInner<T>,
    F: Fn(&GridFunction<T>) -> Result<W>,
{
    let lhs = f.l2_inner(g)?;
    let ff = forward(f)?;
    let fg = forward(g)?;
    let rhs = ff.w_inner(&fg)?;
    let denom = f.l2_norm() * g.l2_norm();
    if denom == T::zero() {
        return Ok(T::zero());
    }
    Ok((lhs - rhs).norm() / denom)
}

/// Normalization making a generalized Radon transform with a unit-scale
/// GFT kernel an isometry under this crate's conventions:
/// `(2 pi)^{-(n-1)/2}` over R^n, `(2 pi)^{-(n-1)}` over C^n.
pub fn gft_normalization<T: Real>(field: Field, n: u32) -> T {
    let two_pi = T::of(2.0) * T::PI();
    match field {
        Field::Real => two_pi.powf(T::of(-(n as f64 - 1.0) / 2.0)),
        Field::Complex => two_pi.powi(-(n as i32 - 1)),
    }
}

/// Fourier-slice defect: the offset-axis Fourier transform of the
/// (generalized) Radon transform at slope `a` must equal
/// `(2 pi)^{(n-1)/2} f_hat(-c a, c) u~(-c)`. Returns the max mismatch over
/// all chart samples, normalized by the largest slice value.
pub fn fourier_slice_defect<T: Real>(
    f: &GridFunction<T>,
    kernel: &MultiplierKernel<T>,
    chart: &SlopeChart<T>,
) -> Result<T> {
    let phi = generalized_radon(f, kernel, chart)?;
    let spec = dft_forward(f)?;
    let n = f.geometry().ndim();
    let factor = (T::of(2.0) * T::PI()).powf(T::of((n as f64 - 1.0) / 2.0));

    let per_slope: Vec<(T, T)> = (0..chart.len())
        .into_par_iter()
        .map(|k| {
            let (a, _) = chart.slope(k);
            let line = &phi.lines()[k];
            let mut lane = phi.values()[k].clone();
            let mut planner = FftPlanner::<T>::new();
            let fwd = planner.plan_fft(line.count, FftDirection::Inverse);
            line_forward(&mut lane, line.spacing, line.origin, &fwd);
            let freqs = line_frequencies(line.count, line.spacing);
            let mut max_diff = T::zero();
            let mut max_val = T::zero();
            let mut xi = vec![T::zero(); n];
            for (m, &c) in freqs.iter().enumerate() {
                for (i, &ai) in a.iter().enumerate() {
                    xi[i] = -c * ai;
                }
                xi[n - 1] = c;
                let u = kernel.eval_real_floored(-c, line.epsilon_floor());
                let want = spec.interp_cubic(&xi) * factor * u;
                let got = lane[m];
                max_diff = max_diff.max((got - want).norm());
                max_val = max_val.max(got.norm());
            }
            (max_diff, max_val)
        })
        .collect();
    let (d, v) = per_slope
        .into_iter()
        .fold((T::zero(), T::zero()), |(d, v), (dd, vv)| (d.max(dd), v.max(vv)));
    if v == T::zero() {
        return Ok(T::zero());
    }
    Ok(d / v)
}

// --- Complex field (C^n realized on R^{2n} grids, n = 2) --------------------

fn check_complex_grid<T: Real>(geom: &GridGeometry<T>, n: u32) -> Result<()> {
    if n != 2 {
        return Err(Error::Domain(
            "complex-field transforms are exercised at n = 2 only".into(),
        ));
    }
    if geom.ndim() != 4 {
        return Err(Error::ShapeMismatch(
            "C^2 grids are 4-d real grids (Re x1, Im x1, Re x2, Im x2)".into(),
        ));
    }
    Ok(())
}

fn offset_line_complex<T: Real>(geom: &GridGeometry<T>, a1: Complex<T>) -> OffsetLine<T> {
    let ext = box_half_extents(geom);
    let e1 = ext[0].max(ext[1]);
    let e2 = ext[2].max(ext[3]);
    let amod = a1.norm();
    let h = geom.spacing()[2] * T::one().max(amod);
    let r = (amod * e1 + e2) * T::of(std::f64::consts::SQRT_2) + T::of(3.0) * h;
    let count = 2 * ((r / h).to_f64().unwrap().ceil() as usize).max(4);
    OffsetLine {
        count,
        spacing: h,
        origin: -h * T::of((count as f64 - 1.0) / 2.0),
    }
}

/// Classical Radon transform over C^2: integrals over complex hyperplanes
/// `x_2 = a_1 x_1 + a_2` against the Lebesgue measure of C.
///
/// The chart's two axes are (Re a_1, Im a_1); offsets a_2 live on square
/// per-slope 2-D lanes.
pub fn complex_classical_radon<T: Real>(
    f: &GridFunction<T>,
    chart: &SlopeChart<T>,
) -> Result<HyperplaneFunction<T>> {
    let geom = f.geometry();
    check_complex_grid(geom, 2)?;
    if chart.slope_axes() != 2 {
        return Err(Error::ShapeMismatch("C^2 chart needs 2 slope axes".into()));
    }
    let results: Vec<(OffsetLine<T>, Vec<Complex<T>>)> = (0..chart.len())
        .into_par_iter()
        .map(|k| {
            let (a, _) = chart.slope(k);
            let a1 = Complex::new(a[0], a[1]);
            let line = offset_line_complex(geom, a1);
            let lane = complex_radon_lane(f, a1, &line);
            (line, lane)
        })
        .collect();
    let (lines, values) = results.into_iter().unzip();
    Ok(HyperplaneFunction::from_parts(
        Field::Complex,
        2,
        chart.clone(),
        lines,
        values,
    ))
}

fn complex_radon_lane<T: Real>(
    f: &GridFunction<T>,
    a1: Complex<T>,
    line: &OffsetLine<T>,
) -> Vec<Complex<T>> {
    let geom = f.geometry();
    let m = line.count;
    let mut lane = vec![Complex::<T>::default(); m * m];
    let steep = a1.norm() > T::one();
    let (int_axes, interp_axes) = if steep {
        ([2usize, 3usize], [0usize, 1usize])
    } else {
        ([0usize, 1usize], [2usize, 3usize])
    };
    let vol = geom.spacing()[int_axes[0]] * geom.spacing()[int_axes[1]];
    let scale = if steep { vol / a1.norm_sqr() } else { vol };
    let dims = geom.dims().to_vec();
    let mut idx = [0usize; 4];
    for p in 0..dims[int_axes[0]] {
        for q in 0..dims[int_axes[1]] {
            idx[int_axes[0]] = p;
            idx[int_axes[1]] = q;
            let z = Complex::new(geom.coord(int_axes[0], p), geom.coord(int_axes[1], q));
            for br in 0..m {
                for bi in 0..m {
                    let b = Complex::new(line.coord(br), line.coord(bi));
                    // x2 = a1 x1 + a2, solved for the interpolated pair
                    let target = if steep { (z - b) / a1 } else { a1 * z + b };
                    let v =
                        interp_lagrange6_pair(f, &idx, interp_axes, [target.re, target.im]);
                    lane[br * m + bi] = lane[br * m + bi] + v * scale;
                }
            }
        }
    }
    lane
}

/// 2-D sixth-order Lagrange interpolation along two axes of a 4-d grid
/// with the other two pinned to grid indices.
fn interp_lagrange6_pair<T: Real>(
    f: &GridFunction<T>,
    fixed: &[usize; 4],
    axes: [usize; 2],
    x: [T; 2],
) -> Complex<T> {
    let geom = f.geometry();
    let dims = geom.dims();
    let mut bases = [0isize; 2];
    let mut wts = [[T::zero(); 6]; 2];
    for (k, &axis) in axes.iter().enumerate() {
        let t = (x[k] - geom.origin()[axis]) / geom.spacing()[axis];
        if !t.is_finite() {
            return Complex::default();
        }
        let j = t.floor();
        let u = t - j;
        let j = match j.to_isize() {
            Some(v) => v,
            None => return Complex::default(),
        };
        if j + 3 < 0 || j - 2 >= dims[axis] as isize {
            return Complex::default();
        }
        bases[k] = j - 2;
        wts[k] = crate::grid::lagrange6_weights(u);
    }
    let strides = {
        let mut s = [0usize; 4];
        let mut acc = 1usize;
        for ax in (0..4).rev() {
            s[ax] = acc;
            acc *= dims[ax];
        }
        s
    };
    let mut base_flat = 0usize;
    for ax in 0..4 {
        if ax != axes[0] && ax != axes[1] {
            base_flat += fixed[ax] * strides[ax];
        }
    }
    let samples = f.samples();
    let mut acc = Complex::<T>::default();
    for (o0, w0) in wts[0].iter().enumerate() {
        let j0 = bases[0] + o0 as isize;
        if j0 < 0 || j0 >= dims[axes[0]] as isize {
            continue;
        }
        let f0 = base_flat + j0 as usize * strides[axes[0]];
        for (o1, w1) in wts[1].iter().enumerate() {
            let j1 = bases[1] + o1 as isize;
            if j1 < 0 || j1 >= dims[axes[1]] as isize {
                continue;
            }
            acc = acc + samples[f0 + j1 as usize * strides[axes[1]]] * (*w0 * *w1);
        }
    }
    acc
}

/// Generalized complex Radon transform (kernel symbol applied at `-c` on
/// the complex offset frequency).
pub fn complex_generalized_radon<T: Real>(
    f: &GridFunction<T>,
    kernel: &MultiplierKernel<T>,
    chart: &SlopeChart<T>,
) -> Result<HyperplaneFunction<T>> {
    if kernel.field() != Field::Complex {
        return Err(Error::Domain("complex transform needs a complex-field kernel".into()));
    }
    let mut phi = complex_classical_radon(f, chart)?;
    if kernel.is_identity() {
        return Ok(phi);
    }
    let lines = phi.lines().to_vec();
    phi.filter_offset_complex(|k, c| kernel.eval_complex_floored(-c, lines[k].epsilon_floor()));
    Ok(phi)
}

/// Inverse of the generalized complex Radon transform.
pub fn invert_complex_radon<T: Real>(
    phi: &HyperplaneFunction<T>,
    kernel: &MultiplierKernel<T>,
    out_geom: &GridGeometry<T>,
    constant: T,
) -> Result<InversionResult<T>> {
    if phi.field() != Field::Complex {
        return Err(Error::Domain("complex inversion needs a complex chart".into()));
    }
    check_complex_grid(out_geom, phi.n())?;
    let inv = kernel.inversion_multiplier(phi.n())?;
    let mut filtered = phi.clone();
    let lines = filtered.lines().to_vec();
    filtered.filter_offset_complex(|k, c| {
        inv.eval_complex_floored(-c, lines[k].epsilon_floor())
    });

    let chart = phi.chart();
    let samples: Vec<Complex<T>> = (0..out_geom.len())
        .into_par_iter()
        .map(|flat| {
            let x = out_geom.point(flat);
            let x1 = Complex::new(x[0], x[1]);
            let x2 = Complex::new(x[2], x[3]);
            let mut acc = Complex::<T>::default();
            for k in 0..chart.len() {
                let (a, w) = chart.slope(k);
                let a1 = Complex::new(a[0], a[1]);
                let b = x2 - a1 * x1;
                let line = &filtered.lines()[k];
                acc = acc + interp_lane_2d(&filtered.values()[k], line, [b.re, b.im]) * w;
            }
            acc * constant
        })
        .collect();
    let reconstruction = GridFunction::new(out_geom.clone(), samples)?;
    let warning = chart.wedge_half_angle() > T::of(0.02);
    Ok(InversionResult { reconstruction, chart_warning: warning })
}

/// Cubic interpolation on a square complex lane.
fn interp_lane_2d<T: Real>(values: &[Complex<T>], line: &OffsetLine<T>, b: [T; 2]) -> Complex<T> {
    let m = line.count;
    let mut bases = [0isize; 2];
    let mut wts = [[T::zero(); 4]; 2];
    for k in 0..2 {
        let t = (b[k] - line.origin) / line.spacing;
        if !t.is_finite() {
            return Complex::default();
        }
        let j = t.floor();
        let u = t - j;
        let j = match j.to_isize() {
            Some(v) => v,
            None => return Complex::default(),
        };
        if j + 2 < 0 || j - 1 >= m as isize {
            return Complex::default();
        }
        bases[k] = j - 1;
        wts[k] = crate::grid::catmull_rom_weights(u);
    }
    let mut acc = Complex::<T>::default();
    for (o0, w0) in wts[0].iter().enumerate() {
        let j0 = bases[0] + o0 as isize;
        if j0 < 0 || j0 >= m as isize {
            continue;
        }
        for (o1, w1) in wts[1].iter().enumerate() {
            let j1 = bases[1] + o1 as isize;
            if j1 < 0 || j1 >= m as isize {
                continue;
            }
            acc = acc + values[j0 as usize * m + j1 as usize] * (*w0 * *w1);
        }
    }
    acc
}

/// Calibration for the complex field, mirroring [`calibrate_inversion`].
pub fn calibrate_complex_inversion<T: Real>(
    geom: &GridGeometry<T>,
    chart: &SlopeChart<T>,
    kernel: &MultiplierKernel<T>,
) -> Result<T> {
    let min_ext = box_half_extents(geom)
        .into_iter()
        .fold(T::infinity(), T::min);
    let spec = PhantomSpec::unit_gaussian(geom.ndim(), min_ext * T::of(0.18));
    let f = make_phantom(geom, &spec)?;
    let phi = complex_generalized_radon(&f, kernel, chart)?;
    let rec = invert_complex_radon(&phi, kernel, geom, T::one())?;
    let peak = rec.reconstruction.max_abs();
    if peak == T::zero() {
        return Err(Error::Degenerate("calibration round trip vanished".into()));
    }
    Ok(T::one() / peak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridGeometry;

    fn gaussian_2d(n: usize, l: f64) -> GridFunction<f64> {
        let geom = GridGeometry::centered_box(&[n, n], &[l, l]).unwrap();
        GridFunction::from_fn(geom, |x| {
            Complex::new((-(x[0] * x[0] + x[1] * x[1])).exp(), 0.0)
        })
    }

    #[test]
    fn zero_maps_to_zero() {
        let geom = GridGeometry::centered_box(&[32, 32], &[8.0, 8.0]).unwrap();
        let f = GridFunction::zeros(geom);
        let chart = SlopeChart::uniform(1, 12, 2.0).unwrap();
        let phi = classical_radon(&f, &chart).unwrap();
        assert!(phi.values().iter().flatten().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn gaussian_line_integrals_closed_form() {
        // f = exp(-|x|^2): phi(a, b) = sqrt(pi/(1+a^2)) exp(-b^2/(1+a^2))
        let f = gaussian_2d(128, 16.0);
        let chart = SlopeChart::uniform(1, 8, 2.0).unwrap();
        let phi = classical_radon(&f, &chart).unwrap();
        let mut worst: f64 = 0.0;
        for k in 0..chart.len() {
            let (a, _) = chart.slope(k);
            let line = &phi.lines()[k];
            let peak = (std::f64::consts::PI / (1.0 + a[0] * a[0])).sqrt();
            for j in 0..line.count {
                let b = line.coord(j);
                let want = peak * (-b * b / (1.0 + a[0] * a[0])).exp();
                let got = phi.values()[k][j].re;
                worst = worst.max((got - want).abs() / peak);
            }
        }
        assert!(worst < 1e-4, "relative error {worst}");
    }

    #[test]
    fn steep_slopes_conserve_mass() {
        // \int phi(a, b) db = \int f for every slope, including |a| > 1
        // where the integration axis switches.
        let f = gaussian_2d(96, 14.0);
        let mass = std::f64::consts::PI;
        let chart = SlopeChart::angle_uniform(1, 24, 1.45).unwrap();
        let phi = classical_radon(&f, &chart).unwrap();
        for k in 0..chart.len() {
            let line = &phi.lines()[k];
            let s: Complex<f64> = phi.values()[k].iter().sum();
            let total = s.re * line.spacing;
            assert!(
                (total - mass).abs() / mass < 1e-6,
                "slope {:?}: mass {total} vs {mass}",
                chart.slope(k).0
            );
        }
    }

    #[test]
    fn delta_kernel_is_bit_identical_to_classical() {
        let f = gaussian_2d(48, 12.0);
        let chart = SlopeChart::uniform(1, 6, 1.5).unwrap();
        let a = classical_radon(&f, &chart).unwrap();
        let b = generalized_radon(&f, &MultiplierKernel::delta(), &chart).unwrap();
        for (va, vb) in a.values().iter().zip(b.values()) {
            assert_eq!(va, vb);
        }
    }

    #[test]
    fn derivative_kernel_matches_numerical_derivative() {
        let f = gaussian_2d(96, 14.0);
        let chart = SlopeChart::uniform(1, 5, 1.0).unwrap();
        let classical = classical_radon(&f, &chart).unwrap();
        let deriv = generalized_radon(&f, &MultiplierKernel::derivative(), &chart).unwrap();
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for k in 0..chart.len() {
            let line = &classical.lines()[k];
            let v = &classical.values()[k];
            for j in 2..line.count - 2 {
                let fd = (-v[j + 2] + v[j + 1] * 8.0 - v[j - 1] * 8.0 + v[j - 2])
                    / (12.0 * line.spacing);
                let got = deriv.values()[k][j];
                worst = worst.max((got - fd).norm());
                scale = scale.max(fd.norm());
            }
        }
        assert!(worst / scale < 1e-3, "{worst} / {scale}");
    }

    #[test]
    fn chart_warning_set_for_narrow_charts() {
        let f = gaussian_2d(32, 10.0);
        let chart = SlopeChart::uniform(1, 8, 1.0).unwrap();
        let phi = classical_radon(&f, &chart).unwrap();
        let geom = f.geometry().clone();
        let k = MultiplierKernel::delta();
        let r = invert_generalized_radon(&phi, &k, &geom, 1.0).unwrap();
        assert!(r.chart_warning);
    }

    #[test]
    fn plancherel_defect_of_unitary_dft_is_tiny() {
        let f = gaussian_2d(32, 10.0);
        let g = {
            let geom = f.geometry().clone();
            GridFunction::from_fn(geom, |x| {
                Complex::new(
                    (-(x[0] - 0.5).powi(2) - x[1] * x[1]).exp(),
                    0.3 * (-(x[0] * x[0] + x[1] * x[1])).exp(),
                )
            })
        };
        let d = plancherel_defect(crate::dft::dft_forward, &f, &g).unwrap();
        assert!(d < 1e-12, "{d}");
    }
}
