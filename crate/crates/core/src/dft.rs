//! Discrete Fourier transforms between a grid and its exact frequency dual.
//!
//! Conventions (inherited by every transform module in the crate):
//!
//! - forward kernel `e^{+i<x,xi>}`, inverse carries the conjugate;
//! - unitary normalization, `(2 pi)^{-d/2}` on both sides;
//! - the frequency grid is the exact dual of the source grid
//!   (spacing `2 pi / (n h)`, centered), so the discrete pair is unitary to
//!   machine precision and `dft_inverse(dft_forward(f)) == f` up to roundoff.
//!
//! The quadrature identity used here is exact: with `x_j = o + j h` and
//! `xi_m = w + m D`, `h D = 2 pi / M`, the Riemann sum
//! `sum_j f_j e^{i x_j xi_m} h` factors into a phase ramp, an unnormalized
//! FFT and another phase ramp.

use num_complex::Complex;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::sync::Arc;

use crate::error::Result;
use crate::grid::{GridFunction, Spectrum};
use crate::scalar::Real;

/// Forward transform: `f_hat(xi) = (2 pi)^{-d/2} \int f(x) e^{i<x,xi>} dx`.
pub fn dft_forward<T: Real>(f: &GridFunction<T>) -> Result<Spectrum<T>> {
    let geom = f.geometry().clone();
    let dual = geom.dual()?;
    let mut data = f.samples().to_vec();
    let mut planner = FftPlanner::<T>::new();
    for axis in 0..geom.ndim() {
        let m = geom.dims()[axis];
        let h = geom.spacing()[axis];
        let o = geom.origin()[axis];
        let w = dual.origin()[axis];
        let norm = h / (T::of(2.0) * T::PI()).sqrt();
        // pre[j] = e^{i j h w}, post[m] = (h/sqrt(2 pi)) e^{i o xi_m}
        let pre: Vec<Complex<T>> = (0..m)
            .map(|j| Complex::from_polar(T::one(), T::of(j as f64) * h * w))
            .collect();
        let post: Vec<Complex<T>> = (0..m)
            .map(|k| Complex::from_polar(norm, o * dual.coord(axis, k)))
            .collect();
        let plan = planner.plan_fft(m, FftDirection::Inverse);
        apply_axis(&mut data, geom.dims(), axis, &pre, &post, &plan);
    }
    Spectrum::new(geom, data)
}

/// Inverse transform: `f(x) = (2 pi)^{-d/2} \int F(xi) e^{-i<x,xi>} dxi`.
pub fn dft_inverse<T: Real>(spec: &Spectrum<T>) -> Result<GridFunction<T>> {
    let geom = spec.source_geometry().clone();
    let dual = spec.geometry().clone();
    let mut data = spec.samples().to_vec();
    let mut planner = FftPlanner::<T>::new();
    for axis in 0..geom.ndim() {
        let m = geom.dims()[axis];
        let o = geom.origin()[axis];
        let w = dual.origin()[axis];
        let step = dual.spacing()[axis];
        let norm = step / (T::of(2.0) * T::PI()).sqrt();
        // pre[k] = e^{-i o xi_k}, post[j] = (D/sqrt(2 pi)) e^{-i j h w};
        // the o*w cross term lives entirely in the pre factor.
        let h = geom.spacing()[axis];
        let pre: Vec<Complex<T>> = (0..m)
            .map(|k| Complex::from_polar(T::one(), -o * dual.coord(axis, k)))
            .collect();
        let post: Vec<Complex<T>> = (0..m)
            .map(|j| Complex::from_polar(norm, -T::of(j as f64) * h * w))
            .collect();
        let plan = planner.plan_fft(m, FftDirection::Forward);
        apply_axis(&mut data, geom.dims(), axis, &pre, &post, &plan);
    }
    GridFunction::new(geom, data)
}

/// 1-D transform of a bare complex lane with the same conventions; returns
/// the values on the dual grid of `(n, h, origin)`. Used by the transform
/// modules for per-line filtering where building full grid objects would be
/// wasteful.
pub fn line_forward<T: Real>(
    samples: &mut [Complex<T>],
    h: T,
    origin: T,
    plan: &Arc<dyn Fft<T>>,
) {
    let m = samples.len();
    let dual_step = T::of(2.0) * T::PI() / (T::of(m as f64) * h);
    let w = -dual_step * T::of((m as f64 - 1.0) / 2.0);
    let norm = h / (T::of(2.0) * T::PI()).sqrt();
    debug_assert_eq!(plan.fft_direction(), FftDirection::Inverse);
    for (j, v) in samples.iter_mut().enumerate() {
        *v = *v * Complex::from_polar(T::one(), T::of(j as f64) * h * w);
    }
    plan.process(samples);
    for (k, v) in samples.iter_mut().enumerate() {
        let xi = w + dual_step * T::of(k as f64);
        *v = *v * Complex::from_polar(norm, origin * xi);
    }
}

/// Inverse of [`line_forward`] on the same lane geometry.
pub fn line_inverse<T: Real>(
    samples: &mut [Complex<T>],
    h: T,
    origin: T,
    plan: &Arc<dyn Fft<T>>,
) {
    let m = samples.len();
    let dual_step = T::of(2.0) * T::PI() / (T::of(m as f64) * h);
    let w = -dual_step * T::of((m as f64 - 1.0) / 2.0);
    let norm = dual_step / (T::of(2.0) * T::PI()).sqrt();
    debug_assert_eq!(plan.fft_direction(), FftDirection::Forward);
    for (k, v) in samples.iter_mut().enumerate() {
        let xi = w + dual_step * T::of(k as f64);
        *v = *v * Complex::from_polar(T::one(), -origin * xi);
    }
    plan.process(samples);
    for (j, v) in samples.iter_mut().enumerate() {
        *v = *v * Complex::from_polar(norm, -T::of(j as f64) * h * w);
    }
}

/// Centered frequency values for a lane of `m` samples at spacing `h`.
pub fn line_frequencies<T: Real>(m: usize, h: T) -> Vec<T> {
    let step = T::of(2.0) * T::PI() / (T::of(m as f64) * h);
    let w = -step * T::of((m as f64 - 1.0) / 2.0);
    (0..m).map(|k| w + step * T::of(k as f64)).collect()
}

/// Applies `pre`, the FFT plan, then `post` along one axis of a row-major
/// n-D array.
fn apply_axis<T: Real>(
    data: &mut [Complex<T>],
    dims: &[usize],
    axis: usize,
    pre: &[Complex<T>],
    post: &[Complex<T>],
    plan: &Arc<dyn Fft<T>>,
) {
    let m = dims[axis];
    let stride: usize = dims[axis + 1..].iter().product();
    let outer: usize = dims[..axis].iter().product();
    let mut lane = vec![Complex::<T>::default(); m];
    for blk in 0..outer {
        for inner in 0..stride {
            let base = blk * m * stride + inner;
            for j in 0..m {
                lane[j] = data[base + j * stride] * pre[j];
            }
            plan.process(&mut lane);
            for j in 0..m {
                data[base + j * stride] = lane[j] * post[j];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridGeometry;

    #[test]
    fn round_trip_identity_1d() {
        let geom = GridGeometry::<f64>::centered(&[24], &[0.3]).unwrap();
        let f = GridFunction::from_fn(geom, |x| {
            Complex::new((-x[0] * x[0]).exp(), (1.3 * x[0]).sin())
        });
        let back = dft_inverse(&dft_forward(&f).unwrap()).unwrap();
        assert!(back.rel_l2_error(&f).unwrap() < 1e-13);
    }

    #[test]
    fn round_trip_identity_3d_mixed_parity() {
        let geom = GridGeometry::<f64>::centered(&[9, 8, 5], &[0.5, 0.4, 0.7]).unwrap();
        let f = GridFunction::from_fn(geom, |x| {
            Complex::new(
                (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.0).exp(),
                0.2 * x[1],
            )
        });
        let back = dft_inverse(&dft_forward(&f).unwrap()).unwrap();
        assert!(back.rel_l2_error(&f).unwrap() < 1e-13);
    }

    #[test]
    fn delta_gives_flat_spectrum() {
        // Discrete delta scaled by 1/h at the center of an odd grid.
        let geom = GridGeometry::<f64>::centered(&[33], &[0.25]).unwrap();
        let mut f = GridFunction::zeros(geom);
        f.samples_mut()[16] = Complex::new(1.0 / 0.25, 0.0);
        let spec = dft_forward(&f).unwrap();
        let want = (2.0 * std::f64::consts::PI).powf(-0.5);
        for v in spec.samples() {
            assert!((v.norm() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_maps_to_zero() {
        let geom = GridGeometry::<f64>::centered(&[12, 12], &[0.5, 0.5]).unwrap();
        let f = GridFunction::zeros(geom);
        let spec = dft_forward(&f).unwrap();
        assert!(spec.samples().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn constant_spectrum_is_discrete_delta() {
        let geom = GridGeometry::<f64>::centered(&[17], &[0.5]).unwrap();
        let scale = (2.0 * std::f64::consts::PI).powf(-0.5);
        let spec = Spectrum::new(
            geom.clone(),
            vec![Complex::new(scale, 0.0); 17],
        )
        .unwrap();
        let f = dft_inverse(&spec).unwrap();
        // All mass at the center sample, value 1/h.
        assert!((f.samples()[8].re - 2.0).abs() < 1e-12);
        for (j, v) in f.samples().iter().enumerate() {
            if j != 8 {
                assert!(v.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn line_helpers_match_grid_transform() {
        let geom = GridGeometry::<f64>::centered(&[20], &[0.37]).unwrap();
        let f = GridFunction::from_fn(geom.clone(), |x| {
            Complex::new((-(x[0] - 0.2).powi(2)).exp(), 0.1 * x[0])
        });
        let spec = dft_forward(&f).unwrap();

        let mut lane = f.samples().to_vec();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft(20, FftDirection::Inverse);
        let inv = planner.plan_fft(20, FftDirection::Forward);
        line_forward(&mut lane, 0.37, geom.origin()[0], &fwd);
        for (a, b) in lane.iter().zip(spec.samples()) {
            assert!((a - b).norm() < 1e-13);
        }
        line_inverse(&mut lane, 0.37, geom.origin()[0], &inv);
        for (a, b) in lane.iter().zip(f.samples()) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn f32_instantiation_round_trips() {
        let geom = GridGeometry::<f32>::centered(&[16], &[0.5f32]).unwrap();
        let f = GridFunction::from_fn(geom, |x| Complex::new((-x[0] * x[0]).exp(), 0.0));
        let back = dft_inverse(&dft_forward(&f).unwrap()).unwrap();
        assert!(back.rel_l2_error(&f).unwrap() < 1e-5);
    }
}
