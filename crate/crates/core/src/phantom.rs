//! Smooth test phantoms: superpositions of Gaussian bumps and compactly
//! supported smooth bumps, optionally modulated by a plane-wave carrier.
//!
//! Modulated Gaussians are the workhorse for transform testing: the carrier
//! places the spectrum where a chart actually has data, and the Gaussian
//! envelope keeps everything infinitely smooth and rapidly decaying.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridFunction, GridGeometry};
use crate::scalar::Real;

/// Cosine plane-wave modulation `cos(<k,x> + phase)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Modulation<T> {
    pub wavevector: Vec<T>,
    pub phase: T,
}

/// One phantom component.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(
    serialize = "T: serde::Serialize",
    deserialize = "T: serde::Deserialize<'de> + Default + Clone"
))]
pub enum PhantomComponent<T> {
    /// `amplitude * exp(-sum_k (x_k-c_k)^2 / (2 width_k^2))`, optionally
    /// modulated. A single width may be given for isotropic bumps.
    Gaussian {
        center: Vec<T>,
        width: Vec<T>,
        amplitude: Complex<T>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulation: Option<Modulation<T>>,
    },
    /// Compactly supported C-infinity bump
    /// `amplitude * exp(1 - 1/(1 - (r/radius)^2))` for `r < radius`.
    SmoothBump {
        center: Vec<T>,
        radius: T,
        amplitude: Complex<T>,
    },
}

/// Declarative phantom description.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: serde::Serialize",
    deserialize = "T: serde::Deserialize<'de> + Default + Clone"
))]
pub struct PhantomSpec<T> {
    pub components: Vec<PhantomComponent<T>>,
}

impl<T: Real> PhantomSpec<T> {
    pub fn empty() -> Self {
        Self { components: Vec::new() }
    }

    /// Isotropic unit Gaussian at the grid center.
    pub fn unit_gaussian(ndim: usize, width: T) -> Self {
        Self {
            components: vec![PhantomComponent::Gaussian {
                center: vec![T::zero(); ndim],
                width: vec![width; ndim],
                amplitude: Complex::new(T::one(), T::zero()),
                modulation: None,
            }],
        }
    }

    /// The standard two-bump phantom used by round-trip tests: two Gaussian
    /// bumps of opposite-ish placement, with per-axis widths.
    pub fn two_bumps(centers: [Vec<T>; 2], widths: [Vec<T>; 2], amps: [T; 2]) -> Self {
        Self {
            components: centers
                .into_iter()
                .zip(widths)
                .zip(amps)
                .map(|((center, width), a)| PhantomComponent::Gaussian {
                    center,
                    width,
                    amplitude: Complex::new(a, T::zero()),
                    modulation: None,
                })
                .collect(),
        }
    }

    /// Closed-form integral of the Gaussian components (modulated ones have
    /// no closed form here and contribute `None`).
    pub fn gaussian_mass(&self) -> Option<Complex<T>> {
        let two_pi = T::of(2.0) * T::PI();
        let mut total = Complex::<T>::default();
        for c in &self.components {
            match c {
                PhantomComponent::Gaussian { width, amplitude, modulation: None, .. } => {
                    let mut m = T::one();
                    for &w in width {
                        m = m * (two_pi * w * w).sqrt();
                    }
                    total = total + amplitude * m;
                }
                _ => return None,
            }
        }
        Some(total)
    }
}

fn check_center<T: Real>(geom: &GridGeometry<T>, center: &[T]) -> Result<()> {
    if center.len() != geom.ndim() {
        return Err(Error::ShapeMismatch(format!(
            "component center has {} coordinates on a {}-d grid",
            center.len(),
            geom.ndim()
        )));
    }
    let (lo, hi) = geom.box_bounds();
    for ((&c, &l), &h) in center.iter().zip(&lo).zip(&hi) {
        if c < l || c > h {
            return Err(Error::Domain(format!(
                "phantom component centered at {c:?} outside the box [{l:?}, {h:?}]"
            )));
        }
    }
    Ok(())
}

/// Evaluates the phantom on the grid. Deterministic; errors if a component
/// center lies outside the grid box.
pub fn make_phantom<T: Real>(
    geom: &GridGeometry<T>,
    spec: &PhantomSpec<T>,
) -> Result<GridFunction<T>> {
    for c in &spec.components {
        match c {
            PhantomComponent::Gaussian { center, width, .. } => {
                check_center(geom, center)?;
                if width.len() != geom.ndim() && width.len() != 1 {
                    return Err(Error::ShapeMismatch(
                        "per-axis widths must match dimension (or be a single value)".into(),
                    ));
                }
                if width.iter().any(|w| *w <= T::zero()) {
                    return Err(Error::Domain("non-positive Gaussian width".into()));
                }
            }
            PhantomComponent::SmoothBump { center, radius, .. } => {
                check_center(geom, center)?;
                if *radius <= T::zero() {
                    return Err(Error::Domain("non-positive bump radius".into()));
                }
            }
        }
    }

    let f = GridFunction::from_fn(geom.clone(), |x| {
        let mut v = Complex::<T>::default();
        for c in &spec.components {
            match c {
                PhantomComponent::Gaussian { center, width, amplitude, modulation } => {
                    let mut q = T::zero();
                    for (k, (&xk, &ck)) in x.iter().zip(center).enumerate() {
                        let w = if width.len() == 1 { width[0] } else { width[k] };
                        let d = (xk - ck) / w;
                        q = q + d * d;
                    }
                    let mut amp = (-q * T::of(0.5)).exp();
                    if let Some(m) = modulation {
                        let mut ph = m.phase;
                        for (&xk, &kk) in x.iter().zip(&m.wavevector) {
                            ph = ph + xk * kk;
                        }
                        amp = amp * ph.cos();
                    }
                    v = v + amplitude * amp;
                }
                PhantomComponent::SmoothBump { center, radius, amplitude } => {
                    let mut r2 = T::zero();
                    for (&xk, &ck) in x.iter().zip(center) {
                        let d = xk - ck;
                        r2 = r2 + d * d;
                    }
                    let s = r2 / (*radius * *radius);
                    if s < T::one() {
                        v = v + amplitude * (T::one() - T::one() / (T::one() - s)).exp();
                    }
                }
            }
        }
        v
    });
    Ok(f)
}

/// Random band-limited phantom: a seeded superposition of modulated Gaussian
/// bumps whose carriers lie inside the frequency cone
/// `|k_j| <= cone_slope * |k_axis|` around the given axis, with carrier
/// moduli in `[k_min, k_max]`. With `cone_slope = infinity` the carriers are
/// isotropic. Bump centers stay within `center_spread` of the origin.
pub fn random_cone_phantom<T: Real>(
    ndim: usize,
    bumps: usize,
    cone_axis: usize,
    cone_slope: f64,
    k_range: (f64, f64),
    width: f64,
    center_spread: f64,
    seed: u64,
) -> PhantomSpec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut components = Vec::with_capacity(bumps);
    for _ in 0..bumps {
        let center: Vec<T> = (0..ndim)
            .map(|_| T::of(rng.gen_range(-center_spread..=center_spread)))
            .collect();
        let kmod = rng.gen_range(k_range.0..=k_range.1);
        // Direction inside the cone: pick the axis component first, then
        // transverse components bounded by the slope.
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let mut k = vec![0.0f64; ndim];
        k[cone_axis] = sign;
        for (j, kj) in k.iter_mut().enumerate() {
            if j != cone_axis {
                let s = cone_slope.min(1e6);
                *kj = rng.gen_range(-s..=s).min(4.0).max(-4.0);
            }
        }
        let norm = (k.iter().map(|v| v * v).sum::<f64>()).sqrt();
        let k: Vec<T> = k.iter().map(|v| T::of(v / norm * kmod)).collect();
        components.push(PhantomComponent::Gaussian {
            center,
            width: vec![T::of(width); ndim],
            amplitude: Complex::new(T::of(rng.gen_range(0.4..=1.0)), T::zero()),
            modulation: Some(Modulation {
                wavevector: k,
                phase: T::of(rng.gen_range(0.0..std::f64::consts::TAU)),
            }),
        });
    }
    PhantomSpec { components }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_spec_is_zero() {
        let g = GridGeometry::<f64>::centered(&[8, 8], &[0.5, 0.5]).unwrap();
        let f = make_phantom(&g, &PhantomSpec::empty()).unwrap();
        assert!(f.samples().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn unit_gaussian_peaks_at_center() {
        let g = GridGeometry::<f64>::centered(&[33, 33], &[0.25, 0.25]).unwrap();
        let f = make_phantom(&g, &PhantomSpec::unit_gaussian(2, 0.8)).unwrap();
        let center = g.flat_index(&[16, 16]);
        assert_eq!(f.samples()[center], Complex::new(1.0, 0.0));
        assert!((f.max_abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn outside_center_is_domain_error() {
        let g = GridGeometry::<f64>::centered(&[8], &[0.5]).unwrap();
        let spec = PhantomSpec {
            components: vec![PhantomComponent::Gaussian {
                center: vec![100.0],
                width: vec![1.0],
                amplitude: Complex::new(1.0, 0.0),
                modulation: None,
            }],
        };
        assert!(matches!(make_phantom(&g, &spec), Err(Error::Domain(_))));
    }

    #[test]
    fn smooth_bump_has_compact_support() {
        let g = GridGeometry::<f64>::centered(&[41], &[0.25]).unwrap();
        let spec = PhantomSpec {
            components: vec![PhantomComponent::SmoothBump {
                center: vec![0.0],
                radius: 2.0,
                amplitude: Complex::new(3.0, 0.0),
            }],
        };
        let f = make_phantom(&g, &spec).unwrap();
        assert!((f.samples()[20].re - 3.0).abs() < 1e-15);
        // Sample at |x| = 4 is well outside the support.
        assert_eq!(f.samples()[4].norm(), 0.0);
    }

    #[test]
    fn cone_phantom_is_deterministic() {
        let a = random_cone_phantom::<f64>(3, 4, 2, 0.5, (2.0, 5.0), 1.0, 0.5, 42);
        let b = random_cone_phantom::<f64>(3, 4, 2, 0.5, (2.0, 5.0), 1.0, 0.5, 42);
        let g = GridGeometry::<f64>::centered(&[12, 12, 12], &[0.5, 0.5, 0.5]).unwrap();
        let fa = make_phantom(&g, &a).unwrap();
        let fb = make_phantom(&g, &b).unwrap();
        assert_eq!(fa.samples(), fb.samples());
    }
}
