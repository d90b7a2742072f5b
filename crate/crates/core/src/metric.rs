//! The rotationally symmetric HCMU metric `dv^2 + h(v)^2 dtheta^2` on a
//! single bigon.
//!
//! Curvature runs from `K0` at the top (`v = 0`) down to `K1` at the bottom
//! (`v = l`) and satisfies `3 K'^2 = -(K - K0)(K - K1)(K + K0 + K1)`. With
//! `K = K1 + (K0 - K1) sin^2(t)` the arclength element becomes
//! `dv = 2 sqrt(3) dt / sqrt(K0 + 2 K1 + (K0 - K1) sin^2 t)`, smooth unless the
//! bottom is a cusp. The level `s = (K0 - K)/(K0 - K1) = cos^2 t`.

use crate::rational::{q_to_f64, Q};
use num_traits::{One, Signed, Zero};
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("ratio must lie in [0, 1)")]
    BadRatio,
    #[error("top curvature must be finite and positive")]
    BadK0,
    #[error("at least 16 samples are required")]
    BadSamples,
    #[error("adaptive quadrature did not converge on [{0}, {1}]")]
    QuadratureFailure(f64, f64),
}

/// Panel tolerance of the adaptive rule.
pub const PANEL_TOL: f64 = 1e-10;
/// Last sampled level when the bottom is a cusp.
pub const CUSP_LEVEL_MAX: f64 = 1.0 - 1e-6;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss-Kronrod (7/15) with bisection. The tolerance is absolute
/// per unit length of the interval.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64, MetricError> {
    if a == b {
        return Ok(0.0);
    }
    let width = (b - a).abs();
    let mut total = 0.0;
    let mut stack = vec![(a, b, 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let (val, err) = kronrod15(&f, lo, hi);
        if !val.is_finite() {
            return Err(MetricError::QuadratureFailure(a, b));
        }
        let allowed = tol * (hi - lo).abs() / width;
        if err <= allowed.max(1e-15 * val.abs()) {
            total += val;
        } else if depth >= 50 {
            return Err(MetricError::QuadratureFailure(lo, hi));
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    Ok(total)
}

/// `K1` from the top curvature and the angle ratio.
pub fn k1_from_ratio(k0: f64, ratio: f64) -> f64 {
    (2.0 * ratio - 1.0) / (2.0 - ratio) * k0
}

/// Inverse of [`k1_from_ratio`].
pub fn ratio_from_pair(k0: f64, k1: f64) -> f64 {
    (k0 + 2.0 * k1) / (2.0 * k0 + k1)
}

/// One HCMU bigon profile, parametrized by `(K0, R)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hcmu {
    pub k0: f64,
    pub k1: f64,
    pub ratio: f64,
    pub cusp: bool,
}

impl Hcmu {
    pub fn new(k0: f64, ratio: Q) -> Result<Hcmu, MetricError> {
        if !(k0.is_finite() && k0 > 0.0) {
            return Err(MetricError::BadK0);
        }
        if ratio.is_negative() || ratio >= Q::one() {
            return Err(MetricError::BadRatio);
        }
        let r = q_to_f64(&ratio);
        Ok(Hcmu {
            k0,
            k1: k1_from_ratio(k0, r),
            ratio: r,
            cusp: ratio.is_zero(),
        })
    }

    /// `c = -(K0 - K1)(2 K0 + K1) / 6`, the value of `K''` at the top.
    pub fn c_bar(&self) -> f64 {
        -(self.k0 - self.k1) * (2.0 * self.k0 + self.k1) / 6.0
    }

    /// Right side of `3 K'^2 = P(K)`.
    pub fn cubic(&self, k: f64) -> f64 {
        -(k - self.k0) * (k - self.k1) * (k + self.k0 + self.k1)
    }

    pub fn curvature_at_level(&self, s: f64) -> f64 {
        self.k0 - s * (self.k0 - self.k1)
    }

    /// Substitution angle `t` with `s = cos^2 t`, accurate at both ends.
    pub fn angle_of_level(s: f64) -> f64 {
        (1.0 - s).max(0.0).sqrt().atan2(s.max(0.0).sqrt())
    }

    /// `dv/dt`.
    pub fn arclength_density(&self, t: f64) -> f64 {
        let sn = t.sin();
        let x = self.k0 + 2.0 * self.k1 + (self.k0 - self.k1) * sn * sn;
        if self.cusp {
            // Here K0 + 2 K1 vanishes; factor the sine out to avoid cancellation.
            return 2.0 * 3f64.sqrt() / ((self.k0 - self.k1).sqrt() * sn.abs());
        }
        2.0 * 3f64.sqrt() / x.sqrt()
    }

    /// `h` at the level with substitution angle `t`.
    pub fn warp_at_angle(&self, t: f64) -> f64 {
        let (sn, cs) = t.sin_cos();
        let x = if self.cusp {
            (self.k0 - self.k1) * sn * sn
        } else {
            self.k0 + 2.0 * self.k1 + (self.k0 - self.k1) * sn * sn
        };
        6.0 * sn * cs * (x / 3.0).sqrt() / (2.0 * self.k0 + self.k1)
    }

    pub fn warp_at_level(&self, s: f64) -> f64 {
        self.warp_at_angle(Self::angle_of_level(s))
    }

    /// `K' = dK/dv` at level `s` (non-positive).
    pub fn slope_at_level(&self, s: f64) -> f64 {
        self.c_bar() * self.warp_at_level(s)
    }

    /// Distance `v` from the top to level `s`.
    pub fn distance_from_top(&self, s: f64) -> Result<f64, MetricError> {
        let t = Self::angle_of_level(s);
        if self.cusp && s >= 1.0 {
            return Ok(f64::INFINITY);
        }
        integrate(|x| self.arclength_density(x), t, FRAC_PI_2, PANEL_TOL)
    }

    /// Distance from level `s` down to the bottom vertex.
    pub fn distance_to_bottom(&self, s: f64) -> Result<f64, MetricError> {
        if self.cusp {
            return Ok(f64::INFINITY);
        }
        integrate(|x| self.arclength_density(x), 0.0, Self::angle_of_level(s), PANEL_TOL)
    }

    /// Length `l` of a meridian, infinite for a cusp.
    pub fn element_length(&self) -> Result<f64, MetricError> {
        if self.cusp {
            return Ok(f64::INFINITY);
        }
        integrate(|x| self.arclength_density(x), 0.0, FRAC_PI_2, PANEL_TOL)
    }

    /// `int_0^l h dv`, by quadrature.
    pub fn warp_integral(&self) -> Result<f64, MetricError> {
        integrate(
            |t| self.warp_at_angle(t) * self.arclength_density(t),
            0.0,
            FRAC_PI_2,
            PANEL_TOL,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub v: f64,
    pub s: f64,
    pub k: f64,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub model: Hcmu,
    pub length: f64,
    pub samples: Vec<Sample>,
}

/// Samples `(v, s, K, h)` at uniformly spaced levels from the top to the
/// bottom (or to [`CUSP_LEVEL_MAX`] for a cusp).
pub fn warped_profile(k0: f64, ratio: Q, samples: usize) -> Result<Profile, MetricError> {
    if samples < 16 {
        return Err(MetricError::BadSamples);
    }
    let model = Hcmu::new(k0, ratio)?;
    let s_end = if model.cusp { CUSP_LEVEL_MAX } else { 1.0 };
    let mut out = Vec::with_capacity(samples);
    let mut v = 0.0;
    let mut prev_t = FRAC_PI_2;
    for i in 0..samples {
        let s = s_end * i as f64 / (samples - 1) as f64;
        let t = Hcmu::angle_of_level(s);
        if i > 0 {
            v += integrate(|x| model.arclength_density(x), t, prev_t, PANEL_TOL)?;
        }
        prev_t = t;
        out.push(Sample {
            v,
            s,
            k: model.curvature_at_level(s),
            h: model.warp_at_angle(t),
        });
    }
    Ok(Profile {
        model,
        length: model.element_length()?,
        samples: out,
    })
}

/// Closed form of the curvature on a cusp profile.
pub fn cusp_curvature(k0: f64, v: f64) -> f64 {
    let t = (k0.sqrt() * v / (2.0 * 2f64.sqrt())).tanh();
    k0 - 1.5 * k0 * t * t
}

/// Area of a football with top angle `alpha` (units of `2*pi`).
pub fn football_area_closed(k0: f64, ratio: f64, alpha: f64) -> f64 {
    4.0 * PI * (2.0 * alpha - ratio * alpha) / k0
}

pub fn football_area_numeric(k0: f64, ratio: Q, alpha: f64) -> Result<f64, MetricError> {
    let m = Hcmu::new(k0, ratio)?;
    Ok(2.0 * PI * alpha * m.warp_integral()?)
}

/// Total area: every bigon contributes `2 pi W int h dv`.
pub fn surface_area(d: &crate::dataset::DataSet) -> Result<f64, MetricError> {
    let m = Hcmu::new(d.k0(), d.ratio())?;
    let total: Q = d.weights().iter().sum();
    Ok(2.0 * PI * q_to_f64(&total) * m.warp_integral()?)
}
