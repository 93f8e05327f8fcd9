use serde::{Deserialize, Serialize};

pub const DEFAULT_D: f64 = 3.0;
pub const DEFAULT_BODY_SIZE: f64 = 0.25;
pub const DEFAULT_WAVELENGTH: f64 = 0.125;
const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Fixed model parameters: Tx-Rx distance `d`, body size `B_s` and wavelength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub d: f64,
    pub body_size: f64,
    pub wavelength: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self { d: DEFAULT_D, body_size: DEFAULT_BODY_SIZE, wavelength: DEFAULT_WAVELENGTH }
    }
}

impl ModelParams {
    pub fn is_valid(&self) -> bool {
        self.d > 0.0
            && self.body_size >= 0.0
            && self.wavelength > 0.0
            && self.d.is_finite()
            && self.body_size.is_finite()
            && self.wavelength.is_finite()
    }

    // λ² + 4dλ, the shared numerator of every crossing length.
    fn k(&self) -> f64 {
        self.wavelength * self.wavelength + 4.0 * self.d * self.wavelength
    }

    fn base(&self) -> f64 {
        2.0 * self.d + self.wavelength
    }
}

/// Wavelength of a 2.4 GHz channel (1..=13), centre frequency 2407 + 5·ch MHz.
pub fn wavelength_for_channel(channel: u32) -> Option<f64> {
    if (1..=13).contains(&channel) {
        Some(SPEED_OF_LIGHT / ((2407.0 + 5.0 * channel as f64) * 1e6))
    } else {
        None
    }
}

/// FFZ chord along Path 1 on the transmitter's side of the receiver.
pub fn lf1(theta: f64, p: &ModelParams) -> f64 {
    p.k() / (4.0 * (p.base() - 2.0 * p.d * theta.cos()))
}

/// FFZ chord along Path 1 on the side away from the transmitter.
pub fn lf2(theta: f64, p: &ModelParams) -> f64 {
    p.k() / (4.0 * (p.base() + 2.0 * p.d * theta.cos()))
}

/// FFZ chord along Path 2 (orthogonal to Path 1, starting at the receiver).
pub fn l2(theta: f64, p: &ModelParams) -> f64 {
    p.k() / (4.0 * (p.base() - 2.0 * p.d * theta.sin()))
}

/// R_o = (B_s + lf1 + lf2) / l2.
pub fn orthogonal_ratio(theta: f64, p: &ModelParams) -> f64 {
    (p.body_size + lf1(theta, p) + lf2(theta, p)) / l2(theta, p)
}

/// dR_o/dθ, used by the Newton step.
pub fn orthogonal_ratio_derivative(theta: f64, p: &ModelParams) -> f64 {
    let (s, c) = theta.sin_cos();
    let k = p.k();
    let two_d = 2.0 * p.d;
    let d1 = p.base() - two_d * c;
    let d2 = p.base() + two_d * c;
    let d3 = p.base() - two_d * s;
    let dlf1 = -k * two_d * s / (4.0 * d1 * d1);
    let dlf2 = k * two_d * s / (4.0 * d2 * d2);
    let dl2 = k * two_d * c / (4.0 * d3 * d3);
    let num = p.body_size + lf1(theta, p) + lf2(theta, p);
    let den = l2(theta, p);
    ((dlf1 + dlf2) * den - num * dl2) / (den * den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn deg(x: f64) -> f64 {
        x.to_radians()
    }

    #[test]
    fn chord_examples() {
        let p = ModelParams::default();
        assert!((lf1(FRAC_PI_2, &p) - 1.515625 / 24.5).abs() < 1e-12);
        assert!((lf2(FRAC_PI_2, &p) - lf1(FRAC_PI_2, &p)).abs() < 1e-15);
        assert!((lf2(deg(45.0), &p) - 0.036_547).abs() < 1e-6);
        assert!((l2(FRAC_PI_2, &p) - 3.03125).abs() < 1e-12);
        assert!((l2(1e-9, &p) - 0.061_862).abs() < 1e-6);
        assert!((lf1(1e-9, &p) - 3.03125).abs() < 1e-9);
        assert!((lf2(1e-9, &p) - 1.515625 / 48.5).abs() < 1e-9);
    }

    #[test]
    fn ratio_examples() {
        let p = ModelParams::default();
        assert!((orthogonal_ratio(FRAC_PI_2, &p) - 0.1233).abs() < 1e-4);
        assert!((orthogonal_ratio(deg(45.0), &p) - 2.424).abs() < 1e-3);
        assert!((orthogonal_ratio(deg(1.0), &p) - 53.0).abs() < 1.0);
    }

    #[test]
    fn mirror_identities() {
        let p = ModelParams::default();
        for k in 1..180 {
            let t = deg(k as f64);
            let m = std::f64::consts::PI - t;
            assert!((lf1(t, &p) - lf2(m, &p)).abs() < 1e-12);
            assert!((l2(t, &p) - l2(m, &p)).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_matches_difference() {
        let p = ModelParams::default();
        for k in 1..90 {
            let t = deg(k as f64);
            let h = 1e-6;
            let fd = (orthogonal_ratio(t + h, &p) - orthogonal_ratio(t - h, &p)) / (2.0 * h);
            let an = orthogonal_ratio_derivative(t, &p);
            assert!((fd - an).abs() <= 1e-5 * an.abs().max(1.0), "θ={k}: {fd} vs {an}");
        }
    }

    #[test]
    fn channel_wavelengths() {
        assert!((wavelength_for_channel(6).unwrap() - 0.123_016).abs() < 1e-5);
        assert!(wavelength_for_channel(0).is_none());
        assert!(wavelength_for_channel(14).is_none());
    }
}
