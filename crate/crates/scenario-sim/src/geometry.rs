//! Walk geometry in the device frame: receiver at the origin, Path 1 along
//! +x, camera at `d·(cos θ, sin θ)` with θ in (0°, 180°).

/// Receiver at the origin, transmitter at `tx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub tx: [f64; 2],
    pub wavelength: f64,
}

impl Link {
    pub fn from_azimuth(theta_deg: f64, d: f64, wavelength: f64) -> Self {
        let t = theta_deg.to_radians();
        Link { tx: [d * t.cos(), d * t.sin()], wavelength }
    }

    pub fn d(&self) -> f64 {
        self.tx[0].hypot(self.tx[1])
    }

    /// Extra length of the Tx → p → Rx path over the direct path.
    pub fn excess_path(&self, p: [f64; 2]) -> f64 {
        (p[0] - self.tx[0]).hypot(p[1] - self.tx[1]) + p[0].hypot(p[1]) - self.d()
    }

    pub fn in_ffz(&self, p: [f64; 2]) -> bool {
        self.excess_path(p) <= self.wavelength / 2.0
    }

    /// Distance from the receiver to the FFZ boundary along unit direction
    /// `dir`. The excess path is convex and zero at the origin along any
    /// ray, so a bracketed bisection converges to the single crossing.
    pub fn chord_from_rx(&self, dir: [f64; 2]) -> f64 {
        let at = |s: f64| self.excess_path([s * dir[0], s * dir[1]]) - self.wavelength / 2.0;
        let (mut lo, mut hi) = (0.0, self.d() + self.wavelength);
        while at(hi) <= 0.0 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if at(mid) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-13 {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Unit vector from the receiver towards the transmitter.
    pub fn los_dir(&self) -> [f64; 2] {
        let d = self.d();
        [self.tx[0] / d, self.tx[1] / d]
    }

    /// Unit normal to the LOS (LOS direction rotated +90°).
    pub fn los_normal(&self) -> [f64; 2] {
        let u = self.los_dir();
        [-u[1], u[0]]
    }
}

/// Crossing lengths of the FFZ along the three walk lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chords {
    /// Along +x.
    pub lf1: f64,
    /// Along −x.
    pub lf2: f64,
    /// Along +y.
    pub l2: f64,
}

impl Chords {
    pub fn of(link: &Link) -> Self {
        Chords {
            lf1: link.chord_from_rx([1.0, 0.0]),
            lf2: link.chord_from_rx([-1.0, 0.0]),
            l2: link.chord_from_rx([0.0, 1.0]),
        }
    }
}

/// Signed clearance of `p` in units of the local FFZ radius, from the
/// exact excess path (`u = ±sqrt(2Δ/λ)`), positive on the normal's side.
pub fn signed_clearance(link: &Link, p: [f64; 2]) -> f64 {
    let n = link.los_normal();
    let side = p[0] * n[0] + p[1] * n[1];
    let u = (2.0 * link.excess_path(p).max(0.0) / link.wavelength).sqrt();
    if side < 0.0 { -u } else { u }
}
