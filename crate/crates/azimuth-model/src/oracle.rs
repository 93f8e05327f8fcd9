//! Brute-force FFZ crossing length along a straight walk.
//!
//! Independent of the closed-form chords: it only evaluates the ellipse
//! condition |TxQ| + |QRx| − |TxRx| ≤ λ/2 point by point. Meant for tests.

pub type Point = (f64, f64);

const SAMPLE_STEP: f64 = 1e-4;

fn dist(a: Point, b: Point) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

fn excess(q: Point, tx: Point, rx: Point) -> f64 {
    dist(tx, q) + dist(q, rx) - dist(tx, rx)
}

/// Length of `origin + s·dir`, `s ∈ [s_min, s_max]`, lying inside the first
/// Fresnel zone of the `tx`–`rx` link. `dir` is normalized internally.
pub fn geometric_crossing_length(
    origin: Point,
    dir: Point,
    s_min: f64,
    s_max: f64,
    tx: Point,
    rx: Point,
    wavelength: f64,
) -> f64 {
    let n = dir.0.hypot(dir.1);
    let dir = (dir.0 / n, dir.1 / n);
    let limit = wavelength / 2.0;
    let at = |s: f64| (origin.0 + s * dir.0, origin.1 + s * dir.1);
    let inside = |s: f64| excess(at(s), tx, rx) <= limit;
    // Boundary between an inside and an outside sample, by bisection.
    let refine = |mut a: f64, mut b: f64| {
        let a_in = inside(a);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if inside(m) == a_in {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    };

    let steps = ((s_max - s_min) / SAMPLE_STEP).ceil().max(1.0) as usize;
    let h = (s_max - s_min) / steps as f64;
    let mut total = 0.0;
    let mut prev_s = s_min;
    let mut prev_in = inside(s_min);
    let mut enter = if prev_in { Some(s_min) } else { None };
    for k in 1..=steps {
        let s = s_min + k as f64 * h;
        let now_in = inside(s);
        if now_in != prev_in {
            let edge = refine(prev_s, s);
            if now_in {
                enter = Some(edge);
            } else if let Some(e) = enter.take() {
                total += edge - e;
            }
        }
        prev_s = s;
        prev_in = now_in;
    }
    if let Some(e) = enter {
        total += s_max - e;
    }
    total
}
