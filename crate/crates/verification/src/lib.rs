//! Oracles and a small pass/fail runner for the acceptance binary.

use fresnel_core::ComplexValue;
use std::f64::consts::FRAC_PI_2;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let flm = f(0.5 * (a + m));
    let frm = f(0.5 * (m + b));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, a, b, fa, fm, fb, whole, 1e-14, 40)
}

/// F(v) = (1+j)/2 · ∫_v^∞ exp(−jπt²/2) dt on the grid `k·step`, `|k| ≤ n`,
/// accumulated panel by panel from C(0) = S(0) = 0.
pub fn fresnel_f_grid(step: f64, n: usize) -> Vec<(f64, ComplexValue)> {
    let mut cs = vec![(0.0, 0.0); n + 1];
    for k in 0..n {
        let (a, b) = (k as f64 * step, (k + 1) as f64 * step);
        let dc = integrate(|t| (FRAC_PI_2 * t * t).cos(), a, b);
        let ds = integrate(|t| (FRAC_PI_2 * t * t).sin(), a, b);
        cs[k + 1] = (cs[k].0 + dc, cs[k].1 + ds);
    }
    let to_f = |c: f64, s: f64| ComplexValue::new(0.5, 0.5) * ComplexValue::new(0.5 - c, -(0.5 - s));
    let mut out = Vec::with_capacity(2 * n + 1);
    // C and S are odd.
    for k in (1..=n).rev() {
        out.push((-(k as f64) * step, to_f(-cs[k].0, -cs[k].1)));
    }
    for (k, &(c, s)) in cs.iter().enumerate() {
        out.push((k as f64 * step, to_f(c, s)));
    }
    out
}

/// Length of the ray `s·dir`, `s ∈ [0, reach]`, from the receiver at the
/// origin that lies inside the first Fresnel zone of a transmitter at `tx`.
/// Scans at 1 mm and bisects every inside/outside change.
pub fn ffz_ray_length(dir: (f64, f64), reach: f64, tx: (f64, f64), wavelength: f64) -> f64 {
    let d = tx.0.hypot(tx.1);
    let inside = |s: f64| {
        let q = (s * dir.0, s * dir.1);
        s + (tx.0 - q.0).hypot(tx.1 - q.1) - d <= wavelength / 2.0
    };
    let step = 1e-3;
    let n = (reach / step).ceil() as usize;
    let mut total = 0.0;
    let mut entered = if inside(0.0) { Some(0.0) } else { None };
    let edge = |mut a: f64, mut b: f64| {
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
    for k in 0..n {
        let (a, b) = (k as f64 * step, ((k + 1) as f64 * step).min(reach));
        match (inside(a), inside(b), entered) {
            (false, true, None) => entered = Some(edge(a, b)),
            (true, false, Some(s0)) => {
                total += edge(a, b) - s0;
                entered = None;
            }
            _ => {}
        }
    }
    if let Some(s0) = entered {
        total += reach - s0;
    }
    total
}

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

/// Runs checks, prints one line per check and remembers failures.
#[derive(Default)]
pub struct Runner {
    failed: Vec<String>,
    total: usize,
}

impl Runner {
    /// Run `f`; a panic counts as a failure. `budget` is a runtime ceiling.
    pub fn check(&mut self, id: &str, title: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) {
        self.total += 1;
        let t0 = Instant::now();
        let mut out = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(o) => o,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Outcome::new(false, format!("panicked: {msg}"))
            }
        };
        let took = t0.elapsed();
        if let Some(b) = budget {
            if took > b {
                out.pass = false;
                out.detail.push_str(&format!("; over the {:.0} s budget", b.as_secs_f64()));
            }
        }
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id}. {title} ({:.2} s): {}", took.as_secs_f64(), out.detail);
        if !out.pass {
            self.failed.push(id.to_string());
        }
    }

    /// Print the summary; true when everything passed.
    pub fn finish(&self) -> bool {
        println!("\n{} of {} checks passed", self.total - self.failed.len(), self.total);
        if !self.failed.is_empty() {
            println!("failed: {}", self.failed.join(", "));
        }
        self.failed.is_empty()
    }
}
