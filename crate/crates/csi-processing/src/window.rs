use crate::config::ProcessingConfig;
use crate::trace::CsiError;
use serde::{Deserialize, Serialize};

/// A period of significant attenuation inside a trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttenuationWindow {
    pub start_s: f64,
    pub end_s: f64,
    /// Peak attenuation relative to the undisturbed level, ≤ 0.
    pub depth_db: f64,
}

impl AttenuationWindow {
    pub fn duration_s(&self) -> f64 {
        self.end_s - self.start_s
    }
}

fn median(x: &[f64]) -> f64 {
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn std_dev(x: &[f64]) -> f64 {
    let m = mean(x);
    (x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / x.len() as f64).sqrt()
}

fn depth(num: f64, den: f64) -> f64 {
    if num <= 0.0 {
        -80.0
    } else {
        (20.0 * (num / den).log10()).clamp(-80.0, 0.0)
    }
}

// Fractional sample index where the segment i -> i+1 meets `level`.
fn cross(x: &[f64], i: usize, level: f64) -> f64 {
    let (a, b) = (x[i], x[i + 1]);
    if a == b {
        i as f64
    } else {
        i as f64 + ((level - a) / (b - a)).clamp(0.0, 1.0)
    }
}

fn check_len(series: &[f64], rate: f64) -> Result<(), CsiError> {
    if !(rate > 0.0) {
        return Err(CsiError::InvalidTrace(format!("sample rate {rate}")));
    }
    let needed = (2.0 * rate).ceil() as usize;
    if series.len() < needed {
        return Err(CsiError::TooShort { samples: series.len(), needed });
    }
    Ok(())
}

/// Window of a full FFZ crossing (Paths 1 and 3): a dip below the baseline.
pub fn extract_window_crossing(series: &[f64], sample_rate_hz: f64) -> Result<AttenuationWindow, CsiError> {
    extract_window_crossing_with(series, sample_rate_hz, &ProcessingConfig::default())
}

/// The edges are where the series recrosses `baseline − α·(baseline − min)`
/// on either side of the global minimum, interpolated between samples.
pub fn extract_window_crossing_with(
    series: &[f64],
    sample_rate_hz: f64,
    cfg: &ProcessingConfig,
) -> Result<AttenuationWindow, CsiError> {
    check_len(series, sample_rate_hz)?;
    let n_base = ((cfg.baseline_s * sample_rate_hz).round() as usize).clamp(1, series.len());
    let baseline = median(&series[..n_base]);
    let (imin, &min) = series
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");
    if !(baseline > 0.0) || min >= 0.9 * baseline {
        return Err(CsiError::NoWindow { min, baseline });
    }
    let threshold = baseline - cfg.alpha * (baseline - min);
    let start = (0..imin)
        .rev()
        .find(|&i| series[i] >= threshold)
        .map_or(0.0, |i| cross(series, i, threshold));
    let end = (imin + 1..series.len())
        .find(|&i| series[i] >= threshold)
        .map_or((series.len() - 1) as f64, |i| cross(series, i - 1, threshold));
    Ok(AttenuationWindow {
        start_s: start / sample_rate_hz,
        end_s: end / sample_rate_hz,
        depth_db: depth(min, baseline),
    })
}

/// Window of a half-path walk (Path 2): the level moves from an attenuated
/// start to the undisturbed end.
pub fn extract_window_halfpath(series: &[f64], sample_rate_hz: f64) -> Result<AttenuationWindow, CsiError> {
    extract_window_halfpath_with(series, sample_rate_hz, &ProcessingConfig::default())
}

/// Fits a two-level step (levels = means of the first and last
/// `level_fraction` of samples) to locate the transition, then times the
/// transition between the β and 1−β fractions of the step nearest to the
/// breakpoint. That span is stretched by 1/(1−2β) to cover the whole ramp
/// and finally multiplied by γ. The reported window is centered on the ramp.
pub fn extract_window_halfpath_with(
    series: &[f64],
    sample_rate_hz: f64,
    cfg: &ProcessingConfig,
) -> Result<AttenuationWindow, CsiError> {
    check_len(series, sample_rate_hz)?;
    let n = series.len();
    let m = ((cfg.level_fraction * n as f64).round() as usize).clamp(1, n / 2);
    let pre = mean(&series[..m]);
    let post = mean(&series[n - m..]);
    let step = post - pre;
    let n_noise = (sample_rate_hz.round() as usize).clamp(2, n);
    let noise = std_dev(&series[..n_noise]);
    let scale = pre.abs().max(post.abs());
    if step.abs() < 3.0 * noise || step.abs() <= 1e-9 * scale || scale == 0.0 {
        return Err(CsiError::NoTransition { step: step.abs(), noise });
    }

    // Breakpoint k: samples [0, k) at `pre`, [k, n) at `post`.
    let mut cost_pre = vec![0.0; n + 1];
    for i in 0..n {
        cost_pre[i + 1] = cost_pre[i] + (series[i] - pre).powi(2);
    }
    let mut cost_post = vec![0.0; n + 1];
    for i in (0..n).rev() {
        cost_post[i] = cost_post[i + 1] + (series[i] - post).powi(2);
    }
    let k = (1..n)
        .min_by(|&a, &b| (cost_pre[a] + cost_post[a]).total_cmp(&(cost_pre[b] + cost_post[b])))
        .expect("n >= 2");

    // Normalized progress through the step: 0 at `pre`, 1 at `post`.
    let frac = |i: usize| (series[i] - pre) / step;
    let lo_level = pre + cfg.beta * step;
    let hi_level = pre + (1.0 - cfg.beta) * step;
    let start = (0..k.min(n - 1))
        .rev()
        .find(|&i| frac(i) <= cfg.beta)
        .map_or(0.0, |i| cross(series, i, lo_level));
    let end = (k..n)
        .find(|&i| frac(i) >= 1.0 - cfg.beta)
        .map_or((n - 1) as f64, |i| if i == 0 { 0.0 } else { cross(series, i - 1, hi_level) });

    let band = ((end - start) / sample_rate_hz).max(0.0);
    let raw = band / (1.0 - 2.0 * cfg.beta);
    let duration = raw * cfg.gamma;
    let center = 0.5 * (start + end) / sample_rate_hz;
    let start_s = (center - 0.5 * duration).max(0.0);
    let end_s = start_s + duration;
    let (low, high) = if pre < post { (pre, post) } else { (post, pre) };
    Ok(AttenuationWindow { start_s, end_s, depth_db: depth(low, high) })
}
