use crate::config::ProcessingConfig;
use crate::trace::{CsiError, CsiTrace};

/// Centered moving average; the window shrinks near the ends.
pub fn moving_average(x: &[f64], window: usize) -> Vec<f64> {
    let n = x.len();
    if window <= 1 || n == 0 {
        return x.to_vec();
    }
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    for v in x {
        prefix.push(prefix.last().unwrap() + v);
    }
    let left = (window - 1) / 2;
    let right = window - 1 - left;
    (0..n)
        .map(|i| {
            let a = i.saturating_sub(left);
            let b = (i + right + 1).min(n);
            (prefix[b] - prefix[a]) / (b - a) as f64
        })
        .collect()
}

pub(crate) fn smoothing_len(cfg: &ProcessingConfig, rate: f64) -> usize {
    (cfg.smoothing_s * rate).round().max(1.0) as usize
}

/// Mean of the strongest subcarriers after smoothing each one.
pub fn select_reference_trace(trace: &CsiTrace) -> Result<Vec<f64>, CsiError> {
    select_reference_trace_with(trace, &ProcessingConfig::default())
}

pub fn select_reference_trace_with(trace: &CsiTrace, cfg: &ProcessingConfig) -> Result<Vec<f64>, CsiError> {
    if trace.n_subcarriers() == 0 || trace.n_samples() == 0 {
        return Err(CsiError::Empty);
    }
    let mut order: Vec<(usize, f64)> = trace
        .amplitudes
        .iter()
        .enumerate()
        .map(|(k, row)| (k, row.iter().sum::<f64>() / row.len() as f64))
        .collect();
    // Strongest first; equal means keep the lower index.
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let keep = cfg.top_subcarriers.max(1).min(order.len());
    let win = smoothing_len(cfg, trace.sample_rate_hz);
    let mut out = vec![0.0; trace.n_samples()];
    for &(k, _) in &order[..keep] {
        for (o, v) in out.iter_mut().zip(moving_average(&trace.amplitudes[k], win)) {
            *o += v;
        }
    }
    for o in &mut out {
        *o /= keep as f64;
    }
    Ok(out)
}
