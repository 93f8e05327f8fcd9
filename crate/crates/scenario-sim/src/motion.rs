/// Distance covered `t` seconds after setting off on a walk of length
/// `total`, with linear speed ramps of `accel_time` at both ends.
///
/// Walks too short to reach `speed` use a triangular profile with the
/// same acceleration.
pub fn travel(t: f64, total: f64, speed: f64, accel_time: f64) -> f64 {
    if t <= 0.0 || total <= 0.0 {
        return 0.0;
    }
    if accel_time <= 0.0 {
        return (speed * t).min(total);
    }
    let a = speed / accel_time;
    if total >= speed * accel_time {
        let cruise = (total - speed * accel_time) / speed;
        let end = 2.0 * accel_time + cruise;
        if t < accel_time {
            0.5 * a * t * t
        } else if t < accel_time + cruise {
            0.5 * speed * accel_time + speed * (t - accel_time)
        } else if t < end {
            total - 0.5 * a * (end - t) * (end - t)
        } else {
            total
        }
    } else {
        let half = (total / a).sqrt();
        if t < half {
            0.5 * a * t * t
        } else if t < 2.0 * half {
            total - 0.5 * a * (2.0 * half - t) * (2.0 * half - t)
        } else {
            total
        }
    }
}

/// Seconds needed for the whole walk.
pub fn walk_time(total: f64, speed: f64, accel_time: f64) -> f64 {
    if accel_time <= 0.0 {
        total / speed
    } else if total >= speed * accel_time {
        total / speed + accel_time
    } else {
        2.0 * (total * accel_time / speed).sqrt()
    }
}
