use crate::walk::WalkScenario;
use crate::SimError;

/// Camera azimuths of the published room points, degrees from Path 1.
pub const ROOM_AZIMUTHS: [&[f64]; 3] = [
    &[28.61, 42.27, 60.28, 88.54, 130.1, 157.73],
    &[4.86, 51.34, 69.44, 103.52],
    &[110.94, 92.37, 61.34, 47.13, 30.69],
];

pub const FIXTURE_RANGE_M: f64 = 3.0;

/// Azimuth of `point` (1-based) in `room` (1-3).
pub fn room_azimuth(room: u8, point: usize) -> Result<f64, SimError> {
    (room as usize)
        .checked_sub(1)
        .and_then(|r| ROOM_AZIMUTHS.get(r))
        .and_then(|pts| pts.get(point.checked_sub(1)?))
        .copied()
        .ok_or(SimError::NoSuchPoint { room, point })
}

pub fn room_fixture(room: u8, point: usize) -> Result<WalkScenario, SimError> {
    room_fixture_at_range(room, point, FIXTURE_RANGE_M)
}

pub fn room_fixture_at_range(room: u8, point: usize, d: f64) -> Result<WalkScenario, SimError> {
    let s = WalkScenario::at_azimuth(room_azimuth(room, point)?, d);
    s.validate()?;
    Ok(s)
}

/// Every (room, point) pair, in room order.
pub fn all_room_points() -> Vec<(u8, usize)> {
    ROOM_AZIMUTHS
        .iter()
        .enumerate()
        .flat_map(|(r, pts)| (1..=pts.len()).map(move |p| (r as u8 + 1, p)))
        .collect()
}
