//! Real projective plane as the quotient of the unit sphere by `x ↦ -x`.

pub const UNIT_TOLERANCE: f64 = 1e-12;

fn dot(p: [f64; 3], q: [f64; 3]) -> f64 {
    p[0] * q[0] + p[1] * q[1] + p[2] * q[2]
}

fn cross_norm(p: [f64; 3], q: [f64; 3]) -> f64 {
    let c = [
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    ];
    dot(c, c).sqrt()
}

/// Great-circle distance, via `atan2` so that nearby and antipodal pairs
/// keep full precision.
pub fn distance(p: [f64; 3], q: [f64; 3]) -> f64 {
    cross_norm(p, q).atan2(dot(p, q))
}

pub fn flip(p: [f64; 3]) -> [f64; 3] {
    [-p[0], -p[1], -p[2]]
}

pub fn is_unit(p: [f64; 3]) -> bool {
    (dot(p, p).sqrt() - 1.0).abs() <= UNIT_TOLERANCE
}

/// Upper hemisphere `z > 0`; on the equator, `y > 0`, then `x > 0`.
pub fn in_hemisphere(p: [f64; 3]) -> bool {
    if p[2] != 0.0 {
        return p[2] > 0.0;
    }
    if p[1] != 0.0 {
        return p[1] > 0.0;
    }
    p[0] > 0.0
}
