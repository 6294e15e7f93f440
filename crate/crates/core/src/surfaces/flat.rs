//! Flat torus and flat Klein bottle, both covered by the plane with the unit
//! square `[0,1)²` as fundamental domain.

/// Upper bound on the base distance between any two points of either
/// surface: half the diagonal of the unit square.
pub const BASE_DIAMETER: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn distance(p: [f64; 2], q: [f64; 2]) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

pub fn torus_act(n: i64, m: i64, p: [f64; 2]) -> [f64; 2] {
    [p[0] + n as f64, p[1] + m as f64]
}

pub fn klein_sign(m: i64) -> f64 {
    if m.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn klein_act(n: i64, m: i64, p: [f64; 2]) -> [f64; 2] {
    [klein_sign(m) * p[0] + n as f64, p[1] + m as f64]
}

/// `(n,m)(n',m') = (n + (-1)^m n', m + m')`.
pub fn klein_compose(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    let sign = if a.1.rem_euclid(2) == 0 { 1 } else { -1 };
    (a.0 + sign * b.0, a.1 + b.1)
}

pub fn klein_inverse(n: i64, m: i64) -> (i64, i64) {
    let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
    (-sign * n, -m)
}

/// Integers `k` with `|target - k| <= bound` (widened by one on each side;
/// callers filter by exact distance).
fn window(target: f64, bound: f64) -> std::ops::RangeInclusive<i64> {
    let lo = (target - bound).floor() as i64 - 1;
    let hi = (target + bound).ceil() as i64 + 1;
    lo..=hi
}

/// Every `(n, m)` with `|p - (q + (n, m))| <= bound`.
pub fn torus_candidates(p: [f64; 2], q: [f64; 2], bound: f64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for n in window(p[0] - q[0], bound) {
        for m in window(p[1] - q[1], bound) {
            if distance(p, torus_act(n, m, q)) <= bound {
                out.push((n, m));
            }
        }
    }
    out
}

/// Every `(n, m)` with `|p - (n,m)·q| <= bound` for the Klein action.
pub fn klein_candidates(p: [f64; 2], q: [f64; 2], bound: f64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for m in window(p[1] - q[1], bound) {
        for n in window(p[0] - klein_sign(m) * q[0], bound) {
            if distance(p, klein_act(n, m, q)) <= bound {
                out.push((n, m));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn in_unit_square(p: [f64; 2]) -> bool {
    (0.0..1.0).contains(&p[0]) && (0.0..1.0).contains(&p[1])
}

/// `(n, m)` and `p'` in the unit square with `p = (n,m)·p'` for the torus.
pub fn torus_reduce(p: [f64; 2]) -> ((i64, i64), [f64; 2]) {
    let n = p[0].floor();
    let m = p[1].floor();
    let r = [wrap_unit(p[0] - n), wrap_unit(p[1] - m)];
    ((n as i64, m as i64), r)
}

/// `(n, m)` and `p'` in the unit square with `p = (n,m)·p'` for the Klein action.
pub fn klein_reduce(p: [f64; 2]) -> ((i64, i64), [f64; 2]) {
    let m = p[1].floor() as i64;
    let y = wrap_unit(p[1] - m as f64);
    // p.x = (-1)^m x' + n with x' in [0,1).
    let sign = klein_sign(m);
    let (n, x) = if sign > 0.0 {
        let n = p[0].floor();
        (n as i64, wrap_unit(p[0] - n))
    } else {
        // x' = n - p.x in [0,1)  =>  n = floor(p.x) + 1 unless p.x is integral.
        let n = (p[0]).ceil();
        let x = n - p[0];
        if x >= 1.0 {
            (n as i64 - 1, wrap_unit(x - 1.0))
        } else {
            (n as i64, wrap_unit(x))
        }
    };
    ((n, m), [x, y])
}

/// Rounding can push `v - floor(v)` up to exactly 1.0.
fn wrap_unit(v: f64) -> f64 {
    if v >= 1.0 {
        0.0
    } else {
        v.max(0.0)
    }
}
