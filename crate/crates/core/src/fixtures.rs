//! Point configurations with known answers, shared by tests, benchmarks and
//! the acceptance suite.

use num_complex::Complex64;
use rand::Rng;

use crate::surfaces::{hyperbolic, CoverPoint, GroupElement, Surface, SurfaceKind};

/// A point at cover distance at most `radius` from `center`.
pub fn nearby_point<R: Rng + ?Sized>(center: &CoverPoint, radius: f64, rng: &mut R) -> CoverPoint {
    let alpha = radius * rng.random::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    match *center {
        CoverPoint::Plane([x, y]) => CoverPoint::plane(x + alpha * theta.cos(), y + alpha * theta.sin()),
        CoverPoint::Sphere(p) => {
            // Orthonormal tangent frame at p.
            let helper = if p[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let u = normalize(cross(p, helper));
            let v = cross(p, u);
            let t = [0, 1, 2].map(|k| theta.cos() * u[k] + theta.sin() * v[k]);
            let q = [0, 1, 2].map(|k| alpha.cos() * p[k] + alpha.sin() * t[k]);
            CoverPoint::Sphere(normalize(q))
        }
        CoverPoint::Disk(z) => {
            let w = Complex64::from_polar((alpha / 2.0).tanh(), theta);
            CoverPoint::Disk((w + z) / (Complex64::new(1.0, 0.0) + z.conj() * w))
        }
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    v.map(|c| c / n)
}

/// Replaces every lift by a random translate, `g_i·x̃_i`.
pub fn random_relift<R: Rng + ?Sized>(
    surface: &Surface,
    points: &[CoverPoint],
    max_word_length: usize,
    rng: &mut R,
) -> (Vec<GroupElement>, Vec<CoverPoint>) {
    let moves: Vec<GroupElement> = points
        .iter()
        .map(|_| GroupElement::random(surface.kind(), rng, max_word_length))
        .collect();
    let lifted = points
        .iter()
        .zip(&moves)
        .map(|(p, g)| surface.act(g, p).expect("valid point and element"))
        .collect();
    (moves, lifted)
}

/// Largest pairwise distance at which the cocycle law is guaranteed to hold
/// in practice on each surface.
pub fn small_scale_threshold(kind: SurfaceKind) -> f64 {
    match kind {
        SurfaceKind::Torus | SurfaceKind::KleinBottle => 0.2,
        SurfaceKind::ProjectivePlane => 0.5,
        SurfaceKind::GenusTwo => 0.3,
    }
}

/// A closed geodesic loop sampled at `count` equally spaced points, together
/// with a scale between the spacing and twice the spacing.
#[derive(Clone, Debug)]
pub struct GeneratorLoop {
    pub points: Vec<CoverPoint>,
    pub epsilon: f64,
    /// Class of the walk `0 → 1 → … → count-1 → 0`.
    pub expected_free: Vec<i64>,
    pub expected_torsion: Vec<u8>,
}

/// Loop along generator `index` of the deck group:
/// torus `0 ↦ (1,0)`, `1 ↦ (0,1)`; Klein `0 ↦ m`-generator, `1 ↦ n`-generator;
/// projective plane `0`; genus two `0..4 ↦ g_index`.
pub fn generator_loop(kind: SurfaceKind, index: usize) -> GeneratorLoop {
    match kind {
        SurfaceKind::Torus => {
            let count = 8;
            let points = (0..count)
                .map(|k| {
                    let t = k as f64 / count as f64;
                    if index == 0 {
                        CoverPoint::plane(t, 0.3)
                    } else {
                        CoverPoint::plane(0.3, t)
                    }
                })
                .collect();
            let expected_free = if index == 0 { vec![1, 0] } else { vec![0, 1] };
            GeneratorLoop {
                points,
                epsilon: 0.15,
                expected_free,
                expected_torsion: vec![],
            }
        }
        SurfaceKind::KleinBottle => {
            let count = 8;
            let points = (0..count)
                .map(|k| {
                    let t = k as f64 / count as f64;
                    if index == 0 {
                        CoverPoint::plane(0.0, t)
                    } else {
                        CoverPoint::plane(t, 0.3)
                    }
                })
                .collect();
            let (expected_free, expected_torsion) = if index == 0 { (vec![1], vec![0]) } else { (vec![0], vec![1]) };
            GeneratorLoop {
                points,
                epsilon: 0.15,
                expected_free,
                expected_torsion,
            }
        }
        SurfaceKind::ProjectivePlane => {
            let count = 6;
            let points = (0..count)
                .map(|k| {
                    let a = std::f64::consts::PI * k as f64 / count as f64;
                    CoverPoint::sphere(a.sin(), 0.0, a.cos())
                })
                .collect();
            GeneratorLoop {
                points,
                epsilon: 0.6,
                expected_free: vec![],
                expected_torsion: vec![1],
            }
        }
        SurfaceKind::GenusTwo => {
            let count = 8;
            let step = hyperbolic::translation_length() / count as f64;
            let direction = Complex64::from_polar(1.0, index as f64 * std::f64::consts::FRAC_PI_4);
            let points = (0..count)
                .map(|j| CoverPoint::Disk(direction * (j as f64 * step / 2.0).tanh()))
                .collect();
            let mut expected_free = vec![0; 4];
            expected_free[index] = 1;
            GeneratorLoop {
                points,
                epsilon: 1.2 * step,
                expected_free,
                expected_torsion: vec![],
            }
        }
    }
}

/// Number of generator loops [`generator_loop`] knows for `kind`.
pub fn generator_loop_count(kind: SurfaceKind) -> usize {
    match kind {
        SurfaceKind::Torus | SurfaceKind::KleinBottle => 2,
        SurfaceKind::ProjectivePlane => 1,
        SurfaceKind::GenusTwo => 4,
    }
}

/// Birth and death of the one-cycle in the Rips filtration of four points,
/// found by adding edges in order of length and tracking the first Betti
/// number of the flag complex over `GF(2)`.
pub fn brute_force_rips_cycle(d: &[[f64; 4]; 4]) -> Option<(f64, f64)> {
    let mut edges: Vec<(f64, usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (d[i][j], i, j))).collect();
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut present = [[false; 4]; 4];
    let mut birth = None;
    let mut k = 0;
    while k < edges.len() {
        let value = edges[k].0;
        while k < edges.len() && edges[k].0 == value {
            let (_, i, j) = edges[k];
            present[i][j] = true;
            present[j][i] = true;
            k += 1;
        }
        let beta = first_betti(&present);
        match (birth, beta) {
            (None, 1) => birth = Some(value),
            (Some(b), 0) => return Some((b, value)),
            _ => {}
        }
    }
    None
}

/// `β₁ = #edges − rank ∂₁ − rank ∂₂` of the flag complex on four vertices.
fn first_betti(present: &[[bool; 4]; 4]) -> usize {
    let edge_list: Vec<(usize, usize)> =
        (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| present[i][j]).collect();
    let index = |i: usize, j: usize| edge_list.iter().position(|&e| e == (i, j));
    let boundary_one: Vec<u64> = edge_list.iter().map(|&(i, j)| (1 << i) | (1 << j)).collect();
    let mut boundary_two = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            for c in b + 1..4 {
                if let (Some(x), Some(y), Some(z)) = (index(a, b), index(a, c), index(b, c)) {
                    boundary_two.push((1u64 << x) | (1 << y) | (1 << z));
                }
            }
        }
    }
    edge_list.len() - gf2_rank(boundary_one) - gf2_rank(boundary_two)
}

fn gf2_rank(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r] >> bit & 1 == 1 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}
