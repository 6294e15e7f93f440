//! Genus-two surface as the quotient of the Poincaré disk by a surface group.
//!
//! The deck group is generated by four hyperbolic translations `g0..g3`
//! whose axes pass through the origin at angles `k·π/4`. Each generator is
//! stored as an `SU(1,1)` matrix `[[a, b], [conj(b), conj(a)]]`, i.e. the raw
//! matrix `[[1, ω^k s], [ω^-k s, 1]]` (determinant `c²`) divided by `c`, with
//! `c = tan(π/8)`, `s = sqrt(1 - c²)` and `ω = exp(iπ/4)`.
//!
//! The Dirichlet domain of the orbit of `0` is the regular octagon with
//! interior angles `π/4`; its sides are paired by the generators, so the
//! tiles `f·D` adjacent to `f·D` are exactly `f·g·D` for the eight
//! generators and inverses. The orbit search below walks that adjacency.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance used when comparing group elements by their matrices.
pub const MATRIX_TOLERANCE: f64 = 1e-9;

/// `tan(π/8)`, the normalising constant of the generator matrices.
pub fn c() -> f64 {
    FRAC_PI_8.tan()
}

/// Euclidean distance from `0` of `g0·0`, equal to `sqrt(1 - c²)`.
pub fn translation_radius() -> f64 {
    (1.0 - c() * c()).sqrt()
}

/// Hyperbolic translation length of every generator.
pub fn translation_length() -> f64 {
    2.0 * (1.0 / c()).acosh()
}

/// Hyperbolic circumradius of the Dirichlet octagon: `cosh R = cot²(π/8)`.
pub fn domain_circumradius() -> f64 {
    (1.0 / (c() * c())).acosh()
}

/// Euclidean radius of the octagon vertices in the disk.
pub fn domain_euclidean_radius() -> f64 {
    (domain_circumradius() / 2.0).tanh()
}

/// Hyperbolic diameter of the Dirichlet domain (twice the circumradius).
pub fn domain_diameter() -> f64 {
    2.0 * domain_circumradius()
}

/// Generator letter: `g{index}` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: u8,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: u8, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    /// All eight letters in canonical order `g0, g0', g1, g1', ...`.
    pub fn all() -> [Letter; 8] {
        let mut out = [Letter::new(0, false); 8];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = Letter::new((i / 2) as u8, i % 2 == 1);
        }
        out
    }

    pub fn inv(self) -> Self {
        Self::new(self.generator, !self.inverse)
    }

    fn table_index(self) -> usize {
        2 * self.generator as usize + self.inverse as usize
    }

    pub(crate) fn mobius(self) -> Mobius {
        generator_table()[self.table_index()]
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.generator)?;
        if self.inverse {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// An orientation-preserving isometry of the disk in `SU(1,1)` form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
    };

    fn generator(k: u8) -> Self {
        let c = c();
        let s = (1.0 - c * c).sqrt();
        Self {
            a: Complex64::new(1.0 / c, 0.0),
            b: Complex64::from_polar(s / c, f64::from(k) * FRAC_PI_4),
        }
    }

    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            a: self.a * other.a + self.b * other.b.conj(),
            b: self.a * other.b + self.b * other.a.conj(),
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.b.conj() * z + self.a.conj())
    }

    /// Image of the origin.
    pub fn orbit_origin(&self) -> Complex64 {
        self.b / self.a.conj()
    }

    /// Full 2×2 matrix `[[a, b], [conj(b), conj(a)]]`.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [[self.a, self.b], [self.b.conj(), self.a.conj()]]
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.a.conj() - self.b * self.b.conj()
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.a.conj()
    }

    fn scale(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(1.0)
    }

    /// Distance to `±other`, whichever sign is closer.
    pub fn sign_distance(&self, other: &Mobius) -> f64 {
        let plus = ((self.a - other.a).norm_sqr() + (self.b - other.b).norm_sqr()).sqrt();
        let minus = ((self.a + other.a).norm_sqr() + (self.b + other.b).norm_sqr()).sqrt();
        plus.min(minus)
    }

    pub fn approx_eq(&self, other: &Mobius, tol: f64) -> bool {
        self.sign_distance(other) <= tol * self.scale().max(other.scale())
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Mobius::IDENTITY, tol)
    }

    /// Point on the hyperboloid model for the orbit point `self·0`; exact
    /// in terms of the matrix entries, so it stays accurate near the circle
    /// at infinity.
    fn hyperboloid_origin(&self) -> [f64; 3] {
        let xy = 2.0 * self.a * self.b;
        [xy.re, xy.im, self.a.norm_sqr() + self.b.norm_sqr()]
    }
}

fn generator_table() -> &'static [Mobius; 8] {
    static TABLE: OnceLock<[Mobius; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [Mobius::IDENTITY; 8];
        for k in 0..4u8 {
            let g = Mobius::generator(k);
            table[2 * k as usize] = g;
            table[2 * k as usize + 1] = g.inverse();
        }
        table
    })
}

/// Word in the generators together with its cached matrix.
#[derive(Clone, Debug)]
pub struct Word {
    letters: Vec<Letter>,
    mobius: Mobius,
}

impl Word {
    pub fn identity() -> Self {
        Self {
            letters: Vec::new(),
            mobius: Mobius::IDENTITY,
        }
    }

    pub fn generator(index: u8) -> Self {
        assert!(index < 4, "genus-two group has generators g0..g3");
        Self::from_letters(vec![Letter::new(index, false)])
    }

    /// Build a word and its matrix. The letters are put in Dehn-reduced
    /// form, so a word representing the identity becomes empty.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        let letters = dehn_reduce(letters);
        let mobius = letters.iter().fold(Mobius::IDENTITY, |m, l| m.compose(&l.mobius()));
        Self { letters, mobius }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mobius(&self) -> &Mobius {
        &self.mobius
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(&other.letters).copied().collect())
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
            mobius: self.mobius.inverse(),
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.mobius.apply(z)
    }

    /// Signed exponent sums of `g0..g3`.
    pub fn exponent_sums(&self) -> [i64; 4] {
        let mut sums = [0i64; 4];
        for l in &self.letters {
            sums[l.generator as usize] += if l.inverse { -1 } else { 1 };
        }
        sums
    }

    /// Word-length-then-lexicographic order.
    pub fn canonical_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

/// Exact equality through the word problem, not through the matrices.
impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        let quotient = self.letters.iter().copied().chain(other.letters.iter().rev().map(|l| l.inv()));
        dehn_reduce(quotient.collect()).is_empty()
    }
}

impl Eq for Word {}

/// The surface relator `g0 g1' g2 g3' g0' g1 g2' g3`.
const RELATOR: [Letter; 8] = [
    Letter::new(0, false),
    Letter::new(1, true),
    Letter::new(2, false),
    Letter::new(3, true),
    Letter::new(0, true),
    Letter::new(1, false),
    Letter::new(2, true),
    Letter::new(3, false),
];

/// Cyclic rotations of the relator and of its inverse.
fn relator_rotations() -> &'static [[Letter; 8]; 16] {
    static TABLE: OnceLock<[[Letter; 8]; 16]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let inverse: Vec<Letter> = RELATOR.iter().rev().map(|l| l.inv()).collect();
        std::array::from_fn(|k| {
            let base: &[Letter] = if k < 8 { &RELATOR } else { &inverse };
            std::array::from_fn(|i| base[(i + k % 8) % 8])
        })
    })
}

fn free_reduce(letters: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Dehn's algorithm: free reduction plus replacing any subword made of more
/// than half of a relator rotation by the inverse of the rest. Every pair of
/// distinct rotations shares at most one letter, so the presentation is
/// small-cancellation and a word is trivial iff this reduces it to empty.
pub fn dehn_reduce(letters: Vec<Letter>) -> Vec<Letter> {
    let mut w = free_reduce(letters);
    'outer: loop {
        for i in 0..w.len() {
            for rho in relator_rotations() {
                let k = w[i..].iter().zip(rho).take_while(|(a, b)| a == b).count();
                if k > 4 {
                    let replacement = rho[k..].iter().rev().map(|l| l.inv());
                    w.splice(i..i + k, replacement);
                    w = free_reduce(w);
                    continue 'outer;
                }
            }
        }
        return w;
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for token in s.split('.') {
            let (body, inverse) = match token.strip_suffix('\'') {
                Some(body) => (body, true),
                None => (token, false),
            };
            let index = body
                .strip_prefix('g')
                .and_then(|d| d.parse::<u8>().ok())
                .filter(|&d| d < 4)
                .ok_or_else(|| Error::Input(format!("bad generator token {token:?} in word {s:?}")))?;
            letters.push(Letter::new(index, inverse));
        }
        Ok(Word::from_letters(letters))
    }
}

/// Ratio `|z - w| / |1 - conj(z) w|`; hyperbolic distance is `2 artanh` of it.
pub fn pseudo_distance(z: Complex64, w: Complex64) -> f64 {
    let num = (z - w).norm();
    if num == 0.0 {
        return 0.0;
    }
    num / (Complex64::new(1.0, 0.0) - z.conj() * w).norm()
}

pub fn distance(z: Complex64, w: Complex64) -> f64 {
    2.0 * pseudo_distance(z, w).min(1.0).atanh()
}

/// True iff `z` is at least as close to `0` as to every `g·0` with `g` a
/// word of length at most two.
pub fn domain_contains(z: Complex64) -> bool {
    let d0 = z.norm();
    let table = generator_table();
    for first in table {
        if pseudo_distance(z, first.orbit_origin()) < d0 {
            return false;
        }
        for second in table {
            let g = first.compose(second);
            if g.is_identity(MATRIX_TOLERANCE) {
                continue;
            }
            if pseudo_distance(z, g.orbit_origin()) < d0 {
                return false;
            }
        }
    }
    true
}

/// Writes `z = h·z'` with `z'` in the Dirichlet domain; returns `(h, z')`.
pub fn reduce_to_domain(z: Complex64) -> (Word, Complex64) {
    let table = generator_table();
    let mut current = z;
    let mut letters = Vec::new();
    // Each step strictly decreases the distance to the origin, and the orbit
    // is discrete, so this terminates; the cap only guards against NaN input.
    for _ in 0..100_000 {
        let here = current.norm();
        let mut best: Option<(f64, usize)> = None;
        for (i, g) in table.iter().enumerate() {
            let r = pseudo_distance(current, g.orbit_origin());
            if r < here && best.is_none_or(|(b, _)| r < b) {
                best = Some((r, i));
            }
        }
        let Some((_, i)) = best else { break };
        let letter = Letter::all()[i];
        current = letter.inv().mobius().apply(current);
        letters.push(letter);
    }
    (Word::from_letters(letters), current)
}

/// One group element found by [`orbit_search`].
#[derive(Clone, Debug)]
pub(crate) struct OrbitHit {
    pub distance: f64,
    pub word: Word,
}

struct Node {
    mobius: Mobius,
    parent: usize,
    letter: Option<Letter>,
    depth: usize,
}

fn word_of(nodes: &[Node], mut idx: usize) -> Word {
    let mut letters = Vec::with_capacity(nodes[idx].depth);
    while let Some(l) = nodes[idx].letter {
        letters.push(l);
        idx = nodes[idx].parent;
    }
    letters.reverse();
    Word::from_letters(letters)
}

fn grid_key(point: [f64; 3]) -> [i64; 3] {
    point.map(|v| v.floor() as i64)
}

/// Finds every `f` with `d(p, f·q) <= bound + tie_tolerance`, where `p`, `q`
/// lie in the Dirichlet domain.
///
/// Tiles `f·D` are visited breadth-first across shared sides, restricted to
/// tiles whose centre lies within `bound + R` of `p` (a tile within that
/// radius is the only kind that can meet the ball `B(p, bound)`). The tiles
/// meeting a ball form a side-connected set containing `D`, so the walk
/// reaches all of them. When `shrink` is set the bound tightens to the best
/// distance found so far and only the minimizers are returned.
pub(crate) fn orbit_search(
    p: Complex64,
    q: Complex64,
    bound: f64,
    shrink: bool,
    tie_tolerance: f64,
    max_word_length: usize,
) -> Result<Vec<OrbitHit>> {
    const SLACK: f64 = 1e-9;
    const NEIGHBOUR_RADIUS: f64 = 1.0;
    let radius = domain_circumradius();
    let table = generator_table();

    let mut best = bound;
    let reach = |best: f64, m: &Mobius| distance(p, m.orbit_origin()) <= best + tie_tolerance + radius + SLACK;

    let mut nodes = vec![Node {
        mobius: Mobius::IDENTITY,
        parent: 0,
        letter: None,
        depth: 0,
    }];
    let mut seen: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
    seen.entry(grid_key(Mobius::IDENTITY.hyperboloid_origin())).or_default().push(0);
    let mut queue = VecDeque::from([0usize]);
    let mut hits: Vec<(f64, usize)> = Vec::new();

    while let Some(idx) = queue.pop_front() {
        let mobius = nodes[idx].mobius;
        if !reach(best, &mobius) {
            continue;
        }
        let value = distance(p, mobius.apply(q));
        if value <= best + tie_tolerance {
            hits.push((value, idx));
            if shrink && value < best {
                best = value;
            }
        }
        let depth = nodes[idx].depth;
        for (i, g) in table.iter().enumerate() {
            let child = mobius.compose(g);
            let h = child.hyperboloid_origin();
            let key = grid_key(h);
            let mut known = false;
            'cells: for dx in -1..=1 {
                for dy in -1..=1 {
                    for dz in -1..=1 {
                        if let Some(list) = seen.get(&[key[0] + dx, key[1] + dy, key[2] + dz]) {
                            for &j in list {
                                let o = nodes[j].mobius.hyperboloid_origin();
                                let gap = ((o[0] - h[0]).powi(2) + (o[1] - h[1]).powi(2) + (o[2] - h[2]).powi(2)).sqrt();
                                if gap < NEIGHBOUR_RADIUS {
                                    known = true;
                                    break 'cells;
                                }
                            }
                        }
                    }
                }
            }
            if known || !reach(best, &child) {
                continue;
            }
            if depth + 1 > max_word_length {
                return Err(Error::Resource(format!(
                    "genus-two orbit search needs words longer than {max_word_length} (bound {bound:.6})"
                )));
            }
            let child_idx = nodes.len();
            nodes.push(Node {
                mobius: child,
                parent: idx,
                letter: Some(Letter::all()[i]),
                depth: depth + 1,
            });
            seen.entry(key).or_default().push(child_idx);
            queue.push_back(child_idx);
        }
    }

    let limit = best + tie_tolerance;
    Ok(hits
        .into_iter()
        .filter(|&(v, _)| v <= limit)
        .map(|(distance, idx)| OrbitHit {
            distance,
            word: word_of(&nodes, idx),
        })
        .collect())
}
