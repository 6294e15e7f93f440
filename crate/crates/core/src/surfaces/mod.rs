//! The four model surfaces: their universal covers, deck groups, quotient
//! distances, fundamental domains and uniform samplers.
//!
//! | surface           | cover         | deck group           | `H₁`       |
//! |-------------------|---------------|----------------------|------------|
//! | torus             | flat plane    | `ℤ ⊕ ℤ`              | `ℤ²`       |
//! | Klein bottle      | flat plane    | `ℤ ⋊ ℤ`              | `ℤ ⊕ ℤ/2`  |
//! | projective plane  | unit sphere   | `ℤ/2`                | `ℤ/2`      |
//! | genus two         | Poincaré disk | surface group        | `ℤ⁴`       |

pub mod flat;
pub mod hyperbolic;
pub mod sphere;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg};
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use hyperbolic::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Torus,
    #[serde(rename = "klein")]
    KleinBottle,
    #[serde(rename = "rp2")]
    ProjectivePlane,
    #[serde(rename = "genus2")]
    GenusTwo,
}

impl SurfaceKind {
    pub const ALL: [SurfaceKind; 4] = [
        SurfaceKind::Torus,
        SurfaceKind::KleinBottle,
        SurfaceKind::ProjectivePlane,
        SurfaceKind::GenusTwo,
    ];

    /// Short name used on the command line and in output files.
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Torus => "torus",
            SurfaceKind::KleinBottle => "klein",
            SurfaceKind::ProjectivePlane => "rp2",
            SurfaceKind::GenusTwo => "genus2",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            SurfaceKind::Torus => "flat torus R^2 / (Z + Z)",
            SurfaceKind::KleinBottle => "flat Klein bottle R^2 / (Z x| Z)",
            SurfaceKind::ProjectivePlane => "real projective plane S^2 / (Z/2)",
            SurfaceKind::GenusTwo => "genus-two surface D / <g0,g1,g2,g3>",
        }
    }

    /// Length of [`AbelianClass::free`].
    pub fn free_rank(self) -> usize {
        match self {
            SurfaceKind::Torus => 2,
            SurfaceKind::KleinBottle => 1,
            SurfaceKind::ProjectivePlane => 0,
            SurfaceKind::GenusTwo => 4,
        }
    }

    /// Length of [`AbelianClass::torsion`]; every torsion factor is `ℤ/2`.
    pub fn torsion_rank(self) -> usize {
        match self {
            SurfaceKind::KleinBottle | SurfaceKind::ProjectivePlane => 1,
            _ => 0,
        }
    }

    /// Length of the shortest non-contractible loop.
    pub fn systole(self) -> f64 {
        match self {
            SurfaceKind::Torus | SurfaceKind::KleinBottle => 1.0,
            SurfaceKind::ProjectivePlane => std::f64::consts::PI,
            SurfaceKind::GenusTwo => hyperbolic::translation_length(),
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "torus" | "t2" => Ok(SurfaceKind::Torus),
            "klein" | "kleinbottle" | "klein-bottle" => Ok(SurfaceKind::KleinBottle),
            "rp2" | "projective" | "projectiveplane" => Ok(SurfaceKind::ProjectivePlane),
            "genus2" | "genus-two" | "genustwo" => Ok(SurfaceKind::GenusTwo),
            other => Err(Error::Input(format!("unknown surface {other:?}"))),
        }
    }
}

/// A point of a cover space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoverPoint {
    /// The plane covering the torus and the Klein bottle.
    Plane([f64; 2]),
    /// A unit vector covering the projective plane.
    Sphere([f64; 3]),
    /// A point of the open unit disk covering the genus-two surface.
    Disk(Complex64),
}

impl CoverPoint {
    pub fn plane(x: f64, y: f64) -> Self {
        CoverPoint::Plane([x, y])
    }

    pub fn sphere(x: f64, y: f64, z: f64) -> Self {
        CoverPoint::Sphere([x, y, z])
    }

    pub fn disk(re: f64, im: f64) -> Self {
        CoverPoint::Disk(Complex64::new(re, im))
    }

    pub fn coords(&self) -> Vec<f64> {
        match *self {
            CoverPoint::Plane(p) => p.to_vec(),
            CoverPoint::Sphere(p) => p.to_vec(),
            CoverPoint::Disk(z) => vec![z.re, z.im],
        }
    }

    /// Builds the point of `kind`'s cover from raw coordinates
    /// (two for planes and the disk, three for the sphere).
    pub fn from_coords(kind: SurfaceKind, coords: &[f64]) -> Result<Self> {
        let p = match (kind, coords) {
            (SurfaceKind::Torus | SurfaceKind::KleinBottle, &[x, y]) => CoverPoint::plane(x, y),
            (SurfaceKind::ProjectivePlane, &[x, y, z]) => CoverPoint::sphere(x, y, z),
            (SurfaceKind::GenusTwo, &[re, im]) => CoverPoint::disk(re, im),
            _ => {
                return Err(Error::Input(format!(
                    "{kind} points take {} coordinates, got {}",
                    coordinate_count(kind),
                    coords.len()
                )))
            }
        };
        validate(kind, &p)?;
        Ok(p)
    }

    /// Euclidean distance between coordinate vectors of the same variant.
    pub fn coordinate_gap(&self, other: &CoverPoint) -> f64 {
        match (self, other) {
            (CoverPoint::Plane(a), CoverPoint::Plane(b)) => flat::distance(*a, *b),
            (CoverPoint::Sphere(a), CoverPoint::Sphere(b)) => {
                ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
            }
            (CoverPoint::Disk(a), CoverPoint::Disk(b)) => (a - b).norm(),
            _ => f64::INFINITY,
        }
    }
}

pub fn coordinate_count(kind: SurfaceKind) -> usize {
    match kind {
        SurfaceKind::ProjectivePlane => 3,
        _ => 2,
    }
}

/// Checks that `p` is a point of `kind`'s cover space.
pub fn validate(kind: SurfaceKind, p: &CoverPoint) -> Result<()> {
    match (kind, p) {
        (SurfaceKind::Torus | SurfaceKind::KleinBottle, CoverPoint::Plane(v)) => {
            if v.iter().all(|c| c.is_finite()) {
                Ok(())
            } else {
                Err(Error::Domain(format!("non-finite plane point {v:?}")))
            }
        }
        (SurfaceKind::ProjectivePlane, CoverPoint::Sphere(v)) => {
            if v.iter().all(|c| c.is_finite()) && sphere::is_unit(*v) {
                Ok(())
            } else {
                Err(Error::Domain(format!("{v:?} is not a unit vector")))
            }
        }
        (SurfaceKind::GenusTwo, CoverPoint::Disk(z)) => {
            if z.re.is_finite() && z.im.is_finite() && z.norm() < 1.0 {
                Ok(())
            } else {
                Err(Error::Domain(format!("{z} is not inside the unit disk")))
            }
        }
        _ => Err(Error::Input(format!("{p:?} is not a point of the {kind} cover"))),
    }
}

/// Element of the deck group of one surface.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupElement {
    Torus { n: i64, m: i64 },
    Klein { n: i64, m: i64 },
    Projective { flip: bool },
    GenusTwo(Word),
}

impl GroupElement {
    pub fn identity(kind: SurfaceKind) -> Self {
        match kind {
            SurfaceKind::Torus => GroupElement::Torus { n: 0, m: 0 },
            SurfaceKind::KleinBottle => GroupElement::Klein { n: 0, m: 0 },
            SurfaceKind::ProjectivePlane => GroupElement::Projective { flip: false },
            SurfaceKind::GenusTwo => GroupElement::GenusTwo(Word::identity()),
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        match self {
            GroupElement::Torus { .. } => SurfaceKind::Torus,
            GroupElement::Klein { .. } => SurfaceKind::KleinBottle,
            GroupElement::Projective { .. } => SurfaceKind::ProjectivePlane,
            GroupElement::GenusTwo(_) => SurfaceKind::GenusTwo,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Torus { n, m } | GroupElement::Klein { n, m } => *n == 0 && *m == 0,
            GroupElement::Projective { flip } => !flip,
            GroupElement::GenusTwo(w) => w.is_identity(),
        }
    }

    /// Group product `self ∘ other`, acting as `other` first.
    ///
    /// Panics when the two elements belong to different surfaces.
    pub fn multiply(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Torus { n, m }, GroupElement::Torus { n: n2, m: m2 }) => GroupElement::Torus {
                n: n + n2,
                m: m + m2,
            },
            (GroupElement::Klein { n, m }, GroupElement::Klein { n: n2, m: m2 }) => {
                let (n, m) = flat::klein_compose((*n, *m), (*n2, *m2));
                GroupElement::Klein { n, m }
            }
            (GroupElement::Projective { flip: a }, GroupElement::Projective { flip: b }) => {
                GroupElement::Projective { flip: a ^ b }
            }
            (GroupElement::GenusTwo(a), GroupElement::GenusTwo(b)) => GroupElement::GenusTwo(a.multiply(b)),
            _ => panic!("cannot multiply {:?} element by {:?} element", self.kind(), other.kind()),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Torus { n, m } => GroupElement::Torus { n: -n, m: -m },
            GroupElement::Klein { n, m } => {
                let (n, m) = flat::klein_inverse(*n, *m);
                GroupElement::Klein { n, m }
            }
            GroupElement::Projective { flip } => GroupElement::Projective { flip: *flip },
            GroupElement::GenusTwo(w) => GroupElement::GenusTwo(w.inverse()),
        }
    }

    /// Image in the abelianization, i.e. the first homology class.
    pub fn abelianize(&self) -> AbelianClass {
        match self {
            GroupElement::Torus { n, m } => AbelianClass::new(vec![*n, *m], vec![]),
            GroupElement::Klein { n, m } => AbelianClass::new(vec![*m], vec![n.rem_euclid(2) as u8]),
            GroupElement::Projective { flip } => AbelianClass::new(vec![], vec![*flip as u8]),
            GroupElement::GenusTwo(w) => AbelianClass::new(w.exponent_sums().to_vec(), vec![]),
        }
    }

    /// Total order used to break ties between equidistant minimizers:
    /// lexicographic on lattice coordinates, word length then lexicographic
    /// for genus-two words.
    pub fn canonical_cmp(&self, other: &GroupElement) -> Ordering {
        match (self, other) {
            (GroupElement::Torus { n, m }, GroupElement::Torus { n: n2, m: m2 })
            | (GroupElement::Klein { n, m }, GroupElement::Klein { n: n2, m: m2 }) => (n, m).cmp(&(n2, m2)),
            (GroupElement::Projective { flip: a }, GroupElement::Projective { flip: b }) => a.cmp(b),
            (GroupElement::GenusTwo(a), GroupElement::GenusTwo(b)) => a.canonical_cmp(b),
            _ => self.kind().cmp(&other.kind()),
        }
    }

    /// Random element; genus-two words have uniformly random length in
    /// `0..=max_word_length`, lattice coordinates are drawn from
    /// `-max_word_length..=max_word_length`.
    pub fn random<R: Rng + ?Sized>(kind: SurfaceKind, rng: &mut R, max_word_length: usize) -> Self {
        let span = max_word_length as i64;
        match kind {
            SurfaceKind::Torus => GroupElement::Torus {
                n: rng.random_range(-span..=span),
                m: rng.random_range(-span..=span),
            },
            SurfaceKind::KleinBottle => GroupElement::Klein {
                n: rng.random_range(-span..=span),
                m: rng.random_range(-span..=span),
            },
            SurfaceKind::ProjectivePlane => GroupElement::Projective { flip: rng.random() },
            SurfaceKind::GenusTwo => {
                let len = rng.random_range(0..=max_word_length);
                let letters = (0..len).map(|_| Letter::all()[rng.random_range(0..8)]).collect();
                GroupElement::GenusTwo(Word::from_letters(letters))
            }
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Torus { n, m } | GroupElement::Klein { n, m } => write!(f, "({n},{m})"),
            GroupElement::Projective { flip } => write!(f, "{}", *flip as u8),
            GroupElement::GenusTwo(w) => write!(f, "{w}"),
        }
    }
}

/// Element of the abelianized deck group: free integer coordinates followed
/// by `ℤ/2` residues.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianClass {
    pub free: Vec<i64>,
    pub torsion: Vec<u8>,
}

impl AbelianClass {
    pub fn new(free: Vec<i64>, torsion: Vec<u8>) -> Self {
        let torsion = torsion.into_iter().map(|t| t % 2).collect();
        Self { free, torsion }
    }

    pub fn zero(kind: SurfaceKind) -> Self {
        Self::new(vec![0; kind.free_rank()], vec![0; kind.torsion_rank()])
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&v| v == 0) && self.torsion.iter().all(|&t| t == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self {
            free: self.free.iter().map(|v| v * k).collect(),
            torsion: self.torsion.iter().map(|&t| ((i64::from(t) * k).rem_euclid(2)) as u8).collect(),
        }
    }

    /// Representative of `{c, -c}` whose first nonzero free coordinate is
    /// positive; torsion is unaffected by negation.
    pub fn canonical_sign(&self) -> Self {
        match self.free.iter().find(|&&v| v != 0) {
            Some(&v) if v < 0 => -self.clone(),
            _ => self.clone(),
        }
    }
}

impl Add for AbelianClass {
    type Output = AbelianClass;

    fn add(mut self, rhs: AbelianClass) -> AbelianClass {
        self += rhs;
        self
    }
}

impl AddAssign for AbelianClass {
    fn add_assign(&mut self, rhs: AbelianClass) {
        assert_eq!(self.free.len(), rhs.free.len(), "class shapes differ");
        assert_eq!(self.torsion.len(), rhs.torsion.len(), "class shapes differ");
        for (a, b) in self.free.iter_mut().zip(&rhs.free) {
            *a += b;
        }
        for (a, b) in self.torsion.iter_mut().zip(&rhs.torsion) {
            *a = (*a + b) % 2;
        }
    }
}

impl Neg for AbelianClass {
    type Output = AbelianClass;

    fn neg(self) -> AbelianClass {
        AbelianClass {
            free: self.free.into_iter().map(|v| -v).collect(),
            torsion: self.torsion,
        }
    }
}

/// Formats as `(f₁,…;t₁,…)`, dropping the `;` part when there is no torsion.
impl fmt::Display for AbelianClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(|v| v.to_string()).collect();
        write!(f, "({}", free.join(","))?;
        if !self.torsion.is_empty() {
            let torsion: Vec<String> = self.torsion.iter().map(|v| v.to_string()).collect();
            write!(f, ";{}", torsion.join(","))?;
        }
        f.write_str(")")
    }
}

/// Tolerances and limits for the orbit searches.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Absolute tolerance below which two candidate distances count as tied.
    pub tie_tolerance: f64,
    /// Longest genus-two word the tile walk may produce.
    pub max_word_length: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            tie_tolerance: 1e-9,
            max_word_length: 12,
        }
    }
}

/// Distance in the base surface together with every deck element realising it.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseDistance {
    pub distance: f64,
    /// Canonically sorted; more than one entry means a tie.
    pub minimizers: Vec<GroupElement>,
}

impl BaseDistance {
    pub fn tied(&self) -> bool {
        self.minimizers.len() > 1
    }

    /// Canonically smallest minimizer.
    pub fn best(&self) -> &GroupElement {
        &self.minimizers[0]
    }
}

/// One model surface with its search configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Surface {
    kind: SurfaceKind,
    config: SearchConfig,
}

impl Surface {
    pub fn new(kind: SurfaceKind) -> Self {
        Self::with_config(kind, SearchConfig::default())
    }

    pub fn with_config(kind: SurfaceKind, config: SearchConfig) -> Self {
        Self { kind, config }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.kind)
    }

    pub fn validate(&self, p: &CoverPoint) -> Result<()> {
        validate(self.kind, p)
    }

    fn check_element(&self, g: &GroupElement) -> Result<()> {
        if g.kind() == self.kind {
            Ok(())
        } else {
            Err(Error::Input(format!("{} element used on the {} cover", g.kind(), self.kind)))
        }
    }

    /// Distance in the cover space.
    pub fn cover_distance(&self, p: &CoverPoint, q: &CoverPoint) -> Result<f64> {
        self.validate(p)?;
        self.validate(q)?;
        Ok(raw_distance(p, q))
    }

    pub fn act(&self, g: &GroupElement, p: &CoverPoint) -> Result<CoverPoint> {
        self.check_element(g)?;
        self.validate(p)?;
        Ok(raw_act(g, p))
    }

    /// Every `g` with `d(p, g·q) <= bound`.
    pub fn enumerate_candidates(&self, p: &CoverPoint, q: &CoverPoint, bound: f64) -> Result<Vec<GroupElement>> {
        self.validate(p)?;
        self.validate(q)?;
        if bound.is_nan() || bound < 0.0 {
            return Err(Error::Input(format!("candidate bound must be non-negative, got {bound}")));
        }
        Ok(self
            .candidates_with_distance(p, q, bound, false)?
            .into_iter()
            .map(|(_, g)| g)
            .collect())
    }

    fn candidates_with_distance(
        &self,
        p: &CoverPoint,
        q: &CoverPoint,
        bound: f64,
        shrink: bool,
    ) -> Result<Vec<(f64, GroupElement)>> {
        let mut out: Vec<(f64, GroupElement)> = match (p, q) {
            (CoverPoint::Plane(a), CoverPoint::Plane(b)) => match self.kind {
                SurfaceKind::Torus => flat::torus_candidates(*a, *b, bound)
                    .into_iter()
                    .map(|(n, m)| (flat::distance(*a, flat::torus_act(n, m, *b)), GroupElement::Torus { n, m }))
                    .collect(),
                _ => flat::klein_candidates(*a, *b, bound)
                    .into_iter()
                    .map(|(n, m)| (flat::distance(*a, flat::klein_act(n, m, *b)), GroupElement::Klein { n, m }))
                    .collect(),
            },
            (CoverPoint::Sphere(a), CoverPoint::Sphere(b)) => [false, true]
                .into_iter()
                .map(|flip| {
                    let image = if flip { sphere::flip(*b) } else { *b };
                    (sphere::distance(*a, image), GroupElement::Projective { flip })
                })
                .filter(|&(d, _)| d <= bound)
                .collect(),
            (CoverPoint::Disk(a), CoverPoint::Disk(b)) => {
                let (k, a_red) = hyperbolic::reduce_to_domain(*a);
                let (h, b_red) = hyperbolic::reduce_to_domain(*b);
                let tie = if shrink { self.config.tie_tolerance } else { 0.0 };
                let h_inv = h.inverse();
                hyperbolic::orbit_search(a_red, b_red, bound, shrink, tie, self.config.max_word_length)?
                    .into_iter()
                    .map(|hit| {
                        let g = k.multiply(&hit.word).multiply(&h_inv);
                        (hit.distance, GroupElement::GenusTwo(g))
                    })
                    .collect()
            }
            _ => unreachable!("points validated against the surface kind"),
        };
        out.sort_by(|a, b| a.1.canonical_cmp(&b.1));
        Ok(out)
    }

    /// Distance in the base surface, `min_g d(p, g·q)`, with all minimizers
    /// within the tie tolerance.
    pub fn base_distance(&self, p: &CoverPoint, q: &CoverPoint) -> Result<BaseDistance> {
        self.validate(p)?;
        self.validate(q)?;
        let tie = self.config.tie_tolerance;
        let cover = raw_distance(p, q);
        let candidates = match self.kind {
            SurfaceKind::Torus | SurfaceKind::KleinBottle => {
                let bound = cover.min(flat::BASE_DIAMETER + 1e-9) + tie;
                self.candidates_with_distance(p, q, bound, false)?
            }
            SurfaceKind::ProjectivePlane => self.candidates_with_distance(p, q, std::f64::consts::PI, false)?,
            SurfaceKind::GenusTwo => self.candidates_with_distance(p, q, f64::INFINITY, true)?,
        };
        let best = candidates
            .iter()
            .map(|(d, _)| *d)
            .fold(f64::INFINITY, f64::min);
        if !best.is_finite() {
            return Err(Error::Assertion(format!("no orbit candidate found for {p:?}, {q:?}")));
        }
        let minimizers = candidates
            .into_iter()
            .filter(|(d, _)| *d <= best + tie)
            .map(|(_, g)| g)
            .collect();
        Ok(BaseDistance {
            distance: best,
            minimizers,
        })
    }

    /// Whether `p` lies in the canonical fundamental domain.
    pub fn fundamental_domain_contains(&self, p: &CoverPoint) -> bool {
        if self.validate(p).is_err() {
            return false;
        }
        match p {
            CoverPoint::Plane(v) => flat::in_unit_square(*v),
            CoverPoint::Sphere(v) => sphere::in_hemisphere(*v),
            CoverPoint::Disk(z) => hyperbolic::domain_contains(*z),
        }
    }

    /// Writes `p = g·p'` with `p'` in the canonical fundamental domain.
    pub fn canonical_lift(&self, p: &CoverPoint) -> Result<(GroupElement, CoverPoint)> {
        self.validate(p)?;
        Ok(match (self.kind, p) {
            (SurfaceKind::Torus, CoverPoint::Plane(v)) => {
                let ((n, m), r) = flat::torus_reduce(*v);
                (GroupElement::Torus { n, m }, CoverPoint::Plane(r))
            }
            (SurfaceKind::KleinBottle, CoverPoint::Plane(v)) => {
                let ((n, m), r) = flat::klein_reduce(*v);
                (GroupElement::Klein { n, m }, CoverPoint::Plane(r))
            }
            (_, CoverPoint::Sphere(v)) => {
                let flip = !sphere::in_hemisphere(*v);
                let r = if flip { sphere::flip(*v) } else { *v };
                (GroupElement::Projective { flip }, CoverPoint::Sphere(r))
            }
            (_, CoverPoint::Disk(z)) => {
                let (h, r) = hyperbolic::reduce_to_domain(*z);
                (GroupElement::GenusTwo(h), CoverPoint::Disk(r))
            }
            _ => unreachable!("validated"),
        })
    }

    /// `count` independent points, uniform for the Riemannian area of the
    /// surface, returned as lifts in the canonical fundamental domain.
    pub fn sample_uniform(&self, count: usize, seed: u64) -> Vec<CoverPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.sample_one(&mut rng)).collect()
    }

    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> CoverPoint {
        match self.kind {
            SurfaceKind::Torus | SurfaceKind::KleinBottle => CoverPoint::plane(rng.random(), rng.random()),
            SurfaceKind::ProjectivePlane => {
                let v: [f64; 3] = UnitSphere.sample(rng);
                CoverPoint::Sphere(if sphere::in_hemisphere(v) { v } else { sphere::flip(v) })
            }
            SurfaceKind::GenusTwo => {
                let r_max = hyperbolic::domain_euclidean_radius();
                let floor = 1.0 - r_max * r_max;
                loop {
                    let r = r_max * rng.random::<f64>().sqrt();
                    let theta = std::f64::consts::TAU * rng.random::<f64>();
                    let accept = (floor / (1.0 - r * r)).powi(2);
                    if rng.random::<f64>() >= accept {
                        continue;
                    }
                    let z = Complex64::from_polar(r, theta);
                    if hyperbolic::domain_contains(z) {
                        return CoverPoint::Disk(z);
                    }
                }
            }
        }
    }
}

fn raw_distance(p: &CoverPoint, q: &CoverPoint) -> f64 {
    match (p, q) {
        (CoverPoint::Plane(a), CoverPoint::Plane(b)) => flat::distance(*a, *b),
        (CoverPoint::Sphere(a), CoverPoint::Sphere(b)) => sphere::distance(*a, *b),
        (CoverPoint::Disk(a), CoverPoint::Disk(b)) => hyperbolic::distance(*a, *b),
        _ => unreachable!("points validated against the surface kind"),
    }
}

fn raw_act(g: &GroupElement, p: &CoverPoint) -> CoverPoint {
    match (g, p) {
        (GroupElement::Torus { n, m }, CoverPoint::Plane(v)) => CoverPoint::Plane(flat::torus_act(*n, *m, *v)),
        (GroupElement::Klein { n, m }, CoverPoint::Plane(v)) => CoverPoint::Plane(flat::klein_act(*n, *m, *v)),
        (GroupElement::Projective { flip }, CoverPoint::Sphere(v)) => {
            CoverPoint::Sphere(if *flip { sphere::flip(*v) } else { *v })
        }
        (GroupElement::GenusTwo(w), CoverPoint::Disk(z)) => CoverPoint::Disk(w.apply(*z)),
        _ => unreachable!("element and point validated against the surface kind"),
    }
}
