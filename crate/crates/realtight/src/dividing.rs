//! Dividing-set configurations on disks and annuli, involution filters,
//! edge rounding of cut-open solid tori, and the slice exhaustions.
//!
//! Annulus marks sit at abstract positions `(k + 1/2)/n` on each boundary
//! circle. An arc records its two marks and a winding `wind`: lifted to the
//! strip `[inner, outer] × R`, it runs from `pos(from)` to `pos(to) + wind`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::slopes::{slope_of_class, CurveClass, Slope};
use crate::{Error, Result};

/// Catalan number `C_n`; `None` once it leaves the `u64` range (`n > 35`).
pub fn checked_catalan(n: u64) -> Option<u64> {
    let n = n as usize;
    let mut c = vec![0u128; n + 1];
    c[0] = 1;
    for i in 1..=n {
        c[i] = (0..i).try_fold(0u128, |acc, j| acc.checked_add(c[j].checked_mul(c[i - 1 - j])?))?;
    }
    u64::try_from(c[n]).ok()
}

pub fn catalan(n: u64) -> u64 {
    checked_catalan(n).expect("Catalan number exceeds u64")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiskMatching {
    pub m: usize,
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub pairs: Vec<(usize, usize)>,
}

impl DiskMatching {
    pub fn is_noncrossing(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| {
            self.pairs.iter().all(|&(c, d)| !((a < c && c < b && b < d) || (c < a && a < d && d < b)))
        })
    }

    pub fn is_perfect(&self) -> bool {
        let mut seen = vec![false; 2 * self.m];
        for &(a, b) in &self.pairs {
            for x in [a, b] {
                if x >= 2 * self.m || seen[x] {
                    return false;
                }
                seen[x] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a.min(b), a.max(b)))
    }

    /// Rotation of the boundary points by `k` positions.
    pub fn rotated(&self, k: usize) -> DiskMatching {
        let n = 2 * self.m;
        let mut pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = ((a + k) % n, (b + k) % n);
                (x.min(y), x.max(y))
            })
            .collect();
        pairs.sort();
        DiskMatching { m: self.m, pairs }
    }
}

fn matchings_on(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in (1..points.len()).step_by(2) {
        let inside = matchings_on(&points[1..j]);
        let outside = matchings_on(&points[j + 1..]);
        for a in &inside {
            for b in &outside {
                let mut v = vec![(points[0], points[j])];
                v.extend_from_slice(a);
                v.extend_from_slice(b);
                v.sort();
                out.push(v);
            }
        }
    }
    out
}

pub fn enumerate_disk_matchings(m: usize) -> Vec<DiskMatching> {
    let points: Vec<usize> = (0..2 * m).collect();
    let mut out: Vec<DiskMatching> =
        matchings_on(&points).into_iter().map(|pairs| DiskMatching { m, pairs }).collect();
    out.sort();
    out
}

/// Matchings of `2m` points that contain the neighbour arc `{0, 1}`.
pub fn count_disk_classes_fixed_arc(m: usize) -> Result<u64> {
    if m == 0 {
        return Err(Error::Invalid("m must be at least 1".into()));
    }
    Ok(enumerate_disk_matchings(m).iter().filter(|d| d.contains(0, 1)).count() as u64)
}

/// Orbits of the full matching set under rotation of the boundary.
pub fn disk_rotation_orbits(m: usize) -> Vec<Vec<DiskMatching>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for d in enumerate_disk_matchings(m) {
        if seen.contains(&d) {
            continue;
        }
        let orbit: BTreeSet<DiskMatching> = (0..(2 * m).max(1)).map(|k| d.rotated(k)).collect();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Inner,
    Outer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mark {
    pub boundary: Boundary,
    pub index: usize,
}

impl Mark {
    pub fn inner(index: usize) -> Mark {
        Mark { boundary: Boundary::Inner, index }
    }

    pub fn outer(index: usize) -> Mark {
        Mark { boundary: Boundary::Outer, index }
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.boundary {
            Boundary::Inner => "i",
            Boundary::Outer => "o",
        };
        write!(f, "{b}{}", self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub from: Mark,
    pub to: Mark,
    pub wind: i64,
}

impl Arc {
    pub fn is_traversing(&self) -> bool {
        self.from.boundary != self.to.boundary
    }

    fn canonical(self) -> Arc {
        if self.to < self.from {
            Arc { from: self.to, to: self.from, wind: -self.wind }
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AnnulusArcSystem {
    pub n_in: usize,
    pub n_out: usize,
    pub arcs: Vec<Arc>,
}

/// Traversing arcs may drift by at most this many full turns.
pub const DRIFT_WINDOW: i64 = 1;

impl AnnulusArcSystem {
    pub fn new(n_in: usize, n_out: usize, arcs: Vec<Arc>) -> AnnulusArcSystem {
        let mut arcs: Vec<Arc> = arcs.into_iter().map(Arc::canonical).collect();
        arcs.sort();
        AnnulusArcSystem { n_in, n_out, arcs }
    }

    fn count(&self, b: Boundary) -> usize {
        match b {
            Boundary::Inner => self.n_in,
            Boundary::Outer => self.n_out,
        }
    }

    pub fn position(&self, m: Mark) -> Rational64 {
        Rational64::new(2 * m.index as i64 + 1, 2 * self.count(m.boundary) as i64)
    }

    pub fn traversing_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_traversing()).count()
    }

    fn chord(&self, a: &Arc, shift: i64) -> (Key, Key) {
        let s = Rational64::from_integer(shift);
        (
            key(a.from.boundary, self.position(a.from) + s),
            key(a.to.boundary, self.position(a.to) + Rational64::from_integer(a.wind) + s),
        )
    }

    /// Embedding certificate: every endpoint used once and no two lifted
    /// chords (including translates) interleave on the strip boundary.
    pub fn is_embedded(&self) -> bool {
        let mut used = BTreeSet::new();
        for a in &self.arcs {
            if a.from == a.to || !used.insert(a.from) || !used.insert(a.to) {
                return false;
            }
            if a.from.index >= self.count(a.from.boundary) || a.to.index >= self.count(a.to.boundary) {
                return false;
            }
        }
        if used.len() != self.n_in + self.n_out {
            return false;
        }
        let span = 2 + self.arcs.iter().map(|a| a.wind.abs()).max().unwrap_or(0);
        for (i, a) in self.arcs.iter().enumerate() {
            for (j, b) in self.arcs.iter().enumerate() {
                for t in -span..=span {
                    if i == j && t == 0 {
                        continue;
                    }
                    if chords_cross(self.chord(a, 0), self.chord(b, t)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Net drift of a traversing arc, inner to outer.
    pub fn drift(&self, a: &Arc) -> Rational64 {
        self.position(a.to) + Rational64::from_integer(a.wind) - self.position(a.from)
    }
}

impl fmt::Display for AnnulusArcSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs.iter().map(|a| format!("{}-{}({:+})", a.from, a.to, a.wind)).collect();
        write!(f, "({},{}) {}", self.n_in, self.n_out, parts.join(" "))
    }
}

/// Position on the boundary of the strip, read as a circle: the inner line
/// upward, then the outer line downward.
type Key = (u8, Rational64);

fn key(b: Boundary, x: Rational64) -> Key {
    match b {
        Boundary::Inner => (0, x),
        Boundary::Outer => (1, -x),
    }
}

fn chords_cross(s: (Key, Key), t: (Key, Key)) -> bool {
    let (a, b) = if s.0 <= s.1 { s } else { (s.1, s.0) };
    let (c, d) = if t.0 <= t.1 { t } else { (t.1, t.0) };
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

pub fn enumerate_annulus_systems(n_in: usize, n_out: usize) -> Result<Vec<AnnulusArcSystem>> {
    if (n_in + n_out) % 2 != 0 {
        return Err(Error::Invalid("n_in + n_out must be even".into()));
    }
    let marks: Vec<Mark> =
        (0..n_in).map(Mark::inner).chain((0..n_out).map(Mark::outer)).collect();
    let probe = AnnulusArcSystem { n_in, n_out, arcs: Vec::new() };
    let mut out = Vec::new();
    let mut arcs = Vec::new();
    extend_systems(&probe, &marks, &mut arcs, &mut out);
    let mut out: Vec<AnnulusArcSystem> =
        out.into_iter().map(|a| AnnulusArcSystem::new(n_in, n_out, a)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn extend_systems(probe: &AnnulusArcSystem, free: &[Mark], arcs: &mut Vec<Arc>, out: &mut Vec<Vec<Arc>>) {
    let Some((&m, rest)) = free.split_first() else {
        out.push(arcs.clone());
        return;
    };
    for (i, &o) in rest.iter().enumerate() {
        for wind in -(DRIFT_WINDOW + 1)..=(DRIFT_WINDOW + 1) {
            let arc = Arc { from: m, to: o, wind };
            let limit = Rational64::from_integer(DRIFT_WINDOW);
            if arc.is_traversing() && (probe.drift(&arc) > limit || probe.drift(&arc) < -limit) {
                continue;
            }
            if !compatible(probe, arcs, &arc) {
                continue;
            }
            let remaining: Vec<Mark> =
                rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            arcs.push(arc);
            extend_systems(probe, &remaining, arcs, out);
            arcs.pop();
        }
    }
}

fn compatible(probe: &AnnulusArcSystem, arcs: &[Arc], new: &Arc) -> bool {
    let span = 4;
    let c = probe.chord(new, 0);
    for t in -span..=span {
        let shifted = probe.chord(new, t);
        if t != 0 && chords_cross(c, shifted) {
            return false;
        }
        if arcs.iter().any(|a| chords_cross(probe.chord(a, 0), shifted)) {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvolutionKind {
    Identity,
    RotationByHalf,
    Reflection,
    BoundarySwap,
    Custom,
}

/// `x ↦ scale·x + shift` on both boundary circles, optionally exchanging them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionOnMarks {
    pub kind: InvolutionKind,
    pub scale: i64,
    pub shift: Rational64,
    pub swap: bool,
}

impl InvolutionOnMarks {
    pub fn identity() -> InvolutionOnMarks {
        InvolutionOnMarks { kind: InvolutionKind::Identity, scale: 1, shift: 0.into(), swap: false }
    }

    pub fn rotation_by_half() -> InvolutionOnMarks {
        InvolutionOnMarks { kind: InvolutionKind::RotationByHalf, scale: 1, shift: Rational64::new(1, 2), swap: false }
    }

    pub fn reflection() -> InvolutionOnMarks {
        InvolutionOnMarks { kind: InvolutionKind::Reflection, scale: -1, shift: 0.into(), swap: false }
    }

    pub fn boundary_swap() -> InvolutionOnMarks {
        InvolutionOnMarks { kind: InvolutionKind::BoundarySwap, scale: 1, shift: 0.into(), swap: true }
    }

    pub fn rotation(shift: Rational64) -> InvolutionOnMarks {
        InvolutionOnMarks { kind: InvolutionKind::Custom, scale: 1, shift, swap: false }
    }

    fn image_point(&self, b: Boundary, x: Rational64) -> (Boundary, Rational64) {
        let b = match (self.swap, b) {
            (false, b) => b,
            (true, Boundary::Inner) => Boundary::Outer,
            (true, Boundary::Outer) => Boundary::Inner,
        };
        (b, Rational64::from_integer(self.scale) * x + self.shift)
    }

    /// Validates that the map permutes the marks of an `(n_in, n_out)`
    /// pattern and squares to the identity permutation.
    pub fn check(&self, n_in: usize, n_out: usize) -> Result<()> {
        if self.scale.abs() != 1 {
            return Err(Error::NotAnInvolution);
        }
        if self.swap && n_in != n_out {
            return Err(Error::Invalid("boundary swap needs equal mark counts".into()));
        }
        let probe = AnnulusArcSystem { n_in, n_out, arcs: Vec::new() };
        for (b, n) in [(Boundary::Inner, n_in), (Boundary::Outer, n_out)] {
            for k in 0..n {
                let m = Mark { boundary: b, index: k };
                let once = self.mark_image(&probe, m).ok_or(Error::NotAnInvolution)?;
                let twice = self.mark_image(&probe, once.0).ok_or(Error::NotAnInvolution)?;
                if twice.0 != m {
                    return Err(Error::NotAnInvolution);
                }
            }
        }
        Ok(())
    }

    /// Image mark together with the integer offset of the lifted image.
    fn mark_image(&self, probe: &AnnulusArcSystem, m: Mark) -> Option<(Mark, i64)> {
        let (b, x) = self.image_point(m.boundary, probe.position(m));
        lift_to_mark(probe, b, x)
    }

    pub fn apply(&self, sys: &AnnulusArcSystem) -> Result<AnnulusArcSystem> {
        self.check(sys.n_in, sys.n_out)?;
        let (n_in, n_out) = if self.swap { (sys.n_out, sys.n_in) } else { (sys.n_in, sys.n_out) };
        let target = AnnulusArcSystem { n_in, n_out, arcs: Vec::new() };
        let arcs = sys
            .arcs
            .iter()
            .map(|a| {
                let (b0, x0) = self.image_point(a.from.boundary, sys.position(a.from));
                let (b1, x1) = self
                    .image_point(a.to.boundary, sys.position(a.to) + Rational64::from_integer(a.wind));
                let (m0, t0) = lift_to_mark(&target, b0, x0).ok_or(Error::NotAnInvolution)?;
                let (m1, t1) = lift_to_mark(&target, b1, x1).ok_or(Error::NotAnInvolution)?;
                Ok(Arc { from: m0, to: m1, wind: t1 - t0 })
            })
            .collect::<Result<Vec<Arc>>>()?;
        Ok(AnnulusArcSystem::new(n_in, n_out, arcs))
    }
}

fn lift_to_mark(probe: &AnnulusArcSystem, b: Boundary, x: Rational64) -> Option<(Mark, i64)> {
    let n = probe.count(b) as i64;
    // x = (2k + 1)/(2n) + t
    let scaled = x * Rational64::from_integer(2 * n) - Rational64::from_integer(1);
    if !scaled.is_integer() || scaled.numer() % 2 != 0 {
        return None;
    }
    let j = scaled.numer() / 2;
    let (t, k) = (j.div_euclid(n), j.rem_euclid(n));
    Some((Mark { boundary: b, index: k as usize }, t))
}

pub fn filter_symmetric(systems: &[AnnulusArcSystem], inv: &InvolutionOnMarks) -> Result<Vec<AnnulusArcSystem>> {
    let mut out = Vec::new();
    for s in systems {
        if inv.apply(s)? == *s {
            out.push(s.clone());
        }
    }
    Ok(out)
}

/// Orbits of a system set under an involution, each orbit sorted.
pub fn orbits(systems: &[AnnulusArcSystem], inv: &InvolutionOnMarks) -> Result<Vec<Vec<AnnulusArcSystem>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in systems {
        if seen.contains(s) {
            continue;
        }
        let mut orbit: BTreeSet<AnnulusArcSystem> = BTreeSet::new();
        orbit.insert(s.clone());
        orbit.insert(inv.apply(s)?);
        seen.extend(orbit.iter().cloned());
        out.push(orbit.into_iter().collect());
    }
    Ok(out)
}

/// Global edge-rounding direction: each endpoint arriving at a corner joins
/// the nearest endpoint of the next face in the negative direction.
pub const ROUNDING_DIRECTION: i64 = -1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Start,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint {
    pub side: Side,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceArc {
    pub a: Endpoint,
    pub b: Endpoint,
    /// Longitudinal displacement from `a` to `b`.
    pub dx: Rational64,
}

/// An annular face between two corner circles, with its dividing arcs.
/// Endpoint positions are sorted fractions in `[0, 1)` of the longitude.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub label: String,
    pub start: Vec<Rational64>,
    pub end: Vec<Rational64>,
    pub arcs: Vec<FaceArc>,
}

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

fn modulo(x: Rational64, m: Rational64) -> Rational64 {
    x - m * (x / m).floor()
}

impl Face {
    /// Face carrying an annulus arc system, inner boundary as the start edge.
    pub fn from_system(label: &str, sys: &AnnulusArcSystem, phase_in: Rational64, phase_out: Rational64) -> Face {
        let at = |n: usize, ph: Rational64, k: usize| ph + Rational64::new(k as i64, n as i64);
        let start: Vec<Rational64> = (0..sys.n_in).map(|k| at(sys.n_in, phase_in, k)).collect();
        let end: Vec<Rational64> = (0..sys.n_out).map(|k| at(sys.n_out, phase_out, k)).collect();
        let loc = |m: Mark| match m.boundary {
            Boundary::Inner => (Endpoint { side: Side::Start, index: m.index }, start[m.index]),
            Boundary::Outer => (Endpoint { side: Side::End, index: m.index }, end[m.index]),
        };
        let arcs = sys
            .arcs
            .iter()
            .map(|a| {
                let (ea, xa) = loc(a.from);
                let (eb, xb) = loc(a.to);
                FaceArc { a: ea, b: eb, dx: xb + Rational64::from_integer(a.wind) - xa }
            })
            .collect();
        Face { label: label.to_string(), start, end, arcs }
    }

    /// `n` parallel arcs, each displaced by `turn`.
    pub fn linear(label: &str, n: usize, phase: Rational64, turn: Rational64) -> Face {
        let start: Vec<Rational64> = (0..n).map(|k| phase + Rational64::new(k as i64, n as i64)).collect();
        let images: Vec<Rational64> = start.iter().map(|&x| frac(x + turn)).collect();
        let mut end = images.clone();
        end.sort();
        let arcs = (0..n)
            .map(|k| FaceArc {
                a: Endpoint { side: Side::Start, index: k },
                b: Endpoint { side: Side::End, index: end.iter().position(|&y| y == images[k]).expect("image") },
                dx: turn,
            })
            .collect();
        Face { label: label.to_string(), start, end, arcs }
    }

    /// Image under `x ↦ scale·x + shift`; `reverse` exchanges start and end.
    pub fn mapped(&self, label: &str, scale: i64, shift: Rational64, reverse: bool) -> Face {
        let f = |x: Rational64| frac(Rational64::from_integer(scale) * x + shift);
        let remap = |pos: &[Rational64]| {
            let new: Vec<Rational64> = pos.iter().map(|&x| f(x)).collect();
            let mut sorted = new.clone();
            sorted.sort();
            let idx: Vec<usize> = new.iter().map(|y| sorted.iter().position(|z| z == y).expect("image")).collect();
            (sorted, idx)
        };
        let (start, is) = remap(&self.start);
        let (end, ie) = remap(&self.end);
        let flip = |side: Side| match (reverse, side) {
            (false, s) => s,
            (true, Side::Start) => Side::End,
            (true, Side::End) => Side::Start,
        };
        let re = |e: Endpoint| Endpoint {
            side: flip(e.side),
            index: match e.side {
                Side::Start => is[e.index],
                Side::End => ie[e.index],
            },
        };
        let arcs = self
            .arcs
            .iter()
            .map(|a| FaceArc { a: re(a.a), b: re(a.b), dx: Rational64::from_integer(scale) * a.dx })
            .collect();
        let (start, end) = if reverse { (end, start) } else { (start, end) };
        Face { label: label.to_string(), start, end, arcs }
    }
}

/// Faces listed cyclically around the meridian of the cut-open solid torus;
/// the end edge of each face is glued to the start edge of the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundedBoundary {
    pub faces: Vec<Face>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedCurve {
    /// Signed passes around the meridian.
    pub meridian: i64,
    /// Net turns along the longitude.
    pub longitude: i64,
}

impl ClosedCurve {
    pub fn is_contractible(&self) -> bool {
        self.longitude == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Tight,
    Overtwisted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundingResult {
    pub closed_curves: Vec<ClosedCurve>,
    pub verdict: Verdict,
    pub slope: Option<Slope>,
}

impl RoundingResult {
    /// Two dividing curves each meeting a meridian disk once.
    pub fn is_minimal(&self) -> bool {
        self.verdict == Verdict::Tight
            && self.closed_curves.len() == 2
            && self.closed_curves.iter().all(|c| c.longitude.abs() == 1)
    }
}

type Node = (usize, Side, usize);

pub fn assemble_and_round(boundary: &RoundedBoundary) -> Result<RoundingResult> {
    let faces = &boundary.faces;
    let k = faces.len();
    if k == 0 {
        return Err(Error::IncompatibleEndpoints("no faces".into()));
    }
    let mut arc_partner: std::collections::HashMap<Node, (Node, Rational64)> = Default::default();
    for (j, f) in faces.iter().enumerate() {
        for a in &f.arcs {
            let na = (j, a.a.side, a.a.index);
            let nb = (j, a.b.side, a.b.index);
            if arc_partner.insert(na, (nb, a.dx)).is_some() || arc_partner.insert(nb, (na, -a.dx)).is_some() {
                return Err(Error::IncompatibleEndpoints(format!("endpoint reused on face {}", f.label)));
            }
        }
        if arc_partner.len() != faces[..=j].iter().map(|g| g.start.len() + g.end.len()).sum::<usize>() {
            return Err(Error::IncompatibleEndpoints(format!("unused endpoint on face {}", f.label)));
        }
    }
    let sigma = Rational64::from_integer(ROUNDING_DIRECTION);
    let mut round: std::collections::HashMap<Node, (Node, Rational64, i64)> = Default::default();
    for j in 0..k {
        let (f, g) = (&faces[j], &faces[(j + 1) % k]);
        if f.end.len() != g.start.len() {
            return Err(Error::IncompatibleEndpoints(format!(
                "{} ends with {} points, {} starts with {}",
                f.label,
                f.end.len(),
                g.label,
                g.start.len()
            )));
        }
        let seam = if j + 1 == k { 1 } else { 0 };
        let mut hit = vec![false; g.start.len()];
        for (i, &x) in f.end.iter().enumerate() {
            let (d, l) = g
                .start
                .iter()
                .enumerate()
                .map(|(l, &y)| (frac((y - x) * sigma), l))
                .min()
                .ok_or_else(|| Error::IncompatibleEndpoints("empty corner".into()))?;
            if d == Rational64::from_integer(0) || hit[l] {
                return Err(Error::IncompatibleEndpoints(format!(
                    "dividing points do not interleave between {} and {}",
                    f.label, g.label
                )));
            }
            hit[l] = true;
            let dx = sigma * d;
            round.insert((j, Side::End, i), (((j + 1) % k, Side::Start, l), dx, seam));
            round.insert(((j + 1) % k, Side::Start, l), ((j, Side::End, i), -dx, -seam));
        }
    }
    let mut seen = BTreeSet::new();
    let mut curves = Vec::new();
    let mut starts: Vec<Node> = arc_partner.keys().copied().collect();
    starts.sort();
    for start in starts {
        if seen.contains(&start) {
            continue;
        }
        let (mut node, mut x, mut m) = (start, Rational64::from_integer(0), 0i64);
        loop {
            seen.insert(node);
            let (other, dx) = arc_partner[&node];
            seen.insert(other);
            x += dx;
            let (next, shift, seam) = round[&other];
            x += shift;
            m += seam;
            node = next;
            if node == start {
                break;
            }
        }
        if !x.is_integer() {
            return Err(Error::IncompatibleEndpoints("curve does not close up".into()));
        }
        curves.push(ClosedCurve { meridian: m, longitude: *x.numer() });
    }
    let overtwisted = curves.iter().any(ClosedCurve::is_contractible);
    let slope = if overtwisted {
        None
    } else {
        let classes: std::collections::HashSet<Slope> = curves
            .iter()
            .map(|c| slope_of_class(CurveClass::new(c.meridian, c.longitude)).expect("nonzero class"))
            .collect();
        (classes.len() == 1).then(|| *classes.iter().next().expect("one class"))
    };
    Ok(RoundingResult {
        closed_curves: curves,
        verdict: if overtwisted { Verdict::Overtwisted } else { Verdict::Tight },
        slope,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofName {
    Nobasic,
    Vardouble,
    C2TMinus1Minus2,
}

impl ProofName {
    pub const ALL: [ProofName; 3] = [ProofName::Nobasic, ProofName::Vardouble, ProofName::C2TMinus1Minus2];
}

impl std::str::FromStr for ProofName {
    type Err = Error;
    fn from_str(s: &str) -> Result<ProofName> {
        match s {
            "nobasic" => Ok(ProofName::Nobasic),
            "vardouble" => Ok(ProofName::Vardouble),
            "c2_T_minus1_minus2" | "c2_t_minus1_minus2" => Ok(ProofName::C2TMinus1Minus2),
            _ => Err(Error::Invalid(format!("unknown proof '{s}'"))),
        }
    }
}

impl fmt::Display for ProofName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofName::Nobasic => "nobasic",
            ProofName::Vardouble => "vardouble",
            ProofName::C2TMinus1Minus2 => "c2_T_minus1_minus2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub interval: (String, String),
    pub result: RoundingResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub system: AnnulusArcSystem,
    pub pieces: Vec<PieceReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofReport {
    pub name: ProofName,
    pub inner_slope: Slope,
    pub outer_slope: Slope,
    pub marks: (usize, usize),
    pub candidates: usize,
    pub symmetric_candidates: usize,
    pub tight_survivors: usize,
    /// Survivors up to the half rotation of the annulus.
    pub survivor_classes: usize,
    /// Survivor classes times the admissible sign decorations.
    pub with_sign_decorations: usize,
    pub survivors: Vec<Survivor>,
    pub notes: Vec<String>,
}

fn dividing_point(m: i64, y: Rational64) -> Rational64 {
    Rational64::new(1, 4) - y / Rational64::from_integer(m)
}

const CUT_HEIGHT: (i64, i64) = (-1, 4);

fn annulus_face(sys: &AnnulusArcSystem, m_in: i64, m_out: i64, y: Rational64) -> Face {
    let y0 = Rational64::new(CUT_HEIGHT.0, CUT_HEIGHT.1);
    let offset = |m: i64| Rational64::new(1, 4 * m);
    let spacing = |n: usize| Rational64::new(1, n as i64);
    let ph_in = modulo(dividing_point(m_in, y0) + offset(m_in), spacing(sys.n_in));
    let ph_out = modulo(dividing_point(m_out, y0) + offset(m_out), spacing(sys.n_out));
    let a = Face::from_system("A", sys, ph_in, ph_out);
    if (y - y0).is_integer() {
        a
    } else {
        // the c1 image x ↦ 1/2 - x at the opposite height
        a.mapped("A'", -1, Rational64::new(1, 2), false)
    }
}

/// Boundary of the piece of the thick torus between heights `ya < yb`.
pub fn slice_piece(sys: &AnnulusArcSystem, m_in: i64, m_out: i64, ya: Rational64, yb: Rational64) -> RoundedBoundary {
    let fa = annulus_face(sys, m_in, m_out, ya);
    let fb = annulus_face(sys, m_in, m_out, yb);
    let fb = fb.mapped(&format!("{}^-1", fb.label), 1, 0.into(), true);
    let h = yb - ya;
    let outer = Face::linear(
        "T_out",
        sys.n_out,
        modulo(dividing_point(m_out, ya), Rational64::new(1, sys.n_out as i64)),
        -h / Rational64::from_integer(m_out),
    );
    let inner = Face::linear(
        "T_in^-1",
        sys.n_in,
        modulo(dividing_point(m_in, yb), Rational64::new(1, sys.n_in as i64)),
        h / Rational64::from_integer(m_in),
    );
    RoundedBoundary { faces: vec![fa, outer, fb, inner] }
}

fn c1_pieces() -> [(Rational64, Rational64); 2] {
    [
        (Rational64::new(-1, 4), Rational64::new(1, 4)),
        (Rational64::new(1, 4), Rational64::new(3, 4)),
    ]
}

pub fn replay_proof(name: ProofName) -> ProofReport {
    let m_out = match name {
        ProofName::Vardouble => 3,
        _ => 2,
    };
    let (n_in, n_out) = (2usize, 2 * m_out as usize);
    let all = enumerate_annulus_systems(n_in, n_out).expect("even mark count");
    let candidates: Vec<AnnulusArcSystem> = all.into_iter().filter(|s| s.traversing_count() > 0).collect();
    let rotation = InvolutionOnMarks::rotation_by_half();
    let mut notes = vec![format!(
        "torus faces carry {n_in} and {n_out} dividing points (two dividing curves on each boundary torus)"
    )];
    let (symmetric, survivors, signs) = match name {
        ProofName::C2TMinus1Minus2 => {
            let sym = filter_symmetric(&candidates, &rotation).expect("rotation is an involution");
            notes.push("c2 acts on the meridional annulus as the half rotation".into());
            let survivors = sym.iter().map(|s| Survivor { system: s.clone(), pieces: Vec::new() }).collect();
            (sym.len(), survivors, 1)
        }
        _ => {
            notes.push(format!(
                "rounding direction {ROUNDING_DIRECTION}; a piece survives when tight with two dividing curves of slope 1/k"
            ));
            let mut survivors = Vec::new();
            for s in &candidates {
                let pieces: Vec<PieceReport> = c1_pieces()
                    .iter()
                    .map(|&(ya, yb)| PieceReport {
                        interval: (crate::fmt_ratio(&ya), crate::fmt_ratio(&yb)),
                        result: assemble_and_round(&slice_piece(s, 1, m_out, ya, yb)).expect("compatible faces"),
                    })
                    .collect();
                if pieces.iter().all(|p| p.result.is_minimal()) {
                    survivors.push(Survivor { system: s.clone(), pieces });
                }
            }
            (candidates.len(), survivors, 2)
        }
    };
    let systems: Vec<AnnulusArcSystem> = survivors.iter().map(|s| s.system.clone()).collect();
    let classes = orbits(&systems, &rotation).expect("rotation is an involution").len();
    ProofReport {
        name,
        inner_slope: Slope::integer(-1),
        outer_slope: Slope::integer(-m_out),
        marks: (n_in, n_out),
        candidates: candidates.len(),
        symmetric_candidates: symmetric,
        tight_survivors: survivors.len(),
        survivor_classes: classes,
        with_sign_decorations: classes * signs,
        survivors,
        notes,
    }
}
