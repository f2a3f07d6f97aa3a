//! Census of real tight solid tori and slices, with the non-equivariant
//! count as a reference.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::dividing::checked_catalan;
use crate::slopes::{neg_cf_expand, MappingClass, Slope};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RealKind {
    C1,
    C2,
    C3,
    C4,
}

impl RealKind {
    pub const ALL: [RealKind; 4] = [RealKind::C1, RealKind::C2, RealKind::C3, RealKind::C4];

    /// Action on the boundary torus `R²/Z²` (meridian coordinate first).
    pub fn boundary_action(&self) -> AffineAction {
        let half = Rational64::new(1, 2);
        let zero = Rational64::from_integer(0);
        match self {
            RealKind::C1 => AffineAction { linear: MappingClass::new(-1, 0, 0, -1), shift: (half, zero) },
            RealKind::C2 => AffineAction { linear: MappingClass::IDENTITY, shift: (half, zero) },
            RealKind::C3 => AffineAction { linear: MappingClass::IDENTITY, shift: (zero, half) },
            RealKind::C4 => AffineAction { linear: MappingClass::IDENTITY, shift: (half, half) },
        }
    }
}

impl fmt::Display for RealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RealKind::C1 => "c1",
            RealKind::C2 => "c2",
            RealKind::C3 => "c3",
            RealKind::C4 => "c4",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for RealKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<RealKind> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Ok(RealKind::C1),
            "c2" => Ok(RealKind::C2),
            "c3" => Ok(RealKind::C3),
            "c4" => Ok(RealKind::C4),
            _ => Err(Error::Invalid(format!("unknown real structure '{s}'"))),
        }
    }
}

/// `v ↦ L·v + shift` on `R²/Z²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineAction {
    pub linear: MappingClass,
    pub shift: (Rational64, Rational64),
}

fn reduce(r: Rational64) -> Rational64 {
    r - r.floor()
}

impl AffineAction {
    pub fn apply(&self, v: (Rational64, Rational64)) -> (Rational64, Rational64) {
        let m = &self.linear;
        let a = Rational64::from_integer;
        (
            reduce(a(m.a) * v.0 + a(m.b) * v.1 + self.shift.0),
            reduce(a(m.c) * v.0 + a(m.d) * v.1 + self.shift.1),
        )
    }

    pub fn is_involution(&self) -> bool {
        let quarters: Vec<Rational64> = (0..4).map(|k| Rational64::new(k, 4)).collect();
        self.linear.is_involution()
            && quarters.iter().all(|&x| quarters.iter().all(|&y| self.apply(self.apply((x, y))) == (x, y)))
    }
}

/// Whether some lift `v ↦ M·v + s` of `m` commutes with `action` on the torus.
/// The translation `s` is searched over the quarter lattice.
pub fn is_equivariant(m: &MappingClass, action: &AffineAction) -> bool {
    let c = &action.linear;
    if m.mul(c) != c.mul(m) {
        return false;
    }
    let a = Rational64::from_integer;
    let (tx, ty) = action.shift;
    let mt = (a(m.a) * tx + a(m.b) * ty, a(m.c) * tx + a(m.d) * ty);
    (0..4).any(|i| {
        (0..4).any(|j| {
            let s = (Rational64::new(i, 4), Rational64::new(j, 4));
            let cs = (a(c.a) * s.0 + a(c.b) * s.1, a(c.c) * s.0 + a(c.d) * s.1);
            let lhs = (s.0 - cs.0, s.1 - cs.1);
            reduce(lhs.0 - (tx - mt.0)) == a(0) && reduce(lhs.1 - (ty - mt.1)) == a(0)
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolidTorusSpec {
    pub structure: RealKind,
    pub boundary_slope: Slope,
    pub gamma_count: u32,
}

/// Lower and upper bounds for a census question. `upper = None` means no
/// bound is known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub lower: u64,
    pub upper: Option<u64>,
    pub exact: bool,
    pub note: String,
}

impl CountResult {
    pub fn exact(n: u64, note: impl Into<String>) -> CountResult {
        CountResult { lower: n, upper: Some(n), exact: true, note: note.into() }
    }

    pub fn bounded(lower: u64, upper: u64, note: impl Into<String>) -> CountResult {
        CountResult { lower, upper: Some(upper), exact: lower == upper, note: note.into() }
    }

    pub fn at_least(lower: u64, note: impl Into<String>) -> CountResult {
        CountResult { lower, upper: None, exact: false, note: note.into() }
    }

    pub fn is_consistent(&self) -> bool {
        match self.upper {
            Some(u) => self.lower <= u && (!self.exact || self.lower == u),
            None => !self.exact,
        }
    }
}

impl fmt::Display for CountResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exact, self.upper) {
            (true, _) => write!(f, "{}", self.lower),
            (false, Some(u)) if self.lower == 0 => write!(f, "<= {u}"),
            (false, Some(u)) => write!(f, "[{}, {}]", self.lower, u),
            (false, None) if self.lower == 0 => write!(f, "unknown"),
            (false, None) => write!(f, ">= {}", self.lower),
        }
    }
}

/// Slopes admitted by the `c2`, `c3`, `c4` neighbourhood rules.
pub fn allowed_slopes(kind: RealKind, s: Slope) -> Result<bool> {
    let reciprocal = s.is_reciprocal_integer();
    // for 1/k the parity of k is the parity of the denominator
    Ok(match kind {
        RealKind::C2 => reciprocal,
        RealKind::C3 => reciprocal && s.den() % 2 == 1,
        RealKind::C4 => reciprocal && s.den() % 2 == 0,
        RealKind::C1 => {
            return Err(Error::NotCovered("c1 slopes are not restricted by the neighbourhood rule".into()))
        }
    })
}

/// Number of tight structures on a solid torus with boundary slope `s <= -1`
/// and two dividing curves.
pub fn honda_count_solid_torus(s: Slope) -> Result<u64> {
    let cf = neg_cf_expand(s)?;
    if cf.is_degenerate() {
        return Ok(1);
    }
    let (&last, rest) = cf.coeffs().split_last().expect("nonempty expansion");
    let prod = rest.iter().fold(last.unsigned_abs(), |acc, &r| acc * (r + 1).unsigned_abs());
    Ok(prod)
}

pub fn count_real_tight(spec: &SolidTorusSpec) -> CountResult {
    if spec.gamma_count != 2 {
        return CountResult::at_least(0, "outside classified range: only two dividing curves are classified");
    }
    let s = spec.boundary_slope;
    match spec.structure {
        RealKind::C2 | RealKind::C3 | RealKind::C4 => {
            let ok = allowed_slopes(spec.structure, s).expect("c2/c3/c4 covered");
            if ok {
                CountResult::exact(1, format!("{}: standard neighbourhood is the unique tight model", spec.structure))
            } else {
                CountResult::exact(0, format!("{}: slope excluded by the neighbourhood rule", spec.structure))
            }
        }
        RealKind::C1 if s.is_reciprocal_integer() => {
            let mut note = String::from("c1 slope 1/k: two structures distinguished by the sign decoration");
            if s == Slope::integer(-1) {
                note.push_str(
                    "; the disk-configuration bound at m=1 is C_0 = 1, read as configurations before the sign choice",
                );
            }
            CountResult::exact(2, note)
        }
        RealKind::C1 if s.den() == 1 && s.num() <= -2 => {
            let m = s.num().unsigned_abs();
            match checked_catalan(m - 1) {
                Some(c) => CountResult::bounded(
                    0,
                    c,
                    format!("c1 slope -{m}: at most C_{} disk configurations; existence open", m - 1),
                ),
                None => CountResult::at_least(0, format!("c1 slope -{m}: configuration bound exceeds 64 bits")),
            }
        }
        RealKind::C1 => match honda_count_solid_torus(s) {
            Ok(h) => CountResult::bounded(0, h, "c1 unclassified slope: non-equivariant count as reference"),
            Err(_) => CountResult::at_least(0, "c1 unclassified slope"),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceKind {
    Basic,
    GenuineDouble,
}

impl std::str::FromStr for SliceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<SliceKind> {
        match s {
            "basic" => Ok(SliceKind::Basic),
            "double" | "genuine_double" | "genuine-double" => Ok(SliceKind::GenuineDouble),
            _ => Err(Error::Invalid(format!("unknown slice kind '{s}'"))),
        }
    }
}

pub fn count_slices(kind: RealKind, slice: SliceKind) -> CountResult {
    match (kind, slice) {
        (RealKind::C1, SliceKind::Basic) => CountResult::exact(0, "no c1-real tight basic slice"),
        (RealKind::C1, SliceKind::GenuineDouble) => {
            CountResult::exact(2, "genuine c1 double slices: one configuration, two sign decorations")
        }
        (RealKind::C2 | RealKind::C3, SliceKind::GenuineDouble) => {
            CountResult::exact(0, format!("no {kind}-real tight double slice"))
        }
        (RealKind::C2 | RealKind::C3, SliceKind::Basic) => {
            CountResult::exact(0, format!("no {kind}-real tight basic slice T(-1,-2)"))
        }
        (RealKind::C4, _) => CountResult::at_least(0, "unclassified combination"),
    }
}
