//! Chain surgery diagrams: smooth framings of Legendrian unknots, lens space
//! identification and the equivariance decorations of contact surgeries.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::lens::LensSpace;
use crate::slopes::Slope;
use crate::solid_torus::{count_real_tight, RealKind, SolidTorusSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equivariance {
    C1Invariant,
    C4Invariant,
    EquivariantPair,
    None,
}

impl std::str::FromStr for Equivariance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Equivariance> {
        match s {
            "c1-invariant" | "c1" => Ok(Equivariance::C1Invariant),
            "c4-invariant" | "c4" => Ok(Equivariance::C4Invariant),
            "equivariant-pair" | "pair" => Ok(Equivariance::EquivariantPair),
            "none" => Ok(Equivariance::None),
            _ => Err(Error::Invalid(format!("unknown equivariance '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendrianUnknot {
    pub tb: i64,
    pub contact_coeff: i64,
    pub equivariance: Equivariance,
}

impl LegendrianUnknot {
    pub fn new(tb: i64, contact_coeff: i64, equivariance: Equivariance) -> Result<LegendrianUnknot> {
        let d = LegendrianUnknot { tb, contact_coeff, equivariance };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.tb > -1 {
            return Err(Error::Invalid(format!("unknot needs tb <= -1, got {}", self.tb)));
        }
        if self.contact_coeff.abs() != 1 {
            return Err(Error::Invalid(format!("contact coefficient must be +1 or -1, got {}", self.contact_coeff)));
        }
        Ok(())
    }
}

pub fn smooth_coefficient(d: &LegendrianUnknot) -> i64 {
    d.tb + d.contact_coeff
}

/// Framings of a chain of unknots, consecutive ones linking once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDiagram {
    pub coefficients: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ChainItem {
    Framing(i64),
    Legendrian(LegendrianUnknot),
}

impl ChainDiagram {
    pub fn new(coefficients: Vec<i64>) -> Result<ChainDiagram> {
        if coefficients.is_empty() {
            return Err(Error::Invalid("empty chain".into()));
        }
        Ok(ChainDiagram { coefficients })
    }

    pub fn from_unknots(ds: &[LegendrianUnknot]) -> Result<ChainDiagram> {
        ds.iter().try_for_each(LegendrianUnknot::validate)?;
        ChainDiagram::new(ds.iter().map(smooth_coefficient).collect())
    }

    /// Parses a JSON list of integer framings or of `{tb, contact_coeff, equivariance}`.
    pub fn from_json(text: &str) -> Result<ChainDiagram> {
        let items: Vec<ChainItem> = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        let coefficients = items
            .into_iter()
            .map(|it| match it {
                ChainItem::Framing(n) => Ok(n),
                ChainItem::Legendrian(d) => d.validate().map(|_| smooth_coefficient(&d)),
            })
            .collect::<Result<Vec<i64>>>()?;
        ChainDiagram::new(coefficients)
    }

    pub fn reversed(&self) -> ChainDiagram {
        ChainDiagram { coefficients: self.coefficients.iter().rev().copied().collect() }
    }
}

/// Identifies the chain with `L(p, q)` where the framings expand `-p/q`.
/// The intersection form must be negative definite: every tail of the
/// continued fraction is negative.
pub fn lens_from_chain(d: &ChainDiagram) -> Result<LensSpace> {
    let mut v: Option<Rational64> = None;
    for &a in d.coefficients.iter().rev() {
        let next = match v {
            None => Rational64::from_integer(a),
            Some(t) => Rational64::from_integer(a) - t.recip(),
        };
        if next >= Rational64::from_integer(0) {
            return Err(Error::NotNegativeDefiniteChain);
        }
        v = Some(next);
    }
    let v = v.ok_or(Error::NotNegativeDefiniteChain)?;
    LensSpace::new(-v.numer(), *v.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceVerdict {
    pub valid: bool,
    pub unique: bool,
    pub glue_back: Option<(RealKind, Slope)>,
    pub message: String,
}

/// Boundary slope of the solid torus glued back after contact `±1` surgery,
/// measured against the contact framing.
pub fn glue_back_slope(contact_coeff: i64) -> Slope {
    if contact_coeff > 0 {
        Slope::integer(1)
    } else {
        Slope::INFINITY
    }
}

pub fn validate_equivariance(d: &LegendrianUnknot) -> Result<EquivarianceVerdict> {
    d.validate()?;
    let slope = glue_back_slope(d.contact_coeff);
    let glue = |kind: RealKind| count_real_tight(&SolidTorusSpec { structure: kind, boundary_slope: slope, gamma_count: 2 });
    Ok(match d.equivariance {
        Equivariance::C1Invariant => {
            let c = glue(RealKind::C1);
            EquivarianceVerdict {
                valid: c.lower > 0,
                unique: c.exact && c.lower == 1,
                glue_back: Some((RealKind::C1, slope)),
                message: format!("c1 solid torus with slope {slope}: {c}"),
            }
        }
        Equivariance::C4Invariant => {
            let c = glue(RealKind::C2);
            EquivarianceVerdict {
                valid: c.lower > 0,
                unique: c.exact && c.lower == 1,
                glue_back: Some((RealKind::C2, slope)),
                message: format!("c2 solid torus with slope {slope}: {c}"),
            }
        }
        Equivariance::EquivariantPair => EquivarianceVerdict {
            valid: true,
            unique: true,
            glue_back: None,
            message: "surgeries on an exchanged pair are always possible".into(),
        },
        Equivariance::None => EquivarianceVerdict {
            valid: false,
            unique: false,
            glue_back: None,
            message: "non-equivariant component".into(),
        },
    })
}
