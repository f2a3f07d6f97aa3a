//! Rational Thurston-Bennequin numbers of real Legendrian parts, from the
//! genus-one Heegaard side and from resolutions of `A_{p-1}` singularities.

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::lens::RealType;
use crate::slopes::cf_bracket_inverse;
use crate::{Error, Result};

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

pub fn gh(p: i64, q: i64) -> Result<(i64, i64)> {
    if p < 1 || q.gcd(&p) != 1 {
        return Err(Error::Invalid(format!("gcd({p}, {q}) != 1")));
    }
    Ok(((q - 1).gcd(&p), (q + 1).gcd(&p)))
}

fn involutive(p: i64, q: i64) -> Result<(i64, i64)> {
    let (g, h) = gh(p, q)?;
    if (q * q - 1).rem_euclid(p) != 0 {
        return Err(Error::NoInvolutiveGluing);
    }
    Ok((g, h))
}

pub fn tb_type_b(p: i64, q: i64) -> Result<Rational64> {
    if p < 2 || (q != 1 && q != p - 1) {
        return Err(Error::NotCovered(format!("type B needs q = 1 or p-1, got L({p},{q})")));
    }
    Ok(r(-1, p))
}

pub fn tb_type_c(p: i64, q: i64) -> Result<Rational64> {
    let (g, h) = involutive(p, q)?;
    Ok(r(p, h * h) - r(2 * p, g * h))
}

pub fn tb_type_cprime(p: i64, q: i64) -> Result<Rational64> {
    let (g, h) = involutive(p, q)?;
    Ok(r(p, g * g) - r(2 * p, g * h))
}

pub fn tb_for_type(p: i64, q: i64, t: RealType) -> Result<Rational64> {
    match t {
        RealType::B | RealType::Bp => tb_type_b(p, q),
        RealType::C => tb_type_c(p, q),
        RealType::Cp => tb_type_cprime(p, q),
        RealType::A => Err(Error::NotCovered("no Heegaard-side formula for type A".into())),
    }
}

pub fn denominator_divides(p: i64, v: &Rational64) -> bool {
    p % v.denom() == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphInvolution {
    Identity,
    Mirror,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionGraph {
    pub weights: Vec<i64>,
    pub involution: GraphInvolution,
}

impl ResolutionGraph {
    /// The `A_{p-1}` chain: `p - 1` vertices of weight `-2`.
    pub fn a_chain(p: i64, involution: GraphInvolution) -> ResolutionGraph {
        ResolutionGraph { weights: vec![-2; (p - 1).max(0) as usize], involution }
    }

    pub fn is_automorphism(&self) -> bool {
        match self.involution {
            GraphInvolution::Identity => true,
            GraphInvolution::Mirror => self.weights.iter().eq(self.weights.iter().rev()),
        }
    }

    /// Blow up the intersection point of the two middle spheres, which the
    /// mirror exchanges; needs an even number of vertices.
    pub fn blow_up_middle(&self) -> Result<ResolutionGraph> {
        let n = self.weights.len();
        if n == 0 || n % 2 != 0 || self.involution != GraphInvolution::Mirror {
            return Err(Error::Invalid("middle blow-up needs a mirrored chain with even length".into()));
        }
        let mut w = self.weights.clone();
        w[n / 2 - 1] -= 1;
        w[n / 2] -= 1;
        w.insert(n / 2, -1);
        Ok(ResolutionGraph { weights: w, involution: GraphInvolution::Mirror })
    }

    /// Weights of the arm following the unique `-1` vertex.
    pub fn arm_after_exceptional(&self) -> Option<Vec<i64>> {
        let i = self.weights.iter().position(|&w| w == -1)?;
        Some(self.weights[i + 1..].to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinkSign {
    Plus,
    Minus,
}

impl std::str::FromStr for LinkSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<LinkSign> {
        match s {
            "+" | "plus" => Ok(LinkSign::Plus),
            "-" | "minus" => Ok(LinkSign::Minus),
            _ => Err(Error::Invalid(format!("unknown sign '{s}'"))),
        }
    }
}

/// Fixed surface of the real structure in the (possibly blown up) resolution,
/// with the part bounded by a single real component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealSurface {
    pub orientable: bool,
    pub genus: i64,
    pub boundary: i64,
    pub euler: i64,
    pub euler_per_component: i64,
}

pub fn real_surface(p: i64, sign: LinkSign) -> RealSurface {
    let k = p / 2;
    let (orientable, genus, boundary) = match (p % 2 == 1, sign) {
        (true, LinkSign::Minus) => (true, k, 1),
        // punctured projective plane after the middle blow-up
        (true, LinkSign::Plus) => (false, 1, 1),
        (false, LinkSign::Minus) => (true, k - 1, 2),
        (false, LinkSign::Plus) => (true, 0, 2),
    };
    let euler = if orientable { 2 - 2 * genus - boundary } else { 2 - genus - boundary };
    RealSurface { orientable, genus, boundary, euler, euler_per_component: euler / boundary }
}

pub fn link_graph(p: i64, sign: LinkSign) -> ResolutionGraph {
    let inv = match sign {
        LinkSign::Minus => GraphInvolution::Identity,
        LinkSign::Plus => GraphInvolution::Mirror,
    };
    ResolutionGraph::a_chain(p, inv)
}

/// Per-component `tb_Q` of the real part of the `A^±_{p-1}` link.
pub fn tb_singularity_link(p: i64, sign: LinkSign) -> Result<Rational64> {
    if p < 2 {
        return Err(Error::Invalid(format!("p must be at least 2, got {p}")));
    }
    let graph = link_graph(p, sign);
    debug_assert!(graph.is_automorphism());
    let s = real_surface(p, sign);
    let chi = Rational64::from_integer(s.euler_per_component);
    let k = p / 2;
    Ok(match (p % 2 == 1, sign) {
        (true, LinkSign::Minus) => -chi,
        (true, LinkSign::Plus) => {
            let arm = graph.blow_up_middle()?.arm_after_exceptional().expect("exceptional vertex");
            -chi - 1 - r(2, 1) * cf_bracket_inverse(&arm)?
        }
        (false, LinkSign::Minus) => -chi - r(k, 2),
        (false, LinkSign::Plus) => -chi + r(1, 4) * (r(-2, 1) + r(2 * (k - 1), k)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub p: i64,
    #[serde(with = "crate::ratio_text")]
    pub plus_link: Rational64,
    #[serde(with = "crate::ratio_text")]
    pub type_b: Rational64,
    #[serde(with = "crate::ratio_text")]
    pub minus_link: Rational64,
    #[serde(with = "crate::ratio_text")]
    pub type_cprime: Rational64,
    pub pass: bool,
}

/// Compares the singularity links with the `q = p - 1` Heegaard values.
pub fn cross_check_links(p: i64) -> Result<CrossCheck> {
    if p < 3 {
        return Err(Error::Invalid(format!("p must be at least 3, got {p}")));
    }
    let plus_link = tb_singularity_link(p, LinkSign::Plus)?;
    let type_b = tb_type_b(p, p - 1)?;
    let minus_link = tb_singularity_link(p, LinkSign::Minus)?;
    let type_cprime = tb_type_cprime(p, p - 1)?;
    Ok(CrossCheck { p, plus_link, type_b, minus_link, type_cprime, pass: plus_link == type_b && minus_link == type_cprime })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub p: i64,
    pub q: i64,
    #[serde(with = "crate::ratio_text")]
    pub type_b: Rational64,
    pub heegaard_type: RealType,
    #[serde(with = "crate::ratio_text")]
    pub heegaard_value: Rational64,
    pub mismatch: bool,
    pub verdict: String,
}

pub fn genus1_obstruction(p: i64, q: i64) -> Result<Obstruction> {
    if p <= 2 || (q != 1 && q != p - 1) {
        return Err(Error::NotCovered(format!("obstruction needs p > 2 and q = 1 or p-1, got L({p},{q})")));
    }
    let heegaard_type = if q == 1 { RealType::Cp } else { RealType::C };
    let type_b = tb_type_b(p, q)?;
    let heegaard_value = tb_for_type(p, q, heegaard_type)?;
    let mismatch = type_b != heegaard_value;
    Ok(Obstruction {
        p,
        q,
        type_b,
        heegaard_type,
        heegaard_value,
        mismatch,
        verdict: if mismatch {
            "genus-1 real contact Heegaard impossible".into()
        } else {
            "no obstruction".into()
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TbRow {
    pub p: i64,
    pub q: i64,
    #[serde(rename = "type")]
    pub kind: String,
    pub tb_num: i64,
    pub tb_den: i64,
}

impl TbRow {
    pub fn new(p: i64, q: i64, kind: impl Into<String>, v: Rational64) -> TbRow {
        TbRow { p, q, kind: kind.into(), tb_num: *v.numer(), tb_den: *v.denom() }
    }

    pub fn value(&self) -> Rational64 {
        r(self.tb_num, self.tb_den)
    }
}
