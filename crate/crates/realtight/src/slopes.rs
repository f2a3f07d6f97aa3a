//! Torus curve classes, slopes, mapping classes and negative continued
//! fractions.
//!
//! A class `x·μ + y·λ` (meridian `μ = (1,0)`, longitude `λ = (0,1)`) has
//! slope `y/x`. Everything is exact integer arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Extended rational `num/den` in lowest terms with `den >= 0`.
/// Infinity is `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Slope {
    num: i64,
    den: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { num: 1, den: 0 };
    pub const ZERO: Slope = Slope { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Slope> {
        if num == 0 && den == 0 {
            return Err(Error::DegenerateClass);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 || (d == 0 && n < 0) {
            n = -n;
            d = -d;
        }
        Ok(Slope { num: n, den: d })
    }

    pub fn integer(n: i64) -> Slope {
        Slope { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn to_ratio(&self) -> Option<Rational64> {
        (self.den != 0).then(|| Rational64::new(self.num, self.den))
    }

    pub fn from_ratio(r: Rational64) -> Slope {
        Slope { num: *r.numer(), den: *r.denom() }
    }

    /// Linear order on `Q ∪ {∞}` with `∞` greatest.
    pub fn cmp_linear(&self, other: &Slope) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128)),
        }
    }

    /// True when the slope has the form `1/k` for an integer `k`
    /// (`k = 0` meaning `∞`).
    pub fn is_reciprocal_integer(&self) -> bool {
        self.is_infinite() || self.num.abs() == 1
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den {
            0 => write!(f, "inf"),
            1 => write!(f, "{}", self.num),
            d => write!(f, "{}/{}", self.num, d),
        }
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let t = s.trim();
        if matches!(t, "inf" | "∞" | "infinity") {
            return Ok(Slope::INFINITY);
        }
        let bad = || Error::Invalid(format!("cannot parse slope '{t}'"));
        match t.split_once('/') {
            Some((n, d)) => Slope::new(
                n.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            ),
            None => Ok(Slope::integer(t.parse().map_err(|_| bad())?)),
        }
    }
}

impl TryFrom<String> for Slope {
    type Error = Error;
    fn try_from(s: String) -> Result<Slope> {
        s.parse()
    }
}

impl From<Slope> for String {
    fn from(s: Slope) -> String {
        s.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub x: i64,
    pub y: i64,
}

impl CurveClass {
    pub fn new(x: i64, y: i64) -> CurveClass {
        CurveClass { x, y }
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y) == 1
    }

    pub fn primitive(&self) -> Result<CurveClass> {
        let g = self.x.gcd(&self.y);
        if g == 0 {
            return Err(Error::DegenerateClass);
        }
        Ok(CurveClass { x: self.x / g, y: self.y / g })
    }
}

pub fn slope_of_class(c: CurveClass) -> Result<Slope> {
    Slope::new(c.y, c.x)
}

/// Primitive lift of a slope, with `x >= 0`.
pub fn class_of_slope(s: Slope) -> CurveClass {
    CurveClass { x: s.den, y: s.num }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MappingClass {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl MappingClass {
    pub const IDENTITY: MappingClass = MappingClass { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> MappingClass {
        MappingClass { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &MappingClass) -> MappingClass {
        MappingClass {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn neg(&self) -> MappingClass {
        MappingClass { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Result<MappingClass> {
        let det = self.det();
        if det.abs() != 1 {
            return Err(Error::Invalid("matrix is not unimodular".into()));
        }
        Ok(MappingClass { a: self.d * det, b: -self.b * det, c: -self.c * det, d: self.a * det })
    }

    pub fn apply(&self, v: CurveClass) -> CurveClass {
        CurveClass { x: self.a * v.x + self.b * v.y, y: self.c * v.x + self.d * v.y }
    }

    pub fn is_involution(&self) -> bool {
        self.mul(self) == MappingClass::IDENTITY
    }
}

pub fn act(m: &MappingClass, s: Slope) -> Result<Slope> {
    slope_of_class(m.apply(class_of_slope(s)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistKind {
    Meridian,
    Longitude,
}

/// Dehn twist powers: `τ_μⁿ = [[1,n],[0,1]]`, `τ_λⁿ = [[1,0],[n,1]]`.
pub fn dehn_twist(kind: TwistKind, power: i64) -> MappingClass {
    match kind {
        TwistKind::Meridian => MappingClass::new(1, power, 0, 1),
        TwistKind::Longitude => MappingClass::new(1, 0, power, 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NegCF(pub Vec<i64>);

impl NegCF {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// The single-term expansion `[-1]` of the slope `-1`.
    pub fn is_degenerate(&self) -> bool {
        self.0 == [-1]
    }
}

impl fmt::Display for NegCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn neg_cf_expand(s: Slope) -> Result<NegCF> {
    let mut r = s.to_ratio().ok_or(Error::OutOfExpansionDomain)?;
    let minus_one = Rational64::from_integer(-1);
    if r > minus_one {
        return Err(Error::OutOfExpansionDomain);
    }
    if r == minus_one {
        return Ok(NegCF(vec![-1]));
    }
    let mut out = Vec::new();
    loop {
        let a = r.floor();
        out.push(*a.numer());
        if r == a {
            break;
        }
        r = (a - r).recip();
    }
    Ok(NegCF(out))
}

/// Exact value of `a₀ - 1/(a₁ - 1/(… - 1/a_k))`.
pub fn neg_cf_value(coeffs: &[i64]) -> Result<Rational64> {
    let (&last, rest) = coeffs
        .split_last()
        .ok_or_else(|| Error::Invalid("empty continued fraction".into()))?;
    let mut v = Rational64::from_integer(last);
    for &a in rest.iter().rev() {
        if v == Rational64::from_integer(0) {
            return Err(Error::DivisionByZero);
        }
        v = Rational64::from_integer(a) - v.recip();
    }
    Ok(v)
}

pub fn neg_cf_eval(cf: &NegCF) -> Result<Slope> {
    neg_cf_value(&cf.0).map(Slope::from_ratio)
}

pub fn cf_bracket_inverse(coeffs: &[i64]) -> Result<Rational64> {
    let v = neg_cf_value(coeffs)?;
    if v == Rational64::from_integer(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(v.recip())
}

/// Slope of the `eigenvalue`-eigenline of an involution with determinant -1.
pub fn eigen_slope(m: &MappingClass, eigenvalue: i64) -> Result<Slope> {
    if !m.is_involution() || m.det() != -1 {
        return Err(Error::NotAnInvolution);
    }
    if eigenvalue.abs() != 1 {
        return Err(Error::Invalid("eigenvalue must be +1 or -1".into()));
    }
    let l = eigenvalue;
    let v = if m.a != l || m.b != 0 {
        CurveClass::new(m.b, l - m.a)
    } else {
        CurveClass::new(l - m.d, m.c)
    };
    slope_of_class(v.primitive()?)
}

/// Integral primitive eigenvector behind [`eigen_slope`].
pub fn eigen_class(m: &MappingClass, eigenvalue: i64) -> Result<CurveClass> {
    Ok(class_of_slope(eigen_slope(m, eigenvalue)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64, d: i64) -> Slope {
        Slope::new(n, d).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(s(2, -4), s(-1, 2));
        assert_eq!(s(-3, 0), Slope::INFINITY);
        assert_eq!(s(0, -7), Slope::ZERO);
        assert_eq!(Slope::new(0, 0), Err(Error::DegenerateClass));
    }

    #[test]
    fn class_slopes() {
        assert_eq!(slope_of_class(CurveClass::new(3, 1)).unwrap(), s(1, 3));
        assert_eq!(slope_of_class(CurveClass::new(1, 0)).unwrap(), Slope::ZERO);
        assert_eq!(slope_of_class(CurveClass::new(0, 1)).unwrap(), Slope::INFINITY);
        assert_eq!(slope_of_class(CurveClass::new(-2, 5)).unwrap(), s(-5, 2));
        assert!(slope_of_class(CurveClass::new(0, 0)).is_err());
    }

    #[test]
    fn gluing_matrix_action() {
        let m = MappingClass::new(-1, 0, 2, 1);
        assert_eq!(act(&m, Slope::INFINITY).unwrap(), Slope::INFINITY);
        for k in 1..20 {
            // the class (k, 1) of slope 1/k goes to slope -(2k+1)/k
            assert_eq!(act(&m, s(1, k)).unwrap(), s(-(2 * k + 1), k));
        }
        assert_eq!(act(&MappingClass::IDENTITY, s(-7, 3)).unwrap(), s(-7, 3));
    }

    #[test]
    fn twists() {
        assert_eq!(dehn_twist(TwistKind::Longitude, 0), MappingClass::IDENTITY);
        assert_eq!(dehn_twist(TwistKind::Meridian, 0), MappingClass::IDENTITY);
        for n in -5i64..=5 {
            let t = dehn_twist(TwistKind::Meridian, n);
            for (a, b) in [(1, 3), (-2, 5), (0, 1), (7, -4)] {
                let x = Rational64::new(a, b);
                let got = act(&t, Slope::from_ratio(x)).unwrap();
                let one = Rational64::from_integer(1);
                let denom = one + Rational64::from_integer(n) * x;
                let want = if denom == Rational64::from_integer(0) {
                    Slope::INFINITY
                } else {
                    Slope::from_ratio(x / denom)
                };
                assert_eq!(got, want, "n={n} s={a}/{b}");
            }
            let at_infinity = act(&t, Slope::INFINITY).unwrap();
            assert_eq!(at_infinity, if n == 0 { Slope::INFINITY } else { Slope::new(1, n).unwrap() });
        }
        let a = dehn_twist(TwistKind::Meridian, 2);
        let b = dehn_twist(TwistKind::Meridian, 3);
        assert_eq!(a.mul(&b), dehn_twist(TwistKind::Meridian, 5));
    }

    #[test]
    fn expansions() {
        let cases: [(i64, i64, &[i64]); 8] = [
            (-3, 2, &[-2, -2]),
            (-7, 2, &[-4, -2]),
            (-5, 1, &[-5]),
            (-5, 4, &[-2, -2, -2, -2]),
            (-5, 3, &[-2, -3]),
            (-7, 5, &[-2, -2, -3]),
            (-5, 2, &[-3, -2]),
            (-1, 1, &[-1]),
        ];
        for (n, d, cf) in cases {
            assert_eq!(neg_cf_expand(s(n, d)).unwrap().0, cf, "{n}/{d}");
        }
        assert!(neg_cf_expand(s(-1, 1)).unwrap().is_degenerate());
        assert_eq!(neg_cf_expand(s(-1, 2)), Err(Error::OutOfExpansionDomain));
        assert_eq!(neg_cf_expand(Slope::INFINITY), Err(Error::OutOfExpansionDomain));
        assert_eq!(neg_cf_expand(s(3, 1)), Err(Error::OutOfExpansionDomain));
    }

    #[test]
    fn evaluations() {
        assert_eq!(neg_cf_eval(&NegCF(vec![-2, -2, -2, -2])).unwrap(), s(-5, 4));
        assert_eq!(neg_cf_eval(&NegCF(vec![-4, -2])).unwrap(), s(-7, 2));
        assert_eq!(neg_cf_eval(&NegCF(vec![-9])).unwrap(), s(-9, 1));
        assert_eq!(neg_cf_value(&[1, 1]).unwrap(), Rational64::from_integer(0));
        assert_eq!(neg_cf_value(&[2, 0]), Err(Error::DivisionByZero));
        assert_eq!(cf_bracket_inverse(&[-2]).unwrap(), Rational64::new(-1, 2));
        assert_eq!(cf_bracket_inverse(&[-3, -2]).unwrap(), Rational64::new(-2, 5));
        assert_eq!(cf_bracket_inverse(&[-3, -2, -2]).unwrap(), Rational64::new(-3, 7));
        assert_eq!(cf_bracket_inverse(&[1, 1]), Err(Error::DivisionByZero));
    }

    #[test]
    fn eigen_slopes() {
        for p in 3..30 {
            let phi = MappingClass::new(-1, 0, p, 1);
            assert_eq!(eigen_slope(&phi, -1).unwrap(), s(-p, 2));
            let q = p - 1;
            let qq = (1 - q * q) / p;
            let phi = MappingClass::new(-q, qq, p, q).neg();
            assert_eq!(eigen_slope(&phi, -1).unwrap(), s(p, 2 - p));
        }
        assert_eq!(eigen_slope(&MappingClass::new(1, 0, 0, -1), 1).unwrap(), Slope::ZERO);
        assert_eq!(eigen_slope(&MappingClass::new(1, 1, 0, 1), 1), Err(Error::NotAnInvolution));
        assert_eq!(eigen_slope(&MappingClass::IDENTITY, 1), Err(Error::NotAnInvolution));
    }

    #[test]
    fn slope_text() {
        for t in ["-13/7", "inf", "0", "5", "1/3"] {
            assert_eq!(t.parse::<Slope>().unwrap().to_string(), t);
        }
        assert_eq!("4/-6".parse::<Slope>().unwrap(), s(-2, 3));
        let json = serde_json::to_string(&s(-5, 2)).unwrap();
        assert_eq!(json, "\"-5/2\"");
        assert_eq!(serde_json::from_str::<Slope>(&json).unwrap(), s(-5, 2));
    }

    fn unimodular() -> impl Strategy<Value = MappingClass> {
        // products of generators keep the entries small
        prop::collection::vec(0usize..4, 0..6).prop_map(|word| {
            let gens = [
                MappingClass::new(1, 1, 0, 1),
                MappingClass::new(1, 0, -1, 1),
                MappingClass::new(0, -1, 1, 0),
                MappingClass::new(1, 0, 0, -1),
            ];
            word.iter().fold(MappingClass::IDENTITY, |m, &i| m.mul(&gens[i]))
        })
    }

    proptest! {
        #[test]
        fn expand_round_trip(num in -200i64..=-1, den in 1i64..=200) {
            let sl = s(num, den);
            prop_assume!(sl.cmp_linear(&s(-1, 1)) == Ordering::Less);
            let cf = neg_cf_expand(sl).unwrap();
            prop_assert!(cf.0.iter().all(|&c| c <= -2));
            prop_assert_eq!(neg_cf_eval(&cf).unwrap(), sl);
        }

        #[test]
        fn action_composes(m1 in unimodular(), m2 in unimodular(), n in -30i64..30, d in -30i64..30) {
            prop_assume!(n != 0 || d != 0);
            let sl = s(n, d);
            let lhs = act(&m1.mul(&m2), sl).unwrap();
            let rhs = act(&m1, act(&m2, sl).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn negation_invariant(x in -50i64..50, y in -50i64..50) {
            prop_assume!(x != 0 || y != 0);
            prop_assert_eq!(
                slope_of_class(CurveClass::new(x, y)).unwrap(),
                slope_of_class(CurveClass::new(-x, -y)).unwrap()
            );
        }

        #[test]
        fn class_round_trip(x in -50i64..50, y in -50i64..50) {
            let c = CurveClass::new(x, y);
            prop_assume!(c.is_primitive());
            let back = class_of_slope(slope_of_class(c).unwrap());
            prop_assert!(back == c || back == CurveClass::new(-x, -y));
        }

        #[test]
        fn eigenvectors_are_exact(g in unimodular(), sign in prop::bool::ANY) {
            let m = g.mul(&MappingClass::new(1, 0, 0, -1)).mul(&g.inverse().unwrap());
            let l = if sign { 1 } else { -1 };
            let v = eigen_class(&m, l).unwrap();
            prop_assert_eq!(m.apply(v), CurveClass::new(l * v.x, l * v.y));
        }
    }
}
