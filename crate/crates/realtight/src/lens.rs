//! Real structures on lens spaces, their genus-one gluing involutions and the
//! classification bounds table.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::dividing::checked_catalan;
use crate::slopes::{eigen_slope, neg_cf_expand, MappingClass, NegCF, Slope};
use crate::solid_torus::{honda_count_solid_torus, CountResult};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensSpace {
    pub p: i64,
    pub q: i64,
}

impl LensSpace {
    /// `L(p, q)` with `q` reduced mod `p`; `L(1, q)` is the sphere marker `(1, 0)`.
    pub fn new(p: i64, q: i64) -> Result<LensSpace> {
        if p < 1 {
            return Err(Error::Invalid(format!("lens space needs p >= 1, got {p}")));
        }
        let q = q.rem_euclid(p);
        if p > 1 && q.gcd(&p) != 1 {
            return Err(Error::Invalid(format!("gcd({p}, {q}) != 1")));
        }
        Ok(LensSpace { p, q })
    }

    pub fn is_sphere(&self) -> bool {
        self.p == 1
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_sphere() {
            write!(f, "S^3")
        } else {
            write!(f, "L({},{})", self.p, self.q)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RealType {
    A,
    B,
    #[serde(rename = "B'")]
    Bp,
    C,
    #[serde(rename = "C'")]
    Cp,
}

impl RealType {
    pub const ALL: [RealType; 5] = [RealType::A, RealType::B, RealType::Bp, RealType::C, RealType::Cp];
}

impl fmt::Display for RealType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealType::A => "A",
            RealType::B => "B",
            RealType::Bp => "B'",
            RealType::C => "C",
            RealType::Cp => "C'",
        })
    }
}

impl FromStr for RealType {
    type Err = Error;
    fn from_str(s: &str) -> Result<RealType> {
        match s {
            "A" | "a" => Ok(RealType::A),
            "B" | "b" => Ok(RealType::B),
            "B'" | "B′" | "Bp" | "bp" => Ok(RealType::Bp),
            "C" | "c" => Ok(RealType::C),
            "C'" | "C′" | "Cp" | "cp" => Ok(RealType::Cp),
            _ => Err(Error::Invalid(format!("unknown real type '{s}'"))),
        }
    }
}

fn covered(p: i64, q: i64) -> Result<()> {
    if p >= 2 && (q == 1 || q == p - 1) {
        Ok(())
    } else {
        Err(Error::NotCovered(format!("L({p},{q}): only q = 1 and q = p-1 are covered")))
    }
}

pub fn type_equivalences(p: i64, q: i64) -> Result<Vec<Vec<RealType>>> {
    use RealType::*;
    covered(p, q)?;
    Ok(if p == 2 {
        vec![RealType::ALL.to_vec()]
    } else if q == 1 {
        vec![vec![A, C], vec![B, Bp, Cp]]
    } else {
        vec![vec![A, Cp], vec![B, Bp, C]]
    })
}

/// Representative of the equivalence class of `t` on `L(p, q)`.
pub fn representative(p: i64, q: i64, t: RealType) -> Result<RealType> {
    let classes = type_equivalences(p, q)?;
    Ok(classes.into_iter().find(|c| c.contains(&t)).expect("partition")[0])
}

pub fn gluing_involution(p: i64, q: i64, kind: RealType) -> Result<MappingClass> {
    let sign = match kind {
        RealType::C => 1,
        RealType::Cp => -1,
        _ => return Err(Error::Invalid(format!("type {kind} has no gluing involution"))),
    };
    if p < 2 || (q * q - 1).rem_euclid(p) != 0 {
        return Err(Error::NoInvolutiveGluing);
    }
    let qp = (1 - q * q) / p;
    let phi = MappingClass::new(-q, qp, p, q);
    Ok(if sign > 0 { phi } else { phi.neg() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeegaardData {
    pub real_slope: Slope,
    pub dividing_slope: Slope,
    pub cf: NegCF,
    pub solid_torus_count: u64,
}

pub fn heegaard_data(p: i64, q: i64, kind: RealType) -> Result<HeegaardData> {
    let phi = gluing_involution(p, q, kind)?;
    let real_slope = eigen_slope(&phi, 1)?;
    let dividing_slope = eigen_slope(&phi, -1)?;
    Ok(HeegaardData {
        real_slope,
        dividing_slope,
        cf: neg_cf_expand(dividing_slope)?,
        solid_torus_count: honda_count_solid_torus(dividing_slope)?,
    })
}

pub fn honda_count_lens(p: i64, q: i64) -> Result<u64> {
    let l = LensSpace::new(p, q)?;
    if l.is_sphere() {
        return Ok(1);
    }
    let cf = neg_cf_expand(Slope::new(-l.p, l.q)?)?;
    Ok(cf.coeffs().iter().map(|&r| (r + 1).unsigned_abs()).product())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessFamily {
    SurgeryDiagram,
    Singularity,
    OpenBook,
}

/// A construction realizing a real tight structure. Uncounted witnesses are
/// kept for provenance but do not raise a lower bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub tag: String,
    pub family: WitnessFamily,
    pub counted: bool,
    pub note: String,
}

impl Witness {
    fn counted(tag: String, family: WitnessFamily, note: &str) -> Witness {
        Witness { tag, family, counted: true, note: note.into() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WitnessRegistry {
    removed: BTreeSet<String>,
}

impl WitnessRegistry {
    pub fn standard() -> WitnessRegistry {
        WitnessRegistry::default()
    }

    /// Registry with every witness whose tag starts with `prefix` removed.
    pub fn without(mut self, prefix: &str) -> WitnessRegistry {
        self.removed.insert(prefix.to_string());
        self
    }

    pub fn witnesses(&self, p: i64, q: i64, t: RealType) -> Vec<Witness> {
        use WitnessFamily::*;
        let mut out = Vec::new();
        if p <= 2 {
            return out;
        }
        match (t, q) {
            (RealType::B, q) if q == p - 1 => {
                out.push(Witness::counted(format!("singularity:A+_{}", p - 1), Singularity, "real Milnor fillable"));
            }
            (RealType::B, 1) if p % 2 == 0 => {
                out.push(Witness::counted(format!("surgery:L({p},1)-B"), SurgeryDiagram, "equivariant pair diagram"));
            }
            (RealType::A, q) if q == p - 1 => {
                out.push(Witness::counted(format!("singularity:A-_{}", p - 1), Singularity, "real Milnor fillable"));
                if p % 2 == 0 {
                    out.push(Witness {
                        tag: format!("surgery:L({p},{q})-A-modified-A+"),
                        family: SurgeryDiagram,
                        counted: false,
                        note: "not distinguished from A-; tb unknown".into(),
                    });
                }
            }
            (RealType::A, 1) => {
                for z in 0..p - 1 {
                    out.push(Witness::counted(
                        format!("surgery:L({p},1)-A-zigzag{z}"),
                        SurgeryDiagram,
                        "c1-invariant Legendrian unknot, tb = 1-p, contact -1",
                    ));
                }
                for side in ["right", "left"] {
                    out.push(Witness {
                        tag: format!("open-book:L({p},1)-universally-tight-{side}"),
                        family: OpenBook,
                        counted: false,
                        note: "real open book for a surgery witness".into(),
                    });
                }
            }
            _ => {}
        }
        out.retain(|w| !self.removed.iter().any(|r| w.tag.starts_with(r.as_str())));
        out
    }

    fn lower(&self, p: i64, q: i64, t: RealType) -> u64 {
        self.witnesses(p, q, t).iter().filter(|w| w.counted).count() as u64
    }
}

pub const TAG_B: &str = "theorem:type-B-classification";
pub const TAG_A: &str = "theorem:type-A-bounds";
pub const TAG_NO_GENUS_ONE: &str = "theorem:no-genus-one-heegaard";
pub const TAG_HEEGAARD_BOUND: &str = "proposition:type-C-heegaard-bound";

fn need_p(p: i64) -> Result<()> {
    if p > 2 {
        Ok(())
    } else {
        Err(Error::Invalid(format!("p must exceed 2, got {p}")))
    }
}

pub fn l_b(p: i64, q: i64) -> Result<CountResult> {
    l_b_with(&WitnessRegistry::standard(), p, q)
}

pub fn l_b_with(reg: &WitnessRegistry, p: i64, q: i64) -> Result<CountResult> {
    need_p(p)?;
    LensSpace::new(p, q)?;
    if q != 1 && q != p - 1 {
        return Ok(CountResult::exact(0, TAG_B));
    }
    let lower = reg.lower(p, q, RealType::B).min(1);
    Ok(CountResult::bounded(lower, 1, TAG_B))
}

pub fn l_a(p: i64, q: i64) -> Result<CountResult> {
    l_a_with(&WitnessRegistry::standard(), p, q)
}

pub fn l_a_with(reg: &WitnessRegistry, p: i64, q: i64) -> Result<CountResult> {
    need_p(p)?;
    covered(p, q)?;
    let lower = reg.lower(p, q, RealType::A);
    if q == 1 {
        let c = checked_catalan((p - 2) as u64)
            .and_then(|c| c.checked_add(1))
            .ok_or_else(|| Error::Invalid(format!("upper bound for p = {p} exceeds 64 bits")))?;
        Ok(CountResult::bounded(lower, c, TAG_A))
    } else {
        Ok(CountResult::at_least(lower, format!("{TAG_A}; upper bound unknown")))
    }
}

pub fn l_star(p: i64, q: i64, kind: RealType) -> Result<CountResult> {
    need_p(p)?;
    covered(p, q)?;
    match (kind, q == 1) {
        (RealType::Cp, true) | (RealType::C, false) => Ok(CountResult::exact(0, TAG_NO_GENUS_ONE)),
        (RealType::C | RealType::Cp, _) => {
            // each tight Heegaard solid torus carries two sign choices
            let h = heegaard_data(p, q, kind)?;
            Ok(CountResult::bounded(0, 2 * h.solid_torus_count, TAG_HEEGAARD_BOUND))
        }
        _ => Err(Error::Invalid(format!("genus-one count is defined for C and C' only, not {kind}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Special {
    S3,
    RP3,
}

impl FromStr for Special {
    type Err = Error;
    fn from_str(s: &str) -> Result<Special> {
        match s.to_ascii_lowercase().as_str() {
            "s3" => Ok(Special::S3),
            "rp3" => Ok(Special::RP3),
            _ => Err(Error::Invalid(format!("unknown special manifold '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialClassification {
    pub count: CountResult,
    pub witness: String,
}

pub fn classify_special(which: Special) -> SpecialClassification {
    match which {
        Special::S3 => SpecialClassification {
            count: CountResult::exact(1, "theorem:unique-real-tight-S3"),
            witness: "singularity:regular-point".into(),
        },
        Special::RP3 => SpecialClassification {
            count: CountResult::exact(1, "theorem:unique-real-tight-RP3"),
            witness: "singularity:A1-X1+".into(),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnularOpenBook {
    pub twist_power: i64,
    pub manifold: LensSpace,
    pub tight: bool,
    pub supports_real_lp1: bool,
}

/// Annulus pages with monodromy `t_a^n`, checked against a real `L(p, 1)`.
pub fn annular_open_book(p: i64, n: i64) -> Result<AnnularOpenBook> {
    if n == 0 {
        return Err(Error::Invalid("zero twist gives S^1 x S^2".into()));
    }
    let k = n.abs();
    let manifold = if n > 0 { LensSpace::new(k, k - 1)? } else { LensSpace::new(k, 1)? };
    Ok(AnnularOpenBook { twist_power: n, manifold, tight: n > 0, supports_real_lp1: n == -p })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenBookVerdict {
    pub p: i64,
    pub candidates: Vec<AnnularOpenBook>,
    pub genus_one_heegaard_from_open_book: bool,
    pub verdict: String,
}

pub fn genus1_openbook_check(p: i64) -> Result<OpenBookVerdict> {
    if p < 1 {
        return Err(Error::Invalid(format!("p must be positive, got {p}")));
    }
    let candidates = vec![annular_open_book(p, p)?, annular_open_book(p, -p)?];
    let possible = candidates.iter().any(|c| c.supports_real_lp1 && c.tight);
    Ok(OpenBookVerdict {
        p,
        candidates,
        genus_one_heegaard_from_open_book: possible,
        verdict: if possible {
            "tight annular real open book exists".into()
        } else {
            format!("monodromy t_a^-{p} is the only real L({p},1) candidate and it is overtwisted")
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub p: i64,
    pub q: i64,
    pub l_a: CountResult,
    pub l_b: CountResult,
    pub l_star_c: CountResult,
    pub l_star_cp: CountResult,
    pub honda: u64,
    pub witnesses_a: Vec<String>,
    pub witnesses_b: Vec<String>,
}

impl BoundsRow {
    pub fn entries(&self) -> [(&'static str, &CountResult); 4] {
        [("A", &self.l_a), ("B", &self.l_b), ("C*", &self.l_star_c), ("C'*", &self.l_star_cp)]
    }
}

pub fn bounds_table(p_min: i64, p_max: i64) -> Result<Vec<BoundsRow>> {
    if p_min <= 2 || p_min > p_max {
        return Err(Error::Invalid(format!("need 2 < p_min <= p_max, got {p_min}..{p_max}")));
    }
    let reg = WitnessRegistry::standard();
    let mut rows = Vec::new();
    for p in p_min..=p_max {
        for q in [1, p - 1] {
            let tags = |t: RealType| reg.witnesses(p, q, t).into_iter().map(|w| w.tag).collect();
            rows.push(BoundsRow {
                p,
                q,
                l_a: l_a_with(&reg, p, q)?,
                l_b: l_b_with(&reg, p, q)?,
                l_star_c: l_star(p, q, RealType::C)?,
                l_star_cp: l_star(p, q, RealType::Cp)?,
                honda: honda_count_lens(p, q)?,
                witnesses_a: tags(RealType::A),
                witnesses_b: tags(RealType::B),
            });
        }
    }
    Ok(rows)
}

/// Flat per-type record used by the CSV and JSON forms of the table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub p: i64,
    pub q: i64,
    #[serde(rename = "type")]
    pub kind: String,
    pub lower: u64,
    pub upper: Option<u64>,
    pub exact: bool,
    pub note: String,
    pub witnesses: String,
}

pub fn table_records(rows: &[BoundsRow]) -> Vec<BoundsRecord> {
    let mut out = Vec::new();
    for r in rows {
        for (kind, c) in r.entries() {
            let witnesses = match kind {
                "A" => r.witnesses_a.join(";"),
                "B" => r.witnesses_b.join(";"),
                _ => String::new(),
            };
            out.push(BoundsRecord {
                p: r.p,
                q: r.q,
                kind: kind.into(),
                lower: c.lower,
                upper: c.upper,
                exact: c.exact,
                note: c.note.clone(),
                witnesses,
            });
        }
        out.push(BoundsRecord {
            p: r.p,
            q: r.q,
            kind: "honda".into(),
            lower: r.honda,
            upper: Some(r.honda),
            exact: true,
            note: "non-real tight count".into(),
            witnesses: String::new(),
        });
    }
    out
}

pub fn rows_from_records(records: &[BoundsRecord]) -> Result<Vec<BoundsRow>> {
    let mut rows: Vec<BoundsRow> = Vec::new();
    for rec in records {
        let count = CountResult { lower: rec.lower, upper: rec.upper, exact: rec.exact, note: rec.note.clone() };
        if rows.last().map(|r| (r.p, r.q)) != Some((rec.p, rec.q)) {
            let blank = CountResult::at_least(0, "");
            rows.push(BoundsRow {
                p: rec.p,
                q: rec.q,
                l_a: blank.clone(),
                l_b: blank.clone(),
                l_star_c: blank.clone(),
                l_star_cp: blank,
                honda: 0,
                witnesses_a: Vec::new(),
                witnesses_b: Vec::new(),
            });
        }
        let row = rows.last_mut().expect("row pushed");
        let tags = || rec.witnesses.split(';').filter(|t| !t.is_empty()).map(String::from).collect();
        match rec.kind.as_str() {
            "A" => {
                row.l_a = count;
                row.witnesses_a = tags();
            }
            "B" => {
                row.l_b = count;
                row.witnesses_b = tags();
            }
            "C*" => row.l_star_c = count,
            "C'*" => row.l_star_cp = count,
            "honda" => row.honda = rec.lower,
            other => return Err(Error::Invalid(format!("unknown record type '{other}'"))),
        }
    }
    Ok(rows)
}

pub fn table_markdown(rows: &[BoundsRow]) -> String {
    let mut s = String::from("| p | q | l_A | l_B | l*_C | l*_C' | honda | witnesses |\n");
    s.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.p,
            r.q,
            r.l_a,
            r.l_b,
            r.l_star_c,
            r.l_star_cp,
            r.honda,
            [("A", &r.witnesses_a), ("B", &r.witnesses_b)]
                .iter()
                .filter(|(_, w)| !w.is_empty())
                .map(|(t, w)| format!("{t}: {}", w.join(", ")))
                .collect::<Vec<_>>()
                .join("; ")
        ));
    }
    s
}

pub fn table_csv(rows: &[BoundsRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for rec in table_records(rows) {
        w.serialize(rec).map_err(|e| Error::Invalid(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
}

pub fn records_from_csv(text: &str) -> Result<Vec<BoundsRecord>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<BoundsRecord>, _>>()
        .map_err(|e| Error::Invalid(e.to_string()))
}

pub fn table_json(rows: &[BoundsRow]) -> String {
    serde_json::to_string_pretty(&table_records(rows)).expect("records serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use RealType::*;

    #[test]
    fn lens_normalization() {
        assert_eq!(LensSpace::new(5, 9).unwrap(), LensSpace { p: 5, q: 4 });
        assert!(LensSpace::new(1, 3).unwrap().is_sphere());
        assert!(LensSpace::new(6, 2).is_err());
        assert!(LensSpace::new(0, 1).is_err());
    }

    #[test]
    fn equivalences() {
        assert_eq!(type_equivalences(2, 1).unwrap(), vec![RealType::ALL.to_vec()]);
        assert_eq!(type_equivalences(5, 1).unwrap(), vec![vec![A, C], vec![B, Bp, Cp]]);
        assert_eq!(type_equivalences(5, 4).unwrap(), vec![vec![A, Cp], vec![B, Bp, C]]);
        assert!(matches!(type_equivalences(5, 2), Err(Error::NotCovered(_))));
        assert_eq!(representative(7, 1, Bp).unwrap(), B);
    }

    #[test]
    fn gluing_matrices() {
        for p in 3..30 {
            let c = gluing_involution(p, 1, C).unwrap();
            assert_eq!(c, MappingClass::new(-1, 0, p, 1));
            let cp = gluing_involution(p, p - 1, Cp).unwrap();
            assert_eq!(cp, MappingClass::new(-(p - 1), 2 - p, p, p - 1).neg());
            for m in [c, cp] {
                assert!(m.is_involution());
                assert_eq!(m.det(), -1);
            }
            assert_eq!(eigen_slope(&c, -1).unwrap(), Slope::new(-p, 2).unwrap());
        }
        assert_eq!(gluing_involution(5, 2, C), Err(Error::NoInvolutiveGluing));
        assert!(gluing_involution(5, 1, A).is_err());
    }

    #[test]
    fn heegaard_examples() {
        let h = heegaard_data(7, 1, C).unwrap();
        assert_eq!(h.cf, NegCF(vec![-4, -2]));
        assert_eq!(h.solid_torus_count, 6);
        assert_eq!(heegaard_data(8, 7, Cp).unwrap().cf, NegCF(vec![-2, -2, -2]));
        assert_eq!(heegaard_data(8, 7, Cp).unwrap().solid_torus_count, 2);
        let odd = heegaard_data(7, 6, Cp).unwrap();
        assert_eq!(odd.cf, NegCF(vec![-2, -2, -3]));
        assert_eq!(odd.solid_torus_count, 3);
        assert_eq!(odd.dividing_slope, Slope::new(7, -5).unwrap());
    }

    #[test]
    fn heegaard_counts_and_star_bounds() {
        for p in 3..=50 {
            let h = heegaard_data(p, 1, C).unwrap();
            let expect = if p % 2 == 0 { p / 2 } else { p - 1 } as u64;
            assert_eq!(h.solid_torus_count, expect, "p={p}");
            assert_eq!(l_star(p, 1, C).unwrap().upper, Some(2 * expect));
            let cp = heegaard_data(p, p - 1, Cp).unwrap();
            assert_eq!(l_star(p, p - 1, Cp).unwrap().upper, Some(2 * cp.solid_torus_count));
        }
    }

    #[test]
    fn honda_lens() {
        assert_eq!(honda_count_lens(5, 1).unwrap(), 4);
        assert_eq!(honda_count_lens(5, 4).unwrap(), 1);
        assert_eq!(honda_count_lens(2, 1).unwrap(), 1);
        assert_eq!(honda_count_lens(5, 2).unwrap(), 2);
    }

    #[test]
    fn b_bounds() {
        assert_eq!(l_b(5, 4).unwrap(), CountResult::exact(1, TAG_B));
        assert_eq!(l_b(6, 1).unwrap(), CountResult::exact(1, TAG_B));
        assert_eq!(l_b(5, 2).unwrap(), CountResult::exact(0, TAG_B));
        let odd = l_b(5, 1).unwrap();
        assert_eq!((odd.lower, odd.upper, odd.exact), (0, Some(1), false));
    }

    #[test]
    fn a_bounds() {
        let a = l_a(5, 1).unwrap();
        assert_eq!((a.lower, a.upper), (4, Some(6)));
        let a = l_a(5, 4).unwrap();
        assert_eq!((a.lower, a.upper), (1, None));
        let a = l_a(3, 1).unwrap();
        assert!(a.exact);
        assert_eq!(a.lower, 2);
    }

    #[test]
    fn star_bounds() {
        assert_eq!(l_star(7, 6, C).unwrap(), CountResult::exact(0, TAG_NO_GENUS_ONE));
        assert_eq!(l_star(7, 6, Cp).unwrap().upper, Some(6));
        assert_eq!(l_star(6, 1, C).unwrap().upper, Some(6));
        assert_eq!(l_star(5, 1, Cp).unwrap().upper, Some(0));
    }

    #[test]
    fn removing_witnesses_lowers_bounds() {
        let reg = WitnessRegistry::standard().without("singularity:A+");
        assert_eq!(l_b_with(&reg, 5, 4).unwrap().lower, 0);
        let reg = WitnessRegistry::standard().without("surgery:L(7,1)-A-zigzag0");
        assert_eq!(l_a_with(&reg, 7, 1).unwrap().lower, 5);
        let reg = WitnessRegistry::standard().without("open-book");
        assert_eq!(l_a_with(&reg, 7, 1).unwrap().lower, 6);
    }

    #[test]
    fn uncounted_remark_witness() {
        let w = WitnessRegistry::standard().witnesses(6, 5, A);
        assert_eq!(w.len(), 2);
        assert_eq!(l_a(6, 5).unwrap().lower, 1);
        assert!(w.iter().any(|w| !w.counted && w.note.contains("tb unknown")));
    }

    #[test]
    fn specials() {
        assert_eq!(classify_special(Special::S3).count, CountResult::exact(1, "theorem:unique-real-tight-S3"));
        assert!(classify_special(Special::RP3).count.exact);
        assert_eq!(classify_special(Special::RP3).witness, "singularity:A1-X1+");
    }

    #[test]
    fn open_books() {
        for p in [1, 5] {
            let v = genus1_openbook_check(p).unwrap();
            assert!(!v.genus_one_heegaard_from_open_book);
            assert!(v.verdict.contains("overtwisted"));
        }
        let plus = annular_open_book(5, 5).unwrap();
        assert!(plus.tight && !plus.supports_real_lp1);
        assert_eq!(plus.manifold, LensSpace { p: 5, q: 4 });
        let minus = annular_open_book(5, -5).unwrap();
        assert!(!minus.tight && minus.supports_real_lp1);
    }

    #[test]
    fn table_rows() {
        let rows = bounds_table(4, 5).unwrap();
        assert_eq!(rows.iter().map(|r| (r.p, r.q)).collect::<Vec<_>>(), vec![(4, 1), (4, 3), (5, 1), (5, 4)]);
        let r51 = &rows[2];
        assert_eq!((r51.l_a.lower, r51.l_a.upper), (4, Some(6)));
        assert_eq!(r51.l_b.upper, Some(1));
        assert_eq!(r51.l_star_c.upper, Some(8));
        assert!(r51.l_star_cp.exact && r51.l_star_cp.lower == 0);
        let r54 = &rows[3];
        assert_eq!(r54.l_star_cp.upper, Some(6));
        assert!(r54.l_star_c.exact);
        assert_eq!(rows[1].witnesses_b, vec!["singularity:A+_3".to_string()]);
        assert!(rows[0].witnesses_b.contains(&"surgery:L(4,1)-B".to_string()));
        assert!(bounds_table(2, 4).is_err());
        assert!(bounds_table(5, 4).is_err());
        assert!(bounds_table(38, 38).is_ok());
        assert!(l_a(39, 1).is_err());
    }

    #[test]
    fn table_formats_round_trip() {
        let rows = bounds_table(3, 6).unwrap();
        let json: Vec<BoundsRecord> = serde_json::from_str(&table_json(&rows)).unwrap();
        assert_eq!(rows_from_records(&json).unwrap(), rows);
        let csv = records_from_csv(&table_csv(&rows).unwrap()).unwrap();
        assert_eq!(rows_from_records(&csv).unwrap(), rows);
        let md = table_markdown(&rows);
        assert!(md.starts_with("| p | q | l_A | l_B | l*_C | l*_C' | honda | witnesses |"));
        assert_eq!(md.lines().count(), 2 + rows.len());
    }

    proptest! {
        #[test]
        fn a_lower_is_honda(p in 3i64..=38) {
            prop_assert_eq!(l_a(p, 1).unwrap().lower, honda_count_lens(p, 1).unwrap());
        }

        #[test]
        fn b_upper_at_most_one(p in 3i64..40, q in 1i64..40) {
            prop_assume!(q < p && q.gcd(&p) == 1);
            let b = l_b(p, q).unwrap();
            prop_assert!(b.upper.unwrap() <= 1);
            if q != 1 && q != p - 1 {
                prop_assert_eq!(b.upper, Some(0));
            }
        }

        #[test]
        fn exact_means_equal_bounds(p in 3i64..30) {
            for row in bounds_table(p, p).unwrap() {
                for (_, c) in row.entries() {
                    prop_assert!(c.is_consistent());
                    if c.exact {
                        prop_assert_eq!(Some(c.lower), c.upper);
                    }
                }
            }
        }

        #[test]
        fn table_is_pure(a in 3i64..12, len in 0i64..4) {
            prop_assert_eq!(bounds_table(a, a + len).unwrap(), bounds_table(a, a + len).unwrap());
        }
    }
}
