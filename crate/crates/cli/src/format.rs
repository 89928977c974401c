//! JSON, CSV and text encodings of a potential.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use frobrec_core::{BigRational, CoeffKey, Coordinate, MultiIndex, OrbifoldData, Potential};

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format '{s}' (expected json, csv or text)")),
        }
    }
}

/// `t^alpha` as an ordered map `"i,j" -> exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alpha(pub MultiIndex);

fn coord_label(c: Coordinate) -> String {
    match c {
        Coordinate::Twisted { leg, j } => format!("{leg},{j}"),
        other => other.to_string(),
    }
}

fn parse_coord(s: &str) -> Result<Coordinate, String> {
    let (leg, j) = s.split_once(',').ok_or_else(|| format!("bad coordinate '{s}'"))?;
    let leg: u8 = leg.trim().parse().map_err(|_| format!("bad leg in '{s}'"))?;
    let j: u32 = j.trim().parse().map_err(|_| format!("bad index in '{s}'"))?;
    if !(1..=3).contains(&leg) || j == 0 {
        return Err(format!("bad coordinate '{s}'"));
    }
    Ok(Coordinate::twisted(leg, j))
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.entries().len()))?;
        for (c, e) in self.0.entries() {
            map.serialize_entry(&coord_label(*c), e)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = std::collections::BTreeMap::<String, u32>::deserialize(d)?;
        let mut pairs = Vec::new();
        for (k, e) in raw {
            if e == 0 {
                return Err(D::Error::custom(format!("zero exponent for '{k}'")));
            }
            pairs.push((parse_coord(&k).map_err(D::Error::custom)?, e));
        }
        Ok(Alpha(MultiIndex::from_pairs(pairs)))
    }
}

/// Exact rational written as `"p/q"` (or `"p"` for integers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Rational).map_err(D::Error::custom)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let v: BigRational = s.parse().map_err(|_| format!("bad rational '{s}'"))?;
    if v.to_string() != s {
        return Err(format!("rational '{s}' is not in lowest terms"));
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub alpha: Alpha,
    pub m: u32,
    pub c: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PotentialDoc {
    #[serde(rename = "A")]
    pub a: [u32; 3],
    pub mu: usize,
    pub chi: Rational,
    pub max_m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unverified: bool,
    pub coefficients: Vec<CoefficientRecord>,
}

impl PotentialDoc {
    pub fn from_potential(p: &Potential, unverified: bool) -> Self {
        let orb = p.orbifold();
        PotentialDoc {
            a: orb.a(),
            mu: orb.mu(),
            chi: Rational(orb.chi().clone()),
            max_m: p.max_m(),
            max_len: p.max_len(),
            unverified,
            coefficients: records(p),
        }
    }

    /// Rebuilds the potential: listed coefficients are set, every other
    /// admissible key in bounds is zero.
    pub fn to_potential(&self) -> Result<Potential, Error> {
        let [a1, a2, a3] = self.a.map(i64::from);
        let orb = OrbifoldData::new(a1, a2, a3)?;
        if orb.mu() != self.mu || *orb.chi() != self.chi.0 {
            return Err(Error::Parse(format!("mu/chi do not match A = {orb}")));
        }
        build_potential(orb, self.max_m, self.max_len, &self.coefficients)
    }
}

fn records(p: &Potential) -> Vec<CoefficientRecord> {
    p.coefficients()
        .into_iter()
        .map(|(k, v)| CoefficientRecord {
            alpha: Alpha(k.alpha.clone()),
            m: k.m,
            c: Rational(v.clone()),
        })
        .collect()
}

fn build_potential(
    orb: OrbifoldData,
    max_m: u32,
    max_len: Option<u32>,
    coefficients: &[CoefficientRecord],
) -> Result<Potential, Error> {
    let mut p = Potential::new(orb, max_m, max_len)?;
    p.impose_separation();
    let mut previous: Option<CoeffKey> = None;
    for (row, rec) in coefficients.iter().enumerate() {
        let key = CoeffKey::new(rec.alpha.0.clone(), rec.m);
        if previous.as_ref().is_some_and(|prev| *prev >= key) {
            return Err(Error::Parse(format!("coefficient {}: {key} out of order", row + 1)));
        }
        if !p.in_bounds(&key) {
            return Err(Error::Parse(format!("coefficient {}: {key} outside the bounds", row + 1)));
        }
        p.set_known(key.clone(), rec.c.0.clone())
            .map_err(|e| Error::Parse(format!("coefficient {}: {e}", row + 1)))?;
        previous = Some(key);
    }
    let rest: Vec<CoeffKey> = p.unknown_keys().cloned().collect();
    for key in rest {
        p.set_known(key, BigRational::default())?;
    }
    Ok(p)
}

pub fn to_json(p: &Potential, unverified: bool) -> String {
    let mut s = serde_json::to_string(&PotentialDoc::from_potential(p, unverified)).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Potential, Error> {
    let doc: PotentialDoc = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    doc.to_potential()
}

pub fn alpha_cell(alpha: &MultiIndex) -> String {
    alpha
        .entries()
        .iter()
        .map(|(c, e)| format!("{}:{e}", coord_label(*c)))
        .collect::<Vec<_>>()
        .join(";")
}

fn parse_alpha_cell(s: &str) -> Result<MultiIndex, String> {
    let mut pairs = Vec::new();
    for part in s.split(';').filter(|p| !p.is_empty()) {
        let (c, e) = part.rsplit_once(':').ok_or_else(|| format!("bad entry '{part}'"))?;
        let e: u32 = e.parse().map_err(|_| format!("bad exponent in '{part}'"))?;
        if e == 0 {
            return Err(format!("zero exponent in '{part}'"));
        }
        pairs.push((parse_coord(c)?, e));
    }
    Ok(MultiIndex::from_pairs(pairs))
}

/// Columns `alpha`, `m`, `c`; strings quoted, numbers bare.
pub fn to_csv(p: &Potential) -> String {
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(Vec::new());
    w.write_record(["alpha", "m", "c"]).expect("in-memory write");
    for (k, v) in p.coefficients() {
        w.write_record([alpha_cell(&k.alpha), k.m.to_string(), v.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// CSV carries no header data, so the orbifold and bounds must be supplied.
pub fn from_csv(text: &str, orb: OrbifoldData, max_m: u32, max_len: Option<u32>) -> Result<Potential, Error> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut recs = Vec::new();
    for row in r.records() {
        let row = row.map_err(|e| Error::Parse(format!("csv: {e}")))?;
        let line = row.position().map_or(0, |p| p.line());
        let fail = |msg: String| Error::Parse(format!("line {line}: {msg}"));
        if row.len() != 3 {
            return Err(fail(format!("expected 3 fields, found {}", row.len())));
        }
        let alpha = parse_alpha_cell(&row[0]).map_err(fail)?;
        let m: u32 = row[1].parse().map_err(|_| fail(format!("bad degree '{}'", &row[1])))?;
        let c = parse_rational(&row[2]).map_err(fail)?;
        recs.push(CoefficientRecord {
            alpha: Alpha(alpha),
            m,
            c: Rational(c),
        });
    }
    build_potential(orb, max_m, max_len, &recs)
}

pub fn to_text(p: &Potential, unverified: bool) -> String {
    let orb = p.orbifold();
    let mut s = String::new();
    let _ = writeln!(s, "A = {orb}, mu = {}, chi = {}", orb.mu(), orb.chi());
    let _ = write!(s, "max_m = {}", p.max_m());
    if p.effective_max_m() < p.max_m() {
        let _ = write!(s, " (natural bound {})", p.effective_max_m());
    }
    if let Some(l) = p.max_len() {
        let _ = write!(s, ", max_len = {l}");
    }
    s.push('\n');
    if unverified {
        s.push_str("unverified\n");
    }
    let coeffs = p.coefficients();
    let _ = writeln!(s, "{} nonzero coefficients", coeffs.len());
    for (k, v) in coeffs {
        let _ = writeln!(s, "{k} = {v}");
    }
    s
}
