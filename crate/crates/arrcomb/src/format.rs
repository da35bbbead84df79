//! JSON and CSV encodings. Rationals are strings `"p/q"` or `"p"`, and all
//! coordinate and hyperplane indices are 1-based.

use std::collections::BTreeMap;
use std::io::Write;
use std::str::FromStr;

use arrcomb_core::arrangement::{
    build_deformed_braid, build_family, build_type_b, Arrangement, ArrangementKind, DeformedBraidSpec, Family,
    Hyperplane, TypeBSpec,
};
use arrcomb_core::bijection::PhiImage;
use arrcomb_core::faces::{face_from_parts, parse_signs};
use arrcomb_core::identities::{CheckReport, ReportValue};
use arrcomb_core::{BivariatePolynomial, Face, FaceCountTable, LinearConstraint, Rational, TruncatedSeries};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{malformed, Result};

/// A scalar as read from JSON: a rational string or a plain integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Text(String),
    Int(i64),
}

impl From<&Rational> for Scalar {
    fn from(r: &Rational) -> Self {
        Scalar::Text(r.to_string())
    }
}

impl Scalar {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Scalar::Int(v) => Ok(Rational::from_integer((*v).into())),
            Scalar::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| malformed(format!("not a rational: {s:?}")))
}

fn scalars(values: &[Rational]) -> Vec<Scalar> {
    values.iter().map(Scalar::from).collect()
}

fn rationals(values: &[Scalar]) -> Result<Vec<Rational>> {
    values.iter().map(Scalar::to_rational).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindJson {
    DeformedBraid,
    TypeB,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub name: String,
    pub a: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneJson {
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
}

impl From<&LinearConstraint> for HyperplaneJson {
    fn from(c: &LinearConstraint) -> Self {
        HyperplaneJson { normal: scalars(&c.normal), offset: Scalar::from(&c.offset) }
    }
}

/// Structured kinds are rebuilt from their offset tables; a `hyperplanes`
/// list given alongside must agree with the rebuilt one. A deformed braid
/// file may name a `family` instead of listing offsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementJson {
    pub ambient_dim: usize,
    pub kind: KindJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub offsets: BTreeMap<String, Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sum_offsets: BTreeMap<String, Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub axis_offsets: BTreeMap<String, Vec<Scalar>>,
    #[serde(default)]
    pub hyperplanes: Vec<HyperplaneJson>,
}

fn pair_key((i, j): (usize, usize)) -> String {
    format!("{},{}", i + 1, j + 1)
}

fn parse_index(s: &str, n: usize) -> Result<usize> {
    match s.trim().parse::<usize>() {
        Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
        _ => Err(malformed(format!("index {s:?} outside 1..={n}"))),
    }
}

fn parse_pair(key: &str, n: usize) -> Result<(usize, usize)> {
    let (i, j) = key.split_once(',').ok_or_else(|| malformed(format!("pair key {key:?} is not \"i,j\"")))?;
    Ok((parse_index(i, n)?, parse_index(j, n)?))
}

fn pair_table(table: &BTreeMap<(usize, usize), Vec<Rational>>) -> BTreeMap<String, Vec<Scalar>> {
    table.iter().map(|(&p, list)| (pair_key(p), scalars(list))).collect()
}

fn read_pair_table(table: &BTreeMap<String, Vec<Scalar>>, n: usize) -> Result<BTreeMap<(usize, usize), Vec<Rational>>> {
    let mut out = BTreeMap::new();
    for (key, list) in table {
        if out.insert(parse_pair(key, n)?, rationals(list)?).is_some() {
            return Err(malformed(format!("pair {key:?} listed twice")));
        }
    }
    Ok(out)
}

pub fn arrangement_to_json(a: &Arrangement, family: Option<(Family, i64)>) -> ArrangementJson {
    let hyperplanes = a.hyperplanes().iter().map(|h| HyperplaneJson::from(h.constraint())).collect();
    let family = family.map(|(f, a)| FamilyJson { name: f.name().to_string(), a });
    let mut out = ArrangementJson {
        ambient_dim: a.ambient_dim(),
        kind: KindJson::Generic,
        family,
        offsets: BTreeMap::new(),
        sum_offsets: BTreeMap::new(),
        axis_offsets: BTreeMap::new(),
        hyperplanes,
    };
    match a.kind() {
        ArrangementKind::Generic => {}
        ArrangementKind::DeformedBraid(spec) => {
            out.kind = KindJson::DeformedBraid;
            out.offsets = pair_table(spec.offsets());
        }
        ArrangementKind::TypeB(spec) => {
            out.kind = KindJson::TypeB;
            out.offsets = pair_table(spec.diff_offsets());
            out.sum_offsets = pair_table(spec.sum_offsets());
            out.axis_offsets = spec.axis_offsets().iter().map(|(i, l)| ((i + 1).to_string(), scalars(l))).collect();
        }
    }
    out
}

fn family_of(json: &ArrangementJson) -> Result<Option<(Family, i64)>> {
    json.family
        .as_ref()
        .map(|f| Ok((Family::from_str(&f.name)?, f.a)))
        .transpose()
}

pub fn arrangement_from_json(json: &ArrangementJson) -> Result<Arrangement> {
    let n = json.ambient_dim;
    let listed = || -> Result<Vec<Hyperplane>> {
        json.hyperplanes
            .iter()
            .map(|h| {
                let normal = rationals(&h.normal)?;
                if normal.len() != n {
                    return Err(malformed(format!("normal of length {} in dimension {n}", normal.len())));
                }
                Ok(Hyperplane::new(normal, h.offset.to_rational()?)?)
            })
            .collect()
    };
    let built = match json.kind {
        KindJson::Generic => return Ok(Arrangement::generic(n, listed()?)?),
        KindJson::DeformedBraid => match family_of(json)? {
            Some((family, a)) if json.offsets.is_empty() => build_family(family, n, a)?,
            _ => build_deformed_braid(&DeformedBraidSpec::new(n, read_pair_table(&json.offsets, n)?)?),
        },
        KindJson::TypeB => {
            let mut axis = BTreeMap::new();
            for (key, list) in &json.axis_offsets {
                axis.insert(parse_index(key, n)?, rationals(list)?);
            }
            let spec = TypeBSpec::new(
                n,
                read_pair_table(&json.offsets, n)?,
                read_pair_table(&json.sum_offsets, n)?,
                axis,
            )?;
            build_type_b(&spec)
        }
    };
    if !json.hyperplanes.is_empty() && listed()? != built.hyperplanes() {
        return Err(malformed("hyperplane list does not match the offset tables"));
    }
    Ok(built)
}

pub fn read_arrangement(text: &str) -> Result<(Arrangement, ArrangementJson)> {
    let json: ArrangementJson = serde_json::from_str(text)?;
    let a = arrangement_from_json(&json)?;
    Ok((a, json))
}

/// Label for reports: the family if named, otherwise the kind.
pub fn describe(json: &ArrangementJson) -> String {
    match &json.family {
        Some(f) => format!("{} a={} n={}", f.name, f.a, json.ambient_dim),
        None => {
            let kind = match json.kind {
                KindJson::DeformedBraid => "deformed-braid",
                KindJson::TypeB => "type-b",
                KindJson::Generic => "generic",
            };
            format!("{kind} n={}", json.ambient_dim)
        }
    }
}

/// The canonical text the cache keys are derived from.
pub fn canonical_text(a: &Arrangement) -> String {
    let mut json = arrangement_to_json(a, None);
    json.family = None;
    serde_json::to_string(&json).expect("arrangement JSON serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub id: usize,
    pub dim: usize,
    pub level: usize,
    pub sign: String,
    pub witness: Vec<Scalar>,
    pub flat_equations: Vec<HyperplaneJson>,
}

pub fn face_to_json(id: usize, face: &Face) -> FaceJson {
    FaceJson {
        id,
        dim: face.dim(),
        level: face.level(),
        sign: face.sign_string(),
        witness: scalars(face.witness()),
        flat_equations: face.flat().equations().iter().map(HyperplaneJson::from).collect(),
    }
}

/// Faces numbered from 1 in enumeration order.
pub fn faces_to_json(faces: &[Face]) -> Vec<FaceJson> {
    faces.iter().enumerate().map(|(k, f)| face_to_json(k + 1, f)).collect()
}

pub fn face_from_json(a: &Arrangement, json: &FaceJson) -> Result<Face> {
    let signs = parse_signs(&json.sign).ok_or_else(|| malformed(format!("bad sign vector {:?}", json.sign)))?;
    let face = face_from_parts(a, &signs, rationals(&json.witness)?, json.level)?;
    if face.dim() != json.dim {
        return Err(malformed(format!("face {} has dimension {}, not {}", json.id, face.dim(), json.dim)));
    }
    Ok(face)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub x: u32,
    pub t: u32,
    pub coeff: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub terms: Vec<TermJson>,
}

pub fn polynomial_to_json(p: &BivariatePolynomial) -> PolynomialJson {
    let terms = p.terms().map(|(x, t, c)| TermJson { x, t, coeff: Scalar::from(c) }).collect();
    PolynomialJson { terms }
}

pub fn polynomial_from_json(json: &PolynomialJson) -> Result<BivariatePolynomial> {
    let mut p = BivariatePolynomial::zero();
    for term in &json.terms {
        p.add_term(term.x, term.t, term.coeff.to_rational()?);
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    #[serde(rename = "N")]
    pub truncation: usize,
    pub coeffs: Vec<PolynomialJson>,
}

pub fn series_to_json(s: &TruncatedSeries) -> SeriesJson {
    SeriesJson { truncation: s.truncation(), coeffs: s.coeffs().iter().map(polynomial_to_json).collect() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub n: usize,
    pub f: Vec<Vec<u64>>,
    pub b: Vec<u64>,
}

pub fn table_to_json(table: &FaceCountTable) -> TableJson {
    let n = table.n();
    TableJson {
        n,
        f: (0..=n).map(|d| (0..=n).map(|l| table.f(d, l)).collect()).collect(),
        b: (0..=n).map(|d| table.b(d)).collect(),
    }
}

pub fn table_from_json(json: &TableJson) -> Result<FaceCountTable> {
    Ok(FaceCountTable::from_counts(json.n, json.f.clone(), json.b.clone())?)
}

/// Header `d,0,1,…,n,b`, then one row per dimension `d`.
pub fn write_table_csv(table: &FaceCountTable, out: impl Write) -> Result<()> {
    let n = table.n();
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["d".to_string()];
    header.extend((0..=n).map(|l| l.to_string()));
    header.push("b".into());
    w.write_record(&header)?;
    for d in 0..=n {
        let mut row = vec![d.to_string()];
        row.extend((0..=n).map(|l| table.f(d, l).to_string()));
        row.push(table.b(d).to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn value_to_json(v: &ReportValue) -> Value {
    let int = |i: &BigInt| match i.to_i64() {
        Some(small) => json!(small),
        None => json!(i.to_string()),
    };
    match v {
        ReportValue::Integer(i) => int(i),
        ReportValue::Integers(is) => Value::Array(is.iter().map(int).collect()),
        ReportValue::Polynomial(p) => serde_json::to_value(polynomial_to_json(p)).expect("polynomial serializes"),
        ReportValue::Series(s) => serde_json::to_value(series_to_json(s)).expect("series serializes"),
        ReportValue::Text(s) => json!(s),
    }
}

/// One check outcome; fields serialize in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportJson {
    pub check: &'static str,
    pub instance: String,
    pub status: &'static str,
    pub lhs: Value,
    pub rhs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn report_to_json(r: &CheckReport) -> ReportJson {
    ReportJson {
        check: r.check,
        instance: r.instance.clone(),
        status: r.status.as_str(),
        lhs: value_to_json(&r.lhs),
        rhs: value_to_json(&r.rhs),
        note: r.note.clone(),
    }
}

pub fn reports_to_json(reports: &[CheckReport]) -> Vec<ReportJson> {
    reports.iter().map(report_to_json).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiJson {
    pub partition: Vec<Vec<usize>>,
    pub parts: Vec<FaceJson>,
}

/// `ids[p]` numbers part `p` among the faces of its own arrangement.
pub fn phi_to_json(image: &PhiImage, ids: &[usize]) -> PhiJson {
    PhiJson {
        partition: image.partition.blocks().iter().map(|b| b.iter().map(|i| i + 1).collect()).collect(),
        parts: image.parts.iter().zip(ids).map(|(f, &id)| face_to_json(id, f)).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct PartInput {
    pub sign: String,
}

/// Input of the inverse map: only the sign vectors of the parts are read.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct PhiInput {
    pub partition: Vec<Vec<usize>>,
    pub parts: Vec<PartInput>,
}

pub fn partition_from_json(blocks: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    blocks
        .iter()
        .map(|b| b.iter().map(|&i| i.checked_sub(1).ok_or_else(|| malformed("partition indices start at 1"))).collect())
        .collect()
}
