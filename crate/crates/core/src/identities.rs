//! Exact verification of the face-counting identities. Every check returns
//! reports carrying both sides of the identity so a failure can be read off
//! directly.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arrangement::{
    build_deformed_braid, centralize, localize, restrict_to_flat, Arrangement, ArrangementKind,
    DeformedBraidSpec,
};
use crate::bijection::{phi, phi_inverse, OrderedPartition};
use crate::exactgeom::{rational, Rational};
use crate::faces::{
    count_table, enumerate_faces, enumerate_regions, is_relatively_bounded, level_by_components,
    level_by_recession, Face, FaceCountTable, Sign,
};
use crate::poset::{build_intersection_poset, BivariatePolynomial, IntersectionPoset};
use crate::series::{binom_poly, egf_truncated, BinomShift, Exponent, StirlingTable, TruncatedSeries};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportValue {
    Integer(BigInt),
    Integers(Vec<BigInt>),
    Polynomial(BivariatePolynomial),
    Series(TruncatedSeries),
    Text(String),
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportValue::Integer(v) => write!(f, "{v}"),
            ReportValue::Integers(vs) => {
                write!(f, "(")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
            ReportValue::Polynomial(p) => write!(f, "{p}"),
            ReportValue::Series(s) => {
                for (n, c) in s.coeffs().iter().enumerate() {
                    if n > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "[{n}] {c}")?;
                }
                Ok(())
            }
            ReportValue::Text(s) => f.write_str(s),
        }
    }
}

/// One evaluated instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check: &'static str,
    pub instance: String,
    pub status: Status,
    pub lhs: ReportValue,
    pub rhs: ReportValue,
    pub note: Option<String>,
}

impl CheckReport {
    /// Passes iff both sides are equal.
    pub fn compare(check: &'static str, instance: String, lhs: ReportValue, rhs: ReportValue) -> Self {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        CheckReport { check, instance, status, lhs, rhs, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} [{}]: {} vs {}", self.status.as_str(), self.check, self.instance, self.lhs, self.rhs)?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

/// Everything the checks need about one arrangement.
#[derive(Debug, Clone)]
pub struct ArrangementData {
    pub label: String,
    pub arrangement: Arrangement,
    pub poset: IntersectionPoset,
    pub faces: Vec<Face>,
    pub table: FaceCountTable,
    pub whitney: BivariatePolynomial,
    pub chi: BivariatePolynomial,
}

pub fn analyze(label: impl Into<String>, arrangement: Arrangement) -> ArrangementData {
    let poset = build_intersection_poset(&arrangement);
    let faces = enumerate_faces(&arrangement);
    let table = count_table(&arrangement, &faces);
    let whitney = poset.whitney_polynomial();
    let chi = poset.characteristic_polynomial();
    ArrangementData { label: label.into(), arrangement, poset, faces, table, whitney, chi }
}

fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

fn integer_value(r: &Rational) -> BigInt {
    debug_assert!(r.is_integer());
    r.to_integer()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `r = |χ(−1)|` and `b(n) = |χ(1)|`.
pub fn check_zaslavsky(data: &ArrangementData) -> Vec<CheckReport> {
    let n = data.arrangement.ambient_dim();
    let zero = Rational::zero();
    let at = |t: i64| integer_value(&data.chi.eval(&zero, &rational(t))).abs();
    vec![
        CheckReport::compare(
            "zaslavsky",
            format!("{} regions", data.label),
            ReportValue::Integer(int(data.table.r())),
            ReportValue::Integer(at(-1)),
        ),
        CheckReport::compare(
            "zaslavsky",
            format!("{} bounded", data.label),
            ReportValue::Integer(int(data.table.b(n))),
            ReportValue::Integer(at(1)),
        ),
    ]
}

/// `Σ_d (−1)^{d−l} f(d, l) = l! S(n, l)` for each `l` in `1..=n`, summing
/// over `d` at fixed `n`.
pub fn check_stirling(label: &str, table: &FaceCountTable) -> Vec<CheckReport> {
    let n = table.n();
    let stirling = StirlingTable::new(n);
    (1..=n)
        .map(|l| {
            let lhs: BigInt = (l..=n)
                .map(|d| if (d - l) % 2 == 0 { int(table.f(d, l)) } else { -int(table.f(d, l)) })
                .sum();
            let rhs = factorial(l) * stirling.get(n, l).expect("table covers n");
            CheckReport::compare(
                "stirling",
                format!("{label} l={l}"),
                ReportValue::Integer(lhs),
                ReportValue::Integer(rhs),
            )
            .with_note("alternating sum over d at fixed n")
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `C(t, l)` for deformed braid arrangements.
    TypeA,
    /// `C((t − 1)/2, l)` for type-B deformations.
    TypeB,
}

/// The binomial-basis expansion of the count table.
pub fn binomial_expansion(table: &FaceCountTable, basis: Basis) -> BivariatePolynomial {
    let n = table.n();
    let (first, shift) = match basis {
        Basis::TypeA => (1, BinomShift::None),
        Basis::TypeB => (0, BinomShift::Half),
    };
    let mut out = BivariatePolynomial::zero();
    for l in first..=n {
        let binom = binom_poly(l, shift);
        for d in l..=n {
            let f = table.f(d, l) as i64;
            if f == 0 {
                continue;
            }
            let sign = if (d - l) % 2 == 0 { 1 } else { -1 };
            let coeff = BivariatePolynomial::monomial((n - d) as u32, 0, rational(sign * f));
            out += &(&coeff * &binom);
        }
    }
    out
}

/// The Whitney polynomial against the binomial expansion, then the same at
/// `x = 0` where it becomes the characteristic polynomial expansion.
pub fn check_expansion(data: &ArrangementData, basis: Basis) -> Result<Vec<CheckReport>> {
    let matches = matches!(
        (basis, data.arrangement.kind()),
        (Basis::TypeA, ArrangementKind::DeformedBraid(_)) | (Basis::TypeB, ArrangementKind::TypeB(_))
    );
    if !matches {
        return Err(Error::BasisMismatch);
    }
    let expansion = binomial_expansion(&data.table, basis);
    Ok(vec![
        CheckReport::compare(
            "expansion",
            format!("{} whitney", data.label),
            ReportValue::Polynomial(data.whitney.clone()),
            ReportValue::Polynomial(expansion.clone()),
        ),
        CheckReport::compare(
            "expansion",
            format!("{} characteristic", data.label),
            ReportValue::Polynomial(data.chi.clone()),
            ReportValue::Polynomial(expansion.at_x_zero()),
        ),
    ])
}

fn check_tables(tables: &[FaceCountTable]) -> Result<()> {
    match tables.iter().enumerate().find(|(i, t)| t.n() != i + 1) {
        Some((i, _)) => Err(Error::MissingTable(i + 1)),
        None => Ok(()),
    }
}

/// Sum over compositions `n_1 + ⋯ + n_l = n`, `d_1 + ⋯ + d_l = d` of the
/// multinomial `n! / (n_1! ⋯ n_l!)` times `Π f(d_i, 1)` of dimension `n_i`.
fn composition_count(tables: &[FaceCountTable], n: usize, d: usize, l: usize) -> BigInt {
    integer_value(&(composition_sum(tables, n, d, l) * Rational::from_integer(factorial(n))))
}

/// The same sum with each part weighted by `1 / n_i!`.
fn composition_sum(tables: &[FaceCountTable], n: usize, d: usize, l: usize) -> Rational {
    if l == 0 {
        return if n == 0 && d == 0 { Rational::one() } else { Rational::zero() };
    }
    let mut total = Rational::zero();
    for ni in 1..=n {
        for di in 1..=ni.min(d) {
            let f = tables[ni - 1].f(di, 1);
            if f != 0 {
                let weight = Rational::new(int(f), factorial(ni));
                total += weight * composition_sum(tables, n - ni, d - di, l - 1);
            }
        }
    }
    total
}

/// `f(d, l)` of dimension `n` against the multinomial composition sum of
/// level-1 counts, for every `n ≤ N` and `l`, then `F_l = F_1^l` as series.
pub fn check_power_identity(label: &str, tables: &[FaceCountTable]) -> Result<Vec<CheckReport>> {
    check_tables(tables)?;
    let big_n = tables.len();
    let mut reports = Vec::new();
    for n in 1..=big_n {
        for l in 1..=n {
            let lhs = (l..=n).map(|d| int(tables[n - 1].f(d, l))).collect();
            let rhs = (l..=n).map(|d| composition_count(tables, n, d, l)).collect();
            reports.push(
                CheckReport::compare(
                    "power",
                    format!("{label} n={n} l={l}"),
                    ReportValue::Integers(lhs),
                    ReportValue::Integers(rhs),
                )
                .with_note(format!("d = {l}..{n}")),
            );
        }
    }
    let f1 = egf_truncated(tables, 1)?;
    for l in 1..=big_n {
        reports.push(CheckReport::compare(
            "power",
            format!("{label} series l={l} N={big_n}"),
            ReportValue::Series(egf_truncated(tables, l)?),
            ReportValue::Series(f1.power(l as u32)),
        ));
    }
    Ok(reports)
}

/// `1 + Σ w(A_n) y^n/n!` against `(1 − F_1(−x,−y))^t` and against
/// `(1 + F(−x,−y))^{−t}` with `F = Σ_l F_l`, plus the `x = 0` slice
/// `(1 + Σ (−1)^n r(A_n) y^n/n!)^{−t}`.
pub fn check_stanley(label: &str, tables: &[FaceCountTable], whitneys: &[BivariatePolynomial]) -> Result<Vec<CheckReport>> {
    check_tables(tables)?;
    let big_n = tables.len();
    if whitneys.len() != big_n {
        return Err(Error::MissingTable(whitneys.len() + 1));
    }
    let mut lhs = TruncatedSeries::one(big_n);
    for (i, w) in whitneys.iter().enumerate() {
        lhs.set_coeff(i + 1, w.clone());
    }
    let one = TruncatedSeries::one(big_n);
    let f1 = egf_truncated(tables, 1)?;
    let first = one.sub(&f1.negate_xy())?.binomial_power(Exponent::T)?;
    let mut total = TruncatedSeries::zero(big_n);
    for l in 1..=big_n {
        total = total.add(&egf_truncated(tables, l)?)?;
    }
    let second = one.add(&total.negate_xy())?.binomial_power(Exponent::NegT)?;
    let mut regions = TruncatedSeries::one(big_n);
    for (i, table) in tables.iter().enumerate() {
        let n = i + 1;
        let r = rational(table.r() as i64);
        let r = if n % 2 == 0 { r } else { -r };
        regions.set_coeff(n, BivariatePolynomial::constant(r));
    }
    let slice = regions.binomial_power(Exponent::NegT)?;
    let instance = |form: &str| format!("{label} {form} N={big_n}");
    Ok(vec![
        CheckReport::compare(
            "stanley",
            instance("level-one form"),
            ReportValue::Series(lhs.clone()),
            ReportValue::Series(first),
        ),
        CheckReport::compare(
            "stanley",
            instance("all-levels form"),
            ReportValue::Series(lhs.clone()),
            ReportValue::Series(second),
        ),
        CheckReport::compare(
            "stanley",
            instance("x=0 slice"),
            ReportValue::Series(lhs.at_x_zero()),
            ReportValue::Series(slice),
        ),
    ])
}

fn deformed_braid(data: &ArrangementData) -> Result<&DeformedBraidSpec> {
    data.arrangement.deformed_braid_spec().ok_or(Error::NotDeformedBraid)
}

/// `f(d, l) = Σ_X r(cent/X) b_d(A_X)` over flats `X` of the centralization
/// with `dim X = l`. Region counts of `cent/X` are enumerated and compared
/// with `l!`.
pub fn check_convolution(data: &ArrangementData) -> Result<Vec<CheckReport>> {
    deformed_braid(data)?;
    let a = &data.arrangement;
    let n = a.ambient_dim();
    let central = centralize(a);
    let central_poset = build_intersection_poset(&central);
    // per flat: dimension, r(cent/X), b_d(A_X) for each d
    let mut terms: Vec<(usize, u64, Vec<u64>)> = Vec::new();
    for flat in central_poset.flats() {
        let restriction = restrict_to_flat(&central, flat)?;
        let r = enumerate_regions(&restriction.arrangement).len() as u64;
        let local = localize(a, flat)?;
        let mut b = vec![0u64; n + 1];
        for face in enumerate_faces(&local) {
            if is_relatively_bounded(&local, &face) {
                b[face.dim()] += 1;
            }
        }
        terms.push((flat.dim(), r, b));
    }
    let mut reports = Vec::new();
    for l in 0..=n {
        let counts: Vec<BigInt> = terms.iter().filter(|t| t.0 == l).map(|t| int(t.1)).collect();
        let expected = vec![factorial(l); counts.len()];
        reports.push(CheckReport::compare(
            "convolution",
            format!("{} restriction regions l={l}", data.label),
            ReportValue::Integers(counts),
            ReportValue::Integers(expected),
        ));
    }
    for l in 1..=n {
        for d in l..=n {
            let rhs: u64 = terms.iter().filter(|t| t.0 == l).map(|t| t.1 * t.2[d]).sum();
            reports.push(CheckReport::compare(
                "convolution",
                format!("{} d={d} l={l}", data.label),
                ReportValue::Integer(int(data.table.f(d, l))),
                ReportValue::Integer(int(rhs)),
            ));
        }
    }
    Ok(reports)
}

/// Level from the recession cone against the number of strong components
/// of the face digraph, face by face.
pub fn check_levels(data: &ArrangementData) -> Result<Vec<CheckReport>> {
    deformed_braid(data)?;
    let a = &data.arrangement;
    let mut by_recession = Vec::with_capacity(data.faces.len());
    let mut by_components = Vec::with_capacity(data.faces.len());
    for face in &data.faces {
        by_recession.push(BigInt::from(level_by_recession(a, face)));
        by_components.push(BigInt::from(level_by_components(a, face)?));
    }
    let mismatches = by_recession.iter().zip(&by_components).filter(|(p, q)| p != q).count();
    Ok(vec![CheckReport::compare(
        "levels",
        format!("{} faces={}", data.label, data.faces.len()),
        ReportValue::Integers(by_recession),
        ReportValue::Integers(by_components),
    )
    .with_note(format!("{mismatches} mismatches"))])
}

/// Level-1 faces are exactly the relatively bounded ones in every
/// dimension, and no face has level 0.
pub fn check_bounded_levels(data: &ArrangementData) -> Result<Vec<CheckReport>> {
    deformed_braid(data)?;
    let a = &data.arrangement;
    let n = a.ambient_dim();
    let mut level_one = vec![0u64; n + 1];
    let mut bounded = vec![0u64; n + 1];
    let mut disagree = 0usize;
    for face in &data.faces {
        let one = face.level() == 1;
        let rb = is_relatively_bounded(a, face);
        level_one[face.dim()] += one as u64;
        bounded[face.dim()] += rb as u64;
        disagree += (one != rb) as usize;
    }
    let to_ints = |v: Vec<u64>| ReportValue::Integers(v.into_iter().map(int).collect());
    let level_zero = (0..=n).map(|d| int(data.table.f(d, 0))).collect();
    Ok(vec![
        CheckReport::compare("bounded-levels", format!("{} by dimension", data.label), to_ints(level_one), to_ints(bounded))
            .with_note(format!("{disagree} faces disagree")),
        CheckReport::compare(
            "bounded-levels",
            format!("{} level zero", data.label),
            ReportValue::Integers(level_zero),
            ReportValue::Integers(vec![BigInt::zero(); n + 1]),
        ),
    ])
}

type Image = (OrderedPartition, Vec<Vec<Sign>>);

fn image_key(partition: &OrderedPartition, parts: &[Face]) -> Image {
    (partition.clone(), parts.iter().map(|f| f.signs().to_vec()).collect())
}

/// Surjective labellings `0..n → 0..l`, read as ordered partitions.
fn ordered_partitions(n: usize, l: usize) -> Vec<OrderedPartition> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        let mut blocks = vec![Vec::new(); l];
        for (i, &b) in labels.iter().enumerate() {
            blocks[b].push(i);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(OrderedPartition::new(n, blocks).expect("labels cover 0..n"));
        }
        let mut k = 0;
        while k < n && labels[k] + 1 == l {
            labels[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        labels[k] += 1;
    }
    out
}

/// For each level `l`: `φ` on every face, `φ⁻¹ ∘ φ = id`, injectivity,
/// dimension additivity, and `φ ∘ φ⁻¹ = id` on every ordered partition with
/// a tuple of level-1 faces of the induced arrangements. The report compares
/// `|F_{d,l}|` with the number of such tuples of total dimension `d`.
pub fn check_bijection(data: &ArrangementData) -> Result<Vec<CheckReport>> {
    let spec = deformed_braid(data)?;
    let n = data.arrangement.ambient_dim();
    let mut level_one: BTreeMap<Vec<usize>, Vec<Face>> = BTreeMap::new();
    let mut reports = Vec::new();
    for l in 1..=n {
        let mut problems: Vec<String> = Vec::new();
        let mut images: BTreeSet<Image> = BTreeSet::new();
        let faces: Vec<&Face> = data.faces.iter().filter(|f| f.level() == l).collect();
        for face in &faces {
            match phi(spec, face) {
                Ok(image) => {
                    if image.partition.len() != l {
                        problems.push(format!("{}: {} blocks", face.sign_string(), image.partition.len()));
                    }
                    match phi_inverse(spec, &image.partition, &image.parts) {
                        Ok(back) if &back == *face => {}
                        _ => problems.push(format!("{}: inverse does not return the face", face.sign_string())),
                    }
                    images.insert(image_key(&image.partition, &image.parts));
                }
                Err(e) => problems.push(format!("{}: {e}", face.sign_string())),
            }
        }
        if images.len() != faces.len() {
            problems.push(format!("{} faces but {} images", faces.len(), images.len()));
        }
        let mut tuples = vec![0u64; n + 1];
        for partition in ordered_partitions(n, l) {
            let mut choices: Vec<&Vec<Face>> = Vec::with_capacity(l);
            for block in partition.blocks() {
                if !level_one.contains_key(block) {
                    let sub = build_deformed_braid(&spec.induced(block)?);
                    let faces = enumerate_faces(&sub).into_iter().filter(|f| f.level() == 1).collect();
                    level_one.insert(block.clone(), faces);
                }
            }
            for block in partition.blocks() {
                choices.push(&level_one[block]);
            }
            let mut index = vec![0usize; l];
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            loop {
                let parts: Vec<Face> = (0..l).map(|p| choices[p][index[p]].clone()).collect();
                let dim: usize = parts.iter().map(Face::dim).sum();
                tuples[dim] += 1;
                let round_trip = phi_inverse(spec, &partition, &parts).and_then(|g| {
                    if g.level() != l || g.dim() != dim {
                        return Err(Error::InconsistentFace(g.sign_string()));
                    }
                    phi(spec, &g)
                });
                match round_trip {
                    Ok(image) if image.partition == partition && image.parts == parts => {}
                    _ => problems.push(format!("{:?}: forward image differs", partition.blocks())),
                }
                let mut p = 0;
                while p < l && index[p] + 1 == choices[p].len() {
                    index[p] = 0;
                    p += 1;
                }
                if p == l {
                    break;
                }
                index[p] += 1;
            }
        }
        let lhs = (l..=n).map(|d| int(data.table.f(d, l))).collect();
        let rhs = (l..=n).map(|d| int(tuples[d])).collect();
        let mut report = CheckReport::compare(
            "bijection",
            format!("{} l={l}", data.label),
            ReportValue::Integers(lhs),
            ReportValue::Integers(rhs),
        );
        if problems.is_empty() {
            report = report.with_note(format!("d = {l}..{n}; round trips ok"));
        } else {
            report.status = Status::Fail;
            report = report.with_note(problems.join("; "));
        }
        reports.push(report);
    }
    Ok(reports)
}
