//! Runs the identity checks over family sequences and random specs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use arrcomb_core::arrangement::{build_deformed_braid, build_family, Arrangement, ArrangementKind, Family};
use arrcomb_core::faces::{count_table, enumerate_faces, face_from_signs};
use arrcomb_core::identities::{
    check_bijection, check_bounded_levels, check_convolution, check_expansion, check_levels, check_power_identity,
    check_stanley, check_stirling, check_zaslavsky, ArrangementData, Basis, CheckReport,
};
use arrcomb_core::poset::build_intersection_poset;
use arrcomb_core::{Face, FaceCountTable};

use crate::cache::Cache;
use crate::error::{malformed, CliError, Result};
use crate::format::{canonical_text, face_from_json, faces_to_json, table_from_json, table_to_json, FaceJson, TableJson};
use crate::random::{random_specs, RandomSpecParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Zaslavsky,
    Stirling,
    Expansion,
    Power,
    Stanley,
    Convolution,
    Levels,
    Bounded,
    Bijection,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::Zaslavsky,
        CheckKind::Stirling,
        CheckKind::Expansion,
        CheckKind::Power,
        CheckKind::Stanley,
        CheckKind::Convolution,
        CheckKind::Levels,
        CheckKind::Bounded,
        CheckKind::Bijection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Zaslavsky => "zaslavsky",
            CheckKind::Stirling => "stirling",
            CheckKind::Expansion => "expansion",
            CheckKind::Power => "power",
            CheckKind::Stanley => "stanley",
            CheckKind::Convolution => "convolution",
            CheckKind::Levels => "levels",
            CheckKind::Bounded => "bounded",
            CheckKind::Bijection => "bijection",
        }
    }

    /// Checks over a whole sequence `A_1, …, A_N` rather than one arrangement.
    pub fn is_sequence_check(self) -> bool {
        matches!(self, CheckKind::Power | CheckKind::Stanley)
    }

    /// Checks that only apply to deformed braid arrangements.
    pub fn needs_deformed_braid(self) -> bool {
        matches!(self, CheckKind::Convolution | CheckKind::Levels | CheckKind::Bounded | CheckKind::Bijection)
    }

    /// Checks whose `n = 4` instances are left to `--deep`.
    pub fn is_costly(self) -> bool {
        matches!(self, CheckKind::Convolution | CheckKind::Bijection)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| malformed(format!("unknown check {s:?}")))
    }
}

/// Comma-separated check names; empty means all.
pub fn parse_checks(list: &str) -> Result<BTreeSet<CheckKind>> {
    let names: Vec<&str> = list.split(',').filter(|s| !s.trim().is_empty()).collect();
    if names.is_empty() {
        return Ok(CheckKind::ALL.into_iter().collect());
    }
    names.into_iter().map(CheckKind::from_str).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub checks: BTreeSet<CheckKind>,
    /// Truncation order `N` of the series checks.
    pub truncation: usize,
    /// Run the costly checks above `n = 3` as well.
    pub deep: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { checks: CheckKind::ALL.into_iter().collect(), truncation: 4, deep: false }
    }
}

impl VerifyOptions {
    fn wants(&self, check: CheckKind, n: usize) -> bool {
        self.checks.contains(&check) && (self.deep || !check.is_costly() || n <= 3)
    }
}

/// Face lists and count tables go through the cache; the poset and
/// polynomials are recomputed.
#[derive(Debug, Clone, Default)]
pub struct Session {
    pub cache: Cache,
}

impl Session {
    pub fn new(cache: Cache) -> Self {
        Session { cache }
    }

    pub fn faces(&self, a: &Arrangement) -> Result<Vec<Face>> {
        let key = Cache::key(&canonical_text(a), "faces");
        if let Some(stored) = self.cache.load::<Vec<FaceJson>>(&key) {
            if let Ok(faces) = stored.iter().map(|f| face_from_json(a, f)).collect::<Result<Vec<_>>>() {
                if spot_check(a, &faces) {
                    return Ok(faces);
                }
            }
        }
        let faces = enumerate_faces(a);
        self.cache.store(&key, &faces_to_json(&faces))?;
        Ok(faces)
    }

    pub fn table(&self, a: &Arrangement, faces: &[Face]) -> Result<FaceCountTable> {
        let key = Cache::key(&canonical_text(a), "table");
        if let Some(stored) = self.cache.load::<TableJson>(&key) {
            if let Ok(table) = table_from_json(&stored) {
                if table.n() == a.ambient_dim() && table.total() == faces.len() as u64 {
                    return Ok(table);
                }
            }
        }
        let table = count_table(a, faces);
        self.cache.store(&key, &table_to_json(&table))?;
        Ok(table)
    }

    pub fn analyze(&self, label: impl Into<String>, arrangement: Arrangement) -> Result<ArrangementData> {
        let faces = self.faces(&arrangement)?;
        let table = self.table(&arrangement, &faces)?;
        let poset = build_intersection_poset(&arrangement);
        let whitney = poset.whitney_polynomial();
        let chi = poset.characteristic_polynomial();
        Ok(ArrangementData { label: label.into(), arrangement, poset, faces, table, whitney, chi })
    }
}

/// Recomputes the first and last cached faces from their sign vectors.
fn spot_check(a: &Arrangement, faces: &[Face]) -> bool {
    let (Some(first), Some(last)) = (faces.first(), faces.last()) else {
        return false;
    };
    [first, last].into_iter().all(|f| face_from_signs(a, f.signs()).as_ref() == Ok(f))
}

/// Every selected single-arrangement check.
pub fn instance_checks(data: &ArrangementData, options: &VerifyOptions) -> Result<Vec<CheckReport>> {
    let n = data.arrangement.ambient_dim();
    let braid = matches!(data.arrangement.kind(), ArrangementKind::DeformedBraid(_));
    let mut reports = Vec::new();
    for check in &options.checks {
        if check.is_sequence_check() || !options.wants(*check, n) || (check.needs_deformed_braid() && !braid) {
            continue;
        }
        reports.extend(match check {
            CheckKind::Zaslavsky => check_zaslavsky(data),
            CheckKind::Stirling => check_stirling(&data.label, &data.table),
            CheckKind::Expansion => match data.arrangement.kind() {
                ArrangementKind::DeformedBraid(_) => check_expansion(data, Basis::TypeA)?,
                ArrangementKind::TypeB(_) => check_expansion(data, Basis::TypeB)?,
                ArrangementKind::Generic => continue,
            },
            CheckKind::Convolution => check_convolution(data)?,
            CheckKind::Levels => check_levels(data)?,
            CheckKind::Bounded => check_bounded_levels(data)?,
            CheckKind::Bijection => check_bijection(data)?,
            CheckKind::Power | CheckKind::Stanley => unreachable!(),
        });
    }
    Ok(reports)
}

pub fn family_label(family: Family, n: usize, a: i64) -> String {
    if family.is_extended() {
        format!("{family} a={a} n={n}")
    } else {
        format!("{family} n={n}")
    }
}

/// Instance checks for `n ≤ n_max` and the sequence checks over `n ≤ N`.
pub fn verify_family(
    session: &Session,
    family: Family,
    n_max: usize,
    a: i64,
    options: &VerifyOptions,
) -> Result<Vec<CheckReport>> {
    let sequence = options.checks.iter().any(|c| c.is_sequence_check());
    let top = if sequence { n_max.max(options.truncation) } else { n_max };
    let mut reports = Vec::new();
    let mut tables = Vec::new();
    let mut whitneys = Vec::new();
    for n in 1..=top {
        let data = session.analyze(family_label(family, n, a), build_family(family, n, a)?)?;
        if n <= n_max {
            reports.extend(instance_checks(&data, options)?);
        }
        if n <= options.truncation {
            tables.push(data.table);
            whitneys.push(data.whitney);
        }
    }
    let label = if family.is_extended() { format!("{family} a={a}") } else { family.to_string() };
    if options.checks.contains(&CheckKind::Power) {
        reports.extend(check_power_identity(&label, &tables)?);
    }
    if options.checks.contains(&CheckKind::Stanley) {
        reports.extend(check_stanley(&label, &tables, &whitneys)?);
    }
    Ok(reports)
}

/// Instance checks on `count` seeded random specs with `2 ≤ n ≤ n_max`.
pub fn verify_random(
    session: &Session,
    count: usize,
    n_max: usize,
    seed: u64,
    options: &VerifyOptions,
) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    for (k, spec) in random_specs(count, seed, &RandomSpecParams::small(n_max)).into_iter().enumerate() {
        let label = format!("random seed={seed} #{} n={}", k + 1, spec.n());
        let data = session.analyze(label, build_deformed_braid(&spec))?;
        reports.extend(instance_checks(&data, options)?);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use arrcomb_core::identities::all_passed;

    #[test]
    fn check_lists() {
        assert_eq!(parse_checks("").unwrap().len(), CheckKind::ALL.len());
        let some = parse_checks("stirling, power").unwrap();
        assert_eq!(some.into_iter().collect::<Vec<_>>(), [CheckKind::Stirling, CheckKind::Power]);
        assert!(parse_checks("stirling,nope").is_err());
    }

    #[test]
    fn shi_stirling_report() {
        let options = VerifyOptions { checks: parse_checks("stirling").unwrap(), ..VerifyOptions::default() };
        let reports = verify_family(&Session::default(), Family::Shi, 3, 1, &options).unwrap();
        assert!(all_passed(&reports));
        let n2: Vec<String> =
            reports.iter().filter(|r| r.instance.contains("n=2")).map(|r| r.lhs.to_string()).collect();
        assert_eq!(n2, ["1", "2"]);
    }

    #[test]
    fn cached_analysis_matches_fresh() {
        let dir = tempfile::tempdir().unwrap();
        let cached = Session::new(Cache::at(dir.path()));
        let a = build_family(Family::Catalan, 3, 1).unwrap();
        let first = cached.analyze("c", a.clone()).unwrap();
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
        let second = cached.analyze("c", a.clone()).unwrap();
        let fresh = Session::default().analyze("c", a).unwrap();
        assert_eq!(first.faces, fresh.faces);
        assert_eq!(second.faces, fresh.faces);
        assert_eq!(second.table, fresh.table);
    }

    #[test]
    fn random_run_passes() {
        let reports = verify_random(&Session::default(), 3, 3, 11, &VerifyOptions::default()).unwrap();
        assert!(!reports.is_empty());
        assert!(all_passed(&reports));
    }
}
