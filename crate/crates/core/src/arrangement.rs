//! Arrangement constructors (generic, deformed braid, type-B deformations
//! and the classic exponential families) and derived arrangements.
//!
//! Coordinates are 0-based throughout: the hyperplane `x_i − x_j = a` of a
//! deformed braid arrangement is keyed by `(i, j)` with `i < j < n`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactgeom::{flat_from_hyperplanes, rational, rref, Flat, FlatChart, LinearConstraint, Rational};
use crate::{Error, Result};

/// An affine hyperplane `normal · x = offset` with a primitive integer
/// normal whose first nonzero coordinate is positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane(LinearConstraint);

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        let Some(first) = normal.iter().position(|v| !v.is_zero()) else {
            return Err(Error::ZeroNormal);
        };
        let lcm = normal.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = normal.iter().map(|v| (v * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let mut scale = Rational::new(lcm, gcd);
        if normal[first].is_negative() {
            scale = -scale;
        }
        let normal = normal.iter().map(|v| v * &scale).collect();
        Ok(Hyperplane(LinearConstraint::new(normal, offset * scale)))
    }

    pub fn normal(&self) -> &[Rational] {
        &self.0.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.0.offset
    }

    pub fn constraint(&self) -> &LinearConstraint {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.normal.len()
    }

    /// The parallel hyperplane through the origin.
    pub fn centralized(&self) -> Hyperplane {
        Hyperplane(LinearConstraint::new(self.0.normal.clone(), Rational::zero()))
    }

    fn difference(n: usize, i: usize, j: usize, offset: Rational) -> Hyperplane {
        let mut normal = vec![Rational::zero(); n];
        normal[i] = Rational::one();
        normal[j] = -Rational::one();
        Hyperplane(LinearConstraint::new(normal, offset))
    }

    fn sum(n: usize, i: usize, j: usize, offset: Rational) -> Hyperplane {
        let mut normal = vec![Rational::zero(); n];
        normal[i] = Rational::one();
        normal[j] = Rational::one();
        Hyperplane(LinearConstraint::new(normal, offset))
    }

    fn axis(n: usize, i: usize, offset: Rational) -> Hyperplane {
        let mut normal = vec![Rational::zero(); n];
        normal[i] = Rational::one();
        Hyperplane(LinearConstraint::new(normal, offset))
    }
}

// Messages number coordinates from 1.
fn check_offsets(what: &str, key: &str, list: &[Rational]) -> Result<()> {
    if list.is_empty() {
        return Err(Error::InvalidSpec(format!("{what} {key}: empty offset list")));
    }
    if list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSpec(format!("{what} {key}: offsets must be strictly increasing")));
    }
    Ok(())
}

fn check_pairs<V>(what: &str, n: usize, table: &BTreeMap<(usize, usize), V>) -> Result<()> {
    for &(i, j) in table.keys() {
        if !(i < j && j < n) {
            return Err(Error::InvalidSpec(format!("{what} pair ({}, {}) out of range", i + 1, j + 1)));
        }
    }
    if table.len() != n * n.saturating_sub(1) / 2 {
        return Err(Error::InvalidSpec(format!("{what}: every pair i < j must be present")));
    }
    Ok(())
}

/// Offsets `a_ij^(1) < … < a_ij^(m_ij)` of `x_i − x_j` for every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformedBraidSpec {
    n: usize,
    offsets: BTreeMap<(usize, usize), Vec<Rational>>,
}

impl DeformedBraidSpec {
    pub fn new(n: usize, offsets: BTreeMap<(usize, usize), Vec<Rational>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".to_string()));
        }
        check_pairs("offsets", n, &offsets)?;
        for (&(i, j), list) in &offsets {
            check_offsets("pair", &format!("({}, {})", i + 1, j + 1), list)?;
        }
        Ok(DeformedBraidSpec { n, offsets })
    }

    /// Same offset list on every pair.
    pub fn uniform(n: usize, offsets: Vec<Rational>) -> Result<Self> {
        let table = pairs(n).map(|p| (p, offsets.clone())).collect();
        DeformedBraidSpec::new(n, table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn offsets(&self) -> &BTreeMap<(usize, usize), Vec<Rational>> {
        &self.offsets
    }

    pub fn pair(&self, i: usize, j: usize) -> &[Rational] {
        &self.offsets[&(i, j)]
    }

    /// `max |a_ij^(k)|`, zero for `n = 1`.
    pub fn max_abs_offset(&self) -> Rational {
        self.offsets.values().flatten().map(|a| a.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn is_uniform(&self) -> bool {
        let mut lists = self.offsets.values();
        match lists.next() {
            Some(first) => lists.all(|l| l == first),
            None => true,
        }
    }

    /// Relabels the pairs inside the sorted subset `subset` onto `0..k`.
    pub fn induced(&self, subset: &[usize]) -> Result<DeformedBraidSpec> {
        if subset.is_empty() {
            return Err(Error::OutOfRange("empty subset".to_string()));
        }
        if subset.windows(2).any(|w| w[0] >= w[1]) || *subset.last().unwrap() >= self.n {
            return Err(Error::OutOfRange(format!("subset {subset:?} of 0..{}", self.n)));
        }
        let k = subset.len();
        let offsets = pairs(k).map(|(i, j)| ((i, j), self.offsets[&(subset[i], subset[j])].clone())).collect();
        Ok(DeformedBraidSpec { n: k, offsets })
    }
}

/// `induced_subarrangement` on a sorted 0-based subset.
pub fn induced_subarrangement(spec: &DeformedBraidSpec, subset: &[usize]) -> Result<DeformedBraidSpec> {
    spec.induced(subset)
}

/// Offsets of a non-degenerate deformation of the type-B Coxeter arrangement:
/// `x_i − x_j = a`, `x_i + x_j = b` for every pair and `x_i = c` for every
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeBSpec {
    n: usize,
    diff_offsets: BTreeMap<(usize, usize), Vec<Rational>>,
    sum_offsets: BTreeMap<(usize, usize), Vec<Rational>>,
    axis_offsets: BTreeMap<usize, Vec<Rational>>,
}

impl TypeBSpec {
    pub fn new(
        n: usize,
        diff_offsets: BTreeMap<(usize, usize), Vec<Rational>>,
        sum_offsets: BTreeMap<(usize, usize), Vec<Rational>>,
        axis_offsets: BTreeMap<usize, Vec<Rational>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".to_string()));
        }
        check_pairs("diff_offsets", n, &diff_offsets)?;
        check_pairs("sum_offsets", n, &sum_offsets)?;
        if axis_offsets.len() != n || axis_offsets.keys().any(|&i| i >= n) {
            return Err(Error::InvalidSpec("axis_offsets must cover every coordinate".to_string()));
        }
        for (&(i, j), list) in diff_offsets.iter().chain(&sum_offsets) {
            check_offsets("pair", &format!("({}, {})", i + 1, j + 1), list)?;
        }
        for (&i, list) in &axis_offsets {
            check_offsets("coordinate", &format!("{}", i + 1), list)?;
        }
        Ok(TypeBSpec { n, diff_offsets, sum_offsets, axis_offsets })
    }

    pub fn uniform(n: usize, diff: Vec<Rational>, sum: Vec<Rational>, axis: Vec<Rational>) -> Result<Self> {
        TypeBSpec::new(
            n,
            pairs(n).map(|p| (p, diff.clone())).collect(),
            pairs(n).map(|p| (p, sum.clone())).collect(),
            (0..n).map(|i| (i, axis.clone())).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diff_offsets(&self) -> &BTreeMap<(usize, usize), Vec<Rational>> {
        &self.diff_offsets
    }

    pub fn sum_offsets(&self) -> &BTreeMap<(usize, usize), Vec<Rational>> {
        &self.sum_offsets
    }

    pub fn axis_offsets(&self) -> &BTreeMap<usize, Vec<Rational>> {
        &self.axis_offsets
    }
}

/// Pairs `(i, j)` with `i < j < n` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrangementKind {
    Generic,
    DeformedBraid(DeformedBraidSpec),
    TypeB(TypeBSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
    kind: ArrangementKind,
    normal_span: Vec<Vec<Rational>>,
}

impl Arrangement {
    fn assemble(ambient_dim: usize, hyperplanes: Vec<Hyperplane>, kind: ArrangementKind) -> Self {
        let normals: Vec<Vec<Rational>> = hyperplanes.iter().map(|h| h.normal().to_vec()).collect();
        let normal_span = row_space_basis(&normals, ambient_dim);
        Arrangement { ambient_dim, hyperplanes, kind, normal_span }
    }

    /// Arrangement from an explicit list; duplicates (after canonicalization)
    /// are rejected.
    pub fn generic(ambient_dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        for (k, h) in hyperplanes.iter().enumerate() {
            if h.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: h.dim() });
            }
            if hyperplanes[..k].contains(h) {
                return Err(Error::InvalidSpec(format!("hyperplane {k} repeats an earlier one")));
            }
        }
        Ok(Arrangement::assemble(ambient_dim, hyperplanes, ArrangementKind::Generic))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn kind(&self) -> &ArrangementKind {
        &self.kind
    }

    pub fn deformed_braid_spec(&self) -> Option<&DeformedBraidSpec> {
        match &self.kind {
            ArrangementKind::DeformedBraid(spec) => Some(spec),
            _ => None,
        }
    }

    /// Basis of the span `W(A)` of all normals (reduced row-echelon rows).
    pub fn normal_span_basis(&self) -> &[Vec<Rational>] {
        &self.normal_span
    }

    pub fn constraints(&self) -> Vec<LinearConstraint> {
        self.hyperplanes.iter().map(|h| h.constraint().clone()).collect()
    }

    /// Indices of the hyperplanes containing `flat`.
    pub fn containing(&self, flat: &Flat) -> Vec<usize> {
        (0..self.hyperplanes.len()).filter(|&k| flat.lies_in(self.hyperplanes[k].constraint())).collect()
    }

    /// True iff `flat` is the intersection of the hyperplanes of `self` that
    /// contain it.
    pub fn has_flat(&self, flat: &Flat) -> bool {
        if flat.ambient_dim() != self.ambient_dim {
            return false;
        }
        let hs: Vec<LinearConstraint> =
            self.containing(flat).into_iter().map(|k| self.hyperplanes[k].constraint().clone()).collect();
        matches!(flat_from_hyperplanes(&hs, self.ambient_dim), Ok(Some(f)) if &f == flat)
    }

    /// Sub-arrangement on the given indices, order preserved.
    pub fn subarrangement(&self, indices: &[usize]) -> Arrangement {
        let hs = indices.iter().map(|&k| self.hyperplanes[k].clone()).collect();
        Arrangement::assemble(self.ambient_dim, hs, ArrangementKind::Generic)
    }
}

fn row_space_basis(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut work = rows.to_vec();
    let rank = rref(&mut work, n).len();
    work.truncate(rank);
    work
}

pub fn build_deformed_braid(spec: &DeformedBraidSpec) -> Arrangement {
    let n = spec.n;
    let hyperplanes = pairs(n)
        .flat_map(|(i, j)| spec.offsets[&(i, j)].iter().map(move |a| Hyperplane::difference(n, i, j, a.clone())))
        .collect();
    Arrangement::assemble(n, hyperplanes, ArrangementKind::DeformedBraid(spec.clone()))
}

pub fn build_type_b(spec: &TypeBSpec) -> Arrangement {
    let n = spec.n;
    let mut hyperplanes = Vec::new();
    for ((i, j), list) in &spec.diff_offsets {
        hyperplanes.extend(list.iter().map(|a| Hyperplane::difference(n, *i, *j, a.clone())));
    }
    for ((i, j), list) in &spec.sum_offsets {
        hyperplanes.extend(list.iter().map(|b| Hyperplane::sum(n, *i, *j, b.clone())));
    }
    for (i, list) in &spec.axis_offsets {
        hyperplanes.extend(list.iter().map(|c| Hyperplane::axis(n, *i, c.clone())));
    }
    Arrangement::assemble(n, hyperplanes, ArrangementKind::TypeB(spec.clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Braid,
    Shi,
    Catalan,
    Semiorder,
    Linial,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Braid, Family::Shi, Family::Catalan, Family::Semiorder, Family::Linial];

    pub fn name(self) -> &'static str {
        match self {
            Family::Braid => "braid",
            Family::Shi => "shi",
            Family::Catalan => "catalan",
            Family::Semiorder => "semiorder",
            Family::Linial => "linial",
        }
    }

    /// Offsets shared by every pair for extension parameter `a`.
    pub fn offsets(self, a: i64) -> Vec<Rational> {
        let range = |lo: i64, hi: i64| (lo..=hi).map(rational).collect::<Vec<_>>();
        match self {
            Family::Braid => range(0, 0),
            Family::Shi => range(-a + 1, a),
            Family::Catalan => range(-a, a),
            Family::Semiorder => (-a..=a).filter(|&k| k != 0).map(rational).collect(),
            Family::Linial => range(1, 1),
        }
    }

    /// Whether the extension parameter changes the arrangement.
    pub fn is_extended(self) -> bool {
        !matches!(self, Family::Braid | Family::Linial)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(String::from(s)))
    }
}

pub fn family_spec(family: Family, n: usize, a: i64) -> Result<DeformedBraidSpec> {
    if a < 1 {
        return Err(Error::OutOfRange(format!("extension parameter a = {a}")));
    }
    DeformedBraidSpec::uniform(n, family.offsets(a))
}

pub fn build_family(family: Family, n: usize, a: i64) -> Result<Arrangement> {
    Ok(build_deformed_braid(&family_spec(family, n, a)?))
}

/// `A/X` in intrinsic coordinates of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub arrangement: Arrangement,
    pub chart: FlatChart,
    /// For each restricted hyperplane, the indices of the hyperplanes of the
    /// parent arrangement that cut it out.
    pub sources: Vec<Vec<usize>>,
}

pub fn restrict_to_flat(a: &Arrangement, flat: &Flat) -> Result<Restriction> {
    if !a.has_flat(flat) {
        return Err(Error::NotAFlat);
    }
    let chart = flat.chart();
    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    let mut sources: Vec<Vec<usize>> = Vec::new();
    for (k, h) in a.hyperplanes.iter().enumerate() {
        let local = chart.pull_back(h.constraint());
        if local.is_degenerate() {
            // X ⊆ H or X ∩ H = ∅
            continue;
        }
        let local = Hyperplane::new(local.normal, local.offset)?;
        match hyperplanes.iter().position(|g| g == &local) {
            Some(pos) => sources[pos].push(k),
            None => {
                hyperplanes.push(local);
                sources.push(vec![k]);
            }
        }
    }
    let arrangement = Arrangement::assemble(chart.dim(), hyperplanes, ArrangementKind::Generic);
    Ok(Restriction { arrangement, chart, sources })
}

/// Offsets zeroed and duplicates merged, first occurrence order.
pub fn centralize(a: &Arrangement) -> Arrangement {
    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    for h in &a.hyperplanes {
        let c = h.centralized();
        if !hyperplanes.contains(&c) {
            hyperplanes.push(c);
        }
    }
    let zero = || vec![Rational::zero()];
    let kind = match &a.kind {
        ArrangementKind::Generic => ArrangementKind::Generic,
        ArrangementKind::DeformedBraid(spec) => ArrangementKind::DeformedBraid(DeformedBraidSpec {
            n: spec.n,
            offsets: spec.offsets.keys().map(|&p| (p, zero())).collect(),
        }),
        ArrangementKind::TypeB(spec) => ArrangementKind::TypeB(TypeBSpec {
            n: spec.n,
            diff_offsets: spec.diff_offsets.keys().map(|&p| (p, zero())).collect(),
            sum_offsets: spec.sum_offsets.keys().map(|&p| (p, zero())).collect(),
            axis_offsets: spec.axis_offsets.keys().map(|&i| (i, zero())).collect(),
        }),
    };
    Arrangement::assemble(a.ambient_dim, hyperplanes, kind)
}

/// `A_V`: the hyperplanes that contain `V` or miss it, order inherited.
pub fn localize(a: &Arrangement, v: &Flat) -> Result<Arrangement> {
    if !v.is_linear() || !centralize(a).has_flat(v) {
        return Err(Error::NotAFlat);
    }
    // for a linear V, both conditions say V ⊆ the centralized hyperplane
    let keep: Vec<usize> =
        (0..a.hyperplanes.len()).filter(|&k| v.lies_in(a.hyperplanes[k].centralized().constraint())).collect();
    Ok(a.subarrangement(&keep))
}
