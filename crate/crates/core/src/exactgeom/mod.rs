//! Exact rational linear algebra and polyhedral primitives.
//!
//! Flats are stored in reduced row-echelon form so that two descriptions of
//! the same affine subspace compare equal. Feasibility and cone computations
//! go through a small exact simplex.

mod linalg;
mod simplex;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

pub(crate) use linalg::{dot, nullspace_basis, rank, rref};
use simplex::{maximize, LpOutcome};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

pub(crate) fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `normal · x` against `offset`; read as `=`, `>` or `≥` by context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearConstraint {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl LinearConstraint {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        LinearConstraint { normal, offset }
    }

    /// `normal · x − offset`.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) - &self.offset
    }

    pub fn is_degenerate(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }

    fn augmented(&self) -> Vec<Rational> {
        let mut row = self.normal.clone();
        row.push(self.offset.clone());
        row
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.normal.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.normal.len() });
        }
        Ok(())
    }
}

/// A nonempty affine subspace in canonical reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flat {
    ambient_dim: usize,
    equations: Vec<LinearConstraint>,
}

/// Affine parametrization `x = point + Σ z_k basis[k]` of a flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatChart {
    pub point: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
}

impl FlatChart {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_ambient(&self, z: &[Rational]) -> Vec<Rational> {
        let mut x = self.point.clone();
        for (zk, dir) in z.iter().zip(&self.basis) {
            if zk.is_zero() {
                continue;
            }
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi += zk * di;
            }
        }
        x
    }

    /// Rewrites an ambient constraint in chart coordinates.
    pub fn pull_back(&self, c: &LinearConstraint) -> LinearConstraint {
        LinearConstraint {
            normal: self.basis.iter().map(|dir| dot(&c.normal, dir)).collect(),
            offset: &c.offset - dot(&c.normal, &self.point),
        }
    }
}

impl Flat {
    pub fn ambient(n: usize) -> Self {
        Flat { ambient_dim: n, equations: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn codim(&self) -> usize {
        self.equations.len()
    }

    pub fn equations(&self) -> &[LinearConstraint] {
        &self.equations
    }

    fn pivots(&self) -> Vec<usize> {
        self.equations
            .iter()
            .map(|e| e.normal.iter().position(|v| !v.is_zero()).unwrap())
            .collect()
    }

    pub fn chart(&self) -> FlatChart {
        let n = self.ambient_dim;
        let pivots = self.pivots();
        let rows: Vec<Vec<Rational>> = self.equations.iter().map(|e| e.normal.clone()).collect();
        let mut point = vec![Rational::zero(); n];
        for (e, &p) in self.equations.iter().zip(&pivots) {
            point[p] = e.offset.clone();
        }
        FlatChart { point, basis: linalg::free_directions(&rows, &pivots, n) }
    }

    /// Reduces `(normal | offset)` against the equations.
    fn reduce(&self, c: &LinearConstraint) -> Vec<Rational> {
        let mut v = c.augmented();
        for (e, p) in self.equations.iter().zip(self.pivots()) {
            if v[p].is_zero() {
                continue;
            }
            let k = v[p].clone();
            for (vi, ei) in v.iter_mut().zip(e.normal.iter().chain(core::iter::once(&e.offset))) {
                if !ei.is_zero() {
                    *vi -= &k * ei;
                }
            }
        }
        v
    }

    /// True iff this flat lies inside the hyperplane `c`.
    pub fn lies_in(&self, c: &LinearConstraint) -> bool {
        self.reduce(c).iter().all(Zero::is_zero)
    }

    /// True iff this flat meets the hyperplane `c`.
    pub fn meets(&self, c: &LinearConstraint) -> bool {
        let v = self.reduce(c);
        let n = self.ambient_dim;
        v[..n].iter().any(|x| !x.is_zero()) || v[n].is_zero()
    }

    pub fn intersect(&self, c: &LinearConstraint) -> Option<Flat> {
        let mut all = self.equations.clone();
        all.push(c.clone());
        canonical_flat(&all, self.ambient_dim)
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|e| e.eval(x).is_zero())
    }

    /// True iff `other ⊆ self`.
    pub fn contains_flat(&self, other: &Flat) -> bool {
        self.ambient_dim == other.ambient_dim && self.equations.iter().all(|e| other.lies_in(e))
    }

    /// True iff the flat passes through the origin.
    pub fn is_linear(&self) -> bool {
        self.equations.iter().all(|e| e.offset.is_zero())
    }
}

fn canonical_flat(equations: &[LinearConstraint], n: usize) -> Option<Flat> {
    let mut rows: Vec<Vec<Rational>> = equations.iter().map(LinearConstraint::augmented).collect();
    let pivots = linalg::rref(&mut rows, n);
    if rows[pivots.len()..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    rows.truncate(pivots.len());
    let equations = rows
        .into_iter()
        .map(|mut r| {
            let offset = r.pop().unwrap();
            LinearConstraint { normal: r, offset }
        })
        .collect();
    Some(Flat { ambient_dim: n, equations })
}

/// Intersection of the given hyperplanes, or `None` when it is empty.
pub fn flat_from_hyperplanes(hyperplanes: &[LinearConstraint], ambient_dim: usize) -> Result<Option<Flat>> {
    for h in hyperplanes {
        h.check_dim(ambient_dim)?;
        if h.is_degenerate() {
            return Err(Error::ZeroNormal);
        }
    }
    Ok(canonical_flat(hyperplanes, ambient_dim))
}

/// Equalities, strict inequalities (`normal·x > offset`) and weak
/// inequalities (`normal·x ≥ offset`) in a common ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedronDescr {
    ambient_dim: usize,
    equalities: Vec<LinearConstraint>,
    strict: Vec<LinearConstraint>,
    weak: Vec<LinearConstraint>,
}

impl PolyhedronDescr {
    pub fn new(
        ambient_dim: usize,
        equalities: Vec<LinearConstraint>,
        strict: Vec<LinearConstraint>,
        weak: Vec<LinearConstraint>,
    ) -> Result<Self> {
        for c in equalities.iter().chain(&strict).chain(&weak) {
            c.check_dim(ambient_dim)?;
            if c.is_degenerate() {
                return Err(Error::ZeroNormal);
            }
        }
        Ok(PolyhedronDescr { ambient_dim, equalities, strict, weak })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn equalities(&self) -> &[LinearConstraint] {
        &self.equalities
    }

    pub fn strict(&self) -> &[LinearConstraint] {
        &self.strict
    }

    pub fn weak(&self) -> &[LinearConstraint] {
        &self.weak
    }

    /// Same set with every strict inequality relaxed to a weak one.
    pub fn closure(&self) -> PolyhedronDescr {
        let mut weak = self.weak.clone();
        weak.extend(self.strict.iter().cloned());
        PolyhedronDescr {
            ambient_dim: self.ambient_dim,
            equalities: self.equalities.clone(),
            strict: Vec::new(),
            weak,
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equalities.iter().all(|c| c.eval(x).is_zero())
            && self.strict.iter().all(|c| c.eval(x).is_positive())
            && self.weak.iter().all(|c| !c.eval(x).is_negative())
    }
}

/// An exact point satisfying every constraint of `p`, strict ones strictly,
/// or `None` if there is none.
pub fn strict_interior_point(p: &PolyhedronDescr) -> Option<Vec<Rational>> {
    let flat = canonical_flat(&p.equalities, p.ambient_dim)?;
    let chart = flat.chart();
    let d = chart.dim();
    // tightest constraint per normal direction: larger offset, then strict
    let mut tightest: BTreeMap<Vec<Rational>, (Rational, bool)> = BTreeMap::new();
    for (c, is_strict) in p.strict.iter().map(|c| (c, true)).chain(p.weak.iter().map(|c| (c, false))) {
        let local = chart.pull_back(c);
        let Some(lead) = local.normal.iter().find(|v| !v.is_zero()).map(Signed::abs) else {
            // constant constraint 0 ≥ offset (or 0 > offset)
            let ok = if is_strict { local.offset.is_negative() } else { !local.offset.is_positive() };
            if !ok {
                return None;
            }
            continue;
        };
        let normal: Vec<Rational> = local.normal.iter().map(|v| v / &lead).collect();
        let bound = (local.offset / &lead, is_strict);
        match tightest.get_mut(&normal) {
            Some(current) if *current >= bound => {}
            Some(current) => *current = bound,
            None => {
                tightest.insert(normal, bound);
            }
        }
    }
    let mut strict = Vec::new();
    let mut weak = Vec::new();
    for (normal, (offset, is_strict)) in tightest {
        let row = LinearConstraint::new(normal, offset);
        if is_strict {
            strict.push(row);
        } else {
            weak.push(row);
        }
    }
    if d == 0 {
        return Some(chart.point);
    }
    let z = if strict.is_empty() {
        match maximize(d, &vec![Rational::zero(); d], &weak) {
            LpOutcome::Optimal { point, .. } => point,
            _ => return None,
        }
    } else {
        // maximize a common slack s ≤ 1 on the strict rows
        let mut rows = weak;
        for r in &mut rows {
            r.normal.push(Rational::zero());
        }
        for mut r in strict {
            r.normal.push(-Rational::one());
            rows.push(r);
        }
        let mut cap = vec![Rational::zero(); d + 1];
        cap[d] = -Rational::one();
        rows.push(LinearConstraint::new(cap, -Rational::one()));
        let mut objective = vec![Rational::zero(); d + 1];
        objective[d] = Rational::one();
        match maximize(d + 1, &objective, &rows) {
            LpOutcome::Optimal { mut point, value } if value.is_positive() => {
                point.truncate(d);
                point
            }
            _ => return None,
        }
    };
    Some(chart.to_ambient(&z))
}

/// Dimension of the linear span of `{v : eq·v = 0, ge·v ≥ 0}`.
pub(crate) fn cone_span_dim(n: usize, equalities: &[Vec<Rational>], inequalities: &[Vec<Rational>]) -> usize {
    // a pair g, −g of inequalities is an equality
    let directions: BTreeSet<Vec<Rational>> = inequalities.iter().filter_map(|g| direction(g)).collect();
    let mut equalities = equalities.to_vec();
    let mut remaining = Vec::new();
    for g in &directions {
        let opposite: Vec<Rational> = g.iter().map(|v| -v.clone()).collect();
        if directions.contains(&opposite) {
            equalities.push(g.clone());
        } else {
            remaining.push(g.clone());
        }
    }
    let basis = nullspace_basis(&equalities, n);
    let d = basis.len();
    let local: BTreeSet<Vec<Rational>> = remaining
        .iter()
        .filter_map(|g| direction(&basis.iter().map(|b| dot(g, b)).collect::<Vec<_>>()))
        .collect();
    let local: Vec<Vec<Rational>> = local.into_iter().collect();
    if local.is_empty() || d == 0 {
        return d;
    }
    // maximize Σ t_i with g_i·z ≥ t_i, 0 ≤ t_i ≤ 1: t_i = 1 exactly on the
    // inequalities that are not implicit equalities of the cone
    let m = local.len();
    let mut rows = Vec::with_capacity(3 * m);
    for (i, g) in local.iter().enumerate() {
        let mut normal = g.clone();
        normal.resize(d + m, Rational::zero());
        normal[d + i] = -Rational::one();
        rows.push(LinearConstraint::new(normal, Rational::zero()));
        let mut cap = vec![Rational::zero(); d + m];
        cap[d + i] = -Rational::one();
        rows.push(LinearConstraint::new(cap, -Rational::one()));
        let mut floor = vec![Rational::zero(); d + m];
        floor[d + i] = Rational::one();
        rows.push(LinearConstraint::new(floor, Rational::zero()));
    }
    let mut objective = vec![Rational::zero(); d];
    objective.resize(d + m, Rational::one());
    let LpOutcome::Optimal { point, .. } = maximize(d + m, &objective, &rows) else {
        unreachable!("cone program is feasible and bounded");
    };
    let implicit: Vec<Vec<Rational>> = local
        .into_iter()
        .zip(&point[d..])
        .filter(|(_, t)| !t.is_one())
        .map(|(g, _)| g)
        .collect();
    d - rank(&implicit, d)
}

/// `g` scaled so its first nonzero entry is ±1; `None` for the zero vector.
fn direction(g: &[Rational]) -> Option<Vec<Rational>> {
    let lead = g.iter().find(|v| !v.is_zero())?.abs();
    Some(g.iter().map(|v| v / &lead).collect())
}

/// Dimension of the span of the recession cone of a closed polyhedron.
pub fn recession_span_dim(p: &PolyhedronDescr) -> Result<usize> {
    if !p.strict.is_empty() {
        return Err(Error::StrictConstraintInClosure);
    }
    let eq: Vec<_> = p.equalities.iter().map(|c| c.normal.clone()).collect();
    let ge: Vec<_> = p.weak.iter().map(|c| c.normal.clone()).collect();
    Ok(cone_span_dim(p.ambient_dim, &eq, &ge))
}

/// True iff the closure of `p` meets every translate of `span(basis)` in a
/// bounded set, i.e. its recession cone meets the span only at the origin.
pub fn bounded_within(p: &PolyhedronDescr, basis: &[Vec<Rational>]) -> Result<bool> {
    let n = p.ambient_dim;
    for b in basis {
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
    }
    let mut eq: Vec<_> = p.equalities.iter().map(|c| c.normal.clone()).collect();
    eq.extend(nullspace_basis(basis, n));
    let ge: Vec<_> = p.strict.iter().chain(&p.weak).map(|c| c.normal.clone()).collect();
    Ok(cone_span_dim(n, &eq, &ge) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        rational(n)
    }

    fn c(normal: &[i64], offset: i64) -> LinearConstraint {
        LinearConstraint::new(normal.iter().map(|&v| q(v)).collect(), q(offset))
    }

    #[test]
    fn flats_from_hyperplanes() {
        let ambient = flat_from_hyperplanes(&[], 2).unwrap().unwrap();
        assert_eq!(ambient.dim(), 2);
        assert!(ambient.equations().is_empty());

        let parallel = [c(&[1, -1], 0), c(&[1, -1], 1)];
        assert_eq!(flat_from_hyperplanes(&parallel, 2).unwrap(), None);

        let line = flat_from_hyperplanes(&[c(&[1, -1, 0], 0), c(&[0, 1, -1], 0)], 3).unwrap().unwrap();
        assert_eq!(line.dim(), 1);
        assert!(line.contains_point(&[q(5), q(5), q(5)]));
        assert!(!line.contains_point(&[q(5), q(5), q(4)]));
        assert_eq!(line.chart().basis, vec![vec![q(1), q(1), q(1)]]);
    }

    #[test]
    fn wrong_length_is_rejected() {
        let err = flat_from_hyperplanes(&[c(&[1, -1, 0], 0)], 2).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn strip_witness() {
        let p = PolyhedronDescr::new(2, vec![], vec![c(&[1, -1], 0), c(&[-1, 1], -1)], vec![]).unwrap();
        let w = strict_interior_point(&p).unwrap();
        assert!(p.contains(&w));
    }

    #[test]
    fn contradictory_strict_pair() {
        let p = PolyhedronDescr::new(2, vec![], vec![c(&[1, -1], 1), c(&[-1, 1], 0)], vec![]).unwrap();
        assert_eq!(strict_interior_point(&p), None);
    }

    #[test]
    fn equality_then_slack() {
        let p = PolyhedronDescr::new(3, vec![c(&[1, -1, 0], 0)], vec![c(&[0, 1, -1], 0)], vec![]).unwrap();
        let w = strict_interior_point(&p).unwrap();
        assert_eq!(w[0], w[1]);
        assert!(w[1] > w[2]);
    }

    #[test]
    fn recession_examples() {
        let strip = PolyhedronDescr::new(2, vec![], vec![], vec![c(&[1, -1], 0), c(&[-1, 1], -1)]).unwrap();
        assert_eq!(recession_span_dim(&strip).unwrap(), 1);
        let half = PolyhedronDescr::new(2, vec![], vec![], vec![c(&[1, -1], 0)]).unwrap();
        assert_eq!(recession_span_dim(&half).unwrap(), 2);
        let point = PolyhedronDescr::new(1, vec![c(&[1], 0)], vec![], vec![]).unwrap();
        assert_eq!(recession_span_dim(&point).unwrap(), 0);

        // x1 − x2 ≤ 1, x1 − x3 ≥ 1, x2 − x3 ≤ 1: the cone is the line x1 = x2 = x3
        let cycle = PolyhedronDescr::new(3, vec![], vec![], vec![c(&[-1, 1, 0], -1), c(&[1, 0, -1], 1), c(&[0, -1, 1], -1)])
            .unwrap();
        assert_eq!(recession_span_dim(&cycle).unwrap(), 1);

        let open = PolyhedronDescr::new(2, vec![], vec![c(&[1, -1], 0)], vec![]).unwrap();
        assert_eq!(recession_span_dim(&open), Err(Error::StrictConstraintInClosure));
    }

    #[test]
    fn boundedness_within_subspace() {
        let w = vec![vec![q(1), q(-1)]];
        let strip = PolyhedronDescr::new(2, vec![], vec![], vec![c(&[1, -1], 0), c(&[-1, 1], -1)]).unwrap();
        assert!(bounded_within(&strip, &w).unwrap());
        let half = PolyhedronDescr::new(2, vec![], vec![], vec![c(&[1, -1], 0)]).unwrap();
        assert!(!bounded_within(&half, &w).unwrap());
        let square = PolyhedronDescr::new(
            2,
            vec![],
            vec![],
            vec![c(&[1, 0], 0), c(&[-1, 0], -1), c(&[0, 1], 0), c(&[0, -1], -1)],
        )
        .unwrap();
        assert!(bounded_within(&square, &w).unwrap());
        assert!(bounded_within(&square, &[vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap());
    }
}
