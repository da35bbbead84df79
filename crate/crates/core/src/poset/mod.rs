//! Intersection posets, Möbius functions, characteristic and Whitney
//! polynomials.

mod polynomial;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use polynomial::BivariatePolynomial;

use crate::arrangement::{restrict_to_flat, Arrangement};
use crate::exactgeom::{Flat, Rational};

/// Flats of an arrangement ordered by reverse inclusion. Index 0 is the
/// ambient space; indices are sorted by codimension, then canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionPoset {
    ambient_dim: usize,
    flats: Vec<Flat>,
    containing: Vec<Vec<usize>>,
    masks: Vec<Vec<u64>>,
    mobius: Vec<BTreeMap<usize, BigInt>>,
}

fn mask_of(indices: &[usize], words: usize) -> Vec<u64> {
    let mut mask = vec![0u64; words];
    for &k in indices {
        mask[k / 64] |= 1 << (k % 64);
    }
    mask
}

fn is_submask(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

impl IntersectionPoset {
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> &Flat {
        &self.flats[i]
    }

    pub fn index_of(&self, flat: &Flat) -> Option<usize> {
        self.flats.iter().position(|f| f == flat)
    }

    /// Indices of the hyperplanes containing flat `i`.
    pub fn containing(&self, i: usize) -> &[usize] {
        &self.containing[i]
    }

    /// `X_i ≤ X_j`, i.e. `X_j ⊆ X_i`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        is_submask(&self.masks[i], &self.masks[j])
    }

    /// `μ(X_i, X_j)`, or `None` unless `X_i ≤ X_j`.
    pub fn mobius(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.mobius[i].get(&j)
    }

    /// All `(j, μ(X_i, X_j))` with `X_i ≤ X_j`.
    pub fn mobius_row(&self, i: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        self.mobius[i].iter().map(|(&j, m)| (j, m))
    }

    pub fn characteristic_polynomial(&self) -> BivariatePolynomial {
        let mut chi = BivariatePolynomial::zero();
        for (j, m) in self.mobius_row(0) {
            chi.add_term(0, self.flats[j].dim() as u32, Rational::from_integer(m.clone()));
        }
        chi
    }

    pub fn whitney_polynomial(&self) -> BivariatePolynomial {
        let n = self.ambient_dim;
        let mut w = BivariatePolynomial::zero();
        for i in 0..self.len() {
            let x_exp = (n - self.flats[i].dim()) as u32;
            for (j, m) in self.mobius_row(i) {
                w.add_term(x_exp, self.flats[j].dim() as u32, Rational::from_integer(m.clone()));
            }
        }
        w
    }
}

/// Closure of `{ambient}` under intersecting with hyperplanes, with the
/// Möbius function filled in by the defining recursion.
pub fn build_intersection_poset(a: &Arrangement) -> IntersectionPoset {
    let n = a.ambient_dim();
    let hyperplanes = a.constraints();
    let mut seen: BTreeMap<Flat, ()> = BTreeMap::new();
    let mut flats = vec![Flat::ambient(n)];
    seen.insert(Flat::ambient(n), ());
    let mut next = 0;
    while next < flats.len() {
        let x = flats[next].clone();
        next += 1;
        for h in &hyperplanes {
            if x.lies_in(h) || !x.meets(h) {
                continue;
            }
            let y = x.intersect(h).expect("meeting hyperplane gives a nonempty flat");
            if seen.insert(y.clone(), ()).is_none() {
                flats.push(y);
            }
        }
    }
    flats.sort_by(|p, q| p.codim().cmp(&q.codim()).then_with(|| p.cmp(q)));

    let words = hyperplanes.len().div_ceil(64).max(1);
    let containing: Vec<Vec<usize>> = flats.iter().map(|f| a.containing(f)).collect();
    let masks: Vec<Vec<u64>> = containing.iter().map(|c| mask_of(c, words)).collect();

    let count = flats.len();
    let mut mobius = Vec::with_capacity(count);
    for i in 0..count {
        let up: Vec<usize> = (i..count).filter(|&j| is_submask(&masks[i], &masks[j])).collect();
        let mut row: BTreeMap<usize, BigInt> = BTreeMap::new();
        row.insert(i, BigInt::one());
        for (pos, &y) in up.iter().enumerate().skip(1) {
            let sum = up[..pos]
                .iter()
                .filter(|&&z| is_submask(&masks[z], &masks[y]))
                .fold(BigInt::zero(), |acc, z| acc + &row[z]);
            row.insert(y, -sum);
        }
        mobius.push(row);
    }
    IntersectionPoset { ambient_dim: n, flats, containing, masks, mobius }
}

/// `χ(A, t) = Σ_Y μ(ambient, Y) t^{dim Y}`.
pub fn characteristic_polynomial(a: &Arrangement) -> BivariatePolynomial {
    build_intersection_poset(a).characteristic_polynomial()
}

/// `w(A, x, t) = Σ_{X ≤ Y} μ(X, Y) x^{n − dim X} t^{dim Y}`.
pub fn whitney_polynomial(a: &Arrangement) -> BivariatePolynomial {
    build_intersection_poset(a).whitney_polynomial()
}

/// `Σ_X x^{n − dim X} χ(A/X, t)`, computed from the restrictions.
pub fn whitney_by_restriction(a: &Arrangement) -> BivariatePolynomial {
    let poset = build_intersection_poset(a);
    let n = a.ambient_dim();
    let mut w = BivariatePolynomial::zero();
    for flat in poset.flats() {
        let restriction = restrict_to_flat(a, flat).expect("poset flats are flats of the arrangement");
        let chi = characteristic_polynomial(&restriction.arrangement);
        w += &(&BivariatePolynomial::monomial((n - flat.dim()) as u32, 0, Rational::one()) * &chi);
    }
    w
}
