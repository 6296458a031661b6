//! Finite monoids given by Cayley tables, and semigroup homomorphisms between them.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::MAX_CARRIER;

#[derive(PartialEq, Eq, Hash)]
struct Inner {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
}

/// A finite monoid on `{0, .., n-1}` with named elements.
///
/// Cloning is cheap; the table is shared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteMonoid(Arc<Inner>);

impl FiniteMonoid {
    /// Validates a Cayley table. `table[a][b]` is the product `ab`.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::BadShape("a monoid needs at least one element".into()));
        }
        if n > MAX_CARRIER {
            return Err(Error::CarrierTooLarge(n, MAX_CARRIER));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        if table.len() != n {
            return Err(Error::BadShape(format!("expected {n} rows, found {}", table.len())));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadShape(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::OutOfRange { index: bad, size: n });
            }
        }
        if identity >= n {
            return Err(Error::OutOfRange { index: identity, size: n });
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::NonAssociative(names[a].clone(), names[b].clone(), names[c].clone()));
                    }
                }
            }
        }
        if (0..n).any(|a| mul(identity, a) != a || mul(a, identity) != a) {
            return Err(Error::NoIdentity(names[identity].clone()));
        }
        Ok(FiniteMonoid(Arc::new(Inner { names, table: flat, identity })))
    }

    /// Builds a monoid from a table alone, naming elements by index and
    /// locating the identity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let names = (0..n).map(|i| i.to_string()).collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e].get(a) == Some(&a) && table.get(a).and_then(|r| r.get(e)) == Some(&a)))
            .ok_or_else(|| Error::NoIdentity("(none found)".into()))?;
        Self::new(names, table, identity)
    }

    /// Same table, new names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        Self::new(names, self.rows(), self.identity())
    }

    pub fn order(&self) -> usize {
        self.0.names.len()
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.order() + b]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.0.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|s| s == name)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.0.table.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_group(&self) -> bool {
        self.units().len() == self.order()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&e| self.mul(e, e) == e).collect()
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        e < self.order() && self.mul(e, e) == e
    }

    /// Elements with a two-sided inverse.
    pub fn units(&self) -> Vec<usize> {
        let one = self.identity();
        self.elements().filter(|&m| self.elements().any(|u| self.mul(m, u) == one && self.mul(u, m) == one)).collect()
    }

    /// The group of units as a monoid, together with its inclusion.
    pub fn units_group(&self) -> (FiniteMonoid, SemigroupHom) {
        self.restrict(&self.units(), self.identity()).expect("units are closed under multiplication")
    }

    pub fn zero(&self) -> Option<usize> {
        self.elements().find(|&z| self.elements().all(|m| self.mul(m, z) == z && self.mul(z, m) == z))
    }

    /// The corner `eMe` with identity `e`, and its inclusion into `self`.
    pub fn corner(&self, e: usize) -> Result<(FiniteMonoid, SemigroupHom)> {
        if e >= self.order() {
            return Err(Error::OutOfRange { index: e, size: self.order() });
        }
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent(self.name(e).to_string()));
        }
        let mut carrier: Vec<usize> = self.elements().map(|m| self.mul(self.mul(e, m), e)).collect();
        carrier.sort_unstable();
        carrier.dedup();
        self.restrict(&carrier, e)
    }

    /// The sub-semigroup on `members` (sorted), made a monoid with identity
    /// `unit`, together with its inclusion.
    pub fn restrict(&self, members: &[usize], unit: usize) -> Result<(FiniteMonoid, SemigroupHom)> {
        let pos = |x: usize| members.iter().position(|&m| m == x);
        let mut table = Vec::with_capacity(members.len());
        for &a in members {
            let mut row = Vec::with_capacity(members.len());
            for &b in members {
                let p = self.mul(a, b);
                row.push(
                    pos(p).ok_or_else(|| {
                        Error::BadShape(format!("{} is not closed under multiplication", self.name(p)))
                    })?,
                );
            }
            table.push(row);
        }
        let names = members.iter().map(|&m| self.name(m).to_string()).collect();
        let id = pos(unit).ok_or(Error::OutOfRange { index: unit, size: members.len() })?;
        let sub = FiniteMonoid::new(names, table, id)?;
        let incl = SemigroupHom::new(sub.clone(), self.clone(), members.to_vec())?;
        Ok((sub, incl))
    }

    /// The opposite monoid: `a * b` becomes `b * a`.
    pub fn opposite(&self) -> FiniteMonoid {
        let n = self.order();
        let table = (0..n).map(|a| (0..n).map(|b| self.mul(b, a)).collect()).collect();
        FiniteMonoid::new(self.names().to_vec(), table, self.identity())
            .expect("transposed table of a monoid is a monoid")
    }

    /// The one-element monoid.
    pub fn trivial() -> FiniteMonoid {
        FiniteMonoid::new(vec!["1".into()], vec![vec![0]], 0).unwrap()
    }

    /// Integers mod `n` under addition.
    pub fn cyclic(n: usize) -> FiniteMonoid {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteMonoid::new((0..n).map(|i| i.to_string()).collect(), table, 0).unwrap()
    }

    /// `{0, .., k}` under `min(p + q, k)`.
    pub fn truncated_addition(k: usize) -> FiniteMonoid {
        let table = (0..=k).map(|a| (0..=k).map(|b| (a + b).min(k)).collect()).collect();
        FiniteMonoid::new((0..=k).map(|i| i.to_string()).collect(), table, 0).unwrap()
    }

    /// An identity `1` together with left zeros named by `zeros`
    /// (`z * m = z` for every `m`).
    pub fn left_zeros(zeros: &[&str]) -> FiniteMonoid {
        let n = zeros.len() + 1;
        let table = (0..n).map(|a| (0..n).map(|b| if a == 0 { b } else { a }).collect()).collect();
        let mut names = vec!["1".to_string()];
        names.extend(zeros.iter().map(|s| s.to_string()));
        FiniteMonoid::new(names, table, 0).unwrap()
    }
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMonoid")
            .field("elements", &self.0.names)
            .field("identity", &self.name(self.identity()))
            .field("table", &self.rows())
            .finish()
    }
}

/// A multiplicative map between monoids that need not preserve the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemigroupHom {
    pub source: FiniteMonoid,
    pub target: FiniteMonoid,
    pub map: Vec<usize>,
    pub preserves_identity: bool,
}

impl SemigroupHom {
    pub fn new(source: FiniteMonoid, target: FiniteMonoid, map: Vec<usize>) -> Result<Self> {
        let n = source.order();
        if map.len() != n {
            return Err(Error::SizeMismatch { expected: n, found: map.len() });
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::OutOfRange { index: bad, size: target.order() });
        }
        for a in 0..n {
            for b in 0..n {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotMultiplicative(source.name(a).to_string(), source.name(b).to_string()));
                }
            }
        }
        let preserves_identity = map[source.identity()] == target.identity();
        Ok(SemigroupHom { source, target, map, preserves_identity })
    }

    pub fn identity(m: &FiniteMonoid) -> SemigroupHom {
        SemigroupHom::new(m.clone(), m.clone(), m.elements().collect()).unwrap()
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SemigroupHom) -> Result<SemigroupHom> {
        if self.target != next.source {
            return Err(Error::MismatchedHoms);
        }
        let map = self.map.iter().map(|&a| next.map[a]).collect();
        SemigroupHom::new(self.source.clone(), next.target.clone(), map)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.map.iter().all(|v| seen.insert(*v))
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Splits the map as a monoid homomorphism onto the corner at `φ(1)`
    /// followed by the corner's inclusion.
    pub fn factor_surjection_inclusion(&self) -> (SemigroupHom, SemigroupHom) {
        let e = self.map[self.source.identity()];
        let (corner, incl) = self.target.corner(e).expect("image of 1 is idempotent");
        let first = self.map.iter().map(|&v| incl.map.iter().position(|&c| c == v).expect("φ(m) = eφ(m)e")).collect();
        let first = SemigroupHom::new(self.source.clone(), corner, first).expect("corestriction of a homomorphism");
        (first, incl)
    }
}

/// Elements `α` with `αφ(1) = α = ψ(1)α` and `αφ(m) = ψ(m)α` for all `m`.
pub fn conjugations(phi: &SemigroupHom, psi: &SemigroupHom) -> Result<Vec<usize>> {
    if phi.source != psi.source || phi.target != psi.target {
        return Err(Error::MismatchedHoms);
    }
    let t = &phi.target;
    let one = phi.source.identity();
    Ok(t.elements()
        .filter(|&a| {
            t.mul(a, phi.apply(one)) == a
                && t.mul(psi.apply(one), a) == a
                && phi.source.elements().all(|m| t.mul(a, phi.apply(m)) == t.mul(psi.apply(m), a))
        })
        .collect())
}
