//! Right congruences, their lattice and inverse-image action, and
//! equivariant filters of congruences.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, SemigroupHom};
use crate::subset::Subset;
use crate::topology::{is_open_in_product, Topology};

/// Default bound on the size of an enumerated congruence lattice.
pub const DEFAULT_CONGRUENCE_CAP: usize = 100_000;

/// The enumeration cap, overridable through `TOPACT_MAX_CONGRUENCES`.
pub fn congruence_cap() -> usize {
    std::env::var("TOPACT_MAX_CONGRUENCES").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CONGRUENCE_CAP)
}

/// An equivalence relation on the elements of a monoid, stable under right
/// multiplication. Class ids are numbered by least member.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RightCongruence {
    class_of: Vec<usize>,
    classes: usize,
}

impl Ord for RightCongruence {
    /// Finest first, then by class map.
    fn cmp(&self, other: &Self) -> Ordering {
        (Reverse(self.classes), &self.class_of).cmp(&(Reverse(other.classes), &other.class_of))
    }
}

impl PartialOrd for RightCongruence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renumbers labels by first occurrence.
pub(crate) fn canonical_labels<T: PartialEq + Copy>(labels: &[T]) -> (Vec<usize>, usize) {
    let mut seen: Vec<T> = Vec::new();
    let class_of = labels
        .iter()
        .map(|l| match seen.iter().position(|s| s == l) {
            Some(i) => i,
            None => {
                seen.push(*l);
                seen.len() - 1
            }
        })
        .collect();
    (class_of, seen.len())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl RightCongruence {
    /// The kernel of a labelling; not checked for right stability.
    pub(crate) fn kernel<T: PartialEq + Copy>(labels: &[T]) -> RightCongruence {
        let (class_of, classes) = canonical_labels(labels);
        RightCongruence { class_of, classes }
    }

    /// Validates a partition given by class labels.
    pub fn from_labels(m: &FiniteMonoid, labels: &[usize]) -> Result<RightCongruence> {
        if labels.len() != m.order() {
            return Err(Error::SizeMismatch { expected: m.order(), found: labels.len() });
        }
        let r = RightCongruence::kernel(labels);
        for a in m.elements() {
            for b in m.elements().filter(|&b| r.same(a, b)) {
                for k in m.elements() {
                    if !r.same(m.mul(a, k), m.mul(b, k)) {
                        return Err(Error::NotRightCongruence(format!(
                            "{} ~ {} but {}{} and {}{} are separated",
                            m.name(a),
                            m.name(b),
                            m.name(a),
                            m.name(k),
                            m.name(b),
                            m.name(k)
                        )));
                    }
                }
            }
        }
        Ok(r)
    }

    /// Validates a partition given by its blocks.
    pub fn from_classes(m: &FiniteMonoid, blocks: &[Vec<usize>]) -> Result<RightCongruence> {
        let mut labels = vec![usize::MAX; m.order()];
        for (i, block) in blocks.iter().enumerate() {
            for &a in block {
                if a >= m.order() {
                    return Err(Error::OutOfRange { index: a, size: m.order() });
                }
                if labels[a] != usize::MAX {
                    return Err(Error::BadShape(format!("{} lies in two classes", m.name(a))));
                }
                labels[a] = i;
            }
        }
        if let Some(a) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::BadShape(format!("{} lies in no class", m.name(a))));
        }
        RightCongruence::from_labels(m, &labels)
    }

    pub fn diagonal(n: usize) -> RightCongruence {
        RightCongruence { class_of: (0..n).collect(), classes: n }
    }

    pub fn total(n: usize) -> RightCongruence {
        RightCongruence { class_of: vec![0; n], classes: n.min(1) }
    }

    /// The smallest right congruence containing `pairs`.
    pub fn generated(m: &FiniteMonoid, pairs: &[(usize, usize)]) -> RightCongruence {
        RightCongruence::diagonal(m.order()).extended(m, pairs)
    }

    /// The smallest right congruence containing `self` and `pairs`.
    fn extended(&self, m: &FiniteMonoid, pairs: &[(usize, usize)]) -> RightCongruence {
        let n = m.order();
        let mut uf = UnionFind::new(n);
        let mut queue: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
        let mut first = vec![usize::MAX; self.classes];
        for a in 0..n {
            let c = self.class_of[a];
            if first[c] == usize::MAX {
                first[c] = a;
            } else {
                uf.union(first[c], a);
            }
        }
        while let Some((a, b)) = queue.pop_front() {
            if uf.union(a, b) {
                for k in 0..n {
                    queue.push_back((m.mul(a, k), m.mul(b, k)));
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|a| uf.find(a)).collect();
        RightCongruence::kernel(&roots)
    }

    pub fn principal(m: &FiniteMonoid, a: usize, b: usize) -> RightCongruence {
        RightCongruence::generated(m, &[(a, b)])
    }

    pub fn order(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Blocks in class-id order, each listed increasingly.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes];
        for (a, &c) in self.class_of.iter().enumerate() {
            out[c].push(a);
        }
        out
    }

    /// The block containing `a` as a subset.
    pub fn block(&self, a: usize) -> Subset {
        (0..self.order()).filter(|&b| self.same(a, b)).collect()
    }

    /// The least member of each class, by class id.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes().iter().map(|c| c[0]).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.classes == self.order()
    }

    pub fn is_total(&self) -> bool {
        self.classes <= 1
    }

    /// `q^*(r) = {(m, n) : (qm, qn) ∈ r}`.
    pub fn inverse_image(&self, m: &FiniteMonoid, q: usize) -> RightCongruence {
        let labels: Vec<usize> = m.elements().map(|k| self.class_of[m.mul(q, k)]).collect();
        RightCongruence::kernel(&labels)
    }

    pub fn meet(&self, other: &RightCongruence) -> RightCongruence {
        let labels: Vec<(usize, usize)> = self.class_of.iter().copied().zip(other.class_of.iter().copied()).collect();
        RightCongruence::kernel(&labels)
    }

    pub fn join(&self, m: &FiniteMonoid, other: &RightCongruence) -> RightCongruence {
        let pairs: Vec<(usize, usize)> =
            other.classes().iter().flat_map(|c| c.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()).collect();
        self.extended(m, &pairs)
    }

    /// Inclusion of relations: `self ⊆ other`.
    pub fn refines(&self, other: &RightCongruence) -> bool {
        let mut image = vec![usize::MAX; self.classes];
        self.class_of.iter().zip(&other.class_of).all(|(&c, &d)| {
            if image[c] == usize::MAX {
                image[c] = d;
            }
            image[c] == d
        })
    }

    pub fn is_two_sided(&self, m: &FiniteMonoid) -> bool {
        m.elements().all(|q| self.refines(&self.inverse_image(m, q)))
    }

    /// The relation as rows `{b : (a, b) ∈ r}`.
    pub fn relation(&self) -> Vec<Subset> {
        (0..self.order()).map(|a| self.block(a)).collect()
    }

    /// Openness as a subset of the square of `tau`.
    pub fn is_open(&self, tau: &Topology) -> bool {
        is_open_in_product(tau, tau, &self.relation())
    }

    /// The quotient monoid by a two-sided congruence and its projection.
    pub fn quotient_monoid(&self, m: &FiniteMonoid) -> Result<(FiniteMonoid, SemigroupHom)> {
        if !self.is_two_sided(m) {
            return Err(Error::NotRightCongruence(format!("{} is not two-sided", self.describe(m))));
        }
        let reps = self.representatives();
        let table = reps.iter().map(|&a| reps.iter().map(|&b| self.class_of[m.mul(a, b)]).collect()).collect();
        let names = reps.iter().map(|&a| format!("[{}]", m.name(a))).collect();
        let q = FiniteMonoid::new(names, table, self.class_of[m.identity()])?;
        let proj = SemigroupHom::new(m.clone(), q.clone(), self.class_of.clone())?;
        Ok((q, proj))
    }

    /// Renders the blocks, e.g. `{1 | x y}`.
    pub fn describe(&self, m: &FiniteMonoid) -> String {
        let blocks: Vec<String> =
            self.classes().iter().map(|c| c.iter().map(|&a| m.name(a)).collect::<Vec<_>>().join(" ")).collect();
        format!("{{{}}}", blocks.join(" | "))
    }
}

/// Every right congruence of `m`, finest first, as joins of principal ones.
pub fn enumerate_congruences(m: &FiniteMonoid, cap: usize) -> Result<Vec<RightCongruence>> {
    let n = m.order();
    let mut principals: Vec<RightCongruence> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let p = RightCongruence::principal(m, a, b);
            if !principals.contains(&p) {
                principals.push(p);
            }
        }
    }
    let mut seen: HashSet<RightCongruence> = HashSet::new();
    let mut frontier = vec![RightCongruence::diagonal(n)];
    seen.insert(frontier[0].clone());
    while let Some(r) = frontier.pop() {
        for p in &principals {
            if p.refines(&r) {
                continue;
            }
            let j = r.join(m, p);
            if seen.insert(j.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded(seen.len() - 1));
                }
                frontier.push(j);
            }
        }
    }
    let mut out: Vec<RightCongruence> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// A non-empty, upward closed, downward directed set of right congruences
/// closed under inverse images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceFilter {
    pub monoid: FiniteMonoid,
    /// Sorted finest first.
    pub members: Vec<RightCongruence>,
    /// Minimal members.
    pub base: Vec<RightCongruence>,
}

impl CongruenceFilter {
    pub fn new(m: &FiniteMonoid, members: Vec<RightCongruence>) -> Result<CongruenceFilter> {
        let lattice = enumerate_congruences(m, congruence_cap())?;
        CongruenceFilter::check(m, members, &lattice)
    }

    /// Validates against a precomputed congruence lattice of `m`.
    pub fn check(
        m: &FiniteMonoid,
        members: Vec<RightCongruence>,
        lattice: &[RightCongruence],
    ) -> Result<CongruenceFilter> {
        let set: BTreeSet<RightCongruence> = members.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyFilter);
        }
        if let Some(r) = set.iter().find(|r| r.order() != m.order()) {
            return Err(Error::SizeMismatch { expected: m.order(), found: r.order() });
        }
        for r in &set {
            if let Some(s) = lattice.iter().find(|s| r.refines(s) && !set.contains(*s)) {
                return Err(Error::FilterNotUpwardClosed(r.describe(m), s.describe(m)));
            }
        }
        for r in &set {
            for s in &set {
                if !set.contains(&r.meet(s)) {
                    return Err(Error::FilterNotDirected(r.describe(m), s.describe(m)));
                }
            }
        }
        for r in &set {
            for q in m.elements() {
                if !set.contains(&r.inverse_image(m, q)) {
                    return Err(Error::FilterNotEquivariant(m.name(q).to_string(), r.describe(m)));
                }
            }
        }
        let members: Vec<RightCongruence> = set.into_iter().collect();
        let base = members.iter().filter(|r| !members.iter().any(|s| s != *r && s.refines(r))).cloned().collect();
        Ok(CongruenceFilter { monoid: m.clone(), members, base })
    }

    /// Every right congruence.
    pub fn all(m: &FiniteMonoid) -> Result<CongruenceFilter> {
        let lattice = enumerate_congruences(m, congruence_cap())?;
        CongruenceFilter::check(m, lattice.clone(), &lattice)
    }

    /// The smallest filter containing `gens`.
    pub fn generated(m: &FiniteMonoid, gens: &[RightCongruence]) -> Result<CongruenceFilter> {
        if gens.is_empty() {
            return Err(Error::EmptyFilter);
        }
        let lattice = enumerate_congruences(m, congruence_cap())?;
        let mut core: BTreeSet<RightCongruence> = gens.iter().cloned().collect();
        loop {
            let mut next = core.clone();
            for r in &core {
                for q in m.elements() {
                    next.insert(r.inverse_image(m, q));
                }
                for s in &core {
                    next.insert(r.meet(s));
                }
            }
            if next.len() == core.len() {
                break;
            }
            core = next;
        }
        let members = lattice.iter().filter(|s| core.iter().any(|r| r.refines(s))).cloned().collect();
        CongruenceFilter::check(m, members, &lattice)
    }

    /// Congruences whose quotient is continuous for `tau`: every `q^*(r)` is
    /// open in the square. For a topological monoid this is just `r` open.
    pub fn open_congruences(m: &FiniteMonoid, tau: &Topology) -> Result<CongruenceFilter> {
        if tau.carrier_size() != m.order() {
            return Err(Error::SizeMismatch { expected: m.order(), found: tau.carrier_size() });
        }
        let lattice = enumerate_congruences(m, congruence_cap())?;
        let members =
            lattice.iter().filter(|r| m.elements().all(|q| r.inverse_image(m, q).is_open(tau))).cloned().collect();
        CongruenceFilter::check(m, members, &lattice)
            .map_err(|e| Error::InternalMismatch(format!("open congruences do not form a filter: {e}")))
    }

    /// The finest member.
    pub fn least(&self) -> &RightCongruence {
        &self.members[0]
    }

    pub fn contains(&self, r: &RightCongruence) -> bool {
        self.members.binary_search(r).is_ok()
    }

    pub fn position(&self, r: &RightCongruence) -> Option<usize> {
        self.members.binary_search(r).ok()
    }

    /// Arrows `r1 → r2`: least representatives `m` of `r2`-classes with
    /// `r1 ⊆ m^*(r2)`.
    pub fn hom_classes(&self, r1: &RightCongruence, r2: &RightCongruence) -> Result<Vec<usize>> {
        for r in [r1, r2] {
            if !self.contains(r) {
                return Err(Error::NotInFilter(r.describe(&self.monoid)));
            }
        }
        Ok(r2.representatives().into_iter().filter(|&k| r1.refines(&r2.inverse_image(&self.monoid, k))).collect())
    }

    /// Composite of `[a] : r1 → r2` and `[b] : r2 → r3`, as a representative in `r3`.
    pub fn compose(&self, a: usize, b: usize, r3: &RightCongruence) -> usize {
        let c = r3.class_of(self.monoid.mul(b, a));
        r3.representatives()[c]
    }
}

/// Every equivariant filter on `m`, as the up-sets of its two-sided
/// congruences, each validated.
pub fn enumerate_filters(m: &FiniteMonoid) -> Result<Vec<CongruenceFilter>> {
    let lattice = enumerate_congruences(m, congruence_cap())?;
    lattice
        .iter()
        .filter(|r| r.is_two_sided(m))
        .map(|r| {
            let members = lattice.iter().filter(|s| r.refines(s)).cloned().collect();
            CongruenceFilter::check(m, members, &lattice)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lz() -> FiniteMonoid {
        FiniteMonoid::left_zeros(&["x", "y"])
    }

    fn r1() -> RightCongruence {
        RightCongruence::from_classes(&lz(), &[vec![0], vec![1, 2]]).unwrap()
    }

    /// Every partition of `{0, .., n-1}` as labels.
    fn partitions(n: usize) -> Vec<Vec<usize>> {
        fn go(i: usize, n: usize, cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if i == n {
                out.push(cur.clone());
                return;
            }
            for c in 0..=k {
                cur.push(c);
                go(i + 1, n, cur, k.max(c + 1), out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, &mut Vec::new(), 0, &mut out);
        out
    }

    fn brute_congruences(m: &FiniteMonoid) -> BTreeSet<RightCongruence> {
        partitions(m.order()).into_iter().filter_map(|p| RightCongruence::from_labels(m, &p).ok()).collect()
    }

    #[test]
    fn generation_examples() {
        let c4 = FiniteMonoid::cyclic(4);
        assert_eq!(RightCongruence::generated(&c4, &[]), RightCongruence::diagonal(4));
        let all: Vec<(usize, usize)> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
        assert_eq!(RightCongruence::generated(&c4, &all), RightCongruence::total(4));
        let r = RightCongruence::generated(&c4, &[(0, 2)]);
        assert_eq!(r.classes(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn enumeration_examples() {
        let c2 = FiniteMonoid::cyclic(2);
        assert_eq!(enumerate_congruences(&c2, 10).unwrap().len(), 2);
        assert_eq!(enumerate_congruences(&FiniteMonoid::cyclic(4), 10).unwrap().len(), 3);
        let all = enumerate_congruences(&lz(), 10).unwrap();
        assert!(all.contains(&r1()));
        assert!(all.contains(&RightCongruence::diagonal(3)));
        assert!(all.contains(&RightCongruence::total(3)));
        assert_eq!(all.iter().cloned().collect::<BTreeSet<_>>(), brute_congruences(&lz()));
        assert_eq!(enumerate_congruences(&FiniteMonoid::cyclic(6), 2), Err(Error::CapExceeded(2)));
    }

    #[test]
    fn enumeration_matches_partition_scan() {
        let monoids = [
            FiniteMonoid::cyclic(5),
            FiniteMonoid::truncated_addition(4),
            FiniteMonoid::left_zeros(&["a", "b", "c", "d"]),
            FiniteMonoid::cyclic(2),
        ];
        for m in &monoids {
            let listed: BTreeSet<_> = enumerate_congruences(m, 1000).unwrap().into_iter().collect();
            assert_eq!(listed, brute_congruences(m));
            for r in &listed {
                let mut join = RightCongruence::diagonal(m.order());
                for a in m.elements() {
                    for b in m.elements().filter(|&b| r.same(a, b)) {
                        join = join.join(m, &RightCongruence::principal(m, a, b));
                    }
                }
                assert_eq!(&join, r);
            }
        }
    }

    #[test]
    fn inverse_images() {
        let m = lz();
        let d = RightCongruence::diagonal(3);
        assert_eq!(r1().inverse_image(&m, 0), r1());
        assert_eq!(RightCongruence::total(3).inverse_image(&m, 1), RightCongruence::total(3));
        assert_eq!(d.inverse_image(&m, 1), RightCongruence::total(3));
    }

    #[test]
    fn lattice_operations() {
        let m = lz();
        let t = RightCongruence::total(3);
        let d = RightCongruence::diagonal(3);
        assert_eq!(r1().meet(&t), r1());
        assert_eq!(r1().join(&m, &d), r1());
        assert_eq!(r1().meet(&r1()), r1());
        let c4 = FiniteMonoid::cyclic(4);
        let mod2 = RightCongruence::principal(&c4, 0, 2);
        assert_eq!(mod2.meet(&RightCongruence::total(4)), mod2);
        assert_eq!(mod2.join(&c4, &RightCongruence::total(4)), RightCongruence::total(4));
        assert_eq!(mod2.join(&c4, &RightCongruence::diagonal(4)), mod2);
    }

    #[test]
    fn two_sidedness() {
        assert!(r1().is_two_sided(&lz()));
        let c4 = FiniteMonoid::cyclic(4);
        for r in enumerate_congruences(&c4, 10).unwrap() {
            assert!(r.is_two_sided(&c4));
        }
        let right_zeros = lz().opposite();
        let r = RightCongruence::from_classes(&right_zeros, &[vec![0, 1], vec![2]]).unwrap();
        assert!(!r.is_two_sided(&right_zeros));
    }

    #[test]
    fn open_congruence_examples() {
        let m = lz();
        let f = CongruenceFilter::open_congruences(&m, &Topology::discrete(3)).unwrap();
        assert_eq!(f.members.len(), enumerate_congruences(&m, 10).unwrap().len());
        let f = CongruenceFilter::open_congruences(&m, &Topology::indiscrete(3)).unwrap();
        assert_eq!(f.members, vec![RightCongruence::total(3)]);
        let tau_a = Topology::from_partition(&[0, 1, 1]);
        let f = CongruenceFilter::open_congruences(&m, &tau_a).unwrap();
        assert_eq!(f.members, vec![r1(), RightCongruence::total(3)]);
    }

    #[test]
    fn filter_validation() {
        let m = lz();
        let f = CongruenceFilter::new(&m, vec![RightCongruence::total(3)]).unwrap();
        assert_eq!(f.base, vec![RightCongruence::total(3)]);
        let f = CongruenceFilter::all(&m).unwrap();
        assert_eq!(f.base, vec![RightCongruence::diagonal(3)]);
        assert!(matches!(CongruenceFilter::new(&m, vec![r1()]), Err(Error::FilterNotUpwardClosed(..))));
        assert_eq!(CongruenceFilter::new(&m, vec![]), Err(Error::EmptyFilter));
    }

    #[test]
    fn filter_generation() {
        let m = lz();
        let all = CongruenceFilter::all(&m).unwrap();
        assert_eq!(CongruenceFilter::generated(&m, &[RightCongruence::diagonal(3)]).unwrap(), all);
        let top = CongruenceFilter::generated(&m, &[RightCongruence::total(3)]).unwrap();
        assert_eq!(top.members.len(), 1);
        let c4 = FiniteMonoid::cyclic(4);
        let mod2 = RightCongruence::principal(&c4, 0, 2);
        let f = CongruenceFilter::generated(&c4, std::slice::from_ref(&mod2)).unwrap();
        assert_eq!(f.members, vec![mod2, RightCongruence::total(4)]);
    }

    #[test]
    fn hom_class_examples() {
        let m = lz();
        let f = CongruenceFilter::new(&m, vec![r1(), RightCongruence::total(3)]).unwrap();
        assert_eq!(f.hom_classes(&r1(), &RightCongruence::total(3)).unwrap(), vec![0]);
        assert!(f.hom_classes(&r1(), &r1()).unwrap().contains(&0));
        let all = CongruenceFilter::all(&m).unwrap();
        let d = RightCongruence::diagonal(3);
        for r in &all.members {
            assert_eq!(all.hom_classes(&d, r).unwrap(), r.representatives());
        }
        assert!(matches!(f.hom_classes(&d, &r1()), Err(Error::NotInFilter(_))));
    }
}
