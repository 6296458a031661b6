//! Topologies on finite carriers.
//!
//! Every finite topology is determined by the smallest open neighbourhood of
//! each point, so that is what a [`Topology`] stores. The open sets are the
//! subsets containing the neighbourhood of each of their points.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_CARRIER};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Topology {
    n: usize,
    nbhd: Vec<Subset>,
}

impl Topology {
    /// The smallest topology containing every set of `base`.
    pub fn generate(n: usize, base: &[Subset]) -> Result<Topology> {
        check_size(n)?;
        if let Some(b) = base.iter().find(|b| b.exceeds(n)) {
            let index = b.iter().find(|&i| i >= n).unwrap();
            return Err(Error::OutOfRange { index, size: n });
        }
        let nbhd = (0..n)
            .map(|x| base.iter().filter(|b| b.contains(x)).fold(Subset::full(n), |acc, b| acc.intersect(*b)))
            .collect();
        Ok(Topology { n, nbhd })
    }

    /// Checks that `opens` is already a topology and wraps it.
    pub fn from_opens(n: usize, opens: &[Subset]) -> Result<Topology> {
        let t = Topology::generate(n, opens)?;
        let given: BTreeSet<Subset> = opens.iter().copied().collect();
        let closed: BTreeSet<Subset> = t.opens().into_iter().collect();
        if given != closed {
            return Err(Error::BadShape(
                "family is not closed under unions and intersections or misses the empty or full set".into(),
            ));
        }
        Ok(t)
    }

    /// Builds a topology from its minimal neighbourhoods, which must satisfy
    /// `x ∈ N(x)` and `y ∈ N(x) ⇒ N(y) ⊆ N(x)`.
    pub fn from_neighbourhoods(nbhd: Vec<Subset>) -> Result<Topology> {
        let n = nbhd.len();
        check_size(n)?;
        for (x, &u) in nbhd.iter().enumerate() {
            if !u.contains(x) || u.exceeds(n) || u.iter().any(|y| !nbhd[y].is_subset_of(u)) {
                return Err(Error::BadShape(format!("neighbourhood of {x} is not a minimal open")));
            }
        }
        Ok(Topology { n, nbhd })
    }

    pub fn discrete(n: usize) -> Topology {
        Topology { n, nbhd: (0..n).map(Subset::singleton).collect() }
    }

    pub fn indiscrete(n: usize) -> Topology {
        Topology { n, nbhd: vec![Subset::full(n); n] }
    }

    /// The topology whose opens are unions of blocks of a partition.
    pub fn from_partition(class_of: &[usize]) -> Topology {
        let n = class_of.len();
        let nbhd = (0..n).map(|x| (0..n).filter(|&y| class_of[y] == class_of[x]).collect()).collect();
        Topology { n, nbhd }
    }

    pub fn carrier_size(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    /// The smallest open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> Subset {
        self.nbhd[x]
    }

    pub fn neighbourhoods(&self) -> &[Subset] {
        &self.nbhd
    }

    pub fn is_open(&self, u: Subset) -> bool {
        !u.exceeds(self.n) && u.iter().all(|x| self.nbhd[x].is_subset_of(u))
    }

    pub fn is_closed(&self, c: Subset) -> bool {
        self.is_open(c.complement(self.n))
    }

    pub fn is_clopen(&self, u: Subset) -> bool {
        self.is_open(u) && self.is_closed(u)
    }

    /// Smallest open set containing `s`.
    pub fn interior_hull(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, x| acc.union(self.nbhd[x]))
    }

    /// Smallest closed set containing `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        (0..self.n).filter(|&x| !self.nbhd[x].intersect(s).is_empty()).collect()
    }

    /// All open sets, sorted by bitmask.
    pub fn opens(&self) -> Vec<Subset> {
        let mut seen = BTreeSet::from([Subset::EMPTY]);
        let mut frontier = vec![Subset::EMPTY];
        while let Some(u) = frontier.pop() {
            for &b in &self.nbhd {
                let v = u.union(b);
                if seen.insert(v) {
                    frontier.push(v);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The distinct minimal neighbourhoods: the unique smallest base.
    pub fn minimal_base(&self) -> Vec<Subset> {
        let set: BTreeSet<Subset> = self.nbhd.iter().copied().collect();
        set.into_iter().collect()
    }

    /// True when every open set of `self` is open in `finer`.
    pub fn is_coarser_than(&self, finer: &Topology) -> bool {
        self.n == finer.n && (0..self.n).all(|x| finer.nbhd[x].is_subset_of(self.nbhd[x]))
    }

    pub fn is_discrete(&self) -> bool {
        self.nbhd.iter().enumerate().all(|(x, u)| *u == Subset::singleton(x))
    }

    pub fn is_t0(&self) -> bool {
        let distinct: BTreeSet<Subset> = self.nbhd.iter().copied().collect();
        distinct.len() == self.n
    }

    /// The product topology on pairs `(a, b)` indexed as `a * other.n + b`.
    pub fn product(&self, other: &Topology) -> Result<Topology> {
        let n = self.n * other.n;
        if n > MAX_CARRIER {
            return Err(Error::CarrierTooLarge(n, MAX_CARRIER));
        }
        let mut nbhd = Vec::with_capacity(n);
        for a in 0..self.n {
            for b in 0..other.n {
                let mut u = Subset::EMPTY;
                for a2 in self.nbhd[a].iter() {
                    for b2 in other.nbhd[b].iter() {
                        u = u.with(a2 * other.n + b2);
                    }
                }
                nbhd.push(u);
            }
        }
        Ok(Topology { n, nbhd })
    }

    /// Restriction to `s`, with the points of `s` renumbered in increasing order.
    pub fn subspace(&self, s: Subset) -> Result<Topology> {
        if let Some(index) = s.iter().find(|&i| i >= self.n) {
            return Err(Error::OutOfRange { index, size: self.n });
        }
        let points: Vec<usize> = s.iter().collect();
        let renumber = |u: Subset| -> Subset {
            points.iter().enumerate().filter(|(_, &p)| u.contains(p)).map(|(i, _)| i).collect()
        };
        let nbhd = points.iter().map(|&p| renumber(self.nbhd[p].intersect(s))).collect();
        Ok(Topology { n: points.len(), nbhd })
    }

    /// Quotient topology along `class_of` onto `k` classes.
    pub fn quotient(&self, class_of: &[usize], k: usize) -> Topology {
        let lift = |v: Subset| -> Subset { (0..self.n).filter(|&x| v.contains(class_of[x])).collect() };
        let nbhd = (0..k)
            .map(|c| {
                let mut v = Subset::singleton(c);
                loop {
                    let next = self.interior_hull(lift(v)).iter().fold(v, |acc, x| acc.with(class_of[x]));
                    if next == v {
                        break v;
                    }
                    v = next;
                }
            })
            .collect();
        Topology { n: k, nbhd }
    }

    pub fn separation_report(&self) -> SeparationReport {
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<usize> = (x..self.n).filter(|&y| self.nbhd[y] == self.nbhd[x]).collect();
            for &y in &members {
                class_of[y] = id;
            }
            classes.push(members);
        }
        SeparationReport {
            above: self.nbhd.clone(),
            t0: classes.len() == self.n,
            clopen_base: self.nbhd.iter().all(|&u| self.is_closed(u)),
            discrete: self.is_discrete(),
            classes,
        }
    }

    /// Connected components, each listed in increasing order, sorted by least member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp: Vec<usize> = (0..self.n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            let mut y = x;
            while c[y] != r {
                let next = c[y];
                c[y] = r;
                y = next;
            }
            r
        }
        for x in 0..self.n {
            for y in self.nbhd[x].iter() {
                let (a, b) = (find(&mut comp, x), find(&mut comp, y));
                if a != b {
                    comp[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n];
        for x in 0..self.n {
            let r = find(&mut comp, x);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(x);
        }
        groups
    }

    /// Every topology on `n` points, one per preorder, in a fixed order.
    pub fn enumerate_all(n: usize) -> Vec<Topology> {
        assert!(n <= 5, "topology enumeration is limited to 5 points");
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
        let mut out = BTreeSet::new();
        for bits in 0u64..1 << pairs.len() {
            let mut up: Vec<Subset> = (0..n).map(Subset::singleton).collect();
            for (i, &(x, y)) in pairs.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    up[x] = up[x].with(y);
                }
            }
            let transitive = (0..n).all(|x| up[x].iter().all(|y| up[y].is_subset_of(up[x])));
            if transitive {
                out.insert(Topology { n, nbhd: up });
            }
        }
        out.into_iter().collect()
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_CARRIER {
        Err(Error::CarrierTooLarge(n, MAX_CARRIER))
    } else {
        Ok(())
    }
}

impl fmt::Debug for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Topology({}; base {:?})", self.n, self.minimal_base())
    }
}

/// Separation data of a finite space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    /// `above[x]` holds every `y` with `x ≤ y`, where `x ≤ y` means each open
    /// set containing `x` also contains `y`.
    pub above: Vec<Subset>,
    /// Classes of topologically indistinguishable points.
    pub classes: Vec<Vec<usize>>,
    pub t0: bool,
    pub clopen_base: bool,
    pub discrete: bool,
}

/// True when the preimage of every open set of `target` is open in `source`.
pub fn is_continuous(f: &[usize], source: &Topology, target: &Topology) -> Result<bool> {
    Ok(continuity_witness(f, source, target)?.is_none())
}

/// An open set of `target` whose preimage is not open, if there is one.
pub fn continuity_witness(f: &[usize], source: &Topology, target: &Topology) -> Result<Option<Subset>> {
    if f.len() != source.carrier_size() {
        return Err(Error::SizeMismatch { expected: source.carrier_size(), found: f.len() });
    }
    if let Some(&bad) = f.iter().find(|&&v| v >= target.carrier_size()) {
        return Err(Error::OutOfRange { index: bad, size: target.carrier_size() });
    }
    Ok((0..f.len()).find_map(|x| {
        let v = target.neighbourhood(f[x]);
        let image_ok = source.neighbourhood(x).iter().all(|y| v.contains(f[y]));
        (!image_ok).then_some(v)
    }))
}

/// Whether a relation between the carriers of `left` and `right`, given as
/// rows `rel[a] = {b : (a, b) ∈ R}`, is open in the product topology.
pub fn is_open_in_product(left: &Topology, right: &Topology, rel: &[Subset]) -> bool {
    (0..left.carrier_size()).all(|a| {
        rel[a].iter().all(|b| {
            let nb = right.neighbourhood(b);
            left.neighbourhood(a).iter().all(|a2| nb.is_subset_of(rel[a2]))
        })
    })
}
