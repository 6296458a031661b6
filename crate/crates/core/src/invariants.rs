//! Invariants of filters and topological monoids read off their principal
//! sites, plus the classification of actions of a single endomorphism.

use num_integer::lcm;

use crate::action::MSet;
use crate::category::{Arrow, FiniteCategory};
use crate::completion::complete;
use crate::congruence::{CongruenceFilter, RightCongruence};
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::topology::Topology;

/// Arrow `[m] : r1 → r2` is onto the classes of `r2`.
pub fn class_surjective(f: &CongruenceFilter, m: usize, r2: &RightCongruence) -> bool {
    let mut hit = vec![false; r2.num_classes()];
    for a in f.monoid.elements() {
        hit[r2.class_of(f.monoid.mul(m, a))] = true;
    }
    hit.into_iter().all(|h| h)
}

/// Arrow `[m] : r1 → r2` is injective on classes of `r1`.
pub fn class_injective(f: &CongruenceFilter, m: usize, r1: &RightCongruence, r2: &RightCongruence) -> bool {
    r2.inverse_image(&f.monoid, m) == *r1
}

/// The principal site of a filter with its concrete markings: epis and
/// strict epis are the class-surjective arrows, monos the class-injective ones.
pub fn principal_site(f: &CongruenceFilter) -> Result<FiniteCategory> {
    let (c, reps) = build_site(f)?;
    let mut epi = Vec::with_capacity(c.num_arrows());
    let mut mono = Vec::with_capacity(c.num_arrows());
    for (arrow, &m) in c.arrows.iter().zip(&reps) {
        let (r1, r2) = (&f.members[arrow.source], &f.members[arrow.target]);
        epi.push(class_surjective(f, m, r2));
        mono.push(class_injective(f, m, r1, r2));
    }
    c.with_marks(epi.clone(), epi, mono)
}

/// The principal site with markings computed categorically inside it.
pub fn principal_site_unmarked(f: &CongruenceFilter) -> Result<FiniteCategory> {
    Ok(build_site(f)?.0)
}

fn build_site(f: &CongruenceFilter) -> Result<(FiniteCategory, Vec<usize>)> {
    let m = &f.monoid;
    let mut arrows = Vec::new();
    let mut reps = Vec::new();
    let mut index = std::collections::HashMap::new();
    for (i, r1) in f.members.iter().enumerate() {
        for (j, r2) in f.members.iter().enumerate() {
            for k in f.hom_classes(r1, r2)? {
                index.insert((i, j, k), arrows.len());
                arrows.push(Arrow { source: i, target: j, label: format!("[{}]", m.name(k)) });
                reps.push(k);
            }
        }
    }
    let identities = f
        .members
        .iter()
        .enumerate()
        .map(|(i, r)| index[&(i, i, r.representatives()[r.class_of(m.identity())])])
        .collect();
    let objects = f.members.iter().map(|r| r.describe(m)).collect();
    let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
    let c = FiniteCategory::new(objects, arrows, identities, |a, b| {
        let (i, k) = (ends[a].0, ends[b].1);
        index[&(i, k, f.compose(reps[a], reps[b], &f.members[k]))]
    })?;
    Ok((c, reps))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicCheck {
    pub holds: bool,
    /// First `(r, m)` admitting no `m′` with `m m′` related to `1` under `r`.
    pub witness: Option<(RightCongruence, usize)>,
}

/// Every member `r` and element `m` admit `m′` with `(m m′, 1) ∈ r`.
/// Cross-checked against all arrows of the principal site being epi.
pub fn is_atomic(f: &CongruenceFilter) -> Result<AtomicCheck> {
    let m = &f.monoid;
    let witness = f.members.iter().find_map(|r| {
        m.elements().find(|&a| !m.elements().any(|b| r.same(m.mul(a, b), m.identity()))).map(|a| (r.clone(), a))
    });
    let holds = witness.is_none();
    let site = principal_site(f)?;
    if site.epi.iter().all(|&e| e) != holds {
        return Err(Error::InternalMismatch("atomicity disagrees with the epi test on arrows".into()));
    }
    Ok(AtomicCheck { holds, witness })
}

/// The units of the completion are dense in its topology.
pub fn dense_units_for_filter(f: &CongruenceFilter) -> Result<bool> {
    let c = complete(f)?;
    let units = crate::subset::Subset::from_indices(c.l.units());
    Ok(c.rho.minimal_base().iter().all(|b| !b.intersect(units).is_empty()))
}

/// Dense units in the completion over the open congruences of `tau`.
/// Cross-checked against the quantifier form of atomicity.
pub fn dense_units(m: &FiniteMonoid, tau: &Topology) -> Result<bool> {
    let f = CongruenceFilter::open_congruences(m, tau)?;
    let dense = dense_units_for_filter(&f)?;
    if dense != is_atomic(&f)?.holds {
        return Err(Error::InternalMismatch("dense units disagree with atomicity".into()));
    }
    Ok(dense)
}

/// Every quotient by a member has exactly one point fixed by all of `M`.
pub fn zero_fixed_point_check(f: &CongruenceFilter) -> Result<bool> {
    let m = &f.monoid;
    m.zero().ok_or(Error::NoZeroElement)?;
    Ok(f.members.iter().all(|r| {
        let reps = r.representatives();
        let fixed = reps.iter().filter(|&&x| m.elements().all(|g| r.same(m.mul(x, g), x))).count();
        fixed == 1
    }))
}

/// Tail length and cycle length of the forward orbit of `x` under `f`.
pub fn classify_monogenic(f: &[usize], x: usize) -> Result<(usize, usize)> {
    let n = f.len();
    if let Some(&bad) = f.iter().find(|&&v| v >= n) {
        return Err(Error::OutOfRange { index: bad, size: n });
    }
    if x >= n {
        return Err(Error::OutOfRange { index: x, size: n });
    }
    let mut seen = vec![usize::MAX; n];
    let (mut y, mut step) = (x, 0);
    while seen[y] == usize::MAX {
        seen[y] = step;
        y = f[y];
        step += 1;
    }
    Ok((seen[y], step - seen[y]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonogenicFlags {
    pub epi_exists: bool,
    pub mono_exists: bool,
}

/// Hom flags between `N_{a,b}` and `N_{a′,b′}` by arithmetic.
pub fn monogenic_homs(source: (usize, usize), target: (usize, usize)) -> MonogenicFlags {
    let ((a, b), (a2, b2)) = (source, target);
    MonogenicFlags { epi_exists: a2 <= a && b2 > 0 && b % b2 == 0, mono_exists: a <= a2 && b == b2 }
}

/// Joint cover of `N_{a,b}` and `N_{a′,b′}` by arithmetic.
pub fn monogenic_joint_cover(source: (usize, usize), target: (usize, usize)) -> (usize, usize) {
    (source.0.max(target.0), lcm(source.1, target.1))
}

/// Reduce `s` steps along a tail of length `a` into a cycle of length `b`.
fn reduce(s: usize, a: usize, b: usize) -> usize {
    if s < a + b {
        s
    } else {
        a + (s - a) % b
    }
}

/// The quotient of `(ℕ, +)` identifying `a + b` with `a`.
pub fn tail_cycle_monoid(a: usize, b: usize) -> FiniteMonoid {
    let n = a + b;
    let table = (0..n).map(|i| (0..n).map(|j| reduce(i + j, a, b)).collect()).collect();
    FiniteMonoid::from_table(table).expect("tail-cycle table is a monoid")
}

/// `N_{a,b}` as an action of the tail-cycle monoid `(big_a, big_b)`, which
/// must act through it.
pub fn orbit_mset(a: usize, b: usize, acting: &FiniteMonoid) -> Result<MSet> {
    let rows = (0..a + b).map(|x| acting.elements().map(|k| reduce(x + k, a, b)).collect()).collect();
    MSet::new(acting.clone(), (0..a + b).map(|x| x.to_string()).collect(), rows)
}

/// Hom flags by enumerating every equivariant map between explicit orbit
/// structures over a monoid acting through both.
pub fn monogenic_homs_brute(source: (usize, usize), target: (usize, usize)) -> Result<MonogenicFlags> {
    let acting = joint_acting_monoid(source, target);
    let s = orbit_mset(source.0, source.1, &acting)?;
    let t = orbit_mset(target.0, target.1, &acting)?;
    let homs = s.homs_to(&t);
    let surjective = |h: &Vec<usize>| {
        let mut hit = vec![false; t.size()];
        h.iter().for_each(|&v| hit[v] = true);
        hit.into_iter().all(|x| x)
    };
    let injective = |h: &Vec<usize>| {
        let mut seen = vec![false; t.size()];
        h.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    };
    Ok(MonogenicFlags { epi_exists: homs.iter().any(surjective), mono_exists: homs.iter().any(injective) })
}

/// Orbit of the pair of generators in the product, classified.
pub fn monogenic_joint_cover_brute(source: (usize, usize), target: (usize, usize)) -> Result<(usize, usize)> {
    let acting = joint_acting_monoid(source, target);
    let s = orbit_mset(source.0, source.1, &acting)?;
    let t = orbit_mset(target.0, target.1, &acting)?;
    let p = s.product(&t)?;
    let succ: Vec<usize> = (0..p.size()).map(|x| p.act(x, 1.min(acting.order() - 1))).collect();
    if acting.order() == 1 {
        return Ok((0, 1));
    }
    classify_monogenic(&succ, 0)
}

fn joint_acting_monoid(source: (usize, usize), target: (usize, usize)) -> FiniteMonoid {
    let (a, b) = (source.0.max(target.0), lcm(source.1, target.1));
    tail_cycle_monoid(a, b)
}
