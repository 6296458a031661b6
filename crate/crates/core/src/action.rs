//! Finite right M-sets, their homomorphisms, and constructions on them.

use std::collections::HashMap;

use crate::congruence::{enumerate_congruences, RightCongruence};
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::subset::{all_subsets, Subset};
use crate::topology::{is_continuous, Topology};

/// Largest carrier whose powerset is materialised.
pub const MAX_POWERSET_BASE: usize = 16;

/// A right action of a finite monoid on a finite named carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MSet {
    monoid: FiniteMonoid,
    names: Vec<String>,
    act: Vec<usize>,
}

impl MSet {
    /// Validates an action table: `rows[x][m]` is `x·m`.
    pub fn new(monoid: FiniteMonoid, names: Vec<String>, rows: Vec<Vec<usize>>) -> Result<MSet> {
        let size = names.len();
        if rows.len() != size {
            return Err(Error::BadShape(format!("expected {size} action rows, found {}", rows.len())));
        }
        let n = monoid.order();
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadShape(format!("action row {x} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= size) {
                return Err(Error::OutOfRange { index: bad, size });
            }
        }
        let act: Vec<usize> = rows.into_iter().flatten().collect();
        let s = MSet { monoid, names, act };
        s.check_laws()?;
        Ok(s)
    }

    fn unchecked(monoid: FiniteMonoid, names: Vec<String>, act: Vec<usize>) -> MSet {
        let s = MSet { monoid, names, act };
        debug_assert!(s.check_laws().is_ok());
        s
    }

    fn check_laws(&self) -> Result<()> {
        let m = &self.monoid;
        for x in 0..self.size() {
            if self.act(x, m.identity()) != x {
                return Err(Error::InvalidAction(format!("{}·1 != {}", self.name(x), self.name(x))));
            }
            for a in m.elements() {
                for b in m.elements() {
                    if self.act(self.act(x, a), b) != self.act(x, m.mul(a, b)) {
                        return Err(Error::InvalidAction(format!(
                            "({}·{})·{} != {}·({}{})",
                            self.name(x),
                            m.name(a),
                            m.name(b),
                            self.name(x),
                            m.name(a),
                            m.name(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `M` acting on itself by right multiplication.
    pub fn regular(m: &FiniteMonoid) -> MSet {
        let act = m.elements().flat_map(|x| m.elements().map(move |k| m.mul(x, k))).collect();
        MSet::unchecked(m.clone(), m.names().to_vec(), act)
    }

    /// The one-point M-set.
    pub fn terminal(m: &FiniteMonoid) -> MSet {
        MSet::unchecked(m.clone(), vec!["*".into()], vec![0; m.order()])
    }

    /// `M/r` with `[a]·k = [ak]`; classes are named by least member.
    pub fn quotient(m: &FiniteMonoid, r: &RightCongruence) -> MSet {
        let reps = r.representatives();
        let names = reps.iter().map(|&a| format!("[{}]", m.name(a))).collect();
        let act = reps.iter().flat_map(|&a| m.elements().map(move |k| r.class_of(m.mul(a, k)))).collect();
        MSet::unchecked(m.clone(), names, act)
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    #[inline]
    pub fn act(&self, x: usize, m: usize) -> usize {
        self.act[x * self.monoid.order() + m]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.monoid.order()).map(|r| r.to_vec()).collect()
    }

    /// `{m : xm = xp}`.
    pub fn necessary_clopen(&self, x: usize, p: usize) -> Subset {
        let target = self.act(x, p);
        self.monoid.elements().filter(|&m| self.act(x, m) == target).collect()
    }

    /// `{(p, q) : xp = xq}`.
    pub fn orbit_congruence(&self, x: usize) -> RightCongruence {
        let labels: Vec<usize> = self.monoid.elements().map(|m| self.act(x, m)).collect();
        RightCongruence::kernel(&labels)
    }

    /// The orbit `{xm}` as a subset of the carrier.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.monoid.elements().map(|m| self.act(x, m)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// A pair `(x, p)` whose necessary clopen is not open, if any.
    pub fn continuity_witness(&self, tau: &Topology) -> Option<(usize, usize)> {
        (0..self.size())
            .find_map(|x| self.monoid.elements().find(|&p| !tau.is_open(self.necessary_clopen(x, p))).map(|p| (x, p)))
    }

    pub fn is_continuous(&self, tau: &Topology) -> bool {
        self.continuity_witness(tau).is_none()
    }

    /// The elements whose whole orbit has open necessary clopens.
    pub fn continuous_part(&self, tau: &Topology) -> Result<SubMSet> {
        let m = &self.monoid;
        if tau.carrier_size() != m.order() {
            return Err(Error::SizeMismatch { expected: m.order(), found: tau.carrier_size() });
        }
        let open_at = |x: usize| m.elements().all(|p| tau.is_open(self.necessary_clopen(x, p)));
        let general: Vec<usize> = (0..self.size()).filter(|&x| m.elements().all(|q| open_at(self.act(x, q)))).collect();
        let left_continuous = m.elements().all(|q| {
            let translate: Vec<usize> = m.elements().map(|k| m.mul(q, k)).collect();
            is_continuous(&translate, tau, tau).expect("translation is total")
        });
        if left_continuous {
            let simple: Vec<usize> = (0..self.size()).filter(|&x| open_at(x)).collect();
            if simple != general {
                return Err(Error::InternalMismatch(
                    "continuous part disagrees with its left-continuous simplification".into(),
                ));
            }
        }
        self.sub_mset(general)
    }

    /// The sub-M-set on `members`, which must be closed under the action.
    pub fn sub_mset(&self, mut members: Vec<usize>) -> Result<SubMSet> {
        members.sort_unstable();
        members.dedup();
        let mut pos = vec![usize::MAX; self.size()];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i;
        }
        let n = self.monoid.order();
        let mut act = Vec::with_capacity(members.len() * n);
        for &x in &members {
            for k in 0..n {
                let y = self.act(x, k);
                if pos[y] == usize::MAX {
                    return Err(Error::InvalidAction(format!(
                        "{}·{} leaves the subset",
                        self.name(x),
                        self.monoid.name(k)
                    )));
                }
                act.push(pos[y]);
            }
        }
        let names = members.iter().map(|&x| self.names[x].clone()).collect();
        Ok(SubMSet { mset: MSet::unchecked(self.monoid.clone(), names, act), members })
    }

    /// Carrier-wise product, pairs indexed `x * other.size() + y`.
    pub fn product(&self, other: &MSet) -> Result<MSet> {
        if self.monoid != other.monoid {
            return Err(Error::MismatchedHoms);
        }
        let n = self.monoid.order();
        let (a, b) = (self.size(), other.size());
        let mut names = Vec::with_capacity(a * b);
        let mut act = Vec::with_capacity(a * b * n);
        for x in 0..a {
            for y in 0..b {
                names.push(format!("({},{})", self.names[x], other.names[y]));
                for k in 0..n {
                    act.push(self.act(x, k) * b + other.act(y, k));
                }
            }
        }
        Ok(MSet::unchecked(self.monoid.clone(), names, act))
    }

    /// Every equivariant map `self → target`, in lexicographic order of value lists.
    pub fn homs_to(&self, target: &MSet) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if self.monoid != target.monoid {
            return out;
        }
        let mut assign = vec![usize::MAX; self.size()];
        self.extend_homs(target, &mut assign, 0, &mut out);
        out
    }

    fn extend_homs(&self, t: &MSet, assign: &mut Vec<usize>, from: usize, out: &mut Vec<Vec<usize>>) {
        let Some(x) = (from..self.size()).find(|&x| assign[x] == usize::MAX) else {
            out.push(assign.clone());
            return;
        };
        for y in 0..t.size() {
            let mut touched = Vec::new();
            let mut stack = vec![(x, y)];
            let mut ok = true;
            while let Some((a, b)) = stack.pop() {
                if assign[a] != usize::MAX {
                    if assign[a] != b {
                        ok = false;
                        break;
                    }
                    continue;
                }
                assign[a] = b;
                touched.push(a);
                for k in self.monoid.elements() {
                    stack.push((self.act(a, k), t.act(b, k)));
                }
            }
            if ok {
                self.extend_homs(t, assign, x + 1, out);
            }
            for a in touched {
                assign[a] = usize::MAX;
            }
        }
    }
}

/// A sub-M-set with its position in the parent carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubMSet {
    pub mset: MSet,
    /// Parent indices, increasing.
    pub members: Vec<usize>,
}

/// An equivariant map between M-sets over the same monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSetHom {
    pub source: MSet,
    pub target: MSet,
    pub map: Vec<usize>,
}

impl MSetHom {
    pub fn new(source: MSet, target: MSet, map: Vec<usize>) -> Result<MSetHom> {
        if source.monoid != target.monoid {
            return Err(Error::MismatchedHoms);
        }
        if map.len() != source.size() {
            return Err(Error::SizeMismatch { expected: source.size(), found: map.len() });
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::OutOfRange { index: bad, size: target.size() });
        }
        for x in 0..source.size() {
            for k in source.monoid.elements() {
                if map[source.act(x, k)] != target.act(map[x], k) {
                    return Err(Error::NotEquivariant(x, k));
                }
            }
        }
        Ok(MSetHom { source, target, map })
    }

    pub fn identity(x: &MSet) -> MSetHom {
        MSetHom { source: x.clone(), target: x.clone(), map: (0..x.size()).collect() }
    }

    pub fn then(&self, next: &MSetHom) -> Result<MSetHom> {
        if self.target != next.source {
            return Err(Error::MismatchedHoms);
        }
        let map = self.map.iter().map(|&x| next.map[x]).collect();
        MSetHom::new(self.source.clone(), next.target.clone(), map)
    }

    /// Surjection onto the image followed by the image's inclusion.
    pub fn epi_mono_factorize(&self) -> (MSetHom, MSetHom) {
        let image = self.target.sub_mset(self.map.clone()).expect("the image of an equivariant map is closed");
        let onto = self.map.iter().map(|y| image.members.binary_search(y).unwrap()).collect();
        let epi = MSetHom::new(self.source.clone(), image.mset.clone(), onto).unwrap();
        let mono = MSetHom::new(image.mset, self.target.clone(), image.members).unwrap();
        (epi, mono)
    }
}

/// Factors `[a] ↦ [ka] : M/r1 → M/r2` through `M/k^*(r2)`.
///
/// Returns `k^*(r2)` with the quotient map from `M/r1` and the inclusion into `M/r2`.
pub fn factor_quotient_map(
    m: &FiniteMonoid,
    r1: &RightCongruence,
    r2: &RightCongruence,
    k: usize,
) -> Result<(RightCongruence, MSetHom, MSetHom)> {
    let pulled = r2.inverse_image(m, k);
    if !r1.refines(&pulled) {
        return Err(Error::NotRightCongruence(format!(
            "[{}] does not define a map {} → {}",
            m.name(k),
            r1.describe(m),
            r2.describe(m)
        )));
    }
    let (x1, mid, x2) = (MSet::quotient(m, r1), MSet::quotient(m, &pulled), MSet::quotient(m, r2));
    let epi = r1.representatives().iter().map(|&a| pulled.class_of(a)).collect();
    let mono = pulled.representatives().iter().map(|&a| r2.class_of(m.mul(k, a))).collect();
    Ok((pulled, MSetHom::new(x1, mid.clone(), epi)?, MSetHom::new(mid, x2, mono)?))
}

/// A left action `m·x` of a monoid on a finite carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftMSet {
    monoid: FiniteMonoid,
    names: Vec<String>,
    act: Vec<usize>,
}

impl LeftMSet {
    /// Validates `rows[m][x] = m·x`.
    pub fn new(monoid: FiniteMonoid, names: Vec<String>, rows: Vec<Vec<usize>>) -> Result<LeftMSet> {
        let size = names.len();
        if rows.len() != monoid.order() || rows.iter().any(|r| r.len() != size) {
            return Err(Error::BadShape("left action table must be |M| × |X|".into()));
        }
        if let Some(&bad) = rows.iter().flatten().find(|&&v| v >= size) {
            return Err(Error::OutOfRange { index: bad, size });
        }
        let act: Vec<usize> = rows.into_iter().flatten().collect();
        let s = LeftMSet { monoid, names, act };
        let m = &s.monoid;
        for x in 0..size {
            if s.act(m.identity(), x) != x {
                return Err(Error::InvalidAction(format!("1·{} != {}", s.names[x], s.names[x])));
            }
            for a in m.elements() {
                for b in m.elements() {
                    if s.act(a, s.act(b, x)) != s.act(m.mul(a, b), x) {
                        return Err(Error::InvalidAction(format!(
                            "{}·({}·{}) != ({}{})·{}",
                            m.name(a),
                            m.name(b),
                            s.names[x],
                            m.name(a),
                            m.name(b),
                            s.names[x]
                        )));
                    }
                }
            }
        }
        Ok(s)
    }

    /// `M` acting on itself by left multiplication.
    pub fn regular(m: &FiniteMonoid) -> LeftMSet {
        let act = m.elements().flat_map(|g| m.elements().map(move |x| m.mul(g, x))).collect();
        LeftMSet { monoid: m.clone(), names: m.names().to_vec(), act }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.size() + x]
    }

    /// `g^*(a) = {x : g·x ∈ a}`.
    pub fn inverse_image(&self, g: usize, a: Subset) -> Subset {
        (0..self.size()).filter(|&x| a.contains(self.act(g, x))).collect()
    }

    /// The powerset with the inverse-image right action; subset `A` sits at index `A.0`.
    pub fn power(&self) -> Result<MSet> {
        let k = self.size();
        if k > MAX_POWERSET_BASE {
            return Err(Error::CarrierTooLarge(k, MAX_POWERSET_BASE));
        }
        let n = self.monoid.order();
        let mut act = Vec::with_capacity((1 << k) * n);
        let mut names = Vec::with_capacity(1 << k);
        for a in all_subsets(k) {
            names.push(subset_name(&self.names, a));
            for g in 0..n {
                act.push(self.inverse_image(g, a).0 as usize);
            }
        }
        Ok(MSet::unchecked(self.monoid.clone(), names, act))
    }
}

/// Renders a subset as `{a,b}`.
pub fn subset_name(names: &[String], a: Subset) -> String {
    let inner: Vec<&str> = a.iter().map(|i| names[i].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

/// `𝒫(M)` with `A·g = {m : gm ∈ A}`.
pub fn power_of_monoid(m: &FiniteMonoid) -> Result<MSet> {
    LeftMSet::regular(m).power()
}

/// `g^*(a) = {m : gm ∈ a}` for subsets of the monoid.
pub fn inverse_image(m: &FiniteMonoid, g: usize, a: Subset) -> Subset {
    m.elements().filter(|&k| a.contains(m.mul(g, k))).collect()
}

/// The right ideal generated by `a`: `{xm : x ∈ a, m ∈ M}`.
pub fn generated_right_ideal(m: &FiniteMonoid, a: Subset) -> Subset {
    a.iter().flat_map(|x| m.elements().map(move |k| m.mul(x, k))).collect()
}

pub fn is_right_ideal(m: &FiniteMonoid, a: Subset) -> bool {
    generated_right_ideal(m, a).is_subset_of(a)
}

/// The right ideals of `M` inside `𝒫(M)`, with the retraction sending a
/// subset to the right ideal it generates.
#[derive(Clone, Debug)]
pub struct SubobjectClassifier {
    pub ideals: SubMSet,
    /// Indexed by subset bitmask, valued in subset bitmasks.
    pub retraction: Vec<Subset>,
}

pub fn subobject_classifier(m: &FiniteMonoid) -> Result<SubobjectClassifier> {
    let power = power_of_monoid(m)?;
    let members = all_subsets(m.order()).filter(|&a| is_right_ideal(m, a)).map(|a| a.0 as usize).collect();
    let ideals = power.sub_mset(members)?;
    let retraction = all_subsets(m.order()).map(|a| generated_right_ideal(m, a)).collect();
    Ok(SubobjectClassifier { ideals, retraction })
}

/// The right congruences of `M` acted on by inverse image, `r·q = q^*(r)`.
pub fn congruence_mset(m: &FiniteMonoid, cap: usize) -> Result<(MSet, Vec<RightCongruence>)> {
    let all = enumerate_congruences(m, cap)?;
    let index: HashMap<&RightCongruence, usize> = all.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut act = Vec::with_capacity(all.len() * m.order());
    for r in &all {
        for q in m.elements() {
            act.push(index[&r.inverse_image(m, q)]);
        }
    }
    let names = all.iter().map(|r| r.describe(m)).collect();
    Ok((MSet::unchecked(m.clone(), names, act), all))
}

/// The continuous exponential `Y^X` for an action topology.
#[derive(Clone, Debug)]
pub struct Exponential {
    pub mset: MSet,
    /// For each element, its hom `M × X → Y`, indexed by `n * |X| + x`.
    pub homs: Vec<Vec<usize>>,
    pub base: MSet,
    pub value: MSet,
}

impl Exponential {
    /// `h(1, x)`.
    pub fn eval(&self, h: usize, x: usize) -> usize {
        let one = self.base.monoid.identity();
        self.homs[h][one * self.base.size() + x]
    }

    /// Locates the element whose hom is `h`. Homs are kept in lexicographic order.
    pub fn position(&self, h: &[usize]) -> Option<usize> {
        self.homs.binary_search_by(|g| g.as_slice().cmp(h)).ok()
    }
}

fn check_exponential_inputs(x: &MSet, y: &MSet, tau: &Topology) -> Result<()> {
    if x.monoid() != y.monoid() {
        return Err(Error::MismatchedHoms);
    }
    for s in [x, y] {
        if let Some((a, p)) = s.continuity_witness(tau) {
            return Err(Error::NotContinuousInput(a, p));
        }
    }
    Ok(())
}

/// Builds the exponential on a sorted list of homs `M × X → Y`.
fn exponential_on(x: &MSet, y: &MSet, homs: Vec<Vec<usize>>) -> Exponential {
    let m = x.monoid();
    let xs = x.size();
    let mut act = Vec::with_capacity(homs.len() * m.order());
    for h in &homs {
        for k in m.elements() {
            let moved: Vec<usize> = (0..h.len()).map(|i| h[m.mul(k, i / xs) * xs + i % xs]).collect();
            act.push(homs.binary_search(&moved).expect("homs are closed under the action"));
        }
    }
    let names = (0..homs.len()).map(|i| format!("h{i}")).collect();
    let mset = MSet::unchecked(m.clone(), names, act);
    Exponential { mset, homs, base: x.clone(), value: y.clone() }
}

/// The continuous exponential. A hom `M × X → Y` is continuous exactly when
/// it factors through `M/r0 × X` for the least open congruence `r0`, so only
/// those are enumerated.
pub fn exponential_mset(x: &MSet, y: &MSet, tau: &Topology) -> Result<Exponential> {
    check_exponential_inputs(x, y, tau)?;
    let m = x.monoid();
    let r0 = crate::congruence::CongruenceFilter::open_congruences(m, tau)?.least().clone();
    let source = MSet::quotient(m, &r0).product(x)?;
    let xs = x.size();
    let mut homs: Vec<Vec<usize>> = source
        .homs_to(y)
        .into_iter()
        .map(|g| (0..m.order() * xs).map(|i| g[r0.class_of(i / xs) * xs + i % xs]).collect())
        .collect();
    homs.sort_unstable();
    let e = exponential_on(x, y, homs);
    if let Some((h, p)) = e.mset.continuity_witness(tau) {
        return Err(Error::InternalMismatch(format!("exponential element h{h} is discontinuous at {p}")));
    }
    Ok(e)
}

/// The continuous part of the full presheaf exponential `Hom(M × X, Y)`.
/// Exponentially slower than [`exponential_mset`]; kept as a cross-check.
pub fn exponential_mset_full(x: &MSet, y: &MSet, tau: &Topology) -> Result<Exponential> {
    check_exponential_inputs(x, y, tau)?;
    let m = x.monoid();
    let source = MSet::regular(m).product(x)?;
    if source.size() > 64 {
        return Err(Error::CarrierTooLarge(source.size(), 64));
    }
    let full = exponential_on(x, y, source.homs_to(y));
    let part = full.mset.continuous_part(tau)?;
    let homs = part.members.iter().map(|&i| full.homs[i].clone()).collect();
    Ok(Exponential { mset: part.mset, homs, base: x.clone(), value: y.clone() })
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

    fn tau_a() -> Topology {
        Topology::from_partition(&[0, 1, 1])
    }

    fn s(xs: &[usize]) -> Subset {
        Subset::from_indices(xs.iter().copied())
    }

    #[test]
    fn rejects_bad_actions() {
        let c2 = FiniteMonoid::cyclic(2);
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(MSet::new(c2.clone(), names.clone(), vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(matches!(
            MSet::new(c2.clone(), names.clone(), vec![vec![1, 1], vec![1, 0]]),
            Err(Error::InvalidAction(_))
        ));
        assert!(matches!(MSet::new(c2, names, vec![vec![0, 1]]), Err(Error::BadShape(_))));
    }

    #[test]
    fn necessary_clopens() {
        let m = lz();
        let t = MSet::terminal(&m);
        assert_eq!(t.necessary_clopen(0, 1), Subset::full(3));
        let reg = MSet::regular(&m);
        for p in 0..3 {
            assert_eq!(reg.necessary_clopen(0, p), Subset::singleton(p));
            assert_eq!(reg.necessary_clopen(1, p), Subset::full(3));
        }
    }

    #[test]
    fn orbit_congruences() {
        let m = lz();
        assert_eq!(MSet::regular(&m).orbit_congruence(0), RightCongruence::diagonal(3));
        assert_eq!(MSet::terminal(&m).orbit_congruence(0), RightCongruence::total(3));
        assert_eq!(MSet::regular(&m).orbit_congruence(1), RightCongruence::total(3));
    }

    #[test]
    fn continuity_examples() {
        let m = lz();
        assert!(MSet::regular(&m).is_continuous(&Topology::discrete(3)));
        assert_eq!(MSet::regular(&m).continuity_witness(&tau_a()), Some((0, 1)));
        assert!(MSet::quotient(&m, &r1()).is_continuous(&tau_a()));
    }

    #[test]
    fn continuous_part_examples() {
        let m = lz();
        let reg = MSet::regular(&m);
        assert_eq!(reg.continuous_part(&Topology::discrete(3)).unwrap().members, vec![0, 1, 2]);
        assert_eq!(reg.continuous_part(&tau_a()).unwrap().members, vec![1, 2]);
        let q = MSet::quotient(&m, &r1());
        assert_eq!(q.continuous_part(&tau_a()).unwrap().members, vec![0, 1]);
    }

    #[test]
    fn powerset_examples() {
        let c2 = FiniteMonoid::cyclic(2);
        let p = power_of_monoid(&c2).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.act(s(&[0]).0 as usize, 1), s(&[1]).0 as usize);
        let m = lz();
        let p = power_of_monoid(&m).unwrap();
        for g in 0..3 {
            assert_eq!(p.act(0, g), 0);
            assert_eq!(p.act(7, g), 7);
        }
        assert_eq!(p.act(s(&[1]).0 as usize, 1), 7);
        assert_eq!(p.name(s(&[0, 2]).0 as usize), "{1,y}");
    }

    #[test]
    fn classifier_examples() {
        let c2 = FiniteMonoid::cyclic(2);
        assert_eq!(subobject_classifier(&c2).unwrap().ideals.members, vec![0, 3]);
        let m = lz();
        let expected: Vec<usize> = (0..8u64)
            .filter(|&a| {
                let a = Subset(a);
                a.iter().all(|x| (0..3).all(|k| a.contains(m.mul(x, k))))
            })
            .map(|a| a as usize)
            .collect();
        let omega = subobject_classifier(&m).unwrap();
        assert_eq!(omega.ideals.members, expected);
        for mm in [c2, m, FiniteMonoid::truncated_addition(2)] {
            let omega = subobject_classifier(&mm).unwrap();
            let one = Subset::singleton(mm.identity());
            assert_eq!(omega.retraction[one.0 as usize], Subset::full(mm.order()));
        }
    }

    #[test]
    fn quotient_examples() {
        let m = lz();
        let reg = MSet::regular(&m);
        let q = MSet::quotient(&m, &RightCongruence::diagonal(3));
        assert_eq!(q.rows(), reg.rows());
        assert_eq!(MSet::quotient(&m, &RightCongruence::total(3)).size(), 1);
        let q = MSet::quotient(&m, &r1());
        assert_eq!(q.names(), &["[1]".to_string(), "[x]".to_string()]);
        assert_eq!(q.rows(), vec![vec![0, 1, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn factorization_examples() {
        let m = lz();
        let q = MSet::quotient(&m, &r1());
        let (e, i) = MSetHom::identity(&q).epi_mono_factorize();
        assert_eq!(e.map, vec![0, 1]);
        assert_eq!(i.map, vec![0, 1]);
        let d = MSet::quotient(&m, &RightCongruence::diagonal(3));
        let t = MSet::quotient(&m, &RightCongruence::total(3));
        let h = MSetHom::new(d, t, vec![0, 0, 0]).unwrap();
        let (e, i) = h.epi_mono_factorize();
        assert_eq!(e.target.size(), 1);
        assert_eq!(i.map, vec![0]);
        let point = MSet::quotient(&m, &RightCongruence::total(3));
        let h = MSetHom::new(point, q, vec![1]).unwrap();
        let (e, i) = h.epi_mono_factorize();
        assert_eq!(i.map, vec![1]);
        assert_eq!(e.then(&i).unwrap(), h);
        let (pulled, e, i) = factor_quotient_map(&m, &RightCongruence::total(3), &r1(), 1).unwrap();
        assert_eq!(pulled, RightCongruence::total(3));
        assert_eq!(e.then(&i).unwrap(), h);
    }

    #[test]
    fn hom_enumeration_matches_brute_force() {
        let m = lz();
        let xs = [MSet::regular(&m), MSet::quotient(&m, &r1()), MSet::terminal(&m)];
        for a in &xs {
            for b in &xs {
                let mut brute = Vec::new();
                let total = b.size().pow(a.size() as u32);
                for code in 0..total {
                    let map: Vec<usize> = (0..a.size()).map(|i| code / b.size().pow(i as u32) % b.size()).collect();
                    if MSetHom::new(a.clone(), b.clone(), map.clone()).is_ok() {
                        brute.push(map);
                    }
                }
                brute.sort();
                assert_eq!(a.homs_to(b), brute);
            }
        }
    }

    #[test]
    fn exponential_examples() {
        let c2 = FiniteMonoid::cyclic(2);
        let reg = MSet::regular(&c2);
        let e = exponential_mset(&reg, &reg, &Topology::discrete(2)).unwrap();
        assert_eq!(e.mset.size(), 4);
        let m = lz();
        let one = MSet::terminal(&m);
        let q = MSet::quotient(&m, &r1());
        let e = exponential_mset(&one, &q, &tau_a()).unwrap();
        assert_eq!(e.mset.size(), q.size());
        assert!(matches!(exponential_mset(&MSet::regular(&m), &q, &tau_a()), Err(Error::NotContinuousInput(0, 1))));
    }

    #[test]
    fn exponential_agrees_with_full_route() {
        for m in crate::enumerate::monoids_up_to(3) {
            for act in Topology::enumerate_all(m.order()) {
                let objects: Vec<MSet> = enumerate_congruences(&m, 100)
                    .unwrap()
                    .iter()
                    .map(|r| MSet::quotient(&m, r))
                    .filter(|s| s.continuity_witness(&act).is_none())
                    .collect();
                for x in &objects {
                    for y in &objects {
                        let fast = exponential_mset(x, y, &act).unwrap();
                        let full = exponential_mset_full(x, y, &act).unwrap();
                        assert_eq!(fast.homs, full.homs);
                        assert_eq!(fast.mset.rows(), full.mset.rows());
                    }
                }
            }
        }
    }

    #[test]
    fn congruence_mset_is_an_action() {
        let m = lz();
        let (x, all) = congruence_mset(&m, 100).unwrap();
        assert_eq!(x.size(), all.len());
        assert!(MSet::new(m.clone(), x.names().to_vec(), x.rows()).is_ok());
    }
}
