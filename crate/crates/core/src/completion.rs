//! The completion of a monoid along a filter of congruences, and the
//! factorizations of homomorphisms it supports.

use crate::congruence::{CongruenceFilter, RightCongruence};
use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, SemigroupHom};
use crate::reflection::continuous_subsets;
use crate::subset::Subset;
use crate::topology::{continuity_witness, is_continuous, Topology};

/// The limit of the quotients `M/r` over a filter, as a topological monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub filter: CongruenceFilter,
    pub l: FiniteMonoid,
    pub rho: Topology,
    pub u: SemigroupHom,
    /// `tuple_view[α][i]` is the class of `α` at `filter.members[i]`.
    pub tuple_view: Vec<Vec<usize>>,
}

impl Completion {
    pub fn least(&self) -> &RightCongruence {
        self.filter.least()
    }
}

/// Compatible families of classes, one class per member, in lexicographic order.
fn compatible_tuples(members: &[RightCongruence]) -> Vec<Vec<usize>> {
    let k = members.len();
    // descend[i][j]: the map from classes of i to classes of j when i ⊆ j
    let descend: Vec<Vec<Option<Vec<usize>>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    members[i]
                        .refines(&members[j])
                        .then(|| members[i].representatives().iter().map(|&a| members[j].class_of(a)).collect())
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(
        j: usize,
        members: &[RightCongruence],
        descend: &[Vec<Option<Vec<usize>>>],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if j == members.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..members[j].num_classes() {
            let ok = (0..j).all(|i| {
                descend[i][j].as_ref().is_none_or(|d| d[cur[i]] == c)
                    && descend[j][i].as_ref().is_none_or(|d| d[c] == cur[i])
            });
            if ok {
                cur.push(c);
                go(j + 1, members, descend, cur, out);
                cur.pop();
            }
        }
    }
    go(0, members, &descend, &mut cur, &mut out);
    out
}

pub fn complete(f: &CongruenceFilter) -> Result<Completion> {
    let m = &f.monoid;
    let members = &f.members;
    let r0 = f.least();
    if f.base.len() != 1 || &f.base[0] != r0 {
        return Err(Error::InvalidFilter("filter has no least member".into()));
    }
    let reps: Vec<Vec<usize>> = members.iter().map(|r| r.representatives()).collect();

    let mut tuples = compatible_tuples(members);
    tuples.sort_by_key(|t| t[0]);
    let position = |t: &[usize]| tuples.iter().position(|s| s.as_slice() == t);

    let tuple_product = |a: &[usize], b: &[usize]| -> Result<Vec<usize>> {
        members
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let x = reps[i][a[i]];
                let s = r.inverse_image(m, x);
                let j = f
                    .position(&s)
                    .ok_or_else(|| Error::InternalMismatch(format!("{} left the filter", s.describe(m))))?;
                Ok(r.class_of(m.mul(x, reps[j][b[j]])))
            })
            .collect()
    };

    let least_product = |a: usize, b: usize| -> usize {
        let (x, y) = (reps[0][a], reps[0][b]);
        let s = r0.inverse_image(m, x);
        let y2 = s.representatives()[s.class_of(y)];
        r0.class_of(m.mul(x, y2))
    };

    let k = r0.num_classes();
    if tuples.len() != k || tuples.iter().enumerate().any(|(i, t)| t[0] != i) {
        return Err(Error::InternalMismatch("tuple limit does not project bijectively onto the least member".into()));
    }
    let mut table = vec![vec![0; k]; k];
    for a in 0..k {
        for b in 0..k {
            let t = tuple_product(&tuples[a], &tuples[b])?;
            let via_tuples = position(&t)
                .ok_or_else(|| Error::InternalMismatch("product of compatible tuples is not compatible".into()))?;
            let via_least = least_product(a, b);
            if via_tuples != via_least {
                return Err(Error::InternalMismatch(format!(
                    "products disagree at ({}, {})",
                    m.name(reps[0][a]),
                    m.name(reps[0][b])
                )));
            }
            table[a][b] = via_least;
        }
    }
    let names = reps[0].iter().map(|&a| format!("[{}]", m.name(a))).collect();
    let l = FiniteMonoid::new(names, table, r0.class_of(m.identity()))
        .map_err(|e| Error::InternalMismatch(format!("completion is not a monoid: {e}")))?;

    let basic = |i: usize| -> Vec<Subset> {
        (0..members[i].num_classes()).map(|c| (0..k).filter(|&a| tuples[a][i] == c).collect()).collect()
    };
    let all_basic: Vec<Subset> = (0..members.len()).flat_map(basic).collect();
    let rho = Topology::generate(k, &all_basic)?;
    if rho != Topology::generate(k, &basic(0))? {
        return Err(Error::InternalMismatch("least member does not generate the limit topology".into()));
    }

    let u_map: Vec<usize> = m.elements().map(|a| r0.class_of(a)).collect();
    for a in m.elements() {
        let t: Vec<usize> = members.iter().map(|r| r.class_of(a)).collect();
        if tuples[u_map[a]] != t {
            return Err(Error::InternalMismatch("u disagrees with the tuple view".into()));
        }
    }
    let u = SemigroupHom::new(m.clone(), l.clone(), u_map)
        .map_err(|e| Error::InternalMismatch(format!("u is not multiplicative: {e}")))?;
    if !u.preserves_identity {
        return Err(Error::InternalMismatch("u does not preserve the identity".into()));
    }
    Ok(Completion { filter: f.clone(), l, rho, u, tuple_view: tuples })
}

/// Whether the comparison map to the completion along the open congruences
/// is an isomorphism of topological monoids.
pub fn is_complete(m: &FiniteMonoid, tau: &Topology) -> Result<bool> {
    let c = complete(&CongruenceFilter::open_congruences(m, tau)?)?;
    if !(c.u.is_injective() && c.u.is_surjective()) {
        return Ok(false);
    }
    let mut inverse = vec![0; m.order()];
    for a in m.elements() {
        inverse[c.u.apply(a)] = a;
    }
    Ok(is_continuous(&c.u.map, tau, &c.rho)? && is_continuous(&inverse, &c.rho, tau)?)
}

/// Flags from the discreteness criteria for completions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProdiscreteFlags {
    pub discrete: bool,
    /// The finite base witnessing discreteness.
    pub base: Vec<RightCongruence>,
    pub prodiscrete: bool,
    pub group: bool,
}

pub fn prodiscrete_criteria(f: &CongruenceFilter) -> Result<ProdiscreteFlags> {
    let c = complete(f)?;
    let m = &f.monoid;
    let prodiscrete = f.base.iter().all(|r| r.is_two_sided(m))
        || f.members.iter().any(|r| r.is_two_sided(m) && f.base.iter().all(|b| r.refines(b)));
    Ok(ProdiscreteFlags { discrete: c.rho.is_discrete(), base: f.base.clone(), prodiscrete, group: c.l.is_group() })
}

/// `{(a, b) : (φa, φb) ∈ r'}`.
pub fn pullback_congruence(phi: &SemigroupHom, r: &RightCongruence) -> Result<RightCongruence> {
    if r.order() != phi.target.order() {
        return Err(Error::SizeMismatch { expected: phi.target.order(), found: r.order() });
    }
    let labels: Vec<usize> = phi.map.iter().map(|&v| r.class_of(v)).collect();
    RightCongruence::from_labels(&phi.source, &labels)
        .map_err(|e| Error::InternalMismatch(format!("pullback is not a right congruence: {e}")))
}

/// The extension of a monoid homomorphism to the completions.
#[derive(Clone, Debug)]
pub struct ExtendedHom {
    pub source: Completion,
    pub target: Completion,
    pub psi: SemigroupHom,
}

pub fn extend_hom(phi: &SemigroupHom, source: &CongruenceFilter, target: &CongruenceFilter) -> Result<ExtendedHom> {
    if !phi.preserves_identity {
        return Err(Error::NotMonoidHom);
    }
    if source.monoid != phi.source || target.monoid != phi.target {
        return Err(Error::MismatchedHoms);
    }
    let mut pulled = Vec::with_capacity(target.members.len());
    for r in &target.members {
        let t = pullback_congruence(phi, r)?;
        let i = source.position(&t).ok_or_else(|| Error::PullbackOutsideFilter(r.describe(&phi.target)))?;
        pulled.push(i);
    }
    let cs = complete(source)?;
    let ct = complete(target)?;
    let src_reps: Vec<Vec<usize>> = source.members.iter().map(|r| r.representatives()).collect();
    let mut map = Vec::with_capacity(cs.l.order());
    for alpha in &cs.tuple_view {
        let image: Vec<usize> =
            target.members.iter().zip(&pulled).map(|(r, &i)| r.class_of(phi.apply(src_reps[i][alpha[i]]))).collect();
        let at = ct
            .tuple_view
            .iter()
            .position(|t| *t == image)
            .ok_or_else(|| Error::InternalMismatch("extended tuple is not compatible".into()))?;
        map.push(at);
    }
    let psi = SemigroupHom::new(cs.l.clone(), ct.l.clone(), map)
        .map_err(|e| Error::InternalMismatch(format!("extension is not multiplicative: {e}")))?;
    let square = phi.source.elements().all(|a| psi.apply(cs.u.apply(a)) == ct.u.apply(phi.apply(a)));
    if !square || !psi.preserves_identity {
        return Err(Error::InternalMismatch("extension does not commute with u".into()));
    }
    if !is_continuous(&psi.map, &cs.rho, &ct.rho)? {
        return Err(Error::InternalMismatch("extension is not continuous".into()));
    }
    Ok(ExtendedHom { source: cs, target: ct, psi })
}

/// A continuous homomorphism split through the closure of its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseClosedFactorization {
    /// Closure of the image in the action topology of the target.
    pub closure: Subset,
    /// Subspace topology on the closure, points in increasing order.
    pub topology: Topology,
    /// Source elements to positions in the closure.
    pub dense: Vec<usize>,
    /// The two factors, present when the closure has an identity element.
    pub homs: Option<(SemigroupHom, SemigroupHom)>,
}

impl DenseClosedFactorization {
    pub fn recompose(&self) -> Vec<usize> {
        let points: Vec<usize> = self.closure.iter().collect();
        self.dense.iter().map(|&i| points[i]).collect()
    }
}

pub fn dense_closed_factorization(
    phi: &SemigroupHom,
    tau: &Topology,
    tau_target: &Topology,
) -> Result<DenseClosedFactorization> {
    let (m, t) = (&phi.source, &phi.target);
    if tau.carrier_size() != m.order() || tau_target.carrier_size() != t.order() {
        return Err(Error::SizeMismatch { expected: m.order(), found: tau.carrier_size() });
    }
    let tilde = continuous_subsets(t, tau_target)?.tau_tilde;
    if let Some(u) = continuity_witness(&phi.map, tau, &tilde)? {
        let names: Vec<String> = t.names().to_vec();
        return Err(Error::NotContinuous(crate::action::subset_name(&names, u)));
    }
    let image: Subset = phi.map.iter().copied().collect();
    let closure = tilde.closure(image);
    let points: Vec<usize> = closure.iter().collect();
    for &a in &points {
        for &b in &points {
            if !closure.contains(t.mul(a, b)) {
                return Err(Error::InternalMismatch("closure of the image is not closed under products".into()));
            }
        }
    }
    let dense: Vec<usize> = phi.map.iter().map(|v| points.binary_search(v).unwrap()).collect();
    let topology = tilde.subspace(closure)?;
    let e = phi.apply(m.identity());
    let is_unit = |u: usize| points.iter().all(|&a| t.mul(u, a) == a && t.mul(a, u) == a);
    let unit = if is_unit(e) { Some(e) } else { points.iter().copied().find(|&u| is_unit(u)) };
    let homs = match unit {
        Some(u) => {
            let (sub, incl) = t.restrict(&points, u)?;
            let first = SemigroupHom::new(m.clone(), sub, dense.clone())?;
            Some((first, incl))
        }
        None => None,
    };
    Ok(DenseClosedFactorization { closure, topology, dense, homs })
}

/// Closedness of `M'e`, `eM'` and `eM'e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Closedness {
    pub left_ideal_closed: bool,
    pub right_ideal_closed: bool,
    pub corner_closed: bool,
}

impl Closedness {
    pub fn all(&self) -> bool {
        self.left_ideal_closed && self.right_ideal_closed && self.corner_closed
    }
}

pub fn closedness_report(m: &FiniteMonoid, tau: &Topology, e: usize) -> Result<Closedness> {
    if tau.carrier_size() != m.order() {
        return Err(Error::SizeMismatch { expected: m.order(), found: tau.carrier_size() });
    }
    if !tau.is_t0() || !continuous_subsets(m, tau)?.is_action_topology {
        return Err(Error::NotPowderInput);
    }
    if !m.is_idempotent(e) {
        return Err(Error::NotIdempotent(m.name(e).to_string()));
    }
    let left: Subset = m.elements().map(|k| m.mul(k, e)).collect();
    let right: Subset = m.elements().map(|k| m.mul(e, k)).collect();
    let corner: Subset = m.elements().map(|k| m.mul(m.mul(e, k), e)).collect();
    Ok(Closedness {
        left_ideal_closed: tau.is_closed(left),
        right_ideal_closed: tau.is_closed(right),
        corner_closed: tau.is_closed(corner),
    })
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

    fn mod2_filter() -> CongruenceFilter {
        let c4 = FiniteMonoid::cyclic(4);
        CongruenceFilter::generated(&c4, &[RightCongruence::principal(&c4, 0, 2)]).unwrap()
    }

    #[test]
    fn full_filter_completes_to_itself() {
        let m = lz();
        let c = complete(&CongruenceFilter::all(&m).unwrap()).unwrap();
        assert_eq!(c.l.rows(), m.rows());
        assert_eq!(c.u.map, vec![0, 1, 2]);
        assert!(c.rho.is_discrete());
    }

    #[test]
    fn mod2_completes_to_c2() {
        let c = complete(&mod2_filter()).unwrap();
        assert_eq!(c.l.rows(), FiniteMonoid::cyclic(2).rows());
        assert_eq!(c.u.map, vec![0, 1, 0, 1]);
        assert!(c.rho.is_discrete());
    }

    #[test]
    fn lz_completes_to_b2() {
        let m = lz();
        let f = CongruenceFilter::new(&m, vec![r1(), RightCongruence::total(3)]).unwrap();
        let c = complete(&f).unwrap();
        assert_eq!(c.l.rows(), FiniteMonoid::left_zeros(&["e"]).rows());
        assert_eq!(c.u.map, vec![0, 1, 1]);
        assert_eq!(c.tuple_view, vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn completeness_examples() {
        for m in [lz(), FiniteMonoid::cyclic(3), FiniteMonoid::truncated_addition(2)] {
            assert!(is_complete(&m, &Topology::discrete(m.order())).unwrap());
        }
        assert!(!is_complete(&lz(), &tau_a()).unwrap());
        let cosets = Topology::from_partition(&[0, 1, 0, 1]);
        assert!(!is_complete(&FiniteMonoid::cyclic(4), &cosets).unwrap());
    }

    #[test]
    fn prodiscrete_examples() {
        let c3 = FiniteMonoid::cyclic(3);
        for r in crate::congruence::enumerate_congruences(&c3, 10).unwrap() {
            let f = CongruenceFilter::generated(&c3, &[r]).unwrap();
            assert!(prodiscrete_criteria(&f).unwrap().prodiscrete);
        }
        let flags = prodiscrete_criteria(&mod2_filter()).unwrap();
        assert!(flags.discrete && flags.prodiscrete && flags.group);
        let m = lz();
        let f = CongruenceFilter::new(&m, vec![r1(), RightCongruence::total(3)]).unwrap();
        let flags = prodiscrete_criteria(&f).unwrap();
        assert!(flags.discrete && flags.prodiscrete && !flags.group);
    }

    #[test]
    fn pullbacks() {
        let c4 = FiniteMonoid::cyclic(4);
        let c2 = FiniteMonoid::cyclic(2);
        let id = SemigroupHom::identity(&c4);
        let mod2 = RightCongruence::principal(&c4, 0, 2);
        assert_eq!(pullback_congruence(&id, &mod2).unwrap(), mod2);
        let red = SemigroupHom::new(c4, c2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(pullback_congruence(&red, &RightCongruence::total(2)).unwrap(), RightCongruence::total(4));
        assert_eq!(pullback_congruence(&red, &RightCongruence::diagonal(2)).unwrap(), mod2);
    }

    #[test]
    fn extension_examples() {
        let f = mod2_filter();
        let id = SemigroupHom::identity(&f.monoid);
        let ext = extend_hom(&id, &f, &f).unwrap();
        assert_eq!(ext.psi.map, vec![0, 1]);

        let c4 = FiniteMonoid::cyclic(4);
        let c2 = FiniteMonoid::cyclic(2);
        let red = SemigroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let ext = extend_hom(&red, &CongruenceFilter::all(&c4).unwrap(), &CongruenceFilter::all(&c2).unwrap()).unwrap();
        assert_eq!(ext.psi.map, vec![0, 1, 0, 1]);
        assert!(matches!(
            extend_hom(
                &red,
                &CongruenceFilter::new(&c4, vec![RightCongruence::total(4)]).unwrap(),
                &CongruenceFilter::all(&c2).unwrap()
            ),
            Err(Error::PullbackOutsideFilter(_))
        ));

        let m = lz();
        let open = CongruenceFilter::open_congruences(&m, &tau_a()).unwrap();
        let c = complete(&open).unwrap();
        let target = CongruenceFilter::open_congruences(&c.l, &c.rho).unwrap();
        let ext = extend_hom(&c.u, &open, &target).unwrap();
        assert_eq!(ext.psi.map, vec![0, 1]);
    }

    #[test]
    fn dense_closed_examples() {
        let c4 = FiniteMonoid::cyclic(4);
        let c2 = FiniteMonoid::cyclic(2);
        let red = SemigroupHom::new(c4, c2, vec![0, 1, 0, 1]).unwrap();
        let f = dense_closed_factorization(&red, &Topology::discrete(4), &Topology::discrete(2)).unwrap();
        assert_eq!(f.closure, Subset::full(2));
        let (first, second) = f.homs.unwrap();
        assert_eq!(first.map, red.map);
        assert_eq!(second.map, vec![0, 1]);

        let t = FiniteMonoid::trivial();
        let m = lz();
        let phi = SemigroupHom::new(t.clone(), m.clone(), vec![0]).unwrap();
        let f = dense_closed_factorization(&phi, &Topology::discrete(1), &tau_a()).unwrap();
        assert_eq!(f.closure, Subset::singleton(0));
        let (first, second) = f.homs.unwrap();
        assert!(first.is_injective() && first.is_surjective());
        assert_eq!(second.map, vec![0]);

        let phi = SemigroupHom::new(t, m.clone(), vec![1]).unwrap();
        let f = dense_closed_factorization(&phi, &Topology::discrete(1), &tau_a()).unwrap();
        assert_eq!(f.closure, Subset::from_indices([1, 2]));
        assert!(f.homs.is_none());
        assert_eq!(f.recompose(), phi.map);

        let id = SemigroupHom::identity(&m);
        assert!(matches!(
            dense_closed_factorization(&id, &Topology::indiscrete(3), &Topology::discrete(3)),
            Err(Error::NotContinuous(_))
        ));
    }

    #[test]
    fn closedness_examples() {
        let m = lz();
        for e in m.idempotents() {
            assert!(closedness_report(&m, &Topology::discrete(3), e).unwrap().all());
        }
        let b2 = FiniteMonoid::left_zeros(&["e"]);
        assert!(closedness_report(&b2, &Topology::discrete(2), 1).unwrap().all());
        assert_eq!(closedness_report(&m, &tau_a(), 1), Err(Error::NotPowderInput));
        let n2 = FiniteMonoid::truncated_addition(2);
        assert!(matches!(closedness_report(&n2, &Topology::discrete(3), 1), Err(Error::NotIdempotent(_))));
    }
}
