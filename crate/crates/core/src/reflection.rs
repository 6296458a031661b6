//! Reflections of finite topological monoids: the action topology, the
//! continuity core of the multiplication, the T0 quotient, and the powder
//! reflection that composes them.

use crate::action::{congruence_mset, inverse_image, MSet, MAX_POWERSET_BASE};
use crate::congruence::{congruence_cap, CongruenceFilter, RightCongruence};
use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, SemigroupHom};
use crate::subset::{all_subsets, Subset};
use crate::topology::{is_open_in_product, Topology};

/// The continuous part `T` of the powerset and the topology it generates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTopologyReport {
    pub input: Topology,
    /// Sorted by bitmask.
    pub t: Vec<Subset>,
    pub tau_tilde: Topology,
    pub is_action_topology: bool,
}

fn check_carrier(m: &FiniteMonoid, tau: &Topology) -> Result<()> {
    if tau.carrier_size() != m.order() {
        return Err(Error::SizeMismatch { expected: m.order(), found: tau.carrier_size() });
    }
    if m.order() > MAX_POWERSET_BASE {
        return Err(Error::CarrierTooLarge(m.order(), MAX_POWERSET_BASE));
    }
    Ok(())
}

/// `{k : k^*(b) = p^*(b)}`.
pub fn subset_clopen(m: &FiniteMonoid, b: Subset, p: usize) -> Subset {
    let target = inverse_image(m, p, b);
    m.elements().filter(|&k| inverse_image(m, k, b) == target).collect()
}

/// The congruence `{(p, p') : p^*(b) = p'^*(b)}`.
pub fn subset_orbit_congruence(m: &FiniteMonoid, b: Subset) -> RightCongruence {
    let labels: Vec<Subset> = m.elements().map(|p| inverse_image(m, p, b)).collect();
    RightCongruence::kernel(&labels)
}

/// `T = {A : I^p_{q^*(A)} open for all p, q}` and `τ̃` generated by it.
pub fn continuous_subsets(m: &FiniteMonoid, tau: &Topology) -> Result<ActionTopologyReport> {
    check_carrier(m, tau)?;
    let n = m.order();
    let t: Vec<Subset> = all_subsets(n)
        .filter(|&a| {
            m.elements().all(|q| {
                let b = inverse_image(m, q, a);
                m.elements().all(|p| tau.is_open(subset_clopen(m, b, p)))
            })
        })
        .collect();
    let tau_tilde = Topology::generate(n, &t)?;
    Ok(ActionTopologyReport { input: tau.clone(), is_action_topology: tau_tilde == *tau, t, tau_tilde })
}

/// Action topology of the opposite multiplication.
pub fn left_action_topology(m: &FiniteMonoid, tau: &Topology) -> Result<ActionTopologyReport> {
    continuous_subsets(&m.opposite(), tau)
}

/// `μ(N(a) × N(b)) ⊆ N(ab)` for every pair.
pub fn is_multiplication_continuous(m: &FiniteMonoid, tau: &Topology) -> bool {
    m.elements().all(|a| {
        m.elements().all(|b| {
            let target = tau.neighbourhood(m.mul(a, b));
            tau.neighbourhood(a).iter().all(|a2| tau.neighbourhood(b).iter().all(|b2| target.contains(m.mul(a2, b2))))
        })
    })
}

/// `μ^{-1}(u)` as relation rows.
fn multiplication_preimage(m: &FiniteMonoid, u: Subset) -> Vec<Subset> {
    m.elements().map(|a| m.elements().filter(|&b| u.contains(m.mul(a, b))).collect()).collect()
}

/// The finest topology inside `tau` making multiplication continuous.
pub fn mult_continuous_core(m: &FiniteMonoid, tau: &Topology) -> Result<Topology> {
    if tau.carrier_size() != m.order() {
        return Err(Error::SizeMismatch { expected: m.order(), found: tau.carrier_size() });
    }
    let mut current = tau.clone();
    loop {
        let kept: Vec<Subset> = current
            .opens()
            .into_iter()
            .filter(|&u| is_open_in_product(&current, &current, &multiplication_preimage(m, u)))
            .collect();
        let next = Topology::from_opens(m.order(), &kept)
            .map_err(|e| Error::InternalMismatch(format!("core iteration left topologies: {e}")))?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// A quotient monoid with its topology and projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologicalQuotient {
    pub monoid: FiniteMonoid,
    pub topology: Topology,
    pub projection: SemigroupHom,
}

/// Identifies topologically indistinguishable elements.
pub fn t0_quotient(m: &FiniteMonoid, tau: &Topology) -> Result<TopologicalQuotient> {
    if tau.carrier_size() != m.order() {
        return Err(Error::SizeMismatch { expected: m.order(), found: tau.carrier_size() });
    }
    if !is_multiplication_continuous(m, tau) {
        return Err(Error::NotTopologicalMonoid);
    }
    let r = RightCongruence::kernel(tau.neighbourhoods());
    let (monoid, projection) =
        r.quotient_monoid(m).map_err(|_| Error::InternalMismatch("indistinguishability is not two-sided".into()))?;
    let topology = tau.quotient(r.labels(), r.num_classes());
    Ok(TopologicalQuotient { monoid, topology, projection })
}

/// The powder reflection: action topology followed by the T0 quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowderReflection {
    pub action_topology: Topology,
    pub monoid: FiniteMonoid,
    pub topology: Topology,
    pub projection: SemigroupHom,
}

impl PowderReflection {
    pub fn is_discrete(&self) -> bool {
        self.topology.is_discrete()
    }
}

pub fn powder_reflection(m: &FiniteMonoid, tau: &Topology) -> Result<PowderReflection> {
    let at = continuous_subsets(m, tau)?.tau_tilde;
    let q = t0_quotient(m, &at)?;
    Ok(PowderReflection { action_topology: at, monoid: q.monoid, topology: q.topology, projection: q.projection })
}

/// The left analogue of [`powder_reflection`], computed on the same table.
pub fn left_powder_reflection(m: &FiniteMonoid, tau: &Topology) -> Result<PowderReflection> {
    let at = left_action_topology(m, tau)?.tau_tilde;
    let q = t0_quotient(m, &at)?;
    Ok(PowderReflection { action_topology: at, monoid: q.monoid, topology: q.topology, projection: q.projection })
}

/// Both orders of the right and left reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commutation {
    /// Left action topology of the right action topology, on the original carrier.
    pub left_of_right: Topology,
    pub right_of_left: Topology,
    /// Kernel and pulled-back topology of the full right-after-left pipeline.
    pub right_after_left: (RightCongruence, Topology),
    pub left_after_right: (RightCongruence, Topology),
    pub commute: bool,
}

fn pipeline_trace(
    m: &FiniteMonoid,
    tau: &Topology,
    first: fn(&FiniteMonoid, &Topology) -> Result<PowderReflection>,
    second: fn(&FiniteMonoid, &Topology) -> Result<PowderReflection>,
) -> Result<(RightCongruence, Topology)> {
    let a = first(m, tau)?;
    let b = second(&a.monoid, &a.topology)?;
    let proj = a.projection.then(&b.projection)?;
    let preimages: Vec<Subset> = b
        .topology
        .minimal_base()
        .into_iter()
        .map(|u| m.elements().filter(|&k| u.contains(proj.apply(k))).collect())
        .collect();
    Ok((RightCongruence::kernel(&proj.map), Topology::generate(m.order(), &preimages)?))
}

pub fn two_sided_commutation(m: &FiniteMonoid, tau: &Topology) -> Result<Commutation> {
    if tau.carrier_size() != m.order() {
        return Err(Error::SizeMismatch { expected: m.order(), found: tau.carrier_size() });
    }
    if !tau.is_t0() || !is_multiplication_continuous(m, tau) {
        return Err(Error::NotTopologicalMonoid);
    }
    let right = continuous_subsets(m, tau)?.tau_tilde;
    let left = left_action_topology(m, tau)?.tau_tilde;
    let left_of_right = left_action_topology(m, &right)?.tau_tilde;
    let right_of_left = continuous_subsets(m, &left)?.tau_tilde;
    let right_after_left = pipeline_trace(m, tau, left_powder_reflection, powder_reflection)?;
    let left_after_right = pipeline_trace(m, tau, powder_reflection, left_powder_reflection)?;
    let commute = left_of_right == right_of_left && right_after_left == left_after_right;
    Ok(Commutation { left_of_right, right_of_left, right_after_left, left_after_right, commute })
}

/// `T_h = {A : (q^*A)'s orbit congruence lies in F for every q}` and `τ_h`.
pub fn induced_topology_from_filter(f: &CongruenceFilter) -> Result<ActionTopologyReport> {
    let m = &f.monoid;
    if m.order() > MAX_POWERSET_BASE {
        return Err(Error::CarrierTooLarge(m.order(), MAX_POWERSET_BASE));
    }
    let t: Vec<Subset> = all_subsets(m.order())
        .filter(|&a| m.elements().all(|q| f.contains(&subset_orbit_congruence(m, inverse_image(m, q, a)))))
        .collect();
    let tau_h = Topology::generate(m.order(), &t)?;
    for r in &f.members {
        if !MSet::quotient(m, r).is_continuous(&tau_h) {
            return Err(Error::InternalMismatch(format!(
                "{} is not continuous for its induced topology",
                r.describe(m)
            )));
        }
    }
    let is_action_topology = continuous_subsets(m, &tau_h)?.tau_tilde == tau_h;
    Ok(ActionTopologyReport { input: tau_h.clone(), t, tau_tilde: tau_h, is_action_topology })
}

/// Outcome of the atom test on a filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterCheck {
    pub holds: bool,
    /// A congruence outside the filter all of whose atom images lie inside.
    pub witness: Option<RightCongruence>,
}

/// Images of the atoms `[q] ↦ q^*(I^p_{[1]})` of `M/r`, one per `p`.
pub fn atom_image_congruences(m: &FiniteMonoid, r: &RightCongruence) -> Vec<RightCongruence> {
    m.elements().map(|p| subset_orbit_congruence(m, r.block(p))).collect()
}

pub fn is_topological_filter(f: &CongruenceFilter) -> Result<FilterCheck> {
    let m = &f.monoid;
    let lattice = crate::congruence::enumerate_congruences(m, congruence_cap())?;
    let witness =
        lattice.into_iter().find(|r| !f.contains(r) && atom_image_congruences(m, r).iter().all(|s| f.contains(s)));
    if witness.is_none() {
        let tau_f = induced_topology_from_filter(f)?.tau_tilde;
        let opens = CongruenceFilter::open_congruences(m, &tau_f)?;
        if opens.members != f.members {
            return Err(Error::InternalMismatch(
                "filter passes the atom test but differs from the open congruences of its topology".into(),
            ));
        }
    }
    Ok(FilterCheck { holds: witness.is_none(), witness })
}

/// The congruences that are continuous elements of the inverse-image action
/// on right congruences.
pub fn hat_congruences(m: &FiniteMonoid, tau: &Topology) -> Result<Vec<RightCongruence>> {
    if tau.carrier_size() != m.order() {
        return Err(Error::SizeMismatch { expected: m.order(), found: tau.carrier_size() });
    }
    let (x, all) = congruence_mset(m, congruence_cap())?;
    let part = x.continuous_part(tau)?;
    Ok(part.members.into_iter().map(|i| all[i].clone()).collect())
}

/// The topology generated by the classes of [`hat_congruences`].
///
/// This does not in general have the same continuous actions as `tau`; it
/// exists to exhibit that failure.
pub fn congruence_hat_topology(m: &FiniteMonoid, tau: &Topology) -> Result<Topology> {
    let base: Vec<Subset> = hat_congruences(m, tau)?
        .iter()
        .flat_map(|r| r.classes().into_iter().map(|c| c.into_iter().collect::<Subset>()).collect::<Vec<_>>())
        .collect();
    Topology::generate(m.order(), &base)
}
