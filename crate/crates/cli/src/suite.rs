//! The exhaustive driver: every monoid up to isomorphism against every
//! topology on its carrier, each invariant checked per cell.

use rayon::prelude::*;
use serde_json::{json, Value};

use topact::completion::{complete, is_complete};
use topact::congruence::{enumerate_congruences, CongruenceFilter};
use topact::enumerate::{monoids_up_to_iso, MAX_ENUMERATED_ORDER};
use topact::invariants::{dense_units, is_atomic, principal_site, principal_site_unmarked, zero_fixed_point_check};
use topact::reflection::{continuous_subsets, is_topological_filter, powder_reflection};
use topact::{FiniteMonoid, Topology};

use crate::commands::sets_text;
use crate::error::{CliError, CliResult};
use crate::report::Report;

pub const MAX_CARRIER: usize = 4;

type Check = fn(&FiniteMonoid, &Topology) -> topact::Result<bool>;

fn action_topology(m: &FiniteMonoid, tau: &Topology) -> topact::Result<bool> {
    let at = continuous_subsets(m, tau)?.tau_tilde;
    let again = continuous_subsets(m, &at)?;
    Ok(at.is_coarser_than(tau) && again.is_action_topology && again.tau_tilde == at)
}

fn open_filter(m: &FiniteMonoid, tau: &Topology) -> topact::Result<bool> {
    let f = CongruenceFilter::open_congruences(m, tau)?;
    let lattice = enumerate_congruences(m, topact::congruence::congruence_cap())?;
    Ok(CongruenceFilter::check(m, f.members, &lattice).is_ok())
}

fn powder_discrete(m: &FiniteMonoid, tau: &Topology) -> topact::Result<bool> {
    Ok(powder_reflection(m, tau)?.is_discrete())
}

fn completion_complete(m: &FiniteMonoid, tau: &Topology) -> topact::Result<bool> {
    let c = complete(&CongruenceFilter::open_congruences(m, tau)?)?;
    is_complete(&c.l, &c.rho)
}

fn site_covers(m: &FiniteMonoid, tau: &Topology) -> topact::Result<bool> {
    let s = principal_site(&CongruenceFilter::open_congruences(m, tau)?)?;
    Ok(s.has_terminal() && s.joint_covering() && s.strict_joint_covering())
}

fn site_marks(m: &FiniteMonoid, tau: &Topology) -> topact::Result<bool> {
    let f = CongruenceFilter::open_congruences(m, tau)?;
    let (a, b) = (principal_site(&f)?, principal_site_unmarked(&f)?);
    Ok(a.epi == b.epi && a.strict_epi == b.strict_epi && a.mono == b.mono)
}

fn topological_filter(m: &FiniteMonoid, tau: &Topology) -> topact::Result<bool> {
    Ok(is_topological_filter(&CongruenceFilter::open_congruences(m, tau)?)?.holds)
}

fn atomic_and_units(m: &FiniteMonoid, tau: &Topology) -> topact::Result<bool> {
    is_atomic(&CongruenceFilter::open_congruences(m, tau)?)?;
    dense_units(m, tau)?;
    Ok(true)
}

fn zero_fixed_point(m: &FiniteMonoid, tau: &Topology) -> topact::Result<bool> {
    match zero_fixed_point_check(&CongruenceFilter::open_congruences(m, tau)?) {
        Err(topact::Error::NoZeroElement) => Ok(true),
        r => r,
    }
}

pub const INVARIANTS: &[(&str, Check)] = &[
    ("action topology is a coarser fixed point", action_topology),
    ("open congruences form a filter", open_filter),
    ("powder reflection is discrete", powder_discrete),
    ("completion is complete", completion_complete),
    ("site has terminal object and joint covers", site_covers),
    ("site marks are categorical", site_marks),
    ("open filter is topological", topological_filter),
    ("atomicity and density cross-checks", atomic_and_units),
    ("zero is the only fixed point", zero_fixed_point),
];

struct Cell {
    monoid: FiniteMonoid,
    topology: Topology,
    failures: Vec<(usize, String)>,
}

pub fn suite(order: usize, carrier: usize) -> CliResult<Report> {
    if order > MAX_ENUMERATED_ORDER {
        return Err(CliError::Engine(topact::Error::CapExceeded(MAX_ENUMERATED_ORDER)));
    }
    if carrier > MAX_CARRIER {
        return Err(CliError::Engine(topact::Error::CapExceeded(MAX_CARRIER)));
    }
    let mut inputs = Vec::new();
    let mut by_order = Vec::new();
    for n in 1..=order.min(carrier) {
        let topologies = Topology::enumerate_all(n);
        let monoids = monoids_up_to_iso(n);
        by_order.push((n, monoids.len(), topologies.len()));
        for m in monoids {
            for t in &topologies {
                inputs.push((m.clone(), t.clone()));
            }
        }
    }
    let cells: Vec<Cell> = inputs
        .into_par_iter()
        .map(|(monoid, topology)| {
            let failures = INVARIANTS
                .iter()
                .enumerate()
                .filter_map(|(i, (_, check))| match check(&monoid, &topology) {
                    Ok(true) => None,
                    Ok(false) => Some((i, "property is false".to_string())),
                    Err(e) => Some((i, e.to_string())),
                })
                .collect();
            Cell { monoid, topology, failures }
        })
        .collect();
    let mut r = Report::new("suite");
    for &(n, monoids, topologies) in &by_order {
        r.line(format!("order {n}: {monoids} monoids × {topologies} topologies"));
    }
    r.set(
        "orders",
        Value::Array(by_order.iter().map(|&(n, m, t)| json!({"order": n, "monoids": m, "topologies": t})).collect()),
    );
    r.field("cells", cells.len(), json!(cells.len()));
    let mut summary = Vec::new();
    for (i, (name, _)) in INVARIANTS.iter().enumerate() {
        let failed: Vec<&Cell> = cells.iter().filter(|c| c.failures.iter().any(|f| f.0 == i)).collect();
        let passed = cells.len() - failed.len();
        let mut entry = json!({"invariant": name, "passed": passed, "failed": failed.len()});
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        r.line(format!("{status} {name}: {passed}/{}", cells.len()));
        if let Some(c) = failed.iter().min_by_key(|c| (c.monoid.order(), c.topology.opens().len())) {
            let why = &c.failures.iter().find(|f| f.0 == i).expect("failed cell").1;
            let base = sets_text(c.monoid.names(), &c.topology.minimal_base());
            r.line(format!("  smallest counterexample: table {:?}, base {base}: {why}", c.monoid.rows()));
            entry["counterexample"] = json!({"table": c.monoid.rows(), "base": base, "reason": why});
            r.holds = false;
        }
        summary.push(entry);
    }
    r.set("invariants", Value::Array(summary));
    Ok(r)
}
