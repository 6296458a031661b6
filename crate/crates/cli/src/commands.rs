//! One function per subcommand. Each returns a [`Report`].

use serde_json::{json, Value};

use topact::category::{categories_equivalent, morita_fingerprint, SearchCap, Verdict};
use topact::completion::{closedness_report, complete, dense_closed_factorization, is_complete, prodiscrete_criteria};
use topact::congruence::{congruence_cap, enumerate_congruences, enumerate_filters, CongruenceFilter};
use topact::enumerate::are_isomorphic;
use topact::invariants::{dense_units, dense_units_for_filter, is_atomic, principal_site, zero_fixed_point_check};
use topact::reflection::{
    continuous_subsets, is_multiplication_continuous, is_topological_filter, mult_continuous_core, powder_reflection,
    t0_quotient,
};
use topact::{FiniteMonoid, SemigroupHom, Subset, Topology};

use crate::error::{CliError, CliResult};
use crate::io::Document;
use crate::report::Report;
use crate::workspace::{hom_file, monoid_file, topology_file, Object, Workspace, FIXTURES};

pub fn set_text(names: &[String], s: Subset) -> String {
    let items: Vec<&str> = s.iter().map(|i| names[i].as_str()).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn sets_text(names: &[String], sets: &[Subset]) -> String {
    let items: Vec<String> = sets.iter().map(|&s| set_text(names, s)).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn sets_json(names: &[String], sets: &[Subset]) -> Value {
    Value::Array(sets.iter().map(|s| json!(s.iter().map(|i| &names[i]).collect::<Vec<_>>())).collect())
}

fn sorted_base(t: &Topology) -> Vec<Subset> {
    let mut b = t.minimal_base();
    b.sort();
    b
}

fn map_text(h: &SemigroupHom) -> String {
    let items: Vec<String> =
        h.source.elements().map(|a| format!("{} ↦ {}", h.source.name(a), h.target.name(h.apply(a)))).collect();
    items.join(", ")
}

fn map_json(h: &SemigroupHom) -> Value {
    let mut m = serde_json::Map::new();
    for a in h.source.elements() {
        m.insert(h.source.name(a).into(), json!(h.target.name(h.apply(a))));
    }
    Value::Object(m)
}

/// A fixture isomorphic to `m`, if any.
fn fixture_match(w: &Workspace, m: &FiniteMonoid) -> Option<String> {
    FIXTURES.iter().find(|n| w.monoid(n).is_ok_and(|f| are_isomorphic(f, m))).map(|n| n.to_string())
}

pub fn validate(w: &mut Workspace, operands: &[String]) -> CliResult<Report> {
    let mut r = Report::new("validate");
    let mut loaded = Vec::new();
    for op in operands {
        loaded.push(w.load(op)?);
    }
    let mut objects = Vec::new();
    let names: Vec<(String, &'static str, String)> =
        w.names().map(|(n, e)| (n.clone(), e.object.kind(), e.provenance.clone())).collect();
    for (name, kind, provenance) in names {
        if provenance == "builtin" && !loaded.contains(&name) {
            continue;
        }
        r.line(format!("{name}: {kind} from {provenance}"));
        objects.push(json!({"name": name, "kind": kind, "provenance": provenance}));
        if let Ok(doc) = w.document(&name) {
            r.artifact(format!("{name}.json"), doc.to_json());
        }
    }
    r.set("objects", Value::Array(objects));
    Ok(r)
}

pub fn analyze(w: &mut Workspace, monoid: &str, topology: Option<&str>) -> CliResult<Report> {
    let name = w.load(monoid)?;
    let m = w.monoid(&name)?.clone();
    let names = m.names().to_vec();
    let mut r = Report::new("analyze");
    let pick = |xs: Vec<usize>| xs.into_iter().map(|a| names[a].clone()).collect::<Vec<_>>();
    r.field("monoid", &name, json!(name));
    r.field("order", m.order(), json!(m.order()));
    r.field("commutative", m.is_commutative(), json!(m.is_commutative()));
    r.field("group", m.is_group(), json!(m.is_group()));
    let idem = pick(m.idempotents());
    r.field("idempotents", idem.join(", "), json!(idem));
    let units = pick(m.units());
    r.field("units", units.join(", "), json!(units));
    let zero = m.zero().map(|z| names[z].clone());
    r.field("zero", zero.clone().unwrap_or_else(|| "none".into()), json!(zero));
    let lattice = enumerate_congruences(&m, congruence_cap())?;
    let two_sided = lattice.iter().filter(|c| c.is_two_sided(&m)).count();
    r.field("right congruences", lattice.len(), json!(lattice.len()));
    r.field("two-sided congruences", two_sided, json!(two_sided));
    if let Some(fixture) = fixture_match(w, &m) {
        r.field("isomorphic to", &fixture, json!(fixture));
    }
    if let Some(t) = topology {
        let tname = w.load(t)?;
        let tau = w.topology_on(&tname, &m)?;
        let report = continuous_subsets(&m, &tau)?;
        let open = CongruenceFilter::open_congruences(&m, &tau)?;
        r.field("topology", &tname, json!(tname));
        r.field("base", sets_text(&names, &sorted_base(&tau)), sets_json(&names, &sorted_base(&tau)));
        let cont = is_multiplication_continuous(&m, &tau);
        r.field("multiplication continuous", cont, json!(cont));
        r.field("action topology", report.is_action_topology, json!(report.is_action_topology));
        r.field("T0", tau.is_t0(), json!(tau.is_t0()));
        r.field("open congruences", open.members.len(), json!(open.members.len()));
        let least = open.least().describe(&m);
        r.field("least open congruence", &least, json!(least));
        let complete = is_complete(&m, &tau)?;
        r.field("complete", complete, json!(complete));
        let atomic = is_atomic(&open)?.holds;
        r.field("atomic", atomic, json!(atomic));
        let dense = dense_units(&m, &tau)?;
        r.field("dense units", dense, json!(dense));
    }
    Ok(r)
}

pub fn congruences(w: &mut Workspace, monoid: &str) -> CliResult<Report> {
    let name = w.load(monoid)?;
    let m = w.monoid(&name)?.clone();
    let lattice = enumerate_congruences(&m, congruence_cap())?;
    let filters = enumerate_filters(&m)?;
    let mut r = Report::new("congruences");
    let mut list = Vec::new();
    for c in &lattice {
        let ts = c.is_two_sided(&m);
        r.line(format!("{}{}", c.describe(&m), if ts { "  two-sided" } else { "" }));
        list.push(json!({"classes": crate::workspace::class_names(&m, c), "two_sided": ts}));
    }
    r.field("count", lattice.len(), json!(lattice.len()));
    r.field("filters", filters.len(), json!(filters.len()));
    r.set("congruences", Value::Array(list));
    Ok(r)
}

fn monoid_and_topology(w: &mut Workspace, monoid: &str, topology: &str) -> CliResult<(String, FiniteMonoid, Topology)> {
    let name = w.load(monoid)?;
    let m = w.monoid(&name)?.clone();
    let tname = w.load(topology)?;
    let tau = w.topology_on(&tname, &m)?;
    Ok((name, m, tau))
}

pub fn act_topology(w: &mut Workspace, monoid: &str, topology: &str) -> CliResult<Report> {
    let (_, m, tau) = monoid_and_topology(w, monoid, topology)?;
    let names = m.names().to_vec();
    let rep = continuous_subsets(&m, &tau)?;
    let mut r = Report::new("act-topology");
    r.field("input base", sets_text(&names, &sorted_base(&tau)), sets_json(&names, &sorted_base(&tau)));
    r.field("T", sets_text(&names, &rep.t), sets_json(&names, &rep.t));
    let base = sorted_base(&rep.tau_tilde);
    r.field("T base", sets_text(&names, &base), sets_json(&names, &base));
    r.field("is_action_topology", rep.is_action_topology, json!(rep.is_action_topology));
    r.artifact("action_topology.json".into(), Document::Topology(topology_file(&names, &rep.tau_tilde)).to_json());
    Ok(r)
}

/// Files for a named input, so that `--out` directories load on their own.
fn input_artifact(w: &Workspace, r: &mut Report, name: &str) {
    if w.entry(name).is_ok_and(|e| e.provenance != "builtin") {
        if let Ok(doc) = w.document(name) {
            r.artifact(format!("{name}.json"), doc.to_json());
        }
    }
}

fn quotient_artifacts(
    w: &mut Workspace,
    r: &mut Report,
    source: &str,
    stem: &str,
    q: &FiniteMonoid,
    t: &Topology,
    proj: &SemigroupHom,
) {
    input_artifact(w, r, source);
    let provenance = format!("{} of {source}", r.json["command"].as_str().unwrap_or_default());
    w.insert_derived(stem, Object::Monoid(q.clone()), &provenance);
    r.line(format!("derived {stem}: {provenance}"));
    r.artifact(format!("{stem}.json"), Document::Monoid(monoid_file(q)).to_json());
    r.artifact(format!("{stem}_topology.json"), Document::Topology(topology_file(q.names(), t)).to_json());
    r.artifact(format!("{stem}_projection.json"), Document::Hom(hom_file(source, stem, proj)).to_json());
}

pub fn powder(w: &mut Workspace, monoid: &str, topology: &str) -> CliResult<Report> {
    let (name, m, tau) = monoid_and_topology(w, monoid, topology)?;
    let p = powder_reflection(&m, &tau)?;
    let mut r = Report::new("powder");
    let names = m.names().to_vec();
    let at = sorted_base(&p.action_topology);
    r.field("action topology base", sets_text(&names, &at), sets_json(&names, &at));
    r.field("quotient elements", p.monoid.names().join(", "), json!(p.monoid.names()));
    r.field("discrete", p.is_discrete(), json!(p.is_discrete()));
    r.field("projection", map_text(&p.projection), map_json(&p.projection));
    if let Some(f) = fixture_match(w, &p.monoid) {
        r.field("quotient isomorphic to", &f, json!(f));
    }
    quotient_artifacts(w, &mut r, &name, "powder", &p.monoid, &p.topology, &p.projection);
    Ok(r)
}

pub fn t0(w: &mut Workspace, monoid: &str, topology: &str) -> CliResult<Report> {
    let (name, m, tau) = monoid_and_topology(w, monoid, topology)?;
    let q = t0_quotient(&m, &tau)?;
    let mut r = Report::new("t0");
    let qn = q.monoid.names().to_vec();
    let base = sorted_base(&q.topology);
    r.field("quotient elements", qn.join(", "), json!(qn));
    r.field("quotient base", sets_text(&qn, &base), sets_json(&qn, &base));
    r.field("projection", map_text(&q.projection), map_json(&q.projection));
    quotient_artifacts(w, &mut r, &name, "t0", &q.monoid, &q.topology, &q.projection);
    Ok(r)
}

pub fn mult_core(w: &mut Workspace, monoid: &str, topology: &str) -> CliResult<Report> {
    let (_, m, tau) = monoid_and_topology(w, monoid, topology)?;
    let core = mult_continuous_core(&m, &tau)?;
    let names = m.names().to_vec();
    let mut r = Report::new("mult-core");
    let cont = is_multiplication_continuous(&m, &tau);
    r.field("input continuous", cont, json!(cont));
    let base = sorted_base(&core);
    r.field("core base", sets_text(&names, &base), sets_json(&names, &base));
    r.field("core equals input", core == tau, json!(core == tau));
    r.artifact("core.json".into(), Document::Topology(topology_file(&names, &core)).to_json());
    Ok(r)
}

fn monoid_and_filter(
    w: &mut Workspace,
    monoid: &str,
    filter: &str,
) -> CliResult<(String, FiniteMonoid, CongruenceFilter)> {
    let name = w.load(monoid)?;
    let m = w.monoid(&name)?.clone();
    let f = w.filter_on(filter, &m)?;
    Ok((name, m, f))
}

fn filter_fields(r: &mut Report, m: &FiniteMonoid, f: &CongruenceFilter) {
    let base: Vec<String> = f.base.iter().map(|c| c.describe(m)).collect();
    r.field("filter base", base.join(", "), json!(base));
    r.field("filter size", f.members.len(), json!(f.members.len()));
}

pub fn complete_cmd(w: &mut Workspace, monoid: &str, filter: &str) -> CliResult<Report> {
    let (name, m, f) = monoid_and_filter(w, monoid, filter)?;
    let c = complete(&f)?;
    let flags = prodiscrete_criteria(&f)?;
    let mut r = Report::new("complete");
    filter_fields(&mut r, &m, &f);
    let ln = c.l.names().to_vec();
    r.field("L elements", ln.join(", "), json!(ln));
    if let Some(fx) = fixture_match(w, &c.l) {
        r.field("L isomorphic to", &fx, json!(fx));
    }
    let base = sorted_base(&c.rho);
    r.field("rho base", sets_text(&ln, &base), sets_json(&ln, &base));
    r.field("u", map_text(&c.u), map_json(&c.u));
    r.field("discrete", flags.discrete, json!(flags.discrete));
    r.field("prodiscrete", flags.prodiscrete, json!(flags.prodiscrete));
    r.field("group", flags.group, json!(flags.group));
    quotient_artifacts(w, &mut r, &name, "completion", &c.l, &c.rho, &c.u);
    Ok(r)
}

pub fn factor_hom(w: &mut Workspace, hom: &str, source_topology: &str, target_topology: &str) -> CliResult<Report> {
    let name = w.load(hom)?;
    let (sname, tname, phi) = w.hom(&name)?;
    let (sname, tname, phi) = (sname.to_string(), tname.to_string(), phi.clone());
    let st = w.load(source_topology)?;
    let tau = w.topology_on(&st, &phi.source)?;
    let tt = w.load(target_topology)?;
    let tau_t = w.topology_on(&tt, &phi.target)?;
    let mut r = Report::new("factor-hom");
    r.field("map", map_text(&phi), map_json(&phi));
    if phi.preserves_identity || phi.target.is_idempotent(phi.apply(phi.source.identity())) {
        let (first, incl) = phi.factor_surjection_inclusion();
        let e = phi.target.name(phi.apply(phi.source.identity())).to_string();
        r.field("idempotent", &e, json!(e));
        r.field("corner", first.target.names().join(", "), json!(first.target.names()));
        r.field("onto corner", map_text(&first), map_json(&first));
        r.field("inclusion", map_text(&incl), map_json(&incl));
        input_artifact(w, &mut r, &sname);
        input_artifact(w, &mut r, &tname);
        r.artifact("corner.json".into(), Document::Monoid(monoid_file(&first.target)).to_json());
        r.artifact("onto_corner.json".into(), Document::Hom(hom_file(&sname, "corner", &first)).to_json());
        r.artifact("inclusion.json".into(), Document::Hom(hom_file("corner", &tname, &incl)).to_json());
    }
    let d = dense_closed_factorization(&phi, &tau, &tau_t)?;
    let tn = phi.target.names().to_vec();
    r.field("closure of image", set_text(&tn, d.closure), json!(d.closure.iter().map(|i| &tn[i]).collect::<Vec<_>>()));
    r.field("closure is a monoid", d.homs.is_some(), json!(d.homs.is_some()));
    let e = phi.apply(phi.source.identity());
    if let Ok(c) = closedness_report(&phi.target, &tau_t, e) {
        r.field("M'e closed", c.left_ideal_closed, json!(c.left_ideal_closed));
        r.field("eM' closed", c.right_ideal_closed, json!(c.right_ideal_closed));
        r.field("eM'e closed", c.corner_closed, json!(c.corner_closed));
    }
    Ok(r)
}

pub fn site(w: &mut Workspace, monoid: &str, filter: &str) -> CliResult<Report> {
    let (name, m, f) = monoid_and_filter(w, monoid, filter)?;
    let c = principal_site(&f)?;
    let mut r = Report::new("site");
    filter_fields(&mut r, &m, &f);
    let objects: Vec<String> = f.members.iter().map(|x| x.describe(&m)).collect();
    for (i, o) in objects.iter().enumerate() {
        r.line(format!("object {i}: {o} ({} classes)", f.members[i].num_classes()));
    }
    let mut arrows = Vec::new();
    for (i, a) in c.arrows.iter().enumerate() {
        let mut marks = Vec::new();
        if c.epi[i] {
            marks.push("epi");
        }
        if c.strict_epi[i] {
            marks.push("strict");
        }
        if c.mono[i] {
            marks.push("mono");
        }
        r.line(
            format!("arrow {i}: {} : {} -> {} {}", a.label, a.source, a.target, marks.join(" ")).trim_end().to_string(),
        );
        arrows.push(json!({"label": a.label, "source": a.source, "target": a.target, "marks": marks}));
    }
    r.set("objects", json!(objects));
    r.set("arrows", Value::Array(arrows));
    r.field("joint covering", c.joint_covering(), json!(c.joint_covering()));
    r.field("strict joint covering", c.strict_joint_covering(), json!(c.strict_joint_covering()));
    r.dot = Some(c.to_dot(&name));
    r.artifact("site.dot".into(), c.to_dot(&name));
    Ok(r)
}

pub fn morita(w: &mut Workspace, a: &str, b: &str, filters: &[String]) -> CliResult<Report> {
    let fa = filters.first().map(String::as_str).unwrap_or("all");
    let fb = filters.get(1).map(String::as_str).unwrap_or(fa);
    let (_, _, f1) = monoid_and_filter(w, a, fa)?;
    let (_, _, f2) = monoid_and_filter(w, b, fb)?;
    let (s1, s2) = (principal_site(&f1)?, principal_site(&f2)?);
    let mut r = Report::new("morita");
    let (p1, p2) = (morita_fingerprint(&s1), morita_fingerprint(&s2));
    r.field("fingerprints equal", p1 == p2, json!(p1 == p2));
    match categories_equivalent(&s1, &s2, SearchCap::default()) {
        Verdict::Yes(e) => {
            r.field("verdict", "equivalent", json!("equivalent"));
            r.field("object map", format!("{:?}", e.object_map), json!(e.object_map));
        }
        Verdict::No(why) => {
            r.field("verdict", "not equivalent", json!("not equivalent"));
            r.field("reason", &why, json!(why));
            r.holds = false;
        }
        Verdict::Unknown(why) => return Err(CliError::Usage(format!("equivalence search gave up: {why}"))),
    }
    Ok(r)
}

fn needs_topology() -> CliError {
    CliError::Usage("this check needs a topology".into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Property {
    Atomic,
    Jcp,
    StrictJcp,
    Zero,
    Units,
    Complete,
    Powder,
    TopologicalFilter,
}

pub fn check(
    w: &mut Workspace,
    property: Property,
    monoid: &str,
    topology: Option<&str>,
    filter: Option<&str>,
) -> CliResult<Report> {
    let name = w.load(monoid)?;
    let m = w.monoid(&name)?.clone();
    let mut r = Report::new("check");
    let filter_arg = match (filter, topology) {
        (Some(f), _) => f.to_string(),
        (None, Some(t)) => format!("open@{t}"),
        (None, None) => "all".into(),
    };
    let holds = match property {
        Property::Atomic => {
            let f = w.filter_on(&filter_arg, &m)?;
            let a = is_atomic(&f)?;
            if let Some((c, x)) = &a.witness {
                let text = format!("{} at class of {}", c.describe(&m), m.name(c.representatives()[*x]));
                r.field("witness", &text, json!({"congruence": crate::workspace::class_names(&m, c), "class": x}));
            }
            a.holds
        }
        Property::Jcp => principal_site(&w.filter_on(&filter_arg, &m)?)?.joint_covering(),
        Property::StrictJcp => principal_site(&w.filter_on(&filter_arg, &m)?)?.strict_joint_covering(),
        Property::Zero => zero_fixed_point_check(&w.filter_on(&filter_arg, &m)?)?,
        Property::Units => match (filter, topology) {
            (None, Some(t)) => {
                let tname = w.load(t)?;
                dense_units(&m, &w.topology_on(&tname, &m)?)?
            }
            _ => dense_units_for_filter(&w.filter_on(&filter_arg, &m)?)?,
        },
        Property::Complete => {
            let tname = w.load(topology.ok_or_else(needs_topology)?)?;
            is_complete(&m, &w.topology_on(&tname, &m)?)?
        }
        Property::Powder => {
            let tname = w.load(topology.ok_or_else(needs_topology)?)?;
            let tau = w.topology_on(&tname, &m)?;
            let at = continuous_subsets(&m, &tau)?.is_action_topology;
            r.field("action topology", at, json!(at));
            r.field("T0", tau.is_t0(), json!(tau.is_t0()));
            at && tau.is_t0()
        }
        Property::TopologicalFilter => {
            let c = is_topological_filter(&w.filter_on(&filter_arg, &m)?)?;
            if let Some(x) = &c.witness {
                r.field("witness", x.describe(&m), json!(crate::workspace::class_names(&m, x)));
            }
            c.holds
        }
    };
    let label = format!("{property:?}");
    r.field("property", &label, json!(label));
    r.field("holds", holds, json!(holds));
    r.holds = holds;
    Ok(r)
}
