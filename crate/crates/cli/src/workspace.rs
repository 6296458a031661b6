//! The registry of named objects a command works on.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use topact::action::MSet;
use topact::congruence::{CongruenceFilter, RightCongruence};
use topact::{FiniteMonoid, SemigroupHom, Subset, Topology};

use crate::error::{CliError, CliResult};
use crate::io::{
    line_of, parse_document, CongruenceFile, Document, FilterFile, Generator, HomFile, MSetFile, MonoidFile,
    TopologyFile,
};

#[derive(Clone, Debug)]
pub enum TopologyObject {
    Fixed { carrier: Vec<String>, topology: Topology },
    Discrete,
    Indiscrete,
}

#[derive(Clone, Debug)]
pub enum Object {
    Monoid(FiniteMonoid),
    Topology(TopologyObject),
    MSet { monoid: String, mset: MSet },
    Hom { source: String, target: String, hom: SemigroupHom },
    Congruence { monoid: String, congruence: RightCongruence },
    Filter { monoid: String, filter: CongruenceFilter },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Monoid(_) => "monoid",
            Object::Topology(_) => "topology",
            Object::MSet { .. } => "mset",
            Object::Hom { .. } => "hom",
            Object::Congruence { .. } => "congruence",
            Object::Filter { .. } => "filter",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub object: Object,
    /// File path, `builtin`, or the command that derived the object.
    pub provenance: String,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    entries: BTreeMap<String, Entry>,
    /// Canonical file paths already loaded, to their names.
    files: HashMap<PathBuf, String>,
}

pub const FIXTURES: &[&str] = &["B2", "C2", "C4", "M_LZ", "N2", "discrete", "indiscrete", "mod2", "tau_A"];

impl Workspace {
    /// A workspace holding only the built-in fixtures.
    pub fn with_fixtures() -> Workspace {
        let mut w = Workspace::default();
        let builtin = |w: &mut Workspace, name: &str, object: Object| {
            w.entries.insert(name.into(), Entry { object, provenance: "builtin".into() });
        };
        let lz = FiniteMonoid::left_zeros(&["x", "y"]);
        let c4 = FiniteMonoid::cyclic(4);
        let mod2 = RightCongruence::from_classes(&c4, &[vec![0, 2], vec![1, 3]]).expect("parity is a congruence");
        builtin(&mut w, "M_LZ", Object::Monoid(lz.clone()));
        builtin(
            &mut w,
            "tau_A",
            Object::Topology(TopologyObject::Fixed {
                carrier: lz.names().to_vec(),
                topology: Topology::from_partition(&[0, 1, 1]),
            }),
        );
        builtin(&mut w, "C2", Object::Monoid(FiniteMonoid::cyclic(2)));
        builtin(&mut w, "C4", Object::Monoid(c4));
        builtin(&mut w, "N2", Object::Monoid(FiniteMonoid::truncated_addition(1)));
        builtin(&mut w, "B2", Object::Monoid(FiniteMonoid::left_zeros(&["e"])));
        builtin(&mut w, "mod2", Object::Congruence { monoid: "C4".into(), congruence: mod2 });
        builtin(&mut w, "discrete", Object::Topology(TopologyObject::Discrete));
        builtin(&mut w, "indiscrete", Object::Topology(TopologyObject::Indiscrete));
        w
    }

    pub fn names(&self) -> impl Iterator<Item = (&String, &Entry)> {
        self.entries.iter()
    }

    pub fn entry(&self, name: &str) -> CliResult<&Entry> {
        self.entries.get(name).ok_or_else(|| CliError::UnknownName(name.into()))
    }

    /// Resolves an operand: an existing file (named by its stem), a loaded
    /// name, or `<operand>.json`.
    pub fn load(&mut self, operand: &str) -> CliResult<String> {
        self.load_from(operand, None)
    }

    fn load_from(&mut self, operand: &str, dir: Option<&Path>) -> CliResult<String> {
        let candidates: Vec<PathBuf> = match dir {
            Some(d) => vec![d.join(operand), d.join(format!("{operand}.json"))],
            None => vec![PathBuf::from(operand)],
        };
        if let Some(p) = candidates.iter().find(|p| p.is_file()) {
            return self.load_file(p);
        }
        if self.entries.contains_key(operand) {
            return Ok(operand.into());
        }
        let fallback = PathBuf::from(format!("{operand}.json"));
        if dir.is_none() && fallback.is_file() {
            return self.load_file(&fallback);
        }
        Err(CliError::UnknownName(operand.into()))
    }

    fn load_file(&mut self, path: &Path) -> CliResult<String> {
        let shown = path.display().to_string();
        let canonical = path.canonicalize().map_err(|source| CliError::Io { path: shown.clone(), source })?;
        if let Some(name) = self.files.get(&canonical) {
            return Ok(name.clone());
        }
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| CliError::Usage(format!("{shown}: file name is not valid UTF-8")))?
            .to_string();
        if let Some(e) = self.entries.get(&name) {
            return Err(CliError::Validation {
                path: shown,
                message: format!("name `{name}` is already taken by {}", e.provenance),
            });
        }
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
        let doc = parse_document(&shown, &text)?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let object = self.build(&shown, &text, &dir, doc)?;
        self.files.insert(canonical, name.clone());
        self.entries.insert(name.clone(), Entry { object, provenance: shown });
        Ok(name)
    }

    /// Registers an object produced by a command.
    pub fn insert_derived(&mut self, name: &str, object: Object, provenance: &str) {
        self.entries.insert(name.into(), Entry { object, provenance: provenance.into() });
    }

    fn reference(&mut self, operand: &str, dir: &Path, path: &str) -> CliResult<String> {
        self.load_from(operand, Some(dir)).map_err(|e| match e {
            CliError::UnknownName(n) => {
                CliError::Validation { path: path.into(), message: format!("unknown reference `{n}`") }
            }
            e => e,
        })
    }

    fn build(&mut self, path: &str, text: &str, dir: &Path, doc: Document) -> CliResult<Object> {
        let invalid = |e: topact::Error| CliError::Validation { path: path.into(), message: e.to_string() };
        match doc {
            Document::Monoid(d) => {
                let names = Names::new(path, text, &d.elements)?;
                let identity = names.index(&d.identity)?;
                let table = d
                    .table
                    .iter()
                    .map(|row| row.iter().map(|v| names.index(v)).collect::<CliResult<Vec<_>>>())
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(Object::Monoid(FiniteMonoid::new(d.elements.clone(), table, identity).map_err(invalid)?))
            }
            Document::Topology(d) => {
                let names = Names::new(path, text, &d.carrier)?;
                let base = d.base.iter().map(|s| names.subset(s)).collect::<CliResult<Vec<_>>>()?;
                let topology = Topology::generate(d.carrier.len(), &base).map_err(invalid)?;
                Ok(Object::Topology(TopologyObject::Fixed { carrier: d.carrier, topology }))
            }
            Document::MSet(d) => {
                let monoid = self.reference(&d.monoid, dir, path)?;
                let m = self.monoid(&monoid)?.clone();
                let names = Names::new(path, text, &d.carrier)?;
                let rows = d
                    .action
                    .iter()
                    .map(|row| row.iter().map(|v| names.index(v)).collect::<CliResult<Vec<_>>>())
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(Object::MSet { monoid, mset: MSet::new(m, d.carrier.clone(), rows).map_err(invalid)? })
            }
            Document::Hom(d) => {
                let source = self.reference(&d.source, dir, path)?;
                let target = self.reference(&d.target, dir, path)?;
                let (s, t) = (self.monoid(&source)?.clone(), self.monoid(&target)?.clone());
                let sn = Names::new(path, text, s.names())?;
                let tn = Names::new(path, text, t.names())?;
                let mut map = vec![usize::MAX; s.order()];
                for (a, b) in &d.map {
                    map[sn.index(a)?] = tn.index(b)?;
                }
                if let Some(a) = map.iter().position(|&v| v == usize::MAX) {
                    return Err(CliError::Validation {
                        path: path.into(),
                        message: format!("map does not send `{}` anywhere", s.name(a)),
                    });
                }
                Ok(Object::Hom { source, target, hom: SemigroupHom::new(s, t, map).map_err(invalid)? })
            }
            Document::Congruence(d) => {
                let monoid = self.reference(&d.monoid, dir, path)?;
                let m = self.monoid(&monoid)?.clone();
                let congruence = classes_to_congruence(path, text, &m, &d.classes)?;
                Ok(Object::Congruence { monoid, congruence })
            }
            Document::Filter(d) => {
                let monoid = self.reference(&d.monoid, dir, path)?;
                let m = self.monoid(&monoid)?.clone();
                let mut gens = Vec::new();
                for g in &d.generators {
                    gens.push(match g {
                        Generator::Classes(c) => classes_to_congruence(path, text, &m, c)?,
                        Generator::Named(n) => {
                            let name = self.reference(n, dir, path)?;
                            self.congruence_on(&name, &m)?.clone()
                        }
                    });
                }
                if gens.is_empty() {
                    return Err(CliError::Validation {
                        path: path.into(),
                        message: "a filter needs a generator".into(),
                    });
                }
                Ok(Object::Filter { monoid, filter: CongruenceFilter::generated(&m, &gens).map_err(invalid)? })
            }
        }
    }

    fn wrong(&self, name: &str, expected: &'static str) -> CliError {
        match self.entries.get(name) {
            Some(e) => CliError::WrongKind { name: name.into(), expected, found: e.object.kind() },
            None => CliError::UnknownName(name.into()),
        }
    }

    pub fn monoid(&self, name: &str) -> CliResult<&FiniteMonoid> {
        match self.entries.get(name).map(|e| &e.object) {
            Some(Object::Monoid(m)) => Ok(m),
            _ => Err(self.wrong(name, "monoid")),
        }
    }

    pub fn hom(&self, name: &str) -> CliResult<(&str, &str, &SemigroupHom)> {
        match self.entries.get(name).map(|e| &e.object) {
            Some(Object::Hom { source, target, hom }) => Ok((source, target, hom)),
            _ => Err(self.wrong(name, "hom")),
        }
    }

    fn congruence_on(&self, name: &str, m: &FiniteMonoid) -> CliResult<&RightCongruence> {
        match self.entries.get(name).map(|e| &e.object) {
            Some(Object::Congruence { monoid, congruence }) => {
                if self.monoid(monoid)? != m {
                    return Err(CliError::Usage(format!("congruence `{name}` lives on `{monoid}`")));
                }
                Ok(congruence)
            }
            _ => Err(self.wrong(name, "congruence")),
        }
    }

    /// A topology read on the elements of `m`, matching carrier names.
    pub fn topology_on(&self, name: &str, m: &FiniteMonoid) -> CliResult<Topology> {
        let n = m.order();
        match self.entries.get(name).map(|e| &e.object) {
            Some(Object::Topology(TopologyObject::Discrete)) => Ok(Topology::discrete(n)),
            Some(Object::Topology(TopologyObject::Indiscrete)) => Ok(Topology::indiscrete(n)),
            Some(Object::Topology(TopologyObject::Fixed { carrier, topology })) => {
                let mut sorted_carrier = carrier.clone();
                let mut sorted_names = m.names().to_vec();
                sorted_carrier.sort();
                sorted_names.sort();
                if sorted_carrier != sorted_names {
                    return Err(CliError::Usage(format!(
                        "topology `{name}` has carrier {{{}}}, which is not the element set of the monoid",
                        carrier.join(", ")
                    )));
                }
                let pos: Vec<usize> = carrier.iter().map(|c| m.index_of(c).expect("names match")).collect();
                let nbhd = (0..n)
                    .map(|x| {
                        let at = carrier.iter().position(|c| c == m.name(x)).expect("names match");
                        topology.neighbourhood(at).iter().map(|y| pos[y]).collect::<Subset>()
                    })
                    .collect();
                Ok(Topology::from_neighbourhoods(nbhd)?)
            }
            _ => Err(self.wrong(name, "topology")),
        }
    }

    /// `all`, `open@<topology>`, a filter or a congruence generating one.
    pub fn filter_on(&mut self, arg: &str, m: &FiniteMonoid) -> CliResult<CongruenceFilter> {
        if arg == "all" {
            return Ok(CongruenceFilter::all(m)?);
        }
        if let Some(t) = arg.strip_prefix("open@") {
            let name = self.load(t)?;
            let tau = self.topology_on(&name, m)?;
            return Ok(CongruenceFilter::open_congruences(m, &tau)?);
        }
        let name = self.load(arg)?;
        match &self.entry(&name)?.object {
            Object::Filter { monoid, filter } => {
                if self.monoid(monoid)? != m {
                    return Err(CliError::Usage(format!("filter `{name}` lives on `{monoid}`")));
                }
                Ok(filter.clone())
            }
            Object::Congruence { .. } => {
                let r = self.congruence_on(&name, m)?.clone();
                Ok(CongruenceFilter::generated(m, &[r])?)
            }
            _ => Err(self.wrong(&name, "filter")),
        }
    }

    /// The canonical file form of a named object.
    pub fn document(&self, name: &str) -> CliResult<Document> {
        let entry = self.entry(name)?;
        Ok(match &entry.object {
            Object::Monoid(m) => Document::Monoid(monoid_file(m)),
            Object::Topology(TopologyObject::Fixed { carrier, topology }) => {
                Document::Topology(topology_file(carrier, topology))
            }
            Object::Topology(_) => return Err(CliError::Usage(format!("`{name}` has no fixed carrier"))),
            Object::MSet { monoid, mset } => Document::MSet(MSetFile {
                monoid: monoid.clone(),
                carrier: mset.names().to_vec(),
                action: (0..mset.size())
                    .map(|x| mset.monoid().elements().map(|a| mset.name(mset.act(x, a)).to_string()).collect())
                    .collect(),
            }),
            Object::Hom { source, target, hom } => Document::Hom(hom_file(source, target, hom)),
            Object::Congruence { monoid, congruence } => Document::Congruence(CongruenceFile {
                monoid: monoid.clone(),
                classes: class_names(self.monoid(monoid)?, congruence),
            }),
            Object::Filter { monoid, filter } => Document::Filter(filter_file(monoid, filter)),
        })
    }
}

pub fn monoid_file(m: &FiniteMonoid) -> MonoidFile {
    MonoidFile {
        elements: m.names().to_vec(),
        identity: m.name(m.identity()).into(),
        table: m.elements().map(|a| m.elements().map(|b| m.name(m.mul(a, b)).to_string()).collect()).collect(),
    }
}

pub fn topology_file(carrier: &[String], t: &Topology) -> TopologyFile {
    let mut base = t.minimal_base();
    base.sort();
    TopologyFile {
        carrier: carrier.to_vec(),
        base: base.iter().map(|s| s.iter().map(|i| carrier[i].clone()).collect()).collect(),
    }
}

pub fn hom_file(source: &str, target: &str, h: &SemigroupHom) -> HomFile {
    HomFile {
        source: source.into(),
        target: target.into(),
        map: h
            .source
            .elements()
            .map(|a| (h.source.name(a).to_string(), h.target.name(h.apply(a)).to_string()))
            .collect(),
    }
}

pub fn class_names(m: &FiniteMonoid, r: &RightCongruence) -> Vec<Vec<String>> {
    r.classes().iter().map(|c| c.iter().map(|&a| m.name(a).to_string()).collect()).collect()
}

pub fn filter_file(monoid: &str, f: &CongruenceFilter) -> FilterFile {
    FilterFile {
        monoid: monoid.into(),
        generators: f.base.iter().map(|r| Generator::Classes(class_names(&f.monoid, r))).collect(),
    }
}

fn classes_to_congruence(
    path: &str,
    text: &str,
    m: &FiniteMonoid,
    classes: &[Vec<String>],
) -> CliResult<RightCongruence> {
    let names = Names::new(path, text, m.names())?;
    let blocks = classes
        .iter()
        .map(|c| c.iter().map(|v| names.index(v)).collect::<CliResult<Vec<_>>>())
        .collect::<CliResult<Vec<_>>>()?;
    RightCongruence::from_classes(m, &blocks)
        .map_err(|e| CliError::Validation { path: path.into(), message: e.to_string() })
}

/// Name lookup that reports unknown names at their line.
struct Names<'a> {
    path: &'a str,
    text: &'a str,
    names: &'a [String],
}

impl<'a> Names<'a> {
    fn new(path: &'a str, text: &'a str, names: &'a [String]) -> CliResult<Names<'a>> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(CliError::Parse {
                    path: path.into(),
                    line: line_of(text, n).unwrap_or(1),
                    message: format!("duplicate element name `{n}`"),
                });
            }
        }
        Ok(Names { path, text, names })
    }

    fn index(&self, name: &str) -> CliResult<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| CliError::Parse {
            path: self.path.into(),
            line: line_of(self.text, name).unwrap_or(1),
            message: format!("unknown element `{name}`"),
        })
    }

    fn subset(&self, names: &[String]) -> CliResult<Subset> {
        names.iter().map(|n| self.index(n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_resolve() {
        let mut w = Workspace::with_fixtures();
        let lz = w.monoid("M_LZ").unwrap().clone();
        let tau = w.topology_on("tau_A", &lz).unwrap();
        assert_eq!(tau.minimal_base().len(), 2);
        let c4 = w.monoid("C4").unwrap().clone();
        assert_eq!(w.filter_on("mod2", &c4).unwrap().least().num_classes(), 2);
        assert!(matches!(w.filter_on("mod2", &lz), Err(CliError::Usage(_))));
        assert!(matches!(w.monoid("tau_A"), Err(CliError::WrongKind { .. })));
        assert!(matches!(w.load("nothing-here"), Err(CliError::UnknownName(_))));
    }

    #[test]
    fn topology_follows_carrier_names() {
        let mut w = Workspace::with_fixtures();
        let carrier = vec!["y".to_string(), "x".into(), "1".into()];
        let t = Topology::from_partition(&[0, 0, 1]);
        w.insert_derived("t", Object::Topology(TopologyObject::Fixed { carrier, topology: t }), "test");
        let lz = w.monoid("M_LZ").unwrap().clone();
        assert_eq!(w.topology_on("t", &lz).unwrap(), Topology::from_partition(&[0, 1, 1]));
    }
}
