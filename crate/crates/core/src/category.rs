//! Small finite categories: validation, epi/mono analysis, fingerprints and
//! equivalence search.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A finite category with composition written in diagrammatic order:
/// `compose(f, g)` is `f` followed by `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identities: Vec<usize>,
    table: Vec<Option<usize>>,
    pub epi: Vec<bool>,
    pub strict_epi: Vec<bool>,
    pub mono: Vec<bool>,
}

impl FiniteCategory {
    /// Validates the category laws. `compose(f, g)` is consulted for every
    /// composable pair. Epis, strict epis and monos are computed from the
    /// composition.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<FiniteCategory> {
        let (n, a) = (objects.len(), arrows.len());
        if identities.len() != n {
            return Err(Error::SizeMismatch { expected: n, found: identities.len() });
        }
        for f in &arrows {
            if f.source >= n || f.target >= n {
                return Err(Error::OutOfRange { index: f.source.max(f.target), size: n });
            }
        }
        for (o, &i) in identities.iter().enumerate() {
            if i >= a || arrows[i].source != o || arrows[i].target != o {
                return Err(Error::BadShape(format!("identity of object {o} is not an endomorphism of it")));
            }
        }
        let mut table = vec![None; a * a];
        for f in 0..a {
            for g in 0..a {
                if arrows[f].target == arrows[g].source {
                    let h = compose(f, g);
                    if h >= a || arrows[h].source != arrows[f].source || arrows[h].target != arrows[g].target {
                        return Err(Error::BadShape(format!("composite of arrows {f} and {g} has wrong ends")));
                    }
                    table[f * a + g] = Some(h);
                }
            }
        }
        let mut c = FiniteCategory {
            objects,
            arrows,
            identities,
            table,
            epi: Vec::new(),
            strict_epi: Vec::new(),
            mono: Vec::new(),
        };
        for f in 0..a {
            let (s, t) = (c.arrows[f].source, c.arrows[f].target);
            if c.compose(c.identities[s], f) != f || c.compose(f, c.identities[t]) != f {
                return Err(Error::BadShape(format!("unit law fails at arrow {f}")));
            }
            for g in c.out_of(t) {
                for h in c.out_of(c.arrows[g].target) {
                    if c.compose(c.compose(f, g), h) != c.compose(f, c.compose(g, h)) {
                        return Err(Error::BadShape(format!("composition is not associative at ({f}, {g}, {h})")));
                    }
                }
            }
        }
        c.epi = (0..a).map(|f| c.is_epi(f)).collect();
        c.mono = (0..a).map(|f| c.is_mono(f)).collect();
        c.strict_epi = (0..a).map(|f| c.is_strict_epi(f)).collect();
        Ok(c)
    }

    /// Replaces the computed markings.
    pub fn with_marks(mut self, epi: Vec<bool>, strict_epi: Vec<bool>, mono: Vec<bool>) -> Result<Self> {
        let a = self.arrows.len();
        for v in [&epi, &strict_epi, &mono] {
            if v.len() != a {
                return Err(Error::SizeMismatch { expected: a, found: v.len() });
            }
        }
        self.epi = epi;
        self.strict_epi = strict_epi;
        self.mono = mono;
        Ok(self)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    /// `f` followed by `g`.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        self.table[f * self.arrows.len() + g].expect("arrows are not composable")
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].source == a && self.arrows[f].target == b).collect()
    }

    fn out_of(&self, a: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].source == a).collect()
    }

    fn into(&self, b: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].target == b).collect()
    }

    fn is_epi(&self, f: usize) -> bool {
        let t = self.arrows[f].target;
        let outs = self.out_of(t);
        outs.iter().all(|&g| {
            outs.iter().all(|&h| {
                self.arrows[g].target != self.arrows[h].target || g == h || self.compose(f, g) != self.compose(f, h)
            })
        })
    }

    fn is_mono(&self, f: usize) -> bool {
        let s = self.arrows[f].source;
        let ins = self.into(s);
        ins.iter().all(|&g| {
            ins.iter().all(|&h| {
                self.arrows[g].source != self.arrows[h].source || g == h || self.compose(g, f) != self.compose(h, f)
            })
        })
    }

    /// `f : A → B` is strict when every `g : A → C` identifying all pairs that
    /// `f` identifies factors uniquely as `f` followed by some `B → C`.
    fn is_strict_epi(&self, f: usize) -> bool {
        let (a, b) = (self.arrows[f].source, self.arrows[f].target);
        let ins = self.into(a);
        let kernel: Vec<(usize, usize)> = ins
            .iter()
            .flat_map(|&h| ins.iter().map(move |&k| (h, k)))
            .filter(|&(h, k)| {
                self.arrows[h].source == self.arrows[k].source && self.compose(h, f) == self.compose(k, f)
            })
            .collect();
        self.out_of(a).into_iter().all(|g| {
            let respects = kernel.iter().all(|&(h, k)| self.compose(h, g) == self.compose(k, g));
            if !respects {
                return true;
            }
            let c = self.arrows[g].target;
            self.hom(b, c).into_iter().filter(|&g2| self.compose(f, g2) == g).count() == 1
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        let (a, b) = (self.arrows[f].source, self.arrows[f].target);
        self.hom(b, a)
            .into_iter()
            .any(|g| self.compose(f, g) == self.identities[a] && self.compose(g, f) == self.identities[b])
    }

    /// Isomorphism classes, each sorted, ordered by least member.
    pub fn iso_classes(&self) -> Vec<Vec<usize>> {
        let n = self.num_objects();
        let mut class = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class[a] != usize::MAX {
                continue;
            }
            let members: Vec<usize> =
                (a..n).filter(|&b| b == a || self.hom(a, b).into_iter().any(|f| self.is_iso(f))).collect();
            for &b in &members {
                class[b] = out.len();
            }
            out.push(members);
        }
        out
    }

    pub fn has_terminal(&self) -> bool {
        (0..self.num_objects()).any(|t| (0..self.num_objects()).all(|x| self.hom(x, t).len() == 1))
    }

    /// Every pair of objects is covered by epis out of a single object.
    pub fn joint_covering(&self) -> bool {
        self.covering_with(&self.epi)
    }

    pub fn strict_joint_covering(&self) -> bool {
        self.covering_with(&self.strict_epi)
    }

    fn covering_with(&self, marks: &[bool]) -> bool {
        let n = self.num_objects();
        let covers = |c: usize, a: usize| self.hom(c, a).into_iter().any(|f| marks[f]);
        (0..n).all(|a| (0..n).all(|b| (0..n).any(|c| covers(c, a) && covers(c, b))))
    }

    /// The same category with objects renumbered by `perm` (old index to new)
    /// and arrows listed in a new order.
    pub fn relabeled(&self, perm: &[usize], arrow_perm: &[usize]) -> FiniteCategory {
        let a = self.arrows.len();
        let mut arrows = vec![None; a];
        let mut objects = vec![String::new(); self.num_objects()];
        for (o, name) in self.objects.iter().enumerate() {
            objects[perm[o]] = name.clone();
        }
        for f in 0..a {
            let old = &self.arrows[f];
            arrows[arrow_perm[f]] =
                Some(Arrow { source: perm[old.source], target: perm[old.target], label: old.label.clone() });
        }
        let mut back = vec![0; a];
        for f in 0..a {
            back[arrow_perm[f]] = f;
        }
        let mut identities = vec![0; self.num_objects()];
        for (o, &i) in self.identities.iter().enumerate() {
            identities[perm[o]] = arrow_perm[i];
        }
        let c = FiniteCategory::new(objects, arrows.into_iter().map(Option::unwrap).collect(), identities, |f, g| {
            arrow_perm[self.compose(back[f], back[g])]
        })
        .expect("relabeling preserves the laws");
        let remap = |v: &[bool]| (0..a).map(|f| v[back[f]]).collect();
        c.with_marks(remap(&self.epi), remap(&self.strict_epi), remap(&self.mono)).unwrap()
    }

    /// A DOT rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        writeln!(s, "digraph \"{}\" {{", name.replace('"', "'")).unwrap();
        for (i, o) in self.objects.iter().enumerate() {
            writeln!(s, "  n{i} [label=\"{}\"];", o.replace('"', "'")).unwrap();
        }
        for (f, arrow) in self.arrows.iter().enumerate() {
            if f == self.identities[arrow.source] {
                continue;
            }
            let style = if self.epi[f] { " style=bold" } else { "" };
            writeln!(
                s,
                "  n{} -> n{} [label=\"{}\"{}];",
                arrow.source,
                arrow.target,
                arrow.label.replace('"', "'"),
                style
            )
            .unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// Data preserved by equivalences of categories.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MoritaFingerprint {
    pub objects: usize,
    /// Hom-set sizes between representatives of isomorphism classes.
    pub homs: Vec<Vec<usize>>,
    pub epis: Vec<Vec<usize>>,
    pub monos: Vec<Vec<usize>>,
    pub terminal: bool,
}

type Cell = (usize, usize, usize);

/// Entries revealed once the first `t + 1` positions are fixed.
fn shell(order: &[usize], t: usize, cell: &dyn Fn(usize, usize) -> Cell) -> Vec<Cell> {
    let mut v = Vec::with_capacity(2 * t + 1);
    for i in 0..t {
        v.push(cell(order[i], order[t]));
        v.push(cell(order[t], order[i]));
    }
    v.push(cell(order[t], order[t]));
    v
}

/// Canonical ordering of `k` points under the layered lexicographic order.
fn canonical_order(k: usize, cell: &dyn Fn(usize, usize) -> Cell) -> Vec<usize> {
    let mut best: Option<(Vec<Cell>, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(k);
    let mut used = vec![false; k];
    let mut prefix: Vec<Cell> = Vec::new();
    fn go(
        k: usize,
        cell: &dyn Fn(usize, usize) -> Cell,
        order: &mut Vec<usize>,
        used: &mut Vec<bool>,
        prefix: &mut Vec<Cell>,
        best: &mut Option<(Vec<Cell>, Vec<usize>)>,
    ) {
        if let Some((b, _)) = best {
            let len = prefix.len().min(b.len());
            if prefix[..len] > b[..len] {
                return;
            }
        }
        if order.len() == k {
            if best.as_ref().is_none_or(|(b, _)| *prefix < *b) {
                *best = Some((prefix.clone(), order.clone()));
            }
            return;
        }
        for p in 0..k {
            if used[p] {
                continue;
            }
            used[p] = true;
            order.push(p);
            let added = shell(order, order.len() - 1, cell);
            let n = added.len();
            prefix.extend(added);
            go(k, cell, order, used, prefix, best);
            prefix.truncate(prefix.len() - n);
            order.pop();
            used[p] = false;
        }
    }
    go(k, cell, &mut order, &mut used, &mut prefix, &mut best);
    best.map(|(_, o)| o).unwrap_or_default()
}

pub fn morita_fingerprint(c: &FiniteCategory) -> MoritaFingerprint {
    let reps: Vec<usize> = c.iso_classes().iter().map(|cl| cl[0]).collect();
    let k = reps.len();
    let count = |i: usize, j: usize, marks: Option<&[bool]>| {
        c.hom(reps[i], reps[j]).into_iter().filter(|&f| marks.is_none_or(|m| m[f])).count()
    };
    let cell = |i: usize, j: usize| (count(i, j, None), count(i, j, Some(&c.epi)), count(i, j, Some(&c.mono)));
    let order = canonical_order(k, &cell);
    let matrix = |pick: fn(Cell) -> usize| -> Vec<Vec<usize>> {
        order.iter().map(|&i| order.iter().map(|&j| pick(cell(i, j))).collect()).collect()
    };
    MoritaFingerprint {
        objects: k,
        homs: matrix(|c| c.0),
        epis: matrix(|c| c.1),
        monos: matrix(|c| c.2),
        terminal: c.has_terminal(),
    }
}

/// Bounds for the equivalence search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchCap {
    pub max_classes: usize,
    pub max_hom: usize,
}

impl Default for SearchCap {
    fn default() -> Self {
        SearchCap { max_classes: 6, max_hom: 8 }
    }
}

/// A witness of equivalence: an isomorphism between skeletons, extended to
/// all objects through their class representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub object_map: Vec<usize>,
    /// Skeleton arrows of the first category to arrows of the second.
    pub arrow_map: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes(Equivalence),
    No(String),
    Unknown(String),
}

pub fn categories_equivalent(c1: &FiniteCategory, c2: &FiniteCategory, cap: SearchCap) -> Verdict {
    let (f1, f2) = (morita_fingerprint(c1), morita_fingerprint(c2));
    if f1 != f2 {
        let why = if f1.objects != f2.objects {
            format!("{} vs {} isomorphism classes", f1.objects, f2.objects)
        } else if f1.homs != f2.homs {
            "hom-set sizes differ".to_string()
        } else if f1.terminal != f2.terminal {
            "only one has a terminal object".to_string()
        } else {
            "epi or mono counts differ".to_string()
        };
        return Verdict::No(why);
    }
    let reps1: Vec<usize> = c1.iso_classes().iter().map(|c| c[0]).collect();
    let reps2: Vec<usize> = c2.iso_classes().iter().map(|c| c[0]).collect();
    let k = reps1.len();
    let biggest = f1.homs.iter().flatten().copied().max().unwrap_or(0);
    if k > cap.max_classes || biggest > cap.max_hom {
        return Verdict::Unknown(format!("{k} classes, hom-sets up to {biggest}: beyond the search cap"));
    }
    let cell = |c: &FiniteCategory, a: usize, b: usize| {
        let h = c.hom(a, b);
        (h.len(), h.iter().filter(|&&f| c.epi[f]).count(), h.iter().filter(|&&f| c.mono[f]).count())
    };
    let mut perm = Vec::new();
    let mut used = vec![false; k];
    let mut found = None;
    search_objects(c1, c2, &reps1, &reps2, &cell, &mut perm, &mut used, &mut found);
    match found {
        Some((perm, arrow_map)) => {
            let classes = c1.iso_classes();
            let mut object_map = vec![0; c1.num_objects()];
            for (ci, class) in classes.iter().enumerate() {
                for &o in class {
                    object_map[o] = reps2[perm[ci]];
                }
            }
            Verdict::Yes(Equivalence { object_map, arrow_map })
        }
        None => Verdict::No("no isomorphism between skeletons".into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn search_objects(
    c1: &FiniteCategory,
    c2: &FiniteCategory,
    reps1: &[usize],
    reps2: &[usize],
    cell: &dyn Fn(&FiniteCategory, usize, usize) -> Cell,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Option<(Vec<usize>, BTreeMap<usize, usize>)>,
) {
    if found.is_some() {
        return;
    }
    let t = perm.len();
    if t == reps1.len() {
        if let Some(map) = search_arrows(c1, c2, reps1, reps2, perm) {
            *found = Some((perm.clone(), map));
        }
        return;
    }
    for p in 0..reps2.len() {
        if used[p] {
            continue;
        }
        let consistent = (0..=t).all(|i| {
            let q = if i == t { p } else { perm[i] };
            cell(c1, reps1[i], reps1[t]) == cell(c2, reps2[q], reps2[p])
                && cell(c1, reps1[t], reps1[i]) == cell(c2, reps2[p], reps2[q])
        });
        if !consistent {
            continue;
        }
        used[p] = true;
        perm.push(p);
        search_objects(c1, c2, reps1, reps2, cell, perm, used, found);
        perm.pop();
        used[p] = false;
    }
}

fn search_arrows(
    c1: &FiniteCategory,
    c2: &FiniteCategory,
    reps1: &[usize],
    reps2: &[usize],
    perm: &[usize],
) -> Option<BTreeMap<usize, usize>> {
    let k = reps1.len();
    let mut arrows1 = Vec::new();
    let mut candidates = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let h1 = c1.hom(reps1[i], reps1[j]);
            let h2 = c2.hom(reps2[perm[i]], reps2[perm[j]]);
            for f in h1 {
                arrows1.push(f);
                candidates.push(h2.clone());
            }
        }
    }
    let mut assign: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..k {
        assign.insert(c1.identities[reps1[i]], c2.identities[reps2[perm[i]]]);
    }
    fn consistent(c1: &FiniteCategory, c2: &FiniteCategory, assign: &BTreeMap<usize, usize>, f: usize) -> bool {
        let image: Vec<usize> = assign.values().copied().collect();
        let mut seen = image.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != image.len() {
            return false;
        }
        for (&g, &fg) in assign {
            for (&h, &fh) in assign {
                if g != f && h != f {
                    continue;
                }
                if c1.arrows[g].target == c1.arrows[h].source {
                    let gh = c1.compose(g, h);
                    if let Some(&fgh) = assign.get(&gh) {
                        if c2.compose(fg, fh) != fgh {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
    fn go(
        idx: usize,
        c1: &FiniteCategory,
        c2: &FiniteCategory,
        arrows1: &[usize],
        candidates: &[Vec<usize>],
        assign: &mut BTreeMap<usize, usize>,
    ) -> bool {
        if idx == arrows1.len() {
            return true;
        }
        let f = arrows1[idx];
        if assign.contains_key(&f) {
            return consistent(c1, c2, assign, f) && go(idx + 1, c1, c2, arrows1, candidates, assign);
        }
        for &g in &candidates[idx] {
            if c1.epi[f] != c2.epi[g] || c1.mono[f] != c2.mono[g] {
                continue;
            }
            assign.insert(f, g);
            if consistent(c1, c2, assign, f) && go(idx + 1, c1, c2, arrows1, candidates, assign) {
                return true;
            }
            assign.remove(&f);
        }
        false
    }
    go(0, c1, c2, &arrows1, &candidates, &mut assign).then_some(assign)
}
