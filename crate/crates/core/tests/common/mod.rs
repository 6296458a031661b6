#![allow(dead_code)]
//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's own algorithms for the quantity being checked.

use topact::congruence::RightCongruence;
use topact::{FiniteMonoid, Subset, Topology};

pub fn lz() -> FiniteMonoid {
    FiniteMonoid::left_zeros(&["x", "y"])
}

pub fn b2() -> FiniteMonoid {
    FiniteMonoid::left_zeros(&["e"])
}

pub fn tau_a() -> Topology {
    Topology::from_partition(&[0, 1, 1])
}

pub fn subsets(n: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << n)
}

/// Every family of subsets of `{0..n}` containing the empty and full sets and
/// closed under union and intersection, as sorted open-set lists.
pub fn topologies(n: usize) -> Vec<Vec<u64>> {
    let full = (1u64 << n) - 1;
    let middle: Vec<u64> = subsets(n).filter(|&s| s != 0 && s != full).collect();
    let mut out = Vec::new();
    for pick in 0u64..(1u64 << middle.len()) {
        let mut fam = vec![0, full];
        fam.extend(middle.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &s)| s));
        let has = |s: u64| fam.contains(&s);
        if fam.iter().all(|&a| fam.iter().all(|&b| has(a | b) && has(a & b))) {
            fam.sort_unstable();
            out.push(fam);
        }
    }
    out
}

pub fn to_topology(n: usize, opens: &[u64]) -> Topology {
    let opens: Vec<Subset> = opens.iter().map(|&s| Subset(s)).collect();
    Topology::from_opens(n, &opens).unwrap()
}

pub fn all_topologies(n: usize) -> Vec<Topology> {
    topologies(n).iter().map(|o| to_topology(n, o)).collect()
}

pub fn open_sets(t: &Topology) -> Vec<u64> {
    subsets(t.carrier_size()).filter(|&s| t.is_open(Subset(s))).collect()
}

/// Smallest open set containing `x`.
pub fn smallest_open(t: &Topology, x: usize) -> u64 {
    open_sets(t).into_iter().filter(|s| s >> x & 1 == 1).fold(u64::MAX, |a, b| a & b)
}

pub fn closure(t: &Topology, s: u64) -> u64 {
    let n = t.carrier_size();
    let full = (1u64 << n) - 1;
    open_sets(t).into_iter().map(|u| full & !u).filter(|c| s & !c == 0).fold(full, |a, b| a & b)
}

/// Every product `a·b` of nearby points lands near `ab`.
pub fn multiplication_continuous(m: &FiniteMonoid, t: &Topology) -> bool {
    let n = m.order();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let target = smallest_open(t, m.mul(a, b));
            (0..n).all(|c| {
                (0..n).all(|d| {
                    smallest_open(t, a) >> c & 1 == 0
                        || smallest_open(t, b) >> d & 1 == 0
                        || target >> m.mul(c, d) & 1 == 1
                })
            })
        })
    })
}

/// A relation on the carrier is open in the square.
pub fn relation_open(t: &Topology, related: impl Fn(usize, usize) -> bool) -> bool {
    let n = t.carrier_size();
    (0..n).all(|a| {
        (0..n).all(|b| {
            !related(a, b)
                || (0..n).all(|c| {
                    (0..n).all(|d| {
                        smallest_open(t, a) >> c & 1 == 0 || smallest_open(t, b) >> d & 1 == 0 || related(c, d)
                    })
                })
        })
    })
}

/// Every labelling of `{0..n}` in restricted growth form.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=k {
            cur.push(c);
            go(i + 1, n, k.max(c + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Right congruences by scanning partitions.
pub fn right_congruences(m: &FiniteMonoid) -> Vec<Vec<usize>> {
    let n = m.order();
    partitions(n)
        .into_iter()
        .filter(|p| (0..n).all(|a| (0..n).all(|b| p[a] != p[b] || (0..n).all(|c| p[m.mul(a, c)] == p[m.mul(b, c)]))))
        .collect()
}

pub fn refines(p: &[usize], q: &[usize]) -> bool {
    (0..p.len()).all(|a| (0..p.len()).all(|b| p[a] != p[b] || q[a] == q[b]))
}

pub fn same_partition(p: &[usize], q: &[usize]) -> bool {
    refines(p, q) && refines(q, p)
}

/// `(a, b) ↦ (qa, qb)` pulled back.
pub fn pull(m: &FiniteMonoid, p: &[usize], q: usize) -> Vec<usize> {
    let n = m.order();
    let mut out = vec![usize::MAX; n];
    let mut next = 0;
    for a in 0..n {
        if out[a] != usize::MAX {
            continue;
        }
        for b in a..n {
            if p[m.mul(q, a)] == p[m.mul(q, b)] {
                out[b] = next;
            }
        }
        next += 1;
    }
    out
}

/// Families of right congruences satisfying the filter axioms, by scanning
/// every subset of the lattice.
pub fn filters(m: &FiniteMonoid) -> Vec<Vec<Vec<usize>>> {
    let lattice = right_congruences(m);
    let k = lattice.len();
    assert!(k <= 20, "lattice too large for a subset scan");
    let mut out = Vec::new();
    for pick in 1u64..(1u64 << k) {
        let fam: Vec<&Vec<usize>> = (0..k).filter(|&i| pick >> i & 1 == 1).map(|i| &lattice[i]).collect();
        let member = |p: &[usize]| fam.iter().any(|q| same_partition(p, q));
        let upward = fam.iter().all(|p| lattice.iter().all(|q| !refines(p, q) || member(q)));
        let meet = |p: &[usize], q: &[usize]| -> Vec<usize> {
            let pairs: Vec<(usize, usize)> = (0..p.len()).map(|a| (p[a], q[a])).collect();
            (0..p.len()).map(|a| pairs.iter().position(|&x| x == pairs[a]).unwrap()).collect()
        };
        let directed = fam.iter().all(|p| fam.iter().all(|q| member(&meet(p, q))));
        let equivariant = fam.iter().all(|p| m.elements().all(|q| member(&pull(m, p, q))));
        if upward && directed && equivariant {
            out.push(fam.into_iter().cloned().collect());
        }
    }
    out
}

pub fn to_congruence(m: &FiniteMonoid, p: &[usize]) -> RightCongruence {
    RightCongruence::from_labels(m, p).unwrap()
}

/// Subsets `A` whose whole orbit in the power set is continuous: for every
/// `B = q⁻¹A` and `p`, `{k : k⁻¹B = p⁻¹B}` is open.
pub fn continuous_power_points(m: &FiniteMonoid, t: &Topology) -> Vec<u64> {
    let n = m.order();
    let pre = |q: usize, a: u64| (0..n).filter(|&x| a >> m.mul(q, x) & 1 == 1).fold(0u64, |s, x| s | 1 << x);
    subsets(n)
        .filter(|&a| {
            (0..n).all(|q| {
                let b = pre(q, a);
                (0..n).all(|p| {
                    let clopen = (0..n).filter(|&k| pre(k, b) == pre(p, b)).fold(0u64, |s, k| s | 1 << k);
                    t.is_open(Subset(clopen))
                })
            })
        })
        .collect()
}

/// Right congruences whose quotient is continuous: every pullback is open
/// in the square.
pub fn continuous_quotients(m: &FiniteMonoid, t: &Topology) -> Vec<Vec<usize>> {
    right_congruences(m)
        .into_iter()
        .filter(|p| {
            m.elements().all(|q| {
                let s = pull(m, p, q);
                relation_open(t, |a, b| s[a] == s[b])
            })
        })
        .collect()
}

/// The topology generated by the continuous points of the power set.
pub fn action_topology(m: &FiniteMonoid, t: &Topology) -> Topology {
    let base: Vec<Subset> = continuous_power_points(m, t).into_iter().map(Subset).collect();
    Topology::generate(m.order(), &base).unwrap()
}

pub fn monoids(max: usize) -> Vec<FiniteMonoid> {
    topact::enumerate::monoids_up_to(max)
}

/// Every action of `m` on `{0..k}`, one per isomorphism class.
pub fn msets(m: &FiniteMonoid, k: usize) -> Vec<topact::action::MSet> {
    use std::collections::BTreeSet;
    let n = m.order();
    let others: Vec<usize> = m.elements().filter(|&a| a != m.identity()).collect();
    let maps = k.pow(k as u32);
    let decode = |mut code: usize| -> Vec<usize> {
        (0..k)
            .map(|_| {
                let v = code % k;
                code /= k;
                v
            })
            .collect()
    };
    let perms = permutations(k);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = maps.pow(others.len() as u32);
    for code in 0..total {
        let mut rows = vec![vec![0; n]; k];
        let mut c = code;
        for &a in &others {
            let f = decode(c % maps);
            c /= maps;
            for x in 0..k {
                rows[x][a] = f[x];
            }
        }
        for (x, row) in rows.iter_mut().enumerate() {
            row[m.identity()] = x;
        }
        let Ok(s) = topact::action::MSet::new(m.clone(), (0..k).map(|x| x.to_string()).collect(), rows.clone()) else {
            continue;
        };
        let canon = perms
            .iter()
            .map(|p| {
                let mut t = vec![vec![0; n]; k];
                for x in 0..k {
                    for a in 0..n {
                        t[p[x]][a] = p[rows[x][a]];
                    }
                }
                t
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(s);
        }
    }
    out
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..k {
            let mut q: Vec<usize> = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Each `{k : x·k = x·p}` is open.
pub fn action_continuous(s: &topact::action::MSet, t: &Topology) -> bool {
    let n = s.monoid().order();
    (0..s.size()).all(|x| {
        (0..n).all(|p| {
            let set = (0..n).filter(|&k| s.act(x, k) == s.act(x, p)).fold(0u64, |a, k| a | 1 << k);
            t.is_open(Subset(set))
        })
    })
}
