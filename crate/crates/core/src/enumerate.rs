//! Exhaustive enumeration of small structures.

use std::collections::BTreeSet;

use crate::monoid::{FiniteMonoid, SemigroupHom};

/// Largest order for which monoids are enumerated.
pub const MAX_ENUMERATED_ORDER: usize = 4;

/// Permutation images of a table, keeping the identity at index 0.
fn relabel(table: &[Vec<usize>], perm: &[usize]) -> Vec<Vec<usize>> {
    let n = table.len();
    let mut out = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            out[perm[a]][perm[b]] = perm[table[a][b]];
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// The lexicographically least table among relabelings fixing the identity at 0.
pub fn canonical_table(m: &FiniteMonoid) -> Vec<Vec<usize>> {
    let n = m.order();
    let e = m.identity();
    let mut order: Vec<usize> = vec![e];
    order.extend(m.elements().filter(|&a| a != e));
    let base: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| order.iter().position(|&x| x == m.mul(order[i], order[j])).unwrap()).collect())
        .collect();
    permutations(n - 1)
        .into_iter()
        .map(|p| {
            let mut perm = vec![0];
            perm.extend(p.into_iter().map(|i| i + 1));
            relabel(&base, &perm)
        })
        .min()
        .unwrap()
}

pub fn are_isomorphic(a: &FiniteMonoid, b: &FiniteMonoid) -> bool {
    a.order() == b.order() && canonical_table(a) == canonical_table(b)
}

/// One monoid per isomorphism class of the given order, identity at index 0,
/// in increasing order of canonical table.
pub fn monoids_up_to_iso(n: usize) -> Vec<FiniteMonoid> {
    assert!((1..=MAX_ENUMERATED_ORDER).contains(&n), "order {n} is outside 1..=4");
    let free = (n - 1) * (n - 1);
    let mut found: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut cells = vec![0usize; free];
    loop {
        let mut table = vec![vec![0; n]; n];
        table[0] = (0..n).collect();
        for (a, row) in table.iter_mut().enumerate() {
            row[0] = a;
        }
        for (i, &v) in cells.iter().enumerate() {
            table[1 + i / (n - 1)][1 + i % (n - 1)] = v;
        }
        if let Ok(m) = FiniteMonoid::new((0..n).map(|i| i.to_string()).collect(), table, 0) {
            found.insert(canonical_table(&m));
        }
        let mut i = 0;
        while i < free {
            cells[i] += 1;
            if cells[i] < n {
                break;
            }
            cells[i] = 0;
            i += 1;
        }
        if i == free {
            break;
        }
    }
    found.into_iter().map(|t| FiniteMonoid::new((0..n).map(|i| i.to_string()).collect(), t, 0).unwrap()).collect()
}

/// Every monoid of order at most `n`, up to isomorphism.
pub fn monoids_up_to(n: usize) -> Vec<FiniteMonoid> {
    (1..=n).flat_map(monoids_up_to_iso).collect()
}

/// Every semigroup homomorphism `a → b`.
pub fn semigroup_homs(a: &FiniteMonoid, b: &FiniteMonoid) -> Vec<SemigroupHom> {
    let (n, k) = (a.order(), b.order());
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        if let Ok(h) = SemigroupHom::new(a.clone(), b.clone(), map.clone()) {
            out.push(h);
        }
        let mut i = 0;
        while i < n {
            map[i] += 1;
            if map[i] < k {
                break;
            }
            map[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monoid_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| monoids_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 35]);
    }

    #[test]
    fn order_two_is_c2_and_b2() {
        let two = monoids_up_to_iso(2);
        assert!(two.iter().any(|m| are_isomorphic(m, &FiniteMonoid::cyclic(2))));
        assert!(two.iter().any(|m| are_isomorphic(m, &FiniteMonoid::left_zeros(&["e"]))));
    }

    #[test]
    fn isomorphism_ignores_labels() {
        let m = FiniteMonoid::left_zeros(&["x", "y"]);
        let swapped = FiniteMonoid::new(
            vec!["y".into(), "1".into(), "x".into()],
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![2, 2, 2]],
            1,
        )
        .unwrap();
        assert!(are_isomorphic(&m, &swapped));
        assert!(!are_isomorphic(&m, &m.opposite()));
    }

    #[test]
    fn hom_counts() {
        let c2 = FiniteMonoid::cyclic(2);
        assert_eq!(semigroup_homs(&c2, &c2).len(), 2);
    }
}
