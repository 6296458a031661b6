mod common;

use common::*;
use topact::congruence::{enumerate_congruences, enumerate_filters, CongruenceFilter};
use topact::reflection::is_topological_filter;

fn labels_of(f: &CongruenceFilter) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = f.members.iter().map(|r| r.labels().to_vec()).collect();
    out.sort();
    out
}

fn canonical(p: &[usize]) -> Vec<usize> {
    let mut seen = Vec::new();
    p.iter()
        .map(|c| match seen.iter().position(|s| s == c) {
            Some(i) => i,
            None => {
                seen.push(*c);
                seen.len() - 1
            }
        })
        .collect()
}

#[test]
fn lattice_matches_partition_scan() {
    for m in monoids(4) {
        let mut ours: Vec<Vec<usize>> =
            enumerate_congruences(&m, 1000).unwrap().iter().map(|r| canonical(r.labels())).collect();
        let mut brute = right_congruences(&m);
        ours.sort();
        brute.sort();
        assert_eq!(ours, brute);
    }
}

#[test]
fn filters_match_subset_scan() {
    for m in monoids(3) {
        let mut ours: Vec<Vec<Vec<usize>>> = enumerate_filters(&m)
            .unwrap()
            .iter()
            .map(|f| {
                let mut v: Vec<Vec<usize>> = labels_of(f).iter().map(|p| canonical(p)).collect();
                v.sort();
                v
            })
            .collect();
        let mut brute: Vec<Vec<Vec<usize>>> = filters(&m)
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect();
        ours.sort();
        brute.sort();
        assert_eq!(ours, brute, "monoid {:?}", m.rows());
    }
}

#[test]
fn filter_counts_by_order() {
    let counts: Vec<usize> = (1..=4)
        .map(|n| monoids(n).iter().filter(|m| m.order() == n).map(|m| enumerate_filters(m).unwrap().len()).sum())
        .collect();
    assert_eq!(counts, vec![1, 4, 22, 190]);
}

#[test]
fn least_member_is_two_sided() {
    for m in monoids(4) {
        for f in enumerate_filters(&m).unwrap() {
            let r0 = f.least();
            assert!(r0.is_two_sided(&m));
            assert!(f.members.iter().all(|r| r0.refines(r)));
        }
    }
}

#[test]
fn every_filter_is_topological() {
    for m in monoids(4) {
        for f in enumerate_filters(&m).unwrap() {
            let check = is_topological_filter(&f).unwrap();
            assert!(check.holds && check.witness.is_none());
        }
    }
}

#[test]
fn open_congruences_are_continuous_quotients() {
    for m in monoids(3) {
        for t in all_topologies(m.order()) {
            let f = CongruenceFilter::open_congruences(&m, &t).unwrap();
            let mut ours: Vec<Vec<usize>> = labels_of(&f).iter().map(|p| canonical(p)).collect();
            let mut brute = continuous_quotients(&m, &t);
            ours.sort();
            brute.sort();
            assert_eq!(ours, brute);
        }
    }
}
