mod common;

use common::*;
use topact::category::{categories_equivalent, morita_fingerprint, SearchCap, Verdict};
use topact::congruence::enumerate_filters;
use topact::invariants::{is_atomic, principal_site, principal_site_unmarked};

#[test]
fn concrete_marks_agree_with_categorical_ones() {
    let mut total = 0;
    for m in monoids(4) {
        for f in enumerate_filters(&m).unwrap() {
            let concrete = principal_site(&f).unwrap();
            let categorical = principal_site_unmarked(&f).unwrap();
            assert_eq!(concrete.epi, categorical.epi);
            assert_eq!(concrete.strict_epi, categorical.strict_epi);
            assert_eq!(concrete.mono, categorical.mono);
            total += 1;
        }
    }
    assert_eq!(total, 217);
}

#[test]
fn principal_sites_have_terminal_object_and_joint_covers() {
    for m in monoids(4) {
        for f in enumerate_filters(&m).unwrap() {
            let site = principal_site(&f).unwrap();
            assert!(site.has_terminal());
            assert!(site.joint_covering());
            assert!(site.strict_joint_covering());
        }
    }
}

#[test]
fn strict_joint_covering_follows_from_atomicity() {
    for m in monoids(4) {
        for f in enumerate_filters(&m).unwrap() {
            let site = principal_site(&f).unwrap();
            if is_atomic(&f).unwrap().holds {
                assert!(site.strict_joint_covering());
                assert!(site.epi.iter().all(|&e| e));
            }
        }
    }
}

#[test]
fn site_is_equivalent_to_itself_relabeled() {
    for m in monoids(3) {
        for f in enumerate_filters(&m).unwrap() {
            let site = principal_site(&f).unwrap();
            let n = site.num_objects();
            let perm: Vec<usize> = (0..n).rev().collect();
            let arrows: Vec<usize> = (0..site.num_arrows()).rev().collect();
            let other = site.relabeled(&perm, &arrows);
            assert_eq!(morita_fingerprint(&site), morita_fingerprint(&other));
            assert!(!matches!(categories_equivalent(&site, &other, SearchCap::default()), Verdict::No(_)));
        }
    }
}

#[test]
fn quotient_filter_on_left_zeros_matches_b2() {
    let lz = lz();
    let tau = tau_a();
    let f = topact::congruence::CongruenceFilter::open_congruences(&lz, &tau).unwrap();
    let g = topact::congruence::CongruenceFilter::all(&b2()).unwrap();
    let (s, t) = (principal_site(&f).unwrap(), principal_site(&g).unwrap());
    assert_eq!(morita_fingerprint(&s), morita_fingerprint(&t));
    assert!(matches!(categories_equivalent(&s, &t, SearchCap::default()), Verdict::Yes(_)));
}
