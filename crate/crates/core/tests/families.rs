//! Spike and transversal families: closed forms against enumeration.

use matcorr::constructions::{
    spike, spike_closed_form, spike_ratio, transversal_closed_form, transversal_family,
};
use matcorr::correlation::{ratio_of, Ratio};
use matcorr::enumerate::{basis_partition, SearchOptions};
use matcorr::BigRational;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn spike_closed_forms_match_enumeration() {
    for p in [2u64, 3] {
        for d in 2..=5 {
            let e = spike(p, d).unwrap();
            let got =
                basis_partition(&e.matroid, e.i, e.j, &SearchOptions::with_workers(2)).unwrap();
            let closed = spike_closed_form(p, d).unwrap();
            assert_eq!(got, closed, "p = {p}, d = {d}");
            let ratio = ratio_of(&got.to_sums()).unwrap();
            assert_eq!(ratio, Ratio::Value(spike_ratio(d)), "p = {p}, d = {d}");
            let dd = d as i64;
            assert_eq!(
                spike_ratio(d),
                q(dd * dd - 2 * dd + 1, dd * dd - 3 * dd + 4)
            );
        }
    }
}

#[test]
fn transversal_closed_forms_match_enumeration() {
    for m in [2u64, 3] {
        for d in 2..=5 {
            let e = transversal_family(m, d).unwrap();
            let got = basis_partition(&e.matroid, e.i, e.j, &SearchOptions::default()).unwrap();
            assert_eq!(
                got,
                transversal_closed_form(m, d).unwrap(),
                "m = {m}, d = {d}"
            );
        }
    }
}

#[test]
fn spike_ratio_peaks_at_eight_sevenths() {
    let (best_d, best) =
        (2..=100)
            .map(|d| (d, spike_ratio(d)))
            .fold(
                (0, q(0, 1)),
                |acc, (d, r)| if r > acc.1 { (d, r) } else { acc },
            );
    assert_eq!((best_d, best), (5, q(8, 7)));
    assert_eq!(spike_ratio(4), q(9, 8));
}
