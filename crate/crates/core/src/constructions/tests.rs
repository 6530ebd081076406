use super::*;
use crate::arith::int_rational;
use crate::enumerate::{basis_partition, SearchOptions};
use crate::ElementStatus;

/// Rank of integer vectors modulo `p` (or over Q when `p == 0`, using large-prime
/// arithmetic, exact for the small entries used here), by plain Gaussian elimination.
#[allow(clippy::needless_range_loop)]
fn rank_mod(vectors: &[Vec<i64>], p: i64) -> usize {
    let p = if p == 0 { 1_000_000_007 } else { p };
    let mut rows: Vec<Vec<i64>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = modpow(rows[rank][c], p - 2, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % p;
                for k in 0..width {
                    rows[r][k] = (rows[r][k] - f * rows[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn modpow(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Partition of the pair (0, 1) by testing every d-subset of the columns.
fn brute_partition(cols: &[Vec<i64>], d: usize, p: i64) -> [u64; 4] {
    let n = cols.len();
    let mut c = [0u64; 4];
    for bits in 0u64..1 << n {
        if bits.count_ones() as usize != d {
            continue;
        }
        let chosen: Vec<Vec<i64>> = (0..n)
            .filter(|k| bits >> k & 1 == 1)
            .map(|k| cols[k].clone())
            .collect();
        if rank_mod(&chosen, p) == d {
            let (a, b) = (bits & 1 == 1, bits & 2 == 2);
            c[match (a, b) {
                (true, true) => 0,
                (true, false) => 1,
                (false, true) => 2,
                (false, false) => 3,
            }] += 1;
        }
    }
    c
}

fn counts(c: &BasisPartitionCounts) -> [u64; 4] {
    c.as_array().map(|v| u64::try_from(v).unwrap())
}

#[test]
fn spike_closed_form_matches_brute_force_oracle() {
    for p in [2u64, 3] {
        for d in 2..=4 {
            let closed = spike_closed_form(p, d).unwrap();
            let brute = brute_partition(&spike_columns(p, d), d, p as i64);
            assert_eq!(counts(&closed), brute, "p={p} d={d}");
        }
    }
}

#[test]
fn rational_spike_matches_transversal_closed_form() {
    for m in [2u64, 3, 4] {
        for d in 2..=4 {
            let closed = transversal_closed_form(m, d).unwrap();
            let brute = brute_partition(&spike_columns(m, d), d, 0);
            assert_eq!(counts(&closed), brute, "m={m} d={d}");
        }
    }
}

#[test]
fn frozen_closed_form_values() {
    assert_eq!(counts(&spike_closed_form(2, 4).unwrap()), [12, 8, 16, 12]);
    assert_eq!(spike_closed_form(2, 5).unwrap().s_both, 32u32.into());
    assert_eq!(
        transversal_closed_form(4, 4).unwrap().s_i_only,
        64u32.into()
    );
    assert_eq!(
        counts(&transversal_closed_form(2, 6).unwrap()),
        [80, 32, 192, 80]
    );
    // d = 2: no leg pairs, so the j-only count is p − 1 for the spike and p for N.
    assert_eq!(counts(&spike_closed_form(3, 2).unwrap()), [1, 3, 2, 3]);
    assert_eq!(
        counts(&transversal_closed_form(3, 2).unwrap()),
        [1, 3, 3, 3]
    );
}

#[test]
fn spike_ratio_values_and_maximum() {
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    assert_eq!(spike_ratio(2), q(1, 2));
    assert_eq!(spike_ratio(3), int_rational(1));
    assert_eq!(spike_ratio(4), q(9, 8));
    assert_eq!(spike_ratio(5), q(8, 7));
    let best = (2..=100)
        .max_by(|&a, &b| spike_ratio(a).cmp(&spike_ratio(b)))
        .unwrap();
    assert_eq!(best, 5);
    for p in [2u64, 3, 5] {
        for d in 2..=6 {
            let c = spike_closed_form(p, d).unwrap().to_sums();
            let ratio = (&c.s_both * &c.s_neither) / (&c.s_i_only * &c.s_j_only);
            assert_eq!(ratio, spike_ratio(d), "p={p} d={d}");
        }
    }
}

#[test]
fn spike_shapes_and_elements() {
    let s = spike(2, 5).unwrap();
    assert_eq!((s.matroid.ground_size(), s.matroid.full_rank()), (10, 5));
    assert!(s
        .matroid
        .is_independent([0, 1].into_iter().collect())
        .unwrap());
    assert_eq!(s.matroid.kind(), "linear_gfp");
    assert_eq!(spike(4, 3).unwrap().matroid.kind(), "linear_q");
    assert!(spike(2, 1).is_err());
    let m24 = spike(2, 4).unwrap().matroid;
    assert_eq!(m24.element_status(0).unwrap(), ElementStatus::Ordinary);
    // Leg L_2 = {e1, 1e1+e2, 2e1+e2} over GF(2): 2e1+e2 = e2.
    let leg: SubsetMask = [2, 3].into_iter().collect();
    assert_eq!(m24.closure(leg).unwrap(), [0, 2, 3].into_iter().collect());
    let m33 = spike(3, 3).unwrap().matroid;
    let leg: SubsetMask = [2, 3].into_iter().collect();
    assert_eq!(m33.closure(leg).unwrap().len(), 4);
}

#[test]
fn spike_contracting_the_pair_counts_both_class() {
    for (p, d) in [(2u64, 4usize), (3, 3), (2, 5)] {
        let s = spike(p, d).unwrap();
        let pair: SubsetMask = [0, 1].into_iter().collect();
        let minor = s.matroid.derive(Derivation::Contract(pair)).unwrap();
        let b = crate::enumerate::enumerate_bases(&minor, &SearchOptions::default()).unwrap();
        assert_eq!(
            BigCount::from(b.len()),
            BigCount::from(d as u64 - 1) * pow(p, d as u32 - 2)
        );
    }
}

#[test]
fn families_match_enumeration_on_small_cases() {
    let o = SearchOptions::with_workers(2);
    for d in 2..=4 {
        for p in [2u64, 3] {
            let s = spike(p, d).unwrap();
            let got = basis_partition(&s.matroid, s.i, s.j, &o).unwrap();
            assert_eq!(got, s.expected.unwrap().counts, "spike p={p} d={d}");
            let t = transversal_family(p, d).unwrap();
            let got = basis_partition(&t.matroid, t.i, t.j, &o).unwrap();
            assert_eq!(got, t.expected.unwrap().counts, "N m={p} d={d}");
        }
    }
}

#[test]
fn s8_matches_spike_2_4() {
    let e = s8().unwrap();
    assert_eq!((e.matroid.ground_size(), e.matroid.full_rank()), (8, 4));
    let got = basis_partition(&e.matroid, e.i, e.j, &SearchOptions::default()).unwrap();
    assert_eq!(counts(&got), [12, 8, 16, 12]);
    assert_eq!(got.total(), 48u32.into());
}

#[test]
fn small_examples_reproduce_published_counts() {
    let o = SearchOptions::default();
    for e in [example_graphic().unwrap(), example_transversal().unwrap()] {
        let got = basis_partition(&e.matroid, e.i, e.j, &o).unwrap();
        let exp = e.expected.unwrap();
        assert_eq!(exp.provenance, Provenance::Published);
        assert_eq!(got, exp.counts, "{}", e.name);
    }
}

#[test]
fn transversal_hand_count_of_both_class() {
    // j represents A2, A3 or A4; the other two sets take one element each.
    assert_eq!(4 * 3 + 4 * 3 + 3 * 3, 33);
    let e = example_transversal().unwrap();
    assert_eq!(e.expected.unwrap().counts.s_both, 33u32.into());
}

#[test]
fn graphic_minor_shape() {
    let (v, edges) = example_graph();
    let g = Matroid::graphic(v, &edges).unwrap();
    let minor = g
        .derive(Derivation::Delete(SubsetMask::singleton(11)))
        .unwrap()
        .derive(Derivation::Contract(SubsetMask::singleton(0)))
        .unwrap();
    assert_eq!((minor.ground_size(), minor.full_rank()), (10, 5));
}

#[test]
fn simplicial_rank_by_independent_elimination() {
    let e = example_simplicial().unwrap();
    assert_eq!(e.matroid.ground_size(), 20);
    assert_eq!(e.matroid.full_rank(), 10);
    assert_eq!((e.i, e.j), (0, 19));
}

#[test]
fn octad_design_properties() {
    let octads = golay_octads().unwrap();
    assert_eq!(octads.len(), 759);
    assert!(octads.iter().all(|o| o.len() == 8));
    for p in 0..24 {
        assert_eq!(octads.iter().filter(|o| o.contains(p)).count(), 253);
    }
    for (a, b) in [(0, 1), (5, 17), (22, 23)] {
        let both = octads
            .iter()
            .filter(|o| o.contains(a) && o.contains(b))
            .count();
        assert_eq!(both, 77);
    }
    for (x, a) in octads.iter().enumerate() {
        for b in &octads[x + 1..] {
            assert!(matches!(a.intersection(*b).len(), 0 | 2 | 4));
        }
    }
    // Every 5-subset lies in exactly one octad: the C(8,5) subsets per octad are
    // distinct and their number matches C(24,5).
    assert_eq!(759 * 56, 42504);
}

#[test]
fn steiner_block_count_and_pair_validation() {
    assert_eq!(steiner_blocks(0, 1).unwrap().len(), 352);
    assert_eq!(steiner_blocks(7, 19).unwrap().len(), 352);
    assert!(steiner_blocks(3, 3).is_err());
    assert!(steiner_blocks(0, 24).is_err());
    // C(24,6) minus the C(8,6) = 28 six-subsets of each block.
    assert_eq!(134_596 - 352 * 28, 124_740);
    let e = example_steiner(0, 1).unwrap();
    let block = steiner_blocks(0, 1).unwrap()[0];
    let six: SubsetMask = block.iter().take(6).collect();
    assert_eq!(e.matroid.rank(six).unwrap(), 5);
}

#[test]
fn catalog_lookup() {
    assert_eq!(catalog_entry("spike-3-4").unwrap().name, "spike-3-4");
    assert_eq!(
        catalog_entry("transversal-2-6")
            .unwrap()
            .matroid
            .ground_size(),
        12
    );
    assert!(matches!(catalog_entry("nope"), Err(Error::Input(_))));
    assert!(catalog_entry("spike-x-4").is_err());
    let names: Vec<String> = catalog().unwrap().into_iter().map(|e| e.name).collect();
    assert!(names.contains(&"steiner".to_string()));
}

#[test]
fn catalog_entries_export_to_json() {
    for e in [
        s8().unwrap(),
        example_transversal().unwrap(),
        example_graphic().unwrap(),
    ] {
        let text = serde_json::to_string(&e.matroid.to_doc()).unwrap();
        let back = Matroid::from_json(&text).unwrap();
        let a = basis_partition(&e.matroid, e.i, e.j, &SearchOptions::default()).unwrap();
        let b = basis_partition(&back, e.i, e.j, &SearchOptions::default()).unwrap();
        assert_eq!(a, b);
    }
}
