//! Named matroids with pinned element pairs and their expected partition counts.
//!
//! Element order of the spike family, shared by the transversal family: index 0 is the
//! tip `i = e1`, index 1 is `j = e2 + … + e_d`, then the legs `m = 2..=d` in turn,
//! each listing `k·e1 + e_m` for `k = 1..=p`.

mod golay;

pub use golay::{golay_codewords, golay_octads, GOLAY_BASIS, OCTAD_COUNT};

use num_bigint::BigInt;

use crate::arith::{binomial, pow, BigCount, BigRational};
use crate::enumerate::BasisPartitionCounts;
use crate::error::{Error, Result};
use crate::linalg::{is_prime, PrimeFieldMatrix, RationalMatrix};
use crate::matroid::{Derivation, ElementId, Matroid};
use crate::subset::SubsetMask;

/// Where an expected partition comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Published numbers the construction must reproduce.
    Published,
    /// Values obtained independently of enumeration (closed forms, hand counts).
    Derived,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Derived => "derived",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Expected {
    pub counts: BasisPartitionCounts,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub matroid: Matroid,
    pub i: ElementId,
    pub j: ElementId,
    pub expected: Option<Expected>,
    pub notes: String,
}

impl CatalogEntry {
    fn with_expected(mut self, c: [u64; 4], provenance: Provenance) -> Self {
        let d = self.matroid.full_rank();
        self.expected = Some(Expected {
            counts: BasisPartitionCounts::from_u64(self.i, self.j, d, c),
            provenance,
        });
        self
    }
}

fn spike_columns(p: u64, d: usize) -> Vec<Vec<i64>> {
    let unit = |m: usize| -> Vec<i64> { (0..d).map(|r| i64::from(r == m)).collect() };
    let mut cols = vec![unit(0), (0..d).map(|r| i64::from(r > 0)).collect()];
    for m in 1..d {
        for k in 1..=p as i64 {
            let mut v = unit(m);
            v[0] = k;
            cols.push(v);
        }
    }
    cols
}

fn check_family(p: u64, d: usize, what: &str) -> Result<()> {
    if d < 2 {
        return Err(Error::input(format!("{what} needs d ≥ 2, got {d}")));
    }
    if p < 1 {
        return Err(Error::input(format!("{what} needs a positive leg size")));
    }
    let n = 2 + (d as u64 - 1) * p;
    if n > crate::subset::MAX_GROUND as u64 {
        return Err(Error::Capacity {
            what: "ground set size",
            got: n as usize,
            limit: crate::subset::MAX_GROUND,
        });
    }
    Ok(())
}

/// The spike `M_p^d`: over GF(p) when `p` is prime, otherwise over the rationals.
pub fn spike(p: u64, d: usize) -> Result<CatalogEntry> {
    if is_prime(p) {
        spike_over(p, d, true)
    } else {
        spike_over(p, d, false)
    }
}

/// The same vectors read over the rationals, which represent `N_p^d`.
pub fn spike_rational(p: u64, d: usize) -> Result<CatalogEntry> {
    spike_over(p, d, false)
}

fn spike_over(p: u64, d: usize, prime_field: bool) -> Result<CatalogEntry> {
    check_family(p, d, "spike")?;
    let cols = spike_columns(p, d);
    let (matroid, field) = if prime_field {
        (
            Matroid::linear_gfp(PrimeFieldMatrix::new(p, d, &cols)?)?,
            format!("GF({p})"),
        )
    } else {
        (
            Matroid::linear_q(RationalMatrix::from_integers(d, &cols)?)?,
            "Q".to_string(),
        )
    };
    let entry = CatalogEntry {
        name: format!("spike-{p}-{d}"),
        matroid,
        i: 0,
        j: 1,
        expected: None,
        notes: format!("tip-and-legs spike with {p} points per leg over {field}"),
    };
    let closed = if prime_field {
        spike_closed_form(p, d)?
    } else {
        transversal_closed_form(p, d)?
    };
    Ok(CatalogEntry {
        expected: Some(Expected {
            counts: closed,
            provenance: Provenance::Derived,
        }),
        ..entry
    })
}

fn partition(d: usize, c: [BigCount; 4]) -> BasisPartitionCounts {
    let [s_both, s_i_only, s_j_only, s_neither] = c;
    BasisPartitionCounts {
        i: 0,
        j: 1,
        d,
        s_both,
        s_i_only,
        s_j_only,
        s_neither,
    }
}

/// Shared terms of both families: `(d−1)·p^{d−2}`, `p^{d−1}`, `(d−1)·C(p,2)·p^{d−2}`, and
/// the two-points-on-one-leg count `(d−1)(d−2)·C(p,2)·p^{d−3}` of `j`-only bases.
fn family_terms(p: u64, d: usize) -> [BigCount; 4] {
    let d64 = d as u64;
    let c2 = binomial(p, 2);
    let pw = |e: usize| pow(p, e as u32);
    let both = BigCount::from(d64 - 1) * pw(d - 2);
    let i_only = pw(d - 1);
    let neither = BigCount::from(d64 - 1) * &c2 * pw(d - 2);
    let two_on_leg = if d >= 3 {
        BigCount::from((d64 - 1) * (d64 - 2)) * &c2 * pw(d - 3)
    } else {
        BigCount::default()
    };
    [both, i_only, neither, two_on_leg]
}

/// Closed-form partition of the spike at its tip pair.
pub fn spike_closed_form(p: u64, d: usize) -> Result<BasisPartitionCounts> {
    check_family(p, d, "spike")?;
    let [both, i_only, neither, two_on_leg] = family_terms(p, d);
    let j_only = pow(p, d as u32 - 1) - pow(p, d as u32 - 2) + two_on_leg;
    Ok(partition(d, [both, i_only, j_only, neither]))
}

/// Closed-form partition of the transversal family at its pinned pair.
pub fn transversal_closed_form(m: u64, d: usize) -> Result<BasisPartitionCounts> {
    check_family(m, d, "transversal family")?;
    let [both, i_only, neither, two_on_leg] = family_terms(m, d);
    let j_only = pow(m, d as u32 - 1) + two_on_leg;
    Ok(partition(d, [both, i_only, j_only, neither]))
}

/// The unit-weight ratio of the spike, `(d² − 2d + 1) / (d² − 3d + 4)`.
pub fn spike_ratio(d: usize) -> BigRational {
    let d = BigInt::from(d);
    BigRational::new(&d * &d - 2 * &d + 1, &d * &d - 3 * &d + 4)
}

/// The transversal matroid `N_m^d` of `A_1 = E` and `A_k = {j} ∪ leg_k` for `k = 2..=d`.
pub fn transversal_family(m: u64, d: usize) -> Result<CatalogEntry> {
    check_family(m, d, "transversal family")?;
    let n = 2 + (d - 1) * m as usize;
    let mut sets = vec![(0..n).collect::<Vec<_>>()];
    for leg in 0..d - 1 {
        let start = 2 + leg * m as usize;
        let mut s = vec![1];
        s.extend(start..start + m as usize);
        sets.push(s);
    }
    Ok(CatalogEntry {
        name: format!("transversal-{m}-{d}"),
        matroid: Matroid::transversal(n, &sets)?,
        i: 0,
        j: 1,
        expected: Some(Expected {
            counts: transversal_closed_form(m, d)?,
            provenance: Provenance::Derived,
        }),
        notes: format!("transversal family with {} legs of {m} elements", d - 1),
    })
}

/// Triangles of the 5-simplex as edge-indicator vectors over GF(2).
pub fn example_simplicial() -> Result<CatalogEntry> {
    let edges: Vec<(usize, usize)> = (0..6)
        .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
        .collect();
    let edge_index = |a: usize, b: usize| edges.iter().position(|&e| e == (a, b)).unwrap();
    let mut columns = Vec::new();
    let mut triangles = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                let mut col = vec![0i64; edges.len()];
                for (x, y) in [(a, b), (a, c), (b, c)] {
                    col[edge_index(x, y)] = 1;
                }
                columns.push(col);
                triangles.push([a, b, c]);
            }
        }
    }
    let pos = |t: [usize; 3]| triangles.iter().position(|&x| x == t).unwrap();
    let entry = CatalogEntry {
        name: "simplicial".into(),
        matroid: Matroid::linear_gfp(PrimeFieldMatrix::new(2, edges.len(), &columns)?)?,
        i: pos([0, 1, 2]),
        j: pos([3, 4, 5]),
        expected: None,
        notes: "2-skeleton of the 5-simplex over GF(2); i = 123, j = 456".into(),
    };
    Ok(entry.with_expected([11664, 11640, 11640, 11664], Provenance::Published))
}

/// Edges of the graphic example: `u = 0`, `d = 1`, `v_k = k + 1`.
pub fn example_graph() -> (usize, Vec<(usize, usize)>) {
    let mut edges = vec![(0, 1)];
    for k in 1..=5 {
        edges.push((0, k + 1));
        edges.push((k + 1, 1));
    }
    edges.push((0, 7));
    (8, edges)
}

/// Rank-6 truncation of the cycle matroid of [`example_graph`]; `i = u–d`, `j = u–v6`.
pub fn example_graphic() -> Result<CatalogEntry> {
    let (v, edges) = example_graph();
    let matroid = Matroid::graphic(v, &edges)?.derive(Derivation::Truncate(6))?;
    let entry = CatalogEntry {
        name: "graphic".into(),
        i: 0,
        j: edges.len() - 1,
        matroid,
        expected: None,
        notes: "six-edge forests of the u–d graph with five u–v–d paths and a pendant u–v6".into(),
    };
    Ok(entry.with_expected([80, 32, 192, 80], Provenance::Published))
}

/// Elements `i = 0`, `j = 1`, `a1..a4 = 2..5`, `b1..b3 = 6..8`, `c1..c3 = 9..11`.
pub fn example_transversal() -> Result<CatalogEntry> {
    let sets = vec![
        (0..12).collect(),
        vec![1, 2, 3, 4, 5],
        vec![1, 9, 10, 11],
        vec![1, 6, 7, 8],
    ];
    let entry = CatalogEntry {
        name: "transversal".into(),
        matroid: Matroid::transversal(12, &sets)?,
        i: 0,
        j: 1,
        expected: None,
        notes: "transversal matroid of A1 = everything, A2 = {j, a*}, A3 = {j, c*}, A4 = {j, b*}"
            .into(),
    };
    Ok(entry.with_expected([33, 36, 114, 126], Provenance::Published))
}

/// Octads containing exactly one of `i` and `j`.
pub fn steiner_blocks(i: ElementId, j: ElementId) -> Result<Vec<SubsetMask>> {
    if i >= 24 || j >= 24 || i == j {
        return Err(Error::input(format!(
            "Steiner pair must be two distinct points of 0..24, got ({i}, {j})"
        )));
    }
    Ok(golay_octads()?
        .into_iter()
        .filter(|o| o.contains(i) != o.contains(j))
        .collect())
}

/// Rank-6 paving matroid on 24 points whose circuit-hyperplanes come from octads
/// separating `i` and `j`.
pub fn example_steiner(i: ElementId, j: ElementId) -> Result<CatalogEntry> {
    let blocks = steiner_blocks(i, j)?;
    let entry = CatalogEntry {
        name: "steiner".into(),
        matroid: Matroid::paving(24, 6, &blocks)?,
        i,
        j,
        expected: None,
        notes: format!(
            "paving matroid from the {} octads separating {i} and {j}",
            blocks.len()
        ),
    };
    Ok(entry.with_expected([7315, 22638, 22638, 72149], Provenance::Published))
}

/// Rows of the S_8 matrix over GF(2), as bit strings over the eight columns.
pub const S8_ROWS: [&str; 4] = ["10000111", "01001011", "00101101", "00011111"];

/// S_8 with the positively correlated pair: `i` is the all-ones column, `j` is `e4`.
pub fn s8() -> Result<CatalogEntry> {
    let columns: Vec<Vec<i64>> = (0..8)
        .map(|c| {
            S8_ROWS
                .iter()
                .map(|r| i64::from(r.as_bytes()[c] == b'1'))
                .collect()
        })
        .collect();
    let entry = CatalogEntry {
        name: "s8".into(),
        matroid: Matroid::linear_gfp(PrimeFieldMatrix::new(2, 4, &columns)?)?,
        i: 7,
        j: 3,
        expected: None,
        notes: "S_8 over GF(2); (i, j) corresponds to the tip pair of spike-2-4".into(),
    };
    Ok(entry.with_expected([12, 8, 16, 12], Provenance::Derived))
}

/// Names accepted by [`catalog_entry`] besides the parametrised `spike-P-D` and
/// `transversal-M-D`.
pub const CATALOG_NAMES: [&str; 5] = ["simplicial", "graphic", "transversal", "steiner", "s8"];

/// Looks up a catalog entry by name.
pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    match name {
        "simplicial" => example_simplicial(),
        "graphic" => example_graphic(),
        "transversal" => example_transversal(),
        "steiner" => example_steiner(0, 1),
        "s8" => s8(),
        _ => {
            let parts: Vec<&str> = name.split('-').collect();
            let parse = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| Error::input(format!("unknown catalog entry '{name}'")))
            };
            match parts.as_slice() {
                ["spike", p, d] => spike(parse(p)?, parse(d)? as usize),
                ["transversal", m, d] => transversal_family(parse(m)?, parse(d)? as usize),
                _ => Err(Error::input(format!(
                    "unknown catalog entry '{name}'; known: {}, spike-P-D, transversal-M-D",
                    CATALOG_NAMES.join(", ")
                ))),
            }
        }
    }
}

/// The standard catalog used by sweeps: the four examples, S_8, and small family members.
pub fn catalog() -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for name in CATALOG_NAMES {
        out.push(catalog_entry(name)?);
    }
    out.push(spike(2, 5)?);
    out.push(spike(3, 3)?);
    out.push(transversal_family(2, 6)?);
    out.push(transversal_family(3, 4)?);
    Ok(out)
}

#[cfg(test)]
mod tests;
