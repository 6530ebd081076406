//! Matroids as immutable rank-oracle values.
//!
//! A [`Matroid`] wraps one of several representations (linear over GF(p) or the
//! rationals, graphic, transversal, uniform, paving) or a derived matroid built from
//! other handles. Handles are cheap to clone and safe to share across threads.
//!
//! Every representation also provides an incremental [`IndependenceState`]: a stack
//! of elements that is kept independent, with `try_push`/`pop`. Enumeration walks
//! the search tree through it so each tree edge costs one incremental step.

mod json;
mod state;

pub use json::MatroidDoc;
pub use state::IndependenceState;

use std::fmt;
use std::sync::Arc;

use crate::arith::BigRational;
use crate::error::{Error, Result};
use crate::linalg::{PrimeFieldMatrix, RationalMatrix};
use crate::subset::{SubsetMask, MAX_GROUND};

/// Index of a ground-set element, `0..n`.
pub type ElementId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementStatus {
    Loop,
    Coloop,
    Free,
    Ordinary,
}

impl fmt::Display for ElementStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementStatus::Loop => "loop",
            ElementStatus::Coloop => "coloop",
            ElementStatus::Free => "free",
            ElementStatus::Ordinary => "ordinary",
        })
    }
}

/// Operators producing a new matroid from an existing one.
#[derive(Clone, Debug)]
pub enum Derivation {
    Dual,
    /// Delete a set of elements; survivors are renumbered densely in ascending order.
    Delete(SubsetMask),
    /// Contract a set of elements; survivors are renumbered as for deletion.
    Contract(SubsetMask),
    /// Cap the rank at `k`.
    Truncate(usize),
    /// Append `t` new free elements (indices `n..n+t`).
    FreeExtend(usize),
    /// Append `copies` new elements parallel to `element`.
    Parallel {
        element: ElementId,
        copies: usize,
    },
    /// Append the other matroid's elements after this one's.
    DirectSum(Matroid),
}

#[derive(Clone, Debug)]
pub(crate) struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub(crate) struct SetFamily {
    pub sets: Vec<Vec<usize>>,
    /// For each element, the indices of the sets containing it.
    pub membership: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub(crate) struct Paving {
    pub d: usize,
    pub blocks: Vec<SubsetMask>,
    /// For each element, the blocks containing it.
    pub by_element: Vec<Vec<usize>>,
}

impl Paving {
    /// Whether `s` lies inside some block; only blocks through `anchor ∈ s` are scanned.
    pub fn covered(&self, s: SubsetMask, anchor: usize) -> bool {
        self.by_element[anchor]
            .iter()
            .any(|&b| s.is_subset(self.blocks[b]))
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Repr {
    LinearGfp(PrimeFieldMatrix),
    LinearQ(RationalMatrix),
    Graphic(Graph),
    Transversal(SetFamily),
    Uniform,
    Paving(Paving),
    Derived {
        op: Derivation,
        inner: Matroid,
        /// New index → old index, for deletion and contraction.
        keep: Vec<usize>,
        /// A basis of the contracted set.
        contracted_basis: SubsetMask,
    },
}

struct Node {
    repr: Repr,
    n: usize,
    rank: usize,
}

#[derive(Clone)]
pub struct Matroid(Arc<Node>);

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matroid({}, n={}, rank={})",
            self.kind(),
            self.0.n,
            self.0.rank
        )
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::Capacity {
            what: "ground set size",
            got: n,
            limit: MAX_GROUND,
        });
    }
    Ok(())
}

impl Matroid {
    fn build(repr: Repr, n: usize) -> Result<Self> {
        check_ground(n)?;
        let mut node = Node { repr, n, rank: 0 };
        node.rank = match &node.repr {
            Repr::Derived {
                op: Derivation::Dual,
                inner,
                ..
            } => n - inner.full_rank(),
            _ => greedy_rank(&node, SubsetMask::full(n)),
        };
        Ok(Matroid(Arc::new(node)))
    }

    /// Linear matroid of the columns over GF(p).
    pub fn linear_gfp(matrix: PrimeFieldMatrix) -> Result<Self> {
        let n = matrix.cols();
        Self::build(Repr::LinearGfp(matrix), n)
    }

    /// Linear matroid of the columns over the rationals.
    pub fn linear_q(matrix: RationalMatrix) -> Result<Self> {
        let n = matrix.cols();
        Self::build(Repr::LinearQ(matrix), n)
    }

    /// Cycle matroid of a multigraph; self-loops are loops of the matroid.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::input(format!(
                    "edge {k} = ({u}, {v}) references a vertex outside 0..{vertices}"
                )));
            }
        }
        Self::build(
            Repr::Graphic(Graph {
                vertices,
                edges: edges.to_vec(),
            }),
            edges.len(),
        )
    }

    /// Transversal matroid: independent sets are the partial transversals of `sets`.
    pub fn transversal(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        check_ground(n)?;
        let mut membership = vec![Vec::new(); n];
        for (k, set) in sets.iter().enumerate() {
            for &e in set {
                if e >= n {
                    return Err(Error::input(format!(
                        "set {k} contains element {e} outside 0..{n}"
                    )));
                }
                if !membership[e].contains(&k) {
                    membership[e].push(k);
                }
            }
        }
        Self::build(
            Repr::Transversal(SetFamily {
                sets: sets.to_vec(),
                membership,
            }),
            n,
        )
    }

    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::input(format!("uniform rank {r} exceeds size {n}")));
        }
        check_ground(n)?;
        Ok(Matroid(Arc::new(Node {
            repr: Repr::Uniform,
            n,
            rank: r,
        })))
    }

    /// Boolean matroid `U_{d,d}`.
    pub fn boolean(d: usize) -> Result<Self> {
        Self::uniform(d, d)
    }

    /// Paving matroid of rank `d` whose dependent `d`-subsets are exactly those inside
    /// one of `blocks`. Blocks need at least `d` elements and may pairwise share at
    /// most `d − 2`.
    pub fn paving(n: usize, d: usize, blocks: &[SubsetMask]) -> Result<Self> {
        check_ground(n)?;
        if d > n {
            return Err(Error::input(format!("paving rank {d} exceeds size {n}")));
        }
        let full = SubsetMask::full(n);
        for (k, b) in blocks.iter().enumerate() {
            if !b.is_subset(full) {
                return Err(Error::input(format!("block {k} leaves the ground set")));
            }
            if b.len() < d {
                return Err(Error::input(format!(
                    "block {k} has {} elements, fewer than the rank {d}",
                    b.len()
                )));
            }
        }
        for (a, x) in blocks.iter().enumerate() {
            for (b, y) in blocks.iter().enumerate().skip(a + 1) {
                if x.intersection(*y).len() + 2 > d {
                    return Err(Error::input(format!(
                        "blocks {a} and {b} share {} elements; at most {} allowed",
                        x.intersection(*y).len(),
                        d.saturating_sub(2)
                    )));
                }
            }
        }
        let mut by_element = vec![Vec::new(); n];
        for (k, b) in blocks.iter().enumerate() {
            for e in b.iter() {
                by_element[e].push(k);
            }
        }
        let has_base = d == 0 || {
            // Rank is d unless every d-subset is covered, which the intersection bound
            // rules out except when the whole ground set is one block.
            !blocks.contains(&full)
        };
        Ok(Matroid(Arc::new(Node {
            repr: Repr::Paving(Paving {
                d,
                blocks: blocks.to_vec(),
                by_element,
            }),
            n,
            rank: if has_base { d } else { d - 1 },
        })))
    }

    /// Applies a derivation, returning a new handle.
    pub fn derive(&self, op: Derivation) -> Result<Self> {
        let n = self.ground_size();
        let full = SubsetMask::full(n);
        let (new_n, keep, contracted_basis) = match &op {
            Derivation::Dual => (n, Vec::new(), SubsetMask::EMPTY),
            Derivation::Delete(s) | Derivation::Contract(s) => {
                if !s.is_subset(full) {
                    return Err(Error::input(format!(
                        "set {s} is not inside the ground set 0..{n}"
                    )));
                }
                let keep: Vec<usize> = s.complement(n).iter().collect();
                let basis = match op {
                    Derivation::Contract(_) => self.basis_of(*s),
                    _ => SubsetMask::EMPTY,
                };
                (keep.len(), keep, basis)
            }
            Derivation::Truncate(k) => {
                if *k > self.full_rank() {
                    return Err(Error::input(format!(
                        "cannot truncate a rank-{} matroid to rank {k}",
                        self.full_rank()
                    )));
                }
                (n, Vec::new(), SubsetMask::EMPTY)
            }
            Derivation::FreeExtend(t) => (n + t, Vec::new(), SubsetMask::EMPTY),
            Derivation::Parallel { element, copies } => {
                if *element >= n {
                    return Err(Error::input(format!("element {element} outside 0..{n}")));
                }
                if *copies == 0 {
                    return Err(Error::input("parallel copy count must be at least 1"));
                }
                (n + copies, Vec::new(), SubsetMask::EMPTY)
            }
            Derivation::DirectSum(other) => {
                (n + other.ground_size(), Vec::new(), SubsetMask::EMPTY)
            }
        };
        Self::build(
            Repr::Derived {
                op,
                inner: self.clone(),
                keep,
                contracted_basis,
            },
            new_n,
        )
    }

    pub fn dual(&self) -> Result<Self> {
        self.derive(Derivation::Dual)
    }

    pub fn ground_size(&self) -> usize {
        self.0.n
    }

    pub fn full_rank(&self) -> usize {
        self.0.rank
    }

    pub fn ground(&self) -> SubsetMask {
        SubsetMask::full(self.0.n)
    }

    pub fn kind(&self) -> &'static str {
        match &self.0.repr {
            Repr::LinearGfp(_) => "linear_gfp",
            Repr::LinearQ(_) => "linear_q",
            Repr::Graphic(_) => "graphic",
            Repr::Transversal(_) => "transversal",
            Repr::Uniform => "uniform",
            Repr::Paving(_) => "paving",
            Repr::Derived { .. } => "derived",
        }
    }

    pub(crate) fn repr(&self) -> &Repr {
        &self.0.repr
    }

    /// For deletions and contractions, the old → new index map of the operand's
    /// elements (`None` for removed ones).
    pub fn element_map(&self) -> Option<Vec<Option<ElementId>>> {
        match &self.0.repr {
            Repr::Derived {
                op: Derivation::Delete(_) | Derivation::Contract(_),
                inner,
                keep,
                ..
            } => {
                let mut map = vec![None; inner.ground_size()];
                for (new, &old) in keep.iter().enumerate() {
                    map[old] = Some(new);
                }
                Some(map)
            }
            _ => None,
        }
    }

    fn check_subset(&self, s: SubsetMask) -> Result<()> {
        if !s.is_subset(self.ground()) {
            return Err(Error::input(format!(
                "set {s} is not inside the ground set 0..{}",
                self.0.n
            )));
        }
        Ok(())
    }

    fn check_element(&self, e: ElementId) -> Result<()> {
        if e >= self.0.n {
            return Err(Error::input(format!(
                "element {e} outside the ground set 0..{}",
                self.0.n
            )));
        }
        Ok(())
    }

    /// Rank of `s`.
    pub fn rank(&self, s: SubsetMask) -> Result<usize> {
        self.check_subset(s)?;
        Ok(self.rank_unchecked(s))
    }

    pub(crate) fn rank_unchecked(&self, s: SubsetMask) -> usize {
        match &self.0.repr {
            Repr::Derived {
                op: Derivation::Dual,
                inner,
                ..
            } => s.len() + inner.rank_unchecked(s.complement(self.0.n)) - inner.full_rank(),
            _ => greedy_rank(&self.0, s),
        }
    }

    pub fn is_independent(&self, s: SubsetMask) -> Result<bool> {
        Ok(self.rank(s)? == s.len())
    }

    /// A maximal independent subset of `s`, chosen greedily in ascending order.
    pub fn basis_of(&self, s: SubsetMask) -> SubsetMask {
        let mut st = self.independence_state();
        s.iter().filter(|&e| st.try_push(e)).collect()
    }

    /// All `e` with `rank(s ∪ e) = rank(s)`.
    pub fn closure(&self, s: SubsetMask) -> Result<SubsetMask> {
        self.check_subset(s)?;
        let r = self.rank_unchecked(s);
        Ok((0..self.0.n)
            .filter(|&e| s.contains(e) || self.rank_unchecked(s.with(e)) == r)
            .collect())
    }

    pub fn element_status(&self, e: ElementId) -> Result<ElementStatus> {
        self.check_element(e)?;
        let d = self.full_rank();
        if self.rank_unchecked(SubsetMask::singleton(e)) == 0 {
            return Ok(ElementStatus::Loop);
        }
        if self.rank_unchecked(self.ground().without(e)) + 1 == d {
            return Ok(ElementStatus::Coloop);
        }
        if self.extends_every_small_independent(e) {
            Ok(ElementStatus::Free)
        } else {
            Ok(ElementStatus::Ordinary)
        }
    }

    /// Every independent `(d−1)`-subset `J` of `E∖e` has `J ∪ e` independent. Smaller
    /// independent sets extend to such a `J` inside `E∖e` when `e` is not a coloop,
    /// so checking size `d−1` suffices.
    fn extends_every_small_independent(&self, e: ElementId) -> bool {
        let d = self.full_rank();
        if d == 0 {
            return false;
        }
        let mut st = self.independence_state();
        let others: Vec<usize> = self.ground().without(e).iter().collect();
        fn walk(
            st: &mut dyn IndependenceState,
            others: &[usize],
            from: usize,
            target: usize,
            e: usize,
        ) -> bool {
            if st.len() == target {
                if st.try_push(e) {
                    st.pop();
                    return true;
                }
                return false;
            }
            for k in from..others.len() {
                if st.len() + (others.len() - k) < target {
                    break;
                }
                if st.try_push(others[k]) {
                    let ok = walk(st, others, k + 1, target, e);
                    st.pop();
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
        walk(st.as_mut(), &others, 0, d - 1, e)
    }

    /// Loop-free, coloop-free elements: the ones correlation statements range over.
    pub fn eligible_elements(&self) -> Vec<ElementId> {
        (0..self.0.n)
            .filter(|&e| {
                matches!(
                    self.element_status(e),
                    Ok(ElementStatus::Free | ElementStatus::Ordinary)
                )
            })
            .collect()
    }

    /// Incremental independence state for this matroid, starting empty.
    pub fn independence_state(&self) -> Box<dyn IndependenceState + '_> {
        state::for_node(self)
    }

    /// Serialisable description in the matroid file format.
    pub fn to_doc(&self) -> MatroidDoc {
        json::to_doc(self)
    }

    pub fn from_doc(doc: &MatroidDoc) -> Result<Self> {
        json::from_doc(doc)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatroidDoc =
            serde_json::from_str(text).map_err(|e| Error::input(format!("matroid JSON: {e}")))?;
        Self::from_doc(&doc)
    }

    /// Linear matroid over the rationals from integer columns.
    pub fn linear_q_integers(rows: usize, columns: &[Vec<i64>]) -> Result<Self> {
        Self::linear_q(RationalMatrix::from_integers(rows, columns)?)
    }

    pub fn linear_q_rationals(rows: usize, columns: Vec<Vec<BigRational>>) -> Result<Self> {
        Self::linear_q(RationalMatrix::new(rows, columns)?)
    }
}

fn greedy_rank(node: &Node, s: SubsetMask) -> usize {
    let mut st = state::for_repr(&node.repr, node.n, node.rank);
    s.iter().filter(|&e| st.try_push(e)).count()
}
