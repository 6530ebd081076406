use num_bigint::BigInt;

use super::{Derivation, Graph, Matroid, Paving, Repr, SetFamily};
use crate::linalg::{
    Gf2Eliminator, Gf2Matrix, GfpEliminator, PrimeFieldMatrix, RationalEliminator, RationalMatrix,
};
use crate::subset::SubsetMask;

/// A stack of elements kept independent.
///
/// `try_push(e)` adds `e` and returns `true` if the stack stays independent;
/// otherwise it leaves the state untouched and returns `false`. `pop` removes the
/// most recently pushed element. Callers never push an element already on the stack.
pub trait IndependenceState {
    fn try_push(&mut self, e: usize) -> bool;
    fn pop(&mut self);
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub(super) fn for_node(m: &Matroid) -> Box<dyn IndependenceState + '_> {
    for_repr(&m.0.repr, m.0.n, m.0.rank)
}

pub(super) fn for_repr(repr: &Repr, n: usize, rank: usize) -> Box<dyn IndependenceState + '_> {
    match repr {
        Repr::LinearGfp(m) => match m.packed() {
            Some(packed) => Box::new(Gf2State::new(packed)),
            None => Box::new(GfpState::new(m)),
        },
        Repr::LinearQ(m) => Box::new(RationalState {
            m,
            elim: RationalEliminator::new(),
        }),
        Repr::Graphic(g) => Box::new(ForestState::new(g)),
        Repr::Transversal(f) => Box::new(MatchingState::new(f)),
        Repr::Uniform => Box::new(UniformState { r: rank, len: 0 }),
        Repr::Paving(p) => Box::new(PavingState {
            p,
            stack: vec![SubsetMask::EMPTY],
        }),
        Repr::Derived {
            op,
            inner,
            keep,
            contracted_basis,
        } => match op {
            Derivation::Dual => Box::new(RankState {
                n,
                inner,
                stack: vec![SubsetMask::EMPTY],
            }),
            Derivation::Delete(_) => Box::new(RelabelState {
                inner: inner.independence_state(),
                keep,
                base: 0,
            }),
            Derivation::Contract(_) => {
                let mut st = inner.independence_state();
                for e in contracted_basis.iter() {
                    let pushed = st.try_push(e);
                    debug_assert!(pushed);
                }
                let base = st.len();
                Box::new(RelabelState {
                    inner: st,
                    keep,
                    base,
                })
            }
            Derivation::Truncate(k) => Box::new(TruncateState {
                inner: inner.independence_state(),
                k: *k,
            }),
            Derivation::FreeExtend(_) => Box::new(FreeExtendState {
                inner: inner.independence_state(),
                base_n: inner.ground_size(),
                d: inner.full_rank(),
                stack: Vec::new(),
            }),
            Derivation::Parallel { element, .. } => Box::new(ParallelState {
                inner: inner.independence_state(),
                base_n: inner.ground_size(),
                element: *element,
                used: SubsetMask::EMPTY,
                stack: Vec::new(),
            }),
            Derivation::DirectSum(other) => Box::new(DirectSumState {
                left: inner.independence_state(),
                right: other.independence_state(),
                split: inner.ground_size(),
                stack: Vec::new(),
            }),
        },
    }
}

struct Gf2State<'a> {
    m: &'a Gf2Matrix,
    elim: Gf2Eliminator,
}

impl<'a> Gf2State<'a> {
    fn new(m: &'a Gf2Matrix) -> Self {
        Gf2State {
            m,
            elim: Gf2Eliminator::new(m.words()),
        }
    }
}

impl IndependenceState for Gf2State<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        self.elim.try_push(self.m.column(e))
    }
    fn pop(&mut self) {
        self.elim.pop()
    }
    fn len(&self) -> usize {
        self.elim.len()
    }
}

struct GfpState<'a> {
    m: &'a PrimeFieldMatrix,
    elim: GfpEliminator,
}

impl<'a> GfpState<'a> {
    fn new(m: &'a PrimeFieldMatrix) -> Self {
        GfpState {
            m,
            elim: GfpEliminator::new(m.modulus() as u32, m.rows()),
        }
    }
}

impl IndependenceState for GfpState<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        self.elim.try_push(self.m.column(e), self.m.inverses())
    }
    fn pop(&mut self) {
        self.elim.pop()
    }
    fn len(&self) -> usize {
        self.elim.len()
    }
}

struct RationalState<'a> {
    m: &'a RationalMatrix,
    elim: RationalEliminator,
}

impl IndependenceState for RationalState<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        let col: &[BigInt] = self.m.integral_column(e);
        self.elim.try_push(col)
    }
    fn pop(&mut self) {
        self.elim.pop()
    }
    fn len(&self) -> usize {
        self.elim.len()
    }
}

/// Union-find by size without path compression, so unions can be undone.
struct ForestState<'a> {
    g: &'a Graph,
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl<'a> ForestState<'a> {
    fn new(g: &'a Graph) -> Self {
        ForestState {
            g,
            parent: (0..g.vertices).collect(),
            size: vec![1; g.vertices],
            history: Vec::new(),
        }
    }

    fn root(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }
}

impl IndependenceState for ForestState<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        let (u, v) = self.g.edges[e];
        let (mut a, mut b) = (self.root(u), self.root(v));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push((b, a));
        true
    }
    fn pop(&mut self) {
        if let Some((child, root)) = self.history.pop() {
            self.parent[child] = child;
            self.size[root] -= self.size[child];
        }
    }
    fn len(&self) -> usize {
        self.history.len()
    }
}

/// Elements matched into distinct sets by augmenting paths.
struct MatchingState<'a> {
    f: &'a SetFamily,
    owner: Vec<Option<usize>>,
    history: Vec<Vec<Option<usize>>>,
    seen: Vec<bool>,
}

impl<'a> MatchingState<'a> {
    fn new(f: &'a SetFamily) -> Self {
        MatchingState {
            f,
            owner: vec![None; f.sets.len()],
            history: Vec::new(),
            seen: vec![false; f.sets.len()],
        }
    }

    fn augment(&mut self, e: usize) -> bool {
        for &s in &self.f.membership[e] {
            if self.seen[s] {
                continue;
            }
            self.seen[s] = true;
            let free = match self.owner[s] {
                None => true,
                Some(other) => self.augment(other),
            };
            if free {
                self.owner[s] = Some(e);
                return true;
            }
        }
        false
    }
}

impl IndependenceState for MatchingState<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        let snapshot = self.owner.clone();
        self.seen.iter_mut().for_each(|x| *x = false);
        if self.augment(e) {
            self.history.push(snapshot);
            true
        } else {
            false
        }
    }
    fn pop(&mut self) {
        if let Some(prev) = self.history.pop() {
            self.owner = prev;
        }
    }
    fn len(&self) -> usize {
        self.history.len()
    }
}

struct UniformState {
    r: usize,
    len: usize,
}

impl IndependenceState for UniformState {
    fn try_push(&mut self, _e: usize) -> bool {
        if self.len < self.r {
            self.len += 1;
            true
        } else {
            false
        }
    }
    fn pop(&mut self) {
        self.len -= 1;
    }
    fn len(&self) -> usize {
        self.len
    }
}

struct PavingState<'a> {
    p: &'a Paving,
    stack: Vec<SubsetMask>,
}

impl IndependenceState for PavingState<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        let cur = *self.stack.last().expect("stack holds the empty set");
        let next = cur.with(e);
        let size = next.len();
        let ok = size < self.p.d || (size == self.p.d && !self.p.covered(next, e));
        if ok {
            self.stack.push(next);
        }
        ok
    }
    fn pop(&mut self) {
        if self.stack.len() > 1 {
            self.stack.pop();
        }
    }
    fn len(&self) -> usize {
        self.stack.len() - 1
    }
}

/// Fallback through the rank oracle (used for duals).
struct RankState<'a> {
    n: usize,
    inner: &'a Matroid,
    stack: Vec<SubsetMask>,
}

impl IndependenceState for RankState<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        let next = self.stack.last().expect("non-empty").with(e);
        // Dual rank: |S| − r(E) + r(E∖S).
        let r = next.len() + self.inner.rank_unchecked(next.complement(self.n))
            - self.inner.full_rank();
        if r == next.len() {
            self.stack.push(next);
            true
        } else {
            false
        }
    }
    fn pop(&mut self) {
        if self.stack.len() > 1 {
            self.stack.pop();
        }
    }
    fn len(&self) -> usize {
        self.stack.len() - 1
    }
}

/// Deletion and contraction: renumbered elements forwarded to the operand, which for
/// contraction starts with a basis of the contracted set already pushed.
struct RelabelState<'a> {
    inner: Box<dyn IndependenceState + 'a>,
    keep: &'a [usize],
    base: usize,
}

impl IndependenceState for RelabelState<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        self.inner.try_push(self.keep[e])
    }
    fn pop(&mut self) {
        self.inner.pop()
    }
    fn len(&self) -> usize {
        self.inner.len() - self.base
    }
}

struct TruncateState<'a> {
    inner: Box<dyn IndependenceState + 'a>,
    k: usize,
}

impl IndependenceState for TruncateState<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        self.inner.len() < self.k && self.inner.try_push(e)
    }
    fn pop(&mut self) {
        self.inner.pop()
    }
    fn len(&self) -> usize {
        self.inner.len()
    }
}

/// `S ∪ T` (T new) is independent iff `S` is and `|S ∪ T| ≤ d`.
struct FreeExtendState<'a> {
    inner: Box<dyn IndependenceState + 'a>,
    base_n: usize,
    d: usize,
    stack: Vec<bool>,
}

impl IndependenceState for FreeExtendState<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        if self.stack.len() >= self.d {
            return false;
        }
        if e < self.base_n {
            if !self.inner.try_push(e) {
                return false;
            }
            self.stack.push(true);
        } else {
            self.stack.push(false);
        }
        true
    }
    fn pop(&mut self) {
        if let Some(true) = self.stack.pop() {
            self.inner.pop();
        }
    }
    fn len(&self) -> usize {
        self.stack.len()
    }
}

struct ParallelState<'a> {
    inner: Box<dyn IndependenceState + 'a>,
    base_n: usize,
    element: usize,
    used: SubsetMask,
    stack: Vec<usize>,
}

impl IndependenceState for ParallelState<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        let orig = if e < self.base_n { e } else { self.element };
        if self.used.contains(orig) || !self.inner.try_push(orig) {
            return false;
        }
        self.used.insert(orig);
        self.stack.push(orig);
        true
    }
    fn pop(&mut self) {
        if let Some(orig) = self.stack.pop() {
            self.used.remove(orig);
            self.inner.pop();
        }
    }
    fn len(&self) -> usize {
        self.stack.len()
    }
}

struct DirectSumState<'a> {
    left: Box<dyn IndependenceState + 'a>,
    right: Box<dyn IndependenceState + 'a>,
    split: usize,
    stack: Vec<bool>,
}

impl IndependenceState for DirectSumState<'_> {
    fn try_push(&mut self, e: usize) -> bool {
        let ok = if e < self.split {
            self.left.try_push(e)
        } else {
            self.right.try_push(e - self.split)
        };
        if ok {
            self.stack.push(e < self.split);
        }
        ok
    }
    fn pop(&mut self) {
        match self.stack.pop() {
            Some(true) => self.left.pop(),
            Some(false) => self.right.pop(),
            None => {}
        }
    }
    fn len(&self) -> usize {
        self.stack.len()
    }
}
