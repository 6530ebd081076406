//! Exact rank over GF(p) and over the rationals.
//!
//! Every matrix here is a list of column vectors; a linear matroid's elements are its
//! columns. Each field has a one-shot `rank(cols)` and an incremental eliminator used
//! along enumeration search paths: `try_push` reduces one more column against the
//! current echelon basis and keeps it only if it is independent, `pop` undoes the
//! last successful push.

mod gf2;
mod gfp;
mod rational;

pub use gf2::{Gf2Eliminator, Gf2Matrix};
pub use gfp::{GfpEliminator, PrimeFieldMatrix, MAX_PRIME};
pub use rational::{RationalEliminator, RationalMatrix};

use crate::subset::SubsetMask;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Rank over GF(p) of the selected columns.
pub fn rank_mod_p(matrix: &PrimeFieldMatrix, cols: SubsetMask) -> usize {
    matrix.rank(cols)
}

/// Exact rank over the rationals of the selected columns.
pub fn rank_rational(matrix: &RationalMatrix, cols: SubsetMask) -> usize {
    matrix.rank(cols)
}
