//! The extended binary Golay code and its octads, the blocks of S(5, 8, 24).
//!
//! The code is the length-24 binary lexicode of minimum distance 8: scanning words
//! in increasing integer order and keeping each word at distance ≥ 8 from all kept
//! words yields a linear [24, 12, 8] code. The rows below are the lexicographically
//! first basis of that code (each row is the smallest codeword not in the span of
//! the previous rows); a test regenerates them from scratch.

use crate::error::{Error, Result};
use crate::subset::SubsetMask;

/// Generator rows; bit `k` is coordinate `k`.
pub const GOLAY_BASIS: [u32; 12] = [
    0x0000ff, 0x000f0f, 0x003333, 0x005555, 0x009669, 0x030356, 0x050563, 0x09063a, 0x111178,
    0x21121d, 0x41144e, 0x811724,
];

pub const OCTAD_COUNT: usize = 759;

/// All 4096 codewords, in Gray-code order of the generator coefficients.
pub fn golay_codewords() -> Vec<u32> {
    let mut out = Vec::with_capacity(1 << 12);
    let mut word = 0u32;
    out.push(word);
    for k in 1u32..1 << 12 {
        word ^= GOLAY_BASIS[k.trailing_zeros() as usize];
        out.push(word);
    }
    out
}

/// The 759 weight-8 codewords as 8-element blocks of `{0, …, 23}`, sorted by bit value.
pub fn golay_octads() -> Result<Vec<SubsetMask>> {
    let mut octads: Vec<u32> = golay_codewords()
        .into_iter()
        .filter(|w| w.count_ones() == 8)
        .collect();
    octads.sort_unstable();
    if octads.len() != OCTAD_COUNT {
        return Err(Error::Construction(format!(
            "Golay code produced {} octads instead of {OCTAD_COUNT}",
            octads.len()
        )));
    }
    Ok(octads
        .into_iter()
        .map(|w| SubsetMask::from_bits(u128::from(w)))
        .collect())
}
