use super::{is_prime, Gf2Matrix};
use crate::error::{Error, Result};
use crate::subset::SubsetMask;

/// Moduli must stay below this so products fit comfortably and inverse tables stay small.
pub const MAX_PRIME: u64 = 1 << 16;

/// Matrix over GF(p), stored column by column with every entry reduced mod p.
///
/// For `p = 2` a word-packed copy is kept and [`PrimeFieldMatrix::rank`] uses it.
#[derive(Clone, Debug)]
pub struct PrimeFieldMatrix {
    p: u32,
    rows: usize,
    ncols: usize,
    data: Vec<u32>,
    inverses: Vec<u32>,
    packed: Option<Gf2Matrix>,
}

impl PrimeFieldMatrix {
    /// Entries may be any integers; they are reduced into `0..p`.
    pub fn new(p: u64, rows: usize, columns: &[Vec<i64>]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("modulus {p} is not prime")));
        }
        if p >= MAX_PRIME {
            return Err(Error::input(format!(
                "modulus {p} is too large (must be below {MAX_PRIME})"
            )));
        }
        let mut data = Vec::with_capacity(rows * columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::input(format!(
                    "column {c} has {} entries, expected {rows}",
                    col.len()
                )));
            }
            data.extend(col.iter().map(|&v| v.rem_euclid(p as i64) as u32));
        }
        let p32 = p as u32;
        let mut inverses = vec![0u32; p as usize];
        for a in 1..p32 {
            inverses[a as usize] = pow_mod(a, p32 - 2, p32);
        }
        let packed = (p == 2).then(|| {
            let cols: Vec<Vec<u32>> = (0..columns.len())
                .map(|c| data[c * rows..(c + 1) * rows].to_vec())
                .collect();
            Gf2Matrix::from_columns(rows, &cols)
        });
        Ok(PrimeFieldMatrix {
            p: p32,
            rows,
            ncols: columns.len(),
            data,
            inverses,
            packed,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p as u64
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, c: usize) -> &[u32] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn packed(&self) -> Option<&Gf2Matrix> {
        self.packed.as_ref()
    }

    pub fn inverses(&self) -> &[u32] {
        &self.inverses
    }

    /// Rank of the selected columns; word-packed elimination when `p = 2`.
    pub fn rank(&self, cols: SubsetMask) -> usize {
        match &self.packed {
            Some(m) => m.rank(cols),
            None => self.rank_generic(cols),
        }
    }

    /// Rank through the generic modular path regardless of `p`.
    pub fn rank_generic(&self, cols: SubsetMask) -> usize {
        let mut elim = GfpEliminator::new(self.p, self.rows);
        cols.iter()
            .filter(|&c| elim.try_push(self.column(c), &self.inverses))
            .count()
    }
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut acc = 1u64;
    let mut b = base as u64 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc as u32
}

#[inline]
fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    // a, b < p < 2^16: the wrapped difference has its top bit set iff a < b.
    let t = a.wrapping_sub(b);
    t.wrapping_add(p & 0u32.wrapping_sub(t >> 31))
}

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    (a * b) % p
}

/// Incremental echelon basis over GF(p); stored vectors are normalised so their
/// pivot entry is 1.
#[derive(Clone, Debug)]
pub struct GfpEliminator {
    p: u32,
    dim: usize,
    basis: Vec<u32>,
    pivots: Vec<usize>,
    scratch: Vec<u32>,
}

impl GfpEliminator {
    pub fn new(p: u32, dim: usize) -> Self {
        GfpEliminator {
            p,
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
            scratch: vec![0; dim],
        }
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn try_push(&mut self, column: &[u32], inverses: &[u32]) -> bool {
        let (p, n) = (self.p, self.dim);
        self.scratch.copy_from_slice(column);
        for (k, &piv) in self.pivots.iter().enumerate() {
            let c = self.scratch[piv];
            if c != 0 {
                let row = &self.basis[k * n..(k + 1) * n];
                for (s, &b) in self.scratch.iter_mut().zip(row) {
                    *s = sub_mod(*s, mul_mod(c, b, p), p);
                }
            }
        }
        match self.scratch.iter().position(|&x| x != 0) {
            Some(piv) => {
                let inv = inverses[self.scratch[piv] as usize];
                for s in self.scratch.iter_mut() {
                    *s = mul_mod(*s, inv, p);
                }
                self.basis.extend_from_slice(&self.scratch);
                self.pivots.push(piv);
                true
            }
            None => false,
        }
    }

    pub fn pop(&mut self) {
        if self.pivots.pop().is_some() {
            self.basis.truncate(self.pivots.len() * self.dim);
        }
    }
}
