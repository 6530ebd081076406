use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::BigRational;
use crate::error::{Error, Result};
use crate::subset::SubsetMask;

/// Matrix over the rationals, stored by columns.
///
/// Each column is also kept scaled to integers (times the lcm of its denominators);
/// scaling a column by a nonzero constant does not change any rank, so all
/// elimination runs on integers.
#[derive(Clone, Debug)]
pub struct RationalMatrix {
    rows: usize,
    columns: Vec<Vec<BigRational>>,
    integral: Vec<Vec<BigInt>>,
}

impl RationalMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<BigRational>>) -> Result<Self> {
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::input(format!(
                    "column {c} has {} entries, expected {rows}",
                    col.len()
                )));
            }
        }
        let integral = columns.iter().map(|col| clear_denominators(col)).collect();
        Ok(RationalMatrix {
            rows,
            columns,
            integral,
        })
    }

    pub fn from_integers(rows: usize, columns: &[Vec<i64>]) -> Result<Self> {
        let cols = columns
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&v| BigRational::from_integer(BigInt::from(v)))
                    .collect()
            })
            .collect();
        Self::new(rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[BigRational] {
        &self.columns[c]
    }

    pub fn integral_column(&self, c: usize) -> &[BigInt] {
        &self.integral[c]
    }

    /// Rank of the selected columns by fraction-free (Bareiss) elimination.
    pub fn rank(&self, cols: SubsetMask) -> usize {
        let mut m: Vec<Vec<BigInt>> = cols.iter().map(|c| self.integral[c].clone()).collect();
        bareiss_rank(&mut m)
    }
}

fn clear_denominators(col: &[BigRational]) -> Vec<BigInt> {
    let lcm = col
        .iter()
        .fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    col.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
}

/// Row rank of `m` (rows are the vectors). Entries after step `r` are `(r+1)`-minors
/// of the input, so every division is exact.
pub(crate) fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for k in col + 1..ncols {
                let v = (&pivot_row[col] * &row[k] - &factor * &pivot_row[k]) / &prev;
                row[k] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Incremental fraction-free echelon basis over the rationals. Stored vectors are
/// primitive integer vectors (content divided out).
#[derive(Clone, Debug, Default)]
pub struct RationalEliminator {
    basis: Vec<(Vec<BigInt>, usize)>,
}

impl RationalEliminator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn try_push(&mut self, column: &[BigInt]) -> bool {
        let mut v = column.to_vec();
        for (b, piv) in &self.basis {
            if v[*piv].is_zero() {
                continue;
            }
            let c = v[*piv].clone();
            let lead = &b[*piv];
            for (x, y) in v.iter_mut().zip(b) {
                *x = lead * &*x - &c * y;
            }
            make_primitive(&mut v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(piv) => {
                make_primitive(&mut v);
                self.basis.push((v, piv));
                true
            }
            None => false,
        }
    }

    pub fn pop(&mut self) {
        self.basis.pop();
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && g.abs() != BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;

    #[test]
    fn identity_and_duplicates() {
        let id = RationalMatrix::from_integers(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
            .unwrap();
        assert_eq!(id.rank(SubsetMask::full(3)), 3);
        let dup = RationalMatrix::from_integers(2, &[vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(dup.rank(SubsetMask::full(2)), 1);
    }

    #[test]
    fn fractional_entries() {
        let q = |s: &str| parse_rational(s).unwrap();
        let m = RationalMatrix::new(
            2,
            vec![
                vec![q("1/2"), q("1/3")],
                vec![q("3"), q("2")],
                vec![q("1"), q("0")],
            ],
        )
        .unwrap();
        assert_eq!(m.rank(SubsetMask::from_bits(0b011)), 1);
        assert_eq!(m.rank(SubsetMask::from_bits(0b101)), 2);
    }

    #[test]
    fn eliminator_matches_bareiss_on_rank_deficient_input() {
        let cols = vec![
            vec![2, 4, 6, 0],
            vec![1, 0, 1, 1],
            vec![3, 4, 7, 1],
            vec![0, 0, 0, 5],
        ];
        let m = RationalMatrix::from_integers(4, &cols).unwrap();
        let mut e = RationalEliminator::new();
        let pushed = (0..4).filter(|&c| e.try_push(m.integral_column(c))).count();
        assert_eq!(pushed, 3);
        assert_eq!(m.rank(SubsetMask::full(4)), 3);
    }
}
