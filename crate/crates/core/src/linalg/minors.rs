use serde::Serialize;

use super::matrix::PolyMatrix;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// k-subsets of `0..n` in colexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let c = self.current.as_mut().unwrap();
        let k = c.len();
        let mut advanced = false;
        for i in 0..k {
            let limit = if i + 1 < k { c[i + 1] } else { self.n };
            if c[i] + 1 < limit {
                c[i] += 1;
                for (j, slot) in c.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

/// Determinant by cofactor expansion along rows, memoised over column
/// subsets. Costs O(2^k k) ring multiplications.
pub fn poly_determinant(m: &PolyMatrix) -> Result<MultiPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let k = m.rows();
    if k == 0 {
        // Entries carry the variable count; an empty matrix has none to read.
        return Err(Error::Invalid("empty polynomial matrix has no variable set".into()));
    }
    assert!(k < usize::BITS as usize, "matrix too large for subset expansion");
    let nv = m[(0, 0)].num_vars();
    let mut table: Vec<Option<MultiPoly>> = vec![None; 1 << k];
    table[0] = Some(MultiPoly::one(nv));
    for mask in 1usize..(1 << k) {
        let t = mask.count_ones() as usize;
        let row = t - 1;
        let mut acc = MultiPoly::zero(nv);
        let mut pos = 0;
        for c in 0..k {
            if mask & (1 << c) == 0 {
                continue;
            }
            let entry = &m[(row, c)];
            let rest = table[mask & !(1 << c)].as_ref().expect("smaller subsets first");
            if !entry.is_zero() && !rest.is_zero() {
                let term = entry * rest;
                acc = if (row + pos).is_multiple_of(2) { &acc + &term } else { &acc - &term };
            }
            pos += 1;
        }
        table[mask] = Some(acc);
    }
    Ok(table.pop().flatten().expect("full mask"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(skip)]
    pub det: MultiPoly,
}

/// Lazily enumerated k×k minors: row sets in colex order, and for each row
/// set the column sets in colex order.
pub struct Minors<'a> {
    m: &'a PolyMatrix,
    k: usize,
    row_sets: Combinations,
    current_rows: Option<Vec<usize>>,
    col_sets: Combinations,
}

pub fn minor_dets(m: &PolyMatrix, k: usize) -> Result<Minors<'_>> {
    if k > m.rows().min(m.cols()) {
        return Err(Error::MinorSize {
            k,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut row_sets = Combinations::new(m.rows(), k);
    let current_rows = row_sets.next();
    Ok(Minors {
        m,
        k,
        row_sets,
        current_rows,
        col_sets: Combinations::new(m.cols(), k),
    })
}

impl Iterator for Minors<'_> {
    type Item = Minor;

    fn next(&mut self) -> Option<Minor> {
        loop {
            let rows = self.current_rows.as_ref()?;
            match self.col_sets.next() {
                Some(cols) => {
                    let det = if self.k == 0 {
                        let nv = if self.m.rows() > 0 && self.m.cols() > 0 {
                            self.m[(0, 0)].num_vars()
                        } else {
                            0
                        };
                        MultiPoly::one(nv)
                    } else {
                        poly_determinant(&self.m.submatrix(rows, &cols)).expect("square")
                    };
                    return Some(Minor {
                        rows: rows.clone(),
                        cols,
                        det,
                    });
                }
                None => {
                    self.current_rows = self.row_sets.next();
                    self.col_sets = Combinations::new(self.m.cols(), self.k);
                }
            }
        }
    }
}
