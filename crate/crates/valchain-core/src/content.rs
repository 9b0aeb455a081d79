//! Content of finitely presented modules over the valuation ring of the base
//! field, presented as cokernels of matrices with integrally-valued entries.
//! Over a valuation ring a minimal-valuation pivot divides every other entry,
//! so Gaussian elimination reaches a diagonal form whose entry valuations sum
//! to the content.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElem, ValuedField};
use crate::value::Value;

/// A presentation of coker(matrix): rows index generators, columns index
/// relations. All entries must lie in the valuation ring (v ≥ 0).
#[derive(Debug, Clone, PartialEq)]
pub struct FpModulePresentation {
    pub field: ValuedField,
    pub rows: usize,
    pub entries: Vec<Vec<FieldElem>>,
}

impl FpModulePresentation {
    /// Builds a presentation; the row count is taken from the matrix shape.
    /// A module with no relations is passed as rows > 0 with zero columns.
    pub fn new(field: ValuedField, rows: usize, entries: Vec<Vec<FieldElem>>) -> Result<Self> {
        if entries.len() != rows {
            return Err(Error::InvalidPresentation);
        }
        let cols = entries.first().map(Vec::len).unwrap_or(0);
        for row in &entries {
            if row.len() != cols {
                return Err(Error::InvalidPresentation);
            }
            for e in row {
                match field.vk(e) {
                    Value::Infinity => {}
                    v => {
                        if v.try_cmp(&Value::zero())? == core::cmp::Ordering::Less {
                            return Err(Error::InvalidPresentation);
                        }
                    }
                }
            }
        }
        Ok(FpModulePresentation { field, rows, entries })
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map(Vec::len).unwrap_or(0)
    }

    /// Block-diagonal direct sum with another presentation over the same field.
    pub fn direct_sum(&self, other: &FpModulePresentation) -> FpModulePresentation {
        let rows = self.rows + other.rows;
        let cols_a = self.cols();
        let cols_b = other.cols();
        let mut entries = Vec::with_capacity(rows);
        for r in 0..self.rows {
            let mut row = self.entries[r].clone();
            row.extend((0..cols_b).map(|_| self.field.zero()));
            entries.push(row);
        }
        for r in 0..other.rows {
            let mut row: Vec<FieldElem> = (0..cols_a).map(|_| self.field.zero()).collect();
            row.extend(other.entries[r].iter().cloned());
            entries.push(row);
        }
        FpModulePresentation { field: self.field, rows, entries }
    }
}

/// Measures coker(matrix): the sum of the valuations of the diagonal entries
/// after reduction, with each generator missed by every relation contributing
/// Infinity (a free summand).
pub fn content(m: &FpModulePresentation) -> Result<Value> {
    let field = m.field;
    let mut mat = m.entries.clone();
    let mut total = Value::zero();

    loop {
        let rows = mat.len();
        let cols = mat.first().map(Vec::len).unwrap_or(0);
        if rows == 0 {
            break;
        }
        if cols == 0 {
            // Remaining generators are free.
            return Ok(Value::Infinity);
        }
        // Minimal-valuation pivot, ties at the lowest (row, col) index.
        let mut pivot: Option<(usize, usize, Value)> = None;
        for (r, row) in mat.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                let v = field.vk(e);
                if v == Value::Infinity {
                    continue;
                }
                let better = match &pivot {
                    None => true,
                    Some((_, _, best)) => v.try_cmp(best)? == core::cmp::Ordering::Less,
                };
                if better {
                    pivot = Some((r, c, v));
                }
            }
        }
        let Some((pr, pc, pv)) = pivot else {
            // All remaining entries vanish: every remaining generator is free.
            return Ok(Value::Infinity);
        };
        total = total.try_add(&pv)?;

        // Eliminate the pivot column from other rows and the pivot row from
        // other columns; the pivot divides everything, so quotients stay in K°.
        let pivot_val = mat[pr][pc].clone();
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = mat[r][pc].div(&pivot_val);
            if factor.is_zero() {
                continue;
            }
            for c in 0..cols {
                let sub = factor.mul(&mat[pr][c]);
                let t = mat[r][c].sub(&sub);
                mat[r][c] = t;
            }
        }
        // Drop the pivot row and column; after the elimination the module
        // splits off K°/(pivot).
        mat.remove(pr);
        for row in mat.iter_mut() {
            row.remove(pc);
        }
    }
    Ok(total)
}

/// Content of the block-diagonal sum of the two presentations. By additivity
/// this must equal content(a) + content(b); callers use it as a cross-check.
pub fn content_additive_check(
    a: &FpModulePresentation,
    b: &FpModulePresentation,
) -> Result<Value> {
    content(&a.direct_sum(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_elem;
    use crate::sample::Sampler;
    use alloc::vec;

    fn q5() -> ValuedField {
        ValuedField::PAdicRationals(5)
    }

    fn pres(rows: usize, m: &[&[i64]]) -> FpModulePresentation {
        let field = q5();
        let entries = m
            .iter()
            .map(|row| row.iter().map(|&x| rat_elem(x, 1)).collect())
            .collect();
        FpModulePresentation::new(field, rows, entries).unwrap()
    }

    #[test]
    fn diagonal_content_sums_valuations() {
        let m = pres(2, &[&[5, 0], &[0, 25]]);
        assert_eq!(content(&m).unwrap(), Value::int(3));
    }

    #[test]
    fn unit_pivot_collapses_a_row() {
        let m = pres(2, &[&[5, 1], &[0, 5]]);
        assert_eq!(content(&m).unwrap(), Value::int(2));
    }

    #[test]
    fn free_summand_is_infinite() {
        let m = pres(2, &[&[5], &[0]]);
        assert_eq!(content(&m).unwrap(), Value::Infinity);
        // A relation matrix of zeros leaves everything free.
        let z = pres(1, &[&[0]]);
        assert_eq!(content(&z).unwrap(), Value::Infinity);
    }

    #[test]
    fn no_generators_means_zero() {
        let field = q5();
        let m = FpModulePresentation::new(field, 0, vec![]).unwrap();
        assert_eq!(content(&m).unwrap(), Value::zero());
    }

    #[test]
    fn rejects_entries_outside_the_ring() {
        let field = q5();
        let bad = FpModulePresentation::new(field, 1, vec![vec![rat_elem(1, 5)]]);
        assert_eq!(bad, Err(Error::InvalidPresentation));
        let ragged =
            FpModulePresentation::new(field, 2, vec![vec![rat_elem(5, 1)], vec![]]);
        assert_eq!(ragged, Err(Error::InvalidPresentation));
    }

    #[test]
    fn direct_sum_adds_contents() {
        let a = pres(1, &[&[5]]);
        let b = pres(1, &[&[25]]);
        assert_eq!(content_additive_check(&a, &b).unwrap(), Value::int(3));
        let free = pres(2, &[&[5], &[0]]);
        assert_eq!(content_additive_check(&a, &free).unwrap(), Value::Infinity);
    }

    #[test]
    fn unimodular_operations_preserve_content() {
        // Multiply rows/columns through small unit-determinant integer moves
        // and check the content is unchanged.
        let field = q5();
        let mut s = Sampler::new(17);
        for _ in 0..40 {
            let rows = 2 + s.below(2) as usize;
            let cols = 2 + s.below(2) as usize;
            let entries: Vec<Vec<FieldElem>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| {
                            let e = s.below(3);
                            let mut x = 1i64;
                            for _ in 0..e {
                                x *= 5;
                            }
                            rat_elem(x * s.int_in(1, 4), 1)
                        })
                        .collect()
                })
                .collect();
            let m = FpModulePresentation::new(field, rows, entries).unwrap();
            let base = content(&m).unwrap();
            let mut t = m.clone();
            for _ in 0..4 {
                let (i, j) = (s.below(rows as u64) as usize, s.below(rows as u64) as usize);
                if i != j {
                    // row_i += unit * row_j
                    let u = rat_elem(s.int_in(1, 4), 1);
                    for c in 0..cols {
                        let add = t.entries[j][c].mul(&u);
                        let val = t.entries[i][c].add(&add);
                        t.entries[i][c] = val;
                    }
                }
                let (i, j) = (s.below(cols as u64) as usize, s.below(cols as u64) as usize);
                if i != j {
                    let u = rat_elem(s.int_in(1, 4), 1);
                    for r in 0..rows {
                        let add = t.entries[r][j].mul(&u);
                        let val = t.entries[r][i].add(&add);
                        t.entries[r][i] = val;
                    }
                }
            }
            assert_eq!(content(&t).unwrap(), base);
        }
    }

    #[test]
    fn content_matches_length_over_discrete_group() {
        // For diagonal p-power modules the content equals the module length.
        let mut s = Sampler::new(23);
        for _ in 0..20 {
            let n = 1 + s.below(3) as usize;
            let mut exps = Vec::new();
            let mut entries = vec![vec![rat_elem(0, 1); n]; n];
            for (i, row) in entries.iter_mut().enumerate() {
                let e = s.below(4);
                exps.push(e);
                let mut x = 1i64;
                for _ in 0..e {
                    x *= 5;
                }
                row[i] = rat_elem(x, 1);
            }
            let m = FpModulePresentation::new(q5(), n, entries).unwrap();
            let length: i64 = exps.iter().map(|e| *e as i64).sum();
            assert_eq!(content(&m).unwrap(), Value::int(length));
        }
    }
}
