//! Dense matrices over Q(i, sqrt2) with exact arithmetic.
//!
//! Storage is row-major and dense; every matrix in scope is at most
//! 100x100. Multiplication skips zero entries, which makes products of the
//! sparse Lie algebra basis matrices cheap without a sparse type.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::scalar::FieldScalar;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("dimension mismatch in {op}: left is {lr}x{lc}, right is {rr}x{rc}")]
    DimensionMismatch { op: &'static str, lr: usize, lc: usize, rr: usize, rc: usize },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("matrix dimensions must be positive")]
    Empty,
}

/// Dense matrix over Q(i, sqrt2).
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixF {
    rows: usize,
    cols: usize,
    data: Vec<FieldScalar>,
}

impl MatrixF {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        MatrixF { rows, cols, data: vec![FieldScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for j in 0..n {
            m.set(j, j, FieldScalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldScalar) -> Self {
        let mut m = Self::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldScalar>>) -> Result<Self, MatrixError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MatrixError::Empty);
        }
        let cols = rows[0].len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged { row: r, len: row.len(), expected: cols });
            }
        }
        let nrows = rows.len();
        Ok(MatrixF { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from integer entries, row-major.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&n| FieldScalar::from_int(n)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldScalar {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldScalar) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldScalar::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape("add", rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(x, y)| x + y).collect();
        Ok(MatrixF { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape("sub", rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(x, y)| x - y).collect();
        Ok(MatrixF { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "mul",
                lr: self.rows,
                lc: self.cols,
                rr: rhs.rows,
                rc: rhs.cols,
            });
        }
        let mut out = MatrixF::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(r, k);
                if x.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let y = rhs.get(k, c);
                    if y.is_zero() {
                        continue;
                    }
                    let cell = &mut out.data[r * rhs.cols + c];
                    *cell += &(x * y);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    pub fn scale(&self, s: &FieldScalar) -> Self {
        let data = self.data.iter().map(|x| x * s).collect();
        MatrixF { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        let data = self.data.iter().map(|x| x.times_rat(r)).collect();
        MatrixF { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        MatrixF::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let data = self.data.iter().map(FieldScalar::conj).collect();
        MatrixF { rows: self.rows, cols: self.cols, data }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        MatrixF::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn trace(&self) -> Result<FieldScalar, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut t = FieldScalar::zero();
        for j in 0..self.rows {
            t += self.get(j, j);
        }
        Ok(t)
    }

    /// Copy of the `height x width` block with top-left corner (r0, c0).
    pub fn block(&self, r0: usize, c0: usize, height: usize, width: usize) -> Self {
        assert!(r0 + height <= self.rows && c0 + width <= self.cols, "block out of bounds");
        MatrixF::from_fn(height, width, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &MatrixF) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of bounds");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    /// Entries as canonical text, row-major; the JSON witness format.
    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).canonical_text()).collect())
            .collect()
    }

    fn check_same_shape(&self, op: &'static str, rhs: &Self) -> Result<(), MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::DimensionMismatch {
                op,
                lr: self.rows,
                lc: self.cols,
                rr: rhs.rows,
                rc: rhs.cols,
            });
        }
        Ok(())
    }
}

impl Neg for &MatrixF {
    type Output = MatrixF;
    fn neg(self) -> MatrixF {
        let data = self.data.iter().map(|x| -x).collect();
        MatrixF { rows: self.rows, cols: self.cols, data }
    }
}

impl fmt::Display for MatrixF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MatrixF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixF({}x{}) {}", self.rows, self.cols, self)
    }
}

impl Serialize for MatrixF {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_text_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatrixF {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(deserializer)?;
        let parsed: Result<Vec<Vec<FieldScalar>>, _> = rows
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.parse::<FieldScalar>()).collect())
            .collect();
        MatrixF::from_rows(parsed.map_err(serde::de::Error::custom)?)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rq2;
    use proptest::prelude::*;

    fn perm2() -> MatrixF {
        MatrixF::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap()
    }

    #[test]
    fn identity_commutes() {
        let id = MatrixF::identity(2);
        assert!(id.commutator(&id).unwrap().is_zero());
    }

    #[test]
    fn permutation_square_trace() {
        let x = perm2();
        let tr = x.mul(&x).unwrap().trace().unwrap();
        assert_eq!(tr, FieldScalar::from_int(2));
    }

    #[test]
    fn dagger_fixes_hermitian() {
        let i = FieldScalar::i();
        let m = MatrixF::from_rows(vec![
            vec![FieldScalar::zero(), i.clone()],
            vec![-&i, FieldScalar::zero()],
        ])
        .unwrap();
        assert_eq!(m.dagger(), m);
    }

    #[test]
    fn dimension_errors_carry_shapes() {
        let a = MatrixF::zero(2, 3);
        let b = MatrixF::zero(2, 2);
        let err = a.add(&b).unwrap_err();
        assert_eq!(
            err,
            MatrixError::DimensionMismatch { op: "add", lr: 2, lc: 3, rr: 2, rc: 2 }
        );
        assert_eq!(a.trace().unwrap_err(), MatrixError::NotSquare { rows: 2, cols: 3 });
    }

    #[test]
    fn block_round_trip() {
        let m = MatrixF::from_int_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).unwrap();
        let b = m.block(1, 1, 2, 2);
        assert_eq!(b, MatrixF::from_int_rows(&[&[5, 6], &[8, 9]]).unwrap());
        let mut z = MatrixF::zero(3, 3);
        z.set_block(1, 1, &b);
        assert_eq!(z.get(2, 2), &FieldScalar::from_int(9));
        assert!(z.get(0, 0).is_zero());
    }

    #[test]
    fn serde_round_trip() {
        let m = MatrixF::from_rows(vec![
            vec![FieldScalar::from_rational(rq2(1, 2)), FieldScalar::i()],
            vec![FieldScalar::sqrt2(), FieldScalar::zero()],
        ])
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: MatrixF = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    fn small_scalar() -> impl Strategy<Value = FieldScalar> {
        (-4i64..=4, -4i64..=4).prop_map(|(a, c)| {
            FieldScalar::new(crate::scalar::rq(a), crate::scalar::rq(0), crate::scalar::rq(c), crate::scalar::rq(0))
        })
    }

    fn square3() -> impl Strategy<Value = MatrixF> {
        proptest::collection::vec(small_scalar(), 9).prop_map(|v| {
            MatrixF::from_rows(v.chunks(3).map(|c| c.to_vec()).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn trace_of_commutator_vanishes(x in square3(), y in square3()) {
            let c = x.commutator(&y).unwrap();
            prop_assert!(c.trace().unwrap().is_zero());
        }

        #[test]
        fn dagger_antihomomorphism(x in square3(), y in square3()) {
            let lhs = x.mul(&y).unwrap().dagger();
            let rhs = y.dagger().mul(&x.dagger()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(x.dagger().dagger(), x);
        }

        #[test]
        fn trace_cyclic(x in square3(), y in square3()) {
            let xy = x.mul(&y).unwrap().trace().unwrap();
            let yx = y.mul(&x).unwrap().trace().unwrap();
            prop_assert_eq!(xy, yx);
        }
    }
}
