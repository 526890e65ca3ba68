use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::Vertex;

/// A dense integer matrix whose rows and columns are indexed by vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledMatrix {
    rows: Vec<Vertex>,
    cols: Vec<Vertex>,
    data: Vec<i64>,
}

impl LabeledMatrix {
    pub fn zeros(rows: Vec<Vertex>, cols: Vec<Vertex>) -> Self {
        let data = vec![0; rows.len() * cols.len()];
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vertex>, cols: Vec<Vertex>, entries: &[Vec<i64>]) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::DimensionMismatch(format!(
                "expected {}x{} entries",
                rows.len(),
                cols.len()
            )));
        }
        let data = entries.iter().flatten().copied().collect();
        Ok(Self { rows, cols, data })
    }

    pub fn row_labels(&self) -> &[Vertex] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[Vertex] {
        &self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols.len() + j]
    }

    #[inline]
    pub(crate) fn set_at(&mut self, i: usize, j: usize, x: i64) {
        let c = self.cols.len();
        self.data[i * c + j] = x;
    }

    /// Entry by labels; `None` for unknown labels.
    pub fn get(&self, row: Vertex, col: Vertex) -> Option<i64> {
        let i = self.rows.iter().position(|&r| r == row)?;
        let j = self.cols.iter().position(|&c| c == col)?;
        Some(self.at(i, j))
    }

    pub fn row(&self, i: usize) -> &[i64] {
        let c = self.cols.len();
        &self.data[i * c..(i + 1) * c]
    }

    pub fn entries(&self) -> impl Iterator<Item = i64> + '_ {
        self.data.iter().copied()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows.len()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = self.shape();
        let mut out = Self::zeros(self.cols.clone(), self.rows.clone());
        for i in 0..r {
            for j in 0..c {
                out.set_at(j, i, self.at(i, j));
            }
        }
        out
    }

    /// `self · other`; inner labels must agree.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(
                "inner labels of a matrix product differ".to_string(),
            ));
        }
        let (r, k) = self.shape();
        let c = other.cols.len();
        let mut out = Self::zeros(self.rows.clone(), other.cols.clone());
        for i in 0..r {
            for j in 0..c {
                let mut acc: i64 = 0;
                for t in 0..k {
                    let p = self
                        .at(i, t)
                        .checked_mul(other.at(t, j))
                        .ok_or(Error::Overflow("matrix product"))?;
                    acc = acc.checked_add(p).ok_or(Error::Overflow("matrix product"))?;
                }
                out.set_at(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i128> {
        let n = self.rows.len();
        if n != self.cols.len() {
            return Err(Error::DimensionMismatch("determinant of non-square".into()));
        }
        let mut m: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&p| m[p][k] != 0) else {
                    return Ok(0);
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[i][j]
                        .checked_mul(m[k][k])
                        .and_then(|a| m[i][k].checked_mul(m[k][j]).and_then(|b| a.checked_sub(b)))
                        .ok_or(Error::Overflow("determinant"))?;
                    m[i][j] = v / prev;
                }
                m[i][k] = 0;
            }
            prev = m[k][k];
        }
        Ok(sign * m.last().map_or(1, |r| r[n - 1]))
    }
}

impl fmt::Display for LabeledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, _) = self.shape();
        for i in 0..r {
            let parts: Vec<String> = self.row(i).iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "{:>4} | {}", self.rows[i], parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_determinant() {
        let a = LabeledMatrix::from_rows(vec![1, 2], vec![1, 2], &[vec![2, 1], vec![1, 1]]).unwrap();
        let b = LabeledMatrix::from_rows(vec![1, 2], vec![5], &[vec![3], vec![4]]).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.to_rows(), vec![vec![10], vec![7]]);
        assert_eq!(a.determinant().unwrap(), 1);
        let s = LabeledMatrix::from_rows(
            vec![1, 2, 3],
            vec![1, 2, 3],
            &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]],
        )
        .unwrap();
        assert_eq!(s.determinant().unwrap(), 1);
        assert!(b.mul(&a).is_err());
    }
}
