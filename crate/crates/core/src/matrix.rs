//! Dense matrices over a [`Field`], with the handful of operations the
//! representation oracles need: products, row reduction, rank, kernels.

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: E) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack: column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for k in 0..n {
        m.set(k, k, f.one());
    }
    m
}

pub fn is_zero<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "mul: inner dimensions differ");
    let mut out = zeros(f, a.rows, b.cols);
    for r in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(r, k);
            if f.is_zero(x) {
                continue;
            }
            for c in 0..b.cols {
                let cur = f.add(out.get(r, c), &f.mul(x, b.get(k, c)));
                out.set(r, c, cur);
            }
        }
    }
    out
}

/// Reduced row echelon form and the pivot columns.
pub fn rref<F: Field>(f: &F, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols {
                m.data.swap(p * m.cols + c, row * m.cols + c);
            }
        }
        let inv = f.inv(m.get(row, col));
        for c in 0..m.cols {
            let v = f.mul(&inv, m.get(row, c));
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let factor = m.get(r, col).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for c in 0..m.cols {
                let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    rref(f, a).1.len()
}

/// A basis of `{x : a x = 0}`, one vector per free column.
pub fn nullspace<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(f, a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); a.cols];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, fc));
            }
            v
        })
        .collect()
}
