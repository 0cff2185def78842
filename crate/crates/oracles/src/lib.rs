//! Brute-force numerical oracles for the test suites.
//!
//! Everything here is deliberately independent of the main library: dense
//! complex matrices are hand-rolled row-major vectors, eigenvalues come from
//! a cyclic Jacobi solver, and Fourier sums are written as the raw
//! definitions. Nothing in this crate may depend on the code it is used to
//! check.

use num_complex::Complex64;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn adjoint(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= *b;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    /// A^H A.
    pub fn gram(&self) -> Mat {
        self.adjoint().mul(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps, ascending.
///
/// Only the lower/upper consistency of the input is assumed; tiny Hermitian
/// defects are symmetrized away first.
pub fn hermitian_eigenvalues(m: &Mat) -> Vec<f64> {
    assert_eq!(m.rows, m.cols, "square matrix required");
    let n = m.rows;
    if n == 0 {
        return Vec::new();
    }
    // Symmetrize: a <- (a + a^H)/2.
    let mut a = m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0));
    let scale = a.max_abs().max(1.0);

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a.get(i, j).norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let b = apq.norm();
                if b <= 1e-300 {
                    continue;
                }
                let phase = apq / b;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let se = phase * s;

                // B = A J with J the unitary Jacobi rotation in the (p,q) plane.
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * c - aiq * se.conj());
                    a.set(i, q, aip * se + aiq * c);
                }
                // A' = J^H B.
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * c - aqj * se);
                    a.set(q, j, apj * se.conj() + aqj * c);
                }
                // Keep the matrix exactly Hermitian against rounding drift.
                let diag_p = a.get(p, p).re;
                let diag_q = a.get(q, q).re;
                a.set(p, p, Complex64::new(diag_p, 0.0));
                a.set(q, q, Complex64::new(diag_q, 0.0));
                let v = a.get(p, q);
                let v = (v + a.get(q, p).conj()) * 0.5;
                a.set(p, q, v);
                a.set(q, p, v.conj());
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

pub fn min_eigenvalue_hermitian(m: &Mat) -> f64 {
    *hermitian_eigenvalues(m)
        .first()
        .expect("nonempty matrix")
}

/// Singular values via eigenvalues of A^H A, descending, clamped at zero.
pub fn singular_values(m: &Mat) -> Vec<f64> {
    let mut eig = hermitian_eigenvalues(&m.gram());
    eig.reverse();
    eig.iter().map(|v| v.max(0.0).sqrt()).collect()
}

/// Sum of the p-th powers of the singular values.
pub fn schatten_pow(m: &Mat, p: f64) -> f64 {
    singular_values(m)
        .iter()
        .filter(|s| **s > 0.0)
        .map(|s| s.powf(p))
        .sum()
}

pub fn kyfan(m: &Mat, n: usize) -> f64 {
    singular_values(m).iter().take(n).sum()
}

pub fn operator_norm(m: &Mat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// All elements of Z_{n_1} x ... x Z_{n_m} in lexicographic order.
pub fn elements_lex(orders: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &n in orders {
        let mut next = Vec::with_capacity(out.len() * n as usize);
        for prefix in &out {
            for v in 0..n {
                let mut e = prefix.clone();
                e.push(v);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

/// Character table of a product of cyclic groups: rows are characters,
/// columns are elements, both in lexicographic order. Entries are computed
/// through plain floating-point angles (an implementation path distinct from
/// the library under test).
pub fn character_table(orders: &[u32]) -> Vec<Vec<Complex64>> {
    let elems = elements_lex(orders);
    let mut table = Vec::with_capacity(elems.len());
    for k in &elems {
        let mut row = Vec::with_capacity(elems.len());
        for theta in &elems {
            let mut angle = 0.0f64;
            for ((ki, ti), ni) in k.iter().zip(theta.iter()).zip(orders.iter()) {
                angle += 2.0 * std::f64::consts::PI * (*ki as f64) * (*ti as f64) / (*ni as f64);
            }
            row.push(Complex64::new(angle.cos(), angle.sin()));
        }
        table.push(row);
    }
    table
}

/// Scalar Fourier coefficients over Z_n: hat f(k) = (1/n) sum_t conj(w^{kt}) f(t).
pub fn scalar_fourier_coefficients(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    let table = character_table(&[n as u32]);
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (t, v) in values.iter().enumerate() {
                acc += table[k][t].conj() * v;
            }
            acc / n as f64
        })
        .collect()
}

/// Operator Fourier coefficients B_k = (1/n) sum_j conj(T[k][j]) A_j.
pub fn operator_fourier_coefficients(table: &[Vec<Complex64>], values: &[Mat]) -> Vec<Mat> {
    let n = values.len();
    assert_eq!(table.len(), n);
    let (r, c) = (values[0].rows, values[0].cols);
    table
        .iter()
        .map(|row| {
            let mut acc = Mat::zeros(r, c);
            for (j, a) in values.iter().enumerate() {
                acc = acc.add(&a.scale(row[j].conj()));
            }
            acc.scale(Complex64::new(1.0 / n as f64, 0.0))
        })
        .collect()
}

/// Both sides of the operator Parseval identity:
/// (sum_k B_k^H B_k, (1/n) sum_t A_t^H A_t).
pub fn parseval_sides(table: &[Vec<Complex64>], values: &[Mat]) -> (Mat, Mat) {
    let n = values.len();
    let coeffs = operator_fourier_coefficients(table, values);
    let d = values[0].cols;
    let mut lhs = Mat::zeros(d, d);
    for b in &coeffs {
        lhs = lhs.add(&b.gram());
    }
    let mut rhs = Mat::zeros(d, d);
    for a in values {
        rhs = rhs.add(&a.gram());
    }
    (lhs, rhs.scale(Complex64::new(1.0 / n as f64, 0.0)))
}
