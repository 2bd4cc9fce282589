//! Dense matrices and subspace computations over either scalar mode.
//!
//! Exact mode reduces everything to Gauss-Jordan elimination with exact zero
//! tests; the reduced echelon basis doubles as a canonical form, so span
//! equality is plain equality of bases. Floating mode routes every rank
//! decision through singular values computed by a one-sided Jacobi sweep,
//! thresholded at `FLOAT_RANK_TOL` relative to the largest singular value.

use super::scalar::{Scalar, FLOAT_RANK_TOL};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> S>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out: Matrix<S> = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let add = a.mul(rhs.get(k, c));
                    out.set(r, c, out.get(r, c).add(&add));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(factor)).collect(),
        }
    }

    /// Conjugate transpose (the adjoint).
    pub fn adjoint(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn is_syntactic_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Commutator `self·rhs - rhs·self`.
    pub fn commutator(&self, rhs: &Matrix<S>) -> Matrix<S> {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Largest entry magnitude, as a float.
    pub fn magnitude(&self) -> f64 {
        self.data
            .iter()
            .map(|v| v.abs_sq_approx())
            .fold(0.0f64, f64::max)
            .sqrt()
    }
}

/// Mode-aware zero test: syntactic in exact mode, relative to `scale` in
/// float mode.
pub fn is_zero_matrix<S: Scalar>(m: &Matrix<S>, scale: f64) -> bool {
    if S::EXACT {
        m.is_syntactic_zero()
    } else {
        m.magnitude() <= FLOAT_RANK_TOL * scale.max(1.0)
    }
}

// ---------------------------------------------------------------------------
// Vector-space routines. Vectors are rows (`Vec<S>`); a "space" is given by a
// list of spanning rows.
// ---------------------------------------------------------------------------

/// Reduced row-echelon form in place (exact zero tests). Returns the pivot
/// columns; zero rows are dropped.
fn rref_exact<S: Scalar>(rows: &mut Vec<Vec<S>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    if rows.is_empty() {
        return pivots;
    }
    let cols = rows[0].len();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = S::one().div(&rows[r][c].clone());
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for x in 0..cols {
                    let sub = factor.mul(&rows[r][x]);
                    rows[i][x] = rows[i][x].sub(&sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

type Cf = (f64, f64);

fn cmul(a: Cf, b: Cf) -> Cf {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cadd(a: Cf, b: Cf) -> Cf {
    (a.0 + b.0, a.1 + b.1)
}

fn cscale(t: f64, a: Cf) -> Cf {
    (t * a.0, t * a.1)
}

/// `<a, b>` with conjugation on the first argument.
fn cdot(a: &[Cf], b: &[Cf]) -> Cf {
    let mut re = 0.0;
    let mut im = 0.0;
    for (x, y) in a.iter().zip(b) {
        re += x.0 * y.0 + x.1 * y.1;
        im += x.0 * y.1 - x.1 * y.0;
    }
    (re, im)
}

/// One-sided Jacobi orthogonalization of complex columns.
///
/// Rotates pairs of columns until all are mutually orthogonal. Returns the
/// column norms (the singular values of the original matrix) and the
/// accumulated right-unitary `v` (as columns) with `original · v = rotated`.
fn one_sided_jacobi(cols: &mut [Vec<Cf>]) -> (Vec<f64>, Vec<Vec<Cf>>) {
    let k = cols.len();
    let mut v: Vec<Vec<Cf>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| if i == j { (1.0, 0.0) } else { (0.0, 0.0) })
                .collect()
        })
        .collect();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..k {
            for q in (p + 1)..k {
                let app = cdot(&cols[p], &cols[p]).0;
                let aqq = cdot(&cols[q], &cols[q]).0;
                let apq = cdot(&cols[p], &cols[q]);
                let apq_norm = (apq.0 * apq.0 + apq.1 * apq.1).sqrt();
                if apq_norm <= 1e-14 * (app * aqq).sqrt().max(f64::MIN_POSITIVE) {
                    continue;
                }
                rotated = true;
                // Jacobi angle for the Gram block [[app, r], [r, aqq]] with
                // r = |apq|, twisted by the phase of apq: orthogonality of
                // the rotated columns needs cs(aqq - app) + r(c² - s²) = 0,
                // i.e. t² - 2τt - 1 = 0; take the stable small root.
                let tau = (aqq - app) / (2.0 * apq_norm);
                let t = -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let phase = (apq.0 / apq_norm, apq.1 / apq_norm);
                let phase_conj = (phase.0, -phase.1);
                let rotate = |u: &mut [Cf], w: &mut [Cf]| {
                    for i in 0..u.len() {
                        let ui = u[i];
                        let wi = w[i];
                        u[i] = cadd(cscale(c, ui), cscale(s, cmul(phase_conj, wi)));
                        w[i] = cadd(cscale(-s, cmul(phase, ui)), cscale(c, wi));
                    }
                };
                let (head, tail) = cols.split_at_mut(q);
                rotate(&mut head[p], &mut tail[0]);
                let (vh, vt) = v.split_at_mut(q);
                rotate(&mut vh[p], &mut vt[0]);
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma: Vec<f64> = cols.iter().map(|col| cdot(col, col).0.max(0.0).sqrt()).collect();
    (sigma, v)
}

fn to_float_cols<S: Scalar>(rows: &[Vec<S>]) -> Vec<Vec<Cf>> {
    // Treat each input row as one column of the transposed matrix.
    rows.iter()
        .map(|row| row.iter().map(|v| v.approx()).collect())
        .collect()
}

/// Rank of the span of the given row vectors.
pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    if S::EXACT {
        let mut copy: Vec<Vec<S>> = rows.to_vec();
        rref_exact(&mut copy).len()
    } else {
        let mut cols = to_float_cols(rows);
        let (sigma, _) = one_sided_jacobi(&mut cols);
        let s_max = sigma.iter().copied().fold(0.0f64, f64::max);
        if s_max <= 0.0 {
            return 0;
        }
        sigma.iter().filter(|&&s| s > FLOAT_RANK_TOL * s_max).count()
    }
}

/// Canonical spanning basis of the row space.
///
/// Exact mode: the reduced echelon rows, so equal spans yield identical
/// bases. Float mode: an orthonormal basis from the Jacobi sweep.
pub fn row_space_basis<S: Scalar>(rows: &[Vec<S>]) -> Vec<Vec<S>> {
    if rows.is_empty() {
        return Vec::new();
    }
    if S::EXACT {
        let mut copy: Vec<Vec<S>> = rows.to_vec();
        rref_exact(&mut copy);
        copy
    } else {
        let mut cols = to_float_cols(rows);
        let (sigma, _) = one_sided_jacobi(&mut cols);
        let s_max = sigma.iter().copied().fold(0.0f64, f64::max);
        let mut basis = Vec::new();
        for (j, &s) in sigma.iter().enumerate() {
            if s_max > 0.0 && s > FLOAT_RANK_TOL * s_max {
                basis.push(
                    cols[j]
                        .iter()
                        .map(|&(re, im)| S::from_approx(re / s, im / s))
                        .collect(),
                );
            }
        }
        basis
    }
}

/// Nullspace basis of the linear system with the given equation rows over
/// `unknowns` variables.
pub fn nullspace<S: Scalar>(equations: &[Vec<S>], unknowns: usize) -> Vec<Vec<S>> {
    if equations.is_empty() {
        return (0..unknowns)
            .map(|i| {
                let mut v = vec![S::zero(); unknowns];
                v[i] = S::one();
                v
            })
            .collect();
    }
    debug_assert!(equations.iter().all(|r| r.len() == unknowns));
    if S::EXACT {
        let mut rows: Vec<Vec<S>> = equations.to_vec();
        let pivots = rref_exact(&mut rows);
        let mut is_pivot = vec![false; unknowns];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..unknowns {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![S::zero(); unknowns];
            v[free] = S::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[r][free].neg();
            }
            basis.push(v);
        }
        basis
    } else {
        // Right singular vectors with negligible singular values.
        let mut cols: Vec<Vec<Cf>> = (0..unknowns)
            .map(|c| equations.iter().map(|row| row[c].approx()).collect())
            .collect();
        let (sigma, v) = one_sided_jacobi(&mut cols);
        let s_max = sigma.iter().copied().fold(0.0f64, f64::max);
        let mut basis = Vec::new();
        for (j, &s) in sigma.iter().enumerate() {
            if s_max <= 0.0 || s <= FLOAT_RANK_TOL * s_max {
                basis.push(
                    v[j].iter()
                        .map(|&(re, im)| S::from_approx(re, im))
                        .collect(),
                );
            }
        }
        basis
    }
}

/// Does the span of `basis` contain `v`?
pub fn in_span<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> bool {
    let base_rank = rank(basis);
    let mut stacked: Vec<Vec<S>> = basis.to_vec();
    stacked.push(v.to_vec());
    rank(&stacked) == base_rank
}

/// Is the span of `inner` contained in the span of `outer`?
pub fn span_contains<S: Scalar>(outer: &[Vec<S>], inner: &[Vec<S>]) -> bool {
    let outer_rank = rank(outer);
    let mut stacked: Vec<Vec<S>> = outer.to_vec();
    stacked.extend(inner.iter().cloned());
    rank(&stacked) == outer_rank
}

/// Basis of the intersection of two row spaces over the same ambient
/// dimension.
pub fn intersect_spaces<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], dim: usize) -> Vec<Vec<S>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // x ∈ span(a) ∩ span(b) iff x = αᵀa = βᵀb; solve for (α, β) in the
    // nullspace of [aᵀ | -bᵀ] read equation-wise over the ambient.
    let cols = a.len() + b.len();
    let mut equations: Vec<Vec<S>> = Vec::with_capacity(dim);
    for d in 0..dim {
        let mut eq = Vec::with_capacity(cols);
        for row in a {
            eq.push(row[d].clone());
        }
        for row in b {
            eq.push(row[d].neg());
        }
        equations.push(eq);
    }
    let combos = nullspace(&equations, cols);
    let vectors: Vec<Vec<S>> = combos
        .iter()
        .map(|combo| {
            let mut x = vec![S::zero(); dim];
            for (i, row) in a.iter().enumerate() {
                if combo[i].is_zero() {
                    continue;
                }
                for d in 0..dim {
                    let add = combo[i].mul(&row[d]);
                    x[d] = x[d].add(&add);
                }
            }
            x
        })
        .collect();
    row_space_basis(&vectors)
}
