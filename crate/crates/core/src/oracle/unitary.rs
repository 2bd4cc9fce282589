//! Deterministic unitaries: exact rational rotations from Pythagorean
//! triples, and sampled float unitaries for genericity experiments.

use crate::partition::AlgebraSpec;
use crate::util::SplitMix64;

use super::linalg::Matrix;
use super::scalar::{FloatComplex, Scalar};
use super::Ambient;

/// Primitive triples `(a, b, c)` with `a² + b² = c²`, giving exact rotation
/// entries `a/c`, `b/c`.
pub const PYTHAGOREAN_TRIPLES: [(i64, i64, i64); 8] = [
    (3, 4, 5),
    (5, 12, 13),
    (8, 15, 17),
    (7, 24, 25),
    (20, 21, 29),
    (9, 40, 41),
    (12, 35, 37),
    (28, 45, 53),
];

/// An exact orthogonal matrix: the product of one Givens rotation per
/// coordinate plane `(i, j)`, `i < j` in lexicographic order, with the
/// rotation for plane number `r` drawn from triple `(seed + r) mod 8`.
///
/// Unitarity is exact: each factor satisfies `g·gᵀ = 1` by the Pythagorean
/// identity.
pub fn pythagorean_unitary<S: Scalar>(n: usize, seed: u64) -> Matrix<S> {
    let mut u = Matrix::identity(n);
    let mut index = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b, c) =
                PYTHAGOREAN_TRIPLES[(seed as usize + index) % PYTHAGOREAN_TRIPLES.len()];
            let cos = S::from_ratio(a, c);
            let sin = S::from_ratio(b, c);
            let mut g = Matrix::identity(n);
            g.set(i, i, cos.clone());
            g.set(j, j, cos);
            g.set(i, j, sin.neg());
            g.set(j, i, sin);
            u = g.mul(&u);
            index += 1;
        }
    }
    u
}

/// Block-diagonal unitary with an independent Pythagorean rotation product
/// per block (block `i` uses `seed + i`).
pub fn block_diagonal_unitary<S: Scalar>(spec: &AlgebraSpec, seed: u64) -> Matrix<S> {
    let amb = Ambient::new(spec);
    let mut u = Matrix::zeros(amb.matrix_size(), amb.matrix_size());
    for (i, range) in spec.block_ranges().into_iter().enumerate() {
        let small = pythagorean_unitary::<S>(range.len(), seed + i as u64);
        for r in 0..small.rows() {
            for c in 0..small.cols() {
                u.set(range.start + r, range.start + c, small.get(r, c).clone());
            }
        }
    }
    u
}

/// A sampled complex unitary: Gram-Schmidt of a seeded random matrix.
pub fn random_float_unitary(n: usize, rng: &mut SplitMix64) -> Matrix<FloatComplex> {
    let mut cols: Vec<Vec<(f64, f64)>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| (rng.next_f64() - 0.5, rng.next_f64() - 0.5))
                .collect()
        })
        .collect();
    for j in 0..n {
        for prev in 0..j {
            // proj = <prev, col_j>
            let mut pr = 0.0;
            let mut pi = 0.0;
            for i in 0..n {
                let a = cols[prev][i];
                let b = cols[j][i];
                pr += a.0 * b.0 + a.1 * b.1;
                pi += a.0 * b.1 - a.1 * b.0;
            }
            for i in 0..n {
                let a = cols[prev][i];
                cols[j][i].0 -= pr * a.0 - pi * a.1;
                cols[j][i].1 -= pr * a.1 + pi * a.0;
            }
        }
        let norm: f64 = cols[j].iter().map(|v| v.0 * v.0 + v.1 * v.1).sum::<f64>().sqrt();
        for v in cols[j].iter_mut() {
            v.0 /= norm;
            v.1 /= norm;
        }
    }
    Matrix::from_fn(n, n, |r, c| FloatComplex::new(cols[c][r].0, cols[c][r].1))
}

/// Block-diagonal sampled unitary for a spec.
pub fn random_block_unitary(spec: &AlgebraSpec, rng: &mut SplitMix64) -> Matrix<FloatComplex> {
    let amb = Ambient::new(spec);
    let mut u = Matrix::zeros(amb.matrix_size(), amb.matrix_size());
    for range in spec.block_ranges() {
        let small = random_float_unitary(range.len(), rng);
        for r in 0..small.rows() {
            for c in 0..small.cols() {
                u.set(range.start + r, range.start + c, *small.get(r, c));
            }
        }
    }
    u
}
