//! Concrete linear-algebra ground truth over block-diagonal matrix algebras.
//!
//! An `Ambient` is a sum of full matrix blocks; a `SubalgebraSpan` is a
//! unital *-subalgebra presented by a canonical basis over the ambient's
//! block-diagonal coordinates. Everything a subalgebra poset claims
//! combinatorially can be re-derived here: closures, intersections,
//! commutants, centers, maximal completions, functorial images and
//! preimages, and full witness-poset realizations from explicit unitaries.

pub mod hom;
pub mod linalg;
pub mod scalar;
pub mod unitary;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{AlgebraSpec, Partition};
use crate::poset::FinitePoset;
use crate::witness::{effective_copies, witness_layout};

use linalg::{
    in_span, intersect_spaces, is_zero_matrix, nullspace, row_space_basis, span_contains,
    Matrix,
};
use scalar::{FloatComplex, RatComplex, Scalar};

/// Default spectrum guard for witness realization (15 partition subalgebras
/// per copy at four points; inclusion testing is quadratic in elements).
pub const DEFAULT_REALIZE_GUARD: usize = 4;

/// The block-diagonal matrix algebra of a spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    spec: AlgebraSpec,
    /// Support positions `(row, col)` in block order, row-major per block.
    support: Vec<(usize, usize)>,
}

impl Ambient {
    pub fn new(spec: &AlgebraSpec) -> Self {
        let mut support = Vec::with_capacity(spec.dimension());
        for range in spec.block_ranges() {
            for r in range.clone() {
                for c in range.clone() {
                    support.push((r, c));
                }
            }
        }
        Ambient {
            spec: spec.clone(),
            support,
        }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    /// Full matrix size `N`.
    pub fn matrix_size(&self) -> usize {
        self.spec.total_points()
    }

    /// Linear dimension of the ambient (sum of squared block sizes).
    pub fn dimension(&self) -> usize {
        self.support.len()
    }

    /// Is the matrix supported on the block diagonal? Entries off the
    /// support must be syntactic zeros (block-diagonal inputs stay exactly
    /// block-diagonal under arithmetic, in both modes).
    pub fn contains<S: Scalar>(&self, m: &Matrix<S>) -> bool {
        let n = self.matrix_size();
        if m.rows() != n || m.cols() != n {
            return false;
        }
        let mut supported = vec![false; n * n];
        for &(r, c) in &self.support {
            supported[r * n + c] = true;
        }
        for r in 0..n {
            for c in 0..n {
                if !supported[r * n + c] && !m.get(r, c).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_coords<S: Scalar>(&self, m: &Matrix<S>) -> Vec<S> {
        self.support.iter().map(|&(r, c)| m.get(r, c).clone()).collect()
    }

    pub fn from_coords<S: Scalar>(&self, coords: &[S]) -> Matrix<S> {
        let n = self.matrix_size();
        let mut m = Matrix::zeros(n, n);
        for (&(r, c), v) in self.support.iter().zip(coords) {
            m.set(r, c, v.clone());
        }
        m
    }

    pub fn identity<S: Scalar>(&self) -> Matrix<S> {
        Matrix::identity(self.matrix_size())
    }

    /// Matrix units spanning the ambient, in coordinate order.
    pub fn support_units<S: Scalar>(&self) -> Vec<Matrix<S>> {
        self.support
            .iter()
            .map(|&(r, c)| {
                let mut m = Matrix::zeros(self.matrix_size(), self.matrix_size());
                m.set(r, c, S::one());
                m
            })
            .collect()
    }

    /// Identity of one block, embedded.
    pub fn block_identity<S: Scalar>(&self, block: usize) -> Matrix<S> {
        let mut m = Matrix::zeros(self.matrix_size(), self.matrix_size());
        for r in self.spec.block_ranges()[block].clone() {
            m.set(r, r, S::one());
        }
        m
    }

    /// Extracts block `i` as a small square matrix.
    pub fn extract_block<S: Scalar>(&self, block: usize, m: &Matrix<S>) -> Matrix<S> {
        let range = self.spec.block_ranges()[block].clone();
        Matrix::from_fn(range.len(), range.len(), |r, c| {
            m.get(range.start + r, range.start + c).clone()
        })
    }

    /// Places a small square matrix into block `i` (zero elsewhere).
    pub fn embed_block<S: Scalar>(&self, block: usize, small: &Matrix<S>) -> Matrix<S> {
        let range = self.spec.block_ranges()[block].clone();
        assert_eq!(small.rows(), range.len());
        assert_eq!(small.cols(), range.len());
        let mut m = Matrix::zeros(self.matrix_size(), self.matrix_size());
        for r in 0..small.rows() {
            for c in 0..small.cols() {
                m.set(range.start + r, range.start + c, small.get(r, c).clone());
            }
        }
        m
    }
}

/// A unital *-subalgebra span inside an ambient, held in canonical basis
/// form over the ambient coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SubalgebraSpan<S: Scalar> {
    ambient: Ambient,
    coords: Vec<Vec<S>>,
    unital: bool,
    star_closed: bool,
    commutative: bool,
}

impl<S: Scalar> SubalgebraSpan<S> {
    /// Wraps a coordinate span: canonicalizes the basis and computes the
    /// structure flags.
    fn from_coord_span(ambient: Ambient, vectors: &[Vec<S>]) -> Self {
        let coords = row_space_basis(vectors);
        let basis: Vec<Matrix<S>> = coords.iter().map(|v| ambient.from_coords(v)).collect();
        let identity_coords = ambient.to_coords::<S>(&ambient.identity());
        let unital = in_span(&coords, &identity_coords);
        let star_closed = basis
            .iter()
            .all(|m| in_span(&coords, &ambient.to_coords(&m.adjoint())));
        let commutative = basis.iter().enumerate().all(|(i, a)| {
            basis[i..].iter().all(|b| {
                let scale = a.magnitude() * b.magnitude();
                is_zero_matrix(&a.commutator(b), scale)
            })
        });
        SubalgebraSpan {
            ambient,
            coords,
            unital,
            star_closed,
            commutative,
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    /// Canonical coordinate basis (reduced echelon rows in exact mode).
    pub fn coords(&self) -> &[Vec<S>] {
        &self.coords
    }

    /// Canonical basis as full matrices.
    pub fn basis_matrices(&self) -> Vec<Matrix<S>> {
        self.coords
            .iter()
            .map(|v| self.ambient.from_coords(v))
            .collect()
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn is_star_closed(&self) -> bool {
        self.star_closed
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn contains_matrix(&self, m: &Matrix<S>) -> bool {
        self.ambient.contains(m) && in_span(&self.coords, &self.ambient.to_coords(m))
    }

    pub fn contains_span(&self, other: &SubalgebraSpan<S>) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(span_contains(&self.coords, &other.coords))
    }

    pub fn equals_span(&self, other: &SubalgebraSpan<S>) -> Result<bool> {
        Ok(self.contains_span(other)? && other.contains_span(self)?)
    }

    /// Post-hoc closure verification: unital, adjoint-closed, and closed
    /// under products.
    pub fn verify_closure(&self) -> Result<()> {
        if !self.unital {
            return Err(Error::MalformedHom("span lost the unit".into()));
        }
        if !self.star_closed {
            return Err(Error::MalformedHom("span is not adjoint-closed".into()));
        }
        let basis = self.basis_matrices();
        for a in &basis {
            for b in &basis {
                if !self.contains_matrix(&a.mul(b)) {
                    return Err(Error::MalformedHom(
                        "span is not closed under products".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Span of the identity alone.
pub fn scalar_span<S: Scalar>(amb: &Ambient) -> SubalgebraSpan<S> {
    let coords = vec![amb.to_coords::<S>(&amb.identity())];
    SubalgebraSpan::from_coord_span(amb.clone(), &coords)
}

/// The whole ambient as a span.
pub fn full_span<S: Scalar>(amb: &Ambient) -> SubalgebraSpan<S> {
    let coords: Vec<Vec<S>> = amb
        .support_units::<S>()
        .iter()
        .map(|m| amb.to_coords(m))
        .collect();
    SubalgebraSpan::from_coord_span(amb.clone(), &coords)
}

/// The diagonal matrices of every block: the reference maximal abelian
/// subalgebra.
pub fn diagonal_masa<S: Scalar>(amb: &Ambient) -> SubalgebraSpan<S> {
    partition_span(amb, &Partition::singletons(amb.matrix_size()))
}

/// The subalgebra of diagonal matrices constant on each block of the
/// partition.
pub fn partition_span<S: Scalar>(amb: &Ambient, p: &Partition) -> SubalgebraSpan<S> {
    assert_eq!(p.size(), amb.matrix_size(), "partition spectrum mismatch");
    let n = amb.matrix_size();
    let coords: Vec<Vec<S>> = p
        .blocks()
        .iter()
        .map(|block| {
            let mut m = Matrix::zeros(n, n);
            for &x in block {
                m.set(x, x, S::one());
            }
            amb.to_coords(&m)
        })
        .collect();
    SubalgebraSpan::from_coord_span(amb.clone(), &coords)
}

/// Conjugates a span by a unitary of the same ambient.
pub fn conjugate_span<S: Scalar>(
    unitary: &Matrix<S>,
    s: &SubalgebraSpan<S>,
) -> Result<SubalgebraSpan<S>> {
    let amb = s.ambient().clone();
    if !amb.contains(unitary) {
        return Err(Error::NotInAmbient);
    }
    let u_star = unitary.adjoint();
    let coords: Vec<Vec<S>> = s
        .basis_matrices()
        .iter()
        .map(|b| amb.to_coords(&unitary.mul(b).mul(&u_star)))
        .collect();
    Ok(SubalgebraSpan::from_coord_span(amb, &coords))
}

/// Smallest unital *-subalgebra span containing the seeds.
///
/// Iterates span closure under pairwise products (the seed set is first
/// widened with its adjoints and the unit) until the dimension stabilizes;
/// termination is bounded by the ambient dimension.
pub fn generate_subalgebra<S: Scalar>(
    amb: &Ambient,
    seeds: &[Matrix<S>],
) -> Result<SubalgebraSpan<S>> {
    for m in seeds {
        if !amb.contains(m) {
            return Err(Error::NotInAmbient);
        }
    }
    let mut spanning: Vec<Vec<S>> = vec![amb.to_coords::<S>(&amb.identity())];
    for m in seeds {
        spanning.push(amb.to_coords(m));
        spanning.push(amb.to_coords(&m.adjoint()));
    }
    let mut basis = row_space_basis(&spanning);
    loop {
        let dim = basis.len();
        let mats: Vec<Matrix<S>> = basis.iter().map(|v| amb.from_coords(v)).collect();
        let mut widened = basis.clone();
        for a in &mats {
            for b in &mats {
                widened.push(amb.to_coords(&a.mul(b)));
            }
        }
        let next = row_space_basis(&widened);
        if next.len() == dim {
            return Ok(SubalgebraSpan::from_coord_span(amb.clone(), &next));
        }
        basis = next;
    }
}

/// Assembles per-block spans into their direct sum inside a product ambient
/// (the concrete blockwise embedding of subalgebra tuples).
pub fn direct_sum_spans<S: Scalar>(
    amb: &Ambient,
    parts: &[SubalgebraSpan<S>],
) -> Result<SubalgebraSpan<S>> {
    if parts.len() != amb.spec().block_count() {
        return Err(Error::ShapeMismatch(format!(
            "{} parts for {} blocks",
            parts.len(),
            amb.spec().block_count()
        )));
    }
    let mut coords = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let expected = amb.spec().sizes()[i];
        if part.ambient().matrix_size() != expected {
            return Err(Error::ShapeMismatch(format!(
                "part {i} lives on {} points, block has {expected}",
                part.ambient().matrix_size()
            )));
        }
        for b in part.basis_matrices() {
            coords.push(amb.to_coords(&amb.embed_block(i, &b)));
        }
    }
    Ok(SubalgebraSpan::from_coord_span(amb.clone(), &coords))
}

/// Intersection of two spans (the meet of subalgebras).
pub fn intersect_spans<S: Scalar>(
    a: &SubalgebraSpan<S>,
    b: &SubalgebraSpan<S>,
) -> Result<SubalgebraSpan<S>> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let coords = intersect_spaces(&a.coords, &b.coords, a.ambient().dimension());
    Ok(SubalgebraSpan::from_coord_span(a.ambient().clone(), &coords))
}

/// Everything in the ambient commuting with the whole span.
pub fn commutant_in<S: Scalar>(amb: &Ambient, s: &SubalgebraSpan<S>) -> SubalgebraSpan<S> {
    let dim = amb.dimension();
    let units = amb.support_units::<S>();
    let mut equations: Vec<Vec<S>> = Vec::new();
    for b in s.basis_matrices() {
        // Row block: coordinates of [x, b] as a linear function of x.
        let columns: Vec<Vec<S>> = units.iter().map(|e| amb.to_coords(&e.commutator(&b))).collect();
        for out in 0..dim {
            let eq: Vec<S> = (0..dim).map(|k| columns[k][out].clone()).collect();
            equations.push(eq);
        }
    }
    let coords = nullspace(&equations, dim);
    SubalgebraSpan::from_coord_span(amb.clone(), &coords)
}

/// The center of the ambient: the commutant of everything. Its dimension is
/// the number of blocks.
pub fn center<S: Scalar>(amb: &Ambient) -> SubalgebraSpan<S> {
    let everything = full_span(amb);
    commutant_in(amb, &everything)
}

/// Completes a commutative span to a maximal abelian subalgebra.
///
/// While the relative commutant strictly contains the span, adjoin a
/// self-adjoint element of the difference (the first canonical-basis vector
/// not already inside, symmetrized) and re-close. Dimension growth bounds
/// the loop.
pub fn maximal_completion<S: Scalar>(
    amb: &Ambient,
    c: &SubalgebraSpan<S>,
) -> Result<SubalgebraSpan<S>> {
    if !c.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let mut current = c.clone();
    if !current.is_unital() {
        current = generate_subalgebra(amb, &current.basis_matrices())?;
    }
    loop {
        let relative = commutant_in(amb, &current);
        if relative.dimension() == current.dimension() {
            return Ok(current);
        }
        let outside = relative
            .basis_matrices()
            .into_iter()
            .find(|v| !current.contains_matrix(v))
            .expect("strictly larger commutant has an outside basis vector");
        // Symmetrize: at least one of v + v*, (v - v*)/i lies outside too.
        let conj = outside.adjoint();
        let herm = outside.add(&conj);
        let candidate = if !current.contains_matrix(&herm) {
            herm
        } else {
            let minus_i = S::from_approx(0.0, -1.0);
            outside.sub(&conj).scale(&minus_i)
        };
        let mut seeds = current.basis_matrices();
        seeds.push(candidate);
        let next = generate_subalgebra(amb, &seeds)?;
        debug_assert!(next.dimension() > current.dimension());
        debug_assert!(next.is_commutative());
        current = next;
    }
}

/// Realizes the witness poset of a spec from explicit unitaries: copy 1 is
/// the diagonal subalgebra, copy `t + 1` its conjugate by `unitaries[t - 1]`.
///
/// Genericity is verified first: each pair of maximal subalgebras must
/// intersect in exactly the center. The element layout and labels match
/// `witness_poset`, so a generic realization is equal (not merely
/// isomorphic) to the combinatorial construction as a labeled poset.
pub fn realize_witness<S: Scalar>(
    spec: &AlgebraSpec,
    unitaries: &[Matrix<S>],
    guard: usize,
) -> Result<FinitePoset> {
    let n = spec.total_points();
    if n > guard {
        return Err(Error::GuardExceeded {
            requested: n,
            guard,
        });
    }
    let amb = Ambient::new(spec);
    let copies = if spec.is_commutative() {
        1
    } else {
        effective_copies(spec, unitaries.len() + 1)?
    };
    let diag = diagonal_masa::<S>(&amb);
    let mut masas = vec![diag.clone()];
    if !spec.is_commutative() {
        for u in unitaries {
            if !amb.contains(u) {
                return Err(Error::NotInAmbient);
            }
            let defect = u.mul(&u.adjoint()).sub(&amb.identity());
            if !is_zero_matrix(&defect, 1.0) {
                return Err(Error::MalformedHom("matrix is not unitary".into()));
            }
            masas.push(conjugate_span(u, &diag)?);
        }
    }
    // Genericity: pairwise intersections must be exactly the center.
    let k = spec.block_count();
    for s in 0..masas.len() {
        for t in (s + 1)..masas.len() {
            let inter = intersect_spans(&masas[s], &masas[t])?;
            if inter.dimension() != k {
                return Err(Error::NonGenericUnitaries {
                    first: s + 1,
                    second: t + 1,
                    found: inter.dimension(),
                    expected: k,
                });
            }
        }
    }
    let layout = witness_layout(spec, copies);
    let spans: Vec<SubalgebraSpan<S>> = layout
        .iter()
        .map(|e| {
            let base = partition_span(&amb, &e.partition);
            match e.copy {
                None | Some(1) => Ok(base),
                Some(t) => conjugate_span(&unitaries[t - 2], &base),
            }
        })
        .collect::<Result<_>>()?;
    let labels: Vec<String> = layout.iter().map(|e| e.label()).collect();
    // Inclusion order of the realized spans. Antisymmetry of the constructed
    // relation (checked by the poset constructor) rules out any unexpected
    // span coincidence surviving the genericity check.
    FinitePoset::from_le_fn(
        spans.len(),
        |i, j| spans[j].contains_span(&spans[i]).unwrap(),
        Some(labels),
    )
}

// ---------------------------------------------------------------------------
// Matrix serialization: exact rational entries as numerator/denominator
// string pairs per real and imaginary part, float entries as decimal pairs,
// with the mode declared.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum MatrixJson {
    Exact {
        rows: usize,
        cols: usize,
        /// Row-major `[[re_num, re_den], [im_num, im_den]]` strings.
        entries: Vec<[[String; 2]; 2]>,
    },
    Float {
        rows: usize,
        cols: usize,
        /// Row-major `[re, im]` pairs.
        entries: Vec<[f64; 2]>,
    },
}

impl MatrixJson {
    pub fn from_exact(m: &Matrix<RatComplex>) -> Self {
        let entries = m
            .entries()
            .map(|v| {
                [
                    [v.re.numer().to_string(), v.re.denom().to_string()],
                    [v.im.numer().to_string(), v.im.denom().to_string()],
                ]
            })
            .collect();
        MatrixJson::Exact {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn from_float(m: &Matrix<FloatComplex>) -> Self {
        let entries = m.entries().map(|v| [v.re, v.im]).collect();
        MatrixJson::Float {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn to_exact(&self) -> Result<Matrix<RatComplex>> {
        match self {
            MatrixJson::Exact {
                rows,
                cols,
                entries,
            } => {
                if entries.len() != rows * cols {
                    return Err(Error::ShapeMismatch(format!(
                        "{} entries for {rows}x{cols}",
                        entries.len()
                    )));
                }
                let parse = |s: &str| {
                    s.parse::<num_bigint::BigInt>()
                        .map_err(|e| Error::MalformedJson(format!("bad integer {s:?}: {e}")))
                };
                let mut flat = Vec::with_capacity(entries.len());
                for e in entries {
                    let re = num_rational::BigRational::new(parse(&e[0][0])?, parse(&e[0][1])?);
                    let im = num_rational::BigRational::new(parse(&e[1][0])?, parse(&e[1][1])?);
                    flat.push(RatComplex::new(re, im));
                }
                let mut iter = flat.into_iter();
                Ok(Matrix::from_fn(*rows, *cols, |_, _| iter.next().unwrap()))
            }
            MatrixJson::Float { .. } => Err(Error::MalformedJson(
                "expected exact mode, found float".into(),
            )),
        }
    }

    pub fn to_float(&self) -> Result<Matrix<FloatComplex>> {
        match self {
            MatrixJson::Float {
                rows,
                cols,
                entries,
            } => {
                if entries.len() != rows * cols {
                    return Err(Error::ShapeMismatch(format!(
                        "{} entries for {rows}x{cols}",
                        entries.len()
                    )));
                }
                let mut iter = entries.iter();
                Ok(Matrix::from_fn(*rows, *cols, |_, _| {
                    let [re, im] = iter.next().unwrap();
                    FloatComplex::new(*re, *im)
                }))
            }
            MatrixJson::Exact { .. } => Err(Error::MalformedJson(
                "expected float mode, found exact".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests;
