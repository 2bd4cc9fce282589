//! Unital *-homomorphisms between ambients, in the three declared shapes,
//! with the induced direct and inverse image maps on subalgebra spans.

use crate::error::{Error, Result};
use crate::partition::AlgebraSpec;

use super::linalg::{is_zero_matrix, nullspace, row_space_basis, Matrix};
use super::scalar::Scalar;
use super::{Ambient, SubalgebraSpan};

/// A unital *-homomorphism of one of the supported shapes.
#[derive(Clone, Debug)]
pub enum StarHom<S: Scalar> {
    /// `x ↦ u x u*` on a fixed ambient.
    UnitaryConjugation { ambient: Ambient, unitary: Matrix<S> },
    /// Coordinate projection onto one block.
    Projection { source: Ambient, block: usize },
    /// Block-diagonal embedding: each target block is the diagonal
    /// concatenation of chosen source blocks.
    BlockEmbedding {
        source: Ambient,
        target: Ambient,
        /// `placement[t]` lists the source blocks filling target block `t`,
        /// in diagonal order; their sizes must sum to the target block size.
        placement: Vec<Vec<usize>>,
    },
}

impl<S: Scalar> StarHom<S> {
    pub fn unitary_conjugation(ambient: &Ambient, unitary: Matrix<S>) -> Result<Self> {
        if !ambient.contains(&unitary) {
            return Err(Error::NotInAmbient);
        }
        let defect = unitary.mul(&unitary.adjoint()).sub(&ambient.identity());
        if !is_zero_matrix(&defect, 1.0) {
            return Err(Error::MalformedHom("matrix is not unitary".into()));
        }
        Ok(StarHom::UnitaryConjugation {
            ambient: ambient.clone(),
            unitary,
        })
    }

    pub fn projection(source: &Ambient, block: usize) -> Result<Self> {
        if block >= source.spec().block_count() {
            return Err(Error::MalformedHom(format!(
                "no block {block} in a {}-block ambient",
                source.spec().block_count()
            )));
        }
        Ok(StarHom::Projection {
            source: source.clone(),
            block,
        })
    }

    pub fn block_embedding(
        source: &Ambient,
        target: &Ambient,
        placement: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let src_sizes = source.spec().sizes();
        let tgt_sizes = target.spec().sizes();
        if placement.len() != tgt_sizes.len() {
            return Err(Error::MalformedHom(format!(
                "{} placements for {} target blocks",
                placement.len(),
                tgt_sizes.len()
            )));
        }
        let mut used = vec![false; src_sizes.len()];
        for (t, sources) in placement.iter().enumerate() {
            let mut filled = 0usize;
            for &j in sources {
                if j >= src_sizes.len() {
                    return Err(Error::MalformedHom(format!("no source block {j}")));
                }
                used[j] = true;
                filled += src_sizes[j];
            }
            if filled != tgt_sizes[t] {
                return Err(Error::MalformedHom(format!(
                    "target block {t} of size {} filled with {filled}",
                    tgt_sizes[t]
                )));
            }
        }
        if used.iter().any(|&u| !u) {
            return Err(Error::MalformedHom(
                "embedding must use every source block (otherwise it is not injective)".into(),
            ));
        }
        Ok(StarHom::BlockEmbedding {
            source: source.clone(),
            target: target.clone(),
            placement,
        })
    }

    pub fn source(&self) -> &Ambient {
        match self {
            StarHom::UnitaryConjugation { ambient, .. } => ambient,
            StarHom::Projection { source, .. } => source,
            StarHom::BlockEmbedding { source, .. } => source,
        }
    }

    pub fn target_spec(&self) -> AlgebraSpec {
        match self {
            StarHom::UnitaryConjugation { ambient, .. } => ambient.spec().clone(),
            StarHom::Projection { source, block } => {
                AlgebraSpec::new(&[source.spec().sizes()[*block]]).expect("one block")
            }
            StarHom::BlockEmbedding { target, .. } => target.spec().clone(),
        }
    }

    pub fn target(&self) -> Ambient {
        Ambient::new(&self.target_spec())
    }

    pub fn is_injective(&self) -> bool {
        match self {
            StarHom::UnitaryConjugation { .. } => true,
            // A projection is injective only when there is nothing to forget.
            StarHom::Projection { source, .. } => source.spec().block_count() == 1,
            StarHom::BlockEmbedding { .. } => true,
        }
    }

    /// Applies the homomorphism to one matrix.
    pub fn apply_matrix(&self, m: &Matrix<S>) -> Result<Matrix<S>> {
        if !self.source().contains(m) {
            return Err(Error::NotInAmbient);
        }
        Ok(match self {
            StarHom::UnitaryConjugation { unitary, .. } => {
                unitary.mul(m).mul(&unitary.adjoint())
            }
            StarHom::Projection { source, block } => source.extract_block(*block, m),
            StarHom::BlockEmbedding {
                source,
                target,
                placement,
            } => {
                let n = target.matrix_size();
                let mut out = Matrix::zeros(n, n);
                for (t, sources) in placement.iter().enumerate() {
                    let t_start = target.spec().block_ranges()[t].start;
                    let mut offset = 0usize;
                    for &j in sources {
                        let small = source.extract_block(j, m);
                        for r in 0..small.rows() {
                            for c in 0..small.cols() {
                                out.set(
                                    t_start + offset + r,
                                    t_start + offset + c,
                                    small.get(r, c).clone(),
                                );
                            }
                        }
                        offset += small.rows();
                    }
                }
                out
            }
        })
    }

    /// Composition `other ∘ self` (apply `self` first), for the composable
    /// shape pairs.
    pub fn compose(&self, other: &StarHom<S>) -> Result<StarHom<S>> {
        match (self, other) {
            (
                StarHom::UnitaryConjugation { ambient, unitary },
                StarHom::UnitaryConjugation {
                    ambient: amb2,
                    unitary: u2,
                },
            ) => {
                if ambient != amb2 {
                    return Err(Error::AmbientMismatch);
                }
                StarHom::unitary_conjugation(ambient, u2.mul(unitary))
            }
            (
                StarHom::BlockEmbedding {
                    source, placement, ..
                },
                StarHom::BlockEmbedding {
                    source: mid,
                    target,
                    placement: outer,
                    ..
                },
            ) => {
                if &self.target_spec() != mid.spec() {
                    return Err(Error::AmbientMismatch);
                }
                let composed: Vec<Vec<usize>> = outer
                    .iter()
                    .map(|mids| {
                        mids.iter()
                            .flat_map(|&b| placement[b].iter().copied())
                            .collect()
                    })
                    .collect();
                StarHom::block_embedding(source, target, composed)
            }
            _ => Err(Error::MalformedHom(
                "composition not supported for this shape pair".into(),
            )),
        }
    }
}

/// Direct image of a span: the span of the images of a basis (images of
/// algebras under *-homomorphisms are algebras, so no re-closure is needed).
pub fn apply_hom<S: Scalar>(
    f: &StarHom<S>,
    s: &SubalgebraSpan<S>,
) -> Result<SubalgebraSpan<S>> {
    if s.ambient() != f.source() {
        return Err(Error::AmbientMismatch);
    }
    let target = f.target();
    let coords: Vec<Vec<S>> = s
        .basis_matrices()
        .iter()
        .map(|m| Ok(target.to_coords(&f.apply_matrix(m)?)))
        .collect::<Result<_>>()?;
    Ok(SubalgebraSpan::from_coord_span(target, &coords))
}

/// Inverse image of a span: everything in the source mapping into it. Always
/// a unital *-subalgebra; commutative whenever `f` is injective and the
/// image span is.
pub fn preimage_hom<S: Scalar>(
    f: &StarHom<S>,
    t: &SubalgebraSpan<S>,
) -> Result<SubalgebraSpan<S>> {
    let target = f.target();
    if t.ambient() != &target {
        return Err(Error::AmbientMismatch);
    }
    let source = f.source().clone();
    let d_src = source.dimension();
    // f(x) ∈ span(t) iff f(x) = Σ β_j t_j for some β; solve the joint system
    // over (x, β) and project onto the x part.
    let images: Vec<Vec<S>> = source
        .support_units::<S>()
        .iter()
        .map(|e| Ok(target.to_coords(&f.apply_matrix(e)?)))
        .collect::<Result<_>>()?;
    let t_basis = t.coords();
    let cols = d_src + t_basis.len();
    let mut equations = Vec::with_capacity(target.dimension());
    for out in 0..target.dimension() {
        let mut eq = Vec::with_capacity(cols);
        for img in &images {
            eq.push(img[out].clone());
        }
        for row in t_basis {
            eq.push(row[out].neg());
        }
        equations.push(eq);
    }
    let solutions = nullspace(&equations, cols);
    let vectors: Vec<Vec<S>> = solutions
        .iter()
        .map(|sol| sol[..d_src].to_vec())
        .collect();
    let coords = row_space_basis(&vectors);
    Ok(SubalgebraSpan::from_coord_span(source, &coords))
}
