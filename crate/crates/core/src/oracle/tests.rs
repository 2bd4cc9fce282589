use super::hom::{apply_hom, preimage_hom, StarHom};
use super::linalg::Matrix;
use super::scalar::{FloatComplex, RatComplex, Scalar};
use super::unitary::{block_diagonal_unitary, pythagorean_unitary, random_block_unitary};
use super::*;
use crate::partition::enumerate_partitions;
use crate::util::SplitMix64;
use crate::witness::witness_poset;

fn spec(sizes: &[usize]) -> AlgebraSpec {
    AlgebraSpec::new(sizes).unwrap()
}

fn rat_matrix(entries: &[&[i64]]) -> Matrix<RatComplex> {
    Matrix::from_fn(entries.len(), entries[0].len(), |r, c| {
        RatComplex::from_int(entries[r][c])
    })
}

/// Seeded random self-adjoint matrix supported on the ambient, with small
/// integer entries.
fn random_selfadjoint(amb: &Ambient, rng: &mut SplitMix64) -> Matrix<RatComplex> {
    let n = amb.matrix_size();
    let mut m = Matrix::zeros(n, n);
    for range in amb.spec().block_ranges() {
        for r in range.clone() {
            for c in range.clone() {
                if r <= c {
                    let re = rng.next_below(7) as i64 - 3;
                    let im = if r == c { 0 } else { rng.next_below(7) as i64 - 3 };
                    m.set(r, c, RatComplex::from_parts(re, 1, im, 1));
                    if r != c {
                        m.set(c, r, RatComplex::from_parts(re, 1, -im, 1));
                    }
                }
            }
        }
    }
    m
}

#[test]
fn empty_seeds_generate_the_scalars() {
    let amb = Ambient::new(&spec(&[2, 1]));
    let s = generate_subalgebra::<RatComplex>(&amb, &[]).unwrap();
    assert_eq!(s.dimension(), 1);
    assert!(s.is_unital() && s.is_star_closed() && s.is_commutative());
    assert!(s.equals_span(&scalar_span(&amb)).unwrap());
}

#[test]
fn distinct_eigenvalues_generate_the_diagonal() {
    let amb = Ambient::new(&spec(&[2]));
    let seed = rat_matrix(&[&[1, 0], &[0, 2]]);
    let s = generate_subalgebra(&amb, &[seed]).unwrap();
    assert_eq!(s.dimension(), 2);
    assert!(s.equals_span(&diagonal_masa(&amb)).unwrap());
}

#[test]
fn symmetric_flip_generates_two_dimensions() {
    let amb = Ambient::new(&spec(&[2]));
    let seed = rat_matrix(&[&[0, 1], &[1, 0]]);
    let s = generate_subalgebra(&amb, &[seed]).unwrap();
    assert_eq!(s.dimension(), 2);
    assert!(s.is_commutative());
    s.verify_closure().unwrap();
}

#[test]
fn generate_rejects_outside_matrices() {
    let amb = Ambient::new(&spec(&[1, 1]));
    let off = rat_matrix(&[&[0, 1], &[0, 0]]);
    assert!(generate_subalgebra(&amb, &[off]).is_err());
}

#[test]
fn intersection_examples() {
    let amb = Ambient::new(&spec(&[2]));
    let diag = diagonal_masa::<RatComplex>(&amb);
    assert!(intersect_spans(&diag, &diag)
        .unwrap()
        .equals_span(&diag)
        .unwrap());
    let u = pythagorean_unitary::<RatComplex>(2, 0);
    let conj = conjugate_span(&u, &diag).unwrap();
    let inter = intersect_spans(&diag, &conj).unwrap();
    assert_eq!(inter.dimension(), 1);
    let everything = full_span(&amb);
    assert!(intersect_spans(&diag, &everything)
        .unwrap()
        .equals_span(&diag)
        .unwrap());
}

#[test]
fn commutant_and_center_examples() {
    // Center of M2 ⊕ C has dimension 2 (one per block).
    let amb = Ambient::new(&spec(&[2, 1]));
    assert_eq!(center::<RatComplex>(&amb).dimension(), 2);
    // Commutant of the scalars is everything.
    let scal = scalar_span::<RatComplex>(&amb);
    assert_eq!(commutant_in(&amb, &scal).dimension(), amb.dimension());
    // The diagonal of M2 is its own commutant (maximal abelian).
    let amb2 = Ambient::new(&spec(&[2]));
    let diag = diagonal_masa::<RatComplex>(&amb2);
    assert!(commutant_in(&amb2, &diag).equals_span(&diag).unwrap());
}

#[test]
fn center_dimensions_both_modes() {
    for sizes in [vec![1], vec![2], vec![2, 1], vec![3], vec![2, 2], vec![3, 1]] {
        let s = spec(&sizes);
        let amb = Ambient::new(&s);
        assert_eq!(center::<RatComplex>(&amb).dimension(), s.block_count());
        assert_eq!(center::<FloatComplex>(&amb).dimension(), s.block_count());
    }
}

#[test]
fn completion_of_scalars_in_m3_is_three_dimensional() {
    let amb = Ambient::new(&spec(&[3]));
    let scal = scalar_span::<RatComplex>(&amb);
    let m = maximal_completion(&amb, &scal).unwrap();
    assert_eq!(m.dimension(), 3);
    assert!(m.is_commutative());
    // Maximal abelian: equal to its own relative commutant.
    assert!(commutant_in(&amb, &m).equals_span(&m).unwrap());
    // Completing a maximal algebra is a fixed point.
    let again = maximal_completion(&amb, &m).unwrap();
    assert!(again.equals_span(&m).unwrap());
}

#[test]
fn completion_in_commutative_ambient_is_everything() {
    let amb = Ambient::new(&spec(&[1, 1, 1]));
    let scal = scalar_span::<RatComplex>(&amb);
    let m = maximal_completion(&amb, &scal).unwrap();
    assert_eq!(m.dimension(), 3);
    assert!(m.equals_span(&full_span(&amb)).unwrap());
}

#[test]
fn completion_rejects_noncommutative_input() {
    let amb = Ambient::new(&spec(&[2]));
    let everything = full_span::<RatComplex>(&amb);
    assert!(maximal_completion(&amb, &everything).is_err());
}

#[test]
fn pythagorean_unitaries_are_exactly_unitary() {
    let one = pythagorean_unitary::<RatComplex>(1, 0);
    assert_eq!(one, Matrix::identity(1));
    let two = pythagorean_unitary::<RatComplex>(2, 0);
    assert_eq!(*two.get(0, 0), RatComplex::from_ratio(3, 5));
    assert_eq!(*two.get(0, 1), RatComplex::from_ratio(-4, 5));
    assert_eq!(*two.get(1, 0), RatComplex::from_ratio(4, 5));
    assert_eq!(*two.get(1, 1), RatComplex::from_ratio(3, 5));
    for n in 1..=4 {
        for seed in 0..3 {
            let u = pythagorean_unitary::<RatComplex>(n, seed);
            let defect = u.mul(&u.adjoint()).sub(&Matrix::identity(n));
            assert!(defect.is_syntactic_zero());
        }
    }
    // Three plane rotations leave no zero entry for the default seed.
    let three = pythagorean_unitary::<RatComplex>(3, 0);
    assert!(three.entries().all(|v| !v.is_zero()));
}

#[test]
fn hom_identity_law() {
    let amb = Ambient::new(&spec(&[2, 1]));
    let ident = StarHom::unitary_conjugation(&amb, amb.identity::<RatComplex>()).unwrap();
    let mut rng = SplitMix64::new(5);
    let s = generate_subalgebra(&amb, &[random_selfadjoint(&amb, &mut rng)]).unwrap();
    assert!(apply_hom(&ident, &s).unwrap().equals_span(&s).unwrap());
}

#[test]
fn hom_composition_law() {
    let amb = Ambient::new(&spec(&[2]));
    let f = StarHom::unitary_conjugation(&amb, pythagorean_unitary::<RatComplex>(2, 0)).unwrap();
    let g = StarHom::unitary_conjugation(&amb, pythagorean_unitary::<RatComplex>(2, 1)).unwrap();
    let gf = f.compose(&g).unwrap();
    let diag = diagonal_masa::<RatComplex>(&amb);
    let lhs = apply_hom(&gf, &diag).unwrap();
    let rhs = apply_hom(&g, &apply_hom(&f, &diag).unwrap()).unwrap();
    assert!(lhs.equals_span(&rhs).unwrap());
}

#[test]
fn embedding_composition_law() {
    // (1,1) → M2 diagonally, then M2 → M2 ⊕ M2 with the block doubled.
    let tiny = Ambient::new(&spec(&[1, 1]));
    let mid = Ambient::new(&spec(&[2]));
    let big = Ambient::new(&spec(&[2, 2]));
    let f = StarHom::block_embedding(&tiny, &mid, vec![vec![0, 1]]).unwrap();
    let g = StarHom::block_embedding(&mid, &big, vec![vec![0], vec![0]]).unwrap();
    let gf = f.compose(&g).unwrap();
    let mut rng = SplitMix64::new(13);
    for _ in 0..10 {
        let s = generate_subalgebra(&tiny, &[random_selfadjoint(&tiny, &mut rng)]).unwrap();
        let step = apply_hom(&g, &apply_hom(&f, &s).unwrap()).unwrap();
        let direct = apply_hom(&gf, &s).unwrap();
        assert!(direct.equals_span(&step).unwrap());
    }
    // Mismatched middles refuse to compose.
    let h = StarHom::block_embedding(&tiny, &big, vec![vec![0, 1], vec![0, 1]]).unwrap();
    assert!(h.compose(&g).is_err());
}

#[test]
fn injective_embedding_laws() {
    // Diagonal embedding of C ⊕ C into M2.
    let src = Ambient::new(&spec(&[1, 1]));
    let tgt = Ambient::new(&spec(&[2]));
    let f = StarHom::block_embedding(&src, &tgt, vec![vec![0, 1]]).unwrap();
    assert!(f.is_injective());
    let mut rng = SplitMix64::new(11);
    for _ in 0..25 {
        let s = generate_subalgebra(&src, &[random_selfadjoint(&src, &mut rng)]).unwrap();
        let t = generate_subalgebra(&src, &[random_selfadjoint(&src, &mut rng)]).unwrap();
        let fs = apply_hom(&f, &s).unwrap();
        let ft = apply_hom(&f, &t).unwrap();
        // Order embedding.
        assert_eq!(
            s.contains_span(&t).unwrap(),
            fs.contains_span(&ft).unwrap()
        );
        // Intersection preservation.
        let inter = intersect_spans(&s, &t).unwrap();
        let f_inter = apply_hom(&f, &inter).unwrap();
        assert!(f_inter
            .equals_span(&intersect_spans(&fs, &ft).unwrap())
            .unwrap());
        // Preimage section: preimage(f, f(s)) = s.
        assert!(preimage_hom(&f, &fs).unwrap().equals_span(&s).unwrap());
    }
}

#[test]
fn galois_adjunction_for_injective_homs() {
    let src = Ambient::new(&spec(&[1, 1]));
    let tgt = Ambient::new(&spec(&[2]));
    let f = StarHom::block_embedding(&src, &tgt, vec![vec![0, 1]]).unwrap();
    let mut rng = SplitMix64::new(23);
    for _ in 0..25 {
        let c = generate_subalgebra(&src, &[random_selfadjoint(&src, &mut rng)]).unwrap();
        let d = generate_subalgebra(&tgt, &[random_selfadjoint(&tgt, &mut rng)]).unwrap();
        if !d.is_commutative() {
            continue;
        }
        let fc = apply_hom(&f, &c).unwrap();
        let pre = preimage_hom(&f, &d).unwrap();
        assert_eq!(
            d.contains_span(&fc).unwrap(),
            pre.contains_span(&c).unwrap()
        );
    }
}

#[test]
fn unitary_conjugation_is_an_order_isomorphism_of_spans() {
    // Conjugating by a fixed unitary preserves inclusions in both
    // directions, so it acts as an order isomorphism on realized posets.
    let amb = Ambient::new(&spec(&[2, 1]));
    let u = block_diagonal_unitary::<RatComplex>(&spec(&[2, 1]), 4);
    let mut rng = SplitMix64::new(17);
    for _ in 0..20 {
        let s = generate_subalgebra(&amb, &[random_selfadjoint(&amb, &mut rng)]).unwrap();
        let t = generate_subalgebra(&amb, &[random_selfadjoint(&amb, &mut rng)]).unwrap();
        let us = conjugate_span(&u, &s).unwrap();
        let ut = conjugate_span(&u, &t).unwrap();
        assert_eq!(t.contains_span(&s).unwrap(), ut.contains_span(&us).unwrap());
        assert_eq!(s.contains_span(&t).unwrap(), us.contains_span(&ut).unwrap());
    }
}

#[test]
fn projection_of_assembled_span_recovers_the_factor() {
    let s = spec(&[2, 1]);
    let amb = Ambient::new(&s);
    // Assemble D2 ⊕ C from per-block pieces, then project back.
    let block0 = Ambient::new(&spec(&[2]));
    let d2 = diagonal_masa::<RatComplex>(&block0);
    let assembled = direct_sum_spans(&amb, &[d2.clone(), scalar_span(&Ambient::new(&spec(&[1])))])
        .unwrap();
    let p0 = StarHom::projection(&amb, 0).unwrap();
    let image = apply_hom(&p0, &assembled).unwrap();
    assert!(image.equals_span(&d2).unwrap());
}

#[test]
fn direct_sum_and_projections_satisfy_section_laws() {
    let s = spec(&[2, 2]);
    let amb = Ambient::new(&s);
    let mut rng = SplitMix64::new(31);
    for _ in 0..10 {
        // Per-block commutative spans.
        let blocks: Vec<SubalgebraSpan<RatComplex>> = s
            .sizes()
            .iter()
            .map(|&n| {
                let block_amb = Ambient::new(&spec(&[n]));
                generate_subalgebra(&block_amb, &[random_selfadjoint(&block_amb, &mut rng)])
                    .unwrap()
            })
            .collect();
        let assembled = direct_sum_spans(&amb, &blocks).unwrap();
        // Projecting recovers each part.
        for (i, part) in blocks.iter().enumerate() {
            let p = StarHom::projection(&amb, i).unwrap();
            assert!(apply_hom(&p, &assembled).unwrap().equals_span(part).unwrap());
        }
        // Re-assembling the projections of any span contains the span.
        let seed = random_selfadjoint(&amb, &mut rng);
        let any = generate_subalgebra(&amb, &[seed]).unwrap();
        let parts: Vec<SubalgebraSpan<RatComplex>> = (0..s.block_count())
            .map(|i| {
                let p = StarHom::projection(&amb, i).unwrap();
                apply_hom(&p, &any).unwrap()
            })
            .collect();
        let inflated = direct_sum_spans(&amb, &parts).unwrap();
        assert!(inflated.contains_span(&any).unwrap());
    }
}

#[test]
fn spans_containing_the_center_split_blockwise() {
    let s = spec(&[2, 1]);
    let amb = Ambient::new(&s);
    let z = center::<RatComplex>(&amb);
    let mut rng = SplitMix64::new(47);
    for _ in 0..10 {
        let mut seeds = z.basis_matrices();
        seeds.push(random_selfadjoint(&amb, &mut rng));
        let span = generate_subalgebra(&amb, &seeds).unwrap();
        let parts: Vec<SubalgebraSpan<RatComplex>> = (0..s.block_count())
            .map(|i| {
                let p = StarHom::projection(&amb, i).unwrap();
                apply_hom(&p, &span).unwrap()
            })
            .collect();
        let reassembled = direct_sum_spans(&amb, &parts).unwrap();
        assert!(reassembled.equals_span(&span).unwrap());
    }
}

#[test]
fn center_contained_in_every_masa() {
    let s = spec(&[2, 1]);
    let amb = Ambient::new(&s);
    let z = center::<RatComplex>(&amb);
    let mut rng = SplitMix64::new(3);
    for _ in 0..5 {
        let seed = random_selfadjoint(&amb, &mut rng);
        let c = generate_subalgebra(&amb, &[seed]).unwrap();
        if !c.is_commutative() {
            continue;
        }
        let m = maximal_completion(&amb, &c).unwrap();
        assert!(m.contains_span(&z).unwrap());
    }
}

#[test]
fn realize_commutative_spec_is_partition_poset() {
    let p = realize_witness::<RatComplex>(&spec(&[1, 1]), &[], 4).unwrap();
    assert_eq!(p.size(), 2);
    assert!(p.le(0, 1));
}

#[test]
fn realize_single_block_matches_witness() {
    let s = spec(&[2]);
    let u = block_diagonal_unitary::<RatComplex>(&s, 0);
    let realized = realize_witness(&s, &[u], 4).unwrap();
    let combinatorial = witness_poset(&s, 2).unwrap();
    assert_eq!(realized, combinatorial.poset);
}

#[test]
fn realize_two_one_matches_witness_labels() {
    let s = spec(&[2, 1]);
    let u = block_diagonal_unitary::<RatComplex>(&s, 0);
    let realized = realize_witness(&s, &[u], 4).unwrap();
    let combinatorial = witness_poset(&s, 2).unwrap();
    assert_eq!(realized.size(), 8);
    assert_eq!(realized, combinatorial.poset);
}

#[test]
fn realize_rejects_degenerate_unitaries() {
    let s = spec(&[2]);
    let amb = Ambient::new(&s);
    // The identity is maximally non-generic.
    let err = realize_witness::<RatComplex>(&s, &[amb.identity()], 4).unwrap_err();
    match err {
        crate::error::Error::NonGenericUnitaries { found, expected, .. } => {
            assert_eq!(found, 2);
            assert_eq!(expected, 1);
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn realize_respects_the_guard() {
    let s = spec(&[3, 2]);
    let u = block_diagonal_unitary::<RatComplex>(&s, 0);
    assert!(matches!(
        realize_witness(&s, std::slice::from_ref(&u), 4),
        Err(crate::error::Error::GuardExceeded { .. })
    ));
    assert!(realize_witness(&s, &[u], 5).is_ok());
}

#[test]
fn float_masa_intersections_are_generically_central() {
    let s = spec(&[2, 1]);
    let amb = Ambient::new(&s);
    let diag = diagonal_masa::<FloatComplex>(&amb);
    let mut rng = SplitMix64::new(9);
    for _ in 0..10 {
        let u = random_block_unitary(&s, &mut rng);
        let conj = conjugate_span(&u, &diag).unwrap();
        let inter = intersect_spans(&diag, &conj).unwrap();
        assert_eq!(inter.dimension(), s.block_count());
    }
}

#[test]
fn cross_mode_agreement_on_named_examples() {
    // Dimensions computed exactly and in floats agree on the small examples.
    for sizes in [vec![1], vec![2], vec![1, 1], vec![2, 1], vec![3]] {
        let s = spec(&sizes);
        let amb = Ambient::new(&s);
        assert_eq!(
            center::<RatComplex>(&amb).dimension(),
            center::<FloatComplex>(&amb).dimension()
        );
        assert_eq!(
            diagonal_masa::<RatComplex>(&amb).dimension(),
            diagonal_masa::<FloatComplex>(&amb).dimension()
        );
        if s.total_points() >= 2 {
            let u_exact = block_diagonal_unitary::<RatComplex>(&s, 0);
            let u_float = block_diagonal_unitary::<FloatComplex>(&s, 0);
            let i_exact = intersect_spans(
                &diagonal_masa(&amb),
                &conjugate_span(&u_exact, &diagonal_masa(&amb)).unwrap(),
            )
            .unwrap();
            let i_float = intersect_spans(
                &diagonal_masa(&amb),
                &conjugate_span(&u_float, &diagonal_masa(&amb)).unwrap(),
            )
            .unwrap();
            assert_eq!(i_exact.dimension(), i_float.dimension());
        }
    }
}

#[test]
fn every_operation_returns_closed_spans() {
    // Post-hoc re-verification: unital, adjoint-closed, product-closed, for
    // the output of each span-producing operation.
    let s = spec(&[2, 1]);
    let amb = Ambient::new(&s);
    let mut rng = SplitMix64::new(61);
    let seed = random_selfadjoint(&amb, &mut rng);
    let generated = generate_subalgebra(&amb, &[seed]).unwrap();
    let u = block_diagonal_unitary::<RatComplex>(&s, 2);
    let conjugated = conjugate_span(&u, &generated).unwrap();
    let intersected = intersect_spans(&generated, &diagonal_masa(&amb)).unwrap();
    let relative = commutant_in(&amb, &generated);
    let z = center::<RatComplex>(&amb);
    let completed = maximal_completion(&amb, &generated).unwrap();
    let p0 = StarHom::projection(&amb, 0).unwrap();
    let projected = apply_hom(&p0, &generated).unwrap();
    let pulled = preimage_hom(&p0, &projected).unwrap();
    let assembled = direct_sum_spans(
        &amb,
        &[
            diagonal_masa(&Ambient::new(&spec(&[2]))),
            scalar_span(&Ambient::new(&spec(&[1]))),
        ],
    )
    .unwrap();
    for (name, span) in [
        ("generated", &generated),
        ("conjugated", &conjugated),
        ("intersected", &intersected),
        ("commutant", &relative),
        ("center", &z),
        ("completed", &completed),
        ("projected", &projected),
        ("preimage", &pulled),
        ("assembled", &assembled),
    ] {
        span.verify_closure().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn matrix_json_round_trips() {
    let m = pythagorean_unitary::<RatComplex>(3, 1);
    let json = MatrixJson::from_exact(&m);
    let text = serde_json::to_string(&json).unwrap();
    let back: MatrixJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_exact().unwrap(), m);
    assert!(back.to_float().is_err());

    let f = Matrix::from_fn(2, 2, |r, c| FloatComplex::new(r as f64, c as f64));
    let json = MatrixJson::from_float(&f);
    let text = serde_json::to_string(&json).unwrap();
    let back: MatrixJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_float().unwrap(), f);
}

#[test]
fn partition_spans_order_like_partitions() {
    let s = spec(&[2, 1]);
    let amb = Ambient::new(&s);
    let parts = enumerate_partitions(3);
    for p in &parts {
        for q in &parts {
            let sp = partition_span::<RatComplex>(&amb, p);
            let sq = partition_span::<RatComplex>(&amb, q);
            assert_eq!(
                sq.contains_span(&sp).unwrap(),
                q.refines(p).unwrap(),
                "{p} vs {q}"
            );
        }
    }
}
