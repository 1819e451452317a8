//! The fundamental matrix realization as an independent oracle: every
//! structure constant of the built-in tables must match a supercommutator of
//! explicit matrices, and PBW normal forms must represent to the same matrix
//! as the plain letter product.

mod common;

use std::sync::Arc;

use common::{matrix_of, mat_mul, mat_identity, mat_zero, mat_add, mat_scale, represent, supercommutator};
use superverma_core::enveloping::EnvElement;
use superverma_core::structure::osp12;

#[test]
fn bracket_table_matches_matrix_supercommutators() {
    let alg = Arc::new(osp12());
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            let ma = matrix_of(alg.basis_name(a));
            let mb = matrix_of(alg.basis_name(b));
            let lhs = supercommutator(&ma, &mb, alg.parity(a), alg.parity(b));
            let mut rhs = mat_zero();
            for (k, c) in alg.bracket(a, b) {
                rhs = mat_add(&rhs, &mat_scale(&matrix_of(alg.basis_name(*k)), c));
            }
            assert_eq!(
                lhs,
                rhs,
                "bracket [{}, {}] disagrees with the matrix oracle",
                alg.basis_name(a),
                alg.basis_name(b)
            );
        }
    }
}

#[test]
fn normal_forms_represent_like_raw_products() {
    // all words of length <= 4 in the five generators
    let alg = Arc::new(osp12());
    let dim = alg.dim();
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &words {
            for g in 0..dim {
                let mut w2 = w.clone();
                w2.push(g);
                next.push(w2);
            }
        }
        for w in next.iter() {
            let pairs: Vec<(usize, u32)> = w.iter().map(|&g| (g, 1)).collect();
            let nf = EnvElement::from_word(&alg, &pairs);
            let lhs = represent(&alg, &nf);
            let mut rhs = mat_identity();
            for &g in w {
                rhs = mat_mul(&rhs, &matrix_of(alg.basis_name(g)));
            }
            assert_eq!(lhs, rhs, "word {w:?}");
        }
        words = next;
    }
}
