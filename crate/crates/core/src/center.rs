//! Central elements of the enveloping algebra up to a filtration degree:
//! enumerate the weight-zero PBW monomials, impose commutation with every
//! generator, and solve the resulting exact linear system.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::enveloping::{EnvElement, PBWMonomial};
use crate::linalg;
use crate::scalar::Scalar;
use crate::structure::SuperAlgebra;
use crate::verma::monomial_element;

/// All PBW monomials of total degree at most `max_degree` and weight zero.
fn weight_zero_monomials(alg: &SuperAlgebra, max_degree: u32) -> Vec<PBWMonomial> {
    let mut out = Vec::new();
    let len = alg.pbw_len();
    let mut exps = vec![0u32; len];
    fn rec(
        alg: &SuperAlgebra,
        pos: usize,
        remaining: u32,
        exps: &mut Vec<u32>,
        out: &mut Vec<PBWMonomial>,
    ) {
        if pos == exps.len() {
            let m = PBWMonomial(exps.clone());
            if m.weight(alg).iter().all(|c| c.is_zero()) {
                out.push(m);
            }
            return;
        }
        let cap = if alg.parity_at(pos) == 1 { remaining.min(1) } else { remaining };
        for e in 0..=cap {
            exps[pos] = e;
            rec(alg, pos + 1, remaining - e, exps, out);
        }
        exps[pos] = 0;
    }
    rec(alg, 0, max_degree, &mut exps, &mut out);
    out.sort();
    out
}

/// A basis of the space of elements `z` of filtration degree at most
/// `max_degree` with `[z, g] = 0` for every generator `g`. Weight-zero
/// elements are even, so the supercommutator is the plain commutator.
pub fn center_candidates(alg: &Arc<SuperAlgebra>, max_degree: u32) -> Vec<EnvElement> {
    let monomials = weight_zero_monomials(alg, max_degree);
    let columns: Vec<EnvElement> =
        monomials.iter().map(|m| monomial_element(alg, m)).collect();

    // rows are indexed by (generator, result monomial)
    let mut row_index: BTreeMap<(usize, PBWMonomial), usize> = BTreeMap::new();
    let mut entries: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); columns.len()];
    for (col, z) in columns.iter().enumerate() {
        for g in 0..alg.dim() {
            let gen = EnvElement::generator(alg, g);
            let comm = z.mul(&gen).unwrap().sub(&gen.mul(z).unwrap());
            for (mono, coeff) in comm.terms() {
                let c = coeff.as_constant().expect("scalar coefficients");
                let next = row_index.len();
                let row = *row_index.entry((g, mono.clone())).or_insert(next);
                entries[col].push((row, c));
            }
        }
    }
    let rows = row_index.len();
    let mut matrix = vec![vec![Scalar::zero(); columns.len()]; rows];
    for (col, cells) in entries.iter().enumerate() {
        for (row, c) in cells {
            matrix[*row][col] = c.clone();
        }
    }
    if rows == 0 {
        // everything commutes (e.g. degree 0): all monomials are central
        return columns;
    }

    let kernel = linalg::nullspace(&matrix);
    kernel
        .into_iter()
        .map(|coeffs| {
            let mut z = EnvElement::zero(alg);
            for (col, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    z = z.add(&columns[col].scale(c));
                }
            }
            z
        })
        .collect()
}

/// Exact check that an element commutes with every generator.
pub fn is_central(z: &EnvElement) -> bool {
    let alg = z.algebra();
    (0..alg.dim()).all(|g| {
        let gen = EnvElement::generator(alg, g);
        z.mul(&gen).unwrap() == gen.mul(z).unwrap()
    })
}
