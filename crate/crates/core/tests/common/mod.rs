//! Shared test support: the independent matrix realization of the built-in
//! super table inside 3x3 matrices (one odd index, two even), used as an
//! oracle for structure constants and for products in the enveloping
//! algebra, plus a small deterministic generator for randomized checks.
//!
//! Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use std::sync::Arc;

use superverma_core::enveloping::EnvElement;
use superverma_core::scalar::Scalar;
use superverma_core::structure::SuperAlgebra;

pub type Mat = Vec<Vec<Scalar>>;

pub fn mat_zero() -> Mat {
    vec![vec![Scalar::zero(); 3]; 3]
}

pub fn mat_identity() -> Mat {
    let mut m = mat_zero();
    for k in 0..3 {
        m[k][k] = Scalar::one();
    }
    m
}

fn eij(i: usize, j: usize) -> Mat {
    let mut m = mat_zero();
    m[i][j] = Scalar::one();
    m
}

pub fn mat_add(a: &Mat, b: &Mat) -> Mat {
    let mut out = mat_zero();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = &a[i][j] + &b[i][j];
        }
    }
    out
}

pub fn mat_scale(a: &Mat, c: &Scalar) -> Mat {
    let mut out = mat_zero();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = &a[i][j] * c;
        }
    }
    out
}

pub fn mat_neg(a: &Mat) -> Mat {
    mat_scale(a, &(-Scalar::one()))
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = mat_zero();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let term = &a[i][k] * &b[k][j];
                out[i][j] = &out[i][j] + &term;
            }
        }
    }
    out
}

/// The fundamental matrices of the built-in super table. Index 0 is the odd
/// slot, indices 1 and 2 the even block.
pub fn matrix_of(name: &str) -> Mat {
    match name {
        "H" => mat_add(&eij(1, 1), &mat_neg(&eij(2, 2))),
        "X" => eij(1, 2),
        "Y" => eij(2, 1),
        "x" => mat_add(&eij(0, 2), &eij(1, 0)),
        "y" => mat_add(&eij(0, 1), &mat_neg(&eij(2, 0))),
        other => panic!("no matrix for {other}"),
    }
}

/// Supercommutator of parity-homogeneous matrices.
pub fn supercommutator(a: &Mat, b: &Mat, pa: u8, pb: u8) -> Mat {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    if pa == 1 && pb == 1 {
        mat_add(&ab, &ba)
    } else {
        mat_add(&ab, &mat_neg(&ba))
    }
}

/// Push an enveloping-algebra element through the fundamental representation.
/// Coefficients must be constants.
pub fn represent(alg: &Arc<SuperAlgebra>, e: &EnvElement) -> Mat {
    let mut out = mat_zero();
    for (mono, coeff) in e.terms() {
        let c = coeff.as_constant().expect("constant coefficients");
        let mut prod = mat_identity();
        for pos in mono.letters() {
            let name = alg.basis_name(alg.pbw_basis_index(pos));
            prod = mat_mul(&prod, &matrix_of(name));
        }
        out = mat_add(&out, &mat_scale(&prod, &c));
    }
    out
}

/// xorshift generator for reproducible randomized tests.
pub struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}
