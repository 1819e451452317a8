//! A rank-two table loaded from the text format: two commuting copies of the
//! even builtin. Weight levels here have dimension greater than one, so this
//! exercises the matrix side of the Hermitian analysis, certificates and
//! character bounds away from the rank-one fast path.

use std::collections::BTreeMap;
use std::sync::Arc;

use superverma_core::gram::HermitianVerdict;
use superverma_core::ktype::{induce_ktype_bound, KTypeTable, Mult, TableDefault};
use superverma_core::scalar::{PolyScalar, Scalar};
use superverma_core::structure::{load_algebra, SuperAlgebra, Weight};
use superverma_core::unitary::{
    necessary_conditions, singular_vectors, unitarity_certificate, Certificate,
};
use superverma_core::verma::{verma, LambdaSpec};

const TABLE: &str = "
algebra double

basis H1 even
basis X1 even
basis Y1 even
basis H2 even
basis X2 even
basis Y2 even

cartan H1 H2
compact H1 H2

bracket [H1,X1] = 2*X1
bracket [H1,Y1] = -2*Y1
bracket [X1,Y1] = H1
bracket [H2,X2] = 2*X2
bracket [H2,Y2] = -2*Y2
bracket [X2,Y2] = H2

bracket [H1,H2] = 0
bracket [H1,X2] = 0
bracket [H1,Y2] = 0
bracket [H2,X1] = 0
bracket [H2,Y1] = 0
bracket [X1,X2] = 0
bracket [X1,Y2] = 0
bracket [Y1,X2] = 0
bracket [Y1,Y2] = 0

root X1 positive noncompact : 2 0
root Y1 negative noncompact : -2 0
root X2 positive noncompact : 0 2
root Y2 negative noncompact : 0 -2

conj H1 = -H1
conj X1 = Y1
conj Y1 = X1
conj H2 = -H2
conj X2 = Y2
conj Y2 = X2
";

fn algebra() -> Arc<SuperAlgebra> {
    Arc::new(load_algebra(TABLE).expect("table validates"))
}

fn si(n: i64) -> Scalar {
    Scalar::from_int(n)
}

#[test]
fn loads_and_validates() {
    let alg = algebra();
    assert_eq!(alg.rank(), 2);
    assert_eq!(alg.dim(), 6);
}

#[test]
fn weight_levels_have_higher_dimension() {
    let alg = algebra();
    let module = verma(&alg, LambdaSpec::Symbolic, 3).unwrap();
    assert_eq!(module.level_dim(0), 1);
    assert_eq!(module.level_dim(1), 2); // Y1 v, Y2 v
    assert_eq!(module.level_dim(2), 3);
    assert_eq!(module.level_dim(3), 4);
}

#[test]
fn symbolic_gram_is_diagonal_and_hermitian() {
    let alg = algebra();
    let module = verma(&alg, LambdaSpec::Symbolic, 2).unwrap();
    let level = module.gram(1).unwrap();
    assert_eq!(level.dim(), 2);
    // the two lowering directions are orthogonal; diagonal entries are the
    // single-factor norms in the respective coordinates
    let t1 = PolyScalar::coordinate(2, 0);
    let t2 = PolyScalar::coordinate(2, 1);
    let diag: Vec<&PolyScalar> = (0..2).map(|i| &level.entries[i][i]).collect();
    assert!(diag.contains(&&t1.neg()));
    assert!(diag.contains(&&t2.neg()));
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(level.entries[i][j], level.entries[j][i].conj());
            if i != j {
                assert!(level.entries[i][j].is_zero());
            }
        }
    }
}

#[test]
fn certificates_split_by_coordinate_signs() {
    let alg = algebra();
    let unitary = Weight::new(vec![si(-1), si(-2)]);
    assert_eq!(
        unitarity_certificate(&alg, &unitary, 4).unwrap(),
        Certificate::UnitaryToDepth(4)
    );

    // one bad direction spoils the form at level one
    let mixed = Weight::new(vec![si(-1), si(1)]);
    match unitarity_certificate(&alg, &mixed, 4).unwrap() {
        Certificate::NotUnitary { level, witness, value } => {
            assert_eq!(level, 1);
            assert_eq!(value, si(-1));
            // the witness points along the second lowering direction
            let module = verma(&alg, LambdaSpec::Numeric(mixed.clone()), 1).unwrap();
            let nonzero: Vec<String> = module
                .level_basis(1)
                .iter()
                .zip(&witness)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, _)| m.render(&alg))
                .collect();
            assert_eq!(nonzero, vec!["Y2"]);
        }
        other => panic!("expected NotUnitary, got {other:?}"),
    }
}

#[test]
fn necessary_conditions_cover_both_roots() {
    let alg = algebra();
    let report = necessary_conditions(&alg, &Weight::new(vec![si(-1), si(1)])).unwrap();
    assert_eq!(report.rows.len(), 2);
    assert!(!report.pass);
    let ok_flags: Vec<bool> = report.rows.iter().map(|r| r.ok).collect();
    assert_eq!(ok_flags.iter().filter(|&&ok| ok).count(), 1);

    let report = necessary_conditions(&alg, &Weight::new(vec![si(0), si(-3)])).unwrap();
    assert!(report.pass);
}

#[test]
fn singular_vectors_in_one_factor() {
    let alg = algebra();
    // integral weight in the first factor only: kernel at level t1+1 = 3
    // spanned by the third power of the first lowering operator
    let weight = Weight::new(vec![si(2), Scalar::from_ratio(-1, 2)]);
    let module = verma(&alg, LambdaSpec::Numeric(weight), 4).unwrap();
    let found = singular_vectors(&module, 4).unwrap();
    assert_eq!(found.iter().map(|sv| sv.level).min(), Some(3));
    let level3 = module.gram(3).unwrap();
    assert!(
        !matches!(level3.verdict.unwrap(), HermitianVerdict::PositiveDefinite),
        "level 3 must degenerate"
    );
}

const RENAMED: &str = "
algebra renamed
basis F even
basis K even
basis E even
cartan K
compact K
bracket [K,E] = 2*E
bracket [K,F] = -2*F
bracket [E,F] = K
bracket [E,E] = 0
bracket [F,F] = 0
root E positive noncompact : 2
root F negative noncompact : -2
conj K = -K
conj E = F
conj F = E
";

#[test]
fn renamed_scrambled_table_reproduces_even_builtin() {
    // same algebra as the builtin even table, but with different names and a
    // scrambled basis order; everything downstream must agree
    let alg = Arc::new(load_algebra(RENAMED).unwrap());
    let builtin = Arc::new(superverma_core::structure::sl2());

    let m1 = verma(&alg, LambdaSpec::Symbolic, 6).unwrap();
    let m2 = verma(&builtin, LambdaSpec::Symbolic, 6).unwrap();
    for d in 0..=6 {
        assert_eq!(
            m1.gram(d).unwrap().entries,
            m2.gram(d).unwrap().entries,
            "diagonal at depth {d}"
        );
    }

    let lam = Weight::new(vec![Scalar::from_ratio(-3, 2)]);
    assert_eq!(
        unitarity_certificate(&alg, &lam, 6).unwrap(),
        unitarity_certificate(&builtin, &lam, 6).unwrap()
    );
}

#[test]
fn character_bound_in_rank_two() {
    let alg = algebra();
    // no odd generators: the odd span is the empty product alone and the
    // bound collapses to the input multiplicity
    let mut entries = BTreeMap::new();
    entries.insert(vec![si(0), si(0)], Mult::Count(3));
    let table = KTypeTable { entries, default: TableDefault::Zero };
    let bound = induce_ktype_bound(&alg, &table, &[si(0), si(0)]).unwrap();
    assert_eq!(bound.span_dim, 1);
    assert_eq!(bound.bound, Mult::Count(3));
}
