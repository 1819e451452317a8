//! Finite-depth unitarity certificates, grid scans over rank-one highest
//! weights, the root-sign necessary conditions, singular-vector detection,
//! and the closed-form sign analysis of rank-one Gram diagonals.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gram::{analyze_hermitian, HermitianVerdict};
use crate::scalar::{PolyScalar, Scalar};
use crate::structure::{SuperAlgebra, Weight};
use crate::verma::{verma, LambdaSpec, VermaModule};

/// Outcome of a finite-depth positivity check.
///
/// Positive definiteness of every Gram level up to the requested depth is
/// reported as `UnitaryToDepth`; it is a certificate for that depth, never an
/// unconditional statement. The first indefinite level yields `NotUnitary`
/// with an explicit negative-norm vector; if no level is indefinite but some
/// level degenerates, the point is reducible and the radical slice is
/// reported.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    UnitaryToDepth(usize),
    NotUnitary { level: usize, witness: Vec<Scalar>, value: Scalar },
    Reducible { level: usize, kernel: Vec<Vec<Scalar>> },
}

impl Certificate {
    pub fn verdict_name(&self) -> &'static str {
        match self {
            Certificate::UnitaryToDepth(_) => "UnitaryToDepth",
            Certificate::NotUnitary { .. } => "NotUnitary",
            Certificate::Reducible { .. } => "Reducible",
        }
    }
}

fn certificate_from_verdicts(
    verdicts: Vec<(usize, HermitianVerdict)>,
    depth: usize,
) -> Certificate {
    let mut first_kernel: Option<(usize, Vec<Vec<Scalar>>)> = None;
    for (level, verdict) in verdicts {
        match verdict {
            HermitianVerdict::PositiveDefinite => {}
            HermitianVerdict::Indefinite { witness, value } => {
                return Certificate::NotUnitary { level, witness, value };
            }
            HermitianVerdict::SemidefiniteWithKernel(kernel) => {
                if first_kernel.is_none() {
                    first_kernel = Some((level, kernel));
                }
            }
        }
    }
    match first_kernel {
        Some((level, kernel)) => Certificate::Reducible { level, kernel },
        None => Certificate::UnitaryToDepth(depth),
    }
}

/// Positivity certificate for a numeric real highest weight, checking every
/// Gram level up to `depth`.
pub fn unitarity_certificate(
    alg: &Arc<SuperAlgebra>,
    lambda: &Weight,
    depth: usize,
) -> Result<Certificate> {
    lambda.require_real()?;
    let module = verma(alg, LambdaSpec::Numeric(lambda.clone()), depth)?;
    let mut verdicts = Vec::with_capacity(depth + 1);
    for d in 0..=depth {
        let level = module.gram(d)?;
        let verdict = level.verdict.expect("numeric weight");
        let indefinite = matches!(verdict, HermitianVerdict::Indefinite { .. });
        verdicts.push((d, verdict));
        if indefinite {
            break; // the first failing level is the witness level
        }
    }
    Ok(certificate_from_verdicts(verdicts, depth))
}

/// Kernel slices of the Gram levels `1..=depth`: the singular vectors, i.e.
/// the weight vectors annihilated by every raising operator.
pub struct SingularVector {
    pub level: usize,
    pub coords: Vec<Scalar>,
}

pub fn singular_vectors(module: &VermaModule, depth: usize) -> Result<Vec<SingularVector>> {
    if module.is_symbolic() {
        return Err(Error::SymbolicWeight);
    }
    let mut out = Vec::new();
    for d in 1..=depth {
        let level = module.gram(d)?;
        let scalars: Vec<Vec<Scalar>> = level
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.as_constant().expect("numeric")).collect())
            .collect();
        for coords in crate::gram::radical(&scalars) {
            out.push(SingularVector { level: d, coords });
        }
    }
    Ok(out)
}

/// One row of the root-sign test: `λ(H_α) >= 0` for compact even roots,
/// `λ(H_α) <= 0` for noncompact even roots.
#[derive(Debug, Clone)]
pub struct NecessaryRow {
    pub root_name: String,
    pub compact: bool,
    pub value: Scalar,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct NecessaryReport {
    pub rows: Vec<NecessaryRow>,
    pub pass: bool,
}

/// Evaluate the necessary sign conditions on every positive even root.
pub fn necessary_conditions(alg: &SuperAlgebra, lambda: &Weight) -> Result<NecessaryReport> {
    lambda.require_real()?;
    if lambda.rank() != alg.rank() {
        return Err(Error::Arity { expected: alg.rank(), got: lambda.rank() });
    }
    let mut rows = Vec::new();
    for root in alg.roots() {
        if !root.positive || alg.parity(root.vector) != 0 {
            continue;
        }
        let coroot = alg.coroot(root)?;
        let mut value = Scalar::zero();
        for (slot, c) in coroot.iter().enumerate() {
            value = &value + &(c * &lambda.coords[slot]);
        }
        let ok = if root.compact {
            !value.re.is_negative()
        } else {
            !value.re.is_positive()
        };
        rows.push(NecessaryRow {
            root_name: alg.basis_name(root.vector).to_string(),
            compact: root.compact,
            value,
            ok,
        });
    }
    let pass = rows.iter().all(|r| r.ok);
    Ok(NecessaryReport { rows, pass })
}

/// Scan verdict for one grid point. Non-negative integer points sit on the
/// reducible locus and are annotated as such rather than classified.
#[derive(Debug, Clone, PartialEq)]
pub enum ScanVerdict {
    UnitaryToDepth(usize),
    NotUnitary { level: usize },
    Reducible,
}

#[derive(Debug, Clone)]
pub struct ScanRow {
    pub t: BigRational,
    pub verdict: ScanVerdict,
}

fn is_natural(t: &BigRational) -> bool {
    t.denom().is_one() && !t.numer().is_negative()
}

/// Scan a rational grid `from, from+step, ..., <= to` of rank-one highest
/// weights at a fixed depth. The symbolic Gram levels are computed once and
/// evaluated per grid point; points are processed with the parallel mapper
/// and rows come back in grid order.
pub fn unitary_scan(
    alg: &Arc<SuperAlgebra>,
    from: &BigRational,
    to: &BigRational,
    step: &BigRational,
    depth: usize,
) -> Result<Vec<ScanRow>> {
    scan_impl(alg, from, to, step, depth, true)
}

/// Sequential variant of `unitary_scan`; same results, used as the
/// benchmark baseline.
pub fn unitary_scan_seq(
    alg: &Arc<SuperAlgebra>,
    from: &BigRational,
    to: &BigRational,
    step: &BigRational,
    depth: usize,
) -> Result<Vec<ScanRow>> {
    scan_impl(alg, from, to, step, depth, false)
}

fn scan_impl(
    alg: &Arc<SuperAlgebra>,
    from: &BigRational,
    to: &BigRational,
    step: &BigRational,
    depth: usize,
    parallel: bool,
) -> Result<Vec<ScanRow>> {
    if alg.rank() != 1 {
        return Err(Error::Unsupported("unitary scans require a rank-one algebra".into()));
    }
    if !step.is_positive() {
        return Err(Error::Unsupported("scan step must be positive".into()));
    }
    let mut grid: Vec<BigRational> = Vec::new();
    let mut t = from.clone();
    while t <= *to {
        grid.push(t.clone());
        t += step;
    }

    // one symbolic module; per-point classification is pure evaluation
    let module = verma(alg, LambdaSpec::Symbolic, depth)?;
    let mut levels = Vec::with_capacity(depth + 1);
    for d in 0..=depth {
        levels.push(module.gram(d)?);
    }
    let levels = &levels;

    let classify = move |t: BigRational| -> ScanRow {
        if is_natural(&t) {
            return ScanRow { t, verdict: ScanVerdict::Reducible };
        }
        let coords = [Scalar::from_rational(t.clone())];
        let mut verdicts = Vec::with_capacity(levels.len());
        for level in levels {
            let scalars: Vec<Vec<Scalar>> = level
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| p.eval(&coords).expect("rank checked"))
                        .collect()
                })
                .collect();
            let verdict = analyze_hermitian(&scalars);
            let indefinite = matches!(verdict, HermitianVerdict::Indefinite { .. });
            verdicts.push((level.depth, verdict));
            if indefinite {
                break;
            }
        }
        let verdict = match certificate_from_verdicts(verdicts, depth) {
            Certificate::UnitaryToDepth(d) => ScanVerdict::UnitaryToDepth(d),
            Certificate::NotUnitary { level, .. } => ScanVerdict::NotUnitary { level },
            Certificate::Reducible { .. } => ScanVerdict::Reducible,
        };
        ScanRow { t, verdict }
    };

    let rows = if parallel {
        crate::par::map_vec(grid, classify)
    } else {
        crate::par::map_vec_seq(grid, classify)
    };
    Ok(rows)
}

/// Closed-form sign analysis of a rank-one symbolic Gram diagonal: the level
/// ratios `N_d / N_{d-1}` are computed by exact division and, when they are
/// all linear in the weight coordinate, intersected into the open interval
/// on which every level is positive definite.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolicPositivity {
    /// Positive definite exactly for `lower < t < upper` (open ends; `None`
    /// means unbounded).
    Interval { lower: Option<BigRational>, upper: Option<BigRational> },
    /// No weight makes every level positive.
    Empty,
}

#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub diagonal: Vec<PolyScalar>,
    pub factors: Vec<PolyScalar>,
    pub positivity: Option<SymbolicPositivity>,
}

/// Compute the symbolic diagonal `N(0..=depth)` and its factor sequence for
/// a rank-one algebra with one-dimensional weight levels.
pub fn closed_form_rank1(alg: &Arc<SuperAlgebra>, depth: usize) -> Result<ClosedForm> {
    if alg.rank() != 1 {
        return Err(Error::Unsupported("closed form requires a rank-one algebra".into()));
    }
    let module = verma(alg, LambdaSpec::Symbolic, depth)?;
    let mut diagonal = Vec::with_capacity(depth + 1);
    for d in 0..=depth {
        let level = module.gram(d)?;
        if level.dim() != 1 {
            return Err(Error::Unsupported(
                "closed form requires one-dimensional weight levels".into(),
            ));
        }
        diagonal.push(level.entries[0][0].clone());
    }
    let mut factors = Vec::with_capacity(depth);
    for d in 1..=depth {
        let Some(f) = diagonal[d].div_exact_univariate(&diagonal[d - 1]) else {
            return Err(Error::Unsupported(
                "Gram diagonal is not a telescoping product at this weight".into(),
            ));
        };
        factors.push(f);
    }
    let positivity = analyze_linear_factors(&factors);
    Ok(ClosedForm { diagonal, factors, positivity })
}

/// Intersect the positivity regions of linear real polynomials `a + b t`.
/// `None` when a factor is nonlinear or has non-real coefficients.
fn analyze_linear_factors(factors: &[PolyScalar]) -> Option<SymbolicPositivity> {
    let mut lower: Option<BigRational> = None;
    let mut upper: Option<BigRational> = None;
    for f in factors {
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        for (exps, c) in f.terms() {
            if !c.is_real() {
                return None;
            }
            match exps[0] {
                0 => a = c.re.clone(),
                1 => b = c.re.clone(),
                _ => return None,
            }
        }
        if b.is_zero() {
            if !a.is_positive() {
                return Some(SymbolicPositivity::Empty);
            }
        } else {
            let boundary = -&a / &b;
            if b.is_positive() {
                // positive for t > boundary
                if lower.as_ref().map(|l| *l < boundary).unwrap_or(true) {
                    lower = Some(boundary);
                }
            } else if upper.as_ref().map(|u| *u > boundary).unwrap_or(true) {
                upper = Some(boundary);
            }
        }
    }
    if let (Some(l), Some(u)) = (&lower, &upper) {
        if l >= u {
            return Some(SymbolicPositivity::Empty);
        }
    }
    Some(SymbolicPositivity::Interval { lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{osp12, sl2};
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn wt(n: i64, d: i64) -> Weight {
        Weight::new(vec![Scalar::new(rat(n, d), BigRational::zero())])
    }

    #[test]
    fn certificates_on_rank_one_examples() {
        let a = Arc::new(osp12());
        assert_eq!(
            unitarity_certificate(&a, &wt(-1, 1), 8).unwrap(),
            Certificate::UnitaryToDepth(8)
        );
        match unitarity_certificate(&a, &wt(1, 2), 2).unwrap() {
            Certificate::NotUnitary { level, value, .. } => {
                assert_eq!(level, 1);
                assert_eq!(value, Scalar::from_ratio(-1, 2));
            }
            other => panic!("expected NotUnitary, got {other:?}"),
        }

        let s = Arc::new(sl2());
        assert_eq!(
            unitarity_certificate(&s, &wt(-3, 2), 10).unwrap(),
            Certificate::UnitaryToDepth(10)
        );
    }

    #[test]
    fn non_real_weight_rejected() {
        let a = Arc::new(osp12());
        let bad = Weight::new(vec![Scalar::i()]);
        assert!(matches!(
            unitarity_certificate(&a, &bad, 2),
            Err(Error::NonRealWeight { .. })
        ));
    }

    #[test]
    fn reducible_point_reports_kernel() {
        let a = Arc::new(osp12());
        match unitarity_certificate(&a, &wt(0, 1), 3).unwrap() {
            Certificate::Reducible { level, kernel } => {
                assert_eq!(level, 1);
                assert_eq!(kernel.len(), 1);
            }
            other => panic!("expected Reducible, got {other:?}"),
        }
    }

    #[test]
    fn singular_vector_examples() {
        let a = Arc::new(osp12());
        let module = verma(
            &a,
            LambdaSpec::Numeric(wt(-1, 1)),
            6,
        )
        .unwrap();
        assert!(singular_vectors(&module, 6).unwrap().is_empty());

        let s = Arc::new(sl2());
        let module = verma(&s, LambdaSpec::Numeric(wt(2, 1)), 4).unwrap();
        let singular = singular_vectors(&module, 4).unwrap();
        // Y^3 v is singular at level 3 (and the level-4 slice degenerates with it)
        assert!(singular.iter().any(|sv| sv.level == 3));
        assert_eq!(singular.iter().map(|sv| sv.level).min(), Some(3));

        let module = verma(&a, LambdaSpec::Numeric(wt(1, 1)), 4).unwrap();
        let singular = singular_vectors(&module, 4).unwrap();
        assert!(!singular.is_empty());
        assert_eq!(singular.iter().map(|sv| sv.level).min(), Some(3));
    }

    #[test]
    fn singular_vectors_annihilated_by_raising() {
        let a = Arc::new(osp12());
        let module = verma(&a, LambdaSpec::Numeric(wt(1, 1)), 6).unwrap();
        for sv in singular_vectors(&module, 5).unwrap() {
            let mut vec = crate::verma::ModVector::zero();
            for (i, c) in sv.coords.iter().enumerate() {
                vec.add_term((sv.level, i), PolyScalar::constant(1, c.clone()));
            }
            for raising in ["x", "X"] {
                let image = module.act_named(raising, &vec).unwrap();
                // raising a radical vector stays in the radical: the image
                // pairs to zero with its whole weight level
                let depths: Vec<usize> = image.terms.keys().map(|(d, _)| *d).collect();
                for d in depths {
                    for j in 0..module.level_dim(d) {
                        let probe = crate::verma::ModVector::basis(d, j, 1);
                        assert!(module.shapovalov(&image, &probe).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn necessary_conditions_examples() {
        let a = osp12();
        let report = necessary_conditions(&a, &wt(-2, 1)).unwrap();
        assert!(report.pass);
        assert_eq!(report.rows.len(), 1);
        assert!(!report.rows[0].compact);

        let report = necessary_conditions(&a, &wt(3, 1)).unwrap();
        assert!(!report.pass);

        // the boundary passes with equalities
        let report = necessary_conditions(&a, &wt(0, 1)).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn scan_window() {
        let a = Arc::new(osp12());
        let rows = unitary_scan(&a, &rat(-2, 1), &rat(2, 1), &rat(1, 2), 8).unwrap();
        assert_eq!(rows.len(), 9);
        for row in &rows {
            if is_natural(&row.t) {
                assert_eq!(row.verdict, ScanVerdict::Reducible, "t = {}", row.t);
            } else if row.t.is_negative() {
                assert_eq!(row.verdict, ScanVerdict::UnitaryToDepth(8), "t = {}", row.t);
            } else {
                assert_eq!(row.verdict, ScanVerdict::NotUnitary { level: 1 }, "t = {}", row.t);
            }
        }

        // sequential fallback agrees exactly
        let seq = unitary_scan_seq(&a, &rat(-2, 1), &rat(2, 1), &rat(1, 2), 8).unwrap();
        assert_eq!(rows.len(), seq.len());
        for (a, b) in rows.iter().zip(&seq) {
            assert_eq!(a.t, b.t);
            assert_eq!(a.verdict, b.verdict);
        }
    }

    #[test]
    fn scan_agrees_with_pointwise_certificates() {
        let a = Arc::new(sl2());
        let rows = unitary_scan(&a, &rat(-5, 2), &rat(5, 2), &rat(5, 4), 6).unwrap();
        for row in rows {
            if is_natural(&row.t) {
                continue;
            }
            let cert = unitarity_certificate(
                &a,
                &Weight::new(vec![Scalar::new(row.t.clone(), BigRational::zero())]),
                6,
            )
            .unwrap();
            match (&row.verdict, &cert) {
                (ScanVerdict::UnitaryToDepth(d), Certificate::UnitaryToDepth(e)) => {
                    assert_eq!(d, e)
                }
                (ScanVerdict::NotUnitary { level }, Certificate::NotUnitary { level: l, .. }) => {
                    assert_eq!(level, l)
                }
                other => panic!("scan and certificate disagree: {other:?}"),
            }
        }
    }

    #[test]
    fn empty_window() {
        let a = Arc::new(sl2());
        let rows = unitary_scan(&a, &rat(1, 3), &rat(1, 4), &rat(1, 2), 4).unwrap();
        assert!(rows.is_empty());
    }

    #[test]
    fn closed_form_intervals() {
        let a = Arc::new(osp12());
        let cf = closed_form_rank1(&a, 8).unwrap();
        assert_eq!(
            cf.positivity,
            Some(SymbolicPositivity::Interval { lower: None, upper: Some(BigRational::zero()) })
        );

        let s = Arc::new(sl2());
        let cf = closed_form_rank1(&s, 8).unwrap();
        assert_eq!(
            cf.positivity,
            Some(SymbolicPositivity::Interval { lower: None, upper: Some(BigRational::zero()) })
        );
    }
}
