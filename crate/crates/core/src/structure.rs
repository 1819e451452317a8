//! Lie superalgebras given by structure-constant tables: basis with parities,
//! super bracket, Cartan data, root data with compactness flags, and the
//! conjugate-linear involution that cuts out the real form. Tables are
//! validated against the definitional axioms before anything downstream may
//! use them; `osp12` and `sl2` ship built in.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// A weight: the values of a functional on the Cartan basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub coords: Vec<Scalar>,
}

impl Weight {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Weight { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_real(&self) -> bool {
        self.coords.iter().all(|c| c.is_real())
    }

    /// Reject non-real coordinates with a pointed error.
    pub fn require_real(&self) -> Result<()> {
        for (index, c) in self.coords.iter().enumerate() {
            if !c.is_real() {
                return Err(Error::NonRealWeight { index, value: c.to_string() });
            }
        }
        Ok(())
    }
}

/// Sparse linear combination of basis elements, sorted by basis index.
pub type LinComb = Vec<(usize, Scalar)>;

pub(crate) fn lincomb_add(a: &LinComb, b: &LinComb) -> LinComb {
    let mut out = a.clone();
    for (idx, c) in b {
        lincomb_push(&mut out, *idx, c.clone());
    }
    out
}

pub(crate) fn lincomb_push(comb: &mut LinComb, idx: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match comb.binary_search_by_key(&idx, |(i, _)| *i) {
        Ok(p) => {
            let sum = &comb[p].1 + &c;
            if sum.is_zero() {
                comb.remove(p);
            } else {
                comb[p].1 = sum;
            }
        }
        Err(p) => comb.insert(p, (idx, c)),
    }
}

pub(crate) fn lincomb_scale(comb: &LinComb, c: &Scalar) -> LinComb {
    if c.is_zero() {
        return Vec::new();
    }
    comb.iter().map(|(i, k)| (*i, k * c)).collect()
}

/// One root of the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Values of the root on the Cartan basis, in `cartan` order.
    pub coords: Vec<Scalar>,
    /// Basis index of the root vector.
    pub vector: usize,
    pub positive: bool,
    pub compact: bool,
}

/// Raw algebra table, as parsed or hand-built, prior to validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraData {
    pub name: String,
    pub basis_names: Vec<String>,
    pub parity: Vec<u8>,
    /// `brackets[i][j]`, `None` when the table does not list the pair.
    pub brackets: Vec<Vec<Option<LinComb>>>,
    /// Basis indices spanning the Cartan subalgebra; order fixes weight coordinates.
    pub cartan: Vec<usize>,
    /// Basis indices spanning the declared compact subalgebra k.
    pub compact: Vec<usize>,
    pub roots: Vec<Root>,
    /// `conjugation[j]` is the image of basis element `j` under the
    /// conjugate-linear involution defining the real form.
    pub conjugation: Vec<LinComb>,
}

/// A single validation failure, naming the axiom and the offending data.
#[derive(Debug, Clone)]
pub enum Failure {
    DuplicateName(String),
    ReservedName(String),
    BadName(String),
    MissingBracket(String, String),
    BracketParity(String, String),
    Antisymmetry(String, String),
    EvenDiagonal(String),
    Jacobi(String, String, String),
    CartanNotAbelian(String, String),
    NotAdEigenvector(String, String),
    RootEigenvalueMismatch(String, String),
    MissingRootEntry(String),
    RootOnCartan(String),
    DuplicateRootVector(String),
    RootParity(String),
    RootNegationMissing(String),
    ConjugationNotInvolution(String),
    ConjugationNotRealStructure(String, String),
    ConjugationParity(String),
    RealFormDimension { expected: usize, got: usize },
    EmptyCartan,
    CartanNotInCompact(String),
    CompactOdd(String),
    CompactNotClosed(String, String),
    CompactNotConjStable(String),
    RootCompactFlag(String),
    SimpleRootDecomposition(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Failure::*;
        match self {
            DuplicateName(n) => write!(f, "duplicate basis name `{n}`"),
            ReservedName(n) => write!(f, "basis name `{n}` is reserved"),
            BadName(n) => write!(f, "basis name `{n}` is not a valid identifier"),
            MissingBracket(a, b) => write!(f, "bracket [{a},{b}] is not specified"),
            BracketParity(a, b) => write!(f, "bracket [{a},{b}] has components of the wrong parity"),
            Antisymmetry(a, b) => write!(f, "super-antisymmetry fails on ({a},{b})"),
            EvenDiagonal(a) => write!(f, "[{a},{a}] must vanish for even {a}"),
            Jacobi(a, b, c) => write!(f, "super-Jacobi identity fails on ({a},{b},{c})"),
            CartanNotAbelian(a, b) => write!(f, "Cartan elements {a},{b} do not commute"),
            NotAdEigenvector(h, b) => write!(f, "ad({h}) does not act diagonally on {b}"),
            RootEigenvalueMismatch(h, b) => {
                write!(f, "ad({h}) eigenvalue on {b} differs from the recorded root")
            }
            MissingRootEntry(b) => write!(f, "non-Cartan element {b} has no root entry"),
            RootOnCartan(b) => write!(f, "Cartan element {b} may not carry a root"),
            DuplicateRootVector(b) => write!(f, "basis element {b} carries two root entries"),
            RootParity(b) => write!(f, "root parity for {b} disagrees with basis parity"),
            RootNegationMissing(b) => write!(f, "root of {b} has no negative counterpart"),
            ConjugationNotInvolution(b) => write!(f, "conjugation squared is not the identity on {b}"),
            ConjugationNotRealStructure(a, b) => {
                write!(f, "conjugation is not bracket-compatible on ({a},{b})")
            }
            ConjugationParity(b) => write!(f, "conjugation does not preserve the parity of {b}"),
            RealFormDimension { expected, got } => {
                write!(f, "fixed real form has dimension {got}, expected {expected}")
            }
            EmptyCartan => write!(f, "no Cartan subalgebra declared"),
            CartanNotInCompact(h) => write!(f, "Cartan element {h} is not in the declared compact subalgebra"),
            CompactOdd(b) => write!(f, "declared compact element {b} is odd"),
            CompactNotClosed(a, b) => write!(f, "compact subalgebra is not closed under [{a},{b}]"),
            CompactNotConjStable(b) => write!(f, "conjugation moves compact element {b} out of k"),
            RootCompactFlag(b) => {
                write!(f, "compact flag of the root of {b} disagrees with the declared k")
            }
            SimpleRootDecomposition(r) => {
                write!(f, "root {r} is not a non-negative integral combination of simple roots")
            }
        }
    }
}

/// Result of `validate`: all failures, plus non-fatal warnings.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub failures: Vec<Failure>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for failure in &self.failures {
            writeln!(f, "error: {failure}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        if self.failures.is_empty() && self.warnings.is_empty() {
            writeln!(f, "OK")?;
        }
        Ok(())
    }
}

/// A validated Lie superalgebra with the derived data the enveloping-algebra
/// machinery needs: the PBW letter order (negative roots, Cartan, positive
/// roots; within a block by root height, then input order), per-letter
/// weights, parities and heights.
#[derive(Debug)]
pub struct SuperAlgebra {
    pub data: AlgebraData,
    /// Completed bracket table (antisymmetric closure filled in).
    bracket: Vec<Vec<LinComb>>,
    /// PBW position -> basis index.
    pbw_order: Vec<usize>,
    /// Basis index -> PBW position.
    pbw_pos: Vec<usize>,
    neg_count: usize,
    cartan_count: usize,
    /// PBW position -> weight coords (zero vector on the Cartan block).
    weight_by_pos: Vec<Vec<Scalar>>,
    parity_by_pos: Vec<u8>,
    /// Height of the (absolute) root at each position; 0 on the Cartan block.
    height_by_pos: Vec<u32>,
    root_of_basis: Vec<Option<usize>>,
    pub warnings: Vec<String>,
}

impl PartialEq for SuperAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

impl SuperAlgebra {
    pub fn dim(&self) -> usize {
        self.data.basis_names.len()
    }

    pub fn rank(&self) -> usize {
        self.data.cartan.len()
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn basis_name(&self, idx: usize) -> &str {
        &self.data.basis_names[idx]
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.data.basis_names.iter().position(|n| n == name)
    }

    pub fn parity(&self, idx: usize) -> u8 {
        self.data.parity[idx]
    }

    pub fn bracket(&self, a: usize, b: usize) -> &LinComb {
        &self.bracket[a][b]
    }

    /// Super bracket extended bilinearly to linear combinations.
    pub fn bracket_comb(&self, a: &LinComb, b: &LinComb) -> LinComb {
        let mut out = Vec::new();
        for (i, ci) in a {
            for (j, cj) in b {
                let c = ci * cj;
                for (k, ck) in &self.bracket[*i][*j] {
                    lincomb_push(&mut out, *k, &c * ck);
                }
            }
        }
        out
    }

    /// Image of a linear combination under the real-form conjugation
    /// (conjugate-linear).
    pub fn conjugate(&self, v: &LinComb) -> LinComb {
        let mut out = Vec::new();
        for (j, c) in v {
            for (k, m) in &self.data.conjugation[*j] {
                lincomb_push(&mut out, *k, &c.conj() * m);
            }
        }
        out
    }

    pub fn pbw_len(&self) -> usize {
        self.pbw_order.len()
    }

    pub fn pbw_basis_index(&self, pos: usize) -> usize {
        self.pbw_order[pos]
    }

    pub fn pbw_position(&self, basis_idx: usize) -> usize {
        self.pbw_pos[basis_idx]
    }

    pub fn parity_at(&self, pos: usize) -> u8 {
        self.parity_by_pos[pos]
    }

    pub fn weight_at(&self, pos: usize) -> &[Scalar] {
        &self.weight_by_pos[pos]
    }

    pub fn height_at(&self, pos: usize) -> u32 {
        self.height_by_pos[pos]
    }

    pub fn is_negative_pos(&self, pos: usize) -> bool {
        pos < self.neg_count
    }

    pub fn is_cartan_pos(&self, pos: usize) -> bool {
        pos >= self.neg_count && pos < self.neg_count + self.cartan_count
    }

    pub fn is_positive_pos(&self, pos: usize) -> bool {
        pos >= self.neg_count + self.cartan_count
    }

    pub fn negative_positions(&self) -> std::ops::Range<usize> {
        0..self.neg_count
    }

    pub fn cartan_positions(&self) -> std::ops::Range<usize> {
        self.neg_count..self.neg_count + self.cartan_count
    }

    pub fn positive_positions(&self) -> std::ops::Range<usize> {
        self.neg_count + self.cartan_count..self.pbw_order.len()
    }

    /// Index into `cartan` coordinates for a Cartan PBW position.
    pub fn cartan_coord_of_pos(&self, pos: usize) -> usize {
        pos - self.neg_count
    }

    pub fn roots(&self) -> &[Root] {
        &self.data.roots
    }

    pub fn root_of_basis(&self, idx: usize) -> Option<&Root> {
        self.root_of_basis[idx].map(|r| &self.data.roots[r])
    }

    pub fn name_at(&self, pos: usize) -> &str {
        self.basis_name(self.pbw_order[pos])
    }

    /// The coroot `H_α = [X_α, X_{-α}]` normalized so `α(H_α) = 2`,
    /// as coefficients over the Cartan basis.
    pub fn coroot(&self, root: &Root) -> Result<Vec<Scalar>> {
        let name = self.basis_name(root.vector).to_string();
        if self.parity(root.vector) != 0 {
            return Err(Error::OddCoroot(name));
        }
        let neg_coords: Vec<Scalar> = root.coords.iter().map(|c| -c).collect();
        let opposite = self
            .data
            .roots
            .iter()
            .find(|r| r.coords == neg_coords)
            .ok_or_else(|| Error::NotARoot(name.clone()))?;
        let h0 = self.bracket(root.vector, opposite.vector);
        let mut coeffs = vec![Scalar::zero(); self.rank()];
        for (idx, c) in h0 {
            let Some(slot) = self.data.cartan.iter().position(|&h| h == *idx) else {
                return Err(Error::NotARoot(name));
            };
            coeffs[slot] = c.clone();
        }
        // α(H_0)
        let mut pairing = Scalar::zero();
        for (slot, c) in coeffs.iter().enumerate() {
            pairing = &pairing + &(c * &root.coords[slot]);
        }
        let Some(scale) = Scalar::from_int(2).div(&pairing) else {
            return Err(Error::NotARoot(name));
        };
        Ok(coeffs.iter().map(|c| c * &scale).collect())
    }

    /// Structural comparison against the built-in osp(1|2) table.
    pub fn is_osp12(&self) -> bool {
        self.data == osp12().data
    }
}

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

const RESERVED: &[&str] = &["i", "star", "beta"];

/// Run every structural check on a raw table. All failures are collected.
pub fn validate(data: &AlgebraData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = data.basis_names.len();
    let name = |i: usize| data.basis_names[i].clone();

    for (i, nm) in data.basis_names.iter().enumerate() {
        if !valid_ident(nm) {
            report.failures.push(Failure::BadName(nm.clone()));
        }
        if RESERVED.contains(&nm.as_str()) {
            report.failures.push(Failure::ReservedName(nm.clone()));
        }
        if data.basis_names[..i].contains(nm) {
            report.failures.push(Failure::DuplicateName(nm.clone()));
        }
    }
    if data.cartan.is_empty() {
        report.failures.push(Failure::EmptyCartan);
    }

    // complete the bracket table; missing [b,a] is filled from [a,b], and a
    // missing even diagonal is zero by super-antisymmetry
    let mut bracket: Vec<Vec<Option<LinComb>>> = data.brackets.clone();
    for a in 0..n {
        if data.parity[a] == 0 && bracket[a][a].is_none() {
            bracket[a][a] = Some(Vec::new());
        }
        for b in 0..n {
            if bracket[a][b].is_none() {
                if let Some(ba) = bracket[b][a].clone() {
                    let sign = if data.parity[a] == 1 && data.parity[b] == 1 {
                        Scalar::one()
                    } else {
                        -Scalar::one()
                    };
                    bracket[a][b] = Some(lincomb_scale(&ba, &sign));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if bracket[a][b].is_none() {
                report.failures.push(Failure::MissingBracket(name(a), name(b)));
                bracket[a][b] = Some(Vec::new());
            }
        }
    }
    let bracket: Vec<Vec<LinComb>> =
        bracket.into_iter().map(|row| row.into_iter().map(Option::unwrap).collect()).collect();

    // parity of bracket targets
    for a in 0..n {
        for b in 0..n {
            let want = (data.parity[a] + data.parity[b]) % 2;
            if bracket[a][b].iter().any(|(k, _)| data.parity[*k] != want) {
                report.failures.push(Failure::BracketParity(name(a), name(b)));
            }
        }
    }

    // super-antisymmetry, including vanishing even diagonal
    for a in 0..n {
        if data.parity[a] == 0 && !bracket[a][a].is_empty() {
            report.failures.push(Failure::EvenDiagonal(name(a)));
        }
        for b in (a + 1)..n {
            let sign = if data.parity[a] == 1 && data.parity[b] == 1 {
                Scalar::one()
            } else {
                -Scalar::one()
            };
            if bracket[b][a] != lincomb_scale(&bracket[a][b], &sign) {
                report.failures.push(Failure::Antisymmetry(name(a), name(b)));
            }
        }
    }

    let br = |a: &LinComb, b: &LinComb| -> LinComb {
        let mut out = Vec::new();
        for (i, ci) in a {
            for (j, cj) in b {
                for (k, ck) in &bracket[*i][*j] {
                    lincomb_push(&mut out, *k, &(ci * cj) * ck);
                }
            }
        }
        out
    };
    let single = |i: usize| -> LinComb { vec![(i, Scalar::one())] };

    // super-Jacobi in Leibniz form: [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = br(&single(a), &bracket[b][c]);
                let mut rhs = br(&bracket[a][b], &single(c));
                let sgn = if data.parity[a] == 1 && data.parity[b] == 1 {
                    -Scalar::one()
                } else {
                    Scalar::one()
                };
                let second = br(&single(b), &bracket[a][c]);
                rhs = lincomb_add(&rhs, &lincomb_scale(&second, &sgn));
                if lhs != rhs {
                    report.failures.push(Failure::Jacobi(name(a), name(b), name(c)));
                }
            }
        }
    }

    // Cartan: abelian, acts diagonally with the recorded eigenvalues
    for (ci, &h) in data.cartan.iter().enumerate() {
        for &h2 in &data.cartan[ci + 1..] {
            if !bracket[h][h2].is_empty() {
                report.failures.push(Failure::CartanNotAbelian(name(h), name(h2)));
            }
        }
    }

    let mut root_of_basis: Vec<Option<usize>> = vec![None; n];
    for (ri, root) in data.roots.iter().enumerate() {
        if data.cartan.contains(&root.vector) {
            report.failures.push(Failure::RootOnCartan(name(root.vector)));
            continue;
        }
        if root_of_basis[root.vector].is_some() {
            report.failures.push(Failure::DuplicateRootVector(name(root.vector)));
        }
        root_of_basis[root.vector] = Some(ri);
        let neg: Vec<Scalar> = root.coords.iter().map(|c| -c).collect();
        if !data.roots.iter().any(|r| r.coords == neg && r.positive != root.positive) {
            report.failures.push(Failure::RootNegationMissing(name(root.vector)));
        }
    }
    for b in 0..n {
        if data.cartan.contains(&b) {
            continue;
        }
        let Some(ri) = root_of_basis[b] else {
            report.failures.push(Failure::MissingRootEntry(name(b)));
            continue;
        };
        let root = &data.roots[ri];
        for (slot, &h) in data.cartan.iter().enumerate() {
            let action = &bracket[h][b];
            let expected = lincomb_scale(&single(b), &root.coords[slot]);
            if action.iter().any(|(k, _)| *k != b) {
                report.failures.push(Failure::NotAdEigenvector(name(h), name(b)));
            } else if *action != expected {
                report.failures.push(Failure::RootEigenvalueMismatch(name(h), name(b)));
            }
        }
    }

    // conjugation: parity-preserving conjugate-linear involution compatible
    // with the bracket
    for j in 0..n {
        if data.conjugation[j].iter().any(|(k, _)| data.parity[*k] != data.parity[j]) {
            report.failures.push(Failure::ConjugationParity(name(j)));
        }
        // sigma(sigma(b_j))
        let mut twice: LinComb = Vec::new();
        for (k, c) in &data.conjugation[j] {
            for (l, m) in &data.conjugation[*k] {
                lincomb_push(&mut twice, *l, &c.conj() * m);
            }
        }
        if twice != single(j) {
            report.failures.push(Failure::ConjugationNotInvolution(name(j)));
        }
    }
    let conj = |v: &LinComb| -> LinComb {
        let mut out = Vec::new();
        for (j, c) in v {
            for (k, m) in &data.conjugation[*j] {
                lincomb_push(&mut out, *k, &c.conj() * m);
            }
        }
        out
    };
    for a in 0..n {
        for b in 0..n {
            let lhs = conj(&bracket[a][b]);
            let rhs = br(&conj(&single(a)), &conj(&single(b)));
            if lhs != rhs {
                report.failures.push(Failure::ConjugationNotRealStructure(name(a), name(b)));
            }
        }
    }

    // the fixed points of the conjugation must form a real form: real
    // dimension equal to the complex dimension of the algebra
    {
        // unknowns x_1..x_n, y_1..y_n with v = sum (x_j + i y_j) b_j
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for k in 0..n {
            let mut re_row = vec![Scalar::zero(); 2 * n];
            let mut im_row = vec![Scalar::zero(); 2 * n];
            for j in 0..n {
                let m = data.conjugation[j]
                    .iter()
                    .find(|(l, _)| *l == k)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Scalar::zero);
                // (x_j - i y_j) * m
                re_row[j] = &re_row[j] + &Scalar::from_rational(m.re.clone());
                re_row[n + j] = &re_row[n + j] + &Scalar::from_rational(m.im.clone());
                im_row[j] = &im_row[j] + &Scalar::from_rational(m.im.clone());
                im_row[n + j] = &im_row[n + j] - &Scalar::from_rational(m.re.clone());
            }
            re_row[k] = &re_row[k] - &Scalar::one();
            im_row[n + k] = &im_row[n + k] - &Scalar::one();
            rows.push(re_row);
            rows.push(im_row);
        }
        let fixed_dim = 2 * n - linalg::rank(&rows);
        if fixed_dim != n {
            report.failures.push(Failure::RealFormDimension { expected: n, got: fixed_dim });
        }
    }

    // declared compact subalgebra: even, contains the Cartan, closed under
    // the bracket and under conjugation; root flags consistent with it
    for &h in &data.cartan {
        if !data.compact.contains(&h) {
            report.failures.push(Failure::CartanNotInCompact(name(h)));
        }
    }
    for &k in &data.compact {
        if data.parity[k] != 0 {
            report.failures.push(Failure::CompactOdd(name(k)));
        }
        if data.conjugation[k].iter().any(|(l, _)| !data.compact.contains(l)) {
            report.failures.push(Failure::CompactNotConjStable(name(k)));
        }
    }
    for &a in &data.compact {
        for &b in &data.compact {
            if bracket[a][b].iter().any(|(l, _)| !data.compact.contains(l)) {
                report.failures.push(Failure::CompactNotClosed(name(a), name(b)));
            }
        }
    }
    for root in &data.roots {
        let in_k = data.compact.contains(&root.vector);
        if root.compact != in_k {
            report.failures.push(Failure::RootCompactFlag(name(root.vector)));
        }
    }

    // simple-root heights must exist for the PBW depth grading
    if let Err(bad) = root_heights(data) {
        report.failures.push(Failure::SimpleRootDecomposition(bad));
    }

    // k_C with trivial centre: the structure theory prefers a non-trivial
    // centre, flag it but do not reject
    if !data.compact.is_empty() {
        let k = &data.compact;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for &b in k.iter() {
            // row block: coefficients of [z, b] over the full basis
            for target in 0..n {
                let row: Vec<Scalar> = k
                    .iter()
                    .map(|&a| {
                        bracket[a][b]
                            .iter()
                            .find(|(l, _)| *l == target)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_else(Scalar::zero)
                    })
                    .collect();
                rows.push(row);
            }
        }
        let centre_dim = k.len() - linalg::rank(&rows);
        if centre_dim == 0 {
            report
                .warnings
                .push("declared compact subalgebra k has trivial centre".to_string());
        }
    }

    report
}

/// Height of each root: the coefficient sum of its expression in the simple
/// roots (positive roots not expressible as a sum of two positive roots).
/// Returns the display name of a root that fails to decompose.
fn root_heights(data: &AlgebraData) -> std::result::Result<Vec<(usize, u32)>, String> {
    let mut positive: Vec<Vec<Scalar>> = Vec::new();
    for r in &data.roots {
        if r.positive && !positive.contains(&r.coords) {
            positive.push(r.coords.clone());
        }
    }
    let mut simple: Vec<Vec<Scalar>> = Vec::new();
    for w in &positive {
        let is_sum = positive.iter().any(|u| {
            positive.iter().any(|v| {
                let sum: Vec<Scalar> = u.iter().zip(v).map(|(a, b)| a + b).collect();
                &sum == w
            })
        });
        if !is_sum {
            simple.push(w.clone());
        }
    }
    let mut heights = Vec::new();
    for (ri, r) in data.roots.iter().enumerate() {
        let target: Vec<Scalar> = if r.positive {
            r.coords.clone()
        } else {
            r.coords.iter().map(|c| -c).collect()
        };
        // solve simple * c = target
        let rows = target.len();
        let a: Vec<Vec<Scalar>> =
            (0..rows).map(|row| simple.iter().map(|s| s[row].clone()).collect()).collect();
        let bad = || data.basis_names[r.vector].clone();
        let Some(sol) = linalg::solve_unique(&a, &target) else {
            return Err(bad());
        };
        let mut height = 0u32;
        for c in &sol {
            if !c.is_real() || c.re.is_negative() || !c.re.denom().is_one() {
                return Err(bad());
            }
            let Ok(part) = u32::try_from(c.re.numer().clone()) else { return Err(bad()) };
            height += part;
        }
        if height == 0 {
            return Err(bad());
        }
        heights.push((ri, height));
    }
    Ok(heights)
}

/// Validate and seal a raw table into a usable algebra.
pub fn build(data: AlgebraData) -> Result<SuperAlgebra> {
    let report = validate(&data);
    if !report.is_ok() {
        return Err(Error::Validation(report));
    }
    let n = data.basis_names.len();

    let mut bracket: Vec<Vec<Option<LinComb>>> = data.brackets.clone();
    for a in 0..n {
        if data.parity[a] == 0 && bracket[a][a].is_none() {
            bracket[a][a] = Some(Vec::new());
        }
        for b in 0..n {
            if bracket[a][b].is_none() {
                let ba = bracket[b][a].clone().unwrap();
                let sign = if data.parity[a] == 1 && data.parity[b] == 1 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                };
                bracket[a][b] = Some(lincomb_scale(&ba, &sign));
            }
        }
    }
    let bracket: Vec<Vec<LinComb>> =
        bracket.into_iter().map(|row| row.into_iter().map(Option::unwrap).collect()).collect();

    let heights = root_heights(&data).expect("validated");
    let height_of_basis = |b: usize| -> u32 {
        data.roots
            .iter()
            .zip(&heights)
            .find(|(r, _)| r.vector == b)
            .map(|(_, (_, h))| *h)
            .unwrap_or(0)
    };

    // PBW order: negative block, Cartan block, positive block
    let mut negatives: Vec<usize> = data
        .roots
        .iter()
        .filter(|r| !r.positive)
        .map(|r| r.vector)
        .collect();
    negatives.sort_by_key(|&b| (height_of_basis(b), b));
    let mut positives: Vec<usize> =
        data.roots.iter().filter(|r| r.positive).map(|r| r.vector).collect();
    positives.sort_by_key(|&b| (height_of_basis(b), b));

    let mut pbw_order = negatives.clone();
    pbw_order.extend(data.cartan.iter().copied());
    pbw_order.extend(positives.iter().copied());

    let mut pbw_pos = vec![0usize; n];
    for (pos, &b) in pbw_order.iter().enumerate() {
        pbw_pos[b] = pos;
    }

    let mut root_of_basis: Vec<Option<usize>> = vec![None; n];
    for (ri, r) in data.roots.iter().enumerate() {
        root_of_basis[r.vector] = Some(ri);
    }

    let weight_by_pos: Vec<Vec<Scalar>> = pbw_order
        .iter()
        .map(|&b| match root_of_basis[b] {
            Some(ri) => data.roots[ri].coords.clone(),
            None => vec![Scalar::zero(); data.cartan.len()],
        })
        .collect();
    let parity_by_pos: Vec<u8> = pbw_order.iter().map(|&b| data.parity[b]).collect();
    let height_by_pos: Vec<u32> = pbw_order.iter().map(|&b| height_of_basis(b)).collect();

    let neg_count = negatives.len();
    let cartan_count = data.cartan.len();
    let warnings = validate(&data).warnings;

    Ok(SuperAlgebra {
        data,
        bracket,
        pbw_order,
        pbw_pos,
        neg_count,
        cartan_count,
        weight_by_pos,
        parity_by_pos,
        height_by_pos,
        root_of_basis,
        warnings,
    })
}

fn si(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// The five-dimensional orthosymplectic superalgebra with basis H, X, Y
/// (even) and x, y (odd), together with the real form fixed by
/// H -> -H, X <-> Y, x -> -i y, y -> -i x.
pub fn osp12() -> SuperAlgebra {
    let names = ["H", "X", "Y", "x", "y"];
    let idx = |s: &str| names.iter().position(|n| *n == s).unwrap();
    let (h, xx, yy, x, y) = (idx("H"), idx("X"), idx("Y"), idx("x"), idx("y"));
    let n = names.len();
    let mut brackets: Vec<Vec<Option<LinComb>>> = vec![vec![None; n]; n];
    let mut set = |a: usize, b: usize, comb: Vec<(usize, Scalar)>| {
        brackets[a][b] = Some(comb.into_iter().filter(|(_, c)| !c.is_zero()).collect());
    };
    set(h, xx, vec![(xx, si(2))]);
    set(h, yy, vec![(yy, si(-2))]);
    set(xx, yy, vec![(h, si(1))]);
    set(h, x, vec![(x, si(1))]);
    set(h, y, vec![(y, si(-1))]);
    set(x, x, vec![(xx, si(2))]);
    set(y, y, vec![(yy, si(-2))]);
    set(x, y, vec![(h, si(1))]);
    set(xx, y, vec![(x, si(-1))]);
    set(yy, x, vec![(y, si(-1))]);
    set(xx, x, vec![]);
    set(yy, y, vec![]);
    set(h, h, vec![]);

    let data = AlgebraData {
        name: "osp12".to_string(),
        basis_names: names.iter().map(|s| s.to_string()).collect(),
        parity: vec![0, 0, 0, 1, 1],
        brackets,
        cartan: vec![h],
        compact: vec![h],
        roots: vec![
            Root { coords: vec![si(1)], vector: x, positive: true, compact: false },
            Root { coords: vec![si(-1)], vector: y, positive: false, compact: false },
            Root { coords: vec![si(2)], vector: xx, positive: true, compact: false },
            Root { coords: vec![si(-2)], vector: yy, positive: false, compact: false },
        ],
        conjugation: vec![
            vec![(h, si(-1))],
            vec![(yy, si(1))],
            vec![(xx, si(1))],
            vec![(y, -Scalar::i())],
            vec![(x, -Scalar::i())],
        ],
    };
    build(data).expect("built-in osp12 table validates")
}

/// The even subalgebra of osp12: sl(2) with basis H, X, Y, the noncompact
/// even root pair and the same restricted conjugation.
pub fn sl2() -> SuperAlgebra {
    let names = ["H", "X", "Y"];
    let (h, xx, yy) = (0usize, 1usize, 2usize);
    let n = names.len();
    let mut brackets: Vec<Vec<Option<LinComb>>> = vec![vec![None; n]; n];
    brackets[h][xx] = Some(vec![(xx, si(2))]);
    brackets[h][yy] = Some(vec![(yy, si(-2))]);
    brackets[xx][yy] = Some(vec![(h, si(1))]);
    brackets[h][h] = Some(vec![]);
    brackets[xx][xx] = Some(vec![]);
    brackets[yy][yy] = Some(vec![]);

    let data = AlgebraData {
        name: "sl2".to_string(),
        basis_names: names.iter().map(|s| s.to_string()).collect(),
        parity: vec![0, 0, 0],
        brackets,
        cartan: vec![h],
        compact: vec![h],
        roots: vec![
            Root { coords: vec![si(2)], vector: xx, positive: true, compact: false },
            Root { coords: vec![si(-2)], vector: yy, positive: false, compact: false },
        ],
        conjugation: vec![vec![(h, si(-1))], vec![(yy, si(1))], vec![(xx, si(1))]],
    };
    build(data).expect("built-in sl2 table validates")
}

/// Resolve `osp12`, `sl2` or a file's contents into an algebra.
pub fn builtin(name: &str) -> Option<SuperAlgebra> {
    match name {
        "osp12" => Some(osp12()),
        "sl2" => Some(sl2()),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// table file format

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Parse a scalar/name linear combination such as `2*X - 1/2*y + i*H`.
/// Bare names, `-y`, and whitespace products (`2 X`) are all accepted.
fn parse_lincomb(
    rhs: &str,
    names: &[String],
    line: usize,
) -> Result<LinComb> {
    #[derive(Debug, PartialEq)]
    enum Tok {
        Num(num_bigint::BigInt),
        Ident(String),
        Imag,
        Plus,
        Minus,
        Star,
        Slash,
    }
    let mut toks: Vec<(Tok, usize)> = Vec::new();
    let bytes: Vec<char> = rhs.chars().collect();
    let mut p = 0;
    while p < bytes.len() {
        let c = bytes[p];
        let col = p + 1;
        if c.is_whitespace() {
            p += 1;
            continue;
        }
        match c {
            '+' => toks.push((Tok::Plus, col)),
            '-' => toks.push((Tok::Minus, col)),
            '*' => toks.push((Tok::Star, col)),
            '/' => toks.push((Tok::Slash, col)),
            _ if c.is_ascii_digit() => {
                let start = p;
                while p < bytes.len() && bytes[p].is_ascii_digit() {
                    p += 1;
                }
                let text: String = bytes[start..p].iter().collect();
                toks.push((Tok::Num(text.parse().unwrap()), start + 1));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = p;
                while p < bytes.len() && (bytes[p].is_ascii_alphanumeric() || bytes[p] == '_') {
                    p += 1;
                }
                let text: String = bytes[start..p].iter().collect();
                if text == "i" {
                    toks.push((Tok::Imag, start + 1));
                } else {
                    toks.push((Tok::Ident(text), start + 1));
                }
                continue;
            }
            _ => return Err(parse_err(line, col, format!("unexpected character `{c}`"))),
        }
        p += 1;
    }

    let mut comb: LinComb = Vec::new();
    let mut t = 0;
    let mut first = true;
    while t < toks.len() {
        let mut sign = Scalar::one();
        loop {
            match toks.get(t) {
                Some((Tok::Plus, _)) => {
                    t += 1;
                }
                Some((Tok::Minus, _)) => {
                    sign = -sign;
                    t += 1;
                }
                _ => break,
            }
            first = false;
        }
        if t >= toks.len() {
            if first {
                break;
            }
            return Err(parse_err(line, rhs.len(), "dangling sign"));
        }
        first = false;
        let mut coeff = sign;
        let mut ident: Option<String> = None;
        let mut any = false;
        loop {
            match toks.get(t) {
                Some((Tok::Num(v), col)) => {
                    let mut num = Scalar::from_rational(num_rational::BigRational::from_integer(
                        v.clone(),
                    ));
                    t += 1;
                    if let Some((Tok::Slash, _)) = toks.get(t) {
                        t += 1;
                        match toks.get(t) {
                            Some((Tok::Num(d), _)) if !num_traits::Zero::is_zero(d) => {
                                num = Scalar::from_rational(num_rational::BigRational::new(
                                    v.clone(),
                                    d.clone(),
                                ));
                                t += 1;
                            }
                            _ => return Err(parse_err(line, *col, "expected denominator")),
                        }
                    }
                    coeff = &coeff * &num;
                    any = true;
                }
                Some((Tok::Imag, _)) => {
                    coeff = &coeff * &Scalar::i();
                    t += 1;
                    any = true;
                }
                Some((Tok::Ident(name), col)) => {
                    if ident.is_some() {
                        return Err(parse_err(line, *col, "nonlinear term in linear combination"));
                    }
                    ident = Some(name.clone());
                    t += 1;
                    any = true;
                }
                Some((Tok::Star, _)) => {
                    t += 1;
                }
                _ => break,
            }
        }
        if !any {
            let col = toks.get(t).map(|(_, c)| *c).unwrap_or(rhs.len());
            return Err(parse_err(line, col, "expected term"));
        }
        match ident {
            Some(name) => {
                let Some(idx) = names.iter().position(|n| *n == name) else {
                    return Err(parse_err(line, 1, format!("unknown basis element `{name}`")));
                };
                lincomb_push(&mut comb, idx, coeff);
            }
            None => {
                if !coeff.is_zero() {
                    return Err(parse_err(line, 1, "constant term in a linear combination"));
                }
            }
        }
    }
    Ok(comb)
}

fn parse_scalar_token(text: &str, line: usize) -> Result<Scalar> {
    let mut total = Scalar::zero();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(parse_err(line, 1, "expected scalar"));
    }
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = Scalar::one();
        loop {
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else {
                break;
            }
        }
        rest = rest.trim_start();
        if rest.is_empty() {
            if first {
                break;
            }
            return Err(parse_err(line, 1, "dangling sign in scalar"));
        }
        first = false;
        let mut coeff = sign;
        let mut any = false;
        loop {
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix('*') {
                rest = r;
                continue;
            }
            if let Some(r) = rest.strip_prefix('i') {
                if r.chars().next().map(|c| c.is_ascii_alphanumeric() || c == '_') == Some(true) {
                    return Err(parse_err(line, 1, "unexpected identifier in scalar"));
                }
                coeff = &coeff * &Scalar::i();
                rest = r;
                any = true;
                continue;
            }
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            if !digits.is_empty() {
                rest = &rest[digits.len()..];
                let numer: num_bigint::BigInt = digits.parse().unwrap();
                let mut val =
                    num_rational::BigRational::from_integer(numer.clone());
                if let Some(r) = rest.trim_start().strip_prefix('/') {
                    let r = r.trim_start();
                    let den: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
                    if den.is_empty() || den.chars().all(|c| c == '0') {
                        return Err(parse_err(line, 1, "bad denominator in scalar"));
                    }
                    val = num_rational::BigRational::new(numer, den.parse().unwrap());
                    rest = &r[den.len()..];
                }
                coeff = &coeff * &Scalar::from_rational(val);
                any = true;
                continue;
            }
            break;
        }
        if !any {
            return Err(parse_err(line, 1, format!("expected scalar, found `{rest}`")));
        }
        total = &total + &coeff;
    }
    Ok(total)
}

/// Parse an algebra table document. The grammar is line oriented:
///
/// ```text
/// algebra NAME
/// basis NAME even|odd
/// cartan NAME...
/// compact NAME...
/// bracket [A,B] = LINCOMB
/// root NAME positive|negative compact|noncompact : SCALAR...
/// conj NAME = LINCOMB
/// ```
///
/// `#` starts a comment. The parsed table is validated before use.
pub fn parse_algebra(document: &str) -> Result<AlgebraData> {
    let mut name = String::new();
    let mut basis_names: Vec<String> = Vec::new();
    let mut parity: Vec<u8> = Vec::new();
    let mut cartan_names: Vec<String> = Vec::new();
    let mut compact_names: Vec<String> = Vec::new();
    let mut bracket_lines: Vec<(usize, String, String, String)> = Vec::new();
    let mut root_lines: Vec<(usize, String, String, String, String)> = Vec::new();
    let mut conj_lines: Vec<(usize, String, String)> = Vec::new();

    for (ln, raw) in document.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "algebra" => {
                if rest.is_empty() {
                    return Err(parse_err(line_no, 1, "algebra requires a name"));
                }
                name = rest.to_string();
            }
            "basis" => {
                let mut parts = rest.split_whitespace();
                let (Some(nm), Some(par)) = (parts.next(), parts.next()) else {
                    return Err(parse_err(line_no, 1, "basis requires `NAME even|odd`"));
                };
                let p = match par {
                    "even" => 0,
                    "odd" => 1,
                    other => {
                        return Err(parse_err(line_no, 1, format!("bad parity `{other}`")));
                    }
                };
                basis_names.push(nm.to_string());
                parity.push(p);
            }
            "cartan" => cartan_names.extend(rest.split_whitespace().map(str::to_string)),
            "compact" => compact_names.extend(rest.split_whitespace().map(str::to_string)),
            "bracket" => {
                // bracket [A,B] = RHS
                let Some(open) = rest.find('[') else {
                    return Err(parse_err(line_no, 1, "bracket requires `[A,B] = ...`"));
                };
                let Some(close) = rest.find(']') else {
                    return Err(parse_err(line_no, 1, "unterminated `[`"));
                };
                let inner = &rest[open + 1..close];
                let Some((a, b)) = inner.split_once(',') else {
                    return Err(parse_err(line_no, 1, "bracket requires two arguments"));
                };
                let Some(eq) = rest[close..].find('=') else {
                    return Err(parse_err(line_no, 1, "bracket requires `=`"));
                };
                let rhs = rest[close + eq + 1..].trim().to_string();
                bracket_lines.push((line_no, a.trim().to_string(), b.trim().to_string(), rhs));
            }
            "root" => {
                let Some((head, coords)) = rest.split_once(':') else {
                    return Err(parse_err(line_no, 1, "root requires `NAME FLAGS : COORDS`"));
                };
                let mut parts = head.split_whitespace();
                let (Some(nm), Some(posflag), Some(cptflag)) =
                    (parts.next(), parts.next(), parts.next())
                else {
                    return Err(parse_err(
                        line_no,
                        1,
                        "root requires `NAME positive|negative compact|noncompact : COORDS`",
                    ));
                };
                root_lines.push((
                    line_no,
                    nm.to_string(),
                    posflag.to_string(),
                    cptflag.to_string(),
                    coords.trim().to_string(),
                ));
            }
            "conj" => {
                let Some((nm, rhs)) = rest.split_once('=') else {
                    return Err(parse_err(line_no, 1, "conj requires `NAME = ...`"));
                };
                conj_lines.push((line_no, nm.trim().to_string(), rhs.trim().to_string()));
            }
            other => {
                return Err(parse_err(line_no, 1, format!("unknown directive `{other}`")));
            }
        }
    }

    if basis_names.is_empty() {
        return Err(parse_err(1, 1, "no basis declared"));
    }
    let find = |nm: &str, line: usize| -> Result<usize> {
        basis_names
            .iter()
            .position(|n| n == nm)
            .ok_or_else(|| parse_err(line, 1, format!("unknown basis element `{nm}`")))
    };

    let n = basis_names.len();
    let mut brackets: Vec<Vec<Option<LinComb>>> = vec![vec![None; n]; n];
    for (line, a, b, rhs) in bracket_lines {
        let (ia, ib) = (find(&a, line)?, find(&b, line)?);
        let comb = parse_lincomb(&rhs, &basis_names, line)?;
        if brackets[ia][ib].is_some() {
            return Err(parse_err(line, 1, format!("bracket [{a},{b}] given twice")));
        }
        brackets[ia][ib] = Some(comb);
    }

    let mut cartan = Vec::new();
    for nm in &cartan_names {
        cartan.push(find(nm, 1)?);
    }
    let mut compact = Vec::new();
    for nm in &compact_names {
        compact.push(find(nm, 1)?);
    }

    let mut roots = Vec::new();
    for (line, nm, posflag, cptflag, coords_text) in root_lines {
        let vector = find(&nm, line)?;
        let positive = match posflag.as_str() {
            "positive" => true,
            "negative" => false,
            other => return Err(parse_err(line, 1, format!("bad root flag `{other}`"))),
        };
        let compact_flag = match cptflag.as_str() {
            "compact" => true,
            "noncompact" => false,
            other => return Err(parse_err(line, 1, format!("bad root flag `{other}`"))),
        };
        let mut coords = Vec::new();
        for tok in coords_text.split_whitespace() {
            coords.push(parse_scalar_token(tok, line)?);
        }
        if coords.len() != cartan.len() {
            return Err(parse_err(
                line,
                1,
                format!("root of `{nm}` needs {} coordinates", cartan.len()),
            ));
        }
        roots.push(Root { coords, vector, positive, compact: compact_flag });
    }

    let mut conjugation: Vec<Option<LinComb>> = vec![None; n];
    for (line, nm, rhs) in conj_lines {
        let idx = find(&nm, line)?;
        conjugation[idx] = Some(parse_lincomb(&rhs, &basis_names, line)?);
    }
    let mut conj_out = Vec::with_capacity(n);
    for (idx, c) in conjugation.into_iter().enumerate() {
        match c {
            Some(c) => conj_out.push(c),
            None => {
                return Err(parse_err(
                    1,
                    1,
                    format!("conjugation of `{}` is not specified", basis_names[idx]),
                ))
            }
        }
    }

    Ok(AlgebraData {
        name: if name.is_empty() { "algebra".to_string() } else { name },
        basis_names,
        parity,
        brackets,
        cartan,
        compact,
        roots,
        conjugation: conj_out,
    })
}

/// Parse and validate a table document.
pub fn load_algebra(document: &str) -> Result<SuperAlgebra> {
    build(parse_algebra(document)?)
}

fn render_lincomb(comb: &LinComb, names: &[String]) -> String {
    if comb.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (pos, (idx, c)) in comb.iter().enumerate() {
        crate::scalar::push_term(&mut out, pos == 0, c, &names[*idx]);
    }
    out
}

/// Canonical rendering of an algebra in the table format; `load_algebra`
/// round-trips it.
pub fn serialize_algebra(alg: &SuperAlgebra) -> String {
    let data = &alg.data;
    let names = &data.basis_names;
    let mut out = String::new();
    out.push_str(&format!("algebra {}\n\n", data.name));
    for (i, nm) in names.iter().enumerate() {
        let p = if data.parity[i] == 0 { "even" } else { "odd" };
        out.push_str(&format!("basis {nm} {p}\n"));
    }
    out.push('\n');
    out.push_str("cartan");
    for &h in &data.cartan {
        out.push_str(&format!(" {}", names[h]));
    }
    out.push_str("\ncompact");
    for &k in &data.compact {
        out.push_str(&format!(" {}", names[k]));
    }
    out.push_str("\n\n");
    for a in 0..names.len() {
        for b in 0..names.len() {
            if let Some(comb) = &data.brackets[a][b] {
                out.push_str(&format!(
                    "bracket [{},{}] = {}\n",
                    names[a],
                    names[b],
                    render_lincomb(comb, names)
                ));
            }
        }
    }
    out.push('\n');
    for root in &data.roots {
        let pos = if root.positive { "positive" } else { "negative" };
        let cpt = if root.compact { "compact" } else { "noncompact" };
        let coords: Vec<String> = root.coords.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(
            "root {} {} {} : {}\n",
            names[root.vector],
            pos,
            cpt,
            coords.join(" ")
        ));
    }
    out.push('\n');
    for (j, comb) in data.conjugation.iter().enumerate() {
        out.push_str(&format!("conj {} = {}\n", names[j], render_lincomb(comb, names)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn osp12_bracket_examples() {
        let a = osp12();
        let (h, xx, yy, x, y) = (0, 1, 2, 3, 4);
        assert_eq!(a.bracket(x, y), &vec![(h, si(1))]);
        assert_eq!(a.bracket(y, y), &vec![(yy, si(-2))]);
        assert_eq!(a.bracket(xx, yy), &vec![(h, si(1))]);
        assert_eq!(a.bracket(h, x), &vec![(x, si(1))]);
        // antisymmetric closure: [y,X] filled from [X,y] = -x
        assert_eq!(a.bracket(y, xx), &vec![(x, si(1))]);
    }

    #[test]
    fn builtins_validate_clean() {
        assert!(validate(&osp12().data).is_ok());
        assert!(validate(&sl2().data).is_ok());
    }

    #[test]
    fn sl2_standard_bracket() {
        let s = sl2();
        let (h, xx, yy) = (0, 1, 2);
        assert_eq!(s.bracket(xx, yy), &vec![(h, si(1))]);
        assert_eq!(s.bracket(h, xx), &vec![(xx, si(2))]);
        assert_eq!(s.bracket(h, yy), &vec![(yy, si(-2))]);
    }

    #[test]
    fn ad_h_eigenvalues() {
        let a = osp12();
        let h = 0;
        let expect = [(1usize, 2i64), (2, -2), (3, 1), (4, -1)];
        for (b, ev) in expect {
            assert_eq!(a.bracket(h, b), &vec![(b, si(ev))]);
        }
    }

    #[test]
    fn pbw_order_is_negative_cartan_positive() {
        let a = osp12();
        let order: Vec<&str> = (0..a.pbw_len()).map(|p| a.name_at(p)).collect();
        assert_eq!(order, vec!["y", "Y", "H", "x", "X"]);
        assert_eq!(a.height_at(0), 1);
        assert_eq!(a.height_at(1), 2);
        assert_eq!(a.height_at(2), 0);

        let s = sl2();
        let order: Vec<&str> = (0..s.pbw_len()).map(|p| s.name_at(p)).collect();
        assert_eq!(order, vec!["Y", "H", "X"]);
        // the lone root is simple, so Y has height 1 in sl2
        assert_eq!(s.height_at(0), 1);
    }

    #[test]
    fn roundtrip_serialization() {
        for alg in [osp12(), sl2()] {
            let text = serialize_algebra(&alg);
            let reloaded = load_algebra(&text).unwrap();
            assert_eq!(reloaded, alg);
        }
    }

    #[test]
    fn antisymmetry_violation_detected() {
        let mut data = osp12().data;
        // claim [X,H] = 2X alongside [H,X] = 2X
        data.brackets[1][0] = Some(vec![(1, si(2))]);
        let report = validate(&data);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, Failure::Antisymmetry(a, b) if a == "H" && b == "X")));
    }

    #[test]
    fn jacobi_violation_is_localized() {
        let mut data = osp12().data;
        // perturb {x,x} = 2X to {x,x} = 2X + H
        data.brackets[3][3] = Some(vec![(1, si(2)), (0, si(1))]);
        let report = validate(&data);
        assert!(!report.is_ok());
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, Failure::Jacobi(a, b, c)
                if a == "x" && b == "x" && c == "y")));
    }

    #[test]
    fn conjugation_restriction_agrees_with_sl2() {
        let a = osp12();
        let s = sl2();
        for (name, _) in [("H", 0), ("X", 1), ("Y", 2)] {
            let ia = a.basis_index(name).unwrap();
            let is_ = s.basis_index(name).unwrap();
            let ca: Vec<(String, Scalar)> = a.data.conjugation[ia]
                .iter()
                .map(|(k, c)| (a.basis_name(*k).to_string(), c.clone()))
                .collect();
            let cs: Vec<(String, Scalar)> = s.data.conjugation[is_]
                .iter()
                .map(|(k, c)| (s.basis_name(*k).to_string(), c.clone()))
                .collect();
            assert_eq!(ca, cs);
        }
    }

    #[test]
    fn real_basis_is_fixed_by_conjugation() {
        let a = osp12();
        let (h, xx, yy, x, y) = (0, 1, 2, 3, 4);
        let fixed: Vec<LinComb> = vec![
            vec![(h, Scalar::i())],
            vec![(xx, si(1)), (yy, si(1))],
            vec![(xx, Scalar::i()), (yy, -Scalar::i())],
            vec![(x, -Scalar::i()), (y, si(1))],
            vec![(x, si(-1)), (y, Scalar::i())],
        ];
        for v in fixed {
            assert_eq!(a.conjugate(&v), v);
        }
    }

    #[test]
    fn coroot_examples() {
        let a = osp12();
        let even_pos = a.roots().iter().find(|r| r.positive && a.parity(r.vector) == 0).unwrap();
        assert_eq!(a.coroot(even_pos).unwrap(), vec![si(1)]);

        let s = sl2();
        let r = s.roots().iter().find(|r| r.positive).unwrap();
        assert_eq!(s.coroot(r).unwrap(), vec![si(1)]);

        let odd = a.roots().iter().find(|r| r.positive && a.parity(r.vector) == 1).unwrap();
        assert!(matches!(a.coroot(odd), Err(Error::OddCoroot(_))));
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(load_algebra("basis H even\nbracket [H = 1").is_err());
        assert!(load_algebra("nonsense").is_err());
    }
}
