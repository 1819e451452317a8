//! The universal enveloping superalgebra: PBW monomials, normal-form
//! rewriting against the bracket table, the weight grading, the star
//! antiautomorphism induced by the real form, and the projection onto the
//! Cartan part with its evaluation at a highest weight.
//!
//! The PBW letter order is: negative-root vectors, Cartan elements, then
//! positive-root vectors, each block sorted by root height. Rewriting swaps
//! the leftmost disordered adjacent pair using the bracket table and reduces
//! odd squares through `z^2 = {z,z}/2`; every step strictly decreases
//! `(length, inversions)`, so normalization terminates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{PolyScalar, Scalar};
use crate::structure::{SuperAlgebra, Weight};

/// Exponent vector over the PBW letter order; odd letters carry exponent 0
/// or 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PBWMonomial(pub Vec<u32>);

impl PBWMonomial {
    pub fn one(len: usize) -> Self {
        PBWMonomial(vec![0; len])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Expand into letters (PBW positions), left to right.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (pos, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                out.push(pos);
            }
        }
        out
    }

    pub fn parity(&self, alg: &SuperAlgebra) -> u8 {
        let mut p = 0u32;
        for (pos, &e) in self.0.iter().enumerate() {
            p += e * alg.parity_at(pos) as u32;
        }
        (p % 2) as u8
    }

    /// Weight under the adjoint Cartan action.
    pub fn weight(&self, alg: &SuperAlgebra) -> Vec<Scalar> {
        let mut w = vec![Scalar::zero(); alg.rank()];
        for (pos, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mult = Scalar::from_rational(BigRational::from_integer(e.into()));
            for (slot, c) in alg.weight_at(pos).iter().enumerate() {
                w[slot] = &w[slot] + &(c * &mult);
            }
        }
        w
    }

    pub fn is_cartan_only(&self, alg: &SuperAlgebra) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(pos, &e)| e == 0 || alg.is_cartan_pos(pos))
    }

    pub fn has_positive_part(&self, alg: &SuperAlgebra) -> bool {
        self.0.iter().enumerate().any(|(pos, &e)| e > 0 && alg.is_positive_pos(pos))
    }

    pub fn render(&self, alg: &SuperAlgebra) -> String {
        let mut parts = Vec::new();
        for (pos, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(alg.name_at(pos).to_string()),
                _ => parts.push(format!("{}^{}", alg.name_at(pos), e)),
            }
        }
        parts.join("*")
    }
}

/// An element of the enveloping superalgebra in PBW normal form, with
/// polynomial coefficients in the weight coordinates.
#[derive(Debug, Clone)]
pub struct EnvElement {
    algebra: Arc<SuperAlgebra>,
    terms: BTreeMap<PBWMonomial, PolyScalar>,
}

impl PartialEq for EnvElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.terms == other.terms
    }
}

impl EnvElement {
    pub fn zero(alg: &Arc<SuperAlgebra>) -> Self {
        EnvElement { algebra: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<SuperAlgebra>) -> Self {
        EnvElement::scalar(alg, Scalar::one())
    }

    pub fn scalar(alg: &Arc<SuperAlgebra>, c: Scalar) -> Self {
        let mut e = EnvElement::zero(alg);
        if !c.is_zero() {
            e.terms.insert(
                PBWMonomial::one(alg.pbw_len()),
                PolyScalar::constant(alg.rank(), c),
            );
        }
        e
    }

    /// The generator with the given basis index.
    pub fn generator(alg: &Arc<SuperAlgebra>, basis_idx: usize) -> Self {
        let mut exps = vec![0u32; alg.pbw_len()];
        exps[alg.pbw_position(basis_idx)] = 1;
        let mut e = EnvElement::zero(alg);
        e.terms
            .insert(PBWMonomial(exps), PolyScalar::one(alg.rank()));
        e
    }

    pub fn generator_named(alg: &Arc<SuperAlgebra>, name: &str) -> Result<Self> {
        let idx = alg
            .basis_index(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        Ok(EnvElement::generator(alg, idx))
    }

    /// Normal form of a word given as `(basis element, power)` pairs.
    pub fn from_word(alg: &Arc<SuperAlgebra>, word: &[(usize, u32)]) -> Self {
        let letters: Vec<usize> = word
            .iter()
            .flat_map(|&(b, e)| std::iter::repeat(alg.pbw_position(b)).take(e as usize))
            .collect();
        let normal = normalize_word(alg, &letters);
        let mut e = EnvElement::zero(alg);
        for (mono, c) in normal {
            e.add_term(mono, PolyScalar::constant(alg.rank(), c));
        }
        e
    }

    pub fn from_named_word(alg: &Arc<SuperAlgebra>, word: &[(&str, u32)]) -> Result<Self> {
        let mut resolved = Vec::with_capacity(word.len());
        for (name, e) in word {
            let idx = alg
                .basis_index(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            resolved.push((idx, *e));
        }
        Ok(EnvElement::from_word(alg, &resolved))
    }

    pub fn algebra(&self) -> &Arc<SuperAlgebra> {
        &self.algebra
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &PolyScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, mono: PBWMonomial, c: PolyScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert!(self.same_algebra(rhs), "same algebra required");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        EnvElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.scale_poly(&PolyScalar::constant(self.algebra.rank(), c.clone()))
    }

    pub fn scale_poly(&self, c: &PolyScalar) -> Self {
        let mut out = EnvElement::zero(&self.algebra);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k.mul(c));
        }
        out
    }

    /// Product in normal form.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if !self.same_algebra(rhs) {
            return Err(Error::AlgebraMismatch);
        }
        let alg = &self.algebra;
        let mut out = EnvElement::zero(alg);
        for (ma, ca) in &self.terms {
            let la = ma.letters();
            for (mb, cb) in &rhs.terms {
                let mut word = la.clone();
                word.extend(mb.letters());
                let coeff = ca.mul(cb);
                for (mono, c) in normalize_word(alg, &word) {
                    out.add_term(mono, coeff.scale(&c));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = EnvElement::one(&self.algebra);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Parity when homogeneous (`Some(0)` for zero), `None` when mixed.
    pub fn parity(&self) -> Option<u8> {
        let mut parity = None;
        for m in self.terms.keys() {
            let p = m.parity(&self.algebra);
            match parity {
                None => parity = Some(p),
                Some(q) if q == p => {}
                _ => return None,
            }
        }
        Some(parity.unwrap_or(0))
    }

    /// Decomposition into adjoint Cartan eigencomponents, keyed by weight.
    /// The components sum back to the element.
    pub fn weight_grade(&self) -> BTreeMap<Vec<Scalar>, EnvElement> {
        let mut out: BTreeMap<Vec<Scalar>, EnvElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            let w = m.weight(&self.algebra);
            out.entry(w)
                .or_insert_with(|| EnvElement::zero(&self.algebra))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// The weight-zero component.
    pub fn weight_zero_part(&self) -> EnvElement {
        let zero = vec![Scalar::zero(); self.algebra.rank()];
        let mut out = EnvElement::zero(&self.algebra);
        for (m, c) in &self.terms {
            if m.weight(&self.algebra) == zero {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// The star antiautomorphism: conjugate linear, reverses products with
    /// the sign `(-1)^{|a||b|}`, and acts on real-form elements by
    /// `Z -> -(-1)^{|Z|} Z`. On a complexified generator it is computed
    /// through the real form's conjugation.
    pub fn star(&self) -> Result<Self> {
        let alg = &self.algebra;
        let mut out = EnvElement::zero(alg);
        for (m, c) in &self.terms {
            let letters = m.letters();
            // (l_1 ... l_n)* = sign * l_n* ... l_1*
            let mut pair_sign = 0u32;
            let parities: Vec<u8> = letters.iter().map(|&p| alg.parity_at(p)).collect();
            for i in 0..parities.len() {
                for j in (i + 1)..parities.len() {
                    pair_sign += (parities[i] * parities[j]) as u32;
                }
            }
            let mut acc = if pair_sign % 2 == 0 {
                EnvElement::one(alg)
            } else {
                EnvElement::scalar(alg, -Scalar::one())
            };
            for &pos in letters.iter().rev() {
                acc = acc.mul(&star_generator(alg, pos))?;
            }
            out = out.add(&acc.scale_poly(&c.conj()));
        }
        Ok(out)
    }

    /// The ordinary adjoint `a -> a^dagger = (-i)^{|a|} a^star` for
    /// parity-homogeneous elements; it reverses products without signs.
    pub fn dagger(&self) -> Result<Self> {
        let p = self
            .parity()
            .ok_or_else(|| Error::Unsupported("dagger of a parity-mixed element".into()))?;
        Ok(self.star()?.scale(&Scalar::neg_i_pow(p as u32)))
    }

    /// The Cartan projection: keep the monomials with no positive-root and
    /// no negative-root factors and read them as a polynomial in the weight
    /// coordinates; components of nonzero weight project to zero.
    pub fn hc_project(&self) -> PolyScalar {
        let alg = &self.algebra;
        let rank = alg.rank();
        let mut out = PolyScalar::zero(rank);
        for (m, c) in &self.terms {
            if !m.is_cartan_only(alg) {
                continue;
            }
            let mut exps = vec![0u32; rank];
            for pos in alg.cartan_positions() {
                exps[alg.cartan_coord_of_pos(pos)] = m.0[pos];
            }
            out = out.add(&PolyScalar::monomial(rank, exps, Scalar::one()).mul(c));
        }
        out
    }

    /// The scalar by which the element acts on a highest weight vector of
    /// weight `lambda`: the Cartan projection evaluated at the weight.
    pub fn act_on_hwv(&self, lambda: &Weight) -> Result<Scalar> {
        self.hc_project().eval(&lambda.coords)
    }

    /// Rebuild a Cartan element from a polynomial in the weight coordinates.
    pub fn from_cartan_poly(alg: &Arc<SuperAlgebra>, p: &PolyScalar) -> Result<Self> {
        if p.arity() != alg.rank() {
            return Err(Error::Arity { expected: alg.rank(), got: p.arity() });
        }
        let mut out = EnvElement::zero(alg);
        let cartan_start = alg.cartan_positions().start;
        for (exps, c) in p.terms() {
            let mut mono = vec![0u32; alg.pbw_len()];
            for (slot, &e) in exps.iter().enumerate() {
                mono[cartan_start + slot] = e;
            }
            out.add_term(
                PBWMonomial(mono),
                PolyScalar::constant(alg.rank(), c.clone()),
            );
        }
        Ok(out)
    }

    /// Deterministic rendering in PBW order, highest total degree first.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&PBWMonomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for (i, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let mono = m.render(&self.algebra);
            match c.as_constant() {
                Some(k) => crate::scalar::push_term(&mut out, i == 0, &k, &mono),
                None => {
                    // polynomial coefficient: always parenthesised
                    let sep = if i == 0 { "" } else { " + " };
                    out.push_str(sep);
                    if mono.is_empty() {
                        out.push_str(&format!("({c})"));
                    } else {
                        out.push_str(&format!("({c})*{mono}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// `X^star` for a single PBW letter, via the real form: even letters map to
/// `-sigma(X)`, odd letters to `+sigma(X)`.
pub fn star_generator(alg: &Arc<SuperAlgebra>, pos: usize) -> EnvElement {
    let basis_idx = alg.pbw_basis_index(pos);
    let sign = if alg.parity_at(pos) == 0 { -Scalar::one() } else { Scalar::one() };
    let mut out = EnvElement::zero(alg);
    for (target, c) in &alg.data.conjugation[basis_idx] {
        out = out.add(&EnvElement::generator(alg, *target).scale(&(c * &sign)));
    }
    out
}

/// `X^dagger = (-i)^{|X|} X^star` for a single letter.
pub fn dagger_generator(alg: &Arc<SuperAlgebra>, pos: usize) -> EnvElement {
    let phase = Scalar::neg_i_pow(alg.parity_at(pos) as u32);
    star_generator(alg, pos).scale(&phase)
}

/// PBW-normalize a word of letters (PBW positions). Returns monomial
/// coefficients over the Gaussian rationals.
///
/// The agenda is keyed by word so that rewriting branches arriving at the
/// same intermediate word merge their coefficients instead of being explored
/// separately; without the merge the branch count grows exponentially in the
/// number of inversions.
pub fn normalize_word(alg: &SuperAlgebra, letters: &[usize]) -> BTreeMap<PBWMonomial, Scalar> {
    // agenda keyed by the termination measure (length, inversions), largest
    // first: every rewrite strictly decreases the measure, so popping a
    // maximal word guarantees all contributions to it have merged and each
    // distinct word is expanded exactly once
    let inversions = |w: &[usize]| -> usize {
        let mut n = 0;
        for i in 0..w.len() {
            for j in (i + 1)..w.len() {
                if w[i] > w[j] {
                    n += 1;
                }
            }
        }
        n
    };

    let mut out: BTreeMap<PBWMonomial, Scalar> = BTreeMap::new();
    let mut agenda: BTreeMap<(usize, usize, Vec<usize>), Scalar> = BTreeMap::new();
    let word = letters.to_vec();
    agenda.insert((word.len(), inversions(&word), word), Scalar::one());
    let half = Scalar::from_ratio(1, 2);

    let push = |agenda: &mut BTreeMap<(usize, usize, Vec<usize>), Scalar>,
                word: Vec<usize>,
                c: Scalar| {
        if c.is_zero() {
            return;
        }
        let mut invs = 0;
        for i in 0..word.len() {
            for j in (i + 1)..word.len() {
                if word[i] > word[j] {
                    invs += 1;
                }
            }
        }
        let entry = agenda.entry((word.len(), invs, word)).or_insert_with(Scalar::zero);
        *entry = &*entry + &c;
    };

    while let Some(((_, _, word), coeff)) = agenda.pop_last() {
        if coeff.is_zero() {
            continue;
        }
        let mut violation = None;
        for k in 0..word.len().saturating_sub(1) {
            let (p, q) = (word[k], word[k + 1]);
            if p > q || (p == q && alg.parity_at(p) == 1) {
                violation = Some(k);
                break;
            }
        }
        let Some(k) = violation else {
            let mut exps = vec![0u32; alg.pbw_len()];
            for &pos in &word {
                exps[pos] += 1;
            }
            let entry = out.entry(PBWMonomial(exps)).or_insert_with(Scalar::zero);
            *entry = &*entry + &coeff;
            continue;
        };

        let (p, q) = (word[k], word[k + 1]);
        let bi = alg.pbw_basis_index(p);
        let bj = alg.pbw_basis_index(q);
        if p == q {
            // odd square: z^2 = {z,z}/2
            for (target, c) in alg.bracket(bi, bj) {
                let mut w = Vec::with_capacity(word.len() - 1);
                w.extend_from_slice(&word[..k]);
                w.push(alg.pbw_position(*target));
                w.extend_from_slice(&word[k + 2..]);
                push(&mut agenda, w, &(&coeff * c) * &half);
            }
        } else {
            // b_i b_j = (-1)^{|i||j|} b_j b_i + [b_i, b_j]
            let sign = if alg.parity_at(p) == 1 && alg.parity_at(q) == 1 {
                -Scalar::one()
            } else {
                Scalar::one()
            };
            let mut swapped = word.clone();
            swapped.swap(k, k + 1);
            push(&mut agenda, swapped, &coeff * &sign);
            for (target, c) in alg.bracket(bi, bj) {
                let mut w = Vec::with_capacity(word.len() - 1);
                w.extend_from_slice(&word[..k]);
                w.push(alg.pbw_position(*target));
                w.extend_from_slice(&word[k + 2..]);
                push(&mut agenda, w, &coeff * c);
            }
        }
    }

    out.retain(|_, c| !c.is_zero());
    out
}

/// Spec-level entry point: normal form of a named word.
pub fn normal_form(alg: &Arc<SuperAlgebra>, word: &[(&str, u32)]) -> Result<EnvElement> {
    EnvElement::from_named_word(alg, word)
}
