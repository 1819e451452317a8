//! Verma modules: weight-space bases to a chosen depth, cached exact
//! generator actions, the invariant Hermitian form computed through the
//! star/projection pipeline, per-level Gram matrices and the even-part
//! decomposition of the rank-one super module.
//!
//! The highest weight is either numeric (exact Gaussian-rational
//! coordinates) or symbolic, in which case every matrix entry is a
//! polynomial in the weight coordinates.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::enveloping::{normalize_word, EnvElement, PBWMonomial};
use crate::error::{Error, Result};
use crate::gram::{analyze_hermitian, GramLevel};
use crate::scalar::{PolyScalar, Scalar};
use crate::structure::{SuperAlgebra, Weight};

/// Highest weight: exact coordinates, or all coordinates symbolic.
#[derive(Debug, Clone)]
pub enum LambdaSpec {
    Numeric(Weight),
    Symbolic,
}

/// A vector of the module: sparse coefficients over `(depth, index)` basis
/// slots, polynomial in the weight coordinates when the weight is symbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct ModVector {
    pub terms: BTreeMap<(usize, usize), PolyScalar>,
}

impl ModVector {
    pub fn zero() -> Self {
        ModVector { terms: BTreeMap::new() }
    }

    pub fn basis(depth: usize, idx: usize, arity: usize) -> Self {
        let mut v = ModVector::zero();
        v.terms.insert((depth, idx), PolyScalar::one(arity));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: (usize, usize), c: PolyScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, rhs: &ModVector) -> ModVector {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &ModVector) -> ModVector {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.neg());
        }
        out
    }

    pub fn scale(&self, c: &PolyScalar) -> ModVector {
        let mut out = ModVector::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v.mul(c));
        }
        out
    }

    /// `Some(coeff)` when the vector is supported on a single basis slot.
    pub fn single(&self) -> Option<((usize, usize), PolyScalar)> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            Some((*k, c.clone()))
        } else {
            None
        }
    }
}

/// A Verma module constructed to a finite depth.
pub struct VermaModule {
    algebra: Arc<SuperAlgebra>,
    pub lambda: LambdaSpec,
    depth: usize,
    /// Per depth, the PBW monomials over the negative block spanning that
    /// weight space, in a fixed enumeration order.
    basis: Vec<Vec<PBWMonomial>>,
    index: BTreeMap<PBWMonomial, (usize, usize)>,
    /// `act_cache[pbw_pos][depth][basis_idx]`: the image of the basis vector
    /// under the generator, `None` when it would leave the constructed depth.
    act_cache: Vec<Vec<Vec<Option<ModVector>>>>,
}

/// Build the module: weight-space bases at all depths `0..=depth` and every
/// generator action matrix.
pub fn verma(alg: &Arc<SuperAlgebra>, lambda: LambdaSpec, depth: usize) -> Result<VermaModule> {
    if let LambdaSpec::Numeric(w) = &lambda {
        if w.rank() != alg.rank() {
            return Err(Error::Arity { expected: alg.rank(), got: w.rank() });
        }
    }
    let basis: Vec<Vec<PBWMonomial>> = (0..=depth).map(|d| enumerate_level(alg, d)).collect();
    let mut index = BTreeMap::new();
    for (d, level) in basis.iter().enumerate() {
        for (i, m) in level.iter().enumerate() {
            index.insert(m.clone(), (d, i));
        }
    }
    let mut module = VermaModule {
        algebra: alg.clone(),
        lambda,
        depth,
        basis,
        index,
        act_cache: Vec::new(),
    };
    let mut cache = Vec::with_capacity(alg.pbw_len());
    for pos in 0..alg.pbw_len() {
        let mut per_depth = Vec::with_capacity(depth + 1);
        for d in 0..=depth {
            let level: Vec<Option<ModVector>> = (0..module.basis[d].len())
                .map(|i| module.compute_action(pos, d, i))
                .collect();
            per_depth.push(level);
        }
        cache.push(per_depth);
    }
    module.act_cache = cache;
    Ok(module)
}

/// All PBW monomials over the negative block of total root height `d`.
fn enumerate_level(alg: &SuperAlgebra, d: usize) -> Vec<PBWMonomial> {
    let mut out = Vec::new();
    let negs: Vec<usize> = alg.negative_positions().collect();
    let mut exps = vec![0u32; alg.pbw_len()];
    fn rec(
        alg: &SuperAlgebra,
        negs: &[usize],
        slot: usize,
        remaining: usize,
        exps: &mut Vec<u32>,
        out: &mut Vec<PBWMonomial>,
    ) {
        if slot == negs.len() {
            if remaining == 0 {
                out.push(PBWMonomial(exps.clone()));
            }
            return;
        }
        let pos = negs[slot];
        let h = alg.height_at(pos) as usize;
        let max = if alg.parity_at(pos) == 1 { 1 } else { remaining / h };
        for e in 0..=max {
            if e * h > remaining {
                break;
            }
            exps[pos] = e as u32;
            rec(alg, negs, slot + 1, remaining - e * h, exps, out);
        }
        exps[pos] = 0;
    }
    rec(alg, &negs, 0, d, &mut exps, &mut out);
    out
}

impl VermaModule {
    pub fn algebra(&self) -> &Arc<SuperAlgebra> {
        &self.algebra
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn level_basis(&self, d: usize) -> &[PBWMonomial] {
        &self.basis[d]
    }

    pub fn level_dim(&self, d: usize) -> usize {
        self.basis[d].len()
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.lambda, LambdaSpec::Symbolic)
    }

    pub fn highest_weight_vector(&self) -> ModVector {
        ModVector::basis(0, 0, self.algebra.rank())
    }

    pub fn basis_parity(&self, d: usize, i: usize) -> u8 {
        self.basis[d][i].parity(&self.algebra)
    }

    /// Weight of a basis vector as polynomials in the weight coordinates
    /// (`λ_j` plus the monomial's own weight).
    pub fn basis_weight(&self, d: usize, i: usize) -> Vec<PolyScalar> {
        let rank = self.algebra.rank();
        let mono_weight = self.basis[d][i].weight(&self.algebra);
        (0..rank)
            .map(|j| {
                let coord = match &self.lambda {
                    LambdaSpec::Symbolic => PolyScalar::coordinate(rank, j),
                    LambdaSpec::Numeric(w) => PolyScalar::constant(rank, w.coords[j].clone()),
                };
                coord.add(&PolyScalar::constant(rank, mono_weight[j].clone()))
            })
            .collect()
    }

    /// Evaluate a weight-coordinate polynomial at the module's weight.
    fn settle(&self, p: PolyScalar) -> Result<PolyScalar> {
        match &self.lambda {
            LambdaSpec::Symbolic => Ok(p),
            LambdaSpec::Numeric(w) => {
                let v = p.eval(&w.coords)?;
                Ok(PolyScalar::constant(self.algebra.rank(), v))
            }
        }
    }

    /// Signed depth step of a generator: lowering raises the depth by the
    /// root height, raising lowers it, Cartan keeps it.
    fn depth_step(&self, pos: usize, d: usize) -> Option<usize> {
        let alg = &self.algebra;
        let h = alg.height_at(pos) as usize;
        if alg.is_negative_pos(pos) {
            Some(d + h)
        } else if alg.is_positive_pos(pos) {
            d.checked_sub(h)
        } else {
            Some(d)
        }
    }

    fn compute_action(&self, pos: usize, d: usize, i: usize) -> Option<ModVector> {
        let alg = &self.algebra;
        let target = match self.depth_step(pos, d) {
            // raising past the top kills the vector
            None => return Some(ModVector::zero()),
            Some(t) if t > self.depth => return None,
            Some(t) => t,
        };
        let mut word = vec![pos];
        word.extend(self.basis[d][i].letters());
        let rank = alg.rank();
        let mut out = ModVector::zero();
        for (mono, c) in normalize_word(alg, &word) {
            if mono.has_positive_part(alg) {
                continue;
            }
            // split off the Cartan part, evaluated at the highest weight
            let mut neg = vec![0u32; alg.pbw_len()];
            let mut cartan_exps = vec![0u32; rank];
            for p in 0..alg.pbw_len() {
                if alg.is_cartan_pos(p) {
                    cartan_exps[alg.cartan_coord_of_pos(p)] = mono.0[p];
                } else {
                    neg[p] = mono.0[p];
                }
            }
            let factor = PolyScalar::monomial(rank, cartan_exps, c);
            let factor = self.settle(factor).expect("weight arity checked at construction");
            let neg_mono = PBWMonomial(neg);
            let (td, ti) = *self
                .index
                .get(&neg_mono)
                .unwrap_or_else(|| panic!("weight bookkeeping: {neg_mono:?} at depth {target}"));
            debug_assert_eq!(td, target);
            out.add_term((td, ti), factor);
        }
        Some(out)
    }

    /// Action of a single generator (by basis index) on a module vector.
    pub fn act(&self, basis_idx: usize, v: &ModVector) -> Result<ModVector> {
        let pos = self.algebra.pbw_position(basis_idx);
        let mut out = ModVector::zero();
        for ((d, i), c) in &v.terms {
            match &self.act_cache[pos][*d][*i] {
                Some(image) => {
                    for (k, ic) in &image.terms {
                        out.add_term(*k, ic.mul(c));
                    }
                }
                None => {
                    return Err(Error::DepthExceeded {
                        needed: self.depth_step(pos, *d).unwrap_or(0),
                        depth: self.depth,
                    })
                }
            }
        }
        Ok(out)
    }

    pub fn act_named(&self, name: &str, v: &ModVector) -> Result<ModVector> {
        let idx = self
            .algebra
            .basis_index(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        self.act(idx, v)
    }

    /// Action of a linear combination of generators.
    pub fn act_comb(&self, comb: &[(usize, Scalar)], v: &ModVector) -> Result<ModVector> {
        let rank = self.algebra.rank();
        let mut out = ModVector::zero();
        for (idx, c) in comb {
            let image = self.act(*idx, v)?;
            out = out.add(&image.scale(&PolyScalar::constant(rank, c.clone())));
        }
        Ok(out)
    }

    /// Apply an enveloping-algebra element to the highest weight vector.
    pub fn apply_to_hwv(&self, u: &EnvElement) -> Result<ModVector> {
        let mut out = ModVector::zero();
        for (mono, coeff) in u.terms() {
            let mut v = self.highest_weight_vector();
            for &pos in mono.letters().iter().rev() {
                v = self.act(self.algebra.pbw_basis_index(pos), &v)?;
                if v.is_zero() {
                    break;
                }
            }
            let coeff = self.settle(coeff.clone())?;
            out = out.add(&v.scale(&coeff));
        }
        Ok(out)
    }

    /// `<b1, b2>` for two basis monomials: `(-i)^{|b2|} β(b2^* b1)` eval'd
    /// at the highest weight. Distinct weights and distinct parities give 0.
    fn gram_entry(&self, b1: &PBWMonomial, b2: &PBWMonomial) -> Result<PolyScalar> {
        let alg = &self.algebra;
        if b1.parity(alg) != b2.parity(alg) {
            return Ok(PolyScalar::zero(alg.rank()));
        }
        let e1 = monomial_element(alg, b1);
        let e2 = monomial_element(alg, b2);
        let phase = Scalar::neg_i_pow(b2.parity(alg) as u32);
        let p = e2.star()?.mul(&e1)?.hc_project().scale(&phase);
        self.settle(p)
    }

    /// The invariant Hermitian form, linear in the first argument. Vanishes
    /// across distinct parities and distinct weight spaces.
    pub fn shapovalov(&self, w: &ModVector, z: &ModVector) -> Result<PolyScalar> {
        let mut acc = PolyScalar::zero(self.algebra.rank());
        for ((d1, i1), c1) in &w.terms {
            for ((d2, i2), c2) in &z.terms {
                if d1 != d2 {
                    continue; // distinct weight spaces are orthogonal
                }
                let g = self.gram_entry(&self.basis[*d1][*i1], &self.basis[*d2][*i2])?;
                acc = acc.add(&g.mul(&c1.mul(&c2.conj())));
            }
        }
        Ok(acc)
    }

    /// Full Gram matrix of one weight level, with an exact definiteness
    /// verdict when the weight is numeric.
    pub fn gram(&self, d: usize) -> Result<GramLevel> {
        if d > self.depth {
            return Err(Error::DepthExceeded { needed: d, depth: self.depth });
        }
        let level = &self.basis[d];
        let n = level.len();
        // star images are shared across the row
        let stars: Vec<EnvElement> = level
            .iter()
            .map(|b| monomial_element(&self.algebra, b).star())
            .collect::<Result<_>>()?;
        let mut entries = vec![vec![PolyScalar::zero(self.algebra.rank()); n]; n];
        for i in 0..n {
            let ei = monomial_element(&self.algebra, &level[i]);
            for j in 0..n {
                if level[i].parity(&self.algebra) != level[j].parity(&self.algebra) {
                    continue;
                }
                let phase = Scalar::neg_i_pow(level[j].parity(&self.algebra) as u32);
                let p = stars[j].mul(&ei)?.hc_project().scale(&phase);
                entries[i][j] = self.settle(p)?;
            }
        }
        let verdict = if self.is_symbolic() {
            None
        } else {
            let scalars: Vec<Vec<Scalar>> = entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| p.as_constant().expect("numeric weight gives constants"))
                        .collect()
                })
                .collect();
            Some(analyze_hermitian(&scalars))
        };
        Ok(GramLevel { depth: d, basis: level.clone(), entries, verdict })
    }

    /// All Gram levels `0..=depth`; levels are independent and computed with
    /// the parallel mapper.
    pub fn gram_levels(&self, up_to: usize) -> Result<Vec<GramLevel>> {
        if up_to > self.depth {
            return Err(Error::DepthExceeded { needed: up_to, depth: self.depth });
        }
        let results = crate::par::map_vec((0..=up_to).collect(), |d| self.gram(d));
        results.into_iter().collect()
    }

    /// Render a module vector as a combination of `m·v` labels.
    pub fn render_vector(&self, v: &ModVector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (pos, ((d, i), c)) in v.terms.iter().enumerate() {
            let mono = &self.basis[*d][*i];
            let label = if mono.degree() == 0 {
                "v".to_string()
            } else {
                format!("{}*v", mono.render(&self.algebra))
            };
            match c.as_constant() {
                Some(k) => crate::scalar::push_term(&mut out, pos == 0, &k, &label),
                None => {
                    let sep = if pos == 0 { "" } else { " + " };
                    out.push_str(&format!("{sep}({c})*{label}"));
                }
            }
        }
        out
    }
}

/// The enveloping-algebra element of a single PBW monomial.
pub fn monomial_element(alg: &Arc<SuperAlgebra>, m: &PBWMonomial) -> EnvElement {
    let word: Vec<(usize, u32)> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(pos, &e)| (alg.pbw_basis_index(pos), e))
        .collect();
    EnvElement::from_word(alg, &word)
}

/// Split the rank-one super Verma module into its two even-subalgebra
/// summands: basis slots with even parity (generated by the highest weight
/// vector) and with odd parity (generated by its odd lowering).
pub struct EvenDecomposition {
    pub even_vectors: Vec<(usize, usize)>,
    pub odd_vectors: Vec<(usize, usize)>,
}

pub fn decompose_even(module: &VermaModule, up_to: usize) -> Result<EvenDecomposition> {
    if !module.algebra().is_osp12() {
        return Err(Error::WrongAlgebra("the built-in osp12 table".to_string()));
    }
    if up_to > module.depth() {
        return Err(Error::DepthExceeded { needed: up_to, depth: module.depth() });
    }
    let mut even_vectors = Vec::new();
    let mut odd_vectors = Vec::new();
    for d in 0..=up_to {
        for i in 0..module.level_dim(d) {
            if module.basis_parity(d, i) == 0 {
                even_vectors.push((d, i));
            } else {
                odd_vectors.push((d, i));
            }
        }
    }
    Ok(EvenDecomposition { even_vectors, odd_vectors })
}
