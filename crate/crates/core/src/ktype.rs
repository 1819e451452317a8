//! Multiplicity bounds for modules induced from the even part. The odd
//! monomial span is finite dimensional; over an abelian compact subalgebra
//! its characters shift the characters of the inducing module by finitely
//! many weights, so each character multiplicity of the induced module is
//! bounded by `dim(R) * sum of the finitely many input multiplicities`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::enveloping::{normalize_word, PBWMonomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::structure::SuperAlgebra;

/// A multiplicity entry: an exact count, or merely "finite".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mult {
    Count(u64),
    Finite,
}

impl Mult {
    fn add(self, rhs: Mult) -> Mult {
        match (self, rhs) {
            (Mult::Count(a), Mult::Count(b)) => Mult::Count(a + b),
            _ => Mult::Finite,
        }
    }

    fn scale(self, k: u64) -> Mult {
        match self {
            Mult::Count(a) => Mult::Count(a * k),
            Mult::Finite => Mult::Finite,
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Count(n) => write!(f, "{n}"),
            Mult::Finite => write!(f, "finite"),
        }
    }
}

/// Lookup policy for characters absent from the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableDefault {
    /// Absent characters are an error (partial table).
    Missing,
    /// Absent characters have multiplicity zero (complete table).
    Zero,
    /// Every character has this multiplicity.
    Uniform(Mult),
}

/// Character multiplicities of a module over the abelian compact
/// subalgebra: weights (coordinates over the Cartan basis) to multiplicity.
#[derive(Debug, Clone)]
pub struct KTypeTable {
    pub entries: BTreeMap<Vec<Scalar>, Mult>,
    pub default: TableDefault,
}

impl KTypeTable {
    pub fn lookup(&self, q: &[Scalar]) -> Result<Mult> {
        if let Some(m) = self.entries.get(q) {
            return Ok(*m);
        }
        match self.default {
            TableDefault::Zero => Ok(Mult::Count(0)),
            TableDefault::Uniform(m) => Ok(m),
            TableDefault::Missing => {
                let coords: Vec<String> = q.iter().map(|c| c.to_string()).collect();
                Err(Error::MissingKType(format!("({})", coords.join(", "))))
            }
        }
    }
}

/// The reduced odd monomial span: normal forms of all words in the odd
/// generators of length at most `dim g_1`, keeping the purely odd PBW
/// monomials that appear. Everything else is absorbed into the even factor.
pub fn odd_monomial_span(alg: &SuperAlgebra) -> Vec<PBWMonomial> {
    let odd_positions: Vec<usize> =
        (0..alg.pbw_len()).filter(|&p| alg.parity_at(p) == 1).collect();
    let r = odd_positions.len();
    let mut seen: Vec<PBWMonomial> = Vec::new();
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    for _len in 0..r {
        let mut next = Vec::new();
        for word in &words {
            for &p in &odd_positions {
                let mut w = word.clone();
                w.push(p);
                next.push(w);
            }
        }
        for word in &next {
            for (mono, _) in normalize_word(alg, word) {
                let purely_odd = mono
                    .0
                    .iter()
                    .enumerate()
                    .all(|(pos, &e)| e == 0 || alg.parity_at(pos) == 1);
                if purely_odd && !seen.contains(&mono) {
                    seen.push(mono);
                }
            }
        }
        words = next;
    }
    if !seen.contains(&PBWMonomial::one(alg.pbw_len())) {
        seen.push(PBWMonomial::one(alg.pbw_len()));
    }
    seen.sort();
    seen
}

/// The bound itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTypeBound {
    pub bound: Mult,
    /// dim(R), the size of the reduced odd monomial span.
    pub span_dim: usize,
    /// The character set of the inducing module that can reach `p`.
    pub contributing: Vec<Vec<Scalar>>,
}

/// Certified upper bound for the multiplicity of the character `p` in the
/// module induced from an even-part module with the given character table.
/// Requires the declared compact subalgebra to be the (abelian) Cartan.
pub fn induce_ktype_bound(
    alg: &Arc<SuperAlgebra>,
    table: &KTypeTable,
    p: &[Scalar],
) -> Result<KTypeBound> {
    let mut compact = alg.data.compact.clone();
    let mut cartan = alg.data.cartan.clone();
    compact.sort_unstable();
    cartan.sort_unstable();
    if compact != cartan {
        return Err(Error::Unsupported(
            "character bounds require the compact subalgebra to be the Cartan".into(),
        ));
    }
    if p.len() != alg.rank() {
        return Err(Error::Arity { expected: alg.rank(), got: p.len() });
    }

    let span = odd_monomial_span(alg);
    let mut shifts: Vec<Vec<Scalar>> = Vec::new();
    for m in &span {
        let w = m.weight(alg);
        if !shifts.contains(&w) {
            shifts.push(w);
        }
    }
    let mut contributing: Vec<Vec<Scalar>> = Vec::new();
    for delta in &shifts {
        let q: Vec<Scalar> = p.iter().zip(delta).map(|(a, b)| a - b).collect();
        if !contributing.contains(&q) {
            contributing.push(q);
        }
    }
    contributing.sort();

    let mut total = Mult::Count(0);
    for q in &contributing {
        total = total.add(table.lookup(q)?);
    }
    Ok(KTypeBound {
        bound: total.scale(span.len() as u64),
        span_dim: span.len(),
        contributing,
    })
}

/// Bound for a nonabelian compact subalgebra from user-supplied tensor
/// decompositions: `r_dims` lists the irreducible classes of the odd span
/// with their dimensions, and `contributions[r]` the classes of the inducing
/// module that can reach the requested type through `r`.
pub fn induce_ktype_bound_with_rule(
    r_dims: &[(String, u64)],
    contributions: &BTreeMap<String, Vec<String>>,
    mults: &BTreeMap<String, Mult>,
) -> Result<KTypeBound> {
    let span_dim: u64 = r_dims.iter().map(|(_, d)| *d).sum();
    let mut classes: Vec<&String> = Vec::new();
    for (r, _) in r_dims {
        if let Some(qs) = contributions.get(r) {
            for q in qs {
                if !classes.contains(&q) {
                    classes.push(q);
                }
            }
        }
    }
    let mut total = Mult::Count(0);
    for q in classes {
        let m = mults
            .get(q)
            .copied()
            .ok_or_else(|| Error::MissingKType(q.clone()))?;
        total = total.add(m);
    }
    Ok(KTypeBound {
        bound: total.scale(span_dim),
        span_dim: span_dim as usize,
        contributing: Vec::new(),
    })
}
