use std::collections::BTreeMap;

use super::ParamError;
use crate::graphs::{canonicalize, ColoredGraph, GraphOp};
use crate::semiring::Semiring;

/// A formal `⊕`-combination `⊕ aᵢ Fᵢ` of `k`-colored graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumGraph<S> {
    k: usize,
    terms: Vec<(S, ColoredGraph)>,
}

impl<S: Semiring> QuantumGraph<S> {
    pub fn new(k: usize) -> Self {
        QuantumGraph { k, terms: Vec::new() }
    }

    pub fn single(coeff: S, g: ColoredGraph) -> Self {
        QuantumGraph { k: g.k(), terms: vec![(coeff, g)] }
    }

    /// Unit coefficient on `g`.
    pub fn graph(g: ColoredGraph) -> Self {
        Self::single(S::one(), g)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(S, ColoredGraph)] {
        &self.terms
    }

    pub fn push(&mut self, coeff: S, g: ColoredGraph) -> Result<(), ParamError> {
        if g.k() != self.k {
            return Err(ParamError::KMismatch(self.k, g.k()));
        }
        self.terms.push((coeff, g));
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ParamError> {
        if self.k != other.k {
            return Err(ParamError::KMismatch(self.k, other.k));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(QuantumGraph { k: self.k, terms })
    }

    pub fn scale(&self, a: &S) -> Self {
        let terms = self.terms.iter().map(|(c, g)| (a.times(c), g.clone())).collect();
        QuantumGraph { k: self.k, terms }
    }

    /// Terms with isomorphic graphs combined by `⊕`, ordered by canonical
    /// form.
    pub fn normalize(&self) -> Result<Self, ParamError> {
        let mut merged: BTreeMap<_, (S, ColoredGraph)> = BTreeMap::new();
        for (c, g) in &self.terms {
            let (form, canon) = canonicalize(g)?;
            merged
                .entry(form)
                .and_modify(|(acc, _)| *acc = acc.plus(c))
                .or_insert_with(|| (c.clone(), canon));
        }
        Ok(QuantumGraph { k: self.k, terms: merged.into_values().collect() })
    }

    /// `□(X, Y) = ⊕ (aᵢ ⊗ bⱼ) □(Fᵢ, Gⱼ)`.
    pub fn apply_op(op: &GraphOp, x: &Self, y: &Self) -> Result<Self, ParamError> {
        if x.k != y.k {
            return Err(ParamError::KMismatch(x.k, y.k));
        }
        let mut terms = Vec::with_capacity(x.terms.len() * y.terms.len());
        for (a, f) in &x.terms {
            for (b, g) in &y.terms {
                terms.push((a.times(b), op.apply(f, g)?));
            }
        }
        Ok(QuantumGraph { k: x.k, terms })
    }

    /// `f(X) = ⊕ aᵢ ⊗ f(Fᵢ)`.
    pub fn apply_param<F>(&self, f: F) -> Result<S, ParamError>
    where
        F: Fn(&ColoredGraph) -> Result<S, ParamError>,
    {
        let mut acc = S::zero();
        for (c, g) in &self.terms {
            acc = acc.plus(&c.times(&f(g)?));
        }
        Ok(acc)
    }

    /// `⟨X, Y⟩ = f(□(X, Y))`.
    pub fn inner_product<F>(f: F, op: &GraphOp, x: &Self, y: &Self) -> Result<S, ParamError>
    where
        F: Fn(&ColoredGraph) -> Result<S, ParamError>,
    {
        Self::apply_op(op, x, y)?.apply_param(f)
    }
}
