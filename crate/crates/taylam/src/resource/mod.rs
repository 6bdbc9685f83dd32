//! The resource calculus: linear approximants of source terms.
//!
//! Arguments are finite multisets consumed exactly once, and the two choice
//! markers `inl`/`inr` record which branch of a superposition a term
//! approximates. Monomials are kept sorted under the structural order, so
//! multiset equality is plain structural equality.

pub mod reduce;
pub mod subst;
pub mod sum;

use crate::names::{Hint, VarRef};
use num::BigUint;
use std::fmt;

/// A resource term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResTerm {
    Var(VarRef),
    Lam(Hint, Box<ResTerm>),
    App(Box<ResTerm>, ResMonomial),
    Inl(Box<ResTerm>),
    Inr(Box<ResTerm>),
}

/// A finite multiset of resource terms, stored as a sorted list.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResMonomial(Vec<ResTerm>);

impl ResMonomial {
    pub fn new(mut items: Vec<ResTerm>) -> Self {
        items.sort();
        ResMonomial(items)
    }

    pub fn empty() -> Self {
        ResMonomial(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The canonical (sorted) enumeration of the multiset.
    pub fn items(&self) -> &[ResTerm] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ResTerm> {
        self.0.iter()
    }

    /// Multiset union.
    pub fn union(&self, other: &ResMonomial) -> ResMonomial {
        let mut items = self.0.clone();
        items.extend(other.0.iter().cloned());
        ResMonomial::new(items)
    }

    /// Groups equal elements: `(element, multiplicity)` pairs.
    pub fn groups(&self) -> Vec<(&ResTerm, usize)> {
        let mut out: Vec<(&ResTerm, usize)> = Vec::new();
        for t in &self.0 {
            match out.last_mut() {
                Some((u, n)) if *u == t => *n += 1,
                _ => out.push((t, 1)),
            }
        }
        out
    }
}

impl FromIterator<ResTerm> for ResMonomial {
    fn from_iter<I: IntoIterator<Item = ResTerm>>(iter: I) -> Self {
        ResMonomial::new(iter.into_iter().collect())
    }
}

/// A resource expression: a term or a monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResExpr {
    Term(ResTerm),
    Mono(ResMonomial),
}

impl From<ResTerm> for ResExpr {
    fn from(t: ResTerm) -> Self {
        ResExpr::Term(t)
    }
}

impl From<ResMonomial> for ResExpr {
    fn from(m: ResMonomial) -> Self {
        ResExpr::Mono(m)
    }
}

// Construction helpers mirroring the lambda side.

pub fn rvar(name: impl Into<String>) -> ResTerm {
    ResTerm::Var(VarRef::free(name))
}

pub fn rlam(name: impl Into<String>, body: ResTerm) -> ResTerm {
    let name = name.into();
    let closed = close_res(body, &name, 0);
    ResTerm::Lam(Hint::new(name), Box::new(closed))
}

pub fn rapp(f: ResTerm, args: Vec<ResTerm>) -> ResTerm {
    ResTerm::App(Box::new(f), ResMonomial::new(args))
}

pub fn inl(t: ResTerm) -> ResTerm {
    ResTerm::Inl(Box::new(t))
}

pub fn inr(t: ResTerm) -> ResTerm {
    ResTerm::Inr(Box::new(t))
}

pub fn mono(items: Vec<ResTerm>) -> ResMonomial {
    ResMonomial::new(items)
}

fn close_res(t: ResTerm, name: &str, depth: usize) -> ResTerm {
    match t {
        ResTerm::Var(VarRef::Free(n)) if n == name => ResTerm::Var(VarRef::Bound(depth)),
        ResTerm::Var(v) => ResTerm::Var(v),
        ResTerm::Lam(h, b) => ResTerm::Lam(h, Box::new(close_res(*b, name, depth + 1))),
        ResTerm::App(f, args) => ResTerm::App(
            Box::new(close_res(*f, name, depth)),
            ResMonomial::new(
                args.0
                    .into_iter()
                    .map(|a| close_res(a, name, depth))
                    .collect(),
            ),
        ),
        ResTerm::Inl(s) => ResTerm::Inl(Box::new(close_res(*s, name, depth))),
        ResTerm::Inr(s) => ResTerm::Inr(Box::new(close_res(*s, name, depth))),
    }
}

/// Shift dangling binder indices; used when substituting expressions that
/// travel under binders.
pub(crate) fn shift_res(t: &ResTerm, by: usize, cutoff: usize) -> ResTerm {
    match t {
        ResTerm::Var(VarRef::Bound(i)) if *i >= cutoff => ResTerm::Var(VarRef::Bound(i + by)),
        ResTerm::Var(v) => ResTerm::Var(v.clone()),
        ResTerm::Lam(h, b) => ResTerm::Lam(h.clone(), Box::new(shift_res(b, by, cutoff + 1))),
        ResTerm::App(f, args) => ResTerm::App(
            Box::new(shift_res(f, by, cutoff)),
            ResMonomial::new(args.iter().map(|a| shift_res(a, by, cutoff)).collect()),
        ),
        ResTerm::Inl(s) => ResTerm::Inl(Box::new(shift_res(s, by, cutoff))),
        ResTerm::Inr(s) => ResTerm::Inr(Box::new(shift_res(s, by, cutoff))),
    }
}

impl ResTerm {
    /// Number of free occurrences of `x`.
    pub fn occurrences(&self, x: &str) -> usize {
        match self {
            ResTerm::Var(VarRef::Free(n)) => usize::from(n == x),
            ResTerm::Var(_) => 0,
            ResTerm::Lam(_, b) => b.occurrences(x),
            ResTerm::App(f, args) => f.occurrences(x) + args.occurrences(x),
            ResTerm::Inl(s) | ResTerm::Inr(s) => s.occurrences(x),
        }
    }

    /// Syntactic size: every variable, abstraction, application node and
    /// injection counts one; a monomial contributes the sum of its elements.
    pub fn size(&self) -> usize {
        match self {
            ResTerm::Var(_) => 1,
            ResTerm::Lam(_, b) => 1 + b.size(),
            ResTerm::App(f, args) => 1 + f.size() + args.size(),
            ResTerm::Inl(s) | ResTerm::Inr(s) => 1 + s.size(),
        }
    }
}

impl ResMonomial {
    pub fn occurrences(&self, x: &str) -> usize {
        self.0.iter().map(|t| t.occurrences(x)).sum()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(ResTerm::size).sum()
    }
}

impl ResExpr {
    pub fn occurrences(&self, x: &str) -> usize {
        match self {
            ResExpr::Term(t) => t.occurrences(x),
            ResExpr::Mono(m) => m.occurrences(x),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ResExpr::Term(t) => t.size(),
            ResExpr::Mono(m) => m.size(),
        }
    }
}

/// The multiplicity coefficient: the number of argument permutations fixing
/// the expression. `m(x) = 1`, abstractions and injections are transparent,
/// applications multiply, and a monomial with groups `[t_i]^{n_i}` weighs
/// `prod n_i! m(t_i)^{n_i}`.
pub fn multiplicity(e: &ResExpr) -> BigUint {
    match e {
        ResExpr::Term(t) => multiplicity_term(t),
        ResExpr::Mono(m) => multiplicity_mono(m),
    }
}

pub fn multiplicity_term(t: &ResTerm) -> BigUint {
    match t {
        ResTerm::Var(_) => BigUint::from(1u8),
        ResTerm::Lam(_, b) => multiplicity_term(b),
        ResTerm::Inl(s) | ResTerm::Inr(s) => multiplicity_term(s),
        ResTerm::App(f, args) => multiplicity_term(f) * multiplicity_mono(args),
    }
}

pub fn multiplicity_mono(m: &ResMonomial) -> BigUint {
    let mut acc = BigUint::from(1u8);
    for (t, n) in m.groups() {
        acc *= factorial(n);
        acc *= multiplicity_term(t).pow(n as u32);
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product::<BigUint>().max(BigUint::from(1u8))
}

/// The coherence relation. Two terms cohere when they differ only in the
/// widths of argument monomials and in choice branches; monomials cohere when
/// all elements drawn from either side pairwise cohere. Not reflexive.
pub fn coherent_terms(a: &ResTerm, b: &ResTerm) -> bool {
    match (a, b) {
        (ResTerm::Var(v), ResTerm::Var(w)) => v == w,
        (ResTerm::Lam(_, s), ResTerm::Lam(_, t)) => coherent_terms(s, t),
        (ResTerm::App(f, us), ResTerm::App(g, vs)) => {
            coherent_terms(f, g) && coherent_monos(us, vs)
        }
        (ResTerm::Inl(s), ResTerm::Inl(t)) => coherent_terms(s, t),
        (ResTerm::Inr(s), ResTerm::Inr(t)) => coherent_terms(s, t),
        (ResTerm::Inl(_), ResTerm::Inr(_)) | (ResTerm::Inr(_), ResTerm::Inl(_)) => true,
        _ => false,
    }
}

pub fn coherent_monos(a: &ResMonomial, b: &ResMonomial) -> bool {
    let all: Vec<&ResTerm> = a.iter().chain(b.iter()).collect();
    for (i, s) in all.iter().enumerate() {
        for t in &all[i..] {
            if !coherent_terms(s, t) {
                return false;
            }
        }
    }
    true
}

pub fn coherent(a: &ResExpr, b: &ResExpr) -> bool {
    match (a, b) {
        (ResExpr::Term(s), ResExpr::Term(t)) => coherent_terms(s, t),
        (ResExpr::Mono(s), ResExpr::Mono(t)) => coherent_monos(s, t),
        _ => false,
    }
}

/// An expression is uniform when it coheres with itself.
pub fn uniform(e: &ResExpr) -> bool {
    coherent(e, e)
}

/// A clique is a set whose elements pairwise cohere, including each element
/// with itself.
pub fn is_clique<'a, I>(exprs: I) -> bool
where
    I: IntoIterator<Item = &'a ResExpr>,
{
    let items: Vec<&ResExpr> = exprs.into_iter().collect();
    for (i, a) in items.iter().enumerate() {
        for b in &items[i..] {
            if !coherent(a, b) {
                return false;
            }
        }
    }
    true
}

impl fmt::Display for ResTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_res_term(self))
    }
}

impl fmt::Display for ResMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_res_mono(self))
    }
}

impl fmt::Display for ResExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResExpr::Term(t) => t.fmt(f),
            ResExpr::Mono(m) => m.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_canonicalize() {
        let a = mono(vec![rvar("y"), rvar("x")]);
        let b = mono(vec![rvar("x"), rvar("y")]);
        assert_eq!(a, b);
        assert_eq!(mono(vec![]).len(), 0);
        assert_eq!(
            mono(vec![rvar("x")]).union(&mono(vec![rvar("x"), rvar("y")])),
            mono(vec![rvar("x"), rvar("x"), rvar("y")])
        );
    }

    #[test]
    fn occurrence_counts() {
        let e = rapp(rvar("x"), vec![rvar("x")]);
        assert_eq!(e.occurrences("x"), 2);
        assert_eq!(rlam("x", rvar("x")).occurrences("x"), 0);
        let m = mono(vec![rvar("y"), rapp(rvar("y"), vec![rvar("y")])]);
        assert_eq!(m.occurrences("y"), 3);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&rvar("x").into()), BigUint::from(1u8));
        let m = mono(vec![rvar("y"), rvar("y"), rvar("z")]);
        assert_eq!(multiplicity(&m.into()), BigUint::from(2u8));
        // <y>[\x.<x>[z,z], \x.<x>[z,z]] has multiplicity 2 * 2^2 = 8
        let elem = rlam("x", rapp(rvar("x"), vec![rvar("z"), rvar("z")]));
        let t = rapp(rvar("y"), vec![elem.clone(), elem]);
        assert_eq!(multiplicity(&t.into()), BigUint::from(8u8));
    }

    #[test]
    fn coherence_examples() {
        let a: ResExpr = inl(rvar("x")).into();
        let b: ResExpr = inr(rlam("y", rvar("y"))).into();
        assert!(coherent(&a, &b));
        assert!(coherent(&b, &a));

        let m1: ResExpr = mono(vec![rvar("x")]).into();
        let m2: ResExpr = mono(vec![rvar("x"), rvar("x")]).into();
        assert!(coherent(&m1, &m2));

        // the left side alone breaks coherence with the empty monomial
        let bad: ResExpr = mono(vec![rvar("x"), rlam("y", rvar("y"))]).into();
        let empty: ResExpr = mono(vec![]).into();
        assert!(!coherent(&bad, &empty));
        assert!(!is_clique([&bad]));
        assert!(is_clique::<[&ResExpr; 0]>([]));
        let l: ResExpr = inl(rvar("x")).into();
        let r: ResExpr = inr(rvar("y")).into();
        assert!(is_clique([&l, &r]));
    }

    #[test]
    fn coherence_is_symmetric_on_samples() {
        let exprs: Vec<ResExpr> = vec![
            rvar("x").into(),
            inl(rvar("x")).into(),
            inr(rvar("x")).into(),
            rapp(rvar("x"), vec![rvar("x")]).into(),
            mono(vec![rvar("x"), rvar("x")]).into(),
            mono(vec![inl(rvar("x")), inr(rvar("y"))]).into(),
        ];
        for a in &exprs {
            for b in &exprs {
                assert_eq!(coherent(a, b), coherent(b, a));
            }
        }
    }
}
