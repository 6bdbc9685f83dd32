//! Permutation expressions: the morphisms of the groupoid whose objects are
//! rigid expressions. A permutation term mirrors the shape of its source and
//! carries one permutation per argument list; its automorphism counts realize
//! the multiplicity coefficients of the resource calculus.

pub mod perm;

use crate::names::{Hint, VarRef};
use crate::rigid::{
    readback, rigid_subst, RigidExpr, RigidMonomial, RigidTerm,
};
use num::{BigInt, BigUint, One, Signed, Zero};
use perm::{multiplex, tensor, Perm};
use std::fmt;

/// A morphism between rigid terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PermTerm {
    Var(VarRef),
    Lam(Hint, Box<PermTerm>),
    App(Box<PermTerm>, PermMonomial),
    Inl(Box<PermTerm>),
    Inr(Box<PermTerm>),
}

/// A morphism between rigid monomials: a permutation of the slots plus one
/// morphism per source slot, the part at slot `i` mapping it to target slot
/// `sigma(i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermMonomial {
    pub sigma: Perm,
    pub parts: Vec<PermTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PermExpr {
    Term(PermTerm),
    Mono(PermMonomial),
}

impl From<PermTerm> for PermExpr {
    fn from(t: PermTerm) -> Self {
        PermExpr::Term(t)
    }
}

impl From<PermMonomial> for PermExpr {
    fn from(m: PermMonomial) -> Self {
        PermExpr::Mono(m)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GroupoidError {
    #[error("composition endpoint mismatch: target is {target} but source is {source}")]
    EndpointMismatch { target: String, source: String },
    #[error("substitution arity mismatch for {var}: {occurrences} occurrences vs {provided} morphisms")]
    ArityMismatch {
        var: String,
        occurrences: usize,
        provided: usize,
    },
}

// ---------------------------------------------------------------------------
// Endpoints

pub fn src_term(e: &PermTerm) -> RigidTerm {
    match e {
        PermTerm::Var(v) => RigidTerm::Var(v.clone()),
        PermTerm::Lam(h, a) => RigidTerm::Lam(h.clone(), Box::new(src_term(a))),
        PermTerm::App(f, m) => RigidTerm::App(Box::new(src_term(f)), src_mono(m)),
        PermTerm::Inl(a) => RigidTerm::Inl(Box::new(src_term(a))),
        PermTerm::Inr(a) => RigidTerm::Inr(Box::new(src_term(a))),
    }
}

pub fn tgt_term(e: &PermTerm) -> RigidTerm {
    match e {
        PermTerm::Var(v) => RigidTerm::Var(v.clone()),
        PermTerm::Lam(h, a) => RigidTerm::Lam(h.clone(), Box::new(tgt_term(a))),
        PermTerm::App(f, m) => RigidTerm::App(Box::new(tgt_term(f)), tgt_mono(m)),
        PermTerm::Inl(a) => RigidTerm::Inl(Box::new(tgt_term(a))),
        PermTerm::Inr(a) => RigidTerm::Inr(Box::new(tgt_term(a))),
    }
}

pub fn src_mono(m: &PermMonomial) -> RigidMonomial {
    RigidMonomial(m.parts.iter().map(src_term).collect())
}

pub fn tgt_mono(m: &PermMonomial) -> RigidMonomial {
    let tgts: Vec<RigidTerm> = m.parts.iter().map(tgt_term).collect();
    RigidMonomial(m.sigma.act(&tgts))
}

pub fn src(e: &PermExpr) -> RigidExpr {
    match e {
        PermExpr::Term(t) => RigidExpr::Term(src_term(t)),
        PermExpr::Mono(m) => RigidExpr::Mono(src_mono(m)),
    }
}

pub fn tgt(e: &PermExpr) -> RigidExpr {
    match e {
        PermExpr::Term(t) => RigidExpr::Term(tgt_term(t)),
        PermExpr::Mono(m) => RigidExpr::Mono(tgt_mono(m)),
    }
}

// ---------------------------------------------------------------------------
// Identities, composition, inverses

pub fn identity_term(r: &RigidTerm) -> PermTerm {
    match r {
        RigidTerm::Var(v) => PermTerm::Var(v.clone()),
        RigidTerm::Lam(h, b) => PermTerm::Lam(h.clone(), Box::new(identity_term(b))),
        RigidTerm::App(f, args) => PermTerm::App(Box::new(identity_term(f)), identity_mono(args)),
        RigidTerm::Inl(s) => PermTerm::Inl(Box::new(identity_term(s))),
        RigidTerm::Inr(s) => PermTerm::Inr(Box::new(identity_term(s))),
    }
}

pub fn identity_mono(r: &RigidMonomial) -> PermMonomial {
    PermMonomial {
        sigma: Perm::identity(r.len()),
        parts: r.iter().map(identity_term).collect(),
    }
}

pub fn identity(r: &RigidExpr) -> PermExpr {
    match r {
        RigidExpr::Term(t) => PermExpr::Term(identity_term(t)),
        RigidExpr::Mono(m) => PermExpr::Mono(identity_mono(m)),
    }
}

/// Composition `second . first`; the target of `first` must equal the source
/// of `second`.
pub fn compose(second: &PermExpr, first: &PermExpr) -> Result<PermExpr, GroupoidError> {
    let t = tgt(first);
    let s = src(second);
    if t != s {
        return Err(GroupoidError::EndpointMismatch {
            target: format!("{t}"),
            source: format!("{s}"),
        });
    }
    Ok(compose_unchecked(second, first))
}

fn compose_unchecked(second: &PermExpr, first: &PermExpr) -> PermExpr {
    match (second, first) {
        (PermExpr::Term(a), PermExpr::Term(b)) => PermExpr::Term(compose_terms(a, b)),
        (PermExpr::Mono(a), PermExpr::Mono(b)) => PermExpr::Mono(compose_monos(a, b)),
        _ => unreachable!("endpoints agreed, so the shapes agree"),
    }
}

fn compose_terms(second: &PermTerm, first: &PermTerm) -> PermTerm {
    match (second, first) {
        (PermTerm::Var(v), PermTerm::Var(_)) => PermTerm::Var(v.clone()),
        (PermTerm::Lam(h, a), PermTerm::Lam(_, b)) => {
            PermTerm::Lam(h.clone(), Box::new(compose_terms(a, b)))
        }
        (PermTerm::App(f, m), PermTerm::App(g, n)) => {
            PermTerm::App(Box::new(compose_terms(f, g)), compose_monos(m, n))
        }
        (PermTerm::Inl(a), PermTerm::Inl(b)) => PermTerm::Inl(Box::new(compose_terms(a, b))),
        (PermTerm::Inr(a), PermTerm::Inr(b)) => PermTerm::Inr(Box::new(compose_terms(a, b))),
        _ => unreachable!("endpoints agreed, so the shapes agree"),
    }
}

fn compose_monos(second: &PermMonomial, first: &PermMonomial) -> PermMonomial {
    // part i of the composite goes through slot first.sigma(i)
    let parts = first
        .parts
        .iter()
        .enumerate()
        .map(|(i, alpha)| compose_terms(&second.parts[first.sigma.apply(i)], alpha))
        .collect();
    PermMonomial {
        sigma: second.sigma.after(&first.sigma),
        parts,
    }
}

pub fn inverse(e: &PermExpr) -> PermExpr {
    match e {
        PermExpr::Term(t) => PermExpr::Term(inverse_term(t)),
        PermExpr::Mono(m) => PermExpr::Mono(inverse_mono(m)),
    }
}

pub fn inverse_term(e: &PermTerm) -> PermTerm {
    match e {
        PermTerm::Var(v) => PermTerm::Var(v.clone()),
        PermTerm::Lam(h, a) => PermTerm::Lam(h.clone(), Box::new(inverse_term(a))),
        PermTerm::App(f, m) => PermTerm::App(Box::new(inverse_term(f)), inverse_mono(m)),
        PermTerm::Inl(a) => PermTerm::Inl(Box::new(inverse_term(a))),
        PermTerm::Inr(a) => PermTerm::Inr(Box::new(inverse_term(a))),
    }
}

pub fn inverse_mono(m: &PermMonomial) -> PermMonomial {
    let inv = m.sigma.inverse();
    let parts = (0..m.parts.len())
        .map(|i| inverse_term(&m.parts[inv.apply(i)]))
        .collect();
    PermMonomial { sigma: inv, parts }
}

// ---------------------------------------------------------------------------
// Hom-set enumeration and counting

/// All morphisms from `r` to `r2`; empty exactly when the readbacks differ.
pub fn hom_terms(r: &RigidTerm, r2: &RigidTerm) -> Vec<PermTerm> {
    match (r, r2) {
        (RigidTerm::Var(v), RigidTerm::Var(w)) if v == w => vec![PermTerm::Var(v.clone())],
        (RigidTerm::Lam(h, a), RigidTerm::Lam(_, b)) => hom_terms(a, b)
            .into_iter()
            .map(|m| PermTerm::Lam(h.clone(), Box::new(m)))
            .collect(),
        (RigidTerm::App(f, m), RigidTerm::App(g, n)) => {
            let fs = hom_terms(f, g);
            if fs.is_empty() {
                return Vec::new();
            }
            let ms = hom_monos(m, n);
            let mut out = Vec::new();
            for fm in &fs {
                for mm in &ms {
                    out.push(PermTerm::App(Box::new(fm.clone()), mm.clone()));
                }
            }
            out
        }
        (RigidTerm::Inl(a), RigidTerm::Inl(b)) => hom_terms(a, b)
            .into_iter()
            .map(|m| PermTerm::Inl(Box::new(m)))
            .collect(),
        (RigidTerm::Inr(a), RigidTerm::Inr(b)) => hom_terms(a, b)
            .into_iter()
            .map(|m| PermTerm::Inr(Box::new(m)))
            .collect(),
        _ => Vec::new(),
    }
}

pub fn hom_monos(m: &RigidMonomial, n: &RigidMonomial) -> Vec<PermMonomial> {
    if m.len() != n.len() {
        return Vec::new();
    }
    let k = m.len();
    let mut out = Vec::new();
    for sigma in Perm::all(k) {
        // parts[i] : m[i] -> n[sigma(i)]
        let choices: Vec<Vec<PermTerm>> = (0..k)
            .map(|i| hom_terms(&m.items()[i], &n.items()[sigma.apply(i)]))
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut combos: Vec<Vec<PermTerm>> = vec![Vec::new()];
        for c in &choices {
            let mut next = Vec::new();
            for prefix in &combos {
                for item in c {
                    let mut v = prefix.clone();
                    v.push(item.clone());
                    next.push(v);
                }
            }
            combos = next;
        }
        out.extend(combos.into_iter().map(|parts| PermMonomial {
            sigma: sigma.clone(),
            parts,
        }));
    }
    out
}

pub fn hom_set(r: &RigidExpr, r2: &RigidExpr) -> Vec<PermExpr> {
    match (r, r2) {
        (RigidExpr::Term(a), RigidExpr::Term(b)) => {
            hom_terms(a, b).into_iter().map(PermExpr::Term).collect()
        }
        (RigidExpr::Mono(a), RigidExpr::Mono(b)) => {
            hom_monos(a, b).into_iter().map(PermExpr::Mono).collect()
        }
        _ => Vec::new(),
    }
}

/// Positionwise morphism vectors between equal-length monomials (no slot
/// permutation): the hom-sets of the product groupoid.
pub fn hom_parts(m: &RigidMonomial, n: &RigidMonomial) -> Vec<Vec<PermTerm>> {
    if m.len() != n.len() {
        return Vec::new();
    }
    let choices: Vec<Vec<PermTerm>> = m
        .iter()
        .zip(n.iter())
        .map(|(a, b)| hom_terms(a, b))
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut combos: Vec<Vec<PermTerm>> = vec![Vec::new()];
    for c in &choices {
        let mut next = Vec::new();
        for prefix in &combos {
            for item in c {
                let mut v = prefix.clone();
                v.push(item.clone());
                next.push(v);
            }
        }
        combos = next;
    }
    combos
}

/// The number of morphisms from `r` to `r2`, computed without materializing
/// them: the monomial case is the permanent of the pairwise count matrix.
pub fn count_homs_term(r: &RigidTerm, r2: &RigidTerm) -> BigUint {
    match (r, r2) {
        (RigidTerm::Var(v), RigidTerm::Var(w)) if v == w => BigUint::one(),
        (RigidTerm::Lam(_, a), RigidTerm::Lam(_, b)) => count_homs_term(a, b),
        (RigidTerm::App(f, m), RigidTerm::App(g, n)) => {
            count_homs_term(f, g) * count_homs_mono(m, n)
        }
        (RigidTerm::Inl(a), RigidTerm::Inl(b)) => count_homs_term(a, b),
        (RigidTerm::Inr(a), RigidTerm::Inr(b)) => count_homs_term(a, b),
        _ => BigUint::zero(),
    }
}

pub fn count_homs_mono(m: &RigidMonomial, n: &RigidMonomial) -> BigUint {
    if m.len() != n.len() {
        return BigUint::zero();
    }
    let k = m.len();
    if k == 0 {
        return BigUint::one();
    }
    let matrix: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| BigInt::from(count_homs_term(&m.items()[i], &n.items()[j])))
                .collect()
        })
        .collect();
    let p = permanent(&matrix);
    assert!(!p.is_negative(), "permanent of a nonnegative matrix");
    p.to_biguint().unwrap()
}

pub fn count_homs(r: &RigidExpr, r2: &RigidExpr) -> BigUint {
    match (r, r2) {
        (RigidExpr::Term(a), RigidExpr::Term(b)) => count_homs_term(a, b),
        (RigidExpr::Mono(a), RigidExpr::Mono(b)) => count_homs_mono(a, b),
        _ => BigUint::zero(),
    }
}

/// The order of the automorphism group of a rigid expression.
pub fn aut_card(r: &RigidExpr) -> BigUint {
    count_homs(r, r)
}

/// Ryser's inclusion-exclusion formula for the permanent.
fn permanent(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for mask in 1u64..(1 << n) {
        let bits = mask.count_ones() as usize;
        let mut prod = BigInt::one();
        for row in matrix {
            let mut sum = BigInt::zero();
            for (j, entry) in row.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    sum += entry;
                }
            }
            if sum.is_zero() {
                prod = BigInt::zero();
                break;
            }
            prod *= sum;
        }
        if (n - bits) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Quasi-stabilizer

/// The permutations that send each slot of a rigid monomial to a slot with
/// an isomorphic entry: the stabilizer of the readback tuple.
pub fn quasi_stabilizer(m: &RigidMonomial) -> Vec<Perm> {
    let readbacks: Vec<_> = m.iter().map(crate::rigid::readback_term).collect();
    Perm::all(m.len())
        .into_iter()
        .filter(|p| p.act(&readbacks) == readbacks)
        .collect()
}

// ---------------------------------------------------------------------------
// Restriction to a variable

/// Number of free occurrences of `x` in a permutation expression (equal to
/// the count in its source).
pub fn occurrences_term(e: &PermTerm, x: &str) -> usize {
    match e {
        PermTerm::Var(VarRef::Free(n)) => usize::from(n == x),
        PermTerm::Var(_) => 0,
        PermTerm::Lam(_, a) => occurrences_term(a, x),
        PermTerm::App(f, m) => occurrences_term(f, x) + occurrences_mono(m, x),
        PermTerm::Inl(a) | PermTerm::Inr(a) => occurrences_term(a, x),
    }
}

pub fn occurrences_mono(m: &PermMonomial, x: &str) -> usize {
    m.parts.iter().map(|p| occurrences_term(p, x)).sum()
}

/// The permutation a morphism induces on the occurrences of `x` in its
/// source, taken left to right: identities on variables, concatenation on
/// applications, multiplexing on monomials.
pub fn restriction_term(e: &PermTerm, x: &str) -> Perm {
    match e {
        PermTerm::Var(VarRef::Free(n)) if n == x => Perm::identity(1),
        PermTerm::Var(_) => Perm::identity(0),
        PermTerm::Lam(_, a) | PermTerm::Inl(a) | PermTerm::Inr(a) => restriction_term(a, x),
        PermTerm::App(f, m) => tensor(&restriction_term(f, x), &restriction_mono(m, x)),
    }
}

pub fn restriction_mono(m: &PermMonomial, x: &str) -> Perm {
    let taus: Vec<Perm> = m.parts.iter().map(|p| restriction_term(p, x)).collect();
    multiplex(&m.sigma, &taus)
}

pub fn restriction(e: &PermExpr, x: &str) -> Perm {
    match e {
        PermExpr::Term(t) => restriction_term(t, x),
        PermExpr::Mono(m) => restriction_mono(m, x),
    }
}

// ---------------------------------------------------------------------------
// Substitution of permutation terms

fn shift_perm_term(t: &PermTerm, by: usize, cutoff: usize) -> PermTerm {
    match t {
        PermTerm::Var(VarRef::Bound(i)) if *i >= cutoff => PermTerm::Var(VarRef::Bound(i + by)),
        PermTerm::Var(v) => PermTerm::Var(v.clone()),
        PermTerm::Lam(h, a) => PermTerm::Lam(h.clone(), Box::new(shift_perm_term(a, by, cutoff + 1))),
        PermTerm::App(f, m) => PermTerm::App(
            Box::new(shift_perm_term(f, by, cutoff)),
            PermMonomial {
                sigma: m.sigma.clone(),
                parts: m
                    .parts
                    .iter()
                    .map(|p| shift_perm_term(p, by, cutoff))
                    .collect(),
            },
        ),
        PermTerm::Inl(a) => PermTerm::Inl(Box::new(shift_perm_term(a, by, cutoff))),
        PermTerm::Inr(a) => PermTerm::Inr(Box::new(shift_perm_term(a, by, cutoff))),
    }
}

/// Substitutes one morphism per occurrence of `x` (in source order) into a
/// permutation expression. The source of the result is the rigid
/// substitution of the beta sources; the target permutes the beta targets by
/// the restriction of `eps` to `x` first.
pub fn perm_subst(
    eps: &PermExpr,
    x: &str,
    betas: &[PermTerm],
) -> Result<PermExpr, GroupoidError> {
    let occ = match eps {
        PermExpr::Term(t) => occurrences_term(t, x),
        PermExpr::Mono(m) => occurrences_mono(m, x),
    };
    if occ != betas.len() {
        return Err(GroupoidError::ArityMismatch {
            var: x.to_string(),
            occurrences: occ,
            provided: betas.len(),
        });
    }
    let mut queue: Vec<PermTerm> = betas.to_vec();
    queue.reverse();
    let out = match eps {
        PermExpr::Term(t) => PermExpr::Term(route_perm_term(t, x, &mut queue, 0)),
        PermExpr::Mono(m) => PermExpr::Mono(route_perm_mono(m, x, &mut queue, 0)),
    };
    debug_assert!(queue.is_empty());
    Ok(out)
}

pub fn perm_subst_term(
    eps: &PermTerm,
    x: &str,
    betas: &[PermTerm],
) -> Result<PermTerm, GroupoidError> {
    match perm_subst(&PermExpr::Term(eps.clone()), x, betas)? {
        PermExpr::Term(t) => Ok(t),
        PermExpr::Mono(_) => unreachable!(),
    }
}

fn route_perm_term(e: &PermTerm, x: &str, queue: &mut Vec<PermTerm>, depth: usize) -> PermTerm {
    match e {
        PermTerm::Var(VarRef::Free(n)) if n == x => {
            let next = queue.pop().expect("occurrence count was checked");
            shift_perm_term(&next, depth, 0)
        }
        PermTerm::Var(v) => PermTerm::Var(v.clone()),
        PermTerm::Lam(h, a) => {
            PermTerm::Lam(h.clone(), Box::new(route_perm_term(a, x, queue, depth + 1)))
        }
        PermTerm::App(f, m) => {
            let f2 = route_perm_term(f, x, queue, depth);
            let m2 = route_perm_mono(m, x, queue, depth);
            PermTerm::App(Box::new(f2), m2)
        }
        PermTerm::Inl(a) => PermTerm::Inl(Box::new(route_perm_term(a, x, queue, depth))),
        PermTerm::Inr(a) => PermTerm::Inr(Box::new(route_perm_term(a, x, queue, depth))),
    }
}

fn route_perm_mono(m: &PermMonomial, x: &str, queue: &mut Vec<PermTerm>, depth: usize) -> PermMonomial {
    PermMonomial {
        sigma: m.sigma.clone(),
        parts: m
            .parts
            .iter()
            .map(|p| route_perm_term(p, x, queue, depth))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// The substitution stabilizer

/// The permutations of the argument list whose routing leaves the rigid
/// substitution unchanged up to isomorphism, decided by direct readback
/// comparison over the whole symmetric group.
pub fn sub_stabilizer(r: &RigidExpr, x: &str, b: &RigidMonomial) -> Vec<Perm> {
    assert_eq!(
        r.occurrences(x),
        b.len(),
        "the argument list must match the occurrence count"
    );
    let base = rigid_subst(r, x, b).expect("arity was checked");
    let base_rb = readback(&base);
    Perm::all(b.len())
        .into_iter()
        .filter(|sigma| {
            let permuted = RigidMonomial(sigma.act(b.items()));
            let image = rigid_subst(r, x, &permuted).expect("arity preserved");
            readback(&image) == base_rb
        })
        .collect()
}

/// The subgroup of automorphisms of `r` whose restriction to `x` lies in the
/// quasi-stabilizer of `b`.
pub fn pre_quasi_stabilizer(r: &RigidExpr, x: &str, b: &RigidMonomial) -> Vec<PermExpr> {
    let st: Vec<Perm> = quasi_stabilizer(b);
    hom_set(r, r)
        .into_iter()
        .filter(|eps| st.contains(&restriction(eps, x)))
        .collect()
}

impl fmt::Display for PermTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_perm_term(self))
    }
}

impl fmt::Display for PermMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_perm_mono(self))
    }
}

impl fmt::Display for PermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermExpr::Term(t) => t.fmt(f),
            PermExpr::Mono(m) => m.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resource::{multiplicity, rapp, rvar};
    use crate::rigid::{canonical_rigid, gapp, glam, glist, gvar, readback};

    fn swap2() -> Perm {
        Perm::transposition(2, 0, 1)
    }

    #[test]
    fn endpoints_of_examples() {
        let idx = PermTerm::Var(VarRef::free("x"));
        assert_eq!(src_term(&idx), gvar("x"));
        assert_eq!(tgt_term(&idx), gvar("x"));

        // (swap, id_x, id_x) : (x,x) -> (x,x)
        let m = PermMonomial {
            sigma: swap2(),
            parts: vec![idx.clone(), idx.clone()],
        };
        assert_eq!(src_mono(&m), glist(vec![gvar("x"), gvar("x")]));
        assert_eq!(tgt_mono(&m), glist(vec![gvar("x"), gvar("x")]));

        // <id_y>(swap, id_x, id_z) : <y>(x,z) -> <y>(z,x)
        let e = PermTerm::App(
            Box::new(PermTerm::Var(VarRef::free("y"))),
            PermMonomial {
                sigma: swap2(),
                parts: vec![idx, PermTerm::Var(VarRef::free("z"))],
            },
        );
        assert_eq!(src_term(&e), gapp(gvar("y"), vec![gvar("x"), gvar("z")]));
        assert_eq!(tgt_term(&e), gapp(gvar("y"), vec![gvar("z"), gvar("x")]));
    }

    #[test]
    fn groupoid_laws_on_a_sample() {
        let r = RigidExpr::Mono(glist(vec![gvar("x"), gvar("x")]));
        let tau = PermExpr::Mono(PermMonomial {
            sigma: swap2(),
            parts: vec![
                PermTerm::Var(VarRef::free("x")),
                PermTerm::Var(VarRef::free("x")),
            ],
        });
        let id = identity(&r);
        assert_eq!(compose(&id, &tau).unwrap(), tau);
        assert_eq!(compose(&tau, &id).unwrap(), tau);
        assert_eq!(compose(&inverse(&tau), &tau).unwrap(), id);
        assert_eq!(compose(&tau, &tau).unwrap(), id);
    }

    #[test]
    fn compose_rejects_mismatched_endpoints() {
        let idx = PermExpr::Term(PermTerm::Var(VarRef::free("x")));
        let idy = PermExpr::Term(PermTerm::Var(VarRef::free("y")));
        assert!(compose(&idx, &idy).is_err());
    }

    #[test]
    fn hom_sets_and_counts() {
        let x = gvar("x");
        assert_eq!(hom_terms(&x, &x).len(), 1);
        assert!(hom_terms(&x, &glam("y", gvar("y"))).is_empty());

        let xx = glist(vec![gvar("x"), gvar("x")]);
        assert_eq!(hom_monos(&xx, &xx).len(), 2);
        assert_eq!(count_homs_mono(&xx, &xx), BigUint::from(2u8));

        // hom-sets are empty exactly when readbacks differ
        let pairs = [
            (glist(vec![gvar("x"), gvar("y")]), glist(vec![gvar("y"), gvar("x")])),
            (glist(vec![gvar("x")]), glist(vec![gvar("y")])),
        ];
        for (a, b) in pairs {
            let nonempty = !hom_monos(&a, &b).is_empty();
            let same = readback(&RigidExpr::Mono(a.clone())) == readback(&RigidExpr::Mono(b.clone()));
            assert_eq!(nonempty, same);
        }
    }

    #[test]
    fn aut_matches_multiplicity_examples() {
        assert_eq!(aut_card(&RigidExpr::Term(gvar("x"))), BigUint::from(1u8));
        assert_eq!(
            aut_card(&RigidExpr::Mono(glist(vec![gvar("x"), gvar("x")]))),
            BigUint::from(2u8)
        );
        // <y>(\x.<x>(z,z), \x.<x>(z,z)) has 8 automorphisms
        let elem = glam("x", gapp(gvar("x"), vec![gvar("z"), gvar("z")]));
        let r = gapp(gvar("y"), vec![elem.clone(), elem]);
        assert_eq!(aut_card(&RigidExpr::Term(r.clone())), BigUint::from(8u8));
        // and the count agrees with the enumeration
        assert_eq!(
            hom_terms(&r, &r).len(),
            8,
            "materialized hom-set size must agree"
        );
        // against the multiplicity of the readback
        let e = rapp(rvar("y"), vec![
            crate::resource::rlam("x", rapp(rvar("x"), vec![rvar("z"), rvar("z")])),
            crate::resource::rlam("x", rapp(rvar("x"), vec![rvar("z"), rvar("z")])),
        ]);
        assert_eq!(
            aut_card(&canonical_rigid(&e.clone().into())),
            multiplicity(&e.into())
        );
    }

    #[test]
    fn quasi_stabilizer_examples() {
        assert_eq!(quasi_stabilizer(&glist(vec![gvar("x"), gvar("x")])).len(), 2);
        assert_eq!(quasi_stabilizer(&glist(vec![gvar("x"), gvar("y")])).len(), 1);
        let st = quasi_stabilizer(&glist(vec![gvar("x"), gvar("y"), gvar("x")]));
        assert_eq!(st.len(), 2);
        assert!(st.contains(&Perm::identity(3)));
        assert!(st.contains(&Perm::transposition(3, 0, 2)));
    }

    #[test]
    fn restriction_examples() {
        let idx = PermTerm::Var(VarRef::free("x"));
        assert_eq!(restriction_term(&idx, "x"), Perm::identity(1));

        // \y. id_x passes through
        let e = PermTerm::Lam(Hint::new("y"), Box::new(idx.clone()));
        assert_eq!(restriction_term(&e, "x"), Perm::identity(1));

        // <id_y>(swap, id_x, id_x) restricts to the swap
        let e = PermTerm::App(
            Box::new(PermTerm::Var(VarRef::free("y"))),
            PermMonomial {
                sigma: swap2(),
                parts: vec![idx.clone(), idx],
            },
        );
        assert_eq!(restriction_term(&e, "x"), swap2());
    }

    #[test]
    fn perm_subst_examples() {
        // (id_x)[(beta)/x] = beta
        let beta = identity_term(&gapp(gvar("z"), vec![]));
        let got = perm_subst_term(&PermTerm::Var(VarRef::free("x")), "x", &[beta.clone()]).unwrap();
        assert_eq!(got, beta);

        // identity substitution produces the identity of the substituted term
        let r = gapp(gvar("x"), vec![gvar("x")]);
        let b = glist(vec![gvar("y"), gvar("z")]);
        let betas: Vec<PermTerm> = b.iter().map(identity_term).collect();
        let got = perm_subst_term(&identity_term(&r), "x", &betas).unwrap();
        let expected = identity_term(
            &crate::rigid::rigid_subst_term(&r, "x", &b).unwrap(),
        );
        assert_eq!(got, expected);

        // the twisted example: the target picks up the restriction
        let alpha = PermMonomial {
            sigma: swap2(),
            parts: vec![
                PermTerm::Var(VarRef::free("x")),
                PermTerm::Var(VarRef::free("x")),
            ],
        };
        let b0 = gapp(gvar("z"), vec![]);
        let b1 = gapp(gvar("z"), vec![gvar("z")]);
        let betas = vec![identity_term(&b0), identity_term(&b1)];
        let got = perm_subst(&PermExpr::Mono(alpha), "x", &betas).unwrap();
        let src_got = src(&got);
        let tgt_got = tgt(&got);
        assert_eq!(src_got, RigidExpr::Mono(glist(vec![b0.clone(), b1.clone()])));
        assert_eq!(tgt_got, RigidExpr::Mono(glist(vec![b1, b0])));
    }

    #[test]
    fn perm_subst_arity_is_checked() {
        let e = PermExpr::Term(PermTerm::Var(VarRef::free("x")));
        assert!(perm_subst(&e, "x", &[]).is_err());
    }

    #[test]
    fn sub_stabilizer_examples() {
        let r = RigidExpr::Term(gapp(gvar("x"), vec![gvar("x")]));
        let st = sub_stabilizer(&r, "x", &glist(vec![gvar("y"), gvar("y")]));
        assert_eq!(st.len(), 2);
        let st = sub_stabilizer(&r, "x", &glist(vec![gvar("y"), gvar("z")]));
        assert_eq!(st, vec![Perm::identity(2)]);
    }

    #[test]
    fn permanent_matches_brute_force() {
        let m = vec![
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(3), BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(2)],
        ];
        // brute force over all 6 permutations
        let mut expected = BigInt::zero();
        for p in Perm::all(3) {
            let mut prod = BigInt::one();
            for i in 0..3 {
                prod *= &m[i][p.apply(i)];
            }
            expected += prod;
        }
        assert_eq!(permanent(&m), expected);
    }
}
