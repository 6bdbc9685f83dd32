//! Rigid resource expressions: resource terms whose argument multisets are
//! replaced by ordered lists. Forgetting the order reads a rigid expression
//! back to the resource expression it represents; substitution becomes
//! positional routing, with an absorbing zero for arity mismatches.

use crate::names::{Hint, VarRef};
use crate::resource::{ResExpr, ResMonomial, ResTerm};
use std::fmt;

/// A rigid resource term. Application carries an ordered list of arguments.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RigidTerm {
    Var(VarRef),
    Lam(Hint, Box<RigidTerm>),
    App(Box<RigidTerm>, RigidMonomial),
    Inl(Box<RigidTerm>),
    Inr(Box<RigidTerm>),
}

/// An ordered list of rigid terms. Never reordered.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RigidMonomial(pub Vec<RigidTerm>);

impl RigidMonomial {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn items(&self) -> &[RigidTerm] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, RigidTerm> {
        self.0.iter()
    }

    pub fn concat(&self, other: &RigidMonomial) -> RigidMonomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        RigidMonomial(v)
    }
}

/// A rigid expression: term or list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RigidExpr {
    Term(RigidTerm),
    Mono(RigidMonomial),
}

impl From<RigidTerm> for RigidExpr {
    fn from(t: RigidTerm) -> Self {
        RigidExpr::Term(t)
    }
}

impl From<RigidMonomial> for RigidExpr {
    fn from(m: RigidMonomial) -> Self {
        RigidExpr::Mono(m)
    }
}

// Construction helpers.

pub fn gvar(name: impl Into<String>) -> RigidTerm {
    RigidTerm::Var(VarRef::free(name))
}

pub fn glam(name: impl Into<String>, body: RigidTerm) -> RigidTerm {
    let name = name.into();
    let closed = close_rigid(body, &name, 0);
    RigidTerm::Lam(Hint::new(name), Box::new(closed))
}

pub fn gapp(f: RigidTerm, args: Vec<RigidTerm>) -> RigidTerm {
    RigidTerm::App(Box::new(f), RigidMonomial(args))
}

pub fn ginl(t: RigidTerm) -> RigidTerm {
    RigidTerm::Inl(Box::new(t))
}

pub fn ginr(t: RigidTerm) -> RigidTerm {
    RigidTerm::Inr(Box::new(t))
}

pub fn glist(items: Vec<RigidTerm>) -> RigidMonomial {
    RigidMonomial(items)
}

fn close_rigid(t: RigidTerm, name: &str, depth: usize) -> RigidTerm {
    match t {
        RigidTerm::Var(VarRef::Free(n)) if n == name => RigidTerm::Var(VarRef::Bound(depth)),
        RigidTerm::Var(v) => RigidTerm::Var(v),
        RigidTerm::Lam(h, b) => RigidTerm::Lam(h, Box::new(close_rigid(*b, name, depth + 1))),
        RigidTerm::App(f, args) => RigidTerm::App(
            Box::new(close_rigid(*f, name, depth)),
            RigidMonomial(
                args.0
                    .into_iter()
                    .map(|a| close_rigid(a, name, depth))
                    .collect(),
            ),
        ),
        RigidTerm::Inl(s) => RigidTerm::Inl(Box::new(close_rigid(*s, name, depth))),
        RigidTerm::Inr(s) => RigidTerm::Inr(Box::new(close_rigid(*s, name, depth))),
    }
}

fn shift_rigid(t: &RigidTerm, by: usize, cutoff: usize) -> RigidTerm {
    match t {
        RigidTerm::Var(VarRef::Bound(i)) if *i >= cutoff => RigidTerm::Var(VarRef::Bound(i + by)),
        RigidTerm::Var(v) => RigidTerm::Var(v.clone()),
        RigidTerm::Lam(h, b) => RigidTerm::Lam(h.clone(), Box::new(shift_rigid(b, by, cutoff + 1))),
        RigidTerm::App(f, args) => RigidTerm::App(
            Box::new(shift_rigid(f, by, cutoff)),
            RigidMonomial(args.iter().map(|a| shift_rigid(a, by, cutoff)).collect()),
        ),
        RigidTerm::Inl(s) => RigidTerm::Inl(Box::new(shift_rigid(s, by, cutoff))),
        RigidTerm::Inr(s) => RigidTerm::Inr(Box::new(shift_rigid(s, by, cutoff))),
    }
}

impl RigidTerm {
    pub fn occurrences(&self, x: &str) -> usize {
        match self {
            RigidTerm::Var(VarRef::Free(n)) => usize::from(n == x),
            RigidTerm::Var(_) => 0,
            RigidTerm::Lam(_, b) => b.occurrences(x),
            RigidTerm::App(f, args) => f.occurrences(x) + args.occurrences(x),
            RigidTerm::Inl(s) | RigidTerm::Inr(s) => s.occurrences(x),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            RigidTerm::Var(_) => 1,
            RigidTerm::Lam(_, b) => 1 + b.size(),
            RigidTerm::App(f, args) => 1 + f.size() + args.size(),
            RigidTerm::Inl(s) | RigidTerm::Inr(s) => 1 + s.size(),
        }
    }
}

impl RigidMonomial {
    pub fn occurrences(&self, x: &str) -> usize {
        self.0.iter().map(|t| t.occurrences(x)).sum()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(RigidTerm::size).sum()
    }
}

impl RigidExpr {
    pub fn occurrences(&self, x: &str) -> usize {
        match self {
            RigidExpr::Term(t) => t.occurrences(x),
            RigidExpr::Mono(m) => m.occurrences(x),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            RigidExpr::Term(t) => t.size(),
            RigidExpr::Mono(m) => m.size(),
        }
    }
}

// ---------------------------------------------------------------------------
// Readback and enumeration of representatives

/// Forgets the order of every argument list.
pub fn readback_term(r: &RigidTerm) -> ResTerm {
    match r {
        RigidTerm::Var(v) => ResTerm::Var(v.clone()),
        RigidTerm::Lam(h, b) => ResTerm::Lam(h.clone(), Box::new(readback_term(b))),
        RigidTerm::App(f, args) => ResTerm::App(Box::new(readback_term(f)), readback_mono(args)),
        RigidTerm::Inl(s) => ResTerm::Inl(Box::new(readback_term(s))),
        RigidTerm::Inr(s) => ResTerm::Inr(Box::new(readback_term(s))),
    }
}

pub fn readback_mono(r: &RigidMonomial) -> ResMonomial {
    ResMonomial::new(r.iter().map(readback_term).collect())
}

pub fn readback(r: &RigidExpr) -> ResExpr {
    match r {
        RigidExpr::Term(t) => ResExpr::Term(readback_term(t)),
        RigidExpr::Mono(m) => ResExpr::Mono(readback_mono(m)),
    }
}

/// The canonical representative: every list is the sorted enumeration of the
/// corresponding multiset.
pub fn canonical_rigid_term(e: &ResTerm) -> RigidTerm {
    match e {
        ResTerm::Var(v) => RigidTerm::Var(v.clone()),
        ResTerm::Lam(h, b) => RigidTerm::Lam(h.clone(), Box::new(canonical_rigid_term(b))),
        ResTerm::App(f, args) => RigidTerm::App(
            Box::new(canonical_rigid_term(f)),
            canonical_rigid_mono(args),
        ),
        ResTerm::Inl(s) => RigidTerm::Inl(Box::new(canonical_rigid_term(s))),
        ResTerm::Inr(s) => RigidTerm::Inr(Box::new(canonical_rigid_term(s))),
    }
}

pub fn canonical_rigid_mono(e: &ResMonomial) -> RigidMonomial {
    RigidMonomial(e.iter().map(canonical_rigid_term).collect())
}

pub fn canonical_rigid(e: &ResExpr) -> RigidExpr {
    match e {
        ResExpr::Term(t) => RigidExpr::Term(canonical_rigid_term(t)),
        ResExpr::Mono(m) => RigidExpr::Mono(canonical_rigid_mono(m)),
    }
}

/// All rigid representatives of a resource term (finitely many, structurally
/// distinct lists count once).
pub fn enumerate_rigid_terms(e: &ResTerm) -> Vec<RigidTerm> {
    match e {
        ResTerm::Var(v) => vec![RigidTerm::Var(v.clone())],
        ResTerm::Lam(h, b) => enumerate_rigid_terms(b)
            .into_iter()
            .map(|r| RigidTerm::Lam(h.clone(), Box::new(r)))
            .collect(),
        ResTerm::App(f, args) => {
            let fs = enumerate_rigid_terms(f);
            let arg_lists = enumerate_rigid_monos(args);
            let mut out = Vec::new();
            for fr in &fs {
                for al in &arg_lists {
                    out.push(RigidTerm::App(Box::new(fr.clone()), al.clone()));
                }
            }
            out
        }
        ResTerm::Inl(s) => enumerate_rigid_terms(s)
            .into_iter()
            .map(|r| RigidTerm::Inl(Box::new(r)))
            .collect(),
        ResTerm::Inr(s) => enumerate_rigid_terms(s)
            .into_iter()
            .map(|r| RigidTerm::Inr(Box::new(r)))
            .collect(),
    }
}

/// All rigid representatives of a multiset: distinct element orderings times
/// representatives of each element.
pub fn enumerate_rigid_monos(e: &ResMonomial) -> Vec<RigidMonomial> {
    let arrangements = distinct_permutations(e.items());
    let mut out = Vec::new();
    for arr in arrangements {
        let choices: Vec<Vec<RigidTerm>> = arr.iter().map(|t| enumerate_rigid_terms(t)).collect();
        let mut lists: Vec<Vec<RigidTerm>> = vec![Vec::new()];
        for c in &choices {
            let mut next = Vec::new();
            for prefix in &lists {
                for item in c {
                    let mut v = prefix.clone();
                    v.push(item.clone());
                    next.push(v);
                }
            }
            lists = next;
        }
        out.extend(lists.into_iter().map(RigidMonomial));
    }
    out
}

pub fn enumerate_rigids(e: &ResExpr) -> Vec<RigidExpr> {
    match e {
        ResExpr::Term(t) => enumerate_rigid_terms(t)
            .into_iter()
            .map(RigidExpr::Term)
            .collect(),
        ResExpr::Mono(m) => enumerate_rigid_monos(m)
            .into_iter()
            .map(RigidExpr::Mono)
            .collect(),
    }
}

/// Distinct orderings of a sorted slice (standard next-permutation walk).
fn distinct_permutations<T: Clone + Ord>(sorted: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut cur: Vec<T> = sorted.to_vec();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

// ---------------------------------------------------------------------------
// Rigid substitution with absorbing zero

/// Routes the `i`-th listed element of `b` to the `i`-th free occurrence of
/// `x` (pre-order, application function before arguments, list elements in
/// index order). `None` is the absorbing zero: arity mismatches and zero
/// inputs yield zero.
pub fn rigid_subst_term(
    r: &RigidTerm,
    x: &str,
    b: &RigidMonomial,
) -> Option<RigidTerm> {
    if r.occurrences(x) != b.len() {
        return None;
    }
    let mut queue = b.items().to_vec();
    queue.reverse(); // pop from the back = take in order
    let out = route_term(r, x, &mut queue, 0);
    debug_assert!(queue.is_empty());
    Some(out)
}

pub fn rigid_subst_mono(
    r: &RigidMonomial,
    x: &str,
    b: &RigidMonomial,
) -> Option<RigidMonomial> {
    if r.occurrences(x) != b.len() {
        return None;
    }
    let mut queue = b.items().to_vec();
    queue.reverse();
    let out = route_mono(r, x, &mut queue, 0);
    debug_assert!(queue.is_empty());
    Some(out)
}

pub fn rigid_subst(r: &RigidExpr, x: &str, b: &RigidMonomial) -> Option<RigidExpr> {
    match r {
        RigidExpr::Term(t) => rigid_subst_term(t, x, b).map(RigidExpr::Term),
        RigidExpr::Mono(m) => rigid_subst_mono(m, x, b).map(RigidExpr::Mono),
    }
}

fn route_term(r: &RigidTerm, x: &str, queue: &mut Vec<RigidTerm>, depth: usize) -> RigidTerm {
    match r {
        RigidTerm::Var(VarRef::Free(n)) if n == x => {
            let next = queue.pop().expect("occurrence count was checked");
            shift_rigid(&next, depth, 0)
        }
        RigidTerm::Var(v) => RigidTerm::Var(v.clone()),
        RigidTerm::Lam(h, body) => {
            RigidTerm::Lam(h.clone(), Box::new(route_term(body, x, queue, depth + 1)))
        }
        RigidTerm::App(f, args) => {
            let f2 = route_term(f, x, queue, depth);
            let args2 = route_mono(args, x, queue, depth);
            RigidTerm::App(Box::new(f2), args2)
        }
        RigidTerm::Inl(s) => RigidTerm::Inl(Box::new(route_term(s, x, queue, depth))),
        RigidTerm::Inr(s) => RigidTerm::Inr(Box::new(route_term(s, x, queue, depth))),
    }
}

fn route_mono(r: &RigidMonomial, x: &str, queue: &mut Vec<RigidTerm>, depth: usize) -> RigidMonomial {
    RigidMonomial(r.iter().map(|t| route_term(t, x, queue, depth)).collect())
}

// ---------------------------------------------------------------------------
// Rigid hereditary head reduction

const BETA_NAME: &str = "#beta";

fn open_rigid(body: &RigidTerm, name: &str, depth: usize) -> RigidTerm {
    match body {
        RigidTerm::Var(VarRef::Bound(i)) => {
            if *i == depth {
                RigidTerm::Var(VarRef::free(name))
            } else if *i > depth {
                RigidTerm::Var(VarRef::Bound(i - 1))
            } else {
                RigidTerm::Var(VarRef::Bound(*i))
            }
        }
        RigidTerm::Var(v) => RigidTerm::Var(v.clone()),
        RigidTerm::Lam(h, b) => RigidTerm::Lam(h.clone(), Box::new(open_rigid(b, name, depth + 1))),
        RigidTerm::App(f, args) => RigidTerm::App(
            Box::new(open_rigid(f, name, depth)),
            RigidMonomial(args.iter().map(|a| open_rigid(a, name, depth)).collect()),
        ),
        RigidTerm::Inl(s) => RigidTerm::Inl(Box::new(open_rigid(s, name, depth))),
        RigidTerm::Inr(s) => RigidTerm::Inr(Box::new(open_rigid(s, name, depth))),
    }
}

/// Rigid beta: positional substitution of the argument list for the binder.
pub fn rigid_beta(binder_body: &RigidTerm, args: &RigidMonomial) -> Option<RigidTerm> {
    let opened = open_rigid(binder_body, BETA_NAME, 0);
    rigid_subst_term(&opened, BETA_NAME, args)
}

fn strip_lams(mut t: &RigidTerm) -> (Vec<Hint>, &RigidTerm) {
    let mut hints = Vec::new();
    while let RigidTerm::Lam(h, b) = t {
        hints.push(h.clone());
        t = b;
    }
    (hints, t)
}

fn wrap_lams(hints: &[Hint], body: RigidTerm) -> RigidTerm {
    hints
        .iter()
        .rev()
        .fold(body, |acc, h| RigidTerm::Lam(h.clone(), Box::new(acc)))
}

fn strip_apps(mut t: &RigidTerm) -> (&RigidTerm, Vec<&RigidMonomial>) {
    let mut args = Vec::new();
    while let RigidTerm::App(f, a) = t {
        args.push(a);
        t = f;
    }
    args.reverse();
    (t, args)
}

fn wrap_apps(head: RigidTerm, args: &[&RigidMonomial]) -> RigidTerm {
    args.iter()
        .fold(head, |acc, a| RigidTerm::App(Box::new(acc), (*a).clone()))
}

/// One rigid hereditary head step; `None` is the absorbing zero.
pub fn rigid_step_l_term(r: &RigidTerm) -> Option<RigidTerm> {
    match r {
        RigidTerm::Inl(t) => Some(RigidTerm::Inl(Box::new(rigid_step_l_term(t)?))),
        RigidTerm::Inr(t) => Some(RigidTerm::Inr(Box::new(rigid_step_l_term(t)?))),
        _ => {
            let (hints, body) = strip_lams(r);
            match body {
                RigidTerm::Inl(inner) => {
                    debug_assert!(!hints.is_empty());
                    let n = hints.len();
                    let inner = RigidTerm::Lam(hints[n - 1].clone(), inner.clone());
                    Some(wrap_lams(&hints[..n - 1], RigidTerm::Inl(Box::new(inner))))
                }
                RigidTerm::Inr(inner) => {
                    debug_assert!(!hints.is_empty());
                    let n = hints.len();
                    let inner = RigidTerm::Lam(hints[n - 1].clone(), inner.clone());
                    Some(wrap_lams(&hints[..n - 1], RigidTerm::Inr(Box::new(inner))))
                }
                _ => {
                    let (head, args) = strip_apps(body);
                    match head {
                        RigidTerm::Var(_) => {
                            let mut reduced = Vec::with_capacity(args.len());
                            for a in &args {
                                reduced.push(rigid_step_l_mono(a)?);
                            }
                            let mut acc = head.clone();
                            for a in reduced {
                                acc = RigidTerm::App(Box::new(acc), a);
                            }
                            Some(wrap_lams(&hints, acc))
                        }
                        RigidTerm::Lam(_, b) => {
                            debug_assert!(!args.is_empty());
                            let fired = rigid_beta(b, args[0])?;
                            Some(wrap_lams(&hints, wrap_apps(fired, &args[1..])))
                        }
                        RigidTerm::Inl(inner) => {
                            debug_assert!(!args.is_empty());
                            let head = RigidTerm::Inl(Box::new(RigidTerm::App(
                                inner.clone(),
                                args[0].clone(),
                            )));
                            Some(wrap_lams(&hints, wrap_apps(head, &args[1..])))
                        }
                        RigidTerm::Inr(inner) => {
                            debug_assert!(!args.is_empty());
                            let head = RigidTerm::Inr(Box::new(RigidTerm::App(
                                inner.clone(),
                                args[0].clone(),
                            )));
                            Some(wrap_lams(&hints, wrap_apps(head, &args[1..])))
                        }
                        RigidTerm::App(..) => unreachable!("strip_apps leaves a non-application"),
                    }
                }
            }
        }
    }
}

pub fn rigid_step_l_mono(r: &RigidMonomial) -> Option<RigidMonomial> {
    let mut out = Vec::with_capacity(r.len());
    for t in r.iter() {
        out.push(rigid_step_l_term(t)?);
    }
    Some(RigidMonomial(out))
}

/// One step on a partial rigid expression; zero is absorbing.
pub fn rigid_step_l(r: &Option<RigidExpr>) -> Option<RigidExpr> {
    match r.as_ref()? {
        RigidExpr::Term(t) => rigid_step_l_term(t).map(RigidExpr::Term),
        RigidExpr::Mono(m) => rigid_step_l_mono(m).map(RigidExpr::Mono),
    }
}

pub fn is_normal_rigid_term(t: &RigidTerm) -> bool {
    match t {
        RigidTerm::Var(_) => true,
        RigidTerm::Lam(_, b) => {
            !matches!(**b, RigidTerm::Inl(_) | RigidTerm::Inr(_)) && is_normal_rigid_term(b)
        }
        RigidTerm::App(f, args) => {
            !matches!(
                **f,
                RigidTerm::Lam(..) | RigidTerm::Inl(_) | RigidTerm::Inr(_)
            ) && is_normal_rigid_term(f)
                && args.iter().all(is_normal_rigid_term)
        }
        RigidTerm::Inl(s) | RigidTerm::Inr(s) => is_normal_rigid_term(s),
    }
}

pub fn is_normal_rigid(e: &RigidExpr) -> bool {
    match e {
        RigidExpr::Term(t) => is_normal_rigid_term(t),
        RigidExpr::Mono(m) => m.iter().all(is_normal_rigid_term),
    }
}

/// Iterates the rigid strategy to its fixpoint (a normal form or zero).
pub fn rigid_nf(r: &Option<RigidExpr>) -> Option<RigidExpr> {
    let mut cur = r.clone();
    loop {
        match &cur {
            None => return None,
            Some(e) if is_normal_rigid(e) => return cur,
            _ => cur = rigid_step_l(&cur),
        }
    }
}

// ---------------------------------------------------------------------------
// Rigid coherence

/// Coherence on rigid terms: the same relation as on resource expressions,
/// read through representatives.
pub fn rigid_coherent_terms(a: &RigidTerm, b: &RigidTerm) -> bool {
    match (a, b) {
        (RigidTerm::Var(v), RigidTerm::Var(w)) => v == w,
        (RigidTerm::Lam(_, s), RigidTerm::Lam(_, t)) => rigid_coherent_terms(s, t),
        (RigidTerm::App(f, us), RigidTerm::App(g, vs)) => {
            rigid_coherent_terms(f, g) && rigid_coherent_monos(us, vs)
        }
        (RigidTerm::Inl(s), RigidTerm::Inl(t)) => rigid_coherent_terms(s, t),
        (RigidTerm::Inr(s), RigidTerm::Inr(t)) => rigid_coherent_terms(s, t),
        (RigidTerm::Inl(_), RigidTerm::Inr(_)) | (RigidTerm::Inr(_), RigidTerm::Inl(_)) => true,
        _ => false,
    }
}

pub fn rigid_coherent_monos(a: &RigidMonomial, b: &RigidMonomial) -> bool {
    let all: Vec<&RigidTerm> = a.iter().chain(b.iter()).collect();
    for (i, s) in all.iter().enumerate() {
        for t in &all[i..] {
            if !rigid_coherent_terms(s, t) {
                return false;
            }
        }
    }
    true
}

pub fn rigid_coherent(a: &RigidExpr, b: &RigidExpr) -> bool {
    match (a, b) {
        (RigidExpr::Term(s), RigidExpr::Term(t)) => rigid_coherent_terms(s, t),
        (RigidExpr::Mono(s), RigidExpr::Mono(t)) => rigid_coherent_monos(s, t),
        _ => false,
    }
}

impl fmt::Display for RigidTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_rigid_term(self))
    }
}

impl fmt::Display for RigidMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_rigid_mono(self))
    }
}

impl fmt::Display for RigidExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigidExpr::Term(t) => t.fmt(f),
            RigidExpr::Mono(m) => m.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resource::{inl as rinl, mono, rapp, rlam, rvar};

    #[test]
    fn readback_sorts_lists() {
        let r = glist(vec![gvar("y"), gvar("x")]);
        assert_eq!(readback_mono(&r), mono(vec![rvar("x"), rvar("y")]));

        let r = gapp(gvar("z"), vec![gvar("y"), gvar("x")]);
        assert_eq!(
            readback_term(&r),
            rapp(rvar("z"), vec![rvar("x"), rvar("y")])
        );

        assert_eq!(readback_term(&ginl(gvar("x"))), rinl(rvar("x")));
    }

    #[test]
    fn enumeration_covers_all_orderings() {
        // [x,x] has a single representative
        let e = mono(vec![rvar("x"), rvar("x")]);
        assert_eq!(
            enumerate_rigid_monos(&e),
            vec![glist(vec![gvar("x"), gvar("x")])]
        );

        // [x,y] has both orderings
        let e = mono(vec![rvar("x"), rvar("y")]);
        let reps = enumerate_rigid_monos(&e);
        assert_eq!(reps.len(), 2);
        assert!(reps.contains(&glist(vec![gvar("x"), gvar("y")])));
        assert!(reps.contains(&glist(vec![gvar("y"), gvar("x")])));

        // <z>[x,y] multiplies over argument positions
        let e = rapp(rvar("z"), vec![rvar("x"), rvar("y")]);
        let reps = enumerate_rigid_terms(&e);
        assert_eq!(reps.len(), 2);
        assert!(reps.contains(&gapp(gvar("z"), vec![gvar("x"), gvar("y")])));
        assert!(reps.contains(&gapp(gvar("z"), vec![gvar("y"), gvar("x")])));
    }

    #[test]
    fn all_representatives_read_back() {
        let exprs: Vec<ResExpr> = vec![
            rapp(rvar("z"), vec![rvar("x"), rvar("y"), rvar("x")]).into(),
            mono(vec![rinl(rvar("x")), rvar("y")]).into(),
            rlam("w", rapp(rvar("w"), vec![rvar("x"), rvar("x")])).into(),
        ];
        for e in &exprs {
            let reps = enumerate_rigids(e);
            assert!(!reps.is_empty());
            assert!(reps.contains(&canonical_rigid(e)));
            for r in &reps {
                assert_eq!(&readback(r), e);
            }
        }
    }

    #[test]
    fn subst_routes_left_to_right() {
        // <x>(x) with (y,z): function occurrence first
        let r = gapp(gvar("x"), vec![gvar("x")]);
        let b = glist(vec![gvar("y"), gvar("z")]);
        assert_eq!(
            rigid_subst_term(&r, "x", &b),
            Some(gapp(gvar("y"), vec![gvar("z")]))
        );

        // y[()/x] = y
        assert_eq!(
            rigid_subst_term(&gvar("y"), "x", &glist(vec![])),
            Some(gvar("y"))
        );

        // arity mismatch is zero
        assert_eq!(
            rigid_subst_term(&gvar("x"), "x", &glist(vec![gvar("u"), gvar("v")])),
            None
        );
    }

    #[test]
    fn subst_is_not_injective_without_coherence() {
        let a = gapp(
            gapp(gvar("y"), vec![gvar("x")]),
            vec![gapp(gvar("z"), vec![gvar("x")])],
        );
        let a2 = gapp(
            gapp(gvar("x"), vec![gvar("y")]),
            vec![gapp(gvar("z"), vec![gvar("x")])],
        );
        let b = glist(vec![gvar("y"), gvar("z")]);
        let r1 = rigid_subst_term(&a, "x", &b).unwrap();
        let r2 = rigid_subst_term(&a2, "x", &b).unwrap();
        assert_eq!(r1, r2);
        let expected = gapp(
            gapp(gvar("y"), vec![gvar("y")]),
            vec![gapp(gvar("z"), vec![gvar("z")])],
        );
        assert_eq!(r1, expected);
        assert_ne!(readback_term(&a), readback_term(&a2));
    }

    #[test]
    fn rigid_step_examples() {
        // <\x.<x>(x)>(inl y, inr z) -> <inl y>(inr z)
        let r = gapp(
            glam("x", gapp(gvar("x"), vec![gvar("x")])),
            vec![ginl(gvar("y")), ginr(gvar("z"))],
        );
        let step1 = rigid_step_l_term(&r).unwrap();
        assert_eq!(step1, gapp(ginl(gvar("y")), vec![ginr(gvar("z"))]));

        // swapped arguments produce a different reduct
        let r2 = gapp(
            glam("x", gapp(gvar("x"), vec![gvar("x")])),
            vec![ginr(gvar("z")), ginl(gvar("y"))],
        );
        let step2 = rigid_step_l_term(&r2).unwrap();
        assert_eq!(step2, gapp(ginr(gvar("z")), vec![ginl(gvar("y"))]));
        assert_ne!(readback_term(&step1), readback_term(&step2));

        // arity mismatch collapses to zero
        let r3 = gapp(glam("x", gvar("x")), vec![gvar("y"), gvar("z")]);
        assert_eq!(rigid_step_l_term(&r3), None);
    }

    #[test]
    fn rigid_nf_keeps_reducing_markers() {
        // the applied-marker redex fires once more after the beta step
        let r = gapp(
            glam("x", gapp(gvar("x"), vec![gvar("x")])),
            vec![ginl(gvar("y")), ginr(gvar("z"))],
        );
        let nf = rigid_nf(&Some(RigidExpr::Term(r))).unwrap();
        let expected = ginl(gapp(gvar("y"), vec![ginr(gvar("z"))]));
        assert_eq!(nf, RigidExpr::Term(expected.clone()));
        assert!(is_normal_rigid(&RigidExpr::Term(expected)));

        let r3 = gapp(glam("x", gvar("x")), vec![gvar("y"), gvar("z")]);
        assert_eq!(rigid_nf(&Some(RigidExpr::Term(r3))), None);
        assert_eq!(rigid_nf(&None), None);
    }

    #[test]
    fn rigid_coherence_examples() {
        assert!(rigid_coherent_terms(&ginl(gvar("x")), &ginr(gvar("z"))));
        assert!(rigid_coherent_terms(&gvar("x"), &gvar("x")));
        let left = glist(vec![gvar("x"), glam("y", gvar("y"))]);
        assert!(!rigid_coherent_monos(&left, &glist(vec![])));
    }
}
