//! Reduction of resource expressions: the hereditary head strategy, normal
//! forms, the single-step enumerator, and the termination measure.

use super::subst::{msubst_mono, msubst_term};
use super::sum::Sum;
use super::{ResExpr, ResMonomial, ResTerm};
use crate::names::{Hint, VarRef};
use std::cmp::Ordering;

/// Fresh name used to open a binder before multilinear substitution; the
/// lexer cannot produce `#`, so it never collides with user variables.
const BETA_NAME: &str = "#beta";

/// Instantiates the outermost binder of `body` with a free variable.
fn open_res(body: &ResTerm, name: &str, depth: usize) -> ResTerm {
    match body {
        ResTerm::Var(VarRef::Bound(i)) => {
            if *i == depth {
                ResTerm::Var(VarRef::free(name))
            } else if *i > depth {
                ResTerm::Var(VarRef::Bound(i - 1))
            } else {
                ResTerm::Var(VarRef::Bound(*i))
            }
        }
        ResTerm::Var(v) => ResTerm::Var(v.clone()),
        ResTerm::Lam(h, b) => ResTerm::Lam(h.clone(), Box::new(open_res(b, name, depth + 1))),
        ResTerm::App(f, args) => ResTerm::App(
            Box::new(open_res(f, name, depth)),
            ResMonomial::new(args.iter().map(|a| open_res(a, name, depth)).collect()),
        ),
        ResTerm::Inl(s) => ResTerm::Inl(Box::new(open_res(s, name, depth))),
        ResTerm::Inr(s) => ResTerm::Inr(Box::new(open_res(s, name, depth))),
    }
}

/// The beta rule: `<\y.s>[u...]` becomes the multilinear substitution of the
/// argument multiset for the bound variable.
pub fn beta(binder_body: &ResTerm, args: &ResMonomial) -> Sum<ResTerm> {
    debug_assert_eq!(binder_body.occurrences(BETA_NAME), 0);
    let opened = open_res(binder_body, BETA_NAME, 0);
    msubst_term(&opened, BETA_NAME, args)
}

fn strip_lams(mut t: &ResTerm) -> (Vec<Hint>, &ResTerm) {
    let mut hints = Vec::new();
    while let ResTerm::Lam(h, b) = t {
        hints.push(h.clone());
        t = b;
    }
    (hints, t)
}

fn wrap_lams_sum(hints: &[Hint], sum: Sum<ResTerm>) -> Sum<ResTerm> {
    hints.iter().rev().fold(sum, |acc, h| {
        acc.map_keys(|t| ResTerm::Lam(h.clone(), Box::new(t.clone())))
    })
}

fn strip_apps(mut t: &ResTerm) -> (&ResTerm, Vec<&ResMonomial>) {
    let mut args = Vec::new();
    while let ResTerm::App(f, a) = t {
        args.push(a);
        t = f;
    }
    args.reverse();
    (t, args)
}

fn wrap_apps_sum(sum: Sum<ResTerm>, args: &[&ResMonomial]) -> Sum<ResTerm> {
    args.iter().fold(sum, |acc, a| {
        acc.map_keys(|t| ResTerm::App(Box::new(t.clone()), (*a).clone()))
    })
}

/// Multilinear product: turns a list of term sums into a sum of monomials.
fn mono_of_sums(parts: Vec<Sum<ResTerm>>) -> Sum<ResMonomial> {
    let mut acc: Sum<Vec<ResTerm>> = Sum::singleton(Vec::new());
    for part in parts {
        if part.is_zero() {
            return Sum::zero();
        }
        let mut next = Sum::zero();
        for (prefix, c) in acc.iter() {
            for (t, c2) in part.iter() {
                let mut v = prefix.clone();
                v.push(t.clone());
                next.add_term(v, c * c2);
            }
        }
        acc = next;
    }
    let mut out = Sum::zero();
    for (v, c) in acc.iter() {
        out.add_term(ResMonomial::new(v.clone()), c.clone());
    }
    out
}

/// One hereditary head reduction step on a term. Fires the head redex if
/// there is one, otherwise recurses into the arguments of the head variable.
pub fn step_l_term(s: &ResTerm) -> Sum<ResTerm> {
    match s {
        ResTerm::Inl(t) => step_l_term(t).map_keys(|t| ResTerm::Inl(Box::new(t.clone()))),
        ResTerm::Inr(t) => step_l_term(t).map_keys(|t| ResTerm::Inr(Box::new(t.clone()))),
        _ => {
            let (hints, body) = strip_lams(s);
            match body {
                ResTerm::Inl(inner) => {
                    // binder prefix is nonempty here; commute the marker out
                    debug_assert!(!hints.is_empty());
                    let n = hints.len();
                    let inner = ResTerm::Lam(hints[n - 1].clone(), inner.clone());
                    wrap_lams_sum(
                        &hints[..n - 1],
                        Sum::singleton(ResTerm::Inl(Box::new(inner))),
                    )
                }
                ResTerm::Inr(inner) => {
                    debug_assert!(!hints.is_empty());
                    let n = hints.len();
                    let inner = ResTerm::Lam(hints[n - 1].clone(), inner.clone());
                    wrap_lams_sum(
                        &hints[..n - 1],
                        Sum::singleton(ResTerm::Inr(Box::new(inner))),
                    )
                }
                _ => {
                    let (head, args) = strip_apps(body);
                    match head {
                        ResTerm::Var(_) => {
                            let arg_sums: Vec<Sum<ResMonomial>> =
                                args.iter().map(|a| step_l_mono(a)).collect();
                            let mut acc = Sum::singleton(head.clone());
                            for arg in arg_sums {
                                let mut next = Sum::zero();
                                for (t, c) in acc.iter() {
                                    for (a, c2) in arg.iter() {
                                        next.add_term(
                                            ResTerm::App(Box::new(t.clone()), a.clone()),
                                            c * c2,
                                        );
                                    }
                                }
                                acc = next;
                            }
                            wrap_lams_sum(&hints, acc)
                        }
                        ResTerm::Lam(_, b) => {
                            debug_assert!(!args.is_empty());
                            let reduced = beta(b, args[0]);
                            wrap_lams_sum(&hints, wrap_apps_sum(reduced, &args[1..]))
                        }
                        ResTerm::Inl(inner) => {
                            debug_assert!(!args.is_empty());
                            let redex = ResTerm::Inl(Box::new(ResTerm::App(
                                inner.clone(),
                                args[0].clone(),
                            )));
                            wrap_lams_sum(&hints, wrap_apps_sum(Sum::singleton(redex), &args[1..]))
                        }
                        ResTerm::Inr(inner) => {
                            debug_assert!(!args.is_empty());
                            let redex = ResTerm::Inr(Box::new(ResTerm::App(
                                inner.clone(),
                                args[0].clone(),
                            )));
                            wrap_lams_sum(&hints, wrap_apps_sum(Sum::singleton(redex), &args[1..]))
                        }
                        ResTerm::App(..) => unreachable!("strip_apps leaves a non-application"),
                    }
                }
            }
        }
    }
}

/// One hereditary head step on a monomial: every element steps.
pub fn step_l_mono(m: &ResMonomial) -> Sum<ResMonomial> {
    mono_of_sums(m.iter().map(step_l_term).collect())
}

pub fn step_l_expr(e: &ResExpr) -> Sum<ResExpr> {
    match e {
        ResExpr::Term(t) => step_l_term(t).map_keys(|t| ResExpr::Term(t.clone())),
        ResExpr::Mono(m) => step_l_mono(m).map_keys(|m| ResExpr::Mono(m.clone())),
    }
}

/// The linear extension of the strategy to sums.
pub fn step_l_sum(s: &Sum<ResTerm>) -> Sum<ResTerm> {
    s.bind(step_l_term)
}

pub fn step_l_sum_mono(s: &Sum<ResMonomial>) -> Sum<ResMonomial> {
    s.bind(step_l_mono)
}

pub fn step_l_sum_expr(s: &Sum<ResExpr>) -> Sum<ResExpr> {
    s.bind(step_l_expr)
}

/// A term is normal when it contains no redex anywhere.
pub fn is_normal_term(t: &ResTerm) -> bool {
    match t {
        ResTerm::Var(_) => true,
        ResTerm::Lam(_, b) => !matches!(**b, ResTerm::Inl(_) | ResTerm::Inr(_)) && is_normal_term(b),
        ResTerm::App(f, args) => {
            !matches!(**f, ResTerm::Lam(..) | ResTerm::Inl(_) | ResTerm::Inr(_))
                && is_normal_term(f)
                && is_normal_mono(args)
        }
        ResTerm::Inl(s) | ResTerm::Inr(s) => is_normal_term(s),
    }
}

pub fn is_normal_mono(m: &ResMonomial) -> bool {
    m.iter().all(is_normal_term)
}

pub fn is_normal_expr(e: &ResExpr) -> bool {
    match e {
        ResExpr::Term(t) => is_normal_term(t),
        ResExpr::Mono(m) => is_normal_mono(m),
    }
}

/// Iterates the strategy to its fixpoint. Terminates by the strictly
/// decreasing `(lambda, choice)` multiset measure.
pub fn normal_form(s: &Sum<ResTerm>) -> Sum<ResTerm> {
    let mut cur = s.clone();
    while !cur.support().all(is_normal_term) {
        cur = step_l_sum(&cur);
    }
    cur
}

pub fn normal_form_mono(s: &Sum<ResMonomial>) -> Sum<ResMonomial> {
    let mut cur = s.clone();
    while !cur.support().all(is_normal_mono) {
        cur = step_l_sum_mono(&cur);
    }
    cur
}

pub fn normal_form_expr(s: &Sum<ResExpr>) -> Sum<ResExpr> {
    let mut cur = s.clone();
    while !cur.support().all(is_normal_expr) {
        cur = step_l_sum_expr(&cur);
    }
    cur
}

/// Every single-step reduct of a term, one sum per redex position, outermost
/// first and left to right, with duplicates removed.
pub fn one_step_all_term(t: &ResTerm) -> Vec<Sum<ResTerm>> {
    let mut out: Vec<Sum<ResTerm>> = Vec::new();
    let mut push = |s: Sum<ResTerm>| {
        if !out.contains(&s) {
            out.push(s);
        }
    };
    match t {
        ResTerm::Var(_) => {}
        ResTerm::Lam(h, b) => {
            match &**b {
                ResTerm::Inl(inner) => push(Sum::singleton(ResTerm::Inl(Box::new(
                    ResTerm::Lam(h.clone(), inner.clone()),
                )))),
                ResTerm::Inr(inner) => push(Sum::singleton(ResTerm::Inr(Box::new(
                    ResTerm::Lam(h.clone(), inner.clone()),
                )))),
                _ => {}
            }
            for s in one_step_all_term(b) {
                push(s.map_keys(|t| ResTerm::Lam(h.clone(), Box::new(t.clone()))));
            }
        }
        ResTerm::App(f, args) => {
            match &**f {
                ResTerm::Lam(_, b) => push(beta(b, args)),
                ResTerm::Inl(inner) => push(Sum::singleton(ResTerm::Inl(Box::new(
                    ResTerm::App(inner.clone(), args.clone()),
                )))),
                ResTerm::Inr(inner) => push(Sum::singleton(ResTerm::Inr(Box::new(
                    ResTerm::App(inner.clone(), args.clone()),
                )))),
                _ => {}
            }
            for s in one_step_all_term(f) {
                push(s.map_keys(|t| ResTerm::App(Box::new(t.clone()), args.clone())));
            }
            for s in one_step_all_mono(args) {
                let f = f.clone();
                push(s.map_keys(move |m| ResTerm::App(f.clone(), m.clone())));
            }
        }
        ResTerm::Inl(inner) => {
            for s in one_step_all_term(inner) {
                push(s.map_keys(|t| ResTerm::Inl(Box::new(t.clone()))));
            }
        }
        ResTerm::Inr(inner) => {
            for s in one_step_all_term(inner) {
                push(s.map_keys(|t| ResTerm::Inr(Box::new(t.clone()))));
            }
        }
    }
    out
}

/// Single-step reducts of a monomial: one element fires at a time.
pub fn one_step_all_mono(m: &ResMonomial) -> Vec<Sum<ResMonomial>> {
    let mut out: Vec<Sum<ResMonomial>> = Vec::new();
    let items = m.items();
    for (i, t) in items.iter().enumerate() {
        for s in one_step_all_term(t) {
            let reduced = s.map_keys(|t2| {
                let mut v: Vec<ResTerm> = items.to_vec();
                v[i] = t2.clone();
                ResMonomial::new(v)
            });
            if !out.contains(&reduced) {
                out.push(reduced);
            }
        }
    }
    out
}

pub fn one_step_all_expr(e: &ResExpr) -> Vec<Sum<ResExpr>> {
    match e {
        ResExpr::Term(t) => one_step_all_term(t)
            .into_iter()
            .map(|s| s.map_keys(|t| ResExpr::Term(t.clone())))
            .collect(),
        ResExpr::Mono(m) => one_step_all_mono(m)
            .into_iter()
            .map(|s| s.map_keys(|m| ResExpr::Mono(m.clone())))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Termination measure

/// The pair of multisets that strictly decreases along every reduction step:
/// abstraction counts per summand, then per-position choice weights. Both
/// components are compared in the multiset order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnMeasure {
    lambda_counts: Vec<usize>,
    oplus_weights: Vec<usize>,
}

fn multiset_cmp(a: &[usize], b: &[usize]) -> Ordering {
    // both sorted descending: lexicographic, longer wins on a tie prefix
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

impl PartialOrd for SnMeasure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SnMeasure {
    fn cmp(&self, other: &Self) -> Ordering {
        multiset_cmp(&self.lambda_counts, &other.lambda_counts)
            .then_with(|| multiset_cmp(&self.oplus_weights, &other.oplus_weights))
    }
}

pub fn count_lambdas(t: &ResTerm) -> usize {
    match t {
        ResTerm::Var(_) => 0,
        ResTerm::Lam(_, b) => 1 + count_lambdas(b),
        ResTerm::App(f, args) => {
            count_lambdas(f) + args.iter().map(count_lambdas).sum::<usize>()
        }
        ResTerm::Inl(s) | ResTerm::Inr(s) => count_lambdas(s),
    }
}

pub fn count_oplus(t: &ResTerm) -> usize {
    match t {
        ResTerm::Var(_) => 0,
        ResTerm::Lam(_, b) => count_oplus(b),
        ResTerm::App(f, args) => count_oplus(f) + args.iter().map(count_oplus).sum::<usize>(),
        ResTerm::Inl(s) | ResTerm::Inr(s) => 1 + count_oplus(s),
    }
}

fn oplus_weights_term(t: &ResTerm, out: &mut Vec<usize>) {
    match t {
        ResTerm::Var(_) => {}
        ResTerm::Lam(_, b) => {
            out.push(count_oplus(b));
            oplus_weights_term(b, out);
        }
        ResTerm::App(f, args) => {
            out.push(count_oplus(f));
            oplus_weights_term(f, out);
            for a in args.iter() {
                oplus_weights_term(a, out);
            }
        }
        ResTerm::Inl(s) | ResTerm::Inr(s) => oplus_weights_term(s, out),
    }
}

fn expr_terms(e: &ResExpr) -> Vec<&ResTerm> {
    match e {
        ResExpr::Term(t) => vec![t],
        ResExpr::Mono(m) => m.iter().collect(),
    }
}

/// The measure of a sum; coefficients must be naturals (they are, on every
/// sum reachable from a single expression) and count as multiplicities.
pub fn sn_measure(s: &Sum<ResExpr>) -> SnMeasure {
    let mut lambda_counts = Vec::new();
    let mut oplus_weights = Vec::new();
    for (e, n) in s.expand_counts() {
        for _ in 0..n {
            match e {
                ResExpr::Term(t) => lambda_counts.push(count_lambdas(t)),
                ResExpr::Mono(m) => {
                    // a monomial summand contributes one count per element
                    for t in m.iter() {
                        lambda_counts.push(count_lambdas(t));
                    }
                }
            }
            for t in expr_terms(e) {
                oplus_weights_term(t, &mut oplus_weights);
            }
        }
    }
    lambda_counts.sort_unstable_by(|a, b| b.cmp(a));
    oplus_weights.sort_unstable_by(|a, b| b.cmp(a));
    SnMeasure {
        lambda_counts,
        oplus_weights,
    }
}

pub fn sn_measure_terms(s: &Sum<ResTerm>) -> SnMeasure {
    sn_measure(&s.map_keys(|t| ResExpr::Term(t.clone())))
}
