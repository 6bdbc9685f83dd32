//! Truncated Taylor expansion: finite slices of the resource-term supports
//! of source terms and approximants, their exact coefficients, and the
//! inverse image of one head-reduction step on supports.

use crate::lambda::{ebt, step_l_n, Approx, Term};
use crate::names::VarRef;
use crate::resource::sum::Sum;
use crate::resource::{
    multiplicity_term, mono, ResMonomial, ResTerm,
};
use num::{BigRational, One, Zero};
use std::collections::BTreeSet;

/// Budgets are counted in syntactic constructors (see [`ResTerm::size`]).
pub type SizeBudget = usize;

// ---------------------------------------------------------------------------
// Support enumeration

/// Every element of the Taylor support of an approximant with size at most
/// `budget`. Bottom has empty support; a superposition marks its branches.
pub fn taylor_support(a: &Approx, budget: SizeBudget) -> BTreeSet<ResTerm> {
    match a {
        Approx::Bot => BTreeSet::new(),
        Approx::Var(v) => {
            let mut out = BTreeSet::new();
            if budget >= 1 {
                out.insert(ResTerm::Var(v.clone()));
            }
            out
        }
        Approx::Lam(h, b) => {
            if budget < 1 {
                return BTreeSet::new();
            }
            taylor_support(b, budget - 1)
                .into_iter()
                .map(|t| ResTerm::Lam(h.clone(), Box::new(t)))
                .collect()
        }
        Approx::App(p, q) => {
            if budget < 2 {
                return BTreeSet::new();
            }
            let funs = taylor_support(p, budget - 1);
            let args_pool: Vec<ResTerm> = taylor_support(q, budget.saturating_sub(2))
                .into_iter()
                .collect();
            let mut out = BTreeSet::new();
            for f in funs {
                let rem = budget - 1 - f.size();
                for m in multisets_within(&args_pool, rem) {
                    out.insert(ResTerm::App(Box::new(f.clone()), m));
                }
            }
            out
        }
        Approx::Plus(p, q) => {
            if budget < 1 {
                return BTreeSet::new();
            }
            let mut out: BTreeSet<ResTerm> = taylor_support(p, budget - 1)
                .into_iter()
                .map(|t| ResTerm::Inl(Box::new(t)))
                .collect();
            out.extend(
                taylor_support(q, budget - 1)
                    .into_iter()
                    .map(|t| ResTerm::Inr(Box::new(t))),
            );
            out
        }
    }
}

pub fn taylor_support_term(m: &Term, budget: SizeBudget) -> BTreeSet<ResTerm> {
    taylor_support(&m.clone().into(), budget)
}

/// All multisets over `pool` (given in the structural order) whose total
/// size fits the budget. Elements are chosen with non-decreasing index, so
/// the produced monomials are canonical.
fn multisets_within(pool: &[ResTerm], budget: usize) -> Vec<ResMonomial> {
    let sizes: Vec<usize> = pool.iter().map(ResTerm::size).collect();
    let mut out = Vec::new();
    let mut current: Vec<ResTerm> = Vec::new();
    fn rec(
        pool: &[ResTerm],
        sizes: &[usize],
        start: usize,
        budget: usize,
        current: &mut Vec<ResTerm>,
        out: &mut Vec<ResMonomial>,
    ) {
        out.push(ResMonomial::new(current.clone()));
        for i in start..pool.len() {
            if sizes[i] <= budget {
                current.push(pool[i].clone());
                rec(pool, sizes, i, budget - sizes[i], current, out);
                current.pop();
            }
        }
    }
    rec(pool, &sizes, 0, budget, &mut current, &mut out);
    out
}

/// Structural membership in the (unbounded) Taylor support.
pub fn in_support(a: &Approx, s: &ResTerm) -> bool {
    match (a, s) {
        (Approx::Bot, _) => false,
        (Approx::Var(v), ResTerm::Var(w)) => v == w,
        (Approx::Lam(_, b), ResTerm::Lam(_, t)) => in_support(b, t),
        (Approx::App(p, q), ResTerm::App(f, args)) => {
            in_support(p, f) && args.iter().all(|t| in_support(q, t))
        }
        (Approx::Plus(p, _), ResTerm::Inl(t)) => in_support(p, t),
        (Approx::Plus(_, q), ResTerm::Inr(t)) => in_support(q, t),
        _ => false,
    }
}

pub fn in_support_term(m: &Term, s: &ResTerm) -> bool {
    in_support(&m.clone().into(), s)
}

// ---------------------------------------------------------------------------
// Coefficients

/// The coefficient of `s` in the Taylor expansion of `a`: the reciprocal of
/// the multiplicity when `s` is in the support, zero otherwise.
pub fn taylor_coeff(a: &Approx, s: &ResTerm) -> BigRational {
    if in_support(a, s) {
        BigRational::one() / BigRational::from_integer(multiplicity_term(s).into())
    } else {
        BigRational::zero()
    }
}

/// The same coefficient computed by the direct product-of-promotions
/// recursion, with no reference to multiplicities.
pub fn taylor_coeff_direct(a: &Approx, s: &ResTerm) -> BigRational {
    match (a, s) {
        (Approx::Bot, _) => BigRational::zero(),
        (Approx::Var(v), ResTerm::Var(w)) if v == w => BigRational::one(),
        (Approx::Lam(_, b), ResTerm::Lam(_, t)) => taylor_coeff_direct(b, t),
        (Approx::App(p, q), ResTerm::App(f, args)) => {
            let head = taylor_coeff_direct(p, f);
            if head.is_zero() {
                return BigRational::zero();
            }
            let mut acc = head;
            for (t, n) in args.groups() {
                let c = taylor_coeff_direct(q, t);
                if c.is_zero() {
                    return BigRational::zero();
                }
                let mut power = BigRational::one();
                for _ in 0..n {
                    power *= &c;
                }
                acc *= power
                    / BigRational::from_integer(crate::resource::factorial(n).into());
            }
            acc
        }
        (Approx::Plus(p, _), ResTerm::Inl(t)) => taylor_coeff_direct(p, t),
        (Approx::Plus(_, q), ResTerm::Inr(t)) => taylor_coeff_direct(q, t),
        _ => BigRational::zero(),
    }
}

/// Promotion coefficient: the coefficient of the monomial `s` in the
/// promotion of `base`, i.e. the product of the base coefficients over an
/// enumeration of `s` divided by the order of the enumeration's stabilizer.
pub fn promotion_coeff(base: &Sum<ResTerm>, s: &ResMonomial) -> BigRational {
    let mut acc = BigRational::one();
    for (t, n) in s.groups() {
        let c = base.coeff(t);
        if c.is_zero() {
            return BigRational::zero();
        }
        let mut power = BigRational::one();
        for _ in 0..n {
            power *= &c;
        }
        acc *= power / BigRational::from_integer(crate::resource::factorial(n).into());
    }
    acc
}

/// A finite slice of a Taylor expansion: exactly the support elements within
/// the budget, each with coefficient `1/m(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorSlice {
    pub source: Approx,
    pub budget: SizeBudget,
    pub entries: Sum<ResTerm>,
}

impl TaylorSlice {
    pub fn new(source: Approx, budget: SizeBudget) -> TaylorSlice {
        let entries = taylor_support(&source, budget)
            .into_iter()
            .map(|s| {
                let c = BigRational::one()
                    / BigRational::from_integer(multiplicity_term(&s).into());
                (s, c)
            })
            .collect();
        TaylorSlice {
            source,
            budget,
            entries,
        }
    }

    pub fn of_term(m: &Term, budget: SizeBudget) -> TaylorSlice {
        TaylorSlice::new(m.clone().into(), budget)
    }
}

// ---------------------------------------------------------------------------
// The support of the Böhm tree

/// The Taylor support of the depth-`n` Böhm approximant, within the budget.
/// Every element is normal, and the sets grow with the depth.
pub fn taysup_bt(m: &Term, depth: usize, budget: SizeBudget) -> BTreeSet<ResTerm> {
    let approximant = ebt(&step_l_n(m, depth)).into_approx();
    taylor_support(&approximant, budget)
}

/// Membership in the Taylor support of the depth-`n` Böhm approximant.
pub fn in_bt_support(m: &Term, depth: usize, s: &ResTerm) -> bool {
    let approximant = ebt(&step_l_n(m, depth)).into_approx();
    in_support(&approximant, s)
}

// ---------------------------------------------------------------------------
// Inverse image of one head-reduction step on supports

/// All `s` in the Taylor support of `m` such that `t` occurs in the support
/// of one hereditary head step of `s`. Computed by inverting the reduction
/// step structurally, so no budget-wide enumeration is needed.
pub fn taylor_preimages(m: &Term, t: &ResTerm) -> BTreeSet<ResTerm> {
    let mut out = BTreeSet::new();
    preimages_into(m, t, &mut out);
    out
}

const CARVE_NAME: &str = "#carve";

fn preimages_into(m: &Term, t: &ResTerm, out: &mut BTreeSet<ResTerm>) {
    match m {
        Term::Plus(p, q) => match t {
            ResTerm::Inl(t2) => {
                for s in taylor_preimages(p, t2) {
                    out.insert(ResTerm::Inl(Box::new(s)));
                }
            }
            ResTerm::Inr(t2) => {
                for s in taylor_preimages(q, t2) {
                    out.insert(ResTerm::Inr(Box::new(s)));
                }
            }
            _ => {}
        },
        _ => {
            let (hints, body) = strip_lams_term(m);
            if let Term::Plus(p, q) = body {
                // the binder prefix is nonempty; one binder moved inside
                debug_assert!(!hints.is_empty());
                let n = hints.len();
                let Some((t_hints, t_body)) = peel_lams(t, n - 1) else {
                    return;
                };
                // t = \prefix. marker(\y. elem)  came from  s = \prefix.\y. marker(elem)
                let inner = match t_body {
                    ResTerm::Inl(boxed) => match &**boxed {
                        ResTerm::Lam(h, p_elem) if in_support_subterm(p, p_elem) => Some(
                            ResTerm::Lam(h.clone(), Box::new(ResTerm::Inl(p_elem.clone()))),
                        ),
                        _ => None,
                    },
                    ResTerm::Inr(boxed) => match &**boxed {
                        ResTerm::Lam(h, q_elem) if in_support_subterm(q, q_elem) => Some(
                            ResTerm::Lam(h.clone(), Box::new(ResTerm::Inr(q_elem.clone()))),
                        ),
                        _ => None,
                    },
                    _ => None,
                };
                if let Some(inner) = inner {
                    let s = t_hints
                        .iter()
                        .rev()
                        .fold(inner, |acc, h| ResTerm::Lam(h.clone(), Box::new(acc)));
                    out.insert(s);
                }
                return;
            }
            let (head, args) = strip_apps_term(body);
            let Some((_t_hints, t_body)) = peel_lams(t, hints.len()) else {
                return;
            };
            match head {
                Term::Var(v) => {
                    // the step reduces every argument of the head variable
                    let Some((t_head, t_args)) = peel_apps(t_body, args.len()) else {
                        return;
                    };
                    if t_head != &ResTerm::Var(v.clone()) {
                        return;
                    }
                    // choose a preimage for every element of every monomial
                    let mut arg_choices: Vec<Vec<ResMonomial>> = Vec::new();
                    for (q, t_arg) in args.iter().zip(&t_args) {
                        let mut per_elem: Vec<Vec<ResTerm>> = Vec::new();
                        for elem in t_arg.iter() {
                            let pres: Vec<ResTerm> =
                                taylor_preimages(q, elem).into_iter().collect();
                            if pres.is_empty() {
                                return;
                            }
                            per_elem.push(pres);
                        }
                        let mut monos: Vec<Vec<ResTerm>> = vec![Vec::new()];
                        for choice in &per_elem {
                            let mut next = Vec::new();
                            for prefix in &monos {
                                for c in choice {
                                    let mut v = prefix.clone();
                                    v.push(c.clone());
                                    next.push(v);
                                }
                            }
                            monos = next;
                        }
                        arg_choices.push(monos.into_iter().map(ResMonomial::new).collect());
                    }
                    let mut spines: Vec<ResTerm> = vec![ResTerm::Var(v.clone())];
                    for choice in arg_choices {
                        let mut next = Vec::new();
                        for s in &spines {
                            for c in &choice {
                                next.push(ResTerm::App(Box::new(s.clone()), c.clone()));
                            }
                        }
                        spines = next;
                    }
                    for s in spines {
                        out.insert(rewrap(m, t, hints.len(), s));
                    }
                }
                Term::Lam(h, p_body) => {
                    // beta step: the first argument was consumed
                    debug_assert!(!args.is_empty());
                    let Some((t_head, t_args)) = peel_apps(t_body, args.len() - 1) else {
                        return;
                    };
                    for (q, t_arg) in args[1..].iter().zip(&t_args) {
                        if !t_arg.iter().all(|e| in_support_subterm(q, e)) {
                            return;
                        }
                    }
                    let opened = open_term_with_name(p_body, CARVE_NAME);
                    for (p_elem, q_elems) in antisubst(t_head, &opened, args[0], 0) {
                        let closed =
                            ResTerm::Lam(h.clone(), Box::new(close_shifting(&p_elem, 0)));
                        let mut s = ResTerm::App(Box::new(closed), ResMonomial::new(q_elems));
                        for t_arg in &t_args {
                            s = ResTerm::App(Box::new(s), t_arg.clone());
                        }
                        out.insert(rewrap(m, t, hints.len(), s));
                    }
                }
                Term::Plus(p, q) => {
                    // applied superposition: the marker moved into the head
                    debug_assert!(!args.is_empty());
                    let Some((t_head, t_args)) = peel_apps(t_body, args.len() - 1) else {
                        return;
                    };
                    for (qq, t_arg) in args[1..].iter().zip(&t_args) {
                        if !t_arg.iter().all(|e| in_support_subterm(qq, e)) {
                            return;
                        }
                    }
                    let (branch, inner) = match t_head {
                        ResTerm::Inl(inner) => (true, inner),
                        ResTerm::Inr(inner) => (false, inner),
                        _ => return,
                    };
                    let ResTerm::App(pf, pargs) = &**inner else {
                        return;
                    };
                    let branch_term = if branch { p } else { q };
                    if !in_support_subterm(branch_term, pf) {
                        return;
                    }
                    if !pargs.iter().all(|e| in_support_subterm(args[0], e)) {
                        return;
                    }
                    let marked = if branch {
                        ResTerm::Inl(pf.clone())
                    } else {
                        ResTerm::Inr(pf.clone())
                    };
                    let mut s = ResTerm::App(Box::new(marked), pargs.clone());
                    for t_arg in &t_args {
                        s = ResTerm::App(Box::new(s), t_arg.clone());
                    }
                    out.insert(rewrap(m, t, hints.len(), s));
                }
                Term::App(..) => unreachable!("strip_apps leaves a non-application"),
            }
        }
    }
}

/// Membership check against a subterm that may contain dangling indices,
/// which match structurally.
fn in_support_subterm(m: &Term, s: &ResTerm) -> bool {
    in_support(&m.clone().into(), s)
}

fn strip_lams_term(mut t: &Term) -> (Vec<crate::names::Hint>, &Term) {
    let mut hints = Vec::new();
    while let Term::Lam(h, b) = t {
        hints.push(h.clone());
        t = b;
    }
    (hints, t)
}

fn strip_apps_term(mut t: &Term) -> (&Term, Vec<&Term>) {
    let mut args = Vec::new();
    while let Term::App(f, a) = t {
        args.push(&**a);
        t = f;
    }
    args.reverse();
    (t, args)
}

/// Peels exactly `n` abstractions off a resource term.
fn peel_lams(t: &ResTerm, n: usize) -> Option<(Vec<crate::names::Hint>, &ResTerm)> {
    let mut hints = Vec::new();
    let mut cur = t;
    for _ in 0..n {
        match cur {
            ResTerm::Lam(h, b) => {
                hints.push(h.clone());
                cur = b;
            }
            _ => return None,
        }
    }
    Some((hints, cur))
}

/// Peels exactly `n` application layers, returning the head and the argument
/// monomials left to right.
fn peel_apps(t: &ResTerm, n: usize) -> Option<(&ResTerm, Vec<ResMonomial>)> {
    let mut args = Vec::new();
    let mut cur = t;
    for _ in 0..n {
        match cur {
            ResTerm::App(f, a) => {
                args.push(a.clone());
                cur = f;
            }
            _ => return None,
        }
    }
    args.reverse();
    Some((cur, args))
}

/// The inverse of opening a binder: rebinds the carve name at the given
/// depth and shifts the remaining dangling indices up past it.
fn close_shifting(t: &ResTerm, depth: usize) -> ResTerm {
    match t {
        ResTerm::Var(VarRef::Free(n)) if n == CARVE_NAME => ResTerm::Var(VarRef::Bound(depth)),
        ResTerm::Var(VarRef::Bound(i)) if *i >= depth => ResTerm::Var(VarRef::Bound(i + 1)),
        ResTerm::Var(v) => ResTerm::Var(v.clone()),
        ResTerm::Lam(h, b) => ResTerm::Lam(h.clone(), Box::new(close_shifting(b, depth + 1))),
        ResTerm::App(f, args) => ResTerm::App(
            Box::new(close_shifting(f, depth)),
            ResMonomial::new(args.iter().map(|a| close_shifting(a, depth)).collect()),
        ),
        ResTerm::Inl(s) => ResTerm::Inl(Box::new(close_shifting(s, depth))),
        ResTerm::Inr(s) => ResTerm::Inr(Box::new(close_shifting(s, depth))),
    }
}

/// Restores the lambda prefix of the preimage from the target's own prefix.
fn rewrap(_m: &Term, t: &ResTerm, n: usize, inner: ResTerm) -> ResTerm {
    let (hints, _) = peel_lams(t, n).expect("prefix was already peeled");
    hints
        .iter()
        .rev()
        .fold(inner, |acc, h| ResTerm::Lam(h.clone(), Box::new(acc)))
}

fn open_term_with_name(body: &Term, name: &str) -> Term {
    open_term_at(body, name, 0)
}

fn open_term_at(body: &Term, name: &str, depth: usize) -> Term {
    match body {
        Term::Var(VarRef::Bound(i)) => {
            if *i == depth {
                Term::Var(VarRef::free(name))
            } else if *i > depth {
                Term::Var(VarRef::Bound(i - 1))
            } else {
                Term::Var(VarRef::Bound(*i))
            }
        }
        Term::Var(v) => Term::Var(v.clone()),
        Term::Lam(h, b) => Term::Lam(h.clone(), Box::new(open_term_at(b, name, depth + 1))),
        Term::App(f, a) => Term::App(
            Box::new(open_term_at(f, name, depth)),
            Box::new(open_term_at(a, name, depth)),
        ),
        Term::Plus(l, r) => Term::Plus(
            Box::new(open_term_at(l, name, depth)),
            Box::new(open_term_at(r, name, depth)),
        ),
    }
}

/// Shifts dangling indices down by `by`; fails when an index would escape.
fn try_unshift(t: &ResTerm, by: usize, cutoff: usize) -> Option<ResTerm> {
    match t {
        ResTerm::Var(VarRef::Bound(i)) if *i >= cutoff => {
            if *i >= cutoff + by {
                Some(ResTerm::Var(VarRef::Bound(i - by)))
            } else {
                None
            }
        }
        ResTerm::Var(v) => Some(ResTerm::Var(v.clone())),
        ResTerm::Lam(h, b) => Some(ResTerm::Lam(
            h.clone(),
            Box::new(try_unshift(b, by, cutoff + 1)?),
        )),
        ResTerm::App(f, args) => {
            let f2 = try_unshift(f, by, cutoff)?;
            let mut items = Vec::with_capacity(args.len());
            for a in args.iter() {
                items.push(try_unshift(a, by, cutoff)?);
            }
            Some(ResTerm::App(Box::new(f2), ResMonomial::new(items)))
        }
        ResTerm::Inl(s) => Some(ResTerm::Inl(Box::new(try_unshift(s, by, cutoff)?))),
        ResTerm::Inr(s) => Some(ResTerm::Inr(Box::new(try_unshift(s, by, cutoff)?))),
    }
}

/// Inverts substitution on supports: all pairs `(p, q_elems)` with `p` in the
/// support of `p_open`, the `q_elems` in the support of `q`, and `v` obtained
/// by routing the `q_elems` to the occurrences of the carve name in `p`.
fn antisubst(
    v: &ResTerm,
    p_open: &Term,
    q: &Term,
    rel_depth: usize,
) -> Vec<(ResTerm, Vec<ResTerm>)> {
    match p_open {
        Term::Var(VarRef::Free(n)) if n == CARVE_NAME => {
            // the whole of v stands for one substituted occurrence
            match try_unshift(v, rel_depth, 0) {
                Some(q_elem) if in_support_subterm(q, &q_elem) => {
                    vec![(ResTerm::Var(VarRef::free(CARVE_NAME)), vec![q_elem])]
                }
                _ => Vec::new(),
            }
        }
        Term::Var(w) => {
            if v == &ResTerm::Var(w.clone()) {
                vec![(ResTerm::Var(w.clone()), Vec::new())]
            } else {
                Vec::new()
            }
        }
        Term::Lam(h, b) => match v {
            ResTerm::Lam(_, v2) => antisubst(v2, b, q, rel_depth + 1)
                .into_iter()
                .map(|(p, qs)| (ResTerm::Lam(h.clone(), Box::new(p)), qs))
                .collect(),
            _ => Vec::new(),
        },
        Term::App(p1, p2) => match v {
            ResTerm::App(v0, vargs) => {
                let heads = antisubst(v0, p1, q, rel_depth);
                if heads.is_empty() {
                    return Vec::new();
                }
                // element-wise choices for the argument monomial
                let mut arg_options: Vec<Vec<(ResTerm, Vec<ResTerm>)>> = Vec::new();
                for va in vargs.iter() {
                    let opts = antisubst(va, p2, q, rel_depth);
                    if opts.is_empty() {
                        return Vec::new();
                    }
                    arg_options.push(opts);
                }
                let mut combos: Vec<(Vec<ResTerm>, Vec<ResTerm>)> =
                    vec![(Vec::new(), Vec::new())];
                for opts in &arg_options {
                    let mut next = Vec::new();
                    for (elems, qs) in &combos {
                        for (p_elem, q_elems) in opts {
                            let mut e = elems.clone();
                            e.push(p_elem.clone());
                            let mut qq = qs.clone();
                            qq.extend(q_elems.iter().cloned());
                            next.push((e, qq));
                        }
                    }
                    combos = next;
                }
                let mut out = Vec::new();
                for (hp, hqs) in &heads {
                    for (elems, qs) in &combos {
                        let mut all_q = hqs.clone();
                        all_q.extend(qs.iter().cloned());
                        out.push((
                            ResTerm::App(
                                Box::new(hp.clone()),
                                ResMonomial::new(elems.clone()),
                            ),
                            all_q,
                        ));
                    }
                }
                dedup_pairs(out)
            }
            _ => Vec::new(),
        },
        Term::Plus(p1, p2) => match v {
            ResTerm::Inl(v2) => antisubst(v2, p1, q, rel_depth)
                .into_iter()
                .map(|(p, qs)| (ResTerm::Inl(Box::new(p)), qs))
                .collect(),
            ResTerm::Inr(v2) => antisubst(v2, p2, q, rel_depth)
                .into_iter()
                .map(|(p, qs)| (ResTerm::Inr(Box::new(p)), qs))
                .collect(),
            _ => Vec::new(),
        },
    }
}

fn dedup_pairs(pairs: Vec<(ResTerm, Vec<ResTerm>)>) -> Vec<(ResTerm, Vec<ResTerm>)> {
    let mut seen: BTreeSet<(ResTerm, ResMonomial)> = BTreeSet::new();
    let mut out = Vec::new();
    for (p, qs) in pairs {
        let key = (p.clone(), mono(qs.clone()));
        if seen.insert(key) {
            out.push((p, qs));
        }
    }
    out
}
