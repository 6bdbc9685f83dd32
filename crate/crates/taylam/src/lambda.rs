//! The nondeterministic source calculus: terms with a free binary choice
//! operator, hereditary head reduction, and elementary Böhm approximants.

use crate::names::{Hint, VarRef};

/// A term of the source calculus: variables, abstraction, application and the
/// binary superposition `(+)`.
///
/// Bound variables are binder indices, so equality is alpha-equivalence and
/// the derived `Ord` is the fixed structural order used everywhere downstream.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(VarRef),
    Lam(Hint, Box<Term>),
    App(Box<Term>, Box<Term>),
    Plus(Box<Term>, Box<Term>),
}

/// A term approximant: [`Term`] extended with the least element `Bot`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Approx {
    Bot,
    Var(VarRef),
    Lam(Hint, Box<Approx>),
    App(Box<Approx>, Box<Approx>),
    Plus(Box<Approx>, Box<Approx>),
}

impl From<Term> for Approx {
    fn from(t: Term) -> Approx {
        match t {
            Term::Var(v) => Approx::Var(v),
            Term::Lam(h, b) => Approx::Lam(h, Box::new((*b).into())),
            Term::App(f, a) => Approx::App(Box::new((*f).into()), Box::new((*a).into())),
            Term::Plus(l, r) => Approx::Plus(Box::new((*l).into()), Box::new((*r).into())),
        }
    }
}

// Construction helpers. `lam` binds every free occurrence of the given name.

pub fn var(name: impl Into<String>) -> Term {
    Term::Var(VarRef::free(name))
}

pub fn lam(name: impl Into<String>, body: Term) -> Term {
    let name = name.into();
    let closed = close_term(body, &name, 0);
    Term::Lam(Hint::new(name), Box::new(closed))
}

pub fn app(f: Term, a: Term) -> Term {
    Term::App(Box::new(f), Box::new(a))
}

pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
    args.into_iter().fold(head, app)
}

pub fn plus(l: Term, r: Term) -> Term {
    Term::Plus(Box::new(l), Box::new(r))
}

fn close_term(t: Term, name: &str, depth: usize) -> Term {
    match t {
        Term::Var(VarRef::Free(n)) if n == name => Term::Var(VarRef::Bound(depth)),
        Term::Var(v) => Term::Var(v),
        Term::Lam(h, b) => Term::Lam(h, Box::new(close_term(*b, name, depth + 1))),
        Term::App(f, a) => Term::App(
            Box::new(close_term(*f, name, depth)),
            Box::new(close_term(*a, name, depth)),
        ),
        Term::Plus(l, r) => Term::Plus(
            Box::new(close_term(*l, name, depth)),
            Box::new(close_term(*r, name, depth)),
        ),
    }
}

impl Term {
    /// Free names occurring in the term, in first-occurrence order.
    pub fn free_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(VarRef::Free(n)) => {
                if !out.iter().any(|m| m == n) {
                    out.push(n.clone());
                }
            }
            Term::Var(_) => {}
            Term::Lam(_, b) => b.collect_free(out),
            Term::App(f, a) => {
                f.collect_free(out);
                a.collect_free(out);
            }
            Term::Plus(l, r) => {
                l.collect_free(out);
                r.collect_free(out);
            }
        }
    }
}

/// Shift every dangling binder index `>= cutoff` by `by`.
fn shift(t: &Term, by: usize, cutoff: usize) -> Term {
    match t {
        Term::Var(VarRef::Bound(i)) if *i >= cutoff => Term::Var(VarRef::Bound(i + by)),
        Term::Var(v) => Term::Var(v.clone()),
        Term::Lam(h, b) => Term::Lam(h.clone(), Box::new(shift(b, by, cutoff + 1))),
        Term::App(f, a) => Term::App(
            Box::new(shift(f, by, cutoff)),
            Box::new(shift(a, by, cutoff)),
        ),
        Term::Plus(l, r) => Term::Plus(
            Box::new(shift(l, by, cutoff)),
            Box::new(shift(r, by, cutoff)),
        ),
    }
}

/// Instantiate the outermost binder of `body` with `arg` (standard de Bruijn
/// opening; `arg` may itself contain dangling indices, which get shifted).
fn open(body: &Term, arg: &Term, depth: usize) -> Term {
    match body {
        Term::Var(VarRef::Bound(i)) => {
            if *i == depth {
                shift(arg, depth, 0)
            } else if *i > depth {
                Term::Var(VarRef::Bound(i - 1))
            } else {
                Term::Var(VarRef::Bound(*i))
            }
        }
        Term::Var(v) => Term::Var(v.clone()),
        Term::Lam(h, b) => Term::Lam(h.clone(), Box::new(open(b, arg, depth + 1))),
        Term::App(f, a) => Term::App(
            Box::new(open(f, arg, depth)),
            Box::new(open(a, arg, depth)),
        ),
        Term::Plus(l, r) => Term::Plus(
            Box::new(open(l, arg, depth)),
            Box::new(open(r, arg, depth)),
        ),
    }
}

/// Capture-avoiding substitution of `n` for the free variable `x` in `m`.
///
/// With the nameless representation no renaming is ever required: binders
/// cannot capture a named free variable.
pub fn subst(m: &Term, x: &str, n: &Term) -> Term {
    subst_at(m, x, n, 0)
}

fn subst_at(m: &Term, x: &str, n: &Term, depth: usize) -> Term {
    match m {
        Term::Var(VarRef::Free(name)) if name == x => shift(n, depth, 0),
        Term::Var(v) => Term::Var(v.clone()),
        Term::Lam(h, b) => Term::Lam(h.clone(), Box::new(subst_at(b, x, n, depth + 1))),
        Term::App(f, a) => Term::App(
            Box::new(subst_at(f, x, n, depth)),
            Box::new(subst_at(a, x, n, depth)),
        ),
        Term::Plus(l, r) => Term::Plus(
            Box::new(subst_at(l, x, n, depth)),
            Box::new(subst_at(r, x, n, depth)),
        ),
    }
}

/// Splits a term into its maximal abstraction prefix and the remaining body.
fn strip_lams(mut t: &Term) -> (Vec<Hint>, &Term) {
    let mut hints = Vec::new();
    while let Term::Lam(h, b) = t {
        hints.push(h.clone());
        t = b;
    }
    (hints, t)
}

fn wrap_lams(hints: &[Hint], body: Term) -> Term {
    hints
        .iter()
        .rev()
        .fold(body, |acc, h| Term::Lam(h.clone(), Box::new(acc)))
}

/// Splits an application spine: `strip_apps(f a b) = (f, [a, b])`.
fn strip_apps(mut t: &Term) -> (&Term, Vec<&Term>) {
    let mut args = Vec::new();
    while let Term::App(f, a) = t {
        args.push(&**a);
        t = f;
    }
    args.reverse();
    (t, args)
}

/// One step of hereditary head reduction.
///
/// The head redex is fired if there is one; otherwise the strategy descends
/// into the arguments of the head variable. `step_l(m) == m` exactly when `m`
/// is normal.
pub fn step_l(m: &Term) -> Term {
    if let Term::Plus(l, r) = m {
        return plus(step_l(l), step_l(r));
    }
    let (hints, body) = strip_lams(m);
    if let Term::Plus(l, r) = body {
        // here the prefix is nonempty: push the innermost binder inside
        let n = hints.len();
        debug_assert!(n > 0);
        let y = hints[n - 1].clone();
        let new_body = Term::Plus(
            Box::new(Term::Lam(y.clone(), l.clone())),
            Box::new(Term::Lam(y, r.clone())),
        );
        return wrap_lams(&hints[..n - 1], new_body);
    }
    let (head, args) = strip_apps(body);
    match head {
        Term::Var(_) => {
            let new_body = apps(head.clone(), args.iter().map(|q| step_l(q)));
            wrap_lams(&hints, new_body)
        }
        Term::Lam(_, b) => {
            // head beta redex; the spine guarantees at least one argument
            debug_assert!(!args.is_empty());
            let reduced = open(b, args[0], 0);
            let new_body = apps(reduced, args[1..].iter().map(|q| (*q).clone()));
            wrap_lams(&hints, new_body)
        }
        Term::Plus(l, r) => {
            debug_assert!(!args.is_empty());
            let p = args[0];
            let new_head = plus(app((**l).clone(), p.clone()), app((**r).clone(), p.clone()));
            let new_body = apps(new_head, args[1..].iter().map(|q| (*q).clone()));
            wrap_lams(&hints, new_body)
        }
        Term::App(..) => unreachable!("strip_apps leaves a non-application head"),
    }
}

/// Iterates [`step_l`] `n` times.
pub fn step_l_n(m: &Term, n: usize) -> Term {
    let mut t = m.clone();
    for _ in 0..n {
        t = step_l(&t);
    }
    t
}

/// A term is normal when it contains no beta redex and no superposition
/// under an abstraction or in function position.
pub fn is_normal(m: &Term) -> bool {
    match m {
        Term::Var(_) => true,
        Term::Lam(_, b) => !matches!(**b, Term::Plus(..)) && is_normal(b),
        Term::App(f, a) => {
            !matches!(**f, Term::Lam(..) | Term::Plus(..)) && is_normal(f) && is_normal(a)
        }
        Term::Plus(l, r) => is_normal(l) && is_normal(r),
    }
}

/// An elementary Böhm tree: an approximant generated by bottom, head-variable
/// spines under abstractions, and superpositions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ebt(Approx);

impl Ebt {
    /// Validates membership in the restricted grammar.
    pub fn try_new(a: Approx) -> Option<Ebt> {
        if is_ebt(&a) {
            Some(Ebt(a))
        } else {
            None
        }
    }

    pub fn approx(&self) -> &Approx {
        &self.0
    }

    pub fn into_approx(self) -> Approx {
        self.0
    }
}

fn is_ebt(a: &Approx) -> bool {
    match a {
        Approx::Bot => true,
        Approx::Plus(l, r) => is_ebt(l) && is_ebt(r),
        _ => is_head_spine(a),
    }
}

// lambda-prefixed head-variable spine with elementary arguments
fn is_head_spine(a: &Approx) -> bool {
    let mut t = a;
    while let Approx::Lam(_, b) = t {
        t = b;
    }
    loop {
        match t {
            Approx::Var(_) => return true,
            Approx::App(f, arg) => {
                if !is_ebt(arg) {
                    return false;
                }
                t = f;
            }
            _ => return false,
        }
    }
}

/// The elementary Böhm tree of a term: superpositions and head-variable
/// spines are kept, everything else collapses to bottom.
pub fn ebt(m: &Term) -> Ebt {
    Ebt(ebt_approx(m))
}

fn ebt_approx(m: &Term) -> Approx {
    match m {
        Term::Plus(l, r) => Approx::Plus(Box::new(ebt_approx(l)), Box::new(ebt_approx(r))),
        _ => {
            let (hints, body) = strip_lams(m);
            let (head, args) = strip_apps(body);
            match head {
                Term::Var(v) => {
                    let mut acc = Approx::Var(v.clone());
                    for q in args {
                        acc = Approx::App(Box::new(acc), Box::new(ebt_approx(q)));
                    }
                    hints
                        .iter()
                        .rev()
                        .fold(acc, |inner, h| Approx::Lam(h.clone(), Box::new(inner)))
                }
                _ => Approx::Bot,
            }
        }
    }
}

/// The approximation order: the least order compatible with the syntax in
/// which `Bot` is below everything.
pub fn approx_le(a: &Approx, b: &Approx) -> bool {
    match (a, b) {
        (Approx::Bot, _) => true,
        (Approx::Var(v), Approx::Var(w)) => v == w,
        (Approx::Lam(_, a1), Approx::Lam(_, b1)) => approx_le(a1, b1),
        (Approx::App(f, x), Approx::App(g, y)) => approx_le(f, g) && approx_le(x, y),
        (Approx::Plus(l, r), Approx::Plus(l2, r2)) => approx_le(l, l2) && approx_le(r, r2),
        _ => false,
    }
}

/// The depth-`n` Böhm approximant: the elementary Böhm tree of the `n`-th
/// hereditary head reduct. The sequence is increasing in `n`.
pub fn bohm_approx(m: &Term, n: usize) -> Ebt {
    ebt(&step_l_n(m, n))
}

/// Named combinators available to the surface parser.
pub mod prelude {
    use super::*;

    /// `I = \x. x`
    pub fn i() -> Term {
        lam("x", var("x"))
    }

    /// `K = \x. \y. x`
    pub fn k() -> Term {
        lam("x", lam("y", var("x")))
    }

    /// `Delta = \x. x x`
    pub fn delta() -> Term {
        lam("x", app(var("x"), var("x")))
    }

    /// `Omega = Delta Delta`
    pub fn omega() -> Term {
        app(delta(), delta())
    }

    /// Turing's fixpoint combinator `(\z. \y. y (z z y)) (\z. \y. y (z z y))`.
    pub fn theta() -> Term {
        let half = lam(
            "z",
            lam("y", app(var("y"), apps(var("z"), [var("z"), var("y")]))),
        );
        app(half.clone(), half)
    }

    /// Looks up a combinator by its surface name.
    pub fn by_name(name: &str) -> Option<Term> {
        match name {
            "I" => Some(i()),
            "K" => Some(k()),
            "Delta" | "Δ" => Some(delta()),
            "Omega" | "Ω" => Some(omega()),
            "Theta" | "Θ" => Some(theta()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::prelude::*;
    use super::*;

    #[test]
    fn subst_no_capture_needed() {
        // (\y. x)[z/x] = \y. z
        let m = lam("y", var("x"));
        assert_eq!(subst(&m, "x", &var("z")), lam("y", var("z")));
        // (\y. y)[z/x] = \y. y
        let m = lam("y", var("y"));
        assert_eq!(subst(&m, "x", &var("z")), lam("y", var("y")));
    }

    #[test]
    fn subst_renames_via_indices() {
        // (\y. x y)[y/x] = \y'. y y'
        let m = lam("y", app(var("x"), var("y")));
        let got = subst(&m, "x", &var("y"));
        let expected = lam("w", app(var("y"), var("w")));
        assert_eq!(got, expected);
    }

    #[test]
    fn step_fires_head_beta() {
        let m = app(lam("x", var("x")), var("y"));
        assert_eq!(step_l(&m), var("y"));
    }

    #[test]
    fn step_pushes_choice_out_of_binder() {
        let m = lam("x", plus(var("y"), var("z")));
        let expected = plus(lam("x", var("y")), lam("x", var("z")));
        assert_eq!(step_l(&m), expected);
    }

    #[test]
    fn step_distributes_applied_choice() {
        let m = app(plus(var("f"), var("g")), var("a"));
        let expected = plus(app(var("f"), var("a")), app(var("g"), var("a")));
        assert_eq!(step_l(&m), expected);
    }

    #[test]
    fn theta_unfolds_in_three_steps() {
        let n = lam("y", plus(var("y"), var("x")));
        let m = app(theta(), n.clone());
        let expected = plus(m.clone(), var("x"));
        assert_eq!(step_l_n(&m, 3), expected);
    }

    #[test]
    fn step_fixes_exactly_normal_terms() {
        let cases = [
            (var("x"), true),
            (lam("x", var("x")), true),
            (app(var("y"), lam("x", var("x"))), true),
            (plus(var("x"), var("y")), true),
            (app(lam("x", var("x")), var("y")), false),
            (lam("x", plus(var("x"), var("y"))), false),
            (app(plus(var("x"), var("y")), var("z")), false),
            (omega(), false),
        ];
        for (t, normal) in cases {
            assert_eq!(is_normal(&t), normal, "normality of {t:?}");
            assert_eq!(step_l(&t) == t, normal, "fixpoint of {t:?}");
        }
    }

    #[test]
    fn ebt_collapses_head_redexes() {
        let m = app(lam("x", var("x")), var("y"));
        assert_eq!(ebt(&m).approx(), &Approx::Bot);

        // \z. z ((\x. x) y)  =>  \z. z _|_
        let m = lam("z", app(var("z"), app(lam("x", var("x")), var("y"))));
        let expected = Approx::Lam(
            Hint::new("z"),
            Box::new(Approx::App(
                Box::new(Approx::Var(VarRef::Bound(0))),
                Box::new(Approx::Bot),
            )),
        );
        assert_eq!(ebt(&m).approx(), &expected);
    }

    #[test]
    fn ebt_of_unfolded_fixpoint() {
        let n = lam("y", plus(var("y"), var("x")));
        let m = app(theta(), n);
        let unfolded = plus(m, var("x"));
        let expected = Approx::Plus(
            Box::new(Approx::Bot),
            Box::new(Approx::Var(VarRef::free("x"))),
        );
        assert_eq!(ebt(&unfolded).approx(), &expected);
    }

    #[test]
    fn approx_order_examples() {
        let bot = Approx::Bot;
        let id: Approx = lam("x", var("x")).into();
        assert!(approx_le(&bot, &id));
        assert!(!approx_le(&id, &bot));

        let small: Approx = Approx::Lam(
            Hint::new("x"),
            Box::new(Approx::Plus(Box::new(Approx::Bot), Box::new(Approx::Bot))),
        );
        let big: Approx = lam("x", plus(var("y"), var("z"))).into();
        assert!(approx_le(&small, &big));

        let x: Approx = var("x").into();
        let y: Approx = var("y").into();
        assert!(!approx_le(&x, &y));
        assert!(approx_le(&x, &x));
    }

    #[test]
    fn bohm_approx_examples() {
        let id = lam("x", var("x"));
        for n in 0..4 {
            assert_eq!(bohm_approx(&id, n), ebt(&id));
        }

        let n = lam("y", plus(var("y"), var("x")));
        let m = app(theta(), n);
        let expected = Approx::Plus(
            Box::new(Approx::Bot),
            Box::new(Approx::Var(VarRef::free("x"))),
        );
        assert_eq!(bohm_approx(&m, 3).approx(), &expected);

        for n in 0..6 {
            assert_eq!(bohm_approx(&omega(), n).approx(), &Approx::Bot);
        }
    }

    #[test]
    fn bohm_sequence_is_increasing() {
        let n = lam("y", plus(var("y"), var("x")));
        let terms = [
            app(theta(), n),
            omega(),
            app(lam("x", app(var("x"), var("x"))), i()),
            app(k(), plus(var("a"), var("b"))),
        ];
        for m in &terms {
            for n in 0..8 {
                let a = bohm_approx(m, n);
                let b = bohm_approx(m, n + 1);
                assert!(
                    approx_le(a.approx(), b.approx()),
                    "approximants must increase: {m:?} at {n}"
                );
            }
        }
    }

    #[test]
    fn ebt_is_below_the_term() {
        let n = lam("y", plus(var("y"), var("x")));
        let terms = [
            app(theta(), n),
            lam("z", app(var("z"), app(i(), var("y")))),
            plus(var("a"), app(i(), var("b"))),
        ];
        for m in &terms {
            let a = ebt(m);
            assert!(approx_le(a.approx(), &m.clone().into()));
        }
    }

    #[test]
    fn ebt_grammar_validation() {
        assert!(Ebt::try_new(Approx::Bot).is_some());
        // \x. x _|_ is a valid spine
        let spine = Approx::Lam(
            Hint::new("x"),
            Box::new(Approx::App(
                Box::new(Approx::Var(VarRef::Bound(0))),
                Box::new(Approx::Bot),
            )),
        );
        assert!(Ebt::try_new(spine).is_some());
        // a lambda over a sum is not elementary
        let bad = Approx::Lam(
            Hint::new("x"),
            Box::new(Approx::Plus(Box::new(Approx::Bot), Box::new(Approx::Bot))),
        );
        assert!(Ebt::try_new(bad).is_none());
        // a redex is not elementary
        let redex: Approx = app(lam("x", var("x")), var("y")).into();
        assert!(Ebt::try_new(redex).is_none());
    }
}
