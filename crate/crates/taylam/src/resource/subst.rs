//! Symmetric multilinear substitution.
//!
//! `msubst(e, x, u)` routes the multiset `u` to the free occurrences of `x`
//! in `e` in every possible way and sums the results; it is the empty sum
//! exactly when the number of occurrences differs from the width of `u`.

use super::sum::Sum;
use super::{shift_res, ResExpr, ResMonomial, ResTerm};
use crate::names::VarRef;

/// All `k`-tuples of pairwise disjoint subsets covering `{0..n-1}`, one per
/// assignment function `{0..n-1} -> {0..k-1}`, enumerated in the
/// lexicographic order of assignments.
pub fn weak_compositions(k: usize, n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut assignment = vec![0usize; n];
    loop {
        let mut tuple = vec![Vec::new(); k];
        for (i, &j) in assignment.iter().enumerate() {
            tuple[j].push(i);
        }
        out.push(tuple);
        // advance the odometer, most significant digit first
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < k {
                break;
            }
            assignment[pos] = 0;
        }
    }
}

/// All ways of splitting `{0..n-1}` into disjoint ordered blocks of the given
/// sizes. Only splits consistent with the sizes are produced, which keeps
/// substitution away from the `k^n` blow-up of raw weak compositions.
fn splits_with_sizes(sizes: &[usize], n: usize) -> Vec<Vec<Vec<usize>>> {
    if sizes.iter().sum::<usize>() != n {
        return Vec::new();
    }
    let indices: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    fill_blocks(sizes, &indices, &mut current, &mut out);
    out
}

fn fill_blocks(
    sizes: &[usize],
    remaining: &[usize],
    current: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    match sizes.split_first() {
        None => out.push(current.clone()),
        Some((&size, rest)) => {
            for combo in combinations(remaining, size) {
                let left: Vec<usize> = remaining
                    .iter()
                    .copied()
                    .filter(|i| !combo.contains(i))
                    .collect();
                current.push(combo);
                fill_blocks(rest, &left, current, out);
                current.pop();
            }
        }
    }
}

fn combinations(items: &[usize], choose: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if choose > items.len() {
        return out;
    }
    let mut current = Vec::with_capacity(choose);
    fn rec(
        items: &[usize],
        start: usize,
        choose: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == choose {
            out.push(current.clone());
            return;
        }
        let needed = choose - current.len();
        for i in start..=items.len().saturating_sub(needed) {
            current.push(items[i]);
            rec(items, i + 1, choose, current, out);
            current.pop();
        }
    }
    rec(items, 0, choose, &mut current, &mut out);
    out
}

fn select(u: &ResMonomial, idx: &[usize]) -> Vec<ResTerm> {
    idx.iter().map(|&i| u.items()[i].clone()).collect()
}

/// `msubst` on a term: a sum of terms.
pub fn msubst_term(s: &ResTerm, x: &str, u: &ResMonomial) -> Sum<ResTerm> {
    msubst_term_at(s, x, u.items(), 0)
}

/// `msubst` on a monomial: a sum of monomials.
pub fn msubst_mono(m: &ResMonomial, x: &str, u: &ResMonomial) -> Sum<ResMonomial> {
    msubst_mono_at(m, x, u.items(), 0)
}

/// `msubst` on an expression.
pub fn msubst(e: &ResExpr, x: &str, u: &ResMonomial) -> Sum<ResExpr> {
    match e {
        ResExpr::Term(t) => msubst_term(t, x, u).map_keys(|t| ResExpr::Term(t.clone())),
        ResExpr::Mono(m) => msubst_mono(m, x, u).map_keys(|m| ResExpr::Mono(m.clone())),
    }
}

fn msubst_term_at(s: &ResTerm, x: &str, u: &[ResTerm], depth: usize) -> Sum<ResTerm> {
    match s {
        ResTerm::Var(VarRef::Free(name)) if name == x => {
            if u.len() == 1 {
                Sum::singleton(shift_res(&u[0], depth, 0))
            } else {
                Sum::zero()
            }
        }
        ResTerm::Var(v) => {
            if u.is_empty() {
                Sum::singleton(ResTerm::Var(v.clone()))
            } else {
                Sum::zero()
            }
        }
        ResTerm::Lam(h, b) => msubst_term_at(b, x, u, depth + 1)
            .map_keys(|t| ResTerm::Lam(h.clone(), Box::new(t.clone()))),
        ResTerm::Inl(t) => {
            msubst_term_at(t, x, u, depth).map_keys(|t| ResTerm::Inl(Box::new(t.clone())))
        }
        ResTerm::Inr(t) => {
            msubst_term_at(t, x, u, depth).map_keys(|t| ResTerm::Inr(Box::new(t.clone())))
        }
        ResTerm::App(f, args) => {
            let sizes = [f.occurrences(x), args.occurrences(x)];
            let mut out = Sum::zero();
            for split in splits_with_sizes(&sizes, u.len()) {
                let uf: Vec<ResTerm> = split[0].iter().map(|&i| u[i].clone()).collect();
                let ua: Vec<ResTerm> = split[1].iter().map(|&i| u[i].clone()).collect();
                let sf = msubst_term_at(f, x, &uf, depth);
                let sa = msubst_mono_at(args, x, &ua, depth);
                for (tf, cf) in sf.iter() {
                    for (ta, ca) in sa.iter() {
                        out.add_term(
                            ResTerm::App(Box::new(tf.clone()), ta.clone()),
                            cf * ca,
                        );
                    }
                }
            }
            out
        }
    }
}

fn msubst_mono_at(m: &ResMonomial, x: &str, u: &[ResTerm], depth: usize) -> Sum<ResMonomial> {
    let sizes: Vec<usize> = m.iter().map(|t| t.occurrences(x)).collect();
    let mut out = Sum::zero();
    for split in splits_with_sizes(&sizes, u.len()) {
        // multilinear product of the per-element sums
        let mut acc: Sum<Vec<ResTerm>> = Sum::singleton(Vec::new());
        for (t, idx) in m.iter().zip(&split) {
            let ut: Vec<ResTerm> = idx.iter().map(|&i| u[i].clone()).collect();
            let st = msubst_term_at(t, x, &ut, depth);
            if st.is_zero() {
                acc = Sum::zero();
                break;
            }
            let mut next = Sum::zero();
            for (prefix, c) in acc.iter() {
                for (t2, c2) in st.iter() {
                    let mut v = prefix.clone();
                    v.push(t2.clone());
                    next.add_term(v, c * c2);
                }
            }
            acc = next;
        }
        for (v, c) in acc.iter() {
            out.add_term(ResMonomial::new(v.clone()), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{inl, mono, rapp, rlam, rvar};
    use super::super::sum::nat;
    use super::*;

    #[test]
    fn weak_compositions_order_and_counts() {
        // functions {1,2} -> {1,2} in lexicographic order
        let got = weak_compositions(2, 2);
        let expected = vec![
            vec![vec![0, 1], vec![]],
            vec![vec![0], vec![1]],
            vec![vec![1], vec![0]],
            vec![vec![], vec![0, 1]],
        ];
        assert_eq!(got, expected);

        assert_eq!(weak_compositions(1, 3), vec![vec![vec![0, 1, 2]]]);
        assert_eq!(weak_compositions(3, 0), vec![vec![vec![], vec![], vec![]]]);
        assert_eq!(weak_compositions(3, 3).len(), 27);
    }

    #[test]
    fn base_cases() {
        // x[(u)/x] = u
        let s = msubst_term(&rvar("x"), "x", &mono(vec![rvar("u")]));
        assert_eq!(s, Sum::singleton(rvar("u")));
        // y[()/x] = y
        let s = msubst_term(&rvar("y"), "x", &mono(vec![]));
        assert_eq!(s, Sum::singleton(rvar("y")));
        // arity mismatches vanish
        assert!(msubst_term(&rvar("y"), "x", &mono(vec![rvar("u")])).is_zero());
        assert!(msubst_term(&rvar("x"), "x", &mono(vec![])).is_zero());
        assert!(msubst_term(&rvar("x"), "x", &mono(vec![rvar("u"), rvar("v")])).is_zero());
    }

    #[test]
    fn routing_sums_over_permutations() {
        // <x>[x] with [y,z] gives <y>[z] + <z>[y]
        let e = rapp(rvar("x"), vec![rvar("x")]);
        let s = msubst_term(&e, "x", &mono(vec![rvar("y"), rvar("z")]));
        let mut expected = Sum::zero();
        expected.add_term(rapp(rvar("y"), vec![rvar("z")]), nat(1));
        expected.add_term(rapp(rvar("z"), vec![rvar("y")]), nat(1));
        assert_eq!(s, expected);

        // <x>[x] with [y,y] gives 2 <y>[y]
        let s = msubst_term(&e, "x", &mono(vec![rvar("y"), rvar("y")]));
        assert_eq!(s, Sum::with_coeff(rapp(rvar("y"), vec![rvar("y")]), nat(2)));
    }

    #[test]
    fn monomial_routing() {
        // [x,x] with [y,z] gives 2 [y,z]
        let m = mono(vec![rvar("x"), rvar("x")]);
        let s = msubst_mono(&m, "x", &mono(vec![rvar("y"), rvar("z")]));
        assert_eq!(s, Sum::with_coeff(mono(vec![rvar("y"), rvar("z")]), nat(2)));
    }

    #[test]
    fn substitution_respects_binders() {
        // (\w. <x>[w])[ [y] /x] = \w. <y>[w]
        let e = rlam("w", rapp(rvar("x"), vec![rvar("w")]));
        let s = msubst_term(&e, "x", &mono(vec![rvar("y")]));
        assert_eq!(s, Sum::singleton(rlam("w", rapp(rvar("y"), vec![rvar("w")]))));
    }

    #[test]
    fn nonzero_iff_arity_matches() {
        let cases: Vec<(ResTerm, &str, ResMonomial)> = vec![
            (rapp(rvar("x"), vec![rvar("x")]), "x", mono(vec![rvar("y")])),
            (inl(rvar("x")), "x", mono(vec![rvar("y")])),
            (inl(rvar("x")), "x", mono(vec![])),
            (rlam("w", rvar("x")), "x", mono(vec![rvar("y"), rvar("z")])),
        ];
        for (e, x, u) in cases {
            let s = msubst_term(&e, x, &u);
            assert_eq!(s.is_zero(), e.occurrences(x) != u.len(), "{e:?} {u:?}");
        }
    }
}
