//! Finite permutations with the combinators used by the groupoid: tensor
//! (block concatenation), the gathering permutation of a partition,
//! multiplexing, and its inverse decomposition.

use std::fmt;

/// A permutation of `{0..n-1}`, stored as its forward table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    /// Builds a permutation from its forward table; panics if not a bijection.
    pub fn from_table(table: Vec<usize>) -> Perm {
        let n = table.len();
        let mut seen = vec![false; n];
        for &v in &table {
            assert!(v < n && !seen[v], "not a bijection: {table:?}");
            seen[v] = true;
        }
        Perm(table)
    }

    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    /// The transposition swapping `i` and `j` in `S_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(i, j);
        Perm(t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn table(&self) -> &[usize] {
        &self.0
    }

    /// Function composition: `(self.after(first))(i) = self(first(i))`.
    pub fn after(&self, first: &Perm) -> Perm {
        assert_eq!(self.len(), first.len(), "size mismatch in composition");
        Perm(first.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// The left action on sequences: the element at slot `i` moves to slot
    /// `self(i)`, i.e. `act(a)[j] = a[self^-1(j)]`.
    pub fn act<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(self.len(), items.len(), "size mismatch in action");
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (i, item) in items.iter().enumerate() {
            out[self.0[i]] = Some(item.clone());
        }
        out.into_iter().map(Option::unwrap).collect()
    }

    /// All permutations of `S_n`, in lexicographic table order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
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
}

impl fmt::Display for Perm {
    /// One-line notation on `{1..n}`: `[3,1,2]` maps 1 to 3.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

/// Block concatenation: acts as `sigma` on the first block and as `tau`
/// (shifted) on the second.
pub fn tensor(sigma: &Perm, tau: &Perm) -> Perm {
    let n = sigma.len();
    let mut table = Vec::with_capacity(n + tau.len());
    table.extend(sigma.table().iter().copied());
    table.extend(tau.table().iter().map(|&v| v + n));
    Perm(table)
}

pub fn tensor_all(perms: &[Perm]) -> Perm {
    perms
        .iter()
        .fold(Perm::identity(0), |acc, p| tensor(&acc, p))
}

/// The gathering permutation of a tuple of disjoint index sets covering
/// `{0..k-1}`: sends the `l`-th smallest element of the `j`-th set to
/// position `l` within the `j`-th output block.
pub fn gamma(parts: &[Vec<usize>]) -> Perm {
    let k: usize = parts.iter().map(Vec::len).sum();
    let mut table = vec![usize::MAX; k];
    let mut offset = 0;
    for part in parts {
        let mut sorted = part.clone();
        sorted.sort_unstable();
        for (l, &i) in sorted.iter().enumerate() {
            assert!(table[i] == usize::MAX, "parts must be disjoint");
            table[i] = offset + l;
        }
        offset += sorted.len();
    }
    Perm::from_table(table)
}

/// Multiplexing `sigma . (tau_1, ..., tau_n)`: permutes blocks by `sigma`
/// while permuting the contents of block `i` by `tau_i`. Equal to the block
/// symmetry of `sigma` composed after the tensor of the `tau_i`.
pub fn multiplex(sigma: &Perm, taus: &[Perm]) -> Perm {
    assert_eq!(sigma.len(), taus.len(), "one block permutation per block");
    let widths: Vec<usize> = taus.iter().map(Perm::len).collect();
    let k: usize = widths.iter().sum();
    // offset of block j in the target: blocks arrive in sigma order
    let target_offset = |j: usize| -> usize {
        let sj = sigma.apply(j);
        (0..sj).map(|t| widths[sigma.inverse().apply(t)]).sum()
    };
    let mut table = Vec::with_capacity(k);
    for (i, tau) in taus.iter().enumerate() {
        let off = target_offset(i);
        for l in 0..tau.len() {
            table.push(off + tau.apply(l));
        }
    }
    Perm::from_table(table)
}

/// The canonical block symmetry `sigma_{k_1,...,k_n}`: multiplexing with
/// identity block contents.
pub fn block_symmetry(sigma: &Perm, widths: &[usize]) -> Perm {
    let taus: Vec<Perm> = widths.iter().map(|&w| Perm::identity(w)).collect();
    multiplex(sigma, &taus)
}

/// Inverts `(parts, perms) -> tensor(perms) then gamma(parts)`: splits a
/// permutation of `sum(widths)` into the index sets feeding each block and
/// the per-block permutations. Round-trips exactly with [`recompose_perm`].
pub fn decompose_perm(sigma: &Perm, widths: &[usize]) -> (Vec<Vec<usize>>, Vec<Perm>) {
    let k: usize = widths.iter().sum();
    assert_eq!(sigma.len(), k, "widths must sum to the permutation size");
    let mut offsets = Vec::with_capacity(widths.len());
    let mut acc = 0;
    for &w in widths {
        offsets.push(acc);
        acc += w;
    }
    let mut parts = Vec::with_capacity(widths.len());
    let mut perms = Vec::with_capacity(widths.len());
    for (j, &w) in widths.iter().enumerate() {
        let lo = offsets[j];
        let hi = lo + w;
        let mut part: Vec<usize> = (0..k).filter(|&i| (lo..hi).contains(&sigma.apply(i))).collect();
        part.sort_unstable();
        let table: Vec<usize> = part.iter().map(|&i| sigma.apply(i) - lo).collect();
        parts.push(part);
        perms.push(Perm::from_table(table));
    }
    (parts, perms)
}

/// The forward direction of the block decomposition bijection.
pub fn recompose_perm(parts: &[Vec<usize>], perms: &[Perm]) -> Perm {
    tensor_all(perms).after(&gamma(parts))
}

// ---------------------------------------------------------------------------
// Orbits and stabilizers of tuples under the symmetric group action

pub fn orbit<T: Clone + Ord>(items: &[T]) -> std::collections::BTreeSet<Vec<T>> {
    Perm::all(items.len())
        .iter()
        .map(|p| p.act(items))
        .collect()
}

pub fn stabilizer<T: Clone + Eq>(items: &[T]) -> Vec<Perm> {
    Perm::all(items.len())
        .into_iter()
        .filter(|p| p.act(items) == items)
        .collect()
}

/// The product set `{h k : h in hs, k in ks}` (as permutations, `h` after `k`).
pub fn product_set(hs: &[Perm], ks: &[Perm]) -> Vec<Perm> {
    let mut out: Vec<Perm> = Vec::new();
    for h in hs {
        for k in ks {
            let p = h.after(k);
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

pub fn intersection(hs: &[Perm], ks: &[Perm]) -> Vec<Perm> {
    hs.iter().filter(|h| ks.contains(h)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let s = Perm::from_table(vec![2, 0, 1]);
        assert_eq!(s.after(&s.inverse()), Perm::identity(3));
        assert_eq!(s.inverse().after(&s), Perm::identity(3));
        assert_eq!(s.to_string(), "[3,1,2]");
    }

    #[test]
    fn action_moves_slots_forward() {
        // 1 -> 3, 2 -> 1, 3 -> 2 sends (a,b,c) to (b,c,a)
        let s = Perm::from_table(vec![2, 0, 1]);
        assert_eq!(s.act(&['a', 'b', 'c']), vec!['b', 'c', 'a']);
    }

    #[test]
    fn tensor_example() {
        let id2 = Perm::identity(2);
        let swap = Perm::transposition(2, 0, 1);
        let t = tensor(&id2, &swap);
        assert_eq!(t, Perm::from_table(vec![0, 1, 3, 2]));
    }

    #[test]
    fn gamma_example() {
        // parts ({2},{1,3}) of {1..3}: 1->2, 2->1, 3->3 (one-based)
        let g = gamma(&[vec![1], vec![0, 2]]);
        assert_eq!(g, Perm::from_table(vec![1, 0, 2]));
    }

    #[test]
    fn multiplex_example() {
        // swap in S2 over blocks of widths 1 and 2: 1->3, 2->1, 3->2
        let swap = Perm::transposition(2, 0, 1);
        let taus = [Perm::identity(1), Perm::identity(2)];
        let m = multiplex(&swap, &taus);
        assert_eq!(m, Perm::from_table(vec![2, 0, 1]));
    }

    #[test]
    fn multiplex_is_block_symmetry_after_tensor() {
        for sigma in Perm::all(3) {
            let taus = [
                Perm::transposition(2, 0, 1),
                Perm::identity(1),
                Perm::from_table(vec![1, 2, 0]),
            ];
            let widths: Vec<usize> = taus.iter().map(Perm::len).collect();
            let direct = multiplex(&sigma, &taus);
            let composed = block_symmetry(&sigma, &widths).after(&tensor_all(&taus));
            assert_eq!(direct, composed, "sigma = {sigma}");
        }
    }

    #[test]
    fn decompose_example() {
        // 1->3, 2->1, 3->2 with widths (2,1) gives ({2,3},{1}) and identities
        let s = Perm::from_table(vec![2, 0, 1]);
        let (parts, perms) = decompose_perm(&s, &[2, 1]);
        assert_eq!(parts, vec![vec![1, 2], vec![0]]);
        assert_eq!(perms, vec![Perm::identity(2), Perm::identity(1)]);
        assert_eq!(recompose_perm(&parts, &perms), s);

        // identity with widths (1,1)
        let (parts, perms) = decompose_perm(&Perm::identity(2), &[1, 1]);
        assert_eq!(parts, vec![vec![0], vec![1]]);
        assert_eq!(perms, vec![Perm::identity(1), Perm::identity(1)]);
    }

    #[test]
    fn decompose_round_trips_s3() {
        for sigma in Perm::all(3) {
            for widths in [vec![1, 2], vec![2, 1], vec![3], vec![1, 1, 1], vec![0, 3]] {
                let (parts, perms) = decompose_perm(&sigma, &widths);
                assert_eq!(recompose_perm(&parts, &perms), sigma);
            }
        }
    }

    #[test]
    fn orbit_stabilizer_examples() {
        let o = orbit(&['x', 'x']);
        assert_eq!(o.len(), 1);
        assert_eq!(stabilizer(&['x', 'x']).len(), 2);

        assert_eq!(orbit(&['x', 'y']).len(), 2);
        assert_eq!(stabilizer(&['x', 'y']).len(), 1);

        let o = orbit(&['x', 'y', 'x']);
        assert_eq!(o.len(), 3);
        assert_eq!(stabilizer(&['x', 'y', 'x']).len(), 2);
    }
}
