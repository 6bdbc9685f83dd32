//! Variable references and display hints shared by every term family.
//!
//! All calculi use a nameless (binder-index) representation internally, so
//! alpha-equivalence is plain structural equality and the derived `Ord` is a
//! total structural order (constructor tag first, then children). Binders
//! carry a [`Hint`] with the surface name used when the term was built; hints
//! are display-only and are ignored by `Eq`, `Ord` and `Hash`.

use std::fmt;

/// A variable occurrence: either bound (de Bruijn index of the enclosing
/// binder) or free (named).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarRef {
    Bound(usize),
    Free(String),
}

impl VarRef {
    pub fn free(name: impl Into<String>) -> Self {
        VarRef::Free(name.into())
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarRef::Bound(i) => write!(f, "#{i}"),
            VarRef::Free(n) => write!(f, "{n}"),
        }
    }
}

/// Preferred surface name for a binder. Two hints always compare equal, so
/// terms differing only in bound names are structurally equal.
#[derive(Clone, Debug, Default)]
pub struct Hint(pub String);

impl Hint {
    pub fn new(name: impl Into<String>) -> Self {
        Hint(name.into())
    }

    /// The hint text, falling back to `"x"` when empty.
    pub fn or_default(&self) -> &str {
        if self.0.is_empty() {
            "x"
        } else {
            &self.0
        }
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Hint {}

impl PartialOrd for Hint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hint {
    fn cmp(&self, _: &Self) -> std::cmp::Ordering {
        std::cmp::Ordering::Equal
    }
}

impl std::hash::Hash for Hint {
    fn hash<H: std::hash::Hasher>(&self, _: &mut H) {}
}

/// Picks a name based on `base` that is not in `taken`, appending a numeric
/// suffix if needed.
pub fn fresh_name(base: &str, taken: &dyn Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    for i in 1usize.. {
        let candidate = format!("{base}{i}");
        if !taken(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hints_are_invisible_to_comparison() {
        assert_eq!(Hint::new("x"), Hint::new("y"));
        assert_eq!(Hint::new("x").cmp(&Hint::new("z")), std::cmp::Ordering::Equal);
    }

    #[test]
    fn fresh_name_skips_taken() {
        let taken = |s: &str| s == "x" || s == "x1";
        assert_eq!(fresh_name("x", &taken), "x2");
        assert_eq!(fresh_name("y", &taken), "y");
    }
}
