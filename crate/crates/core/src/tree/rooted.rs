//! Unordered rooted trees, hash-consed so that isomorphic trees share one
//! allocation.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use super::TreeError;
use crate::arith::factorial;
use crate::series::Graded;

struct Node {
    id: u64,
    degree: usize,
    children: Vec<RootedTree>,
    encoding: Box<str>,
}

/// An isomorphism class of rooted trees.
///
/// Children are kept sorted by canonical encoding. Every class is interned,
/// so equality and hashing compare a single id.
#[derive(Clone)]
pub struct RootedTree(Arc<Node>);

fn interner() -> &'static RwLock<HashMap<Box<str>, RootedTree>> {
    static INTERNER: OnceLock<RwLock<HashMap<Box<str>, RootedTree>>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

impl RootedTree {
    /// The tree whose root carries the given subtrees.
    pub fn new(mut children: Vec<RootedTree>) -> Self {
        children.sort();
        let len: usize = children.iter().map(|c| c.0.encoding.len()).sum();
        let mut encoding = String::with_capacity(len + 2);
        encoding.push('[');
        for c in &children {
            encoding.push_str(&c.0.encoding);
        }
        encoding.push(']');

        if let Some(t) = interner().read().expect("poisoned").get(encoding.as_str()) {
            return t.clone();
        }
        let mut map = interner().write().expect("poisoned");
        if let Some(t) = map.get(encoding.as_str()) {
            return t.clone();
        }
        let degree = 1 + children.iter().map(|c| c.0.degree).sum::<usize>();
        let encoding: Box<str> = encoding.into();
        let t = RootedTree(Arc::new(Node {
            id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
            degree,
            children,
            encoding: encoding.clone(),
        }));
        map.insert(encoding, t.clone());
        t
    }

    /// The single vertex.
    pub fn leaf() -> Self {
        Self::new(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.0.children
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    /// `"[" + sorted child encodings + "]"`.
    pub fn encoding(&self) -> &str {
        &self.0.encoding
    }

    /// Unique per isomorphism class within this process.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    /// Parses a bracket encoding; children may appear in any order.
    pub fn parse(s: &str) -> Result<Self, TreeError> {
        let bytes = s.as_bytes();
        let (t, end) = Self::parse_at(bytes, 0).ok_or_else(|| TreeError::Parse(s.to_string()))?;
        if end != bytes.len() {
            return Err(TreeError::Parse(s.to_string()));
        }
        Ok(t)
    }

    fn parse_at(b: &[u8], mut i: usize) -> Option<(Self, usize)> {
        if b.get(i) != Some(&b'[') {
            return None;
        }
        i += 1;
        let mut children = Vec::new();
        while b.get(i) == Some(&b'[') {
            let (c, j) = Self::parse_at(b, i)?;
            children.push(c);
            i = j;
        }
        (b.get(i) == Some(&b']')).then(|| (Self::new(children), i + 1))
    }

    /// Builds a tree from the number of children of each vertex in preorder,
    /// e.g. `"21010"` is a root with two children, each carrying one leaf.
    pub fn from_arity_sequence(s: &str) -> Result<Self, TreeError> {
        let arities: Option<Vec<usize>> = s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect();
        let arities = arities.ok_or_else(|| TreeError::Parse(s.to_string()))?;
        fn build(a: &[usize], pos: &mut usize) -> Option<RootedTree> {
            let k = *a.get(*pos)?;
            *pos += 1;
            let children = (0..k).map(|_| build(a, pos)).collect::<Option<Vec<_>>>()?;
            Some(RootedTree::new(children))
        }
        let mut pos = 0;
        match build(&arities, &mut pos) {
            Some(t) if pos == arities.len() => Ok(t),
            _ => Err(TreeError::Parse(s.to_string())),
        }
    }

    /// Root with `n - 1` leaf children.
    pub fn corolla(n: usize) -> Self {
        assert!(n >= 1, "corolla needs at least one vertex");
        Self::new(vec![Self::leaf(); n - 1])
    }

    /// Chain of `n` vertices.
    pub fn linear(n: usize) -> Self {
        assert!(n >= 1, "linear tree needs at least one vertex");
        (1..n).fold(Self::leaf(), |t, _| Self::new(vec![t]))
    }

    /// Places `self` on top of a chain of `trunk` vertices; the root of the
    /// result is the bottom of the chain.
    pub fn on_trunk(&self, trunk: usize) -> Self {
        (0..trunk).fold(self.clone(), |t, _| Self::new(vec![t]))
    }

    /// Trunk of `trunk` vertices, one vertex above it, and `leaves` leaves on
    /// that vertex. Degree `trunk + 1 + leaves`.
    pub fn fork(trunk: usize, leaves: usize) -> Self {
        Self::corolla(leaves + 1).on_trunk(trunk)
    }

    /// Order of the automorphism group: product over vertices of `m!` for
    /// each multiplicity `m` of identical child subtrees.
    pub fn aut_count(&self) -> BigInt {
        let mut acc = BigInt::one();
        let children = self.children();
        let mut i = 0;
        while i < children.len() {
            let j = children[i..].iter().take_while(|c| **c == children[i]).count();
            acc *= factorial(j) * children[i].aut_count().pow(j as u32);
            i += j;
        }
        acc
    }

    /// Children grouped as `(subtree, multiplicity)` in canonical order.
    pub fn child_classes(&self) -> Vec<(RootedTree, usize)> {
        let mut out: Vec<(RootedTree, usize)> = Vec::new();
        for c in self.children() {
            match out.last_mut() {
                Some((t, m)) if t == c => *m += 1,
                _ => out.push((c.clone(), 1)),
            }
        }
        out
    }
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for RootedTree {}

impl Hash for RootedTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state);
    }
}

/// Lexicographic order of canonical encodings.
impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0.id == other.0.id {
            return Ordering::Equal;
        }
        self.0.encoding.cmp(&other.0.encoding)
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Graded for RootedTree {
    fn degree(&self) -> usize {
        self.0.degree
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.encoding())
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedTree({})", self.encoding())
    }
}

/// All rooted trees with `n` vertices, sorted by canonical encoding.
pub fn enumerate_trees(n: usize) -> Vec<RootedTree> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<RootedTree>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().expect("poisoned").get(&n) {
        return v.as_ref().clone();
    }
    let mut out = Vec::new();
    if n >= 1 {
        // Children multisets as non-increasing sequences over the list of all
        // smaller trees, ordered by (degree, encoding).
        let pool: Vec<RootedTree> = (1..n).flat_map(enumerate_trees).collect();
        let mut stack = Vec::new();
        children_multisets(&pool, pool.len(), n - 1, &mut stack, &mut out);
    }
    out.sort();
    cache.write().expect("poisoned").insert(n, Arc::new(out.clone()));
    out
}

fn children_multisets(
    pool: &[RootedTree],
    bound: usize,
    remaining: usize,
    stack: &mut Vec<RootedTree>,
    out: &mut Vec<RootedTree>,
) {
    if remaining == 0 {
        out.push(RootedTree::new(stack.clone()));
        return;
    }
    for i in 0..bound {
        let d = pool[i].degree();
        if d <= remaining {
            stack.push(pool[i].clone());
            children_multisets(pool, i + 1, remaining - d, stack, out);
            stack.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodings() {
        assert_eq!(RootedTree::leaf().encoding(), "[]");
        assert_eq!(RootedTree::linear(3).encoding(), "[[[]]]");
        assert_eq!(RootedTree::corolla(3).encoding(), "[[][]]");
        let t = RootedTree::parse("[[][[]]]").unwrap();
        assert_eq!(t, RootedTree::parse("[[[]][]]").unwrap());
        assert_eq!(t.encoding(), "[[[]][]]");
        assert!(RootedTree::parse("[[]").is_err());
        assert!(RootedTree::parse("[]]").is_err());
        assert!(RootedTree::parse("").is_err());
    }

    #[test]
    fn arity_sequences() {
        assert_eq!(RootedTree::from_arity_sequence("0").unwrap(), RootedTree::leaf());
        assert_eq!(RootedTree::from_arity_sequence("110").unwrap(), RootedTree::linear(3));
        assert_eq!(RootedTree::from_arity_sequence("40000").unwrap(), RootedTree::corolla(5));
        assert_eq!(RootedTree::from_arity_sequence("1200").unwrap(), RootedTree::fork(1, 2));
        assert!(RootedTree::from_arity_sequence("21").is_err());
        assert!(RootedTree::from_arity_sequence("100").is_err());
    }

    #[test]
    fn special_trees() {
        assert_eq!(RootedTree::corolla(1), RootedTree::leaf());
        assert_eq!(RootedTree::linear(1), RootedTree::leaf());
        for n in 0..6 {
            assert_eq!(RootedTree::fork(0, n), RootedTree::corolla(n + 1));
        }
        let f = RootedTree::fork(4, 5);
        assert_eq!(f.degree(), 10);
        assert_eq!(f, RootedTree::corolla(6).on_trunk(4));
        assert_eq!(RootedTree::fork(0, 0), RootedTree::leaf());
    }

    #[test]
    fn automorphisms() {
        for n in 1..8 {
            assert_eq!(RootedTree::linear(n).aut_count(), BigInt::one());
        }
        assert_eq!(RootedTree::corolla(3).aut_count(), BigInt::from(2));
        assert_eq!(RootedTree::corolla(5).aut_count(), BigInt::from(24));
        // root with two children, each a 2-chain: swap them
        assert_eq!(RootedTree::from_arity_sequence("21010").unwrap().aut_count(), BigInt::from(2));
        // root with two copies of a 3-corolla: 2! * 2^2
        assert_eq!(RootedTree::parse("[[[][]][[][]]]").unwrap().aut_count(), BigInt::from(8));
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let counts: Vec<usize> = (1..=8).map(|n| enumerate_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48, 115]);
        for n in 1..=7 {
            let v = enumerate_trees(n);
            assert!(v.windows(2).all(|w| w[0].encoding() < w[1].encoding()));
            assert!(v.iter().all(|t| t.degree() == n));
        }
    }
}
