//! Planar binary trees, interned, with the dendriform products on the basis.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock, RwLock};

use super::DendError;
use crate::series::{Graded, PreLieBasis};

struct Node {
    id: u64,
    degree: usize,
    kids: Option<(PlanarBinaryTree, PlanarBinaryTree)>,
    encoding: Box<str>,
}

/// A planar binary tree: the leaf `.` or a vertex `(l r)`.
///
/// The degree is the number of internal vertices. Trees of positive degree
/// form the basis of the free dendriform algebra on one generator; the leaf
/// plays the role of the adjoined unit inside the product recursions only.
#[derive(Clone)]
pub struct PlanarBinaryTree(Arc<Node>);

fn interner() -> &'static RwLock<HashMap<Box<str>, PlanarBinaryTree>> {
    static INTERNER: OnceLock<RwLock<HashMap<Box<str>, PlanarBinaryTree>>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

impl PlanarBinaryTree {
    fn intern(encoding: String, kids: Option<(PlanarBinaryTree, PlanarBinaryTree)>) -> Self {
        if let Some(t) = interner().read().expect("poisoned").get(encoding.as_str()) {
            return t.clone();
        }
        let mut map = interner().write().expect("poisoned");
        if let Some(t) = map.get(encoding.as_str()) {
            return t.clone();
        }
        let degree = kids.as_ref().map_or(0, |(l, r)| 1 + l.degree() + r.degree());
        let encoding: Box<str> = encoding.into();
        let t = PlanarBinaryTree(Arc::new(Node {
            id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
            degree,
            kids,
            encoding: encoding.clone(),
        }));
        map.insert(encoding, t.clone());
        t
    }

    pub fn leaf() -> Self {
        Self::intern(".".to_string(), None)
    }

    /// `l ∨ r`.
    pub fn node(l: PlanarBinaryTree, r: PlanarBinaryTree) -> Self {
        let encoding = format!("({}{})", l.encoding(), r.encoding());
        Self::intern(encoding, Some((l, r)))
    }

    /// The single vertex `(..)`.
    pub fn vertex() -> Self {
        Self::node(Self::leaf(), Self::leaf())
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn is_leaf(&self) -> bool {
        self.0.kids.is_none()
    }

    pub fn children(&self) -> Option<(&PlanarBinaryTree, &PlanarBinaryTree)> {
        self.0.kids.as_ref().map(|(l, r)| (l, r))
    }

    pub fn encoding(&self) -> &str {
        &self.0.encoding
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn parse(s: &str) -> Result<Self, DendError> {
        fn at(b: &[u8], i: usize) -> Option<(PlanarBinaryTree, usize)> {
            match b.get(i)? {
                b'.' => Some((PlanarBinaryTree::leaf(), i + 1)),
                b'(' => {
                    let (l, j) = at(b, i + 1)?;
                    let (r, k) = at(b, j)?;
                    (b.get(k) == Some(&b')')).then(|| (PlanarBinaryTree::node(l, r), k + 1))
                }
                _ => None,
            }
        }
        match at(s.as_bytes(), 0) {
            Some((t, end)) if end == s.len() => Ok(t),
            _ => Err(DendError::Parse(s.to_string())),
        }
    }

    /// Left comb `L_n`: `L_1 = •`, `L_n = L_{n-1} ∨ leaf`.
    pub fn left_comb(n: usize) -> Self {
        (0..n).fold(Self::leaf(), |t, _| Self::node(t, Self::leaf()))
    }

    /// Right comb `R_n`: `R_n = leaf ∨ R_{n-1}`.
    pub fn right_comb(n: usize) -> Self {
        (0..n).fold(Self::leaf(), |t, _| Self::node(Self::leaf(), t))
    }

    /// Labels of the inner leaves (leaves numbered `0..=n` from the left,
    /// excluding `0` and `n`) that are left children of their parent.
    pub fn descent_set(&self) -> Vec<usize> {
        fn walk(t: &PlanarBinaryTree, is_left: bool, next: &mut usize, out: &mut Vec<usize>) {
            match t.children() {
                None => {
                    if is_left {
                        out.push(*next);
                    }
                    *next += 1;
                }
                Some((l, r)) => {
                    walk(l, true, next, out);
                    walk(r, false, next, out);
                }
            }
        }
        let mut out = Vec::new();
        let mut next = 0;
        walk(self, false, &mut next, &mut out);
        let n = self.degree();
        out.retain(|&i| i != 0 && i != n);
        out
    }

    pub fn major_index(&self) -> usize {
        self.descent_set().iter().sum()
    }
}

impl PartialEq for PlanarBinaryTree {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for PlanarBinaryTree {}

impl Hash for PlanarBinaryTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state);
    }
}

impl Ord for PlanarBinaryTree {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0.id == other.0.id {
            return Ordering::Equal;
        }
        self.0.encoding.cmp(&other.0.encoding)
    }
}

impl PartialOrd for PlanarBinaryTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Graded for PlanarBinaryTree {
    fn degree(&self) -> usize {
        self.0.degree
    }
}

impl fmt::Display for PlanarBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.encoding())
    }
}

impl fmt::Debug for PlanarBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanarBinaryTree({})", self.encoding())
    }
}

type Products = Arc<[(PlanarBinaryTree, i64)]>;
type Cache = OnceLock<RwLock<HashMap<(u64, u64), Products>>>;

fn cached(cache: &'static Cache, key: (u64, u64), compute: impl FnOnce() -> Vec<(PlanarBinaryTree, i64)>) -> Products {
    let map = cache.get_or_init(Default::default);
    if let Some(v) = map.read().expect("poisoned").get(&key) {
        return v.clone();
    }
    let v: Products = compute().into();
    map.write().expect("poisoned").entry(key).or_insert(v).clone()
}

fn finish(acc: HashMap<PlanarBinaryTree, i64>) -> Vec<(PlanarBinaryTree, i64)> {
    let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    v
}

/// `x * y = x ≺ y + x ≻ y`, with the leaf acting as the unit.
fn star(x: &PlanarBinaryTree, y: &PlanarBinaryTree) -> Vec<(PlanarBinaryTree, i64)> {
    if x.is_leaf() {
        return vec![(y.clone(), 1)];
    }
    if y.is_leaf() {
        return vec![(x.clone(), 1)];
    }
    let mut acc = HashMap::new();
    for (t, c) in prec(x, y).iter().chain(succ(x, y).iter()) {
        *acc.entry(t.clone()).or_insert(0) += c;
    }
    finish(acc)
}

/// `t ≺ s = t_l ∨ (t_r * s)` for trees of positive degree.
pub fn prec(t: &PlanarBinaryTree, s: &PlanarBinaryTree) -> Products {
    static CACHE: Cache = OnceLock::new();
    cached(&CACHE, (t.id(), s.id()), || {
        let (tl, tr) = t.children().expect("≺ needs a non-unit left operand");
        assert!(!s.is_leaf(), "≺ needs a non-unit right operand");
        star(tr, s).into_iter().map(|(u, c)| (PlanarBinaryTree::node(tl.clone(), u), c)).collect()
    })
}

/// `t ≻ s = (t * s_l) ∨ s_r` for trees of positive degree.
pub fn succ(t: &PlanarBinaryTree, s: &PlanarBinaryTree) -> Products {
    static CACHE: Cache = OnceLock::new();
    cached(&CACHE, (t.id(), s.id()), || {
        let (sl, sr) = s.children().expect("≻ needs a non-unit right operand");
        assert!(!t.is_leaf(), "≻ needs a non-unit left operand");
        star(t, sl).into_iter().map(|(u, c)| (PlanarBinaryTree::node(u, sr.clone()), c)).collect()
    })
}

/// `x ↷ y = y ≻ x - x ≺ y`.
pub fn dend_prelie_basis(x: &PlanarBinaryTree, y: &PlanarBinaryTree) -> Products {
    static CACHE: Cache = OnceLock::new();
    cached(&CACHE, (x.id(), y.id()), || {
        let mut acc = HashMap::new();
        for (t, c) in succ(y, x).iter() {
            *acc.entry(t.clone()).or_insert(0) += c;
        }
        for (t, c) in prec(x, y).iter() {
            *acc.entry(t.clone()).or_insert(0) -= c;
        }
        finish(acc)
    })
}

impl PreLieBasis for PlanarBinaryTree {
    fn generator() -> Self {
        Self::vertex()
    }

    fn prelie(&self, rhs: &Self) -> Products {
        dend_prelie_basis(self, rhs)
    }
}

/// All planar binary trees with `n` internal vertices, sorted by encoding.
pub fn enumerate_pbt(n: usize) -> Vec<PlanarBinaryTree> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<PlanarBinaryTree>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().expect("poisoned").get(&n) {
        return v.as_ref().clone();
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(PlanarBinaryTree::leaf());
    } else {
        for k in 0..n {
            for l in enumerate_pbt(k) {
                for r in enumerate_pbt(n - 1 - k) {
                    out.push(PlanarBinaryTree::node(l.clone(), r));
                }
            }
        }
    }
    out.sort();
    cache.write().expect("poisoned").insert(n, Arc::new(out.clone()));
    out
}
