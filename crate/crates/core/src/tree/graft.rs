//! Grafting: the free pre-Lie product on rooted trees, and its multi-node
//! variants used for substitution into corollas and forks.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RootedTree;
use crate::arith::{binomial, Scalar};
use crate::series::{PreLieBasis, Series};

type Cache<K, V> = OnceLock<RwLock<HashMap<K, Arc<[V]>>>>;

fn cached<K, V>(cache: &'static Cache<K, V>, key: K, compute: impl FnOnce() -> Vec<V>) -> Arc<[V]>
where
    K: std::hash::Hash + Eq,
{
    let map = cache.get_or_init(Default::default);
    if let Some(v) = map.read().expect("poisoned").get(&key) {
        return v.clone();
    }
    let v: Arc<[V]> = compute().into();
    map.write().expect("poisoned").entry(key).or_insert(v).clone()
}

/// Replaces one copy of `old` among the root's children by `new`.
fn replace_child(t: &RootedTree, old: &RootedTree, new: RootedTree) -> RootedTree {
    let mut children = t.children().to_vec();
    let pos = children.iter().position(|c| c == old).expect("child present");
    children[pos] = new;
    RootedTree::new(children)
}

/// `t ↷ s`: attach the root of `s` to each vertex of `t` in turn. Coefficients
/// count the vertices giving the same tree.
pub fn graft(t: &RootedTree, s: &RootedTree) -> Arc<[(RootedTree, i64)]> {
    static CACHE: Cache<(u64, u64), (RootedTree, i64)> = OnceLock::new();
    cached(&CACHE, (t.id(), s.id()), || {
        let mut acc: HashMap<RootedTree, i64> = HashMap::new();
        let mut children = t.children().to_vec();
        children.push(s.clone());
        *acc.entry(RootedTree::new(children)).or_default() += 1;
        for (c, m) in t.child_classes() {
            for (r, k) in graft(&c, s).iter() {
                *acc.entry(replace_child(t, &c, r.clone())).or_default() += m as i64 * k;
            }
        }
        let mut v: Vec<_> = acc.into_iter().collect();
        v.sort();
        v
    })
}

impl PreLieBasis for RootedTree {
    fn generator() -> Self {
        RootedTree::leaf()
    }

    fn prelie(&self, rhs: &Self) -> Arc<[(Self, i64)]> {
        graft(self, rhs)
    }
}

/// Sum over all functions from `{1..n}` to the vertices of `t` of `t` with a
/// new leaf attached at each image vertex. New leaves never receive
/// attachments. The total multiplicity is `#t^n`.
pub fn multi_node_graft(t: &RootedTree, n: usize) -> Arc<[(RootedTree, BigInt)]> {
    static CACHE: Cache<(u64, usize), (RootedTree, BigInt)> = OnceLock::new();
    cached(&CACHE, (t.id(), n), || {
        let mut acc: HashMap<RootedTree, BigInt> = HashMap::new();
        let children = t.children();
        for k in 0..=n {
            let root_ways = binomial(n, k);
            let mut partial: Vec<(Vec<RootedTree>, BigInt)> = vec![(vec![RootedTree::leaf(); k], root_ways)];
            // Spread the remaining n - k labelled leaves over the children.
            let mut left: Vec<usize> = vec![n - k];
            for (i, c) in children.iter().enumerate() {
                let last = i + 1 == children.len();
                let mut next = Vec::new();
                let mut next_left = Vec::new();
                for ((kids, w), &rem) in partial.iter().zip(&left) {
                    let range = if last { rem..=rem } else { 0..=rem };
                    for j in range {
                        for (r, m) in multi_node_graft(c, j).iter() {
                            let mut kids = kids.clone();
                            kids.push(r.clone());
                            next.push((kids, w * binomial(rem, j) * m));
                            next_left.push(rem - j);
                        }
                    }
                }
                partial = next;
                left = next_left;
            }
            for ((kids, w), rem) in partial.into_iter().zip(left) {
                if rem == 0 {
                    *acc.entry(RootedTree::new(kids)).or_insert_with(BigInt::zero) += w;
                }
            }
        }
        let mut v: Vec<_> = acc.into_iter().collect();
        v.sort();
        v
    })
}

/// Sum over all functions from the (labelled) `items` to the vertices of `t`
/// of `t` with each item's root attached at its image vertex.
pub fn attach_all(t: &RootedTree, items: &[RootedTree]) -> HashMap<RootedTree, BigInt> {
    let mut acc = HashMap::new();
    if items.is_empty() {
        acc.insert(t.clone(), BigInt::one());
        return acc;
    }
    let children = t.children();
    let slots = children.len() + 1;
    let mut choice = vec![0usize; items.len()];
    loop {
        // slot 0 is the root, slot i + 1 the i-th child subtree.
        let mut at_root: Vec<RootedTree> = Vec::new();
        let mut per_child: Vec<Vec<RootedTree>> = vec![Vec::new(); children.len()];
        for (item, &c) in items.iter().zip(&choice) {
            if c == 0 {
                at_root.push(item.clone());
            } else {
                per_child[c - 1].push(item.clone());
            }
        }
        let mut partial: Vec<(Vec<RootedTree>, BigInt)> = vec![(at_root, BigInt::one())];
        for (c, its) in children.iter().zip(&per_child) {
            let sub = attach_all(c, its);
            partial = partial
                .iter()
                .flat_map(|(kids, w)| {
                    sub.iter().map(move |(r, m)| {
                        let mut kids = kids.clone();
                        kids.push(r.clone());
                        (kids, w * m)
                    })
                })
                .collect();
        }
        for (kids, w) in partial {
            *acc.entry(RootedTree::new(kids)).or_insert_with(BigInt::zero) += w;
        }
        // next function in base `slots`
        let mut i = 0;
        loop {
            if i == choice.len() {
                return acc;
            }
            choice[i] += 1;
            if choice[i] < slots {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Substitutes each term of `s` at the marked vertex of a fork with `trunk`
/// trunk vertices and `leaves` leaves: the leaves are attached to the term in
/// all ways (counted as functions) and the result sits on the trunk.
pub fn fork_substitute<C: Scalar>(trunk: usize, leaves: usize, s: &Series<RootedTree, C>) -> Series<RootedTree, C> {
    let order = s.order();
    let mut out = Series::new(order);
    for (t, c) in s.iter() {
        if t.degree() + trunk + leaves > order {
            continue;
        }
        for (r, m) in multi_node_graft(t, leaves).iter() {
            out.add_term(r.on_trunk(trunk), &c.scale(&BigRational::from_integer(m.clone())));
        }
    }
    out
}
