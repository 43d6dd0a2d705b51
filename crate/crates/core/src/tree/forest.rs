//! Forests: the canonical basis of the enveloping algebra, with the ⋆-product
//! and the projection onto trees.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{attach_all, RootedTree, TreeError};
use crate::arith::Scalar;
use crate::series::{Graded, Series};

/// A multiset of rooted trees, kept sorted by degree and then encoding. The
/// empty forest is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest {
    trees: Vec<RootedTree>,
}

pub type TreeSeries<C> = Series<RootedTree, C>;
pub type ForestSeries<C> = Series<Forest, C>;

impl Forest {
    pub fn new(mut trees: Vec<RootedTree>) -> Self {
        trees.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        Self { trees }
    }

    pub fn empty() -> Self {
        Self { trees: Vec::new() }
    }

    pub fn from_tree(t: RootedTree) -> Self {
        Self { trees: vec![t] }
    }

    /// `n` isolated vertices.
    pub fn nodes(n: usize) -> Self {
        Self { trees: vec![RootedTree::leaf(); n] }
    }

    pub fn trees(&self) -> &[RootedTree] {
        &self.trees
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// The tree, if the forest has exactly one component.
    pub fn as_tree(&self) -> Option<&RootedTree> {
        match self.trees.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    /// `"{" + comma-joined sorted tree encodings + "}"`.
    pub fn encoding(&self) -> String {
        let parts: Vec<&str> = self.trees.iter().map(RootedTree::encoding).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn parse(s: &str) -> Result<Self, TreeError> {
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| TreeError::Parse(s.to_string()))?;
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let trees = inner.split(',').map(RootedTree::parse).collect::<Result<_, _>>()?;
        Ok(Self::new(trees))
    }
}

impl Graded for Forest {
    fn degree(&self) -> usize {
        self.trees.iter().map(RootedTree::degree).sum()
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest({})", self.encoding())
    }
}

/// `f ⋆ g`: sum over every way of sending each root of `g` either nowhere or to
/// a vertex of `f`, with an edge added for each sent root.
pub fn star_product(f: &Forest, g: &Forest) -> HashMap<Forest, BigInt> {
    let mut acc: HashMap<Forest, BigInt> = HashMap::new();
    let k = f.trees.len();
    let slots = k + 1;
    let mut choice = vec![0usize; g.trees.len()];
    loop {
        // slot 0 leaves the component of g free; slot j + 1 targets f's j-th tree
        let mut free: Vec<RootedTree> = Vec::new();
        let mut assigned: Vec<Vec<RootedTree>> = vec![Vec::new(); k];
        for (tree, &c) in g.trees.iter().zip(&choice) {
            if c == 0 {
                free.push(tree.clone());
            } else {
                assigned[c - 1].push(tree.clone());
            }
        }
        let mut partial: Vec<(Vec<RootedTree>, BigInt)> = vec![(free, BigInt::one())];
        for (t, items) in f.trees.iter().zip(&assigned) {
            let sub = attach_all(t, items);
            partial = partial
                .iter()
                .flat_map(|(trees, w)| {
                    sub.iter().map(move |(r, m)| {
                        let mut trees = trees.clone();
                        trees.push(r.clone());
                        (trees, w * m)
                    })
                })
                .collect();
        }
        for (trees, w) in partial {
            *acc.entry(Forest::new(trees)).or_insert_with(BigInt::zero) += w;
        }
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

/// Bilinear ⋆-product of forest series, truncated at `order`.
pub fn star_series<C: Scalar>(x: &ForestSeries<C>, y: &ForestSeries<C>, order: usize) -> ForestSeries<C> {
    let mut out = Series::new(order);
    for (f, cf) in x.iter() {
        for (g, cg) in y.iter() {
            if f.degree() + g.degree() > order {
                continue;
            }
            let c = cf.mul_ref(cg);
            for (h, m) in star_product(f, g) {
                out.add_term(h, &c.scale(&BigRational::from_integer(m)));
            }
        }
    }
    out
}

/// Embeds trees as single-component forests.
pub fn trees_as_forests<C: Scalar>(s: &TreeSeries<C>) -> ForestSeries<C> {
    Series::from_terms(s.order(), s.iter().map(|(t, c)| (Forest::from_tree(t.clone()), c.clone())))
}

/// Keeps the single-tree terms, killing the unit and all other forests.
pub fn project_pi<C: Scalar>(s: &ForestSeries<C>) -> TreeSeries<C> {
    Series::from_terms(
        s.order(),
        s.iter().filter_map(|(f, c)| f.as_tree().map(|t| (t.clone(), c.clone()))),
    )
}

/// `Σ_{k≥0} s^{⋆k} / k!`, truncated at `order`. `s` must have no degree-0
/// part.
pub fn exp_forest<C: Scalar>(s: &TreeSeries<C>, order: usize) -> ForestSeries<C> {
    let s = trees_as_forests(&s.truncate(order));
    let mut out: ForestSeries<C> = Series::basis(Forest::empty(), order);
    let mut power: ForestSeries<C> = Series::basis(Forest::empty(), order);
    let mut fact = BigRational::one();
    for k in 1..=order {
        power = star_series(&power, &s, order);
        if power.is_empty() {
            break;
        }
        fact *= BigRational::from_integer(k.into());
        out.add_assign(&power.scale_rational(&fact.recip()));
    }
    out
}
