//! Named verification checks, each comparing two independent computations of
//! the same object and reporting the first disagreement.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::arith::{bernoulli, factorial, Scalar, Valuation};
use crate::dend::{
    axiom_failure, comb_inverse_residual, enumerate_pbt, omega_q_dend_explicit, omega_q_dend_recursive, verify_eb,
    PlanarBinaryTree,
};
use crate::omega::{
    carlitz_oracle, denominator_check, extract_carlitz, extract_qlog, omega_classical, omega_infinity,
    omega_infinity_from, omega_pair, omega_q, omega_q_via_forks, qlog_coefficient, specialize, vector_field_image,
    InfinityMode, Point,
};
use crate::series::{exp_star_action, prelie, Graded, PreLieBasis, Series};
use crate::tree::{enumerate_trees, exp_forest, project_pi, Forest, RootedTree, TreeSeries};

/// Registered checks with their default orders.
pub const CHECKS: [(&str, usize); 14] = [
    ("prelie-axiom", 6),
    ("pi-exp", 6),
    ("exp-star", 8),
    ("exp-omega-forest", 8),
    ("fork-equivalence", 6),
    ("dend-formula", 7),
    ("q1-specialization", 8),
    ("denominators", 8),
    ("infinity", 8),
    ("carlitz", 8),
    ("qlog", 8),
    ("comb-inverse", 10),
    ("EB", 10),
    ("vector-field", 6),
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("order must be at least 1")]
    ZeroOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub order: usize,
    pub passed: bool,
    pub details: Vec<String>,
    pub counterexample: Option<String>,
}

impl CheckReport {
    fn new(name: &str, order: usize) -> Self {
        Self { name: name.to_string(), order, passed: true, details: Vec::new(), counterexample: None }
    }

    fn fail(&mut self, what: impl Into<String>) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(what.into());
        }
    }

    fn expect(&mut self, diff: Option<String>, context: &str) {
        if let Some(d) = diff {
            self.fail(format!("{context}: {d}"));
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {} (order {})", self.name, self.order)?;
        for d in &self.details {
            writeln!(f, "  {d}")?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "  first counterexample: {c}")?;
        }
        Ok(())
    }
}

pub fn default_order(name: &str) -> Option<usize> {
    CHECKS.iter().find(|(n, _)| *n == name).map(|(_, o)| *o)
}

/// Runs the named check; `order` defaults to the registered one.
pub fn run_check(name: &str, order: Option<usize>) -> Result<CheckReport, VerifyError> {
    let order = match (default_order(name), order) {
        (None, _) => return Err(VerifyError::UnknownCheck(name.to_string())),
        (Some(_), Some(0)) => return Err(VerifyError::ZeroOrder),
        (Some(_), Some(n)) | (Some(n), None) => n,
    };
    let mut r = CheckReport::new(name, order);
    match name {
        "prelie-axiom" => prelie_axiom(&mut r),
        "pi-exp" => pi_exp(&mut r),
        "exp-star" => {
            let om = omega_classical::<RootedTree>(order);
            let dot = Series::basis(RootedTree::leaf(), order);
            r.expect(first_difference(&exp_star_action(&om, order), &dot), "exp*(Ω) vs •");
        }
        "exp-omega-forest" => {
            let om = omega_classical::<RootedTree>(order);
            let nodes = Series::from_terms(
                order,
                (0..=order).map(|n| (Forest::nodes(n), BigRational::new(BigInt::one(), factorial(n)))),
            );
            r.expect(first_difference(&exp_forest(&om, order), &nodes), "exp(Ω) vs Σ {n nodes}/n!");
        }
        "fork-equivalence" => {
            let a = omega_q::<RootedTree>(order);
            r.details.push(format!("{} terms compared", a.len()));
            r.expect(first_difference(&a, &omega_q_via_forks(order)), "recursion vs forks");
        }
        "dend-formula" => {
            let a = omega_q_dend_recursive(order);
            r.details.push(format!("{} terms compared", a.body().len()));
            r.expect(first_difference(a.body(), omega_q_dend_explicit(order).body()), "recursive vs explicit");
        }
        "q1-specialization" => {
            let (om, oq) = omega_pair::<RootedTree>(order);
            match specialize(&oq, Point::One) {
                Ok(at1) => r.expect(first_difference(&at1, &om), "Ω_q(1) vs Ω"),
                Err(e) => r.fail(e.to_string()),
            }
        }
        "denominators" => denominators(&mut r),
        "infinity" => infinity(&mut r),
        "carlitz" => {
            let oq = omega_q::<RootedTree>(order);
            let got = extract_carlitz(&oq);
            let want = carlitz_oracle(order);
            for (n, (g, w)) in got.iter().zip(&want).enumerate() {
                r.details.push(format!("beta_{n} = {g}"));
                if g != w {
                    r.fail(format!("beta_{n}: extracted {g}, umbral recursion {w}"));
                }
                match g.eval_at(&BigRational::one()) {
                    Ok(v) if v == bernoulli(n) => {}
                    Ok(v) => r.fail(format!("beta_{n}(1) = {v}, B_{n} = {}", bernoulli(n))),
                    Err(e) => r.fail(format!("beta_{n}: {e}")),
                }
            }
        }
        "qlog" => {
            let oq = omega_q::<RootedTree>(order);
            for (i, c) in extract_qlog(&oq).iter().enumerate() {
                let want = qlog_coefficient(i + 1);
                if *c != want {
                    r.fail(format!("x^{}: {c} vs {want}", i + 1));
                }
            }
        }
        "comb-inverse" => {
            let res = comb_inverse_residual(order);
            if !res.is_zero() {
                let (t, c) = res.sorted_terms().remove(0);
                r.fail(format!("(1 - su L) * (1 + R) - 1 has {c} on {t}"));
            }
        }
        "EB" => {
            for check in verify_eb(order) {
                r.details.push(format!("{}: {}", check.name, if check.passed() { "ok" } else { "fails" }));
                if let Some(d) = check.first_failing_degree {
                    r.fail(format!("{} first fails in degree {d}", check.name));
                }
            }
        }
        "vector-field" => {
            let om = omega_classical::<RootedTree>(order);
            if let Err(e) = vector_field_image(&om) {
                r.fail(format!("Ω: {e}"));
            }
            for seed in 0..10 {
                if let Err(e) = vector_field_image(&random_tree_series(seed, order)) {
                    r.fail(format!("random series {seed}: {e}"));
                }
            }
        }
        _ => unreachable!("registered above"),
    }
    Ok(r)
}

/// The first basis element, in (degree, encoding) order, on which two series
/// differ.
pub fn first_difference<B, C>(a: &Series<B, C>, b: &Series<B, C>) -> Option<String>
where
    B: Graded + Clone + Eq + Hash + Ord + fmt::Display,
    C: Scalar + fmt::Display,
{
    let mut keys: Vec<&B> = a.iter().map(|(k, _)| k).chain(b.iter().map(|(k, _)| k)).collect();
    keys.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.cmp(y)));
    keys.dedup();
    keys.into_iter().find_map(|k| {
        let (x, y) = (a.coeff(k), b.coeff(k));
        (x != y).then(|| format!("{k}: {x} vs {y}"))
    })
}

/// A reproducible series with random small rational coefficients on about
/// half of the trees of degree `1..=order`.
pub fn random_tree_series(seed: u64, order: usize) -> TreeSeries<BigRational> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut s = Series::new(order);
    for t in (1..=order).flat_map(enumerate_trees) {
        if rng.gen_bool(0.5) {
            let num: i64 = rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let den: i64 = rng.gen_range(1..=4);
            s.add_term(t, &BigRational::new(num.into(), den.into()));
        }
    }
    s
}

fn associator_asymmetry<B: PreLieBasis>(a: &B, b: &B, c: &B) -> bool {
    let n = a.degree() + b.degree() + c.degree();
    let one = |t: &B| Series::<B, BigRational>::basis(t.clone(), n);
    let (x, y, z) = (one(a), one(b), one(c));
    let assoc = |y: &Series<B, BigRational>, z: &Series<B, BigRational>| {
        prelie(&prelie(&x, y, n), z, n).sub(&prelie(&x, &prelie(y, z, n), n))
    };
    assoc(&y, &z) != assoc(&z, &y)
}

fn triples<B: Clone>(pool: &[(usize, B)], max: usize) -> Vec<(B, B, B)> {
    let mut out = Vec::new();
    for (da, a) in pool {
        for (db, b) in pool {
            for (dc, c) in pool {
                if da + db + dc <= max {
                    out.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    out
}

fn prelie_axiom(r: &mut CheckReport) {
    let max = r.order;
    let trees: Vec<_> = (1..=max.saturating_sub(2)).flat_map(enumerate_trees).map(|t| (t.degree(), t)).collect();
    let rooted = triples(&trees, max);
    if let Some((a, b, c)) = rooted.iter().find(|(a, b, c)| associator_asymmetry(a, b, c)) {
        r.fail(format!("grafting on ({a}, {b}, {c})"));
    }
    let pbt: Vec<_> = (1..=max.saturating_sub(2)).flat_map(enumerate_pbt).map(|t| (t.degree(), t)).collect();
    let planar: Vec<(PlanarBinaryTree, PlanarBinaryTree, PlanarBinaryTree)> = triples(&pbt, max);
    if let Some((a, b, c, why)) = planar.iter().find_map(|(a, b, c)| axiom_failure(a, b, c).map(|w| (a, b, c, w))) {
        r.fail(format!("dendriform identity {why} on ({a}, {b}, {c})"));
    }
    r.details.push(format!("{} rooted-tree triples, {} planar binary triples", rooted.len(), planar.len()));
}

fn pi_exp(r: &mut CheckReport) {
    let order = r.order;
    for seed in 0..20 {
        let s = random_tree_series(seed, order);
        let lhs = project_pi(&exp_forest(&s, order));
        r.expect(first_difference(&lhs, &exp_star_action(&s, order)), &format!("random series {seed}"));
    }
    r.details.push("20 random series".to_string());
}

fn factor_string(factors: &BTreeMap<usize, u32>) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|(d, e)| if *e == 1 { format!("Phi{d}") } else { format!("Phi{d}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn denominators(r: &mut CheckReport) {
    let oq = omega_q::<RootedTree>(r.order);
    let report = denominator_check(&oq);
    let mut per_degree: BTreeMap<usize, (usize, BTreeMap<usize, u32>)> = BTreeMap::new();
    for row in &report.rows {
        let entry = per_degree.entry(row.degree).or_default();
        entry.0 += 1;
        match &row.factors {
            Some(fs) => {
                for &(d, e) in fs {
                    let slot = entry.1.entry(d).or_insert(0);
                    *slot = (*slot).max(e);
                }
            }
            None => r.fail(format!("{}: denominator is not a product of cyclotomics", row.term)),
        }
    }
    r.details.push(format!("{:<7} {:>6}  {:<40} bound", "degree", "terms", "lcm of denominators"));
    for (n, (count, lcm)) in &per_degree {
        let bound: BTreeMap<usize, u32> = (2..=*n).map(|d| (d, 1)).collect();
        r.details.push(format!("{n:<7} {count:>6}  {:<40} {}", factor_string(lcm), factor_string(&bound)));
    }
    if let Some(row) = report.first_violation() {
        r.fail(format!("{} (degree {}) has denominator exceeding the bound", row.term, row.degree));
    }
}

fn infinity(r: &mut CheckReport) {
    let oq = omega_q::<RootedTree>(r.order);
    for (t, c) in oq.sorted_terms() {
        let need = t.degree() as i64 - 1;
        match c.infinity_valuation() {
            Valuation::Finite(v) if v < need => {
                r.fail(format!("{t}: valuation {v} below {need}"));
            }
            _ => {}
        }
    }
    match (omega_infinity_from(&oq), omega_infinity(r.order, InfinityMode::ClosedForm)) {
        (Ok(lim), Ok(closed)) => r.expect(first_difference(&lim, &closed), "limit vs closed form"),
        (Err(e), _) | (_, Err(e)) => r.fail(e.to_string()),
    }
}
