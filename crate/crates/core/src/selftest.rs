//! Seeded exact property suites and the random generators behind them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::factorization::{build_matrix_a, elementary_symmetric_all, identity, inverse_b, mat_mul};
use crate::symbol::{
    left_from_weyl, rat, weyl_from_left, BivariatePoly, DiffOperator, GaussianRational, UniPoly, XPoly,
};

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_CASES: usize = 200;

/// Gaussian rational with numerators in `[−5, 5]` and denominators in `[1, 4]`.
pub fn random_gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    let re = rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
    let im = if rng.gen_bool(0.5) { rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)) } else { rat(0, 1) };
    GaussianRational::new(re, im)
}

/// Nonzero symbol with at most eight terms of total degree `≤ max_degree`.
pub fn random_symbol<R: Rng>(rng: &mut R, max_degree: u32) -> BivariatePoly {
    loop {
        let terms = rng.gen_range(1..=8);
        let p = BivariatePoly::from_terms((0..terms).map(|_| {
            let total = rng.gen_range(0..=max_degree);
            let alpha = rng.gen_range(0..=total);
            ((alpha, total - alpha), random_gaussian(rng))
        }));
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_xpoly<R: Rng>(rng: &mut R, max_degree: usize) -> XPoly {
    UniPoly::new((0..=rng.gen_range(0..=max_degree)).map(|_| random_gaussian(rng)).collect())
}

pub fn random_operator<R: Rng>(rng: &mut R, max_order: usize, max_degree: usize) -> DiffOperator {
    DiffOperator::new((0..=rng.gen_range(0..=max_order)).map(|_| random_xpoly(rng, max_degree)).collect())
}

/// `n` pairwise distinct Gaussian rationals.
pub fn random_nodes<R: Rng>(rng: &mut R, n: usize) -> Vec<GaussianRational> {
    let mut out: Vec<GaussianRational> = Vec::with_capacity(n);
    while out.len() < n {
        let g = random_gaussian(rng);
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub seed: u64,
    pub cases: usize,
    pub properties: Vec<PropertyOutcome>,
    /// SHA-256 of every generated case, in order.
    pub digest: String,
}

impl SelftestReport {
    pub fn all_hold(&self) -> bool {
        self.properties.iter().all(|p| p.failures == 0)
    }
}

struct Suite {
    hasher: Sha256,
    outcomes: Vec<PropertyOutcome>,
}

impl Suite {
    fn run<R: Rng>(
        &mut self,
        name: &'static str,
        cases: usize,
        rng: &mut R,
        mut case: impl FnMut(&mut R) -> (String, bool),
    ) {
        let mut out = PropertyOutcome { name, cases, failures: 0, first_failure: None };
        for _ in 0..cases {
            let (text, ok) = case(rng);
            self.hasher.update(name.as_bytes());
            self.hasher.update(text.as_bytes());
            self.hasher.update(b"\n");
            if !ok {
                out.failures += 1;
                out.first_failure.get_or_insert(text);
            }
        }
        self.outcomes.push(out);
    }
}

/// Run every property `cases` times from `seed`.
pub fn selftest(seed: u64, cases: usize) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = Suite { hasher: Sha256::new(), outcomes: Vec::new() };

    suite.run("quantization round-trip", cases, &mut rng, |r| {
        let p = random_symbol(r, 8);
        let ok = left_from_weyl(&weyl_from_left(&p)) == p && weyl_from_left(&left_from_weyl(&p)) == p;
        (p.to_string(), ok)
    });

    suite.run("interpolation inverse", cases, &mut rng, |r| {
        let r1 = r.gen_range(0..=4);
        let r2 = r.gen_range(if r1 == 0 { 1 } else { 0 }..=4);
        let xs = random_nodes(r, r1 + r2);
        let text = format!("r1={r1} r2={r2} {:?}", xs.iter().map(|g| g.to_string()).collect::<Vec<_>>());
        let ok = match (build_matrix_a(&xs, r1, r2), inverse_b(&xs, r1, r2)) {
            (Ok(a), Ok(b)) => mat_mul(&a.a, &b) == identity(r1 + r2),
            _ => false,
        };
        (text, ok)
    });

    suite.run("symmetric reconstruction", cases, &mut rng, |r| {
        let n = r.gen_range(0..=8);
        let xs: Vec<GaussianRational> = (0..n).map(|_| random_gaussian(r)).collect();
        let sigma = elementary_symmetric_all(&xs);
        let expanded = UniPoly::from_roots(&xs);
        let ok = (0..=n).all(|h| expanded.coeff(n - h) == sigma[h]);
        (format!("{:?}", xs.iter().map(|g| g.to_string()).collect::<Vec<_>>()), ok)
    });

    suite.run("composition associativity", cases, &mut rng, |r| {
        let (a, b, c) = (random_operator(r, 3, 3), random_operator(r, 3, 3), random_operator(r, 3, 3));
        let ok = a.compose(&b).compose(&c) == a.compose(&b.compose(&c));
        (format!("{a} | {b} | {c}"), ok)
    });

    suite.run("operator action", cases, &mut rng, |r| {
        let (a, b) = (random_operator(r, 3, 2), random_operator(r, 3, 2));
        let u = random_xpoly(r, 5);
        let ab = a.compose(&b);
        let ok = ab.apply(&u) == a.apply(&b.apply(&u));
        (format!("{a} | {b} | {u}"), ok)
    });

    SelftestReport { seed, cases, properties: suite.outcomes, digest: hex::encode(suite.hasher.finalize()) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_holds_and_is_deterministic() {
        let a = selftest(7, 20);
        assert!(a.all_hold(), "{:?}", a.properties);
        assert_eq!(a.digest, selftest(7, 20).digest);
        assert_ne!(a.digest, selftest(8, 20).digest);
        assert!(a.properties.iter().all(|p| p.cases == 20));
    }
}
