//! Newton–Puiseux expansion of all roots `ξ_j(x)` of `p(x, ξ) = 0` as `x → +∞`.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::genpoly::{exact_edge_polynomial, Edge, GenPoly};
use super::rootfind::{certified_roots, CertifiedRoot, RootError};
use super::series::{Direction, PuiseuxSeries};
use super::BranchSet;
use crate::error::PuiseuxError;
use crate::symbol::{reflect, BivariatePoly, GaussianRational, UniPoly};

/// Engine settings; every value is echoed in reports.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionOptions {
    /// Terms with exponent strictly above this are computed.
    pub depth: Rational64,
    /// Residual scale for certifying edge roots.
    pub precision: f64,
    /// Relative threshold for discarding cancelled coefficients.
    pub zero_tol: f64,
}

impl Default for ExpansionOptions {
    fn default() -> Self {
        Self { depth: default_depth(), precision: 1e-12, zero_tol: 1e-10 }
    }
}

/// `−9/4`: below `−1 − 1/p − 1/4` for every ramification `p ≥ 1`.
pub fn default_depth() -> Rational64 {
    Rational64::new(-9, 4)
}

/// Leading exponents and exact edge polynomials of the Newton diagram of `p`.
///
/// Edges are ordered by increasing slope. The edge polynomial is in the
/// leading coefficient `c` of a root `ξ ≈ c·x^ν`, ascending powers.
pub fn newton_polygon_slopes(p: &BivariatePoly) -> Result<Vec<(Rational64, UniPoly<GaussianRational>)>, PuiseuxError> {
    if p.deg_xi() == 0 {
        return Err(PuiseuxError::NotAPolynomialInXi);
    }
    let g = GenPoly::from_symbol(p);
    Ok(g.edges().iter().map(|e| (e.slope, UniPoly::new(exact_edge_polynomial(p, e)))).collect())
}

type Terms = Vec<(Rational64, Complex64)>;

struct Leaf {
    terms: Terms,
    truncation: Rational64,
    exact: bool,
    /// Size of the group this branch could not be separated from, 1 if none.
    group: usize,
}

fn exhausted(nu: Rational64, detail: impl Into<String>) -> PuiseuxError {
    PuiseuxError::PrecisionExhausted { exponent: super::format_exponent(&nu), detail: detail.into() }
}

fn root_error(nu: Rational64, e: RootError) -> PuiseuxError {
    let detail = match e {
        RootError::Ambiguous { near, gap } => {
            format!("edge roots near {near} differ by {gap:.3e}, neither distinct nor a certified multiple root")
        }
        RootError::Residual { near, residual, bound } => {
            format!("edge root near {near} has residual {residual:.3e} above {bound:.3e}")
        }
        RootError::Degenerate => "degenerate edge polynomial".to_string(),
    };
    exhausted(nu, detail)
}

/// Exact square-free roots of a first-level edge polynomial.
fn exact_edge_roots(
    q: &[GaussianRational],
    precision: f64,
    nu: Rational64,
) -> Result<Vec<CertifiedRoot>, PuiseuxError> {
    let poly = UniPoly::new(q.to_vec());
    let mut out = Vec::new();
    for (factor, mult) in poly.squarefree_decomposition() {
        match factor.degree() {
            None | Some(0) => continue,
            Some(1) => {
                let root = -(&factor.coeff(0) / &factor.coeff(1));
                out.push(CertifiedRoot { value: root.to_complex(), multiplicity: mult });
            }
            Some(_) => {
                let fq: Vec<Complex64> = factor.coeffs().iter().map(|c| c.to_complex()).collect();
                let roots = certified_roots(&fq, precision).map_err(|e| root_error(nu, e))?;
                for r in roots {
                    if r.multiplicity != 1 {
                        return Err(exhausted(nu, "square-free factor reported a multiple root"));
                    }
                    out.push(CertifiedRoot { value: r.value, multiplicity: mult });
                }
            }
        }
    }
    out.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
    Ok(out)
}

struct Engine<'a> {
    opts: &'a ExpansionOptions,
}

impl Engine<'_> {
    /// Expand the `count` roots of `g` in `η` with exponent below `upper`.
    fn expand(
        &self,
        mut g: GenPoly,
        prefix: Vec<(Rational64, Complex64)>,
        count: usize,
        upper: Option<Rational64>,
    ) -> Result<Vec<Leaf>, PuiseuxError> {
        g.cleanup(self.opts.zero_tol);
        let here = upper.unwrap_or_else(|| Rational64::from_integer(1));
        let k0 = g.lowest_power().ok_or_else(|| exhausted(here, "working polynomial vanished"))?;
        let edges: Vec<Edge> = g.edges().into_iter().filter(|e| upper.is_none_or(|u| e.slope < u)).collect();
        let found: usize = k0 + edges.iter().map(|e| e.k2 - e.k1).sum::<usize>();
        if found != count {
            return Err(exhausted(
                here,
                format!("expected {count} roots below the previous exponent, Newton diagram shows {found}"),
            ));
        }
        let mut leaves: Vec<Leaf> = (0..k0)
            .map(|_| Leaf { terms: prefix.clone(), truncation: self.opts.depth, exact: true, group: 1 })
            .collect();

        let (shallow, deep): (Vec<&Edge>, Vec<&Edge>) = edges.iter().partition(|e| e.slope > self.opts.depth);
        let deep_count: usize = deep.iter().map(|e| e.k2 - e.k1).sum();
        if deep_count > 0 {
            let truncation = deep.iter().map(|e| e.slope).max().expect("nonempty");
            for _ in 0..deep_count {
                leaves.push(Leaf { terms: prefix.clone(), truncation, exact: false, group: deep_count });
            }
        }

        let mut tasks = Vec::new();
        for edge in shallow.into_iter().rev() {
            let roots = certified_roots(&g.edge_polynomial(edge), self.opts.precision)
                .map_err(|e| root_error(edge.slope, e))?;
            for r in roots {
                tasks.push((edge.slope, r));
            }
        }
        let children: Vec<Result<Vec<Leaf>, PuiseuxError>> = tasks
            .into_par_iter()
            .map(|(nu, r)| {
                let mut terms = prefix.clone();
                terms.push((nu, r.value));
                self.expand(g.substitute(r.value, nu), terms, r.multiplicity, Some(nu))
            })
            .collect();
        for c in children {
            leaves.extend(c?);
        }
        Ok(leaves)
    }

    /// First level: exact edge polynomials of the symbol itself.
    fn expand_symbol(&self, p: &BivariatePoly) -> Result<Vec<Leaf>, PuiseuxError> {
        let m = p.deg_xi() as usize;
        let g = GenPoly::from_symbol(p);
        let k0 = g.lowest_power().expect("nonzero symbol");
        let mut leaves: Vec<Leaf> =
            (0..k0).map(|_| Leaf { terms: Vec::new(), truncation: self.opts.depth, exact: true, group: 1 }).collect();
        let edges = g.edges();
        let mut tasks = Vec::new();
        let mut deep_count = 0;
        let mut deep_top = None::<Rational64>;
        for edge in edges.iter().rev() {
            if edge.slope <= self.opts.depth {
                deep_count += edge.k2 - edge.k1;
                deep_top = Some(deep_top.map_or(edge.slope, |t: Rational64| t.max(edge.slope)));
                continue;
            }
            let q = exact_edge_polynomial(p, edge);
            for r in exact_edge_roots(&q, self.opts.precision, edge.slope)? {
                tasks.push((edge.slope, r));
            }
        }
        for _ in 0..deep_count {
            leaves.push(Leaf {
                terms: Vec::new(),
                truncation: deep_top.expect("deep edge"),
                exact: false,
                group: deep_count,
            });
        }
        let children: Vec<Result<Vec<Leaf>, PuiseuxError>> = tasks
            .into_par_iter()
            .map(|(nu, r)| self.expand(g.substitute(r.value, nu), vec![(nu, r.value)], r.multiplicity, Some(nu)))
            .collect();
        for c in children {
            leaves.extend(c?);
        }
        debug_assert_eq!(leaves.len(), m);
        Ok(leaves)
    }
}

/// Expand all `m` roots of the normalized symbol `p` in one direction.
///
/// For [`Direction::MinusInfinity`] the engine runs on `p(−x, ξ)` and the
/// series describe `t ↦ ξ_j(−t)` as `t → +∞`.
pub fn expand_branches(
    p: &BivariatePoly,
    direction: Direction,
    opts: &ExpansionOptions,
) -> Result<BranchSet, PuiseuxError> {
    if p.deg_xi() == 0 {
        return Err(PuiseuxError::NotAPolynomialInXi);
    }
    let m = p.total_degree();
    if p.coeff(m, 0).is_zero() {
        return Err(PuiseuxError::NotNormalized(m));
    }
    if opts.depth > Rational64::from_integer(-1) {
        return Err(PuiseuxError::InvalidDepth(super::format_exponent(&opts.depth)));
    }
    let working = match direction {
        Direction::PlusInfinity => p.clone(),
        Direction::MinusInfinity => reflect(p),
    };
    let engine = Engine { opts };
    let leaves = engine.expand_symbol(&working)?;
    if leaves.len() != m as usize {
        return Err(exhausted(Rational64::from_integer(1), format!("found {} of {m} branches", leaves.len())));
    }

    let mut branches = Vec::with_capacity(leaves.len());
    let mut unseparated: Vec<Vec<usize>> = Vec::new();
    // terms shared by the open group, its members, and its expected size
    let mut open: Option<(Terms, Vec<usize>, usize)> = None;
    for (idx, leaf) in leaves.into_iter().enumerate() {
        if leaf.group > 1 {
            match &mut open {
                Some((terms, members, size)) if *terms == leaf.terms && members.len() < *size => {
                    members.push(idx);
                }
                _ => {
                    if let Some((_, members, _)) = open.take() {
                        unseparated.push(members);
                    }
                    open = Some((leaf.terms.clone(), vec![idx], leaf.group));
                }
            }
        } else if let Some((_, members, _)) = open.take() {
            unseparated.push(members);
        }
        branches.push(PuiseuxSeries {
            direction,
            terms: leaf.terms,
            truncation_exponent: leaf.truncation,
            exact: leaf.exact,
        });
    }
    if let Some((_, members, _)) = open.take() {
        unseparated.push(members);
    }
    let certificates = super::certify(&working, &branches);
    Ok(BranchSet { symbol: p.clone(), direction, branches, unseparated, certificates })
}

/// Float view of an exponent.
pub(crate) fn exponent_f64(e: &Rational64) -> f64 {
    e.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse_symbol;

    fn expand(s: &str, d: Direction) -> BranchSet {
        expand_branches(&parse_symbol(s).unwrap(), d, &ExpansionOptions::default()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn harmonic_oscillator_roots_are_exact() {
        let b = expand("xi^2 + x^2", Direction::PlusInfinity);
        assert_eq!(b.branches.len(), 2);
        for s in &b.branches {
            assert!(s.exact);
            assert_eq!(s.terms.len(), 1);
            assert_eq!(s.terms[0].0, r(1, 1));
            assert!((s.terms[0].1.norm() - 1.0).abs() < 1e-15 && s.terms[0].1.re == 0.0);
        }
    }

    #[test]
    fn linear_root_terminates() {
        let b = expand("xi - x + 1", Direction::PlusInfinity);
        assert_eq!(
            b.branches[0].terms,
            vec![(r(1, 1), Complex64::new(1.0, 0.0)), (r(0, 1), Complex64::new(-1.0, 0.0))]
        );
        assert!(b.branches[0].exact);
    }

    #[test]
    fn quartic_corrections() {
        let b = expand("xi^4 - 2*xi - x", Direction::PlusInfinity);
        assert_eq!(b.branches.len(), 4);
        let plus =
            b.branches.iter().find(|s| (s.coefficient(r(1, 4)) - Complex64::new(1.0, 0.0)).norm() < 1e-12).unwrap();
        assert!((plus.coefficient(r(-1, 2)) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert_eq!(plus.terms[1].0, r(-1, 2));
        assert_eq!(plus.ramification(), 4);
    }

    #[test]
    fn coincident_roots_are_reported() {
        let b = expand("(xi - x)^2", Direction::PlusInfinity);
        assert_eq!(b.branches.len(), 2);
        assert_eq!(b.branches[0].terms, b.branches[1].terms);
        assert!(b.branches.iter().all(|s| s.exact));
        // After the shear the pair near ξ = 0 differs only at x^{−2}.
        let sheared = crate::symbol::shear(&parse_symbol("(1 + x^4)*xi^2 + 1").unwrap(), &crate::symbol::rat(1, 1));
        let opts = ExpansionOptions { depth: r(-1, 1), ..Default::default() };
        let deep = expand_branches(&sheared, Direction::PlusInfinity, &opts).unwrap();
        assert_eq!(deep.branches.len(), 6);
        assert_eq!(deep.unseparated.len(), 1);
        let pair = &deep.unseparated[0];
        assert_eq!(pair.len(), 2);
        assert_eq!(deep.branches[pair[0]].truncation_exponent, r(-2, 1));
        let full = expand_branches(&sheared, Direction::PlusInfinity, &ExpansionOptions::default()).unwrap();
        assert!(full.unseparated.is_empty());
    }

    #[test]
    fn minus_direction_uses_reflection() {
        let b = expand("xi^2 + x", Direction::MinusInfinity);
        for s in &b.branches {
            assert_eq!(s.terms[0].0, r(1, 2));
            assert!(s.terms[0].1.im.abs() < 1e-15);
        }
    }

    #[test]
    fn depth_must_reach_minus_one() {
        let opts = ExpansionOptions { depth: r(-1, 2), ..Default::default() };
        assert!(matches!(
            expand_branches(&parse_symbol("xi - x").unwrap(), Direction::PlusInfinity, &opts),
            Err(PuiseuxError::InvalidDepth(_))
        ));
    }
}
