//! Asymptotic separation of branches sharing a real slope, and the
//! imaginary-growth condition on each branch.

use num_complex::Complex64;
use num_rational::Rational64;

use crate::puiseux::{BranchSet, Direction, PuiseuxSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStatus {
    Separated,
    Fails,
    NotApplicable,
    /// `Im λ` lies just outside the real-slope tolerance; no reading is safe.
    Borderline,
}

/// Leading deviation term `c·x^e` of a branch; `None` stands for `e = −∞`.
pub type Deviation = Option<(Rational64, Complex64)>;

#[derive(Debug, Clone, PartialEq)]
pub struct PairReport {
    pub j: usize,
    pub k: usize,
    pub lambda: Complex64,
    pub status: PairStatus,
    pub deviation_j: Deviation,
    pub deviation_k: Deviation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    pub direction: Direction,
    pub pairs: Vec<PairReport>,
    pub notes: Vec<String>,
}

impl SeparationReport {
    /// `Separated` unless some pair fails (`Fails`) or is borderline (`Borderline`).
    pub fn overall(&self) -> PairStatus {
        if self.pairs.iter().any(|p| p.status == PairStatus::Fails) {
            PairStatus::Fails
        } else if self.pairs.iter().any(|p| p.status == PairStatus::Borderline) {
            PairStatus::Borderline
        } else {
            PairStatus::Separated
        }
    }
}

/// Tolerances of the separation test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationTolerances {
    /// `|Im λ| ≤ lambda_tol` counts as real; equal slopes agree to `lambda_tol·(1+|λ|)`.
    pub lambda_tol: f64,
    /// Leading coefficients closer than `coeff_tol·(1+|c|)` are equal.
    pub coeff_tol: f64,
}

impl Default for SeparationTolerances {
    fn default() -> Self {
        Self { lambda_tol: 1e-8, coeff_tol: 1e-8 }
    }
}

/// Width of the band above `lambda_tol` treated as borderline.
pub const BORDERLINE_FACTOR: f64 = 1e3;

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

fn pair_status(a: &PuiseuxSeries, b: &PuiseuxSeries, tol: &SeparationTolerances) -> (PairStatus, Deviation, Deviation) {
    let da = a.leading_deviation();
    let db = b.leading_deviation();
    let minus_one = Rational64::from_integer(-1);
    let status = match (da, db) {
        (None, None) => PairStatus::Fails,
        (Some((e, _)), None) | (None, Some((e, _))) => {
            if e > minus_one {
                PairStatus::Separated
            } else {
                PairStatus::Fails
            }
        }
        (Some((ea, ca)), Some((eb, cb))) => {
            let differ = ea != eb || !close(ca, cb, tol.coeff_tol);
            if differ && ea.max(eb) > minus_one {
                PairStatus::Separated
            } else {
                PairStatus::Fails
            }
        }
    };
    (status, da, db)
}

/// Compare every pair of branches; pairs with a common real slope are tested.
pub fn check_separation(branches: &BranchSet, tol: &SeparationTolerances) -> SeparationReport {
    let bs = &branches.branches;
    let mut pairs = Vec::new();
    let mut notes = Vec::new();
    let p = branches.ramification();
    let index_threshold = Rational64::new(-1, p);
    for j in 0..bs.len() {
        for k in (j + 1)..bs.len() {
            let (lj, lk) = (bs[j].lambda(), bs[k].lambda());
            let lambda = lj;
            let same = close(lj, lk, tol.lambda_tol);
            let im = lj.im.abs().max(lk.im.abs());
            let (status, dj, dk) = if !same || im > BORDERLINE_FACTOR * tol.lambda_tol {
                (PairStatus::NotApplicable, bs[j].leading_deviation(), bs[k].leading_deviation())
            } else if im > tol.lambda_tol {
                (PairStatus::Borderline, bs[j].leading_deviation(), bs[k].leading_deviation())
            } else {
                pair_status(&bs[j], &bs[k], tol)
            };
            if status == PairStatus::Borderline {
                notes.push(format!(
                    "pair ({j},{k}): |Im λ| = {im:.3e} is within a factor {BORDERLINE_FACTOR} of the real-slope tolerance"
                ));
            }
            if status == PairStatus::Separated {
                let top = [dj, dk].iter().flatten().map(|(e, _)| *e).max();
                if let Some(e) = top {
                    if e <= index_threshold {
                        notes.push(format!(
                            "pair ({j},{k}): separated at exponent {} > -1, but its index reading (ramification {p}) is not above -1",
                            crate::puiseux::format_exponent(&e)
                        ));
                    }
                }
            }
            pairs.push(PairReport { j, k, lambda, status, deviation_j: dj, deviation_k: dk });
        }
    }
    if !branches.unseparated.is_empty() {
        notes.push(format!("branch groups {:?} coincide to the expansion depth", branches.unseparated));
    }
    SeparationReport { direction: branches.direction, pairs, notes }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionStatus {
    Holds,
    /// First imaginary term sits exactly at `x^{−1}`: `x·Im ξ` stays bounded.
    Boundary,
    Fails,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchCondition {
    pub direction: Direction,
    pub branch: usize,
    pub status: ConditionStatus,
    /// Largest exponent whose coefficient has `|Im| > im_tol`.
    pub witness: Option<(Rational64, Complex64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub entries: Vec<BranchCondition>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.status == ConditionStatus::Holds)
    }

    pub fn failing(&self) -> impl Iterator<Item = &BranchCondition> {
        self.entries.iter().filter(|e| e.status != ConditionStatus::Holds)
    }
}

/// Condition status of one branch.
pub fn branch_condition(s: &PuiseuxSeries, im_tol: f64) -> (ConditionStatus, Option<(Rational64, Complex64)>) {
    let witness = s.terms.iter().find(|(_, c)| c.im.abs() > im_tol).copied();
    let minus_one = Rational64::from_integer(-1);
    let status = match witness {
        Some((e, _)) if e > minus_one => ConditionStatus::Holds,
        Some((e, _)) if e == minus_one => ConditionStatus::Boundary,
        _ => ConditionStatus::Fails,
    };
    (status, witness)
}

/// `|x·Im ξ_j(x)| → ∞` for every branch of every supplied direction.
pub fn check_condition(sets: &[&BranchSet], im_tol: f64) -> ConditionReport {
    let mut entries = Vec::new();
    for set in sets {
        for (j, s) in set.branches.iter().enumerate() {
            let (status, witness) = branch_condition(s, im_tol);
            entries.push(BranchCondition { direction: set.direction, branch: j, status, witness });
        }
    }
    ConditionReport { entries }
}
