//! Decision procedure for global regularity.

pub mod classify;
pub mod separation;

pub use classify::{classify, Classification, SymbolClass};
pub use separation::{
    branch_condition, check_condition, check_separation, BranchCondition, ConditionReport, ConditionStatus, Deviation,
    PairReport, PairStatus, SeparationReport, SeparationTolerances, BORDERLINE_FACTOR,
};

use num_rational::Rational64;

use crate::error::SymbolError;
use crate::puiseux::{expand_branches, BranchSet, Direction, ExpansionOptions};
use crate::symbol::{normalize_leading, weyl_from_left, BivariatePoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Regular,
    NotRegular,
    Inconclusive,
}

impl Decision {
    pub fn name(self) -> &'static str {
        match self {
            Decision::Regular => "Regular",
            Decision::NotRegular => "NotRegular",
            Decision::Inconclusive => "Inconclusive",
        }
    }
}

/// How the input symbol relates to the operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantization {
    Weyl,
    /// Left (Kohn–Nirenberg) symbol: `x^β ξ^α ↦ x^β D^α`.
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionChoice {
    Plus,
    Minus,
    Both,
}

impl DirectionChoice {
    pub fn directions(self) -> &'static [Direction] {
        match self {
            DirectionChoice::Plus => &[Direction::PlusInfinity],
            DirectionChoice::Minus => &[Direction::MinusInfinity],
            DirectionChoice::Both => &[Direction::PlusInfinity, Direction::MinusInfinity],
        }
    }
}

/// Which argument produced the decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Path {
    ConstantCoefficient,
    GloballyElliptic,
    QuasiElliptic,
    SGElliptic,
    TheoremGeneral,
}

impl Path {
    pub fn name(self) -> &'static str {
        match self {
            Path::ConstantCoefficient => "ConstantCoefficient",
            Path::GloballyElliptic => "GloballyElliptic",
            Path::QuasiElliptic => "QuasiElliptic",
            Path::SGElliptic => "SGElliptic",
            Path::TheoremGeneral => "TheoremGeneral",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecideOptions {
    pub quantization: Quantization,
    pub directions: DirectionChoice,
    pub expansion: ExpansionOptions,
    /// `|Im c| ≤ im_tol` counts as real in the growth condition.
    pub im_tol: f64,
    pub separation: SeparationTolerances,
    /// Accept the verdict of an exact classifier without expanding.
    pub use_classifier: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self {
            quantization: Quantization::Weyl,
            directions: DirectionChoice::Both,
            expansion: ExpansionOptions::default(),
            im_tol: 1e-8,
            separation: SeparationTolerances::default(),
            use_classifier: true,
        }
    }
}

/// Every numeric threshold that influenced a verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub precision: f64,
    pub zero_tol: f64,
    pub im_tol: f64,
    pub lambda_tol: f64,
    pub coeff_tol: f64,
    pub cluster_tol: f64,
    pub depth: Rational64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub decision: Decision,
    pub path: Path,
    pub classification: Classification,
    /// Weyl symbol of the operator.
    pub weyl_symbol: BivariatePoly,
    /// Symbol actually expanded, after the shear `x ↦ x + λξ`.
    pub normalized: BivariatePoly,
    pub shear: Rational,
    pub branch_sets: Vec<BranchSet>,
    pub separation: Vec<SeparationReport>,
    pub condition: Option<ConditionReport>,
    pub diagnostics: Vec<String>,
    pub tolerances: Tolerances,
}

impl Verdict {
    pub fn boundary(&self) -> bool {
        self.condition.as_ref().is_some_and(|c| c.entries.iter().any(|e| e.status == ConditionStatus::Boundary))
    }
}

fn tolerances(opts: &DecideOptions) -> Tolerances {
    Tolerances {
        precision: opts.expansion.precision,
        zero_tol: opts.expansion.zero_tol,
        im_tol: opts.im_tol,
        lambda_tol: opts.separation.lambda_tol,
        coeff_tol: opts.separation.coeff_tol,
        cluster_tol: crate::puiseux::rootfind::CLUSTER_TOL,
        depth: opts.expansion.depth,
    }
}

fn class_path(c: &SymbolClass) -> Path {
    match c {
        SymbolClass::ConstantCoefficient => Path::ConstantCoefficient,
        SymbolClass::GloballyElliptic => Path::GloballyElliptic,
        SymbolClass::QuasiElliptic { .. } => Path::QuasiElliptic,
        SymbolClass::SGElliptic { .. } => Path::SGElliptic,
        SymbolClass::General => Path::TheoremGeneral,
    }
}

/// Decide global regularity of the operator with symbol `p`.
pub fn decide(p: &BivariatePoly, opts: &DecideOptions) -> Result<Verdict, SymbolError> {
    if p.is_zero() {
        return Err(SymbolError::ZeroPolynomial);
    }
    let weyl = match opts.quantization {
        Quantization::Weyl => p.clone(),
        Quantization::Left => weyl_from_left(p),
    };
    let classification = classify(&weyl);
    let (normalized, shear) = normalize_leading(&weyl)?;
    let mut verdict = Verdict {
        decision: Decision::Inconclusive,
        path: Path::TheoremGeneral,
        classification: classification.clone(),
        weyl_symbol: weyl,
        normalized,
        shear,
        branch_sets: Vec::new(),
        separation: Vec::new(),
        condition: None,
        diagnostics: Vec::new(),
        tolerances: tolerances(opts),
    };
    if opts.use_classifier {
        if let Some(regular) = classification.regular {
            verdict.path = class_path(&classification.class);
            verdict.decision = if regular { Decision::Regular } else { Decision::NotRegular };
            return Ok(verdict);
        }
    }

    let dirs = opts.directions.directions();
    let expand = |d: Direction| expand_branches(&verdict.normalized, d, &opts.expansion);
    let results = match dirs {
        [a, b] => {
            let (ra, rb) = rayon::join(|| expand(*a), || expand(*b));
            vec![ra, rb]
        }
        _ => dirs.iter().map(|d| expand(*d)).collect(),
    };
    let mut sets = Vec::new();
    for (d, r) in dirs.iter().zip(results) {
        match r {
            Ok(set) => sets.push(set),
            Err(e) => verdict.diagnostics.push(format!("expansion at {} infinity failed: {e}", d.label())),
        }
    }
    if sets.len() != dirs.len() {
        verdict.branch_sets = sets;
        return Ok(verdict);
    }
    for set in &sets {
        for (j, c) in set.certificates.iter().enumerate() {
            if !c.passed {
                verdict.diagnostics.push(format!(
                    "branch {j} at {} infinity: residual slope {:.3} exceeds bound {:.3}",
                    set.direction.label(),
                    c.slope,
                    c.bound
                ));
            }
        }
    }

    let reports: Vec<SeparationReport> = sets.iter().map(|s| check_separation(s, &opts.separation)).collect();
    for r in &reports {
        verdict.diagnostics.extend(r.notes.iter().map(|n| format!("{} infinity: {n}", r.direction.label())));
    }
    let separated = reports.iter().all(|r| r.overall() == PairStatus::Separated);
    let condition = check_condition(&sets.iter().collect::<Vec<_>>(), opts.im_tol);
    verdict.branch_sets = sets;
    verdict.separation = reports;

    if !separated {
        verdict.diagnostics.push(
            "branches with a common real slope are not separated; the operator may be Fuchsian or regular at infinity"
                .to_string(),
        );
    } else if !condition.holds() {
        verdict.decision = Decision::NotRegular;
        if condition.entries.iter().any(|e| e.status == ConditionStatus::Boundary) {
            verdict.diagnostics.push("a branch has its first imaginary term exactly at x^-1".to_string());
        }
    } else if dirs.len() == 2 {
        verdict.decision = Decision::Regular;
    } else {
        verdict.diagnostics.push("condition holds in the analyzed direction only".to_string());
    }
    verdict.condition = Some(condition);
    Ok(verdict)
}

/// [`decide`] with default options.
pub fn decide_default(p: &BivariatePoly) -> Result<Verdict, SymbolError> {
    decide(p, &DecideOptions::default())
}
