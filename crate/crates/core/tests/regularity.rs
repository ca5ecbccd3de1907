use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use regsym::puiseux::{expand_branches, Direction, ExpansionOptions};
use regsym::regularity::{
    check_condition, check_separation, classify, decide, ConditionStatus, DecideOptions, Decision, DirectionChoice,
    PairStatus, Path, Quantization, SeparationTolerances, SymbolClass,
};
use regsym::selftest::{random_gaussian, random_symbol};
use regsym::symbol::{parse_symbol, rat, shear, BivariatePoly, GaussianRational};

fn p(s: &str) -> BivariatePoly {
    parse_symbol(s).unwrap()
}

fn decision(q: &BivariatePoly, opts: &DecideOptions) -> Decision {
    decide(q, opts).unwrap().decision
}

fn general() -> DecideOptions {
    DecideOptions { use_classifier: false, ..DecideOptions::default() }
}

const CORPUS: &[(&str, Decision)] = &[
    ("xi^2 + x^2", Decision::Regular),
    ("xi - x + 1", Decision::NotRegular),
    ("xi - x + i", Decision::Regular),
    ("xi^2 + x", Decision::NotRegular),
    ("xi^2 + i*x", Decision::Regular),
    ("xi^4 - (2 + i)*xi - x", Decision::Regular),
    ("xi^4 - 2*xi - x", Decision::NotRegular),
    ("xi^3 + i*x*xi^2 + x^2", Decision::Regular),
    ("(xi - i)*(x - i)", Decision::Regular),
    ("(1 + x^2)*xi^4 + 1", Decision::Regular),
    ("(1 + x^4)*xi^2 + 1", Decision::Inconclusive),
    ("xi^2 + 1", Decision::Regular),
    ("xi^2", Decision::NotRegular),
    ("(xi - x)^2", Decision::Inconclusive),
    ("x*xi - i*xi - i*x - 1", Decision::Regular),
    ("xi - 2*x + 1/3*i", Decision::Regular),
    ("xi + x", Decision::NotRegular),
];

#[test]
fn classify_examples() {
    assert_eq!(classify(&p("xi^2 + x^2")).class, SymbolClass::GloballyElliptic);
    assert_eq!(classify(&p("xi^2 + i*x")).class, SymbolClass::QuasiElliptic { q: rat(2, 1) });
    let c = classify(&p("xi^2 + 1"));
    assert_eq!((c.class, c.regular), (SymbolClass::ConstantCoefficient, Some(true)));
    assert_eq!(classify(&p("x*xi - i*xi - i*x - 1")).class, SymbolClass::SGElliptic { m: 1, n: 1 });
    let real = classify(&p("xi^2 - 1"));
    assert_eq!((real.class, real.regular), (SymbolClass::ConstantCoefficient, Some(false)));
    assert_eq!(classify(&p("xi - x + 1")).regular, None);
}

#[test]
fn separation_examples() {
    let tol = SeparationTolerances::default();
    let set = |s: &str| expand_branches(&p(s), Direction::PlusInfinity, &ExpansionOptions::default()).unwrap();
    let ho = check_separation(&set("xi^2 + x^2"), &tol);
    assert!(ho.pairs.iter().all(|q| q.status == PairStatus::NotApplicable));
    assert_eq!(ho.overall(), PairStatus::Separated);
    let two = check_separation(&set("xi^2 - (2*x + 1)*xi + x^2 + x"), &tol);
    assert_eq!(two.pairs.len(), 1);
    assert_eq!(two.pairs[0].status, PairStatus::Separated);
    assert_eq!(check_separation(&set("(xi - x)^2"), &tol).overall(), PairStatus::Fails);
}

#[test]
fn condition_examples() {
    let set = |s: &str, d| expand_branches(&p(s), d, &ExpansionOptions::default()).unwrap();
    let (plus, minus) = (Direction::PlusInfinity, Direction::MinusInfinity);
    let tilted = [set("xi - x + i", plus), set("xi - x + i", minus)];
    assert!(check_condition(&[&tilted[0], &tilted[1]], 1e-8).holds());
    let real = set("xi - x + 1", plus);
    assert_eq!(check_condition(&[&real], 1e-8).entries[0].status, ConditionStatus::Fails);
    let airy = [set("xi^2 + x", plus), set("xi^2 + x", minus)];
    assert!(check_condition(&[&airy[0]], 1e-8).holds());
    let both = check_condition(&[&airy[0], &airy[1]], 1e-8);
    assert!(!both.holds());
    assert!(both.failing().all(|e| e.direction == minus && e.status == ConditionStatus::Fails));
}

#[test]
fn decide_examples() {
    let opts = DecideOptions::default();
    for (s, want) in CORPUS {
        let v = decide(&p(s), &opts).unwrap();
        assert_eq!(v.decision, *want, "{s}: {:?}", v.diagnostics);
    }
    let v = decide(&p("xi^2 + x^2"), &opts).unwrap();
    assert_eq!(v.path, Path::GloballyElliptic);
    let v = decide(&p("xi - x + 1"), &opts).unwrap();
    assert_eq!(v.path, Path::TheoremGeneral);
    let v = decide(&p("(xi - x)^2"), &opts).unwrap();
    assert!(v.diagnostics.iter().any(|d| d.contains("not separated")), "{:?}", v.diagnostics);
    assert!(decide(&BivariatePoly::zero(), &opts).is_err());
}

#[test]
fn verdict_invariants_on_general_path() {
    for (s, _) in CORPUS {
        let v = decide(&p(s), &general()).unwrap();
        let separated = v.separation.len() == 2 && v.separation.iter().all(|r| r.overall() == PairStatus::Separated);
        let holds = v.condition.as_ref().is_some_and(|c| c.holds());
        match v.decision {
            Decision::Regular => assert!(separated && holds, "{s}"),
            Decision::NotRegular => assert!(separated && !holds, "{s}"),
            Decision::Inconclusive => assert!(!separated, "{s}"),
        }
    }
}

#[test]
fn fast_and_general_paths_agree() {
    for (s, _) in CORPUS {
        let fast = decide(&p(s), &DecideOptions::default()).unwrap();
        if fast.path == Path::TheoremGeneral {
            continue;
        }
        let slow = decide(&p(s), &general()).unwrap();
        if slow.decision != Decision::Inconclusive {
            assert_eq!(fast.decision, slow.decision, "{s}");
        }
    }
    for s in ["xi^2 + x^2", "xi^2 + i*x", "xi^3 + i*x*xi^2 + x^2"] {
        assert_eq!(decision(&p(s), &general()), Decision::Regular, "{s}");
    }
}

/// `ξ = x + i/x` is a root of `xξ − x² − i`: `x·Im ξ` stays at 1.
#[test]
fn boundary_case_is_flagged() {
    let v = decide(&p("x*xi - x^2 - i"), &DecideOptions::default()).unwrap();
    assert_eq!(v.decision, Decision::NotRegular, "{:?}", v.diagnostics);
    assert!(v.boundary());
    assert!(!decide(&p("xi - x + 1"), &DecideOptions::default()).unwrap().boundary());
}

#[test]
fn single_direction_choices() {
    let airy = p("xi^2 + x");
    let plus = DecideOptions { directions: DirectionChoice::Plus, ..DecideOptions::default() };
    let minus = DecideOptions { directions: DirectionChoice::Minus, ..DecideOptions::default() };
    assert_eq!(decision(&airy, &plus), Decision::Inconclusive);
    assert_eq!(decision(&airy, &minus), Decision::NotRegular);
}

#[test]
fn left_quantization_converts_first() {
    let left = DecideOptions { quantization: Quantization::Left, ..DecideOptions::default() };
    let v = decide(&p("x*xi"), &left).unwrap();
    assert_eq!(v.weyl_symbol, p("x*xi + 1/2*i"));
    assert_eq!(decision(&p("xi^2 + i*x"), &left), Decision::Regular);
}

#[test]
fn tighter_im_tol_never_turns_regular_into_not_regular() {
    for (s, _) in CORPUS {
        let base = decision(&p(s), &general());
        let tight = decision(&p(s), &DecideOptions { im_tol: 1e-9, ..general() });
        assert!(!(base == Decision::Regular && tight == Decision::NotRegular), "{s}");
    }
}

#[test]
fn conjugate_symbol_has_the_same_verdict() {
    for (s, want) in CORPUS {
        assert_eq!(decision(&p(s).conj(), &DecideOptions::default()), *want, "{s}");
        assert_eq!(decision(&p(s).conj(), &general()), decision(&p(s), &general()), "{s}");
    }
}

#[test]
fn shear_preserves_verdict_on_corpus() {
    for (s, _) in CORPUS {
        let base = decision(&p(s), &general());
        for lambda in [rat(1, 2), rat(-1, 1), rat(3, 1)] {
            let sheared = decision(&shear(&p(s), &lambda), &general());
            if base != Decision::Inconclusive && sheared != Decision::Inconclusive {
                assert_eq!(base, sheared, "{s} sheared by {lambda}");
            }
        }
    }
}

fn planted(rng: &mut ChaCha8Rng) -> (BivariatePoly, Vec<GaussianRational>) {
    let n = rng.gen_range(1..=6);
    let roots: Vec<GaussianRational> = (0..n).map(|_| random_gaussian(rng)).collect();
    let q = roots.iter().fold(p("1"), |acc, r| &acc * &(&BivariatePoly::xi() - &BivariatePoly::constant(r.clone())));
    (q, roots)
}

#[test]
fn constant_coefficient_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let (q, roots) = planted(&mut rng);
        let want = if roots.iter().any(|r| r.is_real()) { Decision::NotRegular } else { Decision::Regular };
        let v = decide(&q, &DecideOptions::default()).unwrap();
        assert_eq!(v.path, Path::ConstantCoefficient);
        assert_eq!(v.decision, want, "{q} with roots {roots:?}");
        let distinct = roots.iter().enumerate().all(|(j, a)| roots[..j].iter().all(|b| a != b));
        if distinct {
            assert_eq!(decision(&q, &general()), want, "{q} on the general path");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shear_invariance_random(seed in any::<u64>(), l in -3i64..=3, d in 1i64..=2) {
        let q = random_symbol(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        prop_assume!(q.deg_xi() + q.deg_x() > 0);
        let a = decision(&q, &general());
        let b = decision(&shear(&q, &rat(l, d)), &general());
        prop_assume!(a != Decision::Inconclusive && b != Decision::Inconclusive);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn conjugate_symmetry_random(seed in any::<u64>()) {
        let q = random_symbol(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        prop_assert_eq!(decision(&q, &DecideOptions::default()), decision(&q.conj(), &DecideOptions::default()));
    }
}
