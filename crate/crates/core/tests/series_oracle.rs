//! Cross-checks of the sparse precision-tracking engine against the dense
//! exact oracle in `common`: multiplication, inversion, composition and
//! compositional inversion on fixed cases chosen to cover negative and
//! half-integer exponents, carried constants, and deep truncation windows.

mod common;

use common::{assert_matches, compose_truncated, exact, inv_truncated, lagrange_inverse, q, Dense};
use tate_core::scalars::{Half, Rational};
use tate_core::series::{Head, LaurentSeries};

fn terms(list: &[(i64, i64, i64)]) -> Vec<(i64, Rational)> {
    list.iter().map(|(e, p, d)| (*e, q(*p, *d))).collect()
}

#[test]
fn multiplication_matches_oracle() {
    let cases: Vec<(Vec<(i64, Rational)>, Vec<(i64, Rational)>)> = vec![
        (terms(&[(0, 1, 1), (2, 1, 1)]), terms(&[(0, 1, 1), (2, -1, 1)])),
        (
            terms(&[(-4, 3, 2), (0, 1, 1), (5, -7, 3)]),
            terms(&[(-1, 1, 1), (1, 2, 1), (6, 1, 4)]),
        ),
        (terms(&[(-3, -1, 1), (3, 1, 1)]), terms(&[(-3, -1, 1), (3, 1, 1)])),
        (terms(&[(1, 1, 2)]), terms(&[(-7, 4, 5), (0, 1, 1), (2, 9, 8)])),
    ];
    for (i, (fa, fb)) in cases.iter().enumerate() {
        let oracle = Dense::from_terms(fa).mul(&Dense::from_terms(fb));
        let got = exact(fa).mul(&exact(fb)).unwrap();
        assert_eq!(got.head(), Head::Inf, "case {i}: exact inputs stay exact");
        assert_matches(&format!("mul case {i}"), &got, &oracle, 40);
    }
}

#[test]
fn truncated_multiplication_is_sound() {
    // Truncate one factor and check every surviving claim against the oracle.
    let fa = terms(&[(-2, 1, 1), (0, 2, 3), (3, 1, 1), (7, -5, 1)]);
    let fb = terms(&[(-1, 4, 1), (2, 1, 6), (5, 1, 1)]);
    let oracle = Dense::from_terms(&fa).mul(&Dense::from_terms(&fb));
    for cut in [0i64, 3, 6, 9] {
        let ta = exact(&fa).truncated_to(Head::At(Half(cut)));
        let got = ta.mul(&exact(&fb)).unwrap();
        // sound window: cut + valuation of fb = cut - 1
        let promised = cut - 1;
        assert_matches(&format!("trunc-mul cut {cut}"), &got, &oracle, promised);
    }
}

#[test]
fn multiplicative_inverse_matches_geometric_oracle() {
    let cases: Vec<Vec<(i64, Rational)>> = vec![
        terms(&[(0, 1, 1), (2, -1, 1)]),                 // 1/(1 - x)
        terms(&[(4, 2, 1), (6, 1, 1)]),                  // 1/(2x^2 + x^3)
        terms(&[(-2, 1, 3), (1, 5, 1), (2, -1, 2)]),     // half-integer tail
        terms(&[(0, -5, 7), (1, 1, 1), (3, 2, 9)]),
    ];
    for (i, f) in cases.iter().enumerate() {
        let bound = 24i64;
        let oracle = inv_truncated(&Dense::from_terms(f), bound);
        let got = exact(f).mul_inverse(Head::At(Half(bound))).unwrap();
        assert_matches(&format!("inv case {i}"), &got, &oracle, bound);
        // and the round trip closes exactly on the known window
        let product = got.mul(&exact(f)).unwrap();
        let one = LaurentSeries::one(tate_core::scalars::RationalField);
        assert!(product.agrees_with(&one), "inv case {i}: round trip");
    }
}

#[test]
fn composition_matches_oracle() {
    // f has negative and positive exponents; g ranges over admissible args
    let f = terms(&[(-4, 1, 1), (-2, 2, 1), (0, -1, 3), (6, 1, 1)]);
    let gs: Vec<Vec<(i64, Rational)>> = vec![
        terms(&[(2, 1, 1), (4, 1, 1)]),                   // x + x^2
        terms(&[(2, -2, 1), (6, 1, 5)]),                  // -2x + x^3/5
        terms(&[(2, 1, 1), (4, -3, 2), (8, 7, 1)]),
    ];
    for (i, g) in gs.iter().enumerate() {
        let bound = 20i64;
        let oracle = compose_truncated(
            &Dense::from_terms(&f),
            &Dense::from_terms(g),
            bound,
        );
        let got = exact(&f).compose(&exact(g), Head::At(Half(bound))).unwrap();
        assert_matches(&format!("compose case {i}"), &got, &oracle, bound);
    }
}

#[test]
fn compositional_inverse_matches_lagrange() {
    let gs: Vec<Vec<(i64, Rational)>> = vec![
        terms(&[(2, 1, 1), (4, 1, 1)]),                       // x + x^2
        terms(&[(2, 1, 1), (4, -1, 2), (6, 1, 3), (8, -1, 4)]),
        terms(&[(2, 3, 1), (6, 1, 1)]),                       // non-monic
        terms(&[(2, 1, 1), (10, -7, 2)]),
    ];
    for (i, g) in gs.iter().enumerate() {
        let n_terms = 9u32;
        let oracle = lagrange_inverse(&Dense::from_terms(g), n_terms);
        let cap = Head::At(Half(2 * n_terms as i64 + 1));
        let got = exact(g).comp_inverse(Half::ONE, cap).unwrap();
        assert_matches(&format!("lagrange case {i}"), &got, &oracle, 2 * n_terms as i64 + 1);
        // the defining identity, both ways around
        let forward = exact(g).compose(&got, cap).unwrap();
        let backward = got.compose(&exact(g), cap).unwrap();
        let id = exact(&terms(&[(2, 1, 1)]));
        assert!(forward.agrees_with(&id), "lagrange case {i}: g o h = id");
        assert!(backward.agrees_with(&id), "lagrange case {i}: h o g = id");
    }
}

#[test]
fn log_derivative_matches_oracle() {
    // dlog f = f' / f, cross-checked by multiplying back: f * dlog(f) = f'
    let f = terms(&[(2, 1, 1), (4, 1, 1), (8, -2, 7)]);
    let got = exact(&f).log_derivative(Head::At(Half(18))).unwrap();
    let back = got.mul(&exact(&f)).unwrap();
    let fprime = exact(&f).derivative();
    assert!(back.agrees_with(&fprime), "f * dlog f = f'");
    // and directly against oracle division
    let bound = 14i64;
    let fprime_oracle = Dense::from_terms(&terms(&[(0, 1, 1), (2, 2, 1), (6, -8, 7)]));
    let oracle = fprime_oracle.mul(&inv_truncated(&Dense::from_terms(&f), bound + 4)).truncate(bound);
    assert_matches("dlog", &got, &oracle, bound);
}

#[test]
fn substitution_chain_rule_against_oracle() {
    // residue invariance: res(f' o g * g') = 0 and the chain rule
    // (f o g)' = (f' o g) g' coefficientwise against the oracle
    let f = terms(&[(-2, 1, 1), (4, 1, 2)]);
    let g = terms(&[(2, 1, 1), (6, -1, 1)]);
    let cap = Head::At(Half(16));
    let lhs = exact(&f).compose(&exact(&g), cap).unwrap().derivative();
    let rhs = exact(&f)
        .derivative()
        .compose(&exact(&g), cap)
        .unwrap()
        .mul(&exact(&g).derivative())
        .unwrap();
    assert!(lhs.agrees_with(&rhs), "chain rule");
    assert_eq!(rhs.residue().unwrap(), Rational::zero());
}
