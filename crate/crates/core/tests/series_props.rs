//! Property tests for the algebraic laws and, above all, the soundness
//! contract of the precision tracker: every coefficient a result claims to
//! know must be unchanged when the computation is repeated with more exact
//! inputs, and windows shrink predictably, never silently.

mod common;

use common::exact;
use proptest::prelude::*;
use tate_core::scalars::{Half, Rational, RationalField};
use tate_core::series::{Head, LaurentSeries};

type S = LaurentSeries<RationalField>;

fn arb_terms(
    emin: i64,
    emax: i64,
    max_terms: usize,
) -> impl Strategy<Value = Vec<(i64, Rational)>> {
    prop::collection::vec(
        (emin..=emax, -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(|v| v.into_iter().map(|(e, p, q)| (e, Rational::new(p, q))).collect())
}

fn arb_series() -> impl Strategy<Value = S> {
    (arb_terms(-6, 6, 5), prop::option::of(7i64..=12)).prop_map(|(t, h)| {
        let head = match h {
            Some(h) => Head::At(Half(h)),
            None => Head::Inf,
        };
        LaurentSeries::from_terms(
            RationalField,
            t.into_iter().map(|(e, c)| (Half(e), c)),
            head,
        )
    })
}

fn arb_exact() -> impl Strategy<Value = S> {
    arb_terms(-6, 6, 5).prop_map(|t| exact(&t))
}

/// Exact series with integral exponents only (doubled values even).
fn arb_exact_integral() -> impl Strategy<Value = S> {
    arb_terms(-3, 3, 5).prop_map(|t| {
        let doubled: Vec<(i64, Rational)> = t.into_iter().map(|(e, c)| (2 * e, c)).collect();
        exact(&doubled)
    })
}

/// A series 1 + (terms at strictly positive exponents): always invertible.
fn arb_unit() -> impl Strategy<Value = S> {
    arb_terms(1, 6, 4).prop_map(|t| {
        exact(&t).add(&LaurentSeries::one(RationalField)).unwrap()
    })
}

/// x + integral higher-order terms: admissible for compositional inversion.
fn arb_invertible_arg() -> impl Strategy<Value = S> {
    arb_terms(2, 8, 4).prop_map(|t| {
        let tail: Vec<(i64, Rational)> =
            t.into_iter().map(|(e, c)| (2 * (e / 2).max(2), c)).collect();
        exact(&tail)
            .add(&LaurentSeries::monomial(RationalField, Rational::one(), Half(2)))
            .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn add_commutes(f in arb_series(), g in arb_series()) {
        let a = f.add(&g).unwrap();
        let b = g.add(&f).unwrap();
        prop_assert_eq!(a.head(), b.head());
        prop_assert!(a.agrees_with(&b));
    }

    #[test]
    fn mul_commutes(f in arb_series(), g in arb_series()) {
        let a = f.mul(&g).unwrap();
        let b = g.mul(&f).unwrap();
        prop_assert_eq!(a.head(), b.head());
        prop_assert!(a.agrees_with(&b));
    }

    #[test]
    fn mul_associates_exactly(f in arb_exact(), g in arb_exact(), h in arb_exact()) {
        let a = f.mul(&g).unwrap().mul(&h).unwrap();
        let b = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(a.head(), Head::Inf);
        prop_assert!(a.agrees_with(&b));
    }

    #[test]
    fn mul_distributes(f in arb_series(), g in arb_exact(), h in arb_exact()) {
        let a = f.mul(&g.add(&h).unwrap()).unwrap();
        let b = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert!(a.agrees_with(&b));
    }

    #[test]
    fn truncating_an_input_never_changes_known_output(
        f in arb_exact(),
        g in arb_exact(),
        cut in 0i64..=8,
    ) {
        // the soundness contract: claims survive refinement
        let full = f.mul(&g).unwrap();
        let cutf = f.truncated_to(Head::At(Half(cut)));
        let part = cutf.mul(&g).unwrap();
        prop_assert!(part.agrees_with(&full), "truncated claims disagree with exact ones");
    }

    #[test]
    fn leibniz(f in arb_exact(), g in arb_exact()) {
        let lhs = f.mul(&g).unwrap().derivative();
        let rhs = f.derivative().mul(&g).unwrap()
            .add(&f.mul(&g.derivative()).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn derivatives_have_no_residue(f in arb_exact()) {
        prop_assert_eq!(f.derivative().residue().unwrap(), Rational::zero());
    }

    #[test]
    fn galois_is_a_multiplicative_involution(f in arb_series(), g in arb_series()) {
        prop_assert!(f.galois().galois().agrees_with(&f));
        let a = f.mul(&g).unwrap().galois();
        let b = f.galois().mul(&g.galois()).unwrap();
        prop_assert!(a.agrees_with(&b));
    }

    #[test]
    fn units_invert_and_round_trip(f in arb_unit(), cap in 8i64..=16) {
        let inv = f.mul_inverse(Head::At(Half(cap))).unwrap();
        match inv.head() {
            Head::At(h) => prop_assert!(h >= Half(cap), "inverse fell short of the cap"),
            Head::Inf => {}
        }
        let product = inv.mul(&f).unwrap();
        prop_assert!(product.agrees_with(&LaurentSeries::one(RationalField)));
    }

    #[test]
    fn compositional_inverse_round_trips(g in arb_invertible_arg(), cap in 8i64..=14 ) {
        let cap = Head::At(Half(2 * cap));
        let h = g.comp_inverse(Half::ONE, cap).unwrap();
        let forward = g.compose(&h, cap).unwrap();
        let x = LaurentSeries::monomial(RationalField, Rational::one(), Half(2));
        prop_assert!(forward.agrees_with(&x), "g o g^-1 != id");
        let backward = h.compose(&g, cap).unwrap();
        prop_assert!(backward.agrees_with(&x), "g^-1 o g != id");
    }

    #[test]
    fn composition_is_a_ring_map(
        f in arb_exact_integral(),
        f2 in arb_exact_integral(),
        g in arb_invertible_arg(),
    ) {
        let cap = Head::At(Half(20));
        let lhs = f.mul(&f2).unwrap().compose(&g, cap).unwrap();
        let rhs = f.compose(&g, cap).unwrap().mul(&f2.compose(&g, cap).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs), "(f f2) o g != (f o g)(f2 o g)");
        let sum_lhs = f.add(&f2).unwrap().compose(&g, cap).unwrap();
        let sum_rhs = f.compose(&g, cap).unwrap().add(&f2.compose(&g, cap).unwrap()).unwrap();
        prop_assert!(sum_lhs.agrees_with(&sum_rhs), "additivity under composition");
    }

    #[test]
    fn residue_is_invariant_under_admissible_substitution(
        f in arb_exact_integral(),
        g in arb_invertible_arg(),
    ) {
        // res(f) = res((f o g) g') whenever f is exact and g is admissible
        let cap = Head::At(Half(40));
        let moved = f.compose(&g, cap).unwrap().mul(&g.derivative()).unwrap();
        prop_assert_eq!(moved.residue().unwrap(), f.residue().unwrap());
    }
}
