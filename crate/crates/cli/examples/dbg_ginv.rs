use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tate_core::scalars::CoefficientRing;
use tate_core::scalars::{Half, NilElem, NilpotentRing, Rational};
use tate_core::series::{Head, LaurentSeries};

fn rand_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.random_range(-9..=9), rng.random_range(1..=9))
}

fn rand_nil_coeff(rng: &mut ChaCha8Rng, ring: &NilpotentRing) -> NilElem {
    let mut coeffs = vec![Rational::zero()];
    for _ in 1..ring.degree() {
        coeffs.push(if rng.random_range(0..2) == 0 {
            rand_rational(rng)
        } else {
            Rational::zero()
        });
    }
    NilElem::from_coeffs(coeffs)
}

fn rand_group_element(rng: &mut ChaCha8Rng, ring: &NilpotentRing) -> LaurentSeries<NilpotentRing> {
    let mut terms = Vec::new();
    for j in -2i64..=0 {
        if rng.random_range(0..2) == 0 {
            terms.push((Half::int(j), rand_nil_coeff(rng, ring)));
        }
    }
    terms.push((Half::int(1), ring.one()));
    for j in 2i64..=4 {
        if rng.random_range(0..2) == 0 {
            terms.push((Half::int(j), NilElem::constant(rand_rational(rng))));
        }
    }
    LaurentSeries::from_terms(ring.clone(), terms, Head::Inf)
}

fn main() {
    let ring = NilpotentRing::new(4);
    let mut rng = ChaCha8Rng::seed_from_u64(1729);
    let cap = Head::At(Half::int(8));
    let t_all = std::time::Instant::now();
    for i in 0..50 {
        let g = rand_group_element(&mut rng, &ring);
        let t0 = std::time::Instant::now();
        let mut used = None;
        let mut extra = Half::int(16);
        for _ in 0..4 {
            let inv = g.comp_inverse(Half::ONE, cap.shift(extra)).unwrap();
            let r = g.compose(&inv, cap).unwrap();
            if r.head() >= cap {
                used = Some(extra);
                break;
            }
            extra = extra
                + match (cap, r.head()) {
                    (Head::At(c), Head::At(h)) => (c - h) + Half::int(1),
                    _ => Half::int(16),
                };
        }
        let dt = t0.elapsed();
        if dt.as_millis() > 400 || used.is_none() {
            eprintln!("elt {i}: extra {used:?} in {dt:?}  g = {}", g.render("e"));
        }
    }
    eprintln!("50 round-trip checks in {:?}", t_all.elapsed());
}
