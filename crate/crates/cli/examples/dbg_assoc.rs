use tate_core::scalars::CoefficientRing;
use tate_core::scalars::{Half, NilElem, NilpotentRing, Rational};
use tate_core::series::{Head, LaurentSeries};

fn nil(parts: &[(usize, i64, i64)], degree: usize) -> NilElem {
    let mut coeffs = vec![Rational::zero(); degree];
    for &(i, n, d) in parts {
        coeffs[i] = Rational::new(n, d);
    }
    NilElem::from_coeffs(coeffs)
}

fn main() {
    let ring = NilpotentRing::new(4);
    // g = (3eps + 4/5eps^2 - 2/3eps^3) e^-2 + (3/5eps^2 + 5/4eps^3) e^-1
    //     + (-2/9eps - 7/5eps^2 - 3/8eps^3) + e + e^3 - 1/3 e^4
    let g = LaurentSeries::from_terms(
        ring.clone(),
        vec![
            (Half::int(-2), nil(&[(1, 3, 1), (2, 4, 5), (3, -2, 3)], 4)),
            (Half::int(-1), nil(&[(2, 3, 5), (3, 5, 4)], 4)),
            (Half::int(0), nil(&[(1, -2, 9), (2, -7, 5), (3, -3, 8)], 4)),
            (Half::int(1), NilElem::constant(Rational::new(1, 1))),
            (Half::int(3), NilElem::constant(Rational::new(1, 1))),
            (Half::int(4), NilElem::constant(Rational::new(-1, 3))),
        ],
        Head::Inf,
    );
    // h = 7eps e^-1 + e - 5/2 e^3 - 2/3 e^4
    let h = LaurentSeries::from_terms(
        ring.clone(),
        vec![
            (Half::int(-1), nil(&[(1, 7, 1)], 4)),
            (Half::int(1), NilElem::constant(Rational::new(1, 1))),
            (Half::int(3), NilElem::constant(Rational::new(-5, 2))),
            (Half::int(4), NilElem::constant(Rational::new(-2, 3))),
        ],
        Head::Inf,
    );
    // f = e + 8/7 e^3
    let f = LaurentSeries::from_terms(
        ring.clone(),
        vec![
            (Half::int(1), NilElem::constant(Rational::new(1, 1))),
            (Half::int(3), NilElem::constant(Rational::new(8, 7))),
        ],
        Head::Inf,
    );

    let cap = Head::At(Half::int(8));
    for extra in [8i64, 16, 32, 64] {
        let wide = cap.shift(Half::int(extra));
        let gh = g.compose(&h, wide).unwrap();
        let a = gh.compose(&f, cap).unwrap();
        let hf = h.compose(&f, wide).unwrap();
        let b = g.compose(&hf, cap).unwrap();
        eprintln!(
            "extra {extra}: gh head {:?}  hf head {:?}  a head {:?}  b head {:?}",
            gh.head(),
            hf.head(),
            a.head(),
            b.head()
        );
        if a.head() >= cap && b.head() >= cap {
            let au = a.truncated_to(cap);
            let bu = b.truncated_to(cap);
            let d = au.sub(&bu).unwrap();
            let first = d.terms().next().map(|(e, c)| (e, c.clone()));
            match first {
                None => eprintln!("  sides agree on the window"),
                Some((e, c)) => {
                    eprintln!("  FIRST DIFF at exponent {:?}: {}", e, ring.render(&c));
                    eprintln!("  a coeff: {}", ring.render(&au.known_coeff(e).unwrap()));
                    eprintln!("  b coeff: {}", ring.render(&bu.known_coeff(e).unwrap()));
                }
            }
        }
    }
}
