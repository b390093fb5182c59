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
    // g = (8eps + 1/5eps^3) e^-2 + (1/5eps^2 - 1/6eps^3) + e - 4/9 e^2 + 7/8 e^4
    let g = LaurentSeries::from_terms(
        ring.clone(),
        vec![
            (Half::int(-2), nil(&[(1, 8, 1), (3, 1, 5)], 4)),
            (Half::int(0), nil(&[(2, 1, 5), (3, -1, 6)], 4)),
            (Half::int(1), NilElem::constant(Rational::new(1, 1))),
            (Half::int(2), NilElem::constant(Rational::new(-4, 9))),
            (Half::int(4), NilElem::constant(Rational::new(7, 8))),
        ],
        Head::Inf,
    );
    let cap = Head::At(Half::int(8));
    let t = std::time::Instant::now();
    let mut extra = Half::int(16);
    for rung in 0..4 {
        let tr = std::time::Instant::now();
        let inv = g.comp_inverse(Half::ONE, cap.shift(extra)).unwrap();
        let r = g.compose(&inv, cap).unwrap();
        eprintln!(
            "rung {rung}: target {:?} inv head {:?} r head {:?} in {:?}",
            cap.shift(extra),
            inv.head(),
            r.head(),
            tr.elapsed()
        );
        if r.head() >= cap {
            break;
        }
        extra = extra
            + match (cap, r.head()) {
                (Head::At(c), Head::At(h)) => (c - h) + Half::int(1),
                _ => Half::int(16),
            };
    }
    eprintln!("total {:?}", t.elapsed());
}
