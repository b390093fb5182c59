//! Exact matrices of graded operators on the polynomial Fock space, block by
//! weight, and the quadratic fit that extracts the central term from the
//! commutators of the normally ordered quadratic operators.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::{Half, Rational};
use crate::series::LaurentSeries;

use super::{apply_mode, enumerate_basis, rho_nu, rho_sigma, virasoro_apply, FockPoly};
use crate::scalars::RationalField;

/// A dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * q.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c).clone() + a.clone() * other.get(k, c).clone();
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Some(c) when the matrix is square, nonempty, and equal to c * identity.
    pub fn scalar_of_identity(&self) -> Option<Rational> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        for r in 0..self.rows {
            for k in 0..self.cols {
                let expect = if r == k { c.clone() } else { Rational::zero() };
                if *self.get(r, k) != expect {
                    return None;
                }
            }
        }
        Some(c)
    }
}

/// A weight-homogeneous operator recorded on the weight window [0, window]:
/// the block at source weight w maps the weight-w space to the space of
/// weight w - shift. Blocks whose target weight is negative have zero rows.
#[derive(Clone, Debug)]
pub struct GradedOperator {
    shift: Half,
    window: Half,
    blocks: BTreeMap<Half, Matrix>,
}

impl GradedOperator {
    /// Record the matrix of `op` on every weight space in [0, window].
    /// `op` must lower weight by exactly `shift` on homogeneous input.
    pub fn materialize<F>(shift: Half, window: Half, op: F) -> Result<GradedOperator>
    where
        F: Fn(&FockPoly) -> Result<FockPoly>,
    {
        if window.0 < 0 {
            return Err(Error::WindowMismatch(format!("empty weight window [0, {window}]")));
        }
        let mut blocks = BTreeMap::new();
        let mut w = Half(0);
        while w <= window {
            let src = enumerate_basis(w);
            let target = w - shift;
            let tgt = enumerate_basis(target);
            let index: BTreeMap<&super::Monomial, usize> =
                tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut mat = Matrix::zeros(tgt.len(), src.len());
            for (col, m) in src.iter().enumerate() {
                let image = op(&FockPoly::from_monomial(m.clone(), Rational::one()))?;
                for (im, c) in image.terms() {
                    match index.get(im) {
                        Some(row) => mat.set(*row, col, c.clone()),
                        None => {
                            return Err(Error::NotHomogeneous(format!(
                                "image term of weight {} where weight {target} was \
                                 promised (shift {shift} from weight {w})",
                                super::monomial_weight(im)
                            )));
                        }
                    }
                }
            }
            blocks.insert(w, mat);
            w = w + Half(1);
        }
        Ok(GradedOperator { shift, window, blocks })
    }

    pub fn shift(&self) -> Half {
        self.shift
    }

    pub fn window(&self) -> Half {
        self.window
    }

    pub fn block(&self, w: Half) -> Result<&Matrix> {
        self.blocks.get(&w).ok_or_else(|| {
            Error::WindowMismatch(format!(
                "no block at weight {w}: operator recorded on [0, {}]",
                self.window
            ))
        })
    }

    /// self o other (apply `other` first). The result is only known where
    /// both factors are: its window is min(other.window, self.window + other.shift).
    pub fn compose(&self, other: &GradedOperator) -> Result<GradedOperator> {
        let window = other.window.min(self.window + other.shift);
        if window.0 < 0 {
            return Err(Error::WindowMismatch(format!(
                "composition window is empty: shifts {} after {} on windows [0, {}], [0, {}]",
                self.shift, other.shift, self.window, other.window
            )));
        }
        let shift = self.shift + other.shift;
        let mut blocks = BTreeMap::new();
        let mut w = Half(0);
        while w <= window {
            let mid = w - other.shift;
            let inner = other.block(w)?;
            let mat = if mid.0 < 0 {
                // other lands in a negative weight: the zero space
                Matrix::zeros(enumerate_basis(w - shift).len(), inner.cols())
            } else {
                self.block(mid)?.mul(inner)
            };
            blocks.insert(w, mat);
            w = w + Half(1);
        }
        Ok(GradedOperator { shift, window, blocks })
    }

    pub fn add(&self, other: &GradedOperator) -> Result<GradedOperator> {
        if self.shift != other.shift {
            return Err(Error::WindowMismatch(format!(
                "cannot add operators of different shifts {} and {}",
                self.shift, other.shift
            )));
        }
        let window = self.window.min(other.window);
        let mut blocks = BTreeMap::new();
        let mut w = Half(0);
        while w <= window {
            blocks.insert(w, self.block(w)?.add(other.block(w)?));
            w = w + Half(1);
        }
        Ok(GradedOperator { shift: self.shift, window, blocks })
    }

    pub fn sub(&self, other: &GradedOperator) -> Result<GradedOperator> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> GradedOperator {
        GradedOperator {
            shift: self.shift,
            window: self.window,
            blocks: self.blocks.iter().map(|(w, m)| (*w, m.scale(q))).collect(),
        }
    }

    /// self o other - other o self on the common window.
    pub fn commutator(&self, other: &GradedOperator) -> Result<GradedOperator> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Some(c) when every recorded block is c times the identity.
    pub fn scalar_of_identity(&self) -> Option<Rational> {
        if self.shift != Half(0) {
            return None;
        }
        let mut value: Option<Rational> = None;
        let mut w = Half(0);
        while w <= self.window {
            let c = self.blocks.get(&w)?.scalar_of_identity()?;
            match &value {
                None => value = Some(c),
                Some(prev) if *prev != c => return None,
                _ => {}
            }
            w = w + Half(1);
        }
        value
    }
}

/// The matrix of the mode alpha_s on [0, window].
pub fn materialize_mode(s: Half, window: Half) -> Result<GradedOperator> {
    GradedOperator::materialize(s, window, |p| apply_mode(s, p))
}

/// The matrix of the quadratic operator L_n on [0, window].
pub fn materialize_virasoro(n: i64, window: Half) -> Result<GradedOperator> {
    GradedOperator::materialize(Half::int(n), window, |p| virasoro_apply(n, p))
}

/// The matrix of rho(c e^k) on [0, window]; the input must be an exact
/// single-term integral series, since a sum of modes of different indices is
/// not weight-homogeneous and has no graded matrix.
pub fn materialize_rho_monomial(
    f: &LaurentSeries<RationalField>,
    window: Half,
) -> Result<GradedOperator> {
    if f.head() != crate::series::Head::Inf {
        return Err(Error::InvalidArgument("rho needs an exact series".into()));
    }
    let mut terms = f.terms();
    let (e, c) = terms
        .next()
        .ok_or_else(|| Error::NotHomogeneous("rho(0) has no graded matrix".into()))?;
    if terms.next().is_some() {
        return Err(Error::NotHomogeneous(
            "rho of a multi-term series mixes weights; materialize one term at a time"
                .into(),
        ));
    }
    let k = e.as_integer().ok_or(Error::NotIntegral(e))?;
    let scale = rho_nu(k) * c.clone();
    let s = rho_sigma(k);
    Ok(GradedOperator::materialize(s, window, |p| apply_mode(s, p))?.scale(&scale))
}

/// The result of fitting the scalar defects d_m of [L_m, L_(-m)] - 2m L_0
/// to the odd cubic alpha m^3 + beta m.
#[derive(Clone, Debug)]
pub struct CentralChargeFit {
    pub alpha: Rational,
    pub beta: Rational,
    pub c: Rational,
    pub defects: Vec<(i64, Rational)>,
}

/// Measure the defects d_m for m = 1..=mmax on the given weight window,
/// check each is a scalar, fit d_m = alpha m^3 + beta m from m = 1, 2, and
/// verify the fit on the remaining m. The central charge is c = 12 alpha.
pub fn central_charge_fit(mmax: i64, window: Half) -> Result<CentralChargeFit> {
    if mmax < 2 {
        return Err(Error::InvalidArgument(
            "need defects at m = 1 and 2 to fit two coefficients: take mmax >= 2".into(),
        ));
    }
    if window < Half::int(mmax) {
        return Err(Error::WindowMismatch(format!(
            "window [0, {window}] leaves no common blocks at m = {mmax}; \
             need window >= {mmax}"
        )));
    }
    let l0 = materialize_virasoro(0, window)?;
    let mut defects = Vec::new();
    for m in 1..=mmax {
        let up = materialize_virasoro(m, window)?;
        let down = materialize_virasoro(-m, window)?;
        let defect = up
            .commutator(&down)?
            .sub(&l0.scale(&Rational::from_int(2 * m)))?;
        let d = defect.scalar_of_identity().ok_or_else(|| {
            Error::FitFailure(format!(
                "the defect of [L_{m}, L_(-{m})] - {}L_0 is not a scalar",
                2 * m
            ))
        })?;
        defects.push((m, d));
    }
    let d1 = defects[0].1.clone();
    let d2 = defects[1].1.clone();
    // alpha + beta = d1, 8 alpha + 2 beta = d2
    let alpha = (d2 - d1.clone() * Rational::from_int(2)) / Rational::from_int(6);
    let beta = d1 - alpha.clone();
    for (m, d) in &defects {
        let mq = Rational::from_int(*m);
        let predicted = alpha.clone() * mq.clone() * mq.clone() * mq.clone() + beta.clone() * mq;
        if predicted != *d {
            return Err(Error::FitFailure(format!(
                "defect at m = {m} is {d}, but the fit predicts {predicted}"
            )));
        }
    }
    let c = alpha.clone() * Rational::from_int(12);
    Ok(CentralChargeFit { alpha, beta, c, defects })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Head;

    #[test]
    fn mode_matrices_shapes_and_values() {
        // alpha_(-1/2) on [0, 2]: block at w has dim(w + 1/2) rows, dim(w) cols
        let op = materialize_mode(Half(-1), Half(4)).unwrap();
        let b0 = op.block(Half(0)).unwrap();
        assert_eq!((b0.rows(), b0.cols()), (1, 1));
        assert_eq!(*b0.get(0, 0), Rational::one());
        // alpha_(1/2) lowers weight; its block at w = 0 has zero rows
        let down = materialize_mode(Half(1), Half(4)).unwrap();
        let d0 = down.block(Half(0)).unwrap();
        assert_eq!((d0.rows(), d0.cols()), (0, 1));
    }

    #[test]
    fn matrix_commutators_match_symbolic() {
        // [alpha_(1/2), alpha_(-1/2)] = 1/2 on every block of the window
        let up = materialize_mode(Half(-1), Half(6)).unwrap();
        let down = materialize_mode(Half(1), Half(6)).unwrap();
        let bracket = down.commutator(&up).unwrap();
        assert_eq!(bracket.scalar_of_identity(), Some(Rational::new(1, 2)));
    }

    #[test]
    fn virasoro_matrix_l0_is_weight() {
        let l0 = materialize_virasoro(0, Half(5)).unwrap();
        for wd in 0..=5 {
            let b = l0.block(Half(wd)).unwrap();
            let dim = enumerate_basis(Half(wd)).len();
            assert_eq!(b, &Matrix::identity(dim).scale(&Half(wd).to_rational()));
        }
    }

    #[test]
    fn central_charge_is_one() {
        let fit = central_charge_fit(3, Half::int(4)).unwrap();
        assert_eq!(fit.alpha, Rational::new(1, 12));
        assert_eq!(fit.beta, Rational::new(1, 24));
        assert_eq!(fit.c, Rational::one());
        assert_eq!(fit.defects[0], (1, Rational::new(1, 8)));
        // d_2 = 8/12 + 2/24 = 3/4
        assert_eq!(fit.defects[1], (2, Rational::new(3, 4)));
    }

    #[test]
    fn fit_needs_enough_data_and_window() {
        assert!(central_charge_fit(1, Half::int(4)).is_err());
        assert!(central_charge_fit(4, Half::int(2)).is_err());
    }

    #[test]
    fn rho_monomial_matrix_matches_mode() {
        // rho(e^-1) = -2 alpha_(1/2)
        let em1 =
            LaurentSeries::monomial(RationalField, Rational::one(), Half::int(-1));
        let op = materialize_rho_monomial(&em1, Half(5)).unwrap();
        let mode = materialize_mode(Half(1), Half(5)).unwrap();
        let diff = op.sub(&mode.scale(&Rational::from_int(-2))).unwrap();
        let mut w = Half(0);
        while w <= diff.window() {
            assert!(diff.block(w).unwrap().is_zero());
            w = w + Half(1);
        }
        // multi-term input is rejected
        let sum = em1.add(&LaurentSeries::one(RationalField)).unwrap();
        assert!(materialize_rho_monomial(&sum, Half(5)).is_err());
        // truncated input is rejected
        let trunc = LaurentSeries::from_terms(
            RationalField,
            [(Half(0), Rational::one())],
            Head::At(Half(8)),
        );
        assert!(materialize_rho_monomial(&trunc, Half(5)).is_err());
    }

    #[test]
    fn heisenberg_grid_via_rho_matrices() {
        // [rho(e^a), rho(e^b)] = (-1)^a delta_(a+b+1, 0) on a small grid
        let window = Half(7);
        for a in -3i64..=2 {
            for b in -3i64..=2 {
                let fa = LaurentSeries::monomial(RationalField, Rational::one(), Half::int(a));
                let fb = LaurentSeries::monomial(RationalField, Rational::one(), Half::int(b));
                let oa = materialize_rho_monomial(&fa, window).unwrap();
                let ob = materialize_rho_monomial(&fb, window).unwrap();
                let bracket = oa.commutator(&ob).unwrap();
                if a + b + 1 == 0 {
                    let expect = if a.rem_euclid(2) == 0 {
                        Rational::one()
                    } else {
                        -Rational::one()
                    };
                    match bracket.scalar_of_identity() {
                        Some(c) => assert_eq!(c, expect, "at a={a}, b={b}"),
                        None => panic!("bracket at a={a}, b={b} is not scalar"),
                    }
                } else {
                    // off-diagonal pairs commute: every recorded block vanishes
                    let mut w = Half(0);
                    while w <= bracket.window() {
                        assert!(bracket.block(w).unwrap().is_zero(), "at a={a}, b={b}, w={w}");
                        w = w + Half(1);
                    }
                }
            }
        }
    }
}
