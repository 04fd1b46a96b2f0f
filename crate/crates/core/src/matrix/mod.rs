//! Algebra-valued matrices: the boost matrices `B`, the L-matrices, their
//! powers, the characteristic identity of `L_x0` and the projectors.

mod scalar_matrix;

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::algebra::{Coord, DivisibilityError, Element, Localized};
use crate::scalar::{lambda, qnum_sym, Scalar};

pub use scalar_matrix::ScalarMatrix;

/// Index labelling of an [`AlgMatrix`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    /// `{-, +}`
    Spinor,
    /// `{--, -+, +-, ++}`
    SpinorPair,
    /// `{0, -, +, 3}`
    FourVector,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("no closed power formula for {0:?}")]
    NoClosedForm(Coord),
    #[error(transparent)]
    Divisibility(#[from] DivisibilityError),
}

/// Square matrix with entries in the delta-localized algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgMatrix {
    dim: usize,
    basis: Basis,
    entries: Vec<Localized>,
}

impl AlgMatrix {
    pub fn zero(dim: usize, basis: Basis) -> Self {
        AlgMatrix {
            dim,
            basis,
            entries: vec![Localized::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize, basis: Basis) -> Self {
        AlgMatrix::scalar_identity(dim, basis, Element::one())
    }

    /// `e` times the identity.
    pub fn scalar_identity(dim: usize, basis: Basis, e: Element) -> Self {
        let mut m = AlgMatrix::zero(dim, basis);
        for i in 0..dim {
            m.set(i, i, Localized::from(e.clone()));
        }
        m
    }

    pub fn from_elements(dim: usize, basis: Basis, entries: Vec<Element>) -> Self {
        assert_eq!(entries.len(), dim * dim, "wrong number of entries");
        AlgMatrix {
            dim,
            basis,
            entries: entries.into_iter().map(Localized::from).collect(),
        }
    }

    pub fn from_scalar_matrix(m: &ScalarMatrix, basis: Basis) -> Self {
        assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        let entries = (0..n * n)
            .map(|k| Localized::from(Element::scalar(m.get(k / n, k % n).clone())))
            .collect();
        AlgMatrix {
            dim: n,
            basis,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn get(&self, i: usize, j: usize) -> &Localized {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Localized) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Localized] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Localized> {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Localized::is_zero)
    }

    pub fn with_basis(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }

    pub fn map(&self, f: impl Fn(&Localized) -> Localized + Sync + Send) -> AlgMatrix {
        AlgMatrix {
            dim: self.dim,
            basis: self.basis,
            entries: self.entries.par_iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgMatrix {
        self.map(|x| x.scale(c))
    }

    /// Multiplies every entry by `e` from the left.
    pub fn lmul_element(&self, e: &Element) -> AlgMatrix {
        self.map(|x| x.lmul(e))
    }

    pub fn localize_div(&self, n: u32) -> AlgMatrix {
        self.map(|x| x.localize_div(n))
    }

    /// All entries with their denominators cleared.
    pub fn try_clear(&self) -> Result<AlgMatrix, DivisibilityError> {
        let entries = self
            .entries
            .iter()
            .map(|x| x.try_clear().map(Localized::from))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgMatrix {
            dim: self.dim,
            basis: self.basis,
            entries,
        })
    }

    /// `t * self * t_inv` for scalar matrices.
    pub fn conjugate(&self, t: &ScalarMatrix, t_inv: &ScalarMatrix, basis: Basis) -> AlgMatrix {
        let tm = AlgMatrix::from_scalar_matrix(t, basis);
        let ti = AlgMatrix::from_scalar_matrix(t_inv, basis);
        let inner = self.clone().with_basis(basis);
        &(&tm * &inner) * &ti
    }

    /// Assembles a block matrix from four equally sized blocks.
    pub fn block(
        tl: &AlgMatrix,
        tr: &AlgMatrix,
        bl: &AlgMatrix,
        br: &AlgMatrix,
        basis: Basis,
    ) -> Self {
        let n = tl.dim;
        let mut m = AlgMatrix::zero(2 * n, basis);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, tl.get(i, j).clone());
                m.set(i, j + n, tr.get(i, j).clone());
                m.set(i + n, j, bl.get(i, j).clone());
                m.set(i + n, j + n, br.get(i, j).clone());
            }
        }
        m
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Localized]) -> Vec<Localized> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .into_par_iter()
            .map(|i| (0..self.dim).map(|k| self.get(i, k) * &v[k]).sum())
            .collect()
    }
}

impl Mul<&AlgMatrix> for &AlgMatrix {
    type Output = AlgMatrix;
    fn mul(self, o: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let n = self.dim;
        let entries = (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..n)
                    .filter(|&l| !self.get(i, l).is_zero() && !o.get(l, j).is_zero())
                    .map(|l| self.get(i, l) * o.get(l, j))
                    .sum()
            })
            .collect();
        AlgMatrix {
            dim: n,
            basis: self.basis,
            entries,
        }
    }
}

impl Add<&AlgMatrix> for &AlgMatrix {
    type Output = AlgMatrix;
    fn add(self, o: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        AlgMatrix {
            dim: self.dim,
            basis: self.basis,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&AlgMatrix> for &AlgMatrix {
    type Output = AlgMatrix;
    fn sub(self, o: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        AlgMatrix {
            dim: self.dim,
            basis: self.basis,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for AlgMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgMatrix({:?})\n{self}", self.basis)
    }
}

fn s(n: i64) -> Scalar {
    Scalar::s_pow(n)
}

/// `lambda / [2]^(1/2) = lambda r / [2]`.
fn lam_over_r() -> Scalar {
    lambda() * Scalar::r() / qnum_sym(2)
}

/// Basis change `x_I = M[I][alpha] x_alpha` from four-vector to spinor-pair
/// coordinates, rows `--, -+, +-, ++`, columns `0, -, +, 3`.
pub fn spinor_change() -> ScalarMatrix {
    let z = Scalar::zero;
    let r = Scalar::r;
    ScalarMatrix::from_rows(vec![
        vec![z(), r(), z(), z()],
        vec![-s(1), z(), z(), s(1)],
        vec![s(3), z(), z(), s(-1)],
        vec![z(), z(), r(), z()],
    ])
}

fn four_vector_transform() -> &'static (ScalarMatrix, ScalarMatrix) {
    static T: OnceLock<(ScalarMatrix, ScalarMatrix)> = OnceLock::new();
    T.get_or_init(|| {
        let t = spinor_change().transpose();
        let ti = t.inverse().expect("basis change is invertible");
        (t, ti)
    })
}

/// Moves a spinor-pair matrix to the four-vector basis.
pub fn to_four_vector(m: &AlgMatrix) -> AlgMatrix {
    let (t, ti) = four_vector_transform();
    m.conjugate(t, ti, Basis::FourVector)
}

/// Moves a four-vector matrix to the spinor-pair basis.
pub fn to_spinor_pair(m: &AlgMatrix) -> AlgMatrix {
    let (t, ti) = four_vector_transform();
    m.conjugate(ti, t, Basis::SpinorPair)
}

fn mat2(a: Element, b: Element, c: Element, d: Element) -> AlgMatrix {
    AlgMatrix::from_elements(2, Basis::Spinor, vec![a, b, c, d])
}

/// The 2x2 boost matrix `B_alpha`.
pub fn b_matrix(alpha: Coord) -> AlgMatrix {
    let two = qnum_sym(2);
    let lam = lambda();
    let z = Element::zero;
    match alpha {
        Coord::X0 => {
            let d = qnum_sym(4) / (&two * &two);
            let x0 = Element::x0().scale(&d);
            let x3 = Element::x3();
            mat2(
                &x0 + &x3.scale(&(&lam / &(Scalar::q() * two.clone()))),
                Element::x_plus().scale(&(s(-1) * lam_over_r())),
                Element::x_minus().scale(&-(s(1) * lam_over_r())),
                &x0 - &x3.scale(&(Scalar::q() * lam / two)),
            )
        }
        Coord::XMinus => mat2(
            Element::x_minus(),
            Element::x30().scale(&(s(-1) * lam_over_r())),
            z(),
            Element::x_minus(),
        ),
        Coord::XPlus => mat2(
            Element::x_plus(),
            z(),
            Element::x30().scale(&-(s(1) * lam_over_r())),
            Element::x_plus(),
        ),
        Coord::X30 => mat2(
            Element::x30().scale(&Scalar::q_pow(-1)),
            z(),
            z(),
            Element::x30().scale(&Scalar::q()),
        ),
        Coord::X3 => &b_matrix(Coord::X30) + &b_matrix(Coord::X0),
    }
}

/// `q^(-1/2) lambda [2]^(1/2)`.
fn off_block_factor() -> Scalar {
    s(-1) * lambda() * Scalar::r()
}

/// The L-matrix in block form, spinor-pair basis.
pub fn l_matrix_spinor(alpha: Coord) -> AlgMatrix {
    let z = AlgMatrix::zero(2, Basis::Spinor);
    let q = Scalar::q();
    let qi = Scalar::q_pow(-1);
    let sp = Basis::SpinorPair;
    match alpha {
        Coord::X0 => {
            let b = b_matrix(Coord::X0);
            AlgMatrix::block(&b, &z, &z, &b, sp)
        }
        Coord::XMinus => {
            let b = b_matrix(Coord::XMinus);
            AlgMatrix::block(
                &b.scale(&q),
                &b_matrix(Coord::X3).scale(&off_block_factor()),
                &z,
                &b.scale(&qi),
                sp,
            )
        }
        Coord::XPlus => {
            let b = b_matrix(Coord::XPlus);
            AlgMatrix::block(&b.scale(&qi), &z, &z, &b.scale(&q), sp)
        }
        Coord::X30 => {
            let b = b_matrix(Coord::X30);
            AlgMatrix::block(
                &b,
                &b_matrix(Coord::XPlus).scale(&off_block_factor()),
                &z,
                &b,
                sp,
            )
        }
        Coord::X3 => &l_matrix_spinor(Coord::X30) + &l_matrix_spinor(Coord::X0),
    }
}

const ALL_COORDS: [Coord; 5] = [
    Coord::X0,
    Coord::XMinus,
    Coord::XPlus,
    Coord::X3,
    Coord::X30,
];

fn coord_slot(c: Coord) -> usize {
    ALL_COORDS.iter().position(|x| *x == c).unwrap()
}

/// The L-matrix in the four-vector basis `{0, -, +, 3}`.
pub fn l_matrix(alpha: Coord) -> &'static AlgMatrix {
    static CACHE: OnceLock<Vec<AlgMatrix>> = OnceLock::new();
    &CACHE.get_or_init(|| {
        ALL_COORDS
            .iter()
            .map(|c| to_four_vector(&l_matrix_spinor(*c)))
            .collect()
    })[coord_slot(alpha)]
}

/// `L_x0` written out in the four-vector basis.
pub fn l_matrix_x0_explicit() -> AlgMatrix {
    let two = qnum_sym(2);
    let lam = lambda();
    let q = Scalar::q;
    let qp = Scalar::q_pow;
    let (x0, xm, xp, x3) = (
        Element::x0(),
        Element::x_minus(),
        Element::x_plus(),
        Element::x3(),
    );
    let d = x0.scale(&(qnum_sym(4) / two.clone()));
    let e = |x: &Element, c: Scalar| x.scale(&c);
    let entries = vec![
        d.clone(),
        e(&xm, q() * lam.clone()),
        e(&xp, q() * lam.clone()),
        e(&x3, q() * lam.clone()),
        e(&xp, -(lam.clone() * qp(-2))),
        &d + &e(&x3, lam.clone() * qp(-1)),
        Element::zero(),
        e(&xp, lam.clone()),
        e(&xm, -lam.clone()),
        Element::zero(),
        &d - &e(&x3, q() * lam.clone()),
        e(&xm, -lam.clone()),
        e(&x3, lam.clone() * qp(-1)),
        e(&xm, -(q() * lam.clone())),
        e(&xp, lam.clone() * qp(-1)),
        &d - &e(&x3, &lam * &lam),
    ];
    AlgMatrix::from_elements(4, Basis::FourVector, entries).scale(&(Scalar::one() / two))
}

/// Repeated multiplication.
pub fn mat_pow_naive(m: &AlgMatrix, n: u32) -> AlgMatrix {
    let mut acc = AlgMatrix::identity(m.dim, m.basis);
    for _ in 0..n {
        acc = &acc * m;
    }
    acc
}

/// `b = [2] x0 / 2`.
pub fn b_central() -> Element {
    Element::x0().scale(&(qnum_sym(2) / Scalar::from_int(2)))
}

/// `c = x0^2 + lambda^2 / [2]^2 x^2`.
pub fn c_central() -> Element {
    let two = qnum_sym(2);
    let x0 = Element::x0();
    &x0 * &x0 + Element::x_square().scale(&(lambda().pow(2) / two.pow(2)))
}

/// `tau_+ = q xip + q^-1 xim`, `tau_- = q^-1 xip + q xim`.
pub fn tau(sign: Sign) -> Element {
    let k = match sign {
        Sign::Plus => 1,
        Sign::Minus => -1,
    };
    Element::xi_plus().scale(&Scalar::q_pow(k)) + Element::xi_minus().scale(&Scalar::q_pow(-k))
}

/// `(tau_+^n - tau_-^n) / (tau_+ - tau_-)`, an exact division by `lambda delta`.
pub fn tau_quotient(n: u32) -> Element {
    let diff = tau(Sign::Plus).pow(n) - tau(Sign::Minus).pow(n);
    Localized::new(diff, 1)
        .try_clear()
        .expect("tau_+ - tau_- divides tau_+^n - tau_-^n")
        .scale(&(Scalar::one() / lambda()))
}

/// `M^n = h_n M - c h_(n-1)` for any `M` obeying the characteristic identity.
fn pow_from_char(m: &AlgMatrix, n: u32) -> AlgMatrix {
    if n == 0 {
        return AlgMatrix::identity(m.dim, m.basis);
    }
    let c = c_central();
    let lin = m.lmul_element(&tau_quotient(n));
    let cst = AlgMatrix::scalar_identity(m.dim, m.basis, &c * &tau_quotient(n - 1));
    &lin - &cst
}

/// Closed form of `B_alpha^n`.
pub fn b_pow_closed(alpha: Coord, n: u32) -> Result<AlgMatrix, MatrixError> {
    if n == 0 {
        return Ok(AlgMatrix::identity(2, Basis::Spinor));
    }
    let nn = n as i64;
    let bn = qnum_sym(n);
    let m = match alpha {
        Coord::X30 => {
            let p = Element::x30().pow(n);
            mat2(
                p.scale(&Scalar::q_pow(-nn)),
                Element::zero(),
                Element::zero(),
                p.scale(&Scalar::q_pow(nn)),
            )
        }
        Coord::XMinus => {
            let p = Element::x_minus().pow(n);
            let off = (&Element::x30() * &Element::x_minus().pow(n - 1))
                .scale(&(s(-1) * lam_over_r() * Scalar::q_pow(nn - 1) * bn));
            mat2(p.clone(), off, Element::zero(), p)
        }
        Coord::XPlus => {
            let p = Element::x_plus().pow(n);
            let off = (&Element::x30() * &Element::x_plus().pow(n - 1))
                .scale(&-(s(1) * lam_over_r() * Scalar::q_pow(1 - nn) * bn));
            mat2(p.clone(), Element::zero(), off, p)
        }
        Coord::X0 => pow_from_char(&b_matrix(Coord::X0), n),
        Coord::X3 => return Err(MatrixError::NoClosedForm(alpha)),
    };
    Ok(m)
}

/// Closed form of `L_alpha^n` in the four-vector basis.
pub fn l_pow_closed(alpha: Coord, n: u32) -> Result<AlgMatrix, MatrixError> {
    if n == 0 {
        return Ok(AlgMatrix::identity(4, Basis::FourVector));
    }
    let nn = n as i64;
    let z = AlgMatrix::zero(2, Basis::Spinor);
    let sp = Basis::SpinorPair;
    let spin = match alpha {
        Coord::X0 => return Ok(pow_from_char(l_matrix(Coord::X0), n)),
        Coord::XPlus => {
            let b = b_pow_closed(Coord::XPlus, n)?;
            AlgMatrix::block(
                &b.scale(&Scalar::q_pow(-nn)),
                &z,
                &z,
                &b.scale(&Scalar::q_pow(nn)),
                sp,
            )
        }
        Coord::XMinus => {
            let b = b_pow_closed(Coord::XMinus, n)?;
            let inner = &b_matrix(Coord::X30)
                .scale(&(Scalar::q_pow(nn - 1) * qnum_sym(2 * n) / qnum_sym(2)))
                + &b_matrix(Coord::X0).scale(&qnum_sym(n));
            let off = (&inner * &b_pow_closed(Coord::XMinus, n - 1)?).scale(&off_block_factor());
            AlgMatrix::block(
                &b.scale(&Scalar::q_pow(nn)),
                &off,
                &z,
                &b.scale(&Scalar::q_pow(-nn)),
                sp,
            )
        }
        Coord::X30 => {
            let b = b_pow_closed(Coord::X30, n)?;
            let off = (&b_matrix(Coord::XPlus) * &b_pow_closed(Coord::X30, n - 1)?)
                .scale(&(off_block_factor() * Scalar::q_pow(nn - 1) * qnum_sym(n)));
            AlgMatrix::block(&b, &off, &z, &b, sp)
        }
        Coord::X3 => return Err(MatrixError::NoClosedForm(alpha)),
    };
    Ok(to_four_vector(&spin))
}

/// `M^2 - [2] x0 M + c` for a matrix expected to satisfy the identity.
pub fn char_residual(m: &AlgMatrix) -> AlgMatrix {
    let sq = m * m;
    let lin = m.lmul_element(&Element::x0().scale(&qnum_sym(2)));
    let cst = AlgMatrix::scalar_identity(m.dim, m.basis, c_central());
    &(&sq - &lin) + &cst
}

/// Checks the characteristic identity of `L_x0`; the residual on failure.
pub fn char_check_l0() -> Result<(), AlgMatrix> {
    let r = char_residual(l_matrix(Coord::X0));
    if r.is_zero() {
        Ok(())
    } else {
        Err(r)
    }
}

/// Same identity for the 2x2 matrix `B_x0`.
pub fn char_check_b0() -> Result<(), AlgMatrix> {
    let r = char_residual(&b_matrix(Coord::X0));
    if r.is_zero() {
        Ok(())
    } else {
        Err(r)
    }
}

/// `(Pi_+, Pi_-)` with `Pi_+- = 1/2 +- (L_x0 - b) / (lambda delta)`.
pub fn projectors() -> &'static (AlgMatrix, AlgMatrix) {
    static P: OnceLock<(AlgMatrix, AlgMatrix)> = OnceLock::new();
    P.get_or_init(|| {
        let l0 = l_matrix(Coord::X0);
        let half = AlgMatrix::identity(4, Basis::FourVector).scale(&Scalar::from_ratio(1, 2));
        let shifted = l0 - &AlgMatrix::scalar_identity(4, Basis::FourVector, b_central());
        let frac = shifted.scale(&(Scalar::one() / lambda())).localize_div(1);
        (&half + &frac, &half - &frac)
    })
}

pub fn projector(sign: Sign) -> &'static AlgMatrix {
    let p = projectors();
    match sign {
        Sign::Plus => &p.0,
        Sign::Minus => &p.1,
    }
}

/// Evaluates a polynomial in one variable at `tau`.
fn eval_poly(coeffs: &[Scalar], t: &Element) -> Element {
    let mut acc = Element::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * t) + &Element::scalar(c.clone());
    }
    acc
}

/// `f(L_x0) = f(tau_+) Pi_+ + f(tau_-) Pi_-` for `f = sum coeffs[k] t^k`.
pub fn f_of_l0(coeffs: &[Scalar]) -> Result<AlgMatrix, MatrixError> {
    let (pp, pm) = projectors();
    let fp = eval_poly(coeffs, &tau(Sign::Plus));
    let fm = eval_poly(coeffs, &tau(Sign::Minus));
    let m = &pp.lmul_element(&fp) + &pm.lmul_element(&fm);
    Ok(m.try_clear()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b30_is_diagonal() {
        let b = b_matrix(Coord::X30);
        assert_eq!(
            b.get(0, 0).numerator(),
            &Element::x30().scale(&Scalar::q_pow(-1))
        );
        assert_eq!(b.get(1, 1).numerator(), &Element::x30().scale(&Scalar::q()));
        assert!(b.get(0, 1).is_zero() && b.get(1, 0).is_zero());
        assert!(b_matrix(Coord::XPlus).get(0, 1).is_zero());
    }

    #[test]
    fn l0_top_left_entry() {
        let two = qnum_sym(2);
        let l = l_matrix(Coord::X0);
        let expect = Element::x0().scale(&(qnum_sym(4) / (&two * &two)));
        assert_eq!(l.get(0, 0).numerator(), &expect);
    }

    #[test]
    fn block_form_matches_explicit_l0() {
        assert_eq!(l_matrix(Coord::X0), &l_matrix_x0_explicit());
    }

    #[test]
    fn spinor_round_trip() {
        let l = l_matrix(Coord::XMinus);
        assert_eq!(to_four_vector(&to_spinor_pair(l)), *l);
    }

    #[test]
    fn characteristic_identities() {
        assert!(char_check_b0().is_ok());
        assert!(char_check_l0().is_ok());
        let mut bad = l_matrix(Coord::X0).clone();
        let e = bad.get(0, 0) + &Localized::one();
        bad.set(0, 0, e);
        assert!(!char_residual(&bad).is_zero());
    }

    #[test]
    fn tau_sum_and_product() {
        let sum = tau(Sign::Plus) + tau(Sign::Minus);
        assert_eq!(sum, Element::x0().scale(&qnum_sym(2)));
        assert_eq!(&tau(Sign::Plus) * &tau(Sign::Minus), c_central());
        let b = b_central();
        assert_eq!(
            &b * &b - c_central(),
            (&Element::delta() * &Element::delta()).scale(&(lambda().pow(2) / Scalar::from_int(4)))
        );
    }

    #[test]
    fn projector_algebra() {
        let (p, m) = projectors();
        let id = AlgMatrix::identity(4, Basis::FourVector);
        assert_eq!(&(p + m), &id);
        assert!((p * m).is_zero());
        assert!((m * p).is_zero());
        assert_eq!(&(p * p), p);
        assert_eq!(&(m * m), m);
    }

    #[test]
    fn small_powers_agree() {
        for c in [Coord::X0, Coord::XMinus, Coord::XPlus, Coord::X30] {
            for n in 0..4 {
                assert_eq!(
                    b_pow_closed(c, n).unwrap(),
                    mat_pow_naive(&b_matrix(c), n),
                    "B {c:?}^{n}"
                );
                assert_eq!(
                    l_pow_closed(c, n).unwrap(),
                    mat_pow_naive(l_matrix(c), n),
                    "L {c:?}^{n}"
                );
            }
        }
        assert!(l_pow_closed(Coord::X3, 2).is_err());
    }

    #[test]
    fn f_of_l0_simple_cases() {
        let one = f_of_l0(&[Scalar::one()]).unwrap();
        assert_eq!(one, AlgMatrix::identity(4, Basis::FourVector));
        let t = f_of_l0(&[Scalar::zero(), Scalar::one()]).unwrap();
        assert_eq!(&t, l_matrix(Coord::X0));
    }
}
