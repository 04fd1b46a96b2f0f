//! Exact coefficient field.
//!
//! A [`Scalar`] lives in `Q(s)(i)(r)(m)(k)` where `s = q^(1/2)`, `i^2 = -1`,
//! `r^2 = s^2 + s^-2 = [2]` and `m`, `k` are free parameters. All levels keep
//! canonical forms, so equality is structural.

mod field;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use field::ClassicalError;
use field::{rat, Field, Poly, Quad, QuadTag, RatFn, VarTag};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SVar;
impl VarTag for SVar {
    const NAME: &'static str = "s";
    const BASE: bool = true;
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MVar;
impl VarTag for MVar {
    const NAME: &'static str = "m";
    const BASE: bool = false;
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct KVar;
impl VarTag for KVar {
    const NAME: &'static str = "k";
    const BASE: bool = false;
}

type Qs = RatFn<BigRational, SVar>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IUnit;
impl QuadTag<Qs> for IUnit {
    const NAME: &'static str = "i";
    const CLASSICAL: bool = true;
    fn square() -> Qs {
        Qs::from_rational(&rat(-1))
    }
}
type Qsi = Quad<Qs, IUnit>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RootTwo;
impl QuadTag<Qsi> for RootTwo {
    const NAME: &'static str = "r";
    const CLASSICAL: bool = false;
    fn square() -> Qsi {
        static SQ: OnceLock<Qsi> = OnceLock::new();
        SQ.get_or_init(|| {
            // s^2 + s^-2 = (1 + s^4) / s^2
            let num = Poly::from_coeffs(vec![rat(1), rat(0), rat(0), rat(0), rat(1)]);
            let den = Poly::monomial(2, rat(1));
            Qsi::base(Qs::new(num, den))
        })
        .clone()
    }
}
type Qsir = Quad<Qsi, RootTwo>;
type Km = RatFn<Qsir, MVar>;
type Kmk = RatFn<Km, KVar>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("expression has a pole at q = 1")]
    PoleAtClassical,
    #[error("classical value is not rational (contains [2]^(1/2))")]
    IrrationalClassical,
    #[error("division by zero")]
    DivisionByZero,
}

impl From<ClassicalError> for ScalarError {
    fn from(e: ClassicalError) -> Self {
        match e {
            ClassicalError::Pole => ScalarError::PoleAtClassical,
            ClassicalError::Irrational => ScalarError::IrrationalClassical,
        }
    }
}

/// Element of the exact coefficient field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Kmk);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Kmk::zero())
    }

    pub fn one() -> Self {
        Scalar(Kmk::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Kmk::from_rational(&rat(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Scalar(Kmk::from_rational(r))
    }

    /// `s^n = q^(n/2)`.
    pub fn s_pow(n: i64) -> Self {
        Self::one().mul_s_pow(n)
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        Self::s_pow(2 * n)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// The formal square root `r = [2]^(1/2)`.
    pub fn r() -> Self {
        Scalar(Kmk::constant(Km::constant(Qsir::gen())))
    }

    /// The Gaussian unit.
    pub fn i() -> Self {
        Scalar(Kmk::constant(Km::constant(Qsir::base(Qsi::gen()))))
    }

    pub fn m() -> Self {
        Scalar(Kmk::constant(Km::var()))
    }

    pub fn k() -> Self {
        Scalar(Kmk::var())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn inv(&self) -> Option<Self> {
        self.0.inv().map(Scalar)
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ScalarError> {
        let oi = o.inv().ok_or(ScalarError::DivisionByZero)?;
        Ok(self * &oi)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power allowing negative exponents on nonzero values.
    pub fn powi(&self, n: i64) -> Result<Self, ScalarError> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self
                .inv()
                .ok_or(ScalarError::DivisionByZero)?
                .pow((-n) as u32))
        }
    }

    /// Multiplication by `s^n`, cheaper than a general product.
    pub fn mul_s_pow(&self, n: i64) -> Self {
        Scalar(self.0.mul_spow(n))
    }

    pub fn mul_q_pow(&self, n: i64) -> Self {
        self.mul_s_pow(2 * n)
    }

    /// Substitutes `q = 1`. Symbols `i`, `m`, `k` survive; `r` must drop out.
    pub fn subst_classical(&self) -> Result<Scalar, ScalarError> {
        Ok(Scalar(self.0.at_classical()?))
    }

    /// The value as a plain rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.0.as_rational()
    }

    /// True when the value does not depend on `m` or `k`.
    pub fn is_parameter_free(&self) -> bool {
        self.0
            .as_constant()
            .is_some_and(|c| c.as_constant().is_some())
    }
}

/// Symmetric quantum number `[n] = (q^n - q^-n)/(q - q^-1)`.
pub fn qnum_sym(n: u32) -> Scalar {
    (0..n).fold(Scalar::zero(), |acc, j| {
        acc + Scalar::q_pow(n as i64 - 1 - 2 * j as i64)
    })
}

/// Standard quantum number `1 + q^2 + ... + q^(2(n-1))`.
pub fn qnum_std(n: u32) -> Scalar {
    (0..n).fold(Scalar::zero(), |acc, j| acc + Scalar::q_pow(2 * j as i64))
}

/// `qnum_std(1) * ... * qnum_std(n)`.
pub fn qfactorial_std(n: u32) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, j| acc * qnum_std(j))
}

/// `lambda = q - q^-1`.
pub fn lambda() -> Scalar {
    Scalar::q() - Scalar::q_pow(-1)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.render())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar{self}")
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                Scalar(self.0.$inner(&o.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                Scalar(self.0.$inner(&o.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                Scalar(self.0.$inner(&o.0))
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                Scalar(self.0.$inner(&o.0))
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        &self / &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(self.0.neg())
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(self.0.neg())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.0 = self.0.add(&o.0);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.0 = self.0.sub(&o.0);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        self.0 = self.0.mul(&o.0);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    #[test]
    fn quantum_numbers_small_cases() {
        assert!(qnum_sym(0).is_zero());
        assert!(qnum_sym(1).is_one());
        assert_eq!(qnum_sym(2), q() + Scalar::q_pow(-1));
        assert!(qnum_std(0).is_zero());
        assert!(qnum_std(1).is_one());
        assert_eq!(qnum_std(3), Scalar::one() + q().pow(2) + q().pow(4));
    }

    #[test]
    fn qnum_sym_has_no_denominator_beyond_q_powers() {
        // [n] * q^(n-1) is a genuine polynomial in q
        for n in 0..12 {
            let x = qnum_sym(n).mul_q_pow(n as i64);
            assert_eq!(x.mul_q_pow(-(n as i64)), qnum_sym(n));
            assert_eq!(x.0.den(), Kmk::one().den());
        }
    }

    #[test]
    fn quantum_number_relation() {
        for n in 0..=20u32 {
            assert_eq!(qnum_sym(n), qnum_std(n).mul_q_pow(1 - n as i64));
            assert_eq!(
                qnum_sym(n).subst_classical().unwrap(),
                Scalar::from_int(n as i64)
            );
            assert_eq!(
                qnum_std(n).subst_classical().unwrap(),
                Scalar::from_int(n as i64)
            );
        }
    }

    #[test]
    fn factorial_and_lambda() {
        assert_eq!(
            qfactorial_std(3),
            Scalar::one()
                * (Scalar::one() + q().pow(2))
                * (Scalar::one() + q().pow(2) + q().pow(4))
        );
        assert!(lambda().subst_classical().unwrap().is_zero());
        assert_eq!(lambda(), q() - Scalar::one() / q());
    }

    #[test]
    fn root_two_squares_to_two_bracket() {
        assert_eq!(Scalar::r() * Scalar::r(), qnum_sym(2));
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
        let x = Scalar::r() * Scalar::s_pow(3) + Scalar::i() * Scalar::m();
        assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
    }

    #[test]
    fn classical_substitution_errors() {
        let pole = Scalar::one() / lambda();
        assert_eq!(pole.subst_classical(), Err(ScalarError::PoleAtClassical));
        assert_eq!(
            Scalar::r().subst_classical(),
            Err(ScalarError::IrrationalClassical)
        );
        // r * lambda vanishes at q = 1 and so is fine
        assert!((Scalar::r() * lambda())
            .subst_classical()
            .unwrap()
            .is_zero());
        let mk = Scalar::m() * Scalar::k() * Scalar::i() * qnum_sym(3);
        assert_eq!(
            mk.subst_classical().unwrap(),
            Scalar::m() * Scalar::k() * Scalar::i() * Scalar::from_int(3)
        );
    }

    #[test]
    fn rational_functions_in_parameters() {
        let a = Scalar::m() + Scalar::k() * q();
        let b = Scalar::m() * Scalar::m() - Scalar::k() * Scalar::k() * q().pow(2);
        // (m + qk) / (m^2 - q^2 k^2) = 1 / (m - qk)
        assert_eq!(&a / &b, Scalar::one() / (Scalar::m() - Scalar::k() * q()));
    }

    #[test]
    fn rendering_is_q_based() {
        assert_eq!(qnum_sym(2).to_string(), "(q^-1 + q)");
        assert_eq!(Scalar::s_pow(3).to_string(), "(q^(3/2))");
        assert_eq!(Scalar::from_ratio(-3, 2).to_string(), "(-3/2)");
    }
}
