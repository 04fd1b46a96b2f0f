//! Generic building blocks for the coefficient tower.
//!
//! The coefficient field is assembled from three constructions: univariate
//! rational functions over a field ([`RatFn`]), quadratic extensions
//! ([`Quad`]) and the rationals at the bottom. Every value is kept in a
//! canonical form so that derived `Eq`/`Hash` coincide with field equality.

use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Failure of the substitution `s = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassicalError {
    Pole,
    Irrational,
}

pub trait Field: Clone + Eq + Hash + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &BigRational) -> Self;
    /// Multiplication by `s^n`, `s` being the base transcendental of the tower.
    fn mul_spow(&self, n: i64) -> Self;
    /// Substitutes `s = 1`.
    fn at_classical(&self) -> Result<Self, ClassicalError>;
    /// The value as a plain rational, if it is one.
    fn as_rational(&self) -> Option<BigRational>;
    fn render(&self) -> String;
    /// True if `render` can be used as a factor without parentheses.
    fn is_atom(&self) -> bool;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn mul_spow(&self, n: i64) -> Self {
        debug_assert_eq!(n, 0, "rationals carry no s-dependence");
        self.clone()
    }
    fn at_classical(&self) -> Result<Self, ClassicalError> {
        Ok(self.clone())
    }
    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
    fn is_atom(&self) -> bool {
        self.is_integer() && !self.is_negative()
    }
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F: Field> {
    pub(crate) c: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: F) -> Self {
        if a.is_zero() {
            Self::zero()
        } else {
            Poly { c: vec![a] }
        }
    }

    pub fn monomial(n: usize, a: F) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); n + 1];
        c[n] = a;
        Poly { c }
    }

    pub fn from_coeffs(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lead(&self) -> Option<&F> {
        self.c.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(c)
    }

    pub fn neg(&self) -> Self {
        Poly {
            c: self.c.iter().map(F::neg).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.c.len() == 1 {
            return o.scale(&self.c[0]);
        }
        if o.c.len() == 1 {
            return self.scale(&o.c[0]);
        }
        let mut c = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(c)
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        if a.is_one() {
            return self.clone();
        }
        Self::from_coeffs(self.c.iter().map(|x| x.mul(a)).collect())
    }

    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() || n == 0 {
            return self.clone();
        }
        let mut c = vec![F::zero(); n];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// Drops the lowest `n` coefficients, which must vanish.
    pub fn unshift(&self, n: usize) -> Self {
        debug_assert!(self.c.iter().take(n).all(F::is_zero));
        Poly {
            c: self.c.iter().skip(n).cloned().collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Self::from_coeffs(self.c.iter().map(f).collect())
    }

    pub fn try_map<E>(&self, f: impl Fn(&F) -> Result<F, E>) -> Result<Self, E> {
        Ok(Self::from_coeffs(
            self.c.iter().map(f).collect::<Result<Vec<_>, E>>()?,
        ))
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lead().expect("division by zero polynomial");
        let dinv = dl.inv().expect("leading coefficient is a unit");
        let dd = d.c.len() - 1;
        if self.c.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut quo = vec![F::zero(); self.c.len() - dd];
        for i in (0..quo.len()).rev() {
            let t = r[i + dd].mul(&dinv);
            if t.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                if !dj.is_zero() {
                    r[i + j] = r[i + j].sub(&t.mul(dj));
                }
            }
            quo[i] = t;
        }
        r.truncate(dd);
        (Self::from_coeffs(quo), Self::from_coeffs(r))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = if self.c.len() >= o.c.len() {
            (self.clone(), o.clone())
        } else {
            (o.clone(), self.clone())
        };
        while !b.is_zero() {
            if b.c.len() == 1 {
                return Poly::constant(F::one());
            }
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }
}

/// Marker for the indeterminate of a [`RatFn`] level.
pub trait VarTag: Clone + Eq + Hash + Debug + Default + Send + Sync + 'static {
    const NAME: &'static str;
    /// The base transcendental `s = q^(1/2)`, rendered as powers of `q`.
    const BASE: bool;
}

/// Canonical rational function: `gcd(num, den) = 1` and the lowest nonzero
/// coefficient of `den` equals one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn<F: Field, V: VarTag> {
    num: Poly<F>,
    den: Poly<F>,
    _v: PhantomData<V>,
}

impl<F: Field, V: VarTag> RatFn<F, V> {
    pub fn from_poly(num: Poly<F>) -> Self {
        RatFn {
            num,
            den: Poly::constant(F::one()),
            _v: PhantomData,
        }
    }

    pub fn constant(a: F) -> Self {
        Self::from_poly(Poly::constant(a))
    }

    pub fn var() -> Self {
        Self::from_poly(Poly::monomial(1, F::one()))
    }

    #[cfg(test)]
    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(num);
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        Self::normalized(num, den)
    }

    fn normalized(num: Poly<F>, den: Poly<F>) -> Self {
        let v = den.valuation().expect("nonzero");
        let low = &den.c[v];
        if low.is_one() {
            return RatFn {
                num,
                den,
                _v: PhantomData,
            };
        }
        let k = low.inv().expect("nonzero");
        RatFn {
            num: num.scale(&k),
            den: den.scale(&k),
            _v: PhantomData,
        }
    }

    /// The constant coefficient if the function is constant.
    pub fn as_constant(&self) -> Option<F> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    fn render_poly(p: &Poly<F>, shift: i64) -> String {
        let mut terms: Vec<String> = Vec::new();
        for (i, a) in p.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = i as i64 - shift;
            let pw = render_power::<V>(e);
            let neg = a.neg();
            let (sign, mag) = if neg.as_rational().is_some_and(|r| r.is_positive()) {
                ("-", neg)
            } else {
                ("+", a.clone())
            };
            let body = match (pw.is_empty(), mag.is_one()) {
                (true, _) => {
                    if mag.is_atom() {
                        mag.render()
                    } else {
                        format!("({})", mag.render())
                    }
                }
                (false, true) => pw,
                (false, false) => {
                    if mag.is_atom() {
                        format!("{}*{}", mag.render(), pw)
                    } else {
                        format!("({})*{}", mag.render(), pw)
                    }
                }
            };
            if terms.is_empty() {
                terms.push(if sign == "-" {
                    format!("-{body}")
                } else {
                    body
                });
            } else {
                terms.push(format!("{sign} {body}"));
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" ")
        }
    }
}

fn render_power<V: VarTag>(e: i64) -> String {
    if e == 0 {
        return String::new();
    }
    if V::BASE {
        if e % 2 == 0 {
            let k = e / 2;
            if k == 1 {
                "q".to_string()
            } else {
                format!("q^{k}")
            }
        } else {
            format!("q^({e}/2)")
        }
    } else if e == 1 {
        V::NAME.to_string()
    } else {
        format!("{}^{e}", V::NAME)
    }
}

impl<F: Field, V: VarTag> Field for RatFn<F, V> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::new(num, self.den.clone());
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::new(num, self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        // cross-cancel so the product is already reduced
        let g1 = if o.den.is_constant() {
            Poly::constant(F::one())
        } else {
            self.num.gcd(&o.den)
        };
        let g2 = if self.den.is_constant() {
            Poly::constant(F::one())
        } else {
            o.num.gcd(&self.den)
        };
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.div_rem(&g1).0, o.den.div_rem(&g1).0)
        };
        let (n2, d1) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.div_rem(&g2).0, self.den.div_rem(&g2).0)
        };
        Self::normalized(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
            _v: PhantomData,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::constant(F::from_rational(r))
    }
    fn mul_spow(&self, n: i64) -> Self {
        if n == 0 || self.is_zero() {
            return self.clone();
        }
        if !V::BASE {
            return RatFn {
                num: self.num.map(|a| a.mul_spow(n)),
                den: self.den.clone(),
                _v: PhantomData,
            };
        }
        let (num, den) = if n > 0 {
            (self.num.shift(n as usize), self.den.clone())
        } else {
            (self.num.clone(), self.den.shift((-n) as usize))
        };
        let k = num.valuation().unwrap().min(den.valuation().unwrap());
        RatFn {
            num: num.unshift(k),
            den: den.unshift(k),
            _v: PhantomData,
        }
    }
    fn at_classical(&self) -> Result<Self, ClassicalError> {
        if V::BASE {
            let one = F::one();
            let d = self.den.eval(&one);
            if d.is_zero() {
                return Err(ClassicalError::Pole);
            }
            let n = self.num.eval(&one);
            return Ok(Self::constant(n.mul(&d.inv().unwrap())));
        }
        let num = self.num.try_map(|a| a.at_classical())?;
        let den = self.den.try_map(|a| a.at_classical())?;
        if den.is_zero() {
            return Err(ClassicalError::Pole);
        }
        Ok(Self::new(num, den))
    }
    fn as_rational(&self) -> Option<BigRational> {
        self.as_constant().and_then(|c| c.as_rational())
    }
    fn render(&self) -> String {
        if let Some(c) = self.as_constant() {
            return c.render();
        }
        if V::BASE {
            // pull the power of s out of the denominator and print a Laurent numerator
            let v = self.den.valuation().unwrap();
            let den = self.den.unshift(v);
            let num = Self::render_poly(&self.num, v as i64);
            if den.is_one() {
                num
            } else {
                format!("({}) / ({})", num, Self::render_poly(&den, 0))
            }
        } else if self.den.is_one() {
            Self::render_poly(&self.num, 0)
        } else {
            format!(
                "({}) / ({})",
                Self::render_poly(&self.num, 0),
                Self::render_poly(&self.den, 0)
            )
        }
    }
    fn is_atom(&self) -> bool {
        match self.as_constant() {
            Some(c) => c.is_atom(),
            None => {
                self.den.is_one()
                    && self.num.c.iter().filter(|a| !a.is_zero()).count() == 1
                    && self.num.c.iter().all(|a| a.is_zero() || a.is_one())
            }
        }
    }
}

/// Marker describing a quadratic extension `F(w)` with `w^2 = D`.
pub trait QuadTag<F: Field>: Clone + Eq + Hash + Debug + Default + Send + Sync + 'static {
    const NAME: &'static str;
    /// Whether `w` survives `s = 1` as an exact rational-compatible symbol.
    const CLASSICAL: bool;
    fn square() -> F;
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quad<F: Field, W: QuadTag<F>> {
    pub(crate) a: F,
    pub(crate) b: F,
    _w: PhantomData<W>,
}

impl<F: Field, W: QuadTag<F>> Quad<F, W> {
    pub fn new(a: F, b: F) -> Self {
        Quad {
            a,
            b,
            _w: PhantomData,
        }
    }

    pub fn base(a: F) -> Self {
        Self::new(a, F::zero())
    }

    pub fn gen() -> Self {
        Self::new(F::zero(), F::one())
    }
}

impl<F: Field, W: QuadTag<F>> Field for Quad<F, W> {
    fn zero() -> Self {
        Self::base(F::zero())
    }
    fn one() -> Self {
        Self::base(F::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Self::new(self.a.add(&o.a), self.b.add(&o.b))
    }
    fn sub(&self, o: &Self) -> Self {
        Self::new(self.a.sub(&o.a), self.b.sub(&o.b))
    }
    fn mul(&self, o: &Self) -> Self {
        match (self.b.is_zero(), o.b.is_zero()) {
            (true, true) => Self::base(self.a.mul(&o.a)),
            (true, false) => Self::new(self.a.mul(&o.a), self.a.mul(&o.b)),
            (false, true) => Self::new(self.a.mul(&o.a), self.b.mul(&o.a)),
            (false, false) => {
                let bd = self.b.mul(&o.b).mul(&W::square());
                Self::new(
                    self.a.mul(&o.a).add(&bd),
                    self.a.mul(&o.b).add(&self.b.mul(&o.a)),
                )
            }
        }
    }
    fn neg(&self) -> Self {
        Self::new(self.a.neg(), self.b.neg())
    }
    fn inv(&self) -> Option<Self> {
        if self.b.is_zero() {
            return self.a.inv().map(Self::base);
        }
        let norm = self
            .a
            .mul(&self.a)
            .sub(&self.b.mul(&self.b).mul(&W::square()));
        let ni = norm.inv()?;
        Some(Self::new(self.a.mul(&ni), self.b.neg().mul(&ni)))
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::base(F::from_rational(r))
    }
    fn mul_spow(&self, n: i64) -> Self {
        Self::new(self.a.mul_spow(n), self.b.mul_spow(n))
    }
    fn at_classical(&self) -> Result<Self, ClassicalError> {
        let a = self.a.at_classical()?;
        let b = self.b.at_classical()?;
        if !W::CLASSICAL && !b.is_zero() {
            return Err(ClassicalError::Irrational);
        }
        Ok(Self::new(a, b))
    }
    fn as_rational(&self) -> Option<BigRational> {
        if self.b.is_zero() {
            self.a.as_rational()
        } else {
            None
        }
    }
    fn render(&self) -> String {
        let wrap = |x: &F| {
            if x.is_atom() {
                x.render()
            } else {
                format!("({})", x.render())
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => self.a.render(),
            (true, false) if self.b.is_one() => W::NAME.to_string(),
            (true, false) => format!("{}*{}", wrap(&self.b), W::NAME),
            (false, false) => {
                let bt = if self.b.is_one() {
                    W::NAME.to_string()
                } else {
                    format!("{}*{}", wrap(&self.b), W::NAME)
                };
                format!("{} + {}", self.a.render(), bt)
            }
        }
    }
    fn is_atom(&self) -> bool {
        if self.b.is_zero() {
            self.a.is_atom()
        } else {
            self.a.is_zero() && self.b.is_one()
        }
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
