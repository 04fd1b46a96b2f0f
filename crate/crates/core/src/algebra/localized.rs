//! Fractions with powers of the central element `delta = xip - xim` as denominators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Element;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("numerator is not divisible by delta^{power}; remainder {remainder}")]
pub struct DivisibilityError {
    pub power: u32,
    pub remainder: Element,
}

/// `delta = xip - xim`.
pub fn delta() -> Element {
    Element::delta()
}

/// Exact division by `delta`, or the remainder when it fails.
fn div_delta(f: &Element) -> Result<Element, Element> {
    let mut quot = Element::zero();
    let mut rem = Element::zero();
    for (sp, central) in f.split_central() {
        // p = sum p[a][b] xip^a xim^b, solve (xip - xim) Q = p from the top xip power down
        let mut rows: BTreeMap<u32, BTreeMap<u32, Scalar>> = BTreeMap::new();
        for (m, c) in central.terms() {
            rows.entry(m[0]).or_default().insert(m[1], c.clone());
        }
        let top = *rows.keys().next_back().unwrap();
        let mut carry: BTreeMap<u32, Scalar> = BTreeMap::new();
        for a in (0..=top).rev() {
            let row = rows.remove(&a).unwrap_or_default();
            // r[b] = p[a][b] + Q[a][b-1]
            let mut r: BTreeMap<u32, Scalar> = row;
            for (b, c) in &carry {
                let e = r.entry(b + 1).or_insert_with(Scalar::zero);
                *e = &*e + c;
            }
            r.retain(|_, c| !c.is_zero());
            if a == 0 {
                for (b, c) in r {
                    rem.add_term([0, b, sp[0], sp[1], sp[2]], &c);
                }
            } else {
                for (b, c) in &r {
                    quot.add_term([a - 1, *b, sp[0], sp[1], sp[2]], c);
                }
                carry = r;
            }
        }
    }
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(rem)
    }
}

/// `numerator / delta^delta_power` with the power kept minimal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Localized {
    numerator: Element,
    delta_power: u32,
}

impl Localized {
    pub fn new(numerator: Element, delta_power: u32) -> Self {
        let mut num = numerator;
        let mut p = delta_power;
        if num.is_zero() {
            p = 0;
        }
        while p > 0 {
            match div_delta(&num) {
                Ok(q) => {
                    num = q;
                    p -= 1;
                }
                Err(_) => break,
            }
        }
        Localized {
            numerator: num,
            delta_power: p,
        }
    }

    pub fn zero() -> Self {
        Localized::default()
    }

    pub fn one() -> Self {
        Localized::from(Element::one())
    }

    pub fn numerator(&self) -> &Element {
        &self.numerator
    }

    pub fn delta_power(&self) -> u32 {
        self.delta_power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Divides by `delta^n`.
    pub fn localize_div(&self, n: u32) -> Localized {
        Localized::new(self.numerator.clone(), self.delta_power + n)
    }

    /// The polynomial value, if the denominator cancels.
    pub fn try_clear(&self) -> Result<Element, DivisibilityError> {
        if self.delta_power == 0 {
            Ok(self.numerator.clone())
        } else {
            let remainder = div_delta(&self.numerator).err().unwrap_or_default();
            Err(DivisibilityError {
                power: self.delta_power,
                remainder,
            })
        }
    }

    fn raised(&self, p: u32) -> Element {
        let mut n = self.numerator.clone();
        let d = delta();
        for _ in self.delta_power..p {
            n = &n * &d;
        }
        n
    }

    pub fn scale(&self, c: &Scalar) -> Localized {
        Localized::new(self.numerator.scale(c), self.delta_power)
    }

    /// Left multiplication by an element.
    pub fn lmul(&self, e: &Element) -> Localized {
        Localized::new(e * &self.numerator, self.delta_power)
    }

    /// Right multiplication by an element.
    pub fn rmul(&self, e: &Element) -> Localized {
        Localized::new(&self.numerator * e, self.delta_power)
    }

    pub fn map_numerator(&self, f: impl Fn(&Element) -> Element) -> Localized {
        Localized::new(f(&self.numerator), self.delta_power)
    }
}

impl From<Element> for Localized {
    fn from(e: Element) -> Self {
        Localized {
            numerator: e,
            delta_power: 0,
        }
    }
}

impl Add<&Localized> for &Localized {
    type Output = Localized;
    fn add(self, o: &Localized) -> Localized {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let p = self.delta_power.max(o.delta_power);
        Localized::new(self.raised(p) + o.raised(p), p)
    }
}

impl Add for Localized {
    type Output = Localized;
    fn add(self, o: Localized) -> Localized {
        &self + &o
    }
}

impl Sub<&Localized> for &Localized {
    type Output = Localized;
    fn sub(self, o: &Localized) -> Localized {
        self + &(-o)
    }
}

impl Sub for Localized {
    type Output = Localized;
    fn sub(self, o: Localized) -> Localized {
        &self - &o
    }
}

impl Neg for &Localized {
    type Output = Localized;
    fn neg(self) -> Localized {
        Localized {
            numerator: -&self.numerator,
            delta_power: self.delta_power,
        }
    }
}

impl Neg for Localized {
    type Output = Localized;
    fn neg(self) -> Localized {
        -&self
    }
}

impl Mul<&Localized> for &Localized {
    type Output = Localized;
    fn mul(self, o: &Localized) -> Localized {
        if self.is_zero() || o.is_zero() {
            return Localized::zero();
        }
        Localized::new(
            &self.numerator * &o.numerator,
            self.delta_power + o.delta_power,
        )
    }
}

impl Mul for Localized {
    type Output = Localized;
    fn mul(self, o: Localized) -> Localized {
        &self * &o
    }
}

impl std::iter::Sum for Localized {
    fn sum<I: Iterator<Item = Localized>>(iter: I) -> Self {
        iter.fold(Localized::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Localized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.delta_power {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({}) / (xip - xim)", self.numerator),
            p => write!(f, "({}) / (xip - xim)^{}", self.numerator, p),
        }
    }
}

impl fmt::Debug for Localized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Localized[{self}]")
    }
}
