//! The gradient `(grad f)^mu = d^mu > f`.
//!
//! [`Oracle`] evaluates it by the coproduct recursion on PBW words;
//! [`grad_closed`] by the separated chain rule with partial Jackson
//! derivatives. The two must agree exactly.

mod closed;
mod jackson;
mod oracle;

use std::fmt;
use std::ops::{Add, Sub};
use std::sync::OnceLock;

use crate::algebra::{AlgebraError, DivisibilityError, Element, Localized};
use crate::matrix::ScalarMatrix;
use crate::scalar::Scalar;

pub use closed::{delta_f, grad_closed, grad_closed_with, grad_xi};
pub use jackson::{Family, OrderedPoly};
pub use oracle::{grad_oracle, Oracle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivError {
    #[error("unknown variable {0} for this ordering")]
    UnknownVariable(&'static str),
    #[error(transparent)]
    Divisibility(#[from] DivisibilityError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variance {
    Upper,
    Lower,
}

/// Component labels in slot order.
pub const COMPONENT_NAMES: [&str; 4] = ["0", "-", "+", "3"];

/// A four-component vector of localized elements.
#[derive(Clone, PartialEq, Eq)]
pub struct Gradient {
    comps: [Localized; 4],
    variance: Variance,
}

impl Gradient {
    pub fn zero() -> Self {
        Gradient::new(Default::default())
    }

    pub fn new(comps: [Localized; 4]) -> Self {
        Gradient {
            comps,
            variance: Variance::Upper,
        }
    }

    pub fn from_elements(comps: [Element; 4]) -> Self {
        Gradient::new(comps.map(Localized::from))
    }

    /// The unit vector `delta^mu_slot`.
    pub fn unit(slot: usize) -> Self {
        let mut g = Gradient::zero();
        g.comps[slot] = Localized::one();
        g
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn component(&self, i: usize) -> &Localized {
        &self.comps[i]
    }

    pub fn components(&self) -> &[Localized; 4] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Localized::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Gradient {
        self.map(|x| x.scale(c))
    }

    /// Multiplies every component by `e` from the right.
    pub fn rmul(&self, e: &Element) -> Gradient {
        self.map(|x| x.rmul(e))
    }

    pub fn map(&self, f: impl Fn(&Localized) -> Localized) -> Gradient {
        Gradient {
            comps: std::array::from_fn(|i| f(&self.comps[i])),
            variance: self.variance,
        }
    }

    /// Polynomial components, if every denominator cancels.
    pub fn try_clear(&self) -> Result<[Element; 4], DivisibilityError> {
        let mut out: [Element; 4] = Default::default();
        for (o, c) in out.iter_mut().zip(&self.comps) {
            *o = c.try_clear()?;
        }
        Ok(out)
    }

    fn contract(&self, m: &ScalarMatrix, variance: Variance) -> Gradient {
        Gradient {
            comps: std::array::from_fn(|i| {
                (0..4)
                    .filter(|&j| !m.get(i, j).is_zero())
                    .map(|j| self.comps[j].scale(m.get(i, j)))
                    .sum()
            }),
            variance,
        }
    }

    /// Applies `eta^{mu nu}`; a no-op on upper-index vectors.
    pub fn raise_index(&self) -> Gradient {
        match self.variance {
            Variance::Upper => self.clone(),
            Variance::Lower => self.contract(eta_upper(), Variance::Upper),
        }
    }

    /// Applies `eta_{mu nu}`; a no-op on lower-index vectors.
    pub fn lower_index(&self) -> Gradient {
        match self.variance {
            Variance::Lower => self.clone(),
            Variance::Upper => self.contract(eta_lower(), Variance::Lower),
        }
    }
}

impl Add<&Gradient> for &Gradient {
    type Output = Gradient;
    fn add(self, o: &Gradient) -> Gradient {
        assert_eq!(self.variance, o.variance, "mixed index positions");
        Gradient {
            comps: std::array::from_fn(|i| &self.comps[i] + &o.comps[i]),
            variance: self.variance,
        }
    }
}

impl Sub<&Gradient> for &Gradient {
    type Output = Gradient;
    fn sub(self, o: &Gradient) -> Gradient {
        assert_eq!(self.variance, o.variance, "mixed index positions");
        Gradient {
            comps: std::array::from_fn(|i| &self.comps[i] - &o.comps[i]),
            variance: self.variance,
        }
    }
}

impl fmt::Display for Gradient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, c) in COMPONENT_NAMES.iter().zip(&self.comps) {
            writeln!(f, "[{name}] {c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gradient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gradient({:?})\n{self}", self.variance)
    }
}

/// `eta^{mu nu}` in slot order `0, -, +, 3`.
pub fn eta_upper() -> &'static ScalarMatrix {
    static ETA: OnceLock<ScalarMatrix> = OnceLock::new();
    ETA.get_or_init(|| {
        let mut m = ScalarMatrix::zeros(4, 4);
        m.set(0, 0, Scalar::one());
        m.set(1, 2, Scalar::q_pow(-1));
        m.set(2, 1, Scalar::q());
        m.set(3, 3, Scalar::from_int(-1));
        m
    })
}

/// `eta_{mu nu}`, the inverse matrix.
pub fn eta_lower() -> &'static ScalarMatrix {
    static ETA: OnceLock<ScalarMatrix> = OnceLock::new();
    ETA.get_or_init(|| eta_upper().inverse().expect("metric is invertible"))
}

/// `x^mu = eta^{mu nu} x_nu` as elements.
pub fn raised_coordinates() -> [Element; 4] {
    let x = crate::algebra::Coord::COMPONENTS.map(|c| c.to_element());
    let eta = eta_upper();
    std::array::from_fn(|i| {
        (0..4)
            .filter(|&j| !eta.get(i, j).is_zero())
            .map(|j| x[j].scale(eta.get(i, j)))
            .sum()
    })
}

/// `d_mu d^mu > f = eta_{mu nu} d^nu > (d^mu > f)` for any gradient routine.
pub fn contract_with(
    f: &Element,
    mut grad: impl FnMut(&Element) -> Result<[Element; 4], DerivError>,
) -> Result<Element, DerivError> {
    let first = grad(f)?;
    let eta = eta_lower();
    let mut out = Element::zero();
    for (mu, comp) in first.iter().enumerate() {
        if comp.is_zero() {
            continue;
        }
        let second = grad(comp)?;
        for (nu, s) in second.iter().enumerate() {
            let e = eta.get(mu, nu);
            if !e.is_zero() {
                out += &s.scale(e);
            }
        }
    }
    Ok(out)
}

/// `d_mu d^mu > f` via the closed-form gradient.
pub fn contract_d_alembert(f: &Element) -> Result<Element, DerivError> {
    contract_with(f, |g| Ok(grad_closed(g)?.try_clear()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PbwEngine;

    #[test]
    fn metric_reproduces_four_square() {
        let x = crate::algebra::Coord::COMPONENTS.map(|c| c.to_element());
        let up = raised_coordinates();
        let lower_upper: Element = x.iter().zip(&up).map(|(a, b)| a * b).sum();
        assert_eq!(lower_upper, Element::x_square());
        let upper_lower: Element = up.iter().zip(&x).map(|(a, b)| a * b).sum();
        assert_ne!(upper_lower, Element::x_square());
        let mut e = PbwEngine::new();
        assert_eq!(e.x_square().to_element(), lower_upper);
    }

    #[test]
    fn swapped_metric_is_not_central() {
        let x = crate::algebra::Coord::COMPONENTS.map(|c| c.to_element());
        // x^- = q x+, x^+ = q^-1 x-
        let up = [
            x[0].clone(),
            x[2].scale(&Scalar::q()),
            x[1].scale(&Scalar::q_pow(-1)),
            -x[3].clone(),
        ];
        let sq: Element = x.iter().zip(&up).map(|(a, b)| a * b).sum();
        let xp = Element::x_plus();
        assert_ne!(&sq * &xp, &xp * &sq);
    }

    #[test]
    fn raise_lower_round_trip() {
        let g = Gradient::from_elements([
            Element::x0(),
            Element::x_plus(),
            Element::x30().scale(&Scalar::q()),
            Element::one(),
        ]);
        assert_eq!(g.lower_index().raise_index(), g);
        assert_eq!(g.lower_index().variance(), Variance::Lower);
    }
}
