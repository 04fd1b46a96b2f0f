use std::collections::BTreeMap;
use std::fmt;

use super::DerivError;
use crate::algebra::{Element, Gen};
use crate::scalar::{qnum_std, Scalar};

/// The two ordered monomial families of the separated basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// `xip^a xim^b x30^d xm^e`
    Minus,
    /// `xip^a xim^b xp^c x30^d`
    Plus,
}

impl Family {
    pub fn order(self) -> Vec<Gen> {
        match self {
            Family::Minus => vec![Gen::XiPlus, Gen::XiMinus, Gen::X30, Gen::XMinus],
            Family::Plus => vec![Gen::XiPlus, Gen::XiMinus, Gen::XPlus, Gen::X30],
        }
    }
}

/// Linear combination of products `v1^k1 ... vn^kn` in a fixed variable order.
///
/// Partial Jackson derivatives depend on that order, so it is part of the value.
#[derive(Clone, PartialEq, Eq)]
pub struct OrderedPoly {
    order: Vec<Gen>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl OrderedPoly {
    pub fn new(order: Vec<Gen>) -> Self {
        OrderedPoly {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> &[Gen] {
        &self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        assert_eq!(
            exps.len(),
            self.order.len(),
            "exponent tuple does not match the ordering"
        );
        if c.is_zero() {
            return;
        }
        let v = self.terms.get(&exps).cloned().unwrap_or_else(Scalar::zero) + c;
        if v.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, v);
        }
    }

    pub fn with_term(mut self, exps: Vec<u32>, c: Scalar) -> Self {
        self.add_term(exps, c);
        self
    }

    /// Splits an element into its `Minus` and `Plus` family parts. Monomials
    /// free of `xp` and `xm` go to `tie`.
    pub fn split(f: &Element, tie: Family) -> (OrderedPoly, OrderedPoly) {
        let mut minus = OrderedPoly::new(Family::Minus.order());
        let mut plus = OrderedPoly::new(Family::Plus.order());
        for (m, c) in f.terms() {
            let to_plus = m[2] > 0 || (m[4] == 0 && tie == Family::Plus);
            if to_plus {
                plus.add_term(vec![m[0], m[1], m[2], m[3]], c.clone());
            } else {
                minus.add_term(vec![m[0], m[1], m[3], m[4]], c.clone());
            }
        }
        (minus, plus)
    }

    /// Partial Jackson derivative: `v^k -> [[k]] v^(k-1)` in place.
    pub fn jackson(&self, v: Gen) -> Result<OrderedPoly, DerivError> {
        let i = self
            .order
            .iter()
            .position(|g| *g == v)
            .ok_or(DerivError::UnknownVariable(v.name()))?;
        let mut out = OrderedPoly::new(self.order.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c * &qnum_std(e[i]));
        }
        Ok(out)
    }

    /// Multiplies the ordered products out in the algebra.
    pub fn to_element(&self) -> Element {
        let mut out = Element::zero();
        for (e, c) in &self.terms {
            let mut w = Element::scalar(c.clone());
            for (g, &k) in self.order.iter().zip(e.iter()) {
                for _ in 0..k {
                    w = &w * &Element::gen(*g);
                }
            }
            out += &w;
        }
        out
    }
}

impl fmt::Display for OrderedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = self
                    .order
                    .iter()
                    .zip(e.iter())
                    .filter(|(_, k)| **k > 0)
                    .map(|(g, k)| {
                        if *k == 1 {
                            g.name().to_string()
                        } else {
                            format!("{}^{}", g.name(), k)
                        }
                    })
                    .collect();
                format!(
                    "{c}*{}",
                    if mono.is_empty() {
                        "1".to_string()
                    } else {
                        mono.join("*")
                    }
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for OrderedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderedPoly{:?}[{self}]", self.order)
    }
}
