//! Normal ordering in the original generators `x0 < xm < xp < x3`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{AlgebraError, Element};
use crate::scalar::{lambda, qnum_sym, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SurfaceGen {
    X0,
    XMinus,
    XPlus,
    X3,
}

impl SurfaceGen {
    pub const ALL: [SurfaceGen; 4] = [
        SurfaceGen::X0,
        SurfaceGen::XMinus,
        SurfaceGen::XPlus,
        SurfaceGen::X3,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            SurfaceGen::X0 => "x0",
            SurfaceGen::XMinus => "xm",
            SurfaceGen::XPlus => "xp",
            SurfaceGen::X3 => "x3",
        }
    }

    pub fn to_element(self) -> Element {
        match self {
            SurfaceGen::X0 => Element::x0(),
            SurfaceGen::XMinus => Element::x_minus(),
            SurfaceGen::XPlus => Element::x_plus(),
            SurfaceGen::X3 => Element::x3(),
        }
    }
}

/// PBW-ordered polynomial `sum c * x0^a xm^b xp^c x3^d`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SurfacePoly {
    terms: BTreeMap<[u32; 4], Scalar>,
}

impl SurfacePoly {
    pub fn zero() -> Self {
        SurfacePoly::default()
    }

    pub fn monomial(m: [u32; 4], c: Scalar) -> Self {
        let mut p = SurfacePoly::zero();
        p.add_term(m, &c);
        p
    }

    pub fn one() -> Self {
        SurfacePoly::monomial([0; 4], Scalar::one())
    }

    pub fn gen(g: SurfaceGen) -> Self {
        let mut m = [0; 4];
        m[g.index()] = 1;
        SurfacePoly::monomial(m, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 4], &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32; 4]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: [u32; 4], c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let v = self.coeff(&m) + c;
        if v.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub fn add(&self, o: &SurfacePoly) -> SurfacePoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> SurfacePoly {
        let mut out = SurfacePoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, &(c * s));
        }
        out
    }

    fn mul_x0_pow(&self, k: u32) -> SurfacePoly {
        SurfacePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| ([m[0] + k, m[1], m[2], m[3]], c.clone()))
                .collect(),
        }
    }

    /// Coefficient-wise `q = 1`.
    pub fn subst_classical(&self) -> Result<SurfacePoly, AlgebraError> {
        let mut out = SurfacePoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, &c.subst_classical()?);
        }
        Ok(out)
    }

    /// Converts to the separated basis.
    pub fn to_element(&self) -> Element {
        let gens: Vec<Element> = SurfaceGen::ALL.iter().map(|g| g.to_element()).collect();
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            let mut w = Element::scalar(c.clone());
            for (g, &k) in gens.iter().zip(m.iter()) {
                for _ in 0..k {
                    w = &w * g;
                }
            }
            out += &w;
        }
        out
    }
}

impl fmt::Display for SurfacePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = SurfaceGen::ALL
                    .iter()
                    .filter(|g| m[g.index()] > 0)
                    .map(|g| match m[g.index()] {
                        1 => g.name().to_string(),
                        k => format!("{}^{}", g.name(), k),
                    })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SurfacePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SurfacePoly[{self}]")
    }
}

/// Rewriting engine for [`SurfacePoly`] with a memo of generator products.
///
/// Rules: `x0` central, `x3 xm -> q^-2 xm x3 + q^-1 lambda x0 xm`,
/// `x3 xp -> q^2 xp x3 - q lambda x0 xp`,
/// `xp xm -> xm xp - lambda x3^2 + lambda x0 x3`.
pub struct PbwEngine {
    cache: HashMap<(SurfaceGen, [u32; 3]), SurfacePoly>,
    x_square_powers: Vec<SurfacePoly>,
    lambda: Scalar,
}

impl Default for PbwEngine {
    fn default() -> Self {
        PbwEngine::new()
    }
}

impl PbwEngine {
    pub fn new() -> Self {
        PbwEngine {
            cache: HashMap::new(),
            x_square_powers: vec![SurfacePoly::one()],
            lambda: lambda(),
        }
    }

    /// `g * poly`.
    pub fn lmul(&mut self, g: SurfaceGen, p: &SurfacePoly) -> SurfacePoly {
        let mut out = SurfacePoly::zero();
        for (m, c) in &p.terms {
            let r = self.lmul_mono(g, [m[1], m[2], m[3]]).mul_x0_pow(m[0]);
            for (rm, rc) in &r.terms {
                out.add_term(*rm, &(rc * c));
            }
        }
        out
    }

    fn lmul_mono(&mut self, g: SurfaceGen, m: [u32; 3]) -> SurfacePoly {
        let [b, c, d] = m;
        match g {
            SurfaceGen::X0 => return SurfacePoly::monomial([1, b, c, d], Scalar::one()),
            SurfaceGen::XMinus => return SurfacePoly::monomial([0, b + 1, c, d], Scalar::one()),
            SurfaceGen::XPlus if b == 0 => {
                return SurfacePoly::monomial([0, 0, c + 1, d], Scalar::one())
            }
            SurfaceGen::X3 if b == 0 && c == 0 => {
                return SurfacePoly::monomial([0, 0, 0, d + 1], Scalar::one())
            }
            _ => {}
        }
        if let Some(r) = self.cache.get(&(g, m)) {
            return r.clone();
        }
        let lam = self.lambda.clone();
        let r = match g {
            SurfaceGen::XPlus => {
                let rest = SurfacePoly::monomial([0, b - 1, c, d], Scalar::one());
                let xp_rest = self.lmul(SurfaceGen::XPlus, &rest);
                let a = self.lmul(SurfaceGen::XMinus, &xp_rest);
                let x3_rest = self.lmul(SurfaceGen::X3, &rest);
                let x3x3_rest = self.lmul(SurfaceGen::X3, &x3_rest);
                a.add(&x3x3_rest.scale(&-&lam))
                    .add(&x3_rest.mul_x0_pow(1).scale(&lam))
            }
            SurfaceGen::X3 if b > 0 => {
                let rest = SurfacePoly::monomial([0, b - 1, c, d], Scalar::one());
                let x3_rest = self.lmul(SurfaceGen::X3, &rest);
                let a = self
                    .lmul(SurfaceGen::XMinus, &x3_rest)
                    .scale(&Scalar::q_pow(-2));
                a.add(&SurfacePoly::monomial(
                    [1, b, c, d],
                    &lam * &Scalar::q_pow(-1),
                ))
            }
            SurfaceGen::X3 => {
                let rest = SurfacePoly::monomial([0, 0, c - 1, d], Scalar::one());
                let x3_rest = self.lmul(SurfaceGen::X3, &rest);
                let a = self
                    .lmul(SurfaceGen::XPlus, &x3_rest)
                    .scale(&Scalar::q_pow(2));
                a.add(&SurfacePoly::monomial([1, 0, c, d], -(&lam * &Scalar::q())))
            }
            _ => unreachable!(),
        };
        self.cache.insert((g, m), r.clone());
        r
    }

    pub fn mul(&mut self, a: &SurfacePoly, b: &SurfacePoly) -> SurfacePoly {
        let mut out = SurfacePoly::zero();
        for (m, c) in &a.terms {
            let mut w = b.scale(c);
            for g in SurfaceGen::ALL.iter().rev() {
                for _ in 0..m[g.index()] {
                    w = self.lmul(*g, &w);
                }
            }
            out = out.add(&w);
        }
        out
    }

    /// `x^2 = x0 x0 + q^-1 xm xp + q xp xm - x3 x3`.
    pub fn x_square(&mut self) -> SurfacePoly {
        let g = SurfacePoly::gen;
        let t0 = self.mul(&g(SurfaceGen::X0), &g(SurfaceGen::X0));
        let tmp = self.mul(&g(SurfaceGen::XMinus), &g(SurfaceGen::XPlus));
        let tpm = self.mul(&g(SurfaceGen::XPlus), &g(SurfaceGen::XMinus));
        let t3 = self.mul(&g(SurfaceGen::X3), &g(SurfaceGen::X3));
        t0.add(&tmp.scale(&Scalar::q_pow(-1)))
            .add(&tpm.scale(&Scalar::q()))
            .add(&t3.scale(&Scalar::from_int(-1)))
    }

    fn x_square_pow(&mut self, n: usize) -> SurfacePoly {
        while self.x_square_powers.len() <= n {
            let x2 = self.x_square();
            let last = self.x_square_powers.last().unwrap().clone();
            let next = self.mul(&last, &x2);
            self.x_square_powers.push(next);
        }
        self.x_square_powers[n].clone()
    }

    /// Rewrites an element symmetric in `xip <-> xim` in the PBW basis.
    pub fn to_pbw(&mut self, f: &Element) -> Result<SurfacePoly, AlgebraError> {
        let two_sq_inv = {
            let t = qnum_sym(2);
            Scalar::one() / (&t * &t)
        };
        let mut out = SurfacePoly::zero();
        for (sp, central) in f.split_central() {
            let sym = symmetric_reduce(&central)?;
            // spatial part xp^c (x3 - x0)^d xm^e
            let mut spatial = SurfacePoly::one();
            let x30 = SurfacePoly::gen(SurfaceGen::X3)
                .add(&SurfacePoly::gen(SurfaceGen::X0).scale(&Scalar::from_int(-1)));
            for _ in 0..sp[2] {
                spatial = self.lmul(SurfaceGen::XMinus, &spatial);
            }
            for _ in 0..sp[1] {
                spatial = self.mul(&x30, &spatial);
            }
            for _ in 0..sp[0] {
                spatial = self.lmul(SurfaceGen::XPlus, &spatial);
            }
            for ((i, j), c) in sym {
                let x2 = self.x_square_pow(j as usize);
                let coef = &c * &two_sq_inv.pow(j);
                let term = self.mul(&x2.mul_x0_pow(i), &spatial).scale(&coef);
                out = out.add(&term);
            }
        }
        Ok(out)
    }
}

/// Writes a symmetric polynomial in `xip`, `xim` as a polynomial in
/// `e1 = xip + xim` and `e2 = xip xim`; keys are `(e1 power, e2 power)`.
fn symmetric_reduce(central: &Element) -> Result<BTreeMap<(u32, u32), Scalar>, AlgebraError> {
    let mut rest: BTreeMap<(u32, u32), Scalar> = central
        .terms()
        .map(|(m, c)| ((m[0], m[1]), c.clone()))
        .collect();
    let mut out = BTreeMap::new();
    while let Some((&(a, b), c)) = rest.iter().next_back() {
        if a < b {
            return Err(AlgebraError::NotSymmetric);
        }
        let c = c.clone();
        // subtract c * e1^(a-b) * e2^b
        let n = a - b;
        let mut binom = num_bigint::BigInt::from(1);
        for k in 0..=n {
            let key = (b + n - k, b + k);
            let coeff = &c
                * &Scalar::from_rational(&num_rational::BigRational::from_integer(binom.clone()));
            let v = rest.get(&key).cloned().unwrap_or_else(Scalar::zero) - coeff;
            if v.is_zero() {
                rest.remove(&key);
            } else {
                rest.insert(key, v);
            }
            binom = binom * (n - k) / (k + 1);
        }
        out.insert((n, b), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_square_is_two_squared_xi_product() {
        let mut e = PbwEngine::new();
        let x2 = e.x_square();
        assert_eq!(x2.to_element(), Element::x_square());
    }

    #[test]
    fn symmetric_reduction_round_trip() {
        let mut e = PbwEngine::new();
        let f = SurfacePoly::monomial([2, 0, 0, 1], Scalar::one());
        let el = f.to_element();
        assert_eq!(e.to_pbw(&el).unwrap(), f);
        assert_eq!(
            e.to_pbw(&Element::xi_plus()),
            Err(AlgebraError::NotSymmetric)
        );
    }

    #[test]
    fn relations_hold_in_separated_basis() {
        let q = Scalar::q;
        let lam = lambda();
        let (x0, xm, xp, x3) = (
            Element::x0(),
            Element::x_minus(),
            Element::x_plus(),
            Element::x3(),
        );
        let zero = Element::zero();
        assert_eq!(&x0 * &xm - &xm * &x0, zero);
        assert_eq!(&x0 * &xp - &xp * &x0, zero);
        assert_eq!(&x0 * &x3 - &x3 * &x0, zero);
        let r1 = (&xm * &x3).scale(&Scalar::q_pow(-1)) - (&x3 * &xm).scale(&q())
            + (&xm * &x0).scale(&lam);
        assert_eq!(r1, zero);
        let r2 = (&x3 * &xp).scale(&Scalar::q_pow(-1)) - (&xp * &x3).scale(&q())
            + (&xp * &x0).scale(&lam);
        assert_eq!(r2, zero);
        let r3 = &xm * &xp - &xp * &xm - (&x3 * &x3).scale(&lam) + (&x3 * &x0).scale(&lam);
        assert_eq!(r3, zero);
    }
}
