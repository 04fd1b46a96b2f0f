use std::collections::HashMap;

use super::Gradient;
use crate::algebra::{AlgebraError, Coord, Element, PbwEngine, SurfaceGen, SurfacePoly};
use crate::matrix::l_matrix;
use crate::scalar::Scalar;

/// Gradient by the recursion `grad(x_a w) = e_a w + q L_{x_a} grad(w)` over
/// PBW words, memoized per monomial.
pub struct Oracle {
    pbw: PbwEngine,
    l: [Vec<Element>; 4],
    grads: HashMap<[u32; 4], [Element; 4]>,
    words: HashMap<[u32; 4], Element>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new()
    }
}

impl Oracle {
    pub fn new() -> Self {
        let l = Coord::COMPONENTS.map(|c| {
            l_matrix(c)
                .entries()
                .iter()
                .map(|x| x.try_clear().expect("L-matrices are polynomial"))
                .collect()
        });
        Oracle {
            pbw: PbwEngine::new(),
            l,
            grads: HashMap::new(),
            words: HashMap::new(),
        }
    }

    pub fn pbw(&mut self) -> &mut PbwEngine {
        &mut self.pbw
    }

    fn word(&mut self, m: [u32; 4]) -> Element {
        if let Some(w) = self.words.get(&m) {
            return w.clone();
        }
        let w = match m.iter().position(|&k| k > 0) {
            None => Element::one(),
            Some(g) => {
                let mut rest = m;
                rest[g] -= 1;
                let tail = self.word(rest);
                &SurfaceGen::ALL[g].to_element() * &tail
            }
        };
        self.words.insert(m, w.clone());
        w
    }

    /// Gradient of the PBW monomial `x0^a xm^b xp^c x3^d`.
    pub fn grad_monomial(&mut self, m: [u32; 4]) -> [Element; 4] {
        if let Some(g) = self.grads.get(&m) {
            return g.clone();
        }
        let out = match m.iter().position(|&k| k > 0) {
            None => Default::default(),
            Some(g) => {
                let mut rest = m;
                rest[g] -= 1;
                let w = self.word(rest);
                let dw = self.grad_monomial(rest);
                let q = Scalar::q();
                let l = &self.l[g];
                let mut out: [Element; 4] = Default::default();
                for (mu, o) in out.iter_mut().enumerate() {
                    let mut acc = Element::zero();
                    for (nu, d) in dw.iter().enumerate() {
                        let e = &l[mu * 4 + nu];
                        if !e.is_zero() && !d.is_zero() {
                            acc += &(e * d);
                        }
                    }
                    *o = acc.scale(&q);
                    if mu == g {
                        *o += &w;
                    }
                }
                out
            }
        };
        self.grads.insert(m, out.clone());
        out
    }

    pub fn grad_surface(&mut self, p: &SurfacePoly) -> [Element; 4] {
        let mut out: [Element; 4] = Default::default();
        for (m, c) in p.terms() {
            let g = self.grad_monomial(*m);
            for (o, gi) in out.iter_mut().zip(g.iter()) {
                *o += &gi.scale(c);
            }
        }
        out
    }

    /// Gradient of an element symmetric under `xip <-> xim`.
    pub fn grad_elements(&mut self, f: &Element) -> Result<[Element; 4], AlgebraError> {
        let p = self.pbw.to_pbw(f)?;
        Ok(self.grad_surface(&p))
    }

    pub fn grad(&mut self, f: &Element) -> Result<Gradient, AlgebraError> {
        Ok(Gradient::from_elements(self.grad_elements(f)?))
    }
}

/// One-shot oracle gradient.
pub fn grad_oracle(f: &Element) -> Result<Gradient, AlgebraError> {
    Oracle::new().grad(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivative::raised_coordinates;
    use crate::scalar::{qnum_std, qnum_sym};

    #[test]
    fn generators_give_unit_vectors() {
        let mut o = Oracle::new();
        for (i, c) in Coord::COMPONENTS.iter().enumerate() {
            let g = o.grad(&c.to_element()).unwrap();
            assert_eq!(g, Gradient::unit(i), "{c:?}");
        }
    }

    #[test]
    fn powers_of_light_cone_generators() {
        let mut o = Oracle::new();
        for n in 1..5u32 {
            let f = Element::x_minus().pow(n);
            let g = o.grad(&f).unwrap();
            let expect = Gradient::unit(1).rmul(&Element::x_minus().pow(n - 1).scale(&qnum_std(n)));
            assert_eq!(g, expect);
            let f = Element::x_plus().pow(n);
            let expect = Gradient::unit(2).rmul(&Element::x_plus().pow(n - 1).scale(&qnum_std(n)));
            assert_eq!(o.grad(&f).unwrap(), expect);
        }
    }

    #[test]
    fn four_square() {
        let mut o = Oracle::new();
        let g = o.grad(&Element::x_square()).unwrap();
        let c = Scalar::q_pow(-1) * qnum_sym(2);
        let expect = Gradient::from_elements(raised_coordinates().map(|x| x.scale(&c)));
        assert_eq!(g, expect);
    }

    #[test]
    fn relations_have_equal_gradients() {
        let mut o = Oracle::new();
        let x = Coord::COMPONENTS.map(|c| {
            SurfacePoly::gen(match c {
                Coord::X0 => SurfaceGen::X0,
                Coord::XMinus => SurfaceGen::XMinus,
                Coord::XPlus => SurfaceGen::XPlus,
                _ => SurfaceGen::X3,
            })
        });
        // every reordering of a pair of generators gives the same gradient
        for a in 0..4 {
            for b in 0..4 {
                let p = o.pbw().mul(&x[a], &x[b]);
                let el = p.to_element();
                let by_word = o.grad_surface(&p);
                let lhs = {
                    // grad(x_a x_b) through the recursion applied to the word itself
                    let wb = x[b].to_element();
                    let mut out: [Element; 4] = Default::default();
                    let l = crate::matrix::l_matrix(Coord::COMPONENTS[a]);
                    for (mu, o2) in out.iter_mut().enumerate() {
                        let e = l.get(mu, b).try_clear().unwrap().scale(&Scalar::q());
                        *o2 = if mu == a { &e + &wb } else { e };
                    }
                    out
                };
                assert_eq!(by_word, lhs, "pair {a} {b}: {el}");
            }
        }
    }
}
