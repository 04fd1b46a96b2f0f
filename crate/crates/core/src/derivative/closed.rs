use std::sync::OnceLock;

use super::{DerivError, Family, Gradient, OrderedPoly};
use crate::algebra::{Element, Gen, Localized};
use crate::matrix::{projector, AlgMatrix, Sign};

/// `grad xi_+- = Pi_+- grad x0`.
pub fn grad_xi(sign: Sign) -> &'static Gradient {
    static G: OnceLock<(Gradient, Gradient)> = OnceLock::new();
    let (p, m) = G.get_or_init(|| {
        let col = |s| {
            let c = projector(s).column(0);
            Gradient::new([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
        };
        (col(Sign::Plus), col(Sign::Minus))
    });
    match sign {
        Sign::Plus => p,
        Sign::Minus => m,
    }
}

/// Slot vector of `grad x_A` for the non-central generators.
fn unit_of(g: Gen) -> [i64; 4] {
    match g {
        Gen::XPlus => [0, 0, 1, 0],
        Gen::XMinus => [0, 1, 0, 0],
        Gen::X30 => [-1, 0, 0, 1],
        _ => unreachable!("central generator"),
    }
}

/// `sum_A (d f / d x_A) grad x_A` for one ordered family.
fn spatial_part(f: &OrderedPoly) -> Result<[Element; 4], DerivError> {
    let mut out: [Element; 4] = Default::default();
    for g in f.order().iter().copied().filter(|g| !g.is_central()) {
        let d = f.jackson(g)?.to_element();
        if d.is_zero() {
            continue;
        }
        for (o, u) in out.iter_mut().zip(unit_of(g)) {
            match u {
                1 => *o += &d,
                -1 => *o -= &d,
                _ => {}
            }
        }
    }
    Ok(out)
}

/// The matrix `delta f = Pi_+ (f(q^2 xip) - f) + Pi_- (f(q^2 xim) - f)`
/// applied to a vector; `dplus`, `dminus` are the two differences already
/// pushed through the spatial Jackson derivatives.
fn apply_delta(dplus: &[Element; 4], dminus: &[Element; 4]) -> [Localized; 4] {
    let (pp, pm) = (projector(Sign::Plus), projector(Sign::Minus));
    let apply = |p: &AlgMatrix, v: &[Element; 4]| -> Vec<Localized> {
        let lv: Vec<Localized> = v.iter().cloned().map(Localized::from).collect();
        p.apply(&lv)
    };
    let a = apply(pp, dplus);
    let b = apply(pm, dminus);
    std::array::from_fn(|i| &a[i] + &b[i])
}

/// `delta f` as a 4x4 matrix; entries carry the algebra part on the right.
pub fn delta_f(f: &Element) -> AlgMatrix {
    let dp = f.shift_xi(true) - f.clone();
    let dm = f.shift_xi(false) - f.clone();
    let (pp, pm) = (projector(Sign::Plus), projector(Sign::Minus));
    &pp.map(|x| x.rmul(&dp)) + &pm.map(|x| x.rmul(&dm))
}

/// Closed-form gradient; monomials free of `xp`, `xm` are read in the
/// `Minus` family.
pub fn grad_closed(f: &Element) -> Result<Gradient, DerivError> {
    grad_closed_with(f, Family::Minus)
}

/// Closed-form gradient with an explicit family for the overlap monomials.
pub fn grad_closed_with(f: &Element, tie: Family) -> Result<Gradient, DerivError> {
    let (minus, plus) = OrderedPoly::split(f, tie);
    let mut total = Gradient::zero();
    let shifted_plus = OrderedPoly::split(&f.shift_xi(true), tie);
    let shifted_minus = OrderedPoly::split(&f.shift_xi(false), tie);
    for (fam, sp, sm) in [
        (&minus, &shifted_plus.0, &shifted_minus.0),
        (&plus, &shifted_plus.1, &shifted_minus.1),
    ] {
        if fam.is_zero() {
            continue;
        }
        // chain rule in the central variables
        for (g, sign) in [(Gen::XiPlus, Sign::Plus), (Gen::XiMinus, Sign::Minus)] {
            let d = fam.jackson(g)?.to_element();
            if !d.is_zero() {
                total = &total + &grad_xi(sign).rmul(&d);
            }
        }
        // spatial Jackson derivatives
        let space = spatial_part(fam)?;
        total = &total + &Gradient::from_elements(space.clone());
        // finite-difference correction
        let dp = spatial_part(sp)?;
        let dm = spatial_part(sm)?;
        let diff = |a: [Element; 4]| -> [Element; 4] { std::array::from_fn(|i| &a[i] - &space[i]) };
        total = &total + &Gradient::new(apply_delta(&diff(dp), &diff(dm)));
    }
    // every component must be polynomial again
    let cleared = total.try_clear()?;
    Ok(Gradient::from_elements(cleared))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivative::{grad_oracle, raised_coordinates};
    use crate::scalar::{qnum_std, qnum_sym, Scalar};

    #[test]
    fn light_cone_products() {
        for k in 0..4u32 {
            for n in 0..4u32 {
                let f = &Element::x30().pow(k) * &Element::x_minus().pow(n);
                let g = grad_closed(&f).unwrap();
                let mut expect = Gradient::zero();
                if k > 0 {
                    let t = (&Element::x30().pow(k - 1) * &Element::x_minus().pow(n))
                        .scale(&qnum_std(k));
                    expect = &expect + &(&Gradient::unit(3) - &Gradient::unit(0)).rmul(&t);
                }
                if n > 0 {
                    let t = (&Element::x30().pow(k) * &Element::x_minus().pow(n - 1))
                        .scale(&qnum_std(n));
                    expect = &expect + &Gradient::unit(1).rmul(&t);
                }
                assert_eq!(g, expect, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn four_square_via_xi() {
        let f = &Element::xi_plus() * &Element::xi_minus();
        let two = qnum_sym(2);
        let g = grad_closed(&f).unwrap().scale(&(&two * &two));
        let c = Scalar::q_pow(-1) * two;
        assert_eq!(
            g,
            Gradient::from_elements(raised_coordinates().map(|x| x.scale(&c)))
        );
    }

    #[test]
    fn time_powers_match_oracle() {
        for n in 0..5 {
            let f = Element::x0().pow(n);
            assert_eq!(grad_closed(&f).unwrap(), grad_oracle(&f).unwrap(), "x0^{n}");
        }
    }

    #[test]
    fn xi_gradients_clear() {
        // Pi_+ grad x0 + Pi_- grad x0 = grad x0
        let s = grad_xi(Sign::Plus) + grad_xi(Sign::Minus);
        assert_eq!(s, Gradient::unit(0));
    }

    #[test]
    fn overlap_assignment_does_not_matter() {
        let f = &(&Element::x0() * &Element::x30().pow(2)) + &Element::x_square();
        assert_eq!(
            grad_closed_with(&f, Family::Minus).unwrap(),
            grad_closed_with(&f, Family::Plus).unwrap()
        );
    }
}
