use qmink::algebra::{Coord, Element};
use qmink::derivative::{grad_closed, grad_oracle, Gradient};
use qmink::matrix::{l_matrix, mat_pow_naive};
use qmink::scalar::{qnum_std, Scalar};

fn grad(f: &Element) -> [Element; 4] {
    grad_closed(f).unwrap().try_clear().unwrap()
}

#[test]
fn powers_of_separating_generators() {
    // grad x_A^n = [[n]] x_A^(n-1) grad x_A
    let cases = [
        (Element::x_minus(), [0, 1, 0, 0]),
        (Element::x_plus(), [0, 0, 1, 0]),
        (Element::x30(), [-1, 0, 0, 1]),
    ];
    for (x, unit) in cases {
        for n in 1..=6u32 {
            let g = grad(&x.pow(n));
            let base = x.pow(n - 1).scale(&qnum_std(n));
            for mu in 0..4 {
                assert_eq!(
                    g[mu],
                    base.scale(&Scalar::from_int(unit[mu])),
                    "{x}^{n}, component {mu}"
                );
            }
        }
    }
}

#[test]
fn powers_follow_the_coproduct_sum() {
    // d^mu x^n = sum_k q^k (L_x^k)^mu_alpha x^(n-k-1)
    for (alpha, c) in Coord::COMPONENTS.iter().enumerate() {
        let x = c.to_element();
        for n in 1..=5u32 {
            let mut expect: [Element; 4] = Default::default();
            for k in 0..n {
                let lk = mat_pow_naive(l_matrix(*c), k);
                let tail = x.pow(n - k - 1);
                for (mu, e) in expect.iter_mut().enumerate() {
                    let entry = lk.get(mu, alpha).try_clear().unwrap();
                    *e += &(&entry * &tail).scale(&Scalar::q_pow(k as i64));
                }
            }
            assert_eq!(grad(&x.pow(n)), expect, "{c:?}^{n}");
        }
    }
}

#[test]
fn gradient_is_linear() {
    let f = &Element::x0() * &Element::x_plus();
    let g = Element::x_square();
    let a = Scalar::q() + Scalar::from_int(3);
    let lhs = grad_closed(&(&f.scale(&a) + &g)).unwrap();
    let rhs = &grad_closed(&f).unwrap().scale(&a) + &grad_closed(&g).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn products_with_time() {
    for f in [
        &Element::x0() * &Element::x_minus(),
        &Element::x0().pow(2) * &Element::x30(),
        &(&Element::x_square() * &Element::x_plus()) * &Element::x0(),
    ] {
        assert_eq!(grad_closed(&f).unwrap(), grad_oracle(&f).unwrap(), "{f}");
    }
}

#[test]
fn constants_have_zero_gradient() {
    assert_eq!(
        grad_closed(&Element::scalar(Scalar::q())).unwrap(),
        Gradient::zero()
    );
}
