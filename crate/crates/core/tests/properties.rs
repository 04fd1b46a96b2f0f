mod common;

use proptest::prelude::*;
use rand::SeedableRng;

use qmink::algebra::Element;
use qmink::json::{from_json_str, to_json_string};
use qmink::scalar::Scalar;
use qmink::syntax::{parse_element, parse_scalar, print_canonical};

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    any::<u64>().prop_map(|seed| {
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        common::random_scalar(&mut r) + common::random_scalar(&mut r)
    })
}

fn element_strategy(terms: usize, degree: u32) -> impl Strategy<Value = Element> {
    any::<u64>().prop_map(move |seed| {
        let mut r = common::rng(seed);
        common::random_element(&mut r, terms, degree)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * c.clone(), a.clone() * (&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Scalar::one());
        }
    }

    #[test]
    fn scalar_print_parse(a in scalar_strategy()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn element_product_is_associative(
        a in element_strategy(2, 3),
        b in element_strategy(2, 3),
        c in element_strategy(2, 3),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn time_and_four_square_are_central(a in element_strategy(3, 4)) {
        for z in [Element::x0(), Element::x_square()] {
            prop_assert_eq!(&a * &z, &z * &a);
        }
    }
}

#[test]
fn printed_elements_parse_back() {
    let mut r = common::rng(11);
    for _ in 0..1000 {
        let e = common::random_element(&mut r, 3, 5);
        let text = print_canonical(&e);
        let back = parse_element(&text).unwrap_or_else(|err| panic!("{text}: {err}"));
        assert_eq!(back, e, "{text}");
        let json = to_json_string(&e);
        assert_eq!(from_json_str(&json).unwrap(), e);
        assert_eq!(to_json_string(&from_json_str(&json).unwrap()), json);
    }
}

#[test]
fn coordinate_words_parse_back() {
    let mut r = common::rng(12);
    for _ in 0..200 {
        let e = common::random_coordinate_poly(&mut r, 2, 4);
        assert_eq!(parse_element(&print_canonical(&e)).unwrap(), e);
    }
}
