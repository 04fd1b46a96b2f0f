#![allow(dead_code)]

use qmink::algebra::Element;
use qmink::scalar::Scalar;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero scalars built from integers, powers of `q^(1/2)` and the
/// other symbols.
pub fn random_scalar(r: &mut ChaCha8Rng) -> Scalar {
    let mut n = 0;
    while n == 0 {
        n = r.gen_range(-3..=3);
    }
    let base = Scalar::from_ratio(n, r.gen_range(1..=3)) * Scalar::s_pow(r.gen_range(-4..=4));
    match r.gen_range(0..8) {
        0 => base * (Scalar::q() + Scalar::one()),
        1 => base * Scalar::i(),
        2 => base * Scalar::r(),
        3 => base * Scalar::m(),
        4 => base / (Scalar::q_pow(2) + Scalar::one()),
        _ => base,
    }
}

/// A basis monomial `xip^a xim^b xp^c x30^d xm^e` with `c e = 0`.
pub fn random_monomial(r: &mut ChaCha8Rng, max_degree: u32) -> Element {
    let total = r.gen_range(0..=max_degree);
    let mut m = [0u32; 5];
    let side = if r.gen_bool(0.5) { 2 } else { 4 };
    for _ in 0..total {
        let slot = [0, 1, side, 3][r.gen_range(0..4)];
        m[slot] += 1;
    }
    Element::monomial(m, Scalar::one())
}

/// A PBW monomial word in `x0, xm, xp, x3`.
pub fn random_pbw_word(r: &mut ChaCha8Rng, max_degree: u32) -> Element {
    let gens = [
        Element::x0(),
        Element::x_minus(),
        Element::x_plus(),
        Element::x3(),
    ];
    let total = r.gen_range(0..=max_degree);
    let mut w = Element::one();
    for _ in 0..total {
        w = &w * &gens[r.gen_range(0..4)];
    }
    w
}

pub fn random_element(r: &mut ChaCha8Rng, terms: usize, max_degree: u32) -> Element {
    (0..terms)
        .map(|_| random_monomial(r, max_degree).scale(&random_scalar(r)))
        .sum()
}

/// A random polynomial in the coordinates (no bare `xip`, `xim`).
pub fn random_coordinate_poly(r: &mut ChaCha8Rng, terms: usize, max_degree: u32) -> Element {
    (0..terms)
        .map(|_| random_pbw_word(r, max_degree).scale(&random_scalar(r)))
        .sum()
}
