//! q-exponentials and the plane-wave solutions of the quantum wave equations.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{Element, Gen};
use crate::derivative::{contract_d_alembert, grad_closed, DerivError, Gradient};
use crate::scalar::{qfactorial_std, Scalar};

pub const DEFAULT_MASSLESS_DEGREE: u32 = 12;
pub const DEFAULT_MASSIVE_DEGREE: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WaveError {
    #[error("q-exponential argument must be a scalar times one generator, got {0}")]
    NotSingleGenerator(String),
    #[error(transparent)]
    Deriv(#[from] DerivError),
}

/// A power series cut at total degree `N`, stored as homogeneous slices.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    slices: Vec<Element>,
    param: Scalar,
}

impl TruncatedSeries {
    /// Builds a series from slices `0..=N`; panics if a slice is not homogeneous.
    pub fn new(slices: Vec<Element>, param: Scalar) -> Self {
        assert!(
            !slices.is_empty(),
            "a series has at least the constant slice"
        );
        for (d, s) in slices.iter().enumerate() {
            assert!(
                s.terms().all(|(m, _)| m.iter().sum::<u32>() as usize == d),
                "slice {d} is not homogeneous"
            );
        }
        TruncatedSeries { slices, param }
    }

    pub fn degree(&self) -> u32 {
        self.slices.len() as u32 - 1
    }

    pub fn param(&self) -> &Scalar {
        &self.param
    }

    /// The degree-`d` part, zero beyond the truncation.
    pub fn slice(&self, d: u32) -> Element {
        self.slices.get(d as usize).cloned().unwrap_or_default()
    }

    pub fn slices(&self) -> &[Element] {
        &self.slices
    }

    pub fn total(&self) -> Element {
        self.slices.iter().cloned().sum()
    }

    /// Product truncated at the smaller of the two degrees.
    pub fn mul(&self, o: &TruncatedSeries) -> TruncatedSeries {
        let n = self.degree().min(o.degree());
        let slices = (0..=n)
            .map(|d| (0..=d).map(|a| &self.slice(a) * &o.slice(d - a)).sum())
            .collect();
        TruncatedSeries {
            slices,
            param: self.param.clone(),
        }
    }

    /// Exchanges `xip` and `xim` in every slice.
    pub fn swap_xi(&self) -> TruncatedSeries {
        TruncatedSeries {
            slices: self.slices.iter().map(Element::swap_xi).collect(),
            param: self.param.clone(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, s) in self.slices.iter().enumerate() {
            writeln!(f, "[{d}] {s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TruncatedSeries(N={}, {})\n{self}",
            self.degree(),
            self.param
        )
    }
}

/// `e_q(z) = sum_{n <= N} z^n / [[n]]!` for `z = c g`.
pub fn qexp(z: &Element, n: u32) -> Result<TruncatedSeries, WaveError> {
    if z.is_zero() {
        let mut slices = vec![Element::zero(); n as usize + 1];
        slices[0] = Element::one();
        return Ok(TruncatedSeries::new(slices, Scalar::zero()));
    }
    let mut terms = z.terms();
    let (mono, c) = terms.next().expect("non-zero");
    let single = terms.next().is_none() && mono.iter().sum::<u32>() == 1;
    if !single {
        return Err(WaveError::NotSingleGenerator(z.to_string()));
    }
    let g = Gen::ALL[mono.iter().position(|&k| k == 1).expect("degree one")];
    let gen = Element::gen(g);
    let mut slices = Vec::with_capacity(n as usize + 1);
    let mut power = Element::one();
    for d in 0..=n {
        let coeff = c.pow(d) / qfactorial_std(d);
        slices.push(power.scale(&coeff));
        power = &power * &gen;
    }
    Ok(TruncatedSeries::new(slices, c.clone()))
}

/// Outcome of a graded verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveReport {
    /// Highest degree of the checked identity.
    pub checked_through: u32,
    /// First failing degree with its residual.
    pub failure: Option<(u32, String)>,
}

impl WaveReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn collect(
        checked_through: u32,
        results: Vec<Result<Option<(u32, String)>, WaveError>>,
    ) -> Result<Self, WaveError> {
        let mut failure = None;
        for r in results {
            if let Some(f) = r? {
                failure = Some(f);
                break;
            }
        }
        Ok(WaveReport {
            checked_through,
            failure,
        })
    }
}

impl fmt::Display for WaveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass through degree {}", self.checked_through),
            Some((d, r)) => write!(f, "FAIL at degree {d}: residual {r}"),
        }
    }
}

/// Checks `grad psi_d = v psi_{d-1}` for every `d = 1..=N`; degree 0 must
/// have zero gradient.
fn verify_eigen(psi: &TruncatedSeries, v: &Gradient) -> Result<WaveReport, WaveError> {
    let n = psi.degree();
    let results: Vec<_> = (0..=n)
        .into_par_iter()
        .map(|d| -> Result<Option<(u32, String)>, WaveError> {
            let g = grad_closed(&psi.slice(d))?;
            let expect = if d == 0 {
                Gradient::zero()
            } else {
                v.rmul(&psi.slice(d - 1))
            };
            let res = &g - &expect;
            Ok((!res.is_zero()).then(|| (d.saturating_sub(1), res.to_string())))
        })
        .collect();
    WaveReport::collect(n.saturating_sub(1), results)
}

/// `e_q(-i k x30)`.
pub fn massless_state(k: &Scalar, n: u32) -> TruncatedSeries {
    let c = -(Scalar::i() * k.clone());
    let mut psi = qexp(&Element::x30().scale(&c), n).expect("single generator");
    psi.param = k.clone();
    psi
}

/// `grad psi = -i k psi (e_3 - e_0)`.
pub fn verify_massless(psi: &TruncatedSeries) -> Result<WaveReport, WaveError> {
    let c = -(Scalar::i() * psi.param.clone());
    let v = (&Gradient::unit(3) - &Gradient::unit(0)).scale(&c);
    verify_eigen(psi, &v)
}

/// `e_q(i m xip) e_q(i m xim)`.
pub fn massive_rest_state(m: &Scalar, n: u32) -> TruncatedSeries {
    let c = Scalar::i() * m.clone();
    let p = qexp(&Element::xi_plus().scale(&c), n).expect("single generator");
    let q = qexp(&Element::xi_minus().scale(&c), n).expect("single generator");
    let mut psi = p.mul(&q);
    psi.param = m.clone();
    psi
}

/// `grad psi = i m psi e_0`.
pub fn verify_massive(psi: &TruncatedSeries) -> Result<WaveReport, WaveError> {
    let v = Gradient::unit(0).scale(&(Scalar::i() * psi.param.clone()));
    verify_eigen(psi, &v)
}

/// `d_mu d^mu > psi_d = -m^2 psi_{d-2}`; degrees 0 and 1 must vanish.
pub fn verify_klein_gordon(psi: &TruncatedSeries) -> Result<WaveReport, WaveError> {
    let n = psi.degree();
    let m2 = psi.param.pow(2);
    let results: Vec<_> = (0..=n)
        .into_par_iter()
        .map(|d| -> Result<Option<(u32, String)>, WaveError> {
            let lhs = contract_d_alembert(&psi.slice(d))?;
            let rhs = if d < 2 {
                Element::zero()
            } else {
                psi.slice(d - 2).scale(&-m2.clone())
            };
            let res = lhs - rhs;
            Ok((!res.is_zero()).then(|| (d.saturating_sub(2), res.to_string())))
        })
        .collect();
    WaveReport::collect(n.saturating_sub(2), results)
}

/// Rewrites `xip^a xim^b` through `xi_+- = (x0 +- alpha) / 2` and returns the
/// monomials `x0^i alpha^j` with odd `j` that survive. Only the central part
/// of each slice is considered.
pub fn odd_alpha_terms(psi: &TruncatedSeries) -> Vec<(u32, u32)> {
    let mut acc: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
    let half = Scalar::from_ratio(1, 2);
    for s in psi.slices() {
        for (m, c) in s.terms() {
            if m[2..].iter().any(|&k| k > 0) {
                continue;
            }
            let (a, b) = (m[0], m[1]);
            let scale = c * &half.pow(a + b);
            for (i, ci) in binomials(a).into_iter().enumerate() {
                for (j, cj) in binomials(b).into_iter().enumerate() {
                    // (x0 + alpha)^a (x0 - alpha)^b
                    let alpha = (a as usize - i + b as usize - j) as u32;
                    let sign = if (b as usize - j) % 2 == 1 { -1 } else { 1 };
                    let key = (i as u32 + j as u32, alpha);
                    let v = Scalar::from_int(sign * ci * cj) * scale.clone();
                    *acc.entry(key).or_default() += &v;
                }
            }
        }
    }
    acc.into_iter()
        .filter(|((_, j), c)| j % 2 == 1 && !c.is_zero())
        .map(|(k, _)| k)
        .collect()
}

fn binomials(n: u32) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..n {
        let mut next = vec![1i64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row
}
