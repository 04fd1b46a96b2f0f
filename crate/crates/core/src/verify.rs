//! Verification suites shared by the command line and the test targets.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{Coord, Element, PbwEngine, SurfacePoly};
use crate::derivative::{
    grad_closed, grad_closed_with, grad_oracle, raised_coordinates, Family, Gradient,
};
use crate::lorentz;
use crate::matrix::{
    char_check_b0, char_check_l0, f_of_l0, l_matrix, l_pow_closed, mat_pow_naive, projector,
    AlgMatrix, Basis, Sign,
};
use crate::scalar::{qnum_sym, Scalar};
use crate::waves;

/// Default degree for the structure and calculus suites.
pub const DEFAULT_MAX_DEGREE: u32 = 6;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_failures(name: impl Into<String>, total: usize, failures: Vec<String>) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{total} cases")
        } else {
            format!(
                "{} of {total} failed; first: {}",
                failures.len(),
                failures[0]
            )
        };
        Check::new(name, passed, detail)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{tag} {}", self.name)
        } else {
            write!(f, "{tag} {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.suite)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

fn matrix_check(name: &str, r: Result<(), AlgMatrix>) -> Check {
    match r {
        Ok(()) => Check::new(name, true, "exact"),
        Err(m) => Check::new(name, false, format!("residual\n{m}")),
    }
}

/// Basis monomials `x^(2i) x0^j x30^k xm^l` and `x^(2i) xp^l x0^j x30^k`
/// of total degree at most `max_degree`, each listed once.
pub fn basis_monomials(max_degree: u32) -> Vec<Element> {
    let x2 = Element::x_square();
    let mut out = Vec::new();
    for i in 0..=max_degree / 2 {
        for j in 0..=max_degree - 2 * i {
            for k in 0..=max_degree - 2 * i - j {
                for l in 0..=max_degree - 2 * i - j - k {
                    let head = &(&x2.pow(i) * &Element::x0().pow(j)) * &Element::x30().pow(k);
                    out.push(&head * &Element::x_minus().pow(l));
                    if l > 0 {
                        let lead =
                            &(&x2.pow(i) * &Element::x_plus().pow(l)) * &Element::x0().pow(j);
                        out.push(&lead * &Element::x30().pow(k));
                    }
                }
            }
        }
    }
    out
}

/// PBW monomials `x0^a xm^b xp^c x3^d` of total degree at most `max_degree`.
pub fn pbw_monomials(max_degree: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..=max_degree {
        for b in 0..=max_degree - a {
            for c in 0..=max_degree - a - b {
                for d in 0..=max_degree - a - b - c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Checks the closed gradient against the coproduct oracle.
pub fn oracle_mismatches(fs: &[Element]) -> Vec<String> {
    fs.par_iter()
        .filter_map(|f| {
            let closed = match grad_closed(f) {
                Ok(g) => g,
                Err(e) => return Some(format!("{f}: {e}")),
            };
            match grad_oracle(f) {
                Ok(o) if o == closed => None,
                Ok(_) => Some(f.to_string()),
                Err(e) => Some(format!("{f}: {e}")),
            }
        })
        .collect()
}

/// Checks `grad f` at `q = 1` against commutative partial derivatives.
pub fn classical_mismatches(max_degree: u32) -> Vec<String> {
    pbw_monomials(max_degree)
        .par_iter()
        .filter_map(|m| {
            let f = SurfacePoly::monomial(*m, Scalar::one()).to_element();
            let g = match grad_closed(&f)
                .map_err(|e| e.to_string())
                .and_then(|g| g.try_clear().map_err(|e| e.to_string()))
            {
                Ok(g) => g,
                Err(e) => return Some(format!("{m:?}: {e}")),
            };
            for (mu, comp) in g.iter().enumerate() {
                let expect = if m[mu] == 0 {
                    Element::zero()
                } else {
                    let mut d = *m;
                    d[mu] -= 1;
                    SurfacePoly::monomial(d, Scalar::from_int(m[mu] as i64)).to_element()
                };
                let lhs = comp.subst_classical();
                let rhs = expect.subst_classical();
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) if a == b => {}
                    _ => return Some(format!("{m:?} component {mu}")),
                }
            }
            None
        })
        .collect()
}

/// Associativity of normal-ordered products on all triples of PBW monomials
/// up to `degree`.
pub fn associativity_failures(degree: u32) -> (usize, Vec<String>) {
    let ms: Vec<Element> = pbw_monomials(degree)
        .into_iter()
        .map(|m| SurfacePoly::monomial(m, Scalar::one()).to_element())
        .collect();
    let mut triples = Vec::new();
    for a in &ms {
        for b in &ms {
            for c in &ms {
                triples.push((a, b, c));
            }
        }
    }
    let fails = triples
        .par_iter()
        .filter(|(a, b, c)| &(*a * *b) * *c != *a * &(*b * *c))
        .map(|(a, b, c)| format!("({a}) ({b}) ({c})"))
        .collect();
    (triples.len(), fails)
}

pub fn structure_suite(max_degree: u32) -> SuiteReport {
    let mut checks = Vec::new();

    let rels = lorentz::defining_relations();
    checks.push(Check::new(
        "defining relations vanish",
        rels.iter().all(Element::is_zero),
        format!("{} relations", rels.len()),
    ));

    let x2 = Element::x_square();
    let central = Coord::COMPONENTS.iter().all(|c| {
        let g = c.to_element();
        &g * &x2 == &x2 * &g && &g * &Element::x0() == &Element::x0() * &g
    });
    checks.push(Check::new(
        "x0 and x^2 are central",
        central,
        "against every generator",
    ));

    let (n, fails) = associativity_failures(max_degree.min(2));
    checks.push(Check::from_failures("associativity", n, fails));

    let mut pbw = PbwEngine::new();
    let back = pbw
        .to_pbw(&x2)
        .map(|p| p.to_element() == x2)
        .unwrap_or(false);
    checks.push(Check::new("x^2 survives the PBW round trip", back, ""));

    checks.push(matrix_check(
        "characteristic identity of L_x0",
        char_check_l0(),
    ));
    checks.push(matrix_check(
        "characteristic identity of B_x0",
        char_check_b0(),
    ));

    let mut fails = Vec::new();
    let mut total = 0;
    for alpha in [Coord::X0, Coord::XMinus, Coord::XPlus, Coord::X30] {
        for n in 0..=max_degree {
            total += 1;
            match l_pow_closed(alpha, n) {
                Ok(c) if c == mat_pow_naive(l_matrix(alpha), n) => {}
                Ok(_) => fails.push(format!("{alpha:?}^{n}")),
                Err(e) => fails.push(e.to_string()),
            }
        }
    }
    checks.push(Check::from_failures("closed L powers", total, fails));

    let (pp, pm) = (projector(Sign::Plus), projector(Sign::Minus));
    let id = AlgMatrix::identity(4, Basis::FourVector);
    let proj_ok = &(pp * pp) == pp
        && &(pm * pm) == pm
        && (pp * pm).is_zero()
        && (pm * pp).is_zero()
        && (pp + pm) == id;
    checks.push(Check::new(
        "projector algebra",
        proj_ok,
        "idempotent, orthogonal, complete",
    ));

    let t = [Scalar::zero(), Scalar::one()];
    let l0_ok = f_of_l0(&t)
        .map(|m| &m == l_matrix(Coord::X0))
        .unwrap_or(false);
    checks.push(Check::new("f(L_x0) at f = t", l0_ok, ""));

    checks.push(Check::new(
        "Yang-Baxter (spin 1/2)",
        lorentz::yang_baxter_residual(lorentz::rmatrix_half()).is_zero(),
        "8x8",
    ));
    checks.push(Check::new(
        "RR relation",
        lorentz::rr_residual().is_zero(),
        "16x16",
    ));
    let rel = lorentz::r_relation_matrix();
    let hold = lorentz::evaluate_relations(&rel)
        .iter()
        .all(Element::is_zero);
    let span =
        rel.rank() == 6 && lorentz::vstack(&rel, &lorentz::defining_relations_spinor()).rank() == 6;
    checks.push(Check::new(
        "R-matrix relations reproduce the algebra",
        hold && span,
        format!("hold {hold}, rank-6 span {span}"),
    ));
    let p = lorentz::l_plus_prefactor();
    let lstruct = [Coord::X0, Coord::XMinus, Coord::XPlus, Coord::X3]
        .iter()
        .all(|c| lorentz::l_structure_mismatch(*c, &p).is_none());
    checks.push(Check::new(
        "L-matrices from boosts and rotations",
        lstruct,
        "",
    ));

    SuiteReport {
        suite: "structure",
        checks,
    }
}

pub fn calculus_suite(max_degree: u32) -> SuiteReport {
    let mut checks = Vec::new();

    let mut fails = Vec::new();
    for (nu, c) in Coord::COMPONENTS.iter().enumerate() {
        match grad_closed(&c.to_element()) {
            Ok(g) if g == Gradient::unit(nu) => {}
            _ => fails.push(format!("{c:?}")),
        }
    }
    checks.push(Check::from_failures("generator derivatives", 16, fails));

    let c = Scalar::q_pow(-1) * qnum_sym(2);
    let expect = Gradient::from_elements(raised_coordinates().map(|x| x.scale(&c)));
    let sq = grad_closed(&Element::x_square())
        .map(|g| g == expect)
        .unwrap_or(false);
    checks.push(Check::new("four-square derivative", sq, ""));

    let basis = basis_monomials(max_degree);
    let n = basis.len();
    checks.push(Check::from_failures(
        "closed form equals oracle",
        n,
        oracle_mismatches(&basis),
    ));

    let ties: Vec<String> = basis
        .par_iter()
        .filter(|f| {
            let a = grad_closed_with(f, Family::Minus);
            let b = grad_closed_with(f, Family::Plus);
            a.is_err() || a != b
        })
        .map(|f| f.to_string())
        .collect();
    checks.push(Check::from_failures(
        "overlap assignment invariance",
        n,
        ties,
    ));

    let classical_degree = max_degree.min(4);
    let total = pbw_monomials(classical_degree).len();
    checks.push(Check::from_failures(
        "classical limit",
        total,
        classical_mismatches(classical_degree),
    ));

    SuiteReport {
        suite: "calculus",
        checks,
    }
}

fn wave_check(name: &str, r: Result<waves::WaveReport, waves::WaveError>) -> Check {
    match r {
        Ok(rep) => Check::new(name, rep.passed(), rep.to_string()),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

/// Wave checks with both series truncated at `degree`.
pub fn waves_suite(degree: u32) -> SuiteReport {
    let mut checks = Vec::new();
    let n = degree.max(2);
    let psi = waves::massless_state(&Scalar::k(), n);
    checks.push(wave_check(
        "massless eigenvalue equations",
        waves::verify_massless(&psi),
    ));

    let rest = waves::massive_rest_state(&Scalar::m(), n);
    checks.push(wave_check(
        "rest state eigenvalue equations",
        waves::verify_massive(&rest),
    ));
    checks.push(wave_check(
        "Klein-Gordon equation",
        waves::verify_klein_gordon(&rest),
    ));
    checks.push(Check::new(
        "rest state symmetric in xip, xim",
        rest.swap_xi() == rest,
        "",
    ));
    let odd = waves::odd_alpha_terms(&rest);
    checks.push(Check::new(
        "square root cancels",
        odd.is_empty(),
        format!("{} odd alpha terms", odd.len()),
    ));
    SuiteReport {
        suite: "waves",
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_duplicate_free() {
        let b = basis_monomials(3);
        for (i, x) in b.iter().enumerate() {
            assert!(!b[i + 1..].contains(x));
        }
        // degree <= 3: 20 in (x0, x30, xm), 10 more with xp, 5 with x^2
        assert_eq!(b.len(), 35);
    }

    #[test]
    fn small_suites_pass() {
        for s in [structure_suite(2), calculus_suite(2), waves_suite(3)] {
            assert!(s.passed(), "{s}");
        }
    }
}
