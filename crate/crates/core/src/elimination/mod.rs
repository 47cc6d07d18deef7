//! Searching for `α ∈ PGL₃(Q(λ))` with `α³ = 1` and `ασα⁻¹ = σ^{±1}`
//! that cycles `v → p → τ³(l)`.
//!
//! Writing `π₁ = (1+σ+σ²)/3`, `π₂ = 1 − π₁` and `σ₂ = σπ₂`, every element
//! commuting with `σ` is projectively `π₁ + aπ₂ + bσ₂` and every element
//! inverting it is `γ_M(π₁ + aπ₂ + bσ₂)`. In either case `α = γτ⁻³`, and
//! `α³` scalar gives eight polynomial equations in `a, b` of total degree
//! at most three.

mod poly;

pub use poly::{poly_gcd_univar, BivarPoly, PolyMatrix, UniPoly};

use serde::Serialize;

use crate::building::{act, ProjElement, DEFAULT_PRECISION};
use crate::error::{Error, Result};
use crate::matrix::Mat3;
use crate::named::{gamma_m, sigma, tau, vertex_v};
use crate::padic::val2;
use crate::qlambda::QuadRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// `γ` commutes with `σ`.
    Centralizing,
    /// `γσγ⁻¹ = σ⁻¹`.
    Inverting,
}

/// Column order used for the row reduction.
pub const MONOMIALS: [(u32, u32); 10] = [(3, 0), (2, 1), (2, 0), (1, 2), (1, 1), (1, 0), (0, 3), (0, 2), (0, 1), (0, 0)];

#[derive(Clone, Debug)]
pub struct Projectors {
    pub pi1: Mat3,
    pub pi2: Mat3,
    pub sigma2: Mat3,
}

/// Fails unless `σ³ = 1` exactly.
pub fn build_projectors(sigma: &Mat3) -> Result<Projectors> {
    let s2 = sigma * sigma;
    if &s2 * sigma != Mat3::identity() {
        return Err(Error::Invalid("σ³ ≠ 1".into()));
    }
    let third = QuadRat::new(1.into(), 3.into());
    let pi1 = Mat3::identity().add(sigma).add(&s2).scale(&third);
    let pi2 = Mat3::identity().sub(&pi1);
    let sigma2 = sigma * &pi2;
    Ok(Projectors { pi1, pi2, sigma2 })
}

/// `π₁ + aπ₂ + bσ₂` as a matrix of polynomials.
pub fn centralizer_family(p: &Projectors) -> PolyMatrix {
    PolyMatrix::constant(&p.pi1)
        .add(&PolyMatrix::constant(&p.pi2).scale(&BivarPoly::var_a()))
        .add(&PolyMatrix::constant(&p.sigma2).scale(&BivarPoly::var_b()))
}

/// The candidate `α(a, b)` for the given case.
pub fn alpha_candidate(case: Case) -> Result<PolyMatrix> {
    let x = centralizer_family(&build_projectors(&sigma().matrix)?);
    let gamma = match case {
        Case::Centralizing => x,
        Case::Inverting => PolyMatrix::constant(&gamma_m().matrix).mul(&x),
    };
    Ok(gamma.mul(&PolyMatrix::constant(&tau().matrix.pow(-3)?)))
}

/// The six off-diagonal entries of `α³`, then `(α³)₁₁ − (α³)₂₂` and
/// `(α³)₂₂ − (α³)₃₃`, each with denominators cleared.
pub fn scalar_cube_conditions(alpha: &PolyMatrix) -> Vec<BivarPoly> {
    let c = alpha.mul(alpha).mul(alpha).0;
    let mut out = Vec::with_capacity(8);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                out.push(c[i][j].clone());
            }
        }
    }
    out.push(c[0][0].sub(&c[1][1]));
    out.push(c[1][1].sub(&c[2][2]));
    out.into_iter().map(|p| p.clear_denominators()).collect()
}

/// Whether some multiple of `m` by an element of `Q(λ)^×` has entries in
/// `O` localized at 2 and determinant prime to 2.
pub fn integral_odd_det(m: &Mat3) -> bool {
    let at_prime = |f: &dyn Fn(&QuadRat) -> Option<i64>| {
        let Some(min) = m.entries().filter_map(f).min() else { return false };
        f(&m.det()) == Some(3 * min)
    };
    at_prime(&val2) && at_prime(&|x: &QuadRat| val2(&x.conj()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub a: QuadRat,
    pub b: QuadRat,
    /// `α(a, b)`, normalized projectively.
    pub alpha: Mat3,
    pub integral_odd_det: bool,
    pub fixes_v: bool,
    /// `k` with `γ = σᵏ` projectively, when there is one.
    pub gamma_sigma_power: Option<u8>,
    pub equals_alpha_m: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminationReport {
    pub case: Case,
    pub conditions: Vec<BivarPoly>,
    /// Rank of the 8 × 10 coefficient matrix.
    pub rank: usize,
    /// The relation `f(b)a + g(b) = 0` taken from the reduced matrix.
    pub f: UniPoly,
    pub g: UniPoly,
    /// The common factor removed from the row `f·h·a + g·h`.
    pub common_factor: UniPoly,
    /// Where `f` vanishes, `g` does not.
    pub f_zero_implies_g_nonzero: bool,
    /// Roots of `f·h`, solved for `a` directly.
    pub exceptional_b: Vec<QuadRat>,
    /// The conditions after substituting `a = −g/f`, made monic.
    pub residuals: Vec<UniPoly>,
    /// The residual of least degree.
    pub lowest_residual: UniPoly,
    /// Roots of the lowest residual.
    pub candidate_roots: Vec<QuadRat>,
    /// Values of `b` giving no solution.
    pub rejected_roots: Vec<QuadRat>,
    pub solutions: Vec<Solution>,
    /// Monic gcd of the residuals with all factors of `b` removed.
    pub gcd_without_b: UniPoly,
}

fn rref(rows: &mut [Vec<QuadRat>]) -> Result<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv()?;
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..ncols {
                    let d = &f * &rows[rank][c];
                    rows[r][c] -= &d;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

fn row_to_poly(row: &[QuadRat]) -> BivarPoly {
    MONOMIALS.iter().zip(row).fold(BivarPoly::zero(), |acc, (&(da, db), c)| acc.add(&BivarPoly::monomial(c.clone(), da, db)))
}

fn at_b(p: &BivarPoly, b: &QuadRat) -> UniPoly {
    UniPoly::new(p.coefficients_in_a().iter().map(|c| c.eval(b)).collect())
}

/// `P(−g/f, b) · f^d` for `d` the `a`-degree bound.
fn substitute(p: &BivarPoly, f: &UniPoly, g: &UniPoly, d: u32) -> UniPoly {
    let neg_g = g.scale(&QuadRat::from(-1));
    p.coefficients_in_a()
        .iter()
        .enumerate()
        .fold(UniPoly::zero(), |acc, (k, pk)| acc.add(&pk.mul(&neg_g.pow(k as u32)).mul(&f.pow(d - k as u32))))
}

fn describe_solution(case: Case, alpha_poly: &PolyMatrix, a: QuadRat, b: QuadRat) -> Result<Solution> {
    let alpha = alpha_poly.eval(&a, &b);
    let pe = ProjElement::new(alpha.clone())?;
    let v = vertex_v();
    let fixes_v = act(&pe, &v, DEFAULT_PRECISION)? == v;
    let gamma = ProjElement::new(&alpha * &tau().matrix.pow(3)?)?;
    let s = sigma();
    let gamma_sigma_power = (0u8..3).find(|&k| crate::building::projective_equal(&gamma, &s.pow(k as i64)));
    let equals_alpha_m = case == Case::Inverting && crate::building::projective_equal(&pe, &crate::named::alpha_m());
    Ok(Solution { integral_odd_det: integral_odd_det(&alpha), alpha: alpha.projective_normal_form()?, a, b, fixes_v, gamma_sigma_power, equals_alpha_m })
}

/// Runs the elimination for one case.
pub fn eliminate(case: Case) -> Result<EliminationReport> {
    let alpha = alpha_candidate(case)?;
    let conditions = scalar_cube_conditions(&alpha);
    for p in &conditions {
        if let Some((k, _)) = p.terms().find(|(k, _)| !MONOMIALS.contains(k)) {
            return Err(Error::Elimination(format!("unexpected monomial a^{} b^{}", k.0, k.1)));
        }
    }
    let mut rows: Vec<Vec<QuadRat>> = conditions.iter().map(|p| MONOMIALS.iter().map(|&(da, db)| p.coeff(da, db)).collect()).collect();
    let rank = rref(&mut rows)?;
    let reduced: Vec<BivarPoly> = rows[..rank].iter().map(|r| row_to_poly(r)).collect();

    let mut relations = Vec::new();
    for p in reduced.iter().filter(|p| p.degree_a() == Some(1)) {
        let c = p.coefficients_in_a();
        let common = poly_gcd_univar(&c[1], &c[0])?;
        relations.push((c[1].divrem(&common)?.0, c[0].divrem(&common)?.0, common));
    }
    let (f, g, common) = relations
        .into_iter()
        .min_by_key(|(f, g, _)| (f.degree(), g.degree()))
        .ok_or_else(|| Error::Elimination("no relation linear in a".into()))?;

    let f_roots = if f.degree() == Some(0) { Vec::new() } else { f.roots()? };
    let f_zero_implies_g_nonzero = f_roots.iter().all(|r| !g.eval(r).is_zero());

    let d = conditions.iter().filter_map(BivarPoly::degree_a).max().unwrap_or(0);
    let mut residuals: Vec<UniPoly> = conditions.iter().map(|p| substitute(p, &f, &g, d).monic()).filter(|r| !r.is_zero()).collect();
    residuals.sort_by_key(|r| (r.degree(), r.to_string()));
    residuals.dedup();
    let lowest_residual = residuals.first().cloned().ok_or_else(|| Error::Elimination("every condition vanishes identically".into()))?;
    let gcd_all = residuals.iter().try_fold(UniPoly::zero(), |acc, r| poly_gcd_univar(&acc, r))?;
    let candidate_roots = lowest_residual.roots().or_else(|_| gcd_all.roots())?;

    // Values of b where a = −g/f is not forced.
    let exceptional: Vec<QuadRat> = if common.degree() == Some(0) { f_roots.clone() } else { [f_roots.clone(), common.roots()?].concat() };

    let mut all_b = candidate_roots.clone();
    all_b.extend(exceptional.iter().cloned());
    all_b.sort();
    all_b.dedup();
    let mut solutions = Vec::new();
    let mut rejected_roots = Vec::new();
    for b in &all_b {
        let found = if exceptional.contains(b) {
            let in_a: Vec<UniPoly> = conditions.iter().map(|p| at_b(p, b)).filter(|q| !q.is_zero()).collect();
            if in_a.is_empty() {
                return Err(Error::Elimination(format!("every condition vanishes at b = {b}")));
            }
            let h = in_a.iter().try_fold(UniPoly::zero(), |acc, q| poly_gcd_univar(&acc, q))?;
            if h.degree() == Some(0) { Vec::new() } else { h.roots()? }
        } else {
            let a = -(&g.eval(b) / &f.eval(b));
            if conditions.iter().all(|p| p.eval(&a, b).is_zero()) { vec![a] } else { Vec::new() }
        };
        if found.is_empty() {
            rejected_roots.push(b.clone());
        }
        for a in found {
            solutions.push(describe_solution(case, &alpha, a, b.clone())?);
        }
    }

    let gcd_without_b = residuals.iter().try_fold(UniPoly::zero(), |acc, r| poly_gcd_univar(&acc, &r.strip_b().1))?;

    Ok(EliminationReport {
        case,
        conditions,
        rank,
        f,
        g,
        common_factor: common,
        f_zero_implies_g_nonzero,
        exceptional_b: exceptional,
        residuals,
        lowest_residual,
        candidate_roots,
        rejected_roots,
        solutions,
        gcd_without_b,
    })
}

pub fn eliminate_centralizing() -> Result<EliminationReport> {
    eliminate(Case::Centralizing)
}

pub fn eliminate_inverting() -> Result<EliminationReport> {
    eliminate(Case::Inverting)
}
