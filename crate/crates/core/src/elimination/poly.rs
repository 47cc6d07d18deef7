//! Polynomials over `Q(λ)`: bivariate in `a, b` and univariate in `b`, and
//! 3×3 matrices of bivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Mat3;
use crate::qlambda::{QuadInt, QuadRat};

/// Sparse polynomial in `a, b`; keys are `(deg_a, deg_b)`, no zero values.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), QuadRat>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn constant(c: QuadRat) -> Self {
        BivarPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: QuadRat, da: u32, db: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((da, db), c);
        }
        BivarPoly { terms }
    }

    pub fn var_a() -> Self {
        BivarPoly::monomial(QuadRat::one(), 1, 0)
    }

    pub fn var_b() -> Self {
        BivarPoly::monomial(QuadRat::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, da: u32, db: u32) -> QuadRat {
        self.terms.get(&(da, db)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &QuadRat)> {
        self.terms.iter()
    }

    pub fn degree_a(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    fn add_term(&mut self, k: (u32, u32), c: &QuadRat) {
        let e = self.terms.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &BivarPoly) -> BivarPoly {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c);
        }
        r
    }

    pub fn sub(&self, o: &BivarPoly) -> BivarPoly {
        self.add(&o.scale(&QuadRat::from(-1)))
    }

    pub fn scale(&self, c: &QuadRat) -> BivarPoly {
        if c.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn mul(&self, o: &BivarPoly) -> BivarPoly {
        let mut r = BivarPoly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                r.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        r
    }

    pub fn eval(&self, a: &QuadRat, b: &QuadRat) -> QuadRat {
        let mut acc = QuadRat::zero();
        for ((da, db), c) in &self.terms {
            let t = &(c * &a.pow(*da as i64).expect("nonnegative power")) * &b.pow(*db as i64).expect("nonnegative power");
            acc += &t;
        }
        acc
    }

    /// `Σ_k P_k(b) a^k`, as the list of `P_k`.
    pub fn coefficients_in_a(&self) -> Vec<UniPoly> {
        let d = self.degree_a().unwrap_or(0) as usize;
        let mut out = vec![UniPoly::zero(); d + 1];
        for ((da, db), c) in &self.terms {
            out[*da as usize] = out[*da as usize].add(&UniPoly::monomial(c.clone(), *db as usize));
        }
        out
    }

    /// Multiplied by the least common denominator of its coefficients, so
    /// that all coefficients lie in `O`.
    pub fn clear_denominators(&self) -> BivarPoly {
        let d = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.scale(&QuadRat::from(d))
    }
}

fn fmt_monomial(c: &QuadRat, vars: &[(&str, u32)]) -> String {
    let mono: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if mono.is_empty() {
        format!("({c})")
    } else if c.is_one() {
        mono.join("*")
    } else {
        format!("({c})*{}", mono.join("*"))
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|((da, db), c)| fmt_monomial(c, &[("a", *da), ("b", *db)])).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Polynomial in `b`, coefficients from the constant term up, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<QuadRat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<QuadRat>) -> Self {
        while coeffs.last().is_some_and(QuadRat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&x| QuadRat::from(x)).collect())
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn constant(c: QuadRat) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn monomial(c: QuadRat, d: usize) -> Self {
        let mut v = vec![QuadRat::zero(); d + 1];
        v[d] = c;
        UniPoly::new(v)
    }

    pub fn coeffs(&self) -> &[QuadRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&QuadRat> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    let z = QuadRat::zero();
                    &*self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.scale(&QuadRat::from(-1)))
    }

    pub fn scale(&self, c: &QuadRat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![QuadRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                v[i + j] += &(x * y);
            }
        }
        UniPoly::new(v)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        (0..e).fold(UniPoly::constant(QuadRat::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &QuadRat) -> QuadRat {
        self.coeffs.iter().rev().fold(QuadRat::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dl = d.lead().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = d.degree().expect("nonzero divisor");
        let mut r = self.clone();
        let mut q = vec![QuadRat::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.lead().expect("nonzero") * &dl;
            q[rd - dd] = c.clone();
            r = r.sub(&UniPoly::monomial(c, rd - dd).mul(d));
        }
        Ok((UniPoly::new(q), r))
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
            None => UniPoly::zero(),
        }
    }

    /// Largest `k` with `bᵏ` dividing `self`, and the quotient.
    pub fn strip_b(&self) -> (usize, UniPoly) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, UniPoly::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    /// Roots in `Q(λ)`, without multiplicity, sorted.
    ///
    /// After clearing denominators and making the polynomial monic by the
    /// substitution `y = c_n b`, any root `y` lies in `O` and divides the
    /// constant term, so it is found among elements of norm dividing the
    /// norm of the constant term.
    pub fn roots(&self) -> Result<Vec<QuadRat>> {
        if self.is_zero() {
            return Err(Error::Invalid("the zero polynomial has every root".into()));
        }
        let (k, p) = self.strip_b();
        let mut out = Vec::new();
        if k > 0 {
            out.push(QuadRat::zero());
        }
        let n = p.degree().expect("nonzero");
        if n > 0 {
            let den = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let c: Vec<QuadInt> = p.coeffs.iter().map(|x| x.scale_int(&den).to_quad_int().expect("cleared")).collect();
            let cn = c[n].clone();
            // q(y) = Σ cᵢ cₙ^{n−1−i} yⁱ
            let q: Vec<QuadInt> = (0..=n).map(|i| if i == n { QuadInt::from_int(1) } else { &c[i] * &cn.pow((n - 1 - i) as u32) }).collect();
            let q = UniPoly::new(q.into_iter().map(QuadRat::from).collect());
            let c0 = q.coeffs[0].to_quad_int().expect("integral").norm();
            let cn_r = QuadRat::from(cn);
            for d in divisors(&c0)? {
                for y in elements_of_norm(&d) {
                    let y = QuadRat::from(y);
                    if q.eval(&y).is_zero() {
                        out.push(&y / &cn_r);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.to_u64().filter(|&x| x < 1 << 50).ok_or_else(|| Error::Elimination("constant term too large for root search".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Elements `x + yλ` of `O` with `x² − xy + 2y² = n`.
fn elements_of_norm(n: &BigInt) -> Vec<QuadInt> {
    // 4n = (2x − y)² + 7y²
    let n4 = n * 4;
    let mut out = Vec::new();
    let mut y = BigInt::zero();
    while &(&y * &y * 7) <= &n4 {
        for ys in [y.clone(), -y.clone()] {
            let rest: BigInt = &n4 - &ys * &ys * 7;
            let s = rest.sqrt();
            if &s * &s == rest {
                for t in [s.clone(), -s.clone()] {
                    let two_x = &t + &ys;
                    if two_x.is_even() {
                        out.push(QuadInt::new(two_x / 2, ys.clone()));
                    }
                }
            }
            if y.is_zero() {
                break;
            }
        }
        y += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Monic gcd by the Euclidean algorithm over `Q(λ)`.
pub fn poly_gcd_univar(f: &UniPoly, g: &UniPoly) -> Result<UniPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::Invalid("gcd of two zero polynomials".into()));
    }
    let (mut x, mut y) = (f.clone(), g.clone());
    while !y.is_zero() {
        let (_, r) = x.divrem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| fmt_monomial(c, &[("b", i as u32)]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix(pub [[BivarPoly; 3]; 3]);

impl PolyMatrix {
    pub fn constant(m: &Mat3) -> Self {
        PolyMatrix(std::array::from_fn(|i| std::array::from_fn(|j| BivarPoly::constant(m.get(i, j).clone()))))
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        PolyMatrix(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].add(&o.0[i][j]))))
    }

    pub fn scale(&self, p: &BivarPoly) -> PolyMatrix {
        PolyMatrix(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].mul(p))))
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        PolyMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).fold(BivarPoly::zero(), |acc, k| acc.add(&self.0[i][k].mul(&o.0[k][j]))))
        }))
    }

    pub fn eval(&self, a: &QuadRat, b: &QuadRat) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j].eval(a, b))
    }
}
