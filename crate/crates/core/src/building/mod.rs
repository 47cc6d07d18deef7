//! The Bruhat–Tits building of `PGL₃(Q₂)`. A vertex is a homothety class of
//! `Z₂`-lattices in `Q₂³`, where `Q(λ)` sits inside `Q₂` through the fixed
//! embedding with `λ ↦ 2·unit`.

mod orbits;
mod s4;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Mat3;
use crate::padic::{embed_2adic, pow2, val2};
use crate::qlambda::QuadRat;

pub use orbits::{orbit_bfs, quotient_graph, Ball, OrbitSearch, OrbitTable, QuotientEdge, QuotientGraph};
pub use s4::{s4_vertex_type, S4Kind, S4Type};

pub const DEFAULT_PRECISION: u32 = 64;

/// Canonical representative of a vertex: the unique primitive lattice of
/// the class, written as an upper triangular column Hermite normal form.
/// Diagonal entries are powers of 2, and each entry right of a diagonal
/// entry is reduced modulo it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexClass {
    rows: [[BigInt; 3]; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NeighborKind {
    /// Spanned by one nonzero class of `Λ/2Λ` together with `2Λ`.
    Point,
    /// The kernel of one nonzero functional on `Λ/2Λ`.
    Line,
}

impl VertexClass {
    pub fn rows(&self) -> &[[BigInt; 3]; 3] {
        &self.rows
    }

    /// The lattice spanned by the columns of `rows`.
    pub fn from_rows(rows: [[i64; 3]; 3]) -> Result<Self> {
        canonicalize(&Mat3::from_ints(rows), DEFAULT_PRECISION)
    }

    pub fn matrix(&self) -> Mat3 {
        Mat3::from_fn(|i, j| QuadRat::from(self.rows[i][j].clone()))
    }

    /// `log₂` of the index of the representative in `Z₂³`.
    pub fn level(&self) -> u64 {
        (0..3).map(|i| self.rows[i][i].trailing_zeros().unwrap_or(0)).sum()
    }

    /// `level mod 3`, the type of the vertex.
    pub fn vertex_type(&self) -> u64 {
        self.level() % 3
    }

    /// The 7 point-type and 7 line-type neighbors.
    pub fn neighbors_typed(&self) -> Vec<(NeighborKind, VertexClass)> {
        let h = self.matrix();
        let two = QuadRat::from(2);
        let vecs = nonzero_f2_vectors();
        let mut out = Vec::with_capacity(14);
        for w in &vecs {
            let k = w.iter().position(|&x| x == 1).expect("nonzero");
            let cols: [[QuadRat; 3]; 3] = std::array::from_fn(|j| {
                let c: [QuadRat; 3] = if j == k {
                    w.map(|x| QuadRat::from(x as i64))
                } else {
                    std::array::from_fn(|i| if i == j { two.clone() } else { QuadRat::zero() })
                };
                h.mul_vec(&c)
            });
            out.push((NeighborKind::Point, canonical(&Mat3::from_columns(&cols))));
        }
        for r in &vecs {
            let k = r.iter().position(|&x| x == 1).expect("nonzero");
            let cols: [[QuadRat; 3]; 3] = std::array::from_fn(|j| {
                let c: [QuadRat; 3] = if j == k {
                    std::array::from_fn(|i| if i == k { two.clone() } else { QuadRat::zero() })
                } else {
                    std::array::from_fn(|i| {
                        if i == j {
                            QuadRat::one()
                        } else if i == k {
                            QuadRat::from(-(r[j] as i64))
                        } else {
                            QuadRat::zero()
                        }
                    })
                };
                h.mul_vec(&c)
            });
            out.push((NeighborKind::Line, canonical(&Mat3::from_columns(&cols))));
        }
        out
    }

    pub fn neighbors(&self) -> Vec<VertexClass> {
        self.neighbors_typed().into_iter().map(|(_, v)| v).collect()
    }

    pub fn is_adjacent(&self, o: &VertexClass) -> bool {
        self.neighbors().contains(o)
    }
}

fn canonical(m: &Mat3) -> VertexClass {
    canonicalize(m, DEFAULT_PRECISION).expect("neighbor bases are nonsingular")
}

fn nonzero_f2_vectors() -> Vec<[u8; 3]> {
    (1u8..8).map(|n| [n & 1, (n >> 1) & 1, (n >> 2) & 1]).collect()
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl std::str::FromStr for VertexClass {
    type Err = Error;

    /// Parses rows written as `2,1,0/0,1,1/0,0,1` and canonicalizes.
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = s
            .split('/')
            .map(|r| r.split(',').map(|x| x.trim().parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))).collect())
            .collect::<Result<_>>()?;
        if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
            return Err(Error::Parse(format!("expected three rows of three integers: {s}")));
        }
        canonicalize(&Mat3::from_fn(|i, j| QuadRat::from(rows[i][j].clone())), DEFAULT_PRECISION)
    }
}

impl Serialize for VertexClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for VertexClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonical class of the lattice spanned by the columns of `basis`.
///
/// Valuations are exact, so the result does not depend on `precision`; a
/// precision too small for the determinant is doubled until it suffices.
pub fn canonicalize(basis: &Mat3, precision: u32) -> Result<VertexClass> {
    if precision == 0 {
        return Err(Error::BadPrecision);
    }
    let det = basis.det();
    let vdet = val2(&det).ok_or(Error::Singular)?;
    let m = basis.entries().filter_map(val2).min().expect("a nonsingular matrix has a nonzero entry");
    let delta = vdet - 3 * m;
    debug_assert!(delta >= 0);
    let delta = delta as u64;
    let mut n = precision as u64;
    while n < delta.max(1) {
        n *= 2;
    }
    // Scaled by 2^{−m} the lattice lies in Z₂³ and contains 2^δ Z₂³, so it
    // is determined by its columns modulo 2^δ.
    let modulus = pow2(delta);
    let mut gens: Vec<[BigInt; 3]> = Vec::with_capacity(6);
    for j in 0..3 {
        let col: [BigInt; 3] = std::array::from_fn(|i| {
            let e = embed_2adic(basis.get(i, j), n as u32).expect("positive precision");
            match e.valuation {
                None => BigInt::zero(),
                Some(v) => (e.unit_residue << ((v - m) as u64)).mod_floor(&modulus),
            }
        });
        gens.push(col);
    }
    for i in 0..3 {
        gens.push(std::array::from_fn(|k| if k == i { modulus.clone() } else { BigInt::zero() }));
    }
    let h = hermite_upper(gens);
    let total: u64 = (0..3).map(|i| h[i][i].trailing_zeros().unwrap_or(0)).sum();
    assert_eq!(total, delta, "index of the canonical lattice must match the determinant");
    Ok(VertexClass { rows: h })
}

/// Upper triangular column Hermite normal form of the `Z`-span of `gens`,
/// which must have full rank.
fn hermite_upper(mut gens: Vec<[BigInt; 3]>) -> [[BigInt; 3]; 3] {
    let mut pivots: [Option<[BigInt; 3]>; 3] = [None, None, None];
    for row in (0..3).rev() {
        loop {
            let mut nz: Vec<usize> = (0..gens.len()).filter(|&c| !gens[c][row].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by(|&a, &b| gens[a][row].abs().cmp(&gens[b][row].abs()));
            let p = nz[0];
            let pc = gens[p].clone();
            for &c in &nz[1..] {
                let q = gens[c][row].div_floor(&pc[row]);
                for i in 0..3 {
                    gens[c][i] -= &q * &pc[i];
                }
            }
        }
        let p = (0..gens.len()).find(|&c| !gens[c][row].is_zero()).expect("full rank");
        let mut col = gens.swap_remove(p);
        if col[row].is_negative() {
            col = col.map(|x| -x);
        }
        pivots[row] = Some(col);
    }
    let mut cols: [[BigInt; 3]; 3] = pivots.map(|c| c.expect("pivot"));
    for j in 0..3 {
        for i in (0..j).rev() {
            let q = cols[j][i].div_floor(&cols[i][i]);
            if !q.is_zero() {
                let ci = cols[i].clone();
                for k in 0..3 {
                    cols[j][k] -= &q * &ci[k];
                }
            }
        }
    }
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
}

/// An element of `PGL₃(Q(λ)) ⊂ PGL₃(Q₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjElement {
    pub matrix: Mat3,
}

impl ProjElement {
    pub fn new(matrix: Mat3) -> Result<Self> {
        if matrix.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(ProjElement { matrix })
    }

    pub fn identity() -> Self {
        ProjElement { matrix: Mat3::identity() }
    }

    pub fn compose(&self, o: &ProjElement) -> ProjElement {
        ProjElement { matrix: &self.matrix * &o.matrix }
    }

    pub fn inverse(&self) -> ProjElement {
        // The adjugate is a scalar multiple of the inverse.
        ProjElement { matrix: self.matrix.adjugate() }
    }

    pub fn pow(&self, e: i64) -> ProjElement {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        ProjElement { matrix: base.matrix.pow(e.abs()).expect("nonnegative power") }
    }

    /// Representative with first nonzero entry 1.
    pub fn key(&self) -> Mat3 {
        self.matrix.projective_normal_form().expect("nonzero matrix")
    }

    pub fn is_scalar(&self) -> bool {
        self.matrix.as_scalar().is_some()
    }

    /// Smallest `k ≥ 1` with `gᵏ` scalar, if at most `limit`.
    pub fn projective_order(&self, limit: u32) -> Option<u32> {
        let mut p = self.matrix.clone();
        for k in 1..=limit {
            if p.as_scalar().is_some() {
                return Some(k);
            }
            p = (&p * &self.matrix).projective_normal_form().expect("nonsingular");
        }
        None
    }
}

pub fn projective_equal(g: &ProjElement, h: &ProjElement) -> bool {
    g.key() == h.key()
}

pub fn act(g: &ProjElement, v: &VertexClass, precision: u32) -> Result<VertexClass> {
    canonicalize(&(&g.matrix * &v.matrix()), precision)
}

/// `Σ 1/n` over vertex orbits with stabilizer orders `n`, in units where a
/// maximal compact vertex stabilizer has mass 1.
pub fn covolume(stabilizer_orders: &[i64]) -> Result<BigRational> {
    if stabilizer_orders.is_empty() {
        return Err(Error::Invalid("no orbits".into()));
    }
    stabilizer_orders.iter().try_fold(BigRational::zero(), |acc, &n| {
        if n <= 0 {
            return Err(Error::Invalid(format!("stabilizer order {n} is not positive")));
        }
        Ok(acc + BigRational::new(1.into(), n.into()))
    })
}
