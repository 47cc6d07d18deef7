//! The fixed embedding `O ↪ Z₂` sending `λ̄` to a unit and `λ` to twice a
//! unit, and finite-precision 2-adic approximations of elements of `Q(λ)`.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qlambda::{QuadInt, QuadRat};

/// `value = 2^valuation · unit`, with `unit` odd and known modulo
/// `2^precision`. The zero approximation has `valuation = None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicApprox {
    pub valuation: Option<i64>,
    pub unit_residue: BigInt,
    pub precision: u32,
}

pub(crate) fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Inverse of an odd integer modulo `2^k`.
pub(crate) fn inv_odd_mod(u: &BigInt, k: u64) -> BigInt {
    let m = pow2(k);
    if k == 0 {
        return BigInt::zero();
    }
    u.mod_floor(&m).modinv(&m).expect("odd numbers are invertible modulo powers of two")
}

static LAMBDA_ROOT: Mutex<Option<(u64, BigInt)>> = Mutex::new(None);

/// The image of `λ` modulo `2^n`: the root of `t² + t + 2` with `t ≡ 0 mod 2`,
/// lifted by Newton iteration.
pub fn lambda_residue(n: u64) -> BigInt {
    {
        let cache = LAMBDA_ROOT.lock().expect("lambda root cache poisoned");
        if let Some((prec, root)) = cache.as_ref() {
            if *prec >= n {
                return root.mod_floor(&pow2(n));
            }
        }
    }
    let target = n.max(64);
    let mut t = BigInt::zero();
    let mut prec = 1u64;
    while prec < target {
        prec = (2 * prec).min(target);
        let m = pow2(prec);
        let f = &t * &t + &t + BigInt::from(2);
        let df = BigInt::from(2) * &t + BigInt::one();
        t = (&t - f * inv_odd_mod(&df, prec)).mod_floor(&m);
    }
    let out = t.mod_floor(&pow2(n));
    let mut cache = LAMBDA_ROOT.lock().expect("lambda root cache poisoned");
    if cache.as_ref().is_none_or(|(p, _)| *p < target) {
        *cache = Some((target, t));
    }
    out
}

fn int_valuation(n: &BigInt) -> u64 {
    n.trailing_zeros().expect("nonzero integer")
}

/// 2-adic valuation of `x` under the fixed embedding; `None` stands for `+∞`.
pub fn val2(x: &QuadRat) -> Option<i64> {
    let vn = x.numer().lambda_valuation()? as i64;
    Some(vn - int_valuation(x.denom()) as i64)
}

/// Residue modulo `2^k` of the image of an element of `O`.
pub(crate) fn quad_int_residue(x: &QuadInt, k: u64) -> BigInt {
    let m = pow2(k);
    (&x.a + &x.b * lambda_residue(k)).mod_floor(&m)
}

/// Image of `x` under the fixed embedding, with the unit part known to
/// `precision` binary digits. The valuation is always exact.
pub fn embed_2adic(x: &QuadRat, precision: u32) -> Result<PadicApprox> {
    if precision == 0 {
        return Err(Error::BadPrecision);
    }
    let Some(vnum) = x.numer().lambda_valuation() else {
        return Ok(PadicApprox { valuation: None, unit_residue: BigInt::zero(), precision });
    };
    let n = precision as u64;
    let vden = int_valuation(x.denom());
    let num_res = quad_int_residue(x.numer(), n + vnum) >> vnum;
    let den_odd = x.denom() >> vden;
    let unit = (num_res * inv_odd_mod(&den_odd, n)).mod_floor(&pow2(n));
    Ok(PadicApprox { valuation: Some(vnum as i64 - vden as i64), unit_residue: unit, precision })
}

impl PadicApprox {
    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn mul(&self, o: &PadicApprox) -> PadicApprox {
        let precision = self.precision.min(o.precision);
        match (self.valuation, o.valuation) {
            (Some(a), Some(b)) => PadicApprox {
                valuation: Some(a + b),
                unit_residue: (&self.unit_residue * &o.unit_residue).mod_floor(&pow2(precision as u64)),
                precision,
            },
            _ => PadicApprox { valuation: None, unit_residue: BigInt::zero(), precision },
        }
    }

    /// Residue of the value modulo `2^k`, when the value is integral and
    /// the approximation determines it.
    pub fn residue(&self, k: u64) -> Option<BigInt> {
        let Some(v) = self.valuation else {
            return Some(BigInt::zero());
        };
        if v < 0 {
            return None;
        }
        let v = v as u64;
        if v >= k {
            return Some(BigInt::zero());
        }
        if k - v > self.precision as u64 {
            return None;
        }
        Some(((&self.unit_residue) << v).mod_floor(&pow2(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive search for the even root of t² + t + 2 modulo 2^k.
    fn brute_root(k: u32) -> u64 {
        let m = 1u64 << k;
        let roots: Vec<u64> = (0..m).filter(|t| t % 2 == 0 && (t * t + t + 2) % m == 0).collect();
        // The lift is unique modulo 2^(k-1); return it reduced.
        let r = roots[0] % (m / 2);
        assert!(roots.iter().all(|x| x % (m / 2) == r));
        r
    }

    #[test]
    fn lambda_at_four_digits() {
        // Brute force mod 32 pins λ mod 16.
        assert_eq!(brute_root(5), 10);
        let e = embed_2adic(&QuadRat::lambda(), 4).unwrap();
        assert_eq!(e.valuation, Some(1));
        assert_eq!(&e.unit_residue % 8u32, BigInt::from(5));
        assert_eq!(e.residue(4), Some(BigInt::from(10)));
        assert_eq!(lambda_residue(4), BigInt::from(10));
    }

    #[test]
    fn lambda_residue_matches_brute_force() {
        for k in 2..14 {
            assert_eq!(lambda_residue(k - 1), BigInt::from(brute_root(k as u32)));
        }
    }

    #[test]
    fn simple_valuations() {
        assert_eq!(val2(&QuadRat::lambda()), Some(1));
        assert_eq!(val2(&QuadRat::lambda_bar()), Some(0));
        assert_eq!(val2(&QuadRat::new(QuadInt::from_int(1), BigInt::from(2))), Some(-1));
        assert_eq!(val2(&QuadRat::zero()), None);
        for n in [1, 7, 64] {
            assert_eq!(embed_2adic(&QuadRat::lambda_bar(), n).unwrap().valuation, Some(0));
            let two = embed_2adic(&QuadRat::from(2), n).unwrap();
            assert_eq!(two.valuation, Some(1));
            assert_eq!(two.unit_residue, BigInt::one());
        }
        assert_eq!(embed_2adic(&QuadRat::one(), 0), Err(Error::BadPrecision));
    }

    #[test]
    fn root_is_stable_under_precision_increase() {
        let big = lambda_residue(300);
        for n in 1..200u64 {
            assert_eq!(lambda_residue(n + 1).mod_floor(&pow2(n)), lambda_residue(n));
            assert_eq!(big.mod_floor(&pow2(n)), lambda_residue(n));
        }
    }

    fn arb_qr() -> impl Strategy<Value = QuadRat> {
        (-200i64..200, -200i64..200, 1i64..64)
            .prop_map(|(a, b, d)| QuadRat::new(QuadInt::new(a, b), BigInt::from(d)))
    }

    proptest! {
        #[test]
        fn valuation_is_additive(x in arb_qr(), y in arb_qr()) {
            prop_assume!(!x.is_zero() && !y.is_zero());
            prop_assert_eq!(val2(&(&x * &y)), Some(val2(&x).unwrap() + val2(&y).unwrap()));
        }

        #[test]
        fn embedding_is_multiplicative(x in arb_qr(), y in arb_qr(), n in 1u32..80) {
            let lhs = embed_2adic(&(&x * &y), n).unwrap();
            let rhs = embed_2adic(&x, n).unwrap().mul(&embed_2adic(&y, n).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn embedding_valuation_matches_val2(x in arb_qr(), n in 1u32..40) {
            prop_assert_eq!(embed_2adic(&x, n).unwrap().valuation, val2(&x));
        }
    }
}
