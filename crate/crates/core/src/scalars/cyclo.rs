use super::poly::{write_laurent, IntPoly, RatPoly};
use super::ScalarError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Φ_N via Φ_N = (q^N − 1) / ∏_{d | N, d < N} Φ_d, memoized.
pub fn cyclotomic_polynomial(n: u32) -> IntPoly {
    assert!(n >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, IntPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = IntPoly::monomial(BigInt::one(), n as usize).sub(&IntPoly::one());
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = p.div_exact(&cyclotomic_polynomial(d));
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn modulus(order: u32) -> RatPoly {
    cyclotomic_polynomial(order).to_rational()
}

/// Residue class in ℚ[q]/(Φ_N), stored as its reduced representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElem {
    order: u32,
    rep: RatPoly,
}

impl CycloElem {
    pub fn zero(order: u32) -> Self {
        CycloElem {
            order,
            rep: RatPoly::zero(),
        }
    }

    pub fn constant(order: u32, c: BigRational) -> Self {
        CycloElem {
            order,
            rep: RatPoly::from_coeffs(vec![c]),
        }
    }

    pub fn from_poly(order: u32, p: &RatPoly) -> Self {
        CycloElem {
            order,
            rep: p.rem(&modulus(order)),
        }
    }

    pub fn q_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Self::from_poly(order, &RatPoly::from_coeffs(coeffs))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of the reduced representative, lowest degree first.
    pub fn coeffs(&self) -> &[BigRational] {
        self.rep.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep == RatPoly::one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.rep.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.rep.lc()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CycloElem {
            order: self.order,
            rep: self.rep.add(&other.rep),
        }
    }

    pub fn neg(&self) -> Self {
        CycloElem {
            order: self.order,
            rep: self.rep.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_poly(self.order, &self.rep.mul(&other.rep))
    }

    /// Inverse; panics on zero (Φ_N is irreducible, so every nonzero class is a unit).
    pub fn inv(&self) -> Self {
        Self::try_inverse_of_poly(self.order, &self.rep).expect("inverse of zero")
    }

    /// Inverse of the class of `p`, or the common factor with Φ_N if there is none.
    pub fn try_inverse_of_poly(order: u32, p: &RatPoly) -> Result<Self, ScalarError> {
        let m = modulus(order);
        let (g, s) = p.ext_gcd_inverse_part(&m);
        if g != RatPoly::one() {
            let factor = if g.is_zero() { m } else { g };
            return Err(ScalarError::NotInvertible {
                modulus: cyclotomic_polynomial(order).to_string(),
                factor: factor.to_primitive_int().to_string(),
            });
        }
        Ok(Self::from_poly(order, &s))
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, BigRational)> = self
            .rep
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c.clone()))
            .collect();
        write_laurent(f, &terms)
    }
}
