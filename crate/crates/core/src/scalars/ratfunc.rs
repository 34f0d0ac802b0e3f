use super::poly::{write_laurent, IntPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Element of ℚ(q) as a reduced fraction of integer polynomials.
///
/// Canonical form: numerator and denominator coprime in ℚ[q], denominator
/// with positive leading coefficient, and the integer contents of numerator
/// and denominator coprime. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(
            IntPoly::constant(r.numer().clone()),
            IntPoly::constant(r.denom().clone()),
        )
    }

    pub fn q_pow(k: i64) -> Self {
        let m = IntPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            RatFunc {
                num: m,
                den: IntPoly::one(),
            }
        } else {
            RatFunc {
                num: IntPoly::one(),
                den: m,
            }
        }
    }

    /// Builds `num/den` in canonical form. Panics if `den` is zero.
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let mut c = num.content().gcd(&den.content());
        if den.lc().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        RatFunc { num, den }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| {
            let n = self.num.coeffs().first().cloned().unwrap_or_default();
            BigRational::new(n, self.den.lc())
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc {
                num: self.num.mul(&other.num),
                den: IntPoly::one(),
            };
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Laurent terms `(exponent, coefficient)` when the denominator is `c q^k`.
    fn laurent_terms(&self) -> Option<Vec<(i64, BigRational)>> {
        let k = self.den.monomial_degree()? as i64;
        let d = self.den.lc();
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 - k, BigRational::new(c.clone(), d.clone())))
                .collect(),
        )
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.laurent_terms() {
            Some(terms) => write_laurent(f, &terms),
            None => write!(f, "({})/({})", self.num, self.den),
        }
    }
}
