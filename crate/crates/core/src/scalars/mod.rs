//! Exact scalars: ℚ, the rational function field ℚ(q), and cyclotomic
//! quotients ℚ[q]/(Φ_N).

mod cyclo;
mod poly;
mod ratfunc;

pub use cyclo::{cyclotomic_polynomial, CycloElem};
pub use poly::{IntPoly, RatPoly};
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("field context mismatch: {0} vs {1}")]
    ContextMismatch(FieldCtx, FieldCtx),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator is not invertible modulo {modulus}: common factor {factor}")]
    NotInvertible { modulus: String, factor: String },
    #[error("the field {0} has no parameter q")]
    NoParameter(FieldCtx),
    #[error("cyclotomic order must be at least 2, got {0}")]
    BadOrder(u32),
    #[error("cannot parse field context {0:?}")]
    BadContext(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// The coefficient field a computation takes place in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldCtx {
    Rational,
    RationalFunction,
    /// ℚ[q]/(Φ_N), N ≥ 2.
    Cyclotomic(u32),
}

impl FieldCtx {
    pub fn cyclotomic(order: u32) -> Result<Self, ScalarError> {
        if order < 2 {
            return Err(ScalarError::BadOrder(order));
        }
        Ok(FieldCtx::Cyclotomic(order))
    }

    pub fn has_parameter(self) -> bool {
        !matches!(self, FieldCtx::Rational)
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldCtx::Rational => Scalar::Rat(BigRational::zero()),
            FieldCtx::RationalFunction => Scalar::Func(RatFunc::zero()),
            FieldCtx::Cyclotomic(n) => Scalar::Cyclo(CycloElem::zero(n)),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, n: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(self, r: BigRational) -> Scalar {
        match self {
            FieldCtx::Rational => Scalar::Rat(r),
            FieldCtx::RationalFunction => Scalar::Func(RatFunc::from_rational(&r)),
            FieldCtx::Cyclotomic(n) => Scalar::Cyclo(CycloElem::constant(n, r)),
        }
    }

    /// The parameter `q` raised to an integer power.
    pub fn q_pow(self, k: i64) -> Result<Scalar, ScalarError> {
        match self {
            FieldCtx::Rational => Err(ScalarError::NoParameter(self)),
            FieldCtx::RationalFunction => Ok(Scalar::Func(RatFunc::q_pow(k))),
            FieldCtx::Cyclotomic(n) => Ok(Scalar::Cyclo(CycloElem::q_pow(n, k))),
        }
    }

    pub fn q(self) -> Result<Scalar, ScalarError> {
        self.q_pow(1)
    }

    /// Parses a scalar literal in this context, e.g. `"(q^2-1)/(q-1)"`.
    pub fn parse(self, src: &str) -> Result<Scalar, ScalarError> {
        crate::dsl::parse_scalar(src, self).map_err(|e| ScalarError::Parse(e.to_string()))
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rational => write!(f, "Q"),
            FieldCtx::RationalFunction => write!(f, "Q(q)"),
            FieldCtx::Cyclotomic(n) => write!(f, "Q[q]/Phi_{n}"),
        }
    }
}

impl FromStr for FieldCtx {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "Q" | "rational" => return Ok(FieldCtx::Rational),
            "Q(q)" | "rational-function" => return Ok(FieldCtx::RationalFunction),
            _ => {}
        }
        let order = t
            .strip_prefix("Q[q]/Phi_")
            .or_else(|| t.strip_prefix("cyclotomic:"))
            .and_then(|n| n.parse::<u32>().ok())
            .ok_or_else(|| ScalarError::BadContext(s.to_string()))?;
        FieldCtx::cyclotomic(order)
    }
}

/// An exact field element; all constructors return canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Func(RatFunc),
    Cyclo(CycloElem),
}

impl Scalar {
    pub fn ctx(&self) -> FieldCtx {
        match self {
            Scalar::Rat(_) => FieldCtx::Rational,
            Scalar::Func(_) => FieldCtx::RationalFunction,
            Scalar::Cyclo(c) => FieldCtx::Cyclotomic(c.order()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Func(f) => f.is_zero(),
            Scalar::Cyclo(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Func(f) => f.is_one(),
            Scalar::Cyclo(c) => c.is_one(),
        }
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Func(f) => f.as_rational(),
            Scalar::Cyclo(c) => c.as_rational(),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a + b)),
            (Scalar::Func(a), Scalar::Func(b)) => Ok(Scalar::Func(a.add(b))),
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) if a.order() == b.order() => {
                Ok(Scalar::Cyclo(a.add(b)))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a * b)),
            (Scalar::Func(a), Scalar::Func(b)) => Ok(Scalar::Func(a.mul(b))),
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) if a.order() == b.order() => {
                Ok(Scalar::Cyclo(a.mul(b)))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if self.ctx() != other.ctx() {
            return Err(self.mismatch(other));
        }
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Func(a) => Scalar::Func(a.inv()),
            Scalar::Cyclo(a) => Scalar::Cyclo(a.inv()),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Func(a) => Scalar::Func(a.neg()),
            Scalar::Cyclo(a) => Scalar::Cyclo(a.neg()),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.ctx().one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    fn mismatch(&self, other: &Scalar) -> ScalarError {
        ScalarError::ContextMismatch(self.ctx(), other.ctx())
    }
}

/// Binary operation selector for [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar, ScalarError> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Div => a.checked_div(b),
    }
}

/// Image of `x ∈ ℚ(q)` (or ℚ) under `q ↦ ζ_N` in ℚ[q]/(Φ_N).
pub fn specialize(x: &Scalar, order: u32) -> Result<Scalar, ScalarError> {
    let ctx = FieldCtx::cyclotomic(order)?;
    match x {
        Scalar::Rat(r) => Ok(ctx.from_rational(r.clone())),
        Scalar::Func(f) => {
            let num = CycloElem::from_poly(order, &f.num().to_rational());
            let den = f.den().to_rational();
            let den_inv = CycloElem::try_inverse_of_poly(order, &den)?;
            Ok(Scalar::Cyclo(num.mul(&den_inv)))
        }
        Scalar::Cyclo(c) if c.order() == order => Ok(x.clone()),
        Scalar::Cyclo(_) => Err(ScalarError::ContextMismatch(x.ctx(), ctx)),
    }
}

// Operator sugar for the hot paths. Mixing contexts is a logic error inside
// the library, so these panic; use the `checked_*` methods at API boundaries.
macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar context mismatch")
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar context mismatch")
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Func(r) => write!(f, "{r}"),
            Scalar::Cyclo(c) => write!(f, "{c}"),
        }
    }
}

/// Whether the display form needs parentheses when used as a factor.
pub(crate) fn needs_parens(s: &str) -> bool {
    s.trim_start_matches('-').contains([' ', '/'])
}
