//! Coefficient rings `E`: the integers, the Gaussian integers and `F_p[y]`.
//!
//! Every ring here is a Euclidean domain with finite residue rings `E/(m)`
//! for `m != 0`. Each ring fixes one residue system per modulus (see
//! [`CoeffRing::divmod`]); all canonical forms further up are built on it.

mod fpoly;
mod gaussian;
mod integer;

use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use rand::RngCore;

use crate::error::{Error, Result};
use crate::parse;

pub use fpoly::{FpPoly, FpPolyRing};
pub use gaussian::{Gaussian, GaussianIntegers};
pub use integer::Integers;

/// Value of the Euclidean function `g`; `g(0) = -inf`.
///
/// Integers use `|a|`, Gaussian integers the norm `a^2 + b^2`, and `F_p[y]`
/// the degree in `y`. All three satisfy `g(ab) >= g(b)` for `a, b != 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EuclidValue(Option<BigUint>);

impl EuclidValue {
    pub const NEG_INFINITY: EuclidValue = EuclidValue(None);

    pub fn finite(v: impl Into<BigUint>) -> Self {
        EuclidValue(Some(v.into()))
    }

    pub fn is_neg_infinity(&self) -> bool {
        self.0.is_none()
    }

    pub fn value(&self) -> Option<&BigUint> {
        self.0.as_ref()
    }
}

impl fmt::Display for EuclidValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => f.write_str("-inf"),
            Some(v) => write!(f, "{v}"),
        }
    }
}

/// Names one of the supported coefficient rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    GaussianIntegers,
    PolynomialsOverPrimeField(u32),
}

impl RingDescriptor {
    /// Parses `Z`, `Zi` or `Fp:<p>`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "Z" => Ok(RingDescriptor::Integers),
            "Zi" | "Z[i]" => Ok(RingDescriptor::GaussianIntegers),
            _ => {
                let p = t
                    .strip_prefix("Fp:")
                    .or_else(|| t.strip_prefix("F"))
                    .and_then(|s| s.parse::<u32>().ok())
                    .ok_or_else(|| {
                        Error::Parse(crate::error::ParseError::new(
                            0,
                            format!("unknown ring '{t}', expected Z, Zi or Fp:<p>"),
                        ))
                    })?;
                FpPolyRing::new(p)?;
                Ok(RingDescriptor::PolynomialsOverPrimeField(p))
            }
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => f.write_str("Z"),
            RingDescriptor::GaussianIntegers => f.write_str("Zi"),
            RingDescriptor::PolynomialsOverPrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An exact commutative coefficient ring that is a Euclidean domain.
///
/// Elements are plain values in canonical form, so `==` on elements is ring
/// equality. Ring-dependent context (the prime `p` of `F_p[y]`) lives in the
/// ring value, not in its elements.
pub trait CoeffRing: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static;

    fn descriptor(&self) -> RingDescriptor;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// `Some(q)` with `a = q b` when `b` divides `a`, `None` otherwise.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Option<Self::Elem>>;

    fn euclid_value(&self, a: &Self::Elem) -> EuclidValue;

    /// `|E/(m)|`, `None` for `m = 0`.
    fn quotient_size(&self, m: &Self::Elem) -> Option<BigUint>;

    /// Splits `a = r + q m` with `r` in the fixed residue system of `E/(m)`.
    ///
    /// Defined for every `m != 0`, units included (then `r = 0`).
    fn divmod(&self, a: &Self::Elem, m: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// A set of elements hitting every class of `E/(m)` exactly once, before
    /// canonicalisation. `m` is nonzero.
    fn residue_candidates(&self, m: &Self::Elem) -> Vec<Self::Elem>;

    /// Finite additive generators of `E`, or `None` when `(E, +)` is not
    /// finitely generated.
    fn additive_generators(&self) -> Option<Vec<Self::Elem>>;

    /// All elements with `euclid_value <= max_degree`, for rings where that
    /// set is finite and the value is a non-archimedean degree.
    fn degree_ball(&self, max_degree: u32) -> Option<Vec<Self::Elem>>;

    /// Integer literal as an element (range-checked for `F_p`).
    fn literal(&self, n: &BigUint) -> std::result::Result<Self::Elem, String>;

    /// The named generator (`i` for `Z[i]`, `y` for `F_p[y]`).
    fn symbol(&self, name: char) -> Option<Self::Elem>;

    fn format(&self, a: &Self::Elem) -> String;

    /// Exact real and imaginary parts, for rings embedded in `C`.
    fn embed(&self, _a: &Self::Elem) -> Option<(BigInt, BigInt)> {
        None
    }

    /// Whether [`format`](Self::format) needs brackets when used as a factor.
    fn is_compound(&self, a: &Self::Elem) -> bool {
        let s = self.format(a);
        s.char_indices().any(|(i, c)| i > 0 && (c == '+' || c == '-'))
    }

    /// Random element with "size" bounded by `size` (absolute value,
    /// coordinate bound or degree, depending on the ring).
    fn sample(&self, rng: &mut dyn RngCore, size: u32) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, exp: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..exp {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Complete, duplicate-free residue system of `E/(m)`, sorted.
    fn residues(&self, m: &Self::Elem) -> Result<Vec<Self::Elem>> {
        self.check_modulus(m)?;
        let mut out: Vec<Self::Elem> = self
            .residue_candidates(m)
            .iter()
            .map(|a| self.divmod(a, m).0)
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `(r, q)` with `a = r + q m` and `r` the member of
    /// [`residues`](Self::residues) congruent to `a`.
    fn canonical_residue(&self, a: &Self::Elem, m: &Self::Elem) -> Result<(Self::Elem, Self::Elem)> {
        self.check_modulus(m)?;
        Ok(self.divmod(a, m))
    }

    fn check_modulus(&self, m: &Self::Elem) -> Result<()> {
        if self.is_zero(m) {
            return Err(Error::InfiniteQuotient);
        }
        if self.is_unit(m) {
            return Err(Error::DegenerateQuotient(self.format(m)));
        }
        Ok(())
    }

    fn parse_element(&self, text: &str) -> Result<Self::Elem> {
        parse::parse_constant(self, text)
    }
}

/// Ring element carrying its ring, for code paths that only learn the ring
/// at run time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingElement {
    Integer(BigInt),
    Gaussian(Gaussian),
    FpPoly { p: u32, value: FpPoly },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl RingElement {
    pub fn descriptor(&self) -> RingDescriptor {
        match self {
            RingElement::Integer(_) => RingDescriptor::Integers,
            RingElement::Gaussian(_) => RingDescriptor::GaussianIntegers,
            RingElement::FpPoly { p, .. } => RingDescriptor::PolynomialsOverPrimeField(*p),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_element(self))
    }
}

fn binary<R: CoeffRing>(ring: &R, a: &R::Elem, b: &R::Elem, op: ArithOp) -> R::Elem {
    match op {
        ArithOp::Add => ring.add(a, b),
        ArithOp::Sub => ring.sub(a, b),
        ArithOp::Mul => ring.mul(a, b),
        ArithOp::Neg => ring.neg(a),
    }
}

/// `a op b`; for [`ArithOp::Neg`] the second operand is ignored but must
/// still come from the same ring.
pub fn ring_arith(a: &RingElement, b: &RingElement, op: ArithOp) -> Result<RingElement> {
    match (a, b) {
        (RingElement::Integer(x), RingElement::Integer(y)) => {
            Ok(RingElement::Integer(binary(&Integers, x, y, op)))
        }
        (RingElement::Gaussian(x), RingElement::Gaussian(y)) => {
            Ok(RingElement::Gaussian(binary(&GaussianIntegers, x, y, op)))
        }
        (RingElement::FpPoly { p, value: x }, RingElement::FpPoly { p: q, value: y }) if p == q => {
            let ring = FpPolyRing::new(*p)?;
            Ok(RingElement::FpPoly {
                p: *p,
                value: binary(&ring, x, y, op),
            })
        }
        _ => Err(Error::RingMismatch(
            a.descriptor().to_string(),
            b.descriptor().to_string(),
        )),
    }
}

pub fn parse_element(text: &str, descriptor: RingDescriptor) -> Result<RingElement> {
    Ok(match descriptor {
        RingDescriptor::Integers => RingElement::Integer(Integers.parse_element(text)?),
        RingDescriptor::GaussianIntegers => {
            RingElement::Gaussian(GaussianIntegers.parse_element(text)?)
        }
        RingDescriptor::PolynomialsOverPrimeField(p) => RingElement::FpPoly {
            p,
            value: FpPolyRing::new(p)?.parse_element(text)?,
        },
    })
}

pub fn format_element(a: &RingElement) -> String {
    match a {
        RingElement::Integer(x) => Integers.format(x),
        RingElement::Gaussian(x) => GaussianIntegers.format(x),
        RingElement::FpPoly { p, value } => FpPolyRing::new(*p)
            .map(|r| r.format(value))
            .unwrap_or_else(|_| format!("{value:?}")),
    }
}
