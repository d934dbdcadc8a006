use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use super::{CoeffRing, EuclidValue, RingDescriptor};
use crate::error::{Error, Result};

/// The rational integers. Residues mod `m` are `0..|m|`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Integers
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }

    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Result<Option<BigInt>> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = a.div_rem(b);
        Ok(r.is_zero().then_some(q))
    }

    fn euclid_value(&self, a: &BigInt) -> EuclidValue {
        if a.is_zero() {
            EuclidValue::NEG_INFINITY
        } else {
            EuclidValue::finite(a.magnitude().clone())
        }
    }

    fn quotient_size(&self, m: &BigInt) -> Option<BigUint> {
        (!m.is_zero()).then(|| m.magnitude().clone())
    }

    fn divmod(&self, a: &BigInt, m: &BigInt) -> (BigInt, BigInt) {
        let r = a.mod_floor(&m.abs());
        let q = (a - &r) / m;
        (r, q)
    }

    fn residue_candidates(&self, m: &BigInt) -> Vec<BigInt> {
        let n = m.abs();
        let mut out = Vec::new();
        let mut k = BigInt::zero();
        while k < n {
            out.push(k.clone());
            k += 1;
        }
        out
    }

    fn additive_generators(&self) -> Option<Vec<BigInt>> {
        Some(vec![BigInt::one()])
    }

    fn degree_ball(&self, _max_degree: u32) -> Option<Vec<BigInt>> {
        None
    }

    fn literal(&self, n: &BigUint) -> std::result::Result<BigInt, String> {
        Ok(BigInt::from_biguint(Sign::Plus, n.clone()))
    }

    fn symbol(&self, _name: char) -> Option<BigInt> {
        None
    }

    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn embed(&self, a: &BigInt) -> Option<(BigInt, BigInt)> {
        Some((a.clone(), BigInt::zero()))
    }

    fn is_compound(&self, _a: &BigInt) -> bool {
        false
    }

    fn sample(&self, rng: &mut dyn RngCore, size: u32) -> BigInt {
        let s = i64::from(size);
        BigInt::from(rng.gen_range(-s..=s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(Integers.add(&z(2), &z(3)), z(5));
        assert_eq!(Integers.mul(&z(-4), &z(3)), z(-12));
    }

    #[test]
    fn exact_division() {
        assert_eq!(Integers.exact_div(&z(-5), &z(5)).unwrap(), Some(z(-1)));
        assert_eq!(Integers.exact_div(&z(7), &z(2)).unwrap(), None);
        assert_eq!(Integers.exact_div(&z(7), &z(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn euclid_values() {
        assert!(Integers.euclid_value(&z(0)).is_neg_infinity());
        assert_eq!(Integers.euclid_value(&z(-5)), EuclidValue::finite(5u32));
    }

    #[test]
    fn residues_and_splits() {
        assert_eq!(Integers.residues(&z(5)).unwrap(), (0..5).map(z).collect::<Vec<_>>());
        assert_eq!(Integers.residues(&z(-3)).unwrap(), (0..3).map(z).collect::<Vec<_>>());
        assert_eq!(Integers.canonical_residue(&z(-1), &z(5)).unwrap(), (z(4), z(-1)));
        assert_eq!(Integers.canonical_residue(&z(7), &z(2)).unwrap(), (z(1), z(3)));
        assert_eq!(Integers.canonical_residue(&z(7), &z(-2)).unwrap(), (z(1), z(-3)));
        assert_eq!(Integers.residues(&z(0)), Err(Error::InfiniteQuotient));
        assert!(matches!(Integers.residues(&z(-1)), Err(Error::DegenerateQuotient(_))));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(Integers.parse_element("-1").unwrap(), z(-1));
        assert_eq!(Integers.parse_element(" 42 ").unwrap(), z(42));
        assert!(Integers.parse_element("3+i").is_err());
        assert_eq!(Integers.format(&z(-17)), "-17");
    }
}
