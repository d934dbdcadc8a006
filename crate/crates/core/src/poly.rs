//! Dense univariate polynomials in `x` over a coefficient ring.

use crate::rings::CoeffRing;

/// Coefficients low to high; the top coefficient is nonzero, and the zero
/// polynomial has no coefficients.
///
/// Trimming needs the ring's zero test, so constructors and operations take
/// the ring explicitly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn new<R: CoeffRing<Elem = T>>(ring: &R, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<R: CoeffRing<Elem = T>>(ring: &R, c: T) -> Self {
        Self::new(ring, vec![c])
    }

    /// `c * x^k`.
    pub fn monomial<R: CoeffRing<Elem = T>>(ring: &R, c: T, k: usize) -> Self {
        let mut coeffs = vec![ring.zero(); k];
        coeffs.push(c);
        Self::new(ring, coeffs)
    }

    pub fn x<R: CoeffRing<Elem = T>>(ring: &R) -> Self {
        Self::monomial(ring, ring.one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff<R: CoeffRing<Elem = T>>(&self, ring: &R, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add<R: CoeffRing<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        let n = self.len().max(other.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => ring.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(ring, coeffs)
    }

    pub fn neg<R: CoeffRing<Elem = T>>(&self, ring: &R) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect(),
        }
    }

    pub fn sub<R: CoeffRing<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn mul<R: CoeffRing<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ring.zero(); self.len() + other.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
            }
        }
        Self::new(ring, out)
    }

    pub fn scale<R: CoeffRing<Elem = T>>(&self, ring: &R, c: &T) -> Self {
        Self::new(ring, self.coeffs.iter().map(|a| ring.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift<R: CoeffRing<Elem = T>>(&self, ring: &R, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow<R: CoeffRing<Elem = T>>(&self, ring: &R, exp: u32) -> Self {
        let mut acc = Self::constant(ring, ring.one());
        for _ in 0..exp {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// Whether every coefficient of `x^i`, `i >= 1`, vanishes.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Renders with `var` as the variable, e.g. `3*X^2 - 2*X + 5`.
    ///
    /// Compound coefficients are bracketed, unit coefficients dropped, and a
    /// simple negative coefficient turns the joining `+` into `-`.
    pub fn format<R: CoeffRing<Elem = T>>(&self, ring: &R, var: &str) -> String
    where
        T: PartialEq,
    {
        if self.is_zero() {
            return "0".to_string();
        }
        let one = ring.one();
        let minus_one = ring.neg(&one);
        let sole = self.coeffs.iter().filter(|c| !ring.is_zero(c)).count() == 1;
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if ring.is_zero(c) {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let text = ring.format(c);
            let (negative, term) = if k > 0 && *c == one {
                (false, power)
            } else if k > 0 && *c == minus_one {
                (true, power)
            } else if ring.is_compound(c) {
                let body = if k == 0 && sole { text } else { format!("({text})") };
                if k == 0 {
                    (false, body)
                } else {
                    (false, format!("{body}*{power}"))
                }
            } else {
                let (negative, body) = match text.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, text),
                };
                if k == 0 {
                    (negative, body)
                } else {
                    (negative, format!("{body}*{power}"))
                }
            };
            match (out.is_empty(), negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{FpPolyRing, GaussianIntegers, Integers};
    use num_bigint::BigInt;

    fn zp(c: &[i64]) -> Poly<BigInt> {
        Poly::new(&Integers, c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(zp(&[1, 0, 0]).degree(), Some(0));
        assert!(zp(&[0, 0]).is_zero());
        assert_eq!(zp(&[]).degree(), None);
    }

    #[test]
    fn ring_operations() {
        let a = zp(&[1, 1]);
        let b = zp(&[-1, 1]);
        assert_eq!(a.mul(&Integers, &b), zp(&[-1, 0, 1]));
        assert_eq!(a.add(&Integers, &b), zp(&[0, 2]));
        assert!(a.sub(&Integers, &a).is_zero());
        assert_eq!(a.pow(&Integers, 2), zp(&[1, 2, 1]));
        assert_eq!(a.shift(&Integers, 2), zp(&[0, 0, 1, 1]));
    }

    #[test]
    fn formatting() {
        assert_eq!(zp(&[-2, 3]).format(&Integers, "X"), "3*X - 2");
        assert_eq!(zp(&[5, -2, 3]).format(&Integers, "x"), "3*x^2 - 2*x + 5");
        assert_eq!(zp(&[0, -1]).format(&Integers, "X"), "-X");
        assert_eq!(zp(&[-4]).format(&Integers, "X"), "-4");
        assert_eq!(zp(&[1, 0, -1]).format(&Integers, "X"), "-X^2 + 1");

        let f2 = FpPolyRing::new(2).unwrap();
        let p = Poly::new(&f2, vec![f2.poly(&[0, 0, 1]), f2.poly(&[0, 1, 1])]);
        assert_eq!(p.format(&f2, "X"), "(y^2+y)*X + y^2");
        let q = Poly::new(&f2, vec![f2.poly(&[1]), f2.poly(&[1])]);
        assert_eq!(q.format(&f2, "X"), "X + 1");

        let g = GaussianIntegers;
        use crate::rings::Gaussian;
        let p = Poly::new(&g, vec![Gaussian::new(1, 2), Gaussian::new(1, 1)]);
        assert_eq!(p.format(&g, "x"), "(1+i)*x + (1+2i)");
        let p = Poly::new(&g, vec![Gaussian::new(0, -2), Gaussian::new(-1, -1)]);
        assert_eq!(p.format(&g, "X"), "(-1-i)*X - 2i");
    }
}
