use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use super::{CoeffRing, EuclidValue, RingDescriptor};
use crate::error::{Error, Result};

/// Polynomial in `y` over `F_p`, coefficients low to high, no trailing zeros.
///
/// Ordered by degree first, then by coefficients from the top down.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FpPoly(Vec<u32>);

impl FpPoly {
    pub fn zero() -> Self {
        FpPoly(Vec::new())
    }

    /// Builds from raw coefficients (low to high) already reduced mod `p`.
    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }
}

impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = u64::from(n);
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The ring `F_p[y]` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpPolyRing {
    p: u32,
}

impl FpPolyRing {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(FpPolyRing { p })
        } else {
            Err(Error::NotPrime(u64::from(p)))
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces arbitrary integer coefficients mod `p`.
    pub fn poly(&self, coeffs: &[i64]) -> FpPoly {
        let p = i64::from(self.p);
        FpPoly::from_coeffs(coeffs.iter().map(|&c| c.rem_euclid(p) as u32).collect())
    }

    pub fn constant(&self, c: u32) -> FpPoly {
        FpPoly::from_coeffs(vec![c % self.p])
    }

    fn mulmod(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    fn addmod(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % u64::from(self.p)) as u32
    }

    fn inv(&self, a: u32) -> u32 {
        // Fermat: a^(p-2)
        let mut result = 1u32;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mulmod(result, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        result
    }

    /// Long division; `m` must be nonzero.
    fn long_div(&self, a: &FpPoly, m: &FpPoly) -> (FpPoly, FpPoly) {
        let dm = m.0.len() - 1;
        let inv_lead = self.inv(m.lead());
        let mut r = a.0.clone();
        if r.len() <= dm {
            return (FpPoly::zero(), a.clone());
        }
        let mut q = vec![0u32; r.len() - dm];
        for k in (0..q.len()).rev() {
            let c = self.mulmod(r[k + dm], inv_lead);
            if c == 0 {
                continue;
            }
            q[k] = c;
            let neg_c = self.p - c;
            for (j, &mj) in m.0.iter().enumerate() {
                r[k + j] = self.addmod(r[k + j], self.mulmod(neg_c, mj));
            }
        }
        (FpPoly::from_coeffs(q), FpPoly::from_coeffs(r))
    }

    /// Every polynomial of degree `< len`, in increasing order.
    fn all_below(&self, len: usize) -> Vec<FpPoly> {
        let mut out = vec![FpPoly::zero()];
        let mut cur = vec![0u32; len];
        loop {
            let mut i = 0;
            while i < len && cur[i] + 1 == self.p {
                cur[i] = 0;
                i += 1;
            }
            if i == len {
                break;
            }
            cur[i] += 1;
            out.push(FpPoly::from_coeffs(cur.clone()));
        }
        out.sort();
        out
    }
}

impl CoeffRing for FpPolyRing {
    type Elem = FpPoly;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::PolynomialsOverPrimeField(self.p)
    }

    fn zero(&self) -> FpPoly {
        FpPoly::zero()
    }

    fn one(&self) -> FpPoly {
        FpPoly(vec![1])
    }

    fn from_i64(&self, n: i64) -> FpPoly {
        self.poly(&[n])
    }

    fn is_zero(&self, a: &FpPoly) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.0.len().max(b.0.len());
        let get = |v: &FpPoly, i: usize| v.0.get(i).copied().unwrap_or(0);
        FpPoly::from_coeffs((0..n).map(|i| self.addmod(get(a, i), get(b, i))).collect())
    }

    fn neg(&self, a: &FpPoly) -> FpPoly {
        FpPoly::from_coeffs(a.0.iter().map(|&c| (self.p - c) % self.p).collect())
    }

    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.is_zero() || b.is_zero() {
            return FpPoly::zero();
        }
        let mut out = vec![0u32; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            for (j, &y) in b.0.iter().enumerate() {
                out[i + j] = self.addmod(out[i + j], self.mulmod(x, y));
            }
        }
        FpPoly::from_coeffs(out)
    }

    fn is_unit(&self, a: &FpPoly) -> bool {
        a.0.len() == 1
    }

    fn exact_div(&self, a: &FpPoly, b: &FpPoly) -> Result<Option<FpPoly>> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.long_div(a, b);
        Ok(r.is_zero().then_some(q))
    }

    fn euclid_value(&self, a: &FpPoly) -> EuclidValue {
        match a.degree() {
            None => EuclidValue::NEG_INFINITY,
            Some(d) => EuclidValue::finite(d as u64),
        }
    }

    fn quotient_size(&self, m: &FpPoly) -> Option<BigUint> {
        m.degree().map(|d| BigUint::from(self.p).pow(d as u32))
    }

    fn divmod(&self, a: &FpPoly, m: &FpPoly) -> (FpPoly, FpPoly) {
        let (q, r) = self.long_div(a, m);
        (r, q)
    }

    fn residue_candidates(&self, m: &FpPoly) -> Vec<FpPoly> {
        self.all_below(m.degree().unwrap_or(0))
    }

    fn additive_generators(&self) -> Option<Vec<FpPoly>> {
        None
    }

    fn degree_ball(&self, max_degree: u32) -> Option<Vec<FpPoly>> {
        Some(self.all_below(max_degree as usize + 1))
    }

    fn literal(&self, n: &BigUint) -> std::result::Result<FpPoly, String> {
        match n.to_u32() {
            Some(v) if v < self.p => Ok(self.constant(v)),
            _ => Err(format!("coefficient out of range for F_{}: {n}", self.p)),
        }
    }

    fn symbol(&self, name: char) -> Option<FpPoly> {
        (name == 'y').then(|| FpPoly(vec![0, 1]))
    }

    fn format(&self, a: &FpPoly) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = a
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                let coeff = if c == 1 && k > 0 {
                    String::new()
                } else {
                    c.to_string()
                };
                match k {
                    0 => coeff,
                    1 => format!("{coeff}y"),
                    _ => format!("{coeff}y^{k}"),
                }
            })
            .collect();
        terms.join("+")
    }

    fn sample(&self, rng: &mut dyn RngCore, size: u32) -> FpPoly {
        let len = rng.gen_range(0..=size as usize + 1);
        FpPoly::from_coeffs((0..len).map(|_| rng.gen_range(0..self.p)).collect())
    }
}
