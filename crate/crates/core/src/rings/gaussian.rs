use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use super::{CoeffRing, EuclidValue, RingDescriptor};
use crate::error::{Error, Result};

/// A Gaussian integer `re + im*i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gaussian {
    pub re: BigInt,
    pub im: BigInt,
}

impl Gaussian {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Gaussian {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Gaussian {
        Gaussian {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
}

/// Rounds `n / d` (with `d > 0`) to the nearest integer, ties toward -inf.
fn round_half_down(n: &BigInt, d: &BigInt) -> BigInt {
    // ceil((2n - d) / 2d)
    let num: BigInt = n * 2 - d;
    let den = d * 2;
    -((-num).div_floor(&den))
}

/// The ring `Z[i]`.
///
/// Division rounds each coordinate of `a/m` to the nearest integer with ties
/// toward negative infinity, so remainders depend only on the class of `a`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GaussianIntegers;

impl CoeffRing for GaussianIntegers {
    type Elem = Gaussian;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::GaussianIntegers
    }

    fn zero(&self) -> Gaussian {
        Gaussian::default()
    }

    fn one(&self) -> Gaussian {
        Gaussian::new(1, 0)
    }

    fn from_i64(&self, n: i64) -> Gaussian {
        Gaussian::new(n, 0)
    }

    fn is_zero(&self, a: &Gaussian) -> bool {
        a.re.is_zero() && a.im.is_zero()
    }

    fn add(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        Gaussian {
            re: &a.re + &b.re,
            im: &a.im + &b.im,
        }
    }

    fn neg(&self, a: &Gaussian) -> Gaussian {
        Gaussian {
            re: -&a.re,
            im: -&a.im,
        }
    }

    fn sub(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        Gaussian {
            re: &a.re - &b.re,
            im: &a.im - &b.im,
        }
    }

    fn mul(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        Gaussian {
            re: &a.re * &b.re - &a.im * &b.im,
            im: &a.re * &b.im + &a.im * &b.re,
        }
    }

    fn is_unit(&self, a: &Gaussian) -> bool {
        a.norm().is_one()
    }

    fn exact_div(&self, a: &Gaussian, b: &Gaussian) -> Result<Option<Gaussian>> {
        if self.is_zero(b) {
            return Err(Error::DivisionByZero);
        }
        let n = b.norm();
        let c = self.mul(a, &b.conj());
        let (qr, rr) = c.re.div_rem(&n);
        let (qi, ri) = c.im.div_rem(&n);
        Ok((rr.is_zero() && ri.is_zero()).then_some(Gaussian { re: qr, im: qi }))
    }

    fn euclid_value(&self, a: &Gaussian) -> EuclidValue {
        if self.is_zero(a) {
            EuclidValue::NEG_INFINITY
        } else {
            EuclidValue::finite(a.norm().into_parts().1)
        }
    }

    fn quotient_size(&self, m: &Gaussian) -> Option<BigUint> {
        (!self.is_zero(m)).then(|| m.norm().into_parts().1)
    }

    fn divmod(&self, a: &Gaussian, m: &Gaussian) -> (Gaussian, Gaussian) {
        let n = m.norm();
        let c = self.mul(a, &m.conj());
        let q = Gaussian {
            re: round_half_down(&c.re, &n),
            im: round_half_down(&c.im, &n),
        };
        let r = self.sub(a, &self.mul(&q, m));
        (r, q)
    }

    /// `{x + y i : 0 <= x < N/g, 0 <= y < g}` with `N` the norm of `m` and
    /// `g` the gcd of its coordinates.
    fn residue_candidates(&self, m: &Gaussian) -> Vec<Gaussian> {
        let n = m.norm();
        let g = m.re.gcd(&m.im);
        let width = &n / &g;
        let mut out = Vec::new();
        let mut y = BigInt::zero();
        while y < g {
            let mut x = BigInt::zero();
            while x < width {
                out.push(Gaussian {
                    re: x.clone(),
                    im: y.clone(),
                });
                x += 1;
            }
            y += 1;
        }
        out
    }

    fn additive_generators(&self) -> Option<Vec<Gaussian>> {
        Some(vec![Gaussian::new(1, 0), Gaussian::new(0, 1)])
    }

    fn degree_ball(&self, _max_degree: u32) -> Option<Vec<Gaussian>> {
        None
    }

    fn literal(&self, n: &BigUint) -> std::result::Result<Gaussian, String> {
        Ok(Gaussian {
            re: BigInt::from_biguint(Sign::Plus, n.clone()),
            im: BigInt::zero(),
        })
    }

    fn symbol(&self, name: char) -> Option<Gaussian> {
        (name == 'i').then(|| Gaussian::new(0, 1))
    }

    fn format(&self, a: &Gaussian) -> String {
        fn imag(im: &BigInt) -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        }
        match (a.re.is_zero(), a.im.is_zero()) {
            (_, true) => a.re.to_string(),
            (true, false) => imag(&a.im),
            (false, false) => {
                let sign = if a.im.is_negative() { '-' } else { '+' };
                let mag = a.im.abs();
                let tail = if mag.is_one() {
                    "i".to_string()
                } else {
                    format!("{mag}i")
                };
                format!("{}{sign}{tail}", a.re)
            }
        }
    }

    fn embed(&self, a: &Gaussian) -> Option<(BigInt, BigInt)> {
        Some((a.re.clone(), a.im.clone()))
    }

    fn sample(&self, rng: &mut dyn RngCore, size: u32) -> Gaussian {
        let s = i64::from(size);
        Gaussian::new(rng.gen_range(-s..=s), rng.gen_range(-s..=s))
    }
}
