use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rings::CoeffRing;

pub const DEFAULT_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpandingClass {
    Expanding,
    NotExpanding,
    /// Some root modulus lies within the margin of 1.
    Borderline,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpandingReport {
    pub class: ExpandingClass,
    /// Root moduli, ascending.
    pub moduli: Vec<f64>,
    /// Product of `|root|^2`, exactly: `|p_0|^2 / |p_d|^2`.
    pub abs2_product: BigRational,
}

fn abs2(re: &BigInt, im: &BigInt) -> BigInt {
    re * re + im * im
}

fn to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(f64::NAN)
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Roots of `sum c_i z^i` by Aberth iteration. `c` is nonzero at the top.
pub(crate) fn roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|&a| a / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }
    // Cauchy bound for the starting circle
    let radius = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, angle)
        })
        .collect();
    for _ in 0..1000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Classifies `P` by the moduli of its complex roots.
///
/// Needs a coefficient ring embedded in `C`.
pub fn expanding_check<R: CoeffRing>(
    ring: &R,
    p: &Poly<R::Elem>,
    margin: f64,
) -> Result<ExpandingReport> {
    let parts: Vec<(BigInt, BigInt)> = p
        .coeffs()
        .iter()
        .map(|c| ring.embed(c))
        .collect::<Option<_>>()
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "expanding check needs a ring embedded in C, not {}",
                ring.descriptor()
            ))
        })?;
    if parts.len() < 2 {
        return Err(Error::InvalidModulus("degree must be at least 1".into()));
    }
    let (a0, b0) = &parts[0];
    let (ad, bd) = parts.last().expect("nonempty");
    let num = abs2(a0, b0);
    if num.is_zero() {
        return Err(Error::InvalidModulus("constant coefficient p_0 is zero".into()));
    }
    let abs2_product = BigRational::new(num, abs2(ad, bd));
    let c: Vec<Complex64> = parts
        .iter()
        .map(|(re, im)| Complex64::new(to_f64(re), to_f64(im)))
        .collect();
    let mut moduli: Vec<f64> = roots(&c).iter().map(|z| z.norm()).collect();
    moduli.sort_by(f64::total_cmp);
    let class = if moduli.iter().any(|&m| m < 1.0 - margin) {
        ExpandingClass::NotExpanding
    } else if moduli.iter().any(|&m| m <= 1.0 + margin) {
        ExpandingClass::Borderline
    } else {
        ExpandingClass::Expanding
    };
    Ok(ExpandingReport {
        class,
        moduli,
        abs2_product,
    })
}
