//! Shift radix systems `tau_{r,eps}` with rational parameters and their
//! correspondence with digit systems over the integers.
//!
//! For `P` with `p_0 > 0`, `r = (p_d/p_0, ..., p_1/p_0)` and the digits
//! `[-eps p_0, (1 - eps) p_0)`, the map `T` on Brunotte coordinates is
//! exactly `tau_{r,eps}`. Membership of `r` in `D_d` and `D_d^(0)` is
//! therefore decided on the digit system side.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::digits::{validate_system, DigitSystem};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rings::Integers;
use crate::witness::{decide_fep, decide_pep, Answer, Certificate, DecideOptions, Verdict};

/// Largest box radius searched for a `tau`-cycle when the digit system side
/// gives no usable cycle.
const CYCLE_SEARCH_RADIUS: i64 = 8;
const CYCLE_SEARCH_POINTS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrsParams {
    r: Vec<BigRational>,
    eps: BigRational,
}

impl SrsParams {
    pub fn new(r: Vec<BigRational>, eps: BigRational) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::Dimension {
                expected: 1,
                found: 0,
            });
        }
        if eps.is_negative() || eps >= BigRational::one() {
            return Err(Error::Precondition(format!("eps = {eps} is not in [0, 1)")));
        }
        Ok(SrsParams { r, eps })
    }

    pub fn r(&self) -> &[BigRational] {
        &self.r
    }

    pub fn eps(&self) -> &BigRational {
        &self.eps
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }
}

#[derive(Debug, Clone)]
pub struct SrsVerdict {
    /// Every orbit reaches 0.
    pub in_d0: Answer,
    /// Every orbit is eventually periodic. Never `No`.
    pub in_d: Answer,
    /// A `tau`-cycle avoiding 0, present whenever `in_d0` is `No` and one
    /// was found.
    pub cycle: Option<Vec<Vec<BigInt>>>,
    /// The digit system the verdicts were computed on; `None` for `r = 0`.
    pub system: Option<DigitSystem<Integers>>,
    pub fep: Option<Verdict<BigInt>>,
    pub pep: Option<Verdict<BigInt>>,
}

/// `(z_2, ..., z_d, -floor(r z + eps))`.
pub fn tau_step(params: &SrsParams, z: &[BigInt]) -> Result<Vec<BigInt>> {
    if z.len() != params.dim() {
        return Err(Error::Dimension {
            expected: params.dim(),
            found: z.len(),
        });
    }
    let mut s = params.eps.clone();
    for (ri, zi) in params.r.iter().zip(z) {
        s += ri * BigRational::from_integer(zi.clone());
    }
    let mut out = z[1..].to_vec();
    out.push(-s.floor().to_integer());
    Ok(out)
}

/// `r = (p_d/p_0, ..., p_1/p_0)`.
pub fn poly_to_r(p: &Poly<BigInt>) -> Result<Vec<BigRational>> {
    let c = p.coeffs();
    if c.len() < 2 {
        return Err(Error::InvalidModulus("degree must be at least 1".into()));
    }
    if c[0].is_zero() {
        return Err(Error::InvalidModulus("constant coefficient p_0 is zero".into()));
    }
    Ok(c[1..]
        .iter()
        .rev()
        .map(|pi| BigRational::new(pi.clone(), c[0].clone()))
        .collect())
}

/// The polynomial with `p_0` the least common denominator of `r` (at least
/// 2) and `r = (p_d/p_0, ..., p_1/p_0)`. Leading zeros of `r` lower the
/// degree.
pub fn r_to_poly(r: &[BigRational]) -> Result<Poly<BigInt>> {
    let start = r.iter().position(|x| !x.is_zero()).ok_or_else(|| {
        Error::Precondition("r is zero or empty; no polynomial corresponds".into())
    })?;
    let r = &r[start..];
    let mut p0 = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    if p0.is_one() {
        p0 = BigInt::from(2);
    }
    let mut coeffs = vec![p0.clone()];
    for x in r.iter().rev() {
        coeffs.push((x * BigRational::from_integer(p0.clone())).to_integer());
    }
    Ok(Poly::new(&Integers, coeffs))
}

/// `ceil(-eps |p_0|), ...` with `|p_0|` consecutive integers.
pub fn srs_digit_set(p0: &BigInt, eps: &BigRational) -> Vec<BigInt> {
    let m = p0.abs();
    let lo = (-eps * BigRational::from_integer(m.clone())).ceil().to_integer();
    let n = m.to_usize().expect("digit set fits in memory");
    (0..n).map(|i| &lo + BigInt::from(i)).collect()
}

/// The digit system whose Brunotte dynamics is `tau_{r,eps}`.
pub fn srs_to_cns(params: &SrsParams) -> Result<DigitSystem<Integers>> {
    let p = r_to_poly(&params.r)?;
    let digits: Vec<Poly<BigInt>> = srs_digit_set(&p.coeffs()[0], &params.eps)
        .into_iter()
        .map(|e| Poly::constant(&Integers, e))
        .collect();
    validate_system(Integers, p, &digits)
}

/// `p_0 >= 2` and `p_0 >= p_1 >= ... >= p_d > 0`.
pub fn dominant_condition(p: &Poly<BigInt>) -> bool {
    let c = p.coeffs();
    c.len() >= 2
        && c[0] >= BigInt::from(2)
        && c.windows(2).all(|w| w[0] >= w[1])
        && c.last().is_some_and(|pd| pd.is_positive())
}

fn is_tau_cycle(params: &SrsParams, cycle: &[Vec<BigInt>]) -> bool {
    !cycle.is_empty()
        && cycle.iter().all(|z| z.iter().any(|c| !c.is_zero()))
        && (0..cycle.len()).all(|i| {
            tau_step(params, &cycle[i]).ok().as_ref() == Some(&cycle[(i + 1) % cycle.len()])
        })
}

/// Looks for a cycle avoiding 0 from starting points in a small box.
fn search_tau_cycle(params: &SrsParams, steps: usize) -> Option<Vec<Vec<BigInt>>> {
    let d = params.dim();
    let zero = vec![BigInt::zero(); d];
    let mut done: HashSet<Vec<BigInt>> = HashSet::from([zero]);
    for radius in 1..=CYCLE_SEARCH_RADIUS {
        let side = (2 * radius + 1) as usize;
        if side.checked_pow(d as u32).is_none_or(|n| n > CYCLE_SEARCH_POINTS) {
            break;
        }
        let mut idx = vec![0usize; d];
        loop {
            let start: Vec<BigInt> = idx.iter().map(|&i| BigInt::from(i as i64 - radius)).collect();
            let mut path: Vec<Vec<BigInt>> = Vec::new();
            let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
            let mut z = start;
            while !done.contains(&z) && path.len() < steps {
                if let Some(&j) = seen.get(&z) {
                    let cycle = path[j..].to_vec();
                    return Some(rotate_min(cycle));
                }
                seen.insert(z.clone(), path.len());
                let next = tau_step(params, &z).expect("dimension d");
                path.push(std::mem::replace(&mut z, next));
            }
            done.extend(path);
            let mut j = 0;
            while j < d && idx[j] + 1 == side {
                idx[j] = 0;
                j += 1;
            }
            if j == d {
                break;
            }
            idx[j] += 1;
        }
    }
    None
}

fn rotate_min(mut cycle: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let m = (0..cycle.len())
        .min_by(|&a, &b| cycle[a].cmp(&cycle[b]))
        .expect("nonempty");
    cycle.rotate_left(m);
    cycle
}

/// Follows `tau` from `start` and returns the cycle it enters if that
/// cycle avoids 0.
fn tau_cycle_from(params: &SrsParams, start: Vec<BigInt>, steps: usize) -> Option<Vec<Vec<BigInt>>> {
    let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut path = Vec::new();
    let mut z = start;
    while path.len() <= steps {
        if let Some(&j) = seen.get(&z) {
            let cycle = path[j..].to_vec();
            return is_tau_cycle(params, &cycle).then(|| rotate_min(cycle));
        }
        seen.insert(z.clone(), path.len());
        let next = tau_step(params, &z).ok()?;
        path.push(std::mem::replace(&mut z, next));
    }
    None
}

/// Transfers the cycle of a No verdict to `tau` coordinates, when it lies
/// in the Brunotte module.
fn cycle_from_verdict(
    params: &SrsParams,
    sys: &DigitSystem<Integers>,
    verdict: &Verdict<BigInt>,
) -> Option<Vec<Vec<BigInt>>> {
    let Certificate::Cycle(c) = &verdict.certificate else {
        return None;
    };
    let coords = sys.quot().brunotte_coords(c.first()?)?;
    // leading zeros of r drop out of P; pad the coordinates back to dim d
    let mut z = vec![BigInt::zero(); params.dim() - coords.len()];
    z.extend(coords);
    tau_cycle_from(params, z, 2 * c.len() + params.dim())
}

/// Decides membership of `r` in `D_{d,eps}^(0)` and `D_{d,eps}` through the
/// corresponding digit system.
pub fn srs_classify(params: &SrsParams, opts: &DecideOptions) -> Result<SrsVerdict> {
    if params.r.iter().all(|x| x.is_zero()) {
        return Ok(SrsVerdict {
            in_d0: Answer::Yes,
            in_d: Answer::Yes,
            cycle: None,
            system: None,
            fep: None,
            pep: None,
        });
    }
    let sys = srs_to_cns(params)?;
    let fep = decide_fep(&sys, opts);
    let pep = decide_pep(&sys, opts);
    let cycle = match fep.answer {
        Answer::No => cycle_from_verdict(params, &sys, &fep)
            .or_else(|| search_tau_cycle(params, opts.search_steps)),
        _ => None,
    };
    let in_d = match fep.answer {
        Answer::Yes => Answer::Yes,
        _ => pep.answer,
    };
    Ok(SrsVerdict {
        in_d0: fep.answer,
        in_d,
        cycle,
        system: Some(sys),
        fep: Some(fep),
        pep: Some(pep),
    })
}
