//! Digit systems on `E[x]/(P_1 ... P_k)` built from systems on the factors.
//!
//! With constant digit sets `N_i`, the set
//! `M = {d_1 + d_2 P_1 + ... + d_k P_1 ... P_(k-1)}` is a digit system for
//! the product. For two factors the expansion can be computed by a coupled
//! recurrence on the coefficients of `A = a + P_1 b`.

use std::collections::HashMap;

use crate::digits::{validate_system, DigitSequence, DigitSystem, SequenceClass};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quotient::QuotElem;
use crate::rings::CoeffRing;
use crate::witness::{decide_fep, Answer, DecideOptions};

/// A factor `(P_i, N_i)` with digits given as polynomials.
pub type Factor<T> = (Poly<T>, Vec<Poly<T>>);

#[derive(Debug, Clone)]
pub struct ProductSystem<R: CoeffRing> {
    factors: Vec<DigitSystem<R>>,
    combined: DigitSystem<R>,
    fep_propagated: bool,
}

impl<R: CoeffRing> ProductSystem<R> {
    pub fn factors(&self) -> &[DigitSystem<R>] {
        &self.factors
    }

    pub fn combined(&self) -> &DigitSystem<R> {
        &self.combined
    }

    /// Every factor has the FEP and `0` lies in `N_1, ..., N_(k-1)`, so the
    /// combined system has the FEP.
    pub fn fep_propagated(&self) -> bool {
        self.fep_propagated
    }
}

/// The product system for two factors.
pub fn product_digit_set<R: CoeffRing>(
    ring: R,
    first: Factor<R::Elem>,
    second: Factor<R::Elem>,
    opts: &DecideOptions,
) -> Result<ProductSystem<R>> {
    multi_product_digit_set(ring, vec![first, second], opts)
}

/// The product system for `k >= 1` factors, digits ordered with `d_1`
/// varying fastest.
pub fn multi_product_digit_set<R: CoeffRing>(
    ring: R,
    factors: Vec<Factor<R::Elem>>,
    opts: &DecideOptions,
) -> Result<ProductSystem<R>> {
    if factors.is_empty() {
        return Err(Error::Precondition("a product needs at least one factor".into()));
    }
    let mut systems = Vec::with_capacity(factors.len());
    for (p, n) in factors {
        if n.iter().any(|e| !e.is_constant()) {
            return Err(Error::Unsupported(
                "product systems need digits in the coefficient ring".into(),
            ));
        }
        systems.push(validate_system(ring.clone(), p, &n)?);
    }

    let mut modulus = Poly::constant(&ring, ring.one());
    let mut digits = vec![Poly::zero()];
    for sys in &systems {
        let mut next = Vec::with_capacity(digits.len() * sys.digits().len());
        for e in sys.digits() {
            let shifted = modulus.mul(&ring, e.rep());
            next.extend(digits.iter().map(|d| d.add(&ring, &shifted)));
        }
        digits = next;
        modulus = modulus.mul(&ring, sys.quot().modulus());
    }
    let combined = validate_system(ring, modulus, &digits)?;

    let zeros = systems[..systems.len() - 1].iter().all(|s| s.contains_zero());
    let fep_propagated = zeros && systems.iter().all(|s| decide_fep(s, opts).answer == Answer::Yes);
    Ok(ProductSystem {
        factors: systems,
        combined,
        fep_propagated,
    })
}

/// `(f - c - q P) / x` for `f - c - q P` with zero constant term.
fn reduce_step<R: CoeffRing>(
    ring: &R,
    f: &Poly<R::Elem>,
    c: &R::Elem,
    q: &R::Elem,
    p: &Poly<R::Elem>,
) -> Poly<R::Elem> {
    let g = f
        .sub(ring, &Poly::constant(ring, c.clone()))
        .sub(ring, &p.scale(ring, q));
    debug_assert!(ring.is_zero(&g.coeff(ring, 0)));
    let mut coeffs = g.into_coeffs();
    if !coeffs.is_empty() {
        coeffs.remove(0);
    }
    Poly::new(ring, coeffs)
}

/// The constant digit of `sys` congruent to `a` and the exact quotient
/// `(a - digit) / p_0`.
fn factor_digit<R: CoeffRing>(sys: &DigitSystem<R>, a: &R::Elem) -> (R::Elem, R::Elem) {
    let ring = sys.ring();
    let d = sys.digit_of(&sys.quot().constant(a.clone())).rep().coeff(ring, 0);
    let q = ring
        .exact_div(&ring.sub(a, &d), sys.quot().p0())
        .ok()
        .flatten()
        .expect("digit is congruent modulo p_0");
    (d, q)
}

/// Expands `A` in a two-factor product system by the coupled recurrence
/// `k = (a_0 - d)/p_0`, `l = (b_0 + k - e)/p'_0`,
/// `a'_i = a_(i+1) - k p_(i+1)`, `b'_i = b_(i+1) - l p'_(i+1)`,
/// emitting `d + e P_1` at each step.
///
/// Termination and periodicity are judged on `a + P_1 b` in the combined
/// ring, so the classification agrees with [`DigitSystem::digit_sequence`].
pub fn product_expand<R: CoeffRing>(
    ps: &ProductSystem<R>,
    a: &Poly<R::Elem>,
    cap: usize,
) -> Result<DigitSequence<R::Elem>> {
    let [f1, f2] = ps.factors.as_slice() else {
        return Err(Error::Precondition(format!(
            "the coupled recurrence needs two factors, not {}",
            ps.factors.len()
        )));
    };
    let sys = &ps.combined;
    let ring = sys.ring();
    let quot = sys.quot();
    let p1 = f1.quot().modulus();
    let p2 = f2.quot().modulus();

    let mut a = a.clone();
    let mut b: Poly<R::Elem> = Poly::zero();
    let mut visited: HashMap<QuotElem<R::Elem>, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut n = 0;
    loop {
        let state = quot.normalize(&a.add(ring, &p1.mul(ring, &b)));
        if let Some(&j) = visited.get(&state) {
            return Ok(DigitSequence {
                digits,
                class: SequenceClass::EventuallyPeriodic {
                    preperiod: j,
                    period: n - j,
                },
            });
        }
        if state.is_zero() && (n > 0 || sys.contains_zero()) {
            return Ok(DigitSequence {
                digits,
                class: SequenceClass::Finite(n),
            });
        }
        if n == cap {
            return Ok(DigitSequence {
                digits,
                class: SequenceClass::UnknownAtCap(cap),
            });
        }
        visited.insert(state, n);

        let (d, k) = factor_digit(f1, &a.coeff(ring, 0));
        let (e, l) = factor_digit(f2, &ring.add(&b.coeff(ring, 0), &k));
        let digit = Poly::constant(ring, d.clone()).add(ring, &p1.scale(ring, &e));
        digits.push(quot.normalize(&digit));
        a = reduce_step(ring, &a, &d, &k, p1);
        b = reduce_step(ring, &b, &ring.sub(&e, &k), &l, p2);
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_list};
    use crate::rings::Integers;
    use proptest::prelude::*;

    fn factor(p: &str, n: &str) -> Factor<num_bigint::BigInt> {
        (parse_poly(&Integers, p).unwrap(), parse_poly_list(&Integers, n).unwrap())
    }

    fn example() -> ProductSystem<Integers> {
        product_digit_set(
            Integers,
            factor("x+2", "0,1"),
            factor("x+3", "0,1,2"),
            &DecideOptions::default(),
        )
        .unwrap()
    }

    fn labels(ps: &ProductSystem<Integers>) -> Vec<String> {
        let q = ps.combined().quot();
        ps.combined().digits().iter().map(|e| q.format(e)).collect()
    }

    #[test]
    fn two_factor_digit_set() {
        let ps = example();
        assert_eq!(labels(&ps), ["0", "1", "X + 2", "X + 3", "2*X + 4", "2*X + 5"]);
        assert_eq!(ps.combined().quot().modulus(), &parse_poly(&Integers, "x^2+5x+6").unwrap());
        assert!(ps.fep_propagated());
        assert_eq!(
            decide_fep(ps.combined(), &DecideOptions::default()).answer,
            Answer::Yes
        );
    }

    #[test]
    fn guards() {
        let opts = DecideOptions::default();
        assert!(product_digit_set(Integers, factor("x+2", "0,1"), factor("x+3", "0"), &opts).is_err());
        assert!(matches!(
            product_digit_set(Integers, factor("x+2", "0,x+1"), factor("x+3", "0,1,2"), &opts),
            Err(Error::Unsupported(_))
        ));
        assert!(multi_product_digit_set::<Integers>(Integers, vec![], &opts).is_err());
    }

    #[test]
    fn three_factors() {
        let opts = DecideOptions::default();
        let f = || factor("x+2", "0,1");
        let ps = multi_product_digit_set(Integers, vec![f(), f(), f()], &opts).unwrap();
        assert_eq!(ps.combined().digits().len(), 8);
        let q = ps.combined().quot();
        let want = parse_poly(&Integers, "1+(x+2)+(x+2)^2").unwrap();
        assert!(ps.combined().digits().contains(&q.normalize(&want)));
        assert!(product_expand(&ps, &Poly::x(&Integers), 100).is_err());
    }

    #[test]
    fn permuted_factors_give_another_digit_set() {
        let opts = DecideOptions::default();
        let swapped =
            product_digit_set(Integers, factor("x+3", "0,1,2"), factor("x+2", "0,1"), &opts).unwrap();
        let mut a = labels(&example());
        let mut b = labels(&swapped);
        a.sort();
        b.sort();
        assert_ne!(a, b);
    }

    #[test]
    fn small_expansions() {
        let ps = example();
        let q = ps.combined().quot();
        let s = product_expand(&ps, &Poly::zero(), 100).unwrap();
        assert_eq!(s.class, SequenceClass::Finite(0));
        let s = product_expand(&ps, &Poly::constant(&Integers, 1.into()), 100).unwrap();
        assert_eq!(s.class, SequenceClass::Finite(1));
        assert_eq!(s.digits, vec![q.one()]);
        let x = Poly::x(&Integers);
        let s = product_expand(&ps, &x, 100).unwrap();
        let generic = ps.combined().digit_sequence(&q.normalize(&x), 100);
        assert_eq!(s, generic);
        assert!(matches!(s.class, SequenceClass::Finite(_)));
    }

    #[test]
    fn factor_without_zero_digit() {
        let ps = product_digit_set(
            Integers,
            factor("x+2", "1,2"),
            factor("x+3", "0,1,2"),
            &DecideOptions::default(),
        )
        .unwrap();
        assert!(!ps.fep_propagated());
        let q = ps.combined().quot();
        for c in -20..20 {
            let f = Poly::new(&Integers, vec![c.into(), (c % 3).into()]);
            let s = product_expand(&ps, &f, 1000).unwrap();
            assert_eq!(s, ps.combined().digit_sequence(&q.normalize(&f), 1000));
        }
    }

    proptest! {
        #[test]
        fn streams_match_generic_iteration(coeffs in prop::collection::vec(-50i64..50, 0..7)) {
            let ps = example();
            let q = ps.combined().quot();
            let f = Poly::new(&Integers, coeffs.into_iter().map(Into::into).collect());
            let s = product_expand(&ps, &f, 10_000).unwrap();
            prop_assert_eq!(&s, &ps.combined().digit_sequence(&q.normalize(&f), 10_000));
            if let SequenceClass::Finite(_) = s.class {
                prop_assert_eq!(ps.combined().evaluate(&s.digits), q.normalize(&f));
            }
        }

        #[test]
        fn fep_propagates(a in 2i64..5, b in 2i64..5) {
            let n = |m: i64| (0..m).map(|i| i.to_string()).collect::<Vec<_>>().join(",");
            let ps = product_digit_set(
                Integers,
                factor(&format!("x+{a}"), &n(a)),
                factor(&format!("x+{b}"), &n(b)),
                &DecideOptions::default(),
            )
            .unwrap();
            prop_assert!(ps.fep_propagated());
            prop_assert_eq!(decide_fep(ps.combined(), &DecideOptions::default()).answer, Answer::Yes);
        }
    }
}
