//! Digit systems `(R, X, N)`: the digit map `D`, the backward division map
//! `T(A) = (A - D(A))/X`, digit sequences, expansions and zero cycles.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result, Violation};
use crate::poly::Poly;
use crate::quotient::{QuotElem, QuotientRing};
use crate::rings::CoeffRing;

/// Default budget of `T`-steps for a single orbit.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// Residue systems up to this size are enumerated to name missing classes.
const MISSING_LISTING_LIMIT: u64 = 100_000;

/// How a `T`-orbit ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceClass {
    /// `T^n(A) = 0` with `n` minimal.
    Finite(usize),
    /// `T^(preperiod + period)(A) = T^preperiod(A)`; 0 may be on the cycle
    /// only for the orbit of 0 itself.
    EventuallyPeriodic { preperiod: usize, period: usize },
    /// Neither 0 nor a repeated state within the step budget.
    UnknownAtCap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSequence<T> {
    /// `D(T^i(A))` for every step taken.
    pub digits: Vec<QuotElem<T>>,
    pub class: SequenceClass,
}

/// A finite expansion `A = sum e_i X^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion<T> {
    pub digits: Vec<QuotElem<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpandFailure {
    /// The orbit entered a cycle that avoids 0.
    ProvenNonFinite { preperiod: usize, period: usize },
    UnknownAtCap(usize),
}

/// Shortest digit string `(d_0, ..., d_l)` with `sum d_i X^i = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCycle<T> {
    pub digits: Vec<QuotElem<T>>,
}

impl<T> ZeroCycle<T> {
    pub fn period(&self) -> usize {
        self.digits.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroCycleResult<T> {
    Found(ZeroCycle<T>),
    /// The orbit of 0 is eventually periodic but never returns to 0.
    NoZeroCycle { preperiod: usize, period: usize },
    UnknownAtCap(usize),
}

/// Purely periodic elements reachable from a seed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicSetReport<T> {
    /// Each cycle starts at its least element; cycles are sorted.
    pub orbits: Vec<Vec<QuotElem<T>>>,
    pub contains_zero: bool,
    /// False when some orbit walk hit the step budget.
    pub complete: bool,
}

impl<T: Clone + Ord> PeriodicSetReport<T> {
    pub fn elements(&self) -> Vec<QuotElem<T>> {
        let mut all: Vec<_> = self.orbits.iter().flatten().cloned().collect();
        all.sort();
        all
    }
}

/// A validated digit system.
#[derive(Debug, Clone)]
pub struct DigitSystem<R: CoeffRing> {
    quot: QuotientRing<R>,
    digits: Vec<QuotElem<R::Elem>>,
    table: HashMap<R::Elem, usize>,
    zero_digit: bool,
    k: usize,
}

/// Checks `P` and `N` and builds the digit lookup table.
///
/// All digit-set problems are reported together.
pub fn validate_system<R: CoeffRing>(
    ring: R,
    modulus: Poly<R::Elem>,
    digits: &[Poly<R::Elem>],
) -> Result<DigitSystem<R>> {
    let d = modulus.degree().unwrap_or(0);
    if d < 1 {
        return Err(Error::InvalidSystem(vec![Violation::DegreeTooSmall]));
    }
    let p0 = modulus.coeff(&ring, 0);
    if ring.is_zero(&p0) {
        return Err(Error::InvalidSystem(vec![Violation::ZeroConstantCoefficient]));
    }
    if ring.is_unit(&p0) {
        return Err(Error::InvalidSystem(vec![Violation::UnitConstantCoefficient {
            p0: ring.format(&p0),
        }]));
    }
    let quot = QuotientRing::new(ring, modulus)?;
    let ring = quot.ring();

    let mut violations = Vec::new();
    let mut table: HashMap<R::Elem, usize> = HashMap::new();
    let normalized: Vec<_> = digits.iter().map(|f| quot.normalize(f)).collect();
    for (i, e) in normalized.iter().enumerate() {
        let (r, _) = ring.divmod(&e.rep().coeff(ring, 0), &p0);
        if let Some(&j) = table.get(&r) {
            violations.push(Violation::DuplicateResidue {
                residue: ring.format(&r),
                first: quot.format(&normalized[j]),
                second: quot.format(e),
            });
        } else {
            table.insert(r, i);
        }
    }
    let size = ring.quotient_size(&p0).expect("p_0 nonzero");
    if size != BigUint::from(normalized.len()) {
        violations.push(Violation::WrongDigitCount {
            expected: size.to_string(),
            found: normalized.len(),
        });
    }
    if BigUint::from(table.len()) != size
        && size.to_u64().is_some_and(|s| s <= MISSING_LISTING_LIMIT)
    {
        let missing: Vec<String> = ring
            .residues(&p0)?
            .iter()
            .filter(|r| !table.contains_key(*r))
            .map(|r| ring.format(r))
            .collect();
        if !missing.is_empty() {
            violations.push(Violation::MissingResidues { missing });
        }
    }
    if !violations.is_empty() {
        return Err(Error::InvalidSystem(violations));
    }

    let k = normalized
        .iter()
        .filter_map(|e| e.degree())
        .max()
        .unwrap_or(0)
        .max(d);
    let zero_digit = normalized.iter().any(|e| e.is_zero());
    Ok(DigitSystem {
        quot,
        digits: normalized,
        table,
        zero_digit,
        k,
    })
}

impl<R: CoeffRing> DigitSystem<R> {
    pub fn quot(&self) -> &QuotientRing<R> {
        &self.quot
    }

    pub fn ring(&self) -> &R {
        self.quot.ring()
    }

    pub fn digits(&self) -> &[QuotElem<R::Elem>] {
        &self.digits
    }

    pub fn contains_zero(&self) -> bool {
        self.zero_digit
    }

    /// Least `k >= deg P` such that every digit has a representative of
    /// degree at most `k`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Whether every digit lies in `E`.
    pub fn digits_constant(&self) -> bool {
        self.digits.iter().all(|e| e.rep().is_constant())
    }

    /// Constant coefficients of the digits, when all digits are constant.
    pub fn constant_digits(&self) -> Option<Vec<R::Elem>> {
        let ring = self.ring();
        self.digits_constant()
            .then(|| self.digits.iter().map(|e| e.rep().coeff(ring, 0)).collect())
    }

    pub fn digit_index(&self, a: &QuotElem<R::Elem>) -> usize {
        let ring = self.ring();
        let (r, _) = ring.divmod(&a.rep().coeff(ring, 0), self.quot.p0());
        self.table[&r]
    }

    /// `D(A)`: the digit congruent to `A` modulo `X`.
    pub fn digit_of(&self, a: &QuotElem<R::Elem>) -> &QuotElem<R::Elem> {
        &self.digits[self.digit_index(a)]
    }

    /// `(D(A), T(A))`.
    pub fn split(&self, a: &QuotElem<R::Elem>) -> (usize, QuotElem<R::Elem>) {
        let i = self.digit_index(a);
        let diff = self.quot.sub(a, &self.digits[i]);
        let next = self
            .quot
            .divide_by_x(&diff)
            .expect("A - D(A) is divisible by X");
        (i, next)
    }

    /// `T(A) = (A - D(A))/X`.
    pub fn step(&self, a: &QuotElem<R::Elem>) -> QuotElem<R::Elem> {
        self.split(a).1
    }

    /// Iterates `T` from `a` for at most `cap` steps.
    ///
    /// Finite is reported at the first arrival at 0. The orbit of 0 itself
    /// counts as finite only when `0` is a digit; otherwise it is the zero
    /// cycle, reported as periodic.
    pub fn digit_sequence(&self, a: &QuotElem<R::Elem>, cap: usize) -> DigitSequence<R::Elem> {
        let mut visited: HashMap<QuotElem<R::Elem>, usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut cur = a.clone();
        let mut n = 0;
        loop {
            if let Some(&j) = visited.get(&cur) {
                return DigitSequence {
                    digits,
                    class: SequenceClass::EventuallyPeriodic {
                        preperiod: j,
                        period: n - j,
                    },
                };
            }
            if cur.is_zero() && (n > 0 || self.zero_digit) {
                return DigitSequence {
                    digits,
                    class: SequenceClass::Finite(n),
                };
            }
            if n == cap {
                return DigitSequence {
                    digits,
                    class: SequenceClass::UnknownAtCap(cap),
                };
            }
            let (i, next) = self.split(&cur);
            digits.push(self.digits[i].clone());
            visited.insert(std::mem::replace(&mut cur, next), n);
            n += 1;
        }
    }

    /// The finite expansion of `a`; `expand(0)` is empty.
    pub fn expand(
        &self,
        a: &QuotElem<R::Elem>,
        cap: usize,
    ) -> std::result::Result<Expansion<R::Elem>, ExpandFailure> {
        if a.is_zero() {
            return Ok(Expansion { digits: Vec::new() });
        }
        let seq = self.digit_sequence(a, cap);
        match seq.class {
            SequenceClass::Finite(_) => Ok(Expansion { digits: seq.digits }),
            SequenceClass::EventuallyPeriodic { preperiod, period } => {
                Err(ExpandFailure::ProvenNonFinite { preperiod, period })
            }
            SequenceClass::UnknownAtCap(c) => Err(ExpandFailure::UnknownAtCap(c)),
        }
    }

    /// Horner evaluation of `sum e_i X^i`.
    pub fn evaluate(&self, digits: &[QuotElem<R::Elem>]) -> QuotElem<R::Elem> {
        digits.iter().rev().fold(self.quot.zero(), |acc, e| {
            self.quot.add(&self.quot.mul_by_x(&acc), e)
        })
    }

    /// Iterates `T` from 0 until 0 recurs.
    pub fn zero_cycle(&self, cap: usize) -> ZeroCycleResult<R::Elem> {
        if self.zero_digit {
            return ZeroCycleResult::Found(ZeroCycle {
                digits: vec![self.quot.zero()],
            });
        }
        let seq = self.digit_sequence(&self.quot.zero(), cap);
        match seq.class {
            SequenceClass::EventuallyPeriodic {
                preperiod: 0,
                period,
            } => ZeroCycleResult::Found(ZeroCycle {
                digits: seq.digits[..period].to_vec(),
            }),
            SequenceClass::EventuallyPeriodic { preperiod, period } => {
                ZeroCycleResult::NoZeroCycle { preperiod, period }
            }
            SequenceClass::UnknownAtCap(c) => ZeroCycleResult::UnknownAtCap(c),
            SequenceClass::Finite(_) => unreachable!("0 is not a digit"),
        }
    }

    /// Every `T`-cycle reachable from `seeds`, each orbit walk bounded by
    /// `cap` steps.
    pub fn periodic_set(
        &self,
        seeds: &[QuotElem<R::Elem>],
        cap: usize,
    ) -> PeriodicSetReport<R::Elem> {
        let mut explored: HashSet<QuotElem<R::Elem>> = HashSet::new();
        let mut orbits = Vec::new();
        let mut complete = true;
        for seed in seeds {
            let mut path: Vec<QuotElem<R::Elem>> = Vec::new();
            let mut index: HashMap<QuotElem<R::Elem>, usize> = HashMap::new();
            let mut cur = seed.clone();
            loop {
                if explored.contains(&cur) {
                    break;
                }
                if let Some(&j) = index.get(&cur) {
                    let mut cycle: Vec<_> = path[j..].to_vec();
                    let start = (0..cycle.len())
                        .min_by(|&a, &b| cycle[a].cmp(&cycle[b]))
                        .expect("nonempty cycle");
                    cycle.rotate_left(start);
                    orbits.push(cycle);
                    break;
                }
                if path.len() == cap {
                    complete = false;
                    break;
                }
                index.insert(cur.clone(), path.len());
                path.push(cur.clone());
                cur = self.step(&cur);
            }
            explored.extend(path);
        }
        orbits.sort();
        let contains_zero = orbits.iter().flatten().any(|e| e.is_zero());
        PeriodicSetReport {
            orbits,
            contains_zero,
            complete,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_list};
    use crate::rings::{FpPolyRing, Integers};
    use num_bigint::BigInt;

    fn zsys(p: &str, digits: &str) -> DigitSystem<Integers> {
        validate_system(
            Integers,
            parse_poly(&Integers, p).unwrap(),
            &parse_poly_list(&Integers, digits).unwrap(),
        )
        .unwrap()
    }

    fn example2() -> DigitSystem<FpPolyRing> {
        let f2 = FpPolyRing::new(2).unwrap();
        validate_system(
            f2,
            parse_poly(&f2, "(y+1)x^2+y*x+(y^2+1)").unwrap(),
            &parse_poly_list(&f2, "1,y,y+1,y^3+y").unwrap(),
        )
        .unwrap()
    }

    fn fmt<R: CoeffRing>(s: &DigitSystem<R>, v: &[QuotElem<R::Elem>]) -> Vec<String> {
        v.iter().map(|e| s.quot().format(e)).collect()
    }

    #[test]
    fn validation_errors() {
        let err = validate_system(
            Integers,
            parse_poly(&Integers, "x-1").unwrap(),
            &parse_poly_list(&Integers, "0").unwrap(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("degenerate: |N|=1"), "{err}");

        let err = validate_system(
            Integers,
            parse_poly(&Integers, "x+5").unwrap(),
            &parse_poly_list(&Integers, "0,1,2,3,5").unwrap(),
        )
        .unwrap_err();
        match err {
            Error::InvalidSystem(v) => {
                assert!(v.iter().any(|x| matches!(x, Violation::DuplicateResidue { residue, .. } if residue == "0")));
                assert!(v.iter().any(|x| matches!(x, Violation::MissingResidues { missing } if missing == &["4".to_string()])));
            }
            other => panic!("{other:?}"),
        }
        let err = validate_system(
            Integers,
            parse_poly(&Integers, "x+3").unwrap(),
            &parse_poly_list(&Integers, "0,1").unwrap(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidSystem(ref v) if v.iter().any(|x| matches!(x, Violation::WrongDigitCount { .. }))));
    }

    #[test]
    fn example_one_orbit() {
        let s = zsys("3x^2-2x+5", "0,1,2,3,4");
        let q = s.quot();
        let m1 = q.constant(BigInt::from(-1));
        assert_eq!(q.format(s.digit_of(&m1)), "4");
        let t1 = s.step(&m1);
        assert_eq!(q.format(&t1), "3*X - 2");
        let t2 = s.step(&t1);
        assert_eq!(q.format(&t2), "3*X + 1");
        let t3 = s.step(&t2);
        assert_eq!(q.format(&t3), "3");
        assert!(s.step(&t3).is_zero());
        let seq = s.digit_sequence(&m1, 100);
        assert_eq!(fmt(&s, &seq.digits), ["4", "3", "1", "3"]);
        assert_eq!(seq.class, SequenceClass::Finite(4));
        assert!(s.step(&q.zero()).is_zero());
        for e in s.digits() {
            assert_eq!(s.digit_of(e), e);
        }
    }

    #[test]
    fn expansions() {
        let s = zsys("x+2", "0,1");
        let three = s.quot().constant(BigInt::from(3));
        let e = s.expand(&three, 100).unwrap();
        assert_eq!(fmt(&s, &e.digits), ["1", "1", "1"]);
        assert_eq!(s.evaluate(&e.digits), three);
        assert!(s.expand(&s.quot().zero(), 1).unwrap().digits.is_empty());
        assert!(s.evaluate(&[]).is_zero());

        let s = zsys("3x^2-2x+5", "-2,-1,0,1,2");
        let a = s.quot().parse("-X^2").unwrap();
        let seq = s.digit_sequence(&a, 100);
        assert_eq!(fmt(&s, &seq.digits), ["0", "0", "-1"]);
        assert_eq!(seq.class, SequenceClass::Finite(3));
    }

    #[test]
    fn non_finite_orbit_is_proven() {
        let s = zsys("3x+2", "0,1");
        let three = s.quot().constant(BigInt::from(3));
        assert!(matches!(
            s.expand(&three, 1000),
            Err(ExpandFailure::ProvenNonFinite { .. }) | Err(ExpandFailure::UnknownAtCap(_))
        ));
        let s = zsys("3x^2-2x+5", "-2,-1,0,1,2");
        let rep = s.periodic_set(&[s.quot().parse("X").unwrap()], 1000);
        assert!(rep.complete);
    }

    #[test]
    fn example_two_zero_cycle() {
        let s = example2();
        let q = s.quot();
        assert_eq!(q.format(s.digit_of(&q.zero())), "y^3+y");
        assert_eq!(q.format(&s.step(&q.zero())), "(y^2+y)*X + y^2");
        let seq = s.digit_sequence(&q.zero(), 100);
        assert_eq!(
            seq.class,
            SequenceClass::EventuallyPeriodic {
                preperiod: 0,
                period: 5
            }
        );
        match s.zero_cycle(100) {
            ZeroCycleResult::Found(z) => {
                assert_eq!(fmt(&s, &z.digits), ["y^3+y", "1", "1", "1", "y+1"]);
                assert!(s.evaluate(&z.digits).is_zero());
            }
            other => panic!("{other:?}"),
        }
        let rep = s.periodic_set(&[q.zero()], 100);
        assert_eq!(rep.orbits.len(), 1);
        assert_eq!(
            fmt(&s, &rep.orbits[0]),
            ["0", "(y^2+y)*X + y^2", "(y+1)*X + y^2", "(y+1)*X + 1", "y+1"]
        );
        assert!(rep.contains_zero);
    }

    #[test]
    fn zero_digit_gives_trivial_cycle() {
        let s = zsys("3x^2-2x+5", "0,1,2,3,4");
        match s.zero_cycle(10) {
            ZeroCycleResult::Found(z) => assert_eq!(z.period(), 1),
            other => panic!("{other:?}"),
        }
        let rep = s.periodic_set(&[s.quot().zero()], 10);
        assert_eq!(rep.orbits, vec![vec![s.quot().zero()]]);
    }
}
