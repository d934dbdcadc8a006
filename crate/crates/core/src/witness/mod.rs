//! Witness sets and the decision procedures built on them.
//!
//! A witness set `V` contains additive generators of a module `S` (and
//! their negatives) and is closed under `A -> T(A + e)`. If every element of
//! `V` has a finite expansion, so does every element of `S`. The closure is
//! computed from a seed by bulk-synchronous rounds; a stabilised closure is
//! an exact, checkable certificate.
//!
//! `F_p[y]` has no finite set of additive generators. There the procedures
//! use degree bounds on Brunotte coordinates instead.

mod expanding;
mod graph;

use std::collections::{HashMap, HashSet};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::digits::{DigitSystem, DEFAULT_STEP_CAP};
use crate::error::{Error, Result};
use crate::quotient::QuotElem;
use crate::rings::{CoeffRing, EuclidValue};

pub use expanding::{expanding_check, ExpandingClass, ExpandingReport, DEFAULT_MARGIN};
pub use graph::{orbit_graph, OrbitGraph};

/// Default maximal size of a witness closure.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// Which generating set seeds the closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedMode {
    /// `+-g w_i` for the Brunotte basis; needs digits in `E`.
    Brunotte,
    /// `+-g X^j` for `j < k`.
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    pub closure_cap: usize,
    pub step_cap: usize,
    /// `None` picks Brunotte mode when the digits allow it.
    pub mode: Option<SeedMode>,
    /// Orbit budget for the cycle search used when no closure applies.
    pub search_steps: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            closure_cap: DEFAULT_CLOSURE_CAP,
            step_cap: DEFAULT_STEP_CAP,
            mode: None,
            search_steps: 2_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessClosure<T> {
    /// Sorted.
    pub elements: Vec<QuotElem<T>>,
    pub seed: Vec<QuotElem<T>>,
    pub stabilized: bool,
    pub rounds: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck<T> {
    /// Generators `g` with `g` or `-g` absent.
    pub missing_generators: Vec<QuotElem<T>>,
    /// `(v, e, T(v + e))` with the image outside the set.
    pub closure_violations: Vec<(QuotElem<T>, QuotElem<T>, QuotElem<T>)>,
}

impl<T> WitnessCheck<T> {
    pub fn is_valid(&self) -> bool {
        self.missing_generators.is_empty() && self.closure_violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Fep,
    Pep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate<T> {
    /// Every witness reaches 0; `max_steps` is the longest such orbit.
    AllReachZero { max_steps: usize },
    /// A `T`-cycle avoiding 0, starting at its least element.
    Cycle(Vec<QuotElem<T>>),
    /// Constant digits with `g(e) < g(p_0)` and `g(p_d) >= g(p_0)`.
    EuclideanNecessary { g_pd: String, g_p0: String },
    /// The closure is finite, so every orbit is eventually periodic.
    StabilizedClosure { size: usize },
    /// Brunotte coordinates of degree at most `bound` form a finite set
    /// that every orbit enters and never leaves.
    DegreeBound { bound: u32 },
    /// A budget ran out or no method applies.
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<T> {
    pub property: Property,
    pub answer: Answer,
    pub witnesses: usize,
    pub stabilized: bool,
    pub certificate: Certificate<T>,
}

/// Outcome of the necessary condition for the FEP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NecessaryCheck {
    /// The FEP fails: only 0 in the Brunotte module expands finitely.
    Fails { g_pd: EuclidValue, g_p0: EuclidValue },
    Inconclusive(String),
}

/// The seed set for [`witness_closure`].
pub fn seed_witnesses<R: CoeffRing>(
    sys: &DigitSystem<R>,
    mode: SeedMode,
) -> Result<Vec<QuotElem<R::Elem>>> {
    let quot = sys.quot();
    let gens = sys.ring().additive_generators().ok_or_else(|| {
        Error::Unsupported(format!(
            "{} has no finite set of additive generators",
            sys.ring().descriptor()
        ))
    })?;
    let basis: Vec<QuotElem<R::Elem>> = match mode {
        SeedMode::Brunotte => {
            if !sys.digits_constant() {
                return Err(Error::Precondition(
                    "brunotte mode needs every digit to lie in E".into(),
                ));
            }
            quot.brunotte_basis().w.clone()
        }
        SeedMode::Power => (0..sys.k()).map(|j| quot.x_pow(j)).collect(),
    };
    let mut out = Vec::new();
    for b in &basis {
        for g in &gens {
            let v = quot.scale(b, g);
            out.push(quot.neg(&v));
            out.push(v);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `N` together with 0, deduplicated.
fn shifts<R: CoeffRing>(sys: &DigitSystem<R>) -> Vec<QuotElem<R::Elem>> {
    let mut e: Vec<_> = sys.digits().to_vec();
    if !sys.contains_zero() {
        e.push(QuotElem::zero());
    }
    e
}

/// Least superset of `seed` closed under `A -> T(A + e)` for `e` in
/// `N` and 0, unless it outgrows `cap`.
pub fn witness_closure<R: CoeffRing>(
    sys: &DigitSystem<R>,
    seed: &[QuotElem<R::Elem>],
    cap: usize,
) -> WitnessClosure<R::Elem> {
    let quot = sys.quot();
    let shifts = shifts(sys);
    let mut set: HashSet<QuotElem<R::Elem>> = seed.iter().cloned().collect();
    let mut frontier: Vec<_> = set.iter().cloned().collect();
    frontier.sort();
    let mut rounds = 0;
    let mut stabilized = set.len() <= cap;
    while stabilized && !frontier.is_empty() {
        rounds += 1;
        let mut images: Vec<QuotElem<R::Elem>> = frontier
            .par_iter()
            .flat_map_iter(|v| shifts.iter().map(move |e| sys.step(&quot.add(v, e))))
            .filter(|a| !set.contains(a))
            .collect();
        images.sort();
        images.dedup();
        set.extend(images.iter().cloned());
        if set.len() > cap {
            stabilized = false;
        }
        frontier = images;
    }
    let mut elements: Vec<_> = set.into_iter().collect();
    elements.sort();
    let mut seed = seed.to_vec();
    seed.sort();
    seed.dedup();
    WitnessClosure {
        elements,
        seed,
        stabilized,
        rounds,
    }
}

/// Checks that `v` contains `+-g` for each generator and is closed under
/// `A -> T(A + e)` for `e` in `N`.
pub fn verify_witness_set<R: CoeffRing>(
    sys: &DigitSystem<R>,
    v: &[QuotElem<R::Elem>],
    generators: &[QuotElem<R::Elem>],
) -> WitnessCheck<R::Elem> {
    let quot = sys.quot();
    let set: HashSet<&QuotElem<R::Elem>> = v.iter().collect();
    let missing_generators = generators
        .iter()
        .filter(|g| !set.contains(g) || !set.contains(&quot.neg(g)))
        .cloned()
        .collect();
    let mut closure_violations = Vec::new();
    for a in v {
        for e in sys.digits() {
            let image = sys.step(&quot.add(a, e));
            if !set.contains(&image) {
                closure_violations.push((a.clone(), e.clone(), image));
            }
        }
    }
    WitnessCheck {
        missing_generators,
        closure_violations,
    }
}

/// Applies the necessary condition `g(p_d) < g(p_0)` when every digit is
/// constant with `g(e) < g(p_0)`.
pub fn euclidean_necessary_check<R: CoeffRing>(sys: &DigitSystem<R>) -> NecessaryCheck {
    let ring = sys.ring();
    let quot = sys.quot();
    let Some(digits) = sys.constant_digits() else {
        return NecessaryCheck::Inconclusive("some digit is not constant".into());
    };
    let g_p0 = ring.euclid_value(quot.p0());
    if let Some(e) = digits.iter().find(|e| ring.euclid_value(e) >= g_p0) {
        return NecessaryCheck::Inconclusive(format!(
            "digit {} has g(e) >= g(p_0)",
            ring.format(e)
        ));
    }
    let g_pd = ring.euclid_value(quot.pd());
    if g_pd >= g_p0 {
        NecessaryCheck::Fails { g_pd, g_p0 }
    } else {
        NecessaryCheck::Inconclusive("g(p_d) < g(p_0)".into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fate {
    Zero(usize),
    Cycle(usize),
    Unknown,
}

struct OrbitAnalysis<T> {
    fates: HashMap<QuotElem<T>, Fate>,
    cycles: Vec<Vec<QuotElem<T>>>,
}

/// Follows `T` from each start until 0, a known state, a new cycle or the
/// step budget.
fn analyze_orbits<R: CoeffRing>(
    sys: &DigitSystem<R>,
    starts: &[QuotElem<R::Elem>],
    step_cap: usize,
) -> OrbitAnalysis<R::Elem> {
    let mut fates: HashMap<QuotElem<R::Elem>, Fate> = HashMap::new();
    let mut cycles: Vec<Vec<QuotElem<R::Elem>>> = Vec::new();
    for start in starts {
        let mut path: Vec<QuotElem<R::Elem>> = Vec::new();
        let mut index: HashMap<QuotElem<R::Elem>, usize> = HashMap::new();
        let mut cur = start.clone();
        let end = loop {
            if let Some(&f) = fates.get(&cur) {
                break f;
            }
            if cur.is_zero() {
                fates.insert(cur.clone(), Fate::Zero(0));
                break Fate::Zero(0);
            }
            if let Some(&j) = index.get(&cur) {
                let id = cycles.len();
                let mut cycle = path[j..].to_vec();
                let m = (0..cycle.len())
                    .min_by(|&a, &b| cycle[a].cmp(&cycle[b]))
                    .expect("nonempty");
                cycle.rotate_left(m);
                cycles.push(cycle);
                break Fate::Cycle(id);
            }
            if path.len() >= step_cap {
                break Fate::Unknown;
            }
            index.insert(cur.clone(), path.len());
            let next = sys.step(&cur);
            path.push(std::mem::replace(&mut cur, next));
        };
        let n = path.len();
        for (i, a) in path.into_iter().enumerate() {
            let f = match end {
                Fate::Zero(k) => Fate::Zero(k + n - i),
                other => other,
            };
            fates.entry(a).or_insert(f);
        }
    }
    OrbitAnalysis { fates, cycles }
}

fn degree_of(v: &EuclidValue) -> Option<u32> {
    v.value().and_then(|d| d.to_u32())
}

/// Degree data for rings whose Euclidean value is a degree: `(delta, mu,
/// max digit degree)`, with `None` for the degree of 0.
fn degree_profile<R: CoeffRing>(sys: &DigitSystem<R>) -> Option<(u32, Option<u32>, Option<u32>)> {
    let ring = sys.ring();
    let quot = sys.quot();
    let digits = sys.constant_digits()?;
    let delta = degree_of(&ring.euclid_value(quot.p0()))?;
    let mu = (1..=quot.degree())
        .filter_map(|i| degree_of(&ring.euclid_value(&quot.p(i))))
        .max();
    let e = digits.iter().filter_map(|d| degree_of(&ring.euclid_value(d))).max();
    Some((delta, mu, e))
}

/// All `sum a_i w_i` with every coordinate of degree at most `bound`, or
/// `None` if there are more than `cap`.
fn coordinate_ball<R: CoeffRing>(
    sys: &DigitSystem<R>,
    bound: u32,
    cap: usize,
) -> Option<Vec<QuotElem<R::Elem>>> {
    let quot = sys.quot();
    let d = quot.degree();
    let ball = sys.ring().degree_ball(bound)?;
    let total = (ball.len() as f64).powi(d as i32);
    if total > cap as f64 {
        return None;
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; d];
    loop {
        let coords: Vec<_> = idx.iter().map(|&i| ball[i].clone()).collect();
        out.push(quot.from_brunotte_coords(&coords).expect("d coordinates"));
        let mut j = 0;
        while j < d && idx[j] + 1 == ball.len() {
            idx[j] = 0;
            j += 1;
        }
        if j == d {
            break;
        }
        idx[j] += 1;
    }
    out.sort();
    Some(out)
}

/// The witness closure `decide_fep` and `decide_pep` work from.
enum Witnesses<T> {
    Closure(WitnessClosure<T>),
    /// A finite, `T`-invariant, attracting set (degree rings).
    Ball { elements: Vec<QuotElem<T>>, bound: u32 },
    /// No witness construction applies; `seed` is only searched.
    SearchOnly { seed: Vec<QuotElem<T>>, reason: String },
}

fn build_witnesses<R: CoeffRing>(
    sys: &DigitSystem<R>,
    opts: &DecideOptions,
) -> Witnesses<R::Elem> {
    if sys.ring().additive_generators().is_some() {
        let mode = opts.mode.unwrap_or(if sys.digits_constant() {
            SeedMode::Brunotte
        } else {
            SeedMode::Power
        });
        return match seed_witnesses(sys, mode) {
            Ok(seed) => Witnesses::Closure(witness_closure(sys, &seed, opts.closure_cap)),
            Err(e) => Witnesses::SearchOnly {
                seed: Vec::new(),
                reason: e.to_string(),
            },
        };
    }
    let Some((delta, mu, e)) = degree_profile(sys) else {
        return Witnesses::SearchOnly {
            seed: sys.digits().to_vec(),
            reason: "digits are not constant".into(),
        };
    };
    let bound = e.map_or(0, |e| e.saturating_sub(delta));
    let contracting = mu.is_none_or(|m| m < delta);
    match coordinate_ball(sys, bound, opts.closure_cap) {
        Some(elements) if contracting => Witnesses::Ball { elements, bound },
        Some(elements) => Witnesses::SearchOnly {
            seed: elements,
            reason: "coefficient degrees do not contract".into(),
        },
        None => Witnesses::SearchOnly {
            seed: sys.digits().to_vec(),
            reason: "coordinate ball exceeds the closure cap".into(),
        },
    }
}

fn cycle_verdict<T: Clone + Ord>(
    property: Property,
    analysis: &OrbitAnalysis<T>,
    witnesses: usize,
    stabilized: bool,
) -> Option<Verdict<T>> {
    let first = analysis.cycles.iter().min()?;
    Some(Verdict {
        property,
        answer: Answer::No,
        witnesses,
        stabilized,
        certificate: Certificate::Cycle(first.clone()),
    })
}

fn unknown<T>(property: Property, witnesses: usize, stabilized: bool, reason: String) -> Verdict<T> {
    Verdict {
        property,
        answer: Answer::Unknown,
        witnesses,
        stabilized,
        certificate: Certificate::Inconclusive { reason },
    }
}

/// Decides the finite expansion property.
///
/// Yes needs a stabilised witness set whose elements all reach 0. No comes
/// with a `T`-cycle avoiding 0 or from the Euclidean necessary condition.
pub fn decide_fep<R: CoeffRing>(sys: &DigitSystem<R>, opts: &DecideOptions) -> Verdict<R::Elem> {
    let property = Property::Fep;
    if let NecessaryCheck::Fails { g_pd, g_p0 } = euclidean_necessary_check(sys) {
        return Verdict {
            property,
            answer: Answer::No,
            witnesses: 0,
            stabilized: false,
            certificate: Certificate::EuclideanNecessary {
                g_pd: g_pd.to_string(),
                g_p0: g_p0.to_string(),
            },
        };
    }
    let (elements, stabilized, step_cap, reason) = match build_witnesses(sys, opts) {
        Witnesses::Closure(c) => {
            let reason = format!("witness closure exceeded {} elements", opts.closure_cap);
            (c.elements, c.stabilized, opts.step_cap, reason)
        }
        Witnesses::Ball { elements, .. } => (elements, true, opts.step_cap, String::new()),
        Witnesses::SearchOnly { seed, reason } => (seed, false, opts.search_steps, reason),
    };
    let analysis = analyze_orbits(sys, &elements, step_cap);
    let n = elements.len();
    if let Some(v) = cycle_verdict(property, &analysis, n, stabilized) {
        return v;
    }
    if !stabilized {
        return unknown(property, n, false, reason);
    }
    let mut max_steps = 0;
    for a in &elements {
        match analysis.fates[a] {
            Fate::Zero(k) => max_steps = max_steps.max(k),
            _ => {
                return unknown(
                    property,
                    n,
                    true,
                    format!("orbit of {} exceeded {step_cap} steps", sys.quot().format(a)),
                )
            }
        }
    }
    Verdict {
        property,
        answer: Answer::Yes,
        witnesses: n,
        stabilized: true,
        certificate: Certificate::AllReachZero { max_steps },
    }
}

/// Decides the periodic expansion property. Never answers No.
pub fn decide_pep<R: CoeffRing>(sys: &DigitSystem<R>, opts: &DecideOptions) -> Verdict<R::Elem> {
    let property = Property::Pep;
    if sys.ring().additive_generators().is_none() {
        if let Some((delta, mu, e)) = degree_profile(sys) {
            if mu.is_none_or(|m| m <= delta) {
                return Verdict {
                    property,
                    answer: Answer::Yes,
                    witnesses: 0,
                    stabilized: true,
                    certificate: Certificate::DegreeBound {
                        bound: e.map_or(0, |e| e.saturating_sub(delta)),
                    },
                };
            }
        }
        return unknown(property, 0, false, "coefficient degrees grow".into());
    }
    match build_witnesses(sys, opts) {
        Witnesses::Closure(c) if c.stabilized => Verdict {
            property,
            answer: Answer::Yes,
            witnesses: c.elements.len(),
            stabilized: true,
            certificate: Certificate::StabilizedClosure {
                size: c.elements.len(),
            },
        },
        Witnesses::Closure(c) => unknown(
            property,
            c.elements.len(),
            false,
            format!("witness closure exceeded {} elements", opts.closure_cap),
        ),
        Witnesses::Ball { elements, bound } => Verdict {
            property,
            answer: Answer::Yes,
            witnesses: elements.len(),
            stabilized: true,
            certificate: Certificate::DegreeBound { bound },
        },
        Witnesses::SearchOnly { reason, .. } => unknown(property, 0, false, reason),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::validate_system;
    use crate::parse::{parse_poly, parse_poly_list};
    use crate::rings::{FpPolyRing, GaussianIntegers, Integers};

    fn zsys(p: &str, digits: &str) -> DigitSystem<Integers> {
        validate_system(
            Integers,
            parse_poly(&Integers, p).unwrap(),
            &parse_poly_list(&Integers, digits).unwrap(),
        )
        .unwrap()
    }

    fn gaussian() -> DigitSystem<GaussianIntegers> {
        let g = GaussianIntegers;
        validate_system(
            g,
            parse_poly(&g, "(1+i)x+(1+2i)").unwrap(),
            &parse_poly_list(&g, "0,1,2,3,4").unwrap(),
        )
        .unwrap()
    }

    fn labels<R: CoeffRing>(s: &DigitSystem<R>, v: &[QuotElem<R::Elem>]) -> Vec<String> {
        let mut out: Vec<_> = v.iter().map(|e| s.quot().format(e)).collect();
        out.sort();
        out
    }

    #[test]
    fn seeds() {
        let s = gaussian();
        let seed = seed_witnesses(&s, SeedMode::Brunotte).unwrap();
        assert_eq!(labels(&s, &seed), ["-1+i", "-1-i", "1+i", "1-i"]);
        let s = zsys("3x^2-2x+5", "0,1,2,3,4");
        let seed = seed_witnesses(&s, SeedMode::Brunotte).unwrap();
        assert_eq!(labels(&s, &seed), ["-3", "-3*X + 2", "3", "3*X - 2"]);
        let seed = seed_witnesses(&s, SeedMode::Power).unwrap();
        assert_eq!(labels(&s, &seed), ["-1", "-X", "1", "X"]);
        let s = zsys("x+3", "0,1,2");
        assert_eq!(labels(&s, &seed_witnesses(&s, SeedMode::Brunotte).unwrap()), ["-1", "1"]);
        let s = zsys("x^2+3", "0,1,x+2");
        assert!(seed_witnesses(&s, SeedMode::Brunotte).is_err());
    }

    #[test]
    fn gaussian_closure_matches_known_set() {
        let s = gaussian();
        let seed = seed_witnesses(&s, SeedMode::Brunotte).unwrap();
        let c = witness_closure(&s, &seed, 1000);
        assert!(c.stabilized);
        assert_eq!(c.elements.len(), 13);
        assert!(verify_witness_set(&s, &c.elements, &seed).is_valid());
        let v = decide_fep(&s, &DecideOptions::default());
        assert_eq!(v.answer, Answer::Yes);
        assert_eq!(decide_pep(&s, &DecideOptions::default()).answer, Answer::Yes);
    }

    #[test]
    fn example_one_verdicts() {
        let opts = DecideOptions::default();
        let s = zsys("3x^2-2x+5", "0,1,2,3,4");
        assert_eq!(decide_fep(&s, &opts).answer, Answer::Yes);
        let s = zsys("3x^2-2x+5", "-2,-1,0,1,2");
        let v = decide_fep(&s, &opts);
        assert_eq!(v.answer, Answer::No);
        match &v.certificate {
            Certificate::Cycle(c) => {
                assert!(!c.is_empty());
                assert!(c.iter().all(|a| !a.is_zero()));
                let mut a = c[0].clone();
                for _ in 0..c.len() {
                    a = s.step(&a);
                }
                assert_eq!(a, c[0]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(decide_pep(&s, &opts).answer, Answer::Yes);
    }

    #[test]
    fn necessary_condition() {
        let s = zsys("2x+3", "0,1,2");
        assert!(matches!(euclidean_necessary_check(&s), NecessaryCheck::Inconclusive(_)));
        let s = zsys("3x+2", "0,1");
        assert!(matches!(euclidean_necessary_check(&s), NecessaryCheck::Fails { .. }));
        assert_eq!(decide_fep(&s, &DecideOptions::default()).answer, Answer::No);
        let w0 = s.quot().brunotte_basis().w[0].clone();
        assert!(s.expand(&w0, 10_000).is_err());
    }

    #[test]
    fn finite_field_example() {
        let f2 = FpPolyRing::new(2).unwrap();
        let s = validate_system(
            f2,
            parse_poly(&f2, "(y+1)x^2+y*x+(y^2+1)").unwrap(),
            &parse_poly_list(&f2, "1,y,y+1,y^3+y").unwrap(),
        )
        .unwrap();
        assert!(matches!(euclidean_necessary_check(&s), NecessaryCheck::Inconclusive(_)));
        assert_eq!(decide_fep(&s, &DecideOptions::default()).answer, Answer::Yes);
        assert_eq!(decide_pep(&s, &DecideOptions::default()).answer, Answer::Yes);

        let s = validate_system(
            f2,
            parse_poly(&f2, "y*x+y").unwrap(),
            &parse_poly_list(&f2, "0,1").unwrap(),
        )
        .unwrap();
        assert_eq!(decide_fep(&s, &DecideOptions::default()).answer, Answer::No);
        assert_eq!(decide_pep(&s, &DecideOptions::default()).answer, Answer::Yes);
    }

    #[test]
    fn verification_reports_violations() {
        let s = gaussian();
        let seed = seed_witnesses(&s, SeedMode::Brunotte).unwrap();
        let c = witness_closure(&s, &seed, 1000);
        let check = verify_witness_set(&s, &[], &seed);
        assert_eq!(check.missing_generators.len(), 4);
        let target = s.quot().parse("-4+2i").unwrap();
        let smaller: Vec<_> = c.elements.iter().filter(|a| **a != target).cloned().collect();
        let check = verify_witness_set(&s, &smaller, &seed);
        let three_minus_i = s.quot().parse("3-i").unwrap();
        assert!(check
            .closure_violations
            .iter()
            .any(|(v, _, img)| *v == three_minus_i && *img == target));
    }
}
