//! Digit systems over `F_p[y][x]/(P)`.
//!
//! With the canonical digits `{q : deg q < deg p_0}` the expansion
//! properties are decided by degrees alone. Other digit sets are reduced to
//! the canonical one through a zero cycle: every zero digit of a canonical
//! expansion is absorbed by adding the zero cycle at its position, which is
//! tracked by a window map `Phi` on the most significant digits.

use std::collections::{HashMap, HashSet};

use crate::digits::{DigitSystem, ExpandFailure, Expansion, ZeroCycleResult};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quotient::QuotElem;
use crate::rings::{CoeffRing, FpPoly, FpPolyRing};
use crate::witness::Answer;

/// Largest window space explored by [`prove_fep_via_zero_cycle`].
pub const DEFAULT_WINDOW_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FfCriterion {
    pub fep: bool,
    pub pep: bool,
    /// `deg p_0`.
    pub delta: usize,
    /// `max deg p_i` over `i >= 1` with `p_i != 0`.
    pub mu: Option<usize>,
}

/// FEP iff `max deg p_i < deg p_0`, PEP iff `max deg p_i <= deg p_0`, for
/// the canonical digits.
pub fn ff_criterion(p: &Poly<FpPoly>) -> Result<FfCriterion> {
    let c = p.coeffs();
    if c.len() < 2 {
        return Err(Error::InvalidModulus("degree must be at least 1".into()));
    }
    let delta = match c[0].degree() {
        None => return Err(Error::InvalidModulus("constant coefficient p_0 is zero".into())),
        Some(0) => return Err(Error::InvalidModulus("constant coefficient p_0 is a unit".into())),
        Some(d) => d,
    };
    let mu = c[1..].iter().filter_map(FpPoly::degree).max();
    Ok(FfCriterion {
        fep: mu.is_none_or(|m| m < delta),
        pep: mu.is_none_or(|m| m <= delta),
        delta,
        mu,
    })
}

/// All polynomials of degree below `deg p_0`, sorted.
pub fn canonical_ff_digits(ring: &FpPolyRing, p: &Poly<FpPoly>) -> Result<Vec<FpPoly>> {
    let delta = ff_criterion(p)?.delta;
    let mut digits = ring
        .degree_ball(delta as u32 - 1)
        .expect("F_p[y] has degree balls");
    digits.sort();
    Ok(digits)
}

/// The `l` most significant digits `(c_1, ..., c_l)` under rewriting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindowState {
    pub window: Vec<FpPoly>,
}

impl WindowState {
    pub fn is_zero(&self) -> bool {
        self.window.iter().all(FpPoly::is_zero)
    }
}

/// A rewriting step that leaves the alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiViolation {
    /// An entry of the next window is outside `N`, `N'` and 0.
    Alphabet { position: usize, value: FpPoly },
    /// The discarded digit is not in `N`.
    Emitted { value: FpPoly },
}

/// `Phi` for a fixed zero cycle `(z_0, ..., z_l)` of constant digits.
#[derive(Debug, Clone)]
pub struct PhiMap {
    ring: FpPolyRing,
    zero_cycle: Vec<FpPoly>,
    target: HashSet<FpPoly>,
    alphabet: HashSet<FpPoly>,
}

impl PhiMap {
    /// `target` is `N`, `auxiliary` is `N'`.
    pub fn new(
        ring: FpPolyRing,
        zero_cycle: Vec<FpPoly>,
        target: &[FpPoly],
        auxiliary: &[FpPoly],
    ) -> Result<Self> {
        if zero_cycle.len() < 2 {
            return Err(Error::Precondition(
                "the window map needs a zero cycle of length at least 2".into(),
            ));
        }
        let target: HashSet<FpPoly> = target.iter().cloned().collect();
        let mut alphabet: HashSet<FpPoly> = target.iter().chain(auxiliary).cloned().collect();
        alphabet.insert(FpPoly::zero());
        Ok(PhiMap {
            ring,
            zero_cycle,
            target,
            alphabet,
        })
    }

    /// Window length, the zero period minus one.
    pub fn len(&self) -> usize {
        self.zero_cycle.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn zero_cycle(&self) -> &[FpPoly] {
        &self.zero_cycle
    }

    /// `(c_2, ..., c_l, 0)` emitting `c_1` if `c_1 != 0`, otherwise
    /// `(c_2 + z_1, ..., c_l + z_(l-1), z_l)` emitting `z_0`.
    pub fn step(
        &self,
        state: &WindowState,
    ) -> std::result::Result<(WindowState, FpPoly), PhiViolation> {
        let c = &state.window;
        let l = self.len();
        assert_eq!(c.len(), l, "window length");
        let (window, emitted) = if !c[0].is_zero() {
            let mut w = c[1..].to_vec();
            w.push(FpPoly::zero());
            (w, c[0].clone())
        } else {
            let mut w: Vec<FpPoly> = (1..l)
                .map(|j| self.ring.add(&c[j], &self.zero_cycle[j]))
                .collect();
            w.push(self.zero_cycle[l].clone());
            (w, self.zero_cycle[0].clone())
        };
        if !self.target.contains(&emitted) {
            return Err(PhiViolation::Emitted { value: emitted });
        }
        if let Some(position) = window.iter().position(|v| !self.alphabet.contains(v)) {
            return Err(PhiViolation::Alphabet {
                position,
                value: window[position].clone(),
            });
        }
        Ok((WindowState { window }, emitted))
    }

    /// The states visited from `start` up to the all-zero window, at most
    /// `cap` steps.
    pub fn chain(
        &self,
        start: WindowState,
        cap: usize,
    ) -> std::result::Result<Vec<WindowState>, PhiViolation> {
        let mut out = vec![start];
        while !out.last().expect("nonempty").is_zero() && out.len() <= cap {
            let (next, _) = self.step(out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }
}

/// `Phi` applied once with the zero cycle of `sys`.
pub fn phi_window_map(
    sys: &DigitSystem<FpPolyRing>,
    zero_cycle: &[FpPoly],
    auxiliary: &[FpPoly],
    state: &WindowState,
) -> Result<std::result::Result<(WindowState, FpPoly), PhiViolation>> {
    let target = constant_digits(sys)?;
    let phi = PhiMap::new(*sys.ring(), zero_cycle.to_vec(), &target, auxiliary)?;
    if state.window.len() != phi.len() {
        return Err(Error::Dimension {
            expected: phi.len(),
            found: state.window.len(),
        });
    }
    Ok(phi.step(state))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowFate {
    /// Reaches the all-zero window in this many steps.
    Zero(usize),
    /// Enters a cycle of nonzero windows.
    Cycle,
    /// Leaves the alphabet.
    Escape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiReport {
    /// `Yes`, or `Unknown` when the method does not apply or fails; the
    /// method never disproves the FEP.
    pub answer: Answer,
    pub zero_cycle: Vec<FpPoly>,
    /// Fate of every window over `N'`, sorted by window.
    pub reach: Vec<(WindowState, WindowFate)>,
    pub diagnosis: Option<String>,
}

fn constant_digits(sys: &DigitSystem<FpPolyRing>) -> Result<Vec<FpPoly>> {
    sys.constant_digits()
        .ok_or_else(|| Error::Unsupported("digits must lie in F_p[y]".into()))
}

/// The zero cycle of `sys` as constants.
fn constant_zero_cycle(sys: &DigitSystem<FpPolyRing>, cap: usize) -> Result<Vec<FpPoly>> {
    match sys.zero_cycle(cap) {
        ZeroCycleResult::Found(z) => z
            .digits
            .iter()
            .map(|e| e.rep().is_constant().then(|| e.rep().coeff(sys.ring(), 0)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Unsupported("zero cycle digits must lie in F_p[y]".into())),
        ZeroCycleResult::NoZeroCycle { .. } => {
            Err(Error::Precondition("0 does not lie on a cycle".into()))
        }
        ZeroCycleResult::UnknownAtCap(c) => Err(Error::Precondition(format!(
            "zero cycle not found within {c} steps"
        ))),
    }
}

fn unknown(zero_cycle: Vec<FpPoly>, diagnosis: String) -> PhiReport {
    PhiReport {
        answer: Answer::Unknown,
        zero_cycle,
        reach: Vec::new(),
        diagnosis: Some(diagnosis),
    }
}

/// Checks that `aux` uses the canonical digits and has the FEP.
fn check_auxiliary(
    sys: &DigitSystem<FpPolyRing>,
    aux: &DigitSystem<FpPolyRing>,
) -> std::result::Result<Vec<FpPoly>, String> {
    if sys.quot().modulus() != aux.quot().modulus() {
        return Err("target and auxiliary systems have different moduli".into());
    }
    let canonical = canonical_ff_digits(aux.ring(), aux.quot().modulus()).map_err(|e| e.to_string())?;
    let mut digits = aux.constant_digits().ok_or("auxiliary digits must be constant")?;
    digits.sort();
    if digits != canonical {
        return Err("auxiliary digits are not the canonical digit set".into());
    }
    let crit = ff_criterion(aux.quot().modulus()).map_err(|e| e.to_string())?;
    if !crit.fep {
        return Err("auxiliary system does not have the FEP".into());
    }
    Ok(digits)
}

/// Proves the FEP of `sys` from the FEP of the canonical system `aux` by
/// iterating `Phi` on every window over `N'`.
pub fn prove_fep_via_zero_cycle(
    sys: &DigitSystem<FpPolyRing>,
    aux: &DigitSystem<FpPolyRing>,
    cap: usize,
) -> Result<PhiReport> {
    let target = constant_digits(sys)?;
    let aux_digits = match check_auxiliary(sys, aux) {
        Ok(d) => d,
        Err(msg) => return Ok(unknown(Vec::new(), msg)),
    };
    let target_set: HashSet<&FpPoly> = target.iter().collect();
    if aux_digits.iter().all(|d| target_set.contains(d)) {
        // every canonical expansion already uses digits from N
        return Ok(PhiReport {
            answer: Answer::Yes,
            zero_cycle: Vec::new(),
            reach: Vec::new(),
            diagnosis: None,
        });
    }
    let zero_cycle = match constant_zero_cycle(sys, cap) {
        Ok(z) => z,
        Err(e) => return Ok(unknown(Vec::new(), e.to_string())),
    };
    let phi = match PhiMap::new(*sys.ring(), zero_cycle.clone(), &target, &aux_digits) {
        Ok(phi) => phi,
        Err(e) => return Ok(unknown(zero_cycle, e.to_string())),
    };
    let l = phi.len();
    let total = (aux_digits.len() as f64).powi(l as i32);
    if total > cap as f64 {
        return Ok(unknown(
            zero_cycle,
            format!("{total} windows exceed the cap of {cap}"),
        ));
    }

    let mut fates: HashMap<WindowState, WindowFate> = HashMap::new();
    let mut idx = vec![0usize; l];
    let mut starts = Vec::new();
    loop {
        starts.push(WindowState {
            window: idx.iter().map(|&i| aux_digits[i].clone()).collect(),
        });
        let mut j = 0;
        while j < l && idx[j] + 1 == aux_digits.len() {
            idx[j] = 0;
            j += 1;
        }
        if j == l {
            break;
        }
        idx[j] += 1;
    }
    let mut diagnosis = None;
    for start in &starts {
        let mut path: Vec<WindowState> = Vec::new();
        let mut on_path: HashSet<WindowState> = HashSet::new();
        let mut cur = start.clone();
        let end = loop {
            if let Some(&f) = fates.get(&cur) {
                break f;
            }
            if cur.is_zero() {
                fates.insert(cur.clone(), WindowFate::Zero(0));
                break WindowFate::Zero(0);
            }
            if !on_path.insert(cur.clone()) {
                diagnosis.get_or_insert_with(|| format!("Phi cycles through {:?}", cur.window));
                break WindowFate::Cycle;
            }
            match phi.step(&cur) {
                Ok((next, _)) => path.push(std::mem::replace(&mut cur, next)),
                Err(v) => {
                    diagnosis.get_or_insert_with(|| format!("{v:?} from {:?}", cur.window));
                    path.push(cur.clone());
                    break WindowFate::Escape;
                }
            }
        };
        let n = path.len();
        for (i, s) in path.into_iter().enumerate() {
            let f = match end {
                WindowFate::Zero(k) => WindowFate::Zero(k + n - i),
                other => other,
            };
            fates.entry(s).or_insert(f);
        }
    }
    let mut reach: Vec<(WindowState, WindowFate)> =
        starts.into_iter().map(|s| (fates[&s], s)).map(|(f, s)| (s, f)).collect();
    reach.sort_by(|a, b| a.0.cmp(&b.0));
    let all_zero = reach.iter().all(|(_, f)| matches!(f, WindowFate::Zero(_)));
    Ok(PhiReport {
        answer: if all_zero { Answer::Yes } else { Answer::Unknown },
        zero_cycle,
        reach,
        diagnosis,
    })
}

/// Rewrites the canonical expansion of `a` into one over `N`: while some
/// digit is 0, add the zero cycle at the least such position.
pub fn convert_expansion(
    sys: &DigitSystem<FpPolyRing>,
    aux: &DigitSystem<FpPolyRing>,
    a: &QuotElem<FpPoly>,
    cap: usize,
) -> Result<std::result::Result<Expansion<FpPoly>, ExpandFailure>> {
    convert_with_trace(sys, aux, a, cap, |_, _| {})
}

/// [`convert_expansion`], reporting `(i, digits)` before each rewrite.
fn convert_with_trace(
    sys: &DigitSystem<FpPolyRing>,
    aux: &DigitSystem<FpPolyRing>,
    a: &QuotElem<FpPoly>,
    cap: usize,
    mut trace: impl FnMut(usize, &[FpPoly]),
) -> Result<std::result::Result<Expansion<FpPoly>, ExpandFailure>> {
    let ring = *sys.ring();
    if sys.quot().modulus() != aux.quot().modulus() {
        let ring = sys.ring();
        return Err(Error::RingMismatch(
            sys.quot().modulus().format(ring, "x"),
            aux.quot().modulus().format(ring, "x"),
        ));
    }
    let target: HashSet<FpPoly> = constant_digits(sys)?.into_iter().collect();
    let expansion = match aux.expand(a, cap) {
        Ok(e) => e,
        Err(f) => return Ok(Err(f)),
    };
    let mut b: Vec<FpPoly> = expansion
        .digits
        .iter()
        .map(|e| e.rep().coeff(&ring, 0))
        .collect();
    let zero_cycle = if b.iter().any(FpPoly::is_zero) && !target.contains(&FpPoly::zero()) {
        constant_zero_cycle(sys, cap)?
    } else {
        Vec::new()
    };
    let mut rounds = 0;
    loop {
        while b.last().is_some_and(FpPoly::is_zero) {
            b.pop();
        }
        let Some(i) = b.iter().position(|c| c.is_zero() && !target.contains(c)) else {
            break;
        };
        if rounds == cap {
            return Ok(Err(ExpandFailure::UnknownAtCap(cap)));
        }
        trace(i, &b);
        if b.len() < i + zero_cycle.len() {
            b.resize(i + zero_cycle.len(), FpPoly::zero());
        }
        for (j, z) in zero_cycle.iter().enumerate() {
            b[i + j] = ring.add(&b[i + j], z);
        }
        rounds += 1;
    }
    if let Some(bad) = b.iter().find(|c| !target.contains(c)) {
        return Err(Error::Precondition(format!(
            "rewriting produced the digit {}, which is not in N",
            ring.format(bad)
        )));
    }
    let digits: Vec<QuotElem<FpPoly>> = b.into_iter().map(|c| sys.quot().constant(c)).collect();
    if sys.evaluate(&digits) != *a {
        return Err(Error::Precondition("rewritten expansion does not evaluate to A".into()));
    }
    Ok(Ok(Expansion { digits }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::validate_system;
    use crate::parse::{parse_poly, parse_poly_list};
    use proptest::prelude::*;

    fn f2() -> FpPolyRing {
        FpPolyRing::new(2).unwrap()
    }

    const P: &str = "(y+1)x^2+y*x+(y^2+1)";

    fn system(ring: FpPolyRing, p: &str, digits: &str) -> DigitSystem<FpPolyRing> {
        validate_system(
            ring,
            parse_poly(&ring, p).unwrap(),
            &parse_poly_list(&ring, digits).unwrap(),
        )
        .unwrap()
    }

    fn example() -> (DigitSystem<FpPolyRing>, DigitSystem<FpPolyRing>) {
        (system(f2(), P, "1,y,y+1,y^3+y"), system(f2(), P, "0,1,y,y+1"))
    }

    fn w(s: &str) -> WindowState {
        WindowState {
            window: parse_poly_list(&f2(), s)
                .unwrap()
                .iter()
                .map(|c| c.coeff(&f2(), 0))
                .collect(),
        }
    }

    fn phi() -> PhiMap {
        let r = f2();
        let c = |s: &str| parse_poly_list(&r, s).unwrap().iter().map(|p| p.coeff(&r, 0)).collect::<Vec<_>>();
        PhiMap::new(r, c("y^3+y,1,1,1,y+1"), &c("1,y,y+1,y^3+y"), &c("0,1,y,y+1")).unwrap()
    }

    #[test]
    fn criterion() {
        let r = f2();
        let c = ff_criterion(&parse_poly(&r, P).unwrap()).unwrap();
        assert!(c.fep && c.pep);
        let c = ff_criterion(&parse_poly(&r, "y*x+y").unwrap()).unwrap();
        assert!(!c.fep && c.pep);
        let c = ff_criterion(&parse_poly(&r, "y^2*x+y").unwrap()).unwrap();
        assert!(!c.fep && !c.pep);
        assert!(ff_criterion(&parse_poly(&r, "y*x+1").unwrap()).is_err());
        assert!(ff_criterion(&parse_poly(&r, "y*x").unwrap()).is_err());
    }

    #[test]
    fn canonical_digits() {
        let r = f2();
        let d = canonical_ff_digits(&r, &parse_poly(&r, P).unwrap()).unwrap();
        assert_eq!(d.iter().map(|c| r.format(c)).collect::<Vec<_>>(), ["0", "1", "y", "y+1"]);
        let r3 = FpPolyRing::new(3).unwrap();
        let d = canonical_ff_digits(&r3, &parse_poly(&r3, "x+y").unwrap()).unwrap();
        assert_eq!(d.iter().map(|c| r3.format(c)).collect::<Vec<_>>(), ["0", "1", "2"]);
        let d = canonical_ff_digits(&r, &parse_poly(&r, "x+y^3+y").unwrap()).unwrap();
        assert_eq!(d.len(), 8);
    }

    #[test]
    fn window_map_examples() {
        let phi = phi();
        assert_eq!(phi.step(&w("1,0,y,1")).unwrap().0, w("0,y,1,0"));
        assert_eq!(phi.step(&w("0,y,1,0")).unwrap().0, w("y+1,0,1,y+1"));
        assert_eq!(phi.step(&w("0,0,0,0")).unwrap().0, w("1,1,1,y+1"));
        let (sys, aux) = example();
        let z = phi.zero_cycle().to_vec();
        let d = canonical_ff_digits(&f2(), aux.quot().modulus()).unwrap();
        let out = phi_window_map(&sys, &z, &d, &w("1,0,y,1")).unwrap().unwrap();
        assert_eq!(out, (w("0,y,1,0"), f2().constant(1)));
        assert!(phi_window_map(&sys, &z, &d, &w("1,0")).is_err());
    }

    #[test]
    fn paper_chain_has_eleven_steps() {
        let chain = phi().chain(w("1,0,y,1"), 100).unwrap();
        let want = [
            "1,0,y,1", "0,y,1,0", "y+1,0,1,y+1", "0,1,y+1,0", "0,y,1,y+1", "y+1,0,y,y+1",
            "0,y,y+1,0", "y+1,y,1,y+1", "y,1,y+1,0", "1,y+1,0,0", "y+1,0,0,0", "0,0,0,0",
        ];
        assert_eq!(chain, want.iter().map(|s| w(s)).collect::<Vec<_>>());
        assert_eq!(chain.len() - 1, 11);
    }

    #[test]
    fn proves_example_two() {
        let (sys, aux) = example();
        let report = prove_fep_via_zero_cycle(&sys, &aux, DEFAULT_WINDOW_CAP).unwrap();
        assert_eq!(report.answer, Answer::Yes, "{:?}", report.diagnosis);
        assert_eq!(report.reach.len(), 256);
        let start = w("1,0,y,1");
        let fate = report.reach.iter().find(|(s, _)| *s == start).unwrap().1;
        assert_eq!(fate, WindowFate::Zero(11));
    }

    #[test]
    fn trivial_and_failing_cases() {
        let (sys, aux) = example();
        let r = prove_fep_via_zero_cycle(&aux, &aux, 1000).unwrap();
        assert_eq!(r.answer, Answer::Yes);
        // the auxiliary system must be canonical
        let r = prove_fep_via_zero_cycle(&aux, &sys, 1000).unwrap();
        assert_eq!(r.answer, Answer::Unknown);
        // y*x + y lacks the FEP even with canonical digits
        let s = system(f2(), "y*x+y", "1,y");
        let a = system(f2(), "y*x+y", "0,1");
        let r = prove_fep_via_zero_cycle(&s, &a, 1000).unwrap();
        assert_eq!(r.answer, Answer::Unknown);
    }

    #[test]
    fn conversions() {
        let (sys, aux) = example();
        let q = sys.quot();
        let e = convert_expansion(&sys, &aux, &q.zero(), 1000).unwrap().unwrap();
        assert!(e.digits.is_empty());
        // all canonical digits nonzero: unchanged
        let a = q.parse("1+y*X").unwrap();
        let e = convert_expansion(&sys, &aux, &a, 1000).unwrap().unwrap();
        assert_eq!(e, aux.expand(&a, 1000).unwrap());
        let x = q.x();
        let e = convert_expansion(&sys, &aux, &x, 1000).unwrap().unwrap();
        assert_eq!(sys.evaluate(&e.digits), x);
        assert!(e.digits.iter().all(|d| sys.digits().contains(d)));
    }

    proptest! {
        #[test]
        fn converted_expansions_use_target_digits(c0 in 0u32..16, c1 in 0u32..16, c2 in 0u32..16) {
            let (sys, aux) = example();
            let r = f2();
            let bits = |n: u32| FpPoly::from_coeffs((0..4).map(|i| (n >> i) & 1).collect());
            let f = Poly::new(&r, vec![bits(c0), bits(c1), bits(c2)]);
            let a = sys.quot().normalize(&f);
            let mut prefix_ok = true;
            let e = convert_with_trace(&sys, &aux, &a, 10_000, |i, b| {
                prefix_ok &= b[..i].iter().all(|c| sys.digits().contains(&sys.quot().constant(c.clone())));
            })
            .unwrap()
            .unwrap();
            prop_assert!(prefix_ok);
            prop_assert_eq!(sys.evaluate(&e.digits), a);
            prop_assert!(e.digits.iter().all(|d| sys.digits().contains(d)));
        }
    }
}
