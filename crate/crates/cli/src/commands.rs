use std::fs;

use digitsys_core::digits::{validate_system, DigitSequence, DigitSystem, SequenceClass, ZeroCycleResult};
use digitsys_core::ffds::{
    canonical_ff_digits, convert_expansion, ff_criterion, prove_fep_via_zero_cycle, WindowFate,
    DEFAULT_WINDOW_CAP,
};
use digitsys_core::parse::{parse_poly, parse_poly_list, parse_rational, parse_rational_list};
use digitsys_core::product::{multi_product_digit_set, product_expand, Factor};
use digitsys_core::srs::{srs_classify, SrsParams};
use digitsys_core::witness::{
    decide_fep, decide_pep, orbit_graph, seed_witnesses, verify_witness_set, witness_closure,
    Answer, Certificate, DecideOptions, Property, SeedMode, Verdict,
};
use digitsys_core::{CoeffRing, Error, FpPolyRing, Poly, QuotElem, Result};
use serde_json::{json, Value};

use crate::report::{Report, Status, SystemInfo};

pub struct SystemSpec<'a> {
    pub poly: &'a str,
    pub digits: &'a str,
}

pub fn build_system<R: CoeffRing>(ring: R, spec: &SystemSpec) -> Result<DigitSystem<R>> {
    let p = parse_poly(&ring, spec.poly)?;
    let digits = parse_poly_list(&ring, spec.digits)?;
    validate_system(ring, p, &digits)
}

pub fn system_info<R: CoeffRing>(sys: &DigitSystem<R>) -> SystemInfo {
    SystemInfo {
        ring: sys.ring().descriptor().to_string(),
        poly: sys.quot().modulus().format(sys.ring(), "x"),
        digits: elements(sys, sys.digits()),
    }
}

fn elements<R: CoeffRing>(sys: &DigitSystem<R>, v: &[QuotElem<R::Elem>]) -> Vec<String> {
    v.iter().map(|e| sys.quot().format(e)).collect()
}

fn answer(a: Answer) -> &'static str {
    match a {
        Answer::Yes => "yes",
        Answer::No => "no",
        Answer::Unknown => "unknown",
    }
}

fn sequence_json<R: CoeffRing>(sys: &DigitSystem<R>, seq: &DigitSequence<R::Elem>) -> Value {
    let digits = elements(sys, &seq.digits);
    match seq.class {
        SequenceClass::Finite(n) => json!({ "digits": digits, "class": "finite", "steps": n }),
        SequenceClass::EventuallyPeriodic { preperiod, period } => json!({
            "digits": digits,
            "class": "eventually_periodic",
            "steps": seq.digits.len(),
            "preperiod": preperiod,
            "period": period,
        }),
        SequenceClass::UnknownAtCap(cap) => {
            json!({ "digits": digits, "class": "unknown", "steps": cap })
        }
    }
}

fn sequence_line<R: CoeffRing>(sys: &DigitSystem<R>, seq: &DigitSequence<R::Elem>) -> Vec<String> {
    let class = match seq.class {
        SequenceClass::Finite(n) => format!("finite ({n} steps)"),
        SequenceClass::EventuallyPeriodic { preperiod, period } => {
            format!("eventually periodic (preperiod {preperiod}, period {period})")
        }
        SequenceClass::UnknownAtCap(cap) => format!("unknown (cap of {cap} steps reached)"),
    };
    vec![
        format!("digits: {}", elements(sys, &seq.digits).join(", ")),
        format!("class: {class}"),
    ]
}

fn seq_status<T>(seq: &DigitSequence<T>) -> (Status, bool) {
    match seq.class {
        SequenceClass::UnknownAtCap(_) => (Status::Unknown, true),
        _ => (Status::Definitive, false),
    }
}

pub fn expand<R: CoeffRing>(ring: R, spec: &SystemSpec, element: &str, cap: usize) -> Result<Report> {
    let sys = build_system(ring, spec)?;
    let a = sys.quot().parse(element)?;
    let seq = sys.digit_sequence(&a, cap);
    let mut result = json!({ "element": sys.quot().format(&a) });
    if let (Value::Object(m), Value::Object(s)) = (&mut result, sequence_json(&sys, &seq)) {
        m.extend(s);
    }
    let mut lines = vec![format!("element: {}", sys.quot().format(&a))];
    lines.extend(sequence_line(&sys, &seq));
    let (status, cap_hit) = seq_status(&seq);
    Ok(Report {
        command: "expand",
        system: Some(system_info(&sys)),
        result,
        lines,
        steps_used: seq.digits.len(),
        cap_hit,
        status,
    })
}

fn certificate_json<R: CoeffRing>(sys: &DigitSystem<R>, c: &Certificate<R::Elem>) -> Value {
    match c {
        Certificate::AllReachZero { max_steps } => {
            json!({ "kind": "all_reach_zero", "max_steps": max_steps })
        }
        Certificate::Cycle(cycle) => json!({ "kind": "cycle", "elements": elements(sys, cycle) }),
        Certificate::EuclideanNecessary { g_pd, g_p0 } => {
            json!({ "kind": "euclidean_necessary", "g_pd": g_pd, "g_p0": g_p0 })
        }
        Certificate::StabilizedClosure { size } => json!({ "kind": "stabilized_closure", "size": size }),
        Certificate::DegreeBound { bound } => json!({ "kind": "degree_bound", "bound": bound }),
        Certificate::Inconclusive { reason } => json!({ "kind": "inconclusive", "reason": reason }),
    }
}

fn certificate_text<R: CoeffRing>(sys: &DigitSystem<R>, c: &Certificate<R::Elem>) -> String {
    match c {
        Certificate::AllReachZero { max_steps } => {
            format!("every witness reaches 0 within {max_steps} steps")
        }
        Certificate::Cycle(cycle) => format!("cycle avoiding 0: {}", elements(sys, cycle).join(" -> ")),
        Certificate::EuclideanNecessary { g_pd, g_p0 } => {
            format!("g(p_d) = {g_pd} >= g(p_0) = {g_p0}; only 0 in the Brunotte module expands finitely")
        }
        Certificate::StabilizedClosure { size } => format!("witness closure of {size} elements"),
        Certificate::DegreeBound { bound } => {
            format!("coordinates of degree at most {bound} attract every orbit")
        }
        Certificate::Inconclusive { reason } => reason.clone(),
    }
}

fn verdict_json<R: CoeffRing>(sys: &DigitSystem<R>, v: &Verdict<R::Elem>) -> Value {
    json!({
        "property": match v.property { Property::Fep => "fep", Property::Pep => "pep" },
        "answer": answer(v.answer),
        "witnesses": v.witnesses,
        "stabilized": v.stabilized,
        "certificate": certificate_json(sys, &v.certificate),
    })
}

fn verdict_line<R: CoeffRing>(sys: &DigitSystem<R>, v: &Verdict<R::Elem>) -> String {
    let name = match v.property {
        Property::Fep => "fep",
        Property::Pep => "pep",
    };
    format!("{name}: {} ({})", answer(v.answer), certificate_text(sys, &v.certificate))
}

fn max_steps<T>(v: &Verdict<T>) -> usize {
    match v.certificate {
        Certificate::AllReachZero { max_steps } => max_steps,
        _ => 0,
    }
}

pub fn decide<R: CoeffRing>(
    ring: R,
    spec: &SystemSpec,
    properties: &[Property],
    opts: &DecideOptions,
) -> Result<Report> {
    let sys = build_system(ring, spec)?;
    let mut result = serde_json::Map::new();
    let mut lines = Vec::new();
    let mut status = Status::Definitive;
    let mut steps = 0;
    for &p in properties {
        let v = match p {
            Property::Fep => decide_fep(&sys, opts),
            Property::Pep => decide_pep(&sys, opts),
        };
        if v.answer == Answer::Unknown {
            status = Status::Unknown;
        }
        steps = steps.max(max_steps(&v));
        let key = if p == Property::Fep { "fep" } else { "pep" };
        result.insert(key.into(), verdict_json(&sys, &v));
        lines.push(verdict_line(&sys, &v));
    }
    Ok(Report {
        command: "decide",
        system: Some(system_info(&sys)),
        result: Value::Object(result),
        lines,
        steps_used: steps,
        cap_hit: status == Status::Unknown,
        status,
    })
}

pub fn zero_cycle<R: CoeffRing>(ring: R, spec: &SystemSpec, cap: usize) -> Result<Report> {
    let sys = build_system(ring, spec)?;
    let (result, lines, steps, status) = match sys.zero_cycle(cap) {
        ZeroCycleResult::Found(z) => {
            let digits = elements(&sys, &z.digits);
            let lines = vec![
                format!("zero cycle: {}", digits.join(", ")),
                format!("period: {}", z.period()),
            ];
            let r = json!({ "found": true, "digits": digits, "period": z.period() });
            (r, lines, z.period(), Status::Definitive)
        }
        ZeroCycleResult::NoZeroCycle { preperiod, period } => {
            let lines = vec![format!(
                "no zero cycle: the orbit of 0 enters a cycle of length {period} after {preperiod} steps"
            )];
            let r = json!({ "found": false, "preperiod": preperiod, "period": period });
            (r, lines, preperiod + period, Status::Definitive)
        }
        ZeroCycleResult::UnknownAtCap(c) => {
            let lines = vec![format!("unknown: no repetition within {c} steps")];
            (json!({ "found": null }), lines, c, Status::Unknown)
        }
    };
    Ok(Report {
        command: "zero-cycle",
        system: Some(system_info(&sys)),
        result,
        lines,
        steps_used: steps,
        cap_hit: status == Status::Unknown,
        status,
    })
}

pub fn witness<R: CoeffRing>(
    ring: R,
    spec: &SystemSpec,
    mode: Option<SeedMode>,
    cap: usize,
    dot: Option<&str>,
) -> Result<Report> {
    let sys = build_system(ring, spec)?;
    let mode = mode.unwrap_or(if sys.digits_constant() {
        SeedMode::Brunotte
    } else {
        SeedMode::Power
    });
    let seed = seed_witnesses(&sys, mode)?;
    let closure = witness_closure(&sys, &seed, cap);
    let check = verify_witness_set(&sys, &closure.elements, &seed);
    let mode_name = match mode {
        SeedMode::Brunotte => "brunotte",
        SeedMode::Power => "power",
    };
    let mut lines = vec![
        format!("mode: {mode_name}"),
        format!("seed: {}", elements(&sys, &seed).join(", ")),
        format!("witnesses ({}): {}", closure.elements.len(), elements(&sys, &closure.elements).join(", ")),
        format!("stabilized: {} after {} rounds", closure.stabilized, closure.rounds),
        format!("valid: {}", check.is_valid()),
    ];
    if let Some(path) = dot {
        if !closure.stabilized {
            return Err(Error::Precondition(format!(
                "witness closure exceeded {cap} elements; no graph written"
            )));
        }
        let graph = orbit_graph(&sys, &closure.elements, 0)?;
        fs::write(path, graph.to_dot())
            .map_err(|e| Error::Precondition(format!("cannot write {path}: {e}")))?;
        lines.push(format!("graph: {path}"));
    }
    let result = json!({
        "mode": mode_name,
        "seed": elements(&sys, &seed),
        "elements": elements(&sys, &closure.elements),
        "size": closure.elements.len(),
        "stabilized": closure.stabilized,
        "rounds": closure.rounds,
        "valid": check.is_valid(),
        "dot": dot,
    });
    let status = if closure.stabilized {
        Status::Definitive
    } else {
        Status::Unknown
    };
    Ok(Report {
        command: "witness",
        system: Some(system_info(&sys)),
        result,
        lines,
        steps_used: closure.rounds,
        cap_hit: !closure.stabilized,
        status,
    })
}

pub fn srs(r: &str, eps: &str, opts: &DecideOptions) -> Result<Report> {
    let r = parse_rational_list(r)?;
    let eps = parse_rational(eps)?;
    let params = SrsParams::new(r, eps)?;
    let v = srs_classify(&params, opts)?;
    let cycle: Option<Vec<Vec<String>>> = v
        .cycle
        .as_ref()
        .map(|c| c.iter().map(|z| z.iter().map(|x| x.to_string()).collect()).collect());
    let mut lines = vec![
        format!("r: ({})", params.r().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")),
        format!("eps: {}", params.eps()),
        format!("in_D0: {}", answer(v.in_d0)),
        format!("in_D: {}", answer(v.in_d)),
    ];
    if let Some(c) = &cycle {
        let shown: Vec<String> = c.iter().map(|z| format!("({})", z.join(", "))).collect();
        lines.push(format!("cycle: {}", shown.join(" -> ")));
    }
    let result = json!({
        "r": params.r().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "eps": params.eps().to_string(),
        "in_d0": answer(v.in_d0),
        "in_d": answer(v.in_d),
        "cycle": cycle,
    });
    let status = if v.in_d0 == Answer::Unknown {
        Status::Unknown
    } else {
        Status::Definitive
    };
    Ok(Report {
        command: "srs",
        system: v.system.as_ref().map(system_info),
        result,
        lines,
        steps_used: v.fep.as_ref().map_or(0, max_steps),
        cap_hit: status == Status::Unknown,
        status,
    })
}

/// Parses `P:d,d,...;P:d,...`.
pub fn parse_factors<R: CoeffRing>(ring: &R, text: &str) -> Result<Vec<Factor<R::Elem>>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        let (p, n) = part.split_once(':').ok_or_else(|| {
            Error::Parse(digitsys_core::ParseError {
                position: offset + part.len(),
                message: "expected 'P:digits'".into(),
            })
        })?;
        let shift = |e: Error, by: usize| match e {
            Error::Parse(mut pe) => {
                pe.position += by;
                Error::Parse(pe)
            }
            other => other,
        };
        let poly = parse_poly(ring, p).map_err(|e| shift(e, offset))?;
        let digits = parse_poly_list(ring, n).map_err(|e| shift(e, offset + p.len() + 1))?;
        out.push((poly, digits));
        offset += part.len() + 1;
    }
    Ok(out)
}

pub fn product<R: CoeffRing>(
    ring: R,
    factors: &str,
    element: Option<&str>,
    cap: usize,
    opts: &DecideOptions,
) -> Result<Report> {
    let parsed = parse_factors(&ring, factors)?;
    let factor_json: Vec<Value> = parsed
        .iter()
        .map(|(p, n)| {
            json!({
                "poly": p.format(&ring, "x"),
                "digits": n.iter().map(|d| d.format(&ring, "x")).collect::<Vec<_>>(),
            })
        })
        .collect();
    let ps = multi_product_digit_set(ring.clone(), parsed, opts)?;
    let sys = ps.combined();
    let mut lines = vec![format!("fep propagated: {}", ps.fep_propagated())];
    let mut result = json!({
        "factors": factor_json,
        "fep_propagated": ps.fep_propagated(),
    });
    let mut status = Status::Definitive;
    let mut steps = 0;
    if let Some(text) = element {
        let f = parse_poly(&ring, text)?;
        let seq = product_expand(&ps, &f, cap)?;
        let mut expansion = json!({ "element": f.format(&ring, "x") });
        if let (Value::Object(m), Value::Object(s)) = (&mut expansion, sequence_json(sys, &seq)) {
            m.extend(s);
        }
        result["expansion"] = expansion;
        lines.push(format!("element: {}", f.format(&ring, "x")));
        lines.extend(sequence_line(sys, &seq));
        status = seq_status(&seq).0;
        steps = seq.digits.len();
    }
    Ok(Report {
        command: "product",
        system: Some(system_info(sys)),
        result,
        lines,
        steps_used: steps,
        cap_hit: status == Status::Unknown,
        status,
    })
}

pub fn ff(
    p: u32,
    poly: &str,
    digits: Option<&str>,
    prove: bool,
    element: Option<&str>,
    cap: usize,
) -> Result<Report> {
    let ring = FpPolyRing::new(p)?;
    let modulus = parse_poly(&ring, poly)?;
    let crit = ff_criterion(&modulus)?;
    let canonical: Vec<Poly<_>> = canonical_ff_digits(&ring, &modulus)?
        .into_iter()
        .map(|c| Poly::constant(&ring, c))
        .collect();
    let aux = validate_system(ring, modulus.clone(), &canonical)?;
    let sys = match digits {
        Some(d) => validate_system(ring, modulus, &parse_poly_list(&ring, d)?)?,
        None => aux.clone(),
    };
    let max_deg = crit.mu.map_or(Value::Null, |m| json!(m));
    let mut result = json!({
        "criterion": {
            "fep": crit.fep,
            "pep": crit.pep,
            "deg_p0": crit.delta,
            "max_deg": max_deg,
        },
        "canonical_digits": elements(&aux, aux.digits()),
    });
    let mut lines = vec![
        format!(
            "criterion: fep {}, pep {} (deg p_0 = {}, max deg p_i = {})",
            crit.fep,
            crit.pep,
            crit.delta,
            crit.mu.map_or("-inf".to_string(), |m| m.to_string())
        ),
        format!("canonical digits: {}", elements(&aux, aux.digits()).join(", ")),
    ];
    let mut status = Status::Definitive;
    let mut steps = 0;
    if prove {
        let report = prove_fep_via_zero_cycle(&sys, &aux, DEFAULT_WINDOW_CAP.min(cap.max(1)))?;
        let longest = report
            .reach
            .iter()
            .filter_map(|(_, f)| match f {
                WindowFate::Zero(k) => Some(*k),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let zc: Vec<String> = report.zero_cycle.iter().map(|c| ring.format(c)).collect();
        result["proof"] = json!({
            "answer": answer(report.answer),
            "zero_cycle": zc,
            "windows": report.reach.len(),
            "max_steps": longest,
            "diagnosis": report.diagnosis,
        });
        lines.push(format!("fep via zero cycle: {}", answer(report.answer)));
        if !zc.is_empty() {
            lines.push(format!("zero cycle: {}", zc.join(", ")));
            lines.push(format!(
                "windows: {} explored, longest path to zero {longest}",
                report.reach.len()
            ));
        }
        if let Some(d) = &report.diagnosis {
            lines.push(format!("diagnosis: {d}"));
        }
        if report.answer != Answer::Yes {
            status = Status::Unknown;
        }
        steps = longest;
    }
    if let Some(text) = element {
        let a = sys.quot().parse(text)?;
        match convert_expansion(&sys, &aux, &a, cap)? {
            Ok(e) => {
                let digits = elements(&sys, &e.digits);
                lines.push(format!("element: {}", sys.quot().format(&a)));
                lines.push(format!("expansion: {}", digits.join(", ")));
                steps = steps.max(e.digits.len());
                result["expansion"] = json!({ "element": sys.quot().format(&a), "digits": digits });
            }
            Err(f) => {
                lines.push(format!("expansion: failed ({f:?})"));
                result["expansion"] = json!({ "element": sys.quot().format(&a), "digits": null });
                status = Status::Unknown;
            }
        }
    }
    Ok(Report {
        command: "ff",
        system: Some(system_info(&sys)),
        result,
        lines,
        steps_used: steps,
        cap_hit: status == Status::Unknown,
        status,
    })
}
