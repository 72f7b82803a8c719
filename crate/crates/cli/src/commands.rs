//! One function per subcommand; each returns both renderings.

use std::fmt::Write as _;

use dpd_core::catalog::{catalog_surface, default_params, CatalogEntry, NAMES};
use dpd_core::classify::{
    canonical_form, classify as classify_spec, fiber_structure, fibers as fiber_list, ml_invariant,
    mm_invariant, recognize_homogeneous, recognize_sl2, ruling_divisor, singular_points, toric_type,
    FiberData,
};
use dpd_core::dpdring::{contains, from_equation as pair_of_equation, presentation};
use dpd_core::element::{parse_element, parse_poly};
use dpd_core::exactmath::{factorial, shifted};
use dpd_core::lnd::{
    admissible_degrees, apply as apply_lnd, build_lnd, elliptic_lnd, kernel_generator,
    parabolic_horizontal, parabolic_horizontal_lnd, positive_lnd_exists, stabilization_witness, witness_for,
    fiber_lnd, DegreeSet, Witness,
};
use dpd_core::{DivisorPair, Error, GradedElement, Lnd, Point, Rat, SurfaceSpec};
use serde_json::{json, Value};

use crate::{CliError, DegreeArgs, Output};

type Out = Result<Output, CliError>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn hyperbolic(spec: &SurfaceSpec, what: &str) -> Result<DivisorPair, CliError> {
    spec.pair()
        .cloned()
        .ok_or_else(|| Error::Unsupported(format!("{what} needs a hyperbolic pair")).into())
}

pub fn classify(spec: &SurfaceSpec) -> Out {
    let report = classify_spec(spec)?;
    Ok(Output::new(report.to_string(), to_value(&report)))
}

/// The derivation named by `--degree`/`--negative`.
fn chosen_lnd(spec: &SurfaceSpec, args: DegreeArgs) -> Result<Lnd, CliError> {
    if let SurfaceSpec::Elliptic { d, e_prime } = spec {
        let (x, y) = elliptic_lnd(*d, *e_prime)?;
        return Ok(if args.negative { x } else { y });
    }
    let degree = args
        .signed()
        .ok_or_else(|| CliError::Usage("--degree is required for this surface".into()))?;
    Ok(build_lnd(spec, degree)?)
}

fn lnd_value(spec: &SurfaceSpec, lnd: &Lnd) -> Value {
    let mut v = json!({
        "degree": lnd.degree(),
        "derivation": lnd.to_string(),
        "kernel": kernel_generator(spec, lnd).ok().map(|k| k.to_string()),
    });
    if let Lnd::Horizontal(h) = lnd {
        v["toric_data"] = json!({"d": h.d, "e_prime": h.e_prime, "k": h.k, "sign": h.sign});
    }
    v
}

pub fn lnd(spec: &SurfaceSpec, args: DegreeArgs) -> Out {
    if args.degree.is_none() && !matches!(spec, SurfaceSpec::Elliptic { .. }) {
        let summary = classify_spec(spec)?.lnd;
        let mut text = format!("positive degrees: {}\n", summary.positive);
        if let SurfaceSpec::Hyperbolic(_) = spec {
            writeln!(text, "negative degrees: {}", summary.negative).unwrap();
        }
        if summary.fiber_type {
            writeln!(text, "fiber type:       degree -1").unwrap();
        }
        return Ok(Output::new(text, to_value(&summary)));
    }
    let lnd = chosen_lnd(spec, args)?;
    let v = lnd_value(spec, &lnd);
    let mut text = format!("derivation: {lnd}\n");
    if let Some(e) = lnd.degree() {
        writeln!(text, "degree:     {e}").unwrap();
    }
    if let Some(k) = v["kernel"].as_str() {
        writeln!(text, "kernel:     {k}").unwrap();
    }
    Ok(Output::new(text, v))
}

pub fn apply(spec: &SurfaceSpec, args: DegreeArgs, element: &str, times: Option<u64>, max_iter: u64) -> Out {
    let lnd = chosen_lnd(spec, args)?;
    let x = parse_element(element)?;
    if !contains(spec, &x)? {
        return Err(Error::NotInRing.into());
    }
    let limit = times.unwrap_or(max_iter);
    let mut iterates = Vec::new();
    let mut y = x.clone();
    let mut steps = if y.is_zero() { Some(0) } else { None };
    while steps.is_none() && (iterates.len() as u64) < limit {
        y = apply_lnd(&lnd, &y);
        iterates.push(y.clone());
        if y.is_zero() {
            steps = Some(iterates.len() as u64);
        }
    }
    if steps.is_none() && times.is_none() {
        return Err(Error::CapExceeded(max_iter).into());
    }
    let mut text = format!("derivation: {lnd}\nx = {x}\n");
    for (i, y) in iterates.iter().enumerate() {
        writeln!(text, "∂^{}(x) = {y}", i + 1).unwrap();
    }
    match steps {
        Some(n) => writeln!(text, "steps: {n}").unwrap(),
        None => writeln!(text, "steps: more than {limit}").unwrap(),
    }
    let v = json!({
        "derivation": lnd.to_string(),
        "element": x.to_string(),
        "iterates": iterates.iter().map(|y| y.to_string()).collect::<Vec<_>>(),
        "steps": steps,
    });
    Ok(Output::new(text, v))
}

pub fn kernel(spec: &SurfaceSpec, args: DegreeArgs) -> Out {
    let lnd = chosen_lnd(spec, args)?;
    let k = kernel_generator(spec, &lnd)?;
    let text = format!("derivation: {lnd}\nkernel:     C[{k}]\n");
    Ok(Output::new(text, json!({"derivation": lnd.to_string(), "kernel": k.to_string()})))
}

pub fn equation(spec: &SurfaceSpec) -> Out {
    let p = presentation(&hyperbolic(spec, "a presentation")?)?;
    Ok(Output::new(p.to_string(), to_value(&p)))
}

/// Spec files print the same in both modes, so they can be saved and fed back.
fn spec_output(spec: &SurfaceSpec, json: Value) -> Output {
    Output::new(spec.to_json(), json)
}

pub fn from_equation(poly: &str, k: i64) -> Out {
    let k = u64::try_from(k)
        .ok()
        .filter(|k| *k >= 1)
        .ok_or_else(|| CliError::Usage(format!("--degree must be a positive k, got {k}")))?;
    let spec = SurfaceSpec::Hyperbolic(pair_of_equation(k, &parse_poly(poly)?)?);
    let v = to_value(&spec);
    Ok(spec_output(&spec, v))
}

pub fn ml(spec: &SurfaceSpec) -> Out {
    let ml = ml_invariant(&canonical_form(spec).0);
    let v = json!({"ml": ml, "generator_degree": ml.generator_degree()});
    Ok(Output::new(format!("ML: {ml}\n"), v))
}

pub fn mm(spec: &SurfaceSpec) -> Out {
    let mm = mm_invariant(&canonical_form(spec).0);
    let text = match mm {
        Some(1) => "MM_h: 1 (the plane A^2)\n".to_string(),
        Some(n) => format!("MM_h: {n}\n"),
        None => "MM_h: undefined, ML is not trivial\n".to_string(),
    };
    Ok(Output::new(text, json!({"mm": mm, "plane": mm == Some(1)})))
}

pub fn recognize(spec: &SurfaceSpec) -> Out {
    let canon = canonical_form(spec).0;
    let sl2 = canon.pair().and_then(recognize_sl2);
    let model = recognize_homogeneous(&canon);
    let toric = toric_type(&canon);
    let show = |o: Option<String>| o.unwrap_or_else(|| "none".into());
    let text = format!(
        "SL2 model:   {}\nhomogeneous: {}\ntoric:       {}\n",
        show(sl2.map(|m| m.to_string())),
        show(model.map(|m| m.to_string())),
        show(toric.map(|t| format!("V({},{})", t.d, t.e_prime))),
    );
    Ok(Output::new(text, json!({"sl2": sl2, "model": model, "toric": toric})))
}

fn fiber_line(f: &FiberData) -> String {
    match (f.delta, f.e_plus, f.e_minus, f.pi_star, f.div_u) {
        (Some(delta), Some(ep), Some(em), Some((a, b)), Some((c, d))) => format!(
            "fiber over {}: m+ = {}, e+ = {ep}, m- = {}, e- = {em}, delta = {delta}, pi* = ({a}, {b}), div u = ({c}, {d})",
            f.point, f.m_plus, f.m_minus
        ),
        _ => format!("fiber over {}: single orbit, m+ = {}, m- = {}", f.point, f.m_plus, f.m_minus),
    }
}

pub fn fibers(spec: &SurfaceSpec, at: Option<&str>) -> Out {
    let (canon, c) = canonical_form(spec);
    let pair = hyperbolic(&canon, "fiber data")?;
    let mut text = format!("normal form: {pair}\n");
    if !c.is_zero() {
        writeln!(text, "translation: t -> {}", shifted("t", &c)).unwrap();
    }
    if let Some(a) = at {
        let a: Point = a.parse()?;
        let f = fiber_structure(&pair, &Point(&a.0 - &c));
        writeln!(text, "{}", fiber_line(&f)).unwrap();
        return Ok(Output::new(text, json!({"translation": c, "fiber": f})));
    }
    let list = fiber_list(&pair);
    for f in &list {
        writeln!(text, "{}", fiber_line(f)).unwrap();
    }
    let ruling = ruling_divisor(&pair).ok();
    match &ruling {
        Some(r) if r.is_empty() => writeln!(text, "ruling divisor: 0").unwrap(),
        Some(r) => {
            let terms: Vec<String> = r.iter().map(|(p, m)| format!("{m}·[{p}]")).collect();
            writeln!(text, "ruling divisor: {}", terms.join(" + ")).unwrap();
        }
        None => writeln!(text, "ruling divisor: none, no LND of positive degree").unwrap(),
    }
    let sing = singular_points(&pair);
    for s in sing.iter().filter(|s| !s.smooth) {
        write!(text, "singular point over {} of order {}", s.point, s.order).unwrap();
        if let Some((d, e)) = s.chart_type {
            write!(text, ", chart type ({d}, {e})").unwrap();
        }
        writeln!(text).unwrap();
    }
    if sing.iter().all(|s| s.smooth) {
        writeln!(text, "smooth").unwrap();
    }
    let v = json!({
        "translation": c,
        "normalized_pair": pair,
        "fibers": list,
        "ruling_divisor": ruling,
        "singularities": sing,
    });
    Ok(Output::new(text, v))
}

pub fn catalog(name: Option<&str>, params: &[u64]) -> Out {
    let Some(name) = name else {
        let entries: Vec<CatalogEntry> = NAMES
            .iter()
            .map(|n| catalog_surface(n, &default_params(n)?))
            .collect::<Result<_, Error>>()?;
        let mut text = String::new();
        for e in &entries {
            let params: Vec<String> = e.params.iter().map(u64::to_string).collect();
            writeln!(text, "{:<17} {:<6} {}", e.name, params.join(","), e.spec).unwrap();
        }
        return Ok(Output::new(text, to_value(&entries)));
    };
    let params = if params.is_empty() {
        default_params(name)?
    } else {
        params.to_vec()
    };
    let entry = catalog_surface(name, &params)?;
    Ok(spec_output(&entry.spec, to_value(&entry)))
}

struct Check {
    e: i64,
    admissible: bool,
    witness: Witness,
}

fn check_value(c: &Check) -> Value {
    json!({"e": c.e, "admissible": c.admissible, "witness": c.witness.verdict, "failures": c.witness.failures, "note": c.witness.note})
}

fn check_line(c: &Check) -> String {
    let adm = if c.admissible { "admissible" } else { "not admissible" };
    let verdict = if c.witness.verdict { "PASS" } else { "FAIL" };
    let why = match (c.witness.failures.first(), &c.witness.note) {
        (Some(f), _) => format!(" (degree {}: {})", f.degree, f.reason),
        (None, Some(note)) => format!(" ({note})"),
        _ => String::new(),
    };
    format!("e = {}: {adm}, witness {verdict}{why}", c.e)
}

fn range_label(degrees: &[i64]) -> String {
    match degrees {
        [e] => format!("{{{e}}}"),
        [a, .., b] => format!("{{{a}..{b}}}"),
        [] => "{}".into(),
    }
}

pub fn verify(spec: &SurfaceSpec, window: u64, args: DegreeArgs) -> Out {
    let sign = if args.negative || args.degree.is_some_and(|d| d < 0) { -1 } else { 1 };
    let degrees: Vec<i64> = match args.degree {
        Some(d) => vec![sign * d.abs()],
        None => (1..=10).map(|e| sign * e).collect(),
    };
    let checks: Vec<Check> = match spec {
        SurfaceSpec::Hyperbolic(pair) => {
            let side = if sign < 0 { pair.reverse() } else { pair.clone() };
            let set = if positive_lnd_exists(&side) {
                admissible_degrees(&side)?
            } else {
                DegreeSet::none()
            };
            // each degree is independent; the sweep runs them side by side
            std::thread::scope(|s| {
                let handles: Vec<_> = degrees
                    .iter()
                    .map(|&e| {
                        let set = &set;
                        s.spawn(move || Check {
                            e,
                            admissible: set.contains(e.abs()),
                            witness: stabilization_witness(pair, e, window),
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("sweep thread")).collect()
            })
        }
        SurfaceSpec::Parabolic { divisor } => {
            if sign < 0 {
                let w = witness_for(spec, &fiber_lnd(divisor), window);
                vec![Check { e: -1, admissible: true, witness: w }]
            } else {
                let horizontal = parabolic_horizontal(divisor);
                degrees
                    .iter()
                    .map(|&e| {
                        let admissible = horizontal.is_some_and(|(d, e0)| e as u64 % d == e0 % d);
                        let witness = match parabolic_horizontal_lnd(divisor, e as u64) {
                            Ok(lnd) => witness_for(spec, &lnd, window),
                            Err(err) => Witness {
                                degree: e,
                                verdict: false,
                                failures: vec![],
                                note: Some(err.to_string()),
                            },
                        };
                        Check { e, admissible, witness }
                    })
                    .collect()
            }
        }
        SurfaceSpec::Elliptic { .. } => {
            return Err(Error::Unsupported("verify needs a hyperbolic or parabolic ring".into()).into())
        }
    };
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{}", check_line(c)).unwrap();
    }
    let bad: Vec<i64> = checks.iter().filter(|c| c.admissible != c.witness.verdict).map(|c| c.e).collect();
    let tested: Vec<i64> = checks.iter().map(|c| c.e).collect();
    let label = range_label(&tested);
    if bad.is_empty() {
        writeln!(text, "stabilization: PASS for e ∈ {label} ∩ admissible; oracle agrees with closed form").unwrap();
    } else {
        writeln!(text, "stabilization: oracle disagrees with closed form at e ∈ {bad:?}").unwrap();
    }
    let v = json!({
        "window": window,
        "checks": checks.iter().map(check_value).collect::<Vec<_>>(),
        "agrees": bad.is_empty(),
    });
    let mut out = Output::new(text, v);
    if !bad.is_empty() {
        out.error = Some(CliError::Mismatch(format!("degrees {bad:?}")));
    }
    Ok(out)
}

pub fn family(poly: &str, alpha: &str, e: u64) -> Out {
    let p = parse_poly(poly)?;
    let alpha: Rat = alpha.parse()?;
    if e == 0 {
        return Err(CliError::Usage("--degree must be at least 1".into()));
    }
    let spec = SurfaceSpec::Hyperbolic(pair_of_equation(1, &p)?);
    let u_alpha = dpd_core::lnd::conjugate_kernel(&p, e, &alpha);
    let in_ring = contains(&spec, &u_alpha)?;
    // u·u_α against the Taylor expansion of P(t + α·u^e)
    let u = GradedElement::u_pow(1);
    let mut taylor = GradedElement::zero();
    let mut dp = p.clone();
    for j in 0..=p.degree().unwrap_or(0) as u32 {
        let c = &alpha.pow(j as i32) / &factorial(j);
        taylor = &taylor + &GradedElement::homogeneous(dp.clone().into(), (j as u64 * e) as i64).scale(&c);
        dp = dp.derivative();
    }
    let identity = &u * &u_alpha == taylor;
    let text = format!(
        "ring:     u v = {p}\nu_alpha = {u_alpha}\nin ring:  {in_ring}\nu·u_alpha = P(t + alpha·u^{e}): {identity}\n"
    );
    let v = json!({
        "p": p.to_string(),
        "e": e,
        "alpha": alpha,
        "kernel_generator": u_alpha.to_string(),
        "in_ring": in_ring,
        "identity": identity,
    });
    Ok(Output::new(text, v))
}
