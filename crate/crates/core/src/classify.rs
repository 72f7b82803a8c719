//! Invariants and recognition of C*-surfaces.
//!
//! Everything here is computed on a canonical representative: the
//! normalized pair translated so that a distinguished point sits at `0`.
//! Reports are therefore unchanged by shifts and translations of the input.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::divisor::{affine_equivalent, denom_index, normalize_pair, DivisorPair, Point, QDivisor};
use crate::dpdring::{is_line_cross_torus, presentation, Presentation, SurfaceSpec};
use crate::error::{Error, Result};
use crate::exactmath::{gcd_u64, lcm_u64, mod_inverse, shifted, Poly, Rat};
use crate::lnd::{admissible_degrees, elliptic_lnd, parabolic_horizontal, positive_lnd_exists, DegreeSet, Lnd};

/// Local data of the fiber over `point`.
///
/// With `D+(a) = -e+/m+` and `D-(a) = e-/m-` in lowest terms (`m+ > 0`,
/// `m- < 0`), the fiber over a degenerate point (`D+(a) + D-(a) < 0`)
/// consists of two orbit closures of multiplicities `m+` and `-m-` meeting
/// at a fixed point whose local cone has index `Δ = m+·e- - m-·e+`.
/// Non-degenerate points only carry `m_plus` and `m_minus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberData {
    pub point: Point,
    pub m_plus: u64,
    pub m_minus: i64,
    pub degenerate: bool,
    pub e_plus: Option<i64>,
    pub e_minus: Option<i64>,
    pub delta: Option<u64>,
    pub pi_star: Option<(u64, u64)>,
    pub div_u: Option<(i64, i64)>,
}

fn big_i64(x: &num_bigint::BigInt) -> i64 {
    x.to_i64().expect("integer out of range")
}

/// Fiber data at `a`; computed on the normalized pair, which does not
/// change `Δ`.
pub fn fiber_structure(pair: &DivisorPair, a: &Point) -> FiberData {
    let n = normalize_pair(pair);
    let dp = n.d_plus().coeff(a);
    let dm = n.d_minus().coeff(a);
    let m_plus = big_i64(dp.denom()) as u64;
    let m_minus = -big_i64(dm.denom());
    let degenerate = (&dp + &dm).is_negative();
    if !degenerate {
        return FiberData {
            point: a.clone(),
            m_plus,
            m_minus,
            degenerate,
            e_plus: None,
            e_minus: None,
            delta: None,
            pi_star: None,
            div_u: None,
        };
    }
    let e_plus = -big_i64(dp.numer());
    let e_minus = -big_i64(dm.numer());
    let delta = m_plus as i64 * e_minus - m_minus * e_plus;
    debug_assert!(delta > 0);
    FiberData {
        point: a.clone(),
        m_plus,
        m_minus,
        degenerate,
        e_plus: Some(e_plus),
        e_minus: Some(e_minus),
        delta: Some(delta as u64),
        pi_star: Some((m_plus, (-m_minus) as u64)),
        div_u: Some((-e_plus, e_minus)),
    }
}

/// Fiber data at every point of the support, sorted by point.
pub fn fibers(pair: &DivisorPair) -> Vec<FiberData> {
    normalize_pair(pair)
        .support()
        .iter()
        .map(|a| fiber_structure(pair, a))
        .collect()
}

/// Divisor of the kernel generator `v` of the positive LND: at each
/// degenerate point `a`, multiplicity `d+·m-(a)·(D+(a) + D-(a))`.
pub fn ruling_divisor(pair: &DivisorPair) -> Result<Vec<(Point, u64)>> {
    if !positive_lnd_exists(pair) {
        return Err(Error::NoPositiveLnd);
    }
    let n = normalize_pair(pair);
    let dplus = Rat::int(denom_index(n.d_plus()) as i64);
    let sum = n.sum();
    Ok(sum
        .terms()
        .map(|(p, s)| {
            let m_minus = -Rat::from(n.d_minus().coeff(p).denom().clone());
            let mult = &dplus * &m_minus * s;
            (p.clone(), mult.to_i64().expect("integral multiplicity") as u64)
        })
        .collect())
}

/// A fixed point of the C*-action over a degenerate point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub point: Point,
    /// The index `Δ` of the local cone.
    pub order: u64,
    pub smooth: bool,
    /// `D+(a) = 0` after normalizing, so the standard local chart applies.
    pub chart_valid: bool,
    /// `(d_i, e_i)` read off from `-D-(a) = d_i/e_i'` in lowest terms, with
    /// `e_i = e_i' mod d_i`. Reported as is; see the workspace README.
    pub chart_type: Option<(u64, u64)>,
}

pub fn singular_points(pair: &DivisorPair) -> Vec<SingularPoint> {
    let n = normalize_pair(pair);
    fibers(pair)
        .into_iter()
        .filter(|f| f.degenerate)
        .map(|f| {
            let delta = f.delta.expect("degenerate fibers have delta");
            let chart_valid = n.d_plus().coeff(&f.point).is_zero();
            let chart_type = chart_valid.then(|| {
                let r = -n.d_minus().coeff(&f.point);
                let di = big_i64(r.numer()) as u64;
                let ei = big_i64(r.denom()) as u64;
                (di, ei % di)
            });
            SingularPoint {
                point: f.point,
                order: delta,
                smooth: delta == 1,
                chart_valid,
                chart_type,
            }
        })
        .collect()
}

/// The Makar-Limanov invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlResult {
    Trivial,
    /// `C[v]` with `v` homogeneous of the given degree.
    PolynomialRing { generator_degree: i64 },
    /// `C[v, v^-1]`.
    LaurentRing,
    /// No LND at all.
    WholeRing,
}

impl MlResult {
    pub fn tag(&self) -> &'static str {
        match self {
            MlResult::Trivial => "trivial",
            MlResult::PolynomialRing { .. } => "polynomial_ring",
            MlResult::LaurentRing => "laurent_ring",
            MlResult::WholeRing => "whole_ring",
        }
    }

    pub fn generator_degree(&self) -> Option<i64> {
        match self {
            MlResult::PolynomialRing { generator_degree } => Some(*generator_degree),
            _ => None,
        }
    }
}

impl Serialize for MlResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl fmt::Display for MlResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MlResult::Trivial => write!(f, "C"),
            MlResult::PolynomialRing { generator_degree } => {
                write!(f, "C[v], deg v = {generator_degree}")
            }
            MlResult::LaurentRing => write!(f, "C[v, v^-1]"),
            MlResult::WholeRing => write!(f, "the whole ring"),
        }
    }
}

fn concentrated(d: &QDivisor) -> bool {
    (d - &d.ceil()).fractional_support().len() <= 1
}

pub fn ml_invariant(spec: &SurfaceSpec) -> MlResult {
    match spec {
        SurfaceSpec::Elliptic { .. } => MlResult::Trivial,
        SurfaceSpec::Parabolic { divisor } => {
            if concentrated(divisor) {
                MlResult::Trivial
            } else {
                MlResult::PolynomialRing { generator_degree: 0 }
            }
        }
        SurfaceSpec::Hyperbolic(pair) => {
            if pair.sum().is_zero() {
                return if is_line_cross_torus(pair) {
                    MlResult::LaurentRing
                } else {
                    MlResult::WholeRing
                };
            }
            let n = normalize_pair(pair);
            let plus = positive_lnd_exists(&n);
            let minus = positive_lnd_exists(&n.reverse());
            match (plus, minus) {
                (true, true) => MlResult::Trivial,
                (true, false) => MlResult::PolynomialRing {
                    generator_degree: denom_index(n.d_plus()) as i64,
                },
                (false, true) => MlResult::PolynomialRing {
                    generator_degree: -(denom_index(n.d_minus()) as i64),
                },
                (false, false) => MlResult::WholeRing,
            }
        }
    }
}

/// `-d+·d-·deg(D+ + D-)`.
pub fn mm_divisor_formula(pair: &DivisorPair) -> u64 {
    let dp = denom_index(pair.d_plus()) as i64;
    let dm = denom_index(pair.d_minus()) as i64;
    let v = -(Rat::int(dp * dm) * pair.sum().degree());
    v.to_i64().expect("integral") as u64
}

/// `(k, P)` with `k = gcd(d+, d-)` and `div P = -lcm(d+, d-)·(D+ + D-)`.
pub fn mm_equation(pair: &DivisorPair) -> (u64, Poly) {
    let dp = denom_index(pair.d_plus());
    let dm = denom_index(pair.d_minus());
    let l = Rat::int(lcm_u64(dp, dm) as i64);
    let p = pair.sum().terms().fold(Poly::one(), |acc, (a, s)| {
        let m = -(&l * s);
        &acc * &Poly::linear(&a.0).pow(m.to_i64().expect("integral") as u32)
    });
    (gcd_u64(dp, dm), p)
}

/// The Miyanishi-Masuda invariant, defined when the ML invariant is trivial.
pub fn mm_invariant(spec: &SurfaceSpec) -> Option<u64> {
    if ml_invariant(spec) != MlResult::Trivial {
        return None;
    }
    Some(match spec {
        SurfaceSpec::Elliptic { d, .. } => *d,
        SurfaceSpec::Parabolic { divisor } => denom_index(divisor),
        SurfaceSpec::Hyperbolic(pair) => {
            let v = mm_divisor_formula(pair);
            debug_assert_eq!({
                let (k, p) = mm_equation(pair);
                k * p.degree().unwrap_or(0) as u64
            }, v);
            v
        }
    })
}

/// The four families of pairs with an algebraic SL2-action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "d", rename_all = "snake_case")]
pub enum Sl2Model {
    Quadric,
    ConicComplement,
    /// Veronese cone `V_(d,1)` with `d` even.
    VeroneseEven(u64),
    /// Veronese cone `V_(d,1)` with `d` odd.
    VeroneseOdd(u64),
}

impl fmt::Display for Sl2Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sl2Model::Quadric => write!(f, "smooth affine quadric"),
            Sl2Model::ConicComplement => write!(f, "complement of a smooth conic in P^2"),
            Sl2Model::VeroneseEven(d) | Sl2Model::VeroneseOdd(d) => write!(f, "Veronese cone V({d},1)"),
        }
    }
}

fn pair_of(plus: QDivisor, minus: QDivisor) -> DivisorPair {
    DivisorPair::new(plus, minus).expect("template pairs are valid")
}

/// Template pairs of the four families.
pub fn sl2_template(model: Sl2Model) -> DivisorPair {
    let at0 = |c: Rat| QDivisor::single(Rat::zero(), c);
    match model {
        Sl2Model::Quadric => pair_of(
            QDivisor::zero(),
            QDivisor::from_fracs(&[(1, 1, -1, 1), (-1, 1, -1, 1)]),
        ),
        Sl2Model::ConicComplement => pair_of(
            QDivisor::from_fracs(&[(0, 1, 1, 2)]),
            QDivisor::from_fracs(&[(0, 1, -1, 2), (1, 1, -1, 1)]),
        ),
        Sl2Model::VeroneseEven(d) => {
            let c = Rat::new(-1, (d / 2) as i64);
            pair_of(at0(c.clone()), at0(c))
        }
        Sl2Model::VeroneseOdd(d) => {
            let ep = d.div_ceil(2) as i64;
            pair_of(
                at0(Rat::new(-ep, d as i64)),
                at0(Rat::new(ep - 1, d as i64)),
            )
        }
    }
}

/// Matches the pair against the four templates; the first match wins.
pub fn recognize_sl2(pair: &DivisorPair) -> Option<Sl2Model> {
    let deg = pair.sum().degree();
    let mut candidates = vec![Sl2Model::Quadric, Sl2Model::ConicComplement];
    if deg.is_negative() {
        let half = -(Rat::int(2) / &deg);
        if let Some(dp) = half.to_i64().filter(|x| *x >= 1) {
            candidates.push(Sl2Model::VeroneseEven(2 * dp as u64));
        }
        let odd = -deg.recip();
        if let Some(d) = odd.to_i64().filter(|x| *x >= 1 && x % 2 == 1) {
            candidates.push(Sl2Model::VeroneseOdd(d as u64));
        }
    }
    candidates
        .into_iter()
        .find(|m| affine_equivalent(pair, &sl2_template(*m)).is_some())
}

/// Named models among homogeneous surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "d", rename_all = "snake_case")]
pub enum Model {
    Plane,
    LineTimesTorus,
    Quadric,
    ConicComplement,
    VeroneseCone(u64),
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Plane => write!(f, "A^2"),
            Model::LineTimesTorus => write!(f, "A^1 x C*"),
            Model::Quadric => write!(f, "smooth affine quadric"),
            Model::ConicComplement => write!(f, "complement of a smooth conic in P^2"),
            Model::VeroneseCone(d) => write!(f, "Veronese cone V({d},1)"),
        }
    }
}

pub fn recognize_homogeneous(spec: &SurfaceSpec) -> Option<Model> {
    if mm_invariant(spec) == Some(1) {
        return Some(Model::Plane);
    }
    match spec {
        SurfaceSpec::Elliptic { d, e_prime } => (*e_prime == 1).then_some(Model::VeroneseCone(*d)),
        SurfaceSpec::Parabolic { .. } => match toric_type(spec) {
            Some(ToricType { d, e_prime: 1 }) => Some(Model::VeroneseCone(d)),
            _ => None,
        },
        SurfaceSpec::Hyperbolic(pair) => {
            if is_line_cross_torus(pair) {
                return Some(Model::LineTimesTorus);
            }
            recognize_sl2(pair).map(|m| match m {
                Sl2Model::Quadric => Model::Quadric,
                Sl2Model::ConicComplement => Model::ConicComplement,
                Sl2Model::VeroneseEven(d) | Sl2Model::VeroneseOdd(d) => Model::VeroneseCone(d),
            })
        }
    }
}

/// The toric surface `V_(d,e')` (`A^2/Z_d`, weights `(1, e')`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ToricType {
    pub d: u64,
    pub e_prime: u64,
}

/// Identifies toric surfaces: elliptic ones, parabolic ones with `{D}` at
/// one point and hyperbolic ones whose supports meet in a single point.
/// `A^1 × C*` is not reported here.
pub fn toric_type(spec: &SurfaceSpec) -> Option<ToricType> {
    match spec {
        SurfaceSpec::Elliptic { d, e_prime } => Some(ToricType {
            d: *d,
            e_prime: *e_prime,
        }),
        SurfaceSpec::Parabolic { divisor } => {
            let n = divisor - &divisor.ceil();
            let pts = n.fractional_support();
            match pts.as_slice() {
                [] => Some(ToricType { d: 1, e_prime: 0 }),
                [p] => {
                    let c = n.coeff(p);
                    let d = big_i64(c.denom()) as u64;
                    Some(ToricType {
                        d,
                        e_prime: (-big_i64(c.numer())) as u64,
                    })
                }
                _ => None,
            }
        }
        SurfaceSpec::Hyperbolic(pair) => {
            let n = normalize_pair(pair);
            let support = n.support();
            if support.len() > 1 || n.sum().is_zero() {
                return None;
            }
            let a = support.first().cloned().unwrap_or_default();
            let dp = n.d_plus().coeff(&a);
            let dm = n.d_minus().coeff(&a);
            // The weight cone is spanned by (e', d) and (-p, -q) where
            // D+(a) = -e'/d and D-(a) = p/q.
            let (ep, d) = (-big_i64(dp.numer()), big_i64(dp.denom()));
            let (p, q) = (big_i64(dm.numer()), big_i64(dm.denom()));
            let index = ep * q - d * p;
            debug_assert!(index > 0);
            // x·e' + y·d = 1
            let x = mod_inverse(ep as u64, d as u64).unwrap_or(0) as i64;
            let y = (1 - x * ep) / d;
            let e = (-x * p - y * q).rem_euclid(index);
            Some(ToricType {
                d: index as u64,
                e_prime: e as u64,
            })
        }
    }
}

/// The distinguished point moved to `0` in the canonical representative.
fn canonical_center(normalized: &DivisorPair) -> Rat {
    let plus = normalized.d_plus().fractional_support();
    let minus = normalized.d_minus().fractional_support();
    if plus.len() == 1 {
        return plus[0].0.clone();
    }
    if plus.is_empty() && minus.len() == 1 {
        return minus[0].0.clone();
    }
    normalized
        .support()
        .first()
        .map(|p| p.0.clone())
        .unwrap_or_default()
}

/// The canonical representative of a spec and the translation used.
pub fn canonical_form(spec: &SurfaceSpec) -> (SurfaceSpec, Rat) {
    match spec {
        SurfaceSpec::Elliptic { .. } => (spec.clone(), Rat::zero()),
        SurfaceSpec::Parabolic { divisor } => {
            let n = divisor - &divisor.ceil();
            let frac = n.fractional_support();
            let c = match frac.as_slice() {
                [p] => p.0.clone(),
                _ => n.support().first().map(|p| p.0.clone()).unwrap_or_default(),
            };
            (SurfaceSpec::Parabolic { divisor: n.translate(&-&c) }, c)
        }
        SurfaceSpec::Hyperbolic(pair) => {
            let n = normalize_pair(pair);
            let c = canonical_center(&n);
            (SurfaceSpec::Hyperbolic(n.translate(&-&c)), c)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LndSummary {
    /// Degrees of horizontal LNDs of positive degree.
    pub positive: DegreeSet,
    /// Absolute values of degrees of horizontal LNDs of negative degree.
    pub negative: DegreeSet,
    /// A fiber-type LND (degree `-1`) exists.
    pub fiber_type: bool,
    /// Exponents `(e'', e)` of `X^e''·∂/∂Y` and `Y^e·∂/∂X` (elliptic only).
    pub toric_exponents: Option<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    /// The input, echoed.
    pub spec: SurfaceSpec,
    /// The point of the input moved to `0` in `normalized_spec`.
    pub translation: Rat,
    pub normalized_spec: SurfaceSpec,
    pub grading: Grading,
    pub d_plus: Option<u64>,
    pub d_minus: Option<u64>,
    pub lnd: LndSummary,
    pub ml: MlResult,
    pub ml_generator_degree: Option<i64>,
    pub mm: Option<u64>,
    pub presentation: Option<Presentation>,
    pub fibers: Vec<FiberData>,
    pub singularities: Vec<SingularPoint>,
    pub smooth: bool,
    pub sl2: Option<Sl2Model>,
    pub model: Option<Model>,
    pub toric: Option<ToricType>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialization cannot fail")
    }

    /// The report without the echoed input, for invariance comparisons.
    pub fn intrinsic(&self) -> serde_json::Value {
        let mut v = self.to_json();
        let obj = v.as_object_mut().expect("object");
        obj.remove("spec");
        obj.remove("translation");
        v
    }
}

fn parabolic_degrees(d: &QDivisor) -> DegreeSet {
    match parabolic_horizontal(d) {
        Some((m, e0)) => DegreeSet {
            residue: e0,
            modulus: m,
            e_min: 1,
            empty: false,
            zero_admissible: m == 1,
        },
        None => DegreeSet::none(),
    }
}

pub fn classify(spec: &SurfaceSpec) -> Result<ClassificationReport> {
    let (canon, translation) = canonical_form(spec);
    let ml = ml_invariant(&canon);
    let mut report = ClassificationReport {
        spec: spec.clone(),
        translation,
        normalized_spec: canon.clone(),
        grading: Grading::Elliptic,
        d_plus: None,
        d_minus: None,
        lnd: LndSummary {
            positive: DegreeSet::none(),
            negative: DegreeSet::none(),
            fiber_type: false,
            toric_exponents: None,
        },
        ml,
        ml_generator_degree: ml.generator_degree(),
        mm: mm_invariant(&canon),
        presentation: None,
        fibers: vec![],
        singularities: vec![],
        smooth: true,
        sl2: None,
        model: recognize_homogeneous(&canon),
        toric: toric_type(&canon),
    };
    match &canon {
        SurfaceSpec::Elliptic { d, e_prime } => {
            let (x, y) = elliptic_lnd(*d, *e_prime)?;
            let exp = |l: &Lnd| match l {
                Lnd::EllipticToric { e, .. } => *e,
                _ => unreachable!(),
            };
            report.lnd.toric_exponents = Some((exp(&x), exp(&y)));
            report.smooth = *d == 1;
        }
        SurfaceSpec::Parabolic { divisor } => {
            report.grading = Grading::Parabolic;
            report.d_plus = Some(denom_index(divisor));
            report.lnd.positive = parabolic_degrees(divisor);
            report.lnd.fiber_type = true;
            report.smooth = divisor.is_integral();
        }
        SurfaceSpec::Hyperbolic(pair) => {
            report.grading = Grading::Hyperbolic;
            report.d_plus = Some(denom_index(pair.d_plus()));
            report.d_minus = Some(denom_index(pair.d_minus()));
            if positive_lnd_exists(pair) {
                report.lnd.positive = admissible_degrees(pair)?;
            }
            if positive_lnd_exists(&pair.reverse()) {
                report.lnd.negative = admissible_degrees(&pair.reverse())?;
            }
            report.presentation = presentation(pair).ok();
            report.fibers = fibers(pair);
            report.singularities = singular_points(pair);
            report.smooth = report.singularities.iter().all(|s| s.smooth);
            report.sl2 = recognize_sl2(pair);
        }
    }
    Ok(report)
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |o: Option<String>| o.unwrap_or_else(|| "-".into());
        writeln!(f, "surface:        {}", self.spec)?;
        writeln!(f, "normal form:    {}", self.normalized_spec)?;
        if !self.translation.is_zero() {
            writeln!(f, "translation:    t -> {}", shifted("t", &self.translation))?;
        }
        writeln!(f, "d_plus:         {}", opt(self.d_plus.map(|x| x.to_string())))?;
        writeln!(f, "d_minus:        {}", opt(self.d_minus.map(|x| x.to_string())))?;
        writeln!(f, "LND degrees +:  {}", self.lnd.positive)?;
        if self.grading == Grading::Hyperbolic {
            writeln!(f, "LND degrees -:  {}", self.lnd.negative)?;
        }
        if self.lnd.fiber_type {
            writeln!(f, "fiber type LND: degree -1")?;
        }
        if let Some((a, b)) = self.lnd.toric_exponents {
            writeln!(f, "toric LNDs:     X^{a}·d/dY, Y^{b}·d/dX")?;
        }
        writeln!(f, "ML:             {}", self.ml)?;
        writeln!(f, "MM:             {}", opt(self.mm.map(|x| x.to_string())))?;
        writeln!(f, "presentation:   {}", opt(self.presentation.as_ref().map(|p| p.to_string())))?;
        for fib in &self.fibers {
            match fib.delta {
                Some(delta) => writeln!(
                    f,
                    "fiber at {}:    m+ = {}, m- = {}, delta = {}",
                    fib.point, fib.m_plus, fib.m_minus, delta
                )?,
                None => writeln!(
                    f,
                    "fiber at {}:    single orbit, m+ = {}, m- = {}",
                    fib.point, fib.m_plus, fib.m_minus
                )?,
            }
        }
        for s in &self.singularities {
            if !s.smooth {
                writeln!(f, "singular point: over {} of order {}", s.point, s.order)?;
            }
        }
        writeln!(f, "smooth:         {}", self.smooth)?;
        writeln!(f, "model:          {}", opt(self.model.map(|m| m.to_string())))?;
        write!(
            f,
            "toric:          {}",
            opt(self.toric.map(|t| format!("V({},{})", t.d, t.e_prime)))
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(plus: &[(i64, i64, i64, i64)], minus: &[(i64, i64, i64, i64)]) -> DivisorPair {
        DivisorPair::new(QDivisor::from_fracs(plus), QDivisor::from_fracs(minus)).unwrap()
    }

    fn dani(d: i64) -> DivisorPair {
        pair(&[], &[(0, 1, -1, d), (-1, 1, -1, d)])
    }

    fn quadric() -> DivisorPair {
        pair(&[], &[(1, 1, -1, 1), (-1, 1, -1, 1)])
    }

    fn dihedral(d: i64) -> DivisorPair {
        pair(&[], &[(0, 1, -d, 1)])
    }

    #[test]
    fn fiber_examples() {
        let f = fiber_structure(&quadric(), &Point::int(1));
        assert_eq!(
            (f.m_plus, f.e_plus, f.m_minus, f.e_minus, f.delta),
            (1, Some(0), -1, Some(1), Some(1))
        );
        for d in 1..6 {
            assert_eq!(fiber_structure(&dihedral(d), &Point::int(0)).delta, Some(d as u64));
        }
        let bertin = pair(&[(0, 1, 1, 2)], &[(0, 1, -1, 2), (-1, 1, -1, 2)]);
        assert!(!fiber_structure(&bertin, &Point::int(0)).degenerate);
    }

    #[test]
    fn ruling_examples() {
        assert_eq!(
            ruling_divisor(&dani(2)).unwrap(),
            vec![(Point::int(-1), 1), (Point::int(0), 1)]
        );
        assert_eq!(ruling_divisor(&dihedral(4)).unwrap(), vec![(Point::int(0), 4)]);
        assert_eq!(ruling_divisor(&pair(&[], &[])).unwrap(), vec![]);
        assert_eq!(ruling_divisor(&dani(2).reverse()), Err(Error::NoPositiveLnd));
    }

    #[test]
    fn ruling_matches_delta() {
        let pairs = [
            dani(3),
            dihedral(5),
            pair(&[(0, 1, -2, 5)], &[(0, 1, 1, 5), (1, 1, -1, 3), (2, 1, -2, 1)]),
            pair(&[(0, 1, -1, 2)], &[(0, 1, -1, 2)]),
        ];
        for p in pairs {
            let n = normalize_pair(&p);
            let dplus = denom_index(n.d_plus());
            for (a, mult) in ruling_divisor(&p).unwrap() {
                let delta = fiber_structure(&p, &a).delta.unwrap();
                let expected = if n.d_plus().coeff(&a).is_zero() { dplus * delta } else { delta };
                assert_eq!(mult, expected, "{p} at {a}");
            }
        }
    }

    #[test]
    fn singular_examples() {
        for d in 2..7 {
            let s = singular_points(&dihedral(d));
            assert_eq!(s.len(), 1);
            assert_eq!((s[0].order, s[0].smooth), (d as u64, false));
            assert_eq!(s[0].chart_type, Some((d as u64, 1 % d as u64)));
        }
        assert!(singular_points(&dihedral(1))[0].smooth);
    }

    #[test]
    fn ml_examples() {
        assert_eq!(ml_invariant(&SurfaceSpec::elliptic(3, 1).unwrap()), MlResult::Trivial);
        assert_eq!(
            ml_invariant(&SurfaceSpec::Parabolic {
                divisor: QDivisor::from_fracs(&[(0, 1, -1, 2), (1, 1, -1, 2)])
            }),
            MlResult::PolynomialRing { generator_degree: 0 }
        );
        assert_eq!(
            ml_invariant(&SurfaceSpec::Hyperbolic(dani(2))),
            MlResult::PolynomialRing { generator_degree: 1 }
        );
        assert_eq!(ml_invariant(&SurfaceSpec::Hyperbolic(dani(1))), MlResult::Trivial);
        assert_eq!(
            ml_invariant(&SurfaceSpec::Hyperbolic(pair(&[(0, 1, -1, 3)], &[(0, 1, 1, 3)]))),
            MlResult::LaurentRing
        );
        let two_sided = pair(&[(0, 1, -1, 2), (1, 1, -1, 2)], &[(0, 1, -1, 2), (1, 1, -1, 2)]);
        assert_eq!(ml_invariant(&SurfaceSpec::Hyperbolic(two_sided)), MlResult::WholeRing);
    }

    #[test]
    fn mm_examples() {
        let h = |p: DivisorPair| mm_invariant(&SurfaceSpec::Hyperbolic(p));
        assert_eq!(h(quadric()), Some(2));
        assert_eq!(mm_equation(&quadric()), (1, Poly::from_ints(&[-1, 0, 1])));
        let conic = pair(&[(0, 1, 1, 2)], &[(0, 1, -1, 2), (1, 1, -1, 1)]);
        assert_eq!(h(conic), Some(4));
        for dp in 1..6 {
            let v = pair(&[(0, 1, -1, dp)], &[(0, 1, -1, dp)]);
            assert_eq!(h(v), Some(2 * dp as u64));
        }
        assert_eq!(h(dani(2)), None);
    }

    #[test]
    fn recognition_examples() {
        let r = |p: DivisorPair| recognize_homogeneous(&SurfaceSpec::Hyperbolic(p));
        assert_eq!(r(pair(&[], &[(0, 1, -1, 1)])), Some(Model::Plane));
        assert_eq!(r(pair(&[(0, 1, -1, 3)], &[(0, 1, 1, 3)])), Some(Model::LineTimesTorus));
        assert_eq!(r(quadric()), Some(Model::Quadric));
        assert_eq!(r(dani(1)), Some(Model::Quadric));
        assert_eq!(r(dihedral(2)), Some(Model::VeroneseCone(2)));
        for d in 3..8 {
            assert_eq!(r(dihedral(d)), None);
        }
        assert_eq!(
            recognize_homogeneous(&SurfaceSpec::elliptic(4, 1).unwrap()),
            Some(Model::VeroneseCone(4))
        );
    }

    #[test]
    fn toric_types() {
        let t = |p: DivisorPair| toric_type(&SurfaceSpec::Hyperbolic(p)).map(|x| (x.d, x.e_prime));
        for d in 2..7 {
            assert_eq!(t(dihedral(d)), Some((d as u64, d as u64 - 1)));
        }
        for dp in 1..5 {
            assert_eq!(t(pair(&[(0, 1, -1, dp)], &[(0, 1, -1, dp)])), Some((2 * dp as u64, 1)));
        }
        assert_eq!(t(quadric()), None);
        assert_eq!(t(pair(&[(0, 1, -1, 3)], &[(0, 1, 1, 3)])), None);
    }

    #[test]
    fn report_json_fields() {
        let rep = classify(&SurfaceSpec::Hyperbolic(dani(2))).unwrap();
        let j = rep.to_json();
        assert_eq!(j["ml"], "polynomial_ring");
        assert_eq!(j["ml_generator_degree"], 1);
        assert_eq!(j["grading"], "hyperbolic");
        assert_eq!(j["smooth"], true);
    }
}
