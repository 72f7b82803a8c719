//! Homogeneous locally nilpotent derivations.
//!
//! After normalizing a pair and moving the point of `{D+}` to `0`, every
//! homogeneous LND of positive degree `e` is, up to a constant,
//!
//! ```text
//! ∂ = s^k w^e (d·s·∂/∂s - e'·w·∂/∂w),   e·e' - 1 = k·d,
//! ```
//!
//! where `D+ = -e'/d·[0]` in the coordinates `(s, w)`. On a monomial this is
//! `∂(f w^m) = (d·s·f' - e'·m·f)·s^k·w^(m+e)`. A [`Frame`] records the change
//! of coordinates between the input pair and this normal form, so
//! [`apply`] works on elements written in the original `(t, u)`.

use std::fmt;

use serde::Serialize;

use crate::divisor::{denom_index, normalize_pair, DivisorPair, Point, QDivisor};
use crate::dpdring::{contains, generator_coefficient, graded_generator, plus_center, GradedElement, SurfaceSpec};
use crate::error::{Error, Result, Violation};
use crate::exactmath::{factorial, mod_inverse, shifted, Poly, Rat, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    fn sigma(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Coordinates `(s, w)` with `s = t - center` and `u^σ = phi(t)·w`, where
/// `σ = ±1` is the sign of the derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub center: Rat,
    pub phi: RatFunc,
}

impl Frame {
    pub fn is_trivial(&self) -> bool {
        self.center.is_zero() && self.phi.is_one()
    }

    fn to_normal(&self, x: &GradedElement, sign: Sign) -> GradedElement {
        let s = sign.sigma();
        x.map_components(|f, n| (s * n, (f * &self.phi.pow(s * n)).translate(&self.center)))
    }

    fn back_from_normal(&self, y: &GradedElement, sign: Sign) -> GradedElement {
        let s = sign.sigma();
        let back = -&self.center;
        y.map_components(|g, m| (s * m, &g.translate(&back) * &self.phi.pow(-m)))
    }
}

/// Toric data of a divisor whose fractional part sits at one point.
struct NormalData {
    frame: Frame,
    d: u64,
    e_prime: u64,
}

fn normal_data(d_plus: &QDivisor) -> Result<NormalData> {
    let ceil = d_plus.ceil();
    let normalized = d_plus - &ceil;
    let frac = normalized.fractional_support();
    if frac.len() > 1 {
        return Err(Error::FractionalPlusSpread(frac));
    }
    let center = frac.first().map(|p| p.0.clone()).unwrap_or_default();
    let d = denom_index(&normalized);
    let e_prime = (-(Rat::int(d as i64) * normalized.coeff_at(&center)))
        .to_i64()
        .expect("integral") as u64;
    let phi = ceil
        .terms()
        .fold(RatFunc::one(), |acc, (p, c)| &acc * &RatFunc::linear_power(&p.0, c.to_i64().unwrap()));
    Ok(NormalData {
        frame: Frame { center, phi },
        d,
        e_prime,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorizontalLnd {
    /// Absolute degree; the degree in the original grading is `sign·e`.
    pub e: u64,
    pub d: u64,
    pub e_prime: u64,
    pub k: i64,
    pub sign: Sign,
    pub scale: Rat,
    pub frame: Frame,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axis {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lnd {
    Horizontal(HorizontalLnd),
    /// `∂(f u^n) = n·g·f·u^(n-1)`, of degree `-1`.
    FiberType { g: RatFunc },
    /// On `C[X, Y]`: axis `X` is `X^e ∂/∂Y`, axis `Y` is `Y^e ∂/∂X`.
    /// Elements are encoded with `X = t`, `Y = u`.
    EllipticToric { d: u64, e: u64, axis: Axis },
}

impl Lnd {
    /// Degree with respect to the `u`-grading; `None` for elliptic toric LNDs.
    pub fn degree(&self) -> Option<i64> {
        match self {
            Lnd::Horizontal(h) => Some(h.sign.sigma() * h.e as i64),
            Lnd::FiberType { .. } => Some(-1),
            Lnd::EllipticToric { .. } => None,
        }
    }

    pub fn with_scale(&self, c: Rat) -> Lnd {
        match self {
            Lnd::Horizontal(h) => Lnd::Horizontal(HorizontalLnd { scale: c, ..h.clone() }),
            Lnd::FiberType { g } => Lnd::FiberType { g: g.scale(&c) },
            other => other.clone(),
        }
    }
}

impl fmt::Display for Lnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lnd::Horizontal(h) => {
                write!(
                    f,
                    "t^{} u^{} ({}·t·d/dt - {}·u·d/du) · {}",
                    h.k, h.e, h.d, h.e_prime, h.scale
                )?;
                let mut notes = Vec::new();
                if h.sign == Sign::Minus {
                    notes.push("grading reversed, u -> u^-1".to_string());
                }
                if !h.frame.center.is_zero() {
                    notes.push(format!("t -> {}", shifted("t", &h.frame.center)));
                }
                if !h.frame.phi.is_one() {
                    notes.push(format!("u -> u/({})", h.frame.phi));
                }
                if !notes.is_empty() {
                    write!(f, "  [in coordinates {}]", notes.join(", "))?;
                }
                Ok(())
            }
            Lnd::FiberType { g } => write!(f, "({g})·d/du"),
            Lnd::EllipticToric { e, axis: Axis::X, .. } => write!(f, "X^{e}·d/dY"),
            Lnd::EllipticToric { e, axis: Axis::Y, .. } => write!(f, "Y^{e}·d/dX"),
        }
    }
}

/// The degrees `e` carrying a homogeneous LND on one side of a pair.
///
/// Positive members are `e >= e_min` with `e ≡ residue (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSet {
    pub residue: u64,
    pub modulus: u64,
    pub e_min: u64,
    pub empty: bool,
    /// Degree `0` is admissible (only for `A^1 × C*` with `d = 1`).
    pub zero_admissible: bool,
}

impl DegreeSet {
    pub fn none() -> Self {
        DegreeSet {
            residue: 0,
            modulus: 1,
            e_min: 1,
            empty: true,
            zero_admissible: false,
        }
    }

    pub fn contains(&self, e: i64) -> bool {
        if self.empty || e < 0 {
            return false;
        }
        if e == 0 {
            return self.zero_admissible;
        }
        e as u64 >= self.e_min && e as u64 % self.modulus == self.residue
    }

    /// Smallest positive member.
    pub fn min_positive(&self) -> Option<u64> {
        if self.empty {
            return None;
        }
        let m = self.modulus;
        let base = self.e_min + (m + self.residue - self.e_min % m) % m;
        Some(base)
    }
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return write!(f, "none");
        }
        if self.modulus == 1 {
            write!(f, "e >= {}", self.e_min)?;
        } else {
            write!(f, "e ≡ {} (mod {}), e >= {}", self.residue, self.modulus, self.e_min)?;
        }
        if self.zero_admissible {
            write!(f, ", or e = 0")?;
        }
        Ok(())
    }
}

/// `{D+}` (after normalizing) is supported in at most one point.
pub fn positive_lnd_exists(pair: &DivisorPair) -> bool {
    normalize_pair(pair).d_plus().fractional_support().len() <= 1
}

/// `(D-, D+)`.
pub fn reverse(pair: &DivisorPair) -> DivisorPair {
    pair.reverse()
}

struct Bounds {
    d: u64,
    e_prime: u64,
    /// `(point, least admissible e)` for every point where `D+ + D- != 0`.
    bounds: Vec<(Point, u64)>,
    zero_ok: bool,
}

fn bounds(pair: &DivisorPair) -> Result<Bounds> {
    let n = normalize_pair(pair);
    let center = plus_center(&n)?;
    let nd = normal_data(n.d_plus())?;
    let dr = Rat::int(nd.d as i64);
    let sum = n.sum();
    let bounds = sum
        .terms()
        .map(|(p, s)| {
            let b = match &center {
                Some(c) if c == p => -(&dr * s).recip(),
                _ => -s.recip(),
            };
            (p.clone(), b.ceil_i64().max(1) as u64)
        })
        .collect();
    Ok(Bounds {
        d: nd.d,
        e_prime: nd.e_prime,
        bounds,
        zero_ok: nd.d == 1 && sum.is_zero(),
    })
}

/// The positive degrees of homogeneous LNDs of `A0[D+, D-]`.
pub fn admissible_degrees(pair: &DivisorPair) -> Result<DegreeSet> {
    let b = bounds(pair)?;
    let residue = mod_inverse(b.e_prime, b.d)?;
    let e_min = b.bounds.iter().map(|(_, m)| *m).max().unwrap_or(1).max(1);
    Ok(DegreeSet {
        residue,
        modulus: b.d,
        e_min,
        empty: false,
        zero_admissible: b.zero_ok,
    })
}

/// Conditions violated by the degree `e >= 0` on the positive side.
pub fn violations(pair: &DivisorPair, e: u64) -> Result<Vec<Violation>> {
    let b = bounds(pair)?;
    if e == 0 {
        return Ok(if b.zero_ok { vec![] } else { vec![Violation::ZeroDegree] });
    }
    let mut out = Vec::new();
    if (e as u128 * b.e_prime as u128) % b.d as u128 != 1 % b.d as u128 {
        out.push(Violation::Congruence {
            e,
            e_prime: b.e_prime,
            d: b.d,
        });
    }
    for (p, m) in b.bounds {
        if e < m {
            out.push(Violation::Bound { point: p, min: m });
        }
    }
    Ok(out)
}

/// The closed-form derivation of degree `e` for `d_plus`, built without
/// checking admissibility. When `e·e' - 1` is not divisible by `d` the
/// exponent `k` is rounded down, giving a derivation that cannot be an LND.
fn candidate_for(d_plus: &QDivisor, e: u64, sign: Sign) -> Result<HorizontalLnd> {
    let nd = normal_data(d_plus)?;
    let num = e as i64 * nd.e_prime as i64 - 1;
    Ok(HorizontalLnd {
        e,
        d: nd.d,
        e_prime: nd.e_prime,
        k: num.div_euclid(nd.d as i64),
        sign,
        scale: Rat::one(),
        frame: nd.frame,
    })
}

fn side(pair: &DivisorPair, e: i64) -> (DivisorPair, Sign) {
    if e >= 0 {
        (pair.clone(), Sign::Plus)
    } else {
        (pair.reverse(), Sign::Minus)
    }
}

/// The horizontal candidate of signed degree `e` for a pair, without any
/// admissibility check.
pub fn horizontal_candidate(pair: &DivisorPair, e: i64) -> Result<Lnd> {
    let (work, sign) = side(pair, e);
    Ok(Lnd::Horizontal(candidate_for(work.d_plus(), e.unsigned_abs(), sign)?))
}

/// The homogeneous LND of degree `e` (negative `e` uses the reversed
/// grading), unique up to [`Lnd::with_scale`].
pub fn build_horizontal(pair: &DivisorPair, e: i64) -> Result<Lnd> {
    let (work, _) = side(pair, e);
    let v = violations(&work, e.unsigned_abs())?;
    if !v.is_empty() {
        return Err(Error::InadmissibleDegree {
            degree: e,
            violations: v,
        });
    }
    horizontal_candidate(pair, e)
}

/// Horizontal LND of degree `e >= 0` on the parabolic ring `A0[D]`.
pub fn parabolic_horizontal_lnd(d: &QDivisor, e: u64) -> Result<Lnd> {
    let (dd, e0) = parabolic_horizontal(d).ok_or_else(|| {
        Error::FractionalPlusSpread(normalize_divisor(d).fractional_support())
    })?;
    if (e == 0 && dd != 1) || e % dd != e0 {
        let nd = normal_data(d)?;
        return Err(Error::InadmissibleDegree {
            degree: e as i64,
            violations: vec![Violation::Congruence {
                e,
                e_prime: nd.e_prime,
                d: dd,
            }],
        });
    }
    Ok(Lnd::Horizontal(candidate_for(d, e, Sign::Plus)?))
}

fn normalize_divisor(d: &QDivisor) -> QDivisor {
    d - &d.ceil()
}

/// Any homogeneous LND of the given degree on a parabolic or hyperbolic ring.
pub fn build_lnd(spec: &SurfaceSpec, degree: i64) -> Result<Lnd> {
    match spec {
        SurfaceSpec::Hyperbolic(p) => build_horizontal(p, degree),
        SurfaceSpec::Parabolic { divisor } if degree == -1 => Ok(fiber_lnd(divisor)),
        SurfaceSpec::Parabolic { divisor } if degree >= 0 => {
            parabolic_horizontal_lnd(divisor, degree as u64)
        }
        SurfaceSpec::Parabolic { .. } => Err(Error::InadmissibleDegree {
            degree,
            violations: vec![],
        }),
        SurfaceSpec::Elliptic { .. } => Err(Error::Unsupported(
            "use the toric LNDs of an elliptic surface".into(),
        )),
    }
}

/// One step of `∂` in the normal coordinates `(s, w)`.
fn normal_step(h: &HorizontalLnd, y: &GradedElement) -> GradedElement {
    let dr = Rat::int(h.d as i64);
    let ep = Rat::int(h.e_prime as i64);
    let s = RatFunc::from(Poly::t());
    let sk = RatFunc::linear_power(&Rat::zero(), h.k);
    y.map_components(|f, m| {
        if f.is_polynomial() && h.k >= 0 {
            // s^a w^m  ->  (d·a - e'·m)·s^(a+k) w^(m+e)
            let mut coeffs = vec![Rat::zero(); h.k as usize];
            coeffs.extend(f.num().coeffs().iter().enumerate().map(|(a, c)| {
                let w = h.d as i64 * a as i64 - h.e_prime as i64 * m;
                c * &(&h.scale * Rat::int(w))
            }));
            return (m + h.e as i64, Poly::from_coeffs(coeffs).into());
        }
        let lin = &(&s * &f.derivative()).scale(&dr) - &f.scale(&(&ep * Rat::int(m)));
        (m + h.e as i64, (&lin * &sk).scale(&h.scale))
    })
}

pub fn apply(lnd: &Lnd, x: &GradedElement) -> GradedElement {
    match lnd {
        Lnd::Horizontal(h) => h.frame.back_from_normal(&normal_step(h, &h.frame.to_normal(x, h.sign)), h.sign),
        Lnd::FiberType { g } => x.map_components(|f, n| (n - 1, (g * f).scale(&Rat::int(n)))),
        Lnd::EllipticToric { e, axis, .. } => {
            let te = RatFunc::linear_power(&Rat::zero(), *e as i64);
            match axis {
                Axis::X => x.map_components(|f, n| (n - 1, (&te * f).scale(&Rat::int(n)))),
                Axis::Y => x.map_components(|f, n| (n + *e as i64, f.derivative())),
            }
        }
    }
}

/// Least `N <= cap` with `∂^N(x) = 0`.
pub fn nilpotency_steps(lnd: &Lnd, spec: &SurfaceSpec, x: &GradedElement, cap: u64) -> Result<u64> {
    if !contains(spec, x)? {
        return Err(Error::NotInRing);
    }
    steps_unchecked(lnd, x, cap)
}

fn steps_unchecked(lnd: &Lnd, x: &GradedElement, cap: u64) -> Result<u64> {
    let mut y = x.clone();
    for n in 0..=cap {
        if y.is_zero() {
            return Ok(n);
        }
        y = apply(lnd, &y);
    }
    Err(Error::CapExceeded(cap))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessFailure {
    pub degree: i64,
    pub input: GradedElement,
    pub image: GradedElement,
    pub reason: String,
}

/// Outcome of the brute-force stabilization check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub degree: i64,
    pub verdict: bool,
    pub failures: Vec<WitnessFailure>,
    /// Set when no candidate derivation could be formed.
    pub note: Option<String>,
}

pub const DEFAULT_WINDOW: u64 = 8;

/// Builds the closed-form candidate of degree `e` ignoring admissibility and
/// checks, on `t` and on the generator of every `A_n` with
/// `|n| <= window + |e|`, that images stay in the ring and that iterates
/// vanish within the nilpotency cap.
pub fn stabilization_witness(pair: &DivisorPair, e: i64, window: u64) -> Witness {
    match horizontal_candidate(pair, e) {
        Ok(lnd) => witness_for(&SurfaceSpec::Hyperbolic(pair.clone()), &lnd, window),
        Err(err) => Witness {
            degree: e,
            verdict: false,
            failures: vec![],
            note: Some(err.to_string()),
        },
    }
}

/// Nilpotency cap for a window: `10·(N+1)·(2 + e' + d·(mass + points))`,
/// with `N` the largest tested degree and `mass` the sum of `⌈|coefficient|⌉`
/// over both divisors. This exceeds the step count of every tested element.
pub fn nilpotency_cap(spec: &SurfaceSpec, lnd: &Lnd, window: u64) -> u64 {
    let n = window + lnd.degree().unwrap_or(0).unsigned_abs();
    let divisors: Vec<&QDivisor> = match spec {
        SurfaceSpec::Hyperbolic(p) => vec![p.d_plus(), p.d_minus()],
        SurfaceSpec::Parabolic { divisor } => vec![divisor],
        SurfaceSpec::Elliptic { .. } => vec![],
    };
    let mass: u64 = divisors
        .iter()
        .flat_map(|d| d.terms())
        .map(|(_, c)| c.abs().ceil_i64() as u64 + 1)
        .sum();
    let (d, ep) = match lnd {
        Lnd::Horizontal(h) => (h.d, h.e_prime),
        Lnd::EllipticToric { d, .. } => (*d, 0),
        Lnd::FiberType { .. } => (1, 0),
    };
    10 * (n + 1) * (2 + ep + d * mass)
}

pub fn witness_for(spec: &SurfaceSpec, lnd: &Lnd, window: u64) -> Witness {
    let degree = lnd.degree().unwrap_or(0);
    let n_max = (window + degree.unsigned_abs()) as i64;
    let cap = nilpotency_cap(spec, lnd, window);
    let low = match spec {
        SurfaceSpec::Hyperbolic(_) => -n_max,
        _ => 0,
    };
    let mut tested = vec![(0, GradedElement::t())];
    for n in low..=n_max {
        if let Ok(g) = graded_generator(spec, n) {
            tested.push((n, g));
        }
    }
    let mut failures = Vec::new();
    for (n, x) in tested {
        let image = apply(lnd, &x);
        if let Some(reason) = orbit_failure(spec, lnd, &x, cap) {
            failures.push(WitnessFailure {
                degree: n,
                input: x,
                image,
                reason,
            });
        }
    }
    Witness {
        degree,
        verdict: failures.is_empty(),
        failures,
        note: None,
    }
}

/// Iterates `lnd` on `x` until it vanishes, checking that every iterate
/// stays in the ring. `None` means `x` passed.
fn orbit_failure(spec: &SurfaceSpec, lnd: &Lnd, x: &GradedElement, cap: u64) -> Option<String> {
    let first = apply(lnd, x);
    if first.is_zero() {
        return None;
    }
    match contains(spec, &first) {
        Ok(true) => {}
        Ok(false) => return Some("image leaves the ring".into()),
        Err(e) => return Some(e.to_string()),
    }
    match lnd {
        Lnd::Horizontal(h) => normal_orbit_failure(spec, h, h.frame.to_normal(&first, h.sign), cap),
        _ => {
            let mut y = first;
            for step in 2..=cap {
                y = apply(lnd, &y);
                if y.is_zero() {
                    return None;
                }
                match contains(spec, &y) {
                    Ok(true) => {}
                    Ok(false) => return Some(format!("iterate {step} leaves the ring")),
                    Err(e) => return Some(e.to_string()),
                }
            }
            Some(Error::CapExceeded(cap).to_string())
        }
    }
}

/// Continues an orbit in normal coordinates. The frame is a graded
/// isomorphism, so an iterate lies in the ring when every component has
/// no poles off the support and, at each support point, order at least the
/// exponent of the normal image of the matching generator.
fn normal_orbit_failure(spec: &SurfaceSpec, h: &HorizontalLnd, mut y: GradedElement, cap: u64) -> Option<String> {
    // a parabolic ring is the nonnegative half over a single divisor
    let (plus, minus, support) = match spec {
        SurfaceSpec::Hyperbolic(pair) => (pair.d_plus(), Some(pair.d_minus()), pair.support()),
        SurfaceSpec::Parabolic { divisor } => (divisor, None, divisor.support()),
        SurfaceSpec::Elliptic { .. } => {
            return Some(Error::Unsupported("horizontal LND on an elliptic ring".into()).to_string())
        }
    };
    let points: Vec<(Rat, Rat, Rat, i64)> = support
        .into_iter()
        .map(|p| {
            (
                &p.0 - &h.frame.center,
                plus.coeff_at(&p.0),
                minus.map_or_else(Rat::zero, |d| d.coeff_at(&p.0)),
                h.frame.phi.ord_at(&p.0),
            )
        })
        .collect();
    let sigma = h.sign.sigma();
    // Every monomial s^a w^m of the expansion at infinity has its weight
    // d·a - e'·m shifted by the same amount per step, and a term dies exactly
    // when its weight is zero. Terms never merge, so an orbit outliving the
    // top weight never vanishes.
    let top = y
        .terms()
        .map(|(m, f)| {
            let a = f.num().degree().unwrap_or(0) as i64 - f.den().degree().unwrap_or(0) as i64;
            h.d as i64 * a - h.e_prime as i64 * m
        })
        .max()
        .unwrap_or(0);
    let cap = cap.min(top.max(0) as u64 + 2);
    for step in 2..=cap {
        y = normal_step(h, &y);
        if y.is_zero() {
            return None;
        }
        for (m, f) in y.terms() {
            let n = sigma * m;
            if n < 0 && minus.is_none() {
                return Some(format!("iterate {step} leaves the ring"));
            }
            let den = f.den();
            let mut pole_mass = 0i64;
            for (q, c_plus, c_minus, phi_ord) in &points {
                let c = if n >= 0 { c_plus } else { c_minus };
                let need = (-(Rat::int(n.abs()) * c)).ceil_i64() + m * phi_ord;
                pole_mass += den.ord_at(q) as i64;
                if f.ord_at(q) < need {
                    return Some(format!("iterate {step} leaves the ring"));
                }
            }
            if pole_mass != den.degree().unwrap_or(0) as i64 {
                return Some(format!("iterate {step} leaves the ring"));
            }
        }
    }
    Some(Error::CapExceeded(cap).to_string())
}

/// Generator of the kernel: for a horizontal LND of degree `±e` with toric
/// data `d`, the generator of `A_(±d)`.
pub fn kernel_generator(spec: &SurfaceSpec, lnd: &Lnd) -> Result<GradedElement> {
    match (spec, lnd) {
        (SurfaceSpec::Elliptic { d, .. }, Lnd::EllipticToric { axis: Axis::X, .. }) => {
            Ok(GradedElement::monomial(Rat::one(), *d as i64, 0))
        }
        (SurfaceSpec::Elliptic { d, .. }, Lnd::EllipticToric { axis: Axis::Y, .. }) => {
            Ok(GradedElement::monomial(Rat::one(), 0, *d as i64))
        }
        (SurfaceSpec::Elliptic { .. }, _) | (_, Lnd::EllipticToric { .. }) => {
            Err(Error::Unsupported("kernel of a mismatched LND".into()))
        }
        (_, Lnd::FiberType { .. }) => Ok(GradedElement::t()),
        (_, Lnd::Horizontal(h)) => graded_generator(spec, h.sign.sigma() * h.d as i64),
    }
}

/// The fiber-type LND of `A0[D]`: `∂(f u^n) = n·g·f·u^(n-1)` with
/// `g = Π (t - p)^⌈D(p)⌉`.
pub fn fiber_lnd(d: &QDivisor) -> Lnd {
    let g = generator_coefficient(&-d, 1);
    Lnd::FiberType { g }
}

/// `(d, e0)` for a parabolic divisor whose fractional part sits at one
/// point: horizontal LNDs exist exactly in degrees `e ≡ e0 (mod d)`.
pub fn parabolic_horizontal(d: &QDivisor) -> Option<(u64, u64)> {
    let nd = normal_data(d).ok()?;
    Some((nd.d, mod_inverse(nd.e_prime, nd.d).ok()?))
}

/// The two toric LNDs of `A^2 / Z_d` with weights `(1, e')`:
/// `X^e'·∂/∂Y` and `Y^e·∂/∂X` with `e·e' ≡ 1 (mod d)`.
pub fn elliptic_lnd(d: u64, e_prime: u64) -> Result<(Lnd, Lnd)> {
    SurfaceSpec::elliptic(d, e_prime)?;
    let e = mod_inverse(e_prime, d).map_err(|_| Error::NotSmallGroup { d, e_prime })?;
    Ok((
        Lnd::EllipticToric {
            d,
            e: e_prime,
            axis: Axis::X,
        },
        Lnd::EllipticToric { d, e, axis: Axis::Y },
    ))
}

/// `u_α = P(t)u^-1 + Σ_j P^(j)(t)·α^j/j!·u^(j·e - 1)`, the kernel generator
/// of the conjugate of the negative LND by `exp(α·∂+)` on `u·v = P(t)`.
pub fn conjugate_kernel(p: &Poly, e: u64, alpha: &Rat) -> GradedElement {
    let mut out = GradedElement::zero();
    let mut deriv = p.clone();
    let mut j = 0u32;
    while !deriv.is_zero() {
        let c = alpha.pow(j as i32) / factorial(j);
        let term = GradedElement::homogeneous(RatFunc::from(deriv.scale(&c)), j as i64 * e as i64 - 1);
        out = &out + &term;
        deriv = deriv.derivative();
        j += 1;
    }
    out
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

    fn mono(a: i64, b: i64) -> GradedElement {
        GradedElement::monomial(Rat::one(), a, b)
    }

    fn poly(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn existence() {
        assert!(positive_lnd_exists(&dani(3)));
        assert!(!positive_lnd_exists(&reverse(&dani(3))));
        let quadric = pair(&[], &[(1, 1, -1, 1), (-1, 1, -1, 1)]);
        assert!(positive_lnd_exists(&quadric));
        assert!(positive_lnd_exists(&reverse(&quadric)));
    }

    #[test]
    fn degree_sets() {
        for d in 1..7 {
            let s = admissible_degrees(&dani(d)).unwrap();
            assert_eq!((s.modulus, s.e_min), (1, d as u64));
        }
        for (dd, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 5)] {
            let b = pair(&[(0, 1, 1, n)], &[(0, 1, -1, n), (-1, 1, -1, n * (dd - 1))]);
            let s = admissible_degrees(&b).unwrap();
            assert_eq!((s.residue, s.modulus), ((n - 1) as u64, n as u64));
            assert_eq!(s.e_min, (n * (dd - 1)) as u64);
            assert_eq!(s.min_positive(), Some((n * dd - 1) as u64));
        }
        // odd Veronese pair with d = 5, e' = 3
        let v = pair(&[(0, 1, -3, 5)], &[(0, 1, 2, 5)]);
        let s = admissible_degrees(&v).unwrap();
        assert_eq!((s.residue, s.e_min, s.min_positive()), (2, 1, Some(2)));
        let spread = pair(&[(0, 1, -1, 2), (1, 1, -1, 2)], &[]);
        assert!(matches!(admissible_degrees(&spread), Err(Error::FractionalPlusSpread(_))));
    }

    #[test]
    fn build_examples() {
        let Lnd::Horizontal(h) = build_horizontal(&dani(2), 2).unwrap() else {
            panic!()
        };
        assert_eq!((h.e, h.d, h.e_prime, h.k), (2, 1, 0, -1));
        match build_horizontal(&dani(2), 1) {
            Err(Error::InadmissibleDegree { violations, .. }) => {
                assert!(violations.contains(&Violation::Bound { point: Point::int(0), min: 2 }));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn apply_examples() {
        let lnd = build_horizontal(&dani(2), 2).unwrap();
        assert_eq!(apply(&lnd, &GradedElement::t()), mono(0, 2));
        let x = GradedElement::homogeneous(poly(&[0, 1, 1]).into(), -2);
        assert_eq!(apply(&lnd, &x), GradedElement::homogeneous(poly(&[1, 2]).into(), 0));

        let ver = pair(&[(0, 1, -1, 2)], &[(0, 1, -1, 2)]);
        let Lnd::Horizontal(h) = build_horizontal(&ver, 1).unwrap() else { panic!() };
        assert_eq!(h.k, 0);
        let lnd = Lnd::Horizontal(h);
        let y = apply(&lnd, &mono(1, 1));
        assert_eq!(y, mono(1, 2));
        assert!(apply(&lnd, &y).is_zero());
    }

    #[test]
    fn negative_side_uses_reversed_grading() {
        let quadric = pair(&[], &[(1, 1, -1, 1), (-1, 1, -1, 1)]);
        let lnd = build_horizontal(&quadric, -1).unwrap();
        assert_eq!(lnd.degree(), Some(-1));
        let spec = SurfaceSpec::Hyperbolic(quadric.clone());
        let v = graded_generator(&spec, -1).unwrap();
        assert!(apply(&lnd, &v).is_zero());
        let w = witness_for(&spec, &lnd, 8);
        assert!(w.verdict, "{w:?}");
    }

    #[test]
    fn nilpotency_example() {
        let lnd = build_horizontal(&dani(2), 2).unwrap();
        let spec = SurfaceSpec::Hyperbolic(dani(2));
        // t^3: d·α - e'·β + 1 = 4
        assert_eq!(nilpotency_steps(&lnd, &spec, &mono(3, 0), 100), Ok(4));
        assert_eq!(nilpotency_steps(&lnd, &spec, &mono(3, 0), 2), Err(Error::CapExceeded(2)));
        assert_eq!(nilpotency_steps(&lnd, &spec, &mono(0, -1), 100), Err(Error::NotInRing));
    }

    #[test]
    fn witness_examples() {
        assert!(stabilization_witness(&dani(2), 2, 8).verdict);
        let w = stabilization_witness(&dani(2), 1, 8);
        assert!(!w.verdict);
        assert!(!w.failures.is_empty());
        assert!(stabilization_witness(&pair(&[], &[(0, 1, -3, 2)]), 1, 8).verdict);
    }

    #[test]
    fn kernel_examples() {
        let spec = SurfaceSpec::Hyperbolic(dani(3));
        let lnd = build_horizontal(&dani(3), 3).unwrap();
        assert_eq!(kernel_generator(&spec, &lnd).unwrap(), mono(0, 1));
        let conic = pair(&[(0, 1, -1, 2)], &[(0, 1, 1, 2), (1, 1, -1, 1)]);
        let spec = SurfaceSpec::Hyperbolic(conic.clone());
        let lnd = build_horizontal(&conic, 1).unwrap();
        let v = kernel_generator(&spec, &lnd).unwrap();
        assert_eq!(v, mono(1, 2));
        assert!(apply(&lnd, &v).is_zero());
        let dih = pair(&[], &[(0, 1, -3, 1)]);
        let lnd = build_horizontal(&dih, 1).unwrap();
        assert_eq!(kernel_generator(&SurfaceSpec::Hyperbolic(dih), &lnd).unwrap(), mono(0, 1));
    }

    #[test]
    fn fiber_examples() {
        let g = |d: QDivisor| match fiber_lnd(&d) {
            Lnd::FiberType { g } => g,
            _ => unreachable!(),
        };
        assert!(g(QDivisor::from_fracs(&[(0, 1, -1, 2)])).is_one());
        assert_eq!(g(QDivisor::from_fracs(&[(1, 1, 3, 2)])), poly(&[1, -2, 1]).into());
        assert_eq!(g(QDivisor::from_fracs(&[(0, 1, -1, 1)])), RatFunc::linear_power(&Rat::zero(), -1));
    }

    #[test]
    fn parabolic_and_elliptic() {
        assert_eq!(parabolic_horizontal(&QDivisor::from_fracs(&[(0, 1, -2, 5)])), Some((5, 3)));
        assert_eq!(parabolic_horizontal(&QDivisor::zero()), Some((1, 0)));
        assert_eq!(
            parabolic_horizontal(&QDivisor::from_fracs(&[(0, 1, -1, 2), (1, 1, -1, 3)])),
            None
        );
        let exps = |d, e| match elliptic_lnd(d, e).unwrap() {
            (Lnd::EllipticToric { e: a, .. }, Lnd::EllipticToric { e: b, .. }) => (a, b),
            _ => unreachable!(),
        };
        assert_eq!(exps(2, 1), (1, 1));
        assert_eq!(exps(1, 0), (0, 0));
        assert_eq!(exps(5, 2), (2, 3));
        assert_eq!(elliptic_lnd(4, 2), Err(Error::NotSmallGroup { d: 4, e_prime: 2 }));
    }

    #[test]
    fn conjugation_example() {
        let p = poly(&[0, 1, 1]);
        for alpha in [Rat::zero(), Rat::one(), Rat::int(2), Rat::new(1, 2)] {
            let ua = conjugate_kernel(&p, 1, &alpha);
            let expected = &(&GradedElement::homogeneous(p.clone().into(), -1)
                + &GradedElement::homogeneous(poly(&[1, 2]).into(), 0).scale(&alpha))
                + &GradedElement::u_pow(1).scale(&(&alpha * &alpha));
            assert_eq!(ua, expected);
        }
    }

    #[test]
    fn rendering() {
        let lnd = build_horizontal(&dani(2), 2).unwrap();
        assert_eq!(lnd.to_string(), "t^-1 u^2 (1·t·d/dt - 0·u·d/du) · 1");
    }
}
