//! Graded rings `A = ⊕ A_n u^n` inside `C(t)[u, u^-1]`.
//!
//! For a hyperbolic pair, `A_n = {f : div f + n·D+ >= 0}` when `n >= 0` and
//! `A_n = {f : div f + |n|·D- >= 0}` when `n < 0`. A parabolic ring only has
//! the non-negative half. Each `A_n` is a free `C[t]`-module of rank one,
//! generated by `Π (t - p)^⌈-|n|·D(p)⌉`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::divisor::{denom_index, normalize_pair, DivisorPair, Point, QDivisor};
use crate::error::{Error, Result};
use crate::exactmath::{gcd_u64, rational_linear_factorization, shifted, Poly, Rat, RatFunc};

/// The three kinds of C*-surfaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub enum SurfaceSpec {
    /// The toric surface `A^2 / Z_d`, weights `(1, e')`.
    Elliptic { d: u64, e_prime: u64 },
    /// `A_0[D]`, non-negatively graded.
    Parabolic { divisor: QDivisor },
    Hyperbolic(DivisorPair),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum SpecRepr {
    Elliptic { d: u64, e_prime: u64 },
    Parabolic { divisor: QDivisor },
    Hyperbolic(DivisorPair),
}

impl TryFrom<SpecRepr> for SurfaceSpec {
    type Error = Error;
    fn try_from(r: SpecRepr) -> Result<Self> {
        Ok(match r {
            SpecRepr::Elliptic { d, e_prime } => SurfaceSpec::elliptic(d, e_prime)?,
            SpecRepr::Parabolic { divisor } => SurfaceSpec::Parabolic { divisor },
            SpecRepr::Hyperbolic(p) => SurfaceSpec::Hyperbolic(p),
        })
    }
}

impl From<SurfaceSpec> for SpecRepr {
    fn from(s: SurfaceSpec) -> Self {
        match s {
            SurfaceSpec::Elliptic { d, e_prime } => SpecRepr::Elliptic { d, e_prime },
            SurfaceSpec::Parabolic { divisor } => SpecRepr::Parabolic { divisor },
            SurfaceSpec::Hyperbolic(p) => SpecRepr::Hyperbolic(p),
        }
    }
}

/// The values of exactly the keys `names`, in order.
fn fields<'a>(body: &'a Value, names: &[&str]) -> Result<Vec<&'a Value>> {
    let obj = body.as_object().ok_or_else(|| Error::parse(0, "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(Error::parse(0, format!("unknown field {k:?}")));
    }
    names
        .iter()
        .map(|n| obj.get(*n).ok_or_else(|| Error::parse(0, format!("missing field {n:?}"))))
        .collect()
}

/// A divisor array `[["point", "coefficient"], ...]`.
fn divisor_from_value(v: &Value) -> Result<QDivisor> {
    let items = v.as_array().ok_or_else(|| Error::parse(0, "a divisor is an array of pairs"))?;
    let mut out = QDivisor::zero();
    for item in items {
        let (p, c) = match item.as_array().map(Vec::as_slice) {
            Some([Value::String(p), Value::String(c)]) => (p, c),
            _ => return Err(Error::parse(0, "divisor terms are [\"point\", \"coefficient\"] string pairs")),
        };
        let p: Point = p.parse()?;
        if !out.coeff(&p).is_zero() {
            return Err(Error::parse(0, format!("point {p} listed twice")));
        }
        out.add_term(p, &c.parse()?);
    }
    Ok(out)
}

impl SurfaceSpec {
    /// Checks `0 <= e' < d` and `gcd(d, e') = 1`.
    pub fn elliptic(d: u64, e_prime: u64) -> Result<Self> {
        if d == 0 || e_prime >= d || gcd_u64(d, e_prime) != 1 {
            return Err(Error::NotSmallGroup { d, e_prime });
        }
        Ok(SurfaceSpec::Elliptic { d, e_prime })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::parse(e.column(), e.to_string()))?;
        Self::from_value(&v)
    }

    /// Reads a spec document. Unlike plain deserialization this keeps
    /// domain errors such as `PositiveSum` apart from format errors.
    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::parse(0, "a spec is a JSON object"))?;
        let [(kind, body)] = obj.iter().collect::<Vec<_>>()[..] else {
            return Err(Error::parse(0, "a spec has exactly one of the keys elliptic, parabolic, hyperbolic"));
        };
        match kind.as_str() {
            "elliptic" => {
                let f = fields(body, &["d", "e_prime"])?;
                let int = |v: &Value, name: &str| {
                    v.as_u64().ok_or_else(|| Error::parse(0, format!("{name} must be a non-negative integer")))
                };
                SurfaceSpec::elliptic(int(f[0], "d")?, int(f[1], "e_prime")?)
            }
            "parabolic" => {
                let f = fields(body, &["divisor"])?;
                Ok(SurfaceSpec::Parabolic { divisor: divisor_from_value(f[0])? })
            }
            "hyperbolic" => {
                let f = fields(body, &["d_plus", "d_minus"])?;
                Ok(SurfaceSpec::Hyperbolic(DivisorPair::new(
                    divisor_from_value(f[0])?,
                    divisor_from_value(f[1])?,
                )?))
            }
            other => Err(Error::parse(0, format!("unknown spec kind {other:?}"))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialization cannot fail")
    }

    pub fn pair(&self) -> Option<&DivisorPair> {
        match self {
            SurfaceSpec::Hyperbolic(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceSpec::Elliptic { d, e_prime } => write!(f, "elliptic V({d},{e_prime})"),
            SurfaceSpec::Parabolic { divisor } => write!(f, "parabolic A0[{divisor}]"),
            SurfaceSpec::Hyperbolic(p) => write!(f, "hyperbolic A0[{}, {}]", p.d_plus(), p.d_minus()),
        }
    }
}

/// A finite sum `Σ f_n(t) u^n` with nonzero rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedElement {
    terms: BTreeMap<i64, RatFunc>,
}

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement::default()
    }

    pub fn one() -> Self {
        GradedElement::homogeneous(RatFunc::one(), 0)
    }

    pub fn homogeneous(f: RatFunc, n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(n, f);
        }
        GradedElement { terms }
    }

    pub fn constant(c: Rat) -> Self {
        GradedElement::homogeneous(RatFunc::constant(c), 0)
    }

    pub fn t() -> Self {
        GradedElement::homogeneous(RatFunc::from(Poly::t()), 0)
    }

    pub fn u_pow(n: i64) -> Self {
        GradedElement::homogeneous(RatFunc::one(), n)
    }

    /// `c · t^alpha · u^beta`.
    pub fn monomial(c: Rat, alpha: i64, beta: i64) -> Self {
        let f = RatFunc::linear_power(&Rat::zero(), alpha).scale(&c);
        GradedElement::homogeneous(f, beta)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, RatFunc)>) -> Self {
        let mut out = GradedElement::zero();
        for (n, f) in terms {
            out.add_term(n, &f);
        }
        out
    }

    fn add_term(&mut self, n: i64, f: &RatFunc) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.get(&n) {
            Some(g) => g + f,
            None => f.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&n);
        } else {
            self.terms.insert(n, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatFunc)> {
        self.terms.iter().map(|(n, f)| (*n, f))
    }

    pub fn component(&self, n: i64) -> RatFunc {
        self.terms.get(&n).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// The degree, if the element is a single nonzero homogeneous piece.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        match self.terms.len() {
            1 => self.terms.keys().next().copied(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        GradedElement::from_terms(self.terms.iter().map(|(n, f)| (*n, f.scale(c))))
    }

    /// Multiplies every coefficient by `g` and shifts degrees by `shift`.
    pub fn mul_homogeneous(&self, g: &RatFunc, shift: i64) -> Self {
        GradedElement::from_terms(self.terms.iter().map(|(n, f)| (n + shift, f * g)))
    }

    /// Applies `f ↦ h(f, n)` to each component, keeping degrees.
    pub fn map_components(&self, h: impl Fn(&RatFunc, i64) -> (i64, RatFunc)) -> Self {
        GradedElement::from_terms(self.terms.iter().map(|(n, f)| h(f, *n)))
    }

    /// The Euler derivation `Σ f_n u^n ↦ Σ n f_n u^n`.
    pub fn euler(&self) -> Self {
        self.map_components(|f, n| (n, f.scale(&Rat::int(n))))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(GradedElement::one(), |acc, _| &acc * self)
    }

    /// Inverse of a single homogeneous term.
    pub fn recip(&self) -> Option<Self> {
        let n = self.homogeneous_degree()?;
        Some(GradedElement::homogeneous(self.component(n).recip(), -n))
    }
}

impl std::ops::Add for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (n, f) in &rhs.terms {
            out.add_term(*n, f);
        }
        out
    }
}

impl std::ops::Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        self.scale(&Rat::int(-1))
    }
}

impl std::ops::Sub for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &GradedElement {
    type Output = GradedElement;
    fn mul(self, rhs: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for (m, f) in &self.terms {
            for (n, g) in &rhs.terms {
                out.add_term(m + n, &(f * g));
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr for GradedElement {
            type Output = GradedElement;
            fn $m(self, rhs: GradedElement) -> GradedElement {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

fn is_atomic(s: &str) -> bool {
    !s.get(1..).unwrap_or("").contains(['+', '-', '/', '('])
}

impl fmt::Display for GradedElement {
    /// Canonical text in the element syntax, e.g. `(t^2+t)*u^-2 + 2*t+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (n, g)) in self.terms.iter().enumerate() {
            let c = g.to_string();
            let term = match *n {
                0 => c,
                _ if g.is_one() => format!("u^{n}"),
                _ if is_atomic(&c) => format!("{c}*u^{n}"),
                _ => format!("({c})*u^{n}"),
            };
            match (i, term.strip_prefix('-')) {
                (0, _) => write!(f, "{term}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedElement({self})")
    }
}

impl Serialize for GradedElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `Π (t - p)^⌈-|n|·D(p)⌉`.
pub fn generator_coefficient(d: &QDivisor, n: i64) -> RatFunc {
    let m = Rat::int(n.abs());
    d.terms().fold(RatFunc::one(), |acc, (p, c)| {
        let e = (-(&m * c)).ceil_i64();
        &acc * &RatFunc::linear_power(&p.0, e)
    })
}

/// The generator of `A_n` as a `C[t]`-module.
pub fn graded_generator(spec: &SurfaceSpec, n: i64) -> Result<GradedElement> {
    let d = match spec {
        SurfaceSpec::Hyperbolic(p) if n >= 0 => p.d_plus(),
        SurfaceSpec::Hyperbolic(p) => p.d_minus(),
        SurfaceSpec::Parabolic { divisor } if n >= 0 => divisor,
        SurfaceSpec::Parabolic { .. } => return Err(Error::NegativeDegreeParabolic(n)),
        SurfaceSpec::Elliptic { .. } => {
            return Err(Error::Unsupported("graded generators of an elliptic ring".into()))
        }
    };
    Ok(GradedElement::homogeneous(generator_coefficient(d, n), n))
}

/// Membership of `x` in the ring.
///
/// Elliptic rings use the encoding `X = t`, `Y = u`: an element belongs to
/// `C[X, Y]^{Z_d}` when it is a polynomial whose monomials `X^a Y^b` satisfy
/// `a + e'·b ≡ 0 (mod d)`.
pub fn contains(spec: &SurfaceSpec, x: &GradedElement) -> Result<bool> {
    if let SurfaceSpec::Elliptic { d, e_prime } = spec {
        return Ok(x.terms().all(|(n, f)| {
            n >= 0
                && f.is_polynomial()
                && f.num().coeffs().iter().enumerate().all(|(a, c)| {
                    c.is_zero() || (a as i128 + *e_prime as i128 * n as i128).rem_euclid(*d as i128) == 0
                })
        }));
    }
    for (n, f) in x.terms() {
        let d = match spec {
            SurfaceSpec::Hyperbolic(p) if n >= 0 => p.d_plus(),
            SurfaceSpec::Hyperbolic(p) => p.d_minus(),
            SurfaceSpec::Parabolic { divisor } if n >= 0 => divisor,
            _ => return Ok(false),
        };
        if !component_in(d, n, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn component_in(d: &QDivisor, n: i64, f: &RatFunc) -> Result<bool> {
    // A_n = g_n·C[t]. The generator has only rational zeros and poles, so a
    // polynomial quotient also rules out irrational poles of f.
    if (f / &generator_coefficient(d, n)).is_polynomial() {
        return Ok(true);
    }
    let m = Rat::int(n.abs());
    let mut points: Vec<Point> = d.support();
    points.extend(f.rational_poles()?.into_iter().map(|(p, _)| Point(p)));
    Ok(points
        .iter()
        .all(|p| !(Rat::int(f.ord_at(&p.0)) + &m * &d.coeff(p)).is_negative()))
}

/// `D+ + D- = 0` with `{D+}` concentrated in at most one point: the
/// surface is then `A^1 × C*`.
pub fn is_line_cross_torus(pair: &DivisorPair) -> bool {
    pair.sum().is_zero() && normalize_pair(pair).d_plus().fractional_support().len() <= 1
}

/// A cyclic-cover presentation of a pair whose `{D+}` lives at one point.
///
/// With `s^d = t`, `A` is the `Z_d`-invariant part of the normalization of
/// `u^k·v = P(s)`, where `Z_d` acts on `(s, u, v)` with weights `(1, e', 0)`
/// and `P(s) = Q(s^d)·s^(k·e' + d·l)`, `Q(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub k: u64,
    pub p: Poly,
    pub d: u64,
    pub e_prime: u64,
    pub l: i64,
    pub q: Poly,
    pub zd_weights: (u64, u64, u64),
    /// The `{D+}` point that was moved to `0`.
    pub translation: Rat,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p.to_string().replace('t', "s");
        write!(
            f,
            "u^{} v = {p}  (s^{} = {}, Z_{} weights ({}, {}, {}), Q = {}, l = {})",
            self.k,
            self.d,
            shifted("t", &self.translation),
            self.d,
            self.zd_weights.0,
            self.zd_weights.1,
            self.zd_weights.2,
            self.q,
            self.l
        )
    }
}

/// The point carrying `{D+}` after normalization, if any.
pub(crate) fn plus_center(normalized: &DivisorPair) -> Result<Option<Point>> {
    let frac = normalized.d_plus().fractional_support();
    match frac.len() {
        0 => Ok(None),
        1 => Ok(frac.into_iter().next()),
        _ => Err(Error::FractionalPlusSpread(frac)),
    }
}

pub fn presentation(pair: &DivisorPair) -> Result<Presentation> {
    let n = normalize_pair(pair);
    let c = plus_center(&n)?.map(|p| p.0).unwrap_or_default();
    let n = n.translate(&-&c);
    let zero = Point::default();
    let d = denom_index(n.d_plus());
    let e_prime = int(&-(Rat::int(d as i64) * n.d_plus().coeff(&zero))) as u64;
    let k = denom_index(n.d_minus());
    let kr = Rat::int(k as i64);
    let l = int(&-(&kr * &n.d_minus().coeff(&zero)));
    let q = n
        .d_minus()
        .terms()
        .filter(|(p, _)| **p != zero)
        .fold(Poly::one(), |acc, (p, c)| {
            &acc * &Poly::linear(&p.0).pow(int(&-(&kr * c)) as u32)
        });
    let s_exp = k as i64 * e_prime as i64 + d as i64 * l;
    debug_assert!(s_exp >= 0);
    let p = &q.inflate(d as usize) * &Poly::monomial(Rat::one(), s_exp as usize);
    Ok(Presentation {
        k,
        p,
        d,
        e_prime,
        l,
        q,
        zd_weights: (1, e_prime, 0),
        translation: c,
    })
}

fn int(r: &Rat) -> i64 {
    r.to_i64().expect("expected an integer")
}

/// The pair `(0, -div(P)/k)` of the surface `u^k·v = P(t)`.
pub fn from_equation(k: u64, p: &Poly) -> Result<DivisorPair> {
    if k == 0 {
        return Err(Error::BadParams("k must be positive".into()));
    }
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !p.is_unitary() {
        return Err(Error::NotUnitary(p.leading().to_string()));
    }
    let f = rational_linear_factorization(p)?;
    if !f.splits() {
        return Err(Error::NonRationalRoots);
    }
    let kr = Rat::int(k as i64);
    let mut d_minus = QDivisor::zero();
    for (a, r) in &f.roots {
        let g = gcd_u64(k, *r as u64);
        if g > 1 {
            return Err(Error::GcdViolation {
                k,
                root: Point(a.clone()),
                gcd: g,
            });
        }
        d_minus.add_term(Point(a.clone()), &(-Rat::int(*r as i64) / &kr));
    }
    DivisorPair::new(QDivisor::zero(), d_minus)
}
