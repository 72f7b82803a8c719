//! Q-divisors on the affine line and the pairs `(D+, D-)` that describe
//! hyperbolic surfaces.
//!
//! A pair is only meaningful up to two moves: adding an integral divisor
//! to `D+` while subtracting it from `D-` (a *shift*), and an affine change
//! of the coordinate `t`. [`normalize_pair`] picks the shift representative
//! with `D+` coefficients in `(-1, 0]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{lcm_denominators, Rat};

/// A rational point of the affine line.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point(pub Rat);

impl Point {
    pub fn int(n: i64) -> Self {
        Point(Rat::int(n))
    }
}

impl From<Rat> for Point {
    fn from(r: Rat) -> Self {
        Point(r)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl std::str::FromStr for Point {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .parse::<Rat>()
            .map(Point)
            .map_err(|_| Error::NonRationalPoint(s.to_string()))
    }
}

/// A finite Q-linear combination of points, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QDivisor {
    terms: BTreeMap<Point, Rat>,
}

impl QDivisor {
    pub fn zero() -> Self {
        QDivisor::default()
    }

    /// Sums coefficients of repeated points and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, Rat)>) -> Self {
        let mut out = QDivisor::zero();
        for (p, c) in terms {
            out.add_term(Point(p), &c);
        }
        out
    }

    /// Convenience for literals: `[(point_num, point_den, coeff_num, coeff_den)]`.
    pub fn from_fracs(terms: &[(i64, i64, i64, i64)]) -> Self {
        QDivisor::from_terms(
            terms
                .iter()
                .map(|&(a, b, c, d)| (Rat::new(a, b), Rat::new(c, d))),
        )
    }

    /// `c·[p]`.
    pub fn single(p: Rat, c: Rat) -> Self {
        QDivisor::from_terms([(p, c)])
    }

    pub fn add_term(&mut self, p: Point, c: &Rat) {
        let entry = self.terms.entry(p).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coeff(&self, p: &Point) -> Rat {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn coeff_at(&self, p: &Rat) -> Rat {
        self.coeff(&Point(p.clone()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Point, &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Point> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Rat {
        self.terms.values().cloned().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Rat::is_integer)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.terms.values().all(|c| !c.is_positive())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QDivisor::from_terms(self.terms.iter().map(|(p, v)| (p.0.clone(), v * c)))
    }

    /// Coefficient-wise ceiling.
    pub fn ceil(&self) -> Self {
        QDivisor::from_terms(
            self.terms
                .iter()
                .map(|(p, v)| (p.0.clone(), Rat::from(v.ceil()))),
        )
    }

    /// Points where the coefficient is not an integer.
    pub fn fractional_support(&self) -> Vec<Point> {
        self.terms
            .iter()
            .filter(|(_, v)| !v.is_integer())
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Relabels points by `a ↦ map(a)`.
    pub fn map_points(&self, map: &AffineMap) -> Self {
        QDivisor::from_terms(self.terms.iter().map(|(p, v)| (map.apply(&p.0), v.clone())))
    }

    pub fn translate(&self, c: &Rat) -> Self {
        self.map_points(&AffineMap::translation(c.clone()))
    }
}

impl std::ops::Add for &QDivisor {
    type Output = QDivisor;
    fn add(self, rhs: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c);
        }
        out
    }
}

impl std::ops::Neg for &QDivisor {
    type Output = QDivisor;
    fn neg(self) -> QDivisor {
        self.scale(&Rat::int(-1))
    }
}

impl std::ops::Sub for &QDivisor {
    type Output = QDivisor;
    fn sub(self, rhs: &QDivisor) -> QDivisor {
        self + &(-rhs)
    }
}

impl fmt::Display for QDivisor {
    /// Renders as `-1/2[0] - [1]`; the zero divisor is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "[{p}]")?;
            } else {
                write!(f, "{a}[{p}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QDivisor({self})")
    }
}

impl Serialize for QDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(String, String)> = self
            .terms
            .iter()
            .map(|(p, c)| (p.to_string(), c.to_string()))
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QDivisor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Vec::<(String, String)>::deserialize(d)?;
        let mut out = QDivisor::zero();
        for (p, c) in raw {
            let p: Point = p.parse().map_err(D::Error::custom)?;
            let c: Rat = c.parse().map_err(D::Error::custom)?;
            if out.terms.contains_key(&p) {
                return Err(D::Error::custom(format!("point {p} listed twice")));
            }
            out.add_term(p, &c);
        }
        Ok(out)
    }
}

/// The smallest `d >= 1` with `d·D` integral.
pub fn denom_index(d: &QDivisor) -> u64 {
    lcm_denominators(d.terms.values())
        .to_u64()
        .expect("denominator index out of range")
}

/// `D = floor + frac` with every `frac` coefficient in `[0, 1)`.
pub fn floor_frac(d: &QDivisor) -> (QDivisor, QDivisor) {
    let floor = QDivisor::from_terms(
        d.terms
            .iter()
            .map(|(p, v)| (p.0.clone(), Rat::from(v.floor()))),
    );
    let frac = QDivisor::from_terms(d.terms.iter().map(|(p, v)| (p.0.clone(), v.fract())));
    (floor, frac)
}

/// A pair `(D+, D-)` with `D+ + D- <= 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DivisorPair {
    d_plus: QDivisor,
    d_minus: QDivisor,
}

impl DivisorPair {
    pub fn new(d_plus: QDivisor, d_minus: QDivisor) -> Result<Self> {
        let sum = &d_plus + &d_minus;
        if let Some((p, _)) = sum.terms().find(|(_, c)| c.is_positive()) {
            return Err(Error::PositiveSum(p.clone()));
        }
        Ok(DivisorPair { d_plus, d_minus })
    }

    pub fn d_plus(&self) -> &QDivisor {
        &self.d_plus
    }

    pub fn d_minus(&self) -> &QDivisor {
        &self.d_minus
    }

    pub fn sum(&self) -> QDivisor {
        &self.d_plus + &self.d_minus
    }

    /// Union of the supports of both divisors.
    pub fn support(&self) -> Vec<Point> {
        let mut s = self.d_plus.support();
        s.extend(self.d_minus.support());
        s.sort();
        s.dedup();
        s
    }

    /// `(D-, D+)`: the same ring with the grading reversed.
    pub fn reverse(&self) -> Self {
        DivisorPair {
            d_plus: self.d_minus.clone(),
            d_minus: self.d_plus.clone(),
        }
    }

    /// `(D+ + z, D- - z)`; `z` must be integral.
    pub fn shift(&self, z: &QDivisor) -> Self {
        assert!(z.is_integral(), "shift by a non-integral divisor");
        DivisorPair {
            d_plus: &self.d_plus + z,
            d_minus: &self.d_minus - z,
        }
    }

    pub fn map_points(&self, map: &AffineMap) -> Self {
        DivisorPair {
            d_plus: self.d_plus.map_points(map),
            d_minus: self.d_minus.map_points(map),
        }
    }

    pub fn translate(&self, c: &Rat) -> Self {
        self.map_points(&AffineMap::translation(c.clone()))
    }
}

impl fmt::Display for DivisorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d_plus, self.d_minus)
    }
}

impl fmt::Debug for DivisorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DivisorPair{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    d_plus: QDivisor,
    d_minus: QDivisor,
}

impl Serialize for DivisorPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PairRepr {
            d_plus: self.d_plus.clone(),
            d_minus: self.d_minus.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PairRepr::deserialize(d)?;
        DivisorPair::new(r.d_plus, r.d_minus).map_err(serde::de::Error::custom)
    }
}

/// `a ↦ scale·a + offset` with `scale != 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineMap {
    pub scale: Rat,
    pub offset: Rat,
}

impl AffineMap {
    pub fn new(scale: Rat, offset: Rat) -> Self {
        assert!(!scale.is_zero(), "affine map with zero scale");
        AffineMap { scale, offset }
    }

    pub fn identity() -> Self {
        AffineMap::new(Rat::one(), Rat::zero())
    }

    pub fn translation(offset: Rat) -> Self {
        AffineMap::new(Rat::one(), offset)
    }

    pub fn apply(&self, a: &Rat) -> Rat {
        &self.scale * a + &self.offset
    }

    pub fn inverse(&self) -> Self {
        let s = self.scale.recip();
        let o = -(&self.offset * &s);
        AffineMap::new(s, o)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> Self {
        AffineMap::new(
            &self.scale * &other.scale,
            &self.scale * &other.offset + &self.offset,
        )
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a -> {}*a + {}", self.scale, self.offset)
    }
}

/// The shift representative `(D+ - ⌈D+⌉, D- + ⌈D+⌉)`.
pub fn normalize_pair(pair: &DivisorPair) -> DivisorPair {
    let c = pair.d_plus.ceil();
    pair.shift(&-&c)
}

pub fn shift_equivalent(p1: &DivisorPair, p2: &DivisorPair) -> bool {
    normalize_pair(p1) == normalize_pair(p2)
}

/// An affine map `g` with `g(p1)` shift equivalent to `p2`, if one exists.
///
/// Support points are labelled by their normalized coefficients; a map is
/// pinned down by where it sends two points, so only label-preserving
/// images of two points of `p1` need checking.
pub fn affine_equivalent(p1: &DivisorPair, p2: &DivisorPair) -> Option<AffineMap> {
    let n1 = normalize_pair(p1);
    let n2 = normalize_pair(p2);
    let s1 = n1.support();
    let s2 = n2.support();
    if s1.len() != s2.len() {
        return None;
    }
    let label = |n: &DivisorPair, p: &Point| (n.d_plus.coeff(p), n.d_minus.coeff(p));
    let accept = |g: AffineMap| (n1.map_points(&g) == n2).then_some(g);
    match s1.len() {
        0 => Some(AffineMap::identity()),
        1 => accept(AffineMap::translation(&s2[0].0 - &s1[0].0)),
        _ => {
            let (x0, x1) = (&s1[0], &s1[1]);
            let (l0, l1) = (label(&n1, x0), label(&n1, x1));
            for y0 in s2.iter().filter(|y| label(&n2, y) == l0) {
                for y1 in s2.iter().filter(|y| *y != y0 && label(&n2, y) == l1) {
                    let scale = (&y1.0 - &y0.0) / (&x1.0 - &x0.0);
                    let offset = &y0.0 - &(&scale * &x0.0);
                    if let Some(g) = accept(AffineMap::new(scale, offset)) {
                        return Some(g);
                    }
                }
            }
            None
        }
    }
}
