use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::rat::{lcm_denominators, Rat};
use crate::error::{Error, Result};

/// A univariate polynomial over Q in the variable `t`.
///
/// Coefficients are stored lowest degree first with no trailing zeros, so
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::from_coeffs(coeffs)
    }

    /// `t - a`.
    pub fn linear(a: &Rat) -> Self {
        Poly::from_coeffs(vec![-a, Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&x| Rat::int(x)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_unitary(&self) -> bool {
        self.leading().is_one()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Euclidean division: `self = q·rhs + r` with `deg r < deg rhs`.
    pub fn div_rem(&self, rhs: &Poly) -> (Poly, Poly) {
        let dr = rhs.degree().expect("division by the zero polynomial");
        let lead_inv = rhs.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(ds) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if ds < dr {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); ds - dr + 1];
        for i in (0..=ds - dr).rev() {
            let c = &rem[i + dr] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, rc) in rhs.coeffs.iter().enumerate() {
                rem[i + j] -= &(&c * rc);
            }
            q[i] = c;
        }
        rem.truncate(dr);
        (Poly::from_coeffs(q), Poly::from_coeffs(rem))
    }

    /// Exact quotient; panics if `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Poly) -> Poly {
        let (q, r) = self.div_rem(rhs);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        if (self.is_constant() && !self.is_zero()) || (rhs.is_constant() && !rhs.is_zero()) {
            return Poly::one();
        }
        for (p, q) in [(self, rhs), (rhs, self)] {
            if let Some((a, m)) = p.as_linear_power() {
                if q.is_zero() {
                    return p.monic();
                }
                return Poly::linear(&a).pow(m.min(q.ord_at(&a)));
            }
        }
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(a, m)` when `self = c·(t - a)^m` with `m >= 1`.
    pub fn as_linear_power(&self) -> Option<(Rat, u32)> {
        let m = self.degree().filter(|m| *m >= 1)?;
        let lead = self.leading();
        let a = -(self.coeff(m - 1) / (&lead * Rat::int(m as i64)));
        if self.coeffs[0] != &lead * &(-&a).pow(m as i32) {
            return None;
        }
        (&Poly::linear(&a).pow(m as u32).scale(&lead) == self).then_some((a, m as u32))
    }

    /// `self(t + c)`.
    pub fn translate(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return self.clone();
        }
        let shift = Poly::from_coeffs(vec![c.clone(), Rat::one()]);
        self.compose(&shift)
    }

    /// `self(q(t))`, by Horner's rule.
    pub fn compose(&self, q: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * q) + &Poly::constant(c.clone()))
    }

    /// `self(t^d)`.
    pub fn inflate(&self, d: usize) -> Poly {
        assert!(d >= 1);
        let mut out = vec![Rat::zero(); self.coeffs.len().saturating_sub(1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * d] = c.clone();
        }
        Poly::from_coeffs(out)
    }

    /// Multiplicity of `a` as a root (`0` when `a` is not a root).
    /// Panics on the zero polynomial.
    pub fn ord_at(&self, a: &Rat) -> u32 {
        assert!(!self.is_zero(), "order of the zero polynomial");
        if a.is_zero() {
            return self.coeffs.iter().take_while(|c| c.is_zero()).count() as u32;
        }
        // Repeated exact division by b·t - a over the integers; by Gauss's
        // lemma the quotient of an integer polynomial stays integral.
        let l = lcm_denominators(&self.coeffs);
        let mut p: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let (num, den) = (a.numer(), a.denom());
        let mut m = 0;
        'outer: while p.len() > 1 {
            let mut q = vec![BigInt::zero(); p.len() - 1];
            let mut carry = BigInt::zero();
            for i in (1..p.len()).rev() {
                let (quot, rem) = (&p[i] + &carry).div_rem(den);
                if !rem.is_zero() {
                    break 'outer;
                }
                carry = num * &quot;
                q[i - 1] = quot;
            }
            if !(&p[0] + &carry).is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    /// Integer coefficients with content one, positive leading coefficient.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let l = lcm_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Output of [`rational_linear_factorization`]:
/// `P = leading · Π (t - a)^m · remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: Rat,
    /// Distinct rational roots, sorted increasingly, with multiplicities.
    pub roots: Vec<(Rat, u32)>,
    /// Unitary, with no rational roots.
    pub remainder: Poly,
}

impl Factorization {
    pub fn splits(&self) -> bool {
        self.remainder.is_one()
    }

    pub fn expand(&self) -> Poly {
        self.roots.iter().fold(
            self.remainder.scale(&self.leading),
            |acc, (a, m)| &acc * &Poly::linear(a).pow(*m),
        )
    }
}

/// Splits off every rational linear factor of `p`.
///
/// Candidate roots come from the rational root theorem applied to the
/// primitive integer multiple of `p`.
pub fn rational_linear_factorization(p: &Poly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let leading = p.leading();
    let mut rest = p.monic();
    let mut roots = Vec::new();

    let zero_mult = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        rest = Poly::from_coeffs(rest.coeffs[zero_mult..].to_vec());
        roots.push((Rat::zero(), zero_mult as u32));
    }

    if !rest.is_constant() {
        for r in rational_roots_squarefree(&rest.div_exact(&rest.gcd(&rest.derivative()))) {
            let m = rest.ord_at(&r);
            rest = rest.div_exact(&Poly::linear(&r).pow(m));
            roots.push((r, m));
        }
    }
    roots.sort();
    Ok(Factorization {
        leading,
        roots,
        remainder: rest.monic(),
    })
}

/// Rational roots of a square-free polynomial.
///
/// Real roots are isolated exactly with a Sturm sequence until each interval
/// is narrower than `1/a_n^2`, where `a_n` is the leading coefficient of the
/// primitive integer form. Every rational root has denominator dividing
/// `a_n`, and two distinct such rationals are at least `1/a_n^2` apart, so
/// the simplest rational in the interval is the only possible candidate.
fn rational_roots_squarefree(p: &Poly) -> Vec<Rat> {
    let ints = p.primitive_integer();
    let an = Rat::from(ints.last().unwrap().abs());
    let lead = p.leading();
    let bound = p.coeffs.iter().map(|c| (c / &lead).abs()).max().unwrap() + Rat::int(2);
    let min_width = (&an * &an).recip();

    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_constant() {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    let variations = |x: &Rat| {
        let signs: Vec<i32> = chain
            .iter()
            .map(|q| q.eval(x).signum())
            .filter(|s| *s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };

    let mut out = Vec::new();
    let lo = -&bound;
    let (vlo, vhi) = (variations(&lo), variations(&bound));
    let mut stack = vec![(lo, vlo, bound, vhi)];
    while let Some((lo, vlo, hi, vhi)) = stack.pop() {
        let count = vlo - vhi;
        if count == 0 {
            continue;
        }
        if count == 1 && &hi - &lo < min_width {
            let r = simplest_between(&lo, &hi);
            if r > lo && r < hi && p.eval(&r).is_zero() {
                out.push(r);
            }
            continue;
        }
        let mid = (&lo + &hi) * Rat::new(1, 2);
        let vmid = variations(&mid);
        if p.eval(&mid).is_zero() {
            out.push(mid.clone());
            // roots in (lo, mid] include mid itself
            stack.push((lo, vlo, mid.clone(), vmid + 1));
        } else {
            stack.push((lo, vlo, mid.clone(), vmid));
        }
        stack.push((mid, vmid, hi, vhi));
    }
    out.sort();
    out
}

/// The rational with the smallest denominator in `[x, y]`, `x <= y`.
fn simplest_between(x: &Rat, y: &Rat) -> Rat {
    let fl = Rat::from(x.floor());
    if &fl == x {
        return fl;
    }
    let next = &fl + Rat::one();
    if &next <= y {
        return next;
    }
    &fl + simplest_between(&(y - &fl).recip(), &(x - &fl).recip()).recip()
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Poly {
    /// Renders as `3/2*t^2-t+1`; the zero polynomial is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rat {
    (1..=n as i64).fold(Rat::one(), |acc, i| acc * Rat::int(i))
}
