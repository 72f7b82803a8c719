use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::{rational_linear_factorization, Poly};
use super::rat::Rat;
use crate::error::{Error, Result};

/// A reduced rational function `num / den` in `t`.
///
/// Invariants:
/// - `den` is monic,
/// - `gcd(num, den) = 1`,
/// - zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading();
        RatFunc {
            num: num.scale(&lead.recip()),
            den: den.monic(),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from(Poly::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from(Poly::constant(c))
    }

    /// `(t - a)^n` for any integer `n`.
    pub fn linear_power(a: &Rat, n: i64) -> Self {
        let lin = Poly::linear(a).pow(n.unsigned_abs() as u32);
        if n >= 0 {
            RatFunc::from(lin)
        } else {
            RatFunc {
                num: Poly::one(),
                den: lin,
            }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.recip() } else { self.clone() };
        let m = n.unsigned_abs() as u32;
        RatFunc {
            num: base.num.pow(m),
            den: base.den.pow(m),
        }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den)
    }

    /// `f(t + c)`.
    pub fn translate(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        RatFunc::new(self.num.translate(c), self.den.translate(c))
    }

    /// Order of vanishing at `a` (negative for a pole). Panics on zero.
    pub fn ord_at(&self, a: &Rat) -> i64 {
        self.num.ord_at(a) as i64 - self.den.ord_at(a) as i64
    }

    /// Rational poles with their orders.
    ///
    /// Fails with [`Error::IrrationalLocus`] when the denominator has a
    /// factor without rational roots.
    pub fn rational_poles(&self) -> Result<Vec<(Rat, u32)>> {
        let f = rational_linear_factorization(&self.den)?;
        if !f.splits() {
            return Err(Error::IrrationalLocus);
        }
        Ok(f.roots)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        RatFunc::constant(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from(&self.num * &rhs.num);
        }
        // Both sides are reduced, so cancelling across is enough.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        let lead = den.leading();
        RatFunc {
            num: num.scale(&lead.recip()),
            den: den.monic(),
        }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.recip()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);
