//! Seeded random generators shared by the integration tests.

#![allow(dead_code)]

use dpd_core::dpdring::graded_generator;
use dpd_core::{DivisorPair, GradedElement, Poly, QDivisor, Rat, SurfaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(rng: &mut ChaCha8Rng, num: i64, max_den: i64) -> Rat {
    Rat::new(rng.gen_range(-num..=num), rng.gen_range(1..=max_den))
}

pub fn nonneg_rat(rng: &mut ChaCha8Rng, num: i64, max_den: i64) -> Rat {
    Rat::new(rng.gen_range(0..=num), rng.gen_range(1..=max_den))
}

const POINTS: [(i64, i64); 8] = [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1), (-1, 3), (5, 2)];

fn points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    let mut pool: Vec<Rat> = POINTS.iter().map(|(a, b)| Rat::new(*a, *b)).collect();
    let mut out = Vec::new();
    for _ in 0..n.min(pool.len()) {
        let i = rng.gen_range(0..pool.len());
        out.push(pool.swap_remove(i));
    }
    out
}

/// An arbitrary pair on up to four points.
pub fn pair(rng: &mut ChaCha8Rng) -> DivisorPair {
    let n = rng.gen_range(0..=4);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for p in points(rng, n) {
        let a = rat(rng, 6, 4);
        let slack = if rng.gen_bool(0.3) { Rat::zero() } else { nonneg_rat(rng, 5, 4) };
        minus.push((p.clone(), -&a - slack));
        plus.push((p, a));
    }
    DivisorPair::new(QDivisor::from_terms(plus), QDivisor::from_terms(minus)).unwrap()
}

/// A pair with a positive LND: `D+` has fractional part only at `0`.
/// Returns the pair with `D+ = -e'/d·[0]` together with `(d, e')`.
pub fn normal_pair(rng: &mut ChaCha8Rng) -> (DivisorPair, u64, u64) {
    let d = rng.gen_range(1..=6u64);
    let coprime: Vec<u64> = (0..d).filter(|e| num_integer::gcd(*e, d) == 1).collect();
    let e_prime = coprime[rng.gen_range(0..coprime.len())];
    let plus = QDivisor::single(Rat::zero(), Rat::new(-(e_prime as i64), d as i64));
    let mut minus = vec![(Rat::zero(), Rat::new(e_prime as i64, d as i64) - nonneg_rat(rng, 4, 3))];
    let extra = rng.gen_range(0..=2);
    for p in points(rng, extra + 1).into_iter().filter(|p| !p.is_zero()).take(extra) {
        minus.push((p, -nonneg_rat(rng, 4, 3)));
    }
    let pair = DivisorPair::new(plus, QDivisor::from_terms(minus)).unwrap();
    (pair, d, e_prime)
}

pub fn poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| rat(rng, 5, 3)).collect())
}

/// A random element of the ring: `Σ P_n(t)·g_n` over a few degrees `n`.
pub fn element(rng: &mut ChaCha8Rng, spec: &SurfaceSpec, max_deg: i64) -> GradedElement {
    let mut out = GradedElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let low = if matches!(spec, SurfaceSpec::Hyperbolic(_)) { -max_deg } else { 0 };
        let n = rng.gen_range(low..=max_deg);
        let g = graded_generator(spec, n).unwrap();
        out = &out + &g.mul_homogeneous(&poly(rng, 3).into(), 0);
    }
    out
}
