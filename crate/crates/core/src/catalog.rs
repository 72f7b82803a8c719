//! Built-in worked examples with their expected invariants.
//!
//! Expected facts are stored rather than recomputed, so the golden tests
//! catch regressions in any of the formulas behind `classify`.

use serde::Serialize;

use crate::classify::{ClassificationReport, MlResult, Model, Sl2Model, ToricType};
use crate::divisor::{DivisorPair, QDivisor};
use crate::dpdring::SurfaceSpec;
use crate::error::{Error, Result};
use crate::exactmath::{Poly, Rat};

pub const NAMES: [&str; 7] = [
    "danielewski",
    "bertin",
    "veronese",
    "quadric",
    "conic_complement",
    "dihedral",
    "toric",
];

/// A partial report: only the fields that are set are checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExpectedFacts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smooth: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ml: Option<MlResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_positive_degree: Option<u64>,
    /// `(k, P)` of the relation `u^k v = P(s)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<(u64, Poly)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mm: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<Model>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sl2: Option<Sl2Model>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub toric: Option<ToricType>,
    /// Orders of the singular points, in order of their position.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_orders: Option<Vec<u64>>,
}

impl ExpectedFacts {
    /// Human-readable descriptions of every fact the report contradicts.
    pub fn mismatches(&self, report: &ClassificationReport) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |name: &str, ok: bool, want: String, got: String| {
            if !ok {
                out.push(format!("{name}: expected {want}, got {got}"));
            }
        };
        if let Some(s) = self.smooth {
            check("smooth", report.smooth == s, s.to_string(), report.smooth.to_string());
        }
        if let Some(ml) = self.ml {
            check("ml", report.ml == ml, format!("{ml:?}"), format!("{:?}", report.ml));
        }
        if let Some(e) = self.min_positive_degree {
            let got = report.lnd.positive.min_positive();
            check("min_positive_degree", got == Some(e), e.to_string(), format!("{got:?}"));
        }
        if let Some((k, p)) = &self.presentation {
            let got = report.presentation.as_ref().map(|x| (x.k, x.p.clone()));
            check(
                "presentation",
                got.as_ref().is_some_and(|(gk, gp)| gk == k && equal_up_to_translation(gp, p)),
                format!("u^{k} v = {p}"),
                format!("{got:?}"),
            );
        }
        if let Some(mm) = self.mm {
            check("mm", report.mm == Some(mm), mm.to_string(), format!("{:?}", report.mm));
        }
        if let Some(m) = self.model {
            check("model", report.model == Some(m), format!("{m:?}"), format!("{:?}", report.model));
        }
        if let Some(m) = self.sl2 {
            check("sl2", report.sl2 == Some(m), format!("{m:?}"), format!("{:?}", report.sl2));
        }
        if let Some(t) = self.toric {
            check("toric", report.toric == Some(t), format!("{t:?}"), format!("{:?}", report.toric));
        }
        if let Some(orders) = &self.singular_orders {
            let got: Vec<u64> = report
                .singularities
                .iter()
                .filter(|s| !s.smooth)
                .map(|s| s.order)
                .collect();
            check("singular_orders", &got == orders, format!("{orders:?}"), format!("{got:?}"));
        }
        out
    }
}

/// Whether `b(t) = a(t + c)` for some rational `c`. Reports place the
/// surface in a canonical position, so presentations agree only up to this.
pub fn equal_up_to_translation(a: &Poly, b: &Poly) -> bool {
    match (a.degree(), b.degree()) {
        (Some(n), Some(m)) if n == m && n > 0 && a.leading() == b.leading() => {
            let c = (b.coeff(n - 1) - a.coeff(n - 1)) / (Rat::int(n as i64) * a.leading());
            &a.translate(&c) == b
        }
        _ => a == b,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<u64>,
    pub spec: SurfaceSpec,
    pub expected: ExpectedFacts,
}

fn hyperbolic(plus: &[(i64, i64, i64, i64)], minus: &[(i64, i64, i64, i64)]) -> SurfaceSpec {
    SurfaceSpec::Hyperbolic(
        DivisorPair::new(QDivisor::from_fracs(plus), QDivisor::from_fracs(minus))
            .expect("catalog pairs are valid"),
    )
}

fn arity(name: &str, params: &[u64], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(Error::BadParams(format!(
            "{name} takes {n} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

fn at_least(name: &str, what: &str, v: u64, min: u64) -> Result<i64> {
    if v < min {
        return Err(Error::BadParams(format!("{name}: need {what} >= {min}, got {v}")));
    }
    i64::try_from(v)
        .ok()
        .filter(|x| *x < 1 << 20)
        .ok_or_else(|| Error::BadParams(format!("{name}: {what} = {v} is too large")))
}

/// Default parameters used by listings and the CLI when none are given.
pub fn default_params(name: &str) -> Result<Vec<u64>> {
    Ok(match name {
        "danielewski" | "dihedral" | "veronese" => vec![2],
        "bertin" => vec![2, 2],
        "quadric" | "conic_complement" => vec![],
        "toric" => vec![3, 1],
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

pub fn catalog_surface(name: &str, params: &[u64]) -> Result<CatalogEntry> {
    let (spec, expected) = match name {
        "danielewski" => {
            arity(name, params, 1)?;
            let d = at_least(name, "d", params[0], 1)?;
            let spec = hyperbolic(&[], &[(0, 1, -1, d), (-1, 1, -1, d)]);
            let mut ex = ExpectedFacts {
                smooth: Some(true),
                min_positive_degree: Some(d as u64),
                presentation: Some((d as u64, Poly::from_ints(&[0, 1, 1]))),
                ..Default::default()
            };
            if d >= 2 {
                ex.ml = Some(MlResult::PolynomialRing { generator_degree: 1 });
            } else {
                ex.ml = Some(MlResult::Trivial);
                ex.sl2 = Some(Sl2Model::Quadric);
                ex.model = Some(Model::Quadric);
                ex.mm = Some(2);
            }
            (spec, ex)
        }
        "bertin" => {
            arity(name, params, 2)?;
            let d = at_least(name, "d", params[0], 2)?;
            let n = at_least(name, "n", params[1], 2)?;
            let spec = hyperbolic(&[(0, 1, 1, n)], &[(0, 1, -1, n), (-1, 1, -1, n * (d - 1))]);
            let mut p = vec![0; n as usize + 1];
            p[0] = 1;
            p[n as usize] = 1;
            let ex = ExpectedFacts {
                smooth: Some(true),
                ml: Some(MlResult::PolynomialRing { generator_degree: n }),
                min_positive_degree: Some((n * d - 1) as u64),
                presentation: Some(((n * (d - 1)) as u64, Poly::from_ints(&p))),
                ..Default::default()
            };
            (spec, ex)
        }
        "veronese" => {
            arity(name, params, 1)?;
            let d = at_least(name, "d", params[0], 1)?;
            let spec = if d % 2 == 0 {
                let dp = d / 2;
                hyperbolic(&[(0, 1, -1, dp)], &[(0, 1, -1, dp)])
            } else {
                let ep = (d + 1) / 2;
                hyperbolic(&[(0, 1, ep - 1, d)], &[(0, 1, -ep, d)])
            };
            let ex = ExpectedFacts {
                ml: Some(MlResult::Trivial),
                mm: Some(d as u64),
                model: Some(if d == 1 { Model::Plane } else { Model::VeroneseCone(d as u64) }),
                sl2: Some(if d % 2 == 0 {
                    Sl2Model::VeroneseEven(d as u64)
                } else {
                    Sl2Model::VeroneseOdd(d as u64)
                }),
                toric: Some(ToricType { d: d as u64, e_prime: 1 % d as u64 }),
                smooth: Some(d == 1),
                ..Default::default()
            };
            (spec, ex)
        }
        "quadric" => {
            arity(name, params, 0)?;
            let ex = ExpectedFacts {
                smooth: Some(true),
                ml: Some(MlResult::Trivial),
                mm: Some(2),
                model: Some(Model::Quadric),
                sl2: Some(Sl2Model::Quadric),
                presentation: Some((1, Poly::from_ints(&[-1, 0, 1]))),
                ..Default::default()
            };
            (hyperbolic(&[], &[(1, 1, -1, 1), (-1, 1, -1, 1)]), ex)
        }
        "conic_complement" => {
            arity(name, params, 0)?;
            let ex = ExpectedFacts {
                smooth: Some(true),
                ml: Some(MlResult::Trivial),
                mm: Some(4),
                model: Some(Model::ConicComplement),
                sl2: Some(Sl2Model::ConicComplement),
                ..Default::default()
            };
            (hyperbolic(&[(0, 1, 1, 2)], &[(0, 1, -1, 2), (1, 1, -1, 1)]), ex)
        }
        "dihedral" => {
            arity(name, params, 1)?;
            let d = at_least(name, "d", params[0], 1)?;
            let du = d as u64;
            let ex = ExpectedFacts {
                smooth: Some(d == 1),
                ml: Some(MlResult::Trivial),
                mm: Some(du),
                presentation: Some((1, Poly::monomial(Rat::one(), d as usize))),
                singular_orders: Some(if d == 1 { vec![] } else { vec![du] }),
                toric: Some(ToricType { d: du, e_prime: (d - 1) as u64 }),
                model: match d {
                    1 => Some(Model::Plane),
                    2 => Some(Model::VeroneseCone(2)),
                    _ => None,
                },
                ..Default::default()
            };
            (hyperbolic(&[], &[(0, 1, -d, 1)]), ex)
        }
        "toric" => {
            arity(name, params, 2)?;
            let d = at_least(name, "d", params[0], 1)?;
            let spec = SurfaceSpec::elliptic(d as u64, params[1])
                .map_err(|e| Error::BadParams(e.to_string()))?;
            let ex = ExpectedFacts {
                smooth: Some(d == 1),
                ml: Some(MlResult::Trivial),
                mm: Some(d as u64),
                toric: Some(ToricType { d: d as u64, e_prime: params[1] }),
                ..Default::default()
            };
            (spec, ex)
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        params: params.to_vec(),
        spec,
        expected,
    })
}

/// Every pair-valued entry over a small parameter range.
pub fn hyperbolic_entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut push = |name: &str, params: Vec<u64>| {
        out.push(catalog_surface(name, &params).expect("valid catalog parameters"));
    };
    for d in 1..=6 {
        push("danielewski", vec![d]);
    }
    for d in 2..=3 {
        for n in 2..=3 {
            push("bertin", vec![d, n]);
        }
    }
    for d in 1..=8 {
        push("veronese", vec![d]);
    }
    push("quadric", vec![]);
    push("conic_complement", vec![]);
    for d in 1..=6 {
        push("dihedral", vec![d]);
    }
    out
}

/// All entries over a small parameter range, including elliptic ones.
pub fn all_entries() -> Vec<CatalogEntry> {
    let mut out = hyperbolic_entries();
    for d in 1..=6u64 {
        for e in 0..d {
            if crate::exactmath::gcd_u64(d, e) == 1 {
                out.push(catalog_surface("toric", &[d, e]).expect("coprime"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;

    #[test]
    fn every_entry_matches_its_facts() {
        for entry in all_entries() {
            let report = classify(&entry.spec).unwrap();
            let bad = entry.expected.mismatches(&report);
            assert!(bad.is_empty(), "{} {:?}: {bad:?}", entry.name, entry.params);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            catalog_surface("nope", &[]).unwrap_err(),
            Error::UnknownName("nope".into())
        );
        assert!(matches!(catalog_surface("bertin", &[1, 2]), Err(Error::BadParams(_))));
        assert!(matches!(catalog_surface("danielewski", &[]), Err(Error::BadParams(_))));
        assert!(matches!(catalog_surface("toric", &[4, 2]), Err(Error::BadParams(_))));
        for name in NAMES {
            let p = default_params(name).unwrap();
            catalog_surface(name, &p).unwrap();
        }
    }
}
