//! Counting functions on the pointed star set, their growth invariants, and
//! exact height evaluation from local place data.
//!
//! All algebraic values are exact rationals; floating point never enters.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::cohomology::{is_unramified, psi_v, Cocycle, H1Partition, PlaceModel};
use crate::error::{Error, Result};
use crate::gamma::{g_star, GammaGroup, PointedGammaSet, StarMap};
use crate::perm::Perm;

pub type Rational = Ratio<BigInt>;

pub fn rational(n: i64, d: i64) -> Rational {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

/// Parse the "p/q" report form (a bare integer is also accepted).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("bad rational component {s}")))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den == BigInt::from(0) {
                return Err(Error::Invalid(format!("zero denominator in {text}")));
            }
            Ok(Ratio::new(parse_int(num)?, den))
        }
        None => Ok(Ratio::from(parse_int(text)?)),
    }
}

/// A Gamma-invariant weight on the star set, zero exactly at the basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingFunction {
    pub star: PointedGammaSet,
    pub values: Vec<Rational>,
}

impl CountingFunction {
    pub fn new(star: PointedGammaSet, values: Vec<Rational>) -> Result<CountingFunction> {
        if values.len() != star.points {
            return Err(Error::Invalid(format!(
                "{} values for {} star points",
                values.len(),
                star.points
            )));
        }
        if !values[star.basepoint].is_zero() {
            return Err(Error::Invalid("nonzero value at the basepoint".into()));
        }
        for (p, v) in values.iter().enumerate() {
            if p != star.basepoint {
                if v.is_zero() {
                    return Err(Error::VanishesOffBasepoint { point: p });
                }
                if v.is_negative() {
                    return Err(Error::Invalid(format!("negative value at point {p}")));
                }
            }
        }
        for (gamma, table) in star.action.iter().enumerate() {
            for p in 0..star.points {
                if values[table[p]] != values[p] {
                    return Err(Error::NotGammaInvariant { gamma, point: p });
                }
            }
        }
        Ok(CountingFunction { star, values })
    }

    pub fn value(&self, point: usize) -> &Rational {
        &self.values[point]
    }
}

/// The discriminant-exponent counting function of a faithful permutation
/// embedding: `c([g]) = degree - #orbits(g)`, the tame index.
pub fn malle_index_function(gg: &GammaGroup, embedding: &[Perm]) -> Result<CountingFunction> {
    let group = gg.group();
    if embedding.len() != group.order() {
        return Err(Error::Invalid(format!(
            "{} permutations for a group of order {}",
            embedding.len(),
            group.order()
        )));
    }
    for a in 0..group.order() {
        for b in 0..group.order() {
            if embedding[group.mul(a, b)] != embedding[a].compose(&embedding[b]) {
                return Err(Error::NotAHomomorphism { a, b });
            }
        }
    }
    for a in 0..group.order() {
        for b in 0..a {
            if embedding[a] == embedding[b] {
                return Err(Error::NotFaithful { a, b });
            }
        }
    }
    let star = g_star(gg);
    let degree = embedding[0].degree();
    let values: Vec<Rational> = star
        .class_members
        .iter()
        .map(|class| {
            let index = degree - embedding[class[0]].orbit_count();
            Ratio::from(BigInt::from(index as u64))
        })
        .collect();
    CountingFunction::new(star, values)
}

/// The index function of the regular representation:
/// `c([g]) = |G| - |G| / ord(g)`. Always Gamma-invariant.
pub fn regular_index_function(gg: &GammaGroup) -> Result<CountingFunction> {
    let group = gg.group();
    let star = g_star(gg);
    let n = group.order() as u64;
    let values: Vec<Rational> = star
        .class_members
        .iter()
        .map(|class| {
            let ord = group.element_order(class[0]);
            Ratio::from(BigInt::from(n - n / ord))
        })
        .collect();
    CountingFunction::new(star, values)
}

/// The minimal counting function: weight one off the basepoint.
pub fn unit_counting_function(gg: &GammaGroup) -> Result<CountingFunction> {
    let star = g_star(gg);
    let values: Vec<Rational> = (0..star.points)
        .map(|p| {
            if p == star.basepoint {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
        .collect();
    CountingFunction::new(star, values)
}

/// Growth invariants of a counting function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    /// Reciprocal of the minimal nonzero value.
    pub a: Rational,
    /// Number of star points attaining the minimum.
    pub b_points: usize,
    /// Number of Gamma-orbits attaining the minimum. This is the convention
    /// used in growth predictions; both counts are reported.
    pub b_orbits: usize,
    pub min_value: Rational,
    pub minimizing_points: Vec<usize>,
}

pub fn invariants_of(c: &CountingFunction) -> Result<Invariants> {
    if c.star.points <= 1 {
        return Err(Error::TrivialGroup);
    }
    let min_value = (0..c.star.points)
        .filter(|&p| p != c.star.basepoint)
        .map(|p| c.values[p].clone())
        .min()
        .expect("at least one nontrivial point");
    let minimizing_points: Vec<usize> = (0..c.star.points)
        .filter(|&p| p != c.star.basepoint && c.values[p] == min_value)
        .collect();
    let b_points = minimizing_points.len();
    let b_orbits = c
        .star
        .orbits()
        .iter()
        .filter(|orbit| orbit[0] != c.star.basepoint && c.values[orbit[0]] == min_value)
        .count();
    Ok(Invariants {
        a: min_value.recip(),
        b_points,
        b_orbits,
        min_value,
        minimizing_points,
    })
}

/// Pull a counting function back along a star map; positivity off the
/// basepoint is automatic because star maps have trivial kernel.
pub fn pullback_counting(sm: &StarMap, c: &CountingFunction) -> Result<CountingFunction> {
    if c.star != sm.target {
        return Err(Error::Invalid(
            "counting function lives on a different star set".into(),
        ));
    }
    let values: Vec<Rational> = sm.map.iter().map(|&q| c.values[q].clone()).collect();
    CountingFunction::new(sm.source.clone(), values)
}

/// A height: a counting function plus a finite bad set with overriding local
/// exponents. Overrides default to zero (factor one at bad places).
#[derive(Debug, Clone)]
pub struct HeightSpec {
    pub counting: CountingFunction,
    pub sigma: BTreeSet<String>,
    /// (place label, star class) -> local exponent.
    pub overrides: BTreeMap<(String, usize), Rational>,
    /// Applied when no explicit override matches; `None` makes gaps an error.
    pub default_override: Option<Rational>,
}

impl HeightSpec {
    pub fn new(counting: CountingFunction, sigma: impl IntoIterator<Item = String>) -> HeightSpec {
        HeightSpec {
            counting,
            sigma: sigma.into_iter().collect(),
            overrides: BTreeMap::new(),
            default_override: Some(Rational::zero()),
        }
    }

    pub fn with_override(mut self, label: &str, class: usize, value: Rational) -> HeightSpec {
        self.overrides.insert((label.to_string(), class), value);
        self
    }

    pub fn strict_overrides(mut self) -> HeightSpec {
        self.default_override = None;
        self
    }

    fn local_exponent(&self, gg: &GammaGroup, x: &Cocycle, place: &PlaceModel) -> Result<Rational> {
        let class = psi_v(gg, &self.counting.star, x, place)?;
        if self.sigma.contains(&place.label) {
            if let Some(value) = self.overrides.get(&(place.label.clone(), class)) {
                return Ok(value.clone());
            }
            return self.default_override.clone().ok_or(Error::MissingOverride {
                label: place.label.clone(),
                class,
            });
        }
        Ok(self.counting.values[class].clone())
    }
}

/// The height of a cocycle over the given places: the product of
/// `q_v ^ (local exponent)`.
///
/// Exponents accumulate per prime; a fractional total at any prime would be
/// irrational and is reported as an error rather than approximated.
pub fn evaluate_height(
    spec: &HeightSpec,
    gg: &GammaGroup,
    x: &Cocycle,
    places: &[PlaceModel],
) -> Result<Rational> {
    let mut prime_exponents: BTreeMap<u64, Rational> = BTreeMap::new();
    for place in places {
        let exponent = spec.local_exponent(gg, x, place)?;
        if exponent.is_zero() {
            continue;
        }
        let (p, k) = split_prime_power(place.q);
        let entry = prime_exponents
            .entry(p)
            .or_insert_with(Rational::zero);
        *entry += exponent * Ratio::from(BigInt::from(k));
    }
    let mut height = Rational::one();
    for (p, e) in prime_exponents {
        if !e.is_integer() {
            return Err(Error::IrrationalHeight {
                prime: p,
                exponent: e.to_string(),
            });
        }
        let e = e.to_integer();
        let power = BigInt::from(p).pow(u32::try_from(&e).map_err(|_| {
            Error::Invalid(format!("height exponent {e} at prime {p} is out of range"))
        })?);
        height *= Ratio::from(power);
    }
    Ok(height)
}

/// Height restricted to a support list; ramification at a modeled place
/// outside the support is an error, matching the requirement that the
/// evaluation list covers the ramification locus.
pub fn evaluate_height_over(
    spec: &HeightSpec,
    gg: &GammaGroup,
    x: &Cocycle,
    places: &[PlaceModel],
    support: &[String],
) -> Result<Rational> {
    let mut selected = Vec::new();
    for place in places {
        if support.contains(&place.label) {
            selected.push(place.clone());
        } else if !is_unramified(gg, x, place)? {
            return Err(Error::RamifiedOutsideList {
                label: place.label.clone(),
            });
        }
    }
    evaluate_height(spec, gg, x, &selected)
}

/// Class-level height: evaluate on the canonical (lexicographically minimal)
/// representative of the class.
pub fn evaluate_height_class(
    spec: &HeightSpec,
    gg: &GammaGroup,
    h1: &H1Partition,
    class: usize,
    places: &[PlaceModel],
) -> Result<Rational> {
    evaluate_height(spec, gg, h1.representative(class), places)
}

fn split_prime_power(q: u64) -> (u64, u32) {
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut k = 0;
            let mut n = q;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            return (p, k);
        }
        p += 1;
    }
    (q, 1)
}

/// A bookkeeping object describing the quantitative approximation property:
/// the claimed exponents are recorded alongside counting reports but never
/// decided by this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationClaim {
    pub alpha: Rational,
    pub beta: Rational,
}

impl SaturationClaim {
    /// The exponents a commutative model is expected to satisfy:
    /// `alpha = a`, `beta = b_orbits - 1`.
    pub fn from_invariants(inv: &Invariants) -> SaturationClaim {
        SaturationClaim {
            alpha: inv.a.clone(),
            beta: Ratio::from(BigInt::from(inv.b_orbits as i64 - 1)),
        }
    }
}
