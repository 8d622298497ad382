use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::Rat;
use crate::error::{domain, Result};
use crate::numtheory::{factorize, squarefree_decompose};

/// Element `Σ q_d √d` of a real multi-quadratic field.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RealRad {
    // radicand (squarefree, >= 1) -> nonzero coefficient
    terms: BTreeMap<u64, Rat>,
}

impl RealRad {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rat(Rat::from_integer(v.into()))
    }

    pub fn from_rat(q: Rat) -> Self {
        Self::term(q, 1)
    }

    /// `q·√m` for any `m >= 1`; square factors of `m` move into the coefficient.
    pub fn term(q: Rat, m: u64) -> Self {
        assert!(m >= 1, "radicand must be positive");
        let mut out = Self::zero();
        let (s, d) = squarefree_decompose(m);
        out.add_term(d, q * Rat::from_integer(s.into()));
        out
    }

    /// `√m`.
    pub fn sqrt(m: u64) -> Self {
        Self::term(Rat::one(), m)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rat)> + '_ {
        self.terms.iter().map(|(&d, q)| (d, q))
    }

    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    /// Coefficient of `√d` (zero when absent).
    pub fn coefficient(&self, d: u64) -> Rat {
        self.terms.get(&d).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    pub fn as_rational(&self) -> Option<Rat> {
        self.is_rational().then(|| self.coefficient(1))
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    pub fn scale(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&d, c)| (d, c * q)).collect(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.to_f64() < 0.0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Image under the field automorphism `√p ↦ -√p` for the prime `p`.
    pub fn conjugate_at(&self, p: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&d, q)| (d, if d % p == 0 { -q } else { q.clone() }))
                .collect(),
        }
    }

    /// Multiplicative inverse, computed by clearing one prime at a time:
    /// `x·σ_p(x)` is fixed by `σ_p`, so after every prime of every radicand
    /// has been cleared the product is rational.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut primes: Vec<u64> = self
            .radicands()
            .filter(|&d| d > 1)
            .flat_map(|d| factorize(d).expect("d > 1").primes().collect::<Vec<_>>())
            .collect();
        primes.sort_unstable();
        primes.dedup();

        let mut norm = self.clone();
        let mut cofactor = Self::one();
        for p in primes {
            let conj = norm.conjugate_at(p);
            cofactor = &cofactor * &conj;
            norm = &norm * &conj;
        }
        let r = norm
            .as_rational()
            .expect("product over all conjugates is rational");
        Some(cofactor.scale(&r.recip()))
    }

    /// The rational `q` with `self = q·y`, if one exists.
    pub fn rational_ratio(&self, y: &Self) -> Result<Option<Rat>> {
        if y.is_zero() {
            return domain("rational_ratio: divisor is zero");
        }
        if self.is_zero() {
            return Ok(Some(Rat::zero()));
        }
        if !self.terms.keys().eq(y.terms.keys()) {
            return Ok(None);
        }
        let mut pairs = self.terms.values().zip(y.terms.values());
        let (a, b) = pairs.next().expect("nonempty");
        let q = a / b;
        Ok(pairs.all(|(a, b)| *a == &q * b).then_some(q))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&d, q)| {
                let c = q.to_f64().unwrap_or(f64::NAN);
                if d == 1 {
                    c
                } else {
                    c * (d as f64).sqrt()
                }
            })
            .sum()
    }

    fn add_term(&mut self, d: u64, q: Rat) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(d).or_insert_with(Rat::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }
}

impl fmt::Display for RealRad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&d, q)) in self.terms.iter().enumerate() {
            let shown = if i == 0 {
                q.clone()
            } else {
                f.write_str(if q.is_negative() { " - " } else { " + " })?;
                q.abs()
            };
            if d == 1 {
                write!(f, "{shown}")?;
            } else {
                write!(f, "{shown}*sqrt({d})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RealRad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealRad({self})")
    }
}

impl Serialize for RealRad {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse radical expression: {0}")]
pub struct ParseRadError(String);

impl FromStr for RealRad {
    type Err = ParseRadError;

    /// Accepts the canonical rendering, e.g. `-1/2 + 3*sqrt(5) - sqrt(6)`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseRadError(s.to_string()));
        }
        let mut chunks = Vec::new();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if i > 0 && (c == '+' || c == '-') {
                chunks.push(&compact[start..i]);
                start = i;
            }
        }
        chunks.push(&compact[start..]);

        let mut out = RealRad::zero();
        for chunk in chunks {
            let (negative, body) = match chunk.as_bytes().first() {
                Some(b'-') => (true, &chunk[1..]),
                Some(b'+') => (false, &chunk[1..]),
                _ => (false, chunk),
            };
            let bad = || ParseRadError(chunk.to_string());
            let (coef, radicand) = match body.find("sqrt(") {
                Some(pos) => {
                    let inner = body[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
                    let m: u64 = inner.parse().map_err(|_| bad())?;
                    let coef = match &body[..pos] {
                        "" => Rat::one(),
                        c => c.strip_suffix('*').ok_or_else(bad)?.parse().map_err(|_| bad())?,
                    };
                    if m == 0 {
                        return Err(bad());
                    }
                    (coef, m)
                }
                None => (body.parse::<Rat>().map_err(|_| bad())?, 1),
            };
            let coef = if negative { -coef } else { coef };
            out = out + RealRad::term(coef, radicand);
        }
        Ok(out)
    }
}

impl From<i64> for RealRad {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<Rat> for RealRad {
    fn from(q: Rat) -> Self {
        Self::from_rat(q)
    }
}

impl Neg for RealRad {
    type Output = RealRad;
    fn neg(mut self) -> RealRad {
        for q in self.terms.values_mut() {
            *q = -q.clone();
        }
        self
    }
}

impl Neg for &RealRad {
    type Output = RealRad;
    fn neg(self) -> RealRad {
        -self.clone()
    }
}

impl AddAssign<&RealRad> for RealRad {
    fn add_assign(&mut self, rhs: &RealRad) {
        for (&d, q) in &rhs.terms {
            self.add_term(d, q.clone());
        }
    }
}

impl Add<&RealRad> for &RealRad {
    type Output = RealRad;
    fn add(self, rhs: &RealRad) -> RealRad {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&RealRad> for &RealRad {
    type Output = RealRad;
    fn sub(self, rhs: &RealRad) -> RealRad {
        let mut out = self.clone();
        for (&d, q) in &rhs.terms {
            out.add_term(d, -q.clone());
        }
        out
    }
}

impl Mul<&RealRad> for &RealRad {
    type Output = RealRad;
    fn mul(self, rhs: &RealRad) -> RealRad {
        let mut out = RealRad::zero();
        for (&d1, q1) in &self.terms {
            for (&d2, q2) in &rhs.terms {
                // √d1·√d2 = g·√(d1 d2 / g²) for squarefree d1, d2
                let g = d1.gcd(&d2);
                let radicand = (d1 / g)
                    .checked_mul(d2 / g)
                    .expect("radicand overflow");
                out.add_term(radicand, q1 * q2 * Rat::from_integer(g.into()));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<RealRad> for RealRad {
            type Output = RealRad;
            fn $m(self, rhs: RealRad) -> RealRad { (&self).$m(&rhs) }
        }
        impl $tr<&RealRad> for RealRad {
            type Output = RealRad;
            fn $m(self, rhs: &RealRad) -> RealRad { (&self).$m(rhs) }
        }
        impl $tr<RealRad> for &RealRad {
            type Output = RealRad;
            fn $m(self, rhs: RealRad) -> RealRad { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl std::iter::Sum for RealRad {
    fn sum<I: Iterator<Item = RealRad>>(iter: I) -> Self {
        iter.fold(RealRad::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;
    use proptest::prelude::*;

    fn r(s: &str) -> RealRad {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(RealRad::sqrt(2) + -RealRad::sqrt(2), RealRad::zero());
        assert_eq!(r("1/2 + 1/2*sqrt(5)") + r("1/2 - 1/2*sqrt(5)"), RealRad::one());
        assert_eq!(r("-1 + sqrt(7)") + r("1 + sqrt(7)"), r("2*sqrt(7)"));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(RealRad::sqrt(2) * RealRad::sqrt(2), RealRad::from_integer(2));
        assert_eq!(RealRad::sqrt(2) * RealRad::sqrt(6), r("2*sqrt(3)"));
        let golden = r("1/2 + 1/2*sqrt(5)");
        assert_eq!(&golden * &golden, r("3/2 + 1/2*sqrt(5)"));
    }

    #[test]
    fn term_normalizes_square_factors() {
        assert_eq!(RealRad::sqrt(8), r("2*sqrt(2)"));
        assert_eq!(RealRad::sqrt(50), r("5*sqrt(2)"));
        assert_eq!(RealRad::sqrt(9), RealRad::from_integer(3));
        assert_eq!(r("sqrt(12)").to_string(), "2*sqrt(3)");
    }

    #[test]
    fn ratios() {
        assert_eq!(r("3*sqrt(5)").rational_ratio(&RealRad::sqrt(5)).unwrap(), Some(rat(3, 1)));
        assert_eq!(r("2 + 2*sqrt(5)").rational_ratio(&r("1 + sqrt(5)")).unwrap(), Some(rat(2, 1)));
        assert_eq!(r("1/2 + 1/2*sqrt(5)").rational_ratio(&RealRad::one()).unwrap(), None);
        assert_eq!(r("1 + 2*sqrt(5)").rational_ratio(&r("1 + sqrt(5)")).unwrap(), None);
        assert_eq!(RealRad::zero().rational_ratio(&RealRad::sqrt(3)).unwrap(), Some(rat(0, 1)));
        assert!(RealRad::one().rational_ratio(&RealRad::zero()).is_err());
    }

    #[test]
    fn floats() {
        assert_eq!(RealRad::zero().to_f64(), 0.0);
        assert!((RealRad::sqrt(2).to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((r("-1/2 + 1/2*sqrt(7)").to_f64() - 0.822_875_655_532_295).abs() < 1e-12);
    }

    #[test]
    fn rendering() {
        assert_eq!(RealRad::zero().to_string(), "0");
        assert_eq!(r("-1/2 - 1/2*sqrt(5)").to_string(), "-1/2 - 1/2*sqrt(5)");
        assert_eq!(r("sqrt(3) + 1").to_string(), "1 + 1*sqrt(3)");
        assert_eq!(r("-sqrt(2)").to_string(), "-1*sqrt(2)");
        assert!("".parse::<RealRad>().is_err());
        assert!("1 + sqrt(x)".parse::<RealRad>().is_err());
        assert!("2*sqrt(0)".parse::<RealRad>().is_err());
    }

    #[test]
    fn predicates() {
        assert!(RealRad::from_integer(-4).is_integer());
        assert!(r("3/2").is_rational());
        assert!(!r("3/2").is_integer());
        assert!(!RealRad::sqrt(2).is_rational());
    }

    #[test]
    fn reciprocal_examples() {
        let x = r("-5/2 + 1/2*sqrt(5)");
        assert_eq!(&x * &x.recip().unwrap(), RealRad::one());
        let y = r("1 + sqrt(2) + sqrt(3) - 2*sqrt(6)");
        assert_eq!(&y * &y.recip().unwrap(), RealRad::one());
        assert!(RealRad::zero().recip().is_none());
    }

    fn arb_rad() -> impl Strategy<Value = RealRad> {
        let radicands = prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10, 14, 15, 21, 30]);
        prop::collection::vec((radicands, -50i64..50, 1i64..12), 0..5).prop_map(|ts| {
            ts.into_iter()
                .map(|(d, n, den)| RealRad::term(rat(n, den), d))
                .sum()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb_rad(), y in arb_rad(), z in arb_rad()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &(-&x), RealRad::zero());
        }

        #[test]
        fn float_square(x in arb_rad()) {
            let v = x.to_f64();
            prop_assert!(((&x * &x).to_f64() - v * v).abs() <= 1e-9 * (1.0 + v * v));
        }

        #[test]
        fn canonical_text_round_trips(x in arb_rad()) {
            prop_assert_eq!(x.to_string().parse::<RealRad>().unwrap(), x);
        }

        #[test]
        fn reciprocal(x in arb_rad()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.recip().unwrap(), RealRad::one());
        }
    }
}
