//! Exact sparse integer polynomials in one and two variables.
//!
//! Coefficients are arbitrary precision; zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// A polynomial in one variable `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        IntPoly::monomial(1, 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        IntPoly::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: u32) -> Self {
        let mut p = IntPoly::zero();
        p.add_term(exp, c.into());
        p
    }

    /// Dense ascending coefficients: `from_coeffs(&[1, 11, 11, 1])` is `1 + 11t + 11t^2 + t^3`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = IntPoly::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(e as u32, BigInt::from(c));
        }
        p
    }

    /// `t^lo + t^(lo+1) + ... + t^hi`; zero when `lo > hi`.
    pub fn geometric(lo: u32, hi: u32) -> Self {
        let mut p = IntPoly::zero();
        for e in lo..=hi {
            p.add_term(e, BigInt::one());
        }
        p
    }

    /// Histogram of exponents: `Σ_x t^{f(x)}`.
    pub fn from_exponents<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
        for e in exps {
            *counts.entry(e).or_default() += 1;
        }
        IntPoly {
            coeffs: counts
                .into_iter()
                .map(|(e, c)| (e, BigInt::from(c)))
                .collect(),
        }
    }

    /// `(t - 1)^a t^b`, the contribution of one orbit.
    pub fn orbit_term(a: u32, b: u32) -> Self {
        let mut p = IntPoly::zero();
        let mut binom = BigInt::one();
        // (t - 1)^a = Σ_k C(a, k) t^k (-1)^(a - k)
        for k in 0..=a {
            let sign = if (a - k).is_multiple_of(2) { 1 } else { -1 };
            p.add_term(k + b, &binom * sign);
            binom = binom * BigInt::from(a - k) / BigInt::from(k + 1);
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, c: impl Into<BigInt>) {
        let c: BigInt = c.into();
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending order of exponent.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Dense ascending coefficients up to the degree (empty for zero).
    pub fn dense(&self) -> Vec<BigInt> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|e| self.coeff(e)).collect(),
        }
    }

    /// Dense coefficients as `i64`, when they all fit.
    pub fn dense_i64(&self) -> Option<Vec<i64>> {
        self.dense().iter().map(|c| c.to_i64()).collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    /// `p(t^k)`.
    pub fn substitute_power(&self, k: u32) -> Self {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e * k, c.clone()))
                .collect(),
        }
    }

    /// `p(t^2)`.
    pub fn substitute_square(&self) -> Self {
        self.substitute_power(2)
    }

    /// Whether `c_k = c_{deg - k}` for all `k`. The zero polynomial is palindromic.
    pub fn is_palindromic(&self) -> bool {
        let Some(d) = self.degree() else {
            return true;
        };
        self.coeffs.iter().all(|(&e, c)| self.coeff(d - e) == *c)
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.coeffs.values().any(|c| c.is_negative())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut prev = self.degree().unwrap_or(0);
        for (&e, c) in self.coeffs.iter().rev() {
            acc *= x.pow(prev - e);
            acc += c;
            prev = e;
        }
        acc * x.pow(prev)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Plain text, ascending: `1 + 11t + 11t^2 + t^3`.
    pub fn to_plain(&self) -> String {
        self.render("t", false)
    }

    /// LaTeX, ascending: `1 + 11t + 11t^{10}`.
    pub fn to_latex(&self) -> String {
        self.render("t", true)
    }

    pub fn render(&self, var: &str, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (&e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let unit = mag.is_one();
            if e == 0 || !unit {
                out.push_str(&mag.to_string());
            }
            match e {
                0 => {}
                1 => out.push_str(var),
                _ if latex && e >= 10 => out.push_str(&format!("{var}^{{{e}}}")),
                _ => out.push_str(&format!("{var}^{e}")),
            }
        }
        out
    }

    /// `{"var":"t","coeffs":{"0":1,"2":11}}`, exponents ascending.
    pub fn to_json(&self) -> Value {
        let mut coeffs = Map::new();
        for (e, c) in &self.coeffs {
            coeffs.insert(e.to_string(), bigint_to_json(c));
        }
        let mut obj = Map::new();
        obj.insert("var".into(), Value::String("t".into()));
        obj.insert("coeffs".into(), Value::Object(coeffs));
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::PolyFormat("expected an object".into()))?;
        match obj.get("var") {
            Some(Value::String(_)) | None => {}
            Some(other) => return Err(Error::PolyFormat(format!("bad \"var\": {other}"))),
        }
        let coeffs = obj
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::PolyFormat("missing \"coeffs\" object".into()))?;
        let mut p = IntPoly::zero();
        for (key, c) in coeffs {
            let e: u32 = key
                .parse()
                .map_err(|_| Error::PolyFormat(format!("bad exponent {key:?}")))?;
            p.add_term(e, bigint_from_json(c)?);
        }
        Ok(p)
    }
}

fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(c.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::PolyFormat(format!("non-integer coefficient {n}")))
            }
        }
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::PolyFormat(format!("bad coefficient {s:?}"))),
        other => Err(Error::PolyFormat(format!("bad coefficient {other}"))),
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        IntPoly::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::zero(), |acc, p| &acc + &p)
    }
}

impl Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}

/// A polynomial in two variables `t1, t2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly2 {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl IntPoly2 {
    pub fn zero() -> Self {
        IntPoly2::default()
    }

    pub fn monomial(c: impl Into<BigInt>, e1: u32, e2: u32) -> Self {
        let mut p = IntPoly2::zero();
        p.add_term(e1, e2, c.into());
        p
    }

    pub fn add_term(&mut self, e1: u32, e2: u32, c: impl Into<BigInt>) {
        let c = c.into();
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((e1, e2)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(e1, e2));
        }
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> BigInt {
        self.coeffs.get(&(e1, e2)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Substitutes `t1 ↦ t^k1`, `t2 ↦ t^k2`.
    pub fn specialize(&self, k1: u32, k2: u32) -> IntPoly {
        let mut p = IntPoly::zero();
        for (&(a, b), c) in &self.coeffs {
            p.add_term(a * k1 + b * k2, c.clone());
        }
        p
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&(a, b), c)| c * x.pow(a) * y.pow(b))
            .sum()
    }

    /// `{"vars":["t1","t2"],"coeffs":{"0,1":1}}`.
    pub fn to_json(&self) -> Value {
        let mut coeffs = Map::new();
        for (&(a, b), c) in &self.coeffs {
            coeffs.insert(format!("{a},{b}"), bigint_to_json(c));
        }
        let mut obj = Map::new();
        obj.insert("vars".into(), Value::from(vec!["t1", "t2"]));
        obj.insert("coeffs".into(), Value::Object(coeffs));
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let coeffs = value
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::PolyFormat("missing \"coeffs\" object".into()))?;
        let mut p = IntPoly2::zero();
        for (key, c) in coeffs {
            let bad = || Error::PolyFormat(format!("bad exponent pair {key:?}"));
            let (a, b) = key.split_once(',').ok_or_else(bad)?;
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            p.add_term(a, b, bigint_from_json(c)?);
        }
        Ok(p)
    }
}

impl Add<&IntPoly2> for &IntPoly2 {
    type Output = IntPoly2;
    fn add(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.coeffs {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Mul<&IntPoly2> for &IntPoly2 {
    type Output = IntPoly2;
    fn mul(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = IntPoly2::zero();
        for (&(a, b), x) in &self.coeffs {
            for (&(c, d), y) in &rhs.coeffs {
                out.add_term(a + c, b + d, x * y);
            }
        }
        out
    }
}

impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let factor = |v: &str, e: u32| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        for (k, (&(a, b), c)) in self.coeffs.iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            let vars = [factor("t1", a), factor("t2", b)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars)?;
            } else {
                write!(f, "{mag} {vars}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly2 {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}
