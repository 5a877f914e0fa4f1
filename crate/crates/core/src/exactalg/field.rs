//! Exact scalar arithmetic: rationals and one simple algebraic extension.
//!
//! The ambient field is either the rationals or a simple extension
//! `Q(a)` cut out by a monic irreducible minimal polynomial. Towers are
//! rejected: an extension field's base is always the rationals.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Minimal-polynomial data of a simple extension Q(a).
#[derive(Debug)]
pub struct ExtFieldRepr {
    /// Monic, irreducible over Q, degree >= 2. Length = degree + 1.
    pub minpoly: Vec<Rat>,
    pub generator: String,
}

#[derive(Clone, Debug)]
pub struct ExtField(Arc<ExtFieldRepr>);

impl ExtField {
    /// Callers are expected to pass a monic irreducible polynomial;
    /// monicity and the degree bound are checked here, irreducibility is
    /// the caller's responsibility (construction sites factor first).
    pub fn new(minpoly: Vec<Rat>, generator: &str) -> Result<Self> {
        if minpoly.len() < 3 {
            return Err(Error::Unsupported(
                "extension field needs a minimal polynomial of degree >= 2".into(),
            ));
        }
        if minpoly.last().map(|c| !c.is_one()).unwrap_or(true) {
            return Err(Error::Unsupported("minimal polynomial must be monic".into()));
        }
        Ok(ExtField(Arc::new(ExtFieldRepr {
            minpoly,
            generator: generator.to_string(),
        })))
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[Rat] {
        &self.0.minpoly
    }

    pub fn generator_name(&self) -> &str {
        &self.0.generator
    }

    /// The generator `a` as a field element.
    pub fn gen(&self) -> FieldElem {
        FieldElem::Ext {
            coeffs: vec![Rat::zero(), Rat::one()],
            field: self.clone(),
        }
    }

    pub fn minpoly_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.0.minpoly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => self.0.generator.clone(),
                _ => format!("{}^{}", self.0.generator, i),
            };
            if var.is_empty() {
                parts.push(format!("{}", c));
            } else if c.is_one() {
                parts.push(var);
            } else {
                parts.push(format!("{}*{}", c, var));
            }
        }
        parts.join(" + ")
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.minpoly == other.0.minpoly
    }
}
impl Eq for ExtField {}

/// The coefficient field of a computation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum CoefField {
    #[default]
    Rationals,
    Extension(ExtField),
}

impl CoefField {
    pub fn is_rational(&self) -> bool {
        matches!(self, CoefField::Rationals)
    }

    pub fn extension(&self) -> Option<&ExtField> {
        match self {
            CoefField::Rationals => None,
            CoefField::Extension(e) => Some(e),
        }
    }

    /// Extend the rationals by a root of `minpoly`. Extending an
    /// extension is an unsupported tower.
    pub fn extend(&self, minpoly: Vec<Rat>, generator: &str) -> Result<ExtField> {
        match self {
            CoefField::Rationals => ExtField::new(minpoly, generator),
            CoefField::Extension(e) => Err(Error::UnsupportedExtensionTower {
                minimal_poly: format!(
                    "degree-{} polynomial over Q({})",
                    minpoly.len() - 1,
                    e.generator_name()
                ),
            }),
        }
    }
}

/// An exact scalar: a rational, or an element of one simple extension.
#[derive(Clone, Debug)]
pub enum FieldElem {
    Rat(Rat),
    /// Coefficients of 1, a, a^2, ... with trailing zeros trimmed;
    /// always length >= 2 (degree-0 elements collapse to `Rat`).
    Ext { coeffs: Vec<Rat>, field: ExtField },
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem::Rat(Rat::zero())
    }

    pub fn one() -> Self {
        FieldElem::Rat(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem::Rat(rat_int(n))
    }

    pub fn from_rat(r: Rat) -> Self {
        FieldElem::Rat(r)
    }

    pub fn in_ext(field: &ExtField, coeffs: Vec<Rat>) -> Self {
        Self::normalized(coeffs, field)
    }

    fn normalized(mut coeffs: Vec<Rat>, field: &ExtField) -> Self {
        debug_assert!(coeffs.len() <= field.degree());
        while coeffs.last().map(Rat::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => FieldElem::Rat(Rat::zero()),
            1 => FieldElem::Rat(coeffs.pop().unwrap()),
            _ => FieldElem::Ext {
                coeffs,
                field: field.clone(),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Ext { .. } => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElem::Rat(r) if r.is_one())
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            FieldElem::Rat(r) => Some(r),
            FieldElem::Ext { .. } => None,
        }
    }

    pub fn field(&self) -> CoefField {
        match self {
            FieldElem::Rat(_) => CoefField::Rationals,
            FieldElem::Ext { field, .. } => CoefField::Extension(field.clone()),
        }
    }

    fn lift(&self, field: &ExtField) -> Vec<Rat> {
        match self {
            FieldElem::Rat(r) => vec![r.clone()],
            FieldElem::Ext { coeffs, field: f } => {
                assert!(f == field, "field elements from different extensions");
                coeffs.clone()
            }
        }
    }

    fn join(a: &FieldElem, b: &FieldElem) -> Option<ExtField> {
        match (a, b) {
            (FieldElem::Rat(_), FieldElem::Rat(_)) => None,
            (FieldElem::Ext { field, .. }, _) | (_, FieldElem::Ext { field, .. }) => {
                Some(field.clone())
            }
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        match Self::join(self, other) {
            None => FieldElem::Rat(self.as_rat().unwrap() + other.as_rat().unwrap()),
            Some(field) => {
                let a = self.lift(&field);
                let b = other.lift(&field);
                Self::normalized(qp::add(&a, &b), &field)
            }
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rat(r) => FieldElem::Rat(-r),
            FieldElem::Ext { coeffs, field } => FieldElem::Ext {
                coeffs: coeffs.iter().map(|c| -c).collect(),
                field: field.clone(),
            },
        }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        match Self::join(self, other) {
            None => FieldElem::Rat(self.as_rat().unwrap() * other.as_rat().unwrap()),
            Some(field) => {
                let a = self.lift(&field);
                let b = other.lift(&field);
                let prod = qp::mul(&a, &b);
                let red = qp::rem(&prod, field.minpoly());
                Self::normalized(red, &field)
            }
        }
    }

    /// Multiplicative inverse. Panics on zero: callers check first.
    pub fn inv(&self) -> FieldElem {
        match self {
            FieldElem::Rat(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                FieldElem::Rat(r.recip())
            }
            FieldElem::Ext { coeffs, field } => {
                // extended Euclid: s*coeffs + t*minpoly = 1
                let (g, s) = qp::ext_gcd_first(coeffs, field.minpoly());
                assert!(g.len() == 1, "minimal polynomial not irreducible or zero inverse");
                let ginv = g[0].recip();
                let s: Vec<Rat> = s.iter().map(|c| c * &ginv).collect();
                let red = qp::rem(&s, field.minpoly());
                Self::normalized(red, field)
            }
        }
    }

    pub fn div(&self, other: &FieldElem) -> FieldElem {
        self.mul(&other.inv())
    }

    pub fn pow(&self, mut e: u32) -> FieldElem {
        let mut base = self.clone();
        let mut acc = FieldElem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => a == b,
            (FieldElem::Ext { coeffs: a, field: fa }, FieldElem::Ext { coeffs: b, field: fb }) => {
                fa == fb && a == b
            }
            _ => false,
        }
    }
}
impl Eq for FieldElem {}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) => write!(f, "{}", r),
            FieldElem::Ext { coeffs, field } => {
                let mut first = true;
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let var = match i {
                        0 => String::new(),
                        1 => field.generator_name().to_string(),
                        _ => format!("{}^{}", field.generator_name(), i),
                    };
                    let term = if var.is_empty() {
                        format!("{}", c)
                    } else if c.is_one() {
                        var
                    } else if (-c).is_one() {
                        format!("-{}", var)
                    } else {
                        format!("{}*{}", c, var)
                    };
                    if first {
                        write!(f, "{}", term)?;
                        first = false;
                    } else if term.starts_with('-') {
                        write!(f, " - {}", &term[1..])?;
                    } else {
                        write!(f, " + {}", term)?;
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // Round-trips rationals only; extension elements surface in
        // reports as opaque strings.
        let s = String::deserialize(d)?;
        let r: Rat = s
            .parse()
            .map_err(|e| serde::de::Error::custom(format!("bad rational {s:?}: {e}")))?;
        Ok(FieldElem::Rat(r))
    }
}

/// Dense univariate arithmetic over Q on raw coefficient vectors,
/// used for minimal-polynomial reduction and factoring.
pub mod qp {
    use super::Rat;
    use num_traits::Zero;

    pub fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
        while v.last().map(Rat::is_zero).unwrap_or(false) {
            v.pop();
        }
        v
    }

    pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = a.len().max(b.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] += c;
        }
        trim(out)
    }

    pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim(out)
    }

    /// Remainder of a by b (b nonzero).
    pub fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        divrem(a, b).1
    }

    pub fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r: Vec<Rat> = a.to_vec();
        r = trim(r);
        let db = b.len() - 1;
        let lb = &b[db];
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![Rat::zero(); r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = &r[dr] / lb;
            q[dr - db] = c.clone();
            for i in 0..=db {
                let t = &b[i] * &c;
                r[dr - db + i] -= t;
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        (trim(q), r)
    }

    /// Returns (gcd, s) with s*a = gcd mod b; gcd trimmed, not normalized.
    pub fn ext_gcd_first(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let mut r0: Vec<Rat> = trim(a.to_vec());
        let mut r1: Vec<Rat> = trim(b.to_vec());
        let mut s0 = vec![Rat::from_integer(1.into())];
        let mut s1: Vec<Rat> = Vec::new();
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let qs = mul(&q, &s1);
            let ns = sub(&s0, &qs);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
        }
        (r0, s0)
    }

    pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let nb: Vec<Rat> = b.iter().map(|c| -c).collect();
        add(a, &nb)
    }

    pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut r0 = trim(a.to_vec());
        let mut r1 = trim(b.to_vec());
        while !r1.is_empty() {
            let r = rem(&r0, &r1);
            r0 = r1;
            r1 = r;
        }
        if let Some(l) = r0.last().cloned() {
            let inv = l.recip();
            for c in r0.iter_mut() {
                *c *= &inv;
            }
        }
        r0
    }

    pub fn derivative(a: &[Rat]) -> Vec<Rat> {
        if a.len() <= 1 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(a.len() - 1);
        for (i, c) in a.iter().enumerate().skip(1) {
            out.push(c * Rat::from_integer(i.into()));
        }
        trim(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> ExtField {
        // Q(i): a^2 + 1 = 0
        ExtField::new(vec![rat_int(1), rat_int(0), rat_int(1)], "a").unwrap()
    }

    #[test]
    fn rational_ops() {
        let a = FieldElem::from_rat(rat(1, 2));
        let b = FieldElem::from_rat(rat(1, 3));
        assert_eq!(a.add(&b), FieldElem::from_rat(rat(5, 6)));
        assert_eq!(a.mul(&b), FieldElem::from_rat(rat(1, 6)));
        assert_eq!(a.div(&b), FieldElem::from_rat(rat(3, 2)));
    }

    #[test]
    fn extension_arithmetic() {
        let f = qi();
        let i = f.gen();
        // i^2 = -1
        assert_eq!(i.mul(&i), FieldElem::from_int(-1));
        // (1 + i)(1 - i) = 2
        let one = FieldElem::one();
        let p = one.add(&i);
        let q = one.sub(&i);
        assert_eq!(p.mul(&q), FieldElem::from_int(2));
        // inverse of (1 + i) is (1 - i)/2
        let inv = p.inv();
        assert_eq!(inv.mul(&p), FieldElem::one());
    }

    #[test]
    fn tower_rejected() {
        let f = qi();
        let field = CoefField::Extension(f);
        let err = field.extend(vec![rat_int(-2), rat_int(0), rat_int(1)], "b");
        assert!(matches!(err, Err(Error::UnsupportedExtensionTower { .. })));
    }

    #[test]
    fn degree_zero_collapses_to_rational() {
        let f = qi();
        let i = f.gen();
        let r = i.mul(&i); // -1, must be Rat
        assert!(r.as_rat().is_some());
    }
}
