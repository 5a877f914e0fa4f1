//! Dense univariate polynomials and truncated univariate series over the
//! coefficient field.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::field::FieldElem;

/// A univariate polynomial, dense, with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    pub coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(FieldElem::one())
    }

    pub fn constant(c: FieldElem) -> Self {
        if c.is_zero() {
            UniPoly::zero()
        } else {
            UniPoly { coeffs: vec![c] }
        }
    }

    /// The monomial c * t^k.
    pub fn monomial(c: FieldElem, k: u32) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![FieldElem::zero(); k as usize + 1];
        coeffs[k as usize] = c;
        UniPoly { coeffs }
    }

    pub fn var() -> Self {
        UniPoly::monomial(FieldElem::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<FieldElem>) -> Self {
        UniPoly { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().map(FieldElem::is_zero).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u32 - 1)
        }
    }

    pub fn coeff(&self, k: u32) -> FieldElem {
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(FieldElem::zero)
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0; None for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| i as u32)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(FieldElem::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(FieldElem::zero);
            out.push(a.add(&b));
        }
        UniPoly { coeffs: out }.trimmed()
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(FieldElem::neg).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![FieldElem::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        UniPoly { coeffs: out }.trimmed()
    }

    pub fn scale(&self, c: &FieldElem) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
        .trimmed()
    }

    pub fn shift_up(&self, k: u32) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![FieldElem::zero(); k as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Division with remainder over the field; divisor nonzero.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let db = divisor.coeffs.len() - 1;
        let lb_inv = divisor.coeffs[db].inv();
        let mut r = self.clone();
        if r.coeffs.len() <= db {
            return (UniPoly::zero(), r);
        }
        let mut q = vec![FieldElem::zero(); r.coeffs.len() - db];
        while !r.is_zero() && r.coeffs.len() > db {
            let dr = r.coeffs.len() - 1;
            let c = r.coeffs[dr].mul(&lb_inv);
            q[dr - db] = c.clone();
            for i in 0..=db {
                let t = divisor.coeffs[i].mul(&c);
                r.coeffs[dr - db + i] = r.coeffs[dr - db + i].sub(&t);
            }
            r = r.trimmed();
        }
        (UniPoly { coeffs: q }.trimmed(), r)
    }

    pub fn div_exact(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&FieldElem::from_int(i as i64)));
        }
        UniPoly { coeffs: out }.trimmed()
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Composition p(q(t)), with q truncated to `trunc` when given.
    pub fn compose(&self, q: &UniPoly, trunc: Option<u32>) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q);
            if let Some(n) = trunc {
                acc = acc.truncate(n);
            }
            acc = acc.add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    pub fn truncate(&self, n: u32) -> UniPoly {
        UniPoly {
            coeffs: self
                .coeffs
                .iter()
                .take(n as usize)
                .cloned()
                .collect::<Vec<_>>(),
        }
        .trimmed()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", i),
            };
            let term = if var.is_empty() {
                format!("{}", c)
            } else if c.is_one() {
                var
            } else {
                format!("({})*{}", c, var)
            };
            if first {
                write!(f, "{}", term)?;
                first = false;
            } else {
                write!(f, " + {}", term)?;
            }
        }
        Ok(())
    }
}

/// A univariate polynomial or truncated series: `trunc = None` means the
/// value is exact, `Some(n)` means coefficients are only valid below
/// degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniSeries {
    pub poly: UniPoly,
    pub trunc: Option<u32>,
}

impl UniSeries {
    pub fn exact(poly: UniPoly) -> Self {
        UniSeries { poly, trunc: None }
    }

    pub fn truncated(poly: UniPoly, n: u32) -> Self {
        UniSeries {
            poly: poly.truncate(n),
            trunc: Some(n),
        }
    }

    pub fn zero() -> Self {
        UniSeries::exact(UniPoly::zero())
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Order of vanishing at 0.
    ///
    /// A truncated series that is zero to its truncation order cannot
    /// answer and raises `TruncationInsufficient`; the exact zero
    /// polynomial raises `ZeroInput`.
    pub fn order(&self) -> Result<u32> {
        match self.poly.order() {
            Some(o) => Ok(o),
            None => match self.trunc {
                None => Err(Error::ZeroInput),
                Some(n) => Err(Error::TruncationInsufficient { order: n }),
            },
        }
    }

    pub fn is_definitely_zero(&self) -> bool {
        self.trunc.is_none() && self.poly.is_zero()
    }

    fn join_trunc(a: &UniSeries, b: &UniSeries) -> Option<u32> {
        match (a.trunc, b.trunc) {
            (None, None) => None,
            (Some(n), None) | (None, Some(n)) => Some(n),
            (Some(n), Some(m)) => Some(n.min(m)),
        }
    }

    pub fn add(&self, other: &UniSeries) -> UniSeries {
        let t = Self::join_trunc(self, other);
        let mut p = self.poly.add(&other.poly);
        if let Some(n) = t {
            p = p.truncate(n);
        }
        UniSeries { poly: p, trunc: t }
    }

    pub fn sub(&self, other: &UniSeries) -> UniSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniSeries {
        UniSeries {
            poly: self.poly.neg(),
            trunc: self.trunc,
        }
    }

    /// Product; the truncation order of each operand is shifted by the
    /// other factor's vanishing order.
    pub fn mul(&self, other: &UniSeries) -> UniSeries {
        if self.is_definitely_zero() || other.is_definitely_zero() {
            return UniSeries::zero();
        }
        let oa = self.poly.order();
        let ob = other.poly.order();
        let t = match (self.trunc, other.trunc) {
            (None, None) => None,
            _ => {
                let ta = self.trunc.map(|n| n + ob.unwrap_or(0));
                let tb = other.trunc.map(|n| n + oa.unwrap_or(0));
                match (ta, tb) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (Some(x), None) => Some(x),
                    (None, Some(y)) => Some(y),
                    (None, None) => unreachable!(),
                }
            }
        };
        let mut p = self.poly.mul(&other.poly);
        if let Some(n) = t {
            p = p.truncate(n);
        }
        UniSeries { poly: p, trunc: t }
    }

    pub fn scale(&self, c: &FieldElem) -> UniSeries {
        UniSeries {
            poly: self.poly.scale(c),
            trunc: self.trunc,
        }
    }

    pub fn derivative(&self) -> UniSeries {
        UniSeries {
            poly: self.poly.derivative(),
            trunc: self.trunc.map(|n| n.saturating_sub(1)),
        }
    }

    pub fn truncate(&self, n: u32) -> UniSeries {
        let t = match self.trunc {
            None => n,
            Some(m) => m.min(n),
        };
        UniSeries {
            poly: self.poly.truncate(t),
            trunc: Some(t),
        }
    }

    /// Multiplicative inverse of a unit series (nonzero constant term),
    /// truncated to `n`.
    pub fn invert_unit(&self, n: u32) -> Result<UniSeries> {
        let c0 = self.poly.coeff(0);
        if c0.is_zero() {
            return Err(Error::ZeroInput);
        }
        let t = match self.trunc {
            None => n,
            Some(m) => m.min(n),
        };
        let c0i = c0.inv();
        let mut inv = vec![FieldElem::zero(); t as usize];
        if t > 0 {
            inv[0] = c0i.clone();
        }
        for k in 1..t as usize {
            // coefficient k of self*inv must vanish
            let mut s = FieldElem::zero();
            for j in 0..k {
                let a = self.poly.coeff((k - j) as u32);
                if !a.is_zero() && !inv[j].is_zero() {
                    s = s.add(&a.mul(&inv[j]));
                }
            }
            inv[k] = s.neg().mul(&c0i);
        }
        Ok(UniSeries {
            poly: UniPoly::from_coeffs(inv),
            trunc: Some(t),
        })
    }

    /// Substitute t -> t^k.
    pub fn inflate(&self, k: u32) -> UniSeries {
        assert!(k >= 1);
        let mut coeffs = vec![FieldElem::zero(); self.poly.coeffs.len() * k as usize];
        for (i, c) in self.poly.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * k as usize] = c.clone();
            }
        }
        UniSeries {
            poly: UniPoly::from_coeffs(coeffs),
            trunc: self.trunc.map(|n| n * k),
        }
    }
}

impl fmt::Display for UniSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)?;
        if let Some(n) = self.trunc {
            write!(f, " + O(t^{})", n)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::rat_int;

    fn up(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| FieldElem::from_int(c)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let a = up(&[1, 0, -3, 2]); // 2t^3 - 3t^2 + 1
        let b = up(&[-1, 1]); // t - 1
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_basic() {
        let a = up(&[-1, 0, 1]); // t^2 - 1
        let b = up(&[1, 1]); // t + 1
        assert_eq!(a.gcd(&b), b.monic());
    }

    #[test]
    fn series_order_errors() {
        let z = UniSeries::truncated(UniPoly::zero(), 8);
        assert!(matches!(
            z.order(),
            Err(crate::error::Error::TruncationInsufficient { order: 8 })
        ));
        let z = UniSeries::exact(UniPoly::zero());
        assert!(matches!(z.order(), Err(crate::error::Error::ZeroInput)));
    }

    #[test]
    fn series_mul_trunc_shifts_by_order() {
        // (t^2 + O(t^5)) * (t^3 exact) is valid to order 5+3 = 8
        let a = UniSeries::truncated(up(&[0, 0, 1]), 5);
        let b = UniSeries::exact(up(&[0, 0, 0, 1]));
        let p = a.mul(&b);
        assert_eq!(p.trunc, Some(8));
        assert_eq!(p.poly, up(&[0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn invert_unit_series() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let s = UniSeries::exact(up(&[1, -1]));
        let inv = s.invert_unit(4).unwrap();
        assert_eq!(inv.poly, up(&[1, 1, 1, 1]));
        let _ = rat_int(0);
    }
}
