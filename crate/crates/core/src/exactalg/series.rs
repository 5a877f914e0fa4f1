//! Order-N truncated bivariate power series.
//!
//! A `TruncSeries` stores coefficients for total degree `< trunc_order`.
//! Every operation propagates the worst-case valid order, shifting by the
//! vanishing order of the other factor under multiplication; consumers
//! must check adequacy through `order()`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::bipoly::BiPoly;
use crate::exactalg::field::FieldElem;

pub const DEFAULT_TRUNC: u32 = 32;
pub const TRUNC_CAP: u32 = 512;

/// Run `f` with doubling truncation orders until it stops reporting
/// `TruncationInsufficient`, up to the hard cap.
pub fn with_adaptive_trunc<T>(
    start: u32,
    mut f: impl FnMut(u32) -> Result<T>,
) -> Result<T> {
    let mut n = start.max(2);
    loop {
        match f(n) {
            Err(Error::TruncationInsufficient { .. }) if n < TRUNC_CAP => {
                n = (n * 2).min(TRUNC_CAP);
            }
            Err(Error::TruncationInsufficient { .. }) => {
                return Err(Error::TruncationCapExceeded { cap: TRUNC_CAP })
            }
            other => return other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    pub terms: BTreeMap<(u32, u32), FieldElem>,
    pub trunc_order: u32,
}

impl TruncSeries {
    pub fn zero(trunc_order: u32) -> Self {
        TruncSeries {
            terms: BTreeMap::new(),
            trunc_order,
        }
    }

    pub fn from_poly(p: &BiPoly, trunc_order: u32) -> Self {
        TruncSeries {
            terms: p
                .truncate_total(trunc_order)
                .terms
                .into_iter()
                .collect(),
            trunc_order,
        }
    }

    pub fn to_poly(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.clone(),
        }
    }

    fn insert(&mut self, key: (u32, u32), c: FieldElem) {
        if key.0 + key.1 >= self.trunc_order || c.is_zero() {
            return;
        }
        self.terms.insert(key, c);
    }

    fn add_term(&mut self, key: (u32, u32), c: &FieldElem) {
        if key.0 + key.1 >= self.trunc_order || c.is_zero() {
            return;
        }
        let cur = self.terms.remove(&key).unwrap_or_else(FieldElem::zero);
        let s = cur.add(c);
        if !s.is_zero() {
            self.terms.insert(key, s);
        }
    }

    pub fn is_zero_to_trunc(&self) -> bool {
        self.terms.is_empty()
    }

    /// Minimal total degree of a nonzero term. Zero to the truncation
    /// order raises `TruncationInsufficient`.
    pub fn order(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| i + j)
            .min()
            .ok_or(Error::TruncationInsufficient {
                order: self.trunc_order,
            })
    }

    pub fn known_order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let n = self.trunc_order.min(other.trunc_order);
        let mut out = TruncSeries::zero(n);
        for (k, c) in &self.terms {
            out.add_term(*k, c);
        }
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
            trunc_order: self.trunc_order,
        }
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        // valid order: min over operands of (own trunc + other's order)
        let oa = self.known_order().unwrap_or(self.trunc_order);
        let ob = other.known_order().unwrap_or(other.trunc_order);
        let n = (self.trunc_order + ob).min(other.trunc_order + oa);
        let mut out = TruncSeries::zero(n);
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), &c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> TruncSeries {
        if c.is_zero() {
            return TruncSeries::zero(self.trunc_order);
        }
        TruncSeries {
            terms: self.terms.iter().map(|(k, a)| (*k, a.mul(c))).collect(),
            trunc_order: self.trunc_order,
        }
    }

    pub fn truncate(&self, n: u32) -> TruncSeries {
        let n = n.min(self.trunc_order);
        TruncSeries {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j < n)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
            trunc_order: n,
        }
    }

    pub fn set_coeff(&mut self, i: u32, j: u32, c: FieldElem) {
        self.insert((i, j), c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_order_propagation() {
        // (x, known to order 4) * (exact-poly x^2 y as series to order 10)
        let a = TruncSeries::from_poly(&BiPoly::x(), 4);
        let b = TruncSeries::from_poly(&BiPoly::from_terms(&[(1, 2, 1)]), 10);
        let p = a.mul(&b);
        // a valid to 4 with b of order 3 -> 7; b valid to 10 with a of order 1 -> 11
        assert_eq!(p.trunc_order, 7);
        assert_eq!(p.order().unwrap(), 4);
    }

    #[test]
    fn zero_series_order_errors() {
        let z = TruncSeries::zero(16);
        assert!(matches!(
            z.order(),
            Err(Error::TruncationInsufficient { order: 16 })
        ));
    }

    #[test]
    fn adaptive_trunc_doubles() {
        let mut seen = Vec::new();
        let r: Result<u32> = with_adaptive_trunc(8, |n| {
            seen.push(n);
            if n < 60 {
                Err(Error::TruncationInsufficient { order: n })
            } else {
                Ok(n)
            }
        });
        assert_eq!(r.unwrap(), 64);
        assert_eq!(seen, vec![8, 16, 32, 64]);
    }
}
