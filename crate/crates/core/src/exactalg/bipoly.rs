//! Sparse bivariate polynomials over the coefficient field.
//!
//! Exponent maps are `BTreeMap` keyed by `(i, j)` for `x^i y^j`, which
//! keeps iteration deterministic; no zero coefficients are stored.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::field::FieldElem;
use crate::exactalg::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    pub terms: BTreeMap<(u32, u32), FieldElem>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: FieldElem) -> Self {
        let mut p = BiPoly::zero();
        p.set((0, 0), c);
        p
    }

    pub fn one() -> Self {
        BiPoly::constant(FieldElem::one())
    }

    pub fn x() -> Self {
        BiPoly::monomial(FieldElem::one(), 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::monomial(FieldElem::one(), 0, 1)
    }

    pub fn monomial(c: FieldElem, i: u32, j: u32) -> Self {
        let mut p = BiPoly::zero();
        p.set((i, j), c);
        p
    }

    /// Build from integer triples (coef, i, j).
    pub fn from_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut p = BiPoly::zero();
        for &(c, i, j) in terms {
            p.add_term((i, j), &FieldElem::from_int(c));
        }
        p
    }

    pub fn set(&mut self, key: (u32, u32), c: FieldElem) {
        if c.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, c);
        }
    }

    pub fn add_term(&mut self, key: (u32, u32), c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.remove(&key).unwrap_or_else(FieldElem::zero);
        let s = cur.add(c);
        if !s.is_zero() {
            self.terms.insert(key, s);
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElem {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(FieldElem::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    /// Total degree; None for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Minimal total degree of a nonzero term; None for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    /// Homogeneous part of total degree d.
    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        let mut p = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i + j == d {
                p.set((i, j), c.clone());
            }
        }
        p
    }

    /// Homogeneous part of degree `order()`; errors on zero input.
    pub fn initial_form(&self) -> Result<BiPoly> {
        let o = self.order().ok_or(Error::ZeroInput)?;
        Ok(self.homogeneous_part(o))
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), &c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (*k, a.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_xpow(&self, k: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + k, j), c.clone()))
                .collect(),
        }
    }

    pub fn mul_ypow(&self, k: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j + k), c.clone()))
                .collect(),
        }
    }

    pub fn derivative_x(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term((i - 1, j), &c.mul(&FieldElem::from_int(i as i64)));
            }
        }
        out
    }

    pub fn derivative_y(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term((i, j - 1), &c.mul(&FieldElem::from_int(j as i64)));
            }
        }
        out
    }

    pub fn eval(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc.add(&c.mul(&x.pow(i)).mul(&y.pow(j)));
        }
        acc
    }

    /// Evaluate x = c, leaving a univariate polynomial in y.
    pub fn eval_x(&self, c: &FieldElem) -> UniPoly {
        let mut coeffs: Vec<FieldElem> =
            vec![FieldElem::zero(); self.degree_y().map(|d| d as usize + 1).unwrap_or(0)];
        for (&(i, j), a) in &self.terms {
            let v = a.mul(&c.pow(i));
            coeffs[j as usize] = coeffs[j as usize].add(&v);
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Evaluate y = c, leaving a univariate polynomial in x.
    pub fn eval_y(&self, c: &FieldElem) -> UniPoly {
        let mut coeffs: Vec<FieldElem> =
            vec![FieldElem::zero(); self.degree_x().map(|d| d as usize + 1).unwrap_or(0)];
        for (&(i, j), a) in &self.terms {
            let v = a.mul(&c.pow(j));
            coeffs[i as usize] = coeffs[i as usize].add(&v);
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Coefficients as univariate polynomials in x, indexed by y-power.
    pub fn y_coefficients(&self) -> Vec<UniPoly> {
        let dy = match self.degree_y() {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let dx = self.degree_x().unwrap() as usize;
        let mut out = vec![vec![FieldElem::zero(); dx + 1]; dy + 1];
        for (&(i, j), c) in &self.terms {
            out[j as usize][i as usize] = c.clone();
        }
        out.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn from_y_coefficients(coeffs: &[UniPoly]) -> BiPoly {
        let mut p = BiPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            for (i, a) in c.coeffs.iter().enumerate() {
                p.add_term((i as u32, j as u32), a);
            }
        }
        p
    }

    /// General substitution x -> u(x,y), y -> v(x,y).
    pub fn substitute(&self, u: &BiPoly, v: &BiPoly) -> BiPoly {
        // Horner in y over Horner in x.
        let mut rows: BTreeMap<u32, BTreeMap<u32, FieldElem>> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            rows.entry(j).or_default().insert(i, c.clone());
        }
        let mut acc = BiPoly::zero();
        let mut last_j: Option<u32> = None;
        for (&j, row) in rows.iter().rev() {
            if let Some(pj) = last_j {
                for _ in 0..(pj - j) {
                    acc = acc.mul(v);
                }
            }
            // row polynomial in x, evaluated at u by Horner
            let mut racc = BiPoly::zero();
            let mut last_i: Option<u32> = None;
            for (&i, c) in row.iter().rev() {
                if let Some(pi) = last_i {
                    for _ in 0..(pi - i) {
                        racc = racc.mul(u);
                    }
                }
                racc.add_term((0, 0), c);
                last_i = Some(i);
            }
            if let Some(i0) = last_i {
                for _ in 0..i0 {
                    racc = racc.mul(u);
                }
            }
            acc = acc.add(&racc);
            last_j = Some(j);
        }
        if let Some(j0) = last_j {
            for _ in 0..j0 {
                acc = acc.mul(v);
            }
        }
        acc
    }

    /// p(x, y + c x): the spec's shear, an order-preserving change of
    /// coordinates with inverse shear by -c.
    pub fn shear(&self, c: &FieldElem) -> BiPoly {
        if c.is_zero() {
            return self.clone();
        }
        let u = BiPoly::x();
        let v = BiPoly::y().add(&BiPoly::x().scale(c));
        self.substitute(&u, &v)
    }

    /// p(x + c y, y): the transpose shear, used to put pairs in
    /// y-general position for resultant-based intersection numbers.
    pub fn shear_x(&self, c: &FieldElem) -> BiPoly {
        if c.is_zero() {
            return self.clone();
        }
        let u = BiPoly::x().add(&BiPoly::y().scale(c));
        let v = BiPoly::y();
        self.substitute(&u, &v)
    }

    pub fn swap_xy(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Translate the origin to (a, b): p(x + a, y + b).
    pub fn translate(&self, a: &FieldElem, b: &FieldElem) -> BiPoly {
        let u = BiPoly::x().add(&BiPoly::constant(a.clone()));
        let v = BiPoly::y().add(&BiPoly::constant(b.clone()));
        self.substitute(&u, &v)
    }

    /// Largest k with x^k dividing self (zero input gives 0).
    pub fn x_order(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).min().unwrap_or(0)
    }

    pub fn y_order(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).min().unwrap_or(0)
    }

    pub fn div_xpow(&self, k: u32) -> BiPoly {
        debug_assert!(self.x_order() >= k);
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i - k, j), c.clone()))
                .collect(),
        }
    }

    pub fn div_ypow(&self, k: u32) -> BiPoly {
        debug_assert!(self.y_order() >= k);
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j - k), c.clone()))
                .collect(),
        }
    }

    /// Exact division, None when the division does not come out even.
    ///
    /// Long division in y whose steps are exact univariate divisions in
    /// x; pure x/y power factors are peeled off first so the leading
    /// x-coefficient division stays well posed.
    pub fn div_exact(&self, divisor: &BiPoly) -> Option<BiPoly> {
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        if divisor.is_zero() {
            return None;
        }
        let dx = divisor.x_order();
        let dy = divisor.y_order();
        if self.x_order() < dx || self.y_order() < dy {
            return None;
        }
        let num = self.div_xpow(dx).div_ypow(dy);
        let den = divisor.div_xpow(dx).div_ypow(dy);
        let nc = num.y_coefficients();
        let dc = den.y_coefficients();
        if nc.len() < dc.len() {
            return None;
        }
        let dl = dc.len() - 1;
        let mut rem = nc;
        let mut quot = vec![UniPoly::zero(); rem.len() - dl];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dl].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.div_exact(&dc[dl])?;
            for (m, d) in dc.iter().enumerate() {
                let sub = q.mul(d);
                rem[k + m] = rem[k + m].sub(&sub);
            }
            quot[k] = q;
        }
        if rem.iter().all(UniPoly::is_zero) {
            Some(BiPoly::from_y_coefficients(&quot))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &BiPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Normalize so the leading term (max in (total degree, i, j) order)
    /// has coefficient 1.
    pub fn normalized(&self) -> BiPoly {
        match self.leading_coeff() {
            None => BiPoly::zero(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    fn leading_key(&self) -> Option<(u32, u32)> {
        self.terms
            .keys()
            .max_by_key(|&&(i, j)| (i + j, i, j))
            .copied()
    }

    pub fn leading_coeff(&self) -> Option<FieldElem> {
        self.leading_key().map(|k| self.terms[&k].clone())
    }

    /// Truncate away all terms of total degree >= n.
    pub fn truncate_total(&self, n: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j < n)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut deg = None;
        for &(i, j) in self.terms.keys() {
            match deg {
                None => deg = Some(i + j),
                Some(d) if d != i + j => return false,
                _ => {}
            }
        }
        true
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // print highest total degree last for readability of local germs
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (i + j, j, i));
        for (i, j) in keys {
            let c = &self.terms[&(i, j)];
            let mut mono = String::new();
            if i == 1 {
                mono.push('x');
            } else if i > 1 {
                mono.push_str(&format!("x^{}", i));
            }
            if j >= 1 {
                if !mono.is_empty() {
                    mono.push('*');
                }
                if j == 1 {
                    mono.push('y');
                } else {
                    mono.push_str(&format!("y^{}", j));
                }
            }
            let (sign, mag) = match c.as_rat() {
                Some(r) if r.numer().sign() == num_bigint::Sign::Minus => {
                    ("-", FieldElem::from_rat(-r))
                }
                _ => ("+", c.clone()),
            };
            let body = if mono.is_empty() {
                format!("{}", mag)
            } else if mag.is_one() {
                mono
            } else if mag.as_rat().is_some() {
                format!("{}*{}", mag, mono)
            } else {
                format!("({})*{}", mag, mono)
            };
            if first {
                if sign == "-" {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else {
                write!(f, " {} {}", sign, body)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cusp() -> BiPoly {
        // y^2 - x^3
        BiPoly::from_terms(&[(1, 0, 2), (-1, 3, 0)])
    }

    #[test]
    fn order_and_degree() {
        assert_eq!(BiPoly::one().order(), Some(0));
        assert_eq!(cusp().order(), Some(2));
        assert_eq!(cusp().mul(&BiPoly::x()).order(), Some(3));
        assert_eq!(cusp().degree(), Some(3));
    }

    #[test]
    fn initial_form_examples() {
        assert_eq!(cusp().initial_form().unwrap(), BiPoly::from_terms(&[(1, 0, 2)]));
        let p = BiPoly::from_terms(&[(1, 1, 1), (1, 3, 0)]);
        assert_eq!(p.initial_form().unwrap(), BiPoly::from_terms(&[(1, 1, 1)]));
        let q = BiPoly::from_terms(&[(1, 1, 0), (1, 0, 1)]).pow(3).add(&BiPoly::from_terms(&[(1, 4, 0)]));
        assert_eq!(
            q.initial_form().unwrap(),
            BiPoly::from_terms(&[(1, 1, 0), (1, 0, 1)]).pow(3)
        );
        assert!(matches!(
            BiPoly::zero().initial_form(),
            Err(crate::error::Error::ZeroInput)
        ));
    }

    #[test]
    fn shear_examples() {
        let one = FieldElem::one();
        // shear(y, 1) = y + x
        assert_eq!(
            BiPoly::y().shear(&one),
            BiPoly::from_terms(&[(1, 1, 0), (1, 0, 1)])
        );
        // inverse
        let p = cusp();
        let c = FieldElem::from_int(5);
        assert_eq!(p.shear(&c).shear(&c.neg()), p);
        assert_eq!(p.shear(&c).order(), Some(2));
    }

    #[test]
    fn exact_division() {
        let p = cusp();
        let q = BiPoly::from_terms(&[(2, 1, 1), (3, 0, 0)]);
        let prod = p.mul(&q);
        assert_eq!(prod.div_exact(&q), Some(p.clone()));
        assert_eq!(prod.div_exact(&p), Some(q));
        assert!(prod
            .div_exact(&BiPoly::from_terms(&[(1, 1, 0), (1, 0, 1)]))
            .is_none());
    }

    #[test]
    fn substitution_blowup_chart() {
        // f(x, xy) for the cusp: x^2(y^2 x - x) -> strict transform y^2 - x
        let f = cusp();
        let sub = f.substitute(&BiPoly::x(), &BiPoly::x().mul(&BiPoly::y()));
        assert_eq!(sub.x_order(), 2);
        let strict = sub.div_xpow(2);
        assert_eq!(strict, BiPoly::from_terms(&[(1, 0, 2), (-1, 1, 0)]));
    }
}
