//! Formal plane curves: branch decomposition via the Newton polygon,
//! multiplicities, and local intersection numbers.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::bipoly::BiPoly;
use crate::exactalg::factor::factor_uni_over;
use crate::exactalg::field::{CoefField, FieldElem};
use crate::exactalg::gcd::{gcd_bipoly, is_squarefree};
use crate::exactalg::resultant::resultant_elim_y;

use crate::exactalg::unipoly::{UniPoly, UniSeries};

/// A reduced formal curve germ at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub equation: BiPoly,
    pub field: CoefField,
}

impl Curve {
    pub fn new(equation: BiPoly) -> Result<Curve> {
        if equation.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !equation.coeff(0, 0).is_zero() {
            return Err(Error::Unsupported(
                "curve equation must vanish at the origin".into(),
            ));
        }
        if !is_squarefree(&equation) {
            return Err(Error::Unsupported("curve equation must be reduced".into()));
        }
        let field = poly_field(&equation);
        Ok(Curve { equation, field })
    }

    /// Algebraic multiplicity at the origin.
    pub fn multiplicity(&self) -> u32 {
        self.equation.order().expect("curve equations are nonzero")
    }

    /// Milnor number at the origin: i0(f_x, f_y).
    pub fn milnor(&self, rng: &mut impl Rng) -> Result<u64> {
        let fx = self.equation.derivative_x();
        let fy = self.equation.derivative_y();
        match intersection_multiplicity(&fx, &fy, rng)? {
            Mult::Finite(v) => Ok(v),
            Mult::Infinite => Err(Error::NonIsolated),
        }
    }

    pub fn branches(&self, trunc: u32) -> Result<Vec<Branch>> {
        newton_puiseux(self, trunc)
    }
}

pub fn poly_field(p: &BiPoly) -> CoefField {
    for c in p.terms.values() {
        if let CoefField::Extension(e) = c.field() {
            return CoefField::Extension(e);
        }
    }
    CoefField::Rationals
}

/// A local intersection number: finite or infinite (shared branch).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mult {
    Finite(u64),
    Infinite,
}

impl Mult {
    pub fn finite(self) -> Option<u64> {
        match self {
            Mult::Finite(v) => Some(v),
            Mult::Infinite => None,
        }
    }
}

/// Truncated primitive parametrization t -> (x(t), y(t)) of a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchParam {
    pub x_of_t: UniSeries,
    pub y_of_t: UniSeries,
    /// Number of conjugate branches this parametrization stands for,
    /// relative to the base field of the curve it came from.
    pub orbit_size: u32,
}

impl BranchParam {
    pub fn new(x_of_t: UniSeries, y_of_t: UniSeries) -> Result<Self> {
        let b = BranchParam {
            x_of_t,
            y_of_t,
            orbit_size: 1,
        };
        if !b.x_of_t.poly.coeff(0).is_zero() || !b.y_of_t.poly.coeff(0).is_zero() {
            return Err(Error::Unsupported(
                "branch parametrization must start at the origin".into(),
            ));
        }
        Ok(b.primitivized())
    }

    pub fn from_polys(x: UniPoly, y: UniPoly) -> Result<Self> {
        Self::new(UniSeries::exact(x), UniSeries::exact(y))
    }

    /// Divide out a common exponent gcd so the parametrization is
    /// primitive (can only be detected on the known part).
    fn primitivized(self) -> Self {
        let mut g: u32 = 0;
        for (k, c) in self.x_of_t.poly.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = gcd_u32(g, k as u32);
            }
        }
        for (k, c) in self.y_of_t.poly.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = gcd_u32(g, k as u32);
            }
        }
        if g <= 1 {
            return self;
        }
        BranchParam {
            x_of_t: deflate(&self.x_of_t, g),
            y_of_t: deflate(&self.y_of_t, g),
            orbit_size: self.orbit_size,
        }
    }

    /// Multiplicity of the branch: min t-order of the two coordinates.
    pub fn multiplicity(&self) -> Result<u32> {
        let ox = self.x_of_t.order();
        let oy = self.y_of_t.order();
        match (ox, oy) {
            (Ok(a), Ok(b)) => Ok(a.min(b)),
            (Ok(a), Err(Error::ZeroInput)) => Ok(a),
            (Err(Error::ZeroInput), Ok(b)) => Ok(b),
            (Ok(a), Err(Error::TruncationInsufficient { order })) => Ok(a.min(order)),
            (Err(Error::TruncationInsufficient { order }), Ok(b)) => Ok(b.min(order)),
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.x_of_t.is_exact() && self.y_of_t.is_exact()
    }

    pub fn trunc(&self) -> Option<u32> {
        match (self.x_of_t.trunc, self.y_of_t.trunc) {
            (None, None) => None,
            (Some(n), None) | (None, Some(n)) => Some(n),
            (Some(n), Some(m)) => Some(n.min(m)),
        }
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

fn deflate(s: &UniSeries, g: u32) -> UniSeries {
    let mut coeffs = Vec::new();
    for (k, c) in s.poly.coeffs.iter().enumerate() {
        if !c.is_zero() {
            let k = k as u32;
            debug_assert_eq!(k % g, 0);
            let idx = (k / g) as usize;
            if coeffs.len() <= idx {
                coeffs.resize(idx + 1, FieldElem::zero());
            }
            coeffs[idx] = c.clone();
        }
    }
    UniSeries {
        poly: UniPoly::from_coeffs(coeffs),
        trunc: s.trunc.map(|n| n.div_ceil(g)),
    }
}

/// A branch of a curve: a parametrized branch, or a conjugacy orbit that
/// would require a field tower to split into coefficients.
#[derive(Clone, Debug)]
pub enum Branch {
    Param(BranchParam),
    Orbit(OrbitBranch),
}

#[derive(Clone, Debug)]
pub struct OrbitBranch {
    /// Irreducible polynomial over the working extension whose roots the
    /// branch coefficients would need.
    pub minpoly: UniPoly,
    pub context: String,
}

/// Evaluate g along a parametrized arc.
pub fn compose_series(g: &BiPoly, x: &UniSeries, y: &UniSeries) -> UniSeries {
    let dx = g.degree_x().unwrap_or(0);
    let dy = g.degree_y().unwrap_or(0);
    let mut xp: Vec<UniSeries> = Vec::with_capacity(dx as usize + 1);
    let mut yp: Vec<UniSeries> = Vec::with_capacity(dy as usize + 1);
    let one = UniSeries::exact(UniPoly::one());
    xp.push(one.clone());
    for i in 1..=dx {
        let prev = xp[(i - 1) as usize].clone();
        xp.push(prev.mul(x));
    }
    yp.push(one);
    for j in 1..=dy {
        let prev = yp[(j - 1) as usize].clone();
        yp.push(prev.mul(y));
    }
    let mut acc: Option<UniSeries> = None;
    for (&(i, j), c) in &g.terms {
        let term = xp[i as usize].mul(&yp[j as usize]).scale(c);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.unwrap_or_else(UniSeries::zero)
}

/// ord_t g(x(t), y(t)).
///
/// When the composed series vanishes: identically-zero exact input means
/// the branch lies inside (g = 0) and is reported as a common component;
/// a truncated zero is a truncation failure.
pub fn branch_pullback_order(b: &BranchParam, g: &BiPoly) -> Result<u32> {
    let s = compose_series(g, &b.x_of_t, &b.y_of_t);
    match s.order() {
        Ok(o) => Ok(o),
        Err(Error::ZeroInput) => Err(Error::CommonComponent(
            "polynomial vanishes identically on the branch".into(),
        )),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------
// Intersection multiplicity via sheared resultants
// ---------------------------------------------------------------------

const SHEAR_RETRY_BUDGET: usize = 24;

/// Local intersection number at the origin.
///
/// A random transpose shear puts both inputs in y-general position, the
/// resultant eliminating y is read off at x = 0, and a second
/// independent shear must reproduce the value.
pub fn intersection_multiplicity(
    f: &BiPoly,
    g: &BiPoly,
    rng: &mut impl Rng,
) -> Result<Mult> {
    if f.is_zero() || g.is_zero() {
        let other = if f.is_zero() { g } else { f };
        return if other.coeff(0, 0).is_zero() {
            Ok(Mult::Infinite)
        } else {
            Ok(Mult::Finite(0))
        };
    }
    if !f.coeff(0, 0).is_zero() || !g.coeff(0, 0).is_zero() {
        return Ok(Mult::Finite(0));
    }
    let h = gcd_bipoly(f, g);
    let (fr, gr);
    if h.is_constant() {
        fr = f.clone();
        gr = g.clone();
    } else if h.coeff(0, 0).is_zero() {
        return Ok(Mult::Infinite);
    } else {
        fr = f.div_exact(&h).expect("gcd divides");
        gr = g.div_exact(&h).expect("gcd divides");
    }
    if !fr.coeff(0, 0).is_zero() || !gr.coeff(0, 0).is_zero() {
        // the unit-at-origin common factor carried the vanishing
        return Ok(Mult::Finite(0));
    }
    let mut failures = 0usize;
    loop {
        let a = i0_one_shear(&fr, &gr, rng)?;
        let b = i0_one_shear(&fr, &gr, rng)?;
        if a == b {
            return Ok(Mult::Finite(a));
        }
        failures += 1;
        if failures >= 4 {
            return Err(Error::GenericityFailure(
                "sheared resultant orders kept disagreeing".into(),
            ));
        }
    }
}

fn i0_one_shear(f: &BiPoly, g: &BiPoly, rng: &mut impl Rng) -> Result<u64> {
    let df = f.degree().unwrap();
    let dg = g.degree().unwrap();
    let ftop = f.homogeneous_part(df);
    let gtop = g.homogeneous_part(dg);
    for attempt in 0..SHEAR_RETRY_BUDGET {
        let span = 6 + 3 * attempt as i64;
        let c = FieldElem::from_int(rng.gen_range(-span..=span));
        // leading y-coefficients of the sheared pair must be the nonzero
        // constants top(c, 1)
        if ftop.eval(&c, &FieldElem::one()).is_zero()
            || gtop.eval(&c, &FieldElem::one()).is_zero()
        {
            continue;
        }
        let fs = f.shear_x(&c);
        let gs = g.shear_x(&c);
        // x = 0 slices may share no root besides y = 0
        let f0 = fs.eval_x(&FieldElem::zero());
        let g0 = gs.eval_x(&FieldElem::zero());
        let d = f0.gcd(&g0);
        if !d.is_monomial() {
            continue;
        }
        let r = resultant_elim_y(&fs, &gs);
        debug_assert!(!r.is_zero(), "coprime inputs have nonzero resultant");
        return Ok(r.order().unwrap_or(0) as u64);
    }
    Err(Error::GenericityFailure(
        "no shear reached y-general position".into(),
    ))
}

// ---------------------------------------------------------------------
// Newton-Puiseux
// ---------------------------------------------------------------------

const PUISEUX_DEPTH_CAP: u32 = 64;

/// Branch decomposition of a reduced curve germ at the origin.
pub fn newton_puiseux(c: &Curve, trunc: u32) -> Result<Vec<Branch>> {
    let trunc = trunc.max(4);
    let mut out = Vec::new();
    let mut f = c.equation.clone();
    let xo = f.x_order();
    if xo > 0 {
        debug_assert_eq!(xo, 1, "reduced equation has x at most once");
        out.push(Branch::Param(BranchParam {
            x_of_t: UniSeries::exact(UniPoly::zero()),
            y_of_t: UniSeries::exact(UniPoly::var()),
            orbit_size: 1,
        }));
        f = f.div_xpow(xo);
    }
    if f.coeff(0, 0).is_zero() {
        let subs = np_rec(&f, &c.field, trunc, 0)?;
        out.extend(subs);
    }
    Ok(out)
}

fn np_rec(f: &BiPoly, base: &CoefField, trunc: u32, depth: u32) -> Result<Vec<Branch>> {
    if depth > PUISEUX_DEPTH_CAP {
        return Err(Error::Unsupported(
            "Newton polygon recursion exceeded its depth cap".into(),
        ));
    }
    let mut out: Vec<Branch> = Vec::new();
    let mut f = f.clone();
    let yo = f.y_order();
    if yo > 0 {
        out.push(Branch::Param(BranchParam {
            x_of_t: UniSeries::exact(UniPoly::var()),
            y_of_t: UniSeries::exact(UniPoly::zero()),
            orbit_size: 1,
        }));
        f = f.div_ypow(yo);
    }
    if !f.coeff(0, 0).is_zero() {
        return Ok(out);
    }
    debug_assert_eq!(f.x_order(), 0);
    for edge in newton_edges(&f) {
        let psi = edge_polynomial(&f, &edge);
        let (_, factors) = factor_uni_over(&psi, base)?;
        for (h, _mult) in factors {
            match h.degree() {
                Some(1) => {
                    let z = h.coeff(0).neg().div(&h.coeff(1));
                    out.extend(expand_edge_root(&f, base, &edge, &z, 1, trunc, depth)?);
                }
                Some(d) if d >= 2 => match base {
                    CoefField::Rationals => {
                        let minpoly: Vec<_> = h
                            .monic()
                            .coeffs
                            .iter()
                            .map(|c| c.as_rat().expect("rational").clone())
                            .collect();
                        let ext = base.extend(minpoly, "a")?;
                        let z = ext.gen();
                        let field = CoefField::Extension(ext);
                        out.extend(expand_edge_root(&f, &field, &edge, &z, d, trunc, depth)?);
                    }
                    CoefField::Extension(_) => {
                        out.push(Branch::Orbit(OrbitBranch {
                            minpoly: h.clone(),
                            context: format!(
                                "edge ({}, {}) coefficient needs a tower over the current field",
                                edge.p, edge.q
                            ),
                        }));
                    }
                },
                _ => unreachable!("edge polynomial factors are nonconstant"),
            }
        }
    }
    Ok(out)
}

struct Edge {
    /// Lattice step along the edge: (p, -q) with gcd(p, q) = 1.
    p: u32,
    q: u32,
    /// Left endpoint and lattice-point count.
    i0: u32,
    j0: u32,
    g: u32,
}

fn newton_edges(f: &BiPoly) -> Vec<Edge> {
    let mut minj: BTreeMap<u32, u32> = BTreeMap::new();
    for &(i, j) in f.terms.keys() {
        minj.entry(i)
            .and_modify(|m| {
                if j < *m {
                    *m = j;
                }
            })
            .or_insert(j);
    }
    let pts: Vec<(i64, i64)> = minj.iter().map(|(&i, &j)| (i as i64, j as i64)).collect();
    // lower convex hull (points already sorted by i)
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut edges = Vec::new();
    for w in hull.windows(2) {
        let (i0, j0) = w[0];
        let (i1, j1) = w[1];
        if j1 >= j0 {
            continue; // only negative slopes carry branches at the origin
        }
        let di = (i1 - i0) as u32;
        let dj = (j0 - j1) as u32;
        let g = gcd_u32(di, dj);
        edges.push(Edge {
            p: di / g,
            q: dj / g,
            i0: i0 as u32,
            j0: j0 as u32,
            g,
        });
    }
    edges
}

/// Edge polynomial in z = c^q: coefficient of z^(g-m) is the curve
/// coefficient at the m-th lattice point of the edge.
fn edge_polynomial(f: &BiPoly, e: &Edge) -> UniPoly {
    let mut coeffs = vec![FieldElem::zero(); e.g as usize + 1];
    for m in 0..=e.g {
        let i = e.i0 + m * e.p;
        let j = e.j0 - m * e.q;
        coeffs[(e.g - m) as usize] = f.coeff(i, j);
    }
    UniPoly::from_coeffs(coeffs)
}

fn fpow_i(z: &FieldElem, e: i64) -> FieldElem {
    if e >= 0 {
        z.pow(e as u32)
    } else {
        z.inv().pow((-e) as u32)
    }
}

/// Bezout pair (r, s) with r*q - s*p = 1.
fn bezout_rq_sp(p: u32, q: u32) -> (i64, i64) {
    let (mut r0, mut r1) = (q as i64, p as i64);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let qq = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - qq * r1);
        (s0, s1) = (s1, s0 - qq * s1);
        (t0, t1) = (t1, t0 - qq * t1);
    }
    debug_assert_eq!(r0, 1, "p and q are coprime");
    // s0*q + t0*p = 1 -> r = s0, s = -t0
    (s0, -t0)
}

fn expand_edge_root(
    f: &BiPoly,
    field: &CoefField,
    e: &Edge,
    z: &FieldElem,
    orbit: u32,
    trunc: u32,
    depth: u32,
) -> Result<Vec<Branch>> {
    let (r, s) = bezout_rq_sp(e.p, e.q);
    // substitute x = z^s x1^q, y = z^r x1^p (1 + y1), divide by x1^w
    let w = e.q * e.i0 + e.p * e.j0;
    let mut f1 = BiPoly::zero();
    for (&(i, j), c) in &f.terms {
        let zfac = fpow_i(z, s * i as i64 + r * j as i64);
        let xexp = e.q * i + e.p * j;
        debug_assert!(xexp >= w);
        // (1 + y1)^j expanded
        let coef = c.mul(&zfac);
        let mut binom = FieldElem::one();
        for k in 0..=j {
            // binomial(j, k)
            if k > 0 {
                binom = binom
                    .mul(&FieldElem::from_int((j - k + 1) as i64))
                    .div(&FieldElem::from_int(k as i64));
            }
            f1.add_term((xexp - w, k), &coef.mul(&binom));
        }
    }
    debug_assert!(f1.coeff(0, 0).is_zero(), "edge root must kill the bottom");
    let fy0 = f1.derivative_y().coeff(0, 0);
    let subs: Vec<Branch> = if !fy0.is_zero() {
        // regular: unique series solution y1(x1)
        let y1 = solve_regular(&f1, trunc)?;
        vec![Branch::Param(BranchParam {
            x_of_t: UniSeries::exact(UniPoly::var()),
            y_of_t: y1,
            orbit_size: 1,
        })]
    } else {
        np_rec(&f1, field, trunc, depth + 1)?
    };
    let mut out = Vec::new();
    for sub in subs {
        match sub {
            Branch::Orbit(o) => out.push(Branch::Orbit(o)),
            Branch::Param(bp) => {
                // x = z^s x1^q, y = z^r x1^p (1 + y1)
                let x1 = &bp.x_of_t;
                let y1 = &bp.y_of_t;
                if x1.is_definitely_zero() {
                    // a vertical sub-branch x1 = 0 maps onto the origin,
                    // not a branch downstairs
                    continue;
                }
                let xq = pow_series(x1, e.q);
                let xp = pow_series(x1, e.p);
                let one = UniSeries::exact(UniPoly::one());
                let x = xq.scale(&fpow_i(z, s));
                let y = xp.mul(&one.add(y1)).scale(&fpow_i(z, r));
                let b = BranchParam {
                    x_of_t: x,
                    y_of_t: y,
                    orbit_size: bp.orbit_size * orbit,
                }
                .primitivized();
                out.push(Branch::Param(b));
            }
        }
    }
    Ok(out)
}

fn pow_series(s: &UniSeries, e: u32) -> UniSeries {
    let mut acc = UniSeries::exact(UniPoly::one());
    for _ in 0..e {
        acc = acc.mul(s);
    }
    acc
}

/// Unique series solution of f(x, y(x)) = 0 with y(0) = 0, for f with
/// f(0,0) = 0 and f_y(0,0) != 0, to order `trunc`.
pub fn solve_regular(f: &BiPoly, trunc: u32) -> Result<UniSeries> {
    let u = f.derivative_y().coeff(0, 0);
    if u.is_zero() {
        return Err(Error::Unsupported("solve_regular needs f_y(0,0) != 0".into()));
    }
    let uinv = u.inv();
    let mut y = UniPoly::zero();
    let x = UniSeries::exact(UniPoly::var());
    for k in 1..trunc {
        let cur = UniSeries::truncated(y.clone(), trunc + 1);
        let res = compose_series(f, &x, &cur);
        let rho = res.poly.coeff(k);
        if rho.is_zero() {
            continue;
        }
        let c = rho.neg().mul(&uinv);
        y = y.add(&UniPoly::monomial(c, k));
    }
    Ok(UniSeries::truncated(y, trunc))
}

/// Verification record for Noether's formula across one blow-up.
#[derive(Clone, Debug, Serialize)]
pub struct NoetherRecord {
    pub i0: u64,
    pub nu_product: u64,
    pub upstairs_sum: u64,
    pub holds: bool,
}

/// Checks i0(c1, c2) = nu(c1) nu(c2) + sum of upstairs intersection
/// numbers of the strict transforms at shared points of the exceptional
/// line.
pub fn noether_check(c1: &Curve, c2: &Curve, rng: &mut impl Rng) -> Result<NoetherRecord> {
    let i0 = match intersection_multiplicity(&c1.equation, &c2.equation, rng)? {
        Mult::Finite(v) => v,
        Mult::Infinite => {
            return Err(Error::CommonComponent("curves share a branch".into()))
        }
    };
    let n1 = c1.multiplicity();
    let n2 = c2.multiplicity();
    let init1 = c1.equation.initial_form()?;
    let init2 = c2.equation.initial_form()?;
    let shared = gcd_bipoly(&init1, &init2);
    let mut upstairs: u64 = 0;
    let s1 = strict_transform_x(&c1.equation, n1);
    let s2 = strict_transform_x(&c2.equation, n2);
    if !shared.is_constant() {
        // x-chart directions: roots of shared(1, v)
        let dir_poly = shared.eval_x(&FieldElem::one()); // univariate in the y slot = v
        let base = if c1.field.is_rational() && c2.field.is_rational() {
            CoefField::Rationals
        } else if !c1.field.is_rational() {
            c1.field.clone()
        } else {
            c2.field.clone()
        };
        let (_, factors) = factor_uni_over(&dir_poly, &base)?;
        for (h, _) in factors {
            match h.degree() {
                Some(1) => {
                    let v0 = h.coeff(0).neg().div(&h.coeff(1));
                    let t1 = s1.translate(&FieldElem::zero(), &v0);
                    let t2 = s2.translate(&FieldElem::zero(), &v0);
                    if let Mult::Finite(v) = intersection_multiplicity(&t1, &t2, rng)? {
                        upstairs += v;
                    }
                }
                Some(d) => match &base {
                    CoefField::Rationals => {
                        let minpoly: Vec<_> = h
                            .monic()
                            .coeffs
                            .iter()
                            .map(|c| c.as_rat().unwrap().clone())
                            .collect();
                        let ext = base.extend(minpoly, "a")?;
                        let v0 = ext.gen();
                        let t1 = s1.translate(&FieldElem::zero(), &v0);
                        let t2 = s2.translate(&FieldElem::zero(), &v0);
                        if let Mult::Finite(v) = intersection_multiplicity(&t1, &t2, rng)? {
                            upstairs += v * d as u64;
                        }
                    }
                    CoefField::Extension(_) => {
                        return Err(Error::UnsupportedExtensionTower {
                            minimal_poly: format!("{}", h),
                        })
                    }
                },
                None => {}
            }
        }
        // shared vertical tangent: both strict transforms meet the
        // y-chart origin
        if shared.x_order() > 0 {
            let u1 = strict_transform_y(&c1.equation, n1);
            let u2 = strict_transform_y(&c2.equation, n2);
            if let Mult::Finite(v) = intersection_multiplicity(&u1, &u2, rng)? {
                upstairs += v;
            }
        }
    }
    let rhs = n1 as u64 * n2 as u64 + upstairs;
    Ok(NoetherRecord {
        i0,
        nu_product: n1 as u64 * n2 as u64,
        upstairs_sum: upstairs,
        holds: i0 == rhs,
    })
}

/// Strict transform in the x-chart: f(x, xv) / x^nu.
pub fn strict_transform_x(f: &BiPoly, nu: u32) -> BiPoly {
    let sub = f.substitute(&BiPoly::x(), &BiPoly::x().mul(&BiPoly::y()));
    debug_assert!(sub.x_order() >= nu);
    sub.div_xpow(nu)
}

/// Strict transform in the y-chart: f(uy, y) / y^nu.
pub fn strict_transform_y(f: &BiPoly, nu: u32) -> BiPoly {
    let sub = f.substitute(&BiPoly::x().mul(&BiPoly::y()), &BiPoly::y());
    debug_assert!(sub.y_order() >= nu);
    sub.div_ypow(nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(12345)
    }

    fn cusp() -> BiPoly {
        BiPoly::from_terms(&[(1, 0, 2), (-1, 3, 0)])
    }

    #[test]
    fn multiplicities() {
        assert_eq!(Curve::new(cusp()).unwrap().multiplicity(), 2);
        let xy = BiPoly::x().mul(&BiPoly::y());
        assert_eq!(Curve::new(xy).unwrap().multiplicity(), 2);
        let smooth = BiPoly::y().sub(&BiPoly::from_terms(&[(1, 2, 0)]));
        assert_eq!(Curve::new(smooth).unwrap().multiplicity(), 1);
    }

    #[test]
    fn intersection_examples() {
        let mut r = rng();
        let i = |f: &BiPoly, g: &BiPoly, r: &mut ChaCha8Rng| {
            intersection_multiplicity(f, g, r).unwrap()
        };
        assert_eq!(i(&BiPoly::x(), &BiPoly::y(), &mut r), Mult::Finite(1));
        assert_eq!(i(&cusp(), &BiPoly::y(), &mut r), Mult::Finite(3));
        assert_eq!(i(&cusp(), &BiPoly::x(), &mut r), Mult::Finite(2));
        // shared factor through origin
        let f = BiPoly::x().mul(&BiPoly::y());
        let g = BiPoly::x().mul(&cusp());
        assert_eq!(i(&f, &g, &mut r), Mult::Infinite);
        // shared factor away from origin: (y-1) is a unit here
        let u = BiPoly::y().sub(&BiPoly::one());
        let f2 = BiPoly::x().mul(&u);
        let g2 = BiPoly::y().mul(&u);
        assert_eq!(i(&f2, &g2, &mut r), Mult::Finite(1));
    }

    #[test]
    fn milnor_examples() {
        let mut r = rng();
        assert_eq!(Curve::new(cusp()).unwrap().milnor(&mut r).unwrap(), 2);
        let xy = BiPoly::x().mul(&BiPoly::y());
        assert_eq!(Curve::new(xy).unwrap().milnor(&mut r).unwrap(), 1);
        let smooth = BiPoly::y().sub(&BiPoly::x());
        assert_eq!(Curve::new(smooth).unwrap().milnor(&mut r).unwrap(), 0);
    }

    #[test]
    fn puiseux_cusp() {
        let c = Curve::new(cusp()).unwrap();
        let bs = c.branches(16).unwrap();
        assert_eq!(bs.len(), 1);
        match &bs[0] {
            Branch::Param(b) => {
                assert_eq!(b.x_of_t.poly, UniPoly::monomial(FieldElem::one(), 2));
                assert_eq!(
                    b.y_of_t.poly.order().unwrap(),
                    3,
                    "cusp branch is (t^2, t^3 + ..)"
                );
                // residual check: f(x(t), y(t)) = 0 to precision
                let res = compose_series(&cusp(), &b.x_of_t, &b.y_of_t);
                assert!(res.poly.is_zero(), "residual {res}");
            }
            Branch::Orbit(_) => panic!("cusp splits over Q"),
        }
    }

    #[test]
    fn puiseux_axes() {
        let xy = Curve::new(BiPoly::x().mul(&BiPoly::y())).unwrap();
        let bs = xy.branches(8).unwrap();
        assert_eq!(bs.len(), 2);
    }

    #[test]
    fn puiseux_two_smooth_branches() {
        // y^2 - x^2 = (y-x)(y+x)
        let c = Curve::new(BiPoly::from_terms(&[(1, 0, 2), (-1, 2, 0)])).unwrap();
        let bs = c.branches(8).unwrap();
        assert_eq!(bs.len(), 2);
        for b in &bs {
            match b {
                Branch::Param(b) => {
                    let res = compose_series(&c.equation, &b.x_of_t, &b.y_of_t);
                    assert!(res.poly.is_zero());
                }
                Branch::Orbit(_) => panic!("rational branches expected"),
            }
        }
    }

    #[test]
    fn puiseux_rational_reparametrization() {
        // y^2 - 2x^3 has one branch; the rational Puiseux expansion
        // realizes it over Q as (2t^2, 4t^3 + ..)
        let c = Curve::new(BiPoly::from_terms(&[(1, 0, 2), (-2, 3, 0)])).unwrap();
        let bs = c.branches(12).unwrap();
        assert_eq!(bs.len(), 1);
        match &bs[0] {
            Branch::Param(b) => {
                assert_eq!(b.orbit_size, 1);
                let res = compose_series(&c.equation, &b.x_of_t, &b.y_of_t);
                assert!(res.poly.is_zero());
            }
            Branch::Orbit(_) => panic!("no extension needed here"),
        }
    }

    #[test]
    fn puiseux_conjugate_orbit() {
        // y^2 - 2x^2: two conjugate branches y = +-sqrt(2) x, one orbit
        let c = Curve::new(BiPoly::from_terms(&[(1, 0, 2), (-2, 2, 0)])).unwrap();
        let bs = c.branches(12).unwrap();
        assert_eq!(bs.len(), 1);
        match &bs[0] {
            Branch::Param(b) => {
                assert_eq!(b.orbit_size, 2);
                let res = compose_series(&c.equation, &b.x_of_t, &b.y_of_t);
                assert!(res.poly.is_zero());
            }
            Branch::Orbit(_) => panic!("one extension suffices here"),
        }
    }

    #[test]
    fn pullback_orders() {
        let b = BranchParam::from_polys(
            UniPoly::monomial(FieldElem::one(), 2),
            UniPoly::monomial(FieldElem::one(), 3),
        )
        .unwrap();
        assert_eq!(branch_pullback_order(&b, &BiPoly::y()).unwrap(), 3);
        assert_eq!(
            branch_pullback_order(&b, &BiPoly::from_terms(&[(1, 2, 0)])).unwrap(),
            4
        );
        // g vanishing on the branch: exact detection
        let axis = BranchParam::from_polys(UniPoly::var(), UniPoly::zero()).unwrap();
        let g = BiPoly::x().mul(&BiPoly::y());
        assert!(matches!(
            branch_pullback_order(&axis, &g),
            Err(Error::CommonComponent(_))
        ));
    }

    #[test]
    fn branch_sum_equals_resultant_i0() {
        // i0(f, g) = sum over branches of f of ord_t g for rational branches
        let mut r = rng();
        let f = cusp();
        let c = Curve::new(f.clone()).unwrap();
        for g in [
            BiPoly::y(),
            BiPoly::x(),
            BiPoly::from_terms(&[(1, 0, 1), (-1, 1, 0)]),
            BiPoly::from_terms(&[(1, 0, 2), (1, 3, 0)]),
        ] {
            let direct = intersection_multiplicity(&f, &g, &mut r)
                .unwrap()
                .finite()
                .unwrap();
            let mut via_branches = 0u64;
            for b in c.branches(24).unwrap() {
                if let Branch::Param(b) = b {
                    via_branches +=
                        b.orbit_size as u64 * branch_pullback_order(&b, &g).unwrap() as u64;
                }
            }
            assert_eq!(direct, via_branches, "mismatch for {g}");
        }
    }

    #[test]
    fn noether_cusp_line() {
        let mut r = rng();
        let c1 = Curve::new(cusp()).unwrap();
        let c2 = Curve::new(BiPoly::y()).unwrap();
        let rec = noether_check(&c1, &c2, &mut r).unwrap();
        assert!(rec.holds);
        assert_eq!(rec.i0, 3);
        assert_eq!(rec.nu_product, 2);
        assert_eq!(rec.upstairs_sum, 1);
    }

    #[test]
    fn noether_transversal() {
        let mut r = rng();
        let c1 = Curve::new(BiPoly::x()).unwrap();
        let c2 = Curve::new(BiPoly::y()).unwrap();
        let rec = noether_check(&c1, &c2, &mut r).unwrap();
        assert!(rec.holds);
        assert_eq!(rec.i0, 1);
        assert_eq!(rec.upstairs_sum, 0);
    }

    #[test]
    fn noether_two_cusps() {
        let mut r = rng();
        let c1 = Curve::new(cusp()).unwrap();
        let c2 = Curve::new(BiPoly::from_terms(&[(1, 0, 2), (-2, 3, 0)])).unwrap();
        let rec = noether_check(&c1, &c2, &mut r).unwrap();
        assert_eq!(rec.i0, 6);
        assert!(rec.holds);
    }

    #[test]
    fn solve_regular_simple() {
        // y - x - x^2 = 0
        let f = BiPoly::y()
            .sub(&BiPoly::x())
            .sub(&BiPoly::from_terms(&[(1, 2, 0)]));
        let y = solve_regular(&f, 8).unwrap();
        assert_eq!(y.poly, UniPoly::from_coeffs(vec![
            FieldElem::zero(),
            FieldElem::one(),
            FieldElem::one(),
        ]));
    }
}
