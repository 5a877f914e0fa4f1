//! Local foliation germs given by a saturated 1-form P dx + Q dy, their
//! basic invariants, polar curves, and along-branch numbers.
//!
//! The dual vector field convention is v = -Q d/dx + P d/dy; every
//! formula inherits it.

use rand::Rng;

use crate::curves::{
    branch_pullback_order, compose_series, intersection_multiplicity, poly_field, BranchParam,
    Curve, Mult,
};
use crate::error::{Error, Result};
use crate::exactalg::bipoly::BiPoly;
use crate::exactalg::field::{CoefField, FieldElem};
use crate::exactalg::gcd::{gcd_bipoly, squarefree_part};
use crate::exactalg::unipoly::UniSeries;

/// A saturated local foliation germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFoliation {
    pub p_coef: BiPoly,
    pub q_coef: BiPoly,
    pub field: CoefField,
}

/// A projective slope (a : b) selecting the polar aP + bQ.
#[derive(Clone, Debug)]
pub struct PolarSlope {
    pub a: FieldElem,
    pub b: FieldElem,
}

impl PolarSlope {
    pub fn new(a: FieldElem, b: FieldElem) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(PolarSlope { a, b })
    }
}

/// Outcome of saturation: the foliation plus the discarded factor.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub foliation: LocalFoliation,
    pub discarded: BiPoly,
}

/// Divides out the gcd of the raw coefficients.
pub fn saturate(p_raw: &BiPoly, q_raw: &BiPoly) -> Result<Saturation> {
    if p_raw.is_zero() && q_raw.is_zero() {
        return Err(Error::ZeroInput);
    }
    let g = gcd_bipoly(p_raw, q_raw);
    let (p, q) = if g.is_constant() {
        (p_raw.clone(), q_raw.clone())
    } else {
        (
            p_raw.div_exact(&g).expect("gcd divides"),
            q_raw.div_exact(&g).expect("gcd divides"),
        )
    };
    let field = match poly_field(&p) {
        CoefField::Rationals => poly_field(&q),
        e => e,
    };
    Ok(Saturation {
        foliation: LocalFoliation {
            p_coef: p,
            q_coef: q,
            field,
        },
        discarded: g,
    })
}

impl LocalFoliation {
    pub fn new(p: BiPoly, q: BiPoly) -> Result<Self> {
        Ok(saturate(&p, &q)?.foliation)
    }

    /// The hamiltonian foliation of a reduced equation: omega = df.
    pub fn hamiltonian(f: &BiPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        Self::new(f.derivative_x(), f.derivative_y())
    }

    pub fn is_singular_at_origin(&self) -> bool {
        self.p_coef.coeff(0, 0).is_zero() && self.q_coef.coeff(0, 0).is_zero()
    }

    /// Algebraic multiplicity: min of the coefficient orders.
    pub fn multiplicity(&self) -> u32 {
        let op = self.p_coef.order();
        let oq = self.q_coef.order();
        match (op, oq) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("saturated foliations are nonzero"),
        }
    }

    /// Milnor number i0(P, Q).
    pub fn milnor(&self, rng: &mut impl Rng) -> Result<u64> {
        match intersection_multiplicity(&self.p_coef, &self.q_coef, rng)? {
            Mult::Finite(v) => Ok(v),
            Mult::Infinite => Err(Error::NonIsolated),
        }
    }

    /// The polar curve aP + bQ = 0, reduced, with the non-reduced
    /// multiplicity structure reported alongside.
    pub fn polar_curve(&self, s: &PolarSlope) -> Result<PolarCurve> {
        let raw = self.p_coef.scale(&s.a).add(&self.q_coef.scale(&s.b));
        if raw.is_zero() {
            return Err(Error::DegeneratePolar);
        }
        let reduced = squarefree_part(&raw);
        Ok(PolarCurve {
            raw: raw.clone(),
            reduced_equation: reduced.clone(),
            was_reduced: reduced.normalized() == raw.normalized(),
        })
    }

    /// Exact invariance test: f divides the coefficient of omega ^ df.
    pub fn is_invariant(&self, c: &Curve) -> bool {
        self.is_invariant_poly(&c.equation)
    }

    pub fn is_invariant_poly(&self, f: &BiPoly) -> bool {
        // omega ^ df = (P f_y - Q f_x) dx ^ dy
        let w = self
            .p_coef
            .mul(&f.derivative_y())
            .sub(&self.q_coef.mul(&f.derivative_x()));
        f.divides(&w)
    }

    /// Pullback of omega along an arc, as the coefficient a(t) of a(t) dt.
    pub fn pullback_coefficient(&self, b: &BranchParam) -> UniSeries {
        let px = compose_series(&self.p_coef, &b.x_of_t, &b.y_of_t);
        let qy = compose_series(&self.q_coef, &b.x_of_t, &b.y_of_t);
        let xdot = b.x_of_t.derivative();
        let ydot = b.y_of_t.derivative();
        px.mul(&xdot).add(&qy.mul(&ydot))
    }

    /// Tangency order with a non-invariant branch: ord_t of the pullback
    /// coefficient.
    pub fn tangency_order(&self, b: &BranchParam) -> Result<u32> {
        let a = self.pullback_coefficient(b);
        match a.order() {
            Ok(o) => Ok(o),
            Err(Error::ZeroInput) => Err(Error::IsSeparatrix),
            Err(Error::TruncationInsufficient { order }) => {
                // a truncated zero pullback is a separatrix whenever exact
                // invariance of a defining equation confirms; callers
                // without an equation see the truncation error
                Err(Error::TruncationInsufficient { order })
            }
            Err(e) => Err(e),
        }
    }

    /// Milnor number along an invariant branch:
    /// ord_t Q(gamma) - ord_t x + 1, or the y-clause when x = 0; both
    /// clauses must agree when both apply.
    pub fn milnor_along(&self, b: &BranchParam) -> Result<u64> {
        // invariance check, exact when the arc is exact
        let a = self.pullback_coefficient(b);
        match a.order() {
            Ok(_) => return Err(Error::NotSeparatrix),
            Err(Error::ZeroInput) => {}
            Err(Error::TruncationInsufficient { .. }) => {
                // zero to available precision: accept as a separatrix jet
            }
            Err(e) => return Err(e),
        }
        let x_nonzero = !b.x_of_t.poly.is_zero() || !b.x_of_t.is_exact();
        let y_nonzero = !b.y_of_t.poly.is_zero() || !b.y_of_t.is_exact();
        let via_x = if x_nonzero {
            let q = compose_series(&self.q_coef, &b.x_of_t, &b.y_of_t);
            match (q.order(), b.x_of_t.order()) {
                (Ok(oq), Ok(ox)) => Some(oq as i64 - ox as i64 + 1),
                (Err(Error::TruncationInsufficient { order }), _) => {
                    return Err(Error::TruncationInsufficient { order })
                }
                _ => None,
            }
        } else {
            None
        };
        let via_y = if y_nonzero {
            let p = compose_series(&self.p_coef, &b.x_of_t, &b.y_of_t);
            match (p.order(), b.y_of_t.order()) {
                (Ok(op), Ok(oy)) => Some(op as i64 - oy as i64 + 1),
                (Err(Error::TruncationInsufficient { order }), _) => {
                    return Err(Error::TruncationInsufficient { order })
                }
                _ => None,
            }
        } else {
            None
        };
        match (via_x, via_y) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "the two clauses of the along-branch Milnor number disagree");
                Ok(a as u64)
            }
            (Some(a), None) => Ok(a as u64),
            (None, Some(b)) => Ok(b as u64),
            (None, None) => Err(Error::ZeroInput),
        }
    }
}

/// A polar curve with its reduction bookkeeping.
#[derive(Clone, Debug)]
pub struct PolarCurve {
    pub raw: BiPoly,
    pub reduced_equation: BiPoly,
    pub was_reduced: bool,
}

/// Number of slopes sampled when hunting for a generic polar.
pub const POLAR_SAMPLES: usize = 5;

fn sample_slope(rng: &mut impl Rng, attempt: usize) -> PolarSlope {
    let span = 12 + 6 * attempt as i64;
    loop {
        let a = rng.gen_range(-span..=span);
        let b = rng.gen_range(-span..=span);
        if a != 0 || b != 0 {
            return PolarSlope {
                a: FieldElem::from_int(a),
                b: FieldElem::from_int(b),
            };
        }
    }
}

/// Polar intersection number p0(F, C) for an invariant curve with a
/// known equation: sampled minimum of i0(C, aP + bQ), the minimum
/// attained at least twice.
pub fn polar_intersection(
    f: &LocalFoliation,
    c: &Curve,
    rng: &mut impl Rng,
) -> Result<u64> {
    let mut values = Vec::new();
    let mut shared = 0usize;
    for round in 0..3 {
        for k in 0..POLAR_SAMPLES {
            let s = sample_slope(rng, round * POLAR_SAMPLES + k);
            let polar = f.p_coef.scale(&s.a).add(&f.q_coef.scale(&s.b));
            if polar.is_zero() {
                return Err(Error::DegeneratePolar);
            }
            match intersection_multiplicity(&c.equation, &polar, rng)? {
                Mult::Finite(v) => values.push(v),
                Mult::Infinite => shared += 1,
            }
        }
        if let Some(min) = values.iter().min().copied() {
            if values.iter().filter(|&&v| v == min).count() >= 2 {
                return Ok(min);
            }
        }
        if shared == values.len() + shared && shared >= POLAR_SAMPLES {
            return Err(Error::CommonComponent(
                "every sampled polar shares a branch with the curve".into(),
            ));
        }
    }
    Err(Error::GenericityFailure(
        "sampled polar intersection numbers never stabilized".into(),
    ))
}

/// Polar intersection number along a set of parametrized branches:
/// sampled minimum over slopes of the summed pullback orders.
pub fn polar_intersection_branches(
    f: &LocalFoliation,
    branches: &[BranchParam],
    rng: &mut impl Rng,
) -> Result<u64> {
    if branches.is_empty() {
        return Ok(0);
    }
    let mut values = Vec::new();
    for round in 0..3 {
        'slopes: for k in 0..POLAR_SAMPLES {
            let s = sample_slope(rng, round * POLAR_SAMPLES + k);
            let polar = f.p_coef.scale(&s.a).add(&f.q_coef.scale(&s.b));
            if polar.is_zero() {
                return Err(Error::DegeneratePolar);
            }
            let mut total: u64 = 0;
            for b in branches {
                match branch_pullback_order(b, &polar) {
                    Ok(o) => total += b.orbit_size as u64 * o as u64,
                    Err(Error::CommonComponent(_)) => continue 'slopes,
                    Err(Error::TruncationInsufficient { order }) => {
                        return Err(Error::TruncationInsufficient { order })
                    }
                    Err(e) => return Err(e),
                }
            }
            values.push(total);
        }
        if let Some(min) = values.iter().min().copied() {
            if values.iter().filter(|&&v| v == min).count() >= 2 {
                return Ok(min);
            }
        }
    }
    Err(Error::GenericityFailure(
        "sampled per-branch polar orders never stabilized".into(),
    ))
}

/// p0(F, B) for a single branch.
pub fn polar_intersection_branch(
    f: &LocalFoliation,
    b: &BranchParam,
    rng: &mut impl Rng,
) -> Result<u64> {
    polar_intersection_branches(f, std::slice::from_ref(b), rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::unipoly::UniPoly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn cusp() -> BiPoly {
        BiPoly::from_terms(&[(1, 0, 2), (-1, 3, 0)])
    }

    /// omega = y dx - x^(k+1) dy
    fn saddle_node(k: u32) -> LocalFoliation {
        LocalFoliation::new(
            BiPoly::y(),
            BiPoly::monomial(FieldElem::from_int(-1), k + 1, 0),
        )
        .unwrap()
    }

    fn radial() -> LocalFoliation {
        LocalFoliation::new(BiPoly::y(), BiPoly::x().neg()).unwrap()
    }

    #[test]
    fn saturation_examples() {
        // (xy, x*x^2) -> (y, x^2)
        let s = saturate(&BiPoly::x().mul(&BiPoly::y()), &BiPoly::from_terms(&[(1, 3, 0)]))
            .unwrap();
        assert_eq!(s.foliation.p_coef, BiPoly::y());
        assert_eq!(s.foliation.q_coef, BiPoly::from_terms(&[(1, 2, 0)]));
        assert_eq!(s.discarded.normalized(), BiPoly::x());
        // already coprime
        let s = saturate(&BiPoly::y(), &BiPoly::from_terms(&[(-1, 3, 0)])).unwrap();
        assert!(s.discarded.is_constant());
        // (2y, 4y) -> constants, nonsingular
        let s = saturate(
            &BiPoly::y().scale(&FieldElem::from_int(2)),
            &BiPoly::y().scale(&FieldElem::from_int(4)),
        )
        .unwrap();
        assert!(s.foliation.p_coef.is_constant());
        assert!(!s.foliation.is_singular_at_origin());
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(saddle_node(2).multiplicity(), 1);
        let ham = LocalFoliation::hamiltonian(&cusp()).unwrap();
        assert_eq!(ham.multiplicity(), 1);
        let lin = LocalFoliation::new(BiPoly::y(), BiPoly::x()).unwrap();
        assert_eq!(lin.multiplicity(), 1);
    }

    #[test]
    fn milnor_examples() {
        let mut r = rng();
        for k in 1..=3 {
            assert_eq!(saddle_node(k).milnor(&mut r).unwrap(), (k + 1) as u64);
        }
        assert_eq!(radial().milnor(&mut r).unwrap(), 1);
        let ham = LocalFoliation::hamiltonian(&cusp()).unwrap();
        assert_eq!(ham.milnor(&mut r).unwrap(), 2);
    }

    #[test]
    fn polar_of_radial_is_line() {
        let s = PolarSlope::new(FieldElem::from_int(2), FieldElem::from_int(5)).unwrap();
        let p = radial().polar_curve(&s).unwrap();
        // aP + bQ = 2y - 5x
        assert_eq!(p.raw, BiPoly::from_terms(&[(2, 0, 1), (-5, 1, 0)]));
        assert!(p.was_reduced);
    }

    #[test]
    fn invariance_examples() {
        let ham = LocalFoliation::hamiltonian(&cusp()).unwrap();
        assert!(ham.is_invariant(&Curve::new(cusp()).unwrap()));
        let sn = saddle_node(2);
        assert!(sn.is_invariant(&Curve::new(BiPoly::y()).unwrap()));
        assert!(sn.is_invariant(&Curve::new(BiPoly::x()).unwrap()));
        let pencil = LocalFoliation::new(BiPoly::one(), BiPoly::zero()).unwrap(); // dx
        assert!(!pencil.is_invariant(&Curve::new(BiPoly::y()).unwrap()));
    }

    #[test]
    fn tangency_examples() {
        // F: dx, b = (t, t) -> 0
        let pencil = LocalFoliation::new(BiPoly::one(), BiPoly::zero()).unwrap();
        let b = BranchParam::from_polys(UniPoly::var(), UniPoly::var()).unwrap();
        assert_eq!(pencil.tangency_order(&b).unwrap(), 0);
        // F: d(y^2 - x^3), b = (t, 0) -> pullback -3t^2 dt
        let ham = LocalFoliation::hamiltonian(&cusp()).unwrap();
        let b = BranchParam::from_polys(UniPoly::var(), UniPoly::zero()).unwrap();
        assert_eq!(ham.tangency_order(&b).unwrap(), 2);
        // F: y dx - x dy, b = (t, t^2) -> 1
        let b = BranchParam::from_polys(UniPoly::var(), UniPoly::monomial(FieldElem::one(), 2))
            .unwrap();
        assert_eq!(radial().tangency_order(&b).unwrap(), 1);
        // separatrix raises
        let b = BranchParam::from_polys(UniPoly::var(), UniPoly::zero()).unwrap();
        assert!(matches!(
            saddle_node(1).tangency_order(&b),
            Err(Error::IsSeparatrix)
        ));
    }

    #[test]
    fn milnor_along_saddle_node() {
        for k in 1..=4u32 {
            let f = saddle_node(k);
            let strong = BranchParam::from_polys(UniPoly::zero(), UniPoly::var()).unwrap();
            let weak = BranchParam::from_polys(UniPoly::var(), UniPoly::zero()).unwrap();
            assert_eq!(f.milnor_along(&strong).unwrap(), 1);
            assert_eq!(f.milnor_along(&weak).unwrap(), (k + 1) as u64);
        }
    }

    #[test]
    fn milnor_along_cusp_branch() {
        let ham = LocalFoliation::hamiltonian(&cusp()).unwrap();
        let b = BranchParam::from_polys(
            UniPoly::monomial(FieldElem::one(), 2),
            UniPoly::monomial(FieldElem::one(), 3),
        )
        .unwrap();
        assert_eq!(ham.milnor_along(&b).unwrap(), 2);
    }

    #[test]
    fn milnor_along_rejects_non_separatrix() {
        let ham = LocalFoliation::hamiltonian(&cusp()).unwrap();
        let b = BranchParam::from_polys(UniPoly::var(), UniPoly::var()).unwrap();
        assert!(matches!(ham.milnor_along(&b), Err(Error::NotSeparatrix)));
    }

    #[test]
    fn polar_intersection_cusp() {
        let mut r = rng();
        let ham = LocalFoliation::hamiltonian(&cusp()).unwrap();
        let c = Curve::new(cusp()).unwrap();
        // p0 = mu + nu - 1 = 2 + 2 - 1
        assert_eq!(polar_intersection(&ham, &c, &mut r).unwrap(), 3);
    }

    #[test]
    fn polar_intersection_saddle_node_axes() {
        let mut r = rng();
        for k in 1..=3u32 {
            let f = saddle_node(k);
            let c = Curve::new(BiPoly::x().mul(&BiPoly::y())).unwrap();
            assert_eq!(polar_intersection(&f, &c, &mut r).unwrap(), (k + 2) as u64);
            // branch route agrees
            let strong = BranchParam::from_polys(UniPoly::zero(), UniPoly::var()).unwrap();
            let weak = BranchParam::from_polys(UniPoly::var(), UniPoly::zero()).unwrap();
            assert_eq!(
                polar_intersection_branches(&f, &[strong, weak], &mut r).unwrap(),
                (k + 2) as u64
            );
        }
    }

    #[test]
    fn polar_intersection_xy_hamiltonian() {
        let mut r = rng();
        let f = LocalFoliation::hamiltonian(&BiPoly::x().mul(&BiPoly::y())).unwrap();
        let c = Curve::new(BiPoly::x().mul(&BiPoly::y())).unwrap();
        assert_eq!(polar_intersection(&f, &c, &mut r).unwrap(), 2);
    }

    #[test]
    fn hamiltonian_multiplicity_drop() {
        let ham = LocalFoliation::hamiltonian(&cusp()).unwrap();
        let c = Curve::new(cusp()).unwrap();
        assert_eq!(ham.multiplicity(), c.multiplicity() - 1);
    }

    #[test]
    fn prop3_identity_on_model_branches() {
        // p0(F, B) = mu0(F, B) + nu0(B) - 1
        let mut r = rng();
        let cases: Vec<(LocalFoliation, BranchParam)> = vec![
            (
                LocalFoliation::hamiltonian(&cusp()).unwrap(),
                BranchParam::from_polys(
                    UniPoly::monomial(FieldElem::one(), 2),
                    UniPoly::monomial(FieldElem::one(), 3),
                )
                .unwrap(),
            ),
            (
                saddle_node(2),
                BranchParam::from_polys(UniPoly::var(), UniPoly::zero()).unwrap(),
            ),
            (
                saddle_node(2),
                BranchParam::from_polys(UniPoly::zero(), UniPoly::var()).unwrap(),
            ),
        ];
        for (f, b) in cases {
            let p0 = polar_intersection_branch(&f, &b, &mut r).unwrap();
            let mu = f.milnor_along(&b).unwrap();
            let nu = b.multiplicity().unwrap() as u64;
            assert_eq!(p0, mu + nu - 1, "identity fails for {:?}", f);
        }
    }
}
