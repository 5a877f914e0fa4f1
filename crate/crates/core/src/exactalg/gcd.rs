//! Bivariate gcd by primitive pseudo-remainder sequences in y over the
//! univariate content in x.

use crate::exactalg::bipoly::BiPoly;
use crate::exactalg::unipoly::UniPoly;

/// Gcd of the x-coefficient contents of p viewed in y.
fn content_x(p: &BiPoly) -> UniPoly {
    let mut g = UniPoly::zero();
    for c in p.y_coefficients() {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(&c);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

fn primitive_part(p: &BiPoly) -> BiPoly {
    let c = content_x(p);
    if c.is_zero() || c.degree() == Some(0) {
        return p.clone();
    }
    let cc = BiPoly::from_y_coefficients(&[c]);
    p.div_exact(&cc).expect("content must divide")
}

/// Pseudo-remainder of f by g in y, up to a factor of lc_y(g)^k; the
/// primitive PRS only needs the remainder up to content.
fn pseudo_rem_y(f: &BiPoly, g: &BiPoly) -> BiPoly {
    let dg = g.degree_y().expect("nonzero");
    let gc = g.y_coefficients();
    let lg = gc.last().unwrap().clone();
    let lgp = BiPoly::from_y_coefficients(&[lg]);
    let mut r = f.clone();
    while let Some(dr) = r.degree_y() {
        if dr < dg {
            break;
        }
        // r = lc(g)*r - lc(r)*y^(dr-dg)*g
        let rc = r.y_coefficients();
        let lr = BiPoly::from_y_coefficients(&[rc.last().unwrap().clone()]);
        r = lgp.mul(&r).sub(&lr.mul(&g.mul_ypow(dr - dg)));
        debug_assert!(r.degree_y().map(|d| d < dr).unwrap_or(true));
    }
    r
}

/// Gcd of two bivariate polynomials, normalized so the leading
/// coefficient (graded-lex) is 1.
pub fn gcd_bipoly(f: &BiPoly, g: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    let dyf = f.degree_y().unwrap_or(0);
    let dyg = g.degree_y().unwrap_or(0);
    if dyf == 0 && dyg == 0 {
        let a = f.y_coefficients().pop().unwrap();
        let b = g.y_coefficients().pop().unwrap();
        return BiPoly::from_y_coefficients(&[a.gcd(&b)]).normalized();
    }
    if dyf == 0 {
        let a = f.y_coefficients().pop().unwrap();
        return BiPoly::from_y_coefficients(&[a.gcd(&content_x(g))]).normalized();
    }
    if dyg == 0 {
        let b = g.y_coefficients().pop().unwrap();
        return BiPoly::from_y_coefficients(&[b.gcd(&content_x(f))]).normalized();
    }
    let cf = content_x(f);
    let cg = content_x(g);
    let ccd = cf.gcd(&cg);
    let mut a = primitive_part(f);
    let mut b = primitive_part(g);
    if a.degree_y().unwrap() < b.degree_y().unwrap() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem_y(&a, &b);
        if r.is_zero() {
            break;
        }
        a = b;
        b = primitive_part(&r);
        if b.degree_y().unwrap_or(0) == 0 {
            // coprime as primitive polynomials in y
            b = BiPoly::one();
            break;
        }
    }
    let prim = primitive_part(&b);
    let content = BiPoly::from_y_coefficients(&[ccd]);
    prim.mul(&content).normalized()
}

/// Squarefree test for a bivariate polynomial over a characteristic-zero
/// field: no repeated factor iff gcd(f, f_x, f_y) is a unit.
pub fn is_squarefree(f: &BiPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    if f.is_constant() {
        return true;
    }
    let g = gcd_bipoly(f, &f.derivative_x());
    let g = gcd_bipoly(&g, &f.derivative_y());
    g.is_constant()
}

/// Squarefree part: f divided by gcd(f, f_x, f_y).
pub fn squarefree_part(f: &BiPoly) -> BiPoly {
    if f.is_zero() || f.is_constant() {
        return f.clone();
    }
    let g = gcd_bipoly(f, &f.derivative_x());
    let g = gcd_bipoly(&g, &f.derivative_y());
    if g.is_constant() {
        return f.clone();
    }
    f.div_exact(&g).expect("gcd divides")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_shared_factor() {
        let h = BiPoly::from_terms(&[(1, 0, 1), (-1, 2, 0)]); // y - x^2
        let f = h.mul(&BiPoly::from_terms(&[(1, 1, 0), (1, 0, 1)]));
        let g = h.mul(&BiPoly::from_terms(&[(1, 0, 0), (5, 1, 1)]));
        let d = gcd_bipoly(&f, &g);
        assert_eq!(d, h.normalized());
    }

    #[test]
    fn gcd_coprime_is_unit() {
        let f = BiPoly::from_terms(&[(1, 0, 2), (-1, 3, 0)]);
        let g = BiPoly::from_terms(&[(1, 0, 1)]);
        let d = gcd_bipoly(&f, &g);
        assert!(d.is_constant(), "got {d}");
    }

    #[test]
    fn gcd_pure_x_content() {
        let f = BiPoly::from_terms(&[(1, 1, 1)]); // xy
        let g = BiPoly::from_terms(&[(1, 3, 0)]); // x^3
        let d = gcd_bipoly(&f, &g);
        assert_eq!(d, BiPoly::x());
    }

    #[test]
    fn squarefree_detection() {
        let cusp = BiPoly::from_terms(&[(1, 0, 2), (-1, 3, 0)]);
        assert!(is_squarefree(&cusp));
        assert!(!is_squarefree(&cusp.mul(&cusp)));
        let sq = BiPoly::from_terms(&[(1, 0, 1)]).pow(2).mul(&BiPoly::x());
        assert!(!is_squarefree(&sq));
        assert_eq!(squarefree_part(&sq).normalized(), BiPoly::x().mul(&BiPoly::y()).normalized());
    }
}
