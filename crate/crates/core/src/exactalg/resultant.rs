//! Resultants via the Sylvester matrix with fraction-free (Bareiss)
//! elimination.
//!
//! The bivariate resultant eliminating y is assembled by specializing x
//! at integer points, running the Sylvester/Bareiss core on each slice,
//! and interpolating; specializations that drop the y-degree of either
//! operand are skipped, so every slice value is the true resultant.

use crate::exactalg::bipoly::BiPoly;
use crate::exactalg::field::{rat_int, FieldElem};
use crate::exactalg::unipoly::UniPoly;

/// Resultant of two univariate polynomials by fraction-free Gaussian
/// elimination of the Sylvester matrix. Zero when either input is zero
/// or both are constants sharing no variable content.
pub fn resultant_uni(f: &UniPoly, g: &UniPoly) -> FieldElem {
    let n = match f.degree() {
        None => return FieldElem::zero(),
        Some(d) => d as usize,
    };
    let m = match g.degree() {
        None => return FieldElem::zero(),
        Some(d) => d as usize,
    };
    if n == 0 {
        return f.coeffs[0].pow(m as u32);
    }
    if m == 0 {
        return g.coeffs[0].pow(n as u32);
    }
    let size = n + m;
    let mut mat = vec![vec![FieldElem::zero(); size]; size];
    for row in 0..m {
        for (k, c) in f.coeffs.iter().enumerate() {
            mat[row][row + (n - k)] = c.clone();
        }
    }
    for row in 0..n {
        for (k, c) in g.coeffs.iter().enumerate() {
            mat[m + row][row + (m - k)] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free determinant; interior divisions are exact.
fn bareiss_det(mut mat: Vec<Vec<FieldElem>>) -> FieldElem {
    let n = mat.len();
    if n == 0 {
        return FieldElem::one();
    }
    let mut sign = false;
    let mut prev = FieldElem::one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !mat[r][k].is_zero());
            match swap {
                None => return FieldElem::zero(),
                Some(r) => {
                    mat.swap(k, r);
                    sign = !sign;
                }
            }
        }
        let pivot = mat[k][k].clone();
        let prev_inv = prev.inv();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = mat[i][j]
                    .mul(&pivot)
                    .sub(&mat[i][k].mul(&mat[k][j]))
                    .mul(&prev_inv);
                mat[i][j] = t;
            }
            mat[i][k] = FieldElem::zero();
        }
        prev = pivot;
    }
    let det = mat[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Resultant of f, g viewed as polynomials in y, a univariate polynomial
/// in x. Sign follows the Sylvester convention with f-rows on top.
///
/// Zero exactly when f and g share a factor of positive y-degree.
pub fn resultant_elim_y(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let dyf = f.degree_y().unwrap_or(0);
    let dyg = g.degree_y().unwrap_or(0);
    if f.is_zero() || g.is_zero() {
        return UniPoly::zero();
    }
    if dyf == 0 && dyg == 0 {
        // both free of y: resultant of constants-in-y is 1 (empty matrix)
        return UniPoly::one();
    }
    if dyf == 0 {
        // Res(c(x), g) = c(x)^{deg_y g}
        let mut acc = UniPoly::one();
        let c = poly_in_x(f);
        for _ in 0..dyg {
            acc = acc.mul(&c);
        }
        return acc;
    }
    if dyg == 0 {
        let mut acc = UniPoly::one();
        let c = poly_in_x(g);
        for _ in 0..dyf {
            acc = acc.mul(&c);
        }
        return acc;
    }
    let dxf = f.degree_x().unwrap_or(0);
    let dxg = g.degree_x().unwrap_or(0);
    // degree bound for Res_y(f, g) in x
    let bound = (dyf * dxg + dyg * dxf) as usize;
    let fc = f.y_coefficients();
    let gc = g.y_coefficients();
    let lf = fc.last().unwrap().clone();
    let lg = gc.last().unwrap().clone();
    let mut xs: Vec<FieldElem> = Vec::with_capacity(bound + 1);
    let mut ys: Vec<FieldElem> = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while xs.len() <= bound {
        let x = FieldElem::from_rat(rat_int(k));
        // next candidate: 0, 1, -1, 2, -2, ...
        k = if k > 0 { -k } else { -k + 1 };
        if lf.eval(&x).is_zero() || lg.eval(&x).is_zero() {
            continue;
        }
        let fs = UniPoly::from_coeffs(fc.iter().map(|c| c.eval(&x)).collect());
        let gs = UniPoly::from_coeffs(gc.iter().map(|c| c.eval(&x)).collect());
        ys.push(resultant_uni(&fs, &gs));
        xs.push(x);
    }
    interpolate(&xs, &ys)
}

fn poly_in_x(p: &BiPoly) -> UniPoly {
    let d = p.degree_x().unwrap_or(0) as usize;
    let mut coeffs = vec![FieldElem::zero(); d + 1];
    for (&(i, j), c) in &p.terms {
        debug_assert_eq!(j, 0);
        coeffs[i as usize] = c.clone();
    }
    UniPoly::from_coeffs(coeffs)
}

/// Newton interpolation through distinct nodes.
fn interpolate(xs: &[FieldElem], ys: &[FieldElem]) -> UniPoly {
    let n = xs.len();
    // divided differences
    let mut dd: Vec<FieldElem> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = dd[i].sub(&dd[i - 1]);
            let den = xs[i].sub(&xs[i - level]);
            dd[i] = num.div(&den);
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        // acc = acc*(t - x_i) + dd[i]
        let lin = UniPoly::from_coeffs(vec![xs[i].neg(), FieldElem::one()]);
        acc = acc.mul(&lin).add(&UniPoly::constant(dd[i].clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| FieldElem::from_int(c)).collect())
    }

    #[test]
    fn sylvester_two_by_two() {
        // Res_y(y - x, y + x) at the univariate slice x=3: Res(y-3, y+3) = det [[1,-3],[1,3]] = 6
        let f = up(&[-3, 1]);
        let g = up(&[3, 1]);
        assert_eq!(resultant_uni(&f, &g), FieldElem::from_int(6));
    }

    #[test]
    fn elim_y_linear_pair() {
        // Res_y(y - x, y + x) = -2x up to the documented sign convention
        let f = BiPoly::y().sub(&BiPoly::x());
        let g = BiPoly::y().add(&BiPoly::x());
        let r = resultant_elim_y(&f, &g);
        assert_eq!(r, up(&[0, 2]));
    }

    #[test]
    fn elim_y_with_cubic() {
        // Res_y(y, y - x^3) = +-x^3
        let f = BiPoly::y();
        let g = BiPoly::y().sub(&BiPoly::from_terms(&[(1, 3, 0)]));
        let r = resultant_elim_y(&f, &g);
        let x3 = up(&[0, 0, 0, 1]);
        assert!(r == x3 || r == x3.neg(), "got {r}");
    }

    #[test]
    fn elim_y_common_factor_is_zero() {
        let f = BiPoly::from_terms(&[(1, 0, 2)]);
        assert!(resultant_elim_y(&f, &f).is_zero());
    }

    #[test]
    fn multiplicative_in_first_argument() {
        let f1 = BiPoly::y().sub(&BiPoly::x());
        let f2 = BiPoly::y().add(&BiPoly::from_terms(&[(2, 2, 0)]));
        let g = BiPoly::from_terms(&[(1, 0, 1), (3, 1, 0), (1, 0, 0)]);
        let lhs = resultant_elim_y(&f1.mul(&f2), &g);
        let rhs = resultant_elim_y(&f1, &g).mul(&resultant_elim_y(&f2, &g));
        assert_eq!(lhs, rhs);
    }
}
