//! Univariate factorization over the rationals and over a simple
//! extension.
//!
//! The rational path is classical Berlekamp over a small prime, linear
//! multifactor Hensel lifting, and subset recombination, after a
//! monicizing substitution. The extension path is Trager's norm method,
//! reduced to the rational path plus gcds over Q(a).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::bipoly::BiPoly;
use crate::exactalg::field::{CoefField, ExtField, FieldElem, Rat};
use crate::exactalg::resultant::resultant_elim_y;
use crate::exactalg::unipoly::UniPoly;

pub const FACTOR_DEGREE_CAP: u32 = 64;

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

/// Complete factorization into monic irreducibles times a constant.
pub fn factor_uni(f: &UniPoly) -> Result<(FieldElem, Vec<(UniPoly, u32)>)> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let deg = f.degree().unwrap();
    if deg > FACTOR_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded {
            degree: deg,
            cap: FACTOR_DEGREE_CAP,
        });
    }
    let lead = f.leading().unwrap().clone();
    if deg == 0 {
        return Ok((lead, Vec::new()));
    }
    let monic = f.monic();
    let ext = f
        .coeffs
        .iter()
        .find_map(|c| match c.field() {
            CoefField::Rationals => None,
            CoefField::Extension(e) => Some(e),
        });
    let factors = match ext {
        None => factor_monic_rational(&monic)?,
        Some(field) => factor_monic_ext(&monic, &field)?,
    };
    Ok((lead, factors))
}

/// Factorization over an explicitly named field: rational-coefficient
/// inputs are still split over the extension when one is given, which
/// matters for germs that already live in Q(a).
pub fn factor_uni_over(
    f: &UniPoly,
    field: &CoefField,
) -> Result<(FieldElem, Vec<(UniPoly, u32)>)> {
    match field {
        CoefField::Rationals => factor_uni(f),
        CoefField::Extension(ext) => {
            if f.is_zero() {
                return Err(Error::ZeroInput);
            }
            let deg = f.degree().unwrap();
            if deg > FACTOR_DEGREE_CAP {
                return Err(Error::DegreeCapExceeded {
                    degree: deg,
                    cap: FACTOR_DEGREE_CAP,
                });
            }
            let lead = f.leading().unwrap().clone();
            if deg == 0 {
                return Ok((lead, Vec::new()));
            }
            let factors = factor_monic_ext(&f.monic(), ext)?;
            Ok((lead, factors))
        }
    }
}

/// Roots of f lying in its own coefficient field, with multiplicities.
pub fn roots_in_field(f: &UniPoly) -> Result<Vec<(FieldElem, u32)>> {
    let (_, factors) = factor_uni(f)?;
    let mut out = Vec::new();
    for (p, m) in factors {
        if p.degree() == Some(1) {
            let root = p.coeff(0).neg().div(&p.coeff(1));
            out.push((root, m));
        }
    }
    Ok(out)
}

/// Roots in an explicitly named field.
pub fn roots_in_field_over(f: &UniPoly, field: &CoefField) -> Result<Vec<(FieldElem, u32)>> {
    let (_, factors) = factor_uni_over(f, field)?;
    let mut out = Vec::new();
    for (p, m) in factors {
        if p.degree() == Some(1) {
            let root = p.coeff(0).neg().div(&p.coeff(1));
            out.push((root, m));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// Squarefree decomposition (Yun), valid over any characteristic-0 field.
// ---------------------------------------------------------------------

fn squarefree_decompose(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let mut a = f.gcd(&df);
    let mut b = f.div_exact(&a).expect("gcd divides");
    let mut c = df.div_exact(&a).expect("gcd divides");
    let mut i = 1u32;
    loop {
        let d = c.sub(&b.derivative());
        if d.is_zero() {
            if b.degree().unwrap_or(0) > 0 {
                out.push((b.monic(), i));
            }
            break;
        }
        a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        b = b.div_exact(&a).expect("divides");
        c = d.div_exact(&a).expect("divides");
        i += 1;
        if b.degree() == Some(0) {
            break;
        }
    }
    out
}

// ---------------------------------------------------------------------
// Rational path
// ---------------------------------------------------------------------

fn factor_monic_rational(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_decompose(f) {
        for g in factor_squarefree_rational(&part)? {
            out.push((g, mult));
        }
    }
    out.sort_by_key(|(p, _)| (p.degree().unwrap_or(0), format!("{p}")));
    Ok(out)
}

/// Integer coefficient vector of the primitive part, plus nothing else:
/// input is monic over Q, output is primitive over Z with positive lead.
fn to_integer_primitive(f: &UniPoly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in &f.coeffs {
        let r = c.as_rat().expect("rational coefficients");
        den = den.lcm(r.denom());
    }
    let mut ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| {
            let r = c.as_rat().unwrap();
            r.numer() * (&den / r.denom())
        })
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    if ints.last().map(|c| c.sign() == Sign::Minus).unwrap_or(false) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

fn from_integer(v: &[BigInt]) -> UniPoly {
    UniPoly::from_coeffs(
        v.iter()
            .map(|c| FieldElem::from_rat(Rat::from_integer(c.clone())))
            .collect(),
    )
}

fn factor_squarefree_rational(f: &UniPoly) -> Result<Vec<UniPoly>> {
    let deg = f.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(vec![f.monic()]);
    }
    let fz = to_integer_primitive(f);
    let n = fz.len() - 1;
    let lead = fz[n].clone();
    // monicize over Z: h(x) = L^(n-1) f(x/L) has coefficient c_i L^(n-1-i)
    // at x^i and top coefficient 1
    let mut h: Vec<BigInt> = Vec::with_capacity(n + 1);
    for (i, c) in fz.iter().enumerate() {
        if i == n {
            h.push(BigInt::one());
        } else {
            h.push(c * lead.pow((n - 1 - i) as u32));
        }
    }
    let factors_h = factor_monic_squarefree_int(&h)?;
    // map back: f_m(x) = primitive(g_m(L x))
    let mut out = Vec::new();
    for fm in factors_h {
        let mut back: Vec<BigInt> = Vec::with_capacity(fm.len());
        for (i, c) in fm.iter().enumerate() {
            back.push(c * lead.pow(i as u32));
        }
        let mut gg = BigInt::zero();
        for c in &back {
            gg = gg.gcd(c);
        }
        if !gg.is_zero() && !gg.is_one() {
            for c in back.iter_mut() {
                *c = &*c / &gg;
            }
        }
        out.push(from_integer(&back).monic());
    }
    Ok(out)
}

fn poly_norm1(f: &[BigInt]) -> BigInt {
    f.iter().map(|c| c.abs()).sum()
}

/// Factor a monic squarefree integer polynomial into monic irreducible
/// integer polynomials (coefficient vectors).
fn factor_monic_squarefree_int(f: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    // pick a prime keeping f squarefree
    let mut chosen = None;
    for &p in PRIMES {
        let fp = reduce_mod(f, p);
        if fp.len() != f.len() {
            continue; // lead vanished (cannot happen: monic) or degenerate
        }
        let d = fp_gcd(&fp, &fp_derivative(&fp, p), p);
        if d.len() == 1 {
            chosen = Some((p, fp));
            break;
        }
    }
    let (p, fp) = chosen.ok_or_else(|| {
        Error::Unsupported("no small prime keeps the polynomial squarefree".into())
    })?;
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return Ok(vec![f.to_vec()]);
    }
    // Hensel lift to p^k > 2 * 2^n * |f|_1
    let bound: BigInt = BigInt::from(2).pow(n as u32 + 1) * poly_norm1(f);
    let mut pk = BigInt::from(p);
    let mut k = 1u32;
    while pk <= bound {
        pk *= BigInt::from(p);
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);
    Ok(recombine(f.to_vec(), lifted, &pk))
}

// --- F_p helpers: polynomials as Vec<u64>, little-endian, trimmed ---

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let pp = BigInt::from(p);
    let mut out: Vec<u64> = f
        .iter()
        .map(|c| {
            let m = c.mod_floor(&pp);
            m.to_u64().unwrap()
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_derivative(f: &[u64], p: u64) -> Vec<u64> {
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (i, &c) in f.iter().enumerate().skip(1) {
        out.push((c * (i as u64 % p)) % p);
    }
    fp_trim(out)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat
    pow_mod(a % p, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty());
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let li = inv_mod(b[db], p);
    if r.len() <= db {
        return (Vec::new(), fp_trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * li % p;
        if c != 0 {
            q[dr - db] = c;
            for i in 0..=db {
                let t = b[i] * c % p;
                r[dr - db + i] = (r[dr - db + i] + p - t) % p;
            }
        }
        r.pop();
        r = fp_trim(r);
    }
    (fp_trim(q), r)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = fp_trim(a.to_vec());
    let mut y = fp_trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = fp_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    // monic
    if let Some(&l) = x.last() {
        let li = inv_mod(l, p);
        for c in x.iter_mut() {
            *c = *c * li % p;
        }
    }
    x
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    fp_trim(out)
}

/// Berlekamp factorization of a monic squarefree polynomial mod p into
/// monic irreducibles.
fn berlekamp(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Q matrix: column k = x^(k p) mod f
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(n);
    // iteratively compute x^(kp) mod f
    let xp = {
        // x^p mod f by square-and-multiply on exponent
        let mut acc = vec![0u64, 1]; // x
        let mut result = vec![1u64];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = fp_divrem(&fp_mul(&result, &acc, p), f, p).1;
            }
            acc = fp_divrem(&fp_mul(&acc, &acc, p), f, p).1;
            e >>= 1;
        }
        result
    };
    let mut cur = vec![1u64];
    for _ in 0..n {
        cols.push(cur.clone());
        cur = fp_divrem(&fp_mul(&cur, &xp, p), f, p).1;
    }
    // nullspace of (Q - I), Q as columns
    let mut mat = vec![vec![0u64; n]; n];
    for (k, col) in cols.iter().enumerate() {
        for (j, &c) in col.iter().enumerate() {
            mat[j][k] = c;
        }
        mat[k][k] = (mat[k][k] + p - 1) % p;
    }
    let basis = fp_nullspace(mat, p);
    let r = basis.len();
    let mut factors: Vec<Vec<u64>> = vec![f.to_vec()];
    for v in basis {
        if factors.len() == r {
            break;
        }
        if v.iter().skip(1).all(|&c| c == 0) {
            continue; // constant vector splits nothing
        }
        let vpoly = fp_trim(v);
        let mut next: Vec<Vec<u64>> = Vec::new();
        for u in factors.into_iter() {
            if u.len() <= 2 {
                next.push(u);
                continue;
            }
            let mut pieces = vec![u];
            for c in 0..p {
                if pieces.iter().all(|w| w.len() <= 2) {
                    break;
                }
                let mut shifted = vpoly.clone();
                if shifted.is_empty() {
                    shifted = vec![0];
                }
                shifted[0] = (shifted[0] + p - c) % p;
                let shifted = fp_trim(shifted);
                let mut round = Vec::new();
                for w in pieces.into_iter() {
                    if w.len() <= 2 {
                        round.push(w);
                        continue;
                    }
                    let g = fp_gcd(&w, &shifted, p);
                    if g.len() > 1 && g.len() < w.len() {
                        let (q, rem) = fp_divrem(&w, &g, p);
                        debug_assert!(rem.is_empty());
                        round.push(g);
                        round.push(q);
                    } else {
                        round.push(w);
                    }
                }
                pieces = round;
            }
            next.extend(pieces);
        }
        factors = next;
    }
    // make monic
    for fac in factors.iter_mut() {
        if let Some(&l) = fac.last() {
            if l != 1 {
                let li = inv_mod(l, p);
                for c in fac.iter_mut() {
                    *c = *c * li % p;
                }
            }
        }
    }
    factors
}

fn fp_nullspace(mut mat: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = mat.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut row = 0;
    for col in 0..n {
        let pr = (row..n).find(|&r| mat[r][col] != 0);
        if let Some(pr) = pr {
            mat.swap(row, pr);
            let inv = inv_mod(mat[row][col], p);
            for c in 0..n {
                mat[row][c] = mat[row][c] * inv % p;
            }
            for r in 0..n {
                if r != row && mat[r][col] != 0 {
                    let factor = mat[r][col];
                    for c in 0..n {
                        mat[r][c] = (mat[r][c] + p - factor * mat[row][c] % p) % p;
                    }
                }
            }
            pivot_of_col[col] = Some(row);
            row += 1;
        }
    }
    let mut basis = Vec::new();
    for col in 0..n {
        if pivot_of_col[col].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[col] = 1;
        for c in 0..n {
            if let Some(r) = pivot_of_col[c] {
                // x_c = -mat[r][col] * x_col
                v[c] = (p - mat[r][col]) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// --- Hensel lifting (linear, multifactor, all monic) ---

fn hensel_lift(f: &[BigInt], modular: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let r = modular.len();
    // Bezout cofactors over F_p: sum s_i * prod_{j != i} h_j = 1
    let mut cof: Vec<Vec<u64>> = Vec::with_capacity(r);
    for i in 0..r {
        let mut hi = vec![1u64];
        for (j, h) in modular.iter().enumerate() {
            if j != i {
                hi = fp_divrem(&fp_mul(&hi, h, p), &modular[i], p).1;
                // reduce progressively mod h_i to keep degrees small
            }
        }
        let s = fp_inverse_mod(&hi, &modular[i], p);
        cof.push(s);
    }
    let mut lifted: Vec<Vec<BigInt>> = modular
        .iter()
        .map(|h| h.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        // e = (f - prod lifted)/p^j mod p
        let mut prod = vec![BigInt::one()];
        for h in &lifted {
            prod = int_mul(&prod, h);
        }
        let diff = int_sub(f, &prod);
        let e: Vec<u64> = diff
            .iter()
            .map(|c| {
                let q = c / &pj;
                debug_assert!((c - &q * &pj).is_zero());
                q.mod_floor(&pb).to_u64().unwrap()
            })
            .collect();
        let e = fp_trim(e);
        for i in 0..r {
            let hi_p = reduce_mod(&lifted[i], p);
            let delta = fp_divrem(&fp_mul(&cof[i], &e, p), &hi_p, p).1;
            for (d, &c) in delta.iter().enumerate() {
                if c != 0 {
                    lifted[i][d] += &pj * BigInt::from(c);
                }
            }
        }
        pj *= &pb;
    }
    lifted
}

fn fp_inverse_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // extended Euclid in F_p[x]
    let mut r0 = fp_trim(m.to_vec());
    let mut r1 = fp_trim(a.to_vec());
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let qs = fp_mul(&q, &s1, p);
        let ns = fp_sub(&s0, &qs, p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
    }
    assert!(r0.len() == 1, "inputs not coprime mod p");
    let li = inv_mod(r0[0], p);
    fp_trim(s0.iter().map(|&c| c * li % p).collect())
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
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
    while out.last().map(|c| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    out
}

fn int_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out[i] = x - y;
    }
    while out.last().map(|c| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    out
}

fn int_divrem(a: &[BigInt], b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    // division of integer polynomials, requiring a monic divisor
    if !b.last().map(|c| c.is_one()).unwrap_or(false) {
        return None;
    }
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return Some((Vec::new(), r));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        q[dr - db] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            r[dr - db + i] -= t;
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        while r.last().map(|x| x.is_zero()).unwrap_or(false) {
            r.pop();
        }
    }
    Some((q, r))
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Subset recombination of lifted modular factors into true factors.
fn recombine(mut f: Vec<BigInt>, mut lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while !lifted.is_empty() {
        if lifted.len() == 1 || size > lifted.len() / 2 {
            // remainder is irreducible
            out.push(f.clone());
            lifted.clear();
            break;
        }
        for combo in subsets(lifted.len(), size) {
            let mut cand = vec![BigInt::one()];
            for &i in &combo {
                cand = int_mul(&cand, &lifted[i]);
                for c in cand.iter_mut() {
                    *c = c.mod_floor(pk);
                }
            }
            for c in cand.iter_mut() {
                *c = symmetric_mod(c, pk);
            }
            if let Some((q, r)) = int_divrem(&f, &cand) {
                if r.is_empty() {
                    out.push(cand);
                    f = q;
                    let mut keep = Vec::new();
                    for (i, h) in lifted.into_iter().enumerate() {
                        if !combo.contains(&i) {
                            keep.push(h);
                        }
                    }
                    lifted = keep;
                    continue 'outer;
                }
            }
        }
        size += 1;
        if size > 32 {
            out.push(f.clone());
            break;
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------
// Extension path: Trager's norm method
// ---------------------------------------------------------------------

fn factor_monic_ext(f: &UniPoly, field: &ExtField) -> Result<Vec<(UniPoly, u32)>> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_decompose(f) {
        for g in factor_squarefree_ext(&part, field)? {
            out.push((g, mult));
        }
    }
    out.sort_by_key(|(p, _)| (p.degree().unwrap_or(0), format!("{p}")));
    Ok(out)
}

/// Express an element of Q(a) as a rational polynomial in `a`.
fn ext_coeff_vec(c: &FieldElem) -> Vec<Rat> {
    match c {
        FieldElem::Rat(r) => vec![r.clone()],
        FieldElem::Ext { coeffs, .. } => coeffs.clone(),
    }
}

fn factor_squarefree_ext(f: &UniPoly, field: &ExtField) -> Result<Vec<UniPoly>> {
    if f.degree().unwrap_or(0) <= 1 {
        return Ok(vec![f.monic()]);
    }
    let alpha = field.gen();
    // minimal polynomial as a BiPoly in the y slot
    let mut minp = BiPoly::zero();
    for (j, c) in field.minpoly().iter().enumerate() {
        minp.add_term((0, j as u32), &FieldElem::from_rat(c.clone()));
    }
    for shift in 0..40i64 {
        let s = if shift % 2 == 0 { shift / 2 } else { -(shift / 2 + 1) };
        // g(z) = f(z - s*alpha)
        let sa = alpha.mul(&FieldElem::from_int(s));
        let lin = UniPoly::from_coeffs(vec![sa.neg(), FieldElem::one()]);
        let g = f.compose(&lin, None);
        // view g in Q[z, a]: x-slot = z, y-slot = a
        let mut gb = BiPoly::zero();
        for (i, c) in g.coeffs.iter().enumerate() {
            for (j, r) in ext_coeff_vec(c).iter().enumerate() {
                gb.add_term((i as u32, j as u32), &FieldElem::from_rat(r.clone()));
            }
        }
        let norm = resultant_elim_y(&gb, &minp);
        if norm.is_zero() {
            continue;
        }
        if !norm.gcd(&norm.derivative()).degree().map(|d| d == 0).unwrap_or(false) {
            continue; // norm not squarefree, try another shift
        }
        let norm_factors = factor_monic_rational(&norm.monic())?;
        let mut out = Vec::new();
        let back = UniPoly::from_coeffs(vec![sa.clone(), FieldElem::one()]); // z + s*alpha
        for (nf, _) in norm_factors {
            let nfk = nf.compose(&back, None);
            let h = f.gcd(&nfk);
            if h.degree().unwrap_or(0) > 0 {
                out.push(h.monic());
            }
        }
        let total: u32 = out.iter().map(|h| h.degree().unwrap_or(0)).sum();
        if total == f.degree().unwrap_or(0) {
            return Ok(out);
        }
        // fall through: an unlucky shift, try the next one
    }
    Err(Error::Unsupported(
        "Trager norm stayed degenerate across all shifts".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::rat_int;

    fn up(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| FieldElem::from_int(c)).collect())
    }

    fn check_product(f: &UniPoly) {
        let (lead, factors) = factor_uni(f).unwrap();
        let mut prod = UniPoly::constant(lead);
        for (p, m) in &factors {
            for _ in 0..*m {
                prod = prod.mul(p);
            }
        }
        assert_eq!(&prod, f, "factor product mismatch for {f}");
    }

    #[test]
    fn quadratic_splits() {
        // v^2 - 1 = (v-1)(v+1)
        let f = up(&[-1, 0, 1]);
        let (_, factors) = factor_uni(&f).unwrap();
        assert_eq!(factors.len(), 2);
        check_product(&f);
    }

    #[test]
    fn quadratic_irreducible() {
        let f = up(&[1, 0, 1]); // v^2 + 1
        let (_, factors) = factor_uni(&f).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 1);
    }

    #[test]
    fn cubic_with_roots() {
        // v^3 - v = v(v-1)(v+1)
        let f = up(&[0, -1, 0, 1]);
        let (_, factors) = factor_uni(&f).unwrap();
        assert_eq!(factors.len(), 3);
        check_product(&f);
    }

    #[test]
    fn repeated_factors_and_lead() {
        // 6 (v-1)^2 (v^2+v+1)
        let f = up(&[1, -1])
            .mul(&up(&[1, -1]))
            .mul(&up(&[1, 1, 1]))
            .scale(&FieldElem::from_int(6));
        let (lead, factors) = factor_uni(&f).unwrap();
        assert_eq!(lead, FieldElem::from_int(6));
        let mults: Vec<u32> = factors.iter().map(|(_, m)| *m).collect();
        assert!(mults.contains(&2));
        check_product(&f);
    }

    #[test]
    fn quartic_two_quadratics() {
        // (v^2 - 2)(v^2 - 3) = v^4 - 5v^2 + 6
        let f = up(&[6, 0, -5, 0, 1]);
        let (_, factors) = factor_uni(&f).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(p, _)| p.degree() == Some(2)));
        check_product(&f);
    }

    #[test]
    fn non_monic_rational_coefficients() {
        // (2v + 1)(3v - 4), rational-normalized
        let f = up(&[1, 2]).mul(&up(&[-4, 3]));
        check_product(&f);
        let roots = roots_in_field(&f).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn factor_over_extension() {
        // (v^2 + 1)(v - i) = (v - i)^2 (v + i) over Q(i)
        let field = ExtField::new(vec![rat_int(1), rat_int(0), rat_int(1)], "a").unwrap();
        let i = field.gen();
        let f = up(&[1, 0, 1]);
        let vi = UniPoly::from_coeffs(vec![i.neg(), FieldElem::one()]);
        let g = f.mul(&vi);
        let (_, gf) = factor_uni(&g).unwrap();
        let degs: Vec<u32> = gf.iter().map(|(p, _)| p.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1]);
        let mut mults: Vec<u32> = gf.iter().map(|(_, m)| *m).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
        let mut prod = UniPoly::one();
        for (p, m) in &gf {
            for _ in 0..*m {
                prod = prod.mul(p);
            }
        }
        assert_eq!(prod, g.monic());
    }

    #[test]
    fn degree_six_mixed() {
        // v (v^2+1) (v^3 - 2)
        let f = up(&[0, 1]).mul(&up(&[1, 0, 1])).mul(&up(&[-2, 0, 0, 1]));
        let (_, factors) = factor_uni(&f).unwrap();
        assert_eq!(factors.len(), 3);
        check_product(&f);
    }
}
