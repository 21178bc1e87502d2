//! Integer polynomials: exact division, factorization into irreducibles for
//! the small degrees arising from characteristic polynomials (target d <= 6),
//! and an exact all-roots-in-the-open-unit-disc test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients ascending: p[0] + p[1] x + ... Trailing zeros trimmed except
/// the zero polynomial, which is the empty vector.
pub type IntPoly = Vec<BigInt>;

pub fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &[BigInt]) -> usize {
    assert!(!p.is_empty(), "zero polynomial has no degree");
    p.len() - 1
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division: `Some(q)` with `a = q * b` iff `b` divides `a` over Z.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = trim(a.to_vec());
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let r_lead = rem.last().unwrap().clone();
        if (&r_lead % &lead) != BigInt::zero() {
            return None;
        }
        let c = &r_lead / &lead;
        q[shift] = c.clone();
        for (i, bi) in b.iter().enumerate() {
            rem[shift + i] -= &c * bi;
        }
        rem = trim(rem);
        if rem.is_empty() {
            return Some(q);
        }
    }
    None
}

/// Reversed coefficients: z^n p(1/z). Roots become reciprocals when p(0) != 0.
pub fn reverse(p: &[BigInt]) -> IntPoly {
    let mut r: IntPoly = p.iter().rev().cloned().collect();
    r = trim(r);
    r
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    loop {
        let dsq = &d * &d;
        if dsq > n {
            break;
        }
        if (&n % &d).is_zero() {
            small.push(d.clone());
            if dsq != n {
                large.push(&n / &d);
            }
        }
        d += BigInt::one();
    }
    large.reverse();
    small.extend(large);
    small
}

/// All signed divisors, sorted by absolute value then sign, for deterministic
/// Kronecker enumeration.
fn signed_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    for d in divisors(n) {
        out.push(d.clone());
        out.push(-d);
    }
    out
}

/// Integer roots of a monic integer polynomial (with multiplicity handled by
/// the caller re-running on the quotient).
fn integer_root(p: &[BigInt]) -> Option<BigInt> {
    if p[0].is_zero() {
        return Some(BigInt::zero());
    }
    for cand in signed_divisors(&p[0]) {
        if eval(p, &cand).is_zero() {
            return Some(cand);
        }
    }
    None
}

/// Kronecker search for a monic factor of degree `a` of a monic polynomial
/// with no integer roots. Sample points 0, 1, -1, 2, -2, ...: a factor value
/// at each point must divide the polynomial value there; interpolate each
/// divisor combination and test exact division.
fn kronecker_factor(p: &[BigInt], a: usize) -> Option<IntPoly> {
    let points: Vec<BigInt> = (0..=a as i64)
        .map(|i| {
            // 0, 1, -1, 2, -2, ...
            let m = (i + 1) / 2;
            BigInt::from(if i % 2 == 1 { m } else { -m })
        })
        .collect();
    let value_divs: Vec<Vec<BigInt>> = points
        .iter()
        .map(|t| signed_divisors(&eval(p, t)))
        .collect();

    let mut idx = vec![0usize; points.len()];
    loop {
        let vals: Vec<BigInt> = idx
            .iter()
            .zip(&value_divs)
            .map(|(&i, divs)| divs[i].clone())
            .collect();
        if let Some(q) = interpolate_integer(&points, &vals, a) {
            if q.len() == a + 1 && !q.last().unwrap().is_zero() {
                let mut q = q;
                if q.last().unwrap().is_negative() {
                    for c in q.iter_mut() {
                        *c = -c.clone();
                    }
                }
                if q.last().unwrap().is_one() && div_exact(p, &q).is_some() {
                    return Some(q);
                }
            }
        }
        // advance the mixed-radix counter
        let mut pos = 0usize;
        loop {
            if pos == idx.len() {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < value_divs[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Lagrange interpolation through integer points; `Some` only when all
/// coefficients come out integral with degree <= cap.
fn interpolate_integer(points: &[BigInt], values: &[BigInt], cap: usize) -> Option<IntPoly> {
    let n = points.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut basis = vec![BigRational::zero(); n];
        basis[0] = BigRational::one();
        let mut deg = 0usize;
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let tj = BigRational::from_integer(points[j].clone());
            for k in (0..=deg).rev() {
                let old_k = basis[k].clone();
                basis[k + 1] += &old_k;
                basis[k] = -(&tj * &old_k);
            }
            deg += 1;
            denom *= BigRational::from_integer(&points[i] - &points[j]);
        }
        let w = BigRational::from_integer(values[i].clone()) / denom;
        for k in 0..n {
            coeffs[k] += &basis[k] * &w;
        }
    }
    let mut out = Vec::with_capacity(n);
    for c in coeffs {
        if !c.denom().is_one() {
            return None;
        }
        out.push(c.numer().clone());
    }
    let out = trim(out);
    if out.is_empty() || degree(&out) > cap {
        return None;
    }
    Some(out)
}

/// Irreducible monic factors of a monic integer polynomial, with
/// multiplicities, deterministically ordered. Suited to the small degrees of
/// characteristic polynomials; the factor search is exhaustive
/// (Kronecker-style), so cost grows quickly with degree.
pub fn factor_monic(p: &[BigInt]) -> Vec<(IntPoly, u32)> {
    let p = trim(p.to_vec());
    assert!(!p.is_empty() && p.last().unwrap().is_one(), "monic input");
    let mut factors: Vec<IntPoly> = Vec::new();
    let mut rest = p;
    // linear factors first (x - r with r an integer root)
    while degree(&rest) >= 1 {
        match integer_root(&rest) {
            Some(r) => {
                let lin = vec![-r, BigInt::one()];
                rest = div_exact(&rest, &lin).expect("root divides");
                factors.push(lin);
            }
            None => break,
        }
    }
    // higher-degree factors by exhaustive search, smallest degree first so
    // every factor found is irreducible
    'outer: while degree(&rest) >= 2 {
        let n = degree(&rest);
        for a in 2..=n / 2 {
            if let Some(q) = kronecker_factor(&rest, a) {
                rest = div_exact(&rest, &q).expect("factor divides");
                factors.push(q);
                continue 'outer;
            }
        }
        factors.push(rest.clone());
        break;
    }
    factors.sort();
    let mut out: Vec<(IntPoly, u32)> = Vec::new();
    for f in factors {
        match out.last_mut() {
            Some((g, m)) if *g == f => *m += 1,
            _ => out.push((f, 1)),
        }
    }
    out
}

/// Exact test: every root of `p` (integer coefficients, nonzero) lies in the
/// open unit disc.
///
/// Schur-Cohn descent: with a_0 = p(0) and a_n the leading coefficient,
/// |a_0| >= |a_n| already forces a root of modulus >= 1 (the root moduli
/// multiply to |a_0/a_n|); otherwise p is stable iff
/// (a_n p - a_0 p*) / z is, where p* has the coefficients reversed. Roots on
/// the unit circle persist through the descent, so the degenerate cases all
/// surface as |a_0| >= |a_n| at some stage and no perturbation is needed.
pub fn all_roots_in_open_unit_disc(p: &[BigInt]) -> bool {
    let mut q = trim(p.to_vec());
    assert!(!q.is_empty(), "zero polynomial");
    loop {
        if degree(&q) == 0 {
            return true;
        }
        let a0 = q[0].clone();
        let an = q.last().unwrap().clone();
        if a0.abs() >= an.abs() {
            return false;
        }
        let rev: Vec<BigInt> = q.iter().rev().cloned().collect();
        let mut t: Vec<BigInt> = q
            .iter()
            .zip(&rev)
            .map(|(c, r)| &an * c - &a0 * r)
            .collect();
        debug_assert!(t[0].is_zero());
        t.remove(0);
        q = trim(t);
        debug_assert!(!q.is_empty());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        trim(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn exact_division() {
        // (x-1)(x+2) = x^2 + x - 2
        assert_eq!(div_exact(&p(&[-2, 1, 1]), &p(&[-1, 1])), Some(p(&[2, 1])));
        assert_eq!(div_exact(&p(&[-2, 1, 1]), &p(&[1, 1])), None);
    }

    #[test]
    fn factors_with_multiplicity() {
        // (x-1)^2 (x^2+1)
        let q = mul(&mul(&p(&[-1, 1]), &p(&[-1, 1])), &p(&[1, 0, 1]));
        let f = factor_monic(&q);
        assert_eq!(f, vec![(p(&[-1, 1]), 2), (p(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn factors_irreducible_quartic() {
        // x^4 + 1 is irreducible over Z
        let f = factor_monic(&p(&[1, 0, 0, 0, 1]));
        assert_eq!(f, vec![(p(&[1, 0, 0, 0, 1]), 1)]);
    }

    #[test]
    fn factors_product_of_quadratics() {
        // (x^2+1)(x^2+2)
        let q = mul(&p(&[1, 0, 1]), &p(&[2, 0, 1]));
        let f = factor_monic(&q);
        assert_eq!(f, vec![(p(&[1, 0, 1]), 1), (p(&[2, 0, 1]), 1)]);
    }

    #[test]
    fn factors_unit_constant_cubic() {
        // x^3 - x - 1 (irreducible, constant -1)
        let f = factor_monic(&p(&[-1, -1, 0, 1]));
        assert_eq!(f, vec![(p(&[-1, -1, 0, 1]), 1)]);
    }

    #[test]
    fn unit_disc_test() {
        // roots 1/2, -1/3: 6x^2 - x - 1
        assert!(all_roots_in_open_unit_disc(&p(&[-1, -1, 6])));
        // root 1: x - 1
        assert!(!all_roots_in_open_unit_disc(&p(&[-1, 1])));
        // roots on circle: x^2 + 1
        assert!(!all_roots_in_open_unit_disc(&p(&[1, 0, 1])));
        // 1 + 2z^2 (reciprocal of x^2 + 2): roots modulus 1/sqrt(2)
        assert!(all_roots_in_open_unit_disc(&p(&[1, 0, 2])));
        // mixed: (z - 1/2)(z - 2) ~ 2z^2 - 5z + 2
        assert!(!all_roots_in_open_unit_disc(&p(&[2, -5, 2])));
        // constant
        assert!(all_roots_in_open_unit_disc(&p(&[3])));
    }

    #[test]
    fn reverse_poly() {
        assert_eq!(reverse(&p(&[-2, 0, 1])), p(&[1, 0, -2]));
    }
}
