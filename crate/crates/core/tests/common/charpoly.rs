//! Exact characteristic polynomials and their real roots.
//!
//! Coefficients come from Faddeev–LeVerrier over the rationals. Roots are
//! found by splitting off repeated factors (Yun) and isolating each simple
//! root with a Sturm sequence, then bisecting with exact arithmetic.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Coefficients in ascending order; the zero polynomial is empty.
pub type Poly = Vec<BigRational>;

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(Zero::zero) - b.get(i).cloned().unwrap_or_else(Zero::zero))
        .collect())
}

fn neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

/// Quotient and remainder of `a / b`, `b` non-zero.
fn div_rem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.clone();
    let lead = b.last().unwrap().clone();
    let mut quot = vec![BigRational::zero(); a.len().saturating_sub(b.len()) + 1];
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &f * c;
        }
        quot[shift] = f;
        r = trim(r);
    }
    (trim(quot), r)
}

fn monic(p: Poly) -> Poly {
    match p.last().cloned() {
        Some(lead) => p.into_iter().map(|c| c / &lead).collect(),
        None => p,
    }
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

pub fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// det(xI − M) for an integer matrix.
pub fn characteristic_polynomial(m: &[Vec<i64>]) -> Poly {
    let n = m.len();
    let a: Vec<Vec<BigRational>> = m.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    s += &a[i][l] * &mk[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        mk = next;
        // c_{n−k} = −tr(A·M_k)/k
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &mk[l][i];
            }
        }
        coeffs[n - k] = -tr / q(k as i64);
    }
    trim(coeffs)
}

/// Square-free factors `(a_i, i)` with `p = c · ∏ a_i^i`.
fn square_free(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let dp = derivative(p);
    let a0 = gcd(p, &dp);
    let mut b = div_rem(p, &a0).0;
    let mut c = div_rem(&dp, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    while degree(&b) > 0 {
        let a = gcd(&b, &d);
        b = div_rem(&b, &a).0;
        c = div_rem(&d, &a).0;
        d = sub(&c, &derivative(&b));
        if degree(&a) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let n = chain.len();
        let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break chain;
        }
        chain.push(neg(&r));
    }
}

fn sign_changes(chain: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Real roots of a square-free polynomial, each to within `tol`.
fn simple_roots(p: &Poly, tol: f64) -> Vec<f64> {
    let chain = sturm_chain(p);
    let lead = p.last().unwrap();
    let bound = p.iter().map(|c| (c / lead).abs()).fold(BigRational::zero(), |m, c| if c > m { c } else { m })
        + BigRational::one();
    let count = |a: &BigRational, b: &BigRational| sign_changes(&chain, a) - sign_changes(&chain, b);
    let tol = BigRational::from_float(tol).unwrap();
    let two = q(2);
    let mut roots = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        let k = count(&a, &b);
        if k == 0 {
            continue;
        }
        let mid = (&a + &b) / &two;
        if k == 1 && &b - &a < tol {
            roots.push(mid.to_f64().unwrap());
            continue;
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    roots
}

/// All real roots of `p`, repeated by multiplicity, ascending.
pub fn real_roots(p: &Poly, tol: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for (factor, mult) in square_free(p) {
        for r in simple_roots(&factor, tol) {
            out.extend(std::iter::repeat_n(r, mult));
        }
    }
    out.sort_by(f64::total_cmp);
    out
}
