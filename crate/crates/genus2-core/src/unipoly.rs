//! Dense univariate polynomials over the rationals.
//!
//! Just enough machinery for the rest of the crate: Sylvester resultants
//! (fraction-free on integer-cleared coefficients), gcd / square-free parts,
//! and exact rational root extraction.

use crate::error::{Error, Result};
use crate::rational::{Int, Rational};
use num::{BigInt, Integer, One, Signed, Zero};

/// Coefficients lowest degree first; the leading coefficient is nonzero
/// unless the polynomial is zero (empty vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// c * x^k
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + other.coeff(i));
        }
        UniPoly::new(v)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - other.coeff(i));
        }
        UniPoly::new(v)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        let lead = div.leading().unwrap().clone();
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] / &lead;
            quot[k - dd] = q.clone();
            for (j, c) in div.coeffs.iter().enumerate() {
                let t = c * &q;
                rem[k - dd + j] -= t;
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd over the rationals.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = Rational::one() / a.leading().unwrap().clone();
            a.scale(&inv)
        }
    }

    /// The product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() || self.degree() == Some(0) {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            let inv = Rational::one() / self.leading().unwrap().clone();
            return self.scale(&inv);
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        let inv = Rational::one() / q.leading().unwrap().clone();
        q.scale(&inv)
    }

    /// Clear denominators: returns integer coefficient vector `c*self` and `c`.
    fn integer_cleared(&self) -> (Vec<Int>, Int) {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        (ints, lcm)
    }
}

/// Sylvester resultant of two nonzero polynomials.
///
/// Denominators are cleared first and the integer Sylvester matrix is reduced
/// by fraction-free Bareiss elimination, then the clearing factors are divided
/// back out: Res(c f, d g) = c^(deg g) d^(deg f) Res(f, g).
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.degree().unwrap();
    let m = g.degree().unwrap();
    if n == 0 {
        return Ok(crate::rational::pow(f.leading().unwrap(), m as u32));
    }
    if m == 0 {
        return Ok(crate::rational::pow(g.leading().unwrap(), n as u32));
    }
    let (fi, cf) = f.integer_cleared();
    let (gi, cg) = g.integer_cleared();
    let size = n + m;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..m {
        for (j, c) in fi.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..n {
        for (j, c) in gi.iter().rev().enumerate() {
            mat[m + i][i + j] = c.clone();
        }
    }
    let det = bareiss_det(mat);
    let denom = num::pow::pow(cf, m) * num::pow::pow(cg, n);
    Ok(Rational::new(det, denom))
}

/// Determinant of an integer matrix by Bareiss' fraction-free elimination.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// All rational roots of a nonzero polynomial, each listed once, sorted.
///
/// The polynomial is integer-cleared and deflated to its square-free part;
/// the substitution x = y / lc turns the problem into finding integer roots
/// of a monic integer polynomial, which are isolated by Sturm bisection
/// inside the Cauchy bound. No integer factorization is needed.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots: Vec<Rational> = Vec::new();
    // strip powers of x
    let mut coeffs = p.coeffs().to_vec();
    let k = coeffs.iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        roots.push(Rational::zero());
        coeffs.drain(..k);
    }
    let p = UniPoly::new(coeffs);
    if p.degree().unwrap_or(0) == 0 {
        roots.sort();
        return Ok(roots);
    }
    let sf = p.squarefree_part();
    let (ints, _) = sf.integer_cleared();
    let d = ints.len() - 1;
    if d == 1 {
        roots.push(Rational::new(-ints[0].clone(), ints[1].clone()));
        roots.sort();
        roots.dedup();
        return Ok(roots);
    }
    let lc = ints[d].clone();
    // monic transform: q(y) = lc^(d-1) p(y/lc) has integer coefficients
    // q_j = p_j * lc^(d-1-j) for j < d and q_d = 1; roots of q are y = lc * x
    let mut q = Vec::with_capacity(d + 1);
    for (j, c) in ints.iter().enumerate().take(d) {
        q.push(Rational::from_integer(c * num::pow::pow(lc.clone(), d - 1 - j)));
    }
    q.push(Rational::one());
    let qpoly = UniPoly::new(q);
    for y in integer_roots_monic(&qpoly) {
        let r = Rational::new(y, lc.clone());
        if p.eval(&r).is_zero() {
            roots.push(r);
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Integer roots of a monic square-free integer polynomial via Sturm bisection.
fn integer_roots_monic(q: &UniPoly) -> Vec<Int> {
    let d = q.degree().unwrap();
    debug_assert!(q.leading() == Some(&Rational::one()));
    // Cauchy bound: all roots within 1 + max |q_j|
    let mut bound = BigInt::one();
    for c in q.coeffs().iter().take(d) {
        let a = c.numer().abs();
        if a > bound {
            bound = a;
        }
    }
    bound += 1;
    let sturm = sturm_sequence(q);
    let lo = Rational::from_integer(-&bound);
    let hi = Rational::from_integer(bound.clone());
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sturm_count(&sturm, &lo, &hi);
        if count == 0 {
            continue;
        }
        let width = &hi - &lo;
        if width <= Rational::one() {
            // at most one integer strictly inside; endpoints have denominator a
            // power of two, so an integer root can only be floor(hi)
            let cand = hi.floor().to_integer();
            let candr = Rational::from_integer(cand.clone());
            if candr > lo && candr <= hi && q.eval(&candr).is_zero() {
                out.push(cand);
            }
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort();
    out.dedup();
    out
}

fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        if seq[n - 1].degree() == Some(0) {
            return seq;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            return seq;
        }
        seq.push(r.scale(&Rational::from_integer(BigInt::from(-1))));
    }
}

/// Number of distinct real roots in (lo, hi].
fn sturm_count(seq: &[UniPoly], lo: &Rational, hi: &Rational) -> usize {
    let variations = |x: &Rational| {
        let mut last = 0i32;
        let mut v = 0usize;
        for p in seq {
            let s = match p.eval(x) {
                e if e.is_zero() => 0,
                e if e.is_positive() => 1,
                _ => -1,
            };
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    };
    variations(lo).saturating_sub(variations(hi))
}
