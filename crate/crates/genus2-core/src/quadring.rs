//! The quotient ring k[t] / (t^2 - e1 t + e2).
//!
//! Symmetric expressions in the two roots j1, j2 of T^2 - e1 T + e2 are
//! evaluated here without ever leaving rational arithmetic: substitute
//! t for j1 and e1 - t for j2 and reduce. A symmetric polynomial must come
//! out with zero t-component.

use crate::multipoly::CoeffRing;
use crate::rational::Rational;
use crate::unipoly::UniPoly;
use num::{One, Zero};

/// c0 + c1 t in the quotient by t^2 - e1 t + e2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadRingElem {
    pub c0: Rational,
    pub c1: Rational,
    pub e1: Rational,
    pub e2: Rational,
}

impl QuadRingElem {
    pub fn from_rational(c: Rational, e1: &Rational, e2: &Rational) -> Self {
        QuadRingElem {
            c0: c,
            c1: Rational::zero(),
            e1: e1.clone(),
            e2: e2.clone(),
        }
    }

    /// The class of t itself.
    pub fn generator(e1: &Rational, e2: &Rational) -> Self {
        QuadRingElem {
            c0: Rational::zero(),
            c1: Rational::one(),
            e1: e1.clone(),
            e2: e2.clone(),
        }
    }

    fn same_modulus(&self, other: &Self) -> bool {
        self.e1 == other.e1 && self.e2 == other.e2
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.same_modulus(other), "mixed quotient rings");
        QuadRingElem {
            c0: &self.c0 + &other.c0,
            c1: &self.c1 + &other.c1,
            e1: self.e1.clone(),
            e2: self.e2.clone(),
        }
    }

    /// (a + b t)(c + d t) with t^2 = e1 t - e2.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.same_modulus(other), "mixed quotient rings");
        let bd = &self.c1 * &other.c1;
        QuadRingElem {
            c0: &self.c0 * &other.c0 - &self.e2 * &bd,
            c1: &self.c0 * &other.c1 + &self.c1 * &other.c0 + &self.e1 * &bd,
            e1: self.e1.clone(),
            e2: self.e2.clone(),
        }
    }
}

impl CoeffRing for QuadRingElem {
    fn zero_like(&self) -> Self {
        Self::from_rational(Rational::zero(), &self.e1, &self.e2)
    }
    fn one_like(&self) -> Self {
        Self::from_rational(Rational::one(), &self.e1, &self.e2)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scale_rat(&self, r: &Rational) -> Self {
        QuadRingElem {
            c0: &self.c0 * r,
            c1: &self.c1 * r,
            e1: self.e1.clone(),
            e2: self.e2.clone(),
        }
    }
}

/// p(t) mod (t^2 - e1 t + e2), by Horner in the quotient.
pub fn quad_reduce(p: &UniPoly, e1: &Rational, e2: &Rational) -> QuadRingElem {
    let mut acc = QuadRingElem::from_rational(Rational::zero(), e1, e2);
    let t = QuadRingElem::generator(e1, e2);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&t);
        acc.c0 += c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn reduce_examples() {
        // t^2 with (e1,e2) = (0,-1): t^2 = 1
        let r = quad_reduce(&poly(&[0, 0, 1]), &int(0), &int(-1));
        assert_eq!((r.c0, r.c1), (int(1), int(0)));
        // t^3 with (e1,e2) = (1,1): t^2 = t - 1, t^3 = -1
        let r = quad_reduce(&poly(&[0, 0, 0, 1]), &int(1), &int(1));
        assert_eq!((r.c0, r.c1), (int(-1), int(0)));
        // constants pass through
        let r = quad_reduce(&poly(&[5]), &int(3), &int(7));
        assert_eq!((r.c0, r.c1), (int(5), int(0)));
    }

    proptest! {
        #[test]
        fn reduce_is_ring_homomorphism(
            pc in proptest::collection::vec(-5i64..5, 1..6),
            qc in proptest::collection::vec(-5i64..5, 1..6),
            e1 in -4i64..4,
            e2 in -4i64..4,
        ) {
            let p = poly(&pc);
            let q = poly(&qc);
            let e1 = int(e1); let e2 = int(e2);
            let prod = quad_reduce(&p.mul(&q), &e1, &e2);
            let sep = quad_reduce(&p, &e1, &e2).mul(&quad_reduce(&q, &e1, &e2));
            prop_assert_eq!(prod, sep);
        }
    }
}
