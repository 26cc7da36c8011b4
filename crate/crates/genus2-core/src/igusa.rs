//! Classical invariants of binary sextics and moduli-point equality.

use crate::error::{Error, Result};
use crate::multipoly::MultiPolyTable;
use crate::rational::{parse_rational_list, pow, Rational};
use crate::unipoly::{resultant, UniPoly};
use num::{One, Zero};
use std::fmt;
use std::sync::LazyLock;

pub static J2_TABLE: LazyLock<MultiPolyTable> =
    LazyLock::new(|| MultiPolyTable::parse(include_str!("../data/j2.txt")).unwrap());
pub static J4_TABLE: LazyLock<MultiPolyTable> =
    LazyLock::new(|| MultiPolyTable::parse(include_str!("../data/j4.txt")).unwrap());
pub static J6_TABLE: LazyLock<MultiPolyTable> =
    LazyLock::new(|| MultiPolyTable::parse(include_str!("../data/j6.txt")).unwrap());

/// f(X,Z) = a6 X^6 + a5 X^5 Z + ... + a0 Z^6, not identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySextic {
    coeffs: [Rational; 7],
}

impl BinarySextic {
    pub fn new(coeffs: [Rational; 7]) -> Result<Self> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroForm);
        }
        Ok(BinarySextic { coeffs })
    }

    /// Seven whitespace-separated rationals `a0 a1 ... a6`.
    pub fn parse(s: &str) -> Result<Self> {
        let v = parse_rational_list(s)?;
        let arr: [Rational; 7] = v
            .try_into()
            .map_err(|_| Error::Parse("expected exactly 7 coefficients a0..a6".into()))?;
        Self::new(arr)
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational; 7] {
        &self.coeffs
    }

    /// The univariate f(X, 1).
    pub fn univariate(&self) -> UniPoly {
        UniPoly::new(self.coeffs.to_vec())
    }
}

impl fmt::Display for BinarySextic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IgusaInvariants {
    pub j2: Rational,
    pub j4: Rational,
    pub j6: Rational,
    pub j10: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsoluteInvariants {
    pub i1: Rational,
    pub i2: Rational,
    pub i3: Rational,
}

/// J2, J4, J6 from the stored invariant tables; J10 is the discriminant of
/// the sextic form, computed as -Res(f, f')/a6 after a unimodular
/// substitution making a6 nonzero (the result is substitution-independent).
pub fn igusa_invariants(f: &BinarySextic) -> IgusaInvariants {
    let args = f.coeffs().clone();
    let j2 = J2_TABLE.eval(&args);
    let j4 = J4_TABLE.eval(&args);
    let j6 = J6_TABLE.eval(&args);
    let j10 = discriminant(f);
    IgusaInvariants { j2, j4, j6, j10 }
}

fn discriminant(f: &BinarySextic) -> Rational {
    let mut g = f.clone();
    if g.coeff(6).is_zero() {
        // Z -> tX + Z leaves the invariants fixed (det 1); the new a6 is
        // f(1, t), a nonzero polynomial in t, so some small t works.
        for t in 1..=6i64 {
            let m = [
                [Rational::one(), Rational::zero()],
                [crate::rational::int(t), Rational::one()],
            ];
            let cand = transform(&g, &m, &Rational::one()).unwrap();
            if !cand.coeff(6).is_zero() {
                g = cand;
                break;
            }
        }
        debug_assert!(!g.coeff(6).is_zero());
    }
    let u = g.univariate();
    let res = resultant(&u, &u.derivative()).expect("nonzero sextic");
    -res / g.coeff(6)
}

/// e^2 f(aX + bZ, cX + dZ) for an invertible matrix [[a,b],[c,d]] and e != 0.
pub fn transform(f: &BinarySextic, m: &[[Rational; 2]; 2], e: &Rational) -> Result<BinarySextic> {
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if e.is_zero() {
        return Err(Error::Domain("scale factor e must be nonzero".into()));
    }
    // (aX + bZ)^j (cX + dZ)^(6-j), accumulated over j with coefficient a_j
    let lin1 = [m[0][1].clone(), m[0][0].clone()]; // b + a X, lowest first in X
    let lin2 = [m[1][1].clone(), m[1][0].clone()];
    let mut acc = vec![Rational::zero(); 7];
    for j in 0..7usize {
        if f.coeff(j).is_zero() {
            continue;
        }
        let p1 = binomial_power(&lin1, j);
        let p2 = binomial_power(&lin2, 6 - j);
        for (i, x) in p1.iter().enumerate() {
            for (k, y) in p2.iter().enumerate() {
                acc[i + k] += f.coeff(j) * x * y;
            }
        }
    }
    let e2 = e * e;
    let coeffs: Vec<Rational> = acc.into_iter().map(|c| c * &e2).collect();
    BinarySextic::new(coeffs.try_into().unwrap())
}

/// Coefficients of (c0 + c1 X)^k, lowest first.
fn binomial_power(lin: &[Rational; 2], k: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for _ in 0..k {
        let mut next = vec![Rational::zero(); out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i] += c * &lin[0];
            next[i + 1] += c * &lin[1];
        }
        out = next;
    }
    out
}

/// (i1, i2, i3) = (J4/J2^2, (J2 J4 - 3 J6)/J2^3, J10/J2^5); needs J2 != 0.
pub fn absolute_invariants(inv: &IgusaInvariants) -> Result<AbsoluteInvariants> {
    if inv.j2.is_zero() {
        return Err(Error::J2Zero);
    }
    let j2_2 = &inv.j2 * &inv.j2;
    let j2_3 = &j2_2 * &inv.j2;
    let j2_5 = &j2_3 * &j2_2;
    Ok(AbsoluteInvariants {
        i1: &inv.j4 / &j2_2,
        i2: (&inv.j2 * &inv.j4 - crate::rational::int(3) * &inv.j6) / j2_3,
        i3: &inv.j10 / &j2_5,
    })
}

/// Equality as weighted-projective points with weights (1,2,3,5), normalized
/// by J10 which never vanishes for a genus-2 curve.
pub fn moduli_equal(a: &IgusaInvariants, b: &IgusaInvariants) -> Result<bool> {
    if a.j10.is_zero() || b.j10.is_zero() {
        return Err(Error::J10Zero);
    }
    let na = (
        pow(&a.j2, 5) / &a.j10,
        pow(&a.j4, 5) / pow(&a.j10, 2),
        pow(&a.j6, 5) / pow(&a.j10, 3),
    );
    let nb = (
        pow(&b.j2, 5) / &b.j10,
        pow(&b.j4, 5) / pow(&b.j10, 2),
        pow(&b.j6, 5) / pow(&b.j10, 3),
    );
    Ok(na == nb)
}
