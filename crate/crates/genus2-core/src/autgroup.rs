//! Automorphism-group classification of genus-2 curves and the
//! branch-point pairing oracle for elliptic involutions.

use crate::error::{Error, Result};
use crate::igusa::{igusa_invariants, BinarySextic};
use crate::locus::{d12_locus, d8_locus, l2_equation, uv_from_igusa, UVPoint};
use crate::rational::{int, parse_rational, Rational};
use num::{One, Zero};
use std::fmt;

/// The automorphism groups arising in characteristic 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutGroupType {
    Z2,
    Z10,
    V4,
    D8,
    D12,
    Z3SemiD8,
    Gl2F3,
}

impl AutGroupType {
    pub fn name(&self) -> &'static str {
        match self {
            AutGroupType::Z2 => "Z2",
            AutGroupType::Z10 => "Z10",
            AutGroupType::V4 => "V4",
            AutGroupType::D8 => "D8",
            AutGroupType::D12 => "D12",
            AutGroupType::Z3SemiD8 => "Z3semiD8",
            AutGroupType::Gl2F3 => "GL2_3",
        }
    }
}

impl fmt::Display for AutGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Number of classes of degree-2 elliptic subfields under the group action.
pub fn involution_class_count(g: AutGroupType) -> u8 {
    match g {
        AutGroupType::Z2 | AutGroupType::Z10 => 0,
        AutGroupType::Gl2F3 => 1,
        AutGroupType::V4 | AutGroupType::D8 | AutGroupType::D12 | AutGroupType::Z3SemiD8 => 2,
    }
}

/// Classify from a parameter point: the two sporadic points first, then the
/// dihedral loci, else the generic V4.
pub fn classify_uv(p: &UVPoint) -> AutGroupType {
    let (u, v) = (p.u(), p.v());
    if (u, v) == (&int(25), &int(-250)) {
        return AutGroupType::Gl2F3;
    }
    if (u, v) == (&int(0), &int(0)) || (u, v) == (&int(225), &int(6750)) {
        return AutGroupType::Z3SemiD8;
    }
    if d8_locus(p).is_zero() {
        return AutGroupType::D8;
    }
    if d12_locus(p).is_zero() {
        return AutGroupType::D12;
    }
    AutGroupType::V4
}

/// Classification of a curve model, with the parameter-point preimages
/// when the curve admits an elliptic involution.
#[derive(Debug, Clone)]
pub struct SexticClassification {
    pub group: AutGroupType,
    pub involution_classes: u8,
    pub uv_preimages: Vec<UVPoint>,
}

pub fn classify_sextic(f: &BinarySextic) -> Result<AutGroupType> {
    Ok(classify_sextic_report(f)?.group)
}

pub fn classify_sextic_report(f: &BinarySextic) -> Result<SexticClassification> {
    let inv = igusa_invariants(f);
    if inv.j10.is_zero() {
        return Err(Error::J10Zero);
    }
    if !l2_equation(&inv).is_zero() {
        let group = if inv.j2.is_zero() && inv.j4.is_zero() && inv.j6.is_zero() {
            AutGroupType::Z10
        } else {
            AutGroupType::Z2
        };
        return Ok(SexticClassification {
            group,
            involution_classes: involution_class_count(group),
            uv_preimages: vec![],
        });
    }
    let preimages = uv_from_igusa(&inv)?;
    let mut groups: Vec<AutGroupType> = preimages.iter().map(classify_uv).collect();
    groups.dedup();
    if groups.len() != 1 {
        return Err(Error::IdentityViolation(format!(
            "preimages of one moduli point classify inconsistently: {groups:?}"
        )));
    }
    let group = groups[0];
    Ok(SexticClassification {
        group,
        involution_classes: involution_class_count(group),
        uv_preimages: preimages,
    })
}

/// A point of the projective line over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchPoint {
    Finite(Rational),
    Infinity,
}

impl BranchPoint {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "inf" || t == "oo" {
            Ok(BranchPoint::Infinity)
        } else {
            Ok(BranchPoint::Finite(parse_rational(t)?))
        }
    }
}

impl fmt::Display for BranchPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchPoint::Finite(r) => write!(f, "{r}"),
            BranchPoint::Infinity => f.write_str("inf"),
        }
    }
}

/// Six pairwise distinct branch points of the double cover.
#[derive(Debug, Clone)]
pub struct BranchSet {
    points: [BranchPoint; 6],
}

impl BranchSet {
    pub fn new(points: [BranchPoint; 6]) -> Result<Self> {
        for i in 0..6 {
            for j in i + 1..6 {
                if points[i] == points[j] {
                    return Err(Error::DuplicateBranchPoint);
                }
            }
        }
        Ok(BranchSet { points })
    }

    pub fn points(&self) -> &[BranchPoint; 6] {
        &self.points
    }

    /// The sextic with these roots: prod (X - pZ) over finite points, times Z
    /// if infinity is among them.
    pub fn sextic(&self) -> BinarySextic {
        let mut coeffs = vec![Rational::one()];
        let mut has_inf = false;
        for p in &self.points {
            match p {
                BranchPoint::Infinity => has_inf = true,
                BranchPoint::Finite(r) => {
                    let mut next = vec![Rational::zero(); coeffs.len() + 1];
                    for (i, c) in coeffs.iter().enumerate() {
                        next[i] -= c * r;
                        next[i + 1] += c;
                    }
                    coeffs = next;
                }
            }
        }
        let mut arr: [Rational; 7] = std::array::from_fn(|_| Rational::zero());
        for (i, c) in coeffs.into_iter().enumerate() {
            arr[i] = c;
        }
        debug_assert!(has_inf == arr[6].is_zero());
        BinarySextic::new(arr).expect("six distinct roots give a nonzero form")
    }

    /// Images of the six points under a Moebius map making all of them
    /// finite: x -> 1/(x - c) for a constant c outside the set, or the
    /// identity when no point is infinite.
    fn finite_model(&self) -> [Rational; 6] {
        if !self.points.iter().any(|p| *p == BranchPoint::Infinity) {
            return std::array::from_fn(|i| match &self.points[i] {
                BranchPoint::Finite(r) => r.clone(),
                BranchPoint::Infinity => unreachable!(),
            });
        }
        let mut c = int(1);
        'outer: loop {
            for p in &self.points {
                if let BranchPoint::Finite(r) = p {
                    if *r == c {
                        c += int(1);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        std::array::from_fn(|i| match &self.points[i] {
            BranchPoint::Infinity => Rational::zero(),
            BranchPoint::Finite(r) => Rational::one() / (r - &c),
        })
    }
}

/// One of the 15 ways to split the six points into three pairs, with the
/// dependence determinant of the three pair quadratics: zero exactly when an
/// involution of the line switches the two roots of each quadratic.
#[derive(Debug, Clone)]
pub struct PairingCertificate {
    pub pairing: [(usize, usize); 3],
    pub det: Rational,
}

const PAIRINGS: [[(usize, usize); 3]; 15] = [
    [(0, 1), (2, 3), (4, 5)],
    [(0, 1), (2, 4), (3, 5)],
    [(0, 1), (2, 5), (3, 4)],
    [(0, 2), (1, 3), (4, 5)],
    [(0, 2), (1, 4), (3, 5)],
    [(0, 2), (1, 5), (3, 4)],
    [(0, 3), (1, 2), (4, 5)],
    [(0, 3), (1, 4), (2, 5)],
    [(0, 3), (1, 5), (2, 4)],
    [(0, 4), (1, 2), (3, 5)],
    [(0, 4), (1, 3), (2, 5)],
    [(0, 4), (1, 5), (2, 3)],
    [(0, 5), (1, 2), (3, 4)],
    [(0, 5), (1, 3), (2, 4)],
    [(0, 5), (1, 4), (2, 3)],
];

/// All 15 pairing certificates for the branch set.
pub fn elliptic_pairings(b: &BranchSet) -> Vec<PairingCertificate> {
    let pts = b.finite_model();
    PAIRINGS
        .iter()
        .map(|pairing| {
            // rows (pq, -(p+q), 1) of the three monic quadratics
            let rows: Vec<[Rational; 3]> = pairing
                .iter()
                .map(|&(i, j)| {
                    let (p, q) = (&pts[i], &pts[j]);
                    [p * q, -(p + q), Rational::one()]
                })
                .collect();
            let det = det3(&rows);
            PairingCertificate {
                pairing: *pairing,
                det,
            }
        })
        .collect()
}

fn det3(m: &[[Rational; 3]]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Does the 6-set admit an elliptic involution? Dual to the vanishing of the
/// locus equation on the associated sextic.
pub fn has_elliptic_involution(b: &BranchSet) -> bool {
    elliptic_pairings(b).iter().any(|c| c.det.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn uv(u: i64, v: i64) -> UVPoint {
        UVPoint::new(int(u), int(v)).unwrap()
    }

    fn branch(points: [i64; 6]) -> BranchSet {
        BranchSet::new(points.map(|p| BranchPoint::Finite(int(p)))).unwrap()
    }

    #[test]
    fn classify_uv_cases() {
        assert_eq!(classify_uv(&uv(25, -250)), AutGroupType::Gl2F3);
        assert_eq!(classify_uv(&uv(0, 0)), AutGroupType::Z3SemiD8);
        assert_eq!(classify_uv(&uv(225, 6750)), AutGroupType::Z3SemiD8);
        assert_eq!(classify_uv(&uv(4, 16)), AutGroupType::D8);
        assert_eq!(classify_uv(&uv(5, 150)), AutGroupType::D12);
        assert_eq!(classify_uv(&uv(1, 1)), AutGroupType::V4);
    }

    #[test]
    fn classify_sextic_cases() {
        let z10 = BinarySextic::parse("0 -1 0 0 0 0 1").unwrap();
        assert_eq!(classify_sextic(&z10).unwrap(), AutGroupType::Z10);
        let x6m1 = BinarySextic::parse("-1 0 0 0 0 0 1").unwrap();
        let rep = classify_sextic_report(&x6m1).unwrap();
        assert_eq!(rep.group, AutGroupType::Z3SemiD8);
        assert_eq!(rep.involution_classes, 2);
        assert_eq!(rep.uv_preimages.len(), 2);
        let x5mx = BinarySextic::parse("0 -1 0 0 0 1 0").unwrap();
        assert_eq!(classify_sextic(&x5mx).unwrap(), AutGroupType::Gl2F3);
        // a generic curve off the locus
        let generic = BinarySextic::parse("1 1 0 0 1 0 1").unwrap();
        assert_eq!(classify_sextic(&generic).unwrap(), AutGroupType::Z2);
    }

    #[test]
    fn involution_counts() {
        assert_eq!(involution_class_count(AutGroupType::Gl2F3), 1);
        assert_eq!(involution_class_count(AutGroupType::Z10), 0);
        assert_eq!(involution_class_count(AutGroupType::D12), 2);
    }

    #[test]
    fn symmetric_six_points_have_involution() {
        let b = branch([1, -1, 2, -2, 3, -3]);
        let certs = elliptic_pairings(&b);
        let hit = certs
            .iter()
            .find(|c| c.pairing == [(0, 1), (2, 3), (4, 5)])
            .unwrap();
        assert!(hit.det.is_zero());
        assert!(has_elliptic_involution(&b));
    }

    #[test]
    fn infinity_pairing_example() {
        // {0, inf, 1, -1, 2, -2} with the involution x -> 2/x pairing
        // (0,inf), (1,2), (-1,-2)
        let b = BranchSet::new([
            BranchPoint::Finite(int(0)),
            BranchPoint::Infinity,
            BranchPoint::Finite(int(1)),
            BranchPoint::Finite(int(-1)),
            BranchPoint::Finite(int(2)),
            BranchPoint::Finite(int(-2)),
        ])
        .unwrap();
        let certs = elliptic_pairings(&b);
        let hit = certs
            .iter()
            .find(|c| c.pairing == [(0, 1), (2, 4), (3, 5)])
            .unwrap();
        assert!(hit.det.is_zero());
    }

    #[test]
    fn pairing_oracle_agrees_with_locus_equation() {
        let b = BranchSet::new([
            BranchPoint::Finite(int(0)),
            BranchPoint::Finite(int(1)),
            BranchPoint::Infinity,
            BranchPoint::Finite(int(2)),
            BranchPoint::Finite(int(5)),
            BranchPoint::Finite(int(9)),
        ])
        .unwrap();
        let via_pairings = has_elliptic_involution(&b);
        let via_locus = l2_equation(&igusa_invariants(&b.sextic())).is_zero();
        assert_eq!(via_pairings, via_locus);
    }

    #[test]
    fn duplicate_points_rejected() {
        assert!(BranchSet::new([
            BranchPoint::Finite(int(0)),
            BranchPoint::Finite(int(0)),
            BranchPoint::Finite(int(1)),
            BranchPoint::Finite(int(2)),
            BranchPoint::Finite(int(3)),
            BranchPoint::Finite(int(4)),
        ])
        .is_err());
    }

    #[test]
    fn branch_set_sextic_roots() {
        let b = branch([1, -1, 2, -2, 3, -3]);
        // (x^2-1)(x^2-4)(x^2-9) = x^6 - 14x^4 + 49x^2 - 36
        let f = b.sextic();
        assert_eq!(f.coeff(0), &int(-36));
        assert_eq!(f.coeff(2), &int(49));
        assert_eq!(f.coeff(4), &int(-14));
        assert_eq!(f.coeff(6), &int(1));
        let _ = rat(1, 2);
    }
}
