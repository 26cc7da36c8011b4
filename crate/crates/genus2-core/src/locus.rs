//! The (u,v) parameterization of genus-2 fields with an elliptic involution,
//! j-invariants of the two degree-2 elliptic subfields, the locus equation in
//! classical invariants, its inversion, and the level-3 factorization
//! identity.

use crate::error::{Error, Result};
use crate::igusa::{absolute_invariants, moduli_equal, BinarySextic, IgusaInvariants};
use crate::multipoly::MultiPolyTable;
use crate::quadring::QuadRingElem;
use crate::rational::{exact_sqrt, int, pow, rat, Rational};
use crate::unipoly::{rational_roots, UniPoly};
use num::{One, Zero};
use std::sync::LazyLock;

pub static L2_TABLE: LazyLock<MultiPolyTable> =
    LazyLock::new(|| MultiPolyTable::parse(include_str!("../data/l2_locus.txt")).unwrap());
pub static L2_PRINTED: LazyLock<MultiPolyTable> =
    LazyLock::new(|| MultiPolyTable::parse(include_str!("../data/l2_printed.txt")).unwrap());
pub static PHI3_TABLE: LazyLock<MultiPolyTable> =
    LazyLock::new(|| MultiPolyTable::parse(include_str!("../data/phi3.txt")).unwrap());
pub static G1_TABLE: LazyLock<MultiPolyTable> =
    LazyLock::new(|| MultiPolyTable::parse(include_str!("../data/g1.txt")).unwrap());
pub static G2_TABLE: LazyLock<MultiPolyTable> =
    LazyLock::new(|| MultiPolyTable::parse(include_str!("../data/g2.txt")).unwrap());

/// The single constant closing Delta^6 Phi3(j1,j2) = C * (D12 locus) * g1 * g2.
/// Fitted once from the factorization identity and pinned; the identity suite
/// re-derives it on every run.
pub static PHI3_FACTOR_CONSTANT: LazyLock<Rational> = LazyLock::new(|| {
    Rational::from_integer(num::BigInt::from(1u64 << 32))
});

/// Delta(u,v) = u^2 - 4v + 18u - 27; nonzero on valid parameter points.
pub fn delta(u: &Rational, v: &Rational) -> Rational {
    u * u - int(4) * v + int(18) * u - int(27)
}

/// A point of the parameter plane with Delta != 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UVPoint {
    u: Rational,
    v: Rational,
}

impl UVPoint {
    pub fn new(u: Rational, v: Rational) -> Result<Self> {
        if delta(&u, &v).is_zero() {
            return Err(Error::DegenerateSextic);
        }
        Ok(UVPoint { u, v })
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn delta(&self) -> Rational {
        delta(&self.u, &self.v)
    }
}

/// Symmetric data of the two subfield j-invariants: e1 = j1 + j2,
/// e2 = j1 j2, and the split roots when they are rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JPair {
    pub e1: Rational,
    pub e2: Rational,
    pub split: Option<(Rational, Rational)>,
}

/// u = s1 s2 / s3, v = (s1^3 s3 + s2^3) / s3^2; the s3 = 1 case is the
/// normal form Y^2 = X^6 - s1 X^4 + s2 X^2 - 1.
pub fn uv_from_s(s1: &Rational, s2: &Rational, s3: &Rational) -> Result<UVPoint> {
    if s3.is_zero() {
        return Err(Error::ZeroS3);
    }
    let u = s1 * s2 / s3;
    let v = (pow(s1, 3) * s3 + pow(s2, 3)) / (s3 * s3);
    UVPoint::new(u, v)
}

/// Coefficients (-1, 0, s2, 0, -s1, 0, 1) of Y^2 = X^6 - s1 X^4 + s2 X^2 - 1.
pub fn sextic_from_s(s1: &Rational, s2: &Rational) -> Result<BinarySextic> {
    // degenerate exactly when Delta(u,v) = 0 (the form discriminant is 64 Delta^2)
    uv_from_s(s1, s2, &Rational::one())?;
    BinarySextic::new([
        int(-1),
        Rational::zero(),
        s2.clone(),
        Rational::zero(),
        -s1.clone(),
        Rational::zero(),
        Rational::one(),
    ])
}

/// The classical invariants of the parameterized curve.
pub fn igusa_from_uv(p: &UVPoint) -> IgusaInvariants {
    let (u, v) = (&p.u, &p.v);
    let j2 = int(240) + int(16) * u;
    let j4 = int(48) * v + int(4) * u * u + int(1620) - int(504) * u;
    let j6 = int(-20664) * u + int(96) * v - int(424) * u * u
        + int(24) * pow(u, 3)
        + int(160) * u * v
        + int(119880);
    let dm = int(27) - int(18) * u - u * u + int(4) * v;
    let j10 = int(64) * &dm * &dm;
    IgusaInvariants { j2, j4, j6, j10 }
}

fn n1(u: &Rational, v: &Rational) -> Rational {
    v * v - int(2) * pow(u, 3) + int(54) * u * u - int(9) * u * v - int(27) * v
}

fn n2(u: &Rational, v: &Rational) -> Rational {
    u * u + int(9) * u - int(3) * v
}

/// j1 + j2 = 256 N1 / Delta and j1 j2 = 65536 N2^3 / Delta^2 with
/// N1 = v^2 - 2u^3 + 54u^2 - 9uv - 27v and N2 = u^2 + 9u - 3v.
///
/// The product formula needs the cube on N2: without it the values
/// contradict both the discriminant identity and the direct quotient-curve
/// computation for Y^2 = X^5 - X; see the identity suite.
pub fn jpair_from_uv(p: &UVPoint) -> JPair {
    let d = p.delta();
    let e1 = int(256) * n1(&p.u, &p.v) / &d;
    let e2 = int(65536) * pow(&n2(&p.u, &p.v), 3) / (&d * &d);
    let disc = &e1 * &e1 - int(4) * &e2;
    let split = exact_sqrt(&disc).map(|s| {
        let two = int(2);
        let r1 = (&e1 - &s) / &two;
        let r2 = (&e1 + &s) / &two;
        (r1, r2)
    });
    JPair { e1, e2, split }
}

/// e1^2 - 4 e2 = 2^16 (v^2 - 4u^3)(v - 9u + 27)^2 / Delta^2.
pub fn jpair_discriminant(p: &UVPoint) -> Rational {
    let jp = jpair_from_uv(p);
    &jp.e1 * &jp.e1 - int(4) * &jp.e2
}

/// The curve with two isomorphic elliptic subfields of the given j-invariant:
/// u = 9 - j/256, v = 9(6 - j/256), on the line v = 9(u - 3).
pub fn equal_j_family(j: &Rational) -> Result<UVPoint> {
    if j.is_zero() {
        // (9, 54) is the unique point of the line with Delta = 0
        return Err(Error::DegenerateSextic);
    }
    let t = j / int(256);
    UVPoint::new(int(9) - &t, int(9) * (int(6) - &t))
}

/// Invariants of the equal-j curve, directly in terms of j:
/// (384 - j/16, 2^-14 j^2, 2^-21 j^2 (53248 - 3j), 2^-26 j^4).
/// Agrees with igusa_from_uv(equal_j_family(j)) exactly, component-wise.
pub fn m1_embedding(j: &Rational) -> Result<IgusaInvariants> {
    if j.is_zero() {
        return Err(Error::Domain("j = 0 is outside the embedded family".into()));
    }
    let j2sq = j * j;
    Ok(IgusaInvariants {
        j2: int(384) - j / int(16),
        j4: &j2sq / int(16384),
        j6: &j2sq * (int(53248) - int(3) * j) / int(2097152),
        j10: &j2sq * &j2sq / int(67108864),
    })
}

/// Evaluate the stored locus equation; zero iff the moduli point admits a
/// degree-2 elliptic subfield.
pub fn l2_equation(inv: &IgusaInvariants) -> Rational {
    L2_TABLE.eval(&[inv.j2.clone(), inv.j4.clone(), inv.j6.clone(), inv.j10.clone()])
}

/// 4v - u^2 + 110u - 1125; vanishes iff the automorphism group contains D12.
pub fn d12_locus(p: &UVPoint) -> Rational {
    d12_poly(&p.u, &p.v)
}

pub(crate) fn d12_poly(u: &Rational, v: &Rational) -> Rational {
    int(4) * v - u * u + int(110) * u - int(1125)
}

/// v^2 - 4u^3; vanishes iff the automorphism group contains D8.
pub fn d8_locus(p: &UVPoint) -> Rational {
    d8_poly(&p.u, &p.v)
}

pub(crate) fn d8_poly(u: &Rational, v: &Rational) -> Rational {
    v * v - int(4) * pow(u, 3)
}

/// All parameter points mapping to the given moduli point.
///
/// u satisfies a cubic over (i1, i2); v is recovered from the i1 formula,
/// which is linear in v; candidates are filtered by exact moduli equality
/// (which also validates against i3). Distinct involution classes give
/// several points.
pub fn uv_from_igusa(inv: &IgusaInvariants) -> Result<Vec<UVPoint>> {
    if inv.j10.is_zero() {
        return Err(Error::J10Zero);
    }
    if inv.j2.is_zero() {
        return Err(Error::InversionSingular(
            "J2 = 0: the absolute invariants divide by J2".into(),
        ));
    }
    let a = absolute_invariants(inv)?;
    let (i1, i2) = (&a.i1, &a.i2);
    let c3 = int(128) * i2 - int(48) * i1 + int(1);
    let c2 = int(5760) * i2 + int(117) - int(3312) * i1;
    let c1 = int(86400) * i2 - int(66960) * i1 - int(2349);
    let c0 = int(432000) * i2 - int(421200) * i1 + int(10935);
    let cubic = UniPoly::new(vec![c0, c1, c2, c3]);
    if cubic.is_zero() {
        return Err(Error::InversionSingular("inversion cubic degenerates".into()));
    }
    let roots = rational_roots(&cubic)?;
    let minus15 = int(-15);
    let mut points = Vec::new();
    let mut saw_non_singular_root = false;
    for u in &roots {
        if *u == minus15 {
            continue;
        }
        saw_non_singular_root = true;
        let upl = int(15) + u;
        let v = (int(64) * i1 * &upl * &upl - u * u - int(405) + int(126) * u) / int(12);
        let Ok(p) = UVPoint::new(u.clone(), v) else {
            continue;
        };
        if moduli_equal(&igusa_from_uv(&p), inv)? {
            points.push(p);
        }
    }
    if points.is_empty() {
        if !roots.is_empty() && !saw_non_singular_root {
            return Err(Error::InversionSingular("all cubic roots have u = -15".into()));
        }
        return Err(Error::NotOnLocus);
    }
    points.sort_by(|a, b| a.u.cmp(&b.u).then(a.v.cmp(&b.v)));
    Ok(points)
}

/// Both sides of the level-3 factorization identity at a parameter point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phi3Check {
    /// Delta^6 * Phi3(j1, j2), evaluated exactly in the quadratic ring.
    pub lhs: Rational,
    /// (4v - u^2 + 110u - 1125) * g1(u,v) * g2(u,v).
    pub rhs: Rational,
    /// lhs / rhs where defined; equals the pinned constant 2^32.
    pub ratio: Option<Rational>,
}

/// Evaluate Phi3(j1, j2) symmetrically and compare against the factored form.
///
/// Phi3 is evaluated at x = t, y = e1 - t in the quotient by
/// t^2 - e1 t + e2; symmetry forces the t-component to vanish, which is
/// asserted. The identity closes with the Delta power 6 and the single
/// constant 2^32 (both fixed by exact verification).
pub fn phi3_identity_check(p: &UVPoint) -> Result<Phi3Check> {
    let jp = jpair_from_uv(p);
    let x = QuadRingElem::generator(&jp.e1, &jp.e2);
    let y = QuadRingElem {
        c0: jp.e1.clone(),
        c1: int(-1),
        e1: jp.e1.clone(),
        e2: jp.e2.clone(),
    };
    let val = PHI3_TABLE.eval_in(&[x, y]);
    if !val.c1.is_zero() {
        return Err(Error::IdentityViolation(
            "Phi3 is symmetric but its quadratic-ring value has a t-component".into(),
        ));
    }
    let d = p.delta();
    let lhs = pow(&d, 6) * val.c0;
    let g1 = G1_TABLE.eval(&[p.u.clone(), p.v.clone()]);
    let g2 = G2_TABLE.eval(&[p.u.clone(), p.v.clone()]);
    let rhs = d12_locus(p) * g1 * g2;
    if rhs.is_zero() {
        if !lhs.is_zero() {
            return Err(Error::IdentityViolation(
                "factored form vanishes but Phi3 does not".into(),
            ));
        }
        return Ok(Phi3Check { lhs, rhs, ratio: None });
    }
    let ratio = &lhs / &rhs;
    if ratio != *PHI3_FACTOR_CONSTANT {
        return Err(Error::IdentityViolation(format!(
            "Phi3 factorization constant drifted: got {ratio}"
        )));
    }
    Ok(Phi3Check { lhs, rhs, ratio: Some(ratio) })
}

/// Re-derive the locus equation as the nullspace of weight-15 monomial
/// evaluations at parameterized points.
pub struct L2Reconstruction {
    pub dimension: usize,
    pub table: MultiPolyTable,
    /// coefficient differences against the printed form: (monomial, printed, reconstructed)
    pub printed_diff: Vec<(Vec<u32>, Rational, Rational)>,
}

/// Exponent vectors of all weight-15 monomials in (J2, J4, J6, J10) under
/// weights (1, 2, 3, 5).
pub fn weight15_monomials() -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for d in 0..=3u32 {
        for c in 0..=5u32 {
            for b in 0..=7u32 {
                let rest = 15i64 - 2 * b as i64 - 3 * c as i64 - 5 * d as i64;
                if rest >= 0 {
                    out.push([rest as u32, b, c, d]);
                }
            }
        }
    }
    out.sort();
    out
}

pub fn reconstruct_l2(rng: &mut impl rand::Rng) -> Result<L2Reconstruction> {
    let monos = weight15_monomials();
    let mut rows = Vec::new();
    while rows.len() < 120 {
        let u = rat(rng.gen_range(-40..=40), rng.gen_range(1..=7) as i64);
        let v = rat(rng.gen_range(-40..=40), rng.gen_range(1..=7) as i64);
        let Ok(p) = UVPoint::new(u, v) else { continue };
        let inv = igusa_from_uv(&p);
        let args = [inv.j2, inv.j4, inv.j6, inv.j10];
        rows.push(
            monos
                .iter()
                .map(|e| {
                    let mut t = Rational::one();
                    for (x, &k) in args.iter().zip(e.iter()) {
                        t *= pow(x, k);
                    }
                    t
                })
                .collect::<Vec<_>>(),
        );
    }
    let basis = crate::linalg::nullspace(rows, monos.len());
    let dimension = basis.len();
    if dimension != 1 {
        return Err(Error::IdentityViolation(format!(
            "locus-equation nullspace has dimension {dimension}, expected 1"
        )));
    }
    let vec = &basis[0];
    // normalize the J2^7 J4^4 coefficient to -1
    let idx = monos.iter().position(|e| *e == [7, 4, 0, 0]).unwrap();
    if vec[idx].is_zero() {
        return Err(Error::IdentityViolation(
            "nullspace vector lacks the J2^7 J4^4 monomial".into(),
        ));
    }
    let scale = int(-1) / &vec[idx];
    let mut table = MultiPolyTable::new(4);
    for (e, c) in monos.iter().zip(vec.iter()) {
        table.insert(e.to_vec(), c * &scale);
    }
    let printed_diff = L2_PRINTED.diff(&table);
    Ok(L2Reconstruction {
        dimension,
        table,
        printed_diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::igusa::igusa_invariants;
    use rand::Rng;
    use rand::SeedableRng;

    fn uv(u: i64, v: i64) -> UVPoint {
        UVPoint::new(int(u), int(v)).unwrap()
    }

    #[test]
    fn uv_from_s_examples() {
        let p = uv_from_s(&int(0), &int(0), &int(1)).unwrap();
        assert_eq!((p.u(), p.v()), (&int(0), &int(0)));
        let p = uv_from_s(&int(2), &int(3), &int(6)).unwrap();
        assert_eq!(p.u(), &int(1));
        assert_eq!(p.v(), &rat(25, 12));
        assert!(uv_from_s(&int(1), &int(1), &int(0)).is_err());
        // (s1,s2) = (3, 3 - ...) with Delta = 0: u=9, v=54 comes from s1=s2=3
        assert!(uv_from_s(&int(3), &int(3), &int(1)).is_err());
    }

    #[test]
    fn sextic_from_s_reads_off() {
        let f = sextic_from_s(&int(1), &int(1)).unwrap();
        assert_eq!(f.coeffs().clone().map(|c| c.to_string()).join(","), "-1,0,1,0,-1,0,1");
        assert!(sextic_from_s(&int(3), &int(3)).is_err());
    }

    #[test]
    fn igusa_from_uv_values() {
        let i = igusa_from_uv(&uv(0, 0));
        assert_eq!(
            (i.j2, i.j4, i.j6, i.j10),
            (int(240), int(1620), int(119880), int(46656))
        );
        let i = igusa_from_uv(&uv(25, -250));
        assert_eq!(
            (i.j2, i.j4, i.j6, i.j10),
            (int(640), int(-20480), int(-1310720), int(268435456))
        );
        assert_eq!(igusa_from_uv(&uv(225, 6750)).j2, int(3840));
    }

    #[test]
    fn jpair_values() {
        let jp = jpair_from_uv(&uv(0, 0));
        assert_eq!((jp.e1, jp.e2), (int(0), int(0)));
        assert_eq!(jp.split, Some((int(0), int(0))));

        let jp = jpair_from_uv(&uv(25, -250));
        assert_eq!((&jp.e1, &jp.e2), (&int(16000), &int(64000000)));
        assert_eq!(jp.split, Some((int(8000), int(8000))));

        let jp = jpair_from_uv(&uv(225, 6750));
        assert_eq!((&jp.e1, &jp.e2), (&int(108000), &int(2916000000)));
        assert_eq!(jp.split, Some((int(54000), int(54000))));
    }

    #[test]
    fn jpair_discriminant_values() {
        assert_eq!(jpair_discriminant(&uv(25, -250)), int(0));
        assert_eq!(jpair_discriminant(&uv(0, 0)), int(0));
        assert_eq!(jpair_discriminant(&uv(1, 0)), int(-1327104));
    }

    #[test]
    fn equal_j_and_embedding() {
        let p = equal_j_family(&int(8000)).unwrap();
        assert_eq!((p.u(), p.v()), (&rat(-89, 4), &rat(-909, 4)));
        assert!(equal_j_family(&int(0)).is_err());

        let m = m1_embedding(&int(256)).unwrap();
        assert_eq!(m.j2, int(368));
        assert_eq!(m.j4, int(4));
        assert_eq!(m.j10, int(64));
        // the direct formulas agree with the parameterized route exactly
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(5);
        for _ in 0..100 {
            let j = rat(rng.gen_range(-500..=500), rng.gen_range(1..=9) as i64);
            if j.is_zero() {
                continue;
            }
            let via_uv = igusa_from_uv(&equal_j_family(&j).unwrap());
            let direct = m1_embedding(&j).unwrap();
            assert_eq!(via_uv, direct);
        }
    }

    #[test]
    fn l2_vanishing() {
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(6);
        for _ in 0..50 {
            let u = rat(rng.gen_range(-30..=30), rng.gen_range(1..=5) as i64);
            let v = rat(rng.gen_range(-30..=30), rng.gen_range(1..=5) as i64);
            let Ok(p) = UVPoint::new(u, v) else { continue };
            assert!(l2_equation(&igusa_from_uv(&p)).is_zero());
        }
        // the order-10 curve lies off the locus
        let z10 = igusa_invariants(&BinarySextic::parse("0 -1 0 0 0 0 1").unwrap());
        assert!(!l2_equation(&z10).is_zero());
    }

    #[test]
    fn d_locus_values() {
        assert_eq!(d12_locus(&uv(5, 150)), int(0));
        assert_eq!(d8_locus(&uv(4, 16)), int(0));
        assert_eq!(d8_locus(&uv(0, 0)), int(0));
        assert_eq!(d12_locus(&uv(0, 0)), int(-1125));
        // the two sporadic points lie on both loci
        for p in [uv(25, -250), uv(225, 6750)] {
            assert_eq!(d8_locus(&p), int(0));
            assert_eq!(d12_locus(&p), int(0));
        }
    }

    #[test]
    fn inversion_roundtrips() {
        let p = uv(0, 0);
        let back = uv_from_igusa(&igusa_from_uv(&p)).unwrap();
        assert!(back.contains(&p));
        let p = uv(25, -250);
        assert!(uv_from_igusa(&igusa_from_uv(&p)).unwrap().contains(&p));
    }

    #[test]
    fn inversion_of_x6_minus_1_finds_both_points() {
        let inv = igusa_invariants(&BinarySextic::parse("-1 0 0 0 0 0 1").unwrap());
        let pts = uv_from_igusa(&inv).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.contains(&uv(0, 0)));
        assert!(pts.contains(&uv(225, 6750)));
    }

    #[test]
    fn inversion_rejects_j2_zero() {
        let z10 = igusa_invariants(&BinarySextic::parse("0 -1 0 0 0 0 1").unwrap());
        assert!(matches!(
            uv_from_igusa(&z10),
            Err(Error::InversionSingular(_))
        ));
    }

    #[test]
    fn phi3_special_points_vanish() {
        for p in [uv(25, -250), uv(225, 6750)] {
            let chk = phi3_identity_check(&p).unwrap();
            assert!(chk.lhs.is_zero());
        }
    }

    #[test]
    fn phi3_constant_on_random_points() {
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(9);
        let mut seen = 0;
        while seen < 10 {
            let u = rat(rng.gen_range(-20..=20), rng.gen_range(1..=4) as i64);
            let v = rat(rng.gen_range(-20..=20), rng.gen_range(1..=4) as i64);
            let Ok(p) = UVPoint::new(u, v) else { continue };
            let chk = phi3_identity_check(&p).unwrap();
            if let Some(r) = chk.ratio {
                assert_eq!(r, *PHI3_FACTOR_CONSTANT);
                seen += 1;
            }
        }
    }

    #[test]
    fn stored_l2_table_is_weight_homogeneous() {
        for (e, _) in L2_TABLE.terms() {
            assert_eq!(e[0] + 2 * e[1] + 3 * e[2] + 5 * e[3], 15);
        }
        assert_eq!(L2_TABLE.coeff(&[7, 4, 0, 0]), int(-1));
    }

    #[test]
    fn l2_reconstruction_matches_stored() {
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(12);
        let rec = reconstruct_l2(&mut rng).unwrap();
        assert_eq!(rec.dimension, 1);
        assert!(rec.table.diff(&L2_TABLE).is_empty());
        // printed form differs in exactly one coefficient (a sign), beyond the
        // stray-token repair already applied when storing the printed table
        assert_eq!(rec.printed_diff.len(), 1);
        let (mono, printed, recon) = &rec.printed_diff[0];
        assert_eq!(mono.as_slice(), &[1, 2, 0, 2]);
        assert_eq!(printed, &int(-507384000));
        assert_eq!(recon, &int(507384000));
    }
}
