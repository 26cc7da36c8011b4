//! The identity suite: every repaired or reconstructed formula is re-derived
//! and cross-checked here, deterministically under a fixed seed.

use crate::autgroup::{has_elliptic_involution, BranchPoint, BranchSet};
use crate::igusa::{igusa_invariants, transform, BinarySextic};
use crate::igusa_recon::reconstruct_j6;
use crate::locus::{
    d12_poly, d8_poly, delta, igusa_from_uv, jpair_discriminant, l2_equation,
    phi3_identity_check, reconstruct_l2, sextic_from_s, uv_from_s, UVPoint, PHI3_FACTOR_CONSTANT,
};
use crate::rational::{int, pow, rat, Rational};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

/// One identity suite's outcome. Rationals are serialized as `p/q` strings
/// and the notes record which source repairs the suite certifies.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub operation: String,
    pub inputs: String,
    pub outputs: String,
    pub samples: u64,
    pub passed: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub sample_size: u64,
    pub all_passed: bool,
    pub records: Vec<ReportRecord>,
}

fn rand_rat(rng: &mut ChaCha20Rng, span: i64, den: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=den))
}

fn rand_uv(rng: &mut ChaCha20Rng) -> UVPoint {
    loop {
        let u = rand_rat(rng, 40, 6);
        let v = rand_rat(rng, 40, 6);
        if let Ok(p) = UVPoint::new(u, v) {
            return p;
        }
    }
}

/// Run all identity suites with `sample_size` random samples each.
/// `sample_size = 0` produces an empty passing report.
pub fn verify_identities(sample_size: u64, seed: u64) -> VerifyReport {
    let mut records = Vec::new();
    if sample_size > 0 {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        records.push(family_identity(sample_size, &mut rng));
        records.push(covariance(sample_size, &mut rng));
        records.push(discriminant_identity(sample_size, &mut rng));
        records.push(dihedral_factorizations(sample_size, &mut rng));
        records.push(phi3_factorization(sample_size.min(60), &mut rng));
        records.push(l2_reconstruction_diff(&mut rng));
        records.push(j6_reconstruction_diff(&mut rng));
        records.push(dual_oracle(sample_size, &mut rng));
    }
    VerifyReport {
        seed,
        sample_size,
        all_passed: records.iter().all(|r| r.passed),
        records,
    }
}

/// invariants of the normal-form curve == the (u,v) polynomial values
fn family_identity(samples: u64, rng: &mut ChaCha20Rng) -> ReportRecord {
    let mut pass = true;
    let mut done = 0;
    while done < samples {
        let s1 = rand_rat(rng, 30, 5);
        let s2 = rand_rat(rng, 30, 5);
        let Ok(p) = uv_from_s(&s1, &s2, &Rational::one()) else {
            continue;
        };
        let direct = igusa_invariants(&sextic_from_s(&s1, &s2).unwrap());
        if direct != igusa_from_uv(&p) {
            pass = false;
            break;
        }
        done += 1;
    }
    ReportRecord {
        operation: "family-identity".into(),
        inputs: format!("{done} random (s1, s2) with nonzero discriminant"),
        outputs: "invariants agree exactly in all four components".into(),
        samples: done,
        passed: pass,
        notes: vec![],
    }
}

/// J_{2i} scales by det(m)^{6i} e^{4i} under coordinate change
fn covariance(samples: u64, rng: &mut ChaCha20Rng) -> ReportRecord {
    let mut pass = true;
    let mut done = 0;
    while done < samples {
        let coeffs: [Rational; 7] = std::array::from_fn(|_| rand_rat(rng, 9, 3));
        let Ok(f) = BinarySextic::new(coeffs) else {
            continue;
        };
        let m = [
            [rand_rat(rng, 5, 2), rand_rat(rng, 5, 2)],
            [rand_rat(rng, 5, 2), rand_rat(rng, 5, 2)],
        ];
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.is_zero() {
            continue;
        }
        let e = loop {
            let e = rand_rat(rng, 5, 3);
            if !e.is_zero() {
                break e;
            }
        };
        let g = transform(&f, &m, &e).unwrap();
        let a = igusa_invariants(&f);
        let b = igusa_invariants(&g);
        let scale = |i: u32| pow(&det, 6 * i) * pow(&e, 4 * i);
        if b.j2 != &a.j2 * scale(1)
            || b.j4 != &a.j4 * scale(2)
            || b.j6 != &a.j6 * scale(3)
            || b.j10 != &a.j10 * scale(5)
        {
            pass = false;
            break;
        }
        done += 1;
    }
    ReportRecord {
        operation: "covariance".into(),
        inputs: format!("{done} random (f, m, e) with det(m), e nonzero"),
        outputs: "J_2i multiplies by det^(6i) e^(4i), i in {1,2,3,5}".into(),
        samples: done,
        passed: pass,
        notes: vec![],
    }
}

/// N1^2 - 4 N2^3 = (v^2 - 4u^3)(v - 9u + 27)^2, cleared form of the
/// discriminant of (x - j1)(x - j2)
fn discriminant_identity(samples: u64, rng: &mut ChaCha20Rng) -> ReportRecord {
    let mut pass = true;
    for _ in 0..samples {
        let p = rand_uv(rng);
        let (u, v) = (p.u().clone(), p.v().clone());
        let d = delta(&u, &v);
        let rhs_core = (v.clone() * &v - int(4) * pow(&u, 3))
            * pow(&(v.clone() - int(9) * &u + int(27)), 2);
        let lhs = jpair_discriminant(&p);
        if lhs != int(65536) * &rhs_core / (&d * &d) {
            pass = false;
            break;
        }
    }
    ReportRecord {
        operation: "discriminant-identity".into(),
        inputs: format!("{samples} random (u, v)"),
        outputs: "e1^2 - 4 e2 = 2^16 (v^2-4u^3)(v-9u+27)^2 / Delta^2".into(),
        samples,
        passed: pass,
        notes: vec![
            "source prints the factor as (4u^3-v^2) with Delta^2 uncleared; the \
             verified sign and Delta power are as implemented"
                .into(),
        ],
    }
}

/// the two dihedral-locus polynomials factor over the branch parameterization
fn dihedral_factorizations(samples: u64, rng: &mut ChaCha20Rng) -> ReportRecord {
    let mut pass = true;
    let mut done = 0;
    let d6_const = int(-1);
    let d4_const = int(1);
    while done < samples {
        let a = rand_rat(rng, 20, 7);
        let b = rand_rat(rng, 20, 7);
        if a.is_zero() || b.is_zero() || (&a * &b).is_one() {
            continue;
        }
        let c = Rational::one() / (&a * &b);
        let s1 = &a * &a + &b * &b + &c * &c;
        let s2 = &a * &a * &b * &b + &a * &a * &c * &c + &b * &b * &c * &c;
        let u = &s1 * &s2;
        let v = pow(&s1, 3) + pow(&s2, 3);
        let ab = &a * &b;
        let lhs6 = d12_poly(&u, &v) * pow(&ab, 8);
        let lhs4 = d8_poly(&u, &v) * pow(&ab, 12);
        let f6 = {
            let t1 = pow(&a, 4) * pow(&b, 3) - &a + pow(&a, 3) * &b + &b
                + int(6) * &a * &a * &b * &b
                + &a * pow(&b, 3)
                - pow(&b, 4) * pow(&a, 3);
            let t2 = pow(&a, 4) * pow(&b, 3) + &a - pow(&a, 3) * &b + &b
                + int(6) * &a * &a * &b * &b
                - &a * pow(&b, 3)
                + pow(&b, 4) * pow(&a, 3);
            let t3 = pow(&a, 4) * pow(&b, 3) - &a - pow(&a, 3) * &b + &b
                - int(6) * &a * &a * &b * &b
                - &a * pow(&b, 3)
                - pow(&b, 4) * pow(&a, 3);
            let t4 = pow(&a, 4) * pow(&b, 3) + &a + pow(&a, 3) * &b + &b
                - int(6) * &a * &a * &b * &b
                + &a * pow(&b, 3)
                + pow(&b, 4) * pow(&a, 3);
            t1 * t2 * t3 * t4
        };
        let f4 = {
            let factors = [
                &b - int(1),
                &b + int(1),
                &b * &b + &b + int(1),
                &b * &b - &b + int(1),
                &a - int(1),
                &a + int(1),
                &a * &a + &a + int(1),
                &a * &a - &a + int(1),
                &ab - int(1),
                &ab + int(1),
                &ab * &ab + &ab + int(1),
                &ab * &ab - &ab + int(1),
            ];
            factors.iter().fold(Rational::one(), |acc, f| acc * f * f)
        };
        if lhs6 != &d6_const * f6 || lhs4 != &d4_const * f4 {
            pass = false;
            break;
        }
        done += 1;
    }
    ReportRecord {
        operation: "dihedral-locus-factorization".into(),
        inputs: format!("{done} random branch parameters (a, b)"),
        outputs: "cleared D12 locus = -1 * four-factor product; cleared D8 locus = \
                  +1 * squared-factor product"
            .into(),
        samples: done,
        passed: pass,
        notes: vec!["proportionality constants fitted once: -1 and +1".into()],
    }
}

/// Delta^6 Phi3(j1,j2) = 2^32 * (D12 locus) * g1 * g2
fn phi3_factorization(samples: u64, rng: &mut ChaCha20Rng) -> ReportRecord {
    let mut pass = true;
    let mut ratios_seen = 0;
    for _ in 0..samples {
        let p = rand_uv(rng);
        match phi3_identity_check(&p) {
            Ok(chk) => {
                if let Some(r) = chk.ratio {
                    if r != *PHI3_FACTOR_CONSTANT {
                        pass = false;
                        break;
                    }
                    ratios_seen += 1;
                }
            }
            Err(_) => {
                pass = false;
                break;
            }
        }
    }
    for (u, v) in [(25, -250), (225, 6750)] {
        let p = UVPoint::new(int(u), int(v)).unwrap();
        match phi3_identity_check(&p) {
            Ok(chk) if chk.lhs.is_zero() => {}
            _ => pass = false,
        }
    }
    ReportRecord {
        operation: "phi3-factorization".into(),
        inputs: format!("{samples} random (u, v) plus the two self-isogenous points"),
        outputs: format!(
            "single constant {} across {ratios_seen} nonzero evaluations; zero at (25,-250) and (225,6750)",
            &*PHI3_FACTOR_CONSTANT
        ),
        samples,
        passed: pass,
        notes: vec![
            "j1 j2 requires the cube on (u^2+9u-3v): the uncubed printing gives 25 \
             at (25,-250) where the true value is 8000^2"
                .into(),
            "identity closes with Delta power 6, not 4".into(),
            "two degree-5 terms of the modular polynomial read as x^2y^2(x+y) and \
             xy(x^2+y^2)"
                .into(),
        ],
    }
}

fn l2_reconstruction_diff(rng: &mut ChaCha20Rng) -> ReportRecord {
    match reconstruct_l2(rng) {
        Ok(rec) => {
            let stored_ok = rec.table.diff(&crate::locus::L2_TABLE).is_empty();
            let known_repair = rec.printed_diff.len() == 1
                && rec.printed_diff[0].0 == vec![1, 2, 0, 2]
                && rec.printed_diff[0].1 == int(-507384000)
                && rec.printed_diff[0].2 == int(507384000);
            ReportRecord {
                operation: "locus-equation-reconstruction".into(),
                inputs: "nullspace of 47 weight-15 monomials at 120 parameterized points".into(),
                outputs: format!(
                    "dimension 1; matches stored table: {stored_ok}; diffs vs printed: {}",
                    rec.printed_diff
                        .iter()
                        .map(|(m, p, r)| format!("{m:?}: printed {p}, reconstructed {r}"))
                        .collect::<Vec<_>>()
                        .join("; ")
                ),
                samples: 120,
                passed: stored_ok && known_repair,
                notes: vec![
                    "stray token -6912 J4^3 J6^3 '4' stored as -6912 J4^3 J6^3".into(),
                    "J2 J4^2 J10^2 coefficient sign repaired to +507384000".into(),
                ],
            }
        }
        Err(e) => ReportRecord {
            operation: "locus-equation-reconstruction".into(),
            inputs: "".into(),
            outputs: format!("failed: {e}"),
            samples: 0,
            passed: false,
            notes: vec![],
        },
    }
}

fn j6_reconstruction_diff(rng: &mut ChaCha20Rng) -> ReportRecord {
    match reconstruct_j6(rng) {
        Ok(rec) => {
            let stored_ok = rec.table.diff(&crate::igusa::J6_TABLE).is_empty();
            let mut diffs = rec.printed_diff.clone();
            diffs.sort();
            let known = diffs.len() == 2
                && diffs[0].0 == vec![0, 0, 4, 0, 1, 0, 1]
                && diffs[0].1 == int(-320)
                && diffs[0].2 == int(-160)
                && diffs[1].0 == vec![1, 0, 3, 0, 0, 0, 2]
                && diffs[1].1 == int(-192)
                && diffs[1].2 == int(-96);
            ReportRecord {
                operation: "j6-reconstruction".into(),
                inputs: "invariance constraints in degree 6, weight 18, plus the family pin".into(),
                outputs: format!(
                    "invariant space dimension {}; matches stored table: {stored_ok}; \
                     printed coefficients repaired: {}; unprintable tokens recovered: {}",
                    rec.dimension,
                    diffs
                        .iter()
                        .map(|(m, p, r)| format!("{m:?}: printed {p}, true {r}"))
                        .collect::<Vec<_>>()
                        .join("; "),
                    rec.unprinted.len()
                ),
                samples: 0,
                passed: stored_ok && known && rec.dimension == 3,
                notes: vec![
                    "a0 a2^3 a6^2 and a2^4 a4 a6 print at double their true values".into(),
                    "five tokens of the printed polynomial are truncated; the \
                     reconstruction recovers six terms with no printable counterpart"
                        .into(),
                ],
            }
        }
        Err(e) => ReportRecord {
            operation: "j6-reconstruction".into(),
            inputs: "".into(),
            outputs: format!("failed: {e}"),
            samples: 0,
            passed: false,
            notes: vec![],
        },
    }
}

/// the pairing-determinant oracle agrees with the locus equation
fn dual_oracle(samples: u64, rng: &mut ChaCha20Rng) -> ReportRecord {
    let mut pass = true;
    let mut done = 0;
    let mut on_locus = 0;
    while done < samples {
        // alternate generic 6-sets with Moebius images of symmetric ones so
        // both answers occur
        let set = if done % 2 == 0 {
            random_branch_set(rng)
        } else {
            moebius_symmetric_branch_set(rng)
        };
        let Some(b) = set else { continue };
        let inv = igusa_invariants(&b.sextic());
        if inv.j10.is_zero() {
            continue;
        }
        let via_pairing = has_elliptic_involution(&b);
        let via_locus = l2_equation(&inv).is_zero();
        if via_pairing != via_locus {
            pass = false;
            break;
        }
        if via_locus {
            on_locus += 1;
        }
        done += 1;
    }
    ReportRecord {
        operation: "dual-oracle-agreement".into(),
        inputs: format!("{done} rational 6-point branch sets ({on_locus} on the locus)"),
        outputs: "pairing determinants vanish exactly when the locus equation does".into(),
        samples: done,
        passed: pass,
        notes: vec![],
    }
}

fn random_branch_set(rng: &mut ChaCha20Rng) -> Option<BranchSet> {
    let mut pts = Vec::new();
    for _ in 0..6 {
        pts.push(BranchPoint::Finite(rand_rat(rng, 12, 4)));
    }
    BranchSet::new(pts.try_into().unwrap()).ok()
}

/// a Moebius image of {±a, ±b, ±c}, which always admits an involution
fn moebius_symmetric_branch_set(rng: &mut ChaCha20Rng) -> Option<BranchSet> {
    let a = rand_rat(rng, 9, 3);
    let b = rand_rat(rng, 9, 3);
    let c = rand_rat(rng, 9, 3);
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return None;
    }
    let base = [
        a.clone(),
        -a,
        b.clone(),
        -b,
        c.clone(),
        -c,
    ];
    // x -> (p x + q) / (r x + s) with a nonsingular integer matrix
    let (p, q, r, s) = (
        int(rng.gen_range(-4..=4i64)),
        int(rng.gen_range(-4..=4i64)),
        int(rng.gen_range(-4..=4i64)),
        int(rng.gen_range(-4..=4i64)),
    );
    if (&p * &s - &q * &r).is_zero() {
        return None;
    }
    let mut pts = Vec::new();
    for x in base {
        let den = &r * &x + &s;
        if den.is_zero() {
            pts.push(BranchPoint::Infinity);
        } else {
            pts.push(BranchPoint::Finite((&p * &x + &q) / den));
        }
    }
    BranchSet::new(pts.try_into().unwrap()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_for_zero_samples() {
        let rep = verify_identities(0, 1);
        assert!(rep.records.is_empty());
        assert!(rep.all_passed);
    }

    #[test]
    fn deterministic_under_seed() {
        let a = verify_identities(8, 12345);
        let b = verify_identities(8, 12345);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn small_run_passes() {
        let rep = verify_identities(6, 99);
        for r in &rep.records {
            assert!(r.passed, "suite {} failed: {}", r.operation, r.outputs);
        }
    }
}
