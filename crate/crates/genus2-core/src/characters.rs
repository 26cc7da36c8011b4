//! Symmetric-group characters by the Murnaghan-Nakayama rule, and the
//! class-algebra structure constants they compute.
//!
//! Used to certify completeness of exhaustive candidate enumeration: the
//! number of pairs (x, y) in prescribed classes with xy equal to a fixed
//! permutation is a character sum, so the backtracking search can be checked
//! against an independent count.

use crate::error::{Error, Result};
use crate::perm::CycleType;
use crate::rational::{Int, Rational};
use num::{BigInt, One, Signed, Zero};
use std::collections::HashMap;

/// Partitions of n, descending parts, lexicographically ordered output.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// dim of the irreducible labeled by `lambda`, by the hook length formula.
pub fn dimension(lambda: &[usize]) -> Int {
    let n: usize = lambda.iter().sum();
    let mut numer: Int = (1..=n).fold(BigInt::one(), |acc, k| acc * k);
    for (i, &li) in lambda.iter().enumerate() {
        for j in 0..li {
            // hook length at (i, j)
            let arm = li - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&lk| lk > j).count();
            let hook = arm + leg + 1;
            numer /= BigInt::from(hook);
        }
    }
    numer
}

/// chi_lambda evaluated on the class of cycle type mu, by border-strip
/// removal over beta-numbers.
pub fn mn_character(lambda: &[usize], mu: &CycleType) -> Int {
    let n: usize = lambda.iter().sum();
    assert_eq!(n, mu.degree(), "character argument size mismatch");
    // beta-numbers: lambda_i + (k - 1 - i) for i = 0..k, strictly decreasing
    let k = lambda.len().max(1);
    let mut beta: Vec<usize> = (0..k)
        .map(|i| lambda.get(i).copied().unwrap_or(0) + (k - 1 - i))
        .collect();
    beta.sort_unstable();
    let mut memo: HashMap<(Vec<usize>, usize), Int> = HashMap::new();
    // mu parts processed largest-first (any fixed order works)
    let parts = mu.parts().to_vec();
    mn_rec(&mut beta.clone(), &parts, 0, &mut memo)
}

fn mn_rec(
    beta: &mut Vec<usize>,
    parts: &[usize],
    idx: usize,
    memo: &mut HashMap<(Vec<usize>, usize), Int>,
) -> Int {
    if idx == parts.len() {
        return BigInt::one();
    }
    let key = (beta.clone(), idx);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let l = parts[idx];
    let mut total: Int = BigInt::zero();
    for i in 0..beta.len() {
        let b = beta[i];
        if b < l {
            continue;
        }
        let t = b - l;
        if beta.binary_search(&t).is_ok() {
            continue;
        }
        // height: beta entries strictly between t and b
        let height = beta.iter().filter(|&&c| c > t && c < b).count();
        let mut next = beta.clone();
        next.remove(i);
        let pos = next.binary_search(&t).unwrap_err();
        next.insert(pos, t);
        let sub = mn_rec(&mut next, parts, idx + 1, memo);
        if height % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// z_mu = prod l^(m_l) m_l!; the class size is n!/z_mu.
fn z_of(mu: &CycleType) -> Int {
    let mut by_len: HashMap<usize, u32> = HashMap::new();
    for &p in mu.parts() {
        *by_len.entry(p).or_insert(0) += 1;
    }
    let mut z = BigInt::one();
    for (len, mult) in by_len {
        for _ in 0..mult {
            z *= BigInt::from(len);
        }
        for k in 1..=mult as usize {
            z *= BigInt::from(k);
        }
    }
    z
}

/// Number of pairs (x, y) with x of type `type_a`, y of type `type_b`, and
/// xy equal to a fixed permutation of type `type_c`:
/// |C_A| |C_B| / n! * sum over irreducibles of chi(A) chi(B) chi(C) / dim.
pub fn structure_constant(
    type_a: &CycleType,
    type_b: &CycleType,
    type_c: &CycleType,
    n: usize,
) -> Result<Int> {
    if type_a.degree() != n || type_b.degree() != n || type_c.degree() != n {
        return Err(Error::Domain("cycle types must partition n".into()));
    }
    let nfact: Int = (1..=n).fold(BigInt::one(), |acc, k| acc * k);
    let mut sum = Rational::zero();
    for lambda in partitions(n) {
        let ca = mn_character(&lambda, type_a);
        if ca.is_zero() {
            continue;
        }
        let cb = mn_character(&lambda, type_b);
        if cb.is_zero() {
            continue;
        }
        let cc = mn_character(&lambda, type_c);
        if cc.is_zero() {
            continue;
        }
        let dim = dimension(&lambda);
        sum += Rational::new(ca * cb * cc, dim);
    }
    let class_a = Rational::new(nfact.clone(), z_of(type_a));
    let class_b = Rational::new(nfact.clone(), z_of(type_b));
    let total = class_a * class_b * sum / Rational::from_integer(nfact);
    if !total.denom().is_one() {
        return Err(Error::IdentityViolation(
            "structure constant came out non-integral".into(),
        ));
    }
    if total.numer().is_negative() {
        return Err(Error::IdentityViolation(
            "structure constant came out negative".into(),
        ));
    }
    Ok(total.numer().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(10).len(), 42);
        assert_eq!(partitions(21).len(), 792);
    }

    #[test]
    fn dimensions_s5() {
        // hook length formula on the S_5 staircase
        assert_eq!(dimension(&[5]), BigInt::from(1));
        assert_eq!(dimension(&[4, 1]), BigInt::from(4));
        assert_eq!(dimension(&[3, 2]), BigInt::from(5));
        assert_eq!(dimension(&[3, 1, 1]), BigInt::from(6));
        assert_eq!(dimension(&[1, 1, 1, 1, 1]), BigInt::from(1));
    }

    #[test]
    fn characters_match_dimension_on_identity() {
        for n in [4usize, 6] {
            let id = CycleType::new(vec![1; n]);
            for lambda in partitions(n) {
                assert_eq!(mn_character(&lambda, &id), dimension(&lambda));
            }
        }
    }

    #[test]
    fn sign_character() {
        // the alternating representation evaluates to the parity
        for n in [5usize, 7] {
            let lambda = vec![1; n];
            for parts in [vec![n], vec![2; 1]] {
                let mut t = parts.clone();
                let used: usize = t.iter().sum();
                t.extend(std::iter::repeat(1).take(n - used));
                let ct = CycleType::new(t);
                let perm = ct.canonical_perm();
                let expect = if perm.parity_even() { 1 } else { -1 };
                assert_eq!(mn_character(&lambda, &ct), BigInt::from(expect));
            }
        }
    }

    /// brute-force pair count over small symmetric groups
    fn brute_structure(a: &CycleType, b: &CycleType, c: &CycleType, n: usize) -> u64 {
        fn all_perms(n: usize) -> Vec<Perm> {
            let mut out = Vec::new();
            let mut idx: Vec<usize> = (0..n).collect();
            permute(&mut idx, 0, &mut out);
            out
        }
        fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
            if k == v.len() {
                out.push(Perm::from_images(v.clone()).unwrap());
                return;
            }
            for i in k..v.len() {
                v.swap(k, i);
                permute(v, k + 1, out);
                v.swap(k, i);
            }
        }
        let target = c.canonical_perm();
        let perms = all_perms(n);
        let mut count = 0;
        for x in &perms {
            if x.cycle_type() != *a {
                continue;
            }
            for y in &perms {
                if y.cycle_type() != *b {
                    continue;
                }
                if x.compose(y) == target {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn structure_constants_match_brute_force() {
        // a fixed 3-cycle as a product of two transpositions in S_3: 3 ways
        let t3 = CycleType::new(vec![3]);
        let t2 = CycleType::new(vec![2, 1]);
        assert_eq!(structure_constant(&t2, &t2, &t3, 3).unwrap(), BigInt::from(3));
        assert_eq!(brute_structure(&t2, &t2, &t3, 3), 3);

        // a fixed 4-cycle as a product of two transpositions in S_4
        let c4 = CycleType::new(vec![4]);
        let tr = CycleType::new(vec![2, 1, 1]);
        let brute = brute_structure(&tr, &tr, &c4, 4);
        assert_eq!(
            structure_constant(&tr, &tr, &c4, 4).unwrap(),
            BigInt::from(brute)
        );

        // a mixed case in S_5
        let a = CycleType::new(vec![2, 2, 1]);
        let b = CycleType::new(vec![3, 1, 1]);
        let c = CycleType::new(vec![5]);
        assert_eq!(
            structure_constant(&a, &b, &c, 5).unwrap(),
            BigInt::from(brute_structure(&a, &b, &c, 5))
        );
    }
}
