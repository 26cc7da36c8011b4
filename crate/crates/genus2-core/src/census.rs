//! Exhaustive census of case-1 branch-tuple classes.
//!
//! s1 is pinned to a canonical involution with one fixed point; (s2, s3, s5)
//! run over their classes with s4 forced by the product relation, and class
//! counting is orbit counting under the centralizer of s1. The labeled
//! self-check total = count * |Cent(s1)| certifies that every class meets
//! the fiber in full orbits (equivalently, the count of labeled tuples with
//! all five components free is count * n!).

use crate::error::Result;
use crate::perm::{centralizer_gens, is_transitive, CycleType, Perm};
use crate::stabchain::{generation_test, GenerationResult};
use crate::tuples::{is_symmetric, BranchTuple, CaseId};
use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct CensusOutcome {
    pub n: usize,
    pub class_count: usize,
    pub an_classes: usize,
    /// valid (s2, s3, s5) completions with s1 fixed
    pub labeled_with_s1_fixed: u64,
    pub centralizer_order: u64,
    /// labeled_with_s1_fixed == class_count * centralizer_order
    pub self_check: bool,
    pub symmetric_classes: usize,
    pub elapsed_ms: u128,
    pub class_reps: Vec<BranchTuple>,
}

/// All involutions of S_n with exactly one fixed point.
pub fn involutions_one_fixed_point(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut img: Vec<usize> = (0..n).collect();
    for f in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&x| x != f).collect();
        matchings(&rest, &mut img, &mut out);
    }
    out
}

fn matchings(rem: &[usize], img: &mut Vec<usize>, out: &mut Vec<Perm>) {
    if rem.is_empty() {
        out.push(Perm::from_images(img.clone()).unwrap());
        return;
    }
    let a = rem[0];
    for i in 1..rem.len() {
        let b = rem[i];
        img[a] = b;
        img[b] = a;
        let next: Vec<usize> = rem[1..]
            .iter()
            .copied()
            .filter(|&x| x != b)
            .collect();
        matchings(&next, img, out);
        img[a] = a;
        img[b] = b;
    }
}

/// order of the centralizer of a permutation of the given cycle type
fn centralizer_order(t: &CycleType) -> u64 {
    let mut by_len: HashMap<usize, u64> = HashMap::new();
    for &p in t.parts() {
        *by_len.entry(p).or_insert(0) += 1;
    }
    by_len
        .into_iter()
        .map(|(len, mult)| {
            let rot = (len as u64).pow(mult as u32);
            let fact: u64 = (1..=mult).product();
            rot * fact
        })
        .product()
}

/// Number of classes of valid case-1 tuples for odd n, by exhaustive
/// enumeration. Feasible at desk scale for n <= 9; larger n is best-effort.
pub fn count_case1_tuple_classes(n: usize, workers: usize) -> Result<CensusOutcome> {
    let start = Instant::now();
    if n % 2 == 0 || n < 7 {
        return Err(crate::error::Error::Domain(format!(
            "n must be odd and >= 7, got {n}"
        )));
    }
    let m = (n - 1) / 2;
    let s1_type = CycleType::new({
        let mut v = vec![2; m];
        v.push(1);
        v
    });
    let s4_type = CycleType::new({
        let mut v = vec![2; (n - 3) / 2];
        v.extend([1, 1, 1]);
        v
    });
    let s1 = s1_type.canonical_perm();
    let invs = involutions_one_fixed_point(n);
    let transpositions: Vec<Perm> = {
        let mut v = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                v.push(Perm::from_cycles(n, &[vec![a, b]]).unwrap());
            }
        }
        v
    };
    // parity(s3 s4) is determined by the two cycle types
    let w_needs_even = (m + (n - 3) / 2) % 2 == 0;

    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<Vec<Vec<u8>>>();
    let workers = workers.max(1);

    let (valid, reps) = std::thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let next = &next;
            let invs = &invs;
            let transpositions = &transpositions;
            let s1 = &s1;
            let s4_type = &s4_type;
            let w_needs_even = w_needs_even;
            scope.spawn(move || {
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= invs.len() {
                        break;
                    }
                    let s2 = &invs[i];
                    let mut found = Vec::new();
                    let a = s2.inverse().compose(&s1.inverse());
                    for s5 in transpositions {
                        // w = s2^-1 s1^-1 s5^-1; need s3 s4 = w with the types
                        // of s3 and s4 fixing the parity of w
                        let w = a.compose(&s5.inverse());
                        if w.parity_even() != w_needs_even {
                            continue;
                        }
                        for s3 in invs {
                            let s4 = s3.compose(&w);
                            if s4.cycle_type() != *s4_type {
                                continue;
                            }
                            let gens = [s1.clone(), s2.clone(), s3.clone(), s4, s5.clone()];
                            if !is_transitive(&gens, n) {
                                continue;
                            }
                            if generation_test(&gens, n) == GenerationResult::Other {
                                continue;
                            }
                            let mut key = Vec::with_capacity(3 * n);
                            key.extend_from_slice(s2.images());
                            key.extend_from_slice(s3.images());
                            key.extend_from_slice(s5.images());
                            found.push(key);
                        }
                    }
                    if tx.send(found).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);

        // reducer: orbit closure of (s2, s3, s5) under the centralizer of s1
        let cgens = centralizer_gens(&s1);
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut reps: Vec<(Vec<u8>, u64)> = Vec::new();
        let mut valid = 0u64;
        for batch in rx {
            for key in batch {
                valid += 1;
                if seen.contains(&key) {
                    continue;
                }
                let mut members = vec![key.clone()];
                let mut stack = vec![key.clone()];
                let mut local: HashSet<Vec<u8>> = members.iter().cloned().collect();
                while let Some(x) = stack.pop() {
                    for g in &cgens {
                        let y = conj_triple(&x, g, n);
                        if local.insert(y.clone()) {
                            members.push(y.clone());
                            stack.push(y);
                        }
                    }
                }
                let mut rep = key;
                for mb in &members {
                    if *mb < rep {
                        rep = mb.clone();
                    }
                }
                let size = members.len() as u64;
                for mb in members {
                    seen.insert(mb);
                }
                reps.push((rep, size));
            }
        }
        (valid, reps)
    });

    let cent = centralizer_order(&s1_type);
    let self_check = reps.iter().all(|(_, s)| *s == cent) && valid == reps.len() as u64 * cent;

    let mut class_reps = Vec::new();
    let mut symmetric = 0usize;
    let mut an_classes = 0usize;
    for (rep, _) in &reps {
        let s2 = unpack(rep, 0, n);
        let s3 = unpack(rep, 1, n);
        let s5 = unpack(rep, 2, n);
        let prefix = s1.compose(&s2).compose(&s3);
        let s4 = prefix.inverse().compose(&s5.inverse());
        let tuple = BranchTuple::new(
            CaseId::Case1,
            vec![s1.clone(), s2, s3, s4, s5],
        )?;
        if is_symmetric(&tuple).is_some() {
            symmetric += 1;
        }
        if generation_test(&tuple.perms, n) == GenerationResult::AlternatingGroup {
            an_classes += 1;
        }
        class_reps.push(tuple);
    }
    class_reps.sort_by(|a, b| a.perms.cmp(&b.perms));

    Ok(CensusOutcome {
        n,
        class_count: reps.len(),
        an_classes,
        labeled_with_s1_fixed: valid,
        centralizer_order: cent,
        self_check,
        symmetric_classes: symmetric,
        elapsed_ms: start.elapsed().as_millis(),
        class_reps,
    })
}

fn unpack(key: &[u8], slot: usize, n: usize) -> Perm {
    Perm::from_images(key[slot * n..(slot + 1) * n].iter().map(|&x| x as usize).collect())
        .unwrap()
}

/// conjugate all three packed components by g
fn conj_triple(key: &[u8], g: &Perm, n: usize) -> Vec<u8> {
    let gi = g.images();
    let mut out = vec![0u8; key.len()];
    for slot in 0..3 {
        let src = &key[slot * n..(slot + 1) * n];
        let dst = &mut out[slot * n..(slot + 1) * n];
        for x in 0..n {
            dst[gi[x] as usize] = gi[src[x] as usize];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_counts() {
        // n * (n-2)!! fixed-point choices times matchings: 7 * 15, 9 * 105
        assert_eq!(involutions_one_fixed_point(7).len(), 105);
        assert_eq!(involutions_one_fixed_point(9).len(), 945);
    }

    #[test]
    fn census_n7() {
        let out = count_case1_tuple_classes(7, 2).unwrap();
        assert_eq!(out.class_count, 168);
        assert!(out.self_check);
        assert_eq!(out.centralizer_order, 48);
        assert_eq!(out.labeled_with_s1_fixed, 168 * 48);
        assert_eq!(out.an_classes, 0);
    }
}
