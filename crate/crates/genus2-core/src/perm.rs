//! Permutations of {1..n} in one-line notation, stored 0-based.
//!
//! Composition convention: `a.compose(&b)` applies `a` first, then `b`, so
//! products read left to right like words, and `x.conj(&c)` is the word
//! c^-1 x c.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            img: (0..n as u8).collect(),
        }
    }

    /// One-line notation over 0..n-1.
    pub fn from_images(img: Vec<usize>) -> Result<Self> {
        let n = img.len();
        if n > u8::MAX as usize {
            return Err(Error::Domain("permutation degree too large".into()));
        }
        let mut seen = vec![false; n];
        for &x in &img {
            if x >= n || seen[x] {
                return Err(Error::Domain("not a permutation".into()));
            }
            seen[x] = true;
        }
        Ok(Perm {
            img: img.into_iter().map(|x| x as u8).collect(),
        })
    }

    /// One-line notation over 1..n, as used in text I/O.
    pub fn parse(s: &str) -> Result<Self> {
        let img: Vec<usize> = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .and_then(|x| x.checked_sub(1))
                    .ok_or_else(|| Error::Parse(format!("bad point `{t}`")))
            })
            .collect::<Result<_>>()?;
        Self::from_images(img)
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x >= n {
                    return Err(Error::Domain("cycle point out of range".into()));
                }
                img[x] = cyc[(i + 1) % cyc.len()];
            }
        }
        Self::from_images(img)
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n(), other.n());
        Perm {
            img: self.img.iter().map(|&x| other.img[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u8; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u8;
        }
        Perm { img }
    }

    /// The word c^-1 self c.
    pub fn conj(&self, c: &Perm) -> Perm {
        let mut img = vec![0u8; self.img.len()];
        for x in 0..self.img.len() {
            img[c.img[x] as usize] = c.img[self.img[x] as usize];
        }
        Perm { img }
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut acc = Perm::identity(self.n());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    pub fn fixed_points(&self) -> usize {
        self.img
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x as usize)
            .count()
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.img.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.img[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(|c| c.len()).collect())
    }

    /// n minus the number of orbits (including fixed points).
    pub fn index(&self) -> usize {
        self.n() - self.cycles().len()
    }

    /// true if even.
    pub fn parity_even(&self) -> bool {
        self.index() % 2 == 0
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> String {
        self.img
            .iter()
            .map(|&x| (x as usize + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_line())
    }
}

/// Multiset of cycle lengths, stored descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        assert!(parts.iter().all(|&p| p >= 1));
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn count_of(&self, len: usize) -> usize {
        self.0.iter().filter(|&&p| p == len).count()
    }

    /// A canonical representative: cycles of decreasing length laid out on
    /// consecutive points.
    pub fn canonical_perm(&self) -> Perm {
        let n = self.degree();
        let mut cycles = Vec::new();
        let mut start = 0;
        for &len in &self.0 {
            cycles.push((start..start + len).collect::<Vec<_>>());
            start += len;
        }
        Perm::from_cycles(n, &cycles).unwrap()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Whether the group generated acts transitively on 0..n-1.
pub fn is_transitive(gens: &[Perm], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// Generators of the centralizer of `p` in the symmetric group: one rotation
/// per nontrivial cycle and one swap per adjacent pair of equal-length cycles.
pub fn centralizer_gens(p: &Perm) -> Vec<Perm> {
    let n = p.n();
    let mut cycles = p.cycles();
    cycles.sort_by_key(|c| (c.len(), c[0]));
    let mut gens = Vec::new();
    for c in &cycles {
        if c.len() > 1 {
            gens.push(Perm::from_cycles(n, std::slice::from_ref(c)).unwrap());
        }
    }
    for w in cycles.windows(2) {
        if w[0].len() == w[1].len() {
            let mut img: Vec<usize> = (0..n).collect();
            for (&a, &b) in w[0].iter().zip(w[1].iter()) {
                img[a] = b;
                img[b] = a;
            }
            gens.push(Perm::from_images(img).unwrap());
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_examples() {
        assert_eq!(Perm::identity(7).index(), 0);
        let c7 = Perm::from_cycles(7, &[(0..7).collect::<Vec<_>>()]).unwrap();
        assert_eq!(c7.index(), 6);
        let inv = Perm::from_cycles(7, &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(inv.index(), 3);
    }

    #[test]
    fn word_convention() {
        // (0 1) then (1 2): 0 -> 1 -> 2
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        assert_eq!(a.compose(&b).apply(0), 2);
        // conjugation relabels: (0 1)^c with c = (0 2) is (2 1)
        let c = Perm::from_cycles(3, &[vec![0, 2]]).unwrap();
        let conj = a.conj(&c);
        assert_eq!(conj, Perm::from_cycles(3, &[vec![2, 1]]).unwrap());
    }

    #[test]
    fn inverse_and_parity() {
        let p = Perm::parse("3 1 2 5 4").unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.cycle_type(), CycleType::new(vec![3, 2]));
        assert!(!p.parity_even()); // 3-cycle even, transposition odd
    }

    #[test]
    fn centralizer_gens_commute() {
        let p = CycleType::new(vec![6, 3, 3, 2, 1]).canonical_perm();
        for g in centralizer_gens(&p) {
            assert_eq!(p.compose(&g), g.compose(&p));
        }
    }

    #[test]
    fn transitivity() {
        let cyc = Perm::from_cycles(5, &[(0..5).collect::<Vec<_>>()]).unwrap();
        assert!(is_transitive(&[cyc], 5));
        let two = Perm::from_cycles(5, &[vec![0, 1]]).unwrap();
        assert!(!is_transitive(&[two], 5));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Perm::parse("1 1 2").is_err());
        assert!(Perm::parse("0 1").is_err());
        assert!(Perm::parse("2 x").is_err());
    }
}
