//! Sparse multivariate polynomial tables.
//!
//! Every large hardcoded polynomial (the classical invariants, the locus
//! equation, the level-3 modular polynomial and its factors) lives in a
//! `data/` text file, one term per line as `e0 e1 ... ek : p/q`, and is
//! parsed into this table form. Keeping the sources as plain text makes the
//! stored coefficients diffable against the reconstruction routines.

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};
use num::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPolyTable {
    arity: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Minimal commutative-ring interface for evaluating tables over scalars or
/// quadratic-ring elements. `zero_like`/`one_like` take parameters from the
/// receiver so quotient-ring constants carry the right modulus.
pub trait CoeffRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn scale_rat(&self, r: &Rational) -> Self;
}

impl CoeffRing for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        num::One::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_rat(&self, r: &Rational) -> Self {
        self * r
    }
}

impl MultiPolyTable {
    pub fn new(arity: usize) -> Self {
        MultiPolyTable {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, exps: Vec<u32>, coeff: Rational) {
        assert_eq!(exps.len(), self.arity, "exponent vector arity mismatch");
        if coeff.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, coeff);
        }
    }

    pub fn add_to(&mut self, exps: Vec<u32>, coeff: &Rational) {
        assert_eq!(exps.len(), self.arity);
        let entry = self.terms.entry(exps.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Parse the one-term-per-line text form. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table: Option<MultiPolyTable> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (exp_s, coeff_s) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: missing `:`", lineno + 1)))?;
            let exps: Vec<u32> = exp_s
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("line {}: bad exponent `{t}`", lineno + 1)))
                })
                .collect::<Result<_>>()?;
            let coeff = parse_rational(coeff_s)?;
            let t = table.get_or_insert_with(|| MultiPolyTable::new(exps.len()));
            if exps.len() != t.arity {
                return Err(Error::Parse(format!(
                    "line {}: arity {} != {}",
                    lineno + 1,
                    exps.len(),
                    t.arity
                )));
            }
            t.insert(exps, coeff);
        }
        table.ok_or_else(|| Error::Parse("empty polynomial table".into()))
    }

    /// Serialize back to the text form (sorted, no comments).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.terms {
            let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{} : {}\n", exps.join(" "), c));
        }
        out
    }

    pub fn eval(&self, args: &[Rational]) -> Rational {
        assert_eq!(args.len(), self.arity);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in args.iter().zip(e.iter()) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluate with arguments in an arbitrary coefficient ring.
    pub fn eval_in<R: CoeffRing>(&self, args: &[R]) -> R {
        assert_eq!(args.len(), self.arity);
        assert!(!args.is_empty());
        let mut acc = args[0].zero_like();
        for (e, c) in &self.terms {
            let mut t = args[0].one_like();
            for (x, &k) in args.iter().zip(e.iter()) {
                for _ in 0..k {
                    t = t.ring_mul(x);
                }
            }
            acc = acc.ring_add(&t.scale_rat(c));
        }
        acc
    }

    /// Exponent-wise diff: monomials whose coefficients differ, with both values.
    pub fn diff(&self, other: &MultiPolyTable) -> Vec<(Vec<u32>, Rational, Rational)> {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let a = self.coeff(k);
                let b = other.coeff(k);
                if a != b {
                    Some((k.clone(), a, b))
                } else {
                    None
                }
            })
            .collect()
    }
}
