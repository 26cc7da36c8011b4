//! Counting classes of symmetric-tuple triples (sigma, tau, rho).
//!
//! tau is fixed in a canonical form; valid sigmas are enumerated (or
//! sampled) and classes are orbits of sigma under conjugation by the
//! centralizer of tau. The exhaustive enumerator walks perfect matchings of
//! the non-fixed points and prunes on the partial cycle structure of
//! rho = sigma tau^-1, which collapses the search space by many orders of
//! magnitude for the constrained rho types.
//!
//! Work is split into deterministic units (matching-prefix blocks, or sample
//! ranges in randomized mode) handed to worker threads; a single reducer
//! merges finds into orbits, so counts are identical for any worker count.

use crate::error::{Error, Result};
use crate::perm::{centralizer_gens, is_transitive, Perm};
use crate::stabchain::{generation_test, GenerationResult};
use crate::tuples::{triple_cycle_types, CaseId};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::mpsc;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Randomized { budget: u64 },
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub case: CaseId,
    pub n: usize,
    pub mode: SearchMode,
    pub workers: usize,
    pub seed: u64,
    pub checkpoint: Option<PathBuf>,
}

impl SearchConfig {
    pub fn exhaustive(case: CaseId, n: usize) -> Self {
        SearchConfig {
            case,
            n,
            mode: SearchMode::Exhaustive,
            workers: 1,
            seed: 0,
            checkpoint: None,
        }
    }

    pub fn randomized(case: CaseId, n: usize, budget: u64, seed: u64) -> Self {
        SearchConfig {
            case,
            n,
            mode: SearchMode::Randomized { budget },
            workers: 1,
            seed,
            checkpoint: None,
        }
    }
}

/// One sigma-orbit under the centralizer of tau.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub rep: Perm,
    pub size: u64,
    pub generates: GenerationResult,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub case: CaseId,
    pub n: usize,
    /// classes whose triples generate S_n or A_n
    pub count: usize,
    pub complete: bool,
    /// sizes of the generating orbits, descending
    pub orbit_sizes: Vec<u64>,
    pub sn_classes: usize,
    pub an_classes: usize,
    /// sigmas with the right rho cycle type, before any group-theoretic
    /// filter; in exhaustive mode this equals the class-algebra structure
    /// constant for the three types
    pub candidates: u64,
    /// orbits of candidates failing transitivity or generation
    pub rejected_classes: usize,
    pub elapsed_ms: u128,
    pub orbits: Vec<OrbitRecord>,
}

/// Checkpoint line: a closed range of work units and the sigmas found there.
#[derive(Debug, Serialize, Deserialize)]
pub struct CheckpointRecord {
    pub range_start: u64,
    pub range_end: u64,
    pub reps: Vec<String>,
}

/// The canonical tau: cycles of decreasing length on consecutive points.
pub fn canonical_tau(case: CaseId, n: usize) -> Result<Perm> {
    Ok(triple_cycle_types(case, n)?.tau.canonical_perm())
}

const SAMPLE_CHUNK: u64 = 1 << 16;

pub fn count_triple_classes(cfg: &SearchConfig) -> Result<SearchOutcome> {
    count_triple_classes_with_tau(cfg, &canonical_tau(cfg.case, cfg.n)?)
}

/// Same search with an explicit tau representative (used to check that the
/// count does not depend on the choice).
pub fn count_triple_classes_with_tau(cfg: &SearchConfig, tau: &Perm) -> Result<SearchOutcome> {
    let start = Instant::now();
    let n = cfg.n;
    let types = triple_cycle_types(cfg.case, n)?;
    if tau.cycle_type() != types.tau {
        return Err(Error::Domain("tau has the wrong cycle type".into()));
    }
    let units = match cfg.mode {
        SearchMode::Exhaustive => (n * (n - 2)) as u64,
        SearchMode::Randomized { budget } => budget.div_ceil(SAMPLE_CHUNK),
    };

    // resume: ranges already done, and the sigmas they found
    let mut done_units: HashSet<u64> = HashSet::new();
    let mut resumed: Vec<Vec<u8>> = Vec::new();
    if let Some(path) = &cfg.checkpoint {
        if path.exists() {
            let file = std::fs::File::open(path)?;
            for line in std::io::BufReader::new(file).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: CheckpointRecord = serde_json::from_str(&line)
                    .map_err(|e| Error::Parse(format!("bad checkpoint line: {e}")))?;
                for u in rec.range_start..=rec.range_end {
                    done_units.insert(u);
                }
                for s in rec.reps {
                    let p = Perm::parse(&s)?;
                    if p.n() != n {
                        return Err(Error::Parse("checkpoint degree mismatch".into()));
                    }
                    resumed.push(p.images().to_vec());
                }
            }
        }
    }

    let tau_inv: Vec<u8> = tau.inverse().images().to_vec();
    let next_unit = AtomicU64::new(0);
    let (tx, rx) = mpsc::channel::<(u64, Vec<Vec<u8>>)>();
    let workers = cfg.workers.max(1);

    let outcome = std::thread::scope(|scope| -> Result<SearchOutcome> {
        for _ in 0..workers {
            let tx = tx.clone();
            let tau_inv = &tau_inv;
            let done_units = &done_units;
            let next_unit = &next_unit;
            let types = &types;
            let mode = cfg.mode;
            let seed = cfg.seed;
            scope.spawn(move || loop {
                let unit = next_unit.fetch_add(1, Ordering::Relaxed);
                if unit >= units {
                    break;
                }
                if done_units.contains(&unit) {
                    continue;
                }
                let found = match mode {
                    SearchMode::Exhaustive => run_block(n, unit, tau_inv, &types.rho),
                    SearchMode::Randomized { budget } => {
                        run_sample_chunk(n, unit, budget, seed, tau_inv, &types.rho)
                    }
                };
                if tx.send((unit, found)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut ckpt_file = match &cfg.checkpoint {
            Some(path) => Some(std::fs::OpenOptions::new().create(true).append(true).open(path)?),
            None => None,
        };

        let mut reducer = OrbitReducer::new(tau);
        let mut candidates = 0u64;
        for sigma in resumed {
            candidates += 1;
            reducer.feed(sigma);
        }
        for (unit, found) in rx {
            if let Some(f) = ckpt_file.as_mut() {
                let rec = CheckpointRecord {
                    range_start: unit,
                    range_end: unit,
                    reps: found
                        .iter()
                        .map(|img| {
                            img.iter()
                                .map(|&x| (x as usize + 1).to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .collect(),
                };
                writeln!(f, "{}", serde_json::to_string(&rec).unwrap())?;
            }
            for sigma in found {
                candidates += 1;
                reducer.feed(sigma);
            }
        }

        let mut orbits = reducer.finish(n);
        orbits.sort_by(|a, b| a.rep.cmp(&b.rep));
        let generating: Vec<&OrbitRecord> = orbits
            .iter()
            .filter(|o| o.generates != GenerationResult::Other)
            .collect();
        let mut orbit_sizes: Vec<u64> = generating.iter().map(|o| o.size).collect();
        orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SearchOutcome {
            case: cfg.case,
            n,
            count: generating.len(),
            complete: matches!(cfg.mode, SearchMode::Exhaustive),
            orbit_sizes,
            sn_classes: generating
                .iter()
                .filter(|o| o.generates == GenerationResult::SymmetricGroup)
                .count(),
            an_classes: generating
                .iter()
                .filter(|o| o.generates == GenerationResult::AlternatingGroup)
                .count(),
            candidates,
            rejected_classes: orbits.len() - generating.len(),
            elapsed_ms: start.elapsed().as_millis(),
            orbits,
        })
    })?;
    Ok(outcome)
}

/// Merges found sigmas into centralizer orbits; the generation test runs once
/// per orbit on its representative (both transitivity and generation are
/// conjugation-invariant).
struct OrbitReducer {
    tau: Perm,
    cgens: Vec<Perm>,
    seen: HashMap<Vec<u8>, usize>,
    orbits: Vec<(Vec<u8>, u64)>,
}

impl OrbitReducer {
    fn new(tau: &Perm) -> Self {
        OrbitReducer {
            tau: tau.clone(),
            cgens: centralizer_gens(tau),
            seen: HashMap::new(),
            orbits: Vec::new(),
        }
    }

    fn feed(&mut self, sigma: Vec<u8>) {
        if self.seen.contains_key(&sigma) {
            return;
        }
        // close the orbit under conjugation by the centralizer generators
        let idx = self.orbits.len();
        let mut members = vec![sigma.clone()];
        let mut stack = vec![sigma.clone()];
        let mut local: HashSet<Vec<u8>> = members.iter().cloned().collect();
        while let Some(x) = stack.pop() {
            for g in &self.cgens {
                let y = conj_images(&x, g);
                if local.insert(y.clone()) {
                    members.push(y.clone());
                    stack.push(y);
                }
            }
        }
        let mut rep = sigma;
        for m in &members {
            if *m < rep {
                rep = m.clone();
            }
        }
        let size = members.len() as u64;
        for m in members {
            self.seen.insert(m, idx);
        }
        self.orbits.push((rep, size));
    }

    fn finish(self, n: usize) -> Vec<OrbitRecord> {
        let tau = self.tau;
        self.orbits
            .into_iter()
            .map(|(rep, size)| {
                let sigma = Perm::from_images(rep.iter().map(|&x| x as usize).collect()).unwrap();
                let gens = [sigma.clone(), tau.clone()];
                let generates = if !is_transitive(&gens, n) {
                    GenerationResult::Other
                } else {
                    generation_test(&gens, n)
                };
                OrbitRecord {
                    rep: sigma,
                    size,
                    generates,
                }
            })
            .collect()
    }
}

/// sigma^g as raw image arrays: (g^-1 sigma g)(x) = g(sigma(g^-1(x))).
fn conj_images(sigma: &[u8], g: &Perm) -> Vec<u8> {
    let gi = g.images();
    let mut out = vec![0u8; sigma.len()];
    for x in 0..sigma.len() {
        out[gi[x] as usize] = gi[sigma[x] as usize];
    }
    out
}

// ---------------------------------------------------------------------------
// exhaustive enumeration
// ---------------------------------------------------------------------------

/// Partial-rho bookkeeping for the matching backtracker.
///
/// rho = sigma tau^-1 grows one edge per assigned sigma value; open paths are
/// tracked by their endpoints, closed cycles are checked off against the
/// required multiset, and any path longer than the longest still-needed cycle
/// kills the branch.
struct RhoTracker {
    /// image/preimage assigned flags via path structure
    has_img: Vec<bool>,
    has_pre: Vec<bool>,
    /// valid at current path endpoints: the opposite endpoint and node count
    other_end: Vec<u8>,
    path_len: Vec<u32>,
    /// needed[l] = cycles of length l still required
    needed: Vec<u32>,
    max_needed: usize,
}

enum Change {
    Merged { u: u8, w: u8, ha: u8, tb: u8, la: u32, lb: u32 },
    Closed { u: u8, w: u8, len: u32 },
}

impl RhoTracker {
    fn new(n: usize, rho_type: &crate::perm::CycleType) -> Self {
        let mut needed = vec![0u32; n + 1];
        for &p in rho_type.parts() {
            needed[p] += 1;
        }
        let max_needed = rho_type.parts().iter().copied().max().unwrap_or(0);
        RhoTracker {
            has_img: vec![false; n],
            has_pre: vec![false; n],
            other_end: (0..n as u8).collect(),
            path_len: vec![1; n],
            needed,
            max_needed,
        }
    }

    fn refresh_max(&mut self) {
        while self.max_needed > 0 && self.needed[self.max_needed] == 0 {
            self.max_needed -= 1;
        }
    }

    /// Add the rho edge u -> w; returns the undo record, or None when pruned.
    fn add_edge(&mut self, u: u8, w: u8) -> Option<Change> {
        debug_assert!(!self.has_img[u as usize] && !self.has_pre[w as usize]);
        if self.other_end[u as usize] == w {
            // closes the path into a cycle
            let len = self.path_len[u as usize];
            if (len as usize) > self.max_needed || self.needed[len as usize] == 0 {
                return None;
            }
            self.needed[len as usize] -= 1;
            self.has_img[u as usize] = true;
            self.has_pre[w as usize] = true;
            self.refresh_max();
            Some(Change::Closed { u, w, len })
        } else {
            let ha = self.other_end[u as usize]; // head of u's path
            let tb = self.other_end[w as usize]; // tail of w's path
            let la = self.path_len[u as usize];
            let lb = self.path_len[w as usize];
            let merged = la + lb;
            if merged as usize > self.max_needed {
                return None;
            }
            self.has_img[u as usize] = true;
            self.has_pre[w as usize] = true;
            self.other_end[ha as usize] = tb;
            self.other_end[tb as usize] = ha;
            self.path_len[ha as usize] = merged;
            self.path_len[tb as usize] = merged;
            Some(Change::Merged { u, w, ha, tb, la, lb })
        }
    }

    fn undo(&mut self, ch: Change) {
        match ch {
            Change::Closed { u, w, len } => {
                self.needed[len as usize] += 1;
                if (len as usize) > self.max_needed {
                    self.max_needed = len as usize;
                }
                self.has_img[u as usize] = false;
                self.has_pre[w as usize] = false;
            }
            Change::Merged { u, w, ha, tb, la, lb } => {
                self.has_img[u as usize] = false;
                self.has_pre[w as usize] = false;
                self.other_end[ha as usize] = u;
                self.other_end[u as usize] = ha;
                self.other_end[tb as usize] = w;
                self.other_end[w as usize] = tb;
                self.path_len[ha as usize] = la;
                self.path_len[u as usize] = la;
                self.path_len[tb as usize] = lb;
                self.path_len[w as usize] = lb;
            }
        }
    }
}

struct Enumerator<'a> {
    n: usize,
    tau_inv: &'a [u8],
    sigma: Vec<u8>,
    assigned: Vec<bool>,
    tracker: RhoTracker,
    out: Vec<Vec<u8>>,
}

impl<'a> Enumerator<'a> {
    /// Pair a with b in sigma, adding both rho edges. Returns undo data.
    fn pair(&mut self, a: u8, b: u8) -> Option<(Change, Option<Change>)> {
        let w1 = self.tau_inv[b as usize];
        let c1 = self.tracker.add_edge(a, w1)?;
        if a == b {
            return Some((c1, None));
        }
        let w2 = self.tau_inv[a as usize];
        match self.tracker.add_edge(b, w2) {
            Some(c2) => Some((c1, Some(c2))),
            None => {
                self.tracker.undo(c1);
                None
            }
        }
    }

    fn unpair(&mut self, ch: (Change, Option<Change>)) {
        if let Some(c2) = ch.1 {
            self.tracker.undo(c2);
        }
        self.tracker.undo(ch.0);
    }

    fn recurse(&mut self) {
        let Some(a) = (0..self.n).find(|&x| !self.assigned[x]) else {
            self.out.push(self.sigma.clone());
            return;
        };
        let a = a as u8;
        self.assigned[a as usize] = true;
        for b in (a as usize + 1)..self.n {
            if self.assigned[b] {
                continue;
            }
            let b = b as u8;
            self.sigma[a as usize] = b;
            self.sigma[b as usize] = a;
            self.assigned[b as usize] = true;
            if let Some(ch) = self.pair(a, b) {
                self.recurse();
                self.unpair(ch);
            }
            self.assigned[b as usize] = false;
        }
        self.assigned[a as usize] = false;
    }
}

/// Run one (fixed point, first partner) block of the exhaustive enumeration.
fn run_block(n: usize, unit: u64, tau_inv: &[u8], rho_type: &crate::perm::CycleType) -> Vec<Vec<u8>> {
    let f = (unit / (n as u64 - 2)) as usize;
    let k = (unit % (n as u64 - 2)) as usize;
    let a0 = if f == 0 { 1 } else { 0 };
    // k-th choice among points other than f and a0
    let b0 = (0..n).filter(|&x| x != f && x != a0).nth(k).unwrap();
    let mut en = Enumerator {
        n,
        tau_inv,
        sigma: (0..n as u8).collect(),
        assigned: vec![false; n],
        tracker: RhoTracker::new(n, rho_type),
        out: Vec::new(),
    };
    // fixed point contributes the edge f -> tau^-1(f)
    en.assigned[f] = true;
    let Some(cf) = en.pair(f as u8, f as u8) else {
        return vec![];
    };
    // first pairing (a0, b0)
    en.sigma[a0] = b0 as u8;
    en.sigma[b0] = a0 as u8;
    en.assigned[a0] = true;
    en.assigned[b0] = true;
    if let Some(ch) = en.pair(a0 as u8, b0 as u8) {
        en.recurse();
        en.unpair(ch);
    }
    en.unpair(cf);
    en.out
}

// ---------------------------------------------------------------------------
// randomized sampling
// ---------------------------------------------------------------------------

/// Process sample indices [unit * CHUNK, min((unit+1) * CHUNK, budget)).
/// Each sample is derived from (seed, index) alone, so the sampled set does
/// not depend on the worker layout.
fn run_sample_chunk(
    n: usize,
    unit: u64,
    budget: u64,
    seed: u64,
    tau_inv: &[u8],
    rho_type: &crate::perm::CycleType,
) -> Vec<Vec<u8>> {
    let lo = unit * SAMPLE_CHUNK;
    let hi = ((unit + 1) * SAMPLE_CHUNK).min(budget);
    let mut out = Vec::new();
    let mut sigma = vec![0u8; n];
    let mut rho = vec![0u8; n];
    let mut pool: Vec<u8> = Vec::with_capacity(n);
    let mut needed = vec![0i32; n + 1];
    for i in lo..hi {
        let mut rng =
            rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let f = rng.gen_range(0..n) as u8;
        sigma[f as usize] = f;
        pool.clear();
        pool.extend((0..n as u8).filter(|&x| x != f));
        // uniform perfect matching: repeatedly pair the first element with a
        // uniformly random other one
        while !pool.is_empty() {
            let a = pool[0];
            let j = rng.gen_range(1..pool.len());
            let b = pool[j];
            sigma[a as usize] = b;
            sigma[b as usize] = a;
            pool.swap_remove(j);
            pool.swap_remove(0);
        }
        // rho = sigma tau^-1: rho(x) = tau^-1(sigma(x))
        for x in 0..n {
            rho[x] = tau_inv[sigma[x] as usize];
        }
        if cycle_type_matches(&rho, rho_type, &mut needed) {
            out.push(sigma.clone());
        }
    }
    out
}

fn cycle_type_matches(p: &[u8], t: &crate::perm::CycleType, scratch: &mut [i32]) -> bool {
    for &part in t.parts() {
        scratch[part] += 1;
    }
    let mut seen = 0u32;
    let mut mask = vec![false; p.len()];
    let mut ok = true;
    for start in 0..p.len() {
        if mask[start] {
            continue;
        }
        let mut len = 0usize;
        let mut x = start;
        while !mask[x] {
            mask[x] = true;
            len += 1;
            x = p[x] as usize;
        }
        seen += 1;
        let _ = seen;
        if len >= scratch.len() || scratch[len] == 0 {
            ok = false;
            // keep consuming to reset scratch correctly afterwards
            scratch[len.min(scratch.len() - 1)] -= 1;
        } else {
            scratch[len] -= 1;
        }
    }
    // reset scratch to zero
    for v in scratch.iter_mut() {
        *v = 0;
    }
    ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exhaustive(case: CaseId, n: usize) -> SearchOutcome {
        count_triple_classes(&SearchConfig::exhaustive(case, n)).unwrap()
    }

    #[test]
    fn small_table_cells() {
        assert_eq!(exhaustive(CaseId::Case2, 7).count, 1);
        assert_eq!(exhaustive(CaseId::Case4, 7).count, 2);
        assert_eq!(exhaustive(CaseId::Case1, 9).count, 3);
        assert_eq!(exhaustive(CaseId::Case2, 9).count, 0);
        assert_eq!(exhaustive(CaseId::Case5, 9).count, 3);
    }

    #[test]
    fn congruence_excluded_cells_error() {
        assert!(matches!(
            count_triple_classes(&SearchConfig::exhaustive(CaseId::Case1, 7)),
            Err(Error::CongruenceExcluded { case: 1, n: 7 })
        ));
    }

    #[test]
    fn worker_count_does_not_change_the_answer() {
        let mut one = SearchConfig::exhaustive(CaseId::Case4, 7);
        one.workers = 1;
        let mut three = SearchConfig::exhaustive(CaseId::Case4, 7);
        three.workers = 3;
        let a = count_triple_classes(&one).unwrap();
        let b = count_triple_classes(&three).unwrap();
        assert_eq!(a.count, b.count);
        assert_eq!(a.orbit_sizes, b.orbit_sizes);
        assert_eq!(a.candidates, b.candidates);
    }

    #[test]
    fn independent_of_tau_representative() {
        let cfg = SearchConfig::exhaustive(CaseId::Case1, 9);
        let base = count_triple_classes(&cfg).unwrap();
        // another tau of the same type: relabel by an arbitrary permutation
        let tau = canonical_tau(CaseId::Case1, 9).unwrap();
        let relabel = Perm::parse("3 7 1 9 5 2 8 6 4").unwrap();
        let tau2 = tau.conj(&relabel);
        let alt = count_triple_classes_with_tau(&cfg, &tau2).unwrap();
        assert_eq!(base.count, alt.count);
        let mut a = base.orbit_sizes.clone();
        let mut b = alt.orbit_sizes.clone();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn randomized_finds_classes_at_small_n() {
        let cfg = SearchConfig::randomized(CaseId::Case1, 9, 40_000, 7);
        let out = count_triple_classes(&cfg).unwrap();
        assert!(!out.complete);
        assert_eq!(out.count, 3);
    }

    #[test]
    fn checkpoint_resume_reproduces_count() {
        let dir = std::env::temp_dir().join(format!("g2ckpt-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let mut cfg = SearchConfig::exhaustive(CaseId::Case4, 7);
        cfg.checkpoint = Some(dir.clone());
        let first = count_triple_classes(&cfg).unwrap();
        // resume from the complete checkpoint: all units skipped, same answer
        let second = count_triple_classes(&cfg).unwrap();
        assert_eq!(first.count, second.count);
        assert_eq!(first.candidates, second.candidates);
        // partial checkpoint: keep only half the lines
        let text = std::fs::read_to_string(&dir).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        let half: String = lines[..lines.len() / 2].join("\n") + "\n";
        std::fs::write(&dir, half).unwrap();
        let third = count_triple_classes(&cfg).unwrap();
        assert_eq!(first.count, third.count);
        assert_eq!(first.candidates, third.candidates);
        let _ = std::fs::remove_file(&dir);
    }
}
