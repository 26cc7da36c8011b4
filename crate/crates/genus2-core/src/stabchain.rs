//! Group order via a Schreier-Sims stabilizer chain, sized for degrees <= 21.

use crate::perm::Perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerationResult {
    SymmetricGroup,
    AlternatingGroup,
    Other,
}

struct Level {
    point: usize,
    gens: Vec<Perm>,
    /// transversal[x] maps `point` to x
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(point: usize, n: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[point] = Some(Perm::identity(n));
        Level {
            point,
            gens: Vec::new(),
            transversal,
        }
    }

    fn recompute_orbit(&mut self) {
        let n = self.transversal.len();
        let mut transversal = vec![None; n];
        transversal[self.point] = Some(Perm::identity(n));
        let mut queue = vec![self.point];
        while let Some(x) = queue.pop() {
            let tx = transversal[x].clone().unwrap();
            for g in &self.gens {
                let y = g.apply(x);
                if transversal[y].is_none() {
                    transversal[y] = Some(tx.compose(g));
                    queue.push(y);
                }
            }
        }
        self.transversal = transversal;
    }
}

pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(gens: &[Perm], n: usize) -> Self {
        let mut chain = StabChain { n, levels: Vec::new() };
        for g in gens {
            chain.extend(0, g.clone());
        }
        chain
    }

    /// Sift g through levels starting at `depth`; returns the residue and the
    /// level where sifting stopped.
    fn sift(&self, depth: usize, mut g: Perm) -> (usize, Perm) {
        let mut level = depth;
        while level < self.levels.len() {
            if g.is_identity() {
                return (level, g);
            }
            let lv = &self.levels[level];
            let x = g.apply(lv.point);
            match &lv.transversal[x] {
                None => return (level, g),
                Some(t) => {
                    g = g.compose(&t.inverse());
                    level += 1;
                }
            }
        }
        (level, g)
    }

    /// Add g to the group at `depth` if it is not already a member, then
    /// restore Schreier closure at that level. Sifting serves only as the
    /// membership test; the residue (an equivalent generator modulo current
    /// transversals) always joins the generator set at `depth` itself.
    fn extend(&mut self, depth: usize, g: Perm) {
        if g.is_identity() {
            return;
        }
        let (_, residue) = self.sift(depth, g);
        if residue.is_identity() {
            return;
        }
        if depth == self.levels.len() {
            // new level at the first point moved by the residue
            let point = (0..self.n)
                .find(|&x| residue.apply(x) != x)
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(point, self.n));
        }
        self.levels[depth].gens.push(residue);
        self.levels[depth].recompute_orbit();
        // Schreier generators of this level generate the next stabilizer
        let (orbit, gens): (Vec<usize>, Vec<Perm>) = {
            let lv = &self.levels[depth];
            (
                (0..self.n).filter(|&x| lv.transversal[x].is_some()).collect(),
                lv.gens.clone(),
            )
        };
        for x in orbit {
            let tx = self.levels[depth].transversal[x].clone().unwrap();
            for g in &gens {
                let y = g.apply(x);
                let ty = self.levels[depth].transversal[y].clone().unwrap();
                let schreier = tx.compose(g).compose(&ty.inverse());
                self.extend(depth + 1, schreier);
            }
        }
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|lv| lv.transversal.iter().flatten().count() as u128)
            .product()
    }
}

pub fn group_order(gens: &[Perm], n: usize) -> u128 {
    StabChain::new(gens, n).order()
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Does the generated group equal S_n, A_n, or something smaller?
/// Parity of the generators decides between the first two cheaply.
pub fn generation_test(gens: &[Perm], n: usize) -> GenerationResult {
    if gens.is_empty() {
        return GenerationResult::Other;
    }
    let all_even = gens.iter().all(|g| g.parity_even());
    let order = group_order(gens, n);
    let full = factorial(n);
    if !all_even && order == full {
        GenerationResult::SymmetricGroup
    } else if all_even && order * 2 == full {
        GenerationResult::AlternatingGroup
    } else {
        GenerationResult::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use std::collections::HashSet;

    fn bfs_order(gens: &[Perm], n: usize) -> u128 {
        let mut seen = HashSet::new();
        seen.insert(Perm::identity(n));
        let mut stack: Vec<Perm> = seen.iter().cloned().collect();
        while let Some(g) = stack.pop() {
            for h in gens {
                let x = g.compose(h);
                if seen.insert(x.clone()) {
                    stack.push(x);
                }
            }
        }
        seen.len() as u128
    }

    #[test]
    fn classical_generators() {
        for n in 3..=7 {
            let cyc = Perm::from_cycles(n, &[(0..n).collect::<Vec<_>>()]).unwrap();
            let tr = Perm::from_cycles(n, &[vec![0, 1]]).unwrap();
            assert_eq!(
                generation_test(&[cyc, tr], n),
                GenerationResult::SymmetricGroup
            );
        }
    }

    #[test]
    fn a7_from_random_even_perms() {
        let a = Perm::from_cycles(7, &[vec![0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(7, &[vec![2, 3, 4], vec![5, 6, 0]]).unwrap();
        let c = Perm::from_cycles(7, &[vec![1, 4, 6]]).unwrap();
        let gens = [a, b, c];
        assert_eq!(group_order(&gens, 7), 2520);
        assert_eq!(generation_test(&gens, 7), GenerationResult::AlternatingGroup);
    }

    #[test]
    fn small_group_is_other() {
        let g = Perm::from_cycles(7, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(generation_test(&[g], 7), GenerationResult::Other);
    }

    #[test]
    fn orders_match_bfs_closure() {
        // dihedral inside S_4, Klein four group, and a wreath-ish product
        let cases: Vec<Vec<Perm>> = vec![
            vec![
                Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
                Perm::from_cycles(4, &[vec![0, 2]]).unwrap(),
            ],
            vec![
                Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
                Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            ],
            vec![
                Perm::from_cycles(6, &[vec![0, 1, 2]]).unwrap(),
                Perm::from_cycles(6, &[vec![3, 4, 5]]).unwrap(),
                Perm::from_cycles(6, &[vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap(),
            ],
        ];
        for gens in cases {
            let n = gens[0].n();
            assert_eq!(group_order(&gens, n), bfs_order(&gens, n));
        }
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(7), 5040);
        assert_eq!(factorial(21), 51090942171709440000);
    }
}
