//! Three-level partitions `(A, B, C)` and the poset classes built on them.
//!
//! `U_ABC`: every covering pair lies in `(A x B) ∪ (B x C)`.
//! `S_ABC`: `U_ABC` and every element of `B ∪ C` has at least two elements below it.
//! `T_ABC`: no two elements of the same level have nested down/up sets, and
//! every `a < c` is witnessed through `B` while every `b` has a neighbour in
//! `A` and in `C`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{intersects, is_subset, BitMatrix};
use crate::error::{Error, Result};
use crate::poset::{PairSet, Poset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    A,
    B,
    C,
}

/// An ordered partition of `{0, .., n-1}` into blocks `A`, `B`, `C`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelPartition {
    level: Vec<Level>,
    masks: [Vec<u64>; 3],
}

impl LevelPartition {
    pub fn new(n: usize, a: &[usize], b: &[usize], c: &[usize]) -> Result<Self> {
        let mut level = vec![None; n];
        for (block, lv) in [(a, Level::A), (b, Level::B), (c, Level::C)] {
            for &x in block {
                if x >= n {
                    return Err(Error::OutOfRange { elem: x, n });
                }
                if level[x].replace(lv).is_some() {
                    return Err(Error::BadPartition(format!("element {x} appears twice")));
                }
            }
        }
        let level = level
            .into_iter()
            .enumerate()
            .map(|(x, l)| {
                l.ok_or_else(|| Error::BadPartition(format!("element {x} is in no block")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_levels(level))
    }

    pub fn from_levels(level: Vec<Level>) -> Self {
        let words = level.len().div_ceil(64);
        let mut masks = [vec![0u64; words], vec![0u64; words], vec![0u64; words]];
        for (x, &l) in level.iter().enumerate() {
            masks[l as usize][x / 64] |= 1 << (x % 64);
        }
        LevelPartition { level, masks }
    }

    pub fn n(&self) -> usize {
        self.level.len()
    }

    pub fn level_of(&self, x: usize) -> Level {
        self.level[x]
    }

    pub fn block(&self, lv: Level) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.level[x] == lv).collect()
    }

    pub fn mask(&self, lv: Level) -> &[u64] {
        &self.masks[lv as usize]
    }

    /// Membership in `L(n)`: `|A| = |C| = n/4`, `|B| = n/2`.
    pub fn is_balanced(&self) -> bool {
        let n = self.n();
        let size = |lv| self.level.iter().filter(|&&l| l == lv).count();
        n.is_multiple_of(4)
            && size(Level::A) == n / 4
            && size(Level::C) == n / 4
            && size(Level::B) == n / 2
    }

    /// Whether `(x, y)` is an ordered pair of `(A x B) ∪ (B x C)`.
    pub fn allows_cover(&self, x: usize, y: usize) -> bool {
        matches!(
            (self.level[x], self.level[y]),
            (Level::A, Level::B) | (Level::B, Level::C)
        )
    }

    /// `(A x B) ∪ (B x C)` as ordered pairs, `A x B` first.
    pub fn ordered_q_pairs(&self) -> Vec<(usize, usize)> {
        let (a, b, c) = (
            self.block(Level::A),
            self.block(Level::B),
            self.block(Level::C),
        );
        let ab = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y)));
        let bc = b.iter().flat_map(|&x| c.iter().map(move |&y| (x, y)));
        ab.chain(bc).collect()
    }

    /// `Q_ABC` as unordered pairs.
    pub fn q_abc(&self) -> PairSet {
        let mut q = PairSet::new(self.n());
        for (x, y) in self.ordered_q_pairs() {
            q.insert(x, y);
        }
        q
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All members of `L(n)`. Count is `n! / ((n/4)! (n/2)! (n/4)!)`.
pub fn level_partitions(n: usize) -> Result<impl Iterator<Item = LevelPartition>> {
    if !n.is_multiple_of(4) {
        return Err(Error::NotMultipleOfFour(n));
    }
    let all: Vec<usize> = (0..n).collect();
    Ok(combinations(&all, n / 4).into_iter().flat_map(move |a| {
        let rest: Vec<usize> = (0..n).filter(|x| !a.contains(x)).collect();
        combinations(&rest, n / 4).into_iter().map(move |c| {
            let mut level = vec![Level::B; n];
            for &x in &a {
                level[x] = Level::A;
            }
            for &x in &c {
                level[x] = Level::C;
            }
            LevelPartition::from_levels(level)
        })
    }))
}

/// Uniform member of `L(n)`.
pub fn random_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<LevelPartition> {
    if !n.is_multiple_of(4) {
        return Err(Error::NotMultipleOfFour(n));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let (a, rest) = order.split_at(n / 4);
    let (b, c) = rest.split_at(n / 2);
    LevelPartition::new(n, a, b, c)
}

fn check_ground(p: &Poset, part: &LevelPartition) {
    assert_eq!(
        p.n(),
        part.n(),
        "poset and partition live on different ground sets"
    );
}

pub fn in_u(p: &Poset, part: &LevelPartition) -> bool {
    check_ground(p, part);
    p.covering().pairs().all(|(x, y)| part.allows_cover(x, y))
}

pub fn in_s(p: &Poset, part: &LevelPartition) -> bool {
    in_u(p, part)
        && (0..p.n())
            .filter(|&x| part.level_of(x) != Level::A)
            .all(|x| p.down_count(x) > 1)
}

pub fn in_t(p: &Poset, part: &LevelPartition) -> bool {
    check_ground(p, part);
    let n = p.n();
    // (i): no nested profiles inside a level
    for x in 0..n {
        for y in 0..n {
            if x != y
                && part.level_of(x) == part.level_of(y)
                && is_subset(p.down_set(x), p.down_set(y))
                && is_subset(p.up_set(y), p.up_set(x))
            {
                return false;
            }
        }
    }
    // (ii), quantified over all triples in A x B x C
    let (a, b, c) = (
        part.block(Level::A),
        part.block(Level::B),
        part.block(Level::C),
    );
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return true;
    }
    let bmask = part.mask(Level::B);
    let witnessed = a.iter().all(|&x| {
        c.iter().all(|&z| {
            p.up_set(x)
                .iter()
                .zip(bmask)
                .zip(p.down_set(z))
                .any(|((u, m), d)| u & m & d != 0)
        })
    });
    witnessed
        && b.iter().all(|&y| {
            intersects(part.mask(Level::A), p.down_set(y))
                && intersects(p.up_set(y), part.mask(Level::C))
        })
}

/// Closure of the coin-selected pairs of `(A x B) ∪ (B x C)`, coins in the
/// order of [`LevelPartition::ordered_q_pairs`].
pub fn poset_from_coins(part: &LevelPartition, coins: &[bool]) -> Poset {
    let pairs = part.ordered_q_pairs();
    assert_eq!(pairs.len(), coins.len());
    let mut m = BitMatrix::new(part.n());
    for (&(x, y), _) in pairs.iter().zip(coins).filter(|(_, &c)| c) {
        m.set(x, y, true);
    }
    // edges only go A -> B -> C, so the closure is acyclic
    m.close_transitively();
    Poset::from_matrix_unchecked(m)
}

/// Uniform member of `U_part`: one fair coin per ordered pair of `Q_ABC`.
pub fn sample_u_with<R: Rng + ?Sized>(part: &LevelPartition, rng: &mut R) -> Poset {
    let coins: Vec<bool> = (0..part.ordered_q_pairs().len())
        .map(|_| rng.random())
        .collect();
    poset_from_coins(part, &coins)
}

pub fn sample_u(part: &LevelPartition, seed: u64) -> Poset {
    sample_u_with(part, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::enumerate::all_posets;

    fn p4() -> LevelPartition {
        LevelPartition::new(4, &[0], &[1, 2], &[3]).unwrap()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(level_partitions(4).unwrap().count(), 12);
        assert_eq!(level_partitions(8).unwrap().count(), 420);
        assert!(level_partitions(4).unwrap().all(|p| p.is_balanced()));
        assert!(matches!(
            level_partitions(5),
            Err(Error::NotMultipleOfFour(5))
        ));
    }

    #[test]
    fn bad_partitions() {
        assert!(LevelPartition::new(3, &[0], &[0], &[1, 2]).is_err());
        assert!(LevelPartition::new(3, &[0], &[1], &[]).is_err());
        assert!(LevelPartition::new(3, &[0], &[1], &[5]).is_err());
    }

    #[test]
    fn q_abc_examples() {
        let q = p4().q_abc();
        assert_eq!(
            q.iter().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 3), (2, 3)]
        );
        assert!(!q.contains(0, 3));
        for part in level_partitions(8).unwrap().take(50) {
            let q = part.q_abc();
            assert_eq!(q.len(), 16);
            for &x in &part.block(Level::A) {
                for &z in &part.block(Level::C) {
                    assert!(!q.contains(x, z));
                }
            }
        }
    }

    #[test]
    fn u_class_at_four_has_sixteen_members() {
        let posets = all_posets(4).unwrap();
        assert_eq!(posets.iter().filter(|p| in_u(p, &p4())).count(), 16);
    }

    #[test]
    fn coins_extremes() {
        let part = p4();
        assert_eq!(poset_from_coins(&part, &[false; 4]), Poset::antichain(4));
        let full = poset_from_coins(&part, &[true; 4]);
        assert!(full.less(0, 3));
        assert_eq!(full.relation_count(), 5);
        assert!(in_u(&full, &part));
    }

    #[test]
    fn samples_are_uniform_on_u() {
        let part = p4();
        let mut freq: HashMap<Poset, usize> = HashMap::new();
        for seed in 0..2000 {
            *freq.entry(sample_u(&part, seed)).or_default() += 1;
        }
        assert_eq!(freq.len(), 16);
        assert!(freq.keys().all(|p| in_u(p, &part)));
        assert!(freq.values().all(|&f| (75..=175).contains(&f)), "{freq:?}");
    }

    #[test]
    fn seeded_sampling_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let part = random_partition(16, &mut rng).unwrap();
        assert!(part.is_balanced());
        assert_eq!(sample_u(&part, 11), sample_u(&part, 11));
    }
}
