//! Information states: the set of posets still consistent with the answers.

use crate::bits::Ones;
use crate::canon::permutations;
use crate::enumerate::all_posets;
use crate::error::{Error, Result};
use crate::poset::{unordered, PairOutcome, Poset};

pub const MAX_STRATEGY_N: usize = 5;
/// `C(5, 2)`
pub const MAX_PAIRS: usize = 10;

/// Per-pair fact that holds across a whole state, oriented as `(lo, hi)`.
pub type Facts = [u8; MAX_PAIRS];

pub const UNKNOWN: u8 = 0;

fn fact_code(o: PairOutcome) -> u8 {
    match o {
        PairOutcome::Less => 1,
        PairOutcome::Greater => 2,
        PairOutcome::Incomparable => 3,
    }
}

pub fn fact_outcome(code: u8) -> Option<PairOutcome> {
    match code {
        1 => Some(PairOutcome::Less),
        2 => Some(PairOutcome::Greater),
        3 => Some(PairOutcome::Incomparable),
        _ => None,
    }
}

fn flip_code(code: u8) -> u8 {
    match code {
        1 => 2,
        2 => 1,
        c => c,
    }
}

/// Readable form of a facts vector: one of `? < > |` per pair.
pub fn facts_string(facts: &Facts, pairs: usize) -> String {
    facts[..pairs]
        .iter()
        .map(|&c| match c {
            1 => '<',
            2 => '>',
            3 => '|',
            _ => '?',
        })
        .collect()
}

/// A relabeling of the ground set, optionally composed with dualization.
#[derive(Debug, Clone)]
pub struct Symmetry {
    pub perm: Vec<usize>,
    pub dual: bool,
    /// image pair index of each pair index
    target: Vec<usize>,
    /// whether the image reverses the `(lo, hi)` orientation
    flip: Vec<bool>,
}

impl Symmetry {
    pub fn apply(&self, facts: &Facts) -> Facts {
        let mut out = [UNKNOWN; MAX_PAIRS];
        for (p, &code) in facts.iter().enumerate().take(self.target.len()) {
            out[self.target[p]] = if self.flip[p] { flip_code(code) } else { code };
        }
        out
    }

    pub fn apply_poset(&self, p: &Poset) -> Poset {
        let q = p.relabel(&self.perm);
        if self.dual {
            q.dual()
        } else {
            q
        }
    }

    /// Index of the pair that this symmetry maps onto `image`.
    pub fn preimage(&self, image: usize) -> usize {
        self.target
            .iter()
            .position(|&t| t == image)
            .expect("bijection")
    }
}

/// Everything fixed for a given `n`: the posets, the pairs, and per pair and
/// outcome the set of posets showing that outcome.
#[derive(Debug, Clone)]
pub struct Universe {
    n: usize,
    posets: Vec<Poset>,
    pairs: Vec<(usize, usize)>,
    words: usize,
    /// `masks[p][o]`
    masks: Vec<[Vec<u64>; 3]>,
    syms: Vec<Symmetry>,
}

impl Universe {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_STRATEGY_N {
            return Err(Error::Guard {
                what: "optimal strategy",
                n,
                max: MAX_STRATEGY_N,
            });
        }
        Self::with_posets(n, all_posets(n)?)
    }

    /// A universe over `posets` in the given order. They must be exactly the
    /// posets on `n` elements.
    pub fn with_posets(n: usize, posets: Vec<Poset>) -> Result<Self> {
        if n > MAX_STRATEGY_N {
            return Err(Error::Guard {
                what: "optimal strategy",
                n,
                max: MAX_STRATEGY_N,
            });
        }
        let pairs: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let words = posets.len().div_ceil(64).max(1);
        let mut masks =
            vec![[vec![0u64; words], vec![0u64; words], vec![0u64; words]]; pairs.len()];
        for (i, p) in posets.iter().enumerate() {
            for (pi, &(a, b)) in pairs.iter().enumerate() {
                let o = fact_code(p.compare(a, b)) as usize - 1;
                masks[pi][o][i / 64] |= 1 << (i % 64);
            }
        }
        let index = |a: usize, b: usize| pairs.iter().position(|&q| q == unordered(a, b)).unwrap();
        let mut syms = Vec::new();
        for dual in [false, true] {
            for perm in permutations(n) {
                let mut target = Vec::with_capacity(pairs.len());
                let mut flip = Vec::with_capacity(pairs.len());
                for &(a, b) in &pairs {
                    let (x, y) = (perm[a], perm[b]);
                    target.push(index(x, y));
                    flip.push((x > y) != dual);
                }
                syms.push(Symmetry {
                    perm,
                    dual,
                    target,
                    flip,
                });
            }
        }
        Ok(Universe {
            n,
            posets,
            pairs,
            words,
            masks,
            syms,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn posets(&self) -> &[Poset] {
        &self.posets
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_index(&self, a: usize, b: usize) -> Option<usize> {
        let q = unordered(a, b);
        self.pairs.iter().position(|&p| p == q)
    }

    pub fn symmetries(&self) -> &[Symmetry] {
        &self.syms
    }

    pub fn full_state(&self) -> InfoState {
        let mut set = vec![0u64; self.words];
        for i in 0..self.posets.len() {
            set[i / 64] |= 1 << (i % 64);
        }
        InfoState { set }
    }

    /// Posets of `state` whose restriction to `{a, b}` is `outcome`. An empty
    /// result means the outcome is impossible in `state`.
    pub fn restrict(
        &self,
        state: &InfoState,
        a: usize,
        b: usize,
        outcome: PairOutcome,
    ) -> Result<InfoState> {
        let p = self.pair_index(a, b).ok_or(Error::BadPair(a, b))?;
        let o = if a < b { outcome } else { outcome.flip() };
        Ok(self.restrict_index(state, p, fact_code(o)))
    }

    pub(crate) fn restrict_index(&self, state: &InfoState, p: usize, code: u8) -> InfoState {
        let mask = &self.masks[p][code as usize - 1];
        InfoState {
            set: state.set.iter().zip(mask).map(|(s, m)| s & m).collect(),
        }
    }

    fn any_in(&self, state: &InfoState, p: usize, code: u8) -> bool {
        let mask = &self.masks[p][code as usize - 1];
        state.set.iter().zip(mask).any(|(s, m)| s & m != 0)
    }

    /// Facts constant across `state`. A state reached by answering
    /// comparisons is exactly the set of posets agreeing with its facts, so
    /// this vector identifies the state.
    pub fn facts(&self, state: &InfoState) -> Facts {
        self.facts_from(state, &[UNKNOWN; MAX_PAIRS])
    }

    /// As [`Self::facts`], given facts already known to hold on `state`.
    pub(crate) fn facts_from(&self, state: &InfoState, known: &Facts) -> Facts {
        let mut out = *known;
        for (p, slot) in out.iter_mut().enumerate().take(self.pairs.len()) {
            if *slot != UNKNOWN {
                continue;
            }
            let mut only = None;
            for code in 1..=3u8 {
                if self.any_in(state, p, code) {
                    only = if only.is_none() {
                        Some(code)
                    } else {
                        Some(UNKNOWN)
                    };
                    if only == Some(UNKNOWN) {
                        break;
                    }
                }
            }
            *slot = only.unwrap_or(UNKNOWN);
        }
        out
    }

    /// The set of posets agreeing with `facts`.
    pub fn state_of(&self, facts: &Facts) -> InfoState {
        let mut s = self.full_state();
        for (p, &code) in facts.iter().enumerate().take(self.pairs.len()) {
            if code != UNKNOWN {
                s = self.restrict_index(&s, p, code);
            }
        }
        s
    }

    /// Smallest image of `facts` under all symmetries, with the first
    /// symmetry attaining it.
    pub fn canonical_facts(&self, facts: &Facts) -> (Facts, usize) {
        let mut best = (self.syms[0].apply(facts), 0);
        for (i, s) in self.syms.iter().enumerate().skip(1) {
            let img = s.apply(facts);
            if img < best.0 {
                best = (img, i);
            }
        }
        best
    }

    /// Whether `facts` reaches its canonical form by relabeling alone.
    pub fn canonical_without_dual(&self, facts: &Facts, canon: &Facts) -> bool {
        self.syms
            .iter()
            .filter(|s| !s.dual)
            .any(|s| s.apply(facts) == *canon)
    }

    /// Minimum over all relabelings and optional dualization of the sorted
    /// list of member encodings.
    pub fn canonical_state_key(&self, state: &InfoState) -> Vec<u8> {
        let members: Vec<&Poset> = state.members().map(|i| &self.posets[i]).collect();
        let mut best: Option<Vec<u32>> = None;
        for s in &self.syms {
            let mut codes: Vec<u32> = members
                .iter()
                .map(|p| {
                    let q = s.apply_poset(p);
                    q.relations()
                        .fold(0u32, |acc, (x, y)| acc | 1 << (x * self.n + y))
                })
                .collect();
            codes.sort_unstable();
            if best.as_ref().is_none_or(|b| codes < *b) {
                best = Some(codes);
            }
        }
        let mut key = vec![self.n as u8];
        for c in best.unwrap_or_default() {
            key.extend_from_slice(&c.to_be_bytes());
        }
        key
    }
}

/// A set of poset indices into a [`Universe`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InfoState {
    set: Vec<u64>,
}

impl InfoState {
    pub fn size(&self) -> usize {
        self.set.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.set.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        Ones::new(&self.set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use PairOutcome::*;

    #[test]
    fn restrict_two_elements() {
        let u = Universe::new(2).unwrap();
        let s = u.restrict(&u.full_state(), 0, 1, Less).unwrap();
        assert_eq!(s.size(), 1);
        let p = &u.posets()[s.members().next().unwrap()];
        assert!(p.less(0, 1));
        let g = u.restrict(&u.full_state(), 1, 0, Less).unwrap();
        assert!(u.posets()[g.members().next().unwrap()].less(1, 0));
    }

    #[test]
    fn first_split_at_four() {
        let u = Universe::new(4).unwrap();
        let full = u.full_state();
        // independent count straight from the poset list
        let brute = |o: PairOutcome| u.posets().iter().filter(|p| p.compare(1, 3) == o).count();
        let sizes: Vec<usize> = PairOutcome::ALL
            .iter()
            .map(|&o| u.restrict(&full, 1, 3, o).unwrap().size())
            .collect();
        assert_eq!(
            sizes,
            vec![brute(Less), brute(Greater), brute(Incomparable)]
        );
        assert_eq!(sizes, vec![66, 66, 87]);
    }

    #[test]
    fn restricting_by_a_forced_outcome_is_identity() {
        let u = Universe::new(3).unwrap();
        let s = u.restrict(&u.full_state(), 0, 1, Less).unwrap();
        let s = u.restrict(&s, 1, 2, Less).unwrap();
        assert_eq!(u.restrict(&s, 0, 2, Less).unwrap(), s);
        assert!(u.restrict(&s, 0, 2, Incomparable).unwrap().is_empty());
    }

    #[test]
    fn facts_identify_states() {
        let u = Universe::new(4).unwrap();
        let s = u.restrict(&u.full_state(), 0, 1, Less).unwrap();
        let s = u.restrict(&s, 2, 3, Incomparable).unwrap();
        assert_eq!(u.state_of(&u.facts(&s)), s);
    }

    #[test]
    fn canonical_key_examples() {
        let u = Universe::new(4).unwrap();
        let full = u.full_state();
        let a = u.restrict(&full, 0, 1, Less).unwrap();
        let b = u.restrict(&full, 2, 3, Less).unwrap();
        assert_eq!(u.canonical_state_key(&a), u.canonical_state_key(&b));
        let g = u.restrict(&full, 0, 1, Greater).unwrap();
        assert_eq!(u.canonical_state_key(&a), u.canonical_state_key(&g));
        let i = u.restrict(&full, 0, 1, Incomparable).unwrap();
        assert_ne!(u.canonical_state_key(&a), u.canonical_state_key(&i));
        assert_eq!(u.symmetries().len(), 48);
        let key = u.canonical_state_key(&full);
        for s in u.symmetries() {
            let image = u.state_of(&s.apply(&u.facts(&full)));
            assert_eq!(u.canonical_state_key(&image), key);
        }
    }

    #[test]
    fn fact_key_and_member_key_agree_on_equivalence() {
        let u = Universe::new(4).unwrap();
        let full = u.full_state();
        let mut states = vec![full.clone()];
        for &(a, b) in u.pairs() {
            for o in PairOutcome::ALL {
                let s = u.restrict(&full, a, b, o).unwrap();
                for &(c, d) in u.pairs().iter().take(3) {
                    for o2 in PairOutcome::ALL {
                        let t = u.restrict(&s, c, d, o2).unwrap();
                        if !t.is_empty() {
                            states.push(t);
                        }
                    }
                }
                states.push(s);
            }
        }
        let keys: Vec<_> = states
            .iter()
            .map(|s| (u.canonical_facts(&u.facts(s)).0, u.canonical_state_key(s)))
            .collect();
        for (fx, mx) in &keys {
            for (fy, my) in &keys {
                assert_eq!(fx == fy, mx == my);
            }
        }
    }

    #[test]
    fn guard() {
        assert!(matches!(Universe::new(6), Err(Error::Guard { .. })));
    }
}
