//! Minimum Cover: instances, the greedy approximation, and an exact
//! branch-and-bound solver.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A list of subsets of the universe `{0, .., universe_size - 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCoverInstance")]
pub struct CoverInstance {
    sets: Vec<Vec<usize>>,
    universe_size: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoverInstance {
    sets: Vec<Vec<usize>>,
    universe_size: usize,
}

impl TryFrom<RawCoverInstance> for CoverInstance {
    type Error = Error;

    fn try_from(raw: RawCoverInstance) -> Result<Self> {
        CoverInstance::new(raw.universe_size, raw.sets)
    }
}

impl CoverInstance {
    /// Each set is sorted and deduplicated; indices must be `< universe_size`.
    pub fn new(universe_size: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let sets = sets
            .into_iter()
            .enumerate()
            .map(|(i, mut s)| {
                s.sort_unstable();
                s.dedup();
                match s.last() {
                    Some(&x) if x >= universe_size => Err(Error::domain(format!(
                        "set {i} contains element {x} outside universe of size {universe_size}"
                    ))),
                    _ => Ok(s),
                }
            })
            .collect::<Result<_>>()?;
        Ok(CoverInstance {
            sets,
            universe_size,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// The smallest element not in any set, if there is one.
    pub fn uncoverable(&self) -> Option<usize> {
        let mut seen = vec![false; self.universe_size];
        for &x in self.sets.iter().flatten() {
            seen[x] = true;
        }
        seen.iter().position(|&s| !s)
    }

    pub fn check_feasible(&self) -> Result<()> {
        match self.uncoverable() {
            Some(element) => Err(Error::Uncoverable { element }),
            None => Ok(()),
        }
    }

    /// Whether the sets at `chosen` cover the universe.
    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut seen = vec![false; self.universe_size];
        for &i in chosen {
            for &x in &self.sets[i] {
                seen[x] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SolutionRepr", try_from = "SolutionRepr")]
pub struct CoverSolution {
    /// Ascending indices into the instance's set list.
    pub chosen: Vec<usize>,
    pub is_optimal: bool,
}

impl CoverSolution {
    pub fn size(&self) -> usize {
        self.chosen.len()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionRepr {
    chosen: Vec<usize>,
    optimal: bool,
    size: usize,
}

impl From<CoverSolution> for SolutionRepr {
    fn from(s: CoverSolution) -> Self {
        SolutionRepr {
            size: s.chosen.len(),
            chosen: s.chosen,
            optimal: s.is_optimal,
        }
    }
}

impl TryFrom<SolutionRepr> for CoverSolution {
    type Error = Error;

    fn try_from(r: SolutionRepr) -> Result<Self> {
        if r.size != r.chosen.len() {
            return Err(Error::domain(format!(
                "size {} does not match {} chosen sets",
                r.size,
                r.chosen.len()
            )));
        }
        Ok(CoverSolution {
            chosen: r.chosen,
            is_optimal: r.optimal,
        })
    }
}

/// Fixed-width bitset over the universe.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn from_indices(n: usize, idx: &[usize]) -> Self {
        let mut b = Bits::empty(n);
        for &i in idx {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn overlap(&self, other: &Bits) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn minus(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    /// `self ∩ within ⊆ other ∩ within`
    fn subset_within(&self, other: &Bits, within: &Bits) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .zip(&within.0)
            .all(|((a, b), u)| a & u & !b == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| wi * 64 + b)
        })
    }
}

/// Johnson's greedy: repeatedly take the set covering the most uncovered
/// elements, lowest index first on ties. Within a factor `H(|X|)` of optimal.
pub fn greedy_cover(inst: &CoverInstance) -> Result<CoverSolution> {
    inst.check_feasible()?;
    let n = inst.universe_size;
    let masks: Vec<Bits> = inst.sets.iter().map(|s| Bits::from_indices(n, s)).collect();
    let mut uncovered = Bits::full(n);
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (best, gain) = masks
            .iter()
            .enumerate()
            .map(|(i, m)| (i, m.overlap(&uncovered)))
            .fold(
                (usize::MAX, 0),
                |acc, cur| if cur.1 > acc.1 { cur } else { acc },
            );
        debug_assert!(gain > 0, "feasibility was checked up front");
        uncovered = uncovered.minus(&masks[best]);
        chosen.push(best);
    }
    chosen.sort_unstable();
    // 0 and 1 are the only lower bounds greedy can certify on its own.
    let is_optimal = chosen.len() <= 1;
    Ok(CoverSolution { chosen, is_optimal })
}

struct Search {
    masks: Vec<Bits>,
}

impl Search {
    fn new(inst: &CoverInstance) -> Self {
        let n = inst.universe_size;
        Search {
            masks: inst.sets.iter().map(|s| Bits::from_indices(n, s)).collect(),
        }
    }

    /// Can `uncovered` be covered by at most `budget` sets drawn from the
    /// indices `first..`?
    fn can_cover(&self, uncovered: &Bits, first: usize, budget: usize) -> bool {
        if uncovered.is_empty() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let pool = &self.masks[first..];

        let largest = pool.iter().map(|m| m.overlap(uncovered)).max().unwrap_or(0);
        if largest == 0 || uncovered.count().div_ceil(largest) > budget {
            return false;
        }

        // Branch on the uncovered element with the fewest candidate sets.
        let mut pivot: Option<(usize, Vec<usize>)> = None;
        for e in uncovered.ones() {
            let cands: Vec<usize> = (first..self.masks.len())
                .filter(|&i| self.masks[i].contains(e))
                .collect();
            if cands.is_empty() {
                return false;
            }
            if pivot.as_ref().is_none_or(|(_, c)| cands.len() < c.len()) {
                let done = cands.len() == 1;
                pivot = Some((e, cands));
                if done {
                    break;
                }
            }
        }
        let (_, cands) = pivot.expect("uncovered is nonempty");

        for (k, &i) in cands.iter().enumerate() {
            // Skip a candidate whose useful part is contained in another
            // candidate's (ties: keep the lower index).
            let dominated = cands.iter().enumerate().any(|(l, &j)| {
                l != k
                    && self.masks[i].subset_within(&self.masks[j], uncovered)
                    && (!self.masks[j].subset_within(&self.masks[i], uncovered) || l < k)
            });
            if dominated {
                continue;
            }
            if self.can_cover(&uncovered.minus(&self.masks[i]), first, budget - 1) {
                return true;
            }
        }
        false
    }

    fn min_size(&self, uncovered: &Bits) -> usize {
        let mut k = 0;
        while !self.can_cover(uncovered, 0, k) {
            k += 1;
        }
        k
    }
}

/// A minimum cover. Among all minimum covers, returns the lexicographically
/// smallest ascending index list.
pub fn exact_cover(inst: &CoverInstance) -> Result<CoverSolution> {
    inst.check_feasible()?;
    let search = Search::new(inst);
    let mut uncovered = Bits::full(inst.universe_size);
    let k = search.min_size(&uncovered);

    let mut chosen = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        let pick = (next..search.masks.len())
            .find(|&i| {
                let rest = uncovered.minus(&search.masks[i]);
                search.can_cover(&rest, i + 1, remaining)
            })
            .expect("a cover of size k exists");
        uncovered = uncovered.minus(&search.masks[pick]);
        chosen.push(pick);
        next = pick + 1;
    }
    debug_assert!(uncovered.is_empty());
    Ok(CoverSolution {
        chosen,
        is_optimal: true,
    })
}

/// Is there a cover of size at most `k`? Infeasible instances answer no.
pub fn decide_cover(inst: &CoverInstance, k: usize) -> bool {
    if inst.uncoverable().is_some() {
        return false;
    }
    Search::new(inst).can_cover(&Bits::full(inst.universe_size), 0, k)
}

/// `H(n) = 1 + 1/2 + ... + 1/n`, the greedy approximation factor.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).map(|i| 1.0 / i as f64).sum()
}
