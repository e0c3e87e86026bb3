//! Circulant graphs `G(A, m)`: nodes `0..m`, with `i ~ j` whenever
//! `|i - j| ≡ a (mod m)` for some link `a`. The graph is connected iff
//! `gcd(A ∪ {m}) = 1`, so pruning links down to a minimal connected set is
//! min-gcd with `B = {m}`.

use std::collections::VecDeque;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{gcd_all, Nat, NatSet};
use crate::solver::{solve, Method, Mode, ProblemInstance};

/// Default node limit for [`is_connected_bfs`].
pub const DEFAULT_BFS_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CirculantGraph {
    m: u64,
    links: NatSet,
}

impl CirculantGraph {
    /// Links are kept as given; those divisible by `m` only add self-loops.
    pub fn new(m: u64, links: NatSet) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("a circulant graph needs m >= 1 nodes"));
        }
        links.require_positive("links")?;
        Ok(CirculantGraph { m, links })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn links(&self) -> &NatSet {
        &self.links
    }

    fn link_gcd(&self) -> Nat {
        let m = Nat::from(self.m);
        gcd_all(self.links.iter().chain(std::iter::once(&m)))
    }
}

/// Connectivity by the criterion `gcd(links ∪ {m}) = 1`.
pub fn is_connected_gcd(g: &CirculantGraph) -> bool {
    g.link_gcd().is_one()
}

/// Connectivity by breadth-first search from node 0.
pub fn is_connected_bfs(g: &CirculantGraph, cap: u64) -> Result<bool> {
    if g.m > cap {
        return Err(Error::CapExceeded {
            what: "circulant BFS",
            size: g.m.try_into().unwrap_or(usize::MAX),
            cap: cap.try_into().unwrap_or(usize::MAX),
        });
    }
    let m = g.m as usize;
    let steps: Vec<usize> = g
        .links
        .iter()
        .map(|a| (a.as_big() % g.m).to_usize().expect("below m"))
        .filter(|&s| s != 0)
        .collect();

    let mut seen = vec![false; m];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(i) = queue.pop_front() {
        for &s in &steps {
            for j in [(i + s) % m, (i + m - s) % m] {
                if !seen[j] {
                    seen[j] = true;
                    reached += 1;
                    queue.push_back(j);
                }
            }
        }
    }
    Ok(reached == m)
}

/// A smallest (exact) or near-smallest (greedy) set of links keeping the
/// graph connected. Exact ties go to the lexicographically smallest set.
pub fn prune_links(g: &CirculantGraph, method: Method) -> Result<NatSet> {
    let d = g.link_gcd();
    if !d.is_one() {
        // Only multiples of d are reachable from 0, and d <= m.
        return Err(Error::Disconnected {
            gcd: d.to_string(),
            unreachable_node: 1,
        });
    }
    let inst = ProblemInstance::new(g.links.clone(), NatSet::from_u64s([g.m]), Mode::MinGcd)?;
    Ok(solve(&inst, method)?.s)
}
