//! End-to-end subset selection: the smallest `S ⊆ A` with
//! `gcd(S ∪ B) = gcd(A ∪ B)` (min-gcd) or `lcm(S ∪ B) = lcm(A ∪ B)` (max-lcm).
//!
//! `gcd(∅ ∪ B)` is `gcd(B)` (0 for empty `B`) and `lcm(∅ ∪ B)` is `lcm(B)`
//! (1 for empty `B`); whenever `B` alone reaches the target the answer is the
//! empty set.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{gcd_all, lcm_all, Nat, NatSet};
use crate::reductions::{gcd_to_cover_with, lcm_to_cover_with, CoverReduction};
use crate::setcover::{decide_cover, exact_cover, greedy_cover};

/// Default limit on `|A|` for [`brute_force`].
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    MinGcd,
    MaxLcm,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::MinGcd => "min-gcd",
            Mode::MaxLcm => "max-lcm",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min-gcd" => Ok(Mode::MinGcd),
            "max-lcm" => Ok(Mode::MaxLcm),
            _ => Err(Error::domain(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    Greedy,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Greedy => "greedy",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "greedy" => Ok(Method::Greedy),
            _ => Err(Error::domain(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct ProblemInstance {
    #[serde(rename = "A")]
    a: NatSet,
    #[serde(rename = "B")]
    b: NatSet,
    mode: Mode,
}

#[derive(Deserialize)]
struct RawInstance {
    #[serde(rename = "A")]
    a: NatSet,
    #[serde(rename = "B", default)]
    b: NatSet,
    mode: Mode,
}

impl TryFrom<RawInstance> for ProblemInstance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        ProblemInstance::new(raw.a, raw.b, raw.mode)
    }
}

impl ProblemInstance {
    pub fn new(a: NatSet, b: NatSet, mode: Mode) -> Result<Self> {
        a.require_positive("A")?;
        b.require_positive("B")?;
        if a.is_empty() && b.is_empty() {
            return Err(Error::domain("A and B are both empty"));
        }
        Ok(ProblemInstance { a, b, mode })
    }

    pub fn a(&self) -> &NatSet {
        &self.a
    }

    pub fn b(&self) -> &NatSet {
        &self.b
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// gcd or lcm of `s ∪ B`.
    pub fn value_with(&self, s: &NatSet) -> Nat {
        mode_value(self.mode, s, &self.b)
    }

    /// gcd or lcm of `A ∪ B`.
    pub fn target(&self) -> Nat {
        self.value_with(&self.a)
    }
}

fn mode_value(mode: Mode, s: &NatSet, b: &NatSet) -> Nat {
    let all = s.iter().chain(b.iter());
    match mode {
        Mode::MinGcd => gcd_all(all),
        Mode::MaxLcm => lcm_all(all).expect("instances hold positive integers"),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stats {
    /// Number of sets in the cover instance (after deduplication).
    pub cover_sets: usize,
    /// Wall time in microseconds, when recorded.
    pub elapsed_us: Option<u64>,
    /// Size of the cover universe `X`.
    pub universe_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SolutionRepr", try_from = "SolutionRepr")]
pub struct SubsetSolution {
    pub s: NatSet,
    pub achieved: Nat,
    pub target: Nat,
    pub method: Method,
    pub optimal: bool,
    pub stats: Stats,
}

impl SubsetSolution {
    pub fn size(&self) -> usize {
        self.s.len()
    }

    /// Drops the wall-clock measurement so output is reproducible.
    pub fn without_timing(mut self) -> Self {
        self.stats.elapsed_us = None;
        self
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionRepr {
    #[serde(rename = "S")]
    s: NatSet,
    achieved: Nat,
    method: Method,
    optimal: bool,
    size: usize,
    stats: Stats,
    target: Nat,
}

impl From<SubsetSolution> for SolutionRepr {
    fn from(s: SubsetSolution) -> Self {
        SolutionRepr {
            size: s.s.len(),
            s: s.s,
            achieved: s.achieved,
            method: s.method,
            optimal: s.optimal,
            stats: s.stats,
            target: s.target,
        }
    }
}

impl TryFrom<SolutionRepr> for SubsetSolution {
    type Error = Error;

    fn try_from(r: SolutionRepr) -> Result<Self> {
        if r.size != r.s.len() {
            return Err(Error::domain(format!(
                "size {} does not match |S| = {}",
                r.size,
                r.s.len()
            )));
        }
        Ok(SubsetSolution {
            s: r.s,
            achieved: r.achieved,
            target: r.target,
            method: r.method,
            optimal: r.optimal,
            stats: r.stats,
        })
    }
}

/// The cover instance for `(a, b)`; set owners are elements of `a`.
pub fn reduce(inst: &ProblemInstance) -> Result<CoverReduction> {
    match inst.mode {
        Mode::MinGcd => gcd_to_cover_with(&inst.a, &inst.b).map(|(_, red)| red),
        Mode::MaxLcm => lcm_to_cover_with(&inst.a, &inst.b),
    }
}

/// Solves the instance through the Minimum Cover reduction.
///
/// `Exact` returns a minimum subset (the lexicographically smallest one);
/// `Greedy` runs the greedy cover and is within a factor `H(|X|)` of optimal.
pub fn solve(inst: &ProblemInstance, method: Method) -> Result<SubsetSolution> {
    let start = Instant::now();
    let target = inst.target();
    let finish = |s: NatSet, optimal: bool, stats: Stats| {
        let achieved = inst.value_with(&s);
        debug_assert_eq!(achieved, target);
        SubsetSolution {
            s,
            achieved,
            target: target.clone(),
            method,
            optimal,
            stats: Stats {
                elapsed_us: Some(start.elapsed().as_micros() as u64),
                ..stats
            },
        }
    };

    if inst.value_with(&NatSet::new()) == target {
        return Ok(finish(NatSet::new(), true, Stats::default()));
    }

    let red = reduce(inst)?;
    let stats = Stats {
        cover_sets: red.cover.sets().len(),
        elapsed_us: None,
        universe_size: red.cover.universe_size(),
    };
    let cover = match method {
        Method::Exact => exact_cover(&red.cover)?,
        Method::Greedy => greedy_cover(&red.cover)?,
    };
    let mut chosen = cover.chosen;
    if chosen.is_empty() {
        // Empty universe: any single element works, and none is not enough.
        chosen.push(0);
    }

    // Owners ascend with set index, so the lexicographically first minimum
    // cover gives the lexicographically first minimum subset.
    let s = red.owners_of(&chosen);
    let optimal = method == Method::Exact || s.len() == 1;
    Ok(finish(s, optimal, stats))
}

/// Is there an `S ⊆ A` with `|S| <= k` reaching the target?
pub fn decide(inst: &ProblemInstance, k: usize) -> Result<bool> {
    if inst.value_with(&NatSet::new()) == inst.target() {
        return Ok(true);
    }
    let red = reduce(inst)?;
    // An empty universe still needs one element to leave the empty set.
    Ok(k >= 1 && (red.cover.universe_size() == 0 || decide_cover(&red.cover, k)))
}

/// Exhaustive oracle: subsets in order of size, then lexicographically.
/// Refuses when `|A| > cap`.
pub fn brute_force(inst: &ProblemInstance, cap: usize) -> Result<SubsetSolution> {
    let start = Instant::now();
    if inst.a.len() > cap {
        return Err(Error::CapExceeded {
            what: "brute force",
            size: inst.a.len(),
            cap,
        });
    }
    let target = inst.target();
    let elems = inst.a.to_vec();
    let s = (0..=elems.len())
        .flat_map(|k| elems.iter().combinations(k))
        .map(|c| c.into_iter().collect::<NatSet>())
        .find(|s| inst.value_with(s) == target)
        .expect("A itself reaches the target");
    Ok(SubsetSolution {
        achieved: inst.value_with(&s),
        s,
        target,
        method: Method::Exact,
        optimal: true,
        stats: Stats {
            elapsed_us: Some(start.elapsed().as_micros() as u64),
            ..Stats::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::eliminate_b;
    use proptest::prelude::*;

    fn set(v: &[u64]) -> NatSet {
        NatSet::from_u64s(v.iter().copied())
    }

    fn inst(a: &[u64], b: &[u64], mode: Mode) -> ProblemInstance {
        ProblemInstance::new(set(a), set(b), mode).unwrap()
    }

    #[test]
    fn solve_examples() {
        let s = solve(&inst(&[6, 10, 15], &[], Mode::MinGcd), Method::Exact).unwrap();
        assert_eq!(s.s, set(&[6, 10, 15]));
        assert_eq!(s.achieved, Nat::one());
        assert!(s.optimal);

        let s = solve(&inst(&[4, 6], &[2], Mode::MinGcd), Method::Exact).unwrap();
        assert!(s.s.is_empty());
        assert_eq!(s.achieved, Nat::from(2));

        let s = solve(&inst(&[4, 6, 9], &[], Mode::MaxLcm), Method::Exact).unwrap();
        assert_eq!(s.s, set(&[4, 9]));
        assert_eq!(s.achieved, Nat::from(36));

        let s = solve(&inst(&[30, 42, 70, 105], &[], Mode::MinGcd), Method::Exact).unwrap();
        assert_eq!(s.size(), 4);
    }

    #[test]
    fn decide_examples() {
        assert!(!decide(&inst(&[6, 10, 15], &[], Mode::MinGcd), 2).unwrap());
        assert!(decide(&inst(&[4, 9, 6], &[], Mode::MinGcd), 2).unwrap());
        assert_eq!(
            solve(&inst(&[4, 9, 6], &[], Mode::MinGcd), Method::Exact)
                .unwrap()
                .s,
            set(&[4, 9])
        );
        assert!(decide(&inst(&[4], &[8], Mode::MaxLcm), 0).unwrap());
    }

    #[test]
    fn brute_force_examples() {
        let cap = DEFAULT_BRUTE_FORCE_CAP;
        assert_eq!(
            brute_force(&inst(&[2, 4], &[], Mode::MaxLcm), cap)
                .unwrap()
                .s,
            set(&[4])
        );
        assert_eq!(
            brute_force(&inst(&[5], &[], Mode::MinGcd), cap).unwrap().s,
            set(&[5])
        );
        assert_eq!(
            brute_force(&inst(&[6, 10, 15], &[], Mode::MinGcd), cap)
                .unwrap()
                .size(),
            3
        );
        let big = inst(&(1..=21).collect::<Vec<_>>(), &[], Mode::MinGcd);
        assert!(matches!(
            brute_force(&big, cap),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn invalid_instances() {
        assert!(ProblemInstance::new(set(&[]), set(&[]), Mode::MinGcd).is_err());
        assert!(ProblemInstance::new(set(&[0, 3]), set(&[]), Mode::MinGcd).is_err());
        assert!(ProblemInstance::new(set(&[3]), set(&[0]), Mode::MaxLcm).is_err());
        // A may be empty when B is not
        let s = solve(&inst(&[], &[6], Mode::MinGcd), Method::Exact).unwrap();
        assert!(s.s.is_empty());
    }

    #[test]
    fn single_one_needs_one_element() {
        let s = solve(&inst(&[1], &[], Mode::MinGcd), Method::Exact).unwrap();
        assert_eq!(s.s, set(&[1]));
        let s = solve(&inst(&[1], &[], Mode::MinGcd), Method::Greedy).unwrap();
        assert_eq!(s.s, set(&[1]));
        // lcm of nothing is already 1
        assert!(solve(&inst(&[1], &[], Mode::MaxLcm), Method::Exact)
            .unwrap()
            .s
            .is_empty());
        // every element maps to 1 under elimination by 3
        let s = solve(&inst(&[4, 5], &[3], Mode::MinGcd), Method::Greedy).unwrap();
        assert_eq!(s.size(), 1);
    }

    #[test]
    fn lcm_with_b() {
        let s = solve(&inst(&[4, 6, 9], &[8], Mode::MaxLcm), Method::Exact).unwrap();
        assert_eq!(s.s, set(&[9]));
        assert_eq!(s.achieved, Nat::from(72));
    }

    #[test]
    fn json_round_trip() {
        let i = inst(&[30, 42], &[7], Mode::MaxLcm);
        let json = serde_json::to_string(&i).unwrap();
        assert_eq!(json, r#"{"A":["30","42"],"B":["7"],"mode":"max-lcm"}"#);
        assert_eq!(serde_json::from_str::<ProblemInstance>(&json).unwrap(), i);
        let no_b: ProblemInstance =
            serde_json::from_str(r#"{"A":["3"],"mode":"min-gcd"}"#).unwrap();
        assert!(no_b.b().is_empty());
        assert!(
            serde_json::from_str::<ProblemInstance>(r#"{"A":[],"B":[],"mode":"min-gcd"}"#).is_err()
        );

        let s = solve(&i, Method::Greedy).unwrap().without_timing();
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.starts_with(r#"{"S":["#));
        assert_eq!(serde_json::from_str::<SubsetSolution>(&json).unwrap(), s);
    }

    fn arb_instance(mode: Mode) -> impl Strategy<Value = ProblemInstance> {
        (
            prop::collection::vec(1u64..=1_000_000, 1..=8),
            prop::collection::vec(1u64..=1_000_000, 0..=3),
        )
            .prop_map(move |(a, b)| inst(&a, &b, mode))
    }

    fn arb_smooth_instance(mode: Mode) -> impl Strategy<Value = ProblemInstance> {
        let factor = prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]);
        let elem = prop::collection::vec(factor, 1..5).prop_map(|f| f.into_iter().product::<u64>());
        (
            prop::collection::vec(elem.clone(), 1..=9),
            prop::collection::vec(elem, 0..=2),
        )
            .prop_map(move |(a, b)| inst(&a, &b, mode))
    }

    fn check_against_oracle(i: &ProblemInstance) -> std::result::Result<(), TestCaseError> {
        let e = solve(i, Method::Exact).unwrap();
        let g = solve(i, Method::Greedy).unwrap();
        let o = brute_force(i, DEFAULT_BRUTE_FORCE_CAP).unwrap();
        prop_assert_eq!(&e.s, &o.s, "exact must equal the lexicographic oracle");
        prop_assert!(e.s.is_subset(i.a()) && g.s.is_subset(i.a()));
        prop_assert_eq!(&e.achieved, &e.target);
        prop_assert_eq!(&g.achieved, &g.target);
        let x = g.stats.universe_size.max(1) as f64;
        prop_assert!(g.size() as f64 <= (x.ln() + 1.0) * e.size() as f64 + 1e-9);
        prop_assert!(decide(i, e.size()).unwrap());
        prop_assert!(e.size() == 0 || !decide(i, e.size() - 1).unwrap());
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn gcd_matches_oracle(i in arb_instance(Mode::MinGcd)) {
            check_against_oracle(&i)?;
        }

        #[test]
        fn lcm_matches_oracle(i in arb_instance(Mode::MaxLcm)) {
            check_against_oracle(&i)?;
        }

        #[test]
        fn smooth_gcd_matches_oracle(i in arb_smooth_instance(Mode::MinGcd)) {
            check_against_oracle(&i)?;
        }

        #[test]
        fn smooth_lcm_matches_oracle(i in arb_smooth_instance(Mode::MaxLcm)) {
            check_against_oracle(&i)?;
        }

        #[test]
        fn elimination_preserves_optimum(i in arb_smooth_instance(Mode::MinGcd)) {
            let e = solve(&i, Method::Exact).unwrap();
            let elim = eliminate_b(i.a(), i.b()).unwrap();
            let reduced = ProblemInstance::new(elim.reduced.clone(), NatSet::new(), Mode::MinGcd).unwrap();
            let r = solve(&reduced, Method::Exact).unwrap();
            // the trivial case (B alone) is the only place the sizes can differ
            if !e.s.is_empty() {
                prop_assert_eq!(r.size(), e.size());
                let lifted = elim.lift(&r.s);
                prop_assert_eq!(i.value_with(&lifted), i.target());
            }
        }

        #[test]
        fn adding_elements_never_hurts(i in arb_smooth_instance(Mode::MinGcd), extra in 2u64..500) {
            let mut bigger = i.a().clone();
            bigger.insert(Nat::from(extra));
            let j = ProblemInstance::new(bigger, i.b().clone(), Mode::MinGcd).unwrap();
            if j.target() == i.target() {
                prop_assert!(solve(&j, Method::Exact).unwrap().size() <= solve(&i, Method::Exact).unwrap().size());
            }
        }
    }
}
