//! Reductions between the gcd/lcm subset problems and Minimum Cover, in
//! both directions, plus elimination of the fixed set `B`.
//!
//! Forward direction: a coprime basis `P` of the input becomes the
//! universe, and each element `a` contributes the set of basis elements
//! whose extreme exponent (max for lcm, min for gcd) it attains. A family of
//! elements preserves the lcm (gcd) exactly when its sets cover `P`.
//!
//! Backward direction: universe element `j` becomes the `j`-th prime, and a
//! set becomes the product of its primes (lcm) or the cofactor of that
//! product in the full primorial (gcd).

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::coprime_basis::{compute_basis, Profile};
use crate::error::{Error, Result};
use crate::numeric::{first_primes, gcd_set, Nat, NatSet};
use crate::setcover::CoverInstance;

/// `A_B = { gcd({a} ∪ B) : a ∈ A }` with a section back into `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BEliminationMap {
    pub reduced: NatSet,
    /// Maps each reduced value to the smallest `a` with `gcd({a} ∪ B) = v`.
    pub section: BTreeMap<Nat, Nat>,
}

impl BEliminationMap {
    /// Lifts a subset of `reduced` back to a subset of `A`.
    pub fn lift(&self, t: &NatSet) -> NatSet {
        t.iter().map(|v| self.section[v].clone()).collect()
    }
}

/// Replaces every `a` by `gcd({a} ∪ B)`. Solution sizes are preserved:
/// `gcd(S ∪ B) = gcd(S_B)` for every `S ⊆ A`.
pub fn eliminate_b(a: &NatSet, b: &NatSet) -> Result<BEliminationMap> {
    if a.is_empty() {
        return Err(Error::domain("cannot eliminate B from an empty set"));
    }
    a.require_positive("A")?;
    b.require_positive("B")?;
    let gb = gcd_set(b);
    let mut section = BTreeMap::new();
    for x in a.iter() {
        // ascending iteration, so the first preimage seen is the smallest
        section.entry(x.gcd(&gb)).or_insert_with(|| x.clone());
    }
    Ok(BEliminationMap {
        reduced: section.keys().collect(),
        section,
    })
}

/// A Minimum Cover instance derived from a subset problem, with the maps
/// needed to read a cover back as a subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReduction {
    pub cover: CoverInstance,
    /// `set_owners[i]` is the element of `A` whose set is `cover.sets()[i]`.
    pub set_owners: Vec<Nat>,
    /// `universe_labels[x]` is the basis element behind universe index `x`.
    pub universe_labels: Vec<Nat>,
}

impl CoverReduction {
    /// The subset of `A` owning the chosen sets.
    pub fn owners_of(&self, chosen: &[usize]) -> NatSet {
        chosen.iter().map(|&i| self.set_owners[i].clone()).collect()
    }
}

/// Builds the cover over the basis elements not already attained by `fixed`.
///
/// The basis is taken over `source ∪ fixed`, and `profile` picks the extreme
/// exponent to attain. Candidate `a` gets the set of the source element
/// `row_of(a)`. Candidates are visited in ascending order and a set already
/// seen is dropped, so each set's owner is the smallest candidate having it
/// and owners come out ascending.
fn cover_over_basis(
    candidates: &NatSet,
    row_of: impl Fn(&Nat) -> Nat,
    source: &NatSet,
    fixed: &NatSet,
    profile: Profile,
) -> Result<CoverReduction> {
    let cb = compute_basis(&source.union(fixed))?;
    let extreme = cb.profile(profile)?;
    let basis = cb.basis();

    let attains = |row: &[u32], j: usize| row[j] == extreme[j];
    let universe: Vec<usize> = (0..basis.len())
        .filter(|&j| {
            !fixed
                .iter()
                .any(|f| attains(cb.row(f).expect("f in source"), j))
        })
        .collect();

    let mut seen = HashSet::new();
    let mut sets = Vec::new();
    let mut set_owners = Vec::new();
    for a in candidates.iter() {
        let row = cb.row(&row_of(a)).expect("row source in basis source");
        let set: Vec<usize> = universe
            .iter()
            .enumerate()
            .filter(|&(_, &j)| attains(row, j))
            .map(|(x, _)| x)
            .collect();
        if seen.insert(set.clone()) {
            sets.push(set);
            set_owners.push(a.clone());
        }
    }

    Ok(CoverReduction {
        cover: CoverInstance::new(universe.len(), sets)?,
        set_owners,
        universe_labels: universe.iter().map(|&j| basis[j].clone()).collect(),
    })
}

fn require_instance(a: &NatSet) -> Result<()> {
    if a.is_empty() {
        return Err(Error::domain("A is empty"));
    }
    a.require_positive("A")
}

/// MaxLcm → MinCover: `C_a = { p : e(a, p) = d(p) }` over a coprime basis.
pub fn lcm_to_cover(a: &NatSet) -> Result<CoverReduction> {
    require_instance(a)?;
    cover_over_basis(a, Nat::clone, a, &NatSet::new(), Profile::Max)
}

/// MinGcd → MinCover: `C_a = { p : e(a, p) = g(p) }` over a coprime basis.
pub fn gcd_to_cover(a: &NatSet) -> Result<CoverReduction> {
    require_instance(a)?;
    cover_over_basis(a, Nat::clone, a, &NatSet::new(), Profile::Min)
}

/// MaxLcm with a fixed set `B`: the basis is taken over `A ∪ B`, and basis
/// elements whose maximal exponent some `b` already attains are dropped
/// from the universe.
pub fn lcm_to_cover_with(a: &NatSet, b: &NatSet) -> Result<CoverReduction> {
    require_instance(a)?;
    b.require_positive("B")?;
    cover_over_basis(a, Nat::clone, a, b, Profile::Max)
}

/// MinGcd with a fixed set `B`: eliminate `B` and reduce `A_B`, with sets
/// owned directly by elements of `A` (element `a` gets the set of `a_B`).
///
/// Owners are ascending in `A`, so the lexicographically first minimum cover
/// corresponds to the lexicographically first minimum subset of `A`.
pub fn gcd_to_cover_with(a: &NatSet, b: &NatSet) -> Result<(BEliminationMap, CoverReduction)> {
    let elim = eliminate_b(a, b)?;
    let gb = gcd_set(b);
    let red = cover_over_basis(
        a,
        |x| x.gcd(&gb),
        &elim.reduced,
        &NatSet::new(),
        Profile::Min,
    )?;
    Ok((elim, red))
}

/// A set of integers produced from a cover instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReverseReduction {
    #[serde(rename = "A")]
    pub a: NatSet,
    /// `owners[k]` is the index of the cover set that produced the k-th
    /// (ascending) element of `a`.
    pub owners: Vec<usize>,
    /// `lcm(A)` or `gcd(A)` that a covering subset must reach.
    pub target: Nat,
}

impl ReverseReduction {
    /// The cover sets behind a subset of `a`.
    pub fn sets_of(&self, s: &NatSet) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .a
            .iter()
            .zip(&self.owners)
            .filter(|(x, _)| s.contains(x))
            .map(|(_, &i)| i)
            .collect();
        out.sort_unstable();
        out
    }
}

fn prime_products(inst: &CoverInstance) -> Result<(Vec<Nat>, Nat)> {
    inst.check_feasible()?;
    let primes: Vec<Nat> = first_primes(inst.universe_size())
        .into_iter()
        .map(Nat::from)
        .collect();
    let products = inst
        .sets()
        .iter()
        .map(|s| s.iter().map(|&j| &primes[j]).product())
        .collect();
    Ok((products, primes.iter().product()))
}

fn collect_reverse(values: Vec<Nat>, target: Nat) -> ReverseReduction {
    let mut owner_of: BTreeMap<Nat, usize> = BTreeMap::new();
    for (i, v) in values.into_iter().enumerate() {
        owner_of.entry(v).or_insert(i);
    }
    ReverseReduction {
        a: owner_of.keys().collect(),
        owners: owner_of.into_values().collect(),
        target,
    }
}

/// MinCover → MaxLcm: `a_i = prod_{j ∈ C_i} p_j` with `p_j` the j-th prime.
/// Equal sets collapse to one element owned by the lowest set index.
pub fn cover_to_lcm(inst: &CoverInstance) -> Result<ReverseReduction> {
    let (products, full) = prime_products(inst)?;
    Ok(collect_reverse(products, full))
}

/// MinCover → MinGcd: `a_i = a / prod_{j ∈ C_i} p_j` where `a` is the
/// product of all `|X|` primes, so `gcd(S) = 1` iff the sets of `S` cover.
pub fn cover_to_gcd(inst: &CoverInstance) -> Result<ReverseReduction> {
    let (products, full) = prime_products(inst)?;
    let values = products
        .into_iter()
        .map(|p| Nat::from(full.as_big() / p.as_big()))
        .collect();
    Ok(collect_reverse(values, Nat::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{input_size, lcm_set};
    use crate::setcover::exact_cover;
    use proptest::prelude::*;

    fn set(v: &[u64]) -> NatSet {
        NatSet::from_u64s(v.iter().copied())
    }

    fn nats(v: &[u64]) -> Vec<Nat> {
        v.iter().map(|&x| Nat::from(x)).collect()
    }

    fn n(x: u64) -> Nat {
        Nat::from(x)
    }

    /// Smallest nonempty `S ⊆ A` with gcd(S) = gcd(A) or lcm(S) = lcm(A).
    fn brute_opt(a: &NatSet, lcm: bool) -> usize {
        let v = a.to_vec();
        let target = if lcm { lcm_set(a).unwrap() } else { gcd_set(a) };
        (1..=v.len())
            .find(|&k| {
                itertools::Itertools::combinations(v.iter(), k).any(|c| {
                    let s: NatSet = c.into_iter().collect();
                    let val = if lcm {
                        lcm_set(&s).unwrap()
                    } else {
                        gcd_set(&s)
                    };
                    val == target
                })
            })
            .unwrap()
    }

    fn cover(n: usize, sets: &[&[usize]]) -> CoverInstance {
        CoverInstance::new(n, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn eliminate_examples() {
        let m = eliminate_b(&set(&[4, 6]), &set(&[10])).unwrap();
        assert_eq!(m.reduced, set(&[2]));
        assert_eq!(m.section[&n(2)], n(4));

        let m = eliminate_b(&set(&[4, 6]), &set(&[])).unwrap();
        assert_eq!(m.reduced, set(&[4, 6]));
        assert_eq!(m.section[&n(4)], n(4));
        assert_eq!(m.section[&n(6)], n(6));

        let m = eliminate_b(&set(&[6, 10, 15]), &set(&[4])).unwrap();
        assert_eq!(m.reduced, set(&[1, 2]));
        assert_eq!(m.section[&n(2)], n(6));
        assert_eq!(m.section[&n(1)], n(15));

        assert!(eliminate_b(&set(&[]), &set(&[3])).is_err());
    }

    #[test]
    fn lcm_to_cover_examples() {
        let r = lcm_to_cover(&set(&[4, 6, 9])).unwrap();
        assert_eq!(r.universe_labels, nats(&[2, 3]));
        assert_eq!(r.cover.sets(), &[vec![0], vec![], vec![1]]);
        assert_eq!(r.set_owners, nats(&[4, 6, 9]));
        let s = exact_cover(&r.cover).unwrap();
        assert_eq!(r.owners_of(&s.chosen), set(&[4, 9]));

        let r = lcm_to_cover(&set(&[6])).unwrap();
        assert_eq!(r.universe_labels, nats(&[6]));
        assert_eq!(r.cover.sets(), &[vec![0]]);

        let r = lcm_to_cover(&set(&[2, 4])).unwrap();
        assert_eq!(r.universe_labels, nats(&[2]));
        assert_eq!(r.cover.sets(), &[vec![], vec![0]]);
        let s = exact_cover(&r.cover).unwrap();
        assert_eq!(r.owners_of(&s.chosen), set(&[4]));

        assert!(lcm_to_cover(&set(&[0, 2])).is_err());
    }

    #[test]
    fn gcd_to_cover_examples() {
        let r = gcd_to_cover(&set(&[6, 10, 15])).unwrap();
        assert_eq!(r.universe_labels, nats(&[2, 3, 5]));
        assert_eq!(r.cover.sets(), &[vec![2], vec![1], vec![0]]);
        assert_eq!(exact_cover(&r.cover).unwrap().size(), 3);

        let r = gcd_to_cover(&set(&[6, 12])).unwrap();
        assert_eq!(r.universe_labels, nats(&[2, 3]));
        assert_eq!(r.cover.sets(), &[vec![0, 1], vec![1]]);
        let s = exact_cover(&r.cover).unwrap();
        assert_eq!(r.owners_of(&s.chosen), set(&[6]));

        let r = gcd_to_cover(&set(&[4, 9])).unwrap();
        assert_eq!(r.universe_labels, nats(&[4, 9]));
        assert_eq!(r.cover.sets(), &[vec![1], vec![0]]);
        assert_eq!(exact_cover(&r.cover).unwrap().size(), 2);
    }

    #[test]
    fn duplicate_sets_keep_smallest_owner() {
        // 2 and 8 both fail to attain d(2) = 4 and share the empty set
        let r = lcm_to_cover(&set(&[2, 8, 16])).unwrap();
        assert_eq!(r.set_owners, nats(&[2, 16]));
        assert_eq!(r.cover.sets(), &[vec![], vec![0]]);
    }

    #[test]
    fn lcm_with_fixed_set_precovers() {
        // B = {8} attains 2^3, so only the 3-part remains
        let r = lcm_to_cover_with(&set(&[4, 6, 9]), &set(&[8])).unwrap();
        assert_eq!(r.universe_labels, nats(&[3]));
        assert_eq!(r.cover.sets(), &[vec![], vec![0]]);
        assert_eq!(r.set_owners, nats(&[4, 9]));
    }

    #[test]
    fn gcd_with_fixed_set_lifts_owners() {
        let (elim, r) = gcd_to_cover_with(&set(&[6, 10, 15]), &set(&[4])).unwrap();
        assert_eq!(elim.reduced, set(&[1, 2]));
        // 6 and 10 both map to 2 and share the empty set
        assert_eq!(r.set_owners, nats(&[6, 15]));
        assert_eq!(r.cover.sets(), &[vec![], vec![0]]);
    }

    #[test]
    fn cover_to_lcm_examples() {
        let r = cover_to_lcm(&cover(3, &[&[0, 1], &[1, 2], &[2]])).unwrap();
        assert_eq!(r.a, set(&[5, 6, 15]));
        assert_eq!(r.owners, vec![2, 0, 1]);
        assert_eq!(r.target, n(30));
        assert_eq!(lcm_set(&r.a).unwrap(), r.target);

        assert_eq!(cover_to_lcm(&cover(1, &[&[0]])).unwrap().a, set(&[2]));
        assert_eq!(
            cover_to_lcm(&cover(2, &[&[0], &[1]])).unwrap().a,
            set(&[2, 3])
        );
        assert_eq!(
            cover_to_lcm(&cover(2, &[&[0]])),
            Err(Error::Uncoverable { element: 1 })
        );
    }

    #[test]
    fn cover_to_gcd_examples() {
        let r = cover_to_gcd(&cover(3, &[&[0, 1], &[1, 2]])).unwrap();
        assert_eq!(r.a, set(&[2, 5]));
        assert_eq!(gcd_set(&r.a), n(1));
        assert_eq!(brute_opt(&r.a, false), 2);

        assert_eq!(cover_to_gcd(&cover(1, &[&[0]])).unwrap().a, set(&[1]));
        assert_eq!(cover_to_gcd(&cover(2, &[&[0, 1]])).unwrap().a, set(&[1]));
        assert!(cover_to_gcd(&cover(2, &[&[1]])).is_err());
    }

    #[test]
    fn sets_of_maps_back() {
        let r = cover_to_lcm(&cover(3, &[&[0, 1], &[1, 2], &[2]])).unwrap();
        assert_eq!(r.sets_of(&set(&[6, 5])), vec![0, 2]);
    }

    fn arb_set() -> impl Strategy<Value = NatSet> {
        prop::collection::vec(1u64..=10_000, 1..=8).prop_map(|v| set(&v))
    }

    fn arb_cover() -> impl Strategy<Value = CoverInstance> {
        (1usize..=6).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(0..n, 1..=n), 1..=6).prop_map(
                move |mut sets| {
                    // make it feasible
                    sets.push((0..n).step_by(2).collect());
                    sets.push((1..n).step_by(2).collect());
                    sets.retain(|s| !s.is_empty());
                    CoverInstance::new(n, sets).unwrap()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn section_property(a in arb_set(), b in prop::collection::vec(1u64..=10_000, 0..=3)) {
            let b = set(&b);
            let m = eliminate_b(&a, &b).unwrap();
            for (v, rep) in &m.section {
                prop_assert!(a.contains(rep));
                let mut one = b.clone();
                one.insert(rep.clone());
                prop_assert_eq!(&gcd_set(&one), v);
            }
            prop_assert_eq!(gcd_set(&a.union(&b)), gcd_set(&m.reduced));
        }

        #[test]
        fn forward_value_preservation(a in arb_set()) {
            let g = gcd_to_cover(&a).unwrap();
            let l = lcm_to_cover(&a).unwrap();
            // an empty universe still needs one element (S must be nonempty)
            let gk = exact_cover(&g.cover).unwrap().size().max(1);
            let lk = exact_cover(&l.cover).unwrap().size().max(1);
            prop_assert_eq!(gk, brute_opt(&a, false));
            prop_assert_eq!(lk, brute_opt(&a, true));
            let distinct: HashSet<_> = g.cover.sets().iter().collect();
            prop_assert_eq!(distinct.len(), g.cover.sets().len());
        }

        #[test]
        fn backward_value_preservation(c in arb_cover()) {
            let k = exact_cover(&c).unwrap().size();
            let l = cover_to_lcm(&c).unwrap();
            let g = cover_to_gcd(&c).unwrap();
            prop_assert_eq!(brute_opt(&l.a, true), k);
            prop_assert_eq!(brute_opt(&g.a, false), k);
            prop_assert_eq!(lcm_set(&l.a).unwrap(), l.target.clone());
            // round trip through the forward reduction
            let back = lcm_to_cover(&l.a).unwrap();
            prop_assert_eq!(exact_cover(&back.cover).unwrap().size(), k);
            // bit size O(l m log m)
            let (sets, m) = (c.sets().len() as f64, c.universe_size() as f64);
            let bits = input_size(&l.a, &NatSet::new()) as f64;
            prop_assert!(bits <= 4.0 * sets * m * (m + 2.0).log2());
        }
    }
}
