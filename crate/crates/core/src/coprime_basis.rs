//! Coprime (gcd-free) bases by pairwise refinement.
//!
//! A coprime basis of a set `A` of positive integers is a list of pairwise
//! coprime integers `p >= 2` such that every `a` in `A` is exactly a product
//! of powers of them. Basis elements need not be prime: `{4, 9}` is already
//! its own basis. The construction here is the classical quadratic one.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{Nat, NatSet};

/// Which exponent statistic to take per basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// `d(p) = max_a e(a, p)`; `prod p^d(p)` is the lcm of the source.
    Max,
    /// `g(p) = min_a e(a, p)`; `prod p^g(p)` is the gcd of the source.
    Min,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoprimeBasis {
    source: NatSet,
    basis: Vec<Nat>,
    /// `exponents[i][j]` is the multiplicity of `basis[j]` in the i-th
    /// source element (ascending source order).
    exponents: Vec<Vec<u32>>,
}

impl CoprimeBasis {
    pub fn source(&self) -> &NatSet {
        &self.source
    }

    /// Basis elements, ascending.
    pub fn basis(&self) -> &[Nat] {
        &self.basis
    }

    /// Exponent rows aligned with the ascending iteration order of `source`.
    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// The exponent row of `a`, if `a` is in the source set.
    pub fn row(&self, a: &Nat) -> Option<&[u32]> {
        self.source
            .iter()
            .position(|x| x == a)
            .map(|i| self.exponents[i].as_slice())
    }

    /// Per-basis-element maximum or minimum exponent over the source set.
    pub fn profile(&self, stat: Profile) -> Result<Vec<u32>> {
        exponent_profile(self, stat)
    }
}

/// Computes a coprime basis of `a` with its exponent matrix.
///
/// Deterministic: the basis comes out ascending and the refinement always
/// splits the first coprime-violating pair in ascending order.
pub fn compute_basis(a: &NatSet) -> Result<CoprimeBasis> {
    a.require_positive("input set")?;

    let mut work: BTreeSet<BigUint> = a
        .iter()
        .filter(|n| !n.is_one())
        .map(|n| n.as_big().clone())
        .collect();

    loop {
        refine(&mut work);
        let basis: Vec<BigUint> = work.iter().cloned().collect();
        let mut exponents = Vec::with_capacity(a.len());
        let mut residuals = Vec::new();
        for n in a.iter() {
            let (row, rest) = factor_over(n.as_big(), &basis);
            if !rest.is_one() {
                residuals.push(rest);
            }
            exponents.push(row);
        }
        if residuals.is_empty() {
            return Ok(CoprimeBasis {
                source: a.clone(),
                basis: basis.into_iter().map(Nat::from).collect(),
                exponents,
            });
        }
        // Not reachable for a correct refinement; reinsert and go again.
        work.extend(residuals);
    }
}

/// Refines `work` in place until its elements are pairwise coprime.
///
/// Each step replaces the first pair `p < q` with `h = gcd(p, q) > 1` by
/// `p/h, q/h, h`, dropping ones and merging equal values. The product of the
/// working set strictly drops with each step, so this terminates.
fn refine(work: &mut BTreeSet<BigUint>) {
    while let Some((p, q, h)) = first_shared_pair(work) {
        work.remove(&p);
        work.remove(&q);
        for x in [&p / &h, &q / &h, h] {
            if !x.is_one() {
                work.insert(x);
            }
        }
    }
}

fn first_shared_pair(work: &BTreeSet<BigUint>) -> Option<(BigUint, BigUint, BigUint)> {
    let items: Vec<&BigUint> = work.iter().collect();
    for (i, p) in items.iter().enumerate() {
        for q in &items[i + 1..] {
            let h = p.gcd(q);
            if !h.is_one() {
                return Some(((*p).clone(), (*q).clone(), h));
            }
        }
    }
    None
}

/// Divides `n` by each basis element as often as possible. Returns the
/// exponent row and whatever is left over.
fn factor_over(n: &BigUint, basis: &[BigUint]) -> (Vec<u32>, BigUint) {
    let mut rest = n.clone();
    let row = basis
        .iter()
        .map(|p| {
            let mut e = 0;
            loop {
                let (q, r) = rest.div_rem(p);
                if !r.is_zero() {
                    break e;
                }
                rest = q;
                e += 1;
            }
        })
        .collect();
    (row, rest)
}

/// `d(p)` (max) or `g(p)` (min) for every basis element, in basis order.
pub fn exponent_profile(cb: &CoprimeBasis, stat: Profile) -> Result<Vec<u32>> {
    if cb.source.is_empty() {
        return Err(Error::domain("exponent profile of an empty set"));
    }
    let profile = (0..cb.basis.len())
        .map(|j| {
            let column = cb.exponents.iter().map(|row| row[j]);
            match stat {
                Profile::Max => column.max(),
                Profile::Min => column.min(),
            }
            .expect("source is nonempty")
        })
        .collect();
    Ok(profile)
}

/// `prod_j basis[j]^exps[j]`.
pub fn evaluate(basis: &[Nat], exps: &[u32]) -> Nat {
    basis.iter().zip(exps).map(|(p, &e)| p.pow(e)).product()
}
