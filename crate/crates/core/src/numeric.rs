//! Arbitrary-precision naturals, finite sets of them, and the handful of
//! number-theoretic helpers shared across the crate.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonnegative integer of unbounded size.
///
/// Serializes as a decimal string so that JSON payloads never lose precision.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Nat(BigUint);

impl Nat {
    pub fn zero() -> Self {
        Nat(BigUint::zero())
    }

    pub fn one() -> Self {
        Nat(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn as_big(&self) -> &BigUint {
        &self.0
    }

    pub fn into_big(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Bit length, i.e. `ceil(log2(self + 1))`.
    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn gcd(&self, other: &Nat) -> Nat {
        Nat(self.0.gcd(&other.0))
    }

    pub fn lcm(&self, other: &Nat) -> Nat {
        Nat(self.0.lcm(&other.0))
    }

    pub fn divides(&self, other: &Nat) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        (&other.0 % &self.0).is_zero()
    }

    pub fn pow(&self, exp: u32) -> Nat {
        Nat(self.0.pow(exp))
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat(BigUint::from(v))
    }
}

impl From<BigUint> for Nat {
    fn from(v: BigUint) -> Self {
        Nat(v)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Nat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::domain(format!(
                "{s:?} is not a nonnegative decimal integer"
            )));
        }
        // Only ASCII digits reach here, so parsing cannot fail.
        Ok(Nat(BigUint::parse_bytes(t.as_bytes(), 10).expect("digits")))
    }
}

impl Serialize for Nat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Nat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl std::iter::Product for Nat {
    fn product<I: Iterator<Item = Nat>>(iter: I) -> Nat {
        Nat(iter.map(|n| n.0).product())
    }
}

impl<'a> std::iter::Product<&'a Nat> for Nat {
    fn product<I: Iterator<Item = &'a Nat>>(iter: I) -> Nat {
        Nat(iter.map(|n| &n.0).product())
    }
}

/// A finite, duplicate-free set of naturals, always iterated in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NatSet(BTreeSet<Nat>);

impl NatSet {
    pub fn new() -> Self {
        NatSet(BTreeSet::new())
    }

    pub fn from_u64s(values: impl IntoIterator<Item = u64>) -> Self {
        values.into_iter().map(Nat::from).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, n: &Nat) -> bool {
        self.0.contains(n)
    }

    pub fn insert(&mut self, n: Nat) -> bool {
        self.0.insert(n)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Nat> + ExactSizeIterator {
        self.0.iter()
    }

    pub fn first(&self) -> Option<&Nat> {
        self.0.first()
    }

    pub fn union(&self, other: &NatSet) -> NatSet {
        NatSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &NatSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Fails with a domain error if any element is zero.
    pub fn require_positive(&self, what: &str) -> Result<()> {
        match self.0.first() {
            Some(n) if n.is_zero() => Err(Error::domain(format!("{what} contains 0"))),
            _ => Ok(()),
        }
    }

    pub fn to_vec(&self) -> Vec<Nat> {
        self.0.iter().cloned().collect()
    }
}

impl FromIterator<Nat> for NatSet {
    fn from_iter<I: IntoIterator<Item = Nat>>(iter: I) -> Self {
        NatSet(iter.into_iter().collect())
    }
}

impl<'a> FromIterator<&'a Nat> for NatSet {
    fn from_iter<I: IntoIterator<Item = &'a Nat>>(iter: I) -> Self {
        NatSet(iter.into_iter().cloned().collect())
    }
}

impl IntoIterator for NatSet {
    type Item = Nat;
    type IntoIter = std::collections::btree_set::IntoIter<Nat>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a NatSet {
    type Item = &'a Nat;
    type IntoIter = std::collections::btree_set::Iter<'a, Nat>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for NatSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter())
    }
}

impl<'de> Deserialize<'de> for NatSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(Vec::<Nat>::deserialize(deserializer)?.into_iter().collect())
    }
}

/// gcd of all elements of an iterator; 0 when empty.
pub fn gcd_all<'a>(items: impl IntoIterator<Item = &'a Nat>) -> Nat {
    let mut acc = BigUint::zero();
    for n in items {
        acc = acc.gcd(&n.0);
        if acc.is_one() {
            break;
        }
    }
    Nat(acc)
}

/// lcm of all elements of an iterator; 1 when empty. Elements must be positive.
pub fn lcm_all<'a>(items: impl IntoIterator<Item = &'a Nat>) -> Result<Nat> {
    let mut acc = BigUint::one();
    for n in items {
        if n.is_zero() {
            return Err(Error::domain("lcm of a set containing 0"));
        }
        acc = acc.lcm(&n.0);
    }
    Ok(Nat(acc))
}

pub fn gcd_set(s: &NatSet) -> Nat {
    gcd_all(s)
}

pub fn lcm_set(s: &NatSet) -> Result<Nat> {
    lcm_all(s)
}

/// The first `m` primes in increasing order.
///
/// The sieve is sized from Rosser's bound `p_m < m (ln m + ln ln m)` (valid
/// for `m >= 6`) and doubled whenever it comes up short.
pub fn first_primes(m: usize) -> Vec<u64> {
    if m == 0 {
        return Vec::new();
    }
    let mut limit = if m < 6 {
        13
    } else {
        let mf = m as f64;
        (mf * (mf.ln() + mf.ln().ln())).ceil() as usize + 1
    };
    loop {
        let primes = sieve(limit);
        if primes.len() >= m {
            return primes.into_iter().take(m).collect();
        }
        limit *= 2;
    }
}

/// All primes `<= limit` by the sieve of Eratosthenes.
fn sieve(limit: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Input size: the summed bit length of the elements of `a ∪ b`, each
/// counted once.
pub fn input_size(a: &NatSet, b: &NatSet) -> u64 {
    a.union(b).iter().map(Nat::bits).sum()
}
