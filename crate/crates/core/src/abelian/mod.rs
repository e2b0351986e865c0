//! Exact arithmetic on finite abelian groups represented by their
//! invariant-factor chains.

mod factor;
mod matrix;

pub use factor::{factorize, is_prime};
pub use matrix::{smith_normal_form, IntMatrix, SmithNormalForm};

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A finite abelian group as its invariant-factor chain `d_1 | d_2 | ... | d_r`,
/// stored smallest-first with every entry at least 2. The empty chain is the
/// trivial group.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    invariants: Vec<BigUint>,
}

/// Sylow decomposition: for each prime, the exponent sequence of its primary
/// part, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimaryDecomposition {
    pub components: BTreeMap<BigUint, Vec<u32>>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    /// Canonicalizes a direct product of cyclic groups of the given orders
    /// into an invariant-factor chain. Entries equal to 1 are discarded;
    /// nonpositive entries (zero) are rejected.
    pub fn from_orders(orders: &[BigUint]) -> Result<Self> {
        if orders.iter().any(|o| o.is_zero()) {
            return Err(Error::InvalidInput(
                "cyclic factor orders must be at least 1".into(),
            ));
        }
        let mut decomp = PrimaryDecomposition::default();
        for o in orders {
            if o.is_one() {
                continue;
            }
            for (p, e) in factorize(o) {
                decomp.components.entry(p).or_default().push(e);
            }
        }
        for exps in decomp.components.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(Self::from_primary(&decomp))
    }

    /// Convenience constructor from machine integers.
    pub fn from_u64_orders(orders: &[u64]) -> Result<Self> {
        let big: Vec<BigUint> = orders.iter().map(|&o| BigUint::from(o)).collect();
        Self::from_orders(&big)
    }

    /// Rebuilds the invariant chain from a Sylow decomposition by aligning
    /// the largest prime-power exponents into the largest invariant.
    pub fn from_primary(decomp: &PrimaryDecomposition) -> Self {
        let depth = decomp
            .components
            .values()
            .map(|v| v.len())
            .max()
            .unwrap_or(0);
        // slot 0 collects each prime's largest exponent => largest invariant
        let mut invariants = Vec::with_capacity(depth);
        for slot in 0..depth {
            let mut inv = BigUint::one();
            for (p, exps) in &decomp.components {
                if let Some(e) = exps.get(slot) {
                    inv *= p.pow(*e);
                }
            }
            invariants.push(inv);
        }
        invariants.reverse();
        AbelianGroup { invariants }
    }

    /// The group presented by `Z^cols / rowspace(m)`: rows are relations over
    /// `cols` generators. Rejects presentations of infinite groups.
    pub fn from_presentation(m: &IntMatrix) -> Result<Self> {
        let snf = smith_normal_form(m);
        let diag = snf.d.diagonal();
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        if nonzero < m.cols() {
            return Err(Error::InvalidInput(
                "presentation has infinite cokernel".into(),
            ));
        }
        let orders: Vec<BigUint> = diag
            .iter()
            .map(|d| d.to_biguint().expect("diagonal normalized nonnegative"))
            .collect();
        Self::from_orders(&orders)
    }

    pub fn invariants(&self) -> &[BigUint] {
        &self.invariants
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.invariants.iter().product()
    }

    /// d(A): the minimum number of generators, i.e. the chain length.
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// d_p(A): generators required by the Sylow-p subgroup, i.e. the number
    /// of invariants divisible by p. Rejects non-prime p.
    pub fn rank_at_prime(&self, p: &BigUint) -> Result<usize> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(self
            .invariants
            .iter()
            .filter(|inv| (*inv % p).is_zero())
            .count())
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = self.invariants.clone();
        orders.extend_from_slice(&other.invariants);
        Self::from_orders(&orders).expect("invariants are >= 2")
    }

    /// Prime divisors of the group order.
    pub fn primes(&self) -> Vec<BigUint> {
        self.primary_decomposition()
            .components
            .keys()
            .cloned()
            .collect()
    }

    /// The p-primary part. Rejects non-prime p.
    pub fn sylow(&self, p: &BigUint) -> Result<AbelianGroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let decomp = self.primary_decomposition();
        let mut part = PrimaryDecomposition::default();
        if let Some(exps) = decomp.components.get(p) {
            part.components.insert(p.clone(), exps.clone());
        }
        Ok(Self::from_primary(&part))
    }

    pub fn primary_decomposition(&self) -> PrimaryDecomposition {
        let mut decomp = PrimaryDecomposition::default();
        for inv in &self.invariants {
            for (p, e) in factorize(inv) {
                decomp.components.entry(p).or_default().push(e);
            }
        }
        for exps in decomp.components.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        decomp
    }

    /// All abelian isomorphism types of order at most `max`, trivial group
    /// included, ordered by group order.
    pub fn all_types_up_to(max: u64) -> Vec<AbelianGroup> {
        let mut out = vec![AbelianGroup::trivial()];
        for n in 2..=max {
            let mut per_prime: Vec<Vec<PrimaryDecomposition>> = Vec::new();
            for (p, e) in factorize(&BigUint::from(n)) {
                let parts = partitions(e)
                    .into_iter()
                    .map(|part| {
                        let mut d = PrimaryDecomposition::default();
                        d.components.insert(p.clone(), part);
                        d
                    })
                    .collect();
                per_prime.push(parts);
            }
            let mut combos = vec![PrimaryDecomposition::default()];
            for parts in per_prime {
                let mut next = Vec::new();
                for base in &combos {
                    for part in &parts {
                        let mut merged = base.clone();
                        for (p, exps) in &part.components {
                            merged.components.insert(p.clone(), exps.clone());
                        }
                        next.push(merged);
                    }
                }
                combos = next;
            }
            out.extend(combos.iter().map(Self::from_primary));
        }
        out
    }
}

/// Partitions of `e` as descending sequences.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for next in (1..=rest.min(cap)).rev() {
            cur.push(next);
            rec(rest - next, next, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for AbelianGroup {
    /// Renders as `C2 x C12`; the trivial group renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariants.iter().map(|d| format!("C{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Accepts `C2 x C12`, `2,12`, `[2,12]`, and `1` for the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "[]" {
            return Ok(AbelianGroup::trivial());
        }
        let stripped = s.trim_start_matches('[').trim_end_matches(']');
        let raw: Vec<&str> = if stripped.contains('x') {
            stripped.split('x').collect()
        } else {
            stripped.split(',').collect()
        };
        let mut orders = Vec::new();
        for piece in raw {
            let piece = piece.trim().trim_start_matches('C');
            let n = BigUint::from_str(piece)
                .map_err(|_| Error::Parse(format!("bad cyclic order `{piece}` in `{s}`")))?;
            if n.is_zero() {
                return Err(Error::Parse(format!("bad cyclic order `0` in `{s}`")));
            }
            orders.push(n);
        }
        Self::from_orders(&orders)
    }
}

impl Serialize for AbelianGroup {
    /// JSON form is the invariant array, e.g. `[2,12]`; entries too large
    /// for u64 are emitted as decimal strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.invariants.len()))?;
        for inv in &self.invariants {
            match u64::try_from(inv.clone()) {
                Ok(small) => seq.serialize_element(&small)?,
                Err(_) => seq.serialize_element(&inv.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Small(u64),
            Big(String),
        }
        let entries = Vec::<Entry>::deserialize(deserializer)?;
        let mut orders = Vec::with_capacity(entries.len());
        for e in entries {
            match e {
                Entry::Small(n) => orders.push(BigUint::from(n)),
                Entry::Big(s) => orders.push(
                    BigUint::from_str(&s)
                        .map_err(|_| D::Error::custom(format!("bad invariant `{s}`")))?,
                ),
            }
        }
        AbelianGroup::from_orders(&orders).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(orders: &[u64]) -> AbelianGroup {
        AbelianGroup::from_u64_orders(orders).unwrap()
    }

    fn invs(a: &AbelianGroup) -> Vec<u64> {
        a.invariants()
            .iter()
            .map(|v| u64::try_from(v.clone()).unwrap())
            .collect()
    }

    #[test]
    fn normalize_merges_coprime_parts() {
        // CRT: C4 x C6 = C2 x C12 (cross-checked by the exhaustive
        // isomorphism sweep in all_types_up_to below)
        assert_eq!(invs(&ab(&[4, 6])), vec![2, 12]);
        assert_eq!(invs(&ab(&[1, 1])), Vec::<u64>::new());
        assert_eq!(invs(&ab(&[5])), vec![5]);
    }

    #[test]
    fn normalize_rejects_zero() {
        assert!(AbelianGroup::from_u64_orders(&[4, 0]).is_err());
    }

    #[test]
    fn rank_and_prime_rank() {
        assert_eq!(AbelianGroup::trivial().rank(), 0);
        assert_eq!(ab(&[2, 12]).rank(), 2);
        assert_eq!(ab(&[2, 2, 2]).rank(), 3);

        let a = ab(&[2, 12]);
        let p = |n: u64| BigUint::from(n);
        assert_eq!(a.rank_at_prime(&p(2)).unwrap(), 2);
        assert_eq!(a.rank_at_prime(&p(3)).unwrap(), 1);
        assert_eq!(a.rank_at_prime(&p(5)).unwrap(), 0);
        assert!(a.rank_at_prime(&p(4)).is_err());
    }

    #[test]
    fn direct_sum_primes_sylow() {
        assert_eq!(invs(&ab(&[2]).direct_sum(&ab(&[2]))), vec![2, 2]);
        let a = ab(&[2, 12]);
        assert_eq!(
            a.primes(),
            vec![BigUint::from(2u32), BigUint::from(3u32)]
        );
        assert_eq!(invs(&a.sylow(&BigUint::from(2u32)).unwrap()), vec![2, 4]);
        assert_eq!(invs(&a.sylow(&BigUint::from(3u32)).unwrap()), vec![3]);
        assert_eq!(invs(&a.sylow(&BigUint::from(5u32)).unwrap()), Vec::<u64>::new());
    }

    #[test]
    fn primary_roundtrip() {
        for a in AbelianGroup::all_types_up_to(64) {
            let d = a.primary_decomposition();
            assert_eq!(AbelianGroup::from_primary(&d), a);
        }
    }

    #[test]
    fn rank_is_max_prime_rank() {
        for a in AbelianGroup::all_types_up_to(200) {
            let max_dp = a
                .primes()
                .iter()
                .map(|p| a.rank_at_prime(p).unwrap())
                .max()
                .unwrap_or(0);
            assert_eq!(a.rank(), max_dp, "failed for {a}");
        }
    }

    #[test]
    fn type_enumeration_counts() {
        // #types of order p^n is the partition number: 8 -> 3, 16 -> 5
        let all = AbelianGroup::all_types_up_to(16);
        let count = |n: u64| {
            all.iter()
                .filter(|a| a.order() == BigUint::from(n))
                .count()
        };
        assert_eq!(count(8), 3);
        assert_eq!(count(16), 5);
        assert_eq!(count(12), 2);
        assert_eq!(count(7), 1);
        // types are pairwise distinct chains
        let mut seen = std::collections::HashSet::new();
        for a in &all {
            assert!(seen.insert(a.invariants().to_vec()));
        }
    }

    #[test]
    fn presentation_cokernel() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(invs(&AbelianGroup::from_presentation(&m).unwrap()), vec![6]);
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        assert_eq!(
            invs(&AbelianGroup::from_presentation(&m).unwrap()),
            vec![2, 4]
        );
        // rank deficit means an infinite cokernel
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(AbelianGroup::from_presentation(&m).is_err());
    }

    #[test]
    fn render_and_parse() {
        let a = ab(&[2, 12]);
        assert_eq!(a.to_string(), "C2 x C12");
        assert_eq!("C2 x C12".parse::<AbelianGroup>().unwrap(), a);
        assert_eq!("2,12".parse::<AbelianGroup>().unwrap(), a);
        assert_eq!("[2,12]".parse::<AbelianGroup>().unwrap(), a);
        assert_eq!(
            "1".parse::<AbelianGroup>().unwrap(),
            AbelianGroup::trivial()
        );
        assert!("2,x".parse::<AbelianGroup>().is_err());

        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "[2,12]");
        let back: AbelianGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn order_preserved_by_normalization() {
        use num_traits::One;
        let cases: &[&[u64]] = &[&[4, 6], &[2, 2, 2], &[8, 12, 30], &[1, 1], &[9, 27, 4]];
        for orders in cases {
            let a = ab(orders);
            let expect = orders
                .iter()
                .fold(BigUint::one(), |acc, &o| acc * BigUint::from(o));
            assert_eq!(a.order(), expect);
        }
    }
}
