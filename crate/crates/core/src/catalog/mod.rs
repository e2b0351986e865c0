//! Provenance-tracked table of almost simple groups, supplying the three
//! attributes the rank formulas consume: socle order, abelianization, and
//! generator rank.

mod builtin;
mod gf;

use crate::abelian::{is_prime, AbelianGroup};
use crate::error::{Error, Result};
use crate::permgrp::Permutation;
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

/// An almost simple group G with socle S: everything the formulas need,
/// plus a small permutation model of G when one is shipped (degree <= 50).
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub socle_name: String,
    pub socle_order: BigUint,
    /// Symbolic order formula kept for audit; the numeric value is what the
    /// divisibility tests use.
    pub order_formula: String,
    pub abelianization: AbelianGroup,
    pub rank: u32,
    pub simple: bool,
    pub provenance: String,
    pub(crate) model: Option<Vec<Permutation>>,
}

impl CatalogEntry {
    /// |G| = |S| * |G/G'|; exact for every shipped entry since G/S is
    /// abelian, which makes G' = S.
    pub fn group_order(&self) -> BigUint {
        &self.socle_order * self.abelianization.order()
    }

    /// Generators of a faithful permutation model of G, when shipped.
    pub fn permutation_model(&self) -> Option<&[Permutation]> {
        self.model.as_deref()
    }

    fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::validation("name", "must be nonempty"));
        }
        if self.socle_order < BigUint::from(60u32) {
            return Err(Error::validation(
                "socle_order",
                format!(
                    "{} is below 60, the smallest non-abelian simple group order",
                    self.socle_order
                ),
            ));
        }
        if !(2..=3).contains(&self.rank) {
            return Err(Error::validation(
                "rank",
                format!("{} is outside the almost-simple range 2..=3", self.rank),
            ));
        }
        if self.simple != self.abelianization.is_trivial() {
            return Err(Error::validation(
                "simple",
                "an entry is simple exactly when its abelianization is trivial",
            ));
        }
        Ok(())
    }
}

/// True iff p divides the socle order, by arbitrary-precision remainder.
/// No factorization of |S| is attempted.
pub fn divides_socle(entry: &CatalogEntry, p: &BigUint) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok((&entry.socle_order % p).is_zero())
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
}

impl Catalog {
    pub fn lookup(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries.get(name).ok_or_else(|| Error::NotFound {
            name: name.to_string(),
            suggestions: self.nearest(name, 3),
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn nearest(&self, name: &str, count: usize) -> Vec<String> {
        let mut scored: Vec<(usize, &String)> = self
            .entries
            .keys()
            .map(|k| (levenshtein(&name.to_lowercase(), &k.to_lowercase()), k))
            .collect();
        scored.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));
        scored
            .into_iter()
            .take(count)
            .map(|(_, k)| k.clone())
            .collect()
    }

    fn insert_new(&mut self, entry: CatalogEntry) -> Result<()> {
        entry.validate()?;
        if self.entries.contains_key(&entry.name) {
            return Err(Error::validation(
                "name",
                format!("duplicate entry `{}`", entry.name),
            ));
        }
        self.entries.insert(entry.name.clone(), entry);
        Ok(())
    }
}

/// The built-in table: A_n and S_n for 5 <= n <= 20 (with the A6 family
/// split into its exceptional extensions), PSL(2,q) and PGL(2,q) for prime
/// powers q <= 49, the 26 sporadic groups, their .2 extensions, and Sz(8).
pub fn builtin() -> Catalog {
    builtin::build()
}

/// JSON file schema for user catalogs.
#[derive(Debug, Serialize, Deserialize)]
struct CatalogFile {
    entries: Vec<FileEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileEntry {
    name: String,
    socle_name: String,
    /// Decimal string, to avoid integer-width limits.
    socle_order: String,
    #[serde(default)]
    order_formula: String,
    abelianization: AbelianGroup,
    rank: u32,
    simple: bool,
    #[serde(default)]
    r#override: bool,
    #[serde(default)]
    provenance: String,
}

/// Loads the built-in table plus user entries from a JSON file. User
/// entries may shadow built-ins only when flagged `"override": true`.
pub fn load(path: &Path) -> Result<Catalog> {
    let text = std::fs::read_to_string(path)?;
    let file: CatalogFile = serde_json::from_str(&text)?;
    let mut catalog = builtin();
    for raw in file.entries {
        let socle_order = BigUint::from_str(&raw.socle_order).map_err(|_| {
            Error::validation(
                "socle_order",
                format!("`{}` is not a decimal integer", raw.socle_order),
            )
        })?;
        let entry = CatalogEntry {
            name: raw.name,
            socle_name: raw.socle_name,
            socle_order,
            order_formula: raw.order_formula,
            abelianization: raw.abelianization,
            rank: raw.rank,
            simple: raw.simple,
            provenance: raw.provenance,
            model: None,
        };
        entry.validate()?;
        let shadows = catalog.entries.contains_key(&entry.name);
        if shadows && !raw.r#override {
            return Err(Error::validation(
                "override",
                format!(
                    "entry `{}` shadows a built-in; set \"override\": true to allow it",
                    entry.name
                ),
            ));
        }
        catalog.entries.insert(entry.name.clone(), entry);
    }
    Ok(catalog)
}

fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let cost = usize::from(ca != cb);
            cur[j + 1] = (prev[j] + cost).min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}
