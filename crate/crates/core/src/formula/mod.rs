//! Closed-form minimum-generator computations for regular wreath products:
//! the iterated almost-simple formula, the abelian-by-almost-simple and
//! abelian-by-cyclic cases, and the soluble-top reduction.

use crate::abelian::AbelianGroup;
use crate::catalog::{divides_socle, Catalog, CatalogEntry};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::identities::One;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

pub(crate) fn serialize_biguint<S: Serializer>(
    n: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(n.clone()) {
        Ok(small) => s.serialize_u64(small),
        Err(_) => s.serialize_str(&n.to_string()),
    }
}

/// An iterated regular wreath product `W = G_k wr ... wr G_1` given by its
/// factors; position 0 is G_1, the outermost acting group.
#[derive(Debug, Clone)]
pub struct WreathSpec {
    factors: Vec<CatalogEntry>,
}

impl WreathSpec {
    pub fn new(factors: Vec<CatalogEntry>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput(
                "a wreath spec needs at least one factor".into(),
            ));
        }
        Ok(WreathSpec { factors })
    }

    pub fn from_names(catalog: &Catalog, names: &[String]) -> Result<Self> {
        let factors = names
            .iter()
            .map(|n| catalog.lookup(n).cloned())
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }

    /// G_1 first.
    pub fn factors(&self) -> &[CatalogEntry] {
        &self.factors
    }

    pub fn outer(&self) -> &CatalogEntry {
        &self.factors[0]
    }

    /// G_2 ... G_k (the groups under the top action).
    pub fn inner(&self) -> &[CatalogEntry] {
        &self.factors[1..]
    }
}

impl fmt::Display for WreathSpec {
    /// Renders innermost-first, e.g. `S5 ≀ A5` for factors [A5, S5].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.factors.iter().rev().map(|e| e.name.as_str()).collect();
        write!(f, "{}", names.join(" ≀ "))
    }
}

/// The value of `max_M h_G(M)` over nontrivial irreducible p-modular
/// modules of a fixed group, or the marker that every such module is
/// trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HValue {
    AllTrivial,
    Bounded(u8),
}

/// Supplies `max_M h_G(M)` per prime for a fixed acting group.
pub trait HProvider {
    fn h_max(&self, p: &BigUint) -> Result<HValue>;
    fn label(&self) -> String;
    /// The catalog entry when this provider is the almost-simple socle
    /// dichotomy; enables the theorem-style term breakdown.
    fn socle_dichotomy(&self) -> Option<&CatalogEntry> {
        None
    }
}

/// h = 2 iff p divides the socle order, else 1.
pub struct AlmostSimpleProvider<'a> {
    pub entry: &'a CatalogEntry,
}

impl HProvider for AlmostSimpleProvider<'_> {
    fn h_max(&self, p: &BigUint) -> Result<HValue> {
        Ok(HValue::Bounded(h_max_almost_simple(self.entry, p)?))
    }
    fn label(&self) -> String {
        format!("socle divisibility dichotomy for {}", self.entry.name)
    }
    fn socle_dichotomy(&self) -> Option<&CatalogEntry> {
        Some(self.entry)
    }
}

/// For a cyclic acting group: every p-modular irreducible is trivial
/// exactly when the group is a p-group; otherwise h = 1. This rule is
/// derived for oracle testing, not part of the almost-simple theory, and is
/// labeled as such in output.
pub struct CyclicProvider {
    pub order: BigUint,
}

impl HProvider for CyclicProvider {
    fn h_max(&self, p: &BigUint) -> Result<HValue> {
        if !crate::abelian::is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let mut rest = self.order.clone();
        while (&rest % p).is_zero() {
            rest /= p;
        }
        if rest.is_one() {
            Ok(HValue::AllTrivial)
        } else {
            Ok(HValue::Bounded(1))
        }
    }
    fn label(&self) -> String {
        format!("cyclic-group rule for C{} (derived, oracle-validated)", self.order)
    }
}

/// The acting group of a regular wreath product: an almost simple catalog
/// entry or a cyclic group used by the oracle suites.
#[derive(Clone)]
pub enum ActingGroup<'a> {
    AlmostSimple(&'a CatalogEntry),
    Cyclic(BigUint),
}

impl ActingGroup<'_> {
    pub fn order(&self) -> BigUint {
        match self {
            ActingGroup::AlmostSimple(e) => e.group_order(),
            ActingGroup::Cyclic(n) => n.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            ActingGroup::AlmostSimple(e) => e.rank as usize,
            ActingGroup::Cyclic(n) => usize::from(!n.is_one()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ActingGroup::AlmostSimple(e) => e.name.clone(),
            ActingGroup::Cyclic(n) => format!("C{n}"),
        }
    }

    /// d(A x G) together with a note naming the method.
    fn d_direct(&self, a: &AbelianGroup) -> (usize, String) {
        match self {
            ActingGroup::AlmostSimple(e) => (
                d_direct_abelian_almost_simple(a, e),
                "direct term d(AxG) = max(d(G), max_p(d_p(A)+d_p(G/G')))".into(),
            ),
            ActingGroup::Cyclic(n) => {
                let sum = a.direct_sum(
                    &AbelianGroup::from_orders(std::slice::from_ref(n)).expect("n >= 1"),
                );
                (sum.rank(), "direct term d(AxCn) = invariant count of AxCn".into())
            }
        }
    }

    pub fn default_provider(&self) -> Box<dyn HProvider + '_> {
        match self {
            ActingGroup::AlmostSimple(e) => Box::new(AlmostSimpleProvider { entry: e }),
            ActingGroup::Cyclic(n) => Box::new(CyclicProvider { order: n.clone() }),
        }
    }
}

/// Every term of the maximum behind a computed d, plus which terms attain
/// it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankBreakdown {
    pub d: usize,
    pub term_direct: usize,
    pub term_da_plus_1: Option<usize>,
    /// For the almost-simple dichotomy: d_p(A)+2 keyed by the primes
    /// dividing both |A| and |S|. For other providers: the value of rho_p
    /// per prime dividing |A|.
    pub prime_terms: BTreeMap<BigUint, usize>,
    /// All maximal terms, ordered (direct, dA+1, primes ascending).
    pub attained_by: Vec<String>,
    pub a: AbelianGroup,
    pub method_notes: Vec<String>,
}

impl RankBreakdown {
    fn assemble(
        term_direct: usize,
        term_da_plus_1: Option<usize>,
        prime_terms: BTreeMap<BigUint, usize>,
        a: AbelianGroup,
        method_notes: Vec<String>,
    ) -> RankBreakdown {
        let mut d = term_direct;
        if let Some(t) = term_da_plus_1 {
            d = d.max(t);
        }
        for &t in prime_terms.values() {
            d = d.max(t);
        }
        let mut attained_by = Vec::new();
        if term_direct == d {
            attained_by.push("direct".to_string());
        }
        if term_da_plus_1 == Some(d) {
            attained_by.push("dA_plus_1".to_string());
        }
        for (p, &t) in &prime_terms {
            if t == d {
                attained_by.push(format!("p={p}"));
            }
        }
        RankBreakdown {
            d,
            term_direct,
            term_da_plus_1,
            prime_terms,
            attained_by,
            a,
            method_notes,
        }
    }

    /// One-line rendering of the terms, e.g. `direct=2 dA+1=2 p=2:3`.
    pub fn term_summary(&self) -> String {
        let mut parts = vec![format!("direct={}", self.term_direct)];
        if let Some(t) = self.term_da_plus_1 {
            parts.push(format!("dA+1={t}"));
        }
        for (p, t) in &self.prime_terms {
            parts.push(format!("p={p}:{t}"));
        }
        parts.join(" ")
    }
}

impl Serialize for RankBreakdown {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Terms {
            direct: usize,
            #[serde(rename = "dA_plus_1")]
            da_plus_1: Option<usize>,
            primes: BTreeMap<String, usize>,
        }
        let mut state = serializer.serialize_struct("RankBreakdown", 5)?;
        state.serialize_field("d", &self.d)?;
        state.serialize_field(
            "terms",
            &Terms {
                direct: self.term_direct,
                da_plus_1: self.term_da_plus_1,
                primes: self
                    .prime_terms
                    .iter()
                    .map(|(p, t)| (p.to_string(), *t))
                    .collect(),
            },
        )?;
        state.serialize_field("attained_by", &self.attained_by)?;
        state.serialize_field("A", &self.a)?;
        state.serialize_field("method_notes", &self.method_notes)?;
        state.end()
    }
}

/// Direct sum of the stored abelianizations of the factors below the top
/// action, normalized. An empty slice (k = 1) gives the trivial group.
pub fn sequence_abelianization(inner_factors: &[CatalogEntry]) -> AbelianGroup {
    inner_factors
        .iter()
        .fold(AbelianGroup::trivial(), |acc, e| {
            acc.direct_sum(&e.abelianization)
        })
}

/// max_M h_G(M) for almost simple G: 2 iff p divides |S|, else 1.
pub fn h_max_almost_simple(g: &CatalogEntry, p: &BigUint) -> Result<u8> {
    Ok(if divides_socle(g, p)? { 2 } else { 1 })
}

/// rho_p = max_M h_G(M) + d_p(A), or 0 when every p-modular irreducible is
/// trivial. Requires p | |A|.
pub fn rho_p(a: &AbelianGroup, p: &BigUint, provider: &dyn HProvider) -> Result<usize> {
    if !crate::abelian::is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if !(a.order() % p).is_zero() {
        return Err(Error::InvalidInput(format!(
            "prime {p} does not divide |A| = {}",
            a.order()
        )));
    }
    Ok(match provider.h_max(p)? {
        HValue::AllTrivial => 0,
        HValue::Bounded(h) => h as usize + a.rank_at_prime(p)?,
    })
}

/// d(A x G) for abelian A and almost simple G, as
/// max(d(G), max_p(d_p(A) + d_p(G/G'))). The published theory consumes this
/// quantity without defining it; this closed form is validated against
/// exhaustive search in the verification suites.
pub fn d_direct_abelian_almost_simple(a: &AbelianGroup, g: &CatalogEntry) -> usize {
    let mut best = g.rank as usize;
    for p in a.primes() {
        let dp = a.rank_at_prime(&p).expect("primes(A) yields primes");
        let dp_g = g
            .abelianization
            .rank_at_prime(&p)
            .expect("primes(A) yields primes");
        best = best.max(dp + dp_g);
    }
    best
}

/// d(A wr G) for the regular action: max over p | |A| of d(A x G) and
/// rho_p. With the almost-simple provider the breakdown is reported in the
/// closed form max_q(d(A x G), d(A)+1, d_q(A)+2) with q ranging over the
/// primes dividing both |A| and |S|.
pub fn d_abelian_wr_regular(
    a: &AbelianGroup,
    acting: &ActingGroup,
    provider: &dyn HProvider,
) -> Result<RankBreakdown> {
    let (term_direct, direct_note) = acting.d_direct(a);
    let mut notes = vec![direct_note, format!("h provider: {}", provider.label())];
    if a.is_trivial() {
        notes.push("trivial A: wreath product collapses to the acting group".into());
        return Ok(RankBreakdown::assemble(
            term_direct,
            None,
            BTreeMap::new(),
            a.clone(),
            notes,
        ));
    }
    match provider.socle_dichotomy() {
        Some(entry) => {
            let mut prime_terms = BTreeMap::new();
            for q in a.primes() {
                if divides_socle(entry, &q)? {
                    prime_terms.insert(q.clone(), a.rank_at_prime(&q)? + 2);
                }
            }
            Ok(RankBreakdown::assemble(
                term_direct,
                Some(a.rank() + 1),
                prime_terms,
                a.clone(),
                notes,
            ))
        }
        None => {
            let mut prime_terms = BTreeMap::new();
            for p in a.primes() {
                prime_terms.insert(p.clone(), rho_p(a, &p, provider)?);
            }
            notes.push("prime terms are rho_p values".into());
            Ok(RankBreakdown::assemble(
                term_direct,
                None,
                prime_terms,
                a.clone(),
                notes,
            ))
        }
    }
}

/// d(W) for an iterated regular wreath product of almost simple groups:
/// rank(G_1) when k = 1, otherwise the closed form over
/// A = (G_k/G_k') x ... x (G_2/G_2') with q ranging over primes dividing
/// both |A| and |socle(G_1)|.
pub fn d_iterated(spec: &WreathSpec) -> Result<RankBreakdown> {
    let g1 = spec.outer();
    let a = sequence_abelianization(spec.inner());
    let provider = AlmostSimpleProvider { entry: g1 };
    let breakdown = d_abelian_wr_regular(&a, &ActingGroup::AlmostSimple(g1), &provider)?;
    debug_assert!(breakdown.d >= 2);
    debug_assert!(breakdown.d >= a.rank());
    Ok(breakdown)
}

/// d(H wr G) for soluble H over the regular action of G:
/// max(d(H/H' wr G), floor((d(H)-2)/|G|) + 2).
pub fn d_soluble_wr_regular(
    d_h: usize,
    h_ab: &AbelianGroup,
    acting: &ActingGroup,
    provider: &dyn HProvider,
) -> Result<usize> {
    if d_h == 0 {
        return Err(Error::InvalidInput(
            "soluble top group must need at least one generator".into(),
        ));
    }
    if d_h < h_ab.rank() {
        return Err(Error::InvalidInput(format!(
            "d(H) = {d_h} is below d(H/H') = {}",
            h_ab.rank()
        )));
    }
    let n = acting.order();
    if n < BigUint::from(2u32) {
        return Err(Error::InvalidInput(
            "the regular acting group must have order at least 2".into(),
        ));
    }
    let abelian_part = d_abelian_wr_regular(h_ab, acting, provider)?.d;
    let floor_term = if d_h >= 2 {
        let quotient = BigUint::from(d_h - 2) / &n;
        usize::try_from(quotient).expect("floor term fits usize") + 2
    } else {
        // floor((1-2)/n) = -1 for n >= 2
        1
    };
    Ok(abelian_part.max(floor_term))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn ab(orders: &[u64]) -> AbelianGroup {
        AbelianGroup::from_u64_orders(orders).unwrap()
    }

    #[test]
    fn sequence_abelianization_cases() {
        let c = builtin();
        let s5 = c.lookup("S5").unwrap().clone();
        let a5 = c.lookup("A5").unwrap().clone();
        assert_eq!(sequence_abelianization(&[s5.clone()]), ab(&[2]));
        assert!(sequence_abelianization(&[a5.clone(), a5.clone()]).is_trivial());
        assert_eq!(sequence_abelianization(&[s5.clone(), s5]), ab(&[2, 2]));
        assert!(sequence_abelianization(&[]).is_trivial());
    }

    #[test]
    fn h_max_dichotomy() {
        let c = builtin();
        let a5 = c.lookup("A5").unwrap();
        assert_eq!(h_max_almost_simple(a5, &big(2)).unwrap(), 2); // 2 | 60
        assert_eq!(h_max_almost_simple(a5, &big(7)).unwrap(), 1); // 7 does not divide 60
        let psl27 = c.lookup("PSL2_7").unwrap();
        assert_eq!(h_max_almost_simple(psl27, &big(3)).unwrap(), 2); // 3 | 168
        assert!(h_max_almost_simple(a5, &big(6)).is_err());
    }

    #[test]
    fn rho_p_cases() {
        let c = builtin();
        let a5 = c.lookup("A5").unwrap();
        let asp = AlmostSimpleProvider { entry: a5 };
        // h = 2 plus d_2(C2) = 1
        assert_eq!(rho_p(&ab(&[2]), &big(2), &asp).unwrap(), 3);

        let c2 = CyclicProvider { order: big(2) };
        // C2 is a 2-group: every 2-modular irreducible is trivial
        assert_eq!(rho_p(&ab(&[2]), &big(2), &c2).unwrap(), 0);
        // over C6 = A with p = 3: h = 1 plus d_3 = 1
        assert_eq!(rho_p(&ab(&[6]), &big(3), &c2).unwrap(), 2);
        // p must divide |A|
        assert!(rho_p(&ab(&[2]), &big(3), &c2).is_err());
    }

    #[test]
    fn direct_term_cases() {
        let c = builtin();
        let a5 = c.lookup("A5").unwrap();
        let s5 = c.lookup("S5").unwrap();
        let m11 = c.lookup("M11").unwrap();
        assert_eq!(d_direct_abelian_almost_simple(&ab(&[2]), a5), 2);
        assert_eq!(d_direct_abelian_almost_simple(&ab(&[2, 2]), s5), 3);
        assert_eq!(d_direct_abelian_almost_simple(&AbelianGroup::trivial(), m11), 2);
    }

    #[test]
    fn abelian_wreath_cases() {
        let c = builtin();
        let s5 = c.lookup("S5").unwrap();
        let a5 = c.lookup("A5").unwrap();

        // trivial A collapses to the acting group
        let asp = AlmostSimpleProvider { entry: s5 };
        let b = d_abelian_wr_regular(
            &AbelianGroup::trivial(),
            &ActingGroup::AlmostSimple(s5),
            &asp,
        )
        .unwrap();
        assert_eq!(b.d, 2);
        assert!(b.prime_terms.is_empty() && b.term_da_plus_1.is_none());

        // C2 wr A5 = 3, attained by the q = 2 term
        let asp = AlmostSimpleProvider { entry: a5 };
        let b =
            d_abelian_wr_regular(&ab(&[2]), &ActingGroup::AlmostSimple(a5), &asp).unwrap();
        assert_eq!(b.d, 3);
        assert_eq!(b.term_direct, 2);
        assert_eq!(b.term_da_plus_1, Some(2));
        assert_eq!(b.prime_terms[&big(2)], 3);
        assert_eq!(b.attained_by, vec!["p=2".to_string()]);

        // C2 wr C3 with the cyclic provider: max(d(C2xC3)=1, rho_2=2) = 2
        let acting = ActingGroup::Cyclic(big(3));
        let provider = CyclicProvider { order: big(3) };
        let b = d_abelian_wr_regular(&ab(&[2]), &acting, &provider).unwrap();
        assert_eq!(b.d, 2);
        assert_eq!(b.term_direct, 1);
        assert_eq!(b.prime_terms[&big(2)], 2);
    }

    #[test]
    fn iterated_cases() {
        let c = builtin();
        let spec = |names: &[&str]| {
            WreathSpec::from_names(
                &c,
                &names.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            )
            .unwrap()
        };
        // all-simple sequences are 2-generated
        assert_eq!(d_iterated(&spec(&["A5", "A5"])).unwrap().d, 2);
        assert_eq!(d_iterated(&spec(&["A5", "A6", "M11"])).unwrap().d, 2);
        // W = S5 wr A5
        let b = d_iterated(&spec(&["A5", "S5"])).unwrap();
        assert_eq!(b.d, 3);
        assert_eq!((b.term_direct, b.term_da_plus_1), (2, Some(2)));
        // W = S5 wr S5 wr S5
        let b = d_iterated(&spec(&["S5", "S5", "S5"])).unwrap();
        assert_eq!(b.d, 4);
        assert_eq!((b.term_direct, b.term_da_plus_1), (3, Some(3)));
        assert_eq!(b.prime_terms[&big(2)], 4);
        // k = 1
        assert_eq!(d_iterated(&spec(&["M11"])).unwrap().d, 2);
    }

    #[test]
    fn soluble_top_cases() {
        let c = builtin();
        let cyc2 = ActingGroup::Cyclic(big(2));
        let prov2 = CyclicProvider { order: big(2) };
        // H = C2: max(d(C2 wr C2), floor(-1/2)+2) = max(2, 1) = 2
        assert_eq!(
            d_soluble_wr_regular(1, &ab(&[2]), &cyc2, &prov2).unwrap(),
            2
        );
        // H = S3 over C2: 2
        assert_eq!(
            d_soluble_wr_regular(2, &ab(&[2]), &cyc2, &prov2).unwrap(),
            2
        );
        // H = C2^5 over A5: the q = 2 term d_2+2 = 7 dominates
        let a5 = c.lookup("A5").unwrap();
        let acting = ActingGroup::AlmostSimple(a5);
        let provider = AlmostSimpleProvider { entry: a5 };
        assert_eq!(
            d_soluble_wr_regular(5, &ab(&[2, 2, 2, 2, 2]), &acting, &provider).unwrap(),
            7
        );
        // rejections
        assert!(d_soluble_wr_regular(0, &ab(&[2]), &cyc2, &prov2).is_err());
        assert!(d_soluble_wr_regular(1, &ab(&[2, 2]), &cyc2, &prov2).is_err());
    }

    #[test]
    fn breakdown_json_schema() {
        let c = builtin();
        let spec = WreathSpec::from_names(&c, &["A5".into(), "S5".into()]).unwrap();
        let b = d_iterated(&spec).unwrap();
        let json = serde_json::to_value(&b).unwrap();
        assert_eq!(json["d"], 3);
        assert_eq!(json["terms"]["direct"], 2);
        assert_eq!(json["terms"]["dA_plus_1"], 2);
        assert_eq!(json["terms"]["primes"]["2"], 3);
        assert_eq!(json["attained_by"][0], "p=2");
        assert_eq!(json["A"][0], 2);
        assert!(json["method_notes"].as_array().is_some());
    }

    #[test]
    fn display_echo_is_innermost_first() {
        let c = builtin();
        let spec = WreathSpec::from_names(&c, &["A5".into(), "S5".into()]).unwrap();
        assert_eq!(spec.to_string(), "S5 ≀ A5");
    }

    #[test]
    fn theorem_terms_agree_with_generic_rho() {
        // the closed form and the generic rho_p maximum agree for
        // almost-simple providers
        let c = builtin();
        for gname in ["A5", "S5", "PSL2_7", "PGL2_9", "M11"] {
            let g = c.lookup(gname).unwrap();
            let provider = AlmostSimpleProvider { entry: g };
            for a in AbelianGroup::all_types_up_to(24) {
                if a.is_trivial() {
                    continue;
                }
                let closed =
                    d_abelian_wr_regular(&a, &ActingGroup::AlmostSimple(g), &provider)
                        .unwrap()
                        .d;
                let direct = d_direct_abelian_almost_simple(&a, g);
                let generic = a
                    .primes()
                    .iter()
                    .map(|p| rho_p(&a, p, &provider).unwrap())
                    .fold(direct, usize::max);
                assert_eq!(closed, generic, "mismatch for A={a}, G={gname}");
            }
        }
    }
}
