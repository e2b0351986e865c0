//! Exact permutation-group engine: permutation algebra, Schreier-Sims
//! base/strong-generating-set chains, product constructions, and generation
//! testing. This is the substrate for every brute-force oracle in the crate.

mod bsgs;
mod classes;
mod perm;
mod sampler;
mod search;

pub use classes::{conjugacy_class_reps, derived_quotient_invariants};
pub use perm::Permutation;
pub use search::{
    d_exact, d_exact_unrestricted, d_upper_randomized, search_exhaustive, SearchMethod,
    SearchOutcome, SearchReport,
};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use bsgs::StabChain;
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

pub const DEFAULT_REGULAR_CAP: usize = 10_000;
pub const DEFAULT_WREATH_DEGREE_CAP: usize = 20_000;
pub const DEFAULT_ORDER_CAP: usize = 5_000;

/// A permutation group with a base and strong generating set; immutable
/// after construction, with exact arbitrary-precision order and a
/// membership test.
#[derive(Serialize)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    #[serde(skip)]
    chain: StabChain,
    #[serde(serialize_with = "crate::formula::serialize_biguint")]
    order: BigUint,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup {{ degree: {}, order: {}, generators: {} }}",
            self.degree,
            self.order,
            self.generators.len()
        )
    }
}

/// Builds the group generated by `gens` with a deterministic Schreier-Sims
/// chain.
pub fn group(gens: Vec<Permutation>) -> Result<PermGroup> {
    if gens.is_empty() {
        return Err(Error::InvalidInput(
            "a permutation group needs at least one generator".into(),
        ));
    }
    let degree = gens[0].degree();
    if degree == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    for g in &gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    let images: Vec<Vec<u32>> = gens.iter().map(|g| g.images().to_vec()).collect();
    let chain = StabChain::build(degree, &images, None, false);
    debug_assert!(chain.randomized_self_check(&images, 8));
    let order = chain.order();
    Ok(PermGroup {
        degree,
        generators: gens,
        chain,
        order,
    })
}

impl PermGroup {
    /// Construction path for groups whose order is known by a counting
    /// argument; the chain build stops as soon as the orbit product reaches
    /// it, which certifies the chain.
    fn with_known_order(degree: usize, gens: Vec<Permutation>, order: BigUint) -> PermGroup {
        let images: Vec<Vec<u32>> = gens.iter().map(|g| g.images().to_vec()).collect();
        let chain = StabChain::build(degree, &images, Some(&order), true);
        assert_eq!(
            chain.order(),
            order,
            "constructed chain disagrees with the counting argument"
        );
        PermGroup {
            degree,
            generators: gens,
            chain,
            order,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_member(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(self.chain.is_member(p.images()))
    }

    /// Base points of the stabilizer chain.
    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    /// Fundamental orbit lengths; their product is the group order.
    pub fn fundamental_orbit_lengths(&self) -> Vec<usize> {
        self.chain.orbit_lengths()
    }

    pub fn strong_generator_count(&self) -> usize {
        self.chain.strong_generator_count()
    }

    pub(crate) fn chain(&self) -> &StabChain {
        &self.chain
    }

    /// Orbit partition of the natural action.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start as u32];
            seen[start] = true;
            let mut at = 0;
            while at < orbit.len() {
                let p = orbit[at];
                at += 1;
                for g in &self.generators {
                    let q = g.apply(p);
                    if !seen[q as usize] {
                        seen[q as usize] = true;
                        orbit.push(q);
                    }
                }
            }
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let degree = g.degree + h.degree;
    let mut gens = Vec::new();
    for a in &g.generators {
        let mut images: Vec<u32> = a.images().to_vec();
        images.extend((g.degree..degree).map(|x| x as u32));
        gens.push(Permutation::from_images(images).expect("block images"));
    }
    for b in &h.generators {
        let mut images: Vec<u32> = (0..g.degree as u32).collect();
        images.extend(b.images().iter().map(|&y| y + g.degree as u32));
        gens.push(Permutation::from_images(images).expect("block images"));
    }
    let order = g.order.clone() * h.order.clone();
    PermGroup::with_known_order(degree, gens, order)
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    assert!(n >= 1, "cyclic group order must be at least 1");
    let images: Vec<u32> = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
    let gen = Permutation::from_images(images).expect("cycle");
    PermGroup::with_known_order(n, vec![gen], BigUint::from(n))
}

/// Direct product of cyclic groups, one per invariant; degree is the sum of
/// the invariants and the order is |A|.
pub fn abelian_rep(a: &AbelianGroup) -> Result<PermGroup> {
    if a.is_trivial() {
        return Ok(cyclic(1));
    }
    let mut sizes = Vec::with_capacity(a.invariants().len());
    let mut degree = 0usize;
    for inv in a.invariants() {
        let size = usize::try_from(inv.clone()).map_err(|_| Error::ResourceCap {
            what: format!("abelian invariant {inv}"),
            cap: usize::MAX.to_string(),
        })?;
        degree += size;
        sizes.push(size);
    }
    if degree > DEFAULT_WREATH_DEGREE_CAP {
        return Err(Error::ResourceCap {
            what: format!("abelian representation degree {degree}"),
            cap: DEFAULT_WREATH_DEGREE_CAP.to_string(),
        });
    }
    let mut gens = Vec::new();
    let mut offset = 0usize;
    for &size in &sizes {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for x in 0..size {
            images[offset + x] = (offset + (x + 1) % size) as u32;
        }
        gens.push(Permutation::from_images(images).expect("cycle"));
        offset += size;
    }
    Ok(PermGroup::with_known_order(degree, gens, a.order()))
}

/// Regular representation: the action of `g` on its own elements by left
/// multiplication, degree |g|.
pub fn regular_rep(g: &PermGroup) -> Result<PermGroup> {
    regular_rep_with_cap(g, DEFAULT_REGULAR_CAP)
}

pub fn regular_rep_with_cap(g: &PermGroup, cap: usize) -> Result<PermGroup> {
    let order: usize = usize::try_from(g.order.clone()).unwrap_or(usize::MAX);
    if order > cap {
        return Err(Error::ResourceCap {
            what: format!("regular representation of a group of order {}", g.order),
            cap: cap.to_string(),
        });
    }
    let elements = search::element_closure(g.degree, g.generators());
    debug_assert_eq!(elements.len(), order);
    let index_of = |p: &[u32]| -> u32 {
        elements
            .binary_search_by(|e| e.as_slice().cmp(p))
            .expect("closure is closed") as u32
    };
    let mut gens = Vec::with_capacity(g.generators.len());
    let mut scratch = vec![0u32; g.degree];
    for gen in &g.generators {
        let mut images = vec![0u32; order];
        for (idx, h) in elements.iter().enumerate() {
            // left multiplication: h -> gen ∘ h
            for (o, &x) in scratch.iter_mut().zip(h.iter()) {
                *o = gen.images()[x as usize];
            }
            images[idx] = index_of(&scratch);
        }
        gens.push(Permutation::from_images(images).expect("cayley action"));
    }
    Ok(PermGroup::with_known_order(order, gens, g.order.clone()))
}

/// Imprimitive wreath product of `h` (degree m) by `g` (degree n), acting on
/// the mn points of blocks indexed by g's points. Generators are h's
/// generators planted in block 0 plus g's generators permuting the blocks;
/// `g` must be transitive so the planted copy spreads to the whole base.
pub fn wreath_imprimitive(h: &PermGroup, g: &PermGroup) -> Result<PermGroup> {
    wreath_imprimitive_with_cap(h, g, DEFAULT_WREATH_DEGREE_CAP)
}

pub fn wreath_imprimitive_with_cap(
    h: &PermGroup,
    g: &PermGroup,
    degree_cap: usize,
) -> Result<PermGroup> {
    let m = h.degree;
    let n = g.degree;
    let degree = m
        .checked_mul(n)
        .filter(|d| *d <= degree_cap)
        .ok_or_else(|| Error::ResourceCap {
            what: format!("wreath product degree {m}*{n}"),
            cap: degree_cap.to_string(),
        })?;
    if !g.is_transitive() {
        return Err(Error::InvalidInput(
            "wreath product requires a transitive acting group".into(),
        ));
    }
    let mut gens = Vec::new();
    for a in &h.generators {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for x in 0..m {
            images[x] = a.images()[x];
        }
        gens.push(Permutation::from_images(images).expect("block action"));
    }
    for b in &g.generators {
        let mut images = vec![0u32; degree];
        for y in 0..n {
            let target = b.images()[y] as usize;
            for x in 0..m {
                images[y * m + x] = (target * m + x) as u32;
            }
        }
        gens.push(Permutation::from_images(images).expect("block permutation"));
    }
    let order = h.order.pow(n as u32) * g.order.clone();
    Ok(PermGroup::with_known_order(degree, gens, order))
}

/// True iff the tuple generates `w`: the BSGS order of the tuple's closure
/// equals order(w). Elements must belong to `w`.
pub fn generates(w: &PermGroup, tuple: &[Permutation]) -> Result<bool> {
    for t in tuple {
        if t.degree() != w.degree {
            return Err(Error::DegreeMismatch(w.degree, t.degree()));
        }
        if !w.chain.is_member(t.images()) {
            return Err(Error::NotAMember);
        }
    }
    if tuple.is_empty() {
        return Ok(w.order.is_one());
    }
    let images: Vec<Vec<u32>> = tuple.iter().map(|t| t.images().to_vec()).collect();
    let chain = StabChain::build(w.degree, &images, Some(&w.order), true);
    Ok(chain.order() == w.order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pn(s: &str, degree: usize) -> Permutation {
        let parsed: Permutation = s.parse().unwrap();
        let mut images: Vec<u32> = parsed.images().to_vec();
        images.extend(images.len() as u32..degree as u32);
        Permutation::from_images(images).unwrap()
    }

    fn s5() -> PermGroup {
        group(vec![pn("(0 1)", 5), pn("(0 1 2 3 4)", 5)]).unwrap()
    }

    fn a5() -> PermGroup {
        group(vec![pn("(0 1 2)", 5), pn("(0 1 2 3 4)", 5)]).unwrap()
    }

    #[test]
    fn orders_of_classic_groups() {
        assert_eq!(a5().order(), &BigUint::from(60u32));
        assert_eq!(s5().order(), &BigUint::from(120u32));
        // PSL(2,7) on the 8-point projective line: x+1 and -1/x
        let t = pn("(0 1 2 3 4 5 6)", 8); // acts on 0..6, fixes infinity=7
        let w = p("(0 7)(1 6)(2 3)(4 5)"); // x -> -1/x over F_7
        let psl = group(vec![t, w]).unwrap();
        assert_eq!(psl.order(), &BigUint::from(168u32));
    }

    #[test]
    fn bsgs_matches_naive_closure() {
        let groups = vec![
            s5(),
            a5(),
            cyclic(12),
            group(vec![pn("(0 1 2)", 4), pn("(1 2 3)", 4)]).unwrap(), // A4
        ];
        for g in groups {
            let closure = search::element_closure(g.degree(), g.generators());
            assert_eq!(BigUint::from(closure.len()), *g.order());
        }
    }

    #[test]
    fn membership() {
        let g = a5();
        assert!(g.is_member(&pn("(0 1 2)", 5)).unwrap());
        assert!(g.is_member(&pn("(0 1)(2 3)", 5)).unwrap());
        assert!(!g.is_member(&pn("(0 1)", 5)).unwrap()); // odd
        assert!(g.is_member(&Permutation::identity(5)).unwrap());
    }

    #[test]
    fn direct_product_shape() {
        let w = direct_product(&cyclic(2), &a5());
        assert_eq!(w.degree(), 7);
        assert_eq!(w.order(), &BigUint::from(120u32));
        assert_eq!(w.orbits().len(), 2);
    }

    #[test]
    fn regular_rep_is_transitive_and_free() {
        let s3 = group(vec![pn("(0 1)", 3), pn("(0 1 2)", 3)]).unwrap();
        let reg = regular_rep(&s3).unwrap();
        assert_eq!(reg.degree(), 6);
        assert_eq!(reg.order(), &BigUint::from(6u32));
        assert!(reg.is_transitive());
        // free: the first fundamental orbit is the whole point set
        assert_eq!(reg.fundamental_orbit_lengths()[0], 6);
        assert_eq!(reg.fundamental_orbit_lengths().len(), 1);
    }

    #[test]
    fn regular_rep_cap() {
        let big = cyclic(20);
        assert!(regular_rep_with_cap(&big, 10).is_err());
    }

    #[test]
    fn wreath_small_orders() {
        // C2 wr C3: degree 6, order 2^3 * 3 = 24
        let w = wreath_imprimitive(&cyclic(2), &cyclic(3)).unwrap();
        assert_eq!(w.degree(), 6);
        assert_eq!(w.order(), &BigUint::from(24u32));
    }

    #[test]
    fn wreath_large_order_formula() {
        // C2 wr A5 (regular): degree 120, order 2^60 * 60
        let w = wreath_imprimitive(&cyclic(2), &regular_rep(&a5()).unwrap()).unwrap();
        assert_eq!(w.degree(), 120);
        let expect = BigUint::from(2u32).pow(60) * BigUint::from(60u32);
        assert_eq!(w.order(), &expect);

        // S5 (natural) wr A5 (regular): degree 300, order 120^60 * 60
        let w = wreath_imprimitive(&s5(), &regular_rep(&a5()).unwrap()).unwrap();
        assert_eq!(w.degree(), 300);
        let expect = BigUint::from(120u32).pow(60) * BigUint::from(60u32);
        assert_eq!(w.order(), &expect);
    }

    #[test]
    fn wreath_rejects_intransitive_actor() {
        let intransitive = group(vec![pn("(0 1)", 3)]).unwrap();
        assert!(wreath_imprimitive(&cyclic(2), &intransitive).is_err());
    }

    #[test]
    fn generates_basics() {
        let g = s5();
        assert!(generates(&g, &[pn("(0 1)", 5), pn("(0 1 2 3 4)", 5)]).unwrap());
        assert!(!generates(&g, &[pn("(0 1 2 3 4)", 5)]).unwrap());
        // non-member errors out
        let odd_degree = pn("(0 1)", 4);
        assert!(generates(&g, &[odd_degree]).is_err());
        let not_member = pn("(0 1)", 5);
        assert!(generates(&a5(), &[not_member]).is_err());
    }
}
