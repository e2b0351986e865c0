//! Conjugacy classes and abelianization of small permutation groups by
//! element enumeration.

use super::perm::Permutation;
use super::search::ElementTable;
use super::{PermGroup, DEFAULT_ORDER_CAP};
use crate::abelian::{AbelianGroup, IntMatrix};
use crate::error::Result;
use std::collections::HashMap;

/// Indices of the least-index representative of each conjugacy class,
/// ascending. Because the table orders elements by descending element
/// order, representatives of high-order classes come first.
pub(crate) fn class_representatives(table: &ElementTable, w: &PermGroup) -> Vec<u32> {
    let n = table.len();
    let gen_idx: Vec<u32> = w
        .generators()
        .iter()
        .map(|g| table.index[g.images()])
        .collect();
    let mut visited = vec![false; n];
    let mut reps = Vec::new();
    for start in 0..n as u32 {
        if visited[start as usize] {
            continue;
        }
        reps.push(start);
        visited[start as usize] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &g in &gen_idx {
                let y = table.conjugate(x, g);
                if !visited[y as usize] {
                    visited[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    reps
}

/// One representative permutation per conjugacy class, for groups of order
/// at most 5000.
pub fn conjugacy_class_reps(w: &PermGroup) -> Result<Vec<Permutation>> {
    let table = ElementTable::build(w, DEFAULT_ORDER_CAP)?;
    Ok(class_representatives(&table, w)
        .into_iter()
        .map(|i| Permutation::from_images(table.perms[i as usize].clone()).unwrap())
        .collect())
}

/// Invariant chain of W/W' for groups of order at most 5000.
///
/// The derived subgroup is the closure of the generators' commutators under
/// multiplication and conjugation; the abelian quotient's invariants come
/// from the Smith normal form of the relation matrix of a polycyclic-style
/// presentation on the images of W's generators.
pub fn derived_quotient_invariants(w: &PermGroup) -> Result<AbelianGroup> {
    let table = ElementTable::build(w, DEFAULT_ORDER_CAP)?;
    let n = table.len();
    let id = table.identity();
    let gen_idx: Vec<u32> = w
        .generators()
        .iter()
        .map(|g| table.index[g.images()])
        .collect();

    // derived subgroup: normal closure of generator commutators
    let mut derived_gens: Vec<u32> = Vec::new();
    for &a in &gen_idx {
        for &b in &gen_idx {
            let ia = table.inverse[a as usize];
            let ib = table.inverse[b as usize];
            let comm = table.mul(table.mul(table.mul(ia, ib), a), b);
            if comm != id && !derived_gens.contains(&comm) {
                derived_gens.push(comm);
            }
        }
    }
    let mut derived = close_indices(&table, &derived_gens);
    loop {
        let mut grew = false;
        let snapshot: Vec<u32> = derived.iter().cloned().collect();
        for &x in &snapshot {
            for &g in &gen_idx {
                let y = table.conjugate(x, g);
                if !derived.contains(&y) {
                    derived_gens.push(y);
                    derived = close_indices(&table, &derived_gens);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }

    // quotient cosets
    let k_elems: Vec<u32> = {
        let mut v: Vec<u32> = derived.iter().cloned().collect();
        v.sort_unstable();
        v
    };
    let mut coset_of = vec![u32::MAX; n];
    let mut coset_reps: Vec<u32> = Vec::new();
    for e in 0..n as u32 {
        if coset_of[e as usize] != u32::MAX {
            continue;
        }
        let c = coset_reps.len() as u32;
        coset_reps.push(e);
        for &x in &k_elems {
            coset_of[table.mul(x, e) as usize] = c;
        }
    }
    let q_mul =
        |c1: u32, c2: u32| coset_of[table.mul(coset_reps[c1 as usize], coset_reps[c2 as usize]) as usize];

    // images of W's generators generate the quotient
    let q_gens: Vec<u32> = {
        let mut v = Vec::new();
        for &g in &gen_idx {
            let c = coset_of[g as usize];
            if c != 0 && !v.contains(&c) {
                v.push(c);
            }
        }
        v
    };
    if q_gens.is_empty() {
        return Ok(AbelianGroup::trivial());
    }

    // polycyclic-style relation rows: x_i^{r_i} = prod_{j<i} x_j^{c_j}
    let m = q_gens.len();
    let mut span: HashMap<u32, Vec<i64>> = HashMap::new();
    span.insert(0, vec![0i64; m]);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (i, &x) in q_gens.iter().enumerate() {
        let mut r = 1u32;
        let mut power = x;
        while !span.contains_key(&power) {
            power = q_mul(power, x);
            r += 1;
        }
        let inside = span[&power].clone();
        let mut row = vec![0i64; m];
        row[i] = i64::from(r);
        for (j, c) in inside.iter().enumerate() {
            row[j] -= c;
        }
        rows.push(row);
        // extend the span by cosets h * x^t
        let snapshot: Vec<(u32, Vec<i64>)> = span.iter().map(|(k, v)| (*k, v.clone())).collect();
        for (h, vec) in snapshot {
            let mut cur = h;
            for t in 1..r {
                cur = q_mul(cur, x);
                let mut v = vec.clone();
                v[i] = i64::from(t);
                span.entry(cur).or_insert(v);
            }
        }
    }
    debug_assert_eq!(span.len(), coset_reps.len(), "span covers the quotient");

    let rows_big: Vec<Vec<num_bigint::BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| num_bigint::BigInt::from(v)).collect())
        .collect();
    let matrix = IntMatrix::from_rows(&rows_big)?;
    AbelianGroup::from_presentation(&matrix)
}

fn close_indices(table: &ElementTable, gens: &[u32]) -> std::collections::HashSet<u32> {
    let id = table.identity();
    let mut set = std::collections::HashSet::new();
    set.insert(id);
    let mut worklist = vec![id];
    let mut at = 0;
    while at < worklist.len() {
        let e = worklist[at];
        at += 1;
        for &g in gens {
            let prod = table.mul(e, g);
            if set.insert(prod) {
                worklist.push(prod);
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::{cyclic, group, wreath_imprimitive};

    fn pn(s: &str, degree: usize) -> Permutation {
        let parsed: Permutation = s.parse().unwrap();
        let mut images: Vec<u32> = parsed.images().to_vec();
        images.extend(images.len() as u32..degree as u32);
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn s5_has_seven_classes() {
        let s5 = group(vec![pn("(0 1)", 5), pn("(0 1 2 3 4)", 5)]).unwrap();
        assert_eq!(conjugacy_class_reps(&s5).unwrap().len(), 7);
    }

    #[test]
    fn class_reps_partition_s4() {
        // 5 classes, total size must be 24
        let s4 = group(vec![pn("(0 1)", 4), pn("(0 1 2 3)", 4)]).unwrap();
        let reps = conjugacy_class_reps(&s4).unwrap();
        assert_eq!(reps.len(), 5);
    }

    #[test]
    fn abelianizations() {
        let s5 = group(vec![pn("(0 1)", 5), pn("(0 1 2 3 4)", 5)]).unwrap();
        assert_eq!(
            derived_quotient_invariants(&s5).unwrap(),
            AbelianGroup::from_u64_orders(&[2]).unwrap()
        );
        let a5 = group(vec![pn("(0 1 2)", 5), pn("(0 1 2 3 4)", 5)]).unwrap();
        assert!(derived_quotient_invariants(&a5).unwrap().is_trivial());
        // D4 = C2 wr C2 has abelianization C2 x C2
        let d4 = wreath_imprimitive(&cyclic(2), &cyclic(2)).unwrap();
        assert_eq!(
            derived_quotient_invariants(&d4).unwrap(),
            AbelianGroup::from_u64_orders(&[2, 2]).unwrap()
        );
        // abelian groups are their own abelianization
        let c12 = cyclic(12);
        assert_eq!(
            derived_quotient_invariants(&c12).unwrap(),
            AbelianGroup::from_u64_orders(&[12]).unwrap()
        );
    }
}
