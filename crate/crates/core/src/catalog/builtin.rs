//! The shipped catalog data: alternating/symmetric families, projective
//! linear families over small fields, the sporadic groups, and their index-2
//! extensions. Orders come from published tables or exact formulas; every
//! entry with a degree <= 50 permutation model is cross-checked against the
//! BSGS order and computed abelianization in the verification suites.

use super::gf::{pgl2_generators, psl2_generators, Gf};
use super::{Catalog, CatalogEntry};
use crate::abelian::AbelianGroup;
use crate::permgrp::Permutation;
use num_bigint::BigUint;
use num_traits::One;
use std::str::FromStr;

const PRIME_POWERS_TO_49: [u32; 21] = [
    4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49,
];

/// name, order (decimal), order formula, |Out|
const SPORADICS: [(&str, &str, &str, u32); 26] = [
    ("M11", "7920", "2^4*3^2*5*11", 1),
    ("M12", "95040", "2^6*3^3*5*11", 2),
    ("M22", "443520", "2^7*3^2*5*7*11", 2),
    ("M23", "10200960", "2^7*3^2*5*7*11*23", 1),
    ("M24", "244823040", "2^10*3^3*5*7*11*23", 1),
    ("J1", "175560", "2^3*3*5*7*11*19", 1),
    ("J2", "604800", "2^7*3^3*5^2*7", 2),
    ("J3", "50232960", "2^7*3^5*5*17*19", 2),
    ("J4", "86775571046077562880", "2^21*3^3*5*7*11^3*23*29*31*37*43", 1),
    ("Co1", "4157776806543360000", "2^21*3^9*5^4*7^2*11*13*23", 1),
    ("Co2", "42305421312000", "2^18*3^6*5^3*7*11*23", 1),
    ("Co3", "495766656000", "2^10*3^7*5^3*7*11*23", 1),
    ("Fi22", "64561751654400", "2^17*3^9*5^2*7*11*13", 2),
    ("Fi23", "4089470473293004800", "2^18*3^13*5^2*7*11*13*17*23", 1),
    (
        "Fi24p",
        "1255205709190661721292800",
        "2^21*3^16*5^2*7^3*11*13*17*23*29",
        2,
    ),
    ("HS", "44352000", "2^9*3^2*5^3*7*11", 2),
    ("McL", "898128000", "2^7*3^6*5^3*7*11", 2),
    ("He", "4030387200", "2^10*3^3*5^2*7^3*17", 2),
    ("Ru", "145926144000", "2^14*3^3*5^3*7*13*29", 1),
    ("Suz", "448345497600", "2^13*3^7*5^2*7*11*13", 2),
    ("ON", "460815505920", "2^9*3^4*5*7^3*11*19*31", 2),
    ("HN", "273030912000000", "2^14*3^6*5^6*7*11*19", 2),
    ("Ly", "51765179004000000", "2^8*3^7*5^6*7*11*31*37*67", 1),
    ("Th", "90745943887872000", "2^15*3^10*5^3*7^2*13*19*31", 1),
    (
        "B",
        "4154781481226426191177580544000000",
        "2^41*3^13*5^6*7^2*11*13*17*19*23*31*47",
        1,
    ),
    (
        "M",
        "808017424794512875886459904961710757005754368000000000",
        "2^46*3^20*5^9*7^6*11^2*13^3*17*19*23*29*31*41*47*59*71",
        1,
    ),
];

fn trivial_ab() -> AbelianGroup {
    AbelianGroup::trivial()
}

fn c2() -> AbelianGroup {
    AbelianGroup::from_u64_orders(&[2]).unwrap()
}

fn factorial(n: u32) -> BigUint {
    (2..=n).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// Generators of A_n in its natural action: a 3-cycle plus a long even cycle.
fn alternating_model(n: u32) -> Vec<Permutation> {
    let n = n as usize;
    let three = Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap();
    let long = if n % 2 == 1 {
        Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap()
    } else {
        Permutation::from_cycles(n, &[(1..n as u32).collect()]).unwrap()
    };
    vec![three, long]
}

fn symmetric_model(n: u32) -> Vec<Permutation> {
    let n = n as usize;
    vec![
        Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
        Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap(),
    ]
}

fn m11_model() -> Vec<Permutation> {
    vec![
        Permutation::from_cycles(11, &[(0..11).collect()]).unwrap(),
        Permutation::from_cycles(11, &[vec![2, 6, 10, 7], vec![3, 9, 4, 5]]).unwrap(),
    ]
}

fn m12_model() -> Vec<Permutation> {
    vec![
        Permutation::from_cycles(12, &[(0..11).collect()]).unwrap(),
        Permutation::from_cycles(12, &[vec![2, 6, 10, 7], vec![3, 9, 4, 5]]).unwrap(),
        Permutation::from_cycles(
            12,
            &[
                vec![0, 11],
                vec![1, 10],
                vec![2, 5],
                vec![3, 7],
                vec![4, 8],
                vec![6, 9],
            ],
        )
        .unwrap(),
    ]
}

fn psl2_order(q: u64) -> BigUint {
    let raw = q * (q * q - 1);
    BigUint::from(if q % 2 == 0 { raw } else { raw / 2 })
}

pub(super) fn build() -> Catalog {
    let mut c = Catalog::default();
    let mut add = |e: CatalogEntry| {
        c.insert_new(e).expect("builtin entries are consistent");
    };

    // alternating and symmetric families
    for n in 5..=20u32 {
        let socle_order = factorial(n) / BigUint::from(2u32);
        let an_name = format!("A{n}");
        add(CatalogEntry {
            name: an_name.clone(),
            socle_name: an_name.clone(),
            socle_order: socle_order.clone(),
            order_formula: format!("{n}!/2"),
            abelianization: trivial_ab(),
            rank: 2,
            simple: true,
            provenance: format!("alternating group on {n} points; order {n}!/2; natural model"),
            model: Some(alternating_model(n)),
        });
        add(CatalogEntry {
            name: format!("S{n}"),
            socle_name: an_name,
            socle_order,
            order_formula: format!("{n}!/2"),
            abelianization: c2(),
            rank: 2,
            simple: false,
            provenance: format!("symmetric group on {n} points; S{n}/A{n} = C2; natural model"),
            model: Some(symmetric_model(n)),
        });
    }

    // the exceptional extensions of A6 beyond S6, realized on the projective
    // line over GF(9)
    let gf9 = Gf::new(9);
    let lam = gf9.primitive;
    let psl9 = psl2_generators(&gf9);
    let frob = gf9.frobenius();
    let scale = gf9.scaling(lam);
    let frob_diag = Permutation::compose(&frob, &scale).unwrap();
    add(CatalogEntry {
        name: "PGL2_9".into(),
        socle_name: "PSL2_9".into(),
        socle_order: BigUint::from(360u32),
        order_formula: "9*(9^2-1)".into(),
        abelianization: c2(),
        rank: 2,
        simple: false,
        provenance: "projective general linear group over GF(9); degree-10 model".into(),
        model: Some(pgl2_generators(&gf9)),
    });
    add(CatalogEntry {
        name: "M10".into(),
        socle_name: "PSL2_9".into(),
        socle_order: BigUint::from(360u32),
        order_formula: "360*2".into(),
        abelianization: c2(),
        rank: 2,
        simple: false,
        provenance:
            "point stabilizer of M11; A6 extended by the product of the field and diagonal \
             automorphisms; degree-10 model"
                .into(),
        model: Some({
            let mut gens = psl9.clone();
            gens.push(frob_diag);
            gens
        }),
    });
    add(CatalogEntry {
        name: "PGammaL2_9".into(),
        socle_name: "PSL2_9".into(),
        socle_order: BigUint::from(360u32),
        order_formula: "360*4".into(),
        abelianization: AbelianGroup::from_u64_orders(&[2, 2]).unwrap(),
        rank: 2,
        simple: false,
        provenance: "full automorphism group of A6 = PSL(2,9); degree-10 model".into(),
        model: Some({
            let mut gens = pgl2_generators(&gf9);
            gens.push(frob.clone());
            gens
        }),
    });

    // projective linear families over GF(q), q <= 49
    for &q in &PRIME_POWERS_TO_49 {
        let gf = Gf::new(q);
        let even = q % 2 == 0;
        let psl_name = format!("PSL2_{q}");
        let socle_order = psl2_order(q as u64);
        add(CatalogEntry {
            name: psl_name.clone(),
            socle_name: psl_name.clone(),
            socle_order: socle_order.clone(),
            order_formula: format!("{q}*({q}^2-1)/gcd(2,{q}-1)"),
            abelianization: trivial_ab(),
            rank: 2,
            simple: true,
            provenance: format!("projective special linear group; degree-{} model", q + 1),
            model: Some(psl2_generators(&gf)),
        });
        if q != 9 {
            // PGL2_9 already present from the A6 family
            add(CatalogEntry {
                name: format!("PGL2_{q}"),
                socle_name: psl_name,
                socle_order,
                order_formula: format!("{q}*({q}^2-1)"),
                abelianization: if even { trivial_ab() } else { c2() },
                rank: 2,
                simple: even,
                provenance: if even {
                    format!("coincides with PSL(2,{q}) in characteristic 2; degree-{} model", q + 1)
                } else {
                    format!("projective general linear group; degree-{} model", q + 1)
                },
                model: Some(pgl2_generators(&gf)),
            });
        }
    }

    // sporadic groups and their index-2 extensions
    for (name, order, formula, out) in SPORADICS {
        let socle_order = BigUint::from_str(order).expect("decimal order");
        let model = match name {
            "M11" => Some(m11_model()),
            "M12" => Some(m12_model()),
            _ => None,
        };
        add(CatalogEntry {
            name: name.into(),
            socle_name: name.into(),
            socle_order: socle_order.clone(),
            order_formula: formula.into(),
            abelianization: trivial_ab(),
            rank: 2,
            simple: true,
            provenance: "sporadic simple group; order from the ATLAS of Finite Groups".into(),
            model,
        });
        if out == 2 {
            add(CatalogEntry {
                name: format!("{name}.2"),
                socle_name: name.into(),
                socle_order: socle_order.clone(),
                order_formula: format!("({formula})*2"),
                abelianization: c2(),
                rank: 2,
                simple: false,
                provenance: format!(
                    "automorphism extension {name}.2; Out({name}) = C2 per the ATLAS"
                ),
                model: None,
            });
        }
    }

    // Suzuki group Sz(8)
    add(CatalogEntry {
        name: "Sz8".into(),
        socle_name: "Sz8".into(),
        socle_order: BigUint::from(29120u32),
        order_formula: "8^2*(8^2+1)*(8-1)".into(),
        abelianization: trivial_ab(),
        rank: 2,
        simple: true,
        provenance: "Suzuki group Sz(8); order q^2(q^2+1)(q-1) at q=8".into(),
        model: None,
    });

    c
}
