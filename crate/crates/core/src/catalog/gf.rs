//! Small finite fields GF(q), q <= 49, and Mobius/semilinear actions on the
//! projective line — enough to realize PSL(2,q), PGL(2,q), and the
//! extensions of PSL(2,9) as permutation groups of degree q+1.

use crate::permgrp::Permutation;

/// GF(p^k) with elements indexed 0..q; index encodes the coefficient vector
/// of the residue polynomial in base p.
pub(crate) struct Gf {
    pub p: u32,
    pub q: u32,
    mul_table: Vec<u32>,
    inv_table: Vec<u32>,
    neg_table: Vec<u32>,
    add_one: Vec<u32>,
    frob: Vec<u32>,
    pub primitive: u32,
}

/// Monic irreducible polynomials (low-to-high coefficients, without the
/// leading 1) used for the prime-power fields.
fn modulus(p: u32, k: u32) -> &'static [u32] {
    match (p, k) {
        (2, 2) => &[1, 1],          // x^2 + x + 1
        (2, 3) => &[1, 1, 0],       // x^3 + x + 1
        (2, 4) => &[1, 1, 0, 0],    // x^4 + x + 1
        (2, 5) => &[1, 0, 1, 0, 0], // x^5 + x^2 + 1
        (3, 2) => &[1, 0],          // x^2 + 1
        (3, 3) => &[1, 2, 0],       // x^3 + 2x + 1
        (5, 2) => &[2, 1],          // x^2 + x + 2
        (7, 2) => &[3, 1],          // x^2 + x + 3
        _ => panic!("no modulus for GF({p}^{k})"),
    }
}

impl Gf {
    pub fn new(q: u32) -> Gf {
        let (p, k) = split_prime_power(q).expect("q must be a prime power");
        let coeffs = |mut x: u32| -> Vec<u32> {
            let mut c = vec![0u32; k as usize];
            for slot in c.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            c
        };
        let index = |c: &[u32]| -> u32 {
            let mut x = 0u32;
            for &ci in c.iter().rev() {
                x = x * p + ci;
            }
            x
        };
        let mul = |a: u32, b: u32| -> u32 {
            if k == 1 {
                return (a * b) % p;
            }
            let (ca, cb) = (coeffs(a), coeffs(b));
            let deg = k as usize;
            let mut prod = vec![0u32; 2 * deg - 1];
            for (i, &ai) in ca.iter().enumerate() {
                for (j, &bj) in cb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + ai * bj) % p;
                }
            }
            let m = modulus(p, k);
            for d in (deg..2 * deg - 1).rev() {
                let c = prod[d];
                if c != 0 {
                    prod[d] = 0;
                    for j in 0..deg {
                        // x^d = x^(d-deg) * (-modulus)
                        prod[d - deg + j] = (prod[d - deg + j] + (p - m[j] % p) % p * c) % p;
                    }
                }
            }
            index(&prod[..deg])
        };

        let mut mul_table = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                mul_table[(a * q + b) as usize] = mul(a, b);
            }
        }
        let mut inv_table = vec![0u32; q as usize];
        for a in 1..q {
            inv_table[a as usize] = (1..q)
                .find(|&b| mul_table[(a * q + b) as usize] == 1)
                .expect("field element has an inverse");
        }
        let add = |a: u32, b: u32| -> u32 {
            let (ca, cb) = (coeffs(a), coeffs(b));
            let sum: Vec<u32> = ca.iter().zip(cb.iter()).map(|(x, y)| (x + y) % p).collect();
            index(&sum)
        };
        let neg_table: Vec<u32> = (0..q)
            .map(|a| (0..q).find(|&b| add(a, b) == 0).unwrap())
            .collect();
        let add_one: Vec<u32> = (0..q).map(|a| add(a, 1)).collect();
        let frob: Vec<u32> = (0..q)
            .map(|a| {
                let mut y = a;
                for _ in 1..p {
                    y = mul_table[(y * q + a) as usize];
                }
                y
            })
            .collect();
        let primitive = (2..q)
            .find(|&a| {
                let mut order = 1u32;
                let mut y = a;
                while y != 1 {
                    y = mul_table[(y * q + a) as usize];
                    order += 1;
                }
                order == q - 1
            })
            .expect("multiplicative group is cyclic");
        Gf {
            p,
            q,
            mul_table,
            inv_table,
            neg_table,
            add_one,
            frob,
            primitive,
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_table[(a * self.q + b) as usize]
    }

    /// Point q is infinity; 0..q are field elements.
    fn infinity(&self) -> u32 {
        self.q
    }

    /// x -> x + 1
    pub fn translation(&self) -> Permutation {
        let mut images: Vec<u32> = (0..self.q).map(|x| self.add_one[x as usize]).collect();
        images.push(self.infinity());
        Permutation::from_images(images).unwrap()
    }

    /// x -> c * x
    pub fn scaling(&self, c: u32) -> Permutation {
        let mut images: Vec<u32> = (0..self.q).map(|x| self.mul(c, x)).collect();
        images.push(self.infinity());
        Permutation::from_images(images).unwrap()
    }

    /// x -> 1/x (sign +) or x -> -1/x (sign -)
    pub fn inversion(&self, negate: bool) -> Permutation {
        let mut images = vec![0u32; (self.q + 1) as usize];
        images[self.infinity() as usize] = 0;
        images[0] = self.infinity();
        for x in 1..self.q {
            let v = self.inv_table[x as usize];
            images[x as usize] = if negate { self.neg_table[v as usize] } else { v };
        }
        Permutation::from_images(images).unwrap()
    }

    /// x -> x^p
    pub fn frobenius(&self) -> Permutation {
        let mut images: Vec<u32> = (0..self.q).map(|x| self.frob[x as usize]).collect();
        images.push(self.infinity());
        Permutation::from_images(images).unwrap()
    }
}

pub(crate) fn split_prime_power(q: u32) -> Option<(u32, u32)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut k = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            return (rest == 1).then_some((p, k));
        }
    }
    None
}

/// Generators of PSL(2,q) on the projective line: translation, scaling by a
/// primitive square, and x -> -1/x. For even q this coincides with PGL.
pub(crate) fn psl2_generators(gf: &Gf) -> Vec<Permutation> {
    if gf.p == 2 {
        return pgl2_generators(gf);
    }
    let lam = gf.primitive;
    let lam2 = gf.mul(lam, lam);
    vec![gf.translation(), gf.scaling(lam2), gf.inversion(true)]
}

/// Generators of PGL(2,q): translation, scaling by a primitive element, and
/// x -> 1/x.
pub(crate) fn pgl2_generators(gf: &Gf) -> Vec<Permutation> {
    vec![
        gf.translation(),
        gf.scaling(gf.primitive),
        gf.inversion(false),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::group;
    use num_bigint::BigUint;

    fn psl2_order(q: u64) -> BigUint {
        let raw = q * (q * q - 1);
        BigUint::from(if q % 2 == 0 { raw } else { raw / 2 })
    }

    #[test]
    fn field_axioms_spot_checks() {
        for q in [4u32, 8, 9, 16, 25, 27, 32, 49] {
            let gf = Gf::new(q);
            // no zero divisors
            for a in 1..q {
                for b in 1..q {
                    assert_ne!(gf.mul(a, b), 0, "zero divisor in GF({q})");
                }
            }
            // frobenius is additive: check via translation conjugation identity
            // (x+1)^p = x^p + 1
            for x in 0..q {
                let lhs = gf.frob[gf.add_one[x as usize] as usize];
                let rhs = gf.add_one[gf.frob[x as usize] as usize];
                assert_eq!(lhs, rhs, "frobenius not additive in GF({q})");
            }
        }
    }

    #[test]
    fn projective_group_orders() {
        for q in [4u64, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
            let gf = Gf::new(q as u32);
            let psl = group(psl2_generators(&gf)).unwrap();
            assert_eq!(*psl.order(), psl2_order(q), "PSL(2,{q})");
            let pgl = group(pgl2_generators(&gf)).unwrap();
            assert_eq!(*pgl.order(), BigUint::from(q * (q * q - 1)), "PGL(2,{q})");
        }
    }
}
