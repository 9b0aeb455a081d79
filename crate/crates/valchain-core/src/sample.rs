//! Deterministic, seeded random generation of field elements, polynomials, and
//! valid augmentation chains. Everything here is reproducible from a single u64
//! seed; the randomized checks in this crate and the CLI route through it.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_core::{RngCore, SeedableRng};

use crate::chain::{AugRecord, Chain};
use crate::field::{FieldElem, FpPoly, RatFun, ValuedField};
use crate::poly::Poly;
use crate::valuation::GaussVal;
use crate::value::Value;

/// A seeded pseudo-random source with the handful of draws the crate needs.
pub struct Sampler {
    rng: rand_chacha::ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform draw from 0..n (n > 0). The modulo bias is irrelevant at the
    /// sizes used here.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.rng.next_u64() % n
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// A rational with numerator in [-height, height] and denominator in
    /// [1, height].
    pub fn rational(&mut self, height: u64) -> BigRational {
        let n = self.int_in(-(height as i64), height as i64);
        let d = self.int_in(1, height as i64);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// A field element of bounded size. For the p-adic rationals this bounds
    /// numerator and denominator; for rational functions it bounds the degrees
    /// of a random numerator and monic denominator in t.
    pub fn elem(&mut self, field: ValuedField, height: u64) -> FieldElem {
        match field {
            ValuedField::PAdicRationals(_) => FieldElem::Rat(self.rational(height)),
            ValuedField::LaurentRationalFunctions(p) => {
                let dn = self.below(3) as usize;
                let num = self.fp_poly(p, dn);
                if num.is_zero() {
                    return FieldElem::Fun(RatFun::zero(p));
                }
                let dd = self.below(2) as usize;
                let mut den = self.fp_poly(p, dd);
                if den.is_zero() {
                    den = FpPoly::one(p);
                }
                FieldElem::Fun(RatFun::new(num, den))
            }
        }
    }

    fn fp_poly(&mut self, p: u64, max_deg: usize) -> FpPoly {
        let mut coeffs = vec![0u64; max_deg + 1];
        for c in coeffs.iter_mut() {
            *c = self.below(p);
        }
        FpPoly::new(p, coeffs)
    }

    /// A polynomial of degree at most max_deg with coefficients bounded as in
    /// `elem`. May be zero.
    pub fn poly(&mut self, field: ValuedField, max_deg: usize, height: u64) -> Poly {
        let d = self.below(max_deg as u64 + 1) as usize;
        let coeffs = (0..=d).map(|_| self.elem(field, height)).collect();
        Poly::new(field, coeffs)
    }

    /// A monic polynomial of exactly the given degree.
    pub fn monic(&mut self, field: ValuedField, deg: usize, height: u64) -> Poly {
        let mut coeffs: Vec<FieldElem> = (0..deg).map(|_| self.elem(field, height)).collect();
        coeffs.push(field.one());
        Poly { field, coeffs }
    }

    /// A nonzero polynomial of degree at most max_deg.
    pub fn nonzero_poly(&mut self, field: ValuedField, max_deg: usize, height: u64) -> Poly {
        loop {
            let f = self.poly(field, max_deg, height);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// A chain over the given field whose records are keys by construction:
    /// a residually irreducible first key, an optional totally ramified second
    /// key built from the Newton slope of the first radius, and an optional
    /// stationary-degree refinement. All radii are exact rationals, and the
    /// seed key T keeps value zero along the whole chain.
    pub fn verified_chain(&mut self, field: ValuedField, max_records: usize) -> Chain {
        let p = field.prime();
        let seed = GaussVal { field, center: field.from_int(0), radius: Value::zero() };
        let mut augs: Vec<AugRecord> = Vec::new();
        let records = 1 + self.below(max_records.max(1) as u64) as usize;

        // First key: a monic lift of an irreducible polynomial mod p, of degree
        // 1 or 2, with a radius j/k in lowest terms. Linear keys avoid the
        // residue class of the seed key T, so the seed key keeps value zero
        // along the whole chain.
        let deg1 = 1 + self.below(2) as usize;
        let phi1 = loop {
            let f = self.residually_irreducible(field, deg1);
            if deg1 > 1 || !f.coeff(0).is_zero() {
                break f;
            }
        };
        let k = 1 + self.below(2); // denominator of the first radius
        let j = 1 + self.below(3);
        let (j, k) = reduce_pair(j, k);
        let mu1 = Value::rat(j as i64, k as i64);
        augs.push(AugRecord::Ordinary { phi: phi1.clone(), mu: mu1 });

        if records >= 2 && k > 1 && deg1 * (k as usize) <= 4 {
            // Second key: phi1^k - u*p^j has Newton slope j/k over the first
            // record and a linear residual there, so it is a key.
            let u = 1 + self.below((p - 1).max(1));
            let unit = field.from_int(u as i64);
            let scale = pow_elem(field, p, j as i64);
            let phi2 = phi1.pow(k as u32).sub(&Poly::constant(field, unit.mul(&scale)));
            // Radius above the slope value j, inside (1/k)Z.
            let m = (j * k + 1 + self.below(3)) as i64;
            let mu2 = Value::rat(m, k as i64);
            augs.push(AugRecord::Ordinary { phi: phi2.clone(), mu: mu2.clone() });

            if records >= 3 {
                // Stationary refinement: add a term of value exactly mu2, which
                // keeps the degree and stays inequivalent to phi2.
                let s = (m as u64 * mod_inverse(j, k)) % k;
                let a = (m - (s * j) as i64) / k as i64;
                let b = phi1.pow(s as u32).scale(&pow_elem(field, p, a));
                let phi3 = phi2.add(&b);
                let mu3 = Value::rat(m, k as i64)
                    .try_add(&Value::rat(1 + self.below(2) as i64, k as i64))
                    .unwrap();
                augs.push(AugRecord::Ordinary { phi: phi3, mu: mu3 });
            }
        } else if records >= 2 {
            // Stationary refinement directly over the first record.
            let b = pow_elem_poly(field, p, j as i64);
            let phi2 = phi1.add(&b);
            let mu2 = Value::rat(j as i64 + 1 + self.below(2) as i64, 1);
            augs.push(AugRecord::Ordinary { phi: phi2, mu: mu2 });
        }

        Chain { seed, augs }
    }

    /// A monic polynomial of the requested degree that stays irreducible after
    /// reduction mod p (so it is a key for the radius-zero Gauss valuation).
    pub fn residually_irreducible(&mut self, field: ValuedField, deg: usize) -> Poly {
        let p = field.prime();
        loop {
            let mut residues = vec![0u64; deg];
            for r in residues.iter_mut() {
                *r = self.below(p);
            }
            if is_irreducible_mod_p(p, &residues) {
                let mut coeffs: Vec<FieldElem> =
                    residues.iter().map(|r| field.from_int(*r as i64)).collect();
                coeffs.push(field.one());
                return Poly { field, coeffs };
            }
        }
    }
}

/// The uniformizer (p or t) raised to an integer power, as a field constant.
fn pow_elem(field: ValuedField, p: u64, e: i64) -> FieldElem {
    match field {
        ValuedField::PAdicRationals(_) => {
            let mut x = BigRational::from_integer(BigInt::from(1));
            let base = BigRational::from_integer(BigInt::from(p));
            for _ in 0..e.unsigned_abs() {
                x *= &base;
            }
            if e < 0 {
                x = x.recip();
            }
            FieldElem::Rat(x)
        }
        ValuedField::LaurentRationalFunctions(pp) => FieldElem::Fun(RatFun::t_power(pp, e)),
    }
}

fn pow_elem_poly(field: ValuedField, p: u64, e: i64) -> Poly {
    Poly::constant(field, pow_elem(field, p, e))
}

fn reduce_pair(j: u64, k: u64) -> (u64, u64) {
    let g = num_integer::gcd(j, k);
    (j / g, k / g)
}

fn mod_inverse(j: u64, k: u64) -> u64 {
    // gcd(j, k) = 1 and k small; brute force is fine.
    (1..k).find(|x| (x * j) % k == 1).unwrap_or(1)
}

/// Irreducibility of x^deg + Σ residues[i] x^i over F_p, by trial division for
/// deg ≤ 3 (no roots, and for deg ≥ 4 this helper is not used).
fn is_irreducible_mod_p(p: u64, residues: &[u64]) -> bool {
    let deg = residues.len();
    if deg == 1 {
        return true;
    }
    // Degree 2 or 3: irreducible over F_p iff no roots in F_p.
    for x in 0..p {
        let mut acc = 1u64; // leading coefficient
        for r in residues.iter().rev() {
            acc = (acc * x + r) % p;
        }
        if acc == 0 {
            return false;
        }
    }
    deg <= 3
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_across_runs() {
        let k = ValuedField::PAdicRationals(5);
        let mut a = Sampler::new(42);
        let mut b = Sampler::new(42);
        for _ in 0..20 {
            assert_eq!(a.poly(k, 4, 10), b.poly(k, 4, 10));
        }
        let mut c = Sampler::new(42);
        let mut d = Sampler::new(43);
        let differs = (0..20).any(|_| c.poly(k, 4, 10) != d.poly(k, 4, 10));
        assert!(differs);
    }

    #[test]
    fn monic_has_exact_degree() {
        let k = ValuedField::LaurentRationalFunctions(3);
        let mut s = Sampler::new(7);
        for d in 1..5 {
            let f = s.monic(k, d, 5);
            assert_eq!(f.degree(), Some(d));
            assert!(f.is_monic());
        }
    }

    #[test]
    fn residual_irreducibility_holds() {
        let k = ValuedField::PAdicRationals(3);
        let mut s = Sampler::new(11);
        for _ in 0..20 {
            let f = s.residually_irreducible(k, 2);
            // No root mod 3: f(x) has nonzero constant value mod 3 at all x.
            for x in 0..3i64 {
                let v = f.eval_at(&k.from_int(x));
                let val = k.vk(&v);
                assert_eq!(val, Value::zero(), "root mod 3 found in {f}");
            }
        }
    }
}
