//! The two shipped base fields: the rationals with a p-adic valuation, and rational
//! functions over F_p with the t-adic order. Both have value group Z and exact,
//! canonical element arithmetic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::value::Value;

/// A valued base field. Copyable descriptor; elements carry their own data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuedField {
    /// The rationals with the p-adic valuation, normalized v(p) = 1.
    PAdicRationals(u64),
    /// F_p(t) with the t-adic order, normalized v(t) = 1.
    LaurentRationalFunctions(u64),
}

impl ValuedField {
    /// The residue/coefficient characteristic relevant to derivatives: p for the
    /// Laurent field (characteristic p), 0 for the p-adic rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            ValuedField::PAdicRationals(_) => 0,
            ValuedField::LaurentRationalFunctions(p) => *p,
        }
    }

    pub fn prime(&self) -> u64 {
        match self {
            ValuedField::PAdicRationals(p) | ValuedField::LaurentRationalFunctions(p) => *p,
        }
    }

    /// The zero element of this field.
    pub fn zero(&self) -> FieldElem {
        match self {
            ValuedField::PAdicRationals(_) => FieldElem::Rat(BigRational::zero()),
            ValuedField::LaurentRationalFunctions(p) => FieldElem::Fun(RatFun::zero(*p)),
        }
    }

    /// The unit element of this field.
    pub fn one(&self) -> FieldElem {
        match self {
            ValuedField::PAdicRationals(_) => FieldElem::Rat(BigRational::one()),
            ValuedField::LaurentRationalFunctions(p) => FieldElem::Fun(RatFun::one(*p)),
        }
    }

    /// Embeds an integer into the field (reduced mod p for the Laurent field).
    pub fn from_int(&self, n: i64) -> FieldElem {
        match self {
            ValuedField::PAdicRationals(_) => FieldElem::Rat(BigRational::from_integer(BigInt::from(n))),
            ValuedField::LaurentRationalFunctions(p) => {
                FieldElem::Fun(RatFun::constant(*p, n.rem_euclid(*p as i64) as u64))
            }
        }
    }

    /// The valuation of an element; Infinity exactly on zero.
    pub fn vk(&self, x: &FieldElem) -> Value {
        match (self, x) {
            (ValuedField::PAdicRationals(p), FieldElem::Rat(q)) => {
                if q.is_zero() {
                    return Value::Infinity;
                }
                let p = BigInt::from(*p);
                Value::int(ord_in(q.numer(), &p) - ord_in(q.denom(), &p))
            }
            (ValuedField::LaurentRationalFunctions(_), FieldElem::Fun(f)) => {
                if f.is_zero() {
                    return Value::Infinity;
                }
                Value::int(f.num.ord() as i64 - f.den.ord() as i64)
            }
            _ => panic!("element does not belong to this field"),
        }
    }

    /// A canonical constant of the requested valuation: p^q (resp. t^q) for integer
    /// q. Errors with NotInValueGroup for anything outside Z.
    pub fn element_of_valuation(&self, r: &Value) -> Result<FieldElem> {
        let q = match r {
            Value::Fin(q) if q.is_integer() => q.to_integer(),
            _ => return Err(Error::NotInValueGroup),
        };
        match self {
            ValuedField::PAdicRationals(p) => {
                let p = BigRational::from_integer(BigInt::from(*p));
                let mut x = BigRational::one();
                let (mag, pos) = (q.magnitude().clone(), !q.is_negative());
                let mut k = BigInt::from(mag);
                while k.is_positive() {
                    x *= &p;
                    k -= 1;
                }
                if !pos {
                    x = x.recip();
                }
                Ok(FieldElem::Rat(x))
            }
            ValuedField::LaurentRationalFunctions(p) => {
                let e = i64::try_from(q).map_err(|_| Error::NotInValueGroup)?;
                Ok(FieldElem::Fun(RatFun::t_power(*p, e)))
            }
        }
    }
}

fn ord_in(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut k = 0i64;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

/// An exact field element: a rational (p-adic field) or a reduced rational function
/// over F_p (Laurent field).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldElem {
    Rat(BigRational),
    Fun(RatFun),
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_zero(),
            FieldElem::Fun(f) => f.is_zero(),
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            (FieldElem::Fun(a), FieldElem::Fun(b)) => FieldElem::Fun(a.add(b)),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a - b),
            (FieldElem::Fun(a), FieldElem::Fun(b)) => FieldElem::Fun(a.sub(b)),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            (FieldElem::Fun(a), FieldElem::Fun(b)) => FieldElem::Fun(a.mul(b)),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn div(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => {
                assert!(!b.is_zero(), "division by zero");
                FieldElem::Rat(a / b)
            }
            (FieldElem::Fun(a), FieldElem::Fun(b)) => FieldElem::Fun(a.div(b)),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::Fun(a) => FieldElem::Fun(a.neg()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_one(),
            FieldElem::Fun(f) => f.num.is_one() && f.den.is_one(),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Fun(r) => write!(f, "{r}"),
        }
    }
}

/// A dense polynomial in t over F_p, least-degree-first coefficients in
/// the least nonnegative residues, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> FpPoly {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> FpPoly {
        FpPoly { p, coeffs: vec![1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Order of vanishing at t = 0 (index of the first nonzero coefficient).
    ///
    /// # Panics
    /// Panics on the zero polynomial.
    pub fn ord(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| *c != 0)
            .expect("order of the zero polynomial")
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + b) % p;
        }
        FpPoly::new(p, out)
    }

    pub fn neg(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|c| (p - c) % p).collect())
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        FpPoly::new(p, out)
    }

    fn inv_mod(p: u64, a: u64) -> u64 {
        // Fermat inverse; p is prime and a nonzero mod p.
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    }

    /// Euclidean division: self = q * g + r with deg r < deg g.
    ///
    /// # Panics
    /// Panics when g is zero.
    pub fn divmod(&self, g: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!g.is_zero(), "division by the zero polynomial over F_p");
        let p = self.p;
        let dg = g.degree().unwrap();
        let lead_inv = FpPoly::inv_mod(p, *g.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.coeffs.len().saturating_sub(dg)];
        while rem.len() > dg && !rem.is_empty() {
            let top = *rem.last().unwrap();
            if top == 0 {
                rem.pop();
                continue;
            }
            let shift = rem.len() - 1 - dg;
            let c = top * lead_inv % p;
            quo[shift] = c;
            for (i, gc) in g.coeffs.iter().enumerate() {
                let idx = shift + i;
                rem[idx] = (rem[idx] + p - c * gc % p) % p;
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (FpPoly::new(p, quo), FpPoly::new(p, rem))
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn make_monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = FpPoly::inv_mod(self.p, lead);
                FpPoly::new(self.p, self.coeffs.iter().map(|c| c * inv % self.p).collect())
            }
        }
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().map(|x| x * (c % self.p) % self.p).collect())
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => {
                    if *c == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "{c}*t")?;
                    }
                }
                _ => {
                    if *c == 1 {
                        write!(f, "t^{i}")?;
                    } else {
                        write!(f, "{c}*t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A reduced fraction of F_p[t] polynomials with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    pub num: FpPoly,
    pub den: FpPoly,
}

impl RatFun {
    pub fn new(num: FpPoly, den: FpPoly) -> RatFun {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun { den: FpPoly::one(num.p), num };
        }
        let g = num.gcd(&den);
        let (num, _) = num.divmod(&g);
        let (den, _) = den.divmod(&g);
        // Normalize the denominator to be monic.
        let lead = *den.coeffs.last().unwrap();
        let inv = FpPoly::inv_mod(den.p, lead);
        RatFun { num: num.scale(inv), den: den.scale(inv) }
    }

    pub fn zero(p: u64) -> RatFun {
        RatFun { num: FpPoly::zero(p), den: FpPoly::one(p) }
    }

    pub fn one(p: u64) -> RatFun {
        RatFun { num: FpPoly::one(p), den: FpPoly::one(p) }
    }

    pub fn constant(p: u64, c: u64) -> RatFun {
        RatFun { num: FpPoly::new(p, vec![c]), den: FpPoly::one(p) }
    }

    /// t^e for any integer e (negative exponents go to the denominator).
    pub fn t_power(p: u64, e: i64) -> RatFun {
        let mono = |k: usize| {
            let mut coeffs = vec![0u64; k + 1];
            coeffs[k] = 1;
            FpPoly::new(p, coeffs)
        };
        if e >= 0 {
            RatFun { num: mono(e as usize), den: FpPoly::one(p) }
        } else {
            RatFun { num: FpPoly::one(p), den: mono((-e) as usize) }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        RatFun::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RatFun) -> RatFun {
        assert!(!other.is_zero(), "division by zero");
        RatFun::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Convenience constructor for rational field elements from a pair of integers.
pub fn rat_elem(p: i64, q: i64) -> FieldElem {
    FieldElem::Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
}

/// Parses nothing; builds a rational function element from raw coefficient lists
/// (low-to-high in t) for tests and samplers.
pub fn fun_elem(p: u64, num: &[u64], den: &[u64]) -> FieldElem {
    FieldElem::Fun(RatFun::new(FpPoly::new(p, num.to_vec()), FpPoly::new(p, den.to_vec())))
}

/// Human-readable field descriptor (used in reports).
impl fmt::Display for ValuedField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuedField::PAdicRationals(p) => write!(f, "Q with v_{p}"),
            ValuedField::LaurentRationalFunctions(p) => write!(f, "F_{p}(t) with v_t"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padic_valuations() {
        let k = ValuedField::PAdicRationals(5);
        assert_eq!(k.vk(&rat_elem(50, 3)), Value::int(2));
        assert_eq!(ValuedField::PAdicRationals(2).vk(&rat_elem(0, 1)), Value::Infinity);
        assert_eq!(ValuedField::PAdicRationals(3).vk(&rat_elem(1, 9)), Value::int(-2));
    }

    #[test]
    fn laurent_valuations() {
        let k = ValuedField::LaurentRationalFunctions(3);
        let x = fun_elem(3, &[0, 0, 2], &[0, 1]); // 2t^2 / t
        assert_eq!(k.vk(&x), Value::int(1));
        assert_eq!(k.vk(&k.zero()), Value::Infinity);
        let y = fun_elem(3, &[1], &[0, 0, 1]); // 1 / t^2
        assert_eq!(k.vk(&y), Value::int(-2));
    }

    #[test]
    fn constants_of_requested_valuation() {
        let k5 = ValuedField::PAdicRationals(5);
        assert_eq!(k5.element_of_valuation(&Value::int(2)).unwrap(), rat_elem(25, 1));
        let k3 = ValuedField::PAdicRationals(3);
        assert_eq!(k3.element_of_valuation(&Value::int(-1)).unwrap(), rat_elem(1, 3));
        assert_eq!(k5.element_of_valuation(&Value::rat(1, 2)), Err(Error::NotInValueGroup));
        assert_eq!(k5.element_of_valuation(&Value::Infinity), Err(Error::NotInValueGroup));
        let kt = ValuedField::LaurentRationalFunctions(3);
        let t = kt.element_of_valuation(&Value::int(1)).unwrap();
        assert_eq!(kt.vk(&t), Value::int(1));
        let tinv = kt.element_of_valuation(&Value::int(-2)).unwrap();
        assert_eq!(kt.vk(&tinv), Value::int(-2));
    }

    #[test]
    fn rational_function_arithmetic_reduces() {
        let p = 5;
        let a = RatFun::new(FpPoly::new(p, vec![0, 1]), FpPoly::one(p)); // t
        let b = RatFun::new(FpPoly::one(p), FpPoly::new(p, vec![0, 1])); // 1/t
        assert_eq!(a.mul(&b), RatFun::one(p));
        let c = a.add(&b); // (t^2+1)/t
        assert_eq!(c.num, FpPoly::new(p, vec![1, 0, 1]));
        assert_eq!(c.den, FpPoly::new(p, vec![0, 1]));
        assert_eq!(c.sub(&c), RatFun::zero(p));
        // Denominator normalization: 2t/2 reduces to t.
        let d = RatFun::new(FpPoly::new(p, vec![0, 2]), FpPoly::new(p, vec![2]));
        assert_eq!(d, a);
    }

    #[test]
    fn fp_poly_division_and_gcd() {
        let p = 3;
        let f = FpPoly::new(p, vec![2, 0, 1]); // t^2 + 2
        let g = FpPoly::new(p, vec![1, 1]); // t + 1
        let (q, r) = f.divmod(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.degree() < g.degree());
        let h = f.mul(&g);
        assert_eq!(h.gcd(&g), g.make_monic());
    }

    #[test]
    fn ultrametric_axioms_on_samples() {
        let k = ValuedField::PAdicRationals(5);
        let xs = [rat_elem(50, 3), rat_elem(-7, 10), rat_elem(125, 4), rat_elem(2, 25)];
        for a in &xs {
            for b in &xs {
                let va = k.vk(a);
                let vb = k.vk(b);
                assert_eq!(k.vk(&a.mul(b)), va.try_add(&vb).unwrap());
                let vsum = k.vk(&a.add(b));
                let lower = crate::value::value_min(&[va.clone(), vb.clone()]).unwrap();
                assert!(vsum.try_cmp(&lower).unwrap() != core::cmp::Ordering::Less);
                if va != vb {
                    assert_eq!(vsum, lower);
                }
            }
        }
    }
}
