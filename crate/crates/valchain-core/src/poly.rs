//! Dense univariate polynomials in T over a valued base field, with the exact
//! kernels the rest of the crate is built on: Euclidean division, expansion in
//! powers of a monic divisor, and derivatives that respect the coefficient
//! characteristic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElem, ValuedField};

/// A polynomial in T with coefficients in a fixed base field, stored densely,
/// lowest degree first, with no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub field: ValuedField,
    pub coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: ValuedField, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().map(FieldElem::is_zero) == Some(true) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: ValuedField) -> Poly {
        Poly { field, coeffs: vec![] }
    }

    pub fn one(field: ValuedField) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: ValuedField, c: FieldElem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The monomial T^k.
    pub fn t_power(field: ValuedField, k: usize) -> Poly {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        Poly { field, coeffs }
    }

    /// T - c.
    pub fn t_minus(field: ValuedField, c: FieldElem) -> Poly {
        Poly::new(field, vec![c.neg(), field.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(FieldElem::is_one) == Some(true)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Poly::new(self.field, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field, coeffs: self.coeffs.iter().map(FieldElem::neg).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field, out)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division by a nonzero divisor: returns (q, r) with
    /// self = q*g + r and deg r < deg g.
    pub fn euclid_divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        if g.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let dg = g.degree().unwrap();
        let lead_inv = self.field.one().div(g.leading().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quo = vec![self.field.zero(); self.coeffs.len().saturating_sub(dg)];
        while rem.len() > dg {
            let top = rem.last().unwrap().clone();
            if top.is_zero() {
                rem.pop();
                continue;
            }
            let shift = rem.len() - 1 - dg;
            let c = top.mul(&lead_inv);
            for (i, gc) in g.coeffs.iter().enumerate() {
                let t = rem[shift + i].sub(&c.mul(gc));
                rem[shift + i] = t;
            }
            quo[shift] = c;
            while rem.last().map(FieldElem::is_zero) == Some(true) {
                rem.pop();
            }
        }
        Ok((Poly::new(self.field, quo), Poly::new(self.field, rem)))
    }

    /// Writes self = Σ a_i φ^i with deg a_i < deg φ, returning [a_0, a_1, ...]
    /// lowest index first. φ must be monic of positive degree.
    pub fn phi_expansion(&self, phi: &Poly) -> Result<Vec<Poly>> {
        if phi.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantPhi);
        }
        let mut digits = Vec::new();
        let mut rest = self.clone();
        if rest.is_zero() {
            return Ok(vec![Poly::zero(self.field)]);
        }
        while !rest.is_zero() {
            let (q, r) = rest.euclid_divmod(phi)?;
            digits.push(r);
            rest = q;
        }
        Ok(digits)
    }

    /// The formal derivative, with integer multipliers reduced into the
    /// coefficient field (so T^p over F_p(t) differentiates to zero).
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let mult = self.field.from_int(i as i64);
            out.push(c.mul(&mult));
        }
        Poly::new(self.field, out)
    }

    /// Evaluates at a field element by Horner's rule.
    pub fn eval_at(&self, x: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitutes T -> T + c, returning the shifted polynomial.
    pub fn shift(&self, c: &FieldElem) -> Poly {
        let mut acc = Poly::zero(self.field);
        let x = Poly::new(self.field, vec![c.clone(), self.field.one()]);
        for coef in self.coeffs.iter().rev() {
            acc = acc.mul(&x).add(&Poly::constant(self.field, coef.clone()));
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => {
                    if c.is_one() {
                        f.write_str("T")?;
                    } else {
                        write!(f, "({c})*T")?;
                    }
                }
                _ => {
                    if c.is_one() {
                        write!(f, "T^{i}")?;
                    } else {
                        write!(f, "({c})*T^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_elem;

    fn q5() -> ValuedField {
        ValuedField::PAdicRationals(5)
    }

    fn poly_i(field: ValuedField, cs: &[i64]) -> Poly {
        Poly::new(field, cs.iter().map(|c| field.from_int(*c)).collect())
    }

    #[test]
    fn expansion_against_square() {
        // T^3 + 2T + 1 in powers of T^2: digits 2T+1 and T.
        let k = q5();
        let f = poly_i(k, &[1, 2, 0, 1]);
        let phi = Poly::t_power(k, 2);
        let digits = f.phi_expansion(&phi).unwrap();
        assert_eq!(digits, vec![poly_i(k, &[1, 2]), poly_i(k, &[0, 1])]);
    }

    #[test]
    fn expansion_of_phi_itself() {
        let k = q5();
        let phi = poly_i(k, &[-5, 0, 1]);
        let digits = phi.phi_expansion(&phi).unwrap();
        assert_eq!(digits, vec![Poly::zero(k), Poly::one(k)]);
    }

    #[test]
    fn expansion_binomial() {
        // T^4 = (T^2-3)^2 + 6(T^2-3) + 9 over Q_3.
        let k = ValuedField::PAdicRationals(3);
        let f = Poly::t_power(k, 4);
        let phi = poly_i(k, &[-3, 0, 1]);
        let digits = f.phi_expansion(&phi).unwrap();
        assert_eq!(digits, vec![poly_i(k, &[9]), poly_i(k, &[6]), poly_i(k, &[1])]);
    }

    #[test]
    fn expansion_rejects_constants() {
        let k = q5();
        let f = poly_i(k, &[1, 1]);
        assert_eq!(f.phi_expansion(&poly_i(k, &[2])), Err(Error::ConstantPhi));
        assert_eq!(f.phi_expansion(&Poly::zero(k)), Err(Error::ConstantPhi));
    }

    #[test]
    fn derivative_examples() {
        let k = q5();
        assert_eq!(poly_i(k, &[-5, 0, 1]).derivative(), poly_i(k, &[0, 2]));
        let kt = ValuedField::LaurentRationalFunctions(3);
        let cube = Poly::t_power(kt, 3);
        assert!(cube.derivative().is_zero());
    }

    #[test]
    fn division_examples() {
        let k = q5();
        let (q, r) = poly_i(k, &[1, 0, 1]).euclid_divmod(&Poly::t_power(k, 1)).unwrap();
        assert_eq!(q, poly_i(k, &[0, 1]));
        assert_eq!(r, poly_i(k, &[1]));
        let (q, r) = poly_i(k, &[-8, 0, 0, 1])
            .euclid_divmod(&poly_i(k, &[-2, 1]))
            .unwrap();
        assert_eq!(q, poly_i(k, &[4, 2, 1]));
        assert!(r.is_zero());
        assert_eq!(
            poly_i(k, &[1]).euclid_divmod(&Poly::zero(k)),
            Err(Error::DivisionByZeroPoly)
        );
    }

    #[test]
    fn division_with_fractional_coefficients() {
        let k = q5();
        // (3/2 T^3 + T - 1) / (T^2 - 5) and back.
        let f = Poly::new(
            k,
            vec![rat_elem(-1, 1), rat_elem(1, 1), rat_elem(0, 1), rat_elem(3, 2)],
        );
        let g = poly_i(k, &[-5, 0, 1]);
        let (q, r) = f.euclid_divmod(&g).unwrap();
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.degree() < g.degree());
    }

    #[test]
    fn reconstruction_from_digits() {
        let k = ValuedField::PAdicRationals(3);
        let f = Poly::new(
            k,
            vec![rat_elem(2, 3), rat_elem(-1, 1), rat_elem(4, 1), rat_elem(1, 2), rat_elem(7, 1)],
        );
        let phi = poly_i(k, &[1, 1, 1]);
        let digits = f.phi_expansion(&phi).unwrap();
        let mut acc = Poly::zero(k);
        for d in digits.iter().rev() {
            acc = acc.mul(&phi).add(d);
        }
        assert_eq!(acc, f);
        for d in &digits {
            assert!(d.degree().unwrap_or(0) < phi.degree().unwrap());
        }
    }

    #[test]
    fn shift_matches_taylor() {
        let k = q5();
        let f = poly_i(k, &[1, -3, 0, 2]);
        let c = rat_elem(7, 2);
        let shifted = f.shift(&c);
        // shifted(x) = f(x + c) pointwise.
        for x in [rat_elem(0, 1), rat_elem(1, 1), rat_elem(-2, 3)] {
            assert_eq!(shifted.eval_at(&x), f.eval_at(&x.add(&c)));
        }
        // Expansion of f in powers of (T - c) matches Taylor coefficients.
        let digits = f.phi_expansion(&Poly::t_minus(k, c.clone())).unwrap();
        let mut deriv = f.clone();
        let mut fact = rat_elem(1, 1);
        for (i, d) in digits.iter().enumerate() {
            if i > 0 {
                deriv = deriv.derivative();
                fact = fact.mul(&k.from_int(i as i64));
            }
            assert_eq!(d.coeff(0).mul(&fact), deriv.eval_at(&c));
        }
    }
}
