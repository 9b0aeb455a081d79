//! Semi-valuations on K[T]: Gauss valuations, ordinary augmentations, limit
//! augmentations over a finite family prefix, and stable-family limits. The
//! central operation is exact evaluation at a polynomial; on top of it sit
//! v-equivalence and a randomized plausibility check for key polynomials.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{FieldElem, ValuedField};
use crate::poly::Poly;
use crate::sample::Sampler;
use crate::value::{value_min, Value};

/// The valuation v(Σ a_i (T−α)^i) = min_i (v_K(a_i) + i·radius).
#[derive(Debug, Clone, PartialEq)]
pub struct GaussVal {
    pub field: ValuedField,
    pub center: FieldElem,
    pub radius: Value,
}

impl GaussVal {
    /// Simple means the radius already lies in the base field's value group.
    pub fn is_simple(&self) -> bool {
        matches!(&self.radius, Value::Fin(q) if q.is_integer())
    }

    /// Exact evaluation via the (T−α)-expansion.
    pub fn eval(&self, f: &Poly) -> Result<Value> {
        if f.is_zero() {
            return Ok(Value::Infinity);
        }
        let phi = Poly::t_minus(self.field, self.center.clone());
        let digits = f.phi_expansion(&phi)?;
        let mut terms = Vec::new();
        for (i, a) in digits.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let base = self.field.vk(&a.coeff(0));
            terms.push(base.add_scaled(i, &self.radius)?);
        }
        value_min(&terms)
    }

    /// The same valuation computed by recentering f at α first. Kept as an
    /// independent code path for self-consistency checks.
    pub fn eval_by_shift(&self, f: &Poly) -> Result<Value> {
        if f.is_zero() {
            return Ok(Value::Infinity);
        }
        let g = f.shift(&self.center);
        let mut terms = Vec::new();
        for (i, c) in g.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(self.field.vk(c).add_scaled(i, &self.radius)?);
        }
        value_min(&terms)
    }
}

/// A finite prefix of a continuous family of augmentations: pairs (ψ_i, γ_i)
/// with strictly increasing γ_i and equal-degree monic ψ_i, plus the declared
/// limit of the γ_i (possibly infinite).
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyPrefix {
    pub pairs: Vec<(Poly, Value)>,
    pub declared_gamma_limit: Value,
}

impl FamilyPrefix {
    /// The common degree of the family keys.
    pub fn degree(&self) -> usize {
        self.pairs[0].0.degree().unwrap_or(0)
    }
}

/// A semi-valuation, represented by how it was built.
#[derive(Debug, Clone, PartialEq)]
pub enum SemiVal {
    Gauss(GaussVal),
    Ordinary { base: Box<SemiVal>, phi: Poly, mu: Value },
    Limit { base: Box<SemiVal>, family: FamilyPrefix, phi: Poly, mu: Value },
    StableFamily { base: Box<SemiVal>, family: FamilyPrefix },
}

impl SemiVal {
    pub fn field(&self) -> ValuedField {
        match self {
            SemiVal::Gauss(g) => g.field,
            SemiVal::Ordinary { base, .. }
            | SemiVal::Limit { base, .. }
            | SemiVal::StableFamily { base, .. } => base.field(),
        }
    }

    /// Exact evaluation at a polynomial. Infinity appears exactly on the
    /// kernel (multiples of φ when μ = ∞, and the zero polynomial).
    pub fn eval(&self, f: &Poly) -> Result<Value> {
        match self {
            SemiVal::Gauss(g) => g.eval(f),
            SemiVal::Ordinary { base, phi, mu } => eval_ordinary(base, phi, mu, f),
            SemiVal::Limit { base, family, phi, mu } => {
                if f.is_zero() {
                    return Ok(Value::Infinity);
                }
                let digits = f.phi_expansion(phi)?;
                let mut terms = Vec::new();
                for (i, a) in digits.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let b = family_limit_eval(base, family, a)?;
                    terms.push(b.add_scaled(i, mu)?);
                }
                value_min(&terms)
            }
            SemiVal::StableFamily { base, family } => family_limit_eval(base, family, f),
        }
    }

    /// f ∼ g under this valuation: both are zero, or v(f − g) > v(f).
    pub fn v_equivalent(&self, f: &Poly, g: &Poly) -> Result<bool> {
        if f.is_zero() && g.is_zero() {
            return Ok(true);
        }
        let vd = self.eval(&f.sub(g))?;
        let vf = self.eval(f)?;
        Ok(vd.try_cmp(&vf)? == Ordering::Greater)
    }

    /// Tests g ∼ q·h for the Euclidean quotient q of g by h, the canonical
    /// cofactor. On genuine keys this detects divisibility completely; in
    /// general it is a sound one-sided test. Returns the verified cofactor.
    fn divides_by_quotient(&self, h: &Poly, g: &Poly) -> Result<Option<Poly>> {
        if h.degree() > g.degree() {
            return Ok(None);
        }
        let (q, r) = g.euclid_divmod(h)?;
        if q.is_zero() {
            return Ok(None);
        }
        let vr = self.eval(&r)?;
        let vg = self.eval(g)?;
        if vr.try_cmp(&vg)? == Ordering::Greater {
            Ok(Some(q))
        } else {
            Ok(None)
        }
    }
}

fn eval_ordinary(base: &SemiVal, phi: &Poly, mu: &Value, f: &Poly) -> Result<Value> {
    if f.is_zero() {
        return Ok(Value::Infinity);
    }
    let digits = f.phi_expansion(phi)?;
    let mut terms = Vec::new();
    for (i, a) in digits.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let b = base.eval(a)?;
        terms.push(b.add_scaled(i, mu)?);
    }
    value_min(&terms)
}

/// The limit value of v_i(g) along the family, certified by agreement of the
/// last two prefix stages; disagreement means the prefix is too short to
/// witness stabilization.
pub(crate) fn family_limit_eval(
    base: &SemiVal,
    family: &FamilyPrefix,
    g: &Poly,
) -> Result<Value> {
    let n = family.pairs.len();
    if n < 2 {
        return Err(Error::FamilyPrefixTooShort);
    }
    let (psi_a, gamma_a) = &family.pairs[n - 2];
    let (psi_b, gamma_b) = &family.pairs[n - 1];
    let va = eval_ordinary(base, psi_a, gamma_a, g)?;
    let vb = eval_ordinary(base, psi_b, gamma_b, g)?;
    if va == vb {
        Ok(vb)
    } else {
        Err(Error::FamilyPrefixTooShort)
    }
}

/// Outcome of the randomized key-polynomial check.
#[derive(Debug, Clone, PartialEq)]
pub enum KeyVerdict {
    Accepted,
    RefutedWithWitness(KeyRefutation),
}

/// The evidence behind a refutation. Witness-bearing variants are verified
/// before being returned; the others are structural.
#[derive(Debug, Clone, PartialEq)]
pub enum KeyRefutation {
    NotMonic,
    Constant,
    /// via·cofactor ∼ φ with deg via < deg φ, so a lower-degree polynomial
    /// divides φ up to equivalence.
    LowerDegreeDivisor { via: Poly, cofactor: Poly },
    /// φ divides h1·h2 up to equivalence but divides neither factor by the
    /// quotient test.
    SplitProduct { h1: Poly, h2: Poly },
}

/// Monte-Carlo falsifier for the key-polynomial property (monic, minimal, and
/// irreducible with respect to v-divisibility). `Accepted` means no violation
/// was found within the given budget; it is evidence, not a certificate.
/// Refutations with witnesses are exact: the returned pairs satisfy the
/// claimed equivalences under v.
pub fn check_key_plausible(
    v: &SemiVal,
    phi: &Poly,
    trials: u32,
    degree_bound: usize,
    height_bound: u64,
    seed: u64,
) -> Result<KeyVerdict> {
    if !phi.is_monic() {
        return Ok(KeyVerdict::RefutedWithWitness(KeyRefutation::NotMonic));
    }
    let dphi = phi.degree().unwrap();
    if dphi == 0 {
        return Ok(KeyVerdict::RefutedWithWitness(KeyRefutation::Constant));
    }
    let field = v.field();

    // Deterministic sweep of small linear candidates below deg φ.
    if dphi >= 2 {
        for c in [0i64, 1, -1, 2, -2] {
            if c.unsigned_abs() > height_bound {
                continue;
            }
            let cand = Poly::t_minus(field, field.from_int(c));
            if let Some(q) = v.divides_by_quotient(&cand, phi)? {
                return Ok(KeyVerdict::RefutedWithWitness(KeyRefutation::LowerDegreeDivisor {
                    via: cand,
                    cofactor: q,
                }));
            }
        }
    }

    let mut s = Sampler::new(seed);
    for _ in 0..trials {
        // Minimality: hunt for a lower-degree divisor of φ.
        if dphi >= 2 {
            let d = 1 + s.below((dphi - 1).min(degree_bound).max(1) as u64) as usize;
            let cand = s.monic(field, d, height_bound);
            if let Some(q) = v.divides_by_quotient(&cand, phi)? {
                return Ok(KeyVerdict::RefutedWithWitness(KeyRefutation::LowerDegreeDivisor {
                    via: cand,
                    cofactor: q,
                }));
            }
        }
        // Irreducibility: hunt for a product φ divides without dividing a factor.
        let d1 = 1 + s.below(degree_bound.max(1) as u64) as usize;
        let d2 = 1 + s.below(degree_bound.max(1) as u64) as usize;
        let h1 = s.monic(field, d1, height_bound);
        let h2 = s.monic(field, d2, height_bound);
        let prod = h1.mul(&h2);
        if prod.degree() < phi.degree() {
            continue;
        }
        if v.divides_by_quotient(phi, &prod)?.is_some()
            && v.divides_by_quotient(phi, &h1)?.is_none()
            && v.divides_by_quotient(phi, &h2)?.is_none()
        {
            return Ok(KeyVerdict::RefutedWithWitness(KeyRefutation::SplitProduct { h1, h2 }));
        }
    }
    Ok(KeyVerdict::Accepted)
}
