//! Augmentation chains: a Gauss seed followed by ordinary, limit, and
//! stable-family records. Realization turns a chain into a semi-valuation with
//! structural validation along the way; step computation and two validators
//! (target-value optimality and the degree/inequivalence surrogate) live here
//! as well.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{ChainFault, Error, Result};
use crate::poly::Poly;
use crate::valuation::{FamilyPrefix, GaussVal, SemiVal};
use crate::value::{Value, ValueGroup};

/// One augmentation step in a chain.
#[derive(Debug, Clone, PartialEq)]
pub enum AugRecord {
    Ordinary { phi: Poly, mu: Value },
    Limit { family: FamilyPrefix, phi: Poly, mu: Value },
    StableFamily { family: FamilyPrefix },
}

/// A Gauss seed plus augmentation records, in order.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub seed: GaussVal,
    pub augs: Vec<AugRecord>,
}

/// Outcome of a chain validator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(String),
}

impl Chain {
    pub fn new(seed: GaussVal, augs: Vec<AugRecord>) -> Chain {
        Chain { seed, augs }
    }

    /// Errors unless the seed radius lies in the base field's value group.
    /// Realization itself accepts any seed; this stricter check backs the
    /// validators and the flavors of computation that need a simple seed.
    pub fn require_simple_seed(&self) -> Result<()> {
        if self.seed.is_simple() {
            Ok(())
        } else {
            Err(Error::InvalidChain(ChainFault::SeedNotSimple))
        }
    }

    /// The semi-valuation after each prefix: entry 0 is the seed, entry i the
    /// realization of the first i records. Validates structure as it goes.
    pub fn prefix_realizations(&self) -> Result<Vec<SemiVal>> {
        let mut out = Vec::with_capacity(self.augs.len() + 1);
        let mut last_radius = self.seed.radius.clone();
        out.push(SemiVal::Gauss(self.seed.clone()));
        for (idx, rec) in self.augs.iter().enumerate() {
            let base = out.last().unwrap();
            let node = match rec {
                AugRecord::Ordinary { phi, mu } => {
                    check_key_shape(phi)?;
                    let v = base.eval(phi)?;
                    if v == Value::Infinity {
                        return Err(Error::InvalidChain(ChainFault::KeyInKernel));
                    }
                    if mu.try_cmp(&v)? == Ordering::Less {
                        return Err(Error::InvalidChain(ChainFault::RadiusBelowKeyValue));
                    }
                    if mu.try_cmp(&last_radius)? != Ordering::Greater {
                        return Err(Error::InvalidChain(ChainFault::NonIncreasingGamma));
                    }
                    last_radius = mu.clone();
                    SemiVal::Ordinary { base: Box::new(base.clone()), phi: phi.clone(), mu: mu.clone() }
                }
                AugRecord::Limit { family, phi, mu } => {
                    check_family_shape(family, base, &last_radius)?;
                    check_key_shape(phi)?;
                    let (psi_last, gamma_last) = family.pairs.last().unwrap();
                    let v_last = SemiVal::Ordinary {
                        base: Box::new(base.clone()),
                        phi: psi_last.clone(),
                        mu: gamma_last.clone(),
                    }
                    .eval(phi)?;
                    if mu.try_cmp(&v_last)? == Ordering::Less {
                        return Err(Error::InvalidChain(ChainFault::RadiusBelowKeyValue));
                    }
                    if mu.try_cmp(gamma_last)? != Ordering::Greater {
                        return Err(Error::InvalidChain(ChainFault::NonIncreasingGamma));
                    }
                    last_radius = mu.clone();
                    SemiVal::Limit {
                        base: Box::new(base.clone()),
                        family: family.clone(),
                        phi: phi.clone(),
                        mu: mu.clone(),
                    }
                }
                AugRecord::StableFamily { family } => {
                    if idx + 1 != self.augs.len() {
                        return Err(Error::InvalidChain(ChainFault::StableFamilyNotLast));
                    }
                    check_family_shape(family, base, &last_radius)?;
                    last_radius = family.declared_gamma_limit.clone();
                    SemiVal::StableFamily { base: Box::new(base.clone()), family: family.clone() }
                }
            };
            out.push(node);
        }
        Ok(out)
    }

    /// The semi-valuation the whole chain represents.
    pub fn realize(&self) -> Result<SemiVal> {
        Ok(self.prefix_realizations()?.pop().unwrap())
    }

    /// Per-record step contributions, in record order.
    pub fn step_breakdown(&self) -> Result<Vec<Value>> {
        let prefixes = self.prefix_realizations()?;
        let mut out = Vec::with_capacity(self.augs.len());
        for (i, rec) in self.augs.iter().enumerate() {
            let base = &prefixes[i];
            out.push(record_step(base, rec)?);
        }
        Ok(out)
    }

    /// Sum of the per-record steps; zero for the bare seed.
    pub fn step_of(&self) -> Result<Value> {
        let mut total = Value::zero();
        for s in self.step_breakdown()? {
            total = total.try_add(&s)?;
        }
        Ok(total)
    }

    /// Every key polynomial the chain mentions: the seed key T−α, each
    /// record's key, and all family members.
    pub fn keys(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        out.push(Poly::t_minus(self.seed.field, self.seed.center.clone()));
        for rec in &self.augs {
            match rec {
                AugRecord::Ordinary { phi, .. } => out.push(phi.clone()),
                AugRecord::Limit { family, phi, .. } => {
                    out.extend(family.pairs.iter().map(|(psi, _)| psi.clone()));
                    out.push(phi.clone());
                }
                AugRecord::StableFamily { family } => {
                    out.extend(family.pairs.iter().map(|(psi, _)| psi.clone()));
                }
            }
        }
        out
    }

    /// The value group generated by the base field's group together with the
    /// seed radius and every finite radius appearing in the records.
    pub fn value_group(&self) -> ValueGroup {
        let mut g = ValueGroup::z();
        g = g.join(&self.seed.radius);
        for rec in &self.augs {
            match rec {
                AugRecord::Ordinary { mu, .. } => g = g.join(mu),
                AugRecord::Limit { family, mu, .. } => {
                    for (_, gamma) in &family.pairs {
                        g = g.join(gamma);
                    }
                    g = g.join(mu);
                }
                AugRecord::StableFamily { family } => {
                    for (_, gamma) in &family.pairs {
                        g = g.join(gamma);
                    }
                }
            }
        }
        g
    }

    /// Checks that each recorded radius equals the supplied target valuation
    /// of its key. Targets are matched by polynomial equality; a key with no
    /// target is an error.
    pub fn validate_w_optimal(&self, w_values: &[(Poly, Value)]) -> Result<Verdict> {
        let lookup = |phi: &Poly| -> Result<&Value> {
            w_values
                .iter()
                .find(|(p, _)| p == phi)
                .map(|(_, v)| v)
                .ok_or(Error::MissingTargetValue)
        };
        for (i, rec) in self.augs.iter().enumerate() {
            match rec {
                AugRecord::Ordinary { phi, mu } | AugRecord::Limit { phi, mu, .. } => {
                    let target = lookup(phi)?;
                    if target != mu {
                        return Ok(Verdict::Rejected(format!(
                            "record {i}: radius {mu} but target value {target}"
                        )));
                    }
                    if let AugRecord::Limit { family, .. } = rec {
                        for (j, (psi, gamma)) in family.pairs.iter().enumerate() {
                            let target = lookup(psi)?;
                            if target != gamma {
                                return Ok(Verdict::Rejected(format!(
                                    "record {i}, family member {j}: gamma {gamma} but target value {target}"
                                )));
                            }
                        }
                    }
                }
                AugRecord::StableFamily { family } => {
                    for (j, (psi, gamma)) in family.pairs.iter().enumerate() {
                        let target = lookup(psi)?;
                        if target != gamma {
                            return Ok(Verdict::Rejected(format!(
                                "record {i}, family member {j}: gamma {gamma} but target value {target}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Verdict::Accepted)
    }

    /// Surrogate structural check for well-formed augmentation order: key
    /// degrees of consecutive ordinary records strictly increase, or a
    /// degree-stationary record is inequivalent to its predecessor under the
    /// intermediate valuation; limit keys are at least as large as their
    /// family degree, which must exceed the preceding key's degree class.
    /// This is a computable surrogate, not a complete criterion.
    pub fn validate_key_order(&self) -> Result<Verdict> {
        let prefixes = self.prefix_realizations()?;
        let mut prev_key: Option<Poly> = None;
        for (i, rec) in self.augs.iter().enumerate() {
            match rec {
                AugRecord::Ordinary { phi, .. } => {
                    if let Some(prev) = &prev_key {
                        let dp = prev.degree().unwrap();
                        let dc = phi.degree().unwrap();
                        if dc < dp {
                            return Ok(Verdict::Rejected(format!(
                                "record {i}: key degree drops from {dp} to {dc} (surrogate check)"
                            )));
                        }
                        if dc == dp && prefixes[i].v_equivalent(phi, prev)? {
                            return Ok(Verdict::Rejected(format!(
                                "record {i}: degree-stationary key is equivalent to its predecessor (surrogate check)"
                            )));
                        }
                    }
                    prev_key = Some(phi.clone());
                }
                AugRecord::Limit { family, phi, .. } => {
                    let m = family.degree();
                    if phi.degree().unwrap_or(0) < m {
                        return Ok(Verdict::Rejected(format!(
                            "record {i}: limit key degree below family degree {m} (surrogate check)"
                        )));
                    }
                    if let Some(prev) = &prev_key {
                        if prev.degree().unwrap() == m {
                            return Ok(Verdict::Rejected(format!(
                                "record {i}: preceding key already has the family degree {m} (surrogate check)"
                            )));
                        }
                    }
                    prev_key = Some(phi.clone());
                }
                AugRecord::StableFamily { .. } => {}
            }
        }
        Ok(Verdict::Accepted)
    }
}

fn check_key_shape(phi: &Poly) -> Result<()> {
    if !phi.is_monic() {
        return Err(Error::InvalidChain(ChainFault::KeyNotMonic));
    }
    if phi.degree() == Some(0) {
        return Err(Error::InvalidChain(ChainFault::ConstantKey));
    }
    Ok(())
}

fn check_family_shape(family: &FamilyPrefix, base: &SemiVal, last_radius: &Value) -> Result<()> {
    if family.pairs.is_empty() {
        return Err(Error::InvalidChain(ChainFault::EmptyFamily));
    }
    let degree = family.pairs[0].0.degree();
    let mut common_value: Option<Value> = None;
    let mut prev_gamma = last_radius.clone();
    for (psi, gamma) in &family.pairs {
        check_key_shape(psi)?;
        if psi.degree() != degree {
            return Err(Error::InvalidChain(ChainFault::UnequalFamilyDegrees));
        }
        let v = base.eval(psi)?;
        if v == Value::Infinity {
            return Err(Error::InvalidChain(ChainFault::KeyInKernel));
        }
        match &common_value {
            None => common_value = Some(v),
            Some(c) => {
                if *c != v {
                    return Err(Error::InvalidChain(ChainFault::FamilyValueNotConstant));
                }
            }
        }
        if gamma.try_cmp(common_value.as_ref().unwrap())? == Ordering::Less {
            return Err(Error::InvalidChain(ChainFault::RadiusBelowKeyValue));
        }
        if gamma.try_cmp(&prev_gamma)? != Ordering::Greater {
            return Err(Error::InvalidChain(ChainFault::NonIncreasingGamma));
        }
        prev_gamma = gamma.clone();
    }
    if family
        .declared_gamma_limit
        .try_cmp(&family.pairs.last().unwrap().1)?
        == Ordering::Less
    {
        return Err(Error::InvalidChain(ChainFault::GammaLimitBelowFamily));
    }
    Ok(())
}

fn record_step(base: &SemiVal, rec: &AugRecord) -> Result<Value> {
    match rec {
        AugRecord::Ordinary { phi, mu } => {
            let v = base.eval(phi)?;
            mu.try_sub(&v)
        }
        AugRecord::StableFamily { family } => {
            let v_psi = base.eval(&family.pairs[0].0)?;
            family.declared_gamma_limit.try_sub(&v_psi)
        }
        AugRecord::Limit { family, phi, mu } => {
            let v_psi = base.eval(&family.pairs[0].0)?;
            let family_step = family.declared_gamma_limit.try_sub(&v_psi)?;
            let n = family.pairs.len();
            if n < 2 {
                return Err(Error::FamilyPrefixTooShort);
            }
            let stage = |i: usize| -> Result<Value> {
                let (psi, gamma) = &family.pairs[i];
                let v = SemiVal::Ordinary {
                    base: Box::new(base.clone()),
                    phi: psi.clone(),
                    mu: gamma.clone(),
                }
                .eval(phi)?;
                mu.try_sub(&v)
            };
            let a = stage(n - 2)?;
            let b = stage(n - 1)?;
            if a != b {
                return Err(Error::FamilyPrefixTooShort);
            }
            family_step.try_add(&b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ValuedField;
    use crate::sample::Sampler;
    use crate::value::Value;
    use alloc::vec;

    fn poly_i(field: ValuedField, cs: &[i64]) -> Poly {
        Poly::new(field, cs.iter().map(|c| field.from_int(*c)).collect())
    }

    fn seed(p: u64, radius: Value) -> GaussVal {
        let field = ValuedField::PAdicRationals(p);
        GaussVal { field, center: field.from_int(0), radius }
    }

    #[test]
    fn empty_chain_realizes_the_seed() {
        let c = Chain::new(seed(5, Value::zero()), vec![]);
        let v = c.realize().unwrap();
        assert_eq!(v, SemiVal::Gauss(c.seed.clone()));
        assert_eq!(c.step_of().unwrap(), Value::zero());
    }

    #[test]
    fn reaugmented_gauss_matches_wider_gauss() {
        let field = ValuedField::PAdicRationals(5);
        let c = Chain::new(
            seed(5, Value::zero()),
            vec![AugRecord::Ordinary { phi: poly_i(field, &[0, 1]), mu: Value::rat(1, 2) }],
        );
        let v = c.realize().unwrap();
        let direct = GaussVal { field, center: field.from_int(0), radius: Value::rat(1, 2) };
        let mut s = Sampler::new(3);
        for _ in 0..100 {
            let f = s.poly(field, 5, 25);
            assert_eq!(v.eval(&f).unwrap(), direct.eval(&f).unwrap());
        }
    }

    #[test]
    fn kernel_chain_vanishes_on_multiples() {
        let field = ValuedField::PAdicRationals(5);
        let phi = poly_i(field, &[-5, 0, 1]);
        let c = Chain::new(
            seed(5, Value::zero()),
            vec![
                AugRecord::Ordinary { phi: poly_i(field, &[0, 1]), mu: Value::rat(1, 2) },
                AugRecord::Ordinary { phi: phi.clone(), mu: Value::Infinity },
            ],
        );
        let v = c.realize().unwrap();
        let mut s = Sampler::new(4);
        for _ in 0..30 {
            let g = s.nonzero_poly(field, 3, 9);
            assert_eq!(v.eval(&phi.mul(&g)).unwrap(), Value::Infinity);
        }
        assert!(v.eval(&poly_i(field, &[0, 1])).unwrap() != Value::Infinity);
    }

    #[test]
    fn step_sums_record_contributions() {
        let field = ValuedField::PAdicRationals(3);
        let c = Chain::new(
            seed(3, Value::zero()),
            vec![
                AugRecord::Ordinary { phi: poly_i(field, &[0, 1]), mu: Value::rat(1, 2) },
                AugRecord::Ordinary { phi: poly_i(field, &[-3, 0, 1]), mu: Value::rat(3, 2) },
            ],
        );
        assert_eq!(c.step_of().unwrap(), Value::int(1));
        assert_eq!(c.step_breakdown().unwrap(), vec![Value::rat(1, 2), Value::rat(1, 2)]);
    }

    #[test]
    fn family_step_uses_declared_limit() {
        let field = ValuedField::PAdicRationals(2);
        let t = poly_i(field, &[0, 1]);
        let pairs: Vec<(Poly, Value)> = (1..=5)
            .map(|i| {
                let gamma = Value::int(1).try_sub(&Value::rat(1, 1 << i)).unwrap();
                (t.clone(), gamma)
            })
            .collect();
        let c = Chain::new(
            seed(2, Value::zero()),
            vec![AugRecord::StableFamily {
                family: FamilyPrefix { pairs, declared_gamma_limit: Value::int(1) },
            }],
        );
        assert_eq!(c.step_of().unwrap(), Value::int(1));
    }

    #[test]
    fn faults_are_reported() {
        let field = ValuedField::PAdicRationals(5);
        let t = poly_i(field, &[0, 1]);
        // Radius below the key's current value.
        let c = Chain::new(
            seed(5, Value::zero()),
            vec![AugRecord::Ordinary { phi: poly_i(field, &[-5, 0, 1]), mu: Value::rat(-1, 2) }],
        );
        assert_eq!(
            c.realize(),
            Err(Error::InvalidChain(ChainFault::RadiusBelowKeyValue))
        );
        // Non-increasing radii across records.
        let c = Chain::new(
            seed(5, Value::zero()),
            vec![
                AugRecord::Ordinary { phi: t.clone(), mu: Value::int(1) },
                AugRecord::Ordinary { phi: poly_i(field, &[-1, 1]), mu: Value::rat(1, 2) },
            ],
        );
        assert_eq!(c.realize(), Err(Error::InvalidChain(ChainFault::NonIncreasingGamma)));
        // Stable family must be final.
        let fam = FamilyPrefix {
            pairs: vec![(t.clone(), Value::int(1)), (t.clone(), Value::int(2))],
            declared_gamma_limit: Value::int(2),
        };
        let c = Chain::new(
            seed(5, Value::zero()),
            vec![
                AugRecord::StableFamily { family: fam },
                AugRecord::Ordinary { phi: t.clone(), mu: Value::int(3) },
            ],
        );
        assert_eq!(c.realize(), Err(Error::InvalidChain(ChainFault::StableFamilyNotLast)));
        // Non-monic key.
        let c = Chain::new(
            seed(5, Value::zero()),
            vec![AugRecord::Ordinary { phi: poly_i(field, &[0, 2]), mu: Value::int(1) }],
        );
        assert_eq!(c.realize(), Err(Error::InvalidChain(ChainFault::KeyNotMonic)));
        // Augmenting at a kernel element.
        let c = Chain::new(
            seed(5, Value::zero()),
            vec![
                AugRecord::Ordinary { phi: t.clone(), mu: Value::Infinity },
                AugRecord::Ordinary { phi: t.mul(&t), mu: Value::Infinity },
            ],
        );
        assert_eq!(c.realize(), Err(Error::InvalidChain(ChainFault::KeyInKernel)));
        // Simple-seed requirement is a separate, opt-in check.
        let c = Chain::new(seed(5, Value::rat(1, 2)), vec![]);
        assert!(c.realize().is_ok());
        assert_eq!(
            c.require_simple_seed(),
            Err(Error::InvalidChain(ChainFault::SeedNotSimple))
        );
    }

    #[test]
    fn w_optimal_validation() {
        let field = ValuedField::PAdicRationals(5);
        let t = poly_i(field, &[0, 1]);
        let c = Chain::new(
            seed(5, Value::zero()),
            vec![AugRecord::Ordinary { phi: t.clone(), mu: Value::rat(1, 2) }],
        );
        let w = c.realize().unwrap();
        let targets = vec![(t.clone(), w.eval(&t).unwrap())];
        assert_eq!(c.validate_w_optimal(&targets), Ok(Verdict::Accepted));
        let wrong = vec![(t.clone(), Value::int(1))];
        assert!(matches!(c.validate_w_optimal(&wrong), Ok(Verdict::Rejected(_))));
        assert_eq!(c.validate_w_optimal(&[]), Err(Error::MissingTargetValue));
    }

    #[test]
    fn key_order_surrogate_validation() {
        let field = ValuedField::PAdicRationals(5);
        let t = poly_i(field, &[0, 1]);
        let quad = poly_i(field, &[2, 0, 1]);
        let quartic = poly_i(field, &[5, 0, 0, 0, 1]);
        let c = Chain::new(
            seed(5, Value::zero()),
            vec![
                AugRecord::Ordinary { phi: t.clone(), mu: Value::rat(1, 3) },
                AugRecord::Ordinary { phi: quad.clone(), mu: Value::int(1) },
                AugRecord::Ordinary { phi: quartic, mu: Value::int(3) },
            ],
        );
        assert_eq!(c.validate_key_order(), Ok(Verdict::Accepted));
        // Identical consecutive keys are flagged.
        let c = Chain::new(
            seed(5, Value::zero()),
            vec![
                AugRecord::Ordinary { phi: t.clone(), mu: Value::rat(1, 2) },
                AugRecord::Ordinary { phi: t.clone(), mu: Value::int(1) },
            ],
        );
        assert!(matches!(c.validate_key_order(), Ok(Verdict::Rejected(_))));
        // Equal degree but inequivalent keys pass.
        let c = Chain::new(
            seed(5, Value::zero()),
            vec![
                AugRecord::Ordinary { phi: quad.clone(), mu: Value::int(1) },
                AugRecord::Ordinary { phi: quad.add(&poly_i(field, &[5, 5])), mu: Value::int(2) },
            ],
        );
        assert_eq!(c.validate_key_order(), Ok(Verdict::Accepted));
    }

    #[test]
    fn prefixes_are_pointwise_monotone() {
        let field = ValuedField::PAdicRationals(3);
        let c = Chain::new(
            seed(3, Value::zero()),
            vec![
                AugRecord::Ordinary { phi: poly_i(field, &[0, 1]), mu: Value::rat(1, 2) },
                AugRecord::Ordinary { phi: poly_i(field, &[-3, 0, 1]), mu: Value::rat(3, 2) },
            ],
        );
        let prefixes = c.prefix_realizations().unwrap();
        let mut s = Sampler::new(6);
        for _ in 0..50 {
            let f = s.poly(field, 5, 12);
            for w in prefixes.windows(2) {
                let lo = w[0].eval(&f).unwrap();
                let hi = w[1].eval(&f).unwrap();
                assert!(hi.try_cmp(&lo).unwrap() != core::cmp::Ordering::Less);
            }
        }
    }
}
