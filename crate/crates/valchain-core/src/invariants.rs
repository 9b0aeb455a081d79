//! Headline invariants computed from an augmentation chain: the different and
//! log different of a finite extension, discrepancies, the differential
//! semi-valuation of `dT`, and the absolute log different.
//!
//! A chain whose final record sends its key to infinity presents the finite
//! extension `L = K[T]/(f)` with `f` the final key; the other invariants are
//! attached to the realized (semi-)valuation itself.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::chain::{AugRecord, Chain};
use crate::error::{ChainFault, Error, Result};
use crate::poly::Poly;
use crate::valuation::{FamilyPrefix, SemiVal};
use crate::value::{Value, ValueGroup};

/// A finite extension `K[T]/(f)` presented by a chain whose final record is
/// an ordinary or limit augmentation with radius infinity and key `f`.
/// Construction validates the chain and requires `f` monic with coefficients
/// of nonnegative valuation.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteExtProblem {
    chain: Chain,
    f: Poly,
}

impl FiniteExtProblem {
    pub fn new(chain: Chain) -> Result<FiniteExtProblem> {
        let f = match chain.augs.last() {
            Some(AugRecord::Ordinary { phi, mu }) if mu.is_infinite() => phi.clone(),
            Some(AugRecord::Limit { phi, mu, .. }) if mu.is_infinite() => phi.clone(),
            _ => return Err(Error::InvalidChain(ChainFault::FinalRecordNotInfinite)),
        };
        for c in &f.coeffs {
            if f.field.vk(c).cmp_exact(&Value::zero()) == Ordering::Less {
                return Err(Error::InvalidChain(ChainFault::CoefficientsNotIntegral));
            }
        }
        chain.prefix_realizations()?;
        Ok(FiniteExtProblem { chain, f })
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    /// The minimal polynomial: the final record's key.
    pub fn f(&self) -> &Poly {
        &self.f
    }
}

/// The different computation with every intermediate it used, so each
/// reported value can be reproduced from the report alone.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantReport {
    pub different: Value,
    pub log_different: Value,
    /// Step of the chain up to (excluding) the final record; for the limit
    /// case, the step of the comparison chain at the last family stage.
    pub step: Value,
    /// Valuation of `f` at the comparison valuation.
    pub v_f: Value,
    /// Valuation of `f'` there (infinity when the derivative vanishes).
    pub v_f_prime: Value,
    /// `inf` of the positive base group minus `inf` of the positive extension
    /// group; the difference between the plain and the log different.
    pub fudge: Value,
    /// Whether `f' = 0` (the inseparable case; both differents are infinite).
    pub derivative_vanishes: bool,
    /// Limit case only: the log-different term at each family stage, whose
    /// last two entries must agree.
    pub stage_terms: Vec<Value>,
}

/// The different and log different of the presented finite extension.
pub fn different(prob: &FiniteExtProblem) -> Result<(Value, Value)> {
    let report = different_report(prob)?;
    Ok((report.different, report.log_different))
}

/// As [`different`], but returning all intermediates.
pub fn different_report(prob: &FiniteExtProblem) -> Result<InvariantReport> {
    let chain = &prob.chain;
    let f = &prob.f;
    let f_prime = f.derivative();
    let derivative_vanishes = f_prime.is_zero();
    let fudge = group_inf_drop(&chain.value_group())?;
    let n = chain.augs.len();

    match &chain.augs[n - 1] {
        AugRecord::Ordinary { .. } => {
            let prefix = Chain::new(chain.seed.clone(), chain.augs[..n - 1].to_vec());
            let step = prefix.step_of()?;
            let realizations = prefix.prefix_realizations()?;
            let v_last = realizations.last().expect("seed realization");
            let v_f = v_last.eval(f)?;
            let v_f_prime = v_last.eval(&f_prime)?;
            let log_different = step.try_sub(&v_f)?.try_add(&v_f_prime)?;
            let different = log_different.try_add(&fudge)?;
            Ok(InvariantReport {
                different,
                log_different,
                step,
                v_f,
                v_f_prime,
                fudge,
                derivative_vanishes,
                stage_terms: Vec::new(),
            })
        }
        AugRecord::Limit { family, .. } => {
            // Evaluate the log formula along the ordinary comparison chains
            // at each family stage; the terms must stabilize, and the limit
            // is read off the (agreeing) final stages.
            let mut stage_terms = Vec::with_capacity(family.pairs.len());
            let mut last = None;
            for (psi, gamma) in &family.pairs {
                let mut augs = chain.augs[..n - 1].to_vec();
                augs.push(AugRecord::Ordinary {
                    phi: psi.clone(),
                    mu: gamma.clone(),
                });
                let stage_chain = Chain::new(chain.seed.clone(), augs);
                let step = stage_chain.step_of()?;
                let w = stage_chain.realize()?;
                let v_f = w.eval(f)?;
                let v_f_prime = w.eval(&f_prime)?;
                let term = step.try_sub(&v_f)?.try_add(&v_f_prime)?;
                stage_terms.push(term);
                last = Some((step, v_f, v_f_prime));
            }
            if stage_terms.len() < 2 {
                return Err(Error::FamilyPrefixTooShort);
            }
            let k = stage_terms.len();
            if stage_terms[k - 1].cmp_exact(&stage_terms[k - 2]) != Ordering::Equal {
                return Err(Error::FamilyPrefixTooShort);
            }
            let (step, v_f, v_f_prime) = last.expect("at least two stages");
            let log_different = stage_terms[k - 1].clone();
            let different = log_different.try_add(&fudge)?;
            Ok(InvariantReport {
                different,
                log_different,
                step,
                v_f,
                v_f_prime,
                fudge,
                derivative_vanishes,
                stage_terms,
            })
        }
        AugRecord::StableFamily { .. } => {
            Err(Error::InvalidChain(ChainFault::FinalRecordNotInfinite))
        }
    }
}

/// `inf` of the positive base group minus `inf` of the positive part of the
/// given group (zero when nothing was adjoined, positive once the group
/// refines, one when the group has become dense).
fn group_inf_drop(extended: &ValueGroup) -> Result<Value> {
    ValueGroup::z()
        .inf_positive()
        .try_sub(&extended.inf_positive())
}

/// Which linear form the discrepancy is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscrepancyMode {
    /// Discrepancy of `d(theta^-1 phi0)`; needs an integer seed radius.
    DLinear,
    /// Log discrepancy of `dlog(phi0)`.
    DlogLinear,
}

/// Discrepancy of the realized valuation against the chosen linear form.
pub fn discrepancy(c: &Chain, mode: DiscrepancyMode) -> Result<Value> {
    match mode {
        DiscrepancyMode::DlogLinear => c.step_of(),
        DiscrepancyMode::DLinear => {
            c.require_simple_seed()?;
            let step = c.step_of()?;
            step.try_add(&group_inf_drop(&c.value_group())?)
        }
    }
}

/// One summand of the `dT` supremum: a key polynomial and
/// `w(key) - w(key')`, or `None` when the key's derivative vanishes (such
/// keys contribute nothing to the supremum).
#[derive(Clone, Debug, PartialEq)]
pub struct KahlerReport {
    pub value: Value,
    pub terms: Vec<(Poly, Option<Value>)>,
}

/// The value the differential semi-valuation assigns to `dT`: the supremum
/// of `w(phi) - w(phi')` over the chain's key polynomials. Family prefixes
/// stand in for infinite families; their per-member terms must agree at the
/// last two stages.
#[allow(non_snake_case)]
pub fn kahler_dT(c: &Chain) -> Result<Value> {
    Ok(kahler_report(c)?.value)
}

/// As [`kahler_dT`], with the per-key terms.
pub fn kahler_report(c: &Chain) -> Result<KahlerReport> {
    ensure_trivial_kernel(c)?;
    let w = c.realize()?;

    for family in chain_families(c) {
        if family.pairs.len() < 2 {
            return Err(Error::FamilyPrefixTooShort);
        }
        let k = family.pairs.len();
        let a = key_term(&w, &family.pairs[k - 2].0)?;
        let b = key_term(&w, &family.pairs[k - 1].0)?;
        match (a, b) {
            (Some(x), Some(y)) if x.cmp_exact(&y) == Ordering::Equal => {}
            (None, None) => {}
            _ => return Err(Error::FamilyPrefixTooShort),
        }
    }

    let mut terms = Vec::new();
    let mut best: Option<Value> = None;
    for key in c.keys() {
        let term = key_term(&w, &key)?;
        if let Some(t) = &term {
            best = Some(match best.take() {
                Some(b) if b.cmp_exact(t) != Ordering::Less => b,
                _ => t.clone(),
            });
        }
        terms.push((key, term));
    }
    let value = best.expect("the seed key always contributes a finite term");
    Ok(KahlerReport { value, terms })
}

fn key_term(w: &SemiVal, key: &Poly) -> Result<Option<Value>> {
    let d = key.derivative();
    if d.is_zero() {
        return Ok(None);
    }
    let v_key = w.eval(key)?;
    let v_d = w.eval(&d)?;
    Ok(Some(v_key.try_sub(&v_d)?))
}

fn chain_families(c: &Chain) -> impl Iterator<Item = &FamilyPrefix> {
    c.augs.iter().filter_map(|rec| match rec {
        AugRecord::Limit { family, .. } => Some(family),
        AugRecord::StableFamily { family } => Some(family),
        AugRecord::Ordinary { .. } => None,
    })
}

/// Errors with `KernelPresent` when the seed radius or any record radius is
/// infinite (stable-family records have finite stage radii and are allowed).
fn ensure_trivial_kernel(c: &Chain) -> Result<()> {
    if c.seed.radius.is_infinite() {
        return Err(Error::KernelPresent);
    }
    for rec in &c.augs {
        match rec {
            AugRecord::Ordinary { mu, .. } | AugRecord::Limit { mu, .. } => {
                if mu.is_infinite() {
                    return Err(Error::KernelPresent);
                }
            }
            AugRecord::StableFamily { .. } => {}
        }
    }
    Ok(())
}

/// Prefix terms of the absolute log different along a family, with the
/// monotonicity certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct NonDecreasingSequenceReport {
    pub terms: Vec<Value>,
    pub non_decreasing: bool,
}

/// Result of [`abs_log_different`]: a single value for finite-step chains, a
/// certified prefix sequence when the step is infinite.
#[derive(Clone, Debug, PartialEq)]
pub enum AbsLogDifferent {
    Finite(Value),
    Sequence(NonDecreasingSequenceReport),
}

/// The absolute log different of the realized (semi-)valuation: for a finite
/// step, `step + w(phi0) - kahler_dT`; for an infinite step (a declared
/// infinite family limit), the sequence of finite-step values along the
/// family stages, reported with its non-decreasing certificate.
pub fn abs_log_different(c: &Chain) -> Result<AbsLogDifferent> {
    if c.seed.radius.is_infinite() {
        return Err(Error::KernelPresent);
    }
    let steps = c.step_breakdown()?;
    match steps.iter().position(|s| s.is_infinite()) {
        None => Ok(AbsLogDifferent::Finite(finite_abs_log(c)?)),
        Some(cut) => {
            let family = match &c.augs[cut] {
                AugRecord::StableFamily { family } => family,
                AugRecord::Limit { family, .. } => family,
                AugRecord::Ordinary { .. } => return Err(Error::KernelPresent),
            };
            let mut terms = Vec::with_capacity(family.pairs.len());
            for (psi, gamma) in &family.pairs {
                let mut augs = c.augs[..cut].to_vec();
                augs.push(AugRecord::Ordinary {
                    phi: psi.clone(),
                    mu: gamma.clone(),
                });
                let stage_chain = Chain::new(c.seed.clone(), augs);
                terms.push(finite_abs_log(&stage_chain)?);
            }
            let non_decreasing = terms
                .windows(2)
                .all(|w| w[0].cmp_exact(&w[1]) != Ordering::Greater);
            Ok(AbsLogDifferent::Sequence(NonDecreasingSequenceReport {
                terms,
                non_decreasing,
            }))
        }
    }
}

fn finite_abs_log(c: &Chain) -> Result<Value> {
    let step = c.step_of()?;
    let w = c.realize()?;
    let phi0 = Poly::t_minus(c.seed.field, c.seed.center.clone());
    let w_phi0 = w.eval(&phi0)?;
    let k = kahler_dT(c)?;
    step.try_add(&w_phi0)?.try_sub(&k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_elem, ValuedField};
    use crate::valuation::GaussVal;

    fn padic(p: u64) -> ValuedField {
        ValuedField::PAdicRationals(p)
    }

    fn seed(field: ValuedField, center: i64, radius: Value) -> GaussVal {
        GaussVal {
            field,
            center: rat_elem(center, 1),
            radius,
        }
    }

    fn t_poly(field: ValuedField) -> Poly {
        Poly::t_power(field, 1)
    }

    /// T^k + c as a polynomial.
    fn t_pow_plus(field: ValuedField, k: usize, c: i64) -> Poly {
        Poly::t_power(field, k).add(&Poly::constant(field, rat_elem(c, 1)))
    }

    fn ord(phi: Poly, mu: Value) -> AugRecord {
        AugRecord::Ordinary { phi, mu }
    }

    #[test]
    fn tame_square_root_of_five() {
        let f5 = padic(5);
        let chain = Chain::new(
            seed(f5, 0, Value::zero()),
            alloc::vec![
                ord(t_poly(f5), Value::rat(1, 2)),
                ord(t_pow_plus(f5, 2, -5), Value::Infinity),
            ],
        );
        let prob = FiniteExtProblem::new(chain).unwrap();
        let report = different_report(&prob).unwrap();
        assert_eq!(report.step, Value::rat(1, 2));
        assert_eq!(report.v_f, Value::int(1));
        assert_eq!(report.v_f_prime, Value::rat(1, 2));
        assert_eq!(report.fudge, Value::rat(1, 2));
        assert_eq!(report.different, Value::rat(1, 2));
        assert_eq!(report.log_different, Value::zero());
        assert!(!report.derivative_vanishes);
    }

    #[test]
    fn wild_square_root_of_two() {
        let f2 = padic(2);
        let chain = Chain::new(
            seed(f2, 0, Value::zero()),
            alloc::vec![
                ord(t_poly(f2), Value::rat(1, 2)),
                ord(t_pow_plus(f2, 2, -2), Value::Infinity),
            ],
        );
        let (d, dlog) = different(&FiniteExtProblem::new(chain).unwrap()).unwrap();
        assert_eq!(d, Value::rat(3, 2));
        assert_eq!(dlog, Value::int(1));
    }

    #[test]
    fn wild_eisenstein_p_th_roots() {
        for p in [2u64, 3, 5] {
            let fp = padic(p);
            let chain = Chain::new(
                seed(fp, 0, Value::zero()),
                alloc::vec![
                    ord(t_poly(fp), Value::rat(1, p as i64)),
                    ord(t_pow_plus(fp, p as usize, -(p as i64)), Value::Infinity),
                ],
            );
            let (d, dlog) = different(&FiniteExtProblem::new(chain).unwrap()).unwrap();
            assert_eq!(d, Value::rat(2 * p as i64 - 1, p as i64), "p = {p}");
            assert_eq!(dlog, Value::int(1), "p = {p}");
        }
    }

    #[test]
    fn unramified_extension_has_trivial_different() {
        let f5 = padic(5);
        let chain = Chain::new(
            seed(f5, 0, Value::zero()),
            alloc::vec![ord(t_pow_plus(f5, 2, -2), Value::Infinity)],
        );
        let (d, dlog) = different(&FiniteExtProblem::new(chain).unwrap()).unwrap();
        assert_eq!(d, Value::zero());
        assert_eq!(dlog, Value::zero());
    }

    #[test]
    fn inseparable_extension_reports_infinite_differents() {
        for p in [2u64, 3] {
            let fpt = ValuedField::LaurentRationalFunctions(p);
            let f = Poly::t_power(fpt, p as usize)
                .sub(&Poly::constant(fpt, crate::field::fun_elem(p, &[0, 1], &[1])));
            let chain = Chain::new(
                GaussVal {
                    field: fpt,
                    center: fpt.zero(),
                    radius: Value::zero(),
                },
                alloc::vec![ord(f, Value::Infinity)],
            );
            let report = different_report(&FiniteExtProblem::new(chain).unwrap()).unwrap();
            assert!(report.derivative_vanishes);
            assert_eq!(report.different, Value::Infinity);
            assert_eq!(report.log_different, Value::Infinity);
            assert_eq!(report.v_f_prime, Value::Infinity);
        }
    }

    /// Base-2 family approximating a square root of 17, used by the
    /// almost-stable tests: centers s with v(s^2 - 17) = gamma + 1.
    fn sqrt17_family(f2: ValuedField, stages: usize) -> FamilyPrefix {
        let data: [(i64, i64, i64); 5] = [
            (1, 1, 3),
            (9, 1, 5),
            (49, 9, 9),
            (1889, 441, 17),
            (3437249, 833049, 33),
        ];
        FamilyPrefix {
            pairs: data[..stages]
                .iter()
                .map(|(n, d, g)| (Poly::t_minus(f2, rat_elem(*n, *d)), Value::int(*g)))
                .collect(),
            declared_gamma_limit: Value::Infinity,
        }
    }

    #[test]
    fn almost_stable_split_square_root_of_seventeen() {
        let f2 = padic(2);
        let chain = Chain::new(
            seed(f2, 1, Value::zero()),
            alloc::vec![AugRecord::Limit {
                family: sqrt17_family(f2, 4),
                phi: t_pow_plus(f2, 2, -17),
                mu: Value::Infinity,
            }],
        );
        let report = different_report(&FiniteExtProblem::new(chain).unwrap()).unwrap();
        assert_eq!(report.stage_terms.len(), 4);
        for term in &report.stage_terms {
            assert_eq!(*term, Value::zero());
        }
        assert_eq!(report.different, Value::zero());
        assert_eq!(report.log_different, Value::zero());
    }

    #[test]
    fn limit_different_needs_two_family_stages() {
        let f2 = padic(2);
        let chain = Chain::new(
            seed(f2, 1, Value::zero()),
            alloc::vec![AugRecord::Limit {
                family: sqrt17_family(f2, 1),
                phi: t_pow_plus(f2, 2, -17),
                mu: Value::Infinity,
            }],
        );
        assert_eq!(
            different(&FiniteExtProblem::new(chain).unwrap()).unwrap_err(),
            Error::FamilyPrefixTooShort
        );
    }

    #[test]
    fn problem_requires_infinite_final_radius() {
        let f5 = padic(5);
        let chain = Chain::new(
            seed(f5, 0, Value::zero()),
            alloc::vec![ord(t_poly(f5), Value::int(1))],
        );
        assert_eq!(
            FiniteExtProblem::new(chain).unwrap_err(),
            Error::InvalidChain(ChainFault::FinalRecordNotInfinite)
        );
    }

    #[test]
    fn problem_requires_integral_coefficients() {
        let f5 = padic(5);
        let f = Poly::t_power(f5, 2).add(&Poly::constant(f5, rat_elem(1, 5)));
        let chain = Chain::new(
            seed(f5, 0, Value::zero()),
            alloc::vec![ord(f, Value::Infinity)],
        );
        assert_eq!(
            FiniteExtProblem::new(chain).unwrap_err(),
            Error::InvalidChain(ChainFault::CoefficientsNotIntegral)
        );
    }

    #[test]
    fn log_discrepancy_is_the_step() {
        let f5 = padic(5);
        let chain = Chain::new(
            seed(f5, 0, Value::rat(1, 2)),
            alloc::vec![ord(t_pow_plus(f5, 2, -5), Value::int(2))],
        );
        assert_eq!(
            discrepancy(&chain, DiscrepancyMode::DlogLinear).unwrap(),
            Value::int(1)
        );

        let empty = Chain::new(seed(f5, 0, Value::rat(1, 2)), alloc::vec![]);
        assert_eq!(
            discrepancy(&empty, DiscrepancyMode::DlogLinear).unwrap(),
            Value::zero()
        );
    }

    #[test]
    fn linear_discrepancy_adds_the_group_drop() {
        let f5 = padic(5);
        let chain = Chain::new(
            seed(f5, 0, Value::zero()),
            alloc::vec![ord(t_poly(f5), Value::int(1))],
        );
        assert_eq!(
            discrepancy(&chain, DiscrepancyMode::DLinear).unwrap(),
            Value::int(1)
        );

        let halved = Chain::new(
            seed(f5, 0, Value::zero()),
            alloc::vec![ord(t_poly(f5), Value::rat(1, 2))],
        );
        assert_eq!(
            discrepancy(&halved, DiscrepancyMode::DLinear).unwrap(),
            Value::int(1)
        );
    }

    #[test]
    fn linear_discrepancy_needs_a_simple_seed() {
        let f5 = padic(5);
        let chain = Chain::new(seed(f5, 0, Value::rat(1, 2)), alloc::vec![]);
        assert_eq!(
            discrepancy(&chain, DiscrepancyMode::DLinear).unwrap_err(),
            Error::InvalidChain(ChainFault::SeedNotSimple)
        );
    }

    #[test]
    fn kahler_value_of_the_two_step_chain() {
        let f5 = padic(5);
        let chain = Chain::new(
            seed(f5, 0, Value::zero()),
            alloc::vec![
                ord(t_poly(f5), Value::rat(1, 2)),
                ord(t_pow_plus(f5, 2, -5), Value::int(2)),
            ],
        );
        let report = kahler_report(&chain).unwrap();
        assert_eq!(report.value, Value::rat(3, 2));
        assert_eq!(report.terms.len(), 3);
    }

    #[test]
    fn kahler_of_bare_seed_is_zero_and_single_augmentations_give_mu() {
        let f5 = padic(5);
        let empty = Chain::new(seed(f5, 0, Value::zero()), alloc::vec![]);
        assert_eq!(kahler_dT(&empty).unwrap(), Value::zero());

        for mu in [Value::rat(1, 2), Value::int(1), Value::rat(7, 3)] {
            let chain = Chain::new(
                seed(f5, 0, Value::zero()),
                alloc::vec![ord(t_poly(f5), mu.clone())],
            );
            assert_eq!(kahler_dT(&chain).unwrap(), mu);
        }
    }

    #[test]
    fn kahler_rejects_kernels() {
        let f5 = padic(5);
        let chain = Chain::new(
            seed(f5, 0, Value::zero()),
            alloc::vec![ord(t_pow_plus(f5, 2, -5), Value::Infinity)],
        );
        assert_eq!(kahler_dT(&chain).unwrap_err(), Error::KernelPresent);
        let infinite_seed = Chain::new(seed(f5, 0, Value::Infinity), alloc::vec![]);
        assert_eq!(kahler_dT(&infinite_seed).unwrap_err(), Error::KernelPresent);
    }

    #[test]
    fn abs_log_different_of_the_two_step_chain_is_zero() {
        let f5 = padic(5);
        let chain = Chain::new(
            seed(f5, 0, Value::rat(1, 2)),
            alloc::vec![ord(t_pow_plus(f5, 2, -5), Value::int(2))],
        );
        assert_eq!(
            abs_log_different(&chain).unwrap(),
            AbsLogDifferent::Finite(Value::zero())
        );
    }

    #[test]
    fn abs_log_different_of_a_bare_seed_is_zero() {
        let f5 = padic(5);
        for radius in [Value::zero(), Value::rat(1, 2)] {
            let chain = Chain::new(seed(f5, 0, radius), alloc::vec![]);
            assert_eq!(
                abs_log_different(&chain).unwrap(),
                AbsLogDifferent::Finite(Value::zero())
            );
        }
    }

    #[test]
    fn stable_family_gives_a_non_decreasing_sequence() {
        let f2 = padic(2);
        let chain = Chain::new(
            seed(f2, 1, Value::zero()),
            alloc::vec![AugRecord::StableFamily {
                family: sqrt17_family(f2, 5),
            }],
        );
        match abs_log_different(&chain).unwrap() {
            AbsLogDifferent::Sequence(report) => {
                assert_eq!(report.terms.len(), 5);
                assert!(report.non_decreasing);
                for term in &report.terms {
                    assert_eq!(*term, Value::int(3));
                }
            }
            other => panic!("expected a sequence, got {other:?}"),
        }
    }

    #[test]
    fn declared_infinite_limits_also_give_the_sequence() {
        let f2 = padic(2);
        let chain = Chain::new(
            seed(f2, 1, Value::zero()),
            alloc::vec![AugRecord::Limit {
                family: sqrt17_family(f2, 4),
                phi: t_pow_plus(f2, 2, -17),
                mu: Value::Infinity,
            }],
        );
        match abs_log_different(&chain).unwrap() {
            AbsLogDifferent::Sequence(report) => {
                assert_eq!(report.terms.len(), 4);
                assert!(report.non_decreasing);
                for term in &report.terms {
                    assert_eq!(*term, Value::int(3));
                }
            }
            other => panic!("expected a sequence, got {other:?}"),
        }

        // A kernel with no family data behind it stays an error.
        let bare = Chain::new(
            seed(f2, 0, Value::zero()),
            alloc::vec![AugRecord::Ordinary {
                phi: t_pow_plus(f2, 2, -17),
                mu: Value::Infinity,
            }],
        );
        assert!(matches!(abs_log_different(&bare), Err(Error::KernelPresent)));
    }
}
