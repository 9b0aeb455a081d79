//! Finite presentations for the graded-ring extension attached to a single
//! augmentation step.
//!
//! Augmenting a valuation by a key polynomial `phi` with new radius `mu`
//! extends the graded ring of the base by new homogeneous generators. The
//! shape of that extension depends only on how `mu` sits relative to the base
//! value group: [`classify`] decides the case, [`stages`] emits a schedule of
//! finite presentations (each with the exact valuation of its Jacobian
//! determinant), and [`lim_dets_check`] compares the determinant valuations
//! against their exact limiting value.
//!
//! All arithmetic is exact: radii may be rational or quadratic irrational,
//! and the schedules for irrational radii are driven by integer continued
//! fractions rather than floating-point approximation.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::value::{Value, ValueGroup};

/// How a new radius sits relative to the base value group.
///
/// * `Aleph`: finite radius in the rational span of the group (commensurable).
/// * `Beth`: finite radius outside the span of a dense group.
/// * `Gimel`: finite radius outside the span of a discrete group.
/// * `Daleth`: infinite radius (the key is sent into the kernel).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnlargementCase {
    Aleph,
    Beth,
    Gimel,
    Daleth,
}

/// Input data for one augmentation step, together with its classification.
#[derive(Clone, Debug, PartialEq)]
pub struct EnlargementSpec {
    /// Value group of the base valuation.
    pub base_group: ValueGroup,
    /// Base valuation of the key polynomial.
    pub v_phi: Value,
    /// New radius assigned to the key.
    pub mu: Value,
    /// Classification of `mu` against `base_group`.
    pub case: EnlargementCase,
    /// Minimal positive integer with `m * mu` in the base group
    /// (commensurable case only).
    pub m: Option<u64>,
}

/// Stage-specific data for one presentation in a schedule.
#[derive(Clone, Debug, PartialEq)]
pub enum StageIndex {
    /// Commensurable stage: an auxiliary base element of valuation `v_beta`
    /// and a power `ell` of the key, with `gcd(ell, m) = 1`, plus the Bezout
    /// complement `ell * d - m * e = 1`.
    Aleph {
        v_beta: Value,
        ell: u64,
        d: u64,
        e: u64,
        m: u64,
    },
    /// Dense incommensurable stage: base elements bracketing the radius,
    /// `v_alpha <= mu <= v_beta`.
    Beth { v_alpha: Value, v_beta: Value },
    /// Discrete incommensurable stage `i`, built from the continued-fraction
    /// convergents `a_even/b_even` (below) and `a_odd/b_odd` (above) of
    /// `(mu - v_phi) / gamma`, with the generator weights they induce.
    Gimel {
        i: usize,
        a_even: BigInt,
        b_even: BigInt,
        a_odd: BigInt,
        b_odd: BigInt,
        w_x: Value,
        w_y: Value,
    },
    /// Infinite-radius stage: a base element of valuation `v_alpha`
    /// approximating the key from inside the group.
    Daleth { v_alpha: Value },
}

/// One finite presentation: named generators, symbolic relations, and the
/// exact valuation of the Jacobian determinant of the relations.
///
/// Relation strings are human-readable sketches; every constant in them is
/// pinned only by its valuation, which is carried in [`StageIndex`] and
/// `jac_det_valuation`.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationStage {
    pub index: StageIndex,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub jac_det_valuation: Value,
}

/// Result of comparing a schedule's determinant valuations with their limit.
#[derive(Clone, Debug, PartialEq)]
pub struct DetLimitReport {
    /// Exact limiting value of the determinant valuations.
    pub target: Value,
    /// Determinant valuation of each emitted stage, in order.
    pub stage_valuations: Vec<Value>,
    /// Whether the last stage is within the tolerance of the target (for an
    /// infinite target: whether it exceeds the supplied finite bound).
    pub within_tolerance: bool,
    /// Whether the stage valuations approach the target monotonically.
    pub monotone: bool,
    /// `within_tolerance && monotone`.
    pub pass: bool,
}

/// Classify one augmentation step. Errors with `InvalidRadius` when the new
/// radius is below the key's current valuation, or when that valuation is
/// already infinite.
pub fn classify(base_group: ValueGroup, v_phi: Value, mu: Value) -> Result<EnlargementSpec> {
    if v_phi.is_infinite() {
        return Err(Error::InvalidRadius);
    }
    if mu.cmp_exact(&v_phi) == Ordering::Less {
        return Err(Error::InvalidRadius);
    }
    let (case, m) = match &mu {
        Value::Infinity => (EnlargementCase::Daleth, None),
        Value::Fin(_) | Value::Quad { .. } => match &base_group {
            ValueGroup::DiscreteZ(_) => match &mu {
                Value::Fin(_) => {
                    let m = base_group
                        .min_multiple_in_group(&mu)
                        .ok_or(Error::UnsupportedIrrational)?;
                    (EnlargementCase::Aleph, Some(m))
                }
                _ => (EnlargementCase::Gimel, None),
            },
            ValueGroup::Dense(_) => {
                if base_group.qspan_coords(&mu).is_some() {
                    let m = base_group
                        .min_multiple_in_group(&mu)
                        .ok_or(Error::UnsupportedIrrational)?;
                    (EnlargementCase::Aleph, Some(m))
                } else {
                    (EnlargementCase::Beth, None)
                }
            }
        },
    };
    Ok(EnlargementSpec {
        base_group,
        v_phi,
        mu,
        case,
        m,
    })
}

/// Emit up to `how_many` presentation stages for the given step.
///
/// The commensurable case over a discrete group has a single maximal stage
/// and returns exactly one presentation (for any positive `how_many`); the
/// other cases return `how_many` stages walking their approximation schedule.
/// Errors with `UnsupportedIrrational` when the schedule would need a radius
/// difference that is neither rational nor quadratic, or a dense group that
/// lacks a usable rational generator.
pub fn stages(spec: &EnlargementSpec, how_many: usize) -> Result<Vec<PresentationStage>> {
    if how_many == 0 {
        return Ok(Vec::new());
    }
    match spec.case {
        EnlargementCase::Aleph => aleph_stages(spec, how_many),
        EnlargementCase::Beth => beth_stages(spec, how_many),
        EnlargementCase::Gimel => gimel_stages(spec, how_many),
        EnlargementCase::Daleth => daleth_stages(spec, how_many),
    }
}

/// Compare the determinant valuations of a schedule against their exact
/// limit. Requires `stages_count >= 2`. For a finite target the check passes
/// when `|last - target| <= tol` exactly; for an infinite target it passes
/// when the last stage exceeds the supplied finite bound. Either way the
/// valuations must approach the target monotonically.
pub fn lim_dets_check(
    spec: &EnlargementSpec,
    stages_count: usize,
    tol: &Value,
) -> Result<DetLimitReport> {
    if stages_count < 2 {
        return Err(Error::InvalidPresentation);
    }
    let emitted = stages(spec, stages_count)?;
    let vals: Vec<Value> = emitted
        .into_iter()
        .map(|s| s.jac_det_valuation)
        .collect();
    let target = det_limit_target(spec)?;
    let last = vals.last().ok_or(Error::InvalidPresentation)?;

    let within_tolerance = if target.is_infinite() {
        last.cmp_exact(tol) == Ordering::Greater
    } else {
        abs_diff(last, &target)?.cmp_exact(tol) != Ordering::Greater
    };

    let mut monotone = true;
    for w in vals.windows(2) {
        let ok = if target.is_infinite() {
            w[0].cmp_exact(&w[1]) != Ordering::Greater
        } else {
            let before = abs_diff(&w[0], &target)?;
            let after = abs_diff(&w[1], &target)?;
            after.cmp_exact(&before) != Ordering::Greater
        };
        if !ok {
            monotone = false;
            break;
        }
    }

    Ok(DetLimitReport {
        target,
        pass: within_tolerance && monotone,
        stage_valuations: vals,
        within_tolerance,
        monotone,
    })
}

/// Exact limit of the determinant valuations: the radius increment plus the
/// drop in the infimum of positive group elements caused by adjoining `mu`.
fn det_limit_target(spec: &EnlargementSpec) -> Result<Value> {
    if spec.mu.is_infinite() {
        return Ok(Value::Infinity);
    }
    let diff = radius_increment(spec)?;
    let before = spec.base_group.inf_positive();
    let after = spec.base_group.join(&spec.mu).inf_positive();
    diff.try_add(&before.try_sub(&after)?)
}

/// `mu - v_phi`, with a mixed-radical difference reported as unsupported.
fn radius_increment(spec: &EnlargementSpec) -> Result<Value> {
    spec.mu.try_sub(&spec.v_phi).map_err(|e| match e {
        Error::MixedIrrationals => Error::UnsupportedIrrational,
        other => other,
    })
}

fn abs_diff(x: &Value, y: &Value) -> Result<Value> {
    if x.cmp_exact(y) == Ordering::Less {
        y.try_sub(x)
    } else {
        x.try_sub(y)
    }
}

fn positive_value(v: &Value) -> Value {
    if v.cmp_exact(&Value::zero()) == Ordering::Less {
        v.clone().neg()
    } else {
        v.clone()
    }
}

fn value_max(a: Value, b: Value) -> Value {
    if a.cmp_exact(&b) == Ordering::Less {
        b
    } else {
        a
    }
}

fn value_min(a: Value, b: Value) -> Value {
    if a.cmp_exact(&b) == Ordering::Greater {
        b
    } else {
        a
    }
}

fn big_rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Commensurable case.
// ---------------------------------------------------------------------------

fn aleph_relations(ell: u64, m: u64) -> Vec<String> {
    vec![
        format!("X^{ell} - beta*Y"),
        format!("Y^{m} - c"),
    ]
}

fn aleph_stages(spec: &EnlargementSpec, how_many: usize) -> Result<Vec<PresentationStage>> {
    let m = spec.m.ok_or(Error::InvalidPresentation)?;
    let diff = radius_increment(spec)?;
    match &spec.base_group {
        ValueGroup::DiscreteZ(gamma) => {
            let stage = aleph_discrete_maximal_stage(spec, gamma, m, &diff)?;
            Ok(vec![stage])
        }
        ValueGroup::Dense(_) => aleph_dense_stages(spec, m, &diff, how_many),
    }
}

/// The schedule over a discrete group has a maximal element; emit just it.
fn aleph_discrete_maximal_stage(
    spec: &EnlargementSpec,
    gamma: &BigRational,
    m: u64,
    diff: &Value,
) -> Result<PresentationStage> {
    let mu_rat = match &spec.mu {
        Value::Fin(q) => q.clone(),
        _ => return Err(Error::UnsupportedIrrational),
    };
    let gamma_val = Value::Fin(gamma.clone());

    if m == 1 {
        // Any admissible auxiliary element gives the exact determinant here;
        // pick the largest group element below the radius when one fits the
        // lower bound, otherwise fall back to the key's own valuation.
        let v_beta = if spec.mu == spec.v_phi {
            spec.mu.clone()
        } else {
            value_max(spec.mu.try_sub(&gamma_val)?, spec.v_phi.clone())
        };
        return Ok(PresentationStage {
            index: StageIndex::Aleph {
                v_beta,
                ell: 1,
                d: 1,
                e: 0,
                m: 1,
            },
            generators: vec![String::from("X"), String::from("Y")],
            relations: aleph_relations(1, 1),
            jac_det_valuation: diff.clone(),
        });
    }

    let t = &mu_rat / gamma;
    let p = t.numer().clone();
    debug_assert_eq!(u64::try_from(t.denom().clone()).ok(), Some(m));

    let m_big = BigInt::from(m);
    let p_mod = u64::try_from(p.mod_floor(&m_big)).expect("residue fits");
    let ell = mod_inverse(p_mod, m);
    let a = (BigInt::from(ell) * &p - BigInt::one()) / &m_big;
    let v_beta = Value::Fin(gamma * BigRational::from_integer(a));
    let d = mod_inverse(ell, m);
    let e = u64::try_from((BigInt::from(ell) * BigInt::from(d) - BigInt::one()) / &m_big)
        .expect("complement fits");

    debug_assert_eq!(ell as u128 * d as u128, 1 + m as u128 * e as u128);
    debug_assert!(v_beta.cmp_exact(&spec.mu.scale_rat(&big_rat(ell))) == Ordering::Less);
    debug_assert!({
        // (e * m * mu + v_phi) <= d * v_beta, the stage's admissibility bound.
        let lhs = spec.mu.scale_rat(&big_rat(e * m)).try_add(&spec.v_phi).unwrap();
        lhs.cmp_exact(&v_beta.scale_rat(&big_rat(d))) != Ordering::Greater
    });

    let w_y = Value::Fin(gamma / BigRational::from_integer(BigInt::from(m)));
    let jac = diff.try_add(&w_y.scale_rat(&big_rat(m - 1)))?;
    Ok(PresentationStage {
        index: StageIndex::Aleph {
            v_beta,
            ell,
            d,
            e,
            m,
        },
        generators: vec![String::from("X"), String::from("Y")],
        relations: aleph_relations(ell, m),
        jac_det_valuation: jac,
    })
}

/// Over a dense group the admissible auxiliary elements have no maximum; walk
/// a ladder of group elements increasing toward the radius.
fn aleph_dense_stages(
    spec: &EnlargementSpec,
    m: u64,
    diff: &Value,
    how_many: usize,
) -> Result<Vec<PresentationStage>> {
    let radical = match &spec.mu {
        Value::Quad { d, .. } => Some(*d),
        _ => None,
    };
    let (gen_rat, gen_quad) = ladder_generators(&spec.base_group, radical)?;
    let convs = convergents(&gen_quad, &gen_rat, how_many + 1)?;

    let mut out = Vec::with_capacity(how_many);
    let mut prev_beta: Option<Value> = None;
    for conv in convs.iter().skip(1) {
        let delta = ladder_step(conv, &gen_rat, &gen_quad)?;
        let cand = match largest_n_below(&spec.v_phi, &delta, &spec.mu)? {
            Some(n) => spec.v_phi.try_add(&delta.scale_rat(&big_rat(n)))?,
            None => spec.mu.clone(),
        };
        let v_beta = match prev_beta.take() {
            Some(pb) => value_max(pb, cand),
            None => cand,
        };
        prev_beta = Some(v_beta.clone());

        let w_y = spec.mu.try_sub(&v_beta)?;
        let jac = diff.try_add(&w_y.scale_rat(&big_rat(m.saturating_sub(1))))?;
        out.push(PresentationStage {
            index: StageIndex::Aleph {
                v_beta,
                ell: 1,
                d: 1,
                e: 0,
                m,
            },
            generators: vec![String::from("X"), String::from("Y")],
            relations: aleph_relations(1, m),
            jac_det_valuation: jac,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Incommensurable over a dense group.
// ---------------------------------------------------------------------------

fn beth_stages(spec: &EnlargementSpec, how_many: usize) -> Result<Vec<PresentationStage>> {
    let diff = radius_increment(spec)?;
    let (gen_rat, gen_quad) = ladder_generators(&spec.base_group, None)?;
    let convs = convergents(&gen_quad, &gen_rat, how_many + 1)?;

    let mut out = Vec::with_capacity(how_many);
    let mut prev: Option<(Value, Value)> = None;
    for conv in convs.iter().skip(1) {
        let delta = ladder_step(conv, &gen_rat, &gen_quad)?;
        let (cand_alpha, cand_beta) = match largest_n_below(&spec.v_phi, &delta, &spec.mu)? {
            Some(n) => (
                spec.v_phi.try_add(&delta.scale_rat(&big_rat(n)))?,
                spec.v_phi.try_add(&delta.scale_rat(&big_rat(n + 1)))?,
            ),
            None => (spec.v_phi.clone(), spec.v_phi.try_add(&delta)?),
        };
        let (v_alpha, v_beta) = match prev.take() {
            Some((pa, pb)) => (value_max(pa, cand_alpha), value_min(pb, cand_beta)),
            None => (cand_alpha, cand_beta),
        };
        prev = Some((v_alpha.clone(), v_beta.clone()));

        out.push(PresentationStage {
            index: StageIndex::Beth { v_alpha, v_beta },
            generators: vec![String::from("X"), String::from("Y")],
            relations: vec![
                String::from("X*Y - alpha^-1*beta"),
                String::from("theta^-1*alpha*X - theta^-1*phi"),
            ],
            jac_det_valuation: diff.clone(),
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Incommensurable over a discrete group.
// ---------------------------------------------------------------------------

fn gimel_stages(spec: &EnlargementSpec, how_many: usize) -> Result<Vec<PresentationStage>> {
    let gamma = match &spec.base_group {
        ValueGroup::DiscreteZ(g) => g.clone(),
        ValueGroup::Dense(_) => return Err(Error::InvalidPresentation),
    };
    let diff = radius_increment(spec)?;
    if !matches!(diff, Value::Quad { .. }) {
        return Err(Error::UnsupportedIrrational);
    }
    let gamma_val = Value::Fin(gamma.clone());
    let convs = convergents(&diff, &gamma, 2 * how_many)?;

    let mut out = Vec::with_capacity(how_many);
    for i in 0..how_many {
        let (a_even, b_even) = convs[2 * i].clone();
        let (a_odd, b_odd) = convs[2 * i + 1].clone();
        debug_assert_eq!(&a_even * &b_odd - &a_odd * &b_even, -BigInt::one());

        let w_x = diff
            .scale_rat(&BigRational::from_integer(b_even.clone()))
            .try_sub(&Value::Fin(&gamma * BigRational::from_integer(a_even.clone())))?;
        let w_y = Value::Fin(&gamma * BigRational::from_integer(a_odd.clone()))
            .try_sub(&diff.scale_rat(&BigRational::from_integer(b_odd.clone())))?;
        debug_assert!(w_x.cmp_exact(&Value::zero()) == Ordering::Greater);
        debug_assert!(w_y.cmp_exact(&Value::zero()) == Ordering::Greater);

        let jac = gamma_val
            .try_add(&diff)?
            .try_sub(&w_x)?
            .try_sub(&w_y)?;
        out.push(PresentationStage {
            index: StageIndex::Gimel {
                i,
                a_even: a_even.clone(),
                b_even: b_even.clone(),
                a_odd: a_odd.clone(),
                b_odd: b_odd.clone(),
                w_x,
                w_y,
            },
            generators: vec![String::from("X"), String::from("Y")],
            relations: vec![
                format!("X^{b_odd}*Y^{b_even} - pi"),
                format!("X^{a_odd}*Y^{a_even} - theta^-1*phi"),
            ],
            jac_det_valuation: jac,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Infinite radius.
// ---------------------------------------------------------------------------

fn daleth_stages(spec: &EnlargementSpec, how_many: usize) -> Result<Vec<PresentationStage>> {
    let step = match &spec.base_group {
        ValueGroup::DiscreteZ(g) => Value::Fin(g.clone()),
        ValueGroup::Dense(gens) => {
            let rational = gens.iter().find_map(|g| match g {
                Value::Fin(q) if !q.is_zero() => Some(Value::Fin(q.abs())),
                _ => None,
            });
            match rational {
                Some(r) => r,
                None => positive_value(
                    gens.iter()
                        .find(|g| matches!(g, Value::Quad { .. }))
                        .ok_or(Error::UnsupportedIrrational)?,
                ),
            }
        }
    };

    let mut out = Vec::with_capacity(how_many);
    for k in 1..=how_many as u64 {
        let advance = step.scale_rat(&big_rat(k));
        let v_alpha = spec.v_phi.try_add(&advance)?;
        out.push(PresentationStage {
            index: StageIndex::Daleth { v_alpha },
            generators: vec![String::from("X")],
            relations: vec![String::from("theta^-1*alpha*X - theta^-1*phi")],
            jac_det_valuation: advance,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Ladders of group elements approaching an irrational target.
// ---------------------------------------------------------------------------

/// Pick a positive rational generator and a positive quadratic generator from
/// a dense group, preferring a quadratic generator with the given radical.
fn ladder_generators(group: &ValueGroup, radical: Option<u64>) -> Result<(BigRational, Value)> {
    let gens = group.generators();
    let mut rational: Option<BigRational> = None;
    let mut quad_match: Option<Value> = None;
    let mut quad_any: Option<Value> = None;
    for g in &gens {
        match g {
            Value::Fin(q) if !q.is_zero() => {
                if rational.is_none() {
                    rational = Some(q.abs());
                }
            }
            Value::Quad { d, .. } => {
                if radical == Some(*d) {
                    if quad_match.is_none() {
                        quad_match = Some(positive_value(g));
                    }
                } else if quad_any.is_none() {
                    quad_any = Some(positive_value(g));
                }
            }
            _ => {}
        }
    }
    let quad = quad_match.or(quad_any).ok_or(Error::UnsupportedIrrational)?;
    let rational = rational.ok_or(Error::UnsupportedIrrational)?;
    Ok((rational, quad))
}

/// The positive group element `|b * quad - a * rational|` determined by one
/// convergent `a/b` of `quad / rational`; these shrink to zero as the
/// convergents sharpen.
fn ladder_step(conv: &(BigInt, BigInt), gen_rat: &BigRational, gen_quad: &Value) -> Result<Value> {
    let (a, b) = conv;
    let lhs = gen_quad.scale_rat(&BigRational::from_integer(b.clone()));
    let rhs = Value::Fin(gen_rat * BigRational::from_integer(a.clone()));
    Ok(positive_value(&lhs.try_sub(&rhs)?))
}

/// Largest `n >= 0` with `base + n * delta < target`, or `None` when even
/// `n = 0` fails. `delta` must be strictly positive and `target` finite.
fn largest_n_below(base: &Value, delta: &Value, target: &Value) -> Result<Option<u64>> {
    if base.cmp_exact(target) != Ordering::Less {
        return Ok(None);
    }
    let at = |n: u64| -> Result<Value> { base.try_add(&delta.scale_rat(&big_rat(n))) };
    let mut hi: u64 = 1;
    while at(hi)?.cmp_exact(target) == Ordering::Less {
        hi = hi.checked_mul(2).ok_or(Error::UnsupportedIrrational)?;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if at(mid)?.cmp_exact(target) == Ordering::Less {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo))
}

// ---------------------------------------------------------------------------
// Exact continued fractions of quadratic irrationals.
// ---------------------------------------------------------------------------

/// State of the continued-fraction expansion of `(p + sqrt(d)) / q`, kept on
/// integers with the invariant `q | d - p^2`.
struct QuadExpansion {
    p: BigInt,
    d: BigInt,
    q: BigInt,
    sqrt_d: BigInt,
}

impl QuadExpansion {
    /// Expansion of `num / den` for a quadratic irrational `num` and a
    /// positive rational `den`.
    fn new(num: &Value, den: &BigRational) -> Result<QuadExpansion> {
        let (a, b, rad) = num.parts().ok_or(Error::UnsupportedIrrational)?;
        if b.is_zero() {
            return Err(Error::UnsupportedIrrational);
        }
        debug_assert!(den.is_positive());
        let (an, ad) = (a.numer().clone(), a.denom().clone());
        let (bn, bd) = (b.numer().clone(), b.denom().clone());
        let (gn, gd) = (den.numer().clone(), den.denom().clone());

        let mut p = &an * &bd * &gd;
        let mut coeff = &bn * &ad * &gd;
        let mut q = &ad * &bd * &gn;
        if coeff.is_negative() {
            p = -p;
            q = -q;
            coeff = -coeff;
        }
        let mut d = &coeff * &coeff * BigInt::from(rad);
        if !(&d - &p * &p).is_multiple_of(&q) {
            let scale = q.abs();
            p *= &scale;
            d *= &scale * &scale;
            q *= &scale;
        }
        let sqrt_d = d.sqrt();
        debug_assert!(&sqrt_d * &sqrt_d != d, "radicand must not be a square");
        Ok(QuadExpansion { p, d, q, sqrt_d })
    }

    /// Next continued-fraction digit; advances the state.
    fn digit(&mut self) -> BigInt {
        let a = if self.q.is_positive() {
            (&self.p + &self.sqrt_d).div_floor(&self.q)
        } else {
            -((&self.p + &self.sqrt_d).div_floor(&-&self.q) + BigInt::one())
        };
        let p_next = &a * &self.q - &self.p;
        let q_next = (&self.d - &p_next * &p_next) / &self.q;
        debug_assert!(!q_next.is_zero());
        self.p = p_next;
        self.q = q_next;
        a
    }
}

/// First `count` continued-fraction convergents of `num / den` as
/// numerator/denominator pairs; even-index convergents sit below the value
/// and odd-index ones above.
fn convergents(num: &Value, den: &BigRational, count: usize) -> Result<Vec<(BigInt, BigInt)>> {
    let mut cf = QuadExpansion::new(num, den)?;
    let mut out = Vec::with_capacity(count);
    let (mut a_prev2, mut a_prev1) = (BigInt::zero(), BigInt::one());
    let (mut b_prev2, mut b_prev1) = (BigInt::one(), BigInt::zero());
    for _ in 0..count {
        let digit = cf.digit();
        let a = &digit * &a_prev1 + &a_prev2;
        let b = &digit * &b_prev1 + &b_prev2;
        out.push((a.clone(), b.clone()));
        a_prev2 = core::mem::replace(&mut a_prev1, a);
        b_prev2 = core::mem::replace(&mut b_prev1, b);
    }
    Ok(out)
}

/// Inverse of `a` modulo `m` in `[1, m-1]`, with the convention that the
/// inverse modulo 1 is 1. Requires `gcd(a, m) = 1`.
fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        t -= q * new_t;
        core::mem::swap(&mut t, &mut new_t);
        r -= q * new_r;
        core::mem::swap(&mut r, &mut new_r);
    }
    debug_assert_eq!(r, 1, "inputs must be coprime");
    u64::try_from(t.rem_euclid(m as i128)).expect("inverse fits")
}
