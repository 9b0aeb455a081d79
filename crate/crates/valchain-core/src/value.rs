//! Extended values and value groups.
//!
//! A [`Value`] is an element of (-inf, inf]: an exact rational, a real quadratic
//! irrational `a + b*sqrt(d)` with a single radical, or infinity. Orders, sums and
//! comparisons are exact; there is no floating point fallback.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact extended value: rational, quadratic irrational with one radical, or infinity.
///
/// Construct quadratic values through [`Value::quad`], which keeps the radical
/// squarefree and collapses degenerate cases to `Fin`; with that canonical form the
/// derived equality is exact equality of real numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    /// A finite rational value.
    Fin(BigRational),
    /// `a + b*sqrt(d)` with `b != 0` and `d >= 2` squarefree.
    Quad { a: BigRational, b: BigRational, d: u64 },
    /// The value of 0; absorbing for sums.
    Infinity,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Greatest common divisor of two nonnegative rationals (the generator of the group
/// they generate): gcd(a/b, c/d) = gcd(ad, cb)/(bd), reduced.
fn rat_gcd(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_zero() {
        return y.abs();
    }
    if y.is_zero() {
        return x.abs();
    }
    let num = (x.numer() * y.denom()).gcd(&(y.numer() * x.denom()));
    BigRational::new(num, x.denom() * y.denom())
}

/// Removes the square part of `d`, returning (squarefree kernel, extracted square root).
fn squarefree_split(mut d: u64) -> (u64, u64) {
    let mut root = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            root *= p;
        }
        p += 1;
    }
    (d, root)
}

/// Sign of `a + b*sqrt(d)` where `d >= 2` is a positive non-square integer.
/// Exact: decided by rational sign checks and one squaring.
fn sign_rat_plus_radical(a: &BigRational, b: &BigRational, d: &BigInt) -> Ordering {
    if b.is_zero() {
        return a.cmp(&BigRational::zero());
    }
    if a.is_zero() {
        return b.cmp(&BigRational::zero());
    }
    let sa = a.is_positive();
    let sb = b.is_positive();
    if sa && sb {
        return Ordering::Greater;
    }
    if !sa && !sb {
        return Ordering::Less;
    }
    // Opposite signs: |a| vs |b|sqrt(d) decides; equality is impossible since
    // sqrt(d) is irrational.
    let a2 = a * a;
    let b2d = b * b * BigRational::from_integer(d.clone());
    match a2.cmp(&b2d) {
        Ordering::Greater => a.cmp(&BigRational::zero()),
        Ordering::Less => b.cmp(&BigRational::zero()),
        Ordering::Equal => Ordering::Equal, // unreachable for non-square d
    }
}

impl Value {
    /// Zero as a value.
    pub fn zero() -> Value {
        Value::Fin(BigRational::zero())
    }

    /// A finite rational value from an integer.
    pub fn int(n: i64) -> Value {
        Value::Fin(big(n))
    }

    /// A finite rational value `p/q`.
    pub fn rat(p: i64, q: i64) -> Value {
        Value::Fin(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Canonical constructor for `a + b*sqrt(d)`: extracts square factors of `d`,
    /// collapses to `Fin` when the radical disappears. `d` must be at least 1.
    pub fn quad(a: BigRational, b: BigRational, d: u64) -> Result<Value> {
        if d == 0 {
            return Err(Error::UnsupportedIrrational);
        }
        let (kernel, root) = squarefree_split(d);
        let b = b * big(root as i64);
        if kernel == 1 {
            return Ok(Value::Fin(a + b));
        }
        if b.is_zero() {
            return Ok(Value::Fin(a));
        }
        Ok(Value::Quad { a, b, d: kernel })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinity)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Fin(q) if q.is_zero())
    }

    /// Decomposes a finite value as (a, b, d) with value = a + b*sqrt(d);
    /// rationals report (q, 0, 1). Returns None for infinity.
    pub fn parts(&self) -> Option<(BigRational, BigRational, u64)> {
        match self {
            Value::Fin(q) => Some((q.clone(), BigRational::zero(), 1)),
            Value::Quad { a, b, d } => Some((a.clone(), b.clone(), *d)),
            Value::Infinity => None,
        }
    }

    /// Exact comparison restricted to a single radical: comparing two quadratic
    /// values with distinct `d` is an error.
    pub fn try_cmp(&self, other: &Value) -> Result<Ordering> {
        match (self, other) {
            (Value::Infinity, Value::Infinity) => Ok(Ordering::Equal),
            (Value::Infinity, _) => Ok(Ordering::Greater),
            (_, Value::Infinity) => Ok(Ordering::Less),
            (Value::Quad { d: d1, .. }, Value::Quad { d: d2, .. }) if d1 != d2 => {
                Err(Error::MixedIrrationals)
            }
            _ => Ok(self.cmp_exact(other)),
        }
    }

    /// Exact total order on values, allowing one distinct radical on each side.
    /// Decided by sign checks and at most two squarings; never approximates.
    pub fn cmp_exact(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Infinity, Value::Infinity) => Ordering::Equal,
            (Value::Infinity, _) => Ordering::Greater,
            (_, Value::Infinity) => Ordering::Less,
            _ => {
                let (ax, bx, dx) = self.parts().unwrap();
                let (ay, by, dy) = other.parts().unwrap();
                if bx.is_zero() || by.is_zero() || dx == dy {
                    let d = if !bx.is_zero() { dx } else { dy };
                    sign_rat_plus_radical(&(ax - ay), &(bx - by), &BigInt::from(d))
                } else {
                    // self - other = L + bx*sqrt(dx) - by*sqrt(dy)
                    let l = ax - ay;
                    let sign_r = {
                        // sign of bx*sqrt(dx) - by*sqrt(dy)
                        let px = bx.is_positive();
                        let py = by.is_positive();
                        if bx.is_zero() && by.is_zero() {
                            Ordering::Equal
                        } else if px && !py {
                            Ordering::Greater
                        } else if !px && py {
                            Ordering::Less
                        } else {
                            let mx = &bx * &bx * big(dx as i64);
                            let my = &by * &by * big(dy as i64);
                            if px {
                                mx.cmp(&my)
                            } else {
                                my.cmp(&mx)
                            }
                        }
                    };
                    let sign_l = l.cmp(&BigRational::zero());
                    if sign_l == Ordering::Equal {
                        return sign_r;
                    }
                    if sign_r == Ordering::Equal || sign_l == sign_r {
                        return sign_l;
                    }
                    // Opposite signs: compare |L| with |R| via
                    // L^2 - R^2 = t + 2*bx*by*sqrt(dx*dy).
                    let t = &l * &l - (&bx * &bx * big(dx as i64) + &by * &by * big(dy as i64));
                    let coef = big(2) * &bx * &by;
                    let dd = BigInt::from(dx) * BigInt::from(dy);
                    match sign_rat_plus_radical(&t, &coef, &dd) {
                        Ordering::Greater => sign_l,
                        Ordering::Less => sign_r,
                        Ordering::Equal => Ordering::Equal,
                    }
                }
            }
        }
    }

    /// Sum; infinity is absorbing. Distinct radicals cannot be combined.
    pub fn try_add(&self, other: &Value) -> Result<Value> {
        match (self, other) {
            (Value::Infinity, _) | (_, Value::Infinity) => Ok(Value::Infinity),
            _ => {
                let (ax, bx, dx) = self.parts().unwrap();
                let (ay, by, dy) = other.parts().unwrap();
                if !bx.is_zero() && !by.is_zero() && dx != dy {
                    return Err(Error::MixedIrrationals);
                }
                let d = if !bx.is_zero() { dx } else { dy };
                Value::quad(ax + ay, bx + by, d.max(1))
            }
        }
    }

    /// Difference; `inf - x = inf` for finite x, while subtracting infinity errors.
    pub fn try_sub(&self, other: &Value) -> Result<Value> {
        match (self, other) {
            (_, Value::Infinity) => Err(Error::InfinityArithmetic),
            (Value::Infinity, _) => Ok(Value::Infinity),
            _ => self.try_add(&other.clone().neg()),
        }
    }

    /// Negation of a finite value.
    ///
    /// # Panics
    /// Panics on infinity, which has no negation here.
    pub fn neg(self) -> Value {
        match self {
            Value::Fin(q) => Value::Fin(-q),
            Value::Quad { a, b, d } => Value::Quad { a: -a, b: -b, d },
            Value::Infinity => panic!("negation of infinity"),
        }
    }

    /// Multiplication by a rational scalar; `inf * r = inf` requires `r > 0`.
    pub fn scale_rat(&self, r: &BigRational) -> Value {
        match self {
            Value::Infinity => {
                assert!(r.is_positive(), "infinity may only be scaled by a positive rational");
                Value::Infinity
            }
            Value::Fin(q) => Value::Fin(q * r),
            Value::Quad { a, b, d } => {
                if r.is_zero() {
                    Value::zero()
                } else {
                    Value::Quad { a: a * r, b: b * r, d: *d }
                }
            }
        }
    }

    /// `self + k*mu` with the convention `0 * inf = 0` (the `k = 0` term is `self`).
    pub fn add_scaled(&self, k: usize, mu: &Value) -> Result<Value> {
        if k == 0 {
            return Ok(self.clone());
        }
        self.try_add(&mu.scale_rat(&big(k as i64)))
    }

    /// Exact floor of a finite value.
    ///
    /// # Panics
    /// Panics on infinity.
    pub fn floor_exact(&self) -> BigInt {
        match self {
            Value::Fin(q) => q.floor().to_integer(),
            Value::Quad { a, b, d } => {
                // Estimate floor(b*sqrt(d)) by an exact integer square root, then
                // correct by exact comparisons (at most a couple of steps).
                let radix: BigInt = {
                    let p = (b.numer() * b.numer()) * BigInt::from(*d);
                    let q = b.denom() * b.denom();
                    // floor(sqrt(p/q)) = floor(sqrt(p*q))/q via integers
                    let s = (&p * &q).sqrt();
                    let fl = s.div_floor(&q.clone());
                    if b.is_positive() {
                        fl
                    } else {
                        -fl - 1
                    }
                };
                let mut n = a.floor().to_integer() + radix;
                loop {
                    let next = Value::Fin(BigRational::from_integer(&n + 1));
                    if next.cmp_exact(self) != Ordering::Greater {
                        n += 1;
                        continue;
                    }
                    let here = Value::Fin(BigRational::from_integer(n.clone()));
                    if here.cmp_exact(self) == Ordering::Greater {
                        n -= 1;
                        continue;
                    }
                    return n;
                }
            }
            Value::Infinity => panic!("floor of infinity"),
        }
    }
}

/// Least element of a nonempty list under the exact order. All quadratic entries
/// must share one radical.
pub fn value_min(xs: &[Value]) -> Result<Value> {
    let mut best: Option<&Value> = None;
    for x in xs {
        match best {
            None => best = Some(x),
            Some(b) => {
                if x.try_cmp(b)? == Ordering::Less {
                    best = Some(x);
                }
            }
        }
    }
    best.cloned().ok_or_else(|| Error::Parse("value_min of an empty list".to_string()))
}

fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        let mut s = q.numer().to_string();
        s.push('/');
        s.push_str(&q.denom().to_string());
        s
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Infinity => f.write_str("inf"),
            Value::Fin(q) => f.write_str(&fmt_rat(q)),
            Value::Quad { a, b, d } => {
                let radical = |b: &BigRational| -> String {
                    if b.is_one() {
                        alloc::format!("sqrt({d})")
                    } else if (-b).is_one() {
                        alloc::format!("-sqrt({d})")
                    } else {
                        alloc::format!("{}*sqrt({d})", fmt_rat(b))
                    }
                };
                if a.is_zero() {
                    f.write_str(&radical(b))
                } else if b.is_positive() {
                    write!(f, "{}+{}", fmt_rat(a), radical(b))
                } else {
                    write!(f, "{}-{}", fmt_rat(a), radical(&-b.clone()))
                }
            }
        }
    }
}

/// A finitely generated subgroup of the reals, as produced by joining augmentation
/// radii into the base field's value group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueGroup {
    /// `gamma * Z` with `gamma > 0`.
    DiscreteZ(BigRational),
    /// A dense subgroup, stored by its generators (at least one quadratic
    /// irrational; membership testing is deliberately not provided).
    Dense(Vec<Value>),
}

impl ValueGroup {
    /// The integers: the value group of both shipped base fields.
    pub fn z() -> ValueGroup {
        ValueGroup::DiscreteZ(BigRational::one())
    }

    /// Infimum of the strictly positive part: the generator for a discrete group,
    /// zero for a dense one.
    pub fn inf_positive(&self) -> Value {
        match self {
            ValueGroup::DiscreteZ(g) => Value::Fin(g.clone()),
            ValueGroup::Dense(_) => Value::zero(),
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, ValueGroup::DiscreteZ(_))
    }

    /// Membership, where decidable: always answered for discrete groups, declined
    /// (None) for dense groups.
    pub fn contains(&self, v: &Value) -> Option<bool> {
        match self {
            ValueGroup::DiscreteZ(g) => match v {
                Value::Fin(q) => Some((q / g).is_integer()),
                Value::Quad { .. } => Some(false),
                Value::Infinity => Some(false),
            },
            ValueGroup::Dense(_) => None,
        }
    }

    /// Smallest group containing this one and `mu`. Joining infinity is a no-op:
    /// value groups are generated by the finite values only.
    pub fn join(&self, mu: &Value) -> ValueGroup {
        match mu {
            Value::Infinity => self.clone(),
            Value::Fin(q) => match self {
                ValueGroup::DiscreteZ(g) => {
                    if q.is_zero() {
                        self.clone()
                    } else {
                        ValueGroup::DiscreteZ(rat_gcd(g, q))
                    }
                }
                ValueGroup::Dense(gens) => {
                    if q.is_zero() {
                        return self.clone();
                    }
                    let mut gens = gens.clone();
                    let mut folded = false;
                    for g in gens.iter_mut() {
                        if let Value::Fin(r) = g {
                            *r = rat_gcd(r, q);
                            folded = true;
                            break;
                        }
                    }
                    if !folded {
                        gens.push(mu.clone());
                    }
                    canonical_dense(gens)
                }
            },
            Value::Quad { .. } => {
                let mut gens = match self {
                    ValueGroup::DiscreteZ(g) => vec![Value::Fin(g.clone())],
                    ValueGroup::Dense(gens) => gens.clone(),
                };
                if !gens.contains(mu) {
                    gens.push(mu.clone());
                }
                canonical_dense(gens)
            }
        }
    }

    /// Generators as a list of values (a single generator for discrete groups).
    pub fn generators(&self) -> Vec<Value> {
        match self {
            ValueGroup::DiscreteZ(g) => vec![Value::Fin(g.clone())],
            ValueGroup::Dense(gens) => gens.clone(),
        }
    }

    /// Rational coordinates of `mu` with respect to the stored generators, if `mu`
    /// lies in their rational span. Exact Gaussian elimination over the basis
    /// `{1} ∪ {sqrt(d)}`.
    pub fn qspan_coords(&self, mu: &Value) -> Option<Vec<BigRational>> {
        let gens = self.generators();
        // Collect the radical basis.
        let mut ds: Vec<u64> = Vec::new();
        let mut note = |v: &Value| {
            if let Value::Quad { d, .. } = v {
                if !ds.contains(d) {
                    ds.push(*d);
                }
            }
        };
        for g in &gens {
            note(g);
        }
        note(mu);
        ds.sort_unstable();
        let dim = 1 + ds.len();
        let coords = |v: &Value| -> Vec<BigRational> {
            let (a, b, d) = v.parts().expect("finite value");
            let mut row = vec![BigRational::zero(); dim];
            row[0] = a;
            if !b.is_zero() {
                let idx = 1 + ds.iter().position(|x| *x == d).unwrap();
                row[idx] = b;
            }
            row
        };
        if mu.is_infinite() || gens.iter().any(|g| g.is_infinite()) {
            return None;
        }
        // Solve sum_j x_j * gen_j = mu by row reduction of the dim x (n+1) system.
        let n = gens.len();
        let mut m: Vec<Vec<BigRational>> = (0..dim).map(|_| vec![BigRational::zero(); n + 1]).collect();
        for (j, g) in gens.iter().enumerate() {
            let col = coords(g);
            for (i, entry) in col.into_iter().enumerate() {
                m[i][j] = entry;
            }
        }
        for (i, entry) in coords(mu).into_iter().enumerate() {
            m[i][n] = entry;
        }
        let mut pivot_of_row: Vec<Option<usize>> = vec![None; dim];
        let mut row = 0usize;
        for col in 0..n {
            if row >= dim {
                break;
            }
            let Some(p) = (row..dim).find(|r| !m[*r][col].is_zero()) else { continue };
            m.swap(row, p);
            let inv = m[row][col].clone();
            for c in col..=n {
                let scaled = &m[row][c] / &inv;
                m[row][c] = scaled;
            }
            for r in 0..dim {
                if r != row && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in col..=n {
                        let sub = &factor * &m[row][c];
                        let val = &m[r][c] - &sub;
                        m[r][c] = val;
                    }
                }
            }
            pivot_of_row[row] = Some(col);
            row += 1;
        }
        // Consistency: no row 0 = nonzero.
        for r in 0..dim {
            if pivot_of_row[r].is_none() && !m[r][n].is_zero() {
                return None;
            }
        }
        let mut x = vec![BigRational::zero(); n];
        for r in 0..dim {
            if let Some(c) = pivot_of_row[r] {
                x[c] = m[r][n].clone();
            }
        }
        Some(x)
    }

    /// Minimal positive integer m with `m * mu` in the group, when `mu` lies in the
    /// rational span of the generators (for dense groups this is computed with
    /// respect to the stored generators). None when `mu` is not in the span.
    pub fn min_multiple_in_group(&self, mu: &Value) -> Option<u64> {
        match self {
            ValueGroup::DiscreteZ(g) => match mu {
                Value::Fin(q) => {
                    let t = q / g;
                    let den = t.denom();
                    u64::try_from(den.clone()).ok()
                }
                _ => None,
            },
            ValueGroup::Dense(_) => {
                let coords = self.qspan_coords(mu)?;
                let mut m = BigInt::one();
                for c in &coords {
                    m = m.lcm(c.denom());
                }
                u64::try_from(m).ok()
            }
        }
    }
}

/// Canonical form for dense generator lists: drop zeros and duplicates, sort
/// deterministically, and collapse to a discrete group when no radical survives.
fn canonical_dense(gens: Vec<Value>) -> ValueGroup {
    let mut rat = BigRational::zero();
    let mut quads: Vec<Value> = Vec::new();
    for g in gens {
        match g {
            Value::Fin(q) => rat = rat_gcd(&rat, &q),
            q @ Value::Quad { .. } => {
                if !quads.contains(&q) {
                    quads.push(q);
                }
            }
            Value::Infinity => {}
        }
    }
    quads.sort_by(|x, y| {
        let (ax, bx, dx) = x.parts().unwrap();
        let (ay, by, dy) = y.parts().unwrap();
        dx.cmp(&dy).then(ax.cmp(&ay)).then(bx.cmp(&by))
    });
    if quads.is_empty() {
        if rat.is_zero() {
            // The trivial group does not arise from joins over the shipped fields,
            // but keep a sane fallback.
            return ValueGroup::DiscreteZ(BigRational::one());
        }
        return ValueGroup::DiscreteZ(rat);
    }
    let mut gens = Vec::with_capacity(1 + quads.len());
    if !rat.is_zero() {
        gens.push(Value::Fin(rat));
    }
    gens.extend(quads);
    ValueGroup::Dense(gens)
}

impl fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueGroup::DiscreteZ(g) => write!(f, "{}*Z", fmt_rat(g)),
            ValueGroup::Dense(gens) => {
                f.write_str("<")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(">")
            }
        }
    }
}
