//! Property tests for the semi-valuation axioms on randomly sampled chains:
//! multiplicativity, the ultrametric inequality, the kernel laws, domination
//! along prefixes, and center/code-path invariance of Gauss evaluation.

use core::cmp::Ordering;

use proptest::prelude::*;

use valchain_core::chain::{AugRecord, Chain};
use valchain_core::field::ValuedField;
use valchain_core::poly::Poly;
use valchain_core::sample::Sampler;
use valchain_core::valuation::GaussVal;
use valchain_core::value::Value;

fn fields() -> impl Strategy<Value = ValuedField> {
    prop_oneof![
        Just(ValuedField::PAdicRationals(2)),
        Just(ValuedField::PAdicRationals(3)),
        Just(ValuedField::PAdicRationals(5)),
        Just(ValuedField::LaurentRationalFunctions(2)),
        Just(ValuedField::LaurentRationalFunctions(3)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_values_add(seed in 0u64..1 << 48, field in fields()) {
        let mut s = Sampler::new(seed);
        let c = s.verified_chain(field, 3);
        let w = c.realize().unwrap();
        let f = s.nonzero_poly(field, 4, 10);
        let g = s.nonzero_poly(field, 4, 10);
        let lhs = w.eval(&f.mul(&g)).unwrap();
        let rhs = w.eval(&f).unwrap().try_add(&w.eval(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sums_respect_the_ultrametric_inequality(seed in 0u64..1 << 48, field in fields()) {
        let mut s = Sampler::new(seed);
        let c = s.verified_chain(field, 3);
        let w = c.realize().unwrap();
        let f = s.poly(field, 4, 10);
        let g = s.poly(field, 4, 10);
        let vf = w.eval(&f).unwrap();
        let vg = w.eval(&g).unwrap();
        let vs = w.eval(&f.add(&g)).unwrap();
        let lower = if vf.cmp_exact(&vg) == Ordering::Less { vf.clone() } else { vg.clone() };
        prop_assert_ne!(vs.cmp_exact(&lower), Ordering::Less);
        if vf.cmp_exact(&vg) != Ordering::Equal {
            prop_assert_eq!(vs.cmp_exact(&lower), Ordering::Equal);
        }
    }

    #[test]
    fn zero_and_constants_evaluate_to_base_values(seed in 0u64..1 << 48, field in fields()) {
        let mut s = Sampler::new(seed);
        let c = s.verified_chain(field, 3);
        let w = c.realize().unwrap();
        prop_assert_eq!(w.eval(&Poly::zero(field)).unwrap(), Value::Infinity);
        let x = s.elem(field, 10);
        let expected = field.vk(&x);
        prop_assert_eq!(w.eval(&Poly::constant(field, x)).unwrap(), expected);
    }

    #[test]
    fn each_augmentation_dominates_the_previous(seed in 0u64..1 << 48, field in fields()) {
        let mut s = Sampler::new(seed);
        let c = s.verified_chain(field, 3);
        let prefixes = c.prefix_realizations().unwrap();
        let f = s.poly(field, 4, 10);
        for pair in prefixes.windows(2) {
            let before = pair[0].eval(&f).unwrap();
            let after = pair[1].eval(&f).unwrap();
            prop_assert_ne!(after.cmp_exact(&before), Ordering::Less);
        }
    }

    #[test]
    fn infinite_radius_gives_the_kernel_laws(seed in 0u64..1 << 48) {
        let field = ValuedField::PAdicRationals(5);
        let mut s = Sampler::new(seed);
        let phi = Poly::t_minus(field, field.from_int(1 + s.int_in(0, 3)));
        let c = Chain::new(
            GaussVal { field, center: field.from_int(0), radius: Value::zero() },
            vec![AugRecord::Ordinary { phi: phi.clone(), mu: Value::Infinity }],
        );
        let w = c.realize().unwrap();
        let g = s.nonzero_poly(field, 3, 10);
        prop_assert_eq!(w.eval(&phi.mul(&g)).unwrap(), Value::Infinity);
        let f = s.poly(field, 4, 10);
        let (_, r) = f.euclid_divmod(&phi).unwrap();
        prop_assert_eq!(w.eval(&f).unwrap(), w.eval(&r).unwrap());
    }

    #[test]
    fn gauss_centers_within_the_radius_agree(seed in 0u64..1 << 48, field in fields()) {
        let mut s = Sampler::new(seed);
        let num = s.int_in(0, 5);
        let den = s.int_in(1, 3);
        let radius = Value::rat(num, den);
        let alpha = s.elem(field, 8);
        // Any shift of valuation at least the radius: an integer times the
        // uniformizer to the power ceil(radius) or more.
        let exponent = radius.floor_exact() + 1;
        let unit = field.from_int(s.int_in(-6, 6));
        let scale = field
            .element_of_valuation(&Value::int(i64::try_from(exponent).unwrap()))
            .unwrap();
        let beta = alpha.add(&unit.mul(&scale));
        let a = GaussVal { field, center: alpha, radius: radius.clone() };
        let b = GaussVal { field, center: beta, radius };
        let f = s.poly(field, 4, 10);
        prop_assert_eq!(a.eval(&f).unwrap(), b.eval(&f).unwrap());
    }

    #[test]
    fn gauss_eval_code_paths_agree(seed in 0u64..1 << 48, field in fields()) {
        let mut s = Sampler::new(seed);
        let g = GaussVal {
            field,
            center: s.elem(field, 8),
            radius: Value::rat(s.int_in(0, 5), s.int_in(1, 3)),
        };
        let f = s.poly(field, 4, 10);
        prop_assert_eq!(g.eval(&f).unwrap(), g.eval_by_shift(&f).unwrap());
    }

    #[test]
    fn step_is_the_sum_of_record_steps(seed in 0u64..1 << 48, field in fields()) {
        let mut s = Sampler::new(seed);
        let c = s.verified_chain(field, 3);
        let parts = c.step_breakdown().unwrap();
        let mut total = Value::zero();
        for part in &parts {
            prop_assert_ne!(part.cmp_exact(&Value::zero()), Ordering::Less);
            total = total.try_add(part).unwrap();
        }
        prop_assert_eq!(c.step_of().unwrap(), total);
    }
}
