//! Property tests for the algebraic laws the closed forms must satisfy.

use proptest::prelude::*;

use mulaut::monoid_aut::{monoid_auts, to_semidirect};
use mulaut::residue::ModulusContext;
use mulaut::structure::{twisted_elements, TwistedTriple};
use mulaut::unit_aut::unit_auts;

fn contexts() -> Vec<ModulusContext> {
    [
        (2u64, 1u32),
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (3, 1),
        (3, 2),
        (3, 3),
        (5, 1),
        (5, 2),
        (7, 1),
        (13, 1),
    ]
    .into_iter()
    .map(|(p, e)| ModulusContext::new(p, e).expect("valid context"))
    .collect()
}

fn arb_ctx() -> impl Strategy<Value = ModulusContext> {
    (0..contexts().len()).prop_map(|i| contexts()[i])
}

proptest! {
    #[test]
    fn residue_multiplication_is_modular(ctx in arb_ctx(), a in 0u64..4096, b in 0u64..4096) {
        let x = ctx.residue(a);
        let y = ctx.residue(b);
        let product = x.mul(&y).unwrap();
        prop_assert_eq!(product.value(), (a % ctx.modulus()) * (b % ctx.modulus()) % ctx.modulus());
        prop_assert_eq!(product, y.mul(&x).unwrap());
    }

    #[test]
    fn padic_roundtrip(ctx in arb_ctx(), a in 0u64..4096) {
        let x = ctx.residue(a);
        prop_assert_eq!(x.padic_decompose().recompose(), x);
    }

    #[test]
    fn unit_decomposition_roundtrip_and_order(ctx in arb_ctx(), a in 0u64..4096) {
        let value = a % ctx.modulus();
        prop_assume!(ctx.residue(value).is_unit());
        let unit = ctx.unit(value).unwrap();
        prop_assert_eq!(unit.decompose().recompose(ctx).unwrap(), unit);
        // order computed by formula/descent matches naive iteration
        let mut cur = unit;
        let mut naive = 1u64;
        while cur.value() != 1 % ctx.modulus() {
            cur = cur.mul(&unit).unwrap();
            naive += 1;
        }
        prop_assert_eq!(unit.order(), naive);
        prop_assert_eq!(ctx.unit_group_order() % unit.order(), 0);
    }

    #[test]
    fn unit_aut_compose_apply_law(ctx in arb_ctx(), i in 0usize..1024, j in 0usize..1024, a in 0u64..4096) {
        let descriptor = unit_auts(ctx);
        let params = descriptor.params();
        let phi = params[i % params.len()];
        let psi = params[j % params.len()];
        let value = a % ctx.modulus();
        prop_assume!(ctx.residue(value).is_unit());
        let unit = ctx.unit(value).unwrap();
        prop_assert_eq!(
            phi.compose(&psi).unwrap().apply(&unit).unwrap(),
            phi.apply(&psi.apply(&unit).unwrap()).unwrap()
        );
        prop_assert!(phi.compose(&phi.inverse()).unwrap().is_identity());
    }

    #[test]
    fn monoid_aut_is_multiplicative(ctx in arb_ctx(), i in 0usize..4096, a in 0u64..4096, b in 0u64..4096) {
        let auts = monoid_auts(ctx);
        let psi = &auts[i % auts.len()];
        let x = ctx.residue(a);
        let y = ctx.residue(b);
        prop_assert_eq!(
            psi.apply(&x.mul(&y).unwrap()).unwrap(),
            psi.apply(&x).unwrap().mul(&psi.apply(&y).unwrap()).unwrap()
        );
    }

    #[test]
    fn semidirect_law_matches_pointwise(ctx in arb_ctx(), i in 0usize..4096, j in 0usize..4096) {
        let auts = monoid_auts(ctx);
        let a = &auts[i % auts.len()];
        let b = &auts[j % auts.len()];
        let pointwise = a.compose_by_evaluation(b).unwrap();
        let closed = to_semidirect(a).star(&to_semidirect(b)).unwrap();
        prop_assert_eq!(to_semidirect(&pointwise), closed);
    }

    #[test]
    fn twisted_star_associative(e in 4u32..8, i in 0usize..4096, j in 0usize..4096, k in 0usize..4096) {
        let elements = twisted_elements(e).unwrap();
        let x = elements[i % elements.len()];
        let y = elements[j % elements.len()];
        let z = elements[k % elements.len()];
        prop_assert_eq!(
            x.star(&y).unwrap().star(&z).unwrap(),
            x.star(&y.star(&z).unwrap()).unwrap()
        );
    }

    #[test]
    fn twisted_pow_matches_iteration(e in 4u32..8, i in 0usize..4096, k in -20i64..40) {
        let elements = twisted_elements(e).unwrap();
        let x = elements[i % elements.len()];
        let mut acc = TwistedTriple::identity(e).unwrap();
        let base = if k < 0 { x.inverse() } else { x };
        for _ in 0..k.unsigned_abs() {
            acc = acc.star(&base).unwrap();
        }
        prop_assert_eq!(x.pow(k), acc);
    }
}
