#[path = "common/arbitrary.rs"]
mod arbitrary;

use arbitrary::{pred, subst, valuation, wp_exec_coherent};
use ltsgen_core::logic::{evaluate, simplify, substitute, Bindings, Expr};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn wp_agrees_with_execution(s in subst(), p in pred(), v in valuation()) {
        prop_assert_eq!(wp_exec_coherent(&s, &p, &v), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn simplify_is_sound_under_context(p in pred(), ctx in pred(), v in valuation()) {
        let q = simplify(&p, &ctx);
        if evaluate(&ctx, &v).unwrap() {
            prop_assert_eq!(evaluate(&p, &v).unwrap(), evaluate(&q, &v).unwrap(), "{} ~> {} under {}", p, q, ctx);
        }
    }

    #[test]
    fn simplify_is_idempotent(p in pred(), ctx in pred()) {
        let once = simplify(&p, &ctx);
        prop_assert_eq!(simplify(&once, &ctx), once);
    }

    #[test]
    fn swapping_twice_is_identity(p in pred()) {
        let swap: Bindings = [("x".to_string(), Expr::ident("y")), ("y".to_string(), Expr::ident("x"))]
            .into_iter()
            .collect();
        let twice = substitute(&substitute(&p, &swap).unwrap(), &swap).unwrap();
        prop_assert_eq!(twice, p);
    }
}
