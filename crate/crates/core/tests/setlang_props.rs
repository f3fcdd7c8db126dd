mod common;

use proptest::prelude::*;

use common::{any_set, ord_expr};
use numerositas::setlang::{parse_ordinal, parse_set};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sets_round_trip(e in any_set()) {
        prop_assert!(e.validate().is_ok());
        let text = e.to_string();
        prop_assert_eq!(parse_set(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn ordinal_expressions_round_trip(e in ord_expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_ordinal(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn mangled_sets_fail_cleanly(e in any_set(), cut in any::<prop::sample::Index>(), junk in "[(),{}x]") {
        let mut text = e.to_string();
        let at = cut.index(text.len() + 1);
        text.insert_str(at, &junk);
        // either a clean error or a different valid set
        let _ = parse_set(&text);
    }
}
