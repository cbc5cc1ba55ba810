use std::process::Command;

use proptest::prelude::*;

fn list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn boost_command_preserves_zeta2(
        beta in proptest::array::uniform3(-1.0f64..1.0),
        gamma in proptest::array::uniform3(-1.0f64..1.0),
        point in proptest::array::uniform8(-2.0f64..2.0),
    ) {
        let out = Command::new(env!("CARGO_BIN_EXE_canrel"))
            .args(["boost", "--beta", &list(&beta), "--gamma", &list(&gamma), "--point", &list(&point), "--format", "kv"])
            .output()
            .unwrap();
        prop_assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        let get = |key: &str| -> f64 {
            text.lines().find_map(|l| l.strip_prefix(key)).unwrap().parse().unwrap()
        };
        let (before, after) = (get("detail.zeta2_before = "), get("detail.zeta2_after = "));
        prop_assert!((before - after).abs() < 1e-10 * before.abs().max(1.0));
    }
}
