use casson_cli::run;
use proptest::prelude::*;

fn cli(args: &[String], stdin: &str) -> (i32, Vec<u8>, Vec<u8>) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("casson".to_string()).chain(args.iter().cloned());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, out, err)
}

const COMMANDS: &[&[&str]] = &[
    &["ahat", "deg"],
    &["ahat", "mul"],
    &["lambda"],
    &["lambda-asym"],
    &["surgery", "intersect"],
    &["surgery", "growth"],
    &["transversal"],
    &["alexander-double"],
    &["admissible"],
    &["apoly"],
    &["seminorm"],
    &["whitehead", "verify"],
    &["whitehead", "glue"],
    &["bogus"],
];

const FLAGS: &[&str] = &[
    "-p", "-q", "-n", "-a", "-b", "--q-max", "--trials", "--samples", "--seeds", "--points", "--ahat",
    "--alexander", "--presentation", "--json", "--format", "--seed",
];

const VALUES: &[&str] = &[
    "trefoil", "figure-8", "5_2", "unknot", "untwisted-double-trefoil", "nosuch", "-", "0", "1", "-1", "2", "3",
    "7", "-5", "12", "1000001", "10001", "99999999999999999999", "1/0", "0/0", "2/4", "-3/7", "x", "", "m^6*l+1",
    "l-1", "m^-2*l^3 - 4", "t^2-t+1", "t+1", "t^-1", "json", "csv", "text", "m^", "3*", "/",
];

fn token() -> impl Strategy<Value = String> {
    prop_oneof![
        2 => prop::sample::select(FLAGS).prop_map(String::from),
        3 => prop::sample::select(VALUES).prop_map(String::from),
        1 => "[-a-z0-9/^*+ ]{0,8}",
    ]
}

fn argv() -> impl Strategy<Value = Vec<String>> {
    (prop::sample::select(COMMANDS), prop::collection::vec(token(), 0..7)).prop_map(|(cmd, rest)| {
        let mut v: Vec<String> = cmd.iter().map(|s| s.to_string()).collect();
        v.extend(rest);
        // Keep the heavy commands cheap.
        if cmd == ["whitehead", "glue"] {
            v.extend(["--seeds".into(), "2".into()]);
        }
        if cmd == ["whitehead", "verify"] {
            v.extend(["--samples".into(), "2".into()]);
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, failure_persistence: None, ..ProptestConfig::default() })]

    /// Arbitrary argument lists never panic and always map to a known
    /// exit code.
    #[test]
    fn no_panics(args in argv(), stdin in "[ -~]{0,40}") {
        let (code, _, _) = cli(&args, &stdin);
        prop_assert!([0, 1, 2, 3].contains(&code), "{args:?} -> {code}");
    }
}

#[test]
fn output_is_deterministic() {
    let cases: &[&[&str]] = &[
        &["--json", "lambda-asym", "5_2", "-p", "2", "--q-max", "9"],
        &["--json", "surgery", "intersect", "figure-8", "-p", "1", "-q", "3", "--points"],
        &["--json", "--seed", "4", "seminorm", "5_2", "-a", "2", "-b", "1"],
        &["--json", "--seed", "4", "whitehead", "verify", "--samples", "10"],
        &["--json", "--seed", "4", "whitehead", "glue", "trefoil", "--seeds", "10"],
        &["--json", "ahat", "mul", "trefoil", "5_1"],
        &["--json", "lambda", "nosuch"],
    ];
    for args in cases {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let first = cli(&args, "");
        assert_eq!(first, cli(&args, ""), "{args:?}");
        assert!(serde_json::from_slice::<serde_json::Value>(&first.1).is_ok(), "{args:?}");
    }
}
