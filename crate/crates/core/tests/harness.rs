use fracgruss::harness::*;
use fracgruss::inequalities::TheoremId;

fn config(trials: usize, parallel: bool) -> SuiteConfig {
    SuiteConfig {
        trials,
        parallel,
        ..SuiteConfig::default()
    }
}

#[test]
fn seeds_are_stable() {
    // first two outputs of SplitMix64 seeded with 0
    assert_eq!(mix64(0), 0xE220_A839_7B1D_CDAF);
    assert_eq!(mix64(0x9E37_79B9_7F4A_7C15), 0x6E78_9E6A_A1B9_65F4);
    assert_eq!(trial_seed(42, 0), trial_seed(42, 0));
    assert_ne!(trial_seed(42, 0), trial_seed(42, 1));
    assert_ne!(trial_seed(42, 0), trial_seed(43, 0));
}

#[test]
fn generated_cases_round_trip_through_json() {
    for (i, fam) in CaseFamily::all().iter().enumerate() {
        let spec = generate_case(trial_seed(7, i as u64), fam, 2.0, 64).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back: CaseSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(generate_case(trial_seed(7, i as u64), fam, 2.0, 64).unwrap(), spec);
        for id in TheoremId::case_checks() {
            assert_eq!(evaluate(id, &spec).unwrap(), evaluate(id, &back).unwrap());
        }
    }
}

#[test]
fn serial_and_parallel_reports_are_identical() {
    let a = run_suite(&config(60, true)).unwrap();
    let b = run_suite(&config(60, false)).unwrap();
    assert_eq!(a.to_json_without_timing(), b.to_json_without_timing());
    let (mut ca, mut cb) = (Vec::new(), Vec::new());
    a.write_csv(&mut ca).unwrap();
    b.write_csv(&mut cb).unwrap();
    assert_eq!(ca, cb);
    assert_eq!(a.total, 60 * TheoremId::case_checks().len());
    assert!(a.all_hold(), "{:?}", a.failed);
}

#[test]
fn csv_layout() {
    let r = run_suite(&config(2, true)).unwrap();
    let mut buf = Vec::new();
    r.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "seed,theorem_id,lhs,rhs,slack,scale,holds");
    assert_eq!(lines.count(), r.total);

    let empty = run_suite(&config(0, true)).unwrap();
    let mut buf = Vec::new();
    empty.write_csv(&mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), "seed,theorem_id,lhs,rhs,slack,scale,holds\n");
    assert_eq!(empty.total, 0);
}

#[test]
fn failure_records_replay() {
    // a tolerance below rounding makes identity residuals count as failures
    let cfg = SuiteConfig::from_json(
        r#"{"trials": 5, "theorems": ["lemma1"], "families": ["trig_poly"], "tolerance": 1e-300}"#,
    )
    .unwrap();
    let r = run_suite(&cfg).unwrap();
    assert!(!r.failed.is_empty());
    let mut buf = Vec::new();
    r.write_failures(&mut buf).unwrap();
    for line in String::from_utf8(buf).unwrap().lines() {
        let rec: FailureRecord = serde_json::from_str(line).unwrap();
        let again = evaluate(rec.theorem_id, &rec.case).unwrap();
        assert_eq!(Some(again.slack), rec.slack);
        assert_eq!(rec.seed, trial_seed(42, rec.trial as u64));
    }
}

#[test]
fn config_validation() {
    assert!(SuiteConfig::from_json(r#"{"nodes": 0}"#).is_err());
    assert!(SuiteConfig::from_json(r#"{"theorems": ["thm9"]}"#).is_err());
    assert!(SuiteConfig::from_json(r#"{"theorems": ["composition"]}"#).is_err());
    assert!(SuiteConfig::from_json(r#"{"families": []}"#).is_err());
    assert!(SuiteConfig::from_json(r#"{"trials": -1}"#).is_err());
    assert!(SuiteConfig::from_json(r#"{"bogus": 1}"#).is_err());
    let cfg = SuiteConfig::from_json(r#"{"families": ["constant", {"kind": "polynomial", "degree": 5}]}"#).unwrap();
    assert_eq!(cfg.families[1], CaseFamily::with_degree(FamilyKind::Polynomial, 5));
}

#[test]
fn one_node_probe_still_holds() {
    // The discrete operator is a positive functional at every n, so
    // under-resolution changes the values but not the verdicts.
    let cfg = SuiteConfig::from_json(r#"{"trials": 100, "nodes": 1, "families": ["trig_poly"]}"#).unwrap();
    let r = run_suite(&cfg).unwrap();
    assert!(r.all_hold(), "{:?}", r.failed.first());
}
