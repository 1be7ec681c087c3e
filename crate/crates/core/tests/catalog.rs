use gl2ode::catalog::{catalog, find_entry, run_checks, run_entry, CheckConfig, Stages, Status};
use gl2ode::parse::parse_ode;

fn quick() -> CheckConfig {
    CheckConfig { frame_points: 4, curvature_points: 3, ..CheckConfig::default() }
}

fn failures(report: &gl2ode::catalog::Report) -> Vec<&str> {
    report.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect()
}

#[test]
fn every_entry_parses_and_has_a_distinct_name() {
    let entries = catalog();
    let mut names: Vec<_> = entries.iter().map(|e| e.name).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), entries.len());
    assert!(entries.iter().all(|e| e.spec.order == 5));
    assert_eq!(find_entry("flat").unwrap().name, "notorsion_c0");
}

#[test]
fn flat_model_passes_every_check_exactly() {
    let report = run_entry(&find_entry("flat").unwrap(), &quick());
    assert!(report.passed(), "{}", report.to_json());
    for name in ["structural_frame", "structural_characteristic", "torsion_purity", "d_squared"] {
        assert_eq!(report.check(name).unwrap().verdict, "Zero", "{name}");
    }
}

#[test]
fn rational_entries_match_their_flags() {
    for name in ["notorsion_cp1", "notorsion_cm1", "ex53_eps0", "ex54"] {
        let report = run_entry(&find_entry(name).unwrap(), &quick());
        assert!(report.passed(), "{name}: {}", report.to_json());
    }
}

#[test]
fn fractional_entries_match_their_flags() {
    for name in ["exy4", "gor_q53", "gor_q54"] {
        let report = run_entry(&find_entry(name).unwrap(), &quick());
        assert!(report.passed(), "{name}: {}", report.to_json());
    }
}

#[test]
fn exfrac_matches_its_flags() {
    let cfg = CheckConfig { frame_points: 2, curvature_points: 2, ..CheckConfig::default() };
    let report = run_entry(&find_entry("exfrac").unwrap(), &cfg);
    assert!(report.passed(), "{}", report.to_json());
}

#[test]
fn ricci_scalar_sign_is_opposite_to_epsilon() {
    for name in ["ex53_eps1", "ex53_epsm1"] {
        let report = run_entry(&find_entry(name).unwrap(), &quick());
        assert_eq!(failures(&report), vec!["curvature_r_sign"], "{name}: {}", report.to_json());
        assert_eq!(report.check("r_torsion_relation").unwrap().status, Status::Pass);
    }
}

#[test]
fn non_wunschmann_input_fails_with_witness_and_skips_the_rest() {
    let spec = parse_ode("order = 5\nF = y4^3").unwrap();
    let report = run_checks(&spec, None, &quick());
    let failed: Vec<_> = report.checks.iter().filter(|c| c.status == Status::Fail).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c.name.starts_with("wunschmann_") && c.witness.is_some()));
    for name in ["torsion_free", "structural_frame", "curvature"] {
        assert_eq!(report.check(name).unwrap().status, Status::Skipped, "{name}");
    }
}

#[test]
fn reports_are_deterministic() {
    let cfg = CheckConfig { stages: Stages { classify: true, frame: true, curvature: false }, ..quick() };
    let entry = find_entry("ex54").unwrap();
    assert_eq!(run_entry(&entry, &cfg).to_json(), run_entry(&entry, &cfg).to_json());
}
