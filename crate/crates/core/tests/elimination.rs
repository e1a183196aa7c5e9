mod common;

use common::{fixture_copy, fixture_dir, line, table1};
use ftpi_core::elimination::{
    compare_golden, replay, run_pipeline, run_pipeline_ordered, EliminationReport, EngineConfig, Manifest, RuleId,
    Status,
};
use ftpi_core::sieve::ParameterTuple;

const ORDER: [RuleId; 5] = RuleId::DEFAULT_ORDER;

fn tuples(lines: &[usize]) -> Vec<ParameterTuple> {
    lines.iter().map(|&n| line(n)).collect()
}

fn golden() -> EliminationReport {
    EliminationReport::parse(&std::fs::read_to_string(fixture_dir().join("table1.report")).unwrap()).unwrap()
}

#[test]
fn report_matches_golden_and_replays() {
    let report = run_pipeline(&table1(), &fixture_dir(), EngineConfig::default()).unwrap();
    let text = std::fs::read_to_string(fixture_dir().join("table1.report")).unwrap();
    assert_eq!(report.to_text(), text);
    assert!(compare_golden(&report, &golden()).is_empty());
    let checks = replay(&report, &fixture_dir(), EngineConfig::default()).unwrap();
    assert!(!checks.is_empty());
    let bad: Vec<_> = checks.iter().filter(|c| !c.ok).collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn final_status_does_not_depend_on_rule_order() {
    let t = tuples(&[2, 3, 4, 5, 6, 9, 12, 13, 14, 15]);
    let forward = run_pipeline_ordered(&t, &fixture_dir(), EngineConfig::default(), &ORDER).unwrap();
    let mut reversed = ORDER;
    reversed.reverse();
    let backward = run_pipeline_ordered(&t, &fixture_dir(), EngineConfig::default(), &reversed).unwrap();
    assert_eq!(forward.final_statuses(), backward.final_statuses());
    assert!(forward.final_statuses().iter().all(|(_, s)| *s == Status::Eliminated));
}

#[test]
fn removing_a_fixture_never_strengthens_a_verdict() {
    let manifest = Manifest::load(&fixture_dir().join("manifest.toml")).unwrap();
    for n in [5, 6, 9, 12] {
        let t = tuples(&[n]);
        let before = run_pipeline(&t, &fixture_dir(), EngineConfig::default()).unwrap();
        let (id, status) = before.final_statuses()[0].clone();
        let entry = manifest.find(&t[0]).unwrap();
        let listed: Vec<&String> = entry.d.iter().chain(entry.l.iter()).flat_map(|s| &s.fixtures).collect();
        for rel in listed {
            let dir = fixture_copy();
            std::fs::remove_file(dir.path().join(rel)).unwrap();
            let after = run_pipeline(&t, dir.path(), EngineConfig::default()).unwrap();
            let got = after.final_statuses()[0].1;
            assert!(got == status || got == Status::External, "{id} without {rel}: {status} became {got}");
            let row = after.row(&id, "final").unwrap();
            assert!(row.to_string().contains(rel.as_str()), "{id}: missing {rel} not reported");
        }
    }
}

#[test]
fn line_without_fixtures_keeps_arithmetic_evidence() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("manifest.toml"), "").unwrap();
    let report = run_pipeline(&tuples(&[6]), dir.path(), EngineConfig::default()).unwrap();
    let (_, status) = &report.final_statuses()[0];
    assert_eq!(*status, Status::External);
    let row = report.rows.iter().find(|r| r.rule_id == "prime_D").unwrap();
    let primes = row.evidence["primes"].as_array().unwrap();
    assert!(primes.iter().any(|p| p["p"] == 31 && p["d_minus_p"] == 3 && p["k_over_ell"] == 18));
}

#[test]
fn empty_tuple_list_gives_empty_report() {
    let report = run_pipeline(&[], &fixture_dir(), EngineConfig::default()).unwrap();
    assert!(report.rows.is_empty());
    let parsed = EliminationReport::parse(&report.to_text()).unwrap();
    assert_eq!(parsed, report);
}
