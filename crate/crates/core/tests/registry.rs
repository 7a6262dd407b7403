use jacobi_core::families::{paper_examples, run_entry};
use jacobi_core::SampleConfig;

#[test]
fn every_entry_matches_its_expectations() {
    let cfg = SampleConfig::default();
    let mut mismatches = Vec::new();
    for entry in paper_examples() {
        for o in run_entry(&entry, &cfg).unwrap() {
            if !o.matched() {
                mismatches.push(format!("{}: {} expected {} got {}", entry.name, o.label, o.expected, o.actual));
            }
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:#?}");
}
