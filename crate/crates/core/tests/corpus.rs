use std::path::PathBuf;

use connexive::format::{load_derivation, DerivationFile, FormatError};
use connexive::g3c::{prove_g3c, G3Sequent, SearchBudget};
use connexive::nc::check_nc;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/nc")
}

#[test]
fn hand_encoded_proofs_check_and_agree_with_search() {
    let mut seen = 0;
    for entry in std::fs::read_dir(corpus()).unwrap() {
        let path = entry.unwrap().path();
        if path.file_name().unwrap().to_string_lossy().starts_with("n4-") {
            continue;
        }
        let (file, _) = load_derivation(&path, None).unwrap();
        let DerivationFile::Nc { premises, tree } = file else {
            panic!("{} is not a natural deduction file", path.display());
        };
        check_nc(&tree, &premises).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let goal = G3Sequent::new(premises, tree.conclusion.clone());
        let r = prove_g3c(&goal, &[], &SearchBudget::default()).unwrap();
        assert!(r.outcome.is_found(), "{}: {goal} not found", path.display());
        seen += 1;
    }
    assert_eq!(seen, 6);
}

#[test]
fn n4_rule_is_rejected() {
    let err = load_derivation(&corpus().join("n4-negated-implication.deriv"), None).unwrap_err();
    match err {
        FormatError::Rejected(r) => assert!(r.reason.contains("N4"), "{}", r.reason),
        other => panic!("unexpected error {other}"),
    }
}
