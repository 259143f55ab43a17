//! The 17 → 13 → 8 derivation of the built-in punctured codes.

use punctel::puncture::{
    apply_steps, parse_steps, replay, search_puncture_sets, syndrome_compatibility_check,
    PuncturedCode, StabilizerLabel,
};
use punctel::{builtin_registry, CssCode, PunctureKind};

const TO_13: &str = "(0|1)@1,(0|1)@2,(0|1)@9,(0|1)@11";
const TO_8: &str = "(1|0)@6,(1|0)@8,(1|0)@10,(1|0)@12,(1|0)@13";

fn code(id: &str) -> &'static CssCode {
    builtin_registry().get(id).unwrap()
}

fn derive(steps: &str) -> PuncturedCode {
    apply_steps(code("base-17"), &parse_steps(steps).unwrap()).unwrap()
}

fn sorted(mut v: Vec<StabilizerLabel>) -> Vec<StabilizerLabel> {
    v.sort();
    v
}

#[test]
fn base_to_13_matches_registry() {
    let d = derive(TO_13);
    assert!(d.code().same_stabilizers(code("punct-13")));
    assert_eq!(d.code().parameters(), "[[13,1,3/5]]");
    assert_eq!(
        sorted(d.lineage().removed_stabilizers()),
        sorted(vec![
            StabilizerLabel::x(1),
            StabilizerLabel::x(2),
            StabilizerLabel::x(7),
            StabilizerLabel::z(8),
        ])
    );
    assert_eq!(d.lineage().step_string(), TO_13);
}

#[test]
fn base_to_8_matches_registry() {
    let d = derive(&format!("{TO_13},{TO_8}"));
    assert!(d.code().same_stabilizers(code("punct-8")));
    assert_eq!(d.code().parameters(), "[[8,1,3/3]]");
    let second: Vec<_> = d.lineage().steps[4..]
        .iter()
        .flat_map(|s| s.removed_stabilizers.iter().copied())
        .collect();
    assert_eq!(
        sorted(second),
        sorted(vec![
            StabilizerLabel::x(6),
            StabilizerLabel::z(2),
            StabilizerLabel::z(5),
            StabilizerLabel::z(6),
            StabilizerLabel::z(7),
        ])
    );
    assert_eq!(
        sorted(d.lineage().kept_labels()),
        sorted(vec![
            StabilizerLabel::x(3),
            StabilizerLabel::x(4),
            StabilizerLabel::x(5),
            StabilizerLabel::x(8),
            StabilizerLabel::z(1),
            StabilizerLabel::z(3),
            StabilizerLabel::z(4),
        ])
    );
    assert_eq!(d.lineage().qubits, [3, 4, 5, 7, 14, 15, 16, 17]);
}

#[test]
fn punct_13_in_its_own_numbering() {
    // Origin qubits 6, 8, 10, 12, 13 sit at positions 4, 6, 7, 8, 9 of punct-13.
    let mut d = PuncturedCode::origin(code("punct-13")).unwrap();
    for i in [9, 8, 7, 6, 4] {
        d = d.puncture(PunctureKind::XType, i).unwrap();
    }
    assert!(d.code().same_stabilizers(code("punct-8")));
}

#[test]
fn replay_reproduces_derived_code() {
    let d = derive(&format!("{TO_13},{TO_8}"));
    let again = replay(d.lineage(), builtin_registry()).unwrap();
    assert_eq!(&again, d.code());
}

#[test]
fn decoder_reuse_is_consistent() {
    for steps in [TO_13.to_string(), format!("{TO_13},{TO_8}")] {
        let d = derive(&steps);
        let report =
            syndrome_compatibility_check(code("base-17"), d.code(), d.lineage(), 2000, 11).unwrap();
        assert_eq!(report.ignored, d.lineage().removed_stabilizers());
        assert!(report.errors_checked > 2000);
    }
}

#[test]
fn search_finds_the_published_set() {
    let sets = search_puncture_sets(code("base-17"), PunctureKind::ZType, 4, 3, 5).unwrap();
    assert!(sets.contains(&vec![1, 2, 9, 11]), "{sets:?}");
    assert!(sets.windows(2).all(|w| w[0] < w[1]));
}
