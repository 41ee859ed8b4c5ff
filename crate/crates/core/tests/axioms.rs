use std::time::Instant;

use csalg_core::builtins::{make_current, make_n2, make_n4, sl2_pauli, n4};
use csalg_core::coefficients::CycloField;
use csalg_core::conformal::{check_axioms, Axiom};

#[test]
fn n4_passes_every_axiom() {
    let start = Instant::now();
    let r = check_axioms(&make_n4());
    assert!(r.all_passed(), "{r:?}");
    assert_eq!(r.verdict(Axiom::Cs4).checked, 64);
    assert_eq!(r.verdict(Axiom::Cs5).checked, 512);
    assert!(start.elapsed().as_secs() < 30);
}

#[test]
fn n2_sweep_sizes() {
    let r = check_axioms(&make_n2());
    assert!(r.all_passed());
    assert_eq!(r.verdict(Axiom::Cs4).checked, 16);
    assert_eq!(r.verdict(Axiom::Cs5).checked, 64);
}

#[test]
fn n4_currents_are_the_pauli_current_algebra() {
    let field = CycloField::get(24);
    let a = make_n4();
    let c = make_current(&sl2_pauli(field).unwrap());
    for (x, &jx) in n4::J.iter().enumerate() {
        for (y, &jy) in n4::J.iter().enumerate() {
            let lhs = a.table_entry(jx, jy).unwrap();
            let rhs = c.table_entry(x, y).unwrap();
            // generator indices differ by the offset of J1
            let shifted = rhs.map(|e| {
                csalg_core::conformal::ConfElt::from_terms(
                    field,
                    e.terms().iter().map(|(k, v)| {
                        (csalg_core::conformal::TermKey::new(k.gen + n4::J[0], k.dpow, k.exp), v.clone())
                    }),
                )
            });
            assert_eq!(*lhs, shifted);
        }
    }
}
