// Symbolic determinant identities, checked as polynomial residuals.

use bridgecover::goeritz::{
    verify_additivity, verify_lemma_items, verify_substitution_identities, verify_table_consistency, Family,
    IdentityCheck,
};

fn show(title: &str, checks: &[IdentityCheck]) {
    let passed = checks.iter().filter(|c| c.pass()).count();
    println!("{title}: {passed}/{} PASS", checks.len());
    for c in checks.iter().filter(|c| !c.pass()) {
        println!("  {} residual {}", c.name, c.residual);
    }
}

pub fn run() {
    show("lemma5.4", &verify_additivity(Family::A));
    show("lemma5.12", &verify_additivity(Family::L));
    show("lemma5.3", &verify_lemma_items(Family::A));
    show("lemma5.11", &verify_lemma_items(Family::L));
    show("substitutions A", &verify_substitution_identities(Family::A));
    show("substitutions L", &verify_substitution_identities(Family::L));
    show("table consistency", &verify_table_consistency());

    let first = &verify_additivity(Family::A)[0];
    println!("e.g. {}: {}", first.name, first.statement);
}

fn main() {
    run();
}
