//! Validate the bundled group-groupoids, then break the interchange law on
//! purpose and look at the witnesses.

use groupoids::fixtures;
use groupoids::{GroupStructure, Rule};

fn main() -> groupoids::Result<()> {
    for (name, sg) in fixtures::NAMES.iter().zip(fixtures::all()) {
        let report = sg.validate();
        println!("{name:4} {} morphisms, clean: {}", sg.base().num_morphisms(), report.is_clean());
        for note in &report.notes {
            println!("     note: {note}");
        }
    }

    // P6 with one product entry moved: (0,1)·(0,1) now claims to be (0,3)
    let p6 = fixtures::p6();
    let base = p6.base().clone();
    let (objs, mut mors) = fixtures::pair_group_tables(&base, 6);
    for entry in &mut mors {
        if entry.0 == "(0,1)" && entry.1 == "(0,1)" {
            entry.2 = "(0,3)".into();
        }
    }
    let bad = GroupStructure::from_names(&base, &objs, "0", &mors)?;
    let report = bad.validate(&base);
    println!("\nrewired P6 breaks {} rule(s):", report.rules().len());
    for rule in report.rules() {
        let first = report.violations.iter().find(|v| v.rule == rule).unwrap();
        println!("  {first}");
    }
    assert!(report.has(Rule::GroupAssociativity) || report.has(Rule::Homomorphism));
    Ok(())
}
