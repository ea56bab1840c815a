//! Mon(G×H) ≅ Mon(G) × Mon(H), checked on bounded balls.

use groupoids::fixtures;
use groupoids::monodromy::check_product;
use groupoids::{Monodromy, StarredGroupoid};

fn main() -> groupoids::Result<()> {
    let c3 = fixtures::c3g();
    let prod = StarredGroupoid::product(&c3, &c3);
    let (count, report) = check_product(&prod, 3)?;
    println!("C3G×C3G: {count} pairs, violations: {}", report.violations.len());

    let mon = Monodromy::new(&prod);
    let x = prod.base().objects().next().unwrap();
    let ball = mon.enumerate(x, 2);
    let g = prod.base();
    for a in ball.iter().filter(|a| a.len() == 2) {
        let (l, r) = mon.split(a)?;
        let names: Vec<&str> = a.path().vertices().map(|v| g.mor_name(v)).collect();
        println!("  {} splits into lengths ({}, {})", names.join(" "), l.len(), r.len());
    }

    let p2 = fixtures::p2();
    let (count, report) = check_product(&StarredGroupoid::product(&p2, &p2), 3)?;
    println!("P2×P2: {count} pairs, violations: {}", report.violations.len());
    Ok(())
}
