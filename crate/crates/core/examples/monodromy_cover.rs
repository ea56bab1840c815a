//! Mon(G) of the one-object group Z₃ with its 3-cycle star graph is the
//! integers: elements are windings, composition adds them, and the
//! projection reduces mod 3.

use groupoids::fixtures;
use groupoids::{EdgePath, MonMor, Monodromy};

fn winding(mon: &Monodromy<'_>, k: i64) -> MonMor {
    let g = mon.ambient().base();
    let verts: Vec<_> = (0..=k.abs())
        .map(|i| g.morphism(&(i * k.signum()).rem_euclid(3).to_string()).unwrap())
        .collect();
    mon.element(EdgePath::from_vertices(&verts).unwrap()).unwrap()
}

fn show(mon: &Monodromy<'_>, a: &MonMor) -> String {
    let g = mon.ambient().base();
    let names: Vec<&str> = a.path().vertices().map(|v| g.mor_name(v)).collect();
    names.join("-")
}

fn main() -> groupoids::Result<()> {
    let c3 = fixtures::c3g();
    let mon = Monodromy::new(&c3);
    let o = c3.base().object("o")?;

    let ball = mon.enumerate(o, 6);
    println!("star of Mon(C3G) at o, length <= 6: {} elements", ball.len());

    let (a, b) = (winding(&mon, 2), winding(&mon, 3));
    let sum = mon.compose(&a, &b)?;
    println!("[{}] • [{}] = [{}]", show(&mon, &a), show(&mon, &b), show(&mon, &sum));
    println!("projects to {}", c3.base().mor_name(mon.project(&sum)));

    let back = mon.inverse(&sum)?;
    println!("inverse: [{}]", show(&mon, &back));
    println!("a·b in the group structure: [{}]", show(&mon, &mon.group_mul(&a, &b)?));

    // L3P has path-shaped stars, so Mon changes nothing
    let l3p = fixtures::l3p();
    let mon = Monodromy::new(&l3p);
    let x = l3p.base().object("0")?;
    println!("star of Mon(L3P) at 0, length <= 10: {} elements", mon.enumerate(x, 10).len());
    Ok(())
}
