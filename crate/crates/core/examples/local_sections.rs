//! Admissible local sections of L3P, their products and inverses, and the
//! holonomy groupoid.

use groupoids::fixtures;
use groupoids::sections::{check_extendibility, enumerate_sections, holonomy};
use groupoids::{Section, WSet};

fn main() -> groupoids::Result<()> {
    let l3p = fixtures::l3p();
    let g = l3p.base();

    let s = Section::from_names(g, &[("0", "(0,1)")])?;
    let t = Section::from_names(g, &[("1", "(1,2)")])?;
    let (st, composable) = s.product(g, &t);
    println!("{} · {} = {} (composable: {composable})", s.display(g), t.display(g), st.display(g));
    println!("inverse of {} is {}", s.display(g), s.inverse(g).display(g));

    let all = enumerate_sections(g, 2);
    let regular = all.iter().filter(|s| s.mul(g, &s.inverse(g)).mul(g, s) == **s).count();
    println!("{regular} of {} sections satisfy s s⁻¹ s = s", all.len());

    for (label, w) in [
        ("W = distance one", fixtures::distance_one(&l3p)),
        ("W = identities", WSet::identities(g)),
    ] {
        let hol = holonomy(g, &w)?;
        println!(
            "{label}: Hol has {} morphisms, J₀ has {} germs, φ iso onto ⟨W⟩: {}",
            hol.groupoid.num_morphisms(),
            hol.kernel.len(),
            hol.is_iso_onto_generated(g, &w)
        );
    }

    let report = check_extendibility(g, &fixtures::distance_one(&l3p), 3);
    println!("extendibility clean: {} ({})", report.is_clean(), report.notes.join("; "));
    Ok(())
}
