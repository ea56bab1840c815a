//! Globalizing a local morphism. L3P has path-shaped stars, so the
//! identity-on-labels map W → P3 extends to all of L3P; for P6 the
//! group-morphism check refuses because W is not a subgroup.

use groupoids::fixtures;
use groupoids::{Extension, LocalMorphism, TieBreak, WSet, Word};

fn main() -> groupoids::Result<()> {
    let (l3p, p3) = (fixtures::l3p(), fixtures::p3());
    let g = l3p.base();
    let w = fixtures::distance_one(&l3p);
    let pairs: Vec<(String, String)> = w
        .iter()
        .map(|u| (g.mor_name(u).to_string(), g.mor_name(u).to_string()))
        .collect();
    let f = LocalMorphism::from_names(&l3p, &p3, w, &pairs)?;
    println!("f valid: {}", f.validate().is_clean());

    let weak = Extension::weak(&f, None)?;
    let word = Word::new(g, g.object("0")?, vec![g.morphism("(0,1)")?, g.morphism("(1,2)")?])?;
    println!("weak:   f~{} = {}", word.display(g), p3.base().mor_name(weak.on_word(&word)?));

    for tie in [TieBreak::Lexicographic, TieBreak::ReverseLexicographic] {
        let strong = Extension::strong(&f, tie)?;
        let k = g.morphism("(2,0)")?;
        println!(
            "strong ({tie:?}): (2,0) = {} ↦ {}",
            strong.factorize(k)?.display(g),
            p3.base().mor_name(strong.on_morphism(k)?)
        );
    }

    let p2 = fixtures::p2();
    let incl = LocalMorphism::inclusion(&p2, WSet::full(p2.base()));
    let ext = Extension::weak(&incl, None)?;
    let g2 = p2.base();
    let singles: Vec<Word> = g2
        .morphisms()
        .map(|u| Word::new(g2, g2.src(u), vec![u]))
        .collect::<groupoids::Result<_>>()?;
    let samples: Vec<_> = singles
        .iter()
        .flat_map(|a| singles.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    println!("P2 group morphism on {} pairs: {}", samples.len(), ext.check_group_morphism(&samples)?.is_clean());

    let p6 = fixtures::p6();
    let incl = LocalMorphism::inclusion(&p6, fixtures::distance_one(&p6));
    match Extension::weak(&incl, None)?.check_group_morphism(&[]) {
        Err(e) => println!("P6: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
