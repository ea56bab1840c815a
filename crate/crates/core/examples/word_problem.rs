//! Equality in M(G,W) for P6 with W the identities and their neighbours.
//! Rewriting alone cannot tell the six-step loop from the empty word; the
//! map into Mon(G) can.

use groupoids::fixtures;
use groupoids::presentation::check_hypotheses;
use groupoids::{Error, Presentation, Word};

fn main() -> groupoids::Result<()> {
    let p6 = fixtures::p6();
    let g = p6.base();
    let w = fixtures::distance_one(&p6);
    let pres = Presentation::new(&p6, w, None)?;

    let x = g.object("0")?;
    let letters = (0..6)
        .map(|i| g.morphism(&format!("({},{})", i, (i + 1) % 6)))
        .collect::<groupoids::Result<Vec<_>>>()?;
    let lp = Word::new(g, x, letters)?;
    println!("loop {} evaluates to {}", lp.display(g), g.mor_name(lp.evaluate(g)?));
    println!("equal to the empty word in M(G,W)? {}", pres.equal(&lp, &Word::empty(x))?);
    println!("fold leaves it as {}", pres.fold(&lp).display(g));

    let back = lp.inverse(g)?;
    let there_and_back = lp.concat(g, &back)?;
    println!("loop·loop⁻¹ equal to empty? {}", pres.equal(&there_and_back, &Word::empty(x))?);
    println!("words of length <= 3 from 0: {}", pres.words(x, 3).len());

    let p3 = fixtures::p3();
    let report = check_hypotheses(&p3, &fixtures::distance_one(&p3), None);
    println!("\nP3 with the same kind of W:\n{report}");
    assert!(matches!(
        Presentation::new(&p3, fixtures::distance_one(&p3), None),
        Err(Error::Hypotheses(_))
    ));
    Ok(())
}
