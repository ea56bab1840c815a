//! Reading, validating and re-emitting a GGD document.

use groupoids::ggd::GgdDocument;

const TEXT: &str = "ggd 1
# the pair groupoid on two objects, with no group structure
[objects]
a b
[morphisms]
aa a a
ab a b
ba b a
bb b b
[identities]
aa a
bb b
[compose]
aa aa aa
aa ab ab
ab ba aa
ab bb ab
ba aa ba
ba ab bb
bb ba ba
bb bb bb
[star-edges]
a aa ab
b bb ba
";

fn main() -> groupoids::Result<()> {
    let doc = GgdDocument::parse(TEXT)?;
    let loaded = doc.load()?;
    let g = loaded.sg.base();
    println!("{} objects, {} morphisms", g.num_objects(), g.num_morphisms());
    println!("inverse of ab is {}", g.mor_name(g.inverse(g.morphism("ab")?)?));

    let emitted = doc.emit();
    assert_eq!(GgdDocument::parse(&emitted)?, doc);
    print!("{emitted}");

    let broken = TEXT.replace("ab ba aa\n", "");
    match GgdDocument::parse(&broken)?.load() {
        Err(e) => println!("\nwithout ab∘ba:\n{e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
