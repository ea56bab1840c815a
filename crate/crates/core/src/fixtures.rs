//! The canonical small models used throughout the tests, examples, and the
//! bundled `.ggd` files.
//!
//! | name | groupoid | group structure | star graphs |
//! |------|----------|-----------------|-------------|
//! | `P3`  | pair groupoid on `{0,1,2}` | `Z₃` componentwise | 3-cycle (complete) |
//! | `L3P` | pair groupoid on `{0,1,2}` | none | path `0–1–2` on the second coordinate |
//! | `P6`  | pair groupoid on `Z₆` | `Z₆` componentwise | 6-cycle on the second coordinate |
//! | `C3G` | one-object group `Z₃` | `Z₃` | 3-cycle |
//! | `C6G` | one-object group `Z₆` | `Z₆` | 6-cycle |
//! | `P2`  | pair groupoid on `Z₂` | `Z₂` componentwise | single edge |

use crate::ggd::{GgdDocument, LocalSpec};
use crate::group_groupoid::{tables_from, GroupStructure};
use crate::groupoid::{Groupoid, GroupoidBuilder};
use crate::presentation::WSet;
use crate::star::StarredGroupoid;

pub const NAMES: [&str; 6] = ["P3", "L3P", "P6", "C3G", "C6G", "P2"];

/// Pair groupoid on `0..n`: morphisms `(i,j)` with `(i,j)∘(j,k) = (i,k)`.
pub fn pair_groupoid_builder(n: usize) -> GroupoidBuilder {
    let mut b = GroupoidBuilder::new();
    for i in 0..n {
        b.object(i.to_string());
        b.identity(pair(i, i), i.to_string());
        for j in 0..n {
            b.morphism(pair(i, j), i.to_string(), j.to_string());
            for k in 0..n {
                b.compose(pair(i, j), pair(j, k), pair(i, k));
            }
        }
    }
    b
}

/// `Z_n` as a one-object groupoid on object `o`.
pub fn cyclic_group_builder(n: usize) -> GroupoidBuilder {
    let mut b = GroupoidBuilder::new();
    b.object("o").identity("0", "o");
    for a in 0..n {
        b.morphism(a.to_string(), "o", "o");
        for c in 0..n {
            b.compose(a.to_string(), c.to_string(), ((a + c) % n).to_string());
        }
    }
    b
}

fn pair(i: usize, j: usize) -> String {
    format!("({i},{j})")
}

fn parse_pair(s: &str) -> (usize, usize) {
    let inner = &s[1..s.len() - 1];
    let (a, b) = inner.split_once(',').expect("pair name");
    (a.parse().expect("index"), b.parse().expect("index"))
}

type Triples = Vec<(String, String, String)>;

/// Componentwise `Z_n` tables on the pair groupoid on `0..n`.
pub fn pair_group_tables(base: &Groupoid, n: usize) -> (Triples, Triples) {
    tables_from(
        base,
        |a, b| ((a.parse::<usize>().unwrap() + b.parse::<usize>().unwrap()) % n).to_string(),
        |g, h| {
            let ((a, b), (c, d)) = (parse_pair(g), parse_pair(h));
            pair((a + c) % n, (b + d) % n)
        },
    )
}

/// `Z_n` tables on the one-object group.
pub fn cyclic_group_tables(base: &Groupoid, n: usize) -> (Triples, Triples) {
    tables_from(
        base,
        |_, _| "o".to_string(),
        |g, h| ((g.parse::<usize>().unwrap() + h.parse::<usize>().unwrap()) % n).to_string(),
    )
}

/// Edges `v – v+1 (mod n)` on the labels produced by `label`.
fn cycle_edges(objects: &[String], n: usize, label: impl Fn(&str, usize) -> String) -> Triples {
    let mut out = Vec::new();
    for x in objects {
        let steps = if n == 2 { 1 } else { n };
        for j in 0..steps {
            out.push((x.clone(), label(x, j), label(x, (j + 1) % n)));
        }
    }
    out
}

fn pair_fixture(n: usize, with_group: bool, edges: Triples) -> StarredGroupoid {
    let base = pair_groupoid_builder(n).build().expect("pair groupoid");
    let group = with_group.then(|| {
        let (o, m) = pair_group_tables(&base, n);
        GroupStructure::from_names(&base, &o, "0", &m).expect("group tables")
    });
    StarredGroupoid::from_names(base, group, &edges).expect("star edges")
}

fn objects(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn p3() -> StarredGroupoid {
    let edges = cycle_edges(&objects(3), 3, |x, j| format!("({x},{j})"));
    pair_fixture(3, true, edges)
}

pub fn l3p() -> StarredGroupoid {
    let mut edges = Vec::new();
    for x in objects(3) {
        edges.push((x.clone(), format!("({x},0)"), format!("({x},1)")));
        edges.push((x.clone(), format!("({x},1)"), format!("({x},2)")));
    }
    pair_fixture(3, false, edges)
}

pub fn p6() -> StarredGroupoid {
    let edges = cycle_edges(&objects(6), 6, |x, j| format!("({x},{j})"));
    pair_fixture(6, true, edges)
}

pub fn p2() -> StarredGroupoid {
    let edges = cycle_edges(&objects(2), 2, |x, j| format!("({x},{j})"));
    pair_fixture(2, true, edges)
}

fn cyclic_fixture(n: usize) -> StarredGroupoid {
    let base = cyclic_group_builder(n).build().expect("cyclic group");
    let (o, m) = cyclic_group_tables(&base, n);
    let group = GroupStructure::from_names(&base, &o, "o", &m).expect("group tables");
    let edges = cycle_edges(&["o".to_string()], n, |_, j| j.to_string());
    StarredGroupoid::from_names(base, Some(group), &edges).expect("star edges")
}

pub fn c3g() -> StarredGroupoid {
    cyclic_fixture(3)
}

pub fn c6g() -> StarredGroupoid {
    cyclic_fixture(6)
}

pub fn by_name(name: &str) -> Option<StarredGroupoid> {
    Some(match name {
        "P3" => p3(),
        "L3P" => l3p(),
        "P6" => p6(),
        "C3G" => c3g(),
        "C6G" => c6g(),
        "P2" => p2(),
        _ => return None,
    })
}

/// All six fixtures in [`NAMES`] order.
pub fn all() -> Vec<StarredGroupoid> {
    NAMES.iter().map(|n| by_name(n).unwrap()).collect()
}

/// Identities together with their star-graph neighbours: for the pair
/// fixtures this is `{(i,j) : j − i ∈ {0, ±1}}`.
pub fn distance_one(sg: &StarredGroupoid) -> WSet {
    let g = sg.base();
    WSet::new(g.objects().flat_map(|x| {
        let e = g.ident(x);
        std::iter::once(e).chain(sg.neighbors(e))
    }))
}

/// The GGD document for a named fixture, with the optional sections the
/// bundled files carry: `W` for P6, L3P and P2, and local morphisms
/// `L3P → P3` (label-preserving), `P6 → P6` and `P2 → P2` (inclusions).
pub fn document(name: &str) -> Option<GgdDocument> {
    let sg = by_name(name)?;
    let mut doc = GgdDocument::from_starred(&sg);
    let g = sg.base();
    let names = |w: &WSet| -> Vec<String> { w.iter().map(|m| g.mor_name(m).to_string()).collect() };
    match name {
        "P6" | "L3P" => {
            let w = distance_one(&sg);
            doc.w = Some(names(&w));
            let target = if name == "L3P" { "P3.ggd" } else { "P6.ggd" };
            doc.local_morphism = Some(LocalSpec {
                target: target.to_string(),
                pairs: names(&w).into_iter().map(|u| (u.clone(), u)).collect(),
            });
        }
        "P2" => {
            let w = WSet::full(g);
            doc.w = Some(names(&w));
            doc.local_morphism = Some(LocalSpec {
                target: "P2.ggd".to_string(),
                pairs: names(&w).into_iter().map(|u| (u.clone(), u)).collect(),
            });
        }
        _ => {}
    }
    Some(doc)
}
