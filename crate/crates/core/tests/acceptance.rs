//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Expected values come from small oracles written here against names and
//! integers only (winding numbers, displacement counts, string-keyed
//! tables), never from the library's own answers.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

type Criterion = fn() -> Result<String, String>;

use groupoids::fixtures;
use groupoids::ggd::GgdDocument;
use groupoids::monodromy::{check_product, MonMor};
use groupoids::principle::{uniqueness_check, words_over};
use groupoids::sections::{check_extendibility, enumerate_sections, holonomy, Germ};
use groupoids::{
    EdgePath, Error, Extension, LocalMorphism, Monodromy, Presentation, Rule, StarredGroupoid,
    TieBreak, WSet, Word,
};

// ---------------------------------------------------------------- oracles

type Table = HashMap<(String, String), String>;

/// Axiom check over the raw document, keyed by names.
fn oracle_valid(doc: &GgdDocument) -> bool {
    let src: HashMap<&str, &str> = doc.morphisms.iter().map(|(m, s, _)| (m.as_str(), s.as_str())).collect();
    let tgt: HashMap<&str, &str> = doc.morphisms.iter().map(|(m, _, t)| (m.as_str(), t.as_str())).collect();
    let ident: HashMap<&str, &str> = doc.identities.iter().map(|(m, x)| (x.as_str(), m.as_str())).collect();
    let comp: Table = doc
        .compose
        .iter()
        .map(|(g, h, k)| ((g.clone(), h.clone()), k.clone()))
        .collect();
    let mors: Vec<&str> = doc.morphisms.iter().map(|m| m.0.as_str()).collect();
    let c = |g: &str, h: &str| comp.get(&(g.to_string(), h.to_string())).cloned();

    for x in &doc.objects {
        let Some(e) = ident.get(x.as_str()) else { return false };
        if src[e] != x || tgt[e] != x {
            return false;
        }
    }
    for &g in &mors {
        for &h in &mors {
            let composable = tgt[g] == src[h];
            match c(g, h) {
                None if composable => return false,
                Some(_) if !composable => return false,
                Some(k) if src[k.as_str()] != src[g] || tgt[k.as_str()] != tgt[h] => return false,
                _ => {}
            }
        }
        if c(ident[src[g]], g).as_deref() != Some(g) || c(g, ident[tgt[g]]).as_deref() != Some(g) {
            return false;
        }
        if !mors.iter().any(|&k| c(g, k).as_deref() == Some(ident[src[g]]) && c(k, g).as_deref() == Some(ident[tgt[g]])) {
            return false;
        }
    }
    for &a in &mors {
        for &b in &mors {
            for &d in &mors {
                if let (Some(ab), Some(bd)) = (c(a, b), c(b, d)) {
                    if c(&ab, d) != c(a, &bd) {
                        return false;
                    }
                }
            }
        }
    }

    // star edges are preserved by every left translation
    let edges: BTreeSet<(String, String)> = doc
        .star_edges
        .iter()
        .flat_map(|(_, a, b)| [(a.clone(), b.clone()), (b.clone(), a.clone())])
        .collect();
    for &t in &mors {
        for (a, b) in &edges {
            if src[a.as_str()] != tgt[t] {
                continue;
            }
            let (ta, tb) = (c(t, a).unwrap(), c(t, b).unwrap());
            if !edges.contains(&(ta, tb)) {
                return false;
            }
        }
    }

    let (Some(op), Some(unit), Some(mp)) = (&doc.object_product, &doc.object_unit, &doc.morphism_product) else {
        return true;
    };
    let omul: Table = op.iter().map(|(a, b, k)| ((a.clone(), b.clone()), k.clone())).collect();
    let mmul: Table = mp.iter().map(|(a, b, k)| ((a.clone(), b.clone()), k.clone())).collect();
    let group_ok = |elems: Vec<&str>, mul: &Table, unit: &str| -> bool {
        let m = |a: &str, b: &str| mul.get(&(a.to_string(), b.to_string())).cloned();
        elems.iter().all(|&a| {
            m(a, unit).as_deref() == Some(a)
                && m(unit, a).as_deref() == Some(a)
                && elems.iter().any(|&b| m(a, b).as_deref() == Some(unit))
                && elems.iter().all(|&b| {
                    elems.iter().all(|&d| match (m(a, b), m(b, d)) {
                        (Some(ab), Some(bd)) => m(&ab, d) == m(a, &bd) && m(&ab, d).is_some(),
                        _ => false,
                    })
                })
        })
    };
    let objs: Vec<&str> = doc.objects.iter().map(String::as_str).collect();
    if !group_ok(objs, &omul, unit) || !group_ok(mors.clone(), &mmul, ident[unit.as_str()]) {
        return false;
    }
    let om = |a: &str, b: &str| omul[&(a.to_string(), b.to_string())].clone();
    let mm = |a: &str, b: &str| mmul[&(a.to_string(), b.to_string())].clone();
    for &g in &mors {
        for &h in &mors {
            let gh = mm(g, h);
            if src[gh.as_str()] != om(src[g], src[h]) || tgt[gh.as_str()] != om(tgt[g], tgt[h]) {
                return false;
            }
        }
    }
    for x in &doc.objects {
        for y in &doc.objects {
            if mm(ident[x.as_str()], ident[y.as_str()]) != ident[om(x, y).as_str()] {
                return false;
            }
        }
    }
    // interchange (gh)∘(kl) = (g∘k)(h∘l)
    for &g in &mors {
        for &k in &mors {
            let Some(gk) = c(g, k) else { continue };
            for &h in &mors {
                for &l in &mors {
                    let Some(hl) = c(h, l) else { continue };
                    if c(&mm(g, h), &mm(k, l)) != Some(mm(&gk, &hl)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Reduced paths of length ≤ L from vertex 0 in the n-cycle, by brute
/// force over all ±1 step sequences.
fn cycle_reduced_paths(n: i64, max_len: usize) -> usize {
    let mut count = 0;
    for len in 0..=max_len {
        for bits in 0..(1u32 << len) {
            let steps: Vec<i64> = (0..len).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect();
            let mut verts = vec![0i64];
            for s in &steps {
                verts.push((verts.last().unwrap() + s).rem_euclid(n));
            }
            if verts.windows(3).all(|w| w[0] != w[2]) {
                count += 1;
            }
        }
    }
    count
}

/// The element of Mon(C_nG) winding `k` times one step around the cycle.
fn winding(mon: &Monodromy<'_>, sg: &StarredGroupoid, n: i64, k: i64) -> MonMor {
    let g = sg.base();
    let verts: Vec<_> = (0..=k.abs())
        .map(|i| g.morphism(&(i * k.signum()).rem_euclid(n).to_string()).unwrap())
        .collect();
    mon.element(EdgePath::from_vertices(&verts).unwrap()).unwrap()
}

fn net_winding(g: &groupoids::Groupoid, a: &MonMor, n: i64) -> i64 {
    let names: Vec<i64> = a.path().vertices().map(|v| g.mor_name(v).parse().unwrap()).collect();
    names
        .windows(2)
        .map(|w| if (w[0] + 1).rem_euclid(n) == w[1] { 1 } else { -1 })
        .sum()
}

/// Net displacement of a P6 word with letters `(i,i±1)`.
fn displacement(g: &groupoids::Groupoid, w: &Word) -> i64 {
    w.letters()
        .iter()
        .map(|&u| {
            let name = g.mor_name(u);
            let (a, b) = name[1..name.len() - 1].split_once(',').unwrap();
            let (a, b): (i64, i64) = (a.parse().unwrap(), b.parse().unwrap());
            if (a + 1).rem_euclid(6) == b { 1 } else { -1 }
        })
        .sum()
}

/// `(i,j)` naming in pair groupoids: source and target objects.
fn pair_name(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

// ---------------------------------------------------------------- mutations

fn non_identities(doc: &GgdDocument) -> BTreeSet<String> {
    let ids: BTreeSet<&String> = doc.identities.iter().map(|(m, _)| m).collect();
    doc.morphisms
        .iter()
        .map(|m| m.0.clone())
        .filter(|m| !ids.contains(m))
        .collect()
}

fn mutations(name: &str) -> Vec<(&'static str, GgdDocument)> {
    let base = fixtures::document(name).unwrap();
    let plain = non_identities(&base);
    let nontrivial: Vec<usize> = base
        .compose
        .iter()
        .enumerate()
        .filter(|(_, (g, h, _))| plain.contains(g) && plain.contains(h))
        .map(|(i, _)| i)
        .collect();
    let mut out = Vec::new();

    let mut d = base.clone();
    let (g, h, k) = d.compose[nontrivial[0]].clone();
    d.compose[nontrivial[0]].2 = if g != k { g } else { h };
    out.push(("comp_rewire", d));

    let mut d = base.clone();
    d.compose.remove(nontrivial[0]);
    out.push(("comp_delete", d));

    let mut d = base.clone();
    let i = nontrivial[0];
    let j = *nontrivial.iter().find(|&&j| d.compose[j].2 != d.compose[i].2).unwrap();
    let (ki, kj) = (d.compose[i].2.clone(), d.compose[j].2.clone());
    d.compose[i].2 = kj;
    d.compose[j].2 = ki;
    out.push(("comp_swap", d));

    let mut d = base.clone();
    let (e, x) = d.identities[0].clone();
    let slot = d
        .compose
        .iter()
        .position(|(a, b, _)| *a == e && plain.contains(b))
        .unwrap();
    d.compose[slot].2 = e.clone();
    out.push(("identity_comp_rewire", d));

    let mut d = base.clone();
    let other = d
        .morphisms
        .iter()
        .find(|(m, s, _)| *s == x && plain.contains(m))
        .unwrap()
        .0
        .clone();
    d.identities[0].0 = other;
    out.push(("identity_rewire", d));

    let mut d = base.clone();
    if let Some(mp) = d.morphism_product.as_mut() {
        let slot = mp
            .iter()
            .position(|(a, b, _)| plain.contains(a) && plain.contains(b))
            .unwrap();
        let k = mp[slot].2.clone();
        mp[slot].2 = base.morphisms.iter().find(|m| m.0 != k).unwrap().0.clone();
        out.push(("mor_mul_rewire", d));
    } else {
        d.star_edges.remove(0);
        out.push(("star_edge_remove", d));
    }
    out
}

// ---------------------------------------------------------------- criteria

fn c1_axioms() -> Result<String, String> {
    let mut caught = 0;
    for name in fixtures::NAMES {
        let doc = fixtures::document(name).unwrap();
        if !oracle_valid(&doc) {
            return Err(format!("oracle rejects fixture {name}"));
        }
        doc.load().map_err(|e| format!("{name}: {e}"))?;
        for (kind, m) in mutations(name) {
            if oracle_valid(&m) {
                return Err(format!("{name}/{kind}: oracle accepts the mutation"));
            }
            match m.load() {
                Err(Error::Invalid(r)) if r.violations.iter().any(|v| !v.witnesses.is_empty()) => caught += 1,
                Err(Error::Invalid(_)) => return Err(format!("{name}/{kind}: no witness")),
                Err(e) => return Err(format!("{name}/{kind}: unexpected error {e}")),
                Ok(_) => return Err(format!("{name}/{kind}: not caught")),
            }
        }
    }
    let gg = fixtures::p6().group_groupoid().unwrap();
    if !gg.validate().is_clean() {
        return Err("P6 interchange".into());
    }
    Ok(format!("6 fixtures clean, {caught}/36 mutations caught with witnesses"))
}

fn c2_fundamental_groupoid() -> Result<String, String> {
    let sg = fixtures::c3g();
    let mon = Monodromy::new(&sg);
    let o = sg.base().object("o").unwrap();
    let expected = cycle_reduced_paths(3, 6);
    let got = mon.enumerate(o, 6).len();
    if expected != 13 || got != expected {
        return Err(format!("C3G ball: oracle {expected}, library {got}"));
    }
    let sg = fixtures::l3p();
    let mon = Monodromy::new(&sg);
    for x in sg.base().objects() {
        for bound in [2, 3, 6, 10] {
            let n = mon.enumerate(x, bound).len();
            if n != 3 {
                return Err(format!("L3P star at bound {bound}: {n}"));
            }
        }
    }
    Ok("C3G: 13 elements at L=6; L3P: 3 elements at L in {2,3,6,10}".into())
}

fn c3_universal_cover() -> Result<String, String> {
    let mut checked = 0;
    for (sg, n) in [(fixtures::c3g(), 3i64), (fixtures::c6g(), 6)] {
        let mon = Monodromy::new(&sg);
        let g = sg.base();
        for a in -3..=3 {
            let wa = winding(&mon, &sg, n, a);
            if net_winding(g, &wa, n) != a {
                return Err(format!("winding {a} misbuilt"));
            }
            if g.mor_name(mon.project(&wa)) != a.rem_euclid(n).to_string() {
                return Err(format!("p({a}) in C{n}"));
            }
            for b in -3..=3 {
                let wb = winding(&mon, &sg, n, b);
                let c = mon.compose(&wa, &wb).unwrap();
                let m = mon.group_mul(&wa, &wb).unwrap();
                if net_winding(g, &c, n) != a + b || net_winding(g, &m, n) != a + b {
                    return Err(format!("C{n}: {a} + {b}"));
                }
                if c != winding(&mon, &sg, n, a + b) {
                    return Err(format!("C{n}: {a} • {b} not canonical"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs: • and group product add windings, p reduces mod n"))
}

fn c4_covering() -> Result<String, String> {
    let mut elements = 0;
    for sg in fixtures::all() {
        let mon = Monodromy::new(&sg);
        let g = sg.base();
        for x in g.objects() {
            let ball = mon.enumerate(x, 6);
            let set: BTreeSet<&MonMor> = ball.iter().collect();
            if set.len() != ball.len() {
                return Err("duplicate elements".into());
            }
            // every element is a reduced path, so no closed reduced path
            // returns to the root; the prefix graph is then a tree
            let mut edges = 0;
            for a in &ball {
                let v: Vec<_> = a.path().vertices().collect();
                if v.windows(3).any(|w| w[0] == w[2]) || v.windows(2).any(|w| w[0] == w[1]) {
                    return Err(format!("unreduced element at {}", g.obj_name(x)));
                }
                if v.len() > 1 {
                    let parent = EdgePath::from_vertices(&v[..v.len() - 1]).unwrap();
                    if !set.contains(&mon.element(parent).unwrap()) {
                        return Err("ball not prefix closed".into());
                    }
                    edges += 1;
                }
                if a.len() < 6 {
                    for nb in sg.neighbors(mon.project(a)) {
                        if mon.lifts(a, nb).len() != 1 {
                            return Err("lift is not unique".into());
                        }
                    }
                }
            }
            if edges + 1 != ball.len() {
                return Err("ball is not a tree".into());
            }
            elements += ball.len();
        }
    }
    Ok(format!("{elements} elements over all stars, unique lifts everywhere"))
}

fn c5_products() -> Result<String, String> {
    let mut total = 0;
    for (a, b) in [(fixtures::c3g(), fixtures::c3g()), (fixtures::p2(), fixtures::p2())] {
        let prod = StarredGroupoid::product(&a, &b);
        let (count, report) = check_product(&prod, 3).map_err(|e| e.to_string())?;
        if !report.is_clean() {
            return Err(report.to_string());
        }
        // oracle count: product of factor ball sizes, per object pair
        let (ma, mb) = (Monodromy::new(&a), Monodromy::new(&b));
        let expected: usize = a
            .base()
            .objects()
            .flat_map(|x| b.base().objects().map(move |y| (x, y)))
            .map(|(x, y)| ma.enumerate(x, 3).len() * mb.enumerate(y, 3).len())
            .sum();
        if count != expected {
            return Err(format!("split domain {count} vs {expected}"));
        }
        total += count;
    }
    // C3G×C3G by windings: (a1,a2)•(b1,b2) = (a1+b1, a2+b2)
    let c3 = fixtures::c3g();
    let prod = StarredGroupoid::product(&c3, &c3);
    let (m, m1) = (Monodromy::new(&prod), Monodromy::new(&c3));
    for (a1, a2, b1, b2) in [(1, 2, -3, 1), (3, -1, -2, -2), (-1, 0, 2, 3)] {
        let pa = m.join(&winding(&m1, &c3, 3, a1), &winding(&m1, &c3, 3, a2)).unwrap();
        let pb = m.join(&winding(&m1, &c3, 3, b1), &winding(&m1, &c3, 3, b2)).unwrap();
        let (s1, s2) = m.split(&m.compose(&pa, &pb).unwrap()).unwrap();
        let g = c3.base();
        if (net_winding(g, &s1, 3), net_winding(g, &s2, 3)) != (a1 + b1, a2 + b2) {
            return Err("product windings".into());
        }
    }
    Ok(format!("{total} product elements, split bijective, •/·/inverse preserved"))
}

fn c6_presentation() -> Result<String, String> {
    let sg = fixtures::p6();
    let g = sg.base();
    let w = fixtures::distance_one(&sg);
    // oracle: W is {(i,j) : j − i ∈ {0, ±1} mod 6}
    let oracle_w: BTreeSet<String> = (0..6)
        .flat_map(|i: i64| [0, 1, -1].map(move |d| pair_name(&i.to_string(), &(i + d).rem_euclid(6).to_string())))
        .collect();
    let lib_w: BTreeSet<String> = w.iter().map(|m| g.mor_name(m).to_string()).collect();
    if oracle_w != lib_w {
        return Err("W differs from the distance-one set".into());
    }
    let pres = Presentation::new(&sg, w.clone(), None).map_err(|e| e.to_string())?;
    let words = pres.all_words(4);
    for word in &words {
        if !pres.equal(word, &pres.fold(word)).unwrap() {
            return Err(format!("fold changes {}", word.display(g)));
        }
    }
    // equality agrees with displacement on short words from 0
    let x0 = g.object("0").unwrap();
    let short = pres.words(x0, 3);
    for a in &short {
        for b in &short {
            let same = displacement(g, a) == displacement(g, b);
            if pres.equal(a, b).unwrap() != same {
                return Err(format!("{} vs {}", a.display(g), b.display(g)));
            }
        }
    }
    let letters: Vec<_> = (0..6)
        .map(|i| g.morphism(&pair_name(&i.to_string(), &((i + 1) % 6).to_string())).unwrap())
        .collect();
    let lp = Word::new(g, x0, letters).unwrap();
    let image = pres.to_mon(&lp).unwrap();
    if pres.equal(&lp, &Word::empty(x0)).unwrap() || !g.is_identity(pres.monodromy().project(&image)) {
        return Err("loop word".into());
    }
    let p3 = fixtures::p3();
    match Presentation::new(&p3, fixtures::distance_one(&p3), None) {
        Err(Error::Hypotheses(r)) if r.violations.iter().any(|v| v.rule == Rule::VTree && v.witnesses.len() == 3) => {}
        _ => return Err("P3 not rejected with a cycle witness".into()),
    }
    Ok(format!("{} words checked, loop winds once, P3 rejected with a 3-cycle", words.len()))
}

fn c7_principle() -> Result<String, String> {
    let (g_sg, h_sg) = (fixtures::l3p(), fixtures::p3());
    let g = g_sg.base();
    let w = fixtures::distance_one(&g_sg);
    let pairs: Vec<(String, String)> = w
        .iter()
        .map(|u| (g.mor_name(u).to_string(), g.mor_name(u).to_string()))
        .collect();
    let f = LocalMorphism::from_names(&g_sg, &h_sg, w.clone(), &pairs).unwrap();
    let weak = Extension::weak(&f, None).map_err(|e| e.to_string())?;
    let pres = weak.presentation().unwrap();
    let h = h_sg.base();
    let words = pres.all_words(4);
    for a in &words {
        // oracle: in the pair groupoid the value is (source, target)
        let want = pair_name(g.obj_name(a.source()), g.obj_name(a.target(g)));
        if h.mor_name(weak.on_word(a).unwrap()) != want {
            return Err(format!("f~{} ≠ {want}", a.display(g)));
        }
        for b in &words {
            if a.source() == b.source() && pres.equal(a, b).unwrap() && weak.on_word(a) != weak.on_word(b) {
                return Err("not well defined".into());
            }
            if b.source() == a.target(g) {
                let ab = a.concat(g, b).unwrap();
                let lhs = weak.on_word(&ab).unwrap();
                let rhs = h.compose(weak.on_word(a).unwrap(), weak.on_word(b).unwrap()).unwrap();
                if lhs != rhs {
                    return Err("not a morphism".into());
                }
            }
        }
    }
    for u in w.iter() {
        let single = Word::new(g, g.src(u), vec![u]).unwrap();
        if weak.on_word(&single).unwrap() != f.get(u).unwrap() && !g.is_identity(u) {
            return Err("disagrees with f on W".into());
        }
    }
    let lex = Extension::strong(&f, TieBreak::Lexicographic).map_err(|e| e.to_string())?;
    let rev = Extension::strong(&f, TieBreak::ReverseLexicographic).map_err(|e| e.to_string())?;
    for m in g.morphisms() {
        let (a, b) = (lex.on_morphism(m).unwrap(), rev.on_morphism(m).unwrap());
        let via_weak = weak.on_word(&lex.factorize(m).unwrap()).unwrap();
        if a != b || a != via_weak {
            return Err(format!("strong forms disagree at {}", g.mor_name(m)));
        }
    }
    let witness = uniqueness_check(
        &g_sg,
        &w,
        |word| lex.on_morphism(word.evaluate(g)?),
        |word| rev.on_morphism(word.evaluate(g)?),
        4,
    )
    .unwrap();
    if witness.is_some() {
        return Err("tie-break variants differ".into());
    }

    let p2 = fixtures::p2();
    let full = WSet::full(p2.base());
    let incl = LocalMorphism::inclusion(&p2, full.clone());
    let ext = Extension::weak(&incl, None).map_err(|e| e.to_string())?;
    let short = words_over(&p2, &full, 2);
    let samples: Vec<(Word, Word)> = short
        .iter()
        .flat_map(|a| short.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let report = ext.check_group_morphism(&samples).map_err(|e| e.to_string())?;
    if !report.is_clean() {
        return Err(report.to_string());
    }

    let p6 = fixtures::p6();
    let incl = LocalMorphism::inclusion(&p6, fixtures::distance_one(&p6));
    let ext = Extension::weak(&incl, None).map_err(|e| e.to_string())?;
    match ext.check_group_morphism(&[]) {
        Err(Error::NotSubgroup { u, v, product }) if (u.as_str(), v.as_str(), product.as_str()) == ("(0,1)", "(0,1)", "(0,2)") => {}
        other => return Err(format!("P6 subgroup refusal: {other:?}")),
    }
    Ok(format!(
        "{} L3P words, tie-breaks agree, P2 {} pairs pass, P6 refused at (0,1)(0,1)=(0,2)",
        words.len(),
        samples.len()
    ))
}

fn c8_sections() -> Result<String, String> {
    let mut count = 0;
    for sg in [fixtures::l3p(), fixtures::p3()] {
        let g = sg.base();
        let all = enumerate_sections(g, 2);
        count += all.len();
        for s in &all {
            if s.mul(g, &s.inverse(g)).mul(g, s) != *s {
                return Err(format!("s s⁻¹ s ≠ s for {}", s.display(g)));
            }
        }
        let idem: Vec<_> = all.iter().filter(|s| s.mul(g, s) == **s).collect();
        // oracle: idempotents are exactly the identity-valued sections
        if idem.iter().any(|s| s.values().any(|(_, m)| !g.is_identity(m))) {
            return Err("non-identity idempotent".into());
        }
        for e in &idem {
            for f in &idem {
                if e.mul(g, f) != f.mul(g, e) {
                    return Err("idempotents do not commute".into());
                }
            }
        }
        let germs: Vec<Germ> = g.morphisms().map(|m| Germ { at: g.src(m), value: m }).collect();
        for a in &germs {
            for b in &germs {
                if let Some(ab) = a.product(g, b) {
                    if Some(ab.psi()) != g.composite(a.psi(), b.psi()) {
                        return Err("ψ is not a morphism".into());
                    }
                }
            }
        }
        let report = check_extendibility(g, &fixtures::distance_one(&sg), 3);
        if !report.is_clean() {
            return Err(report.to_string());
        }
    }
    for sg in fixtures::all() {
        let g = sg.base();
        let w = fixtures::distance_one(&sg);
        let hol = holonomy(g, &w).map_err(|e| e.to_string())?;
        // oracle: distance-one sets generate each connected fixture
        if hol.groupoid.num_morphisms() != g.num_morphisms() || !hol.is_iso_onto_generated(g, &w) || !hol.kernel_normal {
            return Err("Hol ≇ ⟨W⟩".into());
        }
        let ids = holonomy(g, &WSet::identities(g)).map_err(|e| e.to_string())?;
        if ids.groupoid.num_morphisms() != g.num_objects() {
            return Err("identities-only holonomy is not discrete".into());
        }
    }
    Ok(format!("{count} sections, ψ a morphism, Hol ≅ ⟨W⟩ on 6 fixtures, extendibility passes"))
}

// ---------------------------------------------------------------- CLI session

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn session_steps(scratch: &Path) -> Vec<(Vec<String>, i32)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let loop6 = "[(0,1),(1,2),(2,3),(3,4),(4,5),(5,0)]";
    let p3w = scratch.join("P3W.ggd").display().to_string();
    let torn = scratch.join("torn.ggd").display().to_string();
    vec![
        (s(&["validate", "fixtures/P6.ggd"]), 0),
        (s(&["validate", "fixtures/broken.ggd"]), 1),
        (s(&["validate", &torn]), 2),
        (s(&["validate", "fixtures/absent.ggd"]), 2),
        (s(&["mon", "fixtures/C3G.ggd", "--object", "o", "--max-len", "6"]), 0),
        (s(&["mon", "fixtures/C3G.ggd", "--object", "o"]), 2),
        (s(&["mon-compose", "fixtures/C3G.ggd", "--a", "[0,1,2]", "--b", "[0,1,2,0]"]), 0),
        (s(&["mon-compose", "fixtures/P2.ggd", "--a", "[(0,0),(0,1)]", "--b", "[(0,0)]"]), 1),
        (s(&["mon-compose", "fixtures/C3G.ggd", "--a", "[1,2]", "--b", "[0]"]), 2),
        (s(&["mgw-eq", "fixtures/P6.ggd", "--w1", loop6, "--w2", "[@0]"]), 1),
        (s(&["mgw-eq", "fixtures/P6.ggd", "--w1", "[(0,1),(1,0),(0,5)]", "--w2", "[(0,5)]"]), 0),
        (s(&["mgw-eq", &p3w, "--w1", "[(0,1)]", "--w2", "[(0,1)]"]), 1),
        (s(&["mgw-eq", "fixtures/P6.ggd", "--w1", "[(0,1),(2,3)]", "--w2", "[@0]"]), 2),
        (s(&["extend", "fixtures/L3P.ggd", "--target", "fixtures/P3.ggd", "--word", "[(0,1),(1,2)]"]), 0),
        (s(&["extend", "fixtures/L3P.ggd", "--morphism", "(0,2)"]), 0),
        (s(&["extend", "fixtures/P6.ggd", "--morphism", "(0,3)"]), 1),
        (s(&["product-check", "fixtures/C3G.ggd", "fixtures/C3G.ggd", "--max-len", "3"]), 0),
        (s(&["product-check", "fixtures/P2.ggd", "fixtures/P2.ggd", "--max-len", "3"]), 0),
        (s(&["holonomy", "fixtures/L3P.ggd"]), 0),
        (s(&["sections", "fixtures/L3P.ggd", "--max-domain", "2"]), 0),
        (s(&["frobnicate"]), 2),
    ]
}

fn run_session(scratch: &Path) -> Result<String, String> {
    let mut transcript = String::new();
    for (args, want) in session_steps(scratch) {
        let out = Command::new(env!("CARGO_BIN_EXE_ggd"))
            .args(&args)
            .current_dir(crate_dir())
            .output()
            .map_err(|e| e.to_string())?;
        let code = out.status.code().unwrap_or(-1);
        let shown: Vec<String> = args
            .iter()
            .map(|a| a.replace(&scratch.display().to_string(), "$SCRATCH"))
            .collect();
        let text = String::from_utf8_lossy(&out.stdout).replace(&scratch.display().to_string(), "$SCRATCH");
        transcript.push_str(&format!("$ ggd {}\n{}[exit {}]\n", shown.join(" "), text, code));
        if code != want {
            return Err(format!("`ggd {}` exited {code}, expected {want}\n{text}", shown.join(" ")));
        }
    }
    Ok(transcript)
}

fn c9_cli() -> Result<String, String> {
    for name in fixtures::NAMES {
        let text = std::fs::read_to_string(crate_dir().join(format!("fixtures/{name}.ggd"))).unwrap();
        let doc = GgdDocument::parse(&text).map_err(|e| e.to_string())?;
        if doc.emit() != text || GgdDocument::parse(&doc.emit()).unwrap() != doc {
            return Err(format!("{name} does not round-trip"));
        }
    }
    let scratch = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&scratch).unwrap();
    let mut p3 = fixtures::document("P3").unwrap();
    p3.w = Some(
        fixtures::distance_one(&fixtures::p3())
            .iter()
            .map(|m| fixtures::p3().base().mor_name(m).to_string())
            .collect(),
    );
    std::fs::write(scratch.join("P3W.ggd"), p3.emit()).unwrap();
    let torn = fixtures::document("C3G").unwrap().emit().replace("[identities]\n0 o\n", "");
    std::fs::write(scratch.join("torn.ggd"), torn).unwrap();

    let first = run_session(&scratch)?;
    let second = run_session(&scratch)?;
    if first != second {
        return Err("output is not byte-stable".into());
    }
    let golden = crate_dir().join("tests/cli_session.txt");
    if std::env::var_os("GGD_BLESS").is_some() {
        std::fs::write(&golden, &first).unwrap();
    }
    let expected = std::fs::read_to_string(&golden).unwrap_or_default();
    if expected != first {
        return Err("transcript differs from tests/cli_session.txt (GGD_BLESS=1 regenerates)".into());
    }
    for needle in ["13 elements", "distinct: winding detected", "v-tree", "(0,2)"] {
        if !first.contains(needle) {
            return Err(format!("transcript lacks `{needle}`"));
        }
    }
    Ok(format!("6 files round-trip, {} commands reproduce their exit codes", session_steps(&scratch).len()))
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("axioms and interchange", c1_axioms),
        ("fundamental groupoid identification", c2_fundamental_groupoid),
        ("universal covering group", c3_universal_cover),
        ("tree and covering property", c4_covering),
        ("product theorem", c5_products),
        ("M(G,W) oracle", c6_presentation),
        ("monodromy principle", c7_principle),
        ("inverse semigroup and holonomy", c8_sections),
        ("CLI contract", c9_cli),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria pass");
}
