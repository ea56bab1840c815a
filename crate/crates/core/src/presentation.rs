//! The presented groupoid `M(G,W) = F(W)/N`, where `F(W)` is the free
//! groupoid on `W` and `N` is normally generated by `[uv]⁻¹[u][v]` for
//! `u, v, u∘v ∈ W`.
//!
//! Rewriting with `[u][v] → [uv]` is not confluent, so equality is decided
//! by the isomorphism `μ: M(G,W) → Mon(G)`: each letter `u` goes to the
//! unique reduced path from `ε(α(u))` to `u` inside the tree `V_{α(u)}`,
//! and a word goes to the `•`-product of its letters. This is only valid
//! under the covering hypotheses, which [`check_hypotheses`] verifies and
//! [`Presentation::new`] enforces.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, Mor, Obj};
use crate::monodromy::{MonMor, Monodromy};
use crate::report::{Report, Rule};
use crate::star::{EdgePath, StarredGroupoid};

/// A subset of the morphisms of an ambient groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WSet {
    members: BTreeSet<Mor>,
}

impl WSet {
    pub fn new(members: impl IntoIterator<Item = Mor>) -> Self {
        Self {
            members: members.into_iter().collect(),
        }
    }

    pub fn from_names<S: AsRef<str>>(g: &Groupoid, names: &[S]) -> Result<Self> {
        Ok(Self::new(
            names
                .iter()
                .map(|n| g.morphism(n.as_ref()))
                .collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn full(g: &Groupoid) -> Self {
        Self::new(g.morphisms())
    }

    pub fn identities(g: &Groupoid) -> Self {
        Self::new(g.objects().map(|x| g.ident(x)))
    }

    pub fn contains(&self, g: Mor) -> bool {
        self.members.contains(&g)
    }

    pub fn iter(&self) -> impl Iterator<Item = Mor> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &WSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &WSet) -> WSet {
        Self::new(self.members.union(&other.members).copied())
    }

    /// `W_x = W ∩ α⁻¹(x)`.
    pub fn star(&self, g: &Groupoid, x: Obj) -> Vec<Mor> {
        g.star_members(x)
            .iter()
            .copied()
            .filter(|&m| self.contains(m))
            .collect()
    }

    /// `W² = {u∘v : u, v ∈ W composable}`.
    pub fn square(&self, g: &Groupoid) -> WSet {
        let mut out = BTreeSet::new();
        for u in self.iter() {
            for v in self.iter() {
                if let Some(k) = g.composite(u, v) {
                    out.insert(k);
                }
            }
        }
        WSet { members: out }
    }
}

/// Vertices of the subgraph of star(x) induced on `subset`, reachable from
/// `root`, with BFS parents (neighbours scanned in name order).
fn induced_bfs(sg: &StarredGroupoid, subset: &WSet, root: Mor) -> HashMap<Mor, Option<Mor>> {
    let mut parent = HashMap::from([(root, None)]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for v in sg.neighbors(u) {
            if subset.contains(v) && !parent.contains_key(&v) {
                parent.insert(v, Some(u));
                queue.push_back(v);
            }
        }
    }
    parent
}

/// A cycle inside the subgraph of star(x) induced on `subset`, if any.
fn induced_cycle(sg: &StarredGroupoid, subset: &[Mor]) -> Option<Vec<Mor>> {
    let inside: BTreeSet<Mor> = subset.iter().copied().collect();
    let mut parent: HashMap<Mor, Option<Mor>> = HashMap::new();
    for &root in subset {
        if parent.contains_key(&root) {
            continue;
        }
        parent.insert(root, None);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for v in sg.neighbors(u) {
                if !inside.contains(&v) || parent[&u] == Some(v) {
                    continue;
                }
                if parent.contains_key(&v) {
                    // close the cycle through the lowest common ancestor
                    let chain = |mut a: Mor| {
                        let mut out = vec![a];
                        while let Some(p) = parent[&a] {
                            out.push(p);
                            a = p;
                        }
                        out
                    };
                    let (cu, cv) = (chain(u), chain(v));
                    let common = cu.iter().find(|m| cv.contains(m)).copied()?;
                    let mut cycle: Vec<Mor> = cu.iter().copied().take_while(|&m| m != common).collect();
                    cycle.push(common);
                    let back: Vec<Mor> = cv.iter().copied().take_while(|&m| m != common).collect();
                    cycle.extend(back.into_iter().rev());
                    return Some(cycle);
                }
                parent.insert(v, Some(u));
                stack.push(v);
            }
        }
    }
    None
}

/// Checks the covering hypotheses for `(G, W)` with `V` (default `W ∪ W²`):
/// every star is connected; `W` contains the identities, is closed under
/// inversion, generates `G`, and each `W_x` is a connected subgraph of
/// star(x) containing `ε(x)`; `W ∪ W² ⊆ V` and each `V_x` induces a tree
/// containing `ε(x)`.
pub fn check_hypotheses(sg: &StarredGroupoid, w: &WSet, v: Option<&WSet>) -> Report {
    let g = sg.base();
    let mut report = Report::new();
    let name = |m: Mor| g.mor_name(m).to_string();

    for (x, ok) in g.objects().zip(sg.star_connected()) {
        if !ok {
            report.push(
                Rule::StarConnected,
                [g.obj_name(x).to_string()],
                format!("star of {} is not connected", g.obj_name(x)),
            );
        }
    }
    for x in g.objects() {
        if !w.contains(g.ident(x)) {
            report.push(
                Rule::WIdentities,
                [g.obj_name(x).to_string()],
                format!("W misses the identity of {}", g.obj_name(x)),
            );
        }
    }
    for u in w.iter() {
        match g.inv(u) {
            Some(k) if w.contains(k) => {}
            _ => report.push(Rule::WInverse, [name(u)], format!("inverse of {} is not in W", name(u))),
        }
    }
    for x in g.objects() {
        let reach = induced_bfs(sg, w, g.ident(x));
        if let Some(&stray) = w.star(g, x).iter().find(|m| !reach.contains_key(m)) {
            report.push(
                Rule::WConnected,
                [g.obj_name(x).to_string(), name(stray)],
                format!("{} is not connected to ε({}) inside W", name(stray), g.obj_name(x)),
            );
        }
    }
    if !g.subgroupoid_generated(w.iter()).generates {
        report.push(Rule::WGenerates, Vec::<String>::new(), "W does not generate G");
    }

    let needed = w.union(&w.square(g));
    let v = v.cloned().unwrap_or_else(|| needed.clone());
    for m in needed.iter().filter(|&m| !v.contains(m)) {
        report.push(Rule::VContainment, [name(m)], format!("{} ∈ W ∪ W² is missing from V", name(m)));
    }
    for x in g.objects() {
        let vx = v.star(g, x);
        let reach = induced_bfs(sg, &v, g.ident(x));
        if let Some(cycle) = induced_cycle(sg, &vx) {
            let names: Vec<String> = cycle.iter().map(|&m| name(m)).collect();
            report.push(
                Rule::VTree,
                names.clone(),
                format!("V_{} contains the cycle {}", g.obj_name(x), names.join("-")),
            );
        } else if vx.iter().any(|m| !reach.contains_key(m)) {
            report.push(
                Rule::VTree,
                [g.obj_name(x).to_string()],
                format!("V_{} is not connected", g.obj_name(x)),
            );
        }
    }
    report
}

/// An element of the free groupoid `F(W)`: a composable chain of
/// non-identity letters starting at `source`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    source: Obj,
    letters: Vec<Mor>,
}

impl Word {
    /// Checks the chain `β(lᵢ) = α(lᵢ₊₁)` and drops identity letters.
    pub fn new(g: &Groupoid, source: Obj, letters: Vec<Mor>) -> Result<Self> {
        let mut at = source;
        for &l in &letters {
            if g.src(l) != at {
                return Err(Error::InvalidWord(format!(
                    "letter {} does not start at {}",
                    g.mor_name(l),
                    g.obj_name(at)
                )));
            }
            at = g.tgt(l);
        }
        Ok(Self {
            source,
            letters: letters.into_iter().filter(|&l| !g.is_identity(l)).collect(),
        })
    }

    pub fn empty(source: Obj) -> Self {
        Self {
            source,
            letters: Vec::new(),
        }
    }

    pub fn source(&self) -> Obj {
        self.source
    }

    pub fn target(&self, g: &Groupoid) -> Obj {
        self.letters.last().map_or(self.source, |&l| g.tgt(l))
    }

    pub fn letters(&self) -> &[Mor] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, g: &Groupoid, other: &Word) -> Result<Word> {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        if other.source != self.target(g) {
            return Err(Error::InvalidWord("concatenated words do not meet".into()));
        }
        Word::new(g, self.source, letters)
    }

    /// The formal inverse: reversed letters, each inverted.
    pub fn inverse(&self, g: &Groupoid) -> Result<Word> {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|&l| g.inverse(l))
            .collect::<Result<Vec<_>>>()?;
        Word::new(g, self.target(g), letters)
    }

    /// Product of the letters in `G` (the identity for the empty word).
    pub fn evaluate(&self, g: &Groupoid) -> Result<Mor> {
        if self.letters.is_empty() {
            return Ok(g.ident(self.source));
        }
        g.compose_all(&self.letters)
    }

    pub fn display(&self, g: &Groupoid) -> String {
        if self.letters.is_empty() {
            return format!("[@{}]", g.obj_name(self.source));
        }
        let names: Vec<&str> = self.letters.iter().map(|&l| g.mor_name(l)).collect();
        format!("[{}]", names.join(","))
    }
}

/// Deletes adjacent inverse pairs `u, u⁻¹` until none remain.
pub fn free_reduce(g: &Groupoid, w: &Word) -> Word {
    let mut stack: Vec<Mor> = Vec::new();
    for &l in &w.letters {
        match stack.last() {
            Some(&top) if g.inv(top) == Some(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    Word {
        source: w.source,
        letters: stack,
    }
}

/// Greedy left-to-right merging of `u, v` into `u∘v` whenever `u∘v ∈ W` is
/// not an identity, followed by [`free_reduce`]. A normal-form heuristic;
/// equality must go through [`Presentation::equal`].
pub fn fold(g: &Groupoid, w_set: &WSet, w: &Word) -> Word {
    let mut out: Vec<Mor> = Vec::new();
    for &l in &w.letters {
        if let Some(&top) = out.last() {
            if let Some(k) = g.composite(top, l) {
                if w_set.contains(k) && !g.is_identity(k) {
                    *out.last_mut().unwrap() = k;
                    continue;
                }
            }
        }
        out.push(l);
    }
    free_reduce(
        g,
        &Word {
            source: w.source,
            letters: out,
        },
    )
}

/// `M(G,W)` with its equality oracle. Construction fails unless the
/// covering hypotheses hold.
#[derive(Debug, Clone)]
pub struct Presentation<'a> {
    sg: &'a StarredGroupoid,
    w: WSet,
    v: WSet,
    letter_paths: HashMap<Mor, EdgePath>,
}

impl<'a> Presentation<'a> {
    pub fn new(sg: &'a StarredGroupoid, w: WSet, v: Option<WSet>) -> Result<Self> {
        let report = check_hypotheses(sg, &w, v.as_ref());
        if !report.is_clean() {
            return Err(Error::Hypotheses(report));
        }
        let g = sg.base();
        let v = v.unwrap_or_else(|| w.union(&w.square(g)));
        let mut letter_paths = HashMap::new();
        for x in g.objects() {
            let parent = induced_bfs(sg, &v, g.ident(x));
            for u in w.star(g, x) {
                let mut chain = vec![u];
                let mut at = u;
                while let Some(Some(p)) = parent.get(&at) {
                    chain.push(*p);
                    at = *p;
                }
                chain.reverse();
                letter_paths.insert(u, EdgePath::from_vertices(&chain).expect("nonempty"));
            }
        }
        Ok(Self {
            sg,
            w,
            v,
            letter_paths,
        })
    }

    pub fn ambient(&self) -> &'a StarredGroupoid {
        self.sg
    }

    pub fn w(&self) -> &WSet {
        &self.w
    }

    pub fn v(&self) -> &WSet {
        &self.v
    }

    pub fn monodromy(&self) -> Monodromy<'a> {
        Monodromy::new(self.sg)
    }

    /// Builds a word over `W`, rejecting letters outside `W`.
    pub fn word(&self, source: Obj, letters: Vec<Mor>) -> Result<Word> {
        if let Some(&bad) = letters.iter().find(|&&l| !self.w.contains(l)) {
            return Err(Error::InvalidWord(format!(
                "letter {} is not in W",
                self.sg.base().mor_name(bad)
            )));
        }
        Word::new(self.sg.base(), source, letters)
    }

    /// The tree lift of a single letter.
    pub fn letter_image(&self, u: Mor) -> Result<MonMor> {
        let path = self.letter_paths.get(&u).ok_or_else(|| {
            Error::InvalidWord(format!("letter {} is not in W", self.sg.base().mor_name(u)))
        })?;
        self.monodromy().element(path.clone())
    }

    /// `μ(w)`: the `•`-product of the letter lifts.
    pub fn to_mon(&self, w: &Word) -> Result<MonMor> {
        let mon = self.monodromy();
        w.letters.iter().try_fold(mon.identity(w.source), |acc, &u| {
            mon.compose(&acc, &self.letter_image(u)?)
        })
    }

    /// Equality in `M(G,W)`.
    pub fn equal(&self, w1: &Word, w2: &Word) -> Result<bool> {
        if w1.source != w2.source {
            return Ok(false);
        }
        Ok(self.to_mon(w1)? == self.to_mon(w2)?)
    }

    pub fn fold(&self, w: &Word) -> Word {
        fold(self.sg.base(), &self.w, w)
    }

    /// Every word over `W` of length at most `max_len` starting at `x`, in
    /// lexicographic letter order.
    pub fn words(&self, x: Obj, max_len: usize) -> Vec<Word> {
        let g = self.sg.base();
        let mut out = Vec::new();
        let mut stack = vec![Word::empty(x)];
        while let Some(w) = stack.pop() {
            if w.len() < max_len {
                let at = w.target(g);
                for u in self.w.star(g, at).into_iter().rev() {
                    if !g.is_identity(u) {
                        let mut letters = w.letters.clone();
                        letters.push(u);
                        stack.push(Word {
                            source: x,
                            letters,
                        });
                    }
                }
            }
            out.push(w);
        }
        out
    }

    /// Words of length at most `max_len` from every object.
    pub fn all_words(&self, max_len: usize) -> Vec<Word> {
        self.sg
            .base()
            .objects()
            .flat_map(|x| self.words(x, max_len))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn word(g: &Groupoid, names: &[&str]) -> Word {
        let letters: Vec<Mor> = names.iter().map(|n| g.morphism(n).unwrap()).collect();
        Word::new(g, g.src(letters[0]), letters).unwrap()
    }

    #[test]
    fn p6_distance_one_passes() {
        let sg = fixtures::p6();
        let r = check_hypotheses(&sg, &fixtures::distance_one(&sg), None);
        assert!(r.is_clean(), "{r}");
    }

    #[test]
    fn p3_distance_one_has_a_cycle() {
        let sg = fixtures::p3();
        let r = check_hypotheses(&sg, &fixtures::distance_one(&sg), None);
        let cyc = r.violations.iter().find(|v| v.rule == Rule::VTree).unwrap();
        assert_eq!(cyc.witnesses.len(), 3);
        assert!(cyc.message.contains("V_0"));
    }

    #[test]
    fn missing_identity_is_named() {
        let sg = fixtures::p6();
        let g = sg.base();
        let w = fixtures::distance_one(&sg);
        let w = WSet::new(w.iter().filter(|&m| m != g.ident(g.object("3").unwrap())));
        let r = check_hypotheses(&sg, &w, None);
        let v = r.violations.iter().find(|v| v.rule == Rule::WIdentities).unwrap();
        assert_eq!(v.witnesses, vec!["3".to_string()]);
    }

    #[test]
    fn free_reduction() {
        let sg = fixtures::l3p();
        let g = sg.base();
        let w = word(g, &["(0,1)", "(1,0)"]);
        assert_eq!(free_reduce(g, &w), Word::empty(g.object("0").unwrap()));
        let w = word(g, &["(0,1)", "(1,2)", "(2,1)"]);
        assert_eq!(free_reduce(g, &w), word(g, &["(0,1)"]));
        let w = word(g, &["(0,1)", "(1,2)"]);
        assert_eq!(free_reduce(g, &w), w);
    }

    #[test]
    fn identity_letters_are_dropped() {
        let sg = fixtures::p6();
        let g = sg.base();
        let w = word(g, &["(0,1)", "(1,1)"]);
        assert_eq!(w.letters().len(), 1);
        assert_eq!(fold(g, &fixtures::distance_one(&sg), &w), word(g, &["(0,1)"]));
    }

    #[test]
    fn fold_examples() {
        let sg = fixtures::l3p();
        let g = sg.base();
        let w_set = fixtures::distance_one(&sg);
        let w = word(g, &["(0,1)", "(1,2)"]);
        assert_eq!(fold(g, &w_set, &w), w);

        let full = WSet::full(g);
        assert_eq!(fold(g, &full, &w), word(g, &["(0,2)"]));
    }

    #[test]
    fn mu_examples() {
        let sg = fixtures::p6();
        let g = sg.base();
        let pres = Presentation::new(&sg, fixtures::distance_one(&sg), None).unwrap();
        let x = g.object("0").unwrap();
        assert_eq!(pres.to_mon(&Word::empty(x)).unwrap(), pres.monodromy().identity(x));

        let lp = word(g, &["(0,1)", "(1,2)", "(2,3)", "(3,4)", "(4,5)", "(5,0)"]);
        let image = pres.to_mon(&lp).unwrap();
        assert_eq!(image.len(), 6);
        assert_eq!(g.mor_name(pres.monodromy().project(&image)), "(0,0)");
        assert!(!pres.equal(&lp, &Word::empty(x)).unwrap());
        assert_eq!(lp.evaluate(g).unwrap(), g.ident(x));

        let sg = fixtures::l3p();
        let g = sg.base();
        let pres = Presentation::new(&sg, fixtures::distance_one(&sg), None).unwrap();
        let image = pres.to_mon(&word(g, &["(0,1)", "(1,2)"])).unwrap();
        let names: Vec<&str> = image.path().vertices().map(|m| g.mor_name(m)).collect();
        assert_eq!(names, ["(0,0)", "(0,1)", "(0,2)"]);
    }

    #[test]
    fn mu_is_a_morphism_and_respects_relations() {
        let sg = fixtures::p6();
        let g = sg.base();
        let pres = Presentation::new(&sg, fixtures::distance_one(&sg), None).unwrap();
        let mon = pres.monodromy();
        let words = pres.all_words(3);
        for w1 in &words {
            for w2 in words.iter().filter(|w| w.source() == w1.target(g)) {
                let cat = w1.concat(g, w2).unwrap();
                assert_eq!(
                    pres.to_mon(&cat).unwrap(),
                    mon.compose(&pres.to_mon(w1).unwrap(), &pres.to_mon(w2).unwrap()).unwrap()
                );
            }
            assert_eq!(mon.project(&pres.to_mon(w1).unwrap()), w1.evaluate(g).unwrap());
        }
        for u in pres.w().iter() {
            for v in pres.w().iter() {
                let Some(k) = g.composite(u, v) else { continue };
                if !pres.w().contains(k) {
                    continue;
                }
                let two = pres.word(g.src(u), vec![u, v]).unwrap();
                let one = pres.word(g.src(u), vec![k]).unwrap();
                assert!(pres.equal(&two, &one).unwrap());
            }
        }
    }

    #[test]
    fn cancellation_is_invisible() {
        let sg = fixtures::p6();
        let g = sg.base();
        let pres = Presentation::new(&sg, fixtures::distance_one(&sg), None).unwrap();
        for w in pres.all_words(3) {
            let at = w.target(g);
            for u in pres.w().star(g, at) {
                let inv = g.inv(u).unwrap();
                let mut letters = w.letters().to_vec();
                letters.extend([u, inv]);
                let longer = Word::new(g, w.source(), letters).unwrap();
                assert!(pres.equal(&w, &longer).unwrap());
            }
        }
    }

    #[test]
    fn tree_stars_with_full_w_match_g() {
        let sg = fixtures::l3p();
        let g = sg.base();
        let pres = Presentation::new(&sg, WSet::full(g), None).unwrap();
        let words = pres.all_words(3);
        for a in &words {
            for b in words.iter().filter(|b| b.source() == a.source()) {
                assert_eq!(
                    pres.equal(a, b).unwrap(),
                    a.evaluate(g).unwrap() == b.evaluate(g).unwrap()
                );
            }
        }
    }

    #[test]
    fn refuses_without_hypotheses() {
        let sg = fixtures::p3();
        let err = Presentation::new(&sg, fixtures::distance_one(&sg), None).unwrap_err();
        assert!(matches!(err, Error::Hypotheses(r) if r.has(Rule::VTree)));
    }
}
