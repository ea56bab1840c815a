//! The monodromy principle: a local morphism `f: W → H` that is the
//! identity on objects globalizes to `M(G,W)` (weak form), and to `G`
//! itself when every star is a tree (strong form).

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::groupoid::{Mor, Obj};
use crate::presentation::{Presentation, WSet, Word};
use crate::report::{Report, Rule};
use crate::star::StarredGroupoid;

/// A partial map `W → H` defined on a subset `W` of `G`. Objects of `G`
/// are identified with the objects of `H` carrying the same name.
#[derive(Debug, Clone)]
pub struct LocalMorphism<'a> {
    source: &'a StarredGroupoid,
    target: &'a StarredGroupoid,
    domain: WSet,
    map: Vec<Option<Mor>>,
    objects: Vec<Option<Obj>>,
}

impl<'a> LocalMorphism<'a> {
    /// Resolves `u -> f(u)` name pairs. Does not validate.
    pub fn from_names<S: AsRef<str>>(
        source: &'a StarredGroupoid,
        target: &'a StarredGroupoid,
        domain: WSet,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let (g, h) = (source.base(), target.base());
        let mut map = vec![None; g.num_morphisms()];
        for (u, fu) in pairs {
            let u = g.morphism(u.as_ref())?;
            if map[u.index()].replace(h.morphism(fu.as_ref())?).is_some() {
                return Err(Error::Duplicate {
                    kind: "local morphism entry",
                    name: g.mor_name(u).to_string(),
                });
            }
        }
        let objects = g.objects().map(|x| h.object(g.obj_name(x)).ok()).collect();
        Ok(Self {
            source,
            target,
            domain,
            map,
            objects,
        })
    }

    /// The inclusion of `W` into `G` itself.
    pub fn inclusion(sg: &'a StarredGroupoid, domain: WSet) -> Self {
        let g = sg.base();
        let mut map = vec![None; g.num_morphisms()];
        for u in domain.iter() {
            map[u.index()] = Some(u);
        }
        Self {
            source: sg,
            target: sg,
            domain,
            map,
            objects: g.objects().map(Some).collect(),
        }
    }

    pub fn source(&self) -> &'a StarredGroupoid {
        self.source
    }

    pub fn target(&self) -> &'a StarredGroupoid {
        self.target
    }

    pub fn domain(&self) -> &WSet {
        &self.domain
    }

    pub fn get(&self, u: Mor) -> Option<Mor> {
        self.map[u.index()]
    }

    /// Replaces one value; used to build perturbed maps.
    pub fn with_value(&self, u: Mor, fu: Mor) -> Self {
        let mut out = self.clone();
        out.map[u.index()] = Some(fu);
        out
    }

    /// The object of `H` named like `x`.
    pub fn object(&self, x: Obj) -> Result<Obj> {
        self.objects[x.index()]
            .ok_or_else(|| Error::UnknownObject(self.source.base().obj_name(x).to_string()))
    }

    pub fn apply(&self, u: Mor) -> Result<Mor> {
        self.get(u).filter(|_| self.domain.contains(u)).ok_or_else(|| {
            Error::InvalidWord(format!("{} is outside W", self.source.base().mor_name(u)))
        })
    }

    pub fn validate(&self) -> Report {
        let (g, h) = (self.source.base(), self.target.base());
        let mut report = Report::new();
        let name = |m: Mor| g.mor_name(m).to_string();

        for x in g.objects() {
            if self.objects[x.index()].is_none() {
                report.push(
                    Rule::LocalDomain,
                    [g.obj_name(x).to_string()],
                    format!("object {} is missing from the target", g.obj_name(x)),
                );
            }
        }
        for u in g.morphisms() {
            match (self.domain.contains(u), self.get(u)) {
                (true, None) => {
                    report.push(Rule::LocalDomain, [name(u)], format!("no value for {}", name(u)))
                }
                (false, Some(_)) => report.push(
                    Rule::LocalDomain,
                    [name(u)],
                    format!("value given for {} outside W", name(u)),
                ),
                _ => {}
            }
        }
        if !report.is_clean() {
            return report;
        }

        for x in g.objects() {
            let e = g.ident(x);
            if !self.domain.contains(e) {
                continue;
            }
            let hx = self.objects[x.index()].unwrap();
            if self.get(e) != Some(h.ident(hx)) {
                report.push(
                    Rule::LocalIdentity,
                    [name(e)],
                    format!("{} does not go to the identity of {}", name(e), g.obj_name(x)),
                );
            }
        }
        for u in self.domain.iter() {
            let fu = self.get(u).unwrap();
            if Some(h.src(fu)) != self.objects[g.src(u).index()]
                || Some(h.tgt(fu)) != self.objects[g.tgt(u).index()]
            {
                report.push(
                    Rule::LocalEndpoints,
                    [name(u), h.mor_name(fu).to_string()],
                    format!("{} ↦ {} moves the endpoints", name(u), h.mor_name(fu)),
                );
            }
        }
        for u in self.domain.iter() {
            for v in self.domain.iter() {
                let Some(k) = g.composite(u, v) else { continue };
                if !self.domain.contains(k) {
                    continue;
                }
                let (fu, fv, fk) = (self.get(u).unwrap(), self.get(v).unwrap(), self.get(k).unwrap());
                if h.composite(fu, fv) != Some(fk) {
                    report.push(
                        Rule::LocalComposition,
                        [name(u), name(v)],
                        format!("f({}∘{}) ≠ f({})∘f({})", name(u), name(v), name(u), name(v)),
                    );
                }
            }
        }
        if let (Some(gs), Some(hs)) = (self.source.group(), self.target.group()) {
            for u in self.domain.iter() {
                for v in self.domain.iter() {
                    let Some(k) = gs.mor_mul(u, v) else { continue };
                    if !self.domain.contains(k) {
                        continue;
                    }
                    let (fu, fv, fk) = (self.get(u).unwrap(), self.get(v).unwrap(), self.get(k).unwrap());
                    if hs.mor_mul(fu, fv) != Some(fk) {
                        report.push(
                            Rule::LocalProduct,
                            [name(u), name(v)],
                            format!("f({}·{}) ≠ f({})·f({})", name(u), name(v), name(u), name(v)),
                        );
                    }
                }
            }
        }
        report
    }
}

/// Order in which breadth-first factorization tries the letters of `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Lexicographic,
    ReverseLexicographic,
}

/// The globalization `f̃` of a valid local morphism.
#[derive(Debug, Clone)]
pub struct Extension<'a> {
    f: LocalMorphism<'a>,
    presentation: Option<Presentation<'a>>,
    strong: bool,
    tie: TieBreak,
}

impl<'a> Extension<'a> {
    fn checked(f: &LocalMorphism<'a>) -> Result<()> {
        let report = f.validate();
        if report.is_clean() {
            Ok(())
        } else {
            Err(Error::InvalidLocalMorphism(report))
        }
    }

    /// `f̃: M(G,W) → H`. Requires the covering hypotheses for `(G, W)`.
    pub fn weak(f: &LocalMorphism<'a>, v: Option<WSet>) -> Result<Self> {
        Self::checked(f)?;
        let presentation = Presentation::new(f.source, f.domain.clone(), v)?;
        Ok(Self {
            f: f.clone(),
            presentation: Some(presentation),
            strong: false,
            tie: TieBreak::Lexicographic,
        })
    }

    /// `f̃: G → H`. Requires every star to be a connected tree and `W` to
    /// generate `G`.
    pub fn strong(f: &LocalMorphism<'a>, tie: TieBreak) -> Result<Self> {
        Self::checked(f)?;
        let sg = f.source;
        let g = sg.base();
        for (x, (tree, connected)) in g.objects().zip(sg.is_tree().into_iter().zip(sg.star_connected())) {
            if !connected {
                return Err(Error::Refused(format!("star of {} is not connected", g.obj_name(x))));
            }
            if !tree {
                return Err(Error::Refused(format!("star of {} is not a tree", g.obj_name(x))));
            }
        }
        if !g.subgroupoid_generated(f.domain.iter()).generates {
            return Err(Error::Refused("W does not generate G".into()));
        }
        Ok(Self {
            f: f.clone(),
            presentation: Presentation::new(sg, f.domain.clone(), None).ok(),
            strong: true,
            tie,
        })
    }

    pub fn local(&self) -> &LocalMorphism<'a> {
        &self.f
    }

    pub fn presentation(&self) -> Option<&Presentation<'a>> {
        self.presentation.as_ref()
    }

    pub fn is_strong(&self) -> bool {
        self.strong
    }

    /// `f̃(u₁…uₙ) = f(u₁)∘…∘f(uₙ)`, and `ε_H(x)` on the empty word at `x`.
    pub fn on_word(&self, w: &Word) -> Result<Mor> {
        let h = self.f.target.base();
        let images = w
            .letters()
            .iter()
            .map(|&u| self.f.apply(u))
            .collect::<Result<Vec<_>>>()?;
        if images.is_empty() {
            return Ok(h.ident(self.f.object(w.source())?));
        }
        h.compose_all(&images)
    }

    /// A shortest `W`-word evaluating to `g`, found by breadth-first search
    /// in star(α g) from `ε(α g)`.
    pub fn factorize(&self, g_mor: Mor) -> Result<Word> {
        let g = self.f.source.base();
        let x = g.src(g_mor);
        let start = g.ident(x);
        let mut parent: HashMap<Mor, (Mor, Mor)> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        let mut seen = std::collections::HashSet::from([start]);
        while let Some(at) = queue.pop_front() {
            if at == g_mor {
                break;
            }
            let mut letters = self.f.domain.star(g, g.tgt(at));
            if self.tie == TieBreak::ReverseLexicographic {
                letters.reverse();
            }
            for u in letters.into_iter().filter(|&u| !g.is_identity(u)) {
                let next = g.compose(at, u)?;
                if seen.insert(next) {
                    parent.insert(next, (at, u));
                    queue.push_back(next);
                }
            }
        }
        if !seen.contains(&g_mor) {
            return Err(Error::Refused(format!("{} is not generated by W", g.mor_name(g_mor))));
        }
        let mut letters = Vec::new();
        let mut at = g_mor;
        while let Some(&(prev, u)) = parent.get(&at) {
            letters.push(u);
            at = prev;
        }
        letters.reverse();
        Word::new(g, x, letters)
    }

    /// Strong form only.
    pub fn on_morphism(&self, g: Mor) -> Result<Mor> {
        if !self.strong {
            return Err(Error::Refused("weak extension is defined on words only".into()));
        }
        self.on_word(&self.factorize(g)?)
    }

    /// First pair `u, v ∈ W` with `uv ∉ W`.
    pub fn subgroup_witness(&self) -> Result<Option<(Mor, Mor, Mor)>> {
        let gs = self.f.source.group().ok_or(Error::NoGroupStructure)?;
        let w = &self.f.domain;
        for u in w.iter() {
            for v in w.iter() {
                let k = gs.mul(self.f.source.base(), u, v)?;
                if !w.contains(k) {
                    return Ok(Some((u, v, k)));
                }
            }
        }
        Ok(None)
    }

    fn require_subgroup(&self) -> Result<()> {
        if let Some((u, v, k)) = self.subgroup_witness()? {
            let g = self.f.source.base();
            return Err(Error::NotSubgroup {
                u: g.mor_name(u).to_string(),
                v: g.mor_name(v).to_string(),
                product: g.mor_name(k).to_string(),
            });
        }
        Ok(())
    }

    /// The letterwise product `u₁v₁ … uₙvₙ`, the shorter word padded with
    /// identities at its target.
    pub fn padded_product(&self, w1: &Word, w2: &Word) -> Result<Word> {
        self.require_subgroup()?;
        let sg = self.f.source;
        let g = sg.base();
        let gs = sg.group().ok_or(Error::NoGroupStructure)?;
        let n = w1.len().max(w2.len());
        let pad = |w: &Word| -> Vec<Mor> {
            let mut l = w.letters().to_vec();
            l.resize(n, g.ident(w.target(g)));
            l
        };
        let (a, b) = (pad(w1), pad(w2));
        let letters = a
            .iter()
            .zip(&b)
            .map(|(&u, &v)| gs.mul(g, u, v))
            .collect::<Result<Vec<_>>>()?;
        let source = gs
            .obj_mul(w1.source(), w2.source())
            .ok_or(Error::NoGroupStructure)?;
        Word::new(g, source, letters)
    }

    /// Checks `f̃(w₁ ⊙ w₂) = f̃(w₁)·f̃(w₂)` on the sampled pairs, where `⊙`
    /// is [`Extension::padded_product`]. Refuses unless `W` is a subgroup.
    pub fn check_group_morphism(&self, samples: &[(Word, Word)]) -> Result<Report> {
        self.require_subgroup()?;
        let g = self.f.source.base();
        let (h, hs) = (
            self.f.target.base(),
            self.f.target.group().ok_or(Error::NoGroupStructure)?,
        );
        let mut report = Report::new();
        for (w1, w2) in samples {
            let lhs = self.on_word(&self.padded_product(w1, w2)?)?;
            let rhs = hs.mul(h, self.on_word(w1)?, self.on_word(w2)?)?;
            if lhs != rhs {
                report.push(
                    Rule::GroupMorphism,
                    [w1.display(g), w2.display(g)],
                    format!("f̃ gives {} but the product is {}", h.mor_name(lhs), h.mor_name(rhs)),
                );
            }
        }
        Ok(report)
    }
}

/// Every word over `W` of length at most `max_len`, from every object, in
/// lexicographic letter order.
pub fn words_over(sg: &StarredGroupoid, w: &WSet, max_len: usize) -> Vec<Word> {
    let g = sg.base();
    let mut out = Vec::new();
    for x in g.objects() {
        let mut stack = vec![Word::empty(x)];
        while let Some(word) = stack.pop() {
            if word.len() < max_len {
                for u in w.star(g, word.target(g)).into_iter().rev() {
                    if !g.is_identity(u) {
                        let mut letters = word.letters().to_vec();
                        letters.push(u);
                        stack.push(Word::new(g, x, letters).expect("chain"));
                    }
                }
            }
            out.push(word);
        }
    }
    out
}

/// Compares two globalizations on every word of length at most `max_len`;
/// returns a shortest word where they differ.
pub fn uniqueness_check(
    sg: &StarredGroupoid,
    w: &WSet,
    first: impl Fn(&Word) -> Result<Mor>,
    second: impl Fn(&Word) -> Result<Mor>,
    max_len: usize,
) -> Result<Option<Word>> {
    let mut words = words_over(sg, w, max_len);
    words.sort_by_key(Word::len);
    for word in words {
        if first(&word)? != second(&word)? {
            return Ok(Some(word));
        }
    }
    Ok(None)
}
