//! Finite groupoids stored as explicit tables.
//!
//! Objects and morphisms are interned by name and kept in lexicographic name
//! order, so `Obj`/`Mor` index order is name order everywhere. The
//! composition table is stored, not computed, which lets deliberately broken
//! tables be loaded and diagnosed by [`Groupoid::validate`].

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::report::{Report, Rule};

/// An object of a groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub(crate) usize);

/// A morphism of a groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub(crate) usize);

impl Obj {
    pub fn index(self) -> usize {
        self.0
    }
}

impl Mor {
    pub fn index(self) -> usize {
        self.0
    }
}

/// The star `G_x`: every morphism with source `base`, in name order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub base: Obj,
    pub members: Vec<Mor>,
}

/// Records how a product groupoid decomposes into its factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductIndex {
    obj_pairs: Vec<(Obj, Obj)>,
    mor_pairs: Vec<(Mor, Mor)>,
    obj_lookup: HashMap<(Obj, Obj), Obj>,
    mor_lookup: HashMap<(Mor, Mor), Mor>,
}

impl ProductIndex {
    pub fn obj_pair(&self, x: Obj) -> (Obj, Obj) {
        self.obj_pairs[x.0]
    }

    pub fn mor_pair(&self, g: Mor) -> (Mor, Mor) {
        self.mor_pairs[g.0]
    }

    pub fn obj(&self, a: Obj, b: Obj) -> Obj {
        self.obj_lookup[&(a, b)]
    }

    pub fn mor(&self, g: Mor, h: Mor) -> Mor {
        self.mor_lookup[&(g, h)]
    }
}

/// Collects names and raw tables; [`GroupoidBuilder::build`] resolves them.
#[derive(Debug, Clone, Default)]
pub struct GroupoidBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    compose: Vec<(String, String, String)>,
}

impl GroupoidBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> &mut Self {
        self.objects.push(name.into());
        self
    }

    pub fn morphism(
        &mut self,
        name: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> &mut Self {
        self.morphisms.push((name.into(), src.into(), tgt.into()));
        self
    }

    pub fn identity(&mut self, morphism: impl Into<String>, object: impl Into<String>) -> &mut Self {
        self.identities.push((morphism.into(), object.into()));
        self
    }

    pub fn compose(
        &mut self,
        g: impl Into<String>,
        h: impl Into<String>,
        k: impl Into<String>,
    ) -> &mut Self {
        self.compose.push((g.into(), h.into(), k.into()));
        self
    }

    /// Replaces any stored entry for `g ∘ h`.
    pub fn recompose(
        &mut self,
        g: impl Into<String>,
        h: impl Into<String>,
        k: impl Into<String>,
    ) -> &mut Self {
        let (g, h) = (g.into(), h.into());
        self.compose.retain(|(a, b, _)| !(*a == g && *b == h));
        self.compose.push((g, h, k.into()));
        self
    }

    /// Resolves names into a table. Dangling or duplicated names are
    /// malformed-table errors; axiom failures are left for `validate`.
    pub fn build(&self) -> Result<Groupoid> {
        let mut objects = self.objects.clone();
        objects.sort();
        check_names("object", &objects)?;
        let obj_index: HashMap<String, Obj> = objects
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), Obj(i)))
            .collect();

        let mut morphisms = self.morphisms.clone();
        morphisms.sort();
        let names: Vec<String> = morphisms.iter().map(|m| m.0.clone()).collect();
        check_names("morphism", &names)?;
        let mor_index: HashMap<String, Mor> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), Mor(i)))
            .collect();

        let lookup_obj = |n: &str| {
            obj_index
                .get(n)
                .copied()
                .ok_or_else(|| Error::UnknownObject(n.to_string()))
        };
        let lookup_mor = |n: &str| {
            mor_index
                .get(n)
                .copied()
                .ok_or_else(|| Error::UnknownMorphism(n.to_string()))
        };

        let mut src = Vec::with_capacity(morphisms.len());
        let mut tgt = Vec::with_capacity(morphisms.len());
        for (_, s, t) in &morphisms {
            src.push(lookup_obj(s)?);
            tgt.push(lookup_obj(t)?);
        }

        let mut ident: Vec<Option<Mor>> = vec![None; objects.len()];
        for (m, o) in &self.identities {
            let (m, x) = (lookup_mor(m)?, lookup_obj(o)?);
            if ident[x.0].replace(m).is_some() {
                return Err(Error::Duplicate {
                    kind: "identity for object",
                    name: o.clone(),
                });
            }
        }
        let ident = ident
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| Error::Malformed(format!("object `{}` has no identity", objects[i])))
            })
            .collect::<Result<Vec<_>>>()?;

        let n = names.len();
        let mut comp = vec![None; n * n];
        for (g, h, k) in &self.compose {
            let (g, h, k) = (lookup_mor(g)?, lookup_mor(h)?, lookup_mor(k)?);
            let slot = &mut comp[g.0 * n + h.0];
            match *slot {
                Some(prev) if prev != k => {
                    return Err(Error::Malformed(format!(
                        "conflicting entries for {} ∘ {}",
                        names[g.0], names[h.0]
                    )))
                }
                _ => *slot = Some(k),
            }
        }

        Ok(Groupoid::from_parts(
            objects, names, obj_index, mor_index, src, tgt, ident, comp, None,
        ))
    }
}

fn check_names(kind: &'static str, sorted: &[String]) -> Result<()> {
    for n in sorted {
        if n.is_empty() || n.chars().any(char::is_whitespace) {
            return Err(Error::Malformed(format!("invalid {kind} name `{n}`")));
        }
    }
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::Duplicate {
                kind,
                name: w[0].clone(),
            });
        }
    }
    Ok(())
}

/// A finite groupoid given by its structure tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Groupoid {
    objects: Vec<String>,
    morphisms: Vec<String>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    ident: Vec<Mor>,
    comp: Vec<Option<Mor>>,
    inv: Vec<Option<Mor>>,
    stars: Vec<Vec<Mor>>,
    product: Option<ProductIndex>,
}

/// Result of [`Groupoid::subgroupoid_generated`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub members: BTreeSet<Mor>,
    pub generates: bool,
}

impl Groupoid {
    #[allow(clippy::too_many_arguments)]
    fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<String>,
        obj_index: HashMap<String, Obj>,
        mor_index: HashMap<String, Mor>,
        src: Vec<Obj>,
        tgt: Vec<Obj>,
        ident: Vec<Mor>,
        comp: Vec<Option<Mor>>,
        product: Option<ProductIndex>,
    ) -> Self {
        let n = morphisms.len();
        let mut stars = vec![Vec::new(); objects.len()];
        for (i, s) in src.iter().enumerate() {
            stars[s.0].push(Mor(i));
        }
        // inverse = the unique k with g∘k = ε(α(g))
        let inv = (0..n)
            .map(|g| {
                let unit = ident[src[g].0];
                let mut sols = (0..n).filter(|&k| comp[g * n + k] == Some(unit));
                match (sols.next(), sols.next()) {
                    (Some(k), None) => Some(Mor(k)),
                    _ => None,
                }
            })
            .collect();
        Self {
            objects,
            morphisms,
            obj_index,
            mor_index,
            src,
            tgt,
            ident,
            comp,
            inv,
            stars,
            product,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn obj_name(&self, x: Obj) -> &str {
        &self.objects[x.0]
    }

    pub fn mor_name(&self, g: Mor) -> &str {
        &self.morphisms[g.0]
    }

    pub fn object(&self, name: &str) -> Result<Obj> {
        self.obj_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn morphism(&self, name: &str) -> Result<Mor> {
        self.mor_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    /// Source point map α.
    pub fn src(&self, g: Mor) -> Obj {
        self.src[g.0]
    }

    /// Target point map β.
    pub fn tgt(&self, g: Mor) -> Obj {
        self.tgt[g.0]
    }

    /// Object inclusion ε.
    pub fn ident(&self, x: Obj) -> Mor {
        self.ident[x.0]
    }

    pub fn is_identity(&self, g: Mor) -> bool {
        self.ident[self.src[g.0].0] == g
    }

    /// Derived groupoid inverse, `None` when the table has no unique one.
    pub fn inv(&self, g: Mor) -> Option<Mor> {
        self.inv[g.0]
    }

    pub fn inverse(&self, g: Mor) -> Result<Mor> {
        self.inv(g)
            .ok_or_else(|| Error::NoInverse(self.mor_name(g).to_string()))
    }

    /// Raw table lookup; also returns entries stored for non-composable pairs.
    pub fn table_entry(&self, g: Mor, h: Mor) -> Option<Mor> {
        self.comp[g.0 * self.morphisms.len() + h.0]
    }

    /// `g ∘ h` when `β(g) = α(h)` and the table has an entry.
    pub fn composite(&self, g: Mor, h: Mor) -> Option<Mor> {
        if self.tgt(g) == self.src(h) {
            self.table_entry(g, h)
        } else {
            None
        }
    }

    pub fn compose(&self, g: Mor, h: Mor) -> Result<Mor> {
        if self.tgt(g) != self.src(h) {
            return Err(Error::NotComposable {
                g: self.mor_name(g).to_string(),
                h: self.mor_name(h).to_string(),
                target: self.obj_name(self.tgt(g)).to_string(),
                start: self.obj_name(self.src(h)).to_string(),
            });
        }
        self.table_entry(g, h).ok_or_else(|| Error::MissingComposite {
            g: self.mor_name(g).to_string(),
            h: self.mor_name(h).to_string(),
        })
    }

    /// Composes a nonempty chain left to right.
    pub fn compose_all(&self, chain: &[Mor]) -> Result<Mor> {
        let (first, rest) = chain
            .split_first()
            .ok_or_else(|| Error::InvalidWord("empty composition chain".into()))?;
        rest.iter().try_fold(*first, |acc, &g| self.compose(acc, g))
    }

    /// The difference map `δ(g, h) = g⁻¹ ∘ h`, defined when `α(g) = α(h)`.
    pub fn difference(&self, g: Mor, h: Mor) -> Result<Mor> {
        if self.src(g) != self.src(h) {
            return Err(Error::SourceMismatch {
                g: self.mor_name(g).to_string(),
                h: self.mor_name(h).to_string(),
                g_source: self.obj_name(self.src(g)).to_string(),
                h_source: self.obj_name(self.src(h)).to_string(),
            });
        }
        self.compose(self.inverse(g)?, h)
    }

    pub fn star(&self, x: Obj) -> Star {
        Star {
            base: x,
            members: self.stars[x.0].clone(),
        }
    }

    pub fn star_members(&self, x: Obj) -> &[Mor] {
        &self.stars[x.0]
    }

    /// The hom-set `G(x, y)`.
    pub fn hom(&self, x: Obj, y: Obj) -> Vec<Mor> {
        self.stars[x.0]
            .iter()
            .copied()
            .filter(|&g| self.tgt(g) == y)
            .collect()
    }

    pub fn product_index(&self) -> Option<&ProductIndex> {
        self.product.as_ref()
    }

    /// Every stored composition entry `(g, h, g∘h)` in `(g, h)` order.
    pub fn compose_entries(&self) -> Vec<(Mor, Mor, Mor)> {
        let n = self.morphisms.len();
        self.comp
            .iter()
            .enumerate()
            .filter_map(|(i, k)| k.map(|k| (Mor(i / n), Mor(i % n), k)))
            .collect()
    }

    /// Checks every groupoid axiom exhaustively.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let name = |g: Mor| self.mor_name(g).to_string();

        for x in self.objects() {
            let e = self.ident(x);
            if self.src(e) != x || self.tgt(e) != x {
                report.push(
                    Rule::IdentityEndpoints,
                    [self.obj_name(x).to_string(), name(e)],
                    format!(
                        "identity of {} runs {} → {}",
                        self.obj_name(x),
                        self.obj_name(self.src(e)),
                        self.obj_name(self.tgt(e))
                    ),
                );
            }
        }

        for g in self.morphisms() {
            for h in self.morphisms() {
                let composable = self.tgt(g) == self.src(h);
                match (composable, self.table_entry(g, h)) {
                    (true, None) => report.push(
                        Rule::Totality,
                        [name(g), name(h)],
                        format!("{} ∘ {} is missing", name(g), name(h)),
                    ),
                    (false, Some(k)) => report.push(
                        Rule::SourceTarget,
                        [name(g), name(h), name(k)],
                        format!("entry {} ∘ {} = {} for a non-composable pair", name(g), name(h), name(k)),
                    ),
                    (true, Some(k)) if self.src(k) != self.src(g) || self.tgt(k) != self.tgt(h) => {
                        report.push(
                            Rule::SourceTarget,
                            [name(g), name(h), name(k)],
                            format!(
                                "{} ∘ {} = {} runs {} → {}, expected {} → {}",
                                name(g),
                                name(h),
                                name(k),
                                self.obj_name(self.src(k)),
                                self.obj_name(self.tgt(k)),
                                self.obj_name(self.src(g)),
                                self.obj_name(self.tgt(h)),
                            ),
                        )
                    }
                    _ => {}
                }
            }
        }

        for g in self.morphisms() {
            for &h in self.star_members(self.tgt(g)) {
                let Some(gh) = self.composite(g, h) else { continue };
                for &k in self.star_members(self.tgt(h)) {
                    let left = self.composite(gh, k);
                    let right = self.composite(h, k).and_then(|hk| self.composite(g, hk));
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            report.push(
                                Rule::Associativity,
                                [name(g), name(h), name(k)],
                                format!(
                                    "({} ∘ {}) ∘ {} = {} but {} ∘ ({} ∘ {}) = {}",
                                    name(g), name(h), name(k), name(l),
                                    name(g), name(h), name(k), name(r)
                                ),
                            );
                        }
                    }
                }
            }
        }

        for g in self.morphisms() {
            let left = self.composite(self.ident(self.src(g)), g);
            let right = self.composite(g, self.ident(self.tgt(g)));
            if left != Some(g) || right != Some(g) {
                report.push(
                    Rule::IdentityLaw,
                    [name(g)],
                    format!("identities do not act trivially on {}", name(g)),
                );
            }
        }

        for g in self.morphisms() {
            match self.inv(g) {
                None => report.push(
                    Rule::Inverse,
                    [name(g)],
                    format!("{} has no unique right inverse", name(g)),
                ),
                Some(k) => {
                    if self.composite(k, g) != Some(self.ident(self.tgt(g))) {
                        report.push(
                            Rule::Inverse,
                            [name(g), name(k)],
                            format!("{} ∘ {} is not the identity at the target", name(k), name(g)),
                        );
                    }
                }
            }
        }
        report
    }

    /// Closure of `generators` together with all identities under composition
    /// and inversion.
    pub fn subgroupoid_generated(&self, generators: impl IntoIterator<Item = Mor>) -> Closure {
        let mut members: BTreeSet<Mor> = self.ident.iter().copied().collect();
        let mut queue: VecDeque<Mor> = VecDeque::new();
        for g in generators {
            if members.insert(g) {
                queue.push_back(g);
            }
        }
        while let Some(g) = queue.pop_front() {
            let mut fresh = Vec::new();
            if let Some(k) = self.inv(g) {
                fresh.push(k);
            }
            for &m in members.iter() {
                if let Some(k) = self.composite(g, m) {
                    fresh.push(k);
                }
                if let Some(k) = self.composite(m, g) {
                    fresh.push(k);
                }
            }
            for k in fresh {
                if members.insert(k) {
                    queue.push_back(k);
                }
            }
        }
        let generates = members.len() == self.num_morphisms();
        Closure { members, generates }
    }

    /// The product groupoid with componentwise structure. Names are
    /// `(a,b)`; the result remembers its factor decomposition.
    pub fn product(left: &Groupoid, right: &Groupoid) -> Groupoid {
        let pair_name = |a: &str, b: &str| format!("({a},{b})");

        let mut objs: Vec<(String, (Obj, Obj))> = Vec::new();
        for a in left.objects() {
            for b in right.objects() {
                objs.push((pair_name(left.obj_name(a), right.obj_name(b)), (a, b)));
            }
        }
        objs.sort();
        let mut mors: Vec<(String, (Mor, Mor))> = Vec::new();
        for g in left.morphisms() {
            for h in right.morphisms() {
                mors.push((pair_name(left.mor_name(g), right.mor_name(h)), (g, h)));
            }
        }
        mors.sort();

        let obj_pairs: Vec<(Obj, Obj)> = objs.iter().map(|o| o.1).collect();
        let mor_pairs: Vec<(Mor, Mor)> = mors.iter().map(|m| m.1).collect();
        let obj_lookup: HashMap<(Obj, Obj), Obj> =
            obj_pairs.iter().enumerate().map(|(i, &p)| (p, Obj(i))).collect();
        let mor_lookup: HashMap<(Mor, Mor), Mor> =
            mor_pairs.iter().enumerate().map(|(i, &p)| (p, Mor(i))).collect();

        let objects: Vec<String> = objs.into_iter().map(|o| o.0).collect();
        let morphisms: Vec<String> = mors.into_iter().map(|m| m.0).collect();
        let obj_index = objects.iter().enumerate().map(|(i, n)| (n.clone(), Obj(i))).collect();
        let mor_index = morphisms.iter().enumerate().map(|(i, n)| (n.clone(), Mor(i))).collect();

        let src = mor_pairs.iter().map(|&(g, h)| obj_lookup[&(left.src(g), right.src(h))]).collect();
        let tgt = mor_pairs.iter().map(|&(g, h)| obj_lookup[&(left.tgt(g), right.tgt(h))]).collect();
        let ident = obj_pairs
            .iter()
            .map(|&(x, y)| mor_lookup[&(left.ident(x), right.ident(y))])
            .collect();
        let n = morphisms.len();
        let mut comp = vec![None; n * n];
        for (i, &(g, h)) in mor_pairs.iter().enumerate() {
            for (j, &(g2, h2)) in mor_pairs.iter().enumerate() {
                if let (Some(a), Some(b)) = (left.composite(g, g2), right.composite(h, h2)) {
                    comp[i * n + j] = Some(mor_lookup[&(a, b)]);
                }
            }
        }
        let index = ProductIndex {
            obj_pairs,
            mor_pairs,
            obj_lookup,
            mor_lookup,
        };
        Groupoid::from_parts(objects, morphisms, obj_index, mor_index, src, tgt, ident, comp, Some(index))
    }
}
