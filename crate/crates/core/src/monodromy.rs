//! The monodromy groupoid `Mon(G)`.
//!
//! The star of `Mon(G)` at `x` is the universal cover of the star graph of
//! `x` based at `ε(x)`, i.e. the tree of reduced edge paths starting at
//! `ε(x)`. A morphism is such a path; its target is `β` of its endpoint.
//! Composition translates the second path by the endpoint of the first,
//! concatenates, and reduces: `[a]•[b] = [a ⋆ (a(1)∘b)]`.
//!
//! Stars are infinite whenever a star graph has a cycle, so `Mon(G)` is
//! intensional: every operation works on single elements, and
//! [`Monodromy::enumerate`] lists a length-bounded ball.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::groupoid::{Mor, Obj};
use crate::report::{Report, Rule};
use crate::star::{reduce_path, EdgePath, StarredGroupoid};

/// One morphism `[a]` of `Mon(G)`: a canonical path from `ε(base)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonMor {
    base: Obj,
    path: EdgePath,
}

impl MonMor {
    pub fn base(&self) -> Obj {
        self.base
    }

    pub fn path(&self) -> &EdgePath {
        &self.path
    }

    /// `a(1)`, the endpoint of the path.
    pub fn endpoint(&self) -> Mor {
        self.path.endpoint()
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

/// Element operations of `Mon(G)` over a fixed ambient.
#[derive(Debug, Clone, Copy)]
pub struct Monodromy<'a> {
    sg: &'a StarredGroupoid,
}

impl<'a> Monodromy<'a> {
    pub fn new(sg: &'a StarredGroupoid) -> Self {
        Self { sg }
    }

    pub fn ambient(&self) -> &'a StarredGroupoid {
        self.sg
    }

    /// The empty path at `ε(x)`.
    pub fn identity(&self, x: Obj) -> MonMor {
        MonMor {
            base: x,
            path: EdgePath::trivial(self.sg.base().ident(x)),
        }
    }

    /// Validates an edge path from an identity and returns its class.
    pub fn element(&self, path: EdgePath) -> Result<MonMor> {
        let g = self.sg.base();
        let x = g.src(path.start);
        if path.start != g.ident(x) {
            return Err(Error::InvalidPath(format!(
                "path starts at {} instead of an identity",
                g.mor_name(path.start)
            )));
        }
        self.sg.check_path(&path)?;
        Ok(MonMor {
            base: x,
            path: self.canonical(&path),
        })
    }

    /// Canonical representative of the homotopy class of a path that starts
    /// at an identity: backtrack reduction, or componentwise reduction over
    /// a product ambient (first factor moves first).
    pub fn canonical(&self, p: &EdgePath) -> EdgePath {
        let Some((left, right)) = self.sg.factors() else {
            return reduce_path(p);
        };
        let idx = self.sg.base().product_index().expect("product index");
        let a = p.map(|v| Ok(idx.mor_pair(v).0)).expect("projection");
        let b = p.map(|v| Ok(idx.mor_pair(v).1)).expect("projection");
        let a = Monodromy::new(left).canonical(&a);
        let b = Monodromy::new(right).canonical(&b);
        join_paths(self.sg, &a, &b)
    }

    pub fn source(&self, a: &MonMor) -> Obj {
        a.base
    }

    /// `β(β(a(1)))`: the target in `G` of the endpoint.
    pub fn target(&self, a: &MonMor) -> Obj {
        self.sg.base().tgt(a.endpoint())
    }

    /// The projection `p: Mon(G) → G`, `[a] ↦ a(1)`.
    pub fn project(&self, a: &MonMor) -> Mor {
        a.endpoint()
    }

    /// `[a] • [b] = [a ⋆ (a(1) ∘ b)]`.
    pub fn compose(&self, a: &MonMor, b: &MonMor) -> Result<MonMor> {
        let g = self.sg.base();
        if self.target(a) != b.base {
            return Err(Error::BaseMismatch {
                target: g.obj_name(self.target(a)).to_string(),
                base: g.obj_name(b.base).to_string(),
            });
        }
        let moved = self.sg.left_translate_path(a.endpoint(), &b.path)?;
        let joined = a.path.concat(&moved)?;
        Ok(MonMor {
            base: a.base,
            path: self.canonical(&joined),
        })
    }

    /// Reverse the path and translate it back to start at `ε(target)`.
    pub fn inverse(&self, a: &MonMor) -> Result<MonMor> {
        let g = self.sg.base();
        let back = g.inverse(a.endpoint())?;
        let path = self.sg.left_translate_path(back, &a.path.reversed())?;
        Ok(MonMor {
            base: self.target(a),
            path: self.canonical(&path),
        })
    }

    /// `([a],[b]) ↦ [ab]`, represented by `(a·ε(y)) ⋆ (a(1)·b)` where
    /// `y` is the base of `b`.
    pub fn group_mul(&self, a: &MonMor, b: &MonMor) -> Result<MonMor> {
        let g = self.sg.base();
        let grp = self.sg.group().ok_or(Error::NoGroupStructure)?;
        let unit_b = g.ident(b.base);
        let first = a.path.map(|v| grp.mul(g, v, unit_b))?;
        let end = a.endpoint();
        let second = b.path.map(|w| grp.mul(g, end, w))?;
        let base = grp.obj_mul(a.base, b.base).ok_or(Error::NoGroupStructure)?;
        Ok(MonMor {
            base,
            path: self.canonical(&first.concat(&second)?),
        })
    }

    /// Every element of the star at `x` of length at most `max_len`, in
    /// lexicographic order of the step vertices.
    pub fn enumerate(&self, x: Obj, max_len: usize) -> Vec<MonMor> {
        if let Some((left, right)) = self.sg.factors() {
            let idx = self.sg.base().product_index().expect("product index");
            let (x1, x2) = idx.obj_pair(x);
            let (ml, mr) = (Monodromy::new(left), Monodromy::new(right));
            let mut out = Vec::new();
            for a in ml.enumerate(x1, max_len) {
                for b in mr.enumerate(x2, max_len - a.len()) {
                    out.push(self.join(&a, &b).expect("factor elements"));
                }
            }
            out.sort();
            return out;
        }
        let mut out = Vec::new();
        let start = self.sg.base().ident(x);
        let mut stack = vec![vec![start]];
        while let Some(verts) = stack.pop() {
            let last = *verts.last().unwrap();
            let prev = verts.len().checked_sub(2).map(|i| verts[i]);
            if verts.len() <= max_len {
                for v in self.sg.neighbors(last).into_iter().rev() {
                    if Some(v) != prev {
                        let mut next = verts.clone();
                        next.push(v);
                        stack.push(next);
                    }
                }
            }
            out.push(MonMor {
                base: x,
                path: EdgePath::from_vertices(&verts).unwrap(),
            });
        }
        out
    }

    /// Neighbours of `a` in the star of `Mon(G)`: classes of `a` extended
    /// by one step of the star graph.
    pub fn tree_neighbors(&self, a: &MonMor) -> Vec<MonMor> {
        self.sg
            .neighbors(a.endpoint())
            .into_iter()
            .map(|v| {
                let mut steps = a.path.steps.clone();
                steps.push(v);
                MonMor {
                    base: a.base,
                    path: self.canonical(&EdgePath::new(a.path.start, steps)),
                }
            })
            .collect()
    }

    /// Lifts through `p` of the step from `p(a)` to `v`.
    pub fn lifts(&self, a: &MonMor, v: Mor) -> Vec<MonMor> {
        self.tree_neighbors(a)
            .into_iter()
            .filter(|b| self.project(b) == v)
            .collect()
    }

    /// `[a] ↦ ([p₁a], [p₂a])` over a product ambient.
    pub fn split(&self, a: &MonMor) -> Result<(MonMor, MonMor)> {
        let (left, right) = self.sg.factors().ok_or(Error::NotAProduct)?;
        let idx = self.sg.base().product_index().expect("product index");
        let (x1, x2) = idx.obj_pair(a.base);
        let pa = a.path.map(|v| Ok(idx.mor_pair(v).0))?;
        let pb = a.path.map(|v| Ok(idx.mor_pair(v).1))?;
        Ok((
            MonMor {
                base: x1,
                path: Monodromy::new(left).canonical(&pa),
            },
            MonMor {
                base: x2,
                path: Monodromy::new(right).canonical(&pb),
            },
        ))
    }

    /// Inverse of [`Monodromy::split`].
    pub fn join(&self, a: &MonMor, b: &MonMor) -> Result<MonMor> {
        self.sg.factors().ok_or(Error::NotAProduct)?;
        let idx = self.sg.base().product_index().expect("product index");
        Ok(MonMor {
            base: idx.obj(a.base, b.base),
            path: join_paths(self.sg, &a.path, &b.path),
        })
    }

    /// The functor `Mon(f)`: apply `f` vertexwise and take the class.
    pub fn map(&self, f: &StarMorphism<'_>, a: &MonMor) -> MonMor {
        let path = a.path.map(|v| Ok(f.apply(v))).expect("total map");
        MonMor {
            base: f.apply_obj(a.base),
            path: Monodromy::new(f.target).canonical(&path),
        }
    }
}

/// Checks `[a] ↦ ([p₁a],[p₂a])` on a product ambient: bijective on the
/// pairs of factor elements with component length at most `max_len`, and
/// compatible with `•`, inverses and (when present) the group product.
/// Returns the number of elements examined.
pub fn check_product(prod: &StarredGroupoid, max_len: usize) -> Result<(usize, Report)> {
    let (left, right) = prod.factors().ok_or(Error::NotAProduct)?;
    let (m, ml, mr) = (Monodromy::new(prod), Monodromy::new(left), Monodromy::new(right));
    let mut report = Report::new();
    let show = |a: &MonMor| {
        let g = prod.base();
        let names: Vec<&str> = a.path().vertices().map(|v| g.mor_name(v)).collect();
        names.join("-")
    };
    let mut pairs: Vec<(MonMor, MonMor, MonMor)> = Vec::new();
    for x in left.base().objects() {
        for y in right.base().objects() {
            for a in ml.enumerate(x, max_len) {
                for b in mr.enumerate(y, max_len) {
                    let c = m.join(&a, &b)?;
                    if m.split(&c)? != (a.clone(), b.clone()) {
                        report.push(Rule::ProductSplit, [show(&c)], "split does not invert join");
                    }
                    pairs.push((a.clone(), b, c));
                }
            }
        }
    }
    let distinct: BTreeSet<&MonMor> = pairs.iter().map(|p| &p.2).collect();
    if distinct.len() != pairs.len() {
        report.push(Rule::ProductSplit, Vec::<String>::new(), "join is not injective");
    }
    let agree = |c: &MonMor, a: &MonMor, b: &MonMor| -> Result<bool> { Ok(m.split(c)? == (a.clone(), b.clone())) };
    for (a, b, c) in &pairs {
        if !agree(&m.inverse(c)?, &ml.inverse(a)?, &mr.inverse(b)?)? {
            report.push(Rule::ProductSplit, [show(c)], "inverse is not componentwise");
        }
    }
    for (a, b, c) in &pairs {
        for (a2, b2, c2) in &pairs {
            if m.target(c) == c2.base() && !agree(&m.compose(c, c2)?, &ml.compose(a, a2)?, &mr.compose(b, b2)?)? {
                report.push(Rule::ProductSplit, [show(c), show(c2)], "composition is not componentwise");
            }
            if prod.group().is_some()
                && !agree(&m.group_mul(c, c2)?, &ml.group_mul(a, a2)?, &mr.group_mul(b, b2)?)?
            {
                report.push(Rule::ProductSplit, [show(c), show(c2)], "group product is not componentwise");
            }
        }
    }
    Ok((pairs.len(), report))
}

/// `(a × ε) ⋆ (a(1) × b)` in the product star.
fn join_paths(sg: &StarredGroupoid, a: &EdgePath, b: &EdgePath) -> EdgePath {
    let idx = sg.base().product_index().expect("product index");
    let end = a.endpoint();
    let verts: Vec<Mor> = a
        .vertices()
        .map(|v| idx.mor(v, b.start))
        .chain(b.steps.iter().map(|&w| idx.mor(end, w)))
        .collect();
    EdgePath::from_vertices(&verts).expect("nonempty")
}

/// A groupoid morphism between starred groupoids whose restrictions to
/// stars are graph morphisms (adjacent vertices go to adjacent or equal
/// vertices).
#[derive(Debug, Clone)]
pub struct StarMorphism<'a> {
    source: &'a StarredGroupoid,
    target: &'a StarredGroupoid,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl<'a> StarMorphism<'a> {
    /// Builds and validates a morphism from a total map on morphism names.
    /// The object map is read off the identities.
    pub fn from_names<S: AsRef<str>>(
        source: &'a StarredGroupoid,
        target: &'a StarredGroupoid,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let (g, h) = (source.base(), target.base());
        let mut mor_map: Vec<Option<Mor>> = vec![None; g.num_morphisms()];
        for (a, b) in pairs {
            mor_map[g.morphism(a.as_ref())?.index()] = Some(h.morphism(b.as_ref())?);
        }
        let mor_map = mor_map
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| {
                    Error::Refused(format!("no image for {}", g.mor_name(Mor(i))))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let obj_map = g.objects().map(|x| h.tgt(mor_map[g.ident(x).index()])).collect();
        let f = Self {
            source,
            target,
            obj_map,
            mor_map,
        };
        let report = f.validate();
        if report.is_clean() {
            Ok(f)
        } else {
            Err(Error::InvalidStarMorphism(report))
        }
    }

    pub fn identity(sg: &'a StarredGroupoid) -> Self {
        Self {
            source: sg,
            target: sg,
            obj_map: sg.base().objects().collect(),
            mor_map: sg.base().morphisms().collect(),
        }
    }

    pub fn source(&self) -> &'a StarredGroupoid {
        self.source
    }

    pub fn target(&self) -> &'a StarredGroupoid {
        self.target
    }

    pub fn apply(&self, g: Mor) -> Mor {
        self.mor_map[g.index()]
    }

    pub fn apply_obj(&self, x: Obj) -> Obj {
        self.obj_map[x.index()]
    }

    /// `next ∘ self`.
    pub fn then<'b>(&self, next: &StarMorphism<'b>) -> Result<StarMorphism<'b>>
    where
        'a: 'b,
    {
        if !std::ptr::eq(self.target, next.source) {
            return Err(Error::Refused("morphisms are not composable".into()));
        }
        Ok(StarMorphism {
            source: self.source,
            target: next.target,
            obj_map: self.obj_map.iter().map(|&x| next.apply_obj(x)).collect(),
            mor_map: self.mor_map.iter().map(|&g| next.apply(g)).collect(),
        })
    }

    /// Functor laws and star-graph compatibility.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let (g, h) = (self.source.base(), self.target.base());
        let name = |m: Mor| g.mor_name(m).to_string();
        for x in g.objects() {
            if self.apply(g.ident(x)) != h.ident(self.apply_obj(x)) {
                report.push(Rule::Functor, [g.obj_name(x).to_string()], "identity not preserved");
            }
        }
        for a in g.morphisms() {
            let fa = self.apply(a);
            if h.src(fa) != self.apply_obj(g.src(a)) || h.tgt(fa) != self.apply_obj(g.tgt(a)) {
                report.push(Rule::Functor, [name(a)], "source/target not preserved");
            }
            for &b in g.star_members(g.tgt(a)) {
                if let Some(ab) = g.composite(a, b) {
                    if h.composite(fa, self.apply(b)) != Some(self.apply(ab)) {
                        report.push(Rule::Functor, [name(a), name(b)], "composition not preserved");
                    }
                }
            }
        }
        for a in g.morphisms() {
            for b in self.source.neighbors(a) {
                let (fa, fb) = (self.apply(a), self.apply(b));
                if fa != fb && !self.target.adjacent(fa, fb) {
                    report.push(
                        Rule::StarCompatibility,
                        [name(a), name(b)],
                        format!("edge {}-{} is torn apart", name(a), name(b)),
                    );
                }
            }
        }
        report
    }
}

/// Distinctness and acyclicity of an enumerated star: the one-step
/// extension graph on `ball` must be a tree (connected, `|E| = |V| − 1`).
pub fn ball_is_tree(mon: &Monodromy<'_>, ball: &[MonMor]) -> bool {
    let set: BTreeSet<&MonMor> = ball.iter().collect();
    if set.len() != ball.len() {
        return false;
    }
    let mut edges = 0usize;
    for a in ball {
        for b in mon.tree_neighbors(a) {
            if set.contains(&b) {
                edges += 1;
            }
        }
    }
    // every edge counted from both ends
    edges.is_multiple_of(2) && edges / 2 + 1 == ball.len()
}
