//! Star graphs: the combinatorial model of a star topology.
//!
//! Each star `G_x` carries an undirected simple graph. A groupoid is
//! star-topological when every left translation `L_g: G_y → G_x` is a graph
//! isomorphism; for group-groupoids the group translations and the group
//! inversion must be graph isomorphisms between the appropriate stars too.
//!
//! Products are not materialized as graphs. A product ambient steps in one
//! factor at a time and computes homotopy classes componentwise, because a
//! graph product would see a square as an unfillable cycle.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::group_groupoid::{GroupGroupoid, GroupStructure};
use crate::groupoid::{Groupoid, Mor, Obj};
use crate::report::{Report, Rule};

/// An edge path inside one star, listed by vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgePath {
    pub start: Mor,
    pub steps: Vec<Mor>,
}

impl EdgePath {
    pub fn new(start: Mor, steps: Vec<Mor>) -> Self {
        Self { start, steps }
    }

    pub fn trivial(at: Mor) -> Self {
        Self::new(at, Vec::new())
    }

    pub fn from_vertices(vertices: &[Mor]) -> Option<Self> {
        let (&start, rest) = vertices.split_first()?;
        Some(Self::new(start, rest.to_vec()))
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Last vertex, `a(1)`.
    pub fn endpoint(&self) -> Mor {
        self.steps.last().copied().unwrap_or(self.start)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Mor> + '_ {
        std::iter::once(self.start).chain(self.steps.iter().copied())
    }

    pub fn reversed(&self) -> Self {
        let mut v: Vec<Mor> = self.vertices().collect();
        v.reverse();
        Self::from_vertices(&v).expect("nonempty")
    }

    /// Path concatenation `self ⋆ other`; `other` must start at our endpoint.
    pub fn concat(&self, other: &EdgePath) -> Result<Self> {
        if other.start != self.endpoint() {
            return Err(Error::InvalidPath("concatenated paths do not meet".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Self::new(self.start, steps))
    }

    /// Applies `f` to every vertex.
    pub fn map(&self, mut f: impl FnMut(Mor) -> Result<Mor>) -> Result<Self> {
        Ok(Self::new(
            f(self.start)?,
            self.steps.iter().map(|&v| f(v)).collect::<Result<_>>()?,
        ))
    }
}

/// Deletes stationary steps and immediate backtracks `u,v,u → u` until none
/// remain. The stack pass computes the unique fully reduced form.
pub fn reduce_path(p: &EdgePath) -> EdgePath {
    let mut stack: Vec<Mor> = vec![p.start];
    for &v in &p.steps {
        let n = stack.len();
        if stack[n - 1] == v {
            continue;
        }
        if n >= 2 && stack[n - 2] == v {
            stack.pop();
        } else {
            stack.push(v);
        }
    }
    EdgePath::from_vertices(&stack).expect("nonempty")
}

pub fn is_reduced(p: &EdgePath) -> bool {
    let v: Vec<Mor> = p.vertices().collect();
    v.windows(2).all(|w| w[0] != w[1]) && v.windows(3).all(|w| w[0] != w[2])
}

/// The graph on one star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarGraph {
    pub base: Obj,
    pub edges: BTreeSet<(Mor, Mor)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct StarEdges {
    raw: Vec<(Obj, Mor, Mor)>,
    adj: Vec<BTreeSet<Mor>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum StarTopology {
    Graph(StarEdges),
    Product(Box<(StarredGroupoid, StarredGroupoid)>),
}

/// A (group-)groupoid together with a graph on every star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarredGroupoid {
    base: Groupoid,
    group: Option<GroupStructure>,
    topology: StarTopology,
}

impl StarredGroupoid {
    /// `edges` are `(object, g, h)` triples. Endpoint and simplicity
    /// conditions are checked by [`StarredGroupoid::validate_star_structure`].
    pub fn new(base: Groupoid, group: Option<GroupStructure>, edges: Vec<(Obj, Mor, Mor)>) -> Self {
        let mut adj = vec![BTreeSet::new(); base.num_morphisms()];
        for &(_, g, h) in &edges {
            if g != h {
                adj[g.0].insert(h);
                adj[h.0].insert(g);
            }
        }
        Self {
            base,
            group,
            topology: StarTopology::Graph(StarEdges { raw: edges, adj }),
        }
    }

    pub fn from_names<S: AsRef<str>>(
        base: Groupoid,
        group: Option<GroupStructure>,
        edges: &[(S, S, S)],
    ) -> Result<Self> {
        let resolved = edges
            .iter()
            .map(|(x, g, h)| {
                Ok((
                    base.object(x.as_ref())?,
                    base.morphism(g.as_ref())?,
                    base.morphism(h.as_ref())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(base, group, resolved))
    }

    /// Product ambient: componentwise groupoid and group structure, with
    /// the factors kept for componentwise homotopy.
    pub fn product(left: &StarredGroupoid, right: &StarredGroupoid) -> StarredGroupoid {
        let base = Groupoid::product(&left.base, &right.base);
        let group = match (&left.group, &right.group) {
            (Some(a), Some(b)) => Some(GroupStructure::product(
                &base,
                (&left.base, a),
                (&right.base, b),
            )),
            _ => None,
        };
        Self {
            base,
            group,
            topology: StarTopology::Product(Box::new((left.clone(), right.clone()))),
        }
    }

    pub fn base(&self) -> &Groupoid {
        &self.base
    }

    pub fn group(&self) -> Option<&GroupStructure> {
        self.group.as_ref()
    }

    pub fn group_groupoid(&self) -> Option<GroupGroupoid> {
        self.group
            .clone()
            .map(|g| GroupGroupoid::new(self.base.clone(), g))
    }

    pub fn factors(&self) -> Option<(&StarredGroupoid, &StarredGroupoid)> {
        match &self.topology {
            StarTopology::Product(f) => Some((&f.0, &f.1)),
            StarTopology::Graph(_) => None,
        }
    }

    pub fn is_product(&self) -> bool {
        self.factors().is_some()
    }

    /// Raw `(object, g, h)` edge list; empty for product ambients.
    pub fn edge_list(&self) -> &[(Obj, Mor, Mor)] {
        match &self.topology {
            StarTopology::Graph(e) => &e.raw,
            StarTopology::Product(_) => &[],
        }
    }

    /// Neighbours of `v` in its star, in name order.
    pub fn neighbors(&self, v: Mor) -> Vec<Mor> {
        match &self.topology {
            StarTopology::Graph(e) => e.adj[v.0].iter().copied().collect(),
            StarTopology::Product(f) => {
                let idx = self.base.product_index().expect("product index");
                let (a, b) = idx.mor_pair(v);
                let mut out: Vec<Mor> = f
                    .0
                    .neighbors(a)
                    .into_iter()
                    .map(|a2| idx.mor(a2, b))
                    .chain(f.1.neighbors(b).into_iter().map(|b2| idx.mor(a, b2)))
                    .collect();
                out.sort();
                out
            }
        }
    }

    pub fn adjacent(&self, u: Mor, v: Mor) -> bool {
        match &self.topology {
            StarTopology::Graph(e) => e.adj[u.0].contains(&v),
            StarTopology::Product(f) => {
                let idx = self.base.product_index().expect("product index");
                let ((a, b), (c, d)) = (idx.mor_pair(u), idx.mor_pair(v));
                (a == c && f.1.adjacent(b, d)) || (b == d && f.0.adjacent(a, c))
            }
        }
    }

    pub fn star_graph(&self, x: Obj) -> StarGraph {
        let mut edges = BTreeSet::new();
        for &u in self.base.star_members(x) {
            for v in self.neighbors(u) {
                if u < v {
                    edges.insert((u, v));
                }
            }
        }
        StarGraph { base: x, edges }
    }

    /// Groupoid axioms, then group-groupoid axioms (if any), then the star
    /// structure. Returns the first report that is not clean.
    pub fn validate(&self) -> Report {
        let r = self.base.validate();
        if !r.is_clean() {
            return r;
        }
        if let Some(g) = &self.group {
            let r = g.validate(&self.base);
            if !r.is_clean() {
                return r;
            }
        }
        self.validate_star_structure()
    }

    /// Star graph well-formedness and the translation conditions.
    pub fn validate_star_structure(&self) -> Report {
        let mut report = Report::new();
        let g = &self.base;
        let name = |m: Mor| g.mor_name(m).to_string();

        match &self.topology {
            StarTopology::Graph(e) => {
                let mut seen = BTreeSet::new();
                for &(x, a, b) in &e.raw {
                    if g.src(a) != x || g.src(b) != x {
                        report.push(
                            Rule::StarEdge,
                            [g.obj_name(x).to_string(), name(a), name(b)],
                            format!("edge {}-{} is not inside the star of {}", name(a), name(b), g.obj_name(x)),
                        );
                    }
                    if a == b {
                        report.push(Rule::StarEdge, [name(a)], format!("self-loop at {}", name(a)));
                    }
                    if !seen.insert((a.min(b), a.max(b))) {
                        report.push(
                            Rule::StarEdge,
                            [name(a), name(b)],
                            format!("edge {}-{} listed twice", name(a), name(b)),
                        );
                    }
                }
            }
            StarTopology::Product(f) => {
                report.extend(f.0.validate_star_structure());
                report.extend(f.1.validate_star_structure());
            }
        }
        if !report.is_clean() {
            return report;
        }

        // left translations L_t : G_y → G_x
        for t in g.morphisms() {
            let star = g.star_members(g.tgt(t));
            if let Some((a, b)) = self.broken_edge(star, |h| g.composite(t, h)) {
                report.push(
                    Rule::Translation,
                    [name(t), name(a), name(b)],
                    format!("left translation by {} does not preserve the edge {}-{}", name(t), name(a), name(b)),
                );
            }
        }

        if let Some(grp) = &self.group {
            for k in g.morphisms() {
                for x in g.objects() {
                    let star = g.star_members(x);
                    if let Some((a, b)) = self.broken_edge(star, |h| grp.mor_mul(h, k)) {
                        report.push(
                            Rule::GroupTranslation,
                            [name(k), name(a), name(b)],
                            format!("right product by {} does not preserve the edge {}-{}", name(k), name(a), name(b)),
                        );
                    }
                    if let Some((a, b)) = self.broken_edge(star, |h| grp.mor_mul(k, h)) {
                        report.push(
                            Rule::GroupTranslation,
                            [name(k), name(a), name(b)],
                            format!("left product by {} does not preserve the edge {}-{}", name(k), name(a), name(b)),
                        );
                    }
                }
            }
            for x in g.objects() {
                if let Some((a, b)) = self.broken_edge(g.star_members(x), |h| grp.mor_inv(h)) {
                    report.push(
                        Rule::GroupInversion,
                        [name(a), name(b)],
                        format!("group inversion does not preserve the edge {}-{}", name(a), name(b)),
                    );
                }
            }
        }
        report
    }

    /// First pair in `star` on which `map` fails to be a graph isomorphism
    /// onto a single star.
    fn broken_edge(&self, star: &[Mor], map: impl Fn(Mor) -> Option<Mor>) -> Option<(Mor, Mor)> {
        let image: Vec<Option<Mor>> = star.iter().map(|&h| map(h)).collect();
        let target_star = image.first().copied().flatten().map(|m| self.base.src(m));
        for (i, &a) in star.iter().enumerate() {
            let Some(ia) = image[i] else { return Some((a, a)) };
            if Some(self.base.src(ia)) != target_star {
                return Some((a, a));
            }
            for (j, &b) in star.iter().enumerate().skip(i + 1) {
                let Some(ib) = image[j] else { return Some((b, b)) };
                if ia == ib || self.adjacent(a, b) != self.adjacent(ia, ib) {
                    return Some((a, b));
                }
            }
        }
        if let Some(y) = target_star {
            if self.base.star_members(y).len() != star.len() {
                return star.first().map(|&a| (a, a));
            }
        }
        None
    }

    /// Connectivity of each star graph, indexed by object.
    pub fn star_connected(&self) -> Vec<bool> {
        self.base
            .objects()
            .map(|x| {
                let star = self.base.star_members(x);
                self.component(self.base.ident(x)).len() == star.len()
            })
            .collect()
    }

    /// Whether each star is a tree (for products: both factor stars are).
    pub fn is_tree(&self) -> Vec<bool> {
        match &self.topology {
            StarTopology::Graph(_) => {
                let conn = self.star_connected();
                self.base
                    .objects()
                    .map(|x| {
                        let n = self.base.star_members(x).len();
                        conn[x.0] && self.star_graph(x).edges.len() + 1 == n
                    })
                    .collect()
            }
            StarTopology::Product(f) => {
                let (l, r) = (f.0.is_tree(), f.1.is_tree());
                let idx = self.base.product_index().expect("product index");
                self.base
                    .objects()
                    .map(|x| {
                        let (a, b) = idx.obj_pair(x);
                        l[a.0] && r[b.0]
                    })
                    .collect()
            }
        }
    }

    fn component(&self, from: Mor) -> BTreeSet<Mor> {
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Checks that `p` is an edge path inside a single star.
    pub fn check_path(&self, p: &EdgePath) -> Result<()> {
        let x = self.base.src(p.start);
        let verts: Vec<Mor> = p.vertices().collect();
        for w in verts.windows(2) {
            if self.base.src(w[1]) != x {
                return Err(Error::InvalidPath(format!(
                    "{} is outside the star of {}",
                    self.base.mor_name(w[1]),
                    self.base.obj_name(x)
                )));
            }
            if !self.adjacent(w[0], w[1]) {
                return Err(Error::InvalidPath(format!(
                    "{} and {} are not adjacent",
                    self.base.mor_name(w[0]),
                    self.base.mor_name(w[1])
                )));
            }
        }
        Ok(())
    }

    /// Vertexwise left translation `t ∘ p`; `p` must lie in the star of β(t).
    pub fn left_translate_path(&self, t: Mor, p: &EdgePath) -> Result<EdgePath> {
        p.map(|v| self.base.compose(t, v))
    }
}
