//! Admissible local sections over a discrete object space, their germs,
//! and the holonomy groupoid `Hol(G,W) = J^c(G,W)/J₀`.
//!
//! With discrete objects a germ `[s]_x` is determined by `(x, s(x))`, so
//! the quotient degenerates to the subgroupoid generated by `W`. The
//! construction below still goes through the germ closure and the kernel
//! of `ψ` so that this degeneracy is computed rather than assumed.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidBuilder, Mor, Obj};
use crate::presentation::WSet;
use crate::report::{Report, Rule};

/// A partial map `s: D_s → G` with `α(s(x)) = x` and `x ↦ β(s(x))`
/// injective.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Section {
    values: BTreeMap<Obj, Mor>,
}

impl Section {
    pub fn new(g: &Groupoid, values: impl IntoIterator<Item = (Obj, Mor)>) -> Result<Self> {
        let s = Self {
            values: values.into_iter().collect(),
        };
        let report = s.validate(g);
        if report.is_clean() {
            Ok(s)
        } else {
            Err(Error::Refused(format!("not an admissible section: {report}")))
        }
    }

    pub fn from_names(g: &Groupoid, values: &[(&str, &str)]) -> Result<Self> {
        let pairs = values
            .iter()
            .map(|(x, m)| Ok((g.object(x)?, g.morphism(m)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, pairs)
    }

    pub fn singleton(g: &Groupoid, w: Mor) -> Self {
        Self {
            values: BTreeMap::from([(g.src(w), w)]),
        }
    }

    pub fn identity(g: &Groupoid, domain: impl IntoIterator<Item = Obj>) -> Self {
        Self {
            values: domain.into_iter().map(|x| (x, g.ident(x))).collect(),
        }
    }

    pub fn domain(&self) -> impl Iterator<Item = Obj> + '_ {
        self.values.keys().copied()
    }

    pub fn value(&self, x: Obj) -> Option<Mor> {
        self.values.get(&x).copied()
    }

    pub fn values(&self) -> impl Iterator<Item = (Obj, Mor)> + '_ {
        self.values.iter().map(|(&x, &m)| (x, m))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_w_valued(&self, w: &WSet) -> bool {
        self.values.values().all(|&m| w.contains(m))
    }

    pub fn validate(&self, g: &Groupoid) -> Report {
        let mut report = Report::new();
        let mut seen: BTreeMap<Obj, Obj> = BTreeMap::new();
        for (&x, &m) in &self.values {
            if g.src(m) != x {
                report.push(
                    Rule::SectionSource,
                    [g.obj_name(x).to_string(), g.mor_name(m).to_string()],
                    format!("{} does not start at {}", g.mor_name(m), g.obj_name(x)),
                );
            }
            if let Some(prev) = seen.insert(g.tgt(m), x) {
                report.push(
                    Rule::SectionInjective,
                    [g.obj_name(prev).to_string(), g.obj_name(x).to_string()],
                    format!("{} and {} have the same target", g.obj_name(prev), g.obj_name(x)),
                );
            }
        }
        report
    }

    /// `(st)x = s(x)∘t(βs(x))` on `{x ∈ D_s : βs(x) ∈ D_t}`. The flag says
    /// whether the product is composable, i.e. `D_st = D_s`.
    pub fn product(&self, g: &Groupoid, t: &Section) -> (Section, bool) {
        let values: BTreeMap<Obj, Mor> = self
            .values
            .iter()
            .filter_map(|(&x, &m)| {
                let tm = t.value(g.tgt(m))?;
                Some((x, g.composite(m, tm).expect("composable by construction")))
            })
            .collect();
        let composable = values.len() == self.values.len();
        (Section { values }, composable)
    }

    pub fn mul(&self, g: &Groupoid, t: &Section) -> Section {
        self.product(g, t).0
    }

    /// `s⁻¹(βs(x)) = s(x)⁻¹` on `βs(D_s)`.
    pub fn inverse(&self, g: &Groupoid) -> Section {
        Section {
            values: self
                .values
                .values()
                .map(|&m| (g.tgt(m), g.inv(m).expect("valid groupoid")))
                .collect(),
        }
    }

    pub fn restrict(&self, domain: &BTreeSet<Obj>) -> Section {
        Section {
            values: self
                .values
                .iter()
                .filter(|(x, _)| domain.contains(x))
                .map(|(&x, &m)| (x, m))
                .collect(),
        }
    }

    pub fn germ(&self, x: Obj) -> Option<Germ> {
        Some(Germ {
            at: x,
            value: self.value(x)?,
        })
    }

    pub fn display(&self, g: &Groupoid) -> String {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(&x, &m)| format!("{}↦{}", g.obj_name(x), g.mor_name(m)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// The germ `[s]_x`, determined by `(x, s(x))` over discrete objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Germ {
    pub at: Obj,
    pub value: Mor,
}

impl Germ {
    /// `[s]_x [t]_{βs(x)} = [st]_x`; `None` unless `t` is taken at `βs(x)`.
    pub fn product(&self, g: &Groupoid, other: &Germ) -> Option<Germ> {
        if other.at != g.tgt(self.value) {
            return None;
        }
        Some(Germ {
            at: self.at,
            value: g.composite(self.value, other.value)?,
        })
    }

    pub fn inverse(&self, g: &Groupoid) -> Germ {
        Germ {
            at: g.tgt(self.value),
            value: g.inv(self.value).expect("valid groupoid"),
        }
    }

    /// `ψ([s]_x) = s(x)`.
    pub fn psi(&self) -> Mor {
        self.value
    }
}

/// For every `w ∈ W` the singleton section `{α(w) ↦ w}`, which satisfies
/// `s(α w) = w` and `s(D_s) ⊆ W`.
pub fn enough_sections(g: &Groupoid, w: &WSet) -> Vec<(Mor, Section)> {
    w.iter().map(|u| (u, Section::singleton(g, u))).collect()
}

/// Every admissible section with `1 ≤ |D_s| ≤ max_domain`, in a fixed
/// order.
pub fn enumerate_sections(g: &Groupoid, max_domain: usize) -> Vec<Section> {
    fn go(
        g: &Groupoid,
        objects: &[Obj],
        from: usize,
        max: usize,
        current: &mut Section,
        used: &mut BTreeSet<Obj>,
        out: &mut Vec<Section>,
    ) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        if current.len() == max {
            return;
        }
        for (i, &x) in objects.iter().enumerate().skip(from) {
            for &m in g.star_members(x) {
                if used.insert(g.tgt(m)) {
                    current.values.insert(x, m);
                    go(g, objects, i + 1, max, current, used, out);
                    current.values.remove(&x);
                    used.remove(&g.tgt(m));
                }
            }
        }
    }
    let objects: Vec<Obj> = g.objects().collect();
    let mut out = Vec::new();
    go(g, &objects, 0, max_domain, &mut Section::default(), &mut BTreeSet::new(), &mut out);
    out
}

/// `Hol(G,W)` together with `φ: Hol → G`.
#[derive(Debug, Clone)]
pub struct Holonomy {
    pub groupoid: Groupoid,
    /// `φ`, indexed by the morphisms of `groupoid`.
    pub phi: Vec<Mor>,
    /// Germ closure `J^c(G,W)`.
    pub germs: BTreeSet<Germ>,
    /// `J₀ = J^c ∩ ker ψ`.
    pub kernel: BTreeSet<Germ>,
    pub kernel_normal: bool,
    pub generates: bool,
}

impl Holonomy {
    pub fn phi(&self, m: Mor) -> Mor {
        self.phi[m.index()]
    }

    /// Whether `φ` is an isomorphism onto the subgroupoid generated by `W`.
    pub fn is_iso_onto_generated(&self, g: &Groupoid, w: &WSet) -> bool {
        let image: BTreeSet<Mor> = self.phi.iter().copied().collect();
        image.len() == self.phi.len() && image == g.subgroupoid_generated(w.iter()).members
    }
}

/// Builds `Hol(G,W)`. `W` must contain the identities and be closed under
/// inversion; whether it also generates `G` is recorded, not required.
pub fn holonomy(g: &Groupoid, w: &WSet) -> Result<Holonomy> {
    let mut report = Report::new();
    for x in g.objects() {
        if !w.contains(g.ident(x)) {
            report.push(Rule::WIdentities, [g.obj_name(x).to_string()], "identity missing from W");
        }
    }
    for u in w.iter() {
        if !g.inv(u).is_some_and(|k| w.contains(k)) {
            report.push(Rule::WInverse, [g.mor_name(u).to_string()], "inverse missing from W");
        }
    }
    if !report.is_clean() {
        return Err(Error::Hypotheses(report));
    }

    // germs of products of W-valued singleton sections
    let mut germs: BTreeSet<Germ> = enough_sections(g, w)
        .iter()
        .filter_map(|(u, s)| s.germ(g.src(*u)))
        .collect();
    loop {
        let mut fresh = Vec::new();
        for a in &germs {
            for b in &germs {
                if let Some(c) = a.product(g, b) {
                    if !germs.contains(&c) {
                        fresh.push(c);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        germs.extend(fresh);
    }
    let kernel: BTreeSet<Germ> = germs
        .iter()
        .copied()
        .filter(|a| g.is_identity(a.psi()))
        .collect();
    let kernel_normal = germs.iter().all(|a| {
        kernel.iter().filter(|j| j.at == g.tgt(a.value)).all(|j| {
            a.product(g, j)
                .and_then(|aj| aj.product(g, &a.inverse(g)))
                .is_some_and(|c| kernel.contains(&c))
        })
    });

    // a ~ b iff they share a source and a⁻¹b ∈ J₀
    let mut classes: Vec<Vec<Germ>> = Vec::new();
    for &a in &germs {
        let home = classes.iter_mut().find(|c| {
            let rep = c[0];
            rep.at == a.at
                && rep
                    .inverse(g)
                    .product(g, &a)
                    .is_some_and(|k| kernel.contains(&k))
        });
        match home {
            Some(c) => c.push(a),
            None => classes.push(vec![a]),
        }
    }

    let class_of = |a: &Germ| classes.iter().position(|c| c.contains(a)).unwrap();
    let class_name = |i: usize| format!("<{}>", g.mor_name(classes[i][0].psi()));
    let mut b = GroupoidBuilder::new();
    for x in g.objects() {
        b.object(g.obj_name(x));
    }
    for (i, c) in classes.iter().enumerate() {
        let rep = c[0];
        b.morphism(class_name(i), g.obj_name(rep.at), g.obj_name(g.tgt(rep.value)));
        if g.is_identity(rep.value) {
            b.identity(class_name(i), g.obj_name(rep.at));
        }
    }
    for a in &germs {
        for c in &germs {
            if let Some(ac) = a.product(g, c) {
                b.compose(class_name(class_of(a)), class_name(class_of(c)), class_name(class_of(&ac)));
            }
        }
    }
    let groupoid = b.build()?;
    let by_name: BTreeMap<String, Mor> = (0..classes.len())
        .map(|i| (class_name(i), classes[i][0].psi()))
        .collect();
    let phi = groupoid
        .morphisms()
        .map(|m| by_name[groupoid.mor_name(m)])
        .collect();
    Ok(Holonomy {
        groupoid,
        phi,
        germs,
        kernel,
        kernel_normal,
        generates: g.subgroupoid_generated(w.iter()).generates,
    })
}

/// For every product of at most `max_len` singleton `W`-sections whose
/// value at `x` is `ε(x)`, checks that the restriction to `{x}` is again a
/// `W`-section. The report notes how many products were examined.
pub fn check_extendibility(g: &Groupoid, w: &WSet, max_len: usize) -> Report {
    let mut report = Report::new();
    for x in g.objects() {
        if !w.contains(g.ident(x)) {
            report.push(Rule::WIdentities, [g.obj_name(x).to_string()], "identity missing from W");
        }
    }
    let singles: Vec<Section> = enough_sections(g, w).into_iter().map(|(_, s)| s).collect();
    let mut frontier: Vec<Section> = singles.clone();
    let mut checked = 0usize;
    let mut identities = 0usize;
    for len in 1..=max_len {
        for s in &frontier {
            checked += 1;
            for (x, m) in s.values() {
                if m != g.ident(x) {
                    continue;
                }
                identities += 1;
                let r = s.restrict(&BTreeSet::from([x]));
                if !r.is_w_valued(w) {
                    report.push(
                        Rule::Extendibility,
                        [g.obj_name(x).to_string()],
                        format!("restriction to {} leaves W", g.obj_name(x)),
                    );
                }
            }
        }
        if len == max_len {
            break;
        }
        frontier = frontier
            .iter()
            .flat_map(|s| singles.iter().map(move |t| s.mul(g, t)))
            .filter(|s| !s.is_empty())
            .collect();
    }
    report.note(format!(
        "checked {checked} products of length ≤ {max_len}, {identities} with identity values"
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn product_examples() {
        let sg = fixtures::l3p();
        let g = sg.base();
        let s = Section::from_names(g, &[("0", "(0,1)")]).unwrap();
        let t = Section::from_names(g, &[("1", "(1,2)")]).unwrap();
        let (st, composable) = s.product(g, &t);
        assert_eq!(st, Section::from_names(g, &[("0", "(0,2)")]).unwrap());
        assert!(composable);

        let id = Section::identity(g, [g.object("1").unwrap()]);
        assert_eq!(s.mul(g, &id), s);

        let far = Section::from_names(g, &[("2", "(2,2)")]).unwrap();
        let (empty, composable) = s.product(g, &far);
        assert!(empty.is_empty() && !composable);
    }

    #[test]
    fn inverse_examples() {
        let sg = fixtures::l3p();
        let g = sg.base();
        let s = Section::from_names(g, &[("0", "(0,1)")]).unwrap();
        assert_eq!(s.inverse(g), Section::from_names(g, &[("1", "(1,0)")]).unwrap());
        let id = Section::identity(g, g.objects());
        assert_eq!(id.inverse(g), id);
    }

    #[test]
    fn admissibility_is_checked() {
        let g = fixtures::p3();
        let g = g.base();
        assert!(Section::from_names(g, &[("0", "(1,2)")]).is_err());
        let err = Section::from_names(g, &[("0", "(0,2)"), ("1", "(1,2)")]).unwrap_err();
        assert!(err.to_string().contains("section-injective"));
    }

    #[test]
    fn inverse_semigroup_laws() {
        for sg in [fixtures::p3(), fixtures::l3p(), fixtures::p2(), fixtures::c3g()] {
            let g = sg.base();
            let all = enumerate_sections(g, 2);
            for s in &all {
                assert_eq!(s.mul(g, &s.inverse(g)).mul(g, s), *s);
            }
            let idem: Vec<&Section> = all.iter().filter(|s| s.mul(g, s) == **s).collect();
            for e in &idem {
                for f in &idem {
                    assert_eq!(e.mul(g, f), f.mul(g, e));
                }
            }
        }
    }

    #[test]
    fn section_counts() {
        let sg = fixtures::p2();
        // four singletons, plus two-object sections with distinct targets
        assert_eq!(enumerate_sections(sg.base(), 2).len(), 6);
    }

    #[test]
    fn psi_is_a_morphism() {
        let sg = fixtures::l3p();
        let g = sg.base();
        let germs: Vec<Germ> = enumerate_sections(g, 1)
            .iter()
            .map(|s| s.germ(s.domain().next().unwrap()).unwrap())
            .collect();
        assert_eq!(germs.len(), 9);
        for a in &germs {
            for b in &germs {
                if let Some(ab) = a.product(g, b) {
                    assert_eq!(ab.psi(), g.compose(a.psi(), b.psi()).unwrap());
                }
            }
        }
        let x = g.object("0").unwrap();
        assert_eq!(Section::identity(g, [x]).germ(x).unwrap().psi(), g.ident(x));
    }

    #[test]
    fn enough_sections_witnesses() {
        for sg in fixtures::all() {
            let g = sg.base();
            for (u, s) in enough_sections(g, &fixtures::distance_one(&sg)) {
                assert!(s.validate(g).is_clean());
                assert_eq!(s.value(g.src(u)), Some(u));
                assert_eq!(s.len(), 1);
            }
        }
    }

    #[test]
    fn holonomy_examples() {
        let sg = fixtures::l3p();
        let g = sg.base();

        let full = holonomy(g, &WSet::full(g)).unwrap();
        assert_eq!(full.groupoid.num_morphisms(), 9);
        assert!(full.is_iso_onto_generated(g, &WSet::full(g)));

        let w = fixtures::distance_one(&sg);
        let hol = holonomy(g, &w).unwrap();
        assert!(hol.generates && hol.kernel_normal);
        assert_eq!(hol.groupoid.num_morphisms(), 9);
        assert!(hol.groupoid.validate().is_clean());
        assert_eq!(hol.kernel.len(), 3);

        let ids = WSet::identities(g);
        let hol = holonomy(g, &ids).unwrap();
        assert!(!hol.generates);
        assert_eq!(hol.groupoid.num_morphisms(), 3);
        assert!(hol.groupoid.morphisms().all(|m| hol.groupoid.is_identity(m)));
    }

    #[test]
    fn phi_commutes_with_composition() {
        let sg = fixtures::p6();
        let g = sg.base();
        let hol = holonomy(g, &fixtures::distance_one(&sg)).unwrap();
        let h = &hol.groupoid;
        for (a, b, c) in h.compose_entries() {
            assert_eq!(g.compose(hol.phi(a), hol.phi(b)).unwrap(), hol.phi(c));
        }
    }

    #[test]
    fn holonomy_refuses_without_identities() {
        let sg = fixtures::l3p();
        let g = sg.base();
        let w = WSet::new([g.morphism("(0,1)").unwrap(), g.morphism("(1,0)").unwrap()]);
        assert!(matches!(holonomy(g, &w), Err(Error::Hypotheses(r)) if r.has(Rule::WIdentities)));
    }

    #[test]
    fn extendibility_passes() {
        let sg = fixtures::l3p();
        let g = sg.base();
        let r = check_extendibility(g, &fixtures::distance_one(&sg), 3);
        assert!(r.is_clean(), "{r}");
        assert!(r.notes[0].starts_with("checked"));
    }
}
