//! Group-groupoids: a groupoid whose object and morphism sets carry group
//! structures for which α, β, ε and the product are groupoid morphisms.
//!
//! Notation follows the usual split: `g∘h` is groupoid composition and
//! [`Groupoid::inv`] the groupoid inverse, while `gh` is the group product
//! ([`GroupStructure::mor_mul`]) and [`GroupStructure::mor_inv`] the group
//! inverse.

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, Mor, Obj};
use crate::report::{Report, Rule};

/// Group tables on the objects and morphisms of a fixed [`Groupoid`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    n_obj: usize,
    n_mor: usize,
    obj_mul: Vec<Option<Obj>>,
    obj_unit: Obj,
    mor_mul: Vec<Option<Mor>>,
    obj_inv: Vec<Option<Obj>>,
    mor_unit: Option<Mor>,
    mor_inv: Vec<Option<Mor>>,
}

impl GroupStructure {
    /// Builds the tables from named triples `a b c` meaning `a·b = c`.
    pub fn from_names<S: AsRef<str>>(
        base: &Groupoid,
        obj_mul: &[(S, S, S)],
        obj_unit: &str,
        mor_mul: &[(S, S, S)],
    ) -> Result<Self> {
        let n_obj = base.num_objects();
        let n_mor = base.num_morphisms();
        let mut otab = vec![None; n_obj * n_obj];
        for (a, b, c) in obj_mul {
            let (a, b, c) = (
                base.object(a.as_ref())?,
                base.object(b.as_ref())?,
                base.object(c.as_ref())?,
            );
            set_entry(&mut otab[a.0 * n_obj + b.0], c, || {
                format!("conflicting object products for {} {}", base.obj_name(a), base.obj_name(b))
            })?;
        }
        let mut mtab = vec![None; n_mor * n_mor];
        for (g, h, k) in mor_mul {
            let (g, h, k) = (
                base.morphism(g.as_ref())?,
                base.morphism(h.as_ref())?,
                base.morphism(k.as_ref())?,
            );
            set_entry(&mut mtab[g.0 * n_mor + h.0], k, || {
                format!("conflicting morphism products for {} {}", base.mor_name(g), base.mor_name(h))
            })?;
        }
        Ok(Self::from_tables(n_obj, n_mor, otab, base.object(obj_unit)?, mtab))
    }

    fn from_tables(
        n_obj: usize,
        n_mor: usize,
        obj_mul: Vec<Option<Obj>>,
        obj_unit: Obj,
        mor_mul: Vec<Option<Mor>>,
    ) -> Self {
        let obj_inv = (0..n_obj)
            .map(|x| unique((0..n_obj).filter(|&y| obj_mul[x * n_obj + y] == Some(obj_unit)).map(Obj)))
            .collect();
        let mor_unit = unique((0..n_mor).filter(|&e| {
            (0..n_mor).all(|g| mor_mul[e * n_mor + g] == Some(Mor(g)) && mor_mul[g * n_mor + e] == Some(Mor(g)))
        }).map(Mor));
        let mor_inv = (0..n_mor)
            .map(|g| {
                let unit = mor_unit?;
                unique((0..n_mor).filter(|&k| mor_mul[g * n_mor + k] == Some(unit)).map(Mor))
            })
            .collect();
        Self {
            n_obj,
            n_mor,
            obj_mul,
            obj_unit,
            mor_mul,
            obj_inv,
            mor_unit,
            mor_inv,
        }
    }

    pub fn obj_mul(&self, x: Obj, y: Obj) -> Option<Obj> {
        self.obj_mul[x.0 * self.n_obj + y.0]
    }

    pub fn obj_unit(&self) -> Obj {
        self.obj_unit
    }

    pub fn obj_inv(&self, x: Obj) -> Option<Obj> {
        self.obj_inv[x.0]
    }

    /// Group product `gh` on morphisms.
    pub fn mor_mul(&self, g: Mor, h: Mor) -> Option<Mor> {
        self.mor_mul[g.0 * self.n_mor + h.0]
    }

    /// The two-sided unit of the morphism group, if the table has one.
    pub fn mor_unit(&self) -> Option<Mor> {
        self.mor_unit
    }

    /// Group inverse `g⁻¹` (distinct from the groupoid inverse).
    pub fn mor_inv(&self, g: Mor) -> Option<Mor> {
        self.mor_inv[g.0]
    }

    pub fn mul(&self, base: &Groupoid, g: Mor, h: Mor) -> Result<Mor> {
        self.mor_mul(g, h).ok_or_else(|| Error::MissingProduct {
            g: base.mor_name(g).to_string(),
            h: base.mor_name(h).to_string(),
        })
    }

    pub fn obj_mul_entries(&self) -> Vec<(Obj, Obj, Obj)> {
        entries(&self.obj_mul, self.n_obj, Obj)
    }

    pub fn mor_mul_entries(&self) -> Vec<(Mor, Mor, Mor)> {
        entries(&self.mor_mul, self.n_mor, Mor)
    }

    /// Componentwise group structure on `Groupoid::product(left, right)`.
    pub fn product(
        product: &Groupoid,
        left: (&Groupoid, &GroupStructure),
        right: (&Groupoid, &GroupStructure),
    ) -> GroupStructure {
        let idx = product
            .product_index()
            .expect("product group structure needs a product groupoid");
        let (n_obj, n_mor) = (product.num_objects(), product.num_morphisms());
        let mut otab = vec![None; n_obj * n_obj];
        for x in product.objects() {
            for y in product.objects() {
                let ((x1, x2), (y1, y2)) = (idx.obj_pair(x), idx.obj_pair(y));
                if let (Some(a), Some(b)) = (left.1.obj_mul(x1, y1), right.1.obj_mul(x2, y2)) {
                    otab[x.0 * n_obj + y.0] = Some(idx.obj(a, b));
                }
            }
        }
        let mut mtab = vec![None; n_mor * n_mor];
        for g in product.morphisms() {
            for h in product.morphisms() {
                let ((g1, g2), (h1, h2)) = (idx.mor_pair(g), idx.mor_pair(h));
                if let (Some(a), Some(b)) = (left.1.mor_mul(g1, h1), right.1.mor_mul(g2, h2)) {
                    mtab[g.0 * n_mor + h.0] = Some(idx.mor(a, b));
                }
            }
        }
        let unit = idx.obj(left.1.obj_unit, right.1.obj_unit);
        Self::from_tables(n_obj, n_mor, otab, unit, mtab)
    }

    /// Group axioms on both sets, homomorphism conditions on α, β, ε, the
    /// unit compatibility `mor_unit = ε(obj_unit)`, and the interchange law
    /// checked over every quadruple with both composites defined.
    pub fn validate(&self, base: &Groupoid) -> Report {
        let mut report = Report::new();
        let oname = |x: usize| base.obj_name(Obj(x)).to_string();
        let mname = |g: usize| base.mor_name(Mor(g)).to_string();

        check_group(
            &mut report,
            "object",
            self.n_obj,
            |a, b| self.obj_mul[a * self.n_obj + b].map(|o| o.0),
            Some(self.obj_unit.0),
            oname,
        );
        check_group(
            &mut report,
            "morphism",
            self.n_mor,
            |a, b| self.mor_mul[a * self.n_mor + b].map(|m| m.0),
            self.mor_unit.map(|m| m.0),
            mname,
        );

        for g in base.morphisms() {
            for h in base.morphisms() {
                let Some(gh) = self.mor_mul(g, h) else { continue };
                let s = self.obj_mul(base.src(g), base.src(h));
                let t = self.obj_mul(base.tgt(g), base.tgt(h));
                if s != Some(base.src(gh)) || t != Some(base.tgt(gh)) {
                    report.push(
                        Rule::Homomorphism,
                        [mname(g.0), mname(h.0), mname(gh.0)],
                        format!(
                            "source/target of {}·{} = {} do not multiply",
                            mname(g.0),
                            mname(h.0),
                            mname(gh.0)
                        ),
                    );
                }
            }
        }
        for x in base.objects() {
            for y in base.objects() {
                let Some(xy) = self.obj_mul(x, y) else { continue };
                if self.mor_mul(base.ident(x), base.ident(y)) != Some(base.ident(xy)) {
                    report.push(
                        Rule::Homomorphism,
                        [oname(x.0), oname(y.0)],
                        format!("ε({}·{}) ≠ ε({})ε({})", oname(x.0), oname(y.0), oname(x.0), oname(y.0)),
                    );
                }
            }
        }

        let e = base.ident(self.obj_unit);
        if self.mor_unit != Some(e) {
            report.push(
                Rule::UnitCompatibility,
                [mname(e.0)],
                format!(
                    "morphism unit is {} but ε({}) = {}",
                    self.mor_unit.map_or("undefined".to_string(), |m| mname(m.0)),
                    oname(self.obj_unit.0),
                    mname(e.0)
                ),
            );
        }

        self.check_interchange(base, &mut report);

        if base.num_objects() == 1 {
            report.note(
                "one object: interchange forces composition and group product to coincide \
                 and to be commutative (Eckmann-Hilton)",
            );
        }
        report
    }

    fn check_interchange(&self, base: &Groupoid, report: &mut Report) {
        let mname = |g: Mor| base.mor_name(g).to_string();
        for g in base.morphisms() {
            for &k in base.star_members(base.tgt(g)) {
                let Some(gk) = base.composite(g, k) else { continue };
                for h in base.morphisms() {
                    let Some(gh) = self.mor_mul(g, h) else { continue };
                    for &l in base.star_members(base.tgt(h)) {
                        let Some(hl) = base.composite(h, l) else { continue };
                        let right = self.mor_mul(gk, hl);
                        let left = self.mor_mul(k, l).and_then(|kl| base.composite(gh, kl));
                        if right.is_some() && left != right {
                            report.push(
                                Rule::Interchange,
                                [mname(g), mname(h), mname(k), mname(l)],
                                format!(
                                    "({}{})∘({}{}) = {} but ({}∘{})({}∘{}) = {}",
                                    mname(g),
                                    mname(h),
                                    mname(k),
                                    mname(l),
                                    left.map_or("undefined".to_string(), mname),
                                    mname(g),
                                    mname(k),
                                    mname(h),
                                    mname(l),
                                    right.map_or("undefined".to_string(), mname),
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
}

fn set_entry<T: PartialEq + Copy>(
    slot: &mut Option<T>,
    value: T,
    conflict: impl FnOnce() -> String,
) -> Result<()> {
    match *slot {
        Some(prev) if prev != value => Err(Error::Malformed(conflict())),
        _ => {
            *slot = Some(value);
            Ok(())
        }
    }
}

fn unique<T>(mut it: impl Iterator<Item = T>) -> Option<T> {
    match (it.next(), it.next()) {
        (Some(a), None) => Some(a),
        _ => None,
    }
}

fn entries<T: Copy>(tab: &[Option<T>], n: usize, wrap: fn(usize) -> T) -> Vec<(T, T, T)> {
    tab.iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|c| (wrap(i / n), wrap(i % n), c)))
        .collect()
}

fn check_group(
    report: &mut Report,
    label: &str,
    n: usize,
    mul: impl Fn(usize, usize) -> Option<usize>,
    unit: Option<usize>,
    name: impl Fn(usize) -> String,
) {
    let mut total = true;
    for a in 0..n {
        for b in 0..n {
            if mul(a, b).is_none() {
                total = false;
                report.push(
                    Rule::GroupTotality,
                    [name(a), name(b)],
                    format!("{label} product {}·{} is missing", name(a), name(b)),
                );
            }
        }
    }
    if total {
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b).unwrap();
                for c in 0..n {
                    let l = mul(ab, c).unwrap();
                    let r = mul(a, mul(b, c).unwrap()).unwrap();
                    if l != r {
                        report.push(
                            Rule::GroupAssociativity,
                            [name(a), name(b), name(c)],
                            format!("{label} product is not associative on ({}, {}, {})", name(a), name(b), name(c)),
                        );
                        break 'assoc;
                    }
                }
            }
        }
    }
    let Some(e) = unit else {
        report.push(Rule::GroupUnit, Vec::<String>::new(), format!("{label} product has no two-sided unit"));
        return;
    };
    for a in 0..n {
        if mul(e, a) != Some(a) || mul(a, e) != Some(a) {
            report.push(
                Rule::GroupUnit,
                [name(e), name(a)],
                format!("{label} unit {} does not fix {}", name(e), name(a)),
            );
        }
        let invs: Vec<usize> = (0..n)
            .filter(|&b| mul(a, b) == Some(e) && mul(b, a) == Some(e))
            .collect();
        if invs.len() != 1 {
            report.push(
                Rule::GroupInverse,
                [name(a)],
                format!("{label} {} has {} two-sided inverses", name(a), invs.len()),
            );
        }
    }
}

/// A groupoid together with compatible group structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupGroupoid {
    pub base: Groupoid,
    pub group: GroupStructure,
}

impl GroupGroupoid {
    pub fn new(base: Groupoid, group: GroupStructure) -> Self {
        Self { base, group }
    }

    /// Groupoid axioms followed by the group-groupoid conditions.
    pub fn validate(&self) -> Report {
        let mut report = self.base.validate();
        report.extend(self.group.validate(&self.base));
        report
    }

    pub fn product(left: &GroupGroupoid, right: &GroupGroupoid) -> GroupGroupoid {
        let base = Groupoid::product(&left.base, &right.base);
        let group = GroupStructure::product(
            &base,
            (&left.base, &left.group),
            (&right.base, &right.group),
        );
        GroupGroupoid { base, group }
    }
}

type Triples = Vec<(String, String, String)>;

/// Convenience used by fixtures: object/morphism product tables from
/// closures over names.
pub(crate) fn tables_from<F, G>(base: &Groupoid, obj: F, mor: G) -> (Triples, Triples)
where
    F: Fn(&str, &str) -> String,
    G: Fn(&str, &str) -> String,
{
    let mut otab = Vec::new();
    for x in base.objects() {
        for y in base.objects() {
            let (a, b) = (base.obj_name(x), base.obj_name(y));
            otab.push((a.to_string(), b.to_string(), obj(a, b)));
        }
    }
    let mut mtab = Vec::new();
    for g in base.morphisms() {
        for h in base.morphisms() {
            let (a, b) = (base.mor_name(g), base.mor_name(h));
            mtab.push((a.to_string(), b.to_string(), mor(a, b)));
        }
    }
    (otab, mtab)
}
