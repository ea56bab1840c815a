//! The GGD v1 text format for starred (group-)groupoids.
//!
//! ```text
//! ggd 1
//! [objects]            # object names
//! [object-product]     # x y z   meaning x·y = z   (optional)
//! [object-unit]        # one name                  (optional)
//! [morphisms]          # name src tgt
//! [identities]         # name obj
//! [compose]            # g h k   meaning g∘h = k
//! [morphism-product]   # g h k   meaning g·h = k   (optional)
//! [star-edges]         # obj g h, an undirected edge in star(obj)
//! [W]                  # morphism names            (optional)
//! [V]                  # morphism names            (optional)
//! [local-morphism H]   # u v     meaning f(u) = v, H a path (optional)
//! ```
//!
//! `#` starts a comment. Tokens are separated by whitespace. Each section
//! appears at most once, and the three group sections come all together or
//! not at all. Inverses are never written; they are derived.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::group_groupoid::GroupStructure;
use crate::groupoid::{Groupoid, GroupoidBuilder, Mor};
use crate::presentation::{WSet, Word};
use crate::star::{EdgePath, StarredGroupoid};

type Triple = (String, String, String);

/// The `[local-morphism H]` section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSpec {
    pub target: String,
    pub pairs: Vec<(String, String)>,
}

/// A parsed file, before any semantic checks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GgdDocument {
    pub version: u32,
    pub objects: Vec<String>,
    pub object_product: Option<Vec<Triple>>,
    pub object_unit: Option<String>,
    pub morphisms: Vec<Triple>,
    pub identities: Vec<(String, String)>,
    pub compose: Vec<Triple>,
    pub morphism_product: Option<Vec<Triple>>,
    pub star_edges: Vec<Triple>,
    pub w: Option<Vec<String>>,
    pub v: Option<Vec<String>>,
    pub local_morphism: Option<LocalSpec>,
}

/// The result of [`GgdDocument::load`].
#[derive(Debug, Clone)]
pub struct Loaded {
    pub sg: StarredGroupoid,
    pub w: Option<WSet>,
    pub v: Option<WSet>,
    pub local: Option<LocalSpec>,
}

const SECTIONS: [&str; 11] = [
    "objects",
    "object-product",
    "object-unit",
    "morphisms",
    "identities",
    "compose",
    "morphism-product",
    "star-edges",
    "W",
    "V",
    "local-morphism",
];

const REQUIRED: [&str; 5] = ["objects", "morphisms", "identities", "compose", "star-edges"];

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn triple(line: usize, t: &[&str]) -> Result<Triple> {
    match t {
        [a, b, c] => Ok((a.to_string(), b.to_string(), c.to_string())),
        _ => Err(err(line, format!("expected 3 tokens, found {}", t.len()))),
    }
}

impl GgdDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = GgdDocument::default();
        let mut header = false;
        let mut current: Option<&'static str> = None;
        let mut seen: BTreeSet<&'static str> = BTreeSet::new();
        let mut object_names = BTreeSet::new();
        let mut morphism_names = BTreeSet::new();
        let mut last = 0;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if !header {
                match tokens.as_slice() {
                    ["ggd", "1"] => {
                        doc.version = 1;
                        header = true;
                        continue;
                    }
                    ["ggd", v] => return Err(err(line, format!("unsupported version {v}"))),
                    _ => return Err(err(line, "expected header `ggd 1`")),
                }
            }
            if let Some(inner) = content.strip_prefix('[') {
                let inner = inner
                    .strip_suffix(']')
                    .ok_or_else(|| err(line, "unterminated section header"))?;
                let mut parts = inner.split_whitespace();
                let name = parts.next().unwrap_or("");
                let section = SECTIONS
                    .iter()
                    .copied()
                    .find(|s| *s == name)
                    .ok_or_else(|| err(line, format!("unknown section [{name}]")))?;
                if !seen.insert(section) {
                    return Err(err(line, format!("section [{section}] appears twice")));
                }
                let rest: Vec<&str> = parts.collect();
                match (section, rest.as_slice()) {
                    ("local-morphism", [target]) => {
                        doc.local_morphism = Some(LocalSpec {
                            target: target.to_string(),
                            pairs: Vec::new(),
                        })
                    }
                    ("local-morphism", _) => {
                        return Err(err(line, "[local-morphism] needs one target path"))
                    }
                    (_, []) => {}
                    _ => return Err(err(line, format!("[{section}] takes no arguments"))),
                }
                match section {
                    "object-product" => doc.object_product = Some(Vec::new()),
                    "morphism-product" => doc.morphism_product = Some(Vec::new()),
                    "W" => doc.w = Some(Vec::new()),
                    "V" => doc.v = Some(Vec::new()),
                    _ => {}
                }
                current = Some(section);
                continue;
            }
            let section = current.ok_or_else(|| err(line, "content before the first section"))?;
            match section {
                "objects" => {
                    for t in &tokens {
                        if !object_names.insert(t.to_string()) {
                            return Err(err(line, format!("duplicate object `{t}`")));
                        }
                        doc.objects.push(t.to_string());
                    }
                }
                "object-product" => doc.object_product.as_mut().unwrap().push(triple(line, &tokens)?),
                "object-unit" => match tokens.as_slice() {
                    [u] if doc.object_unit.is_none() => doc.object_unit = Some(u.to_string()),
                    _ => return Err(err(line, "[object-unit] holds exactly one name")),
                },
                "morphisms" => {
                    let t = triple(line, &tokens)?;
                    if !morphism_names.insert(t.0.clone()) {
                        return Err(err(line, format!("duplicate morphism `{}`", t.0)));
                    }
                    doc.morphisms.push(t);
                }
                "identities" => match tokens.as_slice() {
                    [m, x] => doc.identities.push((m.to_string(), x.to_string())),
                    _ => return Err(err(line, "expected `morphism object`")),
                },
                "compose" => doc.compose.push(triple(line, &tokens)?),
                "morphism-product" => doc.morphism_product.as_mut().unwrap().push(triple(line, &tokens)?),
                "star-edges" => doc.star_edges.push(triple(line, &tokens)?),
                "W" => doc.w.as_mut().unwrap().extend(tokens.iter().map(|t| t.to_string())),
                "V" => doc.v.as_mut().unwrap().extend(tokens.iter().map(|t| t.to_string())),
                "local-morphism" => {
                    let pair = match tokens.as_slice() {
                        [u, v] | [u, "->", v] => (u.to_string(), v.to_string()),
                        _ => return Err(err(line, "expected `u v`")),
                    };
                    doc.local_morphism.as_mut().unwrap().pairs.push(pair);
                }
                _ => unreachable!(),
            }
        }

        if !header {
            return Err(err(last.max(1), "expected header `ggd 1`"));
        }
        for r in REQUIRED {
            if !seen.contains(r) {
                return Err(err(last, format!("missing section [{r}]")));
            }
        }
        let group = ["object-product", "object-unit", "morphism-product"];
        let present = group.iter().filter(|s| seen.contains(*s)).count();
        if present != 0 && present != group.len() {
            return Err(err(
                last,
                "group sections [object-product], [object-unit], [morphism-product] must appear together",
            ));
        }
        if seen.contains("object-unit") && doc.object_unit.is_none() {
            return Err(err(last, "[object-unit] is empty"));
        }
        Ok(doc)
    }

    pub fn emit(&self) -> String {
        let mut out = format!("ggd {}\n", self.version);
        let mut section = |name: &str, lines: Vec<String>| {
            out.push_str(&format!("[{name}]\n"));
            for l in lines {
                out.push_str(&l);
                out.push('\n');
            }
        };
        let triples = |t: &[Triple]| t.iter().map(|(a, b, c)| format!("{a} {b} {c}")).collect();

        section("objects", self.objects.clone());
        if let Some(t) = &self.object_product {
            section("object-product", triples(t));
        }
        if let Some(u) = &self.object_unit {
            section("object-unit", vec![u.clone()]);
        }
        section("morphisms", triples(&self.morphisms));
        section(
            "identities",
            self.identities.iter().map(|(m, x)| format!("{m} {x}")).collect(),
        );
        section("compose", triples(&self.compose));
        if let Some(t) = &self.morphism_product {
            section("morphism-product", triples(t));
        }
        section("star-edges", triples(&self.star_edges));
        if let Some(w) = &self.w {
            section("W", w.clone());
        }
        if let Some(v) = &self.v {
            section("V", v.clone());
        }
        if let Some(l) = &self.local_morphism {
            section(
                &format!("local-morphism {}", l.target),
                l.pairs.iter().map(|(u, v)| format!("{u} {v}")).collect(),
            );
        }
        out
    }

    /// The document describing `sg`, without the optional `W`, `V` and
    /// local-morphism sections. Product ambients have no explicit edges.
    pub fn from_starred(sg: &StarredGroupoid) -> Self {
        let g = sg.base();
        let mn = |m: Mor| g.mor_name(m).to_string();
        let mut doc = GgdDocument {
            version: 1,
            objects: g.objects().map(|x| g.obj_name(x).to_string()).collect(),
            morphisms: g
                .morphisms()
                .map(|m| (mn(m), g.obj_name(g.src(m)).to_string(), g.obj_name(g.tgt(m)).to_string()))
                .collect(),
            identities: g
                .objects()
                .map(|x| (mn(g.ident(x)), g.obj_name(x).to_string()))
                .collect(),
            compose: g
                .compose_entries()
                .into_iter()
                .map(|(a, b, c)| (mn(a), mn(b), mn(c)))
                .collect(),
            star_edges: sg
                .edge_list()
                .iter()
                .map(|&(x, a, b)| (g.obj_name(x).to_string(), mn(a), mn(b)))
                .collect(),
            ..Default::default()
        };
        if let Some(gs) = sg.group() {
            let on = |x| g.obj_name(x).to_string();
            doc.object_product = Some(
                gs.obj_mul_entries()
                    .into_iter()
                    .map(|(a, b, c)| (on(a), on(b), on(c)))
                    .collect(),
            );
            doc.object_unit = Some(on(gs.obj_unit()));
            doc.morphism_product = Some(
                gs.mor_mul_entries()
                    .into_iter()
                    .map(|(a, b, c)| (mn(a), mn(b), mn(c)))
                    .collect(),
            );
        }
        doc
    }

    /// Builds the starred groupoid and runs every structural validator;
    /// the first failing report is returned as [`Error::Invalid`].
    pub fn load(&self) -> Result<Loaded> {
        let mut b = GroupoidBuilder::new();
        for x in &self.objects {
            b.object(x);
        }
        for (m, s, t) in &self.morphisms {
            b.morphism(m, s, t);
        }
        for (m, x) in &self.identities {
            b.identity(m, x);
        }
        for (g, h, k) in &self.compose {
            b.compose(g, h, k);
        }
        let base = b.build()?;
        let group = match (&self.object_product, &self.object_unit, &self.morphism_product) {
            (Some(op), Some(unit), Some(mp)) => Some(GroupStructure::from_names(&base, op, unit, mp)?),
            _ => None,
        };
        let sg = StarredGroupoid::from_names(base, group, &self.star_edges)?;
        let report = sg.validate();
        if !report.is_clean() {
            return Err(Error::Invalid(report));
        }
        let g = sg.base();
        let w = self.w.as_ref().map(|w| WSet::from_names(g, w)).transpose()?;
        let v = self.v.as_ref().map(|v| WSet::from_names(g, v)).transpose()?;
        Ok(Loaded {
            w,
            v,
            local: self.local_morphism.clone(),
            sg,
        })
    }
}

/// Reads and parses a file.
pub fn read(path: &Path) -> Result<GgdDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    GgdDocument::parse(&text)
}

/// Resolves the target of a local-morphism section relative to the file
/// that names it.
pub fn resolve_target(file: &Path, target: &str) -> PathBuf {
    let t = Path::new(target);
    if t.is_absolute() {
        return t.to_path_buf();
    }
    file.parent().map_or_else(|| t.to_path_buf(), |d| d.join(t))
}

/// Splits `[a,b,c]` at top-level commas; names may contain parenthesized
/// commas such as `(0,1)`.
fn split_list(text: &str) -> Option<Vec<String>> {
    let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?;
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in inner.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if depth != 0 {
        return None;
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    if out.iter().any(String::is_empty) {
        return None;
    }
    Some(out)
}

/// `[u1,u2,…]`, or `[@x]` for the empty word at `x`.
pub fn parse_word(g: &Groupoid, text: &str) -> Result<Word> {
    let items = split_list(text).ok_or_else(|| Error::InvalidWord(format!("cannot read `{text}`")))?;
    if let [only] = items.as_slice() {
        if let Some(x) = only.strip_prefix('@') {
            return Ok(Word::empty(g.object(x)?));
        }
    }
    let letters = items
        .iter()
        .map(|n| g.morphism(n))
        .collect::<Result<Vec<_>>>()?;
    let first = *letters
        .first()
        .ok_or_else(|| Error::InvalidWord("empty word needs a base, as in [@x]".into()))?;
    Word::new(g, g.src(first), letters)
}

/// `[v0,v1,…]`: the vertices of an edge path in one star.
pub fn parse_path(g: &Groupoid, text: &str) -> Result<EdgePath> {
    let items = split_list(text).ok_or_else(|| Error::InvalidPath(format!("cannot read `{text}`")))?;
    let verts = items
        .iter()
        .map(|n| g.morphism(n))
        .collect::<Result<Vec<_>>>()?;
    EdgePath::from_vertices(&verts).ok_or_else(|| Error::InvalidPath("a path needs a vertex".into()))
}
