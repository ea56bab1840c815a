//! The `ggd` command line. [`run`] returns the exit code and the full
//! report text so that the binary stays a thin wrapper and tests can
//! drive every command in-process.
//!
//! Exit codes: 0 on success or a true answer, 1 on a false answer or a
//! failed validation, 2 on usage and parse errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::ggd::{self, Loaded};
use crate::groupoid::{Groupoid, Mor};
use crate::monodromy::{check_product, MonMor, Monodromy};
use crate::presentation::{check_hypotheses, Presentation, WSet};
use crate::principle::{Extension, LocalMorphism, TieBreak};
use crate::sections::{self, enumerate_sections, Germ};
use crate::star::StarredGroupoid;

#[derive(Debug, Parser)]
#[command(name = "ggd", about = "Checks on starred groupoids stored in GGD files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every structural validator.
    Validate { file: PathBuf },
    /// List the star of Mon(G) at an object up to a path length.
    Mon {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Compose two elements of Mon(G) given as vertex lists.
    MonCompose {
        file: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Decide equality of two words in M(G,W).
    MgwEq {
        file: PathBuf,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
    },
    /// Globalize the file's local morphism on a word or a morphism.
    Extend {
        file: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long, conflicts_with = "morphism", required_unless_present = "morphism")]
        word: Option<String>,
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Check Mon(G×H) ≅ Mon(G)×Mon(H) on bounded balls.
    ProductCheck {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Build Hol(G,W) and compare it with the subgroupoid generated by W.
    Holonomy { file: PathBuf },
    /// Inverse-semigroup laws, ψ and extendibility on local sections.
    Sections {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_domain: usize,
    },
}

/// Exit code and report text for one invocation (`args[0]` is the program
/// name).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, e.render().to_string());
        }
    };
    let mut out = String::new();
    let code = match dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            exit_code(&e)
        }
    };
    (code, out)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Io(_)
        | Error::InvalidWord(_)
        | Error::InvalidPath(_)
        | Error::UnknownObject(_)
        | Error::UnknownMorphism(_) => 2,
        _ => 1,
    }
}

type Out<'a> = &'a mut String;

fn load(path: &Path) -> Result<Loaded, Error> {
    let doc = ggd::read(path)?;
    match doc.load() {
        // dangling or conflicting tables are validation failures, not parse errors
        Err(e @ (Error::UnknownObject(_) | Error::UnknownMorphism(_))) => {
            Err(Error::Malformed(e.to_string()))
        }
        other => other,
    }
}

fn show_path(g: &Groupoid, a: &MonMor) -> String {
    let names: Vec<&str> = a.path().vertices().map(|v| g.mor_name(v)).collect();
    format!("[{}]", names.join(","))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(command: Command, out: Out) -> Result<i32, Error> {
    match command {
        Command::Validate { file } => validate(&file, out),
        Command::Mon {
            file,
            object,
            max_len,
        } => mon(&file, &object, max_len, out),
        Command::MonCompose { file, a, b } => mon_compose(&file, &a, &b, out),
        Command::MgwEq { file, w1, w2 } => mgw_eq(&file, &w1, &w2, out),
        Command::Extend {
            file,
            target,
            word,
            morphism,
        } => extend(&file, target.as_deref(), word.as_deref(), morphism.as_deref(), out),
        Command::ProductCheck {
            left,
            right,
            max_len,
        } => product_check(&left, &right, max_len, out),
        Command::Holonomy { file } => holonomy(&file, out),
        Command::Sections { file, max_domain } => sections_check(&file, max_domain, out),
    }
}

fn validate(file: &Path, out: Out) -> Result<i32, Error> {
    let loaded = match load(file) {
        Ok(l) => l,
        Err(Error::Invalid(report)) => {
            let _ = write!(out, "invalid\n{report}");
            return Ok(1);
        }
        Err(e) => return Err(e),
    };
    let sg = &loaded.sg;
    let g = sg.base();
    let _ = writeln!(out, "valid");
    let _ = writeln!(out, "objects: {}", g.num_objects());
    let _ = writeln!(out, "morphisms: {}", g.num_morphisms());
    let _ = writeln!(out, "group structure: {}", yes(sg.group().is_some()));
    let _ = writeln!(out, "stars connected: {}", yes(sg.star_connected().iter().all(|&b| b)));
    let _ = writeln!(out, "stars are trees: {}", yes(sg.is_tree().iter().all(|&b| b)));
    if let Some(gs) = sg.group() {
        for note in gs.validate(g).notes {
            let _ = writeln!(out, "note: {note}");
        }
    }
    if let Some(w) = &loaded.w {
        let report = check_hypotheses(sg, w, loaded.v.as_ref());
        if report.is_clean() {
            let _ = writeln!(out, "W: {} morphisms, covering hypotheses hold", w.len());
        } else {
            let _ = write!(out, "W: {} morphisms, covering hypotheses fail\n{report}", w.len());
        }
    }
    Ok(0)
}

fn mon(file: &Path, object: &str, max_len: usize, out: Out) -> Result<i32, Error> {
    let loaded = load(file)?;
    let g = loaded.sg.base();
    let x = g.object(object)?;
    let m = Monodromy::new(&loaded.sg);
    let ball = m.enumerate(x, max_len);
    let _ = writeln!(out, "Mon star at {object}, length <= {max_len}: {} elements", ball.len());
    for a in &ball {
        let _ = writeln!(out, "  {} -> {}", show_path(g, a), g.mor_name(m.project(a)));
    }
    Ok(0)
}

fn mon_compose(file: &Path, a: &str, b: &str, out: Out) -> Result<i32, Error> {
    let loaded = load(file)?;
    let g = loaded.sg.base();
    let m = Monodromy::new(&loaded.sg);
    let a = m.element(ggd::parse_path(g, a)?)?;
    let b = m.element(ggd::parse_path(g, b)?)?;
    let c = m.compose(&a, &b)?;
    let _ = writeln!(out, "a = {}", show_path(g, &a));
    let _ = writeln!(out, "b = {}", show_path(g, &b));
    let _ = writeln!(out, "a • b = {}", show_path(g, &c));
    let _ = writeln!(out, "p(a • b) = {}", g.mor_name(m.project(&c)));
    Ok(0)
}

fn require_w(loaded: &Loaded, file: &Path) -> Result<WSet, Error> {
    loaded
        .w
        .clone()
        .ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("{} has no [W] section", file.display()),
        })
}

fn mgw_eq(file: &Path, w1: &str, w2: &str, out: Out) -> Result<i32, Error> {
    let loaded = load(file)?;
    let g = loaded.sg.base();
    let w = require_w(&loaded, file)?;
    let (w1, w2) = (ggd::parse_word(g, w1)?, ggd::parse_word(g, w2)?);
    let pres = match Presentation::new(&loaded.sg, w, loaded.v.clone()) {
        Ok(p) => p,
        Err(Error::Hypotheses(report)) => {
            let _ = write!(out, "hypotheses fail\n{report}");
            return Ok(1);
        }
        Err(e) => return Err(e),
    };
    let (m1, m2) = (pres.to_mon(&w1)?, pres.to_mon(&w2)?);
    let _ = writeln!(out, "mu(w1) = {}", show_path(g, &m1));
    let _ = writeln!(out, "mu(w2) = {}", show_path(g, &m2));
    if w1.source() == w2.source() && m1 == m2 {
        let _ = writeln!(out, "equal");
        return Ok(0);
    }
    let (e1, e2) = (w1.evaluate(g)?, w2.evaluate(g)?);
    if e1 == e2 {
        let _ = writeln!(out, "distinct: winding detected");
        let _ = writeln!(out, "both words evaluate to {} in G", g.mor_name(e1));
    } else {
        let _ = writeln!(out, "distinct: values {} and {} in G", g.mor_name(e1), g.mor_name(e2));
    }
    Ok(1)
}

fn extend(
    file: &Path,
    target: Option<&Path>,
    word: Option<&str>,
    morphism: Option<&str>,
    out: Out,
) -> Result<i32, Error> {
    let loaded = load(file)?;
    let spec = loaded.local.clone().ok_or_else(|| Error::Parse {
        line: 0,
        message: format!("{} has no [local-morphism] section", file.display()),
    })?;
    let target_path = target.map_or_else(|| ggd::resolve_target(file, &spec.target), Path::to_path_buf);
    let target = load(&target_path)?;
    let g = loaded.sg.base();
    let domain = match &loaded.w {
        Some(w) => w.clone(),
        None => WSet::from_names(g, &spec.pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>())?,
    };
    let f = LocalMorphism::from_names(&loaded.sg, &target.sg, domain, &spec.pairs)?;
    let h = target.sg.base();
    if let Some(word) = word {
        let word = ggd::parse_word(g, word)?;
        let ext = Extension::weak(&f, loaded.v.clone())?;
        let value = ext.on_word(&word)?;
        let _ = writeln!(out, "weak extension");
        let _ = writeln!(out, "f~({}) = {}", word.display(g), h.mor_name(value));
    } else if let Some(m) = morphism {
        let m = g.morphism(m)?;
        let ext = Extension::strong(&f, TieBreak::Lexicographic)?;
        let word = ext.factorize(m)?;
        let value = ext.on_morphism(m)?;
        let _ = writeln!(out, "strong extension");
        let _ = writeln!(out, "factorization: {}", word.display(g));
        let _ = writeln!(out, "f~({}) = {}", g.mor_name(m), h.mor_name(value));
    }
    Ok(0)
}

fn product_check(left: &Path, right: &Path, max_len: usize, out: Out) -> Result<i32, Error> {
    let (l, r) = (load(left)?, load(right)?);
    let prod = StarredGroupoid::product(&l.sg, &r.sg);
    let (count, report) = check_product(&prod, max_len)?;
    let _ = writeln!(out, "component length <= {max_len}: {count} elements");
    let _ = writeln!(
        out,
        "group product: {}",
        if prod.group().is_some() { "checked" } else { "skipped" }
    );
    if report.is_clean() {
        let _ = writeln!(out, "split/join: bijective, composition and inverses preserved");
        Ok(0)
    } else {
        let _ = write!(out, "violations: {}\n{report}", report.violations.len());
        Ok(1)
    }
}

fn w_or_full(loaded: &Loaded, out: Out) -> WSet {
    loaded.w.clone().unwrap_or_else(|| {
        let _ = writeln!(out, "note: no [W] section, using W = G");
        WSet::full(loaded.sg.base())
    })
}

fn holonomy(file: &Path, out: Out) -> Result<i32, Error> {
    let loaded = load(file)?;
    let g = loaded.sg.base();
    let w = w_or_full(&loaded, out);
    let hol = match sections::holonomy(g, &w) {
        Ok(h) => h,
        Err(Error::Hypotheses(report)) => {
            let _ = write!(out, "hypotheses fail\n{report}");
            return Ok(1);
        }
        Err(e) => return Err(e),
    };
    let iso = hol.is_iso_onto_generated(g, &w);
    let _ = writeln!(out, "germs: {}", hol.germs.len());
    let _ = writeln!(out, "kernel of psi: {} germs, normal: {}", hol.kernel.len(), yes(hol.kernel_normal));
    let _ = writeln!(
        out,
        "Hol: {} objects, {} morphisms",
        hol.groupoid.num_objects(),
        hol.groupoid.num_morphisms()
    );
    let _ = writeln!(out, "W generates G: {}", yes(hol.generates));
    let _ = writeln!(out, "phi is an isomorphism onto <W>: {}", yes(iso));
    Ok(if iso && hol.kernel_normal { 0 } else { 1 })
}

fn sections_check(file: &Path, max_domain: usize, out: Out) -> Result<i32, Error> {
    let loaded = load(file)?;
    let g = loaded.sg.base();
    let all = enumerate_sections(g, max_domain);
    let _ = writeln!(out, "sections with domain size 1..={max_domain}: {}", all.len());

    let regular = all.iter().all(|s| s.mul(g, &s.inverse(g)).mul(g, s) == *s);
    let idem: Vec<_> = all.iter().filter(|s| s.mul(g, s) == **s).collect();
    let commute = idem
        .iter()
        .all(|e| idem.iter().all(|f| e.mul(g, f) == f.mul(g, e)));
    let germs: Vec<Germ> = g
        .morphisms()
        .map(|m: Mor| Germ {
            at: g.src(m),
            value: m,
        })
        .collect();
    let mut pairs = 0usize;
    let mut psi_ok = true;
    for a in &germs {
        for b in &germs {
            if let Some(ab) = a.product(g, b) {
                pairs += 1;
                psi_ok &= g.composite(a.psi(), b.psi()) == Some(ab.psi());
            }
        }
    }
    let w = w_or_full(&loaded, out);
    let ext = sections::check_extendibility(g, &w, 3);

    let pass = |b: bool| if b { "pass" } else { "fail" };
    let _ = writeln!(out, "s s^-1 s = s: {}", pass(regular));
    let _ = writeln!(out, "idempotents commute ({}): {}", idem.len(), pass(commute));
    let _ = writeln!(out, "psi on {pairs} composable germ pairs: {}", pass(psi_ok));
    for note in &ext.notes {
        let _ = writeln!(out, "extendibility: {note}");
    }
    let _ = writeln!(out, "extendibility: {}", pass(ext.is_clean()));
    if !ext.is_clean() {
        let _ = write!(out, "{ext}");
    }
    let ok = regular && commute && psi_ok && ext.is_clean();
    Ok(if ok { 0 } else { 1 })
}
