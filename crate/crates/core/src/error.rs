use thiserror::Error;

use crate::report::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("cannot compose {g} ∘ {h}: target of {g} is {target} but source of {h} is {start}")]
    NotComposable {
        g: String,
        h: String,
        target: String,
        start: String,
    },
    #[error("composition table has no entry for {g} ∘ {h}")]
    MissingComposite { g: String, h: String },
    #[error("difference map undefined: {g} starts at {g_source} but {h} starts at {h_source}")]
    SourceMismatch {
        g: String,
        h: String,
        g_source: String,
        h_source: String,
    },
    #[error("{0} has no inverse")]
    NoInverse(String),
    #[error("ambient groupoid carries no group structure")]
    NoGroupStructure,
    #[error("group product {g}·{h} is undefined")]
    MissingProduct { g: String, h: String },
    #[error("ambient groupoid is not a product")]
    NotAProduct,
    #[error("invalid edge path: {0}")]
    InvalidPath(String),
    #[error("monodromy elements not composable: target {target} differs from base {base}")]
    BaseMismatch { target: String, base: String },
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("hypotheses fail:\n{0}")]
    Hypotheses(Report),
    #[error("W is not a subgroup: {u}·{v} = {product} lies outside W")]
    NotSubgroup {
        u: String,
        v: String,
        product: String,
    },
    #[error("invalid local morphism:\n{0}")]
    InvalidLocalMorphism(Report),
    #[error("invalid star morphism:\n{0}")]
    InvalidStarMorphism(Report),
    #[error("validation failed:\n{0}")]
    Invalid(Report),
    #[error("refused: {0}")]
    Refused(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(String),
}
