use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown section `[{0}]`")]
    UnknownSection(String),

    #[error("composition is not associative on ({h}, {g}, {f})")]
    NonAssociative { h: String, g: String, f: String },

    #[error("identity of object `{object}` is not neutral: {detail}")]
    MissingIdentity { object: String, detail: String },

    #[error("composite of `{f}` after `{g}` is undefined or ill-typed")]
    DanglingMorphism { f: String, g: String },

    #[error("category is not EI: {0}")]
    NotEI(String),

    #[error("not a poset: {0}")]
    NotAPoset(String),

    #[error("group action is not order preserving: generator {generator} sends {x} <= {y} to a non-relation")]
    ActionNotOrderPreserving { generator: usize, x: String, y: String },

    #[error("group action is not functorial: {0}")]
    ActionNotFunctorial(String),

    #[error("group order exceeds the configured cap of {0}")]
    GroupTooLarge(usize),

    #[error("modules live over different categories")]
    CategoryMismatch,

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("not a natural transformation: {0}")]
    NotNatural(String),

    #[error("module is not simple: {0}")]
    NotSimple(String),

    #[error("subcategory is not convex: object `{0}` lies on a path between members")]
    NotConvex(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("degree window exceeded: {0}")]
    DegreeWindow(String),

    #[error("unsupported scale: {0}")]
    UnsupportedScale(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("dimension exceeds bound {0}")]
    AboveBound(usize),

    #[error("cutoff too large: {0}")]
    CutoffTooLarge(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// Input that could not be validated, as opposed to a falsified
    /// mathematical check.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
