use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty label at byte {pos}")]
    EmptyLabel { pos: usize },
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("invalid link-and-cut operation: {0}")]
    InvalidOperation(String),
    #[error("cannot move {child}: its parent is {actual}, not {expected}")]
    WrongParent {
        child: String,
        expected: String,
        actual: String,
    },
    #[error("cannot move {child} under {target}: {target} is a descendant of {child}")]
    DescendantTarget { child: String, target: String },
    #[error("mapping is not a bijection: {0}")]
    NonBijective(String),

    #[error("trees are not labelled by the same label set")]
    LabelSetMismatch,
    #[error("root children differ ({0} vs {1}); no link-and-cut sequence exists")]
    RootMismatch(String, String),
    #[error("trees are not isomorphic")]
    NotIsomorphic,
    #[error("instance too large: {size} exceeds limit {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("replay failed at step {step}: {source}")]
    Replay { step: usize, source: Box<Error> },
    #[error("script line {line}: {msg}")]
    Script { line: usize, msg: String },
    #[error("invalid 3DM instance: {0}")]
    Instance(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}
