use thiserror::Error;

/// Errors raised by curve, engine and detector operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inessential curve: {0}")]
    Inessential(String),
    #[error("malformed key: {0}")]
    MalformedKey(String),
    #[error("puncture count mismatch: {0} vs {1}")]
    PunctureMismatch(usize, usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("transporter does not map the standard minimal curve to the target")]
    TransporterMismatch,
    #[error("curve is not minimal")]
    NotMinimal,
    #[error("not a multicurve: curves {0} and {1} intersect")]
    NotAMulticurve(usize, usize),
    #[error("curves do not fill: intersection number is zero")]
    NotFilling,
    #[error("not in link: {0}")]
    NotInLink(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("single curve expected, found {0}")]
    SingleCurveExpected(usize),
    #[error("slopes are not Farey neighbours")]
    NotAnEdge,
    #[error("bad side index {0}")]
    BadSide(usize),
    #[error("vertices do not cross")]
    NotCrossing,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bizarre simplex condition violated: {0}")]
    Bizarre(BizarreViolation),
    #[error("no witness found: {0}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// The individual conditions checked by
/// [`crate::detectors::bizarre_simplex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BizarreViolation {
    TooFewPunctures,
    WrongLength,
    NotAMulticurve,
    FirstNotOneSeparating,
    NotStronglySeparating,
    NotSeparating,
    AnnulusPunctureCount,
}

impl std::fmt::Display for BizarreViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BizarreViolation::TooFewPunctures => "b must be at least 9",
            BizarreViolation::WrongLength => "chain must have b-8 curves",
            BizarreViolation::NotAMulticurve => "curves are not pairwise disjoint",
            BizarreViolation::FirstNotOneSeparating => "first curve is not one-separating",
            BizarreViolation::NotStronglySeparating => "a curve bounds a twice-punctured disk",
            BizarreViolation::NotSeparating => "a curve does not separate its neighbours",
            BizarreViolation::AnnulusPunctureCount => {
                "a region between consecutive curves does not hold exactly one puncture"
            }
        };
        f.write_str(s)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
