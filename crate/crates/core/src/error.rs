// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("element is not an algebraic integer: {0}")]
    NotIntegral(String),
    #[error("element is a square in the base field: {0}")]
    SquareInput(String),
    #[error("element is not fundamental: {0}")]
    NotFundamental(String),
    #[error("elements of different fields were combined")]
    FieldMismatch,
    #[error("ideals live in different extensions")]
    ExtensionMismatch,
    #[error("basis is degenerate (det M = 0)")]
    DegenerateBasis,
    #[error("generators span a module of rank < 2")]
    RankDeficient,
    #[error("basis does not span an ideal of the ring of integers of L")]
    NotAnIdeal,
    #[error("orientation of the basis does not match the stored sign vector")]
    OrientationMismatch,
    #[error("sign vector has length {got}, expected {expected}")]
    SignLength { expected: usize, got: usize },
    #[error("quadratic form is not primitive")]
    NotPrimitive,
    #[error("discriminant {0} is not u^2 D for a totally positive unit u")]
    DiscriminantNotInClass(String),
    #[error("discriminant {got} does not match the extension discriminant {expected}")]
    DiscriminantMismatch { expected: String, got: String },
    #[error("discriminant is not totally negative")]
    DiscriminantNotTotallyNegative,
    #[error("element is not a unit of the ring of integers of L")]
    NotAUnit,
    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),
    #[error("operation is only available over the rationals")]
    WrongBase,
    #[error("form is not positive definite")]
    IndefiniteForm,
    #[error("embedding index {index} out of range (field has {count} real embeddings)")]
    EmbeddingIndex { index: usize, count: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, used as the machine-readable error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroArgument => "ZeroArgument",
            Error::NotIntegral(_) => "NotIntegral",
            Error::SquareInput(_) => "SquareInput",
            Error::NotFundamental(_) => "NotFundamental",
            Error::FieldMismatch => "FieldMismatch",
            Error::ExtensionMismatch => "ExtensionMismatch",
            Error::DegenerateBasis => "DegenerateBasis",
            Error::RankDeficient => "RankDeficient",
            Error::NotAnIdeal => "NotAnIdeal",
            Error::OrientationMismatch => "OrientationMismatch",
            Error::SignLength { .. } => "SignLength",
            Error::NotPrimitive => "NotPrimitive",
            Error::DiscriminantNotInClass(_) => "DiscriminantNotInClass",
            Error::DiscriminantMismatch { .. } => "DiscriminantMismatch",
            Error::DiscriminantNotTotallyNegative => "DiscriminantNotTotallyNegative",
            Error::NotAUnit => "NotAUnit",
            Error::InvalidTransformation(_) => "InvalidTransformation",
            Error::WrongBase => "WrongBase",
            Error::IndefiniteForm => "IndefiniteForm",
            Error::EmbeddingIndex { .. } => "EmbeddingIndex",
            Error::Parse(_) => "ParseError",
        }
    }
}
