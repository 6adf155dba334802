use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("radicands must be distinct, got {0} twice")]
    EqualRadicands(i64),
    #[error("radicand must be a squarefree integer > 1, got {0}")]
    BadRadicand(i64),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not an algebraic integer: {0}")]
    NotIntegral(String),
    #[error("element is not totally positive: {0}")]
    NotTotallyPositive(String),
    #[error("{0} is not an element of a quadratic subfield of this field")]
    NotInSubfield(i64),
    #[error("element is not indecomposable in its quadratic field: {0}")]
    NotQuadIndecomposable(String),
    #[error("{0} is not a unit of the ring of integers")]
    NotAUnit(String),
    #[error("escalator {0} is already represented before insertion")]
    EscalatorRepresented(String),
    #[error("escalator list must start with 1")]
    EscalatorListMustStartWithOne,
    #[error("parse error: {0}")]
    Parse(String),
}
