//! Source spans and diagnostic types shared across the front end.

use std::fmt;

/// Half-open byte range into the source text a syntax node was parsed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn new(lo: usize, hi: usize) -> Self {
        Span { lo, hi }
    }

    pub fn join(self, other: Span) -> Span {
        Span {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

/// 1-based line and column (in bytes) of a byte offset in `src`.
pub fn line_col(src: &str, offset: usize) -> (u32, u32) {
    let clamped = offset.min(src.len());
    let mut line = 1u32;
    let mut col = 1u32;
    for b in src.as_bytes()[..clamped].iter() {
        if *b == b'\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

/// Lexical or grammatical error, with 1-based position info.
#[derive(Debug, Clone, thiserror::Error)]
#[error("syntax error at {line}:{col}: {message}")]
pub struct ParseError {
    pub message: String,
    pub line: u32,
    pub col: u32,
}

impl ParseError {
    pub fn at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let (line, col) = line_col(src, offset);
        ParseError {
            message: message.into(),
            line,
            col,
        }
    }
}

/// Machine-readable code attached to every type-checking diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeErrorCode {
    /// E001: a variable occurs free with no enclosing binder.
    UnboundVariable,
    /// E002: an expression's type conflicts with its context.
    TypeMismatch,
    /// E003: a constant is used without a declaration.
    MissingDeclaration,
    /// E004: function symbols are declared (the ground universe would be infinite).
    FunctionSymbols,
    /// E005: a clause body has free variables.
    OpenClauseBody,
    /// E006: an unannotated binder's type is not determined by its uses.
    UninferableBinder,
}

impl TypeErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeErrorCode::UnboundVariable => "E001",
            TypeErrorCode::TypeMismatch => "E002",
            TypeErrorCode::MissingDeclaration => "E003",
            TypeErrorCode::FunctionSymbols => "E004",
            TypeErrorCode::OpenClauseBody => "E005",
            TypeErrorCode::UninferableBinder => "E006",
        }
    }
}

impl fmt::Display for TypeErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Type-checking diagnostic: code, message, and position when known.
#[derive(Debug, Clone, thiserror::Error)]
pub struct TypeError {
    pub code: TypeErrorCode,
    pub message: String,
    pub span: Option<Span>,
    pub line: u32,
    pub col: u32,
}

impl TypeError {
    pub fn new(
        code: TypeErrorCode,
        message: impl Into<String>,
        span: Option<Span>,
        src: &str,
    ) -> Self {
        let (line, col) = span.map(|s| line_col(src, s.lo)).unwrap_or((0, 0));
        TypeError {
            code,
            message: message.into(),
            span,
            line,
            col,
        }
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(
                f,
                "error[{}] at {}:{}: {}",
                self.code, self.line, self.col, self.message
            )
        } else {
            write!(f, "error[{}]: {}", self.code, self.message)
        }
    }
}
