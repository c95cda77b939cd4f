use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at position {pos}: expected {expected}, found {found}")]
    Parse { pos: usize, expected: String, found: String },
    #[error("{0}")]
    Shape(String),
    #[error("technical condition violated: {0}")]
    TechnicalCondition(String),
    #[error("invalid field declaration: {0}")]
    Field(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Pipeline(#[from] superint::integrate::IntegrateError),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } | CliError::Shape(_) => "parse",
            CliError::TechnicalCondition(_) => "technical_condition",
            CliError::Field(_) => "field",
            CliError::Input(_) => "input",
            CliError::Pipeline(_) => "pipeline",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Shape(_) => 3,
            CliError::TechnicalCondition(_) => 4,
            CliError::Field(_) | CliError::Input(_) | CliError::Io(_) => 5,
            CliError::Pipeline(_) => 6,
        }
    }
}
