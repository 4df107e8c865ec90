use thiserror::Error;

use super::{Instance, InstanceData, Violation};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance: {}", join(.0))]
    Invalid(Vec<Violation>),
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let data: InstanceData = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Instance::new(data).map_err(ParseError::Invalid)
}

pub fn serialize_instance(instance: &Instance) -> String {
    serde_json::to_string_pretty(instance.data()).expect("instance data is always serializable")
}
