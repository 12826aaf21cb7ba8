//! Library surface of the zadic CLI: descriptors, reports and command
//! runners, shared with the integration and acceptance tests.

pub mod commands;
pub mod descriptor;
pub mod report;

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or malformed input: exit code 2.
    Usage(String),
    /// An engine error: exit 3 when the question was undecidable, else 1.
    Engine { message: String, undecidable: bool },
}

impl CliError {
    pub fn usage(message: String) -> Self {
        CliError::Usage(message)
    }

    pub fn parse(e: zadic_core::Error) -> Self {
        CliError::Usage(format!("{e}"))
    }

    pub fn from_core(e: zadic_core::Error) -> Self {
        match e {
            zadic_core::Error::Undecidable(msg) => CliError::Engine {
                message: format!("undecidable for this carrier: {msg}"),
                undecidable: true,
            },
            zadic_core::Error::Parse { .. } | zadic_core::Error::NotPrime(_) => {
                CliError::Usage(format!("{e}"))
            }
            other => CliError::Engine {
                message: format!("{other}"),
                undecidable: false,
            },
        }
    }
}
