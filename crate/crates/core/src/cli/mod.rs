//! Presentation files and command dispatch.

mod parse;
mod run;

pub use parse::{
    parse_combination, parse_presentation, parse_term, serialize_presentation, term_text, valid_name, written_text,
};
pub use run::{
    run, Command, Format, Input, Invocation, Outcome, SeriesOp, VeroneseMode, EXIT_ASSERTION, EXIT_OK, EXIT_USAGE,
};
