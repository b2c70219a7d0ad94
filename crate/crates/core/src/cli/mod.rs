//! Model documents, expression parsing and the analysis pipeline.

mod document;
mod parser;
mod pipeline;

pub use document::{load_model, parse_model, DocumentError, ModelDocument};
pub use parser::{is_identifier, parse_expr, parse_expr_with, parse_poly, parse_relation, parse_relation_with, ParseError};
pub use pipeline::{
    exit, prepare_model, run_file, run_pipeline, Command, OutputFormat, PipelineError, PipelineOutput, RunConfig, SELECTION_RULE, WATERMARK,
};
