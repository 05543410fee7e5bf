pub mod format;
pub mod generate;

pub use format::{parse, serialize, Kind, MatrixFile, STRUCTURED_CAP};
pub use generate::{generate, generate_with, Branch, GenKind, GenOptions, Generator};
