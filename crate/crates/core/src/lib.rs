pub mod dot;
pub mod format;
pub mod generate;
pub mod quiver;
pub mod tree;
pub mod taxonomy;
pub mod engine;
pub mod oracle;
