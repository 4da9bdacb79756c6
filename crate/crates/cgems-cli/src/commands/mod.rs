//! One module per subcommand. Each exposes its clap `Args` struct and a
//! `run(&Args, &FileConfig) -> Result<(), CliError>` entry point.

pub mod analyze;
pub mod collect;
pub mod compare;
pub mod explain;
pub mod predict;
pub mod select;
pub mod train;

use cgems::dataset::schema;

/// The canonical feature column names as owned strings, in table order.
pub fn feature_columns() -> Vec<String> {
    schema::FEATURES.iter().map(|name| name.to_string()).collect()
}
