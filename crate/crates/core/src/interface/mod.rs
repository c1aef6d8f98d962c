//! Config documents, monitor tables, reports and the command line.

pub mod cli;
pub mod config;
pub mod monitor;
pub mod report;

pub use cli::run;
pub use config::{
    parse_case_config, parse_case_document, render_case_config, render_case_document, CaseConfig,
    ConfigError, ConfigErrorKind,
};
pub use monitor::{
    format_fixed17, parse_monitor_table, parse_monitor_table_with, write_series, AliasTable,
    MonitorError,
};
pub use report::{report_csv, report_text, write_report, REPORT_COLUMNS};
