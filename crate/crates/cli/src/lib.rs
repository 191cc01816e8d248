//! File formats and output helpers behind the `symdiv` binary.
//!
//! Distribution files hold one probability per line; code files start with
//! `d=<int>` followed by one `<length>` or `<length> <probability>` per line.
//! In both, blank lines and lines starting with `#` are skipped.

pub mod input;
pub mod output;

pub use input::{
    parse_code, parse_distribution, read_code, read_distribution, CodeSpec, InputError,
};
pub use output::{format_value, linspace, write_csv};
