//! Library side of the `vho` command: report types, the three subcommands
//! and their table / JSON rendering.

pub mod commands;
pub mod render;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Saw,
    Wpm,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}
