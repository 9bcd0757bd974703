#![allow(clippy::needless_range_loop)]

pub mod audit;
pub mod classify;
pub mod cli;
pub mod closed_form;
pub mod config;
pub mod families;
pub mod jets;
pub mod oracle;
pub mod report;
pub mod tensors;
pub mod walker_metric;
