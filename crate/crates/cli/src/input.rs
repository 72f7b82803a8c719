//! Loading surface specs from files, `--json` reports or the catalog.

use std::fs;

use dpd_core::catalog::{catalog_surface, default_params};
use dpd_core::{Error, SurfaceSpec};
use serde_json::Value;

use crate::CliError;

pub fn load_spec(arg: &str) -> Result<SurfaceSpec, CliError> {
    if let Some(rest) = arg.strip_prefix("catalog:") {
        let (name, params) = match rest.split_once(':') {
            Some((name, list)) => (name, parse_params(list)?),
            None => (rest, default_params(rest)?),
        };
        return Ok(catalog_surface(name, &params)?.spec);
    }
    let text = fs::read_to_string(arg).map_err(|e| CliError::Io(arg.to_string(), e))?;
    parse_spec_document(&text)
}

/// A spec document, or any JSON object that carries one under `"spec"`
/// (classification reports and catalog entries do).
pub fn parse_spec_document(text: &str) -> Result<SurfaceSpec, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::ParseError {
        pos: byte_offset(text, e.line(), e.column()),
        msg: e.to_string(),
    })?;
    Ok(SurfaceSpec::from_value(v.get("spec").unwrap_or(&v))?)
}

fn parse_params(list: &str) -> Result<Vec<u64>, CliError> {
    list.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::BadParams(format!("{p:?} is not a non-negative integer")).into())
        })
        .collect()
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.lines().take(line.saturating_sub(1)).map(|l| l.len() + 1).sum();
    before + column.saturating_sub(1)
}
