//! Shared helpers for the line-based text formats.

use crate::error::{Error, Result};

/// Non-empty lines with `#` comments stripped, split into tokens.
/// Yields `(line_number, tokens)` with 1-based line numbers.
pub(crate) fn token_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

pub(crate) fn expect_arity(line: usize, toks: &[&str], n: usize) -> Result<()> {
    if toks.len() != n {
        return Err(Error::syntax(
            line,
            format!("`{}` expects {} arguments, got {}", toks[0], n - 1, toks.len() - 1),
        ));
    }
    Ok(())
}

pub(crate) fn parse_int<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::syntax(line, format!("expected an integer, got `{tok}`")))
}
