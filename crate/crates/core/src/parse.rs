//! Shared line-oriented parsing helpers for the graph and system file
//! formats: `#` comments and blank lines are skipped, records are
//! whitespace-separated fields, line numbers are 1-based.

use std::fmt;

use thiserror::Error;

/// A parse or validation failure tied to a line of the input file.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl fmt::Display) -> Self {
        Self {
            line,
            message: message.to_string(),
        }
    }
}

/// Yields `(line_number, content)` for every non-blank, non-comment line.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((idx + 1, line))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_comments_and_blanks() {
        let text = "# header\n\none two\n   \n# more\nthree\n";
        let lines: Vec<_> = content_lines(text).collect();
        assert_eq!(lines, vec![(3, "one two"), (6, "three")]);
    }

    #[test]
    fn error_display_names_line() {
        let err = ParseError::new(7, "unknown vertex \"5\"");
        assert_eq!(err.to_string(), "line 7: unknown vertex \"5\"");
    }
}
