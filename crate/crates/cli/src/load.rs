//! Input loading: system and graph files are told apart by their header
//! token, and `--partition` values resolve to the canonical partition, a
//! partition file, or inline partition text.

use std::fmt;
use std::fs;
use std::path::Path;

use graphinv::dynamics::{build_graph, parse_system};
use graphinv::graph::{parse_graph, ColoredDigraph};
use graphinv::partition::EdgePartition;
use graphinv::report::default_partition;
use graphinv::ParseError;

/// An error carrying the file it came from, printed `path:line: cause`.
#[derive(Debug)]
pub struct CliError {
    path: String,
    line: Option<usize>,
    message: String,
}

impl CliError {
    pub fn new(path: &Path, line: Option<usize>, message: impl fmt::Display) -> Self {
        Self {
            path: path.display().to_string(),
            line,
            message: message.to_string(),
        }
    }

    fn from_parse(path: &Path, error: ParseError) -> Self {
        let line = (error.line > 0).then_some(error.line);
        Self::new(path, line, error.message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{}:{}: {}", self.path, line, self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

impl std::error::Error for CliError {}

/// A loaded presentation: the graph plus its canonical partition (the
/// generator partition for systems, the discrete partition for graphs).
pub struct Input {
    pub graph: ColoredDigraph,
    pub partition: EdgePartition,
    pub from_system: bool,
}

pub fn load_input(path: &Path) -> Result<Input, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::new(path, None, e))?;
    let header_token = text
        .lines()
        .map(|line| line.trim_end_matches('\r').trim())
        .find(|line| !line.is_empty() && !line.starts_with('#'))
        .and_then(|line| line.split_whitespace().next())
        .unwrap_or("");
    match header_token {
        "system" => {
            let system = parse_system(&text).map_err(|e| CliError::from_parse(path, e))?;
            let (graph, partition) = build_graph(&system).into_parts();
            Ok(Input {
                graph,
                partition,
                from_system: true,
            })
        }
        "graph" => {
            let graph = parse_graph(&text).map_err(|e| CliError::from_parse(path, e))?;
            let partition = default_partition(&graph);
            Ok(Input {
                graph,
                partition,
                from_system: false,
            })
        }
        other => Err(CliError::new(
            path,
            None,
            format!("expected a `graph` or `system` header, found {other:?}"),
        )),
    }
}

/// Resolves a `--partition` value: `canonical` (or nothing) keeps the
/// input's canonical partition; inline `class ...` text is parsed
/// directly; anything else is read as a partition file.
pub fn resolve_partition(input: &Input, selector: Option<&str>) -> Result<EdgePartition, CliError> {
    match selector {
        None | Some("canonical") => Ok(input.partition.clone()),
        Some(text) if text.trim_start().starts_with("class") => {
            EdgePartition::parse(text)
                .map_err(|e| CliError::from_parse(Path::new("--partition"), e))
        }
        Some(file) => {
            let path = Path::new(file);
            let text = fs::read_to_string(path).map_err(|e| CliError::new(path, None, e))?;
            EdgePartition::parse(&text).map_err(|e| CliError::from_parse(path, e))
        }
    }
}
