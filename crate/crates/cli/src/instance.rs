//! Instance parsing: comma-separated jar values on the command line, or
//! `@FILE` pointing at a file of comma- or whitespace-separated values.

use std::fs;

use cookie_monster::JarSet;

use crate::CliError;

pub fn parse(spec: &str) -> Result<JarSet, CliError> {
    let owned;
    let raw = match spec.strip_prefix('@') {
        Some(path) => {
            owned = fs::read_to_string(path)
                .map_err(|err| CliError::Domain(format!("{path}: {err}")))?;
            owned.as_str()
        }
        None => spec,
    };

    let mut values = Vec::new();
    for token in raw.split(|c: char| c == ',' || c.is_whitespace()) {
        if token.is_empty() {
            continue;
        }
        let value: u64 = token
            .parse()
            .map_err(|_| CliError::Domain(format!("invalid cookie count {token:?}")))?;
        values.push(value);
    }
    Ok(JarSet::new(values)?)
}
