use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use ehrenfest::ORDERING;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Decimal scientific notation with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV text with a `#`-comment preamble describing the run.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(command: &str, r: usize, n: usize, shuffle: Option<&str>) -> Self {
        let mut text = String::new();
        writeln!(text, "# ehrenfest {VERSION} {command}").unwrap();
        write!(text, "# r={r} n={n}").unwrap();
        if let Some(s) = shuffle {
            write!(text, " shuffle={s}").unwrap();
        }
        text.push('\n');
        writeln!(
            text,
            "# composition ordering: {ORDERING}; compositions written (c_0;c_1;...;c_(r-1))"
        )
        .unwrap();
        Self { text }
    }

    pub fn comment(&mut self, line: &str) {
        writeln!(self.text, "# {line}").unwrap();
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for f in fields {
            if !first {
                self.text.push(',');
            }
            first = false;
            self.text.push_str(f.as_ref());
        }
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .context("writing to stdout")?;
            stdout.flush().context("writing to stdout")
        }
    }
}

pub fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
