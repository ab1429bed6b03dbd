use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::cli::Format;
use crate::error::CliError;

pub const SCHEMA: u32 = 1;

/// Writes either human text or JSON lines. Every JSON record carries a `record` key.
pub struct Sink<W: Write> {
    format: Format,
    out: W,
}

impl<W: Write> Sink<W> {
    pub fn new(format: Format, out: W) -> Self {
        Sink { format, out }
    }

    pub fn into_inner(self) -> W {
        self.out
    }

    pub fn header(&mut self, command: &str) -> io::Result<()> {
        if self.format == Format::Json {
            let h = json!({ "schema": SCHEMA, "command": command, "version": env!("CARGO_PKG_VERSION") });
            writeln!(self.out, "{h}")?;
        }
        Ok(())
    }

    /// Emits one record; `text` is what the text format prints for it.
    pub fn record(&mut self, kind: &str, fields: Value, text: impl AsRef<str>) -> io::Result<()> {
        match self.format {
            Format::Json => {
                let mut m = Map::new();
                m.insert("record".into(), Value::from(kind));
                if let Value::Object(f) = fields {
                    m.extend(f);
                }
                writeln!(self.out, "{}", Value::Object(m))
            }
            Format::Text => {
                let t = text.as_ref();
                if t.ends_with('\n') {
                    write!(self.out, "{t}")
                } else {
                    writeln!(self.out, "{t}")
                }
            }
        }
    }

    /// JSON errors go to the record stream; text errors are left to stderr.
    pub fn error(&mut self, e: &CliError) -> io::Result<()> {
        if self.format == Format::Json {
            self.record("error", json!({ "kind": e.kind(), "message": e.to_string(), "exit": e.exit_code() }), "")?;
        }
        Ok(())
    }
}
