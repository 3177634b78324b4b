use std::io::{self, BufWriter, Write};

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Buffered stdout wrapper for the three output formats.
pub struct Out<W: Write> {
    inner: BufWriter<W>,
    format: Format,
}

impl<W: Write> Out<W> {
    pub fn new(inner: W, format: Format) -> Self {
        Out {
            inner: BufWriter::new(inner),
            format,
        }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn line(&mut self, s: &str) -> io::Result<()> {
        self.inner.write_all(s.as_bytes())?;
        self.inner.write_all(b"\n")
    }

    /// Header plus records, comma separated, LF terminated.
    pub fn csv<R, I>(&mut self, header: &[&str], records: I) -> Result<(), csv::Error>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator,
        R::Item: AsRef<[u8]>,
    {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(&mut self.inner);
        w.write_record(header)?;
        for r in records {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn json(&mut self, value: &serde_json::Value) -> io::Result<()> {
        serde_json::to_writer(&mut self.inner, value)?;
        self.inner.write_all(b"\n")
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}
