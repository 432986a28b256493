use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Opens `path` for writing, with `-` meaning standard output.
pub fn open(path: &str) -> io::Result<Box<dyn Write>> {
    if path == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(Path::new(path))?)))
    }
}

/// Seventeen significant digits, enough to round-trip every `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvWriter {
    out: Box<dyn Write>,
}

impl CsvWriter {
    pub fn new(out: Box<dyn Write>, header: &[String]) -> io::Result<Self> {
        let mut w = CsvWriter { out };
        w.out.write_all(header.join(",").as_bytes())?;
        w.out.write_all(b"\n")?;
        Ok(w)
    }

    pub fn row(&mut self, values: impl IntoIterator<Item = f64>, extra: Option<u64>) -> io::Result<()> {
        let mut line = values.into_iter().map(fmt_f64).collect::<Vec<_>>().join(",");
        if let Some(e) = extra {
            line.push(',');
            line.push_str(&e.to_string());
        }
        line.push('\n');
        self.out.write_all(line.as_bytes())
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

/// `prefix1, ..., prefixd`.
pub fn numbered(prefix: &str, d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("{prefix}{i}")).collect()
}
