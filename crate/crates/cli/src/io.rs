use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::Failure;

/// `None` or `-` means the standard stream.
pub fn reader(path: Option<&Path>) -> Result<Box<dyn BufRead>, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            let f = File::open(p).map_err(|e| Failure::io(p, e))?;
            Ok(Box::new(BufReader::new(f)))
        }
        _ => Ok(Box::new(BufReader::new(io::stdin()))),
    }
}

pub fn writer(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            let f = File::create(p).map_err(|e| Failure::io(p, e))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        _ => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

pub fn read_to_string(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

pub fn write_line(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value).map_err(|e| Failure::Message(e.to_string()))?;
    out.write_all(b"\n").map_err(|e| Failure::io(Path::new("<output>"), e))
}

pub fn finish(mut out: Box<dyn Write>) -> Result<(), Failure> {
    out.flush().map_err(|e| Failure::io(Path::new("<output>"), e))
}

/// Runs `f` over every non-blank input line with its 1-based number.
pub fn for_each_line(
    input: Box<dyn BufRead>,
    mut f: impl FnMut(usize, &str) -> Result<(), Failure>,
) -> Result<(), Failure> {
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Failure::io(Path::new("<input>"), e))?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        f(i + 1, line)?;
    }
    Ok(())
}

/// Resolves `p` against the directory of a configuration file.
pub fn relative_to(base: &Path, p: &str) -> PathBuf {
    let p = PathBuf::from(p);
    if p.is_absolute() {
        p
    } else {
        base.parent().unwrap_or(Path::new(".")).join(p)
    }
}
