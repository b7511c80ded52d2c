//! Deterministic serialization: JSON with every float printed at 17
//! significant digits (enough to round-trip f64 bit-exactly), fixed-format
//! CSV fields, and atomic file writes. Byte-identical output for identical
//! inputs is a contract here — downstream checks compare artifacts by bytes.

use serde::Serialize;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

/// serde_json formatter that prints every finite float as `{:.16e}`:
/// one leading digit plus 16 fractional digits — 17 significant digits, the
/// round-trip precision of f64. Non-finite values never reach the formatter
/// (serde_json emits them as null).
#[derive(Debug, Default, Clone, Copy)]
pub struct Sig17Formatter;

impl serde_json::ser::Formatter for Sig17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize to a compact JSON string with 17-significant-digit floats.
pub fn to_string_17<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17Formatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json output is valid UTF-8"))
}

/// One float as a fixed-format CSV field (same 17-significant-digit format
/// as the JSON output).
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Write a file atomically: the content lands in a temporary file in the
/// destination directory and is renamed over the target, so a reader never
/// observes a half-written artifact and a failed write leaves the previous
/// file intact.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir: PathBuf = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path.file_name().ok_or_else(|| {
        io::Error::new(
            io::ErrorKind::InvalidInput,
            "output path has no file name component",
        )
    })?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result
}
