//! JSON-lines and CSV writers, and the CSV → JSON conversion used to check that both
//! formats carry the same data.

use std::io::Write;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::config::Format;
use crate::error::CliError;
use crate::records::{
    AlphaRecord, EntropyRecord, ExampleRecord, HodgeRecord, MasonRow, RatioRecord, SpikeRecord,
    TheoremRecord,
};

pub fn write_records<T: Serialize>(
    format: Format,
    records: &[T],
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn reparse<T: Serialize + DeserializeOwned>(csv_text: &str) -> Result<String, CliError> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let mut out = Vec::new();
    for row in reader.deserialize::<T>() {
        serde_json::to_writer(&mut out, &row?)?;
        out.push(b'\n');
    }
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

/// Reads CSV output of `command` back through its record type and writes it as JSON
/// lines; equal to the command's JSON output exactly when the CSV is lossless.
pub fn csv_to_json_lines(command: &str, csv_text: &str) -> Result<String, CliError> {
    match command {
        "verify-examples" => reparse::<ExampleRecord>(csv_text),
        "ratio" => reparse::<RatioRecord>(csv_text),
        "theorem1" | "theorem2" => reparse::<TheoremRecord>(csv_text),
        "mason" => reparse::<MasonRow>(csv_text),
        "hodge" => reparse::<HodgeRecord>(csv_text),
        "entropy" => reparse::<EntropyRecord>(csv_text),
        "spike" => reparse::<SpikeRecord>(csv_text),
        "alpha" => reparse::<AlphaRecord>(csv_text),
        _ => Err(CliError::Usage(format!("unknown command '{command}'"))),
    }
}
