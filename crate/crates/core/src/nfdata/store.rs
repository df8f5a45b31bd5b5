//! Store layout: a JSON header line, one canonical record line per field in
//! label order, then a JSON footer carrying the record count and the SHA-256
//! of every preceding byte.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{ingest_str, record_to_line, NfError, Snapshot};

const FORMAT: &str = "octic-nfdata";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    format: String,
    version: u32,
    provenance: String,
    ingest_time: Option<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Footer {
    records: usize,
    sha256: String,
}

pub fn to_bytes(snapshot: &Snapshot) -> Vec<u8> {
    let header = Header {
        format: FORMAT.into(),
        version: VERSION,
        provenance: snapshot.provenance.clone(),
        ingest_time: snapshot.ingest_time,
    };
    let mut body = serde_json::to_string(&header).expect("header serializes");
    body.push('\n');
    for r in snapshot.records.values() {
        body.push_str(&record_to_line(r));
        body.push('\n');
    }
    let footer = Footer {
        records: snapshot.records.len(),
        sha256: hex::encode(Sha256::digest(body.as_bytes())),
    };
    body.push_str(&serde_json::to_string(&footer).expect("footer serializes"));
    body.push('\n');
    body.into_bytes()
}

pub fn from_bytes(bytes: &[u8], path: &Path) -> Result<Snapshot, NfError> {
    let fail = |message: String| NfError::Store {
        path: path.to_path_buf(),
        message,
    };
    let text = std::str::from_utf8(bytes).map_err(|_| fail("not UTF-8".into()))?;
    let body_and_footer = text
        .strip_suffix('\n')
        .ok_or_else(|| fail("truncated: missing final newline".into()))?;
    let split = body_and_footer
        .rfind('\n')
        .ok_or_else(|| fail("truncated: no footer".into()))?;
    let (body, footer) = (&text[..=split], &body_and_footer[split + 1..]);
    let footer: Footer =
        serde_json::from_str(footer).map_err(|e| fail(format!("truncated or bad footer: {e}")))?;
    let digest = hex::encode(Sha256::digest(body.as_bytes()));
    if digest != footer.sha256 {
        return Err(fail("checksum mismatch".into()));
    }
    let (header, records) = body.split_once('\n').ok_or_else(|| fail("no header".into()))?;
    let header: Header =
        serde_json::from_str(header).map_err(|e| fail(format!("bad header: {e}")))?;
    if header.format != FORMAT || header.version != VERSION {
        return Err(fail(format!(
            "unsupported store {} v{}",
            header.format, header.version
        )));
    }
    let count = records.lines().count();
    if count != footer.records {
        return Err(fail(format!(
            "footer lists {} records, found {count}",
            footer.records
        )));
    }
    let mut snapshot = ingest_str(records, "").map_err(|e| fail(e.to_string()))?;
    if snapshot.records.len() != count {
        return Err(fail("duplicate records".into()));
    }
    snapshot.provenance = header.provenance;
    snapshot.ingest_time = header.ingest_time;
    Ok(snapshot)
}

/// Writes through a temporary sibling so a failed write leaves no partial
/// store behind.
pub fn persist(snapshot: &Snapshot, path: &Path) -> Result<(), NfError> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, to_bytes(snapshot)).map_err(|e| NfError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| NfError::io(path, e))
}

pub fn load(path: &Path) -> Result<Snapshot, NfError> {
    let bytes = std::fs::read(path).map_err(|e| NfError::io(path, e))?;
    from_bytes(&bytes, path)
}
