//! Versioned, self-checking binary model files.
//!
//! Layout: 4 magic bytes, a little-endian `u16` format version, a `u64`
//! payload length, the bincode-encoded model, and a CRC32 of the payload.
//! Floating-point parameters round-trip bit-exactly, so a loaded model scores
//! texts identically to the one that was saved.

use std::fs;
use std::path::Path;

use super::ClassifierModel;

const MAGIC: [u8; 4] = *b"LLMP";

/// Current model-file format version.
pub const MODEL_FORMAT_VERSION: u16 = 1;

const HEADER_LEN: usize = 4 + 2 + 8;

/// Errors from model persistence.
#[derive(Debug, thiserror::Error)]
pub enum ModelIoError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("corrupt model file: {reason}")]
    CorruptFile { reason: String },
    #[error("model file format version {found} (this build reads version {supported})")]
    VersionMismatch { found: u16, supported: u16 },
    #[error("model encoding failed: {0}")]
    Encode(String),
}

pub fn save_model(model: &ClassifierModel, path: &Path) -> Result<(), ModelIoError> {
    let payload = bincode::serialize(model).map_err(|e| ModelIoError::Encode(e.to_string()))?;
    let mut bytes = Vec::with_capacity(HEADER_LEN + payload.len() + 4);
    bytes.extend_from_slice(&MAGIC);
    bytes.extend_from_slice(&MODEL_FORMAT_VERSION.to_le_bytes());
    bytes.extend_from_slice(&(payload.len() as u64).to_le_bytes());
    bytes.extend_from_slice(&payload);
    bytes.extend_from_slice(&crc32fast::hash(&payload).to_le_bytes());
    fs::write(path, bytes)?;
    Ok(())
}

pub fn load_model(path: &Path) -> Result<ClassifierModel, ModelIoError> {
    let bytes = fs::read(path)?;
    if bytes.len() < HEADER_LEN + 4 {
        return Err(ModelIoError::CorruptFile {
            reason: format!("file too short ({} bytes)", bytes.len()),
        });
    }
    if bytes[..4] != MAGIC {
        return Err(ModelIoError::CorruptFile {
            reason: "bad magic bytes".into(),
        });
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != MODEL_FORMAT_VERSION {
        return Err(ModelIoError::VersionMismatch {
            found: version,
            supported: MODEL_FORMAT_VERSION,
        });
    }
    let payload_len = u64::from_le_bytes(bytes[6..14].try_into().unwrap()) as usize;
    if bytes.len() != HEADER_LEN + payload_len + 4 {
        return Err(ModelIoError::CorruptFile {
            reason: format!(
                "length mismatch: header says {payload_len} payload bytes, file has {}",
                bytes.len() - HEADER_LEN - 4
            ),
        });
    }
    let payload = &bytes[HEADER_LEN..HEADER_LEN + payload_len];
    let stored_crc = u32::from_le_bytes(bytes[HEADER_LEN + payload_len..].try_into().unwrap());
    let actual_crc = crc32fast::hash(payload);
    if stored_crc != actual_crc {
        return Err(ModelIoError::CorruptFile {
            reason: format!("checksum mismatch (stored {stored_crc:08x}, computed {actual_crc:08x})"),
        });
    }
    bincode::deserialize(payload).map_err(|e| ModelIoError::CorruptFile {
        reason: format!("payload decode failed: {e}"),
    })
}
