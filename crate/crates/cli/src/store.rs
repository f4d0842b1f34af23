//! Content-addressed result directory.
//!
//! Each envelope is written to `<digest>.json` through a temporary file and
//! a rename, so readers never see a partial file. `index.tsv` lists one
//! line per stored digest and is rewritten only while holding `index.lock`.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use crate::envelope::Envelope;

pub const INDEX_FILE: &str = "index.tsv";
pub const LOCK_FILE: &str = "index.lock";
const INDEX_HEADER: &str = "checksum\ttimestamp\tstatus\tcommand\tinputs";
const LOCK_TIMEOUT: Duration = Duration::from_secs(30);

/// Removes the lock file on drop.
struct IndexLock(PathBuf);

impl IndexLock {
    fn acquire(dir: &Path) -> io::Result<Self> {
        let path = dir.join(LOCK_FILE);
        let start = Instant::now();
        loop {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(mut f) => {
                    writeln!(f, "{}", std::process::id())?;
                    return Ok(IndexLock(path));
                }
                Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                    if start.elapsed() > LOCK_TIMEOUT {
                        return Err(io::Error::new(
                            io::ErrorKind::TimedOut,
                            format!("{} held for over {:?}; remove it if no writer is running", path.display(), LOCK_TIMEOUT),
                        ));
                    }
                    std::thread::sleep(Duration::from_millis(10));
                }
                Err(e) => return Err(e),
            }
        }
    }
}

impl Drop for IndexLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    let tmp = dir.join(format!(".{name}.{}.{n}.tmp", std::process::id()));
    {
        let mut f = File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

fn index_line(env: &Envelope) -> String {
    let mut cmd = env.config.command.clone();
    if let Some(op) = env.config.subcommand {
        cmd.push(' ');
        cmd.push_str(serde_json::to_value(op).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default().as_str());
    }
    let inputs: Vec<String> = env.config.inputs.iter().map(|i| i.to_string()).collect();
    let status = serde_json::to_value(env.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let clean = |s: &str| s.replace(['\t', '\n'], " ");
    format!("{}\t{}\t{}\t{}\t{}", env.digest(), env.timestamp, status, clean(&cmd), clean(&inputs.join(",")))
}

/// Stores `env` under `dir` and records it in the index. Returns the path
/// of the envelope file.
pub fn store(dir: &Path, env: &Envelope) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.json", env.digest()));
    write_atomic(&path, env.to_pretty().as_bytes())?;
    let _lock = IndexLock::acquire(dir)?;
    let index = dir.join(INDEX_FILE);
    let existing = fs::read_to_string(&index).unwrap_or_default();
    let mut lines: Vec<String> = existing
        .lines()
        .skip(1)
        .filter(|l| !l.is_empty() && l.split('\t').next() != Some(env.digest()))
        .map(String::from)
        .collect();
    lines.push(index_line(env));
    let mut text = String::from(INDEX_HEADER);
    text.push('\n');
    for l in lines {
        text.push_str(&l);
        text.push('\n');
    }
    write_atomic(&index, text.as_bytes())?;
    Ok(path)
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("not an envelope: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("checksum mismatch: recorded {recorded}, computed {computed}")]
    Checksum { recorded: String, computed: String },
    #[error("file name {name} does not match checksum {digest}")]
    FileName { name: String, digest: String },
}

/// Re-reads an envelope and validates its checksum, and the file name when
/// the file looks content-addressed.
pub fn verify(path: &Path) -> Result<Envelope, VerifyError> {
    let env: Envelope = serde_json::from_str(&fs::read_to_string(path)?)?;
    if !env.checksum_valid() {
        return Err(VerifyError::Checksum {
            recorded: env.checksum.clone(),
            computed: crate::envelope::checksum(&env.payload),
        });
    }
    if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
        let hexlike = stem.len() == 64 && stem.bytes().all(|b| b.is_ascii_hexdigit());
        if hexlike && stem != env.digest() {
            return Err(VerifyError::FileName { name: stem.to_string(), digest: env.digest().to_string() });
        }
    }
    Ok(env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;
    use serde_json::json;

    fn env(payload: serde_json::Value) -> Envelope {
        let config = RunConfig { command: "group".into(), ..Default::default() };
        Envelope::new(vec!["group".into()], config, "test/v1", payload, vec![], false)
    }

    #[test]
    fn store_and_verify() {
        let dir = tempfile::tempdir().unwrap();
        let a = env(json!({"x": 1}));
        let path = store(dir.path(), &a).unwrap();
        assert_eq!(verify(&path).unwrap().payload, a.payload);
        // Same payload again replaces the index line rather than adding one.
        store(dir.path(), &env(json!({"x": 1}))).unwrap();
        store(dir.path(), &env(json!({"x": 2}))).unwrap();
        let index = fs::read_to_string(dir.path().join(INDEX_FILE)).unwrap();
        assert_eq!(index.lines().count(), 3);
        assert!(!dir.path().join(LOCK_FILE).exists());
    }

    #[test]
    fn tampering_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let path = store(dir.path(), &env(json!({"x": 1}))).unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("\"x\": 1", "\"x\": 3");
        fs::write(&path, text).unwrap();
        assert!(matches!(verify(&path), Err(VerifyError::Checksum { .. })));
    }

    #[test]
    fn concurrent_writers_keep_every_line() {
        let dir = tempfile::tempdir().unwrap();
        std::thread::scope(|s| {
            for i in 0..8 {
                let d = dir.path();
                s.spawn(move || store(d, &env(json!({ "i": i }))).unwrap());
            }
        });
        let index = fs::read_to_string(dir.path().join(INDEX_FILE)).unwrap();
        assert_eq!(index.lines().count(), 9);
    }
}
