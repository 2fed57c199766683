//! Shared run context: output directory, emit format, manifests, and the
//! optional prefix cache.

use std::path::{Path, PathBuf};
use std::time::Instant;

use balancelab::words::{FiniteWord, WordSource};
use balancelab::ExecMode;
use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    /// Bad input: malformed specs, unknown names, unsatisfiable parameters.
    Validation(String),
    /// Unexpected environment failures (output IO and the like).
    Internal(String),
}

impl From<balancelab::Error> for CliError {
    fn from(e: balancelab::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EmitKind {
    Json,
    Csv,
    Plotdata,
}

pub struct Context {
    pub out_dir: PathBuf,
    pub emit: EmitKind,
    pub jobs: usize,
    pub rng_seed: u64,
    pub mode: ExecMode,
}

#[derive(Serialize)]
pub struct Manifest {
    pub command: String,
    pub tool_version: String,
    pub parameters: serde_json::Value,
    pub source: Option<String>,
    pub outputs: Vec<String>,
    pub jobs: usize,
    pub rng_seed: u64,
    pub wall_clock_ms: u128,
}

pub struct Run<'a> {
    context: &'a Context,
    command: String,
    parameters: serde_json::Value,
    source: Option<String>,
    outputs: Vec<String>,
    started: Instant,
}

impl<'a> Run<'a> {
    pub fn new(context: &'a Context, command: &str, parameters: serde_json::Value) -> Self {
        Run {
            context,
            command: command.to_string(),
            parameters,
            source: None,
            outputs: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn describe_source(&mut self, description: &str) {
        self.source = Some(description.to_string());
    }

    /// Write one output file under the run's directory and record it.
    pub fn write(&mut self, name: &str, contents: &str) -> CliResult<PathBuf> {
        std::fs::create_dir_all(&self.context.out_dir)
            .map_err(|e| CliError::Internal(format!("create {:?}: {e}", self.context.out_dir)))?;
        let path = self.context.out_dir.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| CliError::Internal(format!("write {path:?}: {e}")))?;
        self.outputs.push(name.to_string());
        Ok(path)
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> CliResult<PathBuf> {
        let text = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::Internal(format!("serialize {name}: {e}")))?;
        self.write(name, &(text + "\n"))
    }

    /// Finish the run: write the manifest and return the exit code.
    pub fn finish(mut self) -> CliResult<i32> {
        let manifest = Manifest {
            command: self.command.clone(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: self.parameters.clone(),
            source: self.source.clone(),
            outputs: self.outputs.clone(),
            jobs: self.context.jobs,
            rng_seed: self.context.rng_seed,
            wall_clock_ms: self.started.elapsed().as_millis(),
        };
        let name = format!("{}.manifest.json", self.command);
        let text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| CliError::Internal(format!("manifest: {e}")))?;
        std::fs::create_dir_all(&self.context.out_dir)
            .map_err(|e| CliError::Internal(format!("create {:?}: {e}", self.context.out_dir)))?;
        std::fs::write(self.context.out_dir.join(&name), text + "\n")
            .map_err(|e| CliError::Internal(format!("write manifest: {e}")))?;
        self.outputs.push(name);
        Ok(0)
    }
}

/// Cache-aware prefix materialization. With BALANCELAB_CACHE_DIR set,
/// prefixes are stored as word files keyed by the source description and
/// length; a stale or foreign entry is silently recomputed, so the cache
/// never changes results.
pub fn materialize(source: &WordSource, len: usize) -> CliResult<FiniteWord> {
    let cache_dir = match std::env::var_os("BALANCELAB_CACHE_DIR") {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => return Ok(source.prefix(len)?),
    };
    let key = cache_key(source.description(), len);
    let path = cache_dir.join(key);
    if let Some(word) = read_cached(&path, source, len) {
        return Ok(word);
    }
    let word = source.prefix(len)?;
    let _ = std::fs::create_dir_all(&cache_dir);
    let _ = std::fs::write(&path, balancelab::words::io::write_word(&word));
    Ok(word)
}

fn read_cached(path: &Path, source: &WordSource, len: usize) -> Option<FiniteWord> {
    let text = std::fs::read_to_string(path).ok()?;
    let word = balancelab::words::io::read_word(&text).ok()?;
    if word.len() == len && word.alphabet().as_ref() == source.alphabet().as_ref() {
        Some(word)
    } else {
        None
    }
}

fn cache_key(description: &str, len: usize) -> String {
    let mut hash = 0xcbf29ce484222325u64;
    for b in description.as_bytes() {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}_{len}.word")
}
