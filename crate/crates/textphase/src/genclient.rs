//! Corpus generation against an OpenAI-compatible completion endpoint.
//!
//! For every (temperature, seed) pair the client repeatedly requests
//! continuations — passing the temperature and seed through, pinning
//! `top_p = 1` and sending no `top_k`, so temperature is the only sampling
//! knob — until the accumulated completion-token count reaches the target.
//! Each pair lands in `<model>_t<temperature>_s<seed>.txt` with a JSON
//! sidecar recording how it was produced; re-running skips completed pairs
//! without issuing any requests.

use std::collections::VecDeque;
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{corpus_filename, CorpusManifest, ManifestEntry};

/// Name of the environment variable holding the bearer token.
pub const API_KEY_ENV: &str = "TEXTPHASE_API_KEY";

/// Opening paragraph of a long public-domain novel; a long, neutral seed
/// passage for open-ended continuation.
pub const DEFAULT_PROMPT: &str = "Call me Ishmael. Some years ago\u{2014}never mind how long precisely\u{2014}having little or no money in my purse, and nothing particular to interest me on shore, I thought I would sail about a little and see the watery part of the world. It is a way I have of driving off the spleen and regulating the circulation. Whenever I find myself growing grim about the mouth; whenever it is a damp, drizzly November in my soul; whenever I find myself involuntarily pausing before coffin warehouses, and bringing up the rear of every funeral I meet; and especially whenever my hypos get such an upper hand of me, that it requires a strong moral principle to prevent me from deliberately stepping into the street, and methodically knocking people's hats off\u{2014}then, I account it high time to get to sea as soon as I can. This is my substitute for pistol and ball. With a philosophical flourish Cato throws himself upon his sword; I quietly take to the ship. There is nothing surprising in this. If they but knew it, almost all men in their degree, some time or other, cherish very nearly the same feelings towards the ocean with me.";

/// Default temperature grid: 0.1 to 2.5 in steps of 0.3.
pub fn default_temperatures() -> Vec<f64> {
    (0..9).map(|k| (1 + 3 * k) as f64 / 10.0).collect()
}

/// Default seed list: 1 through 10.
pub fn default_seeds() -> Vec<u64> {
    (1..=10).collect()
}

#[derive(Debug, Clone)]
pub struct GenerationConfig {
    pub endpoint_url: String,
    pub model: String,
    pub prompt: String,
    pub temperatures: Vec<f64>,
    pub seeds: Vec<u64>,
    /// Completion tokens to accumulate per (temperature, seed) pair.
    pub target_tokens: usize,
    pub max_tokens_per_call: u32,
    pub output_dir: PathBuf,
    /// Concurrent (temperature, seed) pairs in flight.
    pub max_in_flight: usize,
    /// Bearer token; read from [`API_KEY_ENV`] by the CLI.
    pub api_key: Option<String>,
    /// Attempts per request (1 initial + retries) with exponential backoff.
    pub max_attempts: u32,
    pub retry_backoff: Duration,
}

impl GenerationConfig {
    pub fn new(endpoint_url: &str, model: &str, output_dir: PathBuf) -> Self {
        Self {
            endpoint_url: endpoint_url.to_string(),
            model: model.to_string(),
            prompt: DEFAULT_PROMPT.to_string(),
            temperatures: default_temperatures(),
            seeds: default_seeds(),
            target_tokens: 10_000,
            max_tokens_per_call: 512,
            output_dir,
            max_in_flight: 4,
            api_key: std::env::var(API_KEY_ENV).ok(),
            max_attempts: 3,
            retry_backoff: Duration::from_millis(500),
        }
    }

    fn completions_url(&self) -> String {
        let base = self.endpoint_url.trim_end_matches('/');
        if base.ends_with("/v1") {
            format!("{base}/completions")
        } else {
            format!("{base}/v1/completions")
        }
    }
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error("endpoint unreachable after {attempts} attempts: {detail}")]
    EndpointUnreachable { attempts: u32, detail: String },
    #[error("authentication rejected and no {API_KEY_ENV} is set")]
    AuthMissing,
    #[error("server returned status {status} after {attempts} attempts")]
    ServerError { status: u16, attempts: u32 },
    #[error("malformed completion response: {0}")]
    BadResponse(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid generation config: {0}")]
    InvalidConfig(String),
}

#[derive(Serialize)]
struct CompletionRequest<'a> {
    model: &'a str,
    prompt: &'a str,
    temperature: f64,
    seed: u64,
    max_tokens: u32,
    /// Nucleus sampling disabled: the whole distribution stays eligible.
    top_p: f64,
}

#[derive(Deserialize)]
struct CompletionResponse {
    choices: Vec<CompletionChoice>,
    #[serde(default)]
    usage: Option<Usage>,
}

#[derive(Deserialize)]
struct CompletionChoice {
    #[serde(default)]
    text: String,
}

#[derive(Deserialize)]
struct Usage {
    #[serde(default)]
    completion_tokens: Option<u64>,
}

/// Per-pair bookkeeping, persisted as the sidecar JSON next to the text.
#[derive(Debug, Serialize, Deserialize)]
struct Sidecar {
    model: String,
    temperature: f64,
    seed: u64,
    target_tokens: usize,
    token_count: usize,
    word_count: usize,
    calls: u32,
    retries: u32,
    truncated: bool,
    complete: bool,
}

fn send_with_retry(
    agent: &ureq::Agent,
    config: &GenerationConfig,
    url: &str,
    request: &CompletionRequest<'_>,
    retries: &mut u32,
) -> Result<CompletionResponse, GenError> {
    let mut attempt = 0u32;
    loop {
        attempt += 1;
        let mut builder = agent.post(url);
        if let Some(key) = &config.api_key {
            builder = builder.header("authorization", format!("Bearer {key}"));
        }
        match builder.send_json(request) {
            Ok(mut response) => {
                return response
                    .body_mut()
                    .read_json::<CompletionResponse>()
                    .map_err(|e| GenError::BadResponse(e.to_string()));
            }
            Err(ureq::Error::StatusCode(code)) => {
                if code == 401 || code == 403 {
                    return if config.api_key.is_none() {
                        Err(GenError::AuthMissing)
                    } else {
                        Err(GenError::ServerError {
                            status: code,
                            attempts: attempt,
                        })
                    };
                }
                if code >= 500 && attempt < config.max_attempts {
                    *retries += 1;
                    std::thread::sleep(config.retry_backoff * 2u32.pow(attempt - 1));
                    continue;
                }
                return Err(GenError::ServerError {
                    status: code,
                    attempts: attempt,
                });
            }
            Err(err) => {
                if attempt < config.max_attempts {
                    *retries += 1;
                    std::thread::sleep(config.retry_backoff * 2u32.pow(attempt - 1));
                    continue;
                }
                return Err(GenError::EndpointUnreachable {
                    attempts: attempt,
                    detail: err.to_string(),
                });
            }
        }
    }
}

fn run_pair(
    agent: &ureq::Agent,
    config: &GenerationConfig,
    url: &str,
    temperature: f64,
    seed: u64,
) -> Result<ManifestEntry, GenError> {
    let file_name = corpus_filename(&config.model, temperature, seed);
    let text_path = config.output_dir.join(&file_name);
    let sidecar_path = text_path.with_extension("json");

    // Resume: a sidecar marked complete means zero requests for this pair.
    if let Ok(raw) = std::fs::read_to_string(&sidecar_path) {
        if let Ok(sidecar) = serde_json::from_str::<Sidecar>(&raw) {
            if sidecar.complete && text_path.exists() {
                return Ok(entry_from_sidecar(&text_path, &sidecar));
            }
        }
    }

    let mut accumulated = config.prompt.clone();
    let mut token_count = 0usize;
    let mut calls = 0u32;
    let mut retries = 0u32;
    let mut stalled = 0u32;
    let mut truncated = false;

    while token_count < config.target_tokens {
        let request = CompletionRequest {
            model: &config.model,
            prompt: &accumulated,
            temperature,
            seed,
            max_tokens: config.max_tokens_per_call,
            top_p: 1.0,
        };
        let response = send_with_retry(agent, config, url, &request, &mut retries)?;
        calls += 1;
        let choice = response
            .choices
            .into_iter()
            .next()
            .ok_or_else(|| GenError::BadResponse("no choices in response".into()))?;
        let got_tokens = match response.usage.and_then(|u| u.completion_tokens) {
            Some(t) => t as usize,
            // Servers without usage accounting: approximate by word count.
            None => choice.text.split_whitespace().count(),
        };
        if choice.text.is_empty() || got_tokens == 0 {
            stalled += 1;
            if stalled >= 3 {
                truncated = true;
                break;
            }
            continue;
        }
        stalled = 0;
        accumulated.push_str(&choice.text);
        token_count += got_tokens;
    }

    std::fs::write(&text_path, &accumulated).map_err(|source| GenError::Io {
        path: text_path.clone(),
        source,
    })?;
    let sidecar = Sidecar {
        model: config.model.clone(),
        temperature,
        seed,
        target_tokens: config.target_tokens,
        token_count,
        word_count: textphase_core::tokenize(&accumulated).len(),
        calls,
        retries,
        truncated,
        complete: true,
    };
    let json = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
    std::fs::write(&sidecar_path, json + "\n").map_err(|source| GenError::Io {
        path: sidecar_path.clone(),
        source,
    })?;
    Ok(entry_from_sidecar(&text_path, &sidecar))
}

fn entry_from_sidecar(text_path: &std::path::Path, sidecar: &Sidecar) -> ManifestEntry {
    let mut entry = ManifestEntry::new(
        text_path.to_path_buf(),
        sidecar.model.clone(),
        sidecar.temperature,
        sidecar.seed,
    );
    entry.target_tokens = Some(sidecar.target_tokens);
    entry.token_count = Some(sidecar.token_count);
    entry.word_count = Some(sidecar.word_count);
    entry.calls = Some(sidecar.calls);
    entry.retries = Some(sidecar.retries);
    entry.truncated = sidecar.truncated;
    entry
}

/// Generate every (temperature, seed) pair and return the manifest, which
/// is also written to `manifest.json` in the output directory. Pairs run
/// concurrently up to `max_in_flight`; completed files are skipped.
pub fn generate_corpus(config: &GenerationConfig) -> Result<CorpusManifest, GenError> {
    if config.temperatures.is_empty() || config.seeds.is_empty() {
        return Err(GenError::InvalidConfig(
            "need at least one temperature and one seed".into(),
        ));
    }
    if let Some(bad) = config
        .temperatures
        .iter()
        .find(|t| !t.is_finite() || **t <= 0.0)
    {
        return Err(GenError::InvalidConfig(format!(
            "temperatures must be finite and positive, got {bad}"
        )));
    }
    if config.target_tokens == 0 {
        return Err(GenError::InvalidConfig("target_tokens must be >= 1".into()));
    }
    std::fs::create_dir_all(&config.output_dir).map_err(|source| GenError::Io {
        path: config.output_dir.clone(),
        source,
    })?;

    let url = config.completions_url();
    let queue: Mutex<VecDeque<(f64, u64)>> = Mutex::new(
        config
            .temperatures
            .iter()
            .flat_map(|&t| config.seeds.iter().map(move |&s| (t, s)))
            .collect(),
    );
    let results: Mutex<Vec<Result<ManifestEntry, GenError>>> = Mutex::new(Vec::new());

    let workers = config.max_in_flight.max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let agent = ureq::Agent::new_with_defaults();
                loop {
                    let job = queue.lock().expect("queue lock").pop_front();
                    let Some((temperature, seed)) = job else { break };
                    let outcome = run_pair(&agent, config, &url, temperature, seed);
                    results.lock().expect("results lock").push(outcome);
                }
            });
        }
    });

    let mut entries = Vec::new();
    for outcome in results.into_inner().expect("results lock") {
        entries.push(outcome?);
    }
    entries.sort_by(|a, b| {
        (&a.model, a.temperature, a.seed)
            .partial_cmp(&(&b.model, b.temperature, b.seed))
            .expect("temperatures are finite")
    });
    let manifest = CorpusManifest {
        root: config.output_dir.clone(),
        entries,
        skipped: Vec::new(),
    };
    manifest
        .write_json(&config.output_dir.join("manifest.json"))
        .map_err(|source| GenError::Io {
            path: config.output_dir.join("manifest.json"),
            source,
        })?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_matches_protocol() {
        let temps = default_temperatures();
        assert_eq!(temps.len(), 9);
        assert_eq!(temps[0], 0.1);
        assert_eq!(temps[1], 0.4);
        assert_eq!(temps[8], 2.5);
        assert_eq!(default_seeds(), (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn completions_url_normalization() {
        let mut config = GenerationConfig::new("http://localhost:8080", "m", "/tmp/x".into());
        assert_eq!(
            config.completions_url(),
            "http://localhost:8080/v1/completions"
        );
        config.endpoint_url = "http://localhost:8080/v1/".into();
        assert_eq!(
            config.completions_url(),
            "http://localhost:8080/v1/completions"
        );
    }

    #[test]
    fn default_prompt_is_a_long_passage() {
        assert!(DEFAULT_PROMPT.starts_with("Call me Ishmael."));
        assert!(textphase_core::tokenize(DEFAULT_PROMPT).len() > 150);
    }
}
