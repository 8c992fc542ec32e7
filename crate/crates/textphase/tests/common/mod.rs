//! Minimal completion-endpoint stub for generation-protocol tests.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::atomic::{AtomicBool, AtomicU32, Ordering};
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;

pub struct StubServer {
    pub url: String,
    /// Every request seen, including ones answered with an error.
    pub requests: Arc<AtomicU32>,
    /// Parsed JSON bodies of all requests, in arrival order.
    pub bodies: Arc<Mutex<Vec<serde_json::Value>>>,
    shutdown: Arc<AtomicBool>,
    port: u16,
    handle: Option<JoinHandle<()>>,
}

pub struct StubBehavior {
    /// Completion tokens reported (and words emitted) per call.
    pub tokens_per_call: u32,
    /// Respond 500 to this many requests before succeeding.
    pub fail_first: u32,
    /// Demand an authorization header, else 401.
    pub require_auth: bool,
}

impl Default for StubBehavior {
    fn default() -> Self {
        Self {
            tokens_per_call: 100,
            fail_first: 0,
            require_auth: false,
        }
    }
}

impl StubServer {
    pub fn start(behavior: StubBehavior) -> Self {
        let listener = TcpListener::bind("127.0.0.1:0").expect("bind stub server");
        let port = listener.local_addr().unwrap().port();
        let requests = Arc::new(AtomicU32::new(0));
        let bodies = Arc::new(Mutex::new(Vec::new()));
        let fail_remaining = Arc::new(AtomicU32::new(behavior.fail_first));
        let shutdown = Arc::new(AtomicBool::new(false));

        let handle = {
            let requests = requests.clone();
            let bodies = bodies.clone();
            let shutdown = shutdown.clone();
            std::thread::spawn(move || {
                for stream in listener.incoming() {
                    if shutdown.load(Ordering::SeqCst) {
                        break;
                    }
                    let Ok(stream) = stream else { continue };
                    let requests = requests.clone();
                    let bodies = bodies.clone();
                    let fail_remaining = fail_remaining.clone();
                    let shutdown = shutdown.clone();
                    let tokens = behavior.tokens_per_call;
                    let require_auth = behavior.require_auth;
                    std::thread::spawn(move || {
                        serve_connection(
                            stream,
                            &requests,
                            &bodies,
                            &fail_remaining,
                            tokens,
                            require_auth,
                            &shutdown,
                        );
                    });
                }
            })
        };

        Self {
            url: format!("http://127.0.0.1:{port}"),
            requests,
            bodies,
            shutdown,
            port,
            handle: Some(handle),
        }
    }

    pub fn request_count(&self) -> u32 {
        self.requests.load(Ordering::SeqCst)
    }
}

impl Drop for StubServer {
    fn drop(&mut self) {
        self.shutdown.store(true, Ordering::SeqCst);
        // Unblock accept().
        let _ = TcpStream::connect(("127.0.0.1", self.port));
        if let Some(handle) = self.handle.take() {
            let _ = handle.join();
        }
    }
}

fn serve_connection(
    mut stream: TcpStream,
    requests: &AtomicU32,
    bodies: &Mutex<Vec<serde_json::Value>>,
    fail_remaining: &AtomicU32,
    tokens_per_call: u32,
    require_auth: bool,
    shutdown: &AtomicBool,
) {
    let mut reader = BufReader::new(match stream.try_clone() {
        Ok(s) => s,
        Err(_) => return,
    });
    loop {
        let mut request_line = String::new();
        match reader.read_line(&mut request_line) {
            Ok(0) | Err(_) => return,
            Ok(_) => {}
        }
        if shutdown.load(Ordering::SeqCst) {
            return;
        }
        let mut content_length = 0usize;
        let mut has_auth = false;
        loop {
            let mut header = String::new();
            match reader.read_line(&mut header) {
                Ok(0) | Err(_) => return,
                Ok(_) => {}
            }
            let header = header.trim();
            if header.is_empty() {
                break;
            }
            let lower = header.to_ascii_lowercase();
            if let Some(value) = lower.strip_prefix("content-length:") {
                content_length = value.trim().parse().unwrap_or(0);
            }
            if lower.starts_with("authorization:") {
                has_auth = true;
            }
        }
        let mut body = vec![0u8; content_length];
        if reader.read_exact(&mut body).is_err() {
            return;
        }
        requests.fetch_add(1, Ordering::SeqCst);
        if let Ok(json) = serde_json::from_slice::<serde_json::Value>(&body) {
            bodies.lock().unwrap().push(json);
        }

        let response = if require_auth && !has_auth {
            plain_response(401, "Unauthorized", r#"{"error":"missing bearer token"}"#)
        } else if fail_remaining
            .fetch_update(Ordering::SeqCst, Ordering::SeqCst, |v| v.checked_sub(1))
            .is_ok()
        {
            plain_response(500, "Internal Server Error", r#"{"error":"transient"}"#)
        } else {
            let text: String = (0..tokens_per_call).map(|_| " tok").collect();
            let body = serde_json::json!({
                "id": "cmpl-stub",
                "object": "text_completion",
                "choices": [{"text": text, "index": 0, "finish_reason": "length"}],
                "usage": {
                    "prompt_tokens": 1,
                    "completion_tokens": tokens_per_call,
                    "total_tokens": tokens_per_call + 1
                }
            })
            .to_string();
            plain_response(200, "OK", &body)
        };
        if stream.write_all(response.as_bytes()).is_err() {
            return;
        }
    }
}

fn plain_response(code: u16, reason: &str, body: &str) -> String {
    format!(
        "HTTP/1.1 {code} {reason}\r\ncontent-type: application/json\r\ncontent-length: {}\r\n\r\n{body}",
        body.len()
    )
}
