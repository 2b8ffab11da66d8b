//! Learning sessions where a client answers the comparisons.
//!
//! Every session runs the three-level learner with deduced pairs skipped.
//! Sessions live in memory and, when a store path is given, every creation
//! and answer is appended to a JSON-lines log that is replayed on startup.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use posort_core::learner::{Phi3, Phi3Options, TraceEntry};
use posort_core::{PairOutcome, PosetJson};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_ITEMS: usize = 256;

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("no session {0}")]
    NotFound(String),
    #[error("{0}")]
    InvalidItems(String),
    #[error("pair ({a}, {b}) is not the pending comparison")]
    NotPending {
        a: usize,
        b: usize,
        pending: Option<Pair>,
    },
    #[error("answer {outcome} for ({a}, {b}) contradicts earlier answers")]
    Inconsistent {
        a: usize,
        b: usize,
        outcome: PairOutcome,
    },
    #[error("session is not finished")]
    NotDone,
    #[error("store {path}, line {line}: {msg}")]
    CorruptStore {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pair {
    pub a: usize,
    pub b: usize,
}

/// What a client sees of a session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub items: Vec<String>,
    pub pending: Option<Pair>,
    pub done: bool,
    pub known_relations: Vec<[usize; 2]>,
    pub known_incomparable: Vec<[usize; 2]>,
    /// covering pairs of the known relations
    pub hasse: Vec<[usize; 2]>,
    pub history: Vec<TraceEntry>,
    pub created: u64,
}

#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    items: Vec<String>,
    created: u64,
    learner: Phi3,
}

fn new_learner(n: usize) -> Phi3 {
    Phi3::new(n, Phi3Options { skip_forced: true })
}

pub fn validate_items(items: &[String]) -> Result<(), SessionError> {
    if items.len() < 2 || items.len() > MAX_ITEMS {
        return Err(SessionError::InvalidItems(format!(
            "need between 2 and {MAX_ITEMS} items, got {}",
            items.len()
        )));
    }
    for (i, name) in items.iter().enumerate() {
        if name.trim().is_empty() {
            return Err(SessionError::InvalidItems(format!(
                "item {i} has an empty name"
            )));
        }
        if items[..i].contains(name) {
            return Err(SessionError::InvalidItems(format!(
                "duplicate item {name:?}"
            )));
        }
    }
    Ok(())
}

impl Session {
    pub fn new(id: String, items: Vec<String>, created: u64) -> Result<Self, SessionError> {
        validate_items(&items)?;
        let learner = new_learner(items.len());
        Ok(Session {
            id,
            items,
            created,
            learner,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn pending(&mut self) -> Option<Pair> {
        self.learner.pending().map(|(a, b)| Pair { a, b })
    }

    /// Checks an answer against the pending pair and returns the learner
    /// state after it, without changing the session. The answer is
    /// normalized to the orientation of the pending pair.
    fn try_answer(
        &self,
        a: usize,
        b: usize,
        outcome: PairOutcome,
    ) -> Result<(Phi3, TraceEntry), SessionError> {
        let mut next = self.learner.clone();
        let pending = next.pending().map(|(a, b)| Pair { a, b });
        let entry = match pending {
            Some(p) if (p.a, p.b) == (a, b) => TraceEntry { a, b, outcome },
            Some(p) if (p.a, p.b) == (b, a) => TraceEntry {
                a: b,
                b: a,
                outcome: outcome.flip(),
            },
            _ => return Err(SessionError::NotPending { a, b, pending }),
        };
        next.answer(entry.outcome)
            .map_err(|_| SessionError::Inconsistent { a, b, outcome })?;
        Ok((next, entry))
    }

    pub fn answer(
        &mut self,
        a: usize,
        b: usize,
        outcome: PairOutcome,
    ) -> Result<TraceEntry, SessionError> {
        let (next, entry) = self.try_answer(a, b, outcome)?;
        self.learner = next;
        Ok(entry)
    }

    pub fn is_done(&mut self) -> bool {
        self.learner.is_done()
    }

    pub fn view(&mut self) -> SessionView {
        let pending = self.pending();
        let k = self.learner.knowledge();
        let mut known_relations: Vec<[usize; 2]> =
            k.known_relations().map(|(x, y)| [x, y]).collect();
        known_relations.sort_unstable();
        let known_incomparable = k
            .known_incomparable()
            .into_iter()
            .map(|(x, y)| [x, y])
            .collect();
        let hasse = k.hasse().pairs().map(|(x, y)| [x, y]).collect();
        SessionView {
            id: self.id.clone(),
            items: self.items.clone(),
            pending,
            done: pending.is_none(),
            known_relations,
            known_incomparable,
            hasse,
            history: self.learner.trace().to_vec(),
            created: self.created,
        }
    }

    pub fn result(&mut self) -> Result<PosetJson, SessionError> {
        if !self.is_done() {
            return Err(SessionError::NotDone);
        }
        let poset = self
            .learner
            .knowledge()
            .determined_poset()
            .expect("a finished session determines the order");
        Ok(poset.to_json())
    }
}

/// One line of the session log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "lowercase")]
pub enum LogRecord {
    Create {
        id: String,
        items: Vec<String>,
        created: u64,
    },
    Answer {
        id: String,
        a: usize,
        b: usize,
        outcome: PairOutcome,
    },
}

/// All sessions, with an optional append-only log.
#[derive(Debug, Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    log: Option<Mutex<File>>,
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl SessionStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Replays the log at `path` (if it exists) and appends to it from then on.
    pub fn open(path: &Path) -> Result<Self, SessionError> {
        let mut sessions = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let corrupt = |msg: String| SessionError::CorruptStore {
                    path: path.to_path_buf(),
                    line: i + 1,
                    msg,
                };
                let record: LogRecord =
                    serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
                match record {
                    LogRecord::Create { id, items, created } => {
                        let session = Session::new(id.clone(), items, created)
                            .map_err(|e| corrupt(e.to_string()))?;
                        sessions.insert(id, session);
                    }
                    LogRecord::Answer { id, a, b, outcome } => {
                        let session = sessions
                            .get_mut(&id)
                            .ok_or_else(|| corrupt(format!("answer for unknown session {id}")))?;
                        session
                            .answer(a, b, outcome)
                            .map_err(|e| corrupt(e.to_string()))?;
                    }
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(SessionStore {
            sessions: RwLock::new(
                sessions
                    .into_iter()
                    .map(|(id, s)| (id, Arc::new(Mutex::new(s))))
                    .collect(),
            ),
            log: Some(Mutex::new(file)),
        })
    }

    fn append(&self, record: &LogRecord) -> Result<(), SessionError> {
        if let Some(log) = &self.log {
            let mut line = serde_json::to_string(record).expect("log records serialize");
            line.push('\n');
            let mut file = log.lock().unwrap();
            file.write_all(line.as_bytes())?;
            file.flush()?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn create(&self, items: Vec<String>) -> Result<SessionView, SessionError> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let created = now();
        let mut session = Session::new(id.clone(), items.clone(), created)?;
        self.append(&LogRecord::Create {
            id: id.clone(),
            items,
            created,
        })?;
        let view = session.view();
        self.sessions
            .write()
            .unwrap()
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(view)
    }

    pub fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        self.sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::NotFound(id.to_string()))
    }

    pub fn view(&self, id: &str) -> Result<SessionView, SessionError> {
        let session = self.get(id)?;
        let mut s = session.lock().unwrap();
        Ok(s.view())
    }

    pub fn answer(
        &self,
        id: &str,
        a: usize,
        b: usize,
        outcome: PairOutcome,
    ) -> Result<SessionView, SessionError> {
        let session = self.get(id)?;
        let mut s = session.lock().unwrap();
        let (next, entry) = s.try_answer(a, b, outcome)?;
        self.append(&LogRecord::Answer {
            id: id.to_string(),
            a: entry.a,
            b: entry.b,
            outcome: entry.outcome,
        })?;
        s.learner = next;
        Ok(s.view())
    }

    pub fn result(&self, id: &str) -> Result<PosetJson, SessionError> {
        let session = self.get(id)?;
        let mut s = session.lock().unwrap();
        s.result()
    }
}
