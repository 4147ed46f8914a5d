use std::sync::{Arc, Mutex};

use lru::LruCache;

use crate::session::Session;
use crate::ApiError;

pub type SessionHandle = Arc<tokio::sync::Mutex<Session>>;

/// Bounded in-memory session store. When full, the least recently used
/// session that no request is holding is evicted.
pub struct SessionStore {
    capacity: usize,
    sessions: Mutex<LruCache<String, SessionHandle>>,
}

impl SessionStore {
    pub fn new(capacity: usize) -> SessionStore {
        SessionStore { capacity: capacity.max(1), sessions: Mutex::new(LruCache::unbounded()) }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn insert(&self, session: Session) -> Result<SessionHandle, ApiError> {
        let mut sessions = self.lock();
        if sessions.len() >= self.capacity {
            // The store holds one reference; a request in flight holds another.
            let idle = sessions.iter().rev().find(|(_, h)| Arc::strong_count(h) == 1).map(|(id, _)| id.clone());
            match idle {
                Some(id) => {
                    sessions.pop(&id);
                    tracing::debug!(%id, "evicted idle session");
                }
                None => return Err(ApiError::CapacityExceeded(self.capacity)),
            }
        }
        let id = session.id().to_string();
        let handle = Arc::new(tokio::sync::Mutex::new(session));
        sessions.put(id, handle.clone());
        Ok(handle)
    }

    /// Looks a session up and marks it recently used.
    pub fn get(&self, id: &str) -> Result<SessionHandle, ApiError> {
        self.lock().get(id).cloned().ok_or_else(|| ApiError::NotFound(id.to_string()))
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, LruCache<String, SessionHandle>> {
        self.sessions.lock().unwrap_or_else(|e| e.into_inner())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::{Engine, Engines};
    use xeno_core::game::Player;

    fn session(engines: &Engines, id: &str) -> Session {
        Session::create(id.into(), Engine::Solver, Player::Xeno, None, engines).unwrap()
    }

    #[test]
    fn evicts_least_recently_used_idle_session() {
        let engines = Engines::new();
        let store = SessionStore::new(2);
        store.insert(session(&engines, "a")).unwrap();
        store.insert(session(&engines, "b")).unwrap();
        store.get("a").unwrap();
        store.insert(session(&engines, "c")).unwrap();
        assert_eq!(store.len(), 2);
        assert!(store.get("a").is_ok());
        assert_eq!(store.get("b").err(), Some(ApiError::NotFound("b".into())));
    }

    #[test]
    fn busy_sessions_are_never_evicted() {
        let engines = Engines::new();
        let store = SessionStore::new(2);
        let a = store.insert(session(&engines, "a")).unwrap();
        let b = store.insert(session(&engines, "b")).unwrap();
        assert_eq!(store.insert(session(&engines, "c")).err(), Some(ApiError::CapacityExceeded(2)));
        drop(a);
        store.insert(session(&engines, "c")).unwrap();
        assert!(store.get("a").is_err());
        assert!(store.get("b").is_ok());
        drop(b);
    }
}
