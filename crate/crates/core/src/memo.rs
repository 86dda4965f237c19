use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

/// Process-wide cache. Values are computed outside the lock, so recursive
/// computations may re-enter the same cache; if two threads race on a key
/// the first insertion wins and both get the same `Arc`.
pub(crate) struct Memo<K, V> {
    map: OnceLock<Mutex<HashMap<K, Arc<V>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Memo {
            map: OnceLock::new(),
        }
    }

    fn map(&self) -> &Mutex<HashMap<K, Arc<V>>> {
        self.map.get_or_init(Default::default)
    }

    pub(crate) fn get_or_compute(&self, key: &K, compute: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map().lock().unwrap().get(key) {
            return Arc::clone(v);
        }
        let value = Arc::new(compute());
        let mut map = self.map().lock().unwrap();
        Arc::clone(map.entry(key.clone()).or_insert(value))
    }
}
