//! Shared service state: one evaluator per precision, a common disk
//! cache, and the default precision for requests that do not pin one.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use mzv_core::numeric_eval::{EvalConfig, EvalError, Evaluator};

pub struct AppState {
    default_digits: u32,
    cache_path: Option<PathBuf>,
    evaluators: Mutex<HashMap<u32, Arc<Evaluator>>>,
}

impl AppState {
    pub fn new(default_digits: u32, cache_path: Option<PathBuf>) -> Self {
        AppState {
            default_digits,
            cache_path,
            evaluators: Mutex::new(HashMap::new()),
        }
    }

    pub fn default_digits(&self) -> u32 {
        self.default_digits
    }

    pub fn config(&self, digits: Option<u32>) -> EvalConfig {
        EvalConfig {
            precision_digits: digits.unwrap_or(self.default_digits),
            guard_digits: 10,
            cache_path: self.cache_path.clone(),
        }
    }

    /// Evaluator for the requested precision, shared across requests.
    pub fn evaluator(&self, digits: Option<u32>) -> Result<Arc<Evaluator>, EvalError> {
        let digits = digits.unwrap_or(self.default_digits);
        let mut map = self.evaluators.lock().expect("evaluator map poisoned");
        if let Some(hit) = map.get(&digits) {
            return Ok(hit.clone());
        }
        let ev = Arc::new(Evaluator::new(self.config(Some(digits)))?);
        map.insert(digits, ev.clone());
        Ok(ev)
    }
}
