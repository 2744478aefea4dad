use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;

use super::{RootSystemData, Weight};

/// A word in the simple reflections, stored in application order:
/// `letters = [i, j, k]` means `w = s_k s_j s_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylWord {
    letters: Vec<usize>,
}

impl WeylWord {
    pub fn new(letters: Vec<usize>) -> Self {
        Self { letters }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// 0-based simple reflection indices in application order.
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn sign(&self) -> i32 {
        if self.letters.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn apply(&self, r: &RootSystemData, v: &Weight) -> Weight {
        self.letters
            .iter()
            .fold(v.clone(), |acc, &i| r.reflect_simple(&acc, i))
    }

    pub fn apply_inverse(&self, r: &RootSystemData, v: &Weight) -> Weight {
        self.letters
            .iter()
            .rev()
            .fold(v.clone(), |acc, &i| r.reflect_simple(&acc, i))
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.letters.iter().rev().copied().collect())
    }
}

impl fmt::Display for WeylWord {
    /// Conventional product notation with 1-based indices, leftmost
    /// factor applied last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .rev()
            .map(|i| format!("s{}", i + 1))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Orbits keyed by dominant representative. Read-mostly; safe to share
/// across worker threads.
#[derive(Debug, Default)]
pub struct OrbitCache {
    map: RwLock<HashMap<Weight, Arc<Vec<Weight>>>>,
}

impl OrbitCache {
    pub fn get_or_insert_with(
        &self,
        key: &Weight,
        make: impl FnOnce() -> Vec<Weight>,
    ) -> Arc<Vec<Weight>> {
        if let Some(v) = self.map.read().get(key) {
            return Arc::clone(v);
        }
        let built = Arc::new(make());
        let mut w = self.map.write();
        Arc::clone(w.entry(key.clone()).or_insert(built))
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
