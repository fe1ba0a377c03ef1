//! Memoized validity of structures, keyed by a hash of their content.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use parking_lot::Mutex;

use super::algebra::{check_ainfinity, AInfinityAlgebra};
use super::bimodule::{check_bimodule, AInfinityBimodule};
use super::morphism::{check_bimodule_map, BimoduleMorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Algebra,
    Bimodule,
    Morphism,
}

fn cache() -> &'static Mutex<HashMap<(Kind, u64), bool>> {
    static CACHE: OnceLock<Mutex<HashMap<(Kind, u64), bool>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn content_hash<T: Hash>(x: &T) -> u64 {
    let mut h = DefaultHasher::new();
    x.hash(&mut h);
    h.finish()
}

fn memo<T: Hash>(kind: Kind, x: &T, run: impl FnOnce() -> bool) -> bool {
    let key = (kind, content_hash(x));
    if let Some(&v) = cache().lock().get(&key) {
        return v;
    }
    // Computed outside the lock; a concurrent duplicate computes the same value.
    let v = run();
    cache().lock().insert(key, v);
    v
}

pub fn algebra_is_valid(alg: &AInfinityAlgebra) -> bool {
    memo(Kind::Algebra, alg, || check_ainfinity(alg, None).passed())
}

pub fn bimodule_is_valid(bim: &AInfinityBimodule) -> bool {
    memo(Kind::Bimodule, bim, || check_bimodule(bim, None).passed())
}

pub fn morphism_is_valid(mor: &BimoduleMorphism) -> bool {
    memo(Kind::Morphism, mor, || check_bimodule_map(mor, None).passed())
}
