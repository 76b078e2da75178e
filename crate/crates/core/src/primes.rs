//! The `n`-th prime (`p₀ = 2`), cached process-wide.

use std::sync::RwLock;

static PRIMES: RwLock<Vec<u64>> = RwLock::new(Vec::new());

pub fn nth_prime(n: usize) -> u64 {
    if let Some(&p) = PRIMES.read().expect("prime cache poisoned").get(n) {
        return p;
    }
    let mut primes = PRIMES.write().expect("prime cache poisoned");
    if primes.is_empty() {
        primes.push(2);
    }
    let mut candidate = *primes.last().unwrap() + 1;
    while primes.len() <= n {
        if primes
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| !candidate.is_multiple_of(p))
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes[n]
}
