//! Integer-level reference implementation used as an oracle by the tests.
//! Nothing here calls into the library's coding or predicate code: symbols
//! are read off printed formulas, and codes are plain integers handled by
//! trial division.

#![allow(dead_code)]

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use godel_lab::syntax::{Formula, Term};

pub fn first_primes(n: usize) -> Vec<u64> {
    let mut ps: Vec<u64> = Vec::with_capacity(n);
    let mut c = 2u64;
    while ps.len() < n {
        if ps
            .iter()
            .take_while(|&&p| p * p <= c)
            .all(|&p| !c.is_multiple_of(p))
        {
            ps.push(c);
        }
        c += 1;
    }
    ps
}

fn prime(i: usize) -> u64 {
    static PRIMES: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    let ps = PRIMES.get_or_init(|| first_primes(4096));
    ps.get(i).copied().unwrap_or_else(|| first_primes(i + 1)[i])
}

/// `∏ p_i^{e_i}`.
pub fn seq_int(exps: &[BigUint]) -> BigUint {
    let mut n = BigUint::one();
    for (i, e) in exps.iter().enumerate() {
        let e = e.to_u32().expect("exponent fits in u32");
        n *= BigUint::from(prime(i)).pow(e);
    }
    n
}

pub fn seq_u64(codes: &[u64]) -> BigUint {
    seq_int(&codes.iter().map(|&c| BigUint::from(c)).collect::<Vec<_>>())
}

/// Exponents of consecutive primes, or `None` if some prime in the middle is
/// missing. `1` is the empty sequence.
pub fn factor_seq(x: &BigUint) -> Option<Vec<BigUint>> {
    if x.is_zero() {
        return None;
    }
    let mut rest = x.clone();
    let mut out = Vec::new();
    let mut i = 0;
    while !rest.is_one() {
        let p = BigUint::from(prime(i));
        let mut e = 0u64;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e == 0 {
            return None;
        }
        out.push(BigUint::from(e));
        i += 1;
    }
    Some(out)
}

/// Concatenation `x * y` of sequence numbers.
pub fn star(x: &BigUint, y: &BigUint) -> Option<BigUint> {
    let mut a = factor_seq(x)?;
    a.extend(factor_seq(y)?);
    Some(seq_int(&a))
}

/// `(x)_i`, zero when out of range.
pub fn component(x: &BigUint, i: usize) -> BigUint {
    factor_seq(x)
        .and_then(|v| v.get(i).cloned())
        .unwrap_or_default()
}

pub fn pow2(c: u64) -> BigUint {
    BigUint::from(2u32).pow(c as u32)
}

/// Symbol codes of the printed form of a formula (standard table, with
/// `A ↦ 1` for the toy atom).
pub fn printed_codes(s: &str) -> Vec<u64> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let rest = &s[i..];
        let (code, len) = match b[i] {
            b' ' => {
                i += 1;
                continue;
            }
            b'(' => (3, 1),
            b')' => (5, 1),
            b',' => (7, 1),
            b'~' => (9, 1),
            b'-' if rest.starts_with("->") => (11, 2),
            b'a' if rest.starts_with("all") => (13, 3),
            b'0' => (15, 1),
            b'=' => (17, 1),
            b'\'' => (19, 1),
            b'+' => (23, 1),
            b'.' => (25, 1),
            b's' if rest.starts_with("sb") => (27, 2),
            b'A' => (1, 1),
            b'x' => {
                let digits: String = rest[1..]
                    .chars()
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                let k: u64 = digits.parse().expect("variable index");
                (13 + 8 * k, 1 + digits.len())
            }
            other => panic!("unexpected character {:?} in {s:?}", other as char),
        };
        out.push(code);
        i += len;
    }
    out
}

/// Gödel number of a printed formula.
pub fn formula_int(s: &str) -> BigUint {
    seq_u64(&printed_codes(s))
}

/// `Neg(v) = 2^3 * 2^9 * v * 2^5`.
pub fn neg(v: &BigUint) -> Option<BigUint> {
    let a = star(&pow2(3), &pow2(9))?;
    star(&star(&a, v)?, &pow2(5))
}

pub fn mp_layout(x: &BigUint, z: &BigUint) -> Option<BigUint> {
    let mut y = star(&pow2(3), x)?;
    y = star(&y, &pow2(11))?;
    y = star(&y, z)?;
    star(&y, &pow2(5))
}

pub fn gen_layout(v: u64, x: &BigUint) -> Option<BigUint> {
    let mut y = pow2(3);
    for c in [3, 13, v, 5] {
        y = star(&y, &pow2(c))?;
    }
    y = star(&y, x)?;
    star(&y, &pow2(5))
}

// ---------------------------------------------------------------------------
// Toy calculus: symbols ( 3, ) 5, ~ 9, -> 11, A 1.

/// Toy formula recognizer on symbol-code strings.
pub fn toy_formula_codes(codes: &[u64]) -> bool {
    fn f(c: &[u64], i: usize) -> Option<usize> {
        match c.get(i)? {
            1 => Some(i + 1),
            3 => {
                if c.get(i + 1) == Some(&9) {
                    let j = f(c, i + 2)?;
                    (c.get(j) == Some(&5)).then_some(j + 1)
                } else {
                    let j = f(c, i + 1)?;
                    if c.get(j) != Some(&11) {
                        return None;
                    }
                    let k = f(c, j + 1)?;
                    (c.get(k) == Some(&5)).then_some(k + 1)
                }
            }
            _ => None,
        }
    }
    f(codes, 0) == Some(codes.len())
}

/// Symbol codes of an expression number: every exponent must be odd.
pub fn expression_codes(x: &BigUint) -> Option<Vec<u64>> {
    let exps = factor_seq(x)?;
    if exps.is_empty() {
        return None;
    }
    exps.iter()
        .map(|e| e.to_u64().filter(|c| c % 2 == 1))
        .collect()
}

pub fn toy_fml(x: &BigUint) -> bool {
    expression_codes(x).is_some_and(|c| toy_formula_codes(&c))
}

pub fn toy_gd(x: &BigUint) -> bool {
    expression_codes(x).is_some_and(|c| c.iter().all(|s| [1, 3, 5, 9, 11].contains(s)))
}

fn toy_ax(w: &BigUint) -> bool {
    *w == BigUint::from(2u32)
}

fn toy_mp(x: &BigUint, y: &BigUint, z: &BigUint) -> bool {
    toy_gd(x) && toy_gd(z) && mp_layout(x, z).as_ref() == Some(y)
}

/// The bounded-quantifier definition of `Prf` evaluated literally on every
/// `x ≤ limit`, each disjunct in turn. Gen never applies: the toy table has
/// no variables, so `EVbl` is false everywhere.
///
/// `∃u<x ∃v<x` ranges are searched over the `u` already known to satisfy
/// `Prf`, since `Prf(u)` is a conjunct of every disjunct that mentions `u`.
pub fn toy_prf_table(limit: u64) -> Vec<bool> {
    let mut prf = vec![false; limit as usize + 1];
    let mut proofs: Vec<u64> = Vec::new();
    for x in 1..=limit {
        let xb = BigUint::from(x);
        // x = 2^w ∧ Ax(w)
        let mut holds = (0..x.min(64)).any(|w| pow2(w) == xb && toy_ax(&BigUint::from(w)));
        if !holds {
            for &u in &proofs {
                let ub = BigUint::from(u);
                let lh = factor_seq(&ub).map_or(0, |s| s.len());
                for v in 0..x.min(64) {
                    let vb = BigUint::from(v);
                    // u * 2^v appends v to the sequence u
                    if star(&ub, &pow2(v)).as_ref() != Some(&xb) {
                        continue;
                    }
                    let ax = toy_ax(&vb);
                    let mp = (0..lh).any(|z| {
                        (0..lh).any(|w| {
                            let (uz, uw) = (component(&ub, z), component(&ub, w));
                            toy_fml(&uz) && toy_fml(&uw) && toy_mp(&uz, &uw, &vb)
                        })
                    });
                    if ax || mp {
                        holds = true;
                        break;
                    }
                }
                if holds {
                    break;
                }
            }
        }
        if holds {
            prf[x as usize] = true;
            proofs.push(x);
        }
    }
    prf
}

// ---------------------------------------------------------------------------
// Strategies

pub fn arb_term(depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![Just(Term::Zero), (1u32..=3).prop_map(Term::var)];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::succ),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::plus(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::times(a, b)),
        ]
    })
    .boxed()
}

pub fn arb_formula() -> BoxedStrategy<Formula> {
    let atom = (arb_term(2), arb_term(2)).prop_map(|(a, b)| Formula::eq(a, b));
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            ((1u32..=3), inner).prop_map(|(k, f)| Formula::forall(k, f)),
        ]
    })
    .boxed()
}

pub fn arb_toy_formula() -> BoxedStrategy<Formula> {
    Just(Formula::Atom)
        .prop_recursive(3, 10, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
            ]
        })
        .boxed()
}
