//! Chain-length recursions and generalized exponentials, evaluated exactly
//! over big integers behind a resource guard.
//!
//! These recursions are designed to outgrow any fixed budget (the word
//! chain is Ackermann-like); exceeding the budget is reported as the bound
//! being beyond budget, never as a wrong number.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;

/// Guard for big-integer recursions: a cap on the bit size of any
/// intermediate value and on the recursion depth.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_bits: u64,
    pub max_depth: u64,
}

impl Default for Budget {
    fn default() -> Self {
        // Values capped at 2^24 bits, depth at 10^6.
        Budget { max_bits: 1 << 24, max_depth: 1_000_000 }
    }
}

impl Budget {
    fn check_value(&self, v: &BigUint, what: &str) -> Result<()> {
        if v.bits() > self.max_bits {
            return Err(Error::ResourceExceeded(format!(
                "{what} needs {} bits (cap {})",
                v.bits(),
                self.max_bits
            )));
        }
        Ok(())
    }

    fn check_depth(&self, depth: u64) -> Result<()> {
        if depth > self.max_depth {
            return Err(Error::ResourceExceeded(format!(
                "recursion depth {depth} exceeds cap {}",
                self.max_depth
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// Linear degree growth d_k = d + k: g(n, d) = d + g(n-1, 2d) = (2^n-1)d.
    Linear,
    /// Exponential degree growth d_k = d^k: g(n, d) = d + g(n-1, d^d),
    /// a tower of height n.
    Exponential,
    /// Lexicographic word chains: f(n+1, d, i) = f(n, d, d)
    /// + f(n+1, d + f(n, d, d), i - 1), f(1, d, i) = i, f(n, d, 0) = f(n-1, d, d).
    Word,
}

/// Evaluate the chain-length recursion exactly. `i` is required for (and
/// only for) the word kind.
pub fn chain_bound(kind: ChainKind, n: u64, d: &BigUint, i: Option<&BigUint>) -> Result<BigUint> {
    chain_bound_with(kind, n, d, i, Budget::default())
}

/// [`chain_bound`] under an explicit resource budget.
pub fn chain_bound_with(
    kind: ChainKind,
    n: u64,
    d: &BigUint,
    i: Option<&BigUint>,
    budget: Budget,
) -> Result<BigUint> {
    assert!(n >= 1, "chain bounds require n >= 1");
    assert!(!d.is_zero(), "chain bounds require d >= 1");
    match kind {
        ChainKind::Linear => {
            assert!(i.is_none(), "i is only meaningful for word chains");
            // g(n, d) = (2^n - 1) d, evaluated through the recursion with
            // memoized doubling; the closed form is asserted in tests.
            let mut total = BigUint::zero();
            let mut dk = d.clone();
            for _ in 0..n {
                total += &dk;
                dk = &dk << 1;
                budget.check_value(&dk, "linear chain degree")?;
            }
            budget.check_value(&total, "linear chain bound")?;
            Ok(total)
        }
        ChainKind::Exponential => {
            assert!(i.is_none(), "i is only meaningful for word chains");
            let mut total = BigUint::zero();
            let mut dk = d.clone();
            for step in 0..n {
                total += &dk;
                if step + 1 == n {
                    break;
                }
                dk = pow_guarded(&dk, &dk, &budget)?;
            }
            budget.check_value(&total, "exponential chain bound")?;
            Ok(total)
        }
        ChainKind::Word => {
            let i = i.expect("word chains require i");
            let mut memo = HashMap::new();
            let mut work = 0u64;
            word_chain(n, d, i, &budget, &mut work, &mut memo)
        }
    }
}

/// d1^d2 with an up-front bit-size check: the result needs about
/// d2 * log2(d1) bits.
fn pow_guarded(base: &BigUint, exp: &BigUint, budget: &Budget) -> Result<BigUint> {
    if base.is_zero() || base.is_one() {
        return Ok(base.clone());
    }
    let log2 = base.bits(); // upper bound for log2(base) + 1
    let needed = exp
        .to_u64()
        .and_then(|e| e.checked_mul(log2))
        .unwrap_or(u64::MAX);
    if needed > budget.max_bits {
        return Err(Error::ResourceExceeded(format!(
            "power needs about {needed} bits (cap {})",
            budget.max_bits
        )));
    }
    let e = exp.to_u64().expect("guarded above");
    let mut acc = BigUint::one();
    let mut b = base.clone();
    let mut k = e;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &b;
        }
        k >>= 1;
        if k > 0 {
            b = &b * &b;
        }
    }
    budget.check_value(&acc, "power")?;
    Ok(acc)
}

/// The i-direction of the recursion f(n, d, i) = f(n-1, d, d)
/// + f(n, d + f(n-1, d, d), i - 1) is a running sum, evaluated as a loop;
/// only the n-direction recurses natively (depth n). The loop iterations
/// are charged against the depth budget, and hopeless branches are pruned
/// up front (the value dominates (2^{i+1} - 1) d for n >= 2).
fn word_chain(
    n: u64,
    d: &BigUint,
    i: &BigUint,
    budget: &Budget,
    depth: &mut u64,
    memo: &mut HashMap<(u64, BigUint, BigUint), BigUint>,
) -> Result<BigUint> {
    budget.check_value(d, "word chain degree")?;
    if n == 1 {
        return Ok(i.clone());
    }
    let Some(i_small) = i.to_u64() else {
        return Err(Error::ResourceExceeded(
            "word chain third argument exceeds any evaluable range".into(),
        ));
    };
    if i_small > budget.max_depth.saturating_sub(*depth) {
        return Err(Error::ResourceExceeded(format!(
            "word chain needs at least {i_small} recursion levels (cap {})",
            budget.max_depth
        )));
    }
    if i_small.saturating_add(d.bits()) > budget.max_bits {
        return Err(Error::ResourceExceeded(format!(
            "word chain value needs about {} bits (cap {})",
            i_small.saturating_add(d.bits()),
            budget.max_bits
        )));
    }
    let memoizable = d.bits() <= 1024 && i_small <= 4096;
    let key = (n, d.clone(), i.clone());
    if memoizable {
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
    }
    let mut total = BigUint::zero();
    let mut d_cur = d.clone();
    let mut remaining = i_small;
    loop {
        *depth += 1;
        budget.check_depth(*depth)?;
        let head = word_chain(n - 1, &d_cur, &d_cur.clone(), budget, depth, memo)?;
        total += &head;
        budget.check_value(&total, "word chain bound")?;
        if remaining == 0 {
            break;
        }
        d_cur += &head;
        budget.check_value(&d_cur, "word chain degree")?;
        remaining -= 1;
    }
    if memoizable {
        memo.insert(key, total.clone());
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpKind {
    /// A(z+1, x, y+1) = A(z, x, A(z+1, x, y)); A(0,x,y) = y+1,
    /// A(1,x,0) = x, A(z,x,0) = 0 for z >= 2.
    Ackermann,
    /// tau(0, k) = k, tau(n+1, k) = 2^tau(n, k).
    Tower,
}

/// Exact evaluation of the generalized exponential scale.
pub fn generalized_exponential(kind: ExpKind, args: &[BigUint]) -> Result<BigUint> {
    generalized_exponential_with(kind, args, Budget::default())
}

/// [`generalized_exponential`] under an explicit resource budget.
pub fn generalized_exponential_with(
    kind: ExpKind,
    args: &[BigUint],
    budget: Budget,
) -> Result<BigUint> {
    match kind {
        ExpKind::Ackermann => {
            assert_eq!(args.len(), 3, "ackermann takes (z, x, y)");
            ackermann(&args[0], &args[1], &args[2], &budget, 0)
        }
        ExpKind::Tower => {
            assert_eq!(args.len(), 2, "tower takes (n, k)");
            let n = args[0].to_u64().ok_or_else(|| {
                Error::ResourceExceeded("tower height does not fit in u64".into())
            })?;
            let mut acc = args[1].clone();
            for _ in 0..n {
                acc = pow_guarded(&BigUint::from(2u32), &acc, &budget)?;
            }
            Ok(acc)
        }
    }
}

fn ackermann(z: &BigUint, x: &BigUint, y: &BigUint, budget: &Budget, depth: u64) -> Result<BigUint> {
    budget.check_depth(depth)?;
    let zero = BigUint::zero();
    let one = BigUint::one();
    if z.is_zero() {
        let v = y + &one;
        budget.check_value(&v, "ackermann")?;
        return Ok(v);
    }
    // Closed forms for the low levels keep the recursion shallow.
    if *z == one {
        let v = x + y;
        budget.check_value(&v, "ackermann")?;
        return Ok(v);
    }
    if *z == BigUint::from(2u32) {
        let v = x * y;
        budget.check_value(&v, "ackermann")?;
        return Ok(v);
    }
    if *z == BigUint::from(3u32) {
        return pow_guarded(x, y, budget);
    }
    if y.is_zero() {
        return Ok(zero);
    }
    let inner = ackermann(z, x, &(y - &one), budget, depth + 1)?;
    ackermann(&(z - &one), x, &inner, budget, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn linear_closed_form() {
        assert_eq!(chain_bound(ChainKind::Linear, 3, &b(5), None).unwrap(), b(35));
        for n in 1..=10u64 {
            for d in [1u64, 7, 100] {
                let got = chain_bound(ChainKind::Linear, n, &b(d), None).unwrap();
                let expect = ((1u128 << n) - 1) * d as u128;
                assert_eq!(got, BigUint::from(expect));
            }
        }
    }

    #[test]
    fn exponential_unrolls() {
        // g(2, 2) = 2 + g(1, 4) = 6.
        assert_eq!(chain_bound(ChainKind::Exponential, 2, &b(2), None).unwrap(), b(6));
        // g(3, 3) = 3 + 27 + 27^27.
        let expect = b(3) + b(27) + b(27).pow(27);
        assert_eq!(chain_bound(ChainKind::Exponential, 3, &b(3), None).unwrap(), expect);
    }

    #[test]
    fn exponential_towers_exceed_budget() {
        assert!(matches!(
            chain_bound(ChainKind::Exponential, 4, &b(3), None),
            Err(Error::ResourceExceeded(_))
        ));
    }

    #[test]
    fn word_boundary_and_small_values() {
        assert_eq!(chain_bound(ChainKind::Word, 1, &b(7), Some(&b(3))).unwrap(), b(3));
        // f(2, d, i) = (2^{i+1} - 1) d.
        for d in [1u64, 2, 5] {
            for i in [0u64, 1, 2, 3, 5] {
                let got = chain_bound(ChainKind::Word, 2, &b(d), Some(&b(i))).unwrap();
                let expect = ((1u128 << (i + 1)) - 1) * d as u128;
                assert_eq!(got, BigUint::from(expect), "d={d} i={i}");
            }
        }
    }

    #[test]
    fn word_exceeds_budget_for_n3() {
        for d in [2u64, 7] {
            assert!(matches!(
                chain_bound(ChainKind::Word, 3, &b(d), Some(&b(3))),
                Err(Error::ResourceExceeded(_))
            ));
        }
    }

    #[test]
    fn word_monotone_in_each_argument() {
        let f = |n: u64, d: u64, i: u64| chain_bound(ChainKind::Word, n, &b(d), Some(&b(i))).unwrap();
        assert!(f(2, 3, 2) <= f(2, 4, 2));
        assert!(f(2, 3, 2) <= f(2, 3, 3));
        assert!(f(1, 3, 2) <= f(2, 3, 2));
    }

    #[test]
    fn ackermann_closed_forms() {
        assert_eq!(
            generalized_exponential(ExpKind::Ackermann, &[b(2), b(6), b(7)]).unwrap(),
            b(42)
        );
        assert_eq!(
            generalized_exponential(ExpKind::Ackermann, &[b(3), b(2), b(10)]).unwrap(),
            b(1024)
        );
        assert_eq!(
            generalized_exponential(ExpKind::Ackermann, &[b(1), b(9), b(4)]).unwrap(),
            b(13)
        );
        // Base cases straight from the recursion.
        assert_eq!(generalized_exponential(ExpKind::Ackermann, &[b(0), b(5), b(9)]).unwrap(), b(10));
        assert_eq!(generalized_exponential(ExpKind::Ackermann, &[b(5), b(5), b(0)]).unwrap(), b(0));
        // Level 4 via the recursive rule: A(4,2,y+1) = 2^A(4,2,y) from
        // A(4,2,0) = 0, so the sequence runs 0, 1, 2, 4, 16.
        assert_eq!(generalized_exponential(ExpKind::Ackermann, &[b(4), b(2), b(3)]).unwrap(), b(4));
        assert_eq!(generalized_exponential(ExpKind::Ackermann, &[b(4), b(2), b(4)]).unwrap(), b(16));
    }

    #[test]
    fn tower_values() {
        assert_eq!(generalized_exponential(ExpKind::Tower, &[b(2), b(3)]).unwrap(), b(256));
        assert_eq!(generalized_exponential(ExpKind::Tower, &[b(3), b(2)]).unwrap(), b(65536));
        // Height 4 still fits (65537 bits); height 5 cannot.
        let t4 = generalized_exponential(ExpKind::Tower, &[b(4), b(2)]).unwrap();
        assert_eq!(t4.bits(), 65537);
        assert!(matches!(
            generalized_exponential(ExpKind::Tower, &[b(5), b(2)]),
            Err(Error::ResourceExceeded(_))
        ));
    }
}
