use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Zero;
use rayon::prelude::*;

use super::finite::finite_part;
use crate::germs::Germ;
use crate::rat::int;
use crate::{Error, Rat, Result};

/// Controls for the permutation average.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpeerOptions {
    /// Largest ambient dimension accepted (`k!` permutations).
    pub budget: usize,
    /// Spread the outermost level of the recursion over the rayon pool.
    pub parallel: bool,
}

impl Default for SpeerOptions {
    fn default() -> Self {
        SpeerOptions { budget: 6, parallel: false }
    }
}

/// Checks that `sigma` is a permutation of `1..=k`.
pub fn check_permutation(sigma: &[usize], k: usize) -> Result<()> {
    if sigma.len() != k {
        return Err(Error::PermutationSizeMismatch { expected: k, found: sigma.len() });
    }
    let mut seen = vec![false; k];
    for &s in sigma {
        if s == 0 || s > k || std::mem::replace(&mut seen[s - 1], true) {
            return Err(Error::NotPermutation(sigma.to_vec()));
        }
    }
    Ok(())
}

/// `E^σ(f) = e_{σ(1)} ∘ ⋯ ∘ e_{σ(k)} (f)` with `e_{σ(k)}` applied first. `sigma` lists
/// 1-based variable indices.
pub fn speer_sigma(f: &Germ, sigma: &[usize]) -> Result<Rat> {
    check_permutation(sigma, f.nvars())?;
    let mut g = f.clone();
    for &j in sigma.iter().rev() {
        g = finite_part(&g, j)?;
    }
    Ok(constant_value(&g))
}

/// After every variable has been evaluated only constant terms remain.
fn constant_value(g: &Germ) -> Rat {
    debug_assert!(g.is_polynomial());
    g.polynomial_part().constant_term()
}

/// `E^F(f)`, the average of `E^σ(f)` over all permutations, with the default options.
pub fn speer_f(f: &Germ) -> Result<Rat> {
    speer_f_with(f, SpeerOptions::default())
}

/// `E^F` through `A(g, S) = (1/|S|) Σ_{j∈S} A(e_j g, S∖{j})`, where `S` is the set of
/// variables still to evaluate: grouping the permutations by their innermost index
/// gives the same sum as the `k!` compositions. Intermediate results are shared
/// through a memo keyed on the germ's canonical text and `S`.
pub fn speer_f_with(f: &Germ, opts: SpeerOptions) -> Result<Rat> {
    let k = f.nvars();
    // The remaining-variable set is a 64-bit mask.
    let budget = opts.budget.min(63);
    if k > budget {
        return Err(Error::DegreeBudgetExceeded { k, budget });
    }
    let memo = Memo::default();
    let full: u64 = (1u64 << k) - 1;
    if opts.parallel && k > 1 {
        let parts: Vec<Result<Rat>> = (0..k)
            .into_par_iter()
            .map(|x| average(&finite_part(f, x + 1)?, full & !(1 << x), &memo))
            .collect();
        let mut sum = Rat::zero();
        for p in parts {
            sum += p?;
        }
        Ok(sum / int(k as i64))
    } else {
        average(f, full, &memo)
    }
}

#[derive(Default)]
struct Memo {
    map: Mutex<HashMap<(String, u64), Rat>>,
}

impl Memo {
    fn get(&self, key: &(String, u64)) -> Option<Rat> {
        self.map.lock().expect("memo lock").get(key).cloned()
    }

    /// First writer wins; later writers computed the same value.
    fn publish(&self, key: (String, u64), value: Rat) {
        self.map.lock().expect("memo lock").entry(key).or_insert(value);
    }
}

fn average(g: &Germ, remaining: u64, memo: &Memo) -> Result<Rat> {
    if remaining == 0 {
        return Ok(constant_value(g));
    }
    if g.is_empty() {
        return Ok(Rat::zero());
    }
    let key = (g.to_string(), remaining);
    if let Some(v) = memo.get(&key) {
        return Ok(v);
    }
    let mut sum = Rat::zero();
    let mut count = 0i64;
    for x in 0..64 {
        if remaining & (1 << x) == 0 {
            continue;
        }
        count += 1;
        sum += average(&finite_part(g, x + 1)?, remaining & !(1 << x), memo)?;
    }
    let value = sum / int(count);
    memo.publish(key, value.clone());
    Ok(value)
}
