//! Exhaustive Hall-type check: a scheme with constant `K` exists iff every
//! nonempty set `Z` of internal vertices has `K·|∂*Z| >= |Z|`.

use crate::cayley::Automaton;
use crate::error::{Error, Result};

use super::Witness;

/// Largest number of internal vertices the oracle will enumerate subsets of.
pub const HALL_GUARD: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HallOutcome {
    Exists,
    Violated(Witness),
}

impl HallOutcome {
    pub fn exists(&self) -> bool {
        matches!(self, HallOutcome::Exists)
    }
}

pub fn hall_oracle(y: &Automaton) -> Result<HallOutcome> {
    hall_oracle_with_constant(y, 1)
}

/// Walks all subsets of `Y ∖ ∂Y` in Gray-code order, updating `|∂*Z|`
/// incrementally. Returns the first violating set found.
pub fn hall_oracle_with_constant(y: &Automaton, k: u32) -> Result<HallOutcome> {
    if k == 0 {
        return Err(Error::BadCapacity);
    }
    let internal: Vec<usize> = (0..y.len()).filter(|&v| !y.is_boundary(v)).collect();
    if internal.len() > HALL_GUARD {
        return Err(Error::TooLarge(internal.len(), HALL_GUARD));
    }
    let letters: Vec<_> = y.alphabet().letters().collect();
    // every slot of an internal vertex is filled
    let targets: Vec<Vec<usize>> =
        internal.iter().map(|&v| letters.iter().map(|&l| y.target(v, l).expect("internal")).collect()).collect();
    let mut member = vec![false; y.len()];
    let mut size = 0usize;
    let mut cheeger: i64 = 0;
    for step in 1u64..(1u64 << internal.len()) {
        let bit = step.trailing_zeros() as usize;
        let v = internal[bit];
        let mut delta: i64 = 0;
        for &t in &targets[bit] {
            if t == v {
                continue;
            }
            delta += if member[t] { -1 } else { 1 };
        }
        if member[v] {
            member[v] = false;
            size -= 1;
            cheeger -= delta;
        } else {
            member[v] = true;
            size += 1;
            cheeger += delta;
        }
        if size > 0 && (k as i64) * cheeger < size as i64 {
            return Ok(HallOutcome::Violated(Witness::from_mask(y, &member)));
        }
    }
    Ok(HallOutcome::Exists)
}
