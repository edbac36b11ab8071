//! Abstract automata over the two-letter alphabet `{a, c}` for
//! cross-validating the solver against the Hall oracle.
//!
//! Each letter acts as a partial injection on the vertices, which is exactly a
//! Serre-paired slot assignment. Small vertex counts are enumerated
//! exhaustively; larger ones are drawn from a seeded ChaCha stream.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cayley::{Automaton, GenAlphabet, Letter};
use crate::error::Result;
use crate::exec::Exec;

use super::{hall_oracle, solve_pure, HallOutcome, Outcome};

pub type PartialInjection = Vec<Option<usize>>;

/// Every partial injection of `{0, .., n-1}` into itself.
pub fn partial_injections(n: usize) -> Vec<PartialInjection> {
    fn go(i: usize, n: usize, used: &mut Vec<bool>, cur: &mut PartialInjection, out: &mut Vec<PartialInjection>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        cur.push(None);
        go(i + 1, n, used, cur, out);
        cur.pop();
        for t in 0..n {
            if !used[t] {
                used[t] = true;
                cur.push(Some(t));
                go(i + 1, n, used, cur, out);
                cur.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

pub fn vertex_name(i: usize) -> String {
    format!("v{i:02}")
}

/// The automaton on `n` vertices where `a` acts by `maps[0]` and `c` by `maps[1]`.
pub fn abstract_automaton(n: usize, maps: [&PartialInjection; 2]) -> Result<Automaton> {
    let alphabet = GenAlphabet::abstract_symbols(&["a", "c"])?;
    let names: Vec<String> = (0..n).map(vertex_name).collect();
    let mut edges = Vec::new();
    for (sym, map) in maps.iter().enumerate() {
        for (u, t) in map.iter().enumerate() {
            if let Some(v) = t {
                edges.push((names[u].clone(), Letter::new(sym, false), names[*v].clone()));
            }
        }
    }
    Automaton::from_edges(alphabet, &names, &edges)
}

/// All automata with `1..=max_n` vertices (`(Σ_k C(n,k)² k!)²` of each size).
pub fn exhaustive(max_n: usize) -> Result<Vec<Automaton>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let maps = partial_injections(n);
        for a in &maps {
            for c in &maps {
                out.push(abstract_automaton(n, [a, c])?);
            }
        }
    }
    Ok(out)
}

fn random_injection(rng: &mut ChaCha8Rng, n: usize, density: f64) -> PartialInjection {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm.into_iter().map(|t| rng.gen_bool(density).then_some(t)).collect()
}

/// `per_size` automata for every size in `sizes`, from a fixed seed. Edge
/// density varies per instance so that both outcomes occur.
pub fn canonical_sample(sizes: std::ops::RangeInclusive<usize>, per_size: usize, seed: u64) -> Result<Vec<Automaton>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in sizes {
        for _ in 0..per_size {
            out.push(random_automaton(&mut rng, n)?);
        }
    }
    Ok(out)
}

/// `count` automata with sizes uniform in `1..=max_n`.
pub fn random_instances(count: usize, max_n: usize, seed: u64) -> Result<Vec<Automaton>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            random_automaton(&mut rng, n)
        })
        .collect()
}

fn random_automaton(rng: &mut ChaCha8Rng, n: usize) -> Result<Automaton> {
    let density = rng.gen_range(0.6..1.0);
    let a = random_injection(rng, n, density);
    let c = random_injection(rng, n, density);
    abstract_automaton(n, [&a, &c])
}

/// Result of running the solver and the oracle on one automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub solver_exists: bool,
    pub oracle_exists: bool,
    /// The returned scheme validates, or the returned witness verifies.
    pub certificate_valid: bool,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.solver_exists == self.oracle_exists && self.certificate_valid
    }
}

/// `None` for automata without boundary vertices.
pub fn cross_check(y: &Automaton) -> Result<Option<CrossCheck>> {
    if y.boundary_vertices().is_empty() {
        return Ok(None);
    }
    let solved = solve_pure(y)?;
    let oracle = hall_oracle(y)?;
    let certificate_valid = match &solved {
        Outcome::Scheme(s) => s.validate(y).is_ok(),
        Outcome::None(w) => w.verify(y, 1),
    };
    Ok(Some(CrossCheck {
        solver_exists: solved.exists(),
        oracle_exists: matches!(oracle, HallOutcome::Exists),
        certificate_valid,
    }))
}

/// Tally over a corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusSummary {
    pub checked: usize,
    pub skipped: usize,
    pub with_scheme: usize,
    pub failures: usize,
}

pub fn cross_check_all(corpus: &[Automaton], exec: Exec) -> Result<CorpusSummary> {
    let results = exec.map_slice(corpus, cross_check);
    let mut s = CorpusSummary::default();
    for r in results {
        match r? {
            None => s.skipped += 1,
            Some(c) => {
                s.checked += 1;
                s.with_scheme += c.solver_exists as usize;
                s.failures += !c.passed() as usize;
            }
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injection_counts() {
        let counts: Vec<usize> = (0..5).map(|n| partial_injections(n).len()).collect();
        assert_eq!(counts, [1, 2, 7, 34, 209]);
    }

    #[test]
    fn small_exhaustive_agrees() {
        let corpus = exhaustive(3).unwrap();
        assert_eq!(corpus.len(), 4 + 49 + 1156);
        let s = cross_check_all(&corpus, Exec::default()).unwrap();
        assert_eq!(s.failures, 0);
        assert!(s.with_scheme > 0 && s.with_scheme < s.checked);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = canonical_sample(5..=6, 3, 7).unwrap();
        let b = canonical_sample(5..=6, 3, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
    }
}
