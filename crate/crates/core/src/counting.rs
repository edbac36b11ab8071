//! Exact counts for Brown–Belk sets by convolution.
//!
//! With `f[l]` the number of trees with `l` leaves and height `<= k`, and
//! `F[n]` the number of (possibly empty) forests with `n` leaves, a marked
//! forest splits as *left forest · marked tree · right forest*, so
//! `|BB(n, k)| = (F * f * F)[n]`. Each `ν(a)` is a similar convolution in
//! which the marked tree and its neighbours are constrained.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cayley::GenAlphabet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fgroup::Generator;
use crate::ratio::{format_ratio, ratio, to_decimal, Rational};

/// Significant digits for decimal renderings.
pub const DECIMAL_DIGITS: usize = 12;

/// Exact `num / den`; `den` must be nonzero.
pub fn exact_ratio(num: &BigUint, den: &BigUint) -> Rational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// `f[l]` for `0 <= l <= max_leaves`: trees with `l` leaves and height at most `k`.
pub fn tree_counts(k: usize, max_leaves: usize) -> Vec<BigUint> {
    tree_counts_with(k, max_leaves, Exec::default())
}

pub fn tree_counts_with(k: usize, max_leaves: usize, exec: Exec) -> Vec<BigUint> {
    let mut f = vec![BigUint::zero(); max_leaves + 1];
    if max_leaves >= 1 {
        f[1] = BigUint::one();
    }
    for _ in 0..k {
        let mut next = convolve(&f, &f, max_leaves, exec);
        if max_leaves >= 1 {
            next[1] = BigUint::one();
        }
        f = next;
    }
    f
}

fn support(a: &[BigUint]) -> Option<(usize, usize)> {
    let lo = a.iter().position(|x| !x.is_zero())?;
    let hi = a.iter().rposition(|x| !x.is_zero())?;
    Some((lo, hi))
}

/// `c[m] = Σ a[i] b[m - i]` for `m <= max`.
fn convolve(a: &[BigUint], b: &[BigUint], max: usize, exec: Exec) -> Vec<BigUint> {
    let (Some((alo, ahi)), Some((blo, bhi))) = (support(a), support(b)) else {
        return vec![BigUint::zero(); max + 1];
    };
    exec.map_range(max + 1, |m| {
        if m < alo + blo {
            return BigUint::zero();
        }
        // i in [alo, ahi] and m - i in [blo, bhi]
        let lo = alo.max(m.saturating_sub(bhi));
        let hi = ahi.min(m - blo);
        if lo > hi {
            return BigUint::zero();
        }
        (lo..=hi)
            .filter(|&i| !a[i].is_zero() && !b[m - i].is_zero())
            .map(|i| &a[i] * &b[m - i])
            .sum()
    })
}

/// Tables for one height cap `k`, valid for `n <= max_n`. Auxiliary
/// convolutions are built on first use and shared read-only afterwards.
pub struct CountTable {
    k: usize,
    max_n: usize,
    exec: Exec,
    trees: Vec<BigUint>,
    shorter: Vec<BigUint>,
    forests: Vec<BigUint>,
    tree_forest: OnceLock<Vec<BigUint>>,
    forest_forest: OnceLock<Vec<BigUint>>,
    joinable_forest: OnceLock<Vec<BigUint>>,
    tree_nontrivial_forest: OnceLock<Vec<BigUint>>,
    tree_joinable_forest: OnceLock<Vec<BigUint>>,
    exact_exact_forest: OnceLock<Vec<BigUint>>,
    marked: OnceLock<Vec<BigUint>>,
}

impl CountTable {
    pub fn new(k: usize, max_n: usize) -> Self {
        Self::with_exec(k, max_n, Exec::default())
    }

    pub fn with_exec(k: usize, max_n: usize, exec: Exec) -> Self {
        let trees = tree_counts_with(k, max_n, exec);
        let shorter = if k == 0 { vec![BigUint::zero(); max_n + 1] } else { tree_counts_with(k - 1, max_n, exec) };
        let top = support(&trees).map_or(0, |(_, hi)| hi);
        let mut forests = vec![BigUint::zero(); max_n + 1];
        forests[0] = BigUint::one();
        for n in 1..=max_n {
            let value: BigUint = exec.sum_range(1..top.min(n) + 1, |l| &trees[l] * &forests[n - l]);
            forests[n] = value;
        }
        CountTable {
            k,
            max_n,
            exec,
            trees,
            shorter,
            forests,
            tree_forest: OnceLock::new(),
            forest_forest: OnceLock::new(),
            joinable_forest: OnceLock::new(),
            tree_nontrivial_forest: OnceLock::new(),
            tree_joinable_forest: OnceLock::new(),
            exact_exact_forest: OnceLock::new(),
            marked: OnceLock::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// `f[l]`.
    pub fn trees(&self) -> &[BigUint] {
        &self.trees
    }

    /// `F[n]`, with `F[0] = 1` for the empty forest.
    pub fn forests(&self) -> &[BigUint] {
        &self.forests
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.max_n {
            return Err(Error::InvalidParameter(format!("n = {n} outside 1..={}", self.max_n)));
        }
        Ok(())
    }

    fn conv(&self, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
        convolve(a, b, self.max_n, self.exec)
    }

    fn tree_forest(&self) -> &[BigUint] {
        self.tree_forest.get_or_init(|| self.conv(&self.trees, &self.forests))
    }

    fn forest_forest(&self) -> &[BigUint] {
        self.forest_forest.get_or_init(|| self.conv(&self.forests, &self.forests))
    }

    /// Two adjacent trees of height `< k`, then a forest.
    fn joinable_forest(&self) -> &[BigUint] {
        self.joinable_forest.get_or_init(|| {
            let gg = self.conv(&self.shorter, &self.shorter);
            self.conv(&gg, &self.forests)
        })
    }

    /// A tree, a nontrivial tree, then a forest.
    fn tree_nontrivial_forest(&self) -> &[BigUint] {
        self.tree_nontrivial_forest.get_or_init(|| {
            let mut nontrivial = self.trees.clone();
            if nontrivial.len() > 1 {
                nontrivial[1] = BigUint::zero();
            }
            let nf = self.conv(&nontrivial, &self.forests);
            self.conv(&self.trees, &nf)
        })
    }

    /// A tree, two trees of height `< k`, then a forest.
    fn tree_joinable_forest(&self) -> &[BigUint] {
        self.tree_joinable_forest.get_or_init(|| self.conv(&self.trees, self.joinable_forest()))
    }

    /// Two trees of height exactly `k`, then a forest.
    fn exact_exact_forest(&self) -> &[BigUint] {
        self.exact_exact_forest.get_or_init(|| {
            let exact: Vec<BigUint> = self.trees.iter().zip(&self.shorter).map(|(a, b)| a - b).collect();
            let ef = self.conv(&exact, &self.forests);
            self.conv(&exact, &ef)
        })
    }

    /// `Σ_a F[a] table[n - a]`: prepends an arbitrary forest.
    fn with_left_forest(&self, table: &[BigUint], n: usize) -> BigUint {
        self.exec.sum_range(0..n + 1, |a| &self.forests[a] * &table[n - a])
    }

    fn marked(&self) -> &[BigUint] {
        self.marked.get_or_init(|| self.conv(&self.forests, self.tree_forest()))
    }

    /// `|BB(n, k)|`.
    pub fn bb_count(&self, n: usize) -> Result<BigUint> {
        self.check(n)?;
        Ok(self.marked()[n].clone())
    }

    /// `ν` of one generator letter: marked forests on which it is not defined.
    pub fn nu(&self, n: usize, generator: Generator, inverse: bool) -> Result<BigUint> {
        self.check(n)?;
        use Generator::*;
        Ok(match (generator, inverse) {
            // marker leftmost, resp. rightmost
            (X0, _) => self.tree_forest()[n].clone(),
            // marked tree trivial
            (X1, false) | (XBar1, false) => self.forest_forest()[n - 1].clone(),
            // neighbour on the join side missing, or a height reaching k
            (X1, true) | (XBar1, true) => self.bb_count(n)? - self.with_left_forest(self.joinable_forest(), n),
            // right neighbour missing or trivial
            (X2, false) => self.bb_count(n)? - self.with_left_forest(self.tree_nontrivial_forest(), n),
            (X2, true) => self.bb_count(n)? - self.with_left_forest(self.tree_joinable_forest(), n),
        })
    }

    /// `|Y0|`: trivial marked tree flanked by two trees of height exactly `k`.
    pub fn y0_count(&self, n: usize) -> Result<BigUint> {
        self.check(n)?;
        if self.k == 0 {
            return Ok(BigUint::zero());
        }
        // left forest, the marked dot, then both neighbours and the right forest
        let t = self.exact_exact_forest();
        Ok(self.exec.sum_range(0..n, |a| &self.forests[a] * &t[n - 1 - a]))
    }

    /// `ν(a)` for every letter of an alphabet whose symbols name generators.
    pub fn nu_counts(&self, n: usize, alphabet: &GenAlphabet) -> Result<Vec<(String, BigUint)>> {
        alphabet
            .letters()
            .map(|l| {
                let (g, inv) = alphabet.generator(l).ok_or_else(|| {
                    Error::BadAlphabet(format!("symbol `{}` is not a generator", alphabet.letter_name(l)))
                })?;
                Ok((alphabet.letter_name(l), self.nu(n, g, inv)?))
            })
            .collect()
    }

    pub fn density_report(&self, n: usize, alphabet: &GenAlphabet) -> Result<DensityRecord> {
        let size = self.bb_count(n)?;
        let nu = self.nu_counts(n, alphabet)?;
        let cheeger: BigUint = nu.iter().map(|(_, c)| c).sum();
        let iota = exact_ratio(&cheeger, &size);
        let delta = ratio(2 * alphabet.m() as u64, 1u64) - &iota;
        let p = if self.k >= 1 { Some(exact_ratio(&self.y0_count(n)?, &size)) } else { None };
        let xi = if n >= 2 { Some(exact_ratio(&self.bb_count(n - 1)?, &size)) } else { None };
        Ok(DensityRecord {
            n,
            k: self.k,
            alphabet: alphabet.spec_string(),
            m: alphabet.m(),
            size,
            nu,
            delta,
            iota,
            p,
            xi,
        })
    }

    pub fn xi_estimate(&self, n: usize) -> Result<XiEstimate> {
        if n < 2 {
            return Err(Error::InvalidParameter("xi needs n >= 2".into()));
        }
        let at = |n: usize| -> Result<Rational> { Ok(exact_ratio(&self.bb_count(n - 1)?, &self.bb_count(n)?)) };
        let value = at(n)?;
        let previous = if n >= 3 { Some(at(n - 1)?) } else { None };
        let difference = previous.as_ref().map(|p| &value - p);
        Ok(XiEstimate { k: self.k, n, ratio: value, previous, difference })
    }

    pub fn trimmed_density(&self, n: usize) -> Result<TrimmedDensity> {
        if self.k == 0 {
            return Err(Error::InvalidParameter("trimmed density needs k >= 1".into()));
        }
        let alphabet = GenAlphabet::from_generators(&[Generator::X0, Generator::X1, Generator::XBar1])?;
        let rec = self.density_report(n, &alphabet)?;
        let p = rec.p.clone().unwrap_or_else(Rational::zero);
        let trimmed = trimmed_formula(&rec.delta, &p)?;
        let iota_upper = ratio(6, 1) - &trimmed;
        Ok(TrimmedDensity { n, k: self.k, delta: rec.delta, p, trimmed, iota_upper })
    }
}

/// `|BB(n, k)|`.
pub fn bb_count(n: usize, k: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    CountTable::new(k, n).bb_count(n).expect("n in range")
}

pub fn nu_counts(n: usize, k: usize, alphabet: &GenAlphabet) -> Result<Vec<(String, BigUint)>> {
    CountTable::new(k, n.max(1)).nu_counts(n, alphabet)
}

pub fn y0_count(n: usize, k: usize) -> Result<BigUint> {
    CountTable::new(k, n.max(1)).y0_count(n)
}

/// `p(n, k) = |Y0| / |BB(n, k)|`.
pub fn p(n: usize, k: usize) -> Result<Rational> {
    let t = CountTable::new(k, n.max(1));
    Ok(exact_ratio(&t.y0_count(n)?, &t.bb_count(n)?))
}

pub fn density_report(n: usize, k: usize, alphabet: &GenAlphabet) -> Result<DensityRecord> {
    CountTable::new(k, n.max(1)).density_report(n, alphabet)
}

pub fn xi_estimate(k: usize, n: usize) -> Result<XiEstimate> {
    CountTable::new(k, n.max(1)).xi_estimate(n)
}

pub fn trimmed_density(n: usize, k: usize) -> Result<TrimmedDensity> {
    CountTable::new(k, n.max(1)).trimmed_density(n)
}

/// `(δ - 4p) / (1 - p)`.
pub fn trimmed_formula(delta: &Rational, p: &Rational) -> Result<Rational> {
    let one = Rational::one();
    if *p >= one {
        return Err(Error::InvalidParameter("p must be < 1".into()));
    }
    Ok((delta - ratio(4, 1) * p) / (one - p))
}

/// Upper bound on ι* for the trimmed set when `p > p0` and `ε = p0 / 2`:
/// `1 - (p0 - ε) / (1 - p0)`.
pub fn trimmed_bound(p0: &Rational) -> Rational {
    let eps = p0 / ratio(2, 1);
    Rational::one() - (p0 - eps) / (Rational::one() - p0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityRecord {
    pub n: usize,
    pub k: usize,
    pub alphabet: String,
    pub m: usize,
    pub size: BigUint,
    pub nu: Vec<(String, BigUint)>,
    pub delta: Rational,
    pub iota: Rational,
    /// `|Y0| / |Y|`, absent for `k = 0`.
    pub p: Option<Rational>,
    /// `|BB(n-1, k)| / |BB(n, k)|`, absent for `n = 1`.
    pub xi: Option<Rational>,
}

fn opt_ratio(r: &Option<Rational>) -> (String, String) {
    match r {
        Some(r) => (format_ratio(r), to_decimal(r, DECIMAL_DIGITS)),
        None => (String::new(), String::new()),
    }
}

fn opt_json(r: &Option<Rational>) -> (Value, Value) {
    match r {
        Some(r) => (Value::from(format_ratio(r)), Value::from(to_decimal(r, DECIMAL_DIGITS))),
        None => (Value::Null, Value::Null),
    }
}

impl DensityRecord {
    pub fn nu_of(&self, letter: &str) -> Option<&BigUint> {
        self.nu.iter().find(|(l, _)| l == letter).map(|(_, c)| c)
    }

    pub fn to_json(&self) -> Value {
        let (p, p_dec) = opt_json(&self.p);
        let (xi, xi_dec) = opt_json(&self.xi);
        json!({
            "n": self.n,
            "k": self.k,
            "alphabet": self.alphabet,
            "size": self.size.to_string(),
            "nu": self.nu.iter().map(|(l, c)| json!({"letter": l, "nu": c.to_string()})).collect::<Vec<_>>(),
            "delta": format_ratio(&self.delta),
            "delta_decimal": to_decimal(&self.delta, DECIMAL_DIGITS),
            "iota": format_ratio(&self.iota),
            "iota_decimal": to_decimal(&self.iota, DECIMAL_DIGITS),
            "p": p,
            "p_decimal": p_dec,
            "xi": xi,
            "xi_decimal": xi_dec,
        })
    }

    pub fn csv_header(&self) -> Vec<String> {
        let mut h: Vec<String> = ["n", "k", "alphabet", "size"].map(String::from).to_vec();
        h.extend(self.nu.iter().map(|(l, _)| format!("nu_{l}")));
        h.extend(
            ["delta", "delta_decimal", "iota", "iota_decimal", "p", "p_decimal", "xi", "xi_decimal"].map(String::from),
        );
        h
    }

    pub fn csv_fields(&self) -> Vec<String> {
        let mut r = vec![self.n.to_string(), self.k.to_string(), self.alphabet.clone(), self.size.to_string()];
        r.extend(self.nu.iter().map(|(_, c)| c.to_string()));
        r.push(format_ratio(&self.delta));
        r.push(to_decimal(&self.delta, DECIMAL_DIGITS));
        r.push(format_ratio(&self.iota));
        r.push(to_decimal(&self.iota, DECIMAL_DIGITS));
        let (p, p_dec) = opt_ratio(&self.p);
        let (xi, xi_dec) = opt_ratio(&self.xi);
        r.extend([p, p_dec, xi, xi_dec]);
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiEstimate {
    pub k: usize,
    pub n: usize,
    /// `|BB(n-1, k)| / |BB(n, k)|`.
    pub ratio: Rational,
    /// The same ratio at `n - 1`.
    pub previous: Option<Rational>,
    pub difference: Option<Rational>,
}

impl XiEstimate {
    pub fn to_json(&self) -> Value {
        let (prev, _) = opt_json(&self.previous);
        let (diff, diff_dec) = opt_json(&self.difference);
        json!({
            "k": self.k,
            "n": self.n,
            "xi": format_ratio(&self.ratio),
            "xi_decimal": to_decimal(&self.ratio, DECIMAL_DIGITS),
            "previous": prev,
            "difference": diff,
            "difference_decimal": diff_dec,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrimmedDensity {
    pub n: usize,
    pub k: usize,
    /// Density of `BB(n, k)` over `{x0, x1, xb1}`.
    pub delta: Rational,
    pub p: Rational,
    /// `(δ - 4p) / (1 - p)`.
    pub trimmed: Rational,
    /// `6 - trimmed`.
    pub iota_upper: Rational,
}

impl TrimmedDensity {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "k": self.k,
            "delta": format_ratio(&self.delta),
            "p": format_ratio(&self.p),
            "p_decimal": to_decimal(&self.p, DECIMAL_DIGITS),
            "trimmed": format_ratio(&self.trimmed),
            "trimmed_decimal": to_decimal(&self.trimmed, DECIMAL_DIGITS),
            "iota_upper": format_ratio(&self.iota_upper),
        })
    }
}

/// One row of a sweep over `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub record: DensityRecord,
    pub xi: Option<XiEstimate>,
    /// Trimmed density over `{x0, x1, xb1}`; absent for `k = 0` or when not requested.
    pub trimmed: Option<Rational>,
}

impl SweepRow {
    pub fn csv_header(&self) -> Vec<String> {
        let mut h = self.record.csv_header();
        h.extend(["xi_difference", "trimmed", "trimmed_decimal"].map(String::from));
        h
    }

    pub fn csv_fields(&self) -> Vec<String> {
        let mut r = self.record.csv_fields();
        let diff = self.xi.as_ref().and_then(|x| x.difference.clone());
        r.push(opt_ratio(&diff).1);
        let (t, t_dec) = opt_ratio(&self.trimmed);
        r.extend([t, t_dec]);
        r
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.record.to_json();
        v["xi_estimate"] = self.xi.as_ref().map_or(Value::Null, XiEstimate::to_json);
        let (t, t_dec) = opt_json(&self.trimmed);
        v["trimmed"] = t;
        v["trimmed_decimal"] = t_dec;
        v
    }
}

/// Density records for every `k` in `ks` and `n` in `ns`, one table per `k`.
pub fn sweep(ns: &[usize], ks: &[usize], alphabet: &GenAlphabet, with_trimmed: bool, exec: Exec) -> Result<Vec<SweepRow>> {
    let max_n = ns.iter().copied().max().ok_or_else(|| Error::InvalidParameter("empty n range".into()))?;
    let mut rows = Vec::new();
    for &k in ks {
        let table = CountTable::with_exec(k, max_n, exec);
        for &n in ns {
            let record = table.density_report(n, alphabet)?;
            let xi = if n >= 2 { Some(table.xi_estimate(n)?) } else { None };
            let trimmed = if with_trimmed && k >= 1 { Some(table.trimmed_density(n)?.trimmed) } else { None };
            rows.push(SweepRow { record, xi, trimmed });
        }
    }
    Ok(rows)
}
