//! Reconstruction of the continued-fraction attack on the V1 key transform.
//!
//! For a triple `(i, j, k)` the attack expands `Z/M`, where
//! `Z = C_i C_j C_k^{-1} mod M`, and reports every convergent denominator that
//! survives the enabled filters as a guess for `A_k`:
//!
//! * the approximation bound `|Z/M - p_u/q_u| < 1/(k q_u^2)`,
//! * optionally the jump condition `q_{u+1} > q_u * Delta`, with
//!   `Delta = sqrt(M / 2P)` and `P` the product of the primes with indices
//!   `n-2 ..= pi(rho)`,
//! * the size window `min_q <= q_u <= maxA`.
//!
//! Each filter is a plain integer comparison.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contfrac::{bound_holds, cf_expand, CfError};
use crate::keys::PublicKey;
use crate::numtheory::{
    dlog_bruteforce, largest_prime_leq, mod_inv, mod_pow, mult_order, nth_prime, prime_index_leq, NumError,
};
use crate::par::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AttackError {
    #[error("index clash in triple ({i}, {j}, {k})")]
    IndexClash { i: usize, j: usize, k: usize },
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("prime range n-2 = {lo} ..= pi(rho) = {hi} is not usable")]
    InvalidRange { lo: usize, hi: usize },
    #[error("W' has order {order}, not a generator modulo {m}")]
    NoGenerator { order: u64, m: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Cf(#[from] CfError),
}

/// How `maxA = M / (product of the n-1 smallest primes)` is rounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Rounding {
    #[default]
    Floor,
    Ceil,
}

/// Which ordered triples a full run scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TripleSet {
    /// Every ordered `(i, j, k)`, including `i = k` or `j = k`.
    #[default]
    All,
    /// Only triples with `i != k` and `j != k`.
    Distinct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackFilter {
    pub legendre_k: BigUint,
    pub use_jump: bool,
    pub max_a_override: Option<BigUint>,
    pub min_q: BigUint,
    pub max_a_rounding: Rounding,
    pub triples: TripleSet,
}

impl AttackFilter {
    /// Approximation bound with constant 2 only.
    pub fn legendre() -> Self {
        AttackFilter {
            legendre_k: BigUint::from(2u8),
            use_jump: false,
            max_a_override: None,
            min_q: BigUint::from(2u8),
            max_a_rounding: Rounding::Floor,
            triples: TripleSet::All,
        }
    }

    /// Approximation bound plus the jump condition.
    pub fn jump() -> Self {
        AttackFilter {
            use_jump: true,
            ..Self::legendre()
        }
    }

    /// The tightened bound `1/(2^(n-3) q^2)`.
    pub fn strict(n: usize) -> Self {
        AttackFilter {
            legendre_k: BigUint::one() << n.saturating_sub(3).max(1),
            ..Self::legendre()
        }
    }

    pub fn with_max_a(mut self, max_a: Option<BigUint>) -> Self {
        self.max_a_override = max_a;
        self
    }

    pub fn with_rounding(mut self, rounding: Rounding) -> Self {
        self.max_a_rounding = rounding;
        self
    }

    pub fn with_triples(mut self, triples: TripleSet) -> Self {
        self.triples = triples;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CandidateHit {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub u: usize,
    /// Convergent numerator (the `L` guess).
    pub p: BigUint,
    /// Convergent denominator: the candidate value for `A_k`.
    pub q: BigUint,
    pub q_next: BigUint,
    pub a_u: BigUint,
    pub a_next: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaInfo {
    /// `M / 2P`, reduced.
    pub ratio: Ratio<BigUint>,
    /// `sqrt(ratio)` rounded to four decimals.
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateGroup {
    pub k: usize,
    pub value: BigUint,
    /// `(i, j)` pairs ordered by `j`, then `i`.
    pub tuples: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackReport {
    pub delta: DeltaInfo,
    pub max_a: BigUint,
    pub groups: Vec<CandidateGroup>,
    pub hits: Vec<CandidateHit>,
}

impl AttackReport {
    pub fn group(&self, k: usize, value: u64) -> Option<&CandidateGroup> {
        let value = BigUint::from(value);
        self.groups.iter().find(|g| g.k == k && g.value == value)
    }

    /// Distinct candidate values per target index.
    pub fn candidates_by_index(&self) -> BTreeMap<usize, Vec<BigUint>> {
        let mut out: BTreeMap<usize, Vec<BigUint>> = BTreeMap::new();
        for g in &self.groups {
            out.entry(g.k).or_default().push(g.value.clone());
        }
        out
    }
}

fn check_index(index: usize, n: usize) -> Result<(), AttackError> {
    if index == 0 || index > n {
        Err(AttackError::IndexOutOfRange { index, n })
    } else {
        Ok(())
    }
}

fn c_at(public: &PublicKey, index: usize) -> &BigUint {
    &public.c[index - 1]
}

/// `Z = C_i C_j C_k^{-1} mod M` with 1-based indices, `i != k`, `j != k`.
pub fn compute_z(public: &PublicKey, i: usize, j: usize, k: usize) -> Result<BigUint, AttackError> {
    for idx in [i, j, k] {
        check_index(idx, public.n)?;
    }
    if i == k || j == k {
        return Err(AttackError::IndexClash { i, j, k });
    }
    z_unchecked(public, i, j, k)
}

fn z_unchecked(public: &PublicKey, i: usize, j: usize, k: usize) -> Result<BigUint, AttackError> {
    let m = &public.m;
    let inv = mod_inv(c_at(public, k), m)?;
    Ok(c_at(public, i) * c_at(public, j) % m * inv % m)
}

/// `Z = C_i C_j (C_{k1} C_{k2})^{-1} mod M`.
pub fn compute_z_pair(public: &PublicKey, i: usize, j: usize, k1: usize, k2: usize) -> Result<BigUint, AttackError> {
    for idx in [i, j, k1, k2] {
        check_index(idx, public.n)?;
    }
    if k1 == k2 || [i, j].iter().any(|x| *x == k1 || *x == k2) {
        return Err(AttackError::IndexClash { i, j, k: k1 });
    }
    let m = &public.m;
    let inv = mod_inv(&(c_at(public, k1) * c_at(public, k2) % m), m)?;
    Ok(c_at(public, i) * c_at(public, j) % m * inv % m)
}

/// Product of the primes with 1-based indices `n-2 ..= pi(rho)`.
pub fn prime_product_p(n: usize, rho: u64) -> Result<BigUint, AttackError> {
    let hi = prime_index_leq(rho);
    let lo = n.saturating_sub(2);
    if n < 6 || hi < lo {
        return Err(AttackError::InvalidRange { lo, hi });
    }
    Ok((lo..=hi).map(|x| BigUint::from(nth_prime(x))).product())
}

/// `sqrt(num/den)` rounded half-up to four decimals, computed exactly.
pub fn sqrt_display(ratio: &Ratio<BigUint>) -> String {
    let scale = BigUint::from(100_000_000u64);
    let (num, den) = (ratio.numer(), ratio.denom());
    let r = (num * &scale / den).sqrt();
    // round up when sqrt(y) >= r + 1/2, i.e. 4 num 10^8 >= den (2r + 1)^2
    let twice = &r * 2u8 + 1u8;
    let r = if num * &scale * 4u8 >= den * &twice * &twice {
        r + 1u8
    } else {
        r
    };
    let (whole, frac) = r.div_rem(&BigUint::from(10_000u32));
    format!("{whole}.{:04}", frac.to_u32().unwrap_or(0))
}

pub fn delta_of(m: &BigUint, n: usize, rho: u64) -> Result<DeltaInfo, AttackError> {
    let two_p = prime_product_p(n, rho)? * 2u8;
    let ratio = Ratio::new(m.clone(), two_p);
    let display = sqrt_display(&ratio);
    Ok(DeltaInfo { ratio, display })
}

fn small_prime_product(n: usize) -> BigUint {
    (1..n).map(|x| BigUint::from(nth_prime(x))).product()
}

/// `floor(M / product of the n-1 smallest primes)`.
pub fn max_a(m: &BigUint, n: usize) -> BigUint {
    m / small_prime_product(n)
}

pub fn max_a_rounded(m: &BigUint, n: usize, rounding: Rounding) -> BigUint {
    let d = small_prime_product(n);
    match rounding {
        Rounding::Floor => m / d,
        Rounding::Ceil => m.div_ceil(&d),
    }
}

/// Quantities shared by every triple of one key.
#[derive(Debug, Clone)]
struct ScanContext {
    two_p: BigUint,
    max_a: BigUint,
    delta: DeltaInfo,
}

impl ScanContext {
    fn new(public: &PublicKey, filter: &AttackFilter) -> Result<Self, AttackError> {
        let delta = delta_of(&public.m, public.n, public.rho)?;
        let two_p = prime_product_p(public.n, public.rho)? * 2u8;
        let max_a = filter
            .max_a_override
            .clone()
            .unwrap_or_else(|| max_a_rounded(&public.m, public.n, filter.max_a_rounding));
        Ok(ScanContext { two_p, max_a, delta })
    }
}

fn scan_z(
    z: &BigUint,
    m: &BigUint,
    (i, j, k): (usize, usize, usize),
    filter: &AttackFilter,
    ctx: &ScanContext,
) -> Result<Vec<CandidateHit>, AttackError> {
    let cf = cf_expand(z, m)?;
    let mut hits = Vec::new();
    // u = t has no successor, so it never qualifies.
    for pair in cf.convergents.windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        if cur.q < filter.min_q || cur.q > ctx.max_a {
            continue;
        }
        if !bound_holds(&cf.num, &cf.den, &cur.p, &cur.q, &filter.legendre_k) {
            continue;
        }
        if filter.use_jump && &next.q * &next.q * &ctx.two_p <= &cur.q * &cur.q * m {
            continue;
        }
        hits.push(CandidateHit {
            k,
            i,
            j,
            u: cur.u,
            p: cur.p.clone(),
            q: cur.q.clone(),
            q_next: next.q.clone(),
            a_u: cf.quotients[cur.u].clone(),
            a_next: cf.quotients[next.u].clone(),
        });
    }
    Ok(hits)
}

/// Every convergent of `Z/M` for the triple that passes `filter`.
pub fn scan_triple(
    public: &PublicKey,
    i: usize,
    j: usize,
    k: usize,
    filter: &AttackFilter,
) -> Result<Vec<CandidateHit>, AttackError> {
    let z = compute_z(public, i, j, k)?;
    let ctx = ScanContext::new(public, filter)?;
    scan_z(&z, &public.m, (i, j, k), filter, &ctx)
}

pub fn run_attack(public: &PublicKey, filter: &AttackFilter) -> Result<AttackReport, AttackError> {
    run_attack_with(public, filter, Exec::default())
}

pub fn run_attack_with(public: &PublicKey, filter: &AttackFilter, exec: Exec) -> Result<AttackReport, AttackError> {
    let ctx = ScanContext::new(public, filter)?;
    let n = public.n;
    let mut triples = Vec::with_capacity(n * n * n);
    for k in 1..=n {
        for j in 1..=n {
            for i in 1..=n {
                if filter.triples == TripleSet::Distinct && (i == k || j == k) {
                    continue;
                }
                triples.push((i, j, k));
            }
        }
    }
    let per_triple = par::map(&triples, exec, |&(i, j, k)| {
        let z = z_unchecked(public, i, j, k)?;
        scan_z(&z, &public.m, (i, j, k), filter, &ctx)
    });
    let mut hits = Vec::new();
    for result in per_triple {
        hits.extend(result?);
    }
    Ok(assemble(ctx.delta, ctx.max_a, hits))
}

fn assemble(delta: DeltaInfo, max_a: BigUint, mut hits: Vec<CandidateHit>) -> AttackReport {
    hits.sort();
    let mut grouped: BTreeMap<(usize, BigUint), Vec<(usize, usize)>> = BTreeMap::new();
    for h in &hits {
        grouped.entry((h.k, h.q.clone())).or_default().push((h.i, h.j));
    }
    let groups = grouped
        .into_iter()
        .map(|((k, value), mut tuples)| {
            tuples.sort_by_key(|&(i, j)| (j, i));
            tuples.dedup();
            CandidateGroup { k, value, tuples }
        })
        .collect();
    AttackReport {
        delta,
        max_a,
        groups,
        hits,
    }
}

/// Unordered factorisations `a * b = product` with `2 <= a <= b`, optionally
/// with both factors at most `bound`.
pub fn factor_pairs(product: &BigUint, bound: Option<&BigUint>) -> Vec<(BigUint, BigUint)> {
    let mut out = Vec::new();
    let root = product.sqrt();
    let mut a = BigUint::from(2u8);
    while a <= root {
        let (b, r) = product.div_rem(&a);
        if r.is_zero() && bound.is_none_or(|lim| a <= *lim && b <= *lim) {
            out.push((a.clone(), b));
        }
        a += 1u8;
    }
    out
}

/// Counts selections of candidate values, one per chosen target index, that
/// are pairwise coprime with product below `M`. `slots` is the number of
/// indices to choose; `None` means every index present in the report.
/// Counting stops at `cap`.
pub fn count_compatible(report: &AttackReport, m: &BigUint, slots: Option<usize>, cap: u64) -> u64 {
    let candidates: Vec<Vec<BigUint>> = report.candidates_by_index().into_values().collect();
    let slots = slots.unwrap_or(candidates.len());
    if slots == 0 || slots > candidates.len() {
        return 0;
    }

    struct Search<'a> {
        candidates: &'a [Vec<BigUint>],
        m: &'a BigUint,
        cap: u64,
        count: u64,
        chosen: Vec<&'a BigUint>,
    }

    impl<'a> Search<'a> {
        fn walk(&mut self, idx: usize, remaining: usize, product: &BigUint) {
            if self.count >= self.cap {
                return;
            }
            if remaining == 0 {
                self.count += 1;
                return;
            }
            if self.candidates.len() - idx < remaining {
                return;
            }
            for v in &self.candidates[idx] {
                let next = product * v;
                if next >= *self.m || self.chosen.iter().any(|c| !c.gcd(v).is_one()) {
                    continue;
                }
                self.chosen.push(v);
                self.walk(idx + 1, remaining - 1, &next);
                self.chosen.pop();
            }
            self.walk(idx + 1, remaining, product);
        }
    }

    let mut search = Search {
        candidates: &candidates,
        m,
        cap,
        count: 0,
        chosen: Vec::new(),
    };
    search.walk(0, slots, &BigUint::one());
    search.count
}

/// An alternative decomposition `C_x = A'_x W'^{f'(x)}` for `x in {i, j, k}`
/// with `f'(i) + f'(j) = f'(k) (mod M-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoRelation {
    pub a_i: u64,
    pub a_j: u64,
    pub a_k: u64,
    pub w: u64,
    pub f_i: u64,
    pub f_j: u64,
    pub f_k: u64,
}

impl PseudoRelation {
    /// Re-checks the three congruences and the lever sum.
    pub fn verify(&self, public: &PublicKey, i: usize, j: usize, k: usize) -> bool {
        let m = &public.m;
        let w = BigUint::from(self.w);
        let holds =
            |a: u64, f: u64, idx: usize| BigUint::from(a) * mod_pow(&w, &BigUint::from(f), m) % m == *c_at(public, idx);
        let order = m - 1u8;
        holds(self.a_i, self.f_i, i)
            && holds(self.a_j, self.f_j, j)
            && holds(self.a_k, self.f_k, k)
            && (BigUint::from(self.f_i) + self.f_j) % &order == BigUint::from(self.f_k) % &order
    }
}

/// Builds a pseudo-relation for `(i, j, k)` by brute-force discrete logarithm.
/// Only for moduli up to `10^7`.
pub fn construct_pseudo_relation(
    public: &PublicKey,
    i: usize,
    j: usize,
    k: usize,
    a_k_prime: u64,
    w_prime: u64,
    f_i_prime: u64,
) -> Result<PseudoRelation, AttackError> {
    for idx in [i, j, k] {
        check_index(idx, public.n)?;
    }
    let m = public
        .m
        .to_u64()
        .filter(|m| *m <= 10_000_000)
        .ok_or_else(|| AttackError::InvalidInput(format!("modulus {} too large for brute-force logs", public.m)))?;
    let top = largest_prime_leq(public.rho).unwrap_or(2);
    if a_k_prime < 2 || a_k_prime > top {
        return Err(AttackError::InvalidInput(format!(
            "A'_k = {a_k_prime} outside [2, {top}]"
        )));
    }
    if w_prime == 0 || w_prime >= m {
        return Err(AttackError::InvalidInput(format!("W' = {w_prime} outside [1, M-1]")));
    }
    let order = mult_order(w_prime, m);
    if order != m - 1 {
        return Err(AttackError::NoGenerator { order, m });
    }

    let mm = &public.m;
    let w = BigUint::from(w_prime);
    let c = |idx: usize| c_at(public, idx).to_u64().unwrap();
    let target = BigUint::from(c(k)) * mod_inv(&BigUint::from(a_k_prime), mm)? % mm;
    let f_k = dlog_bruteforce(w_prime, target.to_u64().unwrap(), m, m - 2).expect("a generator reaches every unit");
    let f_i = f_i_prime % (m - 1);
    let f_j = (f_k + (m - 1) - f_i) % (m - 1);
    let strip = |idx: usize, f: u64| -> Result<u64, AttackError> {
        let inv = mod_inv(&mod_pow(&w, &BigUint::from(f), mm), mm)?;
        Ok((BigUint::from(c(idx)) * inv % mm).to_u64().unwrap())
    };
    Ok(PseudoRelation {
        a_i: strip(i, f_i)?,
        a_j: strip(j, f_j)?,
        a_k: a_k_prime,
        w: w_prime,
        f_i,
        f_j,
        f_k,
    })
}

// ---- serialisation: every integer is a decimal string ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioFile {
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub k: String,
    pub value: String,
    pub tuples: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitFile {
    pub i: String,
    pub j: String,
    pub k: String,
    pub u: String,
    pub p: String,
    pub q: String,
    pub q_next: String,
    pub a_u: String,
    pub a_next: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackReportFile {
    pub delta_display: String,
    pub delta_ratio: RatioFile,
    pub max_a: String,
    pub groups: Vec<GroupFile>,
    pub hits: Vec<HitFile>,
}

impl From<&AttackReport> for AttackReportFile {
    fn from(r: &AttackReport) -> Self {
        AttackReportFile {
            delta_display: r.delta.display.clone(),
            delta_ratio: RatioFile {
                num: r.delta.ratio.numer().to_string(),
                den: r.delta.ratio.denom().to_string(),
            },
            max_a: r.max_a.to_string(),
            groups: r
                .groups
                .iter()
                .map(|g| GroupFile {
                    k: g.k.to_string(),
                    value: g.value.to_string(),
                    tuples: g.tuples.iter().map(|(i, j)| [i.to_string(), j.to_string()]).collect(),
                })
                .collect(),
            hits: r
                .hits
                .iter()
                .map(|h| HitFile {
                    i: h.i.to_string(),
                    j: h.j.to_string(),
                    k: h.k.to_string(),
                    u: h.u.to_string(),
                    p: h.p.to_string(),
                    q: h.q.to_string(),
                    q_next: h.q_next.to_string(),
                    a_u: h.a_u.to_string(),
                    a_next: h.a_next.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    #[default]
    Table,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

pub const TABLE_HEADER: &str = "A_k | Tuples (i, j, k)";

pub fn render_report(report: &AttackReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&AttackReportFile::from(report)).expect("report serializes");
            text.push('\n');
            text
        }
        Format::Table => {
            let mut out = format!(
                "Delta = {}, max A = {}\n{TABLE_HEADER}\n",
                report.delta.display, report.max_a
            );
            for g in &report.groups {
                let tuples: Vec<String> = g.tuples.iter().map(|(i, j)| format!("({i}, {j}, {})", g.k)).collect();
                let _ = writeln!(out, "A_{} = {} | {}", g.k, g.value, tuples.join(", "));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn z_values() {
        let public = fixtures::example2_private().public_key();
        assert_eq!(compute_z(&public, 1, 3, 5).unwrap(), big(186640));
        assert_eq!(compute_z(&public, 1, 3, 6).unwrap(), big(425865));
        assert_eq!(
            compute_z(&public, 1, 2, 1),
            Err(AttackError::IndexClash { i: 1, j: 2, k: 1 })
        );
        assert_eq!(
            compute_z(&public, 7, 2, 1),
            Err(AttackError::IndexOutOfRange { index: 7, n: 6 })
        );

        let ex3 = fixtures::example3_private().public_key();
        assert_eq!(compute_z_pair(&ex3, 4, 12, 6, 7).unwrap(), big(689616));
        assert_eq!(compute_z_pair(&ex3, 12, 4, 6, 7).unwrap(), big(689616));
        assert!(matches!(
            compute_z_pair(&ex3, 4, 12, 6, 6),
            Err(AttackError::IndexClash { .. })
        ));
    }

    #[test]
    fn prime_products_and_delta() {
        assert_eq!(prime_product_p(6, 17).unwrap(), big(17017));
        assert_eq!(prime_product_p(10, 43).unwrap(), big(19 * 23 * 29 * 31 * 37 * 41 * 43));
        assert!(matches!(prime_product_p(3, 2), Err(AttackError::InvalidRange { .. })));

        let d = delta_of(&big(510931), 6, 17).unwrap();
        let shown: f64 = d.display.parse().unwrap();
        assert!((shown - 3.8729).abs() <= 0.01);
        let d = delta_of(&big(13082761331670077), 10, 43).unwrap();
        let shown: f64 = d.display.parse().unwrap();
        assert!((shown - 505.2).abs() <= 1.0);
        assert_eq!(sqrt_display(&Ratio::new(big(34034), big(34034))), "1.0000");
        assert_eq!(sqrt_display(&Ratio::from_integer(big(15))), "3.8730");
        assert_eq!(sqrt_display(&Ratio::from_integer(big(2))), "1.4142");
    }

    #[test]
    fn max_a_values() {
        assert_eq!(max_a(&big(510931), 6), big(221));
        assert_eq!(max_a(&big(2311), 6), big(1));
        assert_eq!(max_a(&big(13082761331670077), 10), big(58642669));
        assert_eq!(
            max_a_rounded(&big(13082761331670077), 10, Rounding::Ceil),
            big(58642670)
        );
        assert_eq!(max_a_rounded(&big(2310 * 5), 6, Rounding::Ceil), big(5));
    }

    #[test]
    fn scan_example2_false_positive() {
        let public = fixtures::example2_private().public_key();
        let hits = scan_triple(&public, 1, 3, 5, &AttackFilter::legendre()).unwrap();
        let hit = hits.iter().find(|h| h.q == big(11)).expect("candidate 11");
        assert_eq!((hit.u, hit.p.clone()), (4, big(4)));
    }

    #[test]
    fn scan_example4_jump() {
        let public = fixtures::example2_private().public_key();
        let hits = scan_triple(&public, 1, 3, 6, &AttackFilter::jump()).unwrap();
        assert_eq!(hits.len(), 1);
        let h = &hits[0];
        assert_eq!((h.i, h.j, h.k, h.u), (1, 3, 6, 2));
        assert_eq!(
            (h.q.clone(), h.q_next.clone(), h.a_next.clone()),
            (big(6), big(955), big(159))
        );
        assert!(
            scan_triple(&public, 1, 3, 6, &AttackFilter::jump().with_max_a(Some(big(1))))
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn empty_reports() {
        let public = fixtures::example2_private().public_key();
        let report = run_attack(&public, &AttackFilter::legendre().with_max_a(Some(BigUint::zero()))).unwrap();
        assert!(report.hits.is_empty() && report.groups.is_empty());
        assert_eq!(render_report(&report, Format::Table).lines().last(), Some(TABLE_HEADER));
        assert_eq!(count_compatible(&report, &public.m, None, 100), 0);
    }

    #[test]
    fn factor_pair_lists() {
        let pairs: Vec<(u64, u64)> = factor_pairs(&big(390), None)
            .into_iter()
            .map(|(a, b)| (a.to_u64().unwrap(), b.to_u64().unwrap()))
            .collect();
        assert_eq!(
            pairs,
            vec![(2, 195), (3, 130), (5, 78), (6, 65), (10, 39), (13, 30), (15, 26)]
        );
        let bounded: Vec<(u64, u64)> = factor_pairs(&big(390), Some(&big(43)))
            .into_iter()
            .map(|(a, b)| (a.to_u64().unwrap(), b.to_u64().unwrap()))
            .collect();
        assert_eq!(bounded, vec![(10, 39), (13, 30), (15, 26)]);
        assert!(factor_pairs(&big(7919), None).is_empty());
        assert_eq!(factor_pairs(&big(4), None), vec![(big(2), big(2))]);
    }

    #[test]
    fn compatible_single_choice() {
        let public = fixtures::example2_private().public_key();
        let delta = delta_of(&public.m, 6, 17).unwrap();
        let hit = |k: usize, q: u64| CandidateHit {
            k,
            i: 1,
            j: 1,
            u: 1,
            p: big(1),
            q: big(q),
            q_next: big(1),
            a_u: big(1),
            a_next: big(1),
        };
        let report = assemble(delta, big(221), vec![hit(2, 3), hit(4, 5), hit(5, 7)]);
        assert_eq!(count_compatible(&report, &public.m, None, 10), 1);
        assert_eq!(count_compatible(&report, &big(100), None, 10), 0);
        assert_eq!(count_compatible(&report, &public.m, Some(2), 10), 3);
        assert_eq!(count_compatible(&report, &public.m, Some(2), 2), 2);
    }

    #[test]
    fn pseudo_relations() {
        let public = fixtures::example2_private().public_key();
        let m = 510931u64;
        let g = (2..m).find(|&g| mult_order(g, m) == m - 1).unwrap();
        for (a_k, f_i) in [(11u64, 1u64), (2, 77), (17, 510929), (13, 4242)] {
            let rel = construct_pseudo_relation(&public, 1, 3, 5, a_k, g, f_i).unwrap();
            assert!(rel.verify(&public, 1, 3, 5));
            if a_k == 11 {
                assert_eq!(big(rel.a_i) * big(rel.a_j) % big(m), big(186640) * big(11) % big(m));
            }
        }
        let non_gen = (2..m).find(|&w| mult_order(w, m) < m - 1).unwrap();
        assert!(matches!(
            construct_pseudo_relation(&public, 1, 3, 5, 11, non_gen, 1),
            Err(AttackError::NoGenerator { .. })
        ));
        assert!(construct_pseudo_relation(&public, 1, 3, 5, 19, g, 1).is_err());
    }
}
