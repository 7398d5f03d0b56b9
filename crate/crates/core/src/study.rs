//! Seeded Monte-Carlo measurements of the attack: how often a non-relation
//! triple still yields a candidate, and how often a planted relation is
//! recovered.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::attack::{scan_triple, AttackError, AttackFilter, RatioFile};
use crate::keys::{
    build_omega, keygen, keygen_with_levers, KeyError, ModulusChoice, OmegaFamily, PrivateKey, SystemParams,
};
use crate::numtheory::largest_prime_leq;
use crate::par::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StudyError {
    #[error("invalid study parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Key(#[from] KeyError),
    #[error(transparent)]
    Attack(#[from] AttackError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StudyConfig {
    pub n: usize,
    pub rho: u64,
    pub family: OmegaFamily,
    /// Scale or shift for the lever family; ignored by the odd family.
    pub omega_delta: u64,
    pub trials: usize,
    pub seed: u64,
}

impl StudyConfig {
    fn validate(&self) -> Result<SystemParams, StudyError> {
        if self.trials == 0 {
            return Err(StudyError::InvalidParams("trials must be at least 1".into()));
        }
        let omega = build_omega(self.family, self.n, self.omega_delta)?;
        let params = SystemParams::new(self.n, self.rho, omega);
        params.validate()?;
        Ok(params)
    }
}

/// `(ρ̄ - 1)/(ρ̄ + 2)` with `ρ̄` the largest prime `<= rho`.
pub fn reference_bound(rho: u64) -> Ratio<u64> {
    let p = largest_prime_leq(rho).unwrap_or(2);
    Ratio::new(p - 1, p + 2)
}

/// Seed for trial `t`, independent of scheduling order.
pub fn trial_seed(master: u64, t: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(t as u64 + 1);
    rng.next_u64()
}

/// Auxiliary randomness of a trial, kept apart from the key-generation stream.
fn side_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialLog {
    pub trial: usize,
    pub seed: u64,
    pub triple: (usize, usize, usize),
    /// The value a correct guess would take.
    pub target: String,
    pub candidates: Vec<String>,
    pub hit: bool,
    /// Set when `2 A_i A_j A_k < M`, i.e. the approximation bound is implied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_implied: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StudyResult {
    pub label: String,
    pub config: StudyConfig,
    pub trials: usize,
    pub seed: u64,
    pub hits: usize,
    pub hit_rate: Ratio<u64>,
    pub reference_bound: Ratio<u64>,
    pub per_trial_log: Vec<TrialLog>,
}

impl StudyResult {
    fn from_logs(label: &str, config: StudyConfig, per_trial_log: Vec<TrialLog>) -> Self {
        let hits = per_trial_log.iter().filter(|t| t.hit).count();
        let trials = per_trial_log.len();
        StudyResult {
            label: label.to_string(),
            config,
            trials,
            seed: config.seed,
            hits,
            hit_rate: Ratio::new(hits as u64, trials as u64),
            reference_bound: reference_bound(config.rho),
            per_trial_log,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &TrialLog> {
        self.per_trial_log.iter().filter(|t| !t.hit)
    }
}

fn ratio_file(r: &Ratio<u64>) -> RatioFile {
    RatioFile {
        num: r.numer().to_string(),
        den: r.denom().to_string(),
    }
}

#[derive(Serialize)]
struct StudyFile<'a> {
    label: &'a str,
    config: &'a StudyConfig,
    trials: usize,
    seed: String,
    hits: usize,
    hit_rate: RatioFile,
    hit_rate_display: String,
    reference_bound: RatioFile,
    reference_bound_display: String,
    per_trial_log: &'a [TrialLog],
}

fn ratio_display(r: &Ratio<u64>) -> String {
    let scaled = Ratio::new(BigUint::from(*r.numer()), BigUint::from(*r.denom()));
    crate::decimal::round_fixed(&scaled, 4)
}

impl StudyResult {
    fn file(&self) -> StudyFile<'_> {
        StudyFile {
            label: &self.label,
            config: &self.config,
            trials: self.trials,
            seed: self.seed.to_string(),
            hits: self.hits,
            hit_rate: ratio_file(&self.hit_rate),
            hit_rate_display: ratio_display(&self.hit_rate),
            reference_bound: ratio_file(&self.reference_bound),
            reference_bound_display: ratio_display(&self.reference_bound),
            per_trial_log: &self.per_trial_log,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.file()).expect("study result serializes");
        out.push('\n');
        out
    }

    pub fn render_table(&self) -> String {
        format!(
            "{}: n = {}, rho = {}, {} trials, seed {}\n  hits {}/{} = {} ({})\n  reference bound {} ({})\n",
            self.label,
            self.config.n,
            self.config.rho,
            self.trials,
            self.seed,
            self.hits,
            self.trials,
            self.hit_rate,
            ratio_display(&self.hit_rate),
            self.reference_bound,
            ratio_display(&self.reference_bound),
        )
    }
}

fn candidates(
    private: &PrivateKey,
    (i, j, k): (usize, usize, usize),
    filter: &AttackFilter,
) -> Result<Vec<BigUint>, StudyError> {
    let public = private.public_key();
    Ok(scan_triple(&public, i, j, k, filter)?
        .into_iter()
        .map(|h| h.q)
        .collect())
}

fn strings(values: &[BigUint]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

pub fn study_false_positive(config: StudyConfig) -> Result<StudyResult, StudyError> {
    study_false_positive_with(config, Exec::default())
}

/// For each trial: a fresh key, one uniformly chosen triple with
/// `f(i) + f(j) != f(k)`, and a bound-only scan. A trial is a hit when the
/// scan emits anything.
pub fn study_false_positive_with(config: StudyConfig, exec: Exec) -> Result<StudyResult, StudyError> {
    let params = config.validate()?;
    let filter = AttackFilter::legendre();
    let indices: Vec<usize> = (0..config.trials).collect();
    let logs = par::map(&indices, exec, |&t| -> Result<TrialLog, StudyError> {
        let seed = trial_seed(config.seed, t);
        let (private, _) = keygen(&params, &ModulusChoice::Auto, seed)?;
        let n = config.n;
        let f = &private.f;
        let mut triples = Vec::new();
        for k in 1..=n {
            for j in 1..=n {
                for i in 1..=n {
                    if i != k && j != k && f[i - 1] + f[j - 1] != f[k - 1] {
                        triples.push((i, j, k));
                    }
                }
            }
        }
        let triple = *triples
            .choose(&mut side_rng(seed))
            .ok_or_else(|| StudyError::InvalidParams("no non-relation triple".into()))?;
        let found = candidates(&private, triple, &filter)?;
        Ok(TrialLog {
            trial: t,
            seed,
            triple,
            target: private.a[triple.2 - 1].to_string(),
            hit: !found.is_empty(),
            candidates: strings(&found),
            bound_implied: None,
        })
    });
    let logs = logs.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(StudyResult::from_logs("false-positive", config, logs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessResult {
    pub legendre: StudyResult,
    pub jump: StudyResult,
}

impl CompletenessResult {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Pair<'a> {
            legendre: StudyFile<'a>,
            jump: StudyFile<'a>,
        }
        let pair = Pair {
            legendre: self.legendre.file(),
            jump: self.jump.file(),
        };
        let mut out = serde_json::to_string_pretty(&pair).expect("study result serializes");
        out.push('\n');
        out
    }

    pub fn render_table(&self) -> String {
        format!("{}{}", self.legendre.render_table(), self.jump.render_table())
    }
}

/// Lever relations `a + b = c` inside the set, `a <= b`.
fn relations(elements: &[u64]) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for (x, &a) in elements.iter().enumerate() {
        for &b in &elements[x..] {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            if elements.contains(&(a + b)) {
                out.push((a, b, a + b));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Lever assignment with `f(i) + f(j) = f(k)` at random positions. Relations
/// with distinct summands are preferred; `a + a = c` forces `i = j`.
fn plant(elements: &[u64], n: usize, rng: &mut ChaCha8Rng) -> Option<(Vec<u64>, (usize, usize, usize))> {
    let all = relations(elements);
    let distinct: Vec<_> = all.iter().copied().filter(|(a, b, _)| a != b).collect();
    let pool = if distinct.is_empty() { &all } else { &distinct };
    let &(a, b, c) = pool.choose(rng)?;
    let mut positions: Vec<usize> = (0..n).collect();
    positions.shuffle(rng);
    let (pi, pk) = (positions[0], positions[1]);
    let pj = if a == b { pi } else { positions[2] };

    let mut rest: Vec<u64> = elements.iter().copied().filter(|e| ![a, b, c].contains(e)).collect();
    rest.shuffle(rng);
    let mut f = vec![0u64; n];
    f[pi] = a;
    f[pj] = b;
    f[pk] = c;
    let mut fill = rest.into_iter();
    for (x, slot) in f.iter_mut().enumerate() {
        if x != pi && x != pj && x != pk {
            *slot = fill.next()?;
        }
    }
    // Randomise which summand sits at i.
    let (i, j) = if rng.gen_bool(0.5) { (pi, pj) } else { (pj, pi) };
    Some((f, (i + 1, j + 1, pk + 1)))
}

/// `A_k / gcd(L, A_k)` with `L = (Z A_k - A_i A_j) / M`, computed from the
/// private key.
pub fn planted_target(private: &PrivateKey, (i, j, k): (usize, usize, usize)) -> Result<BigUint, StudyError> {
    let public = private.public_key();
    let z = crate::attack::compute_z(&public, i, j, k)?;
    let (a_i, a_j, a_k) = (&private.a[i - 1], &private.a[j - 1], &private.a[k - 1]);
    let diff = BigInt::from(&z * a_k) - BigInt::from(a_i * a_j);
    let m = BigInt::from(private.m.clone());
    let (l, rem) = diff.div_rem(&m);
    if rem != BigInt::from(0) {
        return Err(StudyError::InvalidParams(format!(
            "triple ({i}, {j}, {k}) is not a relation"
        )));
    }
    let g = l.abs().to_biguint().expect("non-negative").gcd(a_k);
    Ok(a_k / g)
}

pub fn study_completeness(config: StudyConfig) -> Result<CompletenessResult, StudyError> {
    study_completeness_with(config, Exec::default())
}

/// For each trial: a key with a planted relation `f(i) + f(j) = f(k)`, then
/// whether the reduced `A_k` appears under the bound-only and jump filters.
pub fn study_completeness_with(config: StudyConfig, exec: Exec) -> Result<CompletenessResult, StudyError> {
    let params = config.validate()?;
    if relations(&params.omega.elements).is_empty() {
        return Err(StudyError::InvalidParams(format!(
            "{} lever set admits no relation f(i) + f(j) = f(k)",
            config.family
        )));
    }
    let legendre = AttackFilter::legendre();
    let jump = AttackFilter::jump();
    let indices: Vec<usize> = (0..config.trials).collect();
    let logs = par::map(&indices, exec, |&t| -> Result<(TrialLog, TrialLog), StudyError> {
        let seed = trial_seed(config.seed, t);
        let (levers, triple) = plant(&params.omega.elements, config.n, &mut side_rng(seed))
            .ok_or_else(|| StudyError::InvalidParams("cannot plant a relation".into()))?;
        let (private, _) = keygen_with_levers(&params, &ModulusChoice::Auto, Some(levers), seed)?;
        let target = planted_target(&private, triple)?;
        let (i, j, k) = triple;
        let product = &private.a[i - 1] * &private.a[j - 1] * &private.a[k - 1] * 2u8;
        let implied = Some(product < private.m);

        let log = |found: Vec<BigUint>| TrialLog {
            trial: t,
            seed,
            triple,
            target: target.to_string(),
            hit: found.contains(&target),
            candidates: strings(&found),
            bound_implied: implied,
        };
        Ok((
            log(candidates(&private, triple, &legendre)?),
            log(candidates(&private, triple, &jump)?),
        ))
    });
    let (l_logs, j_logs): (Vec<_>, Vec<_>) = logs.into_iter().collect::<Result<Vec<_>, _>>()?.into_iter().unzip();
    Ok(CompletenessResult {
        legendre: StudyResult::from_logs("completeness (bound only)", config, l_logs),
        jump: StudyResult::from_logs("completeness (jump filter)", config, j_logs),
    })
}
