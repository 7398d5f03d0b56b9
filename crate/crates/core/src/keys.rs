//! Lever sets, key generation and the two key transforms
//! `C_x = A_x W^f(x)` and `C_x = (A_x W^f(x))^delta` (mod M).

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::{is_prime, mod_inv, mod_pow, next_prime_above, pairwise_coprime, primes_up_to};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KeyError {
    #[error("invalid delta {delta} for {family} lever set with n = {n}")]
    InvalidDelta { family: OmegaFamily, n: usize, delta: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("malformed key file: {0}")]
    Schema(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OmegaFamily {
    /// `{5d, 6d, ..., (n+4)d}`
    Scaled,
    /// `{5+d, ..., (n+4)+d}`
    Shifted,
    /// Greedy odd set of `2n` elements free of 2- and 3-term sums.
    OddSumfree,
}

impl fmt::Display for OmegaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaFamily::Scaled => "SCALED",
            OmegaFamily::Shifted => "SHIFTED",
            OmegaFamily::OddSumfree => "ODD_SUMFREE",
        })
    }
}

impl FromStr for OmegaFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "scaled" => Ok(OmegaFamily::Scaled),
            "shifted" => Ok(OmegaFamily::Shifted),
            "odd" | "odd_sumfree" | "odd-sumfree" => Ok(OmegaFamily::OddSumfree),
            other => Err(format!("unknown lever family `{other}`")),
        }
    }
}

/// Whether summands in a sum condition must be distinct elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SumMode {
    Distinct,
    Repetition,
}

impl FromStr for SumMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "distinct" => Ok(SumMode::Distinct),
            "repetition" => Ok(SumMode::Repetition),
            other => Err(format!("unknown sum mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSet {
    pub family: OmegaFamily,
    pub n: usize,
    pub delta: Option<u64>,
    pub elements: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub mode: SumMode,
    pub duplicates: Vec<u64>,
    pub pair_violations: Vec<(u64, u64, u64)>,
    pub triple_violations: Vec<(u64, u64, u64, u64)>,
}

impl OmegaReport {
    pub fn is_clean(&self) -> bool {
        self.duplicates.is_empty() && self.pair_violations.is_empty() && self.triple_violations.is_empty()
    }
}

pub fn build_omega(family: OmegaFamily, n: usize, delta: u64) -> Result<OmegaSet, KeyError> {
    if n == 0 {
        return Err(KeyError::InvalidParams("lever set needs n >= 1".into()));
    }
    let top = n as u64 + 4;
    let (elements, delta) = match family {
        OmegaFamily::Scaled => {
            if delta == 0 {
                return Err(KeyError::InvalidDelta { family, n, delta });
            }
            ((5..=top).map(|e| e * delta).collect(), Some(delta))
        }
        OmegaFamily::Shifted => {
            // Below n - 4 the set admits f(i) + f(j) = f(k).
            if (delta as i64) < n as i64 - 4 {
                return Err(KeyError::InvalidDelta { family, n, delta });
            }
            ((5..=top).map(|e| e + delta).collect(), Some(delta))
        }
        OmegaFamily::OddSumfree => (odd_sumfree(2 * n), None),
    };
    Ok(OmegaSet {
        family,
        n,
        delta,
        elements,
    })
}

/// Ascending greedy over odd candidates from 5, admitting a candidate only if
/// it is neither a sum of two nor of three distinct earlier elements.
fn odd_sumfree(size: usize) -> Vec<u64> {
    let mut elements: Vec<u64> = Vec::with_capacity(size);
    let mut pair_sums = HashSet::new();
    let mut triple_sums = HashSet::new();
    let mut candidate = 5u64;
    while elements.len() < size {
        if !pair_sums.contains(&candidate) && !triple_sums.contains(&candidate) {
            for (idx, &b) in elements.iter().enumerate() {
                triple_sums.extend(elements[..idx].iter().map(|&a| a + b + candidate));
            }
            pair_sums.extend(elements.iter().map(|&a| a + candidate));
            elements.push(candidate);
        }
        candidate += 2;
    }
    elements
}

/// Exhaustively lists every violation of the lever-set conditions: repeated
/// elements, `e1 + e2 = e3` and `e1 + e2 + e3 = e4`. Summands are listed in
/// ascending order.
pub fn validate_omega(set: &OmegaSet, mode: SumMode) -> OmegaReport {
    let mut sorted = set.elements.clone();
    sorted.sort_unstable();
    let mut duplicates: Vec<u64> = sorted.windows(2).filter(|w| w[0] == w[1]).map(|w| w[0]).collect();
    duplicates.dedup();
    sorted.dedup();
    let members: BTreeSet<u64> = sorted.iter().copied().collect();

    let start = |idx: usize| match mode {
        SumMode::Distinct => idx + 1,
        SumMode::Repetition => idx,
    };

    let mut pair_violations = Vec::new();
    let mut triple_violations = Vec::new();
    for a_idx in 0..sorted.len() {
        let a = sorted[a_idx];
        for b_idx in start(a_idx)..sorted.len() {
            let b = sorted[b_idx];
            if members.contains(&(a + b)) {
                pair_violations.push((a, b, a + b));
            }
            for &c in &sorted[start(b_idx)..] {
                if members.contains(&(a + b + c)) {
                    triple_violations.push((a, b, c, a + b + c));
                }
            }
        }
    }
    OmegaReport {
        mode,
        duplicates,
        pair_violations,
        triple_violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Variant {
    V1,
    V21,
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "v1" => Ok(Variant::V1),
            "v21" | "v2.1" => Ok(Variant::V21),
            other => Err(format!("unknown transform variant `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemParams {
    pub n: usize,
    /// Largest prime allowed as a factor of any `A_x`.
    pub rho: u64,
    pub omega: OmegaSet,
    pub variant: Variant,
    /// Outer exponent for [`Variant::V21`]; drawn at key generation when `None`.
    pub delta: Option<BigUint>,
}

impl SystemParams {
    pub fn new(n: usize, rho: u64, omega: OmegaSet) -> Self {
        SystemParams {
            n,
            rho,
            omega,
            variant: Variant::V1,
            delta: None,
        }
    }

    pub fn with_variant(mut self, variant: Variant, delta: Option<BigUint>) -> Self {
        self.variant = variant;
        self.delta = delta;
        self
    }

    pub fn validate(&self) -> Result<(), KeyError> {
        if self.n < 6 {
            return Err(KeyError::InvalidParams(format!("n = {} is below 6", self.n)));
        }
        if self.rho < 17 {
            return Err(KeyError::InvalidParams(format!("rho = {} is below 17", self.rho)));
        }
        if self.omega.elements.len() < self.n {
            return Err(KeyError::InvalidParams(format!(
                "lever set has {} elements, need {}",
                self.omega.elements.len(),
                self.n
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModulusChoice {
    /// Smallest prime above the product of the coprime sequence.
    Auto,
    Explicit(BigUint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    pub params: SystemParams,
    pub a: Vec<BigUint>,
    pub w: BigUint,
    pub f: Vec<u64>,
    pub m: BigUint,
    /// Effective outer exponent: 1 for V1.
    pub delta: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    pub n: usize,
    pub m: BigUint,
    pub rho: u64,
    pub c: Vec<BigUint>,
}

impl PrivateKey {
    pub fn public_key(&self) -> PublicKey {
        PublicKey {
            n: self.params.n,
            m: self.m.clone(),
            rho: self.params.rho,
            c: transform(&self.a, &self.w, &self.f, &self.m, self.params.variant, &self.delta),
        }
    }
}

pub fn transform(
    a: &[BigUint],
    w: &BigUint,
    f: &[u64],
    m: &BigUint,
    variant: Variant,
    delta: &BigUint,
) -> Vec<BigUint> {
    a.iter()
        .zip(f)
        .map(|(a_x, &f_x)| {
            let base = a_x * mod_pow(w, &BigUint::from(f_x), m) % m;
            match variant {
                Variant::V1 => base,
                Variant::V21 => mod_pow(&base, delta, m),
            }
        })
        .collect()
}

pub fn keygen(params: &SystemParams, modulus: &ModulusChoice, seed: u64) -> Result<(PrivateKey, PublicKey), KeyError> {
    keygen_with_levers(params, modulus, None, seed)
}

/// Key generation with an optional fixed lever assignment, used to plant
/// relations `f(i) + f(j) = f(k)`.
pub fn keygen_with_levers(
    params: &SystemParams,
    modulus: &ModulusChoice,
    levers: Option<Vec<u64>>,
    seed: u64,
) -> Result<(PrivateKey, PublicKey), KeyError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n;

    let a = coprime_sequence(n, params.rho, &mut rng)?;
    let product: BigUint = a.iter().product();
    let m = match modulus {
        ModulusChoice::Auto => next_prime_above(&product),
        ModulusChoice::Explicit(m) => {
            if *m <= product {
                return Err(KeyError::InvalidParams(format!(
                    "modulus {m} does not exceed the sequence product {product}"
                )));
            }
            if !is_prime(m) {
                return Err(KeyError::InvalidParams(format!("modulus {m} is not prime")));
            }
            m.clone()
        }
    };

    let w = rng.gen_biguint_range(&BigUint::from(2u8), &(&m - 1u8));
    let f = match levers {
        Some(f) => {
            if f.len() != n {
                return Err(KeyError::InvalidParams(format!(
                    "expected {n} lever values, got {}",
                    f.len()
                )));
            }
            f
        }
        None => {
            let mut pool = params.omega.elements.clone();
            pool.shuffle(&mut rng);
            pool.truncate(n);
            pool
        }
    };

    let m_minus_1 = &m - 1u8;
    let delta = match params.variant {
        Variant::V1 => BigUint::one(),
        Variant::V21 => match &params.delta {
            Some(d) => {
                if !d.gcd(&m_minus_1).is_one() {
                    return Err(KeyError::InvalidParams(format!("gcd({d}, M-1) != 1")));
                }
                d.clone()
            }
            None => loop {
                let d = rng.gen_biguint_range(&BigUint::from(3u8), &m_minus_1);
                if d.gcd(&m_minus_1).is_one() {
                    break d;
                }
            },
        },
    };

    let private = PrivateKey {
        params: SystemParams {
            delta: Some(delta.clone()),
            ..params.clone()
        },
        a,
        w,
        f,
        m,
        delta,
    };
    let public = private.public_key();
    Ok((private, public))
}

/// `n` values, each a product of one or two distinct primes `<= rho`, with
/// disjoint prime supports.
fn coprime_sequence(n: usize, rho: u64, rng: &mut ChaCha8Rng) -> Result<Vec<BigUint>, KeyError> {
    let mut primes = primes_up_to(rho);
    if primes.len() < n {
        return Err(KeyError::InvalidParams(format!(
            "only {} primes up to rho = {rho}, need {n}",
            primes.len()
        )));
    }
    primes.shuffle(rng);
    let mut values: Vec<u64> = primes[..n].to_vec();
    let mut single: Vec<usize> = (0..n).collect();
    for &p in &primes[n..] {
        if single.is_empty() || !rng.gen_bool(0.5) {
            continue;
        }
        let slot = single.swap_remove(rng.gen_range(0..single.len()));
        values[slot] *= p;
    }
    Ok(values.into_iter().map(BigUint::from).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum KeyIssue {
    LengthMismatch,
    NotCoprime,
    ValueTooSmall { index: usize },
    FactorAboveRho { index: usize },
    ModulusNotPrime,
    ModulusTooSmall,
    WOutOfRange,
    LeverNotInjective,
    LeverOutsideOmega { index: usize },
    HeaderMismatch,
    TransformMismatch { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeyCheck {
    pub ok: bool,
    pub reasons: Vec<KeyIssue>,
}

fn smooth_over(value: &BigUint, rho: u64) -> bool {
    let mut rest = value.clone();
    for p in primes_up_to(rho) {
        let p = BigUint::from(p);
        while !rest.is_zero() && (&rest % &p).is_zero() {
            rest /= &p;
        }
    }
    rest.is_one()
}

pub fn verify_keypair(private: &PrivateKey, public: &PublicKey) -> KeyCheck {
    let mut reasons = Vec::new();
    let n = private.params.n;
    if private.a.len() != n || private.f.len() != n || public.c.len() != n {
        reasons.push(KeyIssue::LengthMismatch);
        return KeyCheck { ok: false, reasons };
    }
    if !pairwise_coprime(&private.a) {
        reasons.push(KeyIssue::NotCoprime);
    }
    for (index, a_x) in private.a.iter().enumerate() {
        if *a_x < BigUint::from(2u8) {
            reasons.push(KeyIssue::ValueTooSmall { index });
        } else if !smooth_over(a_x, private.params.rho) {
            reasons.push(KeyIssue::FactorAboveRho { index });
        }
    }
    if !is_prime(&private.m) {
        reasons.push(KeyIssue::ModulusNotPrime);
    }
    if private.m <= private.a.iter().product::<BigUint>() {
        reasons.push(KeyIssue::ModulusTooSmall);
    }
    if private.w < BigUint::from(2u8) || &private.w + 2u8 > private.m {
        reasons.push(KeyIssue::WOutOfRange);
    }
    if private.f.iter().collect::<HashSet<_>>().len() != n {
        reasons.push(KeyIssue::LeverNotInjective);
    }
    for (index, f_x) in private.f.iter().enumerate() {
        if !private.params.omega.elements.contains(f_x) {
            reasons.push(KeyIssue::LeverOutsideOmega { index });
        }
    }
    if public.n != n || public.m != private.m || public.rho != private.params.rho {
        reasons.push(KeyIssue::HeaderMismatch);
    }
    let expected = private.public_key().c;
    for (index, (want, got)) in expected.iter().zip(&public.c).enumerate() {
        if want != got {
            reasons.push(KeyIssue::TransformMismatch { index });
        }
    }
    KeyCheck {
        ok: reasons.is_empty(),
        reasons,
    }
}

/// Recovers `A_x` from a V1 public value: `C_x * (W^f(x))^{-1} mod M`.
pub fn unwrap_v1(c_x: &BigUint, w: &BigUint, f_x: u64, m: &BigUint) -> Option<BigUint> {
    let inv = mod_inv(&mod_pow(w, &BigUint::from(f_x), m), m).ok()?;
    Some(c_x * inv % m)
}

// ---- JSON key files: every integer is a decimal string ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaFile {
    pub family: OmegaFamily,
    pub n: String,
    pub delta: Option<String>,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrivateKeyFile {
    pub n: String,
    #[serde(rename = "M")]
    pub m: String,
    pub rho: String,
    pub omega: OmegaFile,
    pub variant: Variant,
    pub delta: String,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "W")]
    pub w: String,
    pub f: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PublicKeyFile {
    pub n: String,
    #[serde(rename = "M")]
    pub m: String,
    pub rho: String,
    #[serde(rename = "C")]
    pub c: Vec<String>,
}

fn parse<T: FromStr>(field: &str, s: &str) -> Result<T, KeyError> {
    s.parse()
        .map_err(|_| KeyError::Schema(format!("field `{field}`: `{s}` is not a decimal integer")))
}

fn parse_all<T: FromStr>(field: &str, items: &[String]) -> Result<Vec<T>, KeyError> {
    items.iter().map(|s| parse(field, s)).collect()
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

impl From<&OmegaSet> for OmegaFile {
    fn from(omega: &OmegaSet) -> Self {
        OmegaFile {
            family: omega.family,
            n: omega.n.to_string(),
            delta: omega.delta.map(|d| d.to_string()),
            elements: strings(&omega.elements),
        }
    }
}

impl TryFrom<&OmegaFile> for OmegaSet {
    type Error = KeyError;

    fn try_from(file: &OmegaFile) -> Result<Self, KeyError> {
        Ok(OmegaSet {
            family: file.family,
            n: parse("omega.n", &file.n)?,
            delta: file.delta.as_deref().map(|d| parse("omega.delta", d)).transpose()?,
            elements: parse_all("omega.elements", &file.elements)?,
        })
    }
}

impl OmegaSet {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&OmegaFile::from(self)).expect("lever file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, KeyError> {
        let file: OmegaFile = serde_json::from_str(text).map_err(|e| KeyError::Schema(e.to_string()))?;
        OmegaSet::try_from(&file)
    }
}

impl From<&PrivateKey> for PrivateKeyFile {
    fn from(k: &PrivateKey) -> Self {
        let omega = &k.params.omega;
        PrivateKeyFile {
            n: k.params.n.to_string(),
            m: k.m.to_string(),
            rho: k.params.rho.to_string(),
            omega: OmegaFile::from(omega),
            variant: k.params.variant,
            delta: k.delta.to_string(),
            a: strings(&k.a),
            w: k.w.to_string(),
            f: strings(&k.f),
        }
    }
}

impl TryFrom<&PrivateKeyFile> for PrivateKey {
    type Error = KeyError;

    fn try_from(file: &PrivateKeyFile) -> Result<Self, KeyError> {
        let delta: BigUint = parse("delta", &file.delta)?;
        let omega = OmegaSet::try_from(&file.omega)?;
        let params = SystemParams {
            n: parse("n", &file.n)?,
            rho: parse("rho", &file.rho)?,
            omega,
            variant: file.variant,
            delta: Some(delta.clone()),
        };
        let key = PrivateKey {
            a: parse_all("A", &file.a)?,
            w: parse("W", &file.w)?,
            f: parse_all("f", &file.f)?,
            m: parse("M", &file.m)?,
            params,
            delta,
        };
        if key.a.len() != key.params.n || key.f.len() != key.params.n {
            return Err(KeyError::Schema("A and f must have n entries".into()));
        }
        if key.m.to_u64().is_some_and(|m| m < 3) {
            return Err(KeyError::Schema("M must be at least 3".into()));
        }
        Ok(key)
    }
}

impl From<&PublicKey> for PublicKeyFile {
    fn from(k: &PublicKey) -> Self {
        PublicKeyFile {
            n: k.n.to_string(),
            m: k.m.to_string(),
            rho: k.rho.to_string(),
            c: strings(&k.c),
        }
    }
}

impl TryFrom<&PublicKeyFile> for PublicKey {
    type Error = KeyError;

    fn try_from(file: &PublicKeyFile) -> Result<Self, KeyError> {
        let key = PublicKey {
            n: parse("n", &file.n)?,
            m: parse("M", &file.m)?,
            rho: parse("rho", &file.rho)?,
            c: parse_all("C", &file.c)?,
        };
        if key.c.len() != key.n {
            return Err(KeyError::Schema(format!(
                "C has {} entries, n = {}",
                key.c.len(),
                key.n
            )));
        }
        if key.m < BigUint::from(3u8) {
            return Err(KeyError::Schema("M must be at least 3".into()));
        }
        if key.c.iter().any(|c| c.is_zero() || *c >= key.m) {
            return Err(KeyError::Schema("every C_x must lie in [1, M-1]".into()));
        }
        Ok(key)
    }
}

impl PrivateKey {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PrivateKeyFile::from(self)).expect("key file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, KeyError> {
        let file: PrivateKeyFile = serde_json::from_str(text).map_err(|e| KeyError::Schema(e.to_string()))?;
        PrivateKey::try_from(&file)
    }
}

impl PublicKey {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PublicKeyFile::from(self)).expect("key file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, KeyError> {
        let file: PublicKeyFile = serde_json::from_str(text).map_err(|e| KeyError::Schema(e.to_string()))?;
        PublicKey::try_from(&file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn example2() -> PrivateKey {
        let omega = build_omega(OmegaFamily::Scaled, 6, 1).unwrap();
        PrivateKey {
            params: SystemParams::new(6, 17, omega).with_variant(Variant::V1, Some(BigUint::one())),
            a: [11u64, 10, 3, 7, 17, 13].into_iter().map(big).collect(),
            w: big(17797),
            f: vec![9, 6, 10, 5, 7, 8],
            m: big(510931),
            delta: BigUint::one(),
        }
    }

    #[test]
    fn omega_families() {
        let scaled = build_omega(OmegaFamily::Scaled, 6, 1).unwrap();
        assert_eq!(scaled.elements, vec![5, 6, 7, 8, 9, 10]);
        let shifted = build_omega(OmegaFamily::Shifted, 10, 6).unwrap();
        assert_eq!(shifted.elements, (11..=20).collect::<Vec<_>>());
        assert_eq!(
            build_omega(OmegaFamily::Shifted, 10, 5),
            Err(KeyError::InvalidDelta {
                family: OmegaFamily::Shifted,
                n: 10,
                delta: 5
            })
        );
        assert!(build_omega(OmegaFamily::Scaled, 6, 0).is_err());
        let odd = build_omega(OmegaFamily::OddSumfree, 8, 0).unwrap();
        assert_eq!(odd.elements.len(), 16);
        assert_eq!(&odd.elements[..10], &[5, 7, 9, 11, 13, 15, 17, 19, 53, 55]);
    }

    #[test]
    fn odd_sumfree_is_clean_in_distinct_mode() {
        for n in 1..=24 {
            let odd = build_omega(OmegaFamily::OddSumfree, n, 0).unwrap();
            assert!(odd.elements.iter().all(|e| e % 2 == 1));
            assert!(validate_omega(&odd, SumMode::Distinct).is_clean(), "n = {n}");
        }
        // Under repetition the set fails condition 3: 5 + 5 + 7 = 17.
        let odd = build_omega(OmegaFamily::OddSumfree, 8, 0).unwrap();
        let rep = validate_omega(&odd, SumMode::Repetition);
        assert!(rep.pair_violations.is_empty());
        assert!(rep.triple_violations.contains(&(5, 5, 7, 17)));
    }

    #[test]
    fn validator() {
        let scaled = build_omega(OmegaFamily::Scaled, 6, 1).unwrap();
        let rep = validate_omega(&scaled, SumMode::Repetition);
        assert!(rep.pair_violations.contains(&(5, 5, 10)));
        assert!(validate_omega(&scaled, SumMode::Distinct).pair_violations.is_empty());
        let shifted = build_omega(OmegaFamily::Shifted, 10, 6).unwrap();
        assert!(validate_omega(&shifted, SumMode::Repetition).pair_violations.is_empty());

        let dup = OmegaSet {
            family: OmegaFamily::Scaled,
            n: 3,
            delta: Some(1),
            elements: vec![7, 9, 7],
        };
        let rep = validate_omega(&dup, SumMode::Distinct);
        assert_eq!(rep.duplicates, vec![7]);
        for (a, b, c) in rep
            .pair_violations
            .iter()
            .chain(&validate_omega(&scaled, SumMode::Repetition).pair_violations)
        {
            assert_eq!(a + b, *c);
        }
    }

    #[test]
    fn example2_transform() {
        let key = example2();
        let c = key.public_key().c;
        let expected: Vec<_> = [113101u64, 79182, 175066, 433093, 501150, 389033]
            .into_iter()
            .map(big)
            .collect();
        assert_eq!(c, expected);
        assert!(verify_keypair(&key, &key.public_key()).ok);

        let mut tampered = key.public_key();
        tampered.c[0] += 1u8;
        let check = verify_keypair(&key, &tampered);
        assert!(!check.ok);
        assert_eq!(check.reasons, vec![KeyIssue::TransformMismatch { index: 0 }]);
    }

    #[test]
    fn unit_lever_base_is_identity() {
        let a: Vec<_> = [3u64, 4, 5].into_iter().map(big).collect();
        let c = transform(&a, &big(1), &[5, 6, 7], &big(101), Variant::V1, &big(1));
        assert_eq!(c, a);
    }

    #[test]
    fn keygen_contract() {
        let omega = build_omega(OmegaFamily::Scaled, 6, 1).unwrap();
        let params = SystemParams::new(6, 17, omega);
        for seed in 0..40 {
            let (private, public) = keygen(&params, &ModulusChoice::Auto, seed).unwrap();
            let check = verify_keypair(&private, &public);
            assert!(check.ok, "seed {seed}: {:?}", check.reasons);
            let product: BigUint = private.a.iter().product();
            assert!(product < private.m);
            assert_eq!(private.m, next_prime_above(&product));
            for a_x in &private.a {
                assert!(smooth_over(a_x, 17));
            }
        }
        let first = keygen(&params, &ModulusChoice::Auto, 7).unwrap();
        let second = keygen(&params, &ModulusChoice::Auto, 7).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn keygen_errors() {
        let omega = build_omega(OmegaFamily::Scaled, 8, 1).unwrap();
        // Only 7 primes up to 17.
        let params = SystemParams::new(8, 17, omega.clone());
        assert!(matches!(
            keygen(&params, &ModulusChoice::Auto, 1),
            Err(KeyError::InvalidParams(_))
        ));
        let params = SystemParams::new(8, 43, omega);
        assert!(matches!(
            keygen(&params, &ModulusChoice::Explicit(big(101)), 1),
            Err(KeyError::InvalidParams(_))
        ));
    }

    #[test]
    fn v21_roundtrip() {
        let omega = build_omega(OmegaFamily::Scaled, 7, 1).unwrap();
        let params = SystemParams::new(7, 23, omega).with_variant(Variant::V21, None);
        for seed in 0..10 {
            let (private, public) = keygen(&params, &ModulusChoice::Auto, seed).unwrap();
            assert!(verify_keypair(&private, &public).ok);
            let m = &private.m;
            let m1 = m - 1u8;
            let inv_delta = mod_inv(&private.delta, &m1).unwrap();
            for x in 0..7 {
                let base = mod_pow(&public.c[x], &inv_delta, m);
                assert_eq!(unwrap_v1(&base, &private.w, private.f[x], m).unwrap(), private.a[x]);
            }
        }
    }

    #[test]
    fn key_files() {
        let key = example2();
        let text = key.to_json();
        assert_eq!(PrivateKey::from_json(&text).unwrap(), key);
        let public = key.public_key();
        let text = public.to_json();
        assert!(!text.contains("\"A\"") && !text.contains("\"W\"") && !text.contains("\"f\""));
        assert!(text.contains("\"113101\""));
        assert_eq!(PublicKey::from_json(&text).unwrap(), public);
        assert!(PublicKey::from_json(r#"{"n":"1","M":"7","rho":"17","C":["9"]}"#).is_err());
        assert!(PublicKey::from_json(r#"{"n":"1","M":"7","rho":"17","C":[9]}"#).is_err());
    }
}
