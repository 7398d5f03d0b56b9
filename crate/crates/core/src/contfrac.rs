//! Continued fractions of rationals and the approximation predicates built on
//! them.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("convergent index {index} out of range (last index is {last})")]
    IndexOutOfRange { index: usize, last: usize },
}

/// The `u`-th convergent `p/q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub u: usize,
    pub p: BigUint,
    pub q: BigUint,
}

/// Canonical expansion `[a_0; a_1, ..., a_t]` of a reduced rational together
/// with all of its convergents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub num: BigUint,
    pub den: BigUint,
    pub quotients: Vec<BigUint>,
    pub convergents: Vec<Convergent>,
}

impl ContinuedFraction {
    /// Index of the last partial quotient.
    pub fn last_index(&self) -> usize {
        self.quotients.len() - 1
    }
}

/// Expands `num/den` by the Euclidean algorithm.
///
/// The input is reduced first, and the result is canonical: the final partial
/// quotient is at least 2 whenever there is more than one.
pub fn cf_expand(num: &BigUint, den: &BigUint) -> Result<ContinuedFraction, CfError> {
    if den.is_zero() {
        return Err(CfError::ZeroDenominator);
    }
    let g = num.gcd(den);
    let (num, den) = (num / &g, den / &g);

    let mut quotients = Vec::new();
    let (mut a, mut b) = (num.clone(), den.clone());
    while !b.is_zero() {
        let (q, r) = a.div_rem(&b);
        quotients.push(q);
        a = std::mem::replace(&mut b, r);
    }
    if quotients.len() > 1 && quotients.last().is_some_and(|a| a.is_one()) {
        quotients.pop();
        *quotients.last_mut().unwrap() += 1u8;
    }

    let convergents = convergents_of(&quotients);
    Ok(ContinuedFraction {
        num,
        den,
        quotients,
        convergents,
    })
}

fn convergents_of(quotients: &[BigUint]) -> Vec<Convergent> {
    // Seeds (p_{-2}, q_{-2}) = (0, 1) and (p_{-1}, q_{-1}) = (1, 0).
    let (mut p2, mut q2) = (BigUint::zero(), BigUint::one());
    let (mut p1, mut q1) = (BigUint::one(), BigUint::zero());
    let mut out = Vec::with_capacity(quotients.len());
    for (u, a) in quotients.iter().enumerate() {
        let p = a * &p1 + &p2;
        let q = a * &q1 + &q2;
        p2 = std::mem::replace(&mut p1, p.clone());
        q2 = std::mem::replace(&mut q1, q.clone());
        out.push(Convergent { u, p, q });
    }
    out
}

pub fn convergent_at(cf: &ContinuedFraction, u: usize) -> Result<Convergent, CfError> {
    cf.convergents.get(u).cloned().ok_or(CfError::IndexOutOfRange {
        index: u,
        last: cf.last_index(),
    })
}

/// `|num/den - p/q| < 1/(k q^2)`, decided as `k q |num q - p den| < den`.
pub fn bound_holds(num: &BigUint, den: &BigUint, p: &BigUint, q: &BigUint, k: &BigUint) -> bool {
    let lhs = num * q;
    let rhs = p * den;
    let diff = if lhs >= rhs { lhs - rhs } else { rhs - lhs };
    k * q * diff < *den
}

/// Whether the reduced form of `r/s` appears among the convergents of
/// `num/den`.
pub fn is_convergent(num: &BigUint, den: &BigUint, r: &BigUint, s: &BigUint) -> bool {
    if s.is_zero() {
        return false;
    }
    let Ok(cf) = cf_expand(num, den) else {
        return false;
    };
    let g = r.gcd(s);
    let (r, s) = (r / &g, s / &g);
    cf.convergents.iter().any(|c| c.p == r && c.q == s)
}

/// Indices of every convergent of `num/den` within `1/(k q^2)` of the value.
pub fn legendre_scan(num: &BigUint, den: &BigUint, k: &BigUint) -> Result<Vec<usize>, CfError> {
    let cf = cf_expand(num, den)?;
    Ok(cf
        .convergents
        .iter()
        .filter(|c| bound_holds(&cf.num, &cf.den, &c.p, &c.q, k))
        .map(|c| c.u)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn quotients(num: u64, den: u64) -> Vec<u64> {
        cf_expand(&big(num), &big(den))
            .unwrap()
            .quotients
            .iter()
            .map(|q| u64::try_from(q).unwrap())
            .collect()
    }

    #[test]
    fn expansions() {
        assert_eq!(&quotients(186640, 510931)[..6], &[0, 2, 1, 2, 1, 4]);
        assert_eq!(quotients(425865, 510931), vec![0, 1, 5, 159, 535]);
        assert_eq!(quotients(1, 2), vec![0, 2]);
        assert_eq!(quotients(2039, 13001)[..2], [0, 6]);
        assert_eq!(quotients(4, 8), vec![0, 2]);
        assert_eq!(quotients(0, 7), vec![0]);
        assert_eq!(quotients(3, 3), vec![1]);
        assert_eq!(cf_expand(&big(1), &big(0)), Err(CfError::ZeroDenominator));
    }

    #[test]
    fn convergents() {
        let cf = cf_expand(&big(186640), &big(510931)).unwrap();
        let c = convergent_at(&cf, 4).unwrap();
        assert_eq!((c.p, c.q), (big(4), big(11)));

        let cf = cf_expand(&big(425865), &big(510931)).unwrap();
        let c = convergent_at(&cf, 3).unwrap();
        assert_eq!((c.p, c.q), (big(796), big(955)));
        assert_eq!(
            convergent_at(&cf, 5),
            Err(CfError::IndexOutOfRange { index: 5, last: 4 })
        );

        let cf = cf_expand(&big(1), &big(2)).unwrap();
        let c = convergent_at(&cf, 1).unwrap();
        assert_eq!((c.p, c.q), (big(1), big(2)));
        assert_eq!(cf.convergents[0].q, big(1));
    }

    #[test]
    fn bounds() {
        let two = big(2);
        assert!(bound_holds(&big(186640), &big(510931), &big(4), &big(11), &two));
        assert!(!bound_holds(&big(2039), &big(13001), &big(2), &big(13), &two));
        assert!(bound_holds(&big(17), &big(99), &big(17), &big(99), &two));
    }

    #[test]
    fn convergent_membership() {
        assert!(is_convergent(&big(2039), &big(13001), &big(2), &big(13)));
        assert!(is_convergent(&big(186640), &big(510931), &big(4), &big(11)));
        assert!(!is_convergent(&big(1), &big(3), &big(1), &big(2)));
        // Non-reduced candidates are compared in lowest terms.
        assert!(is_convergent(&big(186640), &big(510931), &big(8), &big(22)));
    }

    #[test]
    fn scans() {
        let two = big(2);
        let cf = cf_expand(&big(689616), &big(2022169)).unwrap();
        let hits = legendre_scan(&big(689616), &big(2022169), &two).unwrap();
        assert!(hits
            .iter()
            .any(|&u| cf.convergents[u].p == big(133) && cf.convergents[u].q == big(390)));

        let hits = legendre_scan(&big(186640), &big(510931), &two).unwrap();
        assert!(hits.contains(&4));
        let cf = cf_expand(&big(186640), &big(510931)).unwrap();
        assert_eq!(hits.last(), Some(&cf.last_index()));
    }

    #[test]
    fn legendre_bound_is_not_necessary() {
        // 2/13 is a convergent of 2039/13001 that misses the 1/(2 s^2) bound.
        let cf = cf_expand(&big(2039), &big(13001)).unwrap();
        let witness = cf.convergents.iter().find(|c| c.p == big(2) && c.q == big(13)).unwrap();
        assert!(!bound_holds(&cf.num, &cf.den, &witness.p, &witness.q, &big(2)));
    }
}
