//! Published example data, transcribed verbatim. These are inputs and
//! expected outputs; nothing here is computed.

use num_bigint::BigUint;
use num_traits::One;

use crate::keys::{build_omega, OmegaFamily, PrivateKey, SystemParams, Variant};

fn bigs(values: &[u64]) -> Vec<BigUint> {
    values.iter().copied().map(BigUint::from).collect()
}

/// Example 1: `2/13` is a convergent of `2039/13001` but misses the bound.
pub mod example1 {
    pub const ALPHA: (u64, u64) = (2039, 13001);
    pub const CONVERGENT: (u64, u64) = (2, 13);
    pub const DIFFERENCE: &str = "0.002987935839";
    pub const BOUND: &str = "0.002958579882";
    /// Leading partial quotients as displayed: `1/(6 + 1/(2 + 1/(1 + ...`.
    pub const LEADING_QUOTIENTS: [u64; 4] = [0, 6, 2, 1];
    pub const LAST_QUOTIENT: u64 = 3;
}

/// Examples 2 and 4 share one key.
pub mod example2 {
    pub const N: usize = 6;
    pub const RHO: u64 = 17;
    pub const A: [u64; 6] = [11, 10, 3, 7, 17, 13];
    pub const W: u64 = 17797;
    pub const F: [u64; 6] = [9, 6, 10, 5, 7, 8];
    pub const M: u64 = 510931;
    pub const PRODUCT: u64 = 510510;
    pub const C: [u64; 6] = [113101, 79182, 175066, 433093, 501150, 389033];
    pub const C_INV: [u64; 6] = [266775, 236469, 435654, 149312, 434038, 425203];
    pub const TRIPLE: (usize, usize, usize) = (1, 3, 5);
    pub const Z: u64 = 186640;
    pub const LEADING_QUOTIENTS: [u64; 6] = [0, 2, 1, 2, 1, 4];
    pub const LAST_QUOTIENT: u64 = 3;
    pub const U: usize = 4;
    pub const CONVERGENT: (u64, u64) = (4, 11);
    pub const DIFFERENCE: &str = "0.0016575801";
    pub const BOUND: &str = "0.0041322314";
    pub const TRUE_A_K: u64 = 17;
}

pub mod example3 {
    pub const N: usize = 12;
    pub const RHO: u64 = 43;
    pub const A: [u64; 12] = [23, 11, 17, 41, 29, 26, 15, 19, 37, 31, 7, 43];
    pub const W: u64 = 1507351;
    pub const F: [u64; 12] = [6, 14, 9, 11, 12, 10, 8, 16, 5, 13, 15, 7];
    /// Composite: 89 * 22721. Every `C_x` is still invertible.
    pub const M: u64 = 2022169;
    /// `31 * 37 * 41 * 43`, the bound quoted next to `M`.
    pub const QUOTED_PRODUCT: u64 = 2022161;
    pub const C: [u64; 12] = [
        572402, 1930240, 374715, 25128, 265158, 350520, 1674837, 1231458, 1448214, 110225, 1198155, 757620,
    ];
    pub const C6_C7_INV: [u64; 2] = [93176, 1591882];
    pub const PAIR: (usize, usize, usize, usize) = (4, 12, 6, 7);
    pub const NUMERATOR_PRODUCT: u64 = 776394;
    pub const DENOMINATOR_INVERSE_PRODUCT: u64 = 1123251;
    pub const Z: u64 = 689616;
    pub const QUOTIENTS: [u64; 10] = [0, 2, 1, 13, 1, 3, 2, 2, 2, 97];
    pub const CONVERGENT: (u64, u64) = (133, 390);
    pub const DIFFERENCE: &str = "2.235477262e-6";
    pub const BOUND: &str = "3.287310979e-6";
    pub const FACTOR_PAIRS: [(u64, u64); 7] = [(2, 195), (3, 130), (5, 78), (6, 65), (10, 39), (13, 30), (15, 26)];
    pub const BOUNDED_PAIRS: [(u64, u64); 3] = [(10, 39), (13, 30), (15, 26)];
    pub const TRUE_PAIR: (u64, u64) = (26, 15);
    pub const A_U: u64 = 2;
    pub const A_NEXT: u64 = 2;
}

pub mod example4 {
    pub const TRIPLE: (usize, usize, usize) = (1, 3, 6);
    pub const Z: u64 = 425865;
    /// Printed as the expansion of "186640/510931"; the quotients are those
    /// of 425865/510931.
    pub const QUOTIENTS: [u64; 5] = [0, 1, 5, 159, 535];
    pub const U: usize = 2;
    pub const CANDIDATE: (u64, u64) = (5, 6);
    pub const NEXT: (u64, u64) = (796, 955);
    pub const DIFFERENCE: &str = "0.000174518";
    pub const BOUND: &str = "0.0138889";
    pub const ROOT_FACTOR: &str = "35.9197";
    pub const SCALED_ROOT: &str = "215.5186";
    pub const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    pub const M_INDEX: usize = 7;
    /// The ratio as rounded in the text, and its square root as printed.
    pub const ROUNDED_RATIO: u64 = 15;
    pub const DELTA: &str = "3.8729";
    pub const MAX_A: u64 = 221;
    pub const A_U: u64 = 5;
    pub const A_NEXT: u64 = 159;
    pub const TRUE_A_K: u64 = 13;
}

pub mod example5 {
    pub const N: usize = 10;
    pub const RHO: u64 = 43;
    pub const A: [u64; 10] = [437, 221, 77, 43, 37, 29, 41, 31, 15, 2];
    pub const W: u64 = 944516391;
    pub const F: [u64; 10] = [11, 14, 13, 8, 10, 5, 9, 7, 12, 6];
    pub const M: u64 = 13082761331670077;
    pub const PRODUCT: u64 = 13082761331670030;
    /// As printed. `C_6` carries a one-digit transcription slip.
    pub const C: [u64; 10] = [
        3534250731208421,
        12235924019299910,
        8726060645493642,
        10110020851673707,
        2328792308267710,
        8425476748983036,
        6187583147203887,
        10200412235916586,
        9359330740489342,
        5977236088006743,
    ];
    pub const MISPRINTED_INDEX: usize = 6;
    pub const DELTA: u64 = 506;
    pub const MAX_A: u64 = 58642670;
}

/// One table row: target index `k`, candidate value, `(i, j)` pairs.
pub type TableRow = (usize, u64, &'static [(usize, usize)]);

/// Table II, rows in printed order.
pub const TABLE2: &[TableRow] = &[
    (1, 187125, &[(1, 1)]),
    (1, 121089, &[(2, 1), (1, 2)]),
    (1, 77, &[(5, 3), (3, 5)]),
    (1, 23, &[(8, 6), (6, 8), (10, 10)]),
    (1, 437, &[(10, 6), (6, 10)]),
    (2, 1251, &[(1, 1)]),
    (2, 187125, &[(2, 1), (1, 2)]),
    (2, 121089, &[(2, 2)]),
    (2, 17, &[(8, 4), (6, 5), (5, 6), (10, 7), (4, 8), (7, 10)]),
    (2, 221, &[(10, 4), (7, 6), (6, 7), (8, 8), (4, 10)]),
    (2, 77, &[(9, 8), (8, 9)]),
    (2, 4204, &[(10, 10)]),
    (3, 187125, &[(3, 1), (1, 3)]),
    (3, 12, &[(7, 1), (1, 7)]),
    (3, 121089, &[(3, 2), (2, 3)]),
    (3, 77, &[(6, 4), (4, 6), (10, 8), (8, 10)]),
    (3, 11, &[(10, 4), (7, 6), (6, 7), (8, 8), (4, 10)]),
    (3, 2113, &[(8, 7), (7, 8)]),
    (3, 769, &[(9, 8), (8, 9)]),
    (4, 187125, &[(4, 1), (1, 4)]),
    (4, 121089, &[(4, 2), (2, 4)]),
    (4, 76, &[(10, 6), (6, 10)]),
    (4, 56, &[(10, 9), (9, 10)]),
    (5, 187125, &[(5, 1), (1, 5)]),
    (5, 630269, &[(6, 1), (1, 6)]),
    (5, 121089, &[(5, 2), (2, 5)]),
    (5, 41, &[(8, 2), (2, 8)]),
    (5, 97, &[(4, 3), (3, 4)]),
    (5, 37, &[(6, 6), (10, 6), (6, 10)]),
    (6, 187125, &[(6, 1), (1, 6)]),
    (6, 121089, &[(6, 2), (2, 6)]),
    (7, 187125, &[(7, 1), (1, 7)]),
    (7, 121089, &[(7, 2), (2, 7)]),
    (7, 3, &[(9, 3), (3, 9)]),
    (8, 187125, &[(8, 1), (1, 8)]),
    (8, 34945619, &[(6, 2), (2, 6)]),
    (8, 121089, &[(8, 2), (2, 8)]),
    (9, 187125, &[(9, 1), (1, 9)]),
    (9, 121089, &[(9, 2), (2, 9)]),
    (9, 5, &[(6, 4), (4, 6), (10, 8), (8, 10)]),
    (9, 15, &[(8, 6), (6, 8), (10, 10)]),
    (10, 259970, &[(4, 1), (1, 4)]),
    (10, 187125, &[(10, 1), (1, 10)]),
    (10, 121089, &[(10, 2), (2, 10)]),
    (10, 7629, &[(8, 3), (3, 8)]),
];

fn private_key(n: usize, rho: u64, a: &[u64], w: u64, f: &[u64], m: u64) -> PrivateKey {
    let omega = build_omega(OmegaFamily::Scaled, n, 1).expect("scaled set with delta 1");
    PrivateKey {
        params: SystemParams::new(n, rho, omega).with_variant(Variant::V1, Some(BigUint::one())),
        a: bigs(a),
        w: BigUint::from(w),
        f: f.to_vec(),
        m: BigUint::from(m),
        delta: BigUint::one(),
    }
}

pub fn example2_private() -> PrivateKey {
    use example2::*;
    private_key(N, RHO, &A, W, &F, M)
}

/// The twelve-element key of Example 3, flattened from its grouped layout.
pub fn example3_private() -> PrivateKey {
    use example3::*;
    private_key(N, RHO, &A, W, &F, M)
}

pub fn example5_private() -> PrivateKey {
    use example5::*;
    private_key(N, RHO, &A, W, &F, M)
}
