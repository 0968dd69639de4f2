//! Reference values the computations are checked against.

/// (q, a, b, disc) for y = T^2 + aT + b.
pub const DISCRIMINANTS: [(u32, u32, u32, u64); 8] = [
    (2, 1, 1, 4),
    (3, 0, 1, 80),
    (3, 1, 2, 68),
    (3, 2, 2, 68),
    (5, 1, 1, 265216),
    (5, 1, 2, 278800),
    (7, 0, 1, 7372800000),
    (7, 1, 4, 6567981056),
];

/// (q, a, b, alpha) with a unimodular pairing.
pub const ALPHAS: [(u32, u32, u32, &[i64]); 12] = [
    (3, 1, 2, &[0, 1, 0]),
    (3, 2, 2, &[0, 0, 1]),
    (5, 1, 2, &[-1, 1, 4, 5, 2]),
    (5, 2, 3, &[-1, -3, -6, -5, -2]),
    (5, 3, 3, &[-1, -6, -3, -2, -5]),
    (5, 4, 2, &[-1, 4, 1, 2, 5]),
    (7, 1, 6, &[-8, 0, -6, -5, -8, -7, 5]),
    (7, 2, 3, &[-8, -7, -7, 2, 3, -6, -6]),
    (7, 3, 5, &[-5, -6, -6, -4, 2, 3, -5]),
    (7, 4, 5, &[-8, -8, 0, -7, -6, 5, -5]),
    (7, 5, 3, &[-5, -4, -5, -6, 3, -6, 2]),
    (7, 6, 6, &[-5, -6, 2, -5, -6, -4, 3]),
];
