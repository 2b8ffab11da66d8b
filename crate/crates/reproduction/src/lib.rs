//! Published figures the acceptance checks compare against.

/// `(n, n^2/4, log3 |P(n)|)` as printed in Table 1.
pub const TABLE1: [(usize, f64, f64); 7] = [
    (4, 4.0, 4.91),
    (8, 16.0, 18.10),
    (12, 36.0, 36.93),
    (13, 42.25, 42.41),
    (14, 49.0, 48.19),
    (15, 56.25, 54.26),
    (16, 64.0, 58.52),
];

/// Mean `|Q(P)|` over all posets on `n` elements.
pub const MEAN_Q: [(usize, f64); 2] = [(4, 4.849), (5, 7.958)];

/// Optimal expected number of comparisons.
pub const OPTIMAL: [(usize, f64); 2] = [(4, 5.461), (5, 8.744)];

pub const COUNTS: [(usize, u64); 2] = [(4, 219), (5, 4231)];
