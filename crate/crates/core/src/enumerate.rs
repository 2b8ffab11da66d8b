//! Exhaustive generation of all labeled strict orders on `{0, .., n-1}`.
//!
//! Posets on `k + 1` elements are produced from posets on `k` elements by
//! choosing a down-closed set `D` to put below the new element and an
//! up-closed set `U` to put above it, subject to `D x U ⊆ P`. Each labeled
//! poset arises from exactly one (restriction, D, U) triple.

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::poset::Poset;

pub const MAX_ENUM_N: usize = 7;

/// Up-set bitmask per element.
type Rows = [u8; MAX_ENUM_N];

fn extensions(rows: &Rows, k: usize) -> Vec<Rows> {
    let full: u32 = (1 << k) - 1;
    let mut downs = [0u8; MAX_ENUM_N];
    for (x, row) in rows.iter().enumerate().take(k) {
        for (y, d) in downs.iter_mut().enumerate().take(k) {
            if row >> y & 1 == 1 {
                *d |= 1 << x;
            }
        }
    }
    let mut out = Vec::new();
    for d in 0..=full {
        let d = d as u8;
        let down_closed = (0..k)
            .filter(|&x| d >> x & 1 == 1)
            .all(|x| downs[x] & !d == 0);
        if !down_closed {
            continue;
        }
        // everything above the new element must sit above every element of D
        let mut common_up = full as u8 & !d;
        for x in (0..k).filter(|&x| d >> x & 1 == 1) {
            common_up &= rows[x];
        }
        // subsets of common_up, ascending
        let mut u: u8 = 0;
        loop {
            let up_closed = (0..k)
                .filter(|&x| u >> x & 1 == 1)
                .all(|x| rows[x] & !u == 0);
            if up_closed {
                let mut next = *rows;
                for (x, row) in next.iter_mut().enumerate().take(k) {
                    if d >> x & 1 == 1 {
                        *row |= 1 << k;
                    }
                }
                next[k] = u;
                out.push(next);
            }
            if u == common_up {
                break;
            }
            u = (u.wrapping_sub(common_up)) & common_up;
        }
    }
    out
}

fn rows_iter(n: usize) -> Box<dyn Iterator<Item = Rows> + Send> {
    if n == 0 {
        return Box::new(std::iter::once([0; MAX_ENUM_N]));
    }
    Box::new(rows_iter(n - 1).flat_map(move |rows| extensions(&rows, n - 1)))
}

fn to_poset(n: usize, rows: &Rows) -> Poset {
    let mut m = BitMatrix::new(n);
    for (x, row) in rows.iter().enumerate().take(n) {
        for y in 0..n {
            if row >> y & 1 == 1 {
                m.set(x, y, true);
            }
        }
    }
    Poset::from_matrix_unchecked(m)
}

/// Every labeled strict order on `n` elements exactly once, in a fixed order.
pub fn enumerate_posets(n: usize) -> Result<impl Iterator<Item = Poset> + Send> {
    if n > MAX_ENUM_N {
        return Err(Error::Guard {
            what: "poset enumeration",
            n,
            max: MAX_ENUM_N,
        });
    }
    Ok(rows_iter(n).map(move |rows| to_poset(n, &rows)))
}

/// Collected form of [`enumerate_posets`].
pub fn all_posets(n: usize) -> Result<Vec<Poset>> {
    Ok(enumerate_posets(n)?.collect())
}

/// Number of labeled posets on `n` elements by enumeration.
pub fn count_posets(n: usize) -> Result<u64> {
    if n > MAX_ENUM_N {
        return Err(Error::Guard {
            what: "poset enumeration",
            n,
            max: MAX_ENUM_N,
        });
    }
    Ok(rows_iter(n).count() as u64)
}
