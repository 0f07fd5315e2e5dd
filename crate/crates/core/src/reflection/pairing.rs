//! Cantor pairing over arbitrary-precision naturals.

use rug::Integer;

pub fn pair(x: &Integer, y: &Integer) -> Integer {
    let w = Integer::from(x + y);
    let t = Integer::from(&w + 1u32) * &w;
    (t >> 1u32) + y
}

pub fn pair_u64(x: u64, y: u64) -> Integer {
    pair(&Integer::from(x), &Integer::from(y))
}

/// Inverse of [`pair`]. Panics on negative input.
pub fn unpair(s: &Integer) -> (Integer, Integer) {
    assert!(*s >= 0, "unpair of a negative number");
    // w = floor((sqrt(8s + 1) - 1) / 2)
    let disc = Integer::from(s << 3u32) + 1u32;
    let w: Integer = (disc.sqrt() - 1u32) >> 1u32;
    let t = (Integer::from(&w + 1u32) * &w) >> 1u32;
    let y = Integer::from(s - &t);
    let x = Integer::from(&w - &y);
    (x, y)
}

pub fn left(s: &Integer) -> Integer {
    unpair(s).0
}

pub fn right(s: &Integer) -> Integer {
    unpair(s).1
}
