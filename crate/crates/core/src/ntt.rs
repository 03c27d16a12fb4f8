//! Number-theoretic transform over Z/998244353Z, used as the dense sumset engine.
//!
//! Indicator convolutions count representations, and a count never exceeds
//! `min(|A|, |B|) < MOD`, so a coefficient is non-zero mod `MOD` iff the sum
//! is attained.

pub(crate) const MOD: u64 = 998_244_353;
const ROOT: u64 = 3;
/// 2^23 divides MOD - 1.
pub(crate) const MAX_LOG_LEN: u32 = 23;

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= MOD;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % MOD;
        }
        base = base * base % MOD;
        exp >>= 1;
    }
    acc
}

/// Montgomery arithmetic with `R = 2^32`.
const M32: u32 = MOD as u32;
/// `-MOD^{-1} mod 2^32`.
const M_NEG_INV: u32 = {
    let mut inv: u32 = 1;
    let mut i = 0;
    while i < 5 {
        inv = inv.wrapping_mul(2u32.wrapping_sub(M32.wrapping_mul(inv)));
        i += 1;
    }
    inv.wrapping_neg()
};
const R_MOD: u64 = (1u64 << 32) % MOD;

#[inline(always)]
fn reduce(t: u64) -> u32 {
    let m = (t as u32).wrapping_mul(M_NEG_INV);
    let u = ((t + m as u64 * MOD) >> 32) as u32;
    if u >= M32 {
        u - M32
    } else {
        u
    }
}

#[inline(always)]
fn mont_mul(a: u32, b: u32) -> u32 {
    reduce(a as u64 * b as u64)
}

#[inline(always)]
fn add(a: u32, b: u32) -> u32 {
    let s = a + b;
    if s >= M32 {
        s - M32
    } else {
        s
    }
}

#[inline(always)]
fn sub(a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + M32 - b
    }
}

fn to_mont(x: u64) -> u32 {
    (x % MOD * R_MOD % MOD) as u32
}

/// `table[h + k] = w_{2h}^k` in Montgomery form for every stage half-width `h`.
fn twiddles(n: usize, invert: bool) -> Vec<u32> {
    let mut table = vec![0u32; n.max(2)];
    let mut h = 1;
    while h < n {
        let mut w = pow_mod(ROOT, (MOD - 1) / (2 * h) as u64);
        if invert {
            w = pow_mod(w, MOD - 2);
        }
        let wm = to_mont(w);
        let mut cur = to_mont(1);
        for k in 0..h {
            table[h + k] = cur;
            cur = mont_mul(cur, wm);
        }
        h *= 2;
    }
    table
}

/// Decimation in frequency: natural order in, bit-reversed order out.
fn forward(a: &mut [u32], table: &[u32]) {
    let n = a.len();
    let mut h = n / 2;
    while h >= 1 {
        let tw = &table[h..2 * h];
        for block in a.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                let (u, v) = (*x, *y);
                *x = add(u, v);
                *y = mont_mul(sub(u, v), w);
            }
        }
        h /= 2;
    }
}

/// Decimation in time: bit-reversed order in, natural order out, scaled by `n`.
fn inverse(a: &mut [u32], table: &[u32]) {
    let n = a.len();
    let mut h = 1;
    while h < n {
        let tw = &table[h..2 * h];
        for block in a.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                let u = *x;
                let v = mont_mul(*y, w);
                *x = add(u, v);
                *y = sub(u, v);
            }
        }
        h *= 2;
    }
}

/// Returns the support of the convolution of two 0/1 indicator vectors,
/// truncated to `out_len` positions. `lhs` and `rhs` list the set positions.
pub(crate) fn indicator_convolution(lhs: &[usize], rhs: &[usize], out_len: usize) -> Vec<usize> {
    let lhs = &lhs[..lhs.partition_point(|&x| x < out_len)];
    let rhs = &rhs[..rhs.partition_point(|&x| x < out_len)];
    let lhs_len = lhs.last().map_or(0, |&x| x + 1);
    let rhs_len = rhs.last().map_or(0, |&x| x + 1);
    if lhs_len == 0 || rhs_len == 0 {
        return Vec::new();
    }
    let linear = lhs_len + rhs_len - 1;
    let full = linear.min(out_len);
    let size = linear.next_power_of_two().max(2);
    assert!(
        size.trailing_zeros() <= MAX_LOG_LEN,
        "transform length {size} exceeds 2^{MAX_LOG_LEN}"
    );
    crate::stats::ntt_call(size);
    let one = to_mont(1);
    let mut fa = vec![0u32; size];
    let mut fb = vec![0u32; size];
    for &x in lhs {
        fa[x] = one;
    }
    for &x in rhs {
        fb[x] = one;
    }
    let fwd = twiddles(size, false);
    forward(&mut fa, &fwd);
    forward(&mut fb, &fwd);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = mont_mul(*x, *y);
    }
    inverse(&mut fa, &twiddles(size, true));
    // Values are the counts times n·R^k mod MOD; non-zero iff the count is.
    fa.iter()
        .take(full)
        .enumerate()
        .filter_map(|(k, &c)| (c != 0).then_some(k))
        .collect()
}
