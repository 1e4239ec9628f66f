//! Radix-2 FFT and FFT-based circular autocorrelation.
//!
//! Correlation profiles over multi-million-sample series are quadratic if
//! done directly; the transform keeps them n log n. Arbitrary lengths are
//! handled by computing the linear autocorrelation on a padded power-of-two
//! buffer and folding it back to the circular one.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::PI;

/// In-place forward FFT; the length must be a power of two.
pub fn fft_in_place(buf: &mut [Complex64]) {
    transform(buf, -1.0);
}

/// In-place inverse FFT (including the 1/n scaling).
pub fn ifft_in_place(buf: &mut [Complex64]) {
    transform(buf, 1.0);
    let scale = 1.0 / buf.len() as f64;
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

fn transform(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    assert!(n.is_power_of_two(), "FFT length must be a power of two");
    if n <= 1 {
        return;
    }

    // bit-reversal permutation
    let mut j = 0usize;
    for i in 0..n - 1 {
        if i < j {
            buf.swap(i, j);
        }
        let mut mask = n >> 1;
        while j & mask != 0 {
            j ^= mask;
            mask >>= 1;
        }
        j |= mask;
    }

    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * PI / len as f64;
        let wlen = Complex64::new(ang.cos(), ang.sin());
        let mut i = 0;
        while i < n {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let u = buf[i + k];
                let v = buf[i + k + len / 2] * w;
                buf[i + k] = u + v;
                buf[i + k + len / 2] = u - v;
                w *= wlen;
            }
            i += len;
        }
        len <<= 1;
    }
}

/// Unnormalized circular autocorrelation c[k] = sum_t x[t]·x[(t+k) mod n]
/// for k = 0..n-1.
pub fn circular_autocorrelation(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    if n.is_power_of_two() {
        let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft_in_place(&mut buf);
        for v in buf.iter_mut() {
            *v = Complex64::new(v.norm_sqr(), 0.0);
        }
        ifft_in_place(&mut buf);
        return buf.into_iter().map(|v| v.re).collect();
    }

    // linear autocorrelation on a padded buffer, folded to circular
    let m = (2 * n).next_power_of_two();
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (b, &v) in buf.iter_mut().zip(x.iter()) {
        *b = Complex64::new(v, 0.0);
    }
    fft_in_place(&mut buf);
    for v in buf.iter_mut() {
        *v = Complex64::new(v.norm_sqr(), 0.0);
    }
    ifft_in_place(&mut buf);
    let mut out = Vec::with_capacity(n);
    out.push(buf[0].re);
    for k in 1..n {
        out.push(buf[k].re + buf[n - k].re);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_circular(x: &[f64]) -> Vec<f64> {
        let n = x.len();
        (0..n)
            .map(|k| (0..n).map(|t| x[t] * x[(t + k) % n]).sum())
            .collect()
    }

    fn lcg_series(n: usize, seed: u64) -> Vec<f64> {
        let mut s = seed;
        (0..n)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect()
    }

    #[test]
    fn fft_round_trip() {
        let x = lcg_series(256, 7);
        let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft_in_place(&mut buf);
        ifft_in_place(&mut buf);
        for (a, b) in buf.iter().zip(x.iter()) {
            assert!((a.re - b).abs() < 1e-12);
            assert!(a.im.abs() < 1e-12);
        }
    }

    #[test]
    fn matches_naive_power_of_two() {
        let x = lcg_series(64, 1);
        let fast = circular_autocorrelation(&x);
        let slow = naive_circular(&x);
        for (a, b) in fast.iter().zip(slow.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn matches_naive_odd_length() {
        for n in [3usize, 17, 100, 129] {
            let x = lcg_series(n, n as u64);
            let fast = circular_autocorrelation(&x);
            let slow = naive_circular(&x);
            for (a, b) in fast.iter().zip(slow.iter()) {
                assert!((a - b).abs() < 1e-9, "n = {n}");
            }
        }
    }
}
