//! Decibel/linear power-ratio conversions.

#[allow(unused_imports)]
use num_traits::Float;

/// 10·log10(x).
pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// 10^(x/10).
pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for &x in &[-63.5, -45.95, 0.0, 3.0] {
            assert!((to_db(from_db(x)) - x).abs() < 1e-12);
        }
        assert_eq!(to_db(1.0), 0.0);
        assert!((from_db(10.0) - 10.0).abs() < 1e-12);
    }
}
