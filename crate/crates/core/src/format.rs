//! Deterministic float rendering for machine-readable output.

use num_complex::Complex64;

/// Rounds to 15 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub fn complex_json(z: Complex64) -> serde_json::Value {
    serde_json::json!({ "re": round_sig(z.re), "im": round_sig(z.im) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(-0.0), 0.0);
        assert_eq!(round_sig(1.0 / 3.0).to_string(), "0.333333333333333");
        assert_eq!(round_sig(2.0), 2.0);
        assert_eq!(round_sig(1e-20 / 3.0), 3.33333333333333e-21);
    }
}
