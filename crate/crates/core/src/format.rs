//! Rendering of probabilities as reduced fractions.

/// Largest denominator tried when recognising a fraction.
pub const MAX_DENOMINATOR: u64 = 1_000_000;
/// Distance within which a value is considered equal to `p/q`.
pub const FRACTION_TOLERANCE: f64 = 1e-9;

/// Best rational `p/q` (reduced, `q ≤ MAX_DENOMINATOR`) within
/// [`FRACTION_TOLERANCE`] of `x`, found from the continued-fraction
/// convergents of `x`.
pub fn approximate_fraction(x: f64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let target = x.abs();
    // Convergents h_k / k_k with the standard recurrences.
    let (mut h_prev, mut h) = (1u64, target.floor() as u64);
    let (mut k_prev, mut k) = (0u64, 1u64);
    let mut rest = target - target.floor();
    loop {
        if (target - h as f64 / k as f64).abs() <= FRACTION_TOLERANCE {
            let p = h as i64;
            return Some((if negative { -p } else { p }, k));
        }
        if rest < 1e-15 {
            return None;
        }
        let inv = 1.0 / rest;
        let a = inv.floor() as u64;
        rest = inv - inv.floor();
        let k_next = a.checked_mul(k)?.checked_add(k_prev)?;
        if k_next > MAX_DENOMINATOR {
            return None;
        }
        let h_next = a.checked_mul(h)?.checked_add(h_prev)?;
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
    }
}

/// Formats `x` as `p/q` (or an integer) when it is recognised as a
/// fraction, otherwise as a shortest round-trip decimal. `decimal` forces
/// the decimal form.
pub fn format_probability(x: f64, decimal: bool) -> String {
    if !decimal {
        if let Some((p, q)) = approximate_fraction(x) {
            return if q == 1 {
                p.to_string()
            } else {
                format!("{p}/{q}")
            };
        }
    }
    format_decimal(x)
}

pub fn format_decimal(x: f64) -> String {
    // `-0` would otherwise leak into output for negated zero rewards.
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}
