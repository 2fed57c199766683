//! The closed-form balance bound for linearly recurrent structures.

/// Balance bound from a linear-recurrence constant `l`, a per-level
/// letter-balance bound `b`, and the structure constant `k` bounding
/// alphabet sizes, image lengths, and image-length ratios:
/// `2 (l + 1) (b k^4 + 2 k^3 + 1)`.
pub fn theoretical_balance_bound(l: f64, b: f64, k: f64) -> f64 {
    2.0 * (l + 1.0) * (b * k.powi(4) + 2.0 * k.powi(3) + 1.0)
}

/// Dominant root of x^3 - x^2 - x - 1 (the growth rate of the tribonacci
/// recurrence), by Newton iteration.
pub fn tribonacci_root() -> f64 {
    let mut x = 2.0f64;
    for _ in 0..64 {
        let f = x * x * x - x * x - x - 1.0;
        let df = 3.0 * x * x - 2.0 * x - 1.0;
        let next = x - f / df;
        if (next - x).abs() < 1e-15 {
            return next;
        }
        x = next;
    }
    x
}

/// Linear recurrence constant of the Tribonacci word: 2 r^2 + r + 1 with r
/// the tribonacci root, about 9.605.
pub fn tribonacci_linear_recurrence_constant() -> f64 {
    let r = tribonacci_root();
    2.0 * r * r + r + 1.0
}
