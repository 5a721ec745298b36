//! The Γ-AG-groupoid on the integers with `Γ = {1, 2, 3}` and
//! `a β b = b − β − a − β − z` for a fixed integer `z`.
//!
//! The carrier is infinite, so this is only ever checked by sampling.

/// `a β b` with the constant `z`.
pub fn integer_op_eval(a: i64, beta: i64, b: i64, z: i64) -> i64 {
    b - beta - a - beta - z
}

/// Both sides of the left invertive law, `(a β b) γ c` and `(c β b) γ a`.
pub fn left_invertive_sides(a: i64, b: i64, c: i64, beta: i64, gamma: i64, z: i64) -> (i64, i64) {
    let lhs = integer_op_eval(integer_op_eval(a, beta, b, z), gamma, c, z);
    let rhs = integer_op_eval(integer_op_eval(c, beta, b, z), gamma, a, z);
    (lhs, rhs)
}

/// Closed form shared by both sides: `c − b + 2β + a − 2γ`.
pub fn left_invertive_closed_form(a: i64, b: i64, c: i64, beta: i64, gamma: i64) -> i64 {
    c - b + 2 * beta + a - 2 * gamma
}
