//! Amplitudes are exact algebraic numbers (1/sqrt(2))^k (a + b*w + c*w^2 +
//! d*w^3) with w = exp(i*pi/4), so Clifford+T circuits never touch floating
//! point. This example walks through the arithmetic the engine relies on.
//!
//! Run with `cargo run --example exact_amplitudes`.

use taqv::AlgebraicAmplitude;

fn main() {
    let one = AlgebraicAmplitude::one();

    // Repeated Hadamard normalization: dividing by sqrt(2) only bumps the
    // exponent, the integer part stays exact.
    let mut h = one.clone();
    for _ in 0..100 {
        h = h.div_sqrt2();
    }
    println!("(1/sqrt(2))^100 = {h} = {}", h.pretty());
    println!("  squared magnitude: {:e}", h.norm_sqr().unwrap());

    // Eighth roots of unity close under multiplication: a T gate multiplies
    // by w, four T gates give w^4 = -1.
    let mut t = one.clone();
    for _ in 0..4 {
        t = t.mul_omega_pow(1);
    }
    println!("w^4 = {t} (T applied four times flips the sign)");

    // Exact cancellation: the HH=I identity hinges on
    // 1/2 + 1/2 = 1 and 1/2 - 1/2 = 0 with no epsilon anywhere.
    let half = one.div_sqrt2().div_sqrt2();
    println!("1/2 + 1/2 = {}", half.add(&half));
    println!("1/2 - 1/2 = {}", half.sub(&half));

    // Normal form: trailing factors of sqrt(2) in the coefficients are
    // pulled into the exponent, so equal values are structurally equal.
    let a = AlgebraicAmplitude::new(2, 0, 0, 0, 2); // 2 / sqrt(2)^2
    assert_eq!(a, one);
    println!("2*(1/sqrt(2))^2 normalizes to {a}");

    // The representation is closed under the full gate set; a typical
    // post-rotation amplitude mixes all four coordinates.
    let y = AlgebraicAmplitude::new(1, 2, -1, 3, 5);
    println!("sample amplitude {} = {}", y, y.pretty());
    println!("  as complex: {}", y.to_complex().unwrap());
}
