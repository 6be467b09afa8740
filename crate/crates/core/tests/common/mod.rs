//! Shared fixtures for the integration tests.

#![allow(dead_code)]

use gentrig::RationalPolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;

/// `t_n(x)`, `n = 0..=5`, as printed in the reference tables.
pub const T_TABLE: [&str; 6] = [
    "x",
    "x^3 + 6x^2 + 6x",
    "x^5 + 20x^4 + 110x^3 + 210x^2 + 120x",
    "x^7 + 42x^6 + 560x^5 + 3248x^4 + 8946x^3 + 11256x^2 + 5040x",
    "x^9 + 72x^8 + 1764x^7 + 20580x^6 + 129834x^5 + 463050x^4 + 920184x^3 + 930960x^2 + 362880x",
    "x^11 + 110x^10 + 4290x^9 + 83688x^8 + 939774x^7 + 6494092x^6 + 28332282x^5 + 77504328x^4 \
     + 127178832x^3 + 112289760x^2 + 39916800x",
];

/// `c_n(x)`, `n = 0..=5`.
pub const C_TABLE: [&str; 6] = [
    "x",
    "x^3 + 9x^2 + 6x",
    "x^5 + 80/3x^4 + 160x^3 + 250x^2 + 120x",
    "x^7 + 791/15x^6 + 791x^5 + 4529x^4 + 11088x^3 + 12348x^2 + 5040x",
    "x^9 + 3048/35x^8 + 11996/5x^7 + 144924/5x^6 + 176016x^5 + 578466x^4 + 1052520x^3 + 986256x^2 + 362880x",
    "x^11 + 40843/315x^10 + 356092/63x^9 + 2439712/21x^8 + 3907442/3x^7 + 8635462x^6 + 35393952x^5 \
     + 271612924/3x^4 + 139585512x^3 + 116915040x^2 + 39916800x",
];

/// Parses sums of terms `p/qx^k`, `px^k`, `x^k`, `px`, `x` or `p`.
pub fn parse_poly(s: &str) -> RationalPolynomial {
    let mut coeffs: Vec<BigRational> = Vec::new();
    for term in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (num, power) = match term.find('x') {
            None => (term, 0),
            Some(i) => {
                let rest = &term[i + 1..];
                let k = if rest.is_empty() { 1 } else { rest.trim_start_matches('^').parse().unwrap() };
                (&term[..i], k)
            }
        };
        let c = if num.is_empty() {
            BigRational::from_integer(BigInt::from(1))
        } else if let Some((p, q)) = num.split_once('/') {
            BigRational::new(p.parse().unwrap(), q.parse().unwrap())
        } else {
            BigRational::from_integer(num.parse().unwrap())
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigRational::from_integer(BigInt::from(0)));
        }
        coeffs[power] += c;
    }
    RationalPolynomial::new(coeffs)
}
