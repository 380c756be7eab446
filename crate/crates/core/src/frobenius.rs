//! Frobenius character polynomials `X_λ`.
//!
//! `χ_λ(g)` is the coefficient of `y_1^{λ_1+ℓ-1} ⋯ y_ℓ^{λ_ℓ}` in
//! `Δ(y) ∏_d P_d(y)^{X_d(g)}`. Setting `y_1 = 1` leaves the variables
//! `z_i = y_{i+1}` (`i = 1..k`, `k = ℓ - 1`) and the product
//!
//! ```text
//! Δ(z) · ∏_i (1 - z_i) · ∏_{d=1}^{λ_2+ℓ-2} (1 + P_d(z))^{X_d}
//! ```
//!
//! where `(1 + P_d)^{X_d} = Σ_j C(X_d, j) P_d^j`. Everything but `Δ(z)` is
//! expanded as a power series in `z` with polynomial coefficients, truncated
//! at total degree `|λ̲|`; `Δ(z)` is then applied as an alternating sum over
//! permutations, which only reads the needed coefficients. The result depends
//! on the socle `λ̲` alone and is cached by socle.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::characters::IrrDecomposition;
use crate::cyclepoly::{binomial, CharPolynomial};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// `X_λ` for a nonempty partition `λ`.
pub fn frobenius_poly(lambda: &Partition) -> Result<CharPolynomial> {
    if lambda.is_empty() {
        return Err(Error::InvalidPartition(
            "the Frobenius polynomial needs a nonempty partition".into(),
        ));
    }
    Ok(frobenius_poly_stable(&lambda.socle()))
}

/// `X_λ` for any `λ` with socle `socle`; the constant 1 for the empty socle.
pub fn frobenius_poly_stable(socle: &Partition) -> CharPolynomial {
    static CACHE: OnceLock<Mutex<HashMap<Partition, CharPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("frobenius cache poisoned").get(socle) {
        return p.clone();
    }
    let p = expand_reduced_product(socle);
    cache
        .lock()
        .expect("frobenius cache poisoned")
        .entry(socle.clone())
        .or_insert(p)
        .clone()
}

/// `X_{W} = Σ n_λ X_λ`
pub fn frobenius_poly_of_module(d: &IrrDecomposition) -> CharPolynomial {
    let mut out = CharPolynomial::zero();
    for (lambda, n) in d.factors() {
        out.add_scaled(
            &frobenius_poly_stable(&lambda.socle()),
            &BigRational::from_integer(BigInt::from(n)),
        );
    }
    out
}

type Series = HashMap<Vec<usize>, CharPolynomial>;

/// Box and total-degree truncation for the power series in `z_1..z_k`.
struct Truncation {
    caps: Vec<usize>,
    total: usize,
}

impl Truncation {
    fn admits(&self, exps: &[usize]) -> bool {
        exps.iter().zip(&self.caps).all(|(e, c)| e <= c) && exps.iter().sum::<usize>() <= self.total
    }

    /// `series · z_var^power`, truncated.
    fn shift(&self, series: &Series, var: usize, power: usize) -> Series {
        let mut out = Series::new();
        for (exps, c) in series {
            let mut e = exps.clone();
            e[var] += power;
            if self.admits(&e) {
                out.insert(e, c.clone());
            }
        }
        out
    }

    /// `series · P_d(z)`
    fn mul_power_sum(&self, series: &Series, d: usize) -> Series {
        let mut out = Series::new();
        for var in 0..self.caps.len() {
            for (e, c) in self.shift(series, var, d) {
                accumulate(&mut out, e, &c);
            }
        }
        out
    }
}

fn accumulate(series: &mut Series, exps: Vec<usize>, c: &CharPolynomial) {
    use std::collections::hash_map::Entry;
    match series.entry(exps) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c.clone());
            }
        }
        Entry::Occupied(mut o) => {
            o.get_mut().add_assign(c);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn expand_reduced_product(socle: &Partition) -> CharPolynomial {
    let k = socle.len();
    if k == 0 {
        return CharPolynomial::one();
    }
    let s = socle.parts();
    // exponent of z_i in a useful coefficient is s_i - i + π(i) ≤ s_i - i + k (1-based i)
    let trunc = Truncation {
        caps: (0..k).map(|i| s[i] + k - (i + 1)).collect(),
        total: socle.size(),
    };

    let mut series = Series::new();
    series.insert(vec![0; k], CharPolynomial::one());

    // ∏ (1 - z_i)
    for var in 0..k {
        let shifted = trunc.shift(&series, var, 1);
        for (e, c) in shifted {
            accumulate(&mut series, e, &c.neg());
        }
    }

    // ∏_{d ≤ λ_2 + ℓ - 2} Σ_j C(X_d, j) P_d^j, with λ_2 + ℓ - 2 = s_1 + k - 1
    let max_d = s[0] + k - 1;
    for d in 1..=max_d.min(trunc.total) {
        let mut acc = series.clone();
        let mut power = series;
        let mut j = 1;
        while j * d <= trunc.total {
            power = trunc.mul_power_sum(&power, d);
            if power.is_empty() {
                break;
            }
            let coeff = binomial(d, j);
            for (e, c) in &power {
                accumulate(&mut acc, e.clone(), &c.mul(&coeff));
            }
            j += 1;
        }
        series = acc;
    }

    // Δ(z) = Σ_π sgn(π) ∏_i z_i^{k - π(i)}; the target exponent of z_i is
    // s_i + k - i, so π contributes the coefficient at s_i - i + π(i).
    let mut out = CharPolynomial::zero();
    let mut used = vec![false; k];
    let mut exps = Vec::with_capacity(k);
    alternating_sum(s, 0, &mut used, &mut exps, 0, &series, &mut out);
    out
}

fn alternating_sum(
    socle: &[usize],
    row: usize,
    used: &mut [bool],
    exps: &mut Vec<usize>,
    inversions: usize,
    series: &Series,
    out: &mut CharPolynomial,
) {
    let k = socle.len();
    if row == k {
        if let Some(c) = series.get(exps.as_slice()) {
            if inversions.is_multiple_of(2) {
                out.add_assign(c);
            } else {
                out.add_assign(&c.neg());
            }
        }
        return;
    }
    for value in 1..=k {
        if used[value - 1] {
            continue;
        }
        // exponent s_i - i + π(i) with 1-based i = row + 1
        let Some(e) = (socle[row] + value).checked_sub(row + 1) else {
            continue;
        };
        let new_inversions = used[value..].iter().filter(|&&u| u).count();
        used[value - 1] = true;
        exps.push(e);
        alternating_sum(
            socle,
            row + 1,
            used,
            exps,
            inversions + new_inversions,
            series,
            out,
        );
        exps.pop();
        used[value - 1] = false;
    }
}
