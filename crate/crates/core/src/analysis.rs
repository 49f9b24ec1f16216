//! Exhaustive error-class fractions, `β_j`, the asymptotic logical error
//! rate and the closed-form bounds for cylindrical and Möbius codes.
//!
//! A weight-`j` class `(i, ℓ)` holds the patterns with `i` Z factors, `ℓ` X
//! factors and `j − i − ℓ` Y factors. Its fraction `f_j(i, ℓ)` is the share
//! of those patterns the decoder fails on, and
//!
//! `1 − β_j = p⁻ʲ Σ_i C(j,i) p_Zⁱ Σ_ℓ C(j−i,ℓ) p_Xˡ p_Y^{j−i−ℓ} f_j(i,ℓ)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::channel::{Bias, ChannelModel, ExactChannel};
use crate::construction::Family;
use crate::decoder::{MwpmDecoder, TieBreak};
use crate::enumerators::closed_form_counts;
use crate::error::{Error, Result};
use crate::par;
use crate::stabilizer::{Pauli, PauliOperator};

/// Decode calls an exhaustive sweep may spend unless told otherwise.
pub const DEFAULT_DECODE_BUDGET: u128 = 10_000_000;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    binomial(n, k) as f64
}

/// Failure count of one error class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    /// Letters in display order, e.g. `"XZY"`.
    pub label: String,
    pub z: usize,
    pub x: usize,
    pub y: usize,
    pub failed: u64,
    pub total: u64,
}

impl ClassCount {
    pub fn fraction(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.failed as f64 / self.total as f64
        }
    }

    pub fn exact(&self) -> BigRational {
        if self.total == 0 {
            return BigRational::zero();
        }
        BigRational::new(BigInt::from(self.failed), BigInt::from(self.total))
    }
}

/// Per-class decoding failures for all weight-`j` patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FractionTable {
    pub code: String,
    pub n: usize,
    pub j: usize,
    pub tie_break: TieBreak,
    /// Classes as multisets over `X < Z < Y` in lexicographic order.
    pub classes: Vec<ClassCount>,
}

/// Class compositions `(z, x, y)` in display order: `XX, XZ, XY, ZZ, ZY, YY` for `j = 2`.
pub fn class_order(j: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for x in (0..=j).rev() {
        for z in (0..=j - x).rev() {
            out.push((z, x, j - x - z));
        }
    }
    out
}

fn class_label(z: usize, x: usize, y: usize) -> String {
    format!("{}{}{}", "X".repeat(x), "Z".repeat(z), "Y".repeat(y))
}

impl FractionTable {
    /// Class with `i` Z factors and `ℓ` X factors.
    pub fn get(&self, i: usize, l: usize) -> Option<&ClassCount> {
        self.classes.iter().find(|c| c.z == i && c.x == l)
    }

    pub fn by_label(&self, label: &str) -> Option<&ClassCount> {
        self.classes.iter().find(|c| c.label == label)
    }

    pub fn fraction(&self, i: usize, l: usize) -> f64 {
        self.get(i, l).map_or(0.0, ClassCount::fraction)
    }

    pub fn exact(&self, i: usize, l: usize) -> BigRational {
        self.get(i, l).map_or_else(BigRational::zero, ClassCount::exact)
    }

    pub fn total_failed(&self) -> u64 {
        self.classes.iter().map(|c| c.failed).sum()
    }

    pub fn total_patterns(&self) -> u64 {
        self.classes.iter().map(|c| c.total).sum()
    }

    /// One header row of class labels and one row of fractions. The code
    /// label contains commas and is quoted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("code,j");
        for c in &self.classes {
            out.push(',');
            out.push_str(&c.label);
        }
        out.push('\n');
        out.push_str(&format!("\"{}\",{}", self.code, self.j));
        for c in &self.classes {
            out.push_str(&format!(",{:.6}", c.fraction()));
        }
        out.push('\n');
        out
    }
}

/// Sweep configuration.
#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub budget: u128,
    pub workers: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_DECODE_BUDGET,
            workers: par::available_workers(),
        }
    }
}

/// All `j`-subsets of `0..n` in lexicographic order.
fn supports(n: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if j > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..j).collect();
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..j).rev().find(|&i| cur[i] < n - j + i) else {
            return out;
        };
        cur[pos] += 1;
        for i in pos + 1..j {
            cur[i] = cur[i - 1] + 1;
        }
    }
}

/// Decodes every weight-`j` Pauli pattern once and tallies failures by class.
pub fn exhaustive_fractions(decoder: &MwpmDecoder, j: usize, options: SweepOptions) -> Result<FractionTable> {
    let code = decoder.code();
    let n = code.n();
    let needed = binomial(n, j).saturating_mul(3u128.pow(j as u32));
    if needed > options.budget {
        return Err(Error::BudgetExceeded {
            what: "exhaustive decode calls C(n,j)·3^j",
            needed,
            limit: options.budget,
        });
    }
    let order = class_order(j);
    let index_of = |z: usize, x: usize| order.iter().position(|&(cz, cx, _)| cz == z && cx == x).expect("class");
    let mut lookup = vec![0usize; (j + 1) * (j + 1)];
    for &(z, x, _) in &order {
        lookup[z * (j + 1) + x] = index_of(z, x);
    }
    let sets = supports(n, j);
    let shard = 64usize;
    let shards = sets.len().div_ceil(shard);
    let letters = [Pauli::X, Pauli::Z, Pauli::Y];
    let assignments = 3usize.pow(j as u32);
    let zero = vec![(0u64, 0u64); order.len()];
    let tallies = par::map_reduce(
        options.workers,
        shards,
        Ok(zero.clone()),
        |s| -> Result<Vec<(u64, u64)>> {
            let mut session = decoder.session();
            let mut tally = zero.clone();
            let mut e = PauliOperator::identity(n);
            for support in &sets[s * shard..((s + 1) * shard).min(sets.len())] {
                for mut code_word in 0..assignments {
                    let (mut nz, mut nx) = (0, 0);
                    for &q in support {
                        let p = letters[code_word % 3];
                        code_word /= 3;
                        match p {
                            Pauli::X => nx += 1,
                            Pauli::Z => nz += 1,
                            _ => {}
                        }
                        e.set(q, p);
                    }
                    let out = session.decode_and_classify(&e)?;
                    let slot = &mut tally[lookup[nz * (j + 1) + nx]];
                    slot.1 += 1;
                    if !out.success {
                        slot.0 += 1;
                    }
                    for &q in support {
                        e.set(q, Pauli::I);
                    }
                }
            }
            Ok(tally)
        },
        |a, b| {
            let (mut a, b) = (a?, b?);
            for (x, y) in a.iter_mut().zip(b) {
                x.0 += y.0;
                x.1 += y.1;
            }
            Ok(a)
        },
    )?;
    let classes = order
        .iter()
        .zip(tallies)
        .map(|(&(z, x, y), (failed, total))| ClassCount {
            label: class_label(z, x, y),
            z,
            x,
            y,
            failed,
            total,
        })
        .collect();
    Ok(FractionTable {
        code: code.label(),
        n,
        j,
        tie_break: decoder.tie_break(),
        classes,
    })
}

/// `β_j` for a channel; independent of the overall scale of `p`.
pub fn beta(table: &FractionTable, channel: &ChannelModel) -> Result<f64> {
    let p = channel.p();
    if p <= 0.0 {
        return Err(Error::InvalidParameters("β is undefined for p = 0".into()));
    }
    let j = table.j;
    let (px, py, pz) = (channel.p_x / p, channel.p_y / p, channel.p_z / p);
    let mut fail = 0.0;
    for i in 0..=j {
        let mut inner = 0.0;
        for l in 0..=j - i {
            inner += binomial_f64(j - i, l) * px.powi(l as i32) * py.powi((j - i - l) as i32) * table.fraction(i, l);
        }
        fail += binomial_f64(j, i) * pz.powi(i as i32) * inner;
    }
    Ok(1.0 - fail)
}

fn rpow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

fn rint(v: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Exact `β_j` as a rational number.
pub fn beta_exact(table: &FractionTable, channel: &ExactChannel) -> Result<BigRational> {
    let p = channel.p();
    if p.is_zero() {
        return Err(Error::InvalidParameters("β is undefined for p = 0".into()));
    }
    let j = table.j;
    let (px, py, pz) = (&channel.p_x / &p, &channel.p_y / &p, &channel.p_z / &p);
    let mut fail = BigRational::zero();
    for i in 0..=j {
        let mut inner = BigRational::zero();
        for l in 0..=j - i {
            inner += rint(binomial(j - i, l)) * rpow(&px, l) * rpow(&py, j - i - l) * table.exact(i, l);
        }
        fail += rint(binomial(j, i)) * rpow(&pz, i) * inner;
    }
    Ok(BigRational::one() - fail)
}

/// Coefficients `c_0..c_j` of `(A+2)ʲ (1 − β_j(A)) = Σ c_k Aᵏ`, recovered by
/// interpolating exact `β_j` values at `A = 0, 1, …, j`.
pub fn bias_polynomial(table: &FractionTable) -> Result<Vec<BigRational>> {
    let j = table.j;
    let xs: Vec<BigRational> = (0..=j).map(|a| rint(a as u128)).collect();
    let ys: Vec<BigRational> = (0..=j)
        .map(|a| {
            let b = beta_exact(table, &ExactChannel::from_bias_integer(a as i64)?)?;
            Ok(rpow(&rint(a as u128 + 2), j) * (BigRational::one() - b))
        })
        .collect::<Result<_>>()?;
    Ok(solve_vandermonde(&xs, &ys))
}

/// Monomial coefficients of the interpolating polynomial through `(xs, ys)`.
fn solve_vandermonde(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let m = xs.len();
    let mut a: Vec<Vec<BigRational>> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let mut row: Vec<BigRational> = (0..m).map(|k| rpow(x, k)).collect();
            row.push(y.clone());
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| !a[r][col].is_zero()).expect("distinct nodes");
        a.swap(col, piv);
        let inv = BigRational::one() / &a[col][col];
        for k in col..=m {
            a[col][k] = &a[col][k] * &inv;
        }
        for r in 0..m {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..=m {
                    let sub = &f * &a[col][k];
                    a[r][k] -= sub;
                }
            }
        }
    }
    a.into_iter().map(|row| row[m].clone()).collect()
}

/// Evaluates the polynomial from [`bias_polynomial`] as `1 − β_j(A)`.
pub fn bias_polynomial_eval(coeffs: &[BigRational], a: &BigRational) -> BigRational {
    let j = coeffs.len() - 1;
    let num = coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * a + c);
    num / rpow(&(a + rint(2)), j)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if b != 0.0 => a / b,
        _ => f64::NAN,
    }
}

pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `(1 − β_{t+1})·C(n, t+1)·p^{t+1}`.
pub fn asymptotic_pl(n: usize, t: usize, beta_t1: f64, p: f64) -> f64 {
    (1.0 - beta_t1) * binomial_f64(n, t + 1) * p.powi(t as i32 + 1)
}

fn distance_split(family: Family, d: usize) -> Result<(usize, usize, f64, f64, f64)> {
    let c = closed_form_counts(family, d as u64)?;
    let t = (d - 1) / 2;
    let n = 2 * d * d - d;
    let low = binomial_f64(2 * t + 1, t + 1);
    let low1 = binomial_f64(2 * t + 2, t + 1);
    let z_term = low * c.lz_low as f64;
    let x_term = low * c.lx_low as f64 + low1 * c.lx_low1 as f64 / 2.0;
    Ok((n, t, z_term, x_term, binomial_f64(n, t + 1)))
}

/// Lower bound on `β_{t+1}` for a square cylindrical or Möbius code of distance `d`.
pub fn theorem1_beta_bound(family: Family, d: usize, channel: &ChannelModel) -> Result<f64> {
    let p = channel.p();
    if p <= 0.0 {
        return Err(Error::InvalidParameters("β is undefined for p = 0".into()));
    }
    let (_, t, z_term, x_term, total) = distance_split(family, d)?;
    let e = t as i32 + 1;
    let zy = ((channel.p_z + channel.p_y) / p).powi(e);
    let xy = ((channel.p_x + channel.p_y) / p).powi(e);
    Ok(1.0 - (z_term * zy + x_term * xy) / total)
}

/// Upper bound on the logical error rate at bias `A` and rate `p`.
pub fn corollary_pl_bound(family: Family, d: usize, bias: Bias, p: f64) -> Result<f64> {
    let (_, t, z_term, x_term, _) = distance_split(family, d)?;
    let e = t as i32 + 1;
    let (zw, xw) = match bias {
        Bias::Infinite => (1.0, 0.0),
        Bias::Finite(a) => (((a + 1.0) / (a + 2.0)).powi(e), (2.0 / (a + 2.0)).powi(e)),
    };
    Ok((z_term * zw + x_term * xw) * p.powi(e))
}

/// Number of qubits of the square cylindrical or Möbius code of distance `d`.
pub fn square_code_qubits(d: usize) -> usize {
    2 * d * d - d
}

/// A class whose failure count depends on the tie-break rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TieSensitiveClass {
    pub label: String,
    pub failed_default: u64,
    pub failed_alternative: u64,
    pub total: u64,
}

/// Classes whose counts differ between two tables of the same code and weight.
pub fn tie_sensitivity(default: &FractionTable, alternative: &FractionTable) -> Vec<TieSensitiveClass> {
    default
        .classes
        .iter()
        .zip(&alternative.classes)
        .filter(|(a, b)| a.failed != b.failed)
        .map(|(a, b)| TieSensitiveClass {
            label: a.label.clone(),
            failed_default: a.failed,
            failed_alternative: b.failed,
            total: a.total,
        })
        .collect()
}

/// Rounds a rational to `digits` decimals for display.
pub fn rational_display(r: &BigRational, digits: usize) -> String {
    let v = rational_to_f64(r);
    if r.is_negative() {
        format!("-{:.*}", digits, -v)
    } else {
        format!("{v:.digits$}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_order_matches_table_columns() {
        let labels: Vec<String> = class_order(2).into_iter().map(|(z, x, y)| class_label(z, x, y)).collect();
        assert_eq!(labels, ["XX", "XZ", "XY", "ZZ", "ZY", "YY"]);
        let labels: Vec<String> = class_order(3).into_iter().map(|(z, x, y)| class_label(z, x, y)).collect();
        assert_eq!(labels, ["XXX", "XXZ", "XXY", "XZZ", "XZY", "XYY", "ZZZ", "ZZY", "ZYY", "YYY"]);
    }

    #[test]
    fn supports_enumerate_all_subsets() {
        assert_eq!(supports(4, 2).len(), 6);
        assert_eq!(supports(5, 0), vec![Vec::<usize>::new()]);
        assert!(supports(2, 3).is_empty());
        assert_eq!(supports(45, 3).len() as u128, binomial(45, 3));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(15, 2), 105);
        assert_eq!(binomial(45, 6), 8_145_060);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn asymptotic_rate_vanishes_at_full_correction() {
        assert_eq!(asymptotic_pl(15, 1, 1.0, 0.01), 0.0);
    }

    #[test]
    fn vandermonde_recovers_polynomial() {
        let coeffs = [rint(3), rint(0), rint(5)];
        let xs: Vec<BigRational> = (0..3).map(|x| rint(x)).collect();
        let ys: Vec<BigRational> = xs.iter().map(|x| &coeffs[0] + &coeffs[2] * x * x).collect();
        assert_eq!(solve_vandermonde(&xs, &ys), coeffs.to_vec());
    }

    #[test]
    fn corollary_at_zero_rate() {
        assert_eq!(corollary_pl_bound(Family::Cylindrical, 3, Bias::Finite(1.0), 0.0).unwrap(), 0.0);
        assert!(corollary_pl_bound(Family::Surface, 3, Bias::Finite(1.0), 0.1).is_err());
    }
}
