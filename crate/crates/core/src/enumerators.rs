//! Weight enumerators of the stabilizer group, its normalizer, and the
//! undetectable errors `L(z) = N(z) − S(z)`.
//!
//! `S(z)` and `N(z)` count group elements (mod phase) by weight. The
//! MacWilliams route works with the scaled pair `A(z) = 4ᵏ S(z)`,
//! `B(z) = 2ᵏ N(z)` so the transform can be applied literally:
//!
//! `B_w = 2⁻ⁿ Σ_ℓ Σ_s C(ℓ,s) C(n−ℓ, w−s) (−1)ˢ 3^{w−s} A_ℓ`
//!
//! The 3^{w−s} terms overflow 64 bits for moderate `n`, so the transform
//! runs on big integers and checks exact divisibility at the end.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::construction::Family;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::par;
use crate::stabilizer::CssCode;

/// Largest `n − k` the stabilizer sweep accepts.
pub const MAX_STABILIZER_EXPONENT: usize = 26;
/// Largest `n + k` the direct normalizer sweep accepts.
pub const MAX_NORMALIZER_EXPONENT: usize = 22;

/// Integer coefficients indexed by weight `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator {
    coefficients: Vec<u64>,
}

impl WeightEnumerator {
    pub fn new(coefficients: Vec<u64>) -> Self {
        Self { coefficients }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![0; n + 1])
    }

    /// Number of qubits (the highest weight index).
    pub fn n(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn get(&self, w: usize) -> u64 {
        self.coefficients.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.coefficients.iter().map(|&c| c as u128).sum()
    }

    /// Smallest `w > 0` with a nonzero coefficient.
    pub fn first_nonzero_above_zero(&self) -> Option<usize> {
        (1..self.coefficients.len()).find(|&w| self.coefficients[w] != 0)
    }

    /// Coefficient-wise `self · factor`.
    pub fn scaled(&self, factor: u64) -> Self {
        Self::new(self.coefficients.iter().map(|c| c * factor).collect())
    }

    /// Rows of `(weight, count)` for CSV output.
    pub fn to_csv(&self, header: bool) -> String {
        let mut out = String::new();
        if header {
            out.push_str("weight,count\n");
        }
        for (w, c) in self.coefficients.iter().enumerate() {
            out.push_str(&format!("{w},{c}\n"));
        }
        out
    }
}

/// Every element of the span of `basis`, visited in Gray-code order.
fn span_elements(basis: &[BitVec]) -> Vec<u128> {
    let gens: Vec<u128> = basis.iter().map(|b| b.to_u128().expect("n ≤ 128")).collect();
    let mut out = Vec::with_capacity(1usize << gens.len());
    let mut cur = 0u128;
    out.push(cur);
    for i in 1u64..(1u64 << gens.len()) {
        cur ^= gens[i.trailing_zeros() as usize];
        out.push(cur);
    }
    out
}

/// Histogram of `|x ∪ z|` over all pairs from two GF(2) spans.
fn product_weight_histogram(n: usize, xs: &[BitVec], zs: &[BitVec], workers: usize) -> Vec<u64> {
    let xs = span_elements(xs);
    let zs = span_elements(zs);
    let shard = 1024usize;
    let shards = xs.len().div_ceil(shard);
    par::map_reduce(
        workers,
        shards,
        vec![0u64; n + 1],
        |s| {
            let mut hist = vec![0u64; n + 1];
            for &x in &xs[s * shard..((s + 1) * shard).min(xs.len())] {
                for &z in &zs {
                    hist[(x | z).count_ones() as usize] += 1;
                }
            }
            hist
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )
}

fn check_size(code: &CssCode, exponent: usize, limit: usize, what: &'static str) -> Result<()> {
    if exponent > limit {
        return Err(Error::BudgetExceeded {
            what,
            needed: exponent as u128,
            limit: limit as u128,
        });
    }
    if code.n() > 128 {
        return Err(Error::BudgetExceeded {
            what: "enumeration qubit count",
            needed: code.n() as u128,
            limit: 128,
        });
    }
    Ok(())
}

/// `S(z)`: weights of all `2^{n−k}` stabilizer elements.
pub fn stabilizer_we(code: &CssCode) -> Result<WeightEnumerator> {
    stabilizer_we_with(code, MAX_STABILIZER_EXPONENT, par::available_workers())
}

pub fn stabilizer_we_with(code: &CssCode, max_exponent: usize, workers: usize) -> Result<WeightEnumerator> {
    check_size(code, code.n() - code.k(), max_exponent, "stabilizer enumeration exponent n-k")?;
    Ok(WeightEnumerator::new(product_weight_histogram(
        code.n(),
        code.x_stabilizers().basis(),
        code.z_stabilizers().basis(),
        workers,
    )))
}

/// `N(z)`: weights of all `2^{n+k}` normalizer elements, by direct sweep of
/// `ker H_Z × ker H_X`.
pub fn normalizer_we_direct(code: &CssCode) -> Result<WeightEnumerator> {
    normalizer_we_direct_with(code, MAX_NORMALIZER_EXPONENT, par::available_workers())
}

pub fn normalizer_we_direct_with(code: &CssCode, max_exponent: usize, workers: usize) -> Result<WeightEnumerator> {
    check_size(code, code.n() + code.k(), max_exponent, "normalizer enumeration exponent n+k")?;
    let kx = code.h_z().kernel_basis();
    let kz = code.h_x().kernel_basis();
    Ok(WeightEnumerator::new(product_weight_histogram(
        code.n(),
        kx.row_vecs(),
        kz.row_vecs(),
        workers,
    )))
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut c = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = BigInt::one();
        for j in 1..=i {
            c[i][j] = &c[i - 1][j - 1] + &c[i - 1][j];
        }
    }
    c
}

/// `2ⁿ · B` for input `A`: the MacWilliams sum before the final division.
pub fn macwilliams_unnormalized(a: &[BigInt], n: usize) -> Vec<BigInt> {
    assert_eq!(a.len(), n + 1, "enumerator length must be n + 1");
    let c = binomials(n);
    let pow3: Vec<BigInt> = (0..=n).scan(BigInt::one(), |p, _| {
        let cur = p.clone();
        *p *= 3;
        Some(cur)
    }).collect();
    (0..=n)
        .map(|w| {
            let mut total = BigInt::zero();
            for (l, a_l) in a.iter().enumerate() {
                if a_l.is_zero() {
                    continue;
                }
                let mut kraw = BigInt::zero();
                for s in 0..=w.min(l) {
                    if w - s > n - l {
                        continue;
                    }
                    let term = &c[l][s] * &c[n - l][w - s] * &pow3[w - s];
                    if s % 2 == 0 {
                        kraw += term;
                    } else {
                        kraw -= term;
                    }
                }
                total += kraw * a_l;
            }
            total
        })
        .collect()
}

/// Quantum MacWilliams transform `A ↦ B` with exact integer arithmetic.
/// Fails if any `B_w` is not a non-negative integer, which signals that `A`
/// was not scaled as `4ᵏ S(z)`.
pub fn macwilliams_transform(a: &WeightEnumerator, n: usize) -> Result<WeightEnumerator> {
    if a.coefficients.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: a.coefficients.len(),
        });
    }
    let big: Vec<BigInt> = a.coefficients.iter().map(|&c| BigInt::from(c)).collect();
    let scale = BigInt::one() << n;
    macwilliams_unnormalized(&big, n)
        .into_iter()
        .enumerate()
        .map(|(w, v)| {
            if !(&v % &scale).is_zero() {
                return Err(Error::Scaling(format!("B_{w} = {v}/2^{n} is not an integer")));
            }
            let b = v / &scale;
            if b.is_negative() {
                return Err(Error::Scaling(format!("B_{w} = {b} is negative")));
            }
            b.to_u64()
                .ok_or_else(|| Error::Scaling(format!("B_{w} = {b} does not fit in 64 bits")))
        })
        .collect::<Result<Vec<_>>>()
        .map(WeightEnumerator::new)
}

/// How [`undetectable_we`] obtains the normalizer enumerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumeratorPath {
    Direct,
    MacWilliams,
}

/// `N(z) = B(z)/2ᵏ` via the MacWilliams transform of `4ᵏ S(z)`.
pub fn normalizer_we_macwilliams(code: &CssCode, stabilizer: &WeightEnumerator) -> Result<WeightEnumerator> {
    let k = code.k() as u32;
    let a = stabilizer.scaled(4u64.pow(k));
    let b = macwilliams_transform(&a, code.n())?;
    let two_k = 2u64.pow(k);
    b.coefficients
        .iter()
        .enumerate()
        .map(|(w, &c)| {
            if c % two_k != 0 {
                Err(Error::Scaling(format!("B_{w} = {c} is not divisible by 2^k")))
            } else {
                Ok(c / two_k)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(WeightEnumerator::new)
}

/// `L = N − S`, rejecting negative coefficients.
pub fn difference(normalizer: &WeightEnumerator, stabilizer: &WeightEnumerator) -> Result<WeightEnumerator> {
    normalizer
        .coefficients
        .iter()
        .zip(&stabilizer.coefficients)
        .enumerate()
        .map(|(w, (&nw, &sw))| {
            nw.checked_sub(sw).ok_or(Error::NegativeCoefficient {
                weight: w,
                value: nw as i128 - sw as i128,
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(WeightEnumerator::new)
}

/// The three enumerators of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumerators {
    pub stabilizer: WeightEnumerator,
    pub normalizer: WeightEnumerator,
    pub undetectable: WeightEnumerator,
    pub path: EnumeratorPath,
}

/// `S`, `N` and `L` of a code along the chosen path.
pub fn enumerators(code: &CssCode, path: EnumeratorPath) -> Result<Enumerators> {
    let stabilizer = stabilizer_we(code)?;
    let normalizer = match path {
        EnumeratorPath::Direct => normalizer_we_direct(code)?,
        EnumeratorPath::MacWilliams => normalizer_we_macwilliams(code, &stabilizer)?,
    };
    let undetectable = difference(&normalizer, &stabilizer)?;
    Ok(Enumerators {
        stabilizer,
        normalizer,
        undetectable,
        path,
    })
}

/// `L(z)` through the MacWilliams route.
pub fn undetectable_we(code: &CssCode) -> Result<WeightEnumerator> {
    Ok(enumerators(code, EnumeratorPath::MacWilliams)?.undetectable)
}

/// Low-weight logical counts for square cylindrical and Möbius codes of
/// distance `d = 2t + 1`. Suffix `low` is weight `2t + 1`, `low1` is `2t + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormCounts {
    pub l_low: u64,
    pub l_low1: u64,
    pub lx_low: u64,
    pub lz_low: u64,
    pub lx_low1: u64,
    pub lz_low1: u64,
}

pub fn closed_form_counts(family: Family, d: u64) -> Result<ClosedFormCounts> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::InvalidParameters(format!("distance must be odd and ≥ 3, got {d}")));
    }
    match family {
        Family::Cylindrical => Ok(ClosedFormCounts {
            l_low: 2 * d,
            l_low1: 2 * d * d,
            lx_low: d,
            lz_low: d,
            lx_low1: 2 * d * (d - 1),
            lz_low1: 0,
        }),
        Family::Moebius => Ok(ClosedFormCounts {
            l_low: d + 1,
            l_low1: 3 * d * (d - 1),
            lx_low: d,
            lz_low: 1,
            lx_low1: 3 * d * (d - 1),
            lz_low1: 0,
        }),
        Family::Surface => Err(Error::InvalidParameters(
            "closed-form counts exist only for cylindrical and Möbius codes".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_qubit_transforms() {
        // Trivial code with stabilizer {I, Z}: S = N = 1 + z.
        let a = WeightEnumerator::new(vec![1, 1]);
        assert_eq!(macwilliams_transform(&a, 1).unwrap(), a);
        // No stabilizers, k = 1: A = 4·[1, 0], B = 2·N with N the full Pauli group [1, 3].
        let a = WeightEnumerator::new(vec![4, 0]);
        assert_eq!(macwilliams_transform(&a, 1).unwrap().coefficients(), &[2, 6]);
        // The full Pauli group as A transforms to [2, 0].
        let a = WeightEnumerator::new(vec![1, 3]);
        assert_eq!(macwilliams_transform(&a, 1).unwrap().coefficients(), &[2, 0]);
    }

    #[test]
    fn bad_scaling_is_reported() {
        let a = WeightEnumerator::new(vec![1, 0, 0]);
        assert!(matches!(macwilliams_transform(&a, 2), Err(Error::Scaling(_))));
        assert!(matches!(
            macwilliams_transform(&a, 3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn closed_forms() {
        let c = closed_form_counts(Family::Cylindrical, 3).unwrap();
        assert_eq!((c.l_low, c.l_low1), (6, 18));
        let m = closed_form_counts(Family::Moebius, 3).unwrap();
        assert_eq!((m.l_low, m.l_low1), (4, 18));
        let c5 = closed_form_counts(Family::Cylindrical, 5).unwrap();
        assert_eq!((c5.l_low, c5.l_low1), (10, 50));
        assert!(closed_form_counts(Family::Surface, 3).is_err());
        assert!(closed_form_counts(Family::Moebius, 4).is_err());
    }

    #[test]
    fn negative_difference_is_an_error() {
        let n = WeightEnumerator::new(vec![1, 0]);
        let s = WeightEnumerator::new(vec![1, 1]);
        assert_eq!(
            difference(&n, &s).unwrap_err(),
            Error::NegativeCoefficient { weight: 1, value: -1 }
        );
    }

    #[test]
    fn gray_code_visits_whole_span() {
        let basis = vec![
            BitVec::from_indices(4, &[0, 1]),
            BitVec::from_indices(4, &[1, 2]),
            BitVec::from_indices(4, &[3]),
        ];
        let mut elems = span_elements(&basis);
        elems.sort_unstable();
        elems.dedup();
        assert_eq!(elems.len(), 8);
    }

    proptest! {
        // Applying the unnormalized sum twice multiplies by 4ⁿ, i.e. the
        // normalized transform is an involution.
        #[test]
        fn transform_is_an_involution(n in 1usize..12, seed in proptest::collection::vec(0i64..1000, 12)) {
            let a: Vec<BigInt> = seed[..=n.min(11)].iter().map(|&x| BigInt::from(x)).collect();
            let n = a.len() - 1;
            let once = macwilliams_unnormalized(&a, n);
            let twice = macwilliams_unnormalized(&once, n);
            let scale = BigInt::one() << (2 * n);
            for (x, y) in a.iter().zip(&twice) {
                prop_assert_eq!(&(x * &scale), y);
            }
        }
    }
}
