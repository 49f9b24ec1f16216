//! Surface, cylindrical and Möbius CSS codes from repetition-code complexes.
//!
//! A classical check matrix `H` is read as the two-term complex `C₁ → C₀`.
//! Taking the tensor product of `C` with the dual of a second complex `F`
//! gives a three-term complex whose two boundary maps are `H_Zᵀ` and `H_X`.
//! The Möbius variant twists the vertical differential at a single row of
//! `C` by the reversal permutations of the fiber.
//!
//! Indices are 0-based here. Human-facing printouts add one, so qubit `q`
//! prints as `q + 1` and generator rows are numbered X checks first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::stabilizer::{CssCode, DEFAULT_DISTANCE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Surface,
    Cylindrical,
    Moebius,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Surface, Family::Cylindrical, Family::Moebius];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Surface => "surface",
            Family::Cylindrical => "cylindrical",
            Family::Moebius => "moebius",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "surface" => Ok(Family::Surface),
            "cylindrical" | "cylinder" | "cyl" => Ok(Family::Cylindrical),
            "moebius" | "mobius" | "möbius" | "mob" => Ok(Family::Moebius),
            other => Err(Error::InvalidParameters(format!("unknown code family {other:?}"))),
        }
    }
}

/// Two-term chain complex `C₁ --∂₁--> C₀` with `∂₁` a parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermComplex {
    boundary: BinaryMatrix,
}

impl TwoTermComplex {
    pub fn new(boundary: BinaryMatrix) -> Self {
        Self { boundary }
    }

    pub fn repetition(l: usize, full_rank: bool) -> Result<Self> {
        repetition_check_matrix(l, full_rank).map(Self::new)
    }

    pub fn boundary(&self) -> &BinaryMatrix {
        &self.boundary
    }

    /// `dim C₁`.
    pub fn n1(&self) -> usize {
        self.boundary.cols()
    }

    /// `dim C₀`.
    pub fn n0(&self) -> usize {
        self.boundary.rows()
    }

    /// `(dim H₁, dim H₀)` from rank–nullity.
    pub fn homology_dims(&self) -> (usize, usize) {
        let rank = self.boundary.rank();
        (self.n1() - rank, self.n0() - rank)
    }

    /// The dual complex read as a chain complex: `F₀ --∂ᵀ--> F₁`.
    pub fn dual(&self) -> Self {
        Self::new(self.boundary.transpose())
    }
}

/// Pair of CSS check matrices with the construction that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssPair {
    pub h_x: BinaryMatrix,
    pub h_z: BinaryMatrix,
    pub family: Family,
    pub lc: usize,
    pub lf: usize,
}

impl CssPair {
    /// Checks `H_X · H_Zᵀ = 0` and that every column of both matrices has weight 1 or 2.
    pub fn new(h_x: BinaryMatrix, h_z: BinaryMatrix, family: Family, lc: usize, lf: usize) -> Result<Self> {
        if h_x.cols() != h_z.cols() {
            return Err(Error::InvalidCode(format!(
                "H_X has {} columns but H_Z has {}",
                h_x.cols(),
                h_z.cols()
            )));
        }
        if !h_x.mul(&h_z.transpose())?.is_zero() {
            return Err(Error::InvalidCode("H_X · H_Zᵀ ≠ 0".into()));
        }
        for (name, h) in [("H_X", &h_x), ("H_Z", &h_z)] {
            if let Some((c, w)) = h.column_weights().into_iter().enumerate().find(|(_, w)| !(1..=2).contains(w)) {
                return Err(Error::InvalidCode(format!("{name} column {c} has weight {w}")));
            }
        }
        Ok(Self {
            h_x,
            h_z,
            family,
            lc,
            lf,
        })
    }

    pub fn n(&self) -> usize {
        self.h_x.cols()
    }

    pub fn r_x(&self) -> usize {
        self.h_x.rows()
    }

    pub fn r_z(&self) -> usize {
        self.h_z.rows()
    }
}

/// Circulant repetition check matrix with first row `1100…0`, each further
/// row the cyclic right shift of the previous one. With `full_rank` the
/// last (dependent) row is dropped.
pub fn repetition_check_matrix(l: usize, full_rank: bool) -> Result<BinaryMatrix> {
    if l < 2 {
        return Err(Error::InvalidParameters(format!("repetition length must be ≥ 2, got {l}")));
    }
    let rows = if full_rank { l - 1 } else { l };
    let mut h = BinaryMatrix::zeros(rows, l);
    for r in 0..rows {
        h.set(r, r, true);
        h.set(r, (r + 1) % l, true);
    }
    Ok(h)
}

/// `n × n` matrix with ones on the anti-diagonal.
fn reversal(n: usize) -> BinaryMatrix {
    let mut p = BinaryMatrix::zeros(n, n);
    for i in 0..n {
        p.set(i, n - 1 - i, true);
    }
    p
}

/// `n × n` matrix with a single one at `(x, x)`.
fn selector(n: usize, x: usize) -> BinaryMatrix {
    let mut s = BinaryMatrix::zeros(n, n);
    s.set(x, x, true);
    s
}

/// Hypergraph product of `C` with the dual of `F`:
/// `H_X = (I_{r_c} ⊗ H_Fᵀ | H_C ⊗ I_{n_f})`,
/// `H_Zᵀ = (H_C ⊗ I_{r_f} ; I_{n_c} ⊗ H_Fᵀ)`.
pub fn hypergraph_product(c: &TwoTermComplex, f: &TwoTermComplex, family: Family, lc: usize, lf: usize) -> Result<CssPair> {
    let (h_c, h_f) = (c.boundary(), f.boundary());
    let (r_c, n_c) = (h_c.rows(), h_c.cols());
    let (r_f, n_f) = (h_f.rows(), h_f.cols());
    let h_ft = h_f.transpose();

    let h_x = BinaryMatrix::identity(r_c)
        .kron(&h_ft)
        .hstack(&h_c.kron(&BinaryMatrix::identity(n_f)))?;
    let h_zt = h_c
        .kron(&BinaryMatrix::identity(r_f))
        .vstack(&BinaryMatrix::identity(n_c).kron(&h_ft))?;
    CssPair::new(h_x, h_zt.transpose(), family, lc, lf)
}

/// Möbius pair: the cylindrical construction with the vertical differentials
/// twisted at the central row `(L_c − 1)/2` of `H_C`:
///
/// `∂φ₀ = (H_C − S) ⊗ I_{n_f} + S ⊗ P_site`,
/// `∂φ₁ = (H_C − S) ⊗ I_{r_f} + S ⊗ P_plaq`.
pub fn mobius_pair(lc: usize, lf: usize) -> Result<CssPair> {
    if lc < 3 || lc % 2 == 0 {
        return Err(Error::InvalidParameters(format!(
            "Möbius construction needs odd L_c ≥ 3, got {lc}"
        )));
    }
    if lf < 2 {
        return Err(Error::InvalidParameters(format!("L_f must be ≥ 2, got {lf}")));
    }
    let h_c = repetition_check_matrix(lc, false)?;
    let h_f = repetition_check_matrix(lf, true)?;
    let (r_c, n_c) = (h_c.rows(), h_c.cols());
    let (r_f, n_f) = (h_f.rows(), h_f.cols());
    let h_ft = h_f.transpose();

    let s = selector(lc, (lc - 1) / 2);
    let untwisted = h_c.add(&s)?;
    let p_site = reversal(n_f);
    let p_plaq = reversal(r_f);

    let d_phi0 = untwisted
        .kron(&BinaryMatrix::identity(n_f))
        .add(&s.kron(&p_site))?;
    let d_phi1 = untwisted
        .kron(&BinaryMatrix::identity(r_f))
        .add(&s.kron(&p_plaq))?;

    let h_x = BinaryMatrix::identity(r_c).kron(&h_ft).hstack(&d_phi0)?;
    let h_zt = d_phi1.vstack(&BinaryMatrix::identity(n_c).kron(&h_ft))?;
    CssPair::new(h_x, h_zt.transpose(), Family::Moebius, lc, lf)
}

/// Check matrices for a family without deriving the full code.
pub fn css_pair(family: Family, lc: usize, lf: usize) -> Result<CssPair> {
    match family {
        Family::Surface => hypergraph_product(
            &TwoTermComplex::repetition(lc, true)?,
            &TwoTermComplex::repetition(lf, true)?,
            family,
            lc,
            lf,
        ),
        Family::Cylindrical => hypergraph_product(
            &TwoTermComplex::repetition(lc, false)?,
            &TwoTermComplex::repetition(lf, true)?,
            family,
            lc,
            lf,
        ),
        Family::Moebius => mobius_pair(lc, lf),
    }
}

/// Builds and fully derives a code. Distances are searched exhaustively up to
/// weight [`DEFAULT_DISTANCE_CAP`]; beyond that they come from the
/// construction and are marked unverified.
pub fn build(family: Family, lc: usize, lf: usize) -> Result<CssCode> {
    build_with_cap(family, lc, lf, DEFAULT_DISTANCE_CAP)
}

pub fn build_with_cap(family: Family, lc: usize, lf: usize, w_max: usize) -> Result<CssCode> {
    CssCode::with_distance_cap(css_pair(family, lc, lf)?, w_max)
}

/// The input complexes `(C, F)` a family is built from.
pub fn input_complexes(family: Family, lc: usize, lf: usize) -> Result<(TwoTermComplex, TwoTermComplex)> {
    let c = TwoTermComplex::repetition(lc, family == Family::Surface)?;
    let f = TwoTermComplex::repetition(lf, true)?;
    Ok((c, f))
}

/// Logical qubit count of `C ⊗ D` from the homology of the factors:
/// `k = dim H₀(C)·dim H₁(D) + dim H₁(C)·dim H₀(D)`.
pub fn kunneth_k(c: &TwoTermComplex, d: &TwoTermComplex) -> usize {
    let (c1, c0) = c.homology_dims();
    let (d1, d0) = d.homology_dims();
    c0 * d1 + c1 * d0
}
