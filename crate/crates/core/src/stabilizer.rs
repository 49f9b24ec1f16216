//! Symplectic Pauli operators and derived CSS code data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::construction::{CssPair, Family};
use crate::error::{Error, Result};
use crate::gf2::{invert, BinaryMatrix, BitVec, RowSpace};

/// Exhaustive distance searches stop at this weight unless told otherwise.
pub const DEFAULT_DISTANCE_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// An `n`-qubit Pauli operator up to phase, stored as `(x | z)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_parts(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self { x, z })
    }

    pub fn x_type(x: BitVec) -> Self {
        let z = BitVec::zeros(x.len());
        Self { x, z }
    }

    pub fn z_type(z: BitVec) -> Self {
        let x = BitVec::zeros(z.len());
        Self { x, z }
    }

    /// Single-qubit operator `p` on qubit `q` (0-based).
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut op = Self::identity(n);
        op.set(q, p);
        op
    }

    /// Parses the 1-based product notation used in printouts, e.g.
    /// `"X1 X7 X10"`, `"X1Y7Y10Z13"` or `"I"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut op = Self::identity(n);
        let mut chars = text.chars().filter(|c| !c.is_whitespace() && *c != '_').peekable();
        while let Some(c) = chars.next() {
            let p = match c.to_ascii_uppercase() {
                'I' if chars.peek().is_none_or(|c| !c.is_ascii_digit()) => continue,
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => return Err(Error::Parse(format!("unexpected {other:?} in Pauli string {text:?}"))),
            };
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let q: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("missing qubit index after {c:?} in {text:?}")))?;
            if q == 0 || q > n {
                return Err(Error::Parse(format!("qubit {q} out of range 1..={n}")));
            }
            let (px, pz) = p.bits();
            if px {
                op.x.flip(q - 1);
            }
            if pz {
                op.z.flip(q - 1);
            }
        }
        Ok(op)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_part(&self) -> &BitVec {
        &self.x
    }

    pub fn z_part(&self) -> &BitVec {
        &self.z
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Product up to phase.
    pub fn mul(&self, other: &PauliOperator) -> PauliOperator {
        PauliOperator {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }

    pub fn mul_assign(&mut self, other: &PauliOperator) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// `⟨x_P, z_Q⟩ + ⟨z_P, x_Q⟩ = 0 (mod 2)`.
    pub fn commutes_with(&self, other: &PauliOperator) -> bool {
        self.x.dot(&other.z) == self.z.dot(&other.x)
    }

    /// Counts of `(X, Y, Z)` factors.
    pub fn composition(&self) -> (usize, usize, usize) {
        let (mut nx, mut ny, mut nz) = (0, 0, 0);
        for q in self.x.or(&self.z).iter_ones() {
            match self.get(q) {
                Pauli::X => nx += 1,
                Pauli::Y => ny += 1,
                Pauli::Z => nz += 1,
                Pauli::I => {}
            }
        }
        (nx, ny, nz)
    }
}

/// Symplectic commutation test.
pub fn symplectic_commutes(p: &PauliOperator, q: &PauliOperator) -> Result<bool> {
    if p.n() != q.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            found: q.n(),
        });
    }
    Ok(p.commutes_with(q))
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("I");
        }
        let mut first = true;
        for q in self.x.or(&self.z).iter_ones() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}{}", self.get(q).letter(), q + 1)?;
        }
        Ok(())
    }
}

/// Serialized in 1-based notation, e.g. `"X1 Y7 Z13"`.
impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualClass {
    Stabilizer,
    LogicalX,
    LogicalZ,
    LogicalY,
    Detectable,
}

impl ResidualClass {
    pub fn is_success(self) -> bool {
        self == ResidualClass::Stabilizer
    }
}

/// Which logical type a distance search looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    /// X-type logicals: vectors in `ker H_Z` outside `rowspace H_X`.
    X,
    /// Z-type logicals: vectors in `ker H_X` outside `rowspace H_Z`.
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance {
    pub value: usize,
    /// False when the value comes from the construction rather than a search.
    pub verified: bool,
}

/// A CSS code with its derived parameters and a symplectic logical basis.
#[derive(Clone, Debug)]
pub struct CssCode {
    pair: CssPair,
    n: usize,
    k: usize,
    d_x: Option<Distance>,
    d_z: Option<Distance>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
    x_stabilizers: RowSpace,
    z_stabilizers: RowSpace,
}

impl CssCode {
    /// Derives `k` and the logical basis; distances are left unset.
    pub fn from_pair(pair: CssPair) -> Result<Self> {
        let n = pair.n();
        let x_stabilizers = RowSpace::new(&pair.h_x);
        let z_stabilizers = RowSpace::new(&pair.h_z);
        let k = n - x_stabilizers.dim() - z_stabilizers.dim();
        let mut code = Self {
            pair,
            n,
            k,
            d_x: None,
            d_z: None,
            logical_x: Vec::new(),
            logical_z: Vec::new(),
            x_stabilizers,
            z_stabilizers,
        };
        if k > 0 {
            let (lx, lz) = logical_basis(&code)?;
            code.logical_x = lx;
            code.logical_z = lz;
        }
        Ok(code)
    }

    /// Like [`CssCode::from_pair`] and then searches both distances up to `w_max`.
    /// For `k = 1` the basis is replaced by the minimum-weight representatives found.
    pub fn with_distance_cap(pair: CssPair, w_max: usize) -> Result<Self> {
        let mut code = Self::from_pair(pair)?;
        if code.k == 0 {
            return Ok(code);
        }
        let found_x = min_distance_witness(&code, Sector::X, w_max);
        let found_z = min_distance_witness(&code, Sector::Z, w_max);
        let (fx, fz) = code.formula_distances();
        code.d_x = Some(match &found_x {
            Some((w, _)) => Distance { value: *w, verified: true },
            None => Distance { value: fx, verified: false },
        });
        code.d_z = Some(match &found_z {
            Some((w, _)) => Distance { value: *w, verified: true },
            None => Distance { value: fz, verified: false },
        });
        if code.k == 1 {
            if let (Some((_, x)), Some((_, z))) = (found_x, found_z) {
                code.logical_x = vec![PauliOperator::x_type(x)];
                code.logical_z = vec![PauliOperator::z_type(z)];
            }
        }
        Ok(code)
    }

    /// `(d_X, d_Z)` the construction predicts: X logicals run along the
    /// `L_f` direction and Z logicals along `L_c`.
    pub fn formula_distances(&self) -> (usize, usize) {
        (self.pair.lf, self.pair.lc)
    }

    pub fn pair(&self) -> &CssPair {
        &self.pair
    }

    pub fn family(&self) -> Family {
        self.pair.family
    }

    pub fn h_x(&self) -> &BinaryMatrix {
        &self.pair.h_x
    }

    pub fn h_z(&self) -> &BinaryMatrix {
        &self.pair.h_z
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r_x(&self) -> usize {
        self.pair.r_x()
    }

    pub fn r_z(&self) -> usize {
        self.pair.r_z()
    }

    pub fn d_x(&self) -> Option<Distance> {
        self.d_x
    }

    pub fn d_z(&self) -> Option<Distance> {
        self.d_z
    }

    /// `min(d_X, d_Z)` when both are known.
    pub fn distance(&self) -> Option<usize> {
        Some(self.d_x?.value.min(self.d_z?.value))
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    pub fn x_stabilizers(&self) -> &RowSpace {
        &self.x_stabilizers
    }

    pub fn z_stabilizers(&self) -> &RowSpace {
        &self.z_stabilizers
    }

    /// Generators in printout order: X checks first, then Z checks.
    pub fn generators(&self) -> Vec<PauliOperator> {
        let xs = self.pair.h_x.row_vecs().iter().cloned().map(PauliOperator::x_type);
        let zs = self.pair.h_z.row_vecs().iter().cloned().map(PauliOperator::z_type);
        xs.chain(zs).collect()
    }

    /// `[[n,k,d]]` or `[[n,k,d_X/d_Z]]`.
    pub fn label(&self) -> String {
        match (self.d_x, self.d_z) {
            (Some(x), Some(z)) if x.value == z.value => format!("[[{},{},{}]]", self.n, self.k, x.value),
            (Some(x), Some(z)) => {
                let (lo, hi) = (x.value.min(z.value), x.value.max(z.value));
                format!("[[{},{},{}/{}]]", self.n, self.k, lo, hi)
            }
            _ => format!("[[{},{}]]", self.n, self.k),
        }
    }
}

/// Syndrome bits: `H_X · z` for the first `r_x` positions, `H_Z · x` for the rest.
pub fn syndrome(code: &CssCode, e: &PauliOperator) -> Result<BitVec> {
    if e.n() != code.n {
        return Err(Error::DimensionMismatch {
            expected: code.n,
            found: e.n(),
        });
    }
    let sx = code.pair.h_x.mul_vec(e.z_part())?;
    let sz = code.pair.h_z.mul_vec(e.x_part())?;
    Ok(sx.concat(&sz))
}

/// Extends `stabilizers` by vectors of `kernel` until it spans the kernel;
/// the added vectors represent the nontrivial cosets.
fn coset_representatives(stabilizers: &RowSpace, kernel: &BinaryMatrix) -> Vec<BitVec> {
    let mut span = stabilizers.clone();
    kernel.row_vecs().iter().filter(|v| span.insert(v)).cloned().collect()
}

/// `k` symplectically paired logical operators: `X̄ᵢ` anticommutes with `Z̄ⱼ` iff `i = j`.
pub fn logical_basis(code: &CssCode) -> Result<(Vec<PauliOperator>, Vec<PauliOperator>)> {
    if code.k == 0 {
        return Err(Error::NoLogicals);
    }
    let xs = coset_representatives(&code.x_stabilizers, &code.pair.h_z.kernel_basis());
    let zs = coset_representatives(&code.z_stabilizers, &code.pair.h_x.kernel_basis());
    debug_assert_eq!(xs.len(), code.k);
    debug_assert_eq!(zs.len(), code.k);

    let k = code.k;
    let mut pairing = BinaryMatrix::zeros(k, k);
    for (i, x) in xs.iter().enumerate() {
        for (j, z) in zs.iter().enumerate() {
            pairing.set(i, j, x.dot(z));
        }
    }
    let inv = invert(&pairing).ok_or_else(|| Error::InvalidCode("logical pairing matrix is singular".into()))?;
    // Z'ⱼ = Σₘ (M⁻¹)ₘⱼ Zₘ makes ⟨Xᵢ, Z'ⱼ⟩ = δᵢⱼ.
    let paired_z = (0..k)
        .map(|j| {
            let mut acc = BitVec::zeros(code.n);
            for (m, z) in zs.iter().enumerate() {
                if inv.get(m, j) {
                    acc.xor_assign(z);
                }
            }
            PauliOperator::z_type(acc)
        })
        .collect();
    Ok((xs.into_iter().map(PauliOperator::x_type).collect(), paired_z))
}

/// Classifies a residual `error · correction`.
pub fn classify_residual(code: &CssCode, r: &PauliOperator) -> Result<ResidualClass> {
    if !syndrome(code, r)?.is_zero() {
        return Ok(ResidualClass::Detectable);
    }
    if code.x_stabilizers.contains(r.x_part()) && code.z_stabilizers.contains(r.z_part()) {
        return Ok(ResidualClass::Stabilizer);
    }
    let flips_z = code.logical_z.iter().any(|l| !l.commutes_with(r));
    let flips_x = code.logical_x.iter().any(|l| !l.commutes_with(r));
    Ok(match (flips_z, flips_x) {
        (true, true) => ResidualClass::LogicalY,
        (true, false) => ResidualClass::LogicalX,
        (false, true) => ResidualClass::LogicalZ,
        // Commutes with a full logical basis yet outside the stabilizer: impossible for a valid basis.
        (false, false) => return Err(Error::InvalidCode("normalizer element commuting with all logicals".into())),
    })
}

/// Column data for a sector search: each qubit's contribution to the
/// opposing syndrome and to the parity against the opposite logicals.
struct SectorColumns {
    words: usize,
    syndrome: Vec<Vec<u64>>,
    parity: Vec<u64>,
    n: usize,
}

impl SectorColumns {
    fn new(code: &CssCode, sector: Sector) -> Self {
        let (checks, opposite): (&BinaryMatrix, Vec<&BitVec>) = match sector {
            Sector::X => (&code.pair.h_z, code.logical_z.iter().map(|l| l.z_part()).collect()),
            Sector::Z => (&code.pair.h_x, code.logical_x.iter().map(|l| l.x_part()).collect()),
        };
        assert!(opposite.len() <= 64, "at most 64 logical qubits supported in distance search");
        let t = checks.transpose();
        let words = t.row(0).words().len().max(1);
        let syndrome = (0..code.n)
            .map(|q| {
                let mut w = t.row(q).words().to_vec();
                w.resize(words, 0);
                w
            })
            .collect();
        let parity = (0..code.n)
            .map(|q| {
                opposite
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, l)| acc | (u64::from(l.get(q)) << i))
            })
            .collect();
        Self {
            words,
            syndrome,
            parity,
            n: code.n,
        }
    }

    /// Visits every weight-`w` support whose syndrome vanishes and whose
    /// logical parity is nonzero. The callback returns `false` to stop.
    fn for_each_logical(&self, w: usize, mut visit: impl FnMut(&[usize]) -> bool) {
        if w == 0 || w > self.n {
            return;
        }
        let mut acc = vec![vec![0u64; self.words]; w + 1];
        let mut par = vec![0u64; w + 1];
        let mut chosen = Vec::with_capacity(w);
        self.descend(w, 0, &mut acc, &mut par, &mut chosen, &mut visit);
    }

    fn descend(
        &self,
        w: usize,
        start: usize,
        acc: &mut [Vec<u64>],
        par: &mut [u64],
        chosen: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        let depth = chosen.len();
        if depth == w {
            if par[depth] != 0 && acc[depth].iter().all(|&x| x == 0) {
                return visit(chosen);
            }
            return true;
        }
        let remaining = w - depth;
        for q in start..=self.n - remaining {
            let (head, tail) = acc.split_at_mut(depth + 1);
            for ((dst, src), col) in tail[0].iter_mut().zip(&head[depth]).zip(&self.syndrome[q]) {
                *dst = src ^ col;
            }
            par[depth + 1] = par[depth] ^ self.parity[q];
            chosen.push(q);
            let go_on = self.descend(w, q + 1, acc, par, chosen, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Least weight `w ≤ w_max` of a logical operator in `sector`, with one witness.
pub fn min_distance_witness(code: &CssCode, sector: Sector, w_max: usize) -> Option<(usize, BitVec)> {
    if code.k == 0 {
        return None;
    }
    let cols = SectorColumns::new(code, sector);
    for w in 1..=w_max.min(code.n) {
        let mut witness = None;
        cols.for_each_logical(w, |support| {
            witness = Some(BitVec::from_indices(code.n, support));
            false
        });
        if let Some(v) = witness {
            return Some((w, v));
        }
    }
    None
}

/// Least weight `w ≤ w_max` of a nontrivial logical of the given type.
pub fn min_distance(code: &CssCode, sector: Sector, w_max: usize) -> Option<usize> {
    min_distance_witness(code, sector, w_max).map(|(w, _)| w)
}

/// Number of weight-`w` logical operators made only of X (or only of Z) factors.
pub fn pure_logical_count(code: &CssCode, sector: Sector, w: usize) -> u64 {
    if code.k == 0 {
        return 0;
    }
    let cols = SectorColumns::new(code, sector);
    let mut count = 0u64;
    cols.for_each_logical(w, |_| {
        count += 1;
        true
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build, css_pair};

    #[test]
    fn single_qubit_commutation() {
        let x1 = PauliOperator::single(2, 0, Pauli::X);
        let z1 = PauliOperator::single(2, 0, Pauli::Z);
        let z2 = PauliOperator::single(2, 1, Pauli::Z);
        let y1 = PauliOperator::single(2, 0, Pauli::Y);
        assert!(!symplectic_commutes(&x1, &z1).unwrap());
        assert!(symplectic_commutes(&x1, &z2).unwrap());
        assert!(symplectic_commutes(&y1, &y1).unwrap());
        assert!(symplectic_commutes(&x1, &PauliOperator::identity(3)).is_err());
    }

    #[test]
    fn parse_and_display_use_one_based_labels() {
        let op = PauliOperator::parse(15, "X1 Y7 Y10 Z13").unwrap();
        assert_eq!(op.to_string(), "X1 Y7 Y10 Z13");
        assert_eq!(op.weight(), 4);
        assert_eq!(op.composition(), (1, 2, 1));
        assert_eq!(PauliOperator::parse(15, "X1X7X10").unwrap().to_string(), "X1 X7 X10");
        assert_eq!(PauliOperator::parse(3, "I").unwrap(), PauliOperator::identity(3));
        assert!(PauliOperator::parse(3, "X4").is_err());
        assert!(PauliOperator::parse(3, "Q1").is_err());
        assert!(PauliOperator::parse(3, "X").is_err());
    }

    #[test]
    fn weight_counts_union_of_supports() {
        let op = PauliOperator::parse(5, "X1 Z2 Y3").unwrap();
        assert_eq!(op.weight(), 3);
        assert_eq!(op.x_part().count_ones(), 2);
    }

    #[test]
    fn syndrome_separates_sectors() {
        let code = build(Family::Cylindrical, 3, 3).unwrap();
        assert!(syndrome(&code, &PauliOperator::identity(15)).unwrap().is_zero());
        let z = PauliOperator::parse(15, "Z3").unwrap();
        let s = syndrome(&code, &z).unwrap();
        assert!(s.iter_ones().all(|i| i < code.r_x()));
        let x = PauliOperator::parse(15, "X3").unwrap();
        let s = syndrome(&code, &x).unwrap();
        assert!(s.iter_ones().all(|i| i >= code.r_x()));
    }

    #[test]
    fn logical_basis_is_symplectic_and_nontrivial() {
        for (family, lc, lf) in [
            (Family::Surface, 3, 3),
            (Family::Cylindrical, 3, 3),
            (Family::Moebius, 3, 3),
            (Family::Cylindrical, 5, 3),
        ] {
            let code = CssCode::from_pair(css_pair(family, lc, lf).unwrap()).unwrap();
            let (lx, lz) = logical_basis(&code).unwrap();
            for (i, x) in lx.iter().enumerate() {
                for (j, z) in lz.iter().enumerate() {
                    assert_eq!(x.commutes_with(z), i != j);
                }
            }
            for l in lx.iter().chain(&lz) {
                assert!(syndrome(&code, l).unwrap().is_zero());
                assert_ne!(classify_residual(&code, l).unwrap(), ResidualClass::Stabilizer);
            }
        }
    }

    #[test]
    fn classification_of_basic_operators() {
        let code = build(Family::Cylindrical, 3, 3).unwrap();
        let id = PauliOperator::identity(15);
        assert_eq!(classify_residual(&code, &id).unwrap(), ResidualClass::Stabilizer);
        let single = PauliOperator::parse(15, "X2").unwrap();
        assert_eq!(classify_residual(&code, &single).unwrap(), ResidualClass::Detectable);
        let y = code.logical_x()[0].mul(&code.logical_z()[0]);
        assert_eq!(classify_residual(&code, &y).unwrap(), ResidualClass::LogicalY);
    }

    #[test]
    fn no_logicals_is_an_error() {
        let h_x = BinaryMatrix::from_strs(&["11"]).unwrap();
        let h_z = BinaryMatrix::from_strs(&["11"]).unwrap();
        let pair = CssPair::new(h_x, h_z, Family::Surface, 2, 2).unwrap();
        let code = CssCode::from_pair(pair).unwrap();
        assert_eq!(code.k(), 0);
        assert_eq!(logical_basis(&code).unwrap_err(), Error::NoLogicals);
        assert_eq!(min_distance(&code, Sector::X, 3), None);
    }

    #[test]
    fn distance_search_respects_the_cap() {
        let pair = css_pair(Family::Cylindrical, 5, 5).unwrap();
        let code = CssCode::from_pair(pair).unwrap();
        assert_eq!(min_distance(&code, Sector::X, 4), None);
        assert_eq!(min_distance(&code, Sector::X, 5), Some(5));
    }

    #[test]
    fn unverified_distances_fall_back_to_construction() {
        let code = crate::construction::build_with_cap(Family::Cylindrical, 5, 3, 2).unwrap();
        assert!(!code.d_x().unwrap().verified);
        assert!(!code.d_z().unwrap().verified);
    }
}
