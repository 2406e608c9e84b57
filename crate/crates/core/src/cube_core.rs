//! Orthogonality geometry of the unit cube `Q = [-1/2, 1/2]^d`.
//!
//! Two frequencies are orthogonal on `Q` exactly when their difference lies in
//! the zero set `G` of the cube's Fourier transform: some coordinate is a
//! nonzero integer. Translates `Q + t` pack exactly when every difference of
//! distinct translation vectors has a coordinate of absolute value at least 1.

use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::exactreal::{EnclosureTable, RationalInterval, SymbolId, SymbolWitness, SymbolicReal};

/// A point of `ℝ^d` with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<SymbolicReal>);

impl Vector {
    pub fn new(coords: Vec<SymbolicReal>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![SymbolicReal::zero(); dim])
    }

    pub fn integer(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| SymbolicReal::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[SymbolicReal] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<SymbolicReal> {
        self.0
    }

    pub fn checked_sub(&self, other: &Vector) -> Result<Vector> {
        check_dim(self.dim(), other.dim())?;
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn checked_add(&self, other: &Vector) -> Result<Vector> {
        check_dim(self.dim(), other.dim())?;
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|c| -c).collect())
    }

    pub fn concat(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Copy with `axis` shifted by the integer `n`.
    pub fn shifted(&self, axis: usize, n: i64) -> Vector {
        let mut out = self.clone();
        out.0[axis] = out.0[axis].plus_int(n);
        out
    }

    pub fn with_coord(&self, axis: usize, value: SymbolicReal) -> Vector {
        let mut out = self.clone();
        out.0[axis] = value;
        out
    }

    pub fn split_at(&self, n: usize) -> (Vector, Vector) {
        (Vector(self.0[..n].to_vec()), Vector(self.0[n..].to_vec()))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &SymbolId> {
        self.0.iter().flat_map(|c| c.symbols())
    }

    pub fn is_integer(&self) -> bool {
        self.0.iter().all(SymbolicReal::is_integer)
    }

    pub fn approx_f64(&self, witness: &SymbolWitness) -> Result<Vec<f64>> {
        self.0.iter().map(|c| c.approx_f64(witness)).collect()
    }
}

impl Index<usize> for Vector {
    type Output = SymbolicReal;
    fn index(&self, i: usize) -> &SymbolicReal {
        &self.0[i]
    }
}

impl std::fmt::Display for Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str(")")
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `v ∈ G`: some coordinate is a nonzero integer.
pub fn in_zero_set(v: &Vector) -> bool {
    v.coords().iter().any(SymbolicReal::is_nonzero_integer)
}

/// Orthogonality of `e^{2πi⟨λ,x⟩}` and `e^{2πi⟨μ,x⟩}` on the cube.
pub fn orthogonal(lambda: &Vector, mu: &Vector) -> Result<bool> {
    check_dim(lambda.dim(), mu.dim())?;
    Ok(lambda
        .coords()
        .iter()
        .zip(mu.coords())
        .any(|(a, b)| a.differs_by_nonzero_integer(b)))
}

/// Checks `S − S ⊂ G ∪ {0}`; repeated points count as a failure.
pub fn pairwise_orthogonal(points: &[Vector]) -> Result<Certificate> {
    let mut pairs: u64 = 0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            pairs += 1;
            if !orthogonal(a, b)? {
                return Ok(Certificate::fail(
                    "orthogonal",
                    Witness::Pair {
                        first: a.clone(),
                        second: b.clone(),
                    },
                )
                .with_detail("points", points.len()));
            }
        }
    }
    Ok(Certificate::pass("orthogonal")
        .with_detail("points", points.len())
        .with_detail("pairs_checked", pairs))
}

/// Checks `(S − S) ∩ (−1, 1)^d = {0}` under the witness values.
pub fn is_packing(points: &[Vector], witness: &SymbolWitness) -> Result<Certificate> {
    for p in points {
        witness.covers(p.symbols())?;
    }
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = a.checked_sub(b)?;
            let mut separated = false;
            for c in d.coords() {
                // a nonzero integer difference already has |c| ≥ 1
                if c.is_nonzero_integer() || !c.compare_abs_lt_one(witness)? {
                    separated = true;
                    break;
                }
            }
            if !separated {
                return Ok(Certificate::fail(
                    "packing",
                    Witness::Pair {
                        first: a.clone(),
                        second: b.clone(),
                    },
                ));
            }
        }
    }
    Ok(Certificate::pass("packing").with_detail("points", points.len()))
}

/// The axis-aligned slab `offset ≤ x_axis ≤ offset + 1` (axes are 0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slab {
    pub axis: usize,
    pub offset: SymbolicReal,
}

impl Slab {
    pub fn new(axis: usize, offset: SymbolicReal) -> Self {
        Slab { axis, offset }
    }

    /// The slab `|x_axis| ≤ 1/2`.
    pub fn centered(axis: usize) -> Self {
        Slab::new(axis, SymbolicReal::from_ratio(-1, 2))
    }
}

/// Knobs for [`slab_coverage_fraction`].
#[derive(Clone, Copy, Debug)]
pub struct CoverageConfig {
    /// Upper limit on the dyadic grid resolution `2^-bits` used for rounding.
    pub max_bits: u32,
    /// Enclosures wider than this are reported as undecidable.
    pub tolerance: f64,
}

impl Default for CoverageConfig {
    fn default() -> Self {
        CoverageConfig {
            max_bits: 32,
            tolerance: 1e-6,
        }
    }
}

type Cell = Vec<(i64, i64)>;

/// Rigorous enclosure of the fraction of `slab ∩ [−L, L]^d` covered by the
/// cubes `Q + λ`, `λ ∈ points`.
///
/// Cube faces are rounded outward (for the upper bound) and inward (for the
/// lower bound) to a dyadic grid, then the exact volume of each union of boxes
/// is computed by a recursive coordinate sweep in integer arithmetic.
pub fn slab_coverage_fraction(
    points: &[Vector],
    slab: &Slab,
    half_width: u32,
    witness: &SymbolWitness,
) -> Result<RationalInterval> {
    slab_coverage_fraction_with(points, slab, half_width, witness, CoverageConfig::default())
}

pub fn slab_coverage_fraction_with(
    points: &[Vector],
    slab: &Slab,
    half_width: u32,
    witness: &SymbolWitness,
    cfg: CoverageConfig,
) -> Result<RationalInterval> {
    let d = match points.first() {
        Some(p) => p.dim(),
        // the fraction is 0 whatever the dimension
        None => (slab.axis + 1).max(2),
    };
    if d < 2 {
        return Err(Error::InvalidParameters("coverage needs dimension at least 2".into()));
    }
    if slab.axis >= d {
        return Err(Error::InvalidParameters(format!("slab axis {} out of range for d = {}", slab.axis, d)));
    }
    if half_width == 0 {
        return Err(Error::InvalidParameters("box half-width must be positive".into()));
    }
    for p in points {
        check_dim(d, p.dim())?;
        witness.covers(p.symbols())?;
    }
    witness.covers(slab.offset.symbols())?;

    // every scaled volume must fit in i128
    let mag_bits = 64 - u64::from(half_width + 2).leading_zeros();
    let budget = 124 / d as u32;
    if budget <= mag_bits + 8 {
        return Err(Error::InvalidParameters(format!("dimension {} too large for the coverage sweep", d)));
    }
    let bits = cfg.max_bits.min(budget - mag_bits - 1);
    let table = witness.enclosures(bits + 6);
    let scale = BigRational::from_integer(BigInt::one() << bits as usize);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let l = i64::from(half_width) << bits;

    let floor_s = |x: &BigRational| -> i64 { scaled_floor(x, &scale) };
    let ceil_s = |x: &BigRational| -> i64 { scaled_ceil(x, &scale) };

    let offset = table.enclose(&slab.offset)?;
    let one = BigRational::one();
    let mut outer_region: Cell = vec![(-l, l); d];
    let mut inner_region: Cell = vec![(-l, l); d];
    outer_region[slab.axis] = (floor_s(&offset.lo).max(-l), ceil_s(&(&offset.hi + &one)).min(l));
    inner_region[slab.axis] = (ceil_s(&offset.hi).max(-l), floor_s(&(&offset.lo + &one)).min(l));

    let mut outer = Vec::new();
    let mut inner = Vec::new();
    for p in points {
        let ivs = enclose_all(p, &table)?;
        let ob: Cell = ivs
            .iter()
            .map(|iv| (floor_s(&(&iv.lo - &half)), ceil_s(&(&iv.hi + &half))))
            .collect();
        if let Some(b) = clip(&ob, &outer_region) {
            outer.push(b);
        }
        let ib: Cell = ivs
            .iter()
            .map(|iv| (ceil_s(&(&iv.hi - &half)), floor_s(&(&iv.lo + &half))))
            .collect();
        if ib.iter().all(|(lo, hi)| lo < hi) {
            if let Some(b) = clip(&ib, &inner_region) {
                inner.push(b);
            }
        }
    }

    let covered_hi = union_volume(&outer);
    let covered_lo = union_volume(&inner);
    let region_hi = cell_volume(&outer_region);
    let region_lo = cell_volume(&inner_region);
    if region_lo <= 0 {
        return Err(Error::InvalidParameters("slab does not meet the box".into()));
    }
    let lo = BigRational::new(BigInt::from(covered_lo), BigInt::from(region_hi));
    let hi = BigRational::new(BigInt::from(covered_hi), BigInt::from(region_lo)).min(BigRational::one());
    let iv = RationalInterval::new(lo.min(hi.clone()), hi);
    if iv.width().to_f64().unwrap_or(f64::INFINITY) > cfg.tolerance {
        return Err(Error::Undecidable {
            depth: bits,
            what: format!("coverage enclosure {} wider than {}", iv, cfg.tolerance),
        });
    }
    Ok(iv)
}

fn enclose_all(p: &Vector, table: &EnclosureTable) -> Result<Vec<RationalInterval>> {
    p.coords().iter().map(|c| table.enclose(c)).collect()
}

fn scaled_floor(x: &BigRational, scale: &BigRational) -> i64 {
    let y = x * scale;
    y.numer().div_floor(y.denom()).to_i64().expect("scaled coordinate fits i64")
}

fn scaled_ceil(x: &BigRational, scale: &BigRational) -> i64 {
    let y = x * scale;
    let (q, r) = y.numer().div_mod_floor(y.denom());
    let q = if r.is_zero() { q } else { q + 1 };
    q.to_i64().expect("scaled coordinate fits i64")
}

fn clip(b: &Cell, region: &Cell) -> Option<Cell> {
    let out: Cell = b
        .iter()
        .zip(region)
        .map(|(&(lo, hi), &(rlo, rhi))| (lo.max(rlo), hi.min(rhi)))
        .collect();
    out.iter().all(|(lo, hi)| lo < hi).then_some(out)
}

fn cell_volume(c: &Cell) -> i128 {
    c.iter().map(|(lo, hi)| i128::from((hi - lo).max(0))).product()
}

/// Exact volume of a union of boxes with integer corners.
fn union_volume(boxes: &[Cell]) -> i128 {
    let idx: Vec<usize> = (0..boxes.len()).collect();
    union_volume_rec(boxes, &idx, 0)
}

fn union_volume_rec(boxes: &[Cell], idx: &[usize], axis: usize) -> i128 {
    if idx.is_empty() {
        return 0;
    }
    let last = axis + 1 == boxes[idx[0]].len();
    let mut cuts: Vec<i64> = idx.iter().flat_map(|&i| [boxes[i][axis].0, boxes[i][axis].1]).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let mut total: i128 = 0;
    let mut prev: Option<(Vec<usize>, i128)> = None;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let active: Vec<usize> = idx
            .iter()
            .copied()
            .filter(|&i| boxes[i][axis].0 <= a && boxes[i][axis].1 >= b)
            .collect();
        if active.is_empty() {
            prev = None;
            continue;
        }
        let sub = if last {
            1
        } else if let Some((ref key, v)) = prev {
            if *key == active {
                v
            } else {
                union_volume_rec(boxes, &active, axis + 1)
            }
        } else {
            union_volume_rec(boxes, &active, axis + 1)
        };
        total += sub * i128::from(b - a);
        prev = Some((active, sub));
    }
    total
}

/// Decides `a ≤ x ≤ b` for rational bounds under the witness.
pub(crate) fn within(x: &SymbolicReal, a: &BigRational, b: &BigRational, witness: &SymbolWitness) -> Result<bool> {
    use std::cmp::Ordering::*;
    let cfg = crate::exactreal::RefineConfig::default();
    Ok(x.compare_rational(a, witness, cfg)? != Less && x.compare_rational(b, witness, cfg)? != Greater)
}

pub(crate) fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactreal::{int, ratio, sym, ALPHA, BETA, GAMMA};

    fn v(c: Vec<SymbolicReal>) -> Vector {
        Vector::new(c)
    }

    #[test]
    fn zero_set_membership() {
        assert!(in_zero_set(&v(vec![ratio(3, 2), int(2), sym(GAMMA, 0)])));
        assert!(!in_zero_set(&Vector::zeros(3)));
        let beta_minus_gamma = &sym(BETA, 0) - &sym(GAMMA, 0);
        assert!(!in_zero_set(&v(vec![ratio(1, 2), sym(ALPHA, 0), beta_minus_gamma])));
    }

    #[test]
    fn orthogonality_examples() {
        assert!(orthogonal(&Vector::zeros(3), &Vector::integer(&[1, 1, 1])).unwrap());
        let a = v(vec![int(0), sym(BETA, -1), sym(GAMMA, 0)]);
        let b = v(vec![int(0), sym(BETA, -4), sym(GAMMA, 0)]);
        assert!(orthogonal(&a, &b).unwrap());
        assert!(!orthogonal(&a, &a).unwrap());
        assert_eq!(
            orthogonal(&a, &Vector::zeros(2)).unwrap_err(),
            Error::DimensionMismatch { expected: 3, found: 2 }
        );
    }

    #[test]
    fn pairwise_examples() {
        let s = [Vector::integer(&[0, 0, 0]), Vector::integer(&[1, 1, 1]), Vector::integer(&[2, 1, 1])];
        assert!(pairwise_orthogonal(&s).unwrap().is_pass());
        let half = v(vec![ratio(1, 2), ratio(1, 2), ratio(1, 2)]);
        let c = pairwise_orthogonal(&[Vector::zeros(3), half.clone()]).unwrap();
        assert_eq!(
            c.witness,
            Some(Witness::Pair {
                first: Vector::zeros(3),
                second: half
            })
        );
    }

    #[test]
    fn packing_examples() {
        let w = SymbolWitness::default();
        let one_dim: Vec<Vector> = (1..=10)
            .flat_map(|n| [v(vec![ratio(4 * n - 1, 4)]), v(vec![ratio(1 - 4 * n, 4)])])
            .collect();
        assert!(is_packing(&one_dim, &w).unwrap().is_pass());
        let bad = [v(vec![int(0)]), v(vec![ratio(1, 2)])];
        assert!(!is_packing(&bad, &w).unwrap().is_pass());
        // symbolic differences are compared through the witness
        let s = [v(vec![sym(ALPHA, 0), int(0)]), v(vec![int(0), ratio(1, 3)])];
        assert!(!is_packing(&s, &w).unwrap().is_pass());
        let s = [v(vec![sym(ALPHA, 1), int(0)]), v(vec![int(0), ratio(1, 3)])];
        assert!(is_packing(&s, &w).unwrap().is_pass());
    }

    #[test]
    fn union_volume_overlaps() {
        let boxes = vec![vec![(0, 2), (0, 2)], vec![(1, 3), (1, 3)], vec![(10, 11), (0, 1)]];
        assert_eq!(union_volume(&boxes), 4 + 4 - 1 + 1);
        let nested = vec![vec![(0, 4), (0, 4), (0, 4)], vec![(1, 2), (1, 2), (1, 2)]];
        assert_eq!(union_volume(&nested), 64);
    }

    #[test]
    fn lattice_covers_slab() {
        let mut pts = Vec::new();
        for x in -3..=3 {
            for y in -3..=3 {
                for z in -3..=3 {
                    pts.push(Vector::integer(&[x, y, z]));
                }
            }
        }
        let iv = slab_coverage_fraction(&pts, &Slab::centered(0), 3, &SymbolWitness::default()).unwrap();
        assert!(iv.contains(&BigRational::one()));
        assert!(iv.width().to_f64().unwrap() < 1e-6);
    }

    #[test]
    fn empty_set_covers_nothing() {
        let iv = slab_coverage_fraction(&[], &Slab::centered(0), 3, &SymbolWitness::default()).unwrap();
        assert!(iv.contains(&BigRational::zero()));
        assert!(iv.hi.to_f64().unwrap() < 1e-6);
    }

    #[test]
    fn single_symbolic_cube() {
        // Q + (α, 0) meets |x₀| ≤ 1/2 in a strip of width 1 − α ≈ 0.2929
        let pts = [v(vec![sym(ALPHA, 0), int(0)])];
        let iv = slab_coverage_fraction(&pts, &Slab::centered(0), 1, &SymbolWitness::default()).unwrap();
        let expected = (1.0 - std::f64::consts::SQRT_2 / 2.0) / 2.0;
        let (lo, hi) = iv.to_f64_bounds();
        assert!(lo <= expected && expected <= hi, "{} not in [{}, {}]", expected, lo, hi);
    }
}
