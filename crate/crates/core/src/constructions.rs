//! Generators for the explicit frequency sets: exact family descriptors for
//! possibly infinite sets, plus windowed truncations of them.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cube_core::{check_dim, pairwise_orthogonal, Vector};
use crate::error::{Error, Result};
use crate::exactreal::{SymbolId, SymbolicReal};

/// One orbit-like piece of a frequency set. Axes are 0-based; every integer
/// parameter written `k` or `n` below ranges over `ℤ∖{0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum Family {
    /// A single point.
    Point { base: Vector },
    /// `base − k·e_axis`.
    #[serde(rename = "line_family")]
    Line { base: Vector, axis: usize },
    /// `base + n·e_plus_axis − k·e_minus_axis`.
    #[serde(rename = "plane_family")]
    Plane {
        base: Vector,
        plus_axis: usize,
        minus_axis: usize,
    },
    /// Integer vectors of `ℤ^dim` whose coordinates in `nonzero` are all nonzero.
    PuncturedLattice { dim: usize, nonzero: Vec<usize> },
    /// `(p, q) ∈ ℤ^n × ℤ^m` with `q ≠ 0`.
    HalfPunctured { n: usize, m: usize },
    /// `base + ℤ^d`.
    TranslatedLattice { base: Vector },
    /// `left × right`, with `left` on the leading coordinates.
    Product { left: Box<Family>, right: Box<Family> },
}

impl Family {
    pub fn dim(&self) -> usize {
        match self {
            Family::Point { base }
            | Family::Line { base, .. }
            | Family::Plane { base, .. }
            | Family::TranslatedLattice { base } => base.dim(),
            Family::PuncturedLattice { dim, .. } => *dim,
            Family::HalfPunctured { n, m } => n + m,
            Family::Product { left, right } => left.dim() + right.dim(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Family::Point { base } => format!("point {}", base),
            Family::Line { base, axis } => format!("line {} - k*e{}", base, axis),
            Family::Plane {
                base,
                plus_axis,
                minus_axis,
            } => format!("plane {} + n*e{} - k*e{}", base, plus_axis, minus_axis),
            Family::PuncturedLattice { dim, nonzero } => {
                format!("punctured lattice Z^{} nonzero on {:?}", dim, nonzero)
            }
            Family::HalfPunctured { n, m } => format!("half-punctured Z^{} x (Z^{} minus 0)", n, m),
            Family::TranslatedLattice { base } => format!("lattice {} + Z^{}", base, base.dim()),
            Family::Product { left, right } => format!("[{}] x [{}]", left.label(), right.label()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        let axis_ok = |a: usize| {
            if a < d {
                Ok(())
            } else {
                Err(Error::InvalidParameters(format!("axis {} out of range for dimension {}", a, d)))
            }
        };
        match self {
            Family::Point { .. } | Family::TranslatedLattice { .. } => Ok(()),
            Family::Line { axis, .. } => axis_ok(*axis),
            Family::Plane {
                plus_axis,
                minus_axis,
                ..
            } => {
                axis_ok(*plus_axis)?;
                axis_ok(*minus_axis)?;
                if plus_axis == minus_axis {
                    return Err(Error::InvalidParameters("plane family needs two distinct axes".into()));
                }
                Ok(())
            }
            Family::PuncturedLattice { nonzero, .. } => nonzero.iter().try_for_each(|&a| axis_ok(a)),
            Family::HalfPunctured { m, .. } => {
                if *m == 0 {
                    return Err(Error::InvalidParameters("half-punctured lattice needs m >= 1".into()));
                }
                Ok(())
            }
            Family::Product { left, right } => {
                left.validate()?;
                right.validate()
            }
        }
    }

    pub fn symbols(&self) -> Vec<SymbolId> {
        match self {
            Family::Point { base }
            | Family::Line { base, .. }
            | Family::Plane { base, .. }
            | Family::TranslatedLattice { base } => base.symbols().cloned().collect(),
            Family::PuncturedLattice { .. } | Family::HalfPunctured { .. } => Vec::new(),
            Family::Product { left, right } => {
                let mut s = left.symbols();
                s.extend(right.symbols());
                s
            }
        }
    }

    /// Exact membership; `v` must have the family's dimension.
    pub fn contains(&self, v: &Vector) -> bool {
        if v.dim() != self.dim() {
            return false;
        }
        let others_equal = |base: &Vector, skip: &[usize]| {
            (0..base.dim())
                .filter(|i| !skip.contains(i))
                .all(|i| v[i] == base[i])
        };
        match self {
            Family::Point { base } => v == base,
            Family::Line { base, axis } => {
                others_equal(base, &[*axis]) && base[*axis].differs_by_nonzero_integer(&v[*axis])
            }
            Family::Plane {
                base,
                plus_axis,
                minus_axis,
            } => {
                others_equal(base, &[*plus_axis, *minus_axis])
                    && v[*plus_axis].differs_by_nonzero_integer(&base[*plus_axis])
                    && base[*minus_axis].differs_by_nonzero_integer(&v[*minus_axis])
            }
            Family::PuncturedLattice { nonzero, .. } => {
                v.is_integer() && nonzero.iter().all(|&i| !v[i].is_zero())
            }
            Family::HalfPunctured { n, .. } => {
                v.is_integer() && v.coords()[*n..].iter().any(|c| !c.is_zero())
            }
            Family::TranslatedLattice { base } => {
                v.coords().iter().zip(base.coords()).all(|(a, b)| a.differs_by_integer(b))
            }
            Family::Product { left, right } => {
                let (a, b) = v.split_at(left.dim());
                left.contains(&a) && right.contains(&b)
            }
        }
    }

    /// Members with family parameters `|n|, |k| ≤ kmax` and lattice offsets in
    /// `[−window, window]`, in a fixed order.
    pub fn truncate(&self, window: i64, kmax: i64) -> Vec<Vector> {
        let params = || (-kmax..=kmax).filter(|&k| k != 0);
        match self {
            Family::Point { base } => vec![base.clone()],
            Family::Line { base, axis } => params().map(|k| base.shifted(*axis, -k)).collect(),
            Family::Plane {
                base,
                plus_axis,
                minus_axis,
            } => params()
                .flat_map(|n| params().map(move |k| base.shifted(*plus_axis, n).shifted(*minus_axis, -k)))
                .collect(),
            Family::PuncturedLattice { dim, nonzero } => integer_box(*dim, window)
                .filter(|z| nonzero.iter().all(|&i| z[i] != 0))
                .map(|z| Vector::integer(&z))
                .collect(),
            Family::HalfPunctured { n, m } => integer_box(n + m, window)
                .filter(|z| z[*n..].iter().any(|&c| c != 0))
                .map(|z| Vector::integer(&z))
                .collect(),
            Family::TranslatedLattice { base } => integer_box(base.dim(), window)
                .map(|z| {
                    Vector::new(
                        base.coords()
                            .iter()
                            .zip(&z)
                            .map(|(b, &zi)| b.plus_int(zi))
                            .collect(),
                    )
                })
                .collect(),
            Family::Product { left, right } => {
                let rs = right.truncate(window, kmax);
                left.truncate(window, kmax)
                    .iter()
                    .flat_map(|a| rs.iter().map(move |b| a.concat(b)))
                    .collect()
            }
        }
    }

    /// Appends `m` zero coordinates.
    fn pad(&self, m: usize) -> Family {
        let zeros = Vector::zeros(m);
        match self {
            Family::Point { base } => Family::Point {
                base: base.concat(&zeros),
            },
            Family::Line { base, axis } => Family::Line {
                base: base.concat(&zeros),
                axis: *axis,
            },
            Family::Plane {
                base,
                plus_axis,
                minus_axis,
            } => Family::Plane {
                base: base.concat(&zeros),
                plus_axis: *plus_axis,
                minus_axis: *minus_axis,
            },
            other => Family::Product {
                left: Box::new(other.clone()),
                right: Box::new(Family::Point { base: zeros }),
            },
        }
    }
}

/// Odometer over `[−w, w]^dim` in lexicographic order.
pub fn integer_box(dim: usize, w: i64) -> impl Iterator<Item = Vec<i64>> {
    let mut cur = if w >= 0 { Some(vec![-w; dim]) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = cur.as_mut().unwrap();
        let mut i = dim;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < w {
                next[i] += 1;
                break;
            }
            next[i] = -w;
        }
        Some(out)
    })
}

fn product_family(a: &Family, b: &Family) -> Family {
    use Family::*;
    let n = a.dim();
    match (a, b) {
        (Point { base: p }, Point { base: q }) => Point { base: p.concat(q) },
        (Point { base: p }, Line { base, axis }) => Line {
            base: p.concat(base),
            axis: axis + n,
        },
        (Point { base: p }, Plane {
            base,
            plus_axis,
            minus_axis,
        }) => Plane {
            base: p.concat(base),
            plus_axis: plus_axis + n,
            minus_axis: minus_axis + n,
        },
        (Line { base, axis }, Point { base: q }) => Line {
            base: base.concat(q),
            axis: *axis,
        },
        (Plane {
            base,
            plus_axis,
            minus_axis,
        }, Point { base: q }) => Plane {
            base: base.concat(q),
            plus_axis: *plus_axis,
            minus_axis: *minus_axis,
        },
        (TranslatedLattice { base: p }, TranslatedLattice { base: q }) => TranslatedLattice { base: p.concat(q) },
        _ => Product {
            left: Box::new(a.clone()),
            right: Box::new(b.clone()),
        },
    }
}

/// A possibly infinite set in `ℝ^dim` given as a union of disjoint families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySet {
    pub dim: usize,
    pub families: Vec<Family>,
}

impl FamilySet {
    pub fn new(dim: usize, families: Vec<Family>) -> Result<Self> {
        let set = FamilySet { dim, families };
        set.validate()?;
        Ok(set)
    }

    pub fn empty(dim: usize) -> Self {
        FamilySet {
            dim,
            families: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidParameters("dimension must be at least 1".into()));
        }
        for f in &self.families {
            check_dim(self.dim, f.dim())?;
            f.validate()?;
        }
        Ok(())
    }

    pub fn symbols(&self) -> Vec<SymbolId> {
        let mut s: Vec<SymbolId> = self.families.iter().flat_map(Family::symbols).collect();
        s.sort();
        s.dedup();
        s
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        check_dim(self.dim, v.dim())?;
        Ok(self.families.iter().any(|f| f.contains(v)))
    }

    pub fn truncate(&self, window: i64, kmax: i64) -> Vec<Vector> {
        self.families.iter().flat_map(|f| f.truncate(window, kmax)).collect()
    }

    /// Copy without the family at `index`.
    pub fn without_family(&self, index: usize) -> FamilySet {
        let mut out = self.clone();
        out.families.remove(index);
        out
    }

    /// Families are disjoint on the truncation: no point is listed twice.
    pub fn disjoint_on_truncation(&self, window: i64, kmax: i64) -> bool {
        let pts = self.truncate(window, kmax);
        let set: std::collections::HashSet<&Vector> = pts.iter().collect();
        set.len() == pts.len()
    }
}

fn distinct_symbols(ids: &[&SymbolId]) -> Result<()> {
    for (i, a) in ids.iter().enumerate() {
        if ids[i + 1..].contains(a) {
            return Err(Error::DuplicateSymbols(a.to_string()));
        }
    }
    Ok(())
}

/// Three lines `(0, β−k, γ)`, `(α, 0, γ−k)`, `(α−k, β, 0)` together with all
/// integer vectors whose coordinates are nonzero.
pub fn thick3d(alpha: &SymbolId, beta: &SymbolId, gamma: &SymbolId) -> Result<FamilySet> {
    distinct_symbols(&[alpha, beta, gamma])?;
    let (a, b, g) = (
        SymbolicReal::symbol(alpha.clone()),
        SymbolicReal::symbol(beta.clone()),
        SymbolicReal::symbol(gamma.clone()),
    );
    let z = SymbolicReal::zero();
    FamilySet::new(
        3,
        vec![
            Family::Line {
                base: Vector::new(vec![z.clone(), b.clone(), g.clone()]),
                axis: 1,
            },
            Family::Line {
                base: Vector::new(vec![a.clone(), z.clone(), g]),
                axis: 2,
            },
            Family::Line {
                base: Vector::new(vec![a, b, z]),
                axis: 0,
            },
            Family::PuncturedLattice {
                dim: 3,
                nonzero: vec![0, 1, 2],
            },
        ],
    )
}

/// The origin with the planes `(n, β−k, γ)`, `(α, n, γ−k)`, `(α−k, β, n)`.
pub fn thin3d(alpha: &SymbolId, beta: &SymbolId, gamma: &SymbolId) -> Result<FamilySet> {
    distinct_symbols(&[alpha, beta, gamma])?;
    let (a, b, g) = (
        SymbolicReal::symbol(alpha.clone()),
        SymbolicReal::symbol(beta.clone()),
        SymbolicReal::symbol(gamma.clone()),
    );
    let z = SymbolicReal::zero();
    FamilySet::new(
        3,
        vec![
            Family::Point { base: Vector::zeros(3) },
            Family::Plane {
                base: Vector::new(vec![z.clone(), b.clone(), g.clone()]),
                plus_axis: 0,
                minus_axis: 1,
            },
            Family::Plane {
                base: Vector::new(vec![a.clone(), z.clone(), g]),
                plus_axis: 1,
                minus_axis: 2,
            },
            Family::Plane {
                base: Vector::new(vec![a, b, z]),
                plus_axis: 2,
                minus_axis: 0,
            },
        ],
    )
}

/// [`thick3d`] with the default symbol names.
pub fn thick3d_default() -> FamilySet {
    thick3d(&"alpha".into(), &"beta".into(), &"gamma".into()).expect("distinct symbols")
}

/// [`thin3d`] with the default symbol names.
pub fn thin3d_default() -> FamilySet {
    thin3d(&"alpha".into(), &"beta".into(), &"gamma".into()).expect("distinct symbols")
}

/// The spectrum `ℤ^d`.
pub fn lattice(dim: usize) -> FamilySet {
    FamilySet {
        dim,
        families: vec![Family::TranslatedLattice {
            base: Vector::zeros(dim),
        }],
    }
}

/// `{(λ, 0) : λ ∈ Λ} ∪ {(p, q) ∈ ℤ^n × ℤ^m : q ≠ 0}` in `ℝ^{n+m}`.
pub fn lift(set: &FamilySet, m: usize) -> Result<FamilySet> {
    if m == 0 {
        return Err(Error::InvalidParameters("lift needs m >= 1".into()));
    }
    let mut families: Vec<Family> = set.families.iter().map(|f| f.pad(m)).collect();
    families.push(Family::HalfPunctured { n: set.dim, m });
    FamilySet::new(set.dim + m, families)
}

/// Cartesian product, expanded family by family. Products of a point with a
/// point, line or plane fold back into those variants; everything else is
/// kept as a [`Family::Product`].
pub fn product(a: &FamilySet, b: &FamilySet) -> FamilySet {
    let families = a
        .families
        .iter()
        .flat_map(|fa| b.families.iter().map(move |fb| product_family(fa, fb)))
        .collect();
    FamilySet {
        dim: a.dim + b.dim,
        families,
    }
}

/// `Λ × ⋯ × Λ × ℤ^r` with `q` copies of the thin set; lives in `ℝ^{3q+r}`.
pub fn thin_power(q: usize, r: usize) -> Result<FamilySet> {
    if q == 0 && r == 0 {
        return Err(Error::InvalidParameters("empty product".into()));
    }
    let mut acc: Option<FamilySet> = None;
    let factors = std::iter::repeat_with(thin3d_default)
        .take(q)
        .chain((r > 0).then(|| lattice(r)));
    for f in factors {
        acc = Some(match acc {
            None => f,
            Some(a) => product(&a, &f),
        });
    }
    Ok(acc.expect("at least one factor"))
}

/// `{±(n − 1/4) : 1 ≤ n ≤ count}` in `ℝ`, ascending.
pub fn one_dim_packing_example(count: u32) -> Result<Vec<Vector>> {
    if count == 0 {
        return Err(Error::InvalidParameters("count must be at least 1".into()));
    }
    let c = i64::from(count);
    let mut pts: Vec<Vector> = (1..=c)
        .rev()
        .map(|n| Vector::new(vec![SymbolicReal::from_ratio(1 - 4 * n, 4)]))
        .collect();
    pts.extend((1..=c).map(|n| Vector::new(vec![SymbolicReal::from_ratio(4 * n - 1, 4)])));
    Ok(pts)
}

/// Parts of `[lo, hi]` at distance at least 1 from every point of a rational
/// one-dimensional set, i.e. positions where another unit interval could
/// still be packed. Empty means the packing is maximal inside the window.
pub fn packing_gaps_1d(points: &[Vector], lo: &BigRational, hi: &BigRational) -> Result<Vec<(BigRational, BigRational)>> {
    let mut centers = Vec::with_capacity(points.len());
    for p in points {
        check_dim(1, p.dim())?;
        if !p[0].is_rational() {
            return Err(Error::InvalidParameters("packing gaps need rational points".into()));
        }
        centers.push(p[0].rational_part().clone());
    }
    centers.sort();
    let one = BigRational::one();
    let mut gaps = Vec::new();
    // sweep: `cursor` is the left end of the still-uncovered part
    let mut cursor = lo.clone();
    let mut cursor_open = false;
    for c in &centers {
        let (a, b) = (c - &one, c + &one);
        if b <= cursor {
            continue;
        }
        if a > cursor || (a == cursor && !cursor_open) {
            let end = a.clone().min(hi.clone());
            if end >= cursor {
                gaps.push((cursor.clone(), end));
            }
        }
        if b > cursor {
            cursor = b;
            cursor_open = true;
        }
        if cursor > *hi {
            break;
        }
    }
    if cursor <= *hi {
        gaps.push((cursor, hi.clone()));
    }
    Ok(gaps)
}

/// A spectrum of the unit square of the form
/// `origin + {n·e_a + (k + t(n))·e_b : n, k ∈ ℤ}` where `a = integer_axis`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareSpectrum {
    pub origin: Vector,
    pub integer_axis: usize,
    /// `t(n)` for the columns that carry a point; other columns use 0.
    pub offsets: BTreeMap<i64, SymbolicReal>,
}

impl SquareSpectrum {
    pub fn offset(&self, column: i64) -> SymbolicReal {
        self.offsets.get(&column).cloned().unwrap_or_default()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        if v.dim() != 2 {
            return false;
        }
        let d = v.checked_sub(&self.origin).expect("dimension checked");
        let Some(n) = d[self.integer_axis].as_i64() else {
            return false;
        };
        d[1 - self.integer_axis].differs_by_integer(&self.offset(n))
    }

    /// Members with `|n|, |k| ≤ w`.
    pub fn truncate(&self, w: i64) -> Vec<Vector> {
        let mut out = Vec::new();
        for n in -w..=w {
            let t = self.offset(n);
            for k in -w..=w {
                let mut c = vec![SymbolicReal::zero(), SymbolicReal::zero()];
                c[self.integer_axis] = SymbolicReal::from_int(n);
                c[1 - self.integer_axis] = t.plus_int(k);
                out.push(self.origin.checked_add(&Vector::new(c)).expect("2d"));
            }
        }
        out
    }
}

/// `t` reduced modulo 1 so that its rational part lies in `[0, 1)`.
pub(crate) fn reduce_mod_one(t: &SymbolicReal) -> SymbolicReal {
    let f = t.rational_floor();
    let shift = BigRational::from_integer(-f);
    t + &SymbolicReal::rational(shift)
}

/// Embeds a finite orthogonal set for the unit square into a spectrum.
///
/// Differences of an orthogonal set lie in `(ℤ × ℝ) ∪ (ℝ × ℤ)`, and a
/// difference set covered by two subgroups sits inside one of them. Within
/// each integer column the other coordinates then agree modulo 1.
pub fn embed_square(points: &[Vector]) -> Result<SquareSpectrum> {
    let Some(origin) = points.first() else {
        return Err(Error::InvalidParameters("embed_square needs a nonempty set".into()));
    };
    for p in points {
        check_dim(2, p.dim())?;
    }
    let cert = pairwise_orthogonal(points)?;
    if !cert.is_pass() {
        return Err(Error::NotOrthogonal(
            serde_json::to_string(&cert.witness).unwrap_or_default(),
        ));
    }
    let diffs: Vec<Vector> = points.iter().map(|p| p.checked_sub(origin)).collect::<Result<_>>()?;
    let integer_axis = (0..2)
        .find(|&a| diffs.iter().all(|d| d[a].is_integer()))
        .ok_or_else(|| Error::Inconsistent("differences lie in neither Z x R nor R x Z".into()))?;
    let other = 1 - integer_axis;
    let mut offsets: BTreeMap<i64, SymbolicReal> = BTreeMap::new();
    for d in &diffs {
        let n = d[integer_axis]
            .as_i64()
            .ok_or_else(|| Error::InvalidParameters("column index exceeds i64".into()))?;
        let t = reduce_mod_one(&d[other]);
        match offsets.get(&n) {
            Some(prev) if !prev.differs_by_integer(&t) => {
                return Err(Error::Inconsistent(format!(
                    "column {} carries offsets {} and {}",
                    n, prev, t
                )));
            }
            Some(_) => {}
            None => {
                offsets.insert(n, t);
            }
        }
    }
    offsets.retain(|_, t| !t.is_zero());
    Ok(SquareSpectrum {
        origin: origin.clone(),
        integer_axis,
        offsets,
    })
}

/// Number of points a truncation would produce, without building it.
pub fn truncation_size(set: &FamilySet, window: i64, kmax: i64) -> u128 {
    fn size(f: &Family, w: i64, k: i64) -> u128 {
        let side = (2 * w + 1).max(0) as u128;
        let params = (2 * k).max(0) as u128;
        match f {
            Family::Point { .. } => 1,
            Family::Line { .. } => params,
            Family::Plane { .. } => params * params,
            Family::PuncturedLattice { dim, nonzero } => {
                side.pow((*dim - nonzero.len()) as u32) * (side - 1).pow(nonzero.len() as u32)
            }
            Family::HalfPunctured { n, m } => side.pow(*n as u32) * (side.pow(*m as u32) - 1),
            Family::TranslatedLattice { base } => side.pow(base.dim() as u32),
            Family::Product { left, right } => size(left, w, k) * size(right, w, k),
        }
    }
    set.families.iter().map(|f| size(f, window, kmax)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use crate::exactreal::{int, ratio, sym, ALPHA, BETA, GAMMA};

    fn v3(a: SymbolicReal, b: SymbolicReal, c: SymbolicReal) -> Vector {
        Vector::new(vec![a, b, c])
    }

    #[test]
    fn thick_membership() {
        let t = thick3d_default();
        assert!(t.contains(&v3(int(0), sym(BETA, -2), sym(GAMMA, 0))).unwrap());
        assert!(!t.contains(&v3(int(0), sym(BETA, 0), sym(GAMMA, 0))).unwrap());
        assert!(t.contains(&Vector::integer(&[2, -1, 3])).unwrap());
        assert!(!t.contains(&Vector::integer(&[2, 0, 3])).unwrap());
        let dup = thick3d(&ALPHA.into(), &ALPHA.into(), &GAMMA.into()).unwrap_err();
        assert_eq!(dup, Error::DuplicateSymbols("alpha".into()));
    }

    #[test]
    fn thin_membership() {
        let t = thin3d_default();
        assert!(t.contains(&Vector::zeros(3)).unwrap());
        assert!(!t.contains(&Vector::integer(&[1, 1, 1])).unwrap());
        assert!(!t.contains(&v3(sym(ALPHA, 0), int(0), sym(GAMMA, 0))).unwrap());
        assert!(t.contains(&v3(sym(ALPHA, 0), int(3), sym(GAMMA, 2))).unwrap());
        assert!(t.contains(&v3(sym(ALPHA, -1), sym(BETA, 0), int(-4))).unwrap());
        assert!(thin3d(&BETA.into(), &"x".into(), &BETA.into()).is_err());
    }

    #[test]
    fn thick_truncation_size() {
        let t = thick3d_default();
        let pts = t.truncate(3, 3);
        assert_eq!(pts.len(), 3 * 6 + 6 * 6 * 6);
        assert_eq!(truncation_size(&t, 3, 3), pts.len() as u128);
        assert!(t.disjoint_on_truncation(3, 3));
    }

    #[test]
    fn thin_truncation_size() {
        let pts = thin3d_default().truncate(4, 4);
        assert_eq!(pts.len(), 1 + 3 * 64);
        assert!(pairwise_orthogonal(&pts).unwrap().is_pass());
    }

    #[test]
    fn lift_contains_unit_vector() {
        let l = lift(&thin3d_default(), 1).unwrap();
        assert_eq!(l.dim, 4);
        assert!(l.contains(&Vector::integer(&[0, 0, 0, 1])).unwrap());
        assert!(l.contains(&Vector::zeros(4)).unwrap());
        assert!(!l.contains(&Vector::integer(&[1, 0, 0, 0])).unwrap());
        assert!(lift(&thin3d_default(), 0).is_err());
    }

    #[test]
    fn lift_of_lattice_families_wraps() {
        let l = lift(&thick3d_default(), 2).unwrap();
        assert!(matches!(l.families[3], Family::Product { .. }));
        assert!(l.contains(&Vector::integer(&[1, 1, 1, 0, 0])).unwrap());
        assert!(!l.contains(&Vector::integer(&[1, 0, 1, 0, 0])).unwrap());
        assert!(l.contains(&Vector::integer(&[1, 0, 1, 0, -3])).unwrap());
    }

    #[test]
    fn product_of_lattices_is_lattice() {
        let p = product(&lattice(1), &lattice(1));
        assert_eq!(
            p.families,
            vec![Family::TranslatedLattice {
                base: Vector::zeros(2)
            }]
        );
    }

    #[test]
    fn product_of_thin_sets() {
        let p = product(&thin3d_default(), &thin3d_default());
        assert_eq!(p.dim, 6);
        assert_eq!(p.families.len(), 16);
        assert!(matches!(p.families[0], Family::Point { .. }));
        assert!(matches!(p.families[1], Family::Plane { plus_axis: 3, minus_axis: 4, .. }));
        assert!(matches!(p.families[5], Family::Product { .. }));
        let pts = p.truncate(1, 1);
        assert_eq!(pts.len(), 13 * 13);
        assert!(pairwise_orthogonal(&pts).unwrap().is_pass());
    }

    #[test]
    fn thin_power_dimensions() {
        assert_eq!(thin_power(2, 0).unwrap().dim, 6);
        assert_eq!(thin_power(1, 2).unwrap().dim, 5);
        assert_eq!(thin_power(0, 2).unwrap(), lattice(2));
        assert!(thin_power(0, 0).is_err());
    }

    #[test]
    fn one_dim_example() {
        let pts = one_dim_packing_example(2).unwrap();
        let xs: Vec<SymbolicReal> = pts.iter().map(|p| p[0].clone()).collect();
        assert_eq!(xs, vec![ratio(-7, 4), ratio(-3, 4), ratio(3, 4), ratio(7, 4)]);
        assert!(one_dim_packing_example(0).is_err());
    }

    #[test]
    fn one_dim_packing_leaves_no_room() {
        for count in 1..=6u32 {
            let pts = one_dim_packing_example(count).unwrap();
            let c = BigRational::from_integer(BigInt::from(count));
            assert!(packing_gaps_1d(&pts, &-c.clone(), &c).unwrap().is_empty());
        }
        // with the point 3/4 removed there is room around 1
        let pts = vec![Vector::new(vec![ratio(-3, 4)]), Vector::new(vec![ratio(11, 4)])];
        let gaps = packing_gaps_1d(&pts, &BigRational::from_integer((-1).into()), &BigRational::from_integer(3.into())).unwrap();
        assert_eq!(
            gaps,
            vec![(BigRational::new(1.into(), 4.into()), BigRational::new(7.into(), 4.into()))]
        );
    }

    #[test]
    fn embed_square_examples() {
        let s = embed_square(&[Vector::zeros(2), Vector::new(vec![int(1), ratio(3, 2)])]).unwrap();
        assert_eq!(s.integer_axis, 0);
        assert_eq!(s.offset(0), int(0));
        assert_eq!(s.offset(1), ratio(1, 2));

        let s = embed_square(&[Vector::zeros(2)]).unwrap();
        assert!(s.offsets.is_empty());
        assert!(s.contains(&Vector::integer(&[5, -2])));

        let s = embed_square(&[Vector::zeros(2), Vector::new(vec![ratio(1, 2), int(1)])]).unwrap();
        assert_eq!(s.integer_axis, 1);
        assert!(s.contains(&Vector::new(vec![ratio(1, 2), int(1)])));
        assert!(s.contains(&Vector::new(vec![ratio(-1, 2), int(1)])));

        let err = embed_square(&[Vector::zeros(2), Vector::new(vec![ratio(1, 2), ratio(1, 2)])]).unwrap_err();
        assert!(matches!(err, Error::NotOrthogonal(_)));
    }

    #[test]
    fn embed_square_symbolic_offsets() {
        let pts = [
            Vector::new(vec![sym(ALPHA, 0), int(0)]),
            Vector::new(vec![sym(ALPHA, 2), sym(BETA, -3)]),
            Vector::new(vec![sym(ALPHA, 2), sym(BETA, 1)]),
        ];
        let s = embed_square(&pts).unwrap();
        assert_eq!(s.integer_axis, 0);
        assert_eq!(s.offset(2), sym(BETA, 0));
        assert!(pts.iter().all(|p| s.contains(p)));
        let square_pts = s.truncate(3);
        assert!(pairwise_orthogonal(&square_pts).unwrap().is_pass());
    }

    #[test]
    fn json_tags() {
        let j = serde_json::to_value(&thin3d_default()).unwrap();
        assert_eq!(j["families"][1]["variant"], "plane_family");
        let back: FamilySet = serde_json::from_value(j).unwrap();
        assert_eq!(back, thin3d_default());
    }

    #[test]
    fn validation() {
        let bad = FamilySet::new(
            2,
            vec![Family::Plane {
                base: Vector::zeros(2),
                plus_axis: 1,
                minus_axis: 1,
            }],
        );
        assert!(bad.is_err());
        let bad = FamilySet::new(3, vec![Family::Point { base: Vector::zeros(2) }]);
        assert_eq!(bad.unwrap_err(), Error::DimensionMismatch { expected: 3, found: 2 });
    }

    #[test]
    fn integer_box_order() {
        let v: Vec<Vec<i64>> = integer_box(2, 1).collect();
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], vec![-1, -1]);
        assert_eq!(v[1], vec![-1, 0]);
        assert_eq!(v[8], vec![1, 1]);
        assert_eq!(integer_box(0, 3).count(), 1);
    }
}
