//! Maximality engine over family descriptors, the necessary-condition
//! checkers for spectra of the cube, and affine-cover verification.
//!
//! Every family has an exact orthogonality rule: `s − λ ∈ G` for all members
//! `λ` holds iff `s` satisfies one clause of a finite disjunction, where each
//! clause is a conjunction of per-coordinate atoms
//!
//! * `s_j − b ∈ ℤ∖{0}` ([`Atom::NonzeroShift`]), or
//! * `s_j = b` ([`Atom::Equal`]).
//!
//! The rules (axes 0-based, `k, n` nonzero integers):
//!
//! | family | clauses |
//! |---|---|
//! | point `b` | `s_j − b_j ∈ ℤ∖{0}` for some `j` |
//! | line `b − k e_a` | shift on some `j ≠ a`, or `s_a = b_a` |
//! | plane `b + n e_i − k e_j` | shift outside `{i, j}`, or `s_i = b_i`, or `s_j = b_j` |
//! | punctured lattice, nonzero on `D` | `s_j = 0` for some `j ∈ D` |
//! | `ℤ^n × (ℤ^m∖0)` | `s_j = 0` for every `j` in the second block |
//! | `b + ℤ^d` | none |
//! | `L × R` | a clause of `L` on the left block, or one of `R` on the right |
//!
//! For the lattice-like rules: whenever `s_j` is an integer the adversary
//! can match it exactly, and a non-integer `s_j` never produces an integer
//! difference. The product rule holds because a pair `(a, b)` is bad exactly
//! when both halves are bad.
//!
//! The per-coordinate classes reachable by intersecting atoms are "free",
//! "pinned to one value" and "an integer coset minus finitely many points".
//! All of these are nonempty, so a branch survives iff no intersection is
//! empty. That makes the search a decision procedure.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, MissingShift, SlabRef, TraceStep, Verdict, Witness};
use crate::constructions::{reduce_mod_one, Family, FamilySet};
use crate::cube_core::{check_dim, rat_int, slab_coverage_fraction, within, Slab, Vector};
use crate::error::{Error, Result};
use crate::exactreal::{SymbolId, SymbolWitness, SymbolicReal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "atom", rename_all = "snake_case")]
pub enum Atom {
    NonzeroShift { axis: usize, base: SymbolicReal },
    Equal { axis: usize, value: SymbolicReal },
}

impl Atom {
    pub fn holds_for(&self, v: &Vector) -> bool {
        match self {
            Atom::NonzeroShift { axis, base } => v[*axis].differs_by_nonzero_integer(base),
            Atom::Equal { axis, value } => v[*axis] == *value,
        }
    }
}

impl std::fmt::Display for Atom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Atom::NonzeroShift { axis, base } => write!(f, "s{} - ({}) in Z\\0", axis, base),
            Atom::Equal { axis, value } => write!(f, "s{} = {}", axis, value),
        }
    }
}

/// A conjunction of atoms.
pub type Clause = Vec<Atom>;

fn clause_label(c: &Clause) -> String {
    c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" and ")
}

/// The disjunction of clauses equivalent to "`s − λ ∈ G` for every member".
/// An empty list means no point is orthogonal to the whole family.
pub fn family_clauses(f: &Family) -> Vec<Clause> {
    let mut out = Vec::new();
    push_clauses(f, 0, &mut out);
    out
}

fn push_clauses(f: &Family, at: usize, out: &mut Vec<Clause>) {
    let shift = |axis: usize, base: &SymbolicReal| {
        vec![Atom::NonzeroShift {
            axis: axis + at,
            base: base.clone(),
        }]
    };
    let equal = |axis: usize, value: SymbolicReal| vec![Atom::Equal { axis: axis + at, value }];
    match f {
        Family::Point { base } => {
            out.extend((0..base.dim()).map(|j| shift(j, &base[j])));
        }
        Family::Line { base, axis } => {
            out.extend((0..base.dim()).filter(|j| j != axis).map(|j| shift(j, &base[j])));
            out.push(equal(*axis, base[*axis].clone()));
        }
        Family::Plane {
            base,
            plus_axis,
            minus_axis,
        } => {
            out.extend(
                (0..base.dim())
                    .filter(|j| j != plus_axis && j != minus_axis)
                    .map(|j| shift(j, &base[j])),
            );
            out.push(equal(*plus_axis, base[*plus_axis].clone()));
            out.push(equal(*minus_axis, base[*minus_axis].clone()));
        }
        Family::PuncturedLattice { nonzero, .. } => {
            out.extend(nonzero.iter().map(|&j| equal(j, SymbolicReal::zero())));
        }
        Family::HalfPunctured { n, m } => {
            out.push(
                (*n..n + m)
                    .map(|j| Atom::Equal {
                        axis: j + at,
                        value: SymbolicReal::zero(),
                    })
                    .collect(),
            );
        }
        Family::TranslatedLattice { .. } => {}
        Family::Product { left, right } => {
            push_clauses(left, at, out);
            push_clauses(right, at + left.dim(), out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum CoordClass {
    Free,
    Pinned { value: SymbolicReal },
    /// `offset + ℤ` minus the listed points.
    IntegerCoset {
        offset: SymbolicReal,
        excluded: Vec<SymbolicReal>,
    },
}

impl CoordClass {
    fn meet(&self, atom: &Atom) -> Option<CoordClass> {
        match (self, atom) {
            (CoordClass::Free, Atom::Equal { value, .. }) => Some(CoordClass::Pinned { value: value.clone() }),
            (CoordClass::Free, Atom::NonzeroShift { base, .. }) => Some(CoordClass::IntegerCoset {
                offset: base.clone(),
                excluded: vec![base.clone()],
            }),
            (CoordClass::Pinned { value }, a) => {
                let ok = match a {
                    Atom::Equal { value: b, .. } => value == b,
                    Atom::NonzeroShift { base, .. } => value.differs_by_nonzero_integer(base),
                };
                ok.then(|| self.clone())
            }
            (CoordClass::IntegerCoset { offset, excluded }, Atom::Equal { value, .. }) => {
                (value.differs_by_integer(offset) && !excluded.contains(value))
                    .then(|| CoordClass::Pinned { value: value.clone() })
            }
            (CoordClass::IntegerCoset { offset, excluded }, Atom::NonzeroShift { base, .. }) => {
                if !base.differs_by_integer(offset) {
                    return None;
                }
                let mut excluded = excluded.clone();
                if !excluded.contains(base) {
                    excluded.push(base.clone());
                }
                Some(CoordClass::IntegerCoset {
                    offset: offset.clone(),
                    excluded,
                })
            }
        }
    }

    /// A concrete member: 0 when free, else the coset element closest to the
    /// offset that is not excluded.
    pub fn representative(&self) -> SymbolicReal {
        match self {
            CoordClass::Free => SymbolicReal::zero(),
            CoordClass::Pinned { value } => value.clone(),
            CoordClass::IntegerCoset { offset, excluded } => (0..)
                .flat_map(|t: i64| [t, -t - 1])
                .map(|t| offset.plus_int(t))
                .find(|x| !excluded.contains(x))
                .expect("finitely many exclusions"),
        }
    }
}

/// A partially constrained extension point `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionCandidate {
    pub coords: Vec<CoordClass>,
}

impl ExtensionCandidate {
    pub fn free(dim: usize) -> Self {
        ExtensionCandidate {
            coords: vec![CoordClass::Free; dim],
        }
    }

    pub fn pinned(v: &Vector) -> Self {
        ExtensionCandidate {
            coords: v
                .coords()
                .iter()
                .map(|x| CoordClass::Pinned { value: x.clone() })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn as_vector(&self) -> Option<Vector> {
        self.coords
            .iter()
            .map(|c| match c {
                CoordClass::Pinned { value } => Some(value.clone()),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Vector::new)
    }

    pub fn representative(&self) -> Vector {
        Vector::new(self.coords.iter().map(CoordClass::representative).collect())
    }

    pub fn apply(&self, clause: &Clause) -> Option<ExtensionCandidate> {
        let mut out = self.clone();
        for atom in clause {
            let axis = match atom {
                Atom::NonzeroShift { axis, .. } | Atom::Equal { axis, .. } => *axis,
            };
            out.coords[axis] = out.coords[axis].meet(atom)?;
        }
        Some(out)
    }
}

/// Refines `c` by the orthogonality rule of `f`. An empty result means the
/// family refutes every point of `c`.
pub fn family_constraint(f: &Family, c: &ExtensionCandidate) -> Result<Vec<ExtensionCandidate>> {
    check_dim(c.dim(), f.dim())?;
    f.validate()?;
    Ok(family_clauses(f).iter().filter_map(|cl| c.apply(cl)).collect())
}

#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    /// Search nodes allowed before giving up with [`Error::BranchLimit`].
    pub branch_limit: u64,
    /// Trace steps kept in the certificate.
    pub trace_limit: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            branch_limit: 1_000_000,
            trace_limit: 4096,
        }
    }
}

fn priority(f: &Family) -> u8 {
    match f {
        Family::Point { .. } => 0,
        Family::PuncturedLattice { .. } | Family::HalfPunctured { .. } | Family::TranslatedLattice { .. } => 1,
        Family::Line { .. } | Family::Plane { .. } => 2,
        Family::Product { .. } => 3,
    }
}

struct Search<'a> {
    order: Vec<usize>,
    clauses: Vec<Vec<Clause>>,
    cfg: &'a EngineConfig,
    nodes: u64,
    steps: Vec<TraceStep>,
    truncated: bool,
}

impl Search<'_> {
    fn log(&mut self, depth: usize, family: usize, clause: String, outcome: &str) {
        if self.steps.len() < self.cfg.trace_limit {
            self.steps.push(TraceStep {
                depth,
                family,
                clause,
                outcome: outcome.to_owned(),
            });
        } else {
            self.truncated = true;
        }
    }

    fn run(&mut self, c: ExtensionCandidate, depth: usize) -> Result<Option<ExtensionCandidate>> {
        self.nodes += 1;
        if self.nodes > self.cfg.branch_limit {
            return Err(Error::BranchLimit(self.cfg.branch_limit));
        }
        let Some(&fam) = self.order.get(depth) else {
            return Ok(Some(c));
        };
        if self.clauses[fam].is_empty() {
            self.log(depth, fam, "no clause".into(), "refuted");
        }
        for i in 0..self.clauses[fam].len() {
            let clause = &self.clauses[fam][i];
            let label = clause_label(clause);
            match c.apply(clause) {
                None => self.log(depth, fam, label, "refuted"),
                Some(next) => {
                    self.log(depth, fam, label, "consistent");
                    if let Some(found) = self.run(next, depth + 1)? {
                        return Ok(Some(found));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Decides whether `set` admits no orthogonal extension by a single point.
pub fn is_maximal(set: &FamilySet) -> Result<Certificate> {
    is_maximal_with(set, &EngineConfig::default())
}

pub fn is_maximal_with(set: &FamilySet, cfg: &EngineConfig) -> Result<Certificate> {
    set.validate()?;
    let mut order: Vec<usize> = (0..set.families.len()).collect();
    order.sort_by_key(|&i| priority(&set.families[i]));
    let mut search = Search {
        order,
        clauses: set.families.iter().map(family_clauses).collect(),
        cfg,
        nodes: 0,
        steps: Vec::new(),
        truncated: false,
    };
    let found = search.run(ExtensionCandidate::free(set.dim), 0)?;
    let cert = match found {
        Some(c) => {
            let s = c.representative();
            if set.contains(&s)? {
                return Err(Error::Inconsistent(format!("extension {} is already a member", s)));
            }
            Certificate::fail("maximal", Witness::Point { point: s })
        }
        None => Certificate::pass("maximal").with_witness(Witness::Trace {
            nodes: search.nodes,
            truncated: search.truncated,
            steps: search.steps,
        }),
    };
    Ok(cert
        .with_detail("nodes", search.nodes)
        .with_detail("families", set.families.len()))
}

/// Candidate grid `{σ + z : σ ∈ {0} ∪ symbols, |z| ≤ range}` per coordinate.
#[derive(Clone, Debug)]
pub struct GridConfig {
    pub symbols: Vec<SymbolId>,
    pub range: i64,
    pub window: i64,
    pub kmax: i64,
}

impl GridConfig {
    pub fn for_set(set: &FamilySet) -> Self {
        GridConfig {
            symbols: set.symbols(),
            range: 4,
            window: 6,
            kmax: 10,
        }
    }
}

/// Interns values modulo `ℤ` so that orthogonality becomes integer compares.
#[derive(Default)]
struct CosetTable {
    ids: HashMap<SymbolicReal, u32>,
}

impl CosetTable {
    /// `(class, integer offset)` with `x = representative(class) + offset`.
    fn encode(&mut self, x: &SymbolicReal) -> (u32, BigInt) {
        let class = reduce_mod_one(x);
        let shift = (x - &class).rational_part().to_integer();
        let next = self.ids.len() as u32;
        let id = *self.ids.entry(class).or_insert(next);
        (id, shift)
    }
}

/// Searches the candidate grid for points orthogonal to a truncation of the
/// set and not in it. The verdict is only evidence: far-away members are
/// not tested and off-grid extensions are not tried.
pub fn discretized_extension_search(set: &FamilySet, grid: &GridConfig) -> Result<Certificate> {
    set.validate()?;
    let mut table = CosetTable::default();
    let encode_vec = |v: &Vector, t: &mut CosetTable| -> Vec<(u32, BigInt)> {
        v.coords().iter().map(|x| t.encode(x)).collect()
    };
    let members: Vec<Vec<(u32, BigInt)>> = set
        .truncate(grid.window, grid.kmax)
        .iter()
        .map(|v| encode_vec(v, &mut table))
        .collect();
    let mut values = Vec::new();
    let bases = std::iter::once(SymbolicReal::zero()).chain(grid.symbols.iter().map(|s| SymbolicReal::symbol(s.clone())));
    for b in bases {
        for z in -grid.range..=grid.range {
            values.push(b.plus_int(z));
        }
    }
    let encoded: Vec<(u32, BigInt)> = values.iter().map(|x| table.encode(x)).collect();
    let d = set.dim;
    let total = (values.len() as u128).pow(d as u32);
    if total > 50_000_000 {
        return Err(Error::BoundExceeded {
            needed: total,
            limit: 50_000_000,
        });
    }
    let mut idx = vec![0usize; d];
    let mut tested: u64 = 0;
    loop {
        tested += 1;
        let orth = members.iter().all(|m| {
            idx.iter()
                .enumerate()
                .any(|(j, &i)| encoded[i].0 == m[j].0 && encoded[i].1 != m[j].1)
        });
        if orth {
            let s = Vector::new(idx.iter().map(|&i| values[i].clone()).collect());
            if !set.contains(&s)? {
                return Ok(Certificate::fail("discretized_extension", Witness::Point { point: s })
                    .with_detail("candidates_tested", tested)
                    .with_detail("truncation_size", members.len())
                    .evidence_only());
            }
        }
        // odometer
        let mut j = d;
        loop {
            if j == 0 {
                return Ok(Certificate::pass("discretized_extension")
                    .with_detail("candidates_tested", tested)
                    .with_detail("truncation_size", members.len())
                    .evidence_only());
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < values.len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// Index of the unit interval `[m, m+1)` holding the rational part of `x`.
fn cell(x: &SymbolicReal) -> BigInt {
    x.rational_floor()
}

const MAX_LISTED: usize = 64;

/// Every integer shift of an occurring coordinate must itself occur in the
/// same axis, checked for shifts landing in the window `[−W, W]`.
pub fn coordinate_shift_check(points: &[Vector], window: i64) -> Result<Certificate> {
    let Some(first) = points.first() else {
        return Ok(Certificate::pass("coordinate_shift").with_detail("points", 0));
    };
    let d = first.dim();
    for p in points {
        check_dim(d, p.dim())?;
    }
    let mut missing = Vec::new();
    let mut missing_count: u64 = 0;
    let mut tested: u64 = 0;
    let w = BigInt::from(window);
    for axis in 0..d {
        let present: HashSet<&SymbolicReal> = points.iter().map(|p| &p[axis]).collect();
        let mut done: HashSet<SymbolicReal> = HashSet::new();
        for p in points {
            let x = &p[axis];
            let class = reduce_mod_one(x);
            if !done.insert(class) {
                continue;
            }
            let c = cell(x);
            let lo = (-&w - &c).try_into().unwrap_or(i64::MIN);
            let hi = (&w - &c).try_into().unwrap_or(i64::MAX);
            for n in lo..=hi {
                if n == 0 {
                    continue;
                }
                tested += 1;
                let y = x.plus_int(n);
                if !present.contains(&y) {
                    missing_count += 1;
                    if missing.len() < MAX_LISTED {
                        missing.push(MissingShift {
                            point: p.clone(),
                            axis,
                            shift: n,
                        });
                    }
                }
            }
        }
    }
    let cert = if missing.is_empty() {
        Certificate::pass("coordinate_shift")
    } else {
        Certificate::fail("coordinate_shift", Witness::MissingShifts { missing })
    };
    Ok(cert
        .with_detail("shifts_tested", tested)
        .with_detail("missing", missing_count)
        .with_detail("window", window))
}

/// Every slab `a ≤ x_axis ≤ a + 1` with integer `a ∈ [−W, W−1]` must
/// contain a point.
pub fn slab_check(points: &[Vector], window: i64, witness: &SymbolWitness) -> Result<Certificate> {
    let d = match points.first() {
        Some(p) => p.dim(),
        None => {
            return Ok(Certificate::fail(
                "slab",
                Witness::EmptySlabs {
                    slabs: vec![SlabRef { axis: 0, offset: -window }],
                },
            ))
        }
    };
    for p in points {
        check_dim(d, p.dim())?;
        witness.covers(p.symbols())?;
    }
    let mut empty = Vec::new();
    for axis in 0..d {
        // cells first, exact comparison only for the few nearby coordinates
        let coords: Vec<&SymbolicReal> = {
            let mut seen = HashSet::new();
            points.iter().map(|p| &p[axis]).filter(|x| seen.insert(*x)).collect()
        };
        for a in -window..window {
            let (lo, hi) = (rat_int(a), rat_int(a + 1));
            let mut hit = false;
            for x in &coords {
                let c = cell(x);
                if c < BigInt::from(a - 2) || c > BigInt::from(a + 2) {
                    continue;
                }
                if within(x, &lo, &hi, witness)? {
                    hit = true;
                    break;
                }
            }
            if !hit {
                empty.push(SlabRef { axis, offset: a });
            }
        }
    }
    let cert = if empty.is_empty() {
        Certificate::pass("slab")
    } else {
        Certificate::fail("slab", Witness::EmptySlabs { slabs: empty })
    };
    Ok(cert.with_detail("window", window))
}

/// One measured coverage enclosure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverageSample {
    pub window: u32,
    pub axis: usize,
    pub lower: String,
    pub upper: String,
    pub lower_f64: f64,
    pub upper_f64: f64,
}

/// Fractions of the centered coordinate slabs covered by `Q + Λ` inside
/// `[−W, W]^3`, for each requested `W`. PASS means every upper bound stays
/// below `1 − 10⁻⁶`, which is evidence that the packing is not a tiling.
pub fn incompleteness_evidence(set: &FamilySet, windows: &[u32], witness: &SymbolWitness) -> Result<Certificate> {
    if set.dim != 3 {
        return Err(Error::InvalidParameters(format!(
            "incompleteness evidence is computed in dimension 3, not {}",
            set.dim
        )));
    }
    let threshold = BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(1_000_000));
    let mut samples = Vec::new();
    let mut all_below = true;
    let mut decreasing = true;
    let mut last_upper: Vec<Option<BigRational>> = vec![None; 3];
    for &w in windows {
        let pts = set.truncate(i64::from(w) + 1, i64::from(w) + 2);
        for (axis, last) in last_upper.iter_mut().enumerate() {
            let iv = slab_coverage_fraction(&pts, &Slab::centered(axis), w, witness)?;
            all_below &= iv.hi < threshold;
            if let Some(prev) = last {
                decreasing &= iv.hi <= *prev;
            }
            *last = Some(iv.hi.clone());
            let (lf, hf) = iv.to_f64_bounds();
            samples.push(CoverageSample {
                window: w,
                axis,
                lower: iv.lo.to_string(),
                upper: iv.hi.to_string(),
                lower_f64: lf,
                upper_f64: hf,
            });
        }
    }
    let verdict = if all_below { Verdict::Pass } else { Verdict::Fail };
    Ok(Certificate::new("incompleteness", verdict)
        .with_detail("samples", serde_json::to_value(&samples).expect("plain data"))
        .with_detail("decreasing", decreasing)
        .with_detail("non_tiling_evidence", all_below)
        .evidence_only())
}

/// `point + span(basis)` with rational directions, stored scaled to integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePiece {
    pub point: Vector,
    pub basis: Vec<Vec<i64>>,
}

fn rational_rows(basis: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    basis.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

impl AffinePiece {
    pub fn new(point: Vector, basis: Vec<Vec<i64>>) -> Result<Self> {
        for b in &basis {
            check_dim(point.dim(), b.len())?;
        }
        Ok(AffinePiece { point, basis })
    }

    pub fn dimension(&self) -> usize {
        let mut m = rational_rows(&self.basis);
        rref(&mut m, self.point.dim()).len()
    }

    /// Rational vectors spanning the orthogonal complement of the basis.
    fn annihilator(&self) -> Vec<Vec<BigRational>> {
        let d = self.point.dim();
        let mut m = rational_rows(&self.basis);
        let pivots = rref(&mut m, d);
        (0..d)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut a = vec![BigRational::zero(); d];
                a[free] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    a[pc] = -m[r][free].clone();
                }
                a
            })
            .collect()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        contains_with(&self.point, &self.annihilator(), v)
    }
}

/// Under rational independence of `1` and the symbols, `w ∈ span_ℝ(B)` for a
/// rational `B` iff the rational part and each symbol's coefficient vector
/// lie in `span_ℚ(B)`, i.e. are killed by every annihilator row.
fn contains_with(point: &Vector, annihilator: &[Vec<BigRational>], v: &Vector) -> bool {
    if v.dim() != point.dim() {
        return false;
    }
    let w = v.checked_sub(point).expect("dimension checked");
    let mut symbols: Vec<&SymbolId> = w.symbols().collect();
    symbols.sort();
    symbols.dedup();
    annihilator.iter().all(|a| {
        let support: Vec<(usize, &BigRational)> = a.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        let rat: BigRational = support.iter().map(|(j, aj)| *aj * w[*j].rational_part()).sum();
        rat.is_zero()
            && symbols.iter().all(|s| {
                let c: BigRational = support
                    .iter()
                    .map(|(j, aj)| *aj * rat_int(w[*j].symbol_coeffs().get(*s).copied().unwrap_or(0)))
                    .sum();
                c.is_zero()
            })
    })
}

fn unit(d: usize, j: usize) -> Vec<i64> {
    let mut e = vec![0; d];
    e[j] = 1;
    e
}

fn family_piece(f: &Family) -> AffinePiece {
    let d = f.dim();
    match f {
        Family::Point { base } => AffinePiece {
            point: base.clone(),
            basis: vec![],
        },
        Family::Line { base, axis } => AffinePiece {
            point: base.clone(),
            basis: vec![unit(d, *axis)],
        },
        Family::Plane {
            base,
            plus_axis,
            minus_axis,
        } => AffinePiece {
            point: base.clone(),
            basis: vec![unit(d, *plus_axis), unit(d, *minus_axis)],
        },
        Family::PuncturedLattice { .. } | Family::HalfPunctured { .. } | Family::TranslatedLattice { .. } => {
            AffinePiece {
                point: Vector::zeros(d),
                basis: (0..d).map(|j| unit(d, j)).collect(),
            }
        }
        Family::Product { left, right } => {
            let (l, r) = (family_piece(left), family_piece(right));
            let (dl, dr) = (left.dim(), right.dim());
            let mut basis: Vec<Vec<i64>> = l
                .basis
                .iter()
                .map(|b| b.iter().copied().chain(std::iter::repeat_n(0, dr)).collect())
                .collect();
            basis.extend(r.basis.iter().map(|b| std::iter::repeat_n(0, dl).chain(b.iter().copied()).collect()));
            AffinePiece {
                point: l.point.concat(&r.point),
                basis,
            }
        }
    }
}

/// One translated subspace per family, spanned by the directions the family
/// moves in.
pub fn natural_affine_cover(set: &FamilySet) -> Vec<AffinePiece> {
    set.families.iter().map(family_piece).collect()
}

pub fn cover_dimension(cover: &[AffinePiece]) -> usize {
    cover.iter().map(AffinePiece::dimension).max().unwrap_or(0)
}

/// Every point must lie in one of the translated subspaces.
pub fn affine_cover_check(points: &[Vector], cover: &[AffinePiece]) -> Result<Certificate> {
    let prepared: Vec<(&Vector, Vec<Vec<BigRational>>)> = cover.iter().map(|p| (&p.point, p.annihilator())).collect();
    let mut uncovered = Vec::new();
    let mut count: u64 = 0;
    for v in points {
        if let Some((pt, _)) = prepared.first() {
            check_dim(pt.dim(), v.dim())?;
        }
        if !prepared.iter().any(|(pt, ann)| contains_with(pt, ann, v)) {
            count += 1;
            if uncovered.len() < MAX_LISTED {
                uncovered.push(v.clone());
            }
        }
    }
    let cert = if count == 0 {
        Certificate::pass("affine_cover")
    } else {
        Certificate::fail("affine_cover", Witness::Points { points: uncovered })
    };
    Ok(cert
        .with_detail("points", points.len())
        .with_detail("uncovered", count)
        .with_detail("cover_dimension", cover_dimension(cover)))
}

/// `ℤ_{n1} × ℤ_{n2}` with elements indexed `a·n2 + b`; small enough for
/// subsets to be `u128` bitmasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallGroup {
    pub n1: u64,
    pub n2: u64,
}

impl SmallGroup {
    pub fn new(n1: u64, n2: u64) -> Result<Self> {
        if n1 == 0 || n2 == 0 || n1 * n2 > 128 {
            return Err(Error::InvalidParameters(format!(
                "group Z_{} x Z_{} must have between 1 and 128 elements",
                n1, n2
            )));
        }
        Ok(SmallGroup { n1, n2 })
    }

    pub fn order(&self) -> usize {
        (self.n1 * self.n2) as usize
    }

    fn pair(&self, i: usize) -> (u64, u64) {
        (i as u64 / self.n2, i as u64 % self.n2)
    }

    fn index(&self, a: u64, b: u64) -> usize {
        ((a % self.n1) * self.n2 + (b % self.n2)) as usize
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        let ((a, b), (c, d)) = (self.pair(x), self.pair(y));
        self.index(a + self.n1 - c, b + self.n2 - d)
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let ((a, b), (c, d)) = (self.pair(x), self.pair(y));
        self.index(a + c, b + d)
    }

    fn generated(&self, gens: &[usize]) -> u128 {
        let mut mask: u128 = 1;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if mask & (1 << y) == 0 {
                    mask |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        mask
    }

    /// All subgroups; every subgroup of a rank-two group is 2-generated.
    pub fn subgroups(&self) -> Vec<u128> {
        let n = self.order();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in 0..n {
            for h in g..n {
                let s = self.generated(&[g, h]);
                if seen.insert(s) {
                    out.push(s);
                }
            }
        }
        out.sort_by_key(|s| (s.count_ones(), *s));
        out
    }

    pub fn difference_mask(&self, x: &[usize]) -> u128 {
        let mut m = 0u128;
        for &a in x {
            for &b in x {
                m |= 1 << self.sub(a, b);
            }
        }
        m
    }
}

/// Checks the two-subgroup dichotomy for one set: if `X − X ⊂ H₁ ∪ H₂` then
/// `X − X` lies in one of them. Sets not meeting the hypothesis pass vacuously.
pub fn two_subgroups_dichotomy(g: &SmallGroup, x: &[usize], h1: u128, h2: u128) -> Certificate {
    let diff = g.difference_mask(x);
    let hypothesis = diff & !(h1 | h2) == 0;
    let holds = !hypothesis || diff & !h1 == 0 || diff & !h2 == 0;
    if holds {
        Certificate::pass("two_subgroups").with_detail("hypothesis", hypothesis)
    } else {
        Certificate::fail(
            "two_subgroups",
            Witness::Residues {
                values: x.iter().map(|&i| i as u64).collect(),
            },
        )
    }
}

/// Random sets `X` with `X − X ⊂ H₁ ∪ H₂`, grown greedily from a random
/// seed element over a shuffled order, each tested for the dichotomy.
pub fn lemma_two_subgroups_oracle(g: &SmallGroup, trials: u32, seed: u64) -> Certificate {
    let subs = g.subgroups();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order();
    let mut nontrivial: u64 = 0;
    for _ in 0..trials {
        let h1 = subs[rng.random_range(0..subs.len())];
        let h2 = subs[rng.random_range(0..subs.len())];
        let union = h1 | h2;
        let target = rng.random_range(1..=n);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut x = vec![order[0]];
        for &y in &order[1..] {
            if x.len() >= target {
                break;
            }
            if x.iter().all(|&a| union & (1 << g.sub(y, a)) != 0) {
                x.push(y);
            }
        }
        let diff = g.difference_mask(&x);
        if diff & !(h1 & h2) != 0 {
            nontrivial += 1;
        }
        let cert = two_subgroups_dichotomy(g, &x, h1, h2);
        if !cert.is_pass() {
            return cert.with_detail("h1", h1.to_string()).with_detail("h2", h2.to_string());
        }
    }
    Certificate::pass("two_subgroups")
        .with_detail("subgroups", subs.len())
        .with_detail("trials", trials)
        .with_detail("nontrivial_trials", nontrivial)
        .with_detail("seed", seed)
}
